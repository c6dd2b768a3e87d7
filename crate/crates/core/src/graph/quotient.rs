use super::Digraph;
use crate::bitset::BitSet;
use std::collections::HashMap;

/// Merge vertices with identical out- and in-neighbourhoods.
///
/// Classes are numbered by their smallest vertex. Equivalent vertices are
/// never adjacent, so each class is an independent set and the arcs between
/// two classes are all present or all absent.
pub fn quotient_by_equivalence(g: &Digraph) -> (Digraph, Vec<usize>) {
    let mut class_of = vec![0usize; g.n()];
    let mut index: HashMap<(&BitSet, &BitSet), usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for v in 0..g.n() {
        let key = (g.out_set(v), g.in_set(v));
        let c = *index.entry(key).or_insert_with(|| {
            reps.push(v);
            sizes.push(0);
            reps.len() - 1
        });
        class_of[v] = c;
        sizes[c] += 1;
    }
    let mut arcs = Vec::new();
    for (ci, &r) in reps.iter().enumerate() {
        for w in g.out_set(r).iter() {
            arcs.push((ci, class_of[w]));
        }
    }
    let q = Digraph::new(reps.len(), &arcs, g.mode()).expect("quotient of a valid graph is valid");
    (q, sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blow_up, BlobAssignment, PatternSpec};

    #[test]
    fn c4_blowup_collapses() {
        let pat = PatternSpec::uniform(Digraph::directed_cycle(4));
        let g = blow_up(&pat, &BlobAssignment::new(vec![2; 4])).unwrap();
        let (q, sizes) = quotient_by_equivalence(&g);
        assert_eq!(q, Digraph::directed_cycle(4));
        assert_eq!(sizes, vec![2, 2, 2, 2]);
    }

    #[test]
    fn triangle_is_fixed() {
        let (q, sizes) = quotient_by_equivalence(&Digraph::directed_cycle(3));
        assert_eq!(q, Digraph::directed_cycle(3));
        assert_eq!(sizes, vec![1, 1, 1]);
    }
}
