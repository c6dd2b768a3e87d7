//! Small helpers for exact rationals in text form (`"p/q"`).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub fn ratio_to_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `"p/q"`, `"p"` or a finite decimal such as `"0.3"`.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    // numerator and denominator can exceed f64 range separately
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900) as usize;
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Closest rational to `x` with denominator at most `max_den`, from the
/// continued-fraction convergents and semiconvergents of `x`.
pub fn approximate(x: f64, max_den: u64) -> BigRational {
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    let max = max_den.max(1) as i128;
    loop {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let q2 = q0 + ai * q1;
        if q2 > max {
            // best semiconvergent still within the bound
            let t = (max - q0) / q1;
            let (ps, qs) = (p0 + t * p1, q0 + t * q1);
            if t > 0 && (ps as f64 / qs as f64 - x).abs() < (p1 as f64 / q1 as f64 - x).abs() {
                return BigRational::new(BigInt::from(ps), BigInt::from(qs));
            }
            break;
        }
        let p2 = p0 + ai * p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    BigRational::new(BigInt::from(p1), BigInt::from(q1))
}

pub fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
