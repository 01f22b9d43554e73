//! Fixed-point decimal rendering of exact rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `x` rounded half away from zero to `digits` places after the point.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let num = x.numer().abs() * &scale * 2u32 + x.denom();
    let (q, _) = num.div_rem(&(x.denom() * 2u32));
    let mut body = q.to_string();
    if digits > 0 {
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        body.insert(body.len() - digits, '.');
    }
    if x.numer().sign() == Sign::Minus && !q.is_zero() {
        body.insert(0, '-');
    }
    body
}

/// Nearest `f64`, also for numerators and denominators beyond `f64` range.
pub fn to_f64(x: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // shift both to about 64 significant bits first
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let n = (x.numer() >> ns as usize).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> ds as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((ns - ds) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn renders() {
        assert_eq!(decimal_string(&r(1, 14), 6), "0.071429");
        assert_eq!(decimal_string(&r(17, 14), 3), "1.214");
        assert_eq!(decimal_string(&r(-1, 3), 2), "-0.33");
        assert_eq!(decimal_string(&r(5, 2), 0), "3");
        assert_eq!(decimal_string(&r(0, 1), 2), "0.00");
        assert_eq!(decimal_string(&r(-1, 1000), 2), "0.00");
    }

    #[test]
    fn huge_ratio() {
        let big = num_traits::pow(BigInt::from(3u32), 2000);
        let x = BigRational::new(big.clone() * 2, big);
        assert_eq!(to_f64(&x), 2.0);
        assert!((to_f64(&r(1, 7)) - 1.0 / 7.0).abs() < 1e-16);
    }
}
