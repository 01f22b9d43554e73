//! Truncated power series with exact rational coefficients, or with scaled
//! floating coefficients `c_n / 4^n` for long expansions.

mod gf;
pub mod identities;

pub use gf::{asymptotic_ratio, binomial_series, binomial_sqrt_series, catalan_series, series_b_u2d, series_g_u3d, Half, Route};

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::decimal::to_f64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    ScaledFloat,
}

#[derive(Clone, Debug, PartialEq)]
enum Coeffs {
    Exact(Vec<BigRational>),
    /// `c_n / 4^n`
    Scaled(Vec<f64>),
}

/// Coefficients `0..len`; binary operations truncate to the shorter operand.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSeries {
    coeffs: Coeffs,
}

// Below this many output coefficients a product runs on one thread.
const PAR_MIN: usize = 64;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn denominators_lcm(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn integer_numerators(v: &[BigRational], scale: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x.numer() * (scale / x.denom())).collect()
}

fn int_convolution(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let one = |n: usize| -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..=n {
            if !a[i].is_zero() && !b[n - i].is_zero() {
                acc += &a[i] * &b[n - i];
            }
        }
        acc
    };
    if len < PAR_MIN {
        (0..len).map(one).collect()
    } else {
        (0..len).into_par_iter().map(one).collect()
    }
}

fn float_convolution(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let one = |n: usize| -> f64 { (0..=n).map(|i| a[i] * b[n - i]).sum() };
    if len < PAR_MIN {
        (0..len).map(one).collect()
    } else {
        (0..len).into_par_iter().map(one).collect()
    }
}

impl RationalSeries {
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        RationalSeries { coeffs: Coeffs::Exact(coeffs) }
    }

    /// Takes already scaled values `c_n / 4^n`.
    pub fn from_scaled(values: Vec<f64>) -> Self {
        RationalSeries { coeffs: Coeffs::Scaled(values) }
    }

    pub fn zero(len: usize, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Self::from_rationals(vec![BigRational::zero(); len]),
            Mode::ScaledFloat => Self::from_scaled(vec![0.0; len]),
        }
    }

    /// Integer polynomial, lowest degree first, truncated to `len`.
    pub fn poly(coeffs: &[i64], len: usize, mode: Mode) -> Self {
        let mut out = Self::zero(len, mode);
        match &mut out.coeffs {
            Coeffs::Exact(v) => v.iter_mut().zip(coeffs).for_each(|(slot, &c)| *slot = q(c)),
            Coeffs::Scaled(v) => {
                let mut scale = 1.0;
                for (slot, &c) in v.iter_mut().zip(coeffs) {
                    *slot = c as f64 * scale;
                    scale /= 4.0;
                }
            }
        }
        out
    }

    pub fn one(len: usize, mode: Mode) -> Self {
        Self::poly(&[1], len, mode)
    }

    /// `t^k`.
    pub fn monomial(k: usize, len: usize, mode: Mode) -> Self {
        let mut c = vec![0i64; k + 1];
        c[k] = 1;
        Self::poly(&c, len, mode)
    }

    /// `Σ t^n`.
    pub fn geometric(len: usize, mode: Mode) -> Self {
        Self::poly(&vec![1; len], len, mode)
    }

    pub fn len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.len(),
            Coeffs::Scaled(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> Mode {
        match self.coeffs {
            Coeffs::Exact(_) => Mode::Exact,
            Coeffs::Scaled(_) => Mode::ScaledFloat,
        }
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        match &self.coeffs {
            Coeffs::Exact(v) => Some(v),
            Coeffs::Scaled(_) => None,
        }
    }

    pub fn scaled(&self) -> Option<&[f64]> {
        match &self.coeffs {
            Coeffs::Scaled(v) => Some(v),
            Coeffs::Exact(_) => None,
        }
    }

    /// Exact coefficients that are all integers.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        let v = self.exact()?;
        v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// `c_n / 4^n` as a float, for either mode.
    pub fn scaled_coeff(&self, n: usize) -> Option<f64> {
        match &self.coeffs {
            Coeffs::Scaled(v) => v.get(n).copied(),
            Coeffs::Exact(v) => {
                let c = v.get(n)?;
                let four = BigInt::one() << (2 * n);
                Some(to_f64(&(c / BigRational::from_integer(four))))
            }
        }
    }

    pub fn to_scaled(&self) -> Self {
        match &self.coeffs {
            Coeffs::Scaled(_) => self.clone(),
            Coeffs::Exact(v) => Self::from_scaled((0..v.len()).map(|n| self.scaled_coeff(n).unwrap()).collect()),
        }
    }

    pub fn truncate(&self, len: usize) -> Self {
        let mut out = self.clone();
        match &mut out.coeffs {
            Coeffs::Exact(v) => v.truncate(len),
            Coeffs::Scaled(v) => v.truncate(len),
        }
        out
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode() == other.mode() {
            Ok(())
        } else {
            Err(Error::ModeMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let len = self.len().min(other.len());
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => Self::from_rationals((0..len).map(|i| &a[i] + &b[i]).collect()),
            (Coeffs::Scaled(a), Coeffs::Scaled(b)) => Self::from_scaled((0..len).map(|i| a[i] + b[i]).collect()),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Cauchy product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let len = self.len().min(other.len());
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                let (la, lb) = (denominators_lcm(&a[..len]), denominators_lcm(&b[..len]));
                let ia = integer_numerators(&a[..len], &la);
                let ib = integer_numerators(&b[..len], &lb);
                let den = la * lb;
                let prod = int_convolution(&ia, &ib, len);
                Self::from_rationals(prod.into_iter().map(|c| BigRational::new(c, den.clone())).collect())
            }
            (Coeffs::Scaled(a), Coeffs::Scaled(b)) => Self::from_scaled(float_convolution(a, b, len)),
            _ => unreachable!(),
        })
    }

    /// Solves `other · q = self` term by term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let len = self.len().min(other.len());
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                if len == 0 {
                    return Ok(Self::from_rationals(Vec::new()));
                }
                if b[0].is_zero() {
                    return Err(Error::ZeroConstantTerm);
                }
                let a: Vec<BigRational> = a[..len].iter().map(|x| x / &b[0]).collect();
                let b: Vec<BigRational> = b[..len].iter().map(|x| x / &b[0]).collect();
                let lb = denominators_lcm(&b);
                if lb.is_one() {
                    // unit constant term: the solve stays in the integers
                    let la = denominators_lcm(&a);
                    let ia = integer_numerators(&a, &la);
                    let ib: Vec<BigInt> = b.iter().map(|x| x.to_integer()).collect();
                    let mut out: Vec<BigInt> = Vec::with_capacity(len);
                    for n in 0..len {
                        let mut acc = ia[n].clone();
                        for i in 1..=n {
                            if !ib[i].is_zero() && !out[n - i].is_zero() {
                                acc -= &ib[i] * &out[n - i];
                            }
                        }
                        out.push(acc);
                    }
                    return Ok(Self::from_rationals(out.into_iter().map(|c| BigRational::new(c, la.clone())).collect()));
                }
                let mut out: Vec<BigRational> = Vec::with_capacity(len);
                for n in 0..len {
                    let mut acc = a[n].clone();
                    for i in 1..=n {
                        if !b[i].is_zero() {
                            acc -= &b[i] * &out[n - i];
                        }
                    }
                    out.push(acc);
                }
                Ok(Self::from_rationals(out))
            }
            (Coeffs::Scaled(a), Coeffs::Scaled(b)) => {
                if len == 0 {
                    return Ok(Self::from_scaled(Vec::new()));
                }
                if b[0] == 0.0 {
                    return Err(Error::ZeroConstantTerm);
                }
                let mut out: Vec<f64> = Vec::with_capacity(len);
                for n in 0..len {
                    let s: f64 = (1..=n).map(|i| b[i] * out[n - i]).sum();
                    out.push((a[n] - s) / b[0]);
                }
                Ok(Self::from_scaled(out))
            }
            _ => unreachable!(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        match &self.coeffs {
            Coeffs::Exact(v) => Self::from_rationals(v.iter().map(|x| x * c).collect()),
            Coeffs::Scaled(v) => {
                let f = to_f64(c);
                Self::from_scaled(v.iter().map(|x| x * f).collect())
            }
        }
    }

    /// Multiplies by `t^k`, keeping the length.
    pub fn shift(&self, k: usize) -> Self {
        let len = self.len();
        match &self.coeffs {
            Coeffs::Exact(v) => {
                let mut out = vec![BigRational::zero(); k.min(len)];
                out.extend(v.iter().take(len.saturating_sub(k)).cloned());
                Self::from_rationals(out)
            }
            Coeffs::Scaled(v) => {
                let f = 0.25f64.powi(k as i32);
                let mut out = vec![0.0; k.min(len)];
                out.extend(v.iter().take(len.saturating_sub(k)).map(|x| x * f));
                Self::from_scaled(out)
            }
        }
    }

    /// Divides by `t^k`; the length drops by `k`. In exact mode the first `k`
    /// coefficients must vanish. In scaled mode they are dropped, since they
    /// only carry rounding noise there.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if k > self.len() {
            return Err(Error::ShiftUnderflow(k));
        }
        match &self.coeffs {
            Coeffs::Exact(v) => {
                if v[..k].iter().any(|x| !x.is_zero()) {
                    return Err(Error::ShiftUnderflow(k));
                }
                Ok(Self::from_rationals(v[k..].to_vec()))
            }
            Coeffs::Scaled(v) => {
                let f = 4f64.powi(k as i32);
                Ok(Self::from_scaled(v[k..].iter().map(|x| x * f).collect()))
            }
        }
    }

    /// Index of the first coefficient where the two exact series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let len = self.len().min(other.len());
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => (0..len).find(|&i| a[i] != b[i]),
            (Coeffs::Scaled(a), Coeffs::Scaled(b)) => (0..len).find(|&i| a[i] != b[i]),
            _ => Some(0),
        }
    }

    /// Largest `|x - y| / max(|y|, floor)` over the common range, comparing
    /// the scaled values `c_n / 4^n`.
    pub fn max_relative_difference(&self, other: &Self, floor: f64) -> f64 {
        let len = self.len().min(other.len());
        (0..len)
            .map(|n| {
                let (x, y) = (self.scaled_coeff(n).unwrap(), other.scaled_coeff(n).unwrap());
                (x - y).abs() / y.abs().max(floor)
            })
            .fold(0.0, f64::max)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;

    fn neg(self) -> RationalSeries {
        match &self.coeffs {
            Coeffs::Exact(v) => RationalSeries::from_rationals(v.iter().map(|x| -x).collect()),
            Coeffs::Scaled(v) => RationalSeries::from_scaled(v.iter().map(|x| -x).collect()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        /// # Panics
        /// If the operands are in different modes.
        impl $tr for &RationalSeries {
            type Output = RationalSeries;

            fn $method(self, rhs: &RationalSeries) -> RationalSeries {
                self.$inner(rhs).expect("series modes must match")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
enum CoeffRow {
    Exact { n: usize, numer: String, denom: String },
    Scaled { n: usize, value: f64 },
}

impl RationalSeries {
    fn rows(&self) -> Vec<CoeffRow> {
        match &self.coeffs {
            Coeffs::Exact(v) => v
                .iter()
                .enumerate()
                .map(|(n, x)| CoeffRow::Exact { n, numer: x.numer().to_string(), denom: x.denom().to_string() })
                .collect(),
            Coeffs::Scaled(v) => v.iter().enumerate().map(|(n, &value)| CoeffRow::Scaled { n, value }).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let scaling = match self.mode() {
            Mode::Exact => "c_n",
            Mode::ScaledFloat => "c_n / 4^n",
        };
        serde_json::json!({ "mode": self.mode(), "scaling": scaling, "coefficients": self.rows() })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Exact coefficient `n` as `i64`, when it is an integer that fits.
pub fn integer_coeff(s: &RationalSeries, n: usize) -> Option<i64> {
    let x = s.exact()?.get(n)?;
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    let r = BigRational::new(BigInt::from(n), BigInt::from(d));
    debug_assert!(!r.denom().is_negative());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &RationalSeries) -> Vec<i64> {
        (0..s.len()).map(|n| integer_coeff(s, n).unwrap()).collect()
    }

    #[test]
    fn telescoping() {
        for mode in [Mode::Exact, Mode::ScaledFloat] {
            let p = &RationalSeries::poly(&[1, -1], 20, mode) * &RationalSeries::geometric(20, mode);
            let one = RationalSeries::one(20, mode);
            assert!(p.max_relative_difference(&one, 1.0) < 1e-15);
        }
        let g = RationalSeries::one(10, Mode::Exact).div(&RationalSeries::poly(&[1, -1], 10, Mode::Exact)).unwrap();
        assert_eq!(ints(&g), vec![1; 10]);
    }

    #[test]
    fn division_errors_and_fallback() {
        let a = RationalSeries::one(5, Mode::Exact);
        assert!(matches!(a.div(&RationalSeries::monomial(1, 5, Mode::Exact)), Err(Error::ZeroConstantTerm)));
        assert!(matches!(a.try_add(&a.to_scaled()), Err(Error::ModeMismatch)));
        // 1 / (2 - t) = Σ t^n / 2^{n+1}
        let h = a.div(&RationalSeries::poly(&[2, -1], 5, Mode::Exact)).unwrap();
        let half = (0..5).map(|n| rational(1, 1 << (n + 1))).collect::<Vec<_>>();
        assert_eq!(h.exact().unwrap(), &half[..]);
        // rational, non-unit divisor
        let b = RationalSeries::poly(&[3, 1], 5, Mode::Exact).scale(&rational(1, 2));
        let back = &a.div(&b).unwrap() * &b;
        assert_eq!(back, a);
    }

    #[test]
    fn shifts() {
        let s = RationalSeries::poly(&[1, 2, 3], 4, Mode::Exact);
        assert_eq!(ints(&s.shift(1)), vec![0, 1, 2, 3]);
        assert_eq!(ints(&s.shift(1).unshift(1).unwrap()), vec![1, 2, 3]);
        assert!(matches!(s.unshift(1), Err(Error::ShiftUnderflow(1))));
        let f = s.to_scaled().shift(2).unshift(2).unwrap();
        assert!((f.scaled_coeff(1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn exports() {
        let s = RationalSeries::poly(&[1, -2], 2, Mode::Exact).scale(&rational(1, 3));
        assert_eq!(s.to_csv().unwrap(), "n,numer,denom\n0,1,3\n1,-2,3\n");
        let j = s.to_scaled().to_json();
        assert_eq!(j["mode"], "scaled-float");
        assert_eq!(j["coefficients"][1]["value"], -1.0 / 6.0);
    }
}
