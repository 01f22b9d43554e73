//! Binomial and Catalan series and the generating functions of the totals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{rational, Mode, RationalSeries};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    Plus,
    Minus,
}

/// How a generating function is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// from `C(t)` by field operations
    Compositional,
    /// from the square-root-free closed form
    Closed,
}

/// `(1 - 4t)^α` to order `order`, from `c_n = c_{n-1} (α - n + 1)(-4) / n`.
pub fn binomial_series(alpha: &BigRational, order: usize, mode: Mode) -> RationalSeries {
    match mode {
        Mode::Exact => {
            let mut c = vec![BigRational::one()];
            for n in 1..=order {
                let f = (alpha - BigRational::from_integer(BigInt::from(n - 1))) * rational(-4, n as i64);
                let next = &c[n - 1] * f;
                c.push(next);
            }
            RationalSeries::from_rationals(c)
        }
        Mode::ScaledFloat => {
            let a = alpha.to_f64().expect("small exponent");
            let mut d = vec![1.0];
            for n in 1..=order {
                let next = d[n - 1] * ((n as f64 - 1.0 - a) / n as f64);
                d.push(next);
            }
            RationalSeries::from_scaled(d)
        }
    }
}

pub fn binomial_sqrt_series(exponent: Half, order: usize, mode: Mode) -> RationalSeries {
    let alpha = match exponent {
        Half::Plus => rational(1, 2),
        Half::Minus => rational(-1, 2),
    };
    binomial_series(&alpha, order, mode)
}

/// `C(t) = (1 - √(1 - 4t)) / (2t)`.
pub fn catalan_series(order: usize, mode: Mode) -> RationalSeries {
    let r = binomial_sqrt_series(Half::Plus, order + 1, mode);
    let one = RationalSeries::one(order + 2, mode);
    (&one - &r).unshift(1).expect("1 - R has no constant term").scale(&rational(1, 2))
}

fn poly(c: &[i64], len: usize, mode: Mode) -> RationalSeries {
    RationalSeries::poly(c, len, mode)
}

pub fn series_b_u2d(order: usize, route: Route, mode: Mode) -> Result<RationalSeries> {
    let len = order + 1;
    match route {
        Route::Compositional => {
            let c = catalan_series(order, mode);
            let t = RationalSeries::monomial(1, len, mode);
            let one = RationalSeries::one(len, mode);
            let cm1 = &c - &one;
            let tc = &t * &c;
            let num = (&cm1 * &cm1).shift(2);
            // ((1 - t)(1 - 2tC) + t)(1 - t - tC) - t²(C - 1)
            let one_minus_t = &one - &t;
            let first = &(&one_minus_t * &(&one - &tc.scale(&rational(2, 1)))) + &t;
            let second = &one_minus_t - &tc;
            let den = &(&first * &second) - &cm1.shift(2);
            num.div(&den)
        }
        Route::Closed => {
            // t·N(t) needs one more term before dividing by t
            let l = len + 1;
            let r = binomial_sqrt_series(Half::Plus, order + 1, mode);
            let r_inv = binomial_sqrt_series(Half::Minus, order + 1, mode);
            let a = poly(&[1, -4, 2], l, mode);
            let b = poly(&[-1, 2], l, mode);
            let one_minus_t = poly(&[1, -1], l, mode);
            let e = poly(&[1, -1, 2], l, mode);
            let tn = &(&(&(&a * &one_minus_t) + &(&(&b * &one_minus_t) * &r)) - &(&(&a * &e) * &r_inv)) - &(&b * &e);
            let n = tn.unshift(1)?;
            let d = poly(&[1, -1, 0, 1], len, mode).scale(&rational(-4, 1));
            n.div(&d)
        }
    }
}

pub fn series_g_u3d(order: usize, route: Route, mode: Mode) -> Result<RationalSeries> {
    let len = order + 1;
    let one = RationalSeries::one(len, mode);
    let t = RationalSeries::monomial(1, len, mode);
    let one_minus_t = poly(&[1, -1], len, mode);
    match route {
        Route::Compositional => {
            let c = catalan_series(order, mode);
            let cm1 = &c - &one;
            let tc = &t * &c;
            let one_minus_tc = &one - &tc;
            let t_over = t.div(&one_minus_t)?;
            let inner = cm1.shift(2).div(&(&one_minus_t * &(&one_minus_t - &tc)))?;
            let f1 = &(&tc - &t_over) + &inner;
            let f3 = (&t * &one_minus_t).div(&poly(&[1, -2], len, mode))?;
            let f4 = &(&one - &tc.scale(&rational(2, 1))) + &f3;
            let d1 = f1.div(&one_minus_tc)?.try_mul(&f3)?.div(&f4)?;
            let den = &(&one_minus_t * &one_minus_tc) * &(&one - &d1);
            (&t * &cm1).div(&den)
        }
        Route::Closed => {
            let q = poly(&[-1, 2, 2, -6, -1], len, mode);
            let r_inv = binomial_sqrt_series(Half::Minus, order, mode);
            let half = rational(1, 2);
            let p1 = poly(&[1, -8, 18, -13, -2], len, mode).scale(&half);
            let p2 = poly(&[-1, 7, -16, 11, 3], len, mode).scale(&half);
            let first = &p1.div(&q)? * &r_inv;
            let second = p2.div(&(&one_minus_t * &q))?;
            Ok(&first + &second)
        }
    }
}

/// `c_n · √(π n) / 4^n`.
pub fn asymptotic_ratio(series: &RationalSeries, n: usize) -> Result<f64> {
    let d = series.scaled_coeff(n).ok_or(Error::IndexOutOfRange { index: n, max: series.len().saturating_sub(1) })?;
    if d.is_zero() {
        return Ok(0.0);
    }
    Ok(d * (std::f64::consts::PI * n as f64).sqrt())
}
