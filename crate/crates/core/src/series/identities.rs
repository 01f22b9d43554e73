//! Machine checks of the intermediate algebra behind the closed forms. Each
//! check expands both sides as exact series to a stated order.

use serde::Serialize;

use super::gf::{binomial_sqrt_series, catalan_series, series_b_u2d, series_g_u3d, Half, Route};
use super::{rational, Mode, RationalSeries};
use crate::error::Result;
use crate::totals::{k_sequence, totals_u2d, totals_u3d};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub order: usize,
    pub holds: bool,
    pub first_mismatch: Option<usize>,
}

fn check(name: &'static str, order: usize, lhs: &RationalSeries, rhs: &RationalSeries) -> IdentityCheck {
    let first_mismatch = lhs.first_mismatch(rhs);
    IdentityCheck { name, order, holds: first_mismatch.is_none(), first_mismatch }
}

/// Fractions with rational coefficients: integer coefficients over `den`.
fn polyq(c: &[i64], den: i64, len: usize) -> RationalSeries {
    RationalSeries::poly(c, len, Mode::Exact).scale(&rational(1, den))
}

fn poly(c: &[i64], len: usize) -> RationalSeries {
    RationalSeries::poly(c, len, Mode::Exact)
}

/// Both routes of each generating function agree to `order`.
pub fn route_agreement(order: usize) -> Result<Vec<IdentityCheck>> {
    let b = (series_b_u2d(order, Route::Compositional, Mode::Exact)?, series_b_u2d(order, Route::Closed, Mode::Exact)?);
    let g = (series_g_u3d(order, Route::Compositional, Mode::Exact)?, series_g_u3d(order, Route::Closed, Mode::Exact)?);
    Ok(vec![check("B routes agree", order, &b.0, &b.1), check("G routes agree", order, &g.0, &g.1)])
}

/// Series coefficients equal the recurrence totals to `order`.
pub fn totals_agreement(order: usize) -> Result<Vec<IdentityCheck>> {
    let to_series = |v: &[num_bigint::BigUint]| {
        RationalSeries::from_rationals(
            v.iter().map(|x| num_rational::BigRational::from_integer(num_bigint::BigInt::from(x.clone()))).collect(),
        )
    };
    let beta = to_series(&totals_u2d(order).beta);
    let gt = to_series(&totals_u3d(order).gtilde);
    let b = series_b_u2d(order, Route::Closed, Mode::Exact)?;
    let g = series_g_u3d(order, Route::Closed, Mode::Exact)?;
    Ok(vec![check("B coefficients are beta totals", order, &b, &beta), check("G coefficients are gtilde totals", order, &g, &gt)])
}

/// `(1 - t)/(1 - 2t)` against the `k` recurrence.
pub fn k_generating_function(order: usize) -> Result<IdentityCheck> {
    let len = order + 1;
    let lhs = poly(&[1, -1], len).div(&poly(&[1, -2], len))?;
    let k = RationalSeries::from_rationals(
        k_sequence(order).into_iter().map(|x| num_rational::BigRational::from_integer(x.into())).collect(),
    );
    Ok(check("K(t) = (1 - t)/(1 - 2t)", order, &lhs, &k))
}

/// The intermediate steps of both derivations.
pub fn algebra_checks(order: usize) -> Result<Vec<IdentityCheck>> {
    let len = order + 1;
    let mut out = Vec::new();
    let one = poly(&[1], len);
    let t = poly(&[0, 1], len);
    let c = catalan_series(order, Mode::Exact);
    let r = binomial_sqrt_series(Half::Plus, order, Mode::Exact);
    let c2 = &c * &c;
    let c3 = &c2 * &c;
    let cm1 = &c - &one;
    let tc = &t * &c;
    let two = rational(2, 1);

    // quadratic and cubic powers of C
    out.push(check("C^2 form", order, &c2.shift(2).scale(&two), &(&poly(&[1, -2], len) - &r)));
    out.push(check("C^3 form", order, &c3.shift(3).scale(&two), &(&poly(&[1, -3], len) - &(&poly(&[1, -1], len) * &r))));

    // denominator of B, grouped by powers of C and then free of C
    let one_minus_t = poly(&[1, -1], len);
    let den_b = &(&(&(&one_minus_t * &(&one - &tc.scale(&two))) + &t) * &(&one_minus_t - &tc)) - &cm1.shift(2);
    let grouped = &(&poly(&[1, -1, 1], len) + &(&poly(&[0, -3, 3, -2], len) * &c)) + &(&poly(&[0, 0, 2, -2], len) * &c2);
    out.push(check("B denominator grouped", order, &den_b, &grouped));
    let radical = &(&poly(&[1, -1, 2], len) * &r) + &poly(&[1, -5, 4], len);
    out.push(check("B denominator radical", order, &grouped, &radical.scale(&rational(1, 2))));
    let num_b = (&cm1 * &cm1).shift(2);
    let num_radical = &poly(&[1, -4, 2], len) + &(&poly(&[-1, 2], len) * &r);
    out.push(check("B numerator radical", order, &num_b, &num_radical.scale(&rational(1, 2))));

    // d_2 factor; n(t), d(t) grouped by powers of C; then in terms of R
    let m = &(&poly(&[1, -1, -1], len) - &tc.scale(&two)) + &(&poly(&[0, 0, 4], len) * &c);
    let lhs = &poly(&[1, -2], len) * &(&(&one - &tc.scale(&two)) + (&poly(&[0, 1, -1], len).div(&poly(&[1, -2], len))?));
    out.push(check("product of second and third factors", order, &lhs, &m));
    let one_minus_tc = &one - &tc;
    let s = &one_minus_t - &tc;
    let n_t = &(&(&t * &cm1) * &m) * &s;
    let inner = &(&(&(&one_minus_t * &tc) - &t) * &s) + &cm1.shift(2);
    let d_t = &(&(&(&one_minus_t * &one_minus_tc) * &m) * &s) - &(&inner * &poly(&[0, 1, -1], len));
    let cubic = |a3: &[i64], a2: &[i64], a1: &[i64], a0: &[i64]| {
        &(&(&(&poly(a3, len) * &c3) + &(&poly(a2, len) * &c2)) + &(&poly(a1, len) * &c)) + &poly(a0, len)
    };
    let a = cubic(&[0, 0, 0, 2, -4], &[0, 0, -3, 5, 1], &[0, 1, 1, -7, 4], &[0, -1, 2, 0, -1]);
    let b = cubic(&[0, 0, 0, -2, 6, -4], &[0, 0, 5, -15, 12, -2], &[0, -4, 12, -11, 1, 2], &[1, -3, 3, 0, -1]);
    out.push(check("n(t) grouped by powers of C", order, &n_t, &a));
    out.push(check("d(t) grouped by powers of C", order, &d_t, &b));
    let n_r = &(&poly(&[0, 0, 1, -2], len) * &r) + &poly(&[0, 0, 0, 1, -1], len);
    let d_r = &(&polyq(&[1, -5, 9, -3, -2], 2, len) * &r) + &polyq(&[1, -7, 15, -13, 4], 2, len);
    out.push(check("n(t) in terms of R", order, &n_t, &n_r));
    out.push(check("d(t) in terms of R", order, &d_t, &d_r));

    // the coefficient reductions, each multiplied through by 2t^3
    let a_parts = [&[0i64, 0, 0, 2, -4][..], &[0, 0, -3, 5, 1], &[0, 1, 1, -7, 4], &[0, -1, 2, 0, -1]];
    let b_parts = [&[0i64, 0, 0, -2, 6, -4][..], &[0, 0, 5, -15, 12, -2], &[0, -4, 12, -11, 1, 2], &[1, -3, 3, 0, -1]];
    for (label, parts, rad, free) in [
        ("A coefficients", a_parts, polyq(&[0, 0, 2, -4], 1, len), polyq(&[0, 0, 0, 2, -2], 1, len)),
        ("B coefficients", b_parts, polyq(&[1, -5, 9, -3, -2], 1, len), polyq(&[1, -7, 15, -13, 4], 1, len)),
    ] {
        let [p3, p2, p1, p0] = parts.map(|p| poly(p, len));
        // -(1-t)P3 - t P2 - t² P1 = 2t³ · (radical part)
        let lhs = &(&-&(&one_minus_t * &p3) - &(&t * &p2)) - &p1.shift(2);
        out.push(check(label, order, &lhs, &rad.shift(3)));
        // (1-3t)P3 + t(1-2t)P2 + t² P1 + 2t³ P0 = 2t³ · (free part)
        let lhs = &(&(&(&poly(&[1, -3], len) * &p3) + &(&poly(&[0, 1, -2], len) * &p2)) + &p1.shift(2)) + &p0.shift(3).scale(&two);
        out.push(check(label, order, &lhs, &free.shift(3)));
    }

    // conjugate products, up to a common factor t², and their factorizations
    let dr = polyq(&[1, -5, 9, -3, -2], 2, len);
    let df = polyq(&[1, -7, 15, -13, 4], 2, len);
    let d_bar = &(&df * &df) - &(&(&dr * &dr) * &poly(&[1, -4], len));
    let d_poly = poly(&[-1, 8, -19, 4, 45, -56, 15, 4], len);
    out.push(check("conjugate denominator", order, &d_bar, &d_poly.shift(2)));
    let factored = &(&poly(&[1, -4], len) * &poly(&[1, -2, 1], len)) * &poly(&[-1, 2, 2, -6, -1], len);
    out.push(check("denominator factorization", order, &d_poly, &factored));
    let nr = poly(&[0, 0, 1, -2], len);
    let nf = poly(&[0, 0, 0, 1, -1], len);
    let n_bar_r = &(&nr * &df) - &(&nf * &dr);
    let n_bar_f = &(&nf * &df) - &(&(&nr * &dr) * &poly(&[1, -4], len));
    let n_bar_r_poly = polyq(&[1, -10, 35, -57, 42, -9, -2], 2, len);
    let n_bar_f_poly = polyq(&[-1, 12, -55, 119, -116, 29, 12], 2, len);
    out.push(check("conjugate numerator radical part", order, &n_bar_r, &n_bar_r_poly.shift(2)));
    out.push(check("conjugate numerator free part", order, &n_bar_f, &n_bar_f_poly.shift(2)));
    let f1 = &poly(&[1, -2, 1], len) * &polyq(&[1, -8, 18, -13, -2], 2, len);
    let f2 = &(&poly(&[1, -4], len) * &one_minus_t) * &polyq(&[-1, 7, -16, 11, 3], 2, len);
    out.push(check("numerator factorization radical part", order, &n_bar_r_poly, &f1));
    out.push(check("numerator factorization free part", order, &n_bar_f_poly, &f2));
    Ok(out)
}
