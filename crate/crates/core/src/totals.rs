//! Exact Catalan-weighted totals over `S_n(132)`.
//!
//! For `UUD` the tables hold `α_n = Σ A(σ)` and `β_n = Σ B(σ)`, summed over
//! all 132-avoiders of size `n`, where `A` counts the complete copies after
//! the first element and `B` the complete copies overall. For `UUUD` there is
//! a third total `g̃_n`, the sum of copies after the first element with the
//! last letter dropped. Dividing by `C_n` gives expectations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::catalan::{catalan_numbers, enumerate_avoiders, CatalanTable};
use crate::decimal::decimal_string;
use crate::error::{Error, Result};
use crate::perm::{Permutation, UpDownPattern};
use crate::updown::{max_steps_fast, PhaseStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum Kind {
    U2D,
    U3D,
}

impl Kind {
    /// Pattern length `l` (letters per copy).
    pub fn period(self) -> usize {
        match self {
            Kind::U2D => 3,
            Kind::U3D => 4,
        }
    }

    pub fn pattern(self) -> UpDownPattern {
        UpDownPattern::ups_then_down(self.period() - 1)
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "U2D" | "UUD" => Ok(Kind::U2D),
            "U3D" | "UUUD" => Ok(Kind::U3D),
            _ => Err(Error::InvalidArgument(format!("unknown kind {s:?}, expected U2D or U3D"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stat {
    Alpha,
    Beta,
    Gtilde,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalsTable {
    pub kind: Kind,
    pub alpha: Vec<BigUint>,
    pub beta: Vec<BigUint>,
    /// Empty for `U2D`.
    pub gtilde: Vec<BigUint>,
    pub catalan: CatalanTable,
}

impl TotalsTable {
    pub fn max_n(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn get(&self, stat: Stat, n: usize) -> Result<&BigUint> {
        let seq = match (stat, self.kind) {
            (Stat::Alpha, _) => &self.alpha,
            (Stat::Beta, _) => &self.beta,
            (Stat::Gtilde, Kind::U3D) => &self.gtilde,
            (Stat::Gtilde, Kind::U2D) => return Err(Error::InvalidArgument("gtilde exists only for U3D".into())),
        };
        seq.get(n).ok_or(Error::IndexOutOfRange { index: n, max: self.max_n() })
    }
}

/// `k_0 = 1`, `k_l = k_0 + ... + k_{l-1}`.
pub fn k_sequence(max_n: usize) -> Vec<BigUint> {
    let mut k = vec![BigUint::one()];
    let mut sum = BigUint::one();
    for _ in 0..max_n {
        k.push(sum.clone());
        sum = &sum + k.last().unwrap();
    }
    debug_assert!(k.iter().enumerate().skip(1).all(|(l, v)| *v == BigUint::one() << (l - 1)));
    k
}

const BLOCK: usize = 64;

/// `Σ_{i = lo}^{hi} a_i · b_{total - i}` (empty when `lo > hi`). Blocks of
/// fixed size are summed in index order, so the result does not depend on
/// the number of workers.
fn conv_term(a: &[BigUint], b: &[BigUint], lo: usize, hi: usize, total: usize) -> BigUint {
    if lo > hi {
        return BigUint::zero();
    }
    let len = hi - lo + 1;
    let block_sum = |start: usize| -> BigUint {
        let end = (start + BLOCK).min(hi + 1);
        let mut acc = BigUint::zero();
        for i in start..end {
            if !a[i].is_zero() && !b[total - i].is_zero() {
                acc += &a[i] * &b[total - i];
            }
        }
        acc
    };
    if len <= BLOCK {
        return block_sum(lo);
    }
    let starts: Vec<usize> = (lo..=hi).step_by(BLOCK).collect();
    let partial: Vec<BigUint> = starts.par_iter().map(|&s| block_sum(s)).collect();
    partial.into_iter().fold(BigUint::zero(), |acc, x| acc + x)
}

fn minus_each(c: &[BigUint], k: &[BigUint]) -> Vec<BigUint> {
    c.iter().zip(k).map(|(c, k)| c - k).collect()
}

/// `β_n` (shared by both kinds) from `α` and `β` below `n`.
fn beta_step(n: usize, alpha: &[BigUint], beta: &[BigUint], c: &[BigUint]) -> BigUint {
    // j = 1..n-1, i = j - 1 = 0..n-2
    let mut v = conv_term(alpha, c, 0, n - 2, n - 1);
    v += conv_term(c, beta, 0, n - 2, n - 1);
    v += &beta[n - 1];
    v
}

/// `α_{n-1} + Σ_{j=2}^{n} (α_{j-1} w_{n-j} + C_{j-1} x_{n-j})`.
fn shifted_terms(n: usize, alpha: &[BigUint], w: &[BigUint], c: &[BigUint], x: &[BigUint]) -> BigUint {
    // i = j - 1 = 1..n-1
    let mut v = conv_term(alpha, w, 1, n - 1, n - 1);
    v += conv_term(c, x, 1, n - 1, n - 1);
    v
}

pub fn totals_u2d(max_n: usize) -> TotalsTable {
    let catalan = catalan_numbers(max_n.max(1));
    let c = catalan.as_slice();
    let ones = vec![BigUint::one(); c.len()];
    let c_minus_1 = minus_each(c, &ones);
    let mut alpha = vec![BigUint::zero(); 2.min(max_n + 1)];
    let mut beta = alpha.clone();
    // Σ_{i=1}^{n-1} (β_i + C_i)
    let mut tail = BigUint::zero();
    for n in 2..=max_n {
        tail += &beta[n - 1] + &c[n - 1];
        let b = beta_step(n, &alpha, &beta, c);
        let mut a = alpha[n - 1].clone();
        a += shifted_terms(n, &alpha, &c_minus_1, c, &alpha);
        a += &tail;
        alpha.push(a);
        beta.push(b);
    }
    TotalsTable { kind: Kind::U2D, alpha, beta, gtilde: Vec::new(), catalan: catalan_numbers(max_n) }
}

pub fn totals_u3d(max_n: usize) -> TotalsTable {
    let catalan = catalan_numbers(max_n.max(1));
    let c = catalan.as_slice();
    let k = k_sequence(c.len() - 1);
    let ones = vec![BigUint::one(); c.len()];
    let c_minus_1 = minus_each(c, &ones);
    let c_minus_k = minus_each(c, &k);
    let start = 2.min(max_n + 1);
    let mut alpha = vec![BigUint::zero(); start];
    let mut beta = alpha.clone();
    let mut gt = alpha.clone();
    let mut tail = BigUint::zero();
    for n in 2..=max_n {
        tail += &beta[n - 1] + &c[n - 1];
        let b = beta_step(n, &alpha, &beta, c);
        let mut g = gt[n - 1].clone();
        g += shifted_terms(n, &alpha, &c_minus_1, c, &gt);
        g += &tail;
        let mut a = alpha[n - 1].clone();
        a += shifted_terms(n, &alpha, &c_minus_k, c, &alpha);
        // Σ_{j=2}^{n} g̃_{j-1} k_{n-j}
        a += conv_term(&gt, &k, 1, n - 1, n - 1);
        alpha.push(a);
        beta.push(b);
        gt.push(g);
    }
    TotalsTable { kind: Kind::U3D, alpha, beta, gtilde: gt, catalan: catalan_numbers(max_n) }
}

pub fn totals(kind: Kind, max_n: usize) -> TotalsTable {
    match kind {
        Kind::U2D => totals_u2d(max_n),
        Kind::U3D => totals_u3d(max_n),
    }
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// The total for `stat` at `n` divided by `C_n`.
pub fn expected_blocks(table: &TotalsTable, n: usize, stat: Stat) -> Result<BigRational> {
    let total = table.get(stat, n)?;
    Ok(ratio(total, table.catalan.get(n)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthBounds {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

/// Largest `n` for which the exact `E L_n` is enumerated.
pub const EXACT_LENGTH_MAX_N: usize = 11;

/// `E L = l·E B + P(B ≥ 1)`, so `l·E B ≤ E L ≤ l·E B + 1`.
pub fn expected_length_bounds(table: &TotalsTable, n: usize) -> Result<LengthBounds> {
    let l = BigRational::from_integer(BigInt::from(table.kind.period()));
    let lo = l * expected_blocks(table, n, Stat::Beta)?;
    let hi = &lo + BigRational::one();
    let exact = if n <= EXACT_LENGTH_MAX_N { Some(exact_expected_length(table.kind, n)?) } else { None };
    Ok(LengthBounds { lo, hi, exact })
}

/// `E L_n` over `S_n(132)` by enumeration.
pub fn exact_expected_length(kind: Kind, n: usize) -> Result<BigRational> {
    let totals = brute_force_totals(kind, n)?;
    Ok(ratio(&totals.length, &catalan_numbers(n).get(n).clone()))
}

/// Sums of the statistics over `S_n(132)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BruteTotals {
    pub alpha: BigUint,
    pub beta: BigUint,
    pub gtilde: BigUint,
    pub length: BigUint,
}

/// Reference totals: every `σ ∈ S_n(132)` through the up/down DP.
pub fn brute_force_totals(kind: Kind, n: usize) -> Result<BruteTotals> {
    let pattern = kind.pattern();
    let l = kind.period();
    let tau = Permutation::from_trusted(vec![1, 3, 2]);
    let mut out = BruteTotals::default();
    let offsets: &[usize] = match kind {
        Kind::U2D => &[1],
        Kind::U3D => &[1, 2],
    };
    for sigma in enumerate_avoiders(n, &tau)? {
        let m = max_steps_fast(&sigma, &pattern);
        let s = PhaseStats::from_max_steps(m, l, offsets)?;
        out.beta += s.blocks;
        out.length += s.length;
        match kind {
            Kind::U2D => out.alpha += s.suffix(1),
            Kind::U3D => {
                out.gtilde += s.suffix(1);
                out.alpha += s.suffix(2);
            }
        }
    }
    Ok(out)
}

fn as_decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn opt_decimal<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// One exported row; integers are decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct TotalsRow {
    pub n: usize,
    #[serde(serialize_with = "as_decimal")]
    pub alpha: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub beta: BigUint,
    #[serde(serialize_with = "opt_decimal", skip_serializing_if = "Option::is_none")]
    pub gtilde: Option<BigUint>,
    #[serde(serialize_with = "as_decimal")]
    pub catalan: BigUint,
    pub beta_over_catalan: String,
    pub length_lo: String,
    pub length_hi: String,
}

impl TotalsTable {
    pub fn rows(&self, n_min: usize, precision: usize) -> Vec<TotalsRow> {
        let l = BigRational::from_integer(BigInt::from(self.kind.period()));
        (n_min..=self.max_n())
            .map(|n| {
                let eb = ratio(&self.beta[n], self.catalan.get(n));
                let lo = &l * &eb;
                let hi = &lo + BigRational::one();
                TotalsRow {
                    n,
                    alpha: self.alpha[n].clone(),
                    beta: self.beta[n].clone(),
                    gtilde: (self.kind == Kind::U3D).then(|| self.gtilde[n].clone()),
                    catalan: self.catalan.get(n).clone(),
                    beta_over_catalan: decimal_string(&eb, precision),
                    length_lo: decimal_string(&lo, precision),
                    length_hi: decimal_string(&hi, precision),
                }
            })
            .collect()
    }

    pub fn to_csv(&self, n_min: usize, precision: usize) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows(n_min, precision) {
            w.serialize(row).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self, n_min: usize, precision: usize) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "rows": self.rows(n_min, precision),
        })
    }
}
