//! Catalan numbers and exhaustive enumeration of `S_n(τ)` for `τ ∈ S_3`.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::{contains_exhaustive, Permutation, UpDownPattern};
use crate::updown::max_steps_fast;

/// `C_0, ..., C_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanTable {
    values: Vec<BigUint>,
}

impl CatalanTable {
    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.values
    }
}

/// Builds the table from `C_{n+1} (n + 2) = 2 (2n + 1) C_n`.
pub fn catalan_numbers(max_n: usize) -> CatalanTable {
    let mut values = Vec::with_capacity(max_n + 1);
    values.push(BigUint::one());
    for n in 0..max_n {
        let next = &values[n] * BigUint::from(2 * (2 * n as u64 + 1)) / BigUint::from(n as u64 + 2);
        values.push(next);
    }
    CatalanTable { values }
}

/// `binom(2n, n) / (n + 1)`, computed independently of [`catalan_numbers`].
pub fn catalan_binomial(n: usize) -> BigUint {
    num_integer::binomial(BigUint::from(2 * n), BigUint::from(n)) / BigUint::from(n + 1)
}

pub const MAX_N_132: usize = 14;
pub const MAX_N_FILTER: usize = 12;

/// Every permutation of `[n]` avoiding `tau`, each exactly once.
///
/// For `tau = 132` the stream follows the decomposition around the maximum:
/// with `n` at position `j`, the first `j - 1` entries are a 132-avoider on
/// `{n-j+1, ..., n-1}` and the rest a 132-avoider on `{1, ..., n-j}`. Other
/// patterns filter all of `S_n`.
pub fn enumerate_avoiders(n: usize, tau: &Permutation) -> Result<Box<dyn Iterator<Item = Permutation>>> {
    if tau.len() != 3 {
        return Err(Error::NotLengthThree(tau.to_string()));
    }
    if tau.values() == [1, 3, 2] {
        if n > MAX_N_132 {
            return Err(Error::GuardExceeded { what: "enumerate_avoiders(132)", n, limit: MAX_N_132 });
        }
        return Ok(Box::new(avoiders_132(n)));
    }
    if n > MAX_N_FILTER {
        return Err(Error::GuardExceeded { what: "enumerate_avoiders", n, limit: MAX_N_FILTER });
    }
    let tau = tau.values().to_vec();
    Ok(Box::new(
        (1..=n as u32)
            .permutations(n)
            .filter(move |v| !contains_exhaustive(v, &tau))
            .map(Permutation::from_trusted),
    ))
}

/// Flat storage of all 132-avoiders of one size.
struct Block {
    size: usize,
    count: usize,
    data: Vec<u8>,
}

impl Block {
    fn get(&self, k: usize) -> &[u8] {
        &self.data[k * self.size..(k + 1) * self.size]
    }
}

fn build_block(m: usize, blocks: &[Block]) -> Block {
    let mut data = Vec::new();
    let mut count = 0;
    let mut buf = vec![0u8; m];
    for j in 1..=m {
        let (lb, rb) = (&blocks[j - 1], &blocks[m - j]);
        for a in 0..lb.count {
            for (slot, &v) in buf.iter_mut().zip(lb.get(a)) {
                *slot = v + (m - j) as u8;
            }
            buf[j - 1] = m as u8;
            for b in 0..rb.count {
                buf[j..].copy_from_slice(rb.get(b));
                data.extend_from_slice(&buf);
                count += 1;
            }
        }
    }
    Block { size: m, count, data }
}

/// Streams `S_n(132)`; all smaller sizes are materialized up front and the
/// top level is produced lazily as (position of `n`, left block, right block).
pub struct Avoiders132 {
    n: usize,
    blocks: Vec<Block>,
    j: usize,
    left: usize,
    right: usize,
    done: bool,
}

impl Avoiders132 {
    fn new(n: usize) -> Self {
        let mut blocks = vec![Block { size: 0, count: 1, data: Vec::new() }];
        for m in 1..n {
            let block = build_block(m, &blocks);
            blocks.push(block);
        }
        Avoiders132 { n, blocks, j: 1, left: 0, right: 0, done: false }
    }
}

impl Iterator for Avoiders132 {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.n;
        if n == 0 {
            self.done = true;
            return Some(Permutation::identity(0));
        }
        let j = self.j;
        let (lb, rb) = (&self.blocks[j - 1], &self.blocks[n - j]);
        let shift = (n - j) as u32;
        let mut v: Vec<u32> = Vec::with_capacity(n);
        v.extend(lb.get(self.left).iter().map(|&x| x as u32 + shift));
        v.push(n as u32);
        v.extend(rb.get(self.right).iter().map(|&x| x as u32));
        self.right += 1;
        if self.right == rb.count {
            self.right = 0;
            self.left += 1;
            if self.left == lb.count {
                self.left = 0;
                self.j += 1;
                self.done = self.j > n;
            }
        }
        Some(Permutation::from_trusted(v))
    }
}

fn avoiders_132(n: usize) -> Avoiders132 {
    Avoiders132::new(n)
}

/// Number of `σ ∈ S_l(132)` without an increasing subsequence of length three,
/// i.e. whose `UUUD` statistic with prefix offset 2 vanishes.
pub fn count_no_increasing_triple(l: usize) -> Result<BigUint> {
    if l > MAX_N_132 {
        return Err(Error::GuardExceeded { what: "count_no_increasing_triple", n: l, limit: MAX_N_132 });
    }
    let pattern = UpDownPattern::ups_then_down(3);
    let count = avoiders_132(l).filter(|s| max_steps_fast(s, &pattern) < 2).count();
    Ok(BigUint::from(count))
}

/// Number of `σ ∈ S_l(132)` whose `UUD` statistic with prefix offset 1 vanishes.
pub fn count_first_prefix_zero_u2d(l: usize) -> Result<BigUint> {
    if l > MAX_N_132 {
        return Err(Error::GuardExceeded { what: "count_first_prefix_zero_u2d", n: l, limit: MAX_N_132 });
    }
    let pattern = UpDownPattern::ups_then_down(2);
    let count = avoiders_132(l).filter(|s| max_steps_fast(s, &pattern) < 1).count();
    Ok(BigUint::from(count))
}

/// The six patterns of length three.
pub fn s3() -> Vec<Permutation> {
    ["123", "132", "213", "231", "312", "321"].iter().map(|s| s.parse().unwrap()).collect()
}
