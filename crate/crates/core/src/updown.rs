//! Longest subsequences following a cyclically repeated up/down pattern.
//!
//! A chain is a subsequence `σ_{i_0}, ..., σ_{i_s}` whose `s` steps read the
//! first `s` letters of the pattern repeated cyclically. Step `k` must match
//! letter `k mod l`, so the only thing a chain ending at position `i` passes on
//! to its extensions is `σ_i` and the phase `s mod l`. Keeping, for each
//! (position, phase), the largest step count is therefore enough.
//!
//! Every prefix of a chain is again a chain. So once `M`, the largest step
//! count over all chains, is known, the best chain with step count `≡ r (mod
//! l)` has `r + l·⌊(M - r)/l⌋` steps, and every statistic below is a function
//! of `M` alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Letter, Permutation, UpDownPattern};

/// `f(i, p)`: the largest step count `≡ p (mod l)` over chains ending at `i`.
#[derive(Clone, Debug)]
pub struct PhaseTable {
    n: usize,
    period: usize,
    steps: Vec<Option<u32>>,
    // Predecessor position of the maximizing chain; smallest index on ties.
    pred: Vec<Option<u32>>,
}

impl PhaseTable {
    /// 0-based position `i`, phase `p`.
    pub fn get(&self, i: usize, phase: usize) -> Option<u32> {
        self.steps[i * self.period + phase]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Largest step count over the whole table.
    pub fn max_steps(&self) -> u32 {
        self.steps.iter().flatten().copied().max().unwrap_or(0)
    }

    /// 0-based positions of one chain attaining the maximum step count: the
    /// first (position, phase) cell reaching it, followed back through
    /// predecessors.
    pub fn witness(&self) -> Vec<usize> {
        let best = self.max_steps();
        let start = (0..self.n)
            .flat_map(|i| (0..self.period).map(move |p| (i, p)))
            .find(|&(i, p)| self.get(i, p) == Some(best));
        let Some((mut i, mut p)) = start else {
            return Vec::new();
        };
        let mut chain = vec![i];
        while let Some(prev) = self.pred[i * self.period + p] {
            p = (p + self.period - 1) % self.period;
            i = prev as usize;
            chain.push(i);
        }
        chain.reverse();
        chain
    }
}

/// Quadratic phase DP; returns `M` together with the full table.
pub fn max_steps(sigma: &Permutation, pattern: &UpDownPattern) -> (u32, PhaseTable) {
    let vals = sigma.values();
    let n = vals.len();
    let l = pattern.period();
    let letters = pattern.letters();
    let mut steps: Vec<Option<u32>> = vec![None; n * l];
    let mut pred: Vec<Option<u32>> = vec![None; n * l];
    for j in 0..n {
        steps[j * l] = Some(0);
        for i in 0..j {
            for p in 0..l {
                let Some(s) = steps[i * l + p] else { continue };
                if letters[p].matches(vals[i], vals[j]) {
                    let q = (p + 1) % l;
                    let cell = &mut steps[j * l + q];
                    if cell.is_none_or(|c| s + 1 > c) {
                        *cell = Some(s + 1);
                        pred[j * l + q] = Some(i as u32);
                    }
                }
            }
        }
    }
    let table = PhaseTable { n, period: l, steps, pred };
    (table.max_steps(), table)
}

/// Prefix-maximum Fenwick tree over ranks `1..=n`, `-1` meaning empty.
struct MaxFenwick {
    tree: Vec<i32>,
}

impl MaxFenwick {
    fn new(n: usize) -> Self {
        MaxFenwick { tree: vec![-1; n + 1] }
    }

    fn insert(&mut self, mut rank: usize, value: i32) {
        while rank < self.tree.len() {
            if self.tree[rank] < value {
                self.tree[rank] = value;
            }
            rank += rank & rank.wrapping_neg();
        }
    }

    /// Maximum over ranks `1..=rank`.
    fn query(&self, mut rank: usize) -> i32 {
        let mut best = -1;
        while rank > 0 {
            best = best.max(self.tree[rank]);
            rank &= rank - 1;
        }
        best
    }
}

/// The same DP as [`max_steps`] in `O(n·l·log n)`.
///
/// For phase `p` the next letter is fixed, so the transition is a dominance
/// query: the best `f(i, p)` over earlier positions with smaller (letter `U`)
/// or larger (letter `D`) value. One prefix-max tree per phase answers it,
/// indexed by value for `U` and by `n + 1 - value` for `D`.
pub fn max_steps_fast(sigma: &Permutation, pattern: &UpDownPattern) -> u32 {
    let vals = sigma.values();
    let n = vals.len();
    let l = pattern.period();
    let letters = pattern.letters();
    let mut trees: Vec<MaxFenwick> = (0..l).map(|_| MaxFenwick::new(n)).collect();
    let mut current = vec![-1i32; l];
    let mut best = 0i32;
    for &v in vals {
        let v = v as usize;
        current.iter_mut().for_each(|c| *c = -1);
        current[0] = 0;
        for p in 0..l {
            let prev = match letters[p] {
                Letter::U => trees[p].query(v - 1),
                Letter::D => trees[p].query(n - v),
            };
            if prev >= 0 {
                let q = (p + 1) % l;
                current[q] = current[q].max(prev + 1);
            }
        }
        for p in 0..l {
            if current[p] >= 0 {
                let rank = match letters[p] {
                    Letter::U => v,
                    Letter::D => n + 1 - v,
                };
                trees[p].insert(rank, current[p]);
                best = best.max(current[p]);
            }
        }
    }
    best as u32
}

/// Statistics of one (permutation, pattern) pair.
///
/// `length` is the longest subsequence made of whole copies of the pattern
/// (0 or `l·blocks + 1`), `blocks` the number of copies in it, and
/// `suffix[r]` the largest `k + 1` such that `l·k + r` steps can be matched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseStats {
    #[serde(rename = "M")]
    pub max_steps: u32,
    #[serde(rename = "L")]
    pub length: u32,
    #[serde(rename = "B")]
    pub blocks: u32,
    pub suffix: BTreeMap<usize, u32>,
}

impl PhaseStats {
    pub fn from_max_steps(max_steps: u32, period: usize, offsets: &[usize]) -> Result<Self> {
        let l = period as u32;
        let blocks = max_steps / l;
        let length = if blocks >= 1 { l * blocks + 1 } else { 0 };
        let mut suffix = BTreeMap::new();
        for &r in offsets {
            if r >= period {
                return Err(Error::OffsetOutOfRange { offset: r, len: period });
            }
            suffix.insert(r, suffix_value(max_steps, l, r as u32));
        }
        Ok(PhaseStats { max_steps, length, blocks, suffix })
    }

    /// `suffix(r)`, panicking if `r` was not requested.
    pub fn suffix(&self, r: usize) -> u32 {
        self.suffix[&r]
    }
}

fn suffix_value(m: u32, l: u32, r: u32) -> u32 {
    if m >= r {
        (m - r) / l + 1
    } else {
        0
    }
}

pub fn statistics(sigma: &Permutation, pattern: &UpDownPattern, offsets: &[usize]) -> Result<PhaseStats> {
    let mut stats = PhaseStats::from_max_steps(max_steps_fast(sigma, pattern), pattern.period(), offsets)?;
    if sigma.is_empty() {
        // no chain at all, not even a single point
        stats.suffix.values_mut().for_each(|v| *v = 0);
    }
    Ok(stats)
}

/// Convenience: `L` for a pattern (the repeated-pattern length).
pub fn repeated_length(sigma: &Permutation, pattern: &UpDownPattern) -> u32 {
    let l = pattern.period() as u32;
    let b = max_steps_fast(sigma, pattern) / l;
    if b >= 1 {
        l * b + 1
    } else {
        0
    }
}

pub const ORACLE_MAX_N: usize = 14;

/// Exhaustive reference for [`statistics`]: every nonempty subsequence is
/// tested and the best step count is kept separately for each residue.
pub fn oracle_statistics(sigma: &Permutation, pattern: &UpDownPattern, offsets: &[usize]) -> Result<PhaseStats> {
    let n = sigma.len();
    if n > ORACLE_MAX_N {
        return Err(Error::GuardExceeded { what: "oracle_statistics", n, limit: ORACLE_MAX_N });
    }
    let l = pattern.period();
    for &r in offsets {
        if r >= l {
            return Err(Error::OffsetOutOfRange { offset: r, len: l });
        }
    }
    let vals = sigma.values();
    let letters = pattern.letters();
    let mut best: Vec<Option<u32>> = vec![None; l];
    for mask in 1u32..(1u32 << n) {
        let mut prev: Option<u32> = None;
        let mut steps = 0usize;
        let mut valid = true;
        for (i, &v) in vals.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            if let Some(u) = prev {
                if !letters[steps % l].matches(u, v) {
                    valid = false;
                    break;
                }
                steps += 1;
            }
            prev = Some(v);
        }
        if valid {
            let slot = &mut best[steps % l];
            *slot = Some(slot.map_or(steps as u32, |b| b.max(steps as u32)));
        }
    }
    let max_steps = best.iter().flatten().copied().max().unwrap_or(0);
    let blocks = best[0].map_or(0, |s| s / l as u32);
    let length = if blocks >= 1 { l as u32 * blocks + 1 } else { 0 };
    let suffix = offsets
        .iter()
        .map(|&r| (r, best[r].map_or(0, |s| (s - r as u32) / l as u32 + 1)))
        .collect();
    Ok(PhaseStats { max_steps, length, blocks, suffix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> UpDownPattern {
        s.parse().unwrap()
    }

    fn stats(s: &str, pattern: &str, offsets: &[usize]) -> PhaseStats {
        statistics(&p(s), &pat(pattern), offsets).unwrap()
    }

    #[test]
    fn worked_examples_u2d() {
        let s = stats("342617985", "UUD", &[]);
        assert_eq!((s.length, s.blocks), (7, 2));
        assert_eq!(stats("319652478", "UUD", &[]).length, 0);
        assert_eq!(stats("435768921", "UUD", &[]).blocks, 2);
        assert_eq!(stats("213546", "UUD", &[1]).suffix(1), 2);
        assert_eq!(stats("435786921", "UUD", &[1]).suffix(1), 2);
        assert_eq!(stats("213564", "UUD", &[]).blocks, 1);
    }

    #[test]
    fn worked_examples_u3d() {
        assert_eq!(stats("435786921", "UUUD", &[1]).suffix(1), 2);
        let s = stats("213564", "UUUD", &[2]);
        assert_eq!((s.blocks, s.suffix(2), s.max_steps), (1, 1, 4));
        assert_eq!(stats("564321", "UUUD", &[1]).suffix(1), 1);
        assert_eq!(stats("786543921", "UUUD", &[2]).suffix(2), 1);
        assert_eq!(stats("564321", "UUUD", &[2]).suffix(2), 0);
        assert_eq!(stats("21", "UUUD", &[1]).suffix(1), 0);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(max_steps(&p("54321"), &pat("UD")).0, 0);
        assert_eq!(max_steps_fast(&Permutation::identity(0), &pat("UD")), 0);
        assert_eq!(max_steps_fast(&Permutation::identity(1), &pat("U")), 0);
        assert_eq!(oracle_statistics(&p("12"), &pat("UD"), &[]).unwrap().length, 0);
        assert_eq!(
            statistics(&p("12"), &pat("UD"), &[2]),
            Err(Error::OffsetOutOfRange { offset: 2, len: 2 })
        );
        assert!(matches!(
            oracle_statistics(&Permutation::identity(15), &pat("U"), &[]),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn table_and_witness() {
        let sigma = p("342617985");
        let pattern = pat("UUD");
        let (m, table) = max_steps(&sigma, &pattern);
        assert_eq!(m / 3, 2);
        for i in 0..table.len() {
            assert!(table.get(i, 0).is_some());
            for ph in 0..3 {
                if let Some(s) = table.get(i, ph) {
                    assert_eq!(s as usize % 3, ph);
                    assert!(s as usize <= i);
                }
            }
        }
        let chain: Vec<u32> = table.witness().iter().map(|&i| sigma.values()[i]).collect();
        assert_eq!(chain.len(), m as usize + 1);
        let word = crate::perm::updown_word(&chain).unwrap().to_string();
        assert!("UUDUUDUUD".starts_with(&word));
        // The seven-element prefix is one of the three listed maximizers.
        let head: String = chain[..7].iter().map(|v| v.to_string()).collect();
        assert!(["3461798", "3461795", "3461785"].contains(&head.as_str()));
    }

    #[test]
    fn serializes_with_short_keys() {
        let json = serde_json::to_value(stats("213546", "UUD", &[1])).unwrap();
        assert_eq!(json, serde_json::json!({"M": 4, "L": 4, "B": 1, "suffix": {"1": 2}}));
    }

    fn lis(values: &[u32]) -> usize {
        let mut tails: Vec<u32> = Vec::new();
        for &v in values {
            match tails.binary_search(&v) {
                Ok(_) => {}
                Err(k) if k == tails.len() => tails.push(v),
                Err(k) => tails[k] = v,
            }
        }
        tails.len()
    }

    fn arb_perm(lo: usize, hi: usize) -> impl Strategy<Value = Permutation> {
        (lo..=hi).prop_flat_map(|n| {
            Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(Permutation::from_trusted)
        })
    }

    fn arb_pattern() -> impl Strategy<Value = UpDownPattern> {
        prop::collection::vec(prop::bool::ANY, 1..=5).prop_map(|bits| {
            UpDownPattern::new(crate::perm::UpDownWord::new(
                bits.into_iter().map(|b| if b { Letter::U } else { Letter::D }).collect(),
            ))
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn fast_matches_table(sigma in arb_perm(0, 60), pattern in arb_pattern()) {
            prop_assert_eq!(max_steps_fast(&sigma, &pattern), max_steps(&sigma, &pattern).0);
        }

        #[test]
        fn matches_oracle(sigma in arb_perm(0, 12), pattern in arb_pattern()) {
            let offsets: Vec<usize> = (0..pattern.period()).collect();
            prop_assert_eq!(
                statistics(&sigma, &pattern, &offsets).unwrap(),
                oracle_statistics(&sigma, &pattern, &offsets).unwrap()
            );
        }

        #[test]
        fn single_up_is_lis(sigma in arb_perm(1, 200)) {
            let l = statistics(&sigma, &pat("U"), &[]).unwrap().length as usize;
            let expect = lis(sigma.values());
            prop_assert_eq!(l, if expect >= 2 { expect } else { 0 });
        }

        #[test]
        fn length_shape(sigma in arb_perm(0, 40), pattern in arb_pattern()) {
            let s = statistics(&sigma, &pattern, &[]).unwrap();
            let l = pattern.period() as u32;
            prop_assert_eq!(s.length == 0, s.blocks == 0);
            if s.length != 0 {
                prop_assert_eq!(s.length % l, 1 % l);
            }
        }

        #[test]
        fn u3d_prefix_stats_stay_near_blocks(sigma in arb_perm(0, 40)) {
            let s = statistics(&sigma, &pat("UUUD"), &[1, 2]).unwrap();
            for r in [1, 2] {
                let d = s.suffix(r) as i64 - s.blocks as i64;
                prop_assert!((-1..=1).contains(&d));
            }
        }

        #[test]
        fn symmetry_transport(sigma in arb_perm(0, 40), pattern in arb_pattern()) {
            let base = repeated_length(&sigma, &pattern);
            for op in crate::perm::Symmetry::ALL {
                prop_assert_eq!(base, repeated_length(&sigma.apply(op), &pattern.transform(op)));
            }
        }

        #[test]
        fn first_prefix_zero_iff_decreasing(sigma in arb_perm(0, 30), ups in 1usize..4) {
            let s = statistics(&sigma, &UpDownPattern::ups_then_down(ups), &[1]).unwrap();
            prop_assert_eq!(s.suffix(1) == 0, sigma.is_decreasing());
        }

        #[test]
        fn second_prefix_zero_iff_no_increasing_triple(sigma in arb_perm(0, 30)) {
            let s = statistics(&sigma, &pat("UUUD"), &[2]).unwrap();
            prop_assert_eq!(s.suffix(2) == 0, lis(sigma.values()) < 3);
        }
    }
}
