//! Permutations, up/down words and classical pattern containment.
//!
//! Values are 1-based throughout: a permutation of length `n` holds each of
//! `1..=n` exactly once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1, ..., n}` stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::ValueOutOfRange { value: v as i64, n });
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::DuplicateValue { value: v as i64 });
            }
        }
        Ok(Permutation { values })
    }

    /// Wraps values already known to form a permutation.
    pub(crate) fn from_trusted(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n as u32).collect() }
    }

    /// `n (n-1) ... 1`
    pub fn decreasing(n: usize) -> Self {
        Permutation { values: (1..=n as u32).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// `inverse[v - 1]` is the 0-based position holding value `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }

    pub fn reverse(&self) -> Self {
        Permutation { values: self.values.iter().rev().copied().collect() }
    }

    pub fn complement(&self) -> Self {
        let n1 = self.len() as u32 + 1;
        Permutation { values: self.values.iter().map(|&v| n1 - v).collect() }
    }

    pub fn apply(&self, op: Symmetry) -> Self {
        match op {
            Symmetry::Rev => self.reverse(),
            Symmetry::Com => self.complement(),
            Symmetry::RevCom => self.reverse().complement(),
        }
    }

    pub fn updown_word(&self) -> UpDownWord {
        UpDownWord(
            self.values
                .windows(2)
                .map(|w| if w[1] > w[0] { Letter::U } else { Letter::D })
                .collect(),
        )
    }

    pub fn is_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] > w[1])
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(values: Vec<u32>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts whitespace- or comma-separated values (`"4 3 5 7"`, `"4,3,5,7"`),
/// or, when there is no separator at all, one digit per value (`"4357"`).
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
        let values: Vec<i64> = if separated {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| Error::ParsePermutation(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| Error::ParsePermutation(s.to_string())))
                .collect::<Result<_>>()?
        };
        make_permutation(&values)
    }
}

/// Validates an arbitrary integer sequence as a permutation of `1..=n`.
pub fn make_permutation(values: &[i64]) -> Result<Permutation> {
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    for &v in values {
        if v < 1 || v as u64 > n as u64 {
            return Err(Error::ValueOutOfRange { value: v, n });
        }
        out.push(v as u32);
    }
    Permutation::new(out)
}

/// Order-isomorphic relabelling of pairwise distinct values onto `1..=m`.
pub fn reduce<T: Ord + Copy + Into<i64>>(values: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    let mut out = vec![0u32; values.len()];
    for (rank, w) in order.iter().enumerate() {
        if rank > 0 && values[order[rank - 1]] == values[*w] {
            return Err(Error::DuplicateValue { value: values[*w].into() });
        }
        out[*w] = rank as u32 + 1;
    }
    Ok(Permutation::from_trusted(out))
}

/// Up/down word of a sequence of distinct values; one letter per adjacent pair.
pub fn updown_word<T: Ord + Copy + Into<i64>>(values: &[T]) -> Result<UpDownWord> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(reduce(values)?.updown_word())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    U,
    D,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::U => Letter::D,
            Letter::D => Letter::U,
        }
    }

    /// Whether the step `from -> to` reads as this letter.
    #[inline]
    pub fn matches(self, from: u32, to: u32) -> bool {
        match self {
            Letter::U => to > from,
            Letter::D => to < from,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::U => 'U',
            Letter::D => 'D',
        }
    }
}

/// A finite (possibly empty) word over `{U, D}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UpDownWord(Vec<Letter>);

impl UpDownWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        UpDownWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transform(&self, op: Symmetry) -> UpDownWord {
        match op {
            Symmetry::Com => UpDownWord(self.0.iter().map(|l| l.flip()).collect()),
            Symmetry::RevCom => UpDownWord(self.0.iter().rev().copied().collect()),
            Symmetry::Rev => UpDownWord(self.0.iter().rev().map(|l| l.flip()).collect()),
        }
    }
}

impl fmt::Display for UpDownWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for UpDownWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Letter::U),
                'D' | 'd' => Ok(Letter::D),
                _ => Err(Error::ParseWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(UpDownWord)
    }
}

impl TryFrom<String> for UpDownWord {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<UpDownWord> for String {
    fn from(w: UpDownWord) -> Self {
        w.to_string()
    }
}

/// A nonempty up/down word, repeated cyclically when matched against a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UpDownPattern(UpDownWord);

impl UpDownPattern {
    pub fn new(word: UpDownWord) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(UpDownPattern(word))
    }

    /// `U^ups D`
    pub fn ups_then_down(ups: usize) -> Self {
        let mut letters = vec![Letter::U; ups];
        letters.push(Letter::D);
        UpDownPattern(UpDownWord(letters))
    }

    /// Length of one copy of the pattern.
    pub fn period(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    pub fn word(&self) -> &UpDownWord {
        &self.0
    }

    pub fn transform(&self, op: Symmetry) -> UpDownPattern {
        UpDownPattern(self.0.transform(op))
    }
}

impl fmt::Display for UpDownPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for UpDownPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        UpDownPattern::new(s.parse()?)
    }
}

impl TryFrom<String> for UpDownPattern {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<UpDownPattern> for String {
    fn from(p: UpDownPattern) -> Self {
        p.to_string()
    }
}

/// Reversal, complementation and their composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Rev,
    Com,
    RevCom,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::Rev, Symmetry::Com, Symmetry::RevCom];
}

pub fn transform_pattern(word: &UpDownWord, op: Symmetry) -> UpDownWord {
    word.transform(op)
}

/// Largest pattern accepted by the exhaustive containment scan.
pub const MAX_GENERIC_PATTERN: usize = 4;

/// Classical containment: some subsequence of `sigma` is order-isomorphic to `tau`.
///
/// `tau = 132` goes through the linear stack scan; everything else through an
/// exhaustive pruned subsequence search, limited to `|tau| <= 4`.
pub fn contains(sigma: &Permutation, tau: &Permutation) -> Result<bool> {
    let k = tau.len();
    if k == 0 {
        return Err(Error::InvalidArgument("pattern must have length at least 1".into()));
    }
    if k > MAX_GENERIC_PATTERN {
        return Err(Error::PatternTooLong { len: k });
    }
    if tau.values() == [1, 3, 2] {
        return Ok(contains_132(sigma.values()));
    }
    Ok(contains_exhaustive(sigma.values(), tau.values()))
}

pub fn avoids(sigma: &Permutation, tau: &Permutation) -> Result<bool> {
    contains(sigma, tau).map(|c| !c)
}

/// Exhaustive scan over index tuples, pruning as soon as the partial
/// selection stops being order-isomorphic to the prefix of `tau`.
pub fn contains_exhaustive(sigma: &[u32], tau: &[u32]) -> bool {
    fn extend(sigma: &[u32], tau: &[u32], start: usize, chosen: &mut Vec<u32>) -> bool {
        let depth = chosen.len();
        if depth == tau.len() {
            return true;
        }
        let remaining = tau.len() - depth;
        for i in start..=sigma.len().saturating_sub(remaining) {
            let v = sigma[i];
            let consistent = chosen
                .iter()
                .zip(tau)
                .all(|(&c, &t)| (c < v) == (t < tau[depth]));
            if consistent {
                chosen.push(v);
                if extend(sigma, tau, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if tau.len() > sigma.len() {
        return false;
    }
    extend(sigma, tau, 0, &mut Vec::with_capacity(tau.len()))
}

/// Linear-time 132 detection.
///
/// Scanning right to left, the stack holds candidates for the "3" and `two`
/// is the largest value already known to sit to the right of a larger value.
/// A value below `two` completes a 132.
pub fn contains_132(sigma: &[u32]) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    let mut two = 0u32;
    for &v in sigma.iter().rev() {
        if v < two {
            return true;
        }
        while let Some(&top) = stack.last() {
            if top < v {
                two = two.max(top);
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(v);
    }
    false
}
