//! Exactly uniform random 132-avoiders via Dyck paths, and uniform shuffles.
//!
//! Randomness is drawn from ChaCha8 keyed by a 64-bit master seed with the
//! sample index as stream id, so sample `k` of seed `s` is the same no matter
//! which thread draws it or in which order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{contains_132, Permutation};

/// Generator for stream `index` of master seed `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A lattice path of `+1`/`-1` steps that never dips below zero and ends at zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyckPath {
    // true = up step
    steps: Vec<bool>,
}

impl DyckPath {
    pub fn new(steps: Vec<i8>) -> Result<Self> {
        let mut height = 0i64;
        let mut out = Vec::with_capacity(steps.len());
        for s in steps {
            match s {
                1 => height += 1,
                -1 => height -= 1,
                _ => return Err(Error::InvalidDyckPath("steps must be +1 or -1")),
            }
            if height < 0 {
                return Err(Error::InvalidDyckPath("prefix sum below zero"));
            }
            out.push(s == 1);
        }
        if height != 0 {
            return Err(Error::InvalidDyckPath("path does not return to zero"));
        }
        Ok(DyckPath { steps: out })
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> Vec<i8> {
        self.steps.iter().map(|&u| if u { 1 } else { -1 }).collect()
    }

    /// Uniform over the `C_n` paths of semilength `n`.
    ///
    /// Shuffle `n` up steps and `n + 1` down steps, rotate so the walk starts
    /// just after its first minimum (the cycle lemma makes that rotation
    /// unique and every class has exactly `2n + 1` members), then drop the
    /// final down step.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut steps: Vec<bool> = std::iter::repeat_n(true, n).chain(std::iter::repeat_n(false, n + 1)).collect();
        steps.shuffle(rng);
        let mut height = 0i64;
        let mut min = 0i64;
        let mut cut = 0;
        for (i, &up) in steps.iter().enumerate() {
            height += if up { 1 } else { -1 };
            if height < min {
                min = height;
                cut = i + 1;
            }
        }
        steps.rotate_left(cut);
        let last = steps.pop();
        debug_assert_eq!(last, Some(false));
        DyckPath { steps }
    }

    /// `match[i]` is the index of the down step closing the up step at `i`.
    fn matching(&self) -> Vec<usize> {
        let mut matching = vec![usize::MAX; self.steps.len()];
        let mut open = Vec::new();
        for (i, &up) in self.steps.iter().enumerate() {
            if up {
                open.push(i);
            } else {
                let o = open.pop().expect("validated Dyck path");
                matching[o] = i;
            }
        }
        matching
    }

    /// First-return decoding. For `U P₁ D P₂` with `|P₁| = 2(j - 1)`, the
    /// maximum sits at position `j`, `P₁` fills the positions before it with
    /// `{n-j+1, ..., n-1}` and `P₂` fills the rest with `{1, ..., n-j}`.
    pub fn to_avoider(&self) -> Permutation {
        let n = self.semilength();
        let matching = self.matching();
        let mut out = vec![0u32; n];
        // (start step, end step, first output position, value offset)
        let mut work = vec![(0usize, self.steps.len(), 0usize, 0u32)];
        while let Some((start, end, pos, lo)) = work.pop() {
            if start == end {
                continue;
            }
            let k = ((end - start) / 2) as u32;
            let close = matching[start];
            let left = ((close - start - 1) / 2) as u32;
            let j = left + 1;
            out[pos + left as usize] = lo + k;
            work.push((start + 1, close, pos, lo + (k - j)));
            work.push((close + 1, end, pos + j as usize, lo));
        }
        Permutation::from_trusted(out)
    }

    /// Inverse of [`DyckPath::to_avoider`].
    pub fn from_avoider(sigma: &Permutation) -> Result<Self> {
        if contains_132(sigma.values()) {
            return Err(Error::ContainsPattern("132".into()));
        }
        enum Task {
            Segment { pos: usize, len: usize },
            Down,
        }
        let positions = sigma.positions();
        let mut steps = Vec::with_capacity(2 * sigma.len());
        // In a 132-avoider every value left of the maximum exceeds every value
        // right of it, so a segment's values are a contiguous range whose top
        // is found through the inverse permutation.
        let mut tops = vec![sigma.len() as u32];
        let mut work = vec![Task::Segment { pos: 0, len: sigma.len() }];
        while let Some(task) = work.pop() {
            match task {
                Task::Down => steps.push(false),
                Task::Segment { pos, len } => {
                    let top = tops.pop().expect("one top per segment");
                    if len == 0 {
                        continue;
                    }
                    let at = positions[top as usize - 1];
                    let left = at - pos;
                    let right = len - left - 1;
                    steps.push(true);
                    // right block: values top-len+1 .. top-left-1
                    tops.push(top - left as u32 - 1);
                    work.push(Task::Segment { pos: at + 1, len: right });
                    work.push(Task::Down);
                    tops.push(top - 1);
                    work.push(Task::Segment { pos, len: left });
                }
            }
        }
        Ok(DyckPath { steps })
    }
}

pub fn sample_avoider_132_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    DyckPath::random(n, rng).to_avoider()
}

/// Uniform element of `S_n(132)`, stream 0 of `seed`.
pub fn sample_avoider_132(n: usize, seed: u64) -> Permutation {
    sample_avoider_132_with(n, &mut stream_rng(seed, 0))
}

pub fn sample_uniform_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut values: Vec<u32> = (1..=n as u32).collect();
    values.shuffle(rng);
    Permutation::from_trusted(values)
}

/// Uniform element of `S_n`, stream 0 of `seed`.
pub fn sample_uniform(n: usize, seed: u64) -> Permutation {
    sample_uniform_with(n, &mut stream_rng(seed, 0))
}
