//! Left-to-right minima, the 132 → 123 map, and transport of the repeated
//! pattern length between avoidance classes.

use serde::Serialize;

use crate::catalan::enumerate_avoiders;
use crate::error::{Error, Result};
use crate::perm::{contains_132, Permutation, Symmetry, UpDownPattern};
use crate::updown::repeated_length;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LrMinimaDecomposition {
    /// 0-based.
    pub minima_positions: Vec<usize>,
    pub minima_values: Vec<u32>,
    pub other_positions: Vec<usize>,
}

pub fn left_to_right_minima(sigma: &Permutation) -> Result<LrMinimaDecomposition> {
    sequence_minima(sigma.values())
}

/// Same as [`left_to_right_minima`] for any sequence of distinct values.
pub fn sequence_minima(values: &[u32]) -> Result<LrMinimaDecomposition> {
    if values.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut out = LrMinimaDecomposition { minima_positions: Vec::new(), minima_values: Vec::new(), other_positions: Vec::new() };
    let mut low = u32::MAX;
    for (i, &v) in values.iter().enumerate() {
        if v < low {
            low = v;
            out.minima_positions.push(i);
            out.minima_values.push(v);
        } else {
            out.other_positions.push(i);
        }
    }
    Ok(out)
}

/// Keeps the left-to-right minima in place and writes the remaining values
/// into the remaining positions in decreasing order.
pub fn to_123_avoider(sigma: &Permutation) -> Result<Permutation> {
    if contains_132(sigma.values()) {
        return Err(Error::ContainsPattern("132".into()));
    }
    if sigma.is_empty() {
        return Ok(sigma.clone());
    }
    let lr = left_to_right_minima(sigma)?;
    let mut rest: Vec<u32> = lr.other_positions.iter().map(|&i| sigma.values()[i]).collect();
    rest.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = sigma.values().to_vec();
    for (&i, v) in lr.other_positions.iter().zip(rest) {
        out[i] = v;
    }
    Ok(Permutation::from_trusted(out))
}

/// How a 132-avoider is carried to another class of `S_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Transport {
    Reverse,
    Complement,
    ReverseComplement,
    To123,
    /// reverse of the 123-image, landing in `S_n(321)`
    To321,
}

impl Transport {
    pub const ALL: [Transport; 5] =
        [Transport::Reverse, Transport::Complement, Transport::ReverseComplement, Transport::To123, Transport::To321];

    /// The class the image lands in.
    pub fn target(self) -> Permutation {
        let v = match self {
            Transport::Reverse => vec![2, 3, 1],
            Transport::Complement => vec![3, 1, 2],
            Transport::ReverseComplement => vec![2, 1, 3],
            Transport::To123 => vec![1, 2, 3],
            Transport::To321 => vec![3, 2, 1],
        };
        Permutation::from_trusted(v)
    }

    pub fn for_target(tau: &Permutation) -> Result<Self> {
        Transport::ALL
            .into_iter()
            .find(|t| &t.target() == tau)
            .ok_or_else(|| Error::InvalidArgument(format!("no transport from 132 to {tau}")))
    }

    pub fn apply(self, sigma: &Permutation) -> Result<Permutation> {
        if contains_132(sigma.values()) {
            return Err(Error::ContainsPattern("132".into()));
        }
        Ok(match self {
            Transport::Reverse => sigma.reverse(),
            Transport::Complement => sigma.complement(),
            Transport::ReverseComplement => sigma.apply(Symmetry::RevCom),
            Transport::To123 => to_123_avoider(sigma)?,
            Transport::To321 => to_123_avoider(sigma)?.reverse(),
        })
    }
}

/// The five (pattern, class) pairs for `l ∈ {3, 4}`.
pub fn corollary_pairs(l: usize) -> Result<Vec<(UpDownPattern, Permutation)>> {
    let (rows, n): (&[(&str, &str)], usize) = match l {
        3 => (&[("UDD", "231"), ("DDU", "312"), ("DUU", "213"), ("UDD", "123"), ("UUD", "321")], 3),
        4 => (&[("UDDD", "231"), ("DDDU", "312"), ("DUUU", "213"), ("UDDD", "123"), ("UUUD", "321")], 4),
        _ => return Err(Error::UnsupportedLength(l)),
    };
    debug_assert_eq!(n, l);
    Ok(rows.iter().map(|(w, t)| (w.parse().unwrap(), t.parse().unwrap())).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportFailure {
    pub n: usize,
    pub map: Transport,
    pub sigma: Permutation,
    pub image: Permutation,
    pub source_pattern: String,
    pub image_pattern: String,
    pub source_length: u32,
    pub image_length: u32,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TransportReport {
    pub checked: usize,
    pub failures: Vec<TransportFailure>,
    /// Total failures; `failures` keeps only the first few witnesses.
    pub failure_count: usize,
}

impl TransportReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

const KEEP_WITNESSES: usize = 16;

/// Compares `L^{U^{l-1}D}(σ)` with the length of the paired pattern on each
/// image, over all `σ ∈ S_n(132)` for `n ≤ n_max`.
pub fn check_transport(n_max: usize, l: usize, maps: &[Transport]) -> Result<TransportReport> {
    let pairs = corollary_pairs(l)?;
    let source = UpDownPattern::ups_then_down(l - 1);
    let tau132 = Permutation::from_trusted(vec![1, 3, 2]);
    let mut report = TransportReport::default();
    for n in 0..=n_max {
        for sigma in enumerate_avoiders(n, &tau132)? {
            let base = repeated_length(&sigma, &source);
            for &map in maps {
                let target = map.target();
                let (pattern, _) = pairs.iter().find(|(_, t)| *t == target).expect("every target is paired");
                let image = map.apply(&sigma)?;
                let got = repeated_length(&image, pattern);
                report.checked += 1;
                if got != base {
                    report.failure_count += 1;
                    if report.failures.len() < KEEP_WITNESSES {
                        report.failures.push(TransportFailure {
                            n,
                            map,
                            sigma: sigma.clone(),
                            image,
                            source_pattern: source.word().to_string(),
                            image_pattern: pattern.word().to_string(),
                            source_length: base,
                            image_length: got,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::catalan_numbers;
    use crate::perm::contains_exhaustive;
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn minima_examples() {
        let d = sequence_minima(&[4, 3, 5, 7, 6, 8]).unwrap();
        assert_eq!(d.minima_positions, vec![0, 1]);
        assert_eq!(d.minima_values, vec![4, 3]);
        assert_eq!(d.other_positions, vec![2, 3, 4, 5]);
        assert_eq!(left_to_right_minima(&p("54321")).unwrap().minima_positions, vec![0, 1, 2, 3, 4]);
        assert_eq!(left_to_right_minima(&p("12345")).unwrap().minima_positions, vec![0]);
        assert!(left_to_right_minima(&Permutation::identity(0)).is_err());
    }

    #[test]
    fn to_123_examples() {
        assert_eq!(to_123_avoider(&p("21")).unwrap(), p("21"));
        assert_eq!(to_123_avoider(&p("231")).unwrap(), p("231"));
        assert_eq!(to_123_avoider(&p("2314")).unwrap(), p("2413"));
        assert!(matches!(to_123_avoider(&p("132")), Err(Error::ContainsPattern(_))));
    }

    #[test]
    fn to_123_is_a_bijection() {
        let c = catalan_numbers(9);
        for n in 0..=9 {
            let image: HashSet<Permutation> =
                enumerate_avoiders(n, &p("132")).unwrap().map(|s| to_123_avoider(&s).unwrap()).collect();
            assert_eq!(num_bigint::BigUint::from(image.len()), *c.get(n));
            let target: HashSet<Permutation> = enumerate_avoiders(n, &p("123")).unwrap().collect();
            assert_eq!(image, target, "n = {n}");
        }
    }

    #[test]
    fn transports_land_in_target_class() {
        for sigma in enumerate_avoiders(7, &p("132")).unwrap() {
            for map in Transport::ALL {
                let image = map.apply(&sigma).unwrap();
                assert!(!contains_exhaustive(image.values(), map.target().values()), "{map:?} {sigma}");
            }
        }
        assert_eq!(Transport::for_target(&p("321")).unwrap(), Transport::To321);
        assert!(Transport::for_target(&p("132")).is_err());
    }

    #[test]
    fn pair_tables() {
        let three: Vec<String> = corollary_pairs(3).unwrap().iter().map(|(w, t)| format!("{}:{}", w.word(), t)).collect();
        assert_eq!(three, ["UDD:2 3 1", "DDU:3 1 2", "DUU:2 1 3", "UDD:1 2 3", "UUD:3 2 1"]);
        assert_eq!(corollary_pairs(4).unwrap()[4].0.word().to_string(), "UUUD");
        assert!(matches!(corollary_pairs(5), Err(Error::UnsupportedLength(5))));
    }

    #[test]
    fn symmetry_transport_holds() {
        let maps = [Transport::Reverse, Transport::Complement, Transport::ReverseComplement];
        for l in [3, 4] {
            let report = check_transport(8, l, &maps).unwrap();
            assert!(report.passed(), "{:?}", report.failures.first());
        }
    }

    #[test]
    fn to_123_transport_has_a_small_witness() {
        let report = check_transport(4, 3, &[Transport::To123]).unwrap();
        let w = report.failures.iter().find(|f| f.sigma == p("1234")).expect("1234 is a witness");
        assert_eq!(w.image, p("1432"));
        assert_eq!((w.source_length, w.image_length), (0, 4));
    }
}
