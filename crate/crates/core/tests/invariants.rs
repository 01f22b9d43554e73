use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;

use permlab::bijection::{left_to_right_minima, to_123_avoider, Transport};
use permlab::perm::{contains_132, contains_exhaustive};
use permlab::sampler::{sample_avoider_132, sample_uniform, stream_rng, DyckPath};
use permlab::series::RationalSeries;
use permlab::updown::{oracle_statistics, repeated_length, statistics};
use permlab::{Letter, Permutation, Symmetry, UpDownPattern, UpDownWord};

fn pattern_strategy() -> impl Strategy<Value = UpDownPattern> {
    prop::collection::vec(any::<bool>(), 1..5).prop_map(|bits| {
        let letters = bits.into_iter().map(|b| if b { Letter::U } else { Letter::D }).collect();
        UpDownPattern::new(UpDownWord::new(letters)).unwrap()
    })
}

fn shuffled(n: usize, seed: u64) -> Permutation {
    let mut v: Vec<u32> = (1..=n as u32).collect();
    v.shuffle(&mut stream_rng(seed, 0));
    Permutation::new(v).unwrap()
}

fn exact(c: &[i64]) -> RationalSeries {
    RationalSeries::from_rationals(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_avoiders_round_trip(n in 0usize..300, seed in any::<u64>()) {
        let sigma = sample_avoider_132(n, seed);
        prop_assert_eq!(sigma.len(), n);
        prop_assert!(!contains_132(sigma.values()));
        let path = DyckPath::from_avoider(&sigma).unwrap();
        prop_assert_eq!(path.semilength(), n);
        prop_assert_eq!(path.to_avoider(), sigma);
    }

    #[test]
    fn bijection_lands_in_123_and_keeps_minima(n in 1usize..40, seed in any::<u64>()) {
        let sigma = sample_avoider_132(n, seed);
        let image = to_123_avoider(&sigma).unwrap();
        prop_assert!(!contains_exhaustive(image.values(), &[1, 2, 3]));
        prop_assert_eq!(left_to_right_minima(&image).unwrap(), left_to_right_minima(&sigma).unwrap());
    }

    #[test]
    fn transports_land_in_their_class(n in 1usize..14, seed in any::<u64>()) {
        let sigma = sample_avoider_132(n, seed);
        for map in Transport::ALL {
            let image = map.apply(&sigma).unwrap();
            prop_assert!(!contains_exhaustive(image.values(), map.target().values()), "{:?}", map);
        }
    }

    #[test]
    fn symmetries_carry_repeated_length(n in 0usize..200, seed in any::<u64>(), p in pattern_strategy()) {
        let sigma = sample_uniform(n, seed);
        let base = repeated_length(&sigma, &p);
        for op in Symmetry::ALL {
            prop_assert_eq!(repeated_length(&sigma.apply(op), &p.transform(op)), base, "{:?}", op);
        }
    }

    #[test]
    fn statistics_match_oracle_on_random_permutations(n in 0usize..12, seed in any::<u64>(), p in pattern_strategy()) {
        let sigma = shuffled(n, seed);
        let offsets: Vec<usize> = (0..p.period()).collect();
        prop_assert_eq!(statistics(&sigma, &p, &offsets).unwrap(), oracle_statistics(&sigma, &p, &offsets).unwrap());
    }

    #[test]
    fn exact_division_inverts_multiplication(
        a in prop::collection::vec(-20i64..20, 12),
        mut b in prop::collection::vec(-20i64..20, 12),
        b0 in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
    ) {
        b[0] = b0;
        let (a, b) = (exact(&a), exact(&b));
        let product = a.try_mul(&b).unwrap();
        prop_assert_eq!(product.div(&b).unwrap(), a.clone());
        let scaled = product.to_scaled().div(&b.to_scaled()).unwrap();
        prop_assert!(scaled.max_relative_difference(&a.to_scaled(), 1e-9) < 1e-6);
    }
}

#[test]
fn same_seed_same_sample() {
    assert_eq!(sample_avoider_132(5000, 42), sample_avoider_132(5000, 42));
    assert_ne!(sample_avoider_132(5000, 42), sample_avoider_132(5000, 43));
}
