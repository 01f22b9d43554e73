//! Monte Carlo estimates of `E L / n` under uniform sampling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::perm::UpDownPattern;
use crate::sampler::{sample_avoider_132_with, sample_uniform_with, stream_rng};
use crate::updown::repeated_length;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    /// uniform on `S_n(132)`
    Avoid132,
    /// uniform on `S_n`
    Uniform,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternEstimate {
    pub pattern: String,
    pub mean_l_over_n: f64,
    pub sample_std: f64,
    pub std_error: f64,
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Simulation {
    pub ensemble: Ensemble,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    /// Rep `i` draws from stream `i` of `seed`.
    pub rep_streams: Vec<u64>,
    pub estimates: Vec<PatternEstimate>,
}

/// `reps` permutations, each scored against every pattern. Rep `i` uses
/// stream `i` of `seed`; results are gathered in rep order.
pub fn simulate(n: usize, reps: usize, ensemble: Ensemble, patterns: &[UpDownPattern], seed: u64) -> Simulation {
    let per_rep: Vec<Vec<u32>> = (0..reps as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let sigma = match ensemble {
                Ensemble::Avoid132 => sample_avoider_132_with(n, &mut rng),
                Ensemble::Uniform => sample_uniform_with(n, &mut rng),
            };
            patterns.iter().map(|p| repeated_length(&sigma, p)).collect()
        })
        .collect();
    let estimates = patterns
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let values: Vec<u32> = per_rep.iter().map(|r| r[k]).collect();
            let scaled: Vec<f64> = values.iter().map(|&v| v as f64 / n.max(1) as f64).collect();
            let (mean, std) = mean_std(&scaled);
            PatternEstimate {
                pattern: p.word().to_string(),
                mean_l_over_n: mean,
                sample_std: std,
                std_error: if reps > 0 { std / (reps as f64).sqrt() } else { f64::NAN },
                values,
            }
        })
        .collect();
    Simulation { ensemble, n, reps, seed, rep_streams: (0..reps as u64).collect(), estimates }
}

fn mean_std(x: &[f64]) -> (f64, f64) {
    if x.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    if x.len() < 2 {
        return (mean, 0.0);
    }
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (x.len() - 1) as f64;
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pats(words: &[&str]) -> Vec<UpDownPattern> {
        words.iter().map(|w| UpDownPattern::new(w.parse().unwrap()).unwrap()).collect()
    }

    #[test]
    fn reproducible_and_order_independent() {
        let p = pats(&["UUD", "UD"]);
        let a = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| simulate(300, 12, Ensemble::Avoid132, &p, 3));
        let b = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap().install(|| simulate(300, 12, Ensemble::Avoid132, &p, 3));
        assert_eq!(a.estimates[0].values, b.estimates[0].values);
        assert_eq!(a.estimates[1].mean_l_over_n, b.estimates[1].mean_l_over_n);
        assert_eq!(a.rep_streams, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn small_sanity() {
        let s = simulate(2000, 20, Ensemble::Uniform, &pats(&["UD"]), 1);
        let e = &s.estimates[0];
        assert!((e.mean_l_over_n - 2.0 / 3.0).abs() < 0.02, "{}", e.mean_l_over_n);
        assert!(e.std_error > 0.0 && e.std_error < e.sample_std);
        let one = simulate(10, 1, Ensemble::Avoid132, &pats(&["U"]), 0);
        assert_eq!(one.estimates[0].sample_std, 0.0);
    }
}
