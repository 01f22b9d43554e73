//! Invariant suites with witnesses, shared by the `verify` command and the
//! acceptance tests.

use itertools::Itertools;
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bijection::{check_transport, to_123_avoider, Transport};
use crate::catalan::{catalan_numbers, count_no_increasing_triple, enumerate_avoiders, s3};
use crate::error::{Error, Result};
use crate::perm::{contains_132, contains_exhaustive, Permutation, Symmetry, UpDownPattern};
use crate::sampler::{stream_rng, DyckPath};
use crate::series::identities;
use crate::totals::{brute_force_totals, totals, Kind};
use crate::updown::{oracle_statistics, statistics};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Permcore,
    Updown,
    Catalan,
    Bijections,
    Totals,
    Series,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Permcore, Suite::Updown, Suite::Catalan, Suite::Bijections, Suite::Totals, Suite::Series];
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "permcore" => Suite::Permcore,
            "updown" => Suite::Updown,
            "catalan" => Suite::Catalan,
            "bijections" => Suite::Bijections,
            "totals" => Suite::Totals,
            "series" => Suite::Series,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witnesses: Vec<Value>,
}

impl CheckResult {
    fn new(suite: Suite, name: impl Into<String>, witnesses: Vec<Value>, detail: impl Into<String>) -> Self {
        CheckResult { suite, name: name.into(), passed: witnesses.is_empty(), detail: detail.into(), witnesses }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n_max: usize,
    /// Truncation order for the exact series checks.
    pub series_order: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: 9, series_order: 200 }
    }
}

const KEEP: usize = 8;

fn push_witness(list: &mut Vec<Value>, w: Value) {
    if list.len() < KEEP {
        list.push(w);
    }
}

fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32).permutations(n).map(Permutation::from_trusted)
}

/// Which statistic a golden case reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GoldenStat {
    /// `L` for `UUD`
    LengthU2D,
    BlocksU2D,
    /// copies after the first entry, `UUD`
    AfterFirstU2D,
    BlocksU3D,
    /// copies after the first entry with the final letter dropped, `UUUD`
    AfterFirstTruncU3D,
    /// copies after the first two entries, `UUUD`
    AfterSecondU3D,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenCase {
    pub stat: GoldenStat,
    pub sigma: &'static str,
    pub expected: u32,
}

pub fn golden_cases() -> Vec<GoldenCase> {
    use GoldenStat::*;
    [
        (LengthU2D, "342617985", 7),
        (LengthU2D, "319652478", 0),
        (BlocksU2D, "435768921", 2),
        (AfterFirstU2D, "213546", 2),
        (AfterFirstU2D, "435786921", 2),
        (BlocksU2D, "213564", 1),
        (AfterFirstTruncU3D, "435786921", 2),
        (BlocksU3D, "213564", 1),
        (AfterSecondU3D, "213564", 1),
        (AfterFirstTruncU3D, "564321", 1),
        (AfterSecondU3D, "564321", 0),
        (AfterSecondU3D, "786543921", 1),
        (AfterFirstTruncU3D, "21", 0),
    ]
    .into_iter()
    .map(|(stat, sigma, expected)| GoldenCase { stat, sigma, expected })
    .collect()
}

pub fn evaluate_golden(case: &GoldenCase) -> Result<u32> {
    use GoldenStat::*;
    let sigma: Permutation = case.sigma.parse()?;
    let (ups, offsets): (usize, &[usize]) = match case.stat {
        LengthU2D | BlocksU2D | AfterFirstU2D => (2, &[1]),
        _ => (3, &[1, 2]),
    };
    let s = statistics(&sigma, &UpDownPattern::ups_then_down(ups), offsets)?;
    Ok(match case.stat {
        LengthU2D => s.length,
        BlocksU2D | BlocksU3D => s.blocks,
        AfterFirstU2D | AfterFirstTruncU3D => s.suffix(1),
        AfterSecondU3D => s.suffix(2),
    })
}

fn permcore(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let n_max = cfg.n_max.min(8);
    let mut sym = Vec::new();
    let mut fast = Vec::new();
    let tau = [1u32, 3, 2];
    for n in 0..=n_max {
        for sigma in all_perms(n) {
            for op in Symmetry::ALL {
                if sigma.apply(op).updown_word() != sigma.updown_word().transform(op) {
                    push_witness(&mut sym, json!({"sigma": sigma.to_string(), "op": format!("{op:?}")}));
                }
            }
            if contains_132(sigma.values()) != contains_exhaustive(sigma.values(), &tau) {
                push_witness(&mut fast, json!({"sigma": sigma.to_string()}));
            }
        }
    }
    Ok(vec![
        CheckResult::new(Suite::Permcore, "symmetries act on up/down words", sym, format!("all of S_n, n <= {n_max}")),
        CheckResult::new(Suite::Permcore, "linear 132 test matches exhaustive", fast, format!("all of S_n, n <= {n_max}")),
    ])
}

fn updown(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut golden = Vec::new();
    for case in golden_cases() {
        let got = evaluate_golden(&case)?;
        if got != case.expected {
            push_witness(&mut golden, json!({"case": case, "got": got}));
        }
    }
    let n_max = cfg.n_max.min(8);
    let mut oracle = Vec::new();
    for word in ["U", "UD", "UUD", "UUUD", "UDD", "UDDD"] {
        let p = UpDownPattern::new(word.parse()?)?;
        let offsets: Vec<usize> = (0..p.period()).collect();
        for n in 0..=n_max {
            for sigma in all_perms(n) {
                let (a, b) = (statistics(&sigma, &p, &offsets)?, oracle_statistics(&sigma, &p, &offsets)?);
                if a != b {
                    push_witness(&mut oracle, json!({"sigma": sigma.to_string(), "pattern": word, "dp": a, "oracle": b}));
                }
            }
        }
    }
    Ok(vec![
        CheckResult::new(Suite::Updown, "golden vectors", golden, "worked examples"),
        CheckResult::new(Suite::Updown, "DP matches exhaustive oracle", oracle, format!("all of S_n, n <= {n_max}, six patterns")),
    ])
}

fn catalan(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let n_max = cfg.n_max.min(10);
    let c = catalan_numbers(n_max.max(12));
    let mut counts = Vec::new();
    for tau in s3() {
        for n in 0..=n_max {
            let got = enumerate_avoiders(n, &tau)?.count();
            if BigUint::from(got) != *c.get(n) {
                push_witness(&mut counts, json!({"tau": tau.to_string(), "n": n, "count": got}));
            }
        }
    }
    let mut triples = Vec::new();
    for l in 1..=cfg.n_max.clamp(1, 12) {
        let got = count_no_increasing_triple(l)?;
        if got != BigUint::from(1u32) << (l - 1) {
            push_witness(&mut triples, json!({"l": l, "count": got.to_string()}));
        }
    }
    let mut roundtrip = Vec::new();
    let mut rng = stream_rng(0, 0);
    for k in 0..2000 {
        let path = DyckPath::random(k % 30, &mut rng);
        let sigma = path.to_avoider();
        if contains_132(sigma.values()) || DyckPath::from_avoider(&sigma).ok().as_ref() != Some(&path) {
            push_witness(&mut roundtrip, json!({"steps": path.steps()}));
        }
    }
    Ok(vec![
        CheckResult::new(Suite::Catalan, "|S_n(tau)| = C_n", counts, format!("six patterns, n <= {n_max}")),
        CheckResult::new(Suite::Catalan, "no increasing triple count is 2^(l-1)", triples, "enumeration"),
        CheckResult::new(Suite::Catalan, "Dyck decoding round trip", roundtrip, "2000 random paths"),
    ])
}

fn transport_witnesses(report: &crate::bijection::TransportReport) -> Vec<Value> {
    report.failures.iter().take(KEEP).map(|f| serde_json::to_value(f).expect("plain data")).collect()
}

fn bijections(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let n_max = cfg.n_max.min(9);
    let tau132 = Permutation::from_trusted(vec![1, 3, 2]);
    let tau123 = Permutation::from_trusted(vec![1, 2, 3]);
    let mut bij = Vec::new();
    for n in 0..=n_max {
        let mut image: Vec<Permutation> = enumerate_avoiders(n, &tau132)?.map(|s| to_123_avoider(&s)).collect::<Result<_>>()?;
        image.sort();
        let before = image.len();
        image.dedup();
        let mut target: Vec<Permutation> = enumerate_avoiders(n, &tau123)?.collect();
        target.sort();
        if image.len() != before || image != target {
            push_witness(&mut bij, json!({"n": n, "distinct_images": image.len(), "avoiders": target.len()}));
        }
    }
    let sym = [Transport::Reverse, Transport::Complement, Transport::ReverseComplement];
    let mut out = vec![CheckResult::new(Suite::Bijections, "to_123 is a bijection onto S_n(123)", bij, format!("n <= {n_max}"))];
    for l in [3, 4] {
        let r = check_transport(n_max, l, &sym)?;
        out.push(CheckResult::new(
            Suite::Bijections,
            format!("symmetry transport, l = {l}"),
            transport_witnesses(&r),
            format!("{} comparisons, n <= {n_max}", r.checked),
        ));
        let r = check_transport(n_max, l, &[Transport::To123])?;
        out.push(CheckResult::new(
            Suite::Bijections,
            format!("to_123 transport, l = {l}"),
            transport_witnesses(&r),
            format!("{} of {} comparisons differ, n <= {n_max}", r.failure_count, r.checked),
        ));
    }
    Ok(out)
}

fn totals_suite(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let n_max = cfg.n_max.min(11);
    let mut out = Vec::new();
    for kind in [Kind::U2D, Kind::U3D] {
        let t = totals(kind, n_max.max(2));
        let mut w = Vec::new();
        for n in 0..=n_max {
            let b = brute_force_totals(kind, n)?;
            let mut bad = t.alpha[n] != b.alpha || t.beta[n] != b.beta;
            if kind == Kind::U3D {
                bad |= t.gtilde[n] != b.gtilde;
            }
            if bad {
                push_witness(&mut w, json!({"n": n, "alpha": [t.alpha[n].to_string(), b.alpha.to_string()], "beta": [t.beta[n].to_string(), b.beta.to_string()]}));
            }
        }
        out.push(CheckResult::new(Suite::Totals, format!("{kind:?} recurrence matches enumeration"), w, format!("n <= {n_max}")));
    }
    Ok(out)
}

fn series(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let order = cfg.series_order;
    let mut list = identities::route_agreement(order)?;
    list.extend(identities::totals_agreement(order)?);
    list.push(identities::k_generating_function(order.min(64))?);
    list.extend(identities::algebra_checks(order.min(100))?);
    Ok(list
        .into_iter()
        .map(|c| {
            let w = match c.first_mismatch {
                Some(i) => vec![json!({"first_mismatch": i})],
                None => Vec::new(),
            };
            CheckResult::new(Suite::Series, c.name, w, format!("order {}", c.order))
        })
        .collect())
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Permcore => permcore(cfg),
        Suite::Updown => updown(cfg),
        Suite::Catalan => catalan(cfg),
        Suite::Bijections => bijections(cfg),
        Suite::Totals => totals_suite(cfg),
        Suite::Series => series(cfg),
    }
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(run_suite(s, cfg)?);
    }
    Ok(out)
}
