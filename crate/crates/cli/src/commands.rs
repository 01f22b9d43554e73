use std::fmt::Write as _;

use permlab::bijection::{corollary_pairs, left_to_right_minima, Transport};
use permlab::catalan::enumerate_avoiders;
use permlab::montecarlo::{simulate, Ensemble, Simulation};
use permlab::series::{
    asymptotic_ratio, binomial_sqrt_series, catalan_series, series_b_u2d, series_g_u3d, Half, Mode, RationalSeries, Route,
};
use permlab::totals::{totals, Kind};
use permlab::verify::{run_all, run_suite, CheckResult, Suite, VerifyConfig};
use permlab::{Permutation, UpDownPattern};
use serde_json::{json, Value};

use crate::args::*;
use crate::CliError;

pub struct Output {
    pub body: String,
    /// A verification check failed.
    pub failed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, failed: false }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn csv_rows<T: serde::Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn expectation(a: &ExpectationArgs) -> Result<Output, CliError> {
    let kind = match a.kind {
        KindArg::U2D => Kind::U2D,
        KindArg::U3D => Kind::U3D,
    };
    if a.n_min > a.n_max {
        return Err(CliError::Usage("--n-min exceeds --n-max".into()));
    }
    let table = totals(kind, a.n_max);
    Ok(Output::ok(match a.common.format {
        Format::Json => {
            let mut v = table.to_json(a.n_min, a.precision);
            v["l"] = json!(kind.period());
            pretty(&v)
        }
        Format::Csv => table.to_csv(a.n_min, a.precision)?,
        Format::Text => {
            let mut s = String::from("n\tE[B]\tE[L] lo\tE[L] hi\n");
            for r in table.rows(a.n_min, a.precision) {
                writeln!(s, "{}\t{}\t{}\t{}", r.n, r.beta_over_catalan, r.length_lo, r.length_hi).unwrap();
            }
            s
        }
    }))
}

fn build_series(a: &SeriesArgs) -> Result<RationalSeries, CliError> {
    let mode = match a.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::ScaledFloat => Mode::ScaledFloat,
    };
    let route = match a.route {
        RouteArg::Compositional => Route::Compositional,
        RouteArg::Closed => Route::Closed,
    };
    Ok(match a.gf {
        GfArg::B => series_b_u2d(a.order, route, mode)?,
        GfArg::G => series_g_u3d(a.order, route, mode)?,
        GfArg::Catalan => catalan_series(a.order, mode),
        GfArg::CentralBinomial => binomial_sqrt_series(Half::Minus, a.order, mode),
    })
}

#[derive(serde::Serialize)]
struct RatioRow {
    n: usize,
    ratio: f64,
    /// ratio times the constant expected to bring it to 1
    normalized: f64,
}

pub fn series(a: &SeriesArgs) -> Result<Output, CliError> {
    let s = build_series(a)?;
    if !a.ratios {
        return Ok(Output::ok(match a.common.format {
            Format::Json => {
                let mut v = s.to_json();
                v["gf"] = json!(a.gf);
                v["order"] = json!(a.order);
                pretty(&v)
            }
            Format::Csv => s.to_csv()?,
            Format::Text => {
                let mut out = String::new();
                for n in 0..s.len() {
                    match s.exact() {
                        Some(c) => writeln!(out, "{n}\t{}", c[n]).unwrap(),
                        None => writeln!(out, "{n}\t{:e}", s.scaled_coeff(n).unwrap()).unwrap(),
                    }
                }
                out
            }
        }));
    }
    let mut points: Vec<usize> = std::iter::successors(Some(1usize), |&p| p.checked_mul(2)).take_while(|&p| p <= a.order).collect();
    if points.last() != Some(&a.order) && a.order > 0 {
        points.push(a.order);
    }
    let rows: Vec<RatioRow> = points
        .into_iter()
        .map(|n| {
            let ratio = asymptotic_ratio(&s, n)?;
            let normalized = match a.gf {
                GfArg::B => 7.0 * ratio,
                GfArg::G => 11.0 * ratio,
                GfArg::CentralBinomial => ratio,
                GfArg::Catalan => n as f64 * ratio,
            };
            Ok(RatioRow { n, ratio, normalized })
        })
        .collect::<Result<_, permlab::Error>>()?;
    Ok(Output::ok(match a.common.format {
        Format::Json => pretty(&json!({"gf": a.gf, "order": a.order, "mode": a.mode, "ratios": rows})),
        Format::Csv => csv_rows(rows)?,
        Format::Text => rows.iter().map(|r| format!("{}\t{:.9}\t{:.9}\n", r.n, r.ratio, r.normalized)).collect(),
    }))
}

fn parse_perm(s: &str) -> Result<Permutation, CliError> {
    Ok(s.trim().parse()?)
}

pub fn enumerate(a: &EnumerateArgs) -> Result<Output, CliError> {
    let tau = parse_perm(&a.avoid)?;
    let list: Vec<Permutation> = enumerate_avoiders(a.n, &tau)?.collect();
    Ok(Output::ok(match (a.common.format, a.count_only) {
        (Format::Json, true) => pretty(&json!({"n": a.n, "avoid": tau.to_string(), "count": list.len()})),
        (Format::Json, false) => pretty(&json!({
            "n": a.n,
            "avoid": tau.to_string(),
            "count": list.len(),
            "permutations": list.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })),
        (Format::Csv, true) => format!("n,avoid,count\n{},{},{}\n", a.n, tau.values().iter().map(|v| v.to_string()).collect::<String>(), list.len()),
        (Format::Csv, false) => std::iter::once("permutation\n".to_string()).chain(list.iter().map(|p| format!("{p}\n"))).collect(),
        (Format::Text, true) => format!("{}\n", list.len()),
        (Format::Text, false) => list.iter().map(|p| format!("{p}\n")).collect(),
    }))
}

fn simulation_json(sim: &Simulation, samples: Option<Vec<String>>) -> Value {
    let results: Vec<Value> = sim
        .estimates
        .iter()
        .map(|e| {
            json!({
                "pattern": e.pattern,
                "mean_L_over_n": e.mean_l_over_n,
                "sample_std": e.sample_std,
                "std_error": e.std_error,
                "L_values": e.values,
            })
        })
        .collect();
    let mut v = json!({
        "ensemble": sim.ensemble,
        "n": sim.n,
        "reps": sim.reps,
        "seed": sim.seed,
        "rep_streams": sim.rep_streams,
    });
    if results.len() == 1 {
        for (k, x) in results[0].as_object().unwrap() {
            v[k] = x.clone();
        }
    } else {
        v["results"] = Value::Array(results);
    }
    if let Some(s) = samples {
        v["permutations"] = json!(s);
    }
    v
}

pub fn sample(a: &SampleArgs) -> Result<Output, CliError> {
    let ensemble = match a.avoid.as_str() {
        "132" => Ensemble::Avoid132,
        "none" => Ensemble::Uniform,
        other => return Err(CliError::Usage(format!("--avoid must be 132 or none, got {other:?}"))),
    };
    let patterns: Vec<UpDownPattern> = a
        .patterns
        .iter()
        .flat_map(|p| p.split(','))
        .map(|w| UpDownPattern::new(w.trim().parse()?))
        .collect::<Result<_, permlab::Error>>()?;
    const EMIT_MAX: usize = 1000;
    if a.emit_permutations && a.n > EMIT_MAX {
        return Err(CliError::Usage(format!("--emit-permutations needs n <= {EMIT_MAX}")));
    }
    let sim = simulate(a.n, a.reps as usize, ensemble, &patterns, a.common.seed);
    let samples = a.emit_permutations.then(|| {
        (0..a.reps)
            .map(|i| {
                let mut rng = permlab::sampler::stream_rng(a.common.seed, i);
                match ensemble {
                    Ensemble::Avoid132 => permlab::sampler::sample_avoider_132_with(a.n, &mut rng),
                    Ensemble::Uniform => permlab::sampler::sample_uniform_with(a.n, &mut rng),
                }
                .to_string()
            })
            .collect::<Vec<_>>()
    });
    Ok(Output::ok(match a.common.format {
        Format::Json => pretty(&simulation_json(&sim, samples)),
        Format::Csv => {
            #[derive(serde::Serialize)]
            struct Row<'a> {
                pattern: &'a str,
                n: usize,
                reps: usize,
                seed: u64,
                mean_l_over_n: f64,
                sample_std: f64,
                std_error: f64,
            }
            csv_rows(sim.estimates.iter().map(|e| Row {
                pattern: &e.pattern,
                n: sim.n,
                reps: sim.reps,
                seed: sim.seed,
                mean_l_over_n: e.mean_l_over_n,
                sample_std: e.sample_std,
                std_error: e.std_error,
            }))?
        }
        Format::Text => {
            let mut s = String::new();
            for e in &sim.estimates {
                writeln!(s, "{}\tmean L/n = {:.6}\tstd = {:.6}\tse = {:.6}", e.pattern, e.mean_l_over_n, e.sample_std, e.std_error).unwrap();
            }
            for p in samples.iter().flatten() {
                writeln!(s, "{p}").unwrap();
            }
            s
        }
    }))
}

pub fn biject(a: &BijectArgs) -> Result<Output, CliError> {
    if let Some(l) = a.pairs {
        let pairs = corollary_pairs(l)?;
        let rows: Vec<(String, String)> = pairs.iter().map(|(p, t)| (p.word().to_string(), t.values().iter().map(|v| v.to_string()).collect())).collect();
        return Ok(Output::ok(match a.common.format {
            Format::Json => pretty(&json!({"l": l, "pairs": rows.iter().map(|(p, t)| json!({"pattern": p, "avoid": t})).collect::<Vec<_>>()})),
            Format::Csv => std::iter::once("pattern,avoid\n".to_string()).chain(rows.iter().map(|(p, t)| format!("{p},{t}\n"))).collect(),
            Format::Text => rows.iter().map(|(p, t)| format!("{p}\t{t}\n")).collect(),
        }));
    }
    let (to, input) = (a.to.as_deref().unwrap(), a.input.as_deref().unwrap());
    let sigma = parse_perm(input)?;
    let map = Transport::for_target(&parse_perm(to)?)?;
    let image = map.apply(&sigma)?;
    Ok(Output::ok(match a.common.format {
        Format::Json => {
            let mut v = json!({"input": sigma.to_string(), "to": map.target().to_string(), "map": map, "output": image.to_string()});
            if !sigma.is_empty() {
                let lr = left_to_right_minima(&sigma)?;
                v["minima_positions"] = json!(lr.minima_positions.iter().map(|i| i + 1).collect::<Vec<_>>());
                v["minima_values"] = json!(lr.minima_values);
            }
            pretty(&v)
        }
        Format::Csv => format!("input,to,output\n{},{},{}\n", sigma, map.target(), image),
        Format::Text => format!("{image}\n"),
    }))
}

pub fn verify(a: &VerifyArgs) -> Result<Output, CliError> {
    let cfg = VerifyConfig { n_max: a.n_max, series_order: a.series_order };
    let results: Vec<CheckResult> = if a.suite == "all" { run_all(&cfg)? } else { run_suite(a.suite.parse::<Suite>()?, &cfg)? };
    let failed = results.iter().any(|c| !c.passed);
    let body = match a.common.format {
        Format::Json => pretty(&json!({
            "suite": a.suite,
            "n_max": a.n_max,
            "series_order": a.series_order,
            "passed": !failed,
            "checks": results,
        })),
        Format::Csv => {
            #[derive(serde::Serialize)]
            struct Row<'a> {
                suite: Suite,
                name: &'a str,
                passed: bool,
                detail: &'a str,
                first_witness: String,
            }
            csv_rows(results.iter().map(|c| Row {
                suite: c.suite,
                name: &c.name,
                passed: c.passed,
                detail: &c.detail,
                first_witness: c.witnesses.first().map(|w| w.to_string()).unwrap_or_default(),
            }))?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &results {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{tag}\t{:?}\t{}\t({})", c.suite, c.name, c.detail).unwrap();
                for w in &c.witnesses {
                    writeln!(s, "\twitness {w}").unwrap();
                }
            }
            s
        }
    };
    Ok(Output { body, failed })
}
