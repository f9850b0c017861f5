use std::fs;
use std::path::Path;

use groupie::asymptotics::{
    balanced_shift_limit, bipartite_unbalanced_limit, gnp_limit, predicted_limit, LimitPrediction, Regime,
};
use groupie::moments::{
    compare_pair_moments, exact_pair_moments, exact_single_vertex_moments, printed_pair_moments,
    single_vertex_moments, Discrepancy, MomentSummary, PairMoments,
};
use groupie::montecarlo::{convergence_sweep, run_trials_with, SimulationEstimate, SweepFamily, TrialOptions};
use groupie::oracle::verify_all;
use groupie::{generate::generate, groupie_report, load_edge_list, Error, ModelParams, RngSeed};
use serde_json::{json, Map, Value};

use crate::args::{
    AnalyzeArgs, Format, GenerateArgs, LimitCommand, Mode, Model, ModelArgs, MomentsCommand, SimulateArgs,
    SweepArgs, VerifyArgs,
};
use crate::output::{csv_table, envelope, fmt_f64, num, to_pretty};

/// Exit status 1.
pub const RUNTIME: i32 = 1;
/// Exit status 2.
pub const USAGE: i32 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Failure { code: RUNTIME, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => RUNTIME,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

pub type Outcome = Result<String, Failure>;

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::runtime(format!("{}: {e}", path.display()))
}

fn model_params(args: &ModelArgs) -> Result<ModelParams, Failure> {
    let params = match args.model {
        Model::Gnp => match (args.n, args.n1, args.n2) {
            (Some(n), None, None) => ModelParams::gnp(n, args.p),
            _ => return Err(Failure::usage("--model gnp takes --n and not --n1/--n2")),
        },
        Model::Bipartite => match (args.n, args.n1, args.n2) {
            (None, Some(n1), Some(n2)) => ModelParams::bipartite(n1, n2, args.p),
            _ => return Err(Failure::usage("--model bipartite takes --n1 and --n2 and not --n")),
        },
    };
    Ok(params?)
}

fn params_json(params: &ModelParams) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("model".into(), json!(params.model_name()));
    match *params {
        ModelParams::Gnp { n, .. } => {
            map.insert("n".into(), json!(n));
        }
        ModelParams::Bipartite { n1, n2, .. } => {
            map.insert("n1".into(), json!(n1));
            map.insert("n2".into(), json!(n2));
        }
    }
    map.insert("p".into(), num(params.p()));
    map
}

fn size_fields(params: &ModelParams) -> Vec<String> {
    match *params {
        ModelParams::Gnp { n, .. } => vec![n.to_string()],
        ModelParams::Bipartite { n1, n2, .. } => vec![n1.to_string(), n2.to_string()],
    }
}

fn size_header(model: Model) -> &'static [&'static str] {
    match model {
        Model::Gnp => &["n"],
        Model::Bipartite => &["n1", "n2"],
    }
}

fn regime_json(regime: &Regime) -> Value {
    match *regime {
        Regime::Gnp => json!({"name": "gnp"}),
        Regime::BipartiteUnbalanced { alpha } => json!({"name": "bipartite_unbalanced", "alpha": num(alpha)}),
        Regime::BipartiteBalancedShift { p, c } => json!({"name": "bipartite_balanced_shift", "p": num(p), "c": c}),
    }
}

fn prediction_json(prediction: &LimitPrediction) -> Value {
    json!({"value": num(prediction.value), "regime": regime_json(&prediction.regime)})
}

/// Prediction for `params`, absent at `p` in {0, 1} where no limit applies.
fn maybe_prediction(params: &ModelParams) -> Option<LimitPrediction> {
    let p = params.p();
    if p > 0.0 && p < 1.0 {
        predicted_limit(params).ok()
    } else {
        None
    }
}

pub fn generate_cmd(args: &GenerateArgs) -> Outcome {
    let params = model_params(&args.model)?;
    let graph = generate(params, RngSeed(args.model.seed))?;
    let mut header = format!("# {}", params.model_name());
    for (key, value) in params_json(&params).iter().skip(1) {
        header.push_str(&format!(" {key}={value}"));
    }
    header.push_str(&format!(" seed={}\n", args.model.seed));
    let text = header + &graph.to_edge_list();
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| io_failure(path, e))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn analyze_cmd(args: &AnalyzeArgs) -> Outcome {
    let text = fs::read_to_string(&args.input).map_err(|e| io_failure(&args.input, e))?;
    let graph = load_edge_list(&text).map_err(|e| Failure::runtime(format!("{}: {e}", args.input.display())))?;
    let report = groupie_report(&graph)?;
    let sums = graph.neighbor_degree_sums();
    match args.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = (0..graph.vertex_count())
                .map(|v| {
                    vec![
                        v.to_string(),
                        graph.degrees()[v].to_string(),
                        sums[v].to_string(),
                        report.flags[v].to_string(),
                    ]
                })
                .collect();
            csv_table(&["vertex", "degree", "neighbor_degree_sum", "groupie"], &rows)
                .map_err(|e| Failure::runtime(e.to_string()))
        }
        Format::Json => {
            let params = json!({"input": args.input.display().to_string(), "format": "json"});
            let results = json!({
                "vertices": graph.vertex_count(),
                "edges": report.edge_count,
                "flags": report.flags,
                "groupies": report.groupies().collect::<Vec<_>>(),
                "count": report.count,
                "proportion": num(report.proportion_f64()),
                "proportion_exact": report.proportion().to_string(),
                "degrees": graph.degrees(),
                "neighbor_degree_sums": sums,
            });
            Ok(to_pretty(&envelope("analyze", params, None, results)))
        }
    }
}

fn estimate_json(est: &SimulationEstimate) -> Value {
    let mut map = Map::new();
    map.insert("trials".into(), json!(est.trials));
    map.insert("mean".into(), num(est.mean));
    map.insert("sample_std".into(), num(est.sample_std));
    map.insert("stderr".into(), num(est.stderr));
    map.insert("ci95".into(), json!([num(est.ci95.0), num(est.ci95.1)]));
    if let Some(per_trial) = &est.per_trial {
        map.insert("per_trial".into(), Value::Array(per_trial.iter().map(|&x| num(x)).collect()));
    }
    Value::Object(map)
}

pub fn simulate_cmd(args: &SimulateArgs) -> Outcome {
    let params = model_params(&args.model)?;
    if args.keep_trials && args.format == Format::Csv {
        return Err(Failure::usage("--keep-trials needs --format json"));
    }
    let seed = args.model.seed;
    let options = TrialOptions { parallel: true, keep_trials: args.keep_trials };
    let est = run_trials_with(&params, args.trials, RngSeed(seed), options)?;
    let prediction = maybe_prediction(&params);
    let deviation = prediction.map(|p| est.mean - p.value);
    match args.format {
        Format::Csv => {
            let mut header = vec!["model"];
            header.extend_from_slice(size_header(args.model.model));
            header.extend_from_slice(&[
                "p", "trials", "seed", "mean", "sample_std", "stderr", "ci95_low", "ci95_high", "predicted", "deviation",
            ]);
            let mut row = vec![params.model_name().to_string()];
            row.extend(size_fields(&params));
            row.extend([
                fmt_f64(params.p()),
                est.trials.to_string(),
                seed.to_string(),
                fmt_f64(est.mean),
                fmt_f64(est.sample_std),
                fmt_f64(est.stderr),
                fmt_f64(est.ci95.0),
                fmt_f64(est.ci95.1),
                prediction.map_or(String::new(), |p| fmt_f64(p.value)),
                deviation.map_or(String::new(), fmt_f64),
            ]);
            csv_table(&header, &[row]).map_err(|e| Failure::runtime(e.to_string()))
        }
        Format::Json => {
            let mut p = params_json(&params);
            p.insert("trials".into(), json!(args.trials));
            p.insert("keep_trials".into(), json!(args.keep_trials));
            let results = json!({
                "estimate": estimate_json(&est),
                "prediction": prediction.as_ref().map_or(Value::Null, prediction_json),
                "deviation": deviation.map_or(Value::Null, num),
            });
            Ok(to_pretty(&envelope("simulate", Value::Object(p), Some(seed), results)))
        }
    }
}

fn summary_json(m: &MomentSummary) -> Value {
    let mut map = Map::new();
    map.insert("mean".into(), num(m.mean));
    map.insert("variance".into(), num(m.variance));
    if let Some(c) = m.covariance {
        map.insert("covariance".into(), num(c));
    }
    Value::Object(map)
}

fn pair_json(m: &PairMoments) -> Value {
    json!({"b1": summary_json(&m.b1), "b2": summary_json(&m.b2), "covariance": num(m.covariance)})
}

fn discrepancy_json(d: &Discrepancy) -> Value {
    json!({"absolute": num(d.absolute), "relative": num(d.relative)})
}

pub fn moments_cmd(command: &MomentsCommand) -> Outcome {
    match *command {
        MomentsCommand::Single { n, i, p, mode } => {
            let params = json!({"statistic": "single", "n": n, "i": i, "p": num(p), "mode": mode_name(mode)});
            let printed = single_vertex_moments(n, i, p)?;
            let exact = exact_single_vertex_moments(n, i, p)?;
            let mut results = Map::new();
            if mode != Mode::Exact {
                results.insert("printed".into(), summary_json(&printed));
            }
            if mode != Mode::Printed {
                results.insert("exact".into(), summary_json(&exact));
            }
            if mode == Mode::Both {
                results.insert(
                    "discrepancy".into(),
                    json!({
                        "mean": discrepancy_json(&Discrepancy::new(exact.mean, printed.mean)),
                        "variance": discrepancy_json(&Discrepancy::new(exact.variance, printed.variance)),
                    }),
                );
            }
            Ok(to_pretty(&envelope("moments", params, None, Value::Object(results))))
        }
        MomentsCommand::Pair { n, i1, i2, i3, p, mode } => {
            let params = json!({
                "statistic": "pair", "n": n, "i1": i1, "i2": i2, "i3": i3, "p": num(p), "mode": mode_name(mode),
            });
            let results = match mode {
                Mode::Printed => json!({"printed": pair_json(&printed_pair_moments(n, i1, i2, i3, p)?)}),
                Mode::Exact => json!({"exact": pair_json(&exact_pair_moments(n, i1, i2, i3, p)?)}),
                Mode::Both => {
                    let c = compare_pair_moments(n, i1, i2, i3, p)?;
                    json!({
                        "printed": pair_json(&c.printed),
                        "exact": pair_json(&c.exact),
                        "discrepancy": {
                            "mean_b1": discrepancy_json(&c.mean_b1),
                            "mean_b2": discrepancy_json(&c.mean_b2),
                            "variance_b1": discrepancy_json(&c.variance_b1),
                            "variance_b2": discrepancy_json(&c.variance_b2),
                            "covariance": discrepancy_json(&c.covariance),
                        },
                    })
                }
            };
            Ok(to_pretty(&envelope("moments", params, None, results)))
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Printed => "printed",
        Mode::Exact => "exact",
        Mode::Both => "both",
    }
}

pub fn limit_cmd(command: &LimitCommand) -> Outcome {
    let (params, prediction) = match *command {
        LimitCommand::Gnp => (json!({"regime": "gnp"}), gnp_limit()),
        LimitCommand::Bipartite { alpha } => {
            (json!({"regime": "bipartite", "alpha": num(alpha)}), bipartite_unbalanced_limit(alpha)?)
        }
        LimitCommand::Balanced { p, c } => (json!({"regime": "balanced", "p": num(p), "c": c}), balanced_shift_limit(p, c)?),
    };
    Ok(to_pretty(&envelope("limit", params, None, prediction_json(&prediction))))
}

pub fn sweep_cmd(args: &SweepArgs) -> Outcome {
    let family = match (args.model, args.alpha, args.c) {
        (Model::Gnp, None, None) => SweepFamily::Gnp,
        (Model::Gnp, _, _) => return Err(Failure::usage("--alpha and --c apply to bipartite sweeps only")),
        (Model::Bipartite, Some(alpha), None) => SweepFamily::BipartiteRatio { alpha },
        (Model::Bipartite, None, Some(c)) => SweepFamily::BipartiteShift { c },
        (Model::Bipartite, _, _) => return Err(Failure::usage("bipartite sweeps need exactly one of --alpha or --c")),
    };
    let rows = convergence_sweep(family, &args.sizes, args.p, args.trials, RngSeed(args.seed))?;

    let mut header = vec!["model"];
    header.extend_from_slice(size_header(args.model));
    header.extend_from_slice(&["p", "trials", "mean", "stderr", "predicted", "deviation"]);
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.params.model_name().to_string()];
            row.extend(size_fields(&r.params));
            row.extend([
                fmt_f64(r.params.p()),
                r.trials.to_string(),
                fmt_f64(r.mean),
                fmt_f64(r.stderr),
                fmt_f64(r.predicted.value),
                fmt_f64(r.deviation),
            ]);
            row
        })
        .collect();
    let csv = csv_table(&header, &table).map_err(|e| Failure::runtime(e.to_string()))?;
    fs::write(&args.out, csv).map_err(|e| io_failure(&args.out, e))?;

    let mut params = Map::new();
    params.insert("model".into(), json!(match args.model {
        Model::Gnp => "gnp",
        Model::Bipartite => "bipartite",
    }));
    params.insert("sizes".into(), json!(args.sizes));
    params.insert("p".into(), num(args.p));
    params.insert("trials".into(), json!(args.trials));
    if let Some(alpha) = args.alpha {
        params.insert("alpha".into(), num(alpha));
    }
    if let Some(c) = args.c {
        params.insert("c".into(), json!(c));
    }
    params.insert("out".into(), json!(args.out.display().to_string()));
    let results: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut row = params_json(&r.params);
            row.insert("trials".into(), json!(r.trials));
            row.insert("mean".into(), num(r.mean));
            row.insert("sample_std".into(), num(r.sample_std));
            row.insert("stderr".into(), num(r.stderr));
            row.insert("predicted".into(), prediction_json(&r.predicted));
            row.insert("deviation".into(), num(r.deviation));
            Value::Object(row)
        })
        .collect();
    Ok(to_pretty(&envelope("sweep", Value::Object(params), Some(args.seed), json!({"rows": results}))))
}

/// Returns the report and whether every suite passed.
pub fn verify_cmd(args: &VerifyArgs) -> Result<(String, bool), Failure> {
    let suites = verify_all(args.max_n, RngSeed(args.seed))?;
    let passed = suites.iter().all(|s| s.passed());
    let results: Vec<Value> = suites
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "passed": s.passed(),
                "checks": s.checks,
                "failures": s.failures,
                "first_failure": s.first_failure,
            })
        })
        .collect();
    let params = json!({"max_n": args.max_n});
    let out = envelope("verify", params, Some(args.seed), json!({"passed": passed, "suites": results}));
    Ok((to_pretty(&out), passed))
}
