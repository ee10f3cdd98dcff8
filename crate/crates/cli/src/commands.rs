//! Subcommand bodies. Each builds its whole report in memory before writing
//! anything, so a failure never leaves partial output behind.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use netinfl_core::centrality::{
    betweenness, bonacich, degree_family, eigenvector_centrality, flow_betweenness,
    harmonic_closeness, internal_weight, katz, myerson_values, pagerank_variant, spectral_radius,
    BetweennessKind, DistanceMode, SolverOptions,
};
use netinfl_core::coalitions::{coalition_report, EnumerationLimits};
use netinfl_core::io::{load_graph, write_graph, GraphFormat};
use netinfl_core::lric::paths::{total_influence_matrix, GradeScheme, PathOptions};
use netinfl_core::lric::sim::{sim_influence_matrix, SimConfig};
use netinfl_core::lric::{influence_vector, AggregationWeights, Bound, Variant};
use netinfl_core::rank::{gk_gamma, kendall_tau, ranking_of};
use netinfl_core::sric::{sric_index, SricOptions, TargetWeights};
use netinfl_core::{ScoreVector, ThresholdConfig, WeightedDigraph};
use serde_json::{json, Value};

use crate::output::{emit, matrix_csv, matrix_json, sig6, table_csv, vector_csv, vector_json};
use crate::scores_file::{aligned, score_files};
use crate::{Command, Input, LimitArgs, LricCommand, Output, UsageError};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn load(input: &Input) -> Result<WeightedDigraph> {
    let format = match &input.format {
        Some(f) => f.parse::<GraphFormat>()?,
        None => GraphFormat::from_path(&input.input),
    };
    if format == GraphFormat::Dot {
        return Err(usage("DOT is an export-only format"));
    }
    Ok(load_graph(&input.input, format)?)
}

fn quota(spec: &str) -> Result<ThresholdConfig> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read quota file {path}"))?;
            Ok(ThresholdConfig::from_json(&text).with_context(|| format!("quota file {path}"))?)
        }
        None => Ok(ThresholdConfig::parse(spec)?),
    }
}

fn limits(l: &LimitArgs) -> EnumerationLimits {
    EnumerationLimits {
        max_in_degree: l.max_in_degree,
        max_group_size: l.max_group_size,
    }
}

fn params(spec: Option<&str>, allowed: &[&str]) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for part in spec
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
    {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("parameter `{part}` is not name=value")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(usage(format!(
                "unknown parameter `{k}` (expected one of: {})",
                if allowed.is_empty() {
                    "none".to_string()
                } else {
                    allowed.join(", ")
                }
            )));
        }
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("parameter `{k}` needs a number, got `{v}`")))?;
        out.insert(k.to_string(), v);
    }
    Ok(out)
}

fn aggregation(spec: &str) -> Result<AggregationWeights> {
    match spec {
        "out-share" => Ok(AggregationWeights::OutShare),
        "uniform" => Ok(AggregationWeights::Uniform),
        _ => match spec.strip_prefix("attr:") {
            Some(name) if !name.is_empty() => Ok(AggregationWeights::Attribute(name.to_string())),
            _ => Err(usage(format!(
                "unknown weights `{spec}` (out-share, uniform or attr:<name>)"
            ))),
        },
    }
}

fn write_vector(g: &WeightedDigraph, v: &ScoreVector, out: &Output, extra: Value) -> Result<()> {
    let text = if out.json {
        vector_json(g, v, extra)?
    } else {
        vector_csv(g, v)?
    };
    emit(out.output.as_deref(), &text)
}

fn centrality(
    g: &WeightedDigraph,
    measure: &str,
    spec: Option<&str>,
    distance: &str,
) -> Result<ScoreVector> {
    let mode: DistanceMode = distance.parse()?;
    let opts = SolverOptions::default();
    let degrees = degree_family(g);
    if let Some(v) = degrees.all().into_iter().find(|v| v.measure == measure) {
        params(spec, &[])?;
        return Ok(v.clone());
    }
    let v = match measure {
        "closeness" => {
            params(spec, &[])?;
            harmonic_closeness(g, mode)
        }
        "betweenness" | "relative-betweenness" => {
            params(spec, &[])?;
            let kind = if measure == "betweenness" {
                BetweennessKind::Absolute
            } else {
                BetweennessKind::Relative
            };
            let mut v = betweenness(g, kind, mode);
            v.measure = measure.to_string();
            v
        }
        "flow-betweenness" => {
            params(spec, &[])?;
            flow_betweenness(g)
        }
        "eigenvector" => {
            params(spec, &[])?;
            let e = eigenvector_centrality(g, &opts)?;
            e.vector
                .with_param("eigenvalue", e.eigenvalue)
                .with_param("residual", e.residual)
        }
        "katz" => {
            let p = params(spec, &["alpha", "beta"])?;
            let alpha = match p.get("alpha") {
                Some(&a) => a,
                None => 0.5 / spectral_radius(g, &opts)?.max(1e-12),
            };
            katz(g, alpha, p.get("beta").copied().unwrap_or(1.0), &opts)?
        }
        "bonacich" => {
            let p = params(spec, &["alpha", "beta"])?;
            let beta = match p.get("beta") {
                Some(&b) => b,
                None => 0.5 / spectral_radius(g, &opts)?.max(1e-12),
            };
            bonacich(g, p.get("alpha").copied().unwrap_or(1.0), beta, &opts)?
        }
        "pagerank" => {
            let p = params(spec, &["alpha", "beta"])?;
            pagerank_variant(
                g,
                p.get("alpha").copied().unwrap_or(0.85),
                p.get("beta").copied().unwrap_or(0.15),
                &opts,
            )?
        }
        "myerson" => {
            params(spec, &[])?;
            ScoreVector::new("myerson", myerson_values(g, internal_weight)?)
        }
        _ => return Err(usage(format!("unknown measure `{measure}`"))),
    };
    Ok(v)
}

fn coefficient(coef: &str, a: &[f64], b: &[f64]) -> Result<f64> {
    let (ra, rb) = (ranking_of(a), ranking_of(b));
    Ok(match coef {
        "kendall" | "tau" => kendall_tau(&ra, &rb)?,
        "gamma" => gk_gamma(&ra, &rb)?,
        _ => {
            return Err(usage(format!(
                "unknown coefficient `{coef}` (kendall or gamma)"
            )))
        }
    })
}

fn groups_json(
    g: &WeightedDigraph,
    cfg: &ThresholdConfig,
    target: Option<&str>,
    lim: &EnumerationLimits,
) -> Result<String> {
    let targets: Vec<usize> = match target {
        Some(label) => vec![g
            .node_index(label)
            .ok_or_else(|| usage(format!("no node labelled `{label}`")))?],
        None => crate::output::label_order(g),
    };
    let names = |ids: &[usize]| -> Vec<&str> { ids.iter().map(|&i| g.label(i)).collect() };
    let mut reports = Vec::new();
    for t in targets {
        let r = coalition_report(g, t, cfg, lim)?;
        let critical: Vec<Value> = r
            .critical_groups
            .iter()
            .zip(&r.pivotal_sets)
            .map(|(c, p)| {
                json!({
                    "members": names(&c.members),
                    "total_weight": c.total_weight,
                    "pivotal": names(p),
                })
            })
            .collect();
        let minimal: Vec<Vec<&str>> = r
            .minimal_direct_critical
            .iter()
            .map(|c| names(&c.members))
            .collect();
        reports.push(json!({
            "target": g.label(t),
            "quota": r.quota,
            "critical_groups": critical,
            "minimal_direct_critical_groups": minimal,
        }));
    }
    Ok(serde_json::to_string_pretty(&reports)? + "\n")
}

pub fn execute(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Centrality {
            input,
            measure,
            params,
            distance,
            output,
        } => {
            let g = load(input)?;
            let v = centrality(&g, measure, params.as_deref(), distance)?;
            write_vector(&g, &v, output, json!({}))
        }
        Command::Sric {
            input,
            quota: q,
            target_weights,
            limits: l,
            output,
        } => {
            let g = load(input)?;
            let opts = SricOptions {
                limits: limits(l),
                target_weights: match target_weights {
                    Some(name) => TargetWeights::Attribute(name.clone()),
                    None => TargetWeights::Uniform,
                },
            };
            let v = sric_index(&g, &quota(&q.quota)?, &opts)?;
            write_vector(&g, &v, output, json!({ "quota": q.quota }))
        }
        Command::Lric {
            command:
                LricCommand::Path {
                    input,
                    quota: q,
                    variant,
                    max_len,
                    grades,
                    path_cap,
                    weights,
                    emit_matrix,
                    limits: l,
                    output,
                },
        } => {
            let g = load(input)?;
            let variant: Variant = variant.parse()?;
            let boundaries = grades
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("bad grade boundaries `{grades}`")))?;
            let opts = PathOptions {
                max_len: max_len.parse()?,
                grades: GradeScheme::new(boundaries)?,
                path_cap: *path_cap,
                limits: limits(l),
            };
            let weights = aggregation(weights)?.resolve(&g)?;
            let m = total_influence_matrix(&g, &quota(&q.quota)?, variant, &opts)?;
            let extra = json!({ "quota": q.quota, "max_len": opts.max_len });
            if *emit_matrix {
                let text = if output.json {
                    matrix_json(&g, &m, extra)?
                } else {
                    matrix_csv(&g, &m)?
                };
                return emit(output.output.as_deref(), &text);
            }
            let v = influence_vector(&m, &weights)?;
            write_vector(&g, &v, output, extra)
        }
        Command::Lric {
            command:
                LricCommand::Sim {
                    input,
                    quota: q,
                    max_steps,
                    exhaustive: _,
                    samples,
                    rng_seed,
                    max_seed_size,
                    exhaustive_cap,
                    weights,
                    emit_matrix,
                    limits: l,
                    output,
                },
        } => {
            let g = load(input)?;
            let cfg = SimConfig {
                max_steps: max_steps.parse::<Bound>()?,
                max_seed_size: *max_seed_size,
                samples: *samples,
                rng_seed: *rng_seed,
                exhaustive_cap: *exhaustive_cap,
                limits: limits(l),
            };
            let weights = aggregation(weights)?.resolve(&g)?;
            let r = sim_influence_matrix(&g, &quota(&q.quota)?, &cfg)?;
            let mut extra = json!({
                "quota": q.quota,
                "max_steps": cfg.max_steps,
                "mode": if samples.is_some() { "sampled" } else { "exhaustive" },
                "seeds_evaluated": r.seeds_evaluated,
            });
            if let Some(k) = samples {
                extra["samples"] = json!(k);
                extra["rng_seed"] = json!(rng_seed);
            }
            if *emit_matrix {
                if let Some(se) = &r.standard_errors {
                    extra["standard_errors"] =
                        json!(se.chunks(g.node_count().max(1)).collect::<Vec<_>>());
                }
                let text = if output.json {
                    matrix_json(&g, &r.matrix, extra)?
                } else {
                    matrix_csv(&g, &r.matrix)?
                };
                return emit(output.output.as_deref(), &text);
            }
            let v = netinfl_core::lric::sim::sim_influence_vector(&r.matrix, &weights)?;
            if let Some(se) = &r.standard_errors {
                // per-entry error of the weighted row sum
                let n = g.node_count();
                let vec_se: BTreeMap<&str, f64> = (0..n)
                    .map(|i| {
                        let s: f64 = (0..n).map(|j| (weights[j] * se[i * n + j]).powi(2)).sum();
                        (g.label(i), s.sqrt())
                    })
                    .collect();
                extra["standard_errors"] = json!(vec_se);
            }
            write_vector(&g, &v, output, extra)
        }
        Command::Groups {
            input,
            quota: q,
            target,
            limits: l,
            output,
        } => {
            let g = load(input)?;
            let text = groups_json(&g, &quota(&q.quota)?, target.as_deref(), &limits(l))?;
            emit(output.as_deref(), &text)
        }
        Command::Compare { coef, a, b, output } => {
            let (x, y) = aligned(a, b)?;
            let value = coefficient(coef, &x, &y)?;
            let text = if output.json {
                serde_json::to_string_pretty(&json!({
                    "coefficient": coef,
                    "a": a,
                    "b": b,
                    "nodes": x.len(),
                    "value": value,
                }))? + "\n"
            } else {
                format!("coefficient,value\n{coef},{}\n", sig6(value))
            };
            emit(output.output.as_deref(), &text)
        }
        Command::CompareAll { dir, coef, output } => {
            let files = score_files(dir)?;
            if files.len() < 2 {
                bail!(crate::DataError(format!(
                    "{} holds fewer than two .csv score files",
                    dir.display()
                )));
            }
            let names: Vec<String> = files
                .iter()
                .map(|p| {
                    p.file_stem()
                        .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
                })
                .collect();
            let mut cells = vec![vec![None; files.len()]; files.len()];
            for i in 0..files.len() {
                for j in 0..files.len() {
                    let (x, y) = aligned(&files[i], &files[j])?;
                    cells[i][j] = match coefficient(coef, &x, &y) {
                        Ok(v) => Some(v),
                        Err(e) if e.downcast_ref::<UsageError>().is_some() => return Err(e),
                        Err(_) => None,
                    };
                }
            }
            emit(output.as_deref(), &table_csv(&names, &cells)?)
        }
        Command::Export { input, to, output } => {
            let g = load(input)?;
            let format: GraphFormat = to.parse()?;
            let mut buf = Vec::new();
            write_graph(&g, format, &mut buf)?;
            emit(output.as_deref().map(Path::new), &String::from_utf8(buf)?)
        }
    }
}
