//! Report formatting and atomic file output.

use std::cmp::Ordering;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use netinfl_core::lric::InfluenceMatrix;
use netinfl_core::{ScoreVector, WeightedDigraph};
use serde::Serialize;
use serde_json::{json, Value};

/// Numeric labels compare as numbers, everything else as text.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => x.total_cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Six significant digits in the style of C's `%g`.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        format!("{}e{exp}", trim_zeros(mant))
    } else {
        let digits = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.digits$}")).to_string()
    }
}

fn csv_text(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Node indices by descending score, ties by label.
pub fn score_order(g: &WeightedDigraph, scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then_with(|| label_cmp(g.label(a), g.label(b)))
    });
    idx
}

pub fn label_order(g: &WeightedDigraph) -> Vec<usize> {
    let mut idx: Vec<usize> = g.nodes().collect();
    idx.sort_by(|&a, &b| label_cmp(g.label(a), g.label(b)));
    idx
}

pub fn vector_csv(g: &WeightedDigraph, v: &ScoreVector) -> Result<String> {
    let mut rows = vec![vec!["node".to_string(), "score".to_string()]];
    for i in score_order(g, &v.scores) {
        rows.push(vec![g.label(i).to_string(), sig6(v.scores[i])]);
    }
    csv_text(rows)
}

#[derive(Serialize)]
struct NodeScore<'a> {
    node: &'a str,
    score: f64,
}

/// Full-precision JSON report; `extra` fields are merged at the top level.
pub fn vector_json(g: &WeightedDigraph, v: &ScoreVector, extra: Value) -> Result<String> {
    let scores: Vec<NodeScore> = score_order(g, &v.scores)
        .into_iter()
        .map(|i| NodeScore {
            node: g.label(i),
            score: v.scores[i],
        })
        .collect();
    let mut doc = json!({
        "measure": v.measure,
        "params": v.params,
        "scores": scores,
    });
    merge(&mut doc, extra);
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Square table with a header row and column of labels, 3 decimals.
pub fn matrix_csv(g: &WeightedDigraph, m: &InfluenceMatrix) -> Result<String> {
    let order = label_order(g);
    let mut header = vec!["node".to_string()];
    header.extend(order.iter().map(|&i| g.label(i).to_string()));
    let mut rows = vec![header];
    for &i in &order {
        let mut r = vec![g.label(i).to_string()];
        r.extend(order.iter().map(|&j| format!("{:.3}", m.get(i, j))));
        rows.push(r);
    }
    csv_text(rows)
}

pub fn matrix_json(g: &WeightedDigraph, m: &InfluenceMatrix, extra: Value) -> Result<String> {
    let order = label_order(g);
    let labels: Vec<&str> = order.iter().map(|&i| g.label(i)).collect();
    let values: Vec<Vec<f64>> = order
        .iter()
        .map(|&i| order.iter().map(|&j| m.get(i, j)).collect())
        .collect();
    let mut doc = json!({
        "kind": m.kind,
        "bound": m.bound,
        "variant": m.variant,
        "labels": labels,
        "matrix": values,
    });
    merge(&mut doc, extra);
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

pub fn table_csv(names: &[String], cells: &[Vec<Option<f64>>]) -> Result<String> {
    let mut header = vec!["measure".to_string()];
    header.extend(names.iter().cloned());
    let mut rows = vec![header];
    for (name, row) in names.iter().zip(cells) {
        let mut r = vec![name.clone()];
        r.extend(row.iter().map(|c| c.map_or_else(String::new, sig6)));
        rows.push(r);
    }
    csv_text(rows)
}

fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(d), Value::Object(e)) = (doc, extra) {
        d.extend(e);
    }
}

/// Writes `text` to `path` via a sibling temporary file and a rename, or to
/// stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        return Ok(out.flush()?);
    };
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
