//! Reading `node,score` files written by the other subcommands.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

use crate::DataError;

pub fn read_scores(path: &Path) -> Result<BTreeMap<String, f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| DataError(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| DataError(format!("{}: {e}", path.display())))?;
        if k == 0 && rec.get(0) == Some("node") {
            continue;
        }
        if rec.len() != 2 {
            return Err(DataError(format!(
                "{}: line {}: expected node,score",
                path.display(),
                k + 1
            ))
            .into());
        }
        let score: f64 = rec[1].parse().map_err(|_| {
            DataError(format!(
                "{}: line {}: bad score `{}`",
                path.display(),
                k + 1,
                &rec[1]
            ))
        })?;
        if out.insert(rec[0].to_string(), score).is_some() {
            return Err(DataError(format!(
                "{}: node `{}` listed twice",
                path.display(),
                &rec[0]
            ))
            .into());
        }
    }
    Ok(out)
}

/// Scores of two files aligned on their common node set, which must be the
/// same in both.
pub fn aligned(a: &Path, b: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, y) = (read_scores(a)?, read_scores(b)?);
    if x.len() != y.len() || !x.keys().all(|k| y.contains_key(k)) {
        bail!(DataError(format!(
            "{} and {} score different node sets",
            a.display(),
            b.display()
        )));
    }
    let ys = x.keys().map(|k| y[k]).collect();
    Ok((x.into_values().collect(), ys))
}

pub fn score_files(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")))
        .collect();
    files.sort();
    Ok(files)
}
