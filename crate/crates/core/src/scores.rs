use std::collections::BTreeMap;

use serde::Serialize;

/// One score per node plus the name and parameters of the measure that
/// produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreVector {
    pub measure: String,
    pub scores: Vec<f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl ScoreVector {
    pub fn new(measure: impl Into<String>, scores: Vec<f64>) -> Self {
        ScoreVector {
            measure: measure.into(),
            scores,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.scores.iter().sum()
    }

    /// Index of the largest score (first one on ties).
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, &s) in self.scores.iter().enumerate() {
            if best.is_none_or(|b| s > self.scores[b]) {
                best = Some(i);
            }
        }
        best
    }
}

impl std::ops::Index<usize> for ScoreVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.scores[i]
    }
}
