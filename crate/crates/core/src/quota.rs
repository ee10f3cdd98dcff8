//! Per-node influence thresholds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotaMode {
    Absolute,
    Fraction,
}

/// Threshold configuration. In fraction mode `value` and the overrides are
/// shares of each node's weighted in-strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub mode: QuotaMode,
    pub value: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, f64>,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig::fraction(0.5)
    }
}

/// A resolved quota. `unreachable` marks a fraction-mode node without
/// in-edges, which nothing can influence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quota {
    pub value: f64,
    pub unreachable: bool,
}

impl ThresholdConfig {
    pub fn fraction(value: f64) -> Self {
        ThresholdConfig {
            mode: QuotaMode::Fraction,
            value,
            overrides: BTreeMap::new(),
        }
    }

    pub fn absolute(value: f64) -> Self {
        ThresholdConfig {
            mode: QuotaMode::Absolute,
            value,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, label: &str, value: f64) -> Self {
        self.overrides.insert(label.to_string(), value);
        self
    }

    /// Parses `frac:0.5`, `abs:40`, or a JSON threshold document when the
    /// caller has already read `@file` contents.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, num) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("bad quota spec `{spec}`")))?;
        let value: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad quota value `{num}`")))?;
        let cfg = match kind.trim() {
            "frac" | "fraction" => ThresholdConfig::fraction(value),
            "abs" | "absolute" => ThresholdConfig::absolute(value),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown quota mode `{other}`"
                )))
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ThresholdConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |v: f64, what: &str| -> Result<()> {
            let ok = match self.mode {
                QuotaMode::Absolute => v.is_finite() && v > 0.0,
                QuotaMode::Fraction => v > 0.0 && v <= 1.0,
            };
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{what} {v} out of range for {:?} quota",
                    self.mode
                )))
            }
        };
        check(self.value, "quota")?;
        for (label, v) in &self.overrides {
            check(*v, &format!("override for {label}:"))?;
        }
        Ok(())
    }

    fn raw_value(&self, g: &WeightedDigraph, node: NodeId) -> f64 {
        self.overrides
            .get(g.label(node))
            .copied()
            .unwrap_or(self.value)
    }

    pub fn resolve(&self, g: &WeightedDigraph, node: NodeId) -> Quota {
        let v = self.raw_value(g, node);
        match self.mode {
            QuotaMode::Absolute => Quota {
                value: v,
                unreachable: false,
            },
            QuotaMode::Fraction => {
                let s = g.in_strength(node);
                Quota {
                    value: v * s,
                    unreachable: s <= 0.0,
                }
            }
        }
    }

    /// Quota value for every node.
    pub fn resolve_all(&self, g: &WeightedDigraph) -> Vec<f64> {
        g.nodes().map(|i| self.resolve(g, i).value).collect()
    }
}

/// Quota for one node; see [`ThresholdConfig::resolve`].
pub fn resolve_quota(g: &WeightedDigraph, cfg: &ThresholdConfig, node: NodeId) -> Result<Quota> {
    if node >= g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "node index {node} out of range"
        )));
    }
    Ok(cfg.resolve(g, node))
}

/// `total >= quota`, tolerant to rounding in fractional quotas.
pub fn meets_quota(total: f64, quota: f64) -> bool {
    total >= quota - 1e-9 * quota.abs().max(1.0)
}
