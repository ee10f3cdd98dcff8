//! Weighted directed graph with dense node indices.
//!
//! Node labels are arbitrary strings on the outside and `0..n` indices on
//! the inside. Edges carry strictly positive finite weights; an absent edge
//! is the only representation of a zero weight.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Dense node index.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: f64,
}

/// Immutable weighted digraph.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    // (source, target) -> position in `edges`
    lookup: HashMap<(NodeId, NodeId), usize>,
    out_adj: Vec<Vec<(NodeId, f64)>>,
    in_adj: Vec<Vec<(NodeId, f64)>>,
    attrs: Vec<BTreeMap<String, f64>>,
}

impl WeightedDigraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Convenience constructor from labelled triples. Nodes are numbered in
    /// first-appearance order.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S, f64)]) -> Result<Self> {
        let mut b = GraphBuilder::default();
        for (s, t, w) in edges {
            b.add_edge(s.as_ref(), t.as_ref(), *w)?;
        }
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.labels.len()
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_index(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Weight of `source -> target`, or 0 when the edge is absent.
    pub fn weight(&self, source: NodeId, target: NodeId) -> f64 {
        self.lookup
            .get(&(source, target))
            .map_or(0.0, |&k| self.edges[k].weight)
    }

    pub fn has_edge(&self, source: NodeId, target: NodeId) -> bool {
        self.lookup.contains_key(&(source, target))
    }

    /// Out-edges of `node`, sorted by target index.
    pub fn out_edges(&self, node: NodeId) -> &[(NodeId, f64)] {
        &self.out_adj[node]
    }

    /// In-edges of `node`, sorted by source index.
    pub fn in_edges(&self, node: NodeId) -> &[(NodeId, f64)] {
        &self.in_adj[node]
    }

    pub fn in_strength(&self, node: NodeId) -> f64 {
        self.in_adj[node].iter().map(|&(_, w)| w).sum()
    }

    pub fn out_strength(&self, node: NodeId) -> f64 {
        self.out_adj[node].iter().map(|&(_, w)| w).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn attributes(&self, node: NodeId) -> &BTreeMap<String, f64> {
        &self.attrs[node]
    }

    pub fn attribute(&self, node: NodeId, name: &str) -> Option<f64> {
        self.attrs[node].get(name).copied()
    }

    pub fn neighbor_sets(&self) -> NeighborSets {
        NeighborSets::new(self)
    }

    /// Dense row-major weight matrix, `w[i][j]` = weight of `i -> j`.
    pub fn weight_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.node_count();
        let mut w = vec![vec![0.0; n]; n];
        for e in &self.edges {
            w[e.source][e.target] = e.weight;
        }
        w
    }

    /// Same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let mut b = GraphBuilder::default();
        for (i, l) in self.labels.iter().enumerate() {
            b.add_node(l);
            for (k, v) in &self.attrs[i] {
                b.set_attribute(l, k, *v);
            }
        }
        for e in &self.edges {
            b.add_edge(
                &self.labels[e.source],
                &self.labels[e.target],
                e.weight * factor,
            )?;
        }
        b.build()
    }

    /// Structural equality up to node numbering: same labels, same labelled
    /// edges and weights, same attributes.
    pub fn same_structure(&self, other: &WeightedDigraph) -> bool {
        if self.node_count() != other.node_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        for (i, l) in self.labels.iter().enumerate() {
            let Some(j) = other.node_index(l) else {
                return false;
            };
            if self.attrs[i] != other.attrs[j] {
                return false;
            }
        }
        self.edges.iter().all(|e| {
            let s = other.node_index(&self.labels[e.source]).unwrap();
            let t = other.node_index(&self.labels[e.target]).unwrap();
            other.weight(s, t) == e.weight
        })
    }
}

/// Incremental builder; validation happens in [`GraphBuilder::add_edge`] and
/// [`GraphBuilder::build`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    lookup: HashMap<(NodeId, NodeId), usize>,
    attrs: Vec<BTreeMap<String, f64>>,
}

impl GraphBuilder {
    pub fn add_node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.attrs.push(BTreeMap::new());
        id
    }

    pub fn set_attribute(&mut self, label: &str, name: &str, value: f64) {
        let id = self.add_node(label);
        self.attrs[id].insert(name.to_string(), value);
    }

    /// Adds `source -> target`. A zero weight adds both endpoints as nodes
    /// but no edge.
    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<()> {
        if !weight.is_finite() {
            return Err(Error::InvalidGraph(format!(
                "non-finite weight on {source} -> {target}"
            )));
        }
        if weight < 0.0 {
            return Err(Error::InvalidGraph(format!(
                "negative weight {weight} on {source} -> {target}"
            )));
        }
        if source == target {
            return Err(Error::InvalidGraph(format!("self-loop on {source}")));
        }
        let s = self.add_node(source);
        let t = self.add_node(target);
        if self.lookup.contains_key(&(s, t)) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {source} -> {target}"
            )));
        }
        if weight > 0.0 {
            self.lookup.insert((s, t), self.edges.len());
            self.edges.push(Edge {
                source: s,
                target: t,
                weight,
            });
        }
        Ok(())
    }

    pub fn build(self) -> Result<WeightedDigraph> {
        if self.labels.is_empty() {
            return Err(Error::InvalidGraph("graph has no nodes".into()));
        }
        let n = self.labels.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for e in &self.edges {
            out_adj[e.source].push((e.target, e.weight));
            in_adj[e.target].push((e.source, e.weight));
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_by_key(|&(v, _)| v);
        }
        Ok(WeightedDigraph {
            labels: self.labels,
            index: self.index,
            edges: self.edges,
            lookup: self.lookup,
            out_adj,
            in_adj,
            attrs: self.attrs,
        })
    }
}

/// Out-, in- and all-neighbour sets per node, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSets {
    pub out: Vec<Vec<NodeId>>,
    pub inc: Vec<Vec<NodeId>>,
    pub all: Vec<Vec<NodeId>>,
}

impl NeighborSets {
    pub fn new(g: &WeightedDigraph) -> Self {
        let out: Vec<Vec<NodeId>> = g
            .nodes()
            .map(|i| g.out_edges(i).iter().map(|&(j, _)| j).collect())
            .collect();
        let inc: Vec<Vec<NodeId>> = g
            .nodes()
            .map(|i| g.in_edges(i).iter().map(|&(j, _)| j).collect())
            .collect();
        let all = out
            .iter()
            .zip(&inc)
            .map(|(o, i)| {
                let mut v: Vec<NodeId> = o.iter().chain(i).copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        NeighborSets { out, inc, all }
    }
}
