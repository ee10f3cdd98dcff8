//! Graph file formats: CSV edge lists, JSON documents and DOT export.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Csv,
    Json,
    Dot,
}

impl GraphFormat {
    /// Guess from a file extension; anything but `.json`/`.dot`/`.gv` is CSV.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("json") => GraphFormat::Json,
            Some("dot") | Some("gv") => GraphFormat::Dot,
            _ => GraphFormat::Csv,
        }
    }
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" | "csv-edge-list" => Ok(GraphFormat::Csv),
            "json" => Ok(GraphFormat::Json),
            "dot" => Ok(GraphFormat::Dot),
            _ => Err(Error::InvalidArgument(format!(
                "unknown graph format `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonNode {
    id: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    attrs: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEdge {
    source: String,
    target: String,
    weight: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    #[serde(default)]
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

pub fn load_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<WeightedDigraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    match format {
        GraphFormat::Csv => read_csv(reader, path),
        GraphFormat::Json => read_json(reader, path),
        GraphFormat::Dot => Err(Error::InvalidArgument(
            "DOT is an export-only format".into(),
        )),
    }
}

/// Reads `source,target,weight` rows; a leading header row is optional.
/// `origin` is only used in error messages.
pub fn read_csv<R: Read>(reader: R, origin: &Path) -> Result<WeightedDigraph> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);
    let mut b = GraphBuilder::default();
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(k + 1, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != 3 {
            return Err(parse_err(
                line,
                format!(
                    "expected 3 fields (source,target,weight), found {}",
                    rec.len()
                ),
            ));
        }
        if k == 0 && &rec[0] == "source" && &rec[1] == "target" && &rec[2] == "weight" {
            continue;
        }
        let w: f64 = rec[2]
            .parse()
            .map_err(|_| parse_err(line, format!("weight `{}` is not a number", &rec[2])))?;
        b.add_edge(&rec[0], &rec[1], w)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    b.build()
}

pub fn read_json<R: Read>(reader: R, origin: &Path) -> Result<WeightedDigraph> {
    let doc: JsonGraph = serde_json::from_reader(reader).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut b = GraphBuilder::default();
    for n in &doc.nodes {
        b.add_node(&n.id);
        for (k, v) in &n.attrs {
            b.set_attribute(&n.id, k, *v);
        }
    }
    for e in &doc.edges {
        b.add_edge(&e.source, &e.target, e.weight)?;
    }
    b.build()
}

pub fn write_csv<W: Write>(g: &WeightedDigraph, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record(["source", "target", "weight"]).map_err(io)?;
    for e in g.edges() {
        w.write_record([
            g.label(e.source),
            g.label(e.target),
            &format!("{}", e.weight),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))
}

pub fn write_json<W: Write>(g: &WeightedDigraph, out: W) -> Result<()> {
    let doc = JsonGraph {
        nodes: g
            .nodes()
            .map(|i| JsonNode {
                id: g.label(i).to_string(),
                attrs: g.attributes(i).clone(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge {
                source: g.label(e.source).to_string(),
                target: g.label(e.target).to_string(),
                weight: e.weight,
            })
            .collect(),
    };
    serde_json::to_writer_pretty(out, &doc)?;
    Ok(())
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn write_dot<W: Write>(g: &WeightedDigraph, mut out: W) -> Result<()> {
    let io = |e| Error::io("<dot writer>", e);
    writeln!(out, "digraph G {{").map_err(io)?;
    for i in g.nodes() {
        writeln!(out, "    {};", dot_id(g.label(i))).map_err(io)?;
    }
    for e in g.edges() {
        writeln!(
            out,
            "    {} -> {} [weight={}, label=\"{}\"];",
            dot_id(g.label(e.source)),
            dot_id(g.label(e.target)),
            e.weight,
            e.weight
        )
        .map_err(io)?;
    }
    writeln!(out, "}}").map_err(io)
}

pub fn write_graph<W: Write>(g: &WeightedDigraph, format: GraphFormat, out: W) -> Result<()> {
    match format {
        GraphFormat::Csv => write_csv(g, out),
        GraphFormat::Json => write_json(g, out),
        GraphFormat::Dot => write_dot(g, out),
    }
}

/// Writes `g` to `path`. CSV cannot carry isolated nodes or attributes;
/// use JSON when those matter.
pub fn export_graph(
    g: &WeightedDigraph,
    path: impl AsRef<Path>,
    format: GraphFormat,
) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_graph(g, format, &mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}
