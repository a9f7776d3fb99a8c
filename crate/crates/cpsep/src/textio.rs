//! Graph text format and instance JSON.
//!
//! Text format: first non-comment line `n m`, then `m` lines `u v` with
//! 0-based endpoints, then an optional line `weights` followed by `n`
//! integers (whitespace separated, possibly across lines). `#` starts a
//! comment anywhere on a line.

use crate::constraints::{ConstraintSpec, ConstraintSpecJson};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::nmwcu::NmwcuInstance;
use serde::{Deserialize, Serialize};
use std::path::Path;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_graph_text(input: &str) -> Result<Graph> {
    let mut tokens: Vec<&str> = Vec::new();
    for line in input.lines() {
        let body = line.split('#').next().unwrap_or("");
        tokens.extend(body.split_whitespace());
    }
    let mut it = tokens.into_iter();
    let n: usize = it
        .next()
        .ok_or_else(|| parse_err("missing vertex count"))?
        .parse()
        .map_err(|_| parse_err("vertex count is not an integer"))?;
    let m: usize = it
        .next()
        .ok_or_else(|| parse_err("missing edge count"))?
        .parse()
        .map_err(|_| parse_err("edge count is not an integer"))?;
    let mut edges = Vec::with_capacity(m);
    for i in 0..m {
        let u: usize = it
            .next()
            .ok_or_else(|| parse_err(format!("edge {}: missing endpoint", i)))?
            .parse()
            .map_err(|_| parse_err(format!("edge {}: bad endpoint", i)))?;
        let v: usize = it
            .next()
            .ok_or_else(|| parse_err(format!("edge {}: missing endpoint", i)))?
            .parse()
            .map_err(|_| parse_err(format!("edge {}: bad endpoint", i)))?;
        edges.push((u, v));
    }
    let g = Graph::from_edges(n, &edges).map_err(|e| parse_err(e.to_string()))?;
    match it.next() {
        None => Ok(g),
        Some("weights") => {
            let mut weights = Vec::with_capacity(n);
            for i in 0..n {
                let w: u64 = it
                    .next()
                    .ok_or_else(|| parse_err(format!("weight {}: missing", i)))?
                    .parse()
                    .map_err(|_| parse_err(format!("weight {}: not a nonnegative integer", i)))?;
                weights.push(w);
            }
            if it.next().is_some() {
                return Err(parse_err("trailing tokens after weights"));
            }
            g.with_weights(weights).map_err(|e| parse_err(e.to_string()))
        }
        Some(tok) => Err(parse_err(format!("unexpected token '{}'", tok))),
    }
}

pub fn write_graph_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    if g.weights().iter().any(|&w| w != 1) {
        out.push_str("weights\n");
        let ws: Vec<String> = g.weights().iter().map(|w| w.to_string()).collect();
        out.push_str(&ws.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("{}: {}", path.display(), e)))?;
    parse_graph_text(&text)
}

/// Inline graph JSON: `{"n": 4, "edges": [[0,1],...], "weights": [..]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::from_edges(self.n, &self.edges)?;
        match &self.weights {
            Some(w) => g.with_weights(w.clone()),
            None => Ok(g),
        }
    }
}

/// Either a path to a graph text file or an inline graph object.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Path(String),
    Inline(GraphJson),
}

impl GraphRef {
    /// Resolves the graph; relative paths are taken from `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<Graph> {
        match self {
            GraphRef::Path(p) => {
                let path = Path::new(p);
                if path.is_absolute() {
                    load_graph_file(path)
                } else {
                    load_graph_file(&base_dir.join(path))
                }
            }
            GraphRef::Inline(j) => j.to_graph(),
        }
    }
}

/// Enumeration instance: graph, terminals, constraint pieces, budget.
#[derive(Debug, Serialize, Deserialize)]
pub struct EnumInstanceJson {
    pub graph: GraphRef,
    pub s: usize,
    pub t: usize,
    #[serde(rename = "A", default)]
    pub a: Vec<usize>,
    #[serde(default)]
    pub parts: Vec<Vec<usize>>,
    #[serde(rename = "Q", default)]
    pub q: Vec<usize>,
    pub k: i64,
}

impl EnumInstanceJson {
    pub fn to_context(&self, base_dir: &Path) -> Result<crate::enumerate::EnumContext> {
        if self.k < 0 {
            return Err(Error::InvalidInput("k must be nonnegative".into()));
        }
        let graph = self.graph.resolve(base_dir)?;
        crate::enumerate::EnumContext::new(
            graph,
            self.s,
            self.t,
            VertexSet::new(self.a.clone()),
            VertexSet::new(self.q.clone()),
            self.parts.iter().map(|p| VertexSet::new(p.clone())).collect(),
            self.k as usize,
        )
    }
}

/// Cut-uncut instance: `{"graph": <path or inline>, "parts": [[..]], "k": int}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct NmwcuInstanceJson {
    pub graph: GraphRef,
    pub parts: Vec<Vec<usize>>,
    pub k: i64,
}

impl NmwcuInstanceJson {
    pub fn to_instance(&self, base_dir: &Path) -> Result<NmwcuInstance> {
        if self.k < 0 {
            return Err(Error::InvalidInput("k must be nonnegative".into()));
        }
        let graph = self.graph.resolve(base_dir)?;
        NmwcuInstance::new(
            graph,
            self.parts.iter().map(|p| VertexSet::new(p.clone())).collect(),
            self.k as usize,
        )
    }
}

pub fn load_constraint_spec(path: &Path) -> Result<ConstraintSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("{}: {}", path.display(), e)))?;
    let json: ConstraintSpecJson =
        serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
    ConstraintSpec::from_json(&json)
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic_graph() {
        let g = parse_graph_text("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(g.weights().iter().all(|&w| w == 1));
    }

    #[test]
    fn parse_with_comments_and_weights() {
        let text = "# a path\n3 2 # n m\n0 1\n1 2\nweights\n5 0 2\n";
        let g = parse_graph_text(text).unwrap();
        assert_eq!(g.weights(), &[5, 0, 2]);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_graph_text("").is_err());
        assert!(parse_graph_text("2").is_err());
        assert!(parse_graph_text("2 1\n0").is_err());
        assert!(parse_graph_text("2 1\n0 5").is_err());
        assert!(parse_graph_text("2 1\n0 1\nbogus").is_err());
        assert!(parse_graph_text("2 1\n0 1\nweights\n1").is_err());
    }

    #[test]
    fn round_trip() {
        let g = parse_graph_text("4 3\n0 1\n1 2\n2 3\nweights\n1 2 3 4\n").unwrap();
        let text = write_graph_text(&g);
        let h = parse_graph_text(&text).unwrap();
        assert_eq!(g.edges(), h.edges());
        assert_eq!(g.weights(), h.weights());
    }

    #[test]
    fn inline_graph_json() {
        let j: EnumInstanceJson = serde_json::from_str(
            r#"{"graph": {"n": 4, "edges": [[0,1],[1,2],[2,3]]},
                "s": 0, "t": 3, "A": [], "parts": [[0]], "Q": [], "k": 1}"#,
        )
        .unwrap();
        let ctx = j.to_context(Path::new(".")).unwrap();
        assert_eq!(ctx.graph.vertex_count(), 4);
        assert_eq!(ctx.k, 1);
    }

    #[test]
    fn negative_k_rejected() {
        let j: NmwcuInstanceJson = serde_json::from_str(
            r#"{"graph": {"n": 2, "edges": []}, "parts": [[0],[1]], "k": -1}"#,
        )
        .unwrap();
        assert!(j.to_instance(Path::new(".")).is_err());
    }
}
