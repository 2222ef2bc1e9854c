//! Textual graph specifications: `path:N`, `cycle:N`, `file:PATH`, joined by
//! ` x ` for Cartesian products (left-associative, left factor is `G`).

use std::fs;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::product::{cartesian_product, ProductGraph};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("empty graph spec")]
    Empty,
    #[error("unrecognized graph term `{0}` (expected path:N, cycle:N or file:PATH)")]
    UnknownTerm(String),
    #[error("bad size in `{0}`")]
    BadSize(String),
    #[error("reading {path}")]
    Io { path: String, source: std::io::Error },
    #[error("{term}")]
    Graph { term: String, source: GraphError },
}

/// A parsed spec: the graph plus its outermost product structure, if any.
#[derive(Debug, Clone)]
pub struct BuiltGraph {
    pub spec: String,
    pub graph: Graph,
    pub product: Option<ProductGraph>,
}

impl BuiltGraph {
    /// The generic upper bound `aw(G □ H, 3) <= 4`, available when the
    /// outermost operation is a product of factors with at least 2 vertices.
    pub fn product_bound(&self, k: usize) -> Option<usize> {
        let p = self.product.as_ref()?;
        (k == 3 && p.left.vertex_count() >= 2 && p.right.vertex_count() >= 2).then_some(4)
    }
}

fn parse_term(term: &str) -> Result<Graph, SpecError> {
    let term = term.trim();
    let wrap = |source| SpecError::Graph { term: term.to_string(), source };
    let (kind, arg) = term.split_once(':').ok_or_else(|| SpecError::UnknownTerm(term.into()))?;
    let size = || arg.trim().parse::<usize>().map_err(|_| SpecError::BadSize(term.into()));
    match kind.trim() {
        "path" => Graph::path(size()?).map_err(wrap),
        "cycle" => Graph::cycle(size()?).map_err(wrap),
        "file" => {
            let path = arg.trim();
            let text = fs::read_to_string(path)
                .map_err(|source| SpecError::Io { path: path.to_string(), source })?;
            Graph::parse_edge_list(&text).map_err(wrap)
        }
        _ => Err(SpecError::UnknownTerm(term.into())),
    }
}

pub fn parse_graph_spec(spec: &str) -> Result<BuiltGraph, SpecError> {
    let mut terms = spec.split(" x ").map(str::trim);
    let first = terms.next().filter(|t| !t.is_empty()).ok_or(SpecError::Empty)?;
    let mut graph = parse_term(first)?;
    let mut product = None;
    for term in terms {
        let right = parse_term(term)?;
        let p = cartesian_product(&graph, &right)
            .map_err(|source| SpecError::Graph { term: spec.to_string(), source })?;
        graph = p.graph.clone();
        product = Some(p);
    }
    Ok(BuiltGraph { spec: spec.to_string(), graph, product })
}
