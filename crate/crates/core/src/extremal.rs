//! Explicit rainbow-free exact 3-colorings witnessing `aw(·, 3) >= 4`.
//!
//! Each construction colors one vertex blue, one green and the rest red,
//! then checks the result against the full 3-AP catalog before returning it.

use std::fmt::Write as _;

use thiserror::Error;

use crate::ap::{ApCatalog, ApError};
use crate::coloring::Coloring;
use crate::graph::{Graph, GraphError};
use crate::product::{cartesian_product, ProductGraph};

pub const RED: usize = 1;
pub const BLUE: usize = 2;
pub const GREEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("refusing {which}({m}, {n}): {reason}")]
    Refused { which: &'static str, m: usize, n: usize, reason: String },
    #[error("construction produced a rainbow 3-AP {0:?}")]
    Unverified(Vec<usize>),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ap(#[from] ApError),
}

/// A verified construction: product, coloring and the two singleton classes.
#[derive(Debug, Clone)]
pub struct Extremal {
    pub product: ProductGraph,
    pub coloring: Coloring,
    pub blue: usize,
    pub green: usize,
}

fn two_point_coloring(
    product: ProductGraph,
    blue: usize,
    green: usize,
) -> Result<Extremal, ExtremalError> {
    let n = product.graph.vertex_count();
    let mut colors = vec![RED; n];
    colors[blue] = BLUE;
    colors[green] = GREEN;
    let coloring = Coloring::exact(3, colors).expect("three classes are nonempty");
    let catalog = ApCatalog::enumerate(&product.graph, 3)?;
    if let Some(ap) = catalog.find_rainbow(coloring.colors()) {
        return Err(ExtremalError::Unverified(ap));
    }
    Ok(Extremal { product, coloring, blue, green })
}

/// `P_m □ C_n` with blue `v_{1,1}` and green `v_{m,n/2+1}`.
///
/// Requires even `n >= 4`, `m >= 2` and odd diameter `m - 1 + n/2`.
pub fn extremal_path_cycle_coloring(m: usize, n: usize) -> Result<Extremal, ExtremalError> {
    let refuse = |reason: String| ExtremalError::Refused { which: "path-cycle", m, n, reason };
    if m < 2 {
        return Err(refuse("need m >= 2".into()));
    }
    if n < 4 || n % 2 == 1 {
        return Err(refuse("need an even cycle length n >= 4".into()));
    }
    let diam = m - 1 + n / 2;
    if diam % 2 == 0 {
        return Err(refuse(format!(
            "diam(P_{m} x C_{n}) = {diam} is even, where aw = 3 and no rainbow-free exact 3-coloring exists"
        )));
    }
    let product = cartesian_product(&Graph::path(m)?, &Graph::cycle(n)?)?;
    let blue = product.vertex(1, 1);
    let green = product.vertex(m, n / 2 + 1);
    two_point_coloring(product, blue, green)
}

/// `C_m □ C_n` with blue `v_{1,1}` and green `v_{m/2+1,n/2+1}`.
///
/// Requires even `m, n >= 4` with `m ≢ n (mod 4)`.
pub fn extremal_torus_coloring(m: usize, n: usize) -> Result<Extremal, ExtremalError> {
    let refuse = |reason: String| ExtremalError::Refused { which: "torus", m, n, reason };
    if m < 4 || n < 4 || m % 2 == 1 || n % 2 == 1 {
        return Err(refuse("need even m, n >= 4".into()));
    }
    if m % 4 == n % 4 {
        return Err(refuse(format!(
            "{m} ≡ {n} (mod 4) makes the diameter even, where aw = 3"
        )));
    }
    let product = cartesian_product(&Graph::cycle(m)?, &Graph::cycle(n)?)?;
    let blue = product.vertex(1, 1);
    let green = product.vertex(m / 2 + 1, n / 2 + 1);
    two_point_coloring(product, blue, green)
}

/// A `len`-cycle `w_1 … w_len` with an extra leaf `w_{len+1}` on `w_len`.
pub fn cycle_with_leaf(len: usize) -> Result<Graph, GraphError> {
    if len < 3 {
        return Err(GraphError::InvalidSize { n: len, reason: "cycle needs at least 3 vertices" });
    }
    let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
    edges.push((len - 1, len));
    Graph::from_edges(len + 1, &edges)
}

/// `(C_10 + leaf) □ C_4` with blue `v_{2,1}` and green `v_{7,3}`: an even
/// diameter product whose `aw` is still 4.
pub fn counterexample_instance() -> Result<Extremal, ExtremalError> {
    let product = cartesian_product(&cycle_with_leaf(10)?, &Graph::cycle(4)?)?;
    let blue = product.vertex(2, 1);
    let green = product.vertex(7, 3);
    two_point_coloring(product, blue, green)
}

const PALETTE: [&str; 12] = [
    "red", "blue", "green", "gold", "purple", "orange", "cyan", "magenta", "brown", "pink",
    "gray", "olivedrab",
];

/// Fill color used by [`to_dot`] for color class `c` (1-based).
pub fn fill_color(c: usize) -> &'static str {
    PALETTE[(c - 1) % PALETTE.len()]
}

/// Graphviz rendering with one filled node per vertex.
pub fn to_dot(g: &Graph, coloring: &Coloring) -> String {
    let mut out = String::from("graph G {\n  node [style=filled, fontcolor=white];\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(
            out,
            "  n{v} [label=\"{}\", fillcolor={}];",
            g.label(v),
            fill_color(coloring.color(v))
        );
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  n{a} -- n{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_mechanism(e: &Extremal) {
        let g = &e.product.graph;
        let diam = g.diameter();
        assert_eq!(g.distance(e.blue, e.green), diam);
        assert_eq!(g.eccentricity_multiplicity(e.blue), 1);
        assert_eq!(g.eccentricity_multiplicity(e.green), 1);
        assert!(e.coloring.is_exact());
    }

    #[test]
    fn path_cycle_constructions() {
        for (m, n) in [(2, 4), (3, 6), (2, 8), (4, 4)] {
            let e = extremal_path_cycle_coloring(m, n).unwrap();
            check_mechanism(&e);
        }
        assert!(matches!(
            extremal_path_cycle_coloring(4, 6),
            Err(ExtremalError::Refused { .. })
        ));
        assert!(extremal_path_cycle_coloring(5, 8).is_err());
        assert!(extremal_path_cycle_coloring(3, 5).is_err());
    }

    #[test]
    fn torus_constructions() {
        for (m, n) in [(4, 6), (6, 8), (6, 4)] {
            check_mechanism(&extremal_torus_coloring(m, n).unwrap());
        }
        assert!(extremal_torus_coloring(4, 8).is_err());
        assert!(extremal_torus_coloring(3, 6).is_err());
    }

    #[test]
    fn counterexample_shape() {
        let e = counterexample_instance().unwrap();
        let g = &e.product.graph;
        assert_eq!(g.vertex_count(), 44);
        assert_eq!(g.diameter(), 8);
        assert_eq!(g.distance(e.blue, e.green), 7);
        assert_eq!(g.eccentricity(e.blue), 7);
        assert_eq!(g.eccentricity(e.green), 7);
        assert_eq!(g.label(e.blue), "v2,1");
        assert_eq!(g.label(e.green), "v7,3");
        for v in 0..g.vertex_count() {
            assert_ne!(g.distance(v, e.blue) % 2, g.distance(v, e.green) % 2);
        }
        let pair = g
            .almost_peripheral_pairs()
            .into_iter()
            .find(|p| {
                let (a, b) = (p.pair.u.min(p.pair.v), p.pair.u.max(p.pair.v));
                (a, b) == (e.blue.min(e.green), e.blue.max(e.green))
            })
            .expect("blue/green pair is almost peripheral");
        assert!(pair.uniquely_realized());
        assert_eq!(pair.pair.value, 7);
    }

    #[test]
    fn dot_has_fills() {
        let e = extremal_path_cycle_coloring(2, 4).unwrap();
        let dot = to_dot(&e.product.graph, &e.coloring);
        assert_eq!(dot.matches("fillcolor=blue").count(), 1);
        assert_eq!(dot.matches("fillcolor=green").count(), 1);
        assert_eq!(dot.matches("fillcolor=red").count(), 6);
        assert_eq!(dot.matches(" -- ").count(), 12);
        assert!(dot.contains("label=\"v1,1\", fillcolor=blue"));
    }
}
