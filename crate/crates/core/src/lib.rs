//! Exact anti-van der Waerden numbers of graphs.
//!
//! `aw(G, k)` is the least `r` such that every exact `r`-coloring of `V(G)`
//! contains a rainbow k-term arithmetic progression, where progressions are
//! measured in hop distance. The crate enumerates progressions, decides the
//! existence of rainbow-free colorings with certificates, evaluates the
//! known closed forms for paths, cycles and their products, and builds the
//! extremal colorings that witness the value 4.

pub mod ap;
pub mod closed_forms;
pub mod coloring;
pub mod explorer;
pub mod extremal;
pub mod graph;
pub mod graph_spec;
pub mod product;
pub mod solver;

pub use ap::{ApCatalog, ApError};
pub use coloring::{Coloring, ColoringError};
pub use graph::{Graph, GraphError};
pub use product::{cartesian_product, FactorCopy, ProductGraph, ProductIndex};
pub use solver::{anti_vdw_number, AwResult, Feasibility, SearchConfig, SolverError};
