//! Formula-versus-solver sweeps over parameter grids, free-tree enumeration,
//! and evidence scans for the even-diameter questions on `T □ C_n`.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::{
    aw_cycle_formula, aw_grid_formula, aw_odd_cycle_product, aw_path_cycle_formula,
    aw_path_formula, aw_torus_formula, is_odd_prime, FormulaError, PrimeClassCache,
};
use crate::coloring::Coloring;
use crate::extremal::{counterexample_instance, ExtremalError};
use crate::graph::{Graph, GraphError};
use crate::product::cartesian_product;
use crate::solver::{anti_vdw_number, SearchConfig, SolverError};

pub const TREE_ORDER_CAP: usize = 12;
pub const SWEEP_VERTEX_CAP: usize = 96;

#[derive(Debug, Error)]
pub enum ExplorerError {
    #[error("tree order {0} outside 1..={TREE_ORDER_CAP}")]
    TreeOrder(usize),
    #[error("{label} has {vertices} vertices, above the cap of {cap}")]
    TooLarge { label: String, vertices: usize, cap: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

// ---------------------------------------------------------------------------
// free trees

/// All free trees on `n` vertices, each isomorphism class exactly once.
///
/// Walks canonical level sequences in the Wright–Richmond–Odlyzko–McKay
/// order: rooted successors are generated by the Beyer–Hedetniemi step and
/// non-canonical roots are skipped in one jump.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, ExplorerError> {
    if n == 0 || n > TREE_ORDER_CAP {
        return Err(ExplorerError::TreeOrder(n));
    }
    if n == 1 {
        return Ok(vec![Graph::path(1)?]);
    }
    let mut layout: Vec<usize> = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
    let mut out = Vec::new();
    while let Some(tree) = next_tree(layout) {
        out.push(layout_to_graph(&tree)?);
        match next_rooted_tree(&tree, None) {
            Some(next) => layout = next,
            None => break,
        }
    }
    Ok(out)
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = p.unwrap_or_else(|| {
        let mut p = pred.len() - 1;
        while pred[p] == 1 {
            p -= 1;
        }
        p
    });
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let second_one = layout
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..second_one].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[second_one..].iter().copied()).collect();
    (left, rest)
}

fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    let tie_broken_wrong =
        rh == lh && (left.len() > rest.len() || (left.len() == rest.len() && left > rest));
    if rh >= lh && !tie_broken_wrong {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - (h + 1)..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

fn layout_to_graph(layout: &[usize]) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                edges.push((j, i));
                break;
            }
        }
        stack.push(i);
    }
    Graph::from_edges(layout.len(), &edges)
}

// ---------------------------------------------------------------------------
// sweeps

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cycle,
    Path,
    Grid,
    PathCycle,
    Torus,
    OddCycleProduct,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Cycle,
        Family::Path,
        Family::Grid,
        Family::PathCycle,
        Family::Torus,
        Family::OddCycleProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Grid => "grid",
            Family::PathCycle => "path_cycle",
            Family::Torus => "torus",
            Family::OddCycleProduct => "odd_cycle_product",
        }
    }

    /// Whether cells are indexed by `m` as well as `n`. For
    /// `odd_cycle_product`, `m` ranges over tree orders.
    pub fn has_m(self) -> bool {
        !matches!(self, Family::Cycle | Family::Path)
    }

    pub fn is_product(self) -> bool {
        self.has_m()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub m: Vec<usize>,
    pub n: Vec<usize>,
}

impl SweepGrid {
    pub fn new(m: impl IntoIterator<Item = usize>, n: impl IntoIterator<Item = usize>) -> Self {
        SweepGrid { m: m.into_iter().collect(), n: n.into_iter().collect() }
    }

    pub fn single(n: impl IntoIterator<Item = usize>) -> Self {
        Self::new(std::iter::empty(), n)
    }
}

/// Everything needed to replay a mismatching cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureArtifact {
    pub family: Family,
    pub label: String,
    pub params: Vec<usize>,
    pub k: usize,
    /// The instance in edge-list format.
    pub edge_list: String,
    pub formula: usize,
    pub solver: usize,
    /// Rainbow-free exact coloring with `solver - 1` colors.
    pub certificate: Coloring,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub label: String,
    pub params: Vec<usize>,
    pub vertices: usize,
    pub formula: usize,
    /// `None` when the solver timed out.
    pub solver: Option<usize>,
    pub matched: bool,
    /// The formula value itself came from the solver (a prime cycle).
    pub circular: bool,
    pub elapsed_ms: f64,
    pub certificate: Option<Coloring>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub cells: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub indeterminate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: Family,
    pub grid: SweepGrid,
    pub cells: Vec<SweepCell>,
    pub summary: SweepSummary,
    pub failures: Vec<FailureArtifact>,
}

impl SweepReport {
    pub fn all_matched(&self) -> bool {
        self.summary.matched == self.summary.cells
    }

    /// Copy with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> SweepReport {
        let mut out = self.clone();
        for cell in &mut out.cells {
            cell.elapsed_ms = 0.0;
        }
        out
    }

    pub fn to_table(&self) -> String {
        let rows = self
            .cells
            .iter()
            .map(|c| {
                vec![
                    c.label.clone(),
                    c.vertices.to_string(),
                    c.formula.to_string(),
                    c.solver.map_or("?".into(), |v| v.to_string()),
                    if c.solver.is_none() {
                        "indeterminate".into()
                    } else if c.matched {
                        "match".into()
                    } else {
                        "MISMATCH".into()
                    },
                    format!("{:.1}", c.elapsed_ms),
                ]
            })
            .collect();
        let mut out = text_table(&["instance", "|V|", "formula", "solver", "status", "ms"], rows);
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} cells, {} matched, {} mismatched, {} indeterminate",
            self.family, s.cells, s.matched, s.mismatched, s.indeterminate
        );
        out
    }
}

struct CellSpec {
    label: String,
    params: Vec<usize>,
    graph: Graph,
    formula: usize,
    circular: bool,
}

fn family_cells(
    family: Family,
    grid: &SweepGrid,
    cache: &mut PrimeClassCache,
    cfg: &SearchConfig,
) -> Result<Vec<CellSpec>, ExplorerError> {
    if family.has_m() && grid.m.is_empty() {
        return Err(ExplorerError::InvalidGrid(format!("{family} needs an m range")));
    }
    if grid.n.is_empty() {
        return Err(ExplorerError::InvalidGrid("empty n range".into()));
    }
    let mut cells = Vec::new();
    let mut push = |label: String, params: Vec<usize>, graph: Graph, formula, circular| {
        if graph.vertex_count() > SWEEP_VERTEX_CAP {
            return Err(ExplorerError::TooLarge {
                label,
                vertices: graph.vertex_count(),
                cap: SWEEP_VERTEX_CAP,
            });
        }
        cells.push(CellSpec { label, params, graph, formula, circular });
        Ok(())
    };
    let product = |a: &Graph, b: &Graph| cartesian_product(a, b).map(|p| p.graph);
    let single_cfg = cfg.clone().with_upper_bound(None).with_threads(1);
    match family {
        Family::Cycle => {
            for &n in &grid.n {
                let formula = aw_cycle_formula(n, cache, &single_cfg)?;
                push(format!("C{n}"), vec![n], Graph::cycle(n)?, formula, is_odd_prime(n as u64))?;
            }
        }
        Family::Path => {
            for &n in &grid.n {
                push(format!("P{n}"), vec![n], Graph::path(n)?, aw_path_formula(n)?, false)?;
            }
        }
        Family::Grid | Family::PathCycle | Family::Torus => {
            for &m in &grid.m {
                for &n in &grid.n {
                    let (label, graph, formula) = match family {
                        Family::Grid => (
                            format!("P{m} x P{n}"),
                            product(&Graph::path(m)?, &Graph::path(n)?)?,
                            aw_grid_formula(m, n)?,
                        ),
                        Family::PathCycle => (
                            format!("P{m} x C{n}"),
                            product(&Graph::path(m)?, &Graph::cycle(n)?)?,
                            aw_path_cycle_formula(m, n)?,
                        ),
                        _ => (
                            format!("C{m} x C{n}"),
                            product(&Graph::cycle(m)?, &Graph::cycle(n)?)?,
                            aw_torus_formula(m, n)?,
                        ),
                    };
                    push(label, vec![m, n], graph, formula, false)?;
                }
            }
        }
        Family::OddCycleProduct => {
            for &order in &grid.m {
                if order < 2 {
                    return Err(ExplorerError::InvalidGrid("tree orders must be >= 2".into()));
                }
                for (idx, tree) in enumerate_trees(order)?.into_iter().enumerate() {
                    for &n in &grid.n {
                        let formula = aw_odd_cycle_product(&tree, n)?;
                        let graph = product(&tree, &Graph::cycle(n)?)?;
                        push(format!("T{order}.{idx} x C{n}"), vec![order, idx, n], graph, formula, false)?;
                    }
                }
            }
        }
    }
    Ok(cells)
}

/// Runs the solver against the closed form on every cell of `grid`.
///
/// Cells run in parallel on `cfg.threads` workers, each cell single-threaded;
/// `cfg.upper_bound` is applied to product families only. A mismatch yields
/// a [`FailureArtifact`]; a timeout is reported as indeterminate.
pub fn verify_theorem(
    family: Family,
    grid: &SweepGrid,
    cfg: &SearchConfig,
    cache: &mut PrimeClassCache,
) -> Result<SweepReport, ExplorerError> {
    let specs = family_cells(family, grid, cache, cfg)?;
    let mut cell_cfg = cfg.clone().with_threads(1);
    if !family.is_product() {
        cell_cfg.upper_bound = None;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Result<(SweepCell, Option<FailureArtifact>), ExplorerError>> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let started = Instant::now();
                let result = anti_vdw_number(&spec.graph, 3, &cell_cfg)?;
                let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
                let matched = result.aw == Some(spec.formula);
                let failure = match result.aw {
                    Some(solver) if !matched => Some(FailureArtifact {
                        family,
                        label: spec.label.clone(),
                        params: spec.params.clone(),
                        k: 3,
                        edge_list: spec.graph.to_edge_list(),
                        formula: spec.formula,
                        solver,
                        certificate: result.certificate.clone(),
                    }),
                    _ => None,
                };
                let cell = SweepCell {
                    label: spec.label.clone(),
                    params: spec.params.clone(),
                    vertices: spec.graph.vertex_count(),
                    formula: spec.formula,
                    solver: result.aw,
                    matched,
                    circular: spec.circular,
                    elapsed_ms,
                    certificate: result.aw.map(|_| result.certificate),
                };
                Ok((cell, failure))
            })
            .collect()
    });
    let mut cells = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for r in results {
        let (cell, failure) = r?;
        cells.push(cell);
        failures.extend(failure);
    }
    cells.sort_by(|a, b| a.params.cmp(&b.params));
    failures.sort_by(|a, b| a.params.cmp(&b.params));
    let summary = SweepSummary {
        cells: cells.len(),
        matched: cells.iter().filter(|c| c.matched).count(),
        mismatched: cells.iter().filter(|c| c.solver.is_some() && !c.matched).count(),
        indeterminate: cells.iter().filter(|c| c.solver.is_none()).count(),
    };
    Ok(SweepReport { family, grid: grid.clone(), cells, summary, failures })
}

// ---------------------------------------------------------------------------
// conjecture scan

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanFlags {
    /// A tree times an even cycle with even diameter and `aw = 4`.
    pub tree_even_diameter_aw4: bool,
    /// Even diameter, `aw = 4` and no almost-peripheral pair at all.
    pub aw4_without_pairs: bool,
    /// Even diameter, `aw = 4` and no uniquely realized almost-peripheral pair.
    pub aw4_without_unique_pairs: bool,
}

impl ScanFlags {
    pub fn any(&self) -> bool {
        self.tree_even_diameter_aw4 || self.aw4_without_pairs || self.aw4_without_unique_pairs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub label: String,
    /// `None` for the non-tree reference instance.
    pub tree_order: Option<usize>,
    pub cycle_len: usize,
    pub vertices: usize,
    pub diameter: usize,
    pub factor_pairs: usize,
    pub factor_unique_pairs: usize,
    pub product_pairs: usize,
    pub product_unique_pairs: usize,
    pub aw: Option<usize>,
    pub flags: ScanFlags,
    /// Full instance, kept for flagged entries and the reference instance.
    pub edge_list: Option<String>,
    pub certificate: Option<Coloring>,
}

impl ScanEntry {
    pub fn status(&self) -> &'static str {
        match self.aw {
            None => "indeterminate",
            Some(_) if self.flags.any() => "COUNTEREXAMPLE",
            Some(_) => "consistent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScanSummary {
    pub scanned: usize,
    pub skipped_odd_diameter: usize,
    pub aw3: usize,
    pub aw4: usize,
    pub indeterminate: usize,
    pub trees_with_pairs: usize,
    pub counterexamples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub max_tree: usize,
    pub cycles: Vec<usize>,
    pub entries: Vec<ScanEntry>,
    pub reference: ScanEntry,
    pub summary: ScanSummary,
}

impl ConjectureReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.flags.any())
    }

    pub fn to_table(&self) -> String {
        let row = |e: &ScanEntry| {
            vec![
                e.label.clone(),
                e.vertices.to_string(),
                e.diameter.to_string(),
                format!("{}/{}", e.factor_pairs, e.factor_unique_pairs),
                format!("{}/{}", e.product_pairs, e.product_unique_pairs),
                e.aw.map_or("?".into(), |v| v.to_string()),
                e.status().into(),
            ]
        };
        let mut rows: Vec<Vec<String>> = self.entries.iter().map(row).collect();
        let mut reference = row(&self.reference);
        reference[0] = format!("{} (reference)", reference[0]);
        rows.push(reference);
        let mut out = text_table(
            &["instance", "|V|", "diam", "factor pairs", "product pairs", "aw", "status"],
            rows,
        );
        let s = &self.summary;
        let _ = writeln!(
            out,
            "scanned {} even-diameter products ({} odd-diameter skipped): {} with aw 3, {} with aw 4, {} indeterminate; {} trees with almost-peripheral pairs; {} counterexamples",
            s.scanned, s.skipped_odd_diameter, s.aw3, s.aw4, s.indeterminate, s.trees_with_pairs, s.counterexamples
        );
        out
    }
}

fn pair_counts(g: &Graph) -> (usize, usize) {
    let pairs = g.almost_peripheral_pairs();
    let unique = pairs.iter().filter(|p| p.uniquely_realized()).count();
    (pairs.len(), unique)
}

fn scan_entry(
    label: String,
    tree_order: Option<usize>,
    factor: &Graph,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ScanEntry, ExplorerError> {
    let graph = cartesian_product(factor, &Graph::cycle(n)?)?.graph;
    let diameter = graph.diameter();
    let (factor_pairs, factor_unique_pairs) = pair_counts(factor);
    let (product_pairs, product_unique_pairs) = pair_counts(&graph);
    let result = anti_vdw_number(&graph, 3, cfg)?;
    let aw4 = result.aw == Some(4) && diameter % 2 == 0;
    let flags = ScanFlags {
        tree_even_diameter_aw4: aw4 && tree_order.is_some(),
        aw4_without_pairs: aw4 && product_pairs == 0,
        aw4_without_unique_pairs: aw4 && product_unique_pairs == 0,
    };
    let keep = flags.any() || tree_order.is_none();
    Ok(ScanEntry {
        label,
        tree_order,
        cycle_len: n,
        vertices: graph.vertex_count(),
        diameter,
        factor_pairs,
        factor_unique_pairs,
        product_pairs,
        product_unique_pairs,
        aw: result.aw,
        flags,
        edge_list: keep.then(|| graph.to_edge_list()),
        certificate: (keep && result.aw.is_some()).then_some(result.certificate),
    })
}

/// Scans `T □ C_n` for every tree with `2..=max_tree` vertices and every
/// listed even `n`, keeping the even-diameter products, plus the
/// `(C_10 + leaf) □ C_4` reference instance.
///
/// Each entry records almost-peripheral pairs of the factor and of the
/// product, both as found and restricted to uniquely realized pairs.
pub fn conjecture_scan(
    max_tree: usize,
    cycles: &[usize],
    cfg: &SearchConfig,
) -> Result<ConjectureReport, ExplorerError> {
    if !(2..=TREE_ORDER_CAP).contains(&max_tree) {
        return Err(ExplorerError::TreeOrder(max_tree));
    }
    if let Some(&bad) = cycles.iter().find(|&&n| n < 4 || n % 2 == 1) {
        return Err(ExplorerError::InvalidGrid(format!("cycle length {bad} is not even and >= 4")));
    }
    let mut jobs = Vec::new();
    let mut skipped = 0;
    for order in 2..=max_tree {
        for (idx, tree) in enumerate_trees(order)?.into_iter().enumerate() {
            for &n in cycles {
                let label = format!("T{order}.{idx} x C{n}");
                if order * n > SWEEP_VERTEX_CAP {
                    return Err(ExplorerError::TooLarge {
                        label,
                        vertices: order * n,
                        cap: SWEEP_VERTEX_CAP,
                    });
                }
                if (tree.diameter() + n / 2) % 2 == 1 {
                    skipped += 1;
                    continue;
                }
                jobs.push((label, order, tree.clone(), n));
            }
        }
    }
    let cell_cfg = cfg.clone().with_threads(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .expect("thread pool");
    let entries: Result<Vec<ScanEntry>, ExplorerError> = pool.install(|| {
        jobs.par_iter()
            .map(|(label, order, tree, n)| scan_entry(label.clone(), Some(*order), tree, *n, &cell_cfg))
            .collect()
    });
    let entries = entries?;
    let base = counterexample_instance()?;
    let reference = scan_entry("C10+leaf x C4".into(), None, &base.product.left, 4, &cell_cfg)?;

    let mut trees_with_pairs = 0;
    for order in 2..=max_tree {
        trees_with_pairs += enumerate_trees(order)?
            .iter()
            .filter(|t| !t.almost_peripheral_pairs().is_empty())
            .count();
    }
    let summary = ScanSummary {
        scanned: entries.len(),
        skipped_odd_diameter: skipped,
        aw3: entries.iter().filter(|e| e.aw == Some(3)).count(),
        aw4: entries.iter().filter(|e| e.aw == Some(4)).count(),
        indeterminate: entries.iter().filter(|e| e.aw.is_none()).count(),
        trees_with_pairs,
        counterexamples: entries.iter().filter(|e| e.flags.any()).count(),
    };
    Ok(ConjectureReport { max_tree, cycles: cycles.to_vec(), entries, reference, summary })
}

/// Left-aligned columns separated by two spaces, with a rule under the
/// header.
pub fn text_table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> =
            cells.zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &mut headers.iter().copied());
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(&mut out, &mut rule.iter().map(String::as_str));
    for row in &rows {
        line(&mut out, &mut row.iter().map(String::as_str));
    }
    out
}
