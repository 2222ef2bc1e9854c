//! Exact anti-van der Waerden numbers by pruned backtracking.
//!
//! `exists_rainbow_free_coloring` decides whether an exact `r`-coloring
//! without rainbow k-APs exists. Colors are introduced in first-use order:
//! a vertex may take color `q + 1` only when colors `1..=q` are already in
//! use, which removes the `r!` relabelings of every coloring. Each vertex
//! keeps a bitmask of colors it may still take; whenever an AP has all but
//! one vertex colored with `k - 1` distinct colors, the last vertex is
//! restricted to those colors. Colors not yet in use are interchangeable, so
//! every domain either contains all of them or none, and a branch dies as
//! soon as fewer uncolored vertices admit a fresh color than colors remain
//! to be introduced.
//!
//! `anti_vdw_number` scans `r` upward. This is sound because feasibility is
//! downward closed: merging two color classes of a rainbow-free exact
//! `r`-coloring gives an exact `(r-1)`-coloring in which every AP sees at
//! most as many distinct colors as before, so no rainbow AP appears. See
//! [`merge_preserves_rainbow_freeness`].

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ap::{ApCatalog, ApError};
use crate::coloring::Coloring;
use crate::graph::Graph;

/// Largest color count the bitmask domains support.
pub const MAX_COLORS: usize = 64;
/// Largest graph the exhaustive oracle accepts.
pub const ORACLE_VERTEX_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("color count r = {r} outside 1..={n}")]
    InvalidColorCount { r: usize, n: usize },
    #[error("color count r = {0} exceeds the supported maximum of {MAX_COLORS}")]
    TooManyColors(usize),
    #[error("oracle is limited to {ORACLE_VERTEX_CAP} vertices, graph has {0}")]
    OracleTooLarge(usize),
    #[error("catalog was built for a different graph")]
    CatalogMismatch,
    #[error(transparent)]
    Ap(#[from] ApError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum VertexOrder {
    /// Static order by descending number of APs through the vertex.
    #[default]
    ApDegree,
    /// Static order by vertex index.
    Natural,
    /// At every node, the uncolored vertex with the fewest admissible colors
    /// (ties by AP count, then index).
    FewestChoices,
}

impl std::str::FromStr for VertexOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ap-degree" => Ok(VertexOrder::ApDegree),
            "natural" => Ok(VertexOrder::Natural),
            "fewest-choices" => Ok(VertexOrder::FewestChoices),
            other => Err(format!("unknown vertex order `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub timeout: Option<Duration>,
    pub threads: usize,
    /// Return the first certificate in sequential search order even when
    /// running on several threads.
    pub deterministic: bool,
    pub vertex_order: VertexOrder,
    /// Known upper bound on aw; the scan stops once `hint - 1` is feasible.
    pub upper_bound: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            timeout: None,
            threads: 1,
            deterministic: true,
            vertex_order: VertexOrder::default(),
            upper_bound: None,
        }
    }
}

impl SearchConfig {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    pub fn with_upper_bound(mut self, bound: Option<usize>) -> Self {
        self.upper_bound = bound;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.elapsed += other.elapsed;
    }
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64() * 1e3)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?.max(0.0) / 1e3))
    }
}

/// Three-valued answer of a feasibility search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Found(Coloring),
    None,
    /// The time budget ran out before the question was settled.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Solver,
    Oracle,
}

/// Outcome of computing `aw(G, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AwResult {
    pub k: usize,
    /// `None` when a timeout left the value bracketed.
    pub aw: Option<usize>,
    /// `lo <= aw <= hi`; `lo == hi` when `aw` is known.
    pub bracket: (usize, usize),
    /// Rainbow-free exact coloring with `lo - 1` colors.
    pub certificate: Coloring,
    /// Bound supplied through [`SearchConfig::upper_bound`] that closed the
    /// scan, if it was needed.
    pub bound_used: Option<usize>,
    pub stats: SearchStats,
    pub method: Method,
}

/// Merging two classes never creates a rainbow AP: an AP whose vertices see
/// distinct colors after the merge saw distinct colors before it, because
/// merging only identifies colors. So a rainbow-free exact `r`-coloring
/// yields a rainbow-free exact `(r-1)`-coloring. This recomputes the merge of
/// the two least-used classes and verifies it against the catalog.
pub fn merge_preserves_rainbow_freeness(catalog: &ApCatalog, coloring: &Coloring) -> bool {
    if coloring.r() < 2 {
        return true;
    }
    match coloring.merge_least_used() {
        Ok(merged) => merged.is_exact() && catalog.is_rainbow_free(&merged),
        Err(_) => false,
    }
}

pub fn verify_certificate(catalog: &ApCatalog, coloring: &Coloring) -> bool {
    coloring.validate().is_ok() && coloring.is_exact() && catalog.is_rainbow_free(coloring)
}

struct Control {
    deadline: Option<Instant>,
    deterministic: bool,
    stop: AtomicBool,
    timed_out: AtomicBool,
    best_branch: AtomicUsize,
    nodes: AtomicU64,
    prunes: AtomicU64,
}

impl Control {
    fn should_abort(&self, branch: usize) -> bool {
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.timed_out.store(true, Ordering::Relaxed);
                return true;
            }
        }
        if self.deterministic {
            self.best_branch.load(Ordering::Relaxed) < branch
        } else {
            self.stop.load(Ordering::Relaxed)
        }
    }

    fn record_success(&self, branch: usize) {
        self.stop.store(true, Ordering::Relaxed);
        self.best_branch.fetch_min(branch, Ordering::Relaxed);
    }
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

#[derive(Clone)]
struct State {
    colors: Vec<u8>,
    domain: Vec<u64>,
    used: usize,
    assigned: usize,
    trail: Vec<(u32, u64)>,
}

struct Search<'a> {
    catalog: &'a ApCatalog,
    r: usize,
    order: Vec<usize>,
    ap_degree: Vec<usize>,
    vertex_order: VertexOrder,
    nodes: u64,
    prunes: u64,
}

#[inline]
fn bit(color: usize) -> u64 {
    1u64 << (color - 1)
}

impl<'a> Search<'a> {
    fn new(catalog: &'a ApCatalog, r: usize, vertex_order: VertexOrder) -> Self {
        let n = catalog.vertex_count();
        let ap_degree: Vec<usize> = (0..n).map(|v| catalog.through(v).len()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        if vertex_order != VertexOrder::Natural {
            order.sort_by_key(|&v| (std::cmp::Reverse(ap_degree[v]), v));
        }
        Search { catalog, r, order, ap_degree, vertex_order, nodes: 0, prunes: 0 }
    }

    fn root(&self) -> State {
        let n = self.catalog.vertex_count();
        let full = if self.r == 64 { u64::MAX } else { (1u64 << self.r) - 1 };
        State { colors: vec![0; n], domain: vec![full; n], used: 0, assigned: 0, trail: Vec::new() }
    }

    fn pick_vertex(&self, s: &State) -> usize {
        match self.vertex_order {
            VertexOrder::ApDegree | VertexOrder::Natural => self.order[s.assigned],
            VertexOrder::FewestChoices => {
                let mut best = usize::MAX;
                let mut best_key = (usize::MAX, 0usize);
                for &v in &self.order {
                    if s.colors[v] != 0 {
                        continue;
                    }
                    let choices = self.choice_count(s, v);
                    let key = (choices, usize::MAX - self.ap_degree[v]);
                    if key < best_key {
                        best_key = key;
                        best = v;
                        if choices <= 1 {
                            break;
                        }
                    }
                }
                best
            }
        }
    }

    fn used_mask(s: &State) -> u64 {
        if s.used == 64 { u64::MAX } else { (1u64 << s.used) - 1 }
    }

    fn fresh_allowed(&self, s: &State, v: usize) -> bool {
        s.used < self.r && s.domain[v] & bit(s.used + 1) != 0
    }

    fn choice_count(&self, s: &State, v: usize) -> usize {
        (s.domain[v] & Self::used_mask(s)).count_ones() as usize + self.fresh_allowed(s, v) as usize
    }

    fn candidates(&self, s: &State, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=s.used).filter(|&c| s.domain[v] & bit(c) != 0).collect();
        if self.fresh_allowed(s, v) {
            out.push(s.used + 1);
        }
        out
    }

    fn restrict(s: &mut State, v: usize, mask: u64) -> bool {
        let old = s.domain[v];
        let new = old & mask;
        if new != old {
            s.trail.push((v as u32, old));
            s.domain[v] = new;
        }
        new != 0
    }

    /// Colors `v` and propagates; returns false on a conflict. The caller
    /// undoes through [`undo`](Self::undo) either way.
    fn assign(&self, s: &mut State, v: usize, color: usize) -> bool {
        s.colors[v] = color as u8;
        s.assigned += 1;
        if color > s.used {
            s.used = color;
        }
        let k = self.catalog.k();
        for &id in self.catalog.through(v) {
            let terms = self.catalog.terms(id as usize);
            if k == 3 {
                let mut others = terms.iter().map(|&x| x as usize).filter(|&x| x != v);
                let (y, z) = (others.next().unwrap(), others.next().unwrap());
                let (cy, cz) = (s.colors[y] as usize, s.colors[z] as usize);
                match (cy, cz) {
                    (0, 0) => {}
                    (0, _) if cz != color => {
                        if !Self::restrict(s, y, bit(color) | bit(cz)) {
                            return false;
                        }
                    }
                    (_, 0) if cy != color => {
                        if !Self::restrict(s, z, bit(color) | bit(cy)) {
                            return false;
                        }
                    }
                    (0, _) | (_, 0) => {}
                    _ => {
                        if cy != cz && cy != color && cz != color {
                            return false;
                        }
                    }
                }
            } else {
                let mut open = None;
                let mut open_count = 0;
                let mut mask = 0u64;
                let mut repeated = false;
                for &x in terms {
                    let c = s.colors[x as usize] as usize;
                    if c == 0 {
                        open_count += 1;
                        open = Some(x as usize);
                    } else if mask & bit(c) != 0 {
                        repeated = true;
                    } else {
                        mask |= bit(c);
                    }
                }
                if repeated {
                    continue;
                }
                match open_count {
                    0 => return false,
                    1 if !Self::restrict(s, open.unwrap(), mask) => return false,
                    _ => {}
                }
            }
        }
        self.exactness_feasible(s)
    }

    fn exactness_feasible(&self, s: &State) -> bool {
        let missing = self.r - s.used;
        if missing == 0 {
            return true;
        }
        let fresh = bit(s.used + 1);
        let mut open = 0;
        for (v, &c) in s.colors.iter().enumerate() {
            if c == 0 && s.domain[v] & fresh != 0 {
                open += 1;
                if open >= missing {
                    return true;
                }
            }
        }
        false
    }

    fn undo(s: &mut State, v: usize, mark: usize, used_before: usize) {
        while s.trail.len() > mark {
            let (x, old) = s.trail.pop().unwrap();
            s.domain[x as usize] = old;
        }
        s.colors[v] = 0;
        s.assigned -= 1;
        s.used = used_before;
    }

    fn dfs(&mut self, s: &mut State, ctl: &Control, branch: usize) -> Step {
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 && ctl.should_abort(branch) {
            return Step::Aborted;
        }
        if s.assigned == s.colors.len() {
            return if s.used == self.r { Step::Found } else { Step::Exhausted };
        }
        let v = self.pick_vertex(s);
        for color in self.candidates(s, v) {
            let mark = s.trail.len();
            let used_before = s.used;
            if self.assign(s, v, color) {
                match self.dfs(s, ctl, branch) {
                    Step::Exhausted => {}
                    other => return other,
                }
            } else {
                self.prunes += 1;
            }
            Self::undo(s, v, mark, used_before);
        }
        Step::Exhausted
    }

    /// Expands the root level by level (preserving sequential order) until
    /// there are at least `target` open states.
    fn split(&mut self, target: usize) -> Vec<State> {
        let mut frontier = vec![self.root()];
        let n = self.catalog.vertex_count();
        for _ in 0..n {
            if frontier.len() >= target {
                break;
            }
            let mut next = Vec::new();
            for state in frontier {
                if state.assigned == n {
                    next.push(state);
                    continue;
                }
                let v = self.pick_vertex(&state);
                for color in self.candidates(&state, v) {
                    let mut child = state.clone();
                    self.nodes += 1;
                    if self.assign(&mut child, v, color) {
                        child.trail.clear();
                        next.push(child);
                    } else {
                        self.prunes += 1;
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        frontier
    }
}

fn coloring_from(state: &State, r: usize) -> Coloring {
    Coloring::exact(r, state.colors.iter().map(|&c| c as usize).collect())
        .expect("search only completes exact colorings")
}

/// Decides whether `g` has a rainbow-free exact `r`-coloring.
pub fn exists_rainbow_free_coloring(
    g: &Graph,
    catalog: &ApCatalog,
    r: usize,
    cfg: &SearchConfig,
) -> Result<(Feasibility, SearchStats), SolverError> {
    let n = g.vertex_count();
    if catalog.vertex_count() != n {
        return Err(SolverError::CatalogMismatch);
    }
    if r == 0 || r > n {
        return Err(SolverError::InvalidColorCount { r, n });
    }
    if r > MAX_COLORS {
        return Err(SolverError::TooManyColors(r));
    }
    let started = Instant::now();
    let ctl = Control {
        deadline: cfg.timeout.map(|t| started + t),
        deterministic: cfg.deterministic,
        stop: AtomicBool::new(false),
        timed_out: AtomicBool::new(false),
        best_branch: AtomicUsize::new(usize::MAX),
        nodes: AtomicU64::new(0),
        prunes: AtomicU64::new(0),
    };

    let mut search = Search::new(catalog, r, cfg.vertex_order);
    let threads = cfg.threads.max(1);
    let outcome = if threads == 1 {
        let mut root = search.root();
        let step = search.dfs(&mut root, &ctl, 0);
        ctl.nodes.fetch_add(search.nodes, Ordering::Relaxed);
        ctl.prunes.fetch_add(search.prunes, Ordering::Relaxed);
        match step {
            Step::Found => Feasibility::Found(coloring_from(&root, r)),
            Step::Exhausted => Feasibility::None,
            Step::Aborted => Feasibility::Indeterminate,
        }
    } else {
        let frontier = search.split(4 * threads);
        ctl.nodes.fetch_add(search.nodes, Ordering::Relaxed);
        ctl.prunes.fetch_add(search.prunes, Ordering::Relaxed);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let results: Vec<(usize, Option<Coloring>, bool)> = pool.install(|| {
            frontier
                .into_par_iter()
                .enumerate()
                .map(|(branch, mut state)| {
                    if ctl.should_abort(branch) {
                        return (branch, None, true);
                    }
                    let mut local = Search::new(catalog, r, cfg.vertex_order);
                    let step = local.dfs(&mut state, &ctl, branch);
                    ctl.nodes.fetch_add(local.nodes, Ordering::Relaxed);
                    ctl.prunes.fetch_add(local.prunes, Ordering::Relaxed);
                    match step {
                        Step::Found => {
                            ctl.record_success(branch);
                            (branch, Some(coloring_from(&state, r)), false)
                        }
                        Step::Exhausted => (branch, None, false),
                        Step::Aborted => (branch, None, true),
                    }
                })
                .collect()
        });
        let found = results
            .iter()
            .filter_map(|(b, c, _)| c.as_ref().map(|c| (*b, c)))
            .min_by_key(|(b, _)| *b);
        // In deterministic mode every branch before the reported one ran to
        // exhaustion unless the deadline hit, so the lowest success equals the
        // sequential answer.
        match found {
            Some((_, c)) => Feasibility::Found(c.clone()),
            None if results.iter().any(|(_, _, aborted)| *aborted) => Feasibility::Indeterminate,
            None => Feasibility::None,
        }
    };
    let stats = SearchStats {
        nodes: ctl.nodes.load(Ordering::Relaxed),
        prunes: ctl.prunes.load(Ordering::Relaxed),
        elapsed: started.elapsed(),
    };
    Ok((outcome, stats))
}

/// A rainbow-free exact coloring with `r < k` colors: with fewer than `k`
/// colors no k-set can be rainbow.
fn trivial_coloring(n: usize, r: usize) -> Coloring {
    let colors = (0..n).map(|v| if v < r { v + 1 } else { r }).collect();
    Coloring::exact(r, colors).expect("r <= n")
}

/// Computes `aw(g, k)` with a certificate.
pub fn anti_vdw_number(g: &Graph, k: usize, cfg: &SearchConfig) -> Result<AwResult, SolverError> {
    let catalog = ApCatalog::enumerate(g, k)?;
    anti_vdw_number_with_catalog(g, &catalog, cfg)
}

pub fn anti_vdw_number_with_catalog(
    g: &Graph,
    catalog: &ApCatalog,
    cfg: &SearchConfig,
) -> Result<AwResult, SolverError> {
    let n = g.vertex_count();
    let k = catalog.k();
    if catalog.vertex_count() != n {
        return Err(SolverError::CatalogMismatch);
    }
    let hi_default = n + 1;
    let hi = cfg.upper_bound.map_or(hi_default, |b| b.min(hi_default));
    let started = Instant::now();
    let mut stats = SearchStats::default();

    let mut feasible = (k - 1).min(n);
    let mut certificate = trivial_coloring(n, feasible);
    let finish = |aw: Option<usize>, lo: usize, hi: usize, cert: Coloring, bound, stats: SearchStats| {
        AwResult { k, aw, bracket: (lo, hi), certificate: cert, bound_used: bound, stats, method: Method::Solver }
    };
    loop {
        let r = feasible + 1;
        if r > n {
            stats.elapsed = started.elapsed();
            return Ok(finish(Some(n + 1), n + 1, n + 1, certificate, None, stats));
        }
        if r >= hi {
            // the bound says r = hi is infeasible
            stats.elapsed = started.elapsed();
            return Ok(finish(Some(hi), hi, hi, certificate, Some(hi), stats));
        }
        let mut round = cfg.clone();
        if let Some(t) = cfg.timeout {
            let left = t.saturating_sub(started.elapsed());
            if left.is_zero() {
                stats.elapsed = started.elapsed();
                return Ok(finish(None, r, hi, certificate, None, stats));
            }
            round.timeout = Some(left);
        }
        let (outcome, round_stats) = exists_rainbow_free_coloring(g, catalog, r, &round)?;
        stats.absorb(&round_stats);
        match outcome {
            Feasibility::Found(c) => {
                debug_assert!(verify_certificate(catalog, &c));
                debug_assert!(merge_preserves_rainbow_freeness(catalog, &c));
                feasible = r;
                certificate = c;
            }
            Feasibility::None => {
                stats.elapsed = started.elapsed();
                return Ok(finish(Some(r), r, r, certificate, None, stats));
            }
            Feasibility::Indeterminate => {
                stats.elapsed = started.elapsed();
                return Ok(finish(None, r, hi, certificate, None, stats));
            }
        }
    }
}

/// Exhaustive `aw(g, k)` straight from the definition, for `|V| <= 10`.
///
/// Progressions are found by brute force over ordered k-tuples, and every
/// set partition of `V` into exactly `r` blocks is tried for each `r`; the
/// answer is the least `r` for which all of them contain a rainbow AP.
pub fn naive_oracle_aw(g: &Graph, k: usize) -> Result<usize, SolverError> {
    Ok(naive_oracle(g, k)?.0)
}

/// Like [`naive_oracle_aw`], also returning a rainbow-free exact coloring
/// with `aw - 1` colors.
pub fn naive_oracle(g: &Graph, k: usize) -> Result<(usize, Coloring), SolverError> {
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_CAP {
        return Err(SolverError::OracleTooLarge(n));
    }
    if k < 3 {
        return Err(ApError::InvalidLength(k).into());
    }
    let aps = brute_force_aps(g, k);
    let mut witness = None;
    for r in 1..=n {
        let mut found = None;
        for_each_partition(n, r, &mut |labels| {
            let rainbow = aps.iter().any(|ap| {
                ap.iter()
                    .enumerate()
                    .all(|(i, &x)| ap[i + 1..].iter().all(|&y| labels[x] != labels[y]))
            });
            if rainbow {
                false
            } else {
                found = Some(labels.iter().map(|&l| l + 1).collect::<Vec<_>>());
                true
            }
        });
        match found {
            Some(colors) => witness = Some(Coloring::exact(r, colors).expect("partition is exact")),
            None => {
                let cert = witness.unwrap_or_else(|| trivial_coloring(n, r - 1));
                return Ok((r, cert));
            }
        }
    }
    Ok((n + 1, witness.expect("r = n was feasible")))
}

/// Every k-set with a realizing ordering, found from ordered tuples.
fn brute_force_aps(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut sets = std::collections::BTreeSet::new();
    let mut seq = Vec::with_capacity(k);
    fn rec(g: &Graph, n: usize, k: usize, seq: &mut Vec<usize>, out: &mut std::collections::BTreeSet<Vec<usize>>) {
        if seq.len() == k {
            let d = g.distance(seq[0], seq[1]);
            let spaced = seq.windows(2).all(|w| g.distance(w[0], w[1]) == d);
            if d >= 1 && spaced {
                let mut s = seq.clone();
                s.sort_unstable();
                out.insert(s);
            }
            return;
        }
        for v in 0..n {
            if !seq.contains(&v) {
                seq.push(v);
                rec(g, n, k, seq, out);
                seq.pop();
            }
        }
    }
    rec(g, n, k, &mut seq, &mut sets);
    sets.into_iter().collect()
}

/// Calls `f` on every restricted growth string of length `n` with exactly
/// `r` blocks (labels `0..r`); stops early when `f` returns true.
fn for_each_partition(n: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(pos: usize, blocks: usize, n: usize, r: usize, labels: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == n {
            return blocks == r && f(labels);
        }
        if r - blocks > n - pos {
            return false;
        }
        for label in 0..=blocks.min(r - 1) {
            labels[pos] = label;
            if rec(pos + 1, blocks.max(label + 1), n, r, labels, f) {
                return true;
            }
        }
        false
    }
    let mut labels = vec![0; n];
    rec(0, 0, n, r, &mut labels, f);
}
