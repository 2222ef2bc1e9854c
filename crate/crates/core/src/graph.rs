//! Immutable simple connected graphs with a dense hop-distance matrix.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Largest vertex count accepted by the default constructors.
pub const DEFAULT_VERTEX_CAP: usize = 4096;

const UNREACHED: u16 = u16::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid size {n}: {reason}")]
    InvalidSize { n: usize, reason: &'static str },
    #[error("vertex count {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected; components: {components:?}")]
    Disconnected { components: Vec<Vec<usize>> },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A simple, undirected, connected graph.
///
/// Distances are computed once at construction and stored densely, so every
/// distance query afterwards is a table lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<u16>,
    labels: Option<Vec<String>>,
}

/// Two vertices plus an associated distance or eccentricity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPair {
    pub u: usize,
    pub v: usize,
    pub value: usize,
}

/// A pair `{u, v}` with `ecc(u) = ecc(v) = d(u, v) < diam`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlmostPeripheralPair {
    pub pair: VertexPair,
    /// `v` is the only vertex at distance `ecc(u)` from `u`.
    pub u_unique: bool,
    /// `u` is the only vertex at distance `ecc(v)` from `v`.
    pub v_unique: bool,
}

impl AlmostPeripheralPair {
    pub fn uniquely_realized(&self) -> bool {
        self.u_unique && self.v_unique
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges,
    /// out-of-range endpoints and disconnected input.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edges_with_cap(n, edges, DEFAULT_VERTEX_CAP)
    }

    pub fn from_edges_with_cap(
        n: usize,
        edges: &[(usize, usize)],
        cap: usize,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidSize { n, reason: "a graph needs at least one vertex" });
        }
        if n > cap {
            return Err(GraphError::TooLarge { n, cap });
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(a, b) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self::from_adjacency(adjacency)
    }

    /// Builds from already-validated sorted adjacency lists, computing all
    /// distances by BFS.
    pub(crate) fn from_adjacency(adjacency: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = adjacency.len();
        let mut dist = vec![UNREACHED; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(x) = queue.pop_front() {
                let dx = row[x];
                for &y in &adjacency[x] {
                    if row[y] == UNREACHED {
                        row[y] = dx + 1;
                        queue.push_back(y);
                    }
                }
            }
            if src == 0 && row.contains(&UNREACHED) {
                return Err(GraphError::Disconnected { components: components(&adjacency) });
            }
        }
        Ok(Graph { n, adjacency, dist, labels: None })
    }

    /// Builds from adjacency lists and a distance matrix supplied by the
    /// caller (used by the product construction).
    pub(crate) fn from_parts(adjacency: Vec<Vec<usize>>, dist: Vec<u16>) -> Self {
        debug_assert_eq!(dist.len(), adjacency.len() * adjacency.len());
        Graph { n: adjacency.len(), adjacency, dist, labels: None }
    }

    /// The path `u_1 ... u_n`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidSize { n, reason: "a path needs at least one vertex" });
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// The cycle `w_1 ... w_n w_1`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidSize { n, reason: "a cycle needs at least three vertices" });
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// The star `K_{1,leaves}` with the centre at index 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Parses the edge-list text format: a header line `n m` followed by `m`
    /// lines `u v` with 0-based endpoints. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(GraphError::Parse {
                    line,
                    message: format!("expected two fields, found {}", fields.len()),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line,
                    message: format!("`{s}` is not a nonnegative integer"),
                })
            };
            let (a, b) = (parse(fields[0])?, parse(fields[1])?);
            let Some((n, m)) = header else {
                header = Some((a, b));
                continue;
            };
            if edges.len() == m {
                return Err(GraphError::Parse { line, message: format!("more than the declared {m} edges") });
            }
            let here = |e: GraphError| GraphError::Parse { line, message: e.to_string() };
            if a >= n || b >= n {
                return Err(here(GraphError::VertexOutOfRange { vertex: a.max(b), n }));
            }
            if a == b {
                return Err(here(GraphError::SelfLoop(a)));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(here(GraphError::DuplicateEdge(a, b)));
            }
            edges.push((a, b));
        }
        let Some((n, m)) = header else {
            return Err(GraphError::Parse { line: 0, message: "missing `n m` header".into() });
        };
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: text.lines().count(),
                message: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Self::from_edges(n, &edges)
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (a, b) in edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adjacency.iter().enumerate() {
            edges.extend(list.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    #[inline]
    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.dist[a * self.n + b] as usize
    }

    /// Row of the distance matrix for `v`.
    pub fn distances_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.dist[v * self.n..(v + 1) * self.n].iter().map(|&d| d as usize)
    }

    pub(crate) fn raw_distances(&self) -> &[u16] {
        &self.dist
    }

    /// Fresh BFS from `src`, independent of the stored matrix.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Recomputes every row by BFS and compares with the stored matrix.
    pub fn verify_distances(&self) -> bool {
        (0..self.n).all(|v| self.bfs_distances(v).into_iter().eq(self.distances_from(v)))
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).max().unwrap_or(0)
    }

    pub fn diameter(&self) -> usize {
        self.dist.iter().copied().max().unwrap_or(0) as usize
    }

    /// Number of vertices at distance `ecc(v)` from `v`.
    pub fn eccentricity_multiplicity(&self, v: usize) -> usize {
        let ecc = self.eccentricity(v);
        self.distances_from(v).filter(|&d| d == ecc).count()
    }

    /// Whether the subgraph induced by `subset` preserves all distances.
    /// Returns false when the induced subgraph is disconnected.
    pub fn is_isometric_subgraph(&self, subset: &[usize]) -> bool {
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return false;
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let k = members.len();
        let mut dist = vec![usize::MAX; k];
        let mut queue = VecDeque::with_capacity(k);
        for (si, &s) in members.iter().enumerate() {
            dist.fill(usize::MAX);
            dist[si] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let dx = dist[local[x]];
                for &y in &self.adjacency[x] {
                    let ly = local[y];
                    if ly != usize::MAX && dist[ly] == usize::MAX {
                        dist[ly] = dx + 1;
                        queue.push_back(y);
                    }
                }
            }
            for (ti, &t) in members.iter().enumerate() {
                if dist[ti] != self.distance(s, t) {
                    return false;
                }
            }
        }
        true
    }

    /// Every unordered pair `{u, v}` with `ecc(u) = ecc(v) = d(u, v) < diam`,
    /// annotated with whether each eccentricity is realized only by the other
    /// endpoint.
    pub fn almost_peripheral_pairs(&self) -> Vec<AlmostPeripheralPair> {
        let diam = self.diameter();
        let ecc: Vec<usize> = (0..self.n).map(|v| self.eccentricity(v)).collect();
        let mut out = Vec::new();
        for u in 0..self.n {
            if ecc[u] >= diam {
                continue;
            }
            for v in u + 1..self.n {
                if ecc[v] == ecc[u] && self.distance(u, v) == ecc[u] {
                    out.push(AlmostPeripheralPair {
                        pair: VertexPair { u, v, value: ecc[u] },
                        u_unique: self.eccentricity_multiplicity(u) == 1,
                        v_unique: self.eccentricity_multiplicity(v) == 1,
                    });
                }
            }
        }
        out
    }

    /// Sorted degree sequence, ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        degrees
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n
    }
}

fn components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &y in &adjacency[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
