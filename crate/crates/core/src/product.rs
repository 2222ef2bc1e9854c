//! Cartesian products `G □ H`.
//!
//! Vertex `v_{i,j}` pairs `u_i` of the left factor `G` with `w_j` of the right
//! factor `H`; indices are 1-based in the public labeling and the flat layout
//! is row-major with `i` outer. `G_j` is the copy of `G` sitting over `w_j`,
//! `H_i` is the copy of `H` sitting over `u_i`.

use crate::graph::{Graph, GraphError, DEFAULT_VERTEX_CAP};

/// Bijection between labels `(i, j)` and flat vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductIndex {
    m: usize,
    n: usize,
}

impl ProductIndex {
    pub fn new(m: usize, n: usize) -> Self {
        ProductIndex { m, n }
    }

    pub fn left_len(&self) -> usize {
        self.m
    }

    pub fn right_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.m * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of `v_{i,j}` (1-based `i`, `j`).
    #[inline]
    pub fn flatten(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.m).contains(&i) && (1..=self.n).contains(&j));
        (i - 1) * self.n + (j - 1)
    }

    /// Inverse of [`flatten`](Self::flatten).
    #[inline]
    pub fn unflatten(&self, flat: usize) -> (usize, usize) {
        debug_assert!(flat < self.len());
        (flat / self.n + 1, flat % self.n + 1)
    }

    /// `d_G(u_i, u_h) + d_H(w_j, w_k)` for `a = v_{i,j}`, `b = v_{h,k}`.
    #[inline]
    pub fn distance(&self, left: &Graph, right: &Graph, a: usize, b: usize) -> usize {
        let (ai, aj) = (a / self.n, a % self.n);
        let (bi, bj) = (b / self.n, b % self.n);
        left.distance(ai, bi) + right.distance(aj, bj)
    }
}

/// Which labeled factor copy to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorCopy {
    /// `G_j`: the copy of `G` over `w_j`, `1 <= j <= |H|`.
    G(usize),
    /// `H_i`: the copy of `H` over `u_i`, `1 <= i <= |G|`.
    H(usize),
}

#[derive(Debug, Clone)]
pub struct ProductGraph {
    pub graph: Graph,
    pub index: ProductIndex,
    pub left: Graph,
    pub right: Graph,
}

/// Builds `left □ right`, filling distances by factorization.
pub fn cartesian_product(left: &Graph, right: &Graph) -> Result<ProductGraph, GraphError> {
    cartesian_product_with_cap(left, right, DEFAULT_VERTEX_CAP)
}

pub fn cartesian_product_with_cap(
    left: &Graph,
    right: &Graph,
    cap: usize,
) -> Result<ProductGraph, GraphError> {
    let (m, n) = (left.vertex_count(), right.vertex_count());
    let total = m * n;
    if total > cap {
        return Err(GraphError::TooLarge { n: total, cap });
    }
    let index = ProductIndex::new(m, n);
    let mut adjacency = vec![Vec::new(); total];
    for a in 0..total {
        let (i, j) = (a / n, a % n);
        let list = &mut adjacency[a];
        list.extend(left.neighbors(i).iter().map(|&x| x * n + j));
        list.extend(right.neighbors(j).iter().map(|&y| i * n + y));
        list.sort_unstable();
    }
    let ld = left.raw_distances();
    let rd = right.raw_distances();
    let mut dist = vec![0u16; total * total];
    for a in 0..total {
        let (ai, aj) = (a / n, a % n);
        let row = &mut dist[a * total..(a + 1) * total];
        for bi in 0..m {
            let dl = ld[ai * m + bi];
            let rrow = &rd[aj * n..(aj + 1) * n];
            for (bj, &dr) in rrow.iter().enumerate() {
                row[bi * n + bj] = dl + dr;
            }
        }
    }
    let labels = (0..total)
        .map(|a| {
            let (i, j) = index.unflatten(a);
            format!("v{i},{j}")
        })
        .collect();
    let graph = Graph::from_parts(adjacency, dist).with_labels(labels);
    for row in spot_rows(total) {
        assert!(
            graph.bfs_distances(row).into_iter().eq(graph.distances_from(row)),
            "factorized distance disagrees with BFS from vertex {row}"
        );
    }
    Ok(ProductGraph { graph, index, left: left.clone(), right: right.clone() })
}

fn spot_rows(total: usize) -> Vec<usize> {
    let mut rows = vec![0, total / 2, total - 1];
    rows.dedup();
    rows
}

impl ProductGraph {
    /// Flat index of `v_{i,j}`.
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        self.index.flatten(i, j)
    }

    /// Vertex set of the requested copy, as flat indices in factor order.
    pub fn copy_vertices(&self, which: FactorCopy) -> Result<Vec<usize>, GraphError> {
        let (m, n) = (self.index.left_len(), self.index.right_len());
        match which {
            FactorCopy::G(j) => {
                if !(1..=n).contains(&j) {
                    return Err(GraphError::VertexOutOfRange { vertex: j, n });
                }
                Ok((1..=m).map(|i| self.index.flatten(i, j)).collect())
            }
            FactorCopy::H(i) => {
                if !(1..=m).contains(&i) {
                    return Err(GraphError::VertexOutOfRange { vertex: i, n: m });
                }
                Ok((1..=n).map(|j| self.index.flatten(i, j)).collect())
            }
        }
    }

    /// Distance by factorization; equals `self.graph.distance(a, b)`.
    pub fn factor_distance(&self, a: usize, b: usize) -> usize {
        self.index.distance(&self.left, &self.right, a, b)
    }

    /// BFS cross-check of the stored distances from each listed row.
    pub fn cross_check_rows(&self, rows: impl IntoIterator<Item = usize>) -> bool {
        rows.into_iter()
            .all(|r| self.graph.bfs_distances(r).into_iter().eq(self.graph.distances_from(r)))
    }
}
