//! Shared generators and independent reference computations for the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use aw_core::Graph;
use rand::Rng;

/// Random connected graph: a random recursive tree plus each remaining pair
/// with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("spanning tree keeps it connected")
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    random_connected(rng, n, 0.0)
}

/// All-pairs BFS from the adjacency lists alone.
pub fn bfs_all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist
        })
        .collect()
}

/// Vertex sets of all nondegenerate k-APs, by trying every ordered k-tuple.
pub fn brute_force_ap_sets(g: &Graph, k: usize) -> BTreeSet<Vec<usize>> {
    let dist = bfs_all_pairs(g);
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    let mut seq = Vec::with_capacity(k);
    fn rec(dist: &[Vec<usize>], n: usize, k: usize, seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if seq.len() == k {
            let d = dist[seq[0]][seq[1]];
            if seq.windows(2).all(|w| dist[w[0]][w[1]] == d) {
                let mut s = seq.clone();
                s.sort_unstable();
                out.insert(s);
            }
            return;
        }
        for v in 0..n {
            if seq.contains(&v) {
                continue;
            }
            if seq.len() >= 2 && dist[seq[seq.len() - 1]][v] != dist[seq[0]][seq[1]] {
                continue;
            }
            seq.push(v);
            rec(dist, n, k, seq, out);
            seq.pop();
        }
    }
    rec(&dist, n, k, &mut seq, &mut out);
    out
}
