//! Arithmetic progressions in graphs and rainbow checks.
//!
//! A k-AP is a vertex *set* admitting an ordering `v_1, ..., v_k` with
//! `d(v_i, v_{i+1}) = d` for a fixed `d >= 1`. Only nondegenerate progressions
//! (pairwise distinct vertices) are catalogued, since a repeated vertex can
//! never be rainbow.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::product::{FactorCopy, ProductGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApError {
    #[error("progression length k = {0} is invalid, need k >= 3")]
    InvalidLength(usize),
    #[error("coloring covers {found} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// All nondegenerate k-APs of a graph, one entry per vertex set.
#[derive(Debug, Clone)]
pub struct ApCatalog {
    k: usize,
    n: usize,
    /// Canonical realizing sequences, `k` vertices per entry.
    terms: Vec<u32>,
    differences: Vec<u32>,
    /// AP ids through each vertex.
    through: Vec<Vec<u32>>,
}

impl ApCatalog {
    /// Enumerates every nondegenerate k-AP of `g`.
    ///
    /// Each vertex set is stored once under its lexicographically least
    /// realizing sequence; entries are sorted by that sequence.
    pub fn enumerate(g: &Graph, k: usize) -> Result<Self, ApError> {
        if k < 3 {
            return Err(ApError::InvalidLength(k));
        }
        let n = g.vertex_count();
        let diam = g.diameter();
        // shells[v][d] = vertices at distance d from v
        let shells: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|v| {
                let mut shell = vec![Vec::new(); diam + 1];
                for (u, d) in g.distances_from(v).enumerate() {
                    shell[d].push(u);
                }
                shell
            })
            .collect();

        let mut best: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
        let mut offer = |seq: Vec<usize>, d: usize| {
            let mut key = seq.clone();
            key.sort_unstable();
            match best.entry(key) {
                Entry::Occupied(mut slot) => {
                    if seq < slot.get().0 {
                        slot.insert((seq, d));
                    }
                }
                Entry::Vacant(slot) => {
                    slot.insert((seq, d));
                }
            }
        };

        if k == 3 {
            for y in 0..n {
                for d in 1..=diam {
                    let shell = &shells[y][d];
                    for (a, &x) in shell.iter().enumerate() {
                        for &z in &shell[a + 1..] {
                            // x < z, so (x, y, z) precedes its reversal
                            offer(vec![x, y, z], d);
                        }
                    }
                }
            }
        } else {
            let mut seq = Vec::with_capacity(k);
            for start in 0..n {
                for d in 1..=diam {
                    seq.clear();
                    seq.push(start);
                    extend(&shells, k, d, &mut seq, &mut offer);
                }
            }
        }

        let mut entries: Vec<(Vec<usize>, usize)> = best.into_values().collect();
        entries.sort_unstable();
        let mut terms = Vec::with_capacity(entries.len() * k);
        let mut differences = Vec::with_capacity(entries.len());
        let mut through = vec![Vec::new(); n];
        for (id, (seq, d)) in entries.into_iter().enumerate() {
            for &v in &seq {
                through[v].push(id as u32);
                terms.push(v as u32);
            }
            differences.push(d as u32);
        }
        Ok(ApCatalog { k, n, terms, differences, through })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.differences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differences.is_empty()
    }

    /// Canonical sequence of AP `id`.
    #[inline]
    pub fn terms(&self, id: usize) -> &[u32] {
        &self.terms[id * self.k..(id + 1) * self.k]
    }

    pub fn difference(&self, id: usize) -> usize {
        self.differences[id] as usize
    }

    /// Ids of the APs containing `v`.
    #[inline]
    pub fn through(&self, v: usize) -> &[u32] {
        &self.through[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u32])> + '_ {
        (0..self.len()).map(move |id| (self.difference(id), self.terms(id)))
    }

    /// One line `d v1 ... vk` per AP.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (d, terms) in self.iter() {
            let _ = write!(out, "{d}");
            for v in terms {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    /// Checks every stored entry against the distance matrix.
    pub fn validate(&self, g: &Graph) -> bool {
        self.iter().all(|(d, t)| {
            let distinct = t.iter().collect::<BTreeSet<_>>().len() == self.k;
            let spaced = t.windows(2).all(|w| g.distance(w[0] as usize, w[1] as usize) == d);
            d >= 1 && distinct && spaced
        })
    }

    /// An AP whose vertices carry pairwise distinct colors, if any.
    pub fn find_rainbow(&self, colors: &[usize]) -> Option<Vec<usize>> {
        (0..self.len())
            .find(|&id| is_rainbow(self.terms(id), colors))
            .map(|id| self.terms(id).iter().map(|&v| v as usize).collect())
    }

    pub fn is_rainbow_free(&self, coloring: &Coloring) -> bool {
        coloring.len() == self.n && self.find_rainbow(coloring.colors()).is_none()
    }

    /// Hot-path check after assigning `v` in a partial coloring (`0` marks an
    /// unassigned vertex): false iff some fully assigned AP through `v` is
    /// rainbow.
    pub fn incremental_check(&self, partial: &[usize], v: usize) -> bool {
        self.through[v].iter().all(|&id| {
            let t = self.terms(id as usize);
            t.iter().any(|&x| partial[x as usize] == 0) || !is_rainbow(t, partial)
        })
    }
}

fn extend<F: FnMut(Vec<usize>, usize)>(
    shells: &[Vec<Vec<usize>>],
    k: usize,
    d: usize,
    seq: &mut Vec<usize>,
    offer: &mut F,
) {
    if seq.len() == k {
        offer(seq.clone(), d);
        return;
    }
    let last = *seq.last().expect("sequence seeded with a start vertex");
    let Some(shell) = shells[last].get(d) else { return };
    for &next in shell {
        if !seq.contains(&next) {
            seq.push(next);
            extend(shells, k, d, seq, offer);
            seq.pop();
        }
    }
}

#[inline]
fn is_rainbow(terms: &[u32], colors: &[usize]) -> bool {
    match *terms {
        [a, b, c] => {
            let (a, b, c) = (colors[a as usize], colors[b as usize], colors[c as usize]);
            a != b && b != c && a != c
        }
        _ => {
            for (i, &x) in terms.iter().enumerate() {
                for &y in &terms[i + 1..] {
                    if colors[x as usize] == colors[y as usize] {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// An isometric subgraph carrying at least three colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Triangle([usize; 3]),
    /// Vertex sequence of a geodesic.
    Path(Vec<usize>),
}

impl Witness {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Witness::Triangle(t) => t.to_vec(),
            Witness::Path(p) => p.clone(),
        }
    }
}

/// Finds a three-colored triangle, or else a geodesic whose endpoints and
/// one interior vertex carry three distinct colors. Such a structure exists
/// in every connected graph with at least three colors present.
pub fn trichromatic_witness(g: &Graph, coloring: &Coloring) -> Result<Witness, ApError> {
    let n = g.vertex_count();
    if coloring.len() != n {
        return Err(ApError::LengthMismatch { expected: n, found: coloring.len() });
    }
    if n < 3 || coloring.used_colors().len() < 3 {
        return Err(ApError::Precondition("need at least three vertices and three colors".into()));
    }
    let c = coloring.colors();
    for a in 0..n {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &x in g.neighbors(b).iter().filter(|&&x| x > b) {
                if g.is_adjacent(a, x) && c[a] != c[b] && c[b] != c[x] && c[a] != c[x] {
                    return Ok(Witness::Triangle([a, b, x]));
                }
            }
        }
    }
    for x in 0..n {
        for z in x + 1..n {
            if c[x] == c[z] {
                continue;
            }
            let dxz = g.distance(x, z);
            let middle = (0..n).find(|&w| {
                c[w] != c[x] && c[w] != c[z] && g.distance(x, w) + g.distance(w, z) == dxz
            });
            if let Some(w) = middle {
                let mut path = geodesic(g, x, w);
                path.extend(geodesic(g, w, z).into_iter().skip(1));
                return Ok(Witness::Path(path));
            }
        }
    }
    Err(ApError::Precondition("no trichromatic geodesic found; graph must be disconnected".into()))
}

/// One shortest path from `a` to `b`, choosing the smallest-index neighbor
/// at each step.
pub fn geodesic(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let target = g.distance(cur, b) - 1;
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&y| g.distance(y, b) == target)
            .expect("connected graph has a neighbor one step closer");
        path.push(cur);
    }
    path
}

/// Whether `seq` is a path whose positions realize graph distances.
pub fn is_isometric_path(g: &Graph, seq: &[usize]) -> bool {
    seq.iter().enumerate().all(|(i, &a)| {
        seq.iter().enumerate().all(|(j, &b)| g.distance(a, b) == i.abs_diff(j))
    })
}

/// Structural facts about rainbow-free exact colorings of products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StructuralFact {
    /// Each factor copy carries at most two colors.
    CopyAtMostTwoColors,
    /// Copies over adjacent factor vertices carry at most two colors together.
    AdjacentCopiesAtMostTwoColors,
    /// `|c(copy_j) \ c(copy_i)| <= 1` for every pair of copies.
    CopyDifferenceAtMostOne,
    /// Some color occurs in every copy.
    ColorInEveryCopy,
}

/// Which family of copies a fact is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CopyFamily {
    /// `G_1, ..., G_|H|`.
    G,
    /// `H_1, ..., H_|G|`.
    H,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactStatus {
    Pass,
    /// Copy indices (1-based) involved in each violation.
    Fail(Vec<Vec<usize>>),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactCheck {
    pub fact: StructuralFact,
    pub family: CopyFamily,
    pub status: FactStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<FactCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, FactStatus::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &FactCheck> {
        self.checks.iter().filter(|c| matches!(c.status, FactStatus::Fail(_)))
    }
}

/// Evaluates the four structural facts on both copy families of `p`.
///
/// The coloring must be exact, rainbow-free with respect to `catalog` (k = 3)
/// and use at least three colors; otherwise the audit is refused.
pub fn structural_audit(
    p: &ProductGraph,
    catalog: &ApCatalog,
    coloring: &Coloring,
) -> Result<AuditReport, ApError> {
    let n = p.graph.vertex_count();
    if coloring.len() != n {
        return Err(ApError::LengthMismatch { expected: n, found: coloring.len() });
    }
    if catalog.k() != 3 || catalog.vertex_count() != n {
        return Err(ApError::Precondition("audit needs the 3-AP catalog of the product".into()));
    }
    if coloring.r() < 3 || !coloring.is_exact() {
        return Err(ApError::Precondition("coloring must be exact with r >= 3".into()));
    }
    if let Some(ap) = catalog.find_rainbow(coloring.colors()) {
        return Err(ApError::Precondition(format!("coloring has rainbow AP {ap:?}")));
    }

    let (gm, hn) = (p.index.left_len(), p.index.right_len());
    let mut checks = Vec::new();
    for family in [CopyFamily::G, CopyFamily::H] {
        // `base` indexes the copies, `fibre` is the factor each copy replicates
        let (base, fibre_len, base_len) = match family {
            CopyFamily::G => (&p.right, gm, hn),
            CopyFamily::H => (&p.left, hn, gm),
        };
        let color_sets: Vec<BTreeSet<usize>> = (1..=base_len)
            .map(|i| {
                let which = match family {
                    CopyFamily::G => FactorCopy::G(i),
                    CopyFamily::H => FactorCopy::H(i),
                };
                coloring.colors_of(&p.copy_vertices(which).expect("index in range"))
            })
            .collect();

        let two_or_more = fibre_len >= 2 && base_len >= 2;
        let big_base = fibre_len >= 2 && base_len >= 3;
        let status = |ok: bool, reason: &str, violations: Vec<Vec<usize>>| {
            if !ok {
                FactStatus::Skipped(reason.into())
            } else if violations.is_empty() {
                FactStatus::Pass
            } else {
                FactStatus::Fail(violations)
            }
        };

        let v1: Vec<Vec<usize>> = (0..base_len)
            .filter(|&i| color_sets[i].len() > 2)
            .map(|i| vec![i + 1])
            .collect();
        checks.push(FactCheck {
            fact: StructuralFact::CopyAtMostTwoColors,
            family,
            status: status(two_or_more, "needs both factors of order >= 2", v1),
        });

        let v2: Vec<Vec<usize>> = base
            .edges()
            .into_iter()
            .filter(|&(a, b)| color_sets[a].union(&color_sets[b]).count() > 2)
            .map(|(a, b)| vec![a + 1, b + 1])
            .collect();
        checks.push(FactCheck {
            fact: StructuralFact::AdjacentCopiesAtMostTwoColors,
            family,
            status: status(big_base, "needs copied factor of order >= 2 and base of order >= 3", v2),
        });

        let mut v3 = Vec::new();
        for i in 0..base_len {
            for j in 0..base_len {
                if color_sets[j].difference(&color_sets[i]).count() > 1 {
                    v3.push(vec![j + 1, i + 1]);
                }
            }
        }
        checks.push(FactCheck {
            fact: StructuralFact::CopyDifferenceAtMostOne,
            family,
            status: status(true, "", v3),
        });

        let common = color_sets
            .iter()
            .skip(1)
            .fold(color_sets[0].clone(), |acc, s| acc.intersection(s).copied().collect());
        let v4 = if common.is_empty() { vec![(1..=base_len).collect()] } else { Vec::new() };
        checks.push(FactCheck {
            fact: StructuralFact::ColorInEveryCopy,
            family,
            status: status(big_base, "needs copied factor of order >= 2 and base of order >= 3", v4),
        });
    }
    Ok(AuditReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::cartesian_product;

    /// Ordered-triple brute force: sets {x, y, z} with some middle y.
    fn brute_force_3ap_sets(g: &Graph) -> BTreeSet<Vec<usize>> {
        let n = g.vertex_count();
        let mut out = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    let d = g.distance(x, y);
                    if d >= 1 && g.distance(y, z) == d {
                        let mut s = vec![x, y, z];
                        s.sort_unstable();
                        out.insert(s);
                    }
                }
            }
        }
        out
    }

    fn catalog_sets(cat: &ApCatalog) -> BTreeSet<Vec<usize>> {
        cat.iter()
            .map(|(_, t)| {
                let mut s: Vec<usize> = t.iter().map(|&v| v as usize).collect();
                s.sort_unstable();
                s
            })
            .collect()
    }

    #[test]
    fn small_catalogs_match_brute_force() {
        let c4 = Graph::cycle(4).unwrap();
        let cat = ApCatalog::enumerate(&c4, 3).unwrap();
        assert_eq!(brute_force_3ap_sets(&c4).len(), 4);
        assert_eq!(cat.len(), 4);
        assert_eq!(
            catalog_sets(&cat),
            BTreeSet::from([vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3]])
        );

        let p3 = Graph::path(3).unwrap();
        assert_eq!(ApCatalog::enumerate(&p3, 3).unwrap().len(), 1);
        let c3 = Graph::cycle(3).unwrap();
        let cat = ApCatalog::enumerate(&c3, 3).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.difference(0), 1);
        assert_eq!(cat.terms(0), &[0, 1, 2]);
    }

    #[test]
    fn rejects_short_progressions() {
        let g = Graph::path(4).unwrap();
        assert_eq!(ApCatalog::enumerate(&g, 2).unwrap_err(), ApError::InvalidLength(2));
    }

    #[test]
    fn dump_format() {
        let cat = ApCatalog::enumerate(&Graph::path(3).unwrap(), 3).unwrap();
        assert_eq!(cat.dump(), "1 0 1 2\n");
    }

    #[test]
    fn four_term_progressions_on_a_path() {
        let g = Graph::path(7).unwrap();
        let cat = ApCatalog::enumerate(&g, 4).unwrap();
        assert!(cat.validate(&g));
        // d=1: 4 windows, d=2: starts 0..=0 give {0,2,4,6}; nothing else fits
        assert_eq!(catalog_sets(&cat).len(), 5);
    }

    #[test]
    fn lemma7_coloring_on_p2_c4_is_rainbow_free() {
        let p = cartesian_product(&Graph::path(2).unwrap(), &Graph::cycle(4).unwrap()).unwrap();
        let mut colors = vec![1; 8];
        colors[p.vertex(1, 1)] = 2;
        colors[p.vertex(2, 3)] = 3;
        let cat = ApCatalog::enumerate(&p.graph, 3).unwrap();
        assert_eq!(cat.find_rainbow(&colors), None);
    }

    #[test]
    fn triangle_is_rainbow_under_three_colors() {
        let c3 = Graph::cycle(3).unwrap();
        let cat = ApCatalog::enumerate(&c3, 3).unwrap();
        assert_eq!(cat.find_rainbow(&[1, 2, 3]), Some(vec![0, 1, 2]));
        assert_eq!(cat.find_rainbow(&[1, 2, 2]), None);
    }

    #[test]
    fn two_colorings_are_never_rainbow() {
        let g = Graph::cycle(9).unwrap();
        let cat = ApCatalog::enumerate(&g, 3).unwrap();
        for mask in 0u32..512 {
            let colors: Vec<usize> = (0..9).map(|i| 1 + ((mask >> i) & 1) as usize).collect();
            assert_eq!(cat.find_rainbow(&colors), None);
        }
    }

    #[test]
    fn incremental_check_cases() {
        let g = Graph::path(3).unwrap();
        let cat = ApCatalog::enumerate(&g, 3).unwrap();
        assert!(!cat.incremental_check(&[1, 2, 3], 2));
        assert!(cat.incremental_check(&[1, 2, 1], 2));
        assert!(cat.incremental_check(&[1, 0, 3], 2));
    }

    #[test]
    fn witnesses_on_tiny_graphs() {
        let p3 = Graph::path(3).unwrap();
        let c = Coloring::exact(3, vec![1, 2, 3]).unwrap();
        assert_eq!(trichromatic_witness(&p3, &c).unwrap(), Witness::Path(vec![0, 1, 2]));
        let c3 = Graph::cycle(3).unwrap();
        assert_eq!(trichromatic_witness(&c3, &c).unwrap(), Witness::Triangle([0, 1, 2]));
        let two = Coloring::exact(2, vec![1, 2, 2]).unwrap();
        assert!(trichromatic_witness(&p3, &two).is_err());
    }

    #[test]
    fn audit_refuses_rainbow_colorings() {
        let p = cartesian_product(&Graph::path(2).unwrap(), &Graph::cycle(4).unwrap()).unwrap();
        let cat = ApCatalog::enumerate(&p.graph, 3).unwrap();
        let c = Coloring::exact(3, vec![1, 2, 3, 1, 1, 1, 1, 1]).unwrap();
        assert!(matches!(structural_audit(&p, &cat, &c), Err(ApError::Precondition(_))));
    }
}
