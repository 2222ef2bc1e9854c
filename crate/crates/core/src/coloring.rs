use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {vertex} has color {color}, outside 1..={r}")]
    ColorOutOfRange { vertex: usize, color: usize, r: usize },
    #[error("color {0} is never used, so the coloring is not exact")]
    NotExact(usize),
    #[error("coloring covers {found} vertices, graph has {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cannot merge color classes {0} and {1}")]
    BadMerge(usize, usize),
}

/// A vertex coloring with colors `1..=r`.
///
/// Serializes as `{"r": int, "colors": [int, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    r: usize,
    colors: Vec<usize>,
}

impl Coloring {
    /// Checks that every color lies in `1..=r`; exactness is a separate
    /// property, see [`is_exact`](Self::is_exact).
    pub fn new(r: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        let coloring = Coloring { r, colors };
        coloring.validate()?;
        Ok(coloring)
    }

    /// Like [`new`](Self::new) but also requires every color to appear.
    pub fn exact(r: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        let coloring = Self::new(r, colors)?;
        if let Some(missing) = coloring.missing_color() {
            return Err(ColoringError::NotExact(missing));
        }
        Ok(coloring)
    }

    /// Re-checks the range invariant, e.g. after deserializing.
    pub fn validate(&self) -> Result<(), ColoringError> {
        for (vertex, &color) in self.colors.iter().enumerate() {
            if color == 0 || color > self.r {
                return Err(ColoringError::ColorOutOfRange { vertex, color, r: self.r });
            }
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn missing_color(&self) -> Option<usize> {
        let used = self.used_colors();
        (1..=self.r).find(|c| !used.contains(c))
    }

    pub fn is_exact(&self) -> bool {
        self.missing_color().is_none()
    }

    pub fn used_colors(&self) -> BTreeSet<usize> {
        self.colors.iter().copied().collect()
    }

    /// Vertices per color, indexed by color (slot 0 unused).
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.r + 1];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        sizes
    }

    /// `c(S)` for a vertex subset `S`.
    pub fn colors_of(&self, subset: &[usize]) -> BTreeSet<usize> {
        subset.iter().map(|&v| self.colors[v]).collect()
    }

    /// Merges class `b` into class `a` and renumbers so that colors stay
    /// `1..=r-1` in order of their old values.
    pub fn merge(&self, a: usize, b: usize) -> Result<Coloring, ColoringError> {
        if a == b || a == 0 || b == 0 || a > self.r || b > self.r {
            return Err(ColoringError::BadMerge(a, b));
        }
        let mut renumber = BTreeMap::new();
        for c in (1..=self.r).filter(|&c| c != b) {
            let next = renumber.len() + 1;
            renumber.insert(c, next);
        }
        let colors = self
            .colors
            .iter()
            .map(|&c| renumber[&if c == b { a } else { c }])
            .collect();
        Ok(Coloring { r: self.r - 1, colors })
    }

    /// Merges the two least-used classes (ties broken by color value).
    pub fn merge_least_used(&self) -> Result<Coloring, ColoringError> {
        let sizes = self.class_sizes();
        let mut order: Vec<usize> = (1..=self.r).collect();
        order.sort_by_key(|&c| (sizes[c], c));
        match order.as_slice() {
            [a, b, ..] => self.merge((*a).min(*b), (*a).max(*b)),
            _ => Err(ColoringError::BadMerge(0, 0)),
        }
    }

    /// Relabels colors in order of first appearance, the canonical form used
    /// by the search.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![0usize; self.r + 1];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == 0 {
                    next += 1;
                    map[c] = next;
                }
                map[c]
            })
            .collect();
        Coloring { r: self.r, colors }
    }
}
