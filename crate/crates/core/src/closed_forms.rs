//! Closed-form values of `aw(·, 3)` for paths, cycles and their products.
//!
//! The cycle formula depends on a classification of odd primes `p` by
//! `aw(C_p, 3) ∈ {3, 4}`. That classification is computed by the solver and
//! kept in a [`PrimeClassCache`], optionally persisted as text lines
//! `p value method`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::graph::Graph;
use crate::solver::{anti_vdw_number, Method, SearchConfig, SolverError};

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{family} formula is undefined for {params}: {reason}")]
    OutOfDomain { family: &'static str, params: String, reason: &'static str },
    #[error("solver could not classify {0} within its time budget")]
    Indeterminate(u64),
    #[error("solver returned aw(C_{p}, 3) = {value}, expected 3 or 4")]
    BadClass { p: u64, value: usize },
    #[error("cache {path}: line {line}: {message}")]
    CacheFormat { path: String, line: usize, message: String },
    #[error("cache I/O: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A value together with a human-readable account of how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub value: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeClass {
    pub value: usize,
    pub method: Method,
}

/// Solver-derived values of `aw(C_p, 3)` for odd primes `p`.
#[derive(Debug, Default)]
pub struct PrimeClassCache {
    entries: BTreeMap<u64, PrimeClass>,
    path: Option<PathBuf>,
}

impl PrimeClassCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; later misses are written back to it.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, FormulaError> {
        let path = path.as_ref().to_path_buf();
        let mut cache = PrimeClassCache { entries: BTreeMap::new(), path: Some(path.clone()) };
        match fs::read_to_string(&path) {
            Ok(text) => cache.load_text(&text, &path.display().to_string())?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        Ok(cache)
    }

    fn load_text(&mut self, text: &str, origin: &str) -> Result<(), FormulaError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| FormulaError::CacheFormat {
                path: origin.to_string(),
                line: idx + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [p, value, method] = fields[..] else {
                return Err(bad(format!("expected `p value method`, got `{line}`")));
            };
            let p: u64 = p.parse().map_err(|_| bad(format!("bad prime `{p}`")))?;
            let value: usize = value.parse().map_err(|_| bad(format!("bad value `{value}`")))?;
            let method = match method {
                "solver" => Method::Solver,
                "oracle" => Method::Oracle,
                other => return Err(bad(format!("unknown method `{other}`"))),
            };
            if !is_odd_prime(p) {
                return Err(bad(format!("{p} is not an odd prime")));
            }
            if !(3..=4).contains(&value) {
                return Err(bad(format!("class {value} outside {{3, 4}}")));
            }
            self.entries.insert(p, PrimeClass { value, method });
        }
        Ok(())
    }

    pub fn get(&self, p: u64) -> Option<PrimeClass> {
        self.entries.get(&p).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, PrimeClass)> + '_ {
        self.entries.iter().map(|(&p, &c)| (p, c))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (p, class) in self.entries() {
            let method = match class.method {
                Method::Solver => "solver",
                Method::Oracle => "oracle",
            };
            let _ = writeln!(out, "{p} {} {method}", class.value);
        }
        out
    }

    /// Writes the cache atomically (temp file + rename), if it has a path.
    pub fn save(&self) -> Result<(), FormulaError> {
        let Some(path) = &self.path else { return Ok(()) };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `aw(C_p, 3)` for an odd prime `p`, solving on a cache miss.
pub fn classify_prime(
    p: u64,
    cache: &mut PrimeClassCache,
    cfg: &SearchConfig,
) -> Result<usize, FormulaError> {
    if !is_odd_prime(p) {
        return Err(FormulaError::NotOddPrime(p));
    }
    if let Some(class) = cache.get(p) {
        return Ok(class.value);
    }
    let cycle = Graph::cycle(p as usize).map_err(|_| FormulaError::NotOddPrime(p))?;
    let result = anti_vdw_number(&cycle, 3, cfg)?;
    let value = result.aw.ok_or(FormulaError::Indeterminate(p))?;
    if !(3..=4).contains(&value) {
        return Err(FormulaError::BadClass { p, value });
    }
    cache.entries.insert(p, PrimeClass { value, method: result.method });
    cache.save()?;
    Ok(value)
}

/// `aw(C_n, 3)` from the factorization of `n`.
pub fn aw_cycle_formula(
    n: usize,
    cache: &mut PrimeClassCache,
    cfg: &SearchConfig,
) -> Result<usize, FormulaError> {
    Ok(cycle_derivation(n, cache, cfg)?.value)
}

pub fn cycle_derivation(
    n: usize,
    cache: &mut PrimeClassCache,
    cfg: &SearchConfig,
) -> Result<Derivation, FormulaError> {
    if n < 3 {
        return Err(FormulaError::OutOfDomain {
            family: "cycle",
            params: n.to_string(),
            reason: "need n >= 3",
        });
    }
    let factors = factorize(n as u64);
    let base = if n % 2 == 0 { 3 } else { 2 };
    let mut value = base;
    let mut terms = Vec::new();
    for &(p, e) in &factors {
        if p == 2 {
            terms.push(format!("2^{e} (no contribution)"));
            continue;
        }
        let class = classify_prime(p, cache, cfg)?;
        let weight = if class == 3 { 1 } else { 2 };
        value += weight * e as usize;
        terms.push(format!("{p}^{e} with aw(C_{p},3) = {class} adds {}", weight * e as usize));
    }
    let factorization = factors
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ");
    let parity = if n % 2 == 0 { "even" } else { "odd" };
    let detail = format!(
        "n = {n} = {factorization}; {parity} n gives base {base}; {}; total {value}",
        if terms.is_empty() { "no prime factors".to_string() } else { terms.join(", ") },
    );
    Ok(Derivation { value, detail })
}

/// The unique `m >= 1` with `7·3^(m-2) + 1 <= n <= 21·3^(m-2)`, for `n >= 4`.
pub fn path_bracket(n: u64) -> Option<u32> {
    if n < 4 {
        return None;
    }
    // multiply through by 9: 7·3^m + 9 <= 9n <= 21·3^m
    let mut m = 1u32;
    loop {
        let pow = 3u64.checked_pow(m)?;
        if 7 * pow + 9 <= 9 * n && 9 * n <= 21 * pow {
            return Some(m);
        }
        if 7 * pow + 9 > 9 * n {
            return None;
        }
        m += 1;
    }
}

/// `aw(P_n, 3)`.
pub fn aw_path_formula(n: usize) -> Result<usize, FormulaError> {
    Ok(path_derivation(n)?.value)
}

pub fn path_derivation(n: usize) -> Result<Derivation, FormulaError> {
    if n < 3 {
        return Err(FormulaError::OutOfDomain {
            family: "path",
            params: n.to_string(),
            reason: "need n >= 3",
        });
    }
    if n == 3 {
        return Ok(Derivation {
            value: 3,
            detail: "n = 3: the only 3-AP is the whole path, so any exact 3-coloring is rainbow".into(),
        });
    }
    let m = path_bracket(n as u64).expect("brackets tile n >= 4");
    let power = 3u64.pow(m) == n as u64;
    let value = m as usize + if power { 2 } else { 3 };
    let lo = (7 * 3u64.pow(m) + 9).div_ceil(9);
    let hi = 21 * 3u64.pow(m) / 9;
    let detail = format!(
        "n = {n} lies in [{lo}, {hi}] so m = {m}; n {} 3^{m}; value m + {} = {value}",
        if power { "=" } else { "!=" },
        if power { 2 } else { 3 },
    );
    Ok(Derivation { value, detail })
}

/// `aw(P_m □ P_n, 3)`.
pub fn aw_grid_formula(m: usize, n: usize) -> Result<usize, FormulaError> {
    Ok(grid_derivation(m, n)?.value)
}

pub fn grid_derivation(m: usize, n: usize) -> Result<Derivation, FormulaError> {
    if m < 2 || n < 2 {
        return Err(FormulaError::OutOfDomain {
            family: "grid",
            params: format!("{m},{n}"),
            reason: "need m, n >= 2",
        });
    }
    let special = |a: usize, b: usize| (a == 2 && b % 2 == 0) || (a == 3 && b % 2 == 1);
    let (value, why) = if special(m, n) || special(n, m) {
        (3, "one side is 2 with the other even, or 3 with the other odd")
    } else {
        (4, "neither side is 2 against an even side nor 3 against an odd side")
    };
    Ok(Derivation { value, detail: format!("P_{m} x P_{n}: {why}; value {value}") })
}

/// `aw(P_m □ C_n, 3)`.
pub fn aw_path_cycle_formula(m: usize, n: usize) -> Result<usize, FormulaError> {
    Ok(path_cycle_derivation(m, n)?.value)
}

pub fn path_cycle_derivation(m: usize, n: usize) -> Result<Derivation, FormulaError> {
    if m < 2 || n < 3 {
        return Err(FormulaError::OutOfDomain {
            family: "path-cycle",
            params: format!("{m},{n}"),
            reason: "need m >= 2 and n >= 3",
        });
    }
    let diam = (m - 1) + n / 2;
    let value = if n % 2 == 0 && diam % 2 == 1 { 4 } else { 3 };
    let detail = format!(
        "P_{m} x C_{n}: n {}, diam = {} + {} = {diam} ({}); value {value}",
        if n % 2 == 0 { "even" } else { "odd" },
        m - 1,
        n / 2,
        if diam % 2 == 0 { "even" } else { "odd" },
    );
    Ok(Derivation { value, detail })
}

/// `aw(C_m □ C_n, 3)`.
pub fn aw_torus_formula(m: usize, n: usize) -> Result<usize, FormulaError> {
    Ok(torus_derivation(m, n)?.value)
}

pub fn torus_derivation(m: usize, n: usize) -> Result<Derivation, FormulaError> {
    if m < 3 || n < 3 {
        return Err(FormulaError::OutOfDomain {
            family: "torus",
            params: format!("{m},{n}"),
            reason: "need m, n >= 3",
        });
    }
    let diam = m / 2 + n / 2;
    let both_even = m % 2 == 0 && n % 2 == 0;
    let value = if both_even && diam % 2 == 1 { 4 } else { 3 };
    let detail = format!(
        "C_{m} x C_{n}: {}, diam = {} + {} = {diam} ({}); value {value}",
        if both_even { "both even" } else { "an odd side" },
        m / 2,
        n / 2,
        if diam % 2 == 0 { "even" } else { "odd" },
    );
    Ok(Derivation { value, detail })
}

/// `aw(G □ C_n, 3)` for connected `G` with `|G| >= 2` and odd `n >= 3`,
/// which is always 3.
pub fn aw_odd_cycle_product(g: &Graph, n: usize) -> Result<usize, FormulaError> {
    if g.vertex_count() < 2 || n < 3 || n % 2 == 0 {
        return Err(FormulaError::OutOfDomain {
            family: "odd-cycle-product",
            params: format!("|G| = {}, n = {n}", g.vertex_count()),
            reason: "need |G| >= 2 and odd n >= 3",
        });
    }
    Ok(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factorization() {
        assert!(is_odd_prime(3) && is_odd_prime(13) && is_odd_prime(97));
        assert!(!is_odd_prime(2) && !is_odd_prime(9) && !is_odd_prime(1) && !is_odd_prime(91));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(1), vec![]);
    }

    #[test]
    fn classify_small_primes() {
        let cfg = SearchConfig::default();
        let mut cache = PrimeClassCache::in_memory();
        assert_eq!(classify_prime(3, &mut cache, &cfg).unwrap(), 3);
        let c5 = anti_vdw_number(&Graph::cycle(5).unwrap(), 3, &cfg).unwrap().aw.unwrap();
        assert_eq!(classify_prime(5, &mut cache, &cfg).unwrap(), c5);
        let c7 = anti_vdw_number(&Graph::cycle(7).unwrap(), 3, &cfg).unwrap().aw.unwrap();
        assert_eq!(classify_prime(7, &mut cache, &cfg).unwrap(), c7);
        assert!(matches!(classify_prime(9, &mut cache, &cfg), Err(FormulaError::NotOddPrime(9))));
        assert!(matches!(classify_prime(2, &mut cache, &cfg), Err(FormulaError::NotOddPrime(2))));
    }

    #[test]
    fn cycle_formula_values() {
        let cfg = SearchConfig::default();
        let mut cache = PrimeClassCache::in_memory();
        assert_eq!(aw_cycle_formula(4, &mut cache, &cfg).unwrap(), 3);
        assert_eq!(aw_cycle_formula(6, &mut cache, &cfg).unwrap(), 4);
        assert_eq!(aw_cycle_formula(9, &mut cache, &cfg).unwrap(), 4);
        let d = cycle_derivation(12, &mut cache, &cfg).unwrap();
        assert!(d.detail.contains("2^2"), "{}", d.detail);
    }

    #[test]
    fn path_formula_values() {
        assert_eq!(aw_path_formula(3).unwrap(), 3);
        assert_eq!(aw_path_formula(9).unwrap(), 4);
        assert_eq!(aw_path_formula(8).unwrap(), 5);
        assert_eq!(aw_path_formula(27).unwrap(), 5);
        assert_eq!(aw_path_formula(4).unwrap(), 4);
        assert_eq!(aw_path_formula(22).unwrap(), 6);
        assert!(aw_path_formula(2).is_err());
        assert_eq!(path_bracket(7), Some(1));
        assert_eq!(path_bracket(8), Some(2));
        assert_eq!(path_bracket(21), Some(2));
        assert_eq!(path_bracket(63), Some(3));
        assert_eq!(path_bracket(64), Some(4));
    }

    #[test]
    fn path_derivation_text_shows_bracket() {
        let d = path_derivation(8).unwrap();
        assert!(d.detail.contains("[8, 21]"), "{}", d.detail);
        let d = path_derivation(5).unwrap();
        assert!(d.detail.contains("[4, 7]"), "{}", d.detail);
    }

    #[test]
    fn product_formula_values() {
        assert_eq!(aw_grid_formula(2, 4).unwrap(), 3);
        assert_eq!(aw_grid_formula(3, 5).unwrap(), 3);
        assert_eq!(aw_grid_formula(4, 5).unwrap(), 4);
        assert_eq!(aw_grid_formula(4, 2).unwrap(), 3);
        assert_eq!(aw_path_cycle_formula(2, 4).unwrap(), 4);
        assert_eq!(aw_path_cycle_formula(3, 6).unwrap(), 4);
        assert_eq!(aw_path_cycle_formula(4, 6).unwrap(), 3);
        assert_eq!(aw_torus_formula(4, 6).unwrap(), 4);
        assert_eq!(aw_torus_formula(4, 8).unwrap(), 3);
        assert_eq!(aw_torus_formula(3, 4).unwrap(), 3);
        assert!(aw_torus_formula(2, 4).is_err());
    }

    #[test]
    fn odd_cycle_products() {
        assert_eq!(aw_odd_cycle_product(&Graph::path(2).unwrap(), 5).unwrap(), 3);
        assert_eq!(aw_odd_cycle_product(&Graph::star(3).unwrap(), 5).unwrap(), 3);
        assert!(aw_odd_cycle_product(&Graph::path(2).unwrap(), 6).is_err());
        assert!(aw_odd_cycle_product(&Graph::path(1).unwrap(), 5).is_err());
    }

    #[test]
    fn cache_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("aw-cache-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("primes.txt");
        let _ = fs::remove_file(&path);
        let cfg = SearchConfig::default();
        {
            let mut cache = PrimeClassCache::open(&path).unwrap();
            classify_prime(5, &mut cache, &cfg).unwrap();
            classify_prime(3, &mut cache, &cfg).unwrap();
        }
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("3 3 solver\n5 "), "{text}");
        let cache = PrimeClassCache::open(&path).unwrap();
        assert_eq!(cache.get(3).map(|c| c.value), Some(3));
        fs::write(&path, "3 5 solver\n").unwrap();
        assert!(matches!(PrimeClassCache::open(&path), Err(FormulaError::CacheFormat { line: 1, .. })));
        fs::write(&path, "9 3 solver\n").unwrap();
        assert!(PrimeClassCache::open(&path).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
