//! `aw`: compute, check and explore anti-van der Waerden numbers.
//!
//! Exit status: 0 success, 1 usage or input error, 2 verification mismatch,
//! 3 timeout / indeterminate result.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use aw_core::ap::ApCatalog;
use aw_core::closed_forms::{
    cycle_derivation, grid_derivation, path_cycle_derivation, path_derivation, torus_derivation,
    Derivation, FormulaError, PrimeClassCache,
};
use aw_core::coloring::Coloring;
use aw_core::explorer::{conjecture_scan, verify_theorem, Family, SweepGrid};
use aw_core::extremal::{
    counterexample_instance, extremal_path_cycle_coloring, extremal_torus_coloring, to_dot,
    Extremal,
};
use aw_core::graph::Graph;
use aw_core::graph_spec::parse_graph_spec;
use aw_core::solver::{anti_vdw_number_with_catalog, verify_certificate, SearchConfig, VertexOrder};

#[derive(Parser)]
#[command(name = "aw", version, about = "Exact anti-van der Waerden numbers of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args, Clone)]
struct SolveArgs {
    /// Time budget in seconds
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Return the sequential-order certificate even with several threads
    #[arg(long)]
    deterministic: bool,
    #[arg(long, default_value = "ap-degree")]
    vertex_order: VertexOrder,
}

impl SolveArgs {
    fn config(&self) -> Result<SearchConfig> {
        let mut cfg = SearchConfig::default().with_threads(self.threads);
        cfg.deterministic = self.deterministic || self.threads <= 1;
        cfg.vertex_order = self.vertex_order;
        if let Some(secs) = self.timeout {
            if !(secs.is_finite() && secs >= 0.0) {
                bail!("--timeout must be a nonnegative number of seconds");
            }
            cfg = cfg.with_timeout(Duration::from_secs_f64(secs));
        }
        Ok(cfg)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormulaFamily {
    Cycle,
    Path,
    Grid,
    PathCycle,
    Torus,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Which {
    PathCycle,
    Torus,
    Counterexample,
}

#[derive(Subcommand)]
enum Command {
    /// Compute aw(G, k) with a certificate
    Compute {
        /// Graph spec, e.g. "path:2 x cycle:4"
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Re-verify a result or coloring JSON file instead of solving
        #[arg(long)]
        check: Option<PathBuf>,
        /// Do not cap the scan at 4 for products
        #[arg(long)]
        no_bound: bool,
    },
    /// Evaluate a closed form with its derivation
    Formula {
        #[arg(long, value_enum)]
        family: FormulaFamily,
        /// Comma-separated parameters: n, or m,n
        #[arg(long)]
        params: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Time budget in seconds per prime classified by the solver
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Sweep a family and compare solver values with the closed form
    Verify {
        /// cycle, path, grid, path-cycle, torus or odd-cycle-product
        #[arg(long)]
        family: Family,
        /// Inclusive range a..b (tree orders for odd-cycle-product)
        #[arg(long)]
        m_range: Option<String>,
        #[arg(long)]
        n_range: String,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Directory for mismatch artifacts
        #[arg(long, default_value = ".")]
        artifacts: PathBuf,
        /// Also write the full JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build a verified extremal coloring
    Extremal {
        #[arg(long, value_enum)]
        which: Which,
        /// m,n for path-cycle and torus
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also run the solver on the instance
        #[arg(long)]
        solve: bool,
    },
    /// List the nondegenerate k-APs, one `d v1 ... vk` line each
    Aps {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Scan trees times even cycles for even-diameter aw = 4 instances
    ScanConjectures {
        #[arg(long, default_value_t = 8)]
        max_tree: usize,
        #[arg(long, default_value = "4,6,8", value_delimiter = ',')]
        cycles: Vec<usize>,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write a DOT file per counterexample into this directory
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
}

enum Outcome {
    Success,
    Mismatch,
    Indeterminate,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(2),
        Ok(Outcome::Indeterminate) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Compute { graph, k, solve, format, check, no_bound } => {
            compute(&graph, k, &solve, format, check.as_deref(), no_bound)
        }
        Command::Formula { family, params, format, timeout } => {
            let solve = SolveArgs {
                timeout,
                threads: 1,
                deterministic: true,
                vertex_order: VertexOrder::default(),
            };
            match formula(family, &params, format, &solve.config()?) {
                Err(e) if matches!(e.downcast_ref(), Some(FormulaError::Indeterminate(_))) => {
                    eprintln!("error: {e}");
                    Ok(Outcome::Indeterminate)
                }
                other => other,
            }
        }
        Command::Verify { family, m_range, n_range, solve, format, artifacts, report } => {
            verify(family, m_range.as_deref(), &n_range, &solve, format, &artifacts, report.as_deref())
        }
        Command::Extremal { which, params, dot, solve } => {
            extremal(which, params.as_deref(), dot.as_deref(), solve)
        }
        Command::Aps { graph, k } => {
            let built = parse_graph_spec(&graph)?;
            let catalog = ApCatalog::enumerate(&built.graph, k)?;
            println!("# {} {k}-APs in {graph}", catalog.len());
            print!("{}", catalog.dump());
            Ok(Outcome::Success)
        }
        Command::ScanConjectures { max_tree, cycles, solve, format, dot_dir } => {
            scan(max_tree, &cycles, &solve, format, dot_dir.as_deref())
        }
    }
}

fn prime_cache() -> Result<PrimeClassCache> {
    match std::env::var_os("AW_CACHE") {
        Some(path) => PrimeClassCache::open(&path)
            .with_context(|| format!("opening prime cache {}", Path::new(&path).display())),
        None => Ok(PrimeClassCache::in_memory()),
    }
}

fn parse_params(text: &str, want: usize) -> Result<Vec<usize>> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| anyhow!("bad parameter `{s}`")))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != want {
        bail!("expected {want} comma-separated parameter(s), got `{text}`");
    }
    Ok(values)
}

/// `a..b` (inclusive), `a..=b`, or a single value.
fn parse_range(text: &str) -> Result<Vec<usize>> {
    let bad = || anyhow!("bad range `{text}`, expected a..b");
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn compute(
    spec: &str,
    k: usize,
    solve: &SolveArgs,
    format: Format,
    check: Option<&Path>,
    no_bound: bool,
) -> Result<Outcome> {
    let built = parse_graph_spec(spec)?;
    let g = &built.graph;
    let catalog = ApCatalog::enumerate(g, k)?;
    if let Some(path) = check {
        return check_certificate(g, &catalog, path);
    }
    let mut cfg = solve.config()?;
    if !no_bound {
        cfg.upper_bound = built.product_bound(k);
    }
    let result = anti_vdw_number_with_catalog(g, &catalog, &cfg)?;
    let out = json!({
        "graph": spec,
        "k": k,
        "aw": result.aw,
        "bracket": [result.bracket.0, result.bracket.1],
        "certificate": result.certificate,
        "stats": result.stats,
        "bound_used": result.bound_used,
    });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        Format::Text => {
            println!("graph: {spec} ({} vertices, {} {k}-APs)", g.vertex_count(), catalog.len());
            match result.aw {
                Some(aw) => println!("aw(G, {k}) = {aw}"),
                None => println!(
                    "aw(G, {k}) undetermined: {} <= aw <= {}",
                    result.bracket.0, result.bracket.1
                ),
            }
            if let Some(b) = result.bound_used {
                println!("closed by the product bound aw <= {b}");
            }
            let cert = &result.certificate;
            let classes: Vec<String> =
                (0..g.vertex_count()).map(|v| format!("{}={}", g.label(v), cert.color(v))).collect();
            println!("certificate (rainbow-free, r = {}): {}", cert.r(), classes.join(" "));
            println!(
                "search: {} nodes, {} prunes, {:.1} ms",
                result.stats.nodes,
                result.stats.prunes,
                result.stats.elapsed.as_secs_f64() * 1e3
            );
        }
    }
    Ok(if result.aw.is_some() { Outcome::Success } else { Outcome::Indeterminate })
}

fn check_certificate(g: &Graph, catalog: &ApCatalog, path: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).context("parsing certificate JSON")?;
    let claimed_aw = value.get("aw").and_then(Value::as_u64).map(|v| v as usize);
    let coloring_value = value.get("certificate").cloned().unwrap_or(value);
    let coloring: Coloring =
        serde_json::from_value(coloring_value).context("certificate is not {\"r\", \"colors\"}")?;
    if coloring.len() != g.vertex_count() {
        println!(
            "certificate FAILED: colors {} vertices, graph has {}",
            coloring.len(),
            g.vertex_count()
        );
        return Ok(Outcome::Mismatch);
    }
    if !verify_certificate(catalog, &coloring) {
        let why = match catalog.find_rainbow(coloring.colors()) {
            Some(ap) => format!("rainbow AP {ap:?}"),
            None => "coloring is not exact or out of range".into(),
        };
        println!("certificate FAILED: {why}");
        return Ok(Outcome::Mismatch);
    }
    if let Some(aw) = claimed_aw {
        if coloring.r() + 1 != aw {
            println!("certificate FAILED: r = {} does not witness aw = {aw}", coloring.r());
            return Ok(Outcome::Mismatch);
        }
    }
    println!("certificate OK: rainbow-free exact {}-coloring", coloring.r());
    Ok(Outcome::Success)
}

fn formula(family: FormulaFamily, params: &str, format: Format, cfg: &SearchConfig) -> Result<Outcome> {
    let (name, derivation): (&str, Derivation) = match family {
        FormulaFamily::Cycle => {
            let n = parse_params(params, 1)?[0];
            let mut cache = prime_cache()?;
            ("cycle", cycle_derivation(n, &mut cache, cfg)?)
        }
        FormulaFamily::Path => ("path", path_derivation(parse_params(params, 1)?[0])?),
        FormulaFamily::Grid => {
            let p = parse_params(params, 2)?;
            ("grid", grid_derivation(p[0], p[1])?)
        }
        FormulaFamily::PathCycle => {
            let p = parse_params(params, 2)?;
            ("path-cycle", path_cycle_derivation(p[0], p[1])?)
        }
        FormulaFamily::Torus => {
            let p = parse_params(params, 2)?;
            ("torus", torus_derivation(p[0], p[1])?)
        }
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "family": name,
                "params": params,
                "value": derivation.value,
                "derivation": derivation.detail,
            }))?
        ),
        Format::Text => {
            println!("{}", derivation.value);
            println!("{}", derivation.detail);
        }
    }
    Ok(Outcome::Success)
}

fn verify(
    family: Family,
    m_range: Option<&str>,
    n_range: &str,
    solve: &SolveArgs,
    format: Format,
    artifacts: &Path,
    report_path: Option<&Path>,
) -> Result<Outcome> {
    let m = match (family.has_m(), m_range) {
        (true, Some(r)) => parse_range(r)?,
        (true, None) => bail!("--m-range is required for {family}"),
        (false, Some(_)) => bail!("{family} takes only --n-range"),
        (false, None) => Vec::new(),
    };
    let grid = SweepGrid::new(m, parse_range(n_range)?);
    let mut cfg = solve.config()?;
    if family.is_product() {
        cfg.upper_bound = Some(4);
    }
    let mut cache = prime_cache()?;
    let report = verify_theorem(family, &grid, &cfg, &mut cache)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => print!("{}", report.to_table()),
    }
    if let Some(path) = report_path {
        fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    if !report.failures.is_empty() {
        fs::create_dir_all(artifacts)?;
        for failure in &report.failures {
            let name = format!(
                "mismatch-{}-{}.json",
                family,
                failure.params.iter().map(usize::to_string).collect::<Vec<_>>().join("-")
            );
            let path = artifacts.join(name);
            fs::write(&path, serde_json::to_string_pretty(failure)?)?;
            eprintln!("mismatch artifact: {}", path.display());
        }
        return Ok(Outcome::Mismatch);
    }
    Ok(if report.summary.indeterminate > 0 { Outcome::Indeterminate } else { Outcome::Success })
}

fn extremal(which: Which, params: Option<&str>, dot: Option<&Path>, solve: bool) -> Result<Outcome> {
    let pair = || -> Result<(usize, usize)> {
        let p = parse_params(params.ok_or_else(|| anyhow!("--params m,n is required"))?, 2)?;
        Ok((p[0], p[1]))
    };
    let (name, e): (&str, Extremal) = match which {
        Which::PathCycle => {
            let (m, n) = pair()?;
            ("path-cycle", extremal_path_cycle_coloring(m, n)?)
        }
        Which::Torus => {
            let (m, n) = pair()?;
            ("torus", extremal_torus_coloring(m, n)?)
        }
        Which::Counterexample => ("counterexample", counterexample_instance()?),
    };
    let g = &e.product.graph;
    let mut out = json!({
        "which": name,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "diameter": g.diameter(),
        "blue": g.label(e.blue),
        "green": g.label(e.green),
        "blue_green_distance": g.distance(e.blue, e.green),
        "verified_rainbow_free": true,
        "coloring": e.coloring,
        "left_factor": e.product.left.to_edge_list(),
        "right_factor": e.product.right.to_edge_list(),
    });
    if solve {
        let catalog = ApCatalog::enumerate(g, 3)?;
        let result = anti_vdw_number_with_catalog(g, &catalog, &SearchConfig::default())?;
        out["aw"] = json!(result.aw);
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    if let Some(path) = dot {
        fs::write(path, to_dot(g, &e.coloring))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(Outcome::Success)
}

fn scan(
    max_tree: usize,
    cycles: &[usize],
    solve: &SolveArgs,
    format: Format,
    dot_dir: Option<&Path>,
) -> Result<Outcome> {
    let cfg = solve.config()?.with_upper_bound(Some(4));
    let report = conjecture_scan(max_tree, cycles, &cfg)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => print!("{}", report.to_table()),
    }
    if let Some(dir) = dot_dir {
        fs::create_dir_all(dir)?;
        for entry in report.counterexamples() {
            let (Some(edges), Some(cert)) = (&entry.edge_list, &entry.certificate) else { continue };
            let g = Graph::parse_edge_list(edges)?;
            let name = entry.label.replace(' ', "").replace('.', "_");
            let path = dir.join(format!("{name}.dot"));
            fs::write(&path, to_dot(&g, cert))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(if report.summary.indeterminate > 0 { Outcome::Indeterminate } else { Outcome::Success })
}
