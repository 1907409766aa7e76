//! Command implementations for the `steiner-sparse` binary.
//!
//! Exit codes: 0 success / all checks pass, 1 violations found,
//! 2 usage or input-format error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use steiner_core::constructions::{self, ConstructionKind, ConstructionMeta};
use steiner_core::counting::{self, CountReport};
use steiner_core::edgelist::EdgeListFile;
use steiner_core::verifier::{self, ForbiddenFamily, ViolationReport};
use steiner_core::{GroupSpec, Hypergraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides the edge-subset budget of `verify --naive`.
pub const NAIVE_BUDGET_ENV: &str = "STEINER_NAIVE_BUDGET";
/// Overrides the candidate-edge budget of `oracle`.
pub const ORACLE_BUDGET_ENV: &str = "STEINER_ORACLE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "steiner-sparse", version, about = "Sparse partial Steiner systems: generate, verify, count")]
pub struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a hypergraph and write it as an edge-list file.
    Generate(GenerateArgs),
    /// Check a file for forbidden configurations.
    Verify(VerifyArgs),
    /// Print edge counts, predictions and density for a file.
    Stats(StatsArgs),
    /// Exact extremal number of a tiny instance by exhaustive search.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionChoice {
    Auto,
    ModSum,
    Binary,
    Product,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Uniformity (edge size).
    #[arg(long)]
    pub r: usize,
    /// Requested number of vertices (upper bound for `auto`).
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_enum, default_value = "auto")]
    pub construction: ConstructionChoice,
    /// Cyclic factor for `product`.
    #[arg(long)]
    pub m: Option<u32>,
    /// Binary exponent for `binary` and `product`.
    #[arg(long)]
    pub d: Option<u32>,
    /// Output file; the edge list goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the count report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Forbidden family `v,e`; repeatable. Defaults to `r+1,2` and `r+2,3`.
    #[arg(long = "forbid", value_name = "V,E")]
    pub forbid: Vec<ForbiddenFamily>,
    /// Use plain enumeration instead of the pruned checks.
    #[arg(long)]
    pub naive: bool,
    /// Certificates kept per family.
    #[arg(long, default_value_t = verifier::DEFAULT_CERT_CAP)]
    pub max_certs: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: u32,
    /// Forbidden family `v,e`; repeatable, at least one.
    #[arg(long = "forbid", value_name = "V,E", required = true)]
    pub forbid: Vec<ForbiddenFamily>,
    /// Write the witness here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command, writing normal output to `out` and diagnostics to
/// `err`; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(t) = cli.threads {
        if let Err(e) = configure_threads(t) {
            let _ = writeln!(err, "error: {e:#}");
            return EXIT_USAGE;
        }
    }
    let result = match cli.command {
        Command::Generate(a) => generate(&a, out, err),
        Command::Verify(a) => verify(&a, out),
        Command::Stats(a) => stats(&a, out),
        Command::Oracle(a) => oracle(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(t: usize) -> anyhow::Result<()> {
    if t == 0 {
        bail!("--threads must be positive");
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(t: usize) -> anyhow::Result<()> {
    if t == 0 {
        bail!("--threads must be positive");
    }
    Ok(())
}

fn generate(a: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let (h, meta) = build(a)?;
    let file = EdgeListFile::new(h, Some(meta))?;
    let report = counting::density_report(&file.hypergraph, Some(&meta))?;
    let summary = if a.json {
        serde_json::to_string_pretty(&report_json(&report, Some(&meta)))? + "\n"
    } else {
        render_report(&report, Some(&meta))
    };
    match &a.out {
        Some(path) => {
            write_file(path, &file)?;
            out.write_all(summary.as_bytes())?;
        }
        None => {
            file.write_to(&mut *out)?;
            err.write_all(summary.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

fn build(a: &GenerateArgs) -> anyhow::Result<(Hypergraph, ConstructionMeta)> {
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| anyhow!("--construction {:?} needs --{flag}", a.construction));
    match a.construction {
        ConstructionChoice::Auto => {
            let n = a.n.ok_or_else(|| anyhow!("--construction auto needs --n"))?;
            Ok(constructions::build_auto(a.r, n)?)
        }
        ConstructionChoice::ModSum => {
            if a.r != 4 {
                bail!("mod-sum construction is 4-uniform; got --r {}", a.r);
            }
            let n = a.n.ok_or_else(|| anyhow!("--construction mod-sum needs --n"))?;
            let n32 = u32::try_from(n).context("n exceeds the supported vertex range")?;
            let h = constructions::build_mod_sum(n32)?;
            let meta = ConstructionMeta::new(ConstructionKind::ModSum, GroupSpec::cyclic(n32)?, 4, n)?;
            Ok((h, meta))
        }
        ConstructionChoice::Binary => {
            let d = need(a.d, "d")?;
            let h = constructions::build_binary(a.r, d)?;
            let requested = a.n.unwrap_or(h.n() as u64);
            let meta = ConstructionMeta::new(ConstructionKind::Binary, GroupSpec::binary(d)?, a.r, requested)?;
            Ok((h, meta))
        }
        ConstructionChoice::Product => {
            let (m, d) = (need(a.m, "m")?, need(a.d, "d")?);
            let h = constructions::build_product(a.r, m, d)?;
            let requested = a.n.unwrap_or(h.n() as u64);
            let meta = ConstructionMeta::new(ConstructionKind::Product, GroupSpec::product(m, d)?, a.r, requested)?;
            Ok((h, meta))
        }
    }
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let file = read_file(&a.file)?;
    let h = &file.hypergraph;
    let r = h.r();
    let families = if a.forbid.is_empty() {
        vec![ForbiddenFamily::linear(r), ForbiddenFamily::sparse3(r)]
    } else {
        a.forbid.clone()
    };
    let budget = budget_from_env(NAIVE_BUDGET_ENV, verifier::DEFAULT_NAIVE_BUDGET)?;
    let mut reports = Vec::with_capacity(families.len());
    for &fam in &families {
        fam.validate(r)?;
        let report = if a.naive {
            verifier::naive_check_capped(h, fam, budget, a.max_certs)?
        } else if fam == ForbiddenFamily::linear(r) {
            verifier::check_linear_capped(h, a.max_certs)
        } else if fam == ForbiddenFamily::sparse3(r) {
            verifier::check_sparse3_capped(h, a.max_certs)
        } else {
            verifier::check_forbidden_capped(h, fam, a.max_certs)?
        };
        reports.push(report);
    }
    let passed = reports.iter().all(ViolationReport::passed);
    if a.json {
        let doc = json!({
            "file": a.file.display().to_string(),
            "r": r,
            "n": h.n(),
            "edges": h.len(),
            "checker": if a.naive { "naive" } else { "pruned" },
            "passed": passed,
            "reports": reports.iter().map(|rep| violation_json(rep, h)).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        for rep in &reports {
            write!(out, "{}", render_violations(rep, h))?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_VIOLATIONS })
}

fn stats(a: &StatsArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let file = read_file(&a.file)?;
    let report = counting::density_report(&file.hypergraph, file.meta.as_ref())?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report_json(&report, file.meta.as_ref()))?)?;
    } else {
        out.write_all(render_report(&report, file.meta.as_ref()).as_bytes())?;
    }
    Ok(EXIT_OK)
}

fn oracle(a: &OracleArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let budget = budget_from_env(ORACLE_BUDGET_ENV, verifier::DEFAULT_SEARCH_BUDGET)?;
    let (best, witness) = verifier::max_search(a.r, a.n, &a.forbid, budget)?;
    let families: Vec<String> = a.forbid.iter().map(ToString::to_string).collect();
    writeln!(out, "r={} n={} forbid={} max_edges={best}", a.r, a.n, families.join(";"))?;
    let file = EdgeListFile::external(witness);
    match &a.out {
        Some(path) => write_file(path, &file)?,
        None => file.write_to(&mut *out)?,
    }
    Ok(EXIT_OK)
}

fn read_file(path: &Path) -> anyhow::Result<EdgeListFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    EdgeListFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, file: &EdgeListFile) -> anyhow::Result<()> {
    let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    file.write_to(f).with_context(|| format!("writing {}", path.display()))
}

fn budget_from_env(var: &str, default: u128) -> anyhow::Result<u128> {
    match std::env::var(var) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{var} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(default),
    }
}

fn source_fields(meta: Option<&ConstructionMeta>) -> (String, String) {
    match meta {
        Some(m) => (m.kind.to_string(), m.group.to_string()),
        None => ("external".into(), "none".into()),
    }
}

/// `key=value` lines; rationals are exact, the float is for reading only.
pub fn render_report(rep: &CountReport, meta: Option<&ConstructionMeta>) -> String {
    let (construction, group) = source_fields(meta);
    let mut s = format!("construction={construction} group={group} r={} n={}\n", rep.r, rep.n);
    if let Some(m) = meta {
        s += &format!("requested_n={}\n", m.requested_n);
    }
    s += &format!("actual={}\n", rep.actual);
    match &rep.predicted {
        Some(p) => s += &format!("predicted={p}\n"),
        None => s += "predicted=none\n",
    }
    s += &format!("bound={}\n", rep.upper_bound);
    s += &format!("ratio={} ({:.6})\n", rep.density, rep.density_f64());
    s += &format!("zero_degree_subsets={}\n", rep.zero_degree);
    s
}

pub fn report_json(rep: &CountReport, meta: Option<&ConstructionMeta>) -> Value {
    let (construction, group) = source_fields(meta);
    json!({
        "construction": construction,
        "group": group,
        "r": rep.r,
        "n": rep.n,
        "requested_n": meta.map(|m| m.requested_n),
        "actual": rep.actual,
        "predicted": rep.predicted.as_ref().map(ToString::to_string),
        "prediction_holds": rep.prediction_holds(),
        "upper_bound": rep.upper_bound.to_string(),
        "within_upper_bound": rep.within_upper_bound(),
        "density": rep.density.to_string(),
        "density_float": rep.density_f64(),
        "zero_degree_subsets": rep.zero_degree.to_string(),
    })
}

fn vertices_of(h: &Hypergraph, edges: &[usize]) -> Vec<Vec<u32>> {
    edges.iter().map(|&i| h.edge(i).to_vec()).collect()
}

pub fn render_violations(rep: &ViolationReport, h: &Hypergraph) -> String {
    let fam = rep.family;
    if rep.passed() {
        return format!("forbid {fam}: pass\n");
    }
    let mut s = format!("forbid {fam}: FAIL ({} violations)\n", rep.total);
    for c in &rep.certificates {
        let edges: Vec<String> = c.edges.iter().map(ToString::to_string).collect();
        let verts: Vec<String> = vertices_of(h, &c.edges)
            .iter()
            .map(|e| {
                let v: Vec<String> = e.iter().map(ToString::to_string).collect();
                format!("[{}]", v.join(" "))
            })
            .collect();
        s += &format!(
            "  edges {} union={} {}\n",
            edges.join(" "),
            c.union_size,
            verts.join(" ")
        );
    }
    if rep.is_truncated() {
        s += &format!("  ... {} more not shown\n", rep.total - rep.certificates.len() as u64);
    }
    s
}

pub fn violation_json(rep: &ViolationReport, h: &Hypergraph) -> Value {
    json!({
        "family": { "v": rep.family.v, "e": rep.family.e },
        "passed": rep.passed(),
        "total": rep.total,
        "truncated": rep.is_truncated(),
        "certificates": rep.certificates.iter().map(|c| json!({
            "edges": c.edges,
            "union_size": c.union_size,
            "vertices": vertices_of(h, &c.edges),
        })).collect::<Vec<_>>(),
    })
}
