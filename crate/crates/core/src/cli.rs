//! Command-line front end. `run` parses arguments, dispatches to the
//! library and writes one JSON document; exit codes are 0 (ok), 2 (usage or
//! input error), 3 (budget exceeded) and 4 (infeasible or failed outcome).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::containers::{self, ContainerConfig, RunTarget};
use crate::copyindex::automorphism_count;
use crate::error::{Error, Result};
use crate::exact::{self, ExTable, SearchConfig};
use crate::exactnum::{parse_rational, ratio_from_u64, ratio_to_f64};
use crate::hypercore::{parse_hypergraph, is_strictly_r_balanced, r_density, Hypergraph};
use crate::lbound::{self, CountBoundInput, DeletionConfig, Overlap};
use crate::supersat::{self, BuildOptions, BuildOutcome, OrderPolicy, PWindow, ParamInput};

pub const CACHE_ENV: &str = "HFREE_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "hfree", version, about = "Exact and experimental tools for H-free hypergraphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Search-node budget for the main computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory for cached extremal tables (also $HFREE_CACHE_DIR).
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long = "no-cache", global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Policy {
    Lex,
    Random,
    MinSaturation,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Available,
    Formula,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OverlapArg {
    CopyEdges,
    HostVertices,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// r-density and strict balancedness of a pattern.
    Density {
        #[arg(long)]
        pattern: String,
    },
    /// Exact extremal number ex(n, H).
    Ex {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
    },
    /// Exact number of labelled H-free hypergraphs on n vertices.
    CountFree {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
    },
    /// Least M with ex(s, H) <= M (s/n)^alpha for all s <= n, and the n where M = ex(n, H) suffices.
    Hypothesis {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        /// Also report the level threshold t0 for this gamma.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Level parameters, p-window and a balanced supersaturated collection.
    Supersat {
        #[arg(long)]
        pattern: String,
        /// Host hypergraph (path or builtin); optional with --params-only.
        #[arg(long)]
        host: Option<String>,
        /// Host size when no host is given.
        #[arg(long)]
        n: Option<String>,
        /// Host edge count when no host is given.
        #[arg(long)]
        m: Option<String>,
        #[arg(long = "M")]
        big_m: String,
        #[arg(long, default_value = "2")]
        gamma: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long = "t0", default_value_t = 0)]
        t0: i64,
        #[arg(long = "scale-N", default_value = "1")]
        scale_n: String,
        #[arg(long, value_enum, default_value = "lex")]
        policy: Policy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "params-only")]
        params_only: bool,
        #[arg(long = "audit-every", default_value_t = 100)]
        audit_every: usize,
        #[arg(long)]
        trace: bool,
    },
    /// Container tree over subsets of K_n^(r) with a coverage audit.
    Containers {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        gamma: String,
        #[arg(long = "t0", default_value_t = 0)]
        t0: i64,
        /// Defaults to ex(n, H).
        #[arg(long = "M")]
        big_m: Option<String>,
        #[arg(long = "K")]
        k_const: Option<String>,
        #[arg(long = "run-target", value_enum, default_value = "available")]
        run_target: Target,
        #[arg(long, value_enum, default_value = "lex")]
        policy: Policy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled hosts when exhaustive coverage is out of reach.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Deletion-method experiment on random hosts G(n, m).
    LowerBound {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree-cap constant (default 16 e_H).
        #[arg(long = "C-const")]
        big_c: Option<f64>,
        /// Constant of the independence-number bound.
        #[arg(long = "c-const", default_value_t = 1.0)]
        small_c: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, value_enum, default_value = "copy-edges")]
        overlap: OverlapArg,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Counting lower bound from the deletion experiment's sizes.
    CountBound {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: u64,
        /// Exponent gamma in m = n^(r - 1/m_r + gamma); default 1/(2 m_r).
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long = "delta-prime", default_value_t = 0.1)]
        delta_prime: f64,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long = "m-prime")]
        m_prime: Option<f64>,
        #[arg(long = "c-const", default_value_t = 1.0)]
        c_const: f64,
    },
}

/// Builtin names: `kN` (complete graph), `cN`, `pN` (N vertices),
/// `kS,T` (complete bipartite), `kNrR` (complete R-uniform), `g6:<graph6>`.
pub fn builtin_pattern(name: &str) -> Option<Hypergraph> {
    let num = |s: &str| s.parse::<usize>().ok();
    if let Some(g6) = name.strip_prefix("g6:") {
        return crate::hypercore::parse_graph6(g6).ok();
    }
    let lower = name.to_ascii_lowercase();
    let (head, rest) = lower.split_at(1.min(lower.len()));
    match head {
        "k" => {
            if let Some((s, t)) = rest.split_once(',') {
                return Some(Hypergraph::complete_bipartite(num(s)?, num(t)?));
            }
            if let Some((v, r)) = rest.split_once('r') {
                let (v, r) = (num(v)?, num(r)?);
                return (r >= 1 && v >= r).then(|| Hypergraph::complete(v, r));
            }
            let v = num(rest)?;
            (v >= 2).then(|| Hypergraph::complete(v, 2))
        }
        "c" => num(rest).filter(|&k| k >= 3).map(Hypergraph::cycle),
        "p" => num(rest).filter(|&k| k >= 2).map(Hypergraph::path),
        _ => None,
    }
}

/// A file path if one exists, otherwise a builtin name.
pub fn resolve_pattern(spec: &str) -> Result<Hypergraph> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse_hypergraph(&std::fs::read_to_string(path)?);
    }
    builtin_pattern(spec).ok_or_else(|| Error::Invalid(format!("{spec:?} is neither a file nor a builtin pattern")))
}

/// Lexicographically least edge list over all relabellings of the compacted
/// pattern (up to 9 vertices; larger patterns keep their labelling).
pub fn canonical_text(h: &Hypergraph) -> String {
    let (p, _) = h.compact();
    let v = p.n_vertices();
    if v > 9 {
        return p.to_text();
    }
    let mut perm: Vec<u32> = (0..v as u32).collect();
    let mut best: Option<Vec<Vec<u32>>> = None;
    loop {
        let mut edges: Vec<Vec<u32>> = p
            .edges()
            .iter()
            .map(|e| {
                let mut f: Vec<u32> = e.iter().map(|&x| perm[x as usize]).collect();
                f.sort_unstable();
                f
            })
            .collect();
        edges.sort();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Hypergraph::new(p.uniformity(), v, best.unwrap_or_default()).expect("relabelling is valid").to_text()
}

fn next_permutation(a: &mut [u32]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else { return false };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("successor exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn cache_key(h: &Hypergraph) -> String {
    hex::encode(Sha256::digest(canonical_text(h).as_bytes()))
}

struct Ctx {
    cache: Option<PathBuf>,
    budget: Option<u64>,
}

impl Ctx {
    fn search(&self) -> SearchConfig {
        SearchConfig { node_budget: self.budget, ..SearchConfig::default() }
    }

    fn table_path(&self, h: &Hypergraph) -> Option<PathBuf> {
        self.cache.as_ref().map(|d| d.join(format!("ex-{}.json", cache_key(h))))
    }

    fn load_table(&self, h: &Hypergraph) -> ExTable {
        self.table_path(h)
            .and_then(|p| std::fs::read_to_string(p).ok())
            .and_then(|t| ExTable::from_json(&t).ok())
            .unwrap_or_else(|| ExTable::new(h))
    }

    fn save_table(&self, h: &Hypergraph, table: &ExTable) -> Result<()> {
        let Some(path) = self.table_path(h) else { return Ok(()) };
        let dir = path.parent().expect("cache file has a directory");
        std::fs::create_dir_all(dir)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, table.to_json())?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    /// `ex(s, H)` with witnesses for every `s` in `lo..=hi`, through the cache.
    fn ex_values(&self, h: &Hypergraph, lo: usize, hi: usize) -> Result<ExTable> {
        let mut table = self.load_table(h);
        let mut dirty = false;
        for s in lo..=hi {
            if table.stored().contains_key(&s) && table.witness(s).is_some() {
                continue;
            }
            let ex = exact::extremal_number_with(s, h, self.search())?;
            table.insert(s, ex.value as u64, Some(ex.witness))?;
            dirty = true;
        }
        if dirty {
            self.save_table(h, &table)?;
        }
        Ok(table)
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    status: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

struct Report {
    json: String,
    ok: bool,
}

fn report<T: Serialize>(command: &str, ok: bool, body: &T) -> Result<Report> {
    let status = if ok { "ok" } else { "failed" };
    let json = serde_json::to_string_pretty(&Envelope { schema: 1, command, status, body })?;
    Ok(Report { json, ok })
}

fn q(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

fn policy(p: Policy, seed: u64) -> OrderPolicy {
    match p {
        Policy::Lex => OrderPolicy::Lexicographic,
        Policy::Random => OrderPolicy::Random(seed),
        Policy::MinSaturation => OrderPolicy::MinSaturation,
    }
}

#[derive(Serialize)]
struct DensityOut {
    pattern: String,
    r: usize,
    v_h: usize,
    e_h: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    m_r: num_rational::Rational64,
    witness: Vec<usize>,
    witness_vertices: usize,
    achieved_only_by_whole: bool,
    #[serde(serialize_with = "crate::exactnum::as_string_opt")]
    m_2_alt: Option<num_rational::Rational64>,
    strictly_balanced: bool,
    automorphisms: u64,
}

fn cmd_density(h: &Hypergraph) -> Result<Report> {
    let d = r_density(h)?;
    let (p, _) = h.compact();
    report(
        "density",
        true,
        &DensityOut {
            pattern: h.to_text(),
            r: h.uniformity(),
            v_h: p.n_vertices(),
            e_h: p.num_edges(),
            m_r: d.value,
            witness: d.witness.clone(),
            witness_vertices: d.witness_vertices,
            achieved_only_by_whole: d.achieved_only_by_whole,
            m_2_alt: d.alt_value,
            strictly_balanced: is_strictly_r_balanced(h)?,
            automorphisms: automorphism_count(&p),
        },
    )
}

#[derive(Serialize)]
struct ExOut {
    pattern: String,
    n: usize,
    value: u64,
    witness: Option<String>,
}

fn cmd_ex(ctx: &Ctx, h: &Hypergraph, n: usize) -> Result<Report> {
    let table = ctx.ex_values(h, n, n)?;
    let out = ExOut { pattern: h.to_text(), n, value: table.value(n)?, witness: table.witness(n).map(|w| w.to_text()) };
    report("ex", true, &out)
}

#[derive(Serialize)]
struct CountOut {
    pattern: String,
    #[serde(flatten)]
    result: exact::CountResult,
}

fn cmd_count(ctx: &Ctx, h: &Hypergraph, n: usize) -> Result<Report> {
    let result = exact::count_h_free_with(n, h, ctx.search())?;
    let ok = result.passes();
    report("count-free", ok, &CountOut { pattern: h.to_text(), result })
}

#[derive(Serialize)]
struct HypothesisOut {
    pattern: String,
    n: usize,
    #[serde(serialize_with = "crate::exactnum::as_string")]
    alpha: BigRational,
    values: std::collections::BTreeMap<usize, u64>,
    minimal_m: exact::MinimalM,
    good_n: Vec<usize>,
    t0: Option<supersat::T0Report>,
}

fn cmd_hypothesis(ctx: &Ctx, h: &Hypergraph, n: usize, alpha: &str, gamma: Option<&str>) -> Result<Report> {
    let alpha = q(alpha)?;
    let r = h.uniformity();
    let table = ctx.ex_values(h, r.max(h.compact().0.n_vertices()), n)?;
    let minimal_m = exact::hypothesis_minimal_m(&table, n, &alpha)?;
    let values = (r..=n).map(|s| table.value(s).map(|v| (s, v))).collect::<Result<_>>()?;
    let t0 = match gamma {
        Some(g) => Some(supersat::compute_t0(&alpha, &q(g)?, h, None, false)?),
        None => None,
    };
    let out = HypothesisOut { pattern: h.to_text(), n, good_n: exact::find_good_n(&table, &alpha), alpha, values, minimal_m, t0 };
    report("hypothesis", true, &out)
}

#[derive(Serialize)]
struct WindowOut {
    #[serde(flatten)]
    at_n: supersat::PWindowResult,
    #[serde(serialize_with = "crate::exactnum::as_string_opt")]
    derived_floor: Option<BigUint>,
}

#[derive(Serialize)]
struct BuildOut {
    outcome: &'static str,
    failure: Option<supersat::FailureReport>,
    copies_total: usize,
    collection_size: usize,
    delta: supersat::DeltaReport,
    ledger: supersat::LedgerReport,
    step_audit: supersat::StepAudit,
    audits: Vec<supersat::AuditRecord>,
    replay_ok: bool,
    trace: Vec<supersat::TraceRow>,
}

#[derive(Serialize)]
struct SupersatOut {
    pattern: String,
    params: supersat::SupersatParams,
    t0_report: Option<supersat::T0Report>,
    p_window: Option<WindowOut>,
    build: Option<BuildOut>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_supersat(
    ctx: &Ctx,
    h: &Hypergraph,
    host: Option<&str>,
    n: Option<&str>,
    m: Option<&str>,
    big_m: &str,
    gamma: &str,
    alpha: Option<&str>,
    t0: i64,
    scale: &str,
    order: OrderPolicy,
    params_only: bool,
    audit_every: usize,
    trace: bool,
) -> Result<Report> {
    let g = host.map(resolve_pattern).transpose()?;
    let big = |s: Option<&str>, what: &str| -> Result<BigUint> {
        s.ok_or_else(|| Error::Invalid(format!("--{what} is required without --host")))?
            .parse::<BigUint>()
            .map_err(|_| Error::Invalid(format!("bad --{what}")))
    };
    let (nn, mm) = match &g {
        Some(g) => (BigUint::from(g.n_vertices()), BigUint::from(g.num_edges())),
        None => (big(n, "n")?, big(m, "m")?),
    };
    if g.is_none() && !params_only {
        return Err(Error::Invalid("--host is required unless --params-only".into()));
    }
    let alpha = alpha.map(q).transpose()?;
    let gamma = q(gamma)?;
    let input = ParamInput { n: nn.clone(), m: mm, big_m: q(big_m)?, gamma: gamma.clone(), alpha: alpha.clone(), t0, scale: q(scale)? };
    let params = supersat::derive_params(&input, h)?;
    let (t0_report, p_window) = match &alpha {
        Some(a) => {
            let t0r = supersat::compute_t0(a, &gamma, h, None, false)?;
            let w = PWindow::new(params.t, &gamma, a, h);
            (Some(t0r), Some(WindowOut { at_n: w.solve(&nn), derived_floor: w.derived_floor() }))
        }
        None => (None, None),
    };
    let window_ok = p_window.as_ref().is_none_or(|w| w.at_n.feasible);
    let build = match (&g, params_only) {
        (Some(g), false) => {
            let opts = BuildOptions { scan_budget: ctx.budget, audit_every: Some(audit_every.max(1)), trace };
            let outcome = supersat::greedy_build(g, h, &params, order, &opts)?;
            let coll = outcome.collection();
            let failure = match &outcome {
                BuildOutcome::Failure(f, _) => Some(f.clone()),
                BuildOutcome::Success(_) => None,
            };
            Some(BuildOut {
                outcome: if failure.is_some() { "failure" } else { "success" },
                failure,
                copies_total: coll.all_copies().len(),
                collection_size: coll.len(),
                delta: supersat::verify_delta_bounds(coll),
                ledger: supersat::bad_ledger_bound_check(coll),
                step_audit: coll.step_audit.clone(),
                audits: coll.audits.clone(),
                replay_ok: coll.replay_goodness(),
                trace: coll.trace.clone(),
            })
        }
        _ => None,
    };
    let ok = match &build {
        Some(b) => b.failure.is_none() && b.delta.all_pass && b.ledger.all_pass && b.replay_ok,
        None => window_ok,
    };
    report("supersat", ok, &SupersatOut { pattern: h.to_text(), params, t0_report, p_window, build })
}

#[derive(Serialize)]
struct ContainersOut {
    pattern: String,
    tree: containers::ContainerTree,
    coverage: containers::CoverageReport,
    t_max: u64,
    leaf_count: containers::LeafCountBound,
}

#[allow(clippy::too_many_arguments)]
fn cmd_containers(
    ctx: &Ctx,
    h: &Hypergraph,
    n: usize,
    gamma: &str,
    t0: i64,
    big_m: Option<&str>,
    k_const: Option<&str>,
    target: Target,
    order: OrderPolicy,
    seed: u64,
    samples: usize,
    dot: Option<&Path>,
) -> Result<Report> {
    let gamma = q(gamma)?;
    let big_m = match big_m {
        Some(s) => q(s)?,
        None => ratio_from_u64(ctx.ex_values(h, n, n)?.value(n)?),
    };
    let mut cfg = ContainerConfig::new(gamma.clone(), t0, big_m.clone());
    cfg.k_const = k_const.map(q).transpose()?;
    cfg.run_target = match target {
        Target::Available => RunTarget::Available,
        Target::Formula => RunTarget::Formula,
    };
    cfg.policy = order;
    if ctx.budget.is_some() {
        cfg.step_budget = ctx.budget;
    }
    let tree = containers::build_container_tree(n, h, &cfg)?;
    let coverage = match containers::coverage_check(&tree, h) {
        Ok(c) => c,
        Err(Error::TooLarge(_)) => {
            let hosts = containers::random_h_free_hosts(n, h, samples, seed)?;
            containers::coverage_check_sample(&tree, h, &hosts)?
        }
        Err(e) => return Err(e),
    };
    if let Some(path) = dot {
        std::fs::write(path, tree.to_dot())?;
    }
    let t_max = supersat::t_range_bound(&BigUint::from(n), &gamma, h.uniformity())?;
    let e_h = h.compact().0.num_edges();
    let leaf_count = containers::leaf_count_bound(ratio_to_f64(&gamma), ratio_to_f64(&big_m), e_h, t0, t_max as i64)?;
    let ok = tree.complete && coverage.covered;
    report("containers", ok, &ContainersOut { pattern: h.to_text(), tree, coverage, t_max, leaf_count })
}

fn cmd_lower_bound(ctx: &Ctx, h: &Hypergraph, cfg: DeletionConfig, csv: Option<&Path>) -> Result<Report> {
    let cfg = DeletionConfig { enum_budget: ctx.budget, ..cfg };
    let rep = lbound::deletion_experiment(&cfg, h)?;
    if let Some(path) = csv {
        std::fs::write(path, lbound::trials_csv(&rep))?;
    }
    report("lower-bound", rep.all_checks_pass, &rep)
}

fn cmd_count_bound(h: &Hypergraph, input: &CountBoundInput) -> Result<Report> {
    let rep = lbound::count_lower_bound(input, h)?;
    report("count-bound", true, &rep)
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
    };
    let ctx = Ctx { cache, budget: cli.budget };
    match &cli.cmd {
        Cmd::Density { pattern } => cmd_density(&resolve_pattern(pattern)?),
        Cmd::Ex { pattern, n } => cmd_ex(&ctx, &resolve_pattern(pattern)?, *n),
        Cmd::CountFree { pattern, n } => cmd_count(&ctx, &resolve_pattern(pattern)?, *n),
        Cmd::Hypothesis { pattern, n, alpha, gamma } => {
            cmd_hypothesis(&ctx, &resolve_pattern(pattern)?, *n, alpha, gamma.as_deref())
        }
        Cmd::Supersat {
            pattern,
            host,
            n,
            m,
            big_m,
            gamma,
            alpha,
            t0,
            scale_n,
            policy: p,
            seed,
            params_only,
            audit_every,
            trace,
        } => cmd_supersat(
            &ctx,
            &resolve_pattern(pattern)?,
            host.as_deref(),
            n.as_deref(),
            m.as_deref(),
            big_m,
            gamma,
            alpha.as_deref(),
            *t0,
            scale_n,
            policy(*p, *seed),
            *params_only,
            *audit_every,
            *trace,
        ),
        Cmd::Containers { pattern, n, gamma, t0, big_m, k_const, run_target, policy: p, seed, samples, dot } => {
            cmd_containers(
                &ctx,
                &resolve_pattern(pattern)?,
                *n,
                gamma,
                *t0,
                big_m.as_deref(),
                k_const.as_deref(),
                *run_target,
                policy(*p, *seed),
                *seed,
                *samples,
                dot.as_deref(),
            )
        }
        Cmd::LowerBound { pattern, n, m, trials, seed, big_c, small_c, delta, overlap, eps, csv } => {
            let mut cfg = DeletionConfig::new(*n, *m, *seed, *trials);
            cfg.big_c = *big_c;
            cfg.small_c = *small_c;
            cfg.delta = *delta;
            cfg.eps = *eps;
            cfg.overlap = match overlap {
                OverlapArg::CopyEdges => Overlap::CopyEdges,
                OverlapArg::HostVertices => Overlap::HostVertices,
            };
            cmd_lower_bound(&ctx, &resolve_pattern(pattern)?, cfg, csv.as_deref())
        }
        Cmd::CountBound { pattern, n, gamma, delta_prime, m, m_prime, c_const } => {
            let input =
                CountBoundInput { n: *n, gamma: *gamma, delta_prime: *delta_prime, m: *m, m_prime: *m_prime, c: *c_const };
            cmd_count_bound(&resolve_pattern(pattern)?, &input)
        }
    }
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Density { .. } => "density",
        Cmd::Ex { .. } => "ex",
        Cmd::CountFree { .. } => "count-free",
        Cmd::Hypothesis { .. } => "hypothesis",
        Cmd::Supersat { .. } => "supersat",
        Cmd::Containers { .. } => "containers",
        Cmd::LowerBound { .. } => "lower-bound",
        Cmd::CountBound { .. } => "count-bound",
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::MalformedHeader { .. }
        | Error::MalformedEdge { .. }
        | Error::DuplicateEdge { .. }
        | Error::VertexOutOfRange { .. }
        | Error::EdgeCountMismatch { .. }
        | Error::Graph6(_)
        | Error::Io(_)
        | Error::Invalid(_) => 2,
        _ => 4,
    }
}

#[derive(Serialize)]
struct ErrorOut {
    error: String,
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out` unless `--out` names a file. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(std::io::stderr(), "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let name = command_name(&cli.cmd);
    let (code, json) = match pool.install(|| dispatch(&cli)) {
        Ok(rep) => (if rep.ok { 0 } else { 4 }, Some(rep.json)),
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            let body = ErrorOut { error: e.to_string() };
            let json = (code != 2)
                .then(|| serde_json::to_string_pretty(&Envelope { schema: 1, command: name, status: "error", body: &body }).ok())
                .flatten();
            (code, json)
        }
    };
    if let Some(json) = json {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, format!("{json}\n")).map_err(Error::from),
            None => writeln!(out, "{json}").map_err(Error::from),
        };
        if let Err(e) = written {
            eprintln!("error: {e}");
            return 2;
        }
    }
    code
}
