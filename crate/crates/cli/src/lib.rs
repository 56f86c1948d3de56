//! The `arone` command line tool. Every subcommand is a plain function
//! returning its rendered output and exit status, so the binary is a thin
//! shell around [`run`].

pub mod cache;
pub mod range;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use arone_core::arith;
use arone_core::complex::{self, generators, ComplexHandle};
use arone_core::homology::{self, snf, AbelianGroup, GradedGroup};
use arone_core::hopf::{self, Edge, Generator};
use arone_core::kunneth;
use arone_core::verify::{self, TheoremReport};

pub use cache::Cache;
pub use range::RangeList;

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Compute(arone_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Resource(m) => write!(f, "resource guard: {m}"),
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<arone_core::Error> for CliError {
    fn from(e: arone_core::Error) -> Self {
        use arone_core::Error as E;
        match e {
            E::ZeroValuation
            | E::InvalidArgument(_)
            | E::NotPrimePower(_)
            | E::NotInJ { .. }
            | E::MalformedBasis(..) => CliError::Usage(e.to_string()),
            E::Overflow(what) => CliError::Resource(format!("arithmetic overflow in {what}")),
            E::Internal(_) => CliError::Compute(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command printed and the status it wants to exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

#[derive(Debug, Parser)]
#[command(name = "arone", version, about = "Exact Ext-group computations from Arone's complex")]
pub struct Cli {
    /// Result cache directory (overrides ARONE_CACHE_DIR)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore any configured cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Refuse jobs whose largest differential has more nonzeros than this
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    H1,
    H2,
    Top,
    Modpn,
    Z1,
    Granville,
    Kummer,
    Theta,
    Kunneth,
    Lambda,
    Hopf,
    Comparison,
    Complex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grid of Ext^i(a, S^d o a) for 1 <= d <= d_max, 0 <= i <= i_max
    Table {
        #[arg(long, default_value_t = 9)]
        d_max: usize,
        #[arg(long, default_value_t = 8)]
        i_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Cohomology of AC(d), integrally or with Z/p^N coefficients
    Homology {
        #[arg(long)]
        d: RangeList,
        /// Only these degrees (only the two differentials around them are built)
        #[arg(long)]
        k: Option<RangeList>,
        #[arg(long, requires = "big_n")]
        p: Option<u64>,
        #[arg(long = "N", requires = "p")]
        big_n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check a family of closed forms; one JSON report per line
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        d: Option<RangeList>,
        #[arg(long)]
        p: Option<RangeList>,
        #[arg(long = "N")]
        big_n: Option<RangeList>,
        /// Upper end of the integer range for arithmetic suites
        #[arg(long)]
        n: Option<RangeList>,
        #[arg(long)]
        c: Option<RangeList>,
        /// Padding bound for the hopf relations (identity strands around each generator)
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Print a matrix, a cochain or a normal form
    Dump {
        #[command(subcommand)]
        object: DumpObject,
    },
    /// Ext^*(a, (S o a)^{(x)c}) in total degree d
    Kunneth {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ext^*(a, (Lambda o a)^{(x)c}) in total degree d
    Lambda {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inspect or empty the result cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorKind {
    H1,
    H2,
    Top,
    U,
    Modpn,
    Z1,
}

#[derive(Debug, Subcommand)]
pub enum DumpObject {
    /// delta^k of AC(d) as sparse (row, col, value) triplets
    Differential {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// An explicit cocycle
    Generator {
        #[arg(long, value_enum)]
        kind: GeneratorKind,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Smith normal form of delta^k
    Snf {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Include the unimodular transforms U, V with U A V = D
        #[arg(long)]
        transforms: bool,
    },
    /// E_d of one generator with n strands on the left and m on the right
    EdMatrix {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        gen: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CacheAction {
    /// Print the cache directory
    Path,
    /// List cached entries
    List,
    /// Delete every entry
    Clear,
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Context {
    pub cache: Option<Cache>,
    pub budget: usize,
}

impl Default for Context {
    fn default() -> Self {
        Context { cache: None, budget: DEFAULT_BUDGET }
    }
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Self {
        let cache = if cli.no_cache { None } else { Cache::resolve(cli.cache_dir.as_deref()) };
        Context { cache, budget: cli.budget }
    }

    /// Refuses the job when some `delta^k` with `k` in `ks` is too large.
    fn guard(&self, d: usize, ks: impl IntoIterator<Item = usize>) -> CliResult<()> {
        let worst = ks.into_iter().filter(|&k| k < d).map(|k| complex::differential_nnz(d, k)).max().unwrap_or(0);
        if worst > self.budget as u128 {
            return Err(CliError::Resource(format!(
                "d = {d} needs a differential with {worst} nonzeros, over the budget of {}; raise --budget to force it",
                self.budget
            )));
        }
        Ok(())
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let ctx = Context::from_cli(cli);
    match &cli.command {
        Command::Table { d_max, i_max, format } => cmd_table(&ctx, *d_max, *i_max, *format).map(Outcome::ok),
        Command::Homology { d, k, p, big_n, format } => {
            let coeffs = p.zip(*big_n);
            cmd_homology(&ctx, d, k.as_ref(), coeffs, *format).map(Outcome::ok)
        }
        Command::Verify { suite, d, p, big_n, n, c, rank } => {
            let ranges = VerifyRanges {
                d: d.clone(),
                p: p.clone(),
                big_n: big_n.clone(),
                n: n.clone(),
                c: c.clone(),
                rank: *rank,
            };
            cmd_verify(&ctx, *suite, &ranges)
        }
        Command::Dump { object } => cmd_dump(&ctx, object).map(Outcome::ok),
        Command::Kunneth { c, d, format } => cmd_kunneth(*c, *d, *format, false).map(Outcome::ok),
        Command::Lambda { c, d, format } => cmd_kunneth(*c, *d, *format, true).map(Outcome::ok),
        Command::Cache { action } => cmd_cache(&ctx, *action).map(Outcome::ok),
    }
}

/// `homology_all(d)`, through the cache when one is configured.
pub fn cached_homology_all(ctx: &Context, d: usize) -> CliResult<GradedGroup> {
    let params = json!({ "d": d });
    let v = cache::cached(ctx.cache.as_ref(), "homology_all", &params, || -> CliResult<Value> {
        Ok(homology::homology_all(d)?.to_json())
    })?;
    Ok(GradedGroup::from_json(&v)?)
}

pub fn cmd_table(ctx: &Context, d_max: usize, i_max: usize, format: Format) -> CliResult<String> {
    if d_max == 0 {
        return Err(CliError::Usage("--d-max must be at least 1".into()));
    }
    for d in 1..=d_max {
        ctx.guard(d, 0..d)?;
    }
    let rows: Vec<GradedGroup> =
        (1..=d_max).into_par_iter().map(|d| cached_homology_all(ctx, d)).collect::<CliResult<_>>()?;
    let cell = |row: &GradedGroup, i: usize| row.get(i);
    let mut out = String::new();
    match format {
        Format::Markdown | Format::Text => {
            let header: Vec<String> = (0..=i_max).map(|i| i.to_string()).collect();
            writeln!(out, "| d \\ i | {} |", header.join(" | ")).unwrap();
            writeln!(out, "|---|{}", "---|".repeat(i_max + 1)).unwrap();
            for (d, row) in (1..).zip(&rows) {
                let cells: Vec<String> = (0..=i_max).map(|i| cell(row, i).chain_string()).collect();
                writeln!(out, "| {d} | {} |", cells.join(" | ")).unwrap();
            }
        }
        Format::Csv => {
            let header: Vec<String> = (0..=i_max).map(|i| i.to_string()).collect();
            writeln!(out, "d,{}", header.join(",")).unwrap();
            for (d, row) in (1..).zip(&rows) {
                let cells: Vec<String> = (0..=i_max).map(|i| cell(row, i).chain_string()).collect();
                writeln!(out, "{d},{}", cells.join(",")).unwrap();
            }
        }
        Format::Json => {
            let mut table = serde_json::Map::new();
            for (d, row) in (1usize..).zip(&rows) {
                let cells: serde_json::Map<String, Value> = row
                    .0
                    .iter()
                    .filter(|(&i, g)| i <= i_max && !g.is_zero())
                    .map(|(i, g)| (i.to_string(), Value::from(g.canonical_string())))
                    .collect();
                table.insert(d.to_string(), Value::Object(cells));
            }
            writeln!(out, "{}", Value::Object(table)).unwrap();
        }
    }
    Ok(out)
}

pub fn cmd_homology(
    ctx: &Context,
    ds: &RangeList,
    ks: Option<&RangeList>,
    coeffs: Option<(u64, u32)>,
    format: Format,
) -> CliResult<String> {
    let mut out = String::new();
    for &d in ds.values() {
        let d = d as usize;
        if d == 0 {
            return Err(CliError::Usage("d must be positive".into()));
        }
        let degrees: Vec<usize> = match ks {
            Some(ks) => ks.values().iter().map(|&k| k as usize).filter(|&k| k < d).collect(),
            None => (0..d).collect(),
        };
        ctx.guard(d, degrees.iter().flat_map(|&k| [k.saturating_sub(1), k]))?;
        match coeffs {
            None => {
                let groups: GradedGroup = if ks.is_none() {
                    cached_homology_all(ctx, d)?
                } else {
                    let h = ComplexHandle::new(d)?;
                    let mut g = GradedGroup::new();
                    for &k in &degrees {
                        g.insert(k, homology::homology_at(&h, k)?);
                    }
                    g
                };
                match format {
                    Format::Json => writeln!(out, "{}", json!({ "d": d, "homology": groups.to_json() })).unwrap(),
                    _ => writeln!(out, "d={d}: {groups}").unwrap(),
                }
            }
            Some((p, big_n)) => {
                let per_degree: Vec<(usize, Vec<u64>)> = degrees
                    .par_iter()
                    .map(|&k| Ok((k, homology::homology_mod_pn(p, big_n, d, k)?)))
                    .collect::<CliResult<_>>()?;
                match format {
                    Format::Json => {
                        let map: serde_json::Map<String, Value> =
                            per_degree.iter().map(|(k, o)| (k.to_string(), json!(o))).collect();
                        writeln!(out, "{}", json!({ "d": d, "p": p, "N": big_n, "orders": map })).unwrap();
                    }
                    _ => {
                        let parts: Vec<String> = per_degree
                            .iter()
                            .filter(|(_, o)| !o.is_empty())
                            .map(|(k, o)| {
                                let g: Vec<String> = o.iter().map(|x| format!("Z/{x}")).collect();
                                format!("{k}: {}", g.join(" + "))
                            })
                            .collect();
                        let body = if parts.is_empty() { "0".to_string() } else { format!("{{{}}}", parts.join(", ")) };
                        writeln!(out, "d={d} mod {p}^{big_n}: {body}").unwrap();
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Parameter ranges for `verify`; unset fields fall back to the suite's default.
#[derive(Debug, Clone, Default)]
pub struct VerifyRanges {
    pub d: Option<RangeList>,
    pub p: Option<RangeList>,
    pub big_n: Option<RangeList>,
    pub n: Option<RangeList>,
    pub c: Option<RangeList>,
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
enum Job {
    H1(usize),
    H2(usize),
    Top(usize),
    Modpn(u64, u32, usize),
    Z1(u64, u32, usize),
    Granville(u64, u32, u64),
    Kummer(u64, u64),
    Theta(u64, u64),
    Kunneth(usize, usize),
    Lambda(usize, usize),
    Hopf(usize, usize),
    Comparison(usize),
    Complex(usize),
}

impl Job {
    fn run(self) -> arone_core::Result<TheoremReport> {
        match self {
            Job::H1(d) => verify::verify_h1(d),
            Job::H2(d) => verify::verify_h2(d),
            Job::Top(d) => verify::verify_top_degrees(d),
            Job::Modpn(p, n, d) => verify::verify_h1_modpn(p, n, d),
            Job::Z1(p, n, d) => verify::verify_z1_modpn(p, n, d),
            Job::Granville(p, n, m) => verify::verify_granville(p, n, m),
            Job::Kummer(p, m) => verify::verify_kummer(p, m),
            Job::Theta(p, m) => verify::verify_mu_theta(p, m),
            Job::Kunneth(c, d) => verify::verify_kunneth(c, d),
            Job::Lambda(c, d) => verify::verify_lambda(c, d),
            Job::Hopf(d, b) => verify::verify_hopf(d, b),
            Job::Comparison(d) => verify::verify_ext1_comparison(d),
            Job::Complex(d) => verify::verify_delta_squared(d),
        }
    }
}

fn primes_in(r: &RangeList) -> CliResult<Vec<u64>> {
    r.values()
        .iter()
        .map(|&p| if arith::is_prime(p) { Ok(p) } else { Err(CliError::Usage(format!("{p} is not prime"))) })
        .collect()
}

fn exponents(r: &RangeList) -> CliResult<Vec<u32>> {
    r.values()
        .iter()
        .map(|&n| match u32::try_from(n) {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(CliError::Usage(format!("N = {n} must be a positive exponent"))),
        })
        .collect()
}

fn jobs_for(ctx: &Context, suite: Suite, r: &VerifyRanges) -> CliResult<Vec<Job>> {
    let or = |v: &Option<RangeList>, lo: u64, hi: u64| v.clone().unwrap_or_else(|| RangeList::span(lo, hi));
    let ds = |lo, hi| -> Vec<usize> { or(&r.d, lo, hi).values().iter().map(|&d| d as usize).collect() };
    let check_d = |ds: &[usize], min: usize| -> CliResult<()> {
        match ds.iter().find(|&&d| d < min) {
            Some(d) => Err(CliError::Usage(format!("d = {d} is below {min}"))),
            None => Ok(()),
        }
    };
    let local = |mk: fn(u64, u32, usize) -> Job| -> CliResult<Vec<Job>> {
        let ps = primes_in(&r.p.clone().unwrap_or_else(|| "2,3,5".parse().unwrap()))?;
        let ns = exponents(&or(&r.big_n, 1, 3))?;
        let d_list = ds(2, 20);
        check_d(&d_list, 2)?;
        for &d in &d_list {
            ctx.guard(d, 0..2)?;
        }
        let mut jobs = Vec::new();
        for &p in &ps {
            for &n in &ns {
                jobs.extend(d_list.iter().map(|&d| mk(p, n, d)));
            }
        }
        Ok(jobs)
    };
    let jobs = match suite {
        Suite::H1 | Suite::H2 | Suite::Top | Suite::Comparison | Suite::Complex => {
            let (lo, hi, top_k, make): (u64, u64, Option<usize>, fn(usize) -> Job) = match suite {
                Suite::H1 => (2, 64, Some(1), Job::H1),
                Suite::H2 => (2, 48, Some(2), Job::H2),
                Suite::Comparison => (2, 32, Some(1), Job::Comparison),
                Suite::Complex => (1, 12, None, Job::Complex),
                _ => (2, 12, None, Job::Top),
            };
            let d_list = ds(lo, hi);
            check_d(&d_list, lo as usize)?;
            for &d in &d_list {
                ctx.guard(d, 0..=top_k.unwrap_or(d))?;
            }
            d_list.into_iter().map(make).collect()
        }
        Suite::Modpn => local(Job::Modpn)?,
        Suite::Z1 => local(Job::Z1)?,
        Suite::Granville => {
            let ps = primes_in(&r.p.clone().unwrap_or_else(|| "2,3,5,7".parse().unwrap()))?;
            let ns = exponents(&or(&r.big_n, 1, 4))?;
            let n_max = or(&r.n, 0, 120).max();
            ps.iter().flat_map(|&p| ns.iter().map(move |&n| Job::Granville(p, n, n_max))).collect()
        }
        Suite::Kummer => {
            let ps = primes_in(&r.p.clone().unwrap_or_else(|| "2,3,5,7,11,13".parse().unwrap()))?;
            let n_max = or(&r.n, 0, 200).max();
            ps.into_iter().map(|p| Job::Kummer(p, n_max)).collect()
        }
        Suite::Theta => {
            let ps = primes_in(&r.p.clone().unwrap_or_else(|| "2,3,5,7".parse().unwrap()))?;
            let d_max = or(&r.d, 1, 200).max();
            ps.into_iter().map(|p| Job::Theta(p, d_max)).collect()
        }
        Suite::Kunneth => {
            let cs = or(&r.c, 2, 2);
            let d_list = ds(2, 5);
            cs.values()
                .iter()
                .flat_map(|&c| d_list.iter().map(move |&d| Job::Kunneth(c as usize, d)))
                .collect()
        }
        Suite::Lambda => {
            let d_list = ds(1, 12);
            let cs = or(&r.c, 1, d_list.iter().copied().max().unwrap_or(1) as u64);
            d_list
                .iter()
                .flat_map(|&d| {
                    cs.values().iter().map(|&c| c as usize).filter(move |&c| c >= 1 && c <= d).map(move |c| Job::Lambda(c, d))
                })
                .collect()
        }
        Suite::Hopf => {
            let d_list: Vec<usize> = match &r.d {
                Some(d) => d.values().iter().map(|&d| d as usize).collect(),
                None => vec![2, 3, 4, 5, 8, 9],
            };
            let bound = r.rank.unwrap_or(2);
            d_list.into_iter().map(|d| Job::Hopf(d, bound)).collect()
        }
    };
    Ok(jobs)
}

/// Runs a suite; exit status 0 iff every report passes.
pub fn cmd_verify(ctx: &Context, suite: Suite, ranges: &VerifyRanges) -> CliResult<Outcome> {
    let jobs = jobs_for(ctx, suite, ranges)?;
    let reports: Vec<TheoremReport> = jobs.par_iter().map(|j| j.run()).collect::<arone_core::Result<_>>()?;
    let mut out = String::new();
    for r in &reports {
        writeln!(out, "{}", serde_json::to_string(r).expect("reports serialize")).unwrap();
    }
    let code = if reports.iter().all(TheoremReport::passed) { 0 } else { 1 };
    Ok(Outcome { stdout: out, code })
}

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required here")))
}

fn triplets_json(m: &homology::SparseIntMatrix) -> Value {
    let entries: Vec<Value> = m.triplets().map(|(i, j, v)| json!([i, j, v.to_string()])).collect();
    json!({ "rows": m.rows, "cols": m.cols, "entries": entries })
}

pub fn cmd_dump(ctx: &Context, object: &DumpObject) -> CliResult<String> {
    let mut out = String::new();
    match object {
        DumpObject::Differential { d, k, format } => {
            if *k >= *d {
                return Err(CliError::Usage(format!("delta^{k} does not exist for d = {d}")));
            }
            ctx.guard(*d, [*k])?;
            let m = complex::differential_matrix(*d, *k);
            match format {
                Format::Json => {
                    let legend = |deg: usize| -> Vec<String> {
                        complex::enumerate_basis(*d, deg).iter().map(ToString::to_string).collect()
                    };
                    let mut v = triplets_json(&m);
                    v["row_basis"] = json!(legend(k + 1));
                    v["col_basis"] = json!(legend(*k));
                    writeln!(out, "{v}").unwrap();
                }
                _ => {
                    let parts: Vec<String> = m.triplets().map(|(i, j, v)| format!("({i},{j},{v})")).collect();
                    writeln!(out, "[{}]", parts.join(",")).unwrap();
                }
            }
        }
        DumpObject::Generator { kind, d, p, big_n, n, m } => {
            let cochains = match kind {
                GeneratorKind::H1 => vec![generators::h1_generator(need(*d, "d")?)?],
                GeneratorKind::Top => vec![generators::top_generator(need(*d, "d")?)?],
                GeneratorKind::U => vec![generators::u_cochain(need(*d, "d")?, need(*m, "m")? as usize)?],
                GeneratorKind::H2 => vec![generators::h2_generator(need(*p, "p")?, need(*n, "n")?, need(*m, "m")?)?],
                GeneratorKind::Modpn => {
                    vec![generators::h1_modpn_generator(need(*p, "p")?, need(*big_n, "N")?, need(*d, "d")?)?]
                }
                GeneratorKind::Z1 => generators::z1_modpn_generators(need(*p, "p")?, need(*big_n, "N")?, need(*d, "d")?)?,
            };
            for c in cochains {
                writeln!(out, "{c}").unwrap();
            }
        }
        DumpObject::Snf { d, k, transforms } => {
            if *k >= *d {
                return Err(CliError::Usage(format!("delta^{k} does not exist for d = {d}")));
            }
            ctx.guard(*d, [*k])?;
            let a = complex::differential_matrix(*d, *k);
            let s = snf::smith_normal_form(&a, *transforms);
            let factors: Vec<String> = s.invariant_factors.iter().map(ToString::to_string).collect();
            let mut v = json!({
                "d": d, "k": k, "rows": s.rows, "cols": s.cols, "rank": s.rank, "invariant_factors": factors,
            });
            if let Some(t) = &s.transforms {
                v["left"] = triplets_json(&t.left);
                v["right"] = triplets_json(&t.right);
            }
            writeln!(out, "{v}").unwrap();
        }
        DumpObject::EdMatrix { d, gen, n, m, format } => {
            let g = Generator::parse(gen)?;
            let edge = Edge::new(*n, g, *m);
            let functor = hopf::EdFunctor::new(*d)?;
            let e = functor.edge(&edge)?;
            let legend = |rank: usize| -> Vec<String> {
                let b = functor.basis(rank);
                let mut names: Vec<String> = (0..b.len()).map(|i| b.render(i)).collect();
                names.extend((1..=rank).map(|i| format!("x{i}")));
                names
            };
            let (rows, cols) = (legend(e.target), legend(e.source));
            let block = e.block();
            match format {
                Format::Json => {
                    let v = json!({
                        "d": d, "edge": edge.to_string(), "row_basis": rows, "col_basis": cols, "matrix": block,
                    });
                    writeln!(out, "{v}").unwrap();
                }
                _ => {
                    writeln!(out, "E_{d}({edge}): {} x {}", rows.len(), cols.len()).unwrap();
                    let width = rows.iter().map(String::len).max().unwrap_or(0);
                    writeln!(out, "{:width$}  {}", "", cols.join(" ")).unwrap();
                    for (name, row) in rows.iter().zip(&block) {
                        let cells: Vec<String> =
                            row.iter().zip(&cols).map(|(v, c)| format!("{v:>w$}", w = c.len())).collect();
                        writeln!(out, "{name:width$}  {}", cells.join(" ")).unwrap();
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn cmd_kunneth(c: usize, d: usize, format: Format, exterior: bool) -> CliResult<String> {
    if c == 0 || d < c {
        return Err(CliError::Usage(format!("need 1 <= c <= d, got c = {c}, d = {d}")));
    }
    let g = if exterior { kunneth::ext_tensorpower_lambda(c, d)? } else { kunneth::ext_tensorpower_sd(c, d)? };
    Ok(match format {
        Format::Json => format!("{}\n", json!({ "c": c, "d": d, "ext": g.to_json() })),
        _ => format!("{g}\n"),
    })
}

pub fn cmd_cache(ctx: &Context, action: CacheAction) -> CliResult<String> {
    let cache = ctx
        .cache
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("no cache configured; pass --cache-dir or set {}", cache::ENV_VAR)))?;
    Ok(match action {
        CacheAction::Path => format!("{}\n", cache.dir().display()),
        CacheAction::List => cache.entries().iter().map(|p| format!("{}\n", p.display())).collect(),
        CacheAction::Clear => format!("removed {} entries\n", cache.clear()?),
    })
}

/// Renders a group as the table does, for callers comparing against it.
pub fn table_cell(g: &AbelianGroup) -> String {
    g.chain_string()
}
