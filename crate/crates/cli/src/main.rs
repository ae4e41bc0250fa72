//! `lieseries`: decompositions, diagram induction and the verification
//! suites from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lieseries::chars::{casimir, decompose_character, irr_character, tensor, weyl_dimension};
use lieseries::induction::{aad_chains, achain_induced, largest_quadrics, plethysm_multiplicity, quadric_induced};
use lieseries::plethysm::{Partition, Plethysm};
use lieseries::rational::{fmt_q, parse_q};
use lieseries::series::verify::{Budget, Selection, verify_series};
use lieseries::series::SeriesCatalog;
use lieseries::suites::{Suite, SuiteParams, TABLED_SERIES, run_all, run_suite};
use lieseries::{CasimirNormalization, Decomposition, Error, Limits, Report, RootSystem, Status, Weight};

#[derive(Parser, Debug)]
#[command(name = "lieseries", version, about = "Exact representation theory of simple Lie algebras and their series")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Casimir normalization to report; both when omitted.
    #[arg(long, global = true, value_enum)]
    norm: Option<Norm>,
    /// Largest admissible character mass.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Directory of series tables replacing the bundled ones.
    #[arg(long, global = true, value_name = "PATH")]
    data: Option<PathBuf>,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Norm {
    HighestRoot,
    Killing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose an irreducible module or one of its powers.
    Decompose(DecomposeArgs),
    /// Run verification suites; exits 1 when any check differs.
    Verify(VerifyArgs),
    /// Weights induced from subdiagrams, checked against the plethysm.
    Induce(InduceArgs),
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    /// Algebra type, e.g. `E6` or `A1xA1`.
    algebra: String,
    /// Highest weight: `1,0,0`, `omega2`, `adjoint` or `trivial`.
    weight: String,
    /// Tensor with a second module: `[ALGEBRA] WEIGHT`.
    #[arg(long, num_args = 1..=2, value_names = ["ALGEBRA", "WEIGHT"], group = "power")]
    tensor: Option<Vec<String>>,
    #[arg(long, value_name = "K", group = "power")]
    sym: Option<u32>,
    #[arg(long, value_name = "K", group = "power")]
    ext: Option<u32>,
    /// Schur functor of a partition, e.g. `2,1`.
    #[arg(long, value_name = "PARTITION", group = "power")]
    schur: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Every suite at the given budgets.
    #[arg(long, conflicts_with_all = ["series", "suite", "identity"])]
    all: bool,
    /// A tabled series: exceptional, subexceptional, severi, severi-section.
    #[arg(long)]
    series: Option<String>,
    /// Restrict a series run to the column at this `m`, e.g. `-2/3`.
    #[arg(long, requires = "series", allow_hyphen_values = true)]
    m: Option<String>,
    /// A tabled identity or generating function, or the name of a suite.
    #[arg(long)]
    identity: Option<String>,
    /// Named suites; repeatable.
    #[arg(long)]
    suite: Vec<String>,
    /// Every identity of the selected columns (the default).
    #[arg(long)]
    all_identities: bool,
    /// Every tabled row (the default).
    #[arg(long)]
    all_rows: bool,
    /// Largest `n` for the triple-product lemma.
    #[arg(long, value_name = "N")]
    n_max: Option<u32>,
    /// Fixed plethysm degree cap for series tables.
    #[arg(long, value_name = "K")]
    max_degree: Option<u32>,
    /// Show both sides of every check.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct InduceArgs {
    algebra: String,
    weight: String,
    /// Second weight, for the Aad construction.
    second: Option<String>,
    /// Quadric-type components of `S^2 V`.
    #[arg(long, group = "mode")]
    quadric: bool,
    /// Components of `L^k V` induced from type A chains.
    #[arg(long, group = "mode")]
    achain: bool,
    /// Aad components of `V (x) W`: `all` chains or the longest (`full-chain`).
    #[arg(long, group = "mode", value_name = "CHAIN", num_args = 0..=1, default_missing_value = "all")]
    aad: Option<String>,
    /// Exterior degree for `--achain`.
    #[arg(long, default_value_t = 2)]
    k: usize,
}

/// Usage-level failure: one line on stderr, exit status 2.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let res = match &cli.command {
        Command::Decompose(a) => decompose(&cli.global, a).map(|_| ExitCode::SUCCESS),
        Command::Verify(a) => verify(&cli.global, a),
        Command::Induce(a) => induce(&cli.global, a).map(|_| ExitCode::SUCCESS),
    };
    res.unwrap_or_else(|Usage(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}

fn limits(g: &Global) -> Limits {
    let mut l = Limits::default();
    if let Some(b) = g.budget {
        l.max_mass = b;
    }
    l
}

fn algebra(s: &str) -> Result<RootSystem, Usage> {
    Ok(RootSystem::from_str_type(s)?)
}

/// `1,0,0`, `[1,0,0]`, `omegaN` (1-based), `adjoint` or `trivial`.
fn weight(rs: &RootSystem, s: &str) -> Result<Weight, Usage> {
    let t = s.trim().to_ascii_lowercase();
    let w = if t == "adjoint" {
        if !rs.is_simple() {
            return Err(Usage(format!("`adjoint` needs a simple algebra, got {}", rs.algebra_type())));
        }
        rs.highest_root().clone()
    } else if t == "trivial" {
        Weight::zero(rs.rank())
    } else if let Some(n) = t.strip_prefix("omega").or_else(|| t.strip_prefix('w')) {
        let i: usize = n.parse().map_err(|_| Usage(format!("bad weight `{s}`")))?;
        if i == 0 || i > rs.rank() {
            return Err(Usage(format!("{s}: node out of range 1..={}", rs.rank())));
        }
        Weight::fundamental(rs.rank(), i - 1)
    } else {
        s.parse()?
    };
    rs.check(&w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()).into());
    }
    Ok(w)
}

fn norms(g: &Global) -> Vec<(CasimirNormalization, &'static str)> {
    let hr = (CasimirNormalization::HighestRoot, "highest-root");
    let k = (CasimirNormalization::Killing, "killing");
    match g.norm {
        None => vec![hr, k],
        Some(Norm::HighestRoot) => vec![hr],
        Some(Norm::Killing) => vec![k],
    }
}

fn decompose(g: &Global, a: &DecomposeArgs) -> Result<(), Usage> {
    let rs = algebra(&a.algebra)?;
    let lambda = weight(&rs, &a.weight)?;
    let mut lim = limits(g);
    let (what, d) = if let Some(t) = &a.tensor {
        let (alg, w) = match t.as_slice() {
            [w] => (None, w),
            [alg, w] => (Some(alg), w),
            _ => unreachable!("clap enforces one or two values"),
        };
        if let Some(alg) = alg {
            let other = algebra(alg)?;
            if other.algebra_type() != rs.algebra_type() {
                return Err(Usage(format!("cannot tensor {} with {}", rs.algebra_type(), other.algebra_type())));
            }
        }
        let mu = weight(&rs, w)?;
        (format!("{lambda} (x) {mu}"), tensor(&rs, &lambda, &mu, &lim)?)
    } else {
        let chi = (*irr_character(&rs, &lambda, &lim)?).clone();
        let (what, k, p) = if let Some(k) = a.sym {
            (format!("S^{k} {lambda}"), k, Partition::new(vec![k])?)
        } else if let Some(k) = a.ext {
            (format!("L^{k} {lambda}"), k, Partition::new(vec![1; k as usize])?)
        } else if let Some(s) = &a.schur {
            let parts = s
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Usage(format!("bad partition `{s}`")))?;
            let p = Partition::new(parts)?;
            (format!("S_{p} {lambda}"), p.size(), p)
        } else {
            (lambda.to_string(), 1, Partition::new(vec![1])?)
        };
        lim.max_plethysm_degree = lim.max_plethysm_degree.max(k as usize);
        let mut engine = Plethysm::new(&rs, chi, lim);
        let ch = engine.schur(&p)?;
        (what, decompose_character(&rs, &ch, &lim)?)
    };
    print_decomposition(g, &rs, &what, &d)
}

fn print_decomposition(g: &Global, rs: &RootSystem, what: &str, d: &Decomposition) -> Result<(), Usage> {
    let norms = norms(g);
    let mut rows = Vec::new();
    for (w, &m) in d.terms() {
        let dim = weyl_dimension(rs, w)?;
        let cas = norms.iter().map(|(n, _)| casimir(rs, w, *n).map(|c| fmt_q(&c))).collect::<Result<Vec<_>, _>>()?;
        rows.push((dim, w.clone(), m, cas));
    }
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let total = d.dim(rs)?;
    match g.format {
        Format::Records => {
            for (dim, w, m, cas) in &rows {
                let mut obj = serde_json::json!({
                    "algebra": rs.algebra_type().to_string(),
                    "module": what,
                    "weight": w.to_string(),
                    "multiplicity": m,
                    "dim": dim,
                });
                for ((_, name), c) in norms.iter().zip(cas) {
                    obj[format!("casimir_{}", name.replace('-', "_"))] = serde_json::Value::String(c.clone());
                }
                println!("{obj}");
            }
        }
        Format::Table => {
            println!("{} {what}: dim {total}", rs.algebra_type());
            let head: Vec<String> = norms.iter().map(|(_, n)| format!("casimir({n})")).collect();
            println!("  {:>5}  {:<24} {:>12}  {}", "mult", "weight", "dim", head.join("  "));
            for (dim, w, m, cas) in &rows {
                println!("  {m:>5}  {:<24} {dim:>12}  {}", w.to_string(), cas.join("  "));
            }
            let sum: Vec<String> = rows
                .iter()
                .map(|(dim, _, m, _)| if *m == 1 { dim.to_string() } else { format!("{m}*{dim}") })
                .collect();
            println!("  {total} = {}", if sum.is_empty() { "0".into() } else { sum.join(" + ") });
        }
    }
    Ok(())
}

fn catalog(g: &Global) -> Result<SeriesCatalog, Usage> {
    Ok(match &g.data {
        Some(p) => SeriesCatalog::load_dir(p)?,
        None => SeriesCatalog::builtin()?,
    })
}

fn verify(g: &Global, a: &VerifyArgs) -> Result<ExitCode, Usage> {
    let cat = catalog(g)?;
    let budget = Budget {
        limits: limits(g),
        max_degree: a.max_degree,
    };
    let mut params = SuiteParams::default();
    if let Some(n) = a.n_max {
        params.mu_n_max = n;
    }
    let mut reports: Vec<Report> = Vec::new();
    if a.all {
        reports = run_all(&cat, &params, &budget);
    } else if let Some(s) = &a.series {
        let sel = Selection {
            m: a.m.as_deref().map(parse_q).transpose()?,
            identity: a.identity.clone(),
        };
        let mut r = verify_series(&cat, s.parse()?, &sel, &budget)?;
        r.suite = s.clone();
        reports.push(r);
    } else if let Some(id) = &a.identity {
        if let Ok(suite) = id.parse::<Suite>() {
            reports.push(run_suite(&cat, suite, &params, &budget)?);
        } else {
            let sel = Selection {
                m: None,
                identity: Some(id.clone()),
            };
            for s in TABLED_SERIES {
                let Ok(file) = cat.file(s) else { continue };
                let has = file.identities.iter().any(|i| &i.id == id)
                    || file.generating_functions.iter().any(|gf| &gf.id == id);
                if has {
                    reports.push(verify_series(&cat, s, &sel, &budget)?);
                }
            }
            if reports.is_empty() {
                return Err(Usage(format!("no suite or tabled identity named `{id}`")));
            }
        }
    }
    for s in &a.suite {
        reports.push(run_suite(&cat, s.parse()?, &params, &budget)?);
    }
    if reports.is_empty() {
        return Err(Usage("nothing selected; use --all, --series, --identity or --suite".into()));
    }
    print_reports(g, &reports, a.verbose);
    let diff = reports.iter().any(Report::has_diff);
    Ok(if diff { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

const STATUSES: [Status; 4] = [Status::Match, Status::Diff, Status::SkippedBudget, Status::ExpectedOpenQuestion];

fn counts(r: &Report) -> String {
    STATUSES
        .iter()
        .map(|s| format!("{} {s}", r.count(*s)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_reports(g: &Global, reports: &[Report], verbose: bool) {
    match g.format {
        Format::Records => {
            for r in reports {
                for rec in &r.records {
                    let mut v = serde_json::to_value(rec).unwrap_or_default();
                    v["suite"] = serde_json::Value::String(r.suite.clone());
                    println!("{v}");
                }
            }
        }
        Format::Table => {
            let mut all = Report::new("total");
            for r in reports {
                println!("== {}", r.suite);
                for rec in &r.records {
                    println!("  {:<22} {}  [{}]", rec.status.to_string(), rec.id, rec.anchor);
                    if verbose || rec.status != Status::Match {
                        if !rec.left.is_empty() || !rec.right.is_empty() {
                            println!("      left:  {}", rec.left);
                            println!("      right: {}", rec.right);
                        }
                        if let Some(d) = &rec.detail {
                            println!("      {d}");
                        }
                    }
                }
                println!("  {}: {}", r.suite, counts(r));
                all.records.extend(r.records.iter().cloned());
            }
            println!("total: {}", counts(&all));
        }
    }
}

fn induce(g: &Global, a: &InduceArgs) -> Result<(), Usage> {
    let rs = algebra(&a.algebra)?;
    let lambda = weight(&rs, &a.weight)?;
    let lim = limits(g);
    let mut lines: Vec<(String, Weight, i128, &str)> = Vec::new();
    let module;
    if a.quadric {
        module = format!("S^2 {lambda}");
        let found = quadric_induced(&rs, &lambda)?;
        let best: Vec<_> = largest_quadrics(&found).into_iter().map(|q| q.embedding.clone()).collect();
        for q in &found {
            let m = plethysm_multiplicity(&rs, &lambda, &q.tau, 2, false, &lim)?;
            let nodes = one_based(&q.embedding.nodes);
            let tag = if best.contains(&q.embedding) { "largest" } else { "" };
            lines.push((format!("{} on nodes {nodes}, dim Q = {}", q.embedding.sub_type, q.dim_q), q.tau.clone(), m, tag));
        }
    } else if a.achain {
        module = format!("L^{} {lambda}", a.k);
        for (e, tau) in achain_induced(&rs, &lambda, a.k)? {
            let m = plethysm_multiplicity(&rs, &lambda, &tau, a.k as u32, true, &lim)?;
            lines.push((format!("{} on nodes {}", e.sub_type, one_based(&e.nodes)), tau, m, ""));
        }
    } else if let Some(which) = &a.aad {
        let second = a.second.as_deref().ok_or_else(|| Usage("--aad needs a second weight".into()))?;
        let mu = weight(&rs, second)?;
        module = format!("{lambda} (x) {mu}");
        let mut chains = aad_chains(&rs, &lambda, &mu)?;
        match which.as_str() {
            "all" => {}
            "full-chain" => {
                let longest = chains.iter().map(|(e, _)| e.nodes.len()).max().unwrap_or(0);
                chains.retain(|(e, _)| e.nodes.len() == longest);
            }
            other => return Err(Usage(format!("unknown chain selector `{other}`; use all or full-chain"))),
        }
        let prod = tensor(&rs, &lambda, &mu, &lim)?;
        for (e, tau) in chains {
            let m = prod.get(&tau);
            let tag = if rs.is_simple() && &tau == rs.highest_root() { "adjoint" } else { "" };
            lines.push((format!("{} on nodes {}", e.sub_type, one_based(&e.nodes)), tau, m, tag));
        }
    } else {
        return Err(Usage("choose one of --quadric, --achain, --aad".into()));
    }
    match g.format {
        Format::Records => {
            for (sub, tau, m, tag) in &lines {
                let obj = serde_json::json!({
                    "algebra": rs.algebra_type().to_string(),
                    "module": module,
                    "subdiagram": sub,
                    "weight": tau.to_string(),
                    "multiplicity": m,
                    "contained": *m > 0,
                    "tag": tag,
                });
                println!("{obj}");
            }
        }
        Format::Table => {
            println!("{} {module}: {} induced", rs.algebra_type(), lines.len());
            for (sub, tau, m, tag) in &lines {
                let verdict = if *m > 0 { format!("contained, multiplicity {m}") } else { "NOT contained".into() };
                let tag = if tag.is_empty() { String::new() } else { format!(" ({tag})") };
                println!("  {sub}: {tau}{tag}  {verdict}");
            }
        }
    }
    if lines.iter().any(|l| l.2 <= 0) {
        return Err(Usage("an induced weight is missing from the plethysm".into()));
    }
    Ok(())
}

fn one_based(nodes: &[usize]) -> String {
    nodes.iter().map(|n| (n + 1).to_string()).collect::<Vec<_>>().join(",")
}
