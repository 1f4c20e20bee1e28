//! `frcode`: build, compose, analyze and simulate fractional repetition codes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frcode::analysis::{analyze, AnalyzeOptions, FileSizeOptions};
use frcode::compose::{beta_expand, disjoint_union, kronecker, select_classes};
use frcode::designs::{
    affine_resolvable, catalog_list, catalog_load, girth_code, grid, hadamard, identity, j_minus_i, mols_net,
    projective_plane, steiner_triple, GraphSpec,
};
use frcode::export::to_dot;
use frcode::field::FiniteField;
use frcode::resilience::ResilienceOptions;
use frcode::sim::{run_scenario, Scenario};
use frcode::{FrCode, FrError};

#[derive(Parser, Debug)]
#[command(name = "frcode", version, about = "Fractional repetition codes for distributed storage")]
struct Cli {
    /// Worker threads for parallel analysis (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code from a construction family.
    Construct(ConstructArgs),
    /// Combine or transform existing codes.
    Compose {
        #[command(subcommand)]
        op: ComposeOp,
    },
    /// File sizes, bounds, arcs and resilience of a code.
    Analyze(AnalyzeArgs),
    /// Run a storage simulation scenario.
    Simulate {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in codes.
    Catalog {
        #[command(subcommand)]
        op: CatalogOp,
    },
    /// Export a code for external tools.
    Export {
        #[command(subcommand)]
        op: ExportOp,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Grid,
    Mols,
    Affine,
    Hadamard,
    Projective,
    Steiner,
    Girth,
    JMinusI,
    Identity,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GraphName {
    Petersen,
    Complete,
    CompleteBipartite,
    Cycle,
    Incidence,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Grid side, Hadamard parameter.
    #[arg(long)]
    a: Option<usize>,
    /// Field order for mols, affine and projective.
    #[arg(long)]
    q: Option<u64>,
    /// Affine dimension.
    #[arg(long)]
    m: Option<usize>,
    /// Number of parallel classes for mols and affine.
    #[arg(long)]
    r: Option<usize>,
    /// Number of points for steiner.
    #[arg(long)]
    theta: Option<usize>,
    /// Size for identity and j-minus-i.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum)]
    graph: Option<GraphName>,
    /// Vertex count (complete, cycle) or part size (complete-bipartite).
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ComposeOp {
    Kronecker {
        left: String,
        right: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Expand {
        input: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Union {
        input: String,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    SelectClasses {
        input: String,
        /// Comma-separated class indices.
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Transpose {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Code JSON path or `catalog:NAME`.
    input: String,
    /// Values of k: `3`, `1..6` or `2,4,5`. Defaults to `1..3`.
    #[arg(long)]
    k: Option<String>,
    /// File size used for the distance bounds.
    #[arg(long = "M")]
    m: Option<usize>,
    /// Branch-and-bound node budget per file-size query.
    #[arg(long)]
    budget: Option<u64>,
    /// Enumerate alongside closed forms and fail on disagreement.
    #[arg(long)]
    oracle: bool,
    /// Compute static and sequential resilience.
    #[arg(long)]
    resilience: bool,
    /// Seed for sampled resilience levels.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CatalogOp {
    List,
    Show {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ExportOp {
    Dot {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(FrError),
    Usage(String),
    ScenarioFailed,
}

impl From<FrError> for CliError {
    fn from(e: FrError) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(FrError::BudgetExceeded(_)) => 3,
            CliError::Lib(
                FrError::PropertyViolation(_) | FrError::NotRecoverable { .. } | FrError::UnrepairableFailure { .. },
            )
            | CliError::ScenarioFailed => 4,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::ScenarioFailed => write!(f, "scenario failed: some collects or repairs did not succeed"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn load(input: &str) -> CliResult<FrCode> {
    match input.strip_prefix("catalog:") {
        Some(name) => Ok(catalog_load(name)?),
        None => {
            let text = std::fs::read_to_string(input).map_err(FrError::from)?;
            Ok(FrCode::from_json(&text)?)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Lib(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_code(code: &FrCode, out: Option<&Path>) -> CliResult<()> {
    let params = code.validate()?;
    emit(&code.to_json(), out)?;
    if out.is_some() {
        println!("{params}");
    } else {
        eprintln!("{params}");
    }
    Ok(())
}

fn parse_ks(spec: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Usage(format!("cannot parse --k {spec:?}"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

fn construct(a: ConstructArgs) -> CliResult<()> {
    let code = match a.family {
        Family::Grid => grid(need(a.a, "a")?)?,
        Family::Hadamard => hadamard(need(a.a, "a")?)?,
        Family::Mols => mols_net(&FiniteField::of_order(need(a.q, "q")?)?, need(a.r, "r")?)?,
        Family::Affine => {
            let q = need(a.q, "q")?;
            let m = need(a.m, "m")?;
            let r = a.r.unwrap_or_else(|| frcode::field::gaussian_coefficient(m as u32, 1, q) as usize);
            affine_resolvable(q, m, r)?
        }
        Family::Projective => projective_plane(need(a.q, "q")?)?,
        Family::Steiner => steiner_triple(need(a.theta, "theta")?)?,
        Family::JMinusI => j_minus_i(need(a.t, "t")?)?,
        Family::Identity => identity(need(a.t, "t")?)?,
        Family::Girth => {
            let graph = match need(a.graph, "graph")? {
                GraphName::Petersen => GraphSpec::petersen(),
                GraphName::Complete => GraphSpec::complete(need(a.size, "size")?),
                GraphName::CompleteBipartite => {
                    let s = need(a.size, "size")?;
                    GraphSpec::complete_bipartite(s, s)
                }
                GraphName::Cycle => GraphSpec::cycle(need(a.size, "size")?),
                GraphName::Incidence => GraphSpec::projective_incidence(need(a.q, "q")?)?,
            };
            girth_code(&graph)?
        }
    };
    emit_code(&code, a.out.as_deref())
}

fn compose(op: ComposeOp) -> CliResult<()> {
    let (code, out) = match op {
        ComposeOp::Kronecker { left, right, out } => (kronecker(&load(&left)?, &load(&right)?)?.0, out),
        ComposeOp::Expand { input, m, out } => (beta_expand(&load(&input)?, m)?, out),
        ComposeOp::Union { input, l, out } => (disjoint_union(&load(&input)?, l)?, out),
        ComposeOp::SelectClasses { input, classes, out } => (select_classes(&load(&input)?, &classes)?, out),
        ComposeOp::Transpose { input, out } => (load(&input)?.transpose(), out),
    };
    emit_code(&code, out.as_deref())
}

fn run_analyze(a: AnalyzeArgs) -> CliResult<()> {
    let code = load(&a.input)?;
    let ks = match &a.k {
        Some(s) => parse_ks(s)?,
        None => (1..=code.n().min(3)).collect(),
    };
    let mut file_size = FileSizeOptions { oracle: a.oracle, ..Default::default() };
    if let Some(b) = a.budget {
        file_size.budget = b;
    }
    let resilience = a.resilience.then(|| ResilienceOptions { seed: a.seed, ..Default::default() });
    let report = analyze(&code, &AnalyzeOptions { ks, m: a.m, file_size, resilience })?;
    let mut text = serde_json::to_string_pretty(&report).expect("serializable report");
    text.push('\n');
    emit(&text, a.out.as_deref())?;
    let inexact = report.profile.iter().any(|e| !e.exact) || report.bounds.as_ref().is_some_and(|b| b.dmin_exact.is_none());
    if inexact {
        return Err(FrError::BudgetExceeded("some values are bounds only; raise --budget".into()).into());
    }
    Ok(())
}

fn simulate(path: &Path, out: Option<&Path>) -> CliResult<()> {
    let text = std::fs::read_to_string(path).map_err(FrError::from)?;
    let scenario: Scenario = serde_json::from_str(&text).map_err(FrError::from)?;
    let code = scenario.load_code(Path::new(""))?;
    let metrics = run_scenario(&scenario, &code)?;
    let mut text = serde_json::to_string_pretty(&metrics).expect("serializable metrics");
    text.push('\n');
    emit(&text, out)?;
    if metrics.all_ok {
        Ok(())
    } else {
        Err(CliError::ScenarioFailed)
    }
}

fn catalog(op: CatalogOp) -> CliResult<()> {
    match op {
        CatalogOp::List => {
            for e in catalog_list() {
                println!("{:<12} {}", e.name, e.description);
            }
            Ok(())
        }
        CatalogOp::Show { name, out } => emit_code(&catalog_load(&name)?, out.as_deref()),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set thread count: {e}")))?;
    }
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Compose { op } => compose(op),
        Command::Analyze(a) => run_analyze(a),
        Command::Simulate { scenario, out } => simulate(&scenario, out.as_deref()),
        Command::Catalog { op } => catalog(op),
        Command::Export { op: ExportOp::Dot { input, out } } => emit(&to_dot(&load(&input)?), out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
