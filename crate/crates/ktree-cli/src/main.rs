//! `ktree` — generate random increasing k-trees, measure their
//! connectivity profiles, and cross-check simulation against exact
//! recurrences and asymptotic formulas.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ktree_core::asym::{
    alpha_plus, asym_fixed_d, asym_large_d, lambda_spectrum, llt_gaussian, HeightConstant,
    SpectralData,
};
use ktree_core::exact::{
    expected_profile_exact, expected_profile_float, NumberStyle,
};
use ktree_core::ktree::grow_random;
use ktree_core::limit::{empirical_limit_check, limit_law_series, LimitCheckConfig};
use ktree_core::montecarlo::{default_d_max, monte_carlo, MonteCarloConfig};
use ktree_core::rng::RngFactory;
use ktree_core::Error as CoreError;

/// Seed used when none is given; fixed so runs are reproducible by
/// default.
const DEFAULT_SEED: u64 = 0x6b74726565; // "ktree"

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_GUARD: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ktree",
    version,
    about = "Random increasing k-trees: simulation, exact expectations, asymptotics",
    after_help = "Exit codes: 0 success, 2 configuration error, 3 numeric nonconvergence, 4 resource guard.\n\
                  Environment: KTREE_SEED, KTREE_THREADS override the matching defaults."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grow one random tree and write its edge list (or clique registry).
    Generate(GenerateArgs),
    /// Monte Carlo profile statistics over independent random trees.
    Stats(StatsArgs),
    /// Exact expected profile table from the coefficient recurrence.
    Exact(ExactArgs),
    /// Spectral tables and asymptotic profile estimates.
    Asym(AsymArgs),
    /// The height constant and its auxiliary root.
    AlphaPlus(AlphaPlusArgs),
    /// Limit-law series coefficients and moments at bounded depth.
    Limit(LimitArgs),
    /// Side-by-side comparison: exact, asymptotic, and Monte Carlo.
    Compare(CompareArgs),
    /// Columnar overlay of the exact profile and its Gaussian
    /// approximation, ready for gnuplot.
    PlotProfile(PlotProfileArgs),
    /// Monte Carlo check of a normalized profile count against its limit
    /// law.
    LimitCheck(LimitCheckArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, env = "KTREE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GenerateFormat::Edges)]
    format: GenerateFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenerateFormat {
    /// Header line plus one `u v` pair per line, in creation order.
    Edges,
    /// JSON array of k-arrays, one per registered clique.
    CliquesJson,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long, env = "KTREE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Deepest level reported per cell (default ~4·log n).
    #[arg(long)]
    d_max: Option<usize>,
    #[arg(long, env = "KTREE_THREADS", default_value_t = 0)]
    threads: usize,
    /// Also aggregate the full vertex-degree histogram.
    #[arg(long)]
    degrees: bool,
    /// Random vertex pairs per tree for distance sampling.
    #[arg(long, default_value_t = 0)]
    pairs: u64,
    /// Guard on k·n·trials.
    #[arg(long, default_value_t = ktree_core::montecarlo::DEFAULT_MAX_WORK)]
    max_trials_work: u64,
    /// Cell CSV output path (stdout if no output is selected).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Histogram CSV output path.
    #[arg(long)]
    histograms: Option<PathBuf>,
    /// JSON summary output path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n_max: usize,
    /// Deepest level (default ~4·log n_max).
    #[arg(long)]
    d_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,
    /// Render exact rationals as `p/q` or decimals (rational backend).
    #[arg(long, value_enum, default_value_t = Style::Rational)]
    style: Style,
    /// Sizes to report with the float backend (default: n_max only).
    #[arg(long, value_delimiter = ',')]
    checkpoints: Vec<usize>,
    /// Guard on table cells.
    #[arg(long, default_value_t = 50_000_000)]
    max_cells: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Rational,
    Decimal,
}

#[derive(Args)]
struct AsymArgs {
    #[arg(long)]
    k: usize,
    /// Evaluate the spectral table at these w values.
    #[arg(long, value_delimiter = ',')]
    w: Vec<f64>,
    /// Tree size for profile estimates.
    #[arg(long)]
    n: Option<f64>,
    /// Levels for profile estimates.
    #[arg(long, value_delimiter = ',')]
    d: Vec<f64>,
    /// Root-set size for profile estimates.
    #[arg(long, default_value_t = 1)]
    j: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlphaPlusArgs {
    /// One or more clique sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    j: usize,
    /// Series order M.
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    j: Vec<usize>,
    #[arg(long)]
    trials: u64,
    #[arg(long, env = "KTREE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, env = "KTREE_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = ktree_core::montecarlo::DEFAULT_MAX_WORK)]
    max_trials_work: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotProfileArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Root-set size of the profile column (default: full root clique).
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    d_max: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LimitCheckArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 1)]
    j: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long, env = "KTREE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, env = "KTREE_THREADS", default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let code = err.exit_code();
            eprintln!("{}", err.to_json());
            ExitCode::from(code)
        }
    }
}

/// Error with the exit-code classification of the interface contract.
#[derive(Debug)]
struct CliError {
    kind: &'static str,
    exit: u8,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            kind: "config",
            exit: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn exit_code(&self) -> u8 {
        self.exit
    }

    fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.message,
            "kind": self.kind,
            "exit": self.exit,
        })
        .to_string()
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let (kind, exit) = match &err {
            CoreError::NonConvergence(_) | CoreError::RootCollision(_) => {
                ("numeric", EXIT_NUMERIC)
            }
            CoreError::GuardExceeded(_) => ("guard", EXIT_GUARD),
            _ => ("config", EXIT_CONFIG),
        };
        Self {
            kind,
            exit,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self {
            kind: "io",
            exit: EXIT_CONFIG,
            message: err.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Stats(args) => stats(args),
        Command::Exact(args) => exact(args),
        Command::Asym(args) => asym(args),
        Command::AlphaPlus(args) => alpha_plus_cmd(args),
        Command::Limit(args) => limit(args),
        Command::Compare(args) => compare(args),
        Command::PlotProfile(args) => plot_profile(args),
        Command::LimitCheck(args) => limit_check(args),
    }
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<(), CliError> {
    let mut rng = RngFactory::new(args.seed).stream(0);
    let tree = grow_random(args.k, args.n, &mut rng)?;
    let content = match args.format {
        GenerateFormat::Edges => tree.edge_list_text(args.seed),
        GenerateFormat::CliquesJson => {
            let mut s = tree.cliques_json();
            s.push('\n');
            s
        }
    };
    emit(args.out.as_ref(), &content)
}

fn stats(args: StatsArgs) -> Result<(), CliError> {
    let mut cfg = MonteCarloConfig::new(args.k, args.n, args.trials, args.seed);
    if let Some(d_max) = args.d_max {
        cfg.d_max = d_max;
    }
    cfg.threads = args.threads;
    cfg.collect_degrees = args.degrees;
    cfg.pairs_per_tree = args.pairs;
    cfg.max_work = args.max_trials_work;
    let summary = monte_carlo(&cfg)?;

    let any_file = args.csv.is_some() || args.histograms.is_some() || args.json.is_some();
    if let Some(path) = &args.csv {
        fs::write(path, summary.cells_csv())?;
    }
    if let Some(path) = &args.histograms {
        fs::write(path, summary.histograms_csv())?;
    }
    if let Some(path) = &args.json {
        let mut s = summary.to_json();
        s.push('\n');
        fs::write(path, s)?;
    }
    if !any_file {
        print!("{}", summary.cells_csv());
    }
    Ok(())
}

fn exact(args: ExactArgs) -> Result<(), CliError> {
    let content = match args.backend {
        Backend::Rational => {
            let d_max = args.d_max.unwrap_or_else(|| default_d_max(args.n_max));
            let table = expected_profile_exact(args.k, args.n_max, d_max, args.max_cells)?;
            table.to_csv(match args.style {
                Style::Rational => NumberStyle::Rational,
                Style::Decimal => NumberStyle::Decimal,
            })
        }
        Backend::Float => {
            let d_max = args.d_max.unwrap_or_else(|| default_d_max(args.n_max));
            let mut checkpoints = args.checkpoints.clone();
            if checkpoints.is_empty() {
                checkpoints.push(args.n_max);
            }
            if checkpoints.iter().any(|&c| c > args.n_max) {
                return Err(CliError::config("checkpoints must not exceed n_max"));
            }
            let cells = (d_max as u64) * (args.k as u64) * (checkpoints.len() as u64 + 1);
            if cells > args.max_cells {
                return Err(CliError::from(CoreError::GuardExceeded(format!(
                    "{cells} float table cells exceed max_cells = {}",
                    args.max_cells
                ))));
            }
            expected_profile_float(args.k, &checkpoints, d_max)?.to_csv()
        }
    };
    emit(args.out.as_ref(), &content)
}

fn asym(args: AsymArgs) -> Result<(), CliError> {
    let spectral_mode = !args.w.is_empty();
    let estimate_mode = args.n.is_some();
    if spectral_mode == estimate_mode {
        return Err(CliError::config(
            "choose either --w (spectral table) or --n with --d (profile estimates)",
        ));
    }
    let mut content = String::new();
    if spectral_mode {
        content.push_str(SpectralData::csv_header());
        for &w in &args.w {
            content.push_str(&lambda_spectrum(args.k, w)?.csv_row());
        }
    } else {
        let n = args.n.expect("estimate mode");
        if args.d.is_empty() {
            return Err(CliError::config("estimate mode needs at least one --d"));
        }
        content.push_str("k,n,d,j,fixed_d,llt,rho,large_d,limit_evaluated\n");
        for &d in &args.d {
            let fixed = asym_fixed_d(args.k, n, d.round().max(1.0) as usize, args.j)?;
            let llt = llt_gaussian(args.k, n, d)?;
            let saddle = asym_large_d(args.k, n, d, args.j)?;
            writeln!(
                content,
                "{},{},{},{},{},{},{},{},{}",
                args.k, n, d, args.j, fixed, llt, saddle.rho, saddle.estimate,
                saddle.limit_evaluated
            )
            .expect("string write");
        }
    }
    emit(args.out.as_ref(), &content)
}

fn alpha_plus_cmd(args: AlphaPlusArgs) -> Result<(), CliError> {
    let mut content = String::from(HeightConstant::csv_header());
    for &k in &args.k {
        content.push_str(&alpha_plus(k)?.csv_row());
    }
    emit(args.out.as_ref(), &content)
}

fn limit(args: LimitArgs) -> Result<(), CliError> {
    let series = limit_law_series(args.k, args.d, args.j, args.order)?;
    emit(args.out.as_ref(), &series.to_csv())
}

fn compare(args: CompareArgs) -> Result<(), CliError> {
    for &j in &args.j {
        if j == 0 || j > args.k {
            return Err(CliError::config(format!("j = {j} outside 1..=k")));
        }
    }
    let d_top = *args.d.iter().max().ok_or_else(|| CliError::config("empty --d"))?;
    if args.d.iter().any(|&d| d == 0) {
        return Err(CliError::config("levels start at d = 1"));
    }

    let mut checkpoints = args.n.clone();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let exact_table = expected_profile_float(args.k, &checkpoints, d_top)?;

    let mut content = String::from(
        "k,n,d,j,exact,asym_fixed_d,asym_large_d,mc_mean,mc_stderr,\
         ratio_exact_fixed,ratio_exact_large,ratio_mc_exact\n",
    );
    for &n in &args.n {
        let mut cfg = MonteCarloConfig::new(args.k, n, args.trials, args.seed);
        cfg.d_max = d_top;
        cfg.threads = args.threads;
        cfg.max_work = args.max_trials_work;
        let summary = monte_carlo(&cfg)?;
        for &d in &args.d {
            for &j in &args.j {
                let exact = exact_table.expectation(d, j, n)?;
                let (fixed, large) = if n >= 3 {
                    let fixed = asym_fixed_d(args.k, n as f64, d, j).ok();
                    let large = asym_large_d(args.k, n as f64, d as f64, j)
                        .ok()
                        .map(|s| s.estimate);
                    (fixed, large)
                } else {
                    (None, None)
                };
                let cell = summary
                    .cell(d, j)
                    .ok_or_else(|| CliError::config("d beyond recorded range"))?;
                let fmt_opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
                let ratio = |denom: Option<f64>| {
                    denom
                        .filter(|&x| x != 0.0)
                        .map_or(String::new(), |x| (exact / x).to_string())
                };
                let mc_ratio = if exact != 0.0 {
                    (cell.mean / exact).to_string()
                } else {
                    String::new()
                };
                writeln!(
                    content,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    args.k,
                    n,
                    d,
                    j,
                    exact,
                    fmt_opt(fixed),
                    fmt_opt(large),
                    cell.mean,
                    cell.stderr,
                    ratio(fixed),
                    ratio(large),
                    mc_ratio
                )
                .expect("string write");
            }
        }
    }
    emit(args.out.as_ref(), &content)
}

fn plot_profile(args: PlotProfileArgs) -> Result<(), CliError> {
    let j = args.j.unwrap_or(args.k);
    if j == 0 || j > args.k {
        return Err(CliError::config(format!("j = {j} outside 1..=k")));
    }
    let d_max = args.d_max.unwrap_or_else(|| default_d_max(args.n));
    if d_max == 0 {
        return Err(CliError::config("plot needs d_max >= 1"));
    }
    let table = expected_profile_float(args.k, &[args.n], d_max)?;
    let profile = table.level_profile(j, args.n)?;
    let n = args.n as f64;

    let mut rows = String::new();
    let mut kept = 0usize;
    for (i, &e) in profile.iter().enumerate() {
        let d = (i + 1) as f64;
        if e > 0.0 {
            let llt = llt_gaussian(args.k, n, d)?;
            writeln!(rows, "{d} {e} {llt}").expect("string write");
            kept += 1;
        }
    }
    if kept == 0 {
        return Err(CliError::config(
            "no nonempty levels to plot after filtering",
        ));
    }
    let content = format!("# d exact_profile llt_gaussian\n{rows}");
    emit(args.out.as_ref(), &content)
}

fn limit_check(args: LimitCheckArgs) -> Result<(), CliError> {
    let cfg = LimitCheckConfig {
        k: args.k,
        d: args.d,
        j: args.j,
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        threads: args.threads,
    };
    let report = empirical_limit_check(&cfg)?;
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    emit(args.out.as_ref(), &s)
}
