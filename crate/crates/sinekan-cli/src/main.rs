//! `sinekan`: benchmark sweeps, certified sine constructions, and FLOP
//! cost reports from the command line.
//!
//! Four subcommands: `bench1d` (error vs grid size on the 1D catalog),
//! `bench2d` (error vs parameter budget on the 2D catalog), `construct`
//! (build a sine superposition with a certified error bound), and
//! `flops` (print the cost model). Sweeps write CSV plus SVG charts;
//! everything is deterministic in the root `--seed`.

mod catalog;
mod plot;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sinekan::benchfns::{BenchFunction1D, BenchFunction2D, DEFAULT_K_TERMS};
use sinekan::constructive::{
    construct_sine_approx, default_grid, verify_construction, FrequencyRule, SineConstruction,
};
use sinekan::experiments::{
    read_csv, realize_budget, run_1d_sweep, run_2d_sweep, write_csv, ModelFamily2d, SweepProtocol,
    SweepResult,
};
use sinekan::metrics::{measure_costs, CostModel, MetricsError};
use sinekan::models::ModelSpec;
use sinekan::solver::SolverConfig;
use std::error::Error;
use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const MEASURE_ITERATIONS: usize = 200;
const MEASURE_BATCH: usize = 1 << 16;

#[derive(Parser)]
#[command(
    name = "sinekan",
    version,
    about = "Fit sine superpositions to benchmark functions, build certified \
             constructions, and price model evaluations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Directory for CSV, JSON, and SVG artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Root seed; every sweep cell derives its own seed from it.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Starting points per nonlinear fit (models linear in their
    /// parameters always use the exact solve).
    #[arg(long, global = true, default_value_t = 5)]
    starts: usize,

    /// Solver iteration cap per model parameter.
    #[arg(long, global = true, default_value_t = 100)]
    max_iter_per_param: usize,

    /// FLOP weights for cost columns and reports.
    #[arg(long, global = true, value_enum, default_value_t = CostModelChoice::Paper)]
    cost_model: CostModelChoice,

    /// Stop when an accepted step reduces cost by less than this
    /// fraction.
    #[arg(long, global = true, default_value_t = 1e-10)]
    ftol: f64,

    /// Stop when the step is this small relative to the point.
    #[arg(long, global = true, default_value_t = 1e-10)]
    xtol: f64,

    /// Stop when the scaled gradient is this small.
    #[arg(long, global = true, default_value_t = 1e-10)]
    gtol: f64,

    /// Emit SVG charts next to the CSV (the default).
    #[arg(long, global = true, overrides_with = "no_plots")]
    plots: bool,

    /// Skip SVG charts.
    #[arg(long, global = true, overrides_with = "plots")]
    no_plots: bool,

    /// Exit 0 even when some cells fail; failed rows stay marked in
    /// the CSV.
    #[arg(long, global = true)]
    keep_going: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Error versus grid size on the 1D benchmark functions.
    Bench1d(Bench1dArgs),
    /// Error versus parameter budget on the 2D benchmark functions.
    Bench2d(Bench2dArgs),
    /// Build a sine superposition with a certified error bound.
    Construct(ConstructArgs),
    /// Print the FLOP cost model.
    Flops(FlopsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CostModelChoice {
    /// Fixed reference weights: add 1, mul 1, relu 1.5, sin 12.
    Paper,
    /// Torch-calibrated weights: relu 1, sin 3.5.
    Torchlike,
    /// Time the kernels on this host and normalize to add = 1.
    Measured,
}

#[derive(Args)]
struct Bench1dArgs {
    /// Benchmark functions to fit.
    #[arg(long, value_delimiter = ',', default_values_t = ["f1", "f2", "f3", "f4", "f5"].map(String::from))]
    funcs: Vec<String>,

    /// Grid sizes to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [25usize, 50, 100, 200, 400])]
    grids: Vec<usize>,

    /// Model specs to fit; repeat the flag per model (specs may
    /// contain commas).
    #[arg(long = "models", default_values_t = ["sinekan1d:G=8".to_string(), "fourier:K=8".to_string()])]
    models: Vec<String>,

    /// Report error on a twice-as-dense grid instead of the fit grid.
    #[arg(long)]
    holdout: bool,
}

#[derive(Args)]
struct Bench2dArgs {
    /// 2D benchmark functions to fit.
    #[arg(long, value_delimiter = ',', default_values_t = ["gauss2d", "rosenbrock"].map(String::from))]
    funcs: Vec<String>,

    /// Model families, each realized at every budget.
    #[arg(long = "models", value_delimiter = ',', default_values_t = ["sinekan2", "mlp:relu", "mlp:sine", "fourier2d"].map(String::from))]
    models: Vec<String>,

    /// Parameter budgets; each family is realized at its nearest size.
    #[arg(long, value_delimiter = ',', default_values_t = [50usize, 100, 200, 400, 800])]
    budgets: Vec<usize>,

    /// Points per axis of the fitting mesh.
    #[arg(long, default_value_t = 100)]
    grid_n: usize,

    /// Report error on a twice-as-dense mesh instead of the fit mesh.
    #[arg(long)]
    holdout: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Target function: const1, x, or f1..f5 (extended by 0 at the
    /// origin).
    #[arg(long)]
    func: String,

    /// Construction degree (Taylor and Bernstein order), 1 to 16.
    #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..=16))]
    n: u64,

    /// Phase base in (0, pi/2]; term k gets phase (k+1)*alpha/(N+2).
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    alpha: f64,

    /// Frequency layout for the sine terms.
    #[arg(long, value_enum, default_value_t = RuleChoice::Spread)]
    rule: RuleChoice,

    /// Largest frequency the rule may place.
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    max_omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleChoice {
    /// N+1 frequencies evenly spread from 0 to max-omega.
    Spread,
    /// The same spacing shifted one slot, omitting the constant term.
    Shifted,
}

impl RuleChoice {
    fn name(self) -> &'static str {
        match self {
            RuleChoice::Spread => "spread",
            RuleChoice::Shifted => "shifted",
        }
    }
}

#[derive(Args)]
struct FlopsArgs {
    /// Timed passes per kernel (measured mode).
    #[arg(long, default_value_t = MEASURE_ITERATIONS)]
    iterations: usize,

    /// Elements per pass (measured mode).
    #[arg(long, default_value_t = MEASURE_BATCH)]
    batch_size: usize,
}

impl Cli {
    fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            seed: self.seed,
            ftol: self.ftol,
            xtol: self.xtol,
            gtol: self.gtol,
            ..SolverConfig::default()
        }
    }

    fn protocol(&self, holdout: bool) -> SweepProtocol {
        SweepProtocol {
            solver: self.solver_config(),
            max_iter_per_param: self.max_iter_per_param,
            starts_nonlinear: self.starts,
            holdout,
        }
    }

    fn plots_enabled(&self) -> bool {
        !self.no_plots
    }

    fn resolve_cost_model(&self, iterations: usize, batch_size: usize) -> Result<CostModel, MetricsError> {
        Ok(match self.cost_model {
            CostModelChoice::Paper => CostModel::default(),
            CostModelChoice::Torchlike => CostModel::torchlike(),
            CostModelChoice::Measured => {
                let m = measure_costs(iterations, batch_size)?;
                eprintln!(
                    "measured ns/op: add {:.3}, mul {:.3}, relu {:.3}, sin {:.3} ({} passes x {} elems)",
                    m.ns_per_op[0], m.ns_per_op[1], m.ns_per_op[2], m.ns_per_op[3],
                    m.iterations, m.batch_size
                );
                m.model
            }
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Box<dyn Error>> {
    match &cli.command {
        Command::Bench1d(args) => cmd_bench1d(cli, args),
        Command::Bench2d(args) => cmd_bench2d(cli, args),
        Command::Construct(args) => cmd_construct(cli, args),
        Command::Flops(args) => cmd_flops(cli, args),
    }
}

fn cmd_bench1d(cli: &Cli, args: &Bench1dArgs) -> Result<ExitCode, Box<dyn Error>> {
    let funcs = args
        .funcs
        .iter()
        .map(|name| BenchFunction1D::from_name(name, DEFAULT_K_TERMS))
        .collect::<Result<Vec<_>, _>>()?;
    let models = parse_models(&args.models)?;
    let cost = cli.resolve_cost_model(MEASURE_ITERATIONS, MEASURE_BATCH)?;
    let result = run_1d_sweep(&funcs, &args.grids, &models, &cli.protocol(args.holdout), &cost);
    log_rows(&result);
    let csv_path = write_sweep(&result, &cli.out, "bench1d.csv")?;
    if cli.plots_enabled() {
        let rows = read_csv(&mut File::open(&csv_path)?)?;
        for path in plot::bench1d_charts(&rows, &cli.out)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(sweep_exit(&result, cli.keep_going))
}

fn cmd_bench2d(cli: &Cli, args: &Bench2dArgs) -> Result<ExitCode, Box<dyn Error>> {
    let funcs = args
        .funcs
        .iter()
        .map(|name| BenchFunction2D::from_name(name))
        .collect::<Result<Vec<_>, _>>()?;
    let mut models = Vec::new();
    for family_name in &args.models {
        let family: ModelFamily2d = family_name.parse().map_err(Box::<dyn Error>::from)?;
        for &budget in &args.budgets {
            models.push(realize_budget(family, budget)?);
        }
    }
    let cost = cli.resolve_cost_model(MEASURE_ITERATIONS, MEASURE_BATCH)?;
    let result = run_2d_sweep(&funcs, &models, args.grid_n, &cli.protocol(args.holdout), &cost);
    log_rows(&result);
    let csv_path = write_sweep(&result, &cli.out, "bench2d.csv")?;
    if cli.plots_enabled() {
        let rows = read_csv(&mut File::open(&csv_path)?)?;
        for path in plot::bench2d_charts(&rows, &cli.out)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(sweep_exit(&result, cli.keep_going))
}

#[derive(Serialize)]
struct ConstructArtifact<'a> {
    func: &'a str,
    rule: &'a str,
    max_omega: f64,
    seed: u64,
    construction: &'a SineConstruction,
    sup_error: f64,
    sup_argmax: f64,
}

fn cmd_construct(cli: &Cli, args: &ConstructArgs) -> Result<ExitCode, Box<dyn Error>> {
    let f = catalog::lookup(&args.func).ok_or_else(|| {
        format!(
            "unknown function `{}` (available: {})",
            args.func,
            catalog::NAMES.join(", ")
        )
    })?;
    let rule = match args.rule {
        RuleChoice::Spread => FrequencyRule::Spread { max_omega: args.max_omega },
        RuleChoice::Shifted => FrequencyRule::ShiftedSpread { max_omega: args.max_omega },
    };
    let degree = args.n as usize;
    let construction = construct_sine_approx(|x| f(x), degree, args.alpha, &rule, cli.seed)?;
    let report = verify_construction(&construction, |x| f(x), &default_grid());

    let cert = &construction.certificate;
    println!(
        "construct {}: degree {}, alpha {:.6}, rule {}",
        args.func,
        degree,
        args.alpha,
        args.rule.name()
    );
    println!("  bernstein term    {:.3e}", cert.bernstein_term);
    println!("  taylor term       {:.3e}", cert.taylor_term);
    println!("  solve term        {:.3e}", cert.solve_term);
    println!("  certified bound   {:.3e}", cert.total);
    println!(
        "  grid sup error    {:.3e} at x = {:.4}",
        report.sup_error, report.argmax
    );
    println!(
        "  condition         raw {:.3e}, equilibrated {:.3e}",
        cert.cond_raw, cert.cond_equilibrated
    );

    fs::create_dir_all(&cli.out)?;
    let path = cli.out.join(format!("construct_{}_N{}.json", args.func, degree));
    let artifact = ConstructArtifact {
        func: &args.func,
        rule: args.rule.name(),
        max_omega: args.max_omega,
        seed: cli.seed,
        construction: &construction,
        sup_error: report.sup_error,
        sup_argmax: report.argmax,
    };
    fs::write(&path, serde_json::to_string_pretty(&artifact)?)?;
    println!("wrote {}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_flops(cli: &Cli, args: &FlopsArgs) -> Result<ExitCode, Box<dyn Error>> {
    let model = cli.resolve_cost_model(args.iterations, args.batch_size)?;
    println!("{}", serde_json::to_string_pretty(&model)?);
    Ok(ExitCode::SUCCESS)
}

fn parse_models(specs: &[String]) -> Result<Vec<ModelSpec>, Box<dyn Error>> {
    specs
        .iter()
        .map(|s| s.parse::<ModelSpec>().map_err(|e| e.into()))
        .collect()
}

fn log_rows(result: &SweepResult) {
    let total = result.rows.len();
    for (i, row) in result.rows.iter().enumerate() {
        eprintln!(
            "[{}/{}] {} {} n={} -> rel_l2 {:.3e} ({} iters, {})",
            i + 1,
            total,
            row.func,
            row.model_spec,
            row.grid_n,
            row.rel_l2,
            row.iters,
            row.term_reason
        );
    }
}

fn write_sweep(result: &SweepResult, out: &Path, name: &str) -> Result<PathBuf, Box<dyn Error>> {
    fs::create_dir_all(out)?;
    let path = out.join(name);
    let mut file = File::create(&path)?;
    write_csv(result, &mut file)?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn sweep_exit(result: &SweepResult, keep_going: bool) -> ExitCode {
    let failed = result.rows.iter().filter(|r| r.term_reason == "error").count();
    if failed > 0 {
        eprintln!("{failed} of {} cells failed", result.rows.len());
        if !keep_going {
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}
