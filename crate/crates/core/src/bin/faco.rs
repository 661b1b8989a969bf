use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use focused_aco::bench::{read_optima, run_bench};
use focused_aco::instance::{gap_percent, EdgeMetric, Instance};
use focused_aco::solver::{solve, HeuristicSource, SolverConfig};
use focused_aco::tsplib::read_instance;
use focused_aco::Error;

#[derive(Parser)]
#[command(name = "faco", version, about = "Focused ant colony optimization for the Euclidean TSP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance (TSPLIB EUC_2D or internal dump format).
    Solve(SolveArgs),
    /// Generate uniform random instances in the internal dump format.
    Gen(GenArgs),
    /// Solve every instance in a directory several times and report gaps.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// `inverse` for 1/d, otherwise a HEUR v1 file.
    #[arg(long, default_value = "inverse")]
    heuristic: String,
    #[arg(long, default_value_t = 100)]
    ants: usize,
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.1)]
    rho: f64,
    /// Probability of copying the global-best tour as the reference.
    #[arg(long, default_value_t = 0.01)]
    pg: f64,
    /// New-edge cutoff per constructed tour.
    #[arg(long, default_value_t = 8)]
    mne: usize,
    /// Candidate list size.
    #[arg(long, default_value_t = 20)]
    cand: usize,
    /// Backup list size.
    #[arg(long, default_value_t = 64)]
    backup: usize,
    #[arg(long, default_value_t = 0.1)]
    pbest: f64,
    /// Deposit the global best every N iterations (0 = never).
    #[arg(long, default_value_t = 10)]
    gb_period: usize,
    /// Override the instance's edge metric.
    #[arg(long, value_parser = ["real", "rounded"])]
    metric: Option<String>,
    /// Run ants one after another instead of on the thread pool.
    #[arg(long)]
    serial: bool,
}

impl SolverArgs {
    fn config(&self, seed: u64) -> SolverConfig {
        SolverConfig {
            ants: self.ants,
            iterations: self.iters,
            alpha: self.alpha,
            beta: self.beta,
            rho: self.rho,
            p_g: self.pg,
            mne: self.mne,
            k: self.cand,
            bkp: self.backup,
            p_best: self.pbest,
            seed,
            heuristic_source: match self.heuristic.as_str() {
                "inverse" => HeuristicSource::InverseDistance,
                path => HeuristicSource::File(PathBuf::from(path)),
            },
            gb_deposit_period: self.gb_period,
            parallel: !self.serial,
        }
    }

    fn load(&self, path: &Path) -> Result<Instance, Error> {
        let inst = read_instance(path)?;
        Ok(match &self.metric {
            Some(m) => inst.with_metric(m.parse::<EdgeMetric>()?),
            None => inst,
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Known optimal cost; enables the gap line.
    #[arg(long)]
    optimal: Option<f64>,
    /// Write the per-iteration trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the best tour, one 0-based node per line.
    #[arg(long)]
    tour_out: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    /// CSV of `name,optimal` rows.
    #[arg(long)]
    optima: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Also write the report as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Error> {
    let inst = args.solver.load(&args.instance)?;
    let res = solve(&inst, &args.solver.config(args.seed))?;
    if let Some(path) = &args.trace {
        res.write_trace_csv(io::BufWriter::new(fs::File::create(path)?))?;
    }
    if let Some(path) = &args.tour_out {
        let body: String = res.best_tour.order().iter().map(|v| format!("{v}\n")).collect();
        fs::write(path, body)?;
    }
    let mut out = io::stdout().lock();
    writeln!(out, "instance: {}", inst.name())?;
    writeln!(out, "nodes: {}", inst.len())?;
    writeln!(out, "metric: {}", inst.metric())?;
    writeln!(out, "best_cost: {}", res.best_cost)?;
    if let Some(opt) = args.optimal {
        writeln!(out, "gap_percent: {:.4}", gap_percent(res.best_cost, opt)?)?;
    }
    // timing goes to stderr so stdout stays reproducible for a fixed seed
    eprintln!("time_s: {:.3}", res.wall_time);
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> Result<(), Error> {
    fs::create_dir_all(&args.out)?;
    for i in 0..args.count as u64 {
        let seed = args.seed + i;
        let inst = Instance::generate_random(args.n, seed)?;
        let path = args.out.join(format!("tsp{}_s{}.txt", args.n, seed));
        fs::write(path, inst.to_dump_string())?;
    }
    println!("wrote {} instances to {}", args.count, args.out.display());
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Error> {
    let mut paths: Vec<PathBuf> = fs::read_dir(&args.dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && matches!(p.extension().and_then(|e| e.to_str()), Some("tsp" | "txt"))
        })
        .collect();
    paths.sort();
    let instances = paths
        .iter()
        .map(|p| args.solver.load(p))
        .collect::<Result<Vec<_>, _>>()?;
    let optima = match &args.optima {
        Some(p) => read_optima(p)?,
        None => Default::default(),
    };
    let report = run_bench(&instances, &optima, args.runs, &args.solver.config(0))?;
    print!("{}", report.render_table());
    if let Some(path) = &args.csv {
        report.write_csv(path)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
