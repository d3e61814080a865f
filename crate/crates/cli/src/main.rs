use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};

use msrcpsp_core::harness::{
    execute_plan, solve, ExperimentPlan, ParamOverrides, SolveRequest, SolverKind, INSTANCE_DIR_VAR,
};
use msrcpsp_core::io::{
    load_instance, parse_imopse, write_instance, write_results_csv, write_runs_csv, write_solution, SolutionMeta,
};
use msrcpsp_core::{validate_instance, validate_schedule, AcoParams, OptimizationMode, Rule, SortOrder, UpdateStrategy};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_SOFTWARE: u8 = 70;

const EXIT_HELP: &str = "\
Exit status:
  0   success
  1   unreadable or unparsable input, plan errors
  2   the instance violates a model rule (validate)
  64  invalid arguments or flag combinations
  70  a computed schedule failed its own feasibility check

Relative instance paths that do not exist are also looked up in the
directory named by MSRCPSP_INSTANCE_DIR.";

#[derive(Parser, Debug)]
#[command(name = "msrcpsp", version, about = "Multi-skill project scheduling with priority rules and ant colonies", after_help = EXIT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an instance file against the model rules.
    Validate { instance: PathBuf },
    /// Schedule one instance and write a solution file.
    Solve(SolveArgs),
    /// Run a plan of repeated experiments.
    Experiment(ExperimentArgs),
    /// Convert an iMOPSE .def file to the native instance format.
    Convert {
        input: PathBuf,
        /// Output path [default: input with a .txt extension]
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Heuristic,
    Aco,
    Hantco,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Sls,
    Rs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Do,
    Bo,
    Co,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    All,
    Elite,
    Diff,
}

#[derive(Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "aco")]
    solver: SolverArg,
    #[arg(long, value_enum, default_value = "do")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "diff")]
    strategy: StrategyArg,
    /// Priority rule for --solver heuristic [default: the mode's own rule]
    #[arg(long, value_enum)]
    rule: Option<RuleArg>,
    /// Sort order of --rule [default: desc for sls, asc for rs]
    #[arg(long, value_enum, requires = "rule")]
    order: Option<OrderArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    params: ParamArgs,
    /// Solution file [default: <instance stem>.sol]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    /// Ants per iteration [12]
    #[arg(long)]
    ants: Option<usize>,
    /// Evaporation rate [0.1]
    #[arg(long)]
    mu: Option<f64>,
    /// Deposit per ant [0.05]
    #[arg(long)]
    delta: Option<f64>,
    /// Pheromone exponent in roulette selection [1]
    #[arg(long)]
    alpha: Option<f64>,
    /// Initial pheromone [1.5]
    #[arg(long = "p-init")]
    p_init: Option<f64>,
    /// Pheromone floor [0.05]
    #[arg(long = "p-min")]
    p_min: Option<f64>,
    /// Iterations without improvement before stopping [150]
    #[arg(long)]
    gamma: Option<usize>,
    /// Population-variety threshold of DIFF [0.1]
    #[arg(long)]
    psi: Option<f64>,
    /// Initial DIFF counter [20]
    #[arg(long)]
    kappa: Option<i64>,
    /// Weight of the heuristic seed pheromone [1]
    #[arg(long = "h-init")]
    h_init: Option<f64>,
    /// Hard cap on iterations
    #[arg(long = "max-iterations")]
    max_iterations: Option<usize>,
    /// Wall-clock cap per run, in seconds
    #[arg(long = "time-limit")]
    time_limit: Option<f64>,
}

impl ParamArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            ants: self.ants,
            mu: self.mu,
            p_init: self.p_init,
            alpha: self.alpha,
            delta: self.delta,
            p_min: self.p_min,
            gamma: self.gamma,
            psi: self.psi,
            kappa: self.kappa,
            h_init: self.h_init,
            beta: None,
            max_iterations: self.max_iterations,
            time_limit_secs: self.time_limit,
        }
    }
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    plan: PathBuf,
    /// Directory for runs.csv, aggregate.csv and run.log
    #[arg(long, default_value = "results")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Add wall-clock columns to the CSV files (makes them run-dependent)
    #[arg(long)]
    timing: bool,
}

fn instance_dir() -> Option<PathBuf> {
    std::env::var_os(INSTANCE_DIR_VAR).map(PathBuf::from)
}

fn locate(path: &Path) -> PathBuf {
    msrcpsp_core::harness::resolve_instance_path(path, Path::new(""), instance_dir().as_deref())
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn cmd_validate(path: &Path) -> ExitCode {
    let path = locate(path);
    let inst = match load_instance(&path) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_FAILURE, format!("{}: {e}", path.display())),
    };
    let violations = validate_instance(&inst);
    if violations.is_empty() {
        println!(
            "ok tasks={} resources={} relations={} skills={}",
            inst.task_count(),
            inst.resource_count(),
            inst.relation_count(),
            inst.skill_types().len()
        );
        return ExitCode::SUCCESS;
    }
    for v in &violations {
        println!("{v}");
    }
    eprintln!("{}: {} violation(s)", path.display(), violations.len());
    ExitCode::from(EXIT_INVALID)
}

fn cmd_solve(args: &SolveArgs) -> ExitCode {
    let mode = match args.mode {
        ModeArg::Do => OptimizationMode::DURATION,
        ModeArg::Bo => OptimizationMode::BALANCED,
        ModeArg::Co => OptimizationMode::COST,
    };
    let strategy = match args.strategy {
        StrategyArg::All => UpdateStrategy::All,
        StrategyArg::Elite => UpdateStrategy::Elite,
        StrategyArg::Diff => UpdateStrategy::Diff,
    };
    let solver = match (args.solver, args.rule) {
        (SolverArg::Heuristic, Some(rule)) => {
            let order = |default| match args.order {
                Some(OrderArg::Asc) => SortOrder::Ascending,
                Some(OrderArg::Desc) => SortOrder::Descending,
                None => default,
            };
            SolverKind::Rule(match rule {
                RuleArg::Sls => Rule::SuccessorsListSize(order(SortOrder::Descending)),
                RuleArg::Rs => Rule::ResourceSalary(order(SortOrder::Ascending)),
            })
        }
        (SolverArg::Heuristic, None) => SolverKind::Heuristic,
        (_, Some(_)) => return fail(EXIT_USAGE, "--rule only applies to --solver heuristic"),
        (SolverArg::Aco, None) => SolverKind::Aco,
        (SolverArg::Hantco, None) => SolverKind::HAntCo,
    };
    if !solver.supports(mode) {
        return fail(
            EXIT_USAGE,
            format!("--solver {solver} is only defined for --mode do or co; pass --rule for bo"),
        );
    }
    let mut params = AcoParams::default().with_seed(args.seed);
    args.params.overrides().apply(&mut params);
    if let Err(e) = params.validate() {
        return fail(EXIT_USAGE, e);
    }

    let path = locate(&args.instance);
    let inst = match load_instance(&path) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_FAILURE, format!("{}: {e}", path.display())),
    };
    let violations = validate_instance(&inst);
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("{v}");
        }
        return fail(EXIT_INVALID, format!("{} is not a valid instance", path.display()));
    }

    let request = SolveRequest {
        solver,
        mode,
        strategy,
        params: params.clone(),
    };
    let out = match solve(&inst, &request) {
        Ok(o) => o,
        Err(e) => return fail(EXIT_FAILURE, e),
    };
    let problems = validate_schedule(&out.schedule, &inst);
    if !problems.is_empty() {
        for p in &problems {
            eprintln!("{p}");
        }
        return fail(EXIT_SOFTWARE, "computed schedule is infeasible; nothing written");
    }
    info!(
        "{} on {}: {} iterations in {:.3}s",
        solver,
        inst.name(),
        out.iterations,
        out.wall_seconds
    );

    let meta = if solver.is_stochastic() {
        SolutionMeta::colony(mode, &params)
    } else {
        SolutionMeta::heuristic(mode)
    };
    let target = args.out.clone().unwrap_or_else(|| {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        PathBuf::from(format!("{}.sol", stem.unwrap_or_else(|| "solution".into())))
    });
    if let Err(e) = std::fs::write(&target, write_solution(&out.schedule, &inst, &meta)) {
        return fail(EXIT_FAILURE, format!("{}: {e}", target.display()));
    }
    println!(
        "days={} cost={} score={:.6} iters={}",
        out.eval.duration,
        msrcpsp_core::io::format_number(out.eval.cost),
        out.eval.score,
        out.iterations
    );
    ExitCode::SUCCESS
}

fn cmd_experiment(args: &ExperimentArgs) -> ExitCode {
    let plan = match ExperimentPlan::load(&args.plan, instance_dir().as_deref()) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_FAILURE, format!("plan {}: {e}", args.plan.display())),
    };
    if args.workers == 0 {
        return fail(EXIT_USAGE, "--workers must be at least 1");
    }
    let report = execute_plan(&plan, args.workers);
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        return fail(EXIT_FAILURE, format!("{}: {e}", args.out.display()));
    }
    let files = [
        ("runs.csv", write_runs_csv(&report.runs, args.timing)),
        ("aggregate.csv", write_results_csv(&report.aggregates, args.timing)),
        ("run.log", report.log.join("\n") + "\n"),
    ];
    for (name, body) in files {
        let path = args.out.join(name);
        if let Err(e) = std::fs::write(&path, body) {
            return fail(EXIT_FAILURE, format!("{}: {e}", path.display()));
        }
    }
    println!(
        "runs={} cells={} failures={} out={}",
        report.runs.len(),
        report.aggregates.len(),
        report.failures.len(),
        args.out.display()
    );
    if !report.failures.is_empty() {
        warn!("{} cell(s) failed; see run.log", report.failures.len());
        eprintln!("warning: {} cell(s) failed; see {}", report.failures.len(), args.out.join("run.log").display());
    }
    ExitCode::SUCCESS
}

fn cmd_convert(input: &Path, out: Option<&Path>) -> ExitCode {
    let input = locate(input);
    let text = match std::fs::read_to_string(&input) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_FAILURE, format!("{}: {e}", input.display())),
    };
    let name = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let inst = match parse_imopse(&text, &name) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_FAILURE, format!("{}:{e}", input.display())),
    };
    let target = out.map(Path::to_path_buf).unwrap_or_else(|| input.with_extension("txt"));
    if let Err(e) = std::fs::write(&target, write_instance(&inst)) {
        return fail(EXIT_FAILURE, format!("{}: {e}", target.display()));
    }
    println!("wrote {} tasks={} resources={}", target.display(), inst.task_count(), inst.resource_count());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match &cli.command {
        Command::Validate { instance } => cmd_validate(instance),
        Command::Solve(args) => cmd_solve(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Convert { input, out } => cmd_convert(input, out.as_deref()),
    }
}
