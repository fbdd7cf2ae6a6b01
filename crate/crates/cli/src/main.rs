//! Experiment runner for the untrusted-relay secrecy toolkit.
//!
//! Subcommands: `eval` (one operating point), `sweep` (one axis), `optimize`
//! (constrained allocation by particle swarm), `mc` (Monte Carlo only), and
//! `preset` (canned figure sweeps). All output is CSV with a mandatory
//! header; every seeded command is byte-reproducible.
//!
//! Exit codes: 0 success, 2 invalid input, 3 infeasible problem,
//! 4 numerical failure.

mod params;
mod presets;
mod rows;
mod sweep;

use anyhow::bail;
use clap::{Parser, Subcommand, ValueEnum};
use params::ParamArgs;
use presets::Preset;
use relay_secrecy::montecarlo::{simulate, McConfig};
use relay_secrecy::numerics::QuadratureSpec;
use relay_secrecy::optimizer::{solve, ObjectiveMode, OptProblem, ProblemKind, PsoConfig};
use relay_secrecy::report::evaluate;
use relay_secrecy::{linear_to_db, Error};
use rows::{emit, DataRow, DATA_HEADER, OPT_HEADER};
use sweep::{run_sweep, Allocation, Axis, BasePoint, Metric, SweepSpec};

#[derive(Parser)]
#[command(
    name = "relay-secrecy",
    version,
    about = "Partial-secrecy metrics and power allocation for an untrusted-relay network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate all metrics at one operating point (one CSV row per θ).
    Eval(ParamArgs),
    /// Sweep one axis and emit one CSV row per (value, θ).
    Sweep(SweepArgs),
    /// Solve a constrained allocation problem by particle swarm.
    Optimize(OptimizeArgs),
    /// Monte Carlo estimates only.
    Mc(ParamArgs),
    /// Run a canned figure sweep.
    Preset(PresetArgs),
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Swept variable.
    #[arg(long, value_enum)]
    axis: Axis,
    /// Comma-separated, strictly increasing axis values.
    #[arg(long, value_name = "V1,V2,...")]
    values: String,
    /// Power allocation at each point.
    #[arg(long, value_enum, default_value = "epa")]
    allocation: Allocation,
    /// Metrics to emit.
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = vec![Metric::Gsop, Metric::Afe, Metric::Ailr, Metric::Throughput])]
    metrics: Vec<Metric>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemFlag {
    Opa1,
    Opa2,
    Opa3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeFlag {
    Asymptotic,
    Full,
}

#[derive(clap::Args)]
struct OptimizeArgs {
    /// Which metric to optimize: opa1 = min GSOP, opa2 = max AFE,
    /// opa3 = min AILR.
    #[arg(long, value_enum)]
    problem: ProblemFlag,
    /// Objective evaluation mode.
    #[arg(long, value_enum, default_value = "asymptotic")]
    objective_mode: ModeFlag,
    /// Swarm size.
    #[arg(long, default_value_t = 2000)]
    particles: usize,
    /// Swarm iterations.
    #[arg(long, default_value_t = 100)]
    iterations: usize,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(clap::Args)]
struct PresetArgs {
    /// Preset name.
    #[arg(value_enum)]
    preset: Preset,
    #[command(flatten)]
    params: ParamArgs,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => run_eval(&args),
        Command::Sweep(args) => run_sweep_cmd(&args),
        Command::Optimize(args) => run_optimize(&args),
        Command::Mc(args) => run_mc(&args),
        Command::Preset(args) => run_preset_cmd(&args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(exit_code(&err));
    }
}

/// Maps error kinds onto the documented exit codes.
fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible(_)) => 3,
        Some(Error::QuadratureNonConvergence { .. }) | Some(Error::Range(_)) => 4,
        Some(Error::InvalidInput(_)) | None => 2,
    }
}

fn run_eval(args: &ParamArgs) -> anyhow::Result<()> {
    let resolved = args.resolve()?;
    let p = resolved.params()?;
    let mc_cfg = resolved.mc_samples.map(|n| McConfig {
        n_samples: n,
        seed: resolved.seed,
        theta_grid: resolved.thetas.clone(),
    });
    let report = evaluate(
        &p,
        &resolved.thetas,
        &QuadratureSpec::default(),
        mc_cfg.as_ref(),
    )?;

    let allocation = if resolved.explicit_etas {
        "fixed"
    } else {
        "epa"
    };
    let lines = resolved.thetas.iter().enumerate().map(|(k, &theta)| {
        let mut row = DataRow {
            axis: "",
            axis_value: None,
            theta,
            allocation,
            gsop: Some(report.analytic.gsop[k]),
            gsop_asym: Some(report.asymptotic.gsop[k]),
            afe: Some(report.analytic.afe),
            afe_asym: Some(report.asymptotic.afe),
            ailr: Some(report.analytic.ailr),
            ailr_asym: Some(report.asymptotic.ailr),
            throughput: Some(report.analytic.throughput),
            ..DataRow::default()
        }
        .with_params(&p);
        if let Some(mc) = &report.mc {
            row.mc_gsop = Some(mc.gsop_hat[k].1.value);
            row.mc_gsop_ci = Some(mc.gsop_hat[k].1.ci_half_width);
            row.mc_afe = Some(mc.afe_hat.value);
            row.mc_afe_ci = Some(mc.afe_hat.ci_half_width);
            row.mc_ailr = Some(mc.ailr_hat.value);
            row.mc_ailr_ci = Some(mc.ailr_hat.ci_half_width);
            row.mc_throughput = Some(mc.throughput_hat.value);
            row.mc_throughput_ci = Some(mc.throughput_hat.ci_half_width);
        }
        row.to_csv()
    });
    emit(
        resolved.out.as_deref(),
        DATA_HEADER,
        lines.collect::<Vec<_>>(),
    )
}

fn run_mc(args: &ParamArgs) -> anyhow::Result<()> {
    let resolved = args.resolve()?;
    let p = resolved.params()?;
    let cfg = McConfig {
        n_samples: resolved.mc_samples.unwrap_or(1_000_000),
        seed: resolved.seed,
        theta_grid: resolved.thetas.clone(),
    };
    let report = simulate(&p, &cfg)?;
    let allocation = if resolved.explicit_etas {
        "fixed"
    } else {
        "epa"
    };
    let lines = report
        .gsop_hat
        .iter()
        .map(|&(theta, g)| {
            let mut row = DataRow {
                axis: "",
                theta,
                allocation,
                ..DataRow::default()
            }
            .with_params(&p);
            row.mc_gsop = Some(g.value);
            row.mc_gsop_ci = Some(g.ci_half_width);
            row.mc_afe = Some(report.afe_hat.value);
            row.mc_afe_ci = Some(report.afe_hat.ci_half_width);
            row.mc_ailr = Some(report.ailr_hat.value);
            row.mc_ailr_ci = Some(report.ailr_hat.ci_half_width);
            row.mc_throughput = Some(report.throughput_hat.value);
            row.mc_throughput_ci = Some(report.throughput_hat.ci_half_width);
            row.to_csv()
        })
        .collect::<Vec<_>>();
    emit(resolved.out.as_deref(), DATA_HEADER, lines)
}

fn run_sweep_cmd(args: &SweepArgs) -> anyhow::Result<()> {
    let resolved = args.params.resolve()?;
    if args.allocation == Allocation::Fixed && !resolved.explicit_etas {
        bail!(Error::InvalidInput(
            "allocation 'fixed' requires an explicit --eta split".to_string()
        ));
    }
    let values: Vec<f64> = args
        .values
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("bad sweep value '{s}': {e}")))
        })
        .collect::<Result<_, _>>()?;
    let spec = SweepSpec {
        axis: args.axis,
        values,
        base: BasePoint {
            gamma_p_db: resolved.gamma_p_db,
            etas: resolved.etas,
            rs: resolved.rs,
            rt: resolved.rt,
            d: resolved.d.or(if resolved.omegas.is_none() {
                Some(0.5)
            } else {
                None
            }),
            alpha: resolved.alpha,
            omegas: resolved.omegas,
        },
        metrics: args.metrics.clone(),
        theta_list: resolved.thetas.clone(),
        allocation: args.allocation,
        mc_samples: resolved.mc_samples,
        gamma_min: resolved.gamma_min,
        seed: resolved.seed,
    };
    let rows = run_sweep(&spec)?;
    emit(
        resolved.out.as_deref(),
        DATA_HEADER,
        rows.iter().map(DataRow::to_csv).collect::<Vec<_>>(),
    )
}

fn run_optimize(args: &OptimizeArgs) -> anyhow::Result<()> {
    let resolved = args.params.resolve()?;
    let (osr, ord) = resolved.mean_gains();
    let theta = *resolved.thetas.first().expect("theta default");
    let prob = OptProblem {
        kind: match args.problem {
            ProblemFlag::Opa1 => ProblemKind::MinGsop,
            ProblemFlag::Opa2 => ProblemKind::MaxAfe,
            ProblemFlag::Opa3 => ProblemKind::MinAilr,
        },
        gamma_min: resolved.gamma_min,
        theta,
        gamma_p: relay_secrecy::db_to_linear(resolved.gamma_p_db),
        omega_sr: osr,
        omega_rd: ord,
        objective_mode: match args.objective_mode {
            ModeFlag::Asymptotic => ObjectiveMode::Asymptotic,
            ModeFlag::Full => ObjectiveMode::Full,
        },
    };
    let cfg = PsoConfig {
        n_particles: args.particles,
        n_iterations: args.iterations,
        seed: resolved.seed,
        ..PsoConfig::default()
    };
    let r = solve(&prob, &cfg)?;

    let problem_name = match args.problem {
        ProblemFlag::Opa1 => "opa1",
        ProblemFlag::Opa2 => "opa2",
        ProblemFlag::Opa3 => "opa3",
    };
    let mode_name = match args.objective_mode {
        ModeFlag::Asymptotic => "asymptotic",
        ModeFlag::Full => "full",
    };
    eprintln!(
        "{problem_name}: objective {:.6e} ({}), eta = ({:.4}, {:.4}, {:.4}), \
         rs = {:.4}, rt = {:.4}, feasible = {}, {} iterations",
        r.objective,
        match prob.kind {
            ProblemKind::MinGsop => "min GSOP",
            ProblemKind::MaxAfe => "max AFE",
            ProblemKind::MinAilr => "min AILR",
        },
        r.eta1,
        r.eta2,
        r.eta3,
        r.rs,
        r.rt,
        r.feasible,
        r.iterations_used,
    );

    let line = format!(
        "{problem_name},{mode_name},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        theta,
        resolved.gamma_min,
        linear_to_db(prob.gamma_p),
        osr,
        ord,
        r.eta1,
        r.eta2,
        r.eta3,
        r.rs,
        r.rt,
        r.objective,
        r.feasible,
        r.iterations_used,
        resolved.seed,
    );
    emit(resolved.out.as_deref(), OPT_HEADER, vec![line])
}

fn run_preset_cmd(args: &PresetArgs) -> anyhow::Result<()> {
    let resolved = args.params.resolve()?;
    let rows = presets::run_preset(args.preset, resolved.mc_samples, resolved.seed)?;
    emit(
        resolved.out.as_deref(),
        DATA_HEADER,
        rows.iter().map(DataRow::to_csv).collect::<Vec<_>>(),
    )
}
