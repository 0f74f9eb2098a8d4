//! Subcommand execution: marshal flags, call the library, render output.
//!
//! Data goes to the sink (file or standard output); human-oriented
//! summaries and caveats go to standard error, so piped CSV stays clean.

use anyhow::{Context, Result};
use levy_core::diffusion::{ensemble_msd, log_time_grid};
use levy_core::optimizer::experiments::{escape_experiment, EscapeConfig};
use levy_core::stable_density::Method;
use levy_core::tail_stats::fit_step_tail;
use levy_core::{simulate_trajectory, LevyIndex, StepDistribution, TimeAccounting, UniformSource};
use serde::Serialize;

use crate::args::{
    Cli, Command, DensityArgs, EscapeArgs, FitTailArgs, MethodArg, ModeArg, MsdArgs,
    OptimizeArgs, SampleArgs, WalkArgs,
};
use crate::format::{
    csv_table, fmt_f64, json_document, method_label, parse_x_grid, trajectory_csv,
    OutputFormat, Sink, TrajectoryJson,
};
use crate::runspec::OptimizeDoc;

pub fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sample(args) => sample(args),
        Command::Density(args) => density(args),
        Command::Walk(args) => walk(args),
        Command::Msd(args) => msd(args),
        Command::FitTail(args) => fit_tail(args),
        Command::Optimize(args) => optimize_cmd(args),
        Command::Escape(args) => escape(args),
    }
}

fn levy_index(beta: f64) -> Result<LevyIndex> {
    LevyIndex::new(beta).map_err(|e| anyhow::anyhow!("invalid --beta: {e}"))
}

fn accounting(mode: ModeArg, speed: f64) -> TimeAccounting {
    match mode {
        ModeArg::Flight => TimeAccounting::Flight,
        ModeArg::Walk => TimeAccounting::Walk { speed },
    }
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Flight => "flight",
        ModeArg::Walk => "walk",
    }
}

#[derive(Serialize)]
struct SampleJson {
    beta: f64,
    seed: u64,
    steps: Vec<f64>,
}

fn sample(args: SampleArgs) -> Result<()> {
    let index = levy_index(args.beta)?;
    if args.beta >= 2.0 {
        eprintln!(
            "note: beta >= 2 still draws from the power-law step family; \
             the output is not normally distributed"
        );
    }
    let dist = StepDistribution::new(index);
    let mut src = UniformSource::new(args.seed);
    let steps: Vec<f64> = (0..args.n).map(|_| dist.sample_step(&mut src)).collect();

    let content = match args.format {
        OutputFormat::Csv => csv_table("step_length", steps.iter().map(|l| fmt_f64(*l))),
        OutputFormat::Json => json_document(&SampleJson {
            beta: args.beta,
            seed: args.seed,
            steps,
        })?,
    };
    Sink::new(args.out).write(&content)
}

#[derive(Serialize)]
struct DensityRowJson {
    x: f64,
    density: f64,
    method_used: &'static str,
}

#[derive(Serialize)]
struct DensityJson {
    beta: f64,
    gamma: f64,
    rows: Vec<DensityRowJson>,
}

fn density(args: DensityArgs) -> Result<()> {
    let spec = levy_core::StableDensitySpec::new(args.beta, args.gamma).map_err(|e| {
        anyhow::anyhow!(
            "{e}: the stable density needs beta in (0, 2] (step sums beyond 2 are \
             Gaussian-attracted and leave the stable family) and gamma > 0"
        )
    })?;
    let forced = match args.method {
        MethodArg::Auto => None,
        MethodArg::ClosedForm => Some(Method::ClosedForm),
        MethodArg::Series => Some(Method::Series),
        MethodArg::Quadrature => Some(Method::Quadrature),
    };
    let spec = match forced {
        Some(m) => spec.with_method(m),
        None => spec,
    };
    let grid = parse_x_grid(&args.x_grid).context("invalid --x-grid")?;

    let mut rows = Vec::with_capacity(grid.len());
    for &x in &grid {
        let method = forced.unwrap_or_else(|| spec.select_method(x));
        let value = spec
            .density(x)
            .with_context(|| format!("evaluating the density at x = {x}"))?;
        rows.push(DensityRowJson {
            x,
            density: value,
            method_used: method_label(method),
        });
    }

    let content = match args.format {
        OutputFormat::Csv => csv_table(
            "x,density,method_used",
            rows.iter()
                .map(|r| format!("{},{},{}", fmt_f64(r.x), fmt_f64(r.density), r.method_used)),
        ),
        OutputFormat::Json => json_document(&DensityJson {
            beta: args.beta,
            gamma: args.gamma,
            rows,
        })?,
    };
    Sink::new(args.out).write(&content)
}

fn walk(args: WalkArgs) -> Result<()> {
    let index = levy_index(args.beta)?;
    let acc = accounting(args.mode, args.speed);
    let trajectory = simulate_trajectory(index, args.steps, args.dim, acc, args.seed)
        .map_err(|e| anyhow::anyhow!("simulating the trajectory: {e}"))?;

    let content = match args.format {
        OutputFormat::Csv => trajectory_csv(&trajectory),
        OutputFormat::Json => {
            json_document(&TrajectoryJson::from_trajectory(&trajectory, args.beta, acc))?
        }
    };
    Sink::new(args.out).write(&content)
}

#[derive(Serialize)]
struct MsdJson {
    beta: f64,
    walkers: usize,
    dimension: usize,
    mode: &'static str,
    speed: Option<f64>,
    seed: u64,
    fitted_exponent: f64,
    fit_intercept: f64,
    fit_window: (usize, usize),
    regime: &'static str,
    times: Vec<f64>,
    values: Vec<f64>,
}

fn msd(args: MsdArgs) -> Result<()> {
    let index = levy_index(args.beta)?;
    let acc = accounting(args.mode, args.speed);
    let grid = log_time_grid(args.t_min, args.t_max, args.grid_points)
        .map_err(|e| anyhow::anyhow!("invalid time grid: {e}"))?;
    let estimate = ensemble_msd(index, args.walkers, args.dim, acc, &grid, args.seed)
        .map_err(|e| anyhow::anyhow!("measuring the ensemble msd: {e}"))?;

    let content = match args.format {
        OutputFormat::Csv => csv_table(
            "t,msd",
            estimate
                .times
                .iter()
                .zip(&estimate.values)
                .map(|(t, v)| format!("{},{}", fmt_f64(*t), fmt_f64(*v))),
        ),
        OutputFormat::Json => json_document(&MsdJson {
            beta: args.beta,
            walkers: estimate.ensemble_size,
            dimension: estimate.dimension,
            mode: mode_name(args.mode),
            speed: match args.mode {
                ModeArg::Flight => None,
                ModeArg::Walk => Some(args.speed),
            },
            seed: args.seed,
            fitted_exponent: estimate.fitted_exponent,
            fit_intercept: estimate.fit_intercept,
            fit_window: estimate.fit_window,
            regime: estimate.regime.as_str(),
            times: estimate.times.clone(),
            values: estimate.values.clone(),
        })?,
    };
    Sink::new(args.out).write(&content)?;
    eprintln!(
        "fitted exponent {} ({}) over t in [{}, {}]",
        fmt_f64(estimate.fitted_exponent),
        estimate.regime,
        fmt_f64(estimate.times[estimate.fit_window.0]),
        fmt_f64(*estimate.times.last().unwrap()),
    );
    Ok(())
}

#[derive(Serialize)]
struct FitTailJson {
    beta: f64,
    n: usize,
    k: usize,
    estimated_index: f64,
    standard_error: f64,
    seed: u64,
}

fn fit_tail(args: FitTailArgs) -> Result<()> {
    let index = levy_index(args.beta)?;
    let fit = fit_step_tail(index, args.n, args.k, args.seed)
        .map_err(|e| anyhow::anyhow!("fitting the tail: {e}"))?;

    let content = match args.format {
        OutputFormat::Csv => csv_table(
            "beta,n,k,estimated_index,standard_error",
            std::iter::once(format!(
                "{},{},{},{},{}",
                fmt_f64(args.beta),
                fit.n,
                fit.k,
                fmt_f64(fit.estimated_index),
                fmt_f64(fit.standard_error),
            )),
        ),
        OutputFormat::Json => json_document(&FitTailJson {
            beta: args.beta,
            n: fit.n,
            k: fit.k,
            estimated_index: fit.estimated_index,
            standard_error: fit.standard_error,
            seed: args.seed,
        })?,
    };
    Sink::new(args.out).write(&content)
}

#[derive(Serialize)]
struct OptimizeLogRowJson {
    iteration: usize,
    best_value: f64,
    best_position: Vec<f64>,
}

#[derive(Serialize)]
struct OptimizeJson {
    objective: &'static str,
    dimension: usize,
    policy: &'static str,
    walkers: usize,
    iterations: usize,
    seed: u64,
    best_value: f64,
    best_position: Vec<f64>,
    evaluations: u64,
    quarantined: usize,
    log: Vec<OptimizeLogRowJson>,
}

fn optimize_cmd(args: OptimizeArgs) -> Result<()> {
    let run = OptimizeDoc::from_flags(&args).run()?;
    let result = &run.result;

    let content = match args.format {
        OutputFormat::Csv => run.csv_log.clone(),
        OutputFormat::Json => json_document(&OptimizeJson {
            objective: run.objective,
            dimension: run.dimension,
            policy: run.policy,
            walkers: args.walkers,
            iterations: args.iterations,
            seed: args.seed,
            best_value: result.best_value,
            best_position: result.best_position.clone(),
            evaluations: result.evaluations,
            quarantined: result.quarantined,
            log: result
                .log
                .iter()
                .map(|row| OptimizeLogRowJson {
                    iteration: row.iteration,
                    best_value: row.best_value,
                    best_position: row.best_position.clone(),
                })
                .collect(),
        })?,
    };
    Sink::new(args.out).write(&content)?;
    let best: Vec<String> = result.best_position.iter().map(|c| fmt_f64(*c)).collect();
    eprintln!(
        "best value {} at [{}] after {} evaluations ({} quarantined)",
        fmt_f64(result.best_value),
        best.join(", "),
        result.evaluations,
        result.quarantined,
    );
    Ok(())
}

#[derive(Serialize)]
struct EscapeRowJson {
    policy: &'static str,
    escapes: usize,
    repeats: usize,
    frequency: f64,
}

#[derive(Serialize)]
struct EscapeJson {
    lmax: f64,
    basin_width: f64,
    beta: f64,
    budget: usize,
    repeats: usize,
    seed: u64,
    escape_distance: f64,
    well_halfwidth: f64,
    rows: Vec<EscapeRowJson>,
}

fn escape(args: EscapeArgs) -> Result<()> {
    let index = levy_index(args.beta)?;
    let summary = escape_experiment(&EscapeConfig {
        l_max: args.lmax,
        basin_width: args.basin_width,
        index,
        budget: args.budget,
        n_repeats: args.repeats,
        seed: args.seed,
    })
    .map_err(|e| anyhow::anyhow!("running the escape experiment: {e}"))?;

    let content = match args.format {
        OutputFormat::Csv => csv_table(
            "policy,escapes,repeats,frequency",
            summary.rows.iter().map(|r| {
                format!("{},{},{},{}", r.policy, r.escapes, r.repeats, fmt_f64(r.frequency))
            }),
        ),
        OutputFormat::Json => json_document(&EscapeJson {
            lmax: args.lmax,
            basin_width: args.basin_width,
            beta: args.beta,
            budget: args.budget,
            repeats: args.repeats,
            seed: args.seed,
            escape_distance: summary.escape_distance,
            well_halfwidth: summary.well_halfwidth,
            rows: summary
                .rows
                .iter()
                .map(|r| EscapeRowJson {
                    policy: r.policy,
                    escapes: r.escapes,
                    repeats: r.repeats,
                    frequency: r.frequency,
                })
                .collect(),
        })?,
    };
    Sink::new(args.out).write(&content)
}
