//! Command-line driver for the DS-polariton model: frame inspection,
//! equilibrium scans, laser dynamics, steady-state reports, parameter sweeps
//! and the phase diagram. All tabular output is deterministic CSV.

use clap::{Parser, Subcommand, ValueEnum};
use ds_polariton_cli::{config, output, presets, scans};
use ds_polariton_cli::config::{ConfigError, RunConfig};
use ds_polariton::{
    build_dressed_frame, check_conditions, detect_lasing_onset, integrate, steady_report,
    thermalization_time, BlochState, IntegrateOptions,
};
use num_complex::Complex64;
use ds_polariton_cli::scans::Phase;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ds-polariton",
    about = "Dressed-state polariton condensation and lasing simulator",
    arg_required_else_help = true
)]
struct Cli {
    /// Run configuration file (key = value lines).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Named parameter preset (fig3, fig4, fig6, fig7, fig8, fig9).
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Output directory for CSV/text artifacts.
    #[arg(long, global = true, default_value = "out", value_name = "DIR")]
    out: PathBuf,
    /// Margin factor for the validity-condition checks.
    #[arg(long, global = true)]
    margin: Option<f64>,
    /// Solver tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Override a single config key, e.g. --set params.delta_thz=11.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    /// Stationary imbalance S_z^(st) vs the sweep axis.
    Imbalance,
    /// Steady order parameter |lambda| vs the sweep axis.
    Order,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dressed-state frame quantities and validity conditions.
    Frame,
    /// Equilibrium order parameter and critical temperature vs Delta.
    EquilibriumScan,
    /// Integrate the laser onset dynamics and write the trajectory.
    Dynamics,
    /// Print the steady-state threshold report for the configured transition.
    SteadyState,
    /// Sweep the configured axis and write a CSV table.
    Sweep {
        #[arg(long, value_enum, default_value = "order")]
        kind: SweepKind,
    },
    /// Classify the (delta/Omega, kappa/gamma) plane.
    PhaseDiagram,
}

enum CliError {
    Usage(String),
    Solver(ds_polariton::Error),
    Io(std::io::Error),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ds_polariton::Error> for CliError {
    fn from(e: ds_polariton::Error) -> Self {
        CliError::Solver(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("DS_POLARITON_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            // ignore failure if a global pool already exists (tests)
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.preset {
        Some(name) => presets::preset(name)
            .ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`")))?,
        None => RunConfig::default(),
    };
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)?;
        cfg = config::parse_config(&text, cfg)?;
    }
    for (i, pair) in cli.set.iter().enumerate() {
        let Some((key, value)) = pair.split_once('=') else {
            return Err(CliError::Usage(format!("--set needs KEY=VALUE, got `{pair}`")));
        };
        config::apply_key(&mut cfg, key.trim(), value.trim(), i + 1)
            .map_err(|e| CliError::Usage(format!("--set {pair}: {e}")))?;
    }
    if let Some(m) = cli.margin {
        cfg.margin = m;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    Ok(cfg)
}

fn cmd_frame(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.resolved_params();
    let f = build_dressed_frame(&p)?;
    let flags = check_conditions(&f, &p, cfg.margin)?;
    let mut doc = output::frame_json(&f);
    doc["conditions"] = json!({
        "margin": cfg.margin,
        "thermalized": flags.thermalized,
        "strong_coupling_12": flags.strong_coupling_12,
        "strong_coupling_21": flags.strong_coupling_21,
        "thresholdless_12": flags.thresholdless_12,
    });
    if let Ok(tau) = thermalization_time(&p) {
        doc["thermalization_time_ps"] = json!(tau);
    }
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(())
}

fn cmd_equilibrium_scan(cfg: &RunConfig, out: &PathBuf) -> Result<(), CliError> {
    let rows = scans::sweep_equilibrium(cfg)?;
    let n_cond = rows.iter().filter(|r| r[1] > 0.0).count();
    let csv = output::csv_table(
        &["delta_eff_rad_per_ps", "lambda", "t_c_photon_k", "t_c_exact_k"],
        rows.iter().map(|r| r.to_vec()),
    );
    output::write_text(out, "equilibrium.csv", &csv)?;
    output::write_text(out, "config.txt", &config::serialize(cfg))?;
    println!(
        "equilibrium scan: {} points, {} condensed, T = {} K -> {}",
        rows.len(),
        n_cond,
        cfg.params.temperature,
        out.join("equilibrium.csv").display()
    );
    Ok(())
}

fn cmd_dynamics(cfg: &RunConfig, out: &PathBuf) -> Result<(), CliError> {
    let p = cfg.resolved_params();
    let f = build_dressed_frame(&p)?;
    let init = cfg.dynamics.initial;
    let initial = BlochState {
        lambda: Complex64::new(init[0], init[1]),
        s: Complex64::new(init[2], init[3]),
        s_z: init[4],
        t: 0.0,
    };
    let opts = IntegrateOptions {
        t_end: cfg.dynamics.t_end,
        n_out: cfg.dynamics.n_out,
        rel_tol: cfg.dynamics.rel_tol,
        abs_tol: cfg.dynamics.abs_tol,
        rotating_frame: cfg.dynamics.rotating_frame,
    };
    let traj = integrate(cfg.transition, &initial, &f, &opts)?;
    let report = steady_report(cfg.transition, &f)?;
    let onset = detect_lasing_onset(&traj, report.s_z_thr);
    output::write_text(out, "trajectory.csv", &output::trajectory_csv(&traj))?;
    output::write_text(out, "config.txt", &config::serialize(cfg))?;
    let last = traj.samples.last().expect("at least the initial sample");
    let tau = match onset {
        Some(t) => format!("{:.1} ns", t * 1e-3),
        None => "not reached".to_string(),
    };
    println!(
        "tau_L = {tau}, |lambda|_final = {:.4}, s_z_final = {:.4}, {} steps ({} rejected) -> {}",
        last.lambda.norm(),
        last.s_z,
        traj.stats.steps,
        traj.stats.rejected,
        out.join("trajectory.csv").display()
    );
    Ok(())
}

fn cmd_steady_state(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.resolved_params();
    let f = build_dressed_frame(&p)?;
    let report = steady_report(cfg.transition, &f)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&output::threshold_report_json(&report)).expect("json")
    );
    Ok(())
}

fn cmd_sweep(cfg: &RunConfig, out: &PathBuf, kind: SweepKind) -> Result<(), CliError> {
    let axis = cfg.sweep.axis.name();
    let (name, csv, summary) = match kind {
        SweepKind::Imbalance => {
            let rows = scans::sweep_stationary_imbalance(cfg)?;
            let csv = output::csv_table(
                &["delta_rad_per_ps", "s_z_st", "s_z_eq_full"],
                rows.iter().map(|r| r.to_vec()),
            );
            (
                "sweep_imbalance.csv",
                csv,
                format!("imbalance sweep: {} points over delta", rows.len()),
            )
        }
        SweepKind::Order => {
            let rows = scans::sweep_order_parameter(cfg)?;
            let lasing = rows.iter().filter(|r| r[1] > 0.0).count();
            let peak = rows.iter().map(|r| r[1]).fold(0.0f64, f64::max);
            let csv = output::csv_table(
                &["axis_value", "abs_lambda", "s_z_st", "s_z_thr"],
                rows.iter().map(|r| r.to_vec()),
            );
            (
                "sweep_order.csv",
                csv,
                format!(
                    "order sweep over {axis}: {} points, {} lasing, peak |lambda| = {:.4}",
                    rows.len(),
                    lasing,
                    peak
                ),
            )
        }
    };
    output::write_text(out, name, &csv)?;
    output::write_text(out, "config.txt", &config::serialize(cfg))?;
    println!("{summary} -> {}", out.join(name).display());
    Ok(())
}

fn cmd_phase_diagram(cfg: &RunConfig, out: &PathBuf) -> Result<(), CliError> {
    let d = scans::phase_diagram(cfg)?;
    let csv = output::csv_table(
        &[
            "delta_over_omega",
            "kappa_over_gamma",
            "phase_code",
            "thermalized",
            "strong_12",
            "strong_21",
            "lambda_12",
            "lambda_21",
        ],
        d.cells.iter().map(|c| {
            let code = match c.classification {
                Phase::Normal => 0.0,
                Phase::Lasing12 => 1.0,
                Phase::Lasing21 => 2.0,
                Phase::SuperradiantEquilibrium => 3.0,
            };
            vec![
                c.delta_over_omega,
                c.kappa_over_gamma,
                code,
                c.thermalized as u8 as f64,
                c.strong_12 as u8 as f64,
                c.strong_21 as u8 as f64,
                c.lambda_12,
                c.lambda_21,
            ]
        }),
    );
    output::write_text(out, "phase_diagram.csv", &csv)?;
    output::write_text(out, "phase_diagram.txt", &d.matrix())?;
    output::write_text(out, "config.txt", &config::serialize(cfg))?;
    let count = |p: Phase| d.cells.iter().filter(|c| c.classification == p).count();
    println!(
        "phase diagram {}x{}: S = {}, 1 = {}, 2 = {}, N = {} -> {}",
        d.nx,
        d.ny,
        count(Phase::SuperradiantEquilibrium),
        count(Phase::Lasing12),
        count(Phase::Lasing21),
        count(Phase::Normal),
        out.join("phase_diagram.csv").display()
    );
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    init_thread_pool();
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Frame => cmd_frame(&cfg),
        Command::EquilibriumScan => cmd_equilibrium_scan(&cfg, &cli.out),
        Command::Dynamics => cmd_dynamics(&cfg, &cli.out),
        Command::SteadyState => cmd_steady_state(&cfg),
        Command::Sweep { kind } => cmd_sweep(&cfg, &cli.out, *kind),
        Command::PhaseDiagram => cmd_phase_diagram(&cfg, &cli.out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Solver(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(4)
        }
    }
}
