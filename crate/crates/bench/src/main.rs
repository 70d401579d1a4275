use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qdd_bench::experiments::{self, run_problem};
use qdd_bench::report::{aggregates_csv, records_csv};
use qdd_bench::{Experiment, RunConfig};
use qdd_core::dd_solver::{history_csv, state_csv, Problem, RunResult};
use qdd_core::DistanceEstimate;
use qdd_core::material_db::{format_database, precompute_adaptive_db, read_database, write_adaptive, Database};
use qdd_core::quantum_core::query_ledger;

#[derive(Parser, Debug)]
#[command(name = "qdd", version, about = "Data-driven mechanics with a swap-test distance oracle")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    experiment: Option<ExperimentArg>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    oracle: Option<OracleArg>,
    #[arg(long, global = true)]
    shots: Option<u64>,
    #[arg(long, global = true)]
    adaptive: Option<Switch>,
    #[arg(long, global = true)]
    backend: Option<BackendArg>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the material database of the experiment.
    GenDb,
    /// Repeated distance estimates of one pair.
    SwaptestDemo {
        #[arg(long)]
        trials: Option<usize>,
    },
    /// One solver run.
    Run,
    /// Shot-count × seed sweep.
    Sweep {
        /// Number of seeds per shot count.
        #[arg(long)]
        seeds: Option<u64>,
    },
    /// Write the translated database for every anchor point.
    PrecomputeAdaptive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExperimentArg {
    Bar1d,
    Springbar,
    Plate2d,
    SwaptestDemo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Analytic,
    Gate,
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(e) = cli.experiment {
        cfg.experiment = match e {
            ExperimentArg::Bar1d => Experiment::Bar1d,
            ExperimentArg::Springbar => Experiment::Springbar,
            ExperimentArg::Plate2d => Experiment::Plate2d,
            ExperimentArg::SwaptestDemo => Experiment::SwaptestDemo,
        };
    }
    let s = &mut cfg.solver;
    if let Some(v) = cli.seed {
        s.seed = v;
    }
    if let Some(v) = cli.oracle {
        s.oracle = match v {
            OracleArg::Classical => "classical",
            OracleArg::Quantum => "quantum",
        }
        .into();
    }
    if let Some(v) = cli.shots {
        s.shots = v;
    }
    if let Some(v) = cli.adaptive {
        s.adaptive = matches!(v, Switch::On);
    }
    if let Some(v) = cli.backend {
        s.backend = match v {
            BackendArg::Analytic => "analytic",
            BackendArg::Gate => "gate",
        }
        .into();
    }
    if let Some(v) = &cli.out {
        cfg.out = v.clone();
    }
    match &cli.command {
        Command::SwaptestDemo { trials: Some(t) } => cfg.swaptest.trials = *t,
        Command::Sweep { seeds: Some(n) } => cfg.sweep.seeds = *n,
        _ => {}
    }
    cfg.validate()?;
    cfg.solver_config()?;
    Ok(cfg)
}

fn database(cfg: &RunConfig) -> Result<Database<f64>> {
    let dim = match cfg.experiment {
        Experiment::Plate2d => 3,
        _ => 1,
    };
    if let Some(f) = &cfg.database.file {
        return Ok(read_database(f, Some(dim))?);
    }
    Ok(match cfg.experiment {
        Experiment::Bar1d => cfg.bar_preset().database()?,
        Experiment::Springbar => cfg.springbar_preset().database()?,
        Experiment::Plate2d => cfg.plate_preset().database()?,
        Experiment::SwaptestDemo => bail!("the swap-test demo has no database"),
    })
}

fn problem(cfg: &RunConfig) -> Result<Problem<f64>> {
    let db = database(cfg)?;
    Ok(match cfg.experiment {
        Experiment::Bar1d => cfg.bar_preset().problem_with(db)?,
        Experiment::Plate2d => cfg.plate_preset().problem_with(db)?,
        other => bail!("experiment {other:?} is not a finite-element problem"),
    })
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_summary(cfg: &RunConfig, command: &str, results: serde_json::Value) -> Result<()> {
    let summary = json!({ "command": command, "config": cfg, "results": results });
    write(&cfg.out, "summary.json", &serde_json::to_string_pretty(&summary)?)
}

fn gen_db(cfg: &RunConfig) -> Result<()> {
    let db = database(cfg)?;
    write(&cfg.out, "database.csv", &format_database(&db))?;
    println!("N = {}, D = {}", db.len(), 2 * db.dim());
    for c in 0..db.dim() {
        let col = |f: fn(&qdd_core::MaterialPoint, usize) -> f64| {
            let v: Vec<f64> = db.points().iter().map(|p| f(p, c)).collect();
            (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        };
        let (s0, s1) = col(|p, c| p.sig[c]);
        let (e0, e1) = col(|p, c| p.eps[c]);
        println!("component {c}: sigma [{s0}, {s1}], eps [{e0:.6e}, {e1:.6e}]");
    }
    write_summary(cfg, "gen-db", json!({ "n": db.len(), "d": 2 * db.dim() }))
}

fn swaptest_demo(cfg: &RunConfig) -> Result<()> {
    let sw = &cfg.swaptest;
    let st = experiments::swaptest_demo(&sw.x, &sw.x_prime, cfg.solver.shots, sw.trials, cfg.backend()?, cfg.solver.seed)?;
    let mut csv = format!("{}\n", DistanceEstimate::CSV_HEADER);
    for e in &st.samples {
        let _ = writeln!(csv, "{}", e.csv_row());
    }
    write(&cfg.out, "swaptest_samples.csv", &csv)?;
    println!(
        "d = {}, z_hat = {}, mean = {:.6}, rmse = {:.6}, predicted rmse = {:.6}",
        st.d, st.z_hat, st.mean, st.rmse, st.predicted_rmse
    );
    let ledger = query_ledger(sw.x.len())?;
    write_summary(
        cfg,
        "swaptest-demo",
        json!({
            "trials": st.trials, "n_s": st.n_s, "d": st.d, "z_hat": st.z_hat,
            "mean": st.mean, "rmse": st.rmse, "predicted_rmse": st.predicted_rmse,
            "qubits": ledger.qubits, "swap_test_gates": ledger.swap_test_gates,
        }),
    )
}

/// Per-point `(ε, σ)` of the admissible and assigned states at each iterate.
fn evolution_csv(problem: &Problem<f64>, states: &[qdd_core::DDState]) -> String {
    let mut s = String::from("iter,point,eps,sig,eps_star,sig_star\n");
    for st in states {
        for (e, &j) in st.assignments.iter().enumerate() {
            let p = &problem.db.points()[j];
            let _ = writeln!(
                s,
                "{},{e},{:.16e},{:.16e},{:.16e},{:.16e}",
                st.iter, st.eps_adm[e][0], st.sig_adm[e][0], p.eps[0], p.sig[0]
            );
        }
    }
    s
}

/// Full state dump of every iterate.
fn trace_csv(problem: &Problem<f64>, states: &[qdd_core::DDState]) -> String {
    let mut s = String::new();
    for (k, st) in states.iter().enumerate() {
        s.push_str(&state_csv(st, &problem.db, k == 0));
    }
    s
}

fn run_json(r: &RunResult<f64>) -> serde_json::Value {
    json!({
        "converged": r.converged(),
        "iterations": r.iterations(),
        "penalty": r.state.penalty,
        "termination": format!("{:?}", r.termination),
    })
}

fn run(cfg: &RunConfig) -> Result<()> {
    let sc = cfg.solver_config()?;
    match cfg.experiment {
        Experiment::SwaptestDemo => swaptest_demo(cfg),
        Experiment::Springbar => {
            let preset = cfg.springbar_preset();
            let db = database(cfg)?;
            let r = qdd_core::dd_solver::solve_spring_bar(&db, &preset.setup, &preset.metric()?, &sc)?;
            write(&cfg.out, "history.csv", &history_csv(&r.history))?;
            println!(
                "converged = {}, point = {}, eps = {:.6e}, sig = {:.6}, penalty = {:.6e}",
                r.converged(),
                r.assignment,
                r.eps,
                r.sig,
                r.penalty
            );
            let ledger = query_ledger(2)?;
            write_summary(
                cfg,
                "run",
                json!({
                    "converged": r.converged(), "assignment": r.assignment, "eps": r.eps, "sig": r.sig,
                    "penalty": r.penalty, "iterations": r.history.len().saturating_sub(1),
                    "qubits": ledger.qubits,
                }),
            )
        }
        Experiment::Bar1d => {
            let p = problem(cfg)?;
            let (r, states) = run_problem(&p, &sc, true)?;
            write(&cfg.out, "history.csv", &history_csv(&r.history))?;
            write(&cfg.out, "state.csv", &state_csv(&r.state, &p.db, true))?;
            write(&cfg.out, "evolution.csv", &evolution_csv(&p, &states))?;
            if cfg.trace {
                write(&cfg.out, "trace.csv", &trace_csv(&p, &states))?;
            }
            println!("converged = {}, iterations = {}, penalty = {:.6e}", r.converged(), r.iterations(), r.state.penalty);
            write_summary(cfg, "run", run_json(&r))
        }
        Experiment::Plate2d => {
            let out = experiments::plate(&cfg.plate_preset(), &sc, 10, cfg.trace)?;
            let r = &out.dd;
            if cfg.trace {
                write(&cfg.out, "trace.csv", &trace_csv(&out.problem, &out.states))?;
            }
            write(&cfg.out, "history.csv", &history_csv(&r.history))?;
            write(&cfg.out, "state.csv", &state_csv(&r.state, &out.problem.db, true))?;
            let mut refcsv = String::from("point,sx,sy,sxy\n");
            for (e, s) in out.reference.stress.iter().enumerate() {
                let _ = writeln!(refcsv, "{e},{:.16e},{:.16e},{:.16e}", s[0], s[1], s[2]);
            }
            write(&cfg.out, "reference_stress.csv", &refcsv)?;
            println!(
                "converged = {}, iterations = {}, penalty = {:.6e}, max rel sx error = {:.4}, equilibrium = {:.2e}",
                r.converged(),
                r.iterations(),
                r.state.penalty,
                out.sx_error,
                out.equilibrium_residual
            );
            let mut res = run_json(r);
            res["sx_error"] = json!(out.sx_error);
            res["sx_error_data"] = json!(out.sx_error_data);
            res["equilibrium_residual"] = json!(out.equilibrium_residual);
            res["sx_error_definition"] = json!("max |sx - sx_ref| / max |sx_ref| over integration points, admissible stress");
            write_summary(cfg, "run", res)
        }
    }
}

fn sweep(cfg: &RunConfig) -> Result<()> {
    let p = problem(cfg)?;
    let out = experiments::sweep(&p, &cfg.solver_config()?, &cfg.sweep.shots, cfg.sweep.seeds)?;
    write(&cfg.out, "records.csv", &records_csv(&out.records))?;
    write(&cfg.out, "aggregates.csv", &aggregates_csv(&out.aggregates))?;
    let mut curves = String::from("n_s,iter,mean_penalty\n");
    for (n, c) in &out.mean_curves {
        for (k, v) in c.iter().enumerate() {
            let _ = writeln!(curves, "{n},{k},{v:.16e}");
        }
    }
    write(&cfg.out, "mean_penalty.csv", &curves)?;
    for a in &out.aggregates {
        println!(
            "n_s = {:>6}: converged {}/{}, mean iterations {:.2}, mean penalty {:.4e}, mean rms error {:.4e}",
            a.n_s, a.converged, a.runs, a.iterations.mean, a.penalty.mean, a.rms_stress_error.mean
        );
    }
    write_summary(
        cfg,
        "sweep",
        json!({
            "reference": run_json(&out.reference),
            "rms_stress_error_definition": "sqrt(sum w |sig* - sig*_ref|^2 / sum w), reference = classical DD",
            "aggregates": out.aggregates,
        }),
    )
}

fn precompute_adaptive(cfg: &RunConfig) -> Result<()> {
    let p = problem(cfg)?;
    let delta = p.scaled.default_delta(cfg.solver.delta_rel);
    let stem = cfg.out.join("database.csv");
    fs::write(&stem, format_database(&p.db))?;
    for j in 0..p.scaled.len() {
        write_adaptive(&precompute_adaptive_db(&p.scaled, j, &delta)?, &stem, j)?;
    }
    println!("wrote {} translated databases", p.scaled.len());
    write_summary(cfg, "precompute-adaptive", json!({ "anchors": p.scaled.len(), "delta": delta }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let result = fs::create_dir_all(&cfg.out)
        .with_context(|| format!("creating {}", cfg.out.display()))
        .and_then(|_| match cli.command {
            Command::GenDb => gen_db(&cfg),
            Command::SwaptestDemo { .. } => swaptest_demo(&cfg),
            Command::Run => run(&cfg),
            Command::Sweep { .. } => sweep(&cfg),
            Command::PrecomputeAdaptive => precompute_adaptive(&cfg),
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
