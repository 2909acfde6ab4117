//! Command-line driver: eigenvalues, forward simulations, classification,
//! and parameter sweeps over the two-season impulsive front model.
//!
//! Exit codes: 0 on success, 1 on usage/config errors, 2 on solver failures.

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use seasonfront::classify;
use seasonfront::config::{self, fmt_f64, Config};
use seasonfront::eigen;
use seasonfront::export;
use seasonfront::monodromy;
use seasonfront::sim;
use seasonfront_cli::{plot, presets, sweep};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "seasonfront",
    about = "Two-season impulsive free-boundary epidemic model",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// Flat key = value config file.
    #[arg(long, value_name = "FILE", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Named preset (see `seasonfront presets`).
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Principal eigenvalue of the periodic impulsive linearization.
    Eigen {
        #[command(flatten)]
        source: Source,
        /// Symmetric half-width l (interval (-l, l)).
        #[arg(long, conflicts_with_all = ["l1", "l2"])]
        l: Option<f64>,
        /// Left endpoint (with --l2).
        #[arg(long, requires = "l2")]
        l1: Option<f64>,
        /// Right endpoint (with --l1).
        #[arg(long, requires = "l1")]
        l2: Option<f64>,
        /// Also print the large-interval limit eigenvalue.
        #[arg(long)]
        limit: bool,
        /// Also run the discrete monodromy oracle and print the gap.
        #[arg(long)]
        discrete: bool,
        /// Grid size for the discrete oracle.
        #[arg(long, default_value_t = 400)]
        n: usize,
        /// Output directory for preset ladders (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forward free-boundary simulation; writes CSVs, a plot script, and an
    /// outcome report.
    Simulate {
        #[command(flatten)]
        source: Source,
        /// Final time (overrides the config horizon).
        #[arg(long)]
        horizon: Option<f64>,
        /// Snapshot cadence in accepted steps.
        #[arg(long)]
        snap_every: Option<usize>,
        /// Output directory (default: the SEASONFRONT_OUT env var or `.`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spreading/vanishing criteria; optionally the expansion threshold.
    Classify {
        #[command(flatten)]
        source: Source,
        /// Ratio mu2/mu1 along the threshold ray.
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// Bisect for the threshold mu* (only in the threshold regime).
        #[arg(long)]
        find_mu_star: bool,
        /// Lower bracket endpoint for mu1.
        #[arg(long, default_value_t = 1e-3)]
        mu_lo: f64,
        /// Upper bracket endpoint for mu1.
        #[arg(long, default_value_t = 64.0)]
        mu_hi: f64,
        /// Bracket resolution.
        #[arg(long)]
        resolution: Option<f64>,
        /// Simulation horizon per probe (default 50 periods).
        #[arg(long)]
        probe_horizon: Option<f64>,
        /// Output directory for the probe-history CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter sweep from a spec file; deterministic CSV regardless of
    /// parallelism.
    Sweep {
        /// Sweep spec: a config plus sweep_key / sweep_values / sweep_l.
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Worker count.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Output file (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in presets.
    Presets,
}

fn out_dir(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os("SEASONFRONT_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn load_source(source: &Source) -> anyhow::Result<Config> {
    match (&source.config, &source.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(config::parse_config(&text)?)
        }
        (None, Some(name)) => {
            let preset = presets::find_sim_preset(name)
                .with_context(|| format!("unknown preset {name:?} (try `seasonfront presets`)"))?;
            Ok(presets::preset_config(&preset))
        }
        _ => bail!("exactly one of --config or --preset is required"),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_eigen(
    source: Source,
    l: Option<f64>,
    l1: Option<f64>,
    l2: Option<f64>,
    limit: bool,
    discrete: bool,
    n: usize,
    out: Option<PathBuf>,
) -> anyhow::Result<()> {
    // preset ladders emit a CSV instead of a single report
    if let Some(name) = &source.preset {
        if let Some(ladder) = presets::find_eigen_ladder(name) {
            let mut csv = format!("{},lambda1\n", ladder.axis);
            for &v in &ladder.values {
                let (params, half_width) = (ladder.build)(v);
                let sol = eigen::lambda1_interval(&params, -half_width, half_width)?;
                csv.push_str(&format!("{},{}\n", fmt_f64(v), fmt_f64(sol.lambda1)));
            }
            match out {
                None => print!("{csv}"),
                Some(dir) => {
                    let dir = out_dir(Some(dir));
                    std::fs::create_dir_all(&dir)?;
                    let csv_name = format!("{name}.csv");
                    std::fs::write(dir.join(&csv_name), &csv)?;
                    std::fs::write(
                        dir.join("plot.gp"),
                        plot::ladder_script(ladder.axis, &csv_name),
                    )?;
                    println!("wrote {}", dir.join(&csv_name).display());
                }
            }
            return Ok(());
        }
    }

    let cfg = load_source(&source)?;
    let params = &cfg.params;
    let (a, b) = match (l, l1, l2) {
        (Some(l), _, _) => (-l, l),
        (None, Some(a), Some(b)) => (a, b),
        _ => (-params.s0, params.s0),
    };
    let sol = eigen::lambda1_interval(params, a, b)?;
    println!("interval = ({a}, {b})");
    println!("lambda1 = {}", fmt_f64(sol.lambda1));
    println!("case = {:?}", sol.case_id);
    if limit {
        let nu = eigen::nu1(params)?;
        println!("nu1 = {}", fmt_f64(nu.lambda1));
    }
    if discrete {
        let op = monodromy::build_monodromy(params, a, b, n, params.period / 2000.0)?;
        let lam = monodromy::lambda1_discrete(&op, 1e-10, 500)?;
        println!("lambda1_discrete = {} (n = {n})", fmt_f64(lam));
        println!("gap = {}", fmt_f64((lam - sol.lambda1).abs()));
    }
    Ok(())
}

fn cmd_simulate(
    source: Source,
    horizon: Option<f64>,
    snap_every: Option<usize>,
    out: Option<PathBuf>,
) -> anyhow::Result<()> {
    let mut cfg = load_source(&source)?;
    if let Some(h) = horizon {
        cfg.sim.horizon = h;
    }
    if let Some(k) = snap_every {
        cfg.sim.snap_every = k;
    }
    let dir = out_dir(out);
    std::fs::create_dir_all(&dir)?;

    let traj = sim::run(&cfg.params, &cfg.init, &cfg.sim)?;
    let outcome = sim::detect_outcome(&traj, &cfg.sim, &cfg.params);

    write_file(&dir, "trajectory.csv", &export::trajectory_csv(&traj))?;
    write_file(&dir, "snapshots_u.csv", &export::snapshot_csv(&traj, 'u'))?;
    write_file(&dir, "snapshots_v.csv", &export::snapshot_csv(&traj, 'v'))?;
    write_file(&dir, "snapshots_meta.csv", &export::snapshot_metadata(&traj))?;
    write_file(&dir, "outcome.txt", &outcome.report())?;
    write_file(&dir, "effective-config.txt", &config::write_config(&cfg))?;
    let title = source.preset.as_deref().unwrap_or("simulation").to_string();
    write_file(
        &dir,
        "plot.gp",
        &plot::simulation_script(&title, traj.snapshots.len()),
    )?;
    println!("verdict = {}", outcome.verdict);
    println!(
        "t = {}, r = {}, s = {}, sup_u = {:.3e}, sup_v = {:.3e}",
        traj.final_state.t,
        traj.final_state.r,
        traj.final_state.s,
        traj.final_state.sup_u(),
        traj.final_state.sup_v()
    );
    println!("wrote {}", dir.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    source: Source,
    rho: f64,
    find_mu_star: bool,
    mu_lo: f64,
    mu_hi: f64,
    resolution: Option<f64>,
    probe_horizon: Option<f64>,
    out: Option<PathBuf>,
) -> anyhow::Result<()> {
    let cfg = load_source(&source)?;
    let mut outcome = classify::classify(&cfg.params, &cfg.init)?;
    if find_mu_star {
        if outcome.verdict != classify::Verdict::ThresholdRegime {
            print!("{}", outcome.report());
            bail!("--find-mu-star requires the threshold regime");
        }
        let resolution = resolution.unwrap_or((mu_hi - mu_lo) / 1024.0);
        let mut sim_cfg = cfg.sim.clone();
        sim_cfg.early_stop = true;
        sim_cfg.horizon = probe_horizon.unwrap_or(50.0 * cfg.params.period);
        let estimate = classify::find_mu_star(
            &cfg.params,
            &cfg.init,
            rho,
            (mu_lo, mu_hi),
            resolution,
            &sim_cfg,
        )?;
        if let Some(dir) = out {
            let dir = out_dir(Some(dir));
            std::fs::create_dir_all(&dir)?;
            let mut csv = String::from("mu1,verdict\n");
            for (mu, v) in &estimate.history {
                csv.push_str(&format!("{},{v}\n", fmt_f64(*mu)));
            }
            write_file(&dir, "mu-star-probes.csv", &csv)?;
        }
        outcome.mu_star = Some(estimate);
    }
    print!("{}", outcome.report());
    Ok(())
}

fn write_file(dir: &Path, name: &str, content: &str) -> anyhow::Result<()> {
    std::fs::write(dir.join(name), content).with_context(|| format!("writing {name}"))
}

fn cmd_presets() {
    println!("eigenvalue ladders (use with `eigen --preset NAME`):");
    for p in presets::eigen_ladders() {
        println!("  {:<12} {}", p.name, p.description);
    }
    println!("simulations (use with `simulate --preset NAME` or `classify --preset NAME`):");
    for p in presets::sim_presets() {
        println!("  {:<12} {}", p.name, p.description);
    }
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Eigen {
            source,
            l,
            l1,
            l2,
            limit,
            discrete,
            n,
            out,
        } => cmd_eigen(source, l, l1, l2, limit, discrete, n, out),
        Command::Simulate {
            source,
            horizon,
            snap_every,
            out,
        } => cmd_simulate(source, horizon, snap_every, out),
        Command::Classify {
            source,
            rho,
            find_mu_star,
            mu_lo,
            mu_hi,
            resolution,
            probe_horizon,
            out,
        } => cmd_classify(
            source,
            rho,
            find_mu_star,
            mu_lo,
            mu_hi,
            resolution,
            probe_horizon,
            out,
        ),
        Command::Sweep {
            spec,
            parallel,
            out,
        } => {
            let text = std::fs::read_to_string(&spec)
                .with_context(|| format!("reading {}", spec.display()))?;
            let spec = sweep::parse_spec(&text)?;
            let csv = sweep::run_sweep(&spec, parallel.max(1))?;
            match out {
                None => print!("{csv}"),
                Some(path) => {
                    std::fs::write(&path, csv)
                        .with_context(|| format!("writing {}", path.display()))?
                }
            }
            Ok(())
        }
        Command::Presets => {
            cmd_presets();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            // solver failures exit 2, usage/config problems exit 1
            let solver_failure = matches!(
                err.downcast_ref::<seasonfront::Error>(),
                Some(seasonfront::Error::EigenSolve(_))
                    | Some(seasonfront::Error::NonConvergence { .. })
                    | Some(seasonfront::Error::Stability(_))
                    | Some(seasonfront::Error::StepRejection { .. })
                    | Some(seasonfront::Error::RootFind(_))
                    | Some(seasonfront::Error::BracketNotStraddling { .. })
            );
            if solver_failure {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
