//! Command-line interface: Young-function calculus, regime classification,
//! optimal targets, norms and seminorms, Hardy reduction checks, and the
//! experiment runner.

use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use orlisob::error::Result;
use orlisob::experiments::{run_experiment, ExperimentConfig, Report};
use orlisob::functions::{luxemburg_norm, SampledFunction};
use orlisob::gallery::young_gallery;
use orlisob::hardy::{kernel_conjugate_norm, reduction_constant_estimate, TargetNorm};
use orlisob::regime::classify_growth;
use orlisob::seminorm::{fractional_seminorm, gagliardo_modular, ModularConfig};
use orlisob::space::SpaceParams;
use orlisob::targets::{orlicz_lorentz_target, orlicz_target};
use orlisob::young::YoungFunction;

#[derive(Parser)]
#[command(name = "orlisob", version, about = "Fractional Orlicz-Sobolev embedding toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpaceArgs {
    /// Dimension n.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Smoothness order s (fractional, in (0, n) for embeddings).
    #[arg(long, default_value_t = 0.5)]
    s: f64,
}

#[derive(Args)]
struct YoungArg {
    /// Path to a Young function in JSON form, or a gallery entry name.
    #[arg(long)]
    young: String,
}

impl YoungArg {
    fn load(&self) -> Result<YoungFunction> {
        if let Some(entry) = young_gallery().into_iter().find(|e| e.name == self.young) {
            return Ok(entry.young);
        }
        let text = std::fs::read_to_string(&self.young)?;
        YoungFunction::from_json(&text)
    }
}

fn load_samples(path: &PathBuf) -> Result<SampledFunction> {
    let file = std::fs::File::open(path)?;
    SampledFunction::from_csv(BufReader::new(file))
}

#[derive(Subcommand)]
enum Command {
    /// Classify the growth regime of a Young function for (n, s).
    Classify {
        #[command(flatten)]
        young: YoungArg,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Compute the convex conjugate of a Young function.
    Conjugate {
        #[command(flatten)]
        young: YoungArg,
    },
    /// Construct the optimal Orlicz target A_{n/s}.
    TargetOrlicz {
        #[command(flatten)]
        young: YoungArg,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Construct the rearrangement-invariant target building block Â.
    TargetRi {
        #[command(flatten)]
        young: YoungArg,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Luxemburg norm of a sampled function.
    Luxemburg {
        #[command(flatten)]
        young: YoungArg,
        /// CSV of samples (edges then values, as written by this tool).
        #[arg(long)]
        samples: PathBuf,
    },
    /// Gagliardo modular (at λ = 1) and fractional seminorm of a sampled
    /// function.
    Seminorm {
        #[command(flatten)]
        young: YoungArg,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        samples: PathBuf,
    },
    /// Kernel-conjugate norm and reduction-constant estimate for the Hardy
    /// operator.
    HardyCheck {
        #[command(flatten)]
        young: YoungArg,
        #[command(flatten)]
        space: SpaceArgs,
        /// Target norm: "linf", "orlicz:<young json path>", or
        /// "intersection:<young json path>".
        #[arg(long, default_value = "linf")]
        target: String,
        /// Directory of CSV trial functions on the half line.
        #[arg(long)]
        trials: Option<PathBuf>,
    },
    /// Run one or more named experiments and report pass/fail.
    Verify {
        /// Experiment id, a comma-separated list, or "all".
        #[arg(long)]
        experiment: String,
        /// Optional JSON config file; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for the JSON report and CSV curves.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Parallelism bound when several experiments are requested.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Seed recorded in the report (experiments are deterministic).
        #[arg(long)]
        seed: Option<u64>,
    },
}

const ALL_EXPERIMENTS: [&str; 5] = [
    "example-targets",
    "boundedness",
    "counterexample",
    "embedding-norms",
    "mollifier",
];

fn run_verify(
    experiment: &str,
    config: Option<PathBuf>,
    out: Option<PathBuf>,
    jobs: usize,
    seed: Option<u64>,
) -> Result<bool> {
    let ids: Vec<String> = if experiment == "all" {
        ALL_EXPERIMENTS.iter().map(|s| s.to_string()).collect()
    } else {
        experiment.split(',').map(|s| s.trim().to_string()).collect()
    };
    let base: Option<ExperimentConfig> = match &config {
        Some(path) => Some(ExperimentConfig::from_json(&std::fs::read_to_string(path)?)?),
        None => None,
    };
    let make_cfg = |id: &str| -> ExperimentConfig {
        let mut cfg = match &base {
            Some(b) if b.experiment == id => b.clone(),
            _ => ExperimentConfig::defaults(id),
        };
        cfg.experiment = id.to_string();
        if let Some(s) = seed {
            cfg.seed = s;
        }
        cfg
    };
    let jobs = jobs.max(1).min(ids.len().max(1));
    let mut reports: Vec<Result<Report>> = Vec::with_capacity(ids.len());
    if jobs <= 1 || ids.len() <= 1 {
        for id in &ids {
            reports.push(run_experiment(&make_cfg(id)));
        }
    } else {
        let configs: Vec<ExperimentConfig> = ids.iter().map(|id| make_cfg(id)).collect();
        let queue = std::sync::Mutex::new(configs.into_iter().enumerate().collect::<Vec<_>>());
        let done = std::sync::Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let next = queue.lock().expect("queue lock").pop();
                    match next {
                        Some((i, cfg)) => {
                            let r = run_experiment(&cfg);
                            done.lock().expect("done lock").push((i, r));
                        }
                        None => break,
                    }
                });
            }
        });
        let mut collected = done.into_inner().expect("done collected");
        collected.sort_by_key(|(i, _)| *i);
        reports.extend(collected.into_iter().map(|(_, r)| r));
    }
    let mut all_pass = true;
    for (id, res) in ids.iter().zip(reports) {
        match res {
            Ok(report) => {
                if let Some(dir) = &out {
                    report.write_files(dir)?;
                }
                println!("{}", report.to_json());
                if !report.pass {
                    all_pass = false;
                }
            }
            Err(e) => {
                eprintln!("experiment {id} failed to run: {e}");
                all_pass = false;
            }
        }
    }
    Ok(all_pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Classify { young, space } => {
            let a = young.load()?;
            let p = SpaceParams::new(space.n, space.s)?;
            let regime = classify_growth(&a, &p)?;
            println!("{}", serde_json::to_string_pretty(&regime)?);
            Ok(true)
        }
        Command::Conjugate { young } => {
            let a = young.load()?;
            println!("{}", a.conjugate()?.to_json());
            Ok(true)
        }
        Command::TargetOrlicz { young, space } => {
            let a = young.load()?;
            let p = SpaceParams::new(space.n, space.s)?;
            println!("{}", orlicz_target(&a, &p)?.to_json());
            Ok(true)
        }
        Command::TargetRi { young, space } => {
            let a = young.load()?;
            let p = SpaceParams::new(space.n, space.s)?;
            println!("{}", orlicz_lorentz_target(&a, &p)?.to_json());
            Ok(true)
        }
        Command::Luxemburg { young, samples } => {
            let a = young.load()?;
            let u = load_samples(&samples)?;
            println!("{{ \"luxemburg_norm\": \"{}\" }}", luxemburg_norm(&a, &u));
            Ok(true)
        }
        Command::Seminorm { young, space, samples } => {
            let a = young.load()?;
            let p = SpaceParams::new(space.n, space.s)?;
            let u = load_samples(&samples)?;
            let cfg = ModularConfig::default();
            let modular = gagliardo_modular(&u, p.frac_part(), &a, 1.0, &cfg)?;
            let seminorm = fractional_seminorm(&u, &p, &a, &cfg)?;
            println!(
                "{{ \"modular_at_unit_scale\": \"{modular}\", \"seminorm\": \"{seminorm}\" }}"
            );
            Ok(true)
        }
        Command::HardyCheck { young, space, target, trials } => {
            let a = young.load()?;
            let p = SpaceParams::new(space.n, space.s)?;
            let kn = kernel_conjugate_norm(&a, &p)?;
            let target_norm = if target == "linf" {
                TargetNorm::LInf
            } else if let Some(path) = target.strip_prefix("orlicz:") {
                let text = std::fs::read_to_string(path)?;
                TargetNorm::Orlicz(YoungFunction::from_json(&text)?)
            } else if let Some(path) = target.strip_prefix("intersection:") {
                let text = std::fs::read_to_string(path)?;
                TargetNorm::Intersection { a_hat: YoungFunction::from_json(&text)? }
            } else {
                return Err(orlisob::error::Error::Precondition(format!(
                    "unknown target {target:?}; use linf, orlicz:<path>, or intersection:<path>"
                )));
            };
            let trial_fns: Vec<SampledFunction> = match trials {
                Some(dir) => {
                    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)?
                        .filter_map(|e| e.ok().map(|e| e.path()))
                        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
                        .collect();
                    paths.sort();
                    paths.iter().map(load_samples).collect::<Result<Vec<_>>>()?
                }
                None => default_trials(),
            };
            let trials_used = trial_fns.len();
            let estimate = reduction_constant_estimate(&a, &p, &target_norm, &trial_fns)?;
            println!(
                "{{ \"kernel_conjugate_norm\": \"{kn}\", \"estimate\": {estimate}, \"trials_used\": {trials_used} }}"
            );
            Ok(true)
        }
        Command::Verify { experiment, config, out, jobs, seed } => {
            run_verify(&experiment, config, out, jobs, seed)
        }
    }
}

/// Indicator trials χ_(0,b) at six geometric widths.
fn default_trials() -> Vec<SampledFunction> {
    [0.125f64, 0.25, 0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&b| {
            SampledFunction::new(
                orlisob::functions::Domain::HalfLine,
                vec![0.0, b, 2.0 * b],
                vec![1.0, 0.0],
            )
            .expect("indicator trial")
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
