use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use permlab::experiment::{draw_values, format_value, write_json};
use permlab::sample::Draw;
use permlab::spec::{ExperimentSpec, Mode};
use permlab::transfer::{graph_transfer, transfer};
use permlab::verify::{verify_all, Status, VerifyOptions};
use permlab::{init_thread_pool, run_experiment};
use permlab_core::limits::KernelWindow;
use permlab_core::montecarlo::run_trials;
use permlab_core::rational::to_f64;
use permlab_core::sampling::LawSpec;
use permlab_core::stats::StatisticSpec;
use permlab_core::walks::WalkSpec;
use permlab_core::{Permutation, RandomSource};

#[derive(Parser)]
#[command(name = "permlab", version, about = "Random permutation statistics: sampling, exact checks and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print permutations drawn from a law, one per line.
    Sample(SampleArgs),
    /// Evaluate a statistic on a given permutation or on draws from a law.
    Stat(StatArgs),
    /// Apply a walk to a given permutation or to draws from a law.
    Walk(WalkArgs),
    /// Run every exact check and report PASS/WARN/FAIL.
    Verify(VerifyArgs),
    /// Run an experiment from a JSON config or inline flags.
    Experiment(ExperimentArgs),
    /// Compare two laws after walking to the target class.
    Transfer(ExperimentArgs),
    /// Evaluate det[k0(j-i)] over a descent window.
    Kernel(KernelArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value = "uniform")]
    law: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct StatArgs {
    #[arg(long)]
    stat: String,
    /// One-line word such as `5,3,2,1,4` or cycles such as `(1 5 4)(2 3)`.
    #[arg(long, conflicts_with = "law")]
    perm: Option<String>,
    #[arg(long)]
    law: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct WalkArgs {
    /// `merge`, `merge-to-cycle`, `split:<λ>[:i]`, `inverse:<law>` or `threshold:<j>`.
    #[arg(long, default_value = "merge-to-cycle")]
    walk: String,
    #[arg(long, conflicts_with = "law")]
    perm: Option<String>,
    #[arg(long)]
    law: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also print passing checks.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    law: Option<String>,
    #[arg(long)]
    stat: Option<String>,
    /// Sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    graph: Option<String>,
    /// Reference law: the second arm of a transfer, or a KS reference in Monte Carlo mode.
    #[arg(long)]
    reference: Option<String>,
    #[arg(long)]
    mode: Option<Mode>,
}

#[derive(Args)]
struct KernelArgs {
    /// Window A, comma separated, e.g. `1,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<usize>,
}

impl ExperimentArgs {
    fn into_spec(self, default_mode: Mode) -> anyhow::Result<ExperimentSpec> {
        let mut spec = match &self.config {
            Some(path) => ExperimentSpec::from_file(path).with_context(|| format!("reading {}", path.display()))?,
            None => ExperimentSpec::from_json(&format!("{{\"mode\": \"{}\"}}", mode_name(default_mode)))?,
        };
        if let Some(v) = self.law {
            spec.law = v;
        }
        if let Some(v) = self.stat {
            spec.stat = v;
        }
        if !self.n.is_empty() {
            spec.sizes = self.n;
        }
        if let Some(v) = self.trials {
            spec.trials = v;
        }
        if let Some(v) = self.seed {
            spec.seed = v;
        }
        if let Some(v) = self.out {
            spec.out = v;
        }
        if self.graph.is_some() {
            spec.graph = self.graph;
        }
        if self.reference.is_some() {
            spec.reference = self.reference;
        }
        if let Some(m) = self.mode {
            spec.mode = m;
        }
        Ok(spec)
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Mc => "mc",
        Mode::Exact => "exact",
        Mode::Verify => "verify",
        Mode::Transfer => "transfer",
    }
}

fn inputs(perm: Option<String>, law: Option<String>, n: Option<usize>, trials: usize, seed: u64) -> anyhow::Result<Vec<Draw>> {
    if let Some(p) = perm {
        return Ok(vec![Draw::Plain(Permutation::parse(&p)?)]);
    }
    let law = LawSpec::parse(law.as_deref().unwrap_or("uniform"))?;
    let Some(n) = n else { bail!("either --perm or --n is required") };
    let draws = run_trials(seed, n as u64, trials, |rng| Draw::sample(&law, n, rng));
    Ok(draws.into_iter().collect::<Result<_, _>>()?)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Sample(a) => {
            for d in inputs(None, Some(a.law), Some(a.n), a.trials, a.seed)? {
                println!("{d}");
            }
        }
        Command::Stat(a) => {
            let stat = StatisticSpec::parse(&a.stat)?;
            if a.perm.is_none() && a.trials > 1 {
                let law = LawSpec::parse(a.law.as_deref().unwrap_or("uniform"))?;
                let Some(n) = a.n else { bail!("--n is required when sampling") };
                for v in draw_values(&law, &stat, n, a.trials, a.seed, n as u64)? {
                    println!("{}", format_value(v, stat.is_integer()));
                }
            } else {
                for d in inputs(a.perm, a.law, a.n, a.trials, a.seed)? {
                    println!("{}", format_value(d.eval(&stat)?, stat.is_integer()));
                }
            }
        }
        Command::Walk(a) => {
            let walk = WalkSpec::parse(&a.walk)?;
            let seed = a.seed;
            for (t, d) in inputs(a.perm, a.law, a.n, a.trials, seed)?.into_iter().enumerate() {
                let mut rng = RandomSource::substream(seed ^ 0x9e37_79b9_7f4a_7c15, d.sigma().len() as u64, t as u64);
                let (end, steps) = walk.apply(d.sigma(), &mut rng)?;
                println!("{} -> {end} ({steps} steps)", d.sigma());
            }
        }
        Command::Verify(a) => {
            let report = verify_all(&VerifyOptions::default())?;
            for e in &report.entries {
                if a.verbose || e.status != Status::Pass {
                    let range = e.range.map(|[lo, hi]| format!(" n={lo}..{hi}")).unwrap_or_default();
                    let bound = match (&e.max_attained, &e.bound) {
                        (Some(m), Some(b)) => format!(" max {m} / bound {b}"),
                        _ => String::new(),
                    };
                    println!("{} {}{range}{bound} {}", e.status, e.check, e.detail);
                }
            }
            println!("{} passed, {} warnings, {} failed", report.passed, report.warned, report.failed);
            if let Some(path) = a.report {
                write_json(&path, &report)?;
            }
            return Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Experiment(a) => {
            let spec = a.into_spec(Mode::Mc)?;
            for f in run_experiment(&spec)?.files {
                println!("{}", f.display());
            }
        }
        Command::Transfer(a) => {
            let has_files = a.config.is_some() || a.out.is_some();
            let mut spec = a.into_spec(Mode::Transfer)?;
            spec.mode = Mode::Transfer;
            if has_files {
                for f in run_experiment(&spec)?.files {
                    println!("{}", f.display());
                }
            } else {
                spec.validate()?;
                let reference = spec.reference.as_deref().unwrap_or_default();
                let summaries = match &spec.graph {
                    Some(g) => vec![graph_transfer(g, &spec.law, reference, &spec.stat, spec.trials, spec.seed)?],
                    None => spec
                        .sizes
                        .iter()
                        .map(|&n| transfer(&spec.law, reference, &spec.stat, n, spec.trials, spec.seed))
                        .collect::<Result<_, _>>()?,
                };
                for s in summaries {
                    println!("{}", serde_json::to_string_pretty(&s)?);
                }
            }
        }
        Command::Kernel(a) => {
            let det = KernelWindow::new(&a.set)?.determinant();
            println!("{det}");
            println!("{:.15}", to_f64(&det));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_thread_pool() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
