use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use innervar::suite::{self, ExperimentRegistry, SuiteConfig, SuiteError};

#[derive(Parser)]
#[command(name = "innervar", version, about = "Run inner-variation experiment suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite config and write one CSV per experiment plus summary.json.
    Run {
        /// Path to a JSON config, or the name of a built-in suite.
        config: String,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads (0 = all cores). Results do not depend on it.
        #[arg(long, env = "INNERVAR_JOBS", default_value_t = 0)]
        jobs: usize,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the experiment kinds and the built-in suites.
    ListExperiments,
}

fn load(config: &str) -> Result<SuiteConfig, SuiteError> {
    let path = Path::new(config);
    if !path.exists() {
        if let Some(cfg) = suite::builtin(config) {
            return Ok(cfg);
        }
    }
    suite::load_config(path)
}

fn run(config: &str, out: &Path, jobs: usize, seed: Option<u64>) -> ExitCode {
    let cfg = match load(config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start {jobs} worker threads: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| suite::run_suite(&cfg, out, seed)) {
        Ok(summary) => {
            for e in &summary.experiments {
                let status = if e.pass { "PASS" } else { "FAIL" };
                let gap = e.gap.map_or("-".to_string(), |g| format!("{g:.3e}"));
                let rate = e.rate.map_or("-".to_string(), |r| format!("{r:.3}"));
                println!(
                    "{status} {:<24} {:<14} gap {gap:>10} rate {rate:>6} {:>8.2}s",
                    e.name, e.kind, e.runtime_seconds
                );
                for c in e.checks.iter().filter(|c| !c.pass) {
                    println!("     failed check `{}`: {:.6e} vs limit {:.3e}", c.name, c.value, c.limit);
                }
            }
            for e in summary.experiments.iter().filter(|e| !e.pass) {
                eprintln!("experiment `{}` failed", e.name);
            }
            println!("wrote {}", out.join("summary.json").display());
            ExitCode::from(summary.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            out,
            jobs,
            seed,
        } => run(&config, &out, jobs, seed),
        Command::ListExperiments => {
            println!("experiment kinds:");
            for k in ExperimentRegistry::default().kinds() {
                println!("  {:<14} {}", k.kind(), k.describe());
            }
            println!("built-in suites:");
            for e in suite::catalog() {
                println!("  {}", e.name);
            }
            ExitCode::SUCCESS
        }
    }
}
