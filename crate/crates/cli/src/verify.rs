use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use spinor_grass::suite::{run_trial, Suite, SuiteSummary, DEFAULT_BOUND, MAX_SWEEP_N};

use crate::error::CliError;
use crate::Outcome;

pub const THREADS_ENV: &str = "SPINOR_GRASS_THREADS";

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Which::All)]
    which: Which,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: i64,
    /// Also write the report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    CauchyBinet,
    MainTheorem,
    CartanRelations,
    PluckerRelations,
    Giambelli,
    Quadrics,
    WedgeReplay,
    All,
}

impl Which {
    fn suites(self) -> Vec<Suite> {
        match self {
            Which::CauchyBinet => vec![Suite::CauchyBinet],
            Which::MainTheorem => vec![Suite::MainTheorem],
            Which::CartanRelations => vec![Suite::CartanRelations],
            Which::PluckerRelations => vec![Suite::PluckerRelations],
            Which::Giambelli => vec![Suite::Giambelli],
            Which::Quadrics => vec![Suite::Quadrics],
            Which::WedgeReplay => vec![Suite::WedgeReplay],
            Which::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Serialize)]
struct Report {
    n: usize,
    trials: usize,
    seed: u64,
    bound: i64,
    passed: bool,
    suites: Vec<SuiteSummary>,
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let threads: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

pub fn run(args: VerifyArgs) -> Result<Outcome, CliError> {
    if args.n == 0 || args.n > MAX_SWEEP_N {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_SWEEP_N}")));
    }
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if args.bound < 1 {
        return Err(CliError::Usage("--bound must be positive".into()));
    }
    let pool = thread_pool()?;
    let mut suites = Vec::new();
    for suite in args.which.suites() {
        // Trials run in parallel; collecting an indexed iterator keeps trial order.
        let outcomes = pool.install(|| {
            (0..args.trials)
                .into_par_iter()
                .map(|t| run_trial(suite, args.n, args.seed, t, args.bound))
                .collect::<Result<Vec<_>, _>>()
        })?;
        suites.push(SuiteSummary::collect(suite, args.n, args.seed, outcomes));
    }
    let passed = suites.iter().all(SuiteSummary::passed);
    let report = Report { n: args.n, trials: args.trials, seed: args.seed, bound: args.bound, passed, suites };
    let text = serde_json::to_string_pretty(&report).expect("serializable");
    crate::compute::print_text(&text);
    if let Some(path) = &args.output {
        std::fs::write(path, format!("{text}\n")).map_err(|source| CliError::Write { path: path.clone(), source })?;
    }
    Ok(if passed { Outcome::Ok } else { Outcome::Counterexample })
}
