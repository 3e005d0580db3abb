use clap::{Args, ValueEnum};

use spinor_grass::linalg::{random_matrix_with, random_skew_with, seeded_rng};
use spinor_grass::suite::{random_frame, random_isotropic_frame, DEFAULT_BOUND, MAX_SWEEP_N};

use crate::compute::print_json;
use crate::error::CliError;
use crate::Outcome;

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Entries are drawn uniformly from `[-bound, bound]`.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    /// `N × N` skew matrix.
    Skew,
    /// `N × N` matrix.
    Matrix,
    /// Rank-`N` frame in `2N` dimensions.
    Frame,
    /// Maximal isotropic frame, from either component.
    Isotropic,
}

pub fn run(args: GenerateArgs) -> Result<Outcome, CliError> {
    if args.n == 0 || args.n > MAX_SWEEP_N {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_SWEEP_N}")));
    }
    if args.bound < 1 {
        return Err(CliError::Usage("--bound must be positive".into()));
    }
    let mut rng = seeded_rng(args.seed);
    match args.kind {
        Kind::Skew => print_json(&random_skew_with(args.n, &mut rng, args.bound)),
        Kind::Matrix => print_json(&random_matrix_with(args.n, args.n, &mut rng, args.bound)),
        Kind::Frame => print_json(&random_frame(args.n, &mut rng, args.bound)),
        Kind::Isotropic => print_json(&random_isotropic_frame(args.n, &mut rng, args.bound)),
    }
    Ok(Outcome::Ok)
}
