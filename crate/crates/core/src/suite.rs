//! Seeded randomized sweeps over the identity checks.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::grassmann::{big_cell_frame, plucker_coordinates, Frame};
use crate::identities::{
    cartan_relation_report, check_cartan_quadrics, check_main_theorem, check_plucker_relations,
    check_wedge_power_replay, giambelli_report, CauchyBinetPfaffian, CheckReport,
};
use crate::indexset::IndexSet;
use crate::linalg::{derive_seed, random_matrix_with, random_skew_with, seeded_rng, Matrix};
use crate::grassmann::cartan_big_cell;
use crate::partition::{Partition, StrictPartition};

/// Default entry bound for random instances.
pub const DEFAULT_BOUND: i64 = 9;

/// Largest `N` accepted by the sweeps; the exterior algebra has `4^N` basis elements.
pub const MAX_SWEEP_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    CauchyBinet,
    MainTheorem,
    CartanRelations,
    PluckerRelations,
    Giambelli,
    Quadrics,
    WedgeReplay,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::CauchyBinet,
        Suite::MainTheorem,
        Suite::CartanRelations,
        Suite::PluckerRelations,
        Suite::Giambelli,
        Suite::Quadrics,
        Suite::WedgeReplay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CauchyBinet => "cauchy-binet",
            Suite::MainTheorem => "main-theorem",
            Suite::CartanRelations => "cartan-relations",
            Suite::PluckerRelations => "plucker-relations",
            Suite::Giambelli => "giambelli",
            Suite::Quadrics => "quadrics",
            Suite::WedgeReplay => "wedge-replay",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Checks run in one trial. Only the first failure is kept.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub checks: usize,
    pub failed: usize,
    pub first_failure: Option<CheckReport>,
}

impl TrialOutcome {
    fn record(&mut self, report: CheckReport) {
        self.checks += 1;
        if !report.passed {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(report);
            }
        }
    }

    fn merge(&mut self, other: TrialOutcome) {
        self.checks += other.checks;
        self.failed += other.failed;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub failed: usize,
    pub first_failure: Option<CheckReport>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Folds per-trial outcomes, given in trial order.
    pub fn collect(suite: Suite, n: usize, seed: u64, outcomes: Vec<TrialOutcome>) -> SuiteSummary {
        let trials = outcomes.len();
        let mut total = TrialOutcome::default();
        for o in outcomes {
            total.merge(o);
        }
        SuiteSummary {
            suite: suite.name().into(),
            n,
            trials,
            seed,
            checks: total.checks,
            failed: total.failed,
            first_failure: total.first_failure,
        }
    }
}

/// A random isotropic frame: a big-cell point moved by a random
/// `e_i ↔ f_i` swap (reaching both components) and rebased by a random
/// invertible matrix.
pub fn random_isotropic_frame(n: usize, rng: &mut impl Rng, bound: i64) -> Frame {
    let a = random_skew_with(n, rng, bound);
    let swap = IndexSet::from_bits(n, rng.random::<u64>() & ((1u64 << n) - 1)).expect("fits");
    let frame = big_cell_frame(&a).swap_rows(&swap).expect("same ambient");
    let g = random_invertible(n, rng, bound);
    frame.rebased(&g).expect("rank preserved")
}

pub fn random_invertible(n: usize, rng: &mut impl Rng, bound: i64) -> Matrix {
    loop {
        let g = random_matrix_with(n, n, rng, bound);
        if g.rank() == n {
            return g;
        }
    }
}

/// A random frame of rank `N` in `C^{2N}`, not necessarily isotropic.
pub fn random_frame(n: usize, rng: &mut impl Rng, bound: i64) -> Frame {
    loop {
        if let Ok(f) = Frame::new(n, random_matrix_with(2 * n, n, rng, bound)) {
            return f;
        }
    }
}

fn tag(report: CheckReport, seed: u64, trial: usize) -> CheckReport {
    report.with("seed", seed).with("trial", trial)
}

/// Runs trial `trial` of `suite`; its instances come from `derive_seed(seed, trial)`.
pub fn run_trial(suite: Suite, n: usize, seed: u64, trial: usize, bound: i64) -> Result<TrialOutcome> {
    if n == 0 || n > MAX_SWEEP_N {
        return Err(Error::SizeOutOfRange { n, max: MAX_SWEEP_N });
    }
    let trial_seed = derive_seed(seed, trial as u64);
    let mut rng = seeded_rng(trial_seed);
    let mut out = TrialOutcome::default();
    match suite {
        Suite::CauchyBinet => {
            let a = random_skew_with(n, &mut rng, bound);
            let cb = CauchyBinetPfaffian::new(&a);
            for r in 0..=n {
                let sets = IndexSet::subsets_of_size(n, r);
                for i in &sets {
                    for j in &sets {
                        out.record(tag(cb.check(i, j)?, seed, trial));
                    }
                }
            }
            for i in IndexSet::all_subsets(n) {
                for j in IndexSet::all_subsets(n) {
                    if i.len() != j.len() && (i.len() + j.len()) % 2 == 0 {
                        out.record(tag(cb.check_null(&i, &j)?, seed, trial));
                    }
                }
            }
        }
        Suite::MainTheorem | Suite::Quadrics => {
            let mut frames = vec![random_isotropic_frame(n, &mut rng, bound)];
            if trial == 0 {
                frames.push(Frame::canonical_v(n));
                frames.push(Frame::canonical_odd(n));
            }
            for f in &frames {
                let report = if suite == Suite::MainTheorem { check_main_theorem(f)? } else { check_cartan_quadrics(f)? };
                out.record(tag(report.with("frame", json!(f)), seed, trial));
            }
        }
        Suite::CartanRelations => {
            let a = random_skew_with(n, &mut rng, bound);
            let kappa = cartan_big_cell(&a);
            let labels = StrictPartition::all_in_range(n);
            for alpha in &labels {
                for beta in &labels {
                    out.record(tag(cartan_relation_report(&kappa, alpha, beta)?, seed, trial));
                }
            }
        }
        Suite::PluckerRelations => {
            let f = random_frame(n, &mut rng, bound);
            out.record(tag(check_plucker_relations(&f)?.with("frame", json!(f)), seed, trial));
        }
        Suite::Giambelli => {
            let f = Frame::big_cell(&random_matrix_with(n, n, &mut rng, bound))?;
            let pl = plucker_coordinates(&f);
            for lambda in Partition::box_partitions(n) {
                out.record(tag(giambelli_report(&pl, &lambda)?, seed, trial));
            }
        }
        Suite::WedgeReplay => {
            let a = random_skew_with(n, &mut rng, bound);
            for r in 1..=n {
                out.record(tag(check_wedge_power_replay(&a, r)?, seed, trial));
            }
        }
    }
    Ok(out)
}

/// Runs every trial sequentially.
pub fn run_suite(suite: Suite, n: usize, trials: usize, seed: u64, bound: i64) -> Result<SuiteSummary> {
    let outcomes = (0..trials).map(|t| run_trial(suite, n, seed, t, bound)).collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::collect(suite, n, seed, outcomes))
}
