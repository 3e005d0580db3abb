use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use spinor_grass::grassmann::{cartan_big_cell, cartan_coordinates, plucker_coordinate, plucker_coordinates, Frame, Labelled};
use spinor_grass::indexset::{delta_bracket, DeltaMode};
use spinor_grass::partition::Partition;
use spinor_grass::{pfaffian, rational, IndexSet, SkewMatrix};

use crate::error::CliError;
use crate::Outcome;

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(subcommand)]
    kind: ComputeKind,
}

#[derive(Subcommand, Debug)]
enum ComputeKind {
    /// Pfaffian of a skew matrix given as matrix JSON (`-` reads stdin).
    Pfaffian { input: PathBuf },
    /// Plücker coordinates of a frame, all of them or one.
    Plucker {
        #[arg(long)]
        frame: PathBuf,
        /// Comma-separated parts, e.g. `2,1`; empty string for the empty partition.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Cartan coordinates of an isotropic frame or of the big-cell point `[1; A]`.
    Cartan {
        #[arg(long, conflicts_with = "frame", required_unless_present = "frame")]
        affine: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// `Δ_(IJ|KL)`; sets are comma-separated elements of `1..=N`.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Closed,
    Oracle,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

/// Pretty JSON on stdout. A closed pipe is not an error worth reporting.
pub fn print_json(value: &impl serde::Serialize) {
    print_text(&serde_json::to_string_pretty(value).expect("serializable"));
}

pub fn print_text(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn parse_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| CliError::Usage(format!("`{p}` is not a non-negative integer"))))
        .collect()
}

pub fn run(args: ComputeArgs) -> Result<Outcome, CliError> {
    match args.kind {
        ComputeKind::Pfaffian { input } => {
            let a: SkewMatrix = read_json(&input)?;
            print_json(&rational::format(&pfaffian(&a)));
        }
        ComputeKind::Plucker { frame, partition } => {
            let frame: Frame = read_json(&frame)?;
            match partition {
                Some(p) => {
                    let lambda = Partition::new(parse_list(&p)?)?;
                    let value = plucker_coordinate(&frame, &lambda)?;
                    print_json(&[Labelled { label: lambda, value }]);
                }
                None => print_json(&plucker_coordinates(&frame)),
            }
        }
        ComputeKind::Cartan { affine, frame } => {
            let coords = match (affine, frame) {
                (Some(path), _) => cartan_big_cell(&read_json::<SkewMatrix>(&path)?),
                (None, Some(path)) => cartan_coordinates(&read_json::<Frame>(&path)?)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            print_json(&json!({
                "n": coords.n(),
                "component": coords.component_label().to_string(),
                "coords": coords,
            }));
        }
        ComputeKind::Delta { n, i, j, k, l, mode } => {
            let set = |s: &str| -> Result<IndexSet, CliError> { Ok(IndexSet::new(n, parse_list(s)?)?) };
            let mode = match mode {
                Mode::Closed => DeltaMode::Closed,
                Mode::Oracle => DeltaMode::Oracle,
            };
            let value = delta_bracket(&set(&i)?, &set(&j)?, &set(&k)?, &set(&l)?, mode)?;
            print_json(&rational::format(&value));
        }
    }
    Ok(Outcome::Ok)
}
