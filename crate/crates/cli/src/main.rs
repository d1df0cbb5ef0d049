//! `spincurve`: command-line access to Bruhat cells, itineraries, strata
//! and monodromy computations. Output is JSON (default) or CSV, written to
//! stdout or `--output`.
//!
//! Exit codes: 0 success, 1 a verification reported failures, 2 invalid
//! input, 3 numerically ambiguous computation.

// `!(x > 0.0)` rejects NaN arguments as well as out-of-range ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

#[derive(Parser, Debug)]
#[command(name = "spincurve", version)]
#[command(about = "Itineraries of locally convex curves in S³ and the combinatorics of their strata")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Output format; CSV is available for tabular results only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Itinerary of a curve given by curvatures, a seed or a point of the
    /// transversal family through [bacb].
    Itinerary(commands::ItineraryArgs),
    /// Bruhat cell of a Spin4 point or an SO4 matrix.
    Classify(commands::ClassifyArgs),
    /// chop and adv of signed representatives.
    Chopadv(commands::ChopadvArgs),
    /// Scan the sphere of the transversal family through [bacb].
    ScanBacb(commands::ScanArgs),
    /// Check the refinement lemmas and the resultant identities.
    VerifyLemmas(commands::VerifyArgs),
    /// Strata of the polytope T_{μ0,μ1}, equivalences and contraction schedules.
    Enumerate(commands::EnumerateArgs),
    /// Sphere dimensions of the bouquet for an endpoint z1.
    Bouquet(commands::BouquetArgs),
    /// Normal form near η and the itinerary of the constructed curve.
    NormalForm(commands::NormalFormArgs),
    /// Classify a coefficient triple by monodromy.
    Monodromy(commands::MonodromyArgs),
    /// Print the finite tables: refinement, multiplicity, Quat4, B̃4⁺.
    Tables(commands::TablesArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = match cli.command {
        Command::Itinerary(a) => commands::itinerary_cmd(a, cli.common.format)?,
        Command::Classify(a) => commands::classify(a, cli.common.format)?,
        Command::Chopadv(a) => commands::chopadv(a, cli.common.format)?,
        Command::ScanBacb(a) => commands::scan_bacb(a, cli.common.format)?,
        Command::VerifyLemmas(a) => commands::verify_lemmas(a, cli.common.format)?,
        Command::Enumerate(a) => commands::enumerate(a, cli.common.format)?,
        Command::Bouquet(a) => commands::bouquet(a, cli.common.format)?,
        Command::NormalForm(a) => commands::normal_form(a, cli.common.format)?,
        Command::Monodromy(a) => commands::monodromy(a, cli.common.format)?,
        Command::Tables(a) => commands::tables(a, cli.common.format)?,
    };
    output::emit(&out.text, cli.common.output.as_deref())?;
    match out.failure {
        Some(msg) => Err(CliError::Failed(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
