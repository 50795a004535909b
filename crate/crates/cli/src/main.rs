//! `covalg`: command-line front end for the covalg algorithms.
//!
//! Every command prints a JSON report on stdout and a short summary on
//! stderr. Exit status: 0 when every verdict passes, 1 when some
//! mathematical check fails, 2 on bad input, a field mismatch or an
//! exceeded cap.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use covalg::linalg::FieldSpec;

use commands::Options;
use report::Report;

#[derive(Parser)]
#[command(name = "covalg", version, about = "Coverings, flabby sheaves and strong connections, computed exactly")]
struct Cli {
    /// Require the input to be over this field.
    #[arg(long, global = true, value_enum)]
    field: Option<Field>,
    /// Override the enumeration cap on the number of covering pieces / generators.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Gf5,
    Gf7,
    Q,
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> Self {
        match f {
            Field::Gf5 => FieldSpec::gf5(),
            Field::Gf7 => FieldSpec::gf7(),
            Field::Q => FieldSpec::Rationals,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Antichains of nonempty subsets of {1..N}.
    Lattice {
        #[command(subcommand)]
        action: EnumAction,
    },
    /// Open sets of the finite projective space over {0,1}^N.
    Topology {
        #[command(subcommand)]
        action: EnumAction,
    },
    /// Check a family of algebra surjections for being a distributive covering.
    Covering {
        #[command(subcommand)]
        action: CoveringAction,
    },
    /// Glue compatible local elements of a covering.
    Crt {
        #[command(subcommand)]
        action: CrtAction,
    },
    /// Flabby sheaves of algebras.
    Sheaf {
        #[command(subcommand)]
        action: SheafAction,
    },
    /// Hopf algebras, comodule algebras and strong connections.
    Hopf {
        #[command(subcommand)]
        action: HopfAction,
    },
}

#[derive(Subcommand)]
enum EnumAction {
    Enum {
        #[arg(short = 'N')]
        n: usize,
    },
}

#[derive(Subcommand)]
enum CoveringAction {
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum CrtAction {
    Glue { file: PathBuf },
}

#[derive(Subcommand)]
enum SheafAction {
    /// Build the sheaf of a covering.
    Build { file: PathBuf },
    /// Check a sheaf file for flabbiness and the gluing axiom.
    Verify {
        file: PathBuf,
        /// Check every cover instead of covers by basic opens (N ≤ 3).
        #[arg(long)]
        all_covers: bool,
    },
    /// covering → sheaf → covering and back.
    Roundtrip { file: PathBuf },
}

#[derive(Subcommand)]
enum HopfAction {
    /// Check Hopf algebra or comodule algebra axioms.
    Verify { file: PathBuf },
    /// Solve for a strong connection.
    Principal { file: PathBuf },
    /// Glue strong connections on a fibre product of two pieces.
    Glue { file: PathBuf },
    /// Compare direct principality with the piecewise test.
    Piecewise { file: PathBuf },
}

fn run(cli: &Cli) -> covalg::Result<Report> {
    let opts = Options { field: cli.field.map(Into::into), cap: cli.cap };
    match &cli.command {
        Command::Lattice { action: EnumAction::Enum { n } } => commands::lattice_enum(*n, &opts),
        Command::Topology { action: EnumAction::Enum { n } } => commands::topology_enum(*n, &opts),
        Command::Covering { action: CoveringAction::Check { file } } => commands::covering_check_cmd(file, &opts),
        Command::Crt { action: CrtAction::Glue { file } } => commands::crt_glue_cmd(file, &opts),
        Command::Sheaf { action } => match action {
            SheafAction::Build { file } => commands::sheaf_build(file, &opts),
            SheafAction::Verify { file, all_covers } => commands::sheaf_verify(file, *all_covers, &opts),
            SheafAction::Roundtrip { file } => commands::sheaf_roundtrip(file, &opts),
        },
        Command::Hopf { action } => match action {
            HopfAction::Verify { file } => commands::hopf_verify(file, &opts),
            HopfAction::Principal { file } => commands::hopf_principal(file, &opts),
            HopfAction::Glue { file } => commands::hopf_glue(file, &opts),
            HopfAction::Piecewise { file } => commands::hopf_piecewise(file, &opts),
        },
    }
}

fn input_file(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Lattice { .. } | Command::Topology { .. } => None,
        Command::Covering { action: CoveringAction::Check { file } } | Command::Crt { action: CrtAction::Glue { file } } => {
            Some(file)
        }
        Command::Sheaf {
            action: SheafAction::Build { file } | SheafAction::Verify { file, .. } | SheafAction::Roundtrip { file },
        } => Some(file),
        Command::Hopf {
            action:
                HopfAction::Verify { file }
                | HopfAction::Principal { file }
                | HopfAction::Glue { file }
                | HopfAction::Piecewise { file },
        } => Some(file),
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match &cli.command {
        Command::Lattice { .. } => "lattice enum",
        Command::Topology { .. } => "topology enum",
        Command::Covering { .. } => "covering check",
        Command::Crt { .. } => "crt glue",
        Command::Sheaf { action } => match action {
            SheafAction::Build { .. } => "sheaf build",
            SheafAction::Verify { .. } => "sheaf verify",
            SheafAction::Roundtrip { .. } => "sheaf roundtrip",
        },
        Command::Hopf { action } => match action {
            HopfAction::Verify { .. } => "hopf verify",
            HopfAction::Principal { .. } => "hopf principal",
            HopfAction::Glue { .. } => "hopf glue",
            HopfAction::Piecewise { .. } => "hopf piecewise",
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (mut report, code) = match run(&cli) {
        Ok(r) => {
            let code = if r.all_pass() { 0 } else { 1 };
            (r, code)
        }
        Err(e) => {
            let bytes = input_file(&cli).and_then(|f| std::fs::read(f).ok()).unwrap_or_default();
            let mut r = Report::new(command_name(&cli), &bytes);
            r.error = Some(e.to_string());
            (r, 2)
        }
    };
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    match covalg::io::to_json_pretty(&report) {
        Ok(s) => print!("{s}"),
        Err(e) => {
            eprintln!("cannot serialize report: {e}");
            return ExitCode::from(2);
        }
    }
    eprint!("{}", report.summary());
    ExitCode::from(code)
}
