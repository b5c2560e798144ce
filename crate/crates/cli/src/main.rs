//! `chyp`: classify SU(2,1) matrices, report on symmetric groups and write
//! the datasets behind the figures.

mod commands;
mod config;
mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use commands::FIGURE_SLICES;
use config::{Format, Opts};
use output::{write_report, write_table, Table};

#[derive(Debug, Parser)]
#[command(name = "chyp", version, about = "Parabolic SU(2,1) representations and (3,3,inf) groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a matrix given as JSON [re, im] pairs (3x3 nested or 9 flat).
    Classify {
        /// The matrix as a JSON string.
        #[arg(long, conflicts_with = "input")]
        matrix: Option<String>,
        /// File holding the JSON matrix; standard input when neither is given.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Invariants of the normal-form tetrahedron (θ, φ, ψ, r).
    Tetra,
    /// Representation built from the balanced tetrahedron (θ, φ, ψ).
    Rep,
    /// Report on the symmetric group ⟨J1, J2⟩ at (θ, φ, ψ).
    Group33,
    /// Uniform samples of the deltoid.
    Deltoid,
    /// f(tr J1J2^-1) and f(tr[J1,J2]) on a grid over the full parameter box.
    Surface,
    /// The same two fields on horizontal slices ψ = const.
    Slices,
    /// Sampled super-pinching locus with reconstructed parameters.
    Superpinch,
    /// f(tr J1J2^-1) along the special families, with bisected thresholds.
    Family,
    /// Quick run of the core identity checks.
    Selftest,
}

enum Output {
    Report(serde_json::Value),
    Table(Table),
}

fn run(cli: Cli) -> Result<usize> {
    let mut opts = cli.opts;
    opts.merge_config()?;
    let tol = opts.tolerances()?;
    let report_format = opts.format.unwrap_or(Format::Json);
    let table_format = opts.format.unwrap_or(Format::Csv);

    let out = match cli.command {
        Command::Classify { matrix, input } => {
            let text = match (matrix, input) {
                (Some(m), _) => m,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?,
                (None, None) => {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            Output::Report(commands::cmd_classify(&text, &tol)?)
        }
        Command::Tetra => {
            let (t, p, s) = opts.angles()?;
            Output::Report(commands::cmd_tetra(t, p, s, opts.r.unwrap_or(1.0), &tol)?)
        }
        Command::Rep => Output::Report(commands::cmd_rep(opts.angles()?, opts.lambda_a, opts.lambda_b, &tol)?),
        Command::Group33 => {
            let (t, p, s) = opts.angles()?;
            Output::Report(commands::cmd_group33(t, p, s, &tol)?)
        }
        Command::Deltoid => Output::Table(commands::cmd_deltoid(opts.samples_or(721)?)),
        Command::Surface => Output::Table(commands::cmd_surface(opts.resolution_or(41)?)?),
        Command::Slices => {
            let psis = if opts.psi_slice.is_empty() { FIGURE_SLICES.to_vec() } else { opts.psi_slice.clone() };
            Output::Table(commands::cmd_slices(&psis, opts.resolution_or(400)?)?)
        }
        Command::Superpinch => Output::Table(commands::cmd_superpinch(opts.samples_or(101)?, &tol)?),
        Command::Family => {
            let kinds = commands::parse_kinds(opts.kind.as_deref())?;
            Output::Table(commands::cmd_family(&kinds, opts.resolution_or(64)?, &tol)?)
        }
        Command::Selftest => Output::Table(commands::cmd_selftest(opts.seed.unwrap_or(0), &tol)?),
    };

    let path = opts.out.as_deref();
    match out {
        Output::Report(v) => {
            write_report(&v, report_format, path)?;
            Ok(0)
        }
        Output::Table(t) => {
            write_table(&t, table_format, path)?;
            Ok(t.flagged())
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(|e| {
                matches!(e.kind(), csv::ErrorKind::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe)
            })
            || c.downcast_ref::<serde_json::Error>().and_then(|e| e.io_error_kind())
                == Some(std::io::ErrorKind::BrokenPipe)
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(flagged) => {
            eprintln!("{flagged} row(s) flagged");
            ExitCode::from(flagged.clamp(1, 254) as u8)
        }
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(255)
        }
    }
}
