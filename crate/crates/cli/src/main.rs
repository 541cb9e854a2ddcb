//! `gridcat`: command-line front end for grid-catalan.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use grid_catalan::Shape;

/// Interior-vertex cap for commands that build a whole lattice or complex.
const FULL_CAP: usize = 8;
/// Interior-vertex cap for congruence enumeration.
const CONGRUENCE_CAP: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "gridcat", version, about = "Grid-Catalan combinatorics of grid shapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// `rect:KxM` or `@file.json`.
    #[arg(long, global = true, default_value = "rect:2x3")]
    shape: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random points sampled by `fan-check`.
    #[arg(long, global = true, default_value_t = 1000)]
    points: usize,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Lower the interior-vertex cap (raising it needs `--unsafe`).
    #[arg(long, global = true)]
    cap_interior: Option<usize>,
    /// Disable size caps.
    #[arg(long = "unsafe", global = true)]
    no_caps: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Facets of the reduced nonkissing complex with f- and h-vectors.
    Facets,
    /// Hasse diagram of the Grid-Tamari lattice.
    Tamari,
    /// The F-, H- and M-triangles.
    Triangles,
    /// Check the F=H identity.
    VerifyFh,
    /// Check the F=M identity.
    VerifyFm,
    /// Rays, facet inequalities and shards of the g-vector fan.
    Shards,
    /// Locate random rational points in the fan.
    FanCheck,
    /// Standard Young tableaux, descents and the H' triangle.
    Tableaux,
    /// Congruences of the Grid-Tamari lattice.
    Congruences,
    /// The lattice of wide sets.
    Wide,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Dot,
}

/// Bad input or an exceeded cap; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn load_shape(source: &str) -> anyhow::Result<Shape> {
    let parsed = match source.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
            Shape::from_json(&text)
        }
        None => Shape::from_spec(source),
    };
    parsed.map_err(|e| usage(e.to_string()))
}

fn check_caps(cli: &Cli, shape: &Shape) -> anyhow::Result<()> {
    let default = if cli.command == Command::Congruences { CONGRUENCE_CAP } else { FULL_CAP };
    let cap = match (cli.cap_interior, cli.no_caps) {
        (_, true) => return Ok(()),
        (Some(c), false) if c > default => {
            return Err(usage(format!("--cap-interior {c} exceeds the default {default}; add --unsafe")))
        }
        (Some(c), false) => c,
        (None, false) => default,
    };
    let n = shape.num_interior();
    if n > cap {
        return Err(usage(format!("shape has {n} interior vertices, cap is {cap} (use --unsafe to override)")));
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<commands::Report> {
    let shape = load_shape(&cli.shape)?;
    check_caps(cli, &shape)?;
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("building the thread pool")?;
    }
    let report = match cli.command {
        Command::Facets => commands::facets(&shape)?,
        Command::Tamari => commands::tamari(&shape)?,
        Command::Triangles => commands::triangles(&shape)?,
        Command::VerifyFh => commands::verify(&shape, commands::Identity::FH)?,
        Command::VerifyFm => commands::verify(&shape, commands::Identity::FM)?,
        Command::Shards => commands::shards(&shape)?,
        Command::FanCheck => commands::fan_check(&shape, cli.points, cli.seed)?,
        Command::Tableaux => commands::tableaux(&shape)?,
        Command::Congruences => commands::congruences(&shape)?,
        Command::Wide => commands::wide(&shape)?,
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gridcat: {e:#}");
            return ExitCode::from(if e.is::<UsageError>() { 2 } else { 1 });
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values serialize") + "\n",
        Format::Text => report.text,
        Format::Dot => match report.dot {
            Some(dot) => dot,
            None => {
                eprintln!("gridcat: --format dot is only available for tamari and wide");
                return ExitCode::from(2);
            }
        },
    };
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = out.write_all(body.as_bytes());
    let _ = out.flush();
    if report.refuted {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
