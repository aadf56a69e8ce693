use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use paradox_cli::{analyze, classify_tree, cohomology, compare, gallery, CliError, Format, Report};
use paradox_core::limits::Limits;

/// Sheaf-theoretic analysis of impossible figures.
#[derive(Parser)]
#[command(name = "paradox", version)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value = "human")]
    format: Format,
    /// Bound for every brute-force search.
    #[arg(long, global = true)]
    max_search: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Holonomy, triviality and class invariants of one spec.
    Analyze {
        spec: PathBuf,
        /// Vertex id used as the base of the spanning tree.
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Isomorphism and fiber equivalence of two specs.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Homomorphisms or graph maps to check instead of searching.
        #[arg(long)]
        morphism: Option<PathBuf>,
    },
    /// H0 and H1 of an abelian sheaf.
    Cohomology { spec: PathBuf },
    /// Orbits of boundary data on a tree under its automorphisms.
    ClassifyTree { spec: PathBuf },
    /// Run the built-in examples.
    Gallery {
        #[arg(long)]
        only: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let limits = cli.max_search.map_or_else(Limits::default, Limits::with_search_bound);
    match &cli.command {
        Command::Analyze { spec, basepoint } => analyze(spec, basepoint.as_deref()),
        Command::Compare { a, b, morphism } => compare(a, b, morphism.as_deref(), &limits),
        Command::Cohomology { spec } => cohomology(spec),
        Command::ClassifyTree { spec } => classify_tree(spec, &limits),
        Command::Gallery { only } => gallery(only.as_deref(), &limits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut text = report.render(cli.format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // A closed pipe is not an analysis failure.
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
