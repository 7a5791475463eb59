//! `brauer`: blocks, projective characters and Brauer trees from character
//! tables, plus the table workbench searches.
//!
//! Exit status: 0 on success, 1 on parse or validation failure, 2 when a
//! block admits no tree.

mod commands;
mod load;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use brauer_core::brauertree::{InvolutionChoice, TreeOptions};
use brauer_core::projective::DEFAULT_BUDGET;
use clap::{Parser, Subcommand, ValueEnum};

use commands::{Outcome, TreesArgs};
use load::{LoadError, Loader};

/// Overrides the directory DOT files are written to.
const OUT_DIR_ENV: &str = "BRAUER_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "brauer",
    version,
    about = "Blocks and Brauer trees from ordinary character tables"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Load tables that fail validation.
    #[arg(long, global = true)]
    force: bool,
    /// Extra table file, to resolve names used in fusion files.
    #[arg(long = "with-table", global = true, value_name = "FILE")]
    with_table: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Involution {
    Auto,
    Conj,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Check orthogonality, class arithmetic and power maps.
    Validate { table: String },
    /// ℓ-blocks, defects and cyclic status.
    Blocks {
        table: String,
        ell: u64,
        /// Use the j-th power of the default root-of-unity image.
        #[arg(long, value_name = "J")]
        alternative: Option<u64>,
    },
    /// The projective pool: defect-zero seeds, the regular character,
    /// subgroup inductions and tensor products.
    Projectives {
        table: String,
        ell: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Subgroup fusion file, or the name of a bundled subgroup table.
        #[arg(long, value_name = "FUSION")]
        subgroup: Vec<String>,
    },
    /// Brauer trees of all blocks with nontrivial cyclic defect.
    Trees {
        table: String,
        ell: u64,
        #[arg(long = "pool-budget", default_value_t = DEFAULT_BUDGET)]
        pool_budget: usize,
        #[arg(long, value_name = "FUSION")]
        subgroup: Vec<String>,
        /// Compare with exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "auto")]
        involution: Involution,
        /// Directory for DOT files (overridden by BRAUER_OUT_DIR).
        #[arg(long = "out-dir", value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
    /// Class fusions of a central quotient `source → target`.
    Fusions {
        source: String,
        target: String,
        /// Source irreducible constant on fibres (1-based).
        #[arg(long)]
        probe: Vec<usize>,
        /// `I:J`: source irreducible I is the lift of target irreducible J.
        #[arg(long, value_parser = parse_pair)]
        pair: Vec<(usize, usize)>,
    },
    /// Candidate p-th power maps compatible with the irreducibles.
    Powermaps {
        table: String,
        p: u64,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// LLL reduction of the tensor products of the irreducibles.
    Lll {
        table: String,
        #[arg(long, default_value = "3/4")]
        delta: String,
    },
    /// Table automorphisms.
    Tableauts { table: String },
    /// Signed sums of missing degrees equal to a given degree.
    Degmatch {
        #[arg(allow_hyphen_values = true)]
        degree: i128,
        norm: usize,
        #[arg(required = true)]
        missing: Vec<u64>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected I:J")?;
    Ok((
        a.parse().map_err(|_| format!("bad index {a}"))?,
        b.parse().map_err(|_| format!("bad index {b}"))?,
    ))
}

fn run(cli: Cli) -> Result<Outcome, LoadError> {
    let loader = Loader::new(cli.force, &cli.with_table)?;
    match cli.command {
        Command::Validate { table } => Ok(commands::validate(&Loader::table_unchecked(&table)?)),
        Command::Blocks {
            table,
            ell,
            alternative,
        } => commands::blocks(&loader.table(&table)?, ell, alternative),
        Command::Projectives {
            table,
            ell,
            budget,
            subgroup,
        } => {
            let t = loader.table(&table)?;
            let subs = subgroup
                .iter()
                .map(|s| loader.subgroup(s, &t))
                .collect::<Result<Vec<_>, _>>()?;
            commands::projectives(&t, ell, budget, &subs)
        }
        Command::Trees {
            table,
            ell,
            pool_budget,
            subgroup,
            oracle,
            involution,
            out_dir,
        } => {
            let t = loader.table(&table)?;
            let subgroups = subgroup
                .iter()
                .map(|s| loader.subgroup(s, &t))
                .collect::<Result<Vec<_>, _>>()?;
            let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).or(out_dir);
            let args = TreesArgs {
                options: TreeOptions {
                    pool_budget,
                    subgroups,
                    involution: match involution {
                        Involution::Auto => InvolutionChoice::Auto,
                        Involution::Conj => InvolutionChoice::Conjugation,
                        Involution::Off => InvolutionChoice::Off,
                    },
                },
                oracle,
                out_dir,
            };
            commands::trees(&t, ell, &args)
        }
        Command::Fusions {
            source,
            target,
            probe,
            pair,
        } => commands::fusions(
            &loader.table(&source)?,
            &loader.table(&target)?,
            &probe,
            &pair,
        ),
        Command::Powermaps { table, p, limit } => {
            commands::powermaps(&loader.table(&table)?, p, limit)
        }
        Command::Lll { table, delta } => commands::lll(&loader.table(&table)?, &delta),
        Command::Tableauts { table } => Ok(commands::tableauts(&loader.table(&table)?)),
        Command::Degmatch {
            degree,
            norm,
            missing,
        } => commands::degmatch(degree, norm, &missing),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if json {
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                )
            } else {
                stdout.write_all(out.text.as_bytes())
            };
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
