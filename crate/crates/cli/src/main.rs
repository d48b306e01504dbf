//! `champ`: batch front end. Every command reads JSON, writes one JSON
//! report and exits 0 (positive), 1 (negative), 2 (bad input) or
//! 3 (inconclusive within the rewriting bound).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Report, Verdict, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "champ", version, about = "Finite categories, sites, descent and stackification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation level for nerves and filtrations.
    #[arg(long, global = true, default_value_t = 2)]
    pub trunc: usize,
    /// Longest word the rewriting completion may create.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_word_len: usize,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Descent)]
    pub mode: Mode,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Descent,
    Lax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Category,
    Sset,
    Site,
    Presheaf,
    CatPresheaf,
    Pseudo,
    Reedy,
    Cosimplicial,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse an input and check its axioms.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Category)]
        kind: Kind,
    },
    /// Nerve of a category, truncated at --trunc.
    Nerve {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Segal maps of a truncated simplicial set.
    SegalCheck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Fundamental category of a truncated simplicial set.
    Tau1 {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Last-vertex certificate for the subdivision of a finite poset.
    Subdivide {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Čech resolution of a covering family.
    CechResolution {
        #[arg(long)]
        site: PathBuf,
        /// Comma-separated morphism ids with a common target.
        #[arg(long)]
        cover: String,
    },
    /// Reedy axioms and the regular filtration up to --trunc.
    Reedy {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Total category of a presheaf of categories.
    Grothendieck {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Sections (eq-sections with --mode descent, all with --mode lax).
    Sections {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Strict replacement of a pseudofunctor.
    Strictify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Sheafification of a presheaf of sets.
    Sheafify {
        #[arg(long)]
        site: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
    },
    /// Topology axioms of a site.
    CheckSite {
        #[arg(long)]
        site: PathBuf,
    },
    /// Descent category of a presheaf of groupoids along a cover.
    Descent {
        #[arg(long)]
        site: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
        #[arg(long)]
        cover: String,
    },
    /// Truncated totalization, of a cosimplicial input or of the Čech
    /// diagram of a single arrow.
    Holim {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        site: Option<PathBuf>,
        #[arg(long)]
        presheaf: Option<PathBuf>,
        #[arg(long)]
        cover: Option<String>,
    },
    /// Stack condition for a presheaf of groupoids.
    CheckStack {
        #[arg(long)]
        site: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
    },
    /// Associated stack of a presheaf of groupoids.
    Stackify {
        #[arg(long)]
        site: PathBuf,
        #[arg(long)]
        presheaf: PathBuf,
    },
    /// Print a built-in example as an input document; `list` names them all.
    Export { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Export { name } = &cli.command {
        if name == "list" {
            emit(&commands::export_names().iter().map(|n| format!("{n}\n")).collect::<String>());
            return ExitCode::SUCCESS;
        }
        return match commands::export(name) {
            Some(text) => {
                emit(&format!("{text}\n"));
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("unknown example `{name}`; known: {}", commands::export_names().join(", "));
                ExitCode::from(2)
            }
        };
    }
    let start = Instant::now();
    let mut ctx = commands::Context::new(&cli);
    let outcome = commands::run(&cli, &mut ctx);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let (verdict, message, result) = match outcome {
        Ok(o) => (if o.positive { Verdict::Positive } else { Verdict::Negative }, o.message, o.result),
        Err(commands::CliError::Input(m)) => (Verdict::InputError, m, serde_json::Value::Null),
        Err(commands::CliError::Inconclusive(m)) => (Verdict::Inconclusive, m, serde_json::Value::Null),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: ctx.command.clone(),
        inputs_digest: ctx.digest(),
        verdict,
        message,
        result,
        timings_ms: cli.timings.then(|| [("total".to_string(), elapsed)].into_iter().collect()),
    };
    let text = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => emit(&text),
    }
    ExitCode::from(verdict.exit_code() as u8)
}

/// Writes to stdout, treating a closed pipe as a normal end.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
