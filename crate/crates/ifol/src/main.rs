use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ifol::render::render_document;
use ifol::{load_file, run_queries, LoadError, RunOptions};
use ifol_core::concepts::subconcept_tree;
use ifol_core::semantics::DEFAULT_WORLD_CAP;

/// Many-sorted intensional first-order logic over finite domains.
#[derive(Parser)]
#[command(name = "ifol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a workspace and run its queries.
    Run {
        file: PathBuf,
        /// Worker threads for per-world evaluation.
        #[arg(long)]
        threads: Option<usize>,
        /// Refuse workspaces with more candidate worlds than this.
        #[arg(long, default_value_t = DEFAULT_WORLD_CAP)]
        max_worlds: u128,
    },
    /// Load and sort-check a workspace without evaluating anything.
    Check { file: PathBuf },
    /// Print the canonical subconcept tree of a predicate.
    Concepts { file: PathBuf, predicate: String },
    /// Print the loaded workspace back as text.
    Render { file: PathBuf },
}

fn load(file: &Path) -> Result<ifol::Document, ExitCode> {
    load_file(file).map_err(|e| {
        match &e {
            LoadError::Io { .. } => eprintln!("error: {e}"),
            LoadError::Invalid(ds) => {
                for d in ds {
                    eprintln!("{}:{d}", file.display());
                }
            }
        }
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Run {
            file,
            threads,
            max_worlds,
        } => {
            let doc = match load(&file) {
                Ok(d) => d,
                Err(code) => return code,
            };
            let report = run_queries(&doc, &RunOptions { threads, max_worlds });
            let _ = stdout.write_all(report.text.as_bytes());
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Check { file } => match load(&file) {
            Ok(doc) => {
                let _ = writeln!(
                    stdout,
                    "OK {} axioms, {} queries",
                    doc.axioms.len(),
                    doc.queries.len()
                );
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Concepts { file, predicate } => {
            let doc = match load(&file) {
                Ok(d) => d,
                Err(code) => return code,
            };
            match subconcept_tree(&doc.workspace, &predicate) {
                Ok(tree) => {
                    let _ = stdout.write_all(tree.render().as_bytes());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Render { file } => match load(&file) {
            Ok(doc) => {
                let _ = stdout.write_all(render_document(&doc).as_bytes());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
    };
    let _ = stdout.flush();
    result
}
