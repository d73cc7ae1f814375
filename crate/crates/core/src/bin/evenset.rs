use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use evenset::cli::{self, Outcome, EXIT_USAGE};
use evenset::doublecover::Regularity;
use evenset::lattice::Ambient;
use evenset::search::SearchOptions;
use evenset::{catalog, config};

#[derive(Parser)]
#[command(name = "evenset", version, about = "Even sets of (-4)-curves on rational surfaces and their double covers")]
struct Args {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the curves of a config file form an even set
    Verify { path: PathBuf },
    /// Verify, then classify the double cover branched along the even set
    Classify {
        path: PathBuf,
        /// Override the `regularity` line of the file
        #[arg(long)]
        regularity: Option<Regularity>,
    },
    /// Validate, minimalize and classify the fiber sections of a config file
    Fiber {
        path: PathBuf,
        /// Check the Euler numbers of all listed fibers against c_2 = 12 or 24
        #[arg(long)]
        budget: Option<i64>,
    },
    /// Enumerate even sets with bounded coefficients
    Search {
        #[arg(long, default_value = "plane")]
        ambient: Ambient,
        #[arg(long)]
        k: usize,
        /// Bound on the absolute value of every coefficient
        #[arg(long)]
        bound: i64,
        /// Number of curves
        #[arg(long)]
        n: usize,
        /// Report every set instead of one per orbit of E_i permutations
        #[arg(long)]
        no_dedup: bool,
        /// Keep only classes of curves of positive degree meeting each E_i non-negatively
        #[arg(long)]
        strict_transforms: bool,
    },
    /// Rebuild and check catalog entries
    Catalog {
        /// Entry name, e.g. ex8_3 or sextic(3)
        name: Option<String>,
        /// Check every entry
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// List entry names and descriptions
        #[arg(long, conflicts_with_all = ["name", "all"])]
        list: bool,
        /// Print the entry as a config file instead of checking it
        #[arg(long, requires = "name")]
        export: bool,
        /// Write every selected entry as <name>.cfg into this directory
        #[arg(long)]
        export_dir: Option<PathBuf>,
    },
}

fn read(command: &str, path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| cli::io_error(command, &path.display().to_string(), e.to_string()))
}

fn emit(outcome: Outcome, json: bool) -> ExitCode {
    if json {
        print!("{}", cli::render_json(&outcome.report));
    } else {
        print!("{}", cli::render_human(&outcome.report, cli::color_from_env()));
    }
    ExitCode::from(outcome.exit as u8)
}

fn run_catalog(name: Option<String>, all: bool, list: bool, export: bool, export_dir: Option<PathBuf>, json: bool) -> ExitCode {
    if list || (name.is_none() && !all && export_dir.is_none()) {
        for (n, d) in catalog::list() {
            println!("{n:<14} {d}");
        }
        return ExitCode::SUCCESS;
    }
    if export {
        let name = name.expect("clap enforces a name");
        return match cli::catalog_export(&name) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }
    if let Some(dir) = export_dir {
        let entries = match &name {
            Some(n) => match catalog::build(n) {
                Ok(e) => vec![e],
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            },
            None => catalog::build_all(),
        };
        if let Err(e) = fs::create_dir_all(&dir) {
            eprintln!("error: {}: {e}", dir.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
        for e in &entries {
            let path = dir.join(format!("{}.cfg", e.name));
            if let Err(err) = fs::write(&path, config::export_entry(e)) {
                eprintln!("error: {}: {err}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
    }
    emit(cli::catalog(name.as_deref()), json)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let json = args.json;
    match args.command {
        Command::Verify { path } => match read("verify", &path) {
            Ok(text) => emit(cli::verify(&text, Some(&path.display().to_string())), json),
            Err(o) => emit(o, json),
        },
        Command::Classify { path, regularity } => match read("classify", &path) {
            Ok(text) => emit(cli::classify(&text, Some(&path.display().to_string()), regularity), json),
            Err(o) => emit(o, json),
        },
        Command::Fiber { path, budget } => match read("fiber", &path) {
            Ok(text) => emit(cli::fiber(&text, Some(&path.display().to_string()), budget), json),
            Err(o) => emit(o, json),
        },
        Command::Search { ambient, k, bound, n, no_dedup, strict_transforms } => {
            let mut opts = SearchOptions::new(ambient, k, bound, n);
            opts.dedup = !no_dedup;
            opts.strict_transforms = strict_transforms;
            emit(cli::search(&opts), json)
        }
        Command::Catalog { name, all, list, export, export_dir } => run_catalog(name, all, list, export, export_dir, json),
    }
}
