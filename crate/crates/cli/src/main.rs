use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use liebialg::linalg::parse_q;
use liebialg::report::{self, AmbientSpec, ReferenceSpec, RootSelection, RunConfig, DEFAULT_WINDOW};
use liebialg::triples::DEFAULT_SIZE_BOUND;
use liebialg::{CartanLabel, LieError, Orientation, Setting, TheoremId, Q};

#[derive(Parser)]
#[command(name = "liebialg", version, about = "Exact checks of Lie bialgebra reductions on g[u]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the quotient maps over a grid of algebras, roots and theorems.
    Verify {
        /// Comma-separated Cartan labels; defaults to A1,A2,A3,B2,C3,D4,G2.
        #[arg(long = "algebra", value_delimiter = ',')]
        algebras: Vec<CartanLabel>,
        /// `all` or comma-separated 1-based simple root indices.
        #[arg(long, default_value = "all")]
        roots: String,
        #[arg(long, value_delimiter = ',', default_value = "A1,A2,A3,B1,B2,C1")]
        theorems: Vec<TheoremId>,
        #[arg(long, value_parser = rational, default_value = "1")]
        c1: Q,
        #[arg(long, value_parser = rational, default_value = "2")]
        c2: Q,
        /// Truncation window N.
        #[arg(long, env = "LIEBIALG_WINDOW", default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List admissible and typed triples for a simple root.
    Triples {
        #[arg(long)]
        algebra: CartanLabel,
        /// 1-based simple root index.
        #[arg(long)]
        alpha: usize,
        #[arg(long, default_value = "simple")]
        setting: Setting,
        #[arg(long, default_value = "untwisted")]
        orientation: Orientation,
        /// Largest number of candidate bijections to examine.
        #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
        bound: u128,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a subspace given as JSON against the Lagrangian subalgebra predicates.
    Check {
        file: PathBuf,
        /// KIND:LABEL[:alpha], e.g. GxG:A1 or LAlphaxG:G2:2.
        #[arg(long)]
        ambient: AmbientSpec,
        /// NAME:alpha with NAME in delta_alpha, delta_alpha_max, p_eps.
        #[arg(long)]
        reference: Option<ReferenceSpec>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the Cartan matrix, marks and gradings of an algebra.
    Describe {
        #[arg(long)]
        algebra: CartanLabel,
        /// Include basis labels, structure constants and the Killing form.
        #[arg(long)]
        structure: bool,
    },
}

fn rational(s: &str) -> Result<Q, LieError> {
    parse_q(s)
}

enum Failure {
    Config(String),
    Verification,
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_roots(s: &str) -> Result<RootSelection, Failure> {
    if s.trim() == "all" {
        return Ok(RootSelection::All);
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Failure::Config(format!("bad root index {t:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(RootSelection::Explicit)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { algebras, roots, theorems, c1, c2, window, workers, output } => {
            let config = RunConfig {
                algebras: if algebras.is_empty() { report::default_grid() } else { algebras },
                roots: parse_roots(&roots)?,
                theorems,
                c1,
                c2,
                window,
                workers: workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            };
            let result = report::run_verify(&config)?;
            emit(&result.render(), output.as_ref())?;
            eprintln!(
                "{} pass, {} fail, {} inapplicable",
                result.count(report::Status::Pass),
                result.count(report::Status::Fail),
                result.count(report::Status::Inapplicable)
            );
            if result.failed() {
                return Err(Failure::Verification);
            }
        }
        Command::Triples { algebra, alpha, setting, orientation, bound, output } => {
            if alpha == 0 || alpha > algebra.rank() {
                return Err(LieError::BadRootIndex { index: alpha, rank: algebra.rank() }.into());
            }
            let v = report::triples_json(algebra, alpha - 1, setting, orientation, bound)?;
            emit(&report::render(&v), output.as_ref())?;
        }
        Command::Check { file, ambient, reference, output } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Failure::Config(format!("{}: {e}", file.display())))?;
            let v = report::check_json(&text, &ambient, reference)
                .map_err(|e| Failure::Config(format!("{}: {e}", file.display())))?;
            emit(&report::render(&v), output.as_ref())?;
            let ok = |key: &str| v[key] != Value::Bool(false);
            if !(ok("subalgebra") && ok("lagrangian") && ok("transversal")) {
                return Err(Failure::Verification);
            }
        }
        Command::Describe { algebra, structure } => {
            let v = report::describe_json(algebra, structure)?;
            emit(&report::render(&v), None)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
