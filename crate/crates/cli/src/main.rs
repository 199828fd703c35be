//! `tableaux`: analyze linear tableaux, export moduli ideals, and probe
//! eikonal modules from the command line.
//!
//! Exit codes: 0 on success, 2 on malformed input, 3 when the analysis
//! contradicts itself (for example, an involutive symbol whose normal form
//! check fails).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tableaux::analysis::analyze;
use tableaux::eikonal::closure_probe;
use tableaux::format::{parse_eikonal, parse_tableau};
use tableaux::moduli::{export_ideal, involutivity_ideal, parametric_endovolutive, ExportFormat};
use tableaux::{gallery, Error};

#[derive(Parser)]
#[command(
    name = "tableaux",
    version,
    about = "Exact symbol analysis of linear tableaux"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full analysis on a tableau file (or a gallery name).
    Analyze {
        path: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parametric endovolutive blocks and their involutivity ideal.
    Moduli {
        #[arg(short = 'r', long)]
        r: usize,
        #[arg(short = 'n', long)]
        n: usize,
        /// Comma-separated characters, e.g. 3,2,0.
        #[arg(long)]
        chars: String,
        /// singular, macaulay2 or sage.
        #[arg(long, default_value = "macaulay2")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the bundled tableaux, or print one of them.
    Examples {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Poisson closure of a module generated by phase-space observables.
    Eikonal {
        path: PathBuf,
        #[arg(long, default_value_t = tableaux::eikonal::DEFAULT_BOUND)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn stage(stage: &str, e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidTableau(_)
            | Error::InvalidCharacters(_)
            | Error::Unknown(_)
            | Error::Dimension(_)
            | Error::MissingVariable(_)
            | Error::VarTableMismatch(_)
            | Error::Precondition(_) => 2,
            _ => 3,
        };
        Self {
            code,
            message: format!("{stage}: {e}"),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: 3,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn comment_prefix(f: ExportFormat) -> &'static str {
    match f {
        ExportFormat::Singular => "// ",
        ExportFormat::Macaulay2 => "-- ",
        ExportFormat::Sage => "# ",
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { path, seed, out } => {
            let p = Path::new(&path);
            let t = if p.exists() || gallery::source(&path).is_err() {
                parse_tableau(&read(p)?).map_err(|e| Failure::stage("parse", e))?
            } else {
                gallery::load(&path).map_err(|e| Failure::stage("parse", e))?
            };
            let report = analyze(&t, seed).map_err(|e| Failure::stage("analysis", e))?;
            emit(&report.render(), out.as_deref())?;
            if !report.inconsistencies.is_empty() {
                return Err(Failure {
                    code: 3,
                    message: report.inconsistencies.join("; "),
                });
            }
            Ok(())
        }
        Command::Moduli {
            r,
            n,
            chars,
            format,
            out,
        } => {
            let format: ExportFormat = format.parse().map_err(|e| Failure::stage("format", e))?;
            let chars = chars
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::input(format!("characters: {e}")))?;
            let p =
                parametric_endovolutive(r, n, &chars).map_err(|e| Failure::stage("moduli", e))?;
            let ideal = involutivity_ideal(&p);
            let c = comment_prefix(format);
            let mut text = format!(
                "{c}r = {r}, n = {n}, characters {chars:?}, {} parameters\n",
                p.num_vars()
            );
            for line in p.render().lines() {
                text.push_str(&format!("{c}{line}\n"));
            }
            text.push_str(&export_ideal(&ideal, format));
            emit(&text, out.as_deref())
        }
        Command::Examples { name: None, out } => {
            let mut text = String::new();
            for (name, src) in gallery::ENTRIES {
                let about = src.lines().find_map(|l| l.strip_prefix("# ")).unwrap_or("");
                text.push_str(&format!("{name:<12} {about}\n"));
            }
            emit(&text, out.as_deref())
        }
        Command::Examples {
            name: Some(name),
            out,
        } => {
            let src = gallery::source(&name).map_err(|e| Failure::stage("examples", e))?;
            emit(src, out.as_deref())
        }
        Command::Eikonal { path, bound, out } => {
            let input = parse_eikonal(&read(&path)?).map_err(|e| Failure::stage("parse", e))?;
            let report = closure_probe(&input.generators, bound)
                .map_err(|e| Failure::stage("closure", e))?;
            emit(
                &format!("module {}\n{}", input.name, report.render()),
                out.as_deref(),
            )
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
