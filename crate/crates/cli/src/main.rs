//! `trisect`: build and verify trisection diagrams from Lefschetz pencil data.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 bad input,
//! 3 internal invariant violation. Errors go to stderr as `E:<code>:<message>`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use pencil_trisect::pencil::check_cycle_classes;
use pencil_trisect::{
    build_diagram, check_boundary_variation, check_monodromy, corpus, expected_invariants,
    parse_pencil, render_svg, trisection_parameters, verify_diagram, CheckResult, Error,
    PencilData, TrisectionDiagram,
};

#[derive(Parser)]
#[command(name = "trisect", version, about = "Trisection diagrams from Lefschetz pencils")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a pencil and run the monodromy checks.
    Check {
        /// Pencil JSON file, `-` for stdin, or `corpus:NAME`.
        file: String,
    },
    /// Build a trisection diagram.
    Trisect {
        file: String,
        /// Write the diagram here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Build even if the pencil checks fail.
        #[arg(long)]
        force: bool,
    },
    /// Verify a diagram against its pencil; builds the diagram if none is given.
    Verify {
        file: String,
        #[arg(short, long)]
        diagram: Option<String>,
    },
    /// Print g, k, the Euler characteristic and H1 of the total space.
    Invariants { file: String },
    /// Built-in example pencils.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Draw a diagram as a schematic SVG.
    Render {
        /// Diagram JSON file, or `corpus:NAME` to build one first.
        diagram: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    /// Print an entry's pencil JSON.
    Show {
        name: String,
        /// Print the whole entry, with expected invariants and notes.
        #[arg(long)]
        entry: bool,
    },
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoAdmissibleConvention { .. } => 1,
            Error::Overflow(_) | Error::Invariant(_) => 3,
            _ => 2,
        };
        let mut message = e.to_string();
        if let Error::NoAdmissibleConvention { best, .. } = &e {
            let failing: Vec<&str> = best
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            message.push_str(&format!("; failing: {}", failing.join(",")));
        }
        Failure::new(code, message)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(2, e.to_string())
    }
}

type CliResult = Result<u8, Failure>;

fn read_input(arg: &str) -> Result<Vec<u8>, Failure> {
    if arg == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        return Ok(buf);
    }
    fs::read(arg).map_err(|e| Failure::new(2, format!("{arg}: {e}")))
}

fn load_pencil(arg: &str) -> Result<PencilData, Failure> {
    if let Some(name) = corpus::strip_uri(arg) {
        return Ok(corpus::get(name)?.pencil);
    }
    let bytes = read_input(arg)?;
    parse_pencil(&bytes).map_err(|e| Failure::new(2, format!("{arg}: {e}")))
}

fn load_diagram(arg: &str) -> Result<TrisectionDiagram, Failure> {
    if corpus::strip_uri(arg).is_some() {
        return Ok(build_diagram(&load_pencil(arg)?)?);
    }
    let bytes = read_input(arg)?;
    TrisectionDiagram::from_json(&bytes).map_err(|e| Failure::new(2, format!("{arg}: {e}")))
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Failure::new(2, format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn pencil_checks(p: &PencilData) -> Vec<CheckResult> {
    vec![check_monodromy(p), check_boundary_variation(p), check_cycle_classes(p)]
}

fn code_for(checks: &[CheckResult]) -> u8 {
    if checks.iter().all(|c| c.passed) {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct PencilReport<'a> {
    pencil: Option<&'a str>,
    h: usize,
    b: usize,
    l: usize,
    checks: &'a [CheckResult],
    overall: bool,
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Check { file } => {
            let p = load_pencil(&file)?;
            let checks = pencil_checks(&p);
            let code = code_for(&checks);
            let report = PencilReport {
                pencil: p.name(),
                h: p.genus(),
                b: p.base_points(),
                l: p.singular_fibers(),
                checks: &checks,
                overall: code == 0,
            };
            let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
            text.push('\n');
            emit(None, text.as_bytes())?;
            for c in checks.iter().filter(|c| !c.passed) {
                eprintln!("E:1:check {} failed", c.name);
            }
            Ok(code)
        }
        Command::Trisect {
            file,
            output,
            force,
        } => {
            let p = load_pencil(&file)?;
            if !force {
                let failing: Vec<String> = pencil_checks(&p)
                    .into_iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name)
                    .collect();
                if !failing.is_empty() {
                    return Err(Failure::new(
                        1,
                        format!("pencil check(s) failed: {} (use --force to build anyway)", failing.join(",")),
                    ));
                }
            }
            let d = build_diagram(&p)?;
            emit(output.as_deref(), d.to_json().as_bytes())?;
            Ok(0)
        }
        Command::Verify { file, diagram } => {
            let p = load_pencil(&file)?;
            let d = match diagram {
                Some(arg) => load_diagram(&arg)?,
                None => build_diagram(&p)?,
            };
            let report = verify_diagram(&p, &d)?;
            let mut text = report.to_json();
            text.push('\n');
            emit(None, text.as_bytes())?;
            for c in report.failing() {
                eprintln!("E:1:check {} failed", c.name);
            }
            Ok(code_for(&report.checks))
        }
        Command::Invariants { file } => {
            let p = load_pencil(&file)?;
            let t = trisection_parameters(p.genus(), p.base_points(), p.singular_fibers())?;
            let inv = expected_invariants(&p);
            if inv.euler != t.euler() {
                return Err(Failure::new(
                    3,
                    format!("euler characteristic {} from the pencil, {} from (g,k)", inv.euler, t.euler()),
                ));
            }
            let line = format!("g={} k={} chi={} H1={}\n", t.g, t.k, inv.euler, inv.h1);
            emit(None, line.as_bytes())?;
            Ok(0)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                let mut text = String::new();
                for e in corpus::list()? {
                    text.push_str(&format!(
                        "{:<20} h={} b={} l={:<3} g={:<3} k={:<2} {}\n",
                        e.name,
                        e.pencil.genus(),
                        e.pencil.base_points(),
                        e.pencil.singular_fibers(),
                        e.params.g,
                        e.params.k,
                        if e.valid { "valid" } else { "invalid" }
                    ));
                }
                emit(None, text.as_bytes())?;
                Ok(0)
            }
            CorpusAction::Show { name, entry } => {
                let e = corpus::get(corpus::strip_uri(&name).unwrap_or(&name))?;
                let mut text = if entry {
                    serde_json::to_string_pretty(&e).expect("corpus entries serialize")
                } else {
                    e.pencil.to_json()
                };
                text.push('\n');
                emit(None, text.as_bytes())?;
                Ok(0)
            }
        },
        Command::Render { diagram, output } => {
            let d = load_diagram(&diagram)?;
            emit(output.as_deref(), &render_svg(&d))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("E:2:{}", msg.lines().next().unwrap_or("invalid arguments"));
            eprint!("{msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("E:{}:{}", f.code, f.message);
            ExitCode::from(f.code)
        }
    }
}
