//! Command-line front end: one term or typing per invocation, read from the
//! argument or standard input, line-oriented output so pipelines compose
//! (`infer | recon` reproduces the input term). Exit codes: 0 on success, 1
//! on a domain failure (not derivable, reconstruction failure, fuel), 2 on a
//! parse error. Nothing is printed on failure except the failure line.

use clap::{Parser, Subcommand, ValueEnum};
use ptnf::principal::{fo, is_closed, is_complete, is_finally_closed, is_minimally_closed, is_principal, CType, ReconError};
use ptnf::syntax::{parse_derivation, parse_term, parse_typing, print_inter, print_term, print_typing};
use ptnf::{canonical_renaming, check_derivation, check_nf_typing, infer, recon, sr_counterexample, sweep, EnumBudget, System, Ty};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ptnf", version, about = "Principal typings for beta-normal forms in restricted intersection type systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print its canonical form.
    Parse {
        /// The term; read from standard input when omitted.
        input: Option<String>,
    },
    /// Reduce a term to beta-normal form, leftmost-outermost.
    Normalize {
        /// Reduction step budget.
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        input: Option<String>,
    },
    /// Infer the principal typing of a beta-normal form; prints the typing
    /// and its derivation.
    Infer {
        /// Normalize the term before inferring.
        #[arg(long)]
        normalize_first: bool,
        input: Option<String>,
    },
    /// Reconstruct the beta-normal form from a typing `context |- type`.
    Recon {
        input: Option<String>,
    },
    /// Validate an s-expression derivation against a type system.
    Check {
        #[arg(long, value_enum)]
        system: SystemArg,
        /// File holding the derivation; read from standard input when omitted.
        #[arg(long)]
        derivation: Option<PathBuf>,
    },
    /// Run the principality predicates on a typing `context |- type`.
    Analyze {
        input: Option<String>,
    },
    /// Exhaustive verification sweep within a budget.
    Selftest {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        max_index: u32,
    },
    /// Print the subject-reduction counterexample.
    SrDemo,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Sm,
    Smr,
}

impl From<SystemArg> for System {
    fn from(s: SystemArg) -> System {
        match s {
            SystemArg::Sm => System::Sm,
            SystemArg::Smr => System::SmR,
        }
    }
}

/// A failed run: the exit code and the single line to print.
struct Failure {
    code: u8,
    message: String,
}

fn parse_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("parse error: {e}"),
    }
}

fn domain_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 1,
        message: format!("fail: {e}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            // A downstream pipe reader may close early (e.g. `infer | head -1`);
            // that is not an error for a line-oriented tool.
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{output}") {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("cannot write to standard output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Parse { input } => {
            let term = parse_term(read_input(input)?.trim()).map_err(parse_failure)?;
            Ok(print_term(&term))
        }
        Command::Normalize { fuel, input } => {
            let term = parse_term(read_input(input)?.trim()).map_err(parse_failure)?;
            let nf = term.normalize(fuel).map_err(domain_failure)?;
            Ok(print_term(&nf))
        }
        Command::Infer { normalize_first, input } => {
            let mut term = parse_term(read_input(input)?.trim()).map_err(parse_failure)?;
            if normalize_first {
                term = term.normalize(10_000).map_err(domain_failure)?;
            }
            let typing = canonical_renaming(&infer(&term).map_err(domain_failure)?);
            // Re-derive under the renamed typing so the printed derivation
            // matches the printed typing node for node.
            let derivation = check_nf_typing(&term, &typing, System::SmR)
                .expect("the inferred typing of a normal form is derivable");
            Ok(format!(
                "{}\n{}",
                print_typing(&typing),
                ptnf::syntax::print_derivation(&derivation)
            ))
        }
        Command::Recon { input } => {
            let typing = parse_typing(read_input(input)?.trim()).map_err(parse_failure)?;
            let (term, leftover) = recon(&typing.ctx, &typing.ty).map_err(recon_failure)?;
            if !leftover.is_nil() {
                // Unconsumed context at the top: the typing is not the
                // inferred typing of any term.
                return Err(recon_failure(ReconError::LeftoverNonempty));
            }
            Ok(print_term(&term))
        }
        Command::Check { system, derivation } => {
            let text = match derivation {
                Some(path) => std::fs::read_to_string(&path).map_err(|e| Failure {
                    code: 2,
                    message: format!("cannot read {}: {e}", path.display()),
                })?,
                None => read_stdin()?,
            };
            let d = parse_derivation(text.trim()).map_err(parse_failure)?;
            let typing = check_derivation(&d, system.into()).map_err(domain_failure)?;
            Ok(print_typing(&typing))
        }
        Command::Analyze { input } => {
            let typing = parse_typing(read_input(input)?.trim()).map_err(parse_failure)?;
            // Minimal closedness enumerates sub-multisets of every entry, so
            // the analyzer refuses pathologically wide intersections rather
            // than hang; the library itself is uncapped.
            const WIDTH_CAP: usize = 8;
            let widest = (1..=typing.ctx.len())
                .map(|i| typing.ctx.entry(i).width())
                .max()
                .unwrap_or(0);
            if widest > WIDTH_CAP {
                return Err(Failure {
                    code: 1,
                    message: format!(
                        "fail: a context entry of width {widest} exceeds the analyzer cap of {WIDTH_CAP}"
                    ),
                });
            }
            let ct = CType::from_typing(&typing).map_err(domain_failure)?;
            let mut lines = vec![
                format!("closed: {}", is_closed(&ct)),
                format!("fc: {}", is_finally_closed(&ct).expect("has a head")),
                format!("mc: {}", is_minimally_closed(&ct).expect("has a head")),
                format!("complete: {}", is_complete(&ct).expect("has a head")),
                format!("principal: {}", is_principal(&ct).expect("has a head")),
            ];
            if let Ty::Var(v) = typing.ty {
                let entries: Vec<String> = fo(v, &typing.ctx)
                    .iter()
                    .map(|e| format!("{}: {}", e.position, print_inter(&e.entry)))
                    .collect();
                lines.push(format!("fo: [{}]", entries.join(", ")));
            }
            Ok(lines.join("\n"))
        }
        Command::Selftest { max_size, max_index } => {
            let budget = EnumBudget {
                max_term_size: max_size,
                max_free_index: max_index,
                ..EnumBudget::default()
            };
            let report = sweep(&budget);
            if report.is_clean() {
                Ok(report.to_string())
            } else {
                Err(Failure {
                    code: 1,
                    message: report.to_string(),
                })
            }
        }
        Command::SrDemo => {
            let report = sr_counterexample().map_err(domain_failure)?;
            Ok(report.to_string())
        }
    }
}

/// The spelled tags for reconstruction failures, stable for scripting.
fn recon_failure(e: ReconError) -> Failure {
    let tag = match e {
        ReconError::NoFo => "no-FO",
        ReconError::MultipleFo => "multiple-FO",
        ReconError::HeadVarReoccurs => "head-var-reoccurs",
        ReconError::NonPrincipalArgument => "non-principal-argument",
        ReconError::LeftoverNonempty => "leftover-nonempty",
    };
    Failure {
        code: 1,
        message: format!("fail: {tag}"),
    }
}

fn read_input(arg: Option<String>) -> Result<String, Failure> {
    match arg {
        Some(s) => Ok(s),
        None => read_stdin(),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read standard input: {e}"),
    })?;
    Ok(buf)
}
