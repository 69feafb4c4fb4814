//! The `fuzzysub` command line.
//!
//! Exit codes: 0 on success, 1 for a negative answer (not isomorphic, axiom
//! violation, invalid flag, failed verification or certification), 2 for
//! usage, I/O and parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::arith::{FieldSpec, Rational};
use crate::certify::certify;
use crate::error::Error;
use crate::fuzzy::{from_pointwise, FuzzyFlag};
use crate::io::{parse_flag, parse_matrix, parse_table, serialize_flag};
use crate::morphism::{check_isomorphism, dim_profile, zadeh_image, LinearMap};
use crate::oracle::{check_axioms, enumerate_flags, EnumerationBudget};
use crate::strategy::DeciderRegistry;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fuzzysub", version, about = "Exact fuzzy subspaces: dimension, images and isomorphism")]
struct Cli {
    /// Cap on the number of candidate matrices (p^(n*n)) scanned by brute-force search.
    #[arg(long, global = true, value_name = "N")]
    budget_maps: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a flag document and print its canonical form.
    Validate { flag: PathBuf },
    /// Print the fuzzy dimension.
    Dim { flag: PathBuf },
    /// Print the canonical fuzzy basis as `vector | grade` lines.
    Basis { flag: PathBuf },
    /// Print the dimension profile as `t -> d` lines (-1 where the level set is empty).
    Profile { flag: PathBuf },
    /// Print the Zadeh image of a flag under a linear map.
    Image {
        flag: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Decide isomorphism; print the witness matrix when isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Decision method (`profile` or `brute-force`).
        #[arg(long, default_value = "profile")]
        method: String,
    },
    /// Check that a map sends the first flag onto the second.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Check the fuzzy subspace axioms on a pointwise table.
    CheckAxioms { table: PathBuf },
    /// Stream every flag over GF(p)^n with levels from the grid.
    Enumerate {
        #[arg(long)]
        field: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
    },
    /// Cross-check the profile criterion against brute-force search on every pair.
    Certify {
        #[arg(long)]
        field: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
    },
}

#[derive(Clone, Debug)]
struct Grid(Vec<Rational>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|_| format!("invalid level `{t}`")))
        .collect::<Result<Vec<_>, _>>()
        .map(Grid)
}

/// Failure that ends a command with a message.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_USAGE, format!("error: {e}"))
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path)
        .map_err(|e| Fail(EXIT_USAGE, format!("error: cannot read {}: {e}", path.display())))
}

fn load_flag(path: &Path) -> Result<FuzzyFlag, Fail> {
    parse_flag(&read(path)?)
        .map_err(|e| Fail(EXIT_USAGE, format!("error: {}: {e}", path.display())))
}

fn load_map(path: &Path, field: FieldSpec) -> Result<LinearMap, Fail> {
    parse_matrix(&read(path)?, field)
        .map_err(|e| Fail(EXIT_USAGE, format!("error: {}: {e}", path.display())))
}

fn is_validation_error(e: &Error) -> bool {
    matches!(
        e.root(),
        Error::LevelsNotDecreasing { .. }
            | Error::ChainNotStrict { .. }
            | Error::TopNotAmbient
            | Error::LevelOutOfRange { .. }
    )
}

/// Runs one invocation; `args` includes the program name.
pub fn run_command<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut budget = EnumerationBudget::default();
    if let Some(n) = cli.budget_maps {
        budget.max_maps = n;
    }
    match dispatch(cli.command, &budget, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, budget: &EnumerationBudget, out: &mut dyn Write) -> Result<i32, Fail> {
    let io = |e: std::io::Error| Fail(EXIT_USAGE, format!("error: {e}"));
    match cmd {
        Command::Validate { flag } => match parse_flag(&read(&flag)?) {
            Ok(mu) => {
                write!(out, "{}", serialize_flag(&mu)).map_err(io)?;
                Ok(EXIT_OK)
            }
            Err(e) if is_validation_error(&e) => {
                writeln!(out, "INVALID {e}").map_err(io)?;
                Ok(EXIT_NEGATIVE)
            }
            Err(e) => Err(Fail(EXIT_USAGE, format!("error: {}: {e}", flag.display()))),
        },
        Command::Dim { flag } => {
            writeln!(out, "{}", load_flag(&flag)?.dimension()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Basis { flag } => {
            write!(out, "{}", load_flag(&flag)?.fuzzy_basis()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Profile { flag } => {
            write!(out, "{}", dim_profile(&load_flag(&flag)?)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Image { flag, map } => {
            let mu = load_flag(&flag)?;
            let f = load_map(&map, mu.field())?;
            write!(out, "{}", serialize_flag(&zadeh_image(&f, &mu)?)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Iso { a, b, method } => {
            let (mu, eta) = (load_flag(&a)?, load_flag(&b)?);
            let decider = DeciderRegistry::default().get(&method, budget)?;
            match decider.decide(&mu, &eta)? {
                Some(w) => {
                    write!(out, "ISO\n{w}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                None => {
                    let (dm, de) = (mu.dimension(), eta.dimension());
                    if dm == de {
                        writeln!(out, "NOT-ISO dim-equal={dm}").map_err(io)?;
                    } else {
                        writeln!(out, "NOT-ISO dims={dm},{de}").map_err(io)?;
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Verify { a, b, map } => {
            let (mu, eta) = (load_flag(&a)?, load_flag(&b)?);
            let f = load_map(&map, mu.field())?;
            match check_isomorphism(&f, &mu, &eta) {
                Ok(()) => {
                    writeln!(out, "VERIFIED").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Err(why) => {
                    writeln!(out, "NOT-VERIFIED {why}").map_err(io)?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::CheckAxioms { table } => {
            let tbl = parse_table(&read(&table)?)
                .map_err(|e| Fail(EXIT_USAGE, format!("error: {}: {e}", table.display())))?;
            let budget = EnumerationBudget {
                max_vectors: crate::fuzzy::MAX_TABLE_SIZE,
                ..*budget
            };
            match check_axioms(&tbl, &budget)? {
                Some(v) => {
                    writeln!(out, "VIOLATION {v}").map_err(io)?;
                    Ok(EXIT_NEGATIVE)
                }
                None => {
                    let mu = from_pointwise(&tbl)?;
                    write!(out, "OK\n{}", serialize_flag(&mu)).map_err(io)?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Enumerate { field, dim, grid } => {
            let flags = enumerate_flags(FieldSpec::gf(field)?, dim, &grid.0, budget)?;
            for (i, mu) in flags.iter().enumerate() {
                if i > 0 {
                    writeln!(out, "---").map_err(io)?;
                }
                write!(out, "{}", serialize_flag(mu)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Certify { field, dim, grid } => {
            let cert = certify(FieldSpec::gf(field)?, dim, &grid.0, budget)?;
            write!(out, "{cert}").map_err(io)?;
            Ok(if cert.passed() { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}
