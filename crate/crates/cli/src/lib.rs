//! Command-line front end: argument parsing, dispatch and exit codes.
//!
//! Exit codes: 0 on success, 1 on a domain failure (including a verdict
//! that contradicts `--expect`), 2 on unreadable or malformed input and on
//! usage errors. Machine output goes to stdout, diagnostics to stderr.

mod commands;

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use omlkit::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(Debug, Parser)]
#[command(name = "omlkit", version, about = "Finite quantum-logic toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Numeric tolerance for matrix checks.
    #[arg(long, global = true, env = "OMLKIT_TOL", default_value_t = omlkit::born::DEFAULT_TOL)]
    pub tol: f64,

    /// Exit with status 1 unless the command's verdict matches.
    #[arg(long, global = true, value_enum)]
    pub expect: Option<Expect>,

    /// Largest structure scanned by the law checks.
    #[arg(long, global = true, default_value_t = omlkit::lattice::DEFAULT_SCAN_LIMIT)]
    pub max_elements: usize,

    /// Disable the size limit of the law checks.
    #[arg(long, global = true)]
    pub no_limit: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice construction and law checks.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Two-valued states of a Greechie diagram.
    States {
        /// Greechie text file (`-` for stdin).
        file: String,
        /// Only states in which this atom is true.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Kochen-Specker configurations.
    #[command(subcommand)]
    Ks(KsCommand),
    /// Ray sets over Q(sqrt 2).
    #[command(subcommand)]
    Rays(RaysCommand),
    /// Kalmbach embedding of a poset of sets.
    Kalmbach {
        /// Poset file, one set literal per line (`-` for stdin).
        file: String,
    },
    /// Correlation polytopes.
    #[command(subcommand)]
    Polytope(PolytopeCommand),
    /// Quantum probability.
    #[command(subcommand)]
    Born(BornCommand),
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Check the distributive, modular and orthomodular laws.
    Check {
        /// Lattice JSON or Greechie text (`-` for stdin).
        file: String,
    },
    /// Emit MO_n.
    Mo {
        /// Number of orthogonal pairs of atoms.
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum KsCommand {
    /// Generate, close and color the Peres ray set.
    Peres,
}

#[derive(Debug, Subcommand)]
pub enum RaysCommand {
    /// Orthogonal nor-closure of a ray file.
    Closure {
        /// Ray file (`-` for stdin).
        file: String,
        /// Maximum number of rays the closure may add.
        #[arg(long, default_value_t = omlkit::rays::DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolytopeCommand {
    /// Facets of the correlation polytope of a scheme file.
    Facets {
        /// Event scheme file (`-` for stdin).
        file: String,
    },
    /// Decide whether a probability vector is classical.
    Member {
        /// Event scheme file (`-` for stdin).
        file: String,
        /// Comma-separated rationals, one per term.
        vector: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BornCommand {
    /// The Ur-operator a J1^2 + b J2^2 + c J3^2.
    #[command(allow_negative_numbers = true)]
    Ur {
        /// Weight of J1^2.
        a: f64,
        /// Weight of J2^2.
        b: f64,
        /// Weight of J3^2.
        c: f64,
        /// Use the tripod rotated by 45 degrees about z.
        #[arg(long)]
        rotated: bool,
    },
}

/// Failure of a command, split by exit status.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input or usage (exit 2).
    Input(String),
    /// Domain failure (exit 1).
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

/// What a command produced: its output and a pass/fail verdict.
pub struct Outcome {
    pub output: String,
    pub verdict: bool,
}

/// Runs the command line `args` (including the program name) and returns the
/// exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match commands::execute(&cli, stdin) {
        Ok(outcome) => {
            if stdout.write_all(outcome.output.as_bytes()).is_err() {
                return 1;
            }
            match cli.expect {
                Some(Expect::Pass) if !outcome.verdict => {
                    let _ = writeln!(stderr, "omlkit: verdict is fail, expected pass");
                    1
                }
                Some(Expect::Fail) if outcome.verdict => {
                    let _ = writeln!(stderr, "omlkit: verdict is pass, expected fail");
                    1
                }
                _ => 0,
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "omlkit: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "omlkit: {msg}");
            1
        }
    }
}
