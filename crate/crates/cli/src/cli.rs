//! Command-line front end.
//!
//! One command per invocation; commands compose through pipes. Exit status is
//! `0` on success or a consistent verdict, `1` on a refuted verdict or a
//! failed verification, and `2` on usage, parse, or I/O errors.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use geoarith::convergence::{
    chain_extract, check_arith_convergent, check_arith_summable, classify_eventually_zero,
    summable_chain_extract,
};
use geoarith::divisor::Factorizer;
use geoarith::transform::{
    dirichlet_convolve_seq, emit_m_matrix, emit_w_matrix, gmatmul, m_transform, q_transform,
    r_transform, w_transform,
};
use geoarith::{GReal, GSeq, MembershipReport, Mode, Tolerance};

use crate::format::{
    chain_line, parse_gseq, parse_matrix, report_line, write_gseq, write_matrix, ParseError, Repr,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Epsilon,
}

#[derive(Debug, Parser)]
#[command(name = "geoarith", version, about = "Arithmetic summability over the geometric real field")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Representation used for reading and printing numbers.
    #[arg(long, global = true, value_enum, default_value_t = Repr::Exponent)]
    pub repr: Repr,

    /// Membership rule for the check commands.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,

    /// Strict residual bound in exponent units (epsilon mode only).
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,

    /// Comparison tolerance in exponent units.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tau: f64,

    /// Input file, `-` for standard input.
    #[arg(short, long, global = true, default_value = "-")]
    pub input: String,

    /// Output file, `-` for standard output.
    #[arg(short, long, global = true, default_value = "-")]
    pub output: String,

    /// Largest witness tried by the check commands (default: sequence length).
    #[arg(long, global = true)]
    pub witness_cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Divisor-sum transform.
    Wsum,
    /// Möbius inversion (inverse of wsum).
    Minvert,
    /// Dirichlet product of two sequences of equal length.
    Convolve { left: String, right: String },
    /// Gcd pullback g(i) = f(gcd(n, i)).
    Qtrans {
        #[arg(long = "n")]
        n: usize,
    },
    /// Restriction to the divisors of n.
    Rtrans {
        #[arg(long = "n")]
        n: usize,
    },
    /// Table of the geometric Möbius function.
    Mobius {
        #[arg(long)]
        size: usize,
    },
    /// Divisibility matrix W.
    EmitW {
        #[arg(long)]
        size: usize,
    },
    /// Möbius matrix M.
    EmitM {
        #[arg(long)]
        size: usize,
    },
    /// Geometric product of two matrices.
    Matmul { left: String, right: String },
    /// Arithmetic convergence check.
    CheckAc,
    /// Arithmetic summability check.
    CheckAs,
    /// Eventually-zero check.
    CheckPhi,
    /// Extract a sequence along a divisibility chain.
    Chain {
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<usize>,
        /// Extract divisor sums instead of terms.
        #[arg(long)]
        sums: bool,
    },
    /// Check that W·M and M·W are the identity.
    VerifyInversion {
        #[arg(long)]
        size: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse { source: String, error: ParseError },
    Io { path: String, error: io::Error },
    Math(geoarith::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Parse { source, error } => write!(f, "{source}: {error}"),
            CliError::Io { path, error } => write!(f, "{path}: {error}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<geoarith::Error> for CliError {
    fn from(e: geoarith::Error) -> Self {
        CliError::Math(e)
    }
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stdin_used: bool,
}

impl Streams<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("standard input can only be read once".into()));
            }
            self.stdin_used = true;
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|error| CliError::Io { path: "<stdin>".into(), error })?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|error| CliError::Io { path: path.into(), error })
        }
    }

    fn write(&mut self, path: &str, text: &str) -> Result<(), CliError> {
        if path == "-" {
            self.stdout
                .write_all(text.as_bytes())
                .and_then(|_| self.stdout.flush())
                .map_err(|error| CliError::Io { path: "<stdout>".into(), error })
        } else {
            fs::write(path, text).map_err(|error| CliError::Io { path: path.into(), error })
        }
    }
}

fn source_name(path: &str) -> String {
    if path == "-" { "<stdin>".into() } else { path.into() }
}

impl CliConfig {
    fn membership_mode(&self) -> Result<Mode, CliError> {
        match (self.mode, self.epsilon) {
            (ModeArg::Exact, None) => Ok(Mode::Exact(self.tolerance()?)),
            (ModeArg::Exact, Some(_)) => {
                Err(CliError::Usage("--epsilon requires --mode epsilon".into()))
            }
            (ModeArg::Epsilon, None) => {
                Err(CliError::Usage("--mode epsilon requires --epsilon".into()))
            }
            (ModeArg::Epsilon, Some(e)) if !(e > 0.0 && e.is_finite()) => {
                Err(CliError::Usage("--epsilon must be a positive number".into()))
            }
            (ModeArg::Epsilon, Some(e)) => Ok(Mode::Epsilon(GReal::from_exponent(e)?)),
        }
    }

    fn tolerance(&self) -> Result<Tolerance, CliError> {
        Tolerance::new(self.tau).map_err(|_| CliError::Usage("--tau must be non-negative".into()))
    }

    fn read_seq(&self, io: &mut Streams<'_>, path: &str) -> Result<GSeq, CliError> {
        let text = io.read(path)?;
        parse_gseq(&text, self.repr).map_err(|error| CliError::Parse { source: source_name(path), error })
    }
}

fn verdict_status(report: &MembershipReport) -> i32 {
    if report.is_consistent() { EXIT_OK } else { EXIT_REFUTED }
}

fn execute(cfg: &CliConfig, io: &mut Streams<'_>) -> Result<i32, CliError> {
    let repr = cfg.repr;
    let out = cfg.output.as_str();
    let input = cfg.input.as_str();
    // validated up front so every command rejects inconsistent flags
    let mode = cfg.membership_mode()?;
    match &cfg.command {
        Command::Wsum => {
            let f = cfg.read_seq(io, input)?;
            io.write(out, &write_gseq(&w_transform(&f), repr))?;
        }
        Command::Minvert => {
            let g = cfg.read_seq(io, input)?;
            io.write(out, &write_gseq(&m_transform(&g), repr))?;
        }
        Command::Convolve { left, right } => {
            let f = cfg.read_seq(io, left)?;
            let g = cfg.read_seq(io, right)?;
            io.write(out, &write_gseq(&dirichlet_convolve_seq(&f, &g)?, repr))?;
        }
        Command::Qtrans { n } => {
            let f = cfg.read_seq(io, input)?;
            io.write(out, &write_gseq(&q_transform(&f, *n)?, repr))?;
        }
        Command::Rtrans { n } => {
            let f = cfg.read_seq(io, input)?;
            io.write(out, &write_gseq(&r_transform(&f, *n)?, repr))?;
        }
        Command::Mobius { size } => {
            let fz = Factorizer::default();
            let terms = (1..=*size).map(|n| fz.mobius(n)).collect::<Result<Vec<_>, _>>()?;
            io.write(out, &write_gseq(&GSeq::new(terms)?, repr))?;
        }
        Command::EmitW { size } => io.write(out, &write_matrix(&emit_w_matrix(*size)?, repr))?,
        Command::EmitM { size } => io.write(out, &write_matrix(&emit_m_matrix(*size)?, repr))?,
        Command::Matmul { left, right } => {
            let parse = |path: &str, text: String| {
                parse_matrix(&text, repr)
                    .map_err(|error| CliError::Parse { source: source_name(path), error })
            };
            let a = parse(left, io.read(left)?)?;
            let b = parse(right, io.read(right)?)?;
            io.write(out, &write_matrix(&gmatmul(&a, &b)?, repr))?;
        }
        Command::CheckAc => {
            let g = cfg.read_seq(io, input)?;
            let report = check_arith_convergent(&g, mode, cfg.witness_cap)?;
            io.write(out, &format!("{}\n", report_line(&report)))?;
            return Ok(verdict_status(&report));
        }
        Command::CheckAs => {
            let f = cfg.read_seq(io, input)?;
            let report = check_arith_summable(&f, mode, cfg.witness_cap)?;
            io.write(out, &format!("{}\n", report_line(&report)))?;
            return Ok(verdict_status(&report));
        }
        Command::CheckPhi => {
            let f = cfg.read_seq(io, input)?;
            let report = classify_eventually_zero(&f, cfg.tolerance()?);
            io.write(out, &format!("{}\n", report_line(&report)))?;
            return Ok(verdict_status(&report));
        }
        Command::Chain { chain, sums } => {
            let f = cfg.read_seq(io, input)?;
            let tol = cfg.tolerance()?;
            let report = if *sums {
                summable_chain_extract(&f, chain, tol)?
            } else {
                chain_extract(&f, chain, tol)?
            };
            io.write(out, &format!("{}\n", chain_line(&report)))?;
            return Ok(if report.is_cauchy { EXIT_OK } else { EXIT_REFUTED });
        }
        Command::VerifyInversion { size } => {
            let w = emit_w_matrix(*size)?;
            let m = emit_m_matrix(*size)?;
            let pass = gmatmul(&w, &m)?.is_identity() && gmatmul(&m, &w)?.is_identity();
            io.write(out, if pass { "PASS\n" } else { "FAIL\n" })?;
            return Ok(if pass { EXIT_OK } else { EXIT_REFUTED });
        }
    }
    Ok(EXIT_OK)
}

/// Runs one invocation against the given streams and returns the exit
/// status. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let mut io = Streams { stdin, stdout, stdin_used: false };
    match execute(&cfg, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(stderr, "\nFor more information, try 'geoarith --help'.");
            }
            EXIT_ERROR
        }
    }
}
