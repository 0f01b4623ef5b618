//! The `twoq` command line.
//!
//! Exit codes: 0 success, 1 other errors, 2 unreadable or invalid input,
//! 3 verification or self-test failure.

mod matrix_file;
mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::circuit::{parse_circuit, Circuit};
use crate::invariants::{cnot_cost, invariant_data};
use crate::numerics::{principal_arg, Mat4, C64};
use crate::rewrite::{reduce, separation_report, Direction, DEFAULT_DEPTH};
use crate::synthesis::{enumerate_circuits, synthesize_with_tolerance, GateLibrary, SynthesisResult};
use crate::{tol, Error};

pub use matrix_file::{format_matrix, parse_matrix, qft2, NamedGate};
pub use selftest::{run_selftest, PropertyOutcome, SelftestReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twoq", version, about = "Two-qubit synthesis, invariants and circuit rewriting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a three-CNOT circuit.
    Synth(SynthArgs),
    /// Print the minimal CNOT count (0 to 3).
    Cost(InputArgs),
    /// Print the local-equivalence invariants.
    Invariants(InputArgs),
    /// Simplify a circuit file with the rewrite rules.
    Reduce {
        file: PathBuf,
    },
    /// Decide whether the CNOTs of a CNOT/Rx/Rz circuit are effectively separated.
    Separated {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Run the seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "input")]
struct Source {
    /// Built-in gate.
    #[arg(long, value_enum)]
    gate: Option<NamedGate>,
    /// Matrix file: 4 rows of 8 floats (re im pairs).
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[command(flatten)]
    source: Source,
    /// Seed for `--gate random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Accepted `‖M†M − I‖_F` for matrix files.
    #[arg(long, default_value_t = tol::UNITARY)]
    unitary_tol: f64,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "cyz", value_parser = parse_library)]
    lib: GateLibrary,
    /// Emit OpenQASM 2.0 instead of the circuit text format.
    #[arg(long)]
    qasm: bool,
    /// Print up to N circuits with distinct core parameters.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    enumerate: Option<u32>,
    #[arg(long, default_value_t = tol::VERIFY)]
    verify_tol: f64,
}

fn parse_library(s: &str) -> Result<GateLibrary, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_INPUT
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::NotUnitary { .. }
            | Error::UnsupportedGate { .. }
            | Error::InvalidGate(_)
            | Error::InvalidArgument(_) => EXIT_INPUT,
            Error::VerificationFailed { .. } => EXIT_VERIFY,
            _ => EXIT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_ERROR, message: e.to_string() }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_matrix(args: &InputArgs) -> Result<Mat4, Failure> {
    match (&args.source.gate, &args.source.matrix) {
        (Some(g), _) => Ok(g.matrix(args.seed)),
        (None, Some(path)) => {
            let m = parse_matrix(&read_file(path)?, args.unitary_tol).map_err(|e| Failure {
                message: format!("{}: {e}", path.display()),
                ..Failure::from(e)
            })?;
            Ok(m)
        }
        (None, None) => unreachable!("clap enforces one input"),
    }
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    parse_circuit(&read_file(path)?).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        ..Failure::from(e)
    })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Synth(args) => synth(&args, out),
        Command::Cost(args) => {
            let u = load_matrix(&args)?;
            writeln!(out, "{}", cnot_cost(&u)?)?;
            Ok(EXIT_OK)
        }
        Command::Invariants(args) => {
            let u = load_matrix(&args)?;
            write_invariants(&u, out)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { file } => {
            let c = load_circuit(&file)?;
            let (r, trace) = reduce(&c);
            writeln!(out, "# steps: {}", trace.steps.len())?;
            writeln!(out, "# gates: {} -> {}", trace.initial_len, trace.final_len)?;
            for (k, s) in trace.steps.iter().enumerate() {
                writeln!(out, "# {:>3}: {} {} @{}", k + 1, s.rule.name(), direction(s.direction), s.pos)?;
            }
            write!(out, "{}", r.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Separated { file, depth } => {
            let c = load_circuit(&file)?;
            let report = separation_report(&c, depth)?;
            writeln!(out, "{}", report.separated)?;
            writeln!(out, "# depth limit: {}", report.depth_limit)?;
            writeln!(out, "# circuits explored: {}", report.explored)?;
            if let Some(w) = &report.witness {
                writeln!(out, "# witness ({} rewrites):", w.len())?;
                for (rule, dir, pos) in w {
                    writeln!(out, "#   {} {} @{}", rule.name(), direction(*dir), pos)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Selftest { trials, seed } => {
            let report = run_selftest(trials as usize, seed);
            write!(out, "{}", report.table())?;
            Ok(if report.ok() { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn direction(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    }
}

fn synth(args: &SynthArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(args.verify_tol.is_finite() && args.verify_tol > 0.0) {
        return Err(Error::InvalidArgument("--verify-tol must be positive".into()).into());
    }
    let u = load_matrix(&args.input)?;
    let cost = cnot_cost(&u)?;
    let results = match args.enumerate {
        None => vec![synthesize_with_tolerance(&u, args.lib, args.verify_tol)?],
        Some(n) => {
            let all = enumerate_circuits(&u, args.lib, n as usize)?;
            all.into_iter().filter(|r| r.residual <= args.verify_tol).collect()
        }
    };
    if results.is_empty() {
        return Err(Error::VerificationFailed { residual: f64::INFINITY, tolerance: args.verify_tol }.into());
    }
    let total = results.len();
    for (k, r) in results.iter().enumerate() {
        if total > 1 {
            comment(out, args.qasm, &format!("alternative {}/{total}", k + 1))?;
        }
        write_result(r, cost, args.qasm, out)?;
    }
    Ok(EXIT_OK)
}

fn comment(out: &mut dyn Write, qasm: bool, text: &str) -> std::io::Result<()> {
    writeln!(out, "{} {text}", if qasm { "//" } else { "#" })
}

fn write_result(r: &SynthesisResult, cost: u8, qasm: bool, out: &mut dyn Write) -> std::io::Result<()> {
    comment(out, qasm, &format!("library: {}", r.library))?;
    comment(out, qasm, &format!("cnot_cost: {cost}"))?;
    comment(out, qasm, &format!("residual: {:.3e}", r.residual))?;
    comment(
        out,
        qasm,
        &format!("cnots: {}, one_param: {}, basic: {}", r.cnot_count, r.one_param_count, r.basic_count),
    )?;
    let angles: Vec<String> = r.params.angles().iter().map(|a| format!("{a:?}")).collect();
    comment(out, qasm, &format!("core: [{}] (candidate {})", angles.join(", "), r.eigen_order))?;
    if qasm {
        write!(out, "{}", r.circuit.to_qasm())
    } else {
        write!(out, "{}", r.circuit.to_text())
    }
}

fn fmt_c(z: C64) -> String {
    format!("{:+.12} {:+.12}i", z.re, z.im)
}

fn write_invariants(u: &Mat4, out: &mut dyn Write) -> Result<(), Failure> {
    let data = invariant_data(u)?;
    let cost = cnot_cost(u)?;
    writeln!(out, "gamma spectrum (eigenvalue, arg):")?;
    for z in data.spectrum {
        writeln!(out, "  {}  {:+.12}", fmt_c(z), principal_arg(z))?;
    }
    writeln!(out, "chi coefficients (X^0 .. X^4):")?;
    for (k, c) in data.chi.coeffs.iter().enumerate() {
        writeln!(out, "  X^{k}: {}", fmt_c(*c))?;
    }
    writeln!(out, "tr gamma: {}", fmt_c(data.trace))?;
    writeln!(out, "im tr gamma: {:+.3e}", data.trace.im)?;
    writeln!(out, "cnot_cost: {cost}")?;
    Ok(())
}
