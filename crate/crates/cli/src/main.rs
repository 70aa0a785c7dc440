//! `vcoalg`: load structure files, run the axiom suites and constructions,
//! print deterministic reports.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 when a
//! check is inconclusive, 64 for usage errors, 65 for malformed or invalid
//! input data and 66 when an input file cannot be read or an output file
//! cannot be written.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vcoalg::checks::Status;
use vcoalg::constructions::Convention;
use vcoalg::formal::{VarId, Window};
use vcoalg::Error;

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_IO: u8 = 66;

#[derive(Parser, Debug)]
#[command(name = "vcoalg", version, about = "Exact checks for vertex algebras, coalgebras and comodules")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Exponent window `lo:hi` applied to every formal variable.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true, default_value = "-8:8")]
    pub window: (i32, i32),
    /// Binomial convention for affinization brackets.
    #[arg(long, global = true, value_parser = parse_convention, default_value = "standard")]
    pub convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Global {
    pub fn window(&self) -> Window {
        Window::cube(&VarId::ALL, self.window.0, self.window.1)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the suite that fits the kind of structure in FILE.
    Validate {
        file: PathBuf,
        /// Largest `|n|` for the affinization checks on vertex Lie algebras.
        #[arg(long, default_value_t = 2)]
        mode_bound: i64,
    },
    /// Dualize a vertex algebra or vertex coalgebra and write the result.
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Enveloping vertex algebra of the vertex Lie algebra in FILE.
    Envelope {
        file: PathBuf,
        #[arg(long)]
        weight_cutoff: i64,
        /// `nilpotent:P` keeps at most P weight-zero factors; `value:c`
        /// sets every weight-zero creation mode to the scalar c.
        #[arg(long, value_parser = commands::parse_central, default_value = "nilpotent:1")]
        central: vcoalg::constructions::CentralHandling,
        #[arg(long, default_value_t = 2)]
        mode_bound: i64,
        /// Also write the truncated envelope.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enveloping bialgebra of the abelian Lie algebra on `dim` generators.
    Classical {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Reconstruct a correlation function as a rational function.
    Correlate {
        file: PathBuf,
        /// Functional `c*u|v|w + ...` on `V ⊗ V ⊗ M`.
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
        /// Comodule basis vector. By default every basis vector up to the
        /// largest total weight of a functional component.
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        kind: Side,
    },
    /// Write one of the built-in examples as a structure file.
    Example {
        /// trivial, commutativeN, abelian-vla, heisenberg-vla,
        /// virasoro-vla, shifted-comodule, mutant-jacobi, mutant-sign or
        /// mutant-comodule.
        name: String,
        /// Top weight for the vertex Lie algebra examples.
        #[arg(long, default_value_t = 6)]
        top: i64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or("expected `lo:hi`")?;
    let lo: i32 = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let hi: i32 = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if lo > hi {
        return Err("the window needs lo <= hi".into());
    }
    Ok((lo, hi))
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code for a load or construction error.
pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_DATA,
    }
}

pub fn status_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let g = &cli.global;
    let result = match cli.command {
        Command::Validate { file, mode_bound } => commands::validate(g, &file, mode_bound),
        Command::Dualize { file, output } => commands::dualize(g, &file, &output),
        Command::Envelope {
            file,
            weight_cutoff,
            central,
            mode_bound,
            output,
        } => commands::envelope(g, &file, weight_cutoff, central, mode_bound, output.as_deref()),
        Command::Classical { dim, degree } => commands::classical(g, dim, degree),
        Command::Correlate {
            file,
            functional,
            vector,
            kind,
        } => commands::correlate(g, &file, &functional, vector.as_deref(), kind),
        Command::Example { name, top, output } => commands::example(g, &name, top, &output),
    };
    match result {
        Ok(out) => {
            print!("{}", out.render(g.format));
            ExitCode::from(status_code(out.report.overall()))
        }
        Err(e) => {
            eprintln!("vcoalg: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
