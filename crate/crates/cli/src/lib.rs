//! `euler-scan`: command-line front end for the `euler_scan` library.
//!
//! Exit codes: 0 on success, 1 on usage, parse or input errors, 2 when a
//! run completes but its verdict is `fail`.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use euler_scan::TieBreak;

use commands::{Corruption, Input, Layers, Mode, Route, SimulateOptions};
use error::CliError;
use report::{RunReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "euler-scan",
    version,
    about = "Euler calculus on finite posets and sensor networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Read the JSON document from FILE instead of stdin.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write output to FILE. `reduce` and `simulate` write a JSON document
    /// there and keep the report on stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler characteristic by Möbius inversion and by chain counts.
    Chi,
    /// Euler integral of a named function.
    Integrate {
        #[arg(long)]
        function: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
    },
    /// Remove beat points (core) or chi-points (chi-minimal model).
    Reduce {
        #[arg(long, value_enum, default_value_t = ModeArg::Chi)]
        mode: ModeArg,
        #[arg(long = "tie-break", value_enum, default_value_t = TieArg::Asc)]
        tie_break: TieArg,
    },
    /// Random layered network: corrupt, count, compare with the truth.
    Simulate {
        /// Layer sizes, bottom first.
        #[arg(long, default_value = "4x4x3")]
        layers: Layers,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 10)]
        targets: usize,
        /// none, chi-points, or ID=VALUE[,ID=VALUE...]
        #[arg(long, default_value = "none")]
        corrupt: Corruption,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hasse diagram in DOT.
    ExportDot {
        /// Annotate node labels as `label:value`.
        #[arg(long)]
        function: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RouteArg {
    Mobius,
    Excursion,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Core,
    Chi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TieArg {
    Asc,
    Desc,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin, stdout) {
        Ok(Verdict::Pass) => EXIT_OK,
        Ok(Verdict::Fail) => EXIT_VERDICT,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<Input, CliError> {
    let bytes = match &cli.input {
        Some(path) => std::fs::read(path).map_err(|source| io_error(path, source))?,
        None => {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            buf
        }
    };
    Input::from_bytes(&bytes)
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| io_error(path, source))
}

fn execute(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<Verdict, CliError> {
    let render = |r: &RunReport| if cli.json { r.to_json() } else { r.to_text() };
    // Primary output goes to --output when the command has no document to write.
    let emit = |text: &str, stdout: &mut dyn Write| -> Result<(), CliError> {
        match &cli.output {
            Some(path) => write_file(path, text),
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                }),
        }
    };
    let print = |text: &str, stdout: &mut dyn Write| {
        stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
    };

    match &cli.command {
        Command::Chi => {
            let r = commands::cmd_chi(&read_input(cli, stdin)?)?;
            emit(&render(&r), stdout)?;
            Ok(r.verdict)
        }
        Command::Integrate { function, route } => {
            let route = match route {
                RouteArg::Mobius => Route::Mobius,
                RouteArg::Excursion => Route::Excursion,
                RouteArg::Both => Route::Both,
            };
            let r = commands::cmd_integrate(&read_input(cli, stdin)?, function, route)?;
            emit(&render(&r), stdout)?;
            Ok(r.verdict)
        }
        Command::Reduce { mode, tie_break } => {
            let mode = match mode {
                ModeArg::Core => Mode::Core,
                ModeArg::Chi => Mode::Chi,
            };
            let tie = match tie_break {
                TieArg::Asc => TieBreak::Ascending,
                TieArg::Desc => TieBreak::Descending,
            };
            let (r, doc) = commands::cmd_reduce(&read_input(cli, stdin)?, mode, &tie)?;
            if let Some(path) = &cli.output {
                write_file(path, &doc.to_json())?;
            }
            print(&render(&r), stdout)?;
            Ok(r.verdict)
        }
        Command::Simulate {
            layers,
            density,
            targets,
            corrupt,
            seed,
        } => {
            if cli.input.is_some() {
                return Err(CliError::Usage(
                    "simulate generates its own network; drop --input".into(),
                ));
            }
            let (r, doc) = commands::cmd_simulate(&SimulateOptions {
                layers: layers.clone(),
                density: *density,
                targets: *targets,
                corrupt: corrupt.clone(),
                seed: *seed,
            })?;
            if let Some(path) = &cli.output {
                write_file(path, &doc.to_json())?;
            }
            print(&render(&r), stdout)?;
            Ok(r.verdict)
        }
        Command::ExportDot { function } => {
            let input = read_input(cli, stdin)?;
            emit(
                &commands::cmd_export_dot(&input.loaded, function.as_deref())?,
                stdout,
            )?;
            Ok(Verdict::Pass)
        }
    }
}
