//! Command-line front-end. Each subcommand resolves its parameters from an
//! optional `key = value` config file overlaid with flags, runs, and writes
//! `<subcommand>.csv` plus `<subcommand>.manifest.json`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input (nothing written),
//! 3 numerical failure (nothing written).

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use self::commands::{EpsArgs, FieldArgs, IcfEuclideanArgs, IcfRealtimeArgs, IlArgs, NoiseArgs, QsimArgs};
use self::config::{merge, output_dir, read_config, to_params, Params};
use self::output::{write_outputs, Manifest, SCHEMA_VERSION, TOOL};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "icf", version, about = "Phase shifts from integrated correlation functions, plus a circuit and noise simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory [default: $ICF_OUTPUT_DIR, else .].
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Euclidean-time ICF difference against its infinite-volume limit.
    IcfEuclidean {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: IcfEuclideanArgs,
    },
    /// Real-time ICF difference against its infinite-volume limit.
    IcfRealtime {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: IcfRealtimeArgs,
    },
    /// Resolvent trace at E + i eps against the Krein form.
    ResolventEps {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: EpsArgs,
    },
    /// Phase extraction with the E + i eps prescription.
    PhaseEps {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: EpsArgs,
    },
    /// Phase extraction from the L -> iL rotated spectra.
    PhaseIl {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: IlArgs,
    },
    /// One-qubit (N = 2) Hadamard-test estimate of the ICF difference.
    QsimSingle {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: QsimArgs,
    },
    /// Two-qubit (N = 4) Hadamard-test estimate of the ICF difference.
    QsimTwo {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: QsimArgs,
    },
    /// Noisy density-matrix runs with prediction intervals.
    NoiseSweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: NoiseArgs,
    },
    /// Low levels of the discretized phi^4 Hamiltonian in both conventions.
    FieldSpectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        args: FieldArgs,
    },
    /// Repeat a run from its manifest.
    Rerun {
        manifest: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

impl Cmd {
    /// Subcommand name, common options and flag parameters.
    fn split(self) -> (String, Common, Params) {
        macro_rules! arm {
            ($name:expr, $c:expr, $a:expr) => {
                ($name.to_string(), $c, to_params(&$a))
            };
        }
        match self {
            Cmd::IcfEuclidean { common, args } => arm!("icf-euclidean", common, args),
            Cmd::IcfRealtime { common, args } => arm!("icf-realtime", common, args),
            Cmd::ResolventEps { common, args } => arm!("resolvent-eps", common, args),
            Cmd::PhaseEps { common, args } => arm!("phase-eps", common, args),
            Cmd::PhaseIl { common, args } => arm!("phase-il", common, args),
            Cmd::QsimSingle { common, args } => arm!("qsim-single", common, args),
            Cmd::QsimTwo { common, args } => arm!("qsim-two", common, args),
            Cmd::NoiseSweep { common, args } => arm!("noise-sweep", common, args),
            Cmd::FieldSpectrum { common, args } => arm!("field-spectrum", common, args),
            Cmd::Rerun { .. } => unreachable!("rerun is handled before splitting"),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 1,
        e if e.is_numerical() => 3,
        _ => 2,
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.cmd) {
        Ok(m) => {
            for w in &m.warnings {
                eprintln!("warning: {w}");
            }
            for o in &m.outputs {
                println!("{o}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<Manifest> {
    let (name, params, out) = match cmd {
        Cmd::Rerun { manifest, out_dir } => {
            let m = Manifest::read(&manifest)?;
            (m.subcommand, m.parameters, output_dir(out_dir.as_deref()))
        }
        cmd => {
            let (name, common, flags) = cmd.split();
            let file = match &common.config {
                Some(p) => read_config(p)?,
                None => Params::new(),
            };
            (name, merge(file, flags), output_dir(common.out_dir.as_deref()))
        }
    };
    run_to_dir(&name, &params, &out)
}

/// Run subcommand `name` on `params` and write its outputs under `dir`.
pub fn run_to_dir(name: &str, params: &Params, dir: &std::path::Path) -> Result<Manifest> {
    let start = Instant::now();
    let mut report = commands::execute(name, params)?;
    let runtime = start.elapsed().as_secs_f64();
    let mut comments = vec![format!("{TOOL} {} {name}", env!("CARGO_PKG_VERSION"))];
    comments.extend(report.resolved.iter().map(|(k, v)| format!("{k} = {v}")));
    comments.append(&mut report.table.comments);
    report.table.comments = comments;
    let mut manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: name.into(),
        parameters: report.resolved,
        seed: report.seed,
        runtime_seconds: runtime,
        outputs: vec![],
        warnings: report.warnings,
        summary: report.summary,
    };
    write_outputs(dir, name, &report.table, &mut manifest)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::invalid("N", "x")), 2);
        assert_eq!(exit_code(&Error::Overflow { exponent: 800.0, limit: 700.0 }), 3);
        assert_eq!(exit_code(&Error::Io(std::io::Error::other("x"))), 1);
    }
}
