pub mod commands;
pub mod dot;
pub mod error;
pub mod job;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::{CliError, Result};
pub use job::{Format, Job, JobArgs};

#[derive(Debug, Parser)]
#[command(name = "arq", version, about = "Root systems, periodic AR quivers and Euler forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The periodic quiver Î with τ-orbits and parity.
    Ihat(JobArgs),
    /// The bijection Φ between roots and vertices of Î.
    Phi(JobArgs),
    /// Euler form matrices and the Euler table on Î.
    Euler(JobArgs),
    /// A reduced word for the longest element.
    W0(JobArgs),
    /// Compatible simple systems grouped by orientation.
    Compatible(JobArgs),
    /// The Auslander–Reiten quiver with dimension vectors.
    Ar(JobArgs),
    /// Run every verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub job: JobArgs,

    /// Directory of golden TSV tables, laid out as DIR/<TYPE>/<table>.tsv.
    #[arg(long)]
    pub golden: Option<PathBuf>,
}

impl Command {
    pub fn job_args(&self) -> &JobArgs {
        match self {
            Command::Ihat(a)
            | Command::Phi(a)
            | Command::Euler(a)
            | Command::W0(a)
            | Command::Compatible(a)
            | Command::Ar(a) => a,
            Command::Verify(v) => &v.job,
        }
    }
}

/// Runs a parsed command and returns its output.
pub fn run(command: &Command) -> Result<commands::Rendered> {
    let args = command.job_args();
    let job = Job::from_args(args)?;
    let format = args.format.unwrap_or(match command {
        Command::Ar(_) => Format::Dot,
        _ => Format::Tsv,
    });
    match command {
        Command::Ihat(_) => commands::ihat(&job, format),
        Command::Phi(_) => commands::phi(&job, format),
        Command::Euler(_) => commands::euler(&job, format),
        Command::W0(_) => commands::w0(&job, format),
        Command::Compatible(_) => commands::compatible(&job, format),
        Command::Ar(_) => commands::ar(&job, format),
        Command::Verify(v) => commands::verify(&job, format, v.golden.as_deref()),
    }
}
