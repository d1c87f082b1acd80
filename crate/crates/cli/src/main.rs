use std::io::Write;
use std::process::ExitCode;

use arq_cli::{run, Cli, CliError};
use clap::Parser;

fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|rendered| {
        write_output(cli.command.job_args().out.as_deref(), &rendered.text)?;
        Ok(rendered.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("arq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
