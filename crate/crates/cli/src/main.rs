use std::process::ExitCode;

use asray_cli::{run, Cli, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::from_cli(cli).and_then(|config| {
        let out = run(&config)?;
        match &config.out {
            Some(path) => {
                std::fs::write(path, &out.rendered).map_err(|source| asray_cli::CliError::Io {
                    path: path.clone(),
                    source,
                })?
            }
            None => print!("{}", out.rendered),
        }
        Ok(out.exit_code)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("asray: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
