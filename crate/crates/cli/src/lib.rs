//! Command-line front end: input loading, the five commands, and rendering
//! of [`document::CertificateDocument`] as text or JSON.

use std::path::PathBuf;

mod commands;
pub mod config;
pub mod document;
mod render;

pub use commands::{execute, load};
pub use config::{Cli, Format, InputSource, RunConfig};
pub use document::CertificateDocument;
pub use render::render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        source: asray_core::Error,
    },
    #[error(transparent)]
    Core(#[from] asray_core::Error),
}

impl CliError {
    /// 3 for internal consistency failures, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(asray_core::Error::Consistency(_))
            | CliError::InFile {
                source: asray_core::Error::Consistency(_),
                ..
            } => 3,
            _ => 2,
        }
    }
}

/// A finished run: the document, its rendering and the process exit code.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub document: CertificateDocument,
    pub rendered: String,
    pub exit_code: u8,
}

pub fn run(config: &RunConfig) -> Result<RunOutput, CliError> {
    let document = execute(config)?;
    let rendered = render(&document, config.format);
    let exit_code = document.verdict.exit_code();
    Ok(RunOutput {
        document,
        rendered,
        exit_code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistency_failures_exit_with_3() {
        let e = CliError::Core(asray_core::Error::Consistency("x".into()));
        assert_eq!(e.exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(asray_core::Error::Budget(1)).exit_code(), 2);
    }
}
