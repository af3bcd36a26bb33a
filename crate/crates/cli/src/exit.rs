//! Mapping from errors to process exit codes.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    Audit = 1,
    Input = 2,
    MissingData = 3,
    Internal = 4,
}

impl From<Failure> for ExitCode {
    fn from(f: Failure) -> Self {
        ExitCode::from(f as u8)
    }
}

#[derive(Debug)]
pub struct InputPathMissing(pub PathBuf);

impl fmt::Display for InputPathMissing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "input file not found: {}", self.0.display())
    }
}

impl std::error::Error for InputPathMissing {}

#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Class name for the `error[...]` prefix and the exit code.
pub fn classify(err: &anyhow::Error) -> (&'static str, Failure) {
    if err.downcast_ref::<InputPathMissing>().is_some() {
        return ("InputPathMissing", Failure::Input);
    }
    if err.downcast_ref::<Usage>().is_some() {
        return ("Usage", Failure::Input);
    }
    if let Some(e) = err.downcast_ref::<bec_core::Error>() {
        let code = if e.is_internal() {
            Failure::Internal
        } else if e.is_missing_data() {
            Failure::MissingData
        } else {
            Failure::Input
        };
        return (e.class_name(), code);
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return ("IoError", Failure::Input);
    }
    ("Internal", Failure::Internal)
}
