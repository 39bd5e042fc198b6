//! Command-line front end and file formats for `vdw-core`.
//!
//! The library half holds everything the binary does, so that integration
//! tests can drive verifications without spawning processes.

use std::fmt;
use std::path::PathBuf;

pub mod eval;
pub mod formats;
pub mod grid;
pub mod identities;
pub mod sample;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Environment variable overriding the report directory.
pub const OUTPUT_DIR_ENV: &str = "VDW_OUTPUT_DIR";

pub const DEFAULT_OUTPUT_DIR: &str = "vdw-reports";

pub fn output_dir() -> PathBuf {
    std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    UnknownId(String),
    Core(vdw_core::Error),
    Io(std::io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
}

impl CliError {
    /// 2 for usage errors, 3 for domain errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::UnknownId(_) | CliError::Json(_) => 2,
            CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Csv(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::UnknownId(id) => write!(f, "unknown id '{id}'"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Json(e) => write!(f, "json error: {e}"),
            CliError::Csv(e) => write!(f, "csv error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vdw_core::Error> for CliError {
    fn from(e: vdw_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

impl From<grid::GridError> for CliError {
    fn from(e: grid::GridError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// `principal`, `principal:k`, `mod4`, `prime:p:j`, or a path to a character JSON file.
pub fn parse_character(spec: &str) -> Result<vdw_core::specfun::DirichletCharacter, CliError> {
    use vdw_core::specfun::DirichletCharacter;
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |t: &str| t.parse::<u64>().map_err(|_| CliError::Usage(format!("'{t}' is not a positive integer")));
    Ok(match parts.as_slice() {
        ["principal"] => DirichletCharacter::principal(1)?,
        ["principal", k] => DirichletCharacter::principal(num(k)?)?,
        ["mod4"] => DirichletCharacter::mod4(),
        ["prime", p, j] => DirichletCharacter::prime_modulus(num(p)?, num(j)?)?,
        _ if std::path::Path::new(spec).is_file() => {
            formats::read_json::<formats::CharacterFile>(std::path::Path::new(spec))?.to_character()?
        }
        _ => return Err(CliError::Usage(format!("unknown character '{spec}'"))),
    })
}
