//! Library side of the `arcbool` command: file format, SVG rendering and the
//! benchmark harness.

pub mod bench;
pub mod format;
pub mod render;

use arcbool::polygon::reverse_point_list;
use arcbool::{ArcPolygon, Error, ErrorClass, Point, Tag, Tolerances};

/// Environment variable overriding the default point tolerance.
pub const EPS_ENV: &str = "ARCBOOL_EPS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: format::ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Io { .. } => "IoError",
            CliError::Usage(_) => "UsageError",
            CliError::Core(e) => e.name(),
        }
    }

    /// 1 for bad input, 2 for unsupported configurations, 3 for internal
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Validation => 1,
                ErrorClass::Unsupported => 2,
                ErrorClass::Internal => 3,
            },
            _ => 1,
        }
    }
}

/// Default tolerances with `eps_pt` taken from the environment, when set.
pub fn env_tolerances() -> Result<Tolerances, CliError> {
    match std::env::var(EPS_ENV) {
        Ok(v) => {
            let eps: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("{EPS_ENV}=`{v}` is not a number")))?;
            Ok(Tolerances::with_eps_pt(eps)?)
        }
        Err(_) => Ok(Tolerances::default()),
    }
}

/// Build a polygon, reversing a clockwise list first when `normalize` is set.
pub fn build_polygon(pts: &[(Point, Tag)], tol: &Tolerances, normalize: bool) -> Result<ArcPolygon, Error> {
    match ArcPolygon::from_point_list(pts, tol) {
        Err(Error::NotCcw(a)) if normalize && a < 0.0 => ArcPolygon::from_point_list(&reverse_point_list(pts), tol),
        other => other,
    }
}

pub fn read_file(path: &str) -> Result<format::PolygonFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    format::parse(&text).map_err(|source| CliError::Parse { path: path.to_string(), source })
}

pub fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_string(), source })
}
