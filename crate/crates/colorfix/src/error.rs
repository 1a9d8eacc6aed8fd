use thiserror::Error;

/// Errors produced by constructors, parsers and solver entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A text format violated its grammar or its declared header.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally invalid input (bad vertex index, self-loop, color out of
    /// range, mismatched domains, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A tree decomposition failed one of the validity conditions. The
    /// message names the violated condition.
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    /// An instance exceeds a size guard. Raise the corresponding limit (or
    /// pass `--force` on the command line) to run it anyway.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// The requested palette is smaller than the chromatic number, so a
    /// fixing number for it does not exist.
    #[error("palette of size {r} is infeasible: chromatic number is {chi}")]
    InfeasiblePalette { r: usize, chi: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
