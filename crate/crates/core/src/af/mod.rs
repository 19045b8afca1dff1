//! Abstract argumentation: frameworks, the apx format, a CNF encoding of
//! admissibility, and grounded/preferred semantics.

mod apx;
mod encode;
mod framework;
mod semantics;

use thiserror::Error;

use crate::enumerate::EnumError;

pub use apx::{parse_apx, write_apx};
pub use encode::{encode_admissible, AdmissibilityEncoding};
pub use framework::{format_extensions, is_valid_name, ArgumentationFramework, Extension};
pub use semantics::{
    brute_force_admissible, brute_force_preferred, enumerate_preferred, enumerate_preferred_streaming, first_preferred,
    grounded_extension, grounded_iterates, Preferred,
};

/// Largest framework the brute-force oracles accept.
pub const BRUTE_FORCE_ARGS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}argument `{name}` declared twice", line_prefix(*.line))]
    DuplicateArgument { line: Option<usize>, name: String },
    #[error("{}attack references undeclared argument `{name}`", line_prefix(*.line))]
    UndeclaredArgument { line: Option<usize>, name: String },
    #[error("invalid argument name `{0}`")]
    InvalidName(String),
    #[error("brute-force oracle refused: {size} arguments exceed cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("emitted extension {0} is not admissible")]
    NotAdmissible(String),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}
