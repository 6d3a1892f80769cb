//! Error type shared across the library.

use alloc::string::String;
use core::fmt;

/// Errors produced by field, form, Witt-ring and residue operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WittError {
    /// An operand was zero where a nonzero element is required.
    ZeroInput,
    /// Two operands live over different fields.
    FieldMismatch,
    /// The operation is not defined for this field kind.
    UnsupportedField(String),
    /// A precondition on the input failed (message explains which).
    Domain(String),
    /// The input is not a unit where a unit is required.
    NotAUnit,
    /// The input is not torsion where a torsion class is required.
    NotTorsion,
    /// Torsion-level elements at different levels were combined.
    LevelMismatch,
    /// A residue operation hit residue characteristic 2.
    ResidueCharTwo,
    /// A class is ramified where an unramified one is required.
    Ramified,
    /// An input is outside the supported normal form.
    UnsupportedNormalization(String),
    /// An internal guard (iteration cap, level cap) fired; indicates a bug.
    InternalGuard(String),
    /// A parse failure (used by downstream front ends).
    Parse(String),
}

impl fmt::Display for WittError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittError::ZeroInput => write!(f, "zero input where a nonzero element is required"),
            WittError::FieldMismatch => write!(f, "operands are over different fields"),
            WittError::UnsupportedField(m) => write!(f, "unsupported field: {}", m),
            WittError::Domain(m) => write!(f, "domain error: {}", m),
            WittError::NotAUnit => write!(f, "not a unit"),
            WittError::NotTorsion => write!(f, "not a torsion class"),
            WittError::LevelMismatch => write!(f, "torsion level mismatch"),
            WittError::ResidueCharTwo => write!(f, "residue characteristic 2 is not supported"),
            WittError::Ramified => write!(f, "class is ramified at the given valuation"),
            WittError::UnsupportedNormalization(m) => {
                write!(f, "unsupported normalization: {}", m)
            }
            WittError::InternalGuard(m) => write!(f, "internal guard tripped: {}", m),
            WittError::Parse(m) => write!(f, "parse error: {}", m),
        }
    }
}
