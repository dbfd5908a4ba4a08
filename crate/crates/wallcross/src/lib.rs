//! Exact wall-crossing terms for SO(3) Donaldson invariants of rational surfaces.
//!
//! All arithmetic is over ℤ and ℚ; no floating point enters any reported value.

pub mod cohomology;
pub mod flips;
pub mod lattice;
pub mod poly;
pub mod rational;
pub mod shortvec;
pub mod transition;
pub mod verify;
pub mod walls;

use serde::Serialize;

/// Non-fatal diagnostic attached to a result.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Warning {
    pub code: String,
    pub message: String,
}

impl Warning {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        Warning {
            code: code.to_string(),
            message: message.into(),
        }
    }
}
