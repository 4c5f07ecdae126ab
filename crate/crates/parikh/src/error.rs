//! Crate-wide error type and resource budgets.

use thiserror::Error;

/// Errors surfaced by the library. Resource exhaustion is deliberately a
/// distinct variant: it signals that an instance was too large for the
/// configured budget, never that an answer would be wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("negative entry {0} in a natural vector")]
    NegativeEntry(String),

    #[error("resource budget exhausted during {0}")]
    ResourceLimit(&'static str),

    #[error("operand alphabets differ")]
    AlphabetMismatch,

    #[error("automaton is not deterministic")]
    NotDeterministic,

    #[error("operation does not support ε-transitions")]
    EpsilonUnsupported,

    #[error("machine is not a PA on letters: letter {0:?} carries two different vectors")]
    NotLetterUniform(char),

    #[error("symbol {0:?} is not in the machine alphabet")]
    ForeignSymbol(char),

    #[error("operation requires the constraint in formula form")]
    FormulaRequired,

    #[error("congruence modulus must be at least 2, got {0}")]
    BadModulus(u64),

    #[error("word of length {len} is not longer than the pumping length {pump}")]
    WordTooShort { len: usize, pump: usize },

    #[error("word is not in the machine language")]
    NotInLanguage,

    #[error("path is not connected or uses an invalid transition")]
    InvalidPath,

    #[error("no corpus entry named {0:?}")]
    UnknownEntry(String),

    #[error("invalid machine: {0}")]
    InvalidMachine(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Node budget for search procedures (Hilbert completion, run enumeration,
/// formula expansion). Exceeding it aborts with [`Error::ResourceLimit`];
/// nothing is ever silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 2_000_000;

    pub fn new(nodes: u64) -> Self {
        Budget { nodes }
    }

    /// A counter that debits this budget and fails once it runs dry.
    pub fn meter(&self, what: &'static str) -> Meter {
        Meter {
            left: self.nodes,
            what,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: Self::DEFAULT_NODES,
        }
    }
}

/// Mutable spend-down of a [`Budget`].
#[derive(Debug)]
pub struct Meter {
    left: u64,
    what: &'static str,
}

impl Meter {
    /// Spends one node; errors when the budget is exhausted.
    pub fn tick(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::ResourceLimit(self.what));
        }
        self.left -= 1;
        Ok(())
    }
}
