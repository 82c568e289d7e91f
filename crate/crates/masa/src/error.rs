//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A tower level above the configured maximum was requested.
    #[error("level {requested} exceeds the configured maximum {limit} (set MASA_MAX_LEVEL to raise it)")]
    LevelLimit { requested: u32, limit: u32 },

    #[error("element {element} is out of range for level {level} (group order {order})")]
    ElementRange { element: u64, level: u32, order: u64 },

    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    /// The one-element group has no generator of full order.
    #[error("the generator is undefined at level 0")]
    DegenerateLevel,

    #[error("input vector must contain at least one entry")]
    EmptyInput,

    #[error("cannot step a final configuration")]
    StepFinal,

    /// The head would move to cell 0 on the one-way tape.
    #[error("machine fault: head moved off the left tape end at step {step}")]
    HeadUnderflow { step: u64 },

    #[error("step budget of {max_steps} exhausted on input {input:?}")]
    BudgetExhausted { input: Vec<u64>, max_steps: u64 },

    #[error("word length {length} exceeds the enumeration bound {bound}")]
    EnumerationLimit { length: u32, bound: u32 },

    #[error("no computations with output {y} at input length {length}")]
    EmptyTree { y: u64, length: u32 },

    #[error("pair is not a node of the tree")]
    UnknownNode,

    #[error("input {0:?} is not an input of the tree")]
    UnknownInput(Vec<u64>),

    #[error("machine definition: {0}")]
    MachineFile(String),

    #[error("iterated exponential overflow: 2^[{m}]({x}) does not fit in 64 bits")]
    ExpOverflow { m: u32, x: u64 },

    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Process exit code convention: 1 verification/budget, 2 usage or
    /// domain error, 3 machine fault.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::HeadUnderflow { .. } => 3,
            Error::BudgetExhausted { .. } => 1,
            _ => 2,
        }
    }
}
