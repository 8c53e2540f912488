//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::layout::QubitId;

/// Everything that can go wrong while building, transforming, simulating or
/// verifying a circuit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A size parameter is outside the range a builder accepts.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A qubit index does not exist in the circuit, layout or state.
    #[error("qubit {qubit} out of range for {count} qubits")]
    QubitOutOfRange { qubit: QubitId, count: usize },

    /// A gate names the same qubit as control and target.
    #[error("gate uses qubit {0} as both control and target")]
    ControlIsTarget(QubitId),

    /// Two grid positions or labels collide inside one layout.
    #[error("layout conflict: {0}")]
    LayoutConflict(String),

    /// Two circuits (or a circuit and a state) disagree on their qubit count.
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    /// An operation needs a layout but the circuit carries none.
    #[error("circuit has no layout attached")]
    MissingLayout,

    /// An operation needs a lowered circuit but macro gates are present.
    #[error("circuit still contains macro gates (SWAP or CSXDG)")]
    NotLowered,

    /// A register name is unknown.
    #[error("unknown register `{0}`")]
    UnknownRegister(String),

    /// A register is entangled with the rest of the state and has no single value.
    #[error("register `{0}` is not classically definite")]
    NotDefinite(String),

    /// A value does not fit the width it has to be written into.
    #[error("value {value} does not fit in {width} bits")]
    WidthOverflow { value: i128, width: usize },

    /// Amplitudes of a superposition do not have unit norm.
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    /// The same basis pattern appears twice in a superposition.
    #[error("duplicate basis pattern {0:#b}")]
    DuplicatePattern(u128),

    /// Dense matrices and basis indices are limited in qubit count.
    #[error("too many qubits for this operation: {0}")]
    TooManyQubits(usize),

    /// A malformed line in the circuit text format.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A verification request exceeds the exhaustive-enumeration budget.
    #[error("verification bounds exceeded: {0}")]
    BoundsExceeded(String),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
