//! Quantum arithmetic logic units on a nearest-neighbour grid.
//!
//! Every unit (adders, two's-complement helpers, subtractor, multiplier,
//! divider) is built as an explicit gate list over `{X, CNOT, C√X}` whose
//! two-qubit gates only touch grid neighbours. A sparse statevector
//! simulator and classical oracles verify them exhaustively.
//!
//! * [`layout`]: grid placements and named registers.
//! * [`ir`]: gates, circuits, dagger, lowering, connectivity, cancellation.
//! * [`sim`]: sparse statevector simulation, generic over `f32`/`f64`.
//! * [`oracle`]: classical two's-complement reference arithmetic.
//! * [`adders`], [`complement`], [`muldiv`]: the circuit builders.
//! * [`units`]: the named catalogue of builders with their test cases.
//! * [`verify`]: exhaustive, linearity, matrix and complexity checks.
//! * [`text`]: the line-oriented circuit file format.

pub mod adders;
pub mod complement;
pub mod error;
pub mod ir;
pub mod layout;
pub mod muldiv;
pub mod oracle;
pub mod sim;
pub mod text;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use ir::{Circuit, Gate, GateCounts, GateKind};
pub use layout::{GridCoord, GridLayout, QubitId, RegisterMap};
pub use sim::{DenseMatrix, Scalar, SparseState};

/// Double-precision complex amplitude.
pub type Amplitude = num_complex::Complex<f64>;
/// Double-precision sparse state, the default for verification.
pub type State = SparseState<f64>;
/// Single-precision sparse state.
pub type State32 = SparseState<f32>;
/// Double-precision dense matrix.
pub type Matrix = DenseMatrix<f64>;
