//! Signaling experiments on qubit chains with an exact lightcone.

mod circuit;
mod fermi;
mod sorkin;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use circuit::{layer_sites, operator_support, BrickWallCircuit, CircuitParams, Gate, MAX_QUBITS};
pub use fermi::{
    deviation_tsv, fermi_deviation_curve, fermi_two_atom, reduced_state, trace_distance,
    FermiSetup,
};
pub use sorkin::{
    ground_pair, sorkin_control_gap, sorkin_run, sorkin_signaling_gap, O2Measurement, Outcome,
    SorkinSetup,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
