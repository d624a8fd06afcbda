//! Dense statevector engine.

mod gate;
mod state;

pub use gate::{CircuitProgram, Gate, GateOp};
pub use state::{Histogram, StateVector, MAX_QUBITS};
