//! Ground states of the two example Hamiltonians and the permutation-symmetric
//! (Dicke) machinery used for large atom numbers.

mod dicke;
mod ising;
mod two_mode;

pub use dicke::{dicke_to_full, symmetric_bound_correlator_sum, symmetric_correlator, DickeState};
pub use ising::{
    ising_ground_state, ising_ground_state_with, ising_matvec, ising_parity, IsingParams, IsingSolver,
    DENSE_CUTOFF, MAX_ISING_QUBITS,
};
pub use two_mode::{
    two_mode_ground_state, two_mode_hamiltonian, SymTridiagonal, TwoModeParams, UConvention,
    MAX_TWO_MODE_ATOMS,
};

/// Lowest eigenpair, with the residual `‖Hψ − Eψ‖` of the returned vector.
#[derive(Debug, Clone)]
pub struct GroundState<S> {
    pub energy: f64,
    pub state: S,
    pub residual: f64,
}
