//! Many-body Bell correlators and quantum Fisher information for qubit ensembles.
//!
//! The crate covers four layers:
//!
//! * [`hilbert`]: bit-indexed N-qubit states, Pauli and ladder operators, the
//!   collective generator `h = ½ Σ_k σ_ξ^(k)` and the GHZ / product reference states.
//! * [`correlators`]: the Bell correlator `E = |Tr[ρ R L]|²` and the nonlocality-depth
//!   ladder it witnesses.
//! * [`qfi`]: the quantum Fisher information and its descending chain of lower bounds,
//!   ending with the bound written as a weighted sum over all Bell correlators.
//! * [`models`]: ground states of the open transverse-field Ising chain and of the
//!   two-mode collective-spin model, the latter in the permutation-symmetric subspace.
//!
//! [`sweep`] and [`verify`] build the parameter sweeps and property batteries used by
//! the command line tool on top of these.
//!
//! Basis convention: bit `k` of a basis index is `1` when qubit `k` points up along the
//! generator axis, so `popcount(b)` is the number of up spins and `h|b⟩ = (popcount(b) − N/2)|b⟩`.

pub mod bits;
pub mod correlators;
mod error;
pub mod hilbert;
pub mod linalg;
pub mod models;
pub mod qfi;
pub mod random;
pub mod sweep;
pub mod verify;

pub use num_complex::Complex64;

pub use correlators::{
    bell_correlator, depth_threshold, nonlocality_depth, CorrelatorResult, CorrelatorSource,
    CorrelatorSpec,
};
pub use error::{Error, Result};
pub use hilbert::{
    collective_generator_apply, generator_eigenvalue, ghz_state, ladder_apply, pauli_apply,
    product_plus_state, Axis, BasisIndex, DensityMatrix, PureState, SiteSet, SpinTriad,
};
pub use models::{
    dicke_to_full, ising_ground_state, ising_matvec, symmetric_bound_correlator_sum,
    symmetric_correlator, two_mode_ground_state, two_mode_hamiltonian, DickeState,
    GroundState, IsingParams, IsingSolver, TwoModeParams, UConvention,
};
pub use qfi::{
    bound_coherence, bound_correlator_sum, bound_trace, derivative_scan,
    heisenberg_implication, qfi_pure, qfi_spectral, BoundReport,
};
