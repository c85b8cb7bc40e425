//! Fixtures for the criterion benchmarks in `benches/kernels.rs`.

use bellqfi::{two_mode_ground_state, DickeState, PureState, TwoModeParams};

/// Deterministic dense state with every amplitude non-zero.
pub fn spread_state(n_qubits: usize) -> PureState {
    let amps = (0..1usize << n_qubits)
        .map(|b| {
            let x = b as f64 * 0.618_033_988_749_895;
            bellqfi::Complex64::new(1.0 + x.sin(), x.cos())
        })
        .collect();
    PureState::normalized(n_qubits, amps).expect("non-zero amplitudes")
}

/// Two-mode ground state near the transition, where the correlator sum has the most
/// non-negligible terms.
pub fn critical_dicke(n_atoms: usize) -> DickeState {
    two_mode_ground_state(&TwoModeParams::new(n_atoms, -1.0).expect("valid size"))
        .expect("tridiagonal solve")
        .state
}
