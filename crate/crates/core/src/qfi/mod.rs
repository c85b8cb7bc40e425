//! Quantum Fisher information and its chain of lower bounds
//!
//! ```text
//! F_q ≥ 4(Tr[ρ²h²] − Tr[(ρh)²]) = 2 Σ_nm (n↑ − m↑)² |ρ_nm|² ≥ 2 Σ (n₊−n₋)²/2^{N−q} Σ E_{S+,S−}
//! ```

mod bounds;
mod derivative;

pub use bounds::{
    bound_coherence, bound_correlator_sum, bound_trace, heisenberg_implication, pairing_decomposition,
    QubitState, MAX_CORRELATOR_SUM_QUBITS,
};
pub use derivative::derivative_scan;

use num_complex::Complex64;

use crate::hilbert::{apply_gate, pauli_gate};
use crate::linalg;
use crate::{DensityMatrix, Error, PureState, Result, SpinTriad};

/// Eigenvalues below this are treated as numerical noise around zero.
const PSD_TOL: f64 = 1e-10;
/// Pairs with `p_i + p_j` below this are the null space and carry no information.
const NULL_PAIR: f64 = 1e-12;

/// Dense `h = ½ Σ_k σ_ξ^(k)` in the computational frame, row-major.
pub(crate) fn generator_matrix(n_qubits: usize, triad: &SpinTriad) -> Vec<Complex64> {
    let dim = 1usize << n_qubits;
    let gate = pauli_gate(triad.xi());
    let mut h = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut column = vec![Complex64::new(0.0, 0.0); dim];
    for c in 0..dim {
        for site in 0..n_qubits {
            column.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            column[c] = Complex64::new(0.5, 0.0);
            apply_gate(&gate, site, &mut column);
            let bit = 1usize << site;
            for r in [c & !bit, c | bit] {
                h[r * dim + c] += column[r];
            }
        }
    }
    h
}

/// Spectral QFI `2 Σ_ij (p_i − p_j)²/(p_i + p_j) |⟨ψ_i|h|ψ_j⟩|²`.
///
/// Fails with [`Error::NotPositiveSemidefinite`] if an eigenvalue of `ρ` is below `−1e−10`.
pub fn qfi_spectral(rho: &DensityMatrix, triad: &SpinTriad) -> Result<f64> {
    let dim = rho.dim();
    let eig = linalg::eigh_hermitian(rho.elements(), dim)?;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite(lowest));
        }
    }
    let h = generator_matrix(rho.n_qubits(), triad);
    let h_eig = linalg::to_eigenbasis(&eig, &h);
    let p = &eig.values;
    let mut total = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let sum = p[i] + p[j];
            if sum < NULL_PAIR {
                continue;
            }
            let diff = p[i] - p[j];
            total += diff * diff / sum * h_eig[i * dim + j].norm_sqr();
        }
    }
    Ok(2.0 * total)
}

/// Pure states that can apply the collective generator to themselves.
pub trait PureSpinState {
    fn amplitudes(&self) -> &[Complex64];

    /// `h|ψ⟩` with `h = ½ Σ_k σ_ξ^(k)`.
    fn apply_generator(&self, triad: &SpinTriad) -> Vec<Complex64>;
}

impl PureSpinState for PureState {
    fn amplitudes(&self) -> &[Complex64] {
        PureState::amplitudes(self)
    }

    fn apply_generator(&self, triad: &SpinTriad) -> Vec<Complex64> {
        crate::hilbert::collective_generator_apply_along(self, triad)
    }
}

/// Pure-state QFI `4(⟨h²⟩ − ⟨h⟩²)`.
pub fn qfi_pure<S: PureSpinState + ?Sized>(psi: &S, triad: &SpinTriad) -> f64 {
    let amps = psi.amplitudes();
    let h_psi = psi.apply_generator(triad);
    let mean: Complex64 = amps.iter().zip(&h_psi).map(|(a, b)| a.conj() * b).sum();
    let second: f64 = h_psi.iter().map(|v| v.norm_sqr()).sum();
    4.0 * (second - mean.re * mean.re)
}

/// QFI together with every bound of the chain for one mixed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub qfi: f64,
    pub bound_trace: f64,
    pub bound_coherence: f64,
    /// Absent when the correlator sum was not evaluated.
    pub bound_correlator_sum: Option<f64>,
    pub shot_noise: f64,
    pub heisenberg: f64,
}

impl BoundReport {
    /// Evaluates the whole chain. `max_order` truncates the correlator sum, see
    /// [`bound_correlator_sum`].
    pub fn compute(rho: &DensityMatrix, triad: &SpinTriad, max_order: Option<usize>) -> Result<Self> {
        let n = rho.n_qubits() as f64;
        let bound_correlator_sum = if rho.n_qubits() <= MAX_CORRELATOR_SUM_QUBITS || max_order.is_some() {
            Some(bound_correlator_sum(rho, triad, max_order)?)
        } else {
            None
        };
        Ok(Self {
            qfi: qfi_spectral(rho, triad)?,
            bound_trace: bound_trace(rho, triad),
            bound_coherence: bound_coherence(rho, triad),
            bound_correlator_sum,
            shot_noise: n,
            heisenberg: n * n,
        })
    }

    /// `qfi ≥ trace − slack`, `|coherence − trace| ≤ equality_tol`,
    /// `coherence ≥ correlator_sum − slack`.
    pub fn chain_holds(&self, slack: f64, equality_tol: f64) -> bool {
        self.qfi >= self.bound_trace - slack
            && (self.bound_coherence - self.bound_trace).abs() <= equality_tol
            && self
                .bound_correlator_sum
                .is_none_or(|s| self.bound_coherence >= s - slack)
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::random;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chain_holds_for_random_mixed_states(seed in any::<u64>(), n in 1usize..=4, rank in 1usize..=4, axis in prop::array::uniform3(-1.0f64..1.0)) {
            prop_assume!(axis.iter().map(|x| x * x).sum::<f64>() > 1e-3);
            let rho = random::density_matrix(n, rank, &mut random::seeded(seed)).unwrap();
            let triad = SpinTriad::from_axis(axis).unwrap();
            let report = BoundReport::compute(&rho, &triad, None).unwrap();
            prop_assert!(report.chain_holds(1e-9, 1e-10), "{report:?}");
            prop_assert!(report.qfi <= report.heisenberg + 1e-9);
        }

        #[test]
        fn pure_qfi_is_rotation_consistent(seed in any::<u64>(), n in 1usize..=5) {
            // F(ξ) computed directly equals the z-frame value of the rotated state
            let psi = random::pure_state(n, &mut random::seeded(seed)).unwrap();
            let triad = SpinTriad::from_axis([0.2, -0.7, 0.4]).unwrap();
            let direct = qfi_pure(&psi, &triad);
            let framed = qfi_pure(&psi.to_frame(&triad), &SpinTriad::z());
            prop_assert!((direct - framed).abs() < 1e-9);
        }
    }
}
