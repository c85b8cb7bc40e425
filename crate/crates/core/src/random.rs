//! Seeded random states for property tests and the verification battery.
//!
//! Everything runs off [`ChaCha8Rng`], so a seed pins the exact sequence on every
//! platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{DensityMatrix, DickeState, PureState, Result};

pub type StateRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` of `seed`.
pub fn substream(seed: u64, index: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `len` complex numbers with independent standard normal parts.
pub fn complex_set<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| gaussian_complex(rng)).collect()
}

/// Haar-distributed pure state.
pub fn pure_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    PureState::normalized(n_qubits, complex_set(1 << n_qubits, rng))
}

/// Pure state with real Gaussian amplitudes.
pub fn real_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<PureState> {
    let amps = (0..1usize << n_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), 0.0))
        .collect();
    PureState::normalized(n_qubits, amps)
}

/// `G G† / Tr[G G†]` for a `2^N × rank` complex Ginibre matrix `G`.
pub fn density_matrix<R: Rng + ?Sized>(n_qubits: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    let dim = 1usize << n_qubits;
    let g = complex_set(dim * rank, rng);
    let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let v: Complex64 = (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum();
            rho[i * dim + j] = v;
            rho[j * dim + i] = v.conj();
        }
        rho[i * dim + i].im = 0.0;
    }
    let tr: f64 = (0..dim).map(|i| rho[i * dim + i].re).sum();
    rho.iter_mut().for_each(|x| *x /= tr);
    DensityMatrix::new(n_qubits, rho)
}

/// Random permutation-symmetric state with Gaussian Dicke amplitudes.
pub fn dicke_state<R: Rng + ?Sized>(n_atoms: usize, rng: &mut R) -> Result<DickeState> {
    DickeState::normalized(n_atoms, complex_set(n_atoms + 1, rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_reproduce_and_streams_differ() {
        let a = pure_state(3, &mut seeded(7)).unwrap();
        let b = pure_state(3, &mut seeded(7)).unwrap();
        assert_eq!(a, b);
        let c = pure_state(3, &mut substream(7, 1)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generated_states_are_valid() {
        let mut rng = seeded(11);
        for n in 1..=5 {
            for rank in [1, 2, 1 << n] {
                let rho = density_matrix(n, rank, &mut rng).unwrap();
                assert_eq!(rho.n_qubits(), n);
            }
            let psi = real_state(n, &mut rng).unwrap();
            assert!(psi.amplitudes().iter().all(|a| a.im == 0.0));
            assert!((dicke_state(n, &mut rng).unwrap().amplitudes().len()) == n + 1);
        }
    }
}
