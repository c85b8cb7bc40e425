use num_complex::Complex64;

use super::{dimension, triad::Gate, SpinTriad};
use crate::{Error, Result};

/// Default cap on dense pure states (2^24 amplitudes, 256 MiB).
pub const MAX_PURE_QUBITS: usize = 24;
/// Default cap on dense density matrices (4096 × 4096).
pub const MAX_DENSITY_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;

/// Dense amplitude vector over the `2^N` basis.
///
/// States produced by operators (for example [`ladder_apply`](super::ladder_apply)) are
/// not re-normalized; [`PureState::new`] is the validating constructor.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Normalized state; fails if `Σ|a|²` is off by more than `1e−12`.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::unnormalized(n_qubits, amplitudes)?;
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Any amplitude vector of the right length.
    pub fn unnormalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = dimension(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        if amplitudes.len() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                actual: amplitudes.len(),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::NotNormalized(0.0));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::unnormalized(n_qubits, amplitudes)
    }

    pub fn basis(n_qubits: usize, bits: usize) -> Result<Self> {
        let dim = dimension(n_qubits, MAX_PURE_QUBITS, "pure state")?;
        if bits >= dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                actual: bits,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[bits] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::SizeMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Same state written in the eigenbasis of `σ_ξ` for the given frame.
    pub fn to_frame(&self, triad: &SpinTriad) -> PureState {
        if triad.is_z() {
            return self.clone();
        }
        let gate = triad.frame_gate();
        let mut amplitudes = self.amplitudes.clone();
        for site in 0..self.n_qubits {
            apply_gate(&gate, site, &mut amplitudes);
        }
        PureState {
            n_qubits: self.n_qubits,
            amplitudes,
        }
    }

    /// Multiplies by a global phase so the largest-magnitude amplitude is real positive.
    /// Ties go to the lowest index.
    pub fn fix_global_phase(&mut self) {
        fix_phase(&mut self.amplitudes);
    }
}

pub(crate) fn fix_phase(amplitudes: &mut [Complex64]) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (i, a) in amplitudes.iter().enumerate() {
        let n = a.norm_sqr();
        if n > best_norm * (1.0 + 1e-12) {
            best = i;
            best_norm = n;
        }
    }
    if best_norm > 0.0 {
        let phase = amplitudes[best].conj() / amplitudes[best].norm();
        amplitudes.iter_mut().for_each(|a| *a *= phase);
    }
}

/// Applies a single-qubit gate to qubit `site` of a dense vector in place.
pub(crate) fn apply_gate(gate: &Gate, site: usize, amplitudes: &mut [Complex64]) {
    let bit = 1usize << site;
    for lo in 0..amplitudes.len() {
        if lo & bit != 0 {
            continue;
        }
        let hi = lo | bit;
        let (a0, a1) = (amplitudes[lo], amplitudes[hi]);
        amplitudes[lo] = gate[0][0] * a0 + gate[0][1] * a1;
        amplitudes[hi] = gate[1][0] * a0 + gate[1][1] * a1;
    }
}

/// Dense Hermitian, unit-trace matrix `ρ_nm`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    dim: usize,
    elements: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity and unit trace. Positivity is checked where an
    /// eigendecomposition is computed anyway (see [`crate::qfi_spectral`]).
    pub fn new(n_qubits: usize, elements: Vec<Complex64>) -> Result<Self> {
        let dim = dimension(n_qubits, MAX_DENSITY_QUBITS, "density matrix")?;
        if elements.len() != dim * dim {
            return Err(Error::SizeMismatch {
                expected: dim * dim,
                actual: elements.len(),
            });
        }
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in r..dim {
                worst = worst.max((elements[r * dim + c] - elements[c * dim + r].conj()).norm());
            }
        }
        if worst > HERMITIAN_TOL {
            return Err(Error::NotHermitian(worst));
        }
        let trace: f64 = (0..dim).map(|i| elements[i * dim + i].re).sum();
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(Error::BadTrace(trace));
        }
        Ok(Self {
            n_qubits,
            dim,
            elements,
        })
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        let dim = dimension(state.n_qubits(), MAX_DENSITY_QUBITS, "density matrix")?;
        let a = state.amplitudes();
        let mut elements = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                elements.push(a[r] * a[c].conj());
            }
        }
        Ok(Self {
            n_qubits: state.n_qubits(),
            dim,
            elements,
        })
    }

    /// `Σ_j p_j |ψ_j⟩⟨ψ_j|`; weights are renormalized to sum to one.
    pub fn mixture(components: &[(f64, PureState)]) -> Result<Self> {
        let first = components.first().ok_or(Error::NoQubits)?;
        let n_qubits = first.1.n_qubits();
        let dim = dimension(n_qubits, MAX_DENSITY_QUBITS, "density matrix")?;
        let total: f64 = components.iter().map(|(p, _)| p).sum();
        let mut elements = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (p, psi) in components {
            if psi.n_qubits() != n_qubits {
                return Err(Error::SizeMismatch {
                    expected: n_qubits,
                    actual: psi.n_qubits(),
                });
            }
            let w = p / total;
            let a = psi.amplitudes();
            for r in 0..dim {
                for c in 0..dim {
                    elements[r * dim + c] += a[r] * a[c].conj() * w;
                }
            }
        }
        Ok(Self {
            n_qubits,
            dim,
            elements,
        })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let dim = dimension(n_qubits, MAX_DENSITY_QUBITS, "density matrix")?;
        let mut elements = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            elements[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self {
            n_qubits,
            dim,
            elements,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[Complex64] {
        &self.elements
    }

    /// `ρ_{row,col}`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.elements[row * self.dim + col]
    }

    /// `V^{⊗N} ρ V^{†⊗N}` with `V` the frame gate of `triad`.
    pub fn to_frame(&self, triad: &SpinTriad) -> DensityMatrix {
        if triad.is_z() {
            return self.clone();
        }
        let gate = triad.frame_gate();
        let conj_gate = [
            [gate[0][0].conj(), gate[0][1].conj()],
            [gate[1][0].conj(), gate[1][1].conj()],
        ];
        let dim = self.dim;
        let mut m = self.elements.clone();
        let mut column = vec![Complex64::new(0.0, 0.0); dim];
        for site in 0..self.n_qubits {
            // rows: ρ ← V ρ, applied column by column
            for c in 0..dim {
                for r in 0..dim {
                    column[r] = m[r * dim + c];
                }
                apply_gate(&gate, site, &mut column);
                for r in 0..dim {
                    m[r * dim + c] = column[r];
                }
            }
            // columns: ρ ← ρ V†, i.e. each row transforms with V*
            for r in 0..dim {
                apply_gate(&conj_gate, site, &mut m[r * dim..(r + 1) * dim]);
            }
        }
        DensityMatrix {
            n_qubits: self.n_qubits,
            dim,
            elements: m,
        }
    }
}
