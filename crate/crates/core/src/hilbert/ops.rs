use num_complex::Complex64;

use super::{
    state::apply_gate,
    triad::pauli_gate,
    BasisIndex, PureState, SpinTriad,
};
use crate::{CorrelatorSpec, Error, Result};

/// Direction of a single-qubit Pauli operator `n·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    X,
    Y,
    Z,
    /// Arbitrary direction, for example one leg of a [`SpinTriad`].
    Direction([f64; 3]),
}

impl Axis {
    pub fn vector(self) -> [f64; 3] {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
            Axis::Direction(v) => v,
        }
    }
}

impl From<[f64; 3]> for Axis {
    fn from(v: [f64; 3]) -> Self {
        Axis::Direction(v)
    }
}

/// `σ_axis^(site)|state⟩`. The result is not re-normalized.
pub fn pauli_apply(axis: Axis, site: usize, state: &PureState) -> Result<PureState> {
    let n = state.n_qubits();
    if site >= n {
        return Err(Error::SiteOutOfRange { site, n_qubits: n });
    }
    let mut amplitudes = state.amplitudes().to_vec();
    apply_gate(&pauli_gate(axis.vector()), site, &mut amplitudes);
    PureState::unnormalized(n, amplitudes)
}

/// Eigenvalue `n↑ − N/2` of the collective generator on a basis state.
pub fn generator_eigenvalue(b: BasisIndex, n_qubits: usize) -> f64 {
    b.up_count() as f64 - n_qubits as f64 / 2.0
}

/// `h|state⟩` for a state already expressed in the generator eigenbasis.
pub fn collective_generator_apply(state: &PureState) -> PureState {
    let n = state.n_qubits();
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(b, a)| a * generator_eigenvalue(BasisIndex(b), n))
        .collect();
    PureState::unnormalized(n, amplitudes).expect("same shape as input")
}

/// `h|state⟩ = ½ Σ_k σ_ξ^(k)|state⟩` in the computational frame, for any axis.
pub(crate) fn collective_generator_apply_along(state: &PureState, triad: &SpinTriad) -> Vec<Complex64> {
    let gate = pauli_gate(triad.xi());
    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    let mut scratch = state.amplitudes().to_vec();
    for site in 0..state.n_qubits() {
        scratch.copy_from_slice(state.amplitudes());
        apply_gate(&gate, site, &mut scratch);
        for (o, s) in out.iter_mut().zip(&scratch) {
            *o += s * 0.5;
        }
    }
    out
}

/// `R_{S+} L_{S−}|state⟩` with `σ± = (σ_ξ₁ ± iσ_ξ₂)/2` in the generator eigenbasis.
///
/// Basis state `b` survives iff every raised bit is clear and every lowered bit is set;
/// it maps with coefficient one to `b` with those bits flipped.
pub fn ladder_apply(spec: &CorrelatorSpec, state: &PureState) -> Result<PureState> {
    spec.check(state.n_qubits())?;
    let plus = spec.plus_mask();
    let minus = spec.minus_mask();
    let touched = plus | minus;
    let mut out = vec![Complex64::new(0.0, 0.0); state.dim()];
    for (b, a) in state.amplitudes().iter().enumerate() {
        if b & touched == minus {
            out[b ^ touched] = *a;
        }
    }
    PureState::unnormalized(state.n_qubits(), out)
}

/// `(|↑…↑⟩ + |↓…↓⟩)/√2`.
pub fn ghz_state(n_qubits: usize) -> Result<PureState> {
    let mut amplitudes = PureState::basis(n_qubits, 0)?.into_amplitudes();
    let dim = amplitudes.len();
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[0] = h;
    amplitudes[dim - 1] = h;
    PureState::unnormalized(n_qubits, amplitudes)
}

/// `⊗_k (|↑⟩ + |↓⟩)/√2`, uniform amplitude `2^{−N/2}`.
pub fn product_plus_state(n_qubits: usize) -> Result<PureState> {
    let dim = PureState::basis(n_qubits, 0)?.dim();
    let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
    PureState::unnormalized(n_qubits, vec![a; dim])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SiteSet;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const UP: usize = 1;
    const DOWN: usize = 0;

    fn assert_state(actual: &PureState, expected: &[Complex64]) {
        assert_eq!(actual.dim(), expected.len());
        for (a, e) in actual.amplitudes().iter().zip(expected) {
            assert!((a - e).norm() < 1e-12, "{:?} != {:?}", actual.amplitudes(), expected);
        }
    }

    #[test]
    fn single_qubit_paulis() {
        let up = PureState::basis(1, UP).unwrap();
        let down = PureState::basis(1, DOWN).unwrap();
        assert_state(&pauli_apply(Axis::Z, 0, &up).unwrap(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_state(&pauli_apply(Axis::X, 0, &up).unwrap(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_state(&pauli_apply(Axis::Y, 0, &up).unwrap(), &[c(0.0, 1.0), c(0.0, 0.0)]);
        // σ_x σ_y = i σ_z on both basis states
        for psi in [up, down] {
            let lhs = pauli_apply(Axis::X, 0, &pauli_apply(Axis::Y, 0, &psi).unwrap()).unwrap();
            let rhs = pauli_apply(Axis::Z, 0, &psi).unwrap();
            let rhs: Vec<_> = rhs.amplitudes().iter().map(|a| a * c(0.0, 1.0)).collect();
            assert_state(&lhs, &rhs);
        }
        assert!(matches!(
            pauli_apply(Axis::X, 1, &PureState::basis(1, 0).unwrap()),
            Err(Error::SiteOutOfRange { site: 1, n_qubits: 1 })
        ));
    }

    #[test]
    fn generator_eigenvalues() {
        assert_eq!(generator_eigenvalue(BasisIndex(0b11), 2), 1.0);
        assert_eq!(generator_eigenvalue(BasisIndex(0b00), 2), -1.0);
        assert_eq!(generator_eigenvalue(BasisIndex(0b101), 3), 0.5);
        for n in 1..=10 {
            let total: f64 = (0..1usize << n).map(|b| generator_eigenvalue(BasisIndex(b), n)).sum();
            assert_eq!(total, 0.0);
        }
    }

    #[test]
    fn generator_apply_matches_pauli_sum_along_z() {
        let psi = PureState::normalized(3, (0..8).map(|k| c(k as f64, 1.0 - k as f64)).collect()).unwrap();
        let diag = collective_generator_apply(&psi);
        let summed = collective_generator_apply_along(&psi, &SpinTriad::z());
        assert_state(&diag, &summed);
    }

    #[test]
    fn ladder_examples() {
        let raise0 = CorrelatorSpec::new(SiteSet::new(vec![0]).unwrap(), SiteSet::empty()).unwrap();
        let down = PureState::basis(1, DOWN).unwrap();
        let up = PureState::basis(1, UP).unwrap();
        assert_state(&ladder_apply(&raise0, &down).unwrap(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_state(&ladder_apply(&raise0, &up).unwrap(), &[c(0.0, 0.0); 2]);

        // (|↓↑⟩ + |↑↓⟩)/√2 with qubit 0 first: |↓↑⟩ = bits 0b10, |↑↓⟩ = 0b01.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0b10] = c(h, 0.0);
        amps[0b01] = c(h, 0.0);
        let psi = PureState::new(2, amps).unwrap();
        let spec = CorrelatorSpec::new(SiteSet::new(vec![0]).unwrap(), SiteSet::new(vec![1]).unwrap()).unwrap();
        let mut expected = vec![c(0.0, 0.0); 4];
        expected[0b01] = c(h, 0.0);
        assert_state(&ladder_apply(&spec, &psi).unwrap(), &expected);
    }

    #[test]
    fn ladder_matches_operator_definition() {
        // σ± = (σ_x ± iσ_y)/2 built from pauli_apply must agree with the bit rule.
        let psi = PureState::normalized(3, (0..8).map(|k| c(1.0 + k as f64, (k * k) as f64 * 0.1)).collect()).unwrap();
        let spec = CorrelatorSpec::new(SiteSet::new(vec![0, 2]).unwrap(), SiteSet::new(vec![1]).unwrap()).unwrap();
        let sigma = |site: usize, sign: f64, v: &PureState| {
            let x = pauli_apply(Axis::X, site, v).unwrap();
            let y = pauli_apply(Axis::Y, site, v).unwrap();
            let amps = x
                .amplitudes()
                .iter()
                .zip(y.amplitudes())
                .map(|(a, b)| (a + c(0.0, sign) * b) * 0.5)
                .collect();
            PureState::unnormalized(3, amps).unwrap()
        };
        // R L |ψ⟩: lowering acts first, operators on distinct sites commute anyway.
        let v = sigma(1, -1.0, &psi);
        let v = sigma(2, 1.0, &v);
        let v = sigma(0, 1.0, &v);
        assert_state(&ladder_apply(&spec, &psi).unwrap(), v.amplitudes());
    }

    #[test]
    fn reference_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_state(&ghz_state(2).unwrap(), &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);
        assert_state(&product_plus_state(1).unwrap(), &[c(h, 0.0), c(h, 0.0)]);
        for n in 1..=12 {
            assert!((ghz_state(n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
            assert!((product_plus_state(n).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        }
        assert!(ghz_state(0).is_err());
    }
}
