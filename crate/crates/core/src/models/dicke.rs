//! Permutation-symmetric states `Σ_k c_k |D_k⟩`, `|D_k⟩` the normalized Dicke state with
//! `k` spins up along `z`.
//!
//! For a symmetric state the correlator depends only on `(n₊, n₋)`. With `r = N − q`
//! untouched qubits, `j` of them up,
//!
//! ```text
//! Tr[ρ R L] = Σ_j C(r, j) c_{n₋+j} c*_{n₊+j} / √(C(N, n₋+j) C(N, n₊+j))
//! ```
//!
//! and the weight in front of each term never exceeds one. Binomials are handled
//! in log space so `N` up to a few thousand is fine.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bits::{ln_binomial, ln_factorials};
use crate::correlators::{CorrelatorResult, CorrelatorSource, CorrelatorSpec};
use crate::qfi::PureSpinState;
use crate::{Error, PureState, Result, SpinTriad};

const NORM_TOL: f64 = 1e-12;
/// Largest `N` expanded into the full `2^N` space.
pub const DICKE_TO_FULL_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    n_atoms: usize,
    amplitudes: Vec<Complex64>,
}

impl DickeState {
    pub fn new(n_atoms: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::NoQubits);
        }
        if amplitudes.len() != n_atoms + 1 {
            return Err(Error::SizeMismatch {
                expected: n_atoms + 1,
                actual: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n_atoms, amplitudes })
    }

    pub fn normalized(n_atoms: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::NotNormalized(0.0));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Self::new(n_atoms, amplitudes)
    }

    /// `(|D_0⟩ + |D_N⟩)/√2`.
    pub fn ghz(n_atoms: usize) -> Result<Self> {
        let mut a = vec![Complex64::new(0.0, 0.0); n_atoms + 1];
        a[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        a[n_atoms] += Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::normalized(n_atoms, a)
    }

    /// All spins along `+x`: `c_k = √C(N,k) / 2^{N/2}`.
    pub fn coherent_x(n_atoms: usize) -> Result<Self> {
        let lf = ln_factorials(n_atoms);
        let half_n_ln2 = 0.5 * n_atoms as f64 * std::f64::consts::LN_2;
        let a = (0..=n_atoms)
            .map(|k| Complex64::new((0.5 * ln_binomial(&lf, n_atoms, k) - half_n_ln2).exp(), 0.0))
            .collect();
        Self::normalized(n_atoms, a)
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Coherence bound `2 Σ_kl (k − l)² |c_k|² |c_l|²` along `z`.
    pub fn bound_coherence(&self) -> f64 {
        let p: Vec<f64> = self.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let mut total = 0.0;
        for (k, pk) in p.iter().enumerate() {
            for (l, pl) in p.iter().enumerate() {
                let d = k as f64 - l as f64;
                total += d * d * pk * pl;
            }
        }
        2.0 * total
    }

    fn check_order(&self, n_plus: usize, n_minus: usize) -> Result<()> {
        let order = n_plus + n_minus;
        if order == 0 || order > self.n_atoms {
            return Err(Error::InvalidOrder {
                order,
                n_qubits: self.n_atoms,
            });
        }
        Ok(())
    }
}

/// Log-magnitudes of `c_k / √C(N, k)` with their phases, and `ln j!` up to `N`.
struct Prepared {
    n: usize,
    ln_fact: Vec<f64>,
    ln_mag: Vec<f64>,
    phase: Vec<Complex64>,
}

/// Terms this far (in natural log) below the largest one in a trace are dropped; they
/// sit below double-precision resolution of the sum.
const LN_DROP: f64 = 40.0;

impl Prepared {
    fn new(state: &DickeState) -> Self {
        let n = state.n_atoms;
        let ln_fact = ln_factorials(n);
        let (ln_mag, phase) = state
            .amplitudes
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let m = c.norm();
                if m == 0.0 {
                    (f64::NEG_INFINITY, Complex64::new(0.0, 0.0))
                } else {
                    (m.ln() - 0.5 * ln_binomial(&ln_fact, n, k), c / m)
                }
            })
            .unzip();
        Self {
            n,
            ln_fact,
            ln_mag,
            phase,
        }
    }

    /// `Tr[ρ R L]` for any site sets of sizes `(n₊, n₋)`, as `(m, s)` with value `m·e^s`.
    /// Keeping the scale apart avoids subnormal arithmetic for very small traces.
    /// `buf` is scratch space.
    fn scaled_trace_with(&self, n_plus: usize, n_minus: usize, buf: &mut Vec<f64>) -> (Complex64, f64) {
        let r = self.n - n_plus - n_minus;
        let lf = &self.ln_fact[..=r];
        let lr = lf[r];
        buf.clear();
        buf.extend(
            lf.iter()
                .zip(lf.iter().rev())
                .zip(&self.ln_mag[n_minus..=n_minus + r])
                .zip(&self.ln_mag[n_plus..=n_plus + r])
                .map(|(((fj, frj), ma), mb)| lr - fj - frj + ma + mb),
        );
        let top = buf.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let pa = &self.phase[n_minus..=n_minus + r];
        let pb = &self.phase[n_plus..=n_plus + r];
        let mut m = Complex64::new(0.0, 0.0);
        for ((l, a), b) in buf.iter().zip(pa).zip(pb) {
            let l = l - top;
            if l > -LN_DROP {
                m += a * b.conj() * l.exp();
            }
        }
        (m, top)
    }

    fn trace(&self, n_plus: usize, n_minus: usize) -> Complex64 {
        let (m, s) = self.scaled_trace_with(n_plus, n_minus, &mut Vec::new());
        m * s.exp()
    }
}

impl PureSpinState for DickeState {
    fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `(ξ_x J_x + ξ_y J_y + ξ_z J_z)|ψ⟩` via `J± = J_x ± iJ_y`.
    fn apply_generator(&self, triad: &SpinTriad) -> Vec<Complex64> {
        let n = self.n_atoms;
        let [nx, ny, nz] = triad.xi();
        let c = &self.amplitudes;
        let i = Complex64::i();
        // J_x = (J+ + J−)/2, J_y = (J+ − J−)/(2i): coefficient of J+ is (nx − i ny)/2
        let plus_coeff = (Complex64::new(nx, 0.0) - i * ny) * 0.5;
        let minus_coeff = (Complex64::new(nx, 0.0) + i * ny) * 0.5;
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            out[k] += c[k] * (nz * (k as f64 - n as f64 / 2.0));
            if k < n {
                // J+|k⟩ = √((N−k)(k+1)) |k+1⟩
                let m = (((n - k) * (k + 1)) as f64).sqrt();
                out[k + 1] += plus_coeff * c[k] * m;
            }
            if k > 0 {
                // J−|k⟩ = √(k(N−k+1)) |k−1⟩
                let m = ((k * (n - k + 1)) as f64).sqrt();
                out[k - 1] += minus_coeff * c[k] * m;
            }
        }
        out
    }
}

impl CorrelatorSource for DickeState {
    fn n_qubits(&self) -> usize {
        self.n_atoms
    }

    fn ladder_trace(&self, spec: &CorrelatorSpec) -> Result<Complex64> {
        self.check_order(spec.n_plus(), spec.n_minus())?;
        Ok(Prepared::new(self).trace(spec.n_plus(), spec.n_minus()))
    }
}

/// Amplitude of `|b⟩` is `c_{popcount(b)} / √C(N, popcount(b))`.
pub fn dicke_to_full(state: &DickeState) -> Result<PureState> {
    let n = state.n_atoms;
    if n > DICKE_TO_FULL_MAX {
        return Err(Error::TooManyQubits {
            what: "Dicke expansion",
            n_qubits: n,
            cap: DICKE_TO_FULL_MAX,
        });
    }
    let lf = ln_factorials(n);
    let amps = (0..1usize << n)
        .map(|b| {
            let k = b.count_ones() as usize;
            state.amplitudes[k] * (-0.5 * ln_binomial(&lf, n, k)).exp()
        })
        .collect();
    PureState::unnormalized(n, amps)
}

/// `E` for any raised/lowered site sets of sizes `(n_plus, n_minus)`.
pub fn symmetric_correlator(state: &DickeState, n_plus: usize, n_minus: usize) -> Result<CorrelatorResult> {
    state.check_order(n_plus, n_minus)?;
    let t = Prepared::new(state).trace(n_plus, n_minus);
    CorrelatorResult::new(t.norm_sqr(), n_plus + n_minus)
}

/// Correlator-sum bound for a symmetric state, with the inner set sum replaced by
/// `C(N, n₊) C(N − n₊, n₋) E(n₊, n₋)`. `max_order` truncates as in
/// [`crate::bound_correlator_sum`].
///
/// Parallel over `n₊`; the per-`n₊` partial sums are added in order.
pub fn symmetric_bound_correlator_sum(state: &DickeState, max_order: Option<usize>) -> Result<f64> {
    let n = state.n_atoms;
    let max_q = max_order.unwrap_or(n).min(n);
    let prep = Prepared::new(state);
    let lf = &prep.ln_fact;
    let ln2 = std::f64::consts::LN_2;
    let partials: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|np| {
            let mut acc = 0.0;
            let mut buf = Vec::with_capacity(n + 1);
            if np > max_q {
                return acc;
            }
            for nm in 0..=(n - np).min(max_q.saturating_sub(np)) {
                if np == nm {
                    continue;
                }
                let (m, scale) = prep.scaled_trace_with(np, nm, &mut buf);
                let m2 = m.norm_sqr();
                if m2 == 0.0 {
                    continue;
                }
                let q = np + nm;
                let ln_mult = ln_binomial(lf, n, np) + ln_binomial(lf, n - np, nm) - (n - q) as f64 * ln2;
                let d = np as f64 - nm as f64;
                acc += 2.0 * d * d * (ln_mult + m2.ln() + 2.0 * scale).exp();
            }
            acc
        })
        .collect();
    let total: f64 = partials.iter().sum();
    if !total.is_finite() {
        return Err(Error::Overflow(n));
    }
    Ok(total)
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::{bell_correlator, random, CorrelatorSpec};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn closed_form_matches_full_space(seed in any::<u64>(), n in 1usize..=7, split in any::<(u16, u16)>()) {
            let d = random::dicke_state(n, &mut random::seeded(seed)).unwrap();
            let np = split.0 as usize % (n + 1);
            let nm = split.1 as usize % (n - np + 1);
            prop_assume!(np + nm > 0);
            let full = dicke_to_full(&d).unwrap();
            let plus = (1usize << np) - 1;
            let minus = ((1usize << nm) - 1) << (n - nm);
            let oracle = bell_correlator(&full, &CorrelatorSpec::from_masks(plus, minus).unwrap()).unwrap().value;
            prop_assert!((symmetric_correlator(&d, np, nm).unwrap().value - oracle).abs() < 1e-13);
        }

        #[test]
        fn correlator_sum_is_below_coherence_bound(seed in any::<u64>(), n in 1usize..=40) {
            let d = random::dicke_state(n, &mut random::seeded(seed)).unwrap();
            let sum = symmetric_bound_correlator_sum(&d, None).unwrap();
            prop_assert!(sum >= 0.0);
            prop_assert!(sum <= d.bound_coherence() * (1.0 + 1e-9) + 1e-9);
        }
    }
}
