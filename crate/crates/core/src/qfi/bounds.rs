use num_complex::Complex64;
use rayon::prelude::*;

use crate::bits::Submasks;
use crate::correlators::{density_ladder_trace, pure_ladder_trace, CorrelatorSource};
use crate::linalg;
use crate::{nonlocality_depth, DensityMatrix, Error, PureState, Result, SpinTriad};

use super::generator_matrix;

/// Largest `N` for which the untruncated correlator sum is evaluated (`Θ(4^N)` work).
pub const MAX_CORRELATOR_SUM_QUBITS: usize = 14;
/// Largest `N` accepted for a truncated correlator sum.
const MAX_TRUNCATED_SUM_QUBITS: usize = 20;

/// States whose coherences `ρ_nm` can be read in an arbitrary generator frame.
pub trait QubitState: CorrelatorSource + Sync + Sized {
    /// The same state written in the eigenbasis of `σ_ξ`.
    fn to_frame(&self, triad: &SpinTriad) -> Self;

    /// `Σ_nm (n↑ − m↑)² |ρ_nm|²` in the current basis.
    fn coherence_spread(&self) -> f64;

    /// `Tr[ρ R L]` for raise/lower bitmasks that are disjoint and in range.
    fn ladder_trace_masks(&self, plus: usize, minus: usize) -> Complex64;
}

impl QubitState for PureState {
    fn to_frame(&self, triad: &SpinTriad) -> Self {
        PureState::to_frame(self, triad)
    }

    fn coherence_spread(&self) -> f64 {
        // |ρ_nm|² = p_n p_m, so group the weights by n↑.
        let n = self.n_qubits();
        let mut by_count = vec![0.0; n + 1];
        for (b, a) in self.amplitudes().iter().enumerate() {
            by_count[b.count_ones() as usize] += a.norm_sqr();
        }
        let mut total = 0.0;
        for (k, pk) in by_count.iter().enumerate() {
            for (l, pl) in by_count.iter().enumerate() {
                let d = k as f64 - l as f64;
                total += d * d * pk * pl;
            }
        }
        total
    }

    fn ladder_trace_masks(&self, plus: usize, minus: usize) -> Complex64 {
        pure_ladder_trace(self.amplitudes(), self.n_qubits(), plus, minus)
    }
}

impl QubitState for DensityMatrix {
    fn to_frame(&self, triad: &SpinTriad) -> Self {
        DensityMatrix::to_frame(self, triad)
    }

    fn coherence_spread(&self) -> f64 {
        let dim = self.dim();
        let mut total = 0.0;
        for n in 0..dim {
            for m in 0..dim {
                let d = n.count_ones() as f64 - m.count_ones() as f64;
                total += d * d * self.get(n, m).norm_sqr();
            }
        }
        total
    }

    fn ladder_trace_masks(&self, plus: usize, minus: usize) -> Complex64 {
        density_ladder_trace(self, plus, minus)
    }
}

/// `4(Tr[ρ²h²] − Tr[(ρh)²])`, from dense products in the computational frame.
pub fn bound_trace(rho: &DensityMatrix, triad: &SpinTriad) -> f64 {
    let dim = rho.dim();
    let h = generator_matrix(rho.n_qubits(), triad);
    let rho_h = linalg::matmul(rho.elements(), &h, dim);
    let rho_sq = linalg::matmul(rho.elements(), rho.elements(), dim);
    let h_sq = linalg::matmul(&h, &h, dim);
    let mut first = Complex64::new(0.0, 0.0);
    let mut second = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            first += rho_sq[i * dim + j] * h_sq[j * dim + i];
            second += rho_h[i * dim + j] * rho_h[j * dim + i];
        }
    }
    4.0 * (first.re - second.re)
}

/// `2 Σ_nm (n↑ − m↑)² |ρ_nm|²` with `ρ` written in the generator eigenbasis.
pub fn bound_coherence<S: QubitState>(state: &S, triad: &SpinTriad) -> f64 {
    2.0 * state.to_frame(triad).coherence_spread()
}

/// The QFI lower bound as a sum over every Bell correlator:
///
/// `2 Σ_{n₊,n₋} (n₊ − n₋)²/2^{N−(n₊+n₋)} Σ_{S+,S−} E_{S+,S−}`.
///
/// Set pairs are enumerated as submasks of each touched-qubit mask; every `Tr[ρRL]`
/// costs `O(2^{N−q})`, so the full sum is `Θ(4^N)` and is refused above
/// [`MAX_CORRELATOR_SUM_QUBITS`] unless truncated.
///
/// `max_order` keeps only terms with `n₊ + n₋ ≤ max_order`. All terms are non-negative,
/// so a truncated sum is still a lower bound on the QFI, just a weaker one.
///
/// The outer loop runs on the rayon pool; partial sums are per touched mask and are
/// added in mask order, so the result does not depend on the thread count.
pub fn bound_correlator_sum<S: QubitState>(state: &S, triad: &SpinTriad, max_order: Option<usize>) -> Result<f64> {
    let n = state.n_qubits();
    let cap = if max_order.is_some() {
        MAX_TRUNCATED_SUM_QUBITS
    } else {
        MAX_CORRELATOR_SUM_QUBITS
    };
    if n > cap {
        return Err(Error::TooManyQubits {
            what: "correlator-sum bound",
            n_qubits: n,
            cap,
        });
    }
    let framed = state.to_frame(triad);
    let max_q = max_order.unwrap_or(n).min(n);
    // weight[n₊][n₋] = 2 (n₊ − n₋)² / 2^{N−q}
    let weight: Vec<Vec<f64>> = (0..=n)
        .map(|np| {
            (0..=n - np)
                .map(|nm| {
                    let d = np as f64 - nm as f64;
                    2.0 * d * d * 0.5f64.powi((n - np - nm) as i32)
                })
                .collect()
        })
        .collect();
    let partials: Vec<f64> = (1usize..1 << n)
        .into_par_iter()
        .map(|touched| {
            let q = touched.count_ones() as usize;
            if q > max_q {
                return 0.0;
            }
            Submasks::of(touched)
                .map(|plus| {
                    let np = plus.count_ones() as usize;
                    let w = weight[np][q - np];
                    if w == 0.0 {
                        0.0
                    } else {
                        w * framed.ladder_trace_masks(plus, touched ^ plus).norm_sqr()
                    }
                })
                .sum()
        })
        .collect();
    Ok(partials.iter().sum())
}

/// Guaranteed QFI floor `N²/2^{m+1}` from the full-`N` correlator, where `m` is the
/// smallest integer with `E_{N,0} > ¼·2^{−(m+1)}` (at least `N − m` qubits are
/// Bell-correlated). Zero when no nonlocality is witnessed.
pub fn heisenberg_implication(e_full: f64, n_qubits: usize) -> Result<f64> {
    let depth = nonlocality_depth(e_full, n_qubits)?;
    if depth == 0 {
        return Ok(0.0);
    }
    let m = n_qubits - depth;
    let n = n_qubits as f64;
    Ok(n * n * 0.5f64.powi(m as i32 + 1))
}

/// Pairwise sum/difference decomposition of `2^n` complex numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingSplit {
    /// `Σ|a_i|²`.
    pub sum_of_squares: f64,
    /// `2^{−n} Σ_s |Σ_i s_i a_i|²` over all sign patterns of the recursive pairing.
    pub pattern_total: f64,
    /// The all-plus pattern alone, `2^{−n}|Σ a_i|²`.
    pub leading: f64,
}

/// Recursive sum/difference pairing of `2^n` numbers (a Walsh-Hadamard transform).
///
/// `sum_of_squares == pattern_total` (up to rounding) and dropping every pattern but the
/// first gives `sum_of_squares ≥ leading`.
pub fn pairing_decomposition(values: &[Complex64]) -> Result<PairingSplit> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(Error::SizeMismatch {
            expected: len.next_power_of_two(),
            actual: len,
        });
    }
    let mut t = values.to_vec();
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for i in block..block + half {
                let (a, b) = (t[i], t[i + half]);
                t[i] = a + b;
                t[i + half] = a - b;
            }
        }
        half *= 2;
    }
    let scale = 1.0 / len as f64;
    Ok(PairingSplit {
        sum_of_squares: values.iter().map(|a| a.norm_sqr()).sum(),
        pattern_total: scale * t.iter().map(|a| a.norm_sqr()).sum::<f64>(),
        leading: scale * t[0].norm_sqr(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bell_correlator, ghz_state, product_plus_state, qfi_pure, CorrelatorSpec};

    fn brute_force_correlator_sum(psi: &PureState) -> f64 {
        // Independent route: every disjoint pair via ternary assignment, E from
        // explicit ladder application and inner product.
        let n = psi.n_qubits();
        let mut total = 0.0;
        for code in 0..3usize.pow(n as u32) {
            let (mut plus, mut minus, mut c) = (0usize, 0usize, code);
            for k in 0..n {
                match c % 3 {
                    1 => plus |= 1 << k,
                    2 => minus |= 1 << k,
                    _ => {}
                }
                c /= 3;
            }
            if plus | minus == 0 {
                continue;
            }
            let spec = CorrelatorSpec::from_masks(plus, minus).unwrap();
            let moved = crate::ladder_apply(&spec, psi).unwrap();
            let e = psi.inner(&moved).unwrap().norm_sqr();
            let (np, nm) = (plus.count_ones() as f64, minus.count_ones() as f64);
            total += 2.0 * (np - nm).powi(2) / 2f64.powi((n - spec.order()) as i32) * e;
        }
        total
    }

    #[test]
    fn correlator_sum_matches_ternary_enumeration() {
        let psi = PureState::normalized(
            4,
            (0..16).map(|k| Complex64::new((1.3 * k as f64).sin(), (0.4 * k as f64).cos())).collect(),
        )
        .unwrap();
        let fast = bound_correlator_sum(&psi, &SpinTriad::z(), None).unwrap();
        let slow = brute_force_correlator_sum(&psi);
        assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
        // E from bell_correlator and from ladder_apply agree as well
        let spec = CorrelatorSpec::from_masks(0b0101, 0b0010).unwrap();
        let e = bell_correlator(&psi, &spec).unwrap().value;
        let moved = crate::ladder_apply(&spec, &psi).unwrap();
        assert!((e - psi.inner(&moved).unwrap().norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn product_state_saturates_the_chain() {
        for n in 1..=8 {
            let p = product_plus_state(n).unwrap();
            let s = bound_correlator_sum(&p, &SpinTriad::z(), None).unwrap();
            assert!((s - n as f64).abs() < 1e-9, "n={n}: {s}");
            assert!((bound_coherence(&p, &SpinTriad::z()) - n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn ghz_values() {
        for n in 2..=8 {
            let nf = n as f64;
            let g = ghz_state(n).unwrap();
            assert!((bound_coherence(&g, &SpinTriad::z()) - nf * nf).abs() < 1e-10);
            let s = bound_correlator_sum(&g, &SpinTriad::z(), None).unwrap();
            assert!(s >= nf * nf / 2.0 - 1e-12);
            assert!(s <= qfi_pure(&g, &SpinTriad::z()) + 1e-9);
        }
        let all_up = PureState::basis(5, 0b11111).unwrap();
        assert_eq!(bound_correlator_sum(&all_up, &SpinTriad::z(), None).unwrap(), 0.0);
        assert_eq!(bound_coherence(&all_up, &SpinTriad::z()), 0.0);
    }

    #[test]
    fn truncation_gives_smaller_valid_bound() {
        let g = ghz_state(6).unwrap();
        let full = bound_correlator_sum(&g, &SpinTriad::z(), None).unwrap();
        let low = bound_correlator_sum(&g, &SpinTriad::z(), Some(3)).unwrap();
        assert!(low <= full + 1e-15);
        assert!(matches!(
            bound_correlator_sum(&product_plus_state(15).unwrap(), &SpinTriad::z(), None),
            Err(Error::TooManyQubits { .. })
        ));
        assert!(bound_correlator_sum(&product_plus_state(15).unwrap(), &SpinTriad::z(), Some(2)).is_ok());
    }

    #[test]
    fn trace_and_coherence_forms_on_pure_and_mixed() {
        let psi = ghz_state(3).unwrap();
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        for t in [SpinTriad::z(), SpinTriad::x(), SpinTriad::from_axis([0.2, 0.5, -0.7]).unwrap()] {
            let trace = bound_trace(&rho, &t);
            assert!((trace - qfi_pure(&psi, &t)).abs() < 1e-9);
            assert!((bound_coherence(&rho, &t) - trace).abs() < 1e-10);
            assert!((bound_coherence(&psi, &t) - trace).abs() < 1e-10);
        }
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(bound_trace(&mixed, &SpinTriad::z()).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_examples() {
        assert_eq!(heisenberg_implication(0.25, 10).unwrap(), 50.0);
        assert_eq!(heisenberg_implication(0.07, 10).unwrap(), 25.0);
        assert_eq!(heisenberg_implication(2f64.powi(-10), 10).unwrap(), 0.0);
        assert!(heisenberg_implication(0.5, 10).is_err());
    }

    #[test]
    fn pairing_examples() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let split = pairing_decomposition(&[c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.5), c(0.3, 0.3)]).unwrap();
        assert!((split.sum_of_squares - split.pattern_total).abs() < 1e-14);
        assert!(split.sum_of_squares >= split.leading);
        let same = pairing_decomposition(&[c(0.5, -0.25); 8]).unwrap();
        assert!((same.sum_of_squares - same.leading).abs() < 1e-14);
        assert!(pairing_decomposition(&[c(1.0, 0.0); 3]).is_err());
    }
}
