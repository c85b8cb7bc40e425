//! Property batteries over every layer, run by `bellqfi verify`.
//!
//! Each check records its worst violation (zero when a property holds exactly) and
//! passes when that stays within `tolerance × tolerance_scale`. Check `i` draws its
//! random inputs from stream `i` of the seed, so the report is a pure function of the
//! options. A negative scale makes every check fail, which is how the failure path is
//! exercised.

use std::io::{self, Write};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::bits::Submasks;
use crate::linalg::{eigh_real, LanczosOptions};
use crate::models::{ising_ground_state_with, ising_parity, IsingSolver};
use crate::qfi::pairing_decomposition;
use crate::random::{self, StateRng};
use crate::sweep::{format_float, run_sweep, Model, SweepConfig};
use crate::{
    bell_correlator, bound_coherence, bound_correlator_sum, bound_trace, depth_threshold, dicke_to_full,
    generator_eigenvalue, ghz_state, ising_matvec, ladder_apply, nonlocality_depth, pauli_apply, product_plus_state,
    qfi_pure, qfi_spectral, symmetric_bound_correlator_sum, two_mode_ground_state, Axis, BasisIndex,
    CorrelatorSpec, DensityMatrix, IsingParams, PureState, Result, SpinTriad, TwoModeParams,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub tolerance_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 20190101,
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# schema=1")?;
        writeln!(
            out,
            "# seed={} tolerance_scale={}",
            self.options.seed,
            format_float(self.options.tolerance_scale)
        )?;
        writeln!(out, "check,passed,cases,worst,tolerance")?;
        for c in &self.checks {
            writeln!(
                out,
                "{},{},{},{},{}",
                c.name,
                u8::from(c.passed),
                c.cases,
                format_float(c.worst),
                format_float(c.tolerance)
            )?;
        }
        out.flush()
    }
}

/// Running maximum of violations.
#[derive(Default)]
struct Worst {
    cases: usize,
    value: f64,
}

impl Worst {
    fn see(&mut self, violation: f64) {
        self.cases += 1;
        // NaN must count as a failure
        self.value = if violation.is_nan() { f64::INFINITY } else { self.value.max(violation) };
    }

    fn diff(&mut self, a: f64, b: f64) {
        self.see((a - b).abs());
    }

    /// Violation of `lhs ≥ rhs`.
    fn at_least(&mut self, lhs: f64, rhs: f64) {
        self.see((rhs - lhs).max(0.0));
    }
}

type CheckFn = fn(&mut StateRng) -> Result<Worst>;

const CHECKS: &[(&str, f64, CheckFn)] = &[
    ("pauli_algebra", 1e-12, pauli_algebra),
    ("ladder_projector", 1e-15, ladder_projector),
    ("generator_trace_free", 1e-9, generator_trace_free),
    ("correlator_range", 1e-12, correlator_range),
    ("correlator_permutation_symmetry", 1e-12, permutation_symmetry),
    ("correlator_swap_real_states", 1e-12, swap_real_states),
    ("depth_ladder", 1e-15, depth_ladder),
    ("bound_chain", 1e-9, bound_chain),
    ("coherence_equals_trace", 1e-10, coherence_equals_trace),
    ("pure_qfi_consistency", 1e-9, pure_qfi_consistency),
    ("pairing_inequality", 1e-12, pairing_inequality),
    ("product_state_saturation", 1e-9, product_state_saturation),
    ("ising_parity_and_variational", 1e-9, ising_parity_and_variational),
    ("ising_dense_vs_lanczos", 1e-8, ising_dense_vs_lanczos),
    ("dicke_vs_full_space", 1e-8, dicke_vs_full_space),
    ("sweep_invariants", 1e-6, sweep_invariants),
];

/// Runs every check; the checks themselves run on the current rayon pool.
pub fn verify_suite(options: VerifyOptions) -> Result<VerifyReport> {
    let checks = CHECKS
        .par_iter()
        .with_max_len(1)
        .enumerate()
        .map(|(i, &(name, tol, f))| {
            let worst = f(&mut random::substream(options.seed, i as u64))?;
            let tolerance = tol * options.tolerance_scale;
            Ok(Check {
                name,
                cases: worst.cases,
                worst: worst.value,
                tolerance,
                passed: worst.value <= tolerance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { options, checks })
}

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.0)
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random_triad(rng: &mut StateRng) -> Result<SpinTriad> {
    let v: [f64; 3] = std::array::from_fn(|_| rng.sample(rand_distr::StandardNormal));
    SpinTriad::from_axis(v)
}

/// Every disjoint `(S₊, S₋)` pair with at least one site, as masks.
fn all_specs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let full = (1usize << n) - 1;
    (0..=full).flat_map(move |plus| Submasks::of(full ^ plus).map(move |minus| (plus, minus)))
        .filter(|&(p, m)| p | m != 0)
}

fn pauli_algebra(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=4 {
        for _ in 0..4 {
            let psi = random::pure_state(n, rng)?;
            for site in 0..n {
                for axis in [Axis::X, Axis::Y, Axis::Z] {
                    let twice = pauli_apply(axis, site, &pauli_apply(axis, site, &psi)?)?;
                    w.see(max_abs_diff(twice.amplitudes(), psi.amplitudes()));
                }
                let xy = pauli_apply(Axis::X, site, &pauli_apply(Axis::Y, site, &psi)?)?;
                let yx = pauli_apply(Axis::Y, site, &pauli_apply(Axis::X, site, &psi)?)?;
                let z = pauli_apply(Axis::Z, site, &psi)?;
                let comm: Vec<Complex64> = xy.amplitudes().iter().zip(yx.amplitudes()).map(|(a, b)| a - b).collect();
                let expected: Vec<Complex64> = z.amplitudes().iter().map(|a| a * Complex64::new(0.0, 2.0)).collect();
                w.see(max_abs_diff(&comm, &expected));
            }
        }
    }
    Ok(w)
}

fn ladder_projector(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=2 {
        for (plus, minus) in all_specs(n) {
            let spec = CorrelatorSpec::from_masks(plus, minus)?;
            for b in 0..1usize << n {
                let basis = PureState::basis(n, b)?;
                let once = ladder_apply(&spec.swapped(), &ladder_apply(&spec, &basis)?)?;
                let twice = ladder_apply(&spec.swapped(), &ladder_apply(&spec, &once)?)?;
                w.see(max_abs_diff(once.amplitudes(), twice.amplitudes()));
            }
        }
    }
    Ok(w)
}

fn generator_trace_free(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=12 {
        let total: f64 = (0..1usize << n).map(|b| generator_eigenvalue(BasisIndex(b), n)).sum();
        w.see(total.abs());
    }
    Ok(w)
}

fn correlator_range(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=5 {
        for k in 0..3 {
            let pure = random::pure_state(n, rng)?;
            let mixed = random::density_matrix(n.min(4), 1 + k, rng)?;
            for (plus, minus) in all_specs(n) {
                let spec = CorrelatorSpec::from_masks(plus, minus)?;
                let e = bell_correlator(&pure, &spec)?.value;
                w.see((e - 0.25).max(-e).max(0.0));
            }
            for (plus, minus) in all_specs(n.min(4)) {
                let e = bell_correlator(&mixed, &CorrelatorSpec::from_masks(plus, minus)?)?.value;
                w.see((e - 0.25).max(-e).max(0.0));
            }
        }
    }
    Ok(w)
}

fn permutation_symmetry(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=6 {
        for psi in [product_plus_state(n)?, ghz_state(n)?] {
            for (plus, minus) in all_specs(n) {
                let (np, nm) = (plus.count_ones(), minus.count_ones());
                // contiguous reference sets of the same sizes
                let ref_plus = (1usize << np) - 1;
                let ref_minus = ((1usize << nm) - 1) << np;
                let e = bell_correlator(&psi, &CorrelatorSpec::from_masks(plus, minus)?)?.value;
                let r = bell_correlator(&psi, &CorrelatorSpec::from_masks(ref_plus, ref_minus)?)?.value;
                w.diff(e, r);
            }
        }
    }
    Ok(w)
}

fn swap_real_states(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=4 {
        for _ in 0..5 {
            let psi = random::real_state(n, rng)?;
            for (plus, minus) in all_specs(n) {
                let spec = CorrelatorSpec::from_masks(plus, minus)?;
                w.diff(bell_correlator(&psi, &spec)?.value, bell_correlator(&psi, &spec.swapped())?.value);
            }
        }
    }
    Ok(w)
}

fn depth_ladder(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 3..=24 {
        w.diff(depth_threshold(n, n), 0.125);
        if n > 3 {
            w.diff(depth_threshold(n - 1, n), 0.0625);
        }
        w.diff(depth_threshold(3, n), 0.5f64.powi(n as i32));
        w.diff(nonlocality_depth(0.25, n)? as f64, n as f64);
        w.diff(nonlocality_depth(0.5f64.powi(n as i32), n)? as f64, 0.0);
        w.diff(nonlocality_depth(1.01 * 0.5f64.powi(n as i32), n)? as f64, 3.0);
    }
    w.diff(nonlocality_depth(0.07, 8)? as f64, 7.0);
    Ok(w)
}

fn chain_state(rng: &mut StateRng, i: usize) -> Result<DensityMatrix> {
    let n = 2 + i % 5;
    if i.is_multiple_of(2) {
        DensityMatrix::from_pure(&random::pure_state(n, rng)?)
    } else {
        let rank = 1 + rng.random_range(0..1usize << n);
        random::density_matrix(n, rank, rng)
    }
}

fn bound_chain(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for i in 0..500 {
        let rho = chain_state(rng, i)?;
        let triad = if i % 3 == 0 { SpinTriad::z() } else { random_triad(rng)? };
        let qfi = qfi_spectral(&rho, &triad)?;
        let trace = bound_trace(&rho, &triad);
        let coherence = bound_coherence(&rho, &triad);
        let sum = bound_correlator_sum(&rho, &triad, None)?;
        w.at_least(qfi, trace);
        w.at_least(coherence, sum);
        w.at_least(trace, sum);
    }
    Ok(w)
}

fn coherence_equals_trace(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for i in 0..100 {
        let rho = chain_state(rng, 2 * i + 1)?;
        let triad = random_triad(rng)?;
        w.diff(bound_coherence(&rho, &triad), bound_trace(&rho, &triad));
    }
    Ok(w)
}

fn pure_qfi_consistency(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for i in 0..60 {
        let psi = random::pure_state(1 + i % 6, rng)?;
        let triad = random_triad(rng)?;
        w.diff(qfi_spectral(&DensityMatrix::from_pure(&psi)?, &triad)?, qfi_pure(&psi, &triad));
    }
    Ok(w)
}

fn pairing_inequality(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in 1..=8 {
        for _ in 0..1000 {
            let a = random::complex_set(1 << n, rng);
            let split = pairing_decomposition(&a)?;
            let scale = split.sum_of_squares;
            w.at_least(split.sum_of_squares / scale, split.leading / scale);
            w.diff(split.sum_of_squares / scale, split.pattern_total / scale);
        }
        let same = vec![random::gaussian_complex(rng); 1 << n];
        let split = pairing_decomposition(&same)?;
        w.diff(split.leading / split.sum_of_squares, 1.0);
    }
    Ok(w)
}

fn product_state_saturation(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    let z = SpinTriad::z();
    for n in 1..=8 {
        let psi = product_plus_state(n)?;
        w.diff(qfi_pure(&psi, &z), n as f64);
        w.diff(bound_correlator_sum(&psi, &z, None)?, n as f64);
    }
    Ok(w)
}

fn expectation(params: &IsingParams, psi: &PureState) -> Result<f64> {
    Ok(psi.inner(&ising_matvec(params, psi)?)?.re)
}

fn ising_parity_and_variational(rng: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    for n in [4, 6, 8] {
        for u in [-2.0, -0.7, 0.4] {
            let params = IsingParams::new(n, u)?;
            let gs = ising_ground_state_with(&params, IsingSolver::Auto)?;
            w.diff(ising_parity(&gs.state), 1.0);
            w.diff(expectation(&params, &gs.state)?, gs.energy);
            for _ in 0..100 {
                let phi = random::pure_state(n, rng)?;
                w.at_least(expectation(&params, &phi)?, gs.energy);
            }
        }
    }
    Ok(w)
}

fn ising_dense_vs_lanczos(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    let full = CorrelatorSpec::full_raise(10)?;
    for u in [-2.5, -1.0, -0.3] {
        let params = IsingParams::new(10, u)?;
        let dense = ising_ground_state_with(&params, IsingSolver::Dense)?;
        let lanczos = ising_ground_state_with(&params, IsingSolver::Lanczos(LanczosOptions::default()))?;
        w.diff(dense.energy, lanczos.energy);
        w.diff(bell_correlator(&dense.state, &full)?.value, bell_correlator(&lanczos.state, &full)?.value);
    }
    Ok(w)
}

/// `−J_x + (u/N) J_z²` on all `2^N` basis states, row-major.
pub(crate) fn two_mode_full_space(n: usize, u: f64) -> Vec<f64> {
    let dim = 1usize << n;
    let mut h = vec![0.0; dim * dim];
    for b in 0..dim {
        let m = generator_eigenvalue(BasisIndex(b), n);
        h[b * dim + b] = u / n as f64 * m * m;
        for k in 0..n {
            h[(b ^ (1 << k)) * dim + b] -= 0.5;
        }
    }
    h
}

fn dicke_vs_full_space(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    let n = 6;
    let z = SpinTriad::z();
    for u in [-2.5, -1.0, -0.3, 0.0] {
        let gs = two_mode_ground_state(&TwoModeParams::new(n, u)?)?;
        let eig = eigh_real(&two_mode_full_space(n, u), 1 << n)?;
        let full = PureState::normalized(n, eig.vector(0).iter().map(|&x| Complex64::new(x, 0.0)).collect())?;
        w.diff(gs.energy, eig.values[0]);
        w.diff(qfi_pure(&gs.state, &z), qfi_pure(&full, &z));
        let spec = CorrelatorSpec::full_raise(n)?;
        w.diff(bell_correlator(&gs.state, &spec)?.value, bell_correlator(&full, &spec)?.value);
        w.diff(symmetric_bound_correlator_sum(&gs.state, None)?, bound_correlator_sum(&full, &z, None)?);
        // the mapped state is the same vector up to sign
        let mapped = dicke_to_full(&gs.state)?;
        w.diff(mapped.inner(&full)?.norm(), 1.0);
    }
    Ok(w)
}

fn sweep_invariants(_: &mut StateRng) -> Result<Worst> {
    let mut w = Worst::default();
    let mut ising = SweepConfig::new(Model::Ising, vec![6, 8]);
    ising.steps = 13;
    let mut two_mode = SweepConfig::new(Model::TwoMode, vec![20, 50]);
    two_mode.steps = 31;
    for config in [ising, two_mode] {
        let records = run_sweep(&config)?;
        for chunk in records.chunk_by(|a, b| a.n == b.n) {
            let mut prev: Option<(f64, usize)> = None;
            // walk outwards in |u|: grid is ascending and non-positive
            for r in chunk.iter().rev() {
                let Some(v) = &r.values else {
                    w.see(f64::INFINITY);
                    continue;
                };
                w.at_least(v.qfi, v.heisenberg_floor);
                w.at_least(v.qfi, v.bound_coherence);
                if let Some(s) = v.bound_correlator_sum {
                    w.at_least(v.bound_coherence, s);
                }
                if config.model == Model::Ising {
                    if let Some((q, d)) = prev {
                        w.at_least(v.qfi / r.n as f64, q);
                        w.at_least(v.depth as f64, d as f64);
                    }
                    prev = Some((v.qfi / r.n as f64, v.depth));
                }
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_enumeration_counts() {
        // 3^N − 1 non-empty disjoint pairs
        for n in 1..=5 {
            assert_eq!(all_specs(n).count(), 3usize.pow(n as u32) - 1);
        }
    }

    #[test]
    fn two_mode_full_space_matches_small_case() {
        // N = 1: −σ_x/2, eigenvalues ±½
        let h = two_mode_full_space(1, 0.7);
        let e = eigh_real(&h, 2).unwrap();
        assert!((e.values[0] + 0.5 - 0.7 / 4.0).abs() < 1e-14);
    }

    #[test]
    fn worst_tracks_nan_as_failure() {
        let mut w = Worst::default();
        w.see(0.1);
        w.see(f64::NAN);
        assert_eq!(w.value, f64::INFINITY);
        assert_eq!(w.cases, 2);
    }
}
