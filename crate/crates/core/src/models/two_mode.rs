//! Two-mode collective-spin model `H = −J_x + U_eff J_z²` in the Dicke basis.
//!
//! The basis state `|k⟩` has `k` spins up along `z`, `J_z = k − N/2` and
//! `⟨k+1|J_x|k⟩ = ½√((N−k)(k+1))`. `H` commutes with the flip `k ↔ N − k`; for
//! `U_eff < 0` the lowest two states become an exponentially split doublet, so the
//! ground state is taken from the even sector.

use num_complex::Complex64;

use super::{DickeState, GroundState};
use crate::hilbert::fix_phase;
use crate::linalg;
use crate::{Error, Result};

pub const MAX_TWO_MODE_ATOMS: usize = 2000;

/// How the control parameter `u` enters the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UConvention {
    /// `H = −J_x + (u/N) J_z²`: the mean-field transition sits at `u = −1` for all `N`.
    #[default]
    PerAtom,
    /// `H = −J_x + u J_z²`: the transition sits at `u ≈ −1/N`.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeParams {
    pub n_atoms: usize,
    pub u: f64,
    pub convention: UConvention,
}

impl TwoModeParams {
    pub fn new(n_atoms: usize, u: f64) -> Result<Self> {
        Self::with_convention(n_atoms, u, UConvention::PerAtom)
    }

    pub fn with_convention(n_atoms: usize, u: f64, convention: UConvention) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::NoQubits);
        }
        if n_atoms > MAX_TWO_MODE_ATOMS {
            return Err(Error::TooManyQubits {
                what: "two-mode model",
                n_qubits: n_atoms,
                cap: MAX_TWO_MODE_ATOMS,
            });
        }
        Ok(Self {
            n_atoms,
            u,
            convention,
        })
    }

    /// Coefficient of `J_z²`.
    pub fn interaction(&self) -> f64 {
        match self.convention {
            UConvention::PerAtom => self.u / self.n_atoms as f64,
            UConvention::Raw => self.u,
        }
    }
}

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim();
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = self.diag[i];
            if i + 1 < n {
                m[i * n + i + 1] = self.off[i];
                m[(i + 1) * n + i] = self.off[i];
            }
        }
        m
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.dim();
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.off[i] * x[i + 1];
            }
            y[i] = v;
        }
    }
}

/// `H` in the `(N+1)`-dimensional Dicke basis.
pub fn two_mode_hamiltonian(params: &TwoModeParams) -> SymTridiagonal {
    let n = params.n_atoms;
    let g = params.interaction();
    let half = n as f64 / 2.0;
    SymTridiagonal {
        diag: (0..=n).map(|k| g * (k as f64 - half).powi(2)).collect(),
        off: (0..n)
            .map(|k| -0.5 * (((n - k) * (k + 1)) as f64).sqrt())
            .collect(),
    }
}

/// Restriction to the flip-even states `s_i = (|i⟩ + |N−i⟩)/√2` (`|N/2⟩` alone at the
/// centre). Still tridiagonal in `i`.
fn even_sector(full: &SymTridiagonal) -> SymTridiagonal {
    let n = full.dim() - 1;
    let d = n / 2 + 1;
    // components of s_i in the full basis
    let vector = |i: usize| -> Vec<(usize, f64)> {
        if i == n - i {
            vec![(i, 1.0)]
        } else {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            vec![(i, h), (n - i, h)]
        }
    };
    let apply = |v: &[(usize, f64)]| -> Vec<(usize, f64)> {
        let mut out = Vec::with_capacity(3 * v.len());
        for &(k, a) in v {
            out.push((k, full.diag[k] * a));
            if k > 0 {
                out.push((k - 1, full.off[k - 1] * a));
            }
            if k < n {
                out.push((k + 1, full.off[k] * a));
            }
        }
        out
    };
    let element = |i: usize, j: usize| -> f64 {
        let hv = apply(&vector(j));
        vector(i)
            .iter()
            .map(|&(k, a)| a * hv.iter().filter(|(m, _)| *m == k).map(|(_, b)| b).sum::<f64>())
            .sum()
    };
    SymTridiagonal {
        diag: (0..d).map(|i| element(i, i)).collect(),
        off: (0..d.saturating_sub(1)).map(|i| element(i + 1, i)).collect(),
    }
}

/// Eigenvector of a tridiagonal matrix for a known eigenvalue by two-sided
/// recurrence meeting at the peak of `guess`.
///
/// Both recurrences run towards growing amplitudes, so components that are tiny
/// compared with the peak keep their relative accuracy; a dense eigensolver only
/// resolves them to about `1e−16` absolute.
fn twisted_eigenvector(t: &SymTridiagonal, value: f64, guess: &[f64]) -> Option<Vec<f64>> {
    let d = t.dim();
    if d == 1 {
        return Some(vec![1.0]);
    }
    if t.off.contains(&0.0) {
        return None;
    }
    let peak = guess
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, v)| if v.abs() > best.1 { (i, v.abs()) } else { best })
        .0;
    let mut x = vec![0.0; d];
    x[0] = 1.0;
    for i in 0..peak {
        let prev = if i > 0 { t.off[i - 1] * x[i - 1] } else { 0.0 };
        x[i + 1] = -((t.diag[i] - value) * x[i] + prev) / t.off[i];
        if x[i + 1].abs() > 1e150 {
            let s = x[i + 1].abs();
            x[..=i + 1].iter_mut().for_each(|v| *v /= s);
        }
    }
    let left_peak = x[peak];
    let mut y = vec![0.0; d];
    y[d - 1] = 1.0;
    for i in (peak + 1..d).rev() {
        let next = if i + 1 < d { t.off[i] * y[i + 1] } else { 0.0 };
        y[i - 1] = -((t.diag[i] - value) * y[i] + next) / t.off[i - 1];
        if y[i - 1].abs() > 1e150 {
            let s = y[i - 1].abs();
            y[i - 1..].iter_mut().for_each(|v| *v /= s);
        }
    }
    let right_peak = y[peak];
    if left_peak == 0.0 || right_peak == 0.0 || !left_peak.is_finite() || !right_peak.is_finite() {
        return None;
    }
    let mut v: Vec<f64> = (0..d)
        .map(|i| if i <= peak { x[i] / left_peak } else { y[i] / right_peak })
        .collect();
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v.iter().all(|a| a.is_finite()).then_some(v)
}

fn residual(t: &SymTridiagonal, value: f64, v: &[f64]) -> f64 {
    let mut hv = vec![0.0; v.len()];
    t.matvec(v, &mut hv);
    hv.iter()
        .zip(v)
        .map(|(h, a)| (h - value * a).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Lowest eigenpair in the flip-even sector, as a normalized [`DickeState`] with its
/// largest amplitude real positive.
pub fn two_mode_ground_state(params: &TwoModeParams) -> Result<GroundState<DickeState>> {
    let full = two_mode_hamiltonian(params);
    let even = even_sector(&full);
    let d = even.dim();
    let eig = linalg::eigh_real(&even.to_dense(), d)?;
    let value = eig.values[0];
    let dense = eig.vector(0).to_vec();
    let dense_res = residual(&even, value, &dense);
    let reduced = match twisted_eigenvector(&even, value, &dense) {
        Some(v) if residual(&even, value, &v) <= dense_res.max(1e-12) * 10.0 => v,
        _ => dense,
    };

    let n = params.n_atoms;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); n + 1];
    for (i, &a) in reduced.iter().enumerate() {
        if i == n - i {
            amps[i] = Complex64::new(a, 0.0);
        } else {
            amps[i] = Complex64::new(a * h, 0.0);
            amps[n - i] = Complex64::new(a * h, 0.0);
        }
    }
    fix_phase(&mut amps);
    let state = DickeState::normalized(n, amps)?;

    // Energy and residual of the returned vector in the full Dicke space.
    let re: Vec<f64> = state.amplitudes().iter().map(|a| a.re).collect();
    let mut hv = vec![0.0; n + 1];
    full.matvec(&re, &mut hv);
    let energy: f64 = re.iter().zip(&hv).map(|(a, b)| a * b).sum();
    let residual = hv
        .iter()
        .zip(&re)
        .map(|(h, a)| (h - energy * a).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(GroundState {
        energy,
        state,
        residual,
    })
}
