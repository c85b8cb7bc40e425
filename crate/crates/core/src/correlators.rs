//! Bell correlators `E = |Tr[ρ R_{S+} L_{S−}]|²` and the nonlocality-depth ladder.
//!
//! States are taken to be written in the generator eigenbasis; use
//! [`PureState::to_frame`] or [`DensityMatrix::to_frame`] for other axes.

use num_complex::Complex64;

use crate::bits::Submasks;
use crate::{DensityMatrix, Error, PureState, Result, SiteSet};

/// Maximum of any correlator, `|ρ_nm|² ≤ 1/4`.
pub const CORRELATOR_MAX: f64 = 0.25;

const RANGE_TOL: f64 = 1e-12;
/// Relative slack on threshold comparisons, so values on a boundary never over-claim.
pub const THRESHOLD_SLACK: f64 = 1e-12;

/// Which qubits are raised (`S+`) and which are lowered (`S−`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorrelatorSpec {
    s_plus: SiteSet,
    s_minus: SiteSet,
}

impl CorrelatorSpec {
    pub fn new(s_plus: SiteSet, s_minus: SiteSet) -> Result<Self> {
        if let Some(&site) = s_plus
            .sites()
            .iter()
            .find(|k| s_minus.sites().binary_search(k).is_ok())
        {
            return Err(Error::OverlappingSites(site));
        }
        if s_plus.is_empty() && s_minus.is_empty() {
            return Err(Error::InvalidOrder {
                order: 0,
                n_qubits: 0,
            });
        }
        Ok(Self { s_plus, s_minus })
    }

    pub fn from_masks(plus: usize, minus: usize) -> Result<Self> {
        Self::new(SiteSet::from_mask(plus), SiteSet::from_mask(minus))
    }

    /// Every qubit raised: the `E_{N,0}` correlator.
    pub fn full_raise(n_qubits: usize) -> Result<Self> {
        Self::new(SiteSet::all(n_qubits), SiteSet::empty())
    }

    pub fn s_plus(&self) -> &SiteSet {
        &self.s_plus
    }

    pub fn s_minus(&self) -> &SiteSet {
        &self.s_minus
    }

    pub fn plus_mask(&self) -> usize {
        self.s_plus.mask()
    }

    pub fn minus_mask(&self) -> usize {
        self.s_minus.mask()
    }

    pub fn n_plus(&self) -> usize {
        self.s_plus.len()
    }

    pub fn n_minus(&self) -> usize {
        self.s_minus.len()
    }

    /// `q = n₊ + n₋`.
    pub fn order(&self) -> usize {
        self.n_plus() + self.n_minus()
    }

    /// Same sites with the roles of raising and lowering exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            s_plus: self.s_minus.clone(),
            s_minus: self.s_plus.clone(),
        }
    }

    pub fn check(&self, n_qubits: usize) -> Result<()> {
        self.s_plus.check_range(n_qubits)?;
        self.s_minus.check_range(n_qubits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorResult {
    pub value: f64,
    /// `q = n₊ + n₋`.
    pub order: usize,
    /// Local-realism bound `2^{−q}`.
    pub bell_limit: f64,
    /// Separable-state value `4^{−q}`.
    pub entanglement_threshold: f64,
}

impl CorrelatorResult {
    pub fn new(value: f64, order: usize) -> Result<Self> {
        if !(-RANGE_TOL..=CORRELATOR_MAX + RANGE_TOL).contains(&value) {
            return Err(Error::InvalidCorrelator(value));
        }
        let bell_limit = 0.5f64.powi(order as i32);
        Ok(Self {
            value: value.max(0.0),
            order,
            bell_limit,
            entanglement_threshold: bell_limit * bell_limit,
        })
    }

    /// Strictly above `2^{−q}`: nonlocality witnessed.
    pub fn violates_bell_limit(&self) -> bool {
        self.value > self.bell_limit * (1.0 + THRESHOLD_SLACK)
    }

    /// Strictly above `4^{−q}`.
    pub fn exceeds_entanglement_threshold(&self) -> bool {
        self.value > self.entanglement_threshold * (1.0 + THRESHOLD_SLACK)
    }
}

/// Anything that can evaluate `Tr[ρ R_{S+} L_{S−}]` in the generator eigenbasis.
pub trait CorrelatorSource {
    fn n_qubits(&self) -> usize;

    /// `Tr[ρ R_{S+} L_{S−}]` for a spec already checked against [`Self::n_qubits`].
    fn ladder_trace(&self, spec: &CorrelatorSpec) -> Result<Complex64>;
}

impl CorrelatorSource for PureState {
    fn n_qubits(&self) -> usize {
        PureState::n_qubits(self)
    }

    fn ladder_trace(&self, spec: &CorrelatorSpec) -> Result<Complex64> {
        Ok(pure_ladder_trace(self.amplitudes(), self.n_qubits(), spec.plus_mask(), spec.minus_mask()))
    }
}

impl CorrelatorSource for DensityMatrix {
    fn n_qubits(&self) -> usize {
        DensityMatrix::n_qubits(self)
    }

    fn ladder_trace(&self, spec: &CorrelatorSpec) -> Result<Complex64> {
        Ok(density_ladder_trace(self, spec.plus_mask(), spec.minus_mask()))
    }
}

/// `Σ_f ψ[S−|f] ψ*[S+|f]` over all assignments `f` of the untouched qubits.
pub(crate) fn pure_ladder_trace(amps: &[Complex64], n_qubits: usize, plus: usize, minus: usize) -> Complex64 {
    let free = ((1usize << n_qubits) - 1) & !(plus | minus);
    Submasks::of(free)
        .map(|f| amps[minus | f] * amps[plus | f].conj())
        .sum()
}

/// `Σ_f ρ[S−|f, S+|f]`.
pub(crate) fn density_ladder_trace(rho: &DensityMatrix, plus: usize, minus: usize) -> Complex64 {
    let free = (rho.dim() - 1) & !(plus | minus);
    Submasks::of(free)
        .map(|f| rho.get(minus | f, plus | f))
        .sum()
}

/// `E_{S+,S−} = |Tr[ρ R_{S+} L_{S−}]|²`.
///
/// Pure states cost `O(2^{N−q})`; no operator is materialized.
pub fn bell_correlator<S: CorrelatorSource + ?Sized>(
    state: &S,
    spec: &CorrelatorSpec,
) -> Result<CorrelatorResult> {
    spec.check(state.n_qubits())?;
    let value = state.ladder_trace(spec)?.norm_sqr();
    CorrelatorResult::new(value, spec.order())
}

/// Full-`N` correlator value above which at least `depth` qubits are Bell-correlated:
/// `2^{−(N−depth+3)}`. Depth `N` gives `1/8`, depth `3` gives the Bell bound `2^{−N}`.
pub fn depth_threshold(depth: usize, n_qubits: usize) -> f64 {
    let exponent = n_qubits as i64 - depth as i64 + 3;
    2f64.powi(-(exponent as i32))
}

/// Number of qubits the full-`N` correlator proves to be Bell-correlated.
///
/// Returns `0` when `e_value ≤ 2^{−N}` (nothing witnessed), otherwise the largest
/// `d ∈ [3, N]` with `e_value > 2^{−(N−d+3)}`.
pub fn nonlocality_depth(e_value: f64, n_qubits: usize) -> Result<usize> {
    if !(-RANGE_TOL..=CORRELATOR_MAX + RANGE_TOL).contains(&e_value) {
        return Err(Error::InvalidCorrelator(e_value));
    }
    if n_qubits < 3 {
        return Ok(0);
    }
    let above = |threshold: f64| e_value > threshold * (1.0 + THRESHOLD_SLACK);
    Ok((3..=n_qubits)
        .rev()
        .find(|&d| above(depth_threshold(d, n_qubits)))
        .unwrap_or(0))
}
