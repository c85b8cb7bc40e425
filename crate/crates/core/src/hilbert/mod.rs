//! Bit-indexed N-qubit Hilbert space.
//!
//! Qubit `k` is bit `k` of a basis index (little endian) and bit value `1` means spin
//! up along the generator axis. Operators act on dense amplitude vectors without
//! ever building a `2^N × 2^N` matrix, except for [`DensityMatrix`] which is itself dense.

mod ops;
mod state;
mod triad;

pub use ops::{
    collective_generator_apply, generator_eigenvalue, ghz_state, ladder_apply, pauli_apply,
    product_plus_state, Axis,
};
pub use state::{DensityMatrix, PureState, MAX_DENSITY_QUBITS, MAX_PURE_QUBITS};
pub use triad::{Gate, SpinTriad};

pub(crate) use ops::collective_generator_apply_along;
pub(crate) use state::{apply_gate, fix_phase};
pub(crate) use triad::pauli_gate;

use crate::{Error, Result};

/// A computational basis state `|n⟩`; bit `k` set means qubit `k` is up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(pub usize);

impl BasisIndex {
    pub fn bits(self) -> usize {
        self.0
    }

    /// Number of up spins, `n↑`.
    pub fn up_count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_up(self, site: usize) -> bool {
        self.0 >> site & 1 == 1
    }
}

/// Strictly increasing list of qubit indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SiteSet {
    sites: Vec<usize>,
}

impl SiteSet {
    pub fn new(sites: Vec<usize>) -> Result<Self> {
        if sites.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedSites(sites));
        }
        Ok(Self { sites })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// All sites `0..n`.
    pub fn all(n: usize) -> Self {
        Self {
            sites: (0..n).collect(),
        }
    }

    pub fn from_mask(mask: usize) -> Self {
        Self {
            sites: (0..usize::BITS as usize)
                .filter(|&k| mask >> k & 1 == 1)
                .collect(),
        }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn mask(&self) -> usize {
        self.sites.iter().fold(0, |m, &k| m | 1 << k)
    }

    pub fn check_range(&self, n_qubits: usize) -> Result<()> {
        match self.sites.last() {
            Some(&site) if site >= n_qubits => Err(Error::SiteOutOfRange { site, n_qubits }),
            _ => Ok(()),
        }
    }
}

/// Dimension `2^n`, rejecting sizes beyond `cap` qubits.
pub(crate) fn dimension(n_qubits: usize, cap: usize, what: &'static str) -> Result<usize> {
    if n_qubits == 0 {
        return Err(Error::NoQubits);
    }
    if n_qubits > cap {
        return Err(Error::TooManyQubits {
            what,
            n_qubits,
            cap,
        });
    }
    Ok(1usize << n_qubits)
}
