//! Ground-state parameter sweeps and their CSV form.
//!
//! Rows are N-major with `u` ascending. Points are solved on the current rayon pool and
//! collected back in grid order, so the output does not depend on scheduling.
//! A failed point becomes a row with only `n`, `u` and `error` filled in.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::correlators::THRESHOLD_SLACK;
use crate::models::{MAX_ISING_QUBITS, MAX_TWO_MODE_ATOMS};
use crate::qfi::MAX_CORRELATOR_SUM_QUBITS;
use crate::{
    bell_correlator, bound_coherence, bound_correlator_sum, depth_threshold, derivative_scan,
    heisenberg_implication, ising_ground_state, nonlocality_depth, qfi_pure, symmetric_bound_correlator_sum,
    symmetric_correlator, two_mode_ground_state, CorrelatorSpec, Error, IsingParams, Result, SpinTriad,
    TwoModeParams, UConvention,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const SWEEP_COLUMNS: [&str; 14] = [
    "n",
    "u",
    "qfi",
    "qfi_over_sn",
    "e_full",
    "depth",
    "bound_coherence",
    "bound_correlator_sum",
    "heisenberg_floor",
    "delta_theta",
    "energy",
    "depth_threshold",
    "correlator_bound_order",
    "error",
];

pub const DERIVATIVE_COLUMNS: [&str; 5] = ["n", "u", "dqfi_d_abs_u", "e_full", "bell_onset_flag"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Ising,
    TwoMode,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Ising => "ising",
            Model::TwoMode => "twomode",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ising" => Ok(Model::Ising),
            "twomode" | "two-mode" | "two_mode" => Ok(Model::TwoMode),
            other => Err(format!("unknown model `{other}` (expected ising or twomode)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub model: Model,
    pub n_list: Vec<usize>,
    pub u_min: f64,
    pub u_max: f64,
    pub steps: usize,
    /// Truncates the correlator-sum bound at this order. Without it the full bound is
    /// computed where affordable: `N ≤ 14` for Ising, every `N` for two-mode.
    pub correlator_bound_cap: Option<usize>,
    pub convention: UConvention,
}

impl SweepConfig {
    /// Grid `u ∈ [−3, 0]` with 121 points (Ising) or 301 points (two-mode).
    pub fn new(model: Model, n_list: Vec<usize>) -> Self {
        Self {
            model,
            n_list,
            u_min: -3.0,
            u_max: 0.0,
            steps: match model {
                Model::Ising => 121,
                Model::TwoMode => 301,
            },
            correlator_bound_cap: None,
            convention: UConvention::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::NoQubits);
        }
        let (lo, hi) = match self.model {
            Model::Ising => (2, MAX_ISING_QUBITS),
            Model::TwoMode => (1, MAX_TWO_MODE_ATOMS),
        };
        if let Some(&n) = self.n_list.iter().find(|&&n| n < lo || n > hi) {
            return Err(Error::TooManyQubits {
                what: "sweep",
                n_qubits: n,
                cap: hi,
            });
        }
        u_grid(self.u_min, self.u_max, self.steps).map(|_| ())
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        u_grid(self.u_min, self.u_max, self.steps)
    }
}

/// `steps` evenly spaced points from `u_min` to `u_max`, both included. Each point is
/// computed from its index, so grids do not accumulate rounding drift.
pub fn u_grid(u_min: f64, u_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::DegenerateGrid("a sweep needs at least two points"));
    }
    if !(u_min.is_finite() && u_max.is_finite()) || u_min >= u_max {
        return Err(Error::DegenerateGrid("u_min must be finite and below u_max"));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                u_max
            } else {
                u_min + (u_max - u_min) * (i as f64 / last)
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub u: f64,
    /// `None` when the point failed; see `error`.
    pub values: Option<PointValues>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointValues {
    pub energy: f64,
    pub qfi: f64,
    pub e_full: f64,
    pub depth: usize,
    pub bound_coherence: f64,
    pub bound_correlator_sum: Option<f64>,
    /// Set when `bound_correlator_sum` is truncated.
    pub correlator_bound_order: Option<usize>,
    pub heisenberg_floor: f64,
}

impl PointValues {
    pub fn qfi_over_sn(&self, n: usize) -> f64 {
        self.qfi / n as f64
    }

    /// `1/√F`, absent for `F = 0`.
    pub fn delta_theta(&self) -> Option<f64> {
        (self.qfi > 0.0).then(|| self.qfi.sqrt().recip())
    }

    /// Lower edge of the reported depth band, absent when no depth is witnessed.
    pub fn depth_threshold(&self, n: usize) -> Option<f64> {
        (self.depth > 0).then(|| depth_threshold(self.depth, n))
    }
}

impl SweepRecord {
    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }
}

fn ising_point(n: usize, u: f64, cap: Option<usize>) -> Result<PointValues> {
    let gs = ising_ground_state(&IsingParams::new(n, u)?)?;
    let z = SpinTriad::z();
    let psi = &gs.state;
    let qfi = qfi_pure(psi, &z);
    let e_full = bell_correlator(psi, &CorrelatorSpec::full_raise(n)?)?.value;
    let bound_sum = match cap {
        Some(order) => Some(bound_correlator_sum(psi, &z, Some(order))?),
        None if n <= MAX_CORRELATOR_SUM_QUBITS => Some(bound_correlator_sum(psi, &z, None)?),
        None => None,
    };
    Ok(PointValues {
        energy: gs.energy,
        qfi,
        e_full,
        depth: nonlocality_depth(e_full, n)?,
        bound_coherence: bound_coherence(psi, &z),
        bound_correlator_sum: bound_sum,
        correlator_bound_order: cap.filter(|&c| c < n),
        heisenberg_floor: heisenberg_implication(e_full, n)?,
    })
}

fn two_mode_point(n: usize, u: f64, cap: Option<usize>, convention: UConvention) -> Result<PointValues> {
    let gs = two_mode_ground_state(&TwoModeParams::with_convention(n, u, convention)?)?;
    let d = &gs.state;
    let qfi = qfi_pure(d, &SpinTriad::z());
    let e_full = symmetric_correlator(d, n, 0)?.value;
    Ok(PointValues {
        energy: gs.energy,
        qfi,
        e_full,
        depth: nonlocality_depth(e_full, n)?,
        bound_coherence: d.bound_coherence(),
        bound_correlator_sum: Some(symmetric_bound_correlator_sum(d, cap)?),
        correlator_bound_order: cap.filter(|&c| c < n),
        heisenberg_floor: heisenberg_implication(e_full, n)?,
    })
}

fn solve_point(config: &SweepConfig, n: usize, u: f64) -> SweepRecord {
    let result = match config.model {
        Model::Ising => ising_point(n, u, config.correlator_bound_cap),
        Model::TwoMode => two_mode_point(n, u, config.correlator_bound_cap, config.convention),
    };
    match result {
        Ok(v) => SweepRecord {
            n,
            u,
            values: Some(v),
            error: None,
        },
        Err(e) => SweepRecord {
            n,
            u,
            values: None,
            error: Some(e.to_string()),
        },
    }
}

/// One record per `(N, u)`, N-major and `u` ascending. Only configuration errors are
/// returned as `Err`; solver failures end up in the affected rows.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    config.validate()?;
    let grid = config.grid()?;
    let points: Vec<(usize, f64)> = config
        .n_list
        .iter()
        .flat_map(|&n| grid.iter().map(move |&u| (n, u)))
        .collect();
    Ok(points
        .par_iter()
        .with_max_len(1)
        .map(|&(n, u)| solve_point(config, n, u))
        .collect())
}

pub fn run_ising_sweep(n_list: &[usize], grid: (f64, f64, usize)) -> Result<Vec<SweepRecord>> {
    let mut config = SweepConfig::new(Model::Ising, n_list.to_vec());
    (config.u_min, config.u_max, config.steps) = grid;
    run_sweep(&config)
}

pub fn run_two_mode_sweep(n_list: &[usize], grid: (f64, f64, usize)) -> Result<Vec<SweepRecord>> {
    let mut config = SweepConfig::new(Model::TwoMode, n_list.to_vec());
    (config.u_min, config.u_max, config.steps) = grid;
    run_sweep(&config)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeRecord {
    pub n: usize,
    pub u: f64,
    /// Absent for every row of an `N` that has a failed sweep point.
    pub dqfi_d_abs_u: Option<f64>,
    pub e_full: Option<f64>,
    pub bell_onset: bool,
}

/// `dF/d|u|` along each `N` of a sweep, plus the Bell onset: the smallest-`|u|` grid
/// point whose full correlator exceeds `2^{−N}`.
///
/// The grid must not straddle `u = 0`, since `|u|` has to be monotone along it.
pub fn derivative_records(records: &[SweepRecord]) -> Result<Vec<DerivativeRecord>> {
    let mut out = Vec::with_capacity(records.len());
    for chunk in records.chunk_by(|a, b| a.n == b.n) {
        let n = chunk[0].n;
        let series: Option<Vec<(f64, f64)>> = chunk.iter().map(|r| r.values.as_ref().map(|v| (r.u, v.qfi))).collect();
        let derivs = match series {
            Some(s) => Some(derivative_scan(&s)?),
            None => None,
        };
        let local_bound = 0.5f64.powi(n as i32) * (1.0 + THRESHOLD_SLACK);
        let onset = chunk
            .iter()
            .enumerate()
            .filter(|(_, r)| r.values.as_ref().is_some_and(|v| v.e_full > local_bound))
            .min_by(|(_, a), (_, b)| a.u.abs().total_cmp(&b.u.abs()))
            .map(|(i, _)| i);
        for (i, r) in chunk.iter().enumerate() {
            out.push(DerivativeRecord {
                n,
                u: r.u,
                dqfi_d_abs_u: derivs.as_ref().map(|d| d[i].1),
                e_full: r.values.as_ref().map(|v| v.e_full),
                bell_onset: onset == Some(i),
            });
        }
    }
    Ok(out)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_float(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

fn sanitize(msg: &str) -> String {
    msg.chars()
        .map(|c| match c {
            ',' => ';',
            '\n' | '\r' => ' ',
            c => c,
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "# schema={SCHEMA_VERSION}")?;
    writeln!(out, "{}", SWEEP_COLUMNS.join(","))?;
    let mut line = String::new();
    for r in records {
        line.clear();
        let _ = write!(line, "{},{}", r.n, format_float(r.u));
        match &r.values {
            Some(v) => {
                let _ = write!(
                    line,
                    ",{},{},{},{},{},{},{},{},{},{},{}",
                    format_float(v.qfi),
                    format_float(v.qfi_over_sn(r.n)),
                    format_float(v.e_full),
                    v.depth,
                    format_float(v.bound_coherence),
                    opt_float(v.bound_correlator_sum),
                    format_float(v.heisenberg_floor),
                    opt_float(v.delta_theta()),
                    format_float(v.energy),
                    opt_float(v.depth_threshold(r.n)),
                    v.correlator_bound_order.map(|o| o.to_string()).unwrap_or_default(),
                );
            }
            None => line.push_str(&",".repeat(SWEEP_COLUMNS.len() - 3)),
        }
        line.push(',');
        if let Some(e) = &r.error {
            line.push_str(&sanitize(e));
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}

pub fn write_derivative_csv<W: Write>(records: &[DerivativeRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "# schema={SCHEMA_VERSION}")?;
    writeln!(out, "{}", DERIVATIVE_COLUMNS.join(","))?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            format_float(r.u),
            opt_float(r.dqfi_d_abs_u),
            opt_float(r.e_full),
            u8::from(r.bell_onset)
        )?;
    }
    out.flush()
}
