use num_complex::Complex64;

use crate::{Error, Result};

const TRIAD_TOL: f64 = 1e-12;

/// Single-qubit operator `g[out][in]` in bit order: index 0 is down, index 1 is up.
pub type Gate = [[Complex64; 2]; 2];

/// Orthonormal right-handed frame `(ξ, ξ₁, ξ₂)` with `ξ₁ × ξ₂ = ξ`.
///
/// `ξ` is the generator axis; `ξ₁`, `ξ₂` define `σ± = (σ_ξ₁ ± iσ_ξ₂)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinTriad {
    xi: [f64; 3],
    xi1: [f64; 3],
    xi2: [f64; 3],
}

impl SpinTriad {
    pub fn new(xi: [f64; 3], xi1: [f64; 3], xi2: [f64; 3]) -> Result<Self> {
        for v in [xi, xi1, xi2] {
            if (dot(v, v) - 1.0).abs() > TRIAD_TOL {
                return Err(Error::InvalidTriad("axes must be unit vectors"));
            }
        }
        if dot(xi, xi1).abs() > TRIAD_TOL
            || dot(xi, xi2).abs() > TRIAD_TOL
            || dot(xi1, xi2).abs() > TRIAD_TOL
        {
            return Err(Error::InvalidTriad("axes must be mutually orthogonal"));
        }
        let c = cross(xi1, xi2);
        if (0..3).any(|i| (c[i] - xi[i]).abs() > TRIAD_TOL) {
            return Err(Error::InvalidTriad("frame must be right-handed"));
        }
        Ok(Self { xi, xi1, xi2 })
    }

    /// Generator along `z`, ladder operators built from `x` and `y`.
    pub fn z() -> Self {
        Self {
            xi: [0.0, 0.0, 1.0],
            xi1: [1.0, 0.0, 0.0],
            xi2: [0.0, 1.0, 0.0],
        }
    }

    pub fn x() -> Self {
        Self {
            xi: [1.0, 0.0, 0.0],
            xi1: [0.0, 1.0, 0.0],
            xi2: [0.0, 0.0, 1.0],
        }
    }

    pub fn y() -> Self {
        Self {
            xi: [0.0, 1.0, 0.0],
            xi1: [0.0, 0.0, 1.0],
            xi2: [1.0, 0.0, 0.0],
        }
    }

    /// Completes a generator direction to a triad. `xi` is normalized first.
    pub fn from_axis(xi: [f64; 3]) -> Result<Self> {
        let norm = dot(xi, xi).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidTriad("axis must be a non-zero finite vector"));
        }
        let xi = xi.map(|c| c / norm);
        // Seed with the coordinate axis least aligned with ξ.
        let seed = if xi[0].abs() <= xi[1].abs() && xi[0].abs() <= xi[2].abs() {
            [1.0, 0.0, 0.0]
        } else if xi[1].abs() <= xi[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let proj = dot(seed, xi);
        let mut xi1 = [seed[0] - proj * xi[0], seed[1] - proj * xi[1], seed[2] - proj * xi[2]];
        let n1 = dot(xi1, xi1).sqrt();
        xi1 = xi1.map(|c| c / n1);
        let xi2 = cross(xi, xi1);
        Self::new(xi, xi1, xi2)
    }

    pub fn xi(&self) -> [f64; 3] {
        self.xi
    }

    pub fn xi1(&self) -> [f64; 3] {
        self.xi1
    }

    pub fn xi2(&self) -> [f64; 3] {
        self.xi2
    }

    pub fn is_z(&self) -> bool {
        *self == Self::z()
    }

    /// Unitary `V` with `V σ_ξ V† = σ_z`, `V σ_ξ₁ V† = σ_x`, `V σ_ξ₂ V† = σ_y`.
    ///
    /// Applying `V` to every qubit re-expresses a state in the generator eigenbasis.
    pub fn frame_gate(&self) -> Gate {
        // Rows of R are (ξ₁, ξ₂, ξ); R maps the triad onto (x, y, z).
        let r = [self.xi1, self.xi2, self.xi];
        let [w, x, y, z] = quaternion(&r);
        // V = w − i (x σ_x + y σ_y + z σ_z), σ matrices in bit order.
        let i = Complex64::i();
        let sx = pauli_gate([1.0, 0.0, 0.0]);
        let sy = pauli_gate([0.0, 1.0, 0.0]);
        let sz = pauli_gate([0.0, 0.0, 1.0]);
        let mut g = [[Complex64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                let id = if a == b { w } else { 0.0 };
                g[a][b] = Complex64::new(id, 0.0) - i * (sx[a][b] * x + sy[a][b] * y + sz[a][b] * z);
            }
        }
        g
    }
}

/// `n·σ` in bit order (index 1 = up): `σ_z = diag(−1, 1)`, `σ_y|↑⟩ = i|↓⟩`.
pub(crate) fn pauli_gate(n: [f64; 3]) -> Gate {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        [c(-n[2], 0.0), c(n[0], n[1])],
        [c(n[0], -n[1]), c(n[2], 0.0)],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Unit quaternion `(w, x, y, z)` of a proper rotation matrix.
fn quaternion(r: &[[f64; 3]; 3]) -> [f64; 4] {
    let trace = r[0][0] + r[1][1] + r[2][2];
    let q = if trace > 0.0 {
        let s = 2.0 * (trace + 1.0).sqrt();
        [
            0.25 * s,
            (r[2][1] - r[1][2]) / s,
            (r[0][2] - r[2][0]) / s,
            (r[1][0] - r[0][1]) / s,
        ]
    } else if r[0][0] > r[1][1] && r[0][0] > r[2][2] {
        let s = 2.0 * (1.0 + r[0][0] - r[1][1] - r[2][2]).sqrt();
        [
            (r[2][1] - r[1][2]) / s,
            0.25 * s,
            (r[0][1] + r[1][0]) / s,
            (r[0][2] + r[2][0]) / s,
        ]
    } else if r[1][1] > r[2][2] {
        let s = 2.0 * (1.0 + r[1][1] - r[0][0] - r[2][2]).sqrt();
        [
            (r[0][2] - r[2][0]) / s,
            (r[0][1] + r[1][0]) / s,
            0.25 * s,
            (r[1][2] + r[2][1]) / s,
        ]
    } else {
        let s = 2.0 * (1.0 + r[2][2] - r[0][0] - r[1][1]).sqrt();
        [
            (r[1][0] - r[0][1]) / s,
            (r[0][2] + r[2][0]) / s,
            (r[1][2] + r[2][1]) / s,
            0.25 * s,
        ]
    };
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    q.map(|c| c / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &Gate, b: &Gate) -> Gate {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    fn dagger(a: &Gate) -> Gate {
        [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
    }

    fn assert_gate_eq(a: &Gate, b: &Gate) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).norm() < 1e-12, "{a:?} != {b:?}");
            }
        }
    }

    #[test]
    fn frame_gate_maps_triad_onto_coordinate_axes() {
        let triads = [
            SpinTriad::z(),
            SpinTriad::x(),
            SpinTriad::y(),
            SpinTriad::from_axis([1.0, -2.0, 0.5]).unwrap(),
            SpinTriad::from_axis([0.0, 0.0, -1.0]).unwrap(),
            SpinTriad::from_axis([-1.0, 0.0, 0.0]).unwrap(),
        ];
        for t in triads {
            let v = t.frame_gate();
            let vd = dagger(&v);
            assert_gate_eq(&mul(&mul(&v, &pauli_gate(t.xi())), &vd), &pauli_gate([0.0, 0.0, 1.0]));
            assert_gate_eq(&mul(&mul(&v, &pauli_gate(t.xi1())), &vd), &pauli_gate([1.0, 0.0, 0.0]));
            assert_gate_eq(&mul(&mul(&v, &pauli_gate(t.xi2())), &vd), &pauli_gate([0.0, 1.0, 0.0]));
        }
    }

    #[test]
    fn rejects_left_handed_and_non_orthogonal_frames() {
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        let z = [0.0, 0.0, 1.0];
        assert!(SpinTriad::new(z, x, y).is_ok());
        assert!(SpinTriad::new(z, y, x).is_err());
        assert!(SpinTriad::new(z, x, x).is_err());
        assert!(SpinTriad::new([0.0, 0.0, 2.0], x, y).is_err());
        assert!(SpinTriad::from_axis([0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn identity_frame_for_z() {
        let v = SpinTriad::z().frame_gate();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_gate_eq(&v, &[[one, zero], [zero, one]]);
    }
}
