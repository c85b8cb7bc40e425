use crate::{Error, Result};

/// `dF/d|u|` along a sweep, returned as `(u, derivative)` pairs.
///
/// Interior points use the three-point Lagrange derivative (second order on
/// non-uniform grids); the endpoints use the one-sided three-point stencil.
pub fn derivative_scan(series: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    if series.len() < 3 {
        return Err(Error::DegenerateGrid("need at least 3 points"));
    }
    let x: Vec<f64> = series.iter().map(|(u, _)| u.abs()).collect();
    let f: Vec<f64> = series.iter().map(|(_, q)| *q).collect();
    let increasing = x[1] > x[0];
    let monotone = x
        .windows(2)
        .all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
    let u_monotone = series.windows(2).all(|w| w[1].0 > w[0].0) || series.windows(2).all(|w| w[1].0 < w[0].0);
    if !monotone || !u_monotone {
        return Err(Error::DegenerateGrid("|u| must be strictly monotone"));
    }
    let last = series.len() - 1;
    Ok((0..=last)
        .map(|i| {
            let j = i.clamp(1, last - 1);
            let d = lagrange3_derivative(
                [x[j - 1], x[j], x[j + 1]],
                [f[j - 1], f[j], f[j + 1]],
                x[i],
            );
            (series[i].0, d)
        })
        .collect())
}

/// Derivative at `t` of the parabola through three points.
fn lagrange3_derivative(x: [f64; 3], f: [f64; 3], t: f64) -> f64 {
    let [x0, x1, x2] = x;
    f[0] * ((t - x1) + (t - x2)) / ((x0 - x1) * (x0 - x2))
        + f[1] * ((t - x0) + (t - x2)) / ((x1 - x0) * (x1 - x2))
        + f[2] * ((t - x0) + (t - x1)) / ((x2 - x0) * (x2 - x1))
}
