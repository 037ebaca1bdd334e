//! The flat model: `ℝ^{2n+1}` with coordinates `(x₁…x_n, y₁…y_n, t)`,
//! `θ = dt + ½Σ(x_j dy_j − y_j dx_j)`, `T = ∂_t`,
//! `X_j = ∂_{x_j} + (y_j/2)∂_t`, `JX_j = ∂_{y_j} − (x_j/2)∂_t`.
//! All brackets are constant: `[X_j, JX_j] = −T`, everything else vanishes.

use alloc::vec;
use alloc::vec::Vec;

use super::{ChartPoint, MDir};

pub(super) fn theta(n: usize, p: &ChartPoint) -> Vec<f64> {
    let c = p.coords();
    let mut th = vec![0.0; 2 * n + 1];
    for j in 0..n {
        th[j] = -0.5 * c[n + j]; // dx_j coefficient: −y_j/2
        th[n + j] = 0.5 * c[j]; // dy_j coefficient: +x_j/2
    }
    th[2 * n] = 1.0;
    th
}

pub(super) fn t_field(n: usize, _p: &ChartPoint) -> Vec<f64> {
    let mut v = vec![0.0; 2 * n + 1];
    v[2 * n] = 1.0;
    v
}

pub(super) fn h_frame(n: usize, p: &ChartPoint, k: usize) -> Vec<f64> {
    let c = p.coords();
    let j = k / 2;
    let mut v = vec![0.0; 2 * n + 1];
    if k % 2 == 0 {
        v[j] = 1.0;
        v[2 * n] = 0.5 * c[n + j];
    } else {
        v[n + j] = 1.0;
        v[2 * n] = -0.5 * c[j];
    }
    v
}

/// `dθ = Σ dx_j ∧ dy_j`.
pub(super) fn d_theta(n: usize, u: &[f64], v: &[f64]) -> f64 {
    (0..n).map(|j| u[j] * v[n + j] - u[n + j] * v[j]).sum()
}

pub(super) fn bracket(n: usize, a: MDir, b: MDir, _p: &ChartPoint) -> Vec<f64> {
    let mut out = vec![0.0; 2 * n + 1];
    if let (MDir::H(i), MDir::H(j)) = (a, b) {
        // [X_a, Y_a] = −∂_t and its antisymmetric partner.
        if i / 2 == j / 2 && i % 2 == 0 && j % 2 == 1 {
            out[2 * n] = -1.0;
        } else if i / 2 == j / 2 && i % 2 == 1 && j % 2 == 0 {
            out[2 * n] = 1.0;
        }
    }
    out
}
