//! The round CR sphere `S³ ⊂ ℂ²` in Hopf coordinates
//! `(η, ξ₁, ξ₂) ↦ (cos η · e^{iξ₁}, sin η · e^{iξ₂})`, valid for
//! `η ∈ (0, π/2)`.
//!
//! The contact form is `θ = cos²η dξ₁ + sin²η dξ₂` (the restriction of
//! `Σ(a_j db_j − b_j da_j)`), the characteristic field the Hopf field
//! `T = ∂_{ξ₁} + ∂_{ξ₂}`, and the frame comes from the right-invariant
//! quaternion fields `jq`, `kq` scaled by `1/√2` so `L_θ(X₁,X₁) = 1`.
//! Writing `ψ = ξ₁ + ξ₂`:
//!
//! ```text
//! √2·X₁ = cos ψ ∂_η + tan η sin ψ ∂_{ξ₁} − cot η sin ψ ∂_{ξ₂}
//! √2·X₂ = sin ψ ∂_η − tan η cos ψ ∂_{ξ₁} + cot η cos ψ ∂_{ξ₂}
//! ```
//!
//! Brackets are not supplied analytically — this model exercises the
//! finite-difference path.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{ChartPoint, MDir};
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

const ETA_MARGIN: f64 = 0.05;

pub(super) fn chart_check(p: &ChartPoint) -> Result<()> {
    let eta = p.coords()[0];
    if !(ETA_MARGIN..=core::f64::consts::FRAC_PI_2 - ETA_MARGIN).contains(&eta) {
        return Err(Error::OutsideChart(String::from(
            "η too close to a Hopf-coordinate degeneracy",
        )));
    }
    Ok(())
}

pub(super) fn theta(p: &ChartPoint) -> Vec<f64> {
    let eta = p.coords()[0];
    vec![0.0, eta.cos().powi(2), eta.sin().powi(2)]
}

pub(super) fn t_field(_p: &ChartPoint) -> Vec<f64> {
    vec![0.0, 1.0, 1.0]
}

pub(super) fn h_frame(p: &ChartPoint, k: usize) -> Vec<f64> {
    let c = p.coords();
    let (eta, psi) = (c[0], c[1] + c[2]);
    let s = 1.0 / 2.0_f64.sqrt();
    let (tn, ct) = (eta.tan(), 1.0 / eta.tan());
    match k {
        0 => vec![s * psi.cos(), s * tn * psi.sin(), -s * ct * psi.sin()],
        1 => vec![s * psi.sin(), -s * tn * psi.cos(), s * ct * psi.cos()],
        _ => unreachable!("sphere3 has a 2-dimensional contact distribution"),
    }
}

/// `dθ = sin 2η · dη ∧ (dξ₂ − dξ₁)`.
pub(super) fn d_theta(p: &ChartPoint, u: &[f64], v: &[f64]) -> f64 {
    let eta = p.coords()[0];
    (2.0 * eta).sin() * (u[0] * (v[2] - v[1]) - v[0] * (u[2] - u[1]))
}

/// Frame brackets from the right-invariant structure:
/// `[T,X₁] = −2X₂`, `[T,X₂] = 2X₁`, `[X₁,X₂] = −T`.
pub(super) fn bracket(a: MDir, b: MDir, p: &ChartPoint) -> Vec<f64> {
    let scaled = |v: Vec<f64>, s: f64| v.into_iter().map(|x| s * x).collect();
    match (a, b) {
        (MDir::T, MDir::H(0)) => scaled(h_frame(p, 1), -2.0),
        (MDir::H(0), MDir::T) => scaled(h_frame(p, 1), 2.0),
        (MDir::T, MDir::H(1)) => scaled(h_frame(p, 0), 2.0),
        (MDir::H(1), MDir::T) => scaled(h_frame(p, 0), -2.0),
        (MDir::H(0), MDir::H(1)) => scaled(t_field(p), -1.0),
        (MDir::H(1), MDir::H(0)) => t_field(p),
        _ => vec![0.0; 3],
    }
}
