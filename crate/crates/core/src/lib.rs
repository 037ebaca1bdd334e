//! Numerical spin geometry on Fefferman spaces of strictly pseudoconvex
//! CR manifolds.
//!
//! The crate builds, for a concrete pseudo-hermitian manifold `(M, T₁₀, θ)`
//! presented as a chart with an adapted frame, the circle bundle `B = M × S¹`
//! carrying the Lorentzian metric
//!
//! ```text
//! h = π*L_θ − i c · π*θ ∘ A
//! ```
//!
//! together with the Webster connection on `M`, the Levi-Civita connection and
//! full curvature stack of `(B, h)`, and a spinor calculus (Clifford actions,
//! spinor derivative, Dirac and twistor operators) on the split spinor bundle
//! `S ≅ π*S_H ⊕ π*S_H`. Everything is evaluated pointwise in double precision;
//! derivative-level objects use central finite differences with fixed steps.
//!
//! Modules mirror the mathematical layers:
//!
//! - [`clifford`] — matrix realizations of Clifford algebras, spinor modules
//!   and their splitting, pairings, and the action of low-degree forms.
//! - [`cr`] — concrete CR models (Heisenberg group, the round 3-sphere) as
//!   charts with contact form, characteristic field, and adapted `H`-frame.
//! - [`webster`] — the Webster connection, its torsion and curvature, computed
//!   both from closed forms and from a per-point least-squares axiom solve.
//! - [`fefferman`] — the circle bundle, its connections, the Lorentzian metric
//!   and the adapted isotropic frame.
//! - [`lc`] — Levi-Civita connection of `(B, h)` (closed forms vs. a Koszul
//!   finite-difference oracle) and the Riemann/Ricci/Weyl/Schouten stack.
//! - [`spin`] — split spinors, the distinguished twistor spinor fields, the
//!   spinor derivative, Dirac/twistor operators and the canonical vector field.
//! - [`suite`] — the named verification checks consumed by the CLI.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std` feature
//! only toggles `std::error::Error` and float intrinsics.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod clifford;
pub mod cr;
pub mod fd;
pub mod fefferman;
pub mod lc;
pub mod linalg;
pub mod rng;
pub mod spin;
pub mod suite;
pub mod webster;

use alloc::string::String;
use core::fmt;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Errors surfaced by constructors and evaluators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor argument violates its precondition.
    InvalidParameter(String),
    /// Two spinors (or a spinor and an operator) belong to different
    /// Clifford representations.
    MismatchedRep,
    /// Form degree not supported by the Clifford action.
    UnsupportedDegree(usize),
    /// A vector expected to lie in the contact distribution has a
    /// θ-component of the given magnitude.
    NotHorizontal(f64),
    /// A linear system built from frame data was singular.
    SingularFrame(String),
    /// A chart evaluation outside the model's validity region.
    OutsideChart(String),
    /// Unknown check name passed to the suite.
    UnknownCheck(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::MismatchedRep => write!(f, "spinor belongs to a different representation"),
            Error::UnsupportedDegree(d) => write!(f, "unsupported form degree {d}"),
            Error::NotHorizontal(t) => {
                write!(f, "vector has θ-component {t:e}, not in the contact distribution")
            }
            Error::SingularFrame(msg) => write!(f, "singular frame system: {msg}"),
            Error::OutsideChart(msg) => write!(f, "point outside chart: {msg}"),
            Error::UnknownCheck(name) => write!(f, "unknown check: {name}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
