//! Central finite-difference stencils.
//!
//! Geometry-level first derivatives (frame brackets, exterior derivatives,
//! connection-form differentials) use the second-order stencil with
//! `STEP_BRACKET`; curvature-level differentiation of connection tables uses
//! `STEP_CURVATURE`; spinor component functions, which are smooth and cheap,
//! use the fourth-order stencil with `STEP_SPINOR`.

/// Step for brackets, dθ, dω (second-order central).
pub const STEP_BRACKET: f64 = 1e-5;

/// Step for the fourth-order bracket stencil. Frame brackets feed nested
/// derivatives (connection forms get differentiated again for curvature), so
/// they need the low-roundoff fourth-order stencil: truncation ~1e−11 and
/// roundoff ~1e−13, versus ~1e−11 roundoff for the second-order stencil at
/// h = 1e−5, which an outer derivative would amplify above curvature
/// tolerances.
pub const STEP_BRACKET4: f64 = 1e-3;

/// Step for differentiating connection-coefficient tables (second-order).
pub const STEP_CURVATURE: f64 = 1e-4;

/// Step for spinor component functions (fourth-order).
pub const STEP_SPINOR: f64 = 1e-3;

/// Step for the outermost derivative in nested second-derivative checks.
pub const STEP_NESTED: f64 = 3e-3;

/// d/dt f(t) at t = 0, second-order central.
pub fn central2<F: Fn(f64) -> f64>(f: F, h: f64) -> f64 {
    (f(h) - f(-h)) / (2.0 * h)
}

/// d/dt f(t) at t = 0, fourth-order central.
pub fn central4<F: Fn(f64) -> f64>(f: F, h: f64) -> f64 {
    (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h)
}

/// Second-order central derivative of a vector-valued function.
pub fn central2_vec<F: Fn(f64) -> alloc::vec::Vec<f64>>(f: F, h: f64) -> alloc::vec::Vec<f64> {
    let plus = f(h);
    let minus = f(-h);
    plus.iter()
        .zip(minus.iter())
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect()
}

/// Fourth-order central derivative of a vector-valued function.
pub fn central4_vec<F: Fn(f64) -> alloc::vec::Vec<f64>>(f: F, h: f64) -> alloc::vec::Vec<f64> {
    let p2 = f(2.0 * h);
    let p1 = f(h);
    let m1 = f(-h);
    let m2 = f(-2.0 * h);
    (0..p1.len())
        .map(|i| (-p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h))
        .collect()
}

/// Fourth-order central derivative of a complex-valued function.
pub fn central4_c<F: Fn(f64) -> crate::C64>(f: F, h: f64) -> crate::C64 {
    (-f(2.0 * h) + f(h) * 8.0 - f(-h) * 8.0 + f(-2.0 * h)) / (12.0 * h)
}

extern crate alloc;
