//! Concrete strictly pseudoconvex pseudo-hermitian manifolds.
//!
//! A model is a chart `ℝ^{2n+1} ⊃ U` carrying a contact form `θ`, its
//! characteristic vector field `T` (`θ(T) = 1`, `T⌟dθ = 0`), an
//! `L_θ`-orthonormal frame `(X₁, JX₁, …, X_n, JX_n)` of the contact
//! distribution `H = ker θ`, and the complex structure `J` acting on that
//! frame by a constant table. The Levi form is `L_θ(X,Y) = dθ(X, JY)` and the
//! exterior derivative follows the bracket convention
//! `dθ(X,Y) = Xθ(Y) − Yθ(X) − θ([X,Y])` (no 1/2 factor) — every sign
//! downstream depends on this pairing of conventions.
//!
//! Frame brackets are analytic on the Heisenberg model and come from central
//! finite differences of the frame coefficient functions on the sphere.

mod heisenberg;
mod sphere3;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::fd::{central4_vec, STEP_BRACKET, STEP_BRACKET4};
use crate::linalg::{solve_real, RMat, RVec};
use crate::rng::Lcg;
use crate::{C64, Error, Result};

/// A point of the model chart.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint(pub Vec<f64>);

impl ChartPoint {
    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

/// A real frame direction on `M`: the characteristic field or an `H`-frame
/// member (0-based; even indices are `X_{α+1}`, odd indices `JX_{α+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MDir {
    T,
    H(usize),
}

/// A complexified frame direction: `Z_α = (X_{2α} − i X_{2α+1})/√2` in the
/// 0-based frame indexing, its conjugate, or `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CDir {
    T,
    Z(usize),
    Zbar(usize),
}

/// Which concrete model this is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelName {
    Heisenberg,
    Sphere3,
}

#[derive(Debug, Clone)]
enum Kind {
    Heisenberg,
    Sphere3,
    /// Same CR structure with `θ` rescaled by a positive constant.
    ScaledTheta { base: Box<CrModel>, factor: f64 },
}

/// A concrete pseudo-hermitian manifold presented in a single chart.
#[derive(Debug, Clone)]
pub struct CrModel {
    pub name: ModelName,
    /// CR dimension `n` (complex dimension of `T₁₀`).
    pub cr_dim: usize,
    kind: Kind,
}

/// The Heisenberg group `ℝ^{2n+1}` with coordinates `(x₁…x_n, y₁…y_n, t)`,
/// `θ = dt + ½Σ(x_j dy_j − y_j dx_j)`.
pub fn make_heisenberg(n: usize) -> Result<CrModel> {
    if n == 0 {
        return Err(Error::InvalidParameter("CR dimension must be ≥ 1".into()));
    }
    Ok(CrModel { name: ModelName::Heisenberg, cr_dim: n, kind: Kind::Heisenberg })
}

/// The unit sphere `S³ ⊂ ℂ²` in Hopf coordinates `(η, ξ₁, ξ₂)` with the
/// restriction of `(i/2)Σ(z_j dz̄_j − z̄_j dz_j)` as contact form.
pub fn make_sphere3() -> CrModel {
    CrModel { name: ModelName::Sphere3, cr_dim: 1, kind: Kind::Sphere3 }
}

/// The same CR structure with `θ̃ = f·θ` for a positive constant `f`
/// (frame rescaled by `1/√f`, characteristic field by `1/f`).
pub fn scale_theta(model: &CrModel, factor: f64) -> Result<CrModel> {
    if factor <= 0.0 {
        return Err(Error::InvalidParameter("theta scale must be positive".into()));
    }
    Ok(CrModel {
        name: model.name,
        cr_dim: model.cr_dim,
        kind: Kind::ScaledTheta { base: Box::new(model.clone()), factor },
    })
}

impl CrModel {
    /// Chart dimension `2n + 1`.
    pub fn dim(&self) -> usize {
        2 * self.cr_dim + 1
    }

    /// Number of `H`-frame fields.
    pub fn h_count(&self) -> usize {
        2 * self.cr_dim
    }

    pub fn chart_check(&self, p: &ChartPoint) -> Result<()> {
        if p.0.len() != self.dim() {
            return Err(Error::OutsideChart(String::from("coordinate count mismatch")));
        }
        match &self.kind {
            Kind::Heisenberg => Ok(()),
            Kind::Sphere3 => sphere3::chart_check(p),
            Kind::ScaledTheta { base, .. } => base.chart_check(p),
        }
    }

    /// Coefficients of `θ` in the chart coframe.
    pub fn theta(&self, p: &ChartPoint) -> Vec<f64> {
        match &self.kind {
            Kind::Heisenberg => heisenberg::theta(self.cr_dim, p),
            Kind::Sphere3 => sphere3::theta(p),
            Kind::ScaledTheta { base, factor } => {
                base.theta(p).into_iter().map(|c| c * factor).collect()
            }
        }
    }

    /// `θ(v)` for a coordinate vector.
    pub fn theta_apply(&self, p: &ChartPoint, v: &[f64]) -> f64 {
        self.theta(p).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// The characteristic vector field at `p`.
    pub fn t_field(&self, p: &ChartPoint) -> Vec<f64> {
        match &self.kind {
            Kind::Heisenberg => heisenberg::t_field(self.cr_dim, p),
            Kind::Sphere3 => sphere3::t_field(p),
            Kind::ScaledTheta { base, factor } => {
                base.t_field(p).into_iter().map(|c| c / factor).collect()
            }
        }
    }

    /// The `k`-th `H`-frame field at `p` (0-based).
    pub fn h_frame(&self, p: &ChartPoint, k: usize) -> Vec<f64> {
        match &self.kind {
            Kind::Heisenberg => heisenberg::h_frame(self.cr_dim, p, k),
            Kind::Sphere3 => sphere3::h_frame(p, k),
            Kind::ScaledTheta { base, factor } => {
                let s = 1.0 / factor.sqrt();
                base.h_frame(p, k).into_iter().map(|c| c * s).collect()
            }
        }
    }

    pub fn frame_vec(&self, p: &ChartPoint, d: MDir) -> Vec<f64> {
        match d {
            MDir::T => self.t_field(p),
            MDir::H(k) => self.h_frame(p, k),
        }
    }

    /// `J` on the frame: `J X_{2α} = X_{2α+1}`, `J X_{2α+1} = −X_{2α}`.
    /// Returns `(image index, sign)`.
    pub fn j_frame(&self, k: usize) -> (usize, f64) {
        if k % 2 == 0 {
            (k + 1, 1.0)
        } else {
            (k - 1, -1.0)
        }
    }

    /// Apply `J` to an `H`-frame coefficient vector.
    pub fn j_coeffs(&self, c: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; c.len()];
        for (k, &ck) in c.iter().enumerate() {
            let (kk, s) = self.j_frame(k);
            out[kk] += s * ck;
        }
        out
    }

    /// `dθ(u,v)` for coordinate vectors (analytic per model).
    pub fn d_theta(&self, p: &ChartPoint, u: &[f64], v: &[f64]) -> f64 {
        match &self.kind {
            Kind::Heisenberg => heisenberg::d_theta(self.cr_dim, u, v),
            Kind::Sphere3 => sphere3::d_theta(p, u, v),
            Kind::ScaledTheta { base, factor } => factor * base.d_theta(p, u, v),
        }
    }

    /// `dθ(u,v)` from central differences of the θ-coefficients; an
    /// independent path used to pin the exterior-derivative convention.
    pub fn d_theta_fd(&self, p: &ChartPoint, u: &[f64], v: &[f64]) -> f64 {
        let du = crate::fd::central2(
            |t| {
                let q = ChartPoint(p.0.iter().zip(u).map(|(x, a)| x + t * a).collect());
                self.theta_apply(&q, v)
            },
            STEP_BRACKET,
        );
        let dv = crate::fd::central2(
            |t| {
                let q = ChartPoint(p.0.iter().zip(v).map(|(x, a)| x + t * a).collect());
                self.theta_apply(&q, u)
            },
            STEP_BRACKET,
        );
        // Constant-coefficient extensions commute, so no bracket term.
        du - dv
    }

    /// Frame bracket `[a, b]` at `p` as a coordinate vector.
    pub fn bracket(&self, a: MDir, b: MDir, p: &ChartPoint) -> Vec<f64> {
        match &self.kind {
            Kind::Heisenberg => heisenberg::bracket(self.cr_dim, a, b, p),
            Kind::Sphere3 => sphere3::bracket(a, b, p),
            Kind::ScaledTheta { base, factor } => {
                let scale = |d: MDir| match d {
                    MDir::T => 1.0 / factor,
                    MDir::H(_) => 1.0 / factor.sqrt(),
                };
                let s = scale(a) * scale(b);
                base.bracket(a, b, p).into_iter().map(|c| c * s).collect()
            }
        }
    }

    /// Bracket by symmetric central differences of the frame coefficients
    /// (fourth-order stencil; see `fd::STEP_BRACKET4`).
    pub fn bracket_fd(&self, a: MDir, b: MDir, p: &ChartPoint) -> Vec<f64> {
        let va = self.frame_vec(p, a);
        let vb = self.frame_vec(p, b);
        let dvb = central4_vec(
            |t| {
                let q = ChartPoint(p.0.iter().zip(&va).map(|(x, c)| x + t * c).collect());
                self.frame_vec(&q, b)
            },
            STEP_BRACKET4,
        );
        let dva = central4_vec(
            |t| {
                let q = ChartPoint(p.0.iter().zip(&vb).map(|(x, c)| x + t * c).collect());
                self.frame_vec(&q, a)
            },
            STEP_BRACKET4,
        );
        dvb.iter().zip(&dva).map(|(x, y)| x - y).collect()
    }

    /// Decompose a coordinate vector as `Σ c_k X_k + c_T T`.
    pub fn decompose(&self, p: &ChartPoint, v: &[f64]) -> Result<(Vec<f64>, f64)> {
        let d = self.dim();
        let mut mat = RMat::zeros(d, d);
        for k in 0..self.h_count() {
            let col = self.h_frame(p, k);
            for (i, &c) in col.iter().enumerate() {
                mat[(i, k)] = c;
            }
        }
        let t = self.t_field(p);
        for (i, &c) in t.iter().enumerate() {
            mat[(i, d - 1)] = c;
        }
        let sol = solve_real(&mat, &RVec::from_row_slice(v))?;
        let mut h = Vec::with_capacity(self.h_count());
        for k in 0..self.h_count() {
            h.push(sol[k]);
        }
        Ok((h, sol[d - 1]))
    }

    /// Apply `J` to the `H`-part of a coordinate vector, returning a
    /// coordinate vector.
    pub fn j_apply(&self, p: &ChartPoint, v: &[f64]) -> Result<Vec<f64>> {
        let (h, _) = self.decompose(p, v)?;
        let jh = self.j_coeffs(&h);
        let mut out = vec![0.0; self.dim()];
        for (k, &c) in jh.iter().enumerate() {
            if c != 0.0 {
                let f = self.h_frame(p, k);
                for (i, &fi) in f.iter().enumerate() {
                    out[i] += c * fi;
                }
            }
        }
        Ok(out)
    }

    /// The Levi form on arbitrary tangent vectors,
    /// `L_θ(u,v) = dθ(u, J v_H)`; `T`-components are annihilated.
    pub fn levi_vv(&self, p: &ChartPoint, u: &[f64], v: &[f64]) -> Result<f64> {
        let jv = self.j_apply(p, v)?;
        Ok(self.d_theta(p, u, &jv))
    }

    /// The Levi form on `H`-vectors, rejecting inputs with a θ-component
    /// above tolerance.
    pub fn levi_form(&self, p: &ChartPoint, u: &[f64], v: &[f64]) -> Result<f64> {
        for w in [u, v] {
            let t = self.theta_apply(p, w);
            if t.abs() > 1e-9 {
                return Err(Error::NotHorizontal(t));
            }
        }
        self.levi_vv(p, u, v)
    }

    /// Bilinear extension of the Levi form to complexified vectors.
    pub fn levi_bil(&self, p: &ChartPoint, u: &[C64], v: &[C64]) -> Result<C64> {
        let (ur, ui) = split_c(u);
        let (vr, vi) = split_c(v);
        let rr = self.levi_vv(p, &ur, &vr)?;
        let ii = self.levi_vv(p, &ui, &vi)?;
        let ri = self.levi_vv(p, &ur, &vi)?;
        let ir = self.levi_vv(p, &ui, &vr)?;
        Ok(C64::new(rr - ii, ri + ir))
    }

    /// Hermitian Levi form `L_θ(u, v̄)` on complexified vectors.
    pub fn levi_herm(&self, p: &ChartPoint, u: &[C64], v: &[C64]) -> Result<C64> {
        let vbar: Vec<C64> = v.iter().map(|z| z.conj()).collect();
        self.levi_bil(p, u, &vbar)
    }

    /// `θ` extended complex-bilinearly.
    pub fn theta_c(&self, p: &ChartPoint, v: &[C64]) -> C64 {
        let th = self.theta(p);
        th.iter().zip(v).map(|(a, z)| z * *a).sum()
    }

    /// `dθ` extended complex-bilinearly.
    pub fn d_theta_c(&self, p: &ChartPoint, u: &[C64], v: &[C64]) -> C64 {
        let (ur, ui) = split_c(u);
        let (vr, vi) = split_c(v);
        let rr = self.d_theta(p, &ur, &vr);
        let ii = self.d_theta(p, &ui, &vi);
        let ri = self.d_theta(p, &ur, &vi);
        let ir = self.d_theta(p, &ui, &vr);
        C64::new(rr - ii, ri + ir)
    }

    /// The unitary frame field `Z_α = (X_{2α} − i X_{2α+1})/√2`.
    pub fn z_frame(&self, p: &ChartPoint, alpha: usize) -> Vec<C64> {
        let x = self.h_frame(p, 2 * alpha);
        let y = self.h_frame(p, 2 * alpha + 1);
        let s = 1.0 / 2.0_f64.sqrt();
        x.iter()
            .zip(&y)
            .map(|(a, b)| C64::new(a * s, -b * s))
            .collect()
    }

    /// Complexified vector of a `CDir` frame direction.
    pub fn c_frame(&self, p: &ChartPoint, d: CDir) -> Vec<C64> {
        match d {
            CDir::T => self.t_field(p).into_iter().map(|x| C64::new(x, 0.0)).collect(),
            CDir::Z(a) => self.z_frame(p, a),
            CDir::Zbar(a) => self.z_frame(p, a).into_iter().map(|z| z.conj()).collect(),
        }
    }

    /// Bracket of complexified frame directions by bilinearity.
    pub fn bracket_c(&self, a: CDir, b: CDir, p: &ChartPoint) -> Vec<C64> {
        let terms_a = c_dir_terms(a);
        let terms_b = c_dir_terms(b);
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        for (ca, da) in &terms_a {
            for (cb, db) in &terms_b {
                let br = self.bracket(*da, *db, p);
                let w = ca * cb;
                for (o, x) in out.iter_mut().zip(&br) {
                    *o += w * x;
                }
            }
        }
        out
    }

    /// Decompose a complexified vector into `(Z-coeffs, Z̄-coeffs, T-coeff)`.
    pub fn decompose_c(&self, p: &ChartPoint, v: &[C64]) -> Result<(Vec<C64>, Vec<C64>, C64)> {
        let (vr, vi) = split_c(v);
        let (hr, tr) = self.decompose(p, &vr)?;
        let (hi, ti) = self.decompose(p, &vi)?;
        let n = self.cr_dim;
        let s = 1.0 / 2.0_f64.sqrt();
        let mut zc = Vec::with_capacity(n);
        let mut zbc = Vec::with_capacity(n);
        for a in 0..n {
            // X_{2a} = (Z_a + Z̄_a)/√2, X_{2a+1} = i(Z_a − Z̄_a)/√2.
            let cx = C64::new(hr[2 * a], hi[2 * a]);
            let cy = C64::new(hr[2 * a + 1], hi[2 * a + 1]);
            zc.push(s * (cx + C64::new(0.0, 1.0) * cy));
            zbc.push(s * (cx - C64::new(0.0, 1.0) * cy));
        }
        Ok((zc, zbc, C64::new(tr, ti)))
    }

    /// Residual of the Nijenhuis integrability condition on a frame pair,
    /// together with the horizontality defect of `[JX,Y]+[X,JY]`.
    pub fn nijenhuis_residual(&self, p: &ChartPoint, k: usize, l: usize) -> Result<f64> {
        let (jk, sk) = self.j_frame(k);
        let (jl, sl) = self.j_frame(l);
        let dim = self.dim();
        let mut sum = vec![0.0; dim];
        // [JX_k, X_l] + [X_k, JX_l]
        let b1 = self.bracket(MDir::H(jk), MDir::H(l), p);
        let b2 = self.bracket(MDir::H(k), MDir::H(jl), p);
        for i in 0..dim {
            sum[i] = sk * b1[i] + sl * b2[i];
        }
        let theta_defect = self.theta_apply(p, &sum).abs();
        let jsum = self.j_apply(p, &sum)?;
        let b3 = self.bracket(MDir::H(jk), MDir::H(jl), p);
        let b4 = self.bracket(MDir::H(k), MDir::H(l), p);
        let mut worst: f64 = theta_defect;
        for i in 0..dim {
            let nj = jsum[i] - sk * sl * b3[i] + b4[i];
            worst = worst.max(nj.abs());
        }
        Ok(worst)
    }

    /// Deterministic sample points from the model's linear-congruential
    /// sequence, inside the chart validity region.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<ChartPoint> {
        let mut rng = Lcg::new(seed);
        (0..count).map(|_| self.sample_one(&mut rng)).collect()
    }

    fn sample_one(&self, rng: &mut Lcg) -> ChartPoint {
        match &self.kind {
            Kind::Heisenberg => {
                ChartPoint((0..self.dim()).map(|_| rng.range(-1.0, 1.0)).collect())
            }
            Kind::Sphere3 => ChartPoint(vec![
                rng.range(0.35, 1.05),
                rng.range(0.1, 6.1),
                rng.range(0.1, 6.1),
            ]),
            Kind::ScaledTheta { base, .. } => base.sample_one(rng),
        }
    }
}

fn split_c(v: &[C64]) -> (Vec<f64>, Vec<f64>) {
    (v.iter().map(|z| z.re).collect(), v.iter().map(|z| z.im).collect())
}

fn c_dir_terms(d: CDir) -> Vec<(C64, MDir)> {
    let s = 1.0 / 2.0_f64.sqrt();
    match d {
        CDir::T => vec![(C64::new(1.0, 0.0), MDir::T)],
        CDir::Z(a) => vec![
            (C64::new(s, 0.0), MDir::H(2 * a)),
            (C64::new(0.0, -s), MDir::H(2 * a + 1)),
        ],
        CDir::Zbar(a) => vec![
            (C64::new(s, 0.0), MDir::H(2 * a)),
            (C64::new(0.0, s), MDir::H(2 * a + 1)),
        ],
    }
}
