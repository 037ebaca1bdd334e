//! The circle bundle over a model in a global trivialization, its
//! connections, the Lorentzian metric and the adapted isotropic frame.
//!
//! The bundle is `B = chart × S¹` with fiber angle `ϕ`; the connection form
//! in the trivialization is `A = i dϕ + π*a` with `a` an `iℝ`-valued 1-form
//! on the base:
//!
//! - `webster_sqrt`: `a = −½ Tr ω_s` (the square-root Webster connection),
//! - `fefferman_sqrt`: `a = −½ Tr ω_s − i R^W/(4(n+1)) · θ`, with the metric
//!   constant forced to `c = 8/(n+2)`,
//! - `custom`: the square-root Webster connection with a caller-chosen `c`
//!   (the negative-control configuration).
//!
//! The metric is `h = π*L_θ − i c · π*θ ∘ A` with `x∘y = ½(x⊗y + y⊗x)`, and
//! `N = (2/c)∂_ϕ` is the fundamental vertical field, normalized so that
//! `h(N, T*) = 1` comes out automatically. Connection curvatures are
//! assembled in closed form (`Ω^{√W} = −½ Ric^W`, plus `−i R^W dθ/(4(n+1))`
//! for the Fefferman connection); construction verifies that the base has
//! constant Webster scalar curvature, which is what makes the closed form
//! complete — a `dR^W ∧ θ` term would otherwise appear.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::cr::{ChartPoint, CrModel, MDir};
use crate::fd::STEP_BRACKET4;
use crate::linalg::RMat;
use crate::rng::Lcg;
use crate::webster::{
    curvature_point, ricci_vec, CurvaturePoint, OmegaTable, WebsterConnection, WebsterMethod,
};
use crate::{C64, Error, Result};

/// Which connection (and metric constant) the bundle carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundleKind {
    WebsterSqrt,
    FeffermanSqrt,
    Custom,
}

/// A point of the bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct BundlePoint {
    pub base: ChartPoint,
    pub phi: f64,
}

/// A tangent vector of `B = chart × S¹` in coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BVec {
    pub base: Vec<f64>,
    pub phi: f64,
}

impl BVec {
    pub fn zero(dim: usize) -> Self {
        BVec { base: vec![0.0; dim], phi: 0.0 }
    }

    pub fn scale(&self, s: f64) -> Self {
        BVec { base: self.base.iter().map(|x| s * x).collect(), phi: s * self.phi }
    }

    pub fn add(&self, other: &BVec) -> Self {
        BVec {
            base: self.base.iter().zip(&other.base).map(|(a, b)| a + b).collect(),
            phi: self.phi + other.phi,
        }
    }

    pub fn sub(&self, other: &BVec) -> Self {
        self.add(&other.scale(-1.0))
    }
}

/// A frame direction on the bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BDir {
    /// The fundamental vertical field `N = (2/c)∂_ϕ`.
    N,
    /// The horizontal lift of the characteristic field.
    TStar,
    /// The horizontal lift of the `k`-th `H`-frame field.
    XStar(usize),
}

/// The circle bundle with its connection data.
#[derive(Debug, Clone)]
pub struct FeffermanBundle {
    pub model: CrModel,
    pub kind: BundleKind,
    /// Metric constant in `h = π*L_θ − i c π*θ ∘ A`.
    pub c: f64,
    rw: f64,
    rw_spread: f64,
}

/// Build a bundle over `model`.
///
/// `fefferman_sqrt` forces `c = 8/(n+2)` and rejects an override;
/// `webster_sqrt` defaults to the same constant; `custom` requires one.
pub fn build_bundle(
    model: &CrModel,
    kind: BundleKind,
    c_override: Option<f64>,
) -> Result<FeffermanBundle> {
    let n = model.cr_dim;
    let c_default = 8.0 / (n as f64 + 2.0);
    let c = match (kind, c_override) {
        (BundleKind::FeffermanSqrt, None) => c_default,
        (BundleKind::FeffermanSqrt, Some(_)) => {
            return Err(Error::InvalidParameter(
                "fefferman_sqrt forces c = 8/(n+2); use kind = custom to sweep c".into(),
            ))
        }
        (BundleKind::WebsterSqrt, None) => c_default,
        (BundleKind::WebsterSqrt, Some(c)) | (BundleKind::Custom, Some(c)) => c,
        (BundleKind::Custom, None) => {
            return Err(Error::InvalidParameter("custom bundle needs an explicit c".into()))
        }
    };
    if c == 0.0 {
        return Err(Error::InvalidParameter("the metric constant c must be nonzero".into()));
    }

    // The closed-form connection curvature has no dR^W ∧ θ term, so the base
    // must have constant Webster scalar curvature; verify rather than assume.
    let conn = WebsterConnection::new(model, WebsterMethod::ClosedForm);
    let mut values = Vec::new();
    for p in model.sample_points(8, 0xFEFF) {
        let (r, _) = curvature_point(&conn, &p)?.scalar();
        values.push(r);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    if spread > 1e-6 * mean.abs().max(1.0) {
        return Err(Error::InvalidParameter(
            "model has non-constant Webster scalar curvature".into(),
        ));
    }

    Ok(FeffermanBundle { model: model.clone(), kind, c, rw: mean, rw_spread: spread })
}

impl FeffermanBundle {
    /// CR dimension of the base.
    pub fn n(&self) -> usize {
        self.model.cr_dim
    }

    /// Dimension of the total space, `2n + 2`.
    pub fn dim_b(&self) -> usize {
        self.model.dim() + 1
    }

    /// The verified-constant Webster scalar curvature of the base.
    pub fn webster_scalar(&self) -> f64 {
        self.rw
    }

    pub fn webster_scalar_spread(&self) -> f64 {
        self.rw_spread
    }

    /// Webster connection backing the bundle's connection form.
    pub fn webster(&self) -> WebsterConnection<'_> {
        WebsterConnection::new(&self.model, WebsterMethod::ClosedForm)
    }

    /// Local connection form `a(v)` (`iℝ`-valued) with precomputed `ω`.
    pub fn conn_form_with(&self, p: &ChartPoint, om: &OmegaTable, v: &[f64]) -> Result<C64> {
        let half_tr = webster_half_trace(&self.model, p, om, v)?;
        match self.kind {
            BundleKind::WebsterSqrt | BundleKind::Custom => Ok(half_tr),
            BundleKind::FeffermanSqrt => {
                let n = self.n() as f64;
                let theta_v = self.model.theta_apply(p, v);
                Ok(half_tr - C64::new(0.0, self.rw / (4.0 * (n + 1.0))) * theta_v)
            }
        }
    }

    /// Local connection form `a(v)`.
    pub fn conn_form(&self, p: &ChartPoint, v: &[f64]) -> Result<C64> {
        let om = self.webster().omega(p)?;
        self.conn_form_with(p, &om, v)
    }

    /// Connection curvature `Ω^A(u,v)` (`iℝ`-valued, closed form) given the
    /// Webster curvature tables at `p`.
    pub fn curv_form_with(
        &self,
        p: &ChartPoint,
        wcp: &CurvaturePoint,
        u: &[f64],
        v: &[f64],
    ) -> Result<C64> {
        let uc: Vec<C64> = u.iter().map(|&x| C64::new(x, 0.0)).collect();
        let vc: Vec<C64> = v.iter().map(|&x| C64::new(x, 0.0)).collect();
        let ric = ricci_vec(&self.model, wcp, p, &uc, &vc)?;
        let base = ric * C64::new(-0.5, 0.0); // Ω^{√W} = −½ Ric^W
        match self.kind {
            BundleKind::WebsterSqrt | BundleKind::Custom => Ok(base),
            BundleKind::FeffermanSqrt => {
                let n = self.n() as f64;
                let dtheta = self.model.d_theta(p, u, v);
                Ok(base - C64::new(0.0, self.rw / (4.0 * (n + 1.0))) * dtheta)
            }
        }
    }

    /// Connection curvature `Ω^A(u,v)`.
    pub fn curv_form(&self, p: &ChartPoint, u: &[f64], v: &[f64]) -> Result<C64> {
        let wcp = curvature_point(&self.webster(), p)?;
        self.curv_form_with(p, &wcp, u, v)
    }

    /// Horizontal lift of a base vector: `v* = v + i a(v) ∂_ϕ`.
    pub fn lift_with(&self, p: &ChartPoint, om: &OmegaTable, v: &[f64]) -> Result<BVec> {
        let a = self.conn_form_with(p, om, v)?;
        Ok(BVec { base: v.to_vec(), phi: (C64::new(0.0, 1.0) * a).re })
    }

    pub fn lift(&self, p: &ChartPoint, v: &[f64]) -> Result<BVec> {
        let om = self.webster().omega(p)?;
        self.lift_with(p, &om, v)
    }

    /// The fundamental vertical field `N = (2/c)∂_ϕ`.
    pub fn n_field(&self) -> BVec {
        BVec { base: vec![0.0; self.model.dim()], phi: 2.0 / self.c }
    }

    pub fn frame_vec_with(&self, p: &ChartPoint, om: &OmegaTable, d: BDir) -> Result<BVec> {
        match d {
            BDir::N => Ok(self.n_field()),
            BDir::TStar => self.lift_with(p, om, &self.model.t_field(p)),
            BDir::XStar(k) => self.lift_with(p, om, &self.model.h_frame(p, k)),
        }
    }

    pub fn frame_vec(&self, p: &ChartPoint, d: BDir) -> Result<BVec> {
        let om = self.webster().omega(p)?;
        self.frame_vec_with(p, &om, d)
    }

    /// The metric `h(u,v) = L_θ(du,dv) − i(c/2){θ(du)A(v) + θ(dv)A(u)}`.
    pub fn metric(&self, p: &ChartPoint, u: &BVec, v: &BVec) -> Result<f64> {
        let om = self.webster().omega(p)?;
        self.metric_with(p, &om, u, v)
    }

    pub fn metric_with(&self, p: &ChartPoint, om: &OmegaTable, u: &BVec, v: &BVec) -> Result<f64> {
        let levi = self.model.levi_vv(p, &u.base, &v.base)?;
        let a_u = self.conn_form_with(p, om, &u.base)? + C64::new(0.0, u.phi);
        let a_v = self.conn_form_with(p, om, &v.base)? + C64::new(0.0, v.phi);
        let th_u = self.model.theta_apply(p, &u.base);
        let th_v = self.model.theta_apply(p, &v.base);
        let cross = C64::new(0.0, -self.c / 2.0) * (a_v * th_u + a_u * th_v);
        Ok(levi + cross.re)
    }

    /// Gram matrix of the coordinate basis `(∂_1,…,∂_{2n+1}, ∂_ϕ)`.
    pub fn gram_coords(&self, p: &ChartPoint) -> Result<RMat> {
        let om = self.webster().omega(p)?;
        let d = self.dim_b();
        let dim = self.model.dim();
        let basis: Vec<BVec> = (0..d)
            .map(|i| {
                let mut v = BVec::zero(dim);
                if i < dim {
                    v.base[i] = 1.0;
                } else {
                    v.phi = 1.0;
                }
                v
            })
            .collect();
        let mut g = RMat::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let x = self.metric_with(p, &om, &basis[i], &basis[j])?;
                g[(i, j)] = x;
                g[(j, i)] = x;
            }
        }
        Ok(g)
    }

    /// Frame bracket on the bundle from base brackets and the connection
    /// curvature: `[u*, v*] = [u,v]* + i(c/2)Ω^A(u,v)·N`, `[·, N] = 0`.
    pub fn bracket_b(&self, p: &ChartPoint, a: BDir, b: BDir) -> Result<BVec> {
        match (a, b) {
            (BDir::N, _) | (_, BDir::N) => Ok(BVec::zero(self.model.dim())),
            _ => {
                let (da, va) = self.mdir_of(p, a)?;
                let (db, vb) = self.mdir_of(p, b)?;
                let om = self.webster().omega(p)?;
                let br = self.model.bracket(da, db, p);
                let lifted = self.lift_with(p, &om, &br)?;
                let wcp = curvature_point(&self.webster(), p)?;
                let omega_ab = self.curv_form_with(p, &wcp, &va, &vb)?;
                let vertical = (C64::new(0.0, self.c / 2.0) * omega_ab).re;
                Ok(lifted.add(&self.n_field().scale(vertical)))
            }
        }
    }

    fn mdir_of(&self, p: &ChartPoint, d: BDir) -> Result<(MDir, Vec<f64>)> {
        match d {
            BDir::N => Err(Error::InvalidParameter("vertical direction has no base part".into())),
            BDir::TStar => Ok((MDir::T, self.model.t_field(p))),
            BDir::XStar(k) => Ok((MDir::H(k), self.model.h_frame(p, k))),
        }
    }

    /// Frame bracket by finite differences of the lifted frame coefficient
    /// functions — the numerical oracle path.
    pub fn bracket_b_fd(&self, p: &ChartPoint, a: BDir, b: BDir) -> Result<BVec> {
        let va = self.frame_vec(p, a)?;
        let vb = self.frame_vec(p, b)?;
        let eval = |d: BDir, along: &BVec, t: f64| -> Result<BVec> {
            let q = ChartPoint(p.0.iter().zip(&along.base).map(|(x, c)| x + t * c).collect());
            // Lifted frame coefficients are ϕ-independent in the
            // trivialization, so only the base displacement matters.
            self.frame_vec(&q, d)
        };
        let h = STEP_BRACKET4;
        let d4 = |d: BDir, along: &BVec| -> Result<BVec> {
            let p2 = eval(d, along, 2.0 * h)?;
            let p1 = eval(d, along, h)?;
            let m1 = eval(d, along, -h)?;
            let m2 = eval(d, along, -2.0 * h)?;
            Ok(p2
                .scale(-1.0)
                .add(&p1.scale(8.0))
                .add(&m1.scale(-8.0))
                .add(&m2)
                .scale(1.0 / (12.0 * h)))
        };
        let dvb = d4(b, &va)?;
        let dva = d4(a, &vb)?;
        Ok(dvb.sub(&dva))
    }

    /// Coefficients of a bundle vector in the adapted frame `(N, T*, X*_k)`.
    pub fn decompose_b(&self, p: &ChartPoint, v: &BVec) -> Result<Vec<f64>> {
        let om = self.webster().omega(p)?;
        let (h, t) = self.model.decompose(p, &v.base)?;
        let mut horiz_phi = self.frame_vec_with(p, &om, BDir::TStar)?.phi * t;
        for (k, &ck) in h.iter().enumerate() {
            horiz_phi += self.frame_vec_with(p, &om, BDir::XStar(k))?.phi * ck;
        }
        let nu = v.phi - horiz_phi;
        let mut out = Vec::with_capacity(self.dim_b());
        out.push(nu * self.c / 2.0); // N-coefficient
        out.push(t);
        out.extend(h);
        Ok(out)
    }

    /// Deterministic bundle sample points.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<BundlePoint> {
        let bases = self.model.sample_points(count, seed);
        let mut rng = Lcg::new(seed ^ 0x5F37_59DF);
        bases
            .into_iter()
            .map(|base| BundlePoint { base, phi: rng.range(0.0, 2.0 * core::f64::consts::PI) })
            .collect()
    }
}

/// `−½ Tr ω_s` evaluated on a coordinate vector.
pub fn webster_half_trace(
    model: &CrModel,
    p: &ChartPoint,
    om: &OmegaTable,
    v: &[f64],
) -> Result<C64> {
    let (h, t) = model.decompose(p, v)?;
    let mut tr = om.t.trace() * t;
    for (k, &ck) in h.iter().enumerate() {
        if ck != 0.0 {
            tr += om.on_mdir(MDir::H(k)).trace() * ck;
        }
    }
    Ok(tr * C64::new(-0.5, 0.0))
}

/// `d(−½ Tr ω_s)(u,v)` by finite differences — the independent route to the
/// square-root Webster curvature.
pub fn webster_sqrt_curv_fd(model: &CrModel, p: &ChartPoint, u: &[f64], v: &[f64]) -> Result<C64> {
    let conn = WebsterConnection::new(model, WebsterMethod::ClosedForm);
    let a_on = |q: &ChartPoint, w: &[f64]| -> Result<C64> {
        let om = conn.omega(q)?;
        webster_half_trace(model, q, &om, w)
    };
    let h = STEP_BRACKET4;
    let shift = |dir: &[f64], t: f64| -> ChartPoint {
        ChartPoint(p.0.iter().zip(dir).map(|(x, c)| x + t * c).collect())
    };
    let d4 = |dir: &[f64], w: &[f64]| -> Result<C64> {
        Ok((-a_on(&shift(dir, 2.0 * h), w)? + a_on(&shift(dir, h), w)? * 8.0
            - a_on(&shift(dir, -h), w)? * 8.0
            + a_on(&shift(dir, -2.0 * h), w)?)
            / (12.0 * h))
    };
    // Constant-coefficient extensions: da(u,v) = u(a(v)) − v(a(u)).
    Ok(d4(u, v)? - d4(v, u)?)
}

/// The adapted frame at a base point: the isotropic pair and the horizontal
/// lifts, `s₁ = (N − T*)/√2` timelike, `s₂ = (N + T*)/√2`.
#[derive(Debug, Clone)]
pub struct AdaptedFrame {
    pub n_vec: BVec,
    pub t_star: BVec,
    pub x_star: Vec<BVec>,
    pub s1: BVec,
    pub s2: BVec,
}

pub fn adapted_frame(bundle: &FeffermanBundle, p: &ChartPoint) -> Result<AdaptedFrame> {
    let om = bundle.webster().omega(p)?;
    let n_vec = bundle.n_field();
    let t_star = bundle.frame_vec_with(p, &om, BDir::TStar)?;
    let x_star: Vec<BVec> = (0..bundle.model.h_count())
        .map(|k| bundle.frame_vec_with(p, &om, BDir::XStar(k)))
        .collect::<Result<_>>()?;
    let s = 1.0 / 2.0_f64.sqrt();
    let s1 = n_vec.sub(&t_star).scale(s);
    let s2 = n_vec.add(&t_star).scale(s);
    Ok(AdaptedFrame { n_vec, t_star, x_star, s1, s2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::{make_heisenberg, make_sphere3, scale_theta};
    use crate::linalg::sym_signature;

    #[test]
    fn constants_and_validation() {
        let m = make_heisenberg(1).unwrap();
        let b = build_bundle(&m, BundleKind::FeffermanSqrt, None).unwrap();
        assert!((b.c - 8.0 / 3.0).abs() < 1e-15);
        assert!(b.webster_scalar().abs() < 1e-8);
        assert!(build_bundle(&m, BundleKind::FeffermanSqrt, Some(1.0)).is_err());
        assert!(build_bundle(&m, BundleKind::Custom, None).is_err());
        assert!(build_bundle(&m, BundleKind::Custom, Some(0.0)).is_err());
        let m2 = make_heisenberg(2).unwrap();
        let b2 = build_bundle(&m2, BundleKind::FeffermanSqrt, None).unwrap();
        assert!((b2.c - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sphere3_connection_form_values() {
        // a^{√W} = iθ and a^{√θ} = (3/4)iθ in this normalization (R^W = 2).
        let m = make_sphere3();
        let bw = build_bundle(&m, BundleKind::WebsterSqrt, None).unwrap();
        let bf = build_bundle(&m, BundleKind::FeffermanSqrt, None).unwrap();
        assert!((bf.webster_scalar() - 2.0).abs() < 1e-7);
        for p in m.sample_points(4, 40) {
            let t = m.t_field(&p);
            let aw = bw.conn_form(&p, &t).unwrap();
            let af = bf.conn_form(&p, &t).unwrap();
            assert!((aw - C64::new(0.0, 1.0)).norm() < 1e-7, "a_w(T) = {aw}");
            assert!((af - C64::new(0.0, 0.75)).norm() < 1e-7, "a_f(T) = {af}");
            // A^√_θ − A^{√W} = −(i/8)R^W·θ for n = 1.
            assert!((af - aw - C64::new(0.0, -0.25)).norm() < 1e-7);
            let x = m.h_frame(&p, 0);
            let diff_x = bf.conn_form(&p, &x).unwrap() - bw.conn_form(&p, &x).unwrap();
            assert!(diff_x.norm() < 1e-9);
        }
    }

    #[test]
    fn adapted_frame_gram() {
        for (model, kind, c_over) in [
            (make_heisenberg(1).unwrap(), BundleKind::FeffermanSqrt, None),
            (make_heisenberg(2).unwrap(), BundleKind::FeffermanSqrt, None),
            (make_sphere3(), BundleKind::FeffermanSqrt, None),
            (make_sphere3(), BundleKind::Custom, Some(1.0)),
        ] {
            let b = build_bundle(&model, kind, c_over).unwrap();
            for p in model.sample_points(4, 41) {
                let om = b.webster().omega(&p).unwrap();
                let fr = adapted_frame(&b, &p).unwrap();
                let h = |u: &BVec, v: &BVec| b.metric_with(&p, &om, u, v).unwrap();
                assert!(h(&fr.n_vec, &fr.n_vec).abs() < 1e-10);
                assert!(h(&fr.t_star, &fr.t_star).abs() < 1e-10);
                assert!((h(&fr.n_vec, &fr.t_star) - 1.0).abs() < 1e-10);
                assert!((h(&fr.s1, &fr.s1) + 1.0).abs() < 1e-10);
                assert!((h(&fr.s2, &fr.s2) - 1.0).abs() < 1e-10);
                assert!(h(&fr.s1, &fr.s2).abs() < 1e-10);
                for (k, xk) in fr.x_star.iter().enumerate() {
                    assert!(h(xk, &fr.n_vec).abs() < 1e-10);
                    assert!(h(xk, &fr.t_star).abs() < 1e-10);
                    for (l, xl) in fr.x_star.iter().enumerate() {
                        let want = if k == l { 1.0 } else { 0.0 };
                        assert!((h(xk, xl) - want).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn lorentzian_signature() {
        for model in [make_heisenberg(1).unwrap(), make_sphere3()] {
            let b = build_bundle(&model, BundleKind::FeffermanSqrt, None).unwrap();
            for p in model.sample_points(4, 42) {
                let g = b.gram_coords(&p).unwrap();
                let (neg, pos) = sym_signature(&g, 1e-10);
                assert_eq!((neg, pos), (1, model.dim()), "signature at {p:?}");
            }
        }
    }

    #[test]
    fn eq38_fd_vs_closed_curvature() {
        // d(−½Tr ω_s) = −½Ric^W: finite-difference route vs. the operator
        // pipeline, on frame pairs.
        for model in [make_heisenberg(1).unwrap(), make_sphere3()] {
            let b = build_bundle(&model, BundleKind::WebsterSqrt, None).unwrap();
            for p in model.sample_points(3, 43) {
                let mut dirs: Vec<Vec<f64>> =
                    (0..model.h_count()).map(|k| model.h_frame(&p, k)).collect();
                dirs.push(model.t_field(&p));
                for u in &dirs {
                    for w in &dirs {
                        let fd = webster_sqrt_curv_fd(&model, &p, u, w).unwrap();
                        let cf = b.curv_form(&p, u, w).unwrap();
                        assert!((fd - cf).norm() < 1e-7, "Ω^√W mismatch: {fd} vs {cf}");
                    }
                }
            }
        }
    }

    #[test]
    fn fefferman_curvature_type_and_trace() {
        // Ω^{A√θ}|_{Λ_θ} is of type (1,1); Tr_θ Ω = −(n+2)/(4(n+1))·R^W.
        let model = make_sphere3();
        let b = build_bundle(&model, BundleKind::FeffermanSqrt, None).unwrap();
        for p in model.sample_points(4, 44) {
            let wcp = curvature_point(&b.webster(), &p).unwrap();
            for k in 0..2 {
                for l in 0..2 {
                    let xk = model.h_frame(&p, k);
                    let xl = model.h_frame(&p, l);
                    let (jk, sk) = model.j_frame(k);
                    let (jl, sl) = model.j_frame(l);
                    let jxk: Vec<f64> = model.h_frame(&p, jk).iter().map(|x| sk * x).collect();
                    let jxl: Vec<f64> = model.h_frame(&p, jl).iter().map(|x| sl * x).collect();
                    let w1 = b.curv_form_with(&p, &wcp, &xk, &xl).unwrap();
                    let w2 = b.curv_form_with(&p, &wcp, &jxk, &jxl).unwrap();
                    assert!((w1 - w2).norm() < 1e-7);
                }
            }
            // Tr_θ Ω = i·Σ_α Ω(X_{2α}, X_{2α+1}); Ω values are imaginary.
            let mut tr = C64::new(0.0, 0.0);
            for alpha in 0..1 {
                let u = model.h_frame(&p, 2 * alpha);
                let v = model.h_frame(&p, 2 * alpha + 1);
                tr += C64::new(0.0, 1.0) * b.curv_form_with(&p, &wcp, &u, &v).unwrap();
            }
            let want = -(1.0 + 2.0) / (4.0 * 2.0) * b.webster_scalar();
            assert!(tr.im.abs() < 1e-9);
            assert!((tr.re - want).abs() < 1e-7, "Tr_θ Ω = {} vs {want}", tr.re);
        }
    }

    #[test]
    fn conformal_rescaling_doubles_the_metric() {
        // θ̃ = 2θ gives h_θ̃ = 2·h_θ on the same trivialized bundle.
        let base = make_heisenberg(1).unwrap();
        let scaled = scale_theta(&base, 2.0).unwrap();
        let b1 = build_bundle(&base, BundleKind::FeffermanSqrt, None).unwrap();
        let b2 = build_bundle(&scaled, BundleKind::FeffermanSqrt, None).unwrap();
        for p in base.sample_points(4, 45) {
            let g1 = b1.gram_coords(&p).unwrap();
            let g2 = b2.gram_coords(&p).unwrap();
            let worst = (&g2 - &g1 * 2.0)
                .iter()
                .fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(worst < 1e-10, "conformal covariance defect {worst}");
        }
    }

    #[test]
    fn frame_brackets_analytic_vs_fd() {
        for model in [make_heisenberg(1).unwrap(), make_sphere3()] {
            let b = build_bundle(&model, BundleKind::FeffermanSqrt, None).unwrap();
            let mut dirs = alloc::vec![BDir::N, BDir::TStar];
            for k in 0..model.h_count() {
                dirs.push(BDir::XStar(k));
            }
            for p in model.sample_points(3, 46) {
                for &a in &dirs {
                    for &bd in &dirs {
                        let ana = b.bracket_b(&p, a, bd).unwrap();
                        let num = b.bracket_b_fd(&p, a, bd).unwrap();
                        let mut worst = (ana.phi - num.phi).abs();
                        for (x, y) in ana.base.iter().zip(&num.base) {
                            worst = worst.max((x - y).abs());
                        }
                        assert!(worst < 1e-7, "[{a:?},{bd:?}] differs by {worst}");
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_bracket_values() {
        // [X*₁, Y*₁] = −T*: the vertical part vanishes on the flat model
        // (Ω^{√W} = 0).
        let model = make_heisenberg(1).unwrap();
        let b = build_bundle(&model, BundleKind::FeffermanSqrt, None).unwrap();
        for p in model.sample_points(3, 47) {
            let br = b.bracket_b(&p, BDir::XStar(0), BDir::XStar(1)).unwrap();
            let coeffs = b.decompose_b(&p, &br).unwrap();
            assert!(coeffs[0].abs() < 1e-9, "N-part {}", coeffs[0]);
            assert!((coeffs[1] + 1.0).abs() < 1e-9, "T*-part {}", coeffs[1]);
            for c in &coeffs[2..] {
                assert!(c.abs() < 1e-9);
            }
            // [T*, X*] = 0 on the flat model ([T,X] = 0, Ω = 0).
            let br = b.bracket_b(&p, BDir::TStar, BDir::XStar(0)).unwrap();
            assert!(br.phi.abs() < 1e-9);
            assert!(br.base.iter().all(|x| x.abs() < 1e-9));
        }
    }
}
