//! Spinor calculus on the bundle: the split spinor module, the distinguished
//! twistor spinor fields, the spinor derivative, Dirac and twistor operators,
//! and the canonical vector field.
//!
//! The spinor bundle of `(B,h)` is identified with `π*S_H ⊕ π*S_H`, where
//! `S_H` carries the `Δ_{2n,0}` realization of [`crate::clifford`]. Clifford
//! multiplication in the adapted frame acts by
//!
//! ```text
//! s₁·(φ,ψ) = (−ψ,−φ)      s₂·(φ,ψ) = (−ψ,φ)      X*·(φ,ψ) = (−X·φ, X·ψ)
//! N·(φ,ψ)  = (−√2 ψ, 0)   T*·(φ,ψ) = (0, √2 φ)
//! ```
//!
//! and the indefinite product is `⟨(φ,ψ),(φ̂,ψ̂)⟩ = −(ψ,φ̂) − (φ,ψ̂)`.
//!
//! The distinguished sections are `ψ_ε(p,ϕ) = e^{−iεϕ}·u(ε,…,ε)` (the
//! trivialization fixes a single global spin frame, so the transition
//! function is just `e^{iϕ}`) and the twistor spinors `φ_ε = (ψ_ε, 0)`.
//!
//! The spinor derivative is implemented twice: from the per-direction closed
//! forms (vertical, characteristic and horizontal rows, each a combination of
//! `dθ`, `[T,·]`-bracket, connection-curvature and Webster terms), and from
//! the generic frame formula `∇^S_{f_i} = f_i(u) + ½Σ_{j<k} ε_jε_k Γ_{ijk}
//! f_j·f_k` driven by a Levi-Civita coefficient table. Their agreement is a
//! named check.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::clifford::{basis_spinor, build_rep, form_action, herm, CliffordRep, FormCoeffs, Spinor};
use crate::cr::{ChartPoint, MDir};
use crate::fd::{central4_c, STEP_SPINOR};
use crate::fefferman::{BDir, BVec, BundlePoint, FeffermanBundle};
use crate::linalg::{CVec, T3};
use crate::rng::Lcg;
use crate::webster::{cov_real_frame_z_coeffs, curvature_point, levi_against_frame};
use crate::{C64, Result};

const I: C64 = C64::new(0.0, 1.0);
const SQRT2: f64 = core::f64::consts::SQRT_2;

/// A spinor of `S ≅ π*S_H ⊕ π*S_H` at a point.
#[derive(Debug, Clone)]
pub struct SplitSpinor {
    pub plus: CVec,
    pub minus: CVec,
}

impl SplitSpinor {
    pub fn zero(n: usize) -> Self {
        SplitSpinor { plus: CVec::zeros(1 << n), minus: CVec::zeros(1 << n) }
    }

    pub fn add(&self, o: &SplitSpinor) -> Self {
        SplitSpinor { plus: &self.plus + &o.plus, minus: &self.minus + &o.minus }
    }

    pub fn sub(&self, o: &SplitSpinor) -> Self {
        SplitSpinor { plus: &self.plus - &o.plus, minus: &self.minus - &o.minus }
    }

    pub fn scale(&self, s: C64) -> Self {
        SplitSpinor { plus: &self.plus * s, minus: &self.minus * s }
    }

    /// Norm for the positive definite product `(·,·)_ξ`, `ξ = s₁`.
    pub fn norm_xi(&self) -> f64 {
        (self.plus.norm_squared() + self.minus.norm_squared()).sqrt()
    }
}

/// `⟨(φ,ψ),(φ̂,ψ̂)⟩ = −(ψ,φ̂) − (φ,ψ̂)` (indefinite, Clifford-compatible).
pub fn inner_indef(a: &SplitSpinor, b: &SplitSpinor) -> C64 {
    -herm(&a.minus, &b.plus) - herm(&a.plus, &b.minus)
}

/// Positive definite product `(·,·)_ξ` with `ξ = s₁`.
pub fn inner_xi(a: &SplitSpinor, b: &SplitSpinor) -> C64 {
    herm(&a.plus, &b.plus) + herm(&a.minus, &b.minus)
}

/// Clifford action of the orthonormal frame vector `f_i`
/// (0 = s₁, 1 = s₂, 2+k = X*_k).
pub fn act_frame(rep: &CliffordRep, i: usize, s: &SplitSpinor) -> SplitSpinor {
    match i {
        0 => SplitSpinor { plus: -&s.minus, minus: -&s.plus },
        1 => SplitSpinor { plus: -&s.minus, minus: s.plus.clone() },
        _ => {
            let e = &rep.generators[i - 2];
            SplitSpinor { plus: -(e * &s.plus), minus: e * &s.minus }
        }
    }
}

/// `N·(φ,ψ) = (−√2ψ, 0)`.
pub fn act_n(s: &SplitSpinor) -> SplitSpinor {
    SplitSpinor { plus: &s.minus * C64::new(-SQRT2, 0.0), minus: CVec::zeros(s.minus.len()) }
}

/// `T*·(φ,ψ) = (0, √2φ)`.
pub fn act_tstar(s: &SplitSpinor) -> SplitSpinor {
    SplitSpinor { plus: CVec::zeros(s.plus.len()), minus: &s.plus * C64::new(SQRT2, 0.0) }
}

/// Action of a vector with complex orthonormal-frame coefficients.
pub fn act_vector(rep: &CliffordRep, coeffs: &[C64], s: &SplitSpinor) -> SplitSpinor {
    let mut out = SplitSpinor::zero(rep.m);
    for (i, &c) in coeffs.iter().enumerate() {
        if c != C64::new(0.0, 0.0) {
            out = out.add(&act_frame(rep, i, s).scale(c));
        }
    }
    out
}

/// Action of a 2-form given on the H-frame (acts block-diagonally).
pub fn act_h_two_form(rep: &CliffordRep, table: &[Vec<C64>], s: &SplitSpinor) -> Result<SplitSpinor> {
    let form = FormCoeffs::Two(table.to_vec());
    let plus = form_action(&form, rep, &Spinor::new(s.plus.clone(), rep))?;
    let minus = form_action(&form, rep, &Spinor::new(s.minus.clone(), rep))?;
    Ok(SplitSpinor { plus: plus.components, minus: minus.components })
}

/// Action of a 2-form given on the whole orthonormal frame:
/// `σ·φ = Σ_{a<b} ε_a ε_b σ(f_a,f_b) f_a·f_b·φ`.
pub fn act_frame_two_form<F: Fn(usize, usize) -> f64>(
    rep: &CliffordRep,
    d: usize,
    table: F,
    s: &SplitSpinor,
) -> SplitSpinor {
    let mut out = SplitSpinor::zero(rep.m);
    for a in 0..d {
        for b in (a + 1)..d {
            let c = table(a, b);
            if c != 0.0 {
                let e = crate::lc::eps(a) * crate::lc::eps(b) * c;
                out = out.add(&act_frame(rep, a, &act_frame(rep, b, s)).scale(C64::new(e, 0.0)));
            }
        }
    }
    out
}

/// Action of a 1-form on the orthonormal frame: `β·φ = Σ_m ε_m β_m f_m·φ`.
pub fn act_frame_one_form(rep: &CliffordRep, beta: &[f64], s: &SplitSpinor) -> SplitSpinor {
    let mut out = SplitSpinor::zero(rep.m);
    for (m, &b) in beta.iter().enumerate() {
        if b != 0.0 {
            out = out.add(&act_frame(rep, m, s).scale(C64::new(crate::lc::eps(m) * b, 0.0)));
        }
    }
    out
}

/// A spinor field on the bundle.
#[derive(Clone)]
pub struct SpinorField {
    eval: Arc<dyn Fn(&BundlePoint) -> SplitSpinor + Send + Sync>,
    pub n: usize,
}

impl SpinorField {
    pub fn at(&self, p: &BundlePoint) -> SplitSpinor {
        (self.eval)(p)
    }

    pub fn from_fn<F>(n: usize, f: F) -> Self
    where
        F: Fn(&BundlePoint) -> SplitSpinor + Send + Sync + 'static,
    {
        SpinorField { eval: Arc::new(f), n }
    }
}

/// The section value `ψ_ε(p) = e^{−iεϕ} u(ε,…,ε)` of `π*S_{εni}`.
pub fn psi_eps_value(rep: &CliffordRep, eps: i32, p: &BundlePoint) -> CVec {
    let u = basis_spinor(&vec![eps; rep.m], rep).expect("valid sign pattern");
    let factor = C64::new(0.0, -(eps as f64) * p.phi).exp();
    u.components * factor
}

/// `ψ_ε` as a field with values in the first summand.
pub fn psi_eps(n: usize, eps: i32) -> Result<SpinorField> {
    let rep = build_rep(n, 0)?;
    Ok(SpinorField::from_fn(n, move |p| SplitSpinor {
        plus: psi_eps_value(&rep, eps, p),
        minus: CVec::zeros(1 << n),
    }))
}

/// The twistor spinor candidate `φ_ε = (ψ_ε, 0)`.
pub fn phi_eps(n: usize, eps: i32) -> Result<SpinorField> {
    psi_eps(n, eps)
}

/// A seeded smooth test field: components are affine-plus-quadratic
/// polynomials in the chart coordinates times `e^{ikϕ}`, `k ∈ {−1,0,1}`.
pub fn generic_test_field(n: usize, dim: usize, seed: u64) -> SpinorField {
    let len = 1 << n;
    let mut rng = Lcg::new(seed);
    let mut comps = Vec::new();
    for _ in 0..(2 * len) {
        let c0 = rng.next_c64();
        let lin: Vec<C64> = (0..dim).map(|_| rng.next_c64()).collect();
        let quad = rng.next_c64();
        let qi = (rng.next_u64() % dim as u64) as usize;
        let k = (rng.next_u64() % 3) as i64 - 1;
        comps.push((c0, lin, quad, qi, k));
    }
    SpinorField::from_fn(n, move |p| {
        let x = p.base.coords();
        let val = |spec: &(C64, Vec<C64>, C64, usize, i64)| -> C64 {
            let (c0, lin, quad, qi, k) = spec;
            let mut v = *c0;
            for (ci, xi) in lin.iter().zip(x) {
                v += ci * *xi;
            }
            v += quad * x[*qi] * x[*qi];
            v * C64::new(0.0, *k as f64 * p.phi).exp()
        };
        let plus = CVec::from_iterator(len, comps[..len].iter().map(&val));
        let minus = CVec::from_iterator(len, comps[len..].iter().map(&val));
        SplitSpinor { plus, minus }
    })
}

/// Per-point geometric tables consumed by the spinor derivative.
pub struct SpinCtx {
    pub rep: CliffordRep,
    pub c: f64,
    pub hn: usize,
    /// Frame vectors for component differentiation.
    pub frame_n: BVec,
    pub frame_t: BVec,
    pub frame_x: Vec<BVec>,
    /// `dθ(X_k, X_l)`.
    pub dtheta: Vec<Vec<f64>>,
    /// `L([T,X_k], X_l)`.
    pub tx: Vec<Vec<f64>>,
    /// `Ω^A(X_k, X_l)` (`iℝ`-valued).
    pub om_x: Vec<Vec<C64>>,
    /// `Ω^A(T, X_k)`.
    pub om_t: Vec<C64>,
    /// `L(∇^W_{X_j} X_k, X_l)`.
    pub covw: Vec<Vec<Vec<f64>>>,
}

pub fn spin_ctx(bundle: &FeffermanBundle, base: &ChartPoint) -> Result<SpinCtx> {
    let model = &bundle.model;
    let n = model.cr_dim;
    let hn = model.h_count();
    let rep = build_rep(n, 0)?;
    let om = bundle.webster().omega(base)?;
    let wcp = curvature_point(&bundle.webster(), base)?;
    let frames: Vec<Vec<f64>> = (0..hn).map(|k| model.h_frame(base, k)).collect();
    let tvec = model.t_field(base);

    let mut dtheta = vec![vec![0.0; hn]; hn];
    let mut tx = vec![vec![0.0; hn]; hn];
    let mut om_x = vec![vec![C64::new(0.0, 0.0); hn]; hn];
    let mut om_t = vec![C64::new(0.0, 0.0); hn];
    for k in 0..hn {
        let br = model.bracket(MDir::T, MDir::H(k), base);
        for l in 0..hn {
            dtheta[k][l] = model.d_theta(base, &frames[k], &frames[l]);
            tx[k][l] = model.levi_vv(base, &br, &frames[l])?;
            om_x[k][l] = bundle.curv_form_with(base, &wcp, &frames[k], &frames[l])?;
        }
        om_t[k] = bundle.curv_form_with(base, &wcp, &tvec, &frames[k])?;
    }
    let mut covw = vec![vec![vec![0.0; hn]; hn]; hn];
    for j in 0..hn {
        for k in 0..hn {
            let row = cov_real_frame_z_coeffs(&om, MDir::H(j), k);
            for l in 0..hn {
                covw[j][k][l] = levi_against_frame(&row, l);
            }
        }
    }
    let frame_t = bundle.frame_vec_with(base, &om, BDir::TStar)?;
    let frame_x: Vec<BVec> = (0..hn)
        .map(|k| bundle.frame_vec_with(base, &om, BDir::XStar(k)))
        .collect::<Result<_>>()?;
    Ok(SpinCtx {
        rep,
        c: bundle.c,
        hn,
        frame_n: bundle.n_field(),
        frame_t,
        frame_x,
        dtheta,
        tx,
        om_x,
        om_t,
        covw,
    })
}

/// Directional derivative of the component functions along a coordinate
/// direction on `B` (fourth-order stencil).
fn component_derivative(field: &SpinorField, dir: &BVec, p: &BundlePoint) -> SplitSpinor {
    let len = 1 << field.n;
    let shifted = |t: f64| -> BundlePoint {
        BundlePoint {
            base: ChartPoint(p.base.0.iter().zip(&dir.base).map(|(x, c)| x + t * c).collect()),
            phi: p.phi + t * dir.phi,
        }
    };
    let mut plus = CVec::zeros(len);
    let mut minus = CVec::zeros(len);
    // One stencil evaluation of the whole field per offset.
    let samples: Vec<SplitSpinor> = [-2.0, -1.0, 1.0, 2.0]
        .iter()
        .map(|&k| field.at(&shifted(k * STEP_SPINOR)))
        .collect();
    for i in 0..len {
        plus[i] = central4_from(&[
            samples[0].plus[i],
            samples[1].plus[i],
            samples[2].plus[i],
            samples[3].plus[i],
        ]);
        minus[i] = central4_from(&[
            samples[0].minus[i],
            samples[1].minus[i],
            samples[2].minus[i],
            samples[3].minus[i],
        ]);
    }
    SplitSpinor { plus, minus }
}

fn central4_from(v: &[C64; 4]) -> C64 {
    // v = [f(−2h), f(−h), f(h), f(2h)]
    (v[0] - v[1] * 8.0 + v[2] * 8.0 - v[3]) / (12.0 * STEP_SPINOR)
}

/// The spinor derivative `∇^S` along an adapted-frame direction, from the
/// per-direction closed forms.
pub fn spinor_derivative(
    ctx: &SpinCtx,
    field: &SpinorField,
    dir: BDir,
    p: &BundlePoint,
) -> Result<SplitSpinor> {
    let rep = &ctx.rep;
    let hn = ctx.hn;
    let phi = field.at(p);
    match dir {
        BDir::N => {
            // ∇_N = N(u) + ¼ dθ*
            let du = component_derivative(field, &ctx.frame_n, p);
            let table: Vec<Vec<C64>> = ctx
                .dtheta
                .iter()
                .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect();
            let dth = act_h_two_form(rep, &table, &phi)?;
            Ok(du.add(&dth.scale(C64::new(0.25, 0.0))))
        }
        BDir::TStar => {
            // ∇_{T*} = T*(u) + i(c/2)(T⌟Ω^A)*·N − i(c/8)(Ω^A_θ)* + ¼ b_s*
            let mut out = component_derivative(field, &ctx.frame_t, p);
            let nphi = act_n(&phi);
            for k in 0..hn {
                let coeff = I * (ctx.c / 2.0) * ctx.om_t[k];
                if coeff != C64::new(0.0, 0.0) {
                    out = out.add(&act_frame(rep, 2 + k, &nphi).scale(coeff));
                }
            }
            let om_tbl: Vec<Vec<C64>> = ctx.om_x.clone();
            let om_act = act_h_two_form(rep, &om_tbl, &phi)?;
            out = out.add(&om_act.scale(-I * (ctx.c / 8.0)));
            let b_tbl: Vec<Vec<C64>> = (0..hn)
                .map(|k| {
                    (0..hn)
                        .map(|l| C64::new(ctx.tx[k][l] - ctx.tx[l][k], 0.0))
                        .collect()
                })
                .collect();
            let b_act = act_h_two_form(rep, &b_tbl, &phi)?;
            Ok(out.add(&b_act.scale(C64::new(0.25, 0.0))))
        }
        BDir::XStar(j) => {
            // ∇_{X*} = X*(u) − ¼(X⌟dθ)*·T* + i(c/8)(X⌟Ω^A)_θ*·N
            //          + ¼Σ{L([T,X],X_k)+L([T,X_k],X)}X*_k·N + ½ d_s(X)*
            let mut out = component_derivative(field, &ctx.frame_x[j], p);
            let tphi = act_tstar(&phi);
            let nphi = act_n(&phi);
            for k in 0..hn {
                let c1 = C64::new(-0.25 * ctx.dtheta[j][k], 0.0);
                if c1 != C64::new(0.0, 0.0) {
                    out = out.add(&act_frame(rep, 2 + k, &tphi).scale(c1));
                }
                let c2 = I * (ctx.c / 8.0) * ctx.om_x[j][k];
                if c2 != C64::new(0.0, 0.0) {
                    out = out.add(&act_frame(rep, 2 + k, &nphi).scale(c2));
                }
                let c3 = C64::new(0.25 * (ctx.tx[j][k] + ctx.tx[k][j]), 0.0);
                if c3 != C64::new(0.0, 0.0) {
                    out = out.add(&act_frame(rep, 2 + k, &nphi).scale(c3));
                }
            }
            let d_tbl: Vec<Vec<C64>> = (0..hn)
                .map(|k| (0..hn).map(|l| C64::new(ctx.covw[j][k][l], 0.0)).collect())
                .collect();
            let d_act = act_h_two_form(rep, &d_tbl, &phi)?;
            Ok(out.add(&d_act.scale(C64::new(0.5, 0.0))))
        }
    }
}

/// `∇^S` along an orthonormal frame direction (0 = s₁, 1 = s₂, 2+k = X*_k).
pub fn spinor_derivative_frame(
    ctx: &SpinCtx,
    field: &SpinorField,
    i: usize,
    p: &BundlePoint,
) -> Result<SplitSpinor> {
    let s = 1.0 / SQRT2;
    match i {
        0 => {
            let dn = spinor_derivative(ctx, field, BDir::N, p)?;
            let dt = spinor_derivative(ctx, field, BDir::TStar, p)?;
            Ok(dn.sub(&dt).scale(C64::new(s, 0.0)))
        }
        1 => {
            let dn = spinor_derivative(ctx, field, BDir::N, p)?;
            let dt = spinor_derivative(ctx, field, BDir::TStar, p)?;
            Ok(dn.add(&dt).scale(C64::new(s, 0.0)))
        }
        _ => spinor_derivative(ctx, field, BDir::XStar(i - 2), p),
    }
}

/// The generic frame formula `∇^S_{f_i}φ = f_i(u) + ½ Σ_{j<k} ε_jε_k Γ_{ijk}
/// f_j·f_k·φ`, driven by a Levi-Civita coefficient table (the cross-check
/// path for the closed forms above).
pub fn spinor_derivative_general(
    ctx: &SpinCtx,
    gamma: &T3,
    field: &SpinorField,
    i: usize,
    p: &BundlePoint,
) -> Result<SplitSpinor> {
    let d = gamma.d;
    let s = 1.0 / SQRT2;
    // Orthonormal frame vector as a coordinate direction.
    let dir = match i {
        0 => ctx.frame_n.sub(&ctx.frame_t).scale(s),
        1 => ctx.frame_n.add(&ctx.frame_t).scale(s),
        _ => ctx.frame_x[i - 2].clone(),
    };
    let mut out = component_derivative(field, &dir, p);
    let phi = field.at(p);
    for j in 0..d {
        for k in (j + 1)..d {
            let g = gamma.get(i, j, k);
            if g != 0.0 {
                let e_j = crate::lc::eps(j);
                let e_k = crate::lc::eps(k);
                let jk = act_frame(&ctx.rep, j, &act_frame(&ctx.rep, k, &phi));
                // f_j·f_k ordering: apply k first, then j.
                out = out.add(&jk.scale(C64::new(0.5 * e_j * e_k * g, 0.0)));
            }
        }
    }
    Ok(out)
}

/// The Dirac operator in the null frame:
/// `Dφ = T*·∇_N φ + N·∇_{T*} φ + Σ_k X*_k·∇_{X*_k} φ`.
pub fn dirac(ctx: &SpinCtx, field: &SpinorField, p: &BundlePoint) -> Result<SplitSpinor> {
    let dn = spinor_derivative(ctx, field, BDir::N, p)?;
    let dt = spinor_derivative(ctx, field, BDir::TStar, p)?;
    let mut out = act_tstar(&dn).add(&act_n(&dt));
    for k in 0..ctx.hn {
        let dx = spinor_derivative(ctx, field, BDir::XStar(k), p)?;
        out = out.add(&act_frame(&ctx.rep, 2 + k, &dx));
    }
    Ok(out)
}

/// The Dirac image as a field (re-derives the point tables at each
/// evaluation; this is what nested operators differentiate).
pub fn dirac_field(bundle: Arc<FeffermanBundle>, field: SpinorField) -> SpinorField {
    let n = field.n;
    SpinorField::from_fn(n, move |p| {
        let ctx = spin_ctx(&bundle, &p.base).expect("dirac field context");
        dirac(&ctx, &field, p).expect("dirac evaluation")
    })
}

/// Largest twistor-equation defect over the orthonormal frame:
/// `max_i ‖∇_{f_i}φ + (1/d)·f_i·Dφ‖_ξ`.
pub fn twistor_residual(ctx: &SpinCtx, field: &SpinorField, p: &BundlePoint) -> Result<f64> {
    let d = ctx.hn + 2; // 2n + 2
    let dphi = dirac(ctx, field, p)?;
    let mut worst = 0.0f64;
    for i in 0..d {
        let nab = spinor_derivative_frame(ctx, field, i, p)?;
        let cliff = act_frame(&ctx.rep, i, &dphi).scale(C64::new(1.0 / d as f64, 0.0));
        worst = worst.max(nab.add(&cliff).norm_xi());
    }
    Ok(worst)
}

/// Canonical vector field coefficients in the orthonormal frame,
/// `V^i = ε_i·(−⟨f_i·φ, φ⟩)`, plus the largest imaginary defect.
pub fn canonical_vector(ctx: &SpinCtx, field: &SpinorField, p: &BundlePoint) -> (Vec<f64>, f64) {
    let d = ctx.hn + 2;
    let phi = field.at(p);
    let mut coeffs = Vec::with_capacity(d);
    let mut defect = 0.0f64;
    for i in 0..d {
        let v = -inner_indef(&act_frame(&ctx.rep, i, &phi), &phi);
        defect = defect.max(v.im.abs());
        coeffs.push(crate::lc::eps(i) * v.re);
    }
    (coeffs, defect)
}

/// Half-spinor membership defect: the distance of `φ` from the `±`-eigenspace
/// of the volume action `ω_B·(u,v) = (−ω_{2n}·u, ω_{2n}·v)`.
pub fn half_spinor_defect(rep: &CliffordRep, s: &SplitSpinor, sign: i32) -> f64 {
    let lam = crate::clifford::i_pow(rep.m as i64 + 2) * C64::new(sign as f64, 0.0);
    let vol_plus = -(&rep.volume * &s.plus);
    let vol_minus = &rep.volume * &s.minus;
    let d_plus = (vol_plus - &s.plus * lam).norm();
    let d_minus = (vol_minus - &s.minus * lam).norm();
    d_plus.max(d_minus)
}
