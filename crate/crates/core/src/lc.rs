//! Levi-Civita connection and curvature stack of the bundle metric.
//!
//! Everything lives in the orthonormal adapted frame
//! `f = (s₁, s₂, X*₁, …, X*_{2n})` with `ε = (−1, 1, …, 1)`; connection
//! coefficients are the table `Γ_{ijk} = h(∇_{f_i} f_j, f_k)`. Two paths:
//!
//! - `Prop20` — the closed coefficient forms for an invariant metric on the
//!   circle bundle, assembled from Webster data, `dθ`, the `[T,·]` brackets
//!   and the connection curvature, first in the isotropic basis
//!   `(N, T*, X*_k)` and then converted to the orthonormal frame.
//! - `KoszulFd` — the Koszul formula for constant-length frame fields,
//!   `2h(∇_X Y, Z) = h([X,Y],Z) + h([Z,Y],X) + h([Z,X],Y)`, with all
//!   brackets taken by finite differences of the lifted frame coefficient
//!   functions (the numerical oracle).
//!
//! Curvature conventions: `R(X,Y) = [∇_X,∇_Y] − ∇_{[X,Y]}`,
//! `Riem(X,Y,Z,V) = h(R(X,Y)Z,V)`, `Ric(X,Y) = Σ_k ε_k Riem(f_k,X,Y,f_k)`
//! (spheres come out positively curved). The Schouten tensor follows the
//! `{R/(2(d−1))·h − Ric}/(d−2)` sign convention, so `K(V,V) < 0` on the true
//! bundle, and the Weyl tensor is `Riem − K ∧̇ h` in the matching
//! Kulkarni–Nomizu normalization.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::cr::{ChartPoint, MDir};
use crate::fd::{STEP_BRACKET4, STEP_NESTED};
use crate::fefferman::{BDir, BVec, FeffermanBundle};
use crate::linalg::{RMat, T3, T4};
use crate::webster::{cov_real_frame_z_coeffs, curvature_point, levi_against_frame};
use crate::Result;

/// How to produce the connection coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcMethod {
    Prop20,
    KoszulFd,
}

/// Levi-Civita connection of `(B, h)`.
#[derive(Debug, Clone, Copy)]
pub struct LcConnection<'a> {
    pub bundle: &'a FeffermanBundle,
    pub method: LcMethod,
}

/// Signature sign of the `i`-th orthonormal frame vector.
pub fn eps(i: usize) -> f64 {
    if i == 0 {
        -1.0
    } else {
        1.0
    }
}

impl<'a> LcConnection<'a> {
    pub fn new(bundle: &'a FeffermanBundle, method: LcMethod) -> Self {
        LcConnection { bundle, method }
    }

    /// Frame dimension `2n + 2`.
    pub fn dim(&self) -> usize {
        self.bundle.dim_b()
    }

    /// Orthonormal frame vectors at `p` (index 0 = `s₁`, 1 = `s₂`,
    /// `2+k` = `X*_k`).
    pub fn frame(&self, p: &ChartPoint) -> Result<Vec<BVec>> {
        let fr = crate::fefferman::adapted_frame(self.bundle, p)?;
        let mut out = vec![fr.s1, fr.s2];
        out.extend(fr.x_star);
        Ok(out)
    }

    /// Connection coefficient table `Γ_{ijk} = h(∇_{f_i}f_j, f_k)` at `p`.
    pub fn gamma(&self, p: &ChartPoint) -> Result<T3> {
        match self.method {
            LcMethod::Prop20 => prop20_gamma(self.bundle, p),
            LcMethod::KoszulFd => koszul_gamma(self.bundle, p),
        }
    }
}

/// Orthonormal frame rows in the `(N, T*, X*)` basis.
fn orthonormal_rows(d: usize) -> Vec<Vec<f64>> {
    let s = 1.0 / 2.0_f64.sqrt();
    (0..d)
        .map(|i| {
            let mut r = vec![0.0; d];
            match i {
                0 => {
                    r[0] = s;
                    r[1] = -s;
                }
                1 => {
                    r[0] = s;
                    r[1] = s;
                }
                k => r[k] = 1.0,
            }
            r
        })
        .collect()
}

fn ntx_to_orthonormal(d: usize, g: &T3) -> T3 {
    let rows = orthonormal_rows(d);
    let mut out = T3::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut acc = 0.0;
                for (a, &ca) in rows[i].iter().enumerate() {
                    if ca == 0.0 {
                        continue;
                    }
                    for (b, &cb) in rows[j].iter().enumerate() {
                        if cb == 0.0 {
                            continue;
                        }
                        for (c, &cc) in rows[k].iter().enumerate() {
                            if cc != 0.0 {
                                acc += ca * cb * cc * g.get(a, b, c);
                            }
                        }
                    }
                }
                out.set(i, j, k, acc);
            }
        }
    }
    out
}

/// Closed coefficient forms in the isotropic basis, then converted.
fn prop20_gamma(bundle: &FeffermanBundle, p: &ChartPoint) -> Result<T3> {
    let model = &bundle.model;
    let hn = model.h_count();
    let d = bundle.dim_b();
    let om = bundle.webster().omega(p)?;
    let wcp = curvature_point(&bundle.webster(), p)?;

    // Ingredient tables over the H-frame; `omr` is the real number
    // i(c/2)·Ω^A(·,·), which is how the curvature enters every row.
    let mut dtheta = vec![vec![0.0; hn]; hn];
    let mut tx = vec![vec![0.0; hn]; hn]; // L([T,X_k], X_l)
    let mut omr = vec![vec![0.0; hn]; hn];
    let mut omr_t = vec![0.0; hn];
    let mut covw = vec![vec![vec![0.0; hn]; hn]; hn]; // L(∇^W_{X_j}X_k, X_l)
    let tvec = model.t_field(p);
    let frames: Vec<Vec<f64>> = (0..hn).map(|k| model.h_frame(p, k)).collect();
    for k in 0..hn {
        let br_tk = model.bracket(MDir::T, MDir::H(k), p);
        for l in 0..hn {
            dtheta[k][l] = model.d_theta(p, &frames[k], &frames[l]);
            tx[k][l] = model.levi_vv(p, &br_tk, &frames[l])?;
            let w = bundle.curv_form_with(p, &wcp, &frames[k], &frames[l])?;
            omr[k][l] = (crate::C64::new(0.0, bundle.c / 2.0) * w).re;
        }
        let w = bundle.curv_form_with(p, &wcp, &tvec, &frames[k])?;
        omr_t[k] = (crate::C64::new(0.0, bundle.c / 2.0) * w).re;
    }
    for j in 0..hn {
        for k in 0..hn {
            let row = cov_real_frame_z_coeffs(&om, MDir::H(j), k);
            for l in 0..hn {
                covw[j][k][l] = levi_against_frame(&row, l);
            }
        }
    }

    // Isotropic-basis table: index 0 = N, 1 = T*, 2+k = X*_k. Vanishing rows
    // (∇N and ∇T* have no vertical components, ∇_N N = ∇_N T* = ∇_{T*} N = 0)
    // stay zero.
    let mut g = T3::zeros(d);
    for k in 0..hn {
        for l in 0..hn {
            g.set(0, 2 + k, 2 + l, 0.5 * dtheta[k][l]);
            g.set(1, 2 + k, 2 + l, 0.5 * (tx[k][l] - tx[l][k] - omr[k][l]));
            for j in 0..hn {
                g.set(2 + j, 2 + k, 2 + l, covw[j][k][l]);
            }
        }
        g.set(1, 1, 2 + k, -omr_t[k]);
        g.set(1, 2 + k, 1, omr_t[k]);
        for j in 0..hn {
            g.set(2 + j, 0, 2 + k, 0.5 * dtheta[j][k]);
            g.set(2 + j, 1, 2 + k, -0.5 * (tx[j][k] + tx[k][j] + omr[j][k]));
            g.set(2 + j, 2 + k, 0, -0.5 * dtheta[j][k]);
            g.set(2 + j, 2 + k, 1, 0.5 * (tx[j][k] + tx[k][j] + omr[j][k]));
        }
    }
    Ok(ntx_to_orthonormal(d, &g))
}

/// The Koszul oracle: finite-difference brackets of the orthonormal frame.
fn koszul_gamma(bundle: &FeffermanBundle, p: &ChartPoint) -> Result<T3> {
    let d = bundle.dim_b();
    let om = bundle.webster().omega(p)?;
    let frame_at = |q: &ChartPoint, i: usize| -> Result<BVec> {
        let s = 1.0 / 2.0_f64.sqrt();
        let omq = bundle.webster().omega(q)?;
        match i {
            0 | 1 => {
                let n = bundle.n_field();
                let t = bundle.frame_vec_with(q, &omq, BDir::TStar)?;
                Ok(if i == 0 { n.sub(&t).scale(s) } else { n.add(&t).scale(s) })
            }
            _ => bundle.frame_vec_with(q, &omq, BDir::XStar(i - 2)),
        }
    };
    let frame_p: Vec<BVec> = (0..d).map(|i| frame_at(p, i)).collect::<Result<_>>()?;

    // Coordinate bracket of frame fields by differentiating the coefficient
    // functions (ϕ-independent in the trivialization).
    let h = STEP_BRACKET4;
    let bracket = |i: usize, j: usize| -> Result<BVec> {
        let deriv = |of: usize, along: &BVec| -> Result<BVec> {
            let eval = |t: f64| -> Result<BVec> {
                let q =
                    ChartPoint(p.0.iter().zip(&along.base).map(|(x, c)| x + t * c).collect());
                frame_at(&q, of)
            };
            let p2 = eval(2.0 * h)?;
            let p1 = eval(h)?;
            let m1 = eval(-h)?;
            let m2 = eval(-2.0 * h)?;
            Ok(p2
                .scale(-1.0)
                .add(&p1.scale(8.0))
                .add(&m1.scale(-8.0))
                .add(&m2)
                .scale(1.0 / (12.0 * h)))
        };
        Ok(deriv(j, &frame_p[i])?.sub(&deriv(i, &frame_p[j])?))
    };

    let mut br = vec![vec![BVec::zero(bundle.model.dim()); d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let v = bracket(i, j)?;
            br[j][i] = v.scale(-1.0);
            br[i][j] = v;
        }
    }

    let hm = |u: &BVec, v: &BVec| -> Result<f64> { bundle.metric_with(p, &om, u, v) };
    let mut out = T3::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let val = 0.5
                    * (hm(&br[i][j], &frame_p[k])?
                        + hm(&br[k][j], &frame_p[i])?
                        + hm(&br[k][i], &frame_p[j])?);
                out.set(i, j, k, val);
            }
        }
    }
    Ok(out)
}

/// Full curvature data at a base point.
#[derive(Debug, Clone)]
pub struct CurvPoint {
    pub d: usize,
    pub gamma: T3,
    pub riem: T4,
    pub ric: RMat,
    pub scalar: f64,
    /// Schouten tensor `K = {R/(2(d−1))·h − Ric}/(d−2)`.
    pub schouten: RMat,
    pub weyl: T4,
}

impl CurvPoint {
    pub fn riem_vec(&self, a: &[f64], b: &[f64], c: &[f64], v: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.d {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..self.d {
                if b[j] == 0.0 {
                    continue;
                }
                for k in 0..self.d {
                    if c[k] == 0.0 {
                        continue;
                    }
                    for l in 0..self.d {
                        if v[l] != 0.0 {
                            acc += a[i] * b[j] * c[k] * v[l] * self.riem.get(i, j, k, l);
                        }
                    }
                }
            }
        }
        acc
    }

    pub fn ric_vec(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.d {
            for j in 0..self.d {
                acc += a[i] * b[j] * self.ric[(i, j)];
            }
        }
        acc
    }

    /// Frame coefficients of the (1,1)-Schouten operator `K(X)`.
    pub fn schouten_op(&self, x: &[f64]) -> Vec<f64> {
        (0..self.d)
            .map(|m| {
                let mut acc = 0.0;
                for i in 0..self.d {
                    acc += x[i] * self.schouten[(i, m)];
                }
                eps(m) * acc
            })
            .collect()
    }
}

/// Assemble Riemann, Ricci, scalar, Schouten and Weyl at `p`.
pub fn curvature_at(conn: &LcConnection, p: &ChartPoint) -> Result<CurvPoint> {
    let d = conn.dim();
    let bundle = conn.bundle;
    let gamma_p = conn.gamma(p)?;
    let frame_p = conn.frame(p)?;

    // Directional derivatives of the Γ table along the frame (the table is
    // ϕ-independent, so only the base projection of the frame matters).
    let h = STEP_BRACKET4;
    let dgamma: Vec<T3> = (0..d)
        .map(|i| -> Result<T3> {
            let dir = &frame_p[i].base;
            let eval = |t: f64| -> Result<T3> {
                let q = ChartPoint(p.0.iter().zip(dir).map(|(x, c)| x + t * c).collect());
                conn.gamma(&q)
            };
            let p2 = eval(2.0 * h)?;
            let p1 = eval(h)?;
            let m1 = eval(-h)?;
            let m2 = eval(-2.0 * h)?;
            let mut out = T3::zeros(d);
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        let v = (-p2.get(a, b, c) + 8.0 * p1.get(a, b, c)
                            - 8.0 * m1.get(a, b, c)
                            + m2.get(a, b, c))
                            / (12.0 * h);
                        out.set(a, b, c, v);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let cc = frame_bracket_coeffs(bundle, p)?;

    let mut riem = T4::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let mut v = dgamma[i].get(j, k, l) - dgamma[j].get(i, k, l);
                    for m in 0..d {
                        v += eps(m)
                            * (gamma_p.get(i, k, m) * gamma_p.get(j, l, m)
                                - gamma_p.get(j, k, m) * gamma_p.get(i, l, m));
                        v -= cc.get(i, j, m) * gamma_p.get(m, k, l);
                    }
                    riem.set(i, j, k, l, v);
                }
            }
        }
    }

    let mut ric = RMat::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            let mut v = 0.0;
            for i in 0..d {
                v += eps(i) * riem.get(i, j, k, i);
            }
            ric[(j, k)] = v;
        }
    }
    let scalar: f64 = (0..d).map(|j| eps(j) * ric[(j, j)]).sum();

    let dd = d as f64;
    let mut schouten = RMat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let metric = if i == j { eps(i) } else { 0.0 };
            schouten[(i, j)] = (scalar / (2.0 * (dd - 1.0)) * metric - ric[(i, j)]) / (dd - 2.0);
        }
    }

    // W = Riem − K ∧̇ h (Kulkarni–Nomizu, matching the Schouten sign).
    let mut weyl = T4::zeros(d);
    let hmet = |i: usize, j: usize| if i == j { eps(i) } else { 0.0 };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let kn = schouten[(i, k)] * hmet(j, l) + schouten[(j, l)] * hmet(i, k)
                        - schouten[(i, l)] * hmet(j, k)
                        - schouten[(j, k)] * hmet(i, l);
                    weyl.set(i, j, k, l, riem.get(i, j, k, l) - kn);
                }
            }
        }
    }

    Ok(CurvPoint { d, gamma: gamma_p, riem, ric, scalar, schouten, weyl })
}

/// Orthonormal-frame coefficients of all frame brackets `[f_i, f_j]`.
fn frame_bracket_coeffs(bundle: &FeffermanBundle, p: &ChartPoint) -> Result<T3> {
    let d = bundle.dim_b();
    let s = 1.0 / 2.0_f64.sqrt();
    let bdirs = |i: usize| -> Vec<(f64, BDir)> {
        match i {
            0 => vec![(s, BDir::N), (-s, BDir::TStar)],
            1 => vec![(s, BDir::N), (s, BDir::TStar)],
            k => vec![(1.0, BDir::XStar(k - 2))],
        }
    };
    let mut cc = T3::zeros(d);
    for i in 0..d {
        for j in (i + 1)..d {
            let mut br = BVec::zero(bundle.model.dim());
            for (ca, da) in bdirs(i) {
                for (cb, db) in bdirs(j) {
                    br = br.add(&bundle.bracket_b(p, da, db)?.scale(ca * cb));
                }
            }
            let ntx = bundle.decompose_b(p, &br)?;
            let mut coeffs = vec![0.0; d];
            coeffs[0] = (ntx[0] - ntx[1]) * s;
            coeffs[1] = (ntx[0] + ntx[1]) * s;
            for k in 0..(d - 2) {
                coeffs[2 + k] = ntx[2 + k];
            }
            for m in 0..d {
                cc.set(i, j, m, coeffs[m]);
                cc.set(j, i, m, -coeffs[m]);
            }
        }
    }
    Ok(cc)
}

/// `(∇_{f_i} K)(f_j, f_k)` for all indices.
pub fn nabla_schouten_at(conn: &LcConnection, p: &ChartPoint) -> Result<T3> {
    let d = conn.dim();
    let frame_p = conn.frame(p)?;
    let cp = curvature_at(conn, p)?;
    let h = STEP_NESTED;
    let mut out = T3::zeros(d);
    for i in 0..d {
        let dir = &frame_p[i].base;
        let eval = |t: f64| -> Result<RMat> {
            let q = ChartPoint(p.0.iter().zip(dir).map(|(x, c)| x + t * c).collect());
            Ok(curvature_at(conn, &q)?.schouten)
        };
        let p2 = eval(2.0 * h)?;
        let p1 = eval(h)?;
        let m1 = eval(-h)?;
        let m2 = eval(-2.0 * h)?;
        for j in 0..d {
            for k in 0..d {
                let mut v =
                    (-p2[(j, k)] + 8.0 * p1[(j, k)] - 8.0 * m1[(j, k)] + m2[(j, k)]) / (12.0 * h);
                for m in 0..d {
                    v -= eps(m)
                        * (cp.gamma.get(i, j, m) * cp.schouten[(m, k)]
                            + cp.gamma.get(i, k, m) * cp.schouten[(j, m)]);
                }
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

/// The (3,0) Schouten–Weyl tensor stored as
/// `out(i, j, k) = C(f_i; f_j, f_k) = (∇_{f_j}K)(f_k, f_i) − (∇_{f_k}K)(f_j, f_i)`.
pub fn schouten_weyl_at(conn: &LcConnection, p: &ChartPoint) -> Result<T3> {
    let d = conn.dim();
    let nk = nabla_schouten_at(conn, p)?;
    let mut out = T3::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                out.set(i, j, k, nk.get(j, k, i) - nk.get(k, j, i));
            }
        }
    }
    Ok(out)
}

/// `(∇_{f_i} W)(f_j, f_k, f_l, f_m)` for all indices.
pub fn nabla_weyl_at(conn: &LcConnection, p: &ChartPoint) -> Result<Vec<T4>> {
    let d = conn.dim();
    let frame_p = conn.frame(p)?;
    let cp = curvature_at(conn, p)?;
    let h = STEP_NESTED;
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let dir = &frame_p[i].base;
        let eval = |t: f64| -> Result<T4> {
            let q = ChartPoint(p.0.iter().zip(dir).map(|(x, c)| x + t * c).collect());
            Ok(curvature_at(conn, &q)?.weyl)
        };
        let p2 = eval(2.0 * h)?;
        let p1 = eval(h)?;
        let m1 = eval(-h)?;
        let m2 = eval(-2.0 * h)?;
        let mut tab = T4::zeros(d);
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    for m in 0..d {
                        let mut v = (-p2.get(j, k, l, m) + 8.0 * p1.get(j, k, l, m)
                            - 8.0 * m1.get(j, k, l, m)
                            + m2.get(j, k, l, m))
                            / (12.0 * h);
                        for r in 0..d {
                            v -= eps(r)
                                * (cp.gamma.get(i, j, r) * cp.weyl.get(r, k, l, m)
                                    + cp.gamma.get(i, k, r) * cp.weyl.get(j, r, l, m)
                                    + cp.gamma.get(i, l, r) * cp.weyl.get(j, k, r, m)
                                    + cp.gamma.get(i, m, r) * cp.weyl.get(j, k, l, r));
                        }
                        tab.set(j, k, l, m, v);
                    }
                }
            }
        }
        out.push(tab);
    }
    Ok(out)
}

/// Largest entry difference between the two connection methods.
pub fn method_agreement(bundle: &FeffermanBundle, p: &ChartPoint) -> Result<f64> {
    let a = LcConnection::new(bundle, LcMethod::Prop20).gamma(p)?;
    let b = LcConnection::new(bundle, LcMethod::KoszulFd).gamma(p)?;
    let d = bundle.dim_b();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                worst = worst.max((a.get(i, j, k) - b.get(i, j, k)).abs());
            }
        }
    }
    Ok(worst)
}

/// Torsion residual `∇_{f_i}f_j − ∇_{f_j}f_i − [f_i,f_j]` in frame
/// coefficients for a given Γ table.
pub fn torsion_residual(conn: &LcConnection, p: &ChartPoint, gamma: &T3) -> Result<f64> {
    let d = conn.dim();
    let cc = frame_bracket_coeffs(conn.bundle, p)?;
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            for m in 0..d {
                let tor = eps(m) * (gamma.get(i, j, m) - gamma.get(j, i, m)) - cc.get(i, j, m);
                worst = worst.max(tor.abs());
            }
        }
    }
    Ok(worst)
}

/// Metricity residual `Γ_{ijk} + Γ_{ikj}` (frame scalar products constant).
pub fn metricity_residual(gamma: &T3) -> f64 {
    let d = gamma.d;
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                worst = worst.max((gamma.get(i, j, k) + gamma.get(i, k, j)).abs());
            }
        }
    }
    worst
}

/// Killing residual of the vertical field
/// `max_{ij} |h(∇_{f_i}N, f_j) + h(f_i, ∇_{f_j}N)|`, `N = (s₁+s₂)/√2`.
pub fn killing_residual(gamma: &T3) -> f64 {
    let d = gamma.d;
    let s = 1.0 / 2.0_f64.sqrt();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let v = s * (gamma.get(i, 0, j) + gamma.get(i, 1, j))
                + s * (gamma.get(j, 0, i) + gamma.get(j, 1, i));
            worst = worst.max(v.abs());
        }
    }
    worst
}

/// The three Sparling quantities for `V = √2·N = s₁ + s₂`.
#[derive(Debug, Clone, Copy)]
pub struct Sparling {
    /// `max |W(V, ·, ·, ·)|`
    pub weyl_max: f64,
    /// `max |C(V, ·, ·)|` (first-slot contraction of the (3,0) tensor)
    pub schouten_weyl_max: f64,
    /// `K(V, V)`
    pub kvv: f64,
}

pub fn sparling_at(conn: &LcConnection, p: &ChartPoint) -> Result<Sparling> {
    let d = conn.dim();
    let cp = curvature_at(conn, p)?;
    let c3 = schouten_weyl_at(conn, p)?;
    let mut weyl_max = 0.0f64;
    for j in 0..d {
        for k in 0..d {
            for l in 0..d {
                weyl_max =
                    weyl_max.max((cp.weyl.get(0, j, k, l) + cp.weyl.get(1, j, k, l)).abs());
            }
        }
    }
    let mut sw_max = 0.0f64;
    for j in 0..d {
        for k in 0..d {
            sw_max = sw_max.max((c3.get(0, j, k) + c3.get(1, j, k)).abs());
        }
    }
    let kvv = cp.schouten[(0, 0)] + 2.0 * cp.schouten[(0, 1)] + cp.schouten[(1, 1)];
    Ok(Sparling { weyl_max, schouten_weyl_max: sw_max, kvv })
}
