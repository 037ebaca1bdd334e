//! The Webster connection of a pseudo-hermitian model, its torsion and
//! curvature.
//!
//! In the model's unitary frame `(Z₁,…,Z_n)` the connection is the matrix of
//! 1-forms `ω_{αβ}` with `∇^W Z_α = Σ_β ω_{αβ} Z_β`, evaluated on the frame
//! directions `T`, `Z_γ`, `Z̄_γ`. Two independent construction paths exist:
//!
//! - `ClosedForm` — `ω(T)` and `ω(Z̄)` from the bracket projections
//!   `∇_T Z_α = pr₁₀[T,Z_α]`, `∇_{Z̄_γ} Z_α = pr₁₀[Z̄_γ,Z_α]`; the remaining
//!   `ω(Z_γ)` from metricity, which in an `L_θ`-orthonormal frame reduces to
//!   `ω_{αβ}(Z_γ) = −conj(ω_{βα}(Z̄_γ))`.
//! - `AxiomSolve` — a per-point least-squares solve of the full axiom system
//!   (metricity for every direction, both bracket projections, and
//!   torsion-freeness on `T₁₀`) over real unknowns; the oracle the closed
//!   form must agree with.
//!
//! The connection extends to `TM^ℂ` by `∇Z̄ = conj(∇Z)` and `∇T = 0`. The
//! curvature operator is `R(X,Y) = [∇_X,∇_Y] − ∇_{[X,Y]}`; the (4,0)-tensor
//! pairs the last slot complex-bilinearly with `g_θ`, so on the unitary frame
//! `Ric^W(A,B)` is the trace of the curvature coefficient matrix `ρ(A,B)`
//! and `R^W = Σ_α Ric^W(Z_α, Z̄_α)`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::cr::{CDir, ChartPoint, CrModel, MDir};
use crate::fd::STEP_BRACKET4;
use crate::linalg::{lstsq_real, CMat, RMat, RVec};
use crate::{C64, Result};

/// How to produce the connection coefficients at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WebsterMethod {
    ClosedForm,
    AxiomSolve,
}

/// Connection forms `ω_{αβ}` evaluated on each frame direction.
#[derive(Debug, Clone)]
pub struct OmegaTable {
    pub n: usize,
    /// `ω(T)`.
    pub t: CMat,
    /// `ω(Z_γ)`, γ = 0..n.
    pub z: Vec<CMat>,
    /// `ω(Z̄_γ)`, γ = 0..n.
    pub zbar: Vec<CMat>,
}

impl OmegaTable {
    pub fn on_dir(&self, d: CDir) -> &CMat {
        match d {
            CDir::T => &self.t,
            CDir::Z(g) => &self.z[g],
            CDir::Zbar(g) => &self.zbar[g],
        }
    }

    /// `ω` on an arbitrary complexified vector with the given frame
    /// decomposition.
    pub fn on_vec(&self, zc: &[C64], zbc: &[C64], tc: C64) -> CMat {
        let mut out = &self.t * tc;
        for (g, &c) in zc.iter().enumerate() {
            out += &self.z[g] * c;
        }
        for (g, &c) in zbc.iter().enumerate() {
            out += &self.zbar[g] * c;
        }
        out
    }

    /// `ω` on a real frame direction (real directions are self-conjugate);
    /// uses `X_{2a} = (Z_a + Z̄_a)/√2`, `X_{2a+1} = i(Z_a − Z̄_a)/√2`.
    pub fn on_mdir(&self, d: MDir) -> CMat {
        match d {
            MDir::T => self.t.clone(),
            MDir::H(j) => {
                let g = j / 2;
                let s = 1.0 / 2.0_f64.sqrt();
                if j % 2 == 0 {
                    (&self.z[g] + &self.zbar[g]) * C64::new(s, 0.0)
                } else {
                    (&self.z[g] - &self.zbar[g]) * C64::new(0.0, s)
                }
            }
        }
    }

    /// `Tr ω_s` on a frame direction.
    pub fn trace_on(&self, d: CDir) -> C64 {
        self.on_dir(d).trace()
    }
}

/// The Webster connection of a model, with a choice of construction method.
#[derive(Debug, Clone, Copy)]
pub struct WebsterConnection<'a> {
    pub model: &'a CrModel,
    pub method: WebsterMethod,
}

impl<'a> WebsterConnection<'a> {
    pub fn new(model: &'a CrModel, method: WebsterMethod) -> Self {
        WebsterConnection { model, method }
    }

    /// Connection coefficients at `p`.
    pub fn omega(&self, p: &ChartPoint) -> Result<OmegaTable> {
        Ok(self.omega_with_residual(p)?.0)
    }

    /// Connection coefficients plus the construction residual (zero for the
    /// closed form; the least-squares defect for the axiom solve).
    pub fn omega_with_residual(&self, p: &ChartPoint) -> Result<(OmegaTable, f64)> {
        match self.method {
            WebsterMethod::ClosedForm => Ok((closed_form(self.model, p)?, 0.0)),
            WebsterMethod::AxiomSolve => axiom_solve(self.model, p),
        }
    }
}

fn closed_form(model: &CrModel, p: &ChartPoint) -> Result<OmegaTable> {
    let n = model.cr_dim;
    let mut t = CMat::zeros(n, n);
    let mut zbar = vec![CMat::zeros(n, n); n];
    for alpha in 0..n {
        let br_t = model.bracket_c(CDir::T, CDir::Z(alpha), p);
        for beta in 0..n {
            let zb = model.z_frame(p, beta);
            t[(alpha, beta)] = model.levi_herm(p, &br_t, &zb)?;
        }
        for gamma in 0..n {
            let br = model.bracket_c(CDir::Zbar(gamma), CDir::Z(alpha), p);
            for beta in 0..n {
                let zb = model.z_frame(p, beta);
                zbar[gamma][(alpha, beta)] = model.levi_herm(p, &br, &zb)?;
            }
        }
    }
    // Metricity in an L_θ-orthonormal frame: ω_{αβ}(Z_γ) = −conj(ω_{βα}(Z̄_γ)).
    let mut z = vec![CMat::zeros(n, n); n];
    for gamma in 0..n {
        for alpha in 0..n {
            for beta in 0..n {
                z[gamma][(alpha, beta)] = -zbar[gamma][(beta, alpha)].conj();
            }
        }
    }
    Ok(OmegaTable { n, t, z, zbar })
}

/// Per-point least-squares solve of the axiom system over real unknowns.
fn axiom_solve(model: &CrModel, p: &ChartPoint) -> Result<(OmegaTable, f64)> {
    let n = model.cr_dim;
    let dirs = 2 * n + 1; // T, Z_γ, Z̄_γ
    let unknowns = 2 * dirs * n * n;

    // Unknown layout: (re, im) of ω_{αβ}(dir) at 2·((dir·n + α)·n + β).
    let idx = |dir: usize, a: usize, b: usize| 2 * ((dir * n + a) * n + b);
    let dir_z = |g: usize| 1 + g;
    let dir_zbar = |g: usize| 1 + n + g;
    let conj_dir = |d: usize| {
        if d == 0 {
            0
        } else if d <= n {
            d + n
        } else {
            d - n
        }
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    // Σ_j c_j·x_j = v with complex coefficients over interleaved (re, im).
    let push_complex = |coeffs: &[(usize, C64)], v: C64, rows: &mut Vec<Vec<f64>>, rhs: &mut Vec<f64>| {
        let mut re_row = vec![0.0; unknowns];
        let mut im_row = vec![0.0; unknowns];
        for &(base, c) in coeffs {
            re_row[base] += c.re;
            re_row[base + 1] -= c.im;
            im_row[base] += c.im;
            im_row[base + 1] += c.re;
        }
        rows.push(re_row);
        rhs.push(v.re);
        rows.push(im_row);
        rhs.push(v.im);
    };
    let one = C64::new(1.0, 0.0);

    // Bracket projections fixing ω(T) and ω(Z̄) (the two covariant-derivative
    // axioms).
    for alpha in 0..n {
        let br_t = model.bracket_c(CDir::T, CDir::Z(alpha), p);
        for beta in 0..n {
            let zb = model.z_frame(p, beta);
            let v = model.levi_herm(p, &br_t, &zb)?;
            push_complex(&[(idx(0, alpha, beta), one)], v, &mut rows, &mut rhs);
        }
        for gamma in 0..n {
            let br = model.bracket_c(CDir::Zbar(gamma), CDir::Z(alpha), p);
            for beta in 0..n {
                let zb = model.z_frame(p, beta);
                let v = model.levi_herm(p, &br, &zb)?;
                push_complex(&[(idx(dir_zbar(gamma), alpha, beta), one)], v, &mut rows, &mut rhs);
            }
        }
    }

    // Metricity: ω_{αβ}(W) + conj(ω_{βα}(W̄)) = 0 — linear over ℝ because of
    // the conjugation.
    for d in 0..dirs {
        let dc = conj_dir(d);
        for alpha in 0..n {
            for beta in 0..n {
                let i1 = idx(d, alpha, beta);
                let i2 = idx(dc, beta, alpha);
                let mut re_row = vec![0.0; unknowns];
                re_row[i1] += 1.0;
                re_row[i2] += 1.0;
                rows.push(re_row);
                rhs.push(0.0);
                let mut im_row = vec![0.0; unknowns];
                im_row[i1 + 1] += 1.0;
                im_row[i2 + 1] -= 1.0;
                rows.push(im_row);
                rhs.push(0.0);
            }
        }
    }

    // Torsion-freeness on T₁₀: ω_{αβ}(Z_γ) − ω_{γβ}(Z_α) = L_herm([Z_γ,Z_α], Z_β).
    for gamma in 0..n {
        for alpha in (gamma + 1)..n {
            let br = model.bracket_c(CDir::Z(gamma), CDir::Z(alpha), p);
            for beta in 0..n {
                let zb = model.z_frame(p, beta);
                let v = model.levi_herm(p, &br, &zb)?;
                push_complex(
                    &[
                        (idx(dir_z(gamma), alpha, beta), one),
                        (idx(dir_z(alpha), gamma, beta), -one),
                    ],
                    v,
                    &mut rows,
                    &mut rhs,
                );
            }
        }
    }

    let m = rows.len();
    let mut a = RMat::zeros(m, unknowns);
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            a[(r, c)] = x;
        }
    }
    let b = RVec::from_vec(rhs);
    let (x, res) = lstsq_real(&a, &b)?;

    let read = |d: usize| -> CMat {
        let mut mat = CMat::zeros(n, n);
        for alpha in 0..n {
            for beta in 0..n {
                let i = idx(d, alpha, beta);
                mat[(alpha, beta)] = C64::new(x[i], x[i + 1]);
            }
        }
        mat
    };
    let table = OmegaTable {
        n,
        t: read(0),
        z: (0..n).map(|g| read(dir_z(g))).collect(),
        zbar: (0..n).map(|g| read(dir_zbar(g))).collect(),
    };
    Ok((table, res))
}

pub fn conj_cdir(d: CDir) -> CDir {
    match d {
        CDir::T => CDir::T,
        CDir::Z(g) => CDir::Zbar(g),
        CDir::Zbar(g) => CDir::Z(g),
    }
}

/// `T₁₀`-coefficients of `∇^W_d X_k` for a real frame direction `d`; the
/// `T̄₁₀` part is the conjugate. Uses the constant decomposition
/// `X_{2a} = (Z_a + Z̄_a)/√2`, `X_{2a+1} = i(Z_a − Z̄_a)/√2`.
pub fn cov_real_frame_z_coeffs(omega: &OmegaTable, d: MDir, k: usize) -> Vec<C64> {
    let a = k / 2;
    let s = 1.0 / 2.0_f64.sqrt();
    let factor = if k % 2 == 0 {
        C64::new(s, 0.0)
    } else {
        C64::new(0.0, s)
    };
    let mat = omega.on_mdir(d);
    (0..omega.n).map(|b| mat[(a, b)] * factor).collect()
}

/// `L_θ(V, X_l)` for a real vector `V` with `T₁₀`-coefficients `c` (the
/// `T̄₁₀` part implied by conjugation).
pub fn levi_against_frame(c: &[C64], l: usize) -> f64 {
    let b = l / 2;
    let s = 2.0_f64.sqrt();
    if l % 2 == 0 {
        s * c[b].re
    } else {
        s * c[b].im
    }
}

/// `∇^W_a b` as a complexified coordinate vector, for frame directions.
pub fn cov_dir(
    model: &CrModel,
    om: &OmegaTable,
    p: &ChartPoint,
    a: CDir,
    b: CDir,
) -> Vec<C64> {
    let n = model.cr_dim;
    let dim = model.dim();
    let mut out = vec![C64::new(0.0, 0.0); dim];
    match b {
        CDir::T => {} // ∇T = 0
        CDir::Z(src) => {
            let mat = om.on_dir(a);
            for beta in 0..n {
                let c = mat[(src, beta)];
                let z = model.z_frame(p, beta);
                for (o, w) in out.iter_mut().zip(&z) {
                    *o += c * w;
                }
            }
        }
        CDir::Zbar(src) => {
            // ∇_a Z̄ = conj(∇_{ā} Z)
            let mat = om.on_dir(conj_cdir(a));
            for beta in 0..n {
                let c = mat[(src, beta)].conj();
                let z = model.z_frame(p, beta);
                for (o, w) in out.iter_mut().zip(&z) {
                    *o += c * w.conj();
                }
            }
        }
    }
    out
}

/// `Tor^W(a,b) = ∇_a b − ∇_b a − [a,b]` as a complexified coordinate vector.
pub fn torsion(
    model: &CrModel,
    conn: &WebsterConnection,
    p: &ChartPoint,
    a: CDir,
    b: CDir,
) -> Result<Vec<C64>> {
    let om = conn.omega(p)?;
    let del_ab = cov_dir(model, &om, p, a, b);
    let del_ba = cov_dir(model, &om, p, b, a);
    let br = model.bracket_c(a, b, p);
    Ok(del_ab
        .iter()
        .zip(del_ba.iter())
        .zip(br.iter())
        .map(|((x, y), z)| x - y - z)
        .collect())
}

/// Webster curvature data at a point: coefficient matrices `ρ(A,B)` with
/// `R(A,B) Z_α = Σ_β ρ_{αβ}(A,B) Z_β` for all frame direction pairs.
pub struct CurvaturePoint {
    pub n: usize,
    rho: Vec<Vec<CMat>>,
}

fn dir_index(n: usize, d: CDir) -> usize {
    match d {
        CDir::T => 0,
        CDir::Z(g) => 1 + g,
        CDir::Zbar(g) => 1 + n + g,
    }
}

fn index_dir(n: usize, i: usize) -> CDir {
    if i == 0 {
        CDir::T
    } else if i <= n {
        CDir::Z(i - 1)
    } else {
        CDir::Zbar(i - 1 - n)
    }
}

impl CurvaturePoint {
    pub fn rho(&self, a: CDir, b: CDir) -> &CMat {
        &self.rho[dir_index(self.n, a)][dir_index(self.n, b)]
    }

    /// `Ric^W(A,B) = tr ρ(A,B)` on frame directions.
    pub fn ricci(&self, a: CDir, b: CDir) -> C64 {
        self.rho(a, b).trace()
    }

    /// `R^W` with its imaginary defect.
    pub fn scalar(&self) -> (f64, f64) {
        let mut s = C64::new(0.0, 0.0);
        for alpha in 0..self.n {
            s += self.ricci(CDir::Z(alpha), CDir::Zbar(alpha));
        }
        (s.re, s.im.abs())
    }

    /// The (4,0)-tensor `ℛ^W(a,b,c,d) = g_θ(R(a,b)c, d)`, last slot paired
    /// complex-bilinearly (only `T₁₀`–`T̄₁₀` pairings survive).
    pub fn riemann(&self, a: CDir, b: CDir, c: CDir, d: CDir) -> C64 {
        let zero = C64::new(0.0, 0.0);
        match c {
            CDir::T => zero,
            CDir::Z(alpha) => match d {
                CDir::Zbar(gamma) => self.rho(a, b)[(alpha, gamma)],
                _ => zero,
            },
            CDir::Zbar(alpha) => match d {
                // R(a,b)Z̄_α = conj(R(ā,b̄)Z_α)
                CDir::Z(gamma) => self.rho(conj_cdir(a), conj_cdir(b))[(alpha, gamma)].conj(),
                _ => zero,
            },
        }
    }
}

/// Assemble the curvature matrices at `p`: differentiate `ω` along the frame
/// (central differences), add the `ω∧ω` commutator and subtract `ω([a,b])`.
pub fn curvature_point(conn: &WebsterConnection, p: &ChartPoint) -> Result<CurvaturePoint> {
    let model = conn.model;
    let n = model.cr_dim;
    let dirs = 2 * n + 1;
    let om_p = conn.omega(p)?;

    let domega = |along: CDir, of: CDir| -> Result<CMat> {
        let v = model.c_frame(p, along);
        let vre: Vec<f64> = v.iter().map(|z| z.re).collect();
        let vim: Vec<f64> = v.iter().map(|z| z.im).collect();
        let eval = |dirvec: &[f64], t: f64| -> Result<CMat> {
            let q = ChartPoint(p.0.iter().zip(dirvec).map(|(x, d)| x + t * d).collect());
            Ok(conn.omega(&q)?.on_dir(of).clone())
        };
        // Fourth-order central derivative in each real direction; the result
        // feeds further differentiation, so low roundoff matters more than
        // stencil width.
        let h = STEP_BRACKET4;
        let d4 = |dir: &[f64]| -> Result<CMat> {
            Ok((-eval(dir, 2.0 * h)? + eval(dir, h)? * C64::new(8.0, 0.0)
                - eval(dir, -h)? * C64::new(8.0, 0.0)
                + eval(dir, -2.0 * h)?)
                / C64::new(12.0 * h, 0.0))
        };
        Ok(d4(&vre)? + d4(&vim)? * C64::new(0.0, 1.0))
    };

    let mut rho = vec![vec![CMat::zeros(n, n); dirs]; dirs];
    for ia in 0..dirs {
        for ib in (ia + 1)..dirs {
            let a = index_dir(n, ia);
            let b = index_dir(n, ib);
            // Row α of the table is ∇Z_α, so the operator composition
            // ∇_a∇_b Z_α picks up ω(b)-rows first: the matrix product is
            // ω(b)·ω(a) − ω(a)·ω(b) in row-vector convention.
            let da_ob = domega(a, b)?;
            let db_oa = domega(b, a)?;
            let prod = om_p.on_dir(b) * om_p.on_dir(a) - om_p.on_dir(a) * om_p.on_dir(b);
            let br = model.bracket_c(a, b, p);
            let (zc, zbc, tc) = model.decompose_c(p, &br)?;
            let om_br = om_p.on_vec(&zc, &zbc, tc);
            let mat = da_ob - db_oa + prod - om_br;
            rho[ia][ib] = mat.clone();
            rho[ib][ia] = -mat;
        }
    }
    Ok(CurvaturePoint { n, rho })
}

/// `Ric^W` on complexified coordinate vectors by bilinearity.
pub fn ricci_vec(
    model: &CrModel,
    cp: &CurvaturePoint,
    p: &ChartPoint,
    u: &[C64],
    v: &[C64],
) -> Result<C64> {
    let (uz, uzb, ut) = model.decompose_c(p, u)?;
    let (vz, vzb, vt) = model.decompose_c(p, v)?;
    let n = model.cr_dim;
    let coeff = |i: usize, z: &[C64], zb: &[C64], t: C64| -> C64 {
        if i == 0 {
            t
        } else if i <= n {
            z[i - 1]
        } else {
            zb[i - 1 - n]
        }
    };
    let mut out = C64::new(0.0, 0.0);
    for ia in 0..(2 * n + 1) {
        for ib in 0..(2 * n + 1) {
            if ia == ib {
                continue;
            }
            let ca = coeff(ia, &uz, &uzb, ut);
            let cb = coeff(ib, &vz, &vzb, vt);
            if ca.norm() > 1e-300 && cb.norm() > 1e-300 {
                out += ca * cb * cp.ricci(index_dir(n, ia), index_dir(n, ib));
            }
        }
    }
    Ok(out)
}

/// `Tr_θ` of a 2-form from its complex-bilinear evaluations:
/// `Σ_α σ(Z_α, Z̄_α)`.
pub fn theta_trace<F: FnMut(CDir, CDir) -> Result<C64>>(n: usize, mut form: F) -> Result<C64> {
    let mut s = C64::new(0.0, 0.0);
    for alpha in 0..n {
        s += form(CDir::Z(alpha), CDir::Zbar(alpha))?;
    }
    Ok(s)
}

/// `Tr_θ` of a 2-form given on the real frame: `i Σ_α σ(X_{2α}, X_{2α+1})`.
pub fn theta_trace_real<F: FnMut(usize, usize) -> f64>(n: usize, mut form: F) -> C64 {
    let mut s = 0.0;
    for alpha in 0..n {
        s += form(2 * alpha, 2 * alpha + 1);
    }
    C64::new(0.0, s)
}

/// `b_s(X_k, X_l) = L([T,X_k],X_l) − L([T,X_l],X_k)` over the real frame.
pub fn b_form(model: &CrModel, p: &ChartPoint) -> Result<Vec<Vec<f64>>> {
    let hn = model.h_count();
    let mut half = vec![vec![0.0; hn]; hn];
    for k in 0..hn {
        let br_k = model.bracket(MDir::T, MDir::H(k), p);
        for l in 0..hn {
            if k != l {
                let xl = model.h_frame(p, l);
                half[k][l] = model.levi_vv(p, &br_k, &xl)?;
            }
        }
    }
    let mut out = vec![vec![0.0; hn]; hn];
    for k in 0..hn {
        for l in 0..hn {
            out[k][l] = half[k][l] - half[l][k];
        }
    }
    Ok(out)
}

/// `d_s(X_j)(X_k, X_l) = L(∇^W_{X_j} X_k, X_l)`; antisymmetric by metricity.
pub fn d_form(conn: &WebsterConnection, p: &ChartPoint, j: usize) -> Result<Vec<Vec<f64>>> {
    let om = conn.omega(p)?;
    let hn = conn.model.h_count();
    let mut out = vec![vec![0.0; hn]; hn];
    for k in 0..hn {
        let row = cov_real_frame_z_coeffs(&om, MDir::H(j), k);
        for l in 0..hn {
            out[k][l] = levi_against_frame(&row, l);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::{make_heisenberg, make_sphere3};
    use crate::linalg::{max_abs, max_abs_diff};

    fn omega_pair(model: &CrModel, p: &ChartPoint) -> (OmegaTable, OmegaTable, f64) {
        let cf = WebsterConnection::new(model, WebsterMethod::ClosedForm);
        let ax = WebsterConnection::new(model, WebsterMethod::AxiomSolve);
        let a = cf.omega(p).unwrap();
        let (b, res) = ax.omega_with_residual(p).unwrap();
        (a, b, res)
    }

    fn omega_diff(a: &OmegaTable, b: &OmegaTable) -> f64 {
        let mut worst = max_abs_diff(&a.t, &b.t);
        for g in 0..a.n {
            worst = worst.max(max_abs_diff(&a.z[g], &b.z[g]));
            worst = worst.max(max_abs_diff(&a.zbar[g], &b.zbar[g]));
        }
        worst
    }

    #[test]
    fn heisenberg_connection_vanishes() {
        for n in [1usize, 2] {
            let model = make_heisenberg(n).unwrap();
            for p in model.sample_points(4, 12) {
                let (cf, ax, res) = omega_pair(&model, &p);
                assert!(max_abs(&cf.t) < 1e-12);
                for g in 0..n {
                    assert!(max_abs(&cf.z[g]) < 1e-12);
                    assert!(max_abs(&cf.zbar[g]) < 1e-12);
                }
                assert!(omega_diff(&cf, &ax) < 1e-9, "methods disagree");
                assert!(res < 1e-9);
            }
        }
    }

    #[test]
    fn sphere3_connection_is_minus_two_i_theta() {
        let model = make_sphere3();
        for p in model.sample_points(6, 13) {
            let (cf, ax, res) = omega_pair(&model, &p);
            assert!(
                (cf.t[(0, 0)] - C64::new(0.0, -2.0)).norm() < 1e-8,
                "{:?}",
                cf.t[(0, 0)]
            );
            assert!(cf.z[0][(0, 0)].norm() < 1e-8);
            assert!(cf.zbar[0][(0, 0)].norm() < 1e-8);
            assert!(omega_diff(&cf, &ax) < 1e-9);
            assert!(res < 1e-8);
        }
    }

    #[test]
    fn metricity_skew_hermitian() {
        // ω_{αβ}(W) + conj(ω_{βα}(W̄)) = 0 for every frame direction.
        for model in [make_heisenberg(2).unwrap(), make_sphere3()] {
            let conn = WebsterConnection::new(&model, WebsterMethod::ClosedForm);
            let n = model.cr_dim;
            for p in model.sample_points(3, 31) {
                let om = conn.omega(&p).unwrap();
                let mut dirs = alloc::vec![CDir::T];
                for g in 0..n {
                    dirs.push(CDir::Z(g));
                    dirs.push(CDir::Zbar(g));
                }
                for &d in &dirs {
                    let a = om.on_dir(d);
                    let b = om.on_dir(conj_cdir(d));
                    for al in 0..n {
                        for be in 0..n {
                            let r = a[(al, be)] + b[(be, al)].conj();
                            assert!(r.norm() < 1e-8, "dir {d:?} ({al},{be}): {r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn torsion_identities_complex() {
        for model in [make_heisenberg(1).unwrap(), make_heisenberg(2).unwrap(), make_sphere3()] {
            let conn = WebsterConnection::new(&model, WebsterMethod::ClosedForm);
            let n = model.cr_dim;
            for p in model.sample_points(3, 14) {
                for a in 0..n {
                    for b in 0..n {
                        let t1 = torsion(&model, &conn, &p, CDir::Z(a), CDir::Z(b)).unwrap();
                        let t2 = torsion(&model, &conn, &p, CDir::Zbar(a), CDir::Zbar(b)).unwrap();
                        for v in t1.iter().chain(t2.iter()) {
                            assert!(v.norm() < 1e-8);
                        }
                    }
                }
                // Tor(Z_a, Z̄_b) = i·δ_ab·T.
                let tvec = model.t_field(&p);
                for a in 0..n {
                    for b in 0..n {
                        let tor = torsion(&model, &conn, &p, CDir::Z(a), CDir::Zbar(b)).unwrap();
                        let want = if a == b {
                            C64::new(0.0, 1.0)
                        } else {
                            C64::new(0.0, 0.0)
                        };
                        for (i, v) in tor.iter().enumerate() {
                            assert!((v - want * tvec[i]).norm() < 1e-8);
                        }
                    }
                }
                // Tor(T, Z_a) = −pr₀₁[T, Z_a].
                for a in 0..n {
                    let tor = torsion(&model, &conn, &p, CDir::T, CDir::Z(a)).unwrap();
                    let br = model.bracket_c(CDir::T, CDir::Z(a), &p);
                    let (_, zbc, _) = model.decompose_c(&p, &br).unwrap();
                    let mut want = alloc::vec![C64::new(0.0, 0.0); model.dim()];
                    for (g, &c) in zbc.iter().enumerate() {
                        let z = model.z_frame(&p, g);
                        for (w, x) in want.iter_mut().zip(&z) {
                            *w -= c * x.conj();
                        }
                    }
                    for (v, w) in tor.iter().zip(&want) {
                        assert!((v - w).norm() < 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn real_torsion_is_levi_jx_times_t() {
        for model in [make_heisenberg(1).unwrap(), make_sphere3()] {
            let conn = WebsterConnection::new(&model, WebsterMethod::ClosedForm);
            for p in model.sample_points(3, 15) {
                let om = conn.omega(&p).unwrap();
                let hn = model.h_count();
                let tvec = model.t_field(&p);
                for k in 0..hn {
                    for l in 0..hn {
                        let ckl = cov_real_frame_z_coeffs(&om, MDir::H(k), l);
                        let clk = cov_real_frame_z_coeffs(&om, MDir::H(l), k);
                        let br = model.bracket(MDir::H(k), MDir::H(l), &p);
                        let mut tor = alloc::vec![0.0; model.dim()];
                        for g in 0..model.cr_dim {
                            let z = model.z_frame(&p, g);
                            for (i, zi) in z.iter().enumerate() {
                                // A real vector with T₁₀-coefficients c has
                                // coordinates 2·Re(c·Z).
                                tor[i] += 2.0 * (ckl[g] * zi).re - 2.0 * (clk[g] * zi).re;
                            }
                        }
                        for i in 0..model.dim() {
                            tor[i] -= br[i];
                        }
                        let (jk, sk) = model.j_frame(k);
                        let jx: Vec<f64> =
                            model.h_frame(&p, jk).iter().map(|x| sk * x).collect();
                        let xl = model.h_frame(&p, l);
                        let lam = model.levi_vv(&p, &jx, &xl).unwrap();
                        for i in 0..model.dim() {
                            assert!(
                                (tor[i] - lam * tvec[i]).abs() < 1e-8,
                                "Tor(X_{k},X_{l}) component {i}"
                            );
                        }
                    }
                }
                // Tor(T,X) = −½{[T,X] + J[T,JX]}.
                for k in 0..hn {
                    let row = cov_real_frame_z_coeffs(&om, MDir::T, k);
                    let br = model.bracket(MDir::T, MDir::H(k), &p);
                    let mut tor = alloc::vec![0.0; model.dim()];
                    for g in 0..model.cr_dim {
                        let z = model.z_frame(&p, g);
                        for (i, zi) in z.iter().enumerate() {
                            tor[i] += 2.0 * (row[g] * zi).re;
                        }
                    }
                    for i in 0..model.dim() {
                        tor[i] -= br[i];
                    }
                    let (jk, sk) = model.j_frame(k);
                    let brj: Vec<f64> = model
                        .bracket(MDir::T, MDir::H(jk), &p)
                        .iter()
                        .map(|x| sk * x)
                        .collect();
                    let jbrj = model.j_apply(&p, &brj).unwrap();
                    for i in 0..model.dim() {
                        let want = -0.5 * (br[i] + jbrj[i]);
                        assert!((tor[i] - want).abs() < 1e-8, "Tor(T,X_{k}) comp {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn j_parallel_along_frame() {
        // ∇^W(JX) = J(∇^W X) on H for every frame direction.
        for model in [make_heisenberg(2).unwrap(), make_sphere3()] {
            let conn = WebsterConnection::new(&model, WebsterMethod::AxiomSolve);
            for p in model.sample_points(2, 32) {
                let om = conn.omega(&p).unwrap();
                for d in 0..=model.h_count() {
                    let dir = if d == 0 { MDir::T } else { MDir::H(d - 1) };
                    for k in 0..model.h_count() {
                        let (jk, sk) = model.j_frame(k);
                        let lhs: Vec<C64> = cov_real_frame_z_coeffs(&om, dir, jk)
                            .iter()
                            .map(|c| c * sk)
                            .collect();
                        // J multiplies T₁₀-coefficients by i.
                        let rhs: Vec<C64> = cov_real_frame_z_coeffs(&om, dir, k)
                            .iter()
                            .map(|c| c * C64::new(0.0, 1.0))
                            .collect();
                        for (a, b) in lhs.iter().zip(&rhs) {
                            assert!((a - b).norm() < 1e-9);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scalar_curvature_flat_and_round() {
        let heis = make_heisenberg(1).unwrap();
        let conn = WebsterConnection::new(&heis, WebsterMethod::ClosedForm);
        for p in heis.sample_points(4, 16) {
            let cp = curvature_point(&conn, &p).unwrap();
            let (r, im) = cp.scalar();
            assert!(r.abs() < 1e-9 && im < 1e-9);
        }

        let sph = make_sphere3();
        let conn = WebsterConnection::new(&sph, WebsterMethod::ClosedForm);
        let mut values = Vec::new();
        for p in sph.sample_points(6, 17) {
            let cp = curvature_point(&conn, &p).unwrap();
            let (r, im) = cp.scalar();
            assert!(im < 1e-8);
            values.push(r);
        }
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        assert!(hi - lo < 1e-7, "spread {}", hi - lo);
        assert!((values[0] - 2.0).abs() < 1e-7, "R^W = {}", values[0]);
    }

    #[test]
    fn ricci_one_one_type_and_imaginary() {
        let model = make_sphere3();
        let conn = WebsterConnection::new(&model, WebsterMethod::ClosedForm);
        for p in model.sample_points(3, 18) {
            let cp = curvature_point(&conn, &p).unwrap();
            for k in 0..2 {
                for l in 0..2 {
                    let as_c = |v: Vec<f64>| -> Vec<C64> {
                        v.into_iter().map(|x| C64::new(x, 0.0)).collect()
                    };
                    let u = as_c(model.h_frame(&p, k));
                    let v = as_c(model.h_frame(&p, l));
                    let val = ricci_vec(&model, &cp, &p, &u, &v).unwrap();
                    assert!(val.re.abs() < 1e-8, "Ric not imaginary: {val}");
                    let (jk, sk) = model.j_frame(k);
                    let (jl, sl) = model.j_frame(l);
                    let ju: Vec<C64> = model
                        .h_frame(&p, jk)
                        .iter()
                        .map(|&x| C64::new(sk * x, 0.0))
                        .collect();
                    let jv: Vec<C64> = model
                        .h_frame(&p, jl)
                        .iter()
                        .map(|&x| C64::new(sl * x, 0.0))
                        .collect();
                    let valj = ricci_vec(&model, &cp, &p, &ju, &jv).unwrap();
                    assert!((val - valj).norm() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn riemann_symmetries() {
        for model in [make_heisenberg(1).unwrap(), make_sphere3()] {
            let conn = WebsterConnection::new(&model, WebsterMethod::ClosedForm);
            let n = model.cr_dim;
            let mut dirs = alloc::vec![CDir::T];
            for g in 0..n {
                dirs.push(CDir::Z(g));
                dirs.push(CDir::Zbar(g));
            }
            for p in model.sample_points(2, 19) {
                let cp = curvature_point(&conn, &p).unwrap();
                for &a in &dirs {
                    for &b in &dirs {
                        for &c in &dirs {
                            for &d in &dirs {
                                let r = cp.riemann(a, b, c, d);
                                assert!((r + cp.riemann(b, a, c, d)).norm() < 1e-6);
                                let rc = cp.riemann(
                                    conj_cdir(a),
                                    conj_cdir(b),
                                    conj_cdir(c),
                                    conj_cdir(d),
                                );
                                assert!((r.conj() - rc).norm() < 1e-6);
                            }
                        }
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            for d in 0..n {
                                let lhs = cp.riemann(
                                    CDir::Z(a),
                                    CDir::Zbar(b),
                                    CDir::Z(c),
                                    CDir::Zbar(d),
                                );
                                let rhs = cp.riemann(
                                    CDir::Z(c),
                                    CDir::Zbar(b),
                                    CDir::Z(a),
                                    CDir::Zbar(d),
                                );
                                assert!((lhs - rhs).norm() < 1e-6);
                                let zz =
                                    cp.riemann(CDir::Z(a), CDir::Z(b), CDir::Z(c), CDir::Zbar(d));
                                assert!(zz.norm() < 1e-6);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_traces() {
        for model in [make_heisenberg(1).unwrap(), make_heisenberg(2).unwrap(), make_sphere3()] {
            let n = model.cr_dim;
            for p in model.sample_points(2, 20) {
                let tr = theta_trace(n, |a, b| {
                    let u = model.c_frame(&p, a);
                    let v = model.c_frame(&p, b);
                    Ok(model.d_theta_c(&p, &u, &v))
                })
                .unwrap();
                assert!((tr - C64::new(0.0, n as f64)).norm() < 1e-10);
                let tr_real = theta_trace_real(n, |k, l| {
                    let u = model.h_frame(&p, k);
                    let v = model.h_frame(&p, l);
                    model.d_theta(&p, &u, &v)
                });
                assert!((tr_real - tr).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn prop22_trace_identities() {
        for model in [make_heisenberg(1).unwrap(), make_sphere3()] {
            let conn = WebsterConnection::new(&model, WebsterMethod::ClosedForm);
            let n = model.cr_dim;
            for p in model.sample_points(3, 21) {
                let om = conn.omega(&p).unwrap();
                let b = b_form(&model, &p).unwrap();
                let tr_b = theta_trace_real(n, |k, l| b[k][l]);
                let want = om.trace_on(CDir::T) * C64::new(2.0, 0.0);
                assert!((tr_b - want).norm() < 1e-8, "b_s trace {tr_b} vs {want}");
                for j in 0..model.h_count() {
                    let d = d_form(&conn, &p, j).unwrap();
                    let tr_d = theta_trace_real(n, |k, l| d[k][l]);
                    let want = om.on_mdir(MDir::H(j)).trace();
                    assert!((tr_d - want).norm() < 1e-8);
                    for k in 0..model.h_count() {
                        for l in 0..model.h_count() {
                            let (jk, sk) = model.j_frame(k);
                            let (jl, sl) = model.j_frame(l);
                            assert!((sk * sl * d[jk][jl] - d[k][l]).abs() < 1e-8);
                            assert!((sk * sl * b[jk][jl] - b[k][l]).abs() < 1e-8);
                        }
                    }
                }
            }
        }
    }
}
