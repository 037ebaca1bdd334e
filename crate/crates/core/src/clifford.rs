//! Matrix realizations of Clifford algebras and their spinor modules.
//!
//! `Cliff_{2m,k}` is realized on `ℂ^{2^m}` by the Kronecker-product scheme
//!
//! ```text
//! e_{2j−1} ↦ τ_{2j−1} · E ⊗ … ⊗ E ⊗ U ⊗ T ⊗ … ⊗ T
//! e_{2j}   ↦ τ_{2j}   · E ⊗ … ⊗ E ⊗ V ⊗ T ⊗ … ⊗ T      (j−1 trailing T factors)
//! ```
//!
//! with `τ_j = i` for `j ≤ k` and `1` otherwise, so that
//! `e_i e_j + e_j e_i = −2 ε_j δ_ij` with `ε_j = −1` exactly for the first `k`
//! (timelike) generators. The half-spinor modules `Δ±` are the eigenspaces of
//! the volume element to the eigenvalues `±i^{m+k}`, and the vectors
//! `u(δ₁,…,δ_m) = u(δ₁) ⊗ … ⊗ u(δ_m)`, `u(δ) = (1, −δi)ᵀ/√2`, form an
//! orthonormal eigenbasis. All entries lie in `{0, ±1, ±i}·2^{−m/2}`, so the
//! relations hold to machine epsilon in `f64`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{max_abs, CMat, CVec};
use crate::rng::Lcg;
use crate::{C64, Error, Result};

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

fn block_u() -> CMat {
    CMat::from_row_slice(2, 2, &[I, ZERO, ZERO, -I])
}

fn block_v() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, I, I, ZERO])
}

fn block_e() -> CMat {
    CMat::identity(2, 2)
}

fn block_t() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
}

/// `i^p` for any integer power.
pub fn i_pow(p: i64) -> C64 {
    match p.rem_euclid(4) {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// A concrete matrix realization of `Cliff_{2m,k}` on `ℂ^{2^m}`.
#[derive(Debug, Clone)]
pub struct CliffordRep {
    /// Half the vector-space dimension: `n = 2m`.
    pub m: usize,
    /// Number of timelike directions (`ε_j = −1` for `j ≤ k`).
    pub k: usize,
    /// Images of the generators `e_1, …, e_{2m}`.
    pub generators: Vec<CMat>,
    /// Image of the ordered product `e_1 · … · e_{2m}`.
    pub volume: CMat,
}

impl CliffordRep {
    /// Vector-space dimension `n = 2m`.
    pub fn n(&self) -> usize {
        2 * self.m
    }

    /// Spinor-module dimension `2^m`.
    pub fn dim(&self) -> usize {
        1 << self.m
    }

    /// Signature sign of the `j`-th generator (0-based): `−1` if timelike.
    pub fn eps(&self, j: usize) -> f64 {
        if j < self.k {
            -1.0
        } else {
            1.0
        }
    }
}

/// Build the representation for given `m ≥ 1`, `0 ≤ k ≤ 2m`.
pub fn build_rep(m: usize, k: usize) -> Result<CliffordRep> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    if k > 2 * m {
        return Err(Error::InvalidParameter("k exceeds the vector-space dimension".into()));
    }
    let mut generators = Vec::with_capacity(2 * m);
    for idx in 1..=(2 * m) {
        // idx = 2j−1 or 2j; the pair index j determines the factor layout.
        let j = idx.div_ceil(2);
        let core = if idx % 2 == 1 { block_u() } else { block_v() };
        let mut mat = CMat::identity(1, 1);
        for _ in 0..(m - j) {
            mat = mat.kronecker(&block_e());
        }
        mat = mat.kronecker(&core);
        for _ in 0..(j - 1) {
            mat = mat.kronecker(&block_t());
        }
        let tau = if idx <= k { I } else { ONE };
        generators.push(mat * tau);
    }
    let mut volume = CMat::identity(1 << m, 1 << m);
    for g in &generators {
        volume = volume * g;
    }
    Ok(CliffordRep { m, k, generators, volume })
}

/// A spinor in `Δ_{2m,k}` tagged with its representation parameters.
#[derive(Debug, Clone)]
pub struct Spinor {
    pub components: CVec,
    pub m: usize,
    pub k: usize,
}

impl Spinor {
    pub fn new(components: CVec, rep: &CliffordRep) -> Self {
        Spinor { components, m: rep.m, k: rep.k }
    }

    fn check_rep(&self, rep: &CliffordRep) -> Result<()> {
        if self.m != rep.m || self.k != rep.k {
            return Err(Error::MismatchedRep);
        }
        Ok(())
    }
}

/// `u(δ) = (1, −δi)ᵀ/√2`.
fn u_two(delta: i32) -> CVec {
    let s = 1.0 / 2.0_f64.sqrt();
    CVec::from_vec(vec![C64::new(s, 0.0), C64::new(0.0, -(delta as f64) * s)])
}

/// The basis spinor `u(δ₁,…,δ_m)`; each entry must be ±1.
pub fn basis_spinor(deltas: &[i32], rep: &CliffordRep) -> Result<Spinor> {
    if deltas.len() != rep.m {
        return Err(Error::InvalidParameter("wrong number of signs".into()));
    }
    if deltas.iter().any(|d| d.abs() != 1) {
        return Err(Error::InvalidParameter("signs must be ±1".into()));
    }
    let mut v = CVec::from_vec(vec![ONE]);
    for &d in deltas {
        v = v.kronecker(&u_two(d));
    }
    Ok(Spinor::new(v, rep))
}

/// All sign patterns of length `m` in lexicographic order with `+1 < −1`.
pub fn sign_patterns(m: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0..(1u32 << m) {
        out.push(
            (0..m)
                .map(|j| if mask >> (m - 1 - j) & 1 == 0 { 1 } else { -1 })
                .collect(),
        );
    }
    out
}

/// Projectors onto the `±i^{m+k}` eigenspaces of the volume element.
///
/// The volume element squares to `(−1)^{m+k}·Id`, so `vol / i^{m+k}` is an
/// involution and the projectors are `(Id ± vol/i^{m+k})/2`; no eigensolver
/// is involved.
pub fn split_projectors(rep: &CliffordRep) -> (CMat, CMat) {
    let dim = rep.dim();
    let id = CMat::identity(dim, dim);
    let w = &rep.volume * (ONE / i_pow((rep.m + rep.k) as i64));
    let p_plus = (&id + &w) * C64::new(0.5, 0.0);
    let p_minus = (&id - &w) * C64::new(0.5, 0.0);
    (p_plus, p_minus)
}

/// Coefficients of a differential form in an orthonormal frame.
#[derive(Debug, Clone)]
pub enum FormCoeffs {
    /// 1-form values `σ(e_i)`.
    One(Vec<C64>),
    /// 2-form values `σ(e_i, e_j)` as a full antisymmetric table.
    Two(Vec<Vec<C64>>),
}

impl FormCoeffs {
    pub fn zero_two(n: usize) -> Self {
        FormCoeffs::Two(vec![vec![ZERO; n]; n])
    }
}

/// Clifford action of a 1- or 2-form given in an orthonormal frame:
/// `σ·ψ = Σ_i ε_i σ_i e_i·ψ` resp. `Σ_{i<j} ε_i ε_j σ_ij e_i·e_j·ψ`.
pub fn form_action(form: &FormCoeffs, rep: &CliffordRep, spinor: &Spinor) -> Result<Spinor> {
    spinor.check_rep(rep)?;
    let n = rep.n();
    let mut out = CVec::zeros(rep.dim());
    match form {
        FormCoeffs::One(c) => {
            if c.len() != n {
                return Err(Error::InvalidParameter("1-form table has wrong length".into()));
            }
            for i in 0..n {
                if c[i] != ZERO {
                    out += &rep.generators[i] * &spinor.components * (c[i] * rep.eps(i));
                }
            }
        }
        FormCoeffs::Two(c) => {
            if c.len() != n || c.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidParameter("2-form table has wrong shape".into()));
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    if c[i][j] != ZERO {
                        let eiej = &rep.generators[i] * &rep.generators[j];
                        out += eiej * &spinor.components * (c[i][j] * rep.eps(i) * rep.eps(j));
                    }
                }
            }
        }
    }
    Ok(Spinor { components: out, m: spinor.m, k: spinor.k })
}

/// Spin lift of a diagonal unitary `A = diag(e^{iθ_1},…,e^{iθ_m})`:
/// the product `Π_j (cos(θ_j/2) + sin(θ_j/2)·e_{2j−1}e_{2j})` scaled by
/// `e^{(i/2)Σθ_j}`. Only defined on the `k = 0` representation.
pub fn ell_diag(angles: &[f64], rep: &CliffordRep) -> Result<CMat> {
    if rep.k != 0 {
        return Err(Error::InvalidParameter("ell is defined on the k = 0 representation".into()));
    }
    if angles.len() != rep.m {
        return Err(Error::InvalidParameter("need one angle per complex direction".into()));
    }
    let dim = rep.dim();
    let mut out = CMat::identity(dim, dim);
    let mut half_sum = 0.0;
    for (j, &th) in angles.iter().enumerate() {
        let rot = &rep.generators[2 * j] * &rep.generators[2 * j + 1];
        let factor = CMat::identity(dim, dim) * C64::new((th / 2.0).cos(), 0.0)
            + rot * C64::new((th / 2.0).sin(), 0.0);
        out = out * factor;
        half_sum += th / 2.0;
    }
    Ok(out * C64::new(half_sum.cos(), half_sum.sin()))
}

/// Which scalar product to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingKind {
    /// The indefinite product compatible with Clifford multiplication,
    /// `⟨X·φ, ψ⟩ = ⟨φ, X·ψ⟩` for every generator `X`.
    Indefinite,
    /// The positive definite product `(·,·)_ξ`; in this realization the
    /// standard Hermitian product of `ℂ^{2^m}`.
    PositiveXi,
}

/// Standard Hermitian product, antilinear in the second argument.
pub fn herm(a: &CVec, b: &CVec) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// Evaluate a pairing of two spinors of the same representation.
///
/// For `k = 1` the indefinite product is `(e₁·φ, ψ)_std` (the timelike
/// generator is Hermitian with square `+Id`); for `k = 0` it is
/// `(i^m·vol·φ, ψ)_std`, the Hermitian involution anticommuting with all
/// generators. Both have split signature and satisfy the compatibility
/// `⟨X·φ,ψ⟩ = ⟨φ,X·ψ⟩`.
pub fn pairing(kind: PairingKind, rep: &CliffordRep, phi: &Spinor, psi: &Spinor) -> Result<C64> {
    phi.check_rep(rep)?;
    psi.check_rep(rep)?;
    match kind {
        PairingKind::PositiveXi => Ok(herm(&phi.components, &psi.components)),
        PairingKind::Indefinite => {
            let q = indefinite_operator(rep)?;
            Ok(herm(&(q * &phi.components), &psi.components))
        }
    }
}

/// The Hermitian operator `Q` with `⟨φ,ψ⟩ = (Qφ,ψ)_std`.
pub fn indefinite_operator(rep: &CliffordRep) -> Result<CMat> {
    match rep.k {
        1 => Ok(rep.generators[0].clone()),
        0 => Ok(&rep.volume * i_pow(rep.m as i64)),
        k => Err(Error::InvalidParameter(alloc::format!(
            "indefinite pairing implemented for k ∈ {{0,1}}, got {k}"
        ))),
    }
}

/// Residual of the defining anticommutation relations,
/// `max_{i,j} ‖e_i e_j + e_j e_i + 2 ε_j δ_ij‖`.
pub fn relation_residual(rep: &CliffordRep) -> f64 {
    let dim = rep.dim();
    let id = CMat::identity(dim, dim);
    let mut worst = 0.0_f64;
    for i in 0..rep.n() {
        for j in 0..rep.n() {
            let anti = &rep.generators[i] * &rep.generators[j]
                + &rep.generators[j] * &rep.generators[i];
            let expect = if i == j {
                &id * C64::new(-2.0 * rep.eps(j), 0.0)
            } else {
                CMat::zeros(dim, dim)
            };
            worst = worst.max(max_abs(&(anti - expect)));
        }
    }
    worst
}

/// A seeded random spinor with components in the unit box.
pub fn random_spinor(rep: &CliffordRep, rng: &mut Lcg) -> Spinor {
    let v = CVec::from_iterator(rep.dim(), (0..rep.dim()).map(|_| rng.next_c64()));
    Spinor::new(v, rep)
}
