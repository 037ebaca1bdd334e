//! Dense linear-algebra aliases and small helpers shared by all modules.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::{C64, Error, Result};

/// Dense complex matrix.
pub type CMat = DMatrix<C64>;
/// Dense complex vector.
pub type CVec = DVector<C64>;
/// Dense real matrix.
pub type RMat = DMatrix<f64>;
/// Dense real vector.
pub type RVec = DVector<f64>;

/// Largest absolute entry of a complex matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest absolute entry difference of two complex matrices.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

/// Conjugate transpose.
pub fn adjoint(m: &CMat) -> CMat {
    m.adjoint()
}

/// Solve the real square system `a x = b`.
pub fn solve_real(a: &RMat, b: &RVec) -> Result<RVec> {
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::SingularFrame("real frame system".into()))
}

/// Least-squares solution of an overdetermined complex system via the
/// normal equations; also returns the residual norm ‖a x − b‖.
pub fn lstsq_complex(a: &CMat, b: &CVec) -> Result<(CVec, f64)> {
    let ah = a.adjoint();
    let gram = &ah * a;
    let rhs = &ah * b;
    let x = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SingularFrame("normal equations".into()))?;
    let res = (a * &x - b).norm();
    Ok((x, res))
}

/// Least-squares solution of an overdetermined real system via the normal
/// equations; also returns the residual norm ‖a x − b‖.
pub fn lstsq_real(a: &RMat, b: &RVec) -> Result<(RVec, f64)> {
    let at = a.transpose();
    let gram = &at * a;
    let rhs = &at * b;
    let x = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SingularFrame("normal equations".into()))?;
    let res = (a * &x - b).norm();
    Ok((x, res))
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &RMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Signature of a real symmetric matrix as `(negative, positive)` counts,
/// treating eigenvalues below `tol` in magnitude as zero.
pub fn sym_signature(m: &RMat, tol: f64) -> (usize, usize) {
    let ev = sym_eigenvalues(m);
    let neg = ev.iter().filter(|&&x| x < -tol).count();
    let pos = ev.iter().filter(|&&x| x > tol).count();
    (neg, pos)
}

/// Dense real rank-4 tensor with all slots of dimension `d`.
#[derive(Debug, Clone)]
pub struct T4 {
    pub d: usize,
    v: Vec<f64>,
}

impl T4 {
    pub fn zeros(d: usize) -> Self {
        T4 { d, v: alloc::vec![0.0; d * d * d * d] }
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.v[((i * self.d + j) * self.d + k) * self.d + l]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, x: f64) {
        self.v[((i * self.d + j) * self.d + k) * self.d + l] = x;
    }
    pub fn max_abs(&self) -> f64 {
        self.v.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Dense real rank-3 tensor.
#[derive(Debug, Clone)]
pub struct T3 {
    pub d: usize,
    v: Vec<f64>,
}

impl T3 {
    pub fn zeros(d: usize) -> Self {
        T3 { d, v: alloc::vec![0.0; d * d * d] }
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.v[(i * self.d + j) * self.d + k]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, x: f64) {
        self.v[(i * self.d + j) * self.d + k] = x;
    }
    pub fn max_abs(&self) -> f64 {
        self.v.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lstsq_recovers_exact_solution() {
        // Overdetermined consistent system.
        let a = CMat::from_row_slice(
            3,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, 1.0),
                C64::new(2.0, 0.0),
                C64::new(1.0, -1.0),
                C64::new(0.0, 0.0),
                C64::new(3.0, 0.0),
            ],
        );
        let x_true = CVec::from_vec(alloc::vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.25)]);
        let b = &a * &x_true;
        let (x, res) = lstsq_complex(&a, &b).unwrap();
        assert!(res < 1e-12);
        assert!((x - x_true).norm() < 1e-12);
    }

    #[test]
    fn signature_of_minkowski_gram() {
        let mut g = RMat::identity(4, 4);
        g[(0, 0)] = -1.0;
        assert_eq!(sym_signature(&g, 1e-12), (1, 3));
    }
}
