//! Dense real matrices of orders 2, 3 and 5.
//!
//! Everything downstream works with tiny fixed-size symmetric matrices, so
//! this module keeps them as plain `[[f64; N]; N]` arrays behind a newtype.
//! Alongside the usual arithmetic it provides the reverse identity `J`, the
//! structural predicates (symmetric / persymmetric / centrosymmetric /
//! bisymmetric / nonnegative) and a plane-rotation eigensolver that serves as
//! the verification oracle for every constructed matrix.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

/// Relative off-diagonal norm target for the eigensolver.
const EIG_OFF_TOL: f64 = 1e-13;

/// Full-sweep cap for the eigensolver; a sweep is `N(N-1)/2` rotations.
const EIG_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum EigenError {
    /// The rotation loop hit its sweep cap without reaching the off-diagonal
    /// norm target. Unreachable for genuinely symmetric input.
    #[error("eigensolver failed to converge within {0} sweeps")]
    NoConvergence(usize),
}

/// Dense square matrix with row-major entries.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat<const N: usize> {
    e: [[f64; N]; N],
}

pub type Mat2 = Mat<2>;
pub type Mat3 = Mat<3>;
pub type Mat5 = Mat<5>;

impl<const N: usize> Mat<N> {
    pub fn zero() -> Self {
        Mat { e: [[0.0; N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.e[i][i] = 1.0;
        }
        m
    }

    /// The reverse identity `J`: ones on the anti-diagonal. `J * J = I`.
    pub fn reverse_identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.e[i][N - 1 - i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: [[f64; N]; N]) -> Self {
        Mat { e: rows }
    }

    pub fn rows(&self) -> &[[f64; N]; N] {
        &self.e
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..N {
            for j in 0..N {
                t.e[j][i] = self.e[i][j];
            }
        }
        t
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut m = *self;
        for row in m.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= c;
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.e[i][i]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                d = d.max((self.e[i][j] - other.e[i][j]).abs());
            }
        }
        d
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn min_entry(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .fold(f64::INFINITY, |acc, v| acc.min(*v))
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().flatten().all(|v| v.is_finite())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.transpose()) <= tol
    }

    /// Symmetry about the anti-diagonal: `A J = J A^T`.
    pub fn is_persymmetric(&self, tol: f64) -> bool {
        let j = Self::reverse_identity();
        (*self * j).max_abs_diff(&(j * self.transpose())) <= tol
    }

    /// `A J = J A`.
    pub fn is_centrosymmetric(&self, tol: f64) -> bool {
        let j = Self::reverse_identity();
        (*self * j).max_abs_diff(&(j * *self)) <= tol
    }

    /// Symmetric and centrosymmetric; persymmetry then follows and is kept as
    /// a separate predicate for reporting.
    pub fn is_bisymmetric(&self, tol: f64) -> bool {
        self.is_symmetric(tol) && self.is_centrosymmetric(tol)
    }

    /// Every entry at least `-tol`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.min_entry() >= -tol
    }

    /// Map entries in `(-tol, 0)` to exactly zero. Entries at or below `-tol`
    /// are left alone so a genuine sign violation still fails downstream
    /// nonnegativity checks.
    pub fn clamp_negative_zeros(&self, tol: f64) -> Self {
        let mut m = *self;
        for row in m.e.iter_mut() {
            for v in row.iter_mut() {
                if *v < 0.0 && *v > -tol {
                    *v = 0.0;
                }
            }
        }
        m
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += self.e[i][j] * self.e[i][j];
                }
            }
        }
        s.sqrt()
    }

    /// Eigenvalues of a symmetric matrix, sorted descending.
    ///
    /// Classical two-sided plane-rotation diagonalization: each step
    /// annihilates the largest off-diagonal entry, until the off-diagonal
    /// Frobenius norm drops below `1e-13 * (1 + ||m||_F)`. At these orders the
    /// loop terminates in a handful of sweeps.
    #[allow(clippy::needless_range_loop)]
    pub fn sym_eigenvalues(&self) -> Result<[f64; N], EigenError> {
        debug_assert!(
            self.is_symmetric(1e-12 * (1.0 + self.max_abs())),
            "sym_eigenvalues requires symmetric input"
        );
        let mut a = self.e;
        let target = EIG_OFF_TOL * (1.0 + self.frobenius_norm());
        let rotations_per_sweep = (N * N).saturating_sub(N) / 2;
        let max_rotations = EIG_MAX_SWEEPS * rotations_per_sweep.max(1);

        let mut converged = Mat { e: a }.off_diagonal_norm() <= target;
        for _ in 0..max_rotations {
            if converged {
                break;
            }
            // largest off-diagonal pivot
            let (mut p, mut q, mut best) = (0, 0, 0.0f64);
            for i in 0..N {
                for j in (i + 1)..N {
                    if a[i][j].abs() > best {
                        best = a[i][j].abs();
                        p = i;
                        q = j;
                    }
                }
            }
            if best == 0.0 {
                converged = true;
                break;
            }
            let apq = a[p][q];
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..N {
                if k != p && k != q {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
            }
            a[p][p] -= t * apq;
            a[q][q] += t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            converged = Mat { e: a }.off_diagonal_norm() <= target;
        }
        if !converged {
            return Err(EigenError::NoConvergence(EIG_MAX_SWEEPS));
        }
        let mut vals = [0.0; N];
        for i in 0..N {
            vals[i] = a[i][i];
        }
        sort_descending(&mut vals);
        Ok(vals)
    }
}

/// Stable descending sort; finite inputs only.
pub fn sort_descending(vals: &mut [f64]) {
    vals.sort_by(|x, y| y.partial_cmp(x).expect("finite values"));
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.e[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.e[i][j]
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Mat<N>;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] += rhs.e[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Mat<N>;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.e[i][j] -= rhs.e[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Mat<N>;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Mat::zero();
        for i in 0..N {
            for j in 0..N {
                let mut s = 0.0;
                for k in 0..N {
                    s += self.e[i][k] * rhs.e[k][j];
                }
                m.e[i][j] = s;
            }
        }
        m
    }
}

impl<const N: usize> fmt::Debug for Mat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat{}x{} [", N, N)?;
        for row in &self.e {
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn reverse_identity_shapes() {
        let j2 = Mat2::reverse_identity();
        assert_eq!(j2.rows(), &[[0.0, 1.0], [1.0, 0.0]]);
        let j5 = Mat5::reverse_identity();
        for i in 0..5 {
            for k in 0..5 {
                let expect = if i + k == 4 { 1.0 } else { 0.0 };
                assert_eq!(j5[(i, k)], expect);
            }
        }
    }

    #[test]
    fn reverse_identity_is_symmetric_involution() {
        let j = Mat5::reverse_identity();
        assert_eq!(j, j.transpose());
        assert_eq!(j * j, Mat5::identity());
    }

    #[test]
    fn bisymmetric_predicate() {
        assert!(Mat5::zero().is_bisymmetric(1e-12));
        let mut e12 = Mat5::zero();
        e12[(0, 1)] = 1.0;
        assert!(!e12.is_bisymmetric(1e-12));
    }

    #[test]
    fn nonnegative_tolerance() {
        assert!(Mat2::zero().is_nonnegative(1e-12));
        let mut m = Mat2::zero();
        m[(0, 0)] = -1e-15;
        assert!(m.is_nonnegative(1e-12));
        m[(0, 0)] = -1.0;
        assert!(!m.is_nonnegative(1e-12));
    }

    #[test]
    fn clamp_keeps_real_negatives() {
        let mut m = Mat2::zero();
        m[(0, 0)] = -1e-15;
        m[(1, 1)] = -1e-3;
        let c = m.clamp_negative_zeros(1e-12);
        assert_eq!(c[(0, 0)], 0.0);
        assert_eq!(c[(1, 1)], -1e-3);
    }

    #[test]
    fn eigenvalues_identity() {
        let vals = Mat5::identity().sym_eigenvalues().unwrap();
        assert_eq!(vals, [1.0; 5]);
    }

    #[test]
    fn eigenvalues_reverse_identity() {
        // J^2 = I and Tr J = 1 force three +1 and two -1.
        let vals = Mat5::reverse_identity().sym_eigenvalues().unwrap();
        let expect = [1.0, 1.0, 1.0, -1.0, -1.0];
        for (v, e) in vals.iter().zip(expect.iter()) {
            assert_close(*v, *e, 1e-12);
        }
    }

    #[test]
    fn eigenvalues_2x2_closed_form() {
        let m = Mat2::from_rows([[2.0, 1.0], [1.0, 2.0]]);
        let vals = m.sym_eigenvalues().unwrap();
        assert_close(vals[0], 3.0, 1e-12);
        assert_close(vals[1], 1.0, 1e-12);
    }

    #[test]
    fn eigenvalue_sums_match_traces() {
        let m = Mat3::from_rows([[1.0, 0.5, -0.25], [0.5, -2.0, 0.75], [-0.25, 0.75, 0.5]]);
        let vals = m.sym_eigenvalues().unwrap();
        assert_close(vals.iter().sum::<f64>(), m.trace(), 1e-12);
        let m3 = m * m * m;
        assert_close(
            vals.iter().map(|v| v * v * v).sum::<f64>(),
            m3.trace(),
            1e-10,
        );
    }
}
