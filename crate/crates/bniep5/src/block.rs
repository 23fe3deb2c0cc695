//! Block form of odd-order bisymmetric matrices.
//!
//! A `(2m+1)×(2m+1)` matrix is bisymmetric exactly when it can be written in
//! the Cantoni–Butler block form from `(A, C, x, p)` with `A` symmetric and
//! `J Cᵀ J = C`. Its spectrum then splits into the eigenvalues of the small
//! block `A − JC` and those of a bordered `(m+1)×(m+1)` block built from
//! `p`, `x` and `A + JC`. The constructors use this split to place target
//! eigenvalues: two go into the small block, three into the bordered one.
//!
//! Here `m` is fixed at 2 (5×5 matrices). The convention for `x` is chosen so
//! that [`split`] returns the bordered block with `x` itself on its border;
//! the assembled 5×5 then carries `x/√2` on its middle row and column.

use thiserror::Error;

use crate::mat::{Mat2, Mat3, Mat5};

/// Block-data validation tolerance.
const PARTS_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PartsError {
    #[error("block A is not symmetric")]
    AsymmetricA,
    #[error("block C does not satisfy J C^T J = C")]
    InvalidC,
    #[error("block data contains non-finite entries")]
    NonFinite,
}

/// Validated block data `(A, C, x, p)` for a 5×5 bisymmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CbParts {
    a: Mat2,
    c: Mat2,
    x: [f64; 2],
    p: f64,
}

impl CbParts {
    /// Requires `A = Aᵀ` and `J Cᵀ J = C` (both within `1e-12`).
    pub fn new(a: Mat2, c: Mat2, x: [f64; 2], p: f64) -> Result<Self, PartsError> {
        if !a.is_finite() || !c.is_finite() || !x.iter().all(|v| v.is_finite()) || !p.is_finite() {
            return Err(PartsError::NonFinite);
        }
        if !a.is_symmetric(PARTS_TOL) {
            return Err(PartsError::AsymmetricA);
        }
        let j = Mat2::reverse_identity();
        if (j * c.transpose() * j).max_abs_diff(&c) > PARTS_TOL {
            return Err(PartsError::InvalidC);
        }
        Ok(CbParts { a, c, x, p })
    }

    /// Builds parts from the block sum `S = A + JC` and difference
    /// `D = A − JC`, both symmetric: `A = (S+D)/2` and `C = J(S−D)/2`.
    /// This is the natural entry point when two target eigenvalues are
    /// prescribed for `D` directly.
    pub fn from_sum_diff(sum: Mat2, diff: Mat2, x: [f64; 2], p: f64) -> Result<Self, PartsError> {
        let a = (sum + diff).scale(0.5);
        let jc = (sum - diff).scale(0.5);
        let c = Mat2::reverse_identity() * jc;
        Self::new(a, c, x, p)
    }

    pub fn a(&self) -> Mat2 {
        self.a
    }

    pub fn c(&self) -> Mat2 {
        self.c
    }

    pub fn x(&self) -> [f64; 2] {
        self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// The two blocks carrying the five eigenvalues of the assembled matrix:
/// `small` holds two of them, `big` the other three.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CbSplit {
    pub small: Mat2,
    pub big: Mat3,
}

/// Assembles the 5×5 bisymmetric matrix from block data.
///
/// Layout: `A` top-left, `JCJ` top-right, `C` bottom-left, `JAJ`
/// bottom-right, with the middle row and column carrying `x/√2` (mirrored
/// through `J`) around the center entry `p`.
pub fn assemble(parts: &CbParts) -> Mat5 {
    let j = Mat2::reverse_identity();
    let a = parts.a;
    let c = parts.c;
    let jcj = j * c * j;
    let jaj = j * a * j;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let bx = [parts.x[0] * inv_sqrt2, parts.x[1] * inv_sqrt2];

    let mut q = Mat5::zero();
    for i in 0..2 {
        for k in 0..2 {
            q[(i, k)] = a[(i, k)];
            q[(i, k + 3)] = jcj[(i, k)];
            q[(i + 3, k)] = c[(i, k)];
            q[(i + 3, k + 3)] = jaj[(i, k)];
        }
        // border x/√2; the lower half is reflected by J
        q[(i, 2)] = bx[i];
        q[(2, i)] = bx[i];
        q[(i + 3, 2)] = bx[1 - i];
        q[(2, i + 3)] = bx[1 - i];
    }
    q[(2, 2)] = parts.p;
    q
}

/// The eigenvalue-carrying blocks: `small = A − JC` and
/// `big = [[p, xᵀ], [x, A + JC]]`.
///
/// The sorted eigenvalues of [`assemble`]`(parts)` equal the merged sorted
/// eigenvalues of `small` and `big`; this identity is the module's core
/// correctness property and is enforced by the test suite.
pub fn split(parts: &CbParts) -> CbSplit {
    let j = Mat2::reverse_identity();
    let jc = j * parts.c;
    let small = parts.a - jc;
    let plus = parts.a + jc;
    let [x1, x2] = parts.x;
    let big = Mat3::from_rows([
        [parts.p, x1, x2],
        [x1, plus[(0, 0)], plus[(0, 1)]],
        [x2, plus[(1, 0)], plus[(1, 1)]],
    ]);
    CbSplit { small, big }
}
