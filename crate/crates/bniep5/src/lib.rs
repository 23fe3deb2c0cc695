//! Bisymmetric nonnegative inverse eigenvalue problem for 5×5 matrices.
//!
//! Given five real numbers `λ1 ≥ λ2 ≥ λ3 ≥ λ4 ≥ λ5`, this crate decides
//! whether they are the spectrum of a 5×5 bisymmetric matrix with
//! nonnegative entries, and constructs an explicit realizing matrix whenever
//! the decision is positive. At zero trace the decision is complete:
//! realizable exactly when `λ2 + λ5 ≤ 0` and `Σλᵢ³ ≥ 0`. At positive trace
//! the verdict may be `Unknown` in one region that only a sufficient
//! condition covers.
//!
//! Every constructed matrix is verified before being returned: bisymmetry
//! and nonnegativity are checked entrywise, and an internal plane-rotation
//! eigensolver confirms the spectrum.
//!
//! ```
//! use bniep5::{construct, decide, Spectrum, Verdict};
//!
//! let s = Spectrum::new([1.0, 0.3, 0.2, -0.7, -0.8])?;
//! assert_eq!(decide(&s).verdict, Verdict::Feasible);
//!
//! let witness = construct(&s)?;
//! assert!(witness.matrix.is_bisymmetric(1e-10));
//! assert!(witness.matrix.is_nonnegative(0.0));
//! assert!(witness.max_eig_error < 1e-8);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The mdbook guide under `book/` walks through the underlying matrix
//! structure, the feasibility conditions and the constructions; its code
//! snippets compile and run as part of this crate's doctests.

pub mod block;
pub mod construct;
pub mod intersect;
pub mod mat;
pub mod spectrum;

pub use construct::{
    build_bordered, build_bordered_pos, build_l1, build_l2, build_l3, build_l4, construct,
    ConstructError, ConstructionResult, BISYM_TOL, CLAMP_TOL, REL_EIG_TOL,
};
pub use mat::{EigenError, Mat, Mat2, Mat3, Mat5};
pub use spectrum::{
    bordered_pos_condition, bordered_solvability, classify, decide, necessary_conditions, CaseTag,
    Condition, FeasibilityReport, Spectrum, SpectrumError, Verdict, EPS_SIGN,
};

// Chapters of the guide run as doctests so the book and the crate cannot
// drift apart.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(bisymmetric, "../../../book/src/bisymmetric.md");
    chapter!(feasibility, "../../../book/src/feasibility.md");
    chapter!(constructions, "../../../book/src/constructions.md");
    chapter!(intersection, "../../../book/src/intersection.md");
    chapter!(cli, "../../../book/src/cli.md");
}
