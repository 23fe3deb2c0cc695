//! Explicit realizing matrices and the construction dispatcher.
//!
//! Four closed-form templates cover the sign patterns where direct entry
//! formulas exist:
//!
//! * `L1` — block diagonal with two corner pairs and a center entry; needs
//!   `λ1+λ5 ≥ 0`, `λ2+λ4 ≥ 0`, `λ3 ≥ 0`.
//! * `L2` — fully bordered matrix with computed entries `a`, `b`, `c`; the
//!   workhorse when only `λ1` is positive, and for two mixed patterns.
//! * `L3` — for `λ2 ≥ 0 > λ3` with `λ2+λ5 ≥ 0` and `λ1+λ3+λ4 ≥ 0`.
//! * `L4` — for `λ3 ≥ 0 > λ4` with `λ1+λ2+λ4+λ5 ≥ 0`, `λ2+λ5 < 0`,
//!   `λ3+λ4 ≥ 0`.
//!
//! The remaining feasible region (`λ3 > 0 > λ4` with `λ1+λ2+λ4+λ5 < 0`) is
//! handled by the bordered constructions: two eigenvalues are placed in the
//! small block of the bisymmetric block form and the other three in the
//! bordered block, whose free entries come from the circle–hyperbola system.
//!
//! [`construct`] routes a feasible spectrum to its case, clamps cosmetic
//! negative zeros, and verifies structure, nonnegativity and the achieved
//! spectrum with the plane-rotation eigensolver before returning.

use thiserror::Error;

use crate::block::{assemble, CbParts};
use crate::intersect::{solve, IntersectionProblem, SolveError};
use crate::mat::{EigenError, Mat2, Mat5};
use crate::spectrum::{
    bordered_pos_condition, bordered_solvability, decide, ge0, lt0, CaseTag, Spectrum,
    SpectrumError, Verdict, EPS_SIGN,
};

/// Entries in `(-CLAMP_TOL, 0)` are treated as cosmetic negative zeros.
pub const CLAMP_TOL: f64 = 1e-12;

/// Structural tolerance for the bisymmetry check of constructed matrices.
pub const BISYM_TOL: f64 = 1e-10;

/// Relative eigenvalue tolerance of the verification step: constructed
/// spectra must match targets within `1e-7 * (1 + λ1)`. Looser than the
/// arithmetic tolerances to absorb eigensolver convergence error on top of
/// constructor rounding.
pub const REL_EIG_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("spectrum is not feasible (verdict: {verdict})")]
    NotFeasible { verdict: Verdict },
    #[error("construction guard violated: {what}")]
    Guard { what: &'static str },
    #[error("denominator too close to zero: {what}")]
    DegenerateDenominator { what: &'static str },
    #[error("positive-trace intersection condition fails; no construction attempted")]
    ConditionFails,
    #[error(transparent)]
    Hypothesis(#[from] SpectrumError),
    #[error(transparent)]
    NoBracket(#[from] SolveError),
    #[error("verification failed: {what}")]
    Verification { what: String },
}

impl From<EigenError> for ConstructError {
    fn from(e: EigenError) -> Self {
        ConstructError::Verification {
            what: format!("eigensolver did not converge: {e}"),
        }
    }
}

fn guard(ok: bool, what: &'static str) -> Result<(), ConstructError> {
    if ok {
        Ok(())
    } else {
        Err(ConstructError::Guard { what })
    }
}

/// Square root with sign-tolerance: radicands below `-EPS_SIGN` are guard
/// violations, tiny negatives round to zero.
fn sqrt_guarded(radicand: f64, what: &'static str) -> Result<f64, ConstructError> {
    guard(ge0(radicand), what)?;
    Ok(radicand.max(0.0).sqrt())
}

/// A constructed matrix together with its verification evidence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstructionResult {
    /// The realizing matrix, after the negative-zero clamp.
    pub matrix: Mat5,
    pub case: CaseTag,
    /// Eigenvalues of `matrix` from the plane-rotation solver, descending.
    pub achieved_spectrum: [f64; 5],
    /// `max |achieved - target|` over the sorted spectra.
    pub max_eig_error: f64,
    /// Smallest entry of the raw constructor output, before clamping.
    pub min_entry: f64,
}

/// Corner pairs `(λ1, λ5)` and `(λ2, λ4)` around center `λ3`.
pub fn build_l1(s: &Spectrum) -> Result<Mat5, ConstructError> {
    let [l1, l2, l3, l4, l5] = s.values();
    guard(ge0(l1 + l5), "l1+l5 >= 0")?;
    guard(ge0(l2 + l4), "l2+l4 >= 0")?;
    guard(ge0(l3), "l3 >= 0")?;
    let cs = (l1 + l5) / 2.0;
    let cd = (l1 - l5) / 2.0;
    let ms = (l2 + l4) / 2.0;
    let md = (l2 - l4) / 2.0;
    Ok(Mat5::from_rows([
        [cs, 0.0, 0.0, 0.0, cd],
        [0.0, ms, 0.0, md, 0.0],
        [0.0, 0.0, l3, 0.0, 0.0],
        [0.0, md, 0.0, ms, 0.0],
        [cd, 0.0, 0.0, 0.0, cs],
    ]))
}

/// Bordered template with corner `−λ5`, inner `−λ4`, center `Σλᵢ` and
/// computed entries
/// `a = ½·√((λ1+λ5)(λ2+λ5)(λ3+λ4)/(λ1+λ2−λ3+λ5))`,
/// `b = √(−(λ1+λ5)(λ2+λ5)(λ1+λ2+λ4+λ5)/(2(λ1+λ2−λ3+λ5)))`,
/// `c = √(−(λ3+λ4)(λ1+λ2+λ4+λ5)/2)`.
pub fn build_l2(s: &Spectrum) -> Result<Mat5, ConstructError> {
    let [l1, l2, l3, l4, l5] = s.values();
    let trace = s.trace();
    guard(ge0(trace), "trace >= 0")?;
    let den = l1 + l2 - l3 + l5;
    if den.abs() <= EPS_SIGN {
        return Err(ConstructError::DegenerateDenominator {
            what: "l1+l2-l3+l5",
        });
    }
    let sum4 = l1 + l2 + l4 + l5;
    let a = 0.5 * sqrt_guarded((l1 + l5) * (l2 + l5) * (l3 + l4) / den, "radicand of a")?;
    let b = sqrt_guarded(-(l1 + l5) * (l2 + l5) * sum4 / (2.0 * den), "radicand of b")?;
    let c = sqrt_guarded(-(l3 + l4) * sum4 / 2.0, "radicand of c")?;
    Ok(Mat5::from_rows([
        [0.0, a, b, a, -l5],
        [a, 0.0, c, -l4, a],
        [b, c, trace, c, b],
        [a, -l4, c, 0.0, a],
        [-l5, a, b, a, 0.0],
    ]))
}

/// Corner pair `(λ2, λ5)`, inner `−λ4`, center `λ1+λ3+λ4`, border
/// `d = √(−(λ3+λ4)(λ1+λ4)/2)`.
pub fn build_l3(s: &Spectrum) -> Result<Mat5, ConstructError> {
    let [l1, l2, l3, l4, l5] = s.values();
    guard(ge0(l2), "l2 >= 0")?;
    guard(lt0(l3), "l3 < 0")?;
    guard(ge0(l2 + l5), "l2+l5 >= 0")?;
    let center = l1 + l3 + l4;
    guard(ge0(center), "l1+l3+l4 >= 0")?;
    let d = sqrt_guarded(-(l3 + l4) * (l1 + l4) / 2.0, "radicand of d")?;
    let cs = (l2 + l5) / 2.0;
    let cd = (l2 - l5) / 2.0;
    Ok(Mat5::from_rows([
        [cs, 0.0, 0.0, 0.0, cd],
        [0.0, 0.0, d, -l4, 0.0],
        [0.0, d, center, d, 0.0],
        [0.0, -l4, d, 0.0, 0.0],
        [cd, 0.0, 0.0, 0.0, cs],
    ]))
}

/// Corner pair `(λ3, λ4)`, inner `−λ5`, center `λ1+λ2+λ5`, border
/// `g = √(−(λ2+λ5)(λ1+λ5)/2)`.
pub fn build_l4(s: &Spectrum) -> Result<Mat5, ConstructError> {
    let [l1, l2, l3, l4, l5] = s.values();
    guard(ge0(l3), "l3 >= 0")?;
    guard(lt0(l4), "l4 < 0")?;
    guard(ge0(l1 + l2 + l4 + l5), "l1+l2+l4+l5 >= 0")?;
    guard(lt0(l2 + l5), "l2+l5 < 0")?;
    guard(ge0(l3 + l4), "l3+l4 >= 0")?;
    let g = sqrt_guarded(-(l2 + l5) * (l1 + l5) / 2.0, "radicand of g")?;
    let cs = (l3 + l4) / 2.0;
    let cd = (l3 - l4) / 2.0;
    Ok(Mat5::from_rows([
        [cs, 0.0, 0.0, 0.0, cd],
        [0.0, 0.0, g, -l5, 0.0],
        [0.0, g, l1 + l2 + l5, g, 0.0],
        [0.0, -l5, g, 0.0, 0.0],
        [cd, 0.0, 0.0, 0.0, cs],
    ]))
}

/// Zero-trace bordered construction for a unit spectrum.
///
/// Places `λ2, λ4` in the small block and `1, λ3, λ5` in the bordered block
/// whose corner entries `(a₀, b₀)` solve the circle–hyperbola system with
/// `β = −(λ2+λ4)`, `γ = √(−λ2λ4)`, `t = −λ3λ5`. Solvability is guaranteed by
/// [`bordered_solvability`]; a numerical breach fails loudly rather than
/// being patched.
pub fn build_bordered(s: &Spectrum) -> Result<Mat5, ConstructError> {
    let (r_sq, _, ok) = bordered_solvability(s)?;
    guard(ok, "solvability bounds (r^2 >= 0 and r^2 >= q)")?;
    let [_, l2, l3, l4, l5] = s.values();
    let beta = -(l2 + l4);
    let gamma = (-l2 * l4).max(0.0).sqrt();
    let t = -l3 * l5;
    bordered_from_blocks(beta, gamma, l2 + l4, r_sq, t)
}

/// Positive-trace bordered construction for a unit spectrum. Identical shape
/// with `β = 1+λ3+λ5`; the trace surplus lands on the corner diagonal.
pub fn build_bordered_pos(s: &Spectrum) -> Result<Mat5, ConstructError> {
    match bordered_pos_condition(s)? {
        true => {}
        false => return Err(ConstructError::ConditionFails),
    }
    let [_, l2, l3, l4, l5] = s.values();
    let beta = 1.0 + l3 + l5;
    let gamma = (-l2 * l4).max(0.0).sqrt();
    let t = -l3 * l5;
    let r_sq = l2 * l4 - l3 * l5 - l3 - l5;
    bordered_from_blocks(beta, gamma, l2 + l4, r_sq, t)
}

/// Shared tail of the bordered constructions: solve for the border pair and
/// assemble from the block sum `[[β, γ], [γ, 0]]` and difference
/// `[[λ2+λ4, γ], [γ, 0]]`.
fn bordered_from_blocks(
    beta: f64,
    gamma: f64,
    l2_plus_l4: f64,
    r_sq: f64,
    t: f64,
) -> Result<Mat5, ConstructError> {
    let sol = solve(&IntersectionProblem {
        r_sq: r_sq.max(0.0),
        beta,
        gamma,
        t,
    })?;
    let sum = Mat2::from_rows([[beta, gamma], [gamma, 0.0]]);
    let diff = Mat2::from_rows([[l2_plus_l4, gamma], [gamma, 0.0]]);
    let parts = CbParts::from_sum_diff(sum, diff, [sol.a, sol.b], 0.0)
        .expect("blocks are symmetric by construction");
    Ok(assemble(&parts))
}

/// Builds and verifies a realizing matrix for a feasible spectrum.
///
/// Routing: the all-zero spectrum maps to the zero matrix; `L1`–`L4` build on
/// the raw values; the bordered cases normalize by `λ1`, build the unit
/// matrix and scale back (every builder entry is degree-1 homogeneous in the
/// eigenvalues, so the rescaling is exact). The result is clamped and then
/// checked for bisymmetry, nonnegativity and spectrum accuracy; a failed
/// check is an internal error, never an expected outcome.
pub fn construct(s: &Spectrum) -> Result<ConstructionResult, ConstructError> {
    let report = decide(s);
    if report.verdict != Verdict::Feasible {
        return Err(ConstructError::NotFeasible {
            verdict: report.verdict,
        });
    }
    let raw = match report.case {
        CaseTag::AllZero => Mat5::zero(),
        CaseTag::L1 => build_l1(s)?,
        CaseTag::L2 => build_l2(s)?,
        CaseTag::L3 => build_l3(s)?,
        CaseTag::L4 => build_l4(s)?,
        CaseTag::Bordered | CaseTag::BorderedPos => {
            let (unit, scale) = s
                .normalized()
                .ok_or(ConstructError::Guard { what: "l1 > 0" })?;
            let unit_matrix = if report.case == CaseTag::Bordered {
                build_bordered(&unit)?
            } else {
                build_bordered_pos(&unit)?
            };
            unit_matrix.scale(scale)
        }
        CaseTag::None => unreachable!("feasible verdict always carries a case"),
    };
    let min_entry = raw.min_entry();
    let matrix = raw.clamp_negative_zeros(CLAMP_TOL);
    verify_result(s, matrix, report.case, min_entry)
}

fn verify_result(
    s: &Spectrum,
    matrix: Mat5,
    case: CaseTag,
    min_entry: f64,
) -> Result<ConstructionResult, ConstructError> {
    if !matrix.is_bisymmetric(BISYM_TOL) {
        return Err(ConstructError::Verification {
            what: format!("output is not bisymmetric within {BISYM_TOL:e}"),
        });
    }
    if !matrix.is_nonnegative(0.0) {
        return Err(ConstructError::Verification {
            what: format!("negative entry {} after clamp", matrix.min_entry()),
        });
    }
    let achieved = matrix.sym_eigenvalues()?;
    let target = s.values();
    let max_eig_error = achieved
        .iter()
        .zip(target.iter())
        .map(|(a, t)| (a - t).abs())
        .fold(0.0f64, f64::max);
    let limit = REL_EIG_TOL * (1.0 + target[0]);
    if max_eig_error > limit {
        return Err(ConstructError::Verification {
            what: format!("eigenvalue error {max_eig_error:e} exceeds {limit:e}"),
        });
    }
    Ok(ConstructionResult {
        matrix,
        case,
        achieved_spectrum: achieved,
        max_eig_error,
        min_entry,
    })
}
