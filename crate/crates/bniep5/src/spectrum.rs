//! Eigenvalue lists and the feasibility decision.
//!
//! A [`Spectrum`] holds five real targets sorted non-increasing. This module
//! evaluates every scalar condition the solver needs: the necessary
//! conditions (Perron bound, nonnegative trace, `λ2+λ5 ≤ trace`, nonnegative
//! cube sum), the classification into constructor cases, the solvability
//! bounds behind the bordered constructions, and the overall verdict.
//!
//! At zero trace the verdict is complete: the five values are realizable by a
//! nonnegative bisymmetric matrix exactly when `λ2+λ5 ≤ 0` and `Σλᵢ³ ≥ 0`.
//! At positive trace the verdict may be `Unknown`: the region where
//! `λ3 > 0 > λ4` and `λ1+λ2+λ4+λ5 < 0` is only covered by a sufficient
//! condition ([`bordered_pos_condition`]), not a characterization.

use std::fmt;

use thiserror::Error;

use crate::mat::sort_descending;

/// Tolerance for every sign and boundary comparison. The feasibility
/// conditions are all closed (`≥`, `≤`), so comparisons lean inclusive:
/// floating noise must not flip a boundary case to infeasible.
pub const EPS_SIGN: f64 = 1e-12;

#[inline]
pub(crate) fn ge0(x: f64) -> bool {
    x >= -EPS_SIGN
}

#[inline]
pub(crate) fn gt0(x: f64) -> bool {
    x > EPS_SIGN
}

#[inline]
pub(crate) fn lt0(x: f64) -> bool {
    !ge0(x)
}

#[inline]
pub(crate) fn le0(x: f64) -> bool {
    !gt0(x)
}

#[inline]
pub(crate) fn near0(x: f64) -> bool {
    x.abs() <= EPS_SIGN
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum SpectrumError {
    #[error("spectrum entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("expected 5 eigenvalues, got {got}")]
    WrongArity { got: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(&'static str),
    #[error("degenerate denominator in condition evaluation")]
    DegenerateDenominator,
}

fn hypothesis(ok: bool, what: &'static str) -> Result<(), SpectrumError> {
    if ok {
        Ok(())
    } else {
        Err(SpectrumError::HypothesisViolation(what))
    }
}

/// Five real eigenvalue targets, stored sorted non-increasing.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Spectrum {
    values: [f64; 5],
    trace: f64,
}

impl Spectrum {
    /// Sorts the entries descending and caches the trace. The original order
    /// is discarded.
    pub fn new(mut values: [f64; 5]) -> Result<Self, SpectrumError> {
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(SpectrumError::NonFinite { index, value });
            }
        }
        sort_descending(&mut values);
        let trace = values.iter().sum();
        Ok(Spectrum { values, trace })
    }

    pub fn from_slice(raw: &[f64]) -> Result<Self, SpectrumError> {
        let values: [f64; 5] = raw
            .try_into()
            .map_err(|_| SpectrumError::WrongArity { got: raw.len() })?;
        Self::new(values)
    }

    /// `[λ1, λ2, λ3, λ4, λ5]`, non-increasing.
    pub fn values(&self) -> [f64; 5] {
        self.values
    }

    /// `Σ λᵢ`.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// `Σ λᵢ³`.
    pub fn cube_sum(&self) -> f64 {
        self.values.iter().map(|v| v * v * v).sum()
    }

    /// Entrywise scaling; re-sorts when `c < 0`.
    pub fn scaled(&self, c: f64) -> Spectrum {
        debug_assert!(c.is_finite());
        Spectrum::new(self.values.map(|v| v * c)).expect("finite scaling of finite spectrum")
    }

    /// Divide through by `λ1` so the Perron root becomes 1. Returns the unit
    /// spectrum together with the scale factor, or `None` when `λ1` is too
    /// small to divide by.
    pub fn normalized(&self) -> Option<(Spectrum, f64)> {
        let l1 = self.values[0];
        if l1 <= EPS_SIGN {
            return None;
        }
        Some((self.scaled(1.0 / l1), l1))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Feasible,
    Infeasible,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Which construction applies to a feasible spectrum.
///
/// `L1`–`L4` are the four closed-form templates; `Bordered` is the zero-trace
/// circle–hyperbola construction and `BorderedPos` its positive-trace
/// variant. `None` means no construction in the library applies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseTag {
    AllZero,
    L1,
    L2,
    L3,
    L4,
    Bordered,
    BorderedPos,
    None,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::AllZero => "all_zero",
            CaseTag::L1 => "l1",
            CaseTag::L2 => "l2",
            CaseTag::L3 => "l3",
            CaseTag::L4 => "l4",
            CaseTag::Bordered => "bordered",
            CaseTag::BorderedPos => "bordered_pos",
            CaseTag::None => "none",
        })
    }
}

/// A necessary condition that can fail.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Condition {
    Perron,
    Trace,
    LoewyMcdonald,
    CubeSum,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Perron => "perron",
            Condition::Trace => "trace",
            Condition::LoewyMcdonald => "loewy_mcdonald",
            Condition::CubeSum => "cube_sum",
        })
    }
}

/// Outcome of the feasibility decision together with the evaluated
/// conditions.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    /// `λ1 ≥ |λ5|`.
    pub perron_ok: bool,
    /// `Σλᵢ ≥ 0`.
    pub trace_ok: bool,
    /// `λ2 + λ5 ≤ Σλᵢ`.
    pub loewy_mcdonald_ok: bool,
    pub cube_sum: f64,
    /// `Σλᵢ³ ≥ 0`. Necessary at every trace: the cube of a nonnegative
    /// matrix is nonnegative, so its trace cannot be negative.
    pub cube_sum_ok: bool,
    pub case: CaseTag,
    pub violated: Option<Condition>,
}

/// Evaluates the necessary conditions. The returned report is partial: when
/// nothing is violated the verdict is left at `Unknown` for [`decide`] to
/// refine via [`classify`].
pub fn necessary_conditions(s: &Spectrum) -> FeasibilityReport {
    let [l1, l2, _, _, l5] = s.values();
    let perron_ok = l1 - l5.abs() >= -EPS_SIGN;
    let trace_ok = ge0(s.trace());
    let loewy_mcdonald_ok = l2 + l5 <= s.trace() + EPS_SIGN;
    let cube_sum = s.cube_sum();
    let cube_sum_ok = ge0(cube_sum);
    let violated = if !perron_ok {
        Some(Condition::Perron)
    } else if !trace_ok {
        Some(Condition::Trace)
    } else if !loewy_mcdonald_ok {
        Some(Condition::LoewyMcdonald)
    } else if !cube_sum_ok {
        Some(Condition::CubeSum)
    } else {
        None
    };
    FeasibilityReport {
        verdict: if violated.is_some() {
            Verdict::Infeasible
        } else {
            Verdict::Unknown
        },
        perron_ok,
        trace_ok,
        loewy_mcdonald_ok,
        cube_sum,
        cube_sum_ok,
        case: CaseTag::None,
        violated,
    }
}

/// Picks the constructor case for a spectrum that passed
/// [`necessary_conditions`].
///
/// Overlapping sufficient conditions are resolved by a fixed priority:
/// `AllZero > L1 > L2 > L3 > L4 > Bordered > BorderedPos`. Within the sign
/// pattern `λ3 ≥ 0 > λ4` the sub-branches split on `λ2+λ5` and `λ3+λ4`;
/// within `λ2 ≥ 0 > λ3` the boundary `λ2+λ5 = 0` routes to `L3` (its center
/// entry `λ1+λ3+λ4 = Σλᵢ − (λ2+λ5)` is then nonnegative automatically at
/// zero trace).
pub fn classify(s: &Spectrum) -> CaseTag {
    let [l1, l2, l3, l4, l5] = s.values();
    if s.values().iter().all(|v| near0(*v)) {
        return CaseTag::AllZero;
    }
    let sum4 = l1 + l2 + l4 + l5;
    if ge0(l4) || (ge0(l3) && lt0(l4) && ge0(sum4) && ge0(l2 + l5)) {
        return CaseTag::L1;
    }
    if (le0(l2) && gt0(l1))
        || (ge0(l2) && lt0(l3) && lt0(l2 + l5) && ge0(l1 + l3 + l4))
        || (ge0(l3) && lt0(l4) && ge0(sum4) && lt0(l2 + l5) && lt0(l3 + l4))
    {
        return CaseTag::L2;
    }
    if ge0(l2) && lt0(l3) && ge0(l2 + l5) && ge0(l1 + l3 + l4) {
        return CaseTag::L3;
    }
    if ge0(l3) && lt0(l4) && ge0(sum4) && lt0(l2 + l5) && ge0(l3 + l4) {
        return CaseTag::L4;
    }
    if gt0(l3) && lt0(l4) && lt0(sum4) {
        if near0(s.trace()) && ge0(s.cube_sum()) {
            return CaseTag::Bordered;
        }
        if gt0(s.trace()) {
            if let Some((unit, _)) = s.normalized() {
                if bordered_pos_condition(&unit) == Ok(true) {
                    return CaseTag::BorderedPos;
                }
            }
        }
    }
    CaseTag::None
}

/// Solvability bounds for the zero-trace bordered construction.
///
/// For a unit spectrum (`λ1 = 1`) with `λ3 > 0 > λ4`, zero trace,
/// `Σλᵢ³ ≥ 0` and `λ1+λ2+λ4+λ5 < 0`, returns
/// `(r², q, ok)` where `r² = λ2λ4 − λ3λ5 − λ3 − λ5` is the circle radius
/// squared, `q = λ3λ5/(λ2+λ4)` is the hyperbola's squared b-intercept, and
/// `ok` records `r² ≥ 0 ∧ r² ≥ q` with `1e-12` slack.
///
/// Under the stated hypotheses both inequalities always hold; a false `ok`
/// signals a numerical-tolerance breach and is reported upstream rather than
/// silently patched.
pub fn bordered_solvability(s: &Spectrum) -> Result<(f64, f64, bool), SpectrumError> {
    let [l1, l2, l3, l4, l5] = s.values();
    check_unit_split_pattern(s)?;
    hypothesis(near0(s.trace()), "trace = 0")?;
    hypothesis(ge0(s.cube_sum()), "cube sum >= 0")?;
    hypothesis(lt0(l1 + l2 + l4 + l5), "l1+l2+l4+l5 < 0")?;
    let r_sq = l2 * l4 - l3 * l5 - l3 - l5;
    let intercept_sq = l3 * l5 / (l2 + l4);
    let ok = r_sq >= -EPS_SIGN && r_sq - intercept_sq >= -EPS_SIGN;
    Ok((r_sq, intercept_sq, ok))
}

/// Sufficient condition for the positive-trace bordered construction:
/// `λ2λ4 − λ3λ5 − λ3 − λ5 ≥ −λ3λ5 / (1+λ3+λ5)` on a unit spectrum with
/// positive trace and `λ1+λ2+λ4+λ5 < 0`.
pub fn bordered_pos_condition(s: &Spectrum) -> Result<bool, SpectrumError> {
    let [l1, l2, l3, l4, l5] = s.values();
    check_unit_split_pattern(s)?;
    hypothesis(gt0(s.trace()), "trace > 0")?;
    hypothesis(lt0(l1 + l2 + l4 + l5), "l1+l2+l4+l5 < 0")?;
    // Cannot occur under the hypotheses (l3 > 0 and l5 >= -1), but guarded.
    let den = 1.0 + l3 + l5;
    if den <= EPS_SIGN {
        return Err(SpectrumError::DegenerateDenominator);
    }
    let lhs = l2 * l4 - l3 * l5 - l3 - l5;
    Ok(lhs >= -l3 * l5 / den - EPS_SIGN)
}

/// Shared hypotheses of the bordered constructions: unit Perron root and the
/// sign pattern `1 ≥ λ2 ≥ λ3 > 0 > λ4 ≥ λ5 ≥ −1`.
fn check_unit_split_pattern(s: &Spectrum) -> Result<(), SpectrumError> {
    let [l1, _, l3, l4, l5] = s.values();
    hypothesis(near0(l1 - 1.0), "l1 = 1")?;
    hypothesis(gt0(l3), "l3 > 0")?;
    hypothesis(lt0(l4), "l4 < 0")?;
    hypothesis(l5 >= -1.0 - EPS_SIGN, "l5 >= -1")?;
    Ok(())
}

/// Full feasibility decision: necessary conditions first, then the case
/// classification.
///
/// At zero trace the answer is complete — `Feasible` exactly when
/// `λ2+λ5 ≤ 0` and `Σλᵢ³ ≥ 0` (the classification covers the whole region,
/// which the test suite checks against the closed formula independently).
/// At positive trace a `None` case with no violated condition yields
/// `Unknown`. Negative trace is reported as `Infeasible` with the trace
/// condition named.
pub fn decide(s: &Spectrum) -> FeasibilityReport {
    let mut report = necessary_conditions(s);
    if report.verdict == Verdict::Infeasible {
        return report;
    }
    let case = classify(s);
    report.case = case;
    report.verdict = if case == CaseTag::None {
        Verdict::Unknown
    } else {
        Verdict::Feasible
    };
    report
}
