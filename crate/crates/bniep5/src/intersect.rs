//! Circle–hyperbola intersection for the bordered constructions.
//!
//! The free border entries `(a, b)` of a bordered construction must satisfy
//!
//! ```text
//! a² + b² = r²                 (circle)
//! β·b² − 2ab·γ = t             (hyperbola, β > 0, γ ≥ 0, t > 0)
//! ```
//!
//! Parametrizing the quarter circle by `a = r·cos θ`, `b = r·sin θ` turns the
//! system into a single sign change of
//! `h(θ) = β r² sin²θ − 2 r² γ sinθ cosθ − t` on `[0, π/2]`:
//! `h(0) = −t < 0` and `h(π/2) = β r² − t`, which is nonnegative exactly when
//! the solvability certificate `β r² ≥ t` holds. Bisection on the first sign
//! change then yields the intersection point.

use thiserror::Error;

use std::f64::consts::FRAC_PI_2;

/// Accepted numerical slack on the certificate `β·r² ≥ t`.
const BRACKET_TOL: f64 = 1e-12;

/// Bisection exit width in `θ`.
const WIDTH_EXIT: f64 = 1e-15;

/// Bisection iteration cap; far more than the width exit ever needs.
const MAX_BISECTIONS: usize = 200;

/// Coarse subdivisions used to locate the first sign change.
const SCAN_STEPS: usize = 64;

/// Sample count of the brute-force oracle.
const ORACLE_SAMPLES: usize = 1_000_000;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum SolveError {
    /// `h(π/2) = β·r² − t` is negative beyond tolerance: the certificate
    /// fails, so no sign change is guaranteed. Signals caller-side condition
    /// drift; never patched over.
    #[error("no bracketing interval: beta*r_sq - t = {deficit} < 0")]
    NoBracket { deficit: f64 },
}

/// Coefficients of the intersection system.
///
/// Expected from the callers: `r_sq ≥ 0`, `gamma ≥ 0`, `t > 0`, `beta > 0`,
/// and the solvability certificate `beta * r_sq ≥ t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntersectionProblem {
    /// Circle radius squared.
    pub r_sq: f64,
    /// Hyperbola `b²` coefficient.
    pub beta: f64,
    /// Half the mixed-term coefficient: the hyperbola reads
    /// `beta·b² − 2ab·gamma = t`.
    pub gamma: f64,
    /// Hyperbola right-hand side.
    pub t: f64,
}

impl IntersectionProblem {
    fn h(&self, theta: f64) -> f64 {
        let (sin, cos) = theta.sin_cos();
        self.beta * self.r_sq * sin * sin - 2.0 * self.r_sq * sin * cos * self.gamma - self.t
    }

    fn certificate_deficit(&self) -> f64 {
        self.beta * self.r_sq - self.t
    }

    fn point(&self, theta: f64) -> IntersectionSolution {
        let r = self.r_sq.max(0.0).sqrt();
        let (sin, cos) = theta.sin_cos();
        let a = (r * cos).max(0.0);
        let b = (r * sin).max(0.0);
        IntersectionSolution {
            a,
            b,
            circle_residual: a * a + b * b - self.r_sq,
            hyperbola_residual: self.beta * b * b - 2.0 * a * b * self.gamma - self.t,
        }
    }
}

/// A nonnegative intersection point with its equation residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntersectionSolution {
    pub a: f64,
    pub b: f64,
    /// `a² + b² − r²`.
    pub circle_residual: f64,
    /// `β·b² − 2ab·γ − t`.
    pub hyperbola_residual: f64,
}

/// Solves the system by bisection on the quarter-circle parameter.
///
/// Returns the smallest-θ (largest-`a`) intersection point. When the
/// certificate holds only up to numerical slack the b-axis endpoint
/// `(0, r)` is the intersection and is returned directly.
pub fn solve(p: &IntersectionProblem) -> Result<IntersectionSolution, SolveError> {
    let deficit = p.certificate_deficit();
    if deficit < -BRACKET_TOL * (1.0 + p.t) {
        return Err(SolveError::NoBracket { deficit });
    }
    if p.h(FRAC_PI_2) < 0.0 {
        // Certificate holds within slack but the endpoint is still a hair
        // below zero; the sign change degenerates to the endpoint itself.
        return Ok(p.point(FRAC_PI_2));
    }
    let (mut lo, mut hi) = first_sign_change(p, SCAN_STEPS);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo < WIDTH_EXIT {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if p.h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(p.point(0.5 * (lo + hi)))
}

/// Brute-force oracle: scans `θ` over a million uniform samples of
/// `[0, π/2]`, refines every sign change by bisection, and returns the
/// solution with the smallest `θ`.
///
/// Exists to validate [`solve`] through an independent search path; tests
/// compare the two componentwise.
pub fn oracle_solve(p: &IntersectionProblem) -> Result<IntersectionSolution, SolveError> {
    let deficit = p.certificate_deficit();
    if deficit < -BRACKET_TOL * (1.0 + p.t) {
        return Err(SolveError::NoBracket { deficit });
    }
    if p.h(FRAC_PI_2) < 0.0 {
        return Ok(p.point(FRAC_PI_2));
    }
    let n = ORACLE_SAMPLES;
    let step = FRAC_PI_2 / n as f64;
    let mut prev = p.h(0.0);
    for i in 1..=n {
        let theta = i as f64 * step;
        let cur = p.h(theta);
        if prev < 0.0 && cur >= 0.0 {
            let (mut lo, mut hi) = ((i - 1) as f64 * step, theta);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if p.h(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(p.point(0.5 * (lo + hi)));
        }
        prev = cur;
    }
    // The endpoint is nonnegative, so the scan can only get here through
    // rounding at the last step; treat the endpoint as the intersection.
    Ok(p.point(FRAC_PI_2))
}

/// Locates the first coarse interval on which `h` changes sign.
fn first_sign_change(p: &IntersectionProblem, steps: usize) -> (f64, f64) {
    let step = FRAC_PI_2 / steps as f64;
    let mut prev_theta = 0.0;
    let mut prev = p.h(0.0);
    for i in 1..=steps {
        let theta = if i == steps {
            FRAC_PI_2
        } else {
            i as f64 * step
        };
        let cur = p.h(theta);
        if prev < 0.0 && cur >= 0.0 {
            return (prev_theta, theta);
        }
        prev_theta = theta;
        prev = cur;
    }
    (0.0, FRAC_PI_2)
}
