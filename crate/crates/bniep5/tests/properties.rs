//! Cross-module property tests: eigensolver invariants, the block split
//! identity, solver contracts, and decision-level properties.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bniep5::block::{assemble, split, CbParts};
use bniep5::intersect::{solve, IntersectionProblem};
use bniep5::{classify, construct, decide, CaseTag, Mat2, Mat5, Spectrum, Verdict};

fn assert_sorted_close(got: &[f64], expect: &[f64], tol: f64, what: &str) {
    for (g, e) in got.iter().zip(expect.iter()) {
        assert!((g - e).abs() <= tol, "{what}: {got:?} vs {expect:?}");
    }
}

fn sym5(entries: &[f64]) -> Mat5 {
    let mut m = Mat5::zero();
    let mut k = 0;
    for i in 0..5 {
        for j in i..5 {
            m[(i, j)] = entries[k];
            m[(j, i)] = entries[k];
            k += 1;
        }
    }
    m
}

/// Unit trace-zero sampler: `λ1 = 1`, middle entries uniform order
/// statistics on [-1, 1], `λ5` forced by the trace constraint and accepted
/// when it lands in `[-1, λ4]`.
fn random_trace_zero_unit(rng: &mut ChaCha8Rng) -> Spectrum {
    loop {
        let mut mid = [0.0f64; 3];
        for v in mid.iter_mut() {
            *v = rng.random_range(-1.0..1.0);
        }
        mid.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let [l2, l3, l4] = mid;
        let l5 = -(1.0 + l2 + l3 + l4);
        if (-1.0..=l4).contains(&l5) {
            return Spectrum::new([1.0, l2, l3, l4, l5]).unwrap();
        }
    }
}

proptest! {
    #[test]
    fn spectrum_sorting_idempotent(raw in prop::collection::vec(-1e6..1e6f64, 5)) {
        let s = Spectrum::from_slice(&raw).unwrap();
        let again = Spectrum::new(s.values()).unwrap();
        prop_assert_eq!(s, again);
    }

    #[test]
    fn eigenvalue_sums_match_traces(entries in prop::collection::vec(-2.0..2.0f64, 15)) {
        let m = sym5(&entries);
        let vals = m.sym_eigenvalues().unwrap();
        prop_assert!((vals.iter().sum::<f64>() - m.trace()).abs() <= 1e-10);
        let cube_trace = (m * m * m).trace();
        prop_assert!((vals.iter().map(|v| v * v * v).sum::<f64>() - cube_trace).abs() <= 1e-9);
    }

    #[test]
    fn eigenvalues_invariant_under_permutation_similarity(
        entries in prop::collection::vec(-2.0..2.0f64, 15),
        seed in any::<u64>(),
    ) {
        let m = sym5(&entries);
        let mut perm = [0usize, 1, 2, 3, 4];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..5).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let mut permuted = Mat5::zero();
        for i in 0..5 {
            for j in 0..5 {
                permuted[(i, j)] = m[(perm[i], perm[j])];
            }
        }
        let a = m.sym_eigenvalues().unwrap();
        let b = permuted.sym_eigenvalues().unwrap();
        assert_sorted_close(&a, &b, 1e-10, "permutation similarity");
    }

    #[test]
    fn split_identity_on_random_parts(
        a_entries in prop::collection::vec(-2.0..2.0f64, 3),
        c_entries in prop::collection::vec(-2.0..2.0f64, 3),
        x in prop::collection::vec(-2.0..2.0f64, 2),
        p in -2.0..2.0f64,
    ) {
        let a = Mat2::from_rows([[a_entries[0], a_entries[1]], [a_entries[1], a_entries[2]]]);
        // J C^T J = C needs equal diagonal entries.
        let c = Mat2::from_rows([[c_entries[0], c_entries[1]], [c_entries[2], c_entries[0]]]);
        let parts = CbParts::new(a, c, [x[0], x[1]], p).unwrap();
        let q = assemble(&parts);
        prop_assert!(q.is_bisymmetric(1e-12));
        // Persymmetry follows from the other two.
        prop_assert!((Mat5::reverse_identity() * q.transpose() * Mat5::reverse_identity())
            .max_abs_diff(&q) <= 2e-12);

        let blocks = split(&parts);
        let mut merged: Vec<f64> = blocks
            .small
            .sym_eigenvalues()
            .unwrap()
            .into_iter()
            .chain(blocks.big.sym_eigenvalues().unwrap())
            .collect();
        merged.sort_by(|u, v| v.partial_cmp(u).unwrap());
        let direct = q.sym_eigenvalues().unwrap();
        assert_sorted_close(&direct, &merged, 1e-9, "split identity");
    }

    #[test]
    fn nonnegative_parts_assemble_nonnegative(
        a_entries in prop::collection::vec(0.0..2.0f64, 3),
        c_entries in prop::collection::vec(0.0..2.0f64, 3),
        x in prop::collection::vec(0.0..2.0f64, 2),
        p in 0.0..2.0f64,
    ) {
        let a = Mat2::from_rows([[a_entries[0], a_entries[1]], [a_entries[1], a_entries[2]]]);
        let c = Mat2::from_rows([[c_entries[0], c_entries[1]], [c_entries[2], c_entries[0]]]);
        let parts = CbParts::new(a, c, [x[0], x[1]], p).unwrap();
        prop_assert!(assemble(&parts).is_nonnegative(0.0));
    }
}

#[test]
fn eigenvalues_invariant_under_rotation_similarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let entries: Vec<f64> = (0..15).map(|_| rng.random_range(-2.0..2.0)).collect();
        let m = sym5(&entries);
        // Orthogonal Q as a product of random plane rotations.
        let mut q = Mat5::identity();
        for _ in 0..10 {
            let i = rng.random_range(0..5usize);
            let mut j = rng.random_range(0..5usize);
            while j == i {
                j = rng.random_range(0..5usize);
            }
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let mut rot = Mat5::identity();
            rot[(i, i)] = angle.cos();
            rot[(j, j)] = angle.cos();
            rot[(i, j)] = -angle.sin();
            rot[(j, i)] = angle.sin();
            q = q * rot;
        }
        let similar = q.transpose() * m * q;
        // Rounding can leave the product a hair off symmetric; fold it back.
        let similar = (similar + similar.transpose()).scale(0.5);
        let a = m.sym_eigenvalues().unwrap();
        let b = similar.sym_eigenvalues().unwrap();
        assert_sorted_close(&a, &b, 1e-10, "rotation similarity");
    }
}

#[test]
fn verdict_is_scale_invariant_at_zero_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..500 {
        let s = random_trace_zero_unit(&mut rng);
        let verdict = decide(&s).verdict;
        for c in [0.25, 2.0, 7.5] {
            assert_eq!(
                decide(&s.scaled(c)).verdict,
                verdict,
                "scale {c} changed the verdict for {:?}",
                s.values()
            );
        }
    }
}

#[test]
fn solver_contracts_on_certified_problems() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..300 {
        let beta = rng.random_range(0.05..2.0);
        let gamma = rng.random_range(0.0..2.0);
        let r_sq = rng.random_range(0.1..3.0);
        // Certified by construction: t in (0, beta * r_sq].
        let t = rng.random_range(0.0..1.0f64).max(1e-6) * beta * r_sq;
        let p = IntersectionProblem {
            r_sq,
            beta,
            gamma,
            t,
        };
        let sol = solve(&p).expect("certificate holds");
        assert!(sol.a >= 0.0 && sol.b >= 0.0);
        assert!(sol.circle_residual.abs() <= 1e-10 * (1.0 + r_sq));
        assert!(sol.hyperbola_residual.abs() <= 1e-10 * (1.0 + t));

        // Bracket property: h(0) < 0 <= h(pi/2) + 1e-12.
        let h = |theta: f64| {
            let (sin, cos) = theta.sin_cos();
            beta * r_sq * sin * sin - 2.0 * r_sq * sin * cos * gamma - t
        };
        assert!(h(0.0) < 0.0);
        assert!(h(std::f64::consts::FRAC_PI_2) >= -1e-12);

        // The positive hyperbola branch b(a) = (a*gamma + sqrt(a²γ² + βt))/β
        // is nondecreasing and nonnegative on [0, r].
        let r = r_sq.sqrt();
        let f = |a: f64| (a * gamma + (a * a * gamma * gamma + beta * t).sqrt()) / beta;
        let mut prev = f(0.0);
        assert!(prev >= 0.0);
        for k in 1..=1000 {
            let cur = f(r * k as f64 / 1000.0);
            assert!(cur >= prev - 1e-10, "b(a) must not decrease");
            prev = cur;
        }
    }
}

#[test]
fn dispatch_matches_guards_on_feasible_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let mut feasible = 0usize;
    for _ in 0..2000 {
        let s = random_trace_zero_unit(&mut rng);
        let report = decide(&s);
        // Classification exclusivity: a feasible zero-trace verdict always
        // carries a constructive tag.
        assert_ne!(report.verdict, Verdict::Unknown, "total at zero trace");
        if report.verdict != Verdict::Feasible {
            continue;
        }
        feasible += 1;
        assert_ne!(report.case, CaseTag::None);
        assert_eq!(report.case, classify(&s));
        let r = construct(&s)
            .unwrap_or_else(|e| panic!("guard/dispatch mismatch for {:?}: {e}", s.values()));
        assert!((r.matrix.trace() - s.trace()).abs() <= 1e-10);
        assert!(r.min_entry >= -1e-12);
    }
    assert!(feasible > 200, "sampler should hit the feasible region");
}
