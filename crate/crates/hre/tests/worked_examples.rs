//! End-to-end checks on two fixed judgment matrices, cross-checked against
//! independent oracles: exhaustive triad enumeration for the inconsistency
//! index, a characteristic-polynomial root finder for the dominant
//! eigenvalue, Cramer's rule for the 3-unknown arithmetic system, and direct
//! per-row products for the geometric mean.

use hre::{
    build_arithmetic_system, build_geometric_system, error_function, ev_method, geometric_residual,
    gm_method, koczkodaj_index, linalg, optimality_report, solve_arithmetic, solve_geometric,
    validate, ArithmeticOutcome, HreProblem, PcMatrix, ReferenceAssignment, Warning,
};

/// 5 concepts, exact fractions, two known priorities (concepts 2 and 3).
fn entities_matrix() -> PcMatrix {
    PcMatrix::from_rows(vec![
        vec![1.0, 3.0 / 5.0, 4.0 / 7.0, 5.0 / 8.0, 5.0 / 9.0],
        vec![5.0 / 3.0, 1.0, 5.0 / 7.0, 5.0 / 2.0, 10.0 / 3.0],
        vec![7.0 / 4.0, 7.0 / 5.0, 1.0, 7.0 / 2.0, 4.0],
        vec![8.0 / 5.0, 2.0 / 5.0, 2.0 / 7.0, 1.0, 4.0 / 3.0],
        vec![9.0 / 5.0, 3.0 / 10.0, 1.0 / 4.0, 3.0 / 4.0, 1.0],
    ])
    .unwrap()
}

fn entities_problem() -> HreProblem {
    let reference = ReferenceAssignment::from_pairs(&[(2, 5.0), (3, 7.0)]).unwrap();
    HreProblem::new(entities_matrix(), reference).unwrap()
}

/// 8 concepts with three audience-sized reference values; the printed
/// three-digit ratios make the matrix non-reciprocal.
fn audience_matrix() -> PcMatrix {
    PcMatrix::from_rows(vec![
        vec![1.0, 0.8, 1.333, 0.7, 0.5, 0.6, 0.75, 0.667],
        vec![1.25, 1.0, 1.667, 0.875, 0.625, 0.75, 0.9, 0.833],
        vec![1.333, 0.6, 1.0, 0.933, 0.667, 0.8, 0.978, 0.889],
        vec![1.429, 1.143, 1.071, 1.0, 0.714, 0.857, 1.05, 0.952],
        vec![2.0, 1.6, 1.5, 1.4, 1.0, 1.2, 1.467, 1.333],
        vec![1.667, 1.333, 1.25, 1.167, 0.833, 1.0, 1.222, 1.111],
        vec![1.333, 1.111, 1.023, 0.952, 0.682, 0.818, 1.0, 0.909],
        vec![1.5, 1.2, 0.382, 1.05, 0.75, 0.9, 1.1, 1.0],
    ])
    .unwrap()
}

fn audience_problem() -> HreProblem {
    let reference = ReferenceAssignment::from_pairs(&[
        (6, 5_500_000.0),
        (7, 4_500_000.0),
        (8, 4_950_000.0),
    ])
    .unwrap();
    HreProblem::new(audience_matrix(), reference).unwrap()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() <= tol, "{g} vs {w} (tol {tol})");
    }
}

fn assert_close_rel(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() / w.abs() <= tol, "{g} vs {w} (rel tol {tol})");
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Worst triad deviation by plain enumeration of all ordered triads.
fn koczkodaj_brute_force(m: &PcMatrix) -> f64 {
    let n = m.n();
    let mut best = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let direct = m.get(i, j);
                let via = m.get(i, k) * m.get(k, j);
                let v = (1.0 - direct / via).abs().min((1.0 - via / direct).abs());
                best = best.max(v);
            }
        }
    }
    best
}

/// Largest real root of the characteristic polynomial, found from the
/// Faddeev-LeVerrier coefficients by scan and bisection. Independent of the
/// power-iteration path.
fn dominant_eigenvalue_oracle(m: &PcMatrix) -> f64 {
    let n = m.n();
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();

    let mat_mul = |x: &Vec<Vec<f64>>, y: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                out[r][c] = (0..n).map(|t| x[r][t] * y[t][c]).sum();
            }
        }
        out
    };
    let trace = |x: &Vec<Vec<f64>>| -> f64 { (0..n).map(|i| x[i][i]).sum() };

    // Coefficients of lambda^n + c[0] lambda^(n-1) + ... + c[n-1].
    let mut coeffs = Vec::with_capacity(n);
    let mut work = a.clone();
    for k in 1..=n {
        let c = -trace(&work) / k as f64;
        coeffs.push(c);
        if k == n {
            break;
        }
        let mut shifted = work.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += c;
        }
        work = mat_mul(&a, &shifted);
    }

    let poly = |lambda: f64| -> f64 {
        let mut acc = 1.0;
        for &c in &coeffs {
            acc = acc * lambda + c;
        }
        acc
    };

    // The dominant root lies below the max row sum; the polynomial is monic,
    // so it is positive above every real root.
    let max_row_sum = (0..n)
        .map(|i| (0..n).map(|j| a[i][j]).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let mut hi = max_row_sum + 1.0;
    let mut lo = hi;
    let step = (max_row_sum + 1.0) / 4096.0;
    while poly(lo) > 0.0 {
        lo -= step;
        assert!(lo > -1.0, "no real root found by scan");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if poly(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Cramer's rule for a 3x3 system.
fn cramer3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> [f64; 3] {
    let det = |m: &[[f64; 3]; 3]| -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    let mut out = [0.0; 3];
    for col in 0..3 {
        let mut replaced = *a;
        for row in 0..3 {
            replaced[row][col] = b[row];
        }
        out[col] = det(&replaced) / d;
    }
    out
}

// ---------------------------------------------------------------------------
// Five-concept fixture
// ---------------------------------------------------------------------------

#[test]
fn entities_consistency_report() {
    let m = entities_matrix();
    let report = validate(&m);
    assert!(report.reciprocal);
    assert!(!report.consistent);
    let index = report.koczkodaj.unwrap();
    let oracle = koczkodaj_brute_force(&m);
    assert_eq!(index, oracle, "reduced scan must match full enumeration");
    assert!((index - 0.757).abs() <= 1e-3, "index {index}");
    // Worst triple is {1, 3, 5}: 4/7 against (5/9)*(1/4).
    let direct: f64 = 4.0 / 7.0;
    let via = (5.0 / 9.0) * 0.25;
    let expected = (1.0_f64 - via / direct).abs();
    assert!((index - expected).abs() <= 1e-15);
}

#[test]
fn entities_geometric_log_system() {
    let system = build_geometric_system(&entities_problem(), 10.0).unwrap();
    assert_eq!(system.index_map, vec![1, 4, 5]);
    for r in 0..3 {
        for c in 0..3 {
            let want = if r == c { 4.0 } else { -1.0 };
            assert_eq!(system.a_hat.get(r, c), want);
        }
    }
    // Constant terms recomputed from the fraction entries.
    let want_b = [
        (3.0_f64 * 4.0 * (5.0 / 8.0) * (5.0 / 9.0)).log10(),
        ((8.0_f64 / 5.0) * 2.0 * 2.0 * (4.0 / 3.0)).log10(),
        ((9.0_f64 / 5.0) * 1.5 * 1.75 * 0.75).log10(),
    ];
    assert_close(system.b.data(), &want_b, 1e-12);
    assert_close(
        system.b.data(),
        &[0.6197887583, 0.9311187106, 0.5494630762],
        1e-9,
    );
    assert_close(
        &system.solve_log().unwrap(),
        &[0.3339948062, 0.3962607966, 0.3199296698],
        1e-9,
    );
}

#[test]
fn entities_geometric_solution() {
    let p = entities_problem();
    let s = solve_geometric(&p, 10.0).unwrap();
    assert!(s.warnings.is_empty());
    assert_close_rel(
        s.priorities.values(),
        &[2.1577186043, 5.0, 7.0, 2.4903523420, 2.0889578148],
        1e-9,
    );
    assert_close(
        s.priorities.normalized(),
        &[
            0.1151579918,
            0.2668512742,
            0.3735917839,
            0.1329107391,
            0.1114882109,
        ],
        1e-9,
    );
    assert_eq!(s.priorities.ranking(), vec![3, 2, 4, 1, 5]);
    // Full-precision solution is a fixed point of the geometric postulate.
    assert!(geometric_residual(&s.priorities, &p).unwrap() <= 1e-6);
}

#[test]
fn entities_error_and_optimality_fixture() {
    let p = entities_problem();
    let m = entities_matrix();
    let s = solve_geometric(&p, 10.0).unwrap();
    let e = error_function(&s.priorities, &m).unwrap();
    assert!((e - 2.4612658504).abs() <= 1e-9, "error fixture drifted: {e}");

    let report = optimality_report(&s.priorities, &m, Some(&[1, 4, 5])).unwrap();
    assert!(report.gradient_max <= 1e-6);
    assert!(report.spread_condition);
    assert!(!report.hessian_dominant);
    assert!(!report.hessian_positive_definite);
}

#[test]
fn entities_dominant_eigenpair_against_polynomial_oracle() {
    let m = entities_matrix();
    let oracle = dominant_eigenvalue_oracle(&m);
    assert!((oracle - 5.2504136736).abs() <= 1e-6, "oracle {oracle}");

    let dense = linalg::DenseMatrix::new(5, 5, m.entries().to_vec()).unwrap();
    let (lambda, _) = linalg::power_iteration(&dense, 1e-10, 10_000).unwrap();
    assert!(
        (lambda - oracle).abs() <= 1e-7,
        "power iteration {lambda} vs oracle {oracle}"
    );
}

#[test]
fn entities_classic_methods() {
    let m = entities_matrix();
    let ev = ev_method(&m).unwrap();
    assert_close(
        ev.priorities.normalized(),
        &[
            0.1212220546,
            0.2751137966,
            0.3570920706,
            0.1315944082,
            0.1149776701,
        ],
        1e-6,
    );

    let gm = gm_method(&m).unwrap();
    // Direct per-row product oracle, no log space.
    let direct: Vec<f64> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| m.get(i, j))
                .product::<f64>()
                .powf(1.0 / 5.0)
        })
        .collect();
    let sum: f64 = direct.iter().sum();
    let direct_normalized: Vec<f64> = direct.iter().map(|v| v / sum).collect();
    assert_close_rel(gm.priorities.normalized(), &direct_normalized, 1e-12);
    assert_close(
        gm.priorities.normalized(),
        &[
            0.1156312072,
            0.2800520851,
            0.3589134561,
            0.1334569054,
            0.1119463462,
        ],
        1e-9,
    );
}

#[test]
fn entities_arithmetic_solution_against_cramer() {
    let p = entities_problem();
    let system = build_arithmetic_system(&p);
    assert_eq!(system.index_map, vec![1, 4, 5]);

    let mut a = [[0.0; 3]; 3];
    for (r, row) in a.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = system.a.get(r, c);
        }
    }
    let b = [
        system.b.data()[0],
        system.b.data()[1],
        system.b.data()[2],
    ];
    // Spot-check the assembled system against hand-expanded terms.
    assert!((a[0][1] - (-(5.0 / 8.0) / 4.0)).abs() < 1e-15);
    assert!((b[0] - 1.75).abs() < 1e-15);
    assert!((b[1] - 1.0).abs() < 1e-15);
    assert!((b[2] - 0.8125).abs() < 1e-15);

    let oracle = cramer3(&a, &b);
    match solve_arithmetic(&p).unwrap() {
        ArithmeticOutcome::Feasible(s) => {
            let got = s.priorities.values();
            assert!((got[0] - oracle[0]).abs() / oracle[0] <= 1e-10);
            assert!((got[3] - oracle[1]).abs() / oracle[1] <= 1e-10);
            assert!((got[4] - oracle[2]).abs() / oracle[2] <= 1e-10);
            assert_close_rel(
                got,
                &[2.5404124861, 5.0, 7.0, 2.8459308807, 2.4892976589],
                1e-9,
            );
        }
        other => panic!("expected feasible arithmetic outcome, got {other:?}"),
    }
}

#[test]
fn entities_wrong_vector_has_large_residual() {
    let p = entities_problem();
    let ones = hre::PriorityVector::new(vec![1.0; 5]).unwrap();
    assert!(geometric_residual(&ones, &p).unwrap() > 0.1);
}

// ---------------------------------------------------------------------------
// Eight-concept fixture
// ---------------------------------------------------------------------------

#[test]
fn audience_matrix_is_not_reciprocal() {
    let report = validate(&audience_matrix());
    assert!(!report.reciprocal);
    assert!(report.koczkodaj.is_none());
    let pair13 = report
        .violations
        .iter()
        .find(|v| v.i == 1 && v.j == 3)
        .expect("(1,3) must be flagged");
    assert!((pair13.product - 1.333 * 1.333).abs() <= 1e-12);
    assert!(matches!(
        koczkodaj_index(&audience_matrix()),
        Err(hre::Error::NotReciprocal { .. })
    ));
}

#[test]
fn audience_geometric_log_system() {
    let system = build_geometric_system(&audience_problem(), 10.0).unwrap();
    assert_eq!(system.index_map, vec![1, 2, 3, 4, 5]);
    for r in 0..5 {
        for c in 0..5 {
            let want = if r == c { 7.0 } else { -1.0 };
            assert_eq!(system.a_hat.get(r, c), want);
        }
    }
    assert_close(
        system.b.data(),
        &[19.137, 19.895, 19.627, 20.118, 21.286],
        2e-3,
    );
    assert_close(
        &system.solve_log().unwrap(),
        &[6.561, 6.656, 6.623, 6.684, 6.830],
        2e-3,
    );
}

#[test]
fn audience_geometric_solution() {
    let p = audience_problem();
    let s = solve_geometric(&p, 10.0).unwrap();
    assert_eq!(
        s.warnings,
        vec![Warning::NotReciprocal {
            i: 1,
            j: 3,
            product: 1.333 * 1.333,
        }]
    );
    let want = [
        3_643_307.0,
        4_530_955.0,
        4_196_128.0,
        4_831_326.0,
        6_761_938.0,
    ];
    assert_close_rel(&s.priorities.values()[..5], &want, 5e-3);
    assert_eq!(s.priorities.values()[5], 5_500_000.0);
    assert_eq!(s.priorities.values()[6], 4_500_000.0);
    assert_eq!(s.priorities.values()[7], 4_950_000.0);
    // Concept 5 leads the ranking.
    assert_eq!(s.priorities.ranking()[0], 5);
}

// ---------------------------------------------------------------------------
// Recorded infeasible instance
// ---------------------------------------------------------------------------

/// Heavily perturbed reciprocal matrix (noise level 2.0 on a random
/// consistent base) where the arithmetic postulate turns every unknown
/// negative while the geometric one stays positive.
#[test]
fn recorded_infeasible_arithmetic_instance() {
    let m = PcMatrix::from_rows(vec![
        vec![1.0, 9.0, 0.4653241312096692, 9.0],
        vec![0.1111111111111111, 1.0, 2.671125545846967, 0.34667532261832334],
        vec![2.149039632654281, 0.37437401680905175, 1.0, 9.0],
        vec![0.1111111111111111, 2.884543360188815, 0.1111111111111111, 1.0],
    ])
    .unwrap();
    assert!(validate(&m).reciprocal);
    assert!(koczkodaj_index(&m).unwrap() > 0.9);

    let reference = ReferenceAssignment::from_pairs(&[(4, 1.0)]).unwrap();
    let p = HreProblem::new(m, reference).unwrap();
    match solve_arithmetic(&p).unwrap() {
        ArithmeticOutcome::Infeasible { raw, .. } => {
            assert_eq!(raw[3], 1.0);
            assert!(raw[..3].iter().all(|&v| v < 0.0), "raw {raw:?}");
        }
        other => panic!("expected infeasible outcome, got {other:?}"),
    }

    let s = solve_geometric(&p, 10.0).unwrap();
    assert!(s.priorities.values().iter().all(|&v| v > 0.0));
    assert_close_rel(
        s.priorities.values(),
        &[5.7037717167, 1.3037540387, 3.7761578926, 1.0],
        1e-9,
    );
}
