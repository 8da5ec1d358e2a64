//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities. Tolerances are pinned in the assertions.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use blowup_core::bubble::{self, BubbleParams};
use blowup_core::curvature::WeylLike;
use blowup_core::energy;
use blowup_core::nonuniq;
use blowup_core::reduction::{self, ReductionPolynomial};
use blowup_core::report;
use blowup_core::specfun;
use std::time::Instant;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (count as f64 - 1.0)).exp()
        })
        .collect()
}

#[test]
fn criterion_01_exact_bound_certificate_first_true_at_62() {
    let start = Instant::now();
    assert_eq!(reduction::q_poly(62), 2628);
    assert_eq!(reduction::q_poly(61), -544);
    let mut minimal = None;
    for n in 25..=200 {
        if reduction::bound_certificate(n).certified {
            minimal.get_or_insert(n);
        } else {
            assert!(minimal.is_none(), "certificate lost after n = {minimal:?}");
        }
    }
    assert_eq!(minimal, Some(62));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE PASS criterion 1: bound certificate first true at n = 62; q(62) = 2628, q(61) = -544 (exact); {elapsed:?}"
    );
}

#[test]
fn criterion_02_direct_construction_check() {
    let start = Instant::now();
    let tcs = [-0.1, -0.5, -1.0, -2.0, -5.0, -10.0];
    let mut rows = 0usize;
    for n in 62..=150 {
        for &t_c in &tcs {
            let a0 = reduction::a0_star(n, t_c)
                .unwrap()
                .unwrap_or_else(|| panic!("a0 not real at n = {n}, T_c = {t_c}"));
            let f = ReductionPolynomial::new(vec![a0, -1.0]);
            let (i1, d1, d2) = reduction::i_of_s(1.0, n, t_c, &f).unwrap();
            let j1 = reduction::j_of_s(1.0, n, t_c, &f).unwrap();
            assert!(i1 > 0.0, "I(1) <= 0 at n = {n}, T_c = {t_c}");
            assert!(
                d1.abs() <= 1e-10 * i1,
                "I'(1) = {d1:.3e} vs I(1) = {i1:.3e} at n = {n}, T_c = {t_c}"
            );
            assert!(d2 < 0.0, "I''(1) >= 0 at n = {n}, T_c = {t_c}");
            assert!(j1 < 0.0, "J(1) >= 0 at n = {n}, T_c = {t_c}");
            rows += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE PASS criterion 2: direct check green on {rows} (n, T_c) pairs over [62, 150] x 6 slopes; {elapsed:?}"
    );
}

#[test]
fn criterion_03_moment_ratio_bounds() {
    let start = Instant::now();
    let offsets = log_spaced(0.01, 100.0, 20);
    let mut checks = 0usize;
    for n in 25..=200 {
        for &a in &offsets {
            let t_c = -a;
            let ln_c: Vec<f64> = (0..=3u32)
                .map(|q| specfun::c_q(n, t_c, q).unwrap().ln_value)
                .collect();
            for q in 0..=2usize {
                let ratio = (ln_c[q + 1] - ln_c[q]).exp();
                let nf = n as f64;
                let qf = q as f64;
                let lower = (1.0 + t_c * t_c) * (nf - 2.0 * qf - 7.0) / (nf - 2.0 * qf - 8.0);
                let upper = (1.0 + t_c * t_c) * (nf - 2.0 * qf - 6.0) / (nf - 2.0 * qf - 8.0);
                assert!(
                    lower - 1e-10 * ratio <= ratio && ratio <= upper + 1e-10 * ratio,
                    "ratio bound fails at n = {n}, a = {a}, q = {q}: {lower} <= {ratio} <= {upper}"
                );
                checks += 1;
            }
            // consequent bounds on c_1^2 / (c_0 c_2)
            let ratio2 = (2.0 * ln_c[1] - ln_c[0] - ln_c[2]).exp();
            let nf = n as f64;
            let lower2 = (nf - 10.0) * (nf - 7.0) / ((nf - 8.0) * (nf - 8.0));
            let upper2 = (nf - 6.0) * (nf - 10.0) / ((nf - 8.0) * (nf - 9.0));
            assert!(
                lower2 - 1e-10 * ratio2 <= ratio2 && ratio2 <= upper2 + 1e-10 * ratio2,
                "consequent bound fails at n = {n}, a = {a}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE PASS criterion 3: moment-ratio bounds hold at {checks} grid points with 1e-10 slack; {elapsed:?}"
    );
}

#[test]
fn criterion_04_half_line_moment_triple_agreement() {
    use std::f64::consts::PI;
    let start = Instant::now();
    // arctan spot values to 1e-12
    let i1 = specfun::half_line_moment_series(1.0, 1.0).unwrap().value();
    assert!((i1 - PI / 4.0).abs() <= 1e-12 * (PI / 4.0));
    let i4 = specfun::half_line_moment_series(4.0, 1.0).unwrap().value();
    let exact4 = 5.0 * PI / 64.0 - 11.0 / 48.0;
    assert!((i4 - exact4).abs() <= 1e-12 * exact4);

    let alphas = [1.0, 1.5, 2.0, 4.0, 8.5, 16.0, 32.0, 40.0];
    let offsets = log_spaced(0.06, 100.0, 8);
    let mut points = 0usize;
    for &alpha in &alphas {
        for &a in &offsets {
            let s = specfun::half_line_moment_series(alpha, a).unwrap();
            let r = specfun::half_line_moment_recursion(alpha, a).unwrap();
            let q = specfun::half_line_moment_quadrature(alpha, a).unwrap();
            let sv = s.value();
            let rv = r.value();
            let qv = q.value();
            assert!((sv - qv).abs() <= 1e-10 * qv, "series vs quad at ({alpha}, {a})");
            assert!((sv - rv).abs() <= 1e-10 * sv, "series vs recursion at ({alpha}, {a})");
            assert!((rv - qv).abs() <= 1e-10 * qv, "recursion vs quad at ({alpha}, {a})");
            // integration-by-parts residual, quadrature both sides
            let res = specfun::half_line_moment_recursion_check(alpha, a).unwrap();
            assert!(res <= 1e-11 * sv, "recursion residual at ({alpha}, {a}): {res:.3e}");
            points += 1;
        }
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE PASS criterion 4: three routes agree to 1e-10 at {points} grid points; arctan spot values to 1e-12; {elapsed:?}"
    );
}

#[test]
fn criterion_05_sphere_moment_identities() {
    let start = Instant::now();
    let f = ReductionPolynomial::new(vec![1.3, -1.0]);
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    for m in [4usize, 5, 6] {
        for seed in 0..10u64 {
            let w = WeylLike::random(m, 1000 + seed).unwrap();
            let engine = energy::MomentEngine::new(&w, Some(&f)).unwrap();
            for &r in &[0.5, 1.0, 2.0] {
                for &(p, q) in &[(0usize, 0usize), (0, 1), (1, 2)] {
                    for cmp in [
                        engine.identity_a(r, p, q).unwrap(),
                        engine.identity_b(r, p, q).unwrap(),
                        engine.identity_c(r, p, q).unwrap(),
                    ] {
                        worst = worst.max(cmp.rel_err);
                        assert!(cmp.rel_err <= 1e-10, "m={m} seed={seed} r={r} ({p},{q})");
                        count += 1;
                    }
                }
                let d = engine.identity_d(r).unwrap();
                worst = worst.max(d.rel_err);
                assert!(d.rel_err <= 1e-10);
                count += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE PASS criterion 5: {count} identity checks, worst rel_err {worst:.3e} <= 1e-10; {elapsed:?}"
    );
}

#[test]
fn criterion_06_reduced_energy_equivalence() {
    let start = Instant::now();
    let cases = [
        (13i64, ReductionPolynomial::new(vec![1.0, -1.0])),
        (62, reduction::construct_f(62, -1.0).unwrap()),
    ];
    let mut worst_f0: f64 = 0.0;
    let mut worst_scalar: f64 = 0.0;
    for (n, f) in &cases {
        for &eps in &[0.5, 1.0, 2.0] {
            let closed = energy::f0_closed(eps, *n, -1.0, 1.0, f).unwrap();
            let quad = energy::f0_quadrature(eps, *n, -1.0, 1.0, f).unwrap();
            worst_f0 = worst_f0.max(rel(closed, quad));
            assert!(rel(closed, quad) <= 1e-6, "F0 at n={n}, eps={eps}");

            let jc = energy::j_integral_closed(eps, *n, -1.0, f).unwrap();
            let jq = energy::j_integral_quadrature(eps, *n, -1.0, f).unwrap();
            worst_scalar = worst_scalar.max(rel(jc, jq));
            assert!(rel(jc, jq) <= 1e-6, "J term at n={n}, eps={eps}");
            let fc = energy::fprime_integral_closed(eps, *n, -1.0, f).unwrap();
            let fq = energy::fprime_integral_quadrature(eps, *n, -1.0, f).unwrap();
            worst_scalar = worst_scalar.max(rel(fc, fq));
            assert!(rel(fc, fq) <= 1e-6, "f'^2 term at n={n}, eps={eps}");
        }
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE PASS criterion 6: F0 routes within {worst_f0:.3e}, Hessian scalars within {worst_scalar:.3e} (tol 1e-6); {elapsed:?}"
    );
}

#[test]
fn criterion_07_strict_local_minimum_at_unit_scale() {
    let start = Instant::now();
    let w = WeylLike::random_block(61, 4, 42).unwrap();
    for &t_c in &[-0.1, -1.0, -10.0] {
        let f = reduction::construct_f(62, t_c).unwrap();
        let rep = energy::local_min_check(62, t_c, &w, &f).unwrap();
        assert!(
            (rep.eps_local_min - 1.0).abs() <= 1e-6,
            "T_c = {t_c}: local minimizer {:.9}",
            rep.eps_local_min
        );
        assert!(rep.second_deriv > 0.0, "T_c = {t_c}: d2F0 = {}", rep.second_deriv);
        assert!(
            rep.hessian_min_eigenvalue > 0.0,
            "T_c = {t_c}: min eig {}",
            rep.hessian_min_eigenvalue
        );
        assert!(rep.first_deriv_zero && rep.all_pass(), "T_c = {t_c}");
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE PASS criterion 7: strict local minimum verified at (0, 1) for n = 62, three slopes; {elapsed:?}"
    );
}

#[test]
fn criterion_08_bubble_identities() {
    let start = Instant::now();
    use rand_core::{RngCore, SeedableRng};
    let mut worst_interior: f64 = 0.0;
    let mut worst_boundary: f64 = 0.0;
    let mut worst_einstein: f64 = 0.0;
    for &n in &[5usize, 13, 62] {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242 + n as u64);
        let mut unif = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let p = BubbleParams::new(n, -1.0, vec![0.0; n - 1], 1.0).unwrap();
        for _ in 0..100 {
            let mut x: Vec<f64> = (0..n).map(|_| (2.0 * unif() - 1.0) * 8.0).collect();
            x[n - 1] = unif().max(1e-3) * 8.0;
            worst_interior = worst_interior.max(bubble::interior_residual(&p, &x).unwrap().abs());
            worst_einstein = worst_einstein.max(bubble::einstein_residual(&p, &x).unwrap().max_rel);
            let xb: Vec<f64> = (0..n - 1).map(|_| (2.0 * unif() - 1.0) * 5.0).collect();
            worst_boundary = worst_boundary.max(bubble::boundary_residual(&p, &xb).unwrap().abs());
        }
    }
    assert!(worst_interior <= 1e-9, "interior {worst_interior:.3e}");
    assert!(worst_boundary <= 1e-9, "boundary {worst_boundary:.3e}");
    assert!(worst_einstein <= 1e-9, "einstein {worst_einstein:.3e}");

    let pairs = vec![
        (vec![0.0; 12], 1.0),
        (vec![0.5; 12], 0.5),
        (vec![-1.0; 12], 2.0),
    ];
    let mut worst_spread: f64 = 0.0;
    for a in [1usize, 13] {
        let rep = bubble::kernel_norm_constancy(13, -1.0, a, &pairs).unwrap();
        worst_spread = worst_spread.max(rep.interior_spread).max(rep.boundary_spread);
        assert!(rep.interior_spread <= 1e-6 && rep.boundary_spread <= 1e-6, "a = {a}");
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE PASS criterion 8: residual maxima (interior {worst_interior:.2e}, boundary {worst_boundary:.2e}, Einstein {worst_einstein:.2e}) <= 1e-9; kernel-norm spread {worst_spread:.2e} <= 1e-6; {elapsed:?}"
    );
}

#[test]
fn criterion_09_warped_product_example() {
    let start = Instant::now();
    // volume identity and convention falsification
    for &(n, wrong_floor) in &[(5usize, 0.1), (6, 0.05)] {
        let rep = nonuniq::stereographic_volume_check(n).unwrap();
        assert!(rep.rel_err <= 1e-8, "n = {n}: {:.3e}", rep.rel_err);
        assert!(
            rep.rel_err_wrong_convention > wrong_floor,
            "n = {n}: wrong-convention gap {:.3e}",
            rep.rel_err_wrong_convention
        );
    }
    // threshold with margin, and the k -> infinity limit
    let spec = nonuniq::WarpedProductSpec::reference();
    let rep = nonuniq::threshold_k(&spec).unwrap();
    assert!(rep.threshold_k.is_finite());
    assert!(rep.margin > 1.0, "margin {}", rep.margin);
    let sc_inf = nonuniq::sc_infinity(spec.r_g2, spec.n()).unwrap();
    let sc_big = nonuniq::sc_of_k(&spec, 1e6).unwrap();
    assert!(
        (sc_big - sc_inf).abs() <= 0.01 * sc_inf,
        "S_c(1e6) = {sc_big}, S_c(inf) = {sc_inf}"
    );
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE PASS criterion 9: volume identity <= 1e-8 (falsified against |S^(n-1)|); threshold k = {:.4} with margin {:.3} > 1; |S_c(1e6) - S_c(inf)| <= 1% S_c(inf); {elapsed:?}",
        rep.threshold_k, rep.margin
    );
}

#[test]
fn criterion_10_deterministic_reports() {
    let start = Instant::now();
    // scan reports, twice from scratch
    let s1 = reduction::certificate_scan(60..=70, &[-1.0, -0.5]).unwrap();
    let s2 = reduction::certificate_scan(60..=70, &[-1.0, -0.5]).unwrap();
    assert_eq!(report::dimension_rows_csv(&s1.rows), report::dimension_rows_csv(&s2.rows));
    assert_eq!(report::scan_json(&s1), report::scan_json(&s2));

    // seeded tensors serialize byte-identically
    let w1 = WeylLike::random_block(61, 4, 7).unwrap();
    let w2 = WeylLike::random_block(61, 4, 7).unwrap();
    assert_eq!(w1.to_json(), w2.to_json());

    // energy profiles, twice (quadrature route included)
    let f = reduction::construct_f(62, -1.0).unwrap();
    let e1 = energy::energy_profile(62, -1.0, 1.0, &f, &[0.5, 1.0, 2.0]).unwrap();
    let e2 = energy::energy_profile(62, -1.0, 1.0, &f, &[0.5, 1.0, 2.0]).unwrap();
    assert_eq!(report::energy_profile_csv(&e1), report::energy_profile_csv(&e2));
    assert_eq!(report::energy_profile_json(&e1), report::energy_profile_json(&e2));

    // threshold report, twice
    let spec = nonuniq::WarpedProductSpec::reference();
    let t1 = nonuniq::threshold_k(&spec).unwrap();
    let t2 = nonuniq::threshold_k(&spec).unwrap();
    assert_eq!(report::threshold_json(&t1), report::threshold_json(&t2));

    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE PASS criterion 10: scan, tensor, profile, and threshold reports byte-identical across runs; {elapsed:?}"
    );
}
