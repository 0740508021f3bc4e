//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers. Run with `cargo test --test acceptance -- --nocapture`
//! to see the table.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use laglink::conformal::{
    beta_from_point, greens_period, nonexistence_margin, slit_radius, AnnulusConfig, Boundary,
};
use laglink::critical::{lift, solve_leading, verify_critical};
use laglink::dims::{vdim_domain, vdim_map, vdim_total};
use laglink::laurent::{LaurentPoly, Monomial, Var};
use laglink::novikov::{AdmissibilityFilter, NovikovScalar};
use laglink::potential::{
    annulus_term, assemble, build_w_smooth, safe_cutoff, sample_admissible_tail, AnnulusSign,
    BulkParams, ModelParams,
};
use laglink::rat::{rat, Rat};
use laglink::tropical::{
    enumerate_type1, enumerate_type2, family_pairs, genericity_check, QPoint, RayFamily,
    TropicalConfig,
};

fn params_512() -> ModelParams {
    ModelParams::new(rat(5, 1), rat(1, 1), rat(2, 1), AnnulusSign::Plus).unwrap()
}

fn params_half() -> ModelParams {
    ModelParams::new(rat(7, 2), rat(1, 2), rat(1, 1), AnnulusSign::Plus).unwrap()
}

#[test]
fn criterion_01_leading_order_roots() {
    let start = Instant::now();
    let roots = solve_leading(&params_512());
    let elapsed = start.elapsed();

    assert_eq!(roots.len(), 6, "expected exactly 6 leading roots");
    for (x1, x2) in &roots {
        assert!(
            (x2 - 1.0).norm() < 1e-12 || (x2 + 1.0).norm() < 1e-12,
            "x2 must be +-1"
        );
        assert!((x1.powi(-3).norm() - 0.5).abs() < 1e-12, "|x1^-3| = 1/2");
        let r1 = (-(x2.powi(-2)) + 1.0).norm();
        let r2 = (Complex64::new(1.0, 0.0) - 2.0 * x1.powi(-3) * x2).norm();
        assert!(r1 < 1e-10 && r2 < 1e-10, "residuals {r1:.2e}, {r2:.2e}");
    }
    assert!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    println!(
        "criterion 01 PASS: 6 leading roots, max residual < 1e-10, {:?}",
        elapsed
    );
}

#[test]
fn criterion_02_exact_mode_lift() {
    let start = Instant::now();
    let p = params_512();
    let cutoff = safe_cutoff(&p).unwrap();
    assert_eq!(cutoff, rat(6, 1));
    let tail = LaurentPoly::zero(cutoff);
    let work = cutoff + p.b;

    let mut sols = Vec::new();
    for root in solve_leading(&p) {
        let sol = lift(root, &p, &tail, cutoff).unwrap();
        let bulk = BulkParams::with_b1(&p, sol.b1.with_cutoff(work)).unwrap();
        let w = assemble(&p, &bulk, &tail.with_cutoff(work), work).unwrap();
        let min_over_partials = verify_critical(&w, &p, &sol).unwrap();
        assert!(
            min_over_partials >= cutoff,
            "four-partial residual valuation {min_over_partials} < {cutoff}"
        );
        sols.push(sol);
    }
    for i in 0..sols.len() {
        for j in (i + 1)..sols.len() {
            let d = (sols[i].x1.leading_coeff() - sols[j].x1.leading_coeff()).norm()
                + (sols[i].x2.leading_coeff() - sols[j].x2.leading_coeff()).norm();
            assert!(d > 1e-6, "solutions {i} and {j} collide ({d:.2e})");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 02 PASS: 6 lifts verified >= T^6 on all partials, pairwise distinct, {:?}",
        elapsed
    );
}

#[test]
fn criterion_03_tail_robustness() {
    let start = Instant::now();
    let p = params_half();
    let cutoff = rat(10, 1);
    let ideal_filter = AdmissibilityFilter::new(p.monoid(), vec![Rat::ZERO]);

    for seed in 0..100u64 {
        let tail = sample_admissible_tail(&p, cutoff + p.b, seed).unwrap();
        for root in solve_leading(&p) {
            let sol = lift(root, &p, &tail, cutoff)
                .unwrap_or_else(|e| panic!("seed {seed}: lift failed: {e}"));
            assert!(
                sol.residual_valuation >= cutoff,
                "seed {seed}: residual {}",
                sol.residual_valuation
            );
            assert!(
                ideal_filter.accepts(&sol.b1) && sol.b1.valuation() > Rat::ZERO || sol.b1.is_zero(),
                "seed {seed}: b1 outside the monoid ideal"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "criterion 03 PASS: 100 seeds x 6 roots lift to T^10 with admissible b1, {:?}",
        elapsed
    );
}

#[test]
fn criterion_04_hypothesis_gating() {
    // a >= B - C
    let err = ModelParams::new(rat(5, 1), rat(1, 1), rat(4, 1), AnnulusSign::Plus).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("0 < a < B - C") && msg.contains("B - a - C"));

    // B - a - C = 0 exactly
    let err = ModelParams::new(rat(3, 1), rat(1, 1), rat(2, 1), AnnulusSign::Plus).unwrap_err();
    assert!(err.to_string().contains("B - a - C"));

    // Nonpositive areas
    for (b, c, a) in [
        (rat(0, 1), rat(1, 1), rat(1, 2)),
        (rat(5, 1), rat(-1, 1), rat(1, 1)),
    ] {
        assert!(ModelParams::new(b, c, a, AnnulusSign::Plus).is_err());
    }

    // The full pipeline rejects the same configurations without a verdict.
    let bad = laglink::pipeline::RunConfig {
        params: ModelParams {
            b: rat(5, 1),
            c: rat(1, 1),
            a: rat(4, 1),
            sign_annulus: AnnulusSign::Plus,
        },
        cutoff: laglink::pipeline::CutoffSpec::Auto,
        tail_seed: None,
        tropical: None,
        certification_level: None,
    };
    let err = laglink::pipeline::run_pipeline(&bad).unwrap_err();
    assert!(err.to_string().contains("0 < a < B - C"));
    println!("criterion 04 PASS: hypothesis violations rejected by name, no certificate emitted");
}

#[test]
fn criterion_05_tropical_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let bound = 10u32;
    let mut tested = 0usize;

    while tested < 20 {
        // Random anchors with slope in (0,1).
        let px = -rat(rng.gen_range(1..40), rng.gen_range(1..8));
        let py = -rat(rng.gen_range(1..40), rng.gen_range(1..8));
        let qx = rat(rng.gen_range(1..40), rng.gen_range(1..8));
        let qy = rat(rng.gen_range(1..40), rng.gen_range(1..8));
        let cfg = match TropicalConfig::new(QPoint::new(px, py), QPoint::new(qx, qy), bound) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let m = match genericity_check(&cfg) {
            Ok(m) => m,
            Err(_) => continue,
        };
        if !(m > Rat::ZERO && m < Rat::ONE) {
            continue;
        }
        tested += 1;

        assert_eq!(enumerate_type1(&cfg).unwrap().len(), 8);

        // Brute-force inequality scan over |p|, |q| <= bound.
        for family in RayFamily::ALL {
            let mut brute = Vec::new();
            for p in -(bound as i64)..=bound as i64 {
                for q in -(bound as i64)..=bound as i64 {
                    let interval = match family {
                        RayFamily::LabelUp | RayFamily::LabelDown => {
                            if p == 0 {
                                continue;
                            }
                            (rat(q as i128, p as i128), rat(q as i128 + 1, p as i128))
                        }
                        RayFamily::LabelRight | RayFamily::LabelLeft => {
                            if p == 0 || p == -1 {
                                continue;
                            }
                            (rat(q as i128, p as i128 + 1), rat(q as i128, p as i128))
                        }
                    };
                    if interval.0 < m && m < interval.1 {
                        brute.push((p, q));
                    }
                }
            }
            assert_eq!(
                family_pairs(family, m, bound),
                brute,
                "family {family:?} at slope {m}"
            );
        }

        // The up-label family contains (1,0) and nothing else at p = 1.
        let up = family_pairs(RayFamily::LabelUp, m, bound);
        let at_p1: Vec<_> = up.iter().filter(|(p, _)| *p == 1).collect();
        assert_eq!(at_p1, vec![&(1i64, 0i64)], "slope {m}");

        // Each family pair materializes as exactly one emitted curve.
        let curves = enumerate_type2(&cfg).unwrap();
        let expected: usize = RayFamily::ALL
            .iter()
            .map(|f| family_pairs(*f, m, bound).len())
            .sum();
        assert_eq!(curves.len(), expected);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 05 PASS: 20 generic configs match the brute-force scan exactly, {:?}",
        elapsed
    );
}

#[test]
fn criterion_06_potential_fidelity() {
    let p = params_512();
    let cut = rat(20, 1);

    // Hand-coded smooth term map: exact exponents, coefficients exactly one.
    let w = build_w_smooth(&p, cut).unwrap();
    let expected = [
        ([0, -1, 0, 0], rat(2, 1)),
        ([0, 0, 0, -1], rat(2, 1)),
        ([0, 1, 0, 0], rat(2, 1)),
        ([0, 0, 0, 1], rat(2, 1)),
        ([1, 0, 0, 0], rat(5, 1)),
        ([0, 0, 1, 0], rat(5, 1)),
        ([-1, 0, 0, 0], rat(6, 1)),
        ([0, 0, -1, 0], rat(6, 1)),
    ];
    assert_eq!(w.terms().len(), expected.len());
    for (exps, area) in expected {
        let coeff = w.coeff(&Monomial(exps));
        assert_eq!(coeff.terms().len(), 1);
        let c = coeff.coeff(area);
        assert_eq!((c.re, c.im), (1.0, 0.0), "coefficient must be exactly 1");
    }

    // Annulus coefficients sit at valuation B exactly.
    let bulk = BulkParams::standard(&p, cut);
    let ann = annulus_term(&p, &bulk, cut).unwrap();
    for coeff in ann.terms().values() {
        assert_eq!(coeff.valuation(), p.b);
    }

    // Safe cutoff against an independent enumeration of uncomputed-family
    // valuations (g+1)(B-a-C) + base area + eta1*C with the computed annulus
    // family and the nonexistent vertical-multiple families removed.
    let mut best: Option<Rat> = None;
    for g in 0..=4i128 {
        for eta1 in 1..=5i128 {
            for eta2 in 1..=3i128 {
                for base in [p.a, p.b] {
                    let small = base == p.a;
                    if small && eta1 == 1 && ((g == 0 && eta2 == 1) || eta2 >= 2) {
                        continue;
                    }
                    let v = p.gap().scale(g + 1) + base + p.c.scale(eta1);
                    best = Some(match best {
                        Some(b) if b <= v => b,
                        _ => v,
                    });
                }
            }
        }
    }
    assert_eq!(safe_cutoff(&p).unwrap(), best.unwrap());
    assert_eq!(safe_cutoff(&p).unwrap(), rat(6, 1));
    println!("criterion 06 PASS: smooth term map exact, annulus valuation = B, safe cutoff = 6");
}

#[test]
fn criterion_07_dimension_identity() {
    let mut checked = 0usize;
    for k in 0..=20u32 {
        for l in 0..=20u32 {
            for m2 in 0..=l {
                let m1 = l - m2;
                for mu in (0..=20i64).step_by(2) {
                    assert_eq!(
                        vdim_domain(k, l) + vdim_map(m2, mu),
                        vdim_total(k, m1, mu),
                        "k={k} l={l} m2={m2} mu={mu}"
                    );
                    checked += 1;
                }
            }
        }
    }
    println!("criterion 07 PASS: dimension identity holds on {checked} cases, zero failures");
}

#[test]
fn criterion_08_conformal_invariants() {
    let start = Instant::now();

    // Slit radius equals |a| to 1e-12 on a 20 x 20 grid.
    for i in 0..20 {
        let r1 = 0.05 + 0.85 * i as f64 / 19.0;
        for j in 0..20 {
            let a_abs = r1 + (0.999 - r1) * (j as f64 + 0.5) / 20.0;
            let r0 = (r1 + 1.0) / 2.0;
            let cfg = AnnulusConfig::new(r1, Complex64::new(a_abs, 0.0), r0).unwrap();
            let (_, radius) = slit_radius(&cfg);
            assert!(
                (radius - a_abs).abs() < 1e-12,
                "r1={r1} |a|={a_abs}: radius {radius}"
            );
        }
    }

    // Period over the outer boundary matches 2*pi*w1(a) to 1e-6.
    let tol = 1e-9;
    let mut worst: f64 = 0.0;
    for i in 0..8 {
        let r1 = 0.05 + 0.85 * i as f64 / 7.0;
        for j in 0..5 {
            let lo = r1 + 0.04;
            let hi = 0.97f64.min(r1 + 0.95 * (1.0 - r1));
            if lo >= hi {
                continue;
            }
            let a_abs = lo + (hi - lo) * j as f64 / 4.0;
            let cfg = AnnulusConfig::new(r1, Complex64::from_polar(a_abs, 0.7), (r1 + 1.0) / 2.0)
                .unwrap();
            let period = greens_period(&cfg, Boundary::Outer, tol).unwrap();
            let beta = beta_from_point(&cfg);
            let err = (period - beta).abs();
            worst = worst.max(err);
            assert!(err < 1e-6, "r1={r1} |a|={a_abs}: period error {err:.2e}");
        }
    }

    // Obstruction margin positive on 1000 random admissible samples.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let r0: f64 = rng.gen_range(0.02..0.99);
        let r_ratio = rng.gen_range(0.001..r0);
        let beta = rng.gen_range(1e-6..(2.0 * std::f64::consts::PI - 1e-6));
        let margin = nonexistence_margin(r_ratio, r0, beta).unwrap();
        assert!(margin > 0.0, "margin {margin} at ({r_ratio}, {r0}, {beta})");
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 08 PASS: slit radius exact, worst period error {:.2e}, 1000 positive margins, {:?}",
        worst, elapsed
    );
}

#[test]
fn criterion_09_algebra_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let cut = rat(4, 1);

    let rand_scalar = |rng: &mut ChaCha8Rng, min_exp_num: i128| {
        let n = rng.gen_range(0..5);
        let terms: Vec<(Rat, Complex64)> = (0..n)
            .map(|_| {
                (
                    rat(rng.gen_range(min_exp_num..8), rng.gen_range(1..4)),
                    Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                )
            })
            .collect();
        NovikovScalar::from_terms(terms, cut)
    };

    // Ring axioms.
    for case in 0..1000 {
        let a = rand_scalar(&mut rng, 0);
        let b = rand_scalar(&mut rng, 0);
        let c = rand_scalar(&mut rng, 0);
        let comm = a
            .checked_mul(&b)
            .unwrap()
            .checked_sub(&b.checked_mul(&a).unwrap())
            .unwrap();
        assert!(comm.max_coeff_norm() < 1e-9, "case {case}");
        let assoc = a
            .checked_mul(&b)
            .unwrap()
            .checked_mul(&c)
            .unwrap()
            .checked_sub(&a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap())
            .unwrap();
        assert!(assoc.max_coeff_norm() < 1e-9, "case {case}");
        let distr = a
            .checked_mul(&b.checked_add(&c).unwrap())
            .unwrap()
            .checked_sub(
                &a.checked_mul(&b)
                    .unwrap()
                    .checked_add(&a.checked_mul(&c).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert!(distr.max_coeff_norm() < 1e-9, "case {case}");
    }

    // Unit inversion. The tail is kept small relative to the leading
    // coefficient: the inverse's geometric series amplifies tail magnitude
    // exponentially, and a badly conditioned unit leaves f64 cancellation
    // noise above any fixed threshold no matter the algorithm.
    for case in 0..1000 {
        let lead = Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        let tail_terms: Vec<(Rat, Complex64)> = (0..rng.gen_range(0..5))
            .map(|_| {
                (
                    rat(rng.gen_range(1..8), rng.gen_range(1..4)),
                    Complex64::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)),
                )
            })
            .collect();
        let u = NovikovScalar::constant(lead, cut)
            .checked_add(&NovikovScalar::from_terms(tail_terms, cut))
            .unwrap();
        let residual = u
            .checked_mul(&u.inv().unwrap())
            .unwrap()
            .checked_sub(&NovikovScalar::one(cut))
            .unwrap();
        assert!(residual.max_coeff_norm() < 1e-9, "case {case}");
    }

    // Exponential group law.
    for case in 0..1000 {
        let x = rand_scalar(&mut rng, 1);
        let y = rand_scalar(&mut rng, 1);
        let lhs = x.checked_add(&y).unwrap().exp().unwrap();
        let rhs = x.exp().unwrap().checked_mul(&y.exp().unwrap()).unwrap();
        assert!(
            lhs.checked_sub(&rhs).unwrap().max_coeff_norm() < 1e-9,
            "case {case}"
        );
    }

    let rand_poly = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..4);
        let mut poly = LaurentPoly::zero(cut);
        for _ in 0..n {
            let exps = [
                rng.gen_range(-2..3),
                rng.gen_range(-2..3),
                rng.gen_range(-2..3),
                rng.gen_range(-2..3),
            ];
            let coeff = NovikovScalar::monomial(
                Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)),
                rat(rng.gen_range(0..6), rng.gen_range(1..3)),
                cut,
            );
            poly.add_term(Monomial(exps), coeff);
        }
        poly
    };

    // Laurent product rule.
    for case in 0..1000 {
        let f = rand_poly(&mut rng);
        let g = rand_poly(&mut rng);
        let v = [Var::X1, Var::X2, Var::Y1, Var::Y2][case % 4];
        let lhs = f.checked_mul(&g).unwrap().partial(v);
        let rhs = f
            .partial(v)
            .checked_mul(&g)
            .unwrap()
            .checked_add(&f.checked_mul(&g.partial(v)).unwrap())
            .unwrap();
        let diff = lhs.checked_add(&rhs.neg()).unwrap();
        let max = diff
            .terms()
            .values()
            .map(|c| c.max_coeff_norm())
            .fold(0.0, f64::max);
        assert!(max < 1e-9, "case {case}");
    }

    // Evaluation homomorphism at random unit points.
    for case in 0..1000 {
        let f = rand_poly(&mut rng);
        let g = rand_poly(&mut rng);
        // Unit coordinates with mild tails: monomials reach power -4 after
        // the product, and each inversion amplifies the tail geometrically.
        let point_coord = |rng: &mut ChaCha8Rng| {
            let tail: Vec<(Rat, Complex64)> = (0..rng.gen_range(0..4))
                .map(|_| {
                    (
                        rat(rng.gen_range(1..8), rng.gen_range(1..4)),
                        Complex64::new(rng.gen_range(-0.15..0.15), rng.gen_range(-0.15..0.15)),
                    )
                })
                .collect();
            NovikovScalar::constant(
                Complex64::new(rng.gen_range(0.7..1.5), rng.gen_range(-0.3..0.3)),
                cut,
            )
            .checked_add(&NovikovScalar::from_terms(tail, cut))
            .unwrap()
        };
        let point = [
            point_coord(&mut rng),
            point_coord(&mut rng),
            point_coord(&mut rng),
            point_coord(&mut rng),
        ];
        let lhs = f.checked_mul(&g).unwrap().eval(&point).unwrap();
        let rhs = f
            .eval(&point)
            .unwrap()
            .checked_mul(&g.eval(&point).unwrap())
            .unwrap();
        assert!(
            lhs.checked_sub(&rhs).unwrap().max_coeff_norm() < 1e-9,
            "case {case}"
        );
    }

    println!("criterion 09 PASS: 5 property families x 1000 randomized cases, residuals < 1e-9");
}

#[test]
fn criterion_10_end_to_end_determinism() {
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/solve_5_1_2.json"
    );
    let exe = env!("CARGO_BIN_EXE_laglink");

    let run = || {
        std::process::Command::new(exe)
            .args(["solve", "--config", fixture, "--seed", "7"])
            .output()
            .expect("spawn solve")
    };
    let out1 = run();
    let out2 = run();
    assert!(out1.status.success(), "exit code 0 expected (certificate)");
    assert_eq!(out1.status.code(), Some(0));
    assert_eq!(out1.stdout, out2.stdout, "reports differ between runs");
    assert!(!out1.stdout.is_empty());

    let report: serde_json::Value = serde_json::from_slice(&out1.stdout).unwrap();
    assert_eq!(report["verdict"]["certified"], serde_json::json!(true));
    assert_eq!(report["verdict"]["distinct_count"], serde_json::json!(6));
    println!("criterion 10 PASS: byte-identical reports, exit 0 with a 6-point certificate");
}
