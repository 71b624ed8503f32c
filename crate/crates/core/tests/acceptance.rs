//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its assertions hold (run with `cargo test --test acceptance -- --nocapture`
//! to see the lines). Every tolerance here is exact equality; randomized
//! inputs are seeded and deterministic.
//!
//! Where a displayed formula is provably inconsistent with the exact
//! computation, the criterion asserts the oracle-certified identity and pins
//! the exact discrepancy (the harness reports the same facts as findings).

use gspin_exact::bruhat_engine::{
    decompose_w0n, evaluate_conditions, torus_coordinates, twisted_centralizer_randomized,
    twisted_centralizer_symbolic, u_alpha_n, y_matrix_and_det,
};
use gspin_exact::dual_side::{
    adjoint_eigenvalues, levi_elt, levi_restriction_blocks, subspace_invariant, sym2_satake,
    SatakeParam,
};
use gspin_exact::exact::{AffineExp, Mat, Rat};
use gspin_exact::harness::{run, SuiteConfig, SuiteName};
use gspin_exact::mellin_ledger::{
    d_substitution, integrand_exponents, nu_displayed, omega_argument_check,
    valuation_oracle_check,
};
use gspin_exact::orbit_measure::{
    embed_corner, measure_jacobian_check, quotient_measure_exponents, reduce_orbit, CanonicalRep,
    SkewMat,
};
use gspin_exact::root_data::{build_root_datum, pairing_report, weyl_lengths, DatumKind};
use gspin_exact::so_realization::psi_compat_check;
use gspin_exact::so_realization::psi_compat_symbolic_n2;
use gspin_exact::weyl_cells::{
    bessel_distance, bessel_distance_chain, bessel_from_composition, bessel_set, levi_roots,
    u_splitting,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::time::Instant;

fn pass(criterion: usize, what: &str, t: Instant) {
    println!(
        "criterion {criterion:>2}: PASS - {what} ({} ms)",
        t.elapsed().as_millis()
    );
}

#[test]
fn criterion_01_root_data() {
    let t = Instant::now();
    for n in 2..=8 {
        for kind in [
            DatumKind::GSpinOdd,
            DatumKind::SpinOdd,
            DatumKind::SoOdd,
            DatumKind::Gl,
        ] {
            let d = build_root_datum(kind, n).unwrap();
            assert_eq!(d.cartan_matrix(), d.expected_cartan(), "{kind:?} n={n}");
        }
        let pr = pairing_report(n);
        assert_eq!(pr.rho_alpha, Rat::from_int(n as i64));
        assert_eq!(pr.alphahat_alphavee, Rat::new(n as i64, 2));
        assert_eq!(pr.t_exponent, Rat::from_int((n * n) as i64));
        assert_eq!(weyl_lengths(n), (n * n, n * (n - 1) / 2));
    }
    assert!(t.elapsed().as_secs() < 1, "time budget: < 1 s");
    pass(1, "root data: Cartan matrices, pairings, lengths for n = 2..8", t);
}

#[test]
fn criterion_02_orbit_algorithm() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC2);
    for n in 2..=6 {
        for _ in 0..200 {
            let z = SkewMat::random_generic(&mut rng, n + 1, 50);
            let (u, rep) = reduce_orbit(&z).unwrap();
            let ue = embed_corner(&u);
            assert_eq!(
                ue.mul_mat(&z.mat).mul_mat(&ue.transpose()),
                rep.matrix(),
                "round trip n={n}"
            );
            // conjugation-equivariance of the canonical rep
            let u0 = embed_corner(&Mat::random_unipotent(&mut rng, n, 6));
            let moved = SkewMat::new(u0.mul_mat(&z.mat).mul_mat(&u0.transpose())).unwrap();
            let (_, rep2) = reduce_orbit(&moved).unwrap();
            assert_eq!(rep, rep2, "equivariance n={n}");
        }
    }
    assert!(t.elapsed().as_secs() < 60, "time budget: < 60 s");
    pass(2, "orbit reduction round-trip + equivariance, 200 trials, n = 2..6", t);
}

#[test]
fn criterion_03_measure() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC3);
    for n in 2..=3 {
        let v = measure_jacobian_check(n, true, 3, 0, &mut rng).unwrap();
        assert!(v.matches, "symbolic Jacobian n={n}");
    }
    for n in 4..=5 {
        let v = measure_jacobian_check(n, false, 3, 20, &mut rng).unwrap();
        assert!(v.matches, "randomized Jacobian n={n}");
    }
    for n in 2..=10 {
        let q = quotient_measure_exponents(n);
        assert_eq!(q.k, (0..n as i64 - 1).collect::<Vec<_>>(), "n={n}");
        assert_eq!(q.residue, 0, "n={n}");
    }
    assert!(t.elapsed().as_secs() < 30, "time budget: < 30 s");
    pass(3, "measure Jacobian (symbolic n<=3, randomized n=4,5) + quotient exponents n<=10", t);
}

#[test]
fn criterion_04_bruhat_decomposition() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC4);
    for n in 2..=6 {
        for _ in 0..100 {
            let rep = CanonicalRep::random(&mut rng, n, 9);
            // exact SO identity + all conditions (decompose_w0n enforces both)
            let parts = decompose_w0n(&rep).unwrap();
            let cond = evaluate_conditions(
                n,
                &parts.g.scale(&Rat::from_int(-2)),
                &parts.beta,
                &parts.y_prime,
                &parts.gamma_prime,
                &parts.z_prime,
                &parts.x,
                &parts.alpha,
            )
            .unwrap();
            assert!(cond.all(), "conditions n={n}");
            let expected = if n % 2 == 0 {
                Rat::zero()
            } else {
                Rat::from_int(-2)
            };
            assert_eq!(cond.alpha_pairing, expected, "t(alpha) Y^{{-1}} alpha n={n}");
            // det Y closed form and adjugate formula
            let (_, yrep) = y_matrix_and_det(&rep).unwrap();
            assert!(yrep.closed_form_matches && yrep.minor_form_matches, "n={n}");
            let ur = u_alpha_n(&rep).unwrap();
            assert!(ur.adjugate_matches, "adjugate n={n}");
        }
    }
    assert!(t.elapsed().as_secs() < 120, "time budget: < 120 s");
    pass(4, "w_0^-1 n = m n' nbar exactly + conditions (1)-(9),(i)-(iii), 100 trials, n = 2..6", t);
}

#[test]
fn criterion_05_d_coordinates() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC5);
    for n in 2..=6 {
        for _ in 0..50 {
            let rep = CanonicalRep::random(&mut rng, n, 9);
            let tc = torus_coordinates(&rep).unwrap();
            // d_i d_{i+1} = 1/(4 a_i^2) for all i
            assert!(tc.relations_hold, "relations n={n}");
            // closed forms certified by the big-cell oracle
            assert!(tc.d1_matches && tc.dn_matches, "closed forms n={n}");
            // for odd n these coincide with the displayed forms; for even n
            // the displayed d_1 and d_n are provably off by a factor 4
            if n % 2 == 1 {
                assert!(tc.displayed_d1_matches && tc.displayed_dn_matches, "n={n}");
            } else {
                assert!(
                    !tc.displayed_d1_matches && !tc.displayed_dn_matches,
                    "characterized displayed-form deviation n={n}"
                );
            }
            // Z^0-scaling covariance d_i -> d_i / t^2
            let s = Rat::random_nonzero_int(&mut rng, 5);
            let s2 = &s * &s;
            let mut scaled = rep.a.clone();
            for x in scaled.iter_mut().take(n - 1) {
                *x = &*x * &s2;
            }
            scaled[n - 1] = &scaled[n - 1] * &s;
            let tc2 = torus_coordinates(&CanonicalRep { a: scaled }).unwrap();
            for i in 0..n {
                assert_eq!(tc2.d[i], &tc.d[i] / &s2, "covariance n={n} i={i}");
            }
        }
    }
    pass(
        5,
        "d-coordinates: relations + oracle closed forms (even-n displayed deviation pinned) + center covariance",
        t,
    );
}

#[test]
fn criterion_06_u_n() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC6);
    for n in 2..=6 {
        for _ in 0..50 {
            let rep = CanonicalRep::random(&mut rng, n, 9);
            let ur = u_alpha_n(&rep).unwrap();
            assert!(ur.closed_form_matches, "u_n closed form n={n}");
        }
    }
    pass(6, "u_n = 1/2 (det Y)^-1 prod a_i vs direct extraction from w_0 nbar w_0^-1, n = 2..6", t);
}

#[test]
fn criterion_07_dual_side() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC7);
    for n in 1..=4 {
        for _ in 0..10 {
            let chi: Vec<Rat> = (0..n)
                .map(|_| Rat::random_nonzero_int(&mut rng, 9))
                .collect();
            let eta = Rat::random_nonzero_int(&mut rng, 9);
            let sp = SatakeParam::new(chi, eta, 5).unwrap();
            let (eigen, lpoly) = sym2_satake(&sp);
            assert_eq!(adjoint_eigenvalues(&sp).unwrap(), eigen, "n={n}");
            assert_eq!(lpoly.degree(), n * (n + 1) / 2, "n={n}");
        }
    }
    for n in 5..=6 {
        let chi: Vec<Rat> = (0..n)
            .map(|_| Rat::random_nonzero_int(&mut rng, 9))
            .collect();
        let sp = SatakeParam::new(chi, Rat::random_nonzero_int(&mut rng, 9), 5).unwrap();
        let (_, lpoly) = sym2_satake(&sp);
        assert_eq!(lpoly.degree(), n * (n + 1) / 2, "n={n}");
    }
    for (n1, n2) in [(1usize, 1usize), (1, 2), (2, 2)] {
        let blocks = levi_restriction_blocks(n1, n2);
        for _ in 0..20 {
            let g1 = loop {
                let g = Mat::random_int(&mut rng, n1, n1, 5);
                if !g.det_bareiss().unwrap().is_zero() {
                    break g;
                }
            };
            let g2 = loop {
                let g = Mat::random_int(&mut rng, n2, n2, 5);
                if !g.det_bareiss().unwrap().is_zero() {
                    break g;
                }
            };
            let mut g = Mat::<Rat>::zero(n1 + n2, n1 + n2);
            g.set_block(0, 0, &g1);
            g.set_block(n1, n1, &g2);
            let m = levi_elt(&g, &Rat::random_nonzero_int(&mut rng, 7)).unwrap();
            assert!(subspace_invariant(&m, &blocks.off_diagonal), "({n1},{n2})");
            assert!(subspace_invariant(&m, &blocks.upper_sym), "({n1},{n2})");
            assert!(subspace_invariant(&m, &blocks.lower_sym), "({n1},{n2})");
        }
    }
    pass(7, "Ad eigenvalues = Satake multiset (n<=4), L-degree, Levi-block invariance", t);
}

#[test]
fn criterion_08_weyl_combinatorics() {
    let t = Instant::now();
    for n in 1..=6 {
        let set = bessel_set(n).unwrap();
        assert_eq!(set.len(), 1 << (n - 1), "|B(GL_{n})|");
        for b in &set {
            // definition equivalence: brute-force condition vs w_G w_M
            assert_eq!(b.weyl, bessel_from_composition(n, &b.levi), "n={n}");
            let (plus, minus) = u_splitting(&b.weyl);
            assert_eq!(plus.len() + minus.len(), n * (n - 1) / 2, "partition n={n}");
            assert_eq!(plus, levi_roots(&b.levi), "U_w^+ = U_M n={n}");
        }
        if n <= 5 {
            for w in &set {
                for wp in &set {
                    if let Ok(d) = bessel_distance(w, wp) {
                        assert_eq!(bessel_distance_chain(n, w, wp).unwrap(), d, "n={n}");
                    }
                }
            }
        }
    }
    assert!(t.elapsed().as_secs() < 30, "time budget: < 30 s");
    pass(8, "|B(GL_n)| = 2^(n-1), definition equivalence, chain distance, U_w splitting", t);
}

#[test]
fn criterion_09_psi_compatibility() {
    let t = Instant::now();
    assert!(psi_compat_symbolic_n2(), "symbolic n = 2");
    let mut rng = ChaCha12Rng::seed_from_u64(0xACC9);
    for n in 2..=6 {
        for _ in 0..100 {
            let u = Mat::random_unipotent(&mut rng, n, 7);
            assert!(psi_compat_check(n, &u).unwrap(), "n={n}");
        }
    }
    pass(9, "psi-compatibility of w_0: symbolic at n = 2 and 100 random u' for n <= 6", t);
}

#[test]
fn criterion_10_twisted_centralizer() {
    let t = Instant::now();
    for n in 2..=3 {
        let v = twisted_centralizer_symbolic(n, 3).unwrap();
        assert!(v.trivial, "symbolic n={n}");
    }
    let mut rng = ChaCha12Rng::seed_from_u64(0xACCA);
    for n in 4..=5 {
        let rep = CanonicalRep::random(&mut rng, n, 9);
        let v = twisted_centralizer_randomized(&rep, 1000, &mut rng).unwrap();
        assert!(v.trivial, "randomized n={n}");
    }
    pass(10, "twisted centralizer: symbolic triviality n = 2,3; 10^3 non-members n = 4,5", t);
}

#[test]
fn criterion_11_mellin_ledger() {
    let t = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0xACCB);
    for n in 2..=10 {
        let ledger = d_substitution(n).unwrap();
        // exact affine functions throughout
        assert_eq!(ledger.tau.len(), n - 1);
        // the displayed closed form evaluates as an exact affine function...
        let disp = nu_displayed(n);
        assert_eq!(disp, ledger.nu_displayed);
        // ...but provably differs from the exact |1/2|-ledger: the certified
        // value is the s-free (n-1)(n-2)/2, and the discrepancy is pinned
        assert_eq!(
            ledger.nu,
            AffineExp::constant(Rat::from_int(((n as i64 - 1) * (n as i64 - 2)) / 2)),
            "n={n}"
        );
        assert!(
            !ledger.nu_matches_displayed,
            "characterized displayed-form deviation n={n}"
        );
        // two-point valuation oracle pins tau
        if n <= 8 {
            for _ in 0..5 {
                let rep = CanonicalRep::random(&mut rng, n, 50);
                for p in [2u64, 3, 5, 7] {
                    for s in [Rat::zero(), Rat::one()] {
                        assert!(valuation_oracle_check(&rep, p, &s).unwrap(), "n={n} p={p}");
                    }
                }
                let o = omega_argument_check(&rep).unwrap();
                assert_eq!(o.true_constant, Rat::new(1, 4), "n={n}");
            }
        }
        // s = 0 slice agrees with the measure ledger
        let v = integrand_exponents(n).unwrap();
        let q = quotient_measure_exponents(n);
        for i in 1..n {
            assert_eq!(
                v[&format!("a{i}")].at(&Rat::zero()),
                Rat::from_int(q.k[i - 1]),
                "n={n} i={i}"
            );
        }
    }
    pass(
        11,
        "Mellin ledger: exact affine nu/tau, valuation oracle, s = 0 slice (displayed nu deviation pinned)",
        t,
    );
}

#[test]
fn criterion_12_determinism() {
    let t = Instant::now();
    let cfg = SuiteConfig {
        suite: SuiteName::All,
        n_lo: 2,
        n_hi: 3,
        prime: 5,
        trials: 3,
        seed: 20260810,
        symbolic_max_n: 3,
    };
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json(), "byte-identical reports");
    assert_eq!(a.total_failures(), 0);
    pass(12, "identical configs yield byte-identical reports (wall_time aside)", t);
}
