//! Acceptance suite: one test per criterion, exhaustive where stated, with
//! zero tolerance on every count and identity. Each test prints a pass line
//! (visible with --nocapture).

use std::process::Command;
use std::sync::Arc;

use qml::{preset, run_suite, SuiteConfig};
use qml_core::{
    canonical_phi, canonical_psi, check_stability, default_n, enumerate_reps, ext_dim,
    ext_dim_via_resolution, euler_form, hom_dim, linear_quiver, rep::is_injective_from,
    rep::is_surjective_onto, subspace_quiver_criterion, verify_correspondence,
    verify_engel_reineke, verify_equivariance_random, verify_framed_stability, verify_saturation,
    verify_theta_pm, verify_zelevinsky_bijection, Budget, DimVector, Field, Matrix, Quiver,
    Representation, StabilityParam, StabilityVerdict, F2, F3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(criterion: &str) {
    println!("acceptance {criterion}: PASS");
}

fn random_rep<K: Field>(
    rng: &mut ChaCha8Rng,
    q: &Arc<Quiver>,
    max_dim: usize,
) -> Representation<K> {
    let elems = K::elements().unwrap();
    let dim = DimVector(
        (0..q.num_vertices())
            .map(|_| rng.gen_range(0..=max_dim))
            .collect(),
    );
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            Matrix::from_fn(dim.0[a.dst], dim.0[a.src], |_, _| {
                elems[rng.gen_range(0..elems.len())].clone()
            })
        })
        .collect();
    Representation::new(q.clone(), dim, maps).unwrap()
}

#[test]
fn c01_euler_hom_ext_identity_two_routes() {
    // 200 random pairs over F_2 and F_3 on the 3-subspace and A_3 quivers:
    // hom - ext(resolution route) = euler form, and both Ext routes agree,
    // exactly.
    fn sweep<K: Field>(q: &Arc<Quiver>, pairs: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let m = random_rep::<K>(&mut rng, q, 2);
            let n = random_rep::<K>(&mut rng, q, 2);
            let h = hom_dim(&m, &n) as i64;
            let via_res = ext_dim_via_resolution(&m, &n) as i64;
            let via_euler = ext_dim(&m, &n) as i64;
            assert_eq!(via_res, via_euler, "Ext routes disagree");
            assert_eq!(h - via_res, euler_form(q, m.dim(), n.dim()));
        }
    }
    let sub3 = Arc::new(qml_core::subspace_quiver(3));
    let a3 = Arc::new(linear_quiver(3));
    sweep::<F2>(&sub3, 50, 101);
    sweep::<F3>(&sub3, 50, 102);
    sweep::<F2>(&a3, 50, 103);
    sweep::<F3>(&a3, 50, 104);
    pass("criterion 1 (Euler-Hom-Ext identity, both Ext routes, 200 pairs)");
}

#[test]
fn c02_semistable_points_have_surjective_cover_and_injective_envelope() {
    let p = preset("subspace-3-2").unwrap();
    let mut b = Budget::standard();
    let reps = enumerate_reps::<F2>(&p.quiver, &p.alpha, &mut b).unwrap();
    assert_eq!(reps.len(), 64);
    let mut semistable_seen = 0;
    for m in &reps {
        if !check_stability(m, &p.theta, &mut b).unwrap().is_semistable() {
            continue;
        }
        semistable_seen += 1;
        let (_, _, phi) = canonical_phi(m, &p.theta);
        assert!(is_surjective_onto(m, &phi), "cover not surjective at {m:?}");
        let (_, _, psi) = canonical_psi(m, &p.theta);
        assert!(is_injective_from(m, &psi), "envelope not injective at {m:?}");
    }
    assert!(semistable_seen > 0);
    pass(&format!(
        "criterion 2 (surjective cover / injective envelope on all {semistable_seen} semistable points of 64)"
    ));
}

#[test]
fn c03_closed_form_criterion_agrees_with_oracle() {
    for (name, count) in [("subspace-3-2", 64usize), ("subspace-4-2", 256)] {
        let p = preset(name).unwrap();
        let weights = vec![1i64; p.quiver.num_vertices() - 1];
        let mut b = Budget::standard();
        let reps = enumerate_reps::<F2>(&p.quiver, &p.alpha, &mut b).unwrap();
        assert_eq!(reps.len(), count);
        for m in &reps {
            let oracle = check_stability(m, &p.theta, &mut b).unwrap();
            let closed = subspace_quiver_criterion(m, &weights).unwrap();
            let classify = |v: &StabilityVerdict<F2>| (v.is_semistable(), v.is_stable());
            assert_eq!(classify(&oracle), classify(&closed), "mismatch on {m:?}");
        }
    }
    pass("criterion 3 (closed-form criterion = exhaustive oracle on 64 + 256 points)");
}

#[test]
fn c04_generation_cogeneration_four_way_equivalence() {
    let mut b = Budget::standard();
    // A_2 with alpha = (1,1), beta = (1,1)
    let a2 = Arc::new(linear_quiver(2));
    let r = verify_engel_reineke::<F2>(
        &a2,
        &DimVector(vec![1, 1]),
        &DimVector(vec![1, 1]),
        &mut b,
    )
    .unwrap();
    assert!(r.passed(), "A_2 failures: {:?}", r.failures);

    // the 3-subspace instance, framed on each side of the parameter split
    let p = preset("subspace-3-2").unwrap();
    let (plus, minus) = p.theta.split();
    for beta in [p.alpha.restricted(&plus), p.alpha.restricted(&minus)] {
        let r = verify_engel_reineke::<F2>(&p.quiver, &p.alpha, &beta, &mut b).unwrap();
        assert!(r.passed(), "failures at beta={beta}: {:?}", r.failures);
    }
    pass("criterion 4 (four-way equivalence on full framed enumerations)");
}

#[test]
fn c05_derived_parameters_robust_in_n() {
    let mut b = Budget::new(40_000_000);
    // A_2 with theta = (1,-1)
    let a2 = Arc::new(linear_quiver(2));
    let alpha2 = DimVector(vec![1, 1]);
    let theta2 = StabilityParam(vec![1, -1]);
    let n2 = default_n(&theta2, &alpha2);
    // the 3-subspace instance
    let p = preset("subspace-3-2").unwrap();
    let n3 = default_n(&p.theta, &p.alpha);
    assert_eq!(n3, 13);
    for dn in [0, 7] {
        let r = verify_theta_pm::<F2>(&a2, &alpha2, &theta2, n2 + dn, &mut b).unwrap();
        assert!(r.passed(), "A_2 theta-pm failures: {:?}", r.failures);
        let r = verify_framed_stability::<F2>(&a2, &alpha2, &theta2, n2 + dn, &mut b).unwrap();
        assert!(r.passed(), "A_2 framed-stability failures: {:?}", r.failures);
        let r = verify_theta_pm::<F2>(&p.quiver, &p.alpha, &p.theta, n3 + dn, &mut b).unwrap();
        assert!(r.passed(), "theta-pm failures: {:?}", r.failures);
        let r =
            verify_framed_stability::<F2>(&p.quiver, &p.alpha, &p.theta, n3 + dn, &mut b).unwrap();
        assert!(r.passed(), "framed-stability failures: {:?}", r.failures);
    }
    pass("criterion 5 (stability-locus equalities at N and N+7, both instances)");
}

#[test]
fn c06_equivariance_and_saturation() {
    let p = preset("subspace-3-2").unwrap();
    let mut b = Budget::new(40_000_000);
    let r = verify_equivariance_random::<F2>(&p.quiver, &p.alpha, &p.theta, 200, 7, &mut b)
        .unwrap();
    assert!(r.passed(), "equivariance failures: {:?}", r.failures);
    assert_eq!(r.checked, 200);
    let n = default_n(&p.theta, &p.alpha);
    let r = verify_saturation::<F2>(&p.quiver, &p.alpha, &p.theta, n, &mut b).unwrap();
    assert!(r.passed(), "saturation failures: {:?}", r.failures);
    pass("criterion 6 (equivariance on 200 random inputs; saturation both inclusions)");
}

#[test]
fn c07_orbit_level_correspondence() {
    let mut b = Budget::new(40_000_000);
    let p = preset("subspace-3-2").unwrap();
    let report = verify_correspondence::<F2>(&p.quiver, &p.alpha, &p.theta, &mut b).unwrap();
    assert!(report.passed(), "failures: {:?}", report.failures);
    assert_eq!(report.g_orbits_stable, 1);
    assert_eq!(report.phi_orbits_stable, 1);
    assert_eq!(report.psi_orbits_stable, 1);
    assert_eq!(report.pairing.len(), 1);

    let p4 = preset("subspace-4-2").unwrap();
    let report4 = verify_correspondence::<F2>(&p4.quiver, &p4.alpha, &p4.theta, &mut b).unwrap();
    assert!(report4.passed(), "failures: {:?}", report4.failures);
    let common = report4.g_orbits_stable;
    assert_eq!(report4.phi_orbits_stable, common);
    assert_eq!(report4.psi_orbits_stable, common);
    pass(&format!(
        "criterion 7 (three-way orbit counts: 1 on subspace-3-2, {common} on subspace-4-2, pairings inverse)"
    ));
}

#[test]
fn c08_zelevinsky_bijections() {
    let mut b = Budget::standard();
    let r = verify_zelevinsky_bijection::<F2>(&DimVector(vec![1, 1, 1]), &mut b).unwrap();
    assert!(r.passed(), "failures: {:?}", r.failures);
    assert_eq!(r.rep_count, 4);
    assert_eq!(r.omega_cell_count, 4);
    assert_eq!(r.upsilon_cell_count, 4);
    assert!(r.zeta_bijective && r.eta_bijective && r.grassmannian_consistency);

    let r = verify_zelevinsky_bijection::<F2>(&DimVector(vec![1, 2, 1]), &mut b).unwrap();
    assert!(r.passed(), "failures: {:?}", r.failures);
    assert_eq!(r.rep_count, 16);
    assert!(r.zeta_bijective && r.eta_bijective && r.grassmannian_consistency);
    pass("criterion 8 (both matrix maps bijective onto their cells: 4 of 4, 16 of 16)");
}

#[test]
fn c09_reports_are_byte_identical() {
    // in-process: two runs of the same seeded suite
    let p = preset("subspace-3-2").unwrap();
    let mut cfg = SuiteConfig::from_preset("all", &p);
    cfg.seed = Some(7);
    let a = serde_json::to_vec_pretty(&run_suite(&cfg).unwrap()).unwrap();
    let b = serde_json::to_vec_pretty(&run_suite(&cfg).unwrap()).unwrap();
    assert_eq!(a, b, "in-process reports differ");
    assert!(String::from_utf8(a.clone()).unwrap().contains("\"pass\": true"));

    // end to end through the binary
    let dir = std::env::temp_dir().join("qml-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let out1 = dir.join("r1.json");
    let out2 = dir.join("r2.json");
    for out in [&out1, &out2] {
        let status = Command::new(env!("CARGO_BIN_EXE_qml"))
            .args([
                "verify",
                "all",
                "--preset",
                "subspace-3-2",
                "--seed",
                "7",
                "--out",
            ])
            .arg(out)
            .status()
            .expect("binary runs");
        assert!(status.success(), "verify all must exit 0");
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "binary reports differ");
    pass("criterion 9 (seeded suite reports byte-identical, in-process and via the binary)");
}
