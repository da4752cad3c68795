//! Stability oracle invariants: invariance under the group action and
//! under positive rescaling of the parameter, and agreement of the
//! closed-form subspace-quiver criterion with the exhaustive oracle on the
//! full point enumerations.

use std::sync::Arc;

use qml_core::{
    check_stability, enumerate_group, enumerate_reps, subspace_quiver, subspace_quiver_criterion,
    subspace_theta, Budget, DimVector, Matrix, Quiver, Representation, StabilityParam,
    StabilityVerdict, F2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict_class<K>(v: &StabilityVerdict<K>) -> u8 {
    match v {
        StabilityVerdict::Stable => 2,
        StabilityVerdict::SemistableNotStable(_) => 1,
        StabilityVerdict::Unstable(_) => 0,
        StabilityVerdict::ThetaNonzero(_) => 3,
    }
}

#[test]
fn verdicts_are_constant_on_group_orbits() {
    let q = Arc::new(subspace_quiver(3));
    let alpha = DimVector(vec![1, 1, 1, 2]);
    let theta = subspace_theta(&q, &[1, 1, 1], 2).unwrap();
    let mut b = Budget::standard();
    let reps = enumerate_reps::<F2>(&q, &alpha, &mut b).unwrap();
    let group = enumerate_group::<F2>(&alpha.0, &mut b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let m = &reps[rng.gen_range(0..reps.len())];
        let g = &group[rng.gen_range(0..group.len())];
        let v1 = check_stability(m, &theta, &mut b).unwrap();
        let v2 = check_stability(&m.transform(g).unwrap(), &theta, &mut b).unwrap();
        assert_eq!(verdict_class(&v1), verdict_class(&v2));
    }
}

#[test]
fn verdicts_are_invariant_under_positive_rescaling() {
    let q = Arc::new(subspace_quiver(3));
    let alpha = DimVector(vec![1, 1, 1, 2]);
    let theta = subspace_theta(&q, &[1, 1, 1], 2).unwrap();
    let mut b = Budget::standard();
    for m in enumerate_reps::<F2>(&q, &alpha, &mut b).unwrap() {
        let v1 = check_stability(&m, &theta, &mut b).unwrap();
        for k in [2, 3] {
            let v2 = check_stability(&m, &theta.scale(k), &mut b).unwrap();
            assert_eq!(verdict_class(&v1), verdict_class(&v2));
        }
    }
}

fn criterion_agrees_on_all_points(m_count: usize) {
    let q = Arc::new(subspace_quiver(m_count));
    let mut dims = vec![1usize; m_count];
    dims.push(2);
    let alpha = DimVector(dims);
    let weights = vec![1i64; m_count];
    let theta = subspace_theta(&q, &weights, 2).unwrap();
    let mut b = Budget::standard();
    let reps = enumerate_reps::<F2>(&q, &alpha, &mut b).unwrap();
    assert_eq!(reps.len(), 1 << (2 * m_count));
    for m in &reps {
        let oracle = check_stability(m, &theta, &mut b).unwrap();
        let closed = subspace_quiver_criterion(m, &weights).unwrap();
        assert_eq!(
            verdict_class(&oracle),
            verdict_class(&closed),
            "criterion mismatch on {:?}",
            m.maps()
        );
    }
}

#[test]
fn criterion_matches_oracle_on_all_64_points_m3() {
    criterion_agrees_on_all_points(3);
}

#[test]
fn criterion_matches_oracle_on_all_256_points_m4() {
    criterion_agrees_on_all_points(4);
}

#[test]
fn semistable_iff_nonzero_vectors_and_majority_spans() {
    // direct cross-check of the m = 3, n = 2 semistable count: the three
    // defining vectors must be nonzero with pairwise distinct spans
    let q = Arc::new(subspace_quiver(3));
    let alpha = DimVector(vec![1, 1, 1, 2]);
    let theta = subspace_theta(&q, &[1, 1, 1], 2).unwrap();
    let mut b = Budget::standard();
    let mut sst = 0;
    for m in enumerate_reps::<F2>(&q, &alpha, &mut b).unwrap() {
        if check_stability(&m, &theta, &mut b).unwrap().is_semistable() {
            sst += 1;
        }
    }
    // 3 choices of nonzero vector per source, all spans distinct: 3! = 6
    assert_eq!(sst, 6);
}

#[test]
fn unstable_witness_is_an_invariant_subrepresentation() {
    let q = Arc::new(subspace_quiver(3));
    let alpha = DimVector(vec![1, 1, 1, 2]);
    let theta = subspace_theta(&q, &[1, 1, 1], 2).unwrap();
    let mut b = Budget::standard();
    for m in enumerate_reps::<F2>(&q, &alpha, &mut b).unwrap() {
        match check_stability(&m, &theta, &mut b).unwrap() {
            StabilityVerdict::Unstable(w) => {
                assert!(w.theta_value > 0);
                assert_eq!(w.theta_value, theta.value(&w.dim));
                // invariance of the witness tuple
                for (ai, a) in q.arrows().iter().enumerate() {
                    let image = w.spaces[a.src].apply(m.map(ai));
                    assert!(w.spaces[a.dst].contains(&image));
                }
            }
            StabilityVerdict::SemistableNotStable(w) => {
                assert_eq!(w.theta_value, 0);
            }
            _ => {}
        }
    }
}

#[test]
fn zero_theta_admits_everything() {
    let q = Arc::new(Quiver::new(
        vec!["x".into(), "y".into()],
        vec![("a".into(), "x".into(), "y".into())],
    )
    .unwrap());
    let theta = StabilityParam::zeros(2);
    let mut b = Budget::standard();
    let m = Representation::<F2>::new(
        q,
        DimVector(vec![1, 1]),
        vec![Matrix::from_int_rows(&[&[1]])],
    )
    .unwrap();
    assert!(check_stability(&m, &theta, &mut b).unwrap().is_semistable());
}
