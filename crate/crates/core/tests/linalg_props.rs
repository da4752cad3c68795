//! Linear-algebra invariants: rank-nullity, canonical forms, subspace
//! counts.

use qml_core::{
    enumerate_subspaces, gaussian_binomial, Budget, Field, Matrix, Rat, Subspace, F2, F3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix<K: Field>(rng: &mut ChaCha8Rng, rows: usize, cols: usize, span: i64) -> Matrix<K> {
    Matrix::from_fn(rows, cols, |_, _| K::from_int(rng.gen_range(-span..=span)))
}

fn random_invertible<K: Field>(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Matrix<K> {
    loop {
        let m = random_matrix::<K>(rng, n, n, span);
        if m.is_invertible() {
            return m;
        }
    }
}

#[test]
fn rank_nullity_exhaustive_over_f2() {
    // every matrix up to 3x3 over F_2
    for rows in 0..=3usize {
        for cols in 0..=3usize {
            let entries = rows * cols;
            for code in 0..(1u32 << entries) {
                let m = Matrix::<F2>::from_fn(rows, cols, |r, c| {
                    F2::from_int((code >> (r * cols + c) & 1) as i64)
                });
                let rank = m.rank();
                let kernel = m.kernel_basis();
                assert_eq!(rank + kernel.cols(), cols, "rank-nullity for {m:?}");
                assert!(m.matmul(&kernel).is_zero());
                assert_eq!(m.image_basis().cols(), rank);
            }
        }
    }
}

#[test]
fn rref_is_invariant_under_invertible_row_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m = random_matrix::<F3>(&mut rng, rows, cols, 5);
        let g = random_invertible::<F3>(&mut rng, rows, 5);
        assert_eq!(g.matmul(&m).rref().matrix, m.rref().matrix);
    }
    // and over the rationals, where normalization actually divides
    for _ in 0..100 {
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=4);
        let m = random_matrix::<Rat>(&mut rng, rows, cols, 4);
        let g = random_invertible::<Rat>(&mut rng, rows, 3);
        assert_eq!(g.matmul(&m).rref().matrix, m.rref().matrix);
    }
}

#[test]
fn rref_idempotent_on_random_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let rows = rng.gen_range(0..=4);
        let cols = rng.gen_range(0..=4);
        let m = random_matrix::<F3>(&mut rng, rows, cols, 5);
        let r = m.rref();
        assert_eq!(r.matrix.rref(), r);
    }
}

#[test]
fn subspace_counts_match_gaussian_binomials_up_to_dim_four() {
    let mut b = Budget::standard();
    for d in 0..=4usize {
        for k in 0..=d {
            assert_eq!(
                enumerate_subspaces::<F2>(d, k, &mut b).unwrap().len() as u128,
                gaussian_binomial(d, k, 2)
            );
            assert_eq!(
                enumerate_subspaces::<F3>(d, k, &mut b).unwrap().len() as u128,
                gaussian_binomial(d, k, 3)
            );
        }
    }
}

#[test]
fn canonical_subspace_form_is_a_complete_invariant() {
    // two random bases of the same random subspace canonicalize equally
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=d);
        let basis = random_matrix::<F3>(&mut rng, k, d, 5);
        let s = Subspace::from_row_span(&basis);
        let g = random_invertible::<F3>(&mut rng, k, 5);
        let s2 = Subspace::from_row_span(&g.matmul(&basis));
        if s.dim() == k {
            assert_eq!(s, s2);
        }
    }
}

#[test]
fn inverse_roundtrip_and_determinant_multiplicativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let a = random_invertible::<Rat>(&mut rng, n, 3);
        let b = random_invertible::<Rat>(&mut rng, n, 3);
        assert!(a.matmul(&a.invert().unwrap()).is_identity());
        assert_eq!(a.matmul(&b).det(), a.det() * b.det());
    }
}
