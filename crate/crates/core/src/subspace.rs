//! Canonical subspaces of K^n and their exhaustive enumeration.
//!
//! A subspace is stored as the reduced row echelon form of a matrix whose
//! rows span it. Two subspaces are equal iff their stored bases are
//! bit-identical, which makes orbit hashing exact.


use crate::budget::Budget;
use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subspace<K> {
    ambient: usize,
    basis: Matrix<K>, // rref, no zero rows; rows() == dim
}

impl<K: Field> Subspace<K> {
    /// Subspace spanned by the rows of `m`.
    pub fn from_row_span(m: &Matrix<K>) -> Self {
        let r = m.rref();
        Subspace {
            ambient: m.cols(),
            basis: r.matrix.submatrix(0, r.rank, 0, m.cols()),
        }
    }

    /// Subspace spanned by the columns of `m`.
    pub fn from_col_span(m: &Matrix<K>) -> Self {
        Subspace::from_row_span(&m.transpose())
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical row basis (rref).
    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, other: &Subspace<K>) -> bool {
        assert_eq!(self.ambient, other.ambient);
        if other.dim() > self.dim() {
            return false;
        }
        self.basis.vstack(&other.basis).rank() == self.dim()
    }

    pub fn contains_vector(&self, v: &[K]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let row = Matrix::new(1, self.ambient, v.to_vec());
        self.basis.vstack(&row).rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace<K>) -> Subspace<K> {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_row_span(&self.basis.vstack(&other.basis))
    }

    pub fn intersection_dim(&self, other: &Subspace<K>) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn meets_trivially(&self, other: &Subspace<K>) -> bool {
        self.intersection_dim(other) == 0
    }

    /// Image of the subspace under the linear map `m` (column convention).
    pub fn apply(&self, m: &Matrix<K>) -> Subspace<K> {
        assert_eq!(m.cols(), self.ambient);
        Subspace::from_row_span(&self.basis.matmul(&m.transpose()))
    }

    /// A matrix `C` with the subspace as its kernel: `v` lies in the
    /// subspace iff `C v = 0`. Rows of `C` form a basis of the null space
    /// of the row basis, which cuts the subspace back out because the
    /// standard bilinear form is nondegenerate.
    pub fn kernel_presentation(&self) -> Matrix<K> {
        self.basis.kernel_basis().transpose()
    }

    /// Preimage `{ v : m v in self }` under the linear map `m`.
    pub fn preimage_under(&self, m: &Matrix<K>) -> Subspace<K> {
        assert_eq!(m.rows(), self.ambient);
        let c = self.kernel_presentation();
        Subspace::from_col_span(&c.matmul(m).kernel_basis())
    }

    /// Standard coordinate subspace spanned by `e_lo, ..., e_{hi-1}`.
    pub fn coordinate_span(ambient: usize, lo: usize, hi: usize) -> Subspace<K> {
        let mut basis = Matrix::zeros(hi - lo, ambient);
        for (r, c) in (lo..hi).enumerate() {
            basis[(r, c)] = K::one();
        }
        Subspace { ambient, basis }
    }
}

/// Gaussian binomial coefficient `[d choose k]_q`, saturating at u128::MAX.
pub fn gaussian_binomial(d: usize, k: usize, q: u64) -> u128 {
    if k > d {
        return 0;
    }
    // prod_{i=0}^{k-1} (q^{d-i} - 1) / (q^{i+1} - 1), computed exactly by
    // interleaving multiplications and divisions.
    let mut num: u128 = 1;
    for i in 0..k {
        let top = pow_sat(q as u128, (d - i) as u32).saturating_sub(1);
        let bot = pow_sat(q as u128, (i + 1) as u32) - 1;
        num = num.saturating_mul(top) / bot;
    }
    num
}

fn pow_sat(b: u128, e: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(b);
    }
    acc
}

/// All `k`-dimensional subspaces of K^d, in canonical order: pivot column
/// sets ascending lexicographically, then free entries in odometer order.
///
/// The count always matches the Gaussian binomial `[d choose k]_q`.
pub fn enumerate_subspaces<K: Field>(d: usize, k: usize, budget: &mut Budget) -> Result<Vec<Subspace<K>>> {
    let elems = K::elements().expect("subspace enumeration needs a finite field");
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    enumerate_pivot_sets(d, k, 0, &mut pivots, &mut |piv| {
        // Free positions: (row r, col c) with c > piv[r] and c not a pivot.
        let mut free = Vec::new();
        for (r, &p) in piv.iter().enumerate() {
            for c in p + 1..d {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let mut assignment = vec![0usize; free.len()];
        loop {
            budget.charge(1)?;
            let mut basis = Matrix::zeros(k, d);
            for (r, &p) in piv.iter().enumerate() {
                basis[(r, p)] = K::one();
            }
            for (slot, &(r, c)) in free.iter().enumerate() {
                basis[(r, c)] = elems[assignment[slot]].clone();
            }
            out.push(Subspace { ambient: d, basis });
            // odometer, last position fastest
            let mut i = free.len();
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                assignment[i] += 1;
                if assignment[i] < elems.len() {
                    break;
                }
                assignment[i] = 0;
            }
        }
    })?;
    Ok(out)
}

/// All subspaces of K^d of every dimension, ascending by dimension.
pub fn enumerate_all_subspaces<K: Field>(d: usize, budget: &mut Budget) -> Result<Vec<Subspace<K>>> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(enumerate_subspaces::<K>(d, k, budget)?);
    }
    Ok(out)
}

fn enumerate_pivot_sets(
    d: usize,
    k: usize,
    start: usize,
    acc: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if acc.len() == k {
        return f(acc);
    }
    let remaining = k - acc.len();
    for c in start..=d.saturating_sub(remaining) {
        acc.push(c);
        enumerate_pivot_sets(d, k, c + 1, acc, f)?;
        acc.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::field::{F2, F3};

    #[test]
    fn lines_in_f2_squared() {
        let mut b = Budget::standard();
        let subs = enumerate_subspaces::<F2>(2, 1, &mut b).unwrap();
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn lines_in_f3_squared() {
        // Gaussian binomial (3^2-1)/(3-1) = 4.
        let mut b = Budget::standard();
        let subs = enumerate_subspaces::<F3>(2, 1, &mut b).unwrap();
        assert_eq!(subs.len(), 4);
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
    }

    #[test]
    fn dim_zero_is_the_zero_subspace() {
        let mut b = Budget::standard();
        let subs = enumerate_subspaces::<F2>(3, 0, &mut b).unwrap();
        assert_eq!(subs, vec![Subspace::zero(3)]);
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        let mut b = Budget::standard();
        for d in 0..=4 {
            for k in 0..=d {
                let n2 = enumerate_subspaces::<F2>(d, k, &mut b).unwrap().len();
                assert_eq!(n2 as u128, gaussian_binomial(d, k, 2), "d={d} k={k} q=2");
                let n3 = enumerate_subspaces::<F3>(d, k, &mut b).unwrap().len();
                assert_eq!(n3 as u128, gaussian_binomial(d, k, 3), "d={d} k={k} q=3");
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let mut b = Budget::standard();
        let subs = enumerate_all_subspaces::<F2>(3, &mut b).unwrap();
        let set: std::collections::BTreeSet<_> = subs.iter().cloned().collect();
        assert_eq!(set.len(), subs.len());
    }

    #[test]
    fn budget_exhaustion_reported() {
        let mut b = Budget::new(1);
        assert!(matches!(
            enumerate_subspaces::<F2>(2, 1, &mut b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let a = Subspace::<F2>::from_row_span(&Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 1]]));
        let b = Subspace::<F2>::from_row_span(&Matrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(a, b);
    }

    #[test]
    fn preimage_and_kernel_presentation() {
        // Projection (x,y,z) -> (y,z); preimage of span{(1,0)} is span{e1, e2}.
        let proj = Matrix::<F3>::from_int_rows(&[&[0, 1, 0], &[0, 0, 1]]);
        let target = Subspace::from_row_span(&Matrix::from_int_rows(&[&[1, 0]]));
        let pre = target.preimage_under(&proj);
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains_vector(&[F3::new(1), F3::new(0), F3::new(0)]));
        assert!(pre.contains_vector(&[F3::new(0), F3::new(1), F3::new(0)]));
        assert!(!pre.contains_vector(&[F3::new(0), F3::new(0), F3::new(1)]));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::<F2>::from_row_span(&Matrix::from_int_rows(&[&[1, 0]]));
        let b = Subspace::<F2>::from_row_span(&Matrix::from_int_rows(&[&[0, 1]]));
        assert!(a.sum(&b).is_full());
        assert!(a.meets_trivially(&b));
        assert_eq!(a.intersection_dim(&a), 1);
    }
}
