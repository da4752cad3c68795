//! The linearly oriented type-A specialization: Zelevinsky and dual
//! Zelevinsky matrices, flags, Schubert-type membership predicates, and the
//! exhaustive bijection check between representations and the corresponding
//! flag loci.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grassmannian::SubspaceTuple;
use crate::matrix::Matrix;
use crate::quiver::{linear_quiver, DimVector, Quiver, StabilityParam};
use crate::rep::Representation;
use crate::stability::enumerate_reps;
use crate::subspace::{enumerate_subspaces, Subspace};

/// The chain of vertex indices of a linearly oriented type-A quiver, or an
/// error if the quiver has a different shape.
pub fn linear_chain(q: &Quiver) -> Result<Vec<usize>> {
    let n = q.num_vertices();
    if q.arrows().len() + 1 != n {
        return Err(Error::WrongQuiverShape(
            "expected a linearly oriented type-A quiver".into(),
        ));
    }
    let chain = q.topological_order().to_vec();
    for (k, a) in q.arrows().iter().enumerate() {
        if a.src != chain[k] || a.dst != chain[k + 1] {
            return Err(Error::WrongQuiverShape(
                "arrows must form a single oriented chain".into(),
            ));
        }
    }
    Ok(chain)
}

/// Block lower-triangular matrix with identity diagonal whose (i,j)-block,
/// i > j, is the composite arrow map from vertex j to vertex i. Invertible
/// by construction.
pub fn zelevinsky_g<K: Field>(m: &Representation<K>) -> Result<Matrix<K>> {
    let chain = linear_chain(m.quiver())?;
    let n = chain.len();
    let grid: Vec<Vec<Matrix<K>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (ri, cj) = (m.dim_at(chain[i]), m.dim_at(chain[j]));
                    if i == j {
                        Matrix::identity(ri)
                    } else if i > j {
                        let p = &m.quiver().paths(chain[j], chain[i])[0];
                        m.path_map(p)
                    } else {
                        Matrix::zeros(ri, cj)
                    }
                })
                .collect()
        })
        .collect();
    Matrix::block_assemble(&grid)
}

/// Block bidiagonal matrix with identity diagonal and the negated arrow
/// maps on the subdiagonal.
pub fn dual_zelevinsky_h<K: Field>(m: &Representation<K>) -> Result<Matrix<K>> {
    let chain = linear_chain(m.quiver())?;
    let n = chain.len();
    let grid: Vec<Vec<Matrix<K>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (ri, cj) = (m.dim_at(chain[i]), m.dim_at(chain[j]));
                    if i == j {
                        Matrix::identity(ri)
                    } else if i == j + 1 {
                        m.map(j).neg()
                    } else {
                        Matrix::zeros(ri, cj)
                    }
                })
                .collect()
        })
        .collect();
    Matrix::block_assemble(&grid)
}

/// A partial flag `F_1 <= ... <= F_n` of the total space, in canonical
/// subspace form; the dimension profile is the running sum of alpha.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagPoint<K> {
    pub steps: Vec<Subspace<K>>,
}

impl<K: Field> FlagPoint<K> {
    pub fn transform(&self, g: &Matrix<K>) -> FlagPoint<K> {
        FlagPoint {
            steps: self.steps.iter().map(|s| s.apply(g)).collect(),
        }
    }
}

fn prefix_dims(alpha: &DimVector) -> Vec<usize> {
    let mut acc = 0;
    alpha
        .0
        .iter()
        .map(|&a| {
            acc += a;
            acc
        })
        .collect()
}

/// The flag of leading column spans of an invertible matrix. Two matrices
/// produce the same flag exactly when they differ by a block
/// upper-triangular factor on the right.
pub fn flag_of_matrix<K: Field>(g: &Matrix<K>, alpha: &DimVector) -> Result<FlagPoint<K>> {
    if !g.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let dims = prefix_dims(alpha);
    let total = alpha.norm1();
    if g.rows() != total {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, expected {total}x{total}",
            g.rows(),
            g.cols()
        )));
    }
    let steps = dims
        .iter()
        .map(|&d| Subspace::from_col_span(&g.submatrix(0, total, 0, d)))
        .collect();
    Ok(FlagPoint { steps })
}

/// The standard flag: coordinate subspaces on the leading blocks.
pub fn standard_flag<K: Field>(alpha: &DimVector) -> FlagPoint<K> {
    let total = alpha.norm1();
    FlagPoint {
        steps: prefix_dims(alpha)
            .iter()
            .map(|&d| Subspace::coordinate_span(total, 0, d))
            .collect(),
    }
}

/// The complementary coordinate subspace to the i-th standard step
/// (1-indexed): the span of the trailing coordinates.
pub fn standard_complement<K: Field>(alpha: &DimVector, i: usize) -> Subspace<K> {
    let total = alpha.norm1();
    let d = prefix_dims(alpha)[i - 1];
    Subspace::coordinate_span(total, d, total)
}

/// Membership in the closed condition `F_i >= E_{i-1}` for i = 2..n.
pub fn in_omega<K: Field>(f: &FlagPoint<K>, alpha: &DimVector) -> bool {
    let e = standard_flag::<K>(alpha);
    (1..f.steps.len()).all(|i| f.steps[i].contains(&e.steps[i - 1]))
}

/// Membership in the closed condition `F_i <= E_{i+1}` for i = 1..n-1.
pub fn in_upsilon<K: Field>(f: &FlagPoint<K>, alpha: &DimVector) -> bool {
    let e = standard_flag::<K>(alpha);
    (0..f.steps.len() - 1).all(|i| e.steps[i + 1].contains(&f.steps[i]))
}

/// Membership in the opposite open cell: `F_i` meets the complementary
/// coordinate space trivially for every i.
pub fn in_opposite_cell<K: Field>(f: &FlagPoint<K>, alpha: &DimVector) -> bool {
    (1..=f.steps.len()).all(|i| {
        f.steps[i - 1].meets_trivially(&standard_complement::<K>(alpha, i))
    })
}

/// Chain constraint used to prune flag enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagConstraint {
    None,
    Omega,
    Upsilon,
}

/// All flags with the profile of `alpha` over a finite field, extending
/// step by step through quotient lifting and pruning by the chosen closed
/// condition as soon as it applies.
pub fn enumerate_flags<K: Field>(
    alpha: &DimVector,
    constraint: FlagConstraint,
    budget: &mut Budget,
) -> Result<Vec<FlagPoint<K>>> {
    let total = alpha.norm1();
    let e = standard_flag::<K>(alpha);
    let n = alpha.len();
    let mut partial: Vec<Vec<Subspace<K>>> = vec![Vec::new()];
    for i in 1..=n {
        let step_dim = alpha.0[i - 1];
        let mut next = Vec::new();
        for flag in &partial {
            let prev = flag
                .last()
                .cloned()
                .unwrap_or_else(|| Subspace::zero(total));
            let quot = prev.kernel_presentation();
            for w in enumerate_subspaces::<K>(total - prev.dim(), step_dim, budget)? {
                budget.charge(1)?;
                let lifted = Subspace::from_col_span(
                    &w.kernel_presentation().matmul(&quot).kernel_basis(),
                );
                let ok = match constraint {
                    FlagConstraint::None => true,
                    FlagConstraint::Omega => i < 2 || lifted.contains(&e.steps[i - 2]),
                    FlagConstraint::Upsilon => i > n - 1 || e.steps[i].contains(&lifted),
                };
                if ok {
                    let mut extended = flag.clone();
                    extended.push(lifted);
                    next.push(extended);
                }
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|steps| FlagPoint { steps })
        .collect())
}

/// Flag attached to a point of the subrepresentation Grassmannian of the
/// full injective: each step is the preimage of the chosen subspace under
/// the composite arrow map from the first vertex.
pub fn flag_from_subrep_point<K: Field>(
    ambient: &Representation<K>,
    pt: &SubspaceTuple<K>,
) -> Result<FlagPoint<K>> {
    let chain = linear_chain(ambient.quiver())?;
    let steps = chain
        .iter()
        .map(|&v| {
            let p = &ambient.quiver().paths(chain[0], v)[0];
            pt.spaces[v].preimage_under(&ambient.path_map(p))
        })
        .collect();
    Ok(FlagPoint { steps })
}

/// Flag attached to a point of the quotient Grassmannian of the full
/// projective (stored as kernels): the i-th step embeds the kernel at
/// vertex i+1 into the total space along the composite arrow map; the last
/// step is the whole space.
pub fn flag_from_quotient_point<K: Field>(
    ambient: &Representation<K>,
    pt: &SubspaceTuple<K>,
) -> Result<FlagPoint<K>> {
    let chain = linear_chain(ambient.quiver())?;
    let n = chain.len();
    let last = chain[n - 1];
    let total = ambient.dim_at(last);
    let mut steps: Vec<Subspace<K>> = (1..n)
        .map(|k| {
            let v = chain[k];
            let p = &ambient.quiver().paths(v, last)[0];
            pt.spaces[v].apply(&ambient.path_map(p))
        })
        .collect();
    steps.push(Subspace::full(total));
    Ok(FlagPoint { steps })
}

#[derive(Debug, Clone)]
pub struct ZelevinskyReport {
    pub alpha: String,
    pub field: String,
    pub rep_count: u64,
    pub omega_cell_count: u64,
    pub upsilon_cell_count: u64,
    pub zeta_bijective: bool,
    pub eta_bijective: bool,
    pub grassmannian_consistency: bool,
    pub failures: Vec<String>,
}

impl ZelevinskyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "zelevinsky",
            "alpha": self.alpha,
            "field": self.field,
            "representations": self.rep_count,
            "omega_cell_flags": self.omega_cell_count,
            "upsilon_cell_flags": self.upsilon_cell_count,
            "zeta_bijective": self.zeta_bijective,
            "eta_bijective": self.eta_bijective,
            "grassmannian_consistency": self.grassmannian_consistency,
            "failures": self.failures,
            "pass": self.passed(),
        })
    }
}

/// Exhaustively check that the Zelevinsky matrix map is a bijection from
/// the representation space onto the flags satisfying the closed condition
/// intersected with the opposite cell, dually for the subdiagonal map, and
/// that both agree with the canonical Grassmannian maps at trivial
/// stability.
pub fn verify_zelevinsky_bijection<K: Field>(
    alpha: &DimVector,
    budget: &mut Budget,
) -> Result<ZelevinskyReport> {
    let n = alpha.len();
    let quiver = Arc::new(linear_quiver(n));
    let theta = StabilityParam::zeros(n);
    let reps = enumerate_reps::<K>(&quiver, alpha, budget)?;
    let mut failures = Vec::new();

    let omega_flags: Vec<FlagPoint<K>> =
        enumerate_flags::<K>(alpha, FlagConstraint::Omega, budget)?
            .into_iter()
            .filter(|f| in_opposite_cell(f, alpha))
            .collect();
    let upsilon_flags: Vec<FlagPoint<K>> =
        enumerate_flags::<K>(alpha, FlagConstraint::Upsilon, budget)?
            .into_iter()
            .filter(|f| in_opposite_cell(f, alpha))
            .collect();

    let mut zeta_images = std::collections::BTreeSet::new();
    let mut eta_images = std::collections::BTreeSet::new();
    let mut consistency = true;

    for m in &reps {
        budget.charge(1)?;
        let g = zelevinsky_g(m)?;
        let zf = flag_of_matrix(&g, alpha)?;
        if !in_omega(&zf, alpha) || !in_opposite_cell(&zf, alpha) {
            failures.push(format!("zeta image escapes its cell for M={:?}", m.maps()));
        }
        if !zeta_images.insert(zf.clone()) {
            failures.push("zeta is not injective".into());
        }
        let h = dual_zelevinsky_h(m)?;
        let ef = flag_of_matrix(&h, alpha)?;
        if !in_upsilon(&ef, alpha) || !in_opposite_cell(&ef, alpha) {
            failures.push(format!("eta image escapes its cell for M={:?}", m.maps()));
        }
        if !eta_images.insert(ef.clone()) {
            failures.push("eta is not injective".into());
        }

        // agreement with the Grassmannian maps
        let psi_pt = crate::correspondence::gm_psi(m, &theta, budget)?;
        let (i_full, _, _) = crate::rep::canonical_psi(m, &theta);
        let from_sub = flag_from_subrep_point(&i_full, &psi_pt)?;
        if from_sub != zf {
            consistency = false;
            failures.push(format!(
                "subrepresentation flag disagrees with the matrix flag for M={:?}",
                m.maps()
            ));
        }
        let phi_pt = crate::correspondence::gm_phi(m, &theta, budget)?;
        let (p_full, _, _) = crate::rep::canonical_phi(m, &theta);
        let from_quot = flag_from_quotient_point(&p_full, &phi_pt)?;
        if from_quot != ef {
            consistency = false;
            failures.push(format!(
                "quotient flag disagrees with the matrix flag for M={:?}",
                m.maps()
            ));
        }
    }

    let omega_set: std::collections::BTreeSet<_> = omega_flags.iter().cloned().collect();
    let upsilon_set: std::collections::BTreeSet<_> = upsilon_flags.iter().cloned().collect();
    let zeta_bijective = zeta_images == omega_set;
    let eta_bijective = eta_images == upsilon_set;
    if !zeta_bijective {
        failures.push(format!(
            "zeta images ({}) do not exhaust the omega cell ({})",
            zeta_images.len(),
            omega_set.len()
        ));
    }
    if !eta_bijective {
        failures.push(format!(
            "eta images ({}) do not exhaust the upsilon cell ({})",
            eta_images.len(),
            upsilon_set.len()
        ));
    }

    Ok(ZelevinskyReport {
        alpha: alpha.to_string(),
        field: K::spec().to_string(),
        rep_count: reps.len() as u64,
        omega_cell_count: omega_set.len() as u64,
        upsilon_cell_count: upsilon_set.len() as u64,
        zeta_bijective,
        eta_bijective,
        grassmannian_consistency: consistency,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, Rat};

    fn linear_rep<K: Field>(alpha: &[usize], maps: Vec<Matrix<K>>) -> Representation<K> {
        let q = Arc::new(linear_quiver(alpha.len()));
        Representation::new(q, DimVector(alpha.to_vec()), maps).unwrap()
    }

    #[test]
    fn zelevinsky_matrix_small() {
        let m = linear_rep::<Rat>(&[1, 1], vec![Matrix::from_int_rows(&[&[5]])]);
        assert_eq!(
            zelevinsky_g(&m).unwrap(),
            Matrix::from_int_rows(&[&[1, 0], &[5, 1]])
        );
        assert_eq!(
            dual_zelevinsky_h(&m).unwrap(),
            Matrix::from_int_rows(&[&[1, 0], &[-5, 1]])
        );
    }

    #[test]
    fn zelevinsky_matrix_products() {
        let m = linear_rep::<Rat>(
            &[1, 1, 1],
            vec![
                Matrix::from_int_rows(&[&[2]]),
                Matrix::from_int_rows(&[&[3]]),
            ],
        );
        assert_eq!(
            zelevinsky_g(&m).unwrap(),
            Matrix::from_int_rows(&[&[1, 0, 0], &[2, 1, 0], &[6, 3, 1]])
        );
        assert_eq!(
            dual_zelevinsky_h(&m).unwrap(),
            Matrix::from_int_rows(&[&[1, 0, 0], &[-2, 1, 0], &[0, -3, 1]])
        );
    }

    #[test]
    fn zero_representation_gives_identity() {
        let m = linear_rep::<F2>(&[1, 2, 1], vec![Matrix::zeros(2, 1), Matrix::zeros(1, 2)]);
        assert!(zelevinsky_g(&m).unwrap().is_identity());
        assert!(dual_zelevinsky_h(&m).unwrap().is_identity());
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let q = Arc::new(crate::quiver::subspace_quiver(3));
        let m = Representation::<F2>::zero(q, DimVector(vec![1, 1, 1, 2]));
        assert!(matches!(
            zelevinsky_g(&m),
            Err(Error::WrongQuiverShape(_))
        ));
    }

    #[test]
    fn flag_of_identity_is_standard() {
        let alpha = DimVector(vec![1, 2, 1]);
        let id = Matrix::<F2>::identity(4);
        assert_eq!(
            flag_of_matrix(&id, &alpha).unwrap(),
            standard_flag::<F2>(&alpha)
        );
    }

    #[test]
    fn flag_invariant_under_block_upper_factor() {
        let alpha = DimVector(vec![1, 1, 1]);
        let m = linear_rep::<F2>(
            &[1, 1, 1],
            vec![Matrix::identity(1), Matrix::identity(1)],
        );
        let g = zelevinsky_g(&m).unwrap();
        // block upper unipotent factor
        let u = Matrix::<F2>::from_int_rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(
            flag_of_matrix(&g, &alpha).unwrap(),
            flag_of_matrix(&g.matmul(&u), &alpha).unwrap()
        );
        // singular input is rejected
        assert_eq!(
            flag_of_matrix(&Matrix::<F2>::zeros(3, 3), &alpha),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn standard_flag_memberships() {
        let alpha = DimVector(vec![1, 1, 1]);
        let e = standard_flag::<F2>(&alpha);
        assert!(in_omega(&e, &alpha));
        assert!(in_upsilon(&e, &alpha));
        assert!(in_opposite_cell(&e, &alpha));
    }

    #[test]
    fn zeta_image_first_step() {
        let m = linear_rep::<F2>(
            &[1, 1, 1],
            vec![Matrix::identity(1), Matrix::identity(1)],
        );
        let f = flag_of_matrix(&zelevinsky_g(&m).unwrap(), &DimVector(vec![1, 1, 1])).unwrap();
        assert!(f.steps[0].contains_vector(&[F2::new(1), F2::new(1), F2::new(1)]));
    }

    #[test]
    fn membership_of_the_two_images() {
        let alpha = DimVector(vec![1, 1, 1]);
        let mut b = Budget::standard();
        let q = Arc::new(linear_quiver(3));
        for m in enumerate_reps::<F2>(&q, &alpha, &mut b).unwrap() {
            let zf = flag_of_matrix(&zelevinsky_g(&m).unwrap(), &alpha).unwrap();
            assert!(in_omega(&zf, &alpha) && in_opposite_cell(&zf, &alpha));
            let ef = flag_of_matrix(&dual_zelevinsky_h(&m).unwrap(), &alpha).unwrap();
            assert!(in_upsilon(&ef, &alpha) && in_opposite_cell(&ef, &alpha));
        }
    }

    #[test]
    fn flag_enumeration_counts() {
        let alpha = DimVector(vec![1, 1, 1]);
        let mut b = Budget::standard();
        let all = enumerate_flags::<F2>(&alpha, FlagConstraint::None, &mut b).unwrap();
        // full flags in F_2^3: 7 lines, each in 3 planes
        assert_eq!(all.len(), 21);
        let omega = enumerate_flags::<F2>(&alpha, FlagConstraint::Omega, &mut b).unwrap();
        assert!(omega.iter().all(|f| in_omega(f, &alpha)));
        assert!(omega.len() < all.len());
    }

    #[test]
    fn bijection_on_single_vertex() {
        let alpha = DimVector(vec![1]);
        let mut b = Budget::standard();
        let report = verify_zelevinsky_bijection::<F2>(&alpha, &mut b).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.rep_count, 1);
        assert_eq!(report.omega_cell_count, 1);
    }

    #[test]
    fn bijection_on_a3() {
        let alpha = DimVector(vec![1, 1, 1]);
        let mut b = Budget::standard();
        let report = verify_zelevinsky_bijection::<F2>(&alpha, &mut b).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.rep_count, 4);
        assert_eq!(report.omega_cell_count, 4);
        assert_eq!(report.upsilon_cell_count, 4);
        assert!(report.zeta_bijective && report.eta_bijective);
        assert!(report.grassmannian_consistency);
    }
}
