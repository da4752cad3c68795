//! Vertex-wise general linear groups, characters, and orbit machinery.

use std::collections::BTreeSet;


use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::StabilityParam;

/// An element of a product of general linear groups, one block per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement<K> {
    pub blocks: Vec<Matrix<K>>,
}

impl<K: Field> GroupElement<K> {
    pub fn identity(dims: &[usize]) -> Self {
        GroupElement {
            blocks: dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn compose(&self, other: &Self) -> Self {
        GroupElement {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.matmul(b))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(GroupElement {
            blocks: self
                .blocks
                .iter()
                .map(Matrix::invert)
                .collect::<Result<_>>()?,
        })
    }

    pub fn scalar(dims: &[usize], t: &K) -> Self {
        GroupElement {
            blocks: dims.iter().map(|&d| Matrix::identity(d).scale(t)).collect(),
        }
    }
}

/// The character value `prod_i det(g_i)^(-theta_i)`.
///
/// The negative exponent matches the sign convention of the stability
/// definition used throughout.
pub fn character_value<K: Field>(theta: &StabilityParam, g: &GroupElement<K>) -> Result<K> {
    assert_eq!(theta.len(), g.blocks.len());
    let mut acc = K::one();
    for (b, &t) in g.blocks.iter().zip(&theta.0) {
        let d = b.det();
        let factor = d.pow_int(-t).ok_or(Error::SingularMatrix)?;
        acc = acc * factor;
    }
    Ok(acc)
}

/// All invertible n x n matrices over a finite field, in entry-odometer order.
pub fn enumerate_gl<K: Field>(n: usize, budget: &mut Budget) -> Result<Vec<Matrix<K>>> {
    let elems = K::elements().expect("GL enumeration needs a finite field");
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n * n];
    loop {
        budget.charge(1)?;
        let m = Matrix::from_fn(n, n, |r, c| elems[assignment[r * n + c]].clone());
        if m.is_invertible() {
            out.push(m);
        }
        let mut i = assignment.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < elems.len() {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// The full group `prod_i GL(d_i)` over a finite field.
pub fn enumerate_group<K: Field>(dims: &[usize], budget: &mut Budget) -> Result<Vec<GroupElement<K>>> {
    let per_vertex: Vec<Vec<Matrix<K>>> = dims
        .iter()
        .map(|&d| enumerate_gl::<K>(d, budget))
        .collect::<Result<_>>()?;
    let mut out = vec![GroupElement { blocks: Vec::new() }];
    for list in &per_vertex {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for g in &out {
            for b in list {
                budget.charge(1)?;
                let mut blocks = g.blocks.clone();
                blocks.push(b.clone());
                next.push(GroupElement { blocks });
            }
        }
        out = next;
    }
    Ok(out)
}

/// Partition `points` into orbits under the given action.
///
/// Orbits are sorted by their least element and listed with sorted members,
/// so the output is independent of the input order.
pub fn orbit_partition<P, G>(
    points: &[P],
    group: &[G],
    act: impl Fn(&G, &P) -> P,
) -> Vec<Vec<P>>
where
    P: Clone + Ord,
{
    let index: BTreeSet<P> = points.iter().cloned().collect();
    let mut seen: BTreeSet<P> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &index {
        if seen.contains(p) {
            continue;
        }
        let mut orbit: BTreeSet<P> = BTreeSet::new();
        for g in group {
            orbit.insert(act(g, p));
        }
        for q in &orbit {
            seen.insert(q.clone());
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{F2, F3, F5};
    use crate::quiver::DimVector;
    use num_traits::One;

    #[test]
    fn gl_sizes() {
        let mut b = Budget::standard();
        assert_eq!(enumerate_gl::<F2>(2, &mut b).unwrap().len(), 6);
        assert_eq!(enumerate_gl::<F3>(2, &mut b).unwrap().len(), 48);
        assert_eq!(enumerate_gl::<F2>(0, &mut b).unwrap().len(), 1);
        assert_eq!(enumerate_gl::<F3>(1, &mut b).unwrap().len(), 2);
    }

    #[test]
    fn group_size_is_product() {
        let mut b = Budget::standard();
        let g = enumerate_group::<F2>(&[1, 1, 2], &mut b).unwrap();
        assert_eq!(g.len(), 1 * 1 * 6);
        assert!(g.iter().all(GroupElement::is_valid));
    }

    #[test]
    fn character_of_identity_is_one() {
        let theta = StabilityParam(vec![3, -2]);
        let g = GroupElement::<F5>::identity(&[2, 1]);
        assert_eq!(character_value(&theta, &g).unwrap(), F5::one());
    }

    #[test]
    fn character_hand_computation() {
        // A_2, theta=(1,-1), g = (diag[2],[1]) over F_3: 2^{-1} = 2.
        let theta = StabilityParam(vec![1, -1]);
        let g = GroupElement {
            blocks: vec![
                Matrix::<F3>::from_int_rows(&[&[2]]),
                Matrix::<F3>::from_int_rows(&[&[1]]),
            ],
        };
        assert_eq!(character_value(&theta, &g).unwrap(), F3::new(2));
    }

    #[test]
    fn character_is_multiplicative() {
        let mut b = Budget::standard();
        let theta = StabilityParam(vec![2, -1]);
        let group = enumerate_group::<F3>(&[1, 2], &mut b).unwrap();
        for g in group.iter().step_by(7) {
            for h in group.iter().step_by(11) {
                let lhs = character_value(&theta, &g.compose(h)).unwrap();
                let rhs = character_value(&theta, g).unwrap() * character_value(&theta, h).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn character_trivial_on_scalars_when_theta_alpha_zero() {
        // theta(alpha) = 0 makes the character vanish on scalar elements.
        let alpha = DimVector(vec![1, 2]);
        let theta = StabilityParam(vec![2, -1]);
        assert_eq!(theta.value(&alpha), 0);
        for k in [F3::new(1), F3::new(2)] {
            let g = GroupElement::scalar(&alpha.0, &k);
            assert_eq!(character_value(&theta, &g).unwrap(), F3::one());
        }
        for k in [F5::new(1), F5::new(2), F5::new(3), F5::new(4)] {
            let g = GroupElement::<F5>::scalar(&alpha.0, &k);
            assert_eq!(character_value(&theta, &g).unwrap(), F5::one());
        }
    }

    #[test]
    fn orbit_partition_lines_under_gl2() {
        use crate::subspace::enumerate_subspaces;
        let mut b = Budget::standard();
        let lines = enumerate_subspaces::<F2>(2, 1, &mut b).unwrap();
        let gl = enumerate_gl::<F2>(2, &mut b).unwrap();
        let orbits = orbit_partition(&lines, &gl, |g, s| s.apply(g));
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].len(), 3);
    }
}
