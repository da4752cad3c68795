//! Quiver Grassmannians: invariant subspace tuples, their enumeration, the
//! multiplicity-space group action, and the identification maps that send a
//! framed representation to a point (kernel of the projective cover map,
//! image of the injective envelope map).
//!
//! Quotient-type points are always stored as subspaces of complementary
//! dimension (their kernels), never as quotient data.


use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::GroupElement;
use crate::matrix::Matrix;
use crate::quiver::DimVector;
use crate::rep::{
    framed_phi, framed_psi, is_injective_from, is_surjective_onto, LabeledBasis, Representation,
    VertexMaps,
};
use crate::subspace::{enumerate_subspaces, Subspace};

/// A point of a quiver Grassmannian: one canonical subspace per vertex,
/// compatible with all arrow maps of the ambient representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubspaceTuple<K> {
    pub spaces: Vec<Subspace<K>>,
}

impl<K: Field> SubspaceTuple<K> {
    pub fn dims(&self) -> DimVector {
        DimVector(self.spaces.iter().map(Subspace::dim).collect())
    }

    /// The defining condition: every arrow maps the subspace at its source
    /// into the subspace at its target.
    pub fn is_invariant(&self, ambient: &Representation<K>) -> bool {
        ambient
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| {
                self.spaces[a.dst].contains(&self.spaces[a.src].apply(ambient.map(ai)))
            })
    }
}

/// All points of `Gr_beta(M)` over a finite field.
///
/// Vertices are filled along the topological order with early pruning, so
/// the budget is charged per candidate subspace actually considered.
pub fn grassmannian_points<K: Field>(
    ambient: &Representation<K>,
    beta: &DimVector,
    budget: &mut Budget,
) -> Result<Vec<SubspaceTuple<K>>> {
    let order: Vec<usize> = ambient.quiver().topological_order().to_vec();
    points_in_order(ambient, beta, &order, budget)
}

/// Same point set computed with the vertices in reverse topological order;
/// an independent recount used by validation sweeps.
pub fn grassmannian_points_reversed<K: Field>(
    ambient: &Representation<K>,
    beta: &DimVector,
    budget: &mut Budget,
) -> Result<Vec<SubspaceTuple<K>>> {
    let mut order: Vec<usize> = ambient.quiver().topological_order().to_vec();
    order.reverse();
    let mut pts = points_in_order(ambient, beta, &order, budget)?;
    pts.sort();
    Ok(pts)
}

fn points_in_order<K: Field>(
    ambient: &Representation<K>,
    beta: &DimVector,
    order: &[usize],
    budget: &mut Budget,
) -> Result<Vec<SubspaceTuple<K>>> {
    let quiver = ambient.quiver().clone();
    let nv = quiver.num_vertices();
    if beta.len() != nv || !beta.leq(ambient.dim()) {
        return Err(Error::DimensionMismatch(
            "subrepresentation dimensions must be bounded by the ambient".into(),
        ));
    }
    let mut candidates: Vec<Vec<Subspace<K>>> = Vec::with_capacity(nv);
    for v in 0..nv {
        candidates.push(enumerate_subspaces::<K>(
            ambient.dim_at(v),
            beta.0[v],
            budget,
        )?);
    }
    let position_in_order: Vec<usize> = {
        let mut pos = vec![0usize; nv];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };
    let mut chosen: Vec<Option<Subspace<K>>> = vec![None; nv];
    let mut out = Vec::new();
    fill(
        ambient,
        order,
        &position_in_order,
        &candidates,
        0,
        &mut chosen,
        budget,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill<K: Field>(
    ambient: &Representation<K>,
    order: &[usize],
    pos: &[usize],
    candidates: &[Vec<Subspace<K>>],
    depth: usize,
    chosen: &mut Vec<Option<Subspace<K>>>,
    budget: &mut Budget,
    out: &mut Vec<SubspaceTuple<K>>,
) -> Result<()> {
    if depth == order.len() {
        out.push(SubspaceTuple {
            spaces: chosen.iter().map(|s| s.clone().unwrap()).collect(),
        });
        return Ok(());
    }
    let v = order[depth];
    'cand: for cand in &candidates[v] {
        budget.charge(1)?;
        // check arrows whose other endpoint is already placed
        for (ai, a) in ambient.quiver().arrows().iter().enumerate() {
            if a.dst == v && pos[a.src] < depth {
                let u = chosen[a.src].as_ref().unwrap();
                if !cand.contains(&u.apply(ambient.map(ai))) {
                    continue 'cand;
                }
            }
            if a.src == v && pos[a.dst] < depth {
                let w = chosen[a.dst].as_ref().unwrap();
                if !w.contains(&cand.apply(ambient.map(ai))) {
                    continue 'cand;
                }
            }
        }
        chosen[v] = Some(cand.clone());
        fill(ambient, order, pos, candidates, depth + 1, chosen, budget, out)?;
        chosen[v] = None;
    }
    Ok(())
}

/// The block automorphism of a standard module induced by a group element
/// acting on the multiplicity spaces: at each vertex the matrix is block
/// diagonal over path labels, with the block of a label given by the group
/// block at the label's module vertex.
pub fn sigma_matrices<K: Field>(basis: &LabeledBasis, h: &GroupElement<K>) -> VertexMaps<K> {
    basis
        .labels
        .iter()
        .map(|labels| {
            let dim = labels.len();
            let mut m = Matrix::zeros(dim, dim);
            for (col, lc) in labels.iter().enumerate() {
                for (row, lr) in labels.iter().enumerate() {
                    if lr.path == lc.path {
                        let v = basis.module_vertex(lc);
                        m[(row, col)] = h.blocks[v][(lr.copy, lc.copy)].clone();
                    }
                }
            }
            m
        })
        .collect()
}

/// Act on a Grassmannian point by the multiplicity-space automorphism.
pub fn sigma_action<K: Field>(
    basis: &LabeledBasis,
    h: &GroupElement<K>,
    pt: &SubspaceTuple<K>,
) -> SubspaceTuple<K> {
    let mats = sigma_matrices(basis, h);
    SubspaceTuple {
        spaces: pt
            .spaces
            .iter()
            .zip(&mats)
            .map(|(s, m)| s.apply(m))
            .collect(),
    }
}

/// Kernel of the framed projective cover map, as a canonical point of the
/// quotient-type Grassmannian of `P_beta`. Defined on the degree-zero locus
/// (the map must be surjective).
pub fn hilbert_point_phi<K: Field>(
    m: &Representation<K>,
    beta: &DimVector,
    framing: &[Matrix<K>],
) -> Result<SubspaceTuple<K>> {
    let (_, _, phi) = framed_phi(m, beta, framing)?;
    if !is_surjective_onto(m, &phi) {
        return Err(Error::NotInDegreeZeroLocus);
    }
    Ok(SubspaceTuple {
        spaces: phi
            .iter()
            .map(|f| Subspace::from_col_span(&f.kernel_basis()))
            .collect(),
    })
}

/// Image of the framed injective envelope map, as a canonical point of the
/// subrepresentation Grassmannian of `I_beta`. Defined on the degree-zero
/// locus (the map must be injective).
pub fn hilbert_point_psi<K: Field>(
    m: &Representation<K>,
    beta: &DimVector,
    framing: &[Matrix<K>],
) -> Result<SubspaceTuple<K>> {
    let (_, _, psi) = framed_psi(m, beta, framing)?;
    if !is_injective_from(m, &psi) {
        return Err(Error::NotInDegreeZeroLocus);
    }
    Ok(SubspaceTuple {
        spaces: psi.iter().map(Subspace::from_col_span).collect(),
    })
}

/// Full orbit of a point under the multiplicity-space action of the listed
/// group elements, as a sorted set of canonical forms.
pub fn orbit_of_point<K: Field>(
    basis: &LabeledBasis,
    group: &[GroupElement<K>],
    pt: &SubspaceTuple<K>,
    budget: &mut Budget,
) -> Result<Vec<SubspaceTuple<K>>> {
    let mut orbit = std::collections::BTreeSet::new();
    for h in group {
        budget.charge(1)?;
        orbit.insert(sigma_action(basis, h, pt));
    }
    Ok(orbit.into_iter().collect())
}
