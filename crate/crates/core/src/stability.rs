//! Stability testing by exhaustive subrepresentation enumeration.
//!
//! Exhaustive enumeration is the only semistability oracle here: every
//! invariant subspace tuple of a finite-field representation is visited,
//! with early pruning along the topological order. A budget guard keeps
//! instance sizes honest.


use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver, StabilityParam};
use crate::rep::Representation;
use crate::subspace::{enumerate_all_subspaces, Subspace};

/// An invariant subrepresentation, witnessed by canonical per-vertex bases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubrepWitness<K> {
    pub spaces: Vec<Subspace<K>>,
    pub dim: DimVector,
    pub theta_value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict<K> {
    Stable,
    SemistableNotStable(SubrepWitness<K>),
    Unstable(SubrepWitness<K>),
    /// theta(dim M) != 0, so the stability question does not apply.
    ThetaNonzero(i64),
}

impl<K> StabilityVerdict<K> {
    pub fn is_semistable(&self) -> bool {
        matches!(
            self,
            StabilityVerdict::Stable | StabilityVerdict::SemistableNotStable(_)
        )
    }

    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityVerdict::Stable)
    }
}

/// Visit all invariant subspace tuples of `m`, including 0 and M itself.
///
/// Vertices are processed in topological order; a partial tuple is pruned
/// as soon as some arrow image escapes the chosen subspace, so the
/// enumeration touches each violation once. Within a vertex, subspaces are
/// visited by ascending dimension in canonical order, which fixes the
/// "first witness" reported by the stability check.
pub fn for_each_subrep<K: Field>(
    m: &Representation<K>,
    budget: &mut Budget,
    f: &mut impl FnMut(&[Subspace<K>]) -> Result<bool>,
) -> Result<()> {
    let quiver = m.quiver().clone();
    let nv = quiver.num_vertices();
    let mut per_vertex: Vec<Vec<Subspace<K>>> = Vec::with_capacity(nv);
    for v in 0..nv {
        per_vertex.push(enumerate_all_subspaces::<K>(m.dim_at(v), budget)?);
    }
    let topo: Vec<usize> = quiver.topological_order().to_vec();
    // Arrows checked once their target is assigned; sources come earlier.
    let mut arrows_by_target: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (ai, a) in quiver.arrows().iter().enumerate() {
        arrows_by_target[a.dst].push(ai);
    }
    let mut chosen: Vec<Option<Subspace<K>>> = vec![None; nv];
    recurse(
        m,
        &topo,
        &per_vertex,
        &arrows_by_target,
        0,
        &mut chosen,
        budget,
        f,
    )?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn recurse<K: Field>(
    m: &Representation<K>,
    topo: &[usize],
    per_vertex: &[Vec<Subspace<K>>],
    arrows_by_target: &[Vec<usize>],
    depth: usize,
    chosen: &mut Vec<Option<Subspace<K>>>,
    budget: &mut Budget,
    f: &mut impl FnMut(&[Subspace<K>]) -> Result<bool>,
) -> Result<bool> {
    if depth == topo.len() {
        let tuple: Vec<Subspace<K>> = chosen.iter().map(|s| s.clone().unwrap()).collect();
        return f(&tuple);
    }
    let v = topo[depth];
    for cand in &per_vertex[v] {
        budget.charge(1)?;
        let ok = arrows_by_target[v].iter().all(|&ai| {
            let src = m.quiver().arrows()[ai].src;
            let u_src = chosen[src].as_ref().expect("source assigned earlier");
            cand.contains(&u_src.apply(m.map(ai)))
        });
        if !ok {
            continue;
        }
        chosen[v] = Some(cand.clone());
        let keep_going = recurse(
            m,
            topo,
            per_vertex,
            arrows_by_target,
            depth + 1,
            chosen,
            budget,
            f,
        )?;
        chosen[v] = None;
        if !keep_going {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All invariant subrepresentations of `m` as a list, 0 and M included.
pub fn enumerate_subreps<K: Field>(
    m: &Representation<K>,
    budget: &mut Budget,
) -> Result<Vec<SubrepWitness<K>>> {
    let zero_theta = StabilityParam::zeros(m.quiver().num_vertices());
    let mut out = Vec::new();
    for_each_subrep(m, budget, &mut |tuple| {
        let dim = DimVector(tuple.iter().map(Subspace::dim).collect());
        let theta_value = zero_theta.value(&dim);
        out.push(SubrepWitness {
            spaces: tuple.to_vec(),
            dim,
            theta_value,
        });
        Ok(true)
    })?;
    Ok(out)
}

/// Decide theta-(semi)stability of `m` by the exhaustive oracle.
///
/// The attached witness is the first violator in enumeration order.
pub fn check_stability<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
    budget: &mut Budget,
) -> Result<StabilityVerdict<K>> {
    let total = theta.value(m.dim());
    if total != 0 {
        return Ok(StabilityVerdict::ThetaNonzero(total));
    }
    let full = m.dim().clone();
    let mut strict: Option<SubrepWitness<K>> = None;
    let mut unstable: Option<SubrepWitness<K>> = None;
    for_each_subrep(m, budget, &mut |tuple| {
        let dim = DimVector(tuple.iter().map(Subspace::dim).collect());
        if dim.is_zero() || dim == full {
            return Ok(true);
        }
        let value = theta.value(&dim);
        if value > 0 {
            unstable = Some(SubrepWitness {
                spaces: tuple.to_vec(),
                dim,
                theta_value: value,
            });
            return Ok(false); // verdict settled
        }
        if value == 0 && strict.is_none() {
            strict = Some(SubrepWitness {
                spaces: tuple.to_vec(),
                dim,
                theta_value: 0,
            });
        }
        Ok(true)
    })?;
    if let Some(w) = unstable {
        return Ok(StabilityVerdict::Unstable(w));
    }
    if let Some(w) = strict {
        return Ok(StabilityVerdict::SemistableNotStable(w));
    }
    Ok(StabilityVerdict::Stable)
}

/// All points of R(Q, alpha) over a finite field, in odometer order over
/// the arrow matrix entries.
pub fn enumerate_reps<K: Field>(
    quiver: &std::sync::Arc<Quiver>,
    alpha: &DimVector,
    budget: &mut Budget,
) -> Result<Vec<Representation<K>>> {
    let elems = K::elements().expect("representation enumeration needs a finite field");
    let shapes: Vec<(usize, usize)> = quiver
        .arrows()
        .iter()
        .map(|a| (alpha.0[a.dst], alpha.0[a.src]))
        .collect();
    let total_entries: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    let mut assignment = vec![0usize; total_entries];
    let mut out = Vec::new();
    loop {
        budget.charge(1)?;
        let mut maps = Vec::with_capacity(shapes.len());
        let mut off = 0;
        for &(r, c) in &shapes {
            maps.push(Matrix::from_fn(r, c, |i, j| {
                elems[assignment[off + i * c + j]].clone()
            }));
            off += r * c;
        }
        out.push(Representation::new(quiver.clone(), alpha.clone(), maps)?);
        let mut i = total_entries;
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

/// Closed-form (semi)stability test for the m-subspace quiver with
/// dimension vector (1,...,1,n) and positive weights `a`:
/// the defining vectors must be nonzero, and every index subset whose
/// weight exceeds half the total (at least half, for stability) must span.
pub fn subspace_quiver_criterion<K: Field>(
    m: &Representation<K>,
    weights: &[i64],
) -> Result<StabilityVerdict<K>> {
    let quiver = m.quiver();
    let shape = subspace_shape(quiver)
        .ok_or_else(|| Error::WrongQuiverShape("expected the m-subspace quiver".into()))?;
    let (sources, sink) = shape;
    let mcount = sources.len();
    if weights.len() != mcount || weights.iter().any(|&w| w <= 0) {
        return Err(Error::WrongQuiverShape(format!(
            "expected {mcount} positive weights"
        )));
    }
    if sources.iter().any(|&v| m.dim_at(v) != 1) {
        return Err(Error::WrongQuiverShape(
            "sources must carry dimension 1".into(),
        ));
    }
    let n = m.dim_at(sink);
    let total: i64 = weights.iter().sum();

    // vectors v_i = image of the i-th source generator in K^n
    let vectors: Vec<Matrix<K>> = (0..mcount)
        .map(|i| {
            let ai = quiver
                .arrows()
                .iter()
                .position(|a| a.src == sources[i])
                .expect("one arrow per source");
            m.map(ai).clone()
        })
        .collect();

    let all_nonzero = vectors.iter().all(|v| !v.is_zero());
    let span_of = |idx: &[usize]| -> usize {
        if idx.is_empty() {
            return 0;
        }
        let sel: Vec<Matrix<K>> = idx.iter().map(|&i| vectors[i].clone()).collect();
        let mut stacked = sel[0].clone();
        for v in &sel[1..] {
            stacked = stacked.hstack(v);
        }
        stacked.rank()
    };

    let mut semistable = all_nonzero;
    let mut stable = all_nonzero;
    for mask in 0u32..(1 << mcount) {
        let idx: Vec<usize> = (0..mcount).filter(|&i| mask >> i & 1 == 1).collect();
        let w: i64 = idx.iter().map(|&i| weights[i]).sum();
        // strict and non-strict majority, compared without division
        if 2 * w > total && span_of(&idx) != n {
            semistable = false;
        }
        if 2 * w >= total && span_of(&idx) != n {
            stable = false;
        }
    }

    // The closed form reports verdicts alone; witnesses come only from the
    // exhaustive route.
    Ok(if stable {
        StabilityVerdict::Stable
    } else if semistable {
        StabilityVerdict::SemistableNotStable(trivial_witness(m))
    } else {
        StabilityVerdict::Unstable(trivial_witness(m))
    })
}

fn trivial_witness<K: Field>(m: &Representation<K>) -> SubrepWitness<K> {
    SubrepWitness {
        spaces: (0..m.quiver().num_vertices())
            .map(|v| Subspace::zero(m.dim_at(v)))
            .collect(),
        dim: DimVector::zeros(m.quiver().num_vertices()),
        theta_value: 0,
    }
}

/// Recognize the m-subspace shape: every vertex but one is a source with a
/// single outgoing arrow to the unique sink.
fn subspace_shape(quiver: &Quiver) -> Option<(Vec<usize>, usize)> {
    let nv = quiver.num_vertices();
    let mut outdeg = vec![0usize; nv];
    let mut indeg = vec![0usize; nv];
    for a in quiver.arrows() {
        outdeg[a.src] += 1;
        indeg[a.dst] += 1;
    }
    let sinks: Vec<usize> = (0..nv).filter(|&v| outdeg[v] == 0).collect();
    if sinks.len() != 1 {
        return None;
    }
    let sink = sinks[0];
    let sources: Vec<usize> = (0..nv).filter(|&v| v != sink).collect();
    for &s in &sources {
        if outdeg[s] != 1 || indeg[s] != 0 {
            return None;
        }
    }
    if quiver.arrows().iter().any(|a| a.dst != sink) {
        return None;
    }
    Some((sources, sink))
}

/// The stability parameter of the m-subspace quiver attached to positive
/// weights a: n*a_i at the sources, -|a| at the sink.
pub fn subspace_theta(quiver: &Quiver, weights: &[i64], n: usize) -> Result<StabilityParam> {
    let (sources, sink) = subspace_shape(quiver)
        .ok_or_else(|| Error::WrongQuiverShape("expected the m-subspace quiver".into()))?;
    if weights.len() != sources.len() {
        return Err(Error::WrongQuiverShape("one weight per source".into()));
    }
    let mut theta = vec![0i64; quiver.num_vertices()];
    for (i, &v) in sources.iter().enumerate() {
        theta[v] = weights[i] * n as i64;
    }
    theta[sink] = -weights.iter().sum::<i64>();
    Ok(StabilityParam(theta))
}
