//! Representations of acyclic quivers over an exact field.
//!
//! Includes the standard modules (simple, projective, injective), their
//! labeled path bases, Hom and Ext computation, the canonical projective
//! resolution, and the canonical/framed homomorphisms into and out of a
//! representation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::GroupElement;
use crate::matrix::Matrix;
use crate::quiver::{euler_form, DimVector, Path, Quiver, StabilityParam};

#[derive(Debug, Clone)]
pub struct Representation<K> {
    quiver: Arc<Quiver>,
    dim: DimVector,
    maps: Vec<Matrix<K>>, // per arrow, shape dim[dst] x dim[src]
}

impl<K: Field> PartialEq for Representation<K> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            && self.dim == other.dim
            && self.maps == other.maps
    }
}

impl<K: Field> Eq for Representation<K> {}

// Ordering and hashing look only at the point data; representations are
// always collected within a fixed quiver context.
impl<K: Field> PartialOrd for Representation<K> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<K: Field> Ord for Representation<K> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.dim, &self.maps).cmp(&(&other.dim, &other.maps))
    }
}

impl<K: Field> std::hash::Hash for Representation<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.maps.hash(state);
    }
}

impl<K: Field> Representation<K> {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, maps: Vec<Matrix<K>>) -> Result<Self> {
        if dim.len() != quiver.num_vertices() {
            return Err(Error::DimensionMismatch(
                "dimension vector does not match the vertex set".into(),
            ));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch(
                "one matrix per arrow is required".into(),
            ));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.rows() != dim.0[a.dst] || m.cols() != dim.0[a.src] {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {}: matrix is {}x{}, expected {}x{}",
                    a.id,
                    m.rows(),
                    m.cols(),
                    dim.0[a.dst],
                    dim.0[a.src]
                )));
            }
        }
        Ok(Representation { quiver, dim, maps })
    }

    pub fn zero(quiver: Arc<Quiver>, dim: DimVector) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dim.0[a.dst], dim.0[a.src]))
            .collect();
        Representation { quiver, dim, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dim.0[v]
    }

    pub fn map(&self, arrow: usize) -> &Matrix<K> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<K>] {
        &self.maps
    }

    /// The action of a path: product of the arrow matrices along it.
    /// The trivial path acts as the identity.
    pub fn path_map(&self, p: &Path) -> Matrix<K> {
        let mut m = Matrix::identity(self.dim.0[p.src]);
        for &a in &p.arrows {
            m = self.maps[a].matmul(&m);
        }
        m
    }

    /// Base change `g . M = (g_dst M_a g_src^{-1})_a`.
    pub fn transform(&self, g: &GroupElement<K>) -> Result<Self> {
        let inv: Vec<Matrix<K>> = g.blocks.iter().map(Matrix::invert).collect::<Result<_>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g.blocks[a.dst].matmul(m).matmul(&inv[a.src]))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            maps,
        })
    }
}

/// Whether a basis is labeled by paths out of the module vertex
/// (projective) or by dual paths into it (injective).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleSide {
    Projective,
    Injective,
}

/// One basis coordinate of a standard module: a path plus an index into the
/// multiplicity space attached to the module vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathLabel {
    pub path: Path,
    pub copy: usize,
}

/// Path labels for every coordinate of a standard module, per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledBasis {
    pub side: ModuleSide,
    /// Multiplicity of each summand: the module is a direct sum over
    /// vertices i of `mult_i` copies of P(i) (resp. I(i)).
    pub mult: DimVector,
    pub labels: Vec<Vec<PathLabel>>,
}

impl LabeledBasis {
    /// The vertex whose multiplicity space the label's copy index lives in.
    pub fn module_vertex(&self, label: &PathLabel) -> usize {
        match self.side {
            ModuleSide::Projective => label.path.src,
            ModuleSide::Injective => label.path.dst,
        }
    }

    pub fn position(&self, vertex: usize, label: &PathLabel) -> Option<usize> {
        self.labels[vertex].iter().position(|l| l == label)
    }
}

/// The simple representation S(i).
pub fn simple<K: Field>(quiver: &Arc<Quiver>, i: usize) -> Representation<K> {
    Representation::zero(quiver.clone(), DimVector::unit(quiver.num_vertices(), i))
}

/// `P_mult = biguplus_i P(i) (x) K^{mult_i}`, with its labeled path basis.
///
/// Basis order at a vertex j: module vertices ascending, then copy index,
/// then the canonical path order. Arrow matrices act by path concatenation.
pub fn proj_standard<K: Field>(
    quiver: &Arc<Quiver>,
    mult: &DimVector,
) -> (Representation<K>, LabeledBasis) {
    let n = quiver.num_vertices();
    assert_eq!(mult.len(), n);
    let mut labels: Vec<Vec<PathLabel>> = vec![Vec::new(); n];
    for j in 0..n {
        for i in 0..n {
            let paths = quiver.paths(i, j);
            for copy in 0..mult.0[i] {
                for p in &paths {
                    labels[j].push(PathLabel {
                        path: p.clone(),
                        copy,
                    });
                }
            }
        }
    }
    let dim = DimVector(labels.iter().map(Vec::len).collect());
    let basis = LabeledBasis {
        side: ModuleSide::Projective,
        mult: mult.clone(),
        labels,
    };
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(dim.0[a.dst], dim.0[a.src]);
            for (col, lbl) in basis.labels[a.src].iter().enumerate() {
                let mut extended = lbl.path.arrows.clone();
                extended.push(ai);
                let img = PathLabel {
                    path: Path {
                        src: lbl.path.src,
                        dst: a.dst,
                        arrows: extended,
                    },
                    copy: lbl.copy,
                };
                let row = basis
                    .position(a.dst, &img)
                    .expect("concatenated path is a basis label");
                m[(row, col)] = K::one();
            }
            m
        })
        .collect();
    (
        Representation {
            quiver: quiver.clone(),
            dim,
            maps,
        },
        basis,
    )
}

/// `I_mult = biguplus_i I(i) (x) K^{mult_i}`, with its dual path basis.
///
/// A label `(q, c)` at vertex j stands for the dual basis vector q* of a
/// path q: j -> i. An arrow a sends q* to r* when q = r a (q starts with
/// a and r is the remainder), and to zero otherwise.
pub fn inj_standard<K: Field>(
    quiver: &Arc<Quiver>,
    mult: &DimVector,
) -> (Representation<K>, LabeledBasis) {
    let n = quiver.num_vertices();
    assert_eq!(mult.len(), n);
    let mut labels: Vec<Vec<PathLabel>> = vec![Vec::new(); n];
    for j in 0..n {
        for i in 0..n {
            let paths = quiver.paths(j, i);
            for copy in 0..mult.0[i] {
                for q in &paths {
                    labels[j].push(PathLabel {
                        path: q.clone(),
                        copy,
                    });
                }
            }
        }
    }
    let dim = DimVector(labels.iter().map(Vec::len).collect());
    let basis = LabeledBasis {
        side: ModuleSide::Injective,
        mult: mult.clone(),
        labels,
    };
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(dim.0[a.dst], dim.0[a.src]);
            for (col, lbl) in basis.labels[a.src].iter().enumerate() {
                if lbl.path.arrows.first() == Some(&ai) {
                    let rest = PathLabel {
                        path: Path {
                            src: a.dst,
                            dst: lbl.path.dst,
                            arrows: lbl.path.arrows[1..].to_vec(),
                        },
                        copy: lbl.copy,
                    };
                    let row = basis
                        .position(a.dst, &rest)
                        .expect("path remainder is a basis label");
                    m[(row, col)] = K::one();
                }
            }
            m
        })
        .collect();
    (
        Representation {
            quiver: quiver.clone(),
            dim,
            maps,
        },
        basis,
    )
}

/// The indecomposable projective P(i).
pub fn projective<K: Field>(quiver: &Arc<Quiver>, i: usize) -> (Representation<K>, LabeledBasis) {
    proj_standard(quiver, &DimVector::unit(quiver.num_vertices(), i))
}

/// The indecomposable injective I(i).
pub fn injective<K: Field>(quiver: &Arc<Quiver>, i: usize) -> (Representation<K>, LabeledBasis) {
    inj_standard(quiver, &DimVector::unit(quiver.num_vertices(), i))
}

/// Blockwise direct sum of representations on the same quiver.
pub fn direct_sum<K: Field>(parts: &[Representation<K>]) -> Representation<K> {
    assert!(!parts.is_empty());
    let quiver = parts[0].quiver.clone();
    let n = quiver.num_vertices();
    let dim = DimVector(
        (0..n)
            .map(|v| parts.iter().map(|p| p.dim.0[v]).sum())
            .collect(),
    );
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, _)| {
            let grid: Vec<Vec<Matrix<K>>> = parts
                .iter()
                .enumerate()
                .map(|(r, pr)| {
                    parts
                        .iter()
                        .enumerate()
                        .map(|(c, pc)| {
                            if r == c {
                                pr.maps[ai].clone()
                            } else {
                                Matrix::zeros(
                                    pr.dim.0[quiver.arrows()[ai].dst],
                                    pc.dim.0[quiver.arrows()[ai].src],
                                )
                            }
                        })
                        .collect()
                })
                .collect();
            Matrix::block_assemble(&grid).expect("consistent block sizes")
        })
        .collect();
    Representation { quiver, dim, maps }
}

/// `mult` copies of a labeled standard module, copies indexed in order.
pub fn tensor_by_space<K: Field>(
    rep: &Representation<K>,
    basis: &LabeledBasis,
    mult: usize,
) -> (Representation<K>, LabeledBasis) {
    let n = rep.quiver.num_vertices();
    let parts: Vec<Representation<K>> = (0..mult).map(|_| rep.clone()).collect();
    let summed = if mult == 0 {
        Representation::zero(rep.quiver.clone(), DimVector::zeros(n))
    } else {
        direct_sum(&parts)
    };
    let mut labels: Vec<Vec<PathLabel>> = vec![Vec::new(); n];
    for (j, vertex_labels) in labels.iter_mut().enumerate() {
        for copy in 0..mult {
            for l in &basis.labels[j] {
                assert_eq!(l.copy, 0, "tensor over an already-tensored basis");
                vertex_labels.push(PathLabel {
                    path: l.path.clone(),
                    copy,
                });
            }
        }
    }
    let mut mult_vec = DimVector::zeros(n);
    for (v, &m) in basis.mult.0.iter().enumerate() {
        mult_vec.0[v] = m * mult;
    }
    (
        summed,
        LabeledBasis {
            side: basis.side,
            mult: mult_vec,
            labels,
        },
    )
}

/// Vertex-indexed tuple of matrices, e.g. a homomorphism between two
/// representations (each f_i maps the source fiber to the target fiber).
pub type VertexMaps<K> = Vec<Matrix<K>>;

/// Check the intertwining relations `N_a f_src = f_dst M_a` for all arrows.
pub fn is_homomorphism<K: Field>(
    m: &Representation<K>,
    n: &Representation<K>,
    f: &VertexMaps<K>,
) -> bool {
    if f.len() != m.quiver.num_vertices() {
        return false;
    }
    for (v, fv) in f.iter().enumerate() {
        if fv.rows() != n.dim.0[v] || fv.cols() != m.dim.0[v] {
            return false;
        }
    }
    m.quiver.arrows().iter().enumerate().all(|(ai, a)| {
        n.maps[ai].matmul(&f[a.src]) == f[a.dst].matmul(&m.maps[ai])
    })
}

/// Basis of the homomorphism space Hom(M, N), found by solving the
/// intertwining linear system.
pub fn hom_basis<K: Field>(m: &Representation<K>, n: &Representation<K>) -> Vec<VertexMaps<K>> {
    assert_eq!(m.quiver.as_ref(), n.quiver.as_ref(), "same quiver required");
    let nv = m.quiver.num_vertices();
    let mut offsets = vec![0usize; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + n.dim.0[v] * m.dim.0[v];
    }
    let unknowns = offsets[nv];
    let idx = |v: usize, r: usize, c: usize| offsets[v] + r * m.dim.0[v] + c;

    let mut rows: Vec<Vec<K>> = Vec::new();
    for (ai, a) in m.quiver.arrows().iter().enumerate() {
        let na = &n.maps[ai];
        let ma = &m.maps[ai];
        for r in 0..n.dim.0[a.dst] {
            for c in 0..m.dim.0[a.src] {
                let mut row = vec![K::zero(); unknowns];
                // sum_k N_a[r,k] f_src[k,c] - sum_l f_dst[r,l] M_a[l,c] = 0
                for k in 0..n.dim.0[a.src] {
                    let j = idx(a.src, k, c);
                    row[j] = row[j].clone() + na[(r, k)].clone();
                }
                for l in 0..m.dim.0[a.dst] {
                    let j = idx(a.dst, r, l);
                    row[j] = row[j].clone() - ma[(l, c)].clone();
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, unknowns)
    } else {
        Matrix::from_rows(rows)
    };
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|j| {
            (0..nv)
                .map(|v| {
                    Matrix::from_fn(n.dim.0[v], m.dim.0[v], |r, c| {
                        kernel[(idx(v, r, c), j)].clone()
                    })
                })
                .collect()
        })
        .collect()
}

pub fn hom_dim<K: Field>(m: &Representation<K>, n: &Representation<K>) -> usize {
    hom_basis(m, n).len()
}

/// `dim Ext^1(M,N) = dim Hom(M,N) - <dim M, dim N>`; nonnegative because
/// the category is hereditary.
pub fn ext_dim<K: Field>(m: &Representation<K>, n: &Representation<K>) -> usize {
    let h = hom_dim(m, n) as i64;
    let e = euler_form(m.quiver(), m.dim(), n.dim());
    let x = h - e;
    assert!(x >= 0, "negative Ext dimension");
    x as usize
}

/// The canonical projective resolution `0 -> P1 -d-> P0 -aug-> M -> 0`.
///
/// P0 is one copy of P(i) per basis vector of M_i; P1 has one copy of
/// P(dst(a)) per basis vector of M_{src(a)}; d sends a generator `q (x) v`
/// to `qa (x) v - q (x) av`.
#[derive(Debug, Clone)]
pub struct ProjResolution<K> {
    pub p1: Representation<K>,
    pub p1_basis: LabeledBasis,
    /// At each vertex, which arrow each P1 label belongs to.
    pub p1_arrow: Vec<Vec<usize>>,
    pub p0: Representation<K>,
    pub p0_basis: LabeledBasis,
    pub d: VertexMaps<K>,
    pub augmentation: VertexMaps<K>,
}

pub fn proj_resolution<K: Field>(m: &Representation<K>) -> ProjResolution<K> {
    let quiver = m.quiver().clone();
    let nv = quiver.num_vertices();
    let (p0, p0_basis) = proj_standard::<K>(&quiver, m.dim());

    // P1: direct sum over arrows of P(dst(a)) (x) K^{dim M_src(a)}.
    let mut p1_parts = Vec::new();
    for a in quiver.arrows() {
        let (pa, ba) = projective::<K>(&quiver, a.dst);
        let (t, tb) = tensor_by_space(&pa, &ba, m.dim().0[a.src]);
        p1_parts.push((t, tb));
    }
    let p1 = if p1_parts.is_empty() {
        Representation::zero(quiver.clone(), DimVector::zeros(nv))
    } else {
        direct_sum(&p1_parts.iter().map(|(r, _)| r.clone()).collect::<Vec<_>>())
    };
    let mut p1_labels: Vec<Vec<PathLabel>> = vec![Vec::new(); nv];
    let mut p1_arrow: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for j in 0..nv {
        for (ai, (_, tb)) in p1_parts.iter().enumerate() {
            for l in &tb.labels[j] {
                p1_labels[j].push(l.clone());
                p1_arrow[j].push(ai);
            }
        }
    }
    let p1_basis = LabeledBasis {
        side: ModuleSide::Projective,
        mult: p1.dim().clone(),
        labels: p1_labels,
    };

    // d at vertex j: column (arrow a, q: dst(a)->j, copy c) maps to
    // +1 at (qa, c) minus sum_r M_a[r,c] at (q, r).
    let d: VertexMaps<K> = (0..nv)
        .map(|j| {
            let mut mat: Matrix<K> = Matrix::zeros(p0.dim().0[j], p1.dim().0[j]);
            for (col, (lbl, &ai)) in p1_basis.labels[j]
                .iter()
                .zip(&p1_arrow[j])
                .enumerate()
            {
                let a = &quiver.arrows()[ai];
                let mut extended = vec![ai];
                extended.extend_from_slice(&lbl.path.arrows);
                let qa = PathLabel {
                    path: Path {
                        src: a.src,
                        dst: j,
                        arrows: extended,
                    },
                    copy: lbl.copy,
                };
                let row = p0_basis.position(j, &qa).expect("qa is a P0 label");
                mat[(row, col)] = mat[(row, col)].clone() + K::one();
                let ma = m.map(ai);
                for r in 0..m.dim().0[a.dst] {
                    let coeff = ma[(r, lbl.copy)].clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let q_r = PathLabel {
                        path: lbl.path.clone(),
                        copy: r,
                    };
                    let row2 = p0_basis.position(j, &q_r).expect("q is a P0 label");
                    mat[(row2, col)] = mat[(row2, col)].clone() - coeff;
                }
            }
            mat
        })
        .collect();

    let augmentation = canonical_phi_for_basis(m, &p0_basis);

    ProjResolution {
        p1,
        p1_basis,
        p1_arrow,
        p0,
        p0_basis,
        d,
        augmentation,
    }
}

/// Exactness of the canonical resolution, checked as matrix identities.
pub fn resolution_is_exact<K: Field>(m: &Representation<K>, res: &ProjResolution<K>) -> bool {
    let nv = m.quiver().num_vertices();
    (0..nv).all(|j| {
        let comp = res.augmentation[j].matmul(&res.d[j]);
        let d_rank = res.d[j].rank();
        comp.is_zero()
            && d_rank == res.p1.dim().0[j]
            && res.augmentation[j].rank() == m.dim().0[j]
            && res.p0.dim().0[j] - m.dim().0[j] == d_rank
    })
}

/// Ext^1 computed as the cokernel of `Hom(P0,N) -> Hom(P1,N)` from the
/// canonical resolution; an independent route from the Euler-form count.
pub fn ext_dim_via_resolution<K: Field>(m: &Representation<K>, n: &Representation<K>) -> usize {
    let res = proj_resolution(m);
    let b0 = hom_basis(&res.p0, n);
    let b1 = hom_basis(&res.p1, n);
    if b1.is_empty() {
        return 0;
    }
    let nv = m.quiver().num_vertices();
    let vec_len: usize = (0..nv).map(|v| n.dim().0[v] * res.p1.dim().0[v]).sum();
    let vectorize = |f: &VertexMaps<K>| -> Vec<K> {
        let mut out = Vec::with_capacity(vec_len);
        for fv in f {
            out.extend(fv.entries().iter().cloned());
        }
        out
    };
    let basis_cols = Matrix::from_rows(b1.iter().map(|f| vectorize(f)).collect()).transpose();
    let mut t = Matrix::zeros(b1.len(), b0.len());
    for (j, f) in b0.iter().enumerate() {
        let composed: VertexMaps<K> = (0..nv).map(|v| f[v].matmul(&res.d[v])).collect();
        let rhs = Matrix::new(vec_len, 1, vectorize(&composed));
        let coords = basis_cols
            .solve(&rhs)
            .expect("composition lies in Hom(P1, N)");
        for i in 0..b1.len() {
            t[(i, j)] = coords[(i, 0)].clone();
        }
    }
    b1.len() - t.rank()
}

fn canonical_phi_for_basis<K: Field>(
    m: &Representation<K>,
    basis: &LabeledBasis,
) -> VertexMaps<K> {
    let nv = m.quiver().num_vertices();
    (0..nv)
        .map(|j| {
            let mut mat: Matrix<K> = Matrix::zeros(m.dim().0[j], basis.labels[j].len());
            for (col, lbl) in basis.labels[j].iter().enumerate() {
                let mp = m.path_map(&lbl.path);
                for r in 0..m.dim().0[j] {
                    mat[(r, col)] = mp[(r, lbl.copy)].clone();
                }
            }
            mat
        })
        .collect()
}

/// The canonical homomorphism `phi_M: P+ -> M` determined by theta.
///
/// P+ sums P(i) (x) V_i over the vertices with theta_i >= 0; the column
/// labeled (p, c) is M_p applied to the c-th basis vector.
pub fn canonical_phi<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
) -> (Representation<K>, LabeledBasis, VertexMaps<K>) {
    let mult = m.dim().restricted(&theta.plus_mask());
    let (p_plus, basis) = proj_standard::<K>(m.quiver(), &mult);
    let phi = canonical_phi_for_basis(m, &basis);
    (p_plus, basis, phi)
}

/// The canonical homomorphism `psi_M: M -> I-` determined by theta.
///
/// I- sums I(i) (x) V_i over the vertices with theta_i <= 0; the row
/// labeled (q, c) is the c-th row of M_q.
pub fn canonical_psi<K: Field>(
    m: &Representation<K>,
    theta: &StabilityParam,
) -> (Representation<K>, LabeledBasis, VertexMaps<K>) {
    let mult = m.dim().restricted(&theta.minus_mask());
    let (i_minus, basis) = inj_standard::<K>(m.quiver(), &mult);
    let nv = m.quiver().num_vertices();
    let psi = (0..nv)
        .map(|v| {
            let mut mat: Matrix<K> = Matrix::zeros(basis.labels[v].len(), m.dim().0[v]);
            for (row, lbl) in basis.labels[v].iter().enumerate() {
                let mq = m.path_map(&lbl.path);
                for c in 0..m.dim().0[v] {
                    mat[(row, c)] = mq[(lbl.copy, c)].clone();
                }
            }
            mat
        })
        .collect();
    (i_minus, basis, psi)
}

/// The framed homomorphism `phi_{M,A}: P_beta -> M` with framing maps
/// A_i: K^{beta_i} -> M_i; the column labeled (p, c) is M_p A_src(p) e_c.
pub fn framed_phi<K: Field>(
    m: &Representation<K>,
    beta: &DimVector,
    framing: &[Matrix<K>],
) -> Result<(Representation<K>, LabeledBasis, VertexMaps<K>)> {
    let nv = m.quiver().num_vertices();
    if framing.len() != nv {
        return Err(Error::DimensionMismatch("one framing map per vertex".into()));
    }
    for (v, a) in framing.iter().enumerate() {
        if a.rows() != m.dim().0[v] || a.cols() != beta.0[v] {
            return Err(Error::DimensionMismatch(format!(
                "framing at vertex {v} is {}x{}, expected {}x{}",
                a.rows(),
                a.cols(),
                m.dim().0[v],
                beta.0[v]
            )));
        }
    }
    let (p_beta, basis) = proj_standard::<K>(m.quiver(), beta);
    let phi = (0..nv)
        .map(|j| {
            let mut mat: Matrix<K> = Matrix::zeros(m.dim().0[j], basis.labels[j].len());
            for (col, lbl) in basis.labels[j].iter().enumerate() {
                let src = lbl.path.src;
                let column = m.path_map(&lbl.path).matmul(&framing[src]);
                for r in 0..m.dim().0[j] {
                    mat[(r, col)] = column[(r, lbl.copy)].clone();
                }
            }
            mat
        })
        .collect();
    Ok((p_beta, basis, phi))
}

/// The framed homomorphism `psi_{M,B}: M -> I_beta` with framing maps
/// B_i: M_i -> K^{beta_i}; the row labeled (q, c) is row c of B_dst(q) M_q.
pub fn framed_psi<K: Field>(
    m: &Representation<K>,
    beta: &DimVector,
    framing: &[Matrix<K>],
) -> Result<(Representation<K>, LabeledBasis, VertexMaps<K>)> {
    let nv = m.quiver().num_vertices();
    if framing.len() != nv {
        return Err(Error::DimensionMismatch("one framing map per vertex".into()));
    }
    for (v, b) in framing.iter().enumerate() {
        if b.rows() != beta.0[v] || b.cols() != m.dim().0[v] {
            return Err(Error::DimensionMismatch(format!(
                "framing at vertex {v} is {}x{}, expected {}x{}",
                b.rows(),
                b.cols(),
                beta.0[v],
                m.dim().0[v]
            )));
        }
    }
    let (i_beta, basis) = inj_standard::<K>(m.quiver(), beta);
    let psi = (0..nv)
        .map(|v| {
            let mut mat: Matrix<K> = Matrix::zeros(basis.labels[v].len(), m.dim().0[v]);
            for (row, lbl) in basis.labels[v].iter().enumerate() {
                let dst = lbl.path.dst;
                let stacked = framing[dst].matmul(&m.path_map(&lbl.path));
                for c in 0..m.dim().0[v] {
                    mat[(row, c)] = stacked[(lbl.copy, c)].clone();
                }
            }
            mat
        })
        .collect();
    Ok((i_beta, basis, psi))
}

/// Surjectivity of a vertexwise map onto M (full rank at every vertex).
pub fn is_surjective_onto<K: Field>(m: &Representation<K>, f: &VertexMaps<K>) -> bool {
    f.iter()
        .enumerate()
        .all(|(v, fv)| fv.rank() == m.dim().0[v])
}

/// Injectivity of a vertexwise map out of M (trivial kernel at every vertex).
pub fn is_injective_from<K: Field>(m: &Representation<K>, f: &VertexMaps<K>) -> bool {
    f.iter()
        .enumerate()
        .all(|(v, fv)| fv.rank() == m.dim().0[v])
}
