//! Framed quivers, derived stability parameters, and the stability-transfer
//! verification sweeps.
//!
//! Four constructions extend a base quiver: a universal source `0` with
//! beta_i arrows into each vertex, a universal sink `inf` dually, and the
//! two vertex-doubling variants that carry the framing as a single arrow
//! per vertex. The latter two support the group actions; the former two
//! carry the one-dimensional framing slot.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver, StabilityParam};
use crate::rep::{framed_phi, framed_psi, is_injective_from, is_surjective_onto, Representation};
use crate::stability::{check_stability, enumerate_reps, for_each_subrep};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FramedKind {
    /// One extra source vertex "0" with beta_i arrows 0 -> i.
    Source,
    /// One extra sink vertex "∞" with beta_i arrows i -> ∞.
    Sink,
    /// A copy "i+" of every vertex with one arrow copy -> original.
    SourceCopies,
    /// A copy "i-" of every vertex with one arrow original -> copy.
    SinkCopies,
}

#[derive(Debug, Clone)]
pub struct FramedQuiver {
    pub kind: FramedKind,
    pub base: Arc<Quiver>,
    pub beta: DimVector,
    pub quiver: Arc<Quiver>,
    /// base vertex index -> vertex index in the framed quiver
    pub base_vertex: Vec<usize>,
    /// framing vertex (Source/Sink) or per-base copy vertices (copies)
    pub extra_vertex: Vec<usize>,
    /// base arrow index -> arrow index in the framed quiver
    pub base_arrow: Vec<usize>,
    /// per base vertex, the framed arrow indices of its framing arrows
    pub framing_arrows: Vec<Vec<usize>>,
}

/// Build a framed quiver; the result is acyclic whenever the base is.
pub fn build_framed(base: &Arc<Quiver>, beta: &DimVector, kind: FramedKind) -> Result<FramedQuiver> {
    let n = base.num_vertices();
    if beta.len() != n {
        return Err(Error::DimensionMismatch(
            "framing dimension vector must match the vertex set".into(),
        ));
    }
    let names = base.vertex_names();
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    match kind {
        FramedKind::Source => {
            vertices.push("0".into());
            vertices.extend(names.iter().cloned());
            for (i, name) in names.iter().enumerate() {
                for k in 0..beta.0[i] {
                    arrows.push((format!("f:{name}:{k}"), "0".into(), name.clone()));
                }
            }
        }
        FramedKind::Sink => {
            vertices.extend(names.iter().cloned());
            vertices.push("∞".into());
            for (i, name) in names.iter().enumerate() {
                for k in 0..beta.0[i] {
                    arrows.push((format!("f:{name}:{k}"), name.clone(), "∞".into()));
                }
            }
        }
        FramedKind::SourceCopies => {
            vertices.extend(names.iter().map(|v| format!("{v}+")));
            vertices.extend(names.iter().cloned());
            for name in names {
                arrows.push((format!("f:{name}"), format!("{name}+"), name.clone()));
            }
        }
        FramedKind::SinkCopies => {
            vertices.extend(names.iter().cloned());
            vertices.extend(names.iter().map(|v| format!("{v}-")));
            for name in names {
                arrows.push((format!("f:{name}"), name.clone(), format!("{name}-")));
            }
        }
    }
    for a in base.arrows() {
        arrows.push((
            a.id.clone(),
            names[a.src].clone(),
            names[a.dst].clone(),
        ));
    }
    let quiver = Arc::new(Quiver::new(vertices, arrows)?);
    let base_vertex: Vec<usize> = names
        .iter()
        .map(|v| quiver.vertex_index(v).expect("base vertex kept"))
        .collect();
    let extra_vertex: Vec<usize> = match kind {
        FramedKind::Source => vec![quiver.vertex_index("0").unwrap()],
        FramedKind::Sink => vec![quiver.vertex_index("∞").unwrap()],
        FramedKind::SourceCopies => names
            .iter()
            .map(|v| quiver.vertex_index(&format!("{v}+")).unwrap())
            .collect(),
        FramedKind::SinkCopies => names
            .iter()
            .map(|v| quiver.vertex_index(&format!("{v}-")).unwrap())
            .collect(),
    };
    let base_arrow: Vec<usize> = base
        .arrows()
        .iter()
        .map(|a| quiver.arrow_index(&a.id).expect("base arrow kept"))
        .collect();
    let framing_arrows: Vec<Vec<usize>> = match kind {
        FramedKind::Source | FramedKind::Sink => names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                (0..beta.0[i])
                    .map(|k| quiver.arrow_index(&format!("f:{name}:{k}")).unwrap())
                    .collect()
            })
            .collect(),
        FramedKind::SourceCopies | FramedKind::SinkCopies => names
            .iter()
            .map(|name| vec![quiver.arrow_index(&format!("f:{name}")).unwrap()])
            .collect(),
    };
    Ok(FramedQuiver {
        kind,
        base: base.clone(),
        beta: beta.clone(),
        quiver,
        base_vertex,
        extra_vertex,
        base_arrow,
        framing_arrows,
    })
}

impl FramedQuiver {
    /// The canonical dimension vector of the framed quiver:
    /// (1, alpha), (alpha, 1), (beta, alpha) or (alpha, beta).
    pub fn framed_dim(&self, alpha: &DimVector) -> DimVector {
        let mut dims = vec![0usize; self.quiver.num_vertices()];
        for (i, &v) in self.base_vertex.iter().enumerate() {
            dims[v] = alpha.0[i];
        }
        match self.kind {
            FramedKind::Source | FramedKind::Sink => {
                dims[self.extra_vertex[0]] = 1;
            }
            FramedKind::SourceCopies | FramedKind::SinkCopies => {
                for (i, &v) in self.extra_vertex.iter().enumerate() {
                    dims[v] = self.beta.0[i];
                }
            }
        }
        DimVector(dims)
    }

    /// Bundle a base representation and framing maps into a representation
    /// of the framed quiver. For the universal source, the beta_i columns
    /// of A_i become beta_i single-column arrow matrices; dually rows for
    /// the universal sink; the copy constructions carry A_i (or B_i) whole.
    pub fn embed<K: Field>(
        &self,
        m: &Representation<K>,
        framing: &[Matrix<K>],
    ) -> Result<Representation<K>> {
        let n = self.base.num_vertices();
        if framing.len() != n {
            return Err(Error::DimensionMismatch("one framing map per vertex".into()));
        }
        for (i, f) in framing.iter().enumerate() {
            let (want_r, want_c) = match self.kind {
                FramedKind::Source | FramedKind::SourceCopies => {
                    (m.dim().0[i], self.beta.0[i])
                }
                FramedKind::Sink | FramedKind::SinkCopies => (self.beta.0[i], m.dim().0[i]),
            };
            if f.rows() != want_r || f.cols() != want_c {
                return Err(Error::DimensionMismatch(format!(
                    "framing at vertex {i} is {}x{}, expected {want_r}x{want_c}",
                    f.rows(),
                    f.cols()
                )));
            }
        }
        let dim = self.framed_dim(m.dim());
        let mut maps: Vec<Matrix<K>> =
            vec![Matrix::zeros(0, 0); self.quiver.arrows().len()];
        for (bi, &fi) in self.base_arrow.iter().enumerate() {
            maps[fi] = m.map(bi).clone();
        }
        for (i, arrows) in self.framing_arrows.iter().enumerate() {
            match self.kind {
                FramedKind::Source => {
                    for (k, &ai) in arrows.iter().enumerate() {
                        maps[ai] = framing[i].select_cols(&[k]);
                    }
                }
                FramedKind::Sink => {
                    for (k, &ai) in arrows.iter().enumerate() {
                        maps[ai] = framing[i].select_rows(&[k]);
                    }
                }
                FramedKind::SourceCopies | FramedKind::SinkCopies => {
                    maps[arrows[0]] = framing[i].clone();
                }
            }
        }
        Representation::new(self.quiver.clone(), dim, maps)
    }

    /// Inverse of [`FramedQuiver::embed`].
    pub fn split<K: Field>(
        &self,
        rep: &Representation<K>,
    ) -> Result<(Representation<K>, Vec<Matrix<K>>)> {
        let n = self.base.num_vertices();
        let alpha = DimVector(
            self.base_vertex
                .iter()
                .map(|&v| rep.dim().0[v])
                .collect(),
        );
        let base_maps: Vec<Matrix<K>> = self
            .base_arrow
            .iter()
            .map(|&fi| rep.map(fi).clone())
            .collect();
        let m = Representation::new(self.base.clone(), alpha.clone(), base_maps)?;
        let mut framing = Vec::with_capacity(n);
        for (i, arrows) in self.framing_arrows.iter().enumerate() {
            let f = match self.kind {
                FramedKind::Source => {
                    let mut cols = Matrix::zeros(alpha.0[i], 0);
                    for &ai in arrows {
                        cols = cols.hstack(rep.map(ai));
                    }
                    cols
                }
                FramedKind::Sink => {
                    let mut rows = Matrix::zeros(0, alpha.0[i]);
                    for &ai in arrows {
                        rows = rows.vstack(rep.map(ai));
                    }
                    rows
                }
                FramedKind::SourceCopies | FramedKind::SinkCopies => rep.map(arrows[0]).clone(),
            };
            framing.push(f);
        }
        Ok((m, framing))
    }
}

/// The framing stability parameter: `(|alpha|, -1, ..., -1)` on the
/// universal-source quiver, `(1, ..., 1, -|alpha|)` on the universal-sink
/// quiver. Both vanish on the canonical framed dimension vector.
pub fn framed_param_c(fq: &FramedQuiver, alpha: &DimVector) -> Result<StabilityParam> {
    let mut theta = vec![0i64; fq.quiver.num_vertices()];
    match fq.kind {
        FramedKind::Source => {
            theta[fq.extra_vertex[0]] = alpha.norm1() as i64;
            for &v in &fq.base_vertex {
                theta[v] = -1;
            }
        }
        FramedKind::Sink => {
            theta[fq.extra_vertex[0]] = -(alpha.norm1() as i64);
            for &v in &fq.base_vertex {
                theta[v] = 1;
            }
        }
        _ => {
            return Err(Error::WrongQuiverShape(
                "framing parameter requires the universal source/sink construction".into(),
            ))
        }
    }
    Ok(StabilityParam(theta))
}

/// Derived parameter on the vertex-doubling quivers: weight N on the copies
/// of the nonnegative (resp. nonpositive) part, theta shifted by -N (resp.
/// +N) on the corresponding originals. Vanishes on (beta, alpha).
pub fn framed_param_theta(
    fq: &FramedQuiver,
    theta: &StabilityParam,
    alpha: &DimVector,
    n_value: i64,
) -> Result<StabilityParam> {
    let total = theta.value(alpha);
    if total != 0 {
        return Err(Error::ThetaAlphaNonzero(total));
    }
    let mut out = vec![0i64; fq.quiver.num_vertices()];
    match fq.kind {
        FramedKind::SourceCopies => {
            for i in 0..fq.base.num_vertices() {
                let plus = theta.0[i] >= 0;
                out[fq.extra_vertex[i]] = if plus { n_value } else { 0 };
                out[fq.base_vertex[i]] = if plus {
                    theta.0[i] - n_value
                } else {
                    theta.0[i]
                };
            }
        }
        FramedKind::SinkCopies => {
            for i in 0..fq.base.num_vertices() {
                let minus = theta.0[i] <= 0;
                out[fq.base_vertex[i]] = if minus {
                    theta.0[i] + n_value
                } else {
                    theta.0[i]
                };
                out[fq.extra_vertex[i]] = if minus { -n_value } else { 0 };
            }
        }
        _ => {
            return Err(Error::WrongQuiverShape(
                "derived theta parameters live on the vertex-doubling quivers".into(),
            ))
        }
    }
    Ok(StabilityParam(out))
}

/// Derived parameter on the universal source/sink quivers:
/// `N |alpha+|` at the source with theta_i - N on the nonnegative part
/// (dually `-N |alpha-|` at the sink with theta_i + N). Vanishes on (1, alpha).
pub fn framed_param_eta(
    fq: &FramedQuiver,
    theta: &StabilityParam,
    alpha: &DimVector,
    n_value: i64,
) -> Result<StabilityParam> {
    let total = theta.value(alpha);
    if total != 0 {
        return Err(Error::ThetaAlphaNonzero(total));
    }
    let mut out = vec![0i64; fq.quiver.num_vertices()];
    match fq.kind {
        FramedKind::Source => {
            let alpha_plus: i64 = alpha.restricted(&theta.plus_mask()).norm1() as i64;
            out[fq.extra_vertex[0]] = n_value * alpha_plus;
            for i in 0..fq.base.num_vertices() {
                out[fq.base_vertex[i]] = if theta.0[i] >= 0 {
                    theta.0[i] - n_value
                } else {
                    theta.0[i]
                };
            }
        }
        FramedKind::Sink => {
            let alpha_minus: i64 = alpha.restricted(&theta.minus_mask()).norm1() as i64;
            out[fq.extra_vertex[0]] = -n_value * alpha_minus;
            for i in 0..fq.base.num_vertices() {
                out[fq.base_vertex[i]] = if theta.0[i] <= 0 {
                    theta.0[i] + n_value
                } else {
                    theta.0[i]
                };
            }
        }
        _ => {
            return Err(Error::WrongQuiverShape(
                "eta parameters live on the universal source/sink quivers".into(),
            ))
        }
    }
    Ok(StabilityParam(out))
}

/// A concrete bound standing in for "N large enough": strictly dominates
/// `|theta(alpha')|` for every sub-dimension vector `alpha' <= alpha`.
pub fn default_n(theta: &StabilityParam, alpha: &DimVector) -> i64 {
    1 + theta
        .0
        .iter()
        .zip(&alpha.0)
        .map(|(&t, &a)| t.abs() * a as i64)
        .sum::<i64>()
}

/// Enumerate all tuples of matrices with the given shapes over a finite
/// field, odometer order.
pub fn enumerate_matrix_tuples<K: Field>(
    shapes: &[(usize, usize)],
    budget: &mut Budget,
) -> Result<Vec<Vec<Matrix<K>>>> {
    let elems = K::elements().expect("matrix tuple enumeration needs a finite field");
    let total: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    let mut assignment = vec![0usize; total];
    let mut out = Vec::new();
    loop {
        budget.charge(1)?;
        let mut tuple = Vec::with_capacity(shapes.len());
        let mut off = 0;
        for &(r, c) in shapes {
            tuple.push(Matrix::from_fn(r, c, |i, j| {
                elems[assignment[off + i * c + j]].clone()
            }));
            off += r * c;
        }
        out.push(tuple);
        let mut i = total;
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

/// Outcome of one exhaustive verification sweep.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub check: String,
    pub params: Vec<(String, String)>,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn new(check: &str) -> Self {
        VerifyReport {
            check: check.to_string(),
            params: Vec::new(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let params: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.clone())))
            .collect();
        json!({
            "check": self.check,
            "params": params,
            "checked": self.checked,
            "failures": self.failures,
            "pass": self.passed(),
        })
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn describe_point<K: Field>(m: &Representation<K>, framing: &[Matrix<K>]) -> String {
    format!("M={:?} framing={:?}", m.maps(), framing)
}

/// Does some proper subrepresentation of `m` contain the given per-vertex
/// subspaces?
fn proper_subrep_contains<K: Field>(
    m: &Representation<K>,
    spaces: &[Subspace<K>],
    budget: &mut Budget,
) -> Result<bool> {
    let full = m.dim().clone();
    let mut found = false;
    for_each_subrep(m, budget, &mut |tuple| {
        let dim = DimVector(tuple.iter().map(Subspace::dim).collect());
        if dim == full {
            return Ok(true);
        }
        if tuple.iter().zip(spaces).all(|(u, s)| u.contains(s)) {
            found = true;
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(found)
}

/// Is some nonzero subrepresentation of `m` contained in the given
/// per-vertex subspaces?
fn nonzero_subrep_inside<K: Field>(
    m: &Representation<K>,
    spaces: &[Subspace<K>],
    budget: &mut Budget,
) -> Result<bool> {
    let mut found = false;
    for_each_subrep(m, budget, &mut |tuple| {
        let dim = DimVector(tuple.iter().map(Subspace::dim).collect());
        if dim.is_zero() {
            return Ok(true);
        }
        if tuple.iter().zip(spaces).all(|(u, s)| s.contains(u)) {
            found = true;
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(found)
}

/// Check the four-way equivalence for the generation criterion on every
/// framed point: semistable = stable = (no proper subrepresentation
/// contains the framing image) = (the framed projective cover map is
/// surjective); dually for the cogeneration criterion with kernels and
/// injectivity.
pub fn verify_engel_reineke<K: Field>(
    base: &Arc<Quiver>,
    alpha: &DimVector,
    beta: &DimVector,
    budget: &mut Budget,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("engel-reineke");
    report.param("alpha", alpha);
    report.param("beta", beta);
    report.param("field", K::spec());
    let reps = enumerate_reps::<K>(base, alpha, budget)?;

    // universal source: generation by the framing image
    let fq = build_framed(base, beta, FramedKind::Source)?;
    let c_plus = framed_param_c(&fq, alpha)?;
    let shapes_a: Vec<(usize, usize)> = (0..base.num_vertices())
        .map(|i| (alpha.0[i], beta.0[i]))
        .collect();
    let framings_a = enumerate_matrix_tuples::<K>(&shapes_a, budget)?;
    for m in &reps {
        for a in &framings_a {
            report.checked += 1;
            let emb = fq.embed(m, a)?;
            let verdict = check_stability(&emb, &c_plus, budget)?;
            let images: Vec<Subspace<K>> = a.iter().map(Subspace::from_col_span).collect();
            let generates = !proper_subrep_contains(m, &images, budget)?;
            let (_, _, phi) = framed_phi(m, beta, a)?;
            let surjective = is_surjective_onto(m, &phi);
            let conds = [
                verdict.is_semistable(),
                verdict.is_stable(),
                generates,
                surjective,
            ];
            if conds.iter().any(|&c| c != conds[0]) {
                report.failures.push(format!(
                    "{}: sst={} st={} generates={} surjective={}",
                    describe_point(m, a),
                    conds[0],
                    conds[1],
                    conds[2],
                    conds[3]
                ));
            }
        }
    }

    // universal sink: cogeneration via kernels
    let fq2 = build_framed(base, beta, FramedKind::Sink)?;
    let c_minus = framed_param_c(&fq2, alpha)?;
    let shapes_b: Vec<(usize, usize)> = (0..base.num_vertices())
        .map(|i| (beta.0[i], alpha.0[i]))
        .collect();
    let framings_b = enumerate_matrix_tuples::<K>(&shapes_b, budget)?;
    for m in &reps {
        for b in &framings_b {
            report.checked += 1;
            let emb = fq2.embed(m, b)?;
            let verdict = check_stability(&emb, &c_minus, budget)?;
            let kernels: Vec<Subspace<K>> =
                b.iter().map(|bi| Subspace::from_col_span(&bi.kernel_basis())).collect();
            let cogenerates = !nonzero_subrep_inside(m, &kernels, budget)?;
            let (_, _, psi) = framed_psi(m, beta, b)?;
            let injective = is_injective_from(m, &psi);
            let conds = [
                verdict.is_semistable(),
                verdict.is_stable(),
                cogenerates,
                injective,
            ];
            if conds.iter().any(|&c| c != conds[0]) {
                report.failures.push(format!(
                    "{}: sst={} st={} cogenerates={} injective={}",
                    describe_point(m, b),
                    conds[0],
                    conds[1],
                    conds[2],
                    conds[3]
                ));
            }
        }
    }
    Ok(report)
}

/// Check on every point of the doubled quivers that (semi)stability for the
/// derived parameter is equivalent to [base (semi)stability and invertible
/// framing on the relevant vertices].
pub fn verify_theta_pm<K: Field>(
    base: &Arc<Quiver>,
    alpha: &DimVector,
    theta: &StabilityParam,
    n_value: i64,
    budget: &mut Budget,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("theta-pm");
    report.param("alpha", alpha);
    report.param("N", n_value);
    report.param("field", K::spec());
    let total = theta.value(alpha);
    if total != 0 {
        return Err(Error::ThetaAlphaNonzero(total));
    }
    let reps = enumerate_reps::<K>(base, alpha, budget)?;
    let (plus_mask, minus_mask) = theta.split();

    // plus side
    let beta_plus = alpha.restricted(&plus_mask);
    let fq = build_framed(base, &beta_plus, FramedKind::SourceCopies)?;
    let theta_plus = framed_param_theta(&fq, theta, alpha, n_value)?;
    let shapes_a: Vec<(usize, usize)> = (0..base.num_vertices())
        .map(|i| (alpha.0[i], beta_plus.0[i]))
        .collect();
    let framings_a = enumerate_matrix_tuples::<K>(&shapes_a, budget)?;
    for m in &reps {
        let base_verdict = check_stability(m, theta, budget)?;
        for a in &framings_a {
            report.checked += 1;
            let emb = fq.embed(m, a)?;
            let verdict = check_stability(&emb, &theta_plus, budget)?;
            let invertible = (0..base.num_vertices())
                .filter(|&i| plus_mask[i])
                .all(|i| a[i].is_invertible());
            let want_sst = base_verdict.is_semistable() && invertible;
            let want_st = base_verdict.is_stable() && invertible;
            if verdict.is_semistable() != want_sst || verdict.is_stable() != want_st {
                report.failures.push(format!(
                    "plus {}: framed sst={} st={}, expected sst={} st={}",
                    describe_point(m, a),
                    verdict.is_semistable(),
                    verdict.is_stable(),
                    want_sst,
                    want_st
                ));
            }
        }
    }

    // minus side
    let beta_minus = alpha.restricted(&minus_mask);
    let fq2 = build_framed(base, &beta_minus, FramedKind::SinkCopies)?;
    let theta_minus = framed_param_theta(&fq2, theta, alpha, n_value)?;
    let shapes_b: Vec<(usize, usize)> = (0..base.num_vertices())
        .map(|i| (beta_minus.0[i], alpha.0[i]))
        .collect();
    let framings_b = enumerate_matrix_tuples::<K>(&shapes_b, budget)?;
    for m in &reps {
        let base_verdict = check_stability(m, theta, budget)?;
        for b in &framings_b {
            report.checked += 1;
            let emb = fq2.embed(m, b)?;
            let verdict = check_stability(&emb, &theta_minus, budget)?;
            let invertible = (0..base.num_vertices())
                .filter(|&i| minus_mask[i])
                .all(|i| b[i].is_invertible());
            let want_sst = base_verdict.is_semistable() && invertible;
            let want_st = base_verdict.is_stable() && invertible;
            if verdict.is_semistable() != want_sst || verdict.is_stable() != want_st {
                report.failures.push(format!(
                    "minus {}: framed sst={} st={}, expected sst={} st={}",
                    describe_point(m, b),
                    verdict.is_semistable(),
                    verdict.is_stable(),
                    want_sst,
                    want_st
                ));
            }
        }
    }
    Ok(report)
}

/// Check on the universal source/sink quivers that the eta-semistable,
/// eta-stable and degree-zero loci coincide pointwise.
pub fn verify_framed_stability<K: Field>(
    base: &Arc<Quiver>,
    alpha: &DimVector,
    theta: &StabilityParam,
    n_value: i64,
    budget: &mut Budget,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("framed-stability");
    report.param("alpha", alpha);
    report.param("N", n_value);
    report.param("field", K::spec());
    let total = theta.value(alpha);
    if total != 0 {
        return Err(Error::ThetaAlphaNonzero(total));
    }
    let reps = enumerate_reps::<K>(base, alpha, budget)?;
    let (plus_mask, minus_mask) = theta.split();

    let beta_plus = alpha.restricted(&plus_mask);
    let fq = build_framed(base, &beta_plus, FramedKind::Source)?;
    let eta_plus = framed_param_eta(&fq, theta, alpha, n_value)?;
    let shapes_a: Vec<(usize, usize)> = (0..base.num_vertices())
        .map(|i| (alpha.0[i], beta_plus.0[i]))
        .collect();
    for m in &reps {
        for a in &enumerate_matrix_tuples::<K>(&shapes_a, budget)? {
            report.checked += 1;
            let emb = fq.embed(m, a)?;
            let verdict = check_stability(&emb, &eta_plus, budget)?;
            let (_, _, phi) = framed_phi(m, &beta_plus, a)?;
            let surjective = is_surjective_onto(m, &phi);
            if verdict.is_semistable() != surjective || verdict.is_stable() != surjective {
                report.failures.push(format!(
                    "plus {}: sst={} st={} surjective={}",
                    describe_point(m, a),
                    verdict.is_semistable(),
                    verdict.is_stable(),
                    surjective
                ));
            }
        }
    }

    let beta_minus = alpha.restricted(&minus_mask);
    let fq2 = build_framed(base, &beta_minus, FramedKind::Sink)?;
    let eta_minus = framed_param_eta(&fq2, theta, alpha, n_value)?;
    let shapes_b: Vec<(usize, usize)> = (0..base.num_vertices())
        .map(|i| (beta_minus.0[i], alpha.0[i]))
        .collect();
    for m in &reps {
        for b in &enumerate_matrix_tuples::<K>(&shapes_b, budget)? {
            report.checked += 1;
            let emb = fq2.embed(m, b)?;
            let verdict = check_stability(&emb, &eta_minus, budget)?;
            let (_, _, psi) = framed_psi(m, &beta_minus, b)?;
            let injective = is_injective_from(m, &psi);
            if verdict.is_semistable() != injective || verdict.is_stable() != injective {
                report.failures.push(format!(
                    "minus {}: sst={} st={} injective={}",
                    describe_point(m, b),
                    verdict.is_semistable(),
                    verdict.is_stable(),
                    injective
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::F2;
    use crate::quiver::{linear_quiver, subspace_quiver};

    #[test]
    fn framing_source_shape() {
        let base = Arc::new(subspace_quiver(3));
        let beta = DimVector(vec![1, 1, 1, 0]);
        let fq = build_framed(&base, &beta, FramedKind::Source).unwrap();
        assert_eq!(fq.quiver.num_vertices(), 5);
        // one framing arrow to each source, none to the sink
        assert_eq!(fq.framing_arrows[0].len(), 1);
        assert_eq!(fq.framing_arrows[3].len(), 0);
        let alpha = DimVector(vec![1, 1, 1, 2]);
        let dims = fq.framed_dim(&alpha);
        assert_eq!(dims.0[fq.extra_vertex[0]], 1);
    }

    #[test]
    fn framing_beta_zero_adds_isolated_vertex() {
        let base = Arc::new(linear_quiver(2));
        let beta = DimVector(vec![0, 0]);
        let fq = build_framed(&base, &beta, FramedKind::Source).unwrap();
        assert_eq!(fq.quiver.num_vertices(), 3);
        assert!(fq.framing_arrows.iter().all(Vec::is_empty));
        let m = Representation::<F2>::new(
            base.clone(),
            DimVector(vec![1, 1]),
            vec![Matrix::identity(1)],
        )
        .unwrap();
        let framing = vec![Matrix::zeros(1, 0), Matrix::zeros(1, 0)];
        let emb = fq.embed(&m, &framing).unwrap();
        let (m2, f2) = fq.split(&emb).unwrap();
        assert_eq!(m2, m);
        assert_eq!(f2, framing);
    }

    #[test]
    fn doubled_linear_quiver() {
        let base = Arc::new(linear_quiver(3));
        let beta = DimVector(vec![1, 1, 1]);
        let fq = build_framed(&base, &beta, FramedKind::SinkCopies).unwrap();
        assert_eq!(fq.quiver.num_vertices(), 6);
        assert_eq!(fq.quiver.arrows().len(), 2 + 3);
    }

    #[test]
    fn embed_split_roundtrip_with_columns() {
        let base = Arc::new(subspace_quiver(2));
        let alpha = DimVector(vec![1, 1, 2]);
        let beta = DimVector(vec![1, 0, 2]);
        let fq = build_framed(&base, &beta, FramedKind::Source).unwrap();
        let m = Representation::<F2>::new(
            base.clone(),
            alpha,
            vec![
                Matrix::from_int_rows(&[&[1], &[0]]),
                Matrix::from_int_rows(&[&[1], &[1]]),
            ],
        )
        .unwrap();
        let framing = vec![
            Matrix::from_int_rows(&[&[1]]),
            Matrix::zeros(1, 0),
            Matrix::from_int_rows(&[&[1, 0], &[1, 1]]),
        ];
        let emb = fq.embed(&m, &framing).unwrap();
        let (m2, f2) = fq.split(&emb).unwrap();
        assert_eq!(m2, m);
        assert_eq!(f2, framing);
    }

    #[test]
    fn c_parameter_values() {
        let base = Arc::new(subspace_quiver(3));
        let alpha = DimVector(vec![1, 1, 1, 2]);
        let beta = DimVector(vec![1, 1, 1, 0]);
        let fq = build_framed(&base, &beta, FramedKind::Source).unwrap();
        let c = framed_param_c(&fq, &alpha).unwrap();
        assert_eq!(c.0[fq.extra_vertex[0]], 5);
        assert!(fq.base_vertex.iter().all(|&v| c.0[v] == -1));
        assert_eq!(c.value(&fq.framed_dim(&alpha)), 0);

        let fq2 = build_framed(&base, &beta, FramedKind::Sink).unwrap();
        let c2 = framed_param_c(&fq2, &alpha).unwrap();
        assert_eq!(c2.value(&fq2.framed_dim(&alpha)), 0);
    }

    #[test]
    fn derived_theta_values_on_subspace_preset() {
        let base = Arc::new(subspace_quiver(3));
        let alpha = DimVector(vec![1, 1, 1, 2]);
        let theta = StabilityParam(vec![2, 2, 2, -3]);
        let beta = alpha.restricted(&theta.plus_mask());
        let fq = build_framed(&base, &beta, FramedKind::SourceCopies).unwrap();
        let tp = framed_param_theta(&fq, &theta, &alpha, 10).unwrap();
        // copies carry (10,10,10,0), originals (-8,-8,-8,-3)
        let copies: Vec<i64> = fq.extra_vertex.iter().map(|&v| tp.0[v]).collect();
        let originals: Vec<i64> = fq.base_vertex.iter().map(|&v| tp.0[v]).collect();
        assert_eq!(copies, vec![10, 10, 10, 0]);
        assert_eq!(originals, vec![-8, -8, -8, -3]);
        assert_eq!(tp.value(&fq.framed_dim(&alpha)), 0);
    }

    #[test]
    fn derived_theta_for_zero_parameter() {
        let base = Arc::new(linear_quiver(2));
        let alpha = DimVector(vec![1, 1]);
        let theta = StabilityParam::zeros(2);
        let beta = alpha.clone();
        let fq = build_framed(&base, &beta, FramedKind::SourceCopies).unwrap();
        let tp = framed_param_theta(&fq, &theta, &alpha, 4).unwrap();
        let copies: Vec<i64> = fq.extra_vertex.iter().map(|&v| tp.0[v]).collect();
        let originals: Vec<i64> = fq.base_vertex.iter().map(|&v| tp.0[v]).collect();
        assert_eq!(copies, vec![4, 4]);
        assert_eq!(originals, vec![-4, -4]);

        let fq2 = build_framed(&base, &beta, FramedKind::SinkCopies).unwrap();
        let tm = framed_param_theta(&fq2, &theta, &alpha, 4).unwrap();
        let copies2: Vec<i64> = fq2.extra_vertex.iter().map(|&v| tm.0[v]).collect();
        assert_eq!(copies2, vec![-4, -4]);
    }

    #[test]
    fn eta_values_on_subspace_preset() {
        let base = Arc::new(subspace_quiver(3));
        let alpha = DimVector(vec![1, 1, 1, 2]);
        let theta = StabilityParam(vec![2, 2, 2, -3]);
        let beta = alpha.restricted(&theta.plus_mask());
        let fq = build_framed(&base, &beta, FramedKind::Source).unwrap();
        let eta = framed_param_eta(&fq, &theta, &alpha, 10).unwrap();
        assert_eq!(eta.0[fq.extra_vertex[0]], 30);
        let originals: Vec<i64> = fq.base_vertex.iter().map(|&v| eta.0[v]).collect();
        assert_eq!(originals, vec![-8, -8, -8, -3]);
        // 30 - 24 - 6 = 0
        assert_eq!(eta.value(&fq.framed_dim(&alpha)), 0);
    }

    #[test]
    fn eta_single_vertex_zero_theta() {
        let base = Arc::new(Quiver::new(vec!["v".into()], vec![]).unwrap());
        let alpha = DimVector(vec![1]);
        let theta = StabilityParam::zeros(1);
        let fq = build_framed(&base, &alpha, FramedKind::Source).unwrap();
        let eta = framed_param_eta(&fq, &theta, &alpha, 7).unwrap();
        assert_eq!(eta.0[fq.extra_vertex[0]], 7);
        assert_eq!(eta.0[fq.base_vertex[0]], -7);
    }

    #[test]
    fn default_n_values() {
        let theta = StabilityParam(vec![2, 2, 2, -3]);
        let alpha = DimVector(vec![1, 1, 1, 2]);
        assert_eq!(default_n(&theta, &alpha), 13);
        assert_eq!(default_n(&StabilityParam::zeros(4), &alpha), 1);
        assert_eq!(default_n(&theta, &DimVector::zeros(4)), 1);
    }

    #[test]
    fn theta_alpha_nonzero_rejected() {
        let base = Arc::new(linear_quiver(2));
        let alpha = DimVector(vec![1, 1]);
        let theta = StabilityParam(vec![1, 0]);
        let fq = build_framed(&base, &alpha, FramedKind::SourceCopies).unwrap();
        assert_eq!(
            framed_param_theta(&fq, &theta, &alpha, 3),
            Err(Error::ThetaAlphaNonzero(1))
        );
    }

    #[test]
    fn engel_reineke_on_a2() {
        let base = Arc::new(linear_quiver(2));
        let alpha = DimVector(vec![1, 1]);
        let beta = DimVector(vec![1, 0]);
        let mut budget = Budget::standard();
        let report = verify_engel_reineke::<F2>(&base, &alpha, &beta, &mut budget).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        // 4 source-framed plus 4 sink-framed points
        assert_eq!(report.checked, 8);
    }

    #[test]
    fn zero_framing_fails_all_four_conditions() {
        // With A = 0 and M nonzero all four conditions are false together,
        // so the sweep still passes.
        let base = Arc::new(linear_quiver(2));
        let alpha = DimVector(vec![1, 1]);
        let m = Representation::<F2>::new(
            base.clone(),
            alpha.clone(),
            vec![Matrix::identity(1)],
        )
        .unwrap();
        let beta = DimVector(vec![1, 1]);
        let fq = build_framed(&base, &beta, FramedKind::Source).unwrap();
        let c = framed_param_c(&fq, &alpha).unwrap();
        let zero = vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)];
        let emb = fq.embed(&m, &zero).unwrap();
        let mut budget = Budget::standard();
        let verdict = check_stability(&emb, &c, &mut budget).unwrap();
        assert!(!verdict.is_semistable());
    }
}
