//! Acyclic quivers, paths, dimension vectors and stability parameters.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite acyclic directed multigraph with named vertices and arrows.
///
/// Construction fails on oriented cycles, duplicate ids, or dangling
/// endpoints; every statement downstream assumes acyclicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut vindex: HashMap<&str, usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v}")));
            }
        }
        let mut aids: HashMap<&str, ()> = HashMap::new();
        let mut parsed = Vec::with_capacity(arrows.len());
        for (id, src, dst) in &arrows {
            if aids.insert(id.as_str(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {id}")));
            }
            let s = *vindex
                .get(src.as_str())
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {id}: unknown source {src}")))?;
            let t = *vindex
                .get(dst.as_str())
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow {id}: unknown target {dst}")))?;
            parsed.push(Arrow {
                id: id.clone(),
                src: s,
                dst: t,
            });
        }
        let topo = toposort(vertices.len(), &parsed, &vertices)?;
        Ok(Quiver {
            vertices,
            arrows: parsed,
            topo,
        })
    }

    pub fn shared(self) -> Arc<Quiver> {
        Arc::new(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Topological order: every arrow goes forward; ties broken by vertex id.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// All paths from `i` to `j`, ordered by (length, arrow-id sequence).
    ///
    /// Includes the trivial path exactly when `i == j`. The fixed order pins
    /// down the bases of the standard modules, so the resolution matrices
    /// are reproducible bit for bit.
    pub fn paths(&self, i: usize, j: usize) -> Vec<Path> {
        let mut found = Vec::new();
        let mut stack = Vec::new();
        self.collect_paths(i, j, &mut stack, &mut found);
        found.sort_by(|p, q| {
            p.arrows
                .len()
                .cmp(&q.arrows.len())
                .then_with(|| self.arrow_id_seq(p).cmp(&self.arrow_id_seq(q)))
        });
        found
    }

    fn collect_paths(&self, at: usize, target: usize, stack: &mut Vec<usize>, found: &mut Vec<Path>) {
        if at == target {
            found.push(Path {
                src: stack.first().map_or(target, |&a| self.arrows[a].src),
                dst: target,
                arrows: stack.clone(),
            });
        }
        for (k, a) in self.arrows.iter().enumerate() {
            if a.src == at {
                stack.push(k);
                self.collect_paths(a.dst, target, stack, found);
                stack.pop();
            }
        }
    }

    fn arrow_id_seq(&self, p: &Path) -> Vec<&str> {
        p.arrows.iter().map(|&a| self.arrows[a].id.as_str()).collect()
    }

    pub fn path_display(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e({})", self.vertices[p.src])
        } else {
            self.arrow_id_seq(p).join(".")
        }
    }
}

fn toposort(n: usize, arrows: &[Arrow], names: &[String]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.dst] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while !ready.is_empty() {
        ready.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let v = ready.remove(0);
        order.push(v);
        for a in arrows {
            if a.src == v {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    ready.push(a.dst);
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::CyclicQuiver);
    }
    Ok(order)
}

/// An oriented path: the arrow list is in travel order (source first);
/// an empty list is the trivial path at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub src: usize,
    pub dst: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            src: v,
            dst: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Nonnegative integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm1(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Restriction: agrees with `self` on the masked vertices, 0 elsewhere.
    pub fn restricted(&self, mask: &[bool]) -> DimVector {
        DimVector(
            self.0
                .iter()
                .zip(mask)
                .map(|(&a, &m)| if m { a } else { 0 })
                .collect(),
        )
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StabilityParam(pub Vec<i64>);

impl StabilityParam {
    pub fn zeros(n: usize) -> Self {
        StabilityParam(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// theta(alpha) = sum of theta_i * alpha_i.
    pub fn value(&self, alpha: &DimVector) -> i64 {
        assert_eq!(self.0.len(), alpha.0.len());
        self.0
            .iter()
            .zip(&alpha.0)
            .map(|(&t, &a)| t * a as i64)
            .sum()
    }

    /// Membership masks for (Q0+, Q0-): theta_i >= 0 resp. theta_i <= 0.
    /// A vertex with theta_i = 0 belongs to both.
    pub fn split(&self) -> (Vec<bool>, Vec<bool>) {
        let plus = self.0.iter().map(|&t| t >= 0).collect();
        let minus = self.0.iter().map(|&t| t <= 0).collect();
        (plus, minus)
    }

    pub fn plus_mask(&self) -> Vec<bool> {
        self.split().0
    }

    pub fn minus_mask(&self) -> Vec<bool> {
        self.split().1
    }

    pub fn scale(&self, k: i64) -> StabilityParam {
        StabilityParam(self.0.iter().map(|&t| t * k).collect())
    }
}

/// Euler form of the quiver:
/// `<a,b> = sum_i a_i b_i - sum_{arrows} a_{src} b_{dst}`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> i64 {
    assert_eq!(a.len(), q.num_vertices());
    assert_eq!(b.len(), q.num_vertices());
    let diag: i64 = a
        .0
        .iter()
        .zip(&b.0)
        .map(|(&x, &y)| x as i64 * y as i64)
        .sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|ar| a.0[ar.src] as i64 * b.0[ar.dst] as i64)
        .sum();
    diag - off
}

/// The linearly oriented type-A quiver `1 -> 2 -> ... -> n`,
/// with vertices "1".."n" and arrows "a1".."a{n-1}".
pub fn linear_quiver(n: usize) -> Quiver {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
        .collect();
    Quiver::new(vertices, arrows).expect("linear quiver is acyclic")
}

/// The m-subspace quiver: sources q1..qm, one sink s, one arrow per source.
pub fn subspace_quiver(m: usize) -> Quiver {
    let mut vertices: Vec<String> = (1..=m).map(|i| format!("q{i}")).collect();
    vertices.push("s".to_string());
    let arrows: Vec<(String, String, String)> = (1..=m)
        .map(|i| (format!("a{i}"), format!("q{i}"), "s".to_string()))
        .collect();
    Quiver::new(vertices, arrows).expect("subspace quiver is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topological_order_linear() {
        let q = linear_quiver(3);
        let order: Vec<&str> = q.topological_order().iter().map(|&v| q.vertex_name(v)).collect();
        assert_eq!(order, vec!["1", "2", "3"]);
    }

    #[test]
    fn topological_order_subspace() {
        let q = subspace_quiver(3);
        let order: Vec<&str> = q.topological_order().iter().map(|&v| q.vertex_name(v)).collect();
        assert_eq!(order, vec!["q1", "q2", "q3", "s"]);
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::new(vec!["v".into()], vec![]).unwrap();
        assert_eq!(q.topological_order(), &[0]);
        assert_eq!(q.paths(0, 0).len(), 1);
    }

    #[test]
    fn cycles_are_rejected() {
        let arrows = vec![
            ("a".to_string(), "1".to_string(), "2".to_string()),
            ("b".to_string(), "2".to_string(), "1".to_string()),
        ];
        assert_eq!(
            Quiver::new(vec!["1".into(), "2".into()], arrows).unwrap_err(),
            Error::CyclicQuiver
        );
    }

    #[test]
    fn paths_linear_a3() {
        let q = linear_quiver(3);
        let p = q.paths(0, 2);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].len(), 2);
        assert_eq!(q.paths(2, 0).len(), 0);
        // i = j yields exactly the trivial path in an acyclic quiver
        assert_eq!(q.paths(1, 1), vec![Path::trivial(1)]);
    }

    #[test]
    fn paths_subspace_source_to_sink() {
        let q = subspace_quiver(3);
        let s = q.vertex_index("s").unwrap();
        let q1 = q.vertex_index("q1").unwrap();
        assert_eq!(q.paths(q1, s).len(), 1);
    }

    #[test]
    fn euler_form_examples() {
        let a2 = linear_quiver(2);
        let one = DimVector(vec![1, 1]);
        assert_eq!(euler_form(&a2, &one, &one), 1);

        let sub3 = subspace_quiver(3);
        let alpha = DimVector(vec![1, 1, 1, 2]);
        assert_eq!(euler_form(&sub3, &alpha, &alpha), 7 - 6);

        let zero = DimVector::zeros(4);
        assert_eq!(euler_form(&sub3, &zero, &alpha), 0);
    }

    #[test]
    fn theta_split_and_value() {
        let theta = StabilityParam(vec![2, 2, 2, -3]);
        let alpha = DimVector(vec![1, 1, 1, 2]);
        assert_eq!(theta.value(&alpha), 0);
        let (plus, minus) = theta.split();
        assert_eq!(plus, vec![true, true, true, false]);
        assert_eq!(minus, vec![false, false, false, true]);
        assert_eq!(alpha.restricted(&plus), DimVector(vec![1, 1, 1, 0]));

        let zero_theta = StabilityParam::zeros(4);
        let (p, m) = zero_theta.split();
        assert!(p.iter().all(|&x| x) && m.iter().all(|&x| x));
        assert_eq!(alpha.restricted(&p), alpha);
    }
}
