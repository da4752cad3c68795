//! JSON formats for quivers, dimension vectors, stability parameters,
//! representations, matrices and Grassmannian points.
//!
//! Matrices serialize as arrays of arrays: plain integer residues over a
//! prime field, reduced "n/d" strings over the rationals.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::grassmannian::SubspaceTuple;
use crate::matrix::Matrix;
use crate::quiver::{DimVector, Quiver, StabilityParam};
use crate::rep::{LabeledBasis, Representation};
use crate::stability::{StabilityVerdict, SubrepWitness};
use crate::subspace::Subspace;

pub fn quiver_to_json(q: &Quiver) -> Value {
    json!({
        "vertices": q.vertex_names(),
        "arrows": q.arrows().iter().map(|a| json!({
            "id": a.id,
            "src": q.vertex_name(a.src),
            "dst": q.vertex_name(a.dst),
        })).collect::<Vec<_>>(),
    })
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("quiver: expected an object".into()))?;
    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("quiver: missing \"vertices\" array".into()))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("quiver: vertex ids must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let arrows: Vec<(String, String, String)> = obj
        .get("arrows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("quiver: missing \"arrows\" array".into()))?
        .iter()
        .map(|a| {
            let get = |k: &str| -> Result<String> {
                a.get(k)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| Error::Parse(format!("quiver: arrow needs string \"{k}\"")))
            };
            Ok((get("id")?, get("src")?, get("dst")?))
        })
        .collect::<Result<_>>()?;
    Quiver::new(vertices, arrows)
}

fn vertex_map_from_json(v: &Value, q: &Quiver, what: &str) -> Result<Vec<i64>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an object keyed by vertex")))?;
    let mut out = vec![0i64; q.num_vertices()];
    let mut seen = vec![false; q.num_vertices()];
    for (k, val) in obj {
        let idx = q
            .vertex_index(k)
            .ok_or_else(|| Error::Parse(format!("{what}: unknown vertex {k}")))?;
        out[idx] = val
            .as_i64()
            .ok_or_else(|| Error::Parse(format!("{what}: entry at {k} must be an integer")))?;
        seen[idx] = true;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::Parse(format!(
            "{what}: missing vertex {}",
            q.vertex_name(missing)
        )));
    }
    Ok(out)
}

pub fn dimvector_from_json(v: &Value, q: &Quiver) -> Result<DimVector> {
    let raw = vertex_map_from_json(v, q, "dimension vector")?;
    raw.iter()
        .map(|&x| {
            usize::try_from(x)
                .map_err(|_| Error::Parse("dimension vector entries must be nonnegative".into()))
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(DimVector)
}

pub fn dimvector_to_json(d: &DimVector, q: &Quiver) -> Value {
    let mut map = Map::new();
    for (i, &x) in d.0.iter().enumerate() {
        map.insert(q.vertex_name(i).to_string(), Value::from(x));
    }
    Value::Object(map)
}

pub fn param_from_json(v: &Value, q: &Quiver) -> Result<StabilityParam> {
    Ok(StabilityParam(vertex_map_from_json(
        v,
        q,
        "stability parameter",
    )?))
}

pub fn param_to_json(p: &StabilityParam, q: &Quiver) -> Value {
    let mut map = Map::new();
    for (i, &x) in p.0.iter().enumerate() {
        map.insert(q.vertex_name(i).to_string(), Value::from(x));
    }
    Value::Object(map)
}

pub fn matrix_to_json<K: Field>(m: &Matrix<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| m[(r, c)].to_json()).collect()))
            .collect(),
    )
}

pub fn matrix_from_json<K: Field>(v: &Value, rows: usize, cols: usize) -> Result<Matrix<K>> {
    let data = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix: expected an array of rows".into()))?;
    if data.len() != rows {
        return Err(Error::Parse(format!(
            "matrix: expected {rows} rows, got {}",
            data.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in data {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("matrix: rows must be arrays".into()))?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "matrix: expected {cols} columns, got {}",
                row.len()
            )));
        }
        for e in row {
            entries.push(K::from_json(e)?);
        }
    }
    Ok(Matrix::new(rows, cols, entries))
}

pub fn representation_to_json<K: Field>(m: &Representation<K>) -> Value {
    let q = m.quiver();
    let mut maps = Map::new();
    for (a, mat) in q.arrows().iter().zip(m.maps()) {
        maps.insert(a.id.clone(), matrix_to_json(mat));
    }
    json!({
        "field": K::spec().to_string(),
        "dim": dimvector_to_json(m.dim(), q),
        "maps": Value::Object(maps),
    })
}

/// Read a representation; the file's field tag must match K.
pub fn representation_from_json<K: Field>(
    v: &Value,
    quiver: &Arc<Quiver>,
) -> Result<Representation<K>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("representation: expected an object".into()))?;
    if let Some(tag) = obj.get("field").and_then(Value::as_str) {
        let spec: FieldSpec = tag.parse()?;
        if spec != K::spec() {
            return Err(Error::Parse(format!(
                "representation: field tag {spec} does not match the requested field {}",
                K::spec()
            )));
        }
    }
    let dim = dimvector_from_json(
        obj.get("dim")
            .ok_or_else(|| Error::Parse("representation: missing \"dim\"".into()))?,
        quiver,
    )?;
    let maps_obj = obj
        .get("maps")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("representation: missing \"maps\" object".into()))?;
    let maps = quiver
        .arrows()
        .iter()
        .map(|a| {
            let entry = maps_obj
                .get(&a.id)
                .ok_or_else(|| Error::Parse(format!("representation: missing map for {}", a.id)))?;
            matrix_from_json::<K>(entry, dim.0[a.dst], dim.0[a.src])
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(quiver.clone(), dim, maps)
}

pub fn subspace_to_json<K: Field>(s: &Subspace<K>) -> Value {
    json!({
        "ambient_dim": s.ambient_dim(),
        "dim": s.dim(),
        "basis": matrix_to_json(s.basis()),
    })
}

pub fn subspace_tuple_to_json<K: Field>(pt: &SubspaceTuple<K>, q: &Quiver) -> Value {
    let mut map = Map::new();
    for (i, s) in pt.spaces.iter().enumerate() {
        map.insert(q.vertex_name(i).to_string(), subspace_to_json(s));
    }
    Value::Object(map)
}

pub fn witness_to_json<K: Field>(w: &SubrepWitness<K>, q: &Quiver) -> Value {
    let mut spaces = Map::new();
    for (i, s) in w.spaces.iter().enumerate() {
        spaces.insert(q.vertex_name(i).to_string(), subspace_to_json(s));
    }
    json!({
        "dim": dimvector_to_json(&w.dim, q),
        "theta_value": w.theta_value,
        "spaces": Value::Object(spaces),
    })
}

pub fn verdict_to_json<K: Field>(v: &StabilityVerdict<K>, q: &Quiver) -> Value {
    match v {
        StabilityVerdict::Stable => json!({"verdict": "stable"}),
        StabilityVerdict::SemistableNotStable(w) => json!({
            "verdict": "semistable_not_stable",
            "witness": witness_to_json(w, q),
        }),
        StabilityVerdict::Unstable(w) => json!({
            "verdict": "unstable",
            "witness": witness_to_json(w, q),
        }),
        StabilityVerdict::ThetaNonzero(t) => json!({
            "verdict": "theta_nonzero",
            "theta_of_dim": t,
        }),
    }
}

/// Vertexwise matrices of a homomorphism with their labeled bases, as
/// printed by the resolution command.
pub fn labeled_maps_to_json<K: Field>(
    q: &Quiver,
    basis: &LabeledBasis,
    maps: &[Matrix<K>],
) -> Value {
    let mut out = Map::new();
    for (v, mat) in maps.iter().enumerate() {
        let labels: Vec<String> = basis.labels[v]
            .iter()
            .map(|l| format!("{}[{}]", q.path_display(&l.path), l.copy))
            .collect();
        out.insert(
            q.vertex_name(v).to_string(),
            json!({
                "labels": labels,
                "matrix": matrix_to_json(mat),
            }),
        );
    }
    Value::Object(out)
}
