//! Complex JSON: `{"vertices": [[x, y(, z)], ...] | n, "triangles": [[i, j, k], ...],
//! "weights": [...], "metric": [[...]]}`. Without a metric, coordinates give
//! the Euclidean one.
//!
//! Chains are sparse maps. A 1-chain is `{"u,v": c, ...}` keyed by its
//! oriented edges; a 2-chain is `{"i,j,k": c}` keyed by triangles as
//! listed. Coefficients are JSON numbers or `"p/q"` strings. A loop is
//! `{"loop": [v0, v1, ...]}`.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::complex::{Chain, Loop, SimplicialComplex2, VertexMetric};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, render_rational};

fn index(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|i| i as usize)
        .ok_or_else(|| Error::Parse(format!("expected a vertex index, got {v}")))
}

fn number(v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("expected a number, got {v}")))
}

fn rows(v: &Value, what: &str) -> Result<Vec<Vec<f64>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("`{what}` must be an array of rows")))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse(format!("bad row in `{what}`")))?
                .iter()
                .map(number)
                .collect()
        })
        .collect()
}

pub fn complex_from_json(v: &Value) -> Result<SimplicialComplex2> {
    let (n, coords) = match v.get("vertices") {
        Some(Value::Number(n)) => (index(&Value::Number(n.clone()))?, None),
        Some(vs) => {
            let c = rows(vs, "vertices")?;
            (c.len(), Some(c))
        }
        None => return Err(Error::Parse("complex JSON needs `vertices`".into())),
    };
    let tris = v
        .get("triangles")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("complex JSON needs `triangles`".into()))?
        .iter()
        .map(|t| match t.as_array().map(Vec::as_slice) {
            Some([a, b, c]) => Ok([index(a)?, index(b)?, index(c)?]),
            _ => Err(Error::Parse(format!("bad triangle {t}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut k = SimplicialComplex2::new(n, tris, &[])?;
    if let Some(w) = v.get("weights") {
        let w = w
            .as_array()
            .ok_or_else(|| Error::Parse("`weights` must be an array".into()))?
            .iter()
            .map(number)
            .collect::<Result<Vec<_>>>()?;
        k = k.with_weights(w)?;
    }
    if let Some(c) = coords {
        k = k.with_coords(c)?;
    }
    match v.get("metric") {
        Some(m) => k.with_metric(VertexMetric::Matrix(rows(m, "metric")?)),
        None if k.coords().is_some() => k.with_metric(VertexMetric::Euclidean),
        None => Ok(k),
    }
}

pub fn complex_to_json(k: &SimplicialComplex2) -> Value {
    let mut out = Map::new();
    out.insert(
        "vertices".into(),
        match k.coords() {
            Some(c) => json!(c),
            None => json!(k.n_vertices()),
        },
    );
    out.insert("triangles".into(), json!(k.triangles()));
    out.insert("weights".into(), json!(k.weights()));
    if let Some(VertexMetric::Matrix(d)) = k.metric() {
        out.insert("metric".into(), json!(d));
    }
    Value::Object(out)
}

fn coefficient(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad coefficient {other}"))),
    }
}

fn key(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad chain key `{s}`")))
        })
        .collect()
}

/// Reads a 1-chain from an edge map or a loop.
pub fn chain_from_json(k: &SimplicialComplex2, v: &Value) -> Result<Chain> {
    if let Some(l) = v.get("loop") {
        return loop_from_json(l)?.chain(k);
    }
    let map = v
        .as_object()
        .ok_or_else(|| Error::Parse("chain JSON must be an object".into()))?;
    let mut z = Chain::zero(1);
    for (s, c) in map {
        let [a, b] = key(s)?[..] else {
            return Err(Error::Parse(format!("1-chain key `{s}` needs two vertices")));
        };
        let e = k
            .edge_id(a, b)
            .ok_or_else(|| Error::InvalidChain(format!("({a},{b}) is not an edge")))?;
        let c = coefficient(c)?;
        z.add_term(e, &if a < b { c } else { -c });
    }
    Ok(z)
}

/// Writes a chain as a sparse map keyed by the cells' vertices.
pub fn chain_to_json(k: &SimplicialComplex2, c: &Chain) -> Value {
    let cell = |i: usize| -> String {
        match c.dim {
            1 => format!("{},{}", k.edges()[i][0], k.edges()[i][1]),
            _ => {
                let [a, b, t] = k.triangles()[i];
                format!("{a},{b},{t}")
            }
        }
    };
    Value::Object(
        c.coeffs
            .iter()
            .map(|(i, v)| (cell(*i), Value::String(render_rational(v))))
            .collect(),
    )
}

pub fn loop_from_json(v: &Value) -> Result<Loop> {
    let vs = v
        .as_array()
        .ok_or_else(|| Error::Parse("a loop is an array of vertex indices".into()))?
        .iter()
        .map(index)
        .collect::<Result<Vec<_>>>()?;
    Loop::new(vs)
}

/// `{"loops": [[...], ...]}`, `[[...], ...]` or a single `{"loop": [...]}`.
pub fn loops_from_json(v: &Value) -> Result<Vec<Loop>> {
    if let Some(l) = v.get("loop") {
        return Ok(vec![loop_from_json(l)?]);
    }
    v.get("loops")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| Error::Parse("expected a list of loops".into()))?
        .iter()
        .map(loop_from_json)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let v = json!({
            "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            "triangles": [[0, 1, 2]],
            "weights": [0.5]
        });
        let k = complex_from_json(&v).unwrap();
        assert_eq!(complex_from_json(&complex_to_json(&k)).unwrap().triangles(), k.triangles());
        let z = chain_from_json(&k, &json!({"0,1": 1, "1,2": "1", "2,0": 1})).unwrap();
        assert!(k.is_cycle(&z));
        let back = chain_from_json(&k, &chain_to_json(&k, &z)).unwrap();
        assert_eq!(back, z);
        assert_eq!(chain_from_json(&k, &json!({"loop": [0, 1, 2]})).unwrap(), z);
    }

    #[test]
    fn non_edges_are_rejected() {
        let k = complex_from_json(&json!({"vertices": 4, "triangles": [[0, 1, 2]]})).unwrap();
        assert!(chain_from_json(&k, &json!({"0,3": 1})).is_err());
    }
}
