//! Input formats: distance matrices as CSV (header row of labels) or JSON
//! `{"labels": [...], "d": [[...]]}`; graphs as JSON
//! `{"vertices": [...] | n, "edges": [[u, v, w], ...]}`; presentations as JSON
//! `{"generators": ["a", "b"], "relators": ["abAB"]}`.

use serde_json::{json, Value};

use super::cayley::GroupPresentation;
use super::graph::Graph;
use super::space::FiniteMetricSpace;
use crate::error::{Error, Result};

fn label_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("bad label {other}"))),
    }
}

fn number(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => crate::scalar::parse_rational(s).map(|r| crate::scalar::ratio_to_f64(&r)),
        other => Err(Error::Parse(format!("bad number {other}"))),
    }
}

pub fn metric_from_csv(text: &str) -> Result<FiniteMetricSpace> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut labels: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    // An optional leading empty header cell marks a row-label column.
    let row_labels = labels.first().is_some_and(|s| s.is_empty());
    if row_labels {
        labels.remove(0);
    }
    let mut d = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let cells: Vec<&str> = rec.iter().skip(usize::from(row_labels)).collect();
        let row = cells
            .iter()
            .map(|c| crate::scalar::parse_rational(c).map(|r| crate::scalar::ratio_to_f64(&r)))
            .collect::<Result<Vec<f64>>>()?;
        d.push(row);
    }
    FiniteMetricSpace::new(labels, d)
}

pub fn metric_from_json(v: &Value) -> Result<FiniteMetricSpace> {
    let d = v
        .get("d")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("metric JSON needs a `d` matrix".into()))?;
    let d = d
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                .iter()
                .map(number)
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = match v.get("labels").and_then(Value::as_array) {
        Some(ls) => ls.iter().map(label_of).collect::<Result<Vec<_>>>()?,
        None => (0..d.len()).map(|i| i.to_string()).collect(),
    };
    FiniteMetricSpace::new(labels, d)
}

pub fn metric_to_json(m: &FiniteMetricSpace) -> Value {
    json!({ "labels": m.labels(), "d": m.matrix() })
}

/// Parses a metric from JSON or, failing that, CSV.
pub fn metric_from_str(text: &str) -> Result<FiniteMetricSpace> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => metric_from_json(&v),
        Err(_) => metric_from_csv(text),
    }
}

pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let labels: Vec<String> = match v.get("vertices") {
        Some(Value::Array(ls)) => ls.iter().map(label_of).collect::<Result<_>>()?,
        Some(Value::Number(n)) => {
            let n = n
                .as_u64()
                .ok_or_else(|| Error::Parse("vertex count must be a nonnegative integer".into()))?;
            (0..n).map(|i| i.to_string()).collect()
        }
        _ => return Err(Error::Parse("graph JSON needs `vertices`".into())),
    };
    let find = |x: &Value| -> Result<usize> {
        let l = label_of(x)?;
        labels
            .iter()
            .position(|s| *s == l)
            .ok_or(Error::UnknownLabel(l))
    };
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("graph JSON needs `edges`".into()))?
        .iter()
        .map(|e| {
            let e = e
                .as_array()
                .filter(|e| e.len() == 2 || e.len() == 3)
                .ok_or_else(|| Error::Parse(format!("bad edge {e}")))?;
            let w = if e.len() == 3 { number(&e[2])? } else { 1.0 };
            Ok((find(&e[0])?, find(&e[1])?, w))
        })
        .collect::<Result<Vec<_>>>()?;
    Graph::new(labels, edges)
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({
        "vertices": g.labels(),
        "edges": g.edges().iter().map(|&(u, v, w)| json!([g.labels()[u], g.labels()[v], w])).collect::<Vec<_>>(),
    })
}

pub fn presentation_from_json(v: &Value) -> Result<GroupPresentation> {
    let p: GroupPresentation = serde_json::from_value(v.clone())?;
    let gens: Vec<&str> = p.generators.iter().map(String::as_str).collect();
    let rels: Vec<&str> = p.relators.iter().map(String::as_str).collect();
    GroupPresentation::new(&gens, &rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_with_and_without_row_labels() {
        let a = metric_from_csv("a,b,c\n0,3,4\n3,0,5\n4,5,0\n").unwrap();
        let b = metric_from_csv(",a,b,c\na,0,3,4\nb,3,0,5\nc,4,5,0\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.d(1, 2), 5.0);
    }

    #[test]
    fn json_metric_and_graph() {
        let m = metric_from_str(r#"{"labels": ["x", "y"], "d": [[0, "1/2"], [0.5, 0]]}"#).unwrap();
        assert_eq!(m.d(0, 1), 0.5);
        let g = graph_from_json(&serde_json::json!({
            "vertices": ["a", "b", "c"],
            "edges": [["a", "b", 1], ["b", "c"]]
        }))
        .unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn presentation_json() {
        let p = presentation_from_json(&serde_json::json!({
            "generators": ["a", "b"], "relators": ["abAB"]
        }))
        .unwrap();
        assert_eq!(p.relators.len(), 1);
        assert!(presentation_from_json(&serde_json::json!({"generators": ["a"], "relators": ["c"]})).is_err());
    }
}
