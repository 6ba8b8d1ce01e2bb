//! Polygon JSON: `{"vertices": [[x, y], ...]}` where each coordinate is a
//! decimal string, a `[p, q]` rational pair, or a JSON number.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::polygon::{Point, PolygonalNorm};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, render_rational};

pub fn parse_coordinate(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        // The shortest round-trip decimal of a JSON number is what a user typed.
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::Array(pq) if pq.len() == 2 => {
            let part = |x: &Value| -> Result<BigInt> {
                match x {
                    Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
                    Value::String(s) => s
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer `{s}`"))),
                    other => Err(Error::Parse(format!("bad rational component {other}"))),
                }
            };
            let (p, q) = (part(&pq[0])?, part(&pq[1])?);
            if q == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(p, q))
        }
        other => Err(Error::Parse(format!("bad coordinate {other}"))),
    }
}

pub fn polygon_from_json(v: &Value) -> Result<PolygonalNorm> {
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("polygon JSON needs a `vertices` array".into()))?;
    let pts = verts
        .iter()
        .map(|p| match p.as_array() {
            Some(xy) if xy.len() == 2 => Ok([parse_coordinate(&xy[0])?, parse_coordinate(&xy[1])?]),
            _ => Err(Error::Parse(format!("vertex must be a pair, got {p}"))),
        })
        .collect::<Result<Vec<Point>>>()?;
    PolygonalNorm::new(pts)
}

pub fn polygon_from_str(s: &str) -> Result<PolygonalNorm> {
    polygon_from_json(&serde_json::from_str(s)?)
}

pub fn points_to_json(pts: &[Point]) -> Value {
    Value::Array(
        pts.iter()
            .map(|p| json!([render_rational(&p[0]), render_rational(&p[1])]))
            .collect(),
    )
}

pub fn polygon_to_json(norm: &PolygonalNorm) -> Value {
    json!({ "vertices": points_to_json(norm.vertices()) })
}

/// Built-in norms: `square`, `diamond`, `hexagon`, `regular:<m>` (a 2m-gon),
/// `euclid64`.
pub fn named_norm(name: &str) -> Result<PolygonalNorm> {
    match name {
        "square" => Ok(PolygonalNorm::square()),
        "diamond" => Ok(PolygonalNorm::diamond()),
        "hexagon" => Ok(PolygonalNorm::affine_hexagon()),
        "euclid64" => PolygonalNorm::regular(32),
        _ => match name.strip_prefix("regular:") {
            Some(m) => PolygonalNorm::regular(
                m.parse()
                    .map_err(|_| Error::Parse(format!("bad polygon size in `{name}`")))?,
            ),
            None => Err(Error::Parse(format!("unknown norm `{name}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn mixed_coordinate_formats() {
        let n = polygon_from_str(
            r#"{"vertices": [["1", 0], [[1,2], "1"], [-1, "0"], ["-1/2", -1]]}"#,
        )
        .unwrap();
        assert_eq!(n.len(), 4);
        assert!(n.vertices().iter().any(|p| p[0] == rat(1, 2)));
    }

    #[test]
    fn round_trips() {
        let h = PolygonalNorm::affine_hexagon();
        assert_eq!(polygon_from_json(&polygon_to_json(&h)).unwrap(), h);
    }

    #[test]
    fn rejects_garbage() {
        assert!(polygon_from_str(r#"{"vertices": [[1]]}"#).is_err());
        assert!(polygon_from_str(r#"{"v": []}"#).is_err());
        assert!(named_norm("blob").is_err());
    }
}
