//! Input resolution: files on disk or built-in fixtures by name.

use std::path::Path;

use mfill_core::filling::{chain_from_json, complex_from_json, loop_from_json, loops_from_json, Chain, Loop, SimplicialComplex2};
use mfill_core::finite_metric::io::{graph_from_json, metric_from_str, presentation_from_json};
use mfill_core::finite_metric::{FiniteMetricSpace, GroupPresentation, Graph};
use mfill_core::normed_plane::io::{named_norm, parse_coordinate, polygon_from_str};
use mfill_core::normed_plane::{random_symmetric_polygon, PolygonalNorm};
use mfill_core::scalar::ratio_to_f64;
use mfill_core::{digest, Error, Result};
use serde_json::Value;

use crate::report::InputDigest;

/// File contents when `spec` names a file, with the digest of its bytes;
/// otherwise the digest of the built-in name.
fn read(spec: &str) -> Result<(Option<String>, InputDigest)> {
    if Path::new(spec).is_file() {
        let bytes = std::fs::read(spec).map_err(|e| Error::InvalidInput(format!("{spec}: {e}")))?;
        let d = InputDigest {
            name: spec.to_string(),
            sha256: digest(&bytes),
        };
        let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{spec} is not UTF-8")))?;
        return Ok((Some(text), d));
    }
    let name = format!("builtin:{spec}");
    Ok((
        None,
        InputDigest {
            sha256: digest(name.as_bytes()),
            name,
        },
    ))
}

fn json(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

fn builtin_arg(spec: &str, prefix: &str) -> Result<Option<usize>> {
    match spec.strip_prefix(prefix).and_then(|s| s.strip_prefix(':')) {
        Some(n) => n
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("bad size in `{spec}`"))),
        None => Ok(None),
    }
}

pub fn load_norm(spec: &str) -> Result<(PolygonalNorm, InputDigest)> {
    let (text, d) = read(spec)?;
    let norm = match text {
        Some(t) => polygon_from_str(&t)?,
        None => named_norm(spec)?,
    };
    Ok((norm, d))
}

/// `n` equally spaced points on the unit circle with the chord metric.
pub fn circle_metric(n: usize) -> Result<FiniteMetricSpace> {
    let d = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = (i as i64 - j as i64).unsigned_abs() as f64;
                    2.0 * (std::f64::consts::PI * k / n as f64).sin().abs()
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::from_matrix(d)
}

pub enum MetricInput {
    Metric(FiniteMetricSpace),
    Graph(Graph),
}

pub fn builtin_graph(spec: &str) -> Result<Option<Graph>> {
    if let Some(d) = builtin_arg(spec, "tree")? {
        return Ok(Some(Graph::binary_tree(d)));
    }
    if let Some(n) = builtin_arg(spec, "cycle")? {
        return Graph::cycle(n).map(Some);
    }
    if let Some(n) = builtin_arg(spec, "grid")? {
        return Ok(Some(Graph::grid(n, n)));
    }
    if let Some(n) = builtin_arg(spec, "path")? {
        return Ok(Some(Graph::path(n)));
    }
    Ok(None)
}

pub fn load_metric_input(spec: &str) -> Result<(MetricInput, InputDigest)> {
    let (text, d) = read(spec)?;
    let input = match text {
        Some(t) => match serde_json::from_str::<Value>(&t) {
            Ok(v) if v.get("edges").is_some() => MetricInput::Graph(graph_from_json(&v)?),
            _ => MetricInput::Metric(metric_from_str(&t)?),
        },
        None => match builtin_graph(spec)? {
            Some(g) => MetricInput::Graph(g),
            None => match builtin_arg(spec, "circle")? {
                Some(n) => MetricInput::Metric(circle_metric(n)?),
                None => return Err(Error::InvalidInput(format!("no such file or fixture `{spec}`"))),
            },
        },
    };
    Ok((input, d))
}

pub fn load_metric(spec: &str) -> Result<(FiniteMetricSpace, InputDigest)> {
    let (m, d) = load_metric_input(spec)?;
    let m = match m {
        MetricInput::Metric(m) => m,
        MetricInput::Graph(g) => mfill_core::finite_metric::graph_metric(&g)?,
    };
    Ok((m, d))
}

pub fn load_graph(spec: &str) -> Result<(Graph, InputDigest)> {
    match load_metric_input(spec)? {
        (MetricInput::Graph(g), d) => Ok((g, d)),
        _ => Err(Error::InvalidInput(format!("`{spec}` is not a graph"))),
    }
}

pub fn load_presentation(spec: &str) -> Result<(GroupPresentation, InputDigest)> {
    let (text, d) = read(spec)?;
    let p = match (text, spec) {
        (Some(t), _) => presentation_from_json(&json(&t)?)?,
        (None, "z2") => GroupPresentation::new(&["a", "b"], &["abAB"])?,
        (None, "f2") => GroupPresentation::new(&["a", "b"], &[])?,
        (None, _) => return Err(Error::InvalidInput(format!("no such file or presentation `{spec}`"))),
    };
    Ok((p, d))
}

fn load_json_file(spec: &str) -> Result<(Value, InputDigest)> {
    match read(spec)? {
        (Some(t), d) => Ok((json(&t)?, d)),
        (None, _) => Err(Error::InvalidInput(format!("no such file `{spec}`"))),
    }
}

pub fn load_complex(spec: &str) -> Result<(SimplicialComplex2, InputDigest)> {
    let (v, d) = load_json_file(spec)?;
    Ok((complex_from_json(&v)?, d))
}

pub fn load_chain(k: &SimplicialComplex2, spec: &str) -> Result<(Chain, InputDigest)> {
    let (v, d) = load_json_file(spec)?;
    Ok((chain_from_json(k, &v)?, d))
}

pub fn load_loops(spec: &str) -> Result<(Vec<Loop>, InputDigest)> {
    let (v, d) = load_json_file(spec)?;
    Ok((loops_from_json(&v)?, d))
}

/// Loop JSON, or `square:<side>` on a grid and `excursion` on a tree.
pub fn load_graph_loop(graph_spec: &str, spec: &str) -> Result<(Loop, InputDigest)> {
    let (text, d) = read(spec)?;
    if let Some(t) = text {
        let v = json(&t)?;
        return Ok((loop_from_json(v.get("loop").unwrap_or(&v))?, d));
    }
    if let Some(side) = builtin_arg(spec, "square")? {
        let w = builtin_arg(graph_spec, "grid")?
            .ok_or_else(|| Error::InvalidInput("`square:<side>` needs a `grid:<n>` graph".into()))?;
        if side + 1 > w {
            return Err(Error::InvalidInput(format!("square of side {side} does not fit grid:{w}")));
        }
        return Ok((mfill_core::filling::grid_square_loop(w, 0, 0, side), d));
    }
    if spec == "excursion" {
        let depth = builtin_arg(graph_spec, "tree")?
            .ok_or_else(|| Error::InvalidInput("`excursion` needs a `tree:<depth>` graph".into()))?;
        return Ok((mfill_core::filling::tree_excursion_loop(depth), d));
    }
    Err(Error::InvalidInput(format!("no such file or loop `{spec}`")))
}

pub fn load_region(spec: &str) -> Result<(Vec<[f64; 2]>, InputDigest)> {
    let (text, d) = read(spec)?;
    let pts = match (text, spec) {
        (Some(t), _) => {
            let v = json(&t)?;
            v.get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("region JSON needs a `vertices` array".into()))?
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([x, y]) => Ok([
                        ratio_to_f64(&parse_coordinate(x)?),
                        ratio_to_f64(&parse_coordinate(y)?),
                    ]),
                    _ => Err(Error::Parse(format!("bad region vertex {p}"))),
                })
                .collect::<Result<Vec<_>>>()?
        }
        (None, "unit-square") => vec![[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]],
        (None, "diamond") => vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
        (None, _) => return Err(Error::InvalidInput(format!("no such file or region `{spec}`"))),
    };
    Ok((pts, d))
}

/// The seeded norms of a sweep: `2k`-gons with `k` cycling through 2..=10.
pub fn sweep_norms(count: usize, seed: u64) -> Result<Vec<PolygonalNorm>> {
    (0..count)
        .map(|i| {
            let s = seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(i as u64);
            random_symmetric_polygon(2 + i % 9, s)
        })
        .collect()
}

/// Size cap from `MFILL_CAP`, or `default`.
pub fn cap(default: usize) -> usize {
    std::env::var("MFILL_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}
