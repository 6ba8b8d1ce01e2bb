//! Discretized injective envelopes.
//!
//! Points of the envelope are extremal functions `f` with
//! `f(x) = max_y (d(x,y) − f(y))`, under the sup metric. Starting from the
//! distance functions `d(x, ·)`, a breadth-first walk raises all
//! coordinates outside a small set `S` by the resolution `h` and tightens
//! back onto the envelope, visiting coordinates of `S` first.

use std::collections::{HashMap, VecDeque};

use super::kuratowski::sup_distance;
use super::space::FiniteMetricSpace;
use crate::error::{Error, Result};

pub const TIGHT_SPAN_MAX_POINTS: usize = 12;
pub const TIGHT_SPAN_MAX_SAMPLES: usize = 4000;

#[derive(Debug, Clone)]
pub struct TightSpan {
    /// Envelope samples under the sup metric. The first `n` points are the
    /// input points, with their labels.
    pub space: FiniteMetricSpace,
    pub functions: Vec<Vec<f64>>,
    pub resolution: f64,
}

impl TightSpan {
    pub fn embedding(&self) -> std::ops::Range<usize> {
        0..self.functions[0].len()
    }
}

/// Lowers `f` in the given coordinate order until it is extremal.
///
/// One sequential pass suffices: lowering `f(y)` only raises the values
/// `d(x,y) − f(y)` that determine earlier coordinates, and those stay
/// below `f(x)` by feasibility.
pub fn tighten(d: &[Vec<f64>], f: &mut [f64], order: impl Iterator<Item = usize>) {
    for x in order {
        let mut v: f64 = 0.0;
        for (y, fy) in f.iter().enumerate() {
            if y != x {
                v = v.max(d[x][y] - fy);
            }
        }
        f[x] = v;
    }
}

/// Largest violation of the extremality identity.
pub fn extremality_defect(d: &[Vec<f64>], f: &[f64]) -> f64 {
    (0..f.len())
        .map(|x| {
            let m = (0..f.len())
                .map(|y| d[x][y] - f[y])
                .fold(f64::NEG_INFINITY, f64::max);
            (f[x] - m).abs()
        })
        .fold(0.0, f64::max)
}

fn key(f: &[f64], h: f64) -> Vec<i64> {
    f.iter().map(|v| (4.0 * v / h).round() as i64).collect()
}

pub fn tight_span(m: &FiniteMetricSpace, resolution: f64) -> Result<TightSpan> {
    tight_span_capped(m, resolution, TIGHT_SPAN_MAX_POINTS, TIGHT_SPAN_MAX_SAMPLES)
}

pub fn tight_span_capped(
    m: &FiniteMetricSpace,
    resolution: f64,
    max_points: usize,
    max_samples: usize,
) -> Result<TightSpan> {
    let n = m.len();
    if n > max_points {
        return Err(Error::CapExceeded {
            what: "tight span input points",
            needed: n,
            cap: max_points,
        });
    }
    if !(resolution > 0.0) {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    if n == 0 {
        return Err(Error::InvalidMetric("empty metric space".into()));
    }
    let d = m.matrix();
    let h = resolution;
    let mut moves: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for i in 0..n {
        for j in i + 1..n {
            moves.push(vec![i, j]);
        }
    }
    let mut functions: Vec<Vec<f64>> = Vec::new();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for x in 0..n {
        let f = d[x].clone();
        seen.insert(key(&f, h), x);
        functions.push(f);
        queue.push_back(x);
    }
    while let Some(i) = queue.pop_front() {
        for s in &moves {
            let mut g = functions[i].clone();
            for (y, v) in g.iter_mut().enumerate() {
                if !s.contains(&y) {
                    *v += h;
                }
            }
            let rest = (0..n).filter(|y| !s.contains(y));
            tighten(d, &mut g, s.iter().copied().chain(rest));
            let k = key(&g, h);
            if seen.contains_key(&k) {
                continue;
            }
            if functions.len() >= max_samples {
                return Err(Error::CapExceeded {
                    what: "tight span samples",
                    needed: functions.len() + 1,
                    cap: max_samples,
                });
            }
            seen.insert(k, functions.len());
            queue.push_back(functions.len());
            functions.push(g);
        }
    }
    let labels = (0..functions.len())
        .map(|i| {
            if i < n {
                m.labels()[i].clone()
            } else {
                format!("e{i}")
            }
        })
        .collect();
    let dist = functions
        .iter()
        .map(|f| functions.iter().map(|g| sup_distance(f, g)).collect())
        .collect();
    Ok(TightSpan {
        space: FiniteMetricSpace::new_unchecked(labels, dist),
        functions,
        resolution,
    })
}
