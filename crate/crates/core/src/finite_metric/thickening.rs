//! Thickening of a graph by gluing injective envelopes of balls around a
//! separated net.
//!
//! For net points `z, z'` and envelope points `x ∈ X_z`, `x' ∈ X_z'` the
//! glued distance is
//! `ρ(x, x') = min { d_z(x,y) + d_X(y,y') + d_z'(y',x') : y ∈ B_z, y' ∈ B_z' }`,
//! and inside a single envelope the smaller of `ρ` and `d_z` is used.

use super::graph::{graph_metric, Graph};
use super::space::{separated_net, FiniteMetricSpace};
use super::tight_span::{tight_span_capped, TIGHT_SPAN_MAX_POINTS, TIGHT_SPAN_MAX_SAMPLES};
use crate::error::{Error, Result};

/// Ball radius in units of δ.
pub const BALL_FACTOR: f64 = 8.0;
/// Hausdorff bound in units of δ.
pub const HAUSDORFF_FACTOR: f64 = 64.0;

#[derive(Debug, Clone)]
pub struct Thickening {
    /// The glued space. Its first `n` points are the graph vertices.
    pub space: FiniteMetricSpace,
    pub net: Vec<usize>,
    /// Number of retained envelope points per net point, vertices included.
    pub envelope_sizes: Vec<usize>,
    /// Largest distance from a glued point to the vertex set.
    pub hausdorff: f64,
    /// Largest deviation of the original distances (zero when isometric).
    pub distortion: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ThickeningCaps {
    pub ball_points: usize,
    pub envelope_samples: usize,
    /// Points of the glued space, vertices included.
    pub glued_points: usize,
}

pub const DEFAULT_GLUED_POINTS: usize = 2000;

impl Default for ThickeningCaps {
    fn default() -> Self {
        ThickeningCaps {
            ball_points: TIGHT_SPAN_MAX_POINTS,
            envelope_samples: TIGHT_SPAN_MAX_SAMPLES,
            glued_points: DEFAULT_GLUED_POINTS,
        }
    }
}

struct Envelope {
    /// Graph vertex for each ball point; ball points come first.
    ball: Vec<usize>,
    /// Envelope metric on the retained points.
    d: Vec<Vec<f64>>,
}

pub fn delta_thickening(g: &Graph, delta: f64) -> Result<Thickening> {
    delta_thickening_capped(g, delta, ThickeningCaps::default())
}

pub fn delta_thickening_capped(g: &Graph, delta: f64, caps: ThickeningCaps) -> Result<Thickening> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput("δ must be positive".into()));
    }
    let x = graph_metric(g)?;
    let n = x.len();
    let net = separated_net(&x, delta)?;
    let prune = delta / 4.0;

    let glued_cap = |needed: usize| Error::CapExceeded {
        what: "points in the glued space",
        needed,
        cap: caps.glued_points,
    };
    let mut glued = n;
    let mut envelopes = Vec::with_capacity(net.len());
    for &z in &net {
        let ball: Vec<usize> = (0..n)
            .filter(|&v| x.d(z, v) <= BALL_FACTOR * delta)
            .collect();
        if ball.len() > caps.ball_points {
            return Err(Error::CapExceeded {
                what: "points in an 8δ-ball",
                needed: ball.len(),
                cap: caps.ball_points,
            });
        }
        let length_metric = graph_metric(&g.induced(&ball))?;
        let ts = tight_span_capped(&length_metric, prune, caps.ball_points, caps.envelope_samples)?;
        // Keep every ball point, then a δ/4-net of the remaining samples.
        let mut keep: Vec<usize> = (0..ball.len()).collect();
        for i in ball.len()..ts.space.len() {
            if keep.iter().all(|&k| ts.space.d(i, k) >= prune) {
                keep.push(i);
                if glued + keep.len() - ball.len() > caps.glued_points {
                    return Err(glued_cap(glued + keep.len() - ball.len()));
                }
            }
        }
        glued += keep.len() - ball.len();
        let d = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| ts.space.d(i, j)).collect())
            .collect();
        envelopes.push(Envelope { ball, d });
    }

    // Global points: graph vertices, then the extra points of each envelope.
    let mut owner: Vec<(usize, usize)> = Vec::new();
    let mut labels: Vec<String> = g.labels().to_vec();
    for (e, env) in envelopes.iter().enumerate() {
        for k in env.ball.len()..env.d.len() {
            owner.push((e, k));
            labels.push(format!("{}#{}", g.labels()[net[e]], k));
        }
    }
    let total = n + owner.len();

    // dist_to_vertices[e][k][v]: min over y ∈ B_e of d_e(k, y) + d_X(y, v).
    let dist_to_vertices: Vec<Vec<Vec<f64>>> = envelopes
        .iter()
        .map(|env| {
            (0..env.d.len())
                .map(|k| {
                    (0..n)
                        .map(|v| {
                            env.ball
                                .iter()
                                .enumerate()
                                .map(|(yi, &y)| env.d[k][yi] + x.d(y, v))
                                .fold(f64::INFINITY, f64::min)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut d = vec![vec![0.0; total]; total];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = x.d(i, j);
        }
    }
    for (a, &(e, k)) in owner.iter().enumerate() {
        let ia = n + a;
        for v in 0..n {
            d[ia][v] = dist_to_vertices[e][k][v];
            d[v][ia] = d[ia][v];
        }
        for (b, &(e2, k2)) in owner.iter().enumerate().skip(a + 1) {
            let env2 = &envelopes[e2];
            let rho = env2
                .ball
                .iter()
                .enumerate()
                .map(|(yi, &y)| dist_to_vertices[e][k][y] + env2.d[yi][k2])
                .fold(f64::INFINITY, f64::min);
            let v = if e == e2 { rho.min(envelopes[e].d[k][k2]) } else { rho };
            d[ia][n + b] = v;
            d[n + b][ia] = v;
        }
    }
    // Shortest-path closure makes the glued distance a metric.
    for k in 0..total {
        for i in 0..total {
            let dik = d[i][k];
            for j in 0..total {
                let via = dik + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let mut distortion: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            distortion = distortion.max((d[i][j] - x.d(i, j)).abs());
        }
    }
    let hausdorff = (0..total)
        .map(|i| (0..n).map(|v| d[i][v]).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let space = FiniteMetricSpace::new_unchecked(labels, d);
    let envelope_sizes = envelopes.iter().map(|e| e.d.len()).collect();
    let out = Thickening {
        space,
        net,
        envelope_sizes,
        hausdorff,
        distortion,
    };
    if out.distortion > 1e-9 {
        return Err(Error::Internal(format!(
            "thickening distorts original distances by {}",
            out.distortion
        )));
    }
    if out.hausdorff > HAUSDORFF_FACTOR * delta + 1e-9 {
        return Err(Error::Internal(format!(
            "thickening Hausdorff distance {} exceeds 64δ",
            out.hausdorff
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_metric::tight_span::tight_span;

    #[test]
    fn single_edge_is_one_envelope() {
        let g = Graph::path(2);
        let t = delta_thickening(&g, 2.0).unwrap();
        assert_eq!(t.net, vec![0]);
        let seg = tight_span(&graph_metric(&g).unwrap(), 0.5).unwrap();
        assert_eq!(t.space.len(), seg.space.len());
        assert_eq!(t.space.d(0, 1), 1.0);
    }

    #[test]
    fn caps_reject_large_balls() {
        let g = Graph::path(20);
        assert!(matches!(
            delta_thickening(&g, 1.0),
            Err(Error::CapExceeded { .. })
        ));
    }
}
