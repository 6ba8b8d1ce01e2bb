//! Lower bounds for the functional `H_λ(r)`: the supremum of the Stokes
//! sum `Σ (f(u)+f(v))/2 · (π(v)−π(u))` over the steps of a loop of length
//! at most `λr`, for `λ/r`-Lipschitz `f` and `π`.
//!
//! For fixed `f` the sum is linear in `π`, and maximizing a linear form
//! over `L`-Lipschitz functions is the dual of a transport problem. The
//! estimate alternates the two transport problems from a warm start, then
//! extends both witnesses to the whole graph by McShane's formula.

use serde::Serialize;

use super::complex::Loop;
use crate::error::{Error, Result};
use crate::finite_metric::Graph;

#[derive(Debug, Clone, Serialize)]
pub struct WitnessPair {
    pub f: Vec<f64>,
    pub pi: Vec<f64>,
    pub lipschitz_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HLambdaEstimate {
    /// Certified lower bound: the Stokes sum of `witnesses`.
    pub value: f64,
    pub warm_start_value: f64,
    pub witnesses: WitnessPair,
    pub loop_length: f64,
    pub rounds: usize,
    /// The a-priori cap `λ⁴`.
    pub cap: f64,
}

/// The discrete Stokes sum of `f dπ` along the loop.
pub fn stokes_sum(l: &Loop, f: &[f64], pi: &[f64]) -> f64 {
    l.steps()
        .map(|(u, v)| (f[u] + f[v]) / 2.0 * (pi[v] - pi[u]))
        .sum()
}

/// Maximizes `a·x` subject to `x_u − x_v ≤ cost[u][v]`, for a symmetric
/// metric `cost` and `Σ a = 0`, by successive shortest paths on the dual
/// transport problem. Returns `x` and the optimal flow cost.
pub fn transport_maximize(a: &[f64], cost: &[Vec<f64>]) -> Result<(Vec<f64>, f64)> {
    let n = a.len();
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok((vec![0.0; n], 0.0));
    }
    let eps = 1e-13 * scale;
    let mut excess = a.to_vec();
    let mut flow = vec![vec![0.0f64; n]; n];
    let mut h = vec![0.0f64; n];
    let mut guard = 0usize;
    loop {
        if excess.iter().all(|e| *e <= eps) {
            break;
        }
        guard += 1;
        if guard > 4 * n * n + 16 {
            return Err(Error::Internal("transport did not converge".into()));
        }
        // Dijkstra on reduced costs from every vertex with excess.
        let mut dist = vec![f64::INFINITY; n];
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut done = vec![false; n];
        for v in 0..n {
            if excess[v] > eps {
                dist[v] = 0.0;
            }
        }
        for _ in 0..n {
            let Some(u) = (0..n)
                .filter(|v| !done[*v] && dist[*v].is_finite())
                .min_by(|x, y| dist[*x].total_cmp(&dist[*y]).then(x.cmp(y)))
            else {
                break;
            };
            done[u] = true;
            for v in 0..n {
                if v == u || done[v] {
                    continue;
                }
                // Forward arc, or a backward arc when flow v→u is positive.
                let fwd = (cost[u][v] + h[u] - h[v]).max(0.0);
                let mut best = (dist[u] + fwd, false);
                if flow[v][u] > eps {
                    let back = (-cost[v][u] + h[u] - h[v]).max(0.0);
                    if dist[u] + back < best.0 {
                        best = (dist[u] + back, true);
                    }
                }
                if best.0 < dist[v] {
                    dist[v] = best.0;
                    pred[v] = Some((u, best.1));
                }
            }
        }
        let Some(t) = (0..n)
            .filter(|v| excess[*v] < -eps && dist[*v].is_finite())
            .min_by(|x, y| dist[*x].total_cmp(&dist[*y]).then(x.cmp(y)))
        else {
            return Err(Error::Internal("transport has unmatched supply".into()));
        };
        let mut path = Vec::new();
        let mut v = t;
        while let Some((u, back)) = pred[v] {
            path.push((u, v, back));
            v = u;
        }
        let s = v;
        let mut delta = excess[s].min(-excess[t]);
        for &(u, v, back) in &path {
            if back {
                delta = delta.min(flow[v][u]);
            }
        }
        for &(u, v, back) in &path {
            if back {
                flow[v][u] -= delta;
            } else {
                flow[u][v] += delta;
            }
        }
        excess[s] -= delta;
        excess[t] += delta;
        for v in 0..n {
            if dist[v].is_finite() {
                h[v] += dist[v];
            }
        }
    }
    let mut total = 0.0;
    for u in 0..n {
        for v in 0..n {
            total += flow[u][v] * cost[u][v];
        }
    }
    Ok((h.iter().map(|p| -p).collect(), total))
}

struct LoopData {
    /// Distinct loop vertices.
    verts: Vec<usize>,
    local: std::collections::HashMap<usize, usize>,
    /// Loop steps in local indices.
    steps: Vec<(usize, usize)>,
    /// Graph distances from each loop vertex to every graph vertex.
    dist: Vec<Vec<f64>>,
}

impl LoopData {
    fn new(g: &Graph, l: &Loop) -> Result<Self> {
        let mut verts: Vec<usize> = l.vertices.clone();
        verts.sort_unstable();
        verts.dedup();
        if let Some(v) = verts.iter().find(|v| **v >= g.len()) {
            return Err(Error::InvalidChain(format!("loop vertex {v} is not in the graph")));
        }
        let local = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect::<std::collections::HashMap<_, _>>();
        let steps = l.steps().map(|(a, b)| (local[&a], local[&b])).collect();
        let dist = verts.iter().map(|v| g.shortest_paths(*v).0).collect();
        Ok(LoopData {
            verts,
            local,
            steps,
            dist,
        })
    }

    fn local_loop(&self) -> Loop {
        Loop {
            vertices: self.steps.iter().map(|s| s.0).collect(),
        }
    }

    fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][self.verts[j]]
    }
}

/// Warm-start witness pair: `f` is a tent of height 1
/// and slope `2/r` around the part `A` of the loop's first quarter that lies
/// within `r/2` of the point at arc length `ℓ/8`, and `π` is distance to a
/// point about `r/2` earlier, divided by `r`.
fn warm_start(data: &LoopData, lambda: f64, r: f64, loop_length: f64, g: &Graph, l: &Loop) -> (Vec<f64>, Vec<f64>) {
    let n = data.verts.len();
    let mut arc = Vec::with_capacity(l.vertices.len());
    let mut s = 0.0;
    let m = l.vertices.len();
    for i in 0..m {
        arc.push(s);
        let (a, b) = (l.vertices[i], l.vertices[(i + 1) % m]);
        if a != b {
            s += g.edge_length(a, b).unwrap_or(0.0);
        }
    }
    let nearest = |target: f64| {
        (0..m)
            .min_by(|x, y| (arc[*x] - target).abs().total_cmp(&(arc[*y] - target).abs()).then(x.cmp(y)))
            .unwrap_or(0)
    };
    let beta: Vec<usize> = (0..m).filter(|i| arc[*i] <= loop_length / 4.0).collect();
    let zi = nearest(loop_length / 8.0);
    let z = data.local[&l.vertices[zi]];
    let a_set: Vec<usize> = beta
        .iter()
        .map(|i| data.local[&l.vertices[*i]])
        .filter(|v| data.d(z, *v) <= r / 2.0)
        .collect();
    let zp = data.local[&l.vertices[nearest((arc[zi] - r / 2.0).max(0.0))]];
    let f_scale = (lambda / 2.0).min(1.0);
    let pi_scale = lambda.min(1.0);
    let f = (0..n)
        .map(|v| {
            let da = a_set.iter().map(|u| data.d(*u, v)).fold(f64::INFINITY, f64::min);
            f_scale * (1.0 - 2.0 / r * da).max(0.0)
        })
        .collect();
    let pi = (0..n).map(|v| pi_scale * data.d(zp, v) / r).collect();
    (f, pi)
}

fn mcshane(data: &LoopData, values: &[f64], lip: f64, n_graph: usize) -> Vec<f64> {
    (0..n_graph)
        .map(|x| {
            values
                .iter()
                .enumerate()
                .map(|(i, v)| v + lip * data.dist[i][x])
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

fn check_lipschitz(g: &Graph, h: &[f64], lip: f64) -> Result<()> {
    for &(u, v, w) in g.edges() {
        if (h[u] - h[v]).abs() > lip * w * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::Internal(format!("witness violates the Lipschitz bound on ({u},{v})")));
        }
    }
    Ok(())
}

pub fn h_lambda_estimate(
    g: &Graph,
    l: &Loop,
    lambda: f64,
    r: f64,
    rounds: usize,
) -> Result<HLambdaEstimate> {
    if !(lambda > 0.0 && r > 0.0 && lambda.is_finite() && r.is_finite()) {
        return Err(Error::InvalidInput("λ and r must be positive".into()));
    }
    let mut loop_length = 0.0;
    for (a, b) in l.steps() {
        loop_length += g
            .edge_length(a, b)
            .ok_or_else(|| Error::LoopCheck(format!("step ({a},{b}) is not an edge")))?;
    }
    if loop_length > lambda * r * (1.0 + 1e-12) {
        return Err(Error::LoopCheck(format!(
            "loop length {loop_length} exceeds λr = {}",
            lambda * r
        )));
    }
    let lip = lambda / r;
    let data = LoopData::new(g, l)?;
    let n = data.verts.len();
    let ll = data.local_loop();
    let cost: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| lip * data.d(i, j)).collect())
        .collect();
    let (mut f, mut pi) = warm_start(&data, lambda, r, loop_length, g, l);
    let warm = stokes_sum(&ll, &f, &pi);
    let mut value = warm;
    let mut used = 0;
    for _ in 0..rounds {
        used += 1;
        let mut a = vec![0.0; n];
        for &(u, v) in &data.steps {
            let w = (f[u] + f[v]) / 2.0;
            a[v] += w;
            a[u] -= w;
        }
        let (x, c) = transport_maximize(&a, &cost)?;
        certify(&a, &x, c)?;
        pi = x;
        let mut b = vec![0.0; n];
        for &(u, v) in &data.steps {
            let d = (pi[v] - pi[u]) / 2.0;
            b[u] += d;
            b[v] += d;
        }
        let (x, c) = transport_maximize(&b, &cost)?;
        certify(&b, &x, c)?;
        f = x;
        let next = stokes_sum(&ll, &f, &pi);
        let improved = next - value;
        value = value.max(next);
        if improved <= 1e-12 * (1.0 + value.abs()) {
            break;
        }
    }
    // Extend to the whole graph and re-evaluate there.
    let f_full = mcshane(&data, &f, lip, g.len());
    let pi_full = mcshane(&data, &pi, lip, g.len());
    check_lipschitz(g, &f_full, lip)?;
    check_lipschitz(g, &pi_full, lip)?;
    let value = stokes_sum(l, &f_full, &pi_full);
    let cap = lambda.powi(4);
    if value > cap * (1.0 + 1e-9) {
        return Err(Error::Internal(format!("estimate {value} exceeds λ⁴ = {cap}")));
    }
    Ok(HLambdaEstimate {
        value,
        warm_start_value: warm,
        witnesses: WitnessPair {
            f: f_full,
            pi: pi_full,
            lipschitz_bound: lip,
        },
        loop_length,
        rounds: used,
        cap,
    })
}

fn certify(a: &[f64], x: &[f64], cost: f64) -> Result<()> {
    let obj: f64 = a.iter().zip(x).map(|(a, x)| a * x).sum();
    if (obj - cost).abs() > 1e-9 * (1.0 + cost.abs()) {
        return Err(Error::Internal(format!(
            "transport duality gap: objective {obj}, flow cost {cost}"
        )));
    }
    Ok(())
}

/// The boundary of the `side × side` square with lower-left corner
/// `(x0, y0)` in a `w`-wide grid, counterclockwise.
pub fn grid_square_loop(w: usize, x0: usize, y0: usize, side: usize) -> Loop {
    let v = |x: usize, y: usize| y * w + x;
    let mut vs = Vec::with_capacity(4 * side);
    for i in 0..side {
        vs.push(v(x0 + i, y0));
    }
    for i in 0..side {
        vs.push(v(x0 + side, y0 + i));
    }
    for i in 0..side {
        vs.push(v(x0 + side - i, y0 + side));
    }
    for i in 0..side {
        vs.push(v(x0, y0 + side - i));
    }
    Loop { vertices: vs }
}

/// Root to leftmost leaf, back, to rightmost leaf and back, in a binary
/// tree in heap order.
pub fn tree_excursion_loop(depth: usize) -> Loop {
    let mut left = vec![0usize];
    let mut right = vec![0usize];
    for _ in 0..depth {
        left.push(2 * left.last().unwrap() + 1);
        right.push(2 * right.last().unwrap() + 2);
    }
    let mut vs = left.clone();
    vs.extend(left.iter().rev().skip(1).take(depth.saturating_sub(1)));
    vs.extend(right.iter());
    vs.extend(right.iter().rev().skip(1).take(depth.saturating_sub(1)));
    Loop { vertices: vs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transport_on_two_points() {
        let cost = vec![vec![0.0, 2.0], vec![2.0, 0.0]];
        let (x, c) = transport_maximize(&[1.5, -1.5], &cost).unwrap();
        assert!((c - 3.0).abs() < 1e-12);
        assert!((1.5 * x[0] - 1.5 * x[1] - 3.0).abs() < 1e-12);
        assert!(x[0] - x[1] <= 2.0 + 1e-12);
    }

    #[test]
    fn coordinate_witnesses_on_a_square() {
        let r = 6;
        let g = Graph::grid(r + 1, r + 1);
        let l = grid_square_loop(r + 1, 0, 0, r);
        let f: Vec<f64> = (0..g.len()).map(|v| ((v % (r + 1)) as f64 / r as f64).clamp(0.0, 1.0)).collect();
        let pi: Vec<f64> = (0..g.len()).map(|v| (v / (r + 1)) as f64 / r as f64).collect();
        assert!((stokes_sum(&l, &f, &pi) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tree_loops_vanish() {
        let g = Graph::binary_tree(4);
        let l = tree_excursion_loop(4);
        let est = h_lambda_estimate(&g, &l, 8.0, 4.0, 10).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.loop_length, 16.0);
    }

    #[test]
    fn long_loops_are_rejected() {
        let g = Graph::grid(5, 5);
        let l = grid_square_loop(5, 0, 0, 4);
        assert!(matches!(
            h_lambda_estimate(&g, &l, 1.0, 4.0, 5),
            Err(Error::LoopCheck(_))
        ));
    }
}
