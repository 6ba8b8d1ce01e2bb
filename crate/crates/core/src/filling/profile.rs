//! Isoperimetric profiles: filling area against loop length.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use super::complex::{cycle_to_loop, Chain, Loop, SimplicialComplex2};
use super::fill::{min_filling_area, FillMode};
use super::patch::{HyperbolicBall, PlanePatch};
use crate::error::{Error, Result};
use crate::scalar::int;

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub length: f64,
    pub area: f64,
    pub ratio: f64,
    /// Primal/dual gap of the filling LP.
    pub certificate_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Trend {
    Quadratic { coefficient: f64 },
    Subquadratic,
}

#[derive(Debug, Clone, Serialize)]
pub struct Profile {
    pub rows: Vec<ProfileRow>,
    /// Least-squares `c` in `area ≈ c·length²`.
    pub fitted: f64,
    pub trend: Trend,
    /// Indices of loops that bound nothing in the complex.
    pub skipped: Vec<usize>,
}

pub fn isoperimetric_profile(k: &SimplicialComplex2, loops: &[Loop]) -> Result<Profile> {
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (i, l) in loops.iter().enumerate() {
        let z = l.chain(k)?;
        let mut length = 0.0;
        for (a, b) in l.steps() {
            length += k.distance(a, b)?;
        }
        match min_filling_area(k, &z, FillMode::Relaxed) {
            Ok(f) => rows.push(ProfileRow {
                length,
                area: f.area,
                ratio: f.area / (length * length),
                certificate_gap: f.gap,
            }),
            Err(Error::NotABoundary) => skipped.push(i),
            Err(e) => return Err(e),
        }
    }
    let num: f64 = rows.iter().map(|r| r.area * r.length * r.length).sum();
    let den: f64 = rows.iter().map(|r| r.length.powi(4)).sum();
    let fitted = if den > 0.0 { num / den } else { 0.0 };
    Ok(Profile {
        trend: trend(&rows, fitted),
        rows,
        fitted,
        skipped,
    })
}

/// Subquadratic when ratios fall strictly and end below half their maximum.
pub fn trend(rows: &[ProfileRow], fitted: f64) -> Trend {
    let decreasing = rows.len() >= 3 && rows.windows(2).all(|w| w[1].ratio < w[0].ratio);
    let max = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    match rows.last() {
        Some(last) if decreasing && last.ratio < max / 2.0 => Trend::Subquadratic,
        _ => Trend::Quadratic {
            coefficient: fitted,
        },
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Shortest path in the 1-skeleton under the vertex metric, `from` to `to`
/// inclusive.
pub fn skeleton_path(
    k: &SimplicialComplex2,
    adj: &[Vec<usize>],
    from: usize,
    to: usize,
) -> Result<Vec<usize>> {
    let mut dist: HashMap<usize, f64> = HashMap::from([(from, 0.0)]);
    let mut pred: HashMap<usize, usize> = HashMap::new();
    let mut heap = BinaryHeap::from([Entry(0.0, from)]);
    while let Some(Entry(d, u)) = heap.pop() {
        if u == to {
            break;
        }
        if d > dist[&u] {
            continue;
        }
        for &v in &adj[u] {
            let nd = d + k.distance(u, v)?;
            if dist.get(&v).is_none_or(|x| nd < *x - 1e-12) {
                dist.insert(v, nd);
                pred.insert(v, u);
                heap.push(Entry(nd, v));
            }
        }
    }
    if !dist.contains_key(&to) {
        return Err(Error::InvalidComplex(format!("no path from {from} to {to}")));
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(pred[path.last().unwrap()]);
    }
    path.reverse();
    Ok(path)
}

pub fn adjacency(k: &SimplicialComplex2) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); k.n_vertices()];
    for [u, v] in k.edges() {
        adj[*u].push(*v);
        adj[*v].push(*u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Closes a cyclic sequence of waypoints into a loop along skeleton
/// geodesics.
pub fn loop_through(k: &SimplicialComplex2, waypoints: &[usize]) -> Result<Loop> {
    let adj = adjacency(k);
    let mut vs = Vec::new();
    for i in 0..waypoints.len() {
        let (a, b) = (waypoints[i], waypoints[(i + 1) % waypoints.len()]);
        let p = skeleton_path(k, &adj, a, b)?;
        vs.extend_from_slice(&p[..p.len() - 1]);
    }
    Loop::new(vs)
}

/// A discrete circle: points of the circle of radius `r` about `center`,
/// spaced about two mesh steps apart, snapped to even grid vertices and
/// joined by skeleton geodesics.
pub fn discrete_circle(patch: &PlanePatch, center: [f64; 2], r: f64) -> Result<Loop> {
    let samples = ((2.0 * std::f64::consts::PI * r / (2.0 * patch.mesh)).ceil() as usize).max(8);
    let mut way: Vec<usize> = Vec::with_capacity(samples);
    for s in 0..samples {
        let t = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
        let p = [center[0] + r * t.cos(), center[1] + r * t.sin()];
        let v = patch.nearest_even_vertex(p).ok_or_else(|| {
            Error::InvalidInput(format!("circle of radius {r} leaves the patch"))
        })?;
        if way.last() != Some(&v) {
            way.push(v);
        }
    }
    while way.len() > 1 && way.first() == way.last() {
        way.pop();
    }
    if way.len() < 3 {
        return Err(Error::MeshTooCoarse(format!("circle of radius {r}")));
    }
    loop_through(&patch.complex, &way)
}

/// Boundary loop of the union of triangles within graph distance `k` of
/// the center.
pub fn ball_boundary_loop(ball: &HyperbolicBall, k: usize) -> Result<Loop> {
    let cx = &ball.complex;
    let mut c = Chain::zero(2);
    for (t, tri) in cx.triangles().iter().enumerate() {
        if tri.iter().all(|v| ball.depth[*v] <= k) {
            c.add_term(t, &int(1));
        }
    }
    let z = cx.boundary_of(&c)?;
    cycle_to_loop(cx, &z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::patch::{hyperbolic_ball, normed_patch, PatchGeometry, DEFAULT_TRIANGLE_CAP};

    #[test]
    fn circle_area_is_close_to_disk_area() {
        let p = normed_patch(&PatchGeometry::Euclidean, 12.0, 1.0, DEFAULT_TRIANGLE_CAP).unwrap();
        let l = discrete_circle(&p, [0.0, 0.0], 5.0).unwrap();
        let z = l.chain(&p.complex).unwrap();
        let f = min_filling_area(&p.complex, &z, FillMode::Relaxed).unwrap();
        let disk = std::f64::consts::PI * 25.0;
        assert!((f.area - disk).abs() / disk < 0.05, "area {}", f.area);
    }

    #[test]
    fn doubled_loops_keep_homogeneity() {
        let p = normed_patch(&PatchGeometry::Euclidean, 8.0, 1.0, DEFAULT_TRIANGLE_CAP).unwrap();
        let once = loop_through(&p.complex, &[p.vertex(2, 2), p.vertex(6, 2), p.vertex(6, 6), p.vertex(2, 6)]).unwrap();
        let prof = isoperimetric_profile(&p.complex, &[once.clone(), once.repeated(2)]).unwrap();
        assert_eq!(prof.rows[0].area, 16.0);
        assert_eq!(prof.rows[1].area, 32.0);
        assert_eq!(prof.rows[1].ratio, prof.rows[0].ratio / 2.0);
    }

    #[test]
    fn hyperbolic_boundaries_fill_their_balls() {
        let b = hyperbolic_ball(3, DEFAULT_TRIANGLE_CAP).unwrap();
        let l1 = ball_boundary_loop(&b, 1).unwrap();
        assert_eq!(l1.vertices.len(), 7);
        let prof = isoperimetric_profile(&b.complex, &[l1]).unwrap();
        assert_eq!(prof.rows[0].area, 7.0);
        assert_eq!(prof.rows[0].length, 7.0);
    }
}
