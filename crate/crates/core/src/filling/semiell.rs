//! Numerical semi-ellipticity test: the boundary of a flat convex region
//! should not bound anything cheaper than the region itself.

use serde::Serialize;

use super::complex::Loop;
use super::fill::{min_filling_area, FillMode};
use super::patch::{normed_patch, PatchGeometry, PlanePatch, DEFAULT_TRIANGLE_CAP};
use super::profile::adjacency;
use crate::error::{Error, Result};
use crate::normed_plane::{area_density, AreaDefinition, PolygonalNorm};

pub const DEFAULT_SEMIELL_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct SemiEllipticity {
    pub pass: bool,
    pub fill: f64,
    /// `μ(C)`: density times Lebesgue area of the region.
    pub reference: f64,
    pub ratio: Option<f64>,
    pub tolerance: f64,
    pub mu: AreaDefinition,
    /// Set for Hausdorff weights, whose semi-ellipticity is open.
    pub experimental: bool,
    pub max_snap_error: f64,
    pub triangles: usize,
}

fn shoelace(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % n]);
            p[0] * q[1] - p[1] * q[0]
        })
        .sum::<f64>()
        / 2.0
}

fn check_convex(pts: &[[f64; 2]]) -> Result<()> {
    let n = pts.len();
    let mut sign = 0.0;
    for i in 0..n {
        let (a, b, c) = (pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
        let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if cross.abs() <= 1e-12 {
            continue;
        }
        if sign * cross < 0.0 {
            return Err(Error::InvalidPolygon("region is not convex".into()));
        }
        sign = cross.signum();
    }
    Ok(())
}

/// Walks the skeleton from `a` to `b`, each step moving forward along the
/// segment and staying as close to its line as the edges allow.
fn trace_side(patch: &PlanePatch, adj: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let (pa, pb) = (patch.point(a), patch.point(b));
    let dir = [pb[0] - pa[0], pb[1] - pa[1]];
    let len = dir[0].hypot(dir[1]);
    let off_line = |p: [f64; 2]| ((p[0] - pa[0]) * dir[1] - (p[1] - pa[1]) * dir[0]).abs() / len;
    let to_b = |p: [f64; 2]| (pb[0] - p[0]).hypot(pb[1] - p[1]);
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let pc = patch.point(cur);
        let next = adj[cur]
            .iter()
            .copied()
            .filter(|v| {
                let p = patch.point(*v);
                (p[0] - pc[0]) * dir[0] + (p[1] - pc[1]) * dir[1] > 0.0 && to_b(p) < to_b(pc)
            })
            .min_by(|x, y| {
                let (p, q) = (patch.point(*x), patch.point(*y));
                off_line(p)
                    .total_cmp(&off_line(q))
                    .then(to_b(p).total_cmp(&to_b(q)))
                    .then(x.cmp(y))
            })
            .expect("an axis step always approaches the target");
        path.push(next);
        cur = next;
    }
    path
}

/// Fills `∂C` in a patch of the normed plane carrying `mu`-density
/// weights and passes iff `fill ≥ μ(C)·(1 − tolerance)`.
pub fn semi_ellipticity_check(
    norm: &PolygonalNorm,
    region: &[[f64; 2]],
    mesh: f64,
    mu: AreaDefinition,
    tolerance: f64,
) -> Result<SemiEllipticity> {
    if !(mesh > 0.0 && mesh.is_finite()) {
        return Err(Error::InvalidInput("mesh must be positive".into()));
    }
    if region.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPolygon("non-finite coordinate".into()));
    }
    let experimental = mu == AreaDefinition::Hausdorff;
    let density = area_density(norm, mu).to_f64();
    let mut pts: Vec<[f64; 2]> = region.to_vec();
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    let lebesgue = if pts.len() < 3 { 0.0 } else { shoelace(&pts) };
    let scale = pts.iter().flatten().fold(1.0f64, |m, c| m.max(c.abs()));
    if lebesgue.abs() <= 1e-12 * scale * scale {
        return Ok(SemiEllipticity {
            pass: true,
            fill: 0.0,
            reference: 0.0,
            ratio: None,
            tolerance,
            mu,
            experimental,
            max_snap_error: 0.0,
            triangles: 0,
        });
    }
    check_convex(&pts)?;
    if lebesgue < 0.0 {
        pts.reverse();
    }
    let shortest = (0..pts.len())
        .map(|i| {
            let (p, q) = (pts[i], pts[(i + 1) % pts.len()]);
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .fold(f64::INFINITY, f64::min);
    if mesh > shortest / 2.0 {
        return Err(Error::MeshTooCoarse(format!(
            "mesh {mesh} exceeds half the shortest side {shortest}"
        )));
    }
    let reach = pts.iter().flatten().fold(0.0f64, |m, c| m.max(c.abs()));
    let cells = 2 * (reach / mesh).ceil() as usize + 4;
    let extent = cells as f64 * mesh;
    let geometry = PatchGeometry::Normed {
        norm: norm.clone(),
        mu,
    };
    let patch = normed_patch(&geometry, extent, mesh, DEFAULT_TRIANGLE_CAP)?;
    let mut corners = Vec::with_capacity(pts.len());
    let mut max_snap_error = 0.0f64;
    for p in &pts {
        let v = patch
            .nearest_vertex(*p)
            .ok_or_else(|| Error::Internal("region leaves its patch".into()))?;
        let q = patch.point(v);
        max_snap_error = max_snap_error.max((q[0] - p[0]).hypot(q[1] - p[1]));
        if corners.contains(&v) {
            return Err(Error::MeshTooCoarse("two corners snap to one vertex".into()));
        }
        corners.push(v);
    }
    let adj = adjacency(&patch.complex);
    let mut vs = Vec::new();
    for i in 0..corners.len() {
        let side = trace_side(&patch, &adj, corners[i], corners[(i + 1) % corners.len()]);
        vs.extend_from_slice(&side[..side.len() - 1]);
    }
    let l = Loop::new(vs)?;
    let z = l.chain(&patch.complex)?;
    let fill = min_filling_area(&patch.complex, &z, FillMode::Relaxed)?.area;
    let reference = density * lebesgue.abs();
    Ok(SemiEllipticity {
        pass: fill >= reference * (1.0 - tolerance),
        fill,
        reference,
        ratio: Some(fill / reference),
        tolerance,
        mu,
        experimental,
        max_snap_error,
        triangles: patch.complex.triangles().len(),
    })
}
