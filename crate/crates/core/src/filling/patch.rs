//! Substrate generators: triangulated square patches of a normed plane and
//! balls in the order-7 triangle tiling of the hyperbolic plane.

use std::collections::{HashMap, VecDeque};

use super::complex::{SimplicialComplex2, VertexMetric};
use crate::error::{Error, Result};
use crate::normed_plane::{area_density, AreaDefinition, PolygonalNorm};

pub const DEFAULT_TRIANGLE_CAP: usize = 400_000;

/// Geometry of a generated patch.
#[derive(Debug, Clone)]
pub enum PatchGeometry {
    /// The Euclidean plane; all area definitions agree with Lebesgue measure.
    Euclidean,
    Normed {
        norm: PolygonalNorm,
        mu: AreaDefinition,
    },
    /// Order-7 triangle tiling; `extent` is the combinatorial radius.
    HyperbolicHeptagonal,
}

/// A square patch `[-extent/2, extent/2]²` cut into `mesh`-sized cells.
#[derive(Debug, Clone)]
pub struct PlanePatch {
    pub complex: SimplicialComplex2,
    /// Cells per side.
    pub cells: usize,
    pub mesh: f64,
    pub extent: f64,
}

impl PlanePatch {
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        j * (self.cells + 1) + i
    }

    pub fn grid_position(&self, v: usize) -> (usize, usize) {
        (v % (self.cells + 1), v / (self.cells + 1))
    }

    pub fn point(&self, v: usize) -> [f64; 2] {
        let (i, j) = self.grid_position(v);
        [
            -self.extent / 2.0 + i as f64 * self.mesh,
            -self.extent / 2.0 + j as f64 * self.mesh,
        ]
    }

    /// Nearest grid vertex, if `p` lies in the patch.
    pub fn nearest_vertex(&self, p: [f64; 2]) -> Option<usize> {
        let idx = |x: f64| {
            let t = ((x + self.extent / 2.0) / self.mesh).round();
            (t >= 0.0 && t <= self.cells as f64).then_some(t as usize)
        };
        Some(self.vertex(idx(p[0])?, idx(p[1])?))
    }

    /// Nearest vertex with `i + j` even; all cell diagonals meet there.
    pub fn nearest_even_vertex(&self, p: [f64; 2]) -> Option<usize> {
        let v = self.nearest_vertex(p)?;
        let (i, j) = self.grid_position(v);
        if (i + j) % 2 == 0 {
            return Some(v);
        }
        let n = self.cells as i64;
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .iter()
            .map(|(di, dj)| (i as i64 + di, j as i64 + dj))
            .filter(|(a, b)| (0..=n).contains(a) && (0..=n).contains(b))
            .map(|(a, b)| self.vertex(a as usize, b as usize))
            .min_by(|a, b| {
                let d = |v: usize| {
                    let q = self.point(v);
                    (q[0] - p[0]).hypot(q[1] - p[1])
                };
                d(*a).total_cmp(&d(*b)).then(a.cmp(b))
            })
    }
}

/// Union-jack triangulation: the diagonal of cell `(i, j)` runs `/` when
/// `i + j` is even and `\` otherwise. Triangles are counterclockwise and
/// weighted by Lebesgue area times the area density.
pub fn normed_patch(
    geometry: &PatchGeometry,
    extent: f64,
    mesh: f64,
    cap: usize,
) -> Result<PlanePatch> {
    if !(extent > 0.0 && mesh > 0.0 && extent.is_finite() && mesh.is_finite()) {
        return Err(Error::InvalidInput("extent and mesh must be positive".into()));
    }
    let ratio = extent / mesh;
    let cells = ratio.round();
    if (ratio - cells).abs() > 1e-9 * ratio.max(1.0) || cells < 1.0 {
        return Err(Error::InvalidInput(format!(
            "extent {extent} is not a multiple of mesh {mesh}"
        )));
    }
    let needed = 2.0 * cells * cells;
    if needed > cap as f64 {
        return Err(Error::CapExceeded {
            what: "patch triangles",
            needed: needed.min(usize::MAX as f64) as usize,
            cap,
        });
    }
    let cells = cells as usize;
    let (density, metric) = match geometry {
        PatchGeometry::Euclidean => (1.0, VertexMetric::Euclidean),
        PatchGeometry::Normed { norm, mu } => {
            (area_density(norm, *mu).to_f64(), VertexMetric::Norm(norm.clone()))
        }
        PatchGeometry::HyperbolicHeptagonal => {
            return Err(Error::InvalidInput("use hyperbolic_ball for the tiling".into()))
        }
    };
    let side = cells + 1;
    let v = |i: usize, j: usize| j * side + i;
    let mut tris = Vec::with_capacity(2 * cells * cells);
    for j in 0..cells {
        for i in 0..cells {
            let (a, b, c, d) = (v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1));
            if (i + j) % 2 == 0 {
                tris.push([a, b, c]);
                tris.push([a, c, d]);
            } else {
                tris.push([a, b, d]);
                tris.push([b, c, d]);
            }
        }
    }
    let w = mesh * mesh / 2.0 * density;
    let coords = (0..side * side)
        .map(|k| {
            let (i, j) = (k % side, k / side);
            vec![
                -extent / 2.0 + i as f64 * mesh,
                -extent / 2.0 + j as f64 * mesh,
            ]
        })
        .collect();
    let n = tris.len();
    let complex = SimplicialComplex2::new(side * side, tris, &[])?
        .with_weights(vec![w; n])?
        .with_coords(coords)?
        .with_metric(metric)?;
    Ok(PlanePatch {
        complex,
        cells,
        mesh,
        extent,
    })
}

/// A combinatorial ball in the order-7 triangle tiling.
#[derive(Debug, Clone)]
pub struct HyperbolicBall {
    /// Unit weights, Poincaré-disk coordinates, graph metric.
    pub complex: SimplicialComplex2,
    /// Graph distance of each vertex from the center (vertex 0).
    pub depth: Vec<usize>,
    pub radius: usize,
}

type H = [f64; 3];

fn minkowski(a: &H, b: &H) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

/// Reflects `x` in the geodesic through `p` and `q` (hyperboloid model).
fn reflect(x: &H, p: &H, q: &H) -> H {
    let c = [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ];
    let mut n = [c[0], c[1], -c[2]];
    let s = minkowski(&n, &n).sqrt();
    for v in &mut n {
        *v /= s;
    }
    let k = 2.0 * minkowski(x, &n);
    let mut y = [x[0] - k * n[0], x[1] - k * n[1], x[2] - k * n[2]];
    // Re-project onto the hyperboloid to stop drift.
    y[2] = (1.0 + y[0] * y[0] + y[1] * y[1]).sqrt();
    y
}

fn poincare(x: &H) -> [f64; 2] {
    [x[0] / (1.0 + x[2]), x[1] / (1.0 + x[2])]
}

/// Edge length of the tiling: `cosh a = cos α / (1 − cos α)`, `α = 2π/7`.
pub fn heptagonal_edge_length() -> f64 {
    let c = (2.0 * std::f64::consts::PI / 7.0).cos();
    (c / (1.0 - c)).acosh()
}

struct VertexTable {
    points: Vec<H>,
    grid: HashMap<(i64, i64), Vec<usize>>,
}

impl VertexTable {
    const SCALE: f64 = 1e6;

    fn id(&mut self, x: H) -> usize {
        let p = poincare(&x);
        let key = ((p[0] * Self::SCALE).round() as i64, (p[1] * Self::SCALE).round() as i64);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(key.0 + dx, key.1 + dy)) {
                    for &i in ids {
                        let q = poincare(&self.points[i]);
                        if (q[0] - p[0]).hypot(q[1] - p[1]) < 1e-8 {
                            return i;
                        }
                    }
                }
            }
        }
        self.points.push(x);
        self.grid.entry(key).or_default().push(self.points.len() - 1);
        self.points.len() - 1
    }
}

/// Triangles of the order-7 tiling whose vertices all lie within graph
/// distance `radius` of a central vertex.
pub fn hyperbolic_ball(radius: usize, cap: usize) -> Result<HyperbolicBall> {
    if radius == 0 {
        return Err(Error::InvalidInput("radius must be at least 1".into()));
    }
    let a = heptagonal_edge_length();
    // Growth is about 2.62× per layer; refuse before generating.
    let estimate = 14.0 * 2.62f64.powi(radius as i32);
    if estimate > cap as f64 {
        return Err(Error::CapExceeded {
            what: "hyperbolic ball triangles",
            needed: estimate.min(usize::MAX as f64) as usize,
            cap,
        });
    }
    let cutoff = ((radius as f64 + 1.0) * a).cosh() + 1e-9;
    let alpha = 2.0 * std::f64::consts::PI / 7.0;
    let o: H = [0.0, 0.0, 1.0];
    let p1: H = [a.sinh(), 0.0, a.cosh()];
    let p2: H = [a.sinh() * alpha.cos(), a.sinh() * alpha.sin(), a.cosh()];
    let mut table = VertexTable {
        points: Vec::new(),
        grid: HashMap::new(),
    };
    let first = [table.id(o), table.id(p1), table.id(p2)];
    let mut seen = std::collections::HashSet::new();
    let mut key = first;
    key.sort_unstable();
    seen.insert(key);
    let mut tris = vec![first];
    let mut queue = VecDeque::from([first]);
    while let Some(t) = queue.pop_front() {
        for s in 0..3 {
            let (p, q, x) = (t[s], t[(s + 1) % 3], t[(s + 2) % 3]);
            let y = reflect(&table.points[x], &table.points[p], &table.points[q]);
            if y[2] > cutoff {
                continue;
            }
            let yi = table.id(y);
            let mut key = [p, q, yi];
            key.sort_unstable();
            if seen.insert(key) {
                tris.push([q, p, yi]);
                queue.push_back([q, p, yi]);
            }
        }
    }
    // Graph distances from the center.
    let n = table.points.len();
    let mut adj = vec![Vec::new(); n];
    for t in &tris {
        for s in 0..3 {
            adj[t[s]].push(t[(s + 1) % 3]);
            adj[t[(s + 1) % 3]].push(t[s]);
        }
    }
    let depth = bfs(&adj, 0);
    let kept: Vec<[usize; 3]> = tris
        .into_iter()
        .filter(|t| t.iter().all(|v| depth[*v] <= radius))
        .collect();
    // Reindex vertices in order of first appearance.
    let mut index = vec![usize::MAX; n];
    let mut order = Vec::new();
    index[0] = 0;
    order.push(0);
    for t in &kept {
        for v in t {
            if index[*v] == usize::MAX {
                index[*v] = order.len();
                order.push(*v);
            }
        }
    }
    let coords: Vec<Vec<f64>> = order.iter().map(|v| poincare(&table.points[*v]).to_vec()).collect();
    let mut out = Vec::with_capacity(kept.len());
    for t in &kept {
        let mut t = [index[t[0]], index[t[1]], index[t[2]]];
        let (a, b, c) = (&coords[t[0]], &coords[t[1]], &coords[t[2]]);
        let cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
        if cross < 0.0 {
            t.swap(1, 2);
        }
        out.push(t);
    }
    let m = order.len();
    let mut adj2 = vec![Vec::new(); m];
    for t in &out {
        for s in 0..3 {
            adj2[t[s]].push(t[(s + 1) % 3]);
            adj2[t[(s + 1) % 3]].push(t[s]);
        }
    }
    let matrix: Vec<Vec<f64>> = (0..m)
        .map(|s| bfs(&adj2, s).into_iter().map(|d| d as f64).collect())
        .collect();
    let depth: Vec<usize> = matrix[0].iter().map(|d| *d as usize).collect();
    let complex = SimplicialComplex2::new(m, out, &[])?
        .with_coords(coords)?
        .with_metric(VertexMetric::Matrix(matrix))?;
    Ok(HyperbolicBall {
        complex,
        depth,
        radius,
    })
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; adj.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u] {
            if d[v] == usize::MAX {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

/// Dispatches on the geometry; for the hyperbolic tiling `extent` is the
/// combinatorial radius and `mesh` is ignored.
pub fn plane_patch(
    geometry: &PatchGeometry,
    extent: f64,
    mesh: f64,
    cap: usize,
) -> Result<SimplicialComplex2> {
    match geometry {
        PatchGeometry::HyperbolicHeptagonal => {
            if extent.fract() != 0.0 || extent < 1.0 {
                return Err(Error::InvalidInput(
                    "hyperbolic radius must be a positive integer".into(),
                ));
            }
            Ok(hyperbolic_ball(extent as usize, cap)?.complex)
        }
        _ => Ok(normed_patch(geometry, extent, mesh, cap)?.complex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_patch_counts() {
        let p = normed_patch(&PatchGeometry::Euclidean, 1.0, 0.5, DEFAULT_TRIANGLE_CAP).unwrap();
        assert_eq!(p.complex.triangles().len(), 8);
        assert_eq!(p.complex.weights().iter().sum::<f64>(), 1.0);
        p.complex.check_boundary_squared().unwrap();
        assert!(normed_patch(&PatchGeometry::Euclidean, 1.0, 0.3, 100).is_err());
        assert!(normed_patch(&PatchGeometry::Euclidean, 100.0, 0.5, 100).is_err());
    }

    #[test]
    fn square_norm_patch_uses_mass_star_density() {
        let g = PatchGeometry::Normed {
            norm: PolygonalNorm::square(),
            mu: AreaDefinition::Hausdorff,
        };
        let p = normed_patch(&g, 2.0, 1.0, DEFAULT_TRIANGLE_CAP).unwrap();
        let total: f64 = p.complex.weights().iter().sum();
        assert!((total - std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(p.complex.distance(0, 8).unwrap(), 2.0);
    }

    #[test]
    fn edge_length_matches_angle_sum() {
        let a = heptagonal_edge_length();
        assert!((a - 1.0905).abs() < 1e-3);
    }

    #[test]
    fn hyperbolic_interior_degree_is_seven() {
        let b = hyperbolic_ball(3, DEFAULT_TRIANGLE_CAP).unwrap();
        b.complex.check_boundary_squared().unwrap();
        let mut deg = vec![0usize; b.complex.n_vertices()];
        for [u, v] in b.complex.edges() {
            deg[*u] += 1;
            deg[*v] += 1;
        }
        for (v, d) in deg.iter().enumerate() {
            if b.depth[v] < 3 {
                assert_eq!(*d, 7, "vertex {v} at depth {}", b.depth[v]);
            }
        }
        let layer1 = b.depth.iter().filter(|d| **d == 1).count();
        let layer2 = b.depth.iter().filter(|d| **d == 2).count();
        assert_eq!((layer1, layer2), (7, 21));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = hyperbolic_ball(2, DEFAULT_TRIANGLE_CAP).unwrap();
        let b = hyperbolic_ball(2, DEFAULT_TRIANGLE_CAP).unwrap();
        assert_eq!(a.complex.triangles(), b.complex.triangles());
    }
}
