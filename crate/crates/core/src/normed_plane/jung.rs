//! Jung constant of a polygonal norm.
//!
//! In the plane it suffices to maximize `R(T) / (diam(T)/2)` over
//! triangles `T`, where `R` is the Chebyshev radius in the norm. The inner
//! problem is a small linear program; the outer problem is a multistart
//! pattern search over triangle shapes.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::polygon::PolygonalNorm;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::scalar::int;

pub const JUNG_UPPER: f64 = 4.0 / 3.0;
const CLAMP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct JungEstimate {
    pub lo: f64,
    pub hi: f64,
    /// Exact value when known in closed form (parallelograms).
    #[serde(skip)]
    pub exact: Option<BigRational>,
    pub best_triangle: [[f64; 2]; 3],
    pub evaluations: usize,
}

impl JungEstimate {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone)]
pub struct JungConfig {
    /// Required enclosure width `hi - lo`.
    pub resolution: f64,
    pub seed: u64,
    pub random_starts: usize,
    pub arc_starts: usize,
    pub refine_top: usize,
    pub min_step: f64,
}

impl Default for JungConfig {
    fn default() -> Self {
        JungConfig {
            resolution: 1e-3,
            seed: 0x6a75_6e67,
            random_starts: 48,
            arc_starts: 36,
            refine_top: 6,
            min_step: 1e-7,
        }
    }
}

/// Chebyshev radius and center of a finite point set under the norm.
///
/// Solves the dual of `min r s.t. ⟨y_k, p_i - c⟩ <= r`, which has three
/// equality rows regardless of the number of facets.
pub fn chebyshev_center(norm: &PolygonalNorm, pts: &[[f64; 2]]) -> (f64, [f64; 2]) {
    let normals = norm.facet_normals_f64();
    let nvars = pts.len() * normals.len();
    let mut lp = LinearProgram::<f64>::new(nvars);
    let mut ones = Vec::with_capacity(nvars);
    let mut xs = Vec::with_capacity(nvars);
    let mut ys = Vec::with_capacity(nvars);
    let mut col = 0;
    for p in pts {
        for y in normals {
            lp.objective[col] = -(y[0] * p[0] + y[1] * p[1]);
            ones.push((col, 1.0));
            xs.push((col, y[0]));
            ys.push((col, y[1]));
            col += 1;
        }
    }
    lp.add(ones, Relation::Eq, 1.0);
    lp.add(xs, Relation::Eq, 0.0);
    lp.add(ys, Relation::Eq, 0.0);
    match lp.solve() {
        Ok(sol) => (-sol.objective, [-sol.duals[1], -sol.duals[2]]),
        Err(_) => {
            // Fallback: best center among the points themselves.
            let mut best = (f64::INFINITY, pts[0]);
            for c in pts {
                let r = pts
                    .iter()
                    .map(|p| norm.gauge_f64([p[0] - c[0], p[1] - c[1]]))
                    .fold(0.0, f64::max);
                if r < best.0 {
                    best = (r, *c);
                }
            }
            best
        }
    }
}

pub fn diameter(norm: &PolygonalNorm, pts: &[[f64; 2]]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            d = d.max(norm.gauge_f64([pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]]));
        }
    }
    d
}

/// `R(T) / (diam(T) / 2)`; zero for degenerate triangles.
pub fn jung_ratio(norm: &PolygonalNorm, tri: &[[f64; 2]; 3]) -> f64 {
    let d = diameter(norm, tri);
    if d <= 1e-12 {
        return 0.0;
    }
    let (r, _) = chebyshev_center(norm, tri);
    2.0 * r / d
}

/// Point at Euclidean arclength fraction `u` along the boundary.
fn boundary_point(verts: &[[f64; 2]], cumulative: &[f64], u: f64) -> [f64; 2] {
    let total = *cumulative.last().unwrap();
    let s = u.rem_euclid(1.0) * total;
    let n = verts.len();
    let i = cumulative.partition_point(|c| *c <= s).saturating_sub(1).min(n - 1);
    let seg = cumulative[i + 1] - cumulative[i];
    let t = if seg > 0.0 { (s - cumulative[i]) / seg } else { 0.0 };
    let a = verts[i];
    let b = verts[(i + 1) % n];
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

struct Search<'a> {
    norm: &'a PolygonalNorm,
    evaluations: usize,
}

impl Search<'_> {
    fn eval(&mut self, tri: &[[f64; 2]; 3]) -> f64 {
        self.evaluations += 1;
        jung_ratio(self.norm, tri)
    }

    /// Compass search over the two free vertices (the first stays at its place).
    fn refine(&mut self, mut tri: [[f64; 2]; 3], mut value: f64, min_step: f64) -> ([[f64; 2]; 3], f64, f64) {
        let scale = diameter(self.norm, &tri).max(1e-12);
        let mut step = 0.05 * scale;
        while step > min_step * scale {
            let mut improved = false;
            for k in 0..4 {
                for sign in [1.0, -1.0] {
                    let mut cand = tri;
                    cand[1 + k / 2][k % 2] += sign * step;
                    let v = self.eval(&cand);
                    if v > value + 1e-15 {
                        tri = cand;
                        value = v;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        (tri, value, step / scale)
    }
}

/// Jung constant with enclosure `[lo, hi]`.
///
/// `lo` is attained by an explicit triangle. `hi` adds the Lipschitz bound
/// of the ratio over the final pattern-search mesh around the best
/// triangle, and is clamped to Bohnenblust's bound 4/3.
pub fn jung_constant(norm: &PolygonalNorm, config: &JungConfig) -> Result<JungEstimate> {
    if norm.is_parallelogram() {
        let v = norm.vertices_f64();
        return Ok(JungEstimate {
            lo: 1.0,
            hi: 1.0,
            exact: Some(int(1)),
            best_triangle: [v[0], v[1], v[2]],
            evaluations: 0,
        });
    }
    let verts = norm.vertices_f64();
    let mut cumulative = vec![0.0];
    for i in 0..verts.len() {
        let a = verts[i];
        let b = verts[(i + 1) % verts.len()];
        let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        cumulative.push(cumulative.last().unwrap() + len);
    }
    let mut search = Search {
        norm,
        evaluations: 0,
    };
    let mut candidates: Vec<([[f64; 2]; 3], f64)> = Vec::new();
    for s in 0..config.arc_starts {
        let u = s as f64 / config.arc_starts as f64;
        for spread in [1.0 / 3.0, 0.3, 0.36] {
            let tri = [
                boundary_point(verts, &cumulative, u),
                boundary_point(verts, &cumulative, u + spread),
                boundary_point(verts, &cumulative, u + 2.0 * spread),
            ];
            let v = search.eval(&tri);
            candidates.push((tri, v));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_starts {
        let tri = [
            boundary_point(verts, &cumulative, rng.gen()),
            boundary_point(verts, &cumulative, rng.gen()),
            boundary_point(verts, &cumulative, rng.gen()),
        ];
        let v = search.eval(&tri);
        candidates.push((tri, v));
    }
    candidates.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut best: Option<([[f64; 2]; 3], f64, f64)> = None;
    for (tri, v) in candidates.into_iter().take(config.refine_top) {
        let refined = search.refine(tri, v, config.min_step);
        if best.as_ref().is_none_or(|b| refined.1 > b.1) {
            best = Some(refined);
        }
    }
    let (tri, value, rel_step) = best.expect("at least one candidate");
    if value > JUNG_UPPER + CLAMP_SLACK {
        return Err(Error::JungClampViolation(value));
    }
    let lo = value.clamp(1.0, JUNG_UPPER);
    // Moving each free vertex by at most `kappa·step` in norm changes R by
    // at most that much and the diameter by at most twice that much.
    let kappa = [[1.0, 1.0], [1.0, -1.0]]
        .iter()
        .map(|u| norm.gauge_f64(*u))
        .fold(0.0, f64::max);
    let delta = kappa * rel_step * 2.0;
    let local = if delta < 0.5 {
        (lo + delta) / (1.0 - delta)
    } else {
        JUNG_UPPER
    };
    let hi = local.clamp(lo, JUNG_UPPER);
    if hi - lo > config.resolution {
        return Err(Error::EnclosureFailure {
            width: hi - lo,
            resolution: config.resolution,
            best: tri,
        });
    }
    Ok(JungEstimate {
        lo,
        hi,
        exact: None,
        best_triangle: tri,
        evaluations: search.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_center_of_square_corners() {
        let sq = PolygonalNorm::square();
        let (r, c) = chebyshev_center(&sq, &[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]);
        assert!((r - 1.0).abs() < 1e-12);
        assert!((c[0] - 1.0).abs() < 1e-9 && (c[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hexagon_midpoint_triangle_attains_four_thirds() {
        let hex = PolygonalNorm::affine_hexagon();
        let tri = [[1.0, 0.5], [-0.5, 0.5], [-0.5, -1.0]];
        assert!((jung_ratio(&hex, &tri) - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn parallelograms_are_exact() {
        let j = jung_constant(&PolygonalNorm::diamond(), &JungConfig::default()).unwrap();
        assert_eq!(j.lo, 1.0);
        assert_eq!(j.hi, 1.0);
        assert_eq!(j.exact, Some(int(1)));
    }

    #[test]
    fn degenerate_triangle_has_zero_ratio() {
        let sq = PolygonalNorm::square();
        assert_eq!(jung_ratio(&sq, &[[0.5, 0.5]; 3]), 0.0);
    }
}
