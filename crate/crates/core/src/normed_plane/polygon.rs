use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{dyadic, int, ratio_to_f64};

pub type Point = [BigRational; 2];

pub fn point(x: BigRational, y: BigRational) -> Point {
    [x, y]
}

pub(crate) fn cross(a: &Point, b: &Point) -> BigRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub(crate) fn dot(a: &Point, b: &Point) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub(crate) fn to_f64(p: &Point) -> [f64; 2] {
    [ratio_to_f64(&p[0]), ratio_to_f64(&p[1])]
}

/// A centrally symmetric convex polygon, used as the unit ball of a norm on
/// the plane.
///
/// Vertices are stored counterclockwise starting at the vertex of smallest
/// polar angle in `[0, 2π)`. The facet normals `dual[i]` (one per edge
/// `v[i] → v[i+1]`) satisfy `⟨dual[i], v⟩ = 1` on that edge, so the gauge is
/// `max_i ⟨dual[i], v⟩`.
#[derive(Clone, PartialEq)]
pub struct PolygonalNorm {
    vertices: Vec<Point>,
    dual: Vec<Point>,
    vertices_f64: Vec<[f64; 2]>,
    dual_f64: Vec<[f64; 2]>,
}

impl fmt::Debug for PolygonalNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolygonalNorm")
            .field("vertices", &self.vertices_f64)
            .finish()
    }
}

fn half_plane(p: &Point) -> u8 {
    if p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()) {
        0
    } else {
        1
    }
}

impl PolygonalNorm {
    /// Validates and canonicalizes a vertex list. Clockwise input is
    /// reversed; collinear triples, odd counts, asymmetric or non-convex
    /// polygons are rejected.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidPolygon(format!(
                "need an even vertex count >= 4, got {n}"
            )));
        }
        let twice_area = (0..n).fold(BigRational::zero(), |acc, i| {
            acc + cross(&vertices[i], &vertices[(i + 1) % n])
        });
        if twice_area.is_negative() {
            vertices.reverse();
        } else if twice_area.is_zero() {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        for i in 0..n {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % n];
            let c = &vertices[(i + 2) % n];
            let turn = cross(&sub(b, a), &sub(c, b));
            if turn.is_zero() {
                return Err(Error::InvalidPolygon(format!(
                    "collinear vertices at positions {i}, {}, {}",
                    (i + 1) % n,
                    (i + 2) % n
                )));
            }
            if turn.is_negative() {
                return Err(Error::InvalidPolygon(format!(
                    "not convex at vertex {}",
                    (i + 1) % n
                )));
            }
            if !cross(a, b).is_positive() {
                return Err(Error::InvalidPolygon(
                    "origin is not strictly interior".into(),
                ));
            }
        }
        let turning: f64 = (0..n)
            .map(|i| {
                let a = to_f64(&vertices[i]);
                let b = to_f64(&vertices[(i + 1) % n]);
                (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1])
            })
            .sum();
        if (turning / std::f64::consts::TAU).round() as i64 != 1 {
            return Err(Error::InvalidPolygon(
                "polygon winds more than once around the origin".into(),
            ));
        }
        let h = n / 2;
        for i in 0..h {
            let a = &vertices[i];
            let b = &vertices[i + h];
            if &a[0] != &(-&b[0]) || &a[1] != &(-&b[1]) {
                return Err(Error::InvalidPolygon(format!(
                    "not centrally symmetric: vertex {i} has no opposite"
                )));
            }
        }
        let start = (0..n)
            .find(|&i| half_plane(&vertices[i]) == 0 && half_plane(&vertices[(i + n - 1) % n]) == 1)
            .unwrap_or(0);
        vertices.rotate_left(start);

        let dual: Vec<Point> = (0..n)
            .map(|i| {
                let a = &vertices[i];
                let b = &vertices[(i + 1) % n];
                let c = cross(a, b);
                [(&b[1] - &a[1]) / &c, (&a[0] - &b[0]) / &c]
            })
            .collect();
        let vertices_f64 = vertices.iter().map(to_f64).collect();
        let dual_f64 = dual.iter().map(to_f64).collect();
        Ok(PolygonalNorm {
            vertices,
            dual,
            vertices_f64,
            dual_f64,
        })
    }

    /// Builds a norm from floating point vertices, converted exactly.
    pub fn from_f64(vertices: &[[f64; 2]]) -> Result<Self> {
        let pts = vertices
            .iter()
            .map(|v| {
                let x = BigRational::from_float(v[0]);
                let y = BigRational::from_float(v[1]);
                match (x, y) {
                    (Some(x), Some(y)) => Ok([x, y]),
                    _ => Err(Error::InvalidPolygon("non-finite coordinate".into())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(pts)
    }

    /// Builds a centrally symmetric polygon from its first half of vertices.
    pub fn from_half(half: Vec<Point>) -> Result<Self> {
        let mut all = half.clone();
        all.extend(half.iter().map(|p| [-&p[0], -&p[1]]));
        Self::new(all)
    }

    /// The ℓ∞ unit ball with vertices (±1, ±1).
    pub fn square() -> Self {
        Self::from_half(vec![[int(1), int(1)], [int(-1), int(1)]]).expect("valid square")
    }

    /// The ℓ¹ unit ball with vertices (±1, 0), (0, ±1).
    pub fn diamond() -> Self {
        Self::from_half(vec![[int(1), int(0)], [int(0), int(1)]]).expect("valid diamond")
    }

    /// An affinely regular hexagon with integer vertices; it is the image of
    /// the regular hexagon under a linear map, so every linear invariant
    /// (self-perimeter, Jung constant, area ratios) agrees with it exactly.
    pub fn affine_hexagon() -> Self {
        Self::from_half(vec![[int(1), int(0)], [int(1), int(1)], [int(0), int(1)]])
            .expect("valid hexagon")
    }

    /// Regular `2m`-gon inscribed in the unit circle with a vertex at (1, 0),
    /// coordinates rounded to dyadic rationals with 40 fractional bits.
    pub fn regular(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidPolygon("regular polygon needs m >= 2".into()));
        }
        let half = (0..m)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / m as f64;
                [dyadic(t.cos(), 40), dyadic(t.sin(), 40)]
            })
            .collect();
        Self::from_half(half)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> &[[f64; 2]] {
        &self.vertices_f64
    }

    pub fn facet_normals(&self) -> &[Point] {
        &self.dual
    }

    pub fn facet_normals_f64(&self) -> &[[f64; 2]] {
        &self.dual_f64
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_parallelogram(&self) -> bool {
        self.vertices.len() == 4
    }

    /// Minkowski functional of the unit ball: the least `t >= 0` with `v ∈ t·B`.
    pub fn gauge(&self, v: &Point) -> BigRational {
        self.dual
            .iter()
            .map(|y| dot(y, v))
            .max()
            .expect("non-empty polygon")
    }

    pub fn gauge_f64(&self, v: [f64; 2]) -> f64 {
        self.dual_f64
            .iter()
            .map(|y| y[0] * v[0] + y[1] * v[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Lebesgue area of the polygon.
    pub fn area(&self) -> BigRational {
        polygon_area(&self.vertices)
    }

    /// Length of `∂B` measured in the norm it defines.
    pub fn self_perimeter(&self) -> BigRational {
        self.perimeter_of(&self.vertices)
    }

    /// Norm-length of the closed polygon through `pts`.
    pub fn perimeter_of(&self, pts: &[Point]) -> BigRational {
        let n = pts.len();
        (0..n).fold(BigRational::zero(), |acc, i| {
            acc + self.gauge(&sub(&pts[(i + 1) % n], &pts[i]))
        })
    }

    /// The polar body `{y : ⟨x, y⟩ <= 1 for all x ∈ B}`.
    pub fn polar_dual(&self) -> PolygonalNorm {
        PolygonalNorm::new(self.dual.clone()).expect("polar of a valid norm is valid")
    }

    pub fn scaled(&self, t: &BigRational) -> Result<PolygonalNorm> {
        if !t.is_positive() {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        PolygonalNorm::new(
            self.vertices
                .iter()
                .map(|p| [&p[0] * t, &p[1] * t])
                .collect(),
        )
    }

    /// Counterclockwise rotation by 90°: (x, y) ↦ (-y, x).
    pub fn rotated_90(&self) -> PolygonalNorm {
        PolygonalNorm::new(
            self.vertices
                .iter()
                .map(|p| [-&p[1], p[0].clone()])
                .collect(),
        )
        .expect("rotation preserves validity")
    }
}

pub fn polygon_area(pts: &[Point]) -> BigRational {
    let n = pts.len();
    let twice = (0..n).fold(BigRational::zero(), |acc, i| {
        acc + cross(&pts[i], &pts[(i + 1) % n])
    });
    twice / int(2)
}
