//! Filling radius: the least `r` such that a cycle bounds within the
//! `r`-neighbourhood of its support.

use num_rational::BigRational;

use super::complex::{Chain, Loop, SimplicialComplex2, VertexMetric};
use crate::error::{Error, Result};
use crate::finite_metric::{kuratowski_embed, FiniteMetricSpace};
use crate::scalar::int;
use crate::sparse::{ColumnReducer, SparseVec};

/// Largest number of triangles the neighbourhood complexes may have.
pub const DEFAULT_RADIUS_TRIANGLE_CAP: usize = 400_000;

/// Vertex-wise distance to the support of `z`.
pub fn support_distances(k: &SimplicialComplex2, z: &Chain) -> Result<Vec<f64>> {
    let mut support: Vec<usize> = z
        .coeffs
        .keys()
        .flat_map(|e| k.edges()[*e])
        .collect();
    support.sort_unstable();
    support.dedup();
    (0..k.n_vertices())
        .map(|v| {
            support.iter().try_fold(f64::INFINITY, |m, s| Ok(m.min(k.distance(v, *s)?)))
        })
        .collect()
}

fn signed_column(k: &SimplicialComplex2, t: usize) -> SparseVec<BigRational> {
    k.triangle_boundary(t)
        .iter()
        .map(|&(e, s)| (e, int(s)))
        .collect()
}

/// Vertices are admissible at radius `r` when within `r` of `spt z`; a
/// triangle is admissible when all its vertices are. Returns the least
/// candidate radius at which `z` bounds an admissible 2-chain.
pub fn filling_radius(k: &SimplicialComplex2, z: &Chain) -> Result<f64> {
    if !k.has_metric() {
        return Err(Error::InvalidComplex("filling radius needs a vertex metric".into()));
    }
    if z.dim != 1 || !k.is_cycle(z) {
        return Err(Error::InvalidChain("expected a 1-cycle".into()));
    }
    if z.is_zero() {
        return Ok(0.0);
    }
    let dist = support_distances(k, z)?;
    let mut order: Vec<(f64, usize)> = k
        .triangles()
        .iter()
        .enumerate()
        .map(|(t, tri)| (tri.iter().map(|v| dist[*v]).fold(0.0, f64::max), t))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut reducer = ColumnReducer::new(z.coeffs.clone().into_iter().collect());
    let mut i = 0;
    while i < order.len() {
        let r = order[i].0;
        while i < order.len() && order[i].0 == r {
            reducer.add_column(signed_column(k, order[i].1));
            i += 1;
        }
        if reducer.target_in_span() {
            return Ok(r);
        }
    }
    Err(Error::NotABoundary)
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn loop_chain_on_pairs(n: usize, l: &Loop) -> Result<SparseVec<BigRational>> {
    let mut z = Chain::zero(1);
    for (a, b) in l.steps() {
        if a >= n || b >= n {
            return Err(Error::InvalidChain(format!("loop vertex out of range ({a}, {b})")));
        }
        z.add_term(pair_index(n, a, b), &int(if a < b { 1 } else { -1 }));
    }
    Ok(z.coeffs.into_iter().collect())
}

/// Rips persistence route: half the least scale `t` at which the class of
/// the loop dies in the Vietoris–Rips complex.
pub fn rips_filling_radius(m: &FiniteMetricSpace, l: &Loop) -> Result<f64> {
    rips_filling_radius_capped(m, l, DEFAULT_RADIUS_TRIANGLE_CAP)
}

pub fn rips_filling_radius_capped(m: &FiniteMetricSpace, l: &Loop, cap: usize) -> Result<f64> {
    let n = m.len();
    let target = loop_chain_on_pairs(n, l)?;
    let birth = l.steps().map(|(a, b)| m.d(a, b)).fold(0.0, f64::max);
    if target.is_empty() {
        return Ok(0.0);
    }
    let count = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    if count > cap {
        return Err(Error::CapExceeded {
            what: "Rips triangles",
            needed: count,
            cap,
        });
    }
    let mut tris: Vec<(f64, [usize; 3])> = Vec::with_capacity(count);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let diam = m.d(a, b).max(m.d(b, c)).max(m.d(a, c));
                tris.push((diam.max(birth), [a, b, c]));
            }
        }
    }
    tris.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut reducer = ColumnReducer::new(target);
    let mut i = 0;
    while i < tris.len() {
        let t = tris[i].0;
        while i < tris.len() && tris[i].0 == t {
            let [a, b, c] = tris[i].1;
            let col: SparseVec<BigRational> = [
                (pair_index(n, a, b), int(1)),
                (pair_index(n, b, c), int(1)),
                (pair_index(n, a, c), int(-1)),
            ]
            .into_iter()
            .collect();
            reducer.add_column(col);
            i += 1;
        }
        if reducer.target_in_span() {
            return Ok(t / 2.0);
        }
    }
    Err(Error::Internal("loop survives past the diameter scale".into()))
}

/// Neighbourhood complex over the Kuratowski image in `ℓ∞`. Every pair
/// `{a, b}` gets its midpoint `m_ab`; every triple `σ = {a, b, c}` gets a
/// centre `c_σ`, the midpoint of the coordinate box of its three images,
/// and the six triangles coning the subdivided boundary of `σ` to `c_σ`.
/// Vertex `i < n` is the image of point `i`.
pub struct KuratowskiComplex {
    pub complex: SimplicialComplex2,
    n: usize,
}

impl KuratowskiComplex {
    pub fn midpoint(&self, a: usize, b: usize) -> usize {
        self.n + pair_index(self.n, a, b)
    }

    /// A loop through points of the space, with each step split at its
    /// midpoint.
    pub fn subdivide(&self, l: &Loop) -> Result<Loop> {
        let mut vs = Vec::new();
        for (a, b) in l.steps() {
            if a >= self.n || b >= self.n {
                return Err(Error::InvalidChain(format!("loop vertex out of range ({a}, {b})")));
            }
            vs.push(a);
            vs.push(self.midpoint(a, b));
        }
        Loop::new(vs)
    }
}

pub fn kuratowski_complex(m: &FiniteMetricSpace) -> Result<KuratowskiComplex> {
    kuratowski_complex_capped(m, DEFAULT_RADIUS_TRIANGLE_CAP)
}

pub fn kuratowski_complex_capped(m: &FiniteMetricSpace, cap: usize) -> Result<KuratowskiComplex> {
    let n = m.len();
    if n < 3 {
        return Err(Error::InvalidInput("need at least three points".into()));
    }
    let count = 6 * (n * (n - 1) * (n - 2) / 6);
    if count > cap {
        return Err(Error::CapExceeded {
            what: "neighbourhood triangles",
            needed: count,
            cap,
        });
    }
    let emb = kuratowski_embed(m, &m.labels()[0])?;
    let mut coords: Vec<Vec<f64>> = emb.coords.clone();
    let dim = n;
    for a in 0..n {
        for b in a + 1..n {
            let mid = (0..dim).map(|j| (coords[a][j] + coords[b][j]) / 2.0).collect();
            coords.push(mid);
        }
    }
    let mid = |a: usize, b: usize| n + pair_index(n, a, b);
    let mut tris = Vec::with_capacity(count);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let center: Vec<f64> = (0..dim)
                    .map(|j| {
                        let xs = [coords[a][j], coords[b][j], coords[c][j]];
                        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
                        (hi + lo) / 2.0
                    })
                    .collect();
                let s = coords.len();
                coords.push(center);
                for (u, v) in [(a, b), (b, c), (c, a)] {
                    tris.push([u, mid(u, v), s]);
                    tris.push([mid(u, v), v, s]);
                }
            }
        }
    }
    let complex = SimplicialComplex2::new(coords.len(), tris, &[])?
        .with_coords(coords)?
        .with_metric(VertexMetric::Sup)?;
    Ok(KuratowskiComplex { complex, n })
}

/// Direct route: [`filling_radius`] of the (subdivided) loop in the
/// Kuratowski neighbourhood complex.
pub fn kuratowski_filling_radius(m: &FiniteMetricSpace, l: &Loop) -> Result<f64> {
    kuratowski_filling_radius_capped(m, l, DEFAULT_RADIUS_TRIANGLE_CAP)
}

pub fn kuratowski_filling_radius_capped(m: &FiniteMetricSpace, l: &Loop, cap: usize) -> Result<f64> {
    let k = kuratowski_complex_capped(m, cap)?;
    let z = k.subdivide(l)?.chain(&k.complex)?;
    filling_radius(&k.complex, &z)
}
