use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::normed_plane::PolygonalNorm;
use crate::scalar::int;
use crate::sparse::{SparseMatrix, SparseVec};

/// Distances between vertices of a complex.
#[derive(Debug, Clone)]
pub enum VertexMetric {
    Matrix(Vec<Vec<f64>>),
    Euclidean,
    Sup,
    Norm(PolygonalNorm),
}

/// An oriented simplicial 2-complex. Edges are stored as `(i, j)` with
/// `i < j`; triangles keep the orientation of their vertex order.
#[derive(Debug, Clone)]
pub struct SimplicialComplex2 {
    n_vertices: usize,
    coords: Option<Vec<Vec<f64>>>,
    edges: Vec<[usize; 2]>,
    edge_index: HashMap<[usize; 2], usize>,
    triangles: Vec<[usize; 3]>,
    weights: Vec<f64>,
    metric: Option<VertexMetric>,
}

impl SimplicialComplex2 {
    /// Builds a complex from triangles. Edges of the triangles are added
    /// automatically; `extra_edges` adds edges that bound no triangle.
    pub fn new(
        n_vertices: usize,
        triangles: Vec<[usize; 3]>,
        extra_edges: &[[usize; 2]],
    ) -> Result<Self> {
        let mut c = SimplicialComplex2 {
            n_vertices,
            coords: None,
            edges: Vec::new(),
            edge_index: HashMap::new(),
            triangles: Vec::with_capacity(triangles.len()),
            weights: Vec::new(),
            metric: None,
        };
        for &[a, b] in extra_edges {
            c.add_edge(a, b)?;
        }
        let mut seen = std::collections::HashSet::new();
        for t in triangles {
            let [a, b, cc] = t;
            if a == b || b == cc || a == cc {
                return Err(Error::InvalidComplex(format!("degenerate triangle {t:?}")));
            }
            let mut key = t;
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(Error::InvalidComplex(format!("duplicate triangle {t:?}")));
            }
            c.add_edge(a, b)?;
            c.add_edge(b, cc)?;
            c.add_edge(cc, a)?;
            c.triangles.push(t);
        }
        c.weights = vec![1.0; c.triangles.len()];
        Ok(c)
    }

    fn add_edge(&mut self, a: usize, b: usize) -> Result<usize> {
        if a >= self.n_vertices || b >= self.n_vertices {
            return Err(Error::InvalidComplex(format!("edge ({a},{b}) out of range")));
        }
        if a == b {
            return Err(Error::InvalidComplex(format!("degenerate edge at {a}")));
        }
        let key = [a.min(b), a.max(b)];
        if let Some(&i) = self.edge_index.get(&key) {
            return Ok(i);
        }
        self.edges.push(key);
        self.edge_index.insert(key, self.edges.len() - 1);
        Ok(self.edges.len() - 1)
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.triangles.len() {
            return Err(Error::InvalidComplex(format!(
                "{} weights for {} triangles",
                weights.len(),
                self.triangles.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidComplex(format!("weight {w} is not positive")));
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn with_coords(mut self, coords: Vec<Vec<f64>>) -> Result<Self> {
        if coords.len() != self.n_vertices {
            return Err(Error::InvalidComplex("one coordinate row per vertex".into()));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn with_metric(mut self, metric: VertexMetric) -> Result<Self> {
        match &metric {
            VertexMetric::Matrix(d) => {
                if d.len() != self.n_vertices || d.iter().any(|r| r.len() != self.n_vertices) {
                    return Err(Error::InvalidComplex("metric matrix has wrong shape".into()));
                }
            }
            VertexMetric::Norm(_) => {
                if self.coords.as_ref().is_none_or(|c| c.iter().any(|p| p.len() != 2)) {
                    return Err(Error::InvalidComplex(
                        "a norm metric needs planar coordinates".into(),
                    ));
                }
            }
            _ => {
                if self.coords.is_none() {
                    return Err(Error::InvalidComplex("metric needs coordinates".into()));
                }
            }
        }
        self.metric = Some(metric);
        Ok(self)
    }

    /// The full subcomplex on `keep`, renumbered in the given order.
    /// Returns it with the old-to-new vertex map.
    pub fn induced(&self, keep: &[usize]) -> Result<(SimplicialComplex2, Vec<Option<usize>>)> {
        let mut map = vec![None; self.n_vertices];
        for (i, v) in keep.iter().enumerate() {
            if *v >= self.n_vertices || map[*v].is_some() {
                return Err(Error::InvalidComplex(format!("bad vertex {v} in restriction")));
            }
            map[*v] = Some(i);
        }
        let (mut tris, mut weights) = (Vec::new(), Vec::new());
        for (t, w) in self.triangles.iter().zip(&self.weights) {
            if let [Some(a), Some(b), Some(c)] = t.map(|v| map[v]) {
                tris.push([a, b, c]);
                weights.push(*w);
            }
        }
        let extra: Vec<[usize; 2]> = self
            .edges
            .iter()
            .filter_map(|[a, b]| Some([map[*a]?, map[*b]?]))
            .collect();
        let mut k = SimplicialComplex2::new(keep.len(), tris, &extra)?.with_weights(weights)?;
        if let Some(c) = &self.coords {
            k = k.with_coords(keep.iter().map(|v| c[*v].clone()).collect())?;
        }
        if let Some(m) = &self.metric {
            let m = match m {
                VertexMetric::Matrix(d) => VertexMetric::Matrix(
                    keep.iter().map(|a| keep.iter().map(|b| d[*a][*b]).collect()).collect(),
                ),
                other => other.clone(),
            };
            k = k.with_metric(m)?;
        }
        Ok((k, map))
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    pub fn metric(&self) -> Option<&VertexMetric> {
        self.metric.as_ref()
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&[a.min(b), a.max(b)]).copied()
    }

    pub fn has_metric(&self) -> bool {
        self.metric.is_some()
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<f64> {
        let metric = self
            .metric
            .as_ref()
            .ok_or_else(|| Error::InvalidComplex("complex has no vertex metric".into()))?;
        Ok(match metric {
            VertexMetric::Matrix(d) => d[u][v],
            VertexMetric::Euclidean | VertexMetric::Sup | VertexMetric::Norm(_) => {
                let c = self.coords.as_ref().expect("checked in with_metric");
                let diff: Vec<f64> = c[u].iter().zip(&c[v]).map(|(a, b)| a - b).collect();
                match metric {
                    VertexMetric::Euclidean => diff.iter().map(|x| x * x).sum::<f64>().sqrt(),
                    VertexMetric::Sup => diff.iter().fold(0.0, |m, x| f64::max(m, f64::abs(*x))),
                    VertexMetric::Norm(n) => n.gauge_f64([diff[0], diff[1]]),
                    VertexMetric::Matrix(_) => unreachable!(),
                }
            }
        })
    }

    /// Signed edges of a triangle's boundary: `(edge, ±1)`.
    pub fn triangle_boundary(&self, t: usize) -> [(usize, i64); 3] {
        let [a, b, c] = self.triangles[t];
        let signed = |u: usize, v: usize| {
            let e = self.edge_index[&[u.min(v), u.max(v)]];
            (e, if u < v { 1 } else { -1 })
        };
        [signed(a, b), signed(b, c), signed(c, a)]
    }

    /// `∂₂` as a sparse matrix (edges × triangles).
    pub fn boundary2<F: crate::scalar::Scalar>(&self) -> SparseMatrix<F> {
        let cols: Vec<SparseVec<F>> = (0..self.triangles.len())
            .map(|t| {
                self.triangle_boundary(t)
                    .iter()
                    .map(|&(e, s)| (e, F::from_i64(s)))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(self.edges.len(), &cols)
    }

    /// `∂₁` as a sparse matrix (vertices × edges).
    pub fn boundary1<F: crate::scalar::Scalar>(&self) -> SparseMatrix<F> {
        let cols: Vec<SparseVec<F>> = self
            .edges
            .iter()
            .map(|&[a, b]| [(a, F::from_i64(-1)), (b, F::one())].into_iter().collect())
            .collect();
        SparseMatrix::from_columns(self.n_vertices, &cols)
    }

    /// Checks `∂₁∂₂ = 0` exactly.
    pub fn check_boundary_squared(&self) -> Result<()> {
        for t in 0..self.triangles.len() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (e, s) in self.triangle_boundary(t) {
                let [a, b] = self.edges[e];
                *acc.entry(a).or_default() -= s;
                *acc.entry(b).or_default() += s;
            }
            if acc.values().any(|v| *v != 0) {
                return Err(Error::Internal(format!("∂∂ ≠ 0 on triangle {t}")));
            }
        }
        Ok(())
    }

    /// Boundary of a 2-chain.
    pub fn boundary_of(&self, c: &Chain) -> Result<Chain> {
        if c.dim != 2 {
            return Err(Error::InvalidChain("expected a 2-chain".into()));
        }
        let mut z = Chain::zero(1);
        for (t, v) in &c.coeffs {
            if *t >= self.triangles.len() {
                return Err(Error::InvalidChain(format!("triangle {t} out of range")));
            }
            for (e, s) in self.triangle_boundary(*t) {
                z.add_term(e, &(v * int(s)));
            }
        }
        Ok(z)
    }

    /// Boundary of a 1-chain as vertex coefficients.
    pub fn vertex_boundary(&self, z: &Chain) -> BTreeMap<usize, BigRational> {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (e, v) in &z.coeffs {
            let [a, b] = self.edges[*e];
            *acc.entry(a).or_insert_with(BigRational::zero) -= v;
            *acc.entry(b).or_insert_with(BigRational::zero) += v;
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    }

    pub fn is_cycle(&self, z: &Chain) -> bool {
        z.dim == 1 && self.vertex_boundary(z).is_empty()
    }

    /// Weighted mass `Σ w_t |c_t|` of a 2-chain.
    pub fn mass(&self, c: &Chain) -> f64 {
        c.coeffs
            .iter()
            .map(|(t, v)| self.weights[*t] * crate::scalar::ratio_to_f64(&v.abs()))
            .sum()
    }
}

/// A chain with rational coefficients on edges (dimension 1) or
/// triangles (dimension 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub dim: u8,
    pub coeffs: BTreeMap<usize, BigRational>,
}

impl Chain {
    pub fn zero(dim: u8) -> Self {
        Chain {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, cell: usize, v: &BigRational) {
        let e = self.coeffs.entry(cell).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&cell);
        }
    }

    pub fn scaled(&self, k: &BigRational) -> Chain {
        let mut out = Chain::zero(self.dim);
        if !k.is_zero() {
            for (c, v) in &self.coeffs {
                out.coeffs.insert(*c, v * k);
            }
        }
        out
    }

    pub fn plus(&self, o: &Chain) -> Chain {
        let mut out = self.clone();
        for (c, v) in &o.coeffs {
            out.add_term(*c, v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn dense<F: crate::scalar::Scalar>(&self, len: usize) -> Vec<F> {
        let mut v = vec![F::zero(); len];
        for (c, x) in &self.coeffs {
            v[*c] = F::from_rational(x);
        }
        v
    }

    pub fn sparse<F: crate::scalar::Scalar>(&self) -> SparseVec<F> {
        self.coeffs
            .iter()
            .map(|(c, x)| (*c, F::from_rational(x)))
            .collect()
    }
}

/// A closed vertex sequence; consecutive vertices (cyclically) are joined
/// by edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub vertices: Vec<usize>,
}

impl Loop {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidChain("empty loop".into()));
        }
        Ok(Loop { vertices })
    }

    /// Directed steps `(v_i, v_{i+1})`, wrapping around; repeated vertices
    /// (zero steps) are skipped.
    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n)
            .map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .filter(|(a, b)| a != b)
    }

    /// The induced 1-chain in `k`.
    pub fn chain(&self, k: &SimplicialComplex2) -> Result<Chain> {
        let mut z = Chain::zero(1);
        for (a, b) in self.steps() {
            let e = k
                .edge_id(a, b)
                .ok_or_else(|| Error::InvalidChain(format!("loop step ({a},{b}) is not an edge")))?;
            z.add_term(e, &int(if a < b { 1 } else { -1 }));
        }
        Ok(z)
    }

    pub fn length(&self, d: impl Fn(usize, usize) -> f64) -> f64 {
        self.steps().map(|(a, b)| d(a, b)).sum()
    }

    pub fn repeated(&self, times: usize) -> Loop {
        Loop {
            vertices: self.vertices.repeat(times),
        }
    }
}

/// Traces a 1-cycle with integer coefficients into a single closed walk
/// (each edge used `|coefficient|` times), when it is connected.
pub fn cycle_to_loop(k: &SimplicialComplex2, z: &Chain) -> Result<Loop> {
    let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut total = 0usize;
    for (e, v) in &z.coeffs {
        if !v.is_integer() {
            return Err(Error::InvalidChain("loop tracing needs integer coefficients".into()));
        }
        let [a, b] = k.edges()[*e];
        let (from, to) = if v.is_positive() { (a, b) } else { (b, a) };
        let times: usize = num_traits::ToPrimitive::to_usize(&v.abs().to_integer())
            .ok_or_else(|| Error::InvalidChain("coefficient too large".into()))?;
        for _ in 0..times {
            out.entry(from).or_default().push(to);
            total += 1;
        }
    }
    if !k.is_cycle(z) {
        return Err(Error::InvalidChain("chain is not a cycle".into()));
    }
    let Some(&start) = out.keys().min() else {
        return Err(Error::InvalidChain("empty cycle".into()));
    };
    for v in out.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    // Hierholzer's algorithm.
    let mut stack = vec![start];
    let mut walk = Vec::with_capacity(total + 1);
    while let Some(&v) = stack.last() {
        match out.get_mut(&v).and_then(Vec::pop) {
            Some(w) => stack.push(w),
            None => walk.push(stack.pop().unwrap()),
        }
    }
    walk.reverse();
    if walk.len() != total + 1 {
        return Err(Error::InvalidChain("cycle is not connected".into()));
    }
    walk.pop();
    Loop::new(walk)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> SimplicialComplex2 {
        // Poles 4 (top) and 5 (bottom), equator 0-1-2-3.
        let mut tris = Vec::new();
        for i in 0..4 {
            let j = (i + 1) % 4;
            tris.push([i, j, 4]);
            tris.push([j, i, 5]);
        }
        SimplicialComplex2::new(6, tris, &[]).unwrap()
    }

    #[test]
    fn boundary_of_a_triangle() {
        let k = SimplicialComplex2::new(3, vec![[0, 1, 2]], &[]).unwrap();
        let d2 = k.boundary2::<BigRational>();
        assert_eq!(d2.nrows, 3);
        let mut c = Chain::zero(2);
        c.add_term(0, &int(1));
        let z = k.boundary_of(&c).unwrap();
        assert_eq!(z.coeffs.len(), 3);
        assert!(k.is_cycle(&z));
        k.check_boundary_squared().unwrap();
    }

    #[test]
    fn shared_edge_cancels() {
        let k = SimplicialComplex2::new(4, vec![[0, 1, 2], [0, 2, 3]], &[]).unwrap();
        let mut c = Chain::zero(2);
        c.add_term(0, &int(1));
        c.add_term(1, &int(1));
        let z = k.boundary_of(&c).unwrap();
        assert_eq!(z.coeffs.len(), 4);
        assert!(!z.coeffs.contains_key(&k.edge_id(0, 2).unwrap()));
    }

    #[test]
    fn octahedron_rank() {
        let k = octahedron();
        k.check_boundary_squared().unwrap();
        assert_eq!(crate::sparse::rank(&k.boundary2::<BigRational>()), 7);
    }

    #[test]
    fn loops_round_trip_through_chains() {
        let k = octahedron();
        let l = Loop::new(vec![0, 1, 2, 3]).unwrap();
        let z = l.chain(&k).unwrap();
        assert!(k.is_cycle(&z));
        let back = cycle_to_loop(&k, &z).unwrap();
        assert_eq!(back.chain(&k).unwrap(), z);
        assert!(Loop::new(vec![0, 2]).unwrap().chain(&k).is_err());
    }

    #[test]
    fn rejects_bad_complexes() {
        assert!(SimplicialComplex2::new(3, vec![[0, 1, 1]], &[]).is_err());
        assert!(SimplicialComplex2::new(3, vec![[0, 1, 3]], &[]).is_err());
        assert!(SimplicialComplex2::new(3, vec![[0, 1, 2], [2, 1, 0]], &[]).is_err());
        let k = SimplicialComplex2::new(3, vec![[0, 1, 2]], &[]).unwrap();
        assert!(k.clone().with_weights(vec![0.0]).is_err());
        assert!(k.with_metric(VertexMetric::Euclidean).is_err());
    }
}
