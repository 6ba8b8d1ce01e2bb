//! Minimal fillings: minimize `Σ w_t |c_t|` subject to `∂₂c = z`.
//!
//! Elimination gives a particular solution `c₀` and a basis `K` of the
//! 2-cycles. On surface patches `K` is empty and the filling is unique;
//! otherwise a reduced LP over `c = c₀ + Kt` is solved. The dual
//! certificate is an edge potential `y` with `|∂₂ᵀy| ≤ w` and `⟨y, z⟩`
//! equal to the primal value.

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::complex::{Chain, SimplicialComplex2};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpStatus, Relation};
use crate::scalar::{rationalize, Scalar};
use crate::sparse::{eliminate, SparseMatrix, SparseVec};

/// Largest complex solved in exact rational arithmetic by default.
pub const EXACT_TRIANGLE_LIMIT: usize = 2000;
const BRANCH_NODE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FillMode {
    Relaxed,
    Integral,
}

impl std::str::FromStr for FillMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relaxed" => Ok(FillMode::Relaxed),
            "integral" => Ok(FillMode::Integral),
            other => Err(Error::InvalidInput(format!("unknown fill mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact up to [`EXACT_TRIANGLE_LIMIT`] triangles, `f64` above.
    Auto,
    Exact,
    Float,
}

#[derive(Debug, Clone)]
pub struct Filling {
    pub area: f64,
    /// The optimum as a rational, when solved exactly.
    pub exact_area: Option<BigRational>,
    pub chain: Chain,
    /// Edge potential certifying optimality.
    pub dual: Vec<f64>,
    pub dual_objective: f64,
    /// `max_t (|∂₂ᵀy|_t − w_t)`, zero or negative when feasible.
    pub dual_violation: f64,
    pub gap: f64,
    pub exact: bool,
    pub mode: FillMode,
}

pub fn min_filling_area(k: &SimplicialComplex2, z: &Chain, mode: FillMode) -> Result<Filling> {
    min_filling_area_with(k, z, mode, Arithmetic::Auto)
}

pub fn min_filling_area_with(
    k: &SimplicialComplex2,
    z: &Chain,
    mode: FillMode,
    arithmetic: Arithmetic,
) -> Result<Filling> {
    if z.dim != 1 {
        return Err(Error::InvalidChain("expected a 1-chain".into()));
    }
    if let Some(e) = z.coeffs.keys().find(|e| **e >= k.edges().len()) {
        return Err(Error::InvalidChain(format!("edge {e} out of range")));
    }
    if !k.is_cycle(z) {
        return Err(Error::InvalidChain("chain has nonzero boundary".into()));
    }
    let exact = match arithmetic {
        Arithmetic::Exact => true,
        Arithmetic::Float => false,
        Arithmetic::Auto => k.triangles().len() <= EXACT_TRIANGLE_LIMIT,
    };
    if exact {
        solve::<BigRational>(k, z, mode)
    } else {
        solve::<f64>(k, z, mode)
    }
}

struct Reduced<F> {
    c0: Vec<F>,
    kernel: Vec<SparseVec<F>>,
}

fn reduce<F: Scalar>(k: &SimplicialComplex2, z: &Chain) -> Result<Reduced<F>> {
    let d2 = k.boundary2::<F>();
    let rhs = z.dense::<F>(k.edges().len());
    let el = eliminate(&d2, Some(&rhs));
    let c0 = el.particular().ok_or(Error::NotABoundary)?;
    Ok(Reduced {
        c0,
        kernel: el.kernel_basis(),
    })
}

fn sign<F: Scalar>(v: &F) -> F {
    if v.is_positive() {
        F::one()
    } else if v.is_negative() {
        F::one().neg()
    } else {
        F::zero()
    }
}

/// Optimal `c` and a dual triangle vector `g` (orthogonal to the kernel,
/// `|g| ≤ w`, `⟨g, c⟩ = Σ w|c|`).
struct Primal<F> {
    c: Vec<F>,
    g: Vec<F>,
}

fn relaxed<F: Scalar>(
    red: &Reduced<F>,
    w: &[F],
    extra: &[(usize, Relation, F)],
) -> Result<Primal<F>> {
    let m = red.c0.len();
    if red.kernel.is_empty() && extra.is_empty() {
        let g = red.c0.iter().zip(w).map(|(c, w)| w.mul(&sign(c))).collect();
        return Ok(Primal {
            c: red.c0.clone(),
            g,
        });
    }
    // Triangles touched by c₀ or the kernel.
    let mut support: Vec<usize> = (0..m).filter(|&t| !red.c0[t].is_zero()).collect();
    for v in &red.kernel {
        support.extend(v.keys().copied());
    }
    support.sort_unstable();
    support.dedup();
    let kd = red.kernel.len();
    let pos: std::collections::HashMap<usize, usize> =
        support.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    // rows[i] = coefficients of t in (Kt) at support[i]
    let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); support.len()];
    for (j, v) in red.kernel.iter().enumerate() {
        for (t, x) in v {
            rows[pos[t]].push((j, x.clone()));
        }
    }
    // Variables: t⁺ (kd), t⁻ (kd), u (support).
    let nv = 2 * kd + support.len();
    let mut lp = LinearProgram::<F>::new(nv);
    for (i, t) in support.iter().enumerate() {
        lp.objective[2 * kd + i] = w[*t].clone();
    }
    let kt = |i: usize, s: i64| -> Vec<(usize, F)> {
        let mut out = Vec::new();
        for (j, x) in &rows[i] {
            let x = x.mul(&F::from_i64(s));
            out.push((*j, x.clone()));
            out.push((kd + *j, x.neg()));
        }
        out
    };
    for (i, t) in support.iter().enumerate() {
        let mut a = kt(i, -1);
        a.push((2 * kd + i, F::one()));
        lp.add(a, Relation::Ge, red.c0[*t].clone());
        let mut b = kt(i, 1);
        b.push((2 * kd + i, F::one()));
        lp.add(b, Relation::Ge, red.c0[*t].neg());
    }
    for (t, rel, rhs) in extra {
        // Branching bound on c_t = c₀_t + (Kt)_t.
        // Fractional coordinates outside the support are fixed by c₀.
        let i = *pos.get(t).ok_or(Error::NoIntegralFilling)?;
        lp.add(kt(i, 1), *rel, rhs.sub(&red.c0[*t]));
    }
    let sol = lp.solve().map_err(|s| match s {
        LpStatus::Infeasible => Error::NoIntegralFilling,
        LpStatus::Unbounded => Error::Unbounded,
        LpStatus::IterationLimit => Error::Internal("simplex iteration limit".into()),
    })?;
    let mut c = red.c0.clone();
    for (i, t) in support.iter().enumerate() {
        for (j, x) in &rows[i] {
            c[*t] = c[*t].add(&x.mul(&sol.x[*j].sub(&sol.x[kd + *j])));
        }
    }
    let mut g = vec![F::zero(); m];
    if extra.is_empty() {
        for (i, t) in support.iter().enumerate() {
            g[*t] = sol.duals[2 * i].sub(&sol.duals[2 * i + 1]);
        }
    }
    Ok(Primal { c, g })
}

fn first_fractional<F: Scalar>(c: &[F]) -> Option<(usize, f64)> {
    c.iter().enumerate().find_map(|(t, v)| {
        let x = v.to_f64();
        let frac = (x - x.round()).abs();
        let fractional = if F::is_exact() {
            !F::from_f64(x.round()).sub(v).is_zero()
        } else {
            frac > 1e-7
        };
        fractional.then_some((t, x))
    })
}

fn integral<F: Scalar>(red: &Reduced<F>, w: &[F]) -> Result<Vec<F>> {
    if red.kernel.is_empty() {
        return match first_fractional(&red.c0) {
            None => Ok(red.c0.clone()),
            Some(_) => Err(Error::NoIntegralFilling),
        };
    }
    let mass = |c: &[F]| c.iter().zip(w).fold(F::zero(), |a, (c, w)| a.add(&w.mul(&c.abs())));
    let mut best: Option<(F, Vec<F>)> = None;
    let mut stack: Vec<Vec<(usize, Relation, F)>> = vec![Vec::new()];
    let mut nodes = 0;
    while let Some(bounds) = stack.pop() {
        nodes += 1;
        if nodes > BRANCH_NODE_LIMIT {
            return Err(Error::CapExceeded {
                what: "branch-and-bound nodes",
                needed: nodes,
                cap: BRANCH_NODE_LIMIT,
            });
        }
        let p = match relaxed(red, w, &bounds) {
            Ok(p) => p,
            Err(Error::NoIntegralFilling) => continue,
            Err(e) => return Err(e),
        };
        let value = mass(&p.c);
        if let Some((b, _)) = &best {
            if value.sub(b).to_f64() >= -1e-12 {
                continue;
            }
        }
        match first_fractional(&p.c) {
            None => best = Some((value, p.c)),
            Some((t, x)) => {
                let mut lo = bounds.clone();
                lo.push((t, Relation::Le, F::from_f64(x.floor())));
                let mut hi = bounds;
                hi.push((t, Relation::Ge, F::from_f64(x.ceil())));
                stack.push(hi);
                stack.push(lo);
            }
        }
    }
    best.map(|(_, c)| c).ok_or(Error::NoIntegralFilling)
}

fn solve<F: Scalar>(k: &SimplicialComplex2, z: &Chain, mode: FillMode) -> Result<Filling> {
    let w: Vec<F> = k.weights().iter().map(|w| F::from_f64(*w)).collect();
    let red = reduce::<F>(k, z)?;
    let primal = relaxed(&red, &w, &[])?;
    let c = match mode {
        FillMode::Relaxed => primal.c.clone(),
        FillMode::Integral => integral(&red, &w)?,
    };
    // The relaxed dual certifies the relaxed optimum; in integral mode the
    // gap then measures the integrality gap.
    let d2 = k.boundary2::<F>();
    let d2t: SparseMatrix<F> = d2.transpose();
    let y = eliminate(&d2t, Some(&primal.g))
        .particular()
        .ok_or_else(|| Error::Internal("dual potential system is inconsistent".into()))?;
    let zd = z.dense::<F>(k.edges().len());
    let dual_obj = y.iter().zip(&zd).fold(F::zero(), |a, (y, z)| a.add(&y.mul(z)));
    let lhs = d2t.mul_vec(&y);
    let violation = lhs
        .iter()
        .zip(&w)
        .map(|(v, w)| v.abs().sub(w).to_f64())
        .fold(f64::NEG_INFINITY, f64::max);
    let area = c.iter().zip(&w).fold(F::zero(), |a, (c, w)| a.add(&w.mul(&c.abs())));
    let gap = area.sub(&dual_obj).abs().to_f64();

    let mut chain = Chain::zero(2);
    for (t, v) in c.iter().enumerate() {
        if !v.is_zero() {
            let r = if F::is_exact() {
                v.to_rational()
            } else {
                rationalize(v.to_f64(), 1 << 20)
            };
            chain.add_term(t, &r);
        }
    }
    let boundary = k.boundary_of(&chain)?;
    if boundary != *z {
        if F::is_exact() {
            return Err(Error::Internal("filling fails exact boundary check".into()));
        }
        let residual = boundary.plus(&z.scaled(&crate::scalar::int(-1)));
        let worst = residual
            .coeffs
            .values()
            .map(|v| crate::scalar::ratio_to_f64(&Signed::abs(v)))
            .fold(0.0, f64::max);
        if worst > 1e-6 {
            return Err(Error::Internal(format!("filling residual {worst}")));
        }
    }
    let exact_area = F::is_exact().then(|| area.to_rational());
    Ok(Filling {
        area: area.to_f64(),
        exact_area,
        chain,
        dual: y.iter().map(Scalar::to_f64).collect(),
        dual_objective: dual_obj.to_f64(),
        dual_violation: violation.max(0.0),
        gap,
        exact: F::is_exact(),
        mode,
    })
}

/// Checks the certificate of a filling against the complex: dual
/// feasibility and primal/dual agreement within `tol`.
pub fn certificate_holds(k: &SimplicialComplex2, z: &Chain, f: &Filling, tol: f64) -> bool {
    let mut ok = f.dual.len() == k.edges().len();
    if !ok {
        return false;
    }
    for t in 0..k.triangles().len() {
        let s: f64 = k
            .triangle_boundary(t)
            .iter()
            .map(|&(e, sg)| sg as f64 * f.dual[e])
            .sum();
        ok &= s.abs() <= k.weights()[t] * (1.0 + tol) + tol;
    }
    let dual: f64 = z
        .coeffs
        .iter()
        .map(|(e, v)| f.dual[*e] * crate::scalar::ratio_to_f64(v))
        .sum();
    let primal = k.mass(&f.chain);
    ok && (dual - primal).abs() <= tol * (1.0 + primal.abs()) && (f.area - primal).abs() <= tol * (1.0 + primal.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::complex::Loop;
    use crate::scalar::{int, rat};

    fn octahedron() -> SimplicialComplex2 {
        let mut tris = Vec::new();
        for i in 0..4 {
            let j = (i + 1) % 4;
            tris.push([i, j, 4]);
            tris.push([j, i, 5]);
        }
        SimplicialComplex2::new(6, tris, &[]).unwrap()
    }

    #[test]
    fn single_triangle() {
        let k = SimplicialComplex2::new(3, vec![[0, 1, 2]], &[]).unwrap();
        let z = Loop::new(vec![0, 1, 2]).unwrap().chain(&k).unwrap();
        let f = min_filling_area(&k, &z, FillMode::Relaxed).unwrap();
        assert_eq!(f.exact_area, Some(int(1)));
        assert_eq!(f.chain.coeffs.len(), 1);
        assert!(certificate_holds(&k, &z, &f, 1e-12));
        let f2 = min_filling_area(&k, &z.scaled(&int(2)), FillMode::Relaxed).unwrap();
        assert_eq!(f2.exact_area, Some(int(2)));
    }

    #[test]
    fn octahedron_equator_has_two_optimal_hemispheres() {
        let k = octahedron();
        let z = Loop::new(vec![0, 1, 2, 3]).unwrap().chain(&k).unwrap();
        for arith in [Arithmetic::Exact, Arithmetic::Float] {
            let f = min_filling_area_with(&k, &z, FillMode::Relaxed, arith).unwrap();
            assert!((f.area - 4.0).abs() < 1e-9);
            assert!(f.gap < 1e-9 && f.dual_violation < 1e-9);
            assert!(certificate_holds(&k, &z, &f, 1e-9));
        }
        let f = min_filling_area(&k, &z, FillMode::Integral).unwrap();
        assert_eq!(f.exact_area, Some(int(4)));
    }

    #[test]
    fn weighted_octahedron_prefers_the_light_hemisphere() {
        let w = vec![1.0, 3.0, 1.0, 3.0, 1.0, 3.0, 1.0, 3.0];
        let k = octahedron().with_weights(w).unwrap();
        let z = Loop::new(vec![0, 1, 2, 3]).unwrap().chain(&k).unwrap();
        let f = min_filling_area(&k, &z, FillMode::Relaxed).unwrap();
        assert_eq!(f.exact_area, Some(int(4)));
        assert!(f.chain.coeffs.keys().all(|t| t % 2 == 0));
        let half = min_filling_area(&k, &z.scaled(&rat(1, 2)), FillMode::Relaxed).unwrap();
        assert_eq!(half.exact_area, Some(int(2)));
    }

    #[test]
    fn errors_are_distinct() {
        // Annulus: the inner rim is not a boundary.
        let mut tris = Vec::new();
        for i in 0..3 {
            let j = (i + 1) % 3;
            tris.push([i, j, 3 + i]);
            tris.push([j, 3 + j, 3 + i]);
        }
        let k = SimplicialComplex2::new(6, tris, &[]).unwrap();
        let z = Loop::new(vec![0, 1, 2]).unwrap().chain(&k).unwrap();
        assert_eq!(
            min_filling_area(&k, &z, FillMode::Relaxed).unwrap_err(),
            Error::NotABoundary
        );
        let mut open = Chain::zero(1);
        open.add_term(0, &int(1));
        assert!(matches!(
            min_filling_area(&k, &open, FillMode::Relaxed),
            Err(Error::InvalidChain(_))
        ));
    }

    #[test]
    fn half_integral_optimum_has_no_better_integral_filling() {
        // Boundary of a triangle filled by a 2-sphere made of two copies:
        // the relaxed and integral optima agree.
        let k = octahedron();
        let z = Loop::new(vec![0, 1, 4]).unwrap().chain(&k).unwrap();
        let r = min_filling_area(&k, &z, FillMode::Relaxed).unwrap();
        let i = min_filling_area(&k, &z, FillMode::Integral).unwrap();
        assert_eq!(r.exact_area, Some(int(1)));
        assert_eq!(i.exact_area, Some(int(1)));
    }
}
