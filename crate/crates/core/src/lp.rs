//! Dense two-phase simplex over a generic [`Scalar`] field.
//!
//! Problems are stated as `minimize c·x` subject to row constraints and
//! `x >= 0`. Optimal solutions carry dual multipliers `y` with
//! `c - Aᵀy >= 0` and `b·y = c·x`, read from the final tableau.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint<F> {
    pub coeffs: Vec<(usize, F)>,
    pub relation: Relation,
    pub rhs: F,
}

impl<F: Scalar> Constraint<F> {
    pub fn new(coeffs: Vec<(usize, F)>, relation: Relation, rhs: F) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearProgram<F> {
    pub num_vars: usize,
    pub objective: Vec<F>,
    pub constraints: Vec<Constraint<F>>,
}

#[derive(Debug, Clone)]
pub struct LpSolution<F> {
    pub x: Vec<F>,
    /// One multiplier per constraint, in the original row orientation.
    pub duals: Vec<F>,
    pub objective: F,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Infeasible,
    Unbounded,
    IterationLimit,
}

const MAX_ITERATIONS: usize = 200_000;
/// Switch from Dantzig pricing to Bland's rule after this many degenerate pivots.
const DEGENERATE_STREAK: usize = 50;

impl<F: Scalar> LinearProgram<F> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![F::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, F)>, relation: Relation, rhs: F) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    pub fn solve(&self) -> Result<LpSolution<F>, LpStatus> {
        Tableau::build(self).run(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    obj: Vec<F>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    identity_col: Vec<usize>,
    flipped: Vec<bool>,
    ncols: usize,
    iterations: usize,
}

impl<F: Scalar> Tableau<F> {
    fn build(lp: &LinearProgram<F>) -> Self {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let mut kinds = vec![ColKind::Structural; n];
        let mut flipped = Vec::with_capacity(m);
        let mut relations = Vec::with_capacity(m);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            flipped.push(flip);
            relations.push(match (c.relation, flip) {
                (Relation::Le, false) | (Relation::Ge, true) => Relation::Le,
                (Relation::Ge, false) | (Relation::Le, true) => Relation::Ge,
                (Relation::Eq, _) => Relation::Eq,
            });
        }
        let mut surplus_col = vec![None; m];
        let mut identity_col = vec![0; m];
        for (i, rel) in relations.iter().enumerate() {
            match rel {
                Relation::Le => {
                    identity_col[i] = kinds.len();
                    kinds.push(ColKind::Slack);
                }
                Relation::Ge => {
                    surplus_col[i] = Some(kinds.len());
                    kinds.push(ColKind::Slack);
                    identity_col[i] = kinds.len();
                    kinds.push(ColKind::Artificial);
                }
                Relation::Eq => {
                    identity_col[i] = kinds.len();
                    kinds.push(ColKind::Artificial);
                }
            }
        }
        let ncols = kinds.len();
        let mut rows = Vec::with_capacity(m);
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![F::zero(); ncols + 1];
            for (j, a) in &c.coeffs {
                row[*j] = row[*j].add(a);
            }
            row[ncols] = c.rhs.clone();
            if flipped[i] {
                for v in row.iter_mut() {
                    *v = v.neg();
                }
            }
            if let Some(s) = surplus_col[i] {
                row[s] = F::one().neg();
            }
            row[identity_col[i]] = F::one();
            rows.push(row);
        }
        Tableau {
            rows,
            obj: vec![F::zero(); ncols + 1],
            basis: identity_col.clone(),
            kinds,
            identity_col,
            flipped,
            ncols,
            iterations: 0,
        }
    }

    fn price(&mut self, costs: &[F]) {
        let mut obj: Vec<F> = costs.to_vec();
        obj.push(F::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    obj[j] = obj[j].sub(&cb.mul(v));
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = F::one().div(&self.rows[r][e]);
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        self.rows[r][e] = F::one();
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.ncols)
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let factor = row[e].clone();
            for &j in &nz {
                row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
            }
            row[e] = F::zero();
        }
        if !self.obj[e].is_zero() {
            let factor = self.obj[e].clone();
            for &j in &nz {
                self.obj[j] = self.obj[j].sub(&factor.mul(&pivot_row[j]));
            }
            self.obj[e] = F::zero();
        }
        self.basis[r] = e;
    }

    /// Runs simplex iterations on the current objective row.
    fn optimize(&mut self, allow_artificial: bool) -> Result<(), LpStatus> {
        let mut degenerate = 0usize;
        loop {
            if self.iterations >= MAX_ITERATIONS {
                return Err(LpStatus::IterationLimit);
            }
            let bland = F::is_exact() || degenerate >= DEGENERATE_STREAK;
            let mut entering: Option<usize> = None;
            for j in 0..self.ncols {
                if !allow_artificial && self.kinds[j] == ColKind::Artificial {
                    continue;
                }
                if !self.obj[j].is_negative() {
                    continue;
                }
                match entering {
                    None => entering = Some(j),
                    Some(cur) if !bland && self.obj[j] < self.obj[cur] => entering = Some(j),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some(e) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, F)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = row[self.ncols].div(&row[e]);
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        let better = if F::is_exact() {
                            ratio < lr || (ratio == lr && self.basis[i] < self.basis[li])
                        } else {
                            let d = ratio.sub(&lr);
                            d.is_negative() || (d.is_zero() && self.basis[i] < self.basis[li])
                        };
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            let Some((r, ratio)) = leave else {
                return Err(LpStatus::Unbounded);
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, e);
            self.iterations += 1;
        }
    }

    fn run(mut self, lp: &LinearProgram<F>) -> Result<LpSolution<F>, LpStatus> {
        let has_artificial = self.kinds.contains(&ColKind::Artificial);
        if has_artificial {
            let costs: Vec<F> = self
                .kinds
                .iter()
                .map(|k| {
                    if *k == ColKind::Artificial {
                        F::one()
                    } else {
                        F::zero()
                    }
                })
                .collect();
            self.price(&costs);
            self.optimize(true)?;
            let infeasibility = self.obj[self.ncols].neg();
            let scale = self
                .rows
                .iter()
                .map(|r| r[self.ncols].to_f64().abs())
                .fold(1.0, f64::max);
            let infeasible = if F::is_exact() {
                infeasibility.is_positive()
            } else {
                infeasibility.to_f64() > 1e-9 * scale
            };
            if infeasible {
                return Err(LpStatus::Infeasible);
            }
            for r in 0..self.rows.len() {
                if self.kinds[self.basis[r]] != ColKind::Artificial {
                    continue;
                }
                let col = (0..self.ncols).find(|&j| {
                    self.kinds[j] != ColKind::Artificial && !self.rows[r][j].is_zero()
                });
                if let Some(j) = col {
                    self.pivot(r, j);
                }
            }
        }
        let mut costs = vec![F::zero(); self.ncols];
        costs[..lp.num_vars].clone_from_slice(&lp.objective);
        self.price(&costs);
        self.optimize(false)?;

        let mut x = vec![F::zero(); lp.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < lp.num_vars {
                x[b] = self.rows[i][self.ncols].clone();
            }
        }
        let duals = (0..self.rows.len())
            .map(|i| {
                let y = self.obj[self.identity_col[i]].neg();
                if self.flipped[i] {
                    y.neg()
                } else {
                    y
                }
            })
            .collect();
        let objective = x
            .iter()
            .zip(&lp.objective)
            .fold(F::zero(), |acc, (xi, ci)| acc.add(&xi.mul(ci)));
        Ok(LpSolution {
            x,
            duals,
            objective,
            iterations: self.iterations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_rational::BigRational;

    fn check_certificate(lp: &LinearProgram<BigRational>, sol: &LpSolution<BigRational>) {
        // primal feasibility
        for (c, y) in lp.constraints.iter().zip(&sol.duals) {
            let lhs = c
                .coeffs
                .iter()
                .fold(int(0), |acc, (j, a)| acc + a * &sol.x[*j]);
            match c.relation {
                Relation::Le => {
                    assert!(lhs <= c.rhs);
                    assert!(*y <= int(0));
                }
                Relation::Ge => {
                    assert!(lhs >= c.rhs);
                    assert!(*y >= int(0));
                }
                Relation::Eq => assert_eq!(lhs, c.rhs),
            }
        }
        // dual feasibility: c - A^T y >= 0
        let mut reduced = lp.objective.clone();
        for (c, y) in lp.constraints.iter().zip(&sol.duals) {
            for (j, a) in &c.coeffs {
                reduced[*j] -= a * y;
            }
        }
        assert!(reduced.iter().all(|r| *r >= int(0)));
        let dual_obj = lp
            .constraints
            .iter()
            .zip(&sol.duals)
            .fold(int(0), |acc, (c, y)| acc + &c.rhs * y);
        assert_eq!(dual_obj, sol.objective);
    }

    #[test]
    fn solves_textbook_problem_with_exact_duals() {
        // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> optimum 36 at (2, 6)
        let mut lp = LinearProgram::<BigRational>::new(2);
        lp.objective = vec![int(-3), int(-5)];
        lp.add(vec![(0, int(1))], Relation::Le, int(4));
        lp.add(vec![(1, int(2))], Relation::Le, int(12));
        lp.add(vec![(0, int(3)), (1, int(2))], Relation::Le, int(18));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, int(-36));
        assert_eq!(sol.x, vec![int(2), int(6)]);
        check_certificate(&lp, &sol);
    }

    #[test]
    fn handles_equalities_and_negative_rhs() {
        // min x + y s.t. x - y = -1/2, x + 2y >= 2
        let mut lp = LinearProgram::<BigRational>::new(2);
        lp.objective = vec![int(1), int(1)];
        lp.add(vec![(0, int(1)), (1, int(-1))], Relation::Eq, rat(-1, 2));
        lp.add(vec![(0, int(1)), (1, int(2))], Relation::Ge, int(2));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, rat(7, 6));
        check_certificate(&lp, &sol);
    }

    #[test]
    fn reports_infeasible_and_unbounded() {
        let mut lp = LinearProgram::<BigRational>::new(1);
        lp.objective = vec![int(1)];
        lp.add(vec![(0, int(1))], Relation::Le, int(1));
        lp.add(vec![(0, int(1))], Relation::Ge, int(2));
        assert_eq!(lp.solve().unwrap_err(), LpStatus::Infeasible);

        let mut lp = LinearProgram::<f64>::new(2);
        lp.objective = vec![-1.0, 0.0];
        lp.add(vec![(0, 1.0), (1, -1.0)], Relation::Le, 1.0);
        assert_eq!(lp.solve().unwrap_err(), LpStatus::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let mut lp = LinearProgram::<BigRational>::new(2);
        lp.objective = vec![int(2), int(1)];
        lp.add(vec![(0, int(1)), (1, int(1))], Relation::Eq, int(3));
        lp.add(vec![(0, int(2)), (1, int(2))], Relation::Eq, int(6));
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, int(3));
        check_certificate(&lp, &sol);
    }

    #[test]
    fn float_and_exact_agree_on_degenerate_problem() {
        // Klee-Minty style cube, n = 4
        let n = 4;
        let mut exact = LinearProgram::<BigRational>::new(n);
        let mut float = LinearProgram::<f64>::new(n);
        for j in 0..n {
            let c = -(1i64 << (n - 1 - j));
            exact.objective[j] = int(c);
            float.objective[j] = c as f64;
        }
        for i in 0..n {
            let mut row_e = Vec::new();
            let mut row_f = Vec::new();
            for j in 0..i {
                let a = 1i64 << (i - j + 1);
                row_e.push((j, int(a)));
                row_f.push((j, a as f64));
            }
            row_e.push((i, int(1)));
            row_f.push((i, 1.0));
            let b = 5i64.pow(i as u32 + 1);
            exact.add(row_e, Relation::Le, int(b));
            float.add(row_f, Relation::Le, b as f64);
        }
        let se = exact.solve().unwrap();
        let sf = float.solve().unwrap();
        assert!((se.objective.to_f64() - sf.objective).abs() < 1e-6);
        check_certificate(&exact, &se);
    }
}
