//! Sparse Gaussian elimination over a [`Scalar`] field.
//!
//! Boundary matrices of triangulated patches peel from the outside in: a
//! boundary edge meets a single triangle, so pivoting on the sparsest row
//! first keeps fill-in close to zero.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use crate::scalar::Scalar;

pub type SparseVec<F> = BTreeMap<usize, F>;

#[derive(Debug, Clone)]
pub struct SparseMatrix<F> {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec<F>>,
}

impl<F: Scalar> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn from_columns(nrows: usize, columns: &[SparseVec<F>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                if !v.is_zero() {
                    m.rows[*i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                t.rows[*j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(F::zero(), |acc, (j, v)| acc.add(&v.mul(&x[*j])))
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
struct Pivot<F> {
    col: usize,
    row: SparseVec<F>,
    rhs: F,
}

/// Result of eliminating `A x = b`.
#[derive(Debug, Clone)]
pub struct Elimination<F> {
    ncols: usize,
    pivots: Vec<Pivot<F>>,
    free: Vec<usize>,
    consistent: bool,
}

impl<F: Scalar> Elimination<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    fn back_substitute(&self, mut x: Vec<F>, homogeneous: bool) -> Vec<F> {
        for p in self.pivots.iter().rev() {
            let mut acc = if homogeneous { F::zero() } else { p.rhs.clone() };
            let mut diag = None;
            for (j, v) in &p.row {
                if *j == p.col {
                    diag = Some(v);
                } else if !x[*j].is_zero() {
                    acc = acc.sub(&v.mul(&x[*j]));
                }
            }
            x[p.col] = acc.div(diag.expect("pivot entry present"));
        }
        x
    }

    /// A solution with all free variables set to zero, if the system is consistent.
    pub fn particular(&self) -> Option<Vec<F>> {
        if !self.consistent {
            return None;
        }
        Some(self.back_substitute(vec![F::zero(); self.ncols], false))
    }

    /// One kernel vector per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec<F>> {
        self.free
            .iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.ncols];
                x[f] = F::one();
                self.back_substitute(x, true)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }
}

/// Eliminates `a x = rhs` (or `a x = 0` when `rhs` is `None`).
pub fn eliminate<F: Scalar>(a: &SparseMatrix<F>, rhs: Option<&[F]>) -> Elimination<F> {
    let mut rows = a.rows.clone();
    let mut b: Vec<F> = match rhs {
        Some(r) => r.to_vec(),
        None => vec![F::zero(); a.nrows],
    };
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.ncols];
    for (i, row) in rows.iter_mut().enumerate() {
        row.retain(|_, v| !v.is_zero());
        for j in row.keys() {
            col_rows[*j].insert(i);
        }
    }
    let mut active = vec![true; a.nrows];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Reverse((r.len(), i)))
        .collect();
    let mut pivots = Vec::new();
    let mut pivoted_col = vec![false; a.ncols];
    let mut consistent = true;

    while let Some(Reverse((nnz, r))) = heap.pop() {
        if !active[r] || rows[r].len() != nnz {
            continue;
        }
        active[r] = false;
        if nnz == 0 {
            if !b[r].is_zero() {
                consistent = false;
            }
            continue;
        }
        let col = choose_pivot_column(&rows[r], &col_rows);
        let pivot_row = std::mem::take(&mut rows[r]);
        for j in pivot_row.keys() {
            col_rows[*j].remove(&r);
        }
        let pv = pivot_row[&col].clone();
        let others: Vec<usize> = col_rows[col].iter().copied().collect();
        for r2 in others {
            let factor = rows[r2][&col].div(&pv);
            for (j, v) in &pivot_row {
                let cur = rows[r2].get(j).cloned().unwrap_or_else(F::zero);
                let new = if *j == col {
                    F::zero()
                } else {
                    cur.sub(&factor.mul(v))
                };
                if new.is_zero() {
                    if rows[r2].remove(j).is_some() {
                        col_rows[*j].remove(&r2);
                    }
                } else {
                    if rows[r2].insert(*j, new).is_none() {
                        col_rows[*j].insert(r2);
                    }
                }
            }
            b[r2] = b[r2].sub(&factor.mul(&b[r]));
            heap.push(Reverse((rows[r2].len(), r2)));
        }
        pivoted_col[col] = true;
        pivots.push(Pivot {
            col,
            row: pivot_row,
            rhs: b[r].clone(),
        });
    }
    let free = (0..a.ncols).filter(|&j| !pivoted_col[j]).collect();
    Elimination {
        ncols: a.ncols,
        pivots,
        free,
        consistent,
    }
}

fn choose_pivot_column<F: Scalar>(row: &SparseVec<F>, col_rows: &[BTreeSet<usize>]) -> usize {
    let threshold = if F::is_exact() {
        0.0
    } else {
        0.1 * row.values().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    };
    row.iter()
        .filter(|(_, v)| v.to_f64().abs() >= threshold)
        .min_by_key(|(j, _)| (col_rows[**j].len(), **j))
        .map(|(j, _)| *j)
        .expect("non-empty row")
}

pub fn rank<F: Scalar>(a: &SparseMatrix<F>) -> usize {
    eliminate(a, None).rank()
}

/// Incremental column-space membership test.
///
/// Columns are added one at a time and reduced against earlier pivots
/// keyed by their largest row index. The target vector is kept reduced;
/// it lies in the span of the added columns exactly when it reduces to zero.
#[derive(Debug, Clone)]
pub struct ColumnReducer<F> {
    pivots: HashMap<usize, SparseVec<F>>,
    target: SparseVec<F>,
    added: usize,
}

impl<F: Scalar> ColumnReducer<F> {
    pub fn new(target: SparseVec<F>) -> Self {
        let target = target.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        ColumnReducer {
            pivots: HashMap::new(),
            target,
            added: 0,
        }
    }

    fn reduce(&self, mut col: SparseVec<F>) -> SparseVec<F> {
        while let Some((&low, v)) = col.last_key_value() {
            let Some(p) = self.pivots.get(&low) else {
                break;
            };
            let factor = v.clone();
            for (i, pv) in p {
                let cur = col.get(i).cloned().unwrap_or_else(F::zero);
                let new = if *i == low {
                    F::zero()
                } else {
                    cur.sub(&factor.mul(pv))
                };
                if new.is_zero() {
                    col.remove(i);
                } else {
                    col.insert(*i, new);
                }
            }
        }
        col
    }

    /// Adds a column; returns `true` if it enlarged the span.
    pub fn add_column(&mut self, col: SparseVec<F>) -> bool {
        self.added += 1;
        let col: SparseVec<F> = col.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let reduced = self.reduce(col);
        let Some((&low, lead)) = reduced.last_key_value() else {
            return false;
        };
        let inv = F::one().div(lead);
        let normalized: SparseVec<F> = reduced
            .iter()
            .map(|(i, v)| (*i, if *i == low { F::one() } else { v.mul(&inv) }))
            .collect();
        self.pivots.insert(low, normalized);
        if self.target.last_key_value().map(|(k, _)| *k) == Some(low) {
            let t = std::mem::take(&mut self.target);
            self.target = self.reduce(t);
        }
        true
    }

    pub fn target_in_span(&self) -> bool {
        self.target.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}
