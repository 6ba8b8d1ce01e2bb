use crate::error::{Error, Result};

/// Relative slack for the triangle inequality and symmetry checks.
const METRIC_TOL: f64 = 1e-9;

/// A finite metric space given by a labelled distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    d: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, d: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if d.len() != n || d.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMetric(format!(
                "distance matrix must be {n}x{n}"
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::InvalidMetric(format!("duplicate label `{l}`")));
            }
        }
        let scale = d
            .iter()
            .flatten()
            .fold(0.0f64, |a, &b| a.max(b.abs()))
            .max(1.0);
        let tol = METRIC_TOL * scale;
        for i in 0..n {
            if d[i][i] != 0.0 {
                return Err(Error::InvalidMetric(format!("d({0},{0}) must be 0", labels[i])));
            }
            for j in 0..n {
                let v = d[i][j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMetric(format!(
                        "d({},{}) = {v} is not a nonnegative number",
                        labels[i], labels[j]
                    )));
                }
                if (v - d[j][i]).abs() > tol {
                    return Err(Error::InvalidMetric(format!(
                        "asymmetric at ({},{})",
                        labels[i], labels[j]
                    )));
                }
                if i != j && v <= tol {
                    return Err(Error::InvalidMetric(format!(
                        "distinct points {} and {} at distance 0",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if d[i][k] > d[i][j] + d[j][k] + tol {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, d })
    }

    /// Labels `0, 1, ..., n-1`.
    pub fn from_matrix(d: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (0..d.len()).map(|i| i.to_string()).collect();
        Self::new(labels, d)
    }

    pub(crate) fn new_unchecked(labels: Vec<String>, d: Vec<Vec<f64>>) -> Self {
        FiniteMetricSpace { labels, d }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.d
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.d[i][j]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().flatten().fold(0.0, |a, &b| a.max(b))
    }

    /// The subspace on `idx` (in that order) with the restricted metric.
    pub fn restrict(&self, idx: &[usize]) -> FiniteMetricSpace {
        FiniteMetricSpace {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            d: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.d[i][j]).collect())
                .collect(),
        }
    }

    /// Every distance multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<FiniteMetricSpace> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        Ok(FiniteMetricSpace {
            labels: self.labels.clone(),
            d: self
                .d
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        })
    }

    /// One-sided Hausdorff distance from the whole space to the subset `idx`.
    pub fn covering_radius(&self, idx: &[usize]) -> f64 {
        (0..self.len())
            .map(|i| idx.iter().map(|&j| self.d[i][j]).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }
}

/// Greedy maximal `δ`-separated subset, scanning points in label order.
///
/// Returned indices are pairwise at distance `>= δ` and every point lies
/// within distance `< δ` of one of them.
pub fn separated_net(m: &FiniteMetricSpace, delta: f64) -> Result<Vec<usize>> {
    if !(delta > 0.0) {
        return Err(Error::InvalidInput("δ must be positive".into()));
    }
    let mut net: Vec<usize> = Vec::new();
    for i in 0..m.len() {
        if net.iter().all(|&j| m.d(i, j) >= delta) {
            net.push(i);
        }
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle6() -> FiniteMetricSpace {
        let d = (0..6)
            .map(|i: i32| {
                (0..6)
                    .map(|j: i32| {
                        let k = (i - j).rem_euclid(6);
                        k.min(6 - k) as f64
                    })
                    .collect()
            })
            .collect();
        FiniteMetricSpace::from_matrix(d).unwrap()
    }

    #[test]
    fn rejects_invalid_matrices() {
        assert!(FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(FiniteMetricSpace::from_matrix(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).is_err());
        let bad = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        assert!(FiniteMetricSpace::from_matrix(bad).is_err());
    }

    #[test]
    fn net_postconditions_on_the_six_cycle() {
        let m = cycle6();
        let net = separated_net(&m, 2.0).unwrap();
        assert!(net.len() == 2 || net.len() == 3);
        for (a, &i) in net.iter().enumerate() {
            for &j in &net[a + 1..] {
                assert!(m.d(i, j) >= 2.0);
            }
        }
        assert!(m.covering_radius(&net) < 2.0);
        assert_eq!(separated_net(&m, 0.5).unwrap().len(), 6);
        assert_eq!(separated_net(&m, 10.0).unwrap(), vec![0]);
    }
}
