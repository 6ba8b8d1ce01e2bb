use serde::Serialize;

use super::space::FiniteMetricSpace;
use crate::error::Result;

/// Points in ℓ∞ of dimension equal to the number of points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddedPointSet {
    pub labels: Vec<String>,
    pub coords: Vec<Vec<f64>>,
}

impl EmbeddedPointSet {
    pub fn sup_distance(&self, i: usize, j: usize) -> f64 {
        sup_distance(&self.coords[i], &self.coords[j])
    }
}

pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
}

/// `z ↦ d(z, ·) − d(z₀, ·)`.
pub fn kuratowski_embed(m: &FiniteMetricSpace, basepoint: &str) -> Result<EmbeddedPointSet> {
    let b = m.index_of(basepoint)?;
    let n = m.len();
    let coords = (0..n)
        .map(|z| (0..n).map(|j| m.d(z, j) - m.d(b, j)).collect())
        .collect();
    Ok(EmbeddedPointSet {
        labels: m.labels().to_vec(),
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let m = FiniteMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 5.0], vec![5.0, 0.0]],
        )
        .unwrap();
        let e = kuratowski_embed(&m, "a").unwrap();
        assert_eq!(e.coords[0], vec![0.0, 0.0]);
        assert_eq!(e.coords[1], vec![5.0, -5.0]);
        assert_eq!(e.sup_distance(0, 1), 5.0);
        assert!(kuratowski_embed(&m, "c").is_err());
    }
}
