use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{graph_metric, Geodesics, Graph};
use super::space::FiniteMetricSpace;
use crate::error::Result;

/// Gromov's four-point constant: the maximum over quadruples of half the
/// gap between the largest and second largest of the three pair sums.
pub fn four_point_delta(m: &FiniteMetricSpace) -> f64 {
    let n = m.len();
    let d = m.matrix();
    let mut best: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let dij = d[i][j];
            for k in j + 1..n {
                let (dik, djk) = (d[i][k], d[j][k]);
                for l in k + 1..n {
                    let s1 = dij + d[k][l];
                    let s2 = dik + d[j][l];
                    let s3 = d[i][l] + djk;
                    let (hi, mid) = if s1 >= s2 {
                        if s2 >= s3 {
                            (s1, s2)
                        } else if s1 >= s3 {
                            (s1, s3)
                        } else {
                            (s3, s1)
                        }
                    } else if s1 >= s3 {
                        (s2, s1)
                    } else if s2 >= s3 {
                        (s2, s3)
                    } else {
                        (s3, s2)
                    };
                    best = best.max(0.5 * (hi - mid));
                }
            }
        }
    }
    best
}

const SLIM_SEED: u64 = 0x736c_696d;

/// Lower bound for the slimness constant of geodesic triangles.
///
/// For vertex triples the sides are fixed shortest paths; the defect of a
/// side is the largest distance from one of its vertices to the vertex set
/// of the other two sides. All triples are scanned when there are at most
/// `sample_budget` of them, otherwise `sample_budget` seeded random triples.
pub fn slim_triangle_delta(g: &Graph, sample_budget: usize) -> Result<f64> {
    let m = graph_metric(g)?;
    let geo = Geodesics::new(g);
    let n = g.len();
    let total = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
    let mut best: f64 = 0.0;
    let mut visit = |i: usize, j: usize, k: usize| {
        best = best.max(triangle_defect(&m, &geo, i, j, k));
    };
    if total <= sample_budget {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    visit(i, j, k);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SLIM_SEED);
        for _ in 0..sample_budget {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            let k = rng.gen_range(0..n);
            if i != j && j != k && i != k {
                visit(i, j, k);
            }
        }
    }
    Ok(best)
}

fn triangle_defect(m: &FiniteMetricSpace, geo: &Geodesics, a: usize, b: usize, c: usize) -> f64 {
    let sides = [geo.get(a, b), geo.get(b, c), geo.get(c, a)];
    let mut worst: f64 = 0.0;
    for s in 0..3 {
        let others: Vec<usize> = sides[(s + 1) % 3]
            .iter()
            .chain(sides[(s + 2) % 3].iter())
            .copied()
            .collect();
        for &v in &sides[s] {
            let dist = others
                .iter()
                .map(|&w| m.d(v, w))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(dist);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_zero_hyperbolic() {
        let t = Graph::binary_tree(3);
        assert_eq!(four_point_delta(&graph_metric(&t).unwrap()), 0.0);
        assert_eq!(slim_triangle_delta(&t, 10_000).unwrap(), 0.0);
    }

    #[test]
    fn six_cycle_is_one_slim() {
        let c = Graph::cycle(6).unwrap();
        assert_eq!(slim_triangle_delta(&c, 1000).unwrap(), 1.0);
    }

    #[test]
    fn four_cycle_four_point_constant() {
        let c = graph_metric(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(four_point_delta(&c), 1.0);
    }
}
