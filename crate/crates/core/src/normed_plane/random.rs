use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polygon::{Point, PolygonalNorm};
use crate::error::{Error, Result};
use crate::scalar::{dyadic, int};

const BITS: u32 = 24;

/// A seeded random centrally symmetric polygon with `2·half_vertex_count`
/// vertices.
///
/// The polygon is a zonogon: `k` edge vectors with increasing angles in
/// `[0, π)` and random lengths, walked from `-Σe/2`. Coordinates are dyadic
/// rationals, so the result is exactly symmetric.
pub fn random_symmetric_polygon(half_vertex_count: usize, seed: u64) -> Result<PolygonalNorm> {
    if half_vertex_count < 2 {
        return Err(Error::InvalidInput(
            "half_vertex_count must be at least 2".into(),
        ));
    }
    let k = half_vertex_count;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut angles: Vec<f64> = (0..k)
            .map(|_| rng.gen::<f64>() * std::f64::consts::PI)
            .collect();
        angles.sort_by(f64::total_cmp);
        let min_gap = angles
            .windows(2)
            .map(|w| w[1] - w[0])
            .chain(std::iter::once(angles[0] + std::f64::consts::PI - angles[k - 1]))
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-3 {
            continue;
        }
        let edges: Vec<Point> = angles
            .iter()
            .map(|t| {
                let len = 0.2 + rng.gen::<f64>();
                [dyadic(len * t.cos(), BITS), dyadic(len * t.sin(), BITS)]
            })
            .collect();
        let mut start = [-&edges[0][0], -&edges[0][1]];
        for e in &edges[1..] {
            start = [&start[0] - &e[0], &start[1] - &e[1]];
        }
        let two = int(2);
        let mut v = [&start[0] / &two, &start[1] / &two];
        let mut half = Vec::with_capacity(k);
        for e in &edges {
            half.push(v.clone());
            v = [&v[0] + &e[0], &v[1] + &e[1]];
        }
        if let Ok(norm) = PolygonalNorm::from_half(half) {
            if norm.len() == 2 * k {
                return Ok(norm);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_halves_give_a_parallelogram() {
        for seed in 0..5 {
            assert!(random_symmetric_polygon(2, seed).unwrap().is_parallelogram());
        }
    }

    #[test]
    fn deterministic_and_valid() {
        let a = random_symmetric_polygon(3, 1).unwrap();
        let b = random_symmetric_polygon(3, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert!(random_symmetric_polygon(1, 0).is_err());
    }
}
