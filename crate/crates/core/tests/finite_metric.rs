use mfill_core::finite_metric::{
    cayley_ball, delta_thickening, extremality_defect, four_point_delta, graph_metric, kuratowski_embed,
    separated_net, slim_triangle_delta, tight_span, FiniteMetricSpace, Graph, GroupPresentation,
    DEFAULT_ELEMENT_CAP,
};
use mfill_core::Error;
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Shortest-path metric of a complete graph with integer weights.
fn weighted_metric(n: usize, w: &[u32]) -> FiniteMetricSpace {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, w[k] as f64));
            k += 1;
        }
    }
    graph_metric(&Graph::new(labels(n), edges).unwrap()).unwrap()
}

fn random_tree(parents: &[usize]) -> Graph {
    let edges = parents.iter().enumerate().map(|(i, p)| (i + 1, p % (i + 1), 1.0)).collect();
    Graph::new(labels(parents.len() + 1), edges).unwrap()
}

/// Four-point constant straight from the Gromov product definition,
/// `(x|y)_w >= min((x|z)_w, (y|z)_w) - δ`.
fn gromov_product_delta(m: &FiniteMetricSpace) -> f64 {
    let n = m.len();
    let gp = |x: usize, y: usize, w: usize| (m.d(x, w) + m.d(y, w) - m.d(x, y)) / 2.0;
    let mut delta: f64 = 0.0;
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    delta = delta.max(gp(x, z, w).min(gp(y, z, w)) - gp(x, y, w));
                }
            }
        }
    }
    delta
}

#[test]
fn tree_and_cycle_constants() {
    assert_eq!(four_point_delta(&graph_metric(&Graph::binary_tree(6)).unwrap()), 0.0);
    assert_eq!(slim_triangle_delta(&Graph::cycle(6).unwrap(), usize::MAX).unwrap(), 1.0);
}

#[test]
fn grid_delta_grows() {
    let d: Vec<f64> = (3..=8)
        .map(|n| four_point_delta(&graph_metric(&Graph::grid(n, n)).unwrap()))
        .collect();
    assert!(d.windows(2).all(|w| w[1] > w[0]), "{d:?}");
    for (n, v) in (3..=5).zip(&d) {
        let m = graph_metric(&Graph::grid(n, n)).unwrap();
        assert_eq!(*v, gromov_product_delta(&m));
    }
}

#[test]
fn cayley_ball_sizes() {
    let z2 = GroupPresentation::new(&["a", "b"], &["abAB"]).unwrap();
    let f2 = GroupPresentation::new(&["a", "b"], &[]).unwrap();
    for r in 0..=4 {
        assert_eq!(cayley_ball(&z2, r, DEFAULT_ELEMENT_CAP).unwrap().len(), 2 * r * r + 2 * r + 1);
        assert_eq!(cayley_ball(&f2, r, DEFAULT_ELEMENT_CAP).unwrap().len(), 2 * 3usize.pow(r as u32) - 1);
    }
}

#[test]
fn cayley_ball_respects_cap() {
    let f2 = GroupPresentation::new(&["a", "b"], &[]).unwrap();
    assert!(cayley_ball(&f2, 10, 100).is_err());
}

#[test]
fn tripod_of_integer_triangles() {
    for [ab, ac, bc] in [[3.0, 4.0, 5.0], [2.0, 2.0, 2.0], [1.0, 5.0, 6.0], [7.0, 4.0, 5.0]] {
        let m = FiniteMetricSpace::from_matrix(vec![vec![0.0, ab, ac], vec![ab, 0.0, bc], vec![ac, bc, 0.0]]).unwrap();
        let ts = tight_span(&m, 0.5).unwrap();
        let legs = [(ab + ac - bc) / 2.0, (ab + bc - ac) / 2.0, (ac + bc - ab) / 2.0];
        assert!(ts.functions.iter().any(|f| f[..] == legs[..]), "no branch point {legs:?}");
        for f in &ts.functions {
            assert_eq!(extremality_defect(m.matrix(), f), 0.0);
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(ts.space.d(i, j), m.d(i, j));
            }
        }
    }
}

#[test]
fn thickening_contains_the_graph_isometrically() {
    let t = delta_thickening(&Graph::cycle(8).unwrap(), 0.25).unwrap();
    assert_eq!(t.distortion, 0.0);
    assert!(t.hausdorff <= 64.0 * 0.25);
    let g = graph_metric(&Graph::cycle(8).unwrap()).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(t.space.d(i, j), g.d(i, j));
        }
    }
}

#[test]
fn oversized_thickenings_are_refused() {
    let e = delta_thickening(&Graph::cycle(8).unwrap(), 1.0).unwrap_err();
    assert!(matches!(e, Error::CapExceeded { .. }), "{e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kuratowski_is_isometric(w in prop::collection::vec(1u32..=9, 28), base in 0usize..8) {
        let m = weighted_metric(8, &w);
        let e = kuratowski_embed(&m, &m.labels()[base]).unwrap();
        for i in 0..8 {
            prop_assert!(e.coords[base].iter().all(|c| *c == 0.0));
            for j in 0..8 {
                prop_assert_eq!(e.sup_distance(i, j), m.d(i, j));
            }
        }
    }

    #[test]
    fn four_point_matches_gromov_products(w in prop::collection::vec(1u32..=6, 15)) {
        let m = weighted_metric(6, &w);
        prop_assert!((four_point_delta(&m) - gromov_product_delta(&m)).abs() < 1e-12);
    }

    #[test]
    fn trees_are_zero_hyperbolic(parents in prop::collection::vec(0usize..64, 1..16)) {
        let m = graph_metric(&random_tree(&parents)).unwrap();
        prop_assert_eq!(four_point_delta(&m), 0.0);
    }

    #[test]
    fn delta_scales_with_the_metric(w in prop::collection::vec(1u32..=6, 15), c in 1u32..5) {
        let m = weighted_metric(6, &w);
        let s = m.scaled(c as f64).unwrap();
        prop_assert!((four_point_delta(&s) - c as f64 * four_point_delta(&m)).abs() < 1e-9);
    }

    #[test]
    fn nets_are_separated_and_covering(w in prop::collection::vec(1u32..=9, 28), delta in 1u32..6) {
        let m = weighted_metric(8, &w);
        let d = delta as f64;
        let net = separated_net(&m, d).unwrap();
        for (a, &i) in net.iter().enumerate() {
            for &j in &net[a + 1..] {
                prop_assert!(m.d(i, j) >= d);
            }
        }
        prop_assert!(m.covering_radius(&net) < d);
    }
}
