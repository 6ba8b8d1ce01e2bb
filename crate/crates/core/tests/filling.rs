use std::collections::HashMap;

use mfill_core::filling::{
    chain_from_json, chain_to_json, complex_from_json, complex_to_json, discrete_circle, filling_radius,
    grid_square_loop, h_lambda_estimate, loop_through, min_filling_area, normed_patch, semi_ellipticity_check,
    stokes_sum, tree_excursion_loop, Chain, FillMode, Loop, PatchGeometry, PlanePatch, SimplicialComplex2,
    DEFAULT_TRIANGLE_CAP,
};
use mfill_core::finite_metric::Graph;
use mfill_core::normed_plane::{AreaDefinition, PolygonalNorm};
use mfill_core::scalar::{int, ratio_to_f64};
use proptest::prelude::*;

const OCTAHEDRON: [[f64; 3]; 6] = [
    [1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0],
];

fn octahedron() -> SimplicialComplex2 {
    let mut t = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                t.push([a, b, c]);
            }
        }
    }
    let w = (0..8).map(|i| 1.0 + i as f64 / 8.0).collect();
    SimplicialComplex2::new(6, t, &[]).unwrap().with_weights(w).unwrap()
}

fn det(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn euclid_patch(extent: f64, mesh: f64) -> PlanePatch {
    normed_patch(&PatchGeometry::Euclidean, extent, mesh, DEFAULT_TRIANGLE_CAP).unwrap()
}

fn rectangle(p: &PlanePatch, i0: usize, j0: usize, w: usize, h: usize) -> Loop {
    let mut v = Vec::new();
    for i in i0..i0 + w {
        v.push(p.vertex(i, j0));
    }
    for j in j0..j0 + h {
        v.push(p.vertex(i0 + w, j));
    }
    for i in (i0 + 1..=i0 + w).rev() {
        v.push(p.vertex(i, j0 + h));
    }
    for j in (j0 + 1..=j0 + h).rev() {
        v.push(p.vertex(i0, j));
    }
    Loop::new(v).unwrap()
}

fn shoelace(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
        / 2.0
}

/// Every 2-chain with coefficients in {-1, 0, 1}. The sphere class spans
/// the kernel of the boundary, so the minimal filling of each boundary is
/// the best shift of one preimage by the sphere.
#[test]
fn octahedron_fillings_match_exhaustive_oracle() {
    let k = octahedron();
    let sphere: Vec<i64> = k
        .triangles()
        .iter()
        .map(|t| det(OCTAHEDRON[t[0]], OCTAHEDRON[t[1]], OCTAHEDRON[t[2]]).signum() as i64)
        .collect();
    let mut s = Chain::zero(2);
    for (t, v) in sphere.iter().enumerate() {
        s.add_term(t, &int(*v));
    }
    assert!(k.boundary_of(&s).unwrap().is_zero());

    let w = k.weights().to_vec();
    let mut oracle: HashMap<Vec<(usize, String)>, (Chain, f64)> = HashMap::new();
    for code in 0..3usize.pow(8) {
        let coeffs: Vec<i64> = (0..8).map(|t| (code / 3usize.pow(t)) as i64 % 3 - 1).collect();
        let mut c = Chain::zero(2);
        for (t, v) in coeffs.iter().enumerate() {
            c.add_term(t, &int(*v));
        }
        let z = k.boundary_of(&c).unwrap();
        let best = (-2..=2)
            .map(|shift| (0..8).map(|t| w[t] * (coeffs[t] + shift * sphere[t]).abs() as f64).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        let key = z.coeffs.iter().map(|(e, v)| (*e, v.to_string())).collect();
        oracle.entry(key).or_insert((z, best));
    }
    assert!(oracle.len() > 1000);
    for (i, (z, best)) in oracle.values().enumerate() {
        let f = min_filling_area(&k, z, FillMode::Relaxed).unwrap();
        assert!((f.area - best).abs() < 1e-9, "relaxed {} vs oracle {best}", f.area);
        assert_eq!(k.boundary_of(&f.chain).unwrap(), *z);
        if i % 17 == 0 {
            let g = min_filling_area(&k, z, FillMode::Integral).unwrap();
            assert!((g.area - best).abs() < 1e-9, "integral {} vs oracle {best}", g.area);
        }
    }
}

#[test]
fn discrete_circles_fill_their_enclosed_area() {
    let p = euclid_patch(12.0, 0.5);
    for r in [2.0, 3.5, 5.0] {
        let l = discrete_circle(&p, [0.0, 0.0], r).unwrap();
        let pts: Vec<[f64; 2]> = l.vertices.iter().map(|&v| p.point(v)).collect();
        let f = min_filling_area(&p.complex, &l.chain(&p.complex).unwrap(), FillMode::Relaxed).unwrap();
        assert!((f.area - shoelace(&pts).abs()).abs() < 1e-9, "r={r}: {} vs {}", f.area, shoelace(&pts));
    }
}

#[test]
fn filling_radius_bounds() {
    let p = euclid_patch(6.0, 1.0);
    let l = rectangle(&p, 1, 1, 4, 4);
    let z = l.chain(&p.complex).unwrap();
    let full = filling_radius(&p.complex, &z).unwrap();
    assert!(full > 0.0 && full <= 6.0 * 2f64.sqrt());
    let keep: Vec<usize> = (0..p.complex.n_vertices())
        .filter(|&v| {
            let (i, j) = p.grid_position(v);
            (1..=5).contains(&i) && (1..=5).contains(&j)
        })
        .collect();
    let (sub, map) = p.complex.induced(&keep).unwrap();
    let zl = Loop::new(l.vertices.iter().map(|v| map[*v].unwrap()).collect()).unwrap();
    let restricted = filling_radius(&sub, &zl.chain(&sub).unwrap()).unwrap();
    assert!(restricted >= full);
}

#[test]
fn h_lambda_on_grids_and_trees() {
    for r in [4usize, 8] {
        let g = Graph::grid(r + 1, r + 1);
        let l = grid_square_loop(r + 1, 0, 0, r);
        let e = h_lambda_estimate(&g, &l, 8.0, r as f64, 10).unwrap();
        assert!(e.value >= 0.4 && e.value <= 8f64.powi(4));
        let w = &e.witnesses;
        assert!((stokes_sum(&l, &w.f, &w.pi) - e.value).abs() < 1e-9);
        let t = Graph::binary_tree(r);
        let e = h_lambda_estimate(&t, &tree_excursion_loop(r), 8.0, r as f64, 10).unwrap();
        assert_eq!(e.value, 0.0);
    }
}

#[test]
fn semi_ellipticity_examples() {
    let sq = PolygonalNorm::square();
    let diamond = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
    let r = semi_ellipticity_check(&sq, &diamond, 0.25, AreaDefinition::MassStar, 0.05).unwrap();
    assert!(r.pass);
    let unit = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let r = semi_ellipticity_check(&PolygonalNorm::regular(16).unwrap(), &unit, 0.1, AreaDefinition::HolmesThompson, 0.05)
        .unwrap();
    assert!(r.pass);
    assert!(semi_ellipticity_check(&sq, &unit, 0.75, AreaDefinition::HolmesThompson, 0.05).is_err());
}

#[test]
fn complex_and_chain_json_round_trip() {
    let k = octahedron();
    let back = complex_from_json(&complex_to_json(&k)).unwrap();
    assert_eq!(back.triangles(), k.triangles());
    assert_eq!(back.weights(), k.weights());
    let mut c = Chain::zero(1);
    c.add_term(0, &(int(3) / int(4)));
    c.add_term(5, &int(-2));
    assert_eq!(chain_from_json(&back, &chain_to_json(&k, &c)).unwrap(), c);
}

fn waypoints() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..49, 3..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rectangles_fill_exactly(i0 in 0usize..4, j0 in 0usize..4, w in 1usize..4, h in 1usize..4) {
        let p = euclid_patch(6.0, 1.0);
        let l = rectangle(&p, i0, j0, w.min(6 - i0), h.min(6 - j0));
        let f = min_filling_area(&p.complex, &l.chain(&p.complex).unwrap(), FillMode::Relaxed).unwrap();
        let want = (w.min(6 - i0) * h.min(6 - j0)) as f64;
        prop_assert_eq!(f.exact_area.as_ref().map(ratio_to_f64), Some(want));
    }

    #[test]
    fn fill_is_homogeneous_and_subadditive(a in waypoints(), b in waypoints(), k in -3i64..=3) {
        let p = euclid_patch(6.0, 1.0);
        let fill = |z: &Chain| min_filling_area(&p.complex, z, FillMode::Relaxed).unwrap();
        let z1 = loop_through(&p.complex, &a).unwrap().chain(&p.complex).unwrap();
        let z2 = loop_through(&p.complex, &b).unwrap().chain(&p.complex).unwrap();
        let (f1, f2) = (fill(&z1), fill(&z2));
        let fk = fill(&z1.scaled(&int(k)));
        prop_assert_eq!(fk.exact_area.unwrap(), f1.exact_area.clone().unwrap() * int(k.abs()));
        prop_assert!(fill(&z1.plus(&z2)).area <= f1.area + f2.area + 1e-9);
        prop_assert!(f1.gap <= 1e-9 && f1.dual_violation <= 1e-9);
    }

    #[test]
    fn stokes_sum_is_the_shoelace_area(pts in prop::collection::vec(prop::array::uniform2(-5.0f64..5.0), 3..12), c in -10.0f64..10.0) {
        let l = Loop::new((0..pts.len()).collect()).unwrap();
        let x: Vec<f64> = pts.iter().map(|p| p[0]).collect();
        let y: Vec<f64> = pts.iter().map(|p| p[1]).collect();
        let s = stokes_sum(&l, &x, &y);
        prop_assert!((s - shoelace(&pts)).abs() < 1e-9);
        let shifted: Vec<f64> = x.iter().map(|v| v + c).collect();
        prop_assert!((stokes_sum(&l, &shifted, &y) - s).abs() < 1e-9);
        prop_assert!((stokes_sum(&l, &y, &x) + s).abs() < 1e-9);
    }
}
