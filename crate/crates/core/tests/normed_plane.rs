use mfill_core::normed_plane::{
    alpha_v, area_density, isoperimetric_ratio, jung_constant, polygon_area, random_symmetric_polygon,
    AreaDefinition, JungConfig, PolygonalNorm,
};
use mfill_core::scalar::{int, ratio_to_f64};
use proptest::prelude::*;

const QUARTER_PI: f64 = 0.25 / std::f64::consts::PI;

fn golden(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    for _ in 0..60 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f((a + b) / 2.0)
}

/// Circumradius of a point set by nested golden-section search; the
/// objective is convex in the center.
fn circumradius(n: &PolygonalNorm, pts: &[[f64; 2]]) -> f64 {
    let reach = pts.iter().map(|p| n.gauge_f64(*p)).fold(0.0, f64::max) * 2.0 + 1.0;
    let scale = n.vertices_f64().iter().map(|v| v[0].abs().max(v[1].abs())).fold(0.0, f64::max) * reach;
    let far = |c: [f64; 2]| pts.iter().map(|p| n.gauge_f64([p[0] - c[0], p[1] - c[1]])).fold(0.0, f64::max);
    golden(-scale, scale, |x| golden(-scale, scale, |y| far([x, y])))
}

fn diameter(n: &PolygonalNorm, pts: &[[f64; 2]]) -> f64 {
    let mut d: f64 = 0.0;
    for p in pts {
        for q in pts {
            d = d.max(n.gauge_f64([p[0] - q[0], p[1] - q[1]]));
        }
    }
    d
}

/// Lower bound on the Jung constant: the best triangle among vertices and
/// midpoints of the edges of the unit sphere.
fn jung_oracle(n: &PolygonalNorm) -> f64 {
    let vs = n.vertices_f64();
    let mut cands = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let w = vs[(i + 1) % vs.len()];
        for t in [0.0, 0.5] {
            cands.push([v[0] + t * (w[0] - v[0]), v[1] + t * (w[1] - v[1])]);
        }
    }
    let k = cands.len();
    let mut best: f64 = 1.0;
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let tri = [cands[i], cands[j], cands[l]];
                best = best.max(2.0 * circumradius(n, &tri) / diameter(n, &tri));
            }
        }
    }
    best
}

#[test]
fn square_and_hexagon_perimeters_are_exact() {
    assert_eq!(PolygonalNorm::square().self_perimeter(), int(8));
    assert_eq!(PolygonalNorm::diamond().self_perimeter(), int(8));
    assert_eq!(PolygonalNorm::affine_hexagon().self_perimeter(), int(6));
}

#[test]
fn regular_polygons_approach_two_pi() {
    let p = ratio_to_f64(&PolygonalNorm::regular(32).unwrap().self_perimeter());
    assert!((p - std::f64::consts::TAU).abs() < 0.02, "{p}");
}

#[test]
fn jung_matches_triangle_oracle() {
    let cfg = JungConfig::default();
    for (n, tight) in [
        (PolygonalNorm::square(), true),
        (PolygonalNorm::affine_hexagon(), true),
        (PolygonalNorm::regular(8).unwrap(), false),
    ] {
        let j = jung_constant(&n, &cfg).unwrap();
        let o = jung_oracle(&n);
        assert!(o <= j.hi + 1e-6, "oracle {o} above enclosure [{}, {}]", j.lo, j.hi);
        if tight {
            assert!(j.lo - o < 1e-3, "oracle {o} below enclosure [{}, {}]", j.lo, j.hi);
        }
    }
}

#[test]
fn jung_of_classical_norms() {
    let cfg = JungConfig::default();
    assert_eq!(jung_constant(&PolygonalNorm::square(), &cfg).unwrap().exact, Some(int(1)));
    let h = jung_constant(&PolygonalNorm::affine_hexagon(), &cfg).unwrap();
    assert!((h.midpoint() - 4.0 / 3.0).abs() < 1e-2);
    let e = jung_constant(&PolygonalNorm::regular(32).unwrap(), &cfg).unwrap();
    assert!((e.midpoint() - 2.0 / 3f64.sqrt()).abs() < 1e-2);
}

#[test]
fn alpha_is_reciprocal_of_jung_times_perimeter() {
    let cfg = JungConfig::default();
    for n in [PolygonalNorm::affine_hexagon(), PolygonalNorm::regular(6).unwrap()] {
        let j = jung_constant(&n, &cfg).unwrap();
        let a = alpha_v(&n, &j);
        let p = ratio_to_f64(&n.self_perimeter());
        assert!((a.lo.decimal - 1.0 / (j.hi * p)).abs() < 1e-12);
        assert!((a.hi.decimal - 1.0 / (j.lo * p)).abs() < 1e-12);
    }
    let sq = PolygonalNorm::square();
    let a = alpha_v(&sq, &jung_constant(&sq, &cfg).unwrap());
    assert_eq!(a.lo.exact.as_deref(), Some("1/8"));
}

#[test]
fn unit_ball_areas() {
    assert_eq!(PolygonalNorm::square().area(), int(4));
    assert_eq!(PolygonalNorm::diamond().area(), int(2));
    assert_eq!(polygon_area(PolygonalNorm::affine_hexagon().vertices()), PolygonalNorm::affine_hexagon().area());
}

#[test]
fn euclidean_limit_of_mass_star() {
    let m = isoperimetric_ratio(&PolygonalNorm::regular(32).unwrap(), AreaDefinition::MassStar).to_f64();
    assert!((m - QUARTER_PI).abs() < 1e-3, "{m}");
    let s = isoperimetric_ratio(&PolygonalNorm::square(), AreaDefinition::MassStar).to_f64();
    assert!(s - QUARTER_PI > 1e-3, "{s}");
}

fn any_norm() -> impl Strategy<Value = PolygonalNorm> {
    (2usize..=10, any::<u64>()).prop_map(|(k, seed)| random_symmetric_polygon(k, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn golab_bounds(n in any_norm()) {
        let p = n.self_perimeter();
        prop_assert!(p >= int(6) && p <= int(8));
    }

    #[test]
    fn gauge_is_a_norm(n in any_norm(), u in prop::array::uniform2(-5.0f64..5.0), v in prop::array::uniform2(-5.0f64..5.0), t in -4.0f64..4.0) {
        let g = |x: [f64; 2]| n.gauge_f64(x);
        prop_assert!(g([u[0] + v[0], u[1] + v[1]]) <= g(u) + g(v) + 1e-9);
        prop_assert!((g([t * u[0], t * u[1]]) - t.abs() * g(u)).abs() <= 1e-9 * (1.0 + g(u)));
        prop_assert!((g(u) - g([-u[0], -u[1]])).abs() <= 1e-12 * (1.0 + g(u)));
    }

    #[test]
    fn vertices_lie_on_the_unit_sphere(n in any_norm()) {
        for v in n.vertices() {
            prop_assert_eq!(n.gauge(v), int(1));
        }
    }

    #[test]
    fn double_polar_is_identity(n in any_norm()) {
        let back = n.polar_dual().polar_dual();
        prop_assert_eq!(back.vertices(), n.vertices());
    }

    #[test]
    fn holmes_thompson_is_minimal(n in any_norm()) {
        let d = |mu| area_density(&n, mu).to_f64();
        let ht = d(AreaDefinition::HolmesThompson);
        prop_assert!(ht <= d(AreaDefinition::Hausdorff) + 1e-12);
        prop_assert!(ht <= d(AreaDefinition::MassStar) + 1e-12);
    }

    #[test]
    fn holmes_thompson_isoperimetrix_ratio(n in any_norm()) {
        let r = isoperimetric_ratio(&n, AreaDefinition::HolmesThompson).to_f64();
        prop_assert!((r - QUARTER_PI).abs() <= 1e-12);
        let m = isoperimetric_ratio(&n, AreaDefinition::MassStar).to_f64();
        prop_assert!(m >= QUARTER_PI - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jung_within_bohnenblust(n in any_norm()) {
        let j = jung_constant(&n, &JungConfig::default()).unwrap();
        prop_assert!(j.lo >= 1.0 - 1e-9 && j.hi <= 4.0 / 3.0 + 1e-9);
        prop_assert!(j.lo <= j.hi);
    }
}
