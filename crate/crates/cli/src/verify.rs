//! The verification suite: every acceptance criterion as a list of named
//! verdicts.

use mfill_core::filling::{
    grid_square_loop, h_lambda_estimate, isoperimetric_profile, kuratowski_complex,
    kuratowski_filling_radius_capped, loop_through, min_filling_area, normed_patch,
    rips_filling_radius_capped, tree_excursion_loop, FillMode, Loop, PatchGeometry,
    DEFAULT_RADIUS_TRIANGLE_CAP, DEFAULT_TRIANGLE_CAP,
};
use mfill_core::finite_metric::{
    cayley_ball, four_point_delta, graph_metric, kuratowski_embed, slim_triangle_delta,
    tight_span, FiniteMetricSpace, Graph, DEFAULT_ELEMENT_CAP,
};
use mfill_core::normed_plane::{
    alpha_v, area_density, isoperimetric_ratio, jung_constant, AreaDefinition, JungConfig,
    PolygonalNorm,
};
use mfill_core::scalar::int;
use mfill_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::Suite;
use crate::fixtures::{cap, circle_metric, load_presentation, sweep_norms};
use crate::report::{fmt, Verdict};
use crate::run::{euclidean_circles, golab_verdict, ht_minimal_verdicts, hyperbolic_circles, tripod_legs, FLOAT_SLACK, ISOPERIMETRIC};

pub const SWEEP_COUNT: usize = 200;

/// Per-norm invariants of a sweep.
struct SweepRow {
    perimeter: f64,
    jung_lo: f64,
    jung_hi: f64,
    alpha_lo: f64,
    ht: f64,
    b: f64,
    mstar: f64,
    golab: bool,
}

fn sweep_rows(count: usize, seed: u64) -> Result<Vec<SweepRow>> {
    let cfg = JungConfig::default();
    sweep_norms(count, seed)?
        .iter()
        .map(|n| {
            let j = jung_constant(n, &cfg)?;
            let p = n.self_perimeter();
            let d = |mu| area_density(n, mu).to_f64();
            Ok(SweepRow {
                perimeter: mfill_core::scalar::ratio_to_f64(&p),
                jung_lo: j.lo,
                jung_hi: j.hi,
                alpha_lo: alpha_v(n, &j).lo.decimal,
                ht: d(AreaDefinition::HolmesThompson),
                b: d(AreaDefinition::Hausdorff),
                mstar: d(AreaDefinition::MassStar),
                golab: p >= int(6) && p <= int(8),
            })
        })
        .collect()
}

fn min_max(v: impl Iterator<Item = f64> + Clone) -> Value {
    json!({
        "min": v.clone().fold(f64::INFINITY, f64::min),
        "max": v.fold(f64::NEG_INFINITY, f64::max),
    })
}

struct SweepSummary {
    result: Value,
    golab: Verdict,
    bohnenblust: Verdict,
    alpha: Verdict,
    ht_le_b: Verdict,
    ht_le_mstar: Verdict,
}

fn summarize(rows: &[SweepRow], count: usize, seed: u64, scale: f64) -> SweepSummary {
    let slack = FLOAT_SLACK * scale;
    let alpha_tol = 1e-3 * scale;
    let count_of = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let golab = count_of(&|r| !r.golab);
    let bohn = count_of(&|r| r.jung_lo < 1.0 - 1e-9 || r.jung_hi > 4.0 / 3.0 + 1e-9);
    let ht_b = count_of(&|r| r.ht > r.b + slack);
    let ht_m = count_of(&|r| r.ht > r.mstar + slack);
    let min_alpha = rows.iter().map(|r| r.alpha_lo).fold(f64::INFINITY, f64::min);
    let result = json!({
        "count": count,
        "seed": seed,
        "self_perimeter": min_max(rows.iter().map(|r| r.perimeter)),
        "jung": min_max(rows.iter().flat_map(|r| [r.jung_lo, r.jung_hi])),
        "alpha_v": min_max(rows.iter().map(|r| r.alpha_lo)),
        "ht_over_b": min_max(rows.iter().map(|r| r.ht / r.b)),
        "ht_over_mstar": min_max(rows.iter().map(|r| r.ht / r.mstar)),
        "violations": {
            "golab": golab,
            "bohnenblust": bohn,
            "ht_le_b": ht_b,
            "ht_le_mstar": ht_m,
        },
    });
    let zero = |id: &str, inv: &str, n: usize| Verdict::new(id, inv, n == 0, format!("{n} violations"), "0 violations");
    SweepSummary {
        result,
        golab: zero("sweep.golab", "golab: 6 <= self_perimeter <= 8", golab),
        bohnenblust: zero("sweep.bohnenblust", "jung: 1 <= J <= 4/3", bohn),
        alpha: Verdict::new(
            "sweep.alpha_min",
            "alpha: empirical minimum >= 3/32",
            min_alpha >= 3.0 / 32.0 - alpha_tol,
            fmt(min_alpha),
            ">= 3/32",
        )
        .with_tolerance(alpha_tol),
        ht_le_b: zero("sweep.ht_le_b", "area: mu_ht <= mu_b", ht_b).with_tolerance(slack),
        ht_le_mstar: zero("sweep.ht_le_mstar", "area: mu_ht <= mu_m*", ht_m).with_tolerance(slack),
    }
}

/// `norm sweep`: invariants of `count` seeded random norms.
pub fn sweep(count: usize, seed: u64, scale: f64) -> Result<(Value, Vec<Verdict>)> {
    let s = summarize(&sweep_rows(count, seed)?, count, seed, scale);
    Ok((s.result, vec![s.golab, s.bohnenblust, s.alpha, s.ht_le_b, s.ht_le_mstar]))
}

fn fixtures() -> Result<Vec<(&'static str, PolygonalNorm)>> {
    Ok(vec![
        ("square", PolygonalNorm::square()),
        ("hexagon", PolygonalNorm::affine_hexagon()),
        ("euclid64", PolygonalNorm::regular(32)?),
    ])
}

fn c1(sweep: &SweepSummary) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for (name, n) in fixtures()? {
        v.push(golab_verdict(&format!("golab.{name}"), &n));
    }
    let p = |n: &PolygonalNorm| n.self_perimeter();
    v.push(Verdict::new("golab.square_exact", "golab: square attains 8", p(&PolygonalNorm::square()) == int(8), crate::report::fmt_rational(&p(&PolygonalNorm::square())), "8"));
    v.push(Verdict::new("golab.hexagon_exact", "golab: hexagon attains 6", p(&PolygonalNorm::affine_hexagon()) == int(6), crate::report::fmt_rational(&p(&PolygonalNorm::affine_hexagon())), "6"));
    v.push(sweep.golab.clone());
    Ok(v)
}

fn c2(sweep: &SweepSummary, scale: f64) -> Result<Vec<Verdict>> {
    let cfg = JungConfig::default();
    let tol = 1e-2 * scale;
    let mut v = Vec::new();
    let sq = PolygonalNorm::square();
    let js = jung_constant(&sq, &cfg)?;
    v.push(Verdict::new("jung.square", "jung: J(square) = 1 exactly", js.exact == Some(int(1)), fmt(js.lo), "1"));
    let e = PolygonalNorm::regular(32)?;
    let je = jung_constant(&e, &cfg)?;
    v.push(Verdict::within("jung.euclid64", "jung: J(euclid) = 2/sqrt 3", je.midpoint(), 2.0 / 3f64.sqrt(), tol));
    let hx = PolygonalNorm::affine_hexagon();
    let jh = jung_constant(&hx, &cfg)?;
    v.push(Verdict::within("jung.hexagon", "jung: J(hexagon) = 4/3", jh.midpoint(), 4.0 / 3.0, tol));
    let a_sq = alpha_v(&sq, &js);
    v.push(Verdict::new(
        "alpha.square",
        "alpha: alpha_V(square) = 1/8",
        a_sq.lo.exact.as_deref() == Some("1/8") && a_sq.hi.exact.as_deref() == Some("1/8"),
        format!("[{}, {}]", fmt(a_sq.lo.decimal), fmt(a_sq.hi.decimal)),
        "1/8",
    ));
    let a_hx = alpha_v(&hx, &jh);
    v.push(
        Verdict::new(
            "alpha.hexagon",
            "alpha: alpha_V(hexagon) = 1/8 within its enclosure",
            a_hx.lo.decimal - FLOAT_SLACK <= 0.125 && 0.125 <= a_hx.hi.decimal + FLOAT_SLACK,
            format!("[{}, {}]", fmt(a_hx.lo.decimal), fmt(a_hx.hi.decimal)),
            "1/8",
        )
        .with_tolerance(FLOAT_SLACK),
    );
    v.push(sweep.bohnenblust.clone());
    v.push(sweep.alpha.clone());
    Ok(v)
}

fn c3(sweep: &SweepSummary, scale: f64) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for (name, n) in fixtures()? {
        v.extend(ht_minimal_verdicts(&format!("area.{name}"), &n, FLOAT_SLACK * scale));
    }
    v.push(sweep.ht_le_b.clone());
    v.push(sweep.ht_le_mstar.clone());
    Ok(v)
}

fn c4(scale: f64) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    let mut all = fixtures()?;
    all.push(("diamond", PolygonalNorm::diamond()));
    for (name, n) in &all {
        let ht = isoperimetric_ratio(n, AreaDefinition::HolmesThompson).to_f64();
        v.push(Verdict::within(
            &format!("isoperimetrix.{name}.ht"),
            "isoperimetrix: mu_ht ratio equals 1/(4 pi)",
            ht,
            ISOPERIMETRIC,
            FLOAT_SLACK * scale,
        ));
    }
    let ms = |n: &PolygonalNorm| isoperimetric_ratio(n, AreaDefinition::MassStar).to_f64();
    let sq = ms(&PolygonalNorm::square());
    v.push(
        Verdict::new(
            "isoperimetrix.square.mstar_excess",
            "isoperimetrix: mu_m* ratio strictly above 1/(4 pi) off the Euclidean plane",
            sq - ISOPERIMETRIC > 1e-3,
            fmt(sq - ISOPERIMETRIC),
            "> 1e-3",
        ),
    );
    let e = ms(&PolygonalNorm::regular(32)?);
    v.push(Verdict::within(
        "isoperimetrix.euclid64.mstar",
        "isoperimetrix: mu_m* ratio tends to 1/(4 pi) for Euclidean norms",
        e,
        ISOPERIMETRIC,
        1e-3 * scale,
    ));
    Ok(v)
}

fn c5(scale: f64) -> Result<Vec<Verdict>> {
    let m = circle_metric(60)?;
    let l = Loop::new((0..60).collect())?;
    let cap = cap(DEFAULT_RADIUS_TRIANGLE_CAP);
    let rips = rips_filling_radius_capped(&m, &l, cap)?;
    let direct = kuratowski_filling_radius_capped(&m, &l, cap)?;
    let tol = 0.05 * scale;
    let katz = 3f64.sqrt() / 2.0;
    Ok(vec![
        Verdict::within("katz.rips", "filling radius: Katz value sqrt 3 / 2 for the circle in L-infinity", rips, katz, tol),
        Verdict::within("katz.cross_route", "filling radius: Rips and Kuratowski routes agree", direct, rips, tol),
    ])
}

fn c6(scale: f64) -> Result<(Vec<Verdict>, Value)> {
    let cap = cap(DEFAULT_TRIANGLE_CAP);
    let (patch, loops) = euclidean_circles(0.5, 4, 12, cap)?;
    let pe = isoperimetric_profile(&patch.complex, &loops)?;
    let (ball, hl) = hyperbolic_circles(6, cap)?;
    let ph = isoperimetric_profile(&ball.complex, &hl)?;
    let tol = 0.15 * scale;
    let rel = (pe.fitted - ISOPERIMETRIC).abs() / ISOPERIMETRIC;
    let ratios: Vec<f64> = ph.rows.iter().map(|r| r.ratio).collect();
    let last = *ratios.last().expect("six hyperbolic loops");
    let gaps = pe.rows.iter().chain(&ph.rows).map(|r| r.certificate_gap).fold(0.0, f64::max);
    let summary = json!({
        "euclidean_fit": pe.fitted,
        "euclidean_relative_error": rel,
        "hyperbolic_ratios": ratios,
    });
    Ok((
        vec![
            Verdict::new("profile.euclid", "profile: fitted constant near 1/(4 pi)", rel <= tol, fmt(pe.fitted), fmt(ISOPERIMETRIC))
                .with_tolerance(tol),
            Verdict::new(
                "profile.hyperbolic_decreasing",
                "profile: hyperbolic ratios strictly decrease",
                ratios.windows(2).all(|w| w[1] < w[0]),
                format!("{ratios:?}"),
                "strictly decreasing",
            ),
            Verdict::new(
                "profile.hyperbolic_final",
                "profile: final hyperbolic ratio below half the Euclidean fit",
                last < pe.fitted / 2.0,
                fmt(last),
                format!("< {}", fmt(pe.fitted / 2.0)),
            ),
            Verdict::new("profile.certificates", "filling: dual certificate matches primal", gaps <= 1e-9, fmt(gaps), "0")
                .with_tolerance(1e-9),
        ],
        summary,
    ))
}

pub const HLAMBDA_LAMBDA: f64 = 8.0;
pub const HLAMBDA_RADII: [usize; 3] = [8, 16, 32];
pub const TREE_DEPTH_CAP: usize = 12;

fn c7() -> Result<(Vec<Verdict>, Value)> {
    let lambda = HLAMBDA_LAMBDA;
    let cap = lambda.powi(4);
    let mut v = Vec::new();
    let (mut grid_vals, mut tree_vals) = (Vec::new(), Vec::new());
    for r in HLAMBDA_RADII {
        let g = Graph::grid(r + 1, r + 1);
        let l = grid_square_loop(r + 1, 0, 0, r);
        let e = h_lambda_estimate(&g, &l, lambda, r as f64, 20)?;
        v.push(Verdict::new(&format!("hlambda.grid.r{r}"), "h_lambda: grid loops stay bounded away from 0", e.value >= 0.4, fmt(e.value), ">= 0.4"));
        v.push(Verdict::new(&format!("hlambda.grid.r{r}.cap"), "h_lambda: value <= lambda^4", e.value <= cap * (1.0 + 1e-9), fmt(e.value), format!("<= {cap}")));
        grid_vals.push(e.value);
        let depth = r.min(TREE_DEPTH_CAP);
        let t = Graph::binary_tree(depth);
        let e = h_lambda_estimate(&t, &tree_excursion_loop(depth), lambda, r as f64, 20)?;
        v.push(Verdict::new(&format!("hlambda.tree.r{r}"), "h_lambda: tree loops vanish", e.value <= 0.05, fmt(e.value), "<= 0.05"));
        v.push(Verdict::new(&format!("hlambda.tree.r{r}.cap"), "h_lambda: value <= lambda^4", e.value <= cap * (1.0 + 1e-9), fmt(e.value), format!("<= {cap}")));
        tree_vals.push(e.value);
    }
    v.push(Verdict::new(
        "hlambda.tree.non_increasing",
        "h_lambda: tree values non-increasing in r",
        tree_vals.windows(2).all(|w| w[1] <= w[0]),
        format!("{tree_vals:?}"),
        "non-increasing",
    ));
    Ok((v, json!({ "grid": grid_vals, "tree": tree_vals })))
}

fn c8() -> Result<(Vec<Verdict>, Value)> {
    let mut v = Vec::new();
    let tree = graph_metric(&Graph::binary_tree(5))?;
    let dt = four_point_delta(&tree);
    v.push(Verdict::new("delta.tree", "hyperbolicity: trees are 0-hyperbolic", dt == 0.0, fmt(dt), "0"));
    let c6 = slim_triangle_delta(&Graph::cycle(6)?, usize::MAX)?;
    v.push(Verdict::new("delta.c6_slim", "hyperbolicity: slim constant of the 6-cycle", c6 == 1.0, fmt(c6), "1"));
    let grids = (3..=8)
        .map(|n| graph_metric(&Graph::grid(n, n)).map(|m| four_point_delta(&m)))
        .collect::<Result<Vec<_>>>()?;
    v.push(Verdict::new(
        "delta.grids_increasing",
        "hyperbolicity: grid delta grows with n",
        grids.windows(2).all(|w| w[1] > w[0]),
        format!("{grids:?}"),
        "strictly increasing for n = 3..8",
    ));
    Ok((v, json!({ "grid_deltas": grids })))
}

fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> Result<FiniteMetricSpace> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, rng.gen_range(1..=9) as f64));
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    graph_metric(&Graph::new(labels, edges)?)
}

fn c9(seed: u64, scale: f64) -> Result<Vec<Verdict>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = Vec::new();

    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let m = random_metric(&mut rng, 8)?;
        let e = kuratowski_embed(&m, &m.labels()[0])?;
        for i in 0..8 {
            for j in 0..8 {
                worst = worst.max((e.sup_distance(i, j) - m.d(i, j)).abs());
            }
        }
    }
    v.push(Verdict::new("structure.kuratowski", "kuratowski: isometric on 20 random 8-point metrics", worst == 0.0, fmt(worst), "0"));

    let mut worst: f64 = 0.0;
    let mut triples = vec![[3.0, 4.0, 5.0]];
    while triples.len() < 6 {
        let (a, b, c): (i32, i32, i32) = (rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=8));
        if a + b > c && b + c > a && a + c > b {
            triples.push([a as f64, b as f64, c as f64]);
        }
    }
    for [ab, ac, bc] in triples {
        let m = FiniteMetricSpace::from_matrix(vec![vec![0.0, ab, ac], vec![ab, 0.0, bc], vec![ac, bc, 0.0]])?;
        let ts = tight_span(&m, 0.5)?;
        let (legs, formula) = tripod_legs(&m, &ts.functions);
        worst = worst.max(legs.iter().zip(&formula).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    v.push(Verdict::new("structure.tripod", "tight span: tripod legs match (d_ab + d_ac - d_bc)/2", worst == 0.0, fmt(worst), "0"));

    let patch = normed_patch(&PatchGeometry::Euclidean, 6.0, 1.0, DEFAULT_TRIANGLE_CAP)?;
    let nv = patch.complex.n_vertices();
    let (mut gap, mut homogeneous, mut cycles) = (0.0f64, true, 0);
    while cycles < 50 {
        let k = rng.gen_range(3..=5);
        let way: Vec<usize> = (0..k).map(|_| rng.gen_range(0..nv)).collect();
        let l = loop_through(&patch.complex, &way)?;
        let z = l.chain(&patch.complex)?;
        if z.is_zero() {
            continue;
        }
        cycles += 1;
        let f = min_filling_area(&patch.complex, &z, FillMode::Relaxed)?;
        gap = gap.max(f.gap).max(f.dual_violation);
        let f2 = min_filling_area(&patch.complex, &z.scaled(&int(-2)), FillMode::Relaxed)?;
        homogeneous &= match (&f.exact_area, &f2.exact_area) {
            (Some(a), Some(b)) => *b == a * int(2),
            _ => false,
        };
    }
    v.push(
        Verdict::new("structure.lp_duality", "filling: dual certificate matches primal on 50 random cycles", gap <= 1e-9 * scale, fmt(gap), "0")
            .with_tolerance(1e-9 * scale),
    );
    v.push(Verdict::new(
        "structure.homogeneity",
        "filling: fill(-2 z) = 2 fill(z) exactly",
        homogeneous,
        if homogeneous { "exact" } else { "mismatch" },
        "exact",
    ));

    let hexagon = PatchGeometry::Normed {
        norm: PolygonalNorm::affine_hexagon(),
        mu: AreaDefinition::HolmesThompson,
    };
    let complexes = [
        ("euclidean_patch", patch.complex.clone()),
        ("hexagon_patch", normed_patch(&hexagon, 4.0, 0.5, DEFAULT_TRIANGLE_CAP)?.complex),
        ("hyperbolic_ball", hyperbolic_circles(4, DEFAULT_TRIANGLE_CAP)?.0.complex),
        ("kuratowski_complex", kuratowski_complex(&circle_metric(10)?)?.complex),
    ];
    for (name, k) in complexes {
        let ok = k.check_boundary_squared().is_ok();
        v.push(Verdict::new(&format!("structure.boundary_squared.{name}"), "chains: boundary of boundary is 0", ok, if ok { "0" } else { "nonzero" }, "0"));
    }

    for (spec, r, expected) in [("z2", 3, 25), ("f2", 2, 17)] {
        let (p, _) = load_presentation(spec)?;
        let n = cayley_ball(&p, r, DEFAULT_ELEMENT_CAP)?.len();
        v.push(Verdict::new(&format!("structure.cayley.{spec}.r{r}"), "cayley: ball sizes", n == expected, n, expected));
    }
    Ok(v)
}

fn prefixed(c: usize, vs: Vec<Verdict>) -> Vec<Verdict> {
    vs.into_iter()
        .map(|mut v| {
            v.id = format!("c{c}.{}", v.id);
            v
        })
        .collect()
}

pub const CRITERIA: [&str; 10] = [
    "golab bounds",
    "jung and alpha constants",
    "area-definition inequalities",
    "isoperimetrix",
    "katz filling radius",
    "sharp constant profile",
    "h_lambda dichotomy",
    "hyperbolicity calculators",
    "structural suites",
    "determinism",
];

/// Runs one criterion, `1..=9`. Criterion 10 compares repeated runs and
/// lives in [`run_suite`].
pub fn criterion(c: usize, seed: u64, scale: f64) -> Result<(Vec<Verdict>, Value)> {
    let sweep = || -> Result<SweepSummary> { Ok(summarize(&sweep_rows(SWEEP_COUNT, seed)?, SWEEP_COUNT, seed, scale)) };
    Ok(match c {
        1 => (c1(&sweep()?)?, Value::Null),
        2 => (c2(&sweep()?, scale)?, Value::Null),
        3 => (c3(&sweep()?, scale)?, Value::Null),
        4 => (c4(scale)?, Value::Null),
        5 => (c5(scale)?, Value::Null),
        6 => c6(scale)?,
        7 => c7()?,
        8 => c8()?,
        9 => (c9(seed, scale)?, Value::Null),
        _ => return Err(Error::InvalidInput(format!("no criterion {c}"))),
    })
}

pub fn run_suite(suite: Suite, seed: u64, scale: f64) -> Result<(Value, Vec<Verdict>)> {
    let last = match suite {
        Suite::Constants => 7,
        Suite::All => 9,
    };
    let sweep = summarize(&sweep_rows(SWEEP_COUNT, seed)?, SWEEP_COUNT, seed, scale);
    let mut verdicts = Vec::new();
    let mut rows = Vec::new();
    let mut details = serde_json::Map::new();
    for c in 1..=last {
        let (vs, detail) = match c {
            1 => (c1(&sweep)?, Value::Null),
            2 => (c2(&sweep, scale)?, Value::Null),
            3 => (c3(&sweep, scale)?, Value::Null),
            _ => criterion(c, seed, scale)?,
        };
        if !detail.is_null() {
            details.insert(format!("c{c}"), detail);
        }
        rows.push(criterion_row(c, &vs));
        verdicts.extend(prefixed(c, vs));
    }
    if suite == Suite::All {
        let render = || -> Result<String> {
            let mut s = String::new();
            for c in [4, 8] {
                s += &serde_json::to_string(&criterion(c, seed, scale)?.0)?;
            }
            Ok(s)
        };
        let same = render()? == render()?;
        let vs = vec![Verdict::new(
            "determinism.repeat",
            "determinism: repeated runs serialize identically",
            same,
            if same { "identical" } else { "different" },
            "identical",
        )];
        rows.push(criterion_row(10, &vs));
        verdicts.extend(prefixed(10, vs));
    }
    let result = json!({
        "criteria": rows,
        "sweep": sweep.result,
        "details": details,
    });
    Ok((result, verdicts))
}

fn criterion_row(c: usize, vs: &[Verdict]) -> Value {
    let failed = vs.iter().filter(|v| !v.passed()).count();
    json!({
        "criterion": c,
        "name": CRITERIA[c - 1],
        "status": if failed == 0 { "PASS" } else { "FAIL" },
        "verdicts": vs.len(),
        "failed": failed,
    })
}

