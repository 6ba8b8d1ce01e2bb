//! The acceptance matrix. Each criterion is recomputed from the library
//! APIs, cross-checked against the `verify` suite, and timed. Prints one
//! PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mfill_cli::fixtures::{circle_metric, sweep_norms};
use mfill_cli::run::{euclidean_circles, hyperbolic_circles};
use mfill_cli::verify::{criterion, CRITERIA};
use mfill_core::filling::{
    grid_square_loop, h_lambda_estimate, isoperimetric_profile, kuratowski_filling_radius, loop_through,
    min_filling_area, normed_patch, rips_filling_radius, tree_excursion_loop, FillMode, Loop, PatchGeometry,
    DEFAULT_TRIANGLE_CAP,
};
use mfill_core::finite_metric::{
    cayley_ball, four_point_delta, graph_metric, kuratowski_embed, slim_triangle_delta, Graph, GroupPresentation,
    DEFAULT_ELEMENT_CAP,
};
use mfill_core::normed_plane::{
    alpha_v, area_density, isoperimetric_ratio, jung_constant, AreaDefinition, JungConfig, PolygonalNorm,
};
use mfill_core::scalar::{int, ratio_to_f64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const QUARTER_PI: f64 = 0.25 / std::f64::consts::PI;

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn near(x: f64, y: f64, tol: f64, what: &str) -> Check {
    ensure((x - y).abs() <= tol, || format!("{what}: {x} vs {y} (tol {tol})"))
}

fn fixtures() -> Vec<PolygonalNorm> {
    vec![
        PolygonalNorm::square(),
        PolygonalNorm::affine_hexagon(),
        PolygonalNorm::regular(32).unwrap(),
    ]
}

fn sweep() -> Vec<PolygonalNorm> {
    sweep_norms(200, SEED).unwrap()
}

fn golab() -> Check {
    ensure(PolygonalNorm::square().self_perimeter() == int(8), || "square perimeter is not 8".into())?;
    ensure(PolygonalNorm::affine_hexagon().self_perimeter() == int(6), || "hexagon perimeter is not 6".into())?;
    for (i, n) in fixtures().iter().chain(&sweep()).enumerate() {
        let p = n.self_perimeter();
        ensure(p >= int(6) && p <= int(8), || format!("norm {i}: perimeter {}", ratio_to_f64(&p)))?;
    }
    Ok(())
}

fn jung_alpha() -> Check {
    let cfg = JungConfig::default();
    let sq = PolygonalNorm::square();
    let js = jung_constant(&sq, &cfg).map_err(|e| e.to_string())?;
    ensure(js.exact == Some(int(1)), || format!("J(square) = {}", js.lo))?;
    let je = jung_constant(&PolygonalNorm::regular(32).unwrap(), &cfg).map_err(|e| e.to_string())?;
    near(je.midpoint(), 2.0 / 3f64.sqrt(), 1e-2, "J(euclid64)")?;
    let hx = PolygonalNorm::affine_hexagon();
    let jh = jung_constant(&hx, &cfg).map_err(|e| e.to_string())?;
    near(jh.midpoint(), 4.0 / 3.0, 1e-2, "J(hexagon)")?;
    let a = alpha_v(&sq, &js);
    ensure(a.lo.exact.as_deref() == Some("1/8") && a.hi.exact.as_deref() == Some("1/8"), || {
        format!("alpha(square) in [{}, {}]", a.lo.decimal, a.hi.decimal)
    })?;
    let a = alpha_v(&hx, &jh);
    ensure(a.lo.decimal <= 0.125 + 1e-12 && 0.125 <= a.hi.decimal + 1e-12, || {
        format!("alpha(hexagon) in [{}, {}]", a.lo.decimal, a.hi.decimal)
    })?;
    let mut min_alpha = f64::INFINITY;
    for n in sweep() {
        let j = jung_constant(&n, &cfg).map_err(|e| e.to_string())?;
        ensure(j.lo >= 1.0 - 1e-9 && j.hi <= 4.0 / 3.0 + 1e-9, || format!("J outside [1, 4/3]: [{}, {}]", j.lo, j.hi))?;
        min_alpha = min_alpha.min(alpha_v(&n, &j).lo.decimal);
    }
    ensure(min_alpha >= 3.0 / 32.0 - 1e-3, || format!("sweep min alpha {min_alpha}"))
}

fn area_inequalities() -> Check {
    for (i, n) in fixtures().iter().chain(&sweep()).enumerate() {
        let d = |mu| area_density(n, mu).to_f64();
        let (ht, b, m) = (
            d(AreaDefinition::HolmesThompson),
            d(AreaDefinition::Hausdorff),
            d(AreaDefinition::MassStar),
        );
        ensure(ht <= b + 1e-12 && ht <= m + 1e-12, || format!("norm {i}: ht {ht}, b {b}, m* {m}"))?;
    }
    Ok(())
}

fn isoperimetrix() -> Check {
    let mut all = fixtures();
    all.push(PolygonalNorm::diamond());
    for n in &all {
        near(isoperimetric_ratio(n, AreaDefinition::HolmesThompson).to_f64(), QUARTER_PI, 1e-12, "ht ratio")?;
        let m = isoperimetric_ratio(n, AreaDefinition::MassStar).to_f64();
        ensure(m >= QUARTER_PI - 1e-12, || format!("m* ratio {m} below 1/(4 pi)"))?;
    }
    let sq = isoperimetric_ratio(&PolygonalNorm::square(), AreaDefinition::MassStar).to_f64();
    ensure(sq - QUARTER_PI > 1e-3, || format!("square m* excess {}", sq - QUARTER_PI))?;
    let e = isoperimetric_ratio(&PolygonalNorm::regular(32).unwrap(), AreaDefinition::MassStar).to_f64();
    near(e, QUARTER_PI, 1e-3, "euclid64 m* ratio")
}

fn katz() -> Check {
    let m = circle_metric(60).unwrap();
    let l = Loop::new((0..60).collect()).unwrap();
    let rips = rips_filling_radius(&m, &l).map_err(|e| e.to_string())?;
    let direct = kuratowski_filling_radius(&m, &l).map_err(|e| e.to_string())?;
    near(rips, 3f64.sqrt() / 2.0, 0.05, "rips filling radius")?;
    near(direct, rips, 0.05, "kuratowski vs rips")
}

fn profile() -> Check {
    let (patch, loops) = euclidean_circles(0.5, 4, 12, DEFAULT_TRIANGLE_CAP).map_err(|e| e.to_string())?;
    let pe = isoperimetric_profile(&patch.complex, &loops).map_err(|e| e.to_string())?;
    ensure((pe.fitted - QUARTER_PI).abs() <= 0.15 * QUARTER_PI, || format!("euclidean fit {}", pe.fitted))?;
    let (ball, hl) = hyperbolic_circles(6, DEFAULT_TRIANGLE_CAP).map_err(|e| e.to_string())?;
    let ph = isoperimetric_profile(&ball.complex, &hl).map_err(|e| e.to_string())?;
    let r: Vec<f64> = ph.rows.iter().map(|row| row.ratio).collect();
    ensure(r.len() >= 2 && r.windows(2).all(|w| w[1] < w[0]), || format!("hyperbolic ratios {r:?}"))?;
    let last = *r.last().unwrap();
    ensure(last < pe.fitted / 2.0, || format!("final hyperbolic ratio {last} vs fit {}", pe.fitted))
}

fn h_lambda() -> Check {
    let lambda = 8.0;
    let mut tree = Vec::new();
    for r in [8usize, 16, 32] {
        let g = Graph::grid(r + 1, r + 1);
        let e = h_lambda_estimate(&g, &grid_square_loop(r + 1, 0, 0, r), lambda, r as f64, 20).map_err(|e| e.to_string())?;
        ensure(e.value >= 0.4 && e.value <= lambda.powi(4), || format!("grid r={r}: {}", e.value))?;
        let depth = r.min(12);
        let t = Graph::binary_tree(depth);
        let e = h_lambda_estimate(&t, &tree_excursion_loop(depth), lambda, r as f64, 20).map_err(|e| e.to_string())?;
        ensure(e.value <= 0.05, || format!("tree r={r}: {}", e.value))?;
        tree.push(e.value);
    }
    ensure(tree.windows(2).all(|w| w[1] <= w[0]), || format!("tree values {tree:?}"))
}

fn hyperbolicity() -> Check {
    let d = four_point_delta(&graph_metric(&Graph::binary_tree(5)).unwrap());
    ensure(d == 0.0, || format!("tree delta {d}"))?;
    let s = slim_triangle_delta(&Graph::cycle(6).unwrap(), usize::MAX).map_err(|e| e.to_string())?;
    ensure(s == 1.0, || format!("C6 slim constant {s}"))?;
    let grids: Vec<f64> = (3..=8)
        .map(|n| four_point_delta(&graph_metric(&Graph::grid(n, n)).unwrap()))
        .collect();
    ensure(grids.windows(2).all(|w| w[1] > w[0]), || format!("grid deltas {grids:?}"))
}

fn structural() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xacce);
    for _ in 0..20 {
        let mut edges = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                edges.push((i, j, rng.gen_range(1..=9) as f64));
            }
        }
        let g = Graph::new((0..8).map(|i| format!("p{i}")).collect(), edges).unwrap();
        let m = graph_metric(&g).unwrap();
        let e = kuratowski_embed(&m, &m.labels()[3]).map_err(|e| e.to_string())?;
        for i in 0..8 {
            for j in 0..8 {
                ensure(e.sup_distance(i, j) == m.d(i, j), || format!("kuratowski distorts ({i}, {j})"))?;
            }
        }
    }
    let patch = normed_patch(&PatchGeometry::Euclidean, 6.0, 1.0, DEFAULT_TRIANGLE_CAP).map_err(|e| e.to_string())?;
    patch.complex.check_boundary_squared().map_err(|e| e.to_string())?;
    let nv = patch.complex.n_vertices();
    let mut cycles = 0;
    while cycles < 50 {
        let way: Vec<usize> = (0..4).map(|_| rng.gen_range(0..nv)).collect();
        let z = loop_through(&patch.complex, &way).and_then(|l| l.chain(&patch.complex)).map_err(|e| e.to_string())?;
        if z.is_zero() {
            continue;
        }
        cycles += 1;
        let f = min_filling_area(&patch.complex, &z, FillMode::Relaxed).map_err(|e| e.to_string())?;
        ensure(f.gap <= 1e-9 && f.dual_violation <= 1e-9, || format!("certificate gap {}", f.gap))?;
        let f2 = min_filling_area(&patch.complex, &z.scaled(&int(-2)), FillMode::Relaxed).map_err(|e| e.to_string())?;
        ensure(
            matches!((&f.exact_area, &f2.exact_area), (Some(a), Some(b)) if *b == a * int(2)),
            || "fill(-2z) != 2 fill(z)".into(),
        )?;
    }
    let z2 = GroupPresentation::new(&["a", "b"], &["abAB"]).unwrap();
    let f2 = GroupPresentation::new(&["a", "b"], &[]).unwrap();
    let n = cayley_ball(&z2, 3, DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?.len();
    ensure(n == 25, || format!("Z^2 ball of radius 3 has {n} elements"))?;
    let n = cayley_ball(&f2, 2, DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?.len();
    ensure(n == 17, || format!("F_2 ball of radius 2 has {n} elements"))
}

fn determinism() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_mfill"))
            .args(["verify", "all", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || format!("verify all exited with {}", a.status))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "reports differ between runs".into())
}

fn suite_verdicts(c: usize) -> Check {
    let (vs, _) = criterion(c, SEED, 1.0).map_err(|e| e.to_string())?;
    let failed: Vec<String> = vs.iter().filter(|v| !v.passed()).map(|v| format!("{} = {}", v.id, v.measured)).collect();
    ensure(failed.is_empty(), || format!("verify verdicts failed: {}", failed.join(", ")))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [(fn() -> Check, Duration); 10] = [
        (golab, secs(10)),
        (jung_alpha, secs(120)),
        (area_inequalities, secs(120)),
        (isoperimetrix, secs(60)),
        (katz, secs(60)),
        (profile, secs(300)),
        (h_lambda, secs(300)),
        (hyperbolicity, secs(30)),
        (structural, secs(120)),
        (determinism, secs(600)),
    ];
    let mut failures = 0;
    for (i, (check, budget)) in criteria.iter().enumerate() {
        let c = i + 1;
        let start = Instant::now();
        let mut outcome = check();
        if outcome.is_ok() && c <= 9 {
            outcome = suite_verdicts(c);
        }
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *budget {
            outcome = Err(format!("took {elapsed:.1?}, budget {budget:?}"));
        }
        let line = format!("criterion {c:>2} {:<30} {:>8.2?}", CRITERIA[i], elapsed);
        match outcome {
            Ok(()) => println!("PASS  {line}"),
            Err(e) => {
                failures += 1;
                println!("FAIL  {line}  {e}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
