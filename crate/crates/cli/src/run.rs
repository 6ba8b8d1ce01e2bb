//! Command dispatch: each command produces a [`Report`].

use std::path::{Path, PathBuf};

use mfill_core::filling::{
    ball_boundary_loop, chain_to_json, discrete_circle, filling_radius, h_lambda_estimate,
    hyperbolic_ball, isoperimetric_profile, kuratowski_filling_radius_capped, min_filling_area,
    normed_patch, rips_filling_radius_capped, semi_ellipticity_check, stokes_sum, FillMode, Loop,
    PatchGeometry, Profile, Trend, DEFAULT_RADIUS_TRIANGLE_CAP, DEFAULT_SEMIELL_TOLERANCE,
    DEFAULT_TRIANGLE_CAP,
};
use mfill_core::finite_metric::{
    cayley_ball, four_point_delta, graph_metric, kuratowski_embed, slim_triangle_delta,
    tight_span_capped, delta_thickening, DEFAULT_ELEMENT_CAP,
};
use mfill_core::finite_metric::tight_span::{TIGHT_SPAN_MAX_POINTS, TIGHT_SPAN_MAX_SAMPLES};
use mfill_core::normed_plane::io::{points_to_json, polygon_to_json};
use mfill_core::normed_plane::report::jung_enclosure;
use mfill_core::normed_plane::{
    alpha_v, area_density, isoperimetric_ratio, isoperimetrix, jung_constant, AreaDefinition,
    JungConfig, PolygonalNorm, Value as Num,
};
use mfill_core::scalar::{int, render_rational};
use mfill_core::{Error, Result};
use serde_json::{json, Value};

use crate::args::{Cli, Command, Common, FillCmd, MetricCmd, NormCmd};
use crate::fixtures::{self, MetricInput};
use crate::report::{fmt, fmt_rational, InputDigest, Report, Verdict, TOOLKIT, VERSION};
use crate::svg::series_plot;
use crate::verify;

/// `1/(4π)`, the Euclidean isoperimetric constant.
pub const ISOPERIMETRIC: f64 = 1.0 / (4.0 * std::f64::consts::PI);

/// Slack for comparisons that hold exactly in theory and are evaluated in
/// floating point.
pub const FLOAT_SLACK: f64 = 1e-12;

struct Outcome {
    command: String,
    config: Value,
    inputs: Vec<InputDigest>,
    result: Value,
    verdicts: Vec<Verdict>,
}

fn base_config(c: &Common) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("tolerance_scale".into(), json!(c.tolerance_scale));
    m
}

pub fn run(cli: &Cli) -> Result<Report> {
    if !(cli.common.tolerance_scale > 0.0 && cli.common.tolerance_scale.is_finite()) {
        return Err(Error::InvalidInput("--tolerance-scale must be positive".into()));
    }
    let o = match &cli.command {
        Command::Norm(c) => norm(c, &cli.common)?,
        Command::Metric(c) => metric(c, &cli.common)?,
        Command::Fill(c) => fill(c, &cli.common)?,
        Command::Verify { suite } => {
            let mut config = base_config(&cli.common);
            config.insert("seed".into(), json!(cli.common.seed));
            let (result, verdicts) = verify::run_suite(*suite, cli.common.seed, cli.common.tolerance_scale)?;
            Outcome {
                command: format!("verify {}", suite_name(*suite)),
                config: Value::Object(config),
                inputs: Vec::new(),
                result,
                verdicts,
            }
        }
    };
    Ok(Report {
        toolkit: TOOLKIT,
        version: VERSION,
        command: o.command,
        config: o.config,
        inputs: o.inputs,
        result: o.result,
        verdicts: o.verdicts,
    })
}

fn suite_name(s: crate::args::Suite) -> &'static str {
    match s {
        crate::args::Suite::Constants => "constants",
        crate::args::Suite::All => "all",
    }
}

fn mu_json(mu: AreaDefinition) -> Value {
    json!(mu.tag())
}

/// Gołąb's bounds on the self-perimeter, checked in exact arithmetic.
pub fn golab_verdict(id: &str, norm: &PolygonalNorm) -> Verdict {
    let p = norm.self_perimeter();
    Verdict::new(
        id,
        "golab: 6 <= self_perimeter <= 8",
        p >= int(6) && p <= int(8),
        fmt_rational(&p),
        "[6, 8]",
    )
}

/// `μ^ht ≤ μ^b` and `μ^ht ≤ μ^m*` densities.
pub fn ht_minimal_verdicts(id: &str, norm: &PolygonalNorm, slack: f64) -> [Verdict; 2] {
    let d = |mu| area_density(norm, mu).to_f64();
    let (ht, b, ms) = (
        d(AreaDefinition::HolmesThompson),
        d(AreaDefinition::Hausdorff),
        d(AreaDefinition::MassStar),
    );
    [
        Verdict::new(&format!("{id}.ht_le_b"), "area: mu_ht <= mu_b", ht <= b + slack, fmt(ht), format!("<= {}", fmt(b)))
            .with_tolerance(slack),
        Verdict::new(&format!("{id}.ht_le_mstar"), "area: mu_ht <= mu_m*", ht <= ms + slack, fmt(ht), format!("<= {}", fmt(ms)))
            .with_tolerance(slack),
    ]
}

fn norm(c: &NormCmd, common: &Common) -> Result<Outcome> {
    let mut config = base_config(common);
    let scale = common.tolerance_scale;
    let (name, input) = match c {
        NormCmd::Perimeter(i) => ("perimeter", Some(i)),
        NormCmd::Dual(i) => ("dual", Some(i)),
        NormCmd::Density(i) => ("density", Some(i)),
        NormCmd::Isoperimetrix(i) => ("isoperimetrix", Some(i)),
        NormCmd::Jung(i) => ("jung", Some(i)),
        NormCmd::Alpha(i) => ("alpha", Some(i)),
        NormCmd::Sweep { .. } => ("sweep", None),
    };
    let command = format!("norm {name}");
    if let NormCmd::Sweep { count } = c {
        config.insert("seed".into(), json!(common.seed));
        config.insert("count".into(), json!(count));
        let (result, verdicts) = verify::sweep(*count, common.seed, scale)?;
        return Ok(Outcome {
            command,
            config: Value::Object(config),
            inputs: Vec::new(),
            result,
            verdicts,
        });
    }
    let (norm, digest) = fixtures::load_norm(&input.expect("non-sweep commands have input").polygon)?;
    let mut verdicts = Vec::new();
    let result = match c {
        NormCmd::Perimeter(_) => {
            verdicts.push(golab_verdict("golab", &norm));
            json!({ "self_perimeter": Num::rational(&norm.self_perimeter()) })
        }
        NormCmd::Dual(_) => {
            let dual = norm.polar_dual();
            verdicts.push(Verdict::new(
                "polar_involution",
                "duality: polar of polar is the original body",
                dual.polar_dual().vertices() == norm.vertices(),
                "exact comparison",
                "equal",
            ));
            json!({
                "vertices": points_to_json(dual.vertices()),
                "self_perimeter": Num::rational(&dual.self_perimeter()),
            })
        }
        NormCmd::Density(_) => {
            verdicts.extend(ht_minimal_verdicts("density", &norm, FLOAT_SLACK * scale));
            let all: serde_json::Map<String, Value> = AreaDefinition::ALL
                .iter()
                .map(|mu| (mu.tag().to_string(), json!(Num::pi_scaled(&area_density(&norm, *mu)))))
                .collect();
            let mut r = json!({ "densities": all });
            if let Some(mu) = common.mu {
                config.insert("mu".into(), mu_json(mu));
                r["selected"] = json!(Num::pi_scaled(&area_density(&norm, mu)));
            }
            r
        }
        NormCmd::Isoperimetrix(_) => {
            let iso = isoperimetrix(&norm);
            let ratios: serde_json::Map<String, Value> = AreaDefinition::ALL
                .iter()
                .map(|mu| (mu.tag().to_string(), json!(Num::pi_scaled(&isoperimetric_ratio(&norm, *mu)))))
                .collect();
            let ht = isoperimetric_ratio(&norm, AreaDefinition::HolmesThompson).to_f64();
            let ms = isoperimetric_ratio(&norm, AreaDefinition::MassStar).to_f64();
            verdicts.push(Verdict::within(
                "isoperimetrix.ht_equality",
                "isoperimetrix: mu_ht ratio equals 1/(4 pi)",
                ht,
                ISOPERIMETRIC,
                FLOAT_SLACK * scale,
            ));
            verdicts.push(
                Verdict::new(
                    "isoperimetrix.mstar_bound",
                    "isoperimetrix: mu_m* ratio >= 1/(4 pi)",
                    ms >= ISOPERIMETRIC - FLOAT_SLACK * scale,
                    fmt(ms),
                    format!(">= {}", fmt(ISOPERIMETRIC)),
                )
                .with_tolerance(FLOAT_SLACK * scale),
            );
            let mut r = json!({
                "isoperimetrix": polygon_to_json(&iso),
                "ratio": ratios,
            });
            if let Some(mu) = common.mu {
                config.insert("mu".into(), mu_json(mu));
                r["selected"] = json!(Num::pi_scaled(&isoperimetric_ratio(&norm, mu)));
            }
            r
        }
        NormCmd::Jung(_) | NormCmd::Alpha(_) => {
            let cfg = JungConfig::default();
            config.insert("jung_resolution".into(), json!(cfg.resolution));
            let j = jung_constant(&norm, &cfg)?;
            let enc = jung_enclosure(&j);
            if matches!(c, NormCmd::Jung(_)) {
                verdicts.push(Verdict::new(
                    "bohnenblust",
                    "jung: 1 <= J <= 4/3",
                    j.lo >= 1.0 - 1e-9 && j.hi <= 4.0 / 3.0 + 1e-9,
                    format!("[{}, {}]", fmt(j.lo), fmt(j.hi)),
                    "[1, 4/3]",
                ));
                json!({
                    "jung": enc,
                    "best_triangle": j.best_triangle,
                    "evaluations": j.evaluations,
                })
            } else {
                let a = alpha_v(&norm, &j);
                let lower = 3.0 / 32.0;
                verdicts.push(Verdict::new(
                    "alpha_lower_bound",
                    "alpha: alpha_V >= 3/32",
                    a.lo.decimal >= lower - 1e-9,
                    fmt(a.lo.decimal),
                    ">= 3/32",
                ));
                json!({
                    "alpha_v": a,
                    "jung": enc,
                    "self_perimeter": Num::rational(&norm.self_perimeter()),
                })
            }
        }
        NormCmd::Sweep { .. } => unreachable!(),
    };
    Ok(Outcome {
        command,
        config: Value::Object(config),
        inputs: vec![digest],
        result,
        verdicts,
    })
}

fn metric(c: &MetricCmd, common: &Common) -> Result<Outcome> {
    let mut config = base_config(common);
    let scale = common.tolerance_scale;
    let mut verdicts = Vec::new();
    let (command, input, result) = match c {
        MetricCmd::Delta { input, samples } => {
            config.insert("samples".into(), json!(samples));
            let (m, d) = fixtures::load_metric_input(input)?;
            let r = match m {
                MetricInput::Metric(m) => json!({
                    "points": m.len(),
                    "four_point_delta": four_point_delta(&m),
                }),
                MetricInput::Graph(g) => {
                    let m = graph_metric(&g)?;
                    json!({
                        "points": m.len(),
                        "four_point_delta": four_point_delta(&m),
                        "slim_triangle_delta": slim_triangle_delta(&g, *samples)?,
                    })
                }
            };
            ("metric delta", d, r)
        }
        MetricCmd::Embed { input, basepoint } => {
            let (m, d) = fixtures::load_metric(input)?;
            let base = basepoint.clone().unwrap_or_else(|| m.labels()[0].clone());
            config.insert("basepoint".into(), json!(base));
            let e = kuratowski_embed(&m, &base)?;
            let mut dev: f64 = 0.0;
            for i in 0..m.len() {
                for j in 0..m.len() {
                    dev = dev.max((e.sup_distance(i, j) - m.d(i, j)).abs());
                }
            }
            let tol = FLOAT_SLACK * m.diameter().max(1.0) * scale;
            verdicts.push(
                Verdict::new("isometry", "kuratowski: sup distances equal d", dev <= tol, fmt(dev), "0")
                    .with_tolerance(tol),
            );
            ("metric embed", d, json!({ "labels": e.labels, "coordinates": e.coords, "max_deviation": dev }))
        }
        MetricCmd::Tightspan { input, resolution } => {
            config.insert("resolution".into(), json!(resolution));
            let (m, d) = fixtures::load_metric(input)?;
            let ts = tight_span_capped(
                &m,
                *resolution,
                TIGHT_SPAN_MAX_POINTS,
                fixtures::cap(TIGHT_SPAN_MAX_SAMPLES),
            )?;
            let defect = ts
                .functions
                .iter()
                .map(|f| mfill_core::finite_metric::extremality_defect(m.matrix(), f))
                .fold(0.0, f64::max);
            verdicts.push(
                Verdict::new("extremal", "tight span: every sample is extremal", defect <= 1e-9, fmt(defect), "0")
                    .with_tolerance(1e-9),
            );
            let mut r = json!({
                "points": m.len(),
                "samples": ts.functions.len(),
                "max_extremality_defect": defect,
            });
            if m.len() == 3 {
                let (legs, formula) = tripod_legs(&m, &ts.functions);
                let dev = legs.iter().zip(&formula).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                verdicts.push(
                    Verdict::new("tripod", "tight span: tripod legs (d_ab + d_ac - d_bc)/2", dev <= FLOAT_SLACK * scale, format!("{legs:?}"), format!("{formula:?}"))
                        .with_tolerance(FLOAT_SLACK * scale),
                );
                r["tripod_legs"] = json!(legs);
            }
            ("metric tightspan", d, r)
        }
        MetricCmd::Thicken { input, delta } => {
            config.insert("delta".into(), json!(delta));
            let (g, d) = fixtures::load_graph(input)?;
            let t = delta_thickening(&g, *delta)?;
            let bound = mfill_core::finite_metric::thickening::HAUSDORFF_FACTOR * delta;
            verdicts.push(
                Verdict::new("isometric", "thickening: original distances preserved", t.distortion <= 1e-9, fmt(t.distortion), "0")
                    .with_tolerance(1e-9),
            );
            verdicts.push(Verdict::new(
                "hausdorff",
                "thickening: within 64 delta of the graph",
                t.hausdorff <= bound + 1e-9,
                fmt(t.hausdorff),
                format!("<= {}", fmt(bound)),
            ));
            (
                "metric thicken",
                d,
                json!({
                    "points": t.space.len(),
                    "net": t.net.len(),
                    "envelope_sizes": t.envelope_sizes,
                    "hausdorff": t.hausdorff,
                    "distortion": t.distortion,
                }),
            )
        }
        MetricCmd::Cayley { input, radius } => {
            config.insert("radius".into(), json!(radius));
            let (p, d) = fixtures::load_presentation(input)?;
            let g = cayley_ball(&p, *radius, fixtures::cap(DEFAULT_ELEMENT_CAP))?;
            let depth = g.shortest_paths(0).0;
            let mut spheres = vec![0usize; radius + 1];
            for x in depth {
                spheres[x as usize] += 1;
            }
            (
                "metric cayley",
                d,
                json!({
                    "vertices": g.len(),
                    "edges": g.edges().len(),
                    "sphere_sizes": spheres,
                }),
            )
        }
    };
    Ok(Outcome {
        command: command.into(),
        config: Value::Object(config),
        inputs: vec![input],
        result,
        verdicts,
    })
}

/// Leg lengths read off the centre sample (least coordinate sum), with
/// the Gromov-product formula alongside.
pub fn tripod_legs(m: &mfill_core::finite_metric::FiniteMetricSpace, functions: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let centre = functions
        .iter()
        .min_by(|a, b| a.iter().sum::<f64>().total_cmp(&b.iter().sum::<f64>()))
        .expect("tight spans are nonempty");
    let formula = (0..3)
        .map(|a| {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            (m.d(a, b) + m.d(a, c) - m.d(b, c)) / 2.0
        })
        .collect();
    (centre.clone(), formula)
}

fn profile_rows(p: &Profile) -> Value {
    json!({
        "rows": p.rows,
        "fitted": p.fitted,
        "trend": p.trend,
        "skipped": p.skipped,
    })
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected `lo..hi`, got `{s}`")))?;
    let p = |x: &str| {
        x.trim()
            .trim_start_matches('=')
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad range `{s}`")))
    };
    let (lo, hi) = (p(a)?, p(b)?);
    if lo == 0 || lo > hi {
        return Err(Error::Parse(format!("empty range `{s}`")));
    }
    Ok((lo, hi))
}

/// Concentric discrete circles in a Euclidean patch just large enough for
/// the outermost one.
pub fn euclidean_circles(mesh: f64, lo: usize, hi: usize, cap: usize) -> Result<(mfill_core::filling::PlanePatch, Vec<Loop>)> {
    let cells = 2 * ((hi as f64 + 1.0) / mesh).ceil() as usize;
    let patch = normed_patch(&PatchGeometry::Euclidean, cells as f64 * mesh, mesh, cap)?;
    let loops = (lo..=hi)
        .map(|r| discrete_circle(&patch, [0.0, 0.0], r as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok((patch, loops))
}

/// Boundaries of the combinatorial balls of radius `1..=radius` in the
/// order-7 tiling.
pub fn hyperbolic_circles(radius: usize, cap: usize) -> Result<(mfill_core::filling::HyperbolicBall, Vec<Loop>)> {
    let ball = hyperbolic_ball(radius, cap)?;
    let loops = (1..=radius)
        .map(|k| ball_boundary_loop(&ball, k))
        .collect::<Result<Vec<_>>>()?;
    Ok((ball, loops))
}

fn plot_path(plot: &Option<PathBuf>, out: &Option<PathBuf>) -> PathBuf {
    match (plot, out) {
        (Some(p), _) => p.clone(),
        (None, Some(o)) => o.with_extension("svg"),
        (None, None) => PathBuf::from("profile.svg"),
    }
}

fn write_plot(path: &Path, p: &Profile, title: &str) -> Result<()> {
    let pts: Vec<(f64, f64)> = p.rows.iter().map(|r| (r.length, r.ratio)).collect();
    let svg = series_plot(title, "loop length", "fill area / length²", &pts, Some((ISOPERIMETRIC, "1/(4π)")));
    std::fs::write(path, svg).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn fill(c: &FillCmd, common: &Common) -> Result<Outcome> {
    let mut config = base_config(common);
    let scale = common.tolerance_scale;
    let mut verdicts = Vec::new();
    let mut inputs = Vec::new();
    let (command, result) = match c {
        FillCmd::Area { complex, chain, integral } => {
            let mode = if *integral { FillMode::Integral } else { FillMode::Relaxed };
            config.insert("mode".into(), json!(mode));
            let (k, dk) = fixtures::load_complex(complex)?;
            let (z, dz) = fixtures::load_chain(&k, chain)?;
            inputs.extend([dk, dz]);
            let f = min_filling_area(&k, &z, mode)?;
            let tol = 1e-9 * scale;
            verdicts.push(
                Verdict::new("lp_duality", "filling: dual certificate matches primal", f.gap <= tol && f.dual_violation <= tol, fmt(f.gap), "0")
                    .with_tolerance(tol),
            );
            (
                "fill area",
                json!({
                    "area": f.area,
                    "exact_area": f.exact_area.as_ref().map(render_rational),
                    "exact_arithmetic": f.exact,
                    "dual_objective": f.dual_objective,
                    "dual_violation": f.dual_violation,
                    "gap": f.gap,
                    "chain": chain_to_json(&k, &f.chain),
                }),
            )
        }
        FillCmd::Radius { complex, chain } => {
            let (k, dk) = fixtures::load_complex(complex)?;
            let (z, dz) = fixtures::load_chain(&k, chain)?;
            inputs.extend([dk, dz]);
            let r = filling_radius(&k, &z)?;
            let mut diam: f64 = 0.0;
            for u in 0..k.n_vertices() {
                for v in u + 1..k.n_vertices() {
                    diam = diam.max(k.distance(u, v)?);
                }
            }
            verdicts.push(Verdict::new("diameter_bound", "filling radius <= diameter", r <= diam + 1e-12, fmt(r), format!("<= {}", fmt(diam))));
            ("fill radius", json!({ "filling_radius": r, "diameter": diam }))
        }
        FillCmd::Rips { metric, loop_ } => {
            let (m, dm) = fixtures::load_metric(metric)?;
            inputs.push(dm);
            let l = match loop_ {
                Some(spec) => {
                    let (mut ls, d) = fixtures::load_loops(spec)?;
                    inputs.push(d);
                    if ls.len() != 1 {
                        return Err(Error::InvalidInput("expected exactly one loop".into()));
                    }
                    ls.remove(0)
                }
                None => Loop::new((0..m.len()).collect())?,
            };
            let cap = fixtures::cap(DEFAULT_RADIUS_TRIANGLE_CAP);
            let rips = rips_filling_radius_capped(&m, &l, cap)?;
            let direct = match kuratowski_filling_radius_capped(&m, &l, cap) {
                Ok(r) => Some(r),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let tol = 0.05 * scale;
            if let Some(d) = direct {
                verdicts.push(Verdict::within("cross_route", "filling radius: Rips and Kuratowski routes agree", rips, d, tol));
            }
            (
                "fill rips",
                json!({
                    "points": m.len(),
                    "loop_length": l.length(|a, b| m.d(a, b)),
                    "rips": rips,
                    "direct": direct,
                }),
            )
        }
        FillCmd::Profile { substrate, loops, radii, radius, plot } => {
            let cap = fixtures::cap(DEFAULT_TRIANGLE_CAP);
            let (p, title) = match substrate.as_str() {
                "euclid" => {
                    let mesh = common.mesh.unwrap_or(0.5);
                    let (lo, hi) = parse_range(radii)?;
                    config.insert("mesh".into(), json!(mesh));
                    config.insert("radii".into(), json!([lo, hi]));
                    let (patch, ls) = euclidean_circles(mesh, lo, hi, cap)?;
                    inputs.push(InputDigest {
                        name: "builtin:euclid".into(),
                        sha256: mfill_core::digest(b"builtin:euclid"),
                    });
                    let p = isoperimetric_profile(&patch.complex, &ls)?;
                    let tol = 0.15 * scale;
                    let rel = (p.fitted - ISOPERIMETRIC).abs() / ISOPERIMETRIC;
                    verdicts.push(
                        Verdict::new("sharp_constant", "profile: fitted constant near 1/(4 pi)", rel <= tol, fmt(p.fitted), fmt(ISOPERIMETRIC))
                            .with_tolerance(tol),
                    );
                    (p, "Euclidean patch")
                }
                "hyperbolic" => {
                    config.insert("radius".into(), json!(radius));
                    inputs.push(InputDigest {
                        name: "builtin:hyperbolic".into(),
                        sha256: mfill_core::digest(b"builtin:hyperbolic"),
                    });
                    let (ball, ls) = hyperbolic_circles(*radius, cap)?;
                    let p = isoperimetric_profile(&ball.complex, &ls)?;
                    verdicts.push(Verdict::new(
                        "linear_isoperimetry",
                        "profile: ratios fall strictly to below half their maximum",
                        p.trend == Trend::Subquadratic,
                        json!(p.trend),
                        "subquadratic",
                    ));
                    (p, "order-7 tiling")
                }
                file => {
                    let (k, dk) = fixtures::load_complex(file)?;
                    let spec = loops
                        .as_deref()
                        .ok_or_else(|| Error::InvalidInput("a complex file needs a loops file".into()))?;
                    let (ls, dl) = fixtures::load_loops(spec)?;
                    inputs.extend([dk, dl]);
                    (isoperimetric_profile(&k, &ls)?, "profile")
                }
            };
            let worst = p.rows.iter().map(|r| r.certificate_gap).fold(0.0, f64::max);
            verdicts.push(
                Verdict::new("lp_duality", "filling: dual certificate matches primal", worst <= 1e-9 * scale, fmt(worst), "0")
                    .with_tolerance(1e-9 * scale),
            );
            let path = plot_path(plot, &common.out);
            write_plot(&path, &p, title)?;
            let mut r = profile_rows(&p);
            r["plot"] = json!(path.display().to_string());
            ("fill profile", r)
        }
        FillCmd::Hlambda { graph, loop_, lambda, r, rounds } => {
            config.insert("lambda".into(), json!(lambda));
            config.insert("r".into(), json!(r));
            config.insert("rounds".into(), json!(rounds));
            let (g, dg) = fixtures::load_graph(graph)?;
            let (l, dl) = fixtures::load_graph_loop(graph, loop_)?;
            inputs.extend([dg, dl]);
            let e = h_lambda_estimate(&g, &l, *lambda, *r, *rounds)?;
            verdicts.push(Verdict::new(
                "a_priori_bound",
                "h_lambda: 0 <= value <= lambda^4",
                e.value >= -1e-12 && e.value <= e.cap * (1.0 + 1e-9 * scale),
                fmt(e.value),
                format!("<= {}", fmt(e.cap)),
            ));
            let shifted_f: Vec<f64> = e.witnesses.f.iter().map(|x| x + 0.75).collect();
            let shifted_pi: Vec<f64> = e.witnesses.pi.iter().map(|x| x - 1.25).collect();
            let again = stokes_sum(&l, &shifted_f, &shifted_pi);
            let tol = 1e-9 * (1.0 + e.value.abs()) * scale;
            verdicts.push(Verdict::within("constant_shift", "h_lambda: invariant under f + c1, pi + c2", again, e.value, tol));
            let mut on_loop: Vec<usize> = l.vertices.clone();
            on_loop.sort_unstable();
            on_loop.dedup();
            let witnesses: serde_json::Map<String, Value> = on_loop
                .iter()
                .map(|v| (g.labels()[*v].clone(), json!([e.witnesses.f[*v], e.witnesses.pi[*v]])))
                .collect();
            (
                "fill hlambda",
                json!({
                    "value": e.value,
                    "warm_start_value": e.warm_start_value,
                    "rounds": e.rounds,
                    "loop_length": e.loop_length,
                    "lipschitz_bound": e.witnesses.lipschitz_bound,
                    "cap": e.cap,
                    "witnesses_on_loop": witnesses,
                }),
            )
        }
        FillCmd::Semiell { norm, region } => {
            let mesh = common.mesh.unwrap_or(0.125);
            let mu = common.mu.unwrap_or(AreaDefinition::MassStar);
            let tol = DEFAULT_SEMIELL_TOLERANCE * scale;
            config.insert("mesh".into(), json!(mesh));
            config.insert("mu".into(), mu_json(mu));
            let (n, dn) = fixtures::load_norm(norm)?;
            let (pts, dr) = fixtures::load_region(region)?;
            inputs.extend([dn, dr]);
            let s = semi_ellipticity_check(&n, &pts, mesh, mu, tol)?;
            verdicts.push(
                Verdict::new(
                    "semi_ellipticity",
                    "semi-ellipticity: fill >= mu(C) (1 - tol)",
                    s.pass,
                    fmt(s.fill),
                    format!(">= {}", fmt(s.reference * (1.0 - tol))),
                )
                .with_tolerance(tol),
            );
            ("fill semiell", serde_json::to_value(&s)?)
        }
    };
    Ok(Outcome {
        command: command.into(),
        config: Value::Object(config),
        inputs,
        result,
        verdicts,
    })
}

