//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion, and exits nonzero if any criterion fails.
//!
//! Built with `harness = false`; run with
//! `cargo test -p conedr --test acceptance`.

mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use conedr::harness::{coverage_grid, covering_examples, evaluate_example, is_dr_point};
use conedr::{
    build_circle_map, certify, dr_op, fixed_set_dr, generalized_op, iterate, kernel_dr, orbit,
    Angle, CircleImage, ConePair, OperatorParams, PieceKind, PlanarCone, Vec2, TAU_ANG,
};
use rand::Rng;

/// Closed-form agreement for the worked examples.
const CLOSED_FORM_TOL: f64 = 1e-10;
/// Oracle tolerance for `T(u) = 0` and `T(u) = u`.
const ORACLE_TOL: f64 = 1e-10;
/// Step-ratio tolerance for skew lines.
const RATIO_TOL: f64 = 1e-12;
/// Circle-map angle and scale agreement.
const CIRCLE_TOL: f64 = 1e-9;
/// Cone-algebra and operator identities.
const ALGEBRA_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
/// Example id, parameter samples, and optional per-sample starts.
type ExampleSamples = (u8, Vec<(f64, f64, f64)>, Vec<Vec2>);
/// Last pair seen together with a cone derived from it.
type PairCache = Option<(ConePair, PlanarCone)>;
type Criterion = (&'static str, fn() -> Outcome);

fn ac1_closed_forms() -> Outcome {
    let samples: [ExampleSamples; 6] = [
        (
            1,
            vec![
                (1.0, 0.5, 0.25),
                (2.0, 1.0, 0.2),
                (0.5, 0.6, 0.45),
                (1.5, 2.0, 0.1),
                (0.1, 0.1, 0.49),
            ],
            vec![],
        ),
        (
            2,
            vec![
                (1.0, 0.5, 0.5),
                (0.3, 2.0, 1.0),
                (1.0, 1.8, 1.0),
                (2.0, 1.0, 1.9),
                (2.0, 0.2, 0.5),
            ],
            vec![],
        ),
        (
            3,
            vec![
                (0.5, 1.0, 0.5),
                (2.0, 0.3, 1.0),
                (1.8, 1.0, 1.0),
                (1.0, 2.0, 1.9),
                (0.6, 0.7, 0.5),
            ],
            vec![],
        ),
        (
            4,
            [0.51, 0.52, 0.54, 0.56, 0.58]
                .map(|t| (1.0 / t, 1.0 / t, t))
                .to_vec(),
            vec![],
        ),
        (
            5,
            [3.0, 4.0, 6.0, 10.0, 50.0]
                .map(|t| (1.0 / t, 1.0 / t, t))
                .to_vec(),
            vec![],
        ),
        (
            6,
            vec![(1.0, 1.0, 1.0); 5],
            vec![
                Vec2::new(2.0, 1.0),
                Vec2::new(3.0, 1.0),
                Vec2::new(1.0, 0.5),
                Vec2::new(5.0, 2.0),
                Vec2::new(1.0, 0.1),
            ],
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut runs = 0;
    for (id, params, starts) in samples {
        for (i, (l, m, k)) in params.into_iter().enumerate() {
            let p = OperatorParams::new(l, m, k).map_err(|e| e.to_string())?;
            let start = starts.get(i).copied();
            let r = evaluate_example(id, 50, Some(p), start).map_err(|e| e.to_string())?;
            if r.max_deviation > CLOSED_FORM_TOL {
                return Err(format!(
                    "example {id} at ({l},{m},{k}): deviation {:e}",
                    r.max_deviation
                ));
            }
            if let Some(n) = r.fixed_at {
                return Err(format!(
                    "example {id} at ({l},{m},{k}): iterate {n} is fixed"
                ));
            }
            worst = worst.max(r.max_deviation);
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} runs x 50 iterates, max deviation {worst:e}, none fixed"
    ))
}

fn ac2_finite_soundness() -> Outcome {
    let mut rng = common::rng(0xA2);
    let radii = [0.1, 1.0, 10.0];
    let dirs = common::directions(360);
    let mut max_bound = 0;
    let mut max_used = 0;
    for case in 0..200 {
        let pair = common::overlapping_pair(&mut rng);
        let cert = certify(&pair).map_err(|e| format!("case {case} {pair:?}: {e}"))?;
        if !cert.finite {
            return Err(format!("case {case} {pair:?}: certified not finite"));
        }
        let n = cert.bound_n.expect("finite has a bound") as usize;
        max_bound = max_bound.max(n);
        let fix = fixed_set_dr(&pair);
        for &u in &dirs {
            for r in radii {
                let x0 = r * u;
                let tr = iterate(&pair, &OperatorParams::DR, x0, 2 * n);
                let k = match tr.reached_fix_at {
                    Some(k) if k <= n => k,
                    other => {
                        return Err(format!(
                            "case {case} {pair:?} from {x0}: fixed at {other:?}, bound {n}"
                        ))
                    }
                };
                let x = tr.last();
                if x.dist(fix.project(x)) > 1e-9 * x0.norm() {
                    return Err(format!(
                        "case {case} {pair:?} from {x0}: stop point {x} outside {fix}"
                    ));
                }
                max_used = max_used.max(k);
            }
        }
    }
    Ok(format!(
        "200 pairs x 1080 starts, largest bound {max_bound}, most steps used {max_used}"
    ))
}

fn ac3_skew_lines() -> Outcome {
    let starts: Vec<Vec2> = common::directions(360)
        .into_iter()
        .flat_map(|u| [0.1, 1.0, 10.0].map(|r| r * u))
        .collect();
    for theta in [FRAC_PI_6, FRAC_PI_3, 2.0] {
        let pair = ConePair::new(PlanarCone::line(0.0), PlanarCone::line(theta));
        let cert = certify(&pair).map_err(|e| e.to_string())?;
        if cert.finite {
            return Err(format!("theta={theta}: certified finite"));
        }
        let c = theta.cos().abs();
        for &x0 in &starts {
            let tr = iterate(&pair, &OperatorParams::DR, x0, 200);
            if let Some(k) = tr.reached_fix_at {
                return Err(format!("theta={theta} from {x0}: fixed at step {k}"));
            }
            let xs = orbit(&pair, &OperatorParams::DR, x0, 200);
            for (i, w) in xs.windows(2).enumerate() {
                let ratio = w[1].norm() / w[0].norm();
                if (ratio - c).abs() > RATIO_TOL {
                    return Err(format!(
                        "theta={theta} from {x0}, step {i}: ratio {ratio} vs |cos θ| {c}"
                    ));
                }
            }
        }
    }
    Ok("3 angles x 1080 starts x 200 steps: never fixed, ratio |cos θ| within 1e-12".into())
}

/// Shared sampling for the kernel, fixed-set and image criteria.
fn oracle_sweep(
    seed: u64,
    mut check: impl FnMut(&ConePair, Angle, Vec2) -> Option<String>,
) -> Outcome {
    let mut rng = common::rng(seed);
    let dirs = common::directions(1440);
    let mut tested = 0usize;
    for case in 0..500 {
        let pair = common::pair(&mut rng);
        for &u in &dirs {
            let t = u.arg().expect("unit");
            if let Some(msg) = check(&pair, t, u) {
                return Err(format!("case {case} {pair:?} at {t:?}: {msg}"));
            }
            tested += 1;
        }
    }
    Ok(format!("{tested} samples, 0 disagreements"))
}

fn ac4_kernel_oracle() -> Outcome {
    let mut cache: PairCache = None;
    oracle_sweep(0xA4, |pair, t, u| {
        if cache.as_ref().map(|c| &c.0) != Some(pair) {
            cache = Some((*pair, kernel_dr(pair)));
        }
        let ker = cache.as_ref().unwrap().1;
        let analytic = ker.contains_dir(t, TAU_ANG);
        let numeric = dr_op(pair, u).norm() <= ORACLE_TOL;
        (analytic != numeric).then(|| format!("kernel {ker} says {analytic}, |T u| says {numeric}"))
    })
}

fn ac5_fix_oracle() -> Outcome {
    let mut cache: PairCache = None;
    oracle_sweep(0xA5, |pair, t, u| {
        if cache.as_ref().map(|c| &c.0) != Some(pair) {
            cache = Some((*pair, fixed_set_dr(pair)));
        }
        let fix = cache.as_ref().unwrap().1;
        let analytic = fix.contains_dir(t, TAU_ANG);
        let numeric = dr_op(pair, u).dist(u) <= ORACLE_TOL;
        (analytic != numeric)
            .then(|| format!("fixed set {fix} says {analytic}, |Tu-u| says {numeric}"))
    })
}

fn ac6_image_avoids_kernel() -> Outcome {
    let mut cache: PairCache = None;
    oracle_sweep(0xA6, |pair, _, u| {
        if cache.as_ref().map(|c| &c.0) != Some(pair) {
            cache = Some((*pair, kernel_dr(pair)));
        }
        let ker = cache.as_ref().unwrap().1;
        let y = dr_op(pair, u);
        if y.norm() <= ORACLE_TOL {
            return None;
        }
        let t = y.arg().expect("nonzero");
        ker.contains_dir(t, TAU_ANG)
            .then(|| format!("image {y} lies in kernel {ker}"))
    })
}

/// Open arcs of the circle map's domain, as `(start, width)`; the full
/// circle is reported as `None`.
fn domain_components(kernel: &PlanarCone) -> Option<Vec<(Angle, f64)>> {
    match *kernel {
        PlanarCone::Zero => None,
        PlanarCone::Ray(d) => Some(vec![(d, TAU)]),
        PlanarCone::Line(d) => Some(vec![(d, PI), (d.offset(PI), PI)]),
        PlanarCone::Sector { start, width } => Some(vec![(start.offset(width), TAU - width)]),
        PlanarCone::Halfplane(s) => Some(vec![(s.offset(PI), PI)]),
        PlanarCone::Plane => Some(vec![]),
    }
}

fn ac7_properties() -> Outcome {
    const CASES: usize = 1000;
    let mut rng = common::rng(0xA7);
    let mut report = Vec::new();

    // Moreau decomposition.
    for i in 0..CASES {
        let c = common::cone(&mut rng);
        let x = common::point(&mut rng);
        let (p, q) = (c.project(x), c.polar().project(x));
        let scale = x.norm_sq().max(1.0);
        if (p + q).dist(x) > ALGEBRA_TOL * x.norm().max(1.0) || p.dot(q).abs() > ALGEBRA_TOL * scale
        {
            return Err(format!("moreau case {i}: {c} at {x}: P={p}, Q={q}"));
        }
    }
    report.push("moreau");

    // Polar involution.
    for i in 0..CASES {
        let c = common::cone(&mut rng);
        let back = c.polar().polar();
        if !back.approx_eq(&c, ALGEBRA_TOL) {
            return Err(format!("polar case {i}: {c} -> {back}"));
        }
    }
    report.push("polar involution");

    // Firm nonexpansiveness of DR.
    for i in 0..CASES {
        let pair = common::pair(&mut rng);
        let (x, y) = (common::point(&mut rng), common::point(&mut rng));
        let (tx, ty) = (dr_op(&pair, x), dr_op(&pair, y));
        let lhs = tx.dist(ty).powi(2) + ((x - tx) - (y - ty)).norm_sq();
        let rhs = x.dist(y).powi(2);
        if lhs > rhs + ALGEBRA_TOL * (x.norm_sq() + y.norm_sq()).max(1.0) {
            return Err(format!(
                "firm nonexpansive case {i}: {pair:?} x={x} y={y}: {lhs} > {rhs}"
            ));
        }
    }
    report.push("firm nonexpansiveness");

    // Positive homogeneity of the generalized family (DR included).
    for i in 0..CASES {
        let pair = common::pair(&mut rng);
        let params = if rng.gen_bool(0.3) {
            OperatorParams::DR
        } else {
            OperatorParams::new(
                rng.gen_range(0.01..=2.0),
                rng.gen_range(0.01..=2.0),
                rng.gen_range(0.01..5.0),
            )
            .expect("admissible")
        };
        let x = common::point(&mut rng);
        let s = 10f64.powf(rng.gen_range(-3.0..3.0));
        let (a, b) = (
            generalized_op(&pair, &params, s * x),
            s * generalized_op(&pair, &params, x),
        );
        if a.dist(b) > ALGEBRA_TOL * (s * x.norm()).max(1e-300) * params.kappa().max(1.0) * 4.0 {
            return Err(format!(
                "homogeneity case {i}: {pair:?} {params:?} x={x} s={s}"
            ));
        }
    }
    report.push("positive homogeneity");

    // Circle map agrees with the operator away from breakpoints.
    let mut checked = 0usize;
    let mut case = 0;
    while checked < CASES * 10 {
        let pair = common::pair(&mut rng);
        let map = build_circle_map(&pair);
        let breaks: Vec<Angle> = map.pieces().iter().map(|p| p.arc.start).collect();
        for _ in 0..10 {
            let t = Angle::new(rng.gen_range(0.0..TAU));
            if breaks.len() > 1 && breaks.iter().any(|b| b.dist(t) <= TAU_ANG) {
                continue;
            }
            let r = 10f64.powf(rng.gen_range(-1.0..1.0));
            let x = r * Vec2::unit(t);
            let y = dr_op(&pair, x);
            let piece = map.piece_at(t);
            let ratio = y.norm() / r;
            let scale = match piece.kind {
                PieceKind::Identity => 1.0,
                PieceKind::Rotation { scale, .. } => scale,
                PieceKind::ConstantTo(target) => Vec2::unit(t).dot(Vec2::unit(target)).abs(),
                PieceKind::ToZero => 0.0,
            };
            if (ratio - scale).abs() > CIRCLE_TOL {
                return Err(format!(
                    "circle case {case}: {pair:?} at {t:?}: |Tx|/|x|={ratio}, piece {:?}",
                    piece.kind
                ));
            }
            match map.eval(t) {
                CircleImage::Zero => {}
                CircleImage::Dir(d) => {
                    let got = y.arg().ok_or_else(|| {
                        format!("circle case {case}: T x = 0 but map gives {d:?}")
                    })?;
                    if got.dist(d) > CIRCLE_TOL {
                        return Err(format!(
                            "circle case {case}: {pair:?} at {t:?}: arg T x = {got:?}, map {d:?}"
                        ));
                    }
                }
            }
            checked += 1;
        }
        case += 1;
    }
    report.push("circle-map consistency");

    // φ is nonexpansive for arc length within a domain component.
    let mut checked = 0usize;
    while checked < CASES {
        let pair = common::pair(&mut rng);
        let map = build_circle_map(&pair);
        let (t, s, along) = match domain_components(map.kernel()) {
            None => {
                let (t, s) = (
                    Angle::new(rng.gen_range(0.0..TAU)),
                    Angle::new(rng.gen_range(0.0..TAU)),
                );
                (t, s, t.dist(s))
            }
            Some(comps) if comps.is_empty() => continue,
            Some(comps) => {
                let (start, width) = comps[rng.gen_range(0..comps.len())];
                let a = rng.gen_range(TAU_ANG..width - TAU_ANG);
                let b = rng.gen_range(TAU_ANG..width - TAU_ANG);
                (start.offset(a), start.offset(b), (a - b).abs())
            }
        };
        if let (CircleImage::Dir(ft), CircleImage::Dir(fs)) = (map.eval(t), map.eval(s)) {
            if ft.dist(fs) > along + CIRCLE_TOL {
                return Err(format!(
                    "nonexpansive: {pair:?} t={t:?} s={s:?}: {} > {along}",
                    ft.dist(fs)
                ));
            }
            checked += 1;
        }
    }
    report.push("φ nonexpansiveness");

    Ok(format!(
        "{} suites x >= {CASES} cases: {}",
        report.len(),
        report.join(", ")
    ))
}

fn ac8_coverage() -> Outcome {
    let grid = coverage_grid();
    let mut uncovered = Vec::new();
    let mut dr_points = 0;
    for &(l, m, k) in &grid {
        if is_dr_point(l, m, k) {
            dr_points += 1;
            continue;
        }
        if covering_examples(l, m, k).is_empty() {
            uncovered.push((l, m, k));
        }
    }
    if grid.len() != 21 * 21 * 21 || dr_points != 1 {
        return Err(format!(
            "grid has {} points, {dr_points} DR points",
            grid.len()
        ));
    }
    if !uncovered.is_empty() {
        return Err(format!(
            "{} uncovered points, e.g. {:?}",
            uncovered.len(),
            &uncovered[..uncovered.len().min(5)]
        ));
    }
    Ok(format!("{} non-DR grid points all covered", grid.len() - 1))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("closed-form reproduction of examples 1-6", ac1_closed_forms),
        (
            "finite-convergence certificate soundness",
            ac2_finite_soundness,
        ),
        (
            "skew lines: not finite, contraction |cos θ|",
            ac3_skew_lines,
        ),
        ("kernel formula vs T(u)=0 oracle", ac4_kernel_oracle),
        ("fixed-set formula vs T(u)=u oracle", ac5_fix_oracle),
        (
            "no nonzero image point in the kernel",
            ac6_image_avoids_kernel,
        ),
        ("property suites", ac7_properties),
        ("parameter-space coverage", ac8_coverage),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = run();
        let secs = clock.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("AC{} PASS  {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("AC{} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
