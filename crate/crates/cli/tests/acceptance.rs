//! Acceptance suite: one test per criterion, each printing a single
//! `PASS`/`FAIL` line. Run with `--nocapture` to see the lines.
//!
//! The tests share one lock so that wall-clock budgets are not distorted by
//! other acceptance tests running concurrently.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sharp_atan::bounds::delta_derivative;
use sharp_atan::certification::{
    envelope_sandwich_holds, find_max_relative_error, find_max_relative_error_with, oracle_sample,
    probe_sharpness, verify_series, verify_shape_properties, BoundPair, Grid, SCAN_POINTS,
};
use sharp_atan::constants::{
    discriminant_values, lower_discriminant, pi_squared_bounds, CERTIFICATION_MARGIN, PI_SQ,
    UNIT_ROUNDOFF,
};
use sharp_atan::{atan2_approx, critical_point, lower_bound, upper_bound, BoundKind, Oracle, Side};

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "[acceptance {id:>2}] {} {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn within(elapsed: Duration, budget_secs: f64) -> bool {
    elapsed.as_secs_f64() < budget_secs
}

#[test]
fn criterion_01_inequality_certification() {
    let _g = serial();
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_sharp-atan"))
        .args(["certify", "-1e6", "1e6", "100000", "--grid", "mixed"])
        .output()
        .expect("run sharp-atan");
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&output.stdout);
    let margin = |key: &str| -> f64 {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .and_then(|rest| rest.split_whitespace().next())
            .and_then(|v| v.parse().ok())
            .unwrap_or(f64::NEG_INFINITY)
    };
    let lower = margin("worst_lower_margin: ");
    let upper = margin("worst_upper_margin: ");
    let samples_ok = text.contains("samples: 100001") || text.contains("samples: 100000");
    let pass = output.status.code() == Some(0)
        && lower >= -CERTIFICATION_MARGIN
        && upper >= -CERTIFICATION_MARGIN
        && samples_ok
        && within(elapsed, 10.0);
    report(
        1,
        "inequality certification on [-1e6, 1e6]",
        pass,
        format!(
            "exit {:?}, worst margins {lower:e} / {upper:e} (tolerance -{CERTIFICATION_MARGIN:e}), {:.2} s (< 10 s)",
            output.status.code(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "{text}");
}

#[test]
fn criterion_02_max_relative_errors() {
    let _g = serial();
    let oracle = Oracle::shared();
    let start = Instant::now();
    let lower = find_max_relative_error(oracle, Side::Lower);
    let upper = find_max_relative_error(oracle, Side::Upper);
    let lower2 = find_max_relative_error_with(oracle, Side::Lower, 2 * SCAN_POINTS);
    let upper2 = find_max_relative_error_with(oracle, Side::Upper, 2 * SCAN_POINTS);
    let elapsed = start.elapsed();

    let stable = |a: f64, b: f64| ((a - b) / a).abs() <= 1e-6;
    let lower_ok = lower.r_star < 0.0027;
    let upper_ok = upper.r_star < 0.0023;
    let stable_ok = stable(lower.r_star, lower2.r_star) && stable(upper.r_star, upper2.r_star);
    let time_ok = within(elapsed, 5.0);
    report(
        2,
        "max relative error, lower < 0.0027",
        lower_ok,
        format!("r_star = {:.12} at x = {:.9}", lower.r_star, lower.x_star),
    );
    report(
        2,
        "max relative error, upper < 0.0023",
        upper_ok,
        format!("r_star = {:.12} at x = {:.9}", upper.r_star, upper.x_star),
    );
    report(
        2,
        "max relative error, stability and runtime",
        stable_ok && time_ok,
        format!(
            "doubled density gives {:.12} / {:.12}, {:.2} s (< 5 s)",
            lower2.r_star,
            upper2.r_star,
            elapsed.as_secs_f64()
        ),
    );
    assert!(lower_ok && upper_ok && stable_ok && time_ok);
}

#[test]
fn criterion_03_envelope_sandwich() {
    let _g = serial();
    let oracle = Oracle::shared();
    let pair = BoundPair::default();
    let start = Instant::now();
    let xs = Grid::LogUniform.points(1e-6, 1e6, 10_000).unwrap();
    let violations: Vec<f64> = xs
        .iter()
        .map(|&x| oracle_sample(oracle, &pair, x))
        .filter(|s| !envelope_sandwich_holds(s))
        .map(|s| s.x)
        .collect();
    let elapsed = start.elapsed();
    let pass = violations.is_empty() && within(elapsed, 2.0);
    report(
        3,
        "envelope sandwich at 1e4 log points",
        pass,
        format!(
            "{} violations{}, {:.2} s (< 2 s)",
            violations.len(),
            violations
                .first()
                .map(|x| format!(" (first at {x:e})"))
                .unwrap_or_default(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_04_series_reproduction() {
    let _g = serial();
    let oracle = Oracle::shared();
    let start = Instant::now();
    let checks =
        [BoundKind::SharpLower, BoundKind::SharpUpper].map(|k| verify_series(oracle, k).unwrap());
    let elapsed = start.elapsed();
    let worst = checks
        .iter()
        .flat_map(|c| &c.rows)
        .map(|r| r.relative_gap)
        .fold(0.0, f64::max);
    let rows = checks.iter().map(|c| c.rows.len()).sum::<usize>();
    let pass = checks.iter().all(|c| c.passed) && rows == 12 && within(elapsed, 1.0);
    report(
        4,
        "series coefficients within 1e-4",
        pass,
        format!(
            "{rows} coefficients, worst relative gap {worst:.3e}, {:.3} s (< 1 s)",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_critical_points() {
    let _g = serial();
    let oracle = Oracle::shared();
    let mut pass = true;
    let mut details = Vec::new();
    for (kind, side) in [
        (BoundKind::SharpLower, Side::Lower),
        (BoundKind::SharpUpper, Side::Upper),
    ] {
        let x = critical_point(side);
        let slope = delta_derivative(side, x).abs();
        let shape = verify_shape_properties(oracle, kind, 10_000).unwrap();
        let located = shape.located.unwrap_or(f64::NAN);
        let gap = (located - x).abs();
        pass &= slope < 1e-10 && gap < 1e-6 && shape.sign_changes == Some(1);
        details.push(format!(
            "x* = {x:.12}, |dΔ/dx| = {slope:.1e}, bisection gap {gap:.1e}"
        ));
    }
    report(
        5,
        "critical points of the differences",
        pass,
        details.join("; "),
    );
    assert!(pass);
}

#[test]
fn criterion_06_crossover() {
    let _g = serial();
    let oracle = Oracle::shared();
    let pair = BoundPair::default();
    let small = oracle_sample(oracle, &pair, 0.1);
    let large = oracle_sample(oracle, &pair, 100.0);
    let pass = small.r_h < small.r_f && large.r_f < large.r_h;
    report(
        6,
        "crossover of the relative errors",
        pass,
        format!(
            "x = 0.1: r_h {:.3e} < r_f {:.3e}; x = 100: r_f {:.3e} < r_h {:.3e}",
            small.r_h, small.r_f, large.r_f, large.r_h
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_sharpness_probes() {
    let _g = serial();
    let oracle = Oracle::shared();
    let mut pass = true;
    let mut details = Vec::new();
    for side in [Side::Lower, Side::Upper] {
        for component in 1..=3 {
            let witness = probe_sharpness(oracle, side, component, 1e-2).unwrap();
            pass &= witness.is_some();
            details.push(format!("{side:?} c{component}: {witness:?}"));
        }
        let unperturbed = probe_sharpness(oracle, side, 1, 0.0).unwrap();
        pass &= unperturbed.is_none();
        details.push(format!("{side:?} unperturbed: {unperturbed:?}"));
    }
    report(
        7,
        "sharpness probes at epsilon = 1e-2",
        pass,
        details.join("; "),
    );
    assert!(pass);
}

#[test]
fn criterion_08_overflow_and_limits() {
    let _g = serial();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let at_max = [lower_bound(f64::MAX), upper_bound(f64::MAX)];
    let mut pass = at_max
        .iter()
        .all(|v| v.is_finite() && (v - half_pi).abs() <= 1e-15);
    let mut worst_ratio: f64 = 0.0;
    for x in Grid::LogUniform.points(100.0, 1e300, 10_000).unwrap() {
        for v in [lower_bound(x), upper_bound(x)] {
            let ratio = (v - half_pi).abs() * x / 1.5;
            worst_ratio = worst_ratio.max(ratio);
            pass &= ratio <= 1.0;
        }
    }
    report(
        8,
        "overflow safety and approach to pi/2",
        pass,
        format!(
            "f(MAX) = {:?}, h(MAX) = {:?}, worst |bound - pi/2| x / 1.5 = {worst_ratio:.4}",
            at_max[0], at_max[1]
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_atan2_contract() {
    let _g = serial();
    let oracle = Oracle::shared();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a7a2);
    let draw = |rng: &mut ChaCha8Rng| {
        let m = 10f64.powf(rng.gen_range(-6.0..=6.0));
        if rng.gen::<bool>() {
            -m
        } else {
            m
        }
    };
    let mut failures = 0usize;
    let mut first_failure = None;
    let mut worst_use: f64 = 0.0;
    for _ in 0..1_000_000 {
        let (y, x) = (draw(&mut rng), draw(&mut rng));
        let truth = oracle.atan2(y, x).unwrap();
        let got = atan2_approx(y, x).unwrap();
        let err = sharp_atan::oracle::BigFixed::from_f64(got.value, truth.scale())
            .sub(&truth)
            .to_f64()
            .abs();
        let t = truth.to_f64().abs();
        let allowed = got.max_relative_error * t + 4.0 * UNIT_ROUNDOFF * t;
        worst_use = worst_use.max(err / allowed);
        if err > allowed {
            failures += 1;
            first_failure.get_or_insert((y, x));
        }
    }

    let pi = std::f64::consts::PI;
    let half = std::f64::consts::FRAC_PI_2;
    let axes = [
        ((0.0, 1.0), 0.0),
        ((0.0, -1.0), pi),
        ((-0.0, -1.0), pi),
        ((1.0, 0.0), half),
        ((-1.0, 0.0), -half),
        ((2.5, -0.0), half),
        ((-0.0, 3.0), -0.0),
    ];
    let axes_ok = axes.iter().all(|&((y, x), want)| {
        let got = atan2_approx(y, x).unwrap();
        got.value.to_bits() == want.to_bits() && got.max_relative_error == 0.0
    });
    let origin_rejected = atan2_approx(0.0, 0.0).is_err();
    let pass = failures == 0 && axes_ok && origin_rejected;
    report(
        9,
        "atan2 certificate over 1e6 seeded pairs",
        pass,
        format!(
            "{failures} violations{}, worst error / allowance {worst_use:.6}, axes exact: {axes_ok}",
            first_failure.map(|p| format!(" (first at {p:?})")).unwrap_or_default()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_constant_sanity() {
    let _g = serial();
    let (lo, hi) = pi_squared_bounds();
    let (y_f, y_h) = discriminant_values();
    let pass =
        lo < PI_SQ && PI_SQ < hi && y_f > 0.0 && y_h > 0.0 && lower_discriminant(PI_SQ) > 0.0;
    report(
        10,
        "29/3 < pi^2 < 10 and positive discriminants",
        pass,
        format!("{lo:.6} < {PI_SQ} < {hi}, y_f(pi) = {y_f:.12}, y_h(pi) = {y_h:.12}"),
    );
    assert!(pass);
}
