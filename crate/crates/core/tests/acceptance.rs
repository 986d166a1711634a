//! Acceptance criteria, each at its stated tolerance. Prints one PASS/FAIL
//! line per criterion and fails if any criterion fails.
//!
//! Run with `cargo test -p kepler-core --test acceptance -- --nocapture`.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use kepler_core::conic_fit::fit_ellipse;
use kepler_core::conserved::{angular_momentum, drift_report, energy, lrl_vector};
use kepler_core::dynamics::{
    analytic_period, default_dt, integrate, step, KeplerSystem, Method, OrbitState, Trajectory,
};
use kepler_core::euclid::{ellipse_geometry, gardener_residual, kepler3_check, reflect_in_tangent};
use kepler_core::hodograph::{
    construct_d_residual, dv_dtheta_residual, fit_circle, membership_residual, predicted_center,
    predicted_radius, scaling_lambda_check, tangency_residual,
};
use kepler_core::newton::{newton_report, ratio_theorem_residual, CenteredEllipse};
use kepler_core::vector::{plane_frame, Vec3};

const FAMILY: [f64; 5] = [0.0, 0.1, 0.36, 0.7, 0.95];

fn sys() -> KeplerSystem {
    KeplerSystem::unit()
}

/// Periapsis at (1, 0, 0) with eccentricity `e` (m = k = 1).
fn periapsis_state(e: f64) -> OrbitState {
    OrbitState::new(Vec3::X, Vec3::new(0.0, (1.0 + e).sqrt(), 0.0)).unwrap()
}

fn semi_major(e: f64) -> f64 {
    1.0 / (1.0 - e)
}

/// One period sampled 10⁴ times at dt = T/10⁴.
fn one_period_10k(state: &OrbitState) -> Trajectory {
    let a = ellipse_geometry(&sys(), state).unwrap().a;
    let dt = analytic_period(&sys(), a) / 1e4;
    integrate(&sys(), state, dt, 9_999, Method::Rk4).unwrap()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn ac1_reflection_is_lrl_focus() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for e in FAMILY {
        let traj = one_period_10k(&periapsis_state(e));
        assert_eq!(traj.len(), 10_000);
        let two_a = 2.0 * semi_major(e);
        for s in traj.states() {
            let t = reflect_in_tangent(&sys(), s).unwrap();
            let focus = lrl_vector(&sys(), s).unwrap() / (sys().m() * energy(&sys(), s).unwrap());
            worst = worst.max(t.distance(focus) / two_a);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-9 && elapsed < Duration::from_secs(10),
        format!(
            "max |reflect - K/mH|/2a = {worst:.2e} (tol 1e-9), {:.2} s (limit 10 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn ac2_gardener() -> Outcome {
    let mut worst: f64 = 0.0;
    for e in FAMILY {
        let traj = one_period_10k(&periapsis_state(e));
        let two_a = 2.0 * semi_major(e);
        for s in traj.states() {
            worst = worst.max(gardener_residual(&sys(), s).unwrap().abs() / two_a);
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max ||t-r|+|r|+k/H|/2a = {worst:.2e} (tol 1e-9)"),
    )
}

/// Max relative energy error over the first and last ten of 100 periods.
fn verlet_windows(state: &OrbitState) -> (f64, f64) {
    let s = sys();
    let a = semi_major_of(state);
    let dt = default_dt(&s, state).unwrap();
    let per_period = (analytic_period(&s, a) / dt).ceil() as usize;
    let total = 100 * per_period;
    let window = 10 * per_period;
    let h0 = energy(&s, state).unwrap();
    let (mut first, mut last) = (0.0f64, 0.0f64);
    let mut x = *state;
    for i in 1..=total {
        x = step(&s, &x, dt, Method::Verlet).unwrap();
        let err = ((energy(&s, &x).unwrap() - h0) / h0).abs();
        if i <= window {
            first = first.max(err);
        }
        if i > total - window {
            last = last.max(err);
        }
    }
    (first, last)
}

fn semi_major_of(state: &OrbitState) -> f64 {
    ellipse_geometry(&sys(), state).unwrap().a
}

fn ac3_conservation() -> Outcome {
    let results: Vec<(f64, f64, f64, (f64, f64))> = std::thread::scope(|scope| {
        let handles: Vec<_> = FAMILY
            .iter()
            .map(|&e| {
                scope.spawn(move || {
                    let state = periapsis_state(e);
                    let dt = default_dt(&sys(), &state).unwrap();
                    let n = (10.0 * analytic_period(&sys(), semi_major(e)) / dt).ceil() as usize;
                    let traj = integrate(&sys(), &state, dt, n, Method::Rk4).unwrap();
                    let d = drift_report(&traj).unwrap();
                    (
                        d.max_rel_dh,
                        d.max_rel_dl,
                        d.max_rel_dk,
                        verlet_windows(&state),
                    )
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let rk4 = results
        .iter()
        .map(|r| r.0.max(r.1).max(r.2))
        .fold(0.0, f64::max);
    // bounded: the last ten periods are no worse than twice the first ten
    let verlet_ok = results.iter().all(|r| r.3 .1 <= (2.0 * r.3 .0).max(1e-11));
    let growth = results
        .iter()
        .map(|r| r.3 .1 / r.3 .0.max(1e-11))
        .fold(0.0, f64::max);
    outcome(
        rk4 <= 1e-8 && verlet_ok,
        format!(
            "RK4 max drift of H, L, K over 10 periods = {rk4:.2e} (tol 1e-8); \
             Verlet 100 periods: max(last 10)/max(first 10, 1e-11) = {growth:.3} (limit 2)"
        ),
    )
}

fn ac4_third_law() -> Outcome {
    let e: f64 = 0.36;
    let states: Vec<OrbitState> = [0.5, 1.0, 2.0]
        .iter()
        .flat_map(|&a: &f64| {
            let circular =
                OrbitState::new(Vec3::new(a, 0.0, 0.0), Vec3::new(0.0, a.powf(-0.5), 0.0));
            let rp = a * (1.0 - e);
            let eccentric = OrbitState::new(
                Vec3::new(0.0, rp, 0.0),
                Vec3::new(-((1.0 + e) / rp).sqrt(), 0.0, 0.0),
            );
            [circular.unwrap(), eccentric.unwrap()]
        })
        .collect();
    let rows = kepler3_check(&sys(), &states).unwrap();
    let target = 4.0 * PI * PI;
    let worst = rows
        .iter()
        .map(|r| (r.ratio - target).abs() / target)
        .fold(0.0, f64::max);
    let a_ok = rows
        .iter()
        .zip([0.5, 0.5, 1.0, 1.0, 2.0, 2.0])
        .all(|(r, a)| (r.a - a).abs() < 1e-12);
    outcome(
        worst <= 1e-4 && a_ok,
        format!("a in {{0.5, 1, 2}} (circular and e = 0.36): max |T²/a³ - 4π²|/4π² = {worst:.2e} (tol 1e-4)"),
    )
}

fn ac5_hodograph() -> Outcome {
    let state = OrbitState::new(Vec3::X, Vec3::new(0.0, 0.8, 0.0)).unwrap();
    let traj = one_period_10k(&state);
    let s = sys();
    let l = angular_momentum(&state, s.m()).norm();
    let radius = predicted_radius(&s, &state).unwrap();
    let center = predicted_center(&s, &state).unwrap();
    let frame = plane_frame(angular_momentum(&state, s.m())).unwrap();
    let velocities: Vec<Vec3> = traj.states().map(|x| x.v).collect();
    let fit = fit_circle(&velocities, &frame).unwrap();

    let center_err = fit.center.distance(center) / (s.k() / l);
    let radius_err = (fit.radius - radius).abs() / radius;
    let membership = membership_residual(&traj).unwrap();
    let d = construct_d_residual(&traj).unwrap();
    let tangency = tangency_residual(&traj).unwrap();
    let lambda = scaling_lambda_check(&s, &state).unwrap();
    outcome(
        center_err <= 1e-7
            && radius_err <= 1e-7
            && membership <= 1e-9
            && d <= 1e-9
            && tangency <= 1e-9
            && lambda <= 1e-12,
        format!(
            "center {center_err:.1e} (1e-7), radius {radius_err:.1e} (1e-7), membership {membership:.1e} (1e-9), \
             D {d:.1e} (1e-9), tangency {tangency:.1e} (1e-9), lambda {lambda:.1e} (1e-12)"
        ),
    )
}

fn ac6_dv_dtheta_order() -> Outcome {
    let state = OrbitState::new(Vec3::X, Vec3::new(0.0, 0.8, 0.0)).unwrap();
    let t = analytic_period(&sys(), semi_major_of(&state));
    let residual = |n: usize| {
        let traj = integrate(&sys(), &state, t / n as f64, n, Method::Rk4).unwrap();
        dv_dtheta_residual(&traj).unwrap()
    };
    let (r1, r2, r3) = (residual(1000), residual(2000), residual(4000));
    let (q1, q2) = (r1 / r2, r2 / r3);
    outcome(
        (q1 - 4.0).abs() <= 0.4 && (q2 - 4.0).abs() <= 0.4,
        format!("residuals {r1:.2e}, {r2:.2e}, {r3:.2e}: reductions {q1:.3}, {q2:.3} under dt halving (target 4)"),
    )
}

fn ac7_newton() -> Outcome {
    let start = Instant::now();
    let mut worst_e: f64 = 0.0;
    let mut worst_lemma: f64 = 0.0;
    let mut worst_spread: f64 = 0.0;
    let mut orders = Vec::new();
    let mut order_ok = true;
    for e in [0.0f64, 0.25, 0.5, 0.75] {
        let ell = CenteredEllipse::planar(1.0, (1.0 - e * e).sqrt()).unwrap();
        let report = newton_report(&ell, 4096).unwrap();
        worst_e = worst_e.max(report.e_distance_residual);
        worst_lemma = worst_lemma.max(report.lemma_de_ef).max(report.lemma_fr_br);
        worst_spread = worst_spread.max(report.inverse_square.spread);
        let coarse = ratio_theorem_residual(&ell, 2048).unwrap();
        if e == 0.0 {
            // s = t exactly on a circle; only rounding remains
            order_ok &= report.ratio_residual <= 1e-9;
            orders.push(format!("e=0: {:.1e} (rounding)", report.ratio_residual));
        } else {
            let q = coarse / report.ratio_residual;
            order_ok &= (q - 4.0).abs() <= 0.5;
            orders.push(format!("e={e}: {q:.3}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst_e <= 1e-10
            && worst_lemma <= 1e-10
            && order_ok
            && worst_spread <= 1e-4
            && elapsed < Duration::from_secs(5),
        format!(
            "||e-r|-a|/a {worst_e:.1e} (1e-10), lemmas {worst_lemma:.1e} (1e-10), ratio residual \
             halving factors [{}] (target 4), spread {worst_spread:.1e} (1e-4), {:.2} s (limit 5 s)",
            orders.join(", "),
            elapsed.as_secs_f64()
        ),
    )
}

fn ac8_conic_fit() -> Outcome {
    let mut worst: f64 = 0.0;
    for e in FAMILY {
        let state = periapsis_state(e);
        let g = ellipse_geometry(&sys(), &state).unwrap();
        let dt = default_dt(&sys(), &state).unwrap();
        let n = (g.period / dt).ceil() as usize;
        let traj = integrate(&sys(), &state, dt, n, Method::Rk4).unwrap();
        let positions: Vec<Vec3> = traj.states().map(|s| s.r).collect();
        let frame = plane_frame(angular_momentum(&state, 1.0)).unwrap();
        let fit = fit_ellipse(&positions, &frame).unwrap();
        worst = worst
            .max((fit.a - g.a).abs() / g.a)
            .max((fit.b - g.b).abs() / g.b);
    }
    outcome(
        worst <= 1e-6,
        format!("max relative (a, b) error of the position fit = {worst:.2e} (tol 1e-6)"),
    )
}

fn ac9_cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_kepler"))
            .arg("verify")
            .current_dir(dir.path())
            .output()
            .unwrap();
        (out, start.elapsed())
    };
    let (a, ta) = run();
    let (b, tb) = run();
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let slowest = ta.max(tb);
    outcome(
        identical && a.status.success() && slowest < Duration::from_secs(60),
        format!(
            "two `verify` runs byte-identical: {identical}, exit {:?}, slowest {:.2} s (limit 60 s)",
            a.status.code(),
            slowest.as_secs_f64()
        ),
    )
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        (
            "reflection in the tangent is the LRL focus",
            ac1_reflection_is_lrl_focus,
        ),
        ("gardener's sum", ac2_gardener),
        ("conservation of H, L, K", ac3_conservation),
        ("third law", ac4_third_law),
        ("hodograph circle", ac5_hodograph),
        ("dv/dtheta law", ac6_dv_dtheta_order),
        ("two-center theorem", ac7_newton),
        ("conic fit cross-check", ac8_conic_fit),
        ("CLI determinism", ac9_cli_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("AC{} {status} {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
