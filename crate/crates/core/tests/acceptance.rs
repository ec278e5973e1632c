//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seiffert_core::bernoulli::{bernoulli_even, zeta_even, N_MAX};
use seiffert_core::means::{seiffert_t, PositivePair};
use seiffert_core::oracle::Oracle;
use seiffert_core::proof::{certify_lambda_chain, AuxFamily};
use seiffert_core::series::{cot_series, csc2_series, ratio_coefficient_direct, SeriesKind};
use seiffert_core::sharp::ratio::{raw_mean_ratio, t_from_ratio, theta_form};
use seiffert_core::sharp::{
    lambda_numeric, ratio_ta_ca, scan_ratio_grid, theorem_1_1_verify,
    theorem_1_2_verify, SuiteReport, SweepConfig,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn lambda_recovery() -> Outcome {
    let (out, elapsed) = timed(|| {
        let n = lambda_numeric().expect("bisection brackets lambda");
        let gap = (n - 0.5 * (1.0 + (12.0 / PI - 3.0).sqrt())).abs();
        outcome(gap <= 1e-12, format!("gap {gap:.3e}"))
    });
    let fast = elapsed < Duration::from_secs(1);
    outcome(out.pass && fast, format!("{}, {elapsed:.2?}", out.detail))
}

fn ratio_extremes() -> Outcome {
    let (out, elapsed) = timed(|| {
        let scan = scan_ratio_grid(1e-7, 1.0 - 1e-7, 1_000_000).expect("valid grid");
        let inf_gap = (scan.infimum - (4.0 / PI - 1.0)).abs();
        let sup_gap = (scan.supremum - 1.0 / 3.0).abs();
        outcome(
            scan.evaluations == 1_000_000 && inf_gap <= 1e-6 && sup_gap <= 1e-6 && scan.strictly_decreasing,
            format!(
                "{} evaluations, inf gap {inf_gap:.3e}, sup gap {sup_gap:.3e}, strictly decreasing {}",
                scan.evaluations, scan.strictly_decreasing
            ),
        )
    });
    let fast = elapsed < Duration::from_secs(10);
    outcome(out.pass && fast, format!("{}, {elapsed:.2?}", out.detail))
}

fn suite_line(r: &SuiteReport) -> String {
    let violations: usize = r.bounds.iter().map(|b| b.violations).sum();
    format!(
        "{} on {} ratios: {violations} violations, min slack {:.3e}/{:.3e}",
        r.suite, r.n_samples, r.min_slack_left, r.min_slack_right
    )
}

fn bulk_verification() -> Outcome {
    let cfg = SweepConfig::with_samples(1_000_000);
    let t1 = theorem_1_1_verify(&cfg).expect("valid config");
    let t2 = theorem_1_2_verify(&cfg).expect("valid config");
    let zero = |r: &SuiteReport| r.pass && r.bounds.iter().all(|b| b.violations == 0);
    outcome(zero(&t1) && zero(&t2), format!("{}; {}", suite_line(&t1), suite_line(&t2)))
}

fn sharpness() -> Outcome {
    let base = SweepConfig::with_samples(200_000);
    let lower_violations = |suite: fn(&SweepConfig) -> seiffert_core::Result<SuiteReport>, shift: f64| {
        let cfg = SweepConfig {
            lower_shift: shift,
            ..base
        };
        let r = suite(&cfg).expect("valid config");
        r.bounds.iter().find(|b| b.name.ends_with("lower")).map(|b| b.violations).unwrap_or(0)
    };
    let t1_out = lower_violations(theorem_1_1_verify, 1e-4);
    let t1_in = lower_violations(theorem_1_1_verify, -1e-4);
    let t2_out = lower_violations(theorem_1_2_verify, 1e-6);
    let t2_in = lower_violations(theorem_1_2_verify, -1e-6);
    outcome(
        t1_out > 0 && t1_in == 0 && t2_out > 0 && t2_in == 0,
        format!(
            "lambda+1e-4: {t1_out} violations, lambda-1e-4: {t1_in}; alpha1+1e-6: {t2_out}, alpha1-1e-6: {t2_in}"
        ),
    )
}

fn proof_structure() -> Outcome {
    let cert = certify_lambda_chain(10_000).expect("chain certifies");
    let cp = &cert.critical_points;
    let residual = cp.residuals.iter().copied().fold(0.0, f64::max);
    let pass = cp.ordered() && residual < 1e-10 && cert.negative_on_grid && cert.f_at_1e8.abs() <= 1e-6;
    outcome(
        pass,
        format!(
            "t0..t3 = {:.6}, {:.6}, {:.6}, {:.6}; max residual {residual:.2e}; max f on grid {:.3e}; f(1e8) = {:.3e}",
            cp.t0, cp.t1, cp.t2, cp.t3, cert.max_f_on_grid, cert.f_at_1e8
        ),
    )
}

fn p_one_identity() -> Outcome {
    let fam = AuxFamily::new(1.0).expect("p = 1 is admissible");
    let mut worst: f64 = 0.0;
    let mut points: Vec<f64> = (1..=15).map(|k| 1.0 + 10f64.powi(-k)).collect();
    points.extend((1..=100_000).map(|i| 1.0 + 99.0 * i as f64 / 100_000.0));
    for t in points {
        let exact = (t - 1.0).powi(4);
        let got = fam.f_chain(t, 1).expect("t >= 1");
        worst = worst.max((got - exact).abs() / exact);
    }
    outcome(worst < 1e-13, format!("max relative error {worst:.3e}"))
}

fn series_suite() -> Outcome {
    let oracle = Oracle::new(40);
    let n = 2000;
    let mut worst_cot: f64 = 0.0;
    let mut worst_csc: f64 = 0.0;
    for i in 0..=n {
        let x = 0.01 + (FRAC_PI_2 - 0.01) * i as f64 / n as f64;
        let cot = cot_series(x, 40).expect("in domain");
        let csc = csc2_series(x, 40).expect("in domain");
        worst_cot = worst_cot.max(oracle.cot(x).expect("in domain").distance_to(cot));
        worst_csc = worst_csc.max(oracle.csc2(x).expect("in domain").distance_to(csc));
    }
    let series_ok = worst_cot <= 1e-12 && worst_csc <= 1e-12;

    let signs_ok = (1..=N_MAX).all(|n| {
        let b = bernoulli_even(n).expect("in range");
        if n % 2 == 1 {
            b.is_positive()
        } else {
            b.is_negative()
        }
    });

    let mut worst_zeta: f64 = 0.0;
    for q in 1..=5 {
        let m = 100_000u32;
        let s = 2 * q as i32;
        let partial: f64 = (1..=m).rev().map(|k| (k as f64).powi(-s)).sum();
        // Euler-Maclaurin tail of sum_{k>m} k^-s
        let mf = m as f64;
        let tail = mf.powi(1 - s) / (s as f64 - 1.0) - 0.5 * mf.powi(-s) + s as f64 / 12.0 * mf.powi(-s - 1);
        worst_zeta = worst_zeta.max((zeta_even(q).expect("in range") - (partial + tail)).abs());
    }
    let zeta_ok = worst_zeta <= 1e-10;

    let identity_ok = (1..=40).all(|n| {
        let ratio = SeriesKind::Ratio.coefficient(n).expect("in range");
        let combined = SeriesKind::Cot.coefficient(n).expect("in range") - SeriesKind::Csc2.coefficient(n).expect("in range");
        ratio == combined && ratio == ratio_coefficient_direct(n).expect("in range")
    });

    outcome(
        series_ok && signs_ok && zeta_ok && identity_ok,
        format!(
            "cot err {worst_cot:.2e}, csc2 err {worst_csc:.2e}, sign law {signs_ok}, zeta err {worst_zeta:.2e}, coefficient identity {identity_ok}"
        ),
    )
}

fn reparametrization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut worst_x = 0.0;
    let mut drawn = 0;
    while drawn < 10_000 {
        let x: f64 = rng.random_range(1.0..1e6);
        if x <= 1.0 {
            continue;
        }
        drawn += 1;
        let t = t_from_ratio(x);
        let raw = raw_mean_ratio(PositivePair::from_ratio(x).expect("positive")).expect("off diagonal");
        let tf = ratio_ta_ca(t).expect("t in (0, 1)");
        let th = theta_form(t.atan()).expect("theta in (0, pi/4)");
        let rel = |u: f64, v: f64| (u - v).abs() / u.abs().max(v.abs());
        let e = rel(raw, tf).max(rel(raw, th)).max(rel(tf, th));
        if e > worst {
            worst = e;
            worst_x = x;
        }
    }
    outcome(worst <= 1e-12, format!("max pairwise relative gap {worst:.3e} at x = {worst_x:.6}"))
}

fn stability() -> Outcome {
    let oracle = Oracle::new(100);
    let mut worst: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    for &scale in &[1.0, 3.7, 1e-3, 1e6] {
        let b = scale;
        let a = scale * (1.0 + 1e-12) / (1.0 - 1e-12);
        let pair = PositivePair::new(a, b).expect("positive");
        let got = seiffert_t(pair);
        let want = oracle.seiffert(a, b).to_f64();
        worst = worst.max((got - want).abs() / want);
        worst_t = worst_t.max(pair.relative_difference());
    }
    outcome(
        worst <= 1e-12 && (worst_t - 1e-12).abs() < 1e-15,
        format!("|a-b|/(a+b) = {worst_t:.3e}, max relative error {worst:.3e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lambda recovery", lambda_recovery),
        ("ratio extremes and monotonicity", ratio_extremes),
        ("bulk verification of both double inequalities", bulk_verification),
        ("sharpness of the lower constants", sharpness),
        ("auxiliary chain at p = lambda", proof_structure),
        ("quartic identity at p = 1", p_one_identity),
        ("series suite", series_suite),
        ("reparametrization equivalence", reparametrization),
        ("near-diagonal stability", stability),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {}", i + 1, out.detail);
        if !out.pass {
            failures += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
