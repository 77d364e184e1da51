//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always reach the output; exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hardy_sums::cfe::{expand_theta, length_parity};
use hardy_sums::cli::sweeps::{
    default_scale, generator_values, sweep_joint, sweep_dedekind, sweep_reciprocity, sweep_fast_vs_direct,
};
use hardy_sums::cli::table::{verify_table, REFERENCE_ROWS};
use hardy_sums::cli::Check;
use hardy_sums::density::{construct_joint, construct_s, construct_s4, DensityWitness};
use hardy_sums::qverify::{default_basepoints, run_suite, SeriesParams, Suite, Verifier};
use hardy_sums::sums::{hardy_s4_direct, hardy_s4_from_cfe, hardy_s_direct, hardy_s_from_cfe};
use hardy_sums::{CfKind, ContinuedFraction, Parity, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn from_checks(checks: &[Check]) -> Outcome {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let cases: usize = checks.iter().map(|c| c.cases).sum();
    match failed.first() {
        None => Outcome { pass: true, detail: format!("{cases} cases") },
        Some(c) => Outcome {
            pass: false,
            detail: format!("{} failed, first: {}", c.name, c.error.clone().unwrap_or_default()),
        },
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took >= limit {
            out.pass = false;
            out.detail = format!("{} but exceeded {:.0?}", out.detail, limit);
        }
    }
    (out, took)
}

fn table() -> Outcome {
    let mut out = from_checks(&verify_table().expect("table runs"));
    // published sums against plain summation, independent of any expansion
    for &(d, c, _, s, _, s4) in REFERENCE_ROWS.iter() {
        let direct_s = ((d + c) % 2 == 1).then(|| hardy_s_direct(d, c).unwrap().to_string());
        let direct_s4 = (d % 2 != 0).then(|| hardy_s4_direct(d, c).unwrap().to_string());
        if direct_s.as_deref().unwrap_or("x") != s || direct_s4.as_deref().unwrap_or("x") != s4 {
            out.pass = false;
            out.detail = format!("({d}, {c}): direct sums {direct_s:?}, {direct_s4:?}, published {s}, {s4}");
        }
    }
    out
}

fn fast_vs_direct() -> Outcome {
    from_checks(&sweep_fast_vs_direct(500).expect("sweep runs"))
}

fn joint() -> Outcome {
    from_checks(&sweep_joint(500).expect("sweep runs"))
}

fn reciprocity() -> Outcome {
    from_checks(&sweep_reciprocity(300, 201).expect("sweep runs"))
}

fn dedekind() -> Outcome {
    let good = sweep_dedekind(200, &default_scale()).expect("sweep runs");
    let verbatim = sweep_dedekind(200, &Rational::one()).expect("sweep runs");
    let mut out = from_checks(&good);
    let negative_fails = verbatim.iter().any(|c| !c.pass);
    out.detail = format!("{}; recursion without 1/12: {} failures", out.detail, verbatim[0].failures);
    out.pass &= negative_fails;
    out
}

fn witness_ok(w: &DensityWitness, x: &Rational, eps: &Rational, s: Option<i64>, s4: Option<i64>) -> Result<(), String> {
    let value = Rational::new(w.d.clone(), w.c.clone()).map_err(|e| e.to_string())?;
    let distance = (x - &value).abs();
    if distance != w.distance || distance >= *eps {
        return Err(format!("{value} is {distance} from {x}"));
    }
    let (rs, rs4) = match (w.d.to_i64(), w.c.to_i64()) {
        (Some(d), Some(c)) if c <= 1_000_000 => (
            s.map(|_| hardy_s_direct(d, c).map(BigInt::from)),
            s4.map(|_| hardy_s4_direct(d, c).map(BigInt::from)),
        ),
        _ => (
            s.map(|_| hardy_s_from_cfe(w.d.clone(), w.c.clone())),
            s4.map(|_| hardy_s4_from_cfe(w.d.clone(), w.c.clone())),
        ),
    };
    let rs = rs.transpose().map_err(|e| e.to_string())?;
    let rs4 = rs4.transpose().map_err(|e| e.to_string())?;
    if rs != s.map(BigInt::from) || rs4 != s4.map(BigInt::from) {
        return Err(format!("{value}: sums {rs:?}, {rs4:?}, wanted {s:?}, {s4:?}"));
    }
    Ok(())
}

fn density() -> Outcome {
    let eps = Rational::new(1, 1000).unwrap();
    let mut cases = 0;
    let mut failures = Vec::new();
    for num in (-9..=9).step_by(2) {
        let x = Rational::new(num, 10).unwrap();
        for m in -5..=5i64 {
            cases += 2;
            let r = construct_s(&x, &eps, m).map_err(|e| e.to_string());
            if let Err(e) = r.and_then(|w| witness_ok(&w, &x, &eps, Some(m), None)) {
                failures.push(format!("S = {m} near {x}: {e}"));
            }
            let r = construct_s4(&x, &eps, m).map_err(|e| e.to_string());
            if let Err(e) = r.and_then(|w| witness_ok(&w, &x, &eps, None, Some(m))) {
                failures.push(format!("S4 = {m} near {x}: {e}"));
            }
            for m2 in (-5..=5i64).filter(|v| v % 2 != 0) {
                if m % 2 != 0 {
                    continue;
                }
                cases += 1;
                let r = construct_joint(&x, &eps, m, m2).map_err(|e| e.to_string());
                if let Err(e) = r.and_then(|w| witness_ok(&w, &x, &eps, Some(m - m2), Some(m2))) {
                    failures.push(format!("S + S4 = {m}, S4 = {m2} near {x}: {e}"));
                }
            }
        }
    }
    match failures.first() {
        None => Outcome { pass: true, detail: format!("{cases} witnesses") },
        Some(f) => Outcome { pass: false, detail: format!("{} of {cases} failed, first: {f}", failures.len()) },
    }
}

fn qseries() -> Outcome {
    let params = SeriesParams::new(200, 64, 1e-7).unwrap();
    let verifier = Verifier::new(params.clone());
    let zs = default_basepoints();
    let mut details = Vec::new();
    let mut pass = true;
    let suites = [
        Suite::E2Quasimodular,
        Suite::EtaTransform,
        Suite::ThetaTransform,
        Suite::Theta4Transform,
        Suite::CycleIntegralE2,
        Suite::CocycleTheta,
    ];
    for (i, suite) in suites.into_iter().enumerate() {
        let r = run_suite(suite, &verifier, &zs, 50, 7 + i as u64).expect("suite runs");
        pass &= r.pass() && r.max_error < 1e-7 && r.words >= 50;
        details.push(format!("{} {:.1e}", r.suite, r.max_error));
    }
    let gens = generator_values(&params).expect("generator values");
    pass &= gens.pass;
    details.push(format!("generator values {:.1e}", gens.max_abs_error.unwrap_or(f64::NAN)));
    Outcome { pass, detail: details.join(", ") }
}

fn nonzero(rng: &mut ChaCha8Rng, max: i64) -> i64 {
    let v = rng.random_range(1..=max);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

fn theta_of(halves: &[i64]) -> ContinuedFraction {
    ContinuedFraction::from_i64(CfKind::ThetaNeg, 0, &halves.iter().map(|c| 2 * c).collect::<Vec<_>>()).unwrap()
}

/// `[a₀; a₁, …, aₙ]` with positive signs, or `None` on a zero denominator.
fn positive_cf_value(head: i64, qs: &[i64]) -> Option<Rational> {
    let mut acc: Option<Rational> = None;
    for &q in qs.iter().rev() {
        let t = match acc {
            None => Rational::from_integer(q),
            Some(r) => &Rational::from_integer(q) + &r.recip().ok()?,
        };
        if t.is_zero() {
            return None;
        }
        acc = Some(t);
    }
    Some(match acc {
        None => Rational::from_integer(head),
        Some(r) => &Rational::from_integer(head) + &r.recip().ok()?,
    })
}

fn properties() -> Outcome {
    const CASES: usize = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut failures: Vec<String> = Vec::new();
    let mut counts = [0usize; 5];
    while counts[0] < CASES {
        let len = rng.random_range(1..=12);
        let halves: Vec<i64> = (0..len).map(|_| nonzero(&mut rng, 20)).collect();
        let conv = theta_of(&halves).convergents().unwrap();
        let p = conv.pairs();
        let big = |v: i64| BigInt::from(v);
        let mut ok = p[1] == (big(-1), big(2 * halves[0]));
        if len >= 2 {
            ok &= p[2] == (big(-2 * halves[1]), big(4 * halves[0] * halves[1] - 1));
        }
        for k in 3..=len {
            let q = big(2 * halves[k - 1]);
            ok &= p[k].0 == &q * &p[k - 1].0 - &p[k - 2].0 && p[k].1 == &q * &p[k - 1].1 - &p[k - 2].1;
        }
        counts[0] += 1;
        if !ok {
            failures.push(format!("recurrence at {halves:?}"));
        }
        let mono = (1..=len).all(|k| p[k - 1].0.abs() < p[k].0.abs() && p[k - 1].1.abs() < p[k].1.abs());
        counts[1] += 1;
        if !mono {
            failures.push(format!("growth at {halves:?}"));
        }
        let det = (1..=len).all(|k| &p[k].0 * &p[k - 1].1 - &p[k - 1].0 * &p[k].1 == big(-1));
        counts[2] += 1;
        if !det {
            failures.push(format!("determinant at {halves:?}"));
        }
    }
    while counts[3] < CASES {
        let n = rng.random_range(0..=9usize);
        let head = 2 * rng.random_range(-5..=5i64);
        let qs: Vec<i64> = (1..=n)
            .map(|i| if i % 2 == 0 { 2 * nonzero(&mut rng, 5) } else { nonzero(&mut rng, 9) })
            .collect();
        let Some(v) = positive_cf_value(head, &qs) else { continue };
        counts[3] += 1;
        let expected = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        let big_qs: Vec<BigInt> = qs.iter().map(|&q| BigInt::from(q)).collect();
        let reported = length_parity(&BigInt::from(head), &big_qs);
        if Parity::of(v.numer()) != expected || reported.as_ref().ok() != Some(&expected) {
            failures.push(format!("parity of [{head}; {qs:?}] = {v}"));
        }
    }
    // every expansion with quotients in ±{2, 4, 6, 8} and length ≤ 5
    let choices = [-8i64, -6, -4, -2, 2, 4, 6, 8];
    let mut seen: HashMap<Rational, Vec<i64>> = HashMap::new();
    let mut stack: Vec<Vec<i64>> = choices.iter().map(|&c| vec![c]).collect();
    while let Some(qs) = stack.pop() {
        let cf = ContinuedFraction::from_i64(CfKind::ThetaNeg, 0, &qs).unwrap();
        let v = cf.value().unwrap();
        counts[4] += 1;
        if let Some(other) = seen.insert(v.clone(), qs.clone()) {
            failures.push(format!("{v} has expansions {other:?} and {qs:?}"));
        }
        match expand_theta(&v) {
            Ok(e) if e == cf => {}
            other => failures.push(format!("{v}: expected {cf}, expansion gave {other:?}")),
        }
        if qs.len() < 5 {
            for &c in &choices {
                let mut next = qs.clone();
                next.push(c);
                stack.push(next);
            }
        }
    }
    let pass = failures.is_empty() && counts.iter().all(|&c| c >= CASES);
    let detail = format!(
        "recurrence {}, growth {}, determinant {}, parity {}, uniqueness {}{}",
        counts[0],
        counts[1],
        counts[2],
        counts[3],
        counts[4],
        failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
    );
    Outcome { pass, detail }
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 8] = [
        ("table reproduction", Some(Duration::from_secs(1)), table),
        ("fast sums equal direct sums, c <= 500", Some(Duration::from_secs(60)), fast_vs_direct),
        ("joint values, even c <= 500", None, joint),
        ("reciprocity laws", None, reciprocity),
        ("dedekind sums", None, dedekind),
        ("density witnesses, eps = 1/1000", Some(Duration::from_secs(30)), density),
        ("q-series transformation laws", None, qseries),
        ("continued fraction properties", None, properties),
    ];
    let mut all = true;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (out, took) = timed(limit, f);
        all &= out.pass;
        println!(
            "criterion {}: {} {name} ({}, {:.2}s)",
            i + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
