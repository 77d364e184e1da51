use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{Mat2, Rational};
use crate::error::Result;
use crate::qverify::{default_basepoints, run_suite, HalfPlanePoint, SeriesParams, Suite, Verifier};
use crate::sums::{
    check_s_reciprocity, dedekind_cotangent_numeric, dedekind_hickerson, dedekind_recursive_scaled,
    hardy_joint, hardy_joint_direct, hardy_s4_direct, hardy_s4_from_cfe, hardy_s_direct,
    hardy_s_from_cfe, s4_reciprocity_rhs,
};

use super::Check;

/// Case count and failure messages of one sweep.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    fn check(&self, name: &str) -> Check {
        Check::from_failures(name, self.cases, &self.failures)
    }
}

fn coprime(d: i64, c: i64) -> bool {
    d.gcd(&c) == 1
}

/// Fast evaluators against direct summation for every coprime `(d, c)` with
/// `1 ≤ c ≤ max_c` and `−c ≤ d ≤ 2c` meeting the parity condition.
pub fn sweep_fast_vs_direct(max_c: i64) -> Result<Vec<Check>> {
    let (mut s, mut s4) = (Tally::default(), Tally::default());
    for c in 1..=max_c {
        for d in -c..=2 * c {
            if !coprime(d, c) {
                continue;
            }
            if (c + d) % 2 != 0 {
                let fast = hardy_s_from_cfe(d, c)?;
                let direct = hardy_s_direct(d, c)?;
                s.record(fast == BigInt::from(direct), || format!("S({d}, {c}): {fast} vs {direct}"));
            }
            if d % 2 != 0 {
                let fast = hardy_s4_from_cfe(d, c)?;
                let direct = hardy_s4_direct(d, c)?;
                s4.record(fast == BigInt::from(direct), || format!("S4({d}, {c}): {fast} vs {direct}"));
            }
        }
    }
    Ok(vec![s.check("fast_vs_direct/s"), s4.check("fast_vs_direct/s4")])
}

/// `S + S₄` from the theta expansion, from the two sums and from the odd-`k`
/// direct sum, for even `c ≤ max_c` and odd `0 < d < c`.
pub fn sweep_joint(max_c: i64) -> Result<Vec<Check>> {
    let mut t = Tally::default();
    for c in (2..=max_c).step_by(2) {
        for d in (1..c).step_by(2) {
            if !coprime(d, c) {
                continue;
            }
            let j = hardy_joint(d, c)?;
            let (s, s4, half) = (hardy_s_direct(d, c)?, hardy_s4_direct(d, c)?, hardy_joint_direct(d, c)?);
            let ok = j.s == BigInt::from(s) && j.s4 == BigInt::from(s4) && j.sum == BigInt::from(s + s4) && s + s4 == half;
            t.record(ok, || format!("({d}, {c}): {j:?} vs S = {s}, S4 = {s4}, odd-k sum {half}"));
        }
    }
    Ok(vec![t.check("joint")])
}

/// Reciprocity of `S` for coprime `0 < d < c ≤ max_c_s` of opposite parity,
/// with signs flipped and arguments swapped, and of `S₄` for odd coprime
/// `0 < d < c ≤ max_c_s4`. Both sides of each law use direct sums.
pub fn sweep_reciprocity(max_c_s: i64, max_c_s4: i64) -> Result<Vec<Check>> {
    let mut s = Tally::default();
    for c in 2..=max_c_s {
        for d in 1..c {
            if !coprime(d, c) || (c + d) % 2 == 0 {
                continue;
            }
            let direct = hardy_s_direct(d, c)? + hardy_s_direct(c, d)?;
            s.record(direct == 1, || format!("S({d}, {c}) + S({c}, {d}) = {direct}"));
            for (x, y) in [(d, c), (c, d), (-d, c), (d, -c), (-d, -c), (-c, d)] {
                s.record(check_s_reciprocity(x, y)?, || format!("signed reciprocity at ({x}, {y})"));
            }
        }
    }
    let mut s4 = Tally::default();
    for c in (3..=max_c_s4).step_by(2) {
        for d in (1..c).step_by(2) {
            if !coprime(d, c) {
                continue;
            }
            let lhs = hardy_s4_direct(d, c)? + hardy_s4_direct(c, d)?;
            let rhs = s4_reciprocity_rhs(c, d)?;
            s4.record(BigInt::from(lhs) == rhs, || format!("S4({d}, {c}) + S4({c}, {d}) = {lhs}, rhs {rhs}"));
        }
    }
    Ok(vec![s.check("reciprocity/s"), s4.check("reciprocity/s4")])
}

/// Recursive against Hickerson's formula, and both against the cotangent
/// sum within `1e−9`, for coprime `0 < d < c ≤ max_c`. `scale` replaces the
/// `1/12` of the recursion.
pub fn sweep_dedekind(max_c: i64, scale: &Rational) -> Result<Vec<Check>> {
    let mut t = Tally::default();
    for c in 2..=max_c {
        for d in 1..c {
            if !coprime(d, c) {
                continue;
            }
            let rec = dedekind_recursive_scaled(d, c, scale)?;
            let hick = dedekind_hickerson(d, c)?;
            let cot = dedekind_cotangent_numeric(d, c)?;
            let ok = rec == hick && (rec.to_f64() - cot).abs() < 1e-9 && (hick.to_f64() - cot).abs() < 1e-9;
            t.record(ok, || format!("s({d}, {c}): recursive {rec}, hickerson {hick}, cotangent {cot:.12}"));
        }
    }
    Ok(vec![t.check("dedekind")])
}

pub fn default_scale() -> Rational {
    Rational::new(1, 12).expect("nonzero")
}

/// Settings shared by the numeric suites.
#[derive(Clone, Debug)]
pub struct NumericRun {
    pub params: SeriesParams,
    pub words: usize,
    pub seed: u64,
    pub basepoints: Vec<HalfPlanePoint>,
}

impl NumericRun {
    pub fn new(params: SeriesParams) -> Self {
        NumericRun { params, words: 50, seed: 2024, basepoints: default_basepoints() }
    }
}

fn suite_checks(run: &NumericRun, prefix: &str, suites: &[Suite]) -> Result<Vec<Check>> {
    let verifier = Verifier::new(run.params.clone());
    suites
        .iter()
        .enumerate()
        .map(|(i, &suite)| {
            let r = run_suite(suite, &verifier, &run.basepoints, run.words, run.seed + i as u64)?;
            let failures: Vec<String> = r.first_failure.iter().cloned().collect();
            let mut check = Check::from_failures(&format!("{prefix}/{}", r.suite), r.cases, &failures);
            check.failures = r.failures;
            check.pass = r.pass();
            check.max_abs_error = Some(r.max_error);
            Ok(check)
        })
        .collect()
}

fn pointwise(name: &str, reports: Vec<crate::qverify::CocycleReport>) -> Check {
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("lhs {} rhs {} error {:.3e}", r.lhs, r.rhs, r.abs_error))
        .collect();
    let mut check = Check::from_failures(name, reports.len(), &failures);
    check.max_abs_error = Some(reports.iter().map(|r| r.abs_error).fold(0.0, f64::max));
    check
}

/// Transformation laws of `E₂`, `log η`, `log θ` and `log θ₄` over random
/// words, plus the pointwise log-derivative and doubling identities.
pub fn run_qseries(run: &NumericRun) -> Result<Vec<Check>> {
    let mut checks = suite_checks(
        run,
        "qseries",
        &[Suite::E2Quasimodular, Suite::EtaTransform, Suite::ThetaTransform, Suite::Theta4Transform],
    )?;
    let v = Verifier::new(run.params.clone());
    let deriv = run.basepoints.iter().map(|&z| v.check_log_derivative(z)).collect::<Result<_>>()?;
    checks.push(pointwise("qseries/log_derivative", deriv));
    let doubling = run.basepoints.iter().map(|&z| v.check_doubling(z)).collect::<Result<_>>()?;
    checks.push(pointwise("qseries/doubling", doubling));
    Ok(checks)
}

/// `φ(T²) = φ(V) = 2` and `ψ(S) = 0`, each within `1e−8`, with `φ(V)` taken
/// along `−1 + i → 1 + i`.
pub fn generator_values(params: &SeriesParams) -> Result<Check> {
    let v = Verifier::new(params.clone());
    let z = Complex64::new(0.3, 1.1);
    let t2 = Mat2::t_pow(&BigInt::from(2));
    let phi_t2 = v.phi(&t2, z)?;
    let phi_v = v.integral(|w| v.series().l(w), Complex64::new(-1.0, 1.0), Complex64::new(1.0, 1.0))?;
    let psi_s = v.psi(&Mat2::s(), z)?;
    let values = [("phi(T^2)", phi_t2, 2.0), ("phi(V)", phi_v, 2.0), ("psi(S)", psi_s, 0.0)];
    let failures: Vec<String> = values
        .iter()
        .filter(|(_, got, want)| (got - want).norm() >= 1e-8)
        .map(|(name, got, want)| format!("{name} = {got}, expected {want}"))
        .collect();
    let mut check = Check::from_failures("cocycle/generator_values", values.len(), &failures);
    check.max_abs_error = Some(values.iter().map(|(_, g, w)| (g - w).norm()).fold(0.0, f64::max));
    Ok(check)
}

/// Cycle integrals of `E₂`, the two cocycles, the log/integral identity,
/// additivity, basepoint independence and the generator values.
pub fn run_cocycle(run: &NumericRun) -> Result<Vec<Check>> {
    let mut checks = suite_checks(
        run,
        "cocycle",
        &[
            Suite::CycleIntegralE2,
            Suite::CocycleTheta,
            Suite::CocycleTheta4,
            Suite::LogIntegral,
            Suite::Homomorphism,
            Suite::BasepointIndependence,
        ],
    )?;
    checks.push(generator_values(&run.params)?);
    Ok(checks)
}
