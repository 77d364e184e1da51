//! Fractions `d/c` close to a target with prescribed Hardy sums.
//!
//! Each construction starts from a theta expansion near the target and
//! appends partial quotients whose effect on the sums is known, choosing
//! each new quotient just large enough that the value moves by less than a
//! fixed share of `ε`. Every witness is re-checked before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{serialize_bigint, Rational};
use crate::cfe::{expand_gamma02, expand_theta, ContinuedFraction};
use crate::error::{Error, Result};
use crate::sums::{hardy_s4_from_cfe, hardy_s_from_cfe, s_from_theta_quotients};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    /// `S(d, c) = m`
    S { m: i64 },
    /// `S₄(d, c) = m`
    S4 { m: i64 },
    /// `S + S₄ = m1` (even) and `S₄ = m2` (odd)
    Joint { m1: i64, m2: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityRequest {
    pub x: Rational,
    pub epsilon: Rational,
    pub target: Target,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityWitness {
    #[serde(serialize_with = "serialize_bigint")]
    pub d: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub c: BigInt,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_bigint")]
    pub s: Option<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_bigint")]
    pub s4: Option<BigInt>,
    #[serde(serialize_with = "display")]
    pub expansion: ContinuedFraction,
    /// `|x − d/c|`
    #[serde(serialize_with = "display")]
    pub distance: Rational,
}

fn opt_bigint<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_bigint(v, s),
        None => s.serialize_none(),
    }
}

fn display<T: std::fmt::Display, S: serde::Serializer>(
    x: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl DensityWitness {
    pub fn value(&self) -> Rational {
        Rational::new(self.d.clone(), self.c.clone()).expect("c > 0")
    }
}

/// Negative continued fraction `⟦q₁, …, q_k⟧` (zero head) with its
/// convergents `P_k/Q_k` kept alongside.
#[derive(Clone, Debug)]
struct Builder {
    quotients: Vec<BigInt>,
    // (P_{k−1}, Q_{k−1}) and (P_k, Q_k)
    prev: (BigInt, BigInt),
    last: (BigInt, BigInt),
}

impl Builder {
    fn new() -> Self {
        Builder {
            quotients: Vec::new(),
            prev: (BigInt::one(), BigInt::zero()),
            last: (BigInt::zero(), BigInt::one()),
        }
    }

    fn push(&mut self, q: BigInt) {
        let p = &q * &self.last.0 - &self.prev.0;
        let d = &q * &self.last.1 - &self.prev.1;
        self.prev = std::mem::replace(&mut self.last, (p, d));
        self.quotients.push(q);
    }

    fn value(&self) -> Rational {
        Rational::new(self.last.0.clone(), self.last.1.clone()).expect("Q_k is never zero")
    }

    /// Pushes `q` and returns how far the value moved.
    fn push_step(&mut self, q: BigInt) -> Rational {
        let before = self.value();
        self.push(q);
        (&self.value() - &before).abs()
    }
}

fn positive_eps(eps: &Rational) -> Result<()> {
    if eps.signum() <= 0 {
        return Err(Error::OutOfRange(format!("epsilon must be positive, got {eps}")));
    }
    Ok(())
}

/// Splits `x = 2k + y` with `y ∈ (−1, 1]`.
fn shift(x: &Rational) -> (BigInt, Rational) {
    let k = -Rational::new(1, 2).map(|h| &h * &(&Rational::one() - x)).expect("nonzero").floor();
    let y = x - &Rational::from_integer(&k * 2);
    (k, y)
}

fn admissible_theta(y: &Rational) -> bool {
    (y.numer() + y.denom()).is_odd()
}

fn ceil_above(r: &Rational) -> BigInt {
    // smallest integer strictly greater than r
    r.floor() + 1
}

fn assert_step(step: &Rational, budget: &Rational, what: &str) -> Result<()> {
    if step >= budget {
        return Err(Error::Internal(format!("{what} moved the value by {step}, budget {budget}")));
    }
    Ok(())
}

/// Theta expansion of `y ∈ (−1, 1]` itself when admissible, otherwise the
/// theta algorithm stopped at the first convergent within `tol`. A quotient
/// tie at an odd integer `m` is broken away from zero, which turns the
/// inadmissible tail into an infinite run of `∓2`.
fn theta_seed(y: &Rational, tol: &Rational) -> Result<Builder> {
    let mut b = Builder::new();
    if admissible_theta(y) && y.abs() < Rational::one() {
        let cf = expand_theta(y)?;
        debug_assert!(cf.head().is_zero());
        for q in cf.quotients() {
            b.push(q.clone());
        }
        return Ok(b);
    }
    let mut rem = y.clone();
    while (&b.value() - y).abs() >= *tol {
        let r = -rem.recip()?;
        let q = if r.is_integer() && r.numer().is_odd() {
            r.numer() + r.signum()
        } else {
            r.nearest_even()
        };
        rem = &r - &Rational::from_integer(q.clone());
        b.push(q);
    }
    Ok(b)
}

/// Appends `|M|` quotients of sign `sign(M)`, taking `S` from `S_seed` to
/// `S_seed − M`. Each moves the value by less than `budget / |M|`.
fn shift_s(b: &mut Builder, big_m: i64, budget: &Rational) -> Result<()> {
    if big_m == 0 {
        return Ok(());
    }
    let per_step = budget / &Rational::from_integer(big_m.abs());
    let inv = per_step.recip()?;
    for _ in 0..big_m.abs() {
        let qk = b.last.1.abs();
        let qk1 = b.prev.1.abs();
        // 1/(|Q_k| (2c|Q_k| − |Q_{k−1}|)) < per_step
        let bound = &(&inv + &Rational::from_integer(&qk * &qk1))
            / &Rational::from_integer(&qk * &qk * 2);
        let c = ceil_above(&bound).max(BigInt::one());
        let step = b.push_step(c * big_m.signum() * 2);
        assert_step(&step, &per_step, "appended quotient")?;
    }
    Ok(())
}

fn s_of(b: &Builder) -> i64 {
    let s = s_from_theta_quotients(&b.quotients);
    i64::try_from(s).expect("S is bounded by the expansion length")
}

fn build_s(y: &Rational, eps: &Rational, m: i64) -> Result<Builder> {
    let half = eps / &Rational::from_integer(2);
    let mut b = theta_seed(y, &half)?;
    let big_m = s_of(&b) - m;
    shift_s(&mut b, big_m, &half)?;
    let s = s_of(&b);
    if s != m {
        return Err(Error::Internal(format!("S reached {s} instead of {m}")));
    }
    if m.is_odd() != b.quotients.len().is_odd() {
        return Err(Error::Internal("expansion length parity differs from S".into()));
    }
    Ok(b)
}

/// Minimal `c ≥ 1` with `1/(2c|Q_n| − |Q_{n−1}|) < budget`.
fn big_quotient_half(b: &Builder, budget: &Rational) -> Result<BigInt> {
    let qn = b.last.1.abs();
    let qn1 = b.prev.1.abs();
    let bound = &(&budget.recip()? + &Rational::from_integer(qn1)) / &Rational::from_integer(qn * 2);
    Ok(ceil_above(&bound).max(BigInt::one()))
}

fn s4_of(b: &Builder) -> Result<i64> {
    let v = b.value();
    let s4 = hardy_s4_from_cfe(v.numer().clone(), v.denom().clone())?;
    i64::try_from(s4).map_err(|_| Error::Internal("S4 out of range".into()))
}

fn build_joint(y: &Rational, eps: &Rational, m1: i64, m2: i64) -> Result<Builder> {
    if m1.is_odd() || m2.is_even() {
        return Err(Error::OutOfRange(format!(
            "joint targets need m1 even and m2 odd, got m1 = {m1}, m2 = {m2}"
        )));
    }
    let third = eps / &Rational::from_integer(3);
    let mut b = build_s(y, &third, m1 - m2)?;
    let s_before = s_of(&b);
    let s4_before = s4_of(&b)?;
    let big_m = (s_before + s4_before - m1) / 2;
    if big_m != 0 {
        let c = big_quotient_half(&b, &third)?;
        let step = b.push_step(-c * big_m.signum() * 2);
        assert_step(&step, &third, "large quotient")?;
        let step = b.push_step(BigInt::from(2 * big_m));
        assert_step(&step, &third, "closing quotient")?;
    }
    if s_of(&b) != s_before {
        return Err(Error::Internal("appending changed S".into()));
    }
    let s4 = s4_of(&b)?;
    if s4 != s4_before - 2 * big_m || s4 != m2 {
        return Err(Error::Internal(format!(
            "S4 went from {s4_before} to {s4}, expected {m2} (M = {big_m})"
        )));
    }
    Ok(b)
}

fn build_s4(y: &Rational, eps: &Rational, m: i64) -> Result<Builder> {
    if m.is_odd() {
        return build_joint(y, eps, m + 1, m);
    }
    let third = eps / &Rational::from_integer(3);
    let mut b = build_joint(y, &third, m + 2, m + 1)?;
    // ⟦…, −2c, 1⟧ lowers S₄ by one
    let mut c = big_quotient_half(&b, &third)?;
    loop {
        let mut trial = b.clone();
        let first = trial.push_step(-&c * 2);
        let second = trial.push_step(BigInt::one());
        if first < third && second < third {
            b = trial;
            break;
        }
        c += 1;
    }
    let s4 = s4_of(&b)?;
    if s4 != m {
        return Err(Error::Internal(format!("S4 reached {s4} instead of {m}")));
    }
    Ok(b)
}

fn finish(x: &Rational, eps: &Rational, k: &BigInt, b: &Builder, target: Target) -> Result<DensityWitness> {
    let v = &b.value() + &Rational::from_integer(k * 2);
    let distance = (x - &v).abs();
    if distance >= *eps {
        return Err(Error::Internal(format!("witness {v} is {distance} from {x}")));
    }
    let (d, c) = (v.numer().clone(), v.denom().clone());
    let (s, s4, expansion) = match target {
        Target::S { m } => {
            let s = hardy_s_from_cfe(d.clone(), c.clone())?;
            if s != BigInt::from(m) {
                return Err(Error::Internal(format!("S({d}, {c}) = {s}, wanted {m}")));
            }
            (Some(s), None, expand_theta(&v)?)
        }
        Target::S4 { m } => {
            let s4 = hardy_s4_from_cfe(d.clone(), c.clone())?;
            if s4 != BigInt::from(m) {
                return Err(Error::Internal(format!("S4({d}, {c}) = {s4}, wanted {m}")));
            }
            (None, Some(s4), expand_gamma02(&v)?)
        }
        Target::Joint { m1, m2 } => {
            let s = hardy_s_from_cfe(d.clone(), c.clone())?;
            let s4 = hardy_s4_from_cfe(d.clone(), c.clone())?;
            if &s + &s4 != BigInt::from(m1) || s4 != BigInt::from(m2) {
                return Err(Error::Internal(format!("sums ({s}, {s4}) at {d}/{c} miss ({m1}, {m2})")));
            }
            (Some(s), Some(s4), expand_theta(&v)?)
        }
    };
    if expansion.kind() == crate::cfe::CfKind::ThetaNeg && expansion.quotients() != b.quotients.as_slice() {
        return Err(Error::Internal("constructed expansion is not the theta expansion".into()));
    }
    Ok(DensityWitness { d, c, s, s4, expansion, distance })
}

/// A fraction within `eps` of `x` with `S(d, c) = m`.
pub fn construct_s(x: &Rational, eps: &Rational, m: i64) -> Result<DensityWitness> {
    positive_eps(eps)?;
    let (k, y) = shift(x);
    let b = build_s(&y, eps, m)?;
    finish(x, eps, &k, &b, Target::S { m })
}

/// A fraction within `eps` of `x` with `S + S₄ = m1` and `S₄ = m2`, which
/// needs `m1` even and `m2` odd.
pub fn construct_joint(x: &Rational, eps: &Rational, m1: i64, m2: i64) -> Result<DensityWitness> {
    positive_eps(eps)?;
    let (k, y) = shift(x);
    let b = build_joint(&y, eps, m1, m2)?;
    finish(x, eps, &k, &b, Target::Joint { m1, m2 })
}

/// A fraction within `eps` of `x` with `S₄(d, c) = m`. Returns `x` itself
/// when it already qualifies.
pub fn construct_s4(x: &Rational, eps: &Rational, m: i64) -> Result<DensityWitness> {
    positive_eps(eps)?;
    let (k, y) = shift(x);
    let target = Target::S4 { m };
    if x.numer().is_odd() && hardy_s4_from_cfe(x.numer().clone(), x.denom().clone())? == BigInt::from(m) {
        let expansion = expand_gamma02(x)?;
        return Ok(DensityWitness {
            d: x.numer().clone(),
            c: x.denom().clone(),
            s: None,
            s4: Some(BigInt::from(m)),
            expansion,
            distance: Rational::zero(),
        });
    }
    let b = build_s4(&y, eps, m)?;
    finish(x, eps, &k, &b, target)
}

pub fn construct(req: &DensityRequest) -> Result<DensityWitness> {
    match req.target {
        Target::S { m } => construct_s(&req.x, &req.epsilon, m),
        Target::S4 { m } => construct_s4(&req.x, &req.epsilon, m),
        Target::Joint { m1, m2 } => construct_joint(&req.x, &req.epsilon, m1, m2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sums::{hardy_s4_direct, hardy_s_direct};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn small(w: &DensityWitness) -> (i64, i64) {
        (i64::try_from(&w.d).unwrap(), i64::try_from(&w.c).unwrap())
    }

    #[test]
    fn shift_range() {
        assert_eq!(shift(&q(1, 1)), (BigInt::zero(), q(1, 1)));
        assert_eq!(shift(&q(-1, 1)), (BigInt::from(-1), q(1, 1)));
        assert_eq!(shift(&q(5, 2)), (BigInt::one(), q(1, 2)));
        assert_eq!(shift(&q(-3, 2)), (BigInt::from(-1), q(1, 2)));
    }

    #[test]
    fn s_examples() {
        let w = construct_s(&q(1, 2), &q(1, 10), 1).unwrap();
        assert_eq!(w.value(), q(1, 2));
        let w = construct_s(&q(1, 2), &q(1, 10), 3).unwrap();
        let (d, c) = small(&w);
        assert_eq!(hardy_s_direct(d, c), Ok(3));
        assert!(w.distance < q(1, 10));
        let neg = construct_s(&q(-1, 2), &q(1, 10), -3).unwrap();
        assert_eq!(neg.value(), -w.value());
        // a hand-made witness for the same request
        assert_eq!(hardy_s_direct(35, 64), Ok(3));
        assert!((&q(1, 2) - &q(35, 64)).abs() < q(1, 10));
    }

    #[test]
    fn s_from_inadmissible_targets() {
        for x in [q(1, 3), q(1, 1), q(-1, 1), q(7, 3), q(0, 1)] {
            for m in [-2, 0, 3] {
                let w = construct_s(&x, &q(1, 20), m).unwrap();
                assert_eq!(w.s, Some(BigInt::from(m)), "x = {x}");
                assert!(w.distance < q(1, 20));
            }
        }
    }

    #[test]
    fn joint_examples() {
        let w = construct_joint(&q(1, 2), &q(1, 2), 2, 1).unwrap();
        assert_eq!(w.value(), q(1, 2));
        let w = construct_joint(&q(7, 10), &q(1, 100), 6, 3).unwrap();
        assert_eq!(w.value(), q(7, 10));
        let w = construct_joint(&q(1, 2), &q(1, 4), 0, 1).unwrap();
        let (d, c) = small(&w);
        assert_eq!(hardy_s_direct(d, c).unwrap() + hardy_s4_direct(d, c).unwrap(), 0);
        assert_eq!(hardy_s4_direct(d, c), Ok(1));
        assert!(construct_joint(&q(1, 2), &q(1, 4), 1, 1).is_err());
    }

    #[test]
    fn s4_examples() {
        assert_eq!(construct_s4(&q(3, 7), &q(1, 10), 2).unwrap().value(), q(3, 7));
        assert_eq!(construct_s4(&q(3, 5), &q(1, 10), 0).unwrap().value(), q(3, 5));
        let w = construct_s4(&q(0, 1), &q(1, 10), -4).unwrap();
        let (d, c) = small(&w);
        assert_eq!(hardy_s4_direct(d, c), Ok(-4));
        for m in -3..=3 {
            let w = construct_s4(&q(2, 5), &q(1, 50), m).unwrap();
            assert_eq!(w.s4, Some(BigInt::from(m)));
        }
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(construct_s(&q(1, 2), &q(0, 1), 1).is_err());
        assert!(construct_s4(&q(1, 2), &q(-1, 10), 1).is_err());
    }
}
