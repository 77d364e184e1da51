//! Hardy sums `S(d, c)`, `S₄(d, c)` and the Dedekind sum `s(d, c)`.
//!
//! Every sum has a brute-force evaluator (`O(c)`, kept as an oracle) and a
//! fast one driven by a continued fraction expansion of `d/c`.

mod dedekind;

pub use dedekind::{
    dedekind_cotangent_numeric, dedekind_hickerson, dedekind_recursive, dedekind_recursive_scaled,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{sign, Parity, Rational};
use crate::cfe::{expand_all_even, expand_gamma02, expand_theta, ContinuedFraction};
use crate::error::{Error, Result};

fn check_modulus(d: &BigInt, c: &BigInt) -> Result<()> {
    if !c.is_positive() {
        return Err(Error::NonPositiveModulus(c.clone()));
    }
    if !d.gcd(c).is_one() {
        return Err(Error::NotCoprime { d: d.clone(), c: c.clone() });
    }
    Ok(())
}

fn check_theta(d: &BigInt, c: &BigInt) -> Result<()> {
    check_modulus(d, c)?;
    if (d + c).is_even() {
        return Err(Error::ThetaParity { d: d.clone(), c: c.clone() });
    }
    Ok(())
}

fn check_gamma02(d: &BigInt, c: &BigInt) -> Result<()> {
    check_modulus(d, c)?;
    if d.is_even() {
        return Err(Error::Gamma02Parity { d: d.clone(), c: c.clone() });
    }
    Ok(())
}

/// Representative of `d` modulo `2c` in `(−c, c)`. Only `c = 1` can hit the
/// boundary, and callers treat that case separately.
fn centered(d: &BigInt, c: &BigInt) -> BigInt {
    let two_c = c * 2;
    let r = d.mod_floor(&two_c);
    if &r > c {
        r - two_c
    } else {
        r
    }
}

/// Exponents `⌊dk/c⌋` for `k = 1..c−1`.
fn floor_terms(d: i64, c: i64) -> impl Iterator<Item = (i64, i128)> {
    (1..c).map(move |k| (k, (d as i128 * k as i128).div_euclid(c as i128)))
}

fn small_checked(d: i64, c: i64, theta: bool) -> Result<()> {
    let (bd, bc) = (BigInt::from(d), BigInt::from(c));
    if theta {
        check_theta(&bd, &bc)
    } else {
        check_gamma02(&bd, &bc)
    }
}

/// `S(d, c) = Σ_{k<c} (−1)^{k+1+⌊dk/c⌋}` by direct summation.
pub fn hardy_s_direct(d: i64, c: i64) -> Result<i64> {
    small_checked(d, c, true)?;
    Ok(floor_terms(d, c)
        .map(|(k, f)| if (k as i128 + 1 + f) % 2 == 0 { 1 } else { -1 })
        .sum())
}

/// `S₄(d, c) = Σ_{k<c} (−1)^{⌊dk/c⌋}` by direct summation.
pub fn hardy_s4_direct(d: i64, c: i64) -> Result<i64> {
    small_checked(d, c, false)?;
    Ok(floor_terms(d, c).map(|(_, f)| if f % 2 == 0 { 1 } else { -1 }).sum())
}

/// `2 Σ_{k<c, k odd} (−1)^{⌊dk/c⌋}`, which equals `S + S₄` for even `c`.
pub fn hardy_joint_direct(d: i64, c: i64) -> Result<i64> {
    small_checked(d, c, false)?;
    Ok(2 * floor_terms(d, c)
        .filter(|(k, _)| k % 2 == 1)
        .map(|(_, f)| if f % 2 == 0 { 1 } else { -1 })
        .sum::<i64>())
}

/// Theta expansion of `d/c` after moving `d` into `(−c, c)`. `None` for `c = 1`.
pub fn normalized_theta(d: &BigInt, c: &BigInt) -> Result<Option<ContinuedFraction>> {
    check_theta(d, c)?;
    if c.is_one() {
        return Ok(None);
    }
    expand_theta(&Rational::new(centered(d, c), c.clone())?).map(Some)
}

/// `Γ⁰(2)` expansion of `d/c` after moving `d` into `(−c, c)`. `None` for `c = 1`.
pub fn normalized_gamma02(d: &BigInt, c: &BigInt) -> Result<Option<ContinuedFraction>> {
    check_gamma02(d, c)?;
    if c.is_one() {
        return Ok(None);
    }
    expand_gamma02(&Rational::new(centered(d, c), c.clone())?).map(Some)
}

/// `S` from a theta expansion with zero head: minus the number of positive
/// quotients plus the number of negative ones.
pub fn s_from_theta_quotients(quotients: &[BigInt]) -> BigInt {
    BigInt::from(-quotients.iter().map(sign).sum::<i64>())
}

/// `S₄` from a `Γ⁰(2)` expansion with zero head: the odd-position quotients
/// plus the alternating signs `Σ (−1)^k sign(a_k)`.
pub fn s4_from_gamma02_quotients(quotients: &[BigInt]) -> BigInt {
    let odd: BigInt = quotients.iter().step_by(2).sum();
    let signs: i64 = quotients
        .iter()
        .enumerate()
        .map(|(i, q)| if i % 2 == 0 { -sign(q) } else { sign(q) })
        .sum();
    odd + signs
}

/// `S(d, c)` in `O(log c)` from the theta expansion.
pub fn hardy_s_from_cfe(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<BigInt> {
    let (d, c) = (d.into(), c.into());
    Ok(match normalized_theta(&d, &c)? {
        Some(cf) => s_from_theta_quotients(cf.quotients()),
        None => BigInt::zero(),
    })
}

/// `S₄(d, c)` in `O(log c)` from the `Γ⁰(2)` expansion.
pub fn hardy_s4_from_cfe(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<BigInt> {
    let (d, c) = (d.into(), c.into());
    Ok(match normalized_gamma02(&d, &c)? {
        Some(cf) => s4_from_gamma02_quotients(cf.quotients()),
        None => BigInt::zero(),
    })
}

/// `S` extended to negative moduli by `S(d, −c) = −S(d, c)`.
pub fn hardy_s_signed(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<BigInt> {
    let (d, c) = (d.into(), c.into());
    if c.is_negative() {
        hardy_s_from_cfe(d, -c).map(|v| -v)
    } else {
        hardy_s_from_cfe(d, c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointValue {
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub s: BigInt,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub s4: BigInt,
    #[serde(serialize_with = "crate::arith::serialize_bigint")]
    pub sum: BigInt,
}

/// `S`, `S₄` and `S + S₄` for even `c` and odd `d`, with the sum read off
/// the theta expansion as `−2(c₁ + c₃ + ⋯ + cₙ)`.
///
/// Fails with [`Error::Internal`] if that disagrees with `S + S₄` computed
/// from the two expansions separately.
pub fn hardy_joint(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<JointValue> {
    let (d, c) = (d.into(), c.into());
    check_gamma02(&d, &c)?;
    if c.is_odd() {
        return Err(Error::OutOfRange(format!("joint values need c even, got {c}")));
    }
    let theta = normalized_theta(&d, &c)?.expect("c is even, so c > 1");
    let gamma = normalized_gamma02(&d, &c)?.expect("c is even, so c > 1");
    let s = s_from_theta_quotients(theta.quotients());
    let s4 = s4_from_gamma02_quotients(gamma.quotients());
    // quotients are 2c_k, so −2 Σ c_k over odd k is minus their sum
    let sum = -theta.quotients().iter().step_by(2).sum::<BigInt>();
    if &s + &s4 != sum {
        return Err(Error::Internal(format!(
            "S + S4 = {} but odd theta quotients give {sum} at {d}/{c}",
            &s + &s4
        )));
    }
    Ok(JointValue { s, s4, sum })
}

/// `S(d, c) + S(c, d) = sign(cd)` for nonzero coprime `c, d` of opposite
/// parity, either sign.
pub fn check_s_reciprocity(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<bool> {
    let (d, c) = (d.into(), c.into());
    if d.is_zero() || c.is_zero() {
        return Err(Error::OutOfRange("reciprocity needs c, d nonzero".into()));
    }
    let lhs = hardy_s_signed(d.clone(), c.clone())? + hardy_s_signed(c.clone(), d.clone())?;
    Ok(lhs == BigInt::from(sign(&(c * d))))
}

/// Right-hand side `2a₀ + 2a₁ + ⋯ + 2a_{n−1} + aₙ − 1` of the `S₄`
/// reciprocity, from the expansion `c/d = [2a₀; 2a₁, …, aₙ]`.
pub fn s4_reciprocity_rhs(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<BigInt> {
    let cf = expand_all_even(&Rational::new(c.into(), d.into())?)?;
    Ok(cf.head() + cf.quotients().iter().sum::<BigInt>() - 1)
}

/// `S₄(d, c) + S₄(c, d)` against [`s4_reciprocity_rhs`], for odd coprime
/// `c > d > 0`.
pub fn check_s4_reciprocity(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<bool> {
    let (c, d) = (c.into(), d.into());
    if !(d.is_positive() && c > d && c.is_odd() && d.is_odd()) {
        return Err(Error::OutOfRange(format!("need odd c > d > 0, got c = {c}, d = {d}")));
    }
    let lhs = hardy_s4_from_cfe(d.clone(), c.clone())? + hardy_s4_from_cfe(c.clone(), d.clone())?;
    Ok(lhs == s4_reciprocity_rhs(c, d)?)
}

/// Parity of `S(d, c)`, which is also the parity of the theta expansion length.
pub fn hardy_parity(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Parity> {
    hardy_s_from_cfe(d, c).map(|v| Parity::of(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn direct_values() {
        assert_eq!(hardy_s_direct(2, 5), Ok(0));
        assert_eq!(hardy_s_direct(3, 4), Ok(3));
        assert_eq!(hardy_s_direct(35, 64), Ok(3));
        assert_eq!(hardy_s4_direct(3, 8), Ok(1));
        assert_eq!(hardy_s4_direct(1, 10), Ok(9));
        assert_eq!(hardy_s4_direct(1, 2), Ok(1));
        assert_eq!(hardy_s_direct(4, 1), Ok(0));
    }

    #[test]
    fn direct_rejects_bad_input() {
        assert!(matches!(hardy_s_direct(1, 3), Err(Error::ThetaParity { .. })));
        assert!(matches!(hardy_s4_direct(2, 5), Err(Error::Gamma02Parity { .. })));
        assert!(matches!(hardy_s_direct(2, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(hardy_s4_direct(1, 0), Err(Error::NonPositiveModulus(_))));
        assert!(matches!(hardy_s_from_cfe(3, 5), Err(Error::ThetaParity { .. })));
    }

    #[test]
    fn fast_values() {
        assert_eq!(hardy_s_from_cfe(3, 8), Ok(big(-1)));
        assert_eq!(hardy_s_from_cfe(1, 6), Ok(big(1)));
        assert_eq!(hardy_s_from_cfe(35, 64), Ok(big(3)));
        assert_eq!(hardy_s4_from_cfe(3, 8), Ok(big(1)));
        assert_eq!(hardy_s4_from_cfe(1, 5), Ok(big(4)));
        assert_eq!(hardy_s4_from_cfe(3, 7), Ok(big(2)));
        assert_eq!(hardy_s4_from_cfe(7, 1), Ok(big(0)));
        let qs: Vec<BigInt> = [3, -2, -1].into_iter().map(big).collect();
        assert_eq!(s4_from_gamma02_quotients(&qs), big(1));
        let qs: Vec<BigInt> = [-2, 2, 2].into_iter().map(big).collect();
        assert_eq!(s_from_theta_quotients(&qs), big(-1));
    }

    #[test]
    fn joint_values() {
        let j = hardy_joint(7, 10).unwrap();
        assert_eq!((j.s, j.s4, j.sum), (big(3), big(3), big(6)));
        let j = hardy_joint(9, 10).unwrap();
        assert_eq!((j.s, j.s4, j.sum), (big(9), big(1), big(10)));
        let j = hardy_joint(1, 2).unwrap();
        assert_eq!((j.s, j.s4, j.sum), (big(1), big(1), big(2)));
        assert_eq!(hardy_joint_direct(7, 10), Ok(6));
        assert!(hardy_joint(2, 7).is_err());
        assert!(hardy_joint(1, 7).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        assert_eq!(check_s_reciprocity(3, 8), Ok(true));
        assert_eq!(check_s_reciprocity(1, 2), Ok(true));
        assert_eq!(check_s_reciprocity(5, 8), Ok(true));
        assert_eq!(check_s_reciprocity(-5, 8), Ok(true));
        assert_eq!(check_s_reciprocity(5, -8), Ok(true));
        assert_eq!(s4_reciprocity_rhs(5, 3), Ok(big(-2)));
        assert_eq!(s4_reciprocity_rhs(7, 3), Ok(big(4)));
        assert_eq!(s4_reciprocity_rhs(3, 1), Ok(big(2)));
        for (c, d) in [(5, 3), (7, 3), (3, 1)] {
            assert_eq!(check_s4_reciprocity(c, d), Ok(true), "{c}, {d}");
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(hardy_parity(3, 8), Ok(Parity::Odd));
        assert_eq!(hardy_parity(1, 2), Ok(Parity::Odd));
        assert_eq!(hardy_parity(2, 5), Ok(Parity::Even));
        let cf = normalized_theta(&big(2), &big(5)).unwrap().unwrap();
        assert_eq!(cf.length_parity(), Parity::Even);
    }

    #[test]
    fn small_sweep_against_direct() {
        for c in 1..=60i64 {
            for d in -2 * c..2 * c {
                if num_integer::gcd(d, c) != 1 {
                    continue;
                }
                if (c + d) % 2 != 0 {
                    assert_eq!(hardy_s_from_cfe(d, c).unwrap(), big(hardy_s_direct(d, c).unwrap()));
                }
                if d % 2 != 0 {
                    assert_eq!(
                        hardy_s4_from_cfe(d, c).unwrap(),
                        big(hardy_s4_direct(d, c).unwrap())
                    );
                }
            }
        }
    }

    fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        (1i64..400, -2000i64..2000).prop_filter("coprime", |&(c, d)| num_integer::gcd(c, d) == 1)
    }

    proptest! {
        #[test]
        fn symmetries((c, d) in coprime_pair()) {
            if (c + d) % 2 != 0 {
                let s = hardy_s_from_cfe(d, c).unwrap();
                prop_assert_eq!(hardy_s_from_cfe(-d, c).unwrap(), -&s);
                prop_assert_eq!(hardy_s_from_cfe(d + 2 * c, c).unwrap(), s.clone());
                prop_assert!(s.abs() < big(c.max(2)));
            }
            if d % 2 != 0 {
                let s4 = hardy_s4_from_cfe(d, c).unwrap();
                prop_assert_eq!(hardy_s4_from_cfe(-d, c).unwrap(), -&s4);
                prop_assert_eq!(hardy_s4_from_cfe(d - 2 * c, c).unwrap(), s4);
            }
        }

        #[test]
        fn parity_matches_theta_length((c, d) in coprime_pair()) {
            prop_assume!((c + d) % 2 != 0 && c > 1);
            let cf = normalized_theta(&big(d), &big(c)).unwrap().unwrap();
            prop_assert_eq!(hardy_parity(d, c).unwrap(), cf.length_parity());
        }
    }
}
