use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::check_modulus;
use crate::arith::Rational;
use crate::cfe::expand_classical_odd;
use crate::error::{Error, Result};

/// `s(d, c)` from the reciprocity law
/// `s(d, c) + s(c, d) = (c² + d² + 1)/(12cd) − 1/4`, periodicity in `d`
/// and `s(0, 1) = 0`.
pub fn dedekind_recursive(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Rational> {
    dedekind_recursive_scaled(d, c, &Rational::new(1, 12)?)
}

/// The same recursion with `(c² + d² + 1)/(cd)` multiplied by `scale`
/// instead of `1/12`. Any other scale gives wrong values; it exists so the
/// factor can be tested.
pub fn dedekind_recursive_scaled(
    d: impl Into<BigInt>,
    c: impl Into<BigInt>,
    scale: &Rational,
) -> Result<Rational> {
    let (mut d, mut c) = (d.into(), c.into());
    check_modulus(&d, &c)?;
    let quarter = Rational::new(1, 4)?;
    let mut acc = Rational::zero();
    let mut negate = false;
    loop {
        d = d.mod_floor(&c);
        if c.is_one() {
            break;
        }
        let term = &(scale * &Rational::new(&c * &c + &d * &d + 1, &c * &d)?) - &quarter;
        acc = if negate { acc - term } else { acc + term };
        negate = !negate;
        std::mem::swap(&mut c, &mut d);
    }
    Ok(acc)
}

/// `s(d, c) = −1/4 + ((a + d)/c − Σ (−1)^k a_k)/12` for `0 < d < c`, with
/// `ad ≡ 1 (mod c)`, `0 < a < c` and `d/c = [0; a₁, …, a_{2m+1}]`.
pub fn dedekind_hickerson(d: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Rational> {
    let (d, c) = (d.into(), c.into());
    check_modulus(&d, &c)?;
    if !(d.is_positive() && d < c) {
        return Err(Error::OutOfRange(format!("need 0 < d < c, got d = {d}, c = {c}")));
    }
    let a = {
        let e = d.extended_gcd(&c);
        e.x.mod_floor(&c)
    };
    let cf = expand_classical_odd(&Rational::new(d.clone(), c.clone())?)?;
    let alternating: BigInt = cf
        .quotients()
        .iter()
        .enumerate()
        .map(|(i, q)| if i % 2 == 0 { -q } else { q.clone() })
        .sum();
    let inner = &Rational::new(a + &d, c)? - &Rational::from_integer(alternating);
    Ok(&(&Rational::new(1, 12)? * &inner) - &Rational::new(1, 4)?)
}

/// `(1/4c) Σ_{k<c} cot(πk/c) cot(πkd/c)` in floating point.
pub fn dedekind_cotangent_numeric(d: i64, c: i64) -> Result<f64> {
    check_modulus(&BigInt::from(d), &BigInt::from(c))?;
    let cf = c as f64;
    let cot = |x: f64| x.cos() / x.sin();
    let sum: f64 = (1..c)
        .map(|k| {
            let kd = (k as i128 * d as i128).rem_euclid(c as i128) as f64;
            cot(PI * k as f64 / cf) * cot(PI * kd / cf)
        })
        .sum();
    Ok(sum / (4.0 * cf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn recursive_values() {
        assert_eq!(dedekind_recursive(0, 1), Ok(Rational::zero()));
        assert_eq!(dedekind_recursive(1, 3), Ok(q(1, 18)));
        assert_eq!(dedekind_recursive(3, 7), Ok(q(-1, 14)));
        assert_eq!(dedekind_recursive(1, 2), Ok(Rational::zero()));
        assert_eq!(dedekind_recursive(10, 7), Ok(q(-1, 14)));
        assert!(matches!(dedekind_recursive(2, 4), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn hickerson_values() {
        assert_eq!(dedekind_hickerson(3, 7), Ok(q(-1, 14)));
        assert_eq!(dedekind_hickerson(1, 2), Ok(Rational::zero()));
        assert_eq!(dedekind_hickerson(1, 3), Ok(q(1, 18)));
        assert!(dedekind_hickerson(7, 3).is_err());
    }

    #[test]
    fn cotangent_values() {
        assert!((dedekind_cotangent_numeric(1, 3).unwrap() - 1.0 / 18.0).abs() < 1e-12);
        assert!((dedekind_cotangent_numeric(3, 7).unwrap() + 1.0 / 14.0).abs() < 1e-12);
        assert_eq!(dedekind_cotangent_numeric(1, 1), Ok(0.0));
    }

    #[test]
    fn unit_scale_disagrees() {
        let wrong = dedekind_recursive_scaled(1, 3, &Rational::one()).unwrap();
        assert_ne!(wrong, q(1, 18));
    }

    #[test]
    fn six_c_denominator() {
        for c in 1..80i64 {
            for d in 0..c {
                if num_integer::gcd(d, c) != 1 {
                    continue;
                }
                let s = dedekind_recursive(d, c).unwrap();
                assert!((&s * &Rational::from_integer(6 * c)).is_integer(), "s({d}, {c}) = {s}");
            }
        }
    }
}
