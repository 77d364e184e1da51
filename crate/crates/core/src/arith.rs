//! Exact arithmetic: reduced rationals, cusps and unimodular 2×2 integer
//! matrices, together with the congruence conditions of the theta group
//! `Γ_θ` and of `Γ⁰(2)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
///
/// Zero is stored as `0/1`. Reduction happens at construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds the reduced fraction `num/den`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `-1`, `0` or `1`.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// The even integer `2k` nearest to `self`; for odd integers (the only
    /// ties) this returns `self + 1`.
    pub fn nearest_even(&self) -> BigInt {
        let half = Rational::new(1, 2).expect("non-zero denominator");
        let scaled = self * &half + half;
        scaled.floor() * 2
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Reduces `num/den` to canonical form.
pub fn reduce(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num, den)
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer, each with an optional sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            let t = t.trim();
            let t = t.strip_prefix('+').unwrap_or(t);
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid integer `{t}` in rational `{s}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] for a checked path.
    fn div(self, rhs: &Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A point of `Q ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cusp {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cusp::Finite(r) => write!(f, "{r}"),
            Cusp::Infinity => write!(f, "inf"),
        }
    }
}

impl From<Rational> for Cusp {
    fn from(r: Rational) -> Self {
        Cusp::Finite(r)
    }
}

/// The three groups the library distinguishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupTag {
    /// The full modular group.
    SL2,
    /// `a ≡ d`, `b ≡ c (mod 2)`; generated by `T²` and `S`.
    Theta,
    /// `b ≡ 0 (mod 2)`; generated by `T²` and `V`.
    Gamma02,
}

impl GroupTag {
    pub fn contains(self, m: &Mat2) -> bool {
        let even = |x: &BigInt| x.is_even();
        match self {
            GroupTag::SL2 => true,
            GroupTag::Theta => even(&(&m.a - &m.d)) && even(&(&m.b - &m.c)),
            GroupTag::Gamma02 => even(&m.b),
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::SL2 => "SL2(Z)",
            GroupTag::Theta => "Gamma_theta",
            GroupTag::Gamma02 => "Gamma^0(2)",
        })
    }
}

impl FromStr for GroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" | "sl2z" => Ok(GroupTag::SL2),
            "theta" => Ok(GroupTag::Theta),
            "gamma02" | "gamma0_2" => Ok(GroupTag::Gamma02),
            other => Err(Error::Parse(format!("unknown group `{other}`"))),
        }
    }
}

/// An integer matrix `(a b; c d)` with `ad − bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = Mat2::from_entries(a.into(), b.into(), c.into(), d.into());
        if m.det().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular)
        }
    }

    fn from_entries(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::from_entries(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// `T = (1 1; 0 1)`.
    pub fn t() -> Self {
        Mat2::t_pow(&BigInt::one())
    }

    /// `S = (0 −1; 1 0)`.
    pub fn s() -> Self {
        Mat2::from_entries(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// `V = TST = (1 0; 1 1)`.
    pub fn v() -> Self {
        Mat2::v_pow(&BigInt::one())
    }

    pub fn t_pow(k: &BigInt) -> Self {
        Mat2::from_entries(BigInt::one(), k.clone(), BigInt::zero(), BigInt::one())
    }

    pub fn v_pow(k: &BigInt) -> Self {
        Mat2::from_entries(BigInt::one(), BigInt::zero(), k.clone(), BigInt::one())
    }

    /// `S^k`; `S` has order 4.
    pub fn s_pow(k: &BigInt) -> Self {
        let r = k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0);
        let mut m = Mat2::identity();
        for _ in 0..r {
            m = &m * &Mat2::s();
        }
        m
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        Mat2::from_entries(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Möbius action `x ↦ (ax + b)/(cx + d)` on `Q ∪ {∞}`.
    pub fn apply(&self, x: &Cusp) -> Cusp {
        let (p, q) = match x {
            Cusp::Finite(r) => (r.numer().clone(), r.denom().clone()),
            Cusp::Infinity => (BigInt::one(), BigInt::zero()),
        };
        let num = &self.a * &p + &self.b * &q;
        let den = &self.c * &p + &self.d * &q;
        if den.is_zero() {
            Cusp::Infinity
        } else {
            Cusp::Finite(Rational::new(num, den).expect("non-zero denominator"))
        }
    }

    /// All groups whose congruence conditions the matrix satisfies.
    pub fn membership(&self) -> Vec<GroupTag> {
        [GroupTag::SL2, GroupTag::Theta, GroupTag::Gamma02]
            .into_iter()
            .filter(|g| g.contains(self))
            .collect()
    }

    pub fn entries_f64(&self) -> [f64; 4] {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        [f(&self.a), f(&self.b), f(&self.c), f(&self.d)]
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, r: &Mat2) -> Mat2 {
        Mat2::from_entries(
            &self.a * &r.a + &self.b * &r.c,
            &self.a * &r.b + &self.b * &r.d,
            &self.c * &r.a + &self.d * &r.c,
            &self.c * &r.b + &self.d * &r.d,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        &self * &r
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::from_entries(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mat2 {
    type Err = Error;
    /// Parses `a,b,c,d` (commas or whitespace).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<BigInt> = s
            .split(|ch: char| ch == ',' || ch == ';' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("invalid matrix entry `{t}`")))
            })
            .collect::<Result<_>>()?;
        match <[BigInt; 4]>::try_from(parts) {
            Ok([a, b, c, d]) => Mat2::new(a, b, c, d),
            Err(_) => Err(Error::Parse("matrix needs exactly four entries".into())),
        }
    }
}

/// Parity of an integer-valued quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: &BigInt) -> Self {
        if x.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn of_len(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Serializes a big integer as a JSON number when it fits in `i64`, and as
/// a decimal string otherwise.
pub fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// Sign of a big integer as `-1`, `0` or `1`.
pub(crate) fn sign(x: &BigInt) -> i64 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d).unwrap()
    }

    #[test]
    fn reduce_normalizes_sign_and_gcd() {
        let r = reduce(6, -4).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (BigInt::from(-3), BigInt::from(2)));
        let z = reduce(0, 7).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::zero(), BigInt::one()));
        assert_eq!(reduce(35, 64).unwrap().to_string(), "35/64");
        assert_eq!(reduce(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_rational() {
        assert_eq!("-3/6".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("+7".parse::<Rational>().unwrap(), q(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
    }

    #[test]
    fn nearest_even_breaks_ties_upward() {
        assert_eq!(q(7, 3).nearest_even(), BigInt::from(2));
        assert_eq!(q(-8, 3).nearest_even(), BigInt::from(-2));
        assert_eq!(q(3, 1).nearest_even(), BigInt::from(4));
        assert_eq!(q(-1, 1).nearest_even(), BigInt::from(0));
    }

    #[test]
    fn products() {
        let i = Mat2::identity();
        let a = m(2, 1, 1, 1);
        assert_eq!(&i * &a, a);
        assert_eq!(&Mat2::s() * &Mat2::s(), -Mat2::identity());
        let t2 = Mat2::t_pow(&BigInt::from(2));
        assert_eq!(&t2 * &Mat2::s(), m(2, -1, 1, 0));
        assert_eq!(Mat2::s_pow(&BigInt::from(-1)), Mat2::s().inverse());
    }

    #[test]
    fn mobius_on_cusps() {
        assert_eq!(Mat2::s().apply(&Cusp::Infinity), Cusp::Finite(q(0, 1)));
        assert_eq!(m(2, -1, 1, 0).apply(&Cusp::Infinity), Cusp::Finite(q(2, 1)));
        assert_eq!(Mat2::v().apply(&q(1, 2).into()), Cusp::Finite(q(1, 3)));
        assert_eq!(Mat2::s().apply(&q(0, 1).into()), Cusp::Infinity);
    }

    #[test]
    fn membership_of_generators() {
        assert_eq!(Mat2::s().membership(), vec![GroupTag::SL2, GroupTag::Theta]);
        assert_eq!(Mat2::v().membership(), vec![GroupTag::SL2, GroupTag::Gamma02]);
        assert_eq!(Mat2::t().membership(), vec![GroupTag::SL2]);
        assert!(GroupTag::Theta.contains(&-Mat2::identity()));
        assert_eq!(Mat2::new(1, 1, 1, 1), Err(Error::NotUnimodular));
    }

    fn letter() -> impl Strategy<Value = (u8, i64)> {
        (0u8..3, -4i64..=4)
    }

    fn build(word: &[(u8, i64)], tag: GroupTag) -> Mat2 {
        word.iter().fold(Mat2::identity(), |acc, &(g, e)| {
            let e = BigInt::from(e);
            let f = match (tag, g) {
                (GroupTag::Theta, 0) => Mat2::t_pow(&(e * 2)),
                (GroupTag::Theta, _) => Mat2::s_pow(&e),
                (GroupTag::Gamma02, 0) => Mat2::t_pow(&(e * 2)),
                (GroupTag::Gamma02, _) => Mat2::v_pow(&e),
                (GroupTag::SL2, 0) => Mat2::t_pow(&e),
                (GroupTag::SL2, _) => Mat2::s_pow(&e),
            };
            &acc * &f
        })
    }

    proptest! {
        #[test]
        fn closure_and_determinant(word in prop::collection::vec(letter(), 0..10)) {
            for tag in [GroupTag::SL2, GroupTag::Theta, GroupTag::Gamma02] {
                let g = build(&word, tag);
                prop_assert!(g.det().is_one());
                prop_assert!(tag.contains(&g));
            }
        }

        #[test]
        fn mobius_inverse_round_trip(word in prop::collection::vec(letter(), 0..8),
                                     n in -50i64..50, d in 1i64..50) {
            let g = build(&word, GroupTag::SL2);
            let x = Cusp::Finite(q(n, d));
            prop_assert_eq!(g.apply(&g.inverse().apply(&x)), x.clone());
            prop_assert_eq!(g.inverse().apply(&g.apply(&x)), x);
        }
    }
}
