//! Continued fractions of three flavours and the expansion algorithms that
//! produce them.
//!
//! * [`CfKind::Classical`]: `a₀ + 1/(a₁ + 1/(a₂ + …))` with `aₖ ≥ 1`.
//! * [`CfKind::ThetaNeg`]: `2c₀ − 1/(2c₁ − 1/(2c₂ − …))`, every entry even.
//!   These are exactly the words `T^{2c₀} S T^{2c₁} S ⋯` of the theta group.
//! * [`CfKind::Gamma02Pos`]: `[2a₀; a₁, 2a₂, a₃, …, aₙ]` with `n` odd and
//!   `|aₖ| > 1` at odd positions before the last; the words
//!   `T^{2a₀} V^{a₁} T^{2a₂} ⋯ V^{aₙ}` of `Γ⁰(2)`.

mod text;
mod word;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{Mat2, Parity, Rational};
use crate::error::{Error, Result};

pub use text::Compressed;
pub use word::{word_cusp, word_from_matrix, Generator, GeneratorWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CfKind {
    Classical,
    ThetaNeg,
    Gamma02Pos,
}

/// A finite continued fraction with its head stored apart from the partial
/// quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    kind: CfKind,
    head: BigInt,
    quotients: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Validates the structural rules of `kind` and builds the expansion.
    pub fn new(kind: CfKind, head: BigInt, quotients: Vec<BigInt>) -> Result<Self> {
        let bad = |msg: String| Err(Error::MalformedExpansion(msg));
        if let Some(i) = quotients.iter().position(Zero::is_zero) {
            return bad(format!("partial quotient {} is zero", i + 1));
        }
        match kind {
            CfKind::ThetaNeg => {
                if head.is_odd() || quotients.iter().any(Integer::is_odd) {
                    return bad("theta-type entries must all be even".into());
                }
            }
            CfKind::Gamma02Pos => {
                let n = quotients.len();
                if head.is_odd() {
                    return bad("Gamma^0(2)-type head must be even".into());
                }
                if n % 2 == 0 {
                    return bad(format!("Gamma^0(2)-type length must be odd, got {n}"));
                }
                for (i, q) in quotients.iter().enumerate() {
                    let pos = i + 1;
                    if pos % 2 == 0 && q.is_odd() {
                        return bad(format!("quotient at even position {pos} must be even"));
                    }
                    if pos % 2 == 1 && pos + 2 <= n && q.abs() <= BigInt::one() {
                        return bad(format!("|quotient| at odd position {pos} must exceed 1"));
                    }
                }
            }
            CfKind::Classical => {
                if quotients.iter().any(|q| !q.is_positive()) {
                    return bad("classical partial quotients must be positive".into());
                }
                if quotients.len() % 2 == 0 {
                    return bad("classical expansion must have an odd number of quotients".into());
                }
            }
        }
        Ok(ContinuedFraction { kind, head, quotients })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(kind: CfKind, head: i64, quotients: &[i64]) -> Result<Self> {
        ContinuedFraction::new(
            kind,
            BigInt::from(head),
            quotients.iter().map(|&q| BigInt::from(q)).collect(),
        )
    }

    pub fn kind(&self) -> CfKind {
        self.kind
    }

    pub fn head(&self) -> &BigInt {
        &self.head
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// Number of partial quotients `n` (the head is not counted).
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// Exact value of the expansion.
    pub fn value(&self) -> Result<Rational> {
        let sign = match self.kind {
            CfKind::ThetaNeg => -BigInt::one(),
            CfKind::Classical | CfKind::Gamma02Pos => BigInt::one(),
        };
        eval_tail(&sign, &self.head, &self.quotients)
    }

    /// Convergents of a head-zero theta-type expansion.
    pub fn convergents(&self) -> Result<Convergents> {
        if self.kind != CfKind::ThetaNeg || !self.head.is_zero() {
            return Err(Error::OutOfRange(
                "convergents are defined for theta-type expansions with zero head".into(),
            ));
        }
        let mut m = Mat2::s();
        let mut pairs = vec![(m.a().clone(), m.c().clone())];
        for q in &self.quotients {
            m = &(&m * &Mat2::t_pow(q)) * &Mat2::s();
            pairs.push((m.a().clone(), m.c().clone()));
        }
        Ok(Convergents { pairs })
    }

    /// `n mod 2`, see [`length_parity`].
    pub fn length_parity(&self) -> Parity {
        Parity::of_len(self.quotients.len())
    }

    /// Rewrites a theta-type expansion of odd length as the equal
    /// `Γ⁰(2)`-type expansion `[2c₀; −2c₁, 2c₂, …, −2cₙ]`.
    pub fn theta_to_gamma02(&self) -> Result<ContinuedFraction> {
        if self.kind != CfKind::ThetaNeg || self.quotients.len() % 2 == 0 {
            return Err(Error::OutOfRange(
                "only odd-length theta-type expansions convert".into(),
            ));
        }
        let quotients = alternate_signs(&self.quotients);
        ContinuedFraction::new(CfKind::Gamma02Pos, self.head.clone(), quotients)
    }

    pub fn to_word(&self) -> GeneratorWord {
        word::cf_to_word(self)
    }
}

/// Flips the sign of every entry at an odd (1-based) position.
pub(crate) fn alternate_signs(qs: &[BigInt]) -> Vec<BigInt> {
    qs.iter()
        .enumerate()
        .map(|(i, q)| if i % 2 == 0 { -q } else { q.clone() })
        .collect()
}

/// `head + sign/(q₁ + sign/(q₂ + …))`, evaluated from the tail without
/// intermediate reductions.
fn eval_tail(sign: &BigInt, head: &BigInt, qs: &[BigInt]) -> Result<Rational> {
    let Some((last, rest)) = qs.split_last() else {
        return Ok(Rational::from_integer(head.clone()));
    };
    // value of the tail as num/den
    let (mut num, mut den) = (last.clone(), BigInt::one());
    for (i, q) in rest.iter().enumerate().rev() {
        if num.is_zero() {
            return Err(Error::MalformedExpansion(format!(
                "tail after quotient {} evaluates to zero",
                i + 1
            )));
        }
        let next = q * &num + sign * &den;
        den = num;
        num = next;
    }
    if num.is_zero() {
        return Err(Error::MalformedExpansion("expansion evaluates through 1/0".into()));
    }
    Rational::new(head * &num + sign * den, num)
}

/// Parity of `n` for a positive expansion whose even-indexed entries are even.
///
/// The numerator of the value has the same parity.
pub fn length_parity(head: &BigInt, quotients: &[BigInt]) -> Result<Parity> {
    let even_indexed_even = head.is_even()
        && quotients
            .iter()
            .enumerate()
            .all(|(i, q)| (i + 1) % 2 == 1 || q.is_even());
    if !even_indexed_even {
        return Err(Error::MalformedExpansion(
            "entries at even indices must be even".into(),
        ));
    }
    Ok(Parity::of_len(quotients.len()))
}

/// Pairs `(p_k, q_k)` read off the first column of
/// `S T^{2c₁} S ⋯ T^{2c_k} S`.
///
/// `pairs[0] = (0, 1)` belongs to the empty expansion; `pairs[k]` for
/// `k ≥ 1` is the `k`-th convergent. The second column of the same matrix is
/// `−(p_{k−1}, q_{k−1})`, so `p_k q_{k−1} − p_{k−1} q_k = −1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergents {
    pairs: Vec<(BigInt, BigInt)>,
}

impl Convergents {
    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }

    pub fn get(&self, k: usize) -> Option<&(BigInt, BigInt)> {
        self.pairs.get(k)
    }

    pub fn value(&self, k: usize) -> Option<Rational> {
        self.pairs
            .get(k)
            .and_then(|(p, q)| Rational::new(p.clone(), q.clone()).ok())
    }

    /// Number of stored pairs minus one, i.e. the expansion length.
    pub fn len(&self) -> usize {
        self.pairs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The unique theta-type expansion `⟦2c₀; 2c₁, …, 2cₙ⟧` of `x = d/c`, which
/// requires `c + d` odd.
pub fn expand_theta(x: &Rational) -> Result<ContinuedFraction> {
    if (x.numer() + x.denom()).is_even() {
        return Err(Error::ThetaParity { d: x.numer().clone(), c: x.denom().clone() });
    }
    // c + d odd rules out odd integers, so the nearest even integer is unique
    let head = x.nearest_even();
    let mut y = x - &Rational::from_integer(head.clone());
    let mut quotients = Vec::new();
    while !y.is_zero() {
        let r = -y.recip()?;
        let q = r.nearest_even();
        let rem = &r - &Rational::from_integer(q.clone());
        if rem.abs() >= Rational::one() {
            return Err(Error::Internal(format!("no unique even quotient near {r}")));
        }
        quotients.push(q);
        y = rem;
    }
    ContinuedFraction::new(CfKind::ThetaNeg, head, quotients)
}

/// A `Γ⁰(2)`-type expansion of `x = d/c` with `d` odd.
///
/// Odd positions take the even integer within distance 1 of `1/x` unless
/// `1/x` is an odd integer, which ends the expansion. Even positions allow
/// remainders in `[−1, 1]`; when `1/x = m` is odd the smaller of the two even
/// choices `m − sign(m)` is taken.
pub fn expand_gamma02(x: &Rational) -> Result<ContinuedFraction> {
    if x.numer().is_even() {
        return Err(Error::Gamma02Parity { d: x.numer().clone(), c: x.denom().clone() });
    }
    let one = Rational::one();
    let (head, mut y) = if x.is_integer() {
        // odd integer: remainder exactly 1
        let h = x.numer() - BigInt::one();
        (h, one.clone())
    } else {
        let h = x.nearest_even();
        let y = x - &Rational::from_integer(h.clone());
        (h, y)
    };
    let mut quotients: Vec<BigInt> = Vec::new();
    loop {
        let r = y.recip()?;
        let odd_position = quotients.len() % 2 == 0;
        if odd_position {
            if r.is_integer() && r.numer().is_odd() {
                quotients.push(r.numer().clone());
                break;
            }
            let q = r.nearest_even();
            let rem = &r - &Rational::from_integer(q.clone());
            if q.is_zero() || rem.abs() >= one {
                return Err(Error::Internal(format!("no even quotient near {r}")));
            }
            quotients.push(q);
            if rem.is_zero() {
                break;
            }
            y = rem;
        } else {
            let q = if r.is_integer() && r.numer().is_odd() {
                let m = r.numer();
                m - BigInt::from(m.signum())
            } else {
                r.nearest_even()
            };
            let rem = &r - &Rational::from_integer(q.clone());
            if q.is_zero() || rem.is_zero() || rem.abs() > one {
                return Err(Error::Internal(format!("bad even-position quotient near {r}")));
            }
            quotients.push(q);
            y = rem;
        }
    }
    ContinuedFraction::new(CfKind::Gamma02Pos, head, quotients)
}

/// Classical expansion `[a₀; a₁, …, aₙ]` with positive quotients and `n`
/// odd, for any rational.
pub fn expand_classical(x: &Rational) -> Result<ContinuedFraction> {
    let head = x.floor();
    let mut y = x - &Rational::from_integer(head.clone());
    let mut quotients: Vec<BigInt> = Vec::new();
    while !y.is_zero() {
        let r = y.recip()?;
        let a = r.floor();
        y = &r - &Rational::from_integer(a.clone());
        quotients.push(a);
    }
    let one = BigInt::one();
    let (head, quotients) = match quotients.len() {
        0 => (head - &one, vec![one]),
        n if n % 2 == 1 => (head, quotients),
        _ => {
            let last = quotients.pop().expect("non-empty");
            if last.is_one() {
                let prev = quotients.pop().expect("length at least 2");
                quotients.push(prev + one);
            } else {
                quotients.push(last - &one);
                quotients.push(one);
            }
            (head, quotients)
        }
    };
    ContinuedFraction::new(CfKind::Classical, head, quotients)
}

/// [`expand_classical`] restricted to `0 < x < 1`, giving `[0; a₁, …, a_{2m+1}]`.
pub fn expand_classical_odd(x: &Rational) -> Result<ContinuedFraction> {
    if x.signum() <= 0 || *x >= Rational::one() {
        return Err(Error::OutOfRange(format!("{x} is not in (0, 1)")));
    }
    expand_classical(x)
}

/// Expansion `c/d = [2a₀; 2a₁, …, 2a_{n−1}, aₙ]` with `n` odd and every entry
/// but the last even, for odd coprime `c, d` with `d > 0`.
pub fn expand_all_even(x: &Rational) -> Result<ContinuedFraction> {
    if x.numer().is_even() || x.denom().is_even() {
        return Err(Error::OutOfRange(format!("{x} needs odd numerator and denominator")));
    }
    let one = Rational::one();
    let (head, mut y) = if x.is_integer() {
        (x.numer() - BigInt::one(), one.clone())
    } else {
        let h = x.nearest_even();
        let y = x - &Rational::from_integer(h.clone());
        (h, y)
    };
    let mut quotients: Vec<BigInt> = Vec::new();
    loop {
        let r = y.recip()?;
        if r.is_integer() {
            // odd/odd remainders keep integer values odd
            quotients.push(r.numer().clone());
            break;
        }
        let q = r.nearest_even();
        y = &r - &Rational::from_integer(q.clone());
        quotients.push(q);
    }
    if quotients.len() % 2 == 0 {
        let last = quotients.pop().expect("non-empty");
        let one = BigInt::one();
        if last.is_one() {
            quotients.push(BigInt::from(2));
            quotients.push(-one);
        } else {
            quotients.push(last - &one);
            quotients.push(one);
        }
    }
    let cf = ContinuedFraction::new(CfKind::Gamma02Pos, head, quotients)?;
    let shape_ok = cf
        .quotients
        .split_last()
        .map(|(last, rest)| last.is_odd() && rest.iter().all(Integer::is_even))
        .unwrap_or(false);
    if !shape_ok || cf.value()? != *x {
        return Err(Error::Internal(format!("all-even expansion of {x} has the wrong shape")));
    }
    Ok(cf)
}
