use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{expand_classical, expand_gamma02, expand_theta, CfKind, ContinuedFraction};
use crate::arith::{Cusp, GroupTag, Mat2, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `(1 1; 0 1)`
    T,
    /// `T²`
    T2,
    /// `(0 −1; 1 0)`
    S,
    /// `(1 0; 1 1)`
    V,
}

impl Generator {
    fn is_translation(self) -> bool {
        matches!(self, Generator::T | Generator::T2)
    }

    fn power(self, k: &BigInt) -> Mat2 {
        match self {
            Generator::T => Mat2::t_pow(k),
            Generator::T2 => Mat2::t_pow(&(k * 2)),
            Generator::S => Mat2::s_pow(k),
            Generator::V => Mat2::v_pow(k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: BigInt,
}

/// `±` a product of generator powers. Adjacent letters of the same kind are
/// merged on insertion and zero powers are dropped, so translation letters
/// alternate with `S`/`V` letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    negative: bool,
    letters: Vec<Letter>,
}

impl Default for GeneratorWord {
    fn default() -> Self {
        GeneratorWord { negative: false, letters: Vec::new() }
    }
}

impl GeneratorWord {
    pub fn new() -> Self {
        Self::default()
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    pub fn push(&mut self, generator: Generator, exponent: BigInt) {
        if exponent.is_zero() {
            return;
        }
        let merged = match self.letters.last_mut() {
            Some(last) if last.generator == generator => {
                last.exponent += &exponent;
                true
            }
            Some(last) if last.generator.is_translation() && generator.is_translation() => {
                // T^a T2^b or T2^a T^b collapse to a single T power
                let total = |g: Generator, e: &BigInt| {
                    if g == Generator::T2 {
                        e * 2
                    } else {
                        e.clone()
                    }
                };
                last.exponent = total(last.generator, &last.exponent) + total(generator, &exponent);
                last.generator = Generator::T;
                true
            }
            _ => false,
        };
        if !merged {
            self.letters.push(Letter { generator, exponent });
        }
        self.drop_trivial_tail();
    }

    fn drop_trivial_tail(&mut self) {
        while let Some(last) = self.letters.last() {
            let trivial = match last.generator {
                Generator::S => last.exponent.mod_floor(&BigInt::from(4)).is_zero(),
                _ => last.exponent.is_zero(),
            };
            if !trivial {
                break;
            }
            self.letters.pop();
            // neighbours may now be mergeable
            if self.letters.len() >= 2 {
                let b = self.letters.pop().expect("len >= 2");
                self.push(b.generator, b.exponent);
            }
        }
    }

    pub fn extend(&mut self, other: &GeneratorWord) {
        for l in &other.letters {
            self.push(l.generator, l.exponent.clone());
        }
        if other.negative {
            self.negate();
        }
    }

    /// Product of the letters times the sign.
    pub fn to_matrix(&self) -> Mat2 {
        let m = self
            .letters
            .iter()
            .fold(Mat2::identity(), |acc, l| &acc * &l.generator.power(&l.exponent));
        if self.negative {
            -m
        } else {
            m
        }
    }

    /// Rewrites a negative sign as generator letters of `tag`'s group:
    /// `S² = −I` for `Γ_θ` and `SL₂(Z)`, `V⁻¹T²V⁻¹T² = −I` for `Γ⁰(2)`.
    pub fn fold_sign(&self, tag: GroupTag) -> GeneratorWord {
        let mut w = self.clone();
        if !w.negative {
            return w;
        }
        w.negative = false;
        let one = BigInt::one();
        match tag {
            GroupTag::Theta | GroupTag::SL2 => w.push(Generator::S, BigInt::from(2)),
            GroupTag::Gamma02 => {
                w.push(Generator::V, -&one);
                w.push(Generator::T2, one.clone());
                w.push(Generator::V, -&one);
                w.push(Generator::T2, one);
            }
        }
        w
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.letters.is_empty() {
            return f.write_str("I");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = match l.generator {
                Generator::T => "T",
                Generator::T2 => "T2",
                Generator::S => "S",
                Generator::V => "V",
            };
            if l.exponent.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

pub(super) fn cf_to_word(cf: &ContinuedFraction) -> GeneratorWord {
    let mut w = GeneratorWord::new();
    let half = |q: &BigInt| q / 2;
    match cf.kind() {
        CfKind::ThetaNeg => {
            w.push(Generator::T2, half(cf.head()));
            for q in cf.quotients() {
                w.push(Generator::S, BigInt::one());
                w.push(Generator::T2, half(q));
            }
            w.push(Generator::S, BigInt::one());
        }
        CfKind::Gamma02Pos => {
            w.push(Generator::T2, half(cf.head()));
            for (i, q) in cf.quotients().iter().enumerate() {
                if i % 2 == 0 {
                    w.push(Generator::V, q.clone());
                } else {
                    w.push(Generator::T2, half(q));
                }
            }
        }
        CfKind::Classical => {
            w.push(Generator::T, cf.head().clone());
            for (i, q) in cf.quotients().iter().enumerate() {
                let g = if i % 2 == 0 { Generator::V } else { Generator::T };
                w.push(g, q.clone());
            }
        }
    }
    w
}

/// Writes `m` as a signed word in the generators of `tag`'s group.
///
/// The expansion of `m.∞ = a/c` fixes the word up to a trailing translation
/// `±T^j`, which is read off from the residual upper-triangular matrix.
pub fn word_from_matrix(m: &Mat2, tag: GroupTag) -> Result<GeneratorWord> {
    if !tag.contains(m) {
        return Err(Error::NotInGroup(tag));
    }
    let translation = match tag {
        GroupTag::SL2 => Generator::T,
        GroupTag::Theta | GroupTag::Gamma02 => Generator::T2,
    };
    let mut word = match m.apply(&Cusp::Infinity) {
        Cusp::Infinity => GeneratorWord::new(),
        Cusp::Finite(x) => {
            let cf = match tag {
                GroupTag::SL2 => expand_classical(&x)?,
                GroupTag::Theta => expand_theta(&x)?,
                GroupTag::Gamma02 => expand_gamma02(&x)?,
            };
            cf.to_word()
        }
    };
    let residual = &word.to_matrix().inverse() * m;
    if !residual.c().is_zero() {
        return Err(Error::Internal(format!("residual {residual} does not fix infinity")));
    }
    let negative = residual.a() == &-BigInt::one();
    let shift = if negative { -residual.b() } else { residual.b().clone() };
    let exponent = if translation == Generator::T2 {
        if shift.is_odd() {
            return Err(Error::Internal(format!("odd residual translation {shift}")));
        }
        shift / 2
    } else {
        shift
    };
    word.push(translation, exponent);
    if negative {
        word.negate();
    }
    if word.to_matrix() != *m {
        return Err(Error::Internal(format!("word {word} does not multiply out to {m}")));
    }
    Ok(word)
}

/// `A.∞` for the matrix of a word, as a rational (or `None` at ∞).
pub fn word_cusp(w: &GeneratorWord) -> Option<Rational> {
    match w.to_matrix().apply(&Cusp::Infinity) {
        Cusp::Finite(r) => Some(r),
        Cusp::Infinity => None,
    }
}
