use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::arith::{sign, GroupTag, Mat2};
use crate::error::{Error, Result};

/// `A₀A₁⋯Aₙ` with `A_k = (a_k, (−1)^{k+1}; (−1)^k, 0)` and `n` odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingWord {
    a: Vec<i64>,
}

impl AlternatingWord {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.len() < 2 || a.len() % 2 != 0 {
            return Err(Error::UnsupportedWord(format!(
                "need a_0..a_n with n odd, got {} entries",
                a.len()
            )));
        }
        Ok(AlternatingWord { a })
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    fn factor(k: usize, ak: i64) -> Mat2 {
        let s = if k % 2 == 0 { 1 } else { -1 };
        Mat2::new(ak, -s, s, 0).expect("determinant 1")
    }

    /// Bottom rows `(c_k, d_k)` of the partial products, `k = 0..n`.
    pub fn rows(&self) -> Vec<(BigInt, BigInt)> {
        let mut m = Mat2::identity();
        self.a
            .iter()
            .enumerate()
            .map(|(k, &ak)| {
                m = &m * &Self::factor(k, ak);
                (m.c().clone(), m.d().clone())
            })
            .collect()
    }

    pub fn matrix(&self) -> Mat2 {
        self.a
            .iter()
            .enumerate()
            .fold(Mat2::identity(), |m, (k, &ak)| &m * &Self::factor(k, ak))
    }

    fn alternating_sum(&self) -> i64 {
        self.a.iter().enumerate().map(|(k, a)| if k % 2 == 0 { *a } else { -a }).sum()
    }

    /// `Σ (−1)^k a_k + 3 Σ_{k≥1} sign(c_k d_k)`, undefined when a row has a zero.
    pub fn constant_from_rows(&self) -> Result<i64> {
        let mut signs = 0;
        for (k, (c, d)) in self.rows().iter().enumerate().skip(1) {
            if c.is_zero() || d.is_zero() {
                return Err(Error::UnsupportedWord(format!("sign undefined: row {k} is ({c}, {d})")));
            }
            signs += sign(c) * sign(d);
        }
        Ok(self.alternating_sum() + 3 * signs)
    }

    /// `Σ (−1)^k a_k − 3 Σ_{k≥1} (−1)^k sign(a_k)`, valid when `a₁ ≠ 0` and
    /// `|a_k| ≥ 2` for `k ≥ 2`.
    pub fn constant_from_quotients(&self) -> Result<i64> {
        if self.a[1] == 0 || self.a[2..].iter().any(|x| x.abs() < 2) {
            return Err(Error::UnsupportedWord("needs a_1 != 0 and |a_k| >= 2 for k >= 2".into()));
        }
        let signs: i64 = self.a[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 0 { -a.signum() } else { a.signum() })
            .sum();
        Ok(self.alternating_sum() - 3 * signs)
    }
}

/// Words whose cocycles have closed forms in the partial quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum CocycleWord {
    /// `T^{2c₀} S T^{2c₁} S ⋯ T^{2cₙ} S` with `c₁, …, cₙ` nonzero.
    Theta { c0: i64, c: Vec<i64> },
    /// `T^{2a₀} V^{a₁} T^{2a₂} ⋯ V^{aₙ}` with `n` odd, `a_k` nonzero and
    /// `|a_k| > 1` at odd `k > 1`.
    Gamma02 { a0: i64, a: Vec<i64> },
}

impl CocycleWord {
    pub fn validate(&self) -> Result<()> {
        match self {
            CocycleWord::Theta { c, .. } => {
                if c.contains(&0) {
                    return Err(Error::UnsupportedWord("zero theta exponent".into()));
                }
            }
            CocycleWord::Gamma02 { a, .. } => {
                if a.len() % 2 == 0 || a.contains(&0) {
                    return Err(Error::UnsupportedWord("need an odd number of nonzero exponents".into()));
                }
                if a.iter().enumerate().skip(2).step_by(2).any(|(_, x)| x.abs() < 2) {
                    return Err(Error::UnsupportedWord("V exponents after the first need |a| > 1".into()));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> GroupTag {
        match self {
            CocycleWord::Theta { .. } => GroupTag::Theta,
            CocycleWord::Gamma02 { .. } => GroupTag::Gamma02,
        }
    }

    pub fn matrix(&self) -> Mat2 {
        let t2 = |k: i64| Mat2::t_pow(&BigInt::from(2 * k));
        match self {
            CocycleWord::Theta { c0, c } => {
                let mut m = &t2(*c0) * &Mat2::s();
                for ck in c {
                    m = &(&m * &t2(*ck)) * &Mat2::s();
                }
                m
            }
            CocycleWord::Gamma02 { a0, a } => {
                let mut m = t2(*a0);
                for (i, ak) in a.iter().enumerate() {
                    let f = if i % 2 == 0 { Mat2::v_pow(&BigInt::from(*ak)) } else { t2(*ak) };
                    m = &m * &f;
                }
                m
            }
        }
    }

    /// The constant term of the cocycle: `−3 Σ sign(c_k)` for theta words,
    /// `−3(a₁ + a₃ + ⋯ + aₙ) − 3 Σ (−1)^k sign(a_k)` for `Γ⁰(2)` words.
    pub fn constant(&self) -> i64 {
        match self {
            CocycleWord::Theta { c, .. } => -3 * c.iter().map(|x| x.signum()).sum::<i64>(),
            CocycleWord::Gamma02 { a, .. } => {
                let odd: i64 = a.iter().step_by(2).sum();
                let signs: i64 = a
                    .iter()
                    .enumerate()
                    .map(|(i, x)| if i % 2 == 0 { -x.signum() } else { x.signum() })
                    .sum();
                -3 * odd - 3 * signs
            }
        }
    }
}

/// Smallest imaginary part allowed at `A.z` for sampled matrices; at the
/// default 200 terms the dropped series tail is far below `1e−10` there.
pub const MIN_IM: f64 = 0.06;

pub fn image(m: &Mat2, z: Complex64) -> Complex64 {
    let [a, b, c, d] = m.entries_f64();
    (z * a + b) / (z * c + d)
}

fn well_conditioned(m: &Mat2, basepoints: &[Complex64]) -> bool {
    basepoints.iter().all(|&z| image(m, z).im >= MIN_IM)
}

fn nonzero<R: Rng>(rng: &mut R, max: i64) -> i64 {
    let v = rng.random_range(1..=max);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Random word of up to six letters in the generators of `tag`.
pub fn random_group_element<R: Rng>(rng: &mut R, tag: GroupTag) -> Mat2 {
    let len = rng.random_range(1..=6);
    let mut m = Mat2::identity();
    for _ in 0..len {
        let translate = rng.random_bool(0.5);
        let e = BigInt::from(nonzero(rng, 3));
        let f = match (tag, translate) {
            (GroupTag::SL2, true) => Mat2::t_pow(&e),
            (_, true) => Mat2::t_pow(&(e * 2)),
            (GroupTag::Gamma02, false) => Mat2::v_pow(&e),
            (_, false) => Mat2::s_pow(&e),
        };
        m = &m * &f;
    }
    m
}

const ATTEMPTS: usize = 100_000;

fn sample<T, R: Rng>(
    rng: &mut R,
    count: usize,
    mut draw: impl FnMut(&mut R) -> Option<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..ATTEMPTS {
        if out.len() == count {
            break;
        }
        if let Some(x) = draw(rng) {
            out.push(x);
        }
    }
    if out.len() < count {
        return Err(Error::Internal(format!("only {} of {count} samples found", out.len())));
    }
    Ok(out)
}

/// Matrices of `tag` with `c > 0` whose images of every basepoint stay at
/// imaginary part at least [`MIN_IM`].
pub fn sample_matrices<R: Rng>(
    rng: &mut R,
    tag: GroupTag,
    count: usize,
    basepoints: &[Complex64],
    need_positive_c: bool,
) -> Result<Vec<Mat2>> {
    sample(rng, count, |rng| {
        let m = random_group_element(rng, tag);
        let m = if m.c().is_negative() { -m } else { m };
        if need_positive_c && !m.c().is_positive() {
            return None;
        }
        well_conditioned(&m, basepoints).then_some(m)
    })
}

pub fn sample_alternating<R: Rng>(
    rng: &mut R,
    count: usize,
    basepoints: &[Complex64],
) -> Result<Vec<AlternatingWord>> {
    sample(rng, count, |rng| {
        let n = 2 * rng.random_range(0..3) + 1;
        let a: Vec<i64> = (0..=n).map(|_| rng.random_range(-3..=3)).collect();
        let w = AlternatingWord::new(a).ok()?;
        let m = w.matrix();
        if m.c().is_zero() || w.constant_from_rows().is_err() {
            return None;
        }
        well_conditioned(&m, basepoints).then_some(w)
    })
}

pub fn sample_cocycle_words<R: Rng>(
    rng: &mut R,
    tag: GroupTag,
    count: usize,
    basepoints: &[Complex64],
) -> Result<Vec<CocycleWord>> {
    sample(rng, count, |rng| {
        let w = match tag {
            GroupTag::Gamma02 => {
                let n = 2 * rng.random_range(0..3) + 1;
                let a = (0..n)
                    .map(|i| {
                        let v = nonzero(rng, 3);
                        if i >= 2 && i % 2 == 0 && v.abs() == 1 {
                            2 * v
                        } else {
                            v
                        }
                    })
                    .collect();
                CocycleWord::Gamma02 { a0: rng.random_range(-2..=2), a }
            }
            _ => {
                let n = rng.random_range(0..=4);
                CocycleWord::Theta {
                    c0: rng.random_range(-2..=2),
                    c: (0..n).map(|_| nonzero(rng, 3)).collect(),
                }
            }
        };
        w.validate().ok()?;
        let m = w.matrix();
        if m.c().is_zero() {
            return None;
        }
        well_conditioned(&m, basepoints).then_some(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn alternating_examples() {
        let w = AlternatingWord::new(vec![0, 2]).unwrap();
        // (0 −1; 1 0)(2 1; −1 0) = (1 0; 2 1)
        assert_eq!(w.matrix(), Mat2::new(1, 0, 2, 1).unwrap());
        assert_eq!(w.constant_from_rows(), Ok(-2 + 3));
        // all positive quotients give a correction of exactly 3
        let w = AlternatingWord::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(w.constant_from_rows().unwrap() - (1 - 2 + 3 - 4), 3);
        assert!(AlternatingWord::new(vec![1, 2, 3]).is_err());
    }

    #[test]
    fn cocycle_words() {
        let w = CocycleWord::Theta { c0: 0, c: vec![-1] };
        assert_eq!(w.matrix().apply(&crate::arith::Cusp::Infinity).to_string(), "1/2");
        assert_eq!(w.constant(), 3);
        let v = CocycleWord::Gamma02 { a0: 0, a: vec![1] };
        assert_eq!(v.matrix(), Mat2::v());
        assert_eq!(v.constant(), -3 + 3);
        assert!(CocycleWord::Gamma02 { a0: 0, a: vec![2, 1, 1] }.validate().is_err());
        assert!(CocycleWord::Gamma02 { a0: 0, a: vec![1, 1, -2] }.validate().is_ok());
        assert!(GroupTag::Theta.contains(&w.matrix()));
    }

    #[test]
    fn samplers_respect_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z = [Complex64::new(0.3, 1.6)];
        for tag in [GroupTag::SL2, GroupTag::Theta, GroupTag::Gamma02] {
            for m in sample_matrices(&mut rng, tag, 30, &z, true).unwrap() {
                assert!(tag.contains(&m));
                assert!(m.c().is_positive());
                assert!(image(&m, z[0]).im >= MIN_IM);
            }
        }
        for w in sample_cocycle_words(&mut rng, GroupTag::Gamma02, 30, &z).unwrap() {
            w.validate().unwrap();
            assert!(GroupTag::Gamma02.contains(&w.matrix()));
        }
        assert_eq!(sample_alternating(&mut rng, 30, &z).unwrap().len(), 30);
    }

    proptest! {
        #[test]
        fn quotient_form_matches_row_signs(
            a0 in -4i64..=4,
            a1 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
            rest in prop::collection::vec(prop::sample::select(vec![-4i64, -3, -2, 2, 3, 4]), 0..7),
        ) {
            let mut a = vec![a0, a1];
            a.extend(rest);
            if a.len() % 2 == 1 {
                a.push(2);
            }
            let w = AlternatingWord::new(a).unwrap();
            prop_assert_eq!(w.constant_from_rows().unwrap(), w.constant_from_quotients().unwrap());
        }
    }
}
