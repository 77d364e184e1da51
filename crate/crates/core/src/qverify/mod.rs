//! Floating point checks of the transformation laws of `E₂`, `log η`,
//! `log θ`, `log θ₄` and of the cocycle integrals behind the fast
//! Hardy sum formulas.

mod quad;
mod series;
mod words;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

pub use quad::{gauss_legendre, segment_integral};
pub use series::{e, QSeries};
pub use words::{
    image, random_group_element, sample_alternating, sample_cocycle_words, sample_matrices,
    AlternatingWord, CocycleWord, MIN_IM,
};

use crate::arith::{GroupTag, Mat2};
use crate::error::{Error, Result};
use crate::sums::{dedekind_recursive, hardy_s4_from_cfe, hardy_s_from_cfe};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfPlanePoint {
    pub re: f64,
    pub im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::OutOfRange(format!("{re} + {im}i is not in the upper half plane")));
        }
        Ok(HalfPlanePoint { re, im })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesParams {
    /// truncation order of every series and product
    pub terms: usize,
    /// Gauss–Legendre nodes per quadrature panel
    pub quad_nodes: usize,
    pub tol: f64,
}

impl Default for SeriesParams {
    fn default() -> Self {
        SeriesParams { terms: 200, quad_nodes: 64, tol: 1e-8 }
    }
}

impl SeriesParams {
    pub fn new(terms: usize, quad_nodes: usize, tol: f64) -> Result<Self> {
        if terms == 0 || quad_nodes == 0 || !(tol > 0.0) {
            return Err(Error::OutOfRange("terms and nodes must be positive, tol > 0".into()));
        }
        Ok(SeriesParams { terms, quad_nodes, tol })
    }
}

fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CocycleReport {
    #[serde(serialize_with = "complex_pair")]
    pub lhs: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub rhs: Complex64,
    pub abs_error: f64,
    pub pass: bool,
}

impl CocycleReport {
    pub fn new(lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs_error = (lhs - rhs).norm();
        CocycleReport { lhs, rhs, abs_error, pass: abs_error < tol }
    }
}

/// `6/(πi)`
fn six_over_pi_i() -> Complex64 {
    Complex64::new(0.0, -6.0 / PI)
}

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

fn to_f64(x: &num_bigint::BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn require_positive_c(a: &Mat2) -> Result<()> {
    if !a.c().is_positive() {
        return Err(Error::OutOfRange(format!("needs c > 0, got {a}")));
    }
    Ok(())
}

/// Evaluators and checks sharing one set of series tables.
#[derive(Clone, Debug)]
pub struct Verifier {
    series: QSeries,
}

impl Verifier {
    pub fn new(params: SeriesParams) -> Self {
        Verifier { series: QSeries::new(params) }
    }

    pub fn series(&self) -> &QSeries {
        &self.series
    }

    fn params(&self) -> &SeriesParams {
        self.series.params()
    }

    fn report(&self, lhs: Complex64, rhs: Complex64) -> CocycleReport {
        CocycleReport::new(lhs, rhs, self.params().tol)
    }

    pub fn integral<F>(&self, f: F, z0: Complex64, z1: Complex64) -> Result<Complex64>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        segment_integral(f, z0, z1, self.params().quad_nodes)
    }

    /// `φ(A) = ∫_z^{A.z} L`
    pub fn phi(&self, a: &Mat2, z: Complex64) -> Result<Complex64> {
        self.integral(|w| self.series.l(w), z, image(a, z))
    }

    /// `ψ(B) = ∫_z^{B.z} R`
    pub fn psi(&self, b: &Mat2, z: Complex64) -> Result<Complex64> {
        self.integral(|w| self.series.r(w), z, image(b, z))
    }

    /// `(cz + d)^{−2} E₂(A.z)` against `E₂(z) + (6/πi) c/(cz + d)`.
    pub fn check_e2_quasimodular(&self, a: &Mat2, z: HalfPlanePoint) -> Result<CocycleReport> {
        let z = z.z();
        let [_, _, c, d] = a.entries_f64();
        let j = z * c + d;
        let lhs = self.series.e2(image(a, z))? / (j * j);
        let rhs = self.series.e2(z)? + six_over_pi_i() * c / j;
        Ok(self.report(lhs, rhs))
    }

    /// `log η(A.z) − log η(z)` against
    /// `½ log((cz + d)/i) + (πi/12)((a + d)/c − 12 s(d, c))`.
    pub fn check_eta_transform(&self, a: &Mat2, z: HalfPlanePoint) -> Result<CocycleReport> {
        require_positive_c(a)?;
        let z = z.z();
        let [ea, _, c, d] = a.entries_f64();
        let s = dedekind_recursive(a.d().clone(), a.c().clone())?.to_f64();
        let lhs = self.series.log_eta(image(a, z))? - self.series.log_eta(z)?;
        let rhs = ((z * c + d) / i()).ln() * 0.5 + Complex64::new(0.0, PI / 12.0) * ((ea + d) / c - 12.0 * s);
        Ok(self.report(lhs, rhs))
    }

    /// `log θ(A.z) − log θ(z)` against `½ log((cz + d)/i) + (πi/4) S(d, c)`.
    pub fn check_theta_transform(&self, a: &Mat2, z: HalfPlanePoint) -> Result<CocycleReport> {
        if !GroupTag::Theta.contains(a) {
            return Err(Error::NotInGroup(GroupTag::Theta));
        }
        require_positive_c(a)?;
        let z = z.z();
        let [_, _, c, d] = a.entries_f64();
        let s = to_f64(&hardy_s_from_cfe(a.d().clone(), a.c().clone())?);
        let lhs = self.series.log_theta(image(a, z))? - self.series.log_theta(z)?;
        let rhs = ((z * c + d) / i()).ln() * 0.5 + Complex64::new(0.0, PI / 4.0 * s);
        Ok(self.report(lhs, rhs))
    }

    /// `log θ₄(A.z) − log θ₄(z)` against `½ log((cz + d)/i) − (πi/4) S₄(d, c)`.
    pub fn check_theta4_transform(&self, a: &Mat2, z: HalfPlanePoint) -> Result<CocycleReport> {
        if !GroupTag::Gamma02.contains(a) {
            return Err(Error::NotInGroup(GroupTag::Gamma02));
        }
        require_positive_c(a)?;
        let z = z.z();
        let [_, _, c, d] = a.entries_f64();
        let s4 = to_f64(&hardy_s4_from_cfe(a.d().clone(), a.c().clone())?);
        let lhs = self.series.log_theta4(image(a, z))? - self.series.log_theta4(z)?;
        let rhs = ((z * c + d) / i()).ln() * 0.5 - Complex64::new(0.0, PI / 4.0 * s4);
        Ok(self.report(lhs, rhs))
    }

    /// `(6/πi) log((cz + d)/(sign(c) i))`
    fn log_term(&self, a: &Mat2, z: Complex64) -> Result<Complex64> {
        let [_, _, c, d] = a.entries_f64();
        if c == 0.0 {
            return Err(Error::UnsupportedWord("c = 0 has no log term".into()));
        }
        Ok(six_over_pi_i() * ((z * c + d) / (i() * c.signum())).ln())
    }

    /// `∫_z^{A.z} E₂` for `A = A₀⋯Aₙ` against the log term plus
    /// `Σ (−1)^k a_k + 3 Σ sign(c_k d_k)`.
    pub fn check_cycle_integral_e2(&self, w: &AlternatingWord, z: HalfPlanePoint) -> Result<CocycleReport> {
        let a = w.matrix();
        let z = z.z();
        let constant = w.constant_from_rows()? as f64;
        let lhs = self.integral(|t| self.series.e2(t), z, image(&a, z))?;
        let rhs = self.log_term(&a, z)? + constant;
        Ok(self.report(lhs, rhs))
    }

    /// `∫_z^{A.z} (E₂ − R)` for theta words, `∫ (E₂ − L)` for `Γ⁰(2)` words,
    /// against the log term plus [`CocycleWord::constant`].
    pub fn check_cocycle(&self, w: &CocycleWord, z: HalfPlanePoint) -> Result<CocycleReport> {
        w.validate()?;
        let a = w.matrix();
        let z = z.z();
        let lhs = match w {
            CocycleWord::Theta { .. } => {
                self.integral(|t| Ok(self.series.e2(t)? - self.series.r(t)?), z, image(&a, z))?
            }
            CocycleWord::Gamma02 { .. } => {
                self.integral(|t| Ok(self.series.e2(t)? - self.series.l(t)?), z, image(&a, z))?
            }
        };
        let rhs = self.log_term(&a, z)? + w.constant() as f64;
        Ok(self.report(lhs, rhs))
    }

    /// Term-wise `log θ₄(A.z) − log θ₄(z)` (or `log θ` for `Γ_θ`) against
    /// `(πi/12) ∫_z^{A.z} (E₂ − L)` (or `E₂ − R`).
    pub fn check_log_integral(&self, a: &Mat2, tag: GroupTag, z: HalfPlanePoint) -> Result<CocycleReport> {
        if !tag.contains(a) {
            return Err(Error::NotInGroup(tag));
        }
        let z = z.z();
        let az = image(a, z);
        let (lhs, integral) = match tag {
            GroupTag::Gamma02 => (
                self.series.log_theta4(az)? - self.series.log_theta4(z)?,
                self.integral(|t| Ok(self.series.e2(t)? - self.series.l(t)?), z, az)?,
            ),
            GroupTag::Theta => (
                self.series.log_theta(az)? - self.series.log_theta(z)?,
                self.integral(|t| Ok(self.series.e2(t)? - self.series.r(t)?), z, az)?,
            ),
            GroupTag::SL2 => (
                self.series.log_eta(az)? - self.series.log_eta(z)?,
                self.integral(|t| self.series.e2(t), z, az)?,
            ),
        };
        Ok(self.report(lhs, Complex64::new(0.0, PI / 12.0) * integral))
    }

    /// `φ(AB) − φ(A) − φ(B)` (or `ψ` on `Γ_θ`) against zero.
    pub fn check_homomorphism(&self, a: &Mat2, b: &Mat2, tag: GroupTag, z: HalfPlanePoint) -> Result<CocycleReport> {
        let z = z.z();
        let f = |m: &Mat2| match tag {
            GroupTag::Gamma02 => self.phi(m, z),
            GroupTag::Theta => self.psi(m, z),
            GroupTag::SL2 => Err(Error::OutOfRange("no weight 2 form on SL2(Z)".into())),
        };
        let ab = a * b;
        let lhs = f(&ab)?;
        let rhs = f(a)? + f(b)?;
        Ok(self.report(lhs, rhs))
    }

    /// The same cocycle at two basepoints.
    pub fn check_basepoint_independence(
        &self,
        a: &Mat2,
        tag: GroupTag,
        z1: HalfPlanePoint,
        z2: HalfPlanePoint,
    ) -> Result<CocycleReport> {
        let f = |z: Complex64| match tag {
            GroupTag::Gamma02 => self.phi(a, z),
            GroupTag::Theta => self.psi(a, z),
            GroupTag::SL2 => Err(Error::OutOfRange("no weight 2 form on SL2(Z)".into())),
        };
        Ok(self.report(f(z1.z())?, f(z2.z())?))
    }

    /// Central differences of `log θ₄` against `(πi/12)(E₂ − L)`.
    pub fn check_log_derivative(&self, z: HalfPlanePoint) -> Result<CocycleReport> {
        let z = z.z();
        let h = 1e-3;
        let f = |t: f64| self.series.log_theta4(z + t);
        // five-point stencil, error O(h⁴)
        let lhs = (f(-2.0 * h)? - f(-h)? * 8.0 + f(h)? * 8.0 - f(2.0 * h)?) / (12.0 * h);
        let rhs = Complex64::new(0.0, PI / 12.0) * (self.series.e2(z)? - self.series.l(z)?);
        Ok(CocycleReport::new(lhs, rhs, 1e-6))
    }

    /// `L(z)` against `2E₂(z) − E₂(z/2)`.
    pub fn check_doubling(&self, z: HalfPlanePoint) -> Result<CocycleReport> {
        let z = z.z();
        let lhs = self.series.l(z)?;
        let rhs = self.series.e2(z)? * 2.0 - self.series.e2(z / 2.0)?;
        Ok(CocycleReport::new(lhs, rhs, 1e-10))
    }
}

pub fn e2_eval(z: HalfPlanePoint, p: &SeriesParams) -> Result<Complex64> {
    QSeries::new(p.clone()).e2(z.z())
}

pub fn l_eval(z: HalfPlanePoint, p: &SeriesParams) -> Result<Complex64> {
    QSeries::new(p.clone()).l(z.z())
}

pub fn r_eval(z: HalfPlanePoint, p: &SeriesParams) -> Result<Complex64> {
    QSeries::new(p.clone()).r(z.z())
}

pub fn log_eta(z: HalfPlanePoint, p: &SeriesParams) -> Result<Complex64> {
    QSeries::new(p.clone()).log_eta(z.z())
}

pub fn log_theta(z: HalfPlanePoint, p: &SeriesParams) -> Result<Complex64> {
    QSeries::new(p.clone()).log_theta(z.z())
}

pub fn log_theta4(z: HalfPlanePoint, p: &SeriesParams) -> Result<Complex64> {
    QSeries::new(p.clone()).log_theta4(z.z())
}

/// Named families of checks run over random words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    E2Quasimodular,
    EtaTransform,
    ThetaTransform,
    Theta4Transform,
    CycleIntegralE2,
    CocycleTheta,
    CocycleTheta4,
    LogIntegral,
    Homomorphism,
    BasepointIndependence,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::E2Quasimodular,
        Suite::EtaTransform,
        Suite::ThetaTransform,
        Suite::Theta4Transform,
        Suite::CycleIntegralE2,
        Suite::CocycleTheta,
        Suite::CocycleTheta4,
        Suite::LogIntegral,
        Suite::Homomorphism,
        Suite::BasepointIndependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::E2Quasimodular => "e2_quasimodular",
            Suite::EtaTransform => "eta_transform",
            Suite::ThetaTransform => "theta_transform",
            Suite::Theta4Transform => "theta4_transform",
            Suite::CycleIntegralE2 => "cycle_integral_e2",
            Suite::CocycleTheta => "cocycle_theta",
            Suite::CocycleTheta4 => "cocycle_theta4",
            Suite::LogIntegral => "log_integral",
            Suite::Homomorphism => "homomorphism",
            Suite::BasepointIndependence => "basepoint_independence",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub words: usize,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

/// The default basepoints `0.3 + 1.6i`, `−0.2 + 1.1i` and `0.45 + 2.3i`.
pub fn default_basepoints() -> Vec<HalfPlanePoint> {
    [(0.3, 1.6), (-0.2, 1.1), (0.45, 2.3)]
        .into_iter()
        .map(|(re, im)| HalfPlanePoint { re, im })
        .collect()
}

/// Runs `suite` over `words` random words (seeded) at every basepoint.
pub fn run_suite(
    suite: Suite,
    verifier: &Verifier,
    basepoints: &[HalfPlanePoint],
    words: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs: Vec<Complex64> = basepoints.iter().map(|p| p.z()).collect();
    let mut results: Vec<(String, CocycleReport)> = Vec::new();
    let mut push = |label: String, r: CocycleReport| results.push((label, r));
    let tags_for_pair = [GroupTag::Theta, GroupTag::Gamma02];
    match suite {
        Suite::E2Quasimodular | Suite::EtaTransform | Suite::ThetaTransform | Suite::Theta4Transform => {
            let tag = match suite {
                Suite::ThetaTransform => GroupTag::Theta,
                Suite::Theta4Transform => GroupTag::Gamma02,
                _ => GroupTag::SL2,
            };
            let need_c = suite != Suite::E2Quasimodular;
            for m in sample_matrices(&mut rng, tag, words, &zs, need_c)? {
                for &z in basepoints {
                    let r = match suite {
                        Suite::E2Quasimodular => verifier.check_e2_quasimodular(&m, z)?,
                        Suite::EtaTransform => verifier.check_eta_transform(&m, z)?,
                        Suite::ThetaTransform => verifier.check_theta_transform(&m, z)?,
                        _ => verifier.check_theta4_transform(&m, z)?,
                    };
                    push(format!("{m} at {} + {}i", z.re, z.im), r);
                }
            }
        }
        Suite::CycleIntegralE2 => {
            for w in sample_alternating(&mut rng, words, &zs)? {
                for &z in basepoints {
                    push(format!("{:?} at {} + {}i", w.entries(), z.re, z.im), verifier.check_cycle_integral_e2(&w, z)?);
                }
            }
        }
        Suite::CocycleTheta | Suite::CocycleTheta4 => {
            let tag = if suite == Suite::CocycleTheta { GroupTag::Theta } else { GroupTag::Gamma02 };
            for w in sample_cocycle_words(&mut rng, tag, words, &zs)? {
                for &z in basepoints {
                    push(format!("{w:?} at {} + {}i", z.re, z.im), verifier.check_cocycle(&w, z)?);
                }
            }
        }
        Suite::LogIntegral => {
            for tag in [GroupTag::SL2, GroupTag::Theta, GroupTag::Gamma02] {
                for m in sample_matrices(&mut rng, tag, words, &zs, false)? {
                    for &z in basepoints {
                        push(format!("{tag} {m}"), verifier.check_log_integral(&m, tag, z)?);
                    }
                }
            }
        }
        Suite::Homomorphism => {
            for tag in tags_for_pair {
                let ms = sample_matrices(&mut rng, tag, 2 * words, &zs, false)?;
                let mut pairs = 0;
                for pair in ms.chunks(2) {
                    let ab = &pair[0] * &pair[1];
                    if !zs.iter().all(|&z| image(&ab, z).im >= MIN_IM) {
                        continue;
                    }
                    pairs += 1;
                    for &z in basepoints {
                        push(format!("{tag} {} * {}", pair[0], pair[1]), verifier.check_homomorphism(&pair[0], &pair[1], tag, z)?);
                    }
                }
                if pairs == 0 {
                    return Err(Error::Internal("no well-conditioned products".into()));
                }
            }
        }
        Suite::BasepointIndependence => {
            if basepoints.len() < 2 {
                return Err(Error::OutOfRange("needs at least two basepoints".into()));
            }
            for tag in tags_for_pair {
                for m in sample_matrices(&mut rng, tag, words, &zs, false)? {
                    for pair in basepoints.windows(2) {
                        push(format!("{tag} {m}"), verifier.check_basepoint_independence(&m, tag, pair[0], pair[1])?);
                    }
                }
            }
        }
    }
    let failures: Vec<&(String, CocycleReport)> = results.iter().filter(|(_, r)| !r.pass).collect();
    Ok(SuiteReport {
        suite: suite.name(),
        words,
        cases: results.len(),
        failures: failures.len(),
        max_error: results.iter().map(|(_, r)| r.abs_error).fold(0.0, f64::max),
        first_failure: failures.first().map(|(l, r)| format!("{l}: error {:.3e}", r.abs_error)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Verifier {
        Verifier::new(SeriesParams::default())
    }

    fn hp(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(re, im).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d).unwrap()
    }

    #[test]
    fn e2_examples() {
        let r = v().check_e2_quasimodular(&Mat2::s(), hp(0.0, 1.0)).unwrap();
        assert!(r.abs_error < 1e-9, "{r:?}");
        assert!((r.lhs + v().series().e2(i()).unwrap()).norm() < 1e-12);
        assert!(v().check_e2_quasimodular(&Mat2::t(), hp(0.3, 1.1)).unwrap().abs_error < 1e-12);
        assert!(v().check_e2_quasimodular(&m(2, 1, 1, 1), hp(0.3, 1.1)).unwrap().pass);
    }

    #[test]
    fn eta_examples() {
        assert!(v().check_eta_transform(&Mat2::v(), hp(0.3, 1.6)).unwrap().pass);
        assert!(v().check_eta_transform(&m(2, 1, 1, 1), hp(0.0, 2.0)).unwrap().pass);
        assert!(matches!(
            v().check_eta_transform(&Mat2::t(), hp(0.3, 1.6)),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn theta_examples() {
        let r = v().check_theta_transform(&Mat2::s(), hp(0.0, 1.0)).unwrap();
        assert!(r.lhs.norm() < 1e-14 && r.pass);
        assert!(v().check_theta_transform(&Mat2::s(), hp(0.0, 2.0)).unwrap().pass);
        assert!(v().check_theta_transform(&m(1, 2, 2, 5), hp(0.3, 1.6)).unwrap().pass);
        assert!(v().check_theta_transform(&m(2, -1, 1, 0), hp(0.3, 1.6)).unwrap().pass);
        assert!(matches!(
            v().check_theta_transform(&Mat2::v(), hp(0.3, 1.6)),
            Err(Error::NotInGroup(GroupTag::Theta))
        ));
    }

    #[test]
    fn theta4_examples() {
        assert!(v().check_theta4_transform(&Mat2::v(), hp(0.3, 1.6)).unwrap().pass);
        assert!(v().check_theta4_transform(&m(1, 2, 1, 3), hp(0.3, 1.6)).unwrap().pass);
        assert!(v().check_theta4_transform(&m(3, 2, 4, 3), hp(0.3, 1.6)).unwrap().pass);
    }

    #[test]
    fn generator_values() {
        let ver = v();
        let z = Complex64::new(0.3, 1.1);
        let t2 = Mat2::t_pow(&2.into());
        assert!((ver.phi(&t2, z).unwrap() - 2.0).norm() < 1e-8);
        let footnote = ver
            .integral(|w| ver.series().l(w), Complex64::new(-1.0, 1.0), Complex64::new(1.0, 1.0))
            .unwrap();
        assert!((footnote - 2.0).norm() < 1e-8);
        assert!((ver.phi(&Mat2::v(), z).unwrap() - 2.0).norm() < 1e-8);
        assert!(ver.psi(&Mat2::s(), z).unwrap().norm() < 1e-8);
        assert!((ver.psi(&t2, z).unwrap() - 2.0).norm() < 1e-8);
        assert_eq!(ver.integral(|w| ver.series().l(w), z, z).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cycle_and_cocycle_examples() {
        let ver = v();
        let w = AlternatingWord::new(vec![0, 2]).unwrap();
        assert!(ver.check_cycle_integral_e2(&w, hp(0.3, 1.6)).unwrap().abs_error < 1e-7);
        let theta = CocycleWord::Theta { c0: 0, c: vec![-1] };
        assert!(ver.check_cocycle(&theta, hp(0.3, 1.6)).unwrap().pass);
        let s = CocycleWord::Theta { c0: 0, c: vec![] };
        assert_eq!(s.constant(), 0);
        assert!(ver.check_cocycle(&s, hp(0.3, 1.6)).unwrap().pass);
        let vw = CocycleWord::Gamma02 { a0: 0, a: vec![1] };
        assert!(ver.check_cocycle(&vw, hp(0.3, 1.6)).unwrap().pass);
    }

    #[test]
    fn pointwise_identities() {
        for z in default_basepoints() {
            assert!(v().check_log_derivative(z).unwrap().pass);
            assert!(v().check_doubling(z).unwrap().pass);
        }
    }

    #[test]
    fn small_suite_runs() {
        let ver = v();
        let zs = default_basepoints();
        for suite in Suite::ALL {
            let points = if suite == Suite::BasepointIndependence { &zs[..] } else { &zs[..1] };
            let r = run_suite(suite, &ver, points, 4, 11).unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }
}
