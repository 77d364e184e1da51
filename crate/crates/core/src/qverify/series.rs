use std::f64::consts::PI;

use num_complex::Complex64;

use super::SeriesParams;
use crate::error::{Error, Result};

/// `e(z) = exp(2πiz)`
pub fn e(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * PI) * z).exp()
}

/// Truncated q-series and product expansions of `E₂`, `L`, `R`, `η`, `θ`
/// and `θ₄`, with divisor sums tabulated once.
#[derive(Clone, Debug)]
pub struct QSeries {
    params: SeriesParams,
    sigma: Vec<f64>,
    sigma_odd: Vec<f64>,
}

fn divisor_sums(n: usize, odd_only: bool) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    for d in 1..=n {
        if odd_only && d % 2 == 0 {
            continue;
        }
        for m in (d..=n).step_by(d) {
            out[m] += d as f64;
        }
    }
    out
}

impl QSeries {
    pub fn new(params: SeriesParams) -> Self {
        let n = params.terms;
        QSeries {
            params,
            sigma: divisor_sums(n, false),
            sigma_odd: divisor_sums(n, true),
        }
    }

    pub fn params(&self) -> &SeriesParams {
        &self.params
    }

    fn check_point(z: Complex64) -> Result<()> {
        if !(z.im > 0.0) || !z.is_finite() {
            return Err(Error::OutOfRange(format!("{z} is not in the upper half plane")));
        }
        Ok(())
    }

    fn refuse(&self, z: Complex64, bound: f64) -> Result<()> {
        if bound > self.params.tol {
            return Err(Error::Convergence(format!(
                "{} terms leave a tail up to {bound:.1e} at Im z = {}",
                self.params.terms, z.im
            )));
        }
        Ok(())
    }

    /// Rejects points where the dropped tail `Σ_{n>N} 24 σ(n) |q|ⁿ` may
    /// exceed the tolerance; `rate` is `|q|`.
    fn check_tail(&self, z: Complex64, rate: f64) -> Result<()> {
        Self::check_point(z)?;
        let n = self.params.terms as f64;
        self.refuse(z, 24.0 * n * (1.0 + n.ln()) * rate.powf(n + 1.0) / (1.0 - rate))
    }

    /// Same for the products, using `|log(1 + x)| ≤ 2|x|` on three factors
    /// per index; `rate` is `|e(z)|`.
    fn check_product_tail(&self, z: Complex64, rate: f64) -> Result<()> {
        Self::check_point(z)?;
        let n = self.params.terms as f64;
        self.refuse(z, 6.0 * rate.powf(n + 0.5) / (1.0 - rate))
    }

    fn eisenstein_like(&self, q: Complex64, coeffs: &[f64], scale: f64, alternate: bool) -> Complex64 {
        let mut qn = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, c) in coeffs.iter().enumerate().skip(1) {
            qn *= q;
            let sign = if alternate && n % 2 == 1 { -1.0 } else { 1.0 };
            acc += qn * (sign * c);
        }
        Complex64::new(1.0, 0.0) + acc * scale
    }

    /// `E₂(z) = 1 − 24 Σ σ₁(n) e(nz)`
    pub fn e2(&self, z: Complex64) -> Result<Complex64> {
        let q = e(z);
        self.check_tail(z, q.norm())?;
        Ok(self.eisenstein_like(q, &self.sigma, -24.0, false))
    }

    /// `L(z) = 1 + 24 Σ σ₁^odd(n) e^{πinz}`
    pub fn l(&self, z: Complex64) -> Result<Complex64> {
        let q = e(z / 2.0);
        self.check_tail(z, q.norm())?;
        Ok(self.eisenstein_like(q, &self.sigma_odd, 24.0, false))
    }

    /// `R(z) = L(z + 1)`, summed directly with alternating signs.
    pub fn r(&self, z: Complex64) -> Result<Complex64> {
        let q = e(z / 2.0);
        self.check_tail(z, q.norm())?;
        Ok(self.eisenstein_like(q, &self.sigma_odd, 24.0, true))
    }

    /// `Σ log(factor)` with principal logs. Each factor has positive real
    /// part when `|q| < 1`; anything else is refused.
    fn log_product(&self, factors: impl Iterator<Item = (Complex64, f64)>) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, weight) in factors {
            if f.re <= 0.0 {
                return Err(Error::BranchAmbiguity(format!("product factor {f} off the right half plane")));
            }
            acc += f.ln() * weight;
        }
        Ok(acc)
    }

    fn powers(q: Complex64, first: Complex64, n: usize) -> impl Iterator<Item = Complex64> {
        std::iter::successors(Some(first), move |p| Some(p * q)).take(n)
    }

    /// `log η(z) = πiz/12 + Σ log(1 − e(nz))`
    pub fn log_eta(&self, z: Complex64) -> Result<Complex64> {
        let q = e(z);
        self.check_product_tail(z, q.norm())?;
        let one = Complex64::new(1.0, 0.0);
        let prod = self.log_product(Self::powers(q, q, self.params.terms).map(|p| (one - p, 1.0)))?;
        Ok(Complex64::new(0.0, PI / 12.0) * z + prod)
    }

    fn log_jacobi(&self, z: Complex64, sign: f64) -> Result<Complex64> {
        let q = e(z);
        let h = e(z / 2.0);
        self.check_product_tail(z, q.norm())?;
        let one = Complex64::new(1.0, 0.0);
        let n = self.params.terms;
        let a = Self::powers(q, q, n).map(|p| (one - p, 1.0));
        let b = Self::powers(q, h, n).map(|p| (one + p * sign, 2.0));
        self.log_product(a.chain(b))
    }

    /// `log θ(z)` from `θ = ∏ (1 − qⁿ)(1 + q^{n−½})²`, `q = e(z)`.
    pub fn log_theta(&self, z: Complex64) -> Result<Complex64> {
        self.log_jacobi(z, 1.0)
    }

    /// `log θ₄(z)` from `θ₄ = ∏ (1 − qⁿ)(1 − q^{n−½})²`.
    pub fn log_theta4(&self, z: Complex64) -> Result<Complex64> {
        self.log_jacobi(z, -1.0)
    }

    /// `θ(z) = Σ_{n∈Z} e^{πin²z}` summed directly, as an independent check
    /// on the product.
    pub fn theta_sum(&self, z: Complex64, alternate: bool) -> Result<Complex64> {
        self.check_product_tail(z, e(z).norm())?;
        let mut acc = Complex64::new(1.0, 0.0);
        for n in 1..=self.params.terms {
            let t = (Complex64::new(0.0, PI * (n * n) as f64) * z).exp() * 2.0;
            acc += if alternate && n % 2 == 1 { -t } else { t };
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qs() -> QSeries {
        QSeries::new(SeriesParams::default())
    }

    #[test]
    fn divisor_tables() {
        let s = divisor_sums(12, false);
        assert_eq!(&s[1..=6], &[1.0, 3.0, 4.0, 7.0, 6.0, 12.0]);
        assert_eq!(s[12], 28.0);
        let o = divisor_sums(12, true);
        assert_eq!(&o[1..=6], &[1.0, 1.0, 4.0, 1.0, 6.0, 4.0]);
    }

    #[test]
    fn e2_at_i() {
        let v = qs().e2(c(0.0, 1.0)).unwrap();
        assert!((v - c(3.0 / PI, 0.0)).norm() < 1e-13, "{v}");
        let shifted = qs().e2(c(1.0, 1.0)).unwrap();
        assert!((shifted - v).norm() < 1e-13);
        assert!((qs().e2(c(0.0, 10.0)).unwrap() - 1.0).norm() < 1e-20);
    }

    #[test]
    fn log_eta_at_i() {
        // η(i) = Γ(1/4) / (2 π^{3/4})
        let expected = (3.625_609_908_221_908_f64 / (2.0 * PI.powf(0.75))).ln();
        let v = qs().log_eta(c(0.0, 1.0)).unwrap();
        assert!((v - c(expected, 0.0)).norm() < 1e-13, "{v} vs {expected}");
    }

    #[test]
    fn products_match_sums() {
        let q = qs();
        for z in [c(0.3, 1.1), c(-0.4, 0.7), c(2.2, 0.2)] {
            let t = q.log_theta(z).unwrap().exp();
            assert!((t - q.theta_sum(z, false).unwrap()).norm() < 1e-12);
            let t4 = q.log_theta4(z).unwrap().exp();
            assert!((t4 - q.theta_sum(z, true).unwrap()).norm() < 1e-12);
        }
        assert!(q.log_theta(c(0.0, 2.0)).unwrap().im.abs() < 1e-16);
    }

    #[test]
    fn periodicities() {
        let q = qs();
        let z = c(0.3, 1.1);
        let two = c(2.0, 0.0);
        assert!((q.log_theta4(z + two).unwrap() - q.log_theta4(z).unwrap()).norm() < 1e-13);
        assert!((q.r(z).unwrap() - q.l(z + 1.0).unwrap()).norm() < 1e-12);
        assert!((q.l(c(0.0, 10.0)).unwrap() - 1.0).norm() < 1e-11);
    }

    #[test]
    fn tail_guard() {
        let q = qs();
        assert!(matches!(q.e2(c(0.0, 0.001)), Err(Error::Convergence(_))));
        assert!(matches!(q.l(c(0.0, -1.0)), Err(Error::OutOfRange(_))));
        // products converge twice as fast as L
        assert!(q.l(c(0.0, 0.03)).is_err());
        assert!(q.log_theta4(c(0.0, 0.03)).is_ok());
        assert!(q.log_eta(c(0.0, 0.001)).is_err());
    }
}
