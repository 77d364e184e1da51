use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, then Newton on Pₙ
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 0 { 0.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫_{z0}^{z1} f(w) dw` along the straight segment, split into panels no
/// longer than the imaginary part at their start so that every panel stays
/// well inside the half plane.
pub fn segment_integral<F>(f: F, z0: Complex64, z1: Complex64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if z0.im <= 0.0 || z1.im <= 0.0 {
        return Err(Error::OutOfRange("segment leaves the upper half plane".into()));
    }
    if nodes == 0 {
        return Err(Error::OutOfRange("quadrature needs at least one node".into()));
    }
    let delta = z1 - z0;
    let len = delta.norm();
    if len == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rule = gauss_legendre(nodes);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut t = 0.0;
    while 1.0 - t > 1e-15 {
        let im = (z0 + delta * t).im;
        if im / len < 1e-12 {
            return Err(Error::Convergence("quadrature panels collapsed".into()));
        }
        let dt = (im / len).min(1.0 - t);
        let mid = z0 + delta * (t + dt / 2.0);
        let half = delta * (dt / 2.0);
        for &(x, w) in &rule {
            acc += f(mid + half * x)? * half * w;
        }
        t += dt;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let rule = gauss_legendre(n);
            let total: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-13, "n = {n}");
            // exact for degree 2n − 1
            let deg = 2 * n - 1;
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            let approx: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
            assert!((approx - exact).abs() < 1e-12);
            let even = 2 * (n - 1);
            let approx: f64 = rule.iter().map(|&(x, w)| w * x.powi(even as i32)).sum();
            assert!((approx - 2.0 / (even as f64 + 1.0)).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn path_integrals() {
        let z0 = Complex64::new(-1.0, 1.0);
        let z1 = Complex64::new(2.0, 0.05);
        // ∫ w² dw
        let v = segment_integral(|w| Ok(w * w), z0, z1, 8).unwrap();
        let exact = (z1 * z1 * z1 - z0 * z0 * z0) / 3.0;
        assert!((v - exact).norm() < 1e-12);
        // ∫ dw/w picks the principal log since the path avoids the cut
        let v = segment_integral(|w| Ok(1.0 / w), z0, z1, 32).unwrap();
        assert!((v - (z1.ln() - z0.ln())).norm() < 1e-12);
        assert_eq!(segment_integral(|w| Ok(w), z0, z0, 8).unwrap(), Complex64::new(0.0, 0.0));
    }
}
