//! The discriminant `Delta(z) = q prod (1 - q^n)^24`, `q = e^{2 pi i z}`, and
//! its holomorphic logarithm on the upper half plane.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_domain<F: Real>(z: Complex<F>) -> Result<()> {
    if !(z.im > F::zero()) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::DomainError(format!("z = {} + {}i", z.re, z.im)));
    }
    Ok(())
}

/// `|q| = e^{-2 pi Im z}`.
pub fn nome_modulus<F: Real>(im: F) -> F {
    (-F::TAU() * im).exp()
}

/// Bound on `|log Delta(z) - log Delta_N(z)|` after `n_terms` factors.
///
/// With `r = |q|`, `|log(1 - x)| <= |x| / (1 - |x|)` gives
/// `24 sum_{n>N} r^n / (1 - r^n) <= 24 r^{N+1} / (1 - r)^2`.
pub fn truncation_bound<F: Real>(im: F, n_terms: usize) -> F {
    let r = nome_modulus(im);
    let one = F::one();
    F::lit(24.0) * r.powi(n_terms as i32 + 1) / ((one - r) * (one - r))
}

/// Smallest term count whose truncation bound at `im` is below `tol`.
pub fn terms_for_accuracy<F: Real>(im: F, tol: F) -> usize {
    let r = nome_modulus(im);
    let one = F::one();
    if r >= one {
        return usize::MAX;
    }
    // r^{N+1} < tol (1-r)^2 / 24
    let target = (tol * (one - r) * (one - r) / F::lit(24.0)).ln() / r.ln();
    ((target - one).floor() + one).to_usize().unwrap_or(usize::MAX).max(1)
}

/// Truncated product `q prod_{n <= n_terms} (1 - q^n)^24`.
pub fn delta_q<F: Real>(z: Complex<F>, n_terms: usize) -> Result<Complex<F>> {
    check_domain(z)?;
    let q = (Complex::<F>::i() * z * F::TAU()).exp();
    let one = Complex::new(F::one(), F::zero());
    let mut qn = one;
    let mut prod = one;
    for _ in 0..n_terms {
        qn = qn * q;
        prod = prod * (one - qn).powi(24);
    }
    Ok(q * prod)
}

/// Holomorphic branch `2 pi i z + 24 sum log(1 - q^n)`, truncated at `n_terms`.
pub fn log_delta<F: Real>(z: Complex<F>, n_terms: usize) -> Result<Complex<F>> {
    check_domain(z)?;
    let q = (Complex::<F>::i() * z * F::TAU()).exp();
    let one = Complex::new(F::one(), F::zero());
    let mut qn = one;
    let mut sum = Complex::new(F::zero(), F::zero());
    for _ in 0..n_terms {
        qn = qn * q;
        sum = sum + (one - qn).ln();
    }
    Ok(Complex::<F>::i() * z * F::TAU() + sum * F::lit(24.0))
}
