//! Best approximation, Jackson kernels and the Bernstein-type inequalities.
//!
//! Trigonometric polynomials of degree `n - 1` are written `T_{n-1}`. In the
//! sequence space every norm is diagonal, so the best approximant from
//! `T_{n-1}` is the Fourier sum and `E_n(f)` is the norm of the tail `|k| >= n`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fracdiff::{binom, difference_norm_parts, nonconstant_moduli};
use crate::orlicz::{luxemburg_norm, OrliczFunction};
use crate::scalar::{from_i64, lit, Real};
use crate::spectrum::{psi_derivative, CoeffSeq, PsiWeights};

/// `E_n(f)_M`: Luxemburg norm of the coefficients with `|k| >= n`.
pub fn best_approx<T: Real>(f: &CoeffSeq<T>, phi: &OrliczFunction<T>, n: u64) -> Result<T> {
    luxemburg_norm(phi, &f.tail(n))
}

/// Parameters of `K(t) = b_p (sin(pt/2) / sin(t/2))^{2 k0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec<T> {
    pub n: u64,
    pub k0: u64,
    pub p: u64,
    pub b_p: T,
}

impl<T: Real> KernelSpec<T> {
    /// Highest frequency carried by the kernel, `k0 (p - 1)`.
    pub fn degree(&self) -> u64 {
        self.k0 * (self.p - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacksonKernel<T> {
    pub spec: KernelSpec<T>,
    pub coeffs: CoeffSeq<T>,
}

/// Jackson kernel of order `n` serving moments up to `r`.
///
/// `k0 = ceil((r + 2) / 2)` and `p = floor(n / (2 k0)) + 1`, so the degree stays
/// at most `n / 2`. Coefficients are the `2 k0`-fold self-convolution of the
/// all-ones sequence of length `p`, computed in integers and then scaled so the
/// constant coefficient is `1 / (2π)`.
pub fn jackson_kernel<T: Real>(n: u64, r: u32) -> Result<JacksonKernel<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("kernel order n must be at least 1".into()));
    }
    let k0 = u64::from(r + 2).div_ceil(2);
    let p = n / (2 * k0) + 1;
    let counts = power_of_ones(p, 2 * k0)
        .ok_or_else(|| Error::InvalidParameter(format!("kernel coefficients overflow for n = {n}, r = {r}")))?;
    let shift = (k0 * (p - 1)) as i64;
    let a0 = counts[shift as usize] as f64;
    let two_pi = lit::<T>(std::f64::consts::TAU);
    let coeffs = counts
        .iter()
        .enumerate()
        .map(|(i, &a)| (i as i64 - shift, Complex::new(lit::<T>(a as f64 / a0) / two_pi, T::zero())))
        .collect();
    let spec = KernelSpec { n, k0, p, b_p: T::one() / (two_pi * lit(a0)) };
    Ok(JacksonKernel { spec, coeffs })
}

/// Coefficients of `(1 + z + … + z^{p-1})^m`, or `None` on overflow.
fn power_of_ones(p: u64, m: u64) -> Option<Vec<u128>> {
    let mut acc = vec![1u128];
    for _ in 0..m {
        let mut next = vec![0u128; acc.len() + p as usize - 1];
        for (i, &a) in acc.iter().enumerate() {
            for slot in &mut next[i..i + p as usize] {
                *slot = slot.checked_add(a)?;
            }
        }
        acc = next;
    }
    Some(acc)
}

impl<T: Real> JacksonKernel<T> {
    /// `Σ ĉ_m e^{imt}`, real since the kernel is even.
    pub fn evaluate(&self, t: T) -> T {
        // cos recurrence keeps this linear in the degree
        let c1 = t.cos();
        let (mut prev, mut cur) = (c1, T::one());
        let mut sum = self.coeffs.get(0).re;
        let two = lit::<T>(2.0);
        for m in 1..=self.spec.degree() as i64 {
            let next = two * c1 * cur - prev;
            prev = cur;
            cur = next;
            sum = sum + two * self.coeffs.get(m).re * cur;
        }
        sum
    }

    /// `b_p (sin(pt/2) / sin(t/2))^{2 k0}`, continued by `b_p p^{2 k0}` at the poles.
    pub fn closed_form(&self, t: T) -> T {
        let half = t / lit(2.0);
        let s = half.sin();
        let p = lit::<T>(self.spec.p as f64);
        let ratio = if s == T::zero() { p } else { (p * half).sin() / s };
        self.spec.b_p * ratio.powi(2 * self.spec.k0 as i32)
    }

    /// `∫_{-π}^{π} |t|^r |K(t)| dt` by the trapezoid rule on `points` intervals.
    pub fn moment(&self, r: T, points: usize) -> T {
        let pi = T::PI();
        let step = pi / lit(points as f64);
        let mut sum = T::zero();
        for i in 0..=points {
            let t = step * lit(i as f64);
            let w = if i == 0 || i == points { lit(0.5) } else { T::one() };
            let v = if r == T::zero() { T::one() } else { t.powf(r) };
            sum = sum + w * v * self.closed_form(t).abs();
        }
        lit::<T>(2.0) * step * sum
    }
}

/// Operator `σ_{n-1}` built from `K_{n-1}` and an integer-order difference.
///
/// Uses `f - σ = ∫ K_{n-1}(t) Δ_t^α f dt`, so on coefficients
/// `(f - σ)^(k) = f̂(k) Σ_{j=0}^{α} (-1)^j C(α, j) 2π K̂(kj)`. Only frequencies
/// with `|kj| <= deg K` contribute, which keeps `σ` inside `T_{n-1}`.
pub fn jackson_approximant<T: Real>(f: &CoeffSeq<T>, alpha: u32, n: u64) -> Result<CoeffSeq<T>> {
    let kernel = approximant_kernel(alpha, n)?;
    Ok(approximant_with(f, alpha, &kernel))
}

fn approximant_kernel<T: Real>(alpha: u32, n: u64) -> Result<JacksonKernel<T>> {
    if alpha == 0 {
        return Err(Error::NonIntegerOrder(0.0));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("approximant order n must be at least 2, got {n}")));
    }
    jackson_kernel(n - 1, alpha)
}

fn approximant_with<T: Real>(f: &CoeffSeq<T>, alpha: u32, kernel: &JacksonKernel<T>) -> CoeffSeq<T> {
    let two_pi = lit::<T>(std::f64::consts::TAU);
    let alpha_t = lit::<T>(f64::from(alpha));
    f.map(|k, c| {
        let mut s = T::zero();
        for j in 1..=u64::from(alpha) {
            let sign = if j % 2 == 0 { T::one() } else { -T::one() };
            s = s + sign * binom(alpha_t, j) * two_pi * kernel.coeffs.get(k * j as i64).re;
        }
        c * -s
    })
}

/// Residual of `σ_{n-1}` against `E_n` and the kernel-integral bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacksonCheck<T> {
    /// `‖f - σ_{n-1}‖_M`.
    pub residual: T,
    /// `E_n(f)_M`.
    pub best: T,
    /// `2 ∫ |K_{n-1}(t)| ω_α(f, |t|) dt`.
    pub bound: T,
}

/// Evaluates [`JacksonCheck`] with `points` trapezoid intervals on `[0, π]`.
///
/// `ω_α(f, t)` is taken as the running maximum of `‖Δ_h^α f‖` over the same
/// grid, which can only underestimate the bound.
pub fn jackson_check<T: Real>(f: &CoeffSeq<T>, phi: &OrliczFunction<T>, alpha: u32, n: u64, points: usize) -> Result<JacksonCheck<T>> {
    f.check_finite()?;
    let kernel = approximant_kernel::<T>(alpha, n)?;
    let sigma = approximant_with(f, alpha, &kernel);
    let residual = luxemburg_norm(phi, &(f - &sigma))?;
    let best = best_approx(f, phi, n)?;

    let (freqs, moduli) = nonconstant_moduli(f);
    let alpha_t = lit::<T>(f64::from(alpha));
    let step = T::PI() / lit(points as f64);
    let mut scratch = Vec::new();
    let mut omega = T::zero();
    let mut sum = T::zero();
    for i in 0..=points {
        let t = step * lit(i as f64);
        if !moduli.is_empty() {
            omega = omega.max(difference_norm_parts(phi, &freqs, &moduli, alpha_t, t, T::default_rel_tol(), &mut scratch));
        }
        let w = if i == 0 || i == points { lit(0.5) } else { T::one() };
        sum = sum + w * kernel.closed_form(t).abs() * omega;
    }
    // 2 ∫_{-π}^{π} = 4 ∫_0^π for an even integrand
    let bound = lit::<T>(4.0) * step * sum;
    Ok(JacksonCheck { residual, best, bound })
}

/// `min_{0<|k|<=n} |ψ_k|`.
fn psi_min_modulus<T: Real>(psi: &PsiWeights<T>, n: u64) -> Result<T> {
    match psi {
        PsiWeights::Fractional(r) if *r >= T::zero() => Ok(lit::<T>(n as f64).powf(-*r)),
        _ => {
            let mut eps = T::infinity();
            for k in 1..=n as i64 {
                eps = eps.min(psi.abs_weight(k)?).min(psi.abs_weight(-k)?);
            }
            Ok(eps)
        }
    }
}

/// `(‖τ^ψ‖_M, ‖τ‖_M / ε_n)` with `ε_n = min_{0<|k|<=n} |ψ_k|`.
pub fn psi_bernstein_ratio<T: Real>(tau: &CoeffSeq<T>, phi: &OrliczFunction<T>, psi: &PsiWeights<T>, n: u64) -> Result<(T, T)> {
    if n == 0 {
        return Err(Error::InvalidParameter("Bernstein ratio needs n >= 1".into()));
    }
    if let Some(k) = tau.support().find(|k| k.unsigned_abs() > n) {
        return Err(Error::OutOfBand { k, band: n });
    }
    let eps = psi_min_modulus(psi, n)?;
    let lhs = luxemburg_norm(phi, &psi_derivative(tau, psi)?)?;
    let bound = luxemburg_norm(phi, tau)? / eps;
    Ok((lhs, bound))
}

/// `(E_n(f), ε_n E_n(f^ψ))` with `ε_n = max_{|k|>=n} |ψ_k|`.
///
/// For decaying fractional weights `ε_n = n^{-r}`; otherwise the maximum runs
/// over the support of `f` inside the tail.
pub fn prop1_ratio<T: Real>(f: &CoeffSeq<T>, phi: &OrliczFunction<T>, psi: &PsiWeights<T>, n: u64) -> Result<(T, T)> {
    if n == 0 {
        return Err(Error::InvalidParameter("Proposition 1 ratio needs n >= 1".into()));
    }
    let tail = f.tail(n);
    let eps = match psi {
        PsiWeights::Fractional(r) if *r > T::zero() => lit::<T>(n as f64).powf(-*r),
        _ => {
            let mut eps = T::zero();
            for k in tail.support() {
                eps = eps.max(psi.abs_weight(k)?);
            }
            eps
        }
    };
    let lhs = luxemburg_norm(phi, &tail)?;
    let derived_tail = psi_derivative(&tail, psi)?;
    let bound = eps * luxemburg_norm(phi, &derived_tail)?;
    Ok((lhs, bound))
}

/// `Σ_{ν=1}^{n} ν^{α-1} E_ν / n^α`, the right side of the inverse inequality.
pub fn inverse_sum<T: Real>(e: &[T], alpha: T) -> T {
    let n = lit::<T>(e.len() as f64);
    let s: T = e
        .iter()
        .enumerate()
        .map(|(i, &ev)| from_i64::<T>(i as i64 + 1).powf(alpha - T::one()) * ev)
        .sum();
    s / n.powf(alpha)
}
