//! Fractional differences `Δ_h^α` and the modulus of smoothness `ω_α`.
//!
//! `Δ_h^α f(x) = Σ_j (-1)^j C(α, j) f(x - jh)` acts on coefficients as the
//! multiplier `(1 - e^{-ikh})^α`, taken on the principal branch. The base
//! `1 - e^{-iθ}` has real part `1 - cos θ >= 0`, so the branch is continuous
//! wherever the base is nonzero.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::orlicz::{luxemburg_norm_moduli, OrliczFunction};
use crate::scalar::{as_integer_order, from_i64, lit, Real};
use crate::search::golden_max;
use crate::spectrum::CoeffSeq;

/// Generalized binomial coefficient `α(α-1)…(α-j+1)/j!`.
pub fn binom<T: Real>(alpha: T, j: u64) -> T {
    let mut acc = T::one();
    for i in 0..j {
        let i = lit::<T>(i as f64);
        acc = acc * (alpha - i) / (i + T::one());
    }
    acc
}

/// `K(α) = Σ_j |C(α, j)|`, summed until the increment drops below `1e-14`
/// or a million terms have been added.
pub fn k_constant<T: Real>(alpha: T) -> T {
    const MAX_TERMS: u64 = 1_000_000;
    let stop = lit::<T>(1e-14);
    let mut term = T::one();
    let mut sum = T::one();
    for j in 1..=MAX_TERMS {
        let jj = lit::<T>(j as f64);
        term = term * (alpha - jj + T::one()) / jj;
        sum = sum + term.abs();
        if term.abs() < stop {
            break;
        }
    }
    sum
}

/// `|1 - e^{-iθ}|^α = (2|sin(θ/2)|)^α`.
#[inline]
pub fn multiplier_modulus<T: Real>(alpha: T, theta: T) -> T {
    let base = lit::<T>(2.0) * (theta / lit(2.0)).sin().abs();
    if alpha == T::one() {
        base
    } else if alpha == lit(2.0) {
        base * base
    } else {
        base.powf(alpha)
    }
}

/// `(1 - e^{-iθ})^α` on the principal branch.
pub fn difference_multiplier<T: Real>(alpha: T, theta: T) -> Complex<T> {
    let half = theta / lit(2.0);
    let s = half.sin();
    // 1 - e^{-iθ} = 2 sin²(θ/2) + i sin θ, written without cancellation
    let re = lit::<T>(2.0) * s * s;
    let im = theta.sin();
    let modulus = lit::<T>(2.0) * s.abs();
    if modulus == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let arg = im.atan2(re);
    Complex::from_polar(modulus.powf(alpha), alpha * arg)
}

/// Coefficients of `Δ_h^α f`. The constant term is annihilated.
pub fn frac_difference<T: Real>(f: &CoeffSeq<T>, alpha: T, h: T) -> CoeffSeq<T> {
    f.map(|k, c| if k == 0 { Complex::new(T::zero(), T::zero()) } else { c * difference_multiplier(alpha, from_i64::<T>(k) * h) })
}

/// Partial sum `Σ_{j <= J} (-1)^j C(α, j) e^{-ikjh} f̂(k)` of the defining series.
///
/// Exact when `α` is an integer and `J >= α`.
pub fn frac_difference_series<T: Real>(f: &CoeffSeq<T>, alpha: T, h: T, cutoff: u64) -> CoeffSeq<T> {
    let mut signed = Vec::with_capacity(cutoff as usize + 1);
    let mut b = T::one();
    for j in 0..=cutoff {
        if j > 0 {
            let jj = lit::<T>(j as f64);
            b = -b * (alpha - jj + T::one()) / jj;
        }
        signed.push(b);
    }
    f.map(|k, c| {
        let theta = from_i64::<T>(k) * h;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (j, &w) in signed.iter().enumerate() {
            if w != T::zero() {
                acc = acc + Complex::from_polar(w, -theta * lit(j as f64));
            }
        }
        c * acc
    })
}

/// Parameters of one fractional difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceParams<T> {
    pub alpha: T,
    pub h: T,
    /// Series cutoff used by the series form.
    pub cutoff: u64,
}

impl<T: Real> DifferenceParams<T> {
    pub const DEFAULT_CUTOFF: u64 = 10_000;

    pub fn new(alpha: T, h: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha.is_finite() && h.is_finite()) {
            return Err(Error::InvalidParameter(format!("difference order {alpha} / shift {h}")));
        }
        let cutoff = match as_integer_order(alpha) {
            Some(n) => u64::from(n),
            None => Self::DEFAULT_CUTOFF,
        };
        Ok(Self { alpha, h, cutoff })
    }

    pub fn with_cutoff(mut self, cutoff: u64) -> Result<Self> {
        if let Some(n) = as_integer_order(self.alpha) {
            if cutoff < u64::from(n) {
                return Err(Error::InvalidParameter(format!("cutoff {cutoff} below integer order {n}")));
            }
        }
        self.cutoff = cutoff;
        Ok(self)
    }

    pub fn apply(&self, f: &CoeffSeq<T>) -> CoeffSeq<T> {
        if self.alpha == T::zero() {
            return f.clone();
        }
        frac_difference(f, self.alpha, self.h)
    }

    pub fn apply_series(&self, f: &CoeffSeq<T>) -> CoeffSeq<T> {
        frac_difference_series(f, self.alpha, self.h, self.cutoff)
    }
}

/// Nonconstant part of a sequence as `(k, |c_k|)`, the only data `‖Δ_h^α f‖` needs.
pub(crate) fn nonconstant_moduli<T: Real>(f: &CoeffSeq<T>) -> (Vec<T>, Vec<T>) {
    f.iter().filter(|(k, _)| *k != 0).map(|(k, c)| (from_i64::<T>(k), c.norm())).unzip()
}

/// `‖Δ_h^α f‖_M` from precomputed frequencies and moduli.
pub(crate) fn difference_norm_parts<T: Real>(
    phi: &OrliczFunction<T>,
    freqs: &[T],
    moduli: &[T],
    alpha: T,
    h: T,
    rel_tol: T,
    scratch: &mut Vec<T>,
) -> T {
    scratch.clear();
    scratch.extend(freqs.iter().zip(moduli).map(|(&k, &u)| u * multiplier_modulus(alpha, k * h)));
    luxemburg_norm_moduli(phi, scratch, rel_tol)
}

/// `‖Δ_h^α f‖_M`.
pub fn difference_norm<T: Real>(phi: &OrliczFunction<T>, f: &CoeffSeq<T>, alpha: T, h: T) -> Result<T> {
    f.check_finite()?;
    if alpha == T::zero() {
        return Ok(luxemburg_norm_moduli(phi, &f.moduli(), T::default_rel_tol()));
    }
    let (freqs, moduli) = nonconstant_moduli(f);
    Ok(difference_norm_parts(phi, &freqs, &moduli, alpha, h, T::default_rel_tol(), &mut Vec::new()))
}

/// Search settings for [`modulus_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusOptions<T> {
    /// Uniform grid points on `[0, δ]`.
    pub grid: usize,
    /// Relative tolerance of each inner norm solve.
    pub rel_tol: T,
    /// Golden-section polish around the best grid point.
    pub refine: bool,
}

impl<T: Real> Default for ModulusOptions<T> {
    fn default() -> Self {
        Self { grid: 512, rel_tol: T::default_rel_tol(), refine: true }
    }
}

impl<T: Real> ModulusOptions<T> {
    pub fn with_grid(grid: usize) -> Self {
        Self { grid, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusEstimate<T> {
    pub value: T,
    /// Shift at which the supremum was found.
    pub argmax: T,
    /// Width of the final search bracket in `h`; zero when the supremum is exact.
    pub search_tolerance: T,
    /// True when `max|k|·δ <= π`, where every multiplier is monotone in `h`
    /// and the supremum sits at `h = δ`.
    pub monotone: bool,
}

/// `ω_α(f, δ) = sup_{|h| <= δ} ‖Δ_h^α f‖_M` with `grid` search points.
pub fn modulus<T: Real>(f: &CoeffSeq<T>, phi: &OrliczFunction<T>, alpha: T, delta: T, grid: usize) -> Result<T> {
    modulus_with(f, phi, alpha, delta, ModulusOptions::with_grid(grid)).map(|e| e.value)
}

/// Modulus of smoothness with search metadata.
///
/// The map `h ↦ ‖Δ_h^α f‖` is even, so only `[0, δ]` is searched: uniform grid,
/// then golden-section refinement on the two cells around the best grid point
/// (smallest `h` on ties). `α = 0` returns `‖f‖_M`.
pub fn modulus_with<T: Real>(
    f: &CoeffSeq<T>,
    phi: &OrliczFunction<T>,
    alpha: T,
    delta: T,
    opts: ModulusOptions<T>,
) -> Result<ModulusEstimate<T>> {
    f.check_finite()?;
    if opts.grid < 2 {
        return Err(Error::InvalidParameter(format!("modulus grid must have at least 2 points, got {}", opts.grid)));
    }
    if !(delta > T::zero() && delta.is_finite()) || !(alpha >= T::zero() && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("modulus needs alpha >= 0 and delta > 0, got {alpha}, {delta}")));
    }
    if alpha == T::zero() {
        let value = luxemburg_norm_moduli(phi, &f.moduli(), opts.rel_tol);
        return Ok(ModulusEstimate { value, argmax: T::zero(), search_tolerance: T::zero(), monotone: true });
    }
    let (freqs, moduli) = nonconstant_moduli(f);
    Ok(modulus_parts(phi, &freqs, &moduli, alpha, delta, opts))
}

pub(crate) fn modulus_parts<T: Real>(
    phi: &OrliczFunction<T>,
    freqs: &[T],
    moduli: &[T],
    alpha: T,
    delta: T,
    opts: ModulusOptions<T>,
) -> ModulusEstimate<T> {
    if moduli.is_empty() {
        return ModulusEstimate { value: T::zero(), argmax: T::zero(), search_tolerance: T::zero(), monotone: true };
    }
    let mut scratch = Vec::with_capacity(moduli.len());
    let mut g = |h: T| difference_norm_parts(phi, freqs, moduli, alpha, h, opts.rel_tol, &mut scratch);

    let kmax = freqs.iter().fold(T::zero(), |m, k| m.max(k.abs()));
    if kmax * delta <= T::PI() {
        return ModulusEstimate { value: g(delta), argmax: delta, search_tolerance: T::zero(), monotone: true };
    }

    let cells = lit::<T>((opts.grid - 1) as f64);
    let step = delta / cells;
    let mut best_i = 0;
    let mut best = T::neg_infinity();
    for i in 0..opts.grid {
        let h = if i + 1 == opts.grid { delta } else { step * lit(i as f64) };
        let v = g(h);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut argmax = if best_i + 1 == opts.grid { delta } else { step * lit(best_i as f64) };
    let mut search_tolerance = step;
    if opts.refine {
        let lo = if best_i == 0 { T::zero() } else { step * lit((best_i - 1) as f64) };
        let hi = (step * lit((best_i + 1) as f64)).min(delta);
        let e = golden_max(&mut g, lo, hi, step * lit(1e-7), 200);
        if e.value > best {
            best = e.value;
            argmax = e.x;
        }
        search_tolerance = e.bracket;
    }
    ModulusEstimate { value: best, argmax, search_tolerance, monotone: false }
}
