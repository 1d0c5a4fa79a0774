//! Peetre K-functional `K_α(δ, f) = inf_h ‖f - h‖_M + δ^α ‖h^(α)‖_M`.
//!
//! The infimum is restricted to `h` with frequencies `|k| <= N`. Candidates are
//! the Fourier sums `S_m f`, optionally followed by a per-coefficient shrinkage
//! polish `h = Σ c_k f̂(k) e^{ikx}` with `c_k ∈ [0, 1]`. The objective is convex
//! in the `c_k`, so coordinate descent can only lower the scan value.

use crate::error::{Error, Result};
use crate::fracdiff::frac_difference;
use crate::orlicz::{luxemburg_norm, luxemburg_norm_moduli, OrliczFunction};
use crate::scalar::{from_i64, lit, Real};
use crate::search::golden_min;
use crate::spectrum::{psi_derivative, CoeffSeq, PsiWeights};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KOptions {
    /// Frequency band of the admissible `h`; defaults to the largest frequency of `f`.
    pub band: Option<u64>,
    pub polish: bool,
    /// Coordinate-descent sweeps of the polish phase.
    pub sweeps: usize,
}

impl Default for KOptions {
    fn default() -> Self {
        Self { band: None, polish: true, sweeps: 3 }
    }
}

impl KOptions {
    pub fn scan_only() -> Self {
        Self { polish: false, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KEstimate<T> {
    pub value: T,
    /// `m` of the best Fourier-sum candidate `S_m f`.
    pub minimizer_degree: u64,
    /// Distinct candidates evaluated during the scan (`h = 0` included).
    pub candidates_tried: usize,
    /// True when the polish phase ran.
    pub refine_used: bool,
    /// Scan value minus final value; zero without polish.
    pub refine_gain: T,
}

/// `K_α(δ, f)` over `h` with `|k| <= n`, scan plus polish.
pub fn k_functional<T: Real>(f: &CoeffSeq<T>, phi: &OrliczFunction<T>, alpha: T, delta: T, n: u64) -> Result<KEstimate<T>> {
    k_functional_with(f, phi, alpha, delta, KOptions { band: Some(n), ..KOptions::default() })
}

pub fn k_functional_with<T: Real>(
    f: &CoeffSeq<T>,
    phi: &OrliczFunction<T>,
    alpha: T,
    delta: T,
    opts: KOptions,
) -> Result<KEstimate<T>> {
    f.check_finite()?;
    if !(alpha > T::zero() && delta > T::zero() && alpha.is_finite() && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("K-functional needs alpha > 0 and delta > 0, got {alpha}, {delta}")));
    }
    let band = opts.band.unwrap_or_else(|| f.max_frequency());
    let penalty = delta.powf(alpha);
    let tol = T::default_rel_tol();

    // (|k|, |f̂(k)|, |k|^α |f̂(k)|) sorted by |k|, so S_m f is a prefix
    let mut entries: Vec<(u64, T, T)> = f
        .iter()
        .map(|(k, c)| {
            let u = c.norm();
            let w = if k == 0 { T::zero() } else { from_i64::<T>(k).abs().powf(alpha) * u };
            (k.unsigned_abs(), u, w)
        })
        .collect();
    entries.sort_by_key(|e| e.0);

    let objective = |cut: usize, scratch: &mut Vec<T>| -> T {
        scratch.clear();
        scratch.extend(entries[cut..].iter().map(|e| e.1));
        let rest = luxemburg_norm_moduli(phi, scratch, tol);
        scratch.clear();
        scratch.extend(entries[..cut].iter().map(|e| e.2));
        rest + penalty * luxemburg_norm_moduli(phi, scratch, tol)
    };

    let mut scratch = Vec::with_capacity(entries.len());
    // h = 0
    let mut best = objective(0, &mut scratch);
    let mut best_cut = 0;
    let mut best_degree = 0;
    let mut tried = 1;
    let mut cut = 0;
    while cut < entries.len() && entries[cut].0 <= band {
        let m = entries[cut].0;
        while cut < entries.len() && entries[cut].0 == m {
            cut += 1;
        }
        tried += 1;
        let v = objective(cut, &mut scratch);
        if v < best {
            best = v;
            best_cut = cut;
            best_degree = m;
        }
    }

    let mut estimate =
        KEstimate { value: best, minimizer_degree: best_degree, candidates_tried: tried, refine_used: false, refine_gain: T::zero() };
    if opts.polish {
        let polished = polish(phi, &entries, best_cut, band, penalty, opts.sweeps, tol);
        if polished < best {
            estimate.value = polished;
            estimate.refine_gain = best - polished;
        }
        estimate.refine_used = true;
    }
    Ok(estimate)
}

fn polish<T: Real>(
    phi: &OrliczFunction<T>,
    entries: &[(u64, T, T)],
    cut: usize,
    band: u64,
    penalty: T,
    sweeps: usize,
    tol: T,
) -> T {
    let mut c: Vec<T> = (0..entries.len()).map(|i| if i < cut { T::one() } else { T::zero() }).collect();
    let mut rest = Vec::with_capacity(entries.len());
    let mut smooth = Vec::with_capacity(entries.len());
    let mut eval = |c: &[T]| -> T {
        rest.clear();
        smooth.clear();
        for (e, &ci) in entries.iter().zip(c) {
            rest.push((T::one() - ci) * e.1);
            smooth.push(ci * e.2);
        }
        luxemburg_norm_moduli(phi, &rest, tol) + penalty * luxemburg_norm_moduli(phi, &smooth, tol)
    };
    // the constant term costs nothing in h^(α)
    for (ci, e) in c.iter_mut().zip(entries) {
        if e.0 == 0 {
            *ci = T::one();
        }
    }
    let mut value = eval(&c);
    for _ in 0..sweeps {
        for i in 0..entries.len() {
            if entries[i].0 == 0 || entries[i].0 > band {
                continue;
            }
            let mut trial = c.clone();
            let e = golden_min(
                |x| {
                    trial[i] = x;
                    eval(&trial)
                },
                T::zero(),
                T::one(),
                lit(1e-6),
                100,
            );
            if e.value < value {
                value = e.value;
                c[i] = e.x;
            }
        }
    }
    value
}

/// `((sin(nh/2) / (n/2))^α ‖τ^(α)‖, ‖Δ_h^α τ‖, h^α ‖τ^(α)‖)` for `τ ∈ T_n`, `0 <= h <= 2π/n`.
pub fn lemma4_sandwich<T: Real>(tau: &CoeffSeq<T>, phi: &OrliczFunction<T>, alpha: T, n: u64, h: T) -> Result<(T, T, T)> {
    if n == 0 {
        return Err(Error::InvalidParameter("sandwich needs n >= 1".into()));
    }
    if let Some(k) = tau.support().find(|k| k.unsigned_abs() > n) {
        return Err(Error::OutOfBand { k, band: n });
    }
    let nn = lit::<T>(n as f64);
    if !(h >= T::zero() && h <= lit::<T>(2.0) * T::PI() / nn) {
        return Err(Error::InvalidParameter(format!("shift {h} outside [0, 2π/{n}]")));
    }
    if !(alpha > T::zero()) {
        return Err(Error::InvalidParameter(format!("order {alpha} must be positive")));
    }
    let deriv = luxemburg_norm(phi, &psi_derivative(tau, &PsiWeights::Fractional(alpha))?)?;
    let half = nn / lit(2.0);
    let base = (h * half).sin().max(T::zero()) / half;
    let low = base.powf(alpha) * deriv;
    let mid = luxemburg_norm(phi, &frac_difference(tau, alpha, h))?;
    let high = h.powf(alpha) * deriv;
    Ok((low, mid, high))
}
