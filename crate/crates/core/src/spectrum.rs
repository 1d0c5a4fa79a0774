//! Finitely supported Fourier coefficient sequences.
//!
//! A function is represented only by its coefficients `c_k`, `k ∈ ℤ`. Every
//! norm and operator in this crate acts diagonally on coefficients, so this
//! representation is exact for trigonometric polynomials.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::ops::{Add, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::to_json_string;
use crate::scalar::{from_i64, lit, Real};

/// Map from integer frequency to complex coefficient. No stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq<T> {
    entries: BTreeMap<i64, Complex<T>>,
}

impl<T: Real> Default for CoeffSeq<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> CoeffSeq<T> {
    pub fn zero() -> Self {
        Self { entries: BTreeMap::new() }
    }

    /// Builds a sequence, summing repeated frequencies and dropping exact zeros.
    pub fn from_entries<I: IntoIterator<Item = (i64, Complex<T>)>>(entries: I) -> Self {
        let mut map: BTreeMap<i64, Complex<T>> = BTreeMap::new();
        for (k, c) in entries {
            let slot = map.entry(k).or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *slot = *slot + c;
        }
        map.retain(|_, c| !is_zero(c));
        Self { entries: map }
    }

    pub fn from_real<I: IntoIterator<Item = (i64, T)>>(entries: I) -> Self {
        Self::from_entries(entries.into_iter().map(|(k, x)| (k, Complex::new(x, T::zero()))))
    }

    pub fn single(k: i64, c: Complex<T>) -> Self {
        Self::from_entries([(k, c)])
    }

    pub fn get(&self, k: i64) -> Complex<T> {
        self.entries.get(&k).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Entries in ascending frequency.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.entries.iter().map(|(&k, &c)| (k, c))
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `|k|` in the support, 0 for the zero sequence.
    pub fn max_frequency(&self) -> u64 {
        self.entries.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn moduli(&self) -> Vec<T> {
        self.entries.values().map(|c| c.norm()).collect()
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.iter().find(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
            Some((k, _)) => Err(Error::NonFiniteCoefficient { k }),
            None => Ok(()),
        }
    }

    /// Coefficient-wise map; zero results are dropped.
    pub fn map<F: FnMut(i64, Complex<T>) -> Complex<T>>(&self, mut f: F) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(&k, &c)| (k, f(k, c)))
            .filter(|(_, c)| !is_zero(c))
            .collect();
        Self { entries }
    }

    pub fn filter<P: FnMut(i64) -> bool>(&self, mut keep: P) -> Self {
        let entries = self.entries.iter().filter(|(&k, _)| keep(k)).map(|(&k, &c)| (k, c)).collect();
        Self { entries }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|_, c| c * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|_, c| c * s)
    }

    /// Entries with `|k| >= n`: the error of the Fourier sum of degree `n - 1`.
    pub fn tail(&self, n: u64) -> Self {
        self.filter(|k| k.unsigned_abs() >= n)
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> T {
        let mut keys: Vec<i64> = self.support().chain(other.support()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.get(k) - other.get(k)).norm())
            .fold(T::zero(), T::max)
    }
}

fn is_zero<T: Real>(c: &Complex<T>) -> bool {
    c.re == T::zero() && c.im == T::zero()
}

impl<T: Real> Add for &CoeffSeq<T> {
    type Output = CoeffSeq<T>;
    fn add(self, rhs: Self) -> CoeffSeq<T> {
        CoeffSeq::from_entries(self.iter().chain(rhs.iter()))
    }
}

impl<T: Real> Sub for &CoeffSeq<T> {
    type Output = CoeffSeq<T>;
    fn sub(self, rhs: Self) -> CoeffSeq<T> {
        CoeffSeq::from_entries(self.iter().chain(rhs.iter().map(|(k, c)| (k, -c))))
    }
}

impl<T: Real> Neg for &CoeffSeq<T> {
    type Output = CoeffSeq<T>;
    fn neg(self) -> CoeffSeq<T> {
        self.map(|_, c| -c)
    }
}

impl<T: Real> Add for CoeffSeq<T> {
    type Output = CoeffSeq<T>;
    fn add(self, rhs: Self) -> CoeffSeq<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for CoeffSeq<T> {
    type Output = CoeffSeq<T>;
    fn sub(self, rhs: Self) -> CoeffSeq<T> {
        &self - &rhs
    }
}

impl<T: Real> FromIterator<(i64, Complex<T>)> for CoeffSeq<T> {
    fn from_iter<I: IntoIterator<Item = (i64, Complex<T>)>>(iter: I) -> Self {
        Self::from_entries(iter)
    }
}

/// Multiplier sequence defining the ψ-derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiWeights<T> {
    /// `ψ_k = |k|^{-r}`, the fractional derivative of order `r`.
    Fractional(T),
    /// Explicit weights; frequencies not listed have no weight.
    Explicit(BTreeMap<i64, Complex<T>>),
}

impl<T: Real> PsiWeights<T> {
    /// `ψ_k` for `k != 0`, or `None` when undefined or zero.
    pub fn weight(&self, k: i64) -> Option<Complex<T>> {
        let w = match self {
            PsiWeights::Fractional(r) => {
                if k == 0 {
                    return None;
                }
                Complex::new(from_i64::<T>(k).abs().powf(-*r), T::zero())
            }
            PsiWeights::Explicit(map) => *map.get(&k)?,
        };
        if is_zero(&w) {
            None
        } else {
            Some(w)
        }
    }

    pub fn abs_weight(&self, k: i64) -> Result<T> {
        self.weight(k).map(|w| w.norm()).ok_or(Error::ZeroWeight { k })
    }
}

/// `f^ψ`: divides each coefficient by `ψ_k`; the constant term is dropped.
pub fn psi_derivative<T: Real>(f: &CoeffSeq<T>, psi: &PsiWeights<T>) -> Result<CoeffSeq<T>> {
    let mut out = Vec::with_capacity(f.len());
    for (k, c) in f.iter() {
        if k == 0 {
            continue;
        }
        let w = psi.weight(k).ok_or(Error::ZeroWeight { k })?;
        out.push((k, c / w));
    }
    Ok(CoeffSeq::from_entries(out))
}

/// Fourier sum of order `n`: entries with `|k| <= n`.
pub fn fourier_sum<T: Real>(f: &CoeffSeq<T>, n: u64) -> CoeffSeq<T> {
    f.filter(|k| k.unsigned_abs() <= n)
}

/// `Σ c_k e^{ikx}`.
pub fn evaluate<T: Real>(f: &CoeffSeq<T>, x: T) -> Complex<T> {
    f.iter()
        .map(|(k, c)| c * Complex::from_polar(T::one(), from_i64::<T>(k) * x))
        .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z)
}

/// Discrete Fourier analysis of `N` equispaced samples on `[0, 2π)`.
///
/// Returns `c_k = N^{-1} Σ_j s_j e^{-ik 2πj/N}` for `|k| <= (N-1)/2`.
pub fn analyze_samples<T: Real>(samples: &[Complex<T>]) -> Result<CoeffSeq<T>> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::EmptySamples);
    }
    let big_n = from_i64::<T>(n as i64);
    let half = ((n - 1) / 2) as i64;
    let step = lit::<T>(2.0) * T::PI() / big_n;
    let mut out = Vec::with_capacity(2 * half as usize + 1);
    for k in -half..=half {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (j, s) in samples.iter().enumerate() {
            // reduce k*j mod N so the phase stays in [0, 2π)
            let idx = (k * j as i64).rem_euclid(n as i64);
            acc = acc + *s * Complex::from_polar(T::one(), -step * from_i64::<T>(idx));
        }
        out.push((k, acc / big_n));
    }
    Ok(CoeffSeq::from_entries(out))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffLine {
    k: i64,
    re: f64,
    #[serde(default)]
    im: f64,
}

/// Writes one `{"k","re","im"}` object per line in ascending `k`.
pub fn write_jsonl<T: Real, W: Write>(f: &CoeffSeq<T>, mut out: W) -> Result<()> {
    for (k, c) in f.iter() {
        let line = CoeffLine {
            k,
            re: c.re.to_f64().unwrap_or(f64::NAN),
            im: c.im.to_f64().unwrap_or(f64::NAN),
        };
        writeln!(out, "{}", to_json_string(&line)?)?;
    }
    Ok(())
}

/// Reads the JSON-lines coefficient format. Blank lines are skipped, exact
/// zeros dropped, and repeated frequencies rejected.
pub fn read_jsonl<T: Real, R: BufRead>(input: R) -> Result<CoeffSeq<T>> {
    let mut map = BTreeMap::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let rec: CoeffLine =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        if !(rec.re.is_finite() && rec.im.is_finite()) {
            return Err(Error::Parse { line: line_no, message: format!("non-finite coefficient at k = {}", rec.k) });
        }
        let c = Complex::new(lit::<T>(rec.re), lit::<T>(rec.im));
        if map.insert(rec.k, c).is_some() {
            return Err(Error::Parse { line: line_no, message: format!("frequency {} listed twice", rec.k) });
        }
    }
    Ok(CoeffSeq::from_entries(map))
}
