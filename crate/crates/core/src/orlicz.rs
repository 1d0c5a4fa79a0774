//! Orlicz functions, their complementary functions, and the Luxemburg and
//! Orlicz norms of coefficient sequences.
//!
//! The Luxemburg norm `inf{a > 0 : Σ M(|c_k|/a) <= 1}` is solved by bisection
//! on `a`. The Orlicz (dual) norm `sup{Σ λ_k |c_k| : Σ M̃(λ_k) <= 1}` is
//! computed from its one-parameter form `inf_κ (1 + Σ M(κ|c_k|)) / κ`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::search::{bisect_threshold, golden_max, golden_min};
use crate::spectrum::CoeffSeq;

/// A nonnegative real or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinite => None,
        }
    }

    /// Plain float view; `+∞` maps to `T::infinity()`.
    pub fn to_float(&self) -> T {
        self.finite().unwrap_or_else(T::infinity)
    }

    pub fn zero() -> Self {
        ExtendedReal::Finite(T::zero())
    }
}

impl<T: Real> From<T> for ExtendedReal<T> {
    fn from(x: T) -> Self {
        if x.is_infinite() && x > T::zero() {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(x)
        }
    }
}

impl<T: Real> Add for ExtendedReal<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::from(a + b),
            _ => ExtendedReal::Infinite,
        }
    }
}

impl<T: Real> PartialOrd for ExtendedReal<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => a.partial_cmp(b),
            (ExtendedReal::Finite(_), ExtendedReal::Infinite) => Some(Ordering::Less),
            (ExtendedReal::Infinite, ExtendedReal::Finite(_)) => Some(Ordering::Greater),
            (ExtendedReal::Infinite, ExtendedReal::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl<T: Real> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinite => f.write_str("+inf"),
        }
    }
}

/// JSON description of a built-in Orlicz function, e.g. `{"family":"power","p":2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum OrliczSpec {
    Power { p: f64 },
    ExpMinusOne,
    PowerLog { p: f64 },
}

impl OrliczSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("orlicz spec: {e}")))
    }
}

/// Built-in gauge families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrliczFamily<T> {
    /// `t^p`
    Power { p: T },
    /// `e^t - 1`
    ExpMinusOne,
    /// `t^p ln(1 + t)`
    PowerLog { p: T },
}

/// A convex nondecreasing gauge `M` with `M(0) = 0` and `M(t) → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrliczFunction<T> {
    family: OrliczFamily<T>,
}

impl<T: Real> OrliczFunction<T> {
    pub fn new(family: OrliczFamily<T>) -> Result<Self> {
        match family {
            OrliczFamily::Power { p } | OrliczFamily::PowerLog { p } if !(p >= T::one() && p.is_finite()) => {
                Err(Error::InvalidParameter(format!("exponent p = {p} must be finite and >= 1")))
            }
            _ => Ok(Self { family }),
        }
    }

    pub fn power(p: T) -> Result<Self> {
        Self::new(OrliczFamily::Power { p })
    }

    pub fn exp_minus_one() -> Self {
        Self { family: OrliczFamily::ExpMinusOne }
    }

    pub fn power_log(p: T) -> Result<Self> {
        Self::new(OrliczFamily::PowerLog { p })
    }

    pub fn from_spec(spec: &OrliczSpec) -> Result<Self> {
        match *spec {
            OrliczSpec::Power { p } => Self::power(lit(p)),
            OrliczSpec::ExpMinusOne => Ok(Self::exp_minus_one()),
            OrliczSpec::PowerLog { p } => Self::power_log(lit(p)),
        }
    }

    pub fn spec(&self) -> OrliczSpec {
        let f = |p: T| p.to_f64().unwrap_or(f64::NAN);
        match self.family {
            OrliczFamily::Power { p } => OrliczSpec::Power { p: f(p) },
            OrliczFamily::ExpMinusOne => OrliczSpec::ExpMinusOne,
            OrliczFamily::PowerLog { p } => OrliczSpec::PowerLog { p: f(p) },
        }
    }

    pub fn family(&self) -> OrliczFamily<T> {
        self.family
    }

    /// `M(t)` for `t >= 0`.
    #[inline]
    pub fn eval(&self, t: T) -> T {
        match self.family {
            OrliczFamily::Power { p } => pow(t, p),
            OrliczFamily::ExpMinusOne => t.exp_m1(),
            OrliczFamily::PowerLog { p } => pow(t, p) * t.ln_1p(),
        }
    }

    /// Right derivative `p(t)` of `M`.
    pub fn right_derivative(&self, t: T) -> T {
        match self.family {
            OrliczFamily::Power { p } => {
                if p == T::one() {
                    T::one()
                } else {
                    p * pow(t, p - T::one())
                }
            }
            OrliczFamily::ExpMinusOne => t.exp(),
            OrliczFamily::PowerLog { p } => {
                p * pow(t, p - T::one()) * t.ln_1p() + pow(t, p) / (T::one() + t)
            }
        }
    }

    /// `M^{-1}(y)` for `y >= 0`.
    pub fn inverse(&self, y: T) -> T {
        if y <= T::zero() {
            return T::zero();
        }
        match self.family {
            OrliczFamily::Power { p } => y.powf(p.recip()),
            OrliczFamily::ExpMinusOne => y.ln_1p(),
            OrliczFamily::PowerLog { .. } => {
                let mut hi = T::one();
                while self.eval(hi) < y {
                    hi = hi * lit(2.0);
                }
                bisect_threshold(|t| self.eval(t) >= y, T::zero(), hi, T::epsilon())
            }
        }
    }

    /// Closed-form complementary function when one is known.
    pub fn closed_form_conjugate(&self, v: T) -> Option<ExtendedReal<T>> {
        if v <= T::zero() {
            return Some(ExtendedReal::zero());
        }
        match self.family {
            OrliczFamily::Power { p } if p == T::one() => {
                Some(if v <= T::one() { ExtendedReal::zero() } else { ExtendedReal::Infinite })
            }
            OrliczFamily::Power { p } => {
                let q = p / (p - T::one());
                Some(ExtendedReal::from((p - T::one()) * (v / p).powf(q)))
            }
            OrliczFamily::ExpMinusOne => {
                Some(if v <= T::one() { ExtendedReal::zero() } else { ExtendedReal::from(v * v.ln() - v + T::one()) })
            }
            OrliczFamily::PowerLog { .. } => None,
        }
    }

    /// `M̃(v) = sup{uv - M(u) : u >= 0}`.
    pub fn conjugate(&self, v: T) -> ExtendedReal<T> {
        self.closed_form_conjugate(v).unwrap_or_else(|| self.conjugate_numeric(v))
    }

    /// Complementary function by golden-section search over `u ∈ [0, U]`,
    /// doubling `U` while the concave objective is still increasing at `U`.
    pub fn conjugate_numeric(&self, v: T) -> ExtendedReal<T> {
        if v <= T::zero() {
            return ExtendedReal::zero();
        }
        let objective = |u: T| u * v - self.eval(u);
        let cap = T::max_value().powf(lit(0.25));
        let two = lit::<T>(2.0);
        let mut upper = T::one();
        loop {
            let at_upper = objective(upper);
            if !at_upper.is_finite() {
                break;
            }
            if at_upper <= objective(upper / two) {
                break;
            }
            if upper >= cap {
                return ExtendedReal::Infinite;
            }
            upper = upper * two;
        }
        let best = golden_max(objective, T::zero(), upper, upper * T::epsilon(), 400);
        ExtendedReal::from(best.value.max(T::zero()))
    }

    /// Grid checks of the defining properties; see [`InvariantReport`].
    pub fn validate(&self) -> InvariantReport {
        validate_gauge(self)
    }
}

#[inline]
fn pow<T: Real>(t: T, p: T) -> T {
    if p == T::one() {
        t
    } else if p == lit(2.0) {
        t * t
    } else {
        t.powf(p)
    }
}

/// Named pass/fail checks.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub checks: Vec<(String, bool)>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

fn validate_gauge<T: Real>(phi: &OrliczFunction<T>) -> InvariantReport {
    const POINTS: usize = 1024;
    let (lo, hi) = (lit::<T>(1e-4).ln(), lit::<T>(40.0).ln());
    let step = (hi - lo) / lit(POINTS as f64 - 1.0);
    let grid: Vec<T> = (0..POINTS).map(|i| (lo + step * lit(i as f64)).exp()).collect();
    let vals: Vec<T> = grid.iter().map(|&t| phi.eval(t)).collect();
    let slack = |x: T| x.abs() * lit(1e-12) + T::min_positive_value();

    let mut checks = Vec::new();
    checks.push(("vanishes at zero".to_string(), phi.eval(T::zero()) == T::zero()));

    let monotone = vals.windows(2).all(|w| w[1] >= w[0]) && vals[0] >= T::zero();
    checks.push(("nondecreasing".to_string(), monotone));

    let convex = (0..POINTS - 1).all(|i| {
        let (s, t) = (grid[i], grid[i + 1]);
        let mid = phi.eval((s + t) / lit(2.0));
        let chord = (vals[i] + vals[i + 1]) / lit(2.0);
        let wide = {
            let j = (i + 17).min(POINTS - 1);
            let m = phi.eval((s + grid[j]) / lit(2.0));
            m <= (vals[i] + vals[j]) / lit(2.0) + slack(vals[j])
        };
        let from_zero = phi.eval(t / lit(2.0)) <= vals[i + 1] / lit(2.0) + slack(vals[i + 1]);
        mid <= chord + slack(chord) && wide && from_zero
    });
    checks.push(("midpoint convex".to_string(), convex));

    let m1 = phi.eval(T::one());
    let big = lit::<T>(1024.0);
    let unbounded = m1 > T::zero() && phi.eval(big) >= big * m1 * (T::one() - lit(1e-12));
    checks.push(("unbounded growth".to_string(), unbounded));

    let derivs: Vec<T> = grid.iter().map(|&t| phi.right_derivative(t)).collect();
    let deriv_monotone = derivs.windows(2).all(|w| w[1] >= w[0] - slack(w[0]));
    checks.push(("right derivative nondecreasing".to_string(), deriv_monotone));

    // M(u) = ∫_0^u p(t) dt. Composite Simpson after t = u s², which removes
    // the t^{p-1} singularity of the derivative at the origin.
    let integral_ok = grid.iter().step_by(64).all(|&u| {
        let panels = 2000;
        let h = T::one() / lit(panels as f64);
        let integrand = |s: T| phi.right_derivative(u * s * s) * lit::<T>(2.0) * u * s;
        let mut acc = integrand(T::zero()) + integrand(T::one());
        for i in 1..panels {
            let w: T = if i % 2 == 1 { lit(4.0) } else { lit(2.0) };
            acc = acc + w * integrand(h * lit(i as f64));
        }
        let quad = acc * h / lit(3.0);
        let exact = phi.eval(u);
        (quad - exact).abs() <= lit::<T>(1e-6) * exact.max(lit(1e-12))
    });
    checks.push(("derivative integrates to M".to_string(), integral_ok));

    InvariantReport { checks }
}

/// `Σ M(u_k / a)`.
#[inline]
pub fn modular<T: Real>(phi: &OrliczFunction<T>, moduli: &[T], a: T) -> T {
    let mut acc = T::zero();
    for &u in moduli {
        acc = acc + phi.eval(u / a);
    }
    acc
}

/// Luxemburg norm of a list of coefficient moduli.
///
/// Bisection on `a` for the nonincreasing map `a ↦ Σ M(u_k/a)`, starting from
/// `[max u / M^{-1}(1), max u / M^{-1}(1/N)]` and terminating at relative
/// bracket width `rel_tol`. Returns the bracket midpoint.
pub fn luxemburg_norm_moduli<T: Real>(phi: &OrliczFunction<T>, moduli: &[T], rel_tol: T) -> T {
    let umax = moduli.iter().copied().fold(T::zero(), T::max);
    if umax == T::zero() {
        return T::zero();
    }
    let nonzero = moduli.iter().filter(|u| **u > T::zero()).count();
    let two = lit::<T>(2.0);
    let mut lo = umax / phi.inverse(T::one());
    let mut hi = umax / phi.inverse(T::one() / lit(nonzero as f64));
    if !(lo.is_finite() && lo > T::zero()) {
        lo = umax;
    }
    if !(hi.is_finite() && hi >= lo) {
        hi = lo;
    }
    while modular(phi, moduli, hi) > T::one() {
        hi = hi * two;
    }
    while lo > T::zero() && modular(phi, moduli, lo) <= T::one() {
        lo = lo / two;
    }
    bisect_threshold(|a| modular(phi, moduli, a) <= T::one(), lo, hi, rel_tol)
}

/// Luxemburg norm `inf{a > 0 : Σ M(|c_k|/a) <= 1}` with the default tolerance.
pub fn luxemburg_norm<T: Real>(phi: &OrliczFunction<T>, f: &CoeffSeq<T>) -> Result<T> {
    luxemburg_norm_with(phi, f, T::default_rel_tol())
}

pub fn luxemburg_norm_with<T: Real>(phi: &OrliczFunction<T>, f: &CoeffSeq<T>, rel_tol: T) -> Result<T> {
    f.check_finite()?;
    Ok(luxemburg_norm_moduli(phi, &f.moduli(), rel_tol))
}

/// Orlicz norm of a list of moduli via `min_s s·(1 + Σ M(u_k/s))`, `s = 1/κ`.
///
/// The objective is a perspective of a convex function, hence convex in `s`;
/// its minimizer lies in `(0, 2‖u‖_M]`. Golden-section runs in `ln s`.
pub fn orlicz_norm_moduli<T: Real>(phi: &OrliczFunction<T>, moduli: &[T], rel_tol: T) -> T {
    let lux = luxemburg_norm_moduli(phi, moduli, rel_tol);
    if lux == T::zero() {
        return T::zero();
    }
    let amemiya = |s: T| s * (T::one() + modular(phi, moduli, s));
    let lo = (lux * T::epsilon()).ln();
    let hi = (lux * lit(2.0)).ln();
    let best = golden_min(|ls: T| amemiya(ls.exp()), lo, hi, lit(1e-10), 400);
    best.value.min(amemiya(lux))
}

/// Orlicz norm `sup{Σ λ_k|c_k| : Σ M̃(λ_k) <= 1}`.
pub fn orlicz_norm<T: Real>(phi: &OrliczFunction<T>, f: &CoeffSeq<T>) -> Result<T> {
    f.check_finite()?;
    if f.is_empty() {
        return Ok(T::zero());
    }
    Ok(orlicz_norm_moduli(phi, &f.moduli(), T::default_rel_tol()))
}

/// How the input is scaled before the dual weights are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessNormalization {
    /// Unit Luxemburg norm.
    Luxemburg,
    /// Unit Orlicz norm; the weights are then dual-feasible.
    Orlicz,
}

/// Dual weights `λ*_k = p(|g_k|)` for the normalized sequence `g = f / scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma3Witness<T> {
    pub normalization: WitnessNormalization,
    pub scale: T,
    pub weights: Vec<(i64, T)>,
    /// `Σ M̃(λ*_k)`.
    pub dual_sum: ExtendedReal<T>,
    /// `Σ λ*_k |g_k|`.
    pub pairing: T,
    /// `λ*_k|g_k| - M(|g_k|) - M̃(λ*_k)` per frequency; zero when Young's equality holds.
    pub young_defects: Vec<(i64, T)>,
    /// Frequencies whose Young defect exceeds the tolerance.
    pub violations: Vec<i64>,
}

pub fn lemma3_witness<T: Real>(
    phi: &OrliczFunction<T>,
    f: &CoeffSeq<T>,
    normalization: WitnessNormalization,
) -> Result<Lemma3Witness<T>> {
    f.check_finite()?;
    if f.is_empty() {
        return Err(Error::ZeroSequence);
    }
    let scale = match normalization {
        WitnessNormalization::Luxemburg => luxemburg_norm(phi, f)?,
        WitnessNormalization::Orlicz => orlicz_norm(phi, f)?,
    };
    let tol = T::identity_tol();
    let mut weights = Vec::with_capacity(f.len());
    let mut young_defects = Vec::with_capacity(f.len());
    let mut violations = Vec::new();
    let mut dual_sum = ExtendedReal::zero();
    let mut pairing = T::zero();
    for (k, c) in f.iter() {
        let u = c.norm() / scale;
        let lambda = phi.right_derivative(u);
        let conj = phi.conjugate(lambda);
        dual_sum = dual_sum + conj;
        pairing = pairing + lambda * u;
        let defect = lambda * u - phi.eval(u) - conj.to_float();
        if !(defect.abs() <= tol * (lambda * u).max(T::one())) {
            violations.push(k);
        }
        weights.push((k, lambda));
        young_defects.push((k, defect));
    }
    Ok(Lemma3Witness { normalization, scale, weights, dual_sum, pairing, young_defects, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(entries: &[(i64, f64)]) -> CoeffSeq<f64> {
        CoeffSeq::from_real(entries.iter().copied())
    }

    fn families() -> Vec<OrliczFunction<f64>> {
        vec![
            OrliczFunction::power(1.0).unwrap(),
            OrliczFunction::power(1.5).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::exp_minus_one(),
            OrliczFunction::power_log(1.0).unwrap(),
            OrliczFunction::power_log(2.0).unwrap(),
        ]
    }

    #[test]
    fn builtins_pass_invariant_suite() {
        for phi in families() {
            let report = phi.validate();
            assert!(report.passed(), "{:?}: {:?}", phi.spec(), report.failures());
        }
    }

    #[test]
    fn rejects_subunit_exponent() {
        assert!(OrliczFunction::power(0.5).is_err());
        assert!(OrliczFunction::power_log(f64::NAN).is_err());
    }

    #[test]
    fn spec_json_round_trip_and_rejects_unknown_keys() {
        let spec = OrliczSpec::parse(r#"{"family":"power","p":2}"#).unwrap();
        assert_eq!(spec, OrliczSpec::Power { p: 2.0 });
        assert_eq!(OrliczSpec::parse(r#"{"family":"exp_minus_one"}"#).unwrap(), OrliczSpec::ExpMinusOne);
        assert_eq!(
            OrliczSpec::parse(r#"{"family":"power_log","p":2}"#).unwrap(),
            OrliczSpec::PowerLog { p: 2.0 }
        );
        assert!(OrliczSpec::parse(r#"{"family":"power","p":2,"q":1}"#).is_err());
        assert!(OrliczSpec::parse(r#"{"family":"cosh"}"#).is_err());
    }

    #[test]
    fn conjugate_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        assert_eq!(sq.conjugate(2.0), ExtendedReal::Finite(1.0));
        // grid oracle: sup of 2u - u² over [0, 4] with step 1e-6
        let grid_sup = (0..=4_000_000).map(|i| i as f64 * 1e-6).map(|u| 2.0 * u - u * u).fold(f64::MIN, f64::max);
        assert!((grid_sup - 1.0).abs() < 1e-10);
        assert!((sq.conjugate_numeric(2.0).to_float() - 1.0_f64).abs() < 1e-12);

        for phi in families() {
            assert_eq!(phi.conjugate(0.0), ExtendedReal::Finite(0.0));
        }

        let lin = OrliczFunction::power(1.0).unwrap();
        assert_eq!(lin.conjugate(0.5), ExtendedReal::Finite(0.0));
        assert_eq!(lin.conjugate(2.0), ExtendedReal::Infinite);
        assert_eq!(lin.conjugate_numeric(0.5), ExtendedReal::Finite(0.0));
        assert_eq!(lin.conjugate_numeric(2.0), ExtendedReal::Infinite);
    }

    #[test]
    fn numeric_conjugate_matches_closed_forms() {
        for phi in [
            OrliczFunction::power(1.5).unwrap(),
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::exp_minus_one(),
        ] {
            for v in [0.1, 0.7, 1.0, 1.3, 2.5, 7.0, 20.0] {
                let closed: f64 = phi.closed_form_conjugate(v).unwrap().to_float();
                let numeric: f64 = phi.conjugate_numeric(v).to_float();
                assert!((closed - numeric).abs() <= 1e-9 * closed.max(1.0), "{:?} v={v}: {closed} vs {numeric}", phi.spec());
            }
        }
    }

    #[test]
    fn extended_real_arithmetic() {
        let a = ExtendedReal::Finite(1.0);
        assert_eq!(a + ExtendedReal::Finite(2.0), ExtendedReal::Finite(3.0));
        assert_eq!(a + ExtendedReal::Infinite, ExtendedReal::Infinite);
        assert!(ExtendedReal::Infinite > ExtendedReal::Finite(1e300));
        assert!(ExtendedReal::Finite(1.0) <= ExtendedReal::Finite(1.0));
        assert_eq!(ExtendedReal::from(f64::INFINITY), ExtendedReal::Infinite);
    }

    #[test]
    fn luxemburg_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        assert_eq!(luxemburg_norm(&sq, &CoeffSeq::zero()).unwrap(), 0.0);
        let v = luxemburg_norm(&sq, &seq(&[(1, 3.0), (2, 4.0)])).unwrap();
        assert!((v - 5.0).abs() < 1e-10);
        let lin = OrliczFunction::power(1.0).unwrap();
        let v = luxemburg_norm(&lin, &seq(&[(-1, 1.0), (0, 2.0), (3, 3.0)])).unwrap();
        assert!((v - 6.0).abs() < 1e-10);
    }

    #[test]
    fn luxemburg_rejects_non_finite() {
        let sq = OrliczFunction::power(2.0).unwrap();
        let bad = seq(&[(4, f64::NAN)]);
        assert!(matches!(luxemburg_norm(&sq, &bad), Err(Error::NonFiniteCoefficient { k: 4 })));
    }

    #[test]
    fn single_coefficient_norm_is_modulus_over_inverse_at_one() {
        let f = seq(&[(7, 0.3)]);
        for phi in families() {
            let got = luxemburg_norm(&phi, &f).unwrap();
            let want = 0.3 / phi.inverse(1.0);
            assert!((got - want).abs() < 1e-12 * want, "{:?}", phi.spec());
        }
    }

    #[test]
    fn orlicz_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        assert_eq!(orlicz_norm(&sq, &CoeffSeq::zero()).unwrap(), 0.0);
        let v = orlicz_norm(&sq, &seq(&[(1, 1.0)])).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let lin = OrliczFunction::power(1.0).unwrap();
        let v = orlicz_norm(&lin, &seq(&[(1, 1.0), (2, 2.0)])).unwrap();
        assert!((v - 3.0).abs() < 1e-10);
    }

    #[test]
    fn orlicz_norm_for_power_matches_closed_form() {
        // For M(t) = t^p the one-parameter form minimizes to p (p-1)^{1/p - 1} ‖c‖_p.
        let f = seq(&[(0, 0.4), (2, -1.1), (5, 0.9)]);
        for p in [1.5, 2.0, 3.0] {
            let phi = OrliczFunction::power(p).unwrap();
            let lp = f.moduli().iter().map(|u: &f64| u.powf(p)).sum::<f64>().powf(1.0 / p);
            let want = p * (p - 1.0).powf(1.0 / p - 1.0) * lp;
            let got = orlicz_norm(&phi, &f).unwrap();
            assert!((got - want).abs() < 1e-9 * want, "p={p}: {got} vs {want}");
        }
    }

    #[test]
    fn witness_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        let w = lemma3_witness(&sq, &seq(&[(1, 1.0)]), WitnessNormalization::Luxemburg).unwrap();
        assert_eq!(w.weights.len(), 1);
        assert!((w.weights[0].1 - 2.0).abs() < 1e-10);
        assert!(w.violations.is_empty());

        assert!(matches!(
            lemma3_witness(&sq, &CoeffSeq::zero(), WitnessNormalization::Luxemburg),
            Err(Error::ZeroSequence)
        ));

        let lin = OrliczFunction::power(1.0).unwrap();
        let w = lemma3_witness(&lin, &seq(&[(1, 1.0)]), WitnessNormalization::Luxemburg).unwrap();
        assert_eq!(w.weights, vec![(1, 1.0)]);
    }

    #[test]
    fn orlicz_normalized_witness_is_dual_feasible() {
        let f = seq(&[(-3, 0.2), (0, 1.0), (1, 0.5), (4, 2.5)]);
        for phi in families() {
            let w = lemma3_witness(&phi, &f, WitnessNormalization::Orlicz).unwrap();
            assert!(w.dual_sum <= ExtendedReal::Finite(1.0 + 1e-9), "{:?}: {}", phi.spec(), w.dual_sum);
            assert!(w.pairing <= 1.0 + 1e-9, "{:?}: pairing {}", phi.spec(), w.pairing);
            assert!(w.violations.is_empty(), "{:?}", phi.spec());
        }
    }
}
