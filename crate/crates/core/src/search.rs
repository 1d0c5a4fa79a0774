//! One-dimensional search primitives: monotone bisection and golden-section.

use crate::scalar::{lit, Real};

/// Outcome of a golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub x: T,
    pub value: T,
    /// Width of the final bracket.
    pub bracket: T,
}

fn inv_phi<T: Real>() -> T {
    // (sqrt(5) - 1) / 2
    (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0)
}

/// Golden-section maximization of a unimodal `f` over `[a, b]`.
///
/// The endpoints are evaluated too, so for a monotone `f` the returned value
/// is the endpoint value rather than an interior approximation of it.
pub fn golden_max<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T, max_iter: usize) -> Extremum<T> {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let r = inv_phi::<T>();
    let mut best = Extremum { x: lo, value: f(lo), bracket: hi - lo };
    let f_hi = f(hi);
    if f_hi > best.value {
        best.x = hi;
        best.value = f_hi;
    }
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iter = 0;
    while hi - lo > tol && iter < max_iter {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
        iter += 1;
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.value {
            best.x = x;
            best.value = v;
        }
    }
    best.bracket = hi - lo;
    best
}

/// Golden-section minimization; see [`golden_max`].
pub fn golden_min<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, tol: T, max_iter: usize) -> Extremum<T> {
    let e = golden_max(|x| -f(x), a, b, tol, max_iter);
    Extremum { value: -e.value, ..e }
}

/// Smallest `x` in `[lo, hi]` (up to relative width `rel_tol`) with `pred(x)` true,
/// for a predicate that is false below some threshold and true above it.
///
/// Returns the midpoint of the final bracket.
pub fn bisect_threshold<T: Real, P: FnMut(T) -> bool>(mut pred: P, mut lo: T, mut hi: T, rel_tol: T) -> T {
    let two = lit::<T>(2.0);
    for _ in 0..2000 {
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}
