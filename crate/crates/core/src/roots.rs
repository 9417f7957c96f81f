//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Bisection for a sign change of `f` on `[lo, hi]`, stopping once the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoCrossing { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Like [`bisect`] for a positive variable, but grows the bracket geometrically
/// (`lo / 10`, `hi * 10`) up to `expansions` times before giving up.
pub fn bisect_expanding<F>(mut f: F, lo: f64, hi: f64, tol: f64, expansions: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    let mut k = 0;
    while fa.signum() == fb.signum() && fa != 0.0 && fb != 0.0 {
        if k == expansions {
            return Err(Error::NoCrossing { lo: a, hi: b });
        }
        a /= 10.0;
        b *= 10.0;
        fa = f(a)?;
        fb = f(b)?;
        k += 1;
    }
    bisect(f, a, b, tol)
}
