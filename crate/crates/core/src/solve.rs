//! Bracketed one-dimensional root finding shared by the inverse routines.

use std::cmp::Ordering;

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::Real;

/// Stopping rule for [`illinois`]: the bracket is accepted once its width
/// is at most `rel * |x| + abs`.
pub(crate) struct Tolerance {
    pub rel: Real,
    pub abs: Real,
}

fn sign(x: &Real) -> Ordering {
    x.cmp0().unwrap_or(Ordering::Equal)
}

/// Illinois variant of regula falsi on `[a, b]` where `fa` and `fb` have
/// opposite signs. Falls back to bisection whenever the bracket stops
/// halving. Returns the last interior estimate.
pub(crate) fn illinois<F>(
    mut f: F,
    (mut a, mut fa): (Real, Real),
    (mut b, mut fb): (Real, Real),
    tol: &Tolerance,
    max_evals: u32,
    what: &str,
) -> Result<Real>
where
    F: FnMut(&Real) -> Result<Real>,
{
    if sign(&fa) == Ordering::Equal {
        return Ok(a);
    }
    if sign(&fb) == Ordering::Equal {
        return Ok(b);
    }
    if sign(&fa) == sign(&fb) {
        return Err(Error::domain(format!("{what}: bracket does not straddle a root")));
    }
    let prec = a.prec().max(b.prec());
    let mut side = 0i8;
    let mut width = Float::with_val(prec, &b - &a).abs();
    let mut stale = 0u32;
    for _ in 0..max_evals {
        let denom = Float::with_val(prec, &fb - &fa);
        let mut c = Float::with_val(prec, &a * &fb);
        c -= Float::with_val(prec, &b * &fa);
        c /= &denom;
        let (lo, hi) = if a < b { (&a, &b) } else { (&b, &a) };
        let forced_bisect = stale >= 2;
        if forced_bisect || !c.is_finite() || c <= *lo || c >= *hi {
            c = Float::with_val(prec, &a + &b) / 2u32;
            stale = 0;
        }
        let fc = f(&c)?;
        match sign(&fc) {
            Ordering::Equal => return Ok(c),
            s if s == sign(&fb) => {
                b = c.clone();
                fb = fc;
                if side == -1 {
                    fa /= 2u32;
                }
                side = -1;
            }
            _ => {
                a = c.clone();
                fa = fc;
                if side == 1 {
                    fb /= 2u32;
                }
                side = 1;
            }
        }
        let new_width = Float::with_val(prec, &b - &a).abs();
        if Float::with_val(prec, &new_width * 2u32) > width {
            stale += 1;
        } else {
            stale = 0;
        }
        width = new_width;
        let mut limit = Float::with_val(prec, c.abs_ref()) * &tol.rel;
        limit += &tol.abs;
        if width <= limit {
            return Ok(c);
        }
    }
    Err(Error::stalled(what, max_evals))
}
