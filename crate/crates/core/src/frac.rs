//! Fractional iterates `f^[t](x) = F^-1(F(x) + t)`, tetration and fixed
//! points of Abel functions.

use rug::Float;

use crate::abel::{AbelBranch, BranchId};
use crate::error::{Error, Result};
use crate::maps::MapParams;
use crate::numeric::{PrecisionContext, Real};
use crate::solve::{illinois, Tolerance};

/// A request for `f^[t](x0)` on one branch.
///
/// `x0` only has to be a point where `F` is defined; the result always lies
/// in the branch interval.
#[derive(Debug, Clone)]
pub struct FracQuery<'a> {
    pub branch: &'a AbelBranch,
    pub x0: Real,
    pub t: Real,
}

pub fn frac_iterate(q: &FracQuery<'_>) -> Result<Real> {
    let level = q.branch.eval(&q.x0)? + &q.t;
    q.branch.invert(&level)
}

/// f^[t](x) on `branch`.
pub fn iterate(branch: &AbelBranch, x0: &Real, t: &Real) -> Result<Real> {
    frac_iterate(&FracQuery {
        branch,
        x0: x0.clone(),
        t: t.clone(),
    })
}

pub fn half_iterate(branch: &AbelBranch, x0: &Real) -> Result<Real> {
    iterate(branch, x0, &branch.context().ratio(1, 2))
}

/// T(c, t) for 1 < c < e^(1/e), normalised by T(c, 0) = 1.
pub fn tetration(c: &Real, t: &Real, ctx: &PrecisionContext) -> Result<Real> {
    tetration_branch(c, ctx)?.invert(t)
}

/// The Abel branch behind [`tetration`], for repeated queries at one base.
pub fn tetration_branch(c: &Real, ctx: &PrecisionContext) -> Result<AbelBranch> {
    AbelBranch::build(BranchId::ExpBaseI1, &MapParams::base(c.clone()), ctx)
}

/// Grid spacing of the sign-change scan in [`abel_fixed_points`].
pub const SCAN_STEP: f64 = 0.01;

/// Digits used for the sign-change scan before refinement.
const SCAN_DIGITS: u32 = 12;

/// All solutions of F(x) = x in `[lo, hi]` (intersected with the branch
/// interval), sorted ascending.
///
/// Sign changes of F(x) - x are located on a 0.01 grid with a cheap copy of
/// the branch, then each bracket is refined at full precision.
pub fn abel_fixed_points(branch: &AbelBranch, lo: &Real, hi: &Real) -> Result<Vec<Real>> {
    let ctx = *branch.context();
    let bits = ctx.bits();
    let scan_ctx = PrecisionContext::with_guard(
        SCAN_DIGITS,
        PrecisionContext::default_guard(SCAN_DIGITS),
        ctx.max_iterations(),
    )?;
    let coarse = AbelBranch::build(branch.id(), branch.spec().params(), &scan_ctx)?;
    let diff = |b: &AbelBranch, x: &Real| -> Option<Real> {
        b.eval(x).ok().map(|f| Float::with_val(b.context().bits(), f - x))
    };

    let step = Float::with_val(bits, SCAN_STEP);
    let count = Float::with_val(bits, hi - lo) / &step;
    let count = count.floor().to_u32_saturating().unwrap_or(0);
    let mut brackets = Vec::new();
    let mut prev: Option<(Real, Real)> = None;
    for i in 0..=count {
        let x = Float::with_val(bits, lo + Float::with_val(bits, &step * i));
        if !branch.interval().contains(&x) {
            prev = None;
            continue;
        }
        let Some(d) = diff(&coarse, &x) else {
            prev = None;
            continue;
        };
        if d.is_zero() {
            brackets.push((x.clone(), x.clone()));
        } else if let Some((px, pd)) = &prev {
            if !pd.is_zero() && (pd.is_sign_negative() != d.is_sign_negative()) {
                brackets.push((px.clone(), x.clone()));
            }
        }
        prev = Some((x, d));
    }

    let tol = Tolerance {
        rel: ctx.convergence_threshold(),
        abs: ctx.convergence_threshold(),
    };
    let mut roots = Vec::with_capacity(brackets.len());
    for (a, b) in brackets {
        if a == b {
            roots.push(a);
            continue;
        }
        let f = |x: &Real| {
            diff(branch, x).ok_or_else(|| Error::domain("F undefined inside a scan bracket"))
        };
        let fa = f(&a)?;
        let fb = f(&b)?;
        if fa.is_zero() {
            roots.push(a);
        } else if fb.is_zero() {
            roots.push(b);
        } else {
            roots.push(illinois(f, (a, fa), (b, fb), &tol, ctx.max_iterations(), "fixed point of F")?);
        }
    }
    roots.dedup();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{close, matches_printed};

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn radical_half_iterates() {
        let c = ctx(50);
        let b = AbelBranch::build(BranchId::Radical, &MapParams::default(), &c).unwrap();
        let zero = c.real(0);
        let v = iterate(&b, &zero, &c.ratio(1, 2)).unwrap();
        assert!(matches_printed(&v, "0.58708229930179840752573065286737743155207668652537"));
        let v = iterate(&b, &zero, &c.real(1)).unwrap();
        assert!(close(&v, &c.real(1), &c.tolerance()));
        let v = iterate(&b, &zero, &c.ratio(5, 2)).unwrap();
        assert!(matches_printed(&v, "1.50326130345477227760901754117049406417148121549859"));
    }

    #[test]
    fn logistic_half_iterates() {
        let c = ctx(46);
        let half = c.ratio(1, 2);
        let b = AbelBranch::build(BranchId::LogisticFp0, &MapParams::lambda(c.ratio(1, 3)), &c).unwrap();
        let v = half_iterate(&b, &half).unwrap();
        assert!(matches_printed(&v, "0.1628638902874469548727735573981779276762224789"));
        let b = AbelBranch::build(BranchId::LogisticFpMu, &MapParams::lambda(c.ratio(5, 3)), &c).unwrap();
        let v = half_iterate(&b, &half).unwrap();
        assert!(matches_printed(&v, "0.5674272219425106090254452885203644144647555042"));
    }

    #[test]
    fn tetration_tower() {
        let c = ctx(30);
        let root2 = c.parse("sqrt(2)").unwrap();
        let b = tetration_branch(&root2, &c).unwrap();
        let mut tower = c.real(1);
        for n in 0..4 {
            let v = b.invert(&c.real(n)).unwrap();
            assert!(close(&v, &tower, &c.tolerance()), "n = {n}");
            tower = crate::numeric::pow(&c, &root2, &tower).unwrap();
        }
        let v = tetration(&root2, &c.ratio(1, 2), &c).unwrap();
        assert!(v.to_string_radix(10, Some(12)).starts_with("1.2436216276"));
        assert!(matches!(tetration(&root2, &c.real(-2), &c), Err(Error::Range(_))));
        assert!(tetration(&c.real(2), &c.real(0), &c).is_err());
    }

    #[test]
    fn fixed_points_of_i1() {
        let c = ctx(50);
        let b = AbelBranch::build(BranchId::Sqrt2ExpI1, &MapParams::default(), &c).unwrap();
        let roots = abel_fixed_points(&b, &c.real(-10), &c.real(2)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(matches_printed(&roots[0], "-1.54590582574454890961319276683302580776514319907836"));
        assert!(matches_printed(&roots[1], "1.54921732984299390977708237603964130366954197864932"));
    }

    #[test]
    fn one_fixed_point_on_i2a() {
        let c = ctx(20);
        let b = AbelBranch::build(BranchId::Sqrt2ExpI2a, &MapParams::default(), &c).unwrap();
        let roots = abel_fixed_points(&b, &c.real(2), &c.real(4)).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0] > 2 && roots[0] < 4);
    }
}
