//! Abel functions `F(f(x)) = F(x) + 1` assembled from Schroeder functions.
//!
//! On each branch `F(x) = ln(sigma * Phi(shift(x))) / D - offset`, where `D`
//! is `ln s` when the conjugate map follows `f` and `-ln s` when it follows
//! `f^-1`, so `F` always advances by +1 under `f`. The offset pins `F` to 0
//! at the branch anchor.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rug::Float;

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval};
use crate::koenig::SchroederSolution;
use crate::maps::{Direction, MapName, MapParams, MapSpec};
use crate::numeric::{PrecisionContext, Real};
use crate::solve::{illinois, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchId {
    /// 2^(x/2) on (-inf, 2), anchored at 1.
    Sqrt2ExpI1,
    /// 2^(x/2) on (2, 4) from the fixed point 2, anchored at 3.
    Sqrt2ExpI2a,
    /// 2^(x/2) on (2, 4) from the fixed point 4, anchored at 3.
    Sqrt2ExpI2b,
    /// 2^(x/2) on (4, inf), anchored at 5.
    Sqrt2ExpI3,
    LogisticFp0,
    LogisticFpMu,
    Radical,
    GammaFp2,
    GammaFp1,
    ExpBaseI1,
}

impl BranchId {
    pub const ALL: [BranchId; 10] = [
        BranchId::Sqrt2ExpI1,
        BranchId::Sqrt2ExpI2a,
        BranchId::Sqrt2ExpI2b,
        BranchId::Sqrt2ExpI3,
        BranchId::LogisticFp0,
        BranchId::LogisticFpMu,
        BranchId::Radical,
        BranchId::GammaFp2,
        BranchId::GammaFp1,
        BranchId::ExpBaseI1,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BranchId::Sqrt2ExpI1 => "sqrt2exp.I1",
            BranchId::Sqrt2ExpI2a => "sqrt2exp.I2a",
            BranchId::Sqrt2ExpI2b => "sqrt2exp.I2b",
            BranchId::Sqrt2ExpI3 => "sqrt2exp.I3",
            BranchId::LogisticFp0 => "logistic_fp0",
            BranchId::LogisticFpMu => "logistic_fpmu",
            BranchId::Radical => "radical",
            BranchId::GammaFp2 => "gamma_fp2",
            BranchId::GammaFp1 => "gamma_fp1",
            BranchId::ExpBaseI1 => "exp_base.I1",
        }
    }

    pub fn map_name(&self) -> MapName {
        match self {
            BranchId::Sqrt2ExpI1 | BranchId::Sqrt2ExpI2a => MapName::Sqrt2ExpFp2,
            BranchId::Sqrt2ExpI2b | BranchId::Sqrt2ExpI3 => MapName::Sqrt2ExpFp4,
            BranchId::LogisticFp0 => MapName::LogisticFp0,
            BranchId::LogisticFpMu => MapName::LogisticFpMu,
            BranchId::Radical => MapName::Radical,
            BranchId::GammaFp2 => MapName::GammaFp2,
            BranchId::GammaFp1 => MapName::GammaFp1,
            BranchId::ExpBaseI1 => MapName::ExpBase,
        }
    }

    pub fn needs_lambda(&self) -> bool {
        matches!(self, BranchId::LogisticFp0 | BranchId::LogisticFpMu)
    }

    pub fn needs_base(&self) -> bool {
        matches!(self, BranchId::ExpBaseI1)
    }
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BranchId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = if s == "logistic_fpμ" { "logistic_fpmu" } else { s };
        BranchId::ALL
            .into_iter()
            .find(|b| b.as_str() == wanted)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// One monotone Abel solution.
///
/// `interval` is the monotone piece used for inversion. `F` may also be
/// evaluated elsewhere in the map's basin wherever the logarithm's argument
/// is positive (the Gamma branch is anchored at -1/2, outside (1, 2)).
#[derive(Debug, Clone)]
pub struct AbelBranch {
    id: BranchId,
    sol: SchroederSolution,
    interval: Interval,
    sign: i8,
    denominator: Real,
    anchor: Real,
    offset: Real,
    /// Branches on the far side of a fold are evaluated at `mirror - x`.
    mirror: Option<Real>,
    increasing: bool,
    range_lo: Bound,
    base_point: Real,
    base_level: Real,
}

impl AbelBranch {
    pub fn build(id: BranchId, params: &MapParams, ctx: &PrecisionContext) -> Result<Self> {
        let spec = Arc::new(MapSpec::new(id.map_name(), params, ctx)?);
        let bits = ctx.bits();
        let r = |v: i64| ctx.real(v);
        let (sign, interval, anchor, increasing, mirror): (i8, Interval, Real, bool, Option<Real>) =
            match id {
                BranchId::Sqrt2ExpI1 => (
                    -1,
                    Interval::new(Bound::Unbounded, Bound::Open(r(2))),
                    r(1),
                    true,
                    None,
                ),
                BranchId::Sqrt2ExpI2a => (1, Interval::open(r(2), r(4)), r(3), false, None),
                BranchId::Sqrt2ExpI2b => (-1, Interval::open(r(2), r(4)), r(3), false, None),
                BranchId::Sqrt2ExpI3 => (
                    1,
                    Interval::new(Bound::Open(r(4)), Bound::Unbounded),
                    r(5),
                    true,
                    None,
                ),
                BranchId::LogisticFp0 => (
                    1,
                    Interval::new(Bound::Open(r(0)), Bound::Closed(ctx.ratio(1, 2))),
                    ctx.ratio(1, 2),
                    false,
                    None,
                ),
                BranchId::LogisticFpMu => {
                    // upper side of the fold at 1/2, up to the mirror image 1/lambda of mu
                    let lambda = spec.params().lambda.clone().expect("validated by the map");
                    let top = Float::with_val(bits, lambda.recip_ref());
                    (
                        1,
                        Interval::new(Bound::Closed(ctx.ratio(1, 2)), Bound::Open(top)),
                        ctx.ratio(1, 2),
                        true,
                        Some(r(1)),
                    )
                }
                BranchId::Radical => (
                    1,
                    Interval::new(Bound::Closed(r(-1)), Bound::Open(spec.fixed_point().clone())),
                    r(0),
                    true,
                    None,
                ),
                BranchId::GammaFp2 => (
                    1,
                    Interval::new(Bound::Open(r(2)), Bound::Unbounded),
                    r(3),
                    true,
                    None,
                ),
                BranchId::GammaFp1 => (1, Interval::open(r(1), r(2)), ctx.ratio(-1, 2), false, None),
                BranchId::ExpBaseI1 => (
                    -1,
                    Interval::new(Bound::Unbounded, Bound::Open(spec.fixed_point().clone())),
                    r(1),
                    true,
                    None,
                ),
            };
        let ln_s = Float::with_val(bits, spec.multiplier().ln_ref());
        let denominator = match spec.direction() {
            Direction::Forward => ln_s,
            Direction::Inverse => -ln_s,
        };
        let mut branch = AbelBranch {
            id,
            sol: SchroederSolution::new(spec),
            interval,
            sign,
            denominator,
            anchor,
            offset: ctx.real(0),
            mirror,
            increasing,
            range_lo: Bound::Unbounded,
            base_point: ctx.real(0),
            base_level: ctx.real(0),
        };
        // the logistic branch about 0 carries no offset
        if id != BranchId::LogisticFp0 {
            branch.offset = branch.raw_abel(&branch.anchor)?;
        }
        let anchor_level = branch.eval(&branch.anchor)?;
        branch.range_lo = match id {
            BranchId::Sqrt2ExpI1 | BranchId::ExpBaseI1 => Bound::Open(r(-2)),
            BranchId::LogisticFp0 | BranchId::LogisticFpMu => Bound::Closed(anchor_level.clone()),
            BranchId::Radical => Bound::Closed(r(-1)),
            _ => Bound::Unbounded,
        };
        let mut base = branch.anchor.clone();
        let mut level = anchor_level;
        let mut hops = 0;
        while !branch.interval.contains(&base) {
            base = branch.step(&base)?;
            level += 1u32;
            hops += 1;
            if hops > 8 {
                return Err(Error::domain(format!("{id}: anchor orbit never enters the branch")));
            }
        }
        branch.base_point = base;
        branch.base_level = level;
        Ok(branch)
    }

    pub fn id(&self) -> BranchId {
        self.id
    }

    pub fn solution(&self) -> &SchroederSolution {
        &self.sol
    }

    pub fn spec(&self) -> &MapSpec {
        self.sol.spec()
    }

    pub fn context(&self) -> &PrecisionContext {
        self.sol.context()
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// Sign applied to the Schroeder value before the logarithm.
    pub fn orientation(&self) -> i8 {
        self.sign
    }

    pub fn denominator(&self) -> &Real {
        &self.denominator
    }

    pub fn anchor(&self) -> &Real {
        &self.anchor
    }

    pub fn offset(&self) -> &Real {
        &self.offset
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    /// Lower end of the set of values `F` takes on the interval.
    pub fn range_lower(&self) -> &Bound {
        &self.range_lo
    }

    fn mirrored(&self, x: &Real) -> Real {
        match &self.mirror {
            Some(m) => Float::with_val(self.context().bits(), m - x),
            None => x.clone(),
        }
    }

    /// The map F advances by one: f, or its mirror image on folded branches.
    pub fn step(&self, x: &Real) -> Result<Real> {
        let y = self.spec().raw_map(&self.mirrored(x))?;
        Ok(self.mirrored(&y))
    }

    /// Inverse of [`Self::step`] on the branch interval.
    pub fn inverse_step(&self, x: &Real) -> Result<Real> {
        let y = self.spec().raw_inverse(&self.mirrored(x))?;
        Ok(self.mirrored(&y))
    }

    /// ln(sigma Phi) / D without the offset.
    fn raw_abel(&self, x: &Real) -> Result<Real> {
        let ctx = self.context();
        let xm = self.mirrored(x);
        let spec = self.spec();
        if !spec.in_basin(&xm) {
            return Err(Error::domain(format!(
                "{}: x = {} is outside the basin {}",
                self.id,
                x.to_f64(),
                spec.basin()
            )));
        }
        let phi = self.sol.at_raw(&xm)?.value;
        let arg = if self.sign < 0 { -phi } else { phi };
        match arg.cmp0() {
            Some(Ordering::Greater) => {}
            Some(Ordering::Equal) => {
                return Err(Error::domain(format!(
                    "{}: F diverges at x = {} (orbit reaches the fixed point)",
                    self.id,
                    x.to_f64()
                )))
            }
            _ => {
                return Err(Error::domain(format!(
                    "{}: x = {} is not on this branch",
                    self.id,
                    x.to_f64()
                )))
            }
        }
        let ln = Float::with_val(ctx.bits(), arg.ln_ref());
        Ok(ln / &self.denominator)
    }

    /// F(x).
    pub fn eval(&self, x: &Real) -> Result<Real> {
        Ok(self.raw_abel(x)? - &self.offset)
    }

    fn check_range(&self, t: &Real) -> Result<()> {
        let ok = match &self.range_lo {
            Bound::Unbounded => true,
            Bound::Open(v) => t > v,
            Bound::Closed(v) => {
                let slack = self.context().tolerance();
                *t >= Float::with_val(self.context().bits(), v - slack)
            }
        };
        if ok && t.is_finite() {
            Ok(())
        } else {
            Err(Error::range(format!(
                "{}: level {} is below the range of F",
                self.id,
                t.to_f64()
            )))
        }
    }

    /// The unique x in the branch interval with F(x) = t.
    ///
    /// The level is split as `t = base_level + n + tau` with `tau` in [0, 1).
    /// The fractional part is solved on the bracket between the base point
    /// and its image, whose levels differ by exactly one; the integer part
    /// is applied with `n` steps of the map or its inverse.
    pub fn invert(&self, t: &Real) -> Result<Real> {
        let ctx = self.context();
        let bits = ctx.bits();
        self.check_range(t)?;
        let rel = Float::with_val(bits, t - &self.base_level);
        let n_float = Float::with_val(bits, rel.floor_ref());
        let tau = Float::with_val(bits, &rel - &n_float);
        let n = n_float
            .to_i32_saturating()
            .filter(|n| n.unsigned_abs() <= ctx.max_iterations())
            .ok_or_else(|| Error::range(format!("{}: level {} too far from the anchor", self.id, t.to_f64())))?;
        let mut x = if tau.is_zero() {
            self.base_point.clone()
        } else {
            let upper = self.step(&self.base_point)?;
            let level = Float::with_val(bits, &self.base_level + &tau);
            let resid = |x: &Real| -> Result<Real> { Ok(self.eval(x)? - &level) };
            let tol = Tolerance {
                rel: ctx.convergence_threshold(),
                abs: ctx.convergence_threshold(),
            };
            illinois(
                resid,
                (self.base_point.clone(), Float::with_val(bits, -&tau)),
                (upper, Float::with_val(bits, 1u32 - &tau)),
                &tol,
                ctx.max_iterations(),
                &format!("inverse of F on {}", self.id),
            )?
        };
        match n.cmp(&0) {
            Ordering::Greater => {
                for _ in 0..n {
                    x = self.step(&x)?;
                }
            }
            Ordering::Less => {
                for _ in 0..n.unsigned_abs() {
                    x = self.inverse_step(&x).map_err(|_| {
                        Error::range(format!("{}: level {} is out of range", self.id, t.to_f64()))
                    })?;
                }
            }
            Ordering::Equal => {}
        }
        if !self.interval.contains(&x) {
            return Err(Error::range(format!(
                "{}: level {} maps outside {}",
                self.id,
                t.to_f64(),
                self.interval
            )));
        }
        Ok(x)
    }
}

/// Builds a branch by its identifier (`sqrt2exp.I1`, `gamma_fp2`, ...).
pub fn build_branch(id: &str, params: &MapParams, ctx: &PrecisionContext) -> Result<AbelBranch> {
    AbelBranch::build(id.parse()?, params, ctx)
}

pub fn abel_eval(branch: &AbelBranch, x: &Real) -> Result<Real> {
    branch.eval(x)
}

pub fn abel_invert(branch: &AbelBranch, t: &Real) -> Result<Real> {
    branch.invert(t)
}

/// Extra digits carried by [`branch_difference`] beyond the caller's target.
pub const DIFFERENCE_EXTRA_DIGITS: u32 = 30;

/// w(t) = F_a^-1(t) - F_b^-1(t) for the two Abel solutions on (2, 4),
/// carried at the caller's target plus 30 digits.
pub fn branch_difference(t: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if *t < -4 || *t > 4 {
        return Err(Error::range(format!(
            "branch difference is tabulated for t in [-4, 4], got {}",
            t.to_f64()
        )));
    }
    let fine = ctx.with_target(ctx.target_digits() + DIFFERENCE_EXTRA_DIGITS);
    let params = MapParams::default();
    let a = AbelBranch::build(BranchId::Sqrt2ExpI2a, &params, &fine)?;
    let b = AbelBranch::build(BranchId::Sqrt2ExpI2b, &params, &fine)?;
    branch_difference_with(&a, &b, t)
}

/// [`branch_difference`] with prebuilt branches.
pub fn branch_difference_with(a: &AbelBranch, b: &AbelBranch, t: &Real) -> Result<Real> {
    let bits = a.context().bits();
    let t = Float::with_val(bits, t);
    let xa = a.invert(&t)?;
    let xb = b.invert(&t)?;
    Ok(Float::with_val(bits, xa - xb))
}
