//! Catalog of maps with an attracting fixed point, each written in
//! conjugated form so the fixed point sits at 0.
//!
//! Every conjugate map is evaluated in a form that keeps full relative
//! accuracy for tiny arguments (`expm1`, `ln_1p`, a rationalised square
//! root, or raised precision for the Gamma maps). Koenig's limit divides
//! by `s^k`, so any absolute rounding near 0 would be amplified.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rug::Float;

use crate::error::{Error, Result};
use crate::interval::{Bound, Interval};
use crate::numeric::{self, decimal_exponent, PrecisionContext, Real};
use crate::solve::{illinois, Tolerance};
use crate::special::GammaLadder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapName {
    /// 2^(x/2) about its attracting fixed point 2.
    Sqrt2ExpFp2,
    /// the inverse 2 log2(x) about its attracting fixed point 4.
    Sqrt2ExpFp4,
    /// lambda x (1 - x), 0 < lambda < 1, about 0.
    LogisticFp0,
    /// lambda x (1 - x), 1 < lambda < 2, about (lambda - 1) / lambda.
    LogisticFpMu,
    /// sqrt(1 + x) about the golden ratio.
    Radical,
    /// Gamma(1 + x) about its attracting fixed point 1.
    GammaFp1,
    /// the inverse of Gamma(1 + x) about its attracting fixed point 2.
    GammaFp2,
    /// c^x about its lower fixed point, 1 < c < e^(1/e).
    ExpBase,
}

impl MapName {
    pub const ALL: [MapName; 8] = [
        MapName::Sqrt2ExpFp2,
        MapName::Sqrt2ExpFp4,
        MapName::LogisticFp0,
        MapName::LogisticFpMu,
        MapName::Radical,
        MapName::GammaFp1,
        MapName::GammaFp2,
        MapName::ExpBase,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MapName::Sqrt2ExpFp2 => "sqrt2exp_fp2",
            MapName::Sqrt2ExpFp4 => "sqrt2exp_fp4",
            MapName::LogisticFp0 => "logistic_fp0",
            MapName::LogisticFpMu => "logistic_fpmu",
            MapName::Radical => "radical",
            MapName::GammaFp1 => "gamma_fp1",
            MapName::GammaFp2 => "gamma_fp2",
            MapName::ExpBase => "exp_base",
        }
    }
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = if s == "logistic_fpμ" { "logistic_fpmu" } else { s };
        MapName::ALL
            .into_iter()
            .find(|m| m.as_str() == wanted)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// How raw `x` maps to the conjugate coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    /// y = x - p
    Offset,
    /// y = p - x
    Reflect,
}

/// Whether the conjugate map is the conjugate of `f` or of `f^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Optional map parameters: `lambda` for the logistic family, `base` for `c^x`.
#[derive(Debug, Clone, Default)]
pub struct MapParams {
    pub lambda: Option<Real>,
    pub base: Option<Real>,
}

impl MapParams {
    pub fn lambda(lambda: Real) -> Self {
        MapParams {
            lambda: Some(lambda),
            base: None,
        }
    }

    pub fn base(base: Real) -> Self {
        MapParams {
            lambda: None,
            base: Some(base),
        }
    }
}

#[derive(Debug)]
enum Kernel {
    /// p (c^y - 1) with ln c cached; also covers 2^(x/2).
    Exp { ln_c: Real },
    /// (2 / ln 2) ln(1 + z/4)
    Log2 { two_over_ln2: Real },
    Logistic { lambda: Real },
    Radical { golden: Real },
    GammaFp1 { ladder: Arc<GammaLadder> },
    GammaFp2 { ladder: Arc<GammaLadder> },
}

/// A catalog entry: raw map, its conjugate about the fixed point, and the
/// data needed to run Koenig's limit.
#[derive(Debug)]
pub struct MapSpec {
    name: MapName,
    ctx: PrecisionContext,
    fixed_point: Real,
    multiplier: Real,
    shift: Shift,
    direction: Direction,
    basin: Interval,
    excluded: Vec<Real>,
    params: MapParams,
    kernel: Kernel,
}

fn check_lambda(params: &MapParams, lo: i32, hi: i32, name: MapName) -> Result<Real> {
    let lambda = params
        .lambda
        .clone()
        .ok_or_else(|| Error::Parameter(format!("{name} needs a lambda parameter")))?;
    if lambda <= lo || lambda >= hi {
        return Err(Error::Parameter(format!(
            "{name} needs {lo} < lambda < {hi}, got {}",
            lambda.to_f64()
        )));
    }
    Ok(lambda)
}

/// e^(1/e), the largest base whose exponential has a real fixed point.
pub fn exp_base_limit(ctx: &PrecisionContext) -> Real {
    let e = ctx.real(1).exp();
    let inv = Float::with_val(ctx.bits(), e.recip_ref());
    numeric::exp(ctx, &inv)
}

fn check_base(c: &Real, ctx: &PrecisionContext) -> Result<()> {
    if *c <= 1 {
        return Err(Error::Domain(format!(
            "exponential base must exceed 1, got {}",
            c.to_f64()
        )));
    }
    if *c >= exp_base_limit(ctx) {
        return Err(Error::Domain(format!(
            "base {} is at least e^(1/e): c^x has no real attracting fixed point",
            c.to_f64()
        )));
    }
    Ok(())
}

/// Smaller root of c^x = x, by bisection on [1, e].
pub fn lower_fixed_point_exp(c: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_base(c, ctx)?;
    let bits = ctx.bits();
    let resid = |x: &Real| Float::with_val(bits, c.pow_ref_float(x)) - x;
    let mut lo = ctx.real(1);
    let mut hi = ctx.real(1).exp();
    bisect(resid, &mut lo, &mut hi, ctx, "lower fixed point of c^x")?;
    Ok(Float::with_val(bits, &lo + &hi) / 2u32)
}

/// Larger root of c^x = x (above e).
fn upper_fixed_point_exp(c: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.bits();
    let resid = |x: &Real| Float::with_val(bits, c.pow_ref_float(x)) - x;
    let mut lo = ctx.real(1).exp();
    let mut hi = Float::with_val(bits, &lo * 2u32);
    let mut n = 0;
    while resid(&hi) <= 0 {
        hi *= 2u32;
        n += 1;
        if n > ctx.max_iterations() {
            return Err(Error::stalled("upper fixed point of c^x", n));
        }
    }
    // c^x - x changes from negative to positive across the upper root
    bisect(|x| -resid(x), &mut lo, &mut hi, ctx, "upper fixed point of c^x")?;
    Ok(Float::with_val(bits, &lo + &hi) / 2u32)
}

/// Bisection for a function positive at `lo` and negative at `hi`.
fn bisect<F: Fn(&Real) -> Real>(
    f: F,
    lo: &mut Real,
    hi: &mut Real,
    ctx: &PrecisionContext,
    what: &str,
) -> Result<()> {
    let bits = ctx.bits();
    let rel = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let mut n = 0u32;
    loop {
        let width = Float::with_val(bits, &*hi - &*lo);
        if width <= Float::with_val(bits, hi.abs_ref()) * &rel {
            return Ok(());
        }
        n += 1;
        if n > ctx.max_iterations() {
            return Err(Error::stalled(what, n));
        }
        let mid = Float::with_val(bits, &*lo + &*hi) / 2u32;
        if mid == *lo || mid == *hi {
            return Ok(());
        }
        if f(&mid) > 0 {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }
}

trait PowRefFloat {
    fn pow_ref_float(&self, e: &Real) -> Real;
}

impl PowRefFloat for Real {
    fn pow_ref_float(&self, e: &Real) -> Real {
        use rug::ops::Pow;
        let p = self.prec().max(e.prec());
        Float::with_val(p, self.pow(e))
    }
}

/// Digits of relative accuracy lost when the result of a step near the
/// fixed point is formed as a difference of O(1) quantities.
fn boost_digits(y: &Real) -> u32 {
    match decimal_exponent(y) {
        Some(e) if e < 0 => (-e) as u32 + 1,
        _ => 0,
    }
}

impl MapSpec {
    pub fn new(name: MapName, params: &MapParams, ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.bits();
        let spec = match name {
            MapName::Sqrt2ExpFp2 => {
                let ln2 = numeric::ln2(ctx);
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: ctx.real(2),
                    multiplier: ln2.clone(),
                    shift: Shift::Offset,
                    direction: Direction::Forward,
                    basin: Interval::new(Bound::Unbounded, Bound::Open(ctx.real(4))),
                    excluded: Vec::new(),
                    params: MapParams::default(),
                    kernel: Kernel::Exp { ln_c: ln2 / 2u32 },
                }
            }
            MapName::Sqrt2ExpFp4 => {
                let ln2 = numeric::ln2(ctx);
                let two_over_ln2 = Float::with_val(bits, 2u32 / &ln2);
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: ctx.real(4),
                    multiplier: Float::with_val(bits, &ln2 * 2u32).recip(),
                    shift: Shift::Offset,
                    direction: Direction::Inverse,
                    basin: Interval::new(Bound::Open(ctx.real(2)), Bound::Unbounded),
                    excluded: Vec::new(),
                    params: MapParams::default(),
                    kernel: Kernel::Log2 { two_over_ln2 },
                }
            }
            MapName::LogisticFp0 => {
                let lambda = check_lambda(params, 0, 1, name)?;
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: ctx.real(0),
                    multiplier: lambda.clone(),
                    shift: Shift::Offset,
                    direction: Direction::Forward,
                    basin: Interval::open(ctx.real(0), ctx.real(1)),
                    excluded: Vec::new(),
                    params: MapParams::lambda(lambda.clone()),
                    kernel: Kernel::Logistic { lambda },
                }
            }
            MapName::LogisticFpMu => {
                let lambda = check_lambda(params, 1, 2, name)?;
                let mu = Float::with_val(bits, Float::with_val(bits, &lambda - 1u32) / &lambda);
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: mu,
                    multiplier: Float::with_val(bits, 2u32 - &lambda),
                    shift: Shift::Offset,
                    direction: Direction::Forward,
                    basin: Interval::open(ctx.real(0), ctx.real(1)),
                    excluded: Vec::new(),
                    params: MapParams::lambda(lambda.clone()),
                    kernel: Kernel::Logistic { lambda },
                }
            }
            MapName::Radical => {
                let golden = numeric::golden_ratio(ctx);
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: golden.clone(),
                    multiplier: Float::with_val(bits, &golden * 2u32).recip(),
                    shift: Shift::Reflect,
                    direction: Direction::Forward,
                    basin: Interval::new(Bound::Closed(ctx.real(-1)), Bound::Unbounded),
                    excluded: Vec::new(),
                    params: MapParams::default(),
                    kernel: Kernel::Radical { golden },
                }
            }
            MapName::GammaFp1 => {
                let euler = numeric::euler_gamma(ctx)?;
                let ladder = Arc::new(GammaLadder::new(ctx));
                // left end of the basin: the other preimage of the repelling point 2
                let left = ladder.base().preimage_on_decreasing_branch(&ctx.real(2))?;
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: ctx.real(1),
                    multiplier: Float::with_val(bits, 1u32 - &euler),
                    shift: Shift::Offset,
                    direction: Direction::Forward,
                    basin: Interval::open(left, ctx.real(2)),
                    excluded: vec![ctx.real(0)],
                    params: MapParams::default(),
                    kernel: Kernel::GammaFp1 { ladder },
                }
            }
            MapName::GammaFp2 => {
                let euler = numeric::euler_gamma(ctx)?;
                let slope = Float::with_val(bits, 3u32 - Float::with_val(bits, &euler * 2u32));
                MapSpec {
                    name,
                    ctx: *ctx,
                    fixed_point: ctx.real(2),
                    multiplier: slope.recip(),
                    shift: Shift::Offset,
                    direction: Direction::Inverse,
                    basin: Interval::new(Bound::Open(ctx.real(1)), Bound::Unbounded),
                    excluded: Vec::new(),
                    params: MapParams::default(),
                    kernel: Kernel::GammaFp2 {
                        ladder: Arc::new(GammaLadder::new(ctx)),
                    },
                }
            }
            MapName::ExpBase => {
                let c = params
                    .base
                    .clone()
                    .ok_or_else(|| Error::Parameter("exp_base needs a base parameter".into()))?;
                let c = Float::with_val(bits, c);
                let p = lower_fixed_point_exp(&c, ctx)?;
                let q = upper_fixed_point_exp(&c, ctx)?;
                let ln_c = Float::with_val(bits, c.ln_ref());
                MapSpec {
                    name,
                    ctx: *ctx,
                    multiplier: Float::with_val(bits, &p * &ln_c),
                    fixed_point: p,
                    shift: Shift::Offset,
                    direction: Direction::Forward,
                    basin: Interval::new(Bound::Unbounded, Bound::Open(q)),
                    excluded: Vec::new(),
                    params: MapParams::base(c),
                    kernel: Kernel::Exp { ln_c },
                }
            }
        };
        Ok(spec)
    }

    pub fn name(&self) -> MapName {
        self.name
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    /// Fixed point in raw coordinates.
    pub fn fixed_point(&self) -> &Real {
        &self.fixed_point
    }

    /// Derivative of the conjugate map at 0; always in (0, 1).
    pub fn multiplier(&self) -> &Real {
        &self.multiplier
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Raw points whose orbit under the conjugated step converges to the fixed point.
    pub fn basin(&self) -> &Interval {
        &self.basin
    }

    pub fn params(&self) -> &MapParams {
        &self.params
    }

    pub fn in_basin(&self, x: &Real) -> bool {
        self.basin.contains(x) && !self.excluded.iter().any(|e| e == x)
    }

    pub fn to_conjugate(&self, x: &Real) -> Real {
        let bits = self.ctx.bits().max(x.prec());
        match self.shift {
            Shift::Offset => Float::with_val(bits, x - &self.fixed_point),
            Shift::Reflect => Float::with_val(bits, &self.fixed_point - x),
        }
    }

    pub fn from_conjugate(&self, y: &Real) -> Real {
        let bits = self.ctx.bits();
        match self.shift {
            Shift::Offset => Float::with_val(bits, y + &self.fixed_point),
            Shift::Reflect => Float::with_val(bits, &self.fixed_point - y),
        }
    }

    /// The raw map f.
    pub fn raw_map(&self, x: &Real) -> Result<Real> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        match &self.kernel {
            Kernel::Exp { ln_c } => Ok(numeric::exp(ctx, &Float::with_val(bits, x * ln_c))),
            Kernel::Log2 { two_over_ln2 } => {
                let half_ln2 = Float::with_val(bits, two_over_ln2.recip_ref());
                Ok(numeric::exp(ctx, &Float::with_val(bits, x * half_ln2)))
            }
            Kernel::Logistic { lambda } => {
                let one_minus = Float::with_val(bits, 1u32 - x);
                Ok(Float::with_val(bits, x * lambda) * one_minus)
            }
            Kernel::Radical { .. } => {
                numeric::sqrt(ctx, &Float::with_val(bits, x + 1u32))
            }
            Kernel::GammaFp1 { ladder } | Kernel::GammaFp2 { ladder } => ladder.base().f_gamma(x),
        }
    }

    /// Inverse of the raw map on the monotone piece that contains the fixed point.
    pub fn raw_inverse(&self, x: &Real) -> Result<Real> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        match &self.kernel {
            Kernel::Exp { ln_c } => Ok(numeric::ln(ctx, x)? / ln_c),
            Kernel::Log2 { two_over_ln2 } => Ok(numeric::ln(ctx, x)? * two_over_ln2),
            Kernel::Logistic { lambda } => {
                // lower root of lambda u (1 - u) = x
                let disc = Float::with_val(bits, 1u32 - Float::with_val(bits, x * 4u32) / lambda);
                let root = numeric::sqrt(ctx, &disc)?;
                Ok(Float::with_val(bits, 1u32 - root) / 2u32)
            }
            Kernel::Radical { .. } => {
                if x.cmp0() == Some(Ordering::Less) {
                    return Err(Error::domain("sqrt(1 + x) takes no negative values"));
                }
                Ok(Float::with_val(bits, x.square_ref()) - 1u32)
            }
            Kernel::GammaFp1 { ladder } | Kernel::GammaFp2 { ladder } => {
                ladder.base().inverse_f_gamma(x)
            }
        }
    }

    /// The raw step whose conjugate is [`Self::eval_conjugate`]: f, or f^-1
    /// for maps built around a repelling fixed point of f.
    pub fn raw_step(&self, x: &Real) -> Result<Real> {
        match self.direction {
            Direction::Forward => self.raw_map(x),
            Direction::Inverse => self.raw_inverse(x),
        }
    }

    /// One step of the conjugate map.
    pub fn eval_conjugate(&self, y: &Real) -> Result<Real> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        if !y.is_finite() {
            return Err(Error::domain("conjugate map at a non-finite point"));
        }
        match &self.kernel {
            Kernel::Exp { ln_c } => {
                let t = Float::with_val(bits, y * ln_c);
                let em1 = Float::with_val(bits, t.exp_m1_ref());
                Ok(em1 * &self.fixed_point)
            }
            Kernel::Log2 { two_over_ln2 } => {
                if *y <= -4 {
                    return Err(Error::domain(format!(
                        "conjugate of 2 log2(x) needs z > -4, got {}",
                        y.to_f64()
                    )));
                }
                let q = Float::with_val(bits, y / 4u32);
                Ok(Float::with_val(bits, q.ln_1p_ref()) * two_over_ln2)
            }
            Kernel::Logistic { lambda } => match self.name {
                MapName::LogisticFp0 => {
                    let one_minus = Float::with_val(bits, 1u32 - y);
                    Ok(Float::with_val(bits, y * lambda) * one_minus)
                }
                _ => {
                    // (2 - lambda) y - lambda y^2
                    let lin = Float::with_val(bits, y * &self.multiplier);
                    let quad = Float::with_val(bits, y.square_ref()) * lambda;
                    Ok(lin - quad)
                }
            },
            Kernel::Radical { golden } => {
                // golden - sqrt(1 + golden - y) = y / (golden + sqrt(golden^2 - y))
                let inner = Float::with_val(bits, golden + 1u32) - y;
                let root = numeric::sqrt(ctx, &inner).map_err(|_| {
                    Error::domain(format!(
                        "radical conjugate needs y <= golden ratio + 1, got {}",
                        y.to_f64()
                    ))
                })?;
                Ok(Float::with_val(bits, y / (root + golden)))
            }
            Kernel::GammaFp1 { ladder } => {
                // Gamma(2 + y) - 1
                if *y <= -2 {
                    return Err(Error::domain(format!(
                        "Gamma(2 + y) needs y > -2, got {}",
                        y.to_f64()
                    )));
                }
                let extra = boost_digits(y);
                let ev = ladder.with_extra_digits(extra);
                let hp = ev.context().bits();
                let arg = Float::with_val(y.prec() + hp, y + 1u32);
                let g = ev.gamma1p(&arg)?;
                Ok(Float::with_val(bits, Float::with_val(hp, g - 1u32)))
            }
            Kernel::GammaFp2 { ladder } => self.gamma_fp2_step(ladder, y),
        }
    }

    /// z -> g(2 + z) - 2 where g inverts Gamma(1 + x) on its increasing branch.
    fn gamma_fp2_step(&self, ladder: &GammaLadder, z: &Real) -> Result<Real> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        if z.is_zero() {
            return Ok(ctx.real(0));
        }
        let quarter = ctx.ratio(1, 4);
        if Float::with_val(bits, z.abs_ref()) > quarter {
            let w = Float::with_val(bits, z + 2u32);
            let x = ladder.base().inverse_f_gamma(&w)?;
            return Ok(x - 2u32);
        }
        // Solve Gamma(3 + u) - 2 = z for u near 0 with the residual carried
        // at raised precision; |u| < 2|z| because Gamma' > 1/2 on [2.5, 3.5].
        let ev = ladder.with_extra_digits(boost_digits(z));
        let hp = ev.context().bits();
        let target = Float::with_val(z.prec() + hp, z + 2u32);
        let resid = |u: &Real| -> Result<Real> {
            let arg = Float::with_val(u.prec() + hp, u + 2u32);
            let g = ev.gamma1p(&arg)?;
            Ok(Float::with_val(bits, Float::with_val(hp + z.prec(), g - &target)))
        };
        let tol = Tolerance {
            rel: ctx.pow10(-(ctx.working_digits() as i32 - 3)),
            abs: ctx.real(0),
        };
        // Gamma(3 + u) = 2 + d u + 1.25 u^2 + O(u^3) with d = 3 - 2 euler_gamma,
        // so the second-order guess is off by O(z^3)
        let d = Float::with_val(bits, self.multiplier.recip_ref());
        let z2 = Float::with_val(bits, z.square_ref());
        let mut guess = Float::with_val(bits, z / &d);
        guess -= Float::with_val(bits, &z2 * 5u32) / Float::with_val(bits, 4u32 * d.clone().square());
        if let Some(u) = secant_from(&resid, guess, &d, &tol, z)? {
            return Ok(u);
        }
        let reach = Float::with_val(bits, z.abs_ref()) * 2u32;
        let lo = Float::with_val(bits, -&reach);
        let f_lo = resid(&lo)?;
        let f_hi = resid(&reach)?;
        illinois(
            resid,
            (lo, f_lo),
            (reach, f_hi),
            &tol,
            ctx.max_iterations(),
            "inverse Gamma step",
        )
    }
}

/// Secant iteration for Gamma(3 + u) - 2 = z seeded at `guess`, with the
/// first step taken along the slope `d + 2.5 u`. Returns `None` when the
/// iterates leave [-2|z|, 2|z|] or stall, so the caller can fall back to a
/// bracketed solve.
fn secant_from<F>(resid: &F, guess: Real, d: &Real, tol: &Tolerance, z: &Real) -> Result<Option<Real>>
where
    F: Fn(&Real) -> Result<Real>,
{
    const MAX_STEPS: u32 = 40;
    let bits = guess.prec();
    let reach = Float::with_val(bits, z.abs_ref()) * 2u32;
    let inside = |u: &Real| Float::with_val(bits, u.abs_ref()) <= reach;
    let mut u = guess;
    let mut r = resid(&u)?;
    if r.is_zero() {
        return Ok(Some(u));
    }
    let slope0 = Float::with_val(bits, &u * 2.5f64) + d;
    let mut next = Float::with_val(bits, &u - Float::with_val(bits, &r / &slope0));
    for _ in 0..MAX_STEPS {
        if !inside(&next) {
            return Ok(None);
        }
        let r_next = resid(&next)?;
        if r_next.is_zero() {
            return Ok(Some(next));
        }
        let du = Float::with_val(bits, &next - &u);
        let dr = Float::with_val(bits, &r_next - &r);
        if du.is_zero() || dr.is_zero() {
            return Ok(Some(next));
        }
        let step = Float::with_val(bits, &r_next * &du) / &dr;
        u = next;
        r = r_next;
        next = Float::with_val(bits, &u - &step);
        let limit = Float::with_val(bits, next.abs_ref()) * &tol.rel;
        if Float::with_val(bits, step.abs_ref()) <= limit {
            return Ok(inside(&next).then_some(next));
        }
    }
    Ok(None)
}

/// Builds a catalog entry by name (`sqrt2exp_fp2`, `logistic_fpmu`, ...).
pub fn catalog(name: &str, params: &MapParams, ctx: &PrecisionContext) -> Result<MapSpec> {
    MapSpec::new(name.parse()?, params, ctx)
}
