//! Gamma function on the positive axis and the inverse of `x -> Gamma(1 + x)`
//! on its increasing branch.
//!
//! Gamma is evaluated with Spouge's approximation
//!
//! ```text
//! Gamma(z + 1) = (z + a)^(z + 1/2) e^-(z + a) [c_0 + sum_{k=1}^{a-1} c_k / (z + k)]
//! ```
//!
//! whose relative error is below `a^(-1/2) (2 pi)^-(a + 1/2)` for `z > 0`.
//! The order `a` is picked from the working digits; the coefficients
//! alternate in sign and grow like `e^a`, so the sum is carried with enough
//! extra bits to absorb the cancellation.

use std::cmp::Ordering;
use std::sync::OnceLock;

use rug::float::Constant;
use rug::ops::DivFrom;
use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::numeric::{PrecisionContext, Real};
use crate::solve::{illinois, Tolerance};

/// Location and value of the minimum of `Gamma(1 + x)` for `x > -1`.
#[derive(Debug, Clone)]
pub struct BranchMinimum {
    pub argmin: Real,
    pub value: Real,
}

#[derive(Debug)]
pub struct GammaEvaluator {
    ctx: PrecisionContext,
    order: u32,
    internal_bits: u32,
    coeffs: Vec<Real>,
    minimum: OnceLock<BranchMinimum>,
}

fn spouge_order(digits: u32) -> u32 {
    let tau = 2.0 * std::f64::consts::PI;
    ((f64::from(digits) + 2.0) * std::f64::consts::LN_10 / tau.ln()).ceil() as u32 + 1
}

/// log2 of the largest |c_k|, estimated in double precision.
fn largest_coeff_log2(order: u32) -> f64 {
    let a = f64::from(order);
    let mut ln_fact = 0.0f64;
    let mut best = 0.0f64;
    for k in 1..order {
        let kf = f64::from(k);
        if k > 1 {
            ln_fact += (kf - 1.0).ln();
        }
        let ln_c = (kf - 0.5) * (a - kf).ln() + (a - kf) - ln_fact;
        best = best.max(ln_c);
    }
    best / std::f64::consts::LN_2
}

fn check_gamma1p_arg(z: &Real) -> Result<()> {
    if !z.is_finite() || *z <= -1 {
        return Err(Error::domain(format!(
            "Gamma(1 + z) needs z > -1, got {}",
            z.to_f64()
        )));
    }
    Ok(())
}

impl GammaEvaluator {
    pub fn new(ctx: &PrecisionContext) -> Self {
        let order = spouge_order(ctx.working_digits());
        let internal_bits = ctx.bits() + largest_coeff_log2(order).ceil() as u32 + 64;
        let p = internal_bits;
        let mut coeffs = Vec::with_capacity(order as usize);
        let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
        coeffs.push(two_pi.sqrt());
        let mut fact = Float::with_val(p, 1);
        for k in 1..order {
            if k > 1 {
                fact *= k - 1;
            }
            let base = Float::with_val(p, order - k);
            let power = Float::with_val(p, base.ln_ref()) * (f64::from(k) - 0.5);
            let mut c = Float::with_val(p, power + (order - k));
            c.exp_mut();
            c /= &fact;
            if k % 2 == 0 {
                c = -c;
            }
            coeffs.push(c);
        }
        GammaEvaluator {
            ctx: *ctx,
            order,
            internal_bits,
            coeffs,
            minimum: OnceLock::new(),
        }
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn approximation_order(&self) -> u32 {
        self.order
    }

    /// Spouge sum S(z) and the log prefactor (z + 1/2) ln(z + a) - (z + a), z >= 0.
    fn spouge_parts(&self, z: &Real) -> (Real, Real) {
        let p = self.internal_bits.max(z.prec());
        let z = Float::with_val(p, z);
        let mut sum = Float::with_val(p, &self.coeffs[0]);
        let mut term = Float::new(p);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            term.assign(&z + k as u32);
            term.div_from(c);
            sum += &term;
        }
        let t = Float::with_val(p, &z + self.order);
        let half = Float::with_val(p, &z + 0.5f64);
        let mut log_pre = Float::with_val(p, t.ln_ref()) * half;
        log_pre -= &t;
        (sum, log_pre)
    }

    /// Gamma(1 + z) for z > -1; `z` is used at its own precision, not rounded.
    pub fn gamma1p(&self, z: &Real) -> Result<Real> {
        check_gamma1p_arg(z)?;
        let p = self.internal_bits.max(z.prec());
        let g = if z.cmp0() == Some(Ordering::Less) {
            // Gamma(1 + z) = Gamma(2 + z) / (1 + z)
            let shifted = Float::with_val(p, z + 1u32);
            let (sum, log_pre) = self.spouge_parts(&shifted);
            Float::with_val(p, log_pre.exp_ref()) * sum / shifted
        } else {
            let (sum, log_pre) = self.spouge_parts(z);
            Float::with_val(p, log_pre.exp_ref()) * sum
        };
        Ok(Float::with_val(self.ctx.bits(), g))
    }

    /// ln Gamma(1 + z) for z > -1, at internal precision.
    fn ln_gamma1p(&self, z: &Real) -> Result<Real> {
        check_gamma1p_arg(z)?;
        let p = self.internal_bits.max(z.prec());
        if z.cmp0() == Some(Ordering::Less) {
            // Gamma(1 + z) = Gamma(2 + z) / (1 + z)
            let shifted = Float::with_val(p, z + 1u32);
            let (sum, log_pre) = self.spouge_parts(&shifted);
            let mut ln = Float::with_val(p, sum.ln_ref()) + log_pre;
            ln -= Float::with_val(p, shifted.ln_ref());
            return Ok(ln);
        }
        let (sum, log_pre) = self.spouge_parts(z);
        Ok(Float::with_val(p, sum.ln_ref()) + log_pre)
    }

    pub fn gamma(&self, x: &Real) -> Result<Real> {
        if x.cmp0() != Some(Ordering::Greater) {
            return Err(Error::domain(format!(
                "Gamma(x) needs x > 0, got {}",
                x.to_f64()
            )));
        }
        let p = self.internal_bits.max(x.prec());
        let z = Float::with_val(p, x - 1u32);
        self.gamma1p(&z)
    }

    /// f(x) = Gamma(1 + x)
    pub fn f_gamma(&self, x: &Real) -> Result<Real> {
        self.gamma1p(x)
    }

    /// Minimum of Gamma(1 + x), located by golden-section search on [0.3, 0.7].
    pub fn branch_minimum(&self) -> &BranchMinimum {
        self.minimum.get_or_init(|| self.golden_section_minimum())
    }

    fn golden_section_minimum(&self) -> BranchMinimum {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        let eval = |x: &Real| self.gamma1p(x).expect("interior point of [0.3, 0.7]");
        let inv_phi = {
            let five = Float::with_val(bits, 5);
            (five.sqrt() - 1u32) / 2u32
        };
        let mut a = ctx.ratio(3, 10);
        let mut b = ctx.ratio(7, 10);
        let tol = ctx.pow10(-(ctx.working_digits() as i32 / 2 + 2));
        let mut c = Float::with_val(bits, &b - Float::with_val(bits, &b - &a) * &inv_phi);
        let mut d = Float::with_val(bits, &a + Float::with_val(bits, &b - &a) * &inv_phi);
        let mut fc = eval(&c);
        let mut fd = eval(&d);
        while Float::with_val(bits, &b - &a) > tol {
            if fc < fd {
                b = d;
                d = c.clone();
                fd = fc;
                c = Float::with_val(bits, &b - Float::with_val(bits, &b - &a) * &inv_phi);
                fc = eval(&c);
            } else {
                a = c;
                c = d.clone();
                fc = fd;
                d = Float::with_val(bits, &a + Float::with_val(bits, &b - &a) * &inv_phi);
                fd = eval(&d);
            }
        }
        let argmin = Float::with_val(bits, &a + &b) / 2u32;
        let value = eval(&argmin);
        BranchMinimum { argmin, value }
    }

    /// Solves Gamma(1 + x) = w for x on the increasing branch (x >= argmin).
    pub fn inverse_f_gamma(&self, w: &Real) -> Result<Real> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        let min = self.branch_minimum();
        if !w.is_finite() {
            return Err(Error::domain("inverse Gamma of a non-finite value"));
        }
        let slack = Float::with_val(bits, &min.value * ctx.tolerance());
        if *w < Float::with_val(bits, &min.value - &slack) {
            return Err(Error::domain(format!(
                "inverse Gamma(1 + x) needs w >= {}, got {}",
                min.value.to_f64(),
                w.to_f64()
            )));
        }
        if *w <= min.value {
            return Ok(min.argmin.clone());
        }
        let ln_w = Float::with_val(self.internal_bits.max(w.prec()), w.ln_ref());
        let resid = |x: &Real| -> Result<Real> {
            let lg = self.ln_gamma1p(x)?;
            Ok(Float::with_val(bits, lg - &ln_w))
        };
        let lo = min.argmin.clone();
        let f_lo = resid(&lo)?;
        let mut hi = Float::with_val(bits, 2).max(&Float::with_val(bits, &lo + 1u32));
        let mut f_hi = resid(&hi)?;
        let mut doublings = 0u32;
        while f_hi.cmp0() == Some(Ordering::Less) {
            hi *= 2u32;
            f_hi = resid(&hi)?;
            doublings += 1;
            if doublings > ctx.max_iterations() {
                return Err(Error::stalled("inverse Gamma bracketing", doublings));
            }
        }
        let tol = Tolerance {
            rel: ctx.pow10(-(ctx.working_digits() as i32 - 3)),
            abs: ctx.real(0),
        };
        illinois(
            resid,
            (lo, f_lo),
            (hi, f_hi),
            &tol,
            ctx.max_iterations(),
            "inverse Gamma(1 + x)",
        )
    }
}

impl GammaEvaluator {
    /// Solves Gamma(1 + x) = w for x on the decreasing branch (-1 < x <= argmin).
    pub fn preimage_on_decreasing_branch(&self, w: &Real) -> Result<Real> {
        let ctx = &self.ctx;
        let bits = ctx.bits();
        let min = self.branch_minimum();
        if *w <= min.value {
            return Err(Error::domain("value at or below the minimum of Gamma(1 + x)"));
        }
        let ln_w = Float::with_val(self.internal_bits.max(w.prec()), w.ln_ref());
        let resid = |x: &Real| -> Result<Real> {
            let lg = self.ln_gamma1p(x)?;
            Ok(Float::with_val(bits, lg - &ln_w))
        };
        let hi = min.argmin.clone();
        let f_hi = resid(&hi)?;
        // walk towards -1 until Gamma(1 + x) exceeds w
        let mut gap = Float::with_val(bits, &hi + 1u32);
        let mut lo = ctx.real(0);
        let mut f_lo = f_hi.clone();
        let mut steps = 0u32;
        while f_lo.cmp0() != Some(Ordering::Greater) {
            gap /= 2u32;
            lo = Float::with_val(bits, &gap - 1u32);
            f_lo = resid(&lo)?;
            steps += 1;
            if steps > ctx.max_iterations() {
                return Err(Error::stalled("Gamma preimage bracketing", steps));
            }
        }
        let tol = Tolerance {
            rel: ctx.pow10(-(ctx.working_digits() as i32 - 3)),
            abs: ctx.real(0),
        };
        illinois(
            resid,
            (lo, f_lo),
            (hi, f_hi),
            &tol,
            ctx.max_iterations(),
            "Gamma(1 + x) preimage",
        )
    }
}

/// Gamma evaluators at a ladder of raised precisions, built on first use.
///
/// Steps near a fixed point evaluate `Gamma(1 + x) - c` where the result is
/// much smaller than the inputs; each rung adds eight digits so the
/// difference keeps full relative accuracy.
#[derive(Debug)]
pub struct GammaLadder {
    base: PrecisionContext,
    rungs: Vec<OnceLock<GammaEvaluator>>,
}

const RUNG_DIGITS: u32 = 8;

impl GammaLadder {
    pub fn new(ctx: &PrecisionContext) -> Self {
        let count = ctx.working_digits() / RUNG_DIGITS + 3;
        GammaLadder {
            base: *ctx,
            rungs: (0..count).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn base(&self) -> &GammaEvaluator {
        self.with_extra_digits(0)
    }

    /// Evaluator carrying at least `extra` digits beyond the base context.
    pub fn with_extra_digits(&self, extra: u32) -> &GammaEvaluator {
        let rung = (extra.div_ceil(RUNG_DIGITS) as usize).min(self.rungs.len() - 1);
        self.rungs[rung].get_or_init(|| {
            let boosted = PrecisionContext::with_guard(
                self.base.target_digits(),
                self.base.guard_digits() + RUNG_DIGITS * rung as u32,
                self.base.max_iterations(),
            )
            .expect("raising the guard keeps the context valid");
            GammaEvaluator::new(&boosted)
        })
    }
}
