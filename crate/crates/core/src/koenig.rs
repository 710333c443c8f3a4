//! Schroeder functions by Koenig's limit `Phi(y) = lim y_k / s^k`.

use std::sync::Arc;

use rug::Float;

use crate::error::{Error, Result};
use crate::maps::{MapSpec, Shift};
use crate::numeric::{PrecisionContext, Real};

/// Result of one Koenig limit.
#[derive(Debug, Clone)]
pub struct KoenigReport {
    pub value: Real,
    pub iterations: u32,
    pub multiplier: Real,
}

/// Schroeder function of a catalog map at a fixed precision.
#[derive(Debug, Clone)]
pub struct SchroederSolution {
    spec: Arc<MapSpec>,
}

impl SchroederSolution {
    pub fn new(spec: Arc<MapSpec>) -> Self {
        SchroederSolution { spec }
    }

    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    pub fn context(&self) -> &PrecisionContext {
        self.spec.context()
    }

    /// Iterates the conjugate map from `y0` until two successive estimates
    /// `y_k / s^k` agree to `target + guard/2` digits.
    pub fn schroeder_value(&self, y0: &Real) -> Result<KoenigReport> {
        let spec = &*self.spec;
        let ctx = spec.context();
        let bits = ctx.bits();
        let s = spec.multiplier();
        let report = |value: Real, iterations| KoenigReport {
            value,
            iterations,
            multiplier: s.clone(),
        };
        if y0.is_zero() {
            return Ok(report(ctx.real(0), 0));
        }
        let x0 = spec.from_conjugate(y0);
        if !spec.in_basin(&x0) {
            return Err(Error::domain(format!(
                "{}: x = {} is outside the basin {}",
                spec.name(),
                x0.to_f64(),
                spec.basin()
            )));
        }
        let threshold = ctx.convergence_threshold();
        let mut y = Float::with_val(bits, y0);
        let mut scale = ctx.real(1);
        let mut previous = y.clone();
        for k in 1..=ctx.max_iterations() {
            y = spec.eval_conjugate(&y)?;
            if y.is_zero() {
                // the orbit landed exactly on the fixed point
                return Ok(report(ctx.real(0), k));
            }
            if !y.is_finite() {
                return Err(Error::domain(format!("{}: orbit escaped", spec.name())));
            }
            scale *= s;
            let estimate = Float::with_val(bits, &y / &scale);
            let step = Float::with_val(bits, &estimate - &previous).abs();
            let bound = Float::with_val(bits, estimate.abs_ref()) * &threshold;
            if step <= bound {
                return Ok(report(estimate, k));
            }
            previous = estimate;
        }
        Err(Error::stalled(
            format!("Koenig limit for {}", spec.name()),
            ctx.max_iterations(),
        ))
    }

    /// Schroeder value at a raw point.
    pub fn at_raw(&self, x: &Real) -> Result<KoenigReport> {
        self.schroeder_value(&self.spec.to_conjugate(x))
    }

    /// |Phi(conjugate(y)) - s Phi(y)|, each side computed by its own limit.
    pub fn residual(&self, y: &Real) -> Result<Real> {
        let bits = self.context().bits();
        let lhs = self.schroeder_value(&self.spec.eval_conjugate(y)?)?.value;
        let rhs = self.schroeder_value(y)?.value * self.spec.multiplier();
        Ok(Float::with_val(bits, lhs - rhs).abs())
    }
}

/// Rate data for the raw recurrence converging to the fixed point:
/// `x_k - p ~ limit_constant * multiplier^k`.
#[derive(Debug, Clone)]
pub struct ConvergenceRate {
    pub multiplier: Real,
    pub limit_constant: Real,
}

pub fn convergence_rate(spec: Arc<MapSpec>, raw_x0: &Real) -> Result<ConvergenceRate> {
    let sol = SchroederSolution::new(spec);
    let rep = sol.at_raw(raw_x0)?;
    let limit_constant = match sol.spec().shift() {
        Shift::Offset => rep.value,
        Shift::Reflect => -rep.value,
    };
    Ok(ConvergenceRate {
        multiplier: rep.multiplier,
        limit_constant,
    })
}
