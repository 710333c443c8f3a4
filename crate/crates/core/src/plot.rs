//! Sampled series of Abel functions, their inverses and the gap between
//! the two Abel solutions on (2, 4).

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::Serialize;

use crate::abel::{branch_difference_with, AbelBranch, BranchId, DIFFERENCE_EXTRA_DIGITS};
use crate::error::{Error, Result};
use crate::interval::Bound;
use crate::maps::MapParams;
use crate::numeric::{render, PrecisionContext, Real};

/// Grids longer than this are rejected.
pub const MAX_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMode {
    /// y = F(x) on the branch interval.
    Abel,
    /// y = F^-1(x) on the branch range.
    Inverse,
    /// y = 10^24 (F_a^-1(x) - F_b^-1(x)) for the two solutions on (2, 4).
    Difference,
}

impl FromStr for PlotMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "abel" => Ok(PlotMode::Abel),
            "inverse" => Ok(PlotMode::Inverse),
            "difference" => Ok(PlotMode::Difference),
            _ => Err(Error::UnknownName(format!("plot mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Csv,
    Json,
}

impl FromStr for PlotFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(PlotFormat::Csv),
            "json" => Ok(PlotFormat::Json),
            _ => Err(Error::UnknownName(format!("plot format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub x: String,
    pub y: String,
}

/// Samples with strictly increasing x, all rendered at one digit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotSeries {
    pub branch_id: String,
    pub samples: Vec<Sample>,
}

impl PlotSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{}", s.x, s.y);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.samples).expect("strings always serialize") + "\n"
    }

    pub fn format(&self, format: PlotFormat) -> String {
        match format {
            PlotFormat::Csv => self.to_csv(),
            PlotFormat::Json => self.to_json(),
        }
    }
}

/// The points `from + i * step` that do not exceed `to`.
pub fn grid(from: &Rational, to: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if *step <= 0 {
        return Err(Error::Parameter("plot step must be positive".into()));
    }
    if from > to {
        return Err(Error::Parameter("plot range is empty".into()));
    }
    let span = Rational::from(to - from) / step;
    let count = span.floor().numer().to_usize().filter(|n| *n < MAX_SAMPLES).ok_or_else(|| {
        Error::Parameter(format!("plot grid exceeds {MAX_SAMPLES} samples"))
    })?;
    Ok((0..=count)
        .map(|i| (step * Rational::from(i)) + from)
        .collect())
}

fn above(bound: &Bound, x: &Real, margin: &Rational) -> bool {
    match bound {
        Bound::Unbounded => true,
        Bound::Closed(v) => x >= v,
        Bound::Open(v) => {
            let edge = Float::with_val(x.prec(), v + margin);
            if *margin == 0 {
                x > v
            } else {
                *x >= edge
            }
        }
    }
}

fn below(bound: &Bound, x: &Real, margin: &Rational) -> bool {
    match bound {
        Bound::Unbounded => true,
        Bound::Closed(v) => x <= v,
        Bound::Open(v) => {
            let edge = Float::with_val(x.prec(), v - margin);
            if *margin == 0 {
                x < v
            } else {
                *x <= edge
            }
        }
    }
}

fn sample_all<F>(points: Vec<Real>, digits: u32, f: F) -> Result<Vec<Sample>>
where
    F: Fn(&Real) -> Result<Real> + Sync,
{
    points
        .into_par_iter()
        .map(|x| {
            let y = f(&x)?;
            Ok(Sample {
                x: render(&x, digits),
                y: render(&y, digits),
            })
        })
        .collect()
}

fn nonempty(points: Vec<Real>, what: &str) -> Result<Vec<Real>> {
    if points.is_empty() {
        Err(Error::range(format!("plot range does not meet {what}")))
    } else {
        Ok(points)
    }
}

/// F sampled on the grid points lying in the branch interval, keeping
/// `margin` away from open ends.
pub fn abel_series(branch: &AbelBranch, grid: &[Rational], margin: &Rational) -> Result<PlotSeries> {
    let ctx = branch.context();
    let iv = branch.interval();
    let points: Vec<Real> = grid
        .iter()
        .map(|q| Float::with_val(ctx.bits(), q))
        .filter(|x| above(&iv.lo, x, margin) && below(&iv.hi, x, margin))
        .collect();
    let points = nonempty(points, &format!("the interval {iv} of {}", branch.id()))?;
    Ok(PlotSeries {
        branch_id: branch.id().to_string(),
        samples: sample_all(points, ctx.target_digits(), |x| branch.eval(x))?,
    })
}

/// F^-1 sampled on the grid points lying in the range of F.
pub fn inverse_series(branch: &AbelBranch, grid: &[Rational], margin: &Rational) -> Result<PlotSeries> {
    let ctx = branch.context();
    let points: Vec<Real> = grid
        .iter()
        .map(|q| Float::with_val(ctx.bits(), q))
        .filter(|t| above(branch.range_lower(), t, margin))
        .collect();
    let points = nonempty(points, &format!("the range of {}", branch.id()))?;
    Ok(PlotSeries {
        branch_id: branch.id().to_string(),
        samples: sample_all(points, ctx.target_digits(), |t| branch.invert(t))?,
    })
}

/// 10^24 w(t) on the grid points in [-4, 4], each inverse carried 30 digits
/// beyond the context's target.
pub fn difference_series(grid: &[Rational], ctx: &PrecisionContext) -> Result<PlotSeries> {
    let fine = ctx.with_target(ctx.target_digits() + DIFFERENCE_EXTRA_DIGITS);
    let points: Vec<Real> = grid
        .iter()
        .filter(|q| **q >= -4 && **q <= 4)
        .map(|q| Float::with_val(fine.bits(), q))
        .collect();
    let points = nonempty(points, "[-4, 4]")?;
    let params = MapParams::default();
    let a = AbelBranch::build(BranchId::Sqrt2ExpI2a, &params, &fine)?;
    let b = AbelBranch::build(BranchId::Sqrt2ExpI2b, &params, &fine)?;
    let scale = fine.pow10(24);
    Ok(PlotSeries {
        branch_id: "sqrt2exp.I2a-I2b".to_string(),
        samples: sample_all(points, ctx.target_digits(), |t| {
            Ok(branch_difference_with(&a, &b, t)? * &scale)
        })?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn grid_is_exact() {
        let g = grid(&q("-4"), &q("1.9"), &q("0.1")).unwrap();
        assert_eq!(g.len(), 60);
        assert_eq!(g[59], q("1.9"));
        assert!(grid(&q("0"), &q("1"), &q("0")).is_err());
        assert!(grid(&q("1"), &q("0"), &q("0.1")).is_err());
    }

    #[test]
    fn i1_series_is_ascending() {
        let ctx = PrecisionContext::new(20).unwrap();
        let b = AbelBranch::build(BranchId::Sqrt2ExpI1, &MapParams::default(), &ctx).unwrap();
        let g = grid(&q("-4"), &q("1.9"), &q("0.1")).unwrap();
        let s = abel_series(&b, &g, &q("0.001")).unwrap();
        assert_eq!(s.samples.len(), 60);
        let ys: Vec<f64> = s.samples.iter().map(|p| p.y.parse().unwrap()).collect();
        assert!(ys.windows(2).all(|w| w[0] < w[1]));
        // F(-4) = F(f(-4)) - 1 = F(1/4) - 1
        let expected = b.eval(&ctx.ratio(1, 4)).unwrap().to_f64() - 1.0;
        assert!((ys[0] - expected).abs() < 1e-12);
        assert!(ys[0] > -2.0 && ys[0] < -1.8);
        assert!(s.to_csv().starts_with("x,y\n-4.00000000000000000000,"));
        let json: Vec<serde_json::Value> = serde_json::from_str(&s.to_json()).unwrap();
        assert_eq!(json.len(), 60);
    }

    #[test]
    fn empty_intersection_is_range_error() {
        let ctx = PrecisionContext::new(15).unwrap();
        let b = AbelBranch::build(BranchId::Sqrt2ExpI2a, &MapParams::default(), &ctx).unwrap();
        let g = grid(&q("5"), &q("6"), &q("0.5")).unwrap();
        assert!(matches!(abel_series(&b, &g, &q("0")), Err(Error::Range(_))));
    }
}
