//! The regression manifest: every named constant the library reproduces,
//! in a fixed order, rendered as `name = value` lines.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::abel::{branch_difference, AbelBranch, BranchId};
use crate::error::{Error, Result};
use crate::frac::{abel_fixed_points, half_iterate, iterate, tetration};
use crate::koenig::SchroederSolution;
use crate::maps::{MapName, MapParams, MapSpec};
use crate::numeric::{euler_gamma, golden_ratio, ln2, render, PrecisionContext, Real};

pub const MIN_DIGITS: u32 = 10;
pub const MAX_DIGITS: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Published digits exist to compare against.
    Published,
    /// Computed here with no published digits to compare against.
    Derived,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Published => "published",
            Source::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantEntry {
    pub name: String,
    pub value: String,
    pub source: Source,
}

impl fmt::Display for ConstantEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.name, self.value)
    }
}

type Q = (i64, i64);

#[derive(Debug, Clone, Copy)]
enum Param {
    None,
    Lambda(Q),
}

#[derive(Debug, Clone, Copy)]
enum Recipe {
    /// Koenig limit of the 2^(x/2) recurrence started at raw x.
    KoenigLimit(Q),
    Offset(BranchId, Param),
    Abel(BranchId, Q),
    HalfIterate(BranchId, Param, Q),
    /// f^[t](x) as (branch, x, t).
    Iterate(BranchId, Q, Q),
    /// The k-th (1-based) solution of F(x) = x on (-10, 2).
    AbelFixedPoint(usize),
    /// f_a^[1/2](3) - f_b^[1/2](3).
    BranchGap,
    Tetration(Q, Q),
    Ln2,
    EulerGamma,
    GoldenRatio,
}

struct Row {
    name: &'static str,
    alias: Option<&'static str>,
    source: Source,
    recipe: Recipe,
}

const fn row(name: &'static str, source: Source, recipe: Recipe) -> Row {
    Row {
        name,
        alias: None,
        source,
        recipe,
    }
}

const fn aliased(name: &'static str, alias: &'static str, recipe: Recipe) -> Row {
    Row {
        name,
        alias: Some(alias),
        source: Source::Published,
        recipe,
    }
}

use BranchId::*;
use Recipe::*;
use Source::{Derived, Published};

const HALF: Q = (1, 2);

static ROWS: &[Row] = &[
    row("sqrt2exp.koenig.x0_1", Published, KoenigLimit((1, 1))),
    row("sqrt2exp.koenig.x0_3", Published, KoenigLimit((3, 1))),
    aliased("sqrt2exp.I1.offset", "alpha", Offset(Sqrt2ExpI1, Param::None)),
    aliased("sqrt2exp.I2a.offset", "beta", Offset(Sqrt2ExpI2a, Param::None)),
    aliased("sqrt2exp.I2b.offset", "gamma", Offset(Sqrt2ExpI2b, Param::None)),
    aliased("sqrt2exp.I3.offset", "delta", Offset(Sqrt2ExpI3, Param::None)),
    row("sqrt2exp.I2a.abel_5_2", Published, Abel(Sqrt2ExpI2a, (5, 2))),
    row("sqrt2exp.I2a.abel_7_2", Published, Abel(Sqrt2ExpI2a, (7, 2))),
    row("sqrt2exp.I2b.abel_5_2", Published, Abel(Sqrt2ExpI2b, (5, 2))),
    row("sqrt2exp.I2b.abel_7_2", Published, Abel(Sqrt2ExpI2b, (7, 2))),
    row("sqrt2exp.I1.halfiter_1", Published, HalfIterate(Sqrt2ExpI1, Param::None, (1, 1))),
    row("sqrt2exp.I2a.halfiter_3", Published, HalfIterate(Sqrt2ExpI2a, Param::None, (3, 1))),
    row("sqrt2exp.I2b.halfiter_3", Published, HalfIterate(Sqrt2ExpI2b, Param::None, (3, 1))),
    row("sqrt2exp.I3.halfiter_5", Published, HalfIterate(Sqrt2ExpI3, Param::None, (5, 1))),
    row("sqrt2exp.I1.fixed_point_1", Published, AbelFixedPoint(1)),
    row("sqrt2exp.I1.fixed_point_2", Published, AbelFixedPoint(2)),
    row("logistic.lambda_1_2.halfiter", Published, HalfIterate(LogisticFp0, Param::Lambda((1, 2)), HALF)),
    row("logistic.lambda_1_3.halfiter", Published, HalfIterate(LogisticFp0, Param::Lambda((1, 3)), HALF)),
    row("logistic.lambda_2_3.halfiter", Published, HalfIterate(LogisticFp0, Param::Lambda((2, 3)), HALF)),
    row("logistic.lambda_3_2.offset", Published, Offset(LogisticFpMu, Param::Lambda((3, 2)))),
    row("logistic.lambda_4_3.offset", Published, Offset(LogisticFpMu, Param::Lambda((4, 3)))),
    row("logistic.lambda_5_3.offset", Published, Offset(LogisticFpMu, Param::Lambda((5, 3)))),
    row("logistic.lambda_3_2.halfiter", Published, HalfIterate(LogisticFpMu, Param::Lambda((3, 2)), HALF)),
    row("logistic.lambda_4_3.halfiter", Published, HalfIterate(LogisticFpMu, Param::Lambda((4, 3)), HALF)),
    row("logistic.lambda_5_3.halfiter", Published, HalfIterate(LogisticFpMu, Param::Lambda((5, 3)), HALF)),
    row("radical.offset", Published, Offset(Radical, Param::None)),
    row("radical.iter_1_2", Published, Iterate(Radical, (0, 1), (1, 2))),
    row("radical.iter_3_2", Published, Iterate(Radical, (0, 1), (3, 2))),
    row("radical.iter_5_2", Published, Iterate(Radical, (0, 1), (5, 2))),
    row("gamma_fp2.offset", Published, Offset(GammaFp2, Param::None)),
    row("gamma_fp2.halfiter_3", Published, HalfIterate(GammaFp2, Param::None, (3, 1))),
    row("gamma_fp2.halfiter_4", Published, HalfIterate(GammaFp2, Param::None, (4, 1))),
    row("gamma_fp2.halfiter_5", Published, HalfIterate(GammaFp2, Param::None, (5, 1))),
    row("gamma_fp1.offset", Published, Offset(GammaFp1, Param::None)),
    row("gamma_fp1.halfiter_m1_2", Published, HalfIterate(GammaFp1, Param::None, (-1, 2))),
    row("sqrt2exp.halfiter_3.gap", Derived, BranchGap),
    row("tetration.base_4_3.t_1_2", Derived, Tetration((4, 3), HALF)),
    row("tetration.base_5_4.t_1_2", Derived, Tetration((5, 4), HALF)),
    row("tetration.base_6_5.t_1_2", Derived, Tetration((6, 5), HALF)),
    row("constant.ln2", Derived, Ln2),
    row("constant.euler_gamma", Derived, EulerGamma),
    row("constant.golden_ratio", Derived, GoldenRatio),
];

fn params(p: Param, ctx: &PrecisionContext) -> MapParams {
    match p {
        Param::None => MapParams::default(),
        Param::Lambda((n, d)) => MapParams::lambda(ctx.ratio(n, d)),
    }
}

fn q(ctx: &PrecisionContext, (n, d): Q) -> Real {
    ctx.ratio(n, d)
}

fn evaluate(recipe: Recipe, ctx: &PrecisionContext) -> Result<Real> {
    let plain = MapParams::default();
    match recipe {
        KoenigLimit(x) => {
            let spec = MapSpec::new(MapName::Sqrt2ExpFp2, &plain, ctx)?;
            Ok(SchroederSolution::new(Arc::new(spec)).at_raw(&q(ctx, x))?.value)
        }
        Offset(id, p) => Ok(AbelBranch::build(id, &params(p, ctx), ctx)?.offset().clone()),
        Abel(id, x) => AbelBranch::build(id, &plain, ctx)?.eval(&q(ctx, x)),
        HalfIterate(id, p, x) => half_iterate(&AbelBranch::build(id, &params(p, ctx), ctx)?, &q(ctx, x)),
        Iterate(id, x, t) => iterate(&AbelBranch::build(id, &plain, ctx)?, &q(ctx, x), &q(ctx, t)),
        AbelFixedPoint(k) => {
            let b = AbelBranch::build(Sqrt2ExpI1, &plain, ctx)?;
            let roots = abel_fixed_points(&b, &ctx.real(-10), &ctx.real(2))?;
            roots
                .into_iter()
                .nth(k - 1)
                .ok_or_else(|| Error::domain(format!("fewer than {k} fixed points of F found")))
        }
        BranchGap => branch_difference(&ctx.ratio(1, 2), ctx),
        Tetration(c, t) => tetration(&q(ctx, c), &q(ctx, t), ctx),
        Ln2 => Ok(ln2(ctx)),
        EulerGamma => euler_gamma(ctx),
        GoldenRatio => Ok(golden_ratio(ctx)),
    }
}

fn selected(filter: Option<&str>) -> Vec<&'static Row> {
    ROWS.iter()
        .filter(|r| match filter {
            None => true,
            Some(f) => r.name.contains(f) || r.alias == Some(f),
        })
        .collect()
}

/// Names of all manifest rows, in output order.
pub fn names() -> Vec<&'static str> {
    ROWS.iter().map(|r| r.name).collect()
}

/// Unrendered manifest values for the rows matching `filter`, in manifest
/// order. Rows are computed concurrently.
pub fn compute(ctx: &PrecisionContext, filter: Option<&str>) -> Result<Vec<(&'static str, Source, Real)>> {
    selected(filter)
        .into_par_iter()
        .map(|r| {
            let v = evaluate(r.recipe, ctx).map_err(|e| e.labelled(r.name))?;
            Ok((r.name, r.source, v))
        })
        .collect()
}

/// The manifest at `digits` decimals.
///
/// Each value is computed with the default guard for `digits` and rendered
/// with round-half-even. An empty selection is an error.
pub fn manifest(digits: u32, filter: Option<&str>) -> Result<Vec<ConstantEntry>> {
    if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        return Err(Error::Parameter(format!(
            "digits must lie in [{MIN_DIGITS}, {MAX_DIGITS}], got {digits}"
        )));
    }
    let ctx = PrecisionContext::new(digits)?;
    let values = compute(&ctx, filter)?;
    if values.is_empty() {
        return Err(Error::UnknownName(format!(
            "no constant matches {:?}",
            filter.unwrap_or("")
        )));
    }
    Ok(values
        .into_iter()
        .map(|(name, source, v)| ConstantEntry {
            name: name.to_string(),
            value: render(&v, digits),
            source,
        })
        .collect())
}

/// Parses one `name = value` line.
pub fn parse_line(line: &str) -> Option<(&str, &str)> {
    let (name, value) = line.split_once(" = ")?;
    if name.is_empty() || value.is_empty() {
        return None;
    }
    Some((name, value))
}

/// Whether a rendered value parses back to itself.
pub fn round_trips(entry: &ConstantEntry, digits: u32) -> bool {
    let bits = crate::numeric::digits_to_bits(digits + 20);
    match Float::parse(&entry.value) {
        Ok(p) => render(&Float::with_val(bits, p), digits) == entry.value,
        Err(_) => false,
    }
}
