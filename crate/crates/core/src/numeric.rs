//! Precision contract, decimal I/O and the handful of constants the maps need.
//!
//! Values are MPFR floats (`rug::Float`) carried at the context's working
//! precision. Elementary functions come from MPFR and are correctly rounded;
//! ln 2 and Euler's constant are summed here from their series.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Arbitrary-precision real number.
pub type Real = Float;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Smallest guard allowed on top of the requested digits.
pub const MIN_GUARD_DIGITS: u32 = 15;

/// Default cap for every limit process and root solve.
pub const DEFAULT_MAX_ITERATIONS: u32 = 20_000;

/// |log10| of the slowest multiplier in the catalog, 1/ln 4.
const SLOWEST_RATE_LOG10: f64 = 0.141_905;

/// Accuracy request shared by every numeric operation.
///
/// Working precision is `target_digits + guard_digits` decimal digits. The
/// default guard grows with the number of Koenig steps the slowest catalog
/// map needs at this target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    target_digits: u32,
    guard_digits: u32,
    max_iterations: u32,
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Result<Self> {
        let guard = Self::default_guard(target_digits);
        Self::with_guard(target_digits, guard, DEFAULT_MAX_ITERATIONS)
    }

    pub fn with_guard(target_digits: u32, guard_digits: u32, max_iterations: u32) -> Result<Self> {
        if target_digits == 0 {
            return Err(Error::Parameter("target digits must be positive".into()));
        }
        if guard_digits < MIN_GUARD_DIGITS {
            return Err(Error::Parameter(format!(
                "guard digits must be at least {MIN_GUARD_DIGITS}, got {guard_digits}"
            )));
        }
        if max_iterations == 0 {
            return Err(Error::Parameter("iteration cap must be positive".into()));
        }
        Ok(PrecisionContext {
            target_digits,
            guard_digits,
            max_iterations,
        })
    }

    /// max(15, ceil(0.1 * expected iterations)), where the expectation is the
    /// Koenig step count for multiplier 1/ln 4.
    pub fn default_guard(target_digits: u32) -> u32 {
        let expected = (f64::from(target_digits) / SLOWEST_RATE_LOG10).ceil();
        MIN_GUARD_DIGITS.max((0.1 * expected).ceil() as u32)
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn max_iterations(&self) -> u32 {
        self.max_iterations
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Binary precision of every `Real` produced under this context.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// Same context with the guard doubled; used to validate rendered digits.
    pub fn doubled_guard(&self) -> Self {
        PrecisionContext {
            guard_digits: self.guard_digits * 2,
            ..*self
        }
    }

    /// Same guard policy at a different target.
    pub fn with_target(&self, target_digits: u32) -> Self {
        PrecisionContext {
            target_digits,
            guard_digits: self.guard_digits.max(Self::default_guard(target_digits)),
            max_iterations: self.max_iterations,
        }
    }

    /// Digits two successive limit estimates must share before a limit is accepted.
    pub fn convergence_digits(&self) -> u32 {
        self.target_digits + self.guard_digits / 2
    }

    pub fn real<T>(&self, value: T) -> Real
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Real {
        self.real(Rational::from((num, den)))
    }

    /// 10^exponent at working precision.
    pub fn pow10(&self, exponent: i32) -> Real {
        let ten = self.real(10);
        ten.pow(exponent)
    }

    /// The acceptance tolerance 10^(1 - target).
    pub fn tolerance(&self) -> Real {
        self.pow10(1 - self.target_digits as i32)
    }

    /// 10^-(target + guard/2), the relative step size at which limits stop.
    pub fn convergence_threshold(&self) -> Real {
        self.pow10(-(self.convergence_digits() as i32))
    }

    /// Parses a decimal (`1.25`, `-3e-2`), a rational (`4/3`) or `sqrt(<number>)`.
    pub fn parse(&self, text: &str) -> Result<Real> {
        parse_real(text, self.bits())
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 4
}

pub(crate) fn parse_real(text: &str, bits: u32) -> Result<Real> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty string".into()));
    }
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let arg = parse_real(inner, bits + 8)?;
        if arg.is_sign_negative() && !arg.is_zero() {
            return Err(Error::Domain(format!("sqrt of negative value in {s:?}")));
        }
        return Ok(Float::with_val(bits, arg.sqrt_ref()));
    }
    if s.contains('/') {
        let q: Rational = s
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
        return Ok(Float::with_val(bits, &q));
    }
    let parsed = Float::parse(s).map_err(|_| Error::Parse(format!("invalid decimal {s:?}")))?;
    let value = Float::with_val(bits, parsed);
    if !value.is_finite() {
        return Err(Error::Parse(format!("non-finite value {s:?}")));
    }
    Ok(value)
}

/// Exact value of a decimal (`-1.9`, `2.5e-3`) or rational (`4/3`) literal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid exact number {s:?}"));
    if s.contains('/') {
        return s.parse::<Rational>().map_err(|_| bad());
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.trim_start_matches(['+', '-']).is_empty() {
        return Err(bad());
    }
    let numer: Integer = digits.parse().map_err(|_| bad())?;
    let shift = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    Ok(if shift >= 0 {
        Rational::from(numer * ten.pow(shift as u32))
    } else {
        Rational::from((numer, ten.pow(shift.unsigned_abs())))
    })
}

/// Fixed-point decimal rendering with `digits` places after the point,
/// rounded half-to-even on the exact binary value.
pub fn render(x: &Real, digits: u32) -> String {
    let q = match x.to_rational() {
        Some(q) => q,
        None => return x.to_string(),
    };
    let scale = Integer::from(Integer::u_pow_u(10, digits));
    let scaled = q * &scale;
    let (numer, denom) = scaled.into_numer_denom();
    let (mut quot, rem) = numer.div_rem_floor(denom.clone());
    let twice = Integer::from(&rem * 2u32);
    match twice.cmp(&denom) {
        Ordering::Greater => quot += 1u32,
        Ordering::Equal if quot.is_odd() => quot += 1u32,
        _ => {}
    }
    let negative = quot < 0;
    let mag = quot.abs().to_string();
    let d = digits as usize;
    let padded = if mag.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - d);
    let sign = if negative { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Rough decimal exponent: floor(log10 |x|) up to +-1. `None` for zero.
pub fn decimal_exponent(x: &Real) -> Option<i64> {
    x.get_exp()
        .map(|e| (f64::from(e) * std::f64::consts::LOG10_2).floor() as i64)
}

/// |a - b| <= tol * max(1, |b|)
pub fn close(a: &Real, b: &Real, tol: &Real) -> bool {
    let diff = Float::with_val(a.prec().max(b.prec()), a - b).abs();
    let scale = Float::with_val(b.prec(), b.abs_ref()).max(&Float::with_val(b.prec(), 1));
    diff <= Float::with_val(a.prec(), tol * &scale)
}

/// True when `x` lies within one unit of the last place of a printed
/// decimal, so both rounded and truncated printings match.
pub fn matches_printed(x: &Real, printed: &str) -> bool {
    let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let bits = x.prec().max(digits_to_bits(decimals.max(1) as u32 + 10));
    let Ok(parsed) = Float::parse(printed.trim()) else {
        return false;
    };
    let p = Float::with_val(bits, parsed);
    let diff = Float::with_val(bits, x - &p).abs();
    let ulp = Float::with_val(bits, 10u32).pow(-decimals);
    diff <= ulp
}

/// Elementary function selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Ln,
    Sqrt,
    /// `args[0] ^ args[1]`
    Pow,
}

/// Evaluates an elementary function at working precision.
pub fn elementary(ctx: &PrecisionContext, kind: Elementary, args: &[&Real]) -> Result<Real> {
    let want = match kind {
        Elementary::Pow => 2,
        _ => 1,
    };
    if args.len() != want {
        return Err(Error::Parameter(format!(
            "{kind:?} takes {want} argument(s), got {}",
            args.len()
        )));
    }
    match kind {
        Elementary::Exp => Ok(exp(ctx, args[0])),
        Elementary::Ln => ln(ctx, args[0]),
        Elementary::Sqrt => sqrt(ctx, args[0]),
        Elementary::Pow => pow(ctx, args[0], args[1]),
    }
}

pub fn exp(ctx: &PrecisionContext, x: &Real) -> Real {
    Float::with_val(ctx.bits(), x.exp_ref())
}

pub fn ln(ctx: &PrecisionContext, x: &Real) -> Result<Real> {
    if x.cmp0() != Some(Ordering::Greater) {
        return Err(Error::domain(format!("ln of non-positive value {}", x.to_f64())));
    }
    Ok(Float::with_val(ctx.bits(), x.ln_ref()))
}

pub fn sqrt(ctx: &PrecisionContext, x: &Real) -> Result<Real> {
    if x.cmp0() == Some(Ordering::Less) || x.is_nan() {
        return Err(Error::domain(format!("sqrt of negative value {}", x.to_f64())));
    }
    Ok(Float::with_val(ctx.bits(), x.sqrt_ref()))
}

/// `base ^ exponent` for positive base (zero base allowed with positive exponent).
pub fn pow(ctx: &PrecisionContext, base: &Real, exponent: &Real) -> Result<Real> {
    match base.cmp0() {
        Some(Ordering::Greater) => Ok(Float::with_val(ctx.bits(), base.pow(exponent))),
        Some(Ordering::Equal) if exponent.cmp0() == Some(Ordering::Greater) => Ok(ctx.real(0)),
        _ => Err(Error::domain(format!(
            "pow needs a positive base, got {}",
            base.to_f64()
        ))),
    }
}

pub fn pi(ctx: &PrecisionContext) -> Real {
    ctx.real(Constant::Pi)
}

pub fn sqrt_pi(ctx: &PrecisionContext) -> Real {
    let p = Float::with_val(ctx.bits() + 8, Constant::Pi);
    Float::with_val(ctx.bits(), p.sqrt_ref())
}

/// ln 2 = 2 atanh(1/3) = 2 * sum 1 / ((2k+1) 3^(2k+1)).
pub fn ln2(ctx: &PrecisionContext) -> Real {
    let bits = ctx.bits() + 16;
    let cutoff = Float::with_val(bits, Float::i_exp(1, -(bits as i32) - 8));
    let mut power = Float::with_val(bits, 1) / 3u32;
    let mut sum = Float::with_val(bits, 0);
    let mut k: u32 = 0;
    loop {
        let term = Float::with_val(bits, &power / (2 * k + 1));
        if term < cutoff {
            break;
        }
        sum += &term;
        power /= 9u32;
        k += 1;
    }
    Float::with_val(ctx.bits(), sum * 2u32)
}

/// (1 + sqrt 5) / 2
pub fn golden_ratio(ctx: &PrecisionContext) -> Real {
    let five = Float::with_val(ctx.bits() + 8, 5);
    let root = five.sqrt();
    Float::with_val(ctx.bits(), (root + 1u32) / 2u32)
}

/// Euler's constant by the Brent-McMillan Bessel-function ratio.
///
/// With `n` terms of scale, `U/V` converges to gamma with error O(e^(-4n));
/// the partial sums run for about 3.5911 n terms.
pub fn euler_gamma(ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.bits() + 64;
    let n = ((f64::from(bits) * std::f64::consts::LN_2) / 4.0).ceil() as u32 + 2;
    let terms = (3.5911 * f64::from(n)).ceil() as u32 + 1;
    if terms > ctx.max_iterations() {
        return Err(Error::stalled("Euler's constant series", ctx.max_iterations()));
    }
    let n2 = Float::with_val(bits, Integer::from(n) * n);
    let mut a = -Float::with_val(bits, n).ln();
    let mut b = Float::with_val(bits, 1);
    let mut u = a.clone();
    let mut v = b.clone();
    for k in 1..=terms {
        b *= &n2;
        b /= k;
        b /= k;
        a *= &n2;
        a /= k;
        a += &b;
        a /= k;
        u += &a;
        v += &b;
    }
    Ok(Float::with_val(ctx.bits(), u / v))
}
