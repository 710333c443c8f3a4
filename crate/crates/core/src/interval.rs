use std::fmt;

use crate::numeric::Real;

/// One end of a real interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    Unbounded,
    Open(Real),
    Closed(Real),
}

impl Bound {
    pub fn value(&self) -> Option<&Real> {
        match self {
            Bound::Unbounded => None,
            Bound::Open(v) | Bound::Closed(v) => Some(v),
        }
    }
}

/// Interval of the real line with independently open, closed or infinite ends.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Interval { lo, hi }
    }

    pub fn open(lo: Real, hi: Real) -> Self {
        Interval::new(Bound::Open(lo), Bound::Open(hi))
    }

    pub fn contains(&self, x: &Real) -> bool {
        if !x.is_finite() {
            return false;
        }
        let above = match &self.lo {
            Bound::Unbounded => true,
            Bound::Open(v) => x > v,
            Bound::Closed(v) => x >= v,
        };
        let below = match &self.hi {
            Bound::Unbounded => true,
            Bound::Open(v) => x < v,
            Bound::Closed(v) => x <= v,
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::Unbounded => write!(f, "(-inf")?,
            Bound::Open(v) => write!(f, "({}", v.to_f64())?,
            Bound::Closed(v) => write!(f, "[{}", v.to_f64())?,
        }
        match &self.hi {
            Bound::Unbounded => write!(f, ", inf)"),
            Bound::Open(v) => write!(f, ", {})", v.to_f64()),
            Bound::Closed(v) => write!(f, ", {}]", v.to_f64()),
        }
    }
}
