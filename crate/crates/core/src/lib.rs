//! Arbitrary-precision Schroeder and Abel functions by Koenig's iteration.
//!
//! Half-iterates, tetration and plot data are built on top of Abel
//! functions of a small catalog of maps with attracting fixed points.

pub mod abel;
pub mod error;
pub mod frac;
pub mod interval;
pub mod koenig;
pub mod manifest;
pub mod maps;
pub mod numeric;
pub mod plot;
mod solve;
pub mod special;

pub use abel::{abel_eval, abel_invert, branch_difference, build_branch, AbelBranch, BranchId};
pub use error::{Error, Result};
pub use interval::{Bound, Interval};
pub use koenig::{convergence_rate, ConvergenceRate, KoenigReport, SchroederSolution};
pub use maps::{catalog, MapName, MapParams, MapSpec};
pub use numeric::{render, PrecisionContext, Real};
