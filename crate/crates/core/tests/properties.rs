use std::sync::OnceLock;

use abeliter::abel::{AbelBranch, BranchId};
use abeliter::frac::half_iterate;
use abeliter::maps::MapParams;
use abeliter::numeric::{parse_rational, render, PrecisionContext};
use abeliter::plot::grid;
use abeliter::special::GammaEvaluator;
use proptest::prelude::*;
use rug::{Float, Rational};

fn ctx() -> &'static PrecisionContext {
    static CTX: OnceLock<PrecisionContext> = OnceLock::new();
    CTX.get_or_init(|| PrecisionContext::new(25).unwrap())
}

fn i1() -> &'static AbelBranch {
    static B: OnceLock<AbelBranch> = OnceLock::new();
    B.get_or_init(|| AbelBranch::build(BranchId::Sqrt2ExpI1, &MapParams::default(), ctx()).unwrap())
}

fn gamma() -> &'static GammaEvaluator {
    static G: OnceLock<GammaEvaluator> = OnceLock::new();
    G.get_or_init(|| GammaEvaluator::new(ctx()))
}

fn tol() -> f64 {
    1e-23
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn render_then_parse_is_stable(m in -10_i64.pow(12)..10_i64.pow(12), e in 0u32..12) {
        let x = ctx().parse(&format!("{m}e-{e}")).unwrap();
        let text = render(&x, 20);
        prop_assert_eq!(render(&ctx().parse(&text).unwrap(), 20), text);
    }

    #[test]
    fn exact_rationals_parse_exactly(p in -1000_i64..1000, q in 1_i64..1000) {
        prop_assert_eq!(parse_rational(&format!("{p}/{q}")).unwrap(), Rational::from((p, q)));
    }

    #[test]
    fn abel_equation_on_i1(x in -8.0f64..1.9) {
        let b = i1();
        let x = Float::with_val(ctx().bits(), x);
        let lhs = b.eval(&b.step(&x).unwrap()).unwrap();
        let rhs = b.eval(&x).unwrap() + 1u32;
        prop_assert!(Float::with_val(ctx().bits(), lhs - rhs).abs() < tol());
    }

    #[test]
    fn half_iterate_is_increasing_and_between(a in -4.0f64..1.9, b in -4.0f64..1.9) {
        prop_assume!((a - b).abs() > 1e-3);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let br = i1();
        let lo = Float::with_val(ctx().bits(), lo);
        let hi = Float::with_val(ctx().bits(), hi);
        let hl = half_iterate(br, &lo).unwrap();
        let hh = half_iterate(br, &hi).unwrap();
        prop_assert!(hl < hh);
        // Below the attracting fixed point 2 the orbit climbs towards it.
        prop_assert!(lo < hl && hl < br.step(&lo).unwrap());
    }

    #[test]
    fn inverse_gamma_undoes_gamma(x in 0.5f64..6.0) {
        let x = Float::with_val(ctx().bits(), x);
        let w = gamma().f_gamma(&x).unwrap();
        let back = gamma().inverse_f_gamma(&w).unwrap();
        prop_assert!(Float::with_val(ctx().bits(), back - &x).abs() < tol());
    }

    #[test]
    fn grid_points_are_evenly_spaced(from in -50_i64..50, len in 0_i64..200, step in 1_i64..40) {
        let from_q = Rational::from((from, 10));
        let step_q = Rational::from((step, 100));
        let to_q = Rational::from((from * 10 + len, 100));
        let g = grid(&from_q, &to_q, &step_q).unwrap();
        prop_assert_eq!(&g[0], &from_q);
        prop_assert!(g.last().unwrap() <= &to_q);
        prop_assert!(Rational::from(g.last().unwrap() + &step_q) > to_q);
        for w in g.windows(2) {
            prop_assert_eq!(Rational::from(&w[1] - &w[0]), step_q.clone());
        }
    }
}
