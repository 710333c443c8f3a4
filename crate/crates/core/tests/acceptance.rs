//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use abeliter::abel::{AbelBranch, BranchId};
use abeliter::frac::{half_iterate, iterate, tetration_branch};
use abeliter::manifest::{compute, Source};
use abeliter::maps::MapParams;
use abeliter::numeric::{matches_printed, pow, render, sqrt_pi, PrecisionContext, Real};
use rug::Float;

const DIGITS: u32 = 50;
const MANIFEST_BUDGET: Duration = Duration::from_secs(300);
const PROPERTY_DIGITS: u32 = 30;
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);
/// |F(f(x)) - F(x) - 1|, |F(F^-1(t)) - t| and the Schroeder residual bound.
const PROPERTY_TOL: f64 = 1e-29;
const COMPOSITION_TOL: f64 = 1e-28;
const TOWER_TOL: f64 = 1e-45;
const GAP_LOW: f64 = 1e-26;
const GAP_HIGH: f64 = 1e-24;
const GAP_REL: f64 = 0.05;

const PUBLISHED: &str = include_str!("fixtures/published_constants.txt");
const GOLDEN: &str = include_str!("fixtures/manifest_50.txt");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ctx(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits).expect("valid context")
}

fn f(x: f64, bits: u32) -> Real {
    Float::with_val(bits, x)
}

fn published() -> BTreeMap<&'static str, &'static str> {
    PUBLISHED
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split_once(" = ").expect("name = value"))
        .collect()
}

type Manifest = Vec<(&'static str, Source, Real)>;

fn criterion_1(values: &Manifest, elapsed: Duration) -> Outcome {
    let reference = published();
    let mut misses = Vec::new();
    let mut checked = 0;
    for (name, printed) in &reference {
        match values.iter().find(|(n, _, _)| n == name) {
            Some((_, Source::Published, v)) if matches_printed(v, printed) => checked += 1,
            Some((_, _, v)) => misses.push(format!("{name} = {}", render(v, DIGITS))),
            None => misses.push(format!("{name} missing")),
        }
    }
    let rendered: Vec<String> = values
        .iter()
        .map(|(n, _, v)| format!("{n} = {}", render(v, DIGITS)))
        .collect();
    let golden: Vec<&str> = GOLDEN.lines().collect();
    let golden_ok = rendered.iter().map(String::as_str).eq(golden.iter().copied());
    let pass = misses.is_empty() && golden_ok && checked >= 25 && elapsed < MANIFEST_BUDGET;
    let mut detail = format!(
        "{checked}/{} published values within 1 ulp of the printed digits, golden manifest {}, {:.1}s",
        reference.len(),
        if golden_ok { "identical" } else { "differs" },
        elapsed.as_secs_f64()
    );
    if !misses.is_empty() {
        detail.push_str(&format!("; mismatches: {}", misses.join(", ")));
    }
    outcome(pass, detail)
}

fn criterion_2() -> Outcome {
    let c = ctx(DIGITS);
    let params = MapParams::default();
    let three = c.real(3);
    let fa = half_iterate(&AbelBranch::build(BranchId::Sqrt2ExpI2a, &params, &c).unwrap(), &three).unwrap();
    let fb = half_iterate(&AbelBranch::build(BranchId::Sqrt2ExpI2b, &params, &c).unwrap(), &three).unwrap();
    let gap = Float::with_val(c.bits(), &fa - &fb);
    let reference = published();
    let pa = c.parse(reference["sqrt2exp.I2a.halfiter_3"]).unwrap();
    let pb = c.parse(reference["sqrt2exp.I2b.halfiter_3"]).unwrap();
    let printed_gap = Float::with_val(c.bits(), &pa - &pb);
    let magnitude = gap.to_f64().abs();
    let rel = (Float::with_val(c.bits(), &gap - &printed_gap) / &printed_gap).abs().to_f64();
    let pass = (GAP_LOW..=GAP_HIGH).contains(&magnitude) && rel < GAP_REL;
    outcome(
        pass,
        format!("f_a - f_b = {:.6e}, printed difference {:.6e}, relative deviation {rel:.2e}", gap.to_f64(), printed_gap.to_f64()),
    )
}

fn criterion_3(values: &Manifest) -> Outcome {
    let offset = &values.iter().find(|(n, _, _)| *n == "gamma_fp2.offset").unwrap().2;
    let short = render(offset, 14);
    outcome(short == "-0.91938596545218", format!("gamma_fp2 offset at 14 digits = {short}"))
}

/// Branch, parameters and a sample range whose points and their images
/// stay on the branch.
fn property_branches(c: &PrecisionContext) -> Vec<(AbelBranch, f64, f64)> {
    let plain = MapParams::default();
    let lambda = |n, d| MapParams::lambda(c.ratio(n, d));
    let specs: Vec<(BranchId, MapParams, f64, f64)> = vec![
        (BranchId::Sqrt2ExpI1, plain.clone(), -5.0, 1.5),
        (BranchId::Sqrt2ExpI2a, plain.clone(), 2.1, 3.9),
        (BranchId::Sqrt2ExpI2b, plain.clone(), 2.1, 3.9),
        (BranchId::Sqrt2ExpI3, plain.clone(), 4.1, 6.0),
        (BranchId::LogisticFp0, lambda(1, 2), 0.05, 0.5),
        (BranchId::LogisticFpMu, lambda(3, 2), 0.5, 0.66),
        (BranchId::Radical, plain.clone(), -1.0, 1.6),
        (BranchId::GammaFp2, plain.clone(), 2.1, 5.0),
        (BranchId::GammaFp1, plain.clone(), 1.05, 1.95),
        (BranchId::ExpBaseI1, MapParams::base(c.ratio(4, 3)), -3.0, 1.5),
    ];
    specs
        .into_iter()
        .map(|(id, p, lo, hi)| (AbelBranch::build(id, &p, c).unwrap(), lo, hi))
        .collect()
}

fn samples(lo: f64, hi: f64, n: usize, bits: u32) -> Vec<Real> {
    (0..n)
        .map(|i| f(lo + (hi - lo) * i as f64 / (n - 1) as f64, bits))
        .collect()
}

fn abs_diff(a: &Real, b: &Real) -> f64 {
    Float::with_val(a.prec(), a - b).abs().to_f64()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let c = ctx(PROPERTY_DIGITS);
    let bits = c.bits();
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: String| failures.push(what);
    let (mut abel_worst, mut schroeder_worst, mut comp_worst, mut trip_worst) = (0f64, 0f64, 0f64, 0f64);

    for (b, lo, hi) in property_branches(&c) {
        let id = b.id();
        for x in samples(lo, hi, 20, bits) {
            let fx = b.step(&x).unwrap();
            let r = abs_diff(&(b.eval(&fx).unwrap() - b.eval(&x).unwrap()), &c.real(1));
            abel_worst = abel_worst.max(r);
            if r >= PROPERTY_TOL {
                fail(format!("Abel residual {r:.1e} on {id} at {}", x.to_f64()));
            }

            let raw = if id == BranchId::LogisticFpMu { Float::with_val(bits, 1 - &x) } else { x.clone() };
            let y = b.spec().to_conjugate(&raw);
            let phi = b.solution().schroeder_value(&y).unwrap().value;
            let res = b.solution().residual(&y).unwrap().to_f64() / phi.to_f64().abs().max(1.0);
            schroeder_worst = schroeder_worst.max(res);
            if res >= PROPERTY_TOL {
                fail(format!("Schroeder residual {res:.1e} on {id} at {}", x.to_f64()));
            }

            let t = b.eval(&x).unwrap() + 0.3f64;
            let back = b.eval(&b.invert(&t).unwrap()).unwrap();
            let r = abs_diff(&back, &t);
            trip_worst = trip_worst.max(r);
            if r >= PROPERTY_TOL {
                fail(format!("round trip {r:.1e} on {id} at t = {}", t.to_f64()));
            }
        }
        for x in samples(lo, hi, 5, bits) {
            let half = c.ratio(1, 2);
            let once = iterate(&b, &x, &half).unwrap();
            let twice = iterate(&b, &once, &half).unwrap();
            let r = abs_diff(&twice, &b.step(&x).unwrap());
            comp_worst = comp_worst.max(r);
            if r >= COMPOSITION_TOL {
                fail(format!("composition {r:.1e} on {id} at {}", x.to_f64()));
            }
        }
    }

    let i1 = AbelBranch::build(BranchId::Sqrt2ExpI1, &MapParams::default(), &c).unwrap();
    let far = i1.eval(&c.real(-1_000_000)).unwrap();
    if !(far > -2 && far < -1.999f64) {
        fail(format!("F(-1e6) = {}", far.to_f64()));
    }

    let radical = AbelBranch::build(BranchId::Radical, &MapParams::default(), &c).unwrap();
    let at = |t: (i64, i64)| iterate(&radical, &c.real(0), &c.ratio(t.0, t.1)).unwrap();
    let root2 = c.parse("sqrt(2)").unwrap();
    let nested = c.real(1) + &root2;
    let nested = Float::with_val(bits, nested.sqrt_ref());
    let chain = [at((1, 2)), c.real(1), at((3, 2)), root2, at((5, 2)), nested];
    if !chain.windows(2).all(|w| w[0] < w[1]) {
        fail("radical interleaving".into());
    }

    let half = c.ratio(1, 2);
    for (n, d) in [(1, 2), (1, 3), (2, 3)] {
        let b = AbelBranch::build(BranchId::LogisticFp0, &MapParams::lambda(c.ratio(n, d)), &c).unwrap();
        let v = half_iterate(&b, &half).unwrap();
        let image = b.step(&half).unwrap();
        if !(image < v && v < half) {
            fail(format!("logistic ordering at lambda = {n}/{d}"));
        }
    }
    for (n, d) in [(3, 2), (4, 3), (5, 3)] {
        let b = AbelBranch::build(BranchId::LogisticFpMu, &MapParams::lambda(c.ratio(n, d)), &c).unwrap();
        if half_iterate(&b, &half).unwrap() <= half {
            fail(format!("logistic ordering at lambda = {n}/{d}"));
        }
    }

    let g2 = AbelBranch::build(BranchId::GammaFp2, &MapParams::default(), &c).unwrap();
    for (x, bound) in [(3, 6), (4, 24), (5, 120)] {
        if half_iterate(&g2, &c.real(x)).unwrap() >= bound {
            fail(format!("Gamma half-iterate at {x} not below {bound}"));
        }
    }
    let g1 = AbelBranch::build(BranchId::GammaFp1, &MapParams::default(), &c).unwrap();
    if half_iterate(&g1, &c.ratio(-1, 2)).unwrap() <= sqrt_pi(&c) {
        fail("Gamma half-iterate at -1/2 not above sqrt(pi)".into());
    }

    let elapsed = start.elapsed();
    if elapsed >= PROPERTY_BUDGET {
        fail(format!("took {:.1}s", elapsed.as_secs_f64()));
    }
    let mut detail = format!(
        "worst Abel {abel_worst:.1e}, Schroeder {schroeder_worst:.1e}, composition {comp_worst:.1e}, round trip {trip_worst:.1e}; asymptote, interleaving, ordering and Gamma bounds checked in {:.1}s",
        elapsed.as_secs_f64()
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; failures: {}", failures.join(", ")));
    }
    outcome(failures.is_empty(), detail)
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let c = ctx(DIGITS);
    let root2 = c.parse("sqrt(2)").unwrap();
    let b = tetration_branch(&root2, &c).unwrap();
    let mut tower = c.real(1);
    let mut worst = 0f64;
    for n in 0..=5 {
        let v = b.invert(&c.real(n)).unwrap();
        let r = abs_diff(&v, &tower);
        worst = worst.max(r);
        if r >= TOWER_TOL {
            failures.push(format!("T(sqrt 2, {n}) off by {r:.1e}"));
        }
        tower = pow(&c, &root2, &tower).unwrap();
    }
    let half = b.invert(&c.ratio(1, 2)).unwrap();
    if !matches_printed(&half, published()["sqrt2exp.I1.halfiter_1"]) {
        failures.push(format!("T(sqrt 2, 1/2) = {}", render(&half, DIGITS)));
    }

    let c = ctx(PROPERTY_DIGITS);
    let mut comp = Vec::new();
    for (n, d) in [(4, 3), (5, 4), (6, 5)] {
        let base = c.ratio(n, d);
        let b = tetration_branch(&base, &c).unwrap();
        let one = c.real(1);
        let halfway = iterate(&b, &one, &c.ratio(1, 2)).unwrap();
        let full = iterate(&b, &halfway, &c.ratio(1, 2)).unwrap();
        let r = abs_diff(&full, &base);
        comp.push(format!("{n}/{d}: {r:.1e}"));
        if r >= COMPOSITION_TOL {
            failures.push(format!("composition at base {n}/{d} off by {r:.1e}"));
        }
    }
    let mut detail = format!(
        "tower n = 0..5 worst {worst:.1e}, T(sqrt 2, 1/2) = {}..., composition {}",
        render(&half, 10),
        comp.join(", ")
    );
    if !failures.is_empty() {
        detail.push_str(&format!("; failures: {}", failures.join(", ")));
    }
    outcome(failures.is_empty(), detail)
}

fn criterion_6(values: &Manifest) -> Outcome {
    let start = Instant::now();
    let doubled = ctx(DIGITS).doubled_guard();
    let again = match compute(&doubled, None) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("recomputation failed: {e}")),
    };
    let diffs: Vec<&str> = values
        .iter()
        .zip(&again)
        .filter(|((_, _, a), (_, _, b))| render(a, DIGITS) != render(b, DIGITS))
        .map(|((n, _, _), _)| *n)
        .collect();
    outcome(
        diffs.is_empty() && values.len() == again.len(),
        format!(
            "{}/{} constants unchanged with {} guard digits ({:.1}s){}",
            values.len() - diffs.len(),
            values.len(),
            doubled.guard_digits(),
            start.elapsed().as_secs_f64(),
            if diffs.is_empty() { String::new() } else { format!("; changed: {}", diffs.join(", ")) }
        ),
    )
}

fn main() {
    let start = Instant::now();
    let values = compute(&ctx(DIGITS), None).expect("manifest computes");
    let manifest_time = start.elapsed();

    let results = [
        ("constants manifest at 50 digits", criterion_1(&values, manifest_time)),
        ("agreement of the two half-iterates at 3", criterion_2()),
        ("gamma_fp2 offset at 14 digits", criterion_3(&values)),
        ("property suites at 30 digits", criterion_4()),
        ("tetration towers and composition", criterion_5()),
        ("stability under doubled guard digits", criterion_6(&values)),
    ];
    let mut all = true;
    for (i, (title, o)) in results.iter().enumerate() {
        println!(
            "criterion {} {title}: {} ({})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        all &= o.pass;
    }
    if !all {
        std::process::exit(1);
    }
}
