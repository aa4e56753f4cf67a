//! Seeded property runners shared by the property suite and the acceptance report.
#![allow(dead_code)]

use std::collections::BTreeSet;

use bohrlab::extremal::{sample_class, sample_spec, FunctionClass, FunctionSpec, Sign};
use bohrlab::functionals::{d_lambda, lemma4_sides, parity_case, real_constant, series_stats, ParityCase};
use bohrlab::weights::{MonomialTable, Parity, WeightSequence};
use bohrlab::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const TRIALS: u32 = 1000;

fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases: TRIALS,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

fn fail(e: Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn table_strategy(max_len: usize) -> impl Strategy<Value = MonomialTable> {
    (0u32..4, prop::collection::vec((0.0f64..2.0, 1u32..4), 2..max_len)).prop_map(|(start, steps)| {
        let mut degree = start;
        let mut entries = vec![(1.0, start)];
        for (c, step) in steps {
            degree += step;
            entries.push((c, degree));
        }
        MonomialTable::new(entries).unwrap()
    })
}

pub fn weights_strategy() -> impl Strategy<Value = WeightSequence> {
    prop_oneof![
        Just(WeightSequence::Geometric),
        Just(WeightSequence::Harmonic),
        Just(WeightSequence::EvenOnly),
        Just(WeightSequence::OddOnly),
        (1usize..5).prop_map(|k| WeightSequence::lacunary(k).unwrap()),
        Just(WeightSequence::plain_monomial()),
        Just(WeightSequence::harmonic_monomial()),
        table_strategy(40).prop_map(WeightSequence::Monomial),
    ]
}

/// Schwarz-Pick for the disk class and `|a_n| ≤ 2(1 − a_0)` for the half-plane class.
pub fn coefficient_bounds() -> Result<(), String> {
    report(runner(11).run(&(any::<u64>(), 1usize..=8, any::<bool>()), |(seed, deg, disk)| {
        if disk {
            let f = sample_class(FunctionClass::B, seed, deg).map_err(fail)?;
            let a0 = f.constant().norm();
            ensure!(a0 < 1.0, "|a0| = {a0}");
            for n in 1..=f.order() {
                let an = f.coeff(n).norm();
                ensure!(an <= 1.0 - a0 * a0 + 1e-12, "seed {seed}: |a_{n}| = {an}, a0 = {a0}");
            }
        } else {
            let f = sample_class(FunctionClass::P, seed, deg).map_err(fail)?;
            let a0 = real_constant(&f).map_err(fail)?;
            for n in 1..=f.order() {
                let an = f.coeff(n).norm();
                ensure!(an <= 2.0 * (1.0 - a0) + 1e-12, "seed {seed}: |a_{n}| = {an}, a0 = {a0}");
            }
        }
        Ok(())
    }))
}

/// `Φ_N − Φ_{N+1} = ζ_N`, with `Φ_N` nonincreasing in `N` and nondecreasing in `r`.
pub fn phi_telescoping() -> Result<(), String> {
    let strategy = (weights_strategy(), 0usize..30, 0.0f64..0.95, 0.0f64..0.95);
    report(runner(12).run(&strategy, |(w, n, r1, r2)| {
        let n = w.table_len().map_or(n, |len| n.min(len - 2));
        let here = w.phi(n, r1).map_err(fail)?;
        let next = w.phi(n + 1, r1).map_err(fail)?;
        let term = w.zeta(n, r1).map_err(fail)?;
        let tol = 1e-14 * here.max(1.0);
        ensure!((here - next - term).abs() <= tol, "{w} N={n} r={r1}: {here} − {next} ≠ {term}");
        ensure!(next <= here + tol, "{w}: Φ increased in N");
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let (a, b) = (w.phi(n, lo).map_err(fail)?, w.phi(n, hi).map_err(fail)?);
        ensure!(a <= b + 1e-14 * b.max(1.0), "{w} N={n}: Φ({lo}) = {a} > Φ({hi}) = {b}");
        Ok(())
    }))
}

/// `D_λ(r)` is nondecreasing in `r` and in `λ`; so is the majorant sum.
pub fn monotonicity() -> Result<(), String> {
    let strategy = (any::<u64>(), 1usize..=8, 0.0f64..0.9, 0.0f64..0.9, 0.0f64..2.0, 0.0f64..2.0);
    report(runner(13).run(&strategy, |(seed, deg, r1, r2, l1, l2)| {
        let (r_lo, r_hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let (l_lo, l_hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let f = sample_spec(FunctionClass::P, seed, deg)
            .and_then(|s| s.realize_for_radius(r_hi))
            .map_err(fail)?;
        let lo = d_lambda(&f, l_lo, r_lo).map_err(fail)?;
        let hi = d_lambda(&f, l_lo, r_hi).map_err(fail)?;
        ensure!(lo.value <= hi.value + 1e-12 * hi.value.max(1.0), "D not monotone in r: {lo:?} {hi:?}");
        let hi_l = d_lambda(&f, l_hi, r_lo).map_err(fail)?;
        ensure!(lo.value <= hi_l.value + 1e-12 * hi_l.value.max(1.0), "D not monotone in λ");
        let g = sample_class(FunctionClass::B, seed, deg).map_err(fail)?;
        let (m_lo, m_hi) = (
            series_stats(&g, r_lo).map_err(fail)?.m_f,
            series_stats(&g, r_hi).map_err(fail)?.m_f,
        );
        ensure!(m_lo <= m_hi + 1e-12, "majorant not monotone: {m_lo} > {m_hi}");
        Ok(())
    }))
}

fn expected_case(t: &MonomialTable, p: usize, m: usize) -> Option<ParityCase> {
    let deg = |n: usize| t.degree(n).unwrap() as u64;
    let parities = |start: usize| -> BTreeSet<u64> {
        (start..t.len()).step_by(2).map(|n| (deg(m) + p as u64 * deg(n)) % 2).collect()
    };
    let (odd, even) = (parities(1), parities(2));
    if odd.len() != 1 || even.len() != 1 {
        return None;
    }
    let as_parity = |s: &BTreeSet<u64>| Parity::of(*s.iter().next().unwrap());
    let (o, e) = (as_parity(&odd), as_parity(&even));
    Some(if o == e { ParityCase::Uniform { parity: o } } else { ParityCase::Alternating { odd_sign: o } })
}

/// The reported parity case matches a brute-force classification of the
/// product degrees, and the plain table follows the rule fixed by `p` and `m`.
pub fn parity_dispatch() -> Result<(), String> {
    let strategy = (table_strategy(40), 1usize..7, 0.0f64..1.0, 0usize..10);
    report(runner(14).run(&strategy, |(table, p, m_frac, m_plain)| {
        let m = ((table.len() as f64 * m_frac) as usize).min(table.len() - 1);
        let got = parity_case(&WeightSequence::Monomial(table.clone()), p, m);
        match (expected_case(&table, p, m), got) {
            (Some(want), Ok(have)) => ensure!(want == have, "p={p} m={m}: {want:?} vs {have:?}"),
            (None, Err(Error::ParityInconsistent(_))) => {}
            (want, have) => ensure!(false, "p={p} m={m}: expected {want:?}, got {have:?}"),
        }
        let m = m_plain % (p + 1);
        let plain = parity_case(&WeightSequence::plain_monomial(), p, m).map_err(fail)?;
        let want = if p % 2 == 0 {
            ParityCase::Uniform { parity: Parity::of(m as u64) }
        } else {
            ParityCase::Alternating { odd_sign: Parity::of(m as u64 + 1) }
        };
        ensure!(plain == want, "plain p={p} m={m}: {plain:?}");
        Ok(())
    }))
}

/// The even and odd split inequalities add up to the combined one, shifted by
/// `|b_0|ζ_0 + |b_0|²·Σ_{k≥0} ζ_{1+2k}` on both sides.
pub fn split_additivity() -> Result<(), String> {
    let weights = prop_oneof![
        Just(WeightSequence::Geometric),
        Just(WeightSequence::Harmonic),
        (1usize..4).prop_map(|k| WeightSequence::lacunary(k).unwrap()),
        Just(WeightSequence::plain_monomial()),
    ];
    let strategy = (any::<u64>(), 1usize..=8, 1usize..4, 0usize..4, 0.05f64..0.9, weights);
    report(runner(15).run(&strategy, |(seed, deg, p, m, r, w)| {
        let m = m.min(p);
        let inner = sample_spec(FunctionClass::B, seed, deg).map_err(fail)?;
        let f = FunctionSpec::lacunary(inner, p, m)
            .and_then(|s| s.realize_for_radius(r))
            .map_err(fail)?;
        let sides = lemma4_sides(&f, &w, p, m, r).map_err(fail)?;
        let s = r.powi(p as i32);
        let b0 = f.coeff(m).norm();
        let shift = b0 * w.zeta(0, s).map_err(fail)? + b0 * b0 * w.parity_tail(1, s).map_err(fail)?;
        let lhs_gap = sides.lhs41 + sides.lhs42 - shift - sides.lhs44;
        let rhs_gap = sides.rhs41 + sides.rhs42 - shift - sides.rhs44;
        let scale = 1.0 + sides.lhs44.abs() + sides.rhs44.abs();
        ensure!(lhs_gap.abs() <= 1e-12 * scale, "lhs gap {lhs_gap} ({seed}, p={p}, m={m}, r={r}, {w})");
        ensure!(rhs_gap.abs() <= 1e-12 * scale, "rhs gap {rhs_gap} ({seed}, p={p}, m={m}, r={r}, {w})");
        Ok(())
    }))
}

/// Realized extremal series agree with their closed forms inside the tail budget.
pub fn extremal_closed_forms() -> Result<(), String> {
    let family = (0usize..4, 1usize..4, 0usize..4, any::<bool>());
    let strategy = (0.0f64..0.99, 0.0f64..0.95, 0.0f64..std::f64::consts::TAU, family);
    report(runner(16).run(&strategy, |(a, r, theta, (kind, p, m, plus))| {
        let m = m.min(p);
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let spec = match kind {
            0 => FunctionSpec::phi(a),
            1 => FunctionSpec::psi(a),
            2 => FunctionSpec::lacunary_mobius(a, p, m, sign),
            _ => Ok(FunctionSpec::monomial(p + m)),
        }
        .map_err(fail)?;
        let f = spec.realize_for_radius(r).map_err(fail)?;
        let z = Complex64::from_polar(r, theta);
        let got = f.eval(z).map_err(fail)?;
        let want = spec.closed_form(z);
        let budget = f.tail_error(r).map_err(fail)?;
        let err = (got - want).norm();
        ensure!(err <= budget + 1e-12 * (1.0 + want.norm()), "{spec} at {z}: error {err}, budget {budget}");
        Ok(())
    }))
}

/// `z^m g(z^p)` recovers `g` exactly and stays inside its class on circles.
pub fn lacunary_round_trip() -> Result<(), String> {
    let strategy = (any::<u64>(), 1usize..=8, 1usize..5, 0usize..5, 0.0f64..0.95);
    report(runner(17).run(&strategy, |(seed, deg, p, m, r)| {
        let g = sample_class(FunctionClass::B, seed, deg).map_err(fail)?;
        let f = g.compose_lacunary(p, m).map_err(fail)?;
        ensure!(f.is_lacunary(p, m), "support lost");
        let back = f.lacunary_part(p, m).map_err(fail)?;
        ensure!(back.coeffs() == g.coeffs(), "coefficients changed");
        for j in 0..16 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 16.0);
            let lhs = f.eval(z).map_err(fail)?;
            let rhs = z.powu(m as u32) * g.eval(z.powu(p as u32)).map_err(fail)?;
            ensure!((lhs - rhs).norm() <= 1e-12, "value mismatch at {z}");
            ensure!(lhs.norm() < 1.0 + 1e-12, "left the disk at {z}: {lhs}");
        }
        Ok(())
    }))
}

/// Half-plane samples keep `Re f < 1`; the majorant sum dominates `|f|`.
pub fn class_membership() -> Result<(), String> {
    let strategy = (any::<u64>(), 1usize..=8, 0.0f64..0.95);
    report(runner(18).run(&strategy, |(seed, deg, r)| {
        let f = sample_class(FunctionClass::P, seed, deg).map_err(fail)?;
        let stats = series_stats(&f, r).map_err(fail)?;
        let budget = stats.tail_budget;
        for j in 0..32 {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 32.0);
            let w = f.eval(z).map_err(fail)?;
            ensure!(w.re < 1.0 + budget + 1e-12, "Re f = {} at {z}", w.re);
            ensure!(w.norm() <= stats.m_f + budget + 1e-12, "|f| above majorant at {z}");
        }
        Ok(())
    }))
}

/// Every runner, in a fixed order, for reporting.
pub fn all() -> Vec<(&'static str, fn() -> Result<(), String>)> {
    vec![
        ("coefficient bounds", coefficient_bounds),
        ("tail telescoping", phi_telescoping),
        ("monotonicity", monotonicity),
        ("parity dispatch", parity_dispatch),
        ("split additivity", split_additivity),
        ("extremal closed forms", extremal_closed_forms),
        ("lacunary round trip", lacunary_round_trip),
        ("class membership", class_membership),
    ]
}
