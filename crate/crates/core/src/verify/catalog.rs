//! Per-theorem definitions: class, shape, radius rule and evaluator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{FunctionClass, FunctionSpec};
use crate::functionals::{
    alt_refined, alternating_modulus, bohr_power, circle_max, d_lambda, lemma2_lhs, lemma4_sides,
    lemma_g_sides, leading_d_star, real_constant, refinement_g, rogosinski_e, series_stats,
    theorem6_lhs, weighted_sum, Bounded, ParityCase, Theorem6Variant,
};
use crate::radii::{self, theorem2_query, RadiusId, RadiusParams, RadiusQuery};
use crate::series::TruncatedSeries;
use crate::weights::WeightSequence;

use super::{geometric, Eval, ALL_R_LIMIT};

/// Parameters shared by the theorem evaluators. Each theorem reads only the
/// fields it needs; `p` doubles as the lacunary step for lacunary theorems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub weights: WeightSequence,
    pub p: f64,
    pub q: f64,
    pub m: usize,
    pub lambda: f64,
}

impl CheckConfig {
    pub fn new(weights: WeightSequence, p: f64) -> Self {
        Self { weights, p, q: 1.0, m: 0, lambda: 0.0 }
    }

    pub fn q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }

    pub fn m(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    /// `(p, m)` as lacunary shape parameters.
    pub fn lacunary_pm(&self) -> Result<(usize, usize)> {
        let p = self.p;
        if !(p >= 1.0 && p.fract() == 0.0 && p <= 1e6) {
            return Err(Error::InvalidParameter(format!("lacunary step p = {p} must be a positive integer")));
        }
        Ok((p as usize, self.m))
    }

    fn radius_params(&self) -> RadiusParams {
        RadiusParams {
            p: Some(self.p),
            q: Some(self.q),
            m: Some(self.m),
            lambda: Some(self.lambda),
            weights: Some(self.weights.clone()),
            ..Default::default()
        }
    }
}

/// Which functions a theorem speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    General,
    /// `f(z) = z^m g(z^p)` with `(p, m)` from the config.
    Lacunary,
    /// General functions, with the `k = 3` case restricted to `g(z³)`.
    KLacunary,
}

/// Evaluation context for one (function, radius) point.
pub struct Ctx<'a> {
    pub f: &'a TruncatedSeries,
    pub spec: &'a FunctionSpec,
    pub r: f64,
    pub theta_samples: usize,
    pub config: &'a CheckConfig,
}

pub type RadiusFn = fn(&CheckConfig, f64) -> Result<f64>;
pub type EvalFn = fn(&Ctx) -> Result<Eval>;

#[derive(Clone)]
pub struct TheoremDef {
    pub id: &'static str,
    pub summary: &'static str,
    pub class: FunctionClass,
    pub shape: Shape,
    /// Lower bound on `a_0` and whether it is included.
    pub a0_floor: Option<(f64, bool)>,
    /// Whether the radius depends on `a_0`.
    pub per_a0: bool,
    pub radius: RadiusFn,
    pub eval: EvalFn,
    pub default_config: fn() -> CheckConfig,
    pub note: Option<&'static str>,
}

impl std::fmt::Debug for TheoremDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TheoremDef")
            .field("id", &self.id)
            .field("class", &self.class)
            .field("shape", &self.shape)
            .field("per_a0", &self.per_a0)
            .finish()
    }
}

fn solve(id: RadiusId, params: RadiusParams) -> Result<f64> {
    Ok(radii::radius(&RadiusQuery::new(id, params), radii::DEFAULT_TOL)?.value)
}

fn solve_cfg(id: RadiusId, c: &CheckConfig) -> Result<f64> {
    solve(id, c.radius_params())
}

fn with_a0(c: &CheckConfig, a0: f64) -> RadiusParams {
    RadiusParams { a0: Some(a0), ..c.radius_params() }
}

fn from_bounded(b: Bounded, rhs: f64) -> Eval {
    Eval::new(b.value, rhs, b.budget)
}

fn zeta0(c: &Ctx) -> Result<f64> {
    c.config.weights.zeta(0, c.r)
}

/// `max_θ |f(re^{iθ}) − a_0|^2` with its budget and angle.
fn square_deviation(c: &Ctx) -> Result<(Bounded, f64)> {
    let a0 = c.f.constant();
    let (max_abs, theta) = circle_max(c.f, c.r, c.theta_samples, |v| (v - a0).norm());
    let err = c.f.tail_error(c.r)?;
    let value = max_abs * max_abs;
    Ok((Bounded::new(value, (max_abs + err).powi(2) - value), theta))
}

/// `r^m [Σ_{n≥n0} |b_n| s^n + (1/(1+|b_0|) + s/(1−s)) Σ_{n≥1} |b_n|² s^{2n}]`
/// with `f(z) = z^m g(z^p)`, `g = Σ b_n z^n` and `s = r^p`.
fn lacunary_refined(f: &TruncatedSeries, p: usize, m: usize, r: f64, with_constant: bool) -> Result<Bounded> {
    let g = f.lacunary_part(p, m)?;
    let s = r.powi(p as i32);
    let b0 = g.constant().norm();
    let start = if with_constant { 0 } else { 1 };
    let mut linear = 0.0;
    let mut squares = 0.0;
    let mut sn = 1.0;
    for (n, b) in g.coeffs().iter().enumerate() {
        if n >= start {
            linear += b.norm() * sn;
        }
        if n >= 1 {
            squares += b.norm_sqr() * sn * sn;
        }
        sn *= s;
    }
    let factor = 1.0 / (1.0 + b0) + s / (1.0 - s);
    let rm = r.powi(m as i32);
    Ok(Bounded::new(
        rm * (linear + factor * squares),
        rm * (g.tail_error(s)? + factor * g.square_tail(s)?),
    ))
}

fn theorem_a(c: &Ctx) -> Result<Eval> {
    let s = series_stats(c.f, c.r)?;
    Ok(Eval::new(s.m_f, 1.0, s.tail_budget))
}

fn theorem_b_area(c: &Ctx) -> Result<Eval> {
    let s = series_stats(c.f, c.r)?;
    let k = 16.0 / 9.0;
    Ok(Eval::new(s.m_f + k * s.area_ratio, 1.0, s.tail_budget + k * s.area_budget))
}

fn theorem_b_sq(c: &Ctx) -> Result<Eval> {
    let s = series_stats(c.f, c.r)?;
    let (dev, theta) = square_deviation(c)?;
    Ok(Eval::new(s.m_f + dev.value, 1.0, s.tail_budget + dev.budget).at(theta))
}

fn theorem_c(c: &Ctx) -> Result<Eval> {
    let w = &c.config.weights;
    let z0 = zeta0(c)?;
    let b1 = weighted_sum(c.f, w, 1, c.r)?;
    let head = c.f.constant().norm().powf(c.config.p) * z0;
    Ok(Eval::new(head + b1.value, z0, b1.budget))
}

fn theorem_e(c: &Ctx) -> Result<Eval> {
    Ok(from_bounded(alternating_modulus(c.f, c.r, c.theta_samples)?, 1.0))
}

fn lemma_g(c: &Ctx) -> Result<Eval> {
    let s = lemma_g_sides(c.f, &c.config.weights, c.config.p, c.r)?;
    Ok(Eval::new(s.lhs, s.rhs, s.budget))
}

/// `Σ_{k|n} |a_n| r^n + (1/(1+|a_0|) + r^k/(1−r^k)) ‖f_0‖_r²` against
/// `|a_0| + (1 − |a_0|²) r^k/(1 − r^k)`.
pub(crate) fn k_refined(f: &TruncatedSeries, k: usize, r: f64) -> Result<Eval> {
    let a0 = f.constant().norm();
    let rk = r.powi(k as i32);
    let mut linear = 0.0;
    let mut squares = 0.0;
    let mut rn = 1.0;
    for (n, a) in f.coeffs().iter().enumerate() {
        if n % k == 0 {
            linear += a.norm() * rn;
        }
        if n >= 1 {
            squares += a.norm_sqr() * rn * rn;
        }
        rn *= r;
    }
    let factor = 1.0 / (1.0 + a0) + rk / (1.0 - rk);
    Ok(Eval::new(
        linear + factor * squares,
        a0 + (1.0 - a0 * a0) * rk / (1.0 - rk),
        f.tail_error(r)? + factor * f.square_tail(r)?,
    ))
}

/// Worst `k`-lacunary refined sum for `k ∈ {1, 2}`, plus `k = 3` when `f`
/// is a function of `z³`.
fn remark2_i(c: &Ctx) -> Result<Eval> {
    let mut worst = k_refined(c.f, 1, c.r)?.worst(k_refined(c.f, 2, c.r)?);
    if c.f.is_lacunary(3, 0) {
        worst = worst.worst(k_refined(c.f, 3, c.r)?);
    }
    Ok(worst)
}

fn remark2_ii(c: &Ctx) -> Result<Eval> {
    let s = series_stats(c.f, c.r)?;
    let odd: f64 = c
        .f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .step_by(2)
        .map(|(n, a)| a.norm() * c.r.powi(n as i32))
        .sum();
    let factor = c.r / (1.0 - c.r * c.r);
    Ok(Eval::new(
        odd,
        factor * (1.0 - s.norm_sq),
        s.tail_budget + factor * s.square_budget,
    ))
}

fn remark2_iii(c: &Ctx) -> Result<Eval> {
    let s = series_stats(c.f, c.r)?;
    let a0 = c.f.constant().norm();
    let t = c.r / (1.0 - c.r);
    let factor = 1.0 / (1.0 + a0) + t;
    Ok(Eval::new(
        s.m_f0 + factor * s.norm0_sq,
        (1.0 - a0 * a0) * t,
        s.tail_budget + factor * s.square_budget,
    ))
}

fn theorem_d(c: &Ctx) -> Result<Eval> {
    Ok(from_bounded(d_lambda(c.f, 0.0, c.r)?, 1.0))
}

fn theorem4(c: &Ctx) -> Result<Eval> {
    Ok(from_bounded(d_lambda(c.f, 8.0 / 9.0, c.r)?, 1.0))
}

fn lemma1(c: &Ctx) -> Result<Eval> {
    let a0 = real_constant(c.f)?;
    let s = series_stats(c.f, c.r)?;
    let r2 = c.r * c.r;
    let rhs = 4.0 * (1.0 - a0).powi(2) * r2 / (1.0 - r2).powi(2);
    Ok(Eval::new(s.area_ratio, rhs, s.area_budget))
}

fn bohr_power_eval(c: &Ctx) -> Result<Eval> {
    Ok(from_bounded(bohr_power(c.f, &c.config.weights, c.config.p, c.r)?, zeta0(c)?))
}

fn corollary1(c: &Ctx) -> Result<Eval> {
    let w = &c.config.weights;
    let b = bohr_power(c.f, w, 1.0, c.r)?;
    let g = refinement_g(c.f, w, c.r)?;
    Ok(Eval::new(b.value + g.value, zeta0(c)?, b.budget + g.budget))
}

fn rogosinski(c: &Ctx) -> Result<Eval> {
    let cfg = c.config;
    let e = rogosinski_e(c.f, &cfg.weights, cfg.p, cfg.q, cfg.m, c.r, c.theta_samples)?;
    Ok(from_bounded(e, zeta0(c)?))
}

fn theorem3(c: &Ctx) -> Result<Eval> {
    let cfg = c.config;
    let b = bohr_power(c.f, &cfg.weights, 2.0, c.r)?;
    let s = series_stats(c.f, c.r)?;
    Ok(Eval::new(
        b.value + cfg.lambda * s.area_ratio,
        zeta0(c)?,
        b.budget + cfg.lambda * s.area_budget,
    ))
}

fn corollary3(c: &Ctx) -> Result<Eval> {
    let a0 = real_constant(c.f)?;
    let s = series_stats(c.f, c.r)?;
    let lambda = 16.0 * a0 / (9.0 * (1.0 - a0));
    Ok(Eval::new(
        a0 * a0 + s.m_f0 + lambda * s.area_ratio,
        1.0,
        s.tail_budget + lambda * s.area_budget,
    ))
}

fn lacunary_cfg(c: &Ctx) -> Result<(usize, usize)> {
    c.config.lacunary_pm()
}

fn lemma2(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    Ok(from_bounded(lemma2_lhs(c.f, p, m, c.r, c.theta_samples)?, 1.0))
}

fn lemma4(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    let s = lemma4_sides(c.f, &c.config.weights, p, m, c.r)?;
    let first = Eval::new(s.lhs41, s.rhs41, s.budget);
    Ok(first.worst(Eval::new(s.lhs42, s.rhs42, s.budget)))
}

fn corollary4(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    let s = lemma4_sides(c.f, &c.config.weights, p, m, c.r)?;
    Ok(Eval::new(s.lhs44, s.rhs44, s.budget))
}

fn theorem5_i(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    let alt = alt_refined(c.f, &c.config.weights, p, m, c.r)?;
    if !matches!(alt.case, ParityCase::Alternating { .. }) {
        return Err(Error::ParityInconsistent("C* needs alternating degree parity".into()));
    }
    Ok(Eval::new(alt.c_star.abs(), 1.0, alt.budget))
}

fn theorem5_ii(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    let alt = alt_refined(c.f, &c.config.weights, p, m, c.r)?;
    let d = alt
        .d_star
        .ok_or_else(|| Error::ParityInconsistent("D* needs uniform degree parity".into()))?;
    Ok(Eval::new(d.abs(), 1.0, alt.budget))
}

fn corollary5(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    Ok(from_bounded(leading_d_star(c.f, &c.config.weights, p, m, c.r)?, 1.0))
}

fn example1_1(c: &Ctx) -> Result<Eval> {
    let s = series_stats(c.f, c.r)?;
    let factor = c.r / (1.0 - c.r * c.r);
    Ok(Eval::new(
        (s.a_f0 - factor * s.norm_sq).abs(),
        1.0,
        s.tail_budget + factor * s.square_budget,
    ))
}

fn example1_2(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    Ok(from_bounded(lacunary_refined(c.f, p, m, c.r, false)?, 1.0))
}

fn example2(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    Ok(from_bounded(lacunary_refined(c.f, p, m, c.r, true)?, 1.0))
}

fn theorem6(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    Ok(from_bounded(theorem6_lhs(c.f, p, m, c.r, c.theta_samples, Theorem6Variant::AbsF)?, 1.0))
}

fn corollary7(c: &Ctx) -> Result<Eval> {
    let (p, m) = lacunary_cfg(c)?;
    Ok(from_bounded(theorem6_lhs(c.f, p, m, c.r, c.theta_samples, Theorem6Variant::FixedTerm)?, 1.0))
}

fn all_r(_: &CheckConfig, _: f64) -> Result<f64> {
    Ok(ALL_R_LIMIT)
}

fn third(_: &CheckConfig, _: f64) -> Result<f64> {
    Ok(1.0 / 3.0)
}

fn cfg_geometric() -> CheckConfig {
    CheckConfig::new(geometric(), 1.0)
}

fn cfg_harmonic_p1() -> CheckConfig {
    CheckConfig::new(WeightSequence::Harmonic, 1.0)
}

fn cfg_lemma_g() -> CheckConfig {
    CheckConfig::new(WeightSequence::Harmonic, 1.5)
}

fn cfg_theorem1_i() -> CheckConfig {
    CheckConfig::new(WeightSequence::Harmonic, 0.5)
}

fn cfg_theorem1_ii() -> CheckConfig {
    CheckConfig::new(geometric(), 2.0)
}

fn cfg_theorem2_i() -> CheckConfig {
    CheckConfig::new(WeightSequence::Harmonic, 0.5).q(2.0).m(2)
}

fn cfg_theorem2_ii() -> CheckConfig {
    CheckConfig::new(geometric(), 2.0).q(2.0).m(1)
}

fn cfg_corollary2() -> CheckConfig {
    CheckConfig::new(geometric(), 1.0).q(2.0).m(1)
}

fn cfg_theorem3() -> CheckConfig {
    CheckConfig::new(geometric(), 2.0).lambda(0.5)
}

fn cfg_lemma2() -> CheckConfig {
    CheckConfig::new(geometric(), 2.0).m(1)
}

fn cfg_lemma4() -> CheckConfig {
    CheckConfig::new(WeightSequence::Harmonic, 2.0).m(1)
}

fn cfg_plain(p: f64, m: usize) -> CheckConfig {
    CheckConfig::new(WeightSequence::plain_monomial(), p).m(m)
}

fn cfg_theorem5_i() -> CheckConfig {
    cfg_plain(1.0, 0)
}

fn cfg_theorem5_ii() -> CheckConfig {
    cfg_plain(2.0, 0)
}

fn cfg_corollary5() -> CheckConfig {
    cfg_plain(2.0, 1)
}

fn cfg_example1_3() -> CheckConfig {
    CheckConfig::new(WeightSequence::harmonic_monomial(), 1.0)
}

fn cfg_example2_ii() -> CheckConfig {
    cfg_plain(2.0, 1)
}

fn cfg_theorem6() -> CheckConfig {
    CheckConfig::new(geometric(), 3.0).m(2)
}

fn cfg_p1m0() -> CheckConfig {
    CheckConfig::new(geometric(), 1.0)
}

fn plain_params(c: &CheckConfig) -> RadiusParams {
    c.radius_params()
}

macro_rules! def {
    ($id:expr, $summary:expr, $class:ident, $shape:ident, $radius:expr, $eval:expr, $cfg:expr) => {
        TheoremDef {
            id: $id,
            summary: $summary,
            class: FunctionClass::$class,
            shape: Shape::$shape,
            a0_floor: None,
            per_a0: false,
            radius: $radius,
            eval: $eval,
            default_config: $cfg,
            note: None,
        }
    };
}

fn per_a0(mut d: TheoremDef) -> TheoremDef {
    d.per_a0 = true;
    d
}

fn floor(mut d: TheoremDef, lo: f64, closed: bool) -> TheoremDef {
    d.a0_floor = Some((lo, closed));
    d
}

fn note(mut d: TheoremDef, text: &'static str) -> TheoremDef {
    d.note = Some(text);
    d
}

fn catalog() -> Vec<TheoremDef> {
    vec![
        def!("theoremA", "majorant series at most 1", B, General, third, theorem_a, cfg_geometric),
        def!("theoremB_area", "majorant plus 16/9 of the area ratio", B, General, third, theorem_b_area, cfg_geometric),
        def!("theoremB_sq", "majorant plus squared deviation", B, General, third, theorem_b_sq, cfg_geometric),
        def!(
            "theoremC",
            "weighted Bohr sum with |a0|^p head",
            B,
            General,
            |c, _| solve_cfg(RadiusId::TheoremCR, c),
            theorem_c,
            cfg_harmonic_p1
        ),
        def!(
            "theoremE",
            "modulus plus alternating series",
            B,
            General,
            |_, _| solve(RadiusId::TheoremERadius, RadiusParams::default()),
            theorem_e,
            cfg_geometric
        ),
        def!("lemmaG", "refined weighted sum, all r", B, General, all_r, lemma_g, cfg_lemma_g),
        def!("remark2_i", "k-lacunary refined sum, all r", B, KLacunary, all_r, remark2_i, cfg_geometric),
        def!("remark2_ii", "odd part against the norm, all r", B, General, all_r, remark2_ii, cfg_geometric),
        def!("remark2_iii", "refined majorant of f0, all r", B, General, all_r, remark2_iii, cfg_geometric),
        def!(
            "corollary6",
            "modulus plus refined alternating series",
            B,
            General,
            |_, _| solve(RadiusId::Lemma2Rpm, RadiusParams { p: Some(1.0), m: Some(0), ..Default::default() }),
            theorem6,
            cfg_p1m0
        ),
        per_a0(def!(
            "theoremD",
            "refined majorant for Re f < 1",
            P,
            General,
            |_, a0| solve(RadiusId::TheoremDR0, RadiusParams { a0: Some(a0), ..Default::default() }),
            theorem_d,
            cfg_geometric
        )),
        def!("lemma1", "area ratio bound, all r", P, General, all_r, lemma1, cfg_geometric),
        def!(
            "theorem1_i",
            "weighted Bohr sum, p in (0, 1]",
            P,
            General,
            |c, _| solve_cfg(RadiusId::Theorem1R1, c),
            bohr_power_eval,
            cfg_theorem1_i
        ),
        per_a0(def!(
            "theorem1_ii",
            "weighted Bohr sum, integer p > 1",
            P,
            General,
            |c, a0| solve(RadiusId::Theorem1Rp, with_a0(c, a0)),
            bohr_power_eval,
            cfg_theorem1_ii
        )),
        def!(
            "corollary1",
            "weighted Bohr sum plus refinement",
            P,
            General,
            |c, _| solve_cfg(RadiusId::Corollary1R1, c),
            corollary1,
            cfg_harmonic_p1
        ),
        def!(
            "theorem2_i",
            "Bohr-Rogosinski sum, p in (0, 1]",
            P,
            General,
            |c, _| solve(RadiusId::Theorem2Rpmq, c.radius_params()),
            rogosinski,
            cfg_theorem2_i
        ),
        per_a0(def!(
            "theorem2_ii",
            "Bohr-Rogosinski sum, p = 2",
            P,
            General,
            |c, a0| {
                let q = theorem2_query(c.weights.clone(), 2.0, c.q, c.m, Some(a0));
                Ok(radii::radius(&q, radii::DEFAULT_TOL)?.value)
            },
            rogosinski,
            cfg_theorem2_ii
        )),
        def!(
            "corollary2",
            "a0 + majorant + squared deviation",
            P,
            General,
            |_, _| solve(RadiusId::Corollary2Radius, RadiusParams::default()),
            rogosinski,
            cfg_corollary2
        ),
        floor(
            def!("corollary2b", "a0^2 + majorant + squared deviation", P, General, third, rogosinski, || {
                cfg_corollary2().into_p(2.0)
            }),
            0.5,
            true,
        ),
        per_a0(def!(
            "theorem3",
            "a0^2 weighted sum plus area term",
            P,
            General,
            |c, a0| solve(RadiusId::Theorem3Rlambda2, with_a0(c, a0)),
            theorem3,
            cfg_theorem3
        )),
        floor(
            def!("corollary3", "a0^2 + majorant + scaled area", P, General, third, corollary3, cfg_geometric),
            0.0,
            false,
        ),
        per_a0(def!(
            "theorem4",
            "refined majorant plus 8/9 of the area ratio",
            P,
            General,
            |_, a0| solve(RadiusId::Theorem4Rho, RadiusParams { a0: Some(a0), ..Default::default() }),
            theorem4,
            cfg_geometric
        )),
        def!(
            "lemma2",
            "lacunary modulus plus A(r)",
            B,
            Lacunary,
            |c, _| solve_cfg(RadiusId::Lemma2Rpm, c),
            lemma2,
            cfg_lemma2
        ),
        def!("lemma4", "even and odd split bounds, all r", B, Lacunary, all_r, lemma4, cfg_lemma4),
        def!("corollary4", "summed split bound, all r", B, Lacunary, all_r, corollary4, cfg_lemma4),
        def!(
            "theorem5_I",
            "|C*| at most 1",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Theorem5Rstar, plain_params(c)),
            theorem5_i,
            cfg_theorem5_i
        ),
        def!(
            "theorem5_II",
            "|D*| at most 1",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Theorem5RstarII, plain_params(c)),
            theorem5_ii,
            cfg_theorem5_ii
        ),
        def!(
            "corollary5",
            "|D*| with the leading coefficient",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Corollary5Rtilde, plain_params(c)),
            corollary5,
            cfg_corollary5
        ),
        def!(
            "example1_1",
            "alternating series against the full norm",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Theorem5Rstar, plain_params(c)),
            example1_1,
            cfg_theorem5_i
        ),
        def!(
            "example1_2",
            "refined sum of a function of z^k",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Theorem5RstarII, plain_params(c)),
            example1_2,
            cfg_theorem5_ii
        ),
        def!(
            "example1_3",
            "|C*| with harmonic monomial weights",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Theorem5Rstar, plain_params(c)),
            theorem5_i,
            cfg_example1_3
        ),
        def!(
            "example2_i",
            "refined sum of an even function",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Corollary5Rtilde, plain_params(c)),
            example2,
            cfg_theorem5_ii
        ),
        def!(
            "example2_ii",
            "refined sum of an odd function",
            B,
            Lacunary,
            |c, _| solve(RadiusId::Corollary5Rtilde, plain_params(c)),
            example2,
            cfg_example2_ii
        ),
        note(
            def!(
                "theorem6",
                "modulus plus refined lacunary alternating series",
                B,
                Lacunary,
                |c, _| solve_cfg(RadiusId::Lemma2Rpm, c),
                theorem6,
                cfg_theorem6
            ),
            "optimality of this radius is unproven; probes above it are informational",
        ),
        def!(
            "corollary7",
            "fixed leading term plus refined alternating series",
            B,
            Lacunary,
            |c, _| solve_cfg(RadiusId::Corollary7Rpm, c),
            corollary7,
            cfg_p1m0
        ),
    ]
}

impl CheckConfig {
    fn into_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }
}

/// Every theorem id the harness knows, in catalog order.
pub fn theorem_ids() -> Vec<&'static str> {
    catalog().into_iter().map(|d| d.id).collect()
}

pub fn theorem(id: &str) -> Result<TheoremDef> {
    catalog()
        .into_iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::Parse(format!("unknown theorem id `{id}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_resolve() {
        let ids = theorem_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(ids.len() >= 30);
        for id in ids {
            let def = theorem(id).unwrap();
            let cfg = (def.default_config)();
            let r = (def.radius)(&cfg, 0.25).unwrap();
            assert!(r > 0.0 && r < 1.0, "{id}: {r}");
        }
    }

    #[test]
    fn fixed_radii() {
        let r = |id: &str| {
            let d = theorem(id).unwrap();
            (d.radius)(&(d.default_config)(), 0.0).unwrap()
        };
        assert!((r("corollary2") - (5f64.sqrt() - 2.0)).abs() < 1e-12);
        assert!((r("theoremE") - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((r("corollary6") - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((r("theorem5_I") - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert!((r("theorem5_II") - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((r("example2_i") - 1.0 / 3f64.sqrt()).abs() < 1e-10);
        assert!((r("example2_ii") - 0.731_348).abs() < 1e-6);
        assert!((r("corollary7") - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        // root of −log(1 − r²) = 2r
        let e13 = r("example1_3");
        assert!((-(1.0 - e13 * e13).ln() - 2.0 * e13).abs() < 1e-9);
    }
}
