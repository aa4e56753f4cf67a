//! Sharpness probes above each radius, equality cases, and the informational
//! radius search for the refined alternating inequality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{FunctionClass, FunctionSpec, Sign};
use crate::functionals::{
    bohr_power, lemma2_a, lemma4_sides, lemma_g_sides, real_constant, series_stats,
};
use crate::radii::theorem4_l;
use crate::series::TruncatedSeries;
use crate::weights::WeightSequence;

use super::catalog::{k_refined, theorem, CheckConfig, Ctx};
use super::{
    check_theorem, parallel_map, standard_corpus, CheckOptions, Eval, VerificationReport, Witness,
};

/// Minimal excess of a sharpness witness over the bound.
pub const WITNESS_EXCESS: f64 = 1e-6;
/// Slack allowed on top of the tail budget in equality cases.
pub const EQUALITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// The bound is exceeded just above the radius.
    Exceed,
    /// The inequality holds for every r and is attained by the family.
    Equality,
}

/// Extremal family used by a probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Phi,
    Psi,
    /// `φ_a(z^k)`.
    PhiPower(usize),
    /// `z^m (a ± z^p)/(1 ± a z^p)` with `(p, m)` from the config.
    Mobius(Sign),
    /// `z^{p+m}`.
    MonomialPm,
    /// `z^{2p+m}`.
    MonomialTwoPm,
}

impl Family {
    fn spec(self, a: f64, config: &CheckConfig) -> Result<FunctionSpec> {
        match self {
            Family::Phi => FunctionSpec::phi(a),
            Family::Psi => FunctionSpec::psi(a),
            Family::PhiPower(k) => FunctionSpec::lacunary(FunctionSpec::phi(a)?, k, 0),
            Family::Mobius(sign) => {
                let (p, m) = config.lacunary_pm()?;
                FunctionSpec::lacunary_mobius(a, p, m, sign)
            }
            Family::MonomialPm => {
                let (p, m) = config.lacunary_pm()?;
                Ok(FunctionSpec::monomial(p + m))
            }
            Family::MonomialTwoPm => {
                let (p, m) = config.lacunary_pm()?;
                Ok(FunctionSpec::monomial(2 * p + m))
            }
        }
    }

    fn parametrized(self) -> bool {
        !matches!(self, Family::MonomialPm | Family::MonomialTwoPm)
    }
}

/// One row of the probe table: which theorem, which family, which limit of `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCase {
    pub probe_id: &'static str,
    pub theorem_id: &'static str,
    pub kind: ProbeKind,
    pub family: Family,
    /// Config override; `None` uses the theorem default.
    pub config: Option<CheckConfig>,
    pub schedule: Vec<f64>,
    /// Limit the schedule approaches, for the report.
    pub limit: &'static str,
}

const A_TO_ONE: [f64; 5] = [0.9, 0.95, 0.99, 0.995, 0.999];
const A_TO_ZERO: [f64; 4] = [0.0, 0.001, 0.01, 0.05];
const A_SPREAD: [f64; 4] = [0.0, 0.25, 0.5, 0.75];
const EQUALITY_A: [f64; 4] = [0.0, 0.3, 0.6, 0.9];
const EQUALITY_R: [f64; 3] = [0.2, 0.5, 0.8];

fn fine_grid() -> Vec<f64> {
    (1..100).map(|i| i as f64 / 100.0).collect()
}

fn case(
    probe_id: &'static str,
    theorem_id: &'static str,
    kind: ProbeKind,
    family: Family,
    schedule: &[f64],
    limit: &'static str,
) -> ProbeCase {
    ProbeCase { probe_id, theorem_id, kind, family, config: None, schedule: schedule.to_vec(), limit }
}

fn with_config(mut c: ProbeCase, config: CheckConfig) -> ProbeCase {
    c.config = Some(config);
    c
}

/// The fixed extremal schedule per theorem.
pub fn probe_table() -> Vec<ProbeCase> {
    use Family::*;
    use ProbeKind::*;
    let mono = [0.0];
    vec![
        case("theoremA", "theoremA", Exceed, Phi, &A_TO_ONE, "a -> 1"),
        case("theoremB_area", "theoremB_area", Exceed, Phi, &A_TO_ONE, "a -> 1"),
        case("theoremB_sq", "theoremB_sq", Exceed, Phi, &A_TO_ONE, "a -> 1"),
        case("theoremC", "theoremC", Exceed, Phi, &A_TO_ONE, "a -> 1"),
        case("theoremD", "theoremD", Exceed, Psi, &A_SPREAD, "fixed a"),
        case("theorem1_i", "theorem1_i", Exceed, Psi, &A_TO_ONE, "a -> 1"),
        case("theorem1_ii", "theorem1_ii", Exceed, Psi, &A_SPREAD, "fixed a"),
        case("corollary1", "corollary1", Exceed, Psi, &A_TO_ZERO, "a -> 0"),
        with_config(
            case("theorem2_i_p1", "theorem2_i", Exceed, Psi, &A_TO_ZERO, "a -> 0"),
            CheckConfig::new(WeightSequence::Harmonic, 1.0).q(2.0).m(2),
        ),
        with_config(
            case("theorem2_i_q1", "theorem2_i", Exceed, Psi, &A_TO_ONE, "a -> 1"),
            CheckConfig::new(WeightSequence::Harmonic, 0.5).q(1.0).m(2),
        ),
        case("theorem2_ii", "theorem2_ii", Exceed, Psi, &A_SPREAD, "fixed a"),
        case("corollary2", "corollary2", Exceed, Psi, &A_TO_ZERO, "a -> 0"),
        case("corollary2b", "corollary2b", Exceed, Psi, &[0.5, 0.6, 0.75], "a = 1/2"),
        case("theorem3", "theorem3", Exceed, Psi, &A_SPREAD, "fixed a"),
        case("corollary3", "corollary3", Exceed, Psi, &[0.25, 0.5, 0.75], "fixed a"),
        case("theorem4", "theorem4", Exceed, Psi, &A_TO_ONE, "a -> 1"),
        with_config(
            case("lemma2", "lemma2", Exceed, Mobius(Sign::Plus), &[0.5, 0.7, 0.8, 0.9, 0.95, 0.99], "a -> 1"),
            CheckConfig::new(WeightSequence::Geometric, 2.0),
        ),
        case("theorem5_I", "theorem5_I", Exceed, MonomialPm, &mono, "f = z^(p+m)"),
        case("theorem5_II", "theorem5_II", Exceed, MonomialPm, &mono, "f = z^(p+m)"),
        case("corollary5", "corollary5", Exceed, Mobius(Sign::Minus), &fine_grid(), "a near 1/(2S)"),
        case("example1_1", "example1_1", Exceed, MonomialPm, &mono, "f = z"),
        case("example1_2", "example1_2", Exceed, MonomialPm, &mono, "f = z^k"),
        case("example1_3", "example1_3", Exceed, MonomialPm, &mono, "f = z"),
        case("example2_i", "example2_i", Exceed, Mobius(Sign::Minus), &fine_grid(), "a near 1/(2S)"),
        case("example2_ii", "example2_ii", Exceed, Mobius(Sign::Minus), &fine_grid(), "a near 1/(2S)"),
        case("corollary7", "corollary7", Exceed, MonomialTwoPm, &mono, "f = z^(2p+m)"),
        case("lemmaG", "lemmaG", Equality, Phi, &EQUALITY_A, "every a"),
        case("lemma1", "lemma1", Equality, Psi, &EQUALITY_A, "every a"),
        case("lemma4", "lemma4", Equality, Mobius(Sign::Minus), &EQUALITY_A, "every a"),
        case("corollary4", "corollary4", Equality, Mobius(Sign::Minus), &EQUALITY_A, "every a"),
        case("remark2_i", "remark2_i", Equality, PhiPower(2), &EQUALITY_A, "every a"),
        case("remark2_ii", "remark2_ii", Equality, Phi, &EQUALITY_A, "every a"),
        case("remark2_iii", "remark2_iii", Equality, Phi, &EQUALITY_A, "every a"),
    ]
}

/// Probe ids with a sharpness clause, in table order.
pub fn probe_ids() -> Vec<&'static str> {
    probe_table().into_iter().map(|c| c.probe_id).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub probe_id: String,
    pub theorem_id: String,
    pub kind: ProbeKind,
    pub family: Family,
    pub limit: String,
    pub config: CheckConfig,
    pub delta: f64,
    pub schedule: Vec<f64>,
    pub evaluated: usize,
    /// Largest `lhs − rhs − budget` seen (exceed probes) or largest
    /// `|lhs − rhs| − budget` (equality probes).
    pub best_excess: f64,
    pub witness: Option<Witness>,
    pub found: bool,
}

fn eval_at(theorem_id: &str, spec: &FunctionSpec, config: &CheckConfig, r: f64, theta_samples: usize) -> Result<(Eval, TruncatedSeries)> {
    let def = theorem(theorem_id)?;
    let f = spec.realize_for_radius(r)?;
    let ctx = Ctx { f: &f, spec, r, theta_samples, config };
    Ok(((def.eval)(&ctx)?, f))
}

fn witness(spec: &FunctionSpec, r: f64, e: &Eval) -> Witness {
    Witness {
        function: spec.label().to_string(),
        spec: spec.clone(),
        r,
        theta: e.theta,
        lhs: e.lhs,
        rhs: e.rhs,
        budget: e.budget,
    }
}

/// Runs one probe. Exceed probes evaluate at `radius + delta` along the
/// schedule and stop at the first witness; equality probes require
/// `|lhs − rhs| ≤ budget + 1e−9` on every scheduled `(a, r)` pair.
pub fn run_probe(case: &ProbeCase, delta: f64, theta_samples: usize) -> Result<SharpnessReport> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must be positive")));
    }
    let def = theorem(case.theorem_id)?;
    let config = case.config.clone().unwrap_or_else(|| (def.default_config)());
    let schedule: Vec<f64> = if case.family.parametrized() { case.schedule.clone() } else { vec![0.0] };
    let mut report = SharpnessReport {
        probe_id: case.probe_id.to_string(),
        theorem_id: case.theorem_id.to_string(),
        kind: case.kind,
        family: case.family,
        limit: case.limit.to_string(),
        config: config.clone(),
        delta,
        schedule: schedule.clone(),
        evaluated: 0,
        best_excess: f64::NEG_INFINITY,
        witness: None,
        found: false,
    };
    match case.kind {
        ProbeKind::Exceed => {
            for &a in &schedule {
                let spec = case.family.spec(a, &config)?;
                let probe = spec.realize_at(16, None)?;
                let a0 = match def.class {
                    FunctionClass::P => real_constant(&probe)?,
                    FunctionClass::B => probe.constant().norm(),
                };
                let r = (def.radius)(&config, a0)? + delta;
                if r >= 1.0 {
                    continue;
                }
                let (e, _) = eval_at(case.theorem_id, &spec, &config, r, theta_samples)?;
                report.evaluated += 1;
                let excess = e.violation();
                report.best_excess = report.best_excess.max(excess);
                if excess >= WITNESS_EXCESS {
                    report.witness = Some(witness(&spec, r, &e));
                    report.found = true;
                    break;
                }
            }
        }
        ProbeKind::Equality => {
            let mut all = true;
            for &a in &schedule {
                let spec = case.family.spec(a, &config)?;
                for &r in &EQUALITY_R {
                    let (e, _) = eval_at(case.theorem_id, &spec, &config, r, theta_samples)?;
                    report.evaluated += 1;
                    let gap = (e.lhs - e.rhs).abs() - e.budget;
                    if gap > report.best_excess {
                        report.best_excess = gap;
                        report.witness = Some(witness(&spec, r, &e));
                    }
                    all &= gap <= EQUALITY_SLACK;
                }
            }
            report.found = all && report.evaluated > 0;
        }
    }
    Ok(report)
}

/// Sharpness probe for `probe_id` with an optional schedule override.
pub fn sharpness_probe(
    probe_id: &str,
    delta: f64,
    schedule: Option<&[f64]>,
    theta_samples: usize,
) -> Result<SharpnessReport> {
    let mut case = probe_table()
        .into_iter()
        .find(|c| c.probe_id == probe_id)
        .ok_or_else(|| Error::Parse(format!("no sharpness probe for `{probe_id}`")))?;
    if let Some(s) = schedule {
        case.schedule = s.to_vec();
    }
    run_probe(&case, delta, theta_samples)
}

/// `D_λ(ρ) − 1` for `ψ_a` at `ρ = 1/(5 − 2a)` in closed form.
pub fn theorem4_excess(lambda: f64, a: f64) -> f64 {
    (1.0 - a) * theorem4_l(lambda, a)
        / (4.0 * (2.0 - a).powi(2) * (3.0 - a).powi(2) * (1.0 + a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityCase {
    LemmaGPhi,
    Lemma1Psi,
    Lemma2AClosedForm,
    Corollary4Mobius,
    Remark2iPhiZk,
    Eq35Psi,
}

impl EqualityCase {
    pub const ALL: [EqualityCase; 6] = [
        Self::LemmaGPhi,
        Self::Lemma1Psi,
        Self::Lemma2AClosedForm,
        Self::Corollary4Mobius,
        Self::Remark2iPhiZk,
        Self::Eq35Psi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::LemmaGPhi => "lemmaG_phi",
            Self::Lemma1Psi => "lemma1_psi",
            Self::Lemma2AClosedForm => "lemma2_A_closed_form",
            Self::Corollary4Mobius => "corollary4_mobius",
            Self::Remark2iPhiZk => "remark2i_phi_zk",
            Self::Eq35Psi => "eq35_psi",
        }
    }
}

impl fmt::Display for EqualityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EqualityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown equality case `{s}`")))
    }
}

/// Parameters of an equality case; `p` is a lacunary step where one is needed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityParams {
    pub a: f64,
    pub r: f64,
    pub p: f64,
    pub m: usize,
    pub k: usize,
    pub weights: WeightSequence,
}

impl Default for EqualityParams {
    fn default() -> Self {
        Self { a: 0.5, r: 0.4, p: 1.0, m: 0, k: 1, weights: WeightSequence::Geometric }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityResult {
    pub case: EqualityCase,
    pub params: EqualityParams,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub budget: f64,
    pub passed: bool,
}

fn step(p: f64) -> Result<usize> {
    CheckConfig::new(WeightSequence::Geometric, p).lacunary_pm().map(|(p, _)| p)
}

/// Evaluates both sides of a designated equality and reports `|lhs − rhs|`.
pub fn equality_check(case: EqualityCase, params: &EqualityParams) -> Result<EqualityResult> {
    let EqualityParams { a, r, p, m, k, ref weights } = *params;
    let (lhs, rhs, budget) = match case {
        EqualityCase::LemmaGPhi => {
            let f = FunctionSpec::phi(a)?.realize_for_radius(r)?;
            let s = lemma_g_sides(&f, weights, p, r)?;
            (s.lhs, s.rhs, s.budget)
        }
        EqualityCase::Lemma1Psi => {
            let f = FunctionSpec::psi(a)?.realize_for_radius(r)?;
            let s = series_stats(&f, r)?;
            let r2 = r * r;
            (s.area_ratio, 4.0 * (1.0 - a).powi(2) * r2 / (1.0 - r2).powi(2), s.area_budget)
        }
        EqualityCase::Lemma2AClosedForm => {
            let p = step(p)?;
            let f = FunctionSpec::lacunary_mobius(a, p, m, Sign::Plus)?.realize_for_radius(r)?;
            let got = lemma2_a(&f, p, m, r)?;
            let s2 = r.powi(2 * p as i32);
            (got.value, (1.0 - a * a) * s2 / (1.0 - s2), got.budget)
        }
        EqualityCase::Corollary4Mobius => {
            let p = step(p)?;
            let f = FunctionSpec::lacunary_mobius(a, p, m, Sign::Minus)?.realize_for_radius(r)?;
            let s = lemma4_sides(&f, weights, p, m, r)?;
            (s.lhs44, s.rhs44, s.budget)
        }
        EqualityCase::Remark2iPhiZk => {
            if k == 0 {
                return Err(Error::InvalidParameter("k must be positive".into()));
            }
            let spec = FunctionSpec::lacunary(FunctionSpec::phi(a)?, k, 0)?;
            let f = spec.realize_for_radius(r)?;
            let e = k_refined(&f, k, r)?;
            (e.lhs, e.rhs, e.budget)
        }
        EqualityCase::Eq35Psi => {
            let f = FunctionSpec::psi(a)?.realize_for_radius(r)?;
            let got = bohr_power(&f, weights, p, r)?;
            let z0 = weights.zeta(0, r)?;
            let phi1 = weights.phi(1, r)?;
            (got.value, a.powf(p) * z0 + 2.0 * (1.0 - a) * phi1, got.budget)
        }
    };
    let residual = (lhs - rhs).abs();
    Ok(EqualityResult {
        case,
        params: params.clone(),
        lhs,
        rhs,
        residual,
        budget,
        passed: residual <= budget + EQUALITY_SLACK,
    })
}

/// The two directions of the `a_0²` variant at `r = 1/3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Biconditional {
    /// Sweep below `1/3` over the corpus restricted to `a_0 ≥ 1/2`.
    pub holds: VerificationReport,
    /// Worst violation at exactly `r = 1/3` over the same corpus.
    pub max_violation_at_third: f64,
    /// `(a_0, violation)` for `ψ_{a_0}` at `r = 1/3` with `a_0 < 1/2`.
    pub below: Vec<(f64, f64)>,
    pub witness_below: Option<Witness>,
    pub passed: bool,
}

pub fn corollary2_biconditional(samples: usize, seed: u64, options: &CheckOptions) -> Result<Biconditional> {
    let id = "corollary2b";
    let def = theorem(id)?;
    let config = options.config.clone().unwrap_or_else(|| (def.default_config)());
    let mut corpus = standard_corpus(FunctionClass::P, samples, seed);
    corpus.retain(|s| s.realize_at(16, None).ok().and_then(|f| real_constant(&f).ok()).is_some_and(|a0| a0 >= 0.5));
    let holds = check_theorem(id, &corpus, options)?;

    let third = 1.0 / 3.0;
    let at_third: Vec<Result<f64>> = parallel_map(corpus.len(), |i| {
        eval_at(id, &corpus[i], &config, third, options.theta_samples).map(|(e, _)| e.violation())
    });
    let mut max_violation_at_third = f64::NEG_INFINITY;
    for v in at_third {
        max_violation_at_third = max_violation_at_third.max(v?);
    }

    let mut below = Vec::new();
    let mut witness_below = None;
    for i in 0..10 {
        let a0 = 0.05 * i as f64;
        let spec = FunctionSpec::psi(a0)?;
        let (e, _) = eval_at(id, &spec, &config, third, options.theta_samples)?;
        below.push((a0, e.violation()));
        if (a0 - 0.4).abs() < 1e-12 {
            witness_below = Some(witness(&spec, third, &e));
        }
    }
    let passed = holds.passed
        && max_violation_at_third <= options.tol
        && below.iter().all(|&(_, v)| v > 0.0);
    Ok(Biconditional { holds, max_violation_at_third, below, witness_below, passed })
}

/// Non-normative search for the largest radius at which the refined
/// alternating inequality holds across the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem2Report {
    pub normative: bool,
    pub grid_start: f64,
    pub grid_end: f64,
    pub grid_step: f64,
    pub functions: usize,
    /// Largest grid radius up to which every grid point holds.
    pub largest_r: f64,
    /// `(r, max violation)` along the grid.
    pub profile: Vec<(f64, f64)>,
    pub first_failure: Option<Witness>,
}

pub fn problem2_probe(samples: usize, seed: u64, theta_samples: usize) -> Result<Problem2Report> {
    let (start, end, step) = (2f64.sqrt() - 1.0, 0.6, 0.005);
    let count = ((end - start) / step).floor() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
    let corpus = standard_corpus(FunctionClass::B, samples, seed);
    let config = (theorem("corollary6")?.default_config)();
    let series: Vec<Result<TruncatedSeries>> = parallel_map(corpus.len(), |i| corpus[i].realize_for_radius(end));
    let series: Vec<TruncatedSeries> = series.into_iter().collect::<Result<_>>()?;
    let def = theorem("corollary6")?;

    let mut profile = Vec::with_capacity(grid.len());
    let mut largest_r = f64::NAN;
    let mut first_failure = None;
    for &r in &grid {
        let evals: Vec<Result<Eval>> = parallel_map(corpus.len(), |i| {
            let ctx = Ctx { f: &series[i], spec: &corpus[i], r, theta_samples, config: &config };
            (def.eval)(&ctx)
        });
        let mut worst: Option<(f64, usize, Eval)> = None;
        for (i, e) in evals.into_iter().enumerate() {
            let e = e?;
            if worst.as_ref().is_none_or(|(v, _, _)| e.violation() > *v) {
                worst = Some((e.violation(), i, e));
            }
        }
        let (v, i, e) = worst.expect("nonempty corpus");
        profile.push((r, v));
        if first_failure.is_none() {
            if v <= 0.0 {
                largest_r = r;
            } else {
                first_failure = Some(witness(&corpus[i], r, &e));
            }
        }
    }
    Ok(Problem2Report {
        normative: false,
        grid_start: start,
        grid_end: end,
        grid_step: step,
        functions: corpus.len(),
        largest_r,
        profile,
        first_failure,
    })
}
