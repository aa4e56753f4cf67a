//! Theorem-checking harness: inequality sweeps below each radius, sharpness
//! probes just above it, and the equality cases of the sharp lemmas.

mod catalog;
mod sharpness;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{random_zeros, sample_spec, FunctionClass, FunctionSpec, Sign};
use crate::functionals::{real_constant, DEFAULT_THETA_SAMPLES};
use crate::series::TruncatedSeries;
use crate::weights::WeightSequence;

pub use catalog::{theorem, theorem_ids, CheckConfig, Ctx, Shape, TheoremDef};
pub use sharpness::{
    corollary2_biconditional, equality_check, probe_ids, probe_table, problem2_probe, run_probe,
    sharpness_probe, theorem4_excess, Biconditional, EqualityCase, EqualityParams, EqualityResult,
    Family, ProbeCase, ProbeKind, Problem2Report, SharpnessReport, EQUALITY_SLACK, WITNESS_EXCESS,
};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MARGIN: f64 = 1e-6;
pub const DEFAULT_R_POINTS: usize = 50;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_DELTA: f64 = 0.01;
/// Environment variable capping harness parallelism; `0` runs sequentially.
pub const THREADS_ENV: &str = "BOHRLAB_THREADS";

/// Upper end of the grid for inequalities claimed on all of `[0, 1)`.
pub const ALL_R_LIMIT: f64 = 0.9;

/// Step of the extremal parameter grid `a ∈ {0, 0.05, …, 0.95}`.
const A_GRID: [f64; 20] = [
    0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8,
    0.85, 0.9, 0.95,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub r_points: usize,
    pub theta_samples: usize,
    pub tol: f64,
    pub margin: f64,
    pub config: Option<CheckConfig>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            r_points: DEFAULT_R_POINTS,
            theta_samples: DEFAULT_THETA_SAMPLES,
            tol: DEFAULT_TOL,
            margin: DEFAULT_MARGIN,
            config: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RGrid {
    pub points: usize,
    pub margin: f64,
    /// Largest radius bound over the corpus (bounds may depend on `a_0`).
    pub max_radius: f64,
    pub min_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub function: String,
    pub spec: FunctionSpec,
    pub r: f64,
    pub theta: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub budget: f64,
}

impl Witness {
    pub fn excess(&self) -> f64 {
        self.lhs - self.rhs - self.budget
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub function_label: String,
    pub config: CheckConfig,
    pub r_grid: RGrid,
    pub theta_samples: usize,
    pub tol: f64,
    pub functions_checked: usize,
    pub points_checked: usize,
    pub max_violation: f64,
    pub witness: Option<Witness>,
    pub passed: bool,
    pub notes: Vec<String>,
    pub elapsed_secs: f64,
}

/// One evaluated point: both sides, the truncation budget and the maximizing angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eval {
    pub lhs: f64,
    pub rhs: f64,
    pub budget: f64,
    pub theta: Option<f64>,
}

impl Eval {
    pub fn new(lhs: f64, rhs: f64, budget: f64) -> Self {
        Self { lhs, rhs, budget, theta: None }
    }

    pub fn at(mut self, theta: f64) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn violation(&self) -> f64 {
        self.lhs - self.rhs - self.budget
    }

    /// The worse of two inequalities checked together.
    pub fn worst(self, other: Eval) -> Eval {
        if other.violation() > self.violation() {
            other
        } else {
            self
        }
    }
}

/// Evaluates `f(i)` for `i < n`, in parallel unless [`THREADS_ENV`] is `0`.
/// The output order never depends on scheduling.
pub fn parallel_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
    match threads {
        Some(0) => (0..n).map(f).collect(),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            Err(_) => (0..n).map(f).collect(),
        },
        None => (0..n).into_par_iter().map(f).collect(),
    }
}

/// `φ_a` (class B) or `ψ_a` (class P) on the grid `a = 0, 0.05, …, 0.95`.
pub fn extremal_grid(class: FunctionClass) -> Vec<FunctionSpec> {
    A_GRID
        .iter()
        .map(|&a| match class {
            FunctionClass::B => FunctionSpec::phi(a),
            FunctionClass::P => FunctionSpec::psi(a),
        })
        .collect::<Result<_>>()
        .expect("grid values lie in [0, 1)")
}

/// Seeded class members. For `P`, even indices are Herglotz combinations and
/// odd indices are Blaschke products rotated to a nonnegative constant term.
pub fn class_samples(class: FunctionClass, samples: usize, seed: u64) -> Vec<FunctionSpec> {
    (0..samples)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            let complexity = 1 + i % 8;
            match class {
                FunctionClass::P if i % 2 == 1 => {
                    let mut rng = ChaCha8Rng::seed_from_u64(s);
                    let zeros = random_zeros(&mut rng, complexity);
                    FunctionSpec::blaschke_real_constant(zeros)
                        .expect("sampled zeros lie in the disk")
                        .with_label(format!("blaschke+:seed={s},deg={complexity}"))
                }
                _ => sample_spec(class, s, complexity).expect("complexity in range"),
            }
        })
        .collect()
}

/// Extremal grid plus seeded samples.
pub fn standard_corpus(class: FunctionClass, samples: usize, seed: u64) -> Vec<FunctionSpec> {
    let mut corpus = extremal_grid(class);
    corpus.extend(class_samples(class, samples, seed));
    corpus
}

/// Functions of the form `z^m g(z^p)`: lacunary Möbius maps of both signs,
/// the monomials `z^{p+m}` and `z^{2p+m}`, and seeded `B` samples as `g`.
pub fn lacunary_corpus(p: usize, m: usize, samples: usize, seed: u64) -> Vec<FunctionSpec> {
    let mut corpus = Vec::new();
    for &a in &A_GRID {
        for sign in [Sign::Plus, Sign::Minus] {
            corpus.push(FunctionSpec::lacunary_mobius(a, p, m, sign).expect("a in [0, 1)"));
        }
    }
    corpus.push(FunctionSpec::monomial(p + m));
    corpus.push(FunctionSpec::monomial(2 * p + m));
    for inner in class_samples(FunctionClass::B, samples, seed) {
        corpus.push(FunctionSpec::lacunary(inner, p, m).expect("valid inner spec"));
    }
    corpus
}

/// The corpus a theorem is checked on by default.
pub fn corpus_for(def: &TheoremDef, config: &CheckConfig, samples: usize, seed: u64) -> Result<Vec<FunctionSpec>> {
    Ok(match def.shape {
        Shape::General => standard_corpus(def.class, samples, seed),
        Shape::Lacunary => {
            let (p, m) = config.lacunary_pm()?;
            lacunary_corpus(p, m, samples, seed)
        }
        Shape::KLacunary => {
            let mut corpus = standard_corpus(FunctionClass::B, samples, seed);
            for k in 1..=3 {
                for &a in &A_GRID {
                    let phi = FunctionSpec::phi(a).expect("a in [0, 1)");
                    corpus.push(FunctionSpec::lacunary(phi, k, 0).expect("valid"));
                }
            }
            for inner in class_samples(FunctionClass::B, samples / 4, seed ^ 0x5eed) {
                corpus.push(FunctionSpec::lacunary(inner, 3, 0).expect("valid"));
            }
            corpus
        }
    })
}

/// Why a function cannot be checked against a theorem, if it cannot.
fn precondition(def: &TheoremDef, config: &CheckConfig, spec: &FunctionSpec, f: &TruncatedSeries) -> Option<String> {
    match def.class {
        FunctionClass::B if spec.class() != FunctionClass::B => {
            return Some("not in class B".into());
        }
        FunctionClass::P => {
            let a0 = match real_constant(f) {
                Ok(a0) => a0,
                Err(_) => return Some("a0 not real in [0, 1)".into()),
            };
            if let Some((lo, lo_closed)) = def.a0_floor {
                if a0 < lo || (!lo_closed && a0 == lo) {
                    return Some(format!("a0 below {lo}"));
                }
            }
        }
        _ => {}
    }
    if def.shape == Shape::Lacunary {
        let (p, m) = config.lacunary_pm().ok()?;
        if !f.is_lacunary(p, m) {
            return Some(format!("not supported on {{n·{p}+{m}}}"));
        }
    }
    None
}

struct Prepared {
    index: usize,
    series: TruncatedSeries,
    radius: f64,
}

/// Checks one theorem over `corpus` on `r_points` radii below each radius bound.
pub fn check_theorem(id: &str, corpus: &[FunctionSpec], options: &CheckOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let def = theorem(id)?;
    let config = options.config.clone().unwrap_or_else(|| (def.default_config)());
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus(id.to_string()));
    }
    if options.r_points == 0 || options.theta_samples == 0 {
        return Err(Error::InvalidParameter("r_points and theta_samples must be positive".into()));
    }
    let fixed_radius = if def.per_a0 { None } else { Some((def.radius)(&config, 0.0)?) };

    let prepared: Vec<std::result::Result<Prepared, String>> = parallel_map(corpus.len(), |i| {
        let spec = &corpus[i];
        let probe = spec.realize_at(16, None).map_err(|e| e.to_string())?;
        if let Some(reason) = precondition(&def, &config, spec, &probe) {
            return Err(reason);
        }
        let radius = match fixed_radius {
            Some(r) => r,
            None => {
                let a0 = real_constant(&probe).map_err(|e| e.to_string())?;
                (def.radius)(&config, a0).map_err(|e| format!("radius: {e}"))?
            }
        };
        let top = (radius - options.margin).clamp(0.0, 0.999);
        let series = spec.realize_for_radius(top).map_err(|e| e.to_string())?;
        if let Some(reason) = precondition(&def, &config, spec, &series) {
            return Err(reason);
        }
        Ok(Prepared { index: i, series, radius })
    });

    let mut skipped: BTreeMap<String, usize> = BTreeMap::new();
    let mut ready = Vec::new();
    for p in prepared {
        match p {
            Ok(p) => ready.push(p),
            Err(reason) => *skipped.entry(reason).or_default() += 1,
        }
    }
    if ready.is_empty() {
        return Err(Error::EmptyCorpus(format!("{id}: every function failed its preconditions")));
    }

    let n = options.r_points;
    let jobs = ready.len() * n;
    let evals: Vec<Result<Eval>> = parallel_map(jobs, |job| {
        let item = &ready[job / n];
        let i = job % n + 1;
        let r = (item.radius - options.margin).max(0.0) * i as f64 / n as f64;
        let ctx = catalog::Ctx {
            f: &item.series,
            spec: &corpus[item.index],
            r,
            theta_samples: options.theta_samples,
            config: &config,
        };
        (def.eval)(&ctx)
    });

    let mut best: Option<(f64, usize)> = None;
    for (job, e) in evals.iter().enumerate() {
        let e = e.as_ref().map_err(|err| {
            let item = &ready[job / n];
            Error::InvalidParameter(format!("{id} on {}: {err}", corpus[item.index].label()))
        })?;
        let v = e.violation();
        // strict comparison keeps the lexicographically first maximizer
        if best.is_none_or(|(bv, _)| v > bv || (bv.is_nan() && !v.is_nan())) {
            best = Some((v, job));
        }
    }
    let (max_violation, job) = best.expect("at least one evaluation");
    let item = &ready[job / n];
    let e = evals[job].as_ref().expect("checked above");
    let spec = &corpus[item.index];
    let witness = Witness {
        function: spec.label().to_string(),
        spec: spec.clone(),
        r: (item.radius - options.margin).max(0.0) * (job % n + 1) as f64 / n as f64,
        theta: e.theta,
        lhs: e.lhs,
        rhs: e.rhs,
        budget: e.budget,
    };

    let radii = ready.iter().map(|p| p.radius);
    let mut notes: Vec<String> = skipped
        .into_iter()
        .map(|(reason, count)| format!("skipped {count} function(s): {reason}"))
        .collect();
    if let Some(note) = def.note {
        notes.push(note.to_string());
    }
    Ok(VerificationReport {
        theorem_id: id.to_string(),
        function_label: format!("{} functions, worst {}", ready.len(), spec.label()),
        config,
        r_grid: RGrid {
            points: n,
            margin: options.margin,
            max_radius: radii.clone().fold(f64::NEG_INFINITY, f64::max),
            min_radius: radii.fold(f64::INFINITY, f64::min),
        },
        theta_samples: options.theta_samples,
        tol: options.tol,
        functions_checked: ready.len(),
        points_checked: jobs,
        max_violation,
        passed: max_violation <= options.tol,
        witness: Some(witness),
        notes,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// Checks a theorem on its default corpus.
pub fn check_standard(id: &str, samples: usize, seed: u64, options: &CheckOptions) -> Result<VerificationReport> {
    let def = theorem(id)?;
    let config = options.config.clone().unwrap_or_else(|| (def.default_config)());
    let corpus = corpus_for(&def, &config, samples, seed)?;
    check_theorem(id, &corpus, options)
}

/// Plain weights helper used by the catalog defaults.
pub(crate) fn geometric() -> WeightSequence {
    WeightSequence::Geometric
}
