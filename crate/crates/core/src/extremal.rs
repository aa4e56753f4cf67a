//! Test functions: the extremal families and seeded random members of the
//! classes `B` (`|f| < 1`) and `P` (`Re f < 1`), realized as truncated series.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{TailBound, TruncatedSeries, DEFAULT_ORDER, MAX_ORDER};

/// Truncation error targeted by [`FunctionSpec::realize_for_radius`].
pub const TARGET_TAIL: f64 = 1e-12;

/// Smallest order chosen from a radius.
const MIN_ORDER: usize = 16;

/// Largest modulus of a sampled Blaschke zero.
const MAX_SAMPLE_ZERO: f64 = 0.95;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionClass {
    /// `|f| < 1` in the disk.
    B,
    /// `Re f < 1` in the disk.
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionKind {
    /// `(a − z)/(1 − az)`.
    Phi { a: f64 },
    /// `a − 2(1−a)z/(1−z)`.
    Psi { a: f64 },
    /// `z^m (a ± z^p)/(1 ± a z^p)`.
    LacunaryMobius { a: f64, p: usize, m: usize, sign: Sign },
    /// `z^k`.
    Monomial { k: usize },
    /// `scale · rotation · Π (α_j − z)/(1 − ᾱ_j z)`.
    Blaschke {
        zeros: Vec<Complex64>,
        rotation: Complex64,
        scale: f64,
    },
    /// `1 − (1−a0) Σ w_j (1 + e^{iθ_j} z)/(1 − e^{iθ_j} z)`.
    Herglotz {
        a0: f64,
        weights: Vec<f64>,
        angles: Vec<f64>,
    },
    /// `z^m g(z^p)`.
    Lacunary {
        inner: Box<FunctionSpec>,
        p: usize,
        m: usize,
    },
}

/// A recipe for a test function plus its default truncation order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub kind: FunctionKind,
    pub order: usize,
    label: String,
}

fn check_unit_interval(name: &str, a: f64) -> Result<()> {
    if a.is_finite() && (0.0..1.0).contains(&a) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {a} outside [0, 1)")))
    }
}

impl FunctionSpec {
    fn build(kind: FunctionKind, label: String) -> Result<Self> {
        let spec = Self {
            kind,
            order: DEFAULT_ORDER,
            label,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn phi(a: f64) -> Result<Self> {
        Self::build(FunctionKind::Phi { a }, format!("phi:a={a}"))
    }

    pub fn psi(a: f64) -> Result<Self> {
        Self::build(FunctionKind::Psi { a }, format!("psi:a={a}"))
    }

    pub fn lacunary_mobius(a: f64, p: usize, m: usize, sign: Sign) -> Result<Self> {
        let s = match sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        Self::build(
            FunctionKind::LacunaryMobius { a, p, m, sign },
            format!("lac:a={a},p={p},m={m},sign={s}"),
        )
    }

    pub fn monomial(k: usize) -> Self {
        Self {
            kind: FunctionKind::Monomial { k },
            order: DEFAULT_ORDER.max(k),
            label: format!("mono:k={k}"),
        }
    }

    pub fn blaschke(zeros: Vec<Complex64>, rotation: Complex64) -> Result<Self> {
        let label = format!("blaschke:deg={}", zeros.len());
        Self::build(
            FunctionKind::Blaschke {
                zeros,
                rotation,
                scale: 1.0,
            },
            label,
        )
    }

    /// Blaschke product rotated so that `f(0) ≥ 0`.
    pub fn blaschke_real_constant(zeros: Vec<Complex64>) -> Result<Self> {
        let b0: Complex64 = zeros.iter().product();
        let rotation = if b0.norm() > 0.0 {
            b0.conj() / b0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        Self::blaschke(zeros, rotation)
    }

    pub fn herglotz(a0: f64, weights: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        let label = format!("herglotz:a0={a0},terms={}", weights.len());
        Self::build(FunctionKind::Herglotz { a0, weights, angles }, label)
    }

    /// `z^m g(z^p)` for the function described by `inner`.
    pub fn lacunary(inner: FunctionSpec, p: usize, m: usize) -> Result<Self> {
        let label = format!("lacunary(p={p},m={m})[{}]", inner.label);
        Self::build(
            FunctionKind::Lacunary {
                inner: Box::new(inner),
                p,
                m,
            },
            label,
        )
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Multiplies a Blaschke product by `scale ∈ (0, 1]`.
    pub fn scaled(mut self, factor: f64) -> Result<Self> {
        match &mut self.kind {
            FunctionKind::Blaschke { scale, .. } if factor > 0.0 && factor <= 1.0 => {
                *scale = factor;
                self.label = format!("{}*{factor}", self.label);
                Ok(self)
            }
            _ => Err(Error::InvalidParameter(
                "only Blaschke products take a scale factor in (0, 1]".into(),
            )),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            FunctionKind::Phi { a } | FunctionKind::Psi { a } => check_unit_interval("a", *a),
            FunctionKind::LacunaryMobius { a, p, .. } => {
                check_unit_interval("a", *a)?;
                if *p == 0 {
                    return Err(Error::InvalidParameter("p must be positive".into()));
                }
                Ok(())
            }
            FunctionKind::Monomial { .. } => Ok(()),
            FunctionKind::Blaschke {
                zeros,
                rotation,
                scale,
            } => {
                if let Some(z) = zeros.iter().find(|z| !(z.norm() < 1.0)) {
                    return Err(Error::InvalidParameter(format!(
                        "Blaschke zero {z} is not inside the unit disk"
                    )));
                }
                if (rotation.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "rotation {rotation} is not unimodular"
                    )));
                }
                if !(*scale > 0.0 && *scale <= 1.0) {
                    return Err(Error::InvalidParameter(format!("scale {scale} outside (0, 1]")));
                }
                Ok(())
            }
            FunctionKind::Herglotz { a0, weights, angles } => {
                check_unit_interval("a0", *a0)?;
                if weights.is_empty() || weights.len() != angles.len() {
                    return Err(Error::InvalidParameter(
                        "Herglotz weights and angles must be nonempty and of equal length".into(),
                    ));
                }
                if weights.iter().any(|w| !(*w >= 0.0)) || angles.iter().any(|t| !t.is_finite())
                {
                    return Err(Error::InvalidParameter(
                        "Herglotz weights must be nonnegative and angles finite".into(),
                    ));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "Herglotz weights sum to {total}, not 1"
                    )));
                }
                Ok(())
            }
            FunctionKind::Lacunary { inner, p, .. } => {
                if *p == 0 {
                    return Err(Error::InvalidParameter("p must be positive".into()));
                }
                inner.validate()
            }
        }
    }

    /// Constant term `f(0)`.
    pub fn constant(&self) -> Complex64 {
        self.closed_form(ZERO)
    }

    /// Class membership guaranteed by construction.
    pub fn class(&self) -> FunctionClass {
        match &self.kind {
            FunctionKind::Psi { .. } | FunctionKind::Herglotz { .. } => FunctionClass::P,
            FunctionKind::Lacunary { inner, .. } => inner.class(),
            _ => FunctionClass::B,
        }
    }

    /// `Some((p, m))` when the coefficients live on `{np + m}` by construction.
    pub fn lacunary_shape(&self) -> Option<(usize, usize)> {
        match &self.kind {
            FunctionKind::LacunaryMobius { p, m, .. } | FunctionKind::Lacunary { p, m, .. } => {
                Some((*p, *m))
            }
            _ => None,
        }
    }

    /// Direct evaluation of the function at `|z| < 1`.
    pub fn closed_form(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match &self.kind {
            FunctionKind::Phi { a } => (*a - z) / (one - *a * z),
            FunctionKind::Psi { a } => *a - 2.0 * (1.0 - a) * z / (one - z),
            FunctionKind::LacunaryMobius { a, p, m, sign } => {
                let s = sign.value();
                let w = z.powu(*p as u32);
                z.powu(*m as u32) * (*a + s * w) / (one + s * *a * w)
            }
            FunctionKind::Monomial { k } => z.powu(*k as u32),
            FunctionKind::Blaschke {
                zeros,
                rotation,
                scale,
            } => {
                let product: Complex64 =
                    zeros.iter().map(|&al| (al - z) / (one - al.conj() * z)).product();
                *scale * *rotation * product
            }
            FunctionKind::Herglotz { a0, weights, angles } => {
                let kernel: Complex64 = weights
                    .iter()
                    .zip(angles)
                    .map(|(&w, &t)| {
                        let u = Complex64::from_polar(1.0, t) * z;
                        w * (one + u) / (one - u)
                    })
                    .sum();
                one - (1.0 - a0) * kernel
            }
            FunctionKind::Lacunary { inner, p, m } => {
                z.powu(*m as u32) * inner.closed_form(z.powu(*p as u32))
            }
        }
    }

    /// Truncated series at the spec's own order.
    pub fn realize(&self) -> Result<TruncatedSeries> {
        self.realize_at(self.order, None)
    }

    /// Truncated series whose tail at radius `r` is below [`TARGET_TAIL`]
    /// where the order cap allows it.
    pub fn realize_for_radius(&self, r: f64) -> Result<TruncatedSeries> {
        crate::error::check_radius(r)?;
        let mut order = MIN_ORDER;
        loop {
            let s = self.realize_at(order, Some(r))?;
            if s.tail_error(r)? <= TARGET_TAIL || order >= MAX_ORDER {
                return Ok(s);
            }
            order = next_order(&s, r, order);
        }
    }

    /// Series truncated at `order`; `radius_hint` picks among tail bounds
    /// where a family offers several.
    pub fn realize_at(&self, order: usize, radius_hint: Option<f64>) -> Result<TruncatedSeries> {
        self.validate()?;
        let hint = radius_hint.unwrap_or(0.9);
        match &self.kind {
            FunctionKind::Phi { a } => Ok(mobius_series(*a, -1.0, order)),
            FunctionKind::Psi { a } => {
                let mut coeffs = vec![Complex64::new(-2.0 * (1.0 - a), 0.0); order + 1];
                coeffs[0] = Complex64::new(*a, 0.0);
                TruncatedSeries::new(coeffs, TailBound::unit_ratio(2.0 * (1.0 - a))?)
            }
            FunctionKind::LacunaryMobius { a, p, m, sign } => {
                let inner_order = order.saturating_sub(*m) / p;
                mobius_series(*a, sign.value(), inner_order).compose_lacunary(*p, *m)
            }
            FunctionKind::Monomial { k } => {
                let mut coeffs = vec![ZERO; order.max(*k) + 1];
                coeffs[*k] = Complex64::new(1.0, 0.0);
                TruncatedSeries::polynomial(coeffs)
            }
            FunctionKind::Blaschke {
                zeros,
                rotation,
                scale,
            } => blaschke_series(zeros, *rotation * *scale, order, hint),
            FunctionKind::Herglotz { a0, weights, angles } => {
                let c = -2.0 * (1.0 - a0);
                let mut coeffs = vec![ZERO; order + 1];
                coeffs[0] = Complex64::new(*a0, 0.0);
                for (&w, &t) in weights.iter().zip(angles) {
                    let step = Complex64::from_polar(1.0, t);
                    let mut e = Complex64::new(1.0, 0.0);
                    for coeff in coeffs.iter_mut().skip(1) {
                        e *= step;
                        *coeff += c * w * e;
                    }
                }
                TruncatedSeries::new(coeffs, TailBound::unit_ratio(2.0 * (1.0 - a0))?)
            }
            FunctionKind::Lacunary { inner, p, m } => {
                let inner_order = order.saturating_sub(*m) / p;
                let inner_hint = radius_hint.map(|r| r.powi(*p as i32));
                inner.realize_at(inner_order, inner_hint)?.compose_lacunary(*p, *m)
            }
        }
    }
}

fn next_order(s: &TruncatedSeries, r: f64, order: usize) -> usize {
    let estimate = crate::series::order_for_radius(s.tail(), r, TARGET_TAIL, order);
    estimate.clamp(order * 2, MAX_ORDER).min(MAX_ORDER)
}

/// `(a + s·z)/(1 + s·a·z)` with `s = ±1`: `b_0 = a`, `b_n = s(1−a²)(−sa)^{n−1}`.
fn mobius_series(a: f64, s: f64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order.max(1) + 1);
    coeffs.push(Complex64::new(a, 0.0));
    let mut power = 1.0;
    for _ in 1..=order.max(1) {
        coeffs.push(Complex64::new(s * (1.0 - a * a) * power, 0.0));
        power *= -s * a;
    }
    let tail = if a == 0.0 {
        TailBound::exact()
    } else {
        // |b_n| = (1−a²)a^{n−1} = ((1−a²)/a)·aⁿ
        TailBound::new((1.0 - a * a) / a, a).expect("a in (0, 1)")
    };
    TruncatedSeries::new(coeffs, tail).expect("finite coefficients")
}

fn blaschke_series(
    zeros: &[Complex64],
    factor: Complex64,
    order: usize,
    hint: f64,
) -> Result<TruncatedSeries> {
    let order = order.max(zeros.len());
    let mut coeffs = vec![ZERO; order + 1];
    coeffs[0] = factor;
    // y = x·(α − z)/(1 − ᾱz)  ⇔  y_n = ᾱ y_{n−1} + α x_n − x_{n−1}
    for &alpha in zeros {
        let mut prev_x = ZERO;
        let mut prev_y = ZERO;
        for c in coeffs.iter_mut() {
            let x = *c;
            let y = alpha.conj() * prev_y + alpha * x - prev_x;
            prev_x = x;
            prev_y = y;
            *c = y;
        }
    }
    let max_zero = zeros.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tail = if max_zero == 0.0 {
        TailBound::exact()
    } else {
        blaschke_tail(zeros, factor.norm(), max_zero, order, hint)?
    };
    TruncatedSeries::new(coeffs, tail)
}

/// Best of the trivial bound `|a_n| ≤ |factor|` and Cauchy bounds on circles
/// of radius `R ∈ (1, 1/max|α|)`, judged at radius `hint`.
fn blaschke_tail(
    zeros: &[Complex64],
    factor: f64,
    max_zero: f64,
    order: usize,
    hint: f64,
) -> Result<TailBound> {
    let hint = hint.clamp(0.0, 0.999);
    let mut best = TailBound::unit_ratio(factor)?;
    let mut best_value = best.bound(order, hint)?;
    let r_max = 1.0 / max_zero;
    const GRID: usize = 64;
    for i in 1..GRID {
        let big_r = 1.0 + (r_max - 1.0) * i as f64 / GRID as f64;
        let sup: f64 = zeros
            .iter()
            .map(|z| (big_r + z.norm()) / (1.0 - z.norm() * big_r))
            .product::<f64>()
            * factor;
        if !sup.is_finite() {
            continue;
        }
        let candidate = TailBound::new(sup, 1.0 / big_r)?;
        let value = candidate.bound(order, hint)?;
        if value < best_value {
            best = candidate;
            best_value = value;
        }
    }
    Ok(best)
}

/// Random spec of the given class; deterministic in `seed`.
///
/// `B`: Blaschke product with `complexity` zeros of modulus at most 0.95 and a
/// random rotation. `P`: Herglotz combination with `a0 ∈ [0, 1)` and
/// `complexity` kernels.
pub fn sample_spec(class: FunctionClass, seed: u64, complexity: usize) -> Result<FunctionSpec> {
    if !(1..=8).contains(&complexity) {
        return Err(Error::InvalidParameter(format!(
            "complexity {complexity} outside [1, 8]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match class {
        FunctionClass::B => {
            let zeros = random_zeros(&mut rng, complexity);
            let rotation = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
            Ok(FunctionSpec::blaschke(zeros, rotation)?
                .with_label(format!("blaschke:seed={seed},deg={complexity}")))
        }
        FunctionClass::P => {
            let a0 = rng.gen_range(0.0..1.0);
            herglotz_with(&mut rng, a0, complexity, seed)
        }
    }
}

/// Herglotz spec with fixed `a0` and seeded kernels.
pub fn herglotz_spec(a0: f64, seed: u64, terms: usize) -> Result<FunctionSpec> {
    if terms == 0 {
        return Err(Error::InvalidParameter("Herglotz needs at least one term".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    herglotz_with(&mut rng, a0, terms, seed)
}

fn herglotz_with(
    rng: &mut ChaCha8Rng,
    a0: f64,
    terms: usize,
    seed: u64,
) -> Result<FunctionSpec> {
    let raw: Vec<f64> = (0..terms).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let angles = (0..terms).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    Ok(FunctionSpec::herglotz(a0, weights, angles)?
        .with_label(format!("herglotz:a0={a0},seed={seed},terms={terms}")))
}

/// Seeded zeros, uniform by area in the disk of radius 0.95.
pub fn random_zeros(rng: &mut impl Rng, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let rho = MAX_SAMPLE_ZERO * rng.gen::<f64>().sqrt();
            Complex64::from_polar(rho, rng.gen_range(0.0..2.0 * PI))
        })
        .collect()
}

/// Realized random member of `class` at the default order.
pub fn sample_class(class: FunctionClass, seed: u64, complexity: usize) -> Result<TruncatedSeries> {
    sample_spec(class, seed, complexity)?.realize()
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// `phi:a=0.5`, `psi:a=0.3`, `lac:a=0.5,p=2,m=1,sign=+`, `mono:k=3`,
    /// `blaschke:seed=7,deg=4`, `herglotz:a0=0.2,seed=9,terms=5`. Any spec
    /// also accepts `order=N`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut params = std::collections::BTreeMap::new();
        for pair in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{pair}`")))?;
            if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate key `{}`", k.trim())));
            }
        }
        let mut take = |key: &str| params.remove(key);
        fn num<T: FromStr>(key: &str, v: Option<String>) -> Result<T>
        where
            T::Err: fmt::Display,
        {
            let v = v.ok_or_else(|| Error::Parse(format!("missing `{key}`")))?;
            v.parse()
                .map_err(|e| Error::Parse(format!("`{key}={v}`: {e}")))
        }
        let order: Option<usize> = match take("order") {
            Some(v) => Some(num("order", Some(v))?),
            None => None,
        };
        let spec = match name {
            "phi" => FunctionSpec::phi(num("a", take("a"))?)?,
            "psi" => FunctionSpec::psi(num("a", take("a"))?)?,
            "lac" => {
                let sign = match take("sign").as_deref() {
                    Some("+") | Some("plus") | None => Sign::Plus,
                    Some("-") | Some("minus") => Sign::Minus,
                    Some(other) => return Err(Error::Parse(format!("sign `{other}`"))),
                };
                FunctionSpec::lacunary_mobius(
                    num("a", take("a"))?,
                    num("p", take("p"))?,
                    num("m", take("m"))?,
                    sign,
                )?
            }
            "mono" => FunctionSpec::monomial(num("k", take("k"))?),
            "blaschke" => sample_spec(
                FunctionClass::B,
                num("seed", take("seed"))?,
                num("deg", take("deg"))?,
            )?,
            "herglotz" => herglotz_spec(
                num("a0", take("a0"))?,
                num("seed", take("seed"))?,
                num("terms", take("terms"))?,
            )?,
            other => return Err(Error::Parse(format!("unknown function kind `{other}`"))),
        };
        if let Some(key) = params.keys().next() {
            return Err(Error::Parse(format!("unknown key `{key}` for `{name}`")));
        }
        Ok(match order {
            Some(n) => spec.with_order(n),
            None => spec,
        })
    }
}
