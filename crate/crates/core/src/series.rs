//! Truncated power series with a geometric bound on the discarded tail.
//!
//! A [`TruncatedSeries`] holds the exact coefficients `a_0..=a_N` of an
//! analytic function on the unit disk together with a [`TailBound`] `(C, ρ)`
//! promising `|a_n| ≤ C·ρⁿ` for every `n > N`. Every quantity computed from
//! the partial sum can then report how far the full series may differ.
//!
//! `ρ = 1` is the unit-ratio case used for functions with non-decaying
//! coefficients; the bound `C·r^{N+1}/(1−r)` stays finite for `r < 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_radius, Error, Result};

/// Truncation order used when the caller has no evaluation radius in mind.
pub const DEFAULT_ORDER: usize = 256;

/// Hard cap on truncation orders chosen from a target radius.
pub const MAX_ORDER: usize = 20_000;

/// Coefficients at or below this modulus count as zero in support checks.
pub const SUPPORT_TOL: f64 = 1e-14;

/// Ratio used when dropped coefficients of a polynomial must be folded into
/// a geometric bound and no natural ratio exists.
const FALLBACK_RATIO: f64 = 0.5;

/// `|a_n| ≤ magnitude · ratioⁿ` for every coefficient past the truncation order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    magnitude: f64,
    ratio: f64,
}

impl TailBound {
    pub fn new(magnitude: f64, ratio: f64) -> Result<Self> {
        if !(magnitude >= 0.0) || magnitude.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "tail magnitude {magnitude} must be nonnegative"
            )));
        }
        if !(0.0..=1.0).contains(&ratio) {
            return Err(Error::InvalidParameter(format!(
                "tail ratio {ratio} outside [0, 1]"
            )));
        }
        Ok(Self { magnitude, ratio })
    }

    /// The series has no nonzero coefficient past its order.
    pub const fn exact() -> Self {
        Self {
            magnitude: 0.0,
            ratio: 0.0,
        }
    }

    /// Constant-modulus tail, `|a_n| ≤ magnitude` for all `n > N`.
    pub fn unit_ratio(magnitude: f64) -> Result<Self> {
        Self::new(magnitude, 1.0)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn is_unit_ratio(&self) -> bool {
        self.ratio == 1.0
    }

    /// True when the bound forces every tail coefficient to vanish.
    pub fn is_exact(&self) -> bool {
        self.magnitude == 0.0 || self.ratio == 0.0
    }

    fn decay(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let x = self.ratio * r;
        if x >= 1.0 {
            return Err(Error::Domain(format!(
                "tail ratio {} times radius {r} is not below 1",
                self.ratio
            )));
        }
        Ok(x)
    }

    /// `Σ_{n>order} C(ρr)ⁿ = C(ρr)^{order+1}/(1−ρr)`.
    pub fn bound(&self, order: usize, r: f64) -> Result<f64> {
        let x = self.decay(r)?;
        if self.is_exact() || x == 0.0 {
            return Ok(0.0);
        }
        Ok(self.magnitude * x.powf(order as f64 + 1.0) / (1.0 - x))
    }

    /// `Σ_{n>order} C²(ρr)^{2n}`, a bound on the tail of `‖f‖_r²`.
    pub fn square_bound(&self, order: usize, r: f64) -> Result<f64> {
        let x = self.decay(r)?;
        if self.is_exact() || x == 0.0 {
            return Ok(0.0);
        }
        let y = x * x;
        Ok(self.magnitude.powi(2) * y.powf(order as f64 + 1.0) / (1.0 - y))
    }

    /// `Σ_{n>order} n·C²(ρr)^{2n}`, a bound on the tail of the area sum.
    pub fn area_bound(&self, order: usize, r: f64) -> Result<f64> {
        let x = self.decay(r)?;
        if self.is_exact() || x == 0.0 {
            return Ok(0.0);
        }
        let y = x * x;
        let n = order as f64;
        Ok(self.magnitude.powi(2) * y.powf(n + 1.0) * ((n + 1.0) - n * y)
            / (1.0 - y).powi(2))
    }
}

/// Finitely many complex coefficients plus a tail bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    tail: TailBound,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>, tail: TailBound) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a truncated series needs at least a_0".into(),
            ));
        }
        if let Some(n) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidParameter(format!("coefficient a_{n} is not finite")));
        }
        Ok(Self { coeffs, tail })
    }

    /// A polynomial: no coefficients beyond the last one given.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs, TailBound::exact())
    }

    pub fn from_real(coeffs: &[f64], tail: TailBound) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), tail)
    }

    /// `c·zᵏ`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self {
            coeffs,
            tail: TailBound::exact(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_n`, zero past the order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn constant(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn tail(&self) -> TailBound {
        self.tail
    }

    /// Partial sum `Σ_{n≤N} a_n zⁿ`; pair with [`tail_error`](Self::tail_error).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if !(modulus < 1.0) {
            return Err(Error::Domain(format!("|z| = {modulus} is not below 1")));
        }
        Ok(self.horner(z))
    }

    pub(crate) fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Upper bound on `|Σ_{n>N} a_n zⁿ|` and on `Σ_{n>N} |a_n| rⁿ` for `|z| = r`.
    pub fn tail_error(&self, r: f64) -> Result<f64> {
        self.tail.bound(self.order(), r)
    }

    pub fn square_tail(&self, r: f64) -> Result<f64> {
        self.tail.square_bound(self.order(), r)
    }

    pub fn area_tail(&self, r: f64) -> Result<f64> {
        self.tail.area_bound(self.order(), r)
    }

    /// `f_0 = f − f(0)`.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = Complex64::new(0.0, 0.0);
        out
    }

    /// Smallest `K` with `|a_k| ≤ K·σᵏ` for every `k`, including the tail.
    /// Requires `σ ≥ ρ` and `σ > 0`.
    fn envelope(&self, sigma: f64) -> f64 {
        debug_assert!(sigma > 0.0 && sigma >= self.tail.ratio || self.tail.is_exact());
        let log_sigma = sigma.ln();
        let head = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(k, c)| (c.norm().ln() - k as f64 * log_sigma).exp())
            .fold(0.0_f64, f64::max);
        if self.tail.is_exact() {
            head
        } else {
            head.max(self.tail.magnitude)
        }
    }

    /// Truncate to `n_out`, folding any dropped coefficients into the tail bound.
    /// Series with a nonzero tail cannot be extended past their order, so the
    /// result keeps `min(n_out, N)` coefficients in that case.
    pub fn truncated(&self, n_out: usize) -> Self {
        absorb(self.coeffs.clone(), n_out, self.tail)
    }

    /// `c·f`, truncated at `n_out`.
    pub fn scaled(&self, c: Complex64, n_out: usize) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| a * c).collect();
        let tail = TailBound {
            magnitude: self.tail.magnitude * c.norm(),
            ratio: self.tail.ratio,
        };
        absorb(coeffs, n_out, tail)
    }

    /// `f + g`, truncated at `n_out` (or earlier if an input tail is unknown there).
    pub fn plus(&self, other: &Self, n_out: usize) -> Self {
        let limit = exact_limit(self, other, |a, b| a.min(b));
        let len = self.coeffs.len().max(other.coeffs.len()).min(limit.saturating_add(1));
        let coeffs: Vec<Complex64> = (0..len).map(|n| self.coeff(n) + other.coeff(n)).collect();
        if self.tail.is_exact() && other.tail.is_exact() {
            return absorb(coeffs, n_out, TailBound::exact());
        }
        let sigma = self.active_ratio().max(other.active_ratio());
        let tail = TailBound {
            magnitude: self.envelope(sigma) + other.envelope(sigma),
            ratio: sigma,
        };
        absorb(coeffs, n_out, tail)
    }

    /// Cauchy product `f·g`, truncated at `n_out`.
    ///
    /// Output coefficients are exact only up to the smallest order among inputs
    /// with a nonzero tail, so the output order never exceeds it. The tail bound:
    ///
    /// * polynomial × `(C, ρ)`: `(K_f · Σ_j |b_j| ρ^{−j}, ρ)`;
    /// * `(C₁, 1)` × `(C₂, ρ₂ < 1)`: `(K₁K₂/(1−ρ₂), 1)`;
    /// * both geometric with `σ = max ρ < 1`: `|c_n| ≤ K₁K₂(n+1)σⁿ`, rebounded as
    ///   `M·(√σ)ⁿ` with `M = sup_{n>N_out} (n+1)σ^{n/2}`.
    ///
    /// Two unit-ratio inputs have no geometric tail and are rejected.
    pub fn cauchy_product(&self, other: &Self, n_out: usize) -> Result<Self> {
        let (ea, eb) = (self.tail.is_exact(), other.tail.is_exact());
        let limit = exact_limit(self, other, |a, b| a.min(b));
        let limit = if ea && eb { self.order() + other.order() } else { limit };
        let order = limit.min(if ea && eb { usize::MAX } else { n_out });
        let len = order + 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        let tail = match (ea, eb) {
            (true, true) => TailBound::exact(),
            (false, true) => poly_times_geometric(self, other),
            (true, false) => poly_times_geometric(other, self),
            (false, false) => {
                let (ra, rb) = (self.tail.ratio, other.tail.ratio);
                if ra == 1.0 && rb == 1.0 {
                    return Err(Error::UnboundedTail(
                        "product of two unit-ratio series grows without a geometric bound".into(),
                    ));
                }
                if ra == 1.0 || rb == 1.0 {
                    let (unit, geo) = if ra == 1.0 { (self, other) } else { (other, self) };
                    let rho = geo.tail.ratio;
                    TailBound {
                        magnitude: unit.envelope(1.0) * geo.envelope(rho) / (1.0 - rho),
                        ratio: 1.0,
                    }
                } else {
                    let sigma = ra.max(rb);
                    let k = self.envelope(sigma) * other.envelope(sigma);
                    let s = sigma.sqrt();
                    TailBound {
                        magnitude: k * sup_linear_geometric(s, order + 1),
                        ratio: s,
                    }
                }
            }
        };
        Ok(absorb(coeffs, n_out, tail))
    }

    /// `z^m · g(z^p)`: coefficient `b_n` moves to index `np + m`.
    pub fn compose_lacunary(&self, p: usize, m: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("lacunary step p must be positive".into()));
        }
        let len = m + p * self.order() + 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (n, &b) in self.coeffs.iter().enumerate() {
            coeffs[n * p + m] = b;
        }
        let tail = if self.tail.is_exact() {
            TailBound::exact()
        } else {
            // |b_j| ≤ Cρ^j = Cρ^{−m/p}·(ρ^{1/p})^{jp+m}
            let rho = self.tail.ratio;
            TailBound {
                magnitude: self.tail.magnitude * rho.powf(-(m as f64) / p as f64),
                ratio: rho.powf(1.0 / p as f64),
            }
        };
        Ok(Self { coeffs, tail })
    }

    /// Inverse of [`compose_lacunary`](Self::compose_lacunary): recovers `g`
    /// from `f(z) = z^m g(z^p)`, failing if `f` has mass off the support.
    pub fn lacunary_part(&self, p: usize, m: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParameter("lacunary step p must be positive".into()));
        }
        if let Some((index, c)) = self
            .coeffs
            .iter()
            .enumerate()
            .find(|(n, c)| !on_support(*n, p, m) && c.norm() > SUPPORT_TOL)
        {
            return Err(Error::SupportViolation {
                index,
                magnitude: c.norm(),
                p,
                m,
            });
        }
        let n = self.order();
        if n < m {
            if self.tail.is_exact() {
                return Ok(Self::polynomial(vec![Complex64::new(0.0, 0.0)])?);
            }
            return Err(Error::InvalidParameter(format!(
                "order {n} does not reach the first lacunary index {m}"
            )));
        }
        let coeffs: Vec<Complex64> = (0..=(n - m) / p).map(|j| self.coeffs[m + j * p]).collect();
        let tail = if self.tail.is_exact() {
            TailBound::exact()
        } else {
            // index m + jp: |b_j| ≤ Cρ^{m+jp} = (Cρ^m)(ρ^p)^j
            let rho = self.tail.ratio;
            TailBound {
                magnitude: self.tail.magnitude * rho.powi(m as i32),
                ratio: rho.powi(p as i32),
            }
        };
        Self::new(coeffs, tail)
    }

    /// True when every coefficient off `{np + m}` vanishes.
    pub fn is_lacunary(&self, p: usize, m: usize) -> bool {
        p > 0
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(n, c)| on_support(n, p, m) || c.norm() <= SUPPORT_TOL)
    }

    fn active_ratio(&self) -> f64 {
        if self.tail.is_exact() {
            0.0
        } else {
            self.tail.ratio
        }
    }
}

/// How to combine two series in [`combine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Combine {
    Add,
    /// Scales the first operand; the second is ignored.
    Scale(Complex64),
    CauchyProduct,
}

pub fn combine(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    op: Combine,
    n_out: usize,
) -> Result<TruncatedSeries> {
    match op {
        Combine::Add => Ok(a.plus(b, n_out)),
        Combine::Scale(c) => Ok(a.scaled(c, n_out)),
        Combine::CauchyProduct => a.cauchy_product(b, n_out),
    }
}

fn on_support(n: usize, p: usize, m: usize) -> bool {
    n >= m && (n - m) % p == 0
}

/// Largest index up to which the combination of `a` and `b` is known exactly.
fn exact_limit(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    pick: impl Fn(usize, usize) -> usize,
) -> usize {
    let la = if a.tail.is_exact() { usize::MAX } else { a.order() };
    let lb = if b.tail.is_exact() { usize::MAX } else { b.order() };
    pick(la, lb)
}

fn poly_times_geometric(geo: &TruncatedSeries, poly: &TruncatedSeries) -> TailBound {
    let rho = geo.tail.ratio;
    let weight: f64 = poly
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(j, c)| (c.norm().ln() - j as f64 * rho.ln()).exp())
        .sum();
    TailBound {
        magnitude: geo.envelope(rho) * weight,
        ratio: rho,
    }
}

/// `sup_{n ≥ n0} (n+1)·sⁿ` for `s ∈ (0, 1)`.
fn sup_linear_geometric(s: f64, n0: usize) -> f64 {
    let g = |n: f64| (n + 1.0) * s.powf(n);
    // (n+1)sⁿ peaks at n* = −1/ln s − 1
    let peak = -1.0 / s.ln() - 1.0;
    let n0 = n0 as f64;
    if peak <= n0 {
        g(n0)
    } else {
        g(peak.floor()).max(g(peak.ceil()))
    }
}

/// Keep `min(n_out, len−1)` coefficients (padding polynomials with zeros up
/// to `n_out`), folding dropped coefficients into a geometric bound.
fn absorb(mut coeffs: Vec<Complex64>, n_out: usize, tail: TailBound) -> TruncatedSeries {
    if coeffs.len() <= n_out + 1 {
        if tail.is_exact() {
            coeffs.resize(n_out + 1, Complex64::new(0.0, 0.0));
        }
        return TruncatedSeries { coeffs, tail };
    }
    let dropped = coeffs.split_off(n_out + 1);
    if dropped.iter().all(|c| c.norm() == 0.0) {
        return TruncatedSeries { coeffs, tail };
    }
    let sigma = if tail.is_exact() { FALLBACK_RATIO } else { tail.ratio };
    let log_sigma = sigma.ln();
    let head = dropped
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| (c.norm().ln() - (n_out + 1 + i) as f64 * log_sigma).exp())
        .fold(0.0_f64, f64::max);
    let magnitude = if tail.is_exact() { head } else { head.max(tail.magnitude) };
    TruncatedSeries {
        coeffs,
        tail: TailBound {
            magnitude,
            ratio: sigma,
        },
    }
}

/// Smallest order `N ≥ min_order` with `C(ρr)^{N+1}/(1−ρr) ≤ eps`, capped at [`MAX_ORDER`].
pub fn order_for_radius(tail: TailBound, r: f64, eps: f64, min_order: usize) -> usize {
    let x = tail.ratio * r;
    if tail.is_exact() || x == 0.0 {
        return min_order;
    }
    if x >= 1.0 {
        return MAX_ORDER;
    }
    // C x^{N+1} ≤ eps (1 − x)
    let need = ((eps * (1.0 - x) / tail.magnitude).ln() / x.ln()).ceil() - 1.0;
    if !need.is_finite() || need > MAX_ORDER as f64 {
        MAX_ORDER
    } else {
        (need.max(0.0) as usize).max(min_order)
    }
}
