//! Bohr-type functionals of a truncated series.
//!
//! Every value is the partial sum over the stored coefficients; the attached
//! budget bounds what the discarded tail could add. For sums of nonnegative
//! terms the true value lies in `[value, value + budget]`; for signed sums in
//! `[value − budget, value + budget]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_radius, Error, Result};
use crate::series::TruncatedSeries;
use crate::weights::{Parity, WeightSequence, WeightTable};

/// Default number of equispaced angles for sups over `|z| = r`.
pub const DEFAULT_THETA_SAMPLES: usize = 256;

/// Imaginary parts up to this size count as zero when a real `a_0` is required.
const REAL_TOL: f64 = 1e-14;

/// A partial value with the tail budget that accompanies it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounded {
    pub value: f64,
    pub budget: f64,
}

impl Bounded {
    pub fn new(value: f64, budget: f64) -> Self {
        Self { value, budget }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, budget: 0.0 }
    }
}

/// Two sides of an inequality `lhs ≤ rhs`, with the lhs truncation budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
    pub budget: f64,
}

impl Sides {
    /// `lhs − rhs − budget`; positive only when the true lhs exceeds rhs.
    pub fn violation(&self) -> f64 {
        self.lhs - self.rhs - self.budget
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesStats {
    pub m_f: f64,
    pub m_f0: f64,
    pub a_f: f64,
    pub a_f0: f64,
    pub norm_sq: f64,
    pub norm0_sq: f64,
    pub area_ratio: f64,
    /// Bound on the tail of `M_f` and of `|A_f|`.
    pub tail_budget: f64,
    /// Bound on the tail of `‖f‖_r²`.
    pub square_budget: f64,
    /// Bound on the tail of `S_r/π`.
    pub area_budget: f64,
}

/// `|a_n|` for every stored coefficient.
fn moduli(f: &TruncatedSeries) -> Vec<f64> {
    f.coeffs().iter().map(|c| c.norm()).collect()
}

fn powers(x: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut p = 1.0;
    for _ in 0..len {
        out.push(p);
        p *= x;
    }
    out
}

pub fn series_stats(f: &TruncatedSeries, r: f64) -> Result<SeriesStats> {
    check_radius(r)?;
    let abs = moduli(f);
    let rn = powers(r, abs.len());
    let (mut m_f0, mut a_f0, mut norm0_sq, mut area) = (0.0, 0.0, 0.0, 0.0);
    for n in 1..abs.len() {
        let t = abs[n] * rn[n];
        m_f0 += t;
        a_f0 += if n % 2 == 0 { t } else { -t };
        norm0_sq += t * t;
        area += n as f64 * t * t;
    }
    Ok(SeriesStats {
        m_f: abs[0] + m_f0,
        m_f0,
        a_f: abs[0] + a_f0,
        a_f0,
        norm_sq: abs[0] * abs[0] + norm0_sq,
        norm0_sq,
        area_ratio: area,
        tail_budget: f.tail_error(r)?,
        square_budget: f.square_tail(r)?,
        area_budget: f.area_tail(r)?,
    })
}

/// `a_0` as a real number in `[0, 1)`.
pub fn real_constant(f: &TruncatedSeries) -> Result<f64> {
    let a0 = f.constant();
    if a0.im.abs() > REAL_TOL || !(a0.re > -REAL_TOL && a0.re < 1.0) {
        return Err(Error::Domain(format!(
            "a_0 = {a0} must be real and in [0, 1)"
        )));
    }
    Ok(a0.re.max(0.0))
}

/// `B_N(f, ζ, r) = Σ_{n≥N} |a_n| ζ_n(r)`.
pub fn weighted_sum(
    f: &TruncatedSeries,
    w: &WeightSequence,
    start: usize,
    r: f64,
) -> Result<Bounded> {
    let table = WeightTable::new(w, r, f.order() + 1)?;
    Ok(weighted_sum_with(f, &table, start)?)
}

fn weighted_sum_with(f: &TruncatedSeries, table: &WeightTable, start: usize) -> Result<Bounded> {
    let value = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(start)
        .map(|(n, c)| c.norm() * table.zeta(n))
        .sum();
    Ok(Bounded::new(
        value,
        table.envelope() * f.tail_error(table.radius())?,
    ))
}

/// `G(f_0, ζ, r) = Σ_{n≥1} |a_n|² (ζ_{2n}/(1+|a_0|) + Φ_{2n+1})`.
pub fn refinement_g(f: &TruncatedSeries, w: &WeightSequence, r: f64) -> Result<Bounded> {
    let table = WeightTable::new(w, r, 2 * f.order() + 2)?;
    refinement_g_with(f, &table)
}

fn refinement_g_with(f: &TruncatedSeries, table: &WeightTable) -> Result<Bounded> {
    let a0 = f.constant().norm();
    let value = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| c.norm_sqr() * (table.zeta(2 * n) / (1.0 + a0) + table.phi(2 * n + 1)))
        .sum();
    let r = table.radius();
    // ζ_{2n} + Φ_{2n+1} ≤ K r^{2n}/(1−r)
    let budget = table.envelope() / (1.0 - r) * f.square_tail(r)?;
    Ok(Bounded::new(value, budget))
}

/// Both sides of the refined inequality
/// `|a_0|^p ζ_0 + B_1 + G ≤ |a_0|^p ζ_0 + (1 − |a_0|²) Φ_1` for `f ∈ B`.
pub fn lemma_g_sides(f: &TruncatedSeries, w: &WeightSequence, p: f64, r: f64) -> Result<Sides> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::InvalidParameter(format!("p = {p} outside (0, 2]")));
    }
    let table = WeightTable::new(w, r, 2 * f.order() + 2)?;
    let a0 = f.constant().norm();
    let head = a0.powf(p) * table.zeta(0);
    let b1 = weighted_sum_with(f, &table, 1)?;
    let g = refinement_g_with(f, &table)?;
    Ok(Sides {
        lhs: head + b1.value + g.value,
        rhs: head + (1.0 - a0 * a0) * table.phi(1),
        budget: b1.budget + g.budget,
    })
}

/// `a_0^p ζ_0(r) + Σ_{n≥1} |a_n| ζ_n(r)` with `a_0 ∈ [0, 1)`.
pub fn bohr_power(f: &TruncatedSeries, w: &WeightSequence, p: f64, r: f64) -> Result<Bounded> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p = {p} must be positive")));
    }
    let a0 = real_constant(f)?;
    let table = WeightTable::new(w, r, f.order() + 1)?;
    let b1 = weighted_sum_with(f, &table, 1)?;
    Ok(Bounded::new(a0.powf(p) * table.zeta(0) + b1.value, b1.budget))
}

/// Maximum of `g(f(z))` over `theta_samples` equispaced points of `|z| = radius`
/// (θ = 0 included), with the maximizing angle.
pub fn circle_max(
    f: &TruncatedSeries,
    radius: f64,
    theta_samples: usize,
    g: impl Fn(Complex64) -> f64,
) -> (f64, f64) {
    let samples = theta_samples.max(1);
    (0..samples)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / samples as f64;
            (g(f.horner(Complex64::from_polar(radius, theta))), theta)
        })
        .fold((f64::NEG_INFINITY, 0.0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

/// `sup_{|z|=r} |f(z^m) − a_0|^q` on the θ-grid, with its truncation budget.
pub fn rogosinski_term(
    f: &TruncatedSeries,
    q: f64,
    m: usize,
    r: f64,
    theta_samples: usize,
) -> Result<Bounded> {
    check_radius(r)?;
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let a0 = f.constant();
    let rm = r.powi(m as i32);
    // θ ↦ mθ covers the circle of radius r^m; sampling that circle directly is equivalent
    let (max_abs, _) = circle_max(f, rm, theta_samples, |v| (v - a0).norm());
    let err = f.tail_error(rm)?;
    let value = max_abs.powf(q);
    Ok(Bounded::new(value, (max_abs + err).powf(q) - value))
}

/// `a_0^p ζ_0 + Σ|a_n|ζ_n + sup_{|z|=r} |f(z^m) − a_0|^q`.
#[allow(clippy::too_many_arguments)]
pub fn rogosinski_e(
    f: &TruncatedSeries,
    w: &WeightSequence,
    p: f64,
    q: f64,
    m: usize,
    r: f64,
    theta_samples: usize,
) -> Result<Bounded> {
    if !(q >= 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} must be at least 1")));
    }
    let base = bohr_power(f, w, p, r)?;
    let extra = rogosinski_term(f, q, m, r, theta_samples)?;
    Ok(Bounded::new(base.value + extra.value, base.budget + extra.budget))
}

/// `a_0 + Σ|a_n|rⁿ + (1/(1+a_0) + r/(1−r)) ‖f_0‖_r² + λ S_r/π`.
pub fn d_lambda(f: &TruncatedSeries, lambda: f64, r: f64) -> Result<Bounded> {
    if !(lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!("λ = {lambda} must be nonnegative")));
    }
    let a0 = real_constant(f)?;
    let s = series_stats(f, r)?;
    let factor = 1.0 / (1.0 + a0) + r / (1.0 - r);
    Ok(Bounded::new(
        a0 + s.m_f0 + factor * s.norm0_sq + lambda * s.area_ratio,
        s.tail_budget + factor * s.square_budget + lambda * s.area_budget,
    ))
}

/// Lacunary part `g` with `f(z) = z^m g(z^p)`, reported as a support error otherwise.
fn lacunary_part(f: &TruncatedSeries, p: usize, m: usize) -> Result<TruncatedSeries> {
    f.lacunary_part(p, m)
}

/// `Σ_{n≥1} |b_n|² s^{2n}` and its budget.
fn lacunary_square_sum(g: &TruncatedSeries, s: f64) -> Result<Bounded> {
    let s2 = powers(s * s, g.order() + 1);
    let value = g.coeffs().iter().enumerate().skip(1).map(|(n, b)| b.norm_sqr() * s2[n]).sum();
    Ok(Bounded::new(value, g.square_tail(s)?))
}

/// `A(r) = Σ_{n≥1} |b_{2n}| s^{2n} + (1/(1+|b_0|) + s²/(1−s²)) Σ_{n≥1} |b_n|² s^{2n}`
/// with `s = r^p`.
pub fn lemma2_a(f: &TruncatedSeries, p: usize, m: usize, r: f64) -> Result<Bounded> {
    check_radius(r)?;
    let g = lacunary_part(f, p, m)?;
    let s = r.powi(p as i32);
    let sn = powers(s, g.order() + 1);
    let even: f64 = (2..=g.order()).step_by(2).map(|n| g.coeff(n).norm() * sn[n]).sum();
    let squares = lacunary_square_sum(&g, s)?;
    let factor = 1.0 / (1.0 + g.constant().norm()) + s * s / (1.0 - s * s);
    Ok(Bounded::new(
        even + factor * squares.value,
        g.tail_error(s)? + factor * squares.budget,
    ))
}

/// `sup_{|z|=r} |f(z)| + r^m A(r)` on the θ-grid.
pub fn lemma2_lhs(
    f: &TruncatedSeries,
    p: usize,
    m: usize,
    r: f64,
    theta_samples: usize,
) -> Result<Bounded> {
    let a = lemma2_a(f, p, m, r)?;
    let (max_abs, _) = circle_max(f, r, theta_samples, |v| v.norm());
    let rm = r.powi(m as i32);
    Ok(Bounded::new(
        max_abs + rm * a.value,
        f.tail_error(r)? + rm * a.budget,
    ))
}

/// The six sides of the even/odd split inequalities for `f(z) = z^m g(z^p)`
/// and of their sum, all evaluated on the weights at `r^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSides {
    pub lhs41: f64,
    pub rhs41: f64,
    pub lhs42: f64,
    pub rhs42: f64,
    pub lhs44: f64,
    pub rhs44: f64,
    pub budget: f64,
}

pub fn lemma4_sides(
    f: &TruncatedSeries,
    w: &WeightSequence,
    p: usize,
    m: usize,
    r: f64,
) -> Result<SplitSides> {
    check_radius(r)?;
    if m > p {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds p = {p}")));
    }
    let g = lacunary_part(f, p, m)?;
    let s = r.powi(p as i32);
    let t = WeightTable::new(w, s, 2 * g.order() + 3)?;
    let b: Vec<f64> = moduli(&g);
    let b0 = b[0];

    let even_linear: f64 = (0..b.len()).step_by(2).map(|n| b[n] * t.zeta(n)).sum();
    let odd_linear: f64 = (1..b.len()).step_by(2).map(|n| b[n] * t.zeta(n)).sum();
    let mut sq41 = 0.0;
    let mut sq42 = b0 * b0 * t.parity_tail(1);
    let mut sq44 = 0.0;
    for n in 1..b.len() {
        let b2 = b[n] * b[n];
        let head = t.zeta(2 * n) / (1.0 + b0);
        sq41 += b2 * (head + t.parity_tail(2 * n + 2));
        sq42 += b2 * t.parity_tail(2 * n + 1);
        sq44 += b2 * (head + t.phi(2 * n + 1));
    }
    let budget = t.envelope() * (g.tail_error(s)? + g.square_tail(s)? / (1.0 - s));
    Ok(SplitSides {
        lhs41: even_linear + sq41,
        rhs41: b0 * t.zeta(0) + (1.0 - b0 * b0) * t.parity_tail(2),
        lhs42: odd_linear + sq42,
        rhs42: t.parity_tail(1),
        lhs44: even_linear - b0 * t.zeta(0) + odd_linear + sq44,
        rhs44: (1.0 - b0 * b0) * t.phi(1),
        budget,
    })
}

/// Which parity pattern the product degrees `τ_m + p·τ_n` follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    /// Even-`n` degrees share one parity, odd-`n` degrees the other.
    Alternating { odd_sign: Parity },
    /// All degrees `n ≥ 1` share one parity.
    Uniform { parity: Parity },
}

/// Classifies the degrees of `ζ*_m(r) ζ*_n(r^p)` over every `n ≥ 1` in the table.
pub fn parity_case(w: &WeightSequence, p: usize, m: usize) -> Result<ParityCase> {
    let len = w
        .table_len()
        .ok_or_else(|| Error::InvalidParameter("parity cases need monomial weights".into()))?;
    if m >= len {
        return Err(Error::IndexOutOfTable { index: m, len });
    }
    if len < 2 {
        return Err(Error::ParityInconsistent("table has no entry with n ≥ 1".into()));
    }
    let common = |start: usize, step: usize| -> Result<Option<Parity>> {
        let mut seen = None;
        for n in (start..len).step_by(step) {
            let par = w.degree_parity(p, m, n)?;
            match seen {
                None => seen = Some(par),
                Some(prev) if prev != par => return Ok(None),
                _ => {}
            }
        }
        Ok(seen)
    };
    let odd = common(1, 2)?;
    let even = if len > 2 { common(2, 2)? } else { odd };
    match (odd, even) {
        (Some(o), Some(e)) if o == e => Ok(ParityCase::Uniform { parity: o }),
        (Some(o), Some(_)) => Ok(ParityCase::Alternating { odd_sign: o }),
        _ => Err(Error::ParityInconsistent(format!(
            "degrees τ_m + {p}·τ_n for m = {m} have mixed parity within the even or odd n"
        ))),
    }
}

/// `A*`, `B*`, `C*` and (when every degree shares one parity) `D*` for
/// `f(z) = z^m g(z^p)` with monomial weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AltRefined {
    pub a_star: f64,
    pub b_star: f64,
    pub c_star: f64,
    pub d_star: Option<f64>,
    pub case: ParityCase,
    /// `ζ*_m(r)`, used by the variant that keeps the leading coefficient.
    pub zeta_m: f64,
    /// `(−1)^{τ_m}`.
    pub lead_sign: f64,
    pub budget: f64,
}

pub fn alt_refined(
    f: &TruncatedSeries,
    w: &WeightSequence,
    p: usize,
    m: usize,
    r: f64,
) -> Result<AltRefined> {
    check_radius(r)?;
    if m > p {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds p = {p}")));
    }
    let case = parity_case(w, p, m)?;
    let g = lacunary_part(f, p, m)?;
    let s = r.powi(p as i32);
    let len = w.table_len().expect("monomial weights checked by parity_case");
    let t = WeightTable::new(w, s, (2 * g.order() + 3).min(len))?;
    let zeta_m = w.zeta(m, r)?;
    let b = moduli(&g);
    let upto = b.len().min(len);

    let mut b_star = 0.0;
    for (n, bn) in b.iter().enumerate().take(upto).skip(1) {
        b_star += w.degree_parity(p, m, n)?.sign() * bn * t.zeta(n);
    }
    let odd_sign = match case {
        ParityCase::Alternating { odd_sign } => odd_sign,
        ParityCase::Uniform { parity } => parity,
    };
    let odd_tails: f64 = b
        .iter()
        .enumerate()
        .map(|(n, bn)| bn * bn * t.parity_tail(2 * n + 1))
        .sum();
    let c_star = zeta_m * (b_star + odd_sign.sign() * odd_tails);
    let d_star = match case {
        ParityCase::Uniform { parity } => {
            let refinement: f64 = b
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, bn)| bn * bn * (t.zeta(2 * n) / (1.0 + b[0]) + t.phi(2 * n + 1)))
                .sum();
            Some(zeta_m * (b_star + parity.sign() * refinement))
        }
        ParityCase::Alternating { .. } => None,
    };
    let lead = w.monomial_table().expect("monomial").degree(m)?;
    let budget = zeta_m * t.envelope() * (g.tail_error(s)? + g.square_tail(s)? / (1.0 - s));
    Ok(AltRefined {
        a_star: zeta_m * b_star,
        b_star,
        c_star,
        d_star,
        case,
        zeta_m,
        lead_sign: Parity::of(lead as u64).sign(),
        budget,
    })
}

/// `|(−1)^{τ_m} ζ*_m(r) |a_m| + D*(r)|`, the variant keeping the leading coefficient.
pub fn leading_d_star(f: &TruncatedSeries, w: &WeightSequence, p: usize, m: usize, r: f64) -> Result<Bounded> {
    let alt = alt_refined(f, w, p, m, r)?;
    let d = alt.d_star.ok_or_else(|| {
        Error::ParityInconsistent("degrees alternate in parity; D* is undefined".into())
    })?;
    let lead = alt.lead_sign * alt.zeta_m * f.coeff(m).norm();
    Ok(Bounded::new((lead + d).abs(), alt.budget))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem6Variant {
    /// `| |f(z)| + E_{f_m}(r) |`, maximized over the θ-grid.
    AbsF,
    /// `| r^{m+p}/(1+r^p) + E_{f_m}(r) |`.
    FixedTerm,
}

/// `E_{f_m}(r) = r^m [Σ (−1)^{np+m} |b_n| r^{np} + (−1)^m (1/(1+|b_0|) + r^{2p}/(1−r^{2p})) Σ |b_n|² r^{2np}]`.
pub fn alternating_refined_e(f: &TruncatedSeries, p: usize, m: usize, r: f64) -> Result<Bounded> {
    check_radius(r)?;
    let g = lacunary_part(f, p, m)?;
    let s = r.powi(p as i32);
    let sn = powers(s, g.order() + 1);
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let alternating: f64 = (1..=g.order())
        .map(|n| sign(n * p + m) * g.coeff(n).norm() * sn[n])
        .sum();
    let squares = lacunary_square_sum(&g, s)?;
    let factor = 1.0 / (1.0 + g.constant().norm()) + s * s / (1.0 - s * s);
    let rm = r.powi(m as i32);
    Ok(Bounded::new(
        rm * (alternating + sign(m) * factor * squares.value),
        rm * (g.tail_error(s)? + factor * squares.budget),
    ))
}

/// Left side of the refined alternating-series inequality for `m` even, `p` odd.
pub fn theorem6_lhs(
    f: &TruncatedSeries,
    p: usize,
    m: usize,
    r: f64,
    theta_samples: usize,
    variant: Theorem6Variant,
) -> Result<Bounded> {
    if p % 2 == 0 || m % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "need p odd and m even, got p = {p}, m = {m}"
        )));
    }
    if m > p {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds p = {p}")));
    }
    let e = alternating_refined_e(f, p, m, r)?;
    match variant {
        Theorem6Variant::AbsF => {
            let (value, _) = circle_max(f, r, theta_samples, |v| (v.norm() + e.value).abs());
            Ok(Bounded::new(value, e.budget + f.tail_error(r)?))
        }
        Theorem6Variant::FixedTerm => {
            let rp = r.powi(p as i32);
            let lead = r.powi(m as i32) * rp / (1.0 + rp);
            Ok(Bounded::new((lead + e.value).abs(), e.budget))
        }
    }
}

/// `sup_{|z|=r} | |f(z)| + A_{f_0}(r) |` on the θ-grid.
pub fn alternating_modulus(f: &TruncatedSeries, r: f64, theta_samples: usize) -> Result<Bounded> {
    let s = series_stats(f, r)?;
    let (value, _) = circle_max(f, r, theta_samples, |v| (v.norm() + s.a_f0).abs());
    Ok(Bounded::new(value, 2.0 * s.tail_budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{FunctionSpec, Sign};
    use crate::weights::MonomialTable;

    fn realize(spec: FunctionSpec, r: f64) -> TruncatedSeries {
        spec.realize_for_radius(r).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn stats_examples() {
        let phi = realize(FunctionSpec::phi(0.5).unwrap(), 0.5);
        let s = series_stats(&phi, 0.5).unwrap();
        assert!(close(s.m_f, 1.0, 1e-12));

        let psi = realize(FunctionSpec::psi(0.5).unwrap(), 0.4);
        let s = series_stats(&psi, 0.4).unwrap();
        let expected = 4.0 * 0.25 * 0.16 / (0.84 * 0.84);
        assert!(close(s.area_ratio, expected, 1e-12));
        assert!(close(s.area_ratio, 0.226_757, 1e-6));

        let psi = realize(FunctionSpec::psi(0.5).unwrap(), 0.5);
        let s = series_stats(&psi, 0.5).unwrap();
        assert!(close(s.a_f0, -1.0 / 3.0, 1e-12));

        let s = series_stats(&phi, 0.0).unwrap();
        assert_eq!((s.m_f, s.a_f, s.norm_sq, s.area_ratio), (0.5, 0.5, 0.25, 0.0));
    }

    #[test]
    fn weighted_sum_examples() {
        let phi = realize(FunctionSpec::phi(0.3).unwrap(), 0.6);
        let geo = weighted_sum(&phi, &WeightSequence::Geometric, 0, 0.6).unwrap();
        assert!(close(geo.value, series_stats(&phi, 0.6).unwrap().m_f, 1e-15));

        let r: f64 = 0.6;
        let odd = weighted_sum(&phi, &WeightSequence::OddOnly, 1, r).unwrap();
        let direct: f64 = (1..phi.order()).step_by(2).map(|n| phi.coeff(n).norm() * r.powi(n as i32)).sum();
        assert!(close(odd.value, direct, 1e-15));
        let norm = series_stats(&phi, r).unwrap().norm_sq;
        assert!(odd.value <= r * (1.0 - norm) / (1.0 - r * r) + 1e-12);

        let lac = weighted_sum(&phi, &WeightSequence::Lacunary(3), 0, r).unwrap();
        let direct: f64 = (0..=phi.order()).step_by(3).map(|n| phi.coeff(n).norm() * r.powi(n as i32)).sum();
        assert!(close(lac.value, direct, 1e-15));
    }

    #[test]
    fn refinement_g_examples() {
        let r = 0.2;
        let phi = realize(FunctionSpec::phi(0.5).unwrap(), r);
        let g = refinement_g(&phi, &WeightSequence::Geometric, r).unwrap();
        let s = series_stats(&phi, r).unwrap();
        assert!(close(g.value, (r / (1.0 - r) + 1.0 / 1.5) * s.norm0_sq, 1e-15));
        // brute-force double sum
        let brute: f64 = (1..=phi.order())
            .map(|n| {
                let tail: f64 = (2 * n + 1..2 * n + 400).map(|k| r.powi(k as i32)).sum();
                phi.coeff(n).norm_sqr() * (r.powi(2 * n as i32) / 1.5 + tail)
            })
            .sum();
        assert!(close(g.value, brute, 1e-10));
        let constant = TruncatedSeries::polynomial(vec![Complex64::new(0.4, 0.0)]).unwrap();
        assert_eq!(refinement_g(&constant, &WeightSequence::Harmonic, 0.7).unwrap().value, 0.0);
    }

    #[test]
    fn lemma_g_equality_for_phi() {
        for w in [WeightSequence::Geometric, WeightSequence::Harmonic, WeightSequence::Lacunary(2)] {
            for a in [0.0, 0.3, 0.8] {
                let r = 0.3;
                let f = realize(FunctionSpec::phi(a).unwrap(), r);
                let sides = lemma_g_sides(&f, &w, 1.0, r).unwrap();
                assert!((sides.lhs - sides.rhs).abs() <= sides.budget + 1e-12, "{w} a={a}");
            }
        }
    }

    #[test]
    fn bohr_power_for_psi_matches_closed_form() {
        let (a, p, r) = (0.4_f64, 0.5, 0.3);
        let psi = realize(FunctionSpec::psi(a).unwrap(), r);
        let w = WeightSequence::Harmonic;
        let value = bohr_power(&psi, &w, p, r).unwrap().value;
        let z0 = w.zeta(0, r).unwrap();
        let phi1 = w.phi(1, r).unwrap();
        let closed = z0 + 2.0 * (1.0 - a) * (phi1 - (1.0 - a.powf(p)) / (2.0 * (1.0 - a)) * z0);
        assert!(close(value, closed, 1e-12));
        let rotated = TruncatedSeries::polynomial(vec![Complex64::new(0.0, 0.5)]).unwrap();
        assert!(matches!(bohr_power(&rotated, &w, 1.0, 0.2), Err(Error::Domain(_))));
    }

    #[test]
    fn rogosinski_for_psi_on_real_axis() {
        let (a, q, m, r) = (0.3_f64, 2.0, 2, 0.25_f64);
        let psi = realize(FunctionSpec::psi(a).unwrap(), r);
        let term = rogosinski_term(&psi, q, m, r, 256).unwrap();
        let rm = r.powi(m as i32);
        let closed = (2.0 * (1.0 - a) * rm / (1.0 - rm)).powf(q);
        assert!(close(term.value, closed, 1e-12));
        let big_m = rogosinski_e(&psi, &WeightSequence::Geometric, 1.0, 1.0, 60, r, 64).unwrap();
        let base = bohr_power(&psi, &WeightSequence::Geometric, 1.0, r).unwrap();
        assert!(close(big_m.value, base.value, 1e-30_f64.max(2.0 * r.powi(60))));
    }

    #[test]
    fn d_lambda_examples() {
        let constant = TruncatedSeries::polynomial(vec![Complex64::new(0.4, 0.0)]).unwrap();
        assert_eq!(d_lambda(&constant, 3.0, 0.5).unwrap().value, 0.4);
        let psi = realize(FunctionSpec::psi(0.47431).unwrap(), 0.24683);
        assert!(d_lambda(&psi, 0.0, 0.24683).unwrap().value <= 1.0);
    }

    #[test]
    fn lemma2_a_closed_form_for_lacunary_mobius() {
        let (a, p, m, r) = (0.7_f64, 2, 1, 0.5_f64);
        let f = realize(FunctionSpec::lacunary_mobius(a, p, m, Sign::Plus).unwrap(), r);
        let value = lemma2_a(&f, p, m, r).unwrap();
        let s2 = r.powi(2 * p as i32);
        assert!(close(value.value, (1.0 - a * a) * s2 / (1.0 - s2), 1e-10));
        assert!(lemma2_lhs(&f, p, m, 0.0, 8).unwrap().value == 0.0);
        let g = realize(FunctionSpec::phi(0.2).unwrap(), 0.5);
        assert!(matches!(lemma2_a(&g, 2, 1, 0.5), Err(Error::SupportViolation { .. })));
    }

    #[test]
    fn lemma2_single_coefficient() {
        let f = FunctionSpec::monomial(1).realize().unwrap();
        let r = 0.3_f64;
        let lhs = lemma2_lhs(&f, 1, 0, r, 64).unwrap();
        // b_1 = 1: A = (1 + r²/(1−r²))·r²
        let a = (1.0 + r * r / (1.0 - r * r)) * r * r;
        assert!(close(lhs.value, r + a, 1e-15));
    }

    #[test]
    fn lemma4_equalities_and_identity() {
        for (p, m) in [(1, 0), (2, 1), (3, 2)] {
            for a in [0.0, 0.4, 0.9] {
                let r = 0.6;
                let f = realize(FunctionSpec::lacunary_mobius(a, p, m, Sign::Minus).unwrap(), r);
                for w in [WeightSequence::Geometric, WeightSequence::Harmonic] {
                    let s = lemma4_sides(&f, &w, p, m, r).unwrap();
                    assert!((s.lhs41 - s.rhs41).abs() <= s.budget + 1e-12, "{w} p={p} m={m} a={a}");
                    assert!((s.lhs44 - s.rhs44).abs() <= s.budget + 1e-12);
                    assert!(s.lhs42 <= s.rhs42 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn alt_refined_examples() {
        let plain = WeightSequence::plain_monomial();
        // p odd, m even: alternating case, f = z^{p+m}
        let (p, m, r) = (1, 0, 0.5_f64);
        let f = FunctionSpec::monomial(p + m).realize().unwrap();
        let alt = alt_refined(&f, &plain, p, m, r).unwrap();
        assert!(matches!(alt.case, ParityCase::Alternating { odd_sign: Parity::Odd }));
        let expected = r / (1.0 - r * r);
        assert!(close(alt.c_star.abs(), expected, 1e-15));
        assert!(alt.d_star.is_none());
        // p even, m even: uniform
        let (p, m) = (2, 0);
        let f = FunctionSpec::monomial(p + m).realize().unwrap();
        let alt = alt_refined(&f, &plain, p, m, r).unwrap();
        let s = r * r;
        assert!(close(alt.d_star.unwrap().abs(), s / (1.0 - s), 1e-15));
        // r = 0
        let alt = alt_refined(&f, &plain, p, m, 0.0).unwrap();
        assert_eq!((alt.a_star, alt.b_star, alt.c_star, alt.d_star), (0.0, 0.0, 0.0, Some(0.0)));
    }

    #[test]
    fn parity_inconsistent_weights_are_rejected() {
        let t = MonomialTable::new(vec![(1.0, 0), (1.0, 1), (1.0, 3), (1.0, 4)]).unwrap();
        let f = FunctionSpec::monomial(1).realize().unwrap();
        assert!(matches!(
            alt_refined(&f, &WeightSequence::Monomial(t), 1, 0, 0.3),
            Err(Error::ParityInconsistent(_))
        ));
    }

    #[test]
    fn theorem6_examples() {
        // f = z^{2p+m} at the root of r^{2p} + r^{p+m} − 1
        let (p, m) = (1usize, 0usize);
        let r = (5f64.sqrt() - 1.0) / 2.0;
        let f = FunctionSpec::monomial(2 * p + m).realize().unwrap();
        let v = theorem6_lhs(&f, p, m, r, 64, Theorem6Variant::FixedTerm).unwrap();
        assert!(close(v.value, 1.0, 1e-14));
        let constant = TruncatedSeries::polynomial(vec![Complex64::new(0.3, 0.0)]).unwrap();
        let v = theorem6_lhs(&constant, 1, 0, 0.4, 64, Theorem6Variant::AbsF).unwrap();
        assert!(close(v.value, 0.3, 1e-16));
        assert!(theorem6_lhs(&constant, 2, 0, 0.4, 64, Theorem6Variant::AbsF).is_err());
    }
}
