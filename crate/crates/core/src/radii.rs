//! Radius catalog: every radius is the minimal positive root of a residual
//! `g(r)` that is negative on the region where its inequality holds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::WeightSequence;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SCAN_STEP: f64 = 1e-3;
/// Closed forms and solver roots must agree to this.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
const SCAN_END: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub value: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// First sign change of `g` scanning upward from `scan_step`, refined by bisection.
pub fn find_minimal_root(g: impl Fn(f64) -> f64, tol: f64, scan_step: f64) -> Result<RootResult> {
    find_root_in(g, scan_step, SCAN_END, tol, scan_step)
}

/// Like [`find_minimal_root`] with the scan restricted to `[lo, hi]`.
pub fn find_root_in(
    g: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    scan_step: f64,
) -> Result<RootResult> {
    if !(tol >= 1e-14 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tol = {tol} below 1e-14")));
    }
    if !(scan_step > 0.0 && lo < hi && lo >= 0.0 && hi < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "scan [{lo}, {hi}] with step {scan_step} is not inside [0, 1)"
        )));
    }
    let g0 = g(lo);
    if g0 == 0.0 {
        return Ok(RootResult { value: lo, residual: 0.0, bracket: (lo, lo), iterations: 0 });
    }
    let mut a = lo;
    let mut iterations = 0;
    let steps = ((hi - lo) / scan_step).ceil() as usize;
    let mut found = None;
    for i in 1..=steps {
        let b = (lo + i as f64 * scan_step).min(hi);
        let gb = g(b);
        iterations += 1;
        if gb == 0.0 {
            return Ok(RootResult { value: b, residual: 0.0, bracket: (a, b), iterations });
        }
        if gb.signum() != g0.signum() {
            found = Some(b);
            break;
        }
        a = b;
    }
    let mut b = found.ok_or(Error::NoSignChange { lo, hi })?;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let gm = g(mid);
        iterations += 1;
        if gm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if gm.signum() == g0.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    let value = 0.5 * (a + b);
    Ok(RootResult { value, residual: g(value), bracket: (a, b), iterations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusId {
    ClassicalThird,
    TheoremCR,
    Theorem1R1,
    Theorem1Rp,
    LacunaryKp,
    Corollary1R1,
    Theorem2Rpmq,
    Theorem3Rlambda2,
    Theorem4Rho,
    TheoremDRstar,
    TheoremDR0,
    Lemma2Rpm,
    Theorem5Rstar,
    Theorem5RstarII,
    Corollary5Rtilde,
    Corollary7Rpm,
    TheoremERadius,
    Corollary2Radius,
}

impl RadiusId {
    pub const ALL: [RadiusId; 18] = [
        Self::ClassicalThird,
        Self::TheoremCR,
        Self::Theorem1R1,
        Self::Theorem1Rp,
        Self::LacunaryKp,
        Self::Corollary1R1,
        Self::Theorem2Rpmq,
        Self::Theorem3Rlambda2,
        Self::Theorem4Rho,
        Self::TheoremDRstar,
        Self::TheoremDR0,
        Self::Lemma2Rpm,
        Self::Theorem5Rstar,
        Self::Theorem5RstarII,
        Self::Corollary5Rtilde,
        Self::Corollary7Rpm,
        Self::TheoremERadius,
        Self::Corollary2Radius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ClassicalThird => "classical_third",
            Self::TheoremCR => "theoremC_R",
            Self::Theorem1R1 => "theorem1_R1",
            Self::Theorem1Rp => "theorem1_Rp",
            Self::LacunaryKp => "lacunary_kp",
            Self::Corollary1R1 => "corollary1_r1",
            Self::Theorem2Rpmq => "theorem2_Rpmq",
            Self::Theorem3Rlambda2 => "theorem3_Rlambda2",
            Self::Theorem4Rho => "theorem4_rho",
            Self::TheoremDRstar => "theoremD_rstar",
            Self::TheoremDR0 => "theoremD_r0",
            Self::Lemma2Rpm => "lemma2_rpm",
            Self::Theorem5Rstar => "theorem5_rstar",
            Self::Theorem5RstarII => "theorem5_Rstar",
            Self::Corollary5Rtilde => "corollary5_rtilde",
            Self::Corollary7Rpm => "corollary7_Rpm",
            Self::TheoremERadius => "theoremE_radius",
            Self::Corollary2Radius => "corollary2_radius",
        }
    }
}

impl fmt::Display for RadiusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RadiusId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown radius id `{s}`")))
    }
}

/// Parameters of a radius query; each id reads only the fields it needs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RadiusParams {
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub a0: Option<f64>,
    pub lambda: Option<f64>,
    pub weights: Option<WeightSequence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusQuery {
    pub id: RadiusId,
    pub params: RadiusParams,
}

type Residual = Box<dyn Fn(f64) -> f64 + Send + Sync>;

fn need<T: Copy>(value: Option<T>, name: &str, id: RadiusId) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{id} needs parameter `{name}`")))
}

fn positive_int(value: f64, name: &str) -> Result<usize> {
    if value >= 1.0 && value.fract() == 0.0 && value <= 1e6 {
        Ok(value as usize)
    } else {
        Err(Error::InvalidParameter(format!("{name} = {value} must be a positive integer")))
    }
}

fn unit_a0(a0: f64) -> Result<f64> {
    if (0.0..1.0).contains(&a0) {
        Ok(a0)
    } else {
        Err(Error::InvalidParameter(format!("a0 = {a0} outside [0, 1)")))
    }
}

impl RadiusQuery {
    pub fn new(id: RadiusId, params: RadiusParams) -> Self {
        Self { id, params }
    }

    pub fn bare(id: RadiusId) -> Self {
        Self::new(id, RadiusParams::default())
    }

    fn weights(&self) -> WeightSequence {
        self.params.weights.clone().unwrap_or(WeightSequence::Geometric)
    }

    fn monomial_weights(&self) -> Result<WeightSequence> {
        let w = self.params.weights.clone().unwrap_or_else(WeightSequence::plain_monomial);
        if w.monomial_table().is_none() {
            return Err(Error::InvalidParameter(format!("{} needs monomial weights", self.id)));
        }
        Ok(w)
    }

    fn lacunary_pm(&self, strict: bool) -> Result<(usize, usize)> {
        let p = positive_int(need(self.params.p, "p", self.id)?, "p")?;
        let m = need(self.params.m, "m", self.id)?;
        if m > p || (strict && m == p) {
            return Err(Error::InvalidParameter(format!("m = {m} too large for p = {p}")));
        }
        Ok((p, m))
    }

    /// The residual `g` whose minimal positive root is the radius, with `g < 0` below it.
    pub fn residual(&self) -> Result<Residual> {
        let id = self.id;
        let ps = &self.params;
        Ok(match id {
            RadiusId::ClassicalThird => Box::new(|r: f64| 2.0 * r / (1.0 - r) - 1.0),
            RadiusId::TheoremCR | RadiusId::Theorem1R1 => {
                let p = need(ps.p, "p", id)?;
                let max_p = if id == RadiusId::TheoremCR { 2.0 } else { 1.0 };
                if !(p > 0.0 && p <= max_p) {
                    return Err(Error::InvalidParameter(format!("p = {p} outside (0, {max_p}]")));
                }
                let w = self.weights();
                Box::new(move |r| 2.0 / p * w.phi_raw(1, r) - w.zeta_raw(0, r))
            }
            RadiusId::Theorem1Rp => {
                let p = positive_int(need(ps.p, "p", id)?, "p")?;
                let a0 = unit_a0(need(ps.a0, "a0", id)?)?;
                let partial: f64 = (0..p).map(|j| a0.powi(j as i32)).sum();
                let w = self.weights();
                Box::new(move |r| 2.0 / partial * w.phi_raw(1, r) - w.zeta_raw(0, r))
            }
            RadiusId::LacunaryKp => {
                let k = need(ps.k, "k", id)?;
                let p = need(ps.p, "p", id)?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1]")));
                }
                let w = WeightSequence::lacunary(k)?;
                Box::new(move |r| 2.0 / p * w.phi_raw(1, r) - w.zeta_raw(0, r))
            }
            RadiusId::Corollary1R1 => {
                let w = self.weights();
                Box::new(move |r| {
                    let even = w.phi_even_sum(r).unwrap_or(f64::INFINITY);
                    2.0 * w.phi_raw(1, r) + 4.0 * even - w.zeta_raw(0, r)
                })
            }
            RadiusId::Theorem2Rpmq => {
                let p = need(ps.p, "p", id)?;
                let q = need(ps.q, "q", id)?;
                let m = need(ps.m, "m", id)?;
                if !(q >= 1.0) || m == 0 {
                    return Err(Error::InvalidParameter(format!("need q ≥ 1 and m ≥ 1, got q = {q}, m = {m}")));
                }
                let w = self.weights();
                let extra = move |r: f64| {
                    let rm = r.powi(m as i32);
                    (rm / (1.0 - rm)).powf(q)
                };
                if p > 0.0 && p <= 1.0 {
                    Box::new(move |r| {
                        2.0 / p * (w.phi_raw(1, r) + 2f64.powf(q - 1.0) * extra(r)) - w.zeta_raw(0, r)
                    })
                } else if p == 2.0 {
                    let a0 = unit_a0(need(ps.a0, "a0", id)?)?;
                    Box::new(move |r| {
                        (2.0 * w.phi_raw(1, r) + 2f64.powf(q) * (1.0 - a0).powf(q - 1.0) * extra(r))
                            / (1.0 + a0)
                            - w.zeta_raw(0, r)
                    })
                } else {
                    return Err(Error::InvalidParameter(format!("p = {p} must lie in (0, 1] or equal 2")));
                }
            }
            RadiusId::Theorem3Rlambda2 => {
                let lambda = need(ps.lambda, "lambda", id)?;
                if !(lambda > 0.0) {
                    return Err(Error::InvalidParameter(format!("λ = {lambda} must be positive")));
                }
                let a0 = unit_a0(need(ps.a0, "a0", id)?)?;
                let w = self.weights();
                Box::new(move |r| {
                    let area = r * r / (1.0 - r * r).powi(2);
                    2.0 / (1.0 + a0) * (w.phi_raw(1, r) + 2.0 * lambda * (1.0 - a0) * area)
                        - w.zeta_raw(0, r)
                })
            }
            RadiusId::Theorem4Rho => {
                let a0 = unit_a0(need(ps.a0, "a0", id)?)?;
                Box::new(move |r| (5.0 - 2.0 * a0) * r - 1.0)
            }
            RadiusId::TheoremDRstar => Box::new(|r| -theorem_d_phi(1.0, r)),
            RadiusId::TheoremDR0 => {
                let a0 = unit_a0(need(ps.a0, "a0", id)?)?;
                Box::new(move |r| -theorem_d_phi(1.0 - a0, r))
            }
            RadiusId::Lemma2Rpm => {
                let (p, m) = self.lacunary_pm(true)?;
                Box::new(move |r| -lemma2_polynomial(p, m, r))
            }
            RadiusId::TheoremERadius => Box::new(|r| -lemma2_polynomial(1, 0, r)),
            RadiusId::Theorem5Rstar | RadiusId::Theorem5RstarII => {
                let (p, m) = self.lacunary_pm(false)?;
                let w = self.monomial_weights()?;
                w.zeta(m, 0.5)?;
                let odd = id == RadiusId::Theorem5Rstar;
                Box::new(move |r| {
                    let s = r.powi(p as i32);
                    let sum = if odd { w.parity_tail_raw(1, s) } else { w.phi_raw(1, s) };
                    w.zeta_raw(m, r) * sum - 1.0
                })
            }
            RadiusId::Corollary5Rtilde => {
                let (p, m) = self.lacunary_pm(false)?;
                let w = self.monomial_weights()?;
                w.zeta(m, 0.5)?;
                Box::new(move |r| {
                    let s = w.phi_raw(1, r.powi(p as i32));
                    let zm = w.zeta_raw(m, r);
                    // maximizing over |a_m| gives ζ*_m when S ≤ 1/2, else the stated equation;
                    // ζ*_m + 4S(Sζ*_m − 1) is regrouped to avoid cancellation near S = 1/2
                    let stated = zm * (2.0 * s - 1.0).powi(2) - 4.0 * s * (1.0 - zm);
                    stated.min(2.0 * s - 1.0)
                })
            }
            RadiusId::Corollary7Rpm => {
                let (p, m) = self.lacunary_pm(false)?;
                Box::new(move |r| r.powi(2 * p as i32) + r.powi((p + m) as i32) - 1.0)
            }
            RadiusId::Corollary2Radius => Box::new(|r| {
                2.0 * (r / (1.0 - r) + 2.0 * (r / (1.0 - r)).powi(2)) - 1.0
            }),
        })
    }

    /// Closed form, when one is known for these parameters.
    pub fn closed_form(&self) -> Option<f64> {
        let ps = &self.params;
        let geometric = matches!(ps.weights, None | Some(WeightSequence::Geometric));
        match self.id {
            RadiusId::ClassicalThird => Some(1.0 / 3.0),
            RadiusId::Theorem1R1 | RadiusId::TheoremCR if geometric => ps.p.map(|p| p / (2.0 + p)),
            RadiusId::Theorem1Rp if geometric && ps.p == Some(2.0) => {
                ps.a0.map(|a| (1.0 + a) / (3.0 + a))
            }
            RadiusId::LacunaryKp => match (ps.k, ps.p) {
                (Some(k), Some(p)) => Some((p / (2.0 + p)).powf(1.0 / k as f64)),
                _ => None,
            },
            RadiusId::Theorem4Rho => ps.a0.map(|a| 1.0 / (5.0 - 2.0 * a)),
            RadiusId::Lemma2Rpm if ps.p == Some(1.0) && ps.m == Some(0) => Some(2f64.sqrt() - 1.0),
            RadiusId::TheoremERadius => Some(2f64.sqrt() - 1.0),
            RadiusId::Corollary2Radius => Some(5f64.sqrt() - 2.0),
            RadiusId::Corollary7Rpm if ps.p == Some(1.0) && ps.m == Some(0) => {
                Some((5f64.sqrt() - 1.0) / 2.0)
            }
            RadiusId::Theorem5Rstar | RadiusId::Theorem5RstarII | RadiusId::Corollary5Rtilde => {
                let plain = ps.weights.as_ref().is_none_or(|w| {
                    w.monomial_table()
                        .is_some_and(|t| *t == crate::weights::MonomialTable::plain(t.len()))
                });
                match (self.id, ps.p, ps.m) {
                    (RadiusId::Theorem5Rstar, Some(p), Some(0)) if plain && p == 1.0 => {
                        Some((5f64.sqrt() - 1.0) / 2.0)
                    }
                    (RadiusId::Theorem5RstarII, Some(p), Some(0)) if plain => Some(0.5f64.powf(1.0 / p)),
                    (RadiusId::Corollary5Rtilde, Some(p), Some(0)) if plain && p == 2.0 => {
                        Some(1.0 / 3f64.sqrt())
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Whether the residual reads the named parameter (`p`, `q`, `m`, `k`,
    /// `a0` or `lambda`) for these settings.
    pub fn depends_on(&self, name: &str) -> bool {
        use RadiusId::*;
        let used: &[&str] = match self.id {
            ClassicalThird | Corollary1R1 | TheoremDRstar | TheoremERadius | Corollary2Radius => &[],
            TheoremCR | Theorem1R1 => &["p"],
            Theorem1Rp => &["p", "a0"],
            LacunaryKp => &["k", "p"],
            Theorem2Rpmq if self.params.p == Some(2.0) => &["p", "q", "m", "a0"],
            Theorem2Rpmq => &["p", "q", "m"],
            Theorem3Rlambda2 => &["lambda", "a0"],
            Theorem4Rho | TheoremDR0 => &["a0"],
            Lemma2Rpm | Theorem5Rstar | Theorem5RstarII | Corollary5Rtilde | Corollary7Rpm => &["p", "m"],
        };
        used.contains(&name)
    }

    /// Scan window for the residual.
    fn window(&self) -> (f64, f64) {
        match self.id {
            RadiusId::TheoremDR0 => (THEOREM_D_RSTAR - 0.01, 1.0 / 3.0 + 0.01),
            _ => (DEFAULT_SCAN_STEP, SCAN_END),
        }
    }
}

/// Root of `3r³ − 5r² − 3r + 1` in `(0, 1)`, used only to place the scan window.
const THEOREM_D_RSTAR: f64 = 0.246_829_826_210_458_5;

/// Solves the query; closed forms are returned after checking the solver agrees.
pub fn radius(query: &RadiusQuery, tol: f64) -> Result<RootResult> {
    let g = query.residual()?;
    let (lo, hi) = query.window();
    let solved = find_root_in(&g, lo, hi, tol, DEFAULT_SCAN_STEP)?;
    match query.closed_form() {
        Some(closed) => {
            if (closed - solved.value).abs() > CLOSED_FORM_TOL {
                return Err(Error::ClosedFormMismatch { closed, solved: solved.value });
            }
            Ok(RootResult { value: closed, residual: g(closed), ..solved })
        }
        None => Ok(solved),
    }
}

/// `L_μ(x)`, the numerator polynomial governing the area-weighted refinement.
pub fn theorem4_l(mu: f64, x: f64) -> f64 {
    let (x2, x3, x4, x5) = (x * x, x.powi(3), x.powi(4), x.powi(5));
    -4.0 * x5 + 32.0 * x4 - 82.0 * x3 + 58.0 * x2 + 38.0 * x - 42.0 - 4.0 * mu * x4
        + 20.0 * mu * x3
        - 21.0 * mu * x2
        - 20.0 * mu * x
        + 25.0 * mu
}

/// `Φ(λ, r) = 4r³λ² − (7r³ + 3r² − 3r + 1)λ + 6r³ − 2r² − 6r + 2`.
pub fn theorem_d_phi(lambda: f64, r: f64) -> f64 {
    let r2 = r * r;
    let r3 = r2 * r;
    4.0 * r3 * lambda * lambda - (7.0 * r3 + 3.0 * r2 - 3.0 * r + 1.0) * lambda + 6.0 * r3
        - 2.0 * r2
        - 6.0 * r
        + 2.0
}

/// `r^{3p−m} − 2r^{3p} − 3r^{2p} − r^{p−m} + 1`.
pub fn lemma2_polynomial(p: usize, m: usize, r: f64) -> f64 {
    let pw = |e: usize| r.powi(e as i32);
    pw(3 * p - m) - 2.0 * pw(3 * p) - 3.0 * pw(2 * p) - pw(p - m) + 1.0
}

/// One entry of the published `theorem2_Rpmq` radius table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Entry {
    pub p: f64,
    pub q: f64,
    pub m: usize,
    pub printed: f64,
}

/// Printed radii for geometric weights (golden values, six decimals, some truncated).
pub const TABLE1_PRINTED: [Table1Entry; 24] = {
    const fn e(p: f64, q: f64, m: usize, printed: f64) -> Table1Entry {
        Table1Entry { p, q, m, printed }
    }
    [
        e(1.0, 2.0, 1, 0.236068),
        e(1.0, 2.0, 3, 0.332047),
        e(1.0, 2.0, 5, 0.333318),
        e(1.0, 2.0, 10, 0.333333),
        e(1.0, 2.0, 2, 0.321336),
        e(1.0, 2.0, 4, 0.333195),
        e(1.0, 2.0, 7, 0.333333),
        e(1.0, 2.0, 15, 0.333333),
        e(1.0, 1.0, 1, 0.200000),
        e(1.0, 1.0, 3, 0.318201),
        e(1.0, 1.0, 5, 0.331541),
        e(1.0, 1.0, 15, 0.333333),
        e(1.0, 1.0, 2, 0.289898),
        e(1.0, 1.0, 4, 0.328083),
        e(1.0, 1.0, 10, 0.333326),
        e(1.0, 1.0, 20, 0.333333),
        e(0.5, 1.0, 1, 0.111111),
        e(0.5, 1.0, 3, 0.195177),
        e(0.5, 1.0, 10, 0.199999),
        e(0.5, 1.0, 50, 0.2),
        e(0.5, 1.0, 2, 0.178395),
        e(0.5, 1.0, 5, 0.199796),
        e(0.5, 1.0, 30, 0.199999),
        e(0.5, 1.0, 60, 0.2),
    ]
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub p: f64,
    pub q: f64,
    pub m: usize,
    pub radius: f64,
    pub printed: f64,
    pub diff: f64,
}

pub fn theorem2_query(weights: WeightSequence, p: f64, q: f64, m: usize, a0: Option<f64>) -> RadiusQuery {
    RadiusQuery::new(
        RadiusId::Theorem2Rpmq,
        RadiusParams { p: Some(p), q: Some(q), m: Some(m), a0, weights: Some(weights), ..Default::default() },
    )
}

/// Recomputes every printed table entry.
pub fn table1(tol: f64) -> Result<Vec<Table1Row>> {
    TABLE1_PRINTED
        .iter()
        .map(|e| {
            let radius = radius(&theorem2_query(WeightSequence::Geometric, e.p, e.q, e.m, None), tol)?.value;
            Ok(Table1Row { p: e.p, q: e.q, m: e.m, radius, printed: e.printed, diff: (radius - e.printed).abs() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> RadiusParams {
        RadiusParams::default()
    }

    fn solve(id: RadiusId, ps: RadiusParams) -> f64 {
        radius(&RadiusQuery::new(id, ps), DEFAULT_TOL).unwrap().value
    }

    #[test]
    fn solver_examples() {
        let third = find_minimal_root(|r| r - 1.0 / 3.0, 1e-12, 1e-3).unwrap();
        assert!((third.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(third.bracket.1 - third.bracket.0 <= 2e-12);
        let rstar = find_minimal_root(|r| 3.0 * r.powi(3) - 5.0 * r * r - 3.0 * r + 1.0, 1e-12, 1e-3).unwrap();
        assert!((rstar.value - 0.24683).abs() < 1e-5);
        // the minimal root of this quartic is the smaller one; 0.731348 is the second
        let quartic = |r: f64| 5.0 * r.powi(4) + 4.0 * r.powi(3) - 2.0 * r * r - 4.0 * r + 1.0;
        let first = find_minimal_root(quartic, 1e-12, 1e-3).unwrap();
        assert!((first.value - 0.239_17).abs() < 1e-5, "{}", first.value);
        let second = find_root_in(quartic, first.value + 1e-3, 0.999, 1e-12, 1e-3).unwrap();
        assert!((second.value - 0.731_348).abs() < 1e-6);
        assert!(matches!(find_minimal_root(|r| r + 1.0, 1e-12, 1e-3), Err(Error::NoSignChange { .. })));
        assert!(find_minimal_root(|r| r - 0.5, 1e-16, 1e-3).is_err());
    }

    #[test]
    fn table1_spot_values() {
        let g = WeightSequence::Geometric;
        let r = |p, q, m| radius(&theorem2_query(g.clone(), p, q, m, None), DEFAULT_TOL).unwrap().value;
        assert!((r(1.0, 1.0, 1) - 0.2).abs() < 1e-10);
        assert!((r(1.0, 2.0, 1) - (5f64.sqrt() - 2.0)).abs() < 1e-10);
        assert!((r(0.5, 1.0, 1) - 1.0 / 9.0).abs() < 1e-10);
        assert!((r(1.0, 1.0, 2) - 0.289_898).abs() < 1e-6);
        let mut prev = 0.0;
        for m in 1..=15 {
            let v = r(1.0, 2.0, m);
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn closed_forms_agree() {
        let p1 = RadiusParams { p: Some(1.0), m: Some(0), ..params() };
        assert!((solve(RadiusId::Lemma2Rpm, p1.clone()) - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((solve(RadiusId::Corollary7Rpm, p1.clone()) - 0.618_034).abs() < 1e-6);
        assert!((solve(RadiusId::Theorem5Rstar, p1) - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        for k in [2usize, 4] {
            let ps = RadiusParams { p: Some(k as f64), m: Some(0), ..params() };
            assert!((solve(RadiusId::Theorem5RstarII, ps) - 0.5f64.powf(1.0 / k as f64)).abs() < 1e-12);
        }
        let c5 = |m| solve(RadiusId::Corollary5Rtilde, RadiusParams { p: Some(2.0), m: Some(m), ..params() });
        assert!((c5(0) - 1.0 / 3f64.sqrt()).abs() < 1e-10);
        assert!((c5(1) - 0.731_348).abs() < 1e-6);
        for a0 in [0.0, 0.25, 0.5] {
            let ps = RadiusParams { p: Some(2.0), a0: Some(a0), ..params() };
            assert!((solve(RadiusId::Theorem1Rp, ps) - (1.0 + a0) / (3.0 + a0)).abs() < 1e-12);
        }
        let lac = |k, p| solve(RadiusId::LacunaryKp, RadiusParams { k: Some(k), p: Some(p), ..params() });
        assert!((lac(2, 1.0) - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((lac(1, 0.5) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn harmonic_example_root() {
        let ps = RadiusParams {
            p: Some(1.0),
            m: Some(0),
            weights: Some(WeightSequence::harmonic_monomial()),
            ..params()
        };
        let r = solve(RadiusId::Theorem5Rstar, ps);
        let oracle = find_minimal_root(|r: f64| -(-r * r).ln_1p() - 2.0 * r, 1e-13, 1e-3).unwrap().value;
        assert!((r - oracle).abs() < 1e-10);
        assert!((r - 0.9166).abs() < 1e-3, "{r}");
    }

    #[test]
    fn theorem_d_relations() {
        let rstar = solve(RadiusId::TheoremDRstar, params());
        let cor1 = solve(RadiusId::Corollary1R1, params());
        assert!((rstar - cor1).abs() < 1e-10);
        assert!((rstar - THEOREM_D_RSTAR).abs() < 1e-11);
        for i in 0..100 {
            let r = i as f64 / 100.0;
            let direct = 3.0 * r.powi(3) - 5.0 * r * r - 3.0 * r + 1.0;
            assert!((theorem_d_phi(1.0, r) - direct).abs() < 1e-14);
        }
        assert!(theorem_d_phi(0.0, 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(theorem_d_phi(0.4, 0.0), 1.6);
        let near_one = solve(RadiusId::TheoremDR0, RadiusParams { a0: Some(1.0 - 1e-12), ..params() });
        assert!((near_one - 1.0 / 3.0).abs() < 1e-9);
        for a0 in [0.1, 0.5, 0.9] {
            let r0 = solve(RadiusId::TheoremDR0, RadiusParams { a0: Some(a0), ..params() });
            assert!(r0 > rstar && r0 < 1.0 / 3.0);
        }
    }

    #[test]
    fn theorem4_polynomial() {
        for mu in [0.0, 0.5, 8.0 / 9.0, 1.3] {
            assert!(theorem4_l(mu, 1.0).abs() < 1e-12);
            assert!((theorem4_l(mu, 0.0) - (-42.0 + 25.0 * mu)).abs() < 1e-12);
        }
        assert!(theorem4_l(0.9, 0.999_999) > 0.0);
        assert_eq!(solve(RadiusId::Theorem4Rho, RadiusParams { a0: Some(0.5), ..params() }), 0.25);
    }

    #[test]
    fn parameter_errors() {
        let q = RadiusQuery::bare(RadiusId::Theorem1Rp);
        assert!(matches!(radius(&q, DEFAULT_TOL), Err(Error::InvalidParameter(_))));
        let q = RadiusQuery::new(RadiusId::Lemma2Rpm, RadiusParams { p: Some(1.0), m: Some(1), ..params() });
        assert!(radius(&q, DEFAULT_TOL).is_err());
        let odd = RadiusQuery::new(
            RadiusId::Theorem1R1,
            RadiusParams { p: Some(1.0), weights: Some(WeightSequence::OddOnly), ..params() },
        );
        assert!(matches!(radius(&odd, DEFAULT_TOL), Err(Error::NoSignChange { .. })));
        for id in RadiusId::ALL {
            assert_eq!(id.name().parse::<RadiusId>().unwrap(), id);
        }
    }

    #[test]
    fn parameter_dependence() {
        let q = |id, p| RadiusQuery::new(id, RadiusParams { p, ..params() });
        assert!(q(RadiusId::Theorem4Rho, None).depends_on("a0"));
        assert!(!q(RadiusId::Theorem4Rho, None).depends_on("lambda"));
        assert!(q(RadiusId::Theorem2Rpmq, Some(2.0)).depends_on("a0"));
        assert!(!q(RadiusId::Theorem2Rpmq, Some(1.0)).depends_on("a0"));
        assert!(!q(RadiusId::TheoremDRstar, None).depends_on("a0"));
    }
}
