//! Weight families `ζ = {ζ_n(r)}` and their tails `Φ_N(r) = Σ_{n≥N} ζ_n(r)`.
//!
//! The monomial family `ζ*_n(r) = C_n r^{τ_n}` is a finite table; indices past
//! its end are errors for pointwise queries and contribute nothing to sums.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_radius, Error, Result};

/// Numeric tails stop once the remainder bound drops below this fraction of
/// `1 + accumulated sum`.
pub const TAIL_RTOL: f64 = 1e-15;

/// Safety cap on numeric summation length.
const MAX_TERMS: usize = 5_000_000;

/// Default length of the built-in monomial tables.
pub const DEFAULT_TABLE_LEN: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(−1)^degree`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Finite table of `(C_n, τ_n)` pairs with strictly increasing degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialTable {
    coeffs: Vec<f64>,
    degrees: Vec<u32>,
}

impl MonomialTable {
    pub fn new(entries: Vec<(f64, u32)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("monomial table is empty".into()));
        }
        for (n, &(c, _)) in entries.iter().enumerate() {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "monomial coefficient C_{n} = {c} must be finite and nonnegative"
                )));
            }
        }
        if let Some(n) = entries.windows(2).position(|w| w[1].1 <= w[0].1) {
            return Err(Error::InvalidParameter(format!(
                "monomial degrees must increase strictly (τ_{} = {} after τ_{n} = {})",
                n + 1,
                entries[n + 1].1,
                entries[n].1
            )));
        }
        let (coeffs, degrees) = entries.into_iter().unzip();
        Ok(Self { coeffs, degrees })
    }

    /// `C_n = 1`, `τ_n = n`.
    pub fn plain(len: usize) -> Self {
        Self {
            coeffs: vec![1.0; len.max(1)],
            degrees: (0..len.max(1) as u32).collect(),
        }
    }

    /// `C_n = 1/(n+1)`, `τ_n = n`.
    pub fn harmonic(len: usize) -> Self {
        Self {
            coeffs: (0..len.max(1)).map(|n| 1.0 / (n as f64 + 1.0)).collect(),
            degrees: (0..len.max(1) as u32).collect(),
        }
    }

    /// Parses lines `C_n tau_n`; blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(c), Some(tau), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse(format!(
                    "line {}: expected two fields `C tau`",
                    lineno + 1
                )));
            };
            let c: f64 = c
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            let tau: u32 = tau
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            entries.push((c, tau));
        }
        Self::new(entries)
    }

    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .zip(&self.degrees)
            .map(|(c, t)| format!("{c:e} {t}\n"))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> Result<f64> {
        self.coeffs.get(n).copied().ok_or(Error::IndexOutOfTable {
            index: n,
            len: self.len(),
        })
    }

    pub fn degree(&self, n: usize) -> Result<u32> {
        self.degrees.get(n).copied().ok_or(Error::IndexOutOfTable {
            index: n,
            len: self.len(),
        })
    }

    fn value(&self, n: usize, r: f64) -> f64 {
        self.coeffs[n] * r.powi(self.degrees[n] as i32)
    }

    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSequence {
    /// `ζ_n = rⁿ`.
    Geometric,
    /// `ζ_n = rⁿ` when `k | n`, else 0.
    Lacunary(usize),
    /// `ζ_n = rⁿ/(n+1)`.
    Harmonic,
    EvenOnly,
    OddOnly,
    Monomial(MonomialTable),
}

impl WeightSequence {
    pub fn lacunary(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("lacunary step k must be positive".into()));
        }
        Ok(Self::Lacunary(k))
    }

    pub fn plain_monomial() -> Self {
        Self::Monomial(MonomialTable::plain(DEFAULT_TABLE_LEN))
    }

    pub fn harmonic_monomial() -> Self {
        Self::Monomial(MonomialTable::harmonic(DEFAULT_TABLE_LEN))
    }

    pub fn monomial_table(&self) -> Option<&MonomialTable> {
        match self {
            Self::Monomial(t) => Some(t),
            _ => None,
        }
    }

    /// Number of defined entries; `None` for the infinite families.
    pub fn table_len(&self) -> Option<usize> {
        self.monomial_table().map(MonomialTable::len)
    }

    /// `K` with `ζ_n(r) ≤ K·rⁿ` for every `n` and `r ∈ [0, 1)`.
    pub fn envelope(&self) -> f64 {
        match self {
            // τ_n ≥ n because the degrees are strictly increasing from τ_0 ≥ 0
            Self::Monomial(t) => t.max_coeff(),
            _ => 1.0,
        }
    }

    pub fn zeta(&self, n: usize, r: f64) -> Result<f64> {
        check_radius(r)?;
        if let Self::Monomial(t) = self {
            if n >= t.len() {
                return Err(Error::IndexOutOfTable { index: n, len: t.len() });
            }
        }
        Ok(self.zeta_raw(n, r))
    }

    /// `ζ_n(r)` without validation; zero past the end of a monomial table.
    pub(crate) fn zeta_raw(&self, n: usize, r: f64) -> f64 {
        let power = || r.powi(n as i32);
        match self {
            Self::Geometric => power(),
            Self::Lacunary(k) => {
                if n % k == 0 {
                    power()
                } else {
                    0.0
                }
            }
            Self::Harmonic => power() / (n as f64 + 1.0),
            Self::EvenOnly => {
                if n % 2 == 0 {
                    power()
                } else {
                    0.0
                }
            }
            Self::OddOnly => {
                if n % 2 == 1 {
                    power()
                } else {
                    0.0
                }
            }
            Self::Monomial(t) => {
                if n < t.len() {
                    t.value(n, r)
                } else {
                    0.0
                }
            }
        }
    }

    /// `Φ_N(r) = Σ_{n≥N} ζ_n(r)`.
    pub fn phi(&self, big_n: usize, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(self.phi_raw(big_n, r))
    }

    pub(crate) fn phi_raw(&self, big_n: usize, r: f64) -> f64 {
        let geometric_from = |j0: usize, step: i32| {
            if r == 0.0 {
                if j0 == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                r.powi(j0 as i32) / (1.0 - r.powi(step))
            }
        };
        match self {
            Self::Geometric => geometric_from(big_n, 1),
            Self::Lacunary(k) => geometric_from(big_n.div_ceil(*k) * k, *k as i32),
            Self::EvenOnly => geometric_from(big_n.div_ceil(2) * 2, 2),
            Self::OddOnly => geometric_from(big_n | 1, 2),
            Self::Harmonic => harmonic_tail(big_n, r),
            Self::Monomial(t) => (big_n..t.len()).rev().map(|n| t.value(n, r)).sum(),
        }
    }

    /// `Σ_{k≥0} ζ_{j+2k}(r)`, the tail from `j` over indices of the same parity.
    pub fn parity_tail(&self, j: usize, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(self.parity_tail_raw(j, r))
    }

    pub(crate) fn parity_tail_raw(&self, j: usize, r: f64) -> f64 {
        // first index ≥ j in the progression `start + step·i`, summed geometrically
        let progression = |first: Option<usize>, step: usize| match first {
            None => 0.0,
            Some(i0) if r == 0.0 => {
                if i0 == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Some(i0) => r.powi(i0 as i32) / (1.0 - r.powi(step as i32)),
        };
        match self {
            Self::Geometric => progression(Some(j), 2),
            Self::Lacunary(k) => {
                if k % 2 == 1 {
                    // i ≡ j (mod 2) and k | i: one residue class mod 2k
                    let first = (0..2 * k).map(|t| j + t).find(|i| i % k == 0 && (i - j) % 2 == 0);
                    progression(first, 2 * k)
                } else if j % 2 == 1 {
                    0.0
                } else {
                    progression(Some(j.div_ceil(*k) * k), *k)
                }
            }
            Self::EvenOnly => progression((j % 2 == 0).then_some(j), 2),
            Self::OddOnly => progression((j % 2 == 1).then_some(j), 2),
            Self::Harmonic => {
                let mut acc = 0.0;
                let mut i = j;
                while i < MAX_TERMS {
                    let term = r.powi(i as i32) / (i as f64 + 1.0);
                    acc += term;
                    if term * r * r / (1.0 - r * r) < TAIL_RTOL * (1.0 + acc) {
                        break;
                    }
                    i += 2;
                }
                acc
            }
            Self::Monomial(t) => (j..t.len()).step_by(2).rev().map(|i| t.value(i, r)).sum(),
        }
    }

    /// `Σ_{n≥1} Φ_{2n}(r) = Σ_j ⌊j/2⌋ ζ_j(r)`.
    pub fn phi_even_sum(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        Ok(match self {
            Self::Geometric => r * r / ((1.0 - r) * (1.0 - r * r)),
            _ => self.weighted_sum(r, 2, |j| (j / 2) as f64),
        })
    }

    /// `Σ_{j≥start} mult(j)·ζ_j(r)` for multipliers growing at most like `j+1`.
    fn weighted_sum(&self, r: f64, start: usize, mult: impl Fn(usize) -> f64) -> f64 {
        if let Self::Monomial(t) = self {
            return (start..t.len()).rev().map(|j| mult(j) * t.value(j, r)).sum();
        }
        let k = self.envelope();
        let mut acc = 0.0;
        for j in start..MAX_TERMS {
            acc += mult(j) * self.zeta_raw(j, r);
            // Σ_{i>j} (i+1) K rⁱ
            let rem = k * r.powi(j as i32 + 1) * ((j as f64 + 2.0) - (j as f64 + 1.0) * r)
                / (1.0 - r).powi(2);
            if rem < TAIL_RTOL * (1.0 + acc.abs()) {
                break;
            }
        }
        acc
    }

    /// True iff `ζ_{n+1}(r) ≤ ζ_n(r)` for every `n < n_check` (within the table).
    pub fn is_pointwise_decreasing(&self, r: f64, n_check: usize) -> bool {
        if check_radius(r).is_err() {
            return false;
        }
        let last = match self.table_len() {
            Some(len) => n_check.min(len.saturating_sub(1)),
            None => n_check,
        };
        (0..last).all(|n| self.zeta_raw(n + 1, r) <= self.zeta_raw(n, r))
    }

    /// Degree of `ζ*_m(r)·ζ*_n(r^p)`, namely `τ_m + p·τ_n`.
    pub fn product_degree(&self, p: usize, m: usize, n: usize) -> Result<u64> {
        let t = self.monomial_table().ok_or_else(|| {
            Error::InvalidParameter("degrees are defined only for monomial weights".into())
        })?;
        Ok(t.degree(m)? as u64 + p as u64 * t.degree(n)? as u64)
    }

    /// Parity of the degree of `ζ*_m(r)·ζ*_n(r^p)`.
    pub fn degree_parity(&self, p: usize, m: usize, n: usize) -> Result<Parity> {
        if p == 0 {
            return Err(Error::InvalidParameter("p must be positive".into()));
        }
        self.product_degree(p, m, n).map(Parity::of)
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Geometric => write!(f, "geometric"),
            Self::Lacunary(k) => write!(f, "lacunary:{k}"),
            Self::Harmonic => write!(f, "harmonic"),
            Self::EvenOnly => write!(f, "even"),
            Self::OddOnly => write!(f, "odd"),
            Self::Monomial(t) => {
                if *t == MonomialTable::plain(t.len()) {
                    write!(f, "mono-plain")
                } else if *t == MonomialTable::harmonic(t.len()) {
                    write!(f, "mono-harmonic")
                } else {
                    write!(f, "monomial[{}]", t.len())
                }
            }
        }
    }
}

impl FromStr for WeightSequence {
    type Err = Error;

    /// `geometric`, `harmonic`, `even`, `odd`, `lacunary:K`, `mono-plain`,
    /// `mono-harmonic`. Monomial tables from files go through
    /// [`MonomialTable::from_text`].
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "geometric" => Ok(Self::Geometric),
            "harmonic" => Ok(Self::Harmonic),
            "even" => Ok(Self::EvenOnly),
            "odd" => Ok(Self::OddOnly),
            "mono-plain" => Ok(Self::plain_monomial()),
            "mono-harmonic" => Ok(Self::harmonic_monomial()),
            other => {
                if let Some(k) = other.strip_prefix("lacunary:") {
                    let k = k
                        .parse()
                        .map_err(|e| Error::Parse(format!("lacunary step `{k}`: {e}")))?;
                    Self::lacunary(k)
                } else {
                    Err(Error::Parse(format!("unknown weight family `{other}`")))
                }
            }
        }
    }
}

/// `Σ_{n≥N} rⁿ/(n+1)`.
fn harmonic_tail(big_n: usize, r: f64) -> f64 {
    if r == 0.0 {
        return if big_n == 0 { 1.0 } else { 0.0 };
    }
    if big_n <= 4 && r >= 0.25 {
        // Σ_{n≥0} rⁿ/(n+1) = −log(1−r)/r, minus the first N terms
        let head: f64 = (0..big_n).map(|n| r.powi(n as i32 + 1) / (n as f64 + 1.0)).sum();
        return (-(-r).ln_1p() - head) / r;
    }
    let mut acc = 0.0;
    let mut power = r.powi(big_n as i32);
    for n in big_n..MAX_TERMS {
        let term = power / (n as f64 + 1.0);
        acc += term;
        // remaining terms are at most term·r/(1−r)
        if term * r / (1.0 - r) < TAIL_RTOL * (1.0 + acc) {
            break;
        }
        power *= r;
    }
    acc
}

/// Precomputed `ζ_n(r)` and suffix sums `Φ_n(r)` for `n < len`, falling back
/// to direct evaluation past the end.
#[derive(Debug, Clone)]
pub struct WeightTable {
    weights: WeightSequence,
    r: f64,
    zeta: Vec<f64>,
    phi: Vec<f64>,
    parity: Vec<f64>,
}

impl WeightTable {
    pub fn new(weights: &WeightSequence, r: f64, len: usize) -> Result<Self> {
        check_radius(r)?;
        let len = match weights.table_len() {
            Some(t) => len.min(t),
            None => len,
        }
        .max(1);
        let zeta: Vec<f64> = (0..len).map(|n| weights.zeta_raw(n, r)).collect();
        let mut phi = vec![0.0; len + 1];
        phi[len] = weights.phi_raw(len, r);
        for n in (0..len).rev() {
            phi[n] = phi[n + 1] + zeta[n];
        }
        let mut parity = vec![0.0; len + 2];
        parity[len] = weights.parity_tail_raw(len, r);
        parity[len + 1] = weights.parity_tail_raw(len + 1, r);
        for n in (0..len).rev() {
            parity[n] = parity[n + 2] + zeta[n];
        }
        Ok(Self {
            weights: weights.clone(),
            r,
            zeta,
            phi,
            parity,
        })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn zeta(&self, n: usize) -> f64 {
        match self.zeta.get(n) {
            Some(&z) => z,
            None => self.weights.zeta_raw(n, self.r),
        }
    }

    pub fn phi(&self, n: usize) -> f64 {
        match self.phi.get(n) {
            Some(&p) => p,
            None => self.weights.phi_raw(n, self.r),
        }
    }

    /// `Σ_{k≥0} ζ_{n+2k}`.
    pub fn parity_tail(&self, n: usize) -> f64 {
        match self.parity.get(n) {
            Some(&p) => p,
            None => self.weights.parity_tail_raw(n, self.r),
        }
    }

    /// `K` with `ζ_n ≤ K rⁿ`.
    pub fn envelope(&self) -> f64 {
        self.weights.envelope()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(WeightSequence::Geometric.zeta(3, 0.5).unwrap(), 0.125);
        // r/2 at r = 0.6
        assert!(close(WeightSequence::Harmonic.zeta(1, 0.6).unwrap(), 0.3, 1e-16));
        assert_eq!(WeightSequence::Lacunary(2).zeta(3, 0.9).unwrap(), 0.0);
        assert!(matches!(
            WeightSequence::Geometric.zeta(0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn phi_examples() {
        assert!(close(WeightSequence::Geometric.phi(1, 0.5).unwrap(), 1.0, 1e-15));
        assert!(close(WeightSequence::Lacunary(2).phi(1, 0.5).unwrap(), 1.0 / 3.0, 1e-15));
        let direct: f64 = (1..200).map(|n| 0.5_f64.powi(n) / (n as f64 + 1.0)).sum();
        let h = WeightSequence::Harmonic.phi(1, 0.5).unwrap();
        assert!(close(h, (-(0.5_f64.ln()) - 0.5) / 0.5, 1e-15));
        assert!(close(h, direct, 1e-15));
        assert!(close(h, 0.386_294, 1e-6));
    }

    #[test]
    fn phi_odd_and_even_only() {
        let r: f64 = 0.7;
        let odd: f64 = (0..400).filter(|n| n % 2 == 1).skip(1).map(|n| r.powi(n)).sum();
        assert!(close(WeightSequence::OddOnly.phi(2, r).unwrap(), odd, 1e-14));
        let even: f64 = (4..400).filter(|n| n % 2 == 0).map(|n| r.powi(n)).sum();
        assert!(close(WeightSequence::EvenOnly.phi(3, r).unwrap(), even, 1e-14));
    }

    #[test]
    fn phi_even_sum_examples() {
        let g = WeightSequence::Geometric;
        assert_eq!(g.phi_even_sum(0.0).unwrap(), 0.0);
        assert!(close(g.phi_even_sum(0.5).unwrap(), 2.0 / 3.0, 1e-15));
        let brute: f64 = (1..300).map(|n| g.phi(2 * n, 0.5).unwrap()).sum();
        assert!(close(brute, 2.0 / 3.0, 1e-14));
        // numeric path agrees with the closed form
        let as_lacunary_one = WeightSequence::Lacunary(1);
        for r in [0.1, 0.5, 0.9] {
            let numeric = as_lacunary_one.phi_even_sum(r).unwrap();
            let closed = g.phi_even_sum(r).unwrap();
            assert!(close(numeric, closed, 1e-12 * closed.max(1.0)), "r={r}");
        }
    }

    #[test]
    fn phi_even_sum_at_theorem_d_root() {
        let r = 0.246_829_826_210_458_5;
        let g = WeightSequence::Geometric;
        let lhs = 2.0 * g.phi(1, r).unwrap() + 4.0 * g.phi_even_sum(r).unwrap();
        assert!(close(lhs, 1.0, 1e-5));
    }

    #[test]
    fn degree_parity_examples() {
        let plain = WeightSequence::plain_monomial();
        assert_eq!(plain.degree_parity(1, 0, 2).unwrap(), Parity::Even);
        assert_eq!(plain.degree_parity(2, 1, 1).unwrap(), Parity::Odd);
        let harmonic = WeightSequence::harmonic_monomial();
        assert_eq!(harmonic.degree_parity(1, 0, 3).unwrap(), Parity::Odd);
        let short = WeightSequence::Monomial(MonomialTable::plain(4));
        assert!(matches!(
            short.degree_parity(1, 0, 7),
            Err(Error::IndexOutOfTable { index: 7, len: 4 })
        ));
        assert!(WeightSequence::Geometric.degree_parity(1, 0, 1).is_err());
    }

    #[test]
    fn decreasing_examples() {
        for r in [0.0, 0.3, 0.99] {
            assert!(WeightSequence::Geometric.is_pointwise_decreasing(r, 100));
            assert!(WeightSequence::Harmonic.is_pointwise_decreasing(r, 100));
        }
        let t = MonomialTable::new(vec![(1.0, 1), (3.0, 2)]).unwrap();
        assert!(!WeightSequence::Monomial(t).is_pointwise_decreasing(0.9, 5));
    }

    #[test]
    fn monomial_table_validation_and_text() {
        assert!(MonomialTable::new(vec![(1.0, 2), (1.0, 2)]).is_err());
        assert!(MonomialTable::new(vec![(-1.0, 0)]).is_err());
        let t = MonomialTable::from_text("# C tau\n1 0\n\n0.5 1\n0.25 3\n").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.degree(2).unwrap(), 3);
        assert_eq!(MonomialTable::from_text(&t.to_text()).unwrap(), t);
        assert!(matches!(MonomialTable::from_text("1 x"), Err(Error::Parse(_))));
        assert!(matches!(MonomialTable::from_text("1 2 3"), Err(Error::Parse(_))));
    }

    #[test]
    fn monomial_queries_past_table_are_errors() {
        let w = WeightSequence::Monomial(MonomialTable::plain(3));
        assert!(w.zeta(2, 0.5).is_ok());
        assert!(matches!(w.zeta(3, 0.5), Err(Error::IndexOutOfTable { .. })));
        assert!(close(w.phi(1, 0.5).unwrap(), 0.75, 1e-16));
    }

    #[test]
    fn table_matches_direct_values() {
        for w in [
            WeightSequence::Geometric,
            WeightSequence::Harmonic,
            WeightSequence::OddOnly,
            WeightSequence::plain_monomial(),
        ] {
            let t = WeightTable::new(&w, 0.6, 50).unwrap();
            for n in 0..80 {
                assert!(close(t.zeta(n), w.zeta_raw(n, 0.6), 1e-16));
                assert!(close(t.phi(n), w.phi(n, 0.6).unwrap(), 1e-14), "{w} n={n}");
            }
        }
    }

    #[test]
    fn parity_tails_match_direct_sums() {
        let r: f64 = 0.8;
        for w in [
            WeightSequence::Geometric,
            WeightSequence::Lacunary(3),
            WeightSequence::Lacunary(4),
            WeightSequence::Harmonic,
            WeightSequence::EvenOnly,
            WeightSequence::OddOnly,
            WeightSequence::harmonic_monomial(),
        ] {
            let table = WeightTable::new(&w, r, 30).unwrap();
            for j in 0..60 {
                let direct: f64 = (0..400).map(|k| w.zeta_raw(j + 2 * k, r)).sum();
                let tail = w.parity_tail(j, r).unwrap();
                assert!(close(tail, direct, 1e-13), "{w} j={j}: {tail} vs {direct}");
                assert!(close(table.parity_tail(j), direct, 1e-13), "{w} j={j}");
                assert!(close(tail + w.parity_tail(j + 1, r).unwrap(), w.phi(j, r).unwrap(), 1e-13));
            }
        }
    }

    #[test]
    fn weight_names_round_trip() {
        for name in ["geometric", "harmonic", "even", "odd", "lacunary:3", "mono-plain", "mono-harmonic"] {
            let w: WeightSequence = name.parse().unwrap();
            assert_eq!(w.to_string(), name);
        }
        assert!("nope".parse::<WeightSequence>().is_err());
    }
}
