//! Quasi-polynomials and their reconstruction from exact evaluations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;

/// Period candidates tried by default.
pub const DEFAULT_PERIODS: [usize; 2] = [1, 2];

/// Extra evaluation points per residue class beyond the `degree + 1` used for fitting.
pub const HELD_OUT_POINTS: usize = 2;

/// A period `rho` and constituents `f^1, ..., f^rho`; `f^k` governs `q = k (mod rho)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    constituents: Vec<IntegerPolynomial>,
}

impl QuasiPolynomial {
    /// Requires at least one constituent; all must be monic of one degree.
    pub fn new(constituents: Vec<IntegerPolynomial>) -> Result<Self> {
        let Some(first) = constituents.first() else {
            return Err(Error::Domain("a quasi-polynomial needs a constituent".into()));
        };
        let deg = first.degree();
        if constituents
            .iter()
            .any(|c| !c.is_monic() || c.degree() != deg)
        {
            return Err(Error::Domain(
                "constituents must be monic of a common degree".into(),
            ));
        }
        Ok(QuasiPolynomial { constituents })
    }

    /// A period-1 quasi-polynomial.
    pub fn polynomial(p: IntegerPolynomial) -> Result<Self> {
        Self::new(vec![p])
    }

    /// Period 2 from the odd and even constituents, collapsed to period 1 when equal.
    pub fn from_parity(odd: IntegerPolynomial, even: IntegerPolynomial) -> Result<Self> {
        if odd == even {
            Self::new(vec![odd])
        } else {
            Self::new(vec![odd, even])
        }
    }

    pub fn period(&self) -> usize {
        self.constituents.len()
    }

    pub fn degree(&self) -> usize {
        self.constituents[0].degree().unwrap_or(0)
    }

    pub fn constituents(&self) -> &[IntegerPolynomial] {
        &self.constituents
    }

    /// `f^k` for `1 <= k <= period`.
    pub fn constituent(&self, k: usize) -> Result<&IntegerPolynomial> {
        if k == 0 || k > self.period() {
            return Err(Error::IndexOutOfRange {
                index: k,
                max: self.period(),
            });
        }
        Ok(&self.constituents[k - 1])
    }

    /// The 1-constituent.
    pub fn characteristic_polynomial(&self) -> &IntegerPolynomial {
        &self.constituents[0]
    }

    /// The last constituent (`q = 0 mod rho`).
    pub fn toric_polynomial(&self) -> &IntegerPolynomial {
        self.constituents.last().expect("nonempty")
    }

    /// The constituent governing `q`.
    pub fn constituent_for(&self, q: u64) -> &IntegerPolynomial {
        let rho = self.period() as u64;
        let k = ((q + rho - 1) % rho) as usize;
        &self.constituents[k]
    }

    pub fn eval(&self, q: u64) -> i128 {
        self.constituent_for(q).eval(q as i128)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&QuasiJson::from(self)).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: QuasiJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.period() == 1 {
            return write!(f, "{}", self.constituents[0].factored());
        }
        for (k, c) in self.constituents.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "f{} = {}", k + 1, c.factored())?;
        }
        Ok(())
    }
}

/// JSON form: `{ "period": rho, "constituents": [ { "residue": k, "coeffs": [c0, ...] } ] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiJson {
    pub period: usize,
    pub constituents: Vec<ConstituentJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstituentJson {
    pub residue: usize,
    pub coeffs: Vec<i128>,
}

impl ConstituentJson {
    pub fn new(residue: usize, poly: &IntegerPolynomial) -> Self {
        ConstituentJson {
            residue,
            coeffs: poly.coeffs().to_vec(),
        }
    }
}

impl From<&QuasiPolynomial> for QuasiJson {
    fn from(qp: &QuasiPolynomial) -> Self {
        QuasiJson {
            period: qp.period(),
            constituents: qp
                .constituents
                .iter()
                .enumerate()
                .map(|(k, c)| ConstituentJson::new(k + 1, c))
                .collect(),
        }
    }
}

impl TryFrom<QuasiJson> for QuasiPolynomial {
    type Error = Error;

    fn try_from(j: QuasiJson) -> Result<Self> {
        let mut cs = j.constituents;
        cs.sort_by_key(|c| c.residue);
        if cs.len() != j.period || cs.iter().enumerate().any(|(k, c)| c.residue != k + 1) {
            return Err(Error::Parse("residues must be 1..=period".into()));
        }
        QuasiPolynomial::new(cs.into_iter().map(|c| IntegerPolynomial::new(c.coeffs)).collect())
    }
}

/// Finds the smallest candidate period for which every residue class is fit
/// by a monic integer polynomial of the given degree.
///
/// Residue class `k` is sampled at `q = k, k + rho, ..., k + (degree + 2) rho`:
/// the first `degree + 1` points determine the interpolant (Newton forward
/// differences, exact rationals) and the last [`HELD_OUT_POINTS`] must agree with it.
pub fn interpolate_quasi<F>(
    mut evaluator: F,
    degree: usize,
    period_candidates: &[usize],
) -> Result<QuasiPolynomial>
where
    F: FnMut(u64) -> Result<u64>,
{
    let mut cache: BTreeMap<u64, u64> = BTreeMap::new();
    let mut eval = |q: u64| -> Result<u64> {
        if let Some(&v) = cache.get(&q) {
            return Ok(v);
        }
        let v = evaluator(q)?;
        cache.insert(q, v);
        Ok(v)
    };
    'candidates: for &rho in period_candidates {
        if rho == 0 {
            return Err(Error::Domain("period candidates must be positive".into()));
        }
        let mut constituents = Vec::with_capacity(rho);
        for k in 1..=rho {
            let points: Vec<u64> = (0..=degree + HELD_OUT_POINTS)
                .map(|t| (k + t * rho) as u64)
                .collect();
            let mut values = Vec::with_capacity(points.len());
            for &q in &points[..=degree] {
                values.push(eval(q)?);
            }
            let Some(poly) = newton_fit(k as i64, rho as i64, &values) else {
                continue 'candidates;
            };
            if poly.degree() != Some(degree) || !poly.is_monic() {
                continue 'candidates;
            }
            for &q in &points[degree + 1..] {
                if poly.eval(q as i128) != eval(q)? as i128 {
                    continue 'candidates;
                }
            }
            constituents.push(poly);
        }
        return QuasiPolynomial::new(constituents);
    }
    Err(Error::PeriodExhausted(period_candidates.to_vec()))
}

/// Interpolant through `(start + t step, values[t])`, if its coefficients are integers.
fn newton_fit(start: i64, step: i64, values: &[u64]) -> Option<IntegerPolynomial> {
    let n = values.len();
    // forward differences: diffs[k] = Delta^k y_0
    let mut row: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
    let mut diffs = Vec::with_capacity(n);
    for _ in 0..n {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // t = (q - start) / step; accumulate sum_k Delta^k y_0 * binom(t, k)
    let mut result = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()]; // binom(t, k) as a polynomial in q
    let step_r = BigRational::from_integer(step.into());
    for (k, dk) in diffs.iter().enumerate() {
        for (i, c) in basis.iter().enumerate() {
            result[i] += c * BigRational::from_integer(dk.clone());
        }
        // basis *= (t - k) / (k + 1) = (q - start - k step) / (step (k + 1))
        let shift = BigRational::from_integer((start + k as i64 * step).into());
        let denom = &step_r * BigRational::from_integer((k as i64 + 1).into());
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, c) in basis.iter().enumerate() {
            next[i + 1] += c / &denom;
            next[i] -= c * &shift / &denom;
        }
        basis = next;
    }
    let coeffs = result
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_i128()
            } else {
                None
            }
        })
        .collect::<Option<Vec<i128>>>()?;
    Some(IntegerPolynomial::new(coeffs))
}
