//! Truncated formal power series in t over Q\[λ\]\[x\].
//!
//! A [`Series`] of precision N stores exactly N+1 Taylor coefficients and is
//! understood modulo t^{N+1}. Binary operations truncate to the minimum
//! precision of their operands; division cancels a shared valuation and
//! loses that many orders. Nothing here is lazy and there are no negative
//! powers: a quotient that would need them is an error, not a representation.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize};

use crate::exact::display::{xpoly_string, Style};
use crate::exact::{factorial_rat, Rat, XPoly};

/// Errors from series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("not a power series quotient: numerator valuation {numerator} < denominator valuation {denominator}")]
    NotAQuotient { numerator: usize, denominator: usize },
    #[error("division by a series that is zero to its precision")]
    DivisionByZeroSeries,
    #[error("reduced leading coefficient `{coefficient}` of the denominator is not an invertible constant")]
    NonInvertibleLeading { coefficient: String },
    #[error("series has a nonzero constant term, so it is not a delta series")]
    NotDelta,
    #[error("delta series has no linear term within its precision")]
    MissingLinearTerm,
    #[error("linear coefficient `{coefficient}` is not a nonzero rational constant; compositional inverse stays in Q[λ][x] only for such series")]
    NonInvertibleLinear { coefficient: String },
    #[error("coefficient index {index} exceeds series precision {precision}")]
    PrecisionExceeded { index: usize, precision: usize },
}

/// A truncated formal power series: `coeffs[n]` is the coefficient of t^n.
///
/// Invariant: `coeffs.len() == precision + 1`, so even trailing zeros are
/// stored — precision is structural, not inferred.
#[derive(Clone, PartialEq, Serialize)]
pub struct Series {
    precision: usize,
    coeffs: Vec<XPoly>,
}

impl Series {
    /// Builds a series from raw Taylor coefficients; `coeffs` must be non-empty
    /// and its length fixes the precision to `len - 1`.
    pub fn from_coeffs(coeffs: Vec<XPoly>) -> Series {
        assert!(!coeffs.is_empty(), "a series stores at least one coefficient");
        Series { precision: coeffs.len() - 1, coeffs }
    }

    pub fn zero(precision: usize) -> Series {
        Series::from_coeffs(vec![XPoly::zero(); precision + 1])
    }

    pub fn one(precision: usize) -> Series {
        Series::constant(XPoly::one(), precision)
    }

    pub fn constant(c: XPoly, precision: usize) -> Series {
        let mut coeffs = vec![XPoly::zero(); precision + 1];
        coeffs[0] = c;
        Series::from_coeffs(coeffs)
    }

    /// The identity series t (requires precision ≥ 1 to be visible).
    pub fn t(precision: usize) -> Series {
        let mut coeffs = vec![XPoly::zero(); precision + 1];
        if precision >= 1 {
            coeffs[1] = XPoly::one();
        }
        Series::from_coeffs(coeffs)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Taylor coefficient of t^n. Panics beyond precision; use
    /// [`Series::extract`] for the fallible, n!-normalized accessor.
    pub fn coeff(&self, n: usize) -> &XPoly {
        assert!(n <= self.precision, "coefficient {n} beyond precision {}", self.precision);
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[XPoly] {
        &self.coeffs
    }

    /// Index of the first nonzero stored coefficient; `None` when the series
    /// is zero to its precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Lowers precision to `precision`, dropping higher coefficients.
    pub fn truncated(&self, precision: usize) -> Series {
        assert!(precision <= self.precision, "cannot raise precision by truncation");
        Series::from_coeffs(self.coeffs[..=precision].to_vec())
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let n = self.precision.min(rhs.precision);
        Series::from_coeffs((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }

    pub fn sub(&self, rhs: &Series) -> Series {
        let n = self.precision.min(rhs.precision);
        Series::from_coeffs((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }

    pub fn neg(&self) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Cauchy product, truncated to the minimum operand precision.
    pub fn mul(&self, rhs: &Series) -> Series {
        let n = self.precision.min(rhs.precision);
        let mut coeffs = vec![XPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Series::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: &Rat) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|c| c.scale_rat(s)).collect())
    }

    pub fn pow(&self, exp: usize) -> Series {
        let mut acc = Series::one(self.precision);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes t := −t (flips the sign of odd coefficients).
    pub fn negate_argument(&self) -> Series {
        Series::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact quotient with common-valuation cancellation.
    ///
    /// With v = valuation(rhs), requires valuation(self) ≥ v and the
    /// coefficient of t^v in `rhs` to be a nonzero rational constant. The
    /// result has precision `min(precisions) − v`.
    pub fn div(&self, rhs: &Series) -> Result<Series, SeriesError> {
        let v = rhs.valuation().ok_or(SeriesError::DivisionByZeroSeries)?;
        let prec = self.precision.min(rhs.precision);
        if prec < v {
            return Err(SeriesError::PrecisionExceeded { index: v, precision: prec });
        }
        let out_prec = prec - v;
        match self.valuation() {
            // Zero to precision: every known quotient coefficient is zero.
            None => return Ok(Series::zero(out_prec)),
            Some(va) if va < v => {
                return Err(SeriesError::NotAQuotient { numerator: va, denominator: v })
            }
            Some(_) => {}
        }
        let lead = rhs.coeffs[v]
            .as_lpoly()
            .and_then(|l| l.as_rat())
            .filter(|r| !r.is_zero())
            .ok_or_else(|| SeriesError::NonInvertibleLeading {
                coefficient: xpoly_string(&rhs.coeffs[v], Style::Text),
            })?;
        let inv_lead = lead.recip();
        // Long division of the t^v-shifted series.
        let a = |i: usize| &self.coeffs[i + v];
        let b = |i: usize| &rhs.coeffs[i + v];
        let mut q: Vec<XPoly> = Vec::with_capacity(out_prec + 1);
        for n in 0..=out_prec {
            let mut acc = a(n).clone();
            for (i, qi) in q.iter().enumerate() {
                acc = &acc - &(qi * b(n - i));
            }
            q.push(acc.scale_rat(&inv_lead));
        }
        Ok(Series::from_coeffs(q))
    }

    /// Composition `self ∘ inner` by Horner evaluation, truncated to the
    /// common precision. `inner` must be a delta series, which the type
    /// already guarantees.
    pub fn compose(&self, inner: &DeltaSeries) -> Series {
        let prec = self.precision.min(inner.precision());
        let d = inner.series().truncated(prec);
        let mut acc = Series::constant(self.coeffs[prec].clone(), prec);
        for n in (0..prec).rev() {
            acc = acc.mul(&d);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[n];
        }
        acc
    }

    /// `n! ·` (coefficient of t^n) — the EGF extraction used by every
    /// polynomial-family definition. Errors past the precision.
    pub fn extract(&self, n: usize) -> Result<XPoly, SeriesError> {
        if n > self.precision {
            return Err(SeriesError::PrecisionExceeded { index: n, precision: self.precision });
        }
        Ok(self.coeffs[n].scale_rat(&factorial_rat(n)))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[prec={}; ", self.precision)?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})t^{n}", xpoly_string(c, Style::Text))?;
        }
        write!(f, "]")
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            precision: usize,
            coeffs: Vec<XPoly>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.precision + 1 {
            return Err(de::Error::custom(format!(
                "series with precision {} must store {} coefficients, got {}",
                raw.precision,
                raw.precision + 1,
                raw.coeffs.len()
            )));
        }
        Ok(Series { precision: raw.precision, coeffs: raw.coeffs })
    }
}

/// A series with zero constant term, suitable as a composition argument.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct DeltaSeries(Series);

impl DeltaSeries {
    pub fn new(series: Series) -> Result<DeltaSeries, SeriesError> {
        if !series.coeffs[0].is_zero() {
            return Err(SeriesError::NotDelta);
        }
        Ok(DeltaSeries(series))
    }

    /// The identity delta series t.
    pub fn t(precision: usize) -> DeltaSeries {
        assert!(precision >= 1, "t needs precision >= 1");
        DeltaSeries(Series::t(precision))
    }

    pub fn series(&self) -> &Series {
        &self.0
    }

    pub fn into_series(self) -> Series {
        self.0
    }

    pub fn precision(&self) -> usize {
        self.0.precision
    }

    pub fn coeff(&self, n: usize) -> &XPoly {
        self.0.coeff(n)
    }

    pub fn truncated(&self, precision: usize) -> DeltaSeries {
        DeltaSeries(self.0.truncated(precision))
    }

    pub fn negate_argument(&self) -> DeltaSeries {
        DeltaSeries(self.0.negate_argument())
    }

    /// The linear coefficient as a rational, when it is a nonzero rational
    /// constant — the precondition for compositional inversion.
    pub fn invertible_linear_coeff(&self) -> Result<Rat, SeriesError> {
        if self.0.precision < 1 {
            return Err(SeriesError::MissingLinearTerm);
        }
        let c = &self.0.coeffs[1];
        if c.is_zero() {
            return Err(SeriesError::NonInvertibleLinear { coefficient: "0".to_owned() });
        }
        c.as_lpoly()
            .and_then(|l| l.as_rat())
            .ok_or_else(|| SeriesError::NonInvertibleLinear {
                coefficient: xpoly_string(c, Style::Text),
            })
    }

    /// Compositional inverse by order-by-order coefficient matching:
    /// returns E with `self ∘ E = E ∘ self = t` to the same precision.
    pub fn invert(&self) -> Result<DeltaSeries, SeriesError> {
        let lin = self.invertible_linear_coeff()?;
        let prec = self.0.precision;
        let inv_lin = lin.recip();
        let mut inverse = Series::zero(prec);
        inverse.coeffs[1] = XPoly::from_rat(inv_lin.clone());
        for n in 2..=prec {
            // With e_n unknown (set to 0 so far), [t^n] self(E) differs from
            // the target δ_{n,1} by lin · e_n.
            let composed = self
                .0
                .truncated(n)
                .compose(&DeltaSeries(inverse.truncated(n)));
            let defect = composed.coeffs[n].clone();
            inverse.coeffs[n] = defect.scale_rat(&-&inv_lin);
        }
        Ok(DeltaSeries(inverse))
    }
}

impl From<DeltaSeries> for Series {
    fn from(d: DeltaSeries) -> Series {
        d.0
    }
}
