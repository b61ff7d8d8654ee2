//! The λ-umbral calculus core.
//!
//! The basis {(x)_{n,λ}} of λ-falling factorials plays the role x^n plays
//! classically. On it:
//!
//! * the λ-linear functional of a scalar series f = Σ a_k t^k/k! pairs as
//!   ⟨f | (x)_{n,λ}⟩_λ = a_n, extended linearly;
//! * the λ-differential operator acts by (t^k)_λ (x)_{n,λ} = (n)_k (x)_{n−k,λ},
//!   extended linearly in both arguments;
//! * a pair (g, f) — g invertible, f delta — determines the unique λ-Sheffer
//!   sequence S_{n,λ} with ⟨g·f^k | S_{n,λ}⟩_λ = n! δ_{n,k}, generated by
//!   (1/g(f̄(t))) e_λ^x(f̄(t)) where f̄ is the compositional inverse of f.
//!
//! The functional is computed through the falling-factorial expansion — its
//! definition — so the adjoint identity ⟨F·G | p⟩ = ⟨F | (G)_λ p⟩ is a
//! theorem the test suite checks, not an implementation detail.

use serde::Serialize;

use crate::degen::{degenerate_exp, degenerate_polylog, e_lambda, e_lambda_minus_one, falling_factorial, Exponent, FallingMode};
use crate::exact::display::{lpoly_string, Style};
use crate::exact::{binomial_rat, factorial_rat, LPoly, XPoly};
use crate::series::{DeltaSeries, Series, SeriesError};

/// Errors from umbral-calculus operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UmbralError {
    #[error("series precision {available} is below the polynomial degree {needed}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("series coefficient of t^{index} depends on x; a scalar series is required here")]
    XDependentCoefficient { index: usize },
    #[error("invalid pair: {reason}")]
    InvalidPair { reason: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("internal reconstruction check failed at basis index {index}")]
    ReconstructionMismatch { index: usize },
}

/// Expansion of a polynomial in the λ-falling-factorial basis:
/// p(x) = Σ_j coeffs\[j\] · (x)_{j,λ}.
#[derive(Clone, PartialEq, Debug)]
pub struct FFExpansion {
    coeffs: Vec<LPoly>,
}

impl FFExpansion {
    pub fn coeffs(&self) -> &[LPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> LPoly {
        self.coeffs.get(j).cloned().unwrap_or_else(LPoly::zero)
    }

    /// Rebuilds the polynomial Σ_j c_j (x)_{j,λ}.
    pub fn reconstruct(&self) -> XPoly {
        let mut acc = XPoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &falling_factorial(j, FallingMode::Lambda).scale_lpoly(c);
            }
        }
        acc
    }
}

/// Expands `p` in the basis {(x)_{j,λ}} by triangular elimination; the
/// basis is monic, so the change of basis is exact and unique.
pub fn to_ff_basis(p: &XPoly) -> FFExpansion {
    let Some(deg) = p.x_degree() else {
        return FFExpansion { coeffs: Vec::new() };
    };
    let mut coeffs = vec![LPoly::zero(); deg + 1];
    let mut rem = p.clone();
    for d in (0..=deg).rev() {
        if rem.x_degree() == Some(d) {
            let c = rem.leading().expect("nonzero leading coefficient").clone();
            rem = &rem - &falling_factorial(d, FallingMode::Lambda).scale_lpoly(&c);
            coeffs[d] = c;
        }
    }
    debug_assert!(rem.is_zero());
    FFExpansion { coeffs }
}

/// The Taylor coefficients a_k = k!·[t^k]F of a scalar series, checked to be
/// x-free up to the needed order.
fn scalar_taylor(f: &Series, up_to: usize) -> Result<Vec<LPoly>, UmbralError> {
    if f.precision() < up_to {
        return Err(UmbralError::InsufficientPrecision {
            needed: up_to,
            available: f.precision(),
        });
    }
    (0..=up_to)
        .map(|k| {
            f.coeff(k)
                .as_lpoly()
                .map(|l| l.scale_rat(&factorial_rat(k)))
                .ok_or(UmbralError::XDependentCoefficient { index: k })
        })
        .collect()
}

/// The λ-linear functional ⟨F | p⟩_λ = Σ_j c_j a_j, where p = Σ c_j (x)_{j,λ}
/// and F = Σ a_k t^k/k!. Requires precision(F) ≥ deg p and an x-free F.
pub fn lambda_functional(f: &Series, p: &XPoly) -> Result<LPoly, UmbralError> {
    let expansion = to_ff_basis(p);
    let deg = expansion.coeffs.len().saturating_sub(1);
    let taylor = scalar_taylor(f, deg)?;
    let mut acc = LPoly::zero();
    for (c, a) in expansion.coeffs.iter().zip(&taylor) {
        if !c.is_zero() && !a.is_zero() {
            acc = &acc + &(c * a);
        }
    }
    Ok(acc)
}

/// The λ-differential operator (F)_λ applied to p: the monomial rule
/// (t^k)_λ (x)_{n,λ} = (n)_k (x)_{n−k,λ} extended linearly over the
/// falling-factorial expansions of F and p.
pub fn lambda_diff_op(f: &Series, p: &XPoly) -> Result<XPoly, UmbralError> {
    let expansion = to_ff_basis(p);
    let deg = expansion.coeffs.len().saturating_sub(1);
    let taylor = scalar_taylor(f, deg)?;
    // Coefficient of (x)_{m,λ} in the image: Σ_{n−k=m} binom(n,k) a_k c_n.
    let mut image = vec![LPoly::zero(); expansion.coeffs.len()];
    for (n, c) in expansion.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, a) in taylor.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            let weight = binomial_rat(n, k);
            image[n - k] = &image[n - k] + &(c * a).scale_rat(&weight);
        }
    }
    Ok(FFExpansion { coeffs: image }.reconstruct())
}

/// A λ-Sheffer pair (g, f): g has invertible rational constant term, f is a
/// delta series with nonzero rational linear coefficient, both x-free.
#[derive(Clone, Debug)]
pub struct ShefferPair {
    g: Series,
    f: DeltaSeries,
}

impl ShefferPair {
    pub fn new(g: Series, f: DeltaSeries) -> Result<ShefferPair, UmbralError> {
        let g0 = g.coeff(0).as_lpoly().and_then(|l| l.as_rat());
        match g0 {
            Some(r) if !r.is_zero() => {}
            _ => {
                return Err(UmbralError::InvalidPair {
                    reason: "g must have a nonzero rational constant term".to_owned(),
                })
            }
        }
        f.invertible_linear_coeff().map_err(|e| UmbralError::InvalidPair {
            reason: format!("f is not invertible: {e}"),
        })?;
        for (series, name) in [(&g, "g"), (f.series(), "f")] {
            if let Some(idx) = series.coeffs().iter().position(|c| !c.is_x_free()) {
                return Err(UmbralError::InvalidPair {
                    reason: format!("{name} has an x-dependent coefficient at t^{idx}"),
                });
            }
        }
        Ok(ShefferPair { g, f })
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &DeltaSeries {
        &self.f
    }

    /// Working precision: the minimum of the two component precisions.
    pub fn precision(&self) -> usize {
        self.g.precision().min(self.f.precision())
    }

    /// The pair (1, t): its sequence is the λ-falling factorials themselves.
    pub fn falling_lambda(precision: usize) -> ShefferPair {
        ShefferPair::new(Series::one(precision), DeltaSeries::t(precision))
            .expect("(1, t) is a valid pair")
    }

    /// The pair (1, e_λ(t)−1): its sequence is the plain falling factorials.
    pub fn plain_falling(precision: usize) -> ShefferPair {
        ShefferPair::new(Series::one(precision), e_lambda_minus_one(precision))
            .expect("(1, e_λ−1) is a valid pair")
    }

    /// The poly-Bernoulli pair ((e_λ(t)−1)/Li_{k,λ}(1−e_λ(−t)), t).
    pub fn poly_bernoulli(k: i64, precision: usize) -> ShefferPair {
        let inner = precision + 1;
        let arg = DeltaSeries::new(
            Series::one(inner).sub(&e_lambda(inner).negate_argument()),
        )
        .expect("1 − e_λ(−t) is delta");
        let li = degenerate_polylog(k, inner).series().compose(&arg);
        let g = e_lambda_minus_one(inner)
            .series()
            .div(&li)
            .expect("shared valuation 1, unit reduced leading coefficient");
        ShefferPair::new(g, DeltaSeries::t(precision)).expect("valid poly-Bernoulli pair")
    }

    /// The order-r Bernoulli pair (((e_λ(t)−1)/t)^r, t).
    pub fn bernoulli_order(r: u32, precision: usize) -> ShefferPair {
        let inner = precision + 1;
        let g = e_lambda_minus_one(inner)
            .series()
            .div(&Series::t(inner))
            .expect("valuation 1 over valuation 1")
            .pow(r as usize);
        ShefferPair::new(g, DeltaSeries::t(precision)).expect("valid Bernoulli pair")
    }

    /// The order-r derangement pair ((1−t)^r e_λ(t), t).
    pub fn derangement(r: u32, precision: usize) -> ShefferPair {
        let one_minus_t = Series::one(precision).sub(&Series::t(precision));
        let g = one_minus_t.pow(r as usize).mul(&e_lambda(precision));
        ShefferPair::new(g, DeltaSeries::t(precision)).expect("valid derangement pair")
    }

    /// S_{n,λ}(x) = n!·[t^n] (1/g(f̄(t))) e_λ^x(f̄(t)).
    pub fn sheffer_polynomial(&self, n: usize) -> Result<XPoly, UmbralError> {
        let prec = self.precision();
        if prec < n {
            return Err(UmbralError::InsufficientPrecision { needed: n, available: prec });
        }
        let f_bar = self.f.invert()?;
        let g_of = self.g.compose(&f_bar);
        let base = Series::one(prec).div(&g_of)?;
        let e_of = degenerate_exp(&Exponent::X, prec).compose(&f_bar);
        Ok(base.mul(&e_of).extract(n)?)
    }

    /// The series g·f^m used in the orthogonality pairings.
    fn pairing_series(&self, m: usize) -> Series {
        self.g.mul(&self.f.series().pow(m))
    }
}

/// One failing orthogonality pairing, with both sides.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityFailure {
    pub n: usize,
    pub k: usize,
    pub got: String,
    pub expected: String,
}

/// Result of checking ⟨g·f^k | S_n⟩ = n!·δ_{n,k} over a full (n, k) grid.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub n_max: usize,
    pub failures: Vec<OrthogonalityFailure>,
}

impl OrthogonalityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first failing (n, k), in row-major order.
    pub fn first_failure(&self) -> Option<&OrthogonalityFailure> {
        self.failures.first()
    }
}

/// Verifies the full (n_max+1)² orthogonality matrix of a pair against a
/// candidate sequence. Failure is a report, not an error.
pub fn orthogonality_check(
    pair: &ShefferPair,
    sequence: &[XPoly],
    n_max: usize,
) -> Result<OrthogonalityReport, UmbralError> {
    assert!(sequence.len() > n_max, "sequence must provide members 0..=n_max");
    let mut failures = Vec::new();
    for (n, member) in sequence.iter().enumerate().take(n_max + 1) {
        for k in 0..=n_max {
            let pairing = lambda_functional(&pair.pairing_series(k), member)?;
            let expected = if n == k {
                LPoly::from_rat(factorial_rat(n))
            } else {
                LPoly::zero()
            };
            if pairing != expected {
                failures.push(OrthogonalityFailure {
                    n,
                    k,
                    got: lpoly_string(&pairing, Style::Text),
                    expected: lpoly_string(&expected, Style::Text),
                });
            }
        }
    }
    Ok(OrthogonalityReport { n_max, failures })
}

/// Connection coefficients between two λ-Sheffer sequences: the triangular
/// matrix C with S_{n,λ} = Σ_k C\[n\]\[k\] · r_{k,λ}, where S belongs to
/// `source` = (g, f) and r to `target` = (h, l). Row n has n+1 entries.
///
/// C_{n,k} = (1/k!) ⟨ (h(f̄)/g(f̄)) · (l(f̄))^k | (x)_{n,λ} ⟩_λ.
pub fn connection_coefficients(
    source: &ShefferPair,
    target: &ShefferPair,
    n_max: usize,
) -> Result<Vec<Vec<LPoly>>, UmbralError> {
    let prec = source.precision().min(target.precision());
    if prec < n_max {
        return Err(UmbralError::InsufficientPrecision { needed: n_max, available: prec });
    }
    let f_bar = source.f.invert()?;
    let h_of = target.g.compose(&f_bar);
    let g_of = source.g.compose(&f_bar);
    let l_of = DeltaSeries::new(target.f.series().compose(&f_bar))
        .expect("delta composed with delta is delta");
    let base = h_of.div(&g_of)?;

    let mut rows: Vec<Vec<LPoly>> = vec![Vec::new(); n_max + 1];
    let mut power = base;
    for k in 0..=n_max {
        if k > 0 {
            power = power.mul(l_of.series());
        }
        // ⟨F | (x)_{n,λ}⟩ = n!·[t^n]F, so C_{n,k} = (n!/k!)·[t^n](base·l̄^k).
        let k_fact = factorial_rat(k);
        for (n, row) in rows.iter_mut().enumerate().take(n_max + 1).skip(k) {
            let c = power
                .coeff(n)
                .as_lpoly()
                .ok_or(UmbralError::XDependentCoefficient { index: n })?;
            let scale = factorial_rat(n)
                .checked_div(&k_fact)
                .expect("factorial nonzero");
            row.push(c.scale_rat(&scale));
        }
    }
    Ok(rows)
}

/// Expands p in the λ-Sheffer basis of `pair`: returns C with
/// p = Σ_m C\[m\]·S_{m,λ}, computed by C_m = (1/m!)⟨g·f^m | p⟩_λ and verified
/// by exact reconstruction before returning.
pub fn expand_in_sheffer_basis(
    p: &XPoly,
    pair: &ShefferPair,
) -> Result<Vec<LPoly>, UmbralError> {
    let deg = p.x_degree().unwrap_or(0);
    if pair.precision() < deg {
        return Err(UmbralError::InsufficientPrecision {
            needed: deg,
            available: pair.precision(),
        });
    }
    let mut coeffs = Vec::with_capacity(deg + 1);
    for m in 0..=deg {
        let pairing = lambda_functional(&pair.pairing_series(m), p)?;
        coeffs.push(pairing.scale_rat(&factorial_rat(m).recip()));
    }
    // Internal check: the coefficients must reproduce p exactly.
    let mut acc = XPoly::zero();
    for (m, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &pair.sheffer_polynomial(m)?.scale_lpoly(c);
        }
    }
    if &acc != p {
        let index = (0..=deg)
            .find(|&m| {
                let got = acc.coeff(m);
                let want = p.coeff(m);
                got != want
            })
            .unwrap_or(0);
        return Err(UmbralError::ReconstructionMismatch { index });
    }
    Ok(coeffs)
}
