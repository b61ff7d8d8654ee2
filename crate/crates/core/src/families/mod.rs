//! The three degenerate polynomial families, built from their generating
//! functions:
//!
//! * poly-Bernoulli: Li_{k,λ}(1−e_λ(−t)) / (e_λ(t)−1) · e_λ^x(t),
//! * higher-order Bernoulli: (t/(e_λ(t)−1))^r · e_λ^x(t),
//! * higher-order derangement: (1−t)^{−r} · e_λ^{−1}(t) · e_λ^x(t).
//!
//! The generating series is the single source of truth: the degree-n member
//! is always n!·[t^n] of the (memoized) series, and the "number" variant is
//! the polynomial evaluated at x = 0 — never a separate computation path.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use serde::{Deserialize, Serialize};

use crate::degen::{
    degenerate_exp, degenerate_polylog, e_lambda, e_lambda_inverse, e_lambda_minus_one, Exponent,
};
use crate::exact::{LPoly, Rat, XPoly};
use crate::series::{DeltaSeries, Series};

/// One of the three implemented polynomial families, with its parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// B_{n,λ}^{(k)}(x); any integer polylogarithm order k.
    PolyBernoulli { k: i64 },
    /// β_{n,λ}^{(r)}(x); order r ≥ 1.
    BernoulliOrder { r: u32 },
    /// d_{n,λ}^{(r)}(x); order r ≥ 1.
    DerangementOrder { r: u32 },
}

impl Family {
    fn validate(&self) {
        match self {
            Family::PolyBernoulli { .. } => {}
            Family::BernoulliOrder { r } | Family::DerangementOrder { r } => {
                assert!(*r >= 1, "family order must be a positive integer");
            }
        }
    }
}

/// Which form of a family member to produce.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    Polynomial,
    /// The member evaluated at x = 0.
    Number,
}

/// A fully specified request: family, degree, and form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub variant: Variant,
}

type SeriesCache = Mutex<HashMap<(Family, usize), Arc<Series>>>;

static GF_CACHE: LazyLock<SeriesCache> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn build_generating_series(family: &Family, precision: usize) -> Series {
    // Quotient constructions lose one order to valuation cancellation, so
    // the delta-series inputs are built one order higher.
    let inner = precision + 1;
    let x_free = match family {
        Family::PolyBernoulli { k } => {
            let arg = DeltaSeries::new(
                Series::one(inner).sub(&e_lambda(inner).negate_argument()),
            )
            .expect("1 − e_λ(−t) is delta");
            let numerator = degenerate_polylog(*k, inner).series().compose(&arg);
            numerator
                .div(e_lambda_minus_one(inner).series())
                .expect("shared valuation 1, unit reduced leading coefficient")
        }
        Family::BernoulliOrder { r } => Series::t(inner)
            .div(e_lambda_minus_one(inner).series())
            .expect("shared valuation 1, unit reduced leading coefficient")
            .pow(*r as usize),
        Family::DerangementOrder { r } => {
            let one_minus_t = Series::one(precision).sub(&Series::t(precision));
            Series::one(precision)
                .div(&one_minus_t.pow(*r as usize))
                .expect("unit constant term")
                .mul(&e_lambda_inverse(precision))
        }
    };
    x_free.mul(&degenerate_exp(&Exponent::X, precision))
}

/// The truncated generating function of a family, memoized per
/// (family, precision). The result has precision exactly `precision`.
pub fn family_generating_series(family: &Family, precision: usize) -> Arc<Series> {
    family.validate();
    let mut cache = GF_CACHE.lock().expect("family cache poisoned");
    cache
        .entry((*family, precision))
        .or_insert_with(|| Arc::new(build_generating_series(family, precision)))
        .clone()
}

/// The degree-n member of a family, an exact polynomial of x-degree n.
pub fn member(family: &Family, n: usize) -> XPoly {
    family_generating_series(family, n)
        .extract(n)
        .expect("generating series carries precision n")
}

/// All members of degree 0..=n_max, extracted from one generating series.
pub fn members_up_to(family: &Family, n_max: usize) -> Vec<XPoly> {
    let gf = family_generating_series(family, n_max);
    (0..=n_max)
        .map(|n| gf.extract(n).expect("within precision"))
        .collect()
}

/// The degree-n "number": the member evaluated at x = 0.
pub fn number(family: &Family, n: usize) -> LPoly {
    member(family, n).eval_x(&Rat::zero())
}

/// The member evaluated at a rational x.
pub fn member_at(family: &Family, n: usize, x: &Rat) -> LPoly {
    member(family, n).eval_x(x)
}

/// Resolves a [`FamilySpec`]: the polynomial, or its x = 0 value lifted back
/// into Q\[λ\]\[x\] for a uniform return type.
pub fn resolve(spec: &FamilySpec) -> XPoly {
    match spec.variant {
        Variant::Polynomial => member(&spec.family, spec.n),
        Variant::Number => XPoly::from_lpoly(number(&spec.family, spec.n)),
    }
}

/// B_{n,λ}^{(k)}(x), the degenerate poly-Bernoulli polynomial.
pub fn poly_bernoulli(k: i64, n: usize) -> XPoly {
    member(&Family::PolyBernoulli { k }, n)
}

/// β_{n,λ}^{(r)}(x), the degenerate Bernoulli polynomial of order r.
pub fn bernoulli_order(r: u32, n: usize) -> XPoly {
    member(&Family::BernoulliOrder { r }, n)
}

/// d_{n,λ}^{(r)}(x), the degenerate derangement polynomial of order r.
pub fn derangement_order(r: u32, n: usize) -> XPoly {
    member(&Family::DerangementOrder { r }, n)
}

#[cfg(test)]
mod tests;
