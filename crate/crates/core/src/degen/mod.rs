//! Degenerate special functions and number triangles.
//!
//! The λ-falling factorial (x)_{n,λ} = x(x−λ)⋯(x−(n−1)λ) replaces x^n
//! throughout. On top of it:
//!
//! * the degenerate exponential e_λ^x(t) = Σ (x)_{n,λ} t^n/n!,
//! * its compositional inverse, represented as the delta series
//!   log_λ(1+t) = Σ_{n≥1} ∏_{j=1}^{n−1}(λ−j) · t^n/n!,
//! * the degenerate polylogarithm Li_{k,λ}(u) = Σ_{n≥1} ∏_{j=1}^{n−1}(j−λ)
//!   / ((n−1)! n^k) · u^n for any integer k,
//! * the degenerate Stirling triangles S_{1,λ} and S_{2,λ}, extracted from
//!   powers of log_λ(1+t) and e_λ(t)−1 respectively.
//!
//! The symbols (1)_{n,1/λ} that appear in the classical closed forms never
//! materialize: they always occur pre-multiplied by a power of λ, and the
//! polynomial identities λ^{n−1}(1)_{n,1/λ} = ∏_{j=1}^{n−1}(λ−j) and
//! (−λ)^{n−1}(1)_{n,1/λ} = ∏_{j=1}^{n−1}(j−λ) keep every coefficient inside
//! Q\[λ\]. In particular λ = 0 is an ordinary evaluation point everywhere.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use serde::Serialize;

use crate::exact::{factorial_rat, LPoly, Rat, XPoly};
use crate::series::{DeltaSeries, Series};

/// Which falling factorial: the λ-deformed one or the plain one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FallingMode {
    /// (x)_{n,λ} = x(x−λ)⋯(x−(n−1)λ)
    Lambda,
    /// (x)_n = x(x−1)⋯(x−n+1), stored with λ-free coefficients
    Plain,
}

/// The exponent of a degenerate exponential series.
#[derive(Clone, PartialEq, Debug)]
pub enum Exponent {
    Scalar(Rat),
    X,
}

/// (x)_{n,λ} or (x)_n as an element of Q\[λ\]\[x\]; n = 0 gives 1.
pub fn falling_factorial(n: usize, mode: FallingMode) -> XPoly {
    let mut acc = XPoly::one();
    for i in 0..n {
        let shift = match mode {
            FallingMode::Lambda => LPoly::new(vec![Rat::zero(), Rat::from_int(-(i as i64))]),
            FallingMode::Plain => LPoly::from_int(-(i as i64)),
        };
        acc = &acc * &XPoly::new(vec![shift, LPoly::one()]);
    }
    acc
}

/// (a)_{n,λ} for a rational a, as an element of Q\[λ\].
pub fn falling_factorial_scalar(a: &Rat, n: usize) -> LPoly {
    let mut acc = LPoly::one();
    for i in 0..n {
        acc = &acc * &LPoly::new(vec![a.clone(), Rat::from_int(-(i as i64))]);
    }
    acc
}

/// ∏_{j=1}^{n−1} (λ − j): the polynomial form of λ^{n−1}(1)_{n,1/λ}.
pub fn lambda_minus_j_product(n: usize) -> LPoly {
    let mut acc = LPoly::one();
    for j in 1..n {
        acc = &acc * &LPoly::new(vec![Rat::from_int(-(j as i64)), Rat::one()]);
    }
    acc
}

/// ∏_{j=1}^{n−1} (j − λ): the polynomial form of (−λ)^{n−1}(1)_{n,1/λ}.
pub fn j_minus_lambda_product(n: usize) -> LPoly {
    let mut acc = LPoly::one();
    for j in 1..n {
        acc = &acc * &LPoly::new(vec![Rat::from_int(j as i64), Rat::from_int(-1)]);
    }
    acc
}

/// e_λ^a(t) = Σ_{n=0}^{N} (a)_{n,λ} t^n/n!.
pub fn degenerate_exp(a: &Exponent, precision: usize) -> Series {
    let coeff = |n: usize| -> XPoly {
        let inv_fact = factorial_rat(n).recip();
        match a {
            Exponent::Scalar(r) => {
                XPoly::from_lpoly(falling_factorial_scalar(r, n).scale_rat(&inv_fact))
            }
            Exponent::X => falling_factorial(n, FallingMode::Lambda).scale_rat(&inv_fact),
        }
    };
    Series::from_coeffs((0..=precision).map(coeff).collect())
}

/// e_λ(t) = e_λ^1(t).
pub fn e_lambda(precision: usize) -> Series {
    degenerate_exp(&Exponent::Scalar(Rat::one()), precision)
}

/// e_λ^{−1}(t).
pub fn e_lambda_inverse(precision: usize) -> Series {
    degenerate_exp(&Exponent::Scalar(Rat::from_int(-1)), precision)
}

/// e_λ(t) − 1 as a delta series.
pub fn e_lambda_minus_one(precision: usize) -> DeltaSeries {
    DeltaSeries::new(e_lambda(precision).sub(&Series::one(precision)))
        .expect("e_λ(t) − 1 has zero constant term")
}

/// The degenerate logarithm as the delta series log_λ(1+t), the
/// compositional inverse of e_λ(t) − 1.
pub fn degenerate_log(precision: usize) -> DeltaSeries {
    assert!(precision >= 1, "log_λ needs precision >= 1");
    let coeff = |n: usize| -> XPoly {
        if n == 0 {
            return XPoly::zero();
        }
        XPoly::from_lpoly(lambda_minus_j_product(n).scale_rat(&factorial_rat(n).recip()))
    };
    DeltaSeries::new(Series::from_coeffs((0..=precision).map(coeff).collect()))
        .expect("log_λ is delta by construction")
}

/// The degenerate polylogarithm Li_{k,λ}(u) as a delta series in u.
///
/// Coefficient of u^n: ∏_{j=1}^{n−1}(j−λ) / ((n−1)! n^k); for k < 0 the
/// power of n multiplies the numerator. Any integer k is accepted.
pub fn degenerate_polylog(k: i64, precision: usize) -> DeltaSeries {
    assert!(precision >= 1, "Li_{{k,λ}} needs precision >= 1");
    let coeff = |n: usize| -> XPoly {
        if n == 0 {
            return XPoly::zero();
        }
        let scale = Rat::from_int(n as i64).pow_signed(-k) * factorial_rat(n - 1).recip();
        XPoly::from_lpoly(j_minus_lambda_product(n).scale_rat(&scale))
    };
    DeltaSeries::new(Series::from_coeffs((0..=precision).map(coeff).collect()))
        .expect("Li_{k,λ} is delta by construction")
}

// ── Degenerate Stirling triangles ───────────────────────────────────────────

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StirlingKind {
    /// S_{1,λ}(n,k): coefficients of (x)_n in the basis {(x)_{l,λ}};
    /// extracted from powers of log_λ(1+t).
    First,
    /// S_{2,λ}(n,k): coefficients of (x)_{n,λ} in the basis {(x)_l};
    /// extracted from powers of e_λ(t)−1.
    Second,
}

/// Triangular table of degenerate Stirling numbers, entries in Q\[λ\].
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StirlingTable {
    pub kind: StirlingKind,
    pub n_max: usize,
    /// Row n holds S(n,0), …, S(n,n).
    pub rows: Vec<Vec<LPoly>>,
}

impl StirlingTable {
    /// S(n,k); entries with k > n are zero.
    pub fn entry(&self, n: usize, k: usize) -> LPoly {
        assert!(n <= self.n_max, "row {n} beyond table order {}", self.n_max);
        if k > n {
            LPoly::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    fn build(kind: StirlingKind, n_max: usize) -> StirlingTable {
        let base: Series = if n_max == 0 {
            Series::zero(0)
        } else {
            match kind {
                StirlingKind::Second => e_lambda_minus_one(n_max).into_series(),
                StirlingKind::First => degenerate_log(n_max).into_series(),
            }
        };
        // Column by column: rows[n] receives k = 0, 1, …, n in push order.
        let mut rows: Vec<Vec<LPoly>> = vec![Vec::new(); n_max + 1];
        let mut power = Series::one(n_max);
        let mut k_fact = Rat::one();
        for k in 0..=n_max {
            if k > 0 {
                power = power.mul(&base);
                k_fact = k_fact * Rat::from_int(k as i64);
            }
            for (n, row) in rows.iter_mut().enumerate().take(n_max + 1).skip(k) {
                // S(n,k) = n!/k! · [t^n] base^k
                let c = power
                    .coeff(n)
                    .as_lpoly()
                    .expect("Stirling generating series is x-free");
                let scale = factorial_rat(n).checked_div(&k_fact).expect("k! nonzero");
                row.push(c.scale_rat(&scale));
            }
        }
        StirlingTable { kind, n_max, rows }
    }
}

type StirlingCache = Mutex<HashMap<(StirlingKind, usize), Arc<StirlingTable>>>;

static STIRLING_CACHE: LazyLock<StirlingCache> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// The degenerate Stirling triangle up to order `n_max`, cached per
/// (kind, n_max). Tables are immutable and shared.
pub fn stirling_lambda(kind: StirlingKind, n_max: usize) -> Arc<StirlingTable> {
    let mut cache = STIRLING_CACHE.lock().expect("stirling cache poisoned");
    cache
        .entry((kind, n_max))
        .or_insert_with(|| Arc::new(StirlingTable::build(kind, n_max)))
        .clone()
}

#[cfg(test)]
mod tests;
