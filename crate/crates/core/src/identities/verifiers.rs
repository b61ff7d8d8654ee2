//! Per-identity witness collectors.
//!
//! Layering discipline: the left-hand side of every check comes from the
//! `families` generating functions (or `degen` constructors), the right-hand
//! side from closed sums assembled out of Stirling tables, umbral
//! functionals, and evaluated members. No verifier calls the same top-level
//! routine for both sides.

// Index-style loops mirror the summation bounds of the closed forms.
#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degen::{
    degenerate_log, degenerate_polylog, e_lambda, falling_factorial, lambda_minus_j_product,
    stirling_lambda, FallingMode, StirlingKind, StirlingTable,
};
use crate::exact::{binomial_rat, factorial_rat, LPoly, Rat, XPoly};
use crate::families::{self, Family};
use crate::series::Series;
use crate::umbral::{lambda_diff_op, lambda_functional, ShefferPair};

use super::{IdentityId, ParamGrid, ParamValue, Witness};

type Params = BTreeMap<String, ParamValue>;

pub(super) fn run(identity: IdentityId, grid: &ParamGrid) -> (Params, Vec<Witness>) {
    match identity {
        IdentityId::Thm1 => thm1(grid),
        IdentityId::Cor2 => cor2(grid),
        IdentityId::Thm3 => thm3(grid),
        IdentityId::Thm4 => thm4(grid),
        IdentityId::Thm5 => thm5(grid),
        IdentityId::Thm6 => thm6(grid),
        IdentityId::Thm7 => thm7(grid),
        IdentityId::Thm8 => thm8(grid),
        IdentityId::Eq7 => eq7(grid),
        IdentityId::Eq19 => eq19(grid),
        IdentityId::Eq35VariantA => eq35(grid, Eq35Second::AtZero),
        IdentityId::Eq35VariantB => eq35(grid, Eq35Second::AtOne),
        IdentityId::Eq40 => eq40(grid),
        IdentityId::StirlingInversion => stirling_inversion(grid),
        IdentityId::Li1Log => li1_log(grid),
    }
}

fn params(entries: &[(&str, ParamValue)]) -> Params {
    entries.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect()
}

fn ints(values: impl IntoIterator<Item = i64>) -> ParamValue {
    ParamValue::Ints(values.into_iter().collect())
}

fn witness_if_different(point: Params, lhs: &XPoly, rhs: &XPoly) -> Option<Witness> {
    let difference = lhs - rhs;
    if difference.is_zero() {
        None
    } else {
        Some(Witness { params: point, difference })
    }
}

fn ff(j: usize) -> XPoly {
    falling_factorial(j, FallingMode::Lambda)
}

/// The family pairs a grid selects, with stable labels and their sequences
/// (degree 0..=n_max) from the generating-function route.
fn grid_pairs(grid: &ParamGrid, precision: usize) -> Vec<(Params, ShefferPair, Vec<XPoly>)> {
    let mut pairs = Vec::new();
    let members = |f: &Family| families::members_up_to(f, grid.n_max);
    for &k in &grid.k_set {
        pairs.push((
            params(&[("family", "poly_bernoulli".into()), ("k", k.into())]),
            ShefferPair::poly_bernoulli(k, precision),
            members(&Family::PolyBernoulli { k }),
        ));
    }
    for &r in &grid.r_set {
        pairs.push((
            params(&[("family", "bernoulli".into()), ("r", (r as i64).into())]),
            ShefferPair::bernoulli_order(r, precision),
            members(&Family::BernoulliOrder { r }),
        ));
    }
    for &r in &grid.r_set {
        pairs.push((
            params(&[("family", "derangement".into()), ("r", (r as i64).into())]),
            ShefferPair::derangement(r, precision),
            members(&Family::DerangementOrder { r }),
        ));
    }
    pairs
}

fn k_r_s_params(grid: &ParamGrid, use_k: bool, use_r: bool, use_s: bool) -> Params {
    let mut map = params(&[("n_max", grid.n_max.into())]);
    if use_k {
        map.insert("k_set".to_owned(), ints(grid.k_set.iter().copied()));
    }
    if use_r {
        map.insert("r_set".to_owned(), ints(grid.r_set.iter().map(|&r| r as i64)));
    }
    if use_s {
        map.insert("s_set".to_owned(), ints(grid.s_set.iter().map(|&s| s as i64)));
    }
    map
}

fn pair_precision(grid: &ParamGrid) -> usize {
    grid.n_max.max(1)
}

// ── thm1: S_n = Σ_j (1/j!)·⟨(1/g(f̄))·f̄^j | (x)_{n,λ}⟩·(x)_{j,λ} ────────────

fn thm1(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let prec = pair_precision(grid);
    let mut witnesses = Vec::new();
    let mut pairs = grid_pairs(grid, prec);
    // The identity pair (1, t) is part of the catalog: its sequence is the
    // λ-falling factorials themselves.
    pairs.insert(
        0,
        (
            params(&[("family", "falling_factorial".into())]),
            ShefferPair::falling_lambda(prec),
            (0..=grid.n_max).map(ff).collect(),
        ),
    );

    for (label, pair, members) in &pairs {
        let f_bar = pair.f().invert().expect("pair f is invertible");
        let g_of = pair.g().compose(&f_bar);
        let base = Series::one(prec).div(&g_of).expect("g(f̄) has unit constant");
        // powers[j] = base · f̄^j
        let mut powers = Vec::with_capacity(grid.n_max + 1);
        powers.push(base);
        for j in 1..=grid.n_max {
            powers.push(powers[j - 1].mul(f_bar.series()));
        }
        for n in 0..=grid.n_max {
            let mut rhs = XPoly::zero();
            for (j, power) in powers.iter().enumerate().take(n + 1) {
                let pairing =
                    lambda_functional(power, &ff(n)).expect("x-free scalar series");
                let c = pairing.scale_rat(&factorial_rat(j).recip());
                if !c.is_zero() {
                    rhs = &rhs + &ff(j).scale_lpoly(&c);
                }
            }
            let mut point = label.clone();
            point.insert("n".to_owned(), n.into());
            witnesses.extend(witness_if_different(point, &members[n], &rhs));
        }
    }
    let mut map = k_r_s_params(grid, true, true, false);
    map.insert("pairs".to_owned(), "falling_factorial + all family pairs".into());
    (map, witnesses)
}

// ── cor2: B_n^{(k)}(x) = Σ_j C(n,j)·B_{n−j}^{(k)}·(x)_{j,λ} ─────────────────

fn cor2(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let mut witnesses = Vec::new();
    for &k in &grid.k_set {
        let family = Family::PolyBernoulli { k };
        let members = families::members_up_to(&family, grid.n_max);
        let numbers: Vec<LPoly> =
            members.iter().map(|m| m.eval_x(&Rat::zero())).collect();
        for n in 0..=grid.n_max {
            let mut rhs = XPoly::zero();
            for j in 0..=n {
                let c = numbers[n - j].scale_rat(&binomial_rat(n, j));
                if !c.is_zero() {
                    rhs = &rhs + &ff(j).scale_lpoly(&c);
                }
            }
            let point = params(&[("k", k.into()), ("n", n.into())]);
            witnesses.extend(witness_if_different(point, &members[n], &rhs));
        }
    }
    (k_r_s_params(grid, true, false, false), witnesses)
}

// ── thm3: double Stirling transform ─────────────────────────────────────────

pub(super) fn thm3_rhs(
    n: usize,
    numbers: &[LPoly],
    s2: &StirlingTable,
    s1: &StirlingTable,
) -> XPoly {
    let mut by_basis = vec![LPoly::zero(); n + 1];
    for l in 0..=n {
        let s2_nl = s2.entry(n, l);
        if s2_nl.is_zero() {
            continue;
        }
        for m in 0..=l {
            let weight = &s2_nl * &numbers[m];
            if weight.is_zero() {
                continue;
            }
            for j in 0..=(l - m) {
                let c = (&weight * &s1.entry(l, j + m)).scale_rat(&binomial_rat(j + m, m));
                by_basis[j] = &by_basis[j] + &c;
            }
        }
    }
    assemble(&by_basis, ff)
}

fn assemble(coeffs: &[LPoly], basis: impl Fn(usize) -> XPoly) -> XPoly {
    let mut acc = XPoly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basis(i).scale_lpoly(c);
        }
    }
    acc
}

fn thm3(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let s2 = stirling_lambda(StirlingKind::Second, grid.n_max);
    let s1 = stirling_lambda(StirlingKind::First, grid.n_max);
    let mut witnesses = Vec::new();
    for &k in &grid.k_set {
        let family = Family::PolyBernoulli { k };
        let members = families::members_up_to(&family, grid.n_max);
        let numbers: Vec<LPoly> =
            members.iter().map(|m| m.eval_x(&Rat::zero())).collect();
        for n in 0..=grid.n_max {
            let rhs = thm3_rhs(n, &numbers, &s2, &s1);
            let point = params(&[("k", k.into()), ("n", n.into())]);
            witnesses.extend(witness_if_different(point, &members[n], &rhs));
        }
    }
    (k_r_s_params(grid, true, false, false), witnesses)
}

// ── thm4: Bernoulli basis via ∏(λ−j)·S_{2,λ} ────────────────────────────────

pub(super) fn thm4_rhs(n: usize, k: i64, betas: &[XPoly], s2: &StirlingTable) -> XPoly {
    let mut acc = XPoly::zero();
    for (l, beta) in betas.iter().enumerate().take(n + 1) {
        let mut scalar = LPoly::zero();
        for m in 1..=(n - l + 1) {
            let c = (&lambda_minus_j_product(m) * &s2.entry(n - l + 1, m))
                .scale_rat(&Rat::from_int(m as i64).pow_signed(1 - k));
            scalar = &scalar + &c;
        }
        let sign = if (n - l).is_multiple_of(2) { Rat::one() } else { Rat::from_int(-1) };
        let weight = sign * binomial_rat(n, l) / Rat::from_int((n - l + 1) as i64);
        scalar = scalar.scale_rat(&weight);
        if !scalar.is_zero() {
            acc = &acc + &beta.scale_lpoly(&scalar);
        }
    }
    acc
}

fn thm4(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let s2 = stirling_lambda(StirlingKind::Second, grid.n_max + 1);
    let betas = families::members_up_to(&Family::BernoulliOrder { r: 1 }, grid.n_max);
    let mut witnesses = Vec::new();
    for &k in &grid.k_set {
        let members = families::members_up_to(&Family::PolyBernoulli { k }, grid.n_max);
        for n in 0..=grid.n_max {
            let rhs = thm4_rhs(n, k, &betas, &s2);
            let point = params(&[("k", k.into()), ("n", n.into())]);
            witnesses.extend(witness_if_different(point, &members[n], &rhs));
        }
    }
    (k_r_s_params(grid, true, false, false), witnesses)
}

// ── thm5: order-s Bernoulli basis via S_{2,λ}(l+s,s) ────────────────────────

pub(super) fn thm5_rhs(
    n: usize,
    s: u32,
    numbers: &[LPoly],
    betas_s: &[XPoly],
    s2: &StirlingTable,
) -> XPoly {
    let s_usize = s as usize;
    let mut acc = XPoly::zero();
    for (m, beta) in betas_s.iter().enumerate().take(n + 1) {
        let mut inner = LPoly::zero();
        for l in 0..=(n - m) {
            let weight = binomial_rat(n - m, l)
                .checked_div(&binomial_rat(l + s_usize, s_usize))
                .expect("binomial is positive");
            let c = (&s2.entry(l + s_usize, s_usize) * &numbers[n - m - l]).scale_rat(&weight);
            inner = &inner + &c;
        }
        let coeff = inner.scale_rat(&binomial_rat(n, m));
        if !coeff.is_zero() {
            acc = &acc + &beta.scale_lpoly(&coeff);
        }
    }
    acc
}

fn thm5(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let s_max = grid.s_set.iter().copied().max().unwrap_or(1) as usize;
    let s2 = stirling_lambda(StirlingKind::Second, grid.n_max + s_max);
    let mut witnesses = Vec::new();
    for &k in &grid.k_set {
        let members = families::members_up_to(&Family::PolyBernoulli { k }, grid.n_max);
        let numbers: Vec<LPoly> =
            members.iter().map(|m| m.eval_x(&Rat::zero())).collect();
        for &s in &grid.s_set {
            let betas_s = families::members_up_to(&Family::BernoulliOrder { r: s }, grid.n_max);
            for n in 0..=grid.n_max {
                let rhs = thm5_rhs(n, s, &numbers, &betas_s, &s2);
                let point = params(&[("k", k.into()), ("n", n.into()), ("s", (s as i64).into())]);
                witnesses.extend(witness_if_different(point, &members[n], &rhs));
            }
        }
    }
    (k_r_s_params(grid, true, false, true), witnesses)
}

// ── thm6/thm7: reconstruction through the derangement bases ─────────────────

/// Deterministic random polynomial of x-degree ≤ n_max with small rational
/// coefficients of λ-degree ≤ 2.
fn random_xpoly(rng: &mut ChaCha8Rng, n_max: usize) -> XPoly {
    let degree = rng.gen_range(0..=n_max);
    let coeffs = (0..=degree)
        .map(|_| {
            let lambda_coeffs = (0..=rng.gen_range(0..=2usize))
                .map(|_| Rat::frac(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                .collect();
            LPoly::new(lambda_coeffs)
        })
        .collect();
    XPoly::new(coeffs)
}

fn reconstruction_witnesses(
    grid: &ParamGrid,
    r_values: &[u32],
    seed: u64,
) -> Vec<Witness> {
    let prec = pair_precision(grid);
    let mut witnesses = Vec::new();
    let one_minus_t = Series::one(prec).sub(&Series::t(prec));
    let e = e_lambda(prec);
    for &r in r_values {
        let base = one_minus_t.pow(r as usize).mul(&e);
        let members = families::members_up_to(&Family::DerangementOrder { r }, grid.n_max);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(r));
        for sample in 0..grid.samples {
            let p = random_xpoly(&mut rng, grid.n_max);
            let degree = p.x_degree().unwrap_or(0);
            let mut reconstruction = XPoly::zero();
            let mut power = base.clone();
            for (m, member) in members.iter().enumerate().take(degree + 1) {
                if m > 0 {
                    power = power.mul(&Series::t(prec));
                }
                let c = lambda_functional(&power, &p)
                    .expect("scalar series of sufficient precision")
                    .scale_rat(&factorial_rat(m).recip());
                if !c.is_zero() {
                    reconstruction = &reconstruction + &member.scale_lpoly(&c);
                }
            }
            let point = params(&[
                ("degree", degree.into()),
                ("r", (r as i64).into()),
                ("sample", sample.into()),
            ]);
            witnesses.extend(witness_if_different(point, &p, &reconstruction));
        }
    }
    witnesses
}

fn thm6(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let witnesses = reconstruction_witnesses(grid, &[1], 0x6_5EED);
    let mut map = params(&[("n_max", grid.n_max.into()), ("samples", grid.samples.into())]);
    map.insert("r_set".to_owned(), ints([1]));
    (map, witnesses)
}

fn thm7(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let witnesses = reconstruction_witnesses(grid, &grid.r_set, 0x7_5EED);
    let mut map = k_r_s_params(grid, false, true, false);
    map.insert("samples".to_owned(), grid.samples.into());
    (map, witnesses)
}

// ── thm8 / eq40: order-r derangement basis with values at 1 ─────────────────

fn derangement_basis_rhs(
    n: usize,
    r: u32,
    values_at_one: &[LPoly],
    basis: &[XPoly],
) -> XPoly {
    let mut acc = XPoly::zero();
    for (m, member) in basis.iter().enumerate().take(n + 1) {
        let mut inner = LPoly::zero();
        for j in 0..=(r as usize).min(n - m) {
            let weight = binomial_rat(r as usize, j)
                * binomial_rat(n - m, j)
                * factorial_rat(j);
            let signed = if j % 2 == 0 { weight } else { -weight };
            inner = &inner + &values_at_one[n - m - j].scale_rat(&signed);
        }
        let coeff = inner.scale_rat(&binomial_rat(n, m));
        if !coeff.is_zero() {
            acc = &acc + &member.scale_lpoly(&coeff);
        }
    }
    acc
}

fn thm8(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let mut witnesses = Vec::new();
    for &k in &grid.k_set {
        let members = families::members_up_to(&Family::PolyBernoulli { k }, grid.n_max);
        let at_one: Vec<LPoly> = members.iter().map(|m| m.eval_x(&Rat::one())).collect();
        for &r in &grid.r_set {
            let basis = families::members_up_to(&Family::DerangementOrder { r }, grid.n_max);
            for n in 0..=grid.n_max {
                let rhs = derangement_basis_rhs(n, r, &at_one, &basis);
                let point = params(&[("k", k.into()), ("n", n.into()), ("r", (r as i64).into())]);
                witnesses.extend(witness_if_different(point, &members[n], &rhs));
            }
        }
    }
    (k_r_s_params(grid, true, true, false), witnesses)
}

fn eq40(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let d1 = families::members_up_to(&Family::DerangementOrder { r: 1 }, grid.n_max);
    let at_one: Vec<LPoly> = d1.iter().map(|m| m.eval_x(&Rat::one())).collect();
    let mut witnesses = Vec::new();
    for &r in &grid.r_set {
        let basis = families::members_up_to(&Family::DerangementOrder { r }, grid.n_max);
        for n in 0..=grid.n_max {
            let rhs = derangement_basis_rhs(n, r, &at_one, &basis);
            let point = params(&[("n", n.into()), ("r", (r as i64).into())]);
            witnesses.extend(witness_if_different(point, &d1[n], &rhs));
        }
    }
    (k_r_s_params(grid, false, true, false), witnesses)
}

// ── eq7 ─────────────────────────────────────────────────────────────────────

fn eq7(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let lhs = families::members_up_to(&Family::PolyBernoulli { k: 1 }, grid.n_max);
    let rhs = families::members_up_to(&Family::BernoulliOrder { r: 1 }, grid.n_max);
    let mut witnesses = Vec::new();
    for n in 0..=grid.n_max {
        let point = params(&[("n", n.into())]);
        witnesses.extend(witness_if_different(point, &lhs[n], &rhs[n]));
    }
    (params(&[("n_max", grid.n_max.into())]), witnesses)
}

// ── eq19: lowering ──────────────────────────────────────────────────────────

fn eq19(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let prec = pair_precision(grid);
    let mut witnesses = Vec::new();
    for (label, pair, members) in grid_pairs(grid, prec) {
        // Apply each pair's own delta series as the operator.
        let f = pair.f().series();
        for n in 1..=grid.n_max {
            let lhs = lambda_diff_op(f, &members[n]).expect("scalar series");
            let rhs = members[n - 1].scale_rat(&Rat::from_int(n as i64));
            let mut point = label.clone();
            point.insert("n".to_owned(), n.into());
            witnesses.extend(witness_if_different(point, &lhs, &rhs));
        }
    }
    (k_r_s_params(grid, true, true, false), witnesses)
}

// ── eq35: the adjudicated pair ──────────────────────────────────────────────

#[derive(Clone, Copy)]
pub(super) enum Eq35Second {
    /// Second coefficient read as the number B^{(k)}_{n−l−1,λ} (at x = 0).
    AtZero,
    /// Second coefficient read as the value B^{(k)}_{n−l−1,λ}(1).
    AtOne,
}

fn eq35(grid: &ParamGrid, second: Eq35Second) -> (Params, Vec<Witness>) {
    let d1 = families::members_up_to(&Family::DerangementOrder { r: 1 }, grid.n_max);
    struct PerK {
        k: i64,
        members: Vec<XPoly>,
        at_one: Vec<LPoly>,
        at_zero: Vec<LPoly>,
    }
    let data: Vec<PerK> = grid
        .k_set
        .iter()
        .map(|&k| {
            let members = families::members_up_to(&Family::PolyBernoulli { k }, grid.n_max);
            let at_one = members.iter().map(|m| m.eval_x(&Rat::one())).collect();
            let at_zero = members.iter().map(|m| m.eval_x(&Rat::zero())).collect();
            PerK { k, members, at_one, at_zero }
        })
        .collect();
    // n outermost so the first witness carries the smallest failing degree.
    let mut witnesses = Vec::new();
    for n in 0..=grid.n_max {
        for per_k in &data {
            let second_values = match second {
                Eq35Second::AtZero => &per_k.at_zero,
                Eq35Second::AtOne => &per_k.at_one,
            };
            let mut rhs = XPoly::zero();
            for l in 0..=n {
                let mut c = per_k.at_one[n - l].scale_rat(&binomial_rat(n, l));
                if l < n {
                    let weight = Rat::from_int(n as i64) * binomial_rat(n - 1, l);
                    c = &c - &second_values[n - l - 1].scale_rat(&weight);
                }
                if !c.is_zero() {
                    rhs = &rhs + &d1[l].scale_lpoly(&c);
                }
            }
            let point = params(&[("k", per_k.k.into()), ("n", n.into())]);
            witnesses.extend(witness_if_different(point, &per_k.members[n], &rhs));
        }
    }
    (k_r_s_params(grid, true, false, false), witnesses)
}

// ── stirling inversion ──────────────────────────────────────────────────────

pub(super) fn stirling_inversion_witnesses(
    s2: &StirlingTable,
    s1: &StirlingTable,
    n_max: usize,
) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    for n in 0..=n_max {
        for j in 0..=n {
            let mut acc = LPoly::zero();
            for l in j..=n {
                acc = &acc + &(&s2.entry(n, l) * &s1.entry(l, j));
            }
            let expected = if n == j { LPoly::one() } else { LPoly::zero() };
            if acc != expected {
                witnesses.push(Witness {
                    params: params(&[("j", j.into()), ("n", n.into())]),
                    difference: XPoly::from_lpoly(&acc - &expected),
                });
            }
        }
    }
    witnesses
}

fn stirling_inversion(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let s2 = stirling_lambda(StirlingKind::Second, grid.n_max);
    let s1 = stirling_lambda(StirlingKind::First, grid.n_max);
    let witnesses = stirling_inversion_witnesses(&s2, &s1, grid.n_max);
    (params(&[("n_max", grid.n_max.into())]), witnesses)
}

// ── li1_log ─────────────────────────────────────────────────────────────────

fn li1_log(grid: &ParamGrid) -> (Params, Vec<Witness>) {
    let prec = pair_precision(grid);
    let li1 = degenerate_polylog(1, prec);
    let rhs = degenerate_log(prec).series().negate_argument().neg();
    let mut witnesses = Vec::new();
    for n in 0..=prec {
        let point = params(&[("n", n.into())]);
        witnesses.extend(witness_if_different(point, li1.coeff(n), rhs.coeff(n)));
    }
    (params(&[("n_max", grid.n_max.into())]), witnesses)
}
