use super::*;
use crate::exact::{Poly, QPoly};

fn lam() -> LPoly {
    LPoly::lambda()
}

#[test]
fn falling_factorial_base_cases() {
    assert_eq!(falling_factorial(0, FallingMode::Lambda), XPoly::one());
    assert_eq!(falling_factorial(0, FallingMode::Plain), XPoly::one());

    // (x)_{2,λ} = x² − λx
    let expected = Poly::new(vec![LPoly::zero(), -lam(), LPoly::one()]);
    assert_eq!(falling_factorial(2, FallingMode::Lambda), expected);

    // (x)_3 = x³ − 3x² + 2x
    let expected = Poly::new(vec![
        LPoly::zero(),
        LPoly::from_int(2),
        LPoly::from_int(-3),
        LPoly::one(),
    ]);
    assert_eq!(falling_factorial(3, FallingMode::Plain), expected);
}

#[test]
fn falling_factorial_specializations() {
    for n in 0..=6 {
        let deformed = falling_factorial(n, FallingMode::Lambda);
        // λ = 1 recovers the plain falling factorial.
        assert_eq!(
            deformed.eval_lambda(&Rat::one()),
            falling_factorial(n, FallingMode::Plain).eval_lambda(&Rat::zero()),
        );
        // λ = 0 collapses to x^n.
        let mono = QPoly::monomial(Rat::one(), n);
        assert_eq!(deformed.eval_lambda(&Rat::zero()), mono);
    }
}

#[test]
fn lambda_power_times_reciprocal_falling_is_polynomial() {
    // λ^{n−1}(1)_{n,1/λ} = ∏_{j=1}^{n−1}(λ−j) and
    // (−λ)^{n−1}(1)_{n,1/λ} = ∏_{j=1}^{n−1}(j−λ): checked at enough rational
    // points to pin the polynomials down exactly.
    for n in 1..=7usize {
        let mut pos = LPoly::one();
        let mut neg = LPoly::one();
        for j in 1..n {
            pos = &pos * &LPoly::new(vec![Rat::from_int(-(j as i64)), Rat::one()]);
            neg = &neg * &LPoly::new(vec![Rat::from_int(j as i64), Rat::from_int(-1)]);
        }
        for p in 1..=(n + 2) as i64 {
            let lam_val = Rat::frac(p, 3);
            let mut reciprocal_falling = Rat::one();
            for i in 0..n {
                reciprocal_falling =
                    reciprocal_falling * (Rat::one() - Rat::from_int(i as i64) / lam_val.clone());
            }
            let lam_pow = lam_val.pow_signed(n as i64 - 1);
            let neg_lam_pow = (-lam_val.clone()).pow_signed(n as i64 - 1);
            assert_eq!(pos.eval_rat(&lam_val), lam_pow * reciprocal_falling.clone());
            assert_eq!(neg.eval_rat(&lam_val), neg_lam_pow * reciprocal_falling);
        }
    }
}

#[test]
fn degenerate_exp_coefficients() {
    // 2!·[t²] e_λ(t) = (1)_{2,λ} = 1·(1−λ)
    let e = e_lambda(4);
    let expected = XPoly::from_lpoly(&LPoly::one() - &lam());
    assert_eq!(e.extract(2).unwrap(), expected);

    // e_λ^0(t) = 1
    let e0 = degenerate_exp(&Exponent::Scalar(Rat::zero()), 5);
    assert_eq!(e0, Series::one(5));

    // [t¹] e_λ^x(t) = x
    let ex = degenerate_exp(&Exponent::X, 3);
    assert_eq!(ex.coeff(1), &XPoly::x());
}

#[test]
fn degenerate_log_matches_inversion_and_classical_limit() {
    let prec = 8;
    let log = degenerate_log(prec);

    // [t¹] = 1 and 2!·[t²] = λ − 1.
    assert_eq!(log.coeff(1), &XPoly::one());
    assert_eq!(
        log.series().extract(2).unwrap(),
        XPoly::from_lpoly(&lam() - &LPoly::one())
    );

    // Defining property: log_λ is the compositional inverse of e_λ(t)−1.
    assert_eq!(e_lambda_minus_one(prec).invert().unwrap(), log);

    // λ → 0 recovers log(1+t) = t − t²/2 + t³/3 − t⁴/4 + …
    let classical = [
        Rat::one(),
        Rat::frac(-1, 2),
        Rat::frac(1, 3),
        Rat::frac(-1, 4),
    ];
    for (i, expected) in classical.iter().enumerate() {
        let got = log.coeff(i + 1).eval_lambda(&Rat::zero()).coeff(0);
        assert_eq!(&got, expected);
    }
}

#[test]
fn polylog_coefficients() {
    for k in [-2i64, -1, 0, 1, 2, 3] {
        let li = degenerate_polylog(k, 6);
        assert_eq!(li.coeff(1), &XPoly::one(), "unit linear coefficient at k={k}");
    }

    // k=2: coefficient of u² is (1−λ)/2² = (1−λ)/4.
    let li2 = degenerate_polylog(2, 4);
    let expected = (&LPoly::one() - &lam()).scale_rat(&Rat::frac(1, 4));
    assert_eq!(li2.coeff(2), &XPoly::from_lpoly(expected));
}

#[test]
fn polylog_k1_is_negated_log_of_negated_argument() {
    // Li_{1,λ}(u) = −log_λ(1−u)
    let prec = 9;
    let li1 = degenerate_polylog(1, prec);
    let rhs = degenerate_log(prec).series().negate_argument().neg();
    assert_eq!(li1.series(), &rhs);
}

#[test]
fn polylog_classical_limit() {
    // λ = 0: coefficient of u^n is 1/n^k.
    for k in [-2i64, -1, 0, 1, 2, 3] {
        let li = degenerate_polylog(k, 10);
        for n in 1..=10usize {
            let got = li.coeff(n).eval_lambda(&Rat::zero()).coeff(0);
            assert_eq!(got, Rat::from_int(n as i64).pow_signed(-k), "n={n}, k={k}");
        }
    }
}

#[test]
fn stirling_boundary_entries() {
    for kind in [StirlingKind::First, StirlingKind::Second] {
        let table = stirling_lambda(kind, 8);
        assert_eq!(table.entry(0, 0), LPoly::one());
        for n in 1..=8 {
            assert_eq!(table.entry(n, n), LPoly::one(), "{kind:?} S({n},{n})");
            assert!(table.entry(n, 0).is_zero(), "{kind:?} S({n},0)");
            assert!(table.entry(n.saturating_sub(1), n).is_zero());
        }
    }
}

#[test]
fn stirling_small_closed_values() {
    let s2 = stirling_lambda(StirlingKind::Second, 4);
    let one_minus = &LPoly::one() - &lam();
    assert_eq!(s2.entry(2, 1), one_minus);
    assert_eq!(s2.entry(3, 2), one_minus.scale_rat(&Rat::from_int(3)));
    assert_eq!(s2.entry(3, 2).eval_rat(&Rat::zero()), Rat::from_int(3));

    let s1 = stirling_lambda(StirlingKind::First, 4);
    assert_eq!(s1.entry(2, 1), &lam() - &LPoly::one());
    assert_eq!(s1.entry(2, 1).eval_rat(&Rat::zero()), Rat::from_int(-1));
}

/// Classical Stirling numbers by their recurrences, as independent oracles.
fn classical_stirling2(n_max: usize) -> Vec<Vec<Rat>> {
    let mut t = vec![vec![Rat::zero(); n_max + 1]; n_max + 1];
    t[0][0] = Rat::one();
    for n in 1..=n_max {
        for k in 1..=n {
            t[n][k] = Rat::from_int(k as i64) * t[n - 1][k].clone() + t[n - 1][k - 1].clone();
        }
    }
    t
}

fn classical_stirling1_signed(n_max: usize) -> Vec<Vec<Rat>> {
    let mut t = vec![vec![Rat::zero(); n_max + 1]; n_max + 1];
    t[0][0] = Rat::one();
    for n in 1..=n_max {
        for k in 1..=n {
            t[n][k] = t[n - 1][k - 1].clone()
                - Rat::from_int((n - 1) as i64) * t[n - 1][k].clone();
        }
    }
    t
}

#[test]
fn stirling_classical_limits() {
    let n_max = 8;
    let s2 = stirling_lambda(StirlingKind::Second, n_max);
    let s1 = stirling_lambda(StirlingKind::First, n_max);
    let c2 = classical_stirling2(n_max);
    let c1 = classical_stirling1_signed(n_max);
    for n in 0..=n_max {
        for k in 0..=n {
            assert_eq!(s2.entry(n, k).eval_rat(&Rat::zero()), c2[n][k], "S2({n},{k})");
            assert_eq!(s1.entry(n, k).eval_rat(&Rat::zero()), c1[n][k], "S1({n},{k})");
        }
    }
}

/// Expands `p` in the triangular monic basis `basis[0..deg]` by leading-term
/// elimination; the dual-construction oracle for the Stirling triangles.
fn expand_in_basis(p: &XPoly, basis: &[XPoly]) -> Vec<LPoly> {
    let mut rem = p.clone();
    let deg = p.x_degree().map_or(0, |d| d);
    let mut coeffs = vec![LPoly::zero(); deg + 1];
    for d in (0..=deg).rev() {
        if rem.x_degree() == Some(d) {
            let c = rem.leading().expect("nonzero leading").clone();
            rem = &rem - &basis[d].scale_lpoly(&c);
            coeffs[d] = c;
        }
    }
    assert!(rem.is_zero(), "basis is triangular and monic");
    coeffs
}

#[test]
fn stirling_tables_match_basis_conversion_oracle() {
    let n_max = 8;
    let plain: Vec<XPoly> = (0..=n_max).map(|n| falling_factorial(n, FallingMode::Plain)).collect();
    let deformed: Vec<XPoly> =
        (0..=n_max).map(|n| falling_factorial(n, FallingMode::Lambda)).collect();

    let s2 = stirling_lambda(StirlingKind::Second, n_max);
    let s1 = stirling_lambda(StirlingKind::First, n_max);
    for n in 0..=n_max {
        // (x)_{n,λ} = Σ_l S_{2,λ}(n,l) (x)_l
        let c2 = expand_in_basis(&deformed[n], &plain);
        // (x)_n = Σ_l S_{1,λ}(n,l) (x)_{l,λ}
        let c1 = expand_in_basis(&plain[n], &deformed);
        for l in 0..=n {
            assert_eq!(s2.entry(n, l), c2[l], "S2({n},{l})");
            assert_eq!(s1.entry(n, l), c1[l], "S1({n},{l})");
        }
    }
}

#[test]
fn stirling_matrices_are_mutually_inverse() {
    let n_max = 6;
    let s2 = stirling_lambda(StirlingKind::Second, n_max);
    let s1 = stirling_lambda(StirlingKind::First, n_max);
    for n in 0..=n_max {
        for j in 0..=n {
            let mut acc = LPoly::zero();
            for l in j..=n {
                acc = &acc + &(&s2.entry(n, l) * &s1.entry(l, j));
            }
            let expected = if n == j { LPoly::one() } else { LPoly::zero() };
            assert_eq!(acc, expected, "inversion at ({n},{j})");
        }
    }
}

#[test]
fn stirling_cache_returns_shared_tables() {
    let a = stirling_lambda(StirlingKind::Second, 5);
    let b = stirling_lambda(StirlingKind::Second, 5);
    assert!(Arc::ptr_eq(&a, &b));
}
