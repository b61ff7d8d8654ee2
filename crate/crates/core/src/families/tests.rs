use super::*;
use crate::exact::factorial_rat;

fn lam() -> LPoly {
    LPoly::lambda()
}

#[test]
fn degree_zero_members_are_one() {
    for k in [-2i64, 0, 1, 3] {
        assert_eq!(poly_bernoulli(k, 0), XPoly::one(), "k={k}");
    }
    for r in 1..=3 {
        assert_eq!(bernoulli_order(r, 0), XPoly::one());
        assert_eq!(derangement_order(r, 0), XPoly::one());
    }
}

#[test]
fn poly_bernoulli_degree_one_closed_form() {
    // B_{1,λ}^{(k)}(x) = x + (1−λ)(2^{−k} − 1)
    for k in [-2i64, -1, 0, 1, 2, 3] {
        let scale = Rat::from_int(2).pow_signed(-k) - Rat::one();
        let constant = (&LPoly::one() - &lam()).scale_rat(&scale);
        let expected = XPoly::new(vec![constant, LPoly::one()]);
        assert_eq!(poly_bernoulli(k, 1), expected, "k={k}");
    }
    // k = 1 specializes to x + (λ−1)/2.
    let expected = XPoly::new(vec![
        (&lam() - &LPoly::one()).scale_rat(&Rat::frac(1, 2)),
        LPoly::one(),
    ]);
    assert_eq!(poly_bernoulli(1, 1), expected);
}

#[test]
fn poly_bernoulli_order_one_is_bernoulli() {
    for n in 0..=6 {
        assert_eq!(poly_bernoulli(1, n), bernoulli_order(1, n), "n={n}");
    }
    let a = family_generating_series(&Family::PolyBernoulli { k: 1 }, 3);
    let b = family_generating_series(&Family::BernoulliOrder { r: 1 }, 3);
    assert_eq!(*a, *b);
}

#[test]
fn bernoulli_low_degrees() {
    let expected = XPoly::new(vec![
        (&lam() - &LPoly::one()).scale_rat(&Rat::frac(1, 2)),
        LPoly::one(),
    ]);
    assert_eq!(bernoulli_order(1, 1), expected);

    // β_{2,λ} = (1−λ²)/6; classical B₂ = 1/6 at λ = 0.
    let b2 = number(&Family::BernoulliOrder { r: 1 }, 2);
    let expected = LPoly::new(vec![Rat::frac(1, 6), Rat::zero(), Rat::frac(-1, 6)]);
    assert_eq!(b2, expected);
    assert_eq!(b2.eval_rat(&Rat::zero()), Rat::frac(1, 6));

    assert_eq!(
        family_generating_series(&Family::BernoulliOrder { r: 2 }, 4)
            .extract(0)
            .unwrap(),
        XPoly::one()
    );
}

/// Classical Bernoulli numbers from t/(e^t−1), computed over plain rational
/// vectors — independent of the series engine.
fn classical_bernoulli(n_max: usize) -> Vec<Rat> {
    // b[i] = [t^i] (e^t−1)/t = 1/(i+1)!
    let b: Vec<Rat> = (0..=n_max).map(|i| factorial_rat(i + 1).recip()).collect();
    let mut c = vec![Rat::one()];
    for n in 1..=n_max {
        let mut acc = Rat::zero();
        for i in 1..=n {
            acc = acc + b[i].clone() * c[n - i].clone();
        }
        c.push(-acc);
    }
    (0..=n_max).map(|n| factorial_rat(n) * c[n].clone()).collect()
}

#[test]
fn bernoulli_classical_limit() {
    let oracle = classical_bernoulli(10);
    for (n, expected) in oracle.iter().enumerate() {
        let got = number(&Family::BernoulliOrder { r: 1 }, n).eval_rat(&Rat::zero());
        assert_eq!(&got, expected, "B_{n}");
    }
}

#[test]
fn derangement_low_degrees() {
    assert_eq!(derangement_order(1, 1), XPoly::x());
    assert!(number(&Family::DerangementOrder { r: 1 }, 1).is_zero());

    // d_{2,λ}(0) = 1 + λ; classically 1.
    let d2 = number(&Family::DerangementOrder { r: 1 }, 2);
    assert_eq!(d2, LPoly::new(vec![Rat::one(), Rat::one()]));
    assert_eq!(d2.eval_rat(&Rat::zero()), Rat::one());
}

/// d_n = n·d_{n−1} + (−1)^n, the classical derangement recurrence.
fn classical_derangements(n_max: usize) -> Vec<Rat> {
    let mut d = vec![Rat::one()];
    for n in 1..=n_max {
        let sign = if n % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
        d.push(Rat::from_int(n as i64) * d[n - 1].clone() + sign);
    }
    d
}

#[test]
fn derangement_classical_limit() {
    let oracle = classical_derangements(7);
    assert_eq!(
        oracle[..6],
        [
            Rat::one(),
            Rat::zero(),
            Rat::one(),
            Rat::from_int(2),
            Rat::from_int(9),
            Rat::from_int(44)
        ]
    );
    for (n, expected) in oracle.iter().enumerate() {
        let got = number(&Family::DerangementOrder { r: 1 }, n).eval_rat(&Rat::zero());
        assert_eq!(&got, expected, "d_{n}");
    }

    // The x = 0, λ = 0 specialization of the generating series is the
    // classical derangement EGF: [t^n] = d_n/n!.
    let gf = family_generating_series(&Family::DerangementOrder { r: 1 }, 7);
    for (n, expected) in oracle.iter().enumerate() {
        let c = gf.coeff(n).eval_lambda(&Rat::zero()).eval(&Rat::zero());
        assert_eq!(c, expected.clone() * factorial_rat(n).recip(), "EGF t^{n}");
    }
}

#[test]
fn members_are_monic_of_exact_degree() {
    let families = [
        Family::PolyBernoulli { k: -1 },
        Family::PolyBernoulli { k: 2 },
        Family::BernoulliOrder { r: 1 },
        Family::BernoulliOrder { r: 3 },
        Family::DerangementOrder { r: 1 },
        Family::DerangementOrder { r: 3 },
    ];
    for family in &families {
        for (n, member) in members_up_to(family, 8).iter().enumerate() {
            assert_eq!(member.x_degree(), Some(n), "{family:?} degree at n={n}");
            assert_eq!(member.leading(), Some(&LPoly::one()), "{family:?} leading at n={n}");
        }
    }
}

#[test]
fn number_variant_is_evaluation_at_zero() {
    let spec = FamilySpec {
        family: Family::PolyBernoulli { k: 2 },
        n: 4,
        variant: Variant::Number,
    };
    let via_resolve = resolve(&spec);
    let direct = poly_bernoulli(2, 4).eval_x(&Rat::zero());
    assert_eq!(via_resolve, XPoly::from_lpoly(direct));
}

#[test]
fn generating_series_is_memoized() {
    let a = family_generating_series(&Family::DerangementOrder { r: 2 }, 6);
    let b = family_generating_series(&Family::DerangementOrder { r: 2 }, 6);
    assert!(Arc::ptr_eq(&a, &b));
}
