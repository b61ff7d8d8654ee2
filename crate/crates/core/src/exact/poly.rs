//! Dense polynomials over an exact coefficient ring.
//!
//! One generic type covers the whole tower:
//!
//! * [`LPoly`] = `Poly<Rat>` — polynomials in the deformation parameter λ,
//! * [`XPoly`] = `Poly<LPoly>` — polynomials in x with λ-polynomial coefficients,
//! * [`QPoly`] = `Poly<Rat>` — polynomials in x after λ has been evaluated.
//!
//! Invariant: the coefficient vector never ends in a zero; the zero
//! polynomial stores an empty vector. Every constructor normalizes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;

/// Coefficient-ring bound for [`Poly`]. Blanket-implemented.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Dense univariate polynomial with coefficients in `C`, index = power.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Element of Q\[λ\].
pub type LPoly = Poly<Rat>;

/// Element of Q\[λ\]\[x\]: coefficient of `x^i` is an [`LPoly`].
pub type XPoly = Poly<LPoly>;

/// Element of Q\[x\]; the result of evaluating an [`XPoly`] at a rational λ.
pub type QPoly = Poly<Rat>;

impl<C: Ring> Poly<C> {
    /// Builds a polynomial from raw coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself, as a degree-1 monic polynomial.
    pub fn variable() -> Self {
        Poly::new(vec![C::zero(), C::one()])
    }

    /// `c * var^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading (highest-power) coefficient; `None` for zero.
    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Coefficient of `var^i`, cloning; zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, point: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * point.clone() + c.clone();
        }
        acc
    }

    /// Substitutes another polynomial for the variable (composition).
    pub fn subst(&self, inner: &Poly<C>) -> Poly<C> {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl<C: Ring> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(coeffs)
    }
}

impl<C: Ring> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(coeffs)
    }
}

impl<C: Ring> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<C: Ring> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl<C: Ring> $trait for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Ring> $trait<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Ring> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

// JSON form: a bare array of coefficients (index = power); `[]` is zero.
impl<C: Serialize> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de, C: Ring + Deserialize<'de>> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::new(Vec::<C>::deserialize(deserializer)?))
    }
}

// ── λ-polynomial specifics ──────────────────────────────────────────────────

impl LPoly {
    /// The deformation parameter λ as a polynomial.
    pub fn lambda() -> LPoly {
        LPoly::variable()
    }

    pub fn from_rat(r: Rat) -> LPoly {
        LPoly::constant(r)
    }

    pub fn from_int(n: i64) -> LPoly {
        LPoly::constant(Rat::from_int(n))
    }

    /// Substitutes a rational value for the variable.
    pub fn eval_rat(&self, value: &Rat) -> Rat {
        self.eval(value)
    }

    /// True when the polynomial is constant (degree ≤ 0).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant term (zero for the zero polynomial).
    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// The value as a rational if constant, `None` otherwise.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn scale_rat(&self, s: &Rat) -> LPoly {
        self.scale(s)
    }
}

// ── x-polynomial specifics ──────────────────────────────────────────────────

impl XPoly {
    /// The indeterminate x.
    pub fn x() -> XPoly {
        XPoly::variable()
    }

    pub fn from_lpoly(p: LPoly) -> XPoly {
        XPoly::constant(p)
    }

    pub fn from_rat(r: Rat) -> XPoly {
        XPoly::constant(LPoly::constant(r))
    }

    pub fn from_int(n: i64) -> XPoly {
        XPoly::from_rat(Rat::from_int(n))
    }

    /// Degree in x (`None` for zero). Alias of [`Poly::degree`] for readability.
    pub fn x_degree(&self) -> Option<usize> {
        self.degree()
    }

    /// True when no coefficient depends on x beyond the constant term.
    pub fn is_x_free(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The polynomial as an element of Q\[λ\] if x-free.
    pub fn as_lpoly(&self) -> Option<LPoly> {
        if self.is_x_free() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    /// Substitutes λ := `lam` in every coefficient, landing in Q\[x\].
    pub fn eval_lambda(&self, lam: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c.eval_rat(lam)).collect())
    }

    /// Substitutes x := `a`, returning an element of Q\[λ\].
    pub fn eval_x(&self, a: &Rat) -> LPoly {
        self.eval(&LPoly::constant(a.clone()))
    }

    /// Substitutes x := x + `y` (a rational shift of the argument).
    pub fn shift_x(&self, y: &Rat) -> XPoly {
        let shifted = XPoly::new(vec![LPoly::constant(y.clone()), LPoly::one()]);
        self.subst(&shifted)
    }

    /// Evaluates both variables, yielding a single rational.
    pub fn eval_both(&self, lam: &Rat, x: &Rat) -> Rat {
        self.eval_lambda(lam).eval(x)
    }

    pub fn scale_rat(&self, s: &Rat) -> XPoly {
        self.scale(&LPoly::constant(s.clone()))
    }

    pub fn scale_lpoly(&self, s: &LPoly) -> XPoly {
        self.scale(s)
    }
}
