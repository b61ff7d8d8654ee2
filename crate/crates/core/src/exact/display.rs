//! Human-readable rendering of the polynomial tower.
//!
//! Two styles: plain text (UTF-8 `λ`, explicit `*`) and LaTeX math
//! (`\lambda`, `\frac`, juxtaposition). x-polynomials print highest power
//! first; λ-polynomials print constant term first. Output is deterministic.

use super::{LPoly, QPoly, Rat, XPoly};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Style {
    Text,
    Latex,
}

impl Style {
    fn lambda(self) -> &'static str {
        match self {
            Style::Text => "λ",
            Style::Latex => "\\lambda",
        }
    }

    fn mul(self) -> &'static str {
        match self {
            Style::Text => "*",
            Style::Latex => "",
        }
    }

    /// Separator between two alphabetic variable parts (λ-power and x-power);
    /// LaTeX needs a space there where juxtaposition would merge tokens.
    fn var_sep(self) -> &'static str {
        match self {
            Style::Text => "*",
            Style::Latex => " ",
        }
    }

    fn power(self, var: &str, exp: usize) -> String {
        match (self, exp) {
            (_, 1) => var.to_owned(),
            (Style::Text, e) => format!("{var}^{e}"),
            (Style::Latex, e) => format!("{var}^{{{e}}}"),
        }
    }

    fn rat(self, r: &Rat) -> String {
        match self {
            Style::Text => r.to_string(),
            Style::Latex => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// A signed term; the sign is pulled out so the joiner can emit ` - `.
struct Term {
    negative: bool,
    body: String,
}

fn join(terms: Vec<Term>) -> String {
    if terms.is_empty() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            if t.negative {
                out.push('-');
            }
        } else {
            out.push_str(if t.negative { " - " } else { " + " });
        }
        out.push_str(&t.body);
    }
    out
}

/// `c * var^exp` with 1/−1 coefficients elided; `exp == 0` gives a bare scalar.
fn monomial(c: &Rat, var_part: Option<String>, style: Style) -> Term {
    let negative = c.is_negative();
    let abs = if negative { -c } else { c.clone() };
    let body = match var_part {
        None => style.rat(&abs),
        Some(v) => {
            if abs.is_one() {
                v
            } else {
                format!("{}{}{}", style.rat(&abs), style.mul(), v)
            }
        }
    };
    Term { negative, body }
}

fn lpoly_terms(p: &LPoly, style: Style) -> Vec<Term> {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var_part = (i > 0).then(|| style.power(style.lambda(), i));
        terms.push(monomial(c, var_part, style));
    }
    terms
}

/// Renders a rational: `p/q` in text, `\frac{p}{q}` in LaTeX.
pub fn rat_string(r: &Rat, style: Style) -> String {
    style.rat(r)
}

/// Renders an element of Q\[λ\], constant term first (e.g. `1 - λ^2`).
pub fn lpoly_string(p: &LPoly, style: Style) -> String {
    join(lpoly_terms(p, style))
}

/// Renders an element of Q\[x\], highest power first.
pub fn qpoly_string(p: &QPoly, style: Style) -> String {
    let mut terms = Vec::new();
    for i in (0..p.coeffs().len()).rev() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        let var_part = (i > 0).then(|| style.power("x", i));
        terms.push(monomial(&c, var_part, style));
    }
    join(terms)
}

/// Renders an element of Q\[λ\]\[x\], highest x-power first. Multi-term λ
/// coefficients are parenthesized; the x-free part is spliced flat at the end.
pub fn xpoly_string(p: &XPoly, style: Style) -> String {
    let mut terms = Vec::new();
    for i in (0..p.coeffs().len()).rev() {
        let l = p.coeff(i);
        if l.is_zero() {
            continue;
        }
        if i == 0 {
            terms.extend(lpoly_terms(&l, style));
            continue;
        }
        let xpart = style.power("x", i);
        let nonzero = l.coeffs().iter().filter(|c| !c.is_zero()).count();
        if nonzero == 1 {
            let (j, c) = l
                .coeffs()
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .expect("nonzero coefficient");
            let var_part = if j == 0 {
                xpart
            } else {
                format!("{}{}{}", style.power(style.lambda(), j), style.var_sep(), xpart)
            };
            terms.push(monomial(c, Some(var_part), style));
        } else {
            terms.push(Term {
                negative: false,
                body: format!("({}){}{}", lpoly_string(&l, style), style.mul(), xpart),
            });
        }
    }
    join(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn lam() -> LPoly {
        LPoly::lambda()
    }

    #[test]
    fn lpoly_rendering() {
        assert_eq!(lpoly_string(&LPoly::zero(), Style::Text), "0");
        assert_eq!(lpoly_string(&LPoly::one(), Style::Text), "1");
        let p = LPoly::new(vec![Rat::frac(1, 6), Rat::zero(), Rat::frac(-1, 6)]);
        assert_eq!(lpoly_string(&p, Style::Text), "1/6 - 1/6*λ^2");
        assert_eq!(
            lpoly_string(&p, Style::Latex),
            "\\frac{1}{6} - \\frac{1}{6}\\lambda^{2}"
        );
        assert_eq!(lpoly_string(&(-lam()), Style::Text), "-λ");
    }

    #[test]
    fn xpoly_rendering() {
        // x² − λx
        let p = Poly::new(vec![LPoly::zero(), -lam(), LPoly::one()]);
        assert_eq!(xpoly_string(&p, Style::Text), "x^2 - λ*x");
        assert_eq!(xpoly_string(&p, Style::Latex), "x^{2} - \\lambda x");

        // x + (λ−1)/2 — constant splices flat
        let c0 = LPoly::new(vec![Rat::frac(-1, 2), Rat::frac(1, 2)]);
        let p = Poly::new(vec![c0, LPoly::one()]);
        assert_eq!(xpoly_string(&p, Style::Text), "x - 1/2 + 1/2*λ");

        // (1−λ)·x² keeps parentheses
        let c2 = LPoly::new(vec![Rat::one(), Rat::from_int(-1)]);
        let p = Poly::new(vec![LPoly::zero(), LPoly::zero(), c2]);
        assert_eq!(xpoly_string(&p, Style::Text), "(1 - λ)*x^2");
        assert_eq!(xpoly_string(&p, Style::Latex), "(1 - \\lambda)x^{2}");
    }

    #[test]
    fn qpoly_rendering() {
        let p = QPoly::new(vec![Rat::frac(1, 6), Rat::from_int(-1), Rat::one()]);
        assert_eq!(qpoly_string(&p, Style::Text), "x^2 - x + 1/6");
    }
}
