//! Words in the group constants and one variable `y`, with rational
//! exponents.
//!
//! A product `a * b` evaluates to `a.op(b)`, left to right; for parabolic
//! series that is `compose(a, b)`.

mod eval;
mod parser;

use std::fmt;

use num_traits::{One, Zero};

use crate::series::{fmt_coefficient, Coefficient};

pub use eval::{eval, pow_int, shift, SymbolTable};
pub use parser::{parse_term, parse_term_with};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(String),
    Y,
    Mul(Box<Term>, Box<Term>),
    Pow(Box<Term>, Coefficient),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(base: Term, q: Coefficient) -> Term {
        Term::Pow(Box::new(base), q)
    }

    pub fn inv(base: Term) -> Term {
        Term::pow(base, -Coefficient::one())
    }

    /// Left-associated product of the factors; `None` for an empty list.
    pub fn product(factors: impl IntoIterator<Item = Term>) -> Option<Term> {
        factors.into_iter().reduce(Term::mul)
    }

    /// The total exponent of `y`.
    pub fn alpha(&self) -> Coefficient {
        match self {
            Term::Const(_) => Coefficient::zero(),
            Term::Y => Coefficient::one(),
            Term::Mul(a, b) => a.alpha() + b.alpha(),
            Term::Pow(b, q) => b.alpha() * q,
        }
    }

    pub fn is_regular(&self) -> bool {
        !self.alpha().is_zero()
    }

    pub fn has_integer_exponents(&self) -> bool {
        match self {
            Term::Const(_) | Term::Y => true,
            Term::Mul(a, b) => a.has_integer_exponents() && b.has_integer_exponents(),
            Term::Pow(b, q) => q.is_integer() && b.has_integer_exponents(),
        }
    }

    /// Constant names in order of first appearance.
    pub fn constants(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Const(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n)
                }
            }
            Term::Y => {}
            Term::Mul(a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
            Term::Pow(b, _) => b.collect_constants(out),
        }
    }

    /// Replaces every occurrence of `y` by `by`.
    pub fn substitute_y(&self, by: &Term) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::Y => by.clone(),
            Term::Mul(a, b) => Term::mul(a.substitute_y(by), b.substitute_y(by)),
            Term::Pow(b, q) => Term::pow(b.substitute_y(by), q.clone()),
        }
    }

    /// Flattens products and re-associates them to the left. Printing a
    /// normalized term and parsing it back gives the same tree.
    pub fn normalize(&self) -> Term {
        match self {
            Term::Const(_) | Term::Y => self.clone(),
            Term::Pow(b, q) => Term::pow(b.normalize(), q.clone()),
            Term::Mul(..) => {
                let mut factors = Vec::new();
                self.flatten_into(&mut factors);
                Term::product(factors).expect("a product has factors")
            }
        }
    }

    fn flatten_into(&self, out: &mut Vec<Term>) {
        match self {
            Term::Mul(a, b) => {
                a.flatten_into(out);
                b.flatten_into(out);
            }
            other => out.push(other.normalize()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Const(_) | Term::Y => 0,
            Term::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Term::Pow(b, _) => 1 + b.depth(),
        }
    }
}

fn fmt_exponent(q: &Coefficient) -> String {
    if q.is_integer() {
        fmt_coefficient(q)
    } else {
        format!("({})", fmt_coefficient(q))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(n) => f.write_str(n),
            Term::Y => f.write_str("y"),
            Term::Mul(a, b) => match **b {
                Term::Mul(..) => write!(f, "{a} * ({b})"),
                _ => write!(f, "{a} * {b}"),
            },
            Term::Pow(b, q) => match **b {
                Term::Const(_) | Term::Y => write!(f, "{b}^{}", fmt_exponent(q)),
                _ => write!(f, "({b})^{}", fmt_exponent(q)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn alpha_examples() {
        assert_eq!(
            parse_term("g1 * y^2 * g2 * y^-1").unwrap().alpha(),
            rat(1, 1)
        );
        assert_eq!(parse_term("(g * y)^(1/2) * y").unwrap().alpha(), rat(3, 2));
        let singular = parse_term("g1 * g2").unwrap();
        assert_eq!(singular.alpha(), rat(0, 1));
        assert!(!singular.is_regular());
    }

    #[test]
    fn printing() {
        let t = parse_term("g1 * y^2 * g2 * inv(y)").unwrap();
        assert_eq!(t.to_string(), "g1 * y^2 * g2 * y^-1");
        let t = parse_term("(g * y)^(1/2) * y").unwrap();
        assert_eq!(t.to_string(), "(g * y)^(1/2) * y");
        let t = Term::mul(Term::Y, Term::mul(Term::constant("a"), Term::Y));
        assert_eq!(t.to_string(), "y * (a * y)");
        assert_eq!(
            parse_term(&t.normalize().to_string()).unwrap(),
            t.normalize()
        );
    }

    #[test]
    fn normalization_flattens() {
        let t = Term::mul(Term::Y, Term::mul(Term::constant("a"), Term::Y));
        let n = t.normalize();
        assert_eq!(
            n,
            Term::mul(Term::mul(Term::Y, Term::constant("a")), Term::Y)
        );
        assert_eq!(n.alpha(), t.alpha());
    }

    #[test]
    fn integer_exponent_detection() {
        assert!(parse_term("y^2 * inv(g)").unwrap().has_integer_exponents());
        assert!(!parse_term("y^(1/2)").unwrap().has_integer_exponents());
    }
}
