use std::collections::BTreeMap;

use num_traits::One;

use super::Term;
use crate::error::EvalError;
use crate::group::GroupElement;
use crate::series::{fmt_coefficient, Coefficient};

const SHIFT_PREFIX: &str = "$shift_";

/// Bindings from constant names to group elements.
#[derive(Clone, Debug)]
pub struct SymbolTable<G> {
    entries: BTreeMap<String, G>,
    fresh: usize,
}

impl<G> Default for SymbolTable<G> {
    fn default() -> Self {
        SymbolTable {
            entries: BTreeMap::new(),
            fresh: 0,
        }
    }
}

impl<G: Clone> SymbolTable<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: &str, value: G) -> Result<(), EvalError> {
        if name == "y" || name == "inv" || name.starts_with('$') {
            return Err(EvalError::Reserved(name.to_string()));
        }
        self.insert(name.to_string(), value)
    }

    fn insert(&mut self, name: String, value: G) -> Result<(), EvalError> {
        if self.entries.contains_key(&name) {
            return Err(EvalError::AlreadyBound(name));
        }
        self.entries.insert(name, value);
        Ok(())
    }

    /// Binds `value` under a generated name that user input cannot spell.
    pub fn bind_fresh(&mut self, value: G) -> String {
        loop {
            let name = format!("{SHIFT_PREFIX}{}", self.fresh);
            self.fresh += 1;
            if !self.entries.contains_key(&name) {
                self.entries.insert(name.clone(), value);
                return name;
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&G> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &G)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The same bindings with every value transformed.
    pub fn map<H>(&self, f: impl Fn(&G) -> H) -> SymbolTable<H> {
        SymbolTable {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), f(v)))
                .collect(),
            fresh: self.fresh,
        }
    }
}

/// `g^n` by repeated squaring.
pub fn pow_int<G: GroupElement>(g: &G, n: i64) -> G {
    let base = if n < 0 { g.inv() } else { g.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = g.identity_like();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.op(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.op(&sq);
        }
    }
    acc
}

fn power<G: GroupElement>(g: &G, q: &Coefficient) -> Result<G, EvalError> {
    if let Some(p) = g.pow_rational(q) {
        return Ok(p);
    }
    if q.is_integer() {
        if let Ok(n) = i64::try_from(q.numer()) {
            return Ok(pow_int(g, n));
        }
    }
    Err(EvalError::NonIntegerExponent(fmt_coefficient(q)))
}

/// Evaluates `t` at `y`, mapping products to the group law left to right.
pub fn eval<G: GroupElement>(t: &Term, y: &G, tab: &SymbolTable<G>) -> Result<G, EvalError> {
    match t {
        Term::Const(n) => tab
            .get(n)
            .cloned()
            .ok_or_else(|| EvalError::Unresolved(n.clone())),
        Term::Y => Ok(y.clone()),
        Term::Mul(a, b) => Ok(eval(a, y, tab)?.op(&eval(b, y, tab)?)),
        Term::Pow(b, q) => {
            let base = eval(b, y, tab)?;
            if *q == -Coefficient::one() {
                return Ok(base.inv());
            }
            power(&base, q)
        }
    }
}

/// The term `t_f(y) = t(f)⁻¹ t(f y)`, with `f` and `t(f)⁻¹` bound under
/// fresh names in the returned table.
pub fn shift<G: GroupElement>(
    t: &Term,
    f: &G,
    tab: &SymbolTable<G>,
) -> Result<(Term, SymbolTable<G>), EvalError> {
    let at_f = eval(t, f, tab)?;
    let mut out = tab.clone();
    let f_name = out.bind_fresh(f.clone());
    let c_name = out.bind_fresh(at_f.inv());
    let shifted = Term::mul(
        Term::Const(c_name),
        t.substitute_y(&Term::mul(Term::Const(f_name), Term::Y)),
    );
    Ok((shifted, out))
}
