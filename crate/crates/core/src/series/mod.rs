//! Truncated power series over the rationals.
//!
//! A [`TruncatedSeries`] stores the coefficients of `t^0 ..= t^N` for a
//! truncation order `N`; everything above `N` is unknown. Arithmetic between
//! series of different orders works at the smaller order.

mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;

pub use text::parse_series;

/// Coefficients are exact rationals, always kept in lowest terms.
pub type Coefficient = BigRational;

/// Shorthand for the rational `p/q`.
///
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Coefficient {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(p))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_coefficient(c: &Coefficient) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p` or `p/q` (optional leading minus).
pub fn parse_coefficient(s: &str) -> Option<Coefficient> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Valuation of a truncated series: the smallest exponent with a nonzero
/// coefficient, or a lower bound when everything up to the order vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    /// The series is zero through its order; the true valuation is at least this.
    AtLeast(u32),
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// A lower bound valid in both cases.
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<u32, Coefficient>,
    order: u32,
}

impl TruncatedSeries {
    pub fn zero(order: u32) -> Self {
        TruncatedSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(Coefficient::one(), order)
    }

    pub fn constant(c: Coefficient, order: u32) -> Self {
        Self::monomial(c, 0, order)
    }

    /// The series `t`.
    pub fn var(order: u32) -> Self {
        Self::monomial(Coefficient::one(), 1, order)
    }

    /// `c t^k`, or zero when `k` exceeds the order.
    pub fn monomial(c: Coefficient, k: u32, order: u32) -> Self {
        Self::from_terms([(k, c)], order)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed; zeros and exponents above `order` are dropped.
    pub fn from_terms<I>(terms: I, order: u32) -> Self
    where
        I: IntoIterator<Item = (u32, Coefficient)>,
    {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if k > order {
                continue;
            }
            let slot = coeffs.entry(k).or_insert_with(Coefficient::zero);
            *slot += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncatedSeries { coeffs, order }
    }

    /// Dense coefficients `c_0, c_1, ...` starting at `t^0`.
    pub fn from_dense(coeffs: &[Coefficient], order: u32) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u32, c.clone())),
            order,
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32) -> Coefficient {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    pub fn get(&self, k: u32) -> Option<&Coefficient> {
        self.coeffs.get(&k)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Coefficient)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(&k) => Valuation::Finite(k),
            None => Valuation::AtLeast(self.order + 1),
        }
    }

    /// Lowest nonzero term.
    pub fn leading(&self) -> Option<(u32, &Coefficient)> {
        self.coeffs.iter().next().map(|(k, c)| (*k, c))
    }

    /// Drops everything above `order` (no-op if `order` is not smaller).
    pub fn truncate(&self, order: u32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        TruncatedSeries {
            coeffs: self
                .coeffs
                .range(..=order)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            order,
        }
    }

    /// Reinterprets the stored coefficients at a different order. Raising
    /// the order asserts that the unknown coefficients are zero.
    pub fn with_order(&self, order: u32) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c.clone())), order)
    }

    /// True iff the two series agree at every exponent `<= k`.
    pub fn eq_up_to(&self, other: &Self, k: u32) -> bool {
        self.coeffs.range(..=k).eq(other.coeffs.range(..=k))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
            order: self.order,
        }
    }

    /// Cauchy product truncated at `order`, ignoring the inputs' own orders.
    /// Callers are responsible for the precision argument.
    pub fn mul_to(&self, other: &Self, order: u32) -> Self {
        let mut out: BTreeMap<u32, Coefficient> = BTreeMap::new();
        for (i, a) in self.coeffs.range(..=order) {
            for (j, b) in other.coeffs.range(..=(order - i)) {
                let slot = out.entry(i + j).or_insert_with(Coefficient::zero);
                *slot += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        TruncatedSeries { coeffs: out, order }
    }

    /// Multiplication by `t^k`; the result is known through `order + k`.
    pub fn shift_up(&self, k: u32) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
            order: self.order + k,
        }
    }

    /// Division by `t^k`. Terms below `t^k` are discarded, so callers should
    /// check the valuation first.
    pub fn shift_down(&self, k: u32) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .range(k..)
                .map(|(e, c)| (e - k, c.clone()))
                .collect(),
            order: self.order.saturating_sub(k),
        }
    }

    pub fn derivative(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k > 0)
                .map(|(k, c)| (k - 1, c * int(*k as i64)))
                .collect(),
            order: self.order.saturating_sub(1),
        }
    }

    /// Nonnegative integer power, truncated at the order.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..n {
            acc = acc.mul_to(self, self.order);
        }
        acc
    }

    /// `1 / self`, or `None` if the constant term vanishes.
    pub fn recip(&self) -> Option<Self> {
        let c0 = self.coeffs.get(&0)?.recip();
        let mut out: Vec<Coefficient> = vec![c0.clone()];
        for n in 1..=self.order {
            let mut acc = Coefficient::zero();
            for (k, c) in self.coeffs.range(1..=n) {
                let r = &out[(n - k) as usize];
                if !r.is_zero() {
                    acc += c * r;
                }
            }
            out.push(-acc * &c0);
        }
        Some(Self::from_dense(&out, self.order))
    }

    /// `[1, s, s², …, s^order]`, each truncated at `order`, for repeated
    /// substitution into `s`.
    pub fn powers(&self) -> Vec<Self> {
        let mut out = vec![Self::one(self.order)];
        for i in 0..self.order as usize {
            let next = out[i].mul_to(self, self.order);
            out.push(next);
        }
        out
    }

    /// `self ∘ s` given `powers = s.powers()`.
    pub fn substitute_powers(&self, powers: &[Self]) -> Self {
        let order = powers[0].order;
        let mut out: BTreeMap<u32, Coefficient> = BTreeMap::new();
        for (i, c) in self.coeffs.range(..=order) {
            let Some(p) = powers.get(*i as usize) else {
                break;
            };
            for (k, a) in &p.coeffs {
                *out.entry(*k).or_insert_with(Coefficient::zero) += c * a;
            }
        }
        out.retain(|_, c| !c.is_zero());
        TruncatedSeries { coeffs: out, order }
    }

    /// `f ∘ s` by Horner evaluation of `f` at `s`. Requires `v(s) >= 1`.
    pub fn substitute(&self, s: &Self) -> Result<Self, SeriesError> {
        if s.coeffs.contains_key(&0) {
            return Err(SeriesError::NonVanishingSubstitution);
        }
        let order = combined_order(self.order, s.order);
        let Some((&top, _)) = self.coeffs.range(..=order).next_back() else {
            return Ok(Self::zero(order));
        };
        // the partial sum at step i is later multiplied by s^i, which has
        // valuation >= i, so precision order - i suffices
        let mut acc = Self::constant(self.coeff(top), order);
        for i in (0..top).rev() {
            acc = acc.mul_to(s, order - i);
            if let Some(c) = self.coeffs.get(&i) {
                *acc.coeffs.entry(0).or_insert_with(Coefficient::zero) += c;
                if acc.coeffs[&0].is_zero() {
                    acc.coeffs.remove(&0);
                }
            }
        }
        acc.order = order;
        Ok(acc)
    }

    /// `f ∘ s` through the Taylor expansion `Σ f^(i)/i! · δ^i` with
    /// `δ = s - t`. Requires `v(δ) >= 2`.
    pub fn taylor_compose(&self, s: &Self) -> Result<Self, SeriesError> {
        let order = combined_order(self.order, s.order);
        let delta = s.clone() - Self::var(s.order);
        let vd = match delta.valuation() {
            Valuation::AtLeast(_) => return Ok(self.truncate(order)),
            Valuation::Finite(v) if v < 2 => return Err(SeriesError::NotTangentToIdentity(v)),
            Valuation::Finite(v) => v,
        };
        let mut sum = Self::zero(order);
        let mut delta_pow = Self::one(order);
        let mut i: u32 = 0;
        while vd * i <= order {
            // f^(i)/i! has coefficient binom(k+i, i) f_{k+i} at t^k
            let taylor = Self::from_terms(
                self.coeffs
                    .range(i..)
                    .map(|(e, c)| (e - i, c * binomial(*e, i))),
                order,
            );
            sum = sum + taylor.mul_to(&delta_pow, order);
            delta_pow = delta_pow.mul_to(&delta, order);
            i += 1;
        }
        Ok(sum)
    }
}

fn combined_order(a: u32, b: u32) -> u32 {
    if a != b {
        log::warn!("mixing truncation orders {a} and {b}; using {}", a.min(b));
    }
    a.min(b)
}

fn binomial(n: u32, k: u32) -> Coefficient {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    BigRational::from_integer(acc)
}

impl Add for TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = combined_order(self.order, rhs.order);
        TruncatedSeries::from_terms(
            self.terms().chain(rhs.terms()).map(|(k, c)| (k, c.clone())),
            order,
        )
    }
}

impl Sub for TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> Self {
        -&self
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
            order: self.order,
        }
    }
}

impl Mul for TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = combined_order(self.order, rhs.order);
        self.mul_to(rhs, order)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = c.abs();
            match k {
                0 => f.write_str(&fmt_coefficient(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{} ", fmt_coefficient(&a))?;
                    }
                    if k == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(t^{})", self.order + 1)
    }
}
