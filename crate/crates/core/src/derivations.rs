//! Contracting derivations `u·∂` for `∂ = t² d/dt`, with the Lie bracket,
//! the BCH product and the exponential onto the parabolic series.
//!
//! A derivation element of order `M` corresponds to parabolic series of
//! order `M + 2`: `exp` adds two to the order and `log` removes two.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::compgroup::{Orientation, Parabolic, Residue};
use crate::group::{GroupElement, ValuedElement};
use crate::series::{Coefficient, TruncatedSeries};

/// `exp` turns the BCH product into composition in this orientation:
/// `exp(bch(u, w)) = exp(w) ∘ exp(u)`, so `exp` is an anti-homomorphism onto
/// `(parabolic, ∘)`. Pinned by regression tests.
pub const EXP_ORIENTATION: Orientation = Orientation::Inverse;

/// The derivation `u·∂`. Power series never have negative exponents, so
/// every element is contracting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationElement {
    u: TruncatedSeries,
}

impl DerivationElement {
    pub fn new(u: TruncatedSeries) -> Self {
        DerivationElement { u }
    }

    pub fn zero(order: u32) -> Self {
        DerivationElement {
            u: TruncatedSeries::zero(order),
        }
    }

    pub fn parse(text: &str, order: u32) -> Result<Self, crate::error::ParseError> {
        Ok(Self::new(crate::series::parse_series(text, order)?))
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.u
    }

    pub fn order(&self) -> u32 {
        self.u.order()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero()
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self::new(self.u.scale(c))
    }

    /// `∂` applied through `u`: `s ↦ u · t² s'`, known through `order`.
    fn apply(&self, s: &TruncatedSeries, order: u32) -> TruncatedSeries {
        self.u.mul_to(&s.derivative().shift_up(2), order)
    }

    /// `[[u, w]] = u·t²w' - t²u'·w`.
    pub fn bracket(&self, w: &DerivationElement) -> DerivationElement {
        let order = self.order().min(w.order());
        let a = self.apply(&w.u, order);
        let b = w.apply(&self.u, order);
        DerivationElement::new(&a - &b)
    }

    /// `Σ_k (u∂)^k(t) / k!`.
    pub fn exp(&self) -> Parabolic {
        let order = self.order() + 2;
        let mut term = TruncatedSeries::var(order);
        let mut sum = term.clone();
        let mut k: i64 = 0;
        loop {
            k += 1;
            term = self
                .apply(&term, order)
                .scale(&Coefficient::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Parabolic::from_deviation(&(&sum - &TruncatedSeries::var(order)))
    }

    /// The unique `u` with `exp(u) = f`. Substitution `p ↦ p∘f` is the
    /// exponential of `p ↦ u t² p'`, so `u t² = Σ (-1)^(k+1)/k · Δ^k(t)`
    /// with `Δp = p∘f - p`.
    pub fn log(f: &Parabolic) -> DerivationElement {
        let order = f.order();
        let powers = f.series().powers();
        let mut delta = f.deviation();
        let mut chi = TruncatedSeries::zero(order);
        let mut k: i64 = 1;
        while !delta.is_zero() {
            let c = Coefficient::new(if k % 2 == 1 { 1 } else { -1 }.into(), k.into());
            chi = &chi + &delta.scale(&c);
            delta = &delta.substitute_powers(&powers) - &delta;
            k += 1;
        }
        DerivationElement::new(chi.shift_down(2))
    }

    /// The group law of the derivations, transported from composition.
    pub fn bch(&self, w: &DerivationElement) -> DerivationElement {
        DerivationElement::log(&EXP_ORIENTATION.product(&self.exp(), &w.exp()))
    }

    /// `u + w + ½[[u,w]] + 1/12([[u,[[u,w]]]] - [[w,[[u,w]]]])`.
    pub fn bch_depth3(&self, w: &DerivationElement) -> DerivationElement {
        let uw = self.bracket(w);
        let third = &self.bracket(&uw) - &w.bracket(&uw);
        let half = Coefficient::new(1.into(), 2.into());
        let twelfth = Coefficient::new(1.into(), 12.into());
        &(&(self + w) + &uw.scale(&half)) + &third.scale(&twelfth)
    }

    pub fn to_json(&self) -> serde_json::Value {
        crate::json::series_json(&self.u)
    }
}

impl fmt::Display for DerivationElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.u.fmt(f)
    }
}

impl<'a> Add<&'a DerivationElement> for &'a DerivationElement {
    type Output = DerivationElement;
    fn add(self, rhs: &'a DerivationElement) -> DerivationElement {
        DerivationElement::new(&self.u + &rhs.u)
    }
}

impl<'a> Sub<&'a DerivationElement> for &'a DerivationElement {
    type Output = DerivationElement;
    fn sub(self, rhs: &'a DerivationElement) -> DerivationElement {
        DerivationElement::new(&self.u - &rhs.u)
    }
}

impl Neg for &DerivationElement {
    type Output = DerivationElement;
    fn neg(self) -> DerivationElement {
        DerivationElement::new(-&self.u)
    }
}

impl GroupElement for DerivationElement {
    fn op(&self, rhs: &Self) -> Self {
        self.bch(rhs)
    }

    fn inv(&self) -> Self {
        -self
    }

    fn identity_like(&self) -> Self {
        DerivationElement::zero(self.order())
    }

    fn is_identity(&self) -> bool {
        self.is_zero()
    }

    fn pow_rational(&self, q: &Coefficient) -> Option<Self> {
        Some(self.scale(q))
    }
}

impl ValuedElement for DerivationElement {
    type Residue = Residue;

    fn rank(&self) -> Option<u32> {
        self.u.valuation().finite()
    }

    fn residue(&self) -> Option<Residue> {
        self.u.leading().map(|(k, c)| Residue::new(k, c.clone()))
    }

    fn scale_residue(r: &Residue, q: &Coefficient) -> Residue {
        r.scale(q)
    }

    fn residue_rank(r: &Residue) -> u32 {
        r.rho().unwrap_or(0)
    }

    fn lift_residue(&self, r: &Residue) -> Self {
        match r {
            Residue::Zero => self.identity_like(),
            Residue::Class { rho, coeff } => {
                DerivationElement::new(TruncatedSeries::monomial(coeff.clone(), *rho, self.order()))
            }
        }
    }

    fn cancellation_bound(&self) -> usize {
        self.order() as usize + 1
    }

    fn residue_text(r: &Residue) -> String {
        crate::series::fmt_coefficient(&r.coeff())
    }
}
