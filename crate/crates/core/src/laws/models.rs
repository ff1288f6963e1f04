//! The built-in models: positive instances and negative controls.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{GroupModel, ModelRunner, PowerSupport, Registered};
use crate::compgroup::{Orientation, Parabolic, Residue, Val, GA_ORIENTATION};
use crate::derivations::DerivationElement;
use crate::group::dominance;
use crate::nilpotent::{FreeNilAlgebra, NilElement};
use crate::sampling;
use crate::series::{fmt_coefficient, rat, Coefficient};

fn sample_exponent(rng: &mut ChaCha8Rng) -> Coefficient {
    sampling::nonzero_rational(rng, 3, 3)
}

/// `(ℚ, +)` with its unique dominance: the identity below everything
/// else, all nontrivial elements equivalent.
pub struct AbelianModel;

impl GroupModel for AbelianModel {
    type Elem = Coefficient;

    fn name(&self) -> &'static str {
        "abelian"
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Coefficient {
        sampling::nonzero_rational(rng, 9, 4)
    }

    fn op(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        a + b
    }

    fn inv(&self, a: &Coefficient) -> Coefficient {
        -a
    }

    fn id(&self) -> Coefficient {
        Coefficient::zero()
    }

    fn dominance(&self, a: &Coefficient, b: &Coefficient) -> Ordering {
        a.is_zero().cmp(&b.is_zero()).reverse()
    }

    fn order(&self, a: &Coefficient, b: &Coefficient) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Rational
    }

    fn pow(&self, a: &Coefficient, q: &Coefficient) -> Option<Coefficient> {
        Some(a * q)
    }

    fn centralizer_element(&self, _f: &Coefficient, rng: &mut ChaCha8Rng) -> Coefficient {
        self.sample(rng)
    }

    fn scaling(&self, _f: &Coefficient) -> Option<Coefficient> {
        Some(Coefficient::one())
    }

    fn residue_ratio(&self, g: &Coefficient, s: &Coefficient) -> Option<Coefficient> {
        (!s.is_zero()).then(|| g / s)
    }

    fn show(&self, a: &Coefficient) -> String {
        fmt_coefficient(a)
    }
}

/// Bijective affine maps `x ↦ λx + v` of ℚ, written `(λ, v)`. Valuation
/// 0 for non-translations, 1 for nontrivial translations, 2 for the
/// identity.
pub struct AffineModel;

pub type Affine = (Coefficient, Coefficient);

impl AffineModel {
    fn level(a: &Affine) -> Option<u32> {
        if !a.0.is_one() {
            Some(0)
        } else if !a.1.is_zero() {
            Some(1)
        } else {
            None
        }
    }
}

impl GroupModel for AffineModel {
    type Elem = Affine;

    fn name(&self) -> &'static str {
        "affine"
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Affine {
        let lambdas = [
            rat(1, 1),
            rat(-1, 1),
            rat(2, 1),
            rat(1, 2),
            rat(-2, 1),
            rat(3, 1),
            rat(2, 3),
        ];
        let lambda = if rng.gen_bool(0.4) {
            Coefficient::one()
        } else {
            lambdas[rng.gen_range(1..lambdas.len())].clone()
        };
        let v = if lambda.is_one() {
            sampling::nonzero_rational(rng, 5, 3)
        } else {
            sampling::rational(rng, 5, 3)
        };
        (lambda, v)
    }

    /// Composition `a ∘ b`.
    fn op(&self, a: &Affine, b: &Affine) -> Affine {
        (&a.0 * &b.0, &a.0 * &b.1 + &a.1)
    }

    fn inv(&self, a: &Affine) -> Affine {
        (a.0.recip(), -&a.1 / &a.0)
    }

    fn id(&self) -> Affine {
        (Coefficient::one(), Coefficient::zero())
    }

    fn dominance(&self, a: &Affine, b: &Affine) -> Ordering {
        dominance(Self::level(a), Self::level(b))
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Integer
    }

    fn centralizer_element(&self, f: &Affine, rng: &mut ChaCha8Rng) -> Affine {
        let mu = sampling::nonzero_rational(rng, 3, 3);
        if f.0.is_one() {
            // translations commute with translations
            (Coefficient::one(), mu)
        } else {
            // maps fixing the fixed point of f
            let p = &f.1 / (Coefficient::one() - &f.0);
            let shift = &p * (Coefficient::one() - &mu);
            (mu, shift)
        }
    }

    fn show(&self, a: &Affine) -> String {
        format!("({}, {})", fmt_coefficient(&a.0), fmt_coefficient(&a.1))
    }

    fn to_json(&self, a: &Affine) -> Value {
        json!({"scale": fmt_coefficient(&a.0), "shift": fmt_coefficient(&a.1)})
    }
}

/// Parabolic series truncated at a fixed order, multiplied in the given
/// orientation. `compgroup` uses [`GA_ORIENTATION`], the orientation in
/// which the lexicographic order satisfies the growth axiom;
/// `compgroup-direct` uses plain composition `(f, g) ↦ f ∘ g`.
pub struct CompositionModel {
    pub order: u32,
    pub orientation: Orientation,
}

/// `x = f^q` with `q` the residue ratio; exact for groups whose
/// centralizers are the one-parameter subgroups.
fn in_flow<M: GroupModel>(m: &M, f: &M::Elem, x: &M::Elem) -> bool {
    if m.is_id(f) || m.is_id(x) {
        return true;
    }
    match m.residue_ratio(x, f) {
        Some(q) => m.pow(f, &q).is_some_and(|p| m.eq(&p, x)),
        None => false,
    }
}

impl GroupModel for CompositionModel {
    type Elem = Parabolic;

    fn name(&self) -> &'static str {
        if self.orientation == GA_ORIENTATION {
            "compgroup"
        } else {
            "compgroup-direct"
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Parabolic {
        sampling::parabolic(rng, self.order, 5)
    }

    fn op(&self, a: &Parabolic, b: &Parabolic) -> Parabolic {
        self.orientation.product(a, b)
    }

    fn inv(&self, a: &Parabolic) -> Parabolic {
        a.inverse()
    }

    fn id(&self) -> Parabolic {
        Parabolic::identity(self.order)
    }

    fn dominance(&self, a: &Parabolic, b: &Parabolic) -> Ordering {
        dominance(a.val().exponent(), b.val().exponent())
    }

    fn order(&self, a: &Parabolic, b: &Parabolic) -> Option<Ordering> {
        Some(a.compare(b))
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Rational
    }

    fn pow(&self, a: &Parabolic, q: &Coefficient) -> Option<Parabolic> {
        Some(a.flow(q))
    }

    fn centralizer_element(&self, f: &Parabolic, rng: &mut ChaCha8Rng) -> Parabolic {
        if f.is_identity() {
            return self.sample(rng);
        }
        f.flow(&sample_exponent(rng))
    }

    fn in_centralizer(&self, f: &Parabolic, x: &Parabolic) -> bool {
        in_flow(self, f, x)
    }

    fn scaling(&self, f: &Parabolic) -> Option<Parabolic> {
        Some(match f.val() {
            Val::Exponent(rho) => Parabolic::scaling_element(rho, self.order),
            Val::Trivial => Parabolic::scaling_element(2, self.order),
        })
    }

    fn residue_ratio(&self, g: &Parabolic, s: &Parabolic) -> Option<Coefficient> {
        match (g.res(), s.res()) {
            (Residue::Class { rho: a, coeff: c }, Residue::Class { rho: b, coeff: d })
                if a == b =>
            {
                Some(c / d)
            }
            _ => None,
        }
    }

    fn show(&self, a: &Parabolic) -> String {
        a.to_string()
    }

    fn to_json(&self, a: &Parabolic) -> Value {
        a.to_json()
    }
}

/// Contracting derivations under the BCH product.
pub struct DerivationModel {
    pub order: u32,
}

impl GroupModel for DerivationModel {
    type Elem = DerivationElement;

    fn name(&self) -> &'static str {
        "derivations"
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> DerivationElement {
        sampling::derivation(rng, self.order, 3)
    }

    fn op(&self, a: &DerivationElement, b: &DerivationElement) -> DerivationElement {
        a.bch(b)
    }

    fn inv(&self, a: &DerivationElement) -> DerivationElement {
        -a
    }

    fn id(&self) -> DerivationElement {
        DerivationElement::zero(self.order)
    }

    fn dominance(&self, a: &DerivationElement, b: &DerivationElement) -> Ordering {
        dominance(
            a.series().valuation().finite(),
            b.series().valuation().finite(),
        )
    }

    /// Sign of the leading coefficient of `a - b`.
    fn order(&self, a: &DerivationElement, b: &DerivationElement) -> Option<Ordering> {
        Some(match (a - b).series().leading() {
            None => Ordering::Equal,
            Some((_, c)) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        })
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Rational
    }

    fn pow(&self, a: &DerivationElement, q: &Coefficient) -> Option<DerivationElement> {
        Some(a.scale(q))
    }

    fn centralizer_element(
        &self,
        f: &DerivationElement,
        rng: &mut ChaCha8Rng,
    ) -> DerivationElement {
        if f.is_zero() {
            return self.sample(rng);
        }
        f.scale(&sample_exponent(rng))
    }

    fn in_centralizer(&self, f: &DerivationElement, x: &DerivationElement) -> bool {
        in_flow(self, f, x)
    }

    fn scaling(&self, f: &DerivationElement) -> Option<DerivationElement> {
        let k = f.series().valuation().finite().unwrap_or(0);
        Some(DerivationElement::new(
            crate::series::TruncatedSeries::monomial(Coefficient::one(), k, self.order),
        ))
    }

    fn residue_ratio(&self, g: &DerivationElement, s: &DerivationElement) -> Option<Coefficient> {
        match (g.series().leading(), s.series().leading()) {
            (Some((a, c)), Some((b, d))) if a == b => Some(c / d),
            _ => None,
        }
    }

    fn show(&self, a: &DerivationElement) -> String {
        a.to_string()
    }

    fn to_json(&self, a: &DerivationElement) -> Value {
        a.to_json()
    }
}

/// A free nilpotent ℚ-group in logarithmic coordinates, dominance by lower
/// central weight. Central elements commute with everything, so `D5` fails
/// here.
pub struct NilModel {
    pub alg: Arc<FreeNilAlgebra>,
}

impl NilModel {
    pub fn new(generators: usize, class: usize) -> Self {
        NilModel {
            alg: FreeNilAlgebra::new(generators, class).expect("supported size"),
        }
    }

    fn sample_at(&self, rng: &mut ChaCha8Rng, min_weight: usize) -> NilElement {
        let mut coords = vec![Coefficient::zero(); self.alg.dimension()];
        let top: Vec<usize> = (0..self.alg.dimension())
            .filter(|i| self.alg.weight(*i) == min_weight)
            .collect();
        coords[top[rng.gen_range(0..top.len())]] = sampling::nonzero_rational(rng, 3, 2);
        for (i, c) in coords.iter_mut().enumerate() {
            if self.alg.weight(i) >= min_weight && rng.gen_bool(0.4) {
                *c = sampling::rational(rng, 3, 2);
            }
        }
        let e = NilElement::from_coords(&self.alg, &coords).expect("dimension");
        if e.is_zero() {
            NilElement::generator(&self.alg, top[0])
        } else {
            e
        }
    }

    fn central(&self, rng: &mut ChaCha8Rng) -> NilElement {
        self.sample_at(rng, self.alg.class())
    }
}

impl GroupModel for NilModel {
    type Elem = NilElement;

    fn name(&self) -> &'static str {
        "nilpotent"
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> NilElement {
        let w = if rng.gen_bool(0.6) {
            1
        } else {
            rng.gen_range(1..=self.alg.class())
        };
        self.sample_at(rng, w)
    }

    fn op(&self, a: &NilElement, b: &NilElement) -> NilElement {
        a.mul(b).expect("same algebra")
    }

    fn inv(&self, a: &NilElement) -> NilElement {
        a.neg()
    }

    fn id(&self) -> NilElement {
        NilElement::zero(&self.alg)
    }

    fn dominance(&self, a: &NilElement, b: &NilElement) -> Ordering {
        dominance(a.lc_val(), b.lc_val())
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Rational
    }

    fn pow(&self, a: &NilElement, q: &Coefficient) -> Option<NilElement> {
        Some(a.scale(q))
    }

    fn centralizer_element(&self, f: &NilElement, rng: &mut ChaCha8Rng) -> NilElement {
        if rng.gen_bool(0.3) {
            self.central(rng)
        } else {
            f.scale(&sample_exponent(rng))
        }
    }

    fn show(&self, a: &NilElement) -> String {
        a.to_string()
    }

    fn to_json(&self, a: &NilElement) -> Value {
        a.to_json()
    }
}

/// `ℚ × ℚ` valued so that pure elements of the first factor sit strictly
/// below everything with a nonzero second coordinate. A dominance relation
/// satisfying `D1`–`D4` but not `D5`.
pub struct ProductModel;

impl ProductModel {
    fn level(a: &Affine) -> Option<u32> {
        if !a.1.is_zero() {
            Some(1)
        } else if !a.0.is_zero() {
            Some(2)
        } else {
            None
        }
    }
}

impl GroupModel for ProductModel {
    type Elem = (Coefficient, Coefficient);

    fn name(&self) -> &'static str {
        "product"
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Affine {
        let r = rng.gen_range(0..5);
        let h = sampling::nonzero_rational(rng, 5, 3);
        let g = sampling::nonzero_rational(rng, 5, 3);
        match r {
            0 | 1 => (h, Coefficient::zero()),
            2 | 3 => (Coefficient::zero(), g),
            _ => (h, g),
        }
    }

    fn op(&self, a: &Affine, b: &Affine) -> Affine {
        (&a.0 + &b.0, &a.1 + &b.1)
    }

    fn inv(&self, a: &Affine) -> Affine {
        (-&a.0, -&a.1)
    }

    fn id(&self) -> Affine {
        (Coefficient::zero(), Coefficient::zero())
    }

    fn dominance(&self, a: &Affine, b: &Affine) -> Ordering {
        dominance(Self::level(a), Self::level(b))
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Rational
    }

    fn pow(&self, a: &Affine, q: &Coefficient) -> Option<Affine> {
        Some((&a.0 * q, &a.1 * q))
    }

    /// Pure elements are paired with the other factor.
    fn centralizer_element(&self, f: &Affine, rng: &mut ChaCha8Rng) -> Affine {
        let r = sampling::nonzero_rational(rng, 5, 3);
        if f.1.is_zero() {
            (Coefficient::zero(), r)
        } else if f.0.is_zero() {
            (r, Coefficient::zero())
        } else {
            (&f.0 * &r, &f.1 * &r)
        }
    }

    fn show(&self, a: &Affine) -> String {
        format!("({}, {})", fmt_coefficient(&a.0), fmt_coefficient(&a.1))
    }

    fn to_json(&self, a: &Affine) -> Value {
        json!([fmt_coefficient(&a.0), fmt_coefficient(&a.1)])
    }
}

/// The direct product of two copies of a free nilpotent group, valued by
/// the minimum weight of the two components.
pub struct NilProductModel {
    pub factor: NilModel,
}

impl NilProductModel {
    pub fn new(generators: usize, class: usize) -> Self {
        NilProductModel {
            factor: NilModel::new(generators, class),
        }
    }

    fn weight(a: &(NilElement, NilElement)) -> Option<u32> {
        match (a.0.lc_val(), a.1.lc_val()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }
}

impl GroupModel for NilProductModel {
    type Elem = (NilElement, NilElement);

    fn name(&self) -> &'static str {
        "nil-product"
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem {
        let zero = self.factor.id();
        match rng.gen_range(0..4) {
            0 => (self.factor.sample(rng), zero),
            1 => (zero, self.factor.sample(rng)),
            _ => (self.factor.sample(rng), self.factor.sample(rng)),
        }
    }

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.factor.op(&a.0, &b.0), self.factor.op(&a.1, &b.1))
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (a.0.neg(), a.1.neg())
    }

    fn id(&self) -> Self::Elem {
        (self.factor.id(), self.factor.id())
    }

    fn dominance(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        dominance(Self::weight(a), Self::weight(b))
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::Rational
    }

    fn pow(&self, a: &Self::Elem, q: &Coefficient) -> Option<Self::Elem> {
        Some((a.0.scale(q), a.1.scale(q)))
    }

    /// Componentwise powers, with either component possibly dropped.
    fn centralizer_element(&self, f: &Self::Elem, rng: &mut ChaCha8Rng) -> Self::Elem {
        let a = f.0.scale(&sample_exponent(rng));
        let b = f.1.scale(&sample_exponent(rng));
        match rng.gen_range(0..3) {
            0 => (a, self.factor.id()),
            1 => (self.factor.id(), b),
            _ => (a, b),
        }
    }

    fn show(&self, a: &Self::Elem) -> String {
        format!("({}; {})", a.0, a.1)
    }

    fn to_json(&self, a: &Self::Elem) -> Value {
        json!([a.0.to_json(), a.1.to_json()])
    }
}

/// Every built-in model, in a fixed order.
pub fn builtin_models() -> Vec<Box<dyn ModelRunner>> {
    builtin_models_at(None)
}

/// The registry with the series models truncated at `order` instead of
/// their defaults (10 for compositions, 8 for derivations).
pub fn builtin_models_at(order: Option<u32>) -> Vec<Box<dyn ModelRunner>> {
    let comp_order = order.unwrap_or(10);
    let der_order = order.unwrap_or(8);
    vec![
        Box::new(Registered {
            model: AbelianModel,
            description: "(Q, +) with the trivial dominance",
        }),
        Box::new(Registered {
            model: AffineModel,
            description: "affine maps x -> ax + b of Q, valuation levels 0/1/2",
        }),
        Box::new(Registered {
            model: CompositionModel {
                order: comp_order,
                orientation: GA_ORIENTATION,
            },
            description: "parabolic series, ordered-group orientation",
        }),
        Box::new(Registered {
            model: CompositionModel {
                order: comp_order,
                orientation: Orientation::Direct,
            },
            description: "parabolic series under plain composition",
        }),
        Box::new(Registered {
            model: DerivationModel { order: der_order },
            description: "contracting derivations under BCH",
        }),
        Box::new(Registered {
            model: NilModel::new(2, 3),
            description: "free nilpotent group, 2 generators, class 3",
        }),
        Box::new(Registered {
            model: ProductModel,
            description: "negative control: Q x Q with a non-c dominance",
        }),
        Box::new(Registered {
            model: NilProductModel::new(2, 2),
            description: "negative control: product of two Heisenberg groups, min weight",
        }),
    ]
}

pub fn model_by_name(name: &str) -> Option<Box<dyn ModelRunner>> {
    model_at_order(name, None)
}

pub fn model_at_order(name: &str, order: Option<u32>) -> Option<Box<dyn ModelRunner>> {
    builtin_models_at(order)
        .into_iter()
        .find(|m| m.name() == name)
}
