//! Seeded property checks of valued-group axioms over pluggable models.
//!
//! Each law is a quantifier-free statement checked on sampled elements.
//! Sample `i` of a run with seed `s` draws from its own random stream, so a
//! failing sample can be replayed in isolation, and samples can be checked
//! in parallel without affecting the outcome.

mod models;

use std::cmp::Ordering;
use std::fmt::{self, Debug};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::LawError;
use crate::series::{rat, Coefficient};

pub use models::{
    builtin_models, builtin_models_at, model_at_order, model_by_name, AbelianModel, AffineModel,
    CompositionModel, DerivationModel, NilModel, NilProductModel, ProductModel,
};

/// Which powers `g^a` a model supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PowerSupport {
    None,
    Integer,
    Rational,
}

/// A group with a dominance relation, sampled for law checks.
pub trait GroupModel: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> &'static str;

    /// A (usually nontrivial) random element.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn id(&self) -> Self::Elem;

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_id(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.id())
    }

    /// `Less` iff `a ≺ b` (a strictly dominated by b).
    fn dominance(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// The group order, if the model is ordered.
    fn order(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Ordering> {
        None
    }

    fn powers(&self) -> PowerSupport {
        PowerSupport::None
    }

    fn pow(&self, _a: &Self::Elem, _q: &Coefficient) -> Option<Self::Elem> {
        None
    }

    /// A random element of the centralizer of `f`.
    fn centralizer_element(&self, f: &Self::Elem, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// Whether `x` lies in the centralizer of `f`. Models whose
    /// centralizers are known exactly override the commutation test.
    fn in_centralizer(&self, f: &Self::Elem, x: &Self::Elem) -> bool {
        self.eq(&self.op(f, x), &self.op(x, f))
    }

    /// A positive scaling element at the valuation of `f`.
    fn scaling(&self, _f: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// `q` such that `s^q` has the residue of `g`, when `g ≍ s`.
    fn residue_ratio(&self, _g: &Self::Elem, _s: &Self::Elem) -> Option<Coefficient> {
        None
    }

    fn show(&self, a: &Self::Elem) -> String;

    fn to_json(&self, a: &Self::Elem) -> Value {
        json!(self.show(a))
    }
}

/// Law identifiers accepted by [`Law::from_str`]; `V1`–`V6` are aliases
/// of `D1`–`D6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
    D9,
    /// Conjugating by a dominant positive element increases positive
    /// elements.
    GA,
    GOG1,
    GOG2,
    GOG3,
    /// Commutators are dominated by both arguments.
    NearAbelian,
    /// `f ≺ g` implies `fg ≍ gf ≍ g`.
    Absorption,
    /// Elements of distinct valuation have a commutator dominated by the
    /// larger one.
    CommutatorDrop,
    /// `[f^n, g] = 1` implies `[f, g] = 1`.
    PowerCentralizer,
    AbelianCentralizers,
    /// The four one-sided descriptions of `f ∼ g` agree.
    SimilarityEquivalence,
    /// Near-Abelianness, `fgf⁻¹ ∼ g` and `fg ∼ gf` hold together or not at
    /// all.
    NearAbelianEquivalence,
    /// `D9` for integer exponents.
    IntegerUniform,
    /// Conjugates of centralizer elements by non-commuting elements leave
    /// the centralizer.
    MalnormalCentralizers,
    /// Left and right balls around a point coincide.
    BallSymmetry,
    /// No nontrivial element has order at most 6.
    TorsionFree,
}

pub const ALL_LAWS: [Law; 24] = [
    Law::D1,
    Law::D2,
    Law::D3,
    Law::D4,
    Law::D5,
    Law::D6,
    Law::D7,
    Law::D8,
    Law::D9,
    Law::GA,
    Law::GOG1,
    Law::GOG2,
    Law::GOG3,
    Law::NearAbelian,
    Law::Absorption,
    Law::CommutatorDrop,
    Law::PowerCentralizer,
    Law::AbelianCentralizers,
    Law::SimilarityEquivalence,
    Law::NearAbelianEquivalence,
    Law::IntegerUniform,
    Law::MalnormalCentralizers,
    Law::BallSymmetry,
    Law::TorsionFree,
];

impl Law {
    pub fn id(self) -> &'static str {
        match self {
            Law::D1 => "D1",
            Law::D2 => "D2",
            Law::D3 => "D3",
            Law::D4 => "D4",
            Law::D5 => "D5",
            Law::D6 => "D6",
            Law::D7 => "D7",
            Law::D8 => "D8",
            Law::D9 => "D9",
            Law::GA => "GA",
            Law::GOG1 => "GOG1",
            Law::GOG2 => "GOG2",
            Law::GOG3 => "GOG3",
            Law::NearAbelian => "near-abelian",
            Law::Absorption => "absorption",
            Law::CommutatorDrop => "commutator-drop",
            Law::PowerCentralizer => "power-centralizer",
            Law::AbelianCentralizers => "abelian-centralizers",
            Law::SimilarityEquivalence => "similarity-equivalence",
            Law::NearAbelianEquivalence => "near-abelian-equivalence",
            Law::IntegerUniform => "integer-uniform",
            Law::MalnormalCentralizers => "malnormal-centralizers",
            Law::BallSymmetry => "ball-symmetry",
            Law::TorsionFree => "torsion-free",
        }
    }

    fn requirement(self) -> Requirement {
        match self {
            Law::D7 | Law::D8 | Law::D9 => Requirement::Powers(PowerSupport::Integer),
            Law::IntegerUniform => Requirement::Powers(PowerSupport::Integer),
            Law::GA | Law::GOG1 | Law::GOG2 => Requirement::Order,
            Law::GOG3 => Requirement::Scaling,
            _ => Requirement::None,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Law {
    type Err = LawError;

    fn from_str(s: &str) -> Result<Self, LawError> {
        let key = s.trim();
        let alias = match key {
            "V1" => "D1",
            "V2" => "D2",
            "V3" => "D3",
            "V4" => "D4",
            "V5" => "D5",
            "V6" => "D6",
            other => other,
        };
        ALL_LAWS
            .iter()
            .copied()
            .find(|l| l.id().eq_ignore_ascii_case(alias))
            .ok_or_else(|| LawError::UnknownLaw(s.to_string()))
    }
}

enum Requirement {
    None,
    Powers(PowerSupport),
    Order,
    Scaling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// No sample satisfied the law's hypothesis.
    Vacuous,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
        }
    }
}

/// The result of checking one sample.
#[derive(Clone, Debug)]
pub enum Outcome<E> {
    /// The hypothesis did not apply.
    Vacuous,
    Held,
    Violated(Vec<E>),
    /// Truth values of several statements (aggregate laws).
    Flags(Vec<bool>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub sample: usize,
    pub elements: Vec<String>,
    #[serde(skip)]
    pub json: Vec<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub law: String,
    pub model: String,
    pub samples: usize,
    /// Samples on which the hypothesis applied.
    pub exercised: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law,
            "model": self.model,
            "samples": self.samples,
            "exercised": self.exercised,
            "seed": self.seed,
            "verdict": self.verdict,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "sample": c.sample,
                "elements": c.json,
            })),
        })
    }

    /// One line: `model law verdict (exercised/samples)`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} {} {} ({}/{} exercised)",
            self.model,
            self.law,
            self.verdict.name(),
            self.exercised,
            self.samples
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!(
                "\n  counterexample at sample {} (seed {}): {}",
                c.sample,
                self.seed,
                c.elements.join(" ; ")
            ));
        }
        s
    }
}

/// The random stream of sample `index` in a run with `seed`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn applicable<M: GroupModel + ?Sized>(model: &M, law: Law) -> bool {
    match law.requirement() {
        Requirement::None => true,
        Requirement::Powers(p) => model.powers() >= p,
        Requirement::Order => model.order(&model.id(), &model.id()).is_some(),
        Requirement::Scaling => {
            model.powers() == PowerSupport::Rational && model.scaling(&model.id()).is_some()
        }
    }
}

/// Checks `law` on `samples` seeded samples of `model`.
pub fn check_law<M: GroupModel>(
    model: &M,
    law: Law,
    samples: usize,
    seed: u64,
) -> Result<LawReport, LawError> {
    if !applicable(model, law) {
        return Err(LawError::NotApplicable(
            law.id().to_string(),
            model.name().to_string(),
        ));
    }
    let outcomes: Vec<Outcome<M::Elem>> = (0..samples)
        .into_par_iter()
        .map(|i| check_sample(model, law, &mut sample_rng(seed, i)))
        .collect();
    let mut report = LawReport {
        law: law.id().to_string(),
        model: model.name().to_string(),
        samples,
        exercised: 0,
        seed,
        verdict: Verdict::Vacuous,
        counterexample: None,
    };
    let mut flags_all: Option<Vec<bool>> = None;
    let mut flags_any_false: Option<Vec<bool>> = None;
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Vacuous => {}
            Outcome::Held => report.exercised += 1,
            Outcome::Violated(els) => {
                report.exercised += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Counterexample {
                        sample: i,
                        elements: els.iter().map(|e| model.show(e)).collect(),
                        json: els.iter().map(|e| model.to_json(e)).collect(),
                    });
                }
            }
            Outcome::Flags(fs) => {
                report.exercised += 1;
                let all = flags_all.get_or_insert_with(|| vec![true; fs.len()]);
                let any_false = flags_any_false.get_or_insert_with(|| vec![false; fs.len()]);
                for (k, f) in fs.iter().enumerate() {
                    all[k] &= *f;
                    any_false[k] |= !*f;
                }
            }
        }
    }
    report.verdict = if let Some(any_false) = flags_any_false {
        // equivalent statements: each fails somewhere, or none ever fails
        if any_false.iter().all(|b| *b) || any_false.iter().all(|b| !*b) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else if report.counterexample.is_some() {
        Verdict::Fail
    } else if report.exercised == 0 {
        Verdict::Vacuous
    } else {
        Verdict::Pass
    };
    Ok(report)
}

/// Re-runs a single sample of a law check.
pub fn replay<M: GroupModel>(model: &M, law: Law, seed: u64, index: usize) -> Outcome<M::Elem> {
    check_sample(model, law, &mut sample_rng(seed, index))
}

struct Ops<'a, M: GroupModel + ?Sized>(&'a M);

impl<M: GroupModel + ?Sized> Ops<'_, M> {
    fn mul(&self, a: &M::Elem, b: &M::Elem) -> M::Elem {
        self.0.op(a, b)
    }

    fn conj(&self, h: &M::Elem, f: &M::Elem) -> M::Elem {
        self.mul(&self.mul(h, f), &self.0.inv(h))
    }

    fn comm(&self, f: &M::Elem, g: &M::Elem) -> M::Elem {
        let m = self.0;
        self.mul(&self.mul(&m.inv(f), &m.inv(g)), &self.mul(f, g))
    }

    fn commute(&self, f: &M::Elem, g: &M::Elem) -> bool {
        self.0.eq(&self.mul(f, g), &self.mul(g, f))
    }

    fn prec(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.0.dominance(a, b) == Ordering::Less
    }

    fn preceq(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.0.dominance(a, b) != Ordering::Greater
    }

    fn asymp(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.0.dominance(a, b) == Ordering::Equal
    }

    /// `f ∼ g`: `f g⁻¹ ≺ f`, with the identity similar only to itself.
    fn sim(&self, f: &M::Elem, g: &M::Elem) -> bool {
        match (self.0.is_id(f), self.0.is_id(g)) {
            (true, true) => true,
            (false, false) => self.prec(&self.mul(f, &self.0.inv(g)), f),
            _ => false,
        }
    }

    fn positive(&self, f: &M::Elem) -> M::Elem {
        let i = self.0.inv(f);
        if self.0.order(f, &i) == Some(Ordering::Less) {
            i
        } else {
            f.clone()
        }
    }

    fn greater(&self, a: &M::Elem, b: &M::Elem) -> bool {
        self.0.order(a, b) == Some(Ordering::Greater)
    }

    fn power(&self, f: &M::Elem, q: &Coefficient) -> M::Elem {
        if let Some(p) = self.0.pow(f, q) {
            return p;
        }
        let n: i64 = i64::try_from(q.numer()).expect("small exponent");
        let base = if n < 0 { self.0.inv(f) } else { f.clone() };
        let mut acc = self.0.id();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// A random nontrivial pair.
    fn pair(&self, rng: &mut ChaCha8Rng) -> (M::Elem, M::Elem) {
        (self.0.sample(rng), self.0.sample(rng))
    }

    /// A pair `(f, g)` with `f ≍ g`: either sampled so, or `(f, f ε)` with
    /// `ε ≺ f`.
    fn same_valuation_pair(&self, rng: &mut ChaCha8Rng) -> (M::Elem, M::Elem) {
        let (a, b) = self.pair(rng);
        match self.0.dominance(&a, &b) {
            Ordering::Equal => (a, b),
            Ordering::Less => (b.clone(), self.mul(&b, &a)),
            Ordering::Greater => (a.clone(), self.mul(&a, &b)),
        }
    }

    /// A pair `(f, ε)` with `ε ≺ f`, or `None` if the sampled pair is
    /// comparable.
    fn dominated_pair(&self, rng: &mut ChaCha8Rng) -> Option<(M::Elem, M::Elem)> {
        let (a, b) = self.pair(rng);
        match self.0.dominance(&a, &b) {
            Ordering::Equal => None,
            Ordering::Less => Some((b, a)),
            Ordering::Greater => Some((a, b)),
        }
    }

    fn exponent(&self, rng: &mut ChaCha8Rng, integer_only: bool) -> Coefficient {
        use rand::Rng;
        if integer_only || self.0.powers() == PowerSupport::Integer {
            rat(rng.gen_range(-3..=3), 1)
        } else {
            let choices = [
                rat(2, 1),
                rat(-1, 1),
                rat(3, 1),
                rat(1, 2),
                rat(-3, 2),
                rat(2, 3),
                rat(0, 1),
            ];
            choices[rng.gen_range(0..choices.len())].clone()
        }
    }
}

fn verdict<E>(ok: bool, els: impl FnOnce() -> Vec<E>) -> Outcome<E> {
    if ok {
        Outcome::Held
    } else {
        Outcome::Violated(els())
    }
}

fn check_sample<M: GroupModel>(model: &M, law: Law, rng: &mut ChaCha8Rng) -> Outcome<M::Elem> {
    let o = Ops(model);
    match law {
        Law::D1 => {
            let f = model.sample(rng);
            if model.is_id(&f) {
                return Outcome::Vacuous;
            }
            verdict(o.prec(&model.id(), &f), || vec![f])
        }
        Law::D2 => {
            let (f, g) = o.pair(rng);
            let fg = o.mul(&f, &g);
            verdict(o.preceq(&fg, &f) || o.preceq(&fg, &g), || vec![f, g])
        }
        Law::D3 => {
            let (f, g) = o.pair(rng);
            let h = model.sample(rng);
            let before = model.dominance(&f, &g);
            let after = model.dominance(&o.conj(&h, &f), &o.conj(&h, &g));
            verdict(before == after, || vec![f, g, h])
        }
        Law::D4 => {
            let f = model.sample(rng);
            verdict(o.asymp(&f, &model.inv(&f)), || vec![f])
        }
        Law::D5 => {
            let f = model.sample(rng);
            let g = model.centralizer_element(&f, rng);
            if model.is_id(&f) || model.is_id(&g) || !o.commute(&f, &g) {
                return Outcome::Vacuous;
            }
            verdict(o.asymp(&f, &g), || vec![f, g])
        }
        Law::D6 => {
            let (f, g) = o.same_valuation_pair(rng);
            if model.is_id(&f) || model.is_id(&g) || !o.asymp(&f, &g) {
                return Outcome::Vacuous;
            }
            verdict(o.prec(&o.comm(&f, &g), &f), || vec![f, g])
        }
        Law::D7 => {
            let f = model.sample(rng);
            let a = o.exponent(rng, false);
            let fa = o.power(&f, &a);
            if model.is_id(&fa) {
                return Outcome::Vacuous;
            }
            verdict(o.preceq(&fa, &f), || vec![f, fa])
        }
        Law::D8 | Law::D9 | Law::IntegerUniform => {
            let Some((f, e)) = o.dominated_pair(rng) else {
                return Outcome::Vacuous;
            };
            if model.is_id(&e) {
                return Outcome::Vacuous;
            }
            let a = o.exponent(rng, law == Law::IntegerUniform);
            let x = o.mul(&o.power(&o.mul(&f, &e), &a), &o.power(&f, &(-a.clone())));
            let ok = if law == Law::D8 {
                o.prec(&x, &f)
            } else {
                o.preceq(&x, &e)
            };
            verdict(ok, || vec![f, e, x])
        }
        Law::GA => {
            let (a, b) = o.pair(rng);
            if model.is_id(&a) || model.is_id(&b) {
                return Outcome::Vacuous;
            }
            let (a, b) = (o.positive(&a), o.positive(&b));
            let (f, g) = match model.dominance(&a, &b) {
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
                Ordering::Equal => return Outcome::Vacuous,
            };
            verdict(o.greater(&o.conj(&f, &g), &g), || vec![f, g])
        }
        Law::GOG1 => {
            let (a, b) = o.pair(rng);
            if model.is_id(&a) || model.is_id(&b) {
                return Outcome::Vacuous;
            }
            let (a, b) = (o.positive(&a), o.positive(&b));
            let (f, g) = if o.greater(&b, &a) { (b, a) } else { (a, b) };
            let g0 = model.centralizer_element(&g, rng);
            // witnesses f^(2^i), and the identity
            let mut found = !o.greater(&g0, &model.id());
            let mut cand = f.clone();
            for _ in 0..24 {
                if found {
                    break;
                }
                found = !o.greater(&g0, &cand);
                cand = o.mul(&cand, &cand);
            }
            verdict(found, || vec![f, g, g0])
        }
        Law::GOG2 => {
            let (a, b) = o.pair(rng);
            if model.is_id(&a) || model.is_id(&b) {
                return Outcome::Vacuous;
            }
            let (a, b) = (o.positive(&a), o.positive(&b));
            let (f, g) = match model.dominance(&a, &b) {
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
                Ordering::Equal => return Outcome::Vacuous,
            };
            // f dominates g, so it exceeds the centralizer of g; spot-check
            let g0 = model.centralizer_element(&g, rng);
            if !o.greater(&f, &g0) {
                return Outcome::Vacuous;
            }
            verdict(o.greater(&o.mul(&f, &g), &o.mul(&g, &f)), || vec![f, g])
        }
        Law::GOG3 => {
            let (f, g) = o.same_valuation_pair(rng);
            if model.is_id(&f) || model.is_id(&g) {
                return Outcome::Vacuous;
            }
            let Some(s) = model.scaling(&f) else {
                return Outcome::Vacuous;
            };
            let c1 = model.centralizer_element(&s, rng);
            let c2 = model.centralizer_element(&s, rng);
            let ok_abelian = o.commute(&c1, &c2);
            let ok = ok_abelian
                && o.greater(&s, &model.id())
                && match model.residue_ratio(&g, &s) {
                    None => false,
                    Some(q) => {
                        let s0 = o.power(&s, &q);
                        o.commute(&s0, &s) && o.sim(&s0, &g)
                    }
                };
            verdict(ok, || vec![f, g, s])
        }
        Law::NearAbelian => {
            let (f, g) = o.pair(rng);
            if model.is_id(&f) || model.is_id(&g) {
                return Outcome::Vacuous;
            }
            let c = o.comm(&f, &g);
            verdict(o.prec(&c, &f) && o.prec(&c, &g), || vec![f, g])
        }
        Law::Absorption => {
            let Some((g, f)) = o.dominated_pair(rng) else {
                return Outcome::Vacuous;
            };
            let ok = o.asymp(&o.mul(&f, &g), &g) && o.asymp(&o.mul(&g, &f), &g);
            verdict(ok, || vec![f, g])
        }
        Law::CommutatorDrop => {
            let Some((big, small)) = o.dominated_pair(rng) else {
                return Outcome::Vacuous;
            };
            verdict(o.prec(&o.comm(&big, &small), &big), || vec![big, small])
        }
        Law::PowerCentralizer => {
            use rand::Rng;
            let f = model.sample(rng);
            let n = [1, 2, 3, 4, -1, -2, -3, -4][rng.gen_range(0..8)];
            let fnn = o.power(&f, &rat(n, 1));
            if model.is_id(&fnn) {
                return Outcome::Vacuous;
            }
            let g = model.centralizer_element(&fnn, rng);
            if !o.commute(&fnn, &g) {
                return Outcome::Vacuous;
            }
            verdict(o.commute(&f, &g), || vec![f, g])
        }
        Law::AbelianCentralizers => {
            let f = model.sample(rng);
            if model.is_id(&f) {
                return Outcome::Vacuous;
            }
            let g = model.centralizer_element(&f, rng);
            let h = model.centralizer_element(&f, rng);
            verdict(o.commute(&g, &h), || vec![f, g, h])
        }
        Law::SimilarityEquivalence => {
            use rand::Rng;
            let (f, g) = if rng.gen_bool(0.5) {
                o.pair(rng)
            } else {
                o.same_valuation_pair(rng)
            };
            if model.is_id(&f) || model.is_id(&g) {
                return Outcome::Vacuous;
            }
            let gi = model.inv(&g);
            let fg = o.mul(&f, &gi);
            let gf = o.mul(&gi, &f);
            let conds = [
                o.prec(&fg, &f),
                o.prec(&fg, &g),
                o.prec(&gf, &f),
                o.prec(&gf, &g),
            ];
            verdict(conds.iter().all(|c| *c == conds[0]), || vec![f, g])
        }
        Law::NearAbelianEquivalence => {
            let (f, g) = o.pair(rng);
            if model.is_id(&f) || model.is_id(&g) {
                return Outcome::Vacuous;
            }
            let c = o.comm(&f, &g);
            Outcome::Flags(vec![
                o.prec(&c, &f) && o.prec(&c, &g),
                o.sim(&o.conj(&f, &g), &g),
                o.sim(&o.mul(&f, &g), &o.mul(&g, &f)),
            ])
        }
        Law::MalnormalCentralizers => {
            let f = model.sample(rng);
            let h = model.centralizer_element(&f, rng);
            let g = model.sample(rng);
            if model.is_id(&f)
                || model.is_id(&h)
                || o.commute(&g, &f)
                || !model.in_centralizer(&f, &h)
            {
                return Outcome::Vacuous;
            }
            verdict(!model.in_centralizer(&f, &o.conj(&g, &h)), || vec![f, g, h])
        }
        Law::BallSymmetry => {
            use rand::Rng;
            let f = model.sample(rng);
            let k = model.sample(rng);
            let h = if rng.gen_bool(0.5) {
                model.sample(rng)
            } else {
                o.mul(&f, &model.sample(rng))
            };
            if model.is_id(&k) {
                return Outcome::Vacuous;
            }
            let fi = model.inv(&f);
            let right = o.prec(&o.mul(&fi, &h), &k);
            let left = o.prec(&o.mul(&h, &fi), &k);
            verdict(right == left, || vec![f, h, k])
        }
        Law::TorsionFree => {
            let f = model.sample(rng);
            if model.is_id(&f) {
                return Outcome::Vacuous;
            }
            let mut p = f.clone();
            for _ in 2..=6 {
                p = o.mul(&p, &f);
                if model.is_id(&p) {
                    return Outcome::Violated(vec![f]);
                }
            }
            Outcome::Held
        }
    }
}

/// Type-erased access to a model, for registries and front ends.
pub trait ModelRunner: Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn check(&self, law: Law, samples: usize, seed: u64) -> Result<LawReport, LawError>;
    /// Whether replaying the given sample reproduces a violation with the
    /// same elements.
    fn replays(&self, report: &LawReport) -> bool;
}

pub(crate) struct Registered<M> {
    pub model: M,
    pub description: &'static str,
}

impl<M: GroupModel> ModelRunner for Registered<M> {
    fn name(&self) -> &'static str {
        self.model.name()
    }

    fn description(&self) -> &'static str {
        self.description
    }

    fn check(&self, law: Law, samples: usize, seed: u64) -> Result<LawReport, LawError> {
        check_law(&self.model, law, samples, seed)
    }

    fn replays(&self, report: &LawReport) -> bool {
        let (Ok(law), Some(c)) = (report.law.parse::<Law>(), &report.counterexample) else {
            return false;
        };
        match replay(&self.model, law, report.seed, c.sample) {
            Outcome::Violated(els) => {
                els.iter().map(|e| self.model.show(e)).collect::<Vec<_>>() == c.elements
            }
            _ => false,
        }
    }
}

/// Expected verdict of a model × law pair: a verdict, or `n/a` when the law
/// needs a capability the model lacks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEntry {
    pub model: String,
    pub law: String,
    pub expected: String,
}

/// Parses the line format `model law expected`; `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<Vec<MatrixEntry>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(format!("line {}: expected `model law expected`", n + 1));
        }
        out.push(MatrixEntry {
            model: parts[0].to_string(),
            law: parts[1].to_string(),
            expected: parts[2].to_string(),
        });
    }
    Ok(out)
}

/// Runs every law on every built-in model; `n/a` marks inapplicable laws.
pub fn run_matrix(samples: usize, seed: u64) -> Vec<(MatrixEntry, Option<LawReport>)> {
    let models = builtin_models();
    let jobs: Vec<(usize, Law)> = (0..models.len())
        .flat_map(|m| ALL_LAWS.iter().map(move |l| (m, *l)))
        .collect();
    jobs.par_iter()
        .map(|(m, law)| {
            let runner = &models[*m];
            let report = runner.check(*law, samples, seed).ok();
            let expected = report
                .as_ref()
                .map_or("n/a".to_string(), |r| r.verdict.name().to_string());
            (
                MatrixEntry {
                    model: runner.name().to_string(),
                    law: law.id().to_string(),
                    expected,
                },
                report,
            )
        })
        .collect()
}

/// The committed expected matrix.
pub const EXPECTED_MATRIX: &str = include_str!("../../fixtures/law_matrix.txt");
pub const MATRIX_SAMPLES: usize = 200;
pub const MATRIX_SEED: u64 = 20240;
