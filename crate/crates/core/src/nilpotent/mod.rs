//! Free nilpotent groups over the rationals.
//!
//! The free nilpotent Lie algebra on `k` generators of class `c` is spanned
//! by the Lyndon basis: Lyndon words of length `<= c`, each bracketed by its
//! standard factorization `w = uv` (`v` the longest proper Lyndon suffix).
//! Basis elements are ordered by weight, then lexicographically by word.
//!
//! A group element is stored as the coordinates of its logarithm in this
//! basis, so the identity is the zero vector, inverses are negation and
//! `g^q` is scaling by `q`. The product is the Baker–Campbell–Hausdorff
//! product, computed as `log(exp(a) exp(b))` in the free associative algebra
//! truncated at degree `c` and projected back onto the basis.
//!
//! The valuation is the lower central weight: the smallest weight with a
//! nonzero coordinate.

mod assoc;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{NilError, SolveError};
use crate::group::{GroupElement, ValuedElement};
use crate::series::{fmt_coefficient, Coefficient};
use crate::solver::{solve_regular, SolveTrace};
use crate::terms::{SymbolTable, Term};

use assoc::{lyndon_words, Poly, Word};

pub const MAX_GENERATORS: usize = 4;
pub const MAX_CLASS: usize = 6;

#[derive(Debug)]
struct BasisElement {
    word: Word,
    name: String,
    poly: Poly,
}

/// The free nilpotent Lie algebra with its Lyndon basis.
#[derive(Debug)]
pub struct FreeNilAlgebra {
    generators: usize,
    class: usize,
    basis: Vec<BasisElement>,
    index: HashMap<Word, usize>,
    brackets: Mutex<HashMap<(usize, usize), Vec<(usize, Coefficient)>>>,
}

impl PartialEq for FreeNilAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.class == other.class
    }
}

impl FreeNilAlgebra {
    pub fn new(generators: usize, class: usize) -> Result<Arc<Self>, NilError> {
        if !(1..=MAX_GENERATORS).contains(&generators) || !(1..=MAX_CLASS).contains(&class) {
            return Err(NilError::Unsupported(generators, class));
        }
        let mut words = lyndon_words(generators as u8, class);
        words.sort_by(|a: &Word, b: &Word| (a.len(), a).cmp(&(b.len(), b)));
        let mut basis: Vec<BasisElement> = Vec::with_capacity(words.len());
        let mut index: HashMap<Word, usize> = HashMap::new();
        for w in words {
            let (name, poly) = if w.len() == 1 {
                (
                    format!("x{}", w[0] + 1),
                    Poly::word(w.clone(), Coefficient::one()),
                )
            } else {
                let split = (1..w.len())
                    .find(|&i| index.contains_key(&w[i..]))
                    .expect("a Lyndon word of length > 1 has a Lyndon proper suffix");
                let left = &basis[index[&w[..split]]];
                let right = &basis[index[&w[split..]]];
                (
                    format!("[{},{}]", left.name, right.name),
                    left.poly.commutator(&right.poly, class),
                )
            };
            index.insert(w.clone(), basis.len());
            basis.push(BasisElement {
                word: w,
                name,
                poly,
            });
        }
        Ok(Arc::new(FreeNilAlgebra {
            generators,
            class,
            basis,
            index,
            brackets: Mutex::new(HashMap::new()),
        }))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.basis[i].word.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn names(&self) -> Vec<&str> {
        self.basis.iter().map(|b| b.name.as_str()).collect()
    }

    /// Number of basis elements of each weight `1..=class`.
    pub fn dimensions_by_weight(&self) -> Vec<usize> {
        let mut out = vec![0; self.class];
        for b in &self.basis {
            out[b.word.len() - 1] += 1;
        }
        out
    }

    fn to_poly(&self, coords: &BTreeMap<usize, Coefficient>) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in coords {
            p.add_scaled(&self.basis[*i].poly, c);
        }
        p
    }

    /// Coordinates of a Lie polynomial. The smallest word (by length, then
    /// lexicographically) in the support of a Lie polynomial is Lyndon, and
    /// the bracketed basis element for that word has it as its smallest word
    /// with coefficient 1, so peeling it off terminates.
    fn project(&self, mut p: Poly) -> BTreeMap<usize, Coefficient> {
        let mut out = BTreeMap::new();
        while let Some(w) = p
            .terms
            .keys()
            .min_by(|a, b| (a.len(), a).cmp(&(b.len(), b)))
        {
            let w = w.clone();
            let c = p.terms[&w].clone();
            let i = *self
                .index
                .get(&w)
                .unwrap_or_else(|| panic!("not a Lie polynomial: leading word {w:?}"));
            p.add_scaled(&self.basis[i].poly, &-c.clone());
            out.insert(i, c);
        }
        out
    }

    /// Structure constants: `[e_i, e_j]` in the basis.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Coefficient)> {
        if let Some(v) = self.brackets.lock().unwrap().get(&(i, j)) {
            return v.clone();
        }
        let p = self.basis[i]
            .poly
            .commutator(&self.basis[j].poly, self.class);
        let v: Vec<_> = self.project(p).into_iter().collect();
        self.brackets.lock().unwrap().insert((i, j), v.clone());
        v
    }
}

/// An element of the free nilpotent group, in logarithmic coordinates.
#[derive(Clone)]
pub struct NilElement {
    alg: Arc<FreeNilAlgebra>,
    coords: BTreeMap<usize, Coefficient>,
}

impl PartialEq for NilElement {
    fn eq(&self, other: &Self) -> bool {
        *self.alg == *other.alg && self.coords == other.coords
    }
}

impl fmt::Debug for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilElement{self}")
    }
}

impl NilElement {
    pub fn zero(alg: &Arc<FreeNilAlgebra>) -> Self {
        NilElement {
            alg: alg.clone(),
            coords: BTreeMap::new(),
        }
    }

    /// The generator `x_{i+1}`.
    pub fn generator(alg: &Arc<FreeNilAlgebra>, i: usize) -> Self {
        Self::from_sparse(alg, [(i, Coefficient::one())])
    }

    fn from_sparse(
        alg: &Arc<FreeNilAlgebra>,
        coords: impl IntoIterator<Item = (usize, Coefficient)>,
    ) -> Self {
        NilElement {
            alg: alg.clone(),
            coords: coords.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Coordinates listed in basis order.
    pub fn from_coords(
        alg: &Arc<FreeNilAlgebra>,
        coords: &[Coefficient],
    ) -> Result<Self, NilError> {
        if coords.len() != alg.dimension() {
            return Err(NilError::Dimension {
                expected: alg.dimension(),
                got: coords.len(),
            });
        }
        Ok(Self::from_sparse(alg, coords.iter().cloned().enumerate()))
    }

    pub fn algebra(&self) -> &Arc<FreeNilAlgebra> {
        &self.alg
    }

    pub fn coord(&self, i: usize) -> Coefficient {
        self.coords
            .get(&i)
            .cloned()
            .unwrap_or_else(Coefficient::zero)
    }

    pub fn coords(&self) -> Vec<Coefficient> {
        (0..self.alg.dimension()).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn check(&self, other: &NilElement) -> Result<(), NilError> {
        if *self.alg == *other.alg {
            Ok(())
        } else {
            Err(NilError::AlgebraMismatch)
        }
    }

    /// The BCH product.
    pub fn mul(&self, other: &NilElement) -> Result<NilElement, NilError> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let c = self.alg.class;
        let a = self.alg.to_poly(&self.coords).exp(c);
        let b = self.alg.to_poly(&other.coords).exp(c);
        let coords = self.alg.project(a.mul(&b, c).log(c));
        Ok(NilElement {
            alg: self.alg.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> NilElement {
        self.scale(&-Coefficient::one())
    }

    /// `self^q`.
    pub fn scale(&self, q: &Coefficient) -> NilElement {
        Self::from_sparse(&self.alg, self.coords.iter().map(|(i, c)| (*i, c * q)))
    }

    /// Coordinatewise sum (addition in the Lie algebra).
    pub fn add(&self, other: &NilElement) -> Result<NilElement, NilError> {
        self.check(other)?;
        let mut coords = self.coords.clone();
        for (i, c) in &other.coords {
            *coords.entry(*i).or_insert_with(Coefficient::zero) += c;
        }
        Ok(Self::from_sparse(&self.alg, coords))
    }

    /// The Lie bracket of the logarithms, through the structure constants.
    pub fn lie_bracket(&self, other: &NilElement) -> Result<NilElement, NilError> {
        self.check(other)?;
        let mut coords: BTreeMap<usize, Coefficient> = BTreeMap::new();
        for (i, a) in &self.coords {
            for (j, b) in &other.coords {
                if self.alg.weight(*i) + self.alg.weight(*j) > self.alg.class {
                    continue;
                }
                for (k, s) in self.alg.bracket_basis(*i, *j) {
                    *coords.entry(k).or_insert_with(Coefficient::zero) += a * b * s;
                }
            }
        }
        Ok(Self::from_sparse(&self.alg, coords))
    }

    /// Lower central weight; `None` for the identity.
    pub fn lc_val(&self) -> Option<u32> {
        self.coords.keys().map(|i| self.alg.weight(*i) as u32).min()
    }

    /// The homogeneous component of lowest weight.
    pub fn res(&self) -> Result<NilElement, NilError> {
        let w = self.lc_val().ok_or(NilError::ZeroResidue)? as usize;
        Ok(Self::from_sparse(
            &self.alg,
            self.coords
                .iter()
                .filter(|(i, _)| self.alg.weight(**i) == w)
                .map(|(i, c)| (*i, c.clone())),
        ))
    }

    /// `{"basis": [...], "coords": {"x1": "p/q", ...}}` with zero
    /// coordinates omitted.
    pub fn to_json(&self) -> Value {
        let mut coords = Map::new();
        for (i, c) in &self.coords {
            coords.insert(self.alg.name(*i).to_string(), json!(fmt_coefficient(c)));
        }
        json!({ "basis": self.alg.names(), "coords": coords })
    }

    /// Nonzero coordinates as `name = value` pairs.
    pub fn describe(&self) -> String {
        if self.coords.is_empty() {
            return "0".to_string();
        }
        self.coords
            .iter()
            .map(|(i, c)| format!("{} = {}", self.alg.name(*i), fmt_coefficient(c)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Positional coordinates, e.g. `(1, 1, 1/2)`.
impl fmt::Display for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(fmt_coefficient).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl GroupElement for NilElement {
    fn op(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("elements of one algebra")
    }

    fn inv(&self) -> Self {
        self.neg()
    }

    fn identity_like(&self) -> Self {
        NilElement::zero(&self.alg)
    }

    fn is_identity(&self) -> bool {
        self.is_zero()
    }

    fn pow_rational(&self, q: &Coefficient) -> Option<Self> {
        Some(self.scale(q))
    }
}

impl ValuedElement for NilElement {
    type Residue = NilElement;

    fn rank(&self) -> Option<u32> {
        self.lc_val()
    }

    fn residue(&self) -> Option<NilElement> {
        self.res().ok()
    }

    fn scale_residue(r: &NilElement, q: &Coefficient) -> NilElement {
        r.scale(q)
    }

    fn residue_rank(r: &NilElement) -> u32 {
        r.lc_val().unwrap_or(0)
    }

    /// The homogeneous element itself.
    fn lift_residue(&self, r: &NilElement) -> Self {
        r.clone()
    }

    fn cancellation_bound(&self) -> usize {
        self.alg.class
    }

    fn residue_text(r: &NilElement) -> String {
        r.describe()
    }
}

/// Solves `t(y) = 1` in the free nilpotent group of `alg`.
pub fn solve_nilpotent(
    t: &Term,
    tab: &SymbolTable<NilElement>,
    alg: &Arc<FreeNilAlgebra>,
) -> Result<SolveTrace<NilElement>, SolveError> {
    solve_regular(t, tab, &NilElement::zero(alg))
}
