//! Truncated free associative algebra over the rationals: noncommutative
//! polynomials in letters `0..k` with all words of length `<= class`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::series::Coefficient;

pub type Word = Vec<u8>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<Word, Coefficient>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new(), Coefficient::one())
    }

    pub fn word(w: Word, c: Coefficient) -> Self {
        let mut p = Poly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Coefficient) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Product keeping only words of length `<= max_len`.
    pub fn mul(&self, other: &Poly, max_len: usize) -> Poly {
        let mut out: BTreeMap<Word, Coefficient> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() > max_len {
                    continue;
                }
                let mut w = u.clone();
                w.extend_from_slice(v);
                *out.entry(w).or_insert_with(Coefficient::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly { terms: out }
    }

    /// `self·other - other·self`.
    pub fn commutator(&self, other: &Poly, max_len: usize) -> Poly {
        let mut out = self.mul(other, max_len);
        out.add_scaled(&other.mul(self, max_len), &-Coefficient::one());
        out
    }

    /// `exp(self)`, assuming no constant term.
    pub fn exp(&self, max_len: usize) -> Poly {
        let mut out = Poly::one();
        let mut power = Poly::one();
        for n in 1..=max_len {
            power = power
                .mul(self, max_len)
                .scale(&Coefficient::new(1.into(), (n as i64).into()));
            if power.is_zero() {
                break;
            }
            out.add_scaled(&power, &Coefficient::one());
        }
        out
    }

    /// `log(self)`, assuming constant term 1.
    pub fn log(&self, max_len: usize) -> Poly {
        let mut x = self.clone();
        x.add_term(Vec::new(), -Coefficient::one());
        let mut out = Poly::zero();
        let mut power = Poly::one();
        for n in 1..=max_len {
            power = power.mul(&x, max_len);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&power, &Coefficient::new(sign.into(), (n as i64).into()));
        }
        out
    }
}

/// Lyndon words of length `1..=max_len` over `k` letters, by Duval's
/// algorithm, in lexicographic order.
pub fn lyndon_words(k: u8, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}
