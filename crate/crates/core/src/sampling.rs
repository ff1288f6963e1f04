//! Seeded generators for property checks and probes.

use num_traits::Zero;
use rand::Rng;

use crate::compgroup::Parabolic;
use crate::derivations::DerivationElement;
use crate::series::{rat, Coefficient, TruncatedSeries};
use crate::terms::Term;

/// A nonzero rational `p/q` with `|p| <= max_num` and `1 <= q <= max_den`.
pub fn nonzero_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Coefficient {
    loop {
        let p = rng.gen_range(-max_num..=max_num);
        if p != 0 {
            return rat(p, rng.gen_range(1..=max_den));
        }
    }
}

pub fn rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Coefficient {
    rat(
        rng.gen_range(-max_num..=max_num),
        rng.gen_range(1..=max_den),
    )
}

/// A power series with exponents in `low..=order`, nonzero at `low`, and a
/// few further random terms.
pub fn series_from<R: Rng>(rng: &mut R, low: u32, order: u32, extra: usize) -> TruncatedSeries {
    let mut terms = vec![(low, nonzero_rational(rng, 3, 2))];
    for _ in 0..extra {
        if low < order {
            let k = rng.gen_range(low + 1..=order);
            terms.push((k, rational(rng, 3, 2)));
        }
    }
    TruncatedSeries::from_terms(terms, order)
}

/// A non-identity parabolic series with valuation in `2..=max_val`.
pub fn parabolic<R: Rng>(rng: &mut R, order: u32, max_val: u32) -> Parabolic {
    let v = rng.gen_range(2..=max_val.clamp(2, order.max(2)));
    Parabolic::from_deviation(&series_from(rng, v, order, 3))
}

/// A nonzero derivation with valuation in `0..=max_val`.
pub fn derivation<R: Rng>(rng: &mut R, order: u32, max_val: u32) -> DerivationElement {
    let v = rng.gen_range(0..=max_val.min(order));
    DerivationElement::new(series_from(rng, v, order, 3))
}

/// Exponents `-2..=2` together with `±1/2`.
pub fn term_exponents() -> Vec<Coefficient> {
    let mut out: Vec<Coefficient> = (-2..=2).map(|n| rat(n, 1)).collect();
    out.push(rat(1, 2));
    out.push(rat(-1, 2));
    out
}

pub fn integer_term_exponents() -> Vec<Coefficient> {
    vec![rat(-2, 1), rat(-1, 1), rat(2, 1), rat(3, 1)]
}

/// A random term of the given maximal depth over `constants` and `y`.
pub fn term<R: Rng>(
    rng: &mut R,
    constants: &[String],
    depth: usize,
    exponents: &[Coefficient],
) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return if constants.is_empty() || rng.gen_bool(0.5) {
            Term::Y
        } else {
            Term::Const(constants[rng.gen_range(0..constants.len())].clone())
        };
    }
    if rng.gen_bool(0.35) {
        let q = exponents[rng.gen_range(0..exponents.len())].clone();
        Term::pow(term(rng, constants, depth - 1, exponents), q)
    } else {
        Term::mul(
            term(rng, constants, depth - 1, exponents),
            term(rng, constants, depth - 1, exponents),
        )
    }
}

/// A random term with nonzero total `y` exponent.
pub fn regular_term<R: Rng>(
    rng: &mut R,
    constants: &[String],
    depth: usize,
    exponents: &[Coefficient],
) -> Term {
    loop {
        let t = term(rng, constants, depth, exponents);
        if !t.alpha().is_zero() {
            return t;
        }
    }
}
