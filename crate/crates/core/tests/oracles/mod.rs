//! Reference computations written independently of the library internals.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::{One, Zero};
use valgroups::derivations::DerivationElement;
use valgroups::series::{rat, Coefficient};
use valgroups::terms::Term;

/// Dense polynomial `c_0 + c_1 t + …` truncated at degree `n`.
pub type Dense = Vec<Coefficient>;

pub fn dense_mul(a: &Dense, b: &Dense, n: usize) -> Dense {
    let mut out = vec![Coefficient::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a(b(t))` by summing `a_i b^i`.
pub fn dense_compose(a: &Dense, b: &Dense, n: usize) -> Dense {
    let mut out = vec![Coefficient::zero(); n + 1];
    let mut pow = vec![Coefficient::zero(); n + 1];
    pow[0] = Coefficient::one();
    for (i, c) in a.iter().enumerate().take(n + 1) {
        if i > 0 {
            pow = dense_mul(&pow, b, n);
        }
        for k in 0..=n {
            out[k] += c * &pow[k];
        }
    }
    out
}

/// The compositional square root `h = t + …` of `t + t²`, coefficient by
/// coefficient: `h_k` enters `[t^k] h∘h` with weight 2.
pub fn sqrt_of_t_plus_t2(n: usize) -> Dense {
    let mut target = vec![Coefficient::zero(); n + 1];
    target[1] = Coefficient::one();
    if n >= 2 {
        target[2] = Coefficient::one();
    }
    let mut h = vec![Coefficient::zero(); n + 1];
    h[1] = Coefficient::one();
    for k in 2..=n {
        let hh = dense_compose(&h, &h, n);
        h[k] = (&target[k] - &hh[k]) / rat(2, 1);
    }
    h
}

/// Coefficients of the compositional inverse of `t + t²`: signed Catalan
/// numbers.
pub fn signed_catalan(n: usize) -> Vec<i64> {
    let mut c = vec![1i64];
    for k in 1..n {
        let prev = c[k - 1];
        c.push(prev * 2 * (2 * k as i64 - 1) / (k as i64 + 1));
    }
    c.iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { *v } else { -v })
        .collect()
}

/// Witt's formula `(1/n) Σ_{d|n} μ(d) k^(n/d)`.
pub fn witt(k: u64, n: u64) -> u64 {
    let mut sum: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            sum += mobius(d) * (k as i64).pow((n / d) as u32);
        }
    }
    (sum / n as i64) as u64
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// The Heisenberg group in exponential coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Heis(pub [Coefficient; 3]);

impl Heis {
    pub fn id() -> Self {
        Heis([
            Coefficient::zero(),
            Coefficient::zero(),
            Coefficient::zero(),
        ])
    }

    pub fn mul(&self, b: &Heis) -> Heis {
        let a = &self.0;
        let b = &b.0;
        let half = rat(1, 2);
        Heis([
            &a[0] + &b[0],
            &a[1] + &b[1],
            &a[2] + &b[2] + half * (&a[0] * &b[1] - &a[1] * &b[0]),
        ])
    }

    pub fn pow(&self, q: &Coefficient) -> Heis {
        Heis([&self.0[0] * q, &self.0[1] * q, &self.0[2] * q])
    }
}

pub fn heis_eval(t: &Term, y: &Heis, consts: &HashMap<String, Heis>) -> Heis {
    match t {
        Term::Const(n) => consts[n].clone(),
        Term::Y => y.clone(),
        Term::Mul(a, b) => heis_eval(a, y, consts).mul(&heis_eval(b, y, consts)),
        Term::Pow(b, q) => heis_eval(b, y, consts).pow(q),
    }
}

/// Total exponent of `y`.
pub fn y_weight(t: &Term) -> Coefficient {
    match t {
        Term::Const(_) => Coefficient::zero(),
        Term::Y => Coefficient::one(),
        Term::Mul(a, b) => y_weight(a) + y_weight(b),
        Term::Pow(b, q) => y_weight(b) * q,
    }
}

/// The unique solution of `t(y) = 1`: the first two coordinates are linear
/// in `y`, and the central one is linear once those are fixed.
pub fn heis_solve(t: &Term, consts: &HashMap<String, Heis>) -> Heis {
    let alpha = y_weight(t);
    let at0 = heis_eval(t, &Heis::id(), consts);
    let y1 = -&at0.0[0] / &alpha;
    let y2 = -&at0.0[1] / &alpha;
    let partial = Heis([y1.clone(), y2.clone(), Coefficient::zero()]);
    let y3 = -&heis_eval(t, &partial, consts).0[2] / &alpha;
    Heis([y1, y2, y3])
}

/// A bracket expression over two letters, e.g. `[x1,[x1,x2]]`.
#[derive(Debug)]
pub enum Bracket {
    Letter(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

pub fn parse_bracket(s: &str) -> Bracket {
    fn go(s: &[u8], i: &mut usize) -> Bracket {
        if s[*i] == b'x' {
            let start = *i + 1;
            *i += 1;
            while *i < s.len() && s[*i].is_ascii_digit() {
                *i += 1;
            }
            let n: usize = std::str::from_utf8(&s[start..*i]).unwrap().parse().unwrap();
            return Bracket::Letter(n - 1);
        }
        assert_eq!(s[*i], b'[');
        *i += 1;
        let a = go(s, i);
        assert_eq!(s[*i], b',');
        *i += 1;
        let b = go(s, i);
        assert_eq!(s[*i], b']');
        *i += 1;
        Bracket::Pair(Box::new(a), Box::new(b))
    }
    go(s.as_bytes(), &mut 0)
}

pub fn eval_bracket(b: &Bracket, letters: &[DerivationElement]) -> DerivationElement {
    match b {
        Bracket::Letter(i) => letters[*i].clone(),
        Bracket::Pair(x, y) => eval_bracket(x, letters).bracket(&eval_bracket(y, letters)),
    }
}
