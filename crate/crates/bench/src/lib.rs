//! Seeded inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use valgroups::sampling;
use valgroups::terms::{SymbolTable, Term};
use valgroups::{DerivationElement, Parabolic};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn parabolics(count: usize, order: u32, seed: u64) -> Vec<Parabolic> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| sampling::parabolic(&mut rng, order, 4))
        .collect()
}

pub fn derivations(count: usize, order: u32, seed: u64) -> Vec<DerivationElement> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| sampling::derivation(&mut rng, order, 3))
        .collect()
}

/// Regular terms over two constants `g1`, `g2` bound to random parabolic
/// series.
pub fn equations(count: usize, order: u32, seed: u64) -> Vec<(Term, SymbolTable<Parabolic>)> {
    let mut rng = rng(seed);
    let names = vec!["g1".to_string(), "g2".to_string()];
    let exponents = sampling::term_exponents();
    (0..count)
        .map(|_| {
            let t = sampling::regular_term(&mut rng, &names, 3, &exponents);
            let mut tab = SymbolTable::new();
            for n in &names {
                tab.bind(n, sampling::parabolic(&mut rng, order, 4))
                    .unwrap();
            }
            (t, tab)
        })
        .collect()
}
