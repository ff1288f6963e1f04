use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use valgroups::compgroup::{Parabolic, Side, Val};
use valgroups::derivations::DerivationElement;
use valgroups::nilpotent::{FreeNilAlgebra, NilElement};
use valgroups::sampling;
use valgroups::series::{rat, Coefficient};
use valgroups::terms::{parse_term, Term};

const N: u32 = 8;

fn par(seed: u64) -> Parabolic {
    sampling::parabolic(&mut ChaCha8Rng::seed_from_u64(seed), N, 4)
}

fn der(seed: u64) -> DerivationElement {
    sampling::derivation(&mut ChaCha8Rng::seed_from_u64(seed), N, 3)
}

fn exponent(seed: u64) -> Coefficient {
    sampling::rational(&mut ChaCha8Rng::seed_from_u64(seed), 4, 3)
}

fn rank(f: &Parabolic) -> u32 {
    match f.val() {
        Val::Exponent(e) => e,
        Val::Trivial => u32::MAX,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composition_is_a_group(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (par(a), par(b), par(c));
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(f.compose(&Parabolic::identity(N)), f.clone());
    }

    #[test]
    fn residues_add_and_survive_conjugation(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (par(a), par(b));
        let fg = f.compose(&g);
        match rank(&f).cmp(&rank(&g)) {
            std::cmp::Ordering::Equal => {
                if let Ok(sum) = f.res().add(&g.res()) {
                    if !sum.coeff().is_zero() {
                        prop_assert_eq!(fg.res(), sum);
                    }
                }
            }
            std::cmp::Ordering::Less => prop_assert_eq!(fg.res(), f.res()),
            std::cmp::Ordering::Greater => prop_assert_eq!(fg.res(), g.res()),
        }
        prop_assert_eq!(g.conjugate(&f).res(), f.res());
        prop_assert!(rank(&f.commutator(&g)) > rank(&f).max(rank(&g)));
    }

    #[test]
    fn flows_form_a_one_parameter_group(a in any::<u64>(), p in any::<u64>(), q in any::<u64>()) {
        let f = par(a);
        let (p, q) = (exponent(p), exponent(q));
        prop_assert_eq!(f.flow(&p).compose(&f.flow(&q)), f.flow(&(&p + &q)));
        prop_assert_eq!(f.flow(&rat(3, 1)), f.power_int(3));
        prop_assert_eq!(f.flow(&p).res(), f.res().scale(&p));
    }

    #[test]
    fn order_is_bi_invariant(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (par(a), par(b), par(c));
        let o = f.compare(&g);
        prop_assert_eq!(h.compose(&f).compare(&h.compose(&g)), o);
        prop_assert_eq!(f.compose(&h).compare(&g.compose(&h)), o);
    }

    #[test]
    fn left_and_right_balls_agree(a in any::<u64>(), b in any::<u64>(), rho in 2u32..8) {
        let (f, h) = (par(a), par(b));
        let near = f.compose(&Parabolic::scaling_element(rho, N));
        for x in [&h, &near] {
            prop_assert_eq!(f.ball_contains(x, rho, Side::Left), f.ball_contains(x, rho, Side::Right));
        }
    }

    #[test]
    fn bracket_is_a_lie_bracket(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (u, v, w) = (der(a), der(b), der(c));
        prop_assert_eq!(u.bracket(&v), -&v.bracket(&u));
        let jacobi = &(&u.bracket(&v.bracket(&w)) + &v.bracket(&w.bracket(&u))) + &w.bracket(&u.bracket(&v));
        prop_assert!(jacobi.is_zero());
        let uv = u.bracket(&v);
        if !uv.is_zero() {
            let val = |x: &DerivationElement| x.series().valuation().finite().unwrap();
            prop_assert!(val(&uv) > val(&u).max(val(&v)));
        }
    }

    #[test]
    fn bch_is_a_group(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (u, v, w) = (der(a), der(b), der(c));
        prop_assert_eq!(u.bch(&v).bch(&w), u.bch(&v.bch(&w)));
        prop_assert!(u.bch(&-&u).is_zero());
        let q = exponent(c);
        prop_assert_eq!(u.bch(&u.scale(&q)), u.scale(&q).bch(&u));
    }

    #[test]
    fn bch_difference_leads_like_the_difference(a in any::<u64>(), b in any::<u64>()) {
        let (u, w) = (der(a), der(b));
        let d = &u - &w;
        prop_assume!(!d.is_zero());
        let b = u.bch(&-&w);
        prop_assert_eq!(b.series().leading(), d.series().leading());
    }

    #[test]
    fn terms_print_and_parse_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names = vec!["a".to_string(), "g2".to_string()];
        let t = sampling::term(&mut rng, &names, 4, &sampling::term_exponents()).normalize();
        let back: Term = parse_term(&t.to_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn nilpotent_group_laws(seed in any::<u64>()) {
        let alg = FreeNilAlgebra::new(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut el = || {
            let c: Vec<Coefficient> = (0..alg.dimension()).map(|_| sampling::rational(&mut rng, 3, 2)).collect();
            NilElement::from_coords(&alg, &c).unwrap()
        };
        let (x, y, z) = (el(), el(), el());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert!(x.mul(&x.neg()).unwrap().is_zero());
        prop_assert_eq!(x.scale(&rat(1, 3)).mul(&x.scale(&rat(2, 3))).unwrap(), x.clone());
        let comm = x.neg().mul(&y.neg()).unwrap().mul(&x).unwrap().mul(&y).unwrap();
        if let (Some(c), Some(a), Some(b)) = (comm.lc_val(), x.lc_val(), y.lc_val()) {
            prop_assert!(c > a.max(b));
        }
    }
}
