//! The acceptance suite: one line per criterion, nonzero exit on failure.
//! Runs as part of `cargo test`; use `cargo test --test acceptance` to run
//! it alone.

mod oracles;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use valgroups::compgroup::{Parabolic, Val};
use valgroups::derivations::{DerivationElement, EXP_ORIENTATION};
use valgroups::laws::{
    model_by_name, parse_matrix, run_matrix, Verdict, EXPECTED_MATRIX, MATRIX_SAMPLES, MATRIX_SEED,
};
use valgroups::nilpotent::{solve_nilpotent, FreeNilAlgebra, NilElement};
use valgroups::sampling;
use valgroups::series::{int, rat, Coefficient, TruncatedSeries};
use valgroups::solver::{monotonicity_probe, solve_parabolic, uniqueness_probe, SolveTrace};
use valgroups::terms::{eval, parse_term, SymbolTable, Term};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = start.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

fn constants(rng: &mut ChaCha8Rng, order: u32) -> (Vec<String>, SymbolTable<Parabolic>) {
    let names = vec!["g1".to_string(), "g2".to_string()];
    let mut tab = SymbolTable::new();
    for n in &names {
        tab.bind(n, sampling::parabolic(rng, order, 4)).unwrap();
    }
    (names, tab)
}

fn composition() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..500 {
        let f = sampling::series_from(&mut rng, 0, 12, 6);
        let s = sampling::parabolic(&mut rng, 12, 4);
        let a = f.taylor_compose(s.series()).map_err(|e| e.to_string())?;
        let b = f.substitute(s.series()).map_err(|e| e.to_string())?;
        ensure(a.eq_up_to(&b, 12), || {
            format!("pair {i}: {f} at {s}: {a} vs {b}")
        })?;
    }
    within(start, Duration::from_secs(10), "500 pairs")?;
    Ok(format!("500 pairs at N = 12 in {:?}", start.elapsed()))
}

fn inverse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        let f = sampling::parabolic(&mut rng, 12, 6);
        let g = f.inverse();
        ensure(
            f.compose(&g).is_identity() && g.compose(&f).is_identity(),
            || format!("sample {i}: {f} has bad inverse {g}"),
        )?;
    }
    let inv = Parabolic::parse("t + t^2", 6).unwrap().inverse();
    let catalan = oracles::signed_catalan(6);
    for (k, c) in catalan.iter().enumerate() {
        let got = inv.series().coeff(k as u32 + 1);
        ensure(got == int(*c), || {
            format!("inverse(t + t^2) at t^{}: {got} vs {c}", k + 1)
        })?;
    }
    Ok(format!("200 inverses at N = 12; inverse(t + t^2) = {inv}"))
}

fn law_matrix() -> Check {
    let start = Instant::now();
    let expected = parse_matrix(EXPECTED_MATRIX)?;
    let rows = run_matrix(MATRIX_SAMPLES, MATRIX_SEED);
    let lookup: HashMap<(String, String), _> = rows
        .iter()
        .map(|(e, r)| ((e.model.clone(), e.law.clone()), (e.expected.clone(), r)))
        .collect();
    ensure(expected.len() == rows.len(), || {
        format!(
            "fixture has {} rows, run has {}",
            expected.len(),
            rows.len()
        )
    })?;
    for e in &expected {
        let (got, _) = lookup
            .get(&(e.model.clone(), e.law.clone()))
            .ok_or_else(|| format!("fixture row {} {} not run", e.model, e.law))?;
        ensure(*got == e.expected, || {
            format!("{} {}: expected {}, got {got}", e.model, e.law, e.expected)
        })?;
    }
    let verdict = |m: &str, l: &str| lookup[&(m.to_string(), l.to_string())].0.clone();
    let core = [
        "D1",
        "D2",
        "D3",
        "D4",
        "D5",
        "D6",
        "near-abelian",
        "D7",
        "D8",
        "D9",
        "similarity-equivalence",
        "near-abelian-equivalence",
    ];
    for m in ["compgroup", "derivations"] {
        for l in core {
            ensure(verdict(m, l) == "pass", || format!("{m} {l} does not pass"))?;
        }
    }
    for l in ["D1", "D2", "D3", "D4"] {
        ensure(verdict("product", l) == "pass", || {
            format!("product {l} does not pass")
        })?;
    }
    let product = model_by_name("product").unwrap();
    let report = product
        .check("V5".parse().unwrap(), MATRIX_SAMPLES, MATRIX_SEED)
        .map_err(|e| e.to_string())?;
    ensure(report.verdict == Verdict::Fail, || {
        "product V5 does not fail".into()
    })?;
    ensure(product.replays(&report), || {
        "product V5 counterexample does not replay".into()
    })?;
    for l in ["D1", "D2", "D3", "D4", "D5", "D6"] {
        ensure(verdict("affine", l) == "pass", || {
            format!("affine {l} does not pass")
        })?;
    }
    let torsion = lookup[&("affine".to_string(), "torsion-free".to_string())]
        .1
        .as_ref()
        .and_then(|r| r.counterexample.clone())
        .ok_or("affine shows no torsion element")?;
    within(start, Duration::from_secs(60), "law matrix")?;
    let c = report.counterexample.unwrap();
    Ok(format!(
        "{} rows match in {:?}; product V5 counterexample [{}] replays; affine torsion element {}",
        expected.len(),
        start.elapsed(),
        c.elements.join(", "),
        torsion.elements[0]
    ))
}

fn residue_formula() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let order = 10;
    let (names, mut tab) = constants(&mut rng, order);
    let id = Parabolic::identity(order);
    for i in 0..100 {
        let s = sampling::regular_term(&mut rng, &names, 3, &sampling::term_exponents());
        let k = format!("k{i}");
        let at_id = eval(&s, &id, &tab).map_err(|e| e.to_string())?;
        tab.bind(&k, at_id.inverse()).unwrap();
        let t = Term::mul(Term::constant(k), s);
        let alpha = t.alpha();
        let f = sampling::parabolic(&mut rng, order, 5);
        let tf = eval(&t, &f, &tab).map_err(|e| e.to_string())?;
        ensure(tf.res() == f.res().scale(&alpha), || {
            format!("regular {t} at {f}: res {} vs alpha {alpha}", tf.res())
        })?;
        let singular = Term::mul(t.clone(), Term::pow(Term::Y, -alpha));
        let sf = eval(&singular, &f, &tab).map_err(|e| e.to_string())?;
        let drops = match (sf.val(), f.val()) {
            (Val::Trivial, _) => true,
            (Val::Exponent(a), Val::Exponent(b)) => a > b,
            _ => false,
        };
        ensure(drops, || format!("singular {singular} at {f} gives {sf}"))?;
    }
    Ok("100 regular and 100 singular terms".into())
}

fn check_trace(
    t: &Term,
    tab: &SymbolTable<Parabolic>,
    tr: &SolveTrace<Parabolic>,
) -> Result<(), String> {
    let at = eval(t, &tr.solution, tab).map_err(|e| e.to_string())?;
    ensure(at.is_identity(), || format!("{t}: t(solution) = {at}"))?;
    ensure(tr.steps.windows(2).all(|w| w[0].rho < w[1].rho), || {
        format!("{t}: trace valuations not increasing")
    })?;
    ensure(tr.iterations <= 11, || {
        format!("{t}: {} iterations", tr.iterations)
    })
}

fn solved_instances() -> Result<Vec<(Term, SymbolTable<Parabolic>, SolveTrace<Parabolic>)>, String>
{
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();
    for _ in 0..50 {
        let (names, tab) = constants(&mut rng, 12);
        let t = sampling::regular_term(&mut rng, &names, 3, &sampling::term_exponents());
        let tr = solve_parabolic(&t, &tab, 12).map_err(|e| format!("{t}: {e}"))?;
        check_trace(&t, &tab, &tr)?;
        out.push((t, tab, tr));
    }
    Ok(out)
}

fn solver() -> Check {
    let n = solved_instances()?.len();
    let mut tab = SymbolTable::new();
    tab.bind("g", Parabolic::parse("t + t^2", 12).unwrap())
        .unwrap();
    let t = parse_term("y * y * inv(g)").unwrap();
    let tr = solve_parabolic(&t, &tab, 12).map_err(|e| e.to_string())?;
    check_trace(&t, &tab, &tr)?;
    let oracle = oracles::sqrt_of_t_plus_t2(8);
    for k in 1..=8u32 {
        let got = tr.solution.series().coeff(k);
        ensure(got == oracle[k as usize], || {
            format!("square root at t^{k}: {got} vs {}", oracle[k as usize])
        })?;
    }
    let firsts: Vec<Coefficient> = tr
        .steps
        .iter()
        .take(2)
        .map(|s| s.correction.coeff())
        .collect();
    ensure(firsts == vec![rat(1, 2), rat(-1, 4)], || {
        format!("leading corrections {firsts:?}")
    })?;
    Ok(format!(
        "{n} terms at N = 12; square root {}",
        tr.solution.series().truncate(8)
    ))
}

fn uniqueness_monotonicity() -> Check {
    let instances = solved_instances()?;
    for (i, (t, tab, tr)) in instances.iter().enumerate() {
        let r = uniqueness_probe(t, tab, &tr.solution, 100, 600 + i as u64)
            .map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), || {
            format!("{t}: {} violations", r.violations.len())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..20 {
        let (names, tab) = constants(&mut rng, 10);
        let t = sampling::regular_term(&mut rng, &names, 3, &sampling::integer_term_exponents());
        let r = monotonicity_probe(&t, &tab, 10, 100, 700 + i).map_err(|e| e.to_string())?;
        ensure(
            r.violations.is_empty() && r.sign_violations.is_empty(),
            || format!("{t}: monotonicity violated"),
        )?;
    }
    Ok(format!(
        "{} instances x 100 perturbations; 20 terms x 100 pairs in the {} orientation",
        instances.len(),
        valgroups::GA_ORIENTATION.name()
    ))
}

fn exp_log_bch() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let u = sampling::derivation(&mut rng, 10, 4);
        ensure(DerivationElement::log(&u.exp()) == u, || {
            format!("log(exp({u})) differs, sample {i}")
        })?;
        let f = sampling::parabolic(&mut rng, 12, 6);
        ensure(DerivationElement::log(&f).exp() == f, || {
            format!("exp(log({f})) differs")
        })?;
    }
    let one = DerivationElement::parse("1", 8).unwrap();
    let t = DerivationElement::parse("t", 8).unwrap();
    let want = TruncatedSeries::from_terms(
        [
            (0, rat(1, 1)),
            (1, rat(1, 1)),
            (2, rat(1, 2)),
            (3, rat(1, 6)),
        ],
        8,
    );
    let b = one.bch(&t);
    ensure(b.series().eq_up_to(&want, 3), || format!("bch(1, t) = {b}"))?;

    // the calibrated product, and the BCH series from the free Lie algebra
    let alg = FreeNilAlgebra::new(2, 5).unwrap();
    let x = NilElement::generator(&alg, 0)
        .mul(&NilElement::generator(&alg, 1))
        .unwrap();
    let basis: Vec<_> = alg
        .names()
        .iter()
        .map(|n| oracles::parse_bracket(n))
        .collect();
    for i in 0..100 {
        let u = sampling::derivation(&mut rng, 10, 3);
        let w = sampling::derivation(&mut rng, 10, 3);
        let lhs = u.bch(&w).exp();
        ensure(lhs == EXP_ORIENTATION.product(&u.exp(), &w.exp()), || {
            format!("homomorphism fails on pair {i}")
        })?;
        // with v(u), v(w) >= 1 a weight-n bracket has valuation >= 2n - 1,
        // so class 5 determines the product through t^8
        let u = DerivationElement::new(sampling::series_from(&mut rng, 1, 8, 3));
        let vw = rng.gen_range(1..=3);
        let w = DerivationElement::new(sampling::series_from(&mut rng, vw, 8, 3));
        let mut series = DerivationElement::zero(8);
        for (k, b) in basis.iter().enumerate() {
            let c = x.coord(k);
            if !c.is_zero() {
                series = &series + &oracles::eval_bracket(b, &[u.clone(), w.clone()]).scale(&c);
            }
        }
        ensure(u.bch(&w) == series, || {
            format!("bch({u}, {w}) differs from the Lie series")
        })?;
    }
    for i in 0..100 {
        let f = sampling::parabolic(&mut rng, 12, 5);
        let g = sampling::parabolic(&mut rng, 12, 5);
        let lhs = DerivationElement::log(&f.compose(&g));
        let rhs = DerivationElement::log(&g).bch(&DerivationElement::log(&f));
        ensure(lhs == rhs, || format!("log(f∘g) differs on pair {i}"))?;
    }
    Ok(format!(
        "round trips at N = 12; bch(1, t) = {}",
        b.series().truncate(3)
    ))
}

fn decomposition() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let f = sampling::parabolic(&mut rng, 10, 5);
        let d = f.decompose();
        let back = Parabolic::recompose(&d, 10);
        ensure(back == f, || {
            format!("sample {i}: recompose gives {back}, not {f}")
        })?;
        ensure(back.decompose() == d, || {
            format!("sample {i}: decomposition not idempotent")
        })?;
    }
    Ok("100 decompositions at N = 10".into())
}

fn nilpotent() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let heis = FreeNilAlgebra::new(2, 2).unwrap();
    let names = vec!["a".to_string(), "b".to_string()];
    for i in 0..20 {
        let mut tab = SymbolTable::new();
        let mut consts = HashMap::new();
        for n in &names {
            let c: Vec<Coefficient> = (0..3).map(|_| sampling::rational(&mut rng, 4, 3)).collect();
            tab.bind(n, NilElement::from_coords(&heis, &c).unwrap())
                .unwrap();
            consts.insert(
                n.clone(),
                oracles::Heis([c[0].clone(), c[1].clone(), c[2].clone()]),
            );
        }
        let t = sampling::regular_term(&mut rng, &names, 3, &sampling::term_exponents());
        let tr = solve_nilpotent(&t, &tab, &heis).map_err(|e| format!("{t}: {e}"))?;
        let want = oracles::heis_solve(&t, &consts);
        ensure(tr.solution.coords() == want.0.to_vec(), || {
            format!(
                "instance {i}, {t}: solver {} vs oracle {:?}",
                tr.solution, want.0
            )
        })?;
    }
    let alg = FreeNilAlgebra::new(2, 4).unwrap();
    let sample = |rng: &mut ChaCha8Rng| {
        let c: Vec<Coefficient> = (0..alg.dimension())
            .map(|_| sampling::rational(rng, 3, 2))
            .collect();
        NilElement::from_coords(&alg, &c).unwrap()
    };
    for i in 0..200 {
        let (a, b, c) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        ensure(l == r, || format!("associativity fails on triple {i}"))?;
    }
    for k in 1..=3usize {
        for c in 1..=5usize {
            let dims = FreeNilAlgebra::new(k, c).unwrap().dimensions_by_weight();
            let witt: Vec<usize> = (1..=c)
                .map(|n| oracles::witt(k as u64, n as u64) as usize)
                .collect();
            ensure(dims == witt, || {
                format!("k = {k}, c = {c}: {dims:?} vs {witt:?}")
            })?;
        }
    }
    Ok("20 Heisenberg instances, 200 triples at (2, 4), Witt dimensions k <= 3, c <= 5".into())
}

fn main() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Check); 9] = [
        ("composition", composition),
        ("inverse", inverse),
        ("law matrix", law_matrix),
        ("residue formula", residue_formula),
        ("solver", solver),
        ("uniqueness and monotonicity", uniqueness_monotonicity),
        ("exp/log and BCH", exp_log_bch),
        ("decomposition", decomposition),
        ("nilpotent", nilpotent),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!(
                "criterion {} PASS {name} ({:.1?}): {detail}",
                i + 1,
                t.elapsed()
            ),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({:.1?}): {e}", i + 1, t.elapsed());
            }
        }
    }
    let total = start.elapsed();
    if total < Duration::from_secs(300) {
        println!("criterion 10 PASS runtime: whole suite in {total:.1?}");
    } else {
        failed += 1;
        println!("criterion 10 FAIL runtime: whole suite in {total:.1?}, limit 300s");
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
