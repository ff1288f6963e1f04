use valgroups::compgroup::{Orientation, GA_ORIENTATION};
use valgroups::error::LawError;
use valgroups::laws::{
    builtin_models, check_law, model_by_name, replay, AffineModel, CompositionModel, Law, NilModel,
    Outcome, ProductModel, Verdict, ALL_LAWS,
};

#[test]
fn d6_on_compgroup() {
    let model = CompositionModel {
        order: 10,
        orientation: GA_ORIENTATION,
    };
    let r = check_law(&model, Law::D6, 200, 42).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.exercised, 200);
}

#[test]
fn d1_holds_everywhere() {
    for m in builtin_models() {
        let r = m.check(Law::D1, 50, 7).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", m.name());
    }
}

#[test]
fn product_fails_v5_on_pure_pairs() {
    let r = check_law(&ProductModel, "V5".parse().unwrap(), 100, 3).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let c = r.counterexample.as_ref().unwrap();
    assert_eq!(c.elements.len(), 2);
    let pure_first = |s: &str| s.ends_with(", 0)") && !s.starts_with("(0,");
    let pure_second = |s: &str| s.starts_with("(0, ") && !s.ends_with(", 0)");
    let (a, b) = (&c.elements[0], &c.elements[1]);
    assert!(
        (pure_first(a) && pure_second(b)) || (pure_second(a) && pure_first(b)),
        "{a} {b}"
    );
    match replay(&ProductModel, Law::D5, r.seed, c.sample) {
        Outcome::Violated(els) => assert_eq!(els.len(), 2),
        other => panic!("replay gave {other:?}"),
    }
    for law in [Law::D1, Law::D2, Law::D3, Law::D4] {
        assert_eq!(
            check_law(&ProductModel, law, 100, 3).unwrap().verdict,
            Verdict::Pass
        );
    }
}

#[test]
fn reports_are_deterministic() {
    let m = model_by_name("derivations").unwrap();
    let a = m.check(Law::NearAbelian, 30, 11).unwrap();
    let b = m.check(Law::NearAbelian, 30, 11).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn capability_checks() {
    match check_law(&AffineModel, Law::GA, 10, 0) {
        Err(LawError::NotApplicable(law, model)) => {
            assert_eq!((law.as_str(), model.as_str()), ("GA", "affine"));
        }
        other => panic!("{other:?}"),
    }
    assert!(check_law(&AffineModel, Law::D7, 10, 0).is_ok());
    assert!(check_law(&NilModel::new(2, 2), Law::GOG3, 10, 0).is_err());
}

#[test]
fn affine_has_torsion() {
    let r = check_law(&AffineModel, Law::TorsionFree, 50, 1).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let w = &r.counterexample.unwrap().elements[0];
    assert!(w.starts_with("(-1, "), "{w}");
}

#[test]
fn nilpotent_laws() {
    let m = NilModel::new(2, 3);
    for law in [
        Law::D1,
        Law::D2,
        Law::D3,
        Law::D4,
        Law::D6,
        Law::D7,
        Law::D9,
        Law::NearAbelian,
    ] {
        assert_eq!(
            check_law(&m, law, 60, 5).unwrap().verdict,
            Verdict::Pass,
            "{law}"
        );
    }
    assert_eq!(
        check_law(&m, Law::D5, 60, 5).unwrap().verdict,
        Verdict::Fail
    );
    let np = model_by_name("nil-product").unwrap();
    assert_eq!(np.check(Law::D5, 60, 5).unwrap().verdict, Verdict::Fail);
}

#[test]
fn growth_axiom_depends_on_orientation() {
    let direct = CompositionModel {
        order: 8,
        orientation: Orientation::Direct,
    };
    let inverse = CompositionModel {
        order: 8,
        orientation: GA_ORIENTATION,
    };
    assert_eq!(
        check_law(&direct, Law::GA, 60, 2).unwrap().verdict,
        Verdict::Fail
    );
    assert_eq!(
        check_law(&inverse, Law::GA, 60, 2).unwrap().verdict,
        Verdict::Pass
    );
}

#[test]
fn law_names_parse() {
    for law in ALL_LAWS {
        assert_eq!(law.id().parse::<Law>().unwrap(), law);
    }
    assert!(matches!(
        "nope".parse::<Law>(),
        Err(LawError::UnknownLaw(_))
    ));
}
