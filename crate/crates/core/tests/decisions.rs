use sofic_core::catalog;
use sofic_core::decision::{decide_factor, decide_homomorphism, Budget, Caps, FactorAnswer, HomAnswer};
use sofic_core::SoficError;

fn caps(h: usize) -> Caps {
    Caps { k: None, n: None, c: 1, h: Some(h) }
}

#[test]
fn full_shift_maps_into_golden_mean() {
    let rep = decide_homomorphism(&catalog::full_shift(2), &catalog::golden_mean(), &caps(1), &Budget::unlimited()).unwrap();
    assert!(matches!(rep.answer, HomAnswer::Yes { .. }));
    assert!(rep.truncated());
}

#[test]
fn golden_mean_has_no_map_into_ne3() {
    let rep = decide_homomorphism(&catalog::golden_mean(), &catalog::no_repeat3(), &Caps::default(), &Budget::unlimited())
        .unwrap();
    assert_eq!(rep.answer, HomAnswer::No { certificate: "period-1 obstruction".into() });
}

#[test]
fn full_shift_factors_onto_golden_mean() {
    let rep = decide_factor(&catalog::full_shift(2), &catalog::golden_mean(), &caps(1), &Budget::unlimited()).unwrap();
    assert!(matches!(rep.answer, FactorAnswer::Yes { .. }));
    assert_eq!(rep.oracle_meets_nonderived, Some(true));
}

#[test]
fn factor_needs_larger_entropy() {
    let gm = catalog::golden_mean();
    let err = decide_factor(&gm, &gm, &caps(1), &Budget::unlimited()).unwrap_err();
    assert!(matches!(err, SoficError::EntropyPrecondition), "{err:?}");
}

#[test]
fn tiny_budget_reports_resource_exceeded() {
    let rep = decide_homomorphism(&catalog::golden_mean(), &catalog::full_shift(2), &caps(2), &Budget::steps(10)).unwrap();
    assert!(matches!(rep.answer, HomAnswer::ResourceExceeded { .. }), "{:?}", rep.answer);
}
