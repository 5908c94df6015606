use logser_core::quadrature::{difference_vector, pi_arctan};
use logser_core::rational::int;
use logser_core::{
    decomposition_check, divisor_relations, evaluate, express_in_basis, integral_series_check,
    linear_combine, ln_rational_vector, ln_vector, make_vector, parse_rational, pi_estimate,
    spanning_basis, EvalConfig, Evaluator, Method, SeriesError,
};

fn parse(coeffs: &[&str]) -> logser_core::CoefficientVector {
    make_vector(
        coeffs.len(),
        coeffs.iter().map(|c| parse_rational(c).unwrap()).collect(),
    )
    .unwrap()
}

#[test]
fn ln_of_rationals_through_both_routes() {
    for (m, l) in [(4u64, 3u64), (2, 9), (10, 7), (1, 5)] {
        let v = ln_rational_vector(m, l).unwrap();
        let want = (m as f64).ln() - (l as f64).ln();
        let acc = evaluate(&v, 1e-10, Method::Accelerated).unwrap();
        assert!((acc.value - want).abs() <= 1e-10, "{m}/{l}");
        let raw = evaluate(&v, 1e-5, Method::Raw).unwrap();
        assert!(!raw.bound_is_heuristic);
        assert!((raw.value - want).abs() <= raw.error_bound, "{m}/{l}");
    }
}

#[test]
fn unbalanced_vectors_are_rejected() {
    let err = make_vector(3, vec![int(1), int(1), int(1)]).unwrap_err();
    assert!(matches!(err, SeriesError::UnbalancedCoefficients { .. }));
    assert!(err.to_string().contains("sum to zero"));
}

#[test]
fn budget_is_enforced() {
    let ev = Evaluator::new(EvalConfig {
        block_budget: 500,
        ..EvalConfig::default()
    });
    let v = ln_vector(2).unwrap();
    assert!(matches!(
        ev.evaluate(&v, 1e-9, Method::Accelerated),
        Err(SeriesError::BudgetExceeded { .. })
    ));
    assert!(matches!(
        ev.partial_sum_exact(&v, 1000),
        Err(SeriesError::BudgetExceeded { .. })
    ));
    assert!(ev.partial_sum_exact(&v, 250).is_ok());
}

#[test]
fn linear_combination_of_values() {
    // ln 6 = ln 2 + ln 3 once both are lifted to modulus 6
    let ln6 = ln_vector(6).unwrap();
    let ln2 = logser_core::lift(&ln_vector(2).unwrap(), 3).unwrap();
    let ln3 = logser_core::lift(&ln_vector(3).unwrap(), 2).unwrap();
    let diff = linear_combine(&[(int(1), &ln6), (int(-1), &ln2), (int(-1), &ln3)]).unwrap();
    assert!(!diff.is_zero());
    let r = evaluate(&diff, 1e-10, Method::Accelerated).unwrap();
    assert!(r.value.abs() <= 1e-10);
}

#[test]
fn spanning_basis_reconstructs() {
    let v = parse(&["1/2", "-3", "7/3", "0", "1/6"]);
    let coords = express_in_basis(&v);
    let basis = spanning_basis(5).unwrap();
    let terms: Vec<_> = coords.iter().cloned().zip(basis.iter()).collect();
    assert_eq!(linear_combine(&terms).unwrap(), v);
}

#[test]
fn pi_routes() {
    assert!((pi_estimate(1e-9).unwrap() - std::f64::consts::PI).abs() <= 1e-8);
    assert!((pi_arctan() - std::f64::consts::PI).abs() <= 1e-15);
    let v = difference_vector(3, 1).unwrap();
    assert_eq!(v, parse(&["1", "-1", "0"]));
}

#[test]
fn integral_route_matches_series() {
    let c = integral_series_check(6, 4, 1e-9).unwrap();
    assert!(c.passed(), "{c:?}");
    assert!((decomposition_check(9, 1e-10).unwrap() - 9f64.ln()).abs() <= 1e-8);
}

#[test]
fn relations_for_six_and_nine() {
    for t in [6u64, 9] {
        let rel = divisor_relations(t).unwrap();
        assert!(!rel.witnesses.is_empty(), "T={t}");
        for w in &rel.witnesses {
            let (is_zero, r) = w.check.as_ref().unwrap();
            assert!(
                *is_zero && r.value.abs() <= r.error_bound,
                "T={t} {}",
                w.vector
            );
        }
    }
    assert!(matches!(
        divisor_relations(7),
        Err(SeriesError::NotComposite(7))
    ));
}
