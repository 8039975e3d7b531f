use fgl_forge_core::expr::{parse_expression, Expr, Pos};
use fgl_forge_core::fgl::FormalGroupLaw;
use fgl_forge_core::json::{
    element_from_json, element_to_json, fgl_from_json, fgl_to_json, ops_from_json, ops_to_json, ring_from_name,
    series_from_json, series_to_json,
};
use fgl_forge_core::ops::{adams_op_tower, sequence_beta, tower_beta, Coefficients, OpsElement, TwistedLaurent};
use fgl_forge_core::series::TruncatedSeries1;
use fgl_forge_core::{CoefficientRing, Error, Ring, RingElement};
use num_bigint::BigInt;
use proptest::prelude::*;

fn var(name: &str) -> Expr {
    Expr::Var(name.into(), Pos { line: 1, column: 1 })
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-30i64..31).prop_map(|n| Expr::Int(BigInt::from(n))),
        (-9i64..10, 2i64..7).prop_map(|(n, d)| Expr::Rat(n.into(), d.into())),
        Just(var("beta")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (-3i64..4).prop_map(|e| Expr::Pow(Box::new(var("beta")), e)),
            (inner, 0i64..3).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

fn laurent_q() -> CoefficientRing {
    CoefficientRing::laurent_rationals("beta")
}

fn arb_ring() -> impl Strategy<Value = CoefficientRing> {
    prop::sample::select(vec!["Z", "Q", "Z/12", "F5", "Z_(3)", "Q[beta]"]).prop_map(|n| ring_from_name(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_is_a_fixed_point_of_parsing(e in arb_expr()) {
        let printed = e.to_string();
        let reparsed = Expr::parse(&printed).unwrap();
        prop_assert_eq!(reparsed.to_string(), printed.clone());
        let r = laurent_q();
        prop_assert_eq!(reparsed.eval(&r).unwrap(), e.eval(&r).unwrap());
    }

    #[test]
    fn ring_format_reparses(e in arb_expr()) {
        let r = laurent_q();
        let v = e.eval(&r).unwrap();
        prop_assert_eq!(parse_expression(&r.format(&v), &r).unwrap(), v);
    }

    #[test]
    fn elements_round_trip(ring in arb_ring(), n in -50i64..51) {
        let value = ring.from_i64(n);
        let e = RingElement { ring: ring.clone(), value };
        prop_assert_eq!(element_from_json(&element_to_json(&e)).unwrap(), e);
    }

    #[test]
    fn series_round_trip(ring in arb_ring(), cs in prop::collection::vec(-9i64..10, 1..8)) {
        let s = TruncatedSeries1::new(&ring, cs.iter().map(|&c| ring.from_i64(c)).collect());
        let back: TruncatedSeries1<CoefficientRing> = series_from_json(&series_to_json(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn ops_round_trip(j in -2i64..3, k in 2i64..4, lo in -6i64..0, hi in 0i64..6) {
        let seq = OpsElement::Sequence(sequence_beta(j, lo, hi));
        prop_assert_eq!(ops_from_json(&ops_to_json(&seq)).unwrap(), seq);
        let t = TwistedLaurent::monomial(0, adams_op_tower(k, 2, 5, Coefficients::Rationals).unwrap())
            .mul(&tower_beta(j.abs(), 2, 5))
            .unwrap();
        let tower = OpsElement::Tower(t);
        prop_assert_eq!(ops_from_json(&ops_to_json(&tower)).unwrap(), tower);
    }
}

#[test]
fn laws_round_trip() {
    for name in ["Z", "Q[beta]", "F5"] {
        let r = ring_from_name(name).unwrap();
        let f = FormalGroupLaw::additive(&r, 6);
        let back: FormalGroupLaw<CoefficientRing> = fgl_from_json(&fgl_to_json(&f)).unwrap();
        assert!(back.body().agrees_with(f.body()));
    }
    let r = ring_from_name("Q[beta]").unwrap();
    let f = FormalGroupLaw::multiplicative(&r, 7).unwrap();
    let j = fgl_to_json(&f);
    let back: FormalGroupLaw<CoefficientRing> = fgl_from_json(&j).unwrap();
    assert!(back.body().agrees_with(f.body()));
    assert_eq!(fgl_to_json(&back), j);
}

#[test]
fn syntax_errors_carry_positions() {
    match Expr::parse("1 +\n  * beta") {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("expected a syntax error, got {other:?}"),
    }
    assert!(parse_expression("gamma", &laurent_q()).is_err());
    assert!(parse_expression("beta^(1/2)", &laurent_q()).is_err());
}
