use fgl_forge_core::ops::{
    adams_from_idempotents, adams_op_sequence, adams_op_tower, adams_transform, adams_transform_inv, circ_compose,
    geometric_power, mult_to_add, sequence_beta, tower_beta, AdamsSequence, Coefficients, QSeries, TwistedLaurent,
};
use fgl_forge_core::Rationals;
use num_bigint::BigInt;
use num_rational::BigRational as Q;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

const LO: i64 = -8;
const HI: i64 = 8;

fn arb_sequence() -> impl Strategy<Value = AdamsSequence> {
    prop::collection::vec(-5i64..6, (HI - LO + 1) as usize)
        .prop_map(|v| AdamsSequence::new(LO, v.into_iter().map(q).collect()))
}

fn arb_element() -> impl Strategy<Value = TwistedLaurent<AdamsSequence>> {
    prop::collection::vec((-2i64..3, arb_sequence()), 1..3).prop_map(|terms| {
        terms.into_iter().fold(TwistedLaurent::zero(), |acc, (j, a)| {
            acc.add(&TwistedLaurent::monomial(j, a)).unwrap()
        })
    })
}

fn windows_nonempty(u: &TwistedLaurent<AdamsSequence>) -> bool {
    u.terms().values().all(|a| !a.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn geometric_powers_compose_multiplicatively(a in -4i64..5, b in -4i64..5) {
        let n = 10;
        let got = circ_compose(&geometric_power(a, n), &geometric_power(b, n)).unwrap();
        prop_assert_eq!(got, geometric_power(a * b, n));
    }

    #[test]
    fn transform_round_trips(c in prop::collection::vec(-20i64..21, 12)) {
        let f = QSeries::new(&Rationals, c.into_iter().map(q).collect());
        prop_assert_eq!(adams_transform_inv(&adams_transform(&f)).unwrap(), f);
    }

    #[test]
    fn composition_is_associative_and_commutative(
        a in prop::collection::vec(-6i64..7, 9),
        b in prop::collection::vec(-6i64..7, 9),
        c in prop::collection::vec(-6i64..7, 9),
    ) {
        let s = |v: Vec<i64>| QSeries::new(&Rationals, v.into_iter().map(q).collect());
        let (a, b, c) = (s(a), s(b), s(c));
        let ab = circ_compose(&a, &b).unwrap();
        prop_assert_eq!(&ab, &circ_compose(&b, &a).unwrap());
        prop_assert_eq!(
            circ_compose(&ab, &c).unwrap(),
            circ_compose(&a, &circ_compose(&b, &c).unwrap()).unwrap()
        );
    }

    #[test]
    fn twisted_product_is_associative(u in arb_element(), v in arb_element(), w in arb_element()) {
        let left = u.mul(&v).unwrap().mul(&w).unwrap();
        let right = u.mul(&v.mul(&w).unwrap()).unwrap();
        prop_assert!(windows_nonempty(&left) && windows_nonempty(&right));
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn beta_commutes_past_coefficients_by_shifting(j in -3i64..4, a in arb_sequence()) {
        let lhs = TwistedLaurent::monomial(0, a.clone()).mul(&sequence_beta(j, LO, HI)).unwrap();
        let rhs = TwistedLaurent::monomial(j, a.shift(j));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn psi_is_a_sum_of_idempotents(k in -5i64..6) {
        prop_assume!(k != 0);
        prop_assert_eq!(adams_from_idempotents(k, LO, HI).unwrap(), adams_op_sequence(k, LO, HI).unwrap());
    }

    #[test]
    fn tower_to_sequence_is_multiplicative(k in prop::sample::select(vec![-3i64, -1, 2, 3]), l in prop::sample::select(vec![-2i64, 1, 2, 5]), i in 0i64..3, j in 0i64..3) {
        let (depth, n) = (4, 8);
        let u = TwistedLaurent::monomial(0, adams_op_tower(k, depth, n, Coefficients::Rationals).unwrap())
            .mul(&tower_beta(i, depth, n)).unwrap();
        let v = TwistedLaurent::monomial(0, adams_op_tower(l, depth, n, Coefficients::Rationals).unwrap())
            .mul(&tower_beta(j, depth, n)).unwrap();
        let lhs = mult_to_add(&u.mul(&v).unwrap()).unwrap();
        let rhs = mult_to_add(&u).unwrap().mul(&mult_to_add(&v).unwrap()).unwrap();
        prop_assert!(windows_nonempty(&lhs) && windows_nonempty(&rhs));
        prop_assert!(lhs.agrees_with(&rhs));
    }
}

#[test]
fn integral_psi_needs_a_unit() {
    assert!(adams_op_tower(1, 3, 6, Coefficients::Integers).unwrap().is_integral());
    assert!(adams_op_tower(2, 3, 6, Coefficients::Integers).is_err());
    assert!(adams_op_tower(2, 3, 6, Coefficients::Rationals).is_ok());
}
