use fgl_forge_core::expr::parse_expression;
use fgl_forge_core::fgl::FormalGroupLaw;
use fgl_forge_core::landweber::{landweber_check, v_sequence_report, LandweberInput, LandweberModule, Verdict};
use fgl_forge_core::lazard::{classify_rational, specialize, universal_fgl};
use fgl_forge_core::series::TruncatedSeries1;
use fgl_forge_core::{CoefficientRing, Ring};
use proptest::prelude::*;

const N: usize = 9;

fn laurent() -> CoefficientRing {
    CoefficientRing::laurent_integers("beta")
}

/// `x + Σ c_i β^{i-1} x^i`, homogeneous when `|x| = -1`.
fn graded_coordinate(ring: &CoefficientRing, cs: &[i64]) -> TruncatedSeries1<CoefficientRing> {
    TruncatedSeries1::from_fn(ring, N, |i| match i {
        0 => ring.zero(),
        1 => ring.one(),
        _ => parse_expression(&format!("{}*beta^{}", cs[i - 2], i - 1), ring).unwrap(),
    })
}

fn arb_coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..4, N - 1)
}

fn conjugated_multiplicative(cs: &[i64]) -> FormalGroupLaw<CoefficientRing> {
    let r = laurent();
    let f = FormalGroupLaw::multiplicative(&r, N).unwrap();
    f.change_coordinates(&graded_coordinate(&r, cs)).unwrap()
}

fn verdicts(f: FormalGroupLaw<CoefficientRing>) -> Vec<Verdict> {
    let input = LandweberInput {
        fgl: f,
        module: LandweberModule::SelfModule,
        primes: vec![2, 3],
        max_height: 2,
        precision: N,
    };
    landweber_check(&input).unwrap().primes.into_iter().map(|p| p.verdict).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn coordinate_change_gives_a_graded_law(cs in arb_coeffs()) {
        let mut g = conjugated_multiplicative(&cs);
        prop_assert!(g.check_axioms().passed());
        prop_assert!(g.grade_check(g.grading().unwrap()));
    }

    #[test]
    fn n_series_is_a_homomorphism(cs in arb_coeffs(), m in -3i64..4, n in -3i64..4) {
        let g = conjugated_multiplicative(&cs);
        let sum = g.apply(&g.n_series(m), &g.n_series(n)).unwrap();
        prop_assert!(sum.agrees_with(&g.n_series(m + n)));
        let comp = g.n_series(m).compose(&g.n_series(n)).unwrap();
        prop_assert!(comp.agrees_with(&g.n_series(m * n)));
    }

    #[test]
    fn landweber_verdict_is_coordinate_invariant(cs in arb_coeffs()) {
        let r = laurent();
        let base = verdicts(FormalGroupLaw::multiplicative(&r, N).unwrap());
        prop_assert_eq!(&base, &vec![Verdict::ExactAtHeight(1); 2]);
        prop_assert_eq!(verdicts(conjugated_multiplicative(&cs)), base);
    }

    #[test]
    fn v_n_has_degree_p_to_the_n_minus_one(cs in arb_coeffs()) {
        let g = conjugated_multiplicative(&cs);
        for p in [2u64, 3] {
            let height = if p == 2 { 3 } else { 2 };
            let r = g.ring();
            for e in v_sequence_report(&g, p, height, N).unwrap() {
                let v = g.v_coefficient(p, e.n).unwrap();
                prop_assert_eq!(&v, &e.value);
                prop_assert!(r.homogeneity(&v, g.grading().unwrap()).is_degree(p.pow(e.n) as i64 - 1));
            }
        }
    }

    #[test]
    fn inverse_and_log_agree(cs in arb_coeffs()) {
        let r = CoefficientRing::laurent_rationals("beta");
        let f = FormalGroupLaw::multiplicative(&r, N).unwrap();
        let g = f.change_coordinates(&graded_coordinate(&r, &cs)).unwrap();
        let inv = g.formal_inverse();
        prop_assert!(g.apply(&TruncatedSeries1::x(&r, N), &inv).unwrap().is_zero());
        prop_assert!(inv.agrees_with(&g.n_series(-1)));
        let log = g.log().unwrap();
        let lhs = g.body().compose_into(&log).unwrap();
        prop_assert!(lhs.agrees_with(&log.in_x().add(&log.in_y())));
    }
}

#[test]
fn universal_law_specializes_to_its_classification() {
    let u = universal_fgl(6).unwrap();
    let r = CoefficientRing::laurent_rationals("beta");
    let f = FormalGroupLaw::multiplicative(&r, 6).unwrap();
    let images = classify_rational(&f).unwrap();
    assert_eq!(images.len(), 5);
    assert_eq!(r.format(&images[0]), "1/2*beta");
    assert!(specialize(&u, &r, &images).body().agrees_with(f.body()));
}
