use fgl_forge_core::hopf::{
    dual_compose, twisted_ring_multiply, twisted_table_multiply, Coaction, DualFunctional, GroupoidAlgebroid,
    HopfAlgebroid, ModuleElement, TwistedElement,
};
use fgl_forge_core::lazard::LazardAlgebroid;
use fgl_forge_core::Ring;
use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

type Matrix = Vec<Vec<Q>>;

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m, k) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| (0..k).map(|j| (0..m).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
        .collect()
}

fn diag(v: &[Q]) -> Matrix {
    (0..v.len())
        .map(|i| (0..v.len()).map(|j| if i == j { v[i].clone() } else { Q::zero() }).collect())
        .collect()
}

fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec((-4i64..5).prop_map(q), n), n)
}

fn groupoid(n: usize) -> HopfAlgebroid {
    HopfAlgebroid::Groupoid(GroupoidAlgebroid::new(n).unwrap())
}

/// `X = objects × colors`; an arrow `o → j` carries `(o, c)` to `(j, c)`.
fn colored(n: usize, colors: usize) -> (Vec<usize>, Coaction) {
    let size = n * colors;
    let point = |o: usize, c: usize| c * n + o;
    let anchor: Vec<usize> = (0..size).map(|x| x % n).collect();
    let table = (0..size)
        .map(|y| {
            (0..size)
                .map(|x| (0..n).map(|j| if point(j, x / n) == y { q(1) } else { Q::zero() }).collect())
                .collect()
        })
        .collect();
    (anchor.clone(), Coaction::Groupoid { anchor, table })
}

/// Embeds a table over `X` into `X × X` matrices: row `x` pairs with arrows
/// out of `anchor(x)` landing on points of the same color.
fn embed(n: usize, table: &[Vec<Q>]) -> Matrix {
    let size = table.len();
    (0..size)
        .map(|x| {
            (0..size)
                .map(|y| if x / n == y / n { table[x][y % n].clone() } else { Q::zero() })
                .collect()
        })
        .collect()
}

fn lift(n: usize, phi: &Matrix, colors: usize) -> Matrix {
    let size = n * colors;
    (0..size)
        .map(|x| (0..size).map(|y| if x / n == y / n { phi[x % n][y % n].clone() } else { Q::zero() }).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groupoid_composition_is_matrix_product(a in arb_matrix(3), b in arb_matrix(3), c in arb_matrix(3)) {
        let h = groupoid(3);
        let f = |m: &Matrix| DualFunctional::Groupoid { matrix: m.clone() };
        let ab = dual_compose(&h, &f(&a), &f(&b)).unwrap();
        prop_assert_eq!(&ab, &f(&matmul(&a, &b)));
        let left = dual_compose(&h, &ab, &f(&c)).unwrap();
        let right = dual_compose(&h, &f(&a), &dual_compose(&h, &f(&b), &f(&c)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn colored_twisted_product_matches_oracle(
        phi in arb_matrix(2),
        psi in arb_matrix(2),
        u in prop::collection::vec((-3i64..4).prop_map(q), 6),
        v in prop::collection::vec((-3i64..4).prop_map(q), 6),
    ) {
        let (n, colors) = (2, 3);
        let h = groupoid(n);
        let (_, rho) = colored(n, colors);
        let f = |m: &Matrix| DualFunctional::Groupoid { matrix: m.clone() };
        let got = twisted_ring_multiply(
            &h, &rho, &ModuleElement::Groupoid(u.clone()), &f(&phi), &ModuleElement::Groupoid(v.clone()), &f(&psi),
        ).unwrap();
        let TwistedElement::Groupoid(table) = got else { panic!("wrong flavor") };
        let oracle = matmul(&matmul(&matmul(&diag(&u), &lift(n, &phi, colors)), &diag(&v)), &lift(n, &psi, colors));
        prop_assert_eq!(embed(n, &table), oracle);
    }

    #[test]
    fn colored_tables_multiply_associatively(
        a in prop::collection::vec(prop::collection::vec((-3i64..4).prop_map(q), 2), 6),
        b in prop::collection::vec(prop::collection::vec((-3i64..4).prop_map(q), 2), 6),
        c in prop::collection::vec(prop::collection::vec((-3i64..4).prop_map(q), 2), 6),
    ) {
        let h = groupoid(2);
        let (_, rho) = colored(2, 3);
        let ab = twisted_table_multiply(&h, &rho, &a, &b).unwrap();
        let left = twisted_table_multiply(&h, &rho, &ab, &c).unwrap();
        let bc = twisted_table_multiply(&h, &rho, &b, &c).unwrap();
        let right = twisted_table_multiply(&h, &rho, &a, &bc).unwrap();
        prop_assert_eq!(embed(2, &ab), matmul(&embed(2, &a), &embed(2, &b)));
        prop_assert_eq!(left, right);
    }
}

#[test]
fn lazard_composition_is_associative() {
    let l = LazardAlgebroid::new(3);
    let h = HopfAlgebroid::Lazard(l.clone());
    let base = l.base();
    let monos = l.b_monomials_up_to(3);
    assert!(monos.len() > 3);
    let combo = |i: usize, j: usize, c: i64| {
        let (DualFunctional::Lazard { values: a, degree, bound }, DualFunctional::Lazard { values: b, .. }) =
            (DualFunctional::dual_basis(&l, &monos[i]), DualFunctional::dual_basis(&l, &monos[j]))
        else {
            unreachable!()
        };
        let values = a
            .iter()
            .map(|(m, v)| (m.clone(), base.add(v, &base.scale(&b[m], &q(c)))))
            .collect();
        DualFunctional::Lazard { degree, bound, values }
    };
    let mut checked = 0;
    for (i, j, k) in [(0, 1, 2), (1, 2, 3), (2, 0, 1), (3, 1, 0), (1, 1, 2)] {
        let f = combo(i, j, 2);
        let g = combo(j, k, -1);
        let e = combo(k, i, 3);
        let left = dual_compose(&h, &dual_compose(&h, &f, &g).unwrap(), &e).unwrap();
        let right = dual_compose(&h, &f, &dual_compose(&h, &g, &e).unwrap()).unwrap();
        let DualFunctional::Lazard { values, .. } = &left else { unreachable!() };
        assert!(!values.is_empty());
        assert!(left.agrees_with(&right), "({i}, {j}, {k})");
        checked += 1;
    }
    assert_eq!(checked, 5);
    let unit = DualFunctional::unit(&h);
    let f = combo(1, 2, 5);
    assert!(dual_compose(&h, &unit, &f).unwrap().agrees_with(&f));
    assert!(dual_compose(&h, &f, &unit).unwrap().agrees_with(&f));
}
