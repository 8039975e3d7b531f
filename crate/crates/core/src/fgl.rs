//! One-dimensional commutative formal group laws, truncated by total degree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::ring::{Degrees, Ring};
use crate::series::{TruncatedSeries1, TruncatedSeries2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FglName {
    Additive,
    Multiplicative,
    UniversalRational,
    HondaH1,
}

impl FromStr for FglName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" => Ok(FglName::Additive),
            "multiplicative" => Ok(FglName::Multiplicative),
            "universal_rational" => Ok(FglName::UniversalRational),
            "honda_h1" => Ok(FglName::HondaH1),
            _ => Err(Error::Input(format!("unknown formal group law `{s}`"))),
        }
    }
}

impl fmt::Display for FglName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FglName::Additive => "additive",
            FglName::Multiplicative => "multiplicative",
            FglName::UniversalRational => "universal_rational",
            FglName::HondaH1 => "honda_h1",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw<R: Ring> {
    body: TruncatedSeries2<R>,
    grading: Option<Degrees>,
    validated: bool,
}

/// Outcome of one axiom check. The witness is the exponent vector of the
/// first offending coefficient: `(i, j)` for unitality and symmetry,
/// `(a, b, c)` of `x^a y^b z^c` for associativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            passed: true,
            witness: None,
        }
    }

    fn fail(w: Vec<usize>) -> Self {
        AxiomCheck {
            passed: false,
            witness: Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub unitality: AxiomCheck,
    pub symmetry: AxiomCheck,
    pub associativity: AxiomCheck,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unitality.passed && self.symmetry.passed && self.associativity.passed
    }

    /// Name and witness of the first failing axiom.
    pub fn first_failure(&self) -> Option<(&'static str, &[usize])> {
        [
            ("unitality", &self.unitality),
            ("symmetry", &self.symmetry),
            ("associativity", &self.associativity),
        ]
        .into_iter()
        .find(|(_, c)| !c.passed)
        .map(|(n, c)| (n, c.witness.as_deref().unwrap_or(&[])))
    }
}

/// Axiom check of a bivariate series, without constructing an FGL.
pub fn check_axioms<R: Ring>(f: &TruncatedSeries2<R>) -> AxiomReport {
    AxiomReport {
        unitality: check_unitality(f),
        symmetry: check_symmetry(f),
        associativity: check_associativity(f),
    }
}

fn check_unitality<R: Ring>(f: &TruncatedSeries2<R>) -> AxiomCheck {
    let r = f.ring();
    let n = f.precision();
    // F(x,0) = x and F(0,y) = y, scanned by total degree
    for d in 0..=n {
        for (i, j) in [(d, 0), (0, d)] {
            let expected = if d == 1 { r.one() } else { r.zero() };
            if *f.get(i, j) != expected {
                return AxiomCheck::fail(vec![i, j]);
            }
        }
    }
    AxiomCheck::pass()
}

fn check_symmetry<R: Ring>(f: &TruncatedSeries2<R>) -> AxiomCheck {
    let n = f.precision();
    for d in 0..=n {
        for i in (0..=d).rev() {
            let j = d - i;
            if i > j && f.get(i, j) != f.get(j, i) {
                return AxiomCheck::fail(vec![i, j]);
            }
        }
    }
    AxiomCheck::pass()
}

fn check_associativity<R: Ring>(f: &TruncatedSeries2<R>) -> AxiomCheck {
    let r = f.ring();
    let n = f.precision();
    if !r.is_zero(f.get(0, 0)) {
        return AxiomCheck::fail(vec![0, 0, 0]);
    }
    let mut powers = vec![TruncatedSeries2::one(r, n)];
    for k in 1..=n {
        powers.push(powers[k - 1].mul(f));
    }
    // [x^a y^b z^c] F(F(x,y),z) = Σ_i a_{i c} [x^a y^b] F^i
    // [x^a y^b z^c] F(x,F(y,z)) = Σ_j a_{a j} [y^b z^c] F^j
    for d in 0..=n {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                let c = d - a - b;
                let mut left = r.zero();
                for (i, p) in powers.iter().enumerate().take(a + b + 1) {
                    if i + c > n {
                        break;
                    }
                    let coef = f.get(i, c);
                    if !r.is_zero(coef) {
                        left = r.add(&left, &r.mul(coef, p.get(a, b)));
                    }
                }
                let mut right = r.zero();
                for (j, p) in powers.iter().enumerate().take(b + c + 1) {
                    if a + j > n {
                        break;
                    }
                    let coef = f.get(a, j);
                    if !r.is_zero(coef) {
                        right = r.add(&right, &r.mul(coef, p.get(b, c)));
                    }
                }
                if left != right {
                    return AxiomCheck::fail(vec![a, b, c]);
                }
            }
        }
    }
    AxiomCheck::pass()
}

impl<R: Ring> FormalGroupLaw<R> {
    /// Validate `body` and wrap it.
    pub fn new(body: TruncatedSeries2<R>, grading: Option<Degrees>) -> Result<Self> {
        let report = check_axioms(&body);
        if let Some((axiom, w)) = report.first_failure() {
            return Err(Error::NotAFormalGroupLaw(format!("{axiom} fails at {w:?}")));
        }
        Ok(FormalGroupLaw {
            body,
            grading,
            validated: true,
        })
    }

    /// Wrap without validating; `validated` stays false until
    /// [`FormalGroupLaw::check_axioms`] passes.
    pub fn unchecked(body: TruncatedSeries2<R>, grading: Option<Degrees>) -> Self {
        FormalGroupLaw {
            body,
            grading,
            validated: false,
        }
    }

    /// Image of a validated law under a ring map.
    pub(crate) fn mapped(body: TruncatedSeries2<R>, validated: bool) -> Self {
        FormalGroupLaw {
            body,
            grading: None,
            validated,
        }
    }

    pub fn additive(ring: &R, precision: usize) -> Self {
        let mut body = TruncatedSeries2::zero(ring, precision);
        if precision >= 1 {
            body.set(1, 0, ring.one());
            body.set(0, 1, ring.one());
        }
        FormalGroupLaw {
            body,
            grading: Some(Degrees::new()),
            validated: true,
        }
    }

    pub fn with_grading(mut self, grading: Option<Degrees>) -> Self {
        self.grading = grading;
        self
    }

    pub fn ring(&self) -> &R {
        self.body.ring()
    }

    pub fn precision(&self) -> usize {
        self.body.precision()
    }

    pub fn body(&self) -> &TruncatedSeries2<R> {
        &self.body
    }

    pub fn grading(&self) -> Option<&Degrees> {
        self.grading.as_ref()
    }

    pub fn validated(&self) -> bool {
        self.validated
    }

    /// The coefficient `a_{ij}` of `x^i y^j`.
    pub fn coefficient(&self, i: usize, j: usize) -> &R::Elem {
        self.body.get(i, j)
    }

    pub fn check_axioms(&mut self) -> AxiomReport {
        let report = check_axioms(&self.body);
        self.validated = report.passed();
        report
    }

    pub fn truncate(&self, precision: usize) -> Self {
        FormalGroupLaw {
            body: self.body.truncate(precision),
            grading: self.grading.clone(),
            validated: self.validated,
        }
    }

    /// `F(f(x), g(x))`.
    pub fn apply(&self, f: &TruncatedSeries1<R>, g: &TruncatedSeries1<R>) -> Result<TruncatedSeries1<R>> {
        self.body.evaluate(f, g)
    }

    /// The formal inverse `ι` with `F(x, ι(x)) = 0`.
    pub fn formal_inverse(&self) -> TruncatedSeries1<R> {
        let r = self.ring();
        let n = self.precision();
        let mut iota = TruncatedSeries1::zero(r, n);
        // F(x, ι) = x + ι + (terms with i,j ≥ 1), so the x^m coefficient of
        // F(x, ι_{<m}) determines ι_m
        for m in 1..=n {
            let partial = iota.truncate(m);
            let e = self
                .body
                .truncate(m)
                .evaluate(&TruncatedSeries1::x(r, m), &partial)
                .expect("zero constant terms");
            iota.set_coeff(m, r.neg(e.coeff(m)));
        }
        iota
    }

    /// The `k`-series `[k](x)`.
    pub fn n_series(&self, k: i64) -> TruncatedSeries1<R> {
        let r = self.ring();
        let n = self.precision();
        let x = TruncatedSeries1::x(r, n);
        let mut acc = TruncatedSeries1::zero(r, n);
        for _ in 0..k.unsigned_abs() {
            acc = self.apply(&x, &acc).expect("zero constant terms");
        }
        if k < 0 {
            acc = self.formal_inverse().compose(&acc).expect("zero constant term");
        }
        acc
    }

    /// `v_n`: the coefficient of `x^{p^n}` in `[p](x)`, with `v_0 = p`.
    pub fn v_coefficient(&self, p: u64, n: u32) -> Result<R::Elem> {
        let r = self.ring();
        if n == 0 {
            return Ok(r.from_bigint(&BigInt::from(p)));
        }
        let needed = p
            .checked_pow(n)
            .and_then(|v| usize::try_from(v).ok())
            .unwrap_or(usize::MAX);
        if needed > self.precision() {
            return Err(Error::InsufficientPrecision {
                needed,
                available: self.precision(),
            });
        }
        let s = self.truncate(needed).n_series(p as i64);
        Ok(s.coeff(needed).clone())
    }

    /// The logarithm: `ℓ' = 1 / ∂F/∂y(x,0)`, integrated termwise.
    pub fn log(&self) -> Result<TruncatedSeries1<R>> {
        let r = self.ring();
        if !r.is_q_algebra() {
            return Err(Error::NotQAlgebra);
        }
        if self.precision() == 0 {
            return Ok(TruncatedSeries1::zero(r, 0));
        }
        let dy = self.body.partial_y_at_zero();
        let deriv = dy
            .inverse()
            .ok_or_else(|| Error::NotAFormalGroupLaw("∂F/∂y(x,0) is not invertible".into()))?;
        deriv.integrate()
    }

    /// `F^b(x,y) = b(F(b⁻¹(x), b⁻¹(y)))`.
    pub fn change_coordinates(&self, b: &TruncatedSeries1<R>) -> Result<Self> {
        let r = self.ring();
        if b.precision() >= 1 && (!r.is_zero(b.coeff(0)) || !r.is_one(b.coeff(1))) {
            return Err(Error::BadCoordinate(
                "a coordinate change needs b(0) = 0 and b'(0) = 1".into(),
            ));
        }
        if b.precision() == 0 && !r.is_zero(b.coeff(0)) {
            return Err(Error::BadCoordinate("b(0) must be 0".into()));
        }
        let binv = b.revert()?;
        let inner = self.body.substitute_separately(&binv, &binv)?;
        let body = inner.compose_into(b)?;
        Ok(FormalGroupLaw {
            body,
            grading: self.grading.clone(),
            validated: self.validated,
        })
    }

    /// True iff every `a_{ij}` is homogeneous of degree `i + j - 1`.
    pub fn grade_check(&self, degrees: &Degrees) -> bool {
        let r = self.ring();
        self.body
            .nonzero_terms()
            .all(|(i, j, c)| r.homogeneity(c, degrees).is_degree(i as i64 + j as i64 - 1))
    }

    pub fn display(&self) -> String {
        self.body.display()
    }
}

/// `ℓ⁻¹(ℓ(x) + ℓ(y))` for a logarithm `ℓ = t + O(t²)`.
pub fn fgl_exp<R: Ring>(log: &TruncatedSeries1<R>) -> Result<FormalGroupLaw<R>> {
    let r = log.ring();
    if !r.is_q_algebra() {
        return Err(Error::NotQAlgebra);
    }
    if !r.is_zero(log.coeff(0)) {
        return Err(Error::BadLogShape("ℓ(0) must be 0".into()));
    }
    if log.precision() >= 1 && !r.is_one(log.coeff(1)) {
        return Err(Error::BadLogShape("ℓ'(0) must be 1".into()));
    }
    let inv = log.revert()?;
    let sum = log.in_x().add(&log.in_y());
    let body = sum.compose_into(&inv)?;
    FormalGroupLaw::new(body, None)
}

fn require_laurent(ring: &CoefficientRing, name: FglName) -> Result<String> {
    match ring {
        CoefficientRing::Laurent { var, .. } => Ok(var.clone()),
        _ => Err(Error::IncompatibleRing {
            name: name.to_string(),
            reason: format!("{ring} is not a Laurent ring"),
        }),
    }
}

impl FormalGroupLaw<CoefficientRing> {
    /// `x + y - βxy` over a Laurent ring in `β`; `|β| = 1`.
    pub fn multiplicative(ring: &CoefficientRing, precision: usize) -> Result<Self> {
        let var = require_laurent(ring, FglName::Multiplicative)?;
        let beta = ring.variable(&var).expect("Laurent variable");
        let mut f = Self::additive(ring, precision);
        if precision >= 2 {
            f.body.set(1, 1, ring.neg(&beta));
        }
        f.grading = Some(Degrees::from([(var, 1)]));
        Ok(f)
    }

    /// `x + y + xy` over `F_p`, whose `p`-series is `x^p`.
    pub fn honda_h1(ring: &CoefficientRing, precision: usize) -> Result<Self> {
        let ok = matches!(ring, CoefficientRing::IntegersMod(m) if ring.is_field() && *m > BigInt::from(1));
        if !ok {
            return Err(Error::IncompatibleRing {
                name: FglName::HondaH1.to_string(),
                reason: format!("{ring} is not a prime field F_p"),
            });
        }
        let mut f = Self::additive(ring, precision);
        if precision >= 2 {
            f.body.set(1, 1, ring.one());
        }
        f.grading = None;
        Ok(f)
    }

    /// Named law over a coefficient ring. The universal law lives in its own
    /// polynomial ring; see [`crate::lazard::universal_fgl`].
    pub fn named(name: FglName, ring: &CoefficientRing, precision: usize) -> Result<Self> {
        match name {
            FglName::Additive => Ok(Self::additive(ring, precision)),
            FglName::Multiplicative => Self::multiplicative(ring, precision),
            FglName::HondaH1 => Self::honda_h1(ring, precision),
            FglName::UniversalRational => Err(Error::IncompatibleRing {
                name: name.to_string(),
                reason: "the universal law is defined over its own polynomial ring".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn lz() -> CoefficientRing {
        CoefficientRing::laurent_integers("beta")
    }

    #[test]
    fn multiplicative_passes_and_is_graded() {
        let r = lz();
        let f = FormalGroupLaw::multiplicative(&r, 5).unwrap();
        assert!(check_axioms(f.body()).passed());
        assert_eq!(f.display(), "x + y - beta*x*y + O(6)");
        assert!(f.grade_check(&Degrees::from([("beta".into(), 1)])));
        assert!(!f.grade_check(&Degrees::from([("beta".into(), 2)])));
        assert!(FormalGroupLaw::additive(&CoefficientRing::Integers, 5).grade_check(&Degrees::new()));
    }

    #[test]
    fn axiom_failures_carry_witnesses() {
        let z = CoefficientRing::Integers;
        let mut f = FormalGroupLaw::additive(&z, 4).body().clone();
        f.set(2, 0, z.one());
        let rep = check_axioms(&f);
        assert_eq!(rep.unitality.witness, Some(vec![2, 0]));

        let mut g = FormalGroupLaw::additive(&z, 4).body().clone();
        g.set(1, 1, z.one());
        g.set(2, 1, z.one());
        let rep = check_axioms(&g);
        assert!(rep.unitality.passed);
        assert_eq!(rep.symmetry.witness, Some(vec![2, 1]));
    }

    #[test]
    fn honda_over_f2_has_p_series_x_squared() {
        let f2 = CoefficientRing::integers_mod(2).unwrap();
        let f = FormalGroupLaw::honda_h1(&f2, 5).unwrap();
        let s = f.n_series(2);
        let x2 = TruncatedSeries1::x(&f2, 5).pow(2);
        assert_eq!(s, x2);
        assert!(FormalGroupLaw::honda_h1(&CoefficientRing::Integers, 5).is_err());
        assert!(FormalGroupLaw::multiplicative(&CoefficientRing::Integers, 5).is_err());
    }

    #[test]
    fn inverses() {
        let r = lz();
        let f = FormalGroupLaw::multiplicative(&r, 6).unwrap();
        let iota = f.formal_inverse();
        let x = TruncatedSeries1::x(&r, 6);
        assert!(f.apply(&x, &iota).unwrap().is_zero());
        // -x/(1-βx)
        let beta = r.variable("beta").unwrap();
        for k in 1..=6 {
            assert_eq!(iota.coeff(k), &r.neg(&r.pow(&beta, k as i64 - 1).unwrap()));
        }
        let z = CoefficientRing::Integers;
        let a = FormalGroupLaw::additive(&z, 4).formal_inverse();
        assert_eq!(a, TruncatedSeries1::x(&z, 4).neg());
    }

    #[test]
    fn n_series_and_v_coefficients() {
        let r = lz();
        let f = FormalGroupLaw::multiplicative(&r, 6).unwrap();
        let beta = r.variable("beta").unwrap();
        let two = f.n_series(2);
        assert_eq!(two.coeff(1), &r.from_i64(2));
        assert_eq!(two.coeff(2), &r.neg(&beta));
        assert!(two.coeffs()[3..].iter().all(|c| r.is_zero(c)));
        assert!(f.n_series(0).is_zero());
        assert_eq!(f.v_coefficient(2, 1).unwrap(), r.neg(&beta));
        assert_eq!(f.v_coefficient(5, 0).unwrap(), r.from_i64(5));
        assert!(matches!(
            f.v_coefficient(3, 2),
            Err(Error::InsufficientPrecision { needed: 9, available: 6 })
        ));
        let z = CoefficientRing::Integers;
        assert!(r.is_zero(&FormalGroupLaw::additive(&r, 4).v_coefficient(3, 1).unwrap()));
        assert_eq!(FormalGroupLaw::additive(&z, 4).n_series(3), TruncatedSeries1::x(&z, 4).scale(&z.from_i64(3)));
    }

    #[test]
    fn logarithm_and_exponential() {
        let r = CoefficientRing::laurent_rationals("beta");
        let f = FormalGroupLaw::multiplicative(&r, 3).unwrap();
        let l = f.log().unwrap();
        let beta = r.variable("beta").unwrap();
        let expected = TruncatedSeries1::from_fn(&r, 3, |k| {
            if k == 0 {
                r.zero()
            } else {
                let q = BigRational::new(1.into(), (k as i64).into());
                r.mul(&r.from_rational(&q).unwrap(), &r.pow(&beta, k as i64 - 1).unwrap())
            }
        });
        assert_eq!(l, expected);
        assert!(matches!(
            FormalGroupLaw::multiplicative(&lz(), 3).unwrap().log(),
            Err(Error::NotQAlgebra)
        ));
        let f4 = FormalGroupLaw::multiplicative(&r, 4).unwrap();
        let back = fgl_exp(&f4.log().unwrap()).unwrap();
        assert_eq!(back.body(), FormalGroupLaw::multiplicative(&r, 4).unwrap().body());
        let bad = TruncatedSeries1::x(&r, 3).scale(&r.from_i64(2));
        assert!(matches!(fgl_exp(&bad), Err(Error::BadLogShape(_))));
    }

    #[test]
    fn coordinate_change_of_additive() {
        let q = CoefficientRing::Rationals;
        let f = FormalGroupLaw::additive(&q, 2);
        let b = TruncatedSeries1::new(&q, vec![q.zero(), q.one(), q.one()]);
        let g = f.change_coordinates(&b).unwrap();
        // b(b⁻¹x + b⁻¹y) = x + y + 2xy + O(3)
        assert_eq!(g.coefficient(1, 1), &q.from_i64(2));
        assert!(q.is_zero(g.coefficient(2, 0)));
        let bad = TruncatedSeries1::new(&q, vec![q.zero(), q.from_i64(2)]);
        assert!(matches!(f.change_coordinates(&bad), Err(Error::BadCoordinate(_))));
    }
}
