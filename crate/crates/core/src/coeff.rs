//! Exact arithmetic over a closed family of coefficient rings.
//!
//! The family: `Z`, `Q`, `Z/m`, `Z_(p)` (as rationals with denominator prime
//! to `p`), Laurent extensions `B[β±1]` in a graded variable, and quotients of
//! a Laurent ring over a field by a principal ideal. Quotients that collapse to
//! a simpler member of the family are returned as that member, so
//! `Z/(p)` is `Z/p`, `Z[β±1]/(p)` is `F_p[β±1]`, and anything equal to the zero
//! ring is `Z/1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{format_rational, Degrees, Homogeneity, Ring};

/// Descriptor of a ring in the supported family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    IntegersMod(BigInt),
    PLocal(u64),
    Laurent {
        base: Box<CoefficientRing>,
        var: String,
        degree: i64,
    },
    /// `base / (generator)` where `base` is a Laurent ring over a field and the
    /// generator is a monic polynomial in the Laurent variable with nonzero
    /// constant term and degree at least one. Elements are remainders of
    /// degree below the generator's.
    Quotient {
        base: Box<CoefficientRing>,
        generator: Value,
    },
}

/// Canonical payload of an element. Which variant is used is fixed by the ring:
/// `Int` for `Z` and `Z/m` (residue in `[0, m)`), `Rat` for `Q` and `Z_(p)`,
/// `Laurent` for Laurent rings and their quotients (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Laurent(BTreeMap<i64, Value>),
}

impl Value {
    fn int(&self) -> &BigInt {
        match self {
            Value::Int(n) => n,
            other => panic!("expected integer payload, got {other:?}"),
        }
    }

    fn rat(&self) -> &BigRational {
        match self {
            Value::Rat(q) => q,
            other => panic!("expected rational payload, got {other:?}"),
        }
    }

    fn terms(&self) -> &BTreeMap<i64, Value> {
        match self {
            Value::Laurent(m) => m,
            other => panic!("expected Laurent payload, got {other:?}"),
        }
    }
}

/// An element together with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub ring: CoefficientRing,
    pub value: Value,
}

/// Binary and unary operations accepted by [`ring_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Neg,
    Eq,
    IsUnit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithmeticResult {
    Element(RingElement),
    Bool(bool),
}

impl RingElement {
    pub fn new(ring: &CoefficientRing, value: Value) -> Self {
        RingElement {
            ring: ring.clone(),
            value,
        }
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        Ok(RingElement::new(
            &self.ring,
            self.ring.add(&self.value, &other.value),
        ))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        Ok(RingElement::new(
            &self.ring,
            self.ring.mul(&self.value, &other.value),
        ))
    }

    pub fn neg(&self) -> RingElement {
        RingElement::new(&self.ring, self.ring.neg(&self.value))
    }

    pub fn equals(&self, other: &RingElement) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.value == other.value)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.ring.is_unit(&self.value)
    }

    pub fn is_zero_divisor(&self) -> Result<bool> {
        is_zero_divisor(&self.ring, &self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

/// Exact arithmetic on tagged elements. `b` is ignored for unary operations.
pub fn ring_arithmetic(
    a: &RingElement,
    b: Option<&RingElement>,
    op: RingOp,
) -> Result<ArithmeticResult> {
    let need_b = || b.ok_or_else(|| Error::Input("binary operation needs two operands".into()));
    Ok(match op {
        RingOp::Add => ArithmeticResult::Element(a.add(need_b()?)?),
        RingOp::Mul => ArithmeticResult::Element(a.mul(need_b()?)?),
        RingOp::Neg => ArithmeticResult::Element(a.neg()),
        RingOp::Eq => ArithmeticResult::Bool(a.equals(need_b()?)?),
        RingOp::IsUnit => ArithmeticResult::Bool(a.is_unit()?),
    })
}

// ---------------------------------------------------------------------------
// small integer helpers

pub(crate) fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_prime_big(n: &BigInt) -> bool {
    n.to_u64().is_some_and(is_prime_u64)
}

/// Distinct prime factors by trial division.
fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn p_valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

// ---------------------------------------------------------------------------
// constructors and structure

impl CoefficientRing {
    pub fn integers_mod(m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if !m.is_positive() {
            return Err(Error::InvalidRing(format!("modulus {m} must be positive")));
        }
        Ok(CoefficientRing::IntegersMod(m))
    }

    pub fn p_local(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(CoefficientRing::PLocal(p))
    }

    pub fn laurent(base: CoefficientRing, var: &str, degree: i64) -> Result<Self> {
        if base.laurent_vars().iter().any(|v| v == var) {
            return Err(Error::InvalidRing(format!(
                "base already is a Laurent extension in {var}"
            )));
        }
        if matches!(base, CoefficientRing::Quotient { .. }) {
            return Err(Error::InvalidRing(
                "Laurent extensions of quotient rings are not supported".into(),
            ));
        }
        Ok(CoefficientRing::Laurent {
            base: Box::new(base),
            var: var.to_string(),
            degree,
        })
    }

    /// `Z[β±1]` with `|β| = 1`.
    pub fn laurent_integers(var: &str) -> Self {
        CoefficientRing::Laurent {
            base: Box::new(CoefficientRing::Integers),
            var: var.to_string(),
            degree: 1,
        }
    }

    /// `Q[β±1]` with `|β| = 1`.
    pub fn laurent_rationals(var: &str) -> Self {
        CoefficientRing::Laurent {
            base: Box::new(CoefficientRing::Rationals),
            var: var.to_string(),
            degree: 1,
        }
    }

    pub fn zero_ring() -> Self {
        CoefficientRing::IntegersMod(BigInt::one())
    }

    fn laurent_vars(&self) -> Vec<String> {
        match self {
            CoefficientRing::Laurent { base, var, .. } => {
                let mut v = base.laurent_vars();
                v.push(var.clone());
                v
            }
            CoefficientRing::Quotient { base, .. } => base.laurent_vars(),
            _ => Vec::new(),
        }
    }

    /// Fields of the family (`Q` and `F_p`).
    pub fn is_field(&self) -> bool {
        match self {
            CoefficientRing::Rationals => true,
            CoefficientRing::IntegersMod(m) => is_prime_big(m),
            _ => false,
        }
    }

    fn is_domain(&self) -> bool {
        match self {
            CoefficientRing::Integers | CoefficientRing::Rationals | CoefficientRing::PLocal(_) => {
                true
            }
            CoefficientRing::IntegersMod(m) => is_prime_big(m),
            CoefficientRing::Laurent { base, .. } => base.is_domain(),
            CoefficientRing::Quotient { .. } => false,
        }
    }

    /// Characteristic-zero integer `n` as a payload of this ring.
    fn int_value(&self, n: &BigInt) -> Value {
        self.from_bigint(n)
    }

    /// Ring descriptor name used in error messages and text reports.
    pub fn describe(&self) -> String {
        self.to_string()
    }

    /// Validate that `v` is a canonical payload for this ring.
    pub fn validate(&self, v: &Value) -> Result<()> {
        let bad = || Error::Input(format!("payload {v:?} is not canonical for {self}"));
        match (self, v) {
            (CoefficientRing::Integers, Value::Int(_)) => Ok(()),
            (CoefficientRing::IntegersMod(m), Value::Int(n)) => {
                if n.is_negative() || n >= m {
                    Err(bad())
                } else {
                    Ok(())
                }
            }
            (CoefficientRing::Rationals, Value::Rat(_)) => Ok(()),
            (CoefficientRing::PLocal(p), Value::Rat(q)) => {
                if (q.denom() % BigInt::from(*p)).is_zero() {
                    Err(bad())
                } else {
                    Ok(())
                }
            }
            (CoefficientRing::Laurent { base, .. }, Value::Laurent(m)) => {
                for c in m.values() {
                    if base.is_zero(c) {
                        return Err(bad());
                    }
                    base.validate(c)?;
                }
                Ok(())
            }
            (CoefficientRing::Quotient { base, generator }, Value::Laurent(m)) => {
                let d = poly_degree(generator);
                if m.keys().any(|&k| k < 0 || k >= d) {
                    return Err(bad());
                }
                base.validate(v)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::IntegersMod(m) => write!(f, "Z/{m}"),
            CoefficientRing::PLocal(p) => write!(f, "Z_({p})"),
            CoefficientRing::Laurent { base, var, .. } => write!(f, "{base}[{var}^±1]"),
            CoefficientRing::Quotient { base, generator } => {
                write!(f, "{base}/({})", base.format(generator))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Laurent helpers

fn laurent_clean(base: &CoefficientRing, m: BTreeMap<i64, Value>) -> Value {
    Value::Laurent(m.into_iter().filter(|(_, c)| !base.is_zero(c)).collect())
}

fn laurent_add(base: &CoefficientRing, a: &Value, b: &Value) -> Value {
    let mut out = a.terms().clone();
    for (k, c) in b.terms() {
        match out.get_mut(k) {
            Some(slot) => {
                let s = base.add(slot, c);
                if base.is_zero(&s) {
                    out.remove(k);
                } else {
                    *slot = s;
                }
            }
            None => {
                out.insert(*k, c.clone());
            }
        }
    }
    Value::Laurent(out)
}

fn laurent_mul(base: &CoefficientRing, a: &Value, b: &Value) -> Value {
    let mut out: BTreeMap<i64, Value> = BTreeMap::new();
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            let p = base.mul(x, y);
            let slot = out.entry(i + j).or_insert_with(|| base.zero());
            *slot = base.add(slot, &p);
        }
    }
    laurent_clean(base, out)
}

fn laurent_map(base: &CoefficientRing, a: &Value, f: impl Fn(&Value) -> Value) -> Value {
    laurent_clean(base, a.terms().iter().map(|(k, c)| (*k, f(c))).collect())
}

// ---------------------------------------------------------------------------
// dense polynomials over a field of the family, used by quotient rings

type Poly = Vec<Value>;

fn poly_trim(field: &CoefficientRing, mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    p
}

fn poly_from_laurent(field: &CoefficientRing, v: &Value) -> (i64, Poly) {
    let t = v.terms();
    let Some((&lo, _)) = t.iter().next() else {
        return (0, Vec::new());
    };
    let hi = *t.keys().next_back().unwrap();
    let mut p = vec![field.zero(); (hi - lo + 1) as usize];
    for (k, c) in t {
        p[(k - lo) as usize] = c.clone();
    }
    (lo, p)
}

fn poly_to_laurent(field: &CoefficientRing, p: &Poly) -> Value {
    laurent_clean(
        field,
        p.iter()
            .enumerate()
            .map(|(i, c)| (i as i64, c.clone()))
            .collect(),
    )
}

fn poly_degree(g: &Value) -> i64 {
    g.terms().keys().next_back().copied().unwrap_or(-1)
}

fn poly_mul(field: &CoefficientRing, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    poly_trim(field, out)
}

fn poly_sub(field: &CoefficientRing, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let z = field.zero();
    let out = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    poly_trim(field, out)
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divrem(field: &CoefficientRing, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = poly_trim(field, b.clone());
    let lead_inv = field
        .inverse(b.last().expect("division by zero polynomial"))
        .expect("field element is invertible");
    let mut r = poly_trim(field, a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = field.mul(r.last().unwrap(), &lead_inv);
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = field.sub(&r[shift + i], &field.mul(&c, bc));
        }
        q[shift] = c;
        r = poly_trim(field, r);
    }
    (poly_trim(field, q), r)
}

fn poly_monic(field: &CoefficientRing, p: &Poly) -> Poly {
    match p.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = field.inverse(l).expect("field element is invertible");
            p.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd and a Bézout coefficient `s` with `s·a ≡ gcd (mod b)`.
fn poly_ext_gcd(field: &CoefficientRing, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let (mut r0, mut r1) = (poly_trim(field, a.clone()), poly_trim(field, b.clone()));
    let (mut s0, mut s1) = (vec![field.one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = poly_divrem(field, &r0, &r1);
        let s = poly_sub(field, &s0, &poly_mul(field, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(l) => {
            let inv = field.inverse(l).expect("field element is invertible");
            let g = r0.iter().map(|c| field.mul(c, &inv)).collect();
            let s = s0.iter().map(|c| field.mul(c, &inv)).collect();
            (g, poly_trim(field, s))
        }
    }
}

fn laurent_field(base: &CoefficientRing) -> &CoefficientRing {
    match base {
        CoefficientRing::Laurent { base, .. } => base,
        other => panic!("quotient base must be a Laurent ring, got {other}"),
    }
}

/// Reduce an arbitrary Laurent payload modulo the quotient generator.
fn quotient_reduce(base: &CoefficientRing, g: &Value, v: &Value) -> Value {
    let field = laurent_field(base);
    let (lo, p) = poly_from_laurent(field, v);
    let (_, gp) = poly_from_laurent(field, g);
    let (_, mut r) = poly_divrem(field, &p, &gp);
    if lo != 0 {
        // β is a unit modulo g because g(0) ≠ 0
        let step = if lo < 0 {
            // β^{-1} = -(g - g0)/(β g0)
            let g0_inv = field.inverse(&gp[0]).expect("nonzero constant term");
            gp[1..]
                .iter()
                .map(|c| field.neg(&field.mul(c, &g0_inv)))
                .collect::<Poly>()
        } else {
            vec![field.zero(), field.one()]
        };
        for _ in 0..lo.unsigned_abs() {
            r = poly_divrem(field, &poly_mul(field, &r, &step), &gp).1;
        }
    }
    poly_to_laurent(field, &r)
}

// ---------------------------------------------------------------------------
// the Ring implementation

impl Ring for CoefficientRing {
    type Elem = Value;

    fn zero(&self) -> Value {
        match self {
            CoefficientRing::Integers | CoefficientRing::IntegersMod(_) => Value::Int(BigInt::zero()),
            CoefficientRing::Rationals | CoefficientRing::PLocal(_) => {
                Value::Rat(BigRational::zero())
            }
            CoefficientRing::Laurent { .. } | CoefficientRing::Quotient { .. } => {
                Value::Laurent(BTreeMap::new())
            }
        }
    }

    fn one(&self) -> Value {
        self.from_bigint(&BigInt::one())
    }

    fn from_bigint(&self, n: &BigInt) -> Value {
        match self {
            CoefficientRing::Integers => Value::Int(n.clone()),
            CoefficientRing::IntegersMod(m) => Value::Int(n.mod_floor(m)),
            CoefficientRing::Rationals | CoefficientRing::PLocal(_) => {
                Value::Rat(BigRational::from_integer(n.clone()))
            }
            CoefficientRing::Laurent { base, .. } => {
                laurent_clean(base, BTreeMap::from([(0, base.from_bigint(n))]))
            }
            CoefficientRing::Quotient { base, .. } => base.from_bigint(n),
        }
    }

    fn add(&self, a: &Value, b: &Value) -> Value {
        match self {
            CoefficientRing::Integers => Value::Int(a.int() + b.int()),
            CoefficientRing::IntegersMod(m) => Value::Int((a.int() + b.int()).mod_floor(m)),
            CoefficientRing::Rationals | CoefficientRing::PLocal(_) => Value::Rat(a.rat() + b.rat()),
            CoefficientRing::Laurent { base, .. } => laurent_add(base, a, b),
            CoefficientRing::Quotient { base, .. } => base.add(a, b),
        }
    }

    fn neg(&self, a: &Value) -> Value {
        match self {
            CoefficientRing::Integers => Value::Int(-a.int()),
            CoefficientRing::IntegersMod(m) => Value::Int((-a.int()).mod_floor(m)),
            CoefficientRing::Rationals | CoefficientRing::PLocal(_) => Value::Rat(-a.rat()),
            CoefficientRing::Laurent { base, .. } => laurent_map(base, a, |c| base.neg(c)),
            CoefficientRing::Quotient { base, .. } => base.neg(a),
        }
    }

    fn mul(&self, a: &Value, b: &Value) -> Value {
        match self {
            CoefficientRing::Integers => Value::Int(a.int() * b.int()),
            CoefficientRing::IntegersMod(m) => Value::Int((a.int() * b.int()).mod_floor(m)),
            CoefficientRing::Rationals | CoefficientRing::PLocal(_) => Value::Rat(a.rat() * b.rat()),
            CoefficientRing::Laurent { base, .. } => laurent_mul(base, a, b),
            CoefficientRing::Quotient { base, generator } => {
                quotient_reduce(base, generator, &base.mul(a, b))
            }
        }
    }

    fn is_zero(&self, a: &Value) -> bool {
        match a {
            Value::Int(n) => n.is_zero(),
            Value::Rat(q) => q.is_zero(),
            Value::Laurent(m) => m.is_empty(),
        }
    }

    fn inverse(&self, a: &Value) -> Option<Value> {
        match self {
            CoefficientRing::Integers => {
                let n = a.int();
                (n.abs().is_one()).then(|| Value::Int(n.clone()))
            }
            CoefficientRing::IntegersMod(m) => mod_inverse(a.int(), m).map(Value::Int),
            CoefficientRing::Rationals => {
                let q = a.rat();
                (!q.is_zero()).then(|| Value::Rat(q.recip()))
            }
            CoefficientRing::PLocal(p) => {
                let q = a.rat();
                (!q.is_zero() && !(q.numer() % BigInt::from(*p)).is_zero())
                    .then(|| Value::Rat(q.recip()))
            }
            CoefficientRing::Laurent { base, .. } => {
                let t = a.terms();
                if t.len() == 1 {
                    let (k, c) = t.iter().next().unwrap();
                    let ci = base.inverse(c)?;
                    return Some(Value::Laurent(BTreeMap::from([(-k, ci)])));
                }
                match base.as_ref() {
                    CoefficientRing::IntegersMod(m) if !is_prime_big(m) => {
                        laurent_inverse_mod_m(self, base, m, a)
                    }
                    _ => None,
                }
            }
            CoefficientRing::Quotient { base, generator } => {
                let field = laurent_field(base);
                let (lo, p) = poly_from_laurent(field, a);
                let (_, g) = poly_from_laurent(field, generator);
                let (d, s) = poly_ext_gcd(field, &p, &g);
                if d.len() != 1 {
                    return None;
                }
                // a = β^lo·p, so a^{-1} = β^{-lo}·s
                let shifted = poly_to_laurent(field, &s)
                    .terms()
                    .iter()
                    .map(|(k, c)| (k - lo, c.clone()))
                    .collect();
                Some(quotient_reduce(base, generator, &Value::Laurent(shifted)))
            }
        }
    }

    fn div_int(&self, a: &Value, n: u64) -> Option<Value> {
        if n == 0 {
            return None;
        }
        let nb = BigInt::from(n);
        match self {
            CoefficientRing::Integers => {
                let (q, r) = a.int().div_rem(&nb);
                r.is_zero().then_some(Value::Int(q))
            }
            CoefficientRing::IntegersMod(m) => {
                let inv = mod_inverse(&nb, m)?;
                Some(Value::Int((a.int() * inv).mod_floor(m)))
            }
            CoefficientRing::Rationals => Some(Value::Rat(a.rat() / BigRational::from_integer(nb))),
            CoefficientRing::PLocal(p) => {
                let q = a.rat() / BigRational::from_integer(nb);
                (!(q.denom() % BigInt::from(*p)).is_zero()).then_some(Value::Rat(q))
            }
            CoefficientRing::Laurent { base, .. } => {
                let mut out = BTreeMap::new();
                for (k, c) in a.terms() {
                    out.insert(*k, base.div_int(c, n)?);
                }
                Some(laurent_clean(base, out))
            }
            CoefficientRing::Quotient { base, .. } => base.div_int(a, n),
        }
    }

    fn is_q_algebra(&self) -> bool {
        match self {
            CoefficientRing::Rationals => true,
            CoefficientRing::IntegersMod(m) => m.is_one(),
            CoefficientRing::Laurent { base, .. } | CoefficientRing::Quotient { base, .. } => {
                base.is_q_algebra()
            }
            _ => false,
        }
    }

    fn variable(&self, name: &str) -> Option<Value> {
        match self {
            CoefficientRing::Laurent { base, var, .. } => {
                if var == name {
                    Some(laurent_clean(base, BTreeMap::from([(1, base.one())])))
                } else {
                    let c = base.variable(name)?;
                    Some(laurent_clean(base, BTreeMap::from([(0, c)])))
                }
            }
            CoefficientRing::Quotient { base, generator } => {
                Some(quotient_reduce(base, generator, &base.variable(name)?))
            }
            _ => None,
        }
    }

    fn format(&self, a: &Value) -> String {
        match self {
            CoefficientRing::Integers | CoefficientRing::IntegersMod(_) => a.int().to_string(),
            CoefficientRing::Rationals | CoefficientRing::PLocal(_) => format_rational(a.rat()),
            CoefficientRing::Laurent { base, var, .. } => format_laurent(base, var, a),
            CoefficientRing::Quotient { base, .. } => base.format(a),
        }
    }

    fn homogeneity(&self, a: &Value, degrees: &Degrees) -> Homogeneity {
        match self {
            CoefficientRing::Laurent { base, var, degree } => {
                let dv = degrees.get(var).copied().unwrap_or(*degree);
                let mut acc = Homogeneity::Zero;
                for (k, c) in a.terms() {
                    let h = match base.homogeneity(c, degrees) {
                        Homogeneity::Degree(d) => Homogeneity::Degree(d + k * dv),
                        other => other,
                    };
                    acc = match (acc, h) {
                        (Homogeneity::Zero, h) => h,
                        (_, Homogeneity::Inhomogeneous) => return Homogeneity::Inhomogeneous,
                        (Homogeneity::Degree(x), Homogeneity::Degree(y)) if x == y => acc,
                        (acc, Homogeneity::Zero) => acc,
                        _ => return Homogeneity::Inhomogeneous,
                    };
                }
                acc
            }
            CoefficientRing::Quotient { base, .. } => base.homogeneity(a, degrees),
            _ => {
                if self.is_zero(a) {
                    Homogeneity::Zero
                } else {
                    Homogeneity::Degree(0)
                }
            }
        }
    }
}

/// Inverse of a non-monomial unit of `(Z/m)[β±1]` for composite `m`.
///
/// Modulo each prime `p | m` a unit is a monomial `c_p β^{k_p}`; gluing the
/// monomial inverses with CRT idempotents gives `y0` with `1 - u·y0`
/// nilpotent, and Newton's iteration `y ← y(2 - u·y)` then terminates.
fn laurent_inverse_mod_m(
    ring: &CoefficientRing,
    base: &CoefficientRing,
    m: &BigInt,
    u: &Value,
) -> Option<Value> {
    let mut y0 = ring.zero();
    for p in prime_factors(m) {
        let mut pk = p.clone();
        while (m % (&pk * &p)).is_zero() {
            pk *= &p;
        }
        let rest = m / &pk;
        // idempotent: ≡ 1 mod p^k, ≡ 0 mod rest
        let e = (&rest * mod_inverse(&rest, &pk)?).mod_floor(m);
        let survivors: Vec<_> = u
            .terms()
            .iter()
            .filter(|(_, c)| !(c.int() % &p).is_zero())
            .collect();
        if survivors.len() != 1 {
            return None;
        }
        let (k, c) = survivors[0];
        let cinv = mod_inverse(c.int(), &p)?;
        let term = laurent_clean(
            base,
            BTreeMap::from([(-k, Value::Int((cinv * &e).mod_floor(m)))]),
        );
        y0 = ring.add(&y0, &term);
    }
    let two = ring.from_i64(2);
    let mut y = y0;
    for _ in 0..64 {
        let uy = ring.mul(u, &y);
        if ring.is_one(&uy) {
            return Some(y);
        }
        y = ring.mul(&y, &ring.sub(&two, &uy));
    }
    None
}

fn format_laurent(base: &CoefficientRing, var: &str, a: &Value) -> String {
    let t = a.terms();
    if t.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in t.iter().rev() {
        let cs = base.format(c);
        let mono = match *k {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        let term = if mono.is_empty() {
            cs
        } else if cs == "1" {
            mono
        } else if cs == "-1" {
            format!("-{mono}")
        } else if is_compound(&cs) {
            format!("({cs})*{mono}")
        } else {
            format!("{cs}*{mono}")
        };
        parts.push(term);
    }
    join_terms(&parts)
}

/// True if the string has a top-level `+`/`-` after its first character.
pub(crate) fn is_compound(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => {
                // a sign right after '^' belongs to an exponent
                if !s[..i].ends_with('^') {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

/// Join signed terms as `a + b - c`.
pub(crate) fn join_terms(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

// ---------------------------------------------------------------------------
// decision routines

impl CoefficientRing {
    pub fn is_unit(&self, a: &Value) -> Result<bool> {
        match self {
            CoefficientRing::Laurent { base, .. } => {
                let t = a.terms();
                if t.len() == 1 {
                    return base.is_unit(t.values().next().unwrap());
                }
                if base.is_domain() {
                    return Ok(false);
                }
                match base.as_ref() {
                    CoefficientRing::IntegersMod(m) => {
                        // unit iff a monomial unit modulo every prime factor
                        Ok(prime_factors(m).iter().all(|p| {
                            t.values().filter(|c| !(c.int() % p).is_zero()).count() == 1
                        }))
                    }
                    other => Err(Error::Unsupported(format!(
                        "unit test for Laurent polynomials over {other}"
                    ))),
                }
            }
            _ => Ok(self.inverse(a).is_some()),
        }
    }
}

/// Is `r` a zero divisor, i.e. is there `s ≠ 0` with `r·s = 0`?
pub fn is_zero_divisor(ring: &CoefficientRing, r: &Value) -> Result<bool> {
    Ok(zero_divisor_witness(ring, r)?.is_some())
}

/// A nonzero `s` with `r·s = 0`, if one exists.
pub fn zero_divisor_witness(ring: &CoefficientRing, r: &Value) -> Result<Option<Value>> {
    if is_zero_ring(ring)? {
        return Ok(None);
    }
    match ring {
        CoefficientRing::Integers | CoefficientRing::Rationals | CoefficientRing::PLocal(_) => {
            Ok(ring.is_zero(r).then(|| ring.one()))
        }
        CoefficientRing::IntegersMod(m) => {
            let g = r.int().gcd(m);
            Ok((!g.is_one()).then(|| Value::Int(m / g)))
        }
        CoefficientRing::Laurent { base, .. } => {
            if ring.is_zero(r) {
                return Ok(Some(ring.one()));
            }
            if base.is_domain() {
                return Ok(None);
            }
            match base.as_ref() {
                CoefficientRing::IntegersMod(m) => {
                    // McCoy: a polynomial is a zero divisor iff a nonzero constant kills it
                    let g = r.terms().values().fold(m.clone(), |g, c| g.gcd(c.int()));
                    Ok((!g.is_one()).then(|| ring.from_bigint(&(m / g))))
                }
                other => Err(Error::Undecidable(format!(
                    "zero-divisor test in Laurent ring over {other}"
                ))),
            }
        }
        CoefficientRing::Quotient { base, generator } => {
            if ring.is_zero(r) {
                return Ok(Some(ring.one()));
            }
            let field = laurent_field(base);
            let (_, p) = poly_from_laurent(field, r);
            let (_, g) = poly_from_laurent(field, generator);
            let (d, _) = poly_ext_gcd(field, &p, &g);
            if d.len() == 1 {
                return Ok(None);
            }
            let (w, _) = poly_divrem(field, &g, &d);
            Ok(Some(poly_to_laurent(field, &w)))
        }
    }
}

/// Does `1 = 0` hold in the ring?
pub fn is_zero_ring(ring: &CoefficientRing) -> Result<bool> {
    Ok(match ring {
        CoefficientRing::IntegersMod(m) => m.is_one(),
        CoefficientRing::Laurent { base, .. } => is_zero_ring(base)?,
        _ => false,
    })
}

/// `R/(r)` with a normal form for cosets.
pub fn quotient_by_element(ring: &CoefficientRing, r: &Value) -> Result<CoefficientRing> {
    ring.validate(r)?;
    let out = quotient_raw(ring, r)?;
    if is_zero_ring(&out)? {
        Ok(CoefficientRing::zero_ring())
    } else {
        Ok(out)
    }
}

fn quotient_raw(ring: &CoefficientRing, r: &Value) -> Result<CoefficientRing> {
    if ring.is_zero(r) {
        return Ok(ring.clone());
    }
    Ok(match ring {
        CoefficientRing::Integers => CoefficientRing::IntegersMod(r.int().abs()),
        CoefficientRing::Rationals => CoefficientRing::zero_ring(),
        CoefficientRing::IntegersMod(m) => CoefficientRing::IntegersMod(r.int().gcd(m)),
        CoefficientRing::PLocal(p) => {
            let k = p_valuation(r.rat().numer(), *p);
            CoefficientRing::IntegersMod(BigInt::from(*p).pow(k))
        }
        CoefficientRing::Laurent { base, var, degree } => {
            let t = r.terms();
            if t.len() == 1 {
                let c = t.values().next().unwrap();
                CoefficientRing::Laurent {
                    base: Box::new(quotient_by_element(base, c)?),
                    var: var.clone(),
                    degree: *degree,
                }
            } else if base.is_field() {
                let (_, p) = poly_from_laurent(base, r);
                let g = poly_monic(base, &p);
                CoefficientRing::Quotient {
                    base: Box::new(ring.clone()),
                    generator: poly_to_laurent(base, &g),
                }
            } else {
                return Err(Error::Unsupported(format!(
                    "no normal form for {ring} modulo {}",
                    ring.format(r)
                )));
            }
        }
        CoefficientRing::Quotient { base, generator } => {
            let field = laurent_field(base);
            let (_, p) = poly_from_laurent(field, r);
            let (_, g) = poly_from_laurent(field, generator);
            let (d, _) = poly_ext_gcd(field, &p, &g);
            if d.len() == 1 {
                CoefficientRing::zero_ring()
            } else {
                CoefficientRing::Quotient {
                    base: base.clone(),
                    generator: poly_to_laurent(field, &d),
                }
            }
        }
    })
}

/// Image of `v ∈ source` in `target`, where `target` is `source` or one of the
/// quotients produced by [`quotient_by_element`] from it.
pub fn quotient_map(source: &CoefficientRing, target: &CoefficientRing, v: &Value) -> Result<Value> {
    use CoefficientRing as C;
    if source == target {
        return Ok(v.clone());
    }
    let mismatch = || Error::RingMismatch {
        left: source.to_string(),
        right: target.to_string(),
    };
    if is_zero_ring(target)? {
        return Ok(target.zero());
    }
    match (source, target) {
        (C::Integers, _) => Ok(target.int_value(v.int())),
        (C::Rationals | C::PLocal(_), _) => target
            .from_rational(v.rat())
            .ok_or_else(|| Error::NotInvertible(format_rational(v.rat()))),
        (C::IntegersMod(m), C::IntegersMod(d)) if (m % d).is_zero() => {
            Ok(Value::Int(v.int().mod_floor(d)))
        }
        (C::Laurent { base: b1, var: v1, .. }, C::Laurent { base: b2, var: v2, .. }) if v1 == v2 => {
            let mut out = BTreeMap::new();
            for (k, c) in v.terms() {
                out.insert(*k, quotient_map(b1, b2, c)?);
            }
            Ok(laurent_clean(b2, out))
        }
        (C::Laurent { .. }, C::Quotient { base, generator }) => {
            let lifted = quotient_map(source, base, v)?;
            Ok(quotient_reduce(base, generator, &lifted))
        }
        (C::Quotient { base: b1, .. }, C::Quotient { base: b2, generator }) if b1 == b2 => {
            Ok(quotient_reduce(b2, generator, v))
        }
        _ => Err(mismatch()),
    }
}
