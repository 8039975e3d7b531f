//! Degree-zero K-theory operations in two models: windowed rational
//! sequences with pointwise product, and finite ω-towers of power series
//! with the composition product, joined by the Adams transform.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{is_integral, Rationals, Ring};
use crate::series::TruncatedSeries1;

type Q = BigRational;
pub type QSeries = TruncatedSeries1<Rationals>;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(1 - x)^{-k}`: coefficients `k(k+1)...(k+n-1)/n!`.
pub fn geometric_power(k: i64, precision: usize) -> QSeries {
    let mut c = Q::one();
    QSeries::from_fn(&Rationals, precision, |n| {
        if n > 0 {
            c = &c * q(k + n as i64 - 1) / q(n as i64);
        }
        c.clone()
    })
}

/// `ω(f) = (1 - x) f'`, one coefficient less precise.
pub fn omega<R: Ring>(f: &TruncatedSeries1<R>) -> TruncatedSeries1<R> {
    let d = f.derive();
    let r = f.ring();
    TruncatedSeries1::from_fn(r, d.precision(), |n| {
        if n == 0 {
            d.coeff(0).clone()
        } else {
            r.sub(d.coeff(n), d.coeff(n - 1))
        }
    })
}

/// The `g` with `ω(g) = f` and `g(0) = constant`, one coefficient more
/// precise than `f`.
pub fn omega_solve<R: Ring>(f: &TruncatedSeries1<R>, constant: Option<&R::Elem>) -> Result<TruncatedSeries1<R>> {
    let r = f.ring();
    // g' = f / (1 - x): partial sums of f
    let mut acc = r.zero();
    let deriv = TruncatedSeries1::from_fn(r, f.precision(), |n| {
        acc = r.add(&acc, f.coeff(n));
        acc.clone()
    });
    let mut g = deriv.integrate()?;
    if let Some(c) = constant {
        g.set_coeff(0, c.clone());
    }
    Ok(g)
}

/// Rows `0..=n` of a triangular recurrence `t(m, k) = w(m, k)·t(m-1, k) + t(m-1, k-1)`.
fn triangle(n: usize, weight: impl Fn(usize, usize) -> usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| {
                let stay = prev.get(k).map_or_else(BigInt::zero, |v| v * BigInt::from(weight(m, k)));
                let step = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                stay + step
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `T(f)_n = n! [y^n] f(1 - e^{-y}) = Σ_k (-1)^{n-k} k! S(n,k) f_k` with
/// `S` the Stirling numbers of the second kind.
pub fn adams_transform(f: &QSeries) -> AdamsSequence {
    let n = f.precision();
    let stirling = triangle(n, |_, k| k);
    let values = (0..=n)
        .map(|m| {
            (0..=m)
                .filter(|&k| !f.coeff(k).is_zero())
                .map(|k| {
                    let c = factorial(k) * &stirling[m][k];
                    let c = if (m - k) % 2 == 1 { -c } else { c };
                    f.coeff(k) * Q::from_integer(c)
                })
                .sum()
        })
        .collect();
    AdamsSequence { lo: 0, values }
}

/// `Σ a_n/n! (-log(1-x))^n`, i.e. `f_k = Σ_n c(k,n) a_n / k!` with `c` the
/// unsigned Stirling numbers of the first kind. The window must start at 0.
pub fn adams_transform_inv(a: &AdamsSequence) -> Result<QSeries> {
    if a.lo != 0 || a.values.is_empty() {
        return Err(Error::WindowMiss {
            index: 0,
            lo: a.lo,
            hi: a.hi(),
        });
    }
    let n = a.values.len() - 1;
    let cycles = triangle(n, |m, _| m - 1);
    Ok(QSeries::from_fn(&Rationals, n, |k| {
        let s: Q = (0..=k)
            .filter(|&m| !a.values[m].is_zero())
            .map(|m| &a.values[m] * Q::from_integer(cycles[k][m].clone()))
            .sum();
        s / Q::from_integer(factorial(k))
    }))
}

pub fn series_is_integral(f: &QSeries) -> bool {
    f.coeffs().iter().all(is_integral)
}

/// The composition product `T⁻¹(T(f)·T(g))`. Integral inputs must give an
/// integral output.
pub fn circ_compose(f: &QSeries, g: &QSeries) -> Result<QSeries> {
    let tf = adams_transform(f);
    let tg = adams_transform(g);
    let out = adams_transform_inv(&tf.mul(&tg))?;
    if series_is_integral(f) && series_is_integral(g) {
        if let Some(i) = out.coeffs().iter().position(|c| !is_integral(c)) {
            return Err(Error::IntegralityViolation { index: i });
        }
    }
    Ok(out)
}

/// A rational sequence on the window `[lo, lo + len - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdamsSequence {
    lo: i64,
    values: Vec<Q>,
}

impl AdamsSequence {
    pub fn new(lo: i64, values: Vec<Q>) -> Self {
        AdamsSequence { lo, values }
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> Q) -> Self {
        AdamsSequence {
            lo,
            values: (lo..=hi).map(f).collect(),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: i64) -> Result<&Q> {
        if n < self.lo || n > self.hi() {
            return Err(Error::WindowMiss {
                index: n,
                lo: self.lo,
                hi: self.hi(),
            });
        }
        Ok(&self.values[(n - self.lo) as usize])
    }

    fn zip(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        Self::from_fn(lo, hi, |n| {
            f(
                &self.values[(n - self.lo) as usize],
                &other.values[(n - other.lo) as usize],
            )
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn scale(&self, c: &Q) -> Self {
        AdamsSequence {
            lo: self.lo,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// `σ^j`: `(σ^j a)_n = a_{n+j}`.
    pub fn shift(&self, j: i64) -> Self {
        AdamsSequence {
            lo: self.lo - j,
            values: self.values.clone(),
        }
    }

    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi());
        Self::from_fn(lo, hi, |n| self.values[(n - self.lo) as usize].clone())
    }

    /// Equal on the intersection of the windows.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.zip(other, |a, b| if a == b { Q::zero() } else { Q::one() })
            .values
            .iter()
            .all(Zero::is_zero)
    }
}

/// `(k^n)` on `[lo, hi]`, with `0^0 = 1`.
pub fn adams_op_sequence(k: i64, lo: i64, hi: i64) -> Result<AdamsSequence> {
    if k == 0 && lo < 0 {
        return Err(Error::NonInvertibleK { k });
    }
    Ok(AdamsSequence::from_fn(lo, hi, |n| {
        let base = q(k);
        if n >= 0 {
            num_traits::pow(base, n as usize)
        } else {
            num_traits::pow(base.recip(), n.unsigned_abs() as usize)
        }
    }))
}

/// The indicator `e_n` of `n` on `[lo, hi]`.
pub fn idempotent_sequence(n: i64, lo: i64, hi: i64) -> Result<AdamsSequence> {
    if n < lo || n > hi {
        return Err(Error::WindowMiss { index: n, lo, hi });
    }
    Ok(AdamsSequence::from_fn(lo, hi, |m| if m == n { Q::one() } else { Q::zero() }))
}

/// Levels `f_0..f_D` at a common precision with `ω(f_{j+1}) = f_j`.
///
/// Level `j` is the series whose transform is `(a_{n-j})_n`, so a tower of
/// depth `D` and precision `N` carries the sequence window `[-D, N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaTower {
    levels: Vec<QSeries>,
}

impl OmegaTower {
    pub fn new(levels: Vec<QSeries>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Input("a tower needs at least one level".into()));
        }
        let n = levels.iter().map(|l| l.precision()).min().unwrap();
        let levels: Vec<QSeries> = levels.iter().map(|l| l.truncate(n)).collect();
        if n >= 1 {
            for j in 0..levels.len() - 1 {
                if !omega(&levels[j + 1]).agrees_with(&levels[j]) {
                    return Err(Error::ModelMismatch(format!(
                        "ω(level {}) differs from level {j}",
                        j + 1
                    )));
                }
            }
        }
        Ok(OmegaTower { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn precision(&self) -> usize {
        self.levels[0].precision()
    }

    pub fn levels(&self) -> &[QSeries] {
        &self.levels
    }

    pub fn is_integral(&self) -> bool {
        self.levels.iter().all(series_is_integral)
    }

    fn common(&self, other: &Self) -> (usize, usize) {
        (
            self.depth().min(other.depth()),
            self.precision().min(other.precision()),
        )
    }

    fn levelwise(&self, other: &Self, f: impl Fn(&QSeries, &QSeries) -> Result<QSeries>) -> Result<Self> {
        let (d, n) = self.common(other);
        let levels = (0..=d)
            .map(|j| f(&self.levels[j].truncate(n), &other.levels[j].truncate(n)))
            .collect::<Result<_>>()?;
        Ok(OmegaTower { levels })
    }

    /// Levelwise composition product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.levelwise(other, circ_compose)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.levelwise(other, |a, b| Ok(a.add(b)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        OmegaTower {
            levels: self.levels.iter().map(|l| l.scale(c)).collect(),
        }
    }

    /// `β⁻¹ a β`: prepend `ω(f_0)`, one level deeper, one coefficient less precise.
    pub fn omega_shift(&self) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Err(Error::InsufficientPrecision {
                needed: 1,
                available: 0,
            });
        }
        let mut levels = vec![omega(&self.levels[0])];
        levels.extend(self.levels.iter().map(|l| l.truncate(n - 1)));
        Ok(OmegaTower { levels })
    }

    /// `β a β⁻¹`: drop level 0.
    pub fn omega_unshift(&self) -> Result<Self> {
        if self.depth() == 0 {
            return Err(Error::InsufficientDepth {
                depth: 0,
                index: -1,
            });
        }
        Ok(OmegaTower {
            levels: self.levels[1..].to_vec(),
        })
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let (d, _) = self.common(other);
        (0..=d).all(|j| self.levels[j].agrees_with(&other.levels[j]))
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Rationals,
}

/// `ψ^k` as the tower `(k^{-n} (1 - x)^{-k})_n`.
pub fn adams_op_tower(k: i64, depth: usize, precision: usize, coefficients: Coefficients) -> Result<OmegaTower> {
    let invertible = match coefficients {
        Coefficients::Integers => k.abs() == 1,
        Coefficients::Rationals => k != 0 || depth == 0,
    };
    if !invertible {
        return Err(Error::NonInvertibleK { k });
    }
    let base = geometric_power(k, precision);
    let levels = (0..=depth)
        .map(|n| {
            let c = if n == 0 {
                Q::one()
            } else {
                num_traits::pow(q(k).recip(), n)
            };
            base.scale(&c)
        })
        .collect();
    Ok(OmegaTower { levels })
}

/// Tower of a sequence on `[-D, N]` (`lo ≤ 0 ≤ hi`): level `j` is the
/// inverse transform of `(a_{n-j})_{0 ≤ n ≤ N}`.
pub fn tower_from_sequence(a: &AdamsSequence) -> Result<OmegaTower> {
    if a.lo > 0 || a.hi() < 0 {
        return Err(Error::WindowMiss {
            index: 0,
            lo: a.lo,
            hi: a.hi(),
        });
    }
    let depth = a.lo.unsigned_abs() as i64;
    let levels = (0..=depth)
        .map(|j| adams_transform_inv(&a.restrict(-j, a.hi() - j).shift(-j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OmegaTower { levels })
}

/// Sequence of a tower: `a_n = T(f_0)_n` for `n ≥ 0`, `a_{-j} = f_j(0)`.
pub fn sequence_from_tower(t: &OmegaTower) -> AdamsSequence {
    let d = t.depth() as i64;
    let t0 = adams_transform(&t.levels[0]);
    AdamsSequence::from_fn(-d, t.precision() as i64, |n| {
        if n >= 0 {
            t0.values[n as usize].clone()
        } else {
            t.levels[n.unsigned_abs() as usize].coeff(0).clone()
        }
    })
}

/// Coefficient algebras of a twisted Laurent ring.
pub trait TwistComponent: Clone + std::fmt::Debug + PartialEq {
    fn mul(&self, other: &Self) -> Result<Self>;
    fn add(&self, other: &Self) -> Result<Self>;
    /// `σ^j`, so that `a β^j = β^j σ^j(a)`.
    fn twist(&self, j: i64) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn agrees_with(&self, other: &Self) -> bool;
}

impl TwistComponent for AdamsSequence {
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(AdamsSequence::mul(self, other))
    }
    fn add(&self, other: &Self) -> Result<Self> {
        Ok(AdamsSequence::add(self, other))
    }
    fn twist(&self, j: i64) -> Result<Self> {
        Ok(self.shift(j))
    }
    fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
    fn agrees_with(&self, other: &Self) -> bool {
        AdamsSequence::agrees_with(self, other)
    }
}

impl TwistComponent for OmegaTower {
    fn mul(&self, other: &Self) -> Result<Self> {
        OmegaTower::mul(self, other)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        OmegaTower::add(self, other)
    }
    fn twist(&self, j: i64) -> Result<Self> {
        let mut t = self.clone();
        for _ in 0..j.unsigned_abs() {
            t = if j > 0 { t.omega_shift()? } else { t.omega_unshift()? };
        }
        Ok(t)
    }
    fn is_zero(&self) -> bool {
        OmegaTower::is_zero(self)
    }
    fn agrees_with(&self, other: &Self) -> bool {
        OmegaTower::agrees_with(self, other)
    }
}

/// Finite sums `Σ β^j a_j` with every `β` moved to the left.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedLaurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: TwistComponent> TwistedLaurent<C> {
    pub fn zero() -> Self {
        TwistedLaurent {
            terms: BTreeMap::new(),
        }
    }

    /// `β^j a`.
    pub fn monomial(j: i64, a: C) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(j, a);
        }
        TwistedLaurent { terms }
    }

    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    pub fn component(&self, j: i64) -> Option<&C> {
        self.terms.get(&j)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        for (j, b) in &other.terms {
            let sum = match terms.remove(j) {
                Some(a) => a.add(b)?,
                None => b.clone(),
            };
            if !sum.is_zero() {
                terms.insert(*j, sum);
            }
        }
        Ok(TwistedLaurent { terms })
    }

    /// `(β^i a)(β^j b) = β^{i+j} σ^j(a) b`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let c = a.twist(*j)?.mul(b)?;
                out = out.add(&Self::monomial(i + j, c))?;
            }
        }
        Ok(out)
    }

    /// Equal powers of `β` with agreeing components; a power missing on one
    /// side must be zero on the other.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|j| match (self.terms.get(j), other.terms.get(j)) {
            (Some(a), Some(b)) => a.agrees_with(b),
            (Some(a), None) | (None, Some(a)) => a.is_zero(),
            (None, None) => true,
        })
    }

    pub fn map<D: TwistComponent>(&self, f: impl Fn(&C) -> Result<D>) -> Result<TwistedLaurent<D>> {
        let mut terms = BTreeMap::new();
        for (j, a) in &self.terms {
            let b = f(a)?;
            if !b.is_zero() {
                terms.insert(*j, b);
            }
        }
        Ok(TwistedLaurent { terms })
    }
}

/// The sequence unit `β^0 · 1` on a window.
pub fn sequence_unit(lo: i64, hi: i64) -> TwistedLaurent<AdamsSequence> {
    TwistedLaurent::monomial(0, AdamsSequence::from_fn(lo, hi, |_| Q::one()))
}

/// `β^j` in the sequence model on a window.
pub fn sequence_beta(j: i64, lo: i64, hi: i64) -> TwistedLaurent<AdamsSequence> {
    TwistedLaurent::monomial(j, AdamsSequence::from_fn(lo, hi, |_| Q::one()))
}

/// `β^j` in the tower model: every level the ∘-unit `(1 - x)^{-1}`.
pub fn tower_beta(j: i64, depth: usize, precision: usize) -> TwistedLaurent<OmegaTower> {
    let unit = adams_op_tower(1, depth, precision, Coefficients::Integers).expect("k = 1");
    TwistedLaurent::monomial(j, unit)
}

/// Element of either model, for callers that choose the model at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum OpsElement {
    Sequence(TwistedLaurent<AdamsSequence>),
    Tower(TwistedLaurent<OmegaTower>),
}

impl OpsElement {
    pub fn model(&self) -> &'static str {
        match self {
            OpsElement::Sequence(_) => "sequence",
            OpsElement::Tower(_) => "tower",
        }
    }
}

pub fn twisted_laurent_multiply(u: &OpsElement, v: &OpsElement) -> Result<OpsElement> {
    match (u, v) {
        (OpsElement::Sequence(a), OpsElement::Sequence(b)) => Ok(OpsElement::Sequence(a.mul(b)?)),
        (OpsElement::Tower(a), OpsElement::Tower(b)) => Ok(OpsElement::Tower(a.mul(b)?)),
        _ => Err(Error::ModelMismatch(format!(
            "cannot multiply a {} element by a {} element",
            u.model(),
            v.model()
        ))),
    }
}

/// Tower model to sequence model, componentwise, `β ↦ β`.
pub fn mult_to_add(u: &TwistedLaurent<OmegaTower>) -> Result<TwistedLaurent<AdamsSequence>> {
    u.map(|t| Ok(sequence_from_tower(t)))
}

/// Sequence model to tower model; each window must contain 0.
pub fn add_to_mult(u: &TwistedLaurent<AdamsSequence>) -> Result<TwistedLaurent<OmegaTower>> {
    u.map(tower_from_sequence)
}

/// Sequence to tower of a requested depth: fails when the window does not
/// reach `-depth`.
pub fn add_to_mult_with_depth(u: &TwistedLaurent<AdamsSequence>, depth: usize) -> Result<TwistedLaurent<OmegaTower>> {
    u.map(|a| {
        if a.lo() > -(depth as i64) {
            return Err(Error::InsufficientDepth {
                depth: a.lo().unsigned_abs() as usize,
                index: -(depth as i64),
            });
        }
        tower_from_sequence(&a.restrict(-(depth as i64), a.hi()))
    })
}

/// Action on the test module `Q[β^{±1}]`: `(β^j a)·β^m = a_m β^{m+j}`.
pub fn eigenspace_action(op: &TwistedLaurent<AdamsSequence>, m: i64) -> Result<BTreeMap<i64, Q>> {
    let mut out = BTreeMap::new();
    for (j, a) in op.terms() {
        let v = a.get(m)?;
        if !v.is_zero() {
            *out.entry(j + m).or_insert_with(Q::zero) += v;
        }
    }
    out.retain(|_, v: &mut Q| !v.is_zero());
    Ok(out)
}

/// `Σ k^n e_n` over the window.
pub fn adams_from_idempotents(k: i64, lo: i64, hi: i64) -> Result<AdamsSequence> {
    let mut acc = AdamsSequence::from_fn(lo, hi, |_| Q::zero());
    for n in lo..=hi {
        let coeff = adams_op_sequence(k, n, n)?.values[0].clone();
        acc = acc.add(&idempotent_sequence(n, lo, hi)?.scale(&coeff));
    }
    Ok(acc)
}

/// True if every value is an integer; signs are irrelevant.
pub fn sequence_is_integral(a: &AdamsSequence) -> bool {
    a.values.iter().all(|v| v.denom().abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(c: &[i64]) -> QSeries {
        QSeries::new(&Rationals, c.iter().map(|&v| q(v)).collect())
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&series(&[0, 1, 0, 0])), series(&[1, -1, 0]));
        assert!(omega(&series(&[1, 0, 0])).is_zero());
        for k in [-3, -1, 0, 2, 5] {
            let g = geometric_power(k, 8);
            assert_eq!(omega(&g), g.truncate(7).scale(&q(k)));
        }
    }

    #[test]
    fn omega_solve_examples() {
        let g = omega_solve(&series(&[1, -1, 0]), None).unwrap();
        assert_eq!(g, series(&[0, 1, 0, 0]));
        assert!(omega_solve(&series(&[0, 0]), None).unwrap().is_zero());
        let f = geometric_power(2, 6).scale(&q(2));
        let g = omega_solve(&f, Some(&q(1))).unwrap();
        assert_eq!(g, geometric_power(2, 7));
        let z = crate::coeff::CoefficientRing::Integers;
        let h = TruncatedSeries1::new(&z, vec![z.zero(), z.one()]);
        assert!(matches!(omega_solve(&h, None), Err(Error::Inconsistent { index: 2 })));
    }

    /// Literal substitution `n! [y^n] f(1 - e^{-y})`.
    fn transform_by_substitution(f: &QSeries) -> Vec<Q> {
        let n = f.precision();
        let u = QSeries::from_fn(&Rationals, n, |k| match k {
            0 => Q::zero(),
            k => {
                let r = Q::from_integer(factorial(k)).recip();
                if k % 2 == 1 { r } else { -r }
            }
        });
        let c = f.compose(&u).unwrap();
        (0..=n).map(|k| c.coeff(k) * Q::from_integer(factorial(k))).collect()
    }

    /// Literal substitution `Σ a_n/n! (-log(1-x))^n`.
    fn inverse_by_substitution(a: &[Q]) -> QSeries {
        let n = a.len() - 1;
        let egf = QSeries::from_fn(&Rationals, n, |k| &a[k] / Q::from_integer(factorial(k)));
        let log = QSeries::from_fn(&Rationals, n, |k| if k == 0 { Q::zero() } else { Q::new(1.into(), (k as i64).into()) });
        egf.compose(&log).unwrap()
    }

    #[test]
    fn stirling_transform_matches_substitution() {
        let f = QSeries::new(&Rationals, [3, -1, 4, 1, -5, 9, 2, -6].iter().map(|&v| q(v)).collect());
        assert_eq!(adams_transform(&f).values(), transform_by_substitution(&f).as_slice());
        let a: Vec<Q> = [2, 7, -1, 8, 2, -8, 1, 8].iter().map(|&v| Q::new(v.into(), 3.into())).collect();
        assert_eq!(
            adams_transform_inv(&AdamsSequence::new(0, a.clone())).unwrap(),
            inverse_by_substitution(&a)
        );
    }

    #[test]
    fn transform_examples() {
        for k in [-2, 0, 1, 3] {
            let t = adams_transform(&geometric_power(k, 6));
            assert_eq!(t, adams_op_sequence(k, 0, 6).unwrap());
            assert_eq!(adams_transform_inv(&t).unwrap(), geometric_power(k, 6));
        }
        let t = adams_transform(&series(&[0, 1, 0, 0, 0]));
        assert_eq!(t.values(), &[q(0), q(1), q(-1), q(1), q(-1)]);
        assert_eq!(adams_transform(&series(&[1, 0, 0])).values(), &[q(1), q(0), q(0)]);
    }

    #[test]
    fn composition_products() {
        let p = circ_compose(&geometric_power(2, 16), &geometric_power(3, 16)).unwrap();
        assert_eq!(p, geometric_power(6, 16));
        let f = series(&[3, -1, 4, 1, -5, 9]);
        assert_eq!(circ_compose(&geometric_power(1, 5), &f).unwrap(), f);
        assert_eq!(circ_compose(&series(&[1, 0]), &series(&[1, 0])).unwrap(), series(&[1, 0]));
    }

    #[test]
    fn adams_towers() {
        let t = adams_op_tower(2, 2, 8, Coefficients::Rationals).unwrap();
        let g = geometric_power(2, 8);
        assert_eq!(t.levels()[1], g.scale(&Q::new(1.into(), 2.into())));
        assert_eq!(t.levels()[2], g.scale(&Q::new(1.into(), 4.into())));
        assert!(OmegaTower::new(t.levels().to_vec()).is_ok());
        let m = adams_op_tower(-1, 3, 6, Coefficients::Integers).unwrap();
        assert!(m.is_integral());
        assert!(matches!(
            adams_op_tower(2, 2, 8, Coefficients::Integers),
            Err(Error::NonInvertibleK { k: 2 })
        ));
    }

    #[test]
    fn adams_sequences() {
        let s = adams_op_sequence(2, -3, 3).unwrap();
        let expected: Vec<Q> = [(1, 8), (1, 4), (1, 2), (1, 1), (2, 1), (4, 1), (8, 1)]
            .iter()
            .map(|&(a, b)| Q::new(a.into(), b.into()))
            .collect();
        assert_eq!(s.values(), expected.as_slice());
        assert_eq!(adams_op_sequence(0, 0, 3).unwrap().values(), &[q(1), q(0), q(0), q(0)]);
        assert_eq!(idempotent_sequence(0, -2, 2).unwrap().values(), &[q(0), q(0), q(1), q(0), q(0)]);
        assert!(matches!(idempotent_sequence(5, -2, 2), Err(Error::WindowMiss { .. })));
    }

    #[test]
    fn twisting_rules() {
        let e0 = TwistedLaurent::monomial(1, idempotent_sequence(0, -4, 4).unwrap());
        assert!(e0.mul(&e0).unwrap().is_zero());
        let beta = sequence_beta(1, -4, 4);
        for n in -3..=3 {
            let lhs = TwistedLaurent::monomial(0, idempotent_sequence(n + 1, -4, 4).unwrap()).mul(&beta).unwrap();
            let rhs = beta.mul(&TwistedLaurent::monomial(0, idempotent_sequence(n, -4, 4).unwrap())).unwrap();
            assert!(lhs.agrees_with(&rhs));
        }
        let act = eigenspace_action(&e0, 0).unwrap();
        assert_eq!(act, BTreeMap::from([(1, q(1))]));
    }

    #[test]
    fn tower_twist_matches_sequence_twist() {
        let t = TwistedLaurent::monomial(0, adams_op_tower(3, 2, 6, Coefficients::Rationals).unwrap());
        let b = tower_beta(1, 3, 6);
        let binv = tower_beta(-1, 3, 6);
        let conj = binv.mul(&t).unwrap().mul(&b).unwrap();
        let scaled = t.map(|c| Ok(c.scale(&q(3)))).unwrap();
        assert!(conj.agrees_with(&scaled));
    }

    #[test]
    fn iso_round_trip() {
        let t = adams_op_tower(2, 3, 6, Coefficients::Rationals).unwrap();
        let s = sequence_from_tower(&t);
        assert_eq!(s, adams_op_sequence(2, -3, 6).unwrap());
        assert_eq!(tower_from_sequence(&s).unwrap(), t);
        let e0 = idempotent_sequence(0, 0, 5).unwrap();
        let t0 = tower_from_sequence(&e0).unwrap();
        assert_eq!(t0.levels()[0], series(&[1, 0, 0, 0, 0, 0]));
    }
}
