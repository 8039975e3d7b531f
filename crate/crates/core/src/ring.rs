//! The ring interface every algorithm in this crate is generic over.
//!
//! A [`Ring`] is a context object: elements carry no ring data of their own and
//! every operation goes through the ring. This lets one series or FGL type work
//! over the dynamic [`CoefficientRing`](crate::coeff::CoefficientRing) family,
//! over graded polynomial rings, and over plain rationals.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Degree assignment for named generators, used for grading checks.
pub type Degrees = BTreeMap<String, i64>;

/// Result of asking for the degree of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero element, homogeneous of every degree.
    Zero,
    Degree(i64),
    Inhomogeneous,
}

impl Homogeneity {
    /// True if this is zero or homogeneous of exactly `d`.
    pub fn is_degree(self, d: i64) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Degree(e) => e == d,
            Homogeneity::Inhomogeneous => false,
        }
    }
}

/// A commutative ring with canonical element representations.
///
/// Implementations must keep elements in canonical form so that derived
/// equality on `Elem` agrees with equality in the ring.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse when `a` is a unit and the routine can decide it.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Exact division by a positive integer, `None` when no quotient exists
    /// or it is not unique.
    fn div_int(&self, a: &Self::Elem, n: u64) -> Option<Self::Elem>;

    /// True if every positive integer is invertible.
    fn is_q_algebra(&self) -> bool;

    /// The element named `name`, if it is a generator of this ring.
    fn variable(&self, name: &str) -> Option<Self::Elem>;

    /// Print in the expression grammar understood by [`crate::expr`].
    fn format(&self, a: &Self::Elem) -> String;

    /// Degree of `a` under `degrees`; generators missing from the map fall back
    /// to the ring's own grading (or degree 0).
    fn homogeneity(&self, a: &Self::Elem, degrees: &Degrees) -> Homogeneity;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Image of a rational number, when its denominator is invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let numer = self.from_bigint(q.numer());
        if q.denom().is_one() {
            return Some(numer);
        }
        let den = self.from_bigint(q.denom());
        let inv = self.inverse(&den)?;
        Some(self.mul(&numer, &inv))
    }

    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }

    /// `a^e`; negative exponents need `a` to be a unit.
    fn pow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        let base = if e < 0 { self.inverse(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The field of rationals with `BigRational` elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn div_int(&self, a: &BigRational, n: u64) -> Option<BigRational> {
        (n != 0).then(|| a / BigRational::from_integer(BigInt::from(n)))
    }
    fn is_q_algebra(&self) -> bool {
        true
    }
    fn variable(&self, _name: &str) -> Option<BigRational> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn homogeneity(&self, a: &BigRational, _degrees: &Degrees) -> Homogeneity {
        if a.is_zero() {
            Homogeneity::Zero
        } else {
            Homogeneity::Degree(0)
        }
    }
}

/// Canonical `p/q` (or `p`) string for a rational.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse the canonical `p/q` form back (also accepts plain integers).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// True if the rational is an integer.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one() || q.denom().abs().is_one()
}
