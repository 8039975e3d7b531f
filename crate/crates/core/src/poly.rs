//! Graded polynomial rings over `Q` on named generators of positive degree.
//!
//! These carry the rational Lazard ring `Q[m_1, m_2, ...]` and the coordinate
//! change parameters `b_1, b_2, ...`. An optional degree bound drops every
//! monomial of weighted degree above it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{is_compound, join_terms};
use crate::ring::{format_rational, Degrees, Homogeneity, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Exponent vector, one entry per generator.
pub type Monomial = Vec<u32>;

/// Polynomial as a map from exponent vectors to nonzero rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self, n_gens: usize) -> BigRational {
        self.terms
            .get(&vec![0; n_gens])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    gens: Arc<Vec<Generator>>,
    max_degree: Option<u32>,
}

impl PolyRing {
    pub fn new(gens: Vec<Generator>, max_degree: Option<u32>) -> Self {
        PolyRing {
            gens: Arc::new(gens),
            max_degree,
        }
    }

    /// Generators `prefix1, ..., prefix{n}` with `|prefix i| = i`.
    pub fn indexed(prefixes: &[&str], n: usize, max_degree: Option<u32>) -> Self {
        let gens = prefixes
            .iter()
            .flat_map(|p| {
                (1..=n).map(move |i| Generator {
                    name: format!("{p}{i}"),
                    degree: i as u32,
                })
            })
            .collect();
        PolyRing::new(gens, max_degree)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.max_degree
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn gen(&self, i: usize) -> Poly {
        let mut m = vec![0; self.n_gens()];
        m[i] = 1;
        self.monomial(m, BigRational::one())
    }

    pub fn monomial(&self, m: Monomial, c: BigRational) -> Poly {
        let mut p = Poly::default();
        if !c.is_zero() && self.within_bound(&m) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn constant(&self, c: BigRational) -> Poly {
        self.monomial(vec![0; self.n_gens()], c)
    }

    pub fn monomial_degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(self.gens.iter()).map(|(e, g)| e * g.degree).sum()
    }

    fn within_bound(&self, m: &[u32]) -> bool {
        self.max_degree
            .is_none_or(|d| self.monomial_degree(m) <= d)
    }

    /// Largest weighted degree among the terms (`None` for zero).
    pub fn degree(&self, p: &Poly) -> Option<u32> {
        p.terms.keys().map(|m| self.monomial_degree(m)).max()
    }

    pub fn scale(&self, p: &Poly, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: p.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// The part of `p` of weighted degree exactly `d`.
    pub fn homogeneous_part(&self, p: &Poly, d: u32) -> Poly {
        Poly {
            terms: p
                .terms
                .iter()
                .filter(|(m, _)| self.monomial_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Ring map into `target` sending generator `i` to `images[i]`.
    pub fn substitute<T: Ring>(&self, p: &Poly, target: &T, images: &[T::Elem]) -> T::Elem {
        assert_eq!(images.len(), self.n_gens());
        // cache powers per generator
        let mut powers: Vec<Vec<T::Elem>> = vec![vec![target.one()]; self.n_gens()];
        let mut acc = target.zero();
        for (m, c) in &p.terms {
            let mut term = target
                .from_rational(c)
                .expect("target ring must contain the rational coefficients");
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = target.mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                term = target.mul(&term, &powers[i][e as usize]);
            }
            acc = target.add(&acc, &term);
        }
        acc
    }

    /// Monomials of weighted degree exactly `d`, in lexicographic order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn go(gens: &[Generator], i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i == gens.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let g = gens[i].degree;
            let mut e = 0;
            while e * g <= left {
                cur[i] = e;
                go(gens, i + 1, left - e * g, cur, out);
                if g == 0 {
                    break;
                }
                e += 1;
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![0; self.n_gens()];
        go(&self.gens, 0, d, &mut cur, &mut out);
        out
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(self.gens.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| {
                if *e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::default()
    }

    fn one(&self) -> Poly {
        self.constant(BigRational::one())
    }

    fn from_bigint(&self, n: &BigInt) -> Poly {
        self.constant(BigRational::from_integer(n.clone()))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            match out.terms.get_mut(m) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        out.terms.remove(m);
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        out
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        let bound = self.max_degree;
        let b_deg: Vec<(u32, &Monomial, &BigRational)> = b
            .terms
            .iter()
            .map(|(m, c)| (self.monomial_degree(m), m, c))
            .collect();
        for (ma, ca) in &a.terms {
            let da = self.monomial_degree(ma);
            for (db, mb, cb) in &b_deg {
                if bound.is_some_and(|d| da + db > d) {
                    continue;
                }
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                let p = ca * *cb;
                match out.get_mut(&m) {
                    Some(x) => *x += p,
                    None => {
                        out.insert(m, p);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly { terms: out }
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.terms.is_empty()
    }

    fn inverse(&self, a: &Poly) -> Option<Poly> {
        if a.terms.len() != 1 {
            return None;
        }
        let (m, c) = a.terms.iter().next().unwrap();
        (m.iter().all(|&e| e == 0)).then(|| self.constant(c.recip()))
    }

    fn div_int(&self, a: &Poly, n: u64) -> Option<Poly> {
        (n != 0).then(|| self.scale(a, &BigRational::new(BigInt::one(), BigInt::from(n))))
    }

    fn is_q_algebra(&self) -> bool {
        true
    }

    fn variable(&self, name: &str) -> Option<Poly> {
        self.index_of(name).map(|i| self.gen(i))
    }

    fn format(&self, a: &Poly) -> String {
        // highest degree first, then lexicographic
        let mut entries: Vec<_> = a.terms.iter().collect();
        entries.sort_by(|(m1, _), (m2, _)| {
            self.monomial_degree(m2)
                .cmp(&self.monomial_degree(m1))
                .then_with(|| m2.cmp(m1))
        });
        let parts: Vec<String> = entries
            .into_iter()
            .map(|(m, c)| {
                let mono = self.format_monomial(m);
                let cs = format_rational(c);
                if mono == "1" {
                    cs
                } else if cs == "1" {
                    mono
                } else if cs == "-1" {
                    format!("-{mono}")
                } else if is_compound(&cs) {
                    format!("({cs})*{mono}")
                } else {
                    format!("{cs}*{mono}")
                }
            })
            .collect();
        join_terms(&parts)
    }

    fn homogeneity(&self, a: &Poly, degrees: &Degrees) -> Homogeneity {
        let mut acc = Homogeneity::Zero;
        for m in a.terms.keys() {
            let d: i64 = m
                .iter()
                .zip(self.gens.iter())
                .map(|(e, g)| *e as i64 * degrees.get(&g.name).copied().unwrap_or(g.degree as i64))
                .sum();
            acc = match acc {
                Homogeneity::Zero => Homogeneity::Degree(d),
                Homogeneity::Degree(x) if x == d => acc,
                _ => return Homogeneity::Inhomogeneous,
            };
        }
        acc
    }
}

/// Number of partitions of `n` (direct recursion on the largest part).
pub fn partition_count(n: u32) -> usize {
    fn go(n: u32, max_part: u32) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|k| go(n - k, k)).sum()
    }
    go(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_series_matches_partitions() {
        let r = PolyRing::indexed(&["m"], 8, None);
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for d in 0..=8u32 {
            assert_eq!(r.monomials_of_degree(d).len(), expected[d as usize]);
            assert_eq!(partition_count(d), expected[d as usize]);
        }
    }

    #[test]
    fn truncation_drops_high_degree() {
        let r = PolyRing::indexed(&["m"], 3, Some(3));
        let m1 = r.gen(0);
        let m2 = r.gen(1);
        let p = r.mul(&m1, &m2);
        assert_eq!(r.degree(&p), Some(3));
        assert!(r.is_zero(&r.mul(&p, &m1)));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let r = PolyRing::indexed(&["m"], 2, None);
        let m1 = r.gen(0);
        let m2 = r.gen(1);
        let p = r.add(&r.mul(&m1, &m1), &r.scale(&m2, &BigRational::from_integer(3.into())));
        let q = crate::ring::Rationals;
        let v = r.substitute(
            &p,
            &q,
            &[BigRational::from_integer(2.into()), BigRational::new(1.into(), 3.into())],
        );
        assert_eq!(v, BigRational::from_integer(5.into()));
    }

    #[test]
    fn format_is_canonical() {
        let r = PolyRing::indexed(&["m", "b"], 2, None);
        let m1 = r.variable("m1").unwrap();
        let b1 = r.variable("b1").unwrap();
        let p = r.sub(&r.mul(&m1, &b1), &r.scale(&m1, &BigRational::new(1.into(), 2.into())));
        assert_eq!(r.format(&p), "m1*b1 - 1/2*m1");
    }
}
