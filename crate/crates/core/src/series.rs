//! Truncated power series in one and two variables over any [`Ring`].
//!
//! A one-variable series of precision `N` knows the coefficients of
//! `x^0..=x^N`; a two-variable series of precision `N` knows every `x^i y^j`
//! with `i + j ≤ N`. Every operation computes the precision its result is
//! actually determined to and never reports coefficients beyond it.

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries1<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
}

fn check_rings<R: Ring>(a: &R, b: &R) -> Result<()> {
    if a != b {
        return Err(Error::RingMismatch {
            left: format!("{a:?}"),
            right: format!("{b:?}"),
        });
    }
    Ok(())
}

/// Ring-checked sum or product, at the smaller of the two precisions.
pub fn series_arith<R: Ring>(
    f: &TruncatedSeries1<R>,
    g: &TruncatedSeries1<R>,
    op: SeriesOp,
) -> Result<TruncatedSeries1<R>> {
    check_rings(&f.ring, &g.ring)?;
    Ok(match op {
        SeriesOp::Add => f.add(g),
        SeriesOp::Mul => f.mul(g),
    })
}

/// Ring-checked sum or product of bivariate series.
pub fn series2_arith<R: Ring>(
    f: &TruncatedSeries2<R>,
    g: &TruncatedSeries2<R>,
    op: SeriesOp,
) -> Result<TruncatedSeries2<R>> {
    check_rings(&f.ring, &g.ring)?;
    Ok(match op {
        SeriesOp::Add => f.add(g),
        SeriesOp::Mul => f.mul(g),
    })
}

impl<R: Ring> TruncatedSeries1<R> {
    /// Series from coefficients `c_0..=c_N`; `coeffs` must be nonempty.
    pub fn new(ring: &R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries1 {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn from_fn(ring: &R, precision: usize, f: impl FnMut(usize) -> R::Elem) -> Self {
        Self::new(ring, (0..=precision).map(f).collect())
    }

    pub fn zero(ring: &R, precision: usize) -> Self {
        Self::from_fn(ring, precision, |_| ring.zero())
    }

    pub fn one(ring: &R, precision: usize) -> Self {
        Self::constant(ring, ring.one(), precision)
    }

    pub fn constant(ring: &R, c: R::Elem, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(ring: &R, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        if precision >= 1 {
            s.coeffs[1] = ring.one();
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R::Elem {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: R::Elem) {
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision <= self.precision(), "cannot raise precision");
        Self::new(&self.ring, self.coeffs[..=precision].to_vec())
    }

    /// Agreement on the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|(a, b)| a == b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        Self::from_fn(&self.ring, n, |i| {
            self.ring.add(&self.coeffs[i], &other.coeffs[i])
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        Self::from_fn(&self.ring, n, |i| {
            self.ring.sub(&self.coeffs[i], &other.coeffs[i])
        })
    }

    pub fn neg(&self) -> Self {
        Self::new(
            &self.ring,
            self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        )
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::new(
            &self.ring,
            self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let r = &self.ring;
        let mut out = vec![r.zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if r.is_zero(b) {
                    continue;
                }
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Self::new(r, out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.ring, self.precision());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1/f` when the constant term is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let r = &self.ring;
        let c0inv = r.inverse(&self.coeffs[0])?;
        let n = self.precision();
        let mut out: Vec<R::Elem> = Vec::with_capacity(n + 1);
        out.push(c0inv.clone());
        for k in 1..=n {
            let mut s = r.zero();
            for i in 1..=k {
                s = r.add(&s, &r.mul(&self.coeffs[i], &out[k - i]));
            }
            out.push(r.neg(&r.mul(&s, &c0inv)));
        }
        Some(Self::new(r, out))
    }

    /// `f(g(x))`, requiring `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !self.ring.is_zero(&g.coeffs[0]) {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.precision().min(g.precision());
        let g = g.truncate(n);
        // Horner: (((c_n g + c_{n-1}) g + ...) g + c_0)
        let mut acc = Self::constant(&self.ring, self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &self.coeffs[i]);
        }
        Ok(acc)
    }

    /// Compositional inverse: `g` with `f(g(x)) = g(f(x)) = x`.
    ///
    /// Solves `Σ g_k f^k = x` one coefficient at a time; the coefficient of
    /// `x^n` in `f^n` is `f_1^n`, a unit, so the system is triangular over any
    /// commutative ring.
    pub fn revert(&self) -> Result<Self> {
        let r = &self.ring;
        if !r.is_zero(&self.coeffs[0]) {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.precision();
        if n == 0 {
            return Ok(Self::zero(r, 0));
        }
        let f1inv = r
            .inverse(&self.coeffs[1])
            .ok_or(Error::NonUnitLinearCoefficient)?;
        let mut powers = vec![Self::one(r, n)];
        for k in 1..=n {
            powers.push(powers[k - 1].mul(self));
        }
        let mut g = vec![r.zero(); n + 1];
        let mut f1inv_pow = r.one();
        for m in 1..=n {
            f1inv_pow = r.mul(&f1inv_pow, &f1inv);
            let target = if m == 1 { r.one() } else { r.zero() };
            let mut s = r.zero();
            for k in 1..m {
                s = r.add(&s, &r.mul(&g[k], powers[k].coeff(m)));
            }
            g[m] = r.mul(&r.sub(&target, &s), &f1inv_pow);
        }
        Ok(Self::new(r, g))
    }

    /// `df/dx`, one coefficient less precise. Needs precision at least 1.
    pub fn derive(&self) -> Self {
        let n = self.precision();
        assert!(n >= 1, "derivative of a precision-0 series carries no information");
        Self::from_fn(&self.ring, n - 1, |i| {
            self.ring.scale_int(&self.coeffs[i + 1], (i + 1) as i64)
        })
    }

    /// Termwise antiderivative with zero constant term, one coefficient more
    /// precise. Fails when some `c_i / (i+1)` does not exist in the ring.
    pub fn integrate(&self) -> Result<Self> {
        let r = &self.ring;
        let mut out = vec![r.zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(
                r.div_int(c, (i + 1) as u64)
                    .ok_or(Error::Inconsistent { index: i + 1 })?,
            );
        }
        Ok(Self::new(r, out))
    }

    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> TruncatedSeries1<S> {
        TruncatedSeries1::new(target, self.coeffs.iter().map(f).collect())
    }

    /// `f(x)` viewed as a bivariate series in `x`.
    pub fn in_x(&self) -> TruncatedSeries2<R> {
        let n = self.precision();
        let mut s = TruncatedSeries2::zero(&self.ring, n);
        for i in 0..=n {
            s.set(i, 0, self.coeffs[i].clone());
        }
        s
    }

    /// `f(y)` viewed as a bivariate series in `y`.
    pub fn in_y(&self) -> TruncatedSeries2<R> {
        self.in_x().swap()
    }

    /// Human-readable form with its error term, e.g. `2x - beta*x^2 + O(x^9)`.
    pub fn display(&self, var: &str) -> String {
        format!("{} + O({var}^{})", self.display_terms(var), self.precision() + 1)
    }

    /// The nonzero terms only, e.g. `2x - beta*x^2`.
    pub fn display_terms(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(format_term(&self.ring.format(c), &mono));
        }
        crate::coeff::join_terms(&parts)
    }
}

/// `coeff*mono` with the conventions of the series display: bare integers are
/// juxtaposed (`2x`), anything else is joined with `*`.
pub(crate) fn format_term(cs: &str, mono: &str) -> String {
    if mono.is_empty() {
        return cs.to_string();
    }
    if cs == "1" {
        return mono.to_string();
    }
    if cs == "-1" {
        return format!("-{mono}");
    }
    let plain_int = cs
        .strip_prefix('-')
        .unwrap_or(cs)
        .chars()
        .all(|c| c.is_ascii_digit());
    if plain_int {
        format!("{cs}{mono}")
    } else if crate::coeff::is_compound(cs) {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

/// Bivariate series truncated by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries2<R: Ring> {
    ring: R,
    precision: usize,
    /// `rows[i][j]` is the coefficient of `x^i y^j`, `j ≤ precision - i`.
    rows: Vec<Vec<R::Elem>>,
}

impl<R: Ring> TruncatedSeries2<R> {
    pub fn zero(ring: &R, precision: usize) -> Self {
        TruncatedSeries2 {
            ring: ring.clone(),
            precision,
            rows: (0..=precision)
                .map(|i| vec![ring.zero(); precision - i + 1])
                .collect(),
        }
    }

    pub fn one(ring: &R, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        s.set(0, 0, ring.one());
        s
    }

    pub fn from_fn(ring: &R, precision: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        TruncatedSeries2 {
            ring: ring.clone(),
            precision,
            rows: (0..=precision)
                .map(|i| (0..=precision - i).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: R::Elem) {
        self.rows[i][j] = c;
    }

    /// `(i, j, coefficient)` for every nonzero coefficient.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, usize, &R::Elem)> {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .filter(move |(_, c)| !self.ring.is_zero(c))
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision <= self.precision);
        Self::from_fn(&self.ring, precision, |i, j| self.rows[i][j].clone())
    }

    pub fn swap(&self) -> Self {
        Self::from_fn(&self.ring, self.precision, |i, j| self.rows[j][i].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        Self::from_fn(&self.ring, n, |i, j| {
            self.ring.add(&self.rows[i][j], &other.rows[i][j])
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        Self::from_fn(&self.ring, n, |i, j| {
            self.ring.sub(&self.rows[i][j], &other.rows[i][j])
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_fn(&self.ring, self.precision, |i, j| {
            self.ring.mul(c, &self.rows[i][j])
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        let r = &self.ring;
        let mut out = Self::zero(r, n);
        let b_terms: Vec<_> = other.nonzero_terms().filter(|(i, j, _)| i + j <= n).collect();
        for (i1, j1, a) in self.nonzero_terms() {
            if i1 + j1 > n {
                continue;
            }
            for (i2, j2, b) in &b_terms {
                if i1 + j1 + i2 + j2 > n {
                    continue;
                }
                let (i, j) = (i1 + i2, j1 + j2);
                out.rows[i][j] = r.add(&out.rows[i][j], &r.mul(a, b));
            }
        }
        out
    }

    /// `f(self)` for a one-variable `f`; requires zero constant term.
    pub fn compose_into(&self, f: &TruncatedSeries1<R>) -> Result<Self> {
        if !self.ring.is_zero(&self.rows[0][0]) {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.precision.min(f.precision());
        let g = self.truncate(n);
        let mut acc = Self::zero(&self.ring, n);
        acc.rows[0][0] = f.coeff(n).clone();
        for k in (0..n).rev() {
            acc = acc.mul(&g);
            acc.rows[0][0] = self.ring.add(&acc.rows[0][0], f.coeff(k));
        }
        Ok(acc)
    }

    /// `F(f(x), g(x))`; requires `f(0) = g(0) = 0`.
    pub fn evaluate(&self, f: &TruncatedSeries1<R>, g: &TruncatedSeries1<R>) -> Result<TruncatedSeries1<R>> {
        let r = &self.ring;
        if !r.is_zero(f.coeff(0)) || !r.is_zero(g.coeff(0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.precision.min(f.precision()).min(g.precision());
        let f = f.truncate(n);
        let g = g.truncate(n);
        let mut fp = vec![TruncatedSeries1::one(r, n)];
        let mut gp = vec![TruncatedSeries1::one(r, n)];
        for k in 1..=n {
            fp.push(fp[k - 1].mul(&f));
            gp.push(gp[k - 1].mul(&g));
        }
        let mut acc = TruncatedSeries1::zero(r, n);
        for (i, j, c) in self.nonzero_terms() {
            if i + j > n {
                continue;
            }
            acc = acc.add(&fp[i].mul(&gp[j]).scale(c));
        }
        Ok(acc)
    }

    /// Substitute `x ↦ f(x)` and `y ↦ g(y)` (separate variables).
    pub fn substitute_separately(
        &self,
        f: &TruncatedSeries1<R>,
        g: &TruncatedSeries1<R>,
    ) -> Result<Self> {
        let r = &self.ring;
        if !r.is_zero(f.coeff(0)) || !r.is_zero(g.coeff(0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.precision.min(f.precision()).min(g.precision());
        let mut fp = vec![TruncatedSeries1::one(r, n)];
        let mut gp = vec![TruncatedSeries1::one(r, n)];
        for k in 1..=n {
            fp.push(fp[k - 1].mul(&f.truncate(n)));
            gp.push(gp[k - 1].mul(&g.truncate(n)));
        }
        let mut out = Self::zero(r, n);
        for (i, j, c) in self.nonzero_terms() {
            if i + j > n {
                continue;
            }
            // x-powers of f^i start at x^i, y-powers of g^j at y^j
            for a in i..=n - j {
                let fa = fp[i].coeff(a);
                if r.is_zero(fa) {
                    continue;
                }
                let ca = r.mul(c, fa);
                for b in j..=n - a {
                    let gb = gp[j].coeff(b);
                    if r.is_zero(gb) {
                        continue;
                    }
                    out.rows[a][b] = r.add(&out.rows[a][b], &r.mul(&ca, gb));
                }
            }
        }
        Ok(out)
    }

    /// `∂F/∂y (x, 0)`, precision one less.
    pub fn partial_y_at_zero(&self) -> TruncatedSeries1<R> {
        assert!(self.precision >= 1);
        TruncatedSeries1::from_fn(&self.ring, self.precision - 1, |i| self.rows[i][1].clone())
    }

    /// Coefficients of `x^i` in `F(x, 0)`.
    pub fn restrict_y_zero(&self) -> TruncatedSeries1<R> {
        TruncatedSeries1::from_fn(&self.ring, self.precision, |i| self.rows[i][0].clone())
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.precision.min(other.precision);
        (0..=n).all(|i| (0..=n - i).all(|j| self.rows[i][j] == other.rows[i][j]))
    }

    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> TruncatedSeries2<S> {
        TruncatedSeries2::from_fn(target, self.precision, |i, j| f(&self.rows[i][j]))
    }

    /// Human-readable form such as `x + y - beta*x*y`.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for d in 0..=self.precision {
            for i in (0..=d).rev() {
                let j = d - i;
                let c = &self.rows[i][j];
                if self.ring.is_zero(c) {
                    continue;
                }
                let mut mono = Vec::new();
                match i {
                    0 => {}
                    1 => mono.push("x".to_string()),
                    _ => mono.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push("y".to_string()),
                    _ => mono.push(format!("y^{j}")),
                }
                parts.push(format_term(&self.ring.format(c), &mono.join("*")));
            }
        }
        let mut s = crate::coeff::join_terms(&parts);
        s.push_str(&format!(" + O({})", self.precision + 1));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use crate::ring::Rationals;
    use num_rational::BigRational;

    fn zs(c: &[i64]) -> TruncatedSeries1<CoefficientRing> {
        let z = CoefficientRing::Integers;
        TruncatedSeries1::new(&z, c.iter().map(|&v| z.from_i64(v)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let p = zs(&[1, 1, 0, 0, 0]).mul(&zs(&[1, -1, 0, 0, 0]));
        assert_eq!(p, zs(&[1, 0, -1, 0, 0]));
    }

    #[test]
    fn square_of_x_plus_x2() {
        let f = zs(&[0, 1, 1, 0]);
        assert_eq!(f.mul(&f), zs(&[0, 0, 1, 2]));
    }

    #[test]
    fn laurent_scalar_multiple() {
        let r = CoefficientRing::laurent_integers("beta");
        let b = r.variable("beta").unwrap();
        let f = TruncatedSeries1::new(&r, vec![r.zero(), r.one(), r.neg(&b)]);
        let g = f.scale(&b);
        assert_eq!(g.coeff(1), &b);
        assert_eq!(g.coeff(2), &r.neg(&r.mul(&b, &b)));
    }

    #[test]
    fn compositions() {
        // x^2 ∘ (x + x^3) = x^2 + 2x^4
        let f = zs(&[0, 0, 1, 0, 0]);
        let g = zs(&[0, 1, 0, 1, 0]);
        assert_eq!(f.compose(&g).unwrap(), zs(&[0, 0, 1, 0, 2]));
        // identity substitution
        let h = zs(&[3, -1, 4, 1, -5]);
        assert_eq!(h.compose(&zs(&[0, 1, 0, 0, 0])).unwrap(), h);
        // geometric series in x^2
        let geo = zs(&[1, 1, 1, 1, 1]);
        assert_eq!(geo.compose(&zs(&[0, 0, 1, 0, 0])).unwrap(), zs(&[1, 0, 1, 0, 1]));
        assert!(matches!(h.compose(&h), Err(Error::NonzeroConstantTerm)));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(zs(&[0, 1, 0, 0]).revert().unwrap(), zs(&[0, 1, 0, 0]));
        // frozen from the coefficientwise solve: x - x^2 + 2x^3 - 5x^4
        let r = zs(&[0, 1, 1, 0, 0]).revert().unwrap();
        assert_eq!(r, zs(&[0, 1, -1, 2, -5]));
        assert_eq!(zs(&[0, 1, 1, 0, 0]).compose(&r).unwrap(), zs(&[0, 1, 0, 0, 0]));

        let lb = CoefficientRing::laurent_integers("beta");
        let b = lb.variable("beta").unwrap();
        let f = TruncatedSeries1::new(&lb, vec![lb.zero(), lb.one(), b.clone(), lb.zero()]);
        let g = f.revert().unwrap();
        let b2 = lb.mul(&b, &b);
        assert_eq!(
            g.coeffs(),
            &[lb.zero(), lb.one(), lb.neg(&b), lb.scale_int(&b2, 2)]
        );
        assert!(matches!(
            zs(&[0, 2, 1]).revert(),
            Err(Error::NonUnitLinearCoefficient)
        ));
    }

    #[test]
    fn derivatives() {
        assert_eq!(zs(&[0, 0, 0, 1]).derive(), zs(&[0, 0, 3]));
        assert_eq!(zs(&[1, 0, 0]).derive(), zs(&[0, 0]));
        let q = Rationals;
        let f = TruncatedSeries1::from_fn(&q, 5, |n| {
            if n == 0 {
                BigRational::from_integer(0.into())
            } else {
                BigRational::new(1.into(), (n as i64).into())
            }
        });
        let d = f.derive();
        assert_eq!(d.precision(), 4);
        assert!(d.coeffs().iter().all(|c| *c == BigRational::from_integer(1.into())));
    }

    #[test]
    fn integration_over_z_can_fail() {
        assert!(zs(&[1, 1]).integrate().is_err());
        assert_eq!(zs(&[1, 2, 3]).integrate().unwrap(), zs(&[0, 1, 1, 1]));
    }

    #[test]
    fn bivariate_evaluation() {
        let z = CoefficientRing::Integers;
        // F = x + y + xy, F(x, x) = 2x + x^2
        let mut f = TruncatedSeries2::zero(&z, 4);
        f.set(1, 0, z.one());
        f.set(0, 1, z.one());
        f.set(1, 1, z.one());
        let x = TruncatedSeries1::x(&z, 4);
        assert_eq!(f.evaluate(&x, &x).unwrap(), zs(&[0, 2, 1, 0, 0]));
        assert_eq!(f.display(), "x + y + x*y + O(5)");
    }
}
