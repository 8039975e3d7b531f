//! The rational Lazard ring, its universal law, and the truncated Hopf
//! algebroid of formal group laws with coordinate changes.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fgl::{fgl_exp, FormalGroupLaw};
use crate::poly::{partition_count, Poly, PolyRing};
use crate::ring::{Degrees, Ring};
use crate::series::TruncatedSeries1;

/// `Q[m_1, ..., m_k]` with `|m_i| = i`, truncated above degree `k`.
pub fn lazard_ring(k: usize) -> PolyRing {
    PolyRing::indexed(&["m"], k, Some(k as u32))
}

/// `t + m_1 t^2 + ... + m_k t^{k+1}` over `ring`, whose first `k`
/// generators must be the `m_i`.
fn log_series(ring: &PolyRing, k: usize) -> TruncatedSeries1<PolyRing> {
    TruncatedSeries1::from_fn(ring, k + 1, |i| match i {
        0 => ring.zero(),
        1 => ring.one(),
        _ => ring.gen(i - 2),
    })
}

/// `t + b_1 t^2 + ... + b_k t^{k+1}` where `b_i` is generator `offset + i - 1`.
fn coordinate_series(ring: &PolyRing, k: usize, offset: usize) -> TruncatedSeries1<PolyRing> {
    TruncatedSeries1::from_fn(ring, k + 1, |i| match i {
        0 => ring.zero(),
        1 => ring.one(),
        _ => ring.gen(offset + i - 2),
    })
}

/// The universal law at precision `n` over `Q[m_1, ..., m_{n-1}]`:
/// `ℓ⁻¹(ℓ(x) + ℓ(y))` with `ℓ(t) = t + Σ m_i t^{i+1}`.
pub fn universal_fgl(n: usize) -> Result<FormalGroupLaw<PolyRing>> {
    if n < 2 {
        return Err(Error::InsufficientPrecision {
            needed: 2,
            available: n,
        });
    }
    let ring = lazard_ring(n - 1);
    let grading: Degrees = ring
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.degree as i64))
        .collect();
    Ok(fgl_exp(&log_series(&ring, n - 1))?.with_grading(Some(grading)))
}

/// The classifying assignment `m_i ↦ [t^{i+1}] log_F(t)` for `i < N`.
pub fn classify_rational<R: Ring>(f: &FormalGroupLaw<R>) -> Result<Vec<R::Elem>> {
    let log = f.log()?;
    Ok((2..=f.precision()).map(|k| log.coeff(k).clone()).collect())
}

/// Push a law over a polynomial ring forward along `generator i ↦ images[i]`.
pub fn specialize<R: Ring>(
    f: &FormalGroupLaw<PolyRing>,
    target: &R,
    images: &[R::Elem],
) -> FormalGroupLaw<R> {
    let source = f.ring();
    let body = f
        .body()
        .map_ring(target, |c| source.substitute(c, target, images));
    FormalGroupLaw::mapped(body, f.validated())
}

/// `(L ⊗ Q, LB ⊗ Q)` truncated at degree `n`.
///
/// `Γ = Q[m_1..m_n, b_1..b_n]`; the arrow `(m, b)` runs from the law with
/// logarithm parameters `m` to its conjugate by `b(t) = t + Σ b_i t^{i+1}`.
/// Two-fold tensors live in `Q[m, bl, br]` and are composed as `br ∘ bl`.
#[derive(Clone, Debug, PartialEq)]
pub struct LazardAlgebroid {
    n: usize,
    base: PolyRing,
    gamma: PolyRing,
    tensor: PolyRing,
    triple: PolyRing,
    eta_r: Vec<Poly>,
    delta: Vec<Poly>,
}

impl LazardAlgebroid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "truncation degree must be positive");
        let bound = Some(n as u32);
        let base = lazard_ring(n);
        let gamma = PolyRing::indexed(&["m", "b"], n, bound);
        let tensor = PolyRing::indexed(&["m", "bl", "br"], n, bound);
        let triple = PolyRing::indexed(&["m", "b1_", "b2_", "b3_"], n, bound);
        let eta_r = right_unit_images(&gamma, n);
        // Δ(b)(t) = br(bl(t))
        let bl = coordinate_series(&tensor, n, n);
        let br = coordinate_series(&tensor, n, 2 * n);
        let comp = br.compose(&bl).expect("zero constant term");
        let delta = (2..=n + 1).map(|k| comp.coeff(k).clone()).collect();
        LazardAlgebroid {
            n,
            base,
            gamma,
            tensor,
            triple,
            eta_r,
            delta,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `A = Q[m_1..m_n]`.
    pub fn base(&self) -> &PolyRing {
        &self.base
    }

    /// `Γ = Q[m_1..m_n, b_1..b_n]`.
    pub fn gamma(&self) -> &PolyRing {
        &self.gamma
    }

    /// `Γ ⊗_A Γ = Q[m, bl, br]`.
    pub fn tensor(&self) -> &PolyRing {
        &self.tensor
    }

    /// `η_R(m_i)` for `i = 1..n`.
    pub fn eta_r(&self) -> &[Poly] {
        &self.eta_r
    }

    /// `Δ(b_i)` in `Q[m, bl, br]` for `i = 1..n`.
    pub fn delta(&self) -> &[Poly] {
        &self.delta
    }

    /// Replace `Δ(b_i)`; used to exercise the axiom checks on broken data.
    pub fn set_delta(&mut self, i: usize, p: Poly) {
        self.delta[i - 1] = p;
    }

    /// Replace `η_R(m_i)`.
    pub fn set_eta_r(&mut self, i: usize, p: Poly) {
        self.eta_r[i - 1] = p;
    }

    pub fn m(&self, i: usize) -> Poly {
        self.gamma.gen(i - 1)
    }

    pub fn b(&self, i: usize) -> Poly {
        self.gamma.gen(self.n + i - 1)
    }

    /// `η_R` applied to an element of `A`.
    pub fn right_unit(&self, a: &Poly) -> Poly {
        self.base.substitute(a, &self.gamma, &self.eta_r)
    }

    /// `η_L` applied to an element of `A`.
    pub fn left_unit(&self, a: &Poly) -> Poly {
        let images: Vec<Poly> = (1..=self.n).map(|i| self.m(i)).collect();
        self.base.substitute(a, &self.gamma, &images)
    }

    /// The counit `Γ → A`: `m ↦ m`, `b ↦ 0`.
    pub fn counit(&self, g: &Poly) -> Poly {
        let mut images: Vec<Poly> = (0..self.n).map(|i| self.base.gen(i)).collect();
        images.extend((0..self.n).map(|_| self.base.zero()));
        self.gamma.substitute(g, &self.base, &images)
    }

    /// Split a `Γ` exponent vector into its `m` and `b` parts.
    pub fn split(&self, mono: &[u32]) -> (Vec<u32>, Vec<u32>) {
        (mono[..self.n].to_vec(), mono[self.n..].to_vec())
    }

    pub fn b_monomials_up_to(&self, d: u32) -> Vec<Vec<u32>> {
        let b_ring = PolyRing::indexed(&["b"], self.n, None);
        (0..=d).flat_map(|k| b_ring.monomials_of_degree(k)).collect()
    }

    pub fn b_degree(&self, beta: &[u32]) -> u32 {
        beta.iter().enumerate().map(|(i, e)| (i as u32 + 1) * e).sum()
    }

    /// `Δ(b^α)` in the tensor ring.
    pub fn delta_of_monomial(&self, alpha: &[u32]) -> Poly {
        let mut acc = self.tensor.one();
        for (i, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                acc = self.tensor.mul(&acc, &self.delta[i]);
            }
        }
        acc
    }

    /// Images of `m_1..m_n, b_1..b_n` under `Γ → Γ⊗Γ` onto the left factor.
    fn left_embedding(&self) -> Vec<Poly> {
        let t = &self.tensor;
        (0..2 * self.n).map(|i| t.gen(i)).collect()
    }

    /// Onto the right factor, whose `m` is the left factor's `η_R(m)`.
    fn right_embedding(&self) -> Vec<Poly> {
        let t = &self.tensor;
        let left = self.left_embedding();
        let mut v: Vec<Poly> = self
            .eta_r
            .iter()
            .map(|p| self.gamma.substitute(p, t, &left))
            .collect();
        v.extend((0..self.n).map(|i| t.gen(2 * self.n + i)));
        v
    }

    pub fn check(&self) -> Vec<LawCheck> {
        let n = self.n;
        let g = &self.gamma;
        let t = &self.tensor;
        let mut out = Vec::new();

        // ε∘η_L = id and ε∘η_R = id on the m_i
        let mut first = None;
        let mut first_r = None;
        for i in 1..=n {
            let mi = self.base.gen(i - 1);
            if first.is_none() && self.counit(&self.left_unit(&mi)) != mi {
                first = Some(i);
            }
            if first_r.is_none() && self.counit(&self.eta_r[i - 1]) != mi {
                first_r = Some(i);
            }
        }
        out.push(LawCheck::from_failure("counit_of_left_unit", first.map(|i| (format!("m{i}"), i as u32))));
        out.push(LawCheck::from_failure("counit_of_right_unit", first_r.map(|i| (format!("m{i}"), i as u32))));

        // Δ on all generators: m ↦ left m, b_i ↦ delta[i]
        let mut delta_images: Vec<Poly> = (0..n).map(|i| t.gen(i)).collect();
        delta_images.extend(self.delta.iter().cloned());

        // (ε⊗id)Δ = id: bl ↦ 0, br ↦ b
        let mut eps_left: Vec<Poly> = (0..n).map(|i| g.gen(i)).collect();
        eps_left.extend((0..n).map(|_| g.zero()));
        eps_left.extend((0..n).map(|i| g.gen(n + i)));
        // (id⊗ε)Δ = id: bl ↦ b, br ↦ 0
        let mut eps_right: Vec<Poly> = (0..n).map(|i| g.gen(i)).collect();
        eps_right.extend((0..n).map(|i| g.gen(n + i)));
        eps_right.extend((0..n).map(|_| g.zero()));
        let mut fail_l = None;
        let mut fail_r = None;
        for i in 0..2 * n {
            let gen = g.gen(i);
            let d = &delta_images[i];
            if fail_l.is_none() && t.substitute(d, g, &eps_left) != gen {
                fail_l = Some(i);
            }
            if fail_r.is_none() && t.substitute(d, g, &eps_right) != gen {
                fail_r = Some(i);
            }
        }
        out.push(LawCheck::from_failure("left_counit", fail_l.map(|i| self.gen_label(i))));
        out.push(LawCheck::from_failure("right_counit", fail_r.map(|i| self.gen_label(i))));

        // coassociativity in Q[m, b1_, b2_, b3_]
        let tr = &self.triple;
        let ms: Vec<Poly> = (0..n).map(|i| tr.gen(i)).collect();
        let copy = |k: usize| -> Vec<Poly> { (0..n).map(|i| tr.gen(k * n + i)).collect() };
        let tensor_map = |l: Vec<Poly>, r: Vec<Poly>| -> Vec<Poly> {
            let mut v = ms.clone();
            v.extend(l);
            v.extend(r);
            v
        };
        let d12: Vec<Poly> = self.delta.iter().map(|p| t.substitute(p, tr, &tensor_map(copy(1), copy(2)))).collect();
        let d23: Vec<Poly> = self.delta.iter().map(|p| t.substitute(p, tr, &tensor_map(copy(2), copy(3)))).collect();
        let left_first = tensor_map(d12, copy(3));
        let right_first = tensor_map(copy(1), d23);
        let mut fail_c = None;
        for (i, p) in self.delta.iter().enumerate() {
            if t.substitute(p, tr, &left_first) != t.substitute(p, tr, &right_first) {
                fail_c = Some(n + i);
                break;
            }
        }
        out.push(LawCheck::from_failure("coassociativity", fail_c.map(|i| self.gen_label(i))));

        // Δ∘η_R = η_R of the right factor
        let right = self.right_embedding();
        let mut fail_d = None;
        for (i, p) in self.eta_r.iter().enumerate() {
            let lhs = g.substitute(p, t, &delta_images);
            let rhs = g.substitute(p, t, &right);
            if lhs != rhs {
                fail_d = Some(i);
                break;
            }
        }
        out.push(LawCheck::from_failure("comultiplication_of_right_unit", fail_d.map(|i| self.gen_label(i))));
        out
    }

    fn gen_label(&self, i: usize) -> (String, u32) {
        let gens = self.gamma.generators();
        (gens[i].name.clone(), gens[i].degree)
    }
}

/// `η_R(m_i)`: the classifying assignment of the universal law conjugated by
/// the universal coordinate change `b`.
fn right_unit_images(gamma: &PolyRing, n: usize) -> Vec<Poly> {
    let universal = universal_fgl(n + 1).expect("n + 1 ≥ 2");
    let embed: Vec<Poly> = (0..n).map(|i| gamma.gen(i)).collect();
    let f = specialize(&universal, gamma, &embed);
    let b = coordinate_series(gamma, n, n);
    let conj = f.change_coordinates(&b).expect("b'(0) = 1");
    classify_rational(&conj).expect("Q-algebra")
}

/// Outcome of one structural identity of a Hopf algebroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: &'static str,
    pub passed: bool,
    /// Offending generator and its degree.
    pub generator: Option<String>,
    pub degree: Option<u32>,
}

impl LawCheck {
    pub(crate) fn from_failure(law: &'static str, failure: Option<(String, u32)>) -> Self {
        match failure {
            None => LawCheck {
                law,
                passed: true,
                generator: None,
                degree: None,
            },
            Some((g, d)) => LawCheck {
                law,
                passed: false,
                generator: Some(g),
                degree: Some(d),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRank {
    pub degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub partitions: usize,
}

impl DegreeRank {
    pub fn full_rank(&self) -> bool {
        self.rank == self.source_dim && self.rank == self.target_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HqReport {
    pub max_degree: u32,
    pub degrees: Vec<DegreeRank>,
}

impl HqReport {
    pub fn passed(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.full_rank() && d.source_dim == d.partitions)
    }

    /// First degree with a rank deficit.
    pub fn first_deficit(&self) -> Option<u32> {
        self.degrees.iter().find(|d| !d.full_rank()).map(|d| d.degree)
    }
}

pub const HQ_MAX_DEGREE: usize = 8;

/// Base change of `η_R` along `m ↦ 0`, checked for invertibility degreewise.
pub fn hq_idempotence_check(n: usize) -> Result<HqReport> {
    if n == 0 || n > HQ_MAX_DEGREE {
        return Err(Error::Input(format!(
            "degree must lie in 1..={HQ_MAX_DEGREE}, got {n}"
        )));
    }
    let alg = LazardAlgebroid::new(n);
    Ok(hq_rank_report(&alg, alg.eta_r()))
}

/// Rank report for the map `Q[m] → Q[b]` sending `m_i` to
/// `images[i]` with every `m` set to zero.
pub fn hq_rank_report(alg: &LazardAlgebroid, images: &[Poly]) -> HqReport {
    let n = alg.degree();
    let b_ring = PolyRing::indexed(&["b"], n, Some(n as u32));
    let mut to_b: Vec<Poly> = (0..n).map(|_| b_ring.zero()).collect();
    to_b.extend((0..n).map(|i| b_ring.gen(i)));
    let reduced: Vec<Poly> = images
        .iter()
        .map(|p| alg.gamma().substitute(p, &b_ring, &to_b))
        .collect();
    let base = alg.base();
    let degrees = (1..=n as u32)
        .map(|d| {
            let src = base.monomials_of_degree(d);
            let tgt = b_ring.monomials_of_degree(d);
            let rows: Vec<Vec<BigRational>> = src
                .iter()
                .map(|mono| {
                    let img = base.substitute(&base.monomial(mono.clone(), BigRational::one()), &b_ring, &reduced);
                    let part = b_ring.homogeneous_part(&img, d);
                    tgt.iter()
                        .map(|t| part.terms.get(t).cloned().unwrap_or_else(BigRational::zero))
                        .collect()
                })
                .collect();
            DegreeRank {
                degree: d,
                source_dim: src.len(),
                target_dim: tgt.len(),
                rank: rank(rows),
                partitions: partition_count(d),
            }
        })
        .collect();
    HqReport {
        max_degree: n as u32,
        degrees,
    }
}

/// Exact rank by Gaussian elimination.
pub(crate) fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn universal_degree_two() {
        let f = universal_fgl(2).unwrap();
        let r = f.ring();
        let m1 = r.variable("m1").unwrap();
        assert_eq!(f.coefficient(1, 1), &r.scale(&m1, &q(-2, 1)));
        assert!(f.grade_check(f.grading().unwrap()));
        let iota = f.formal_inverse();
        assert_eq!(iota.coeff(1), &r.from_i64(-1));
        // ℓ⁻¹(−ℓ(x)) = −x − 2m1x² + O(x³)
        assert_eq!(iota.coeff(2), &r.scale(&m1, &q(-2, 1)));
    }

    #[test]
    fn universal_specializes_to_additive() {
        let f = universal_fgl(5).unwrap();
        let z = CoefficientRing::Integers;
        let zeros = vec![z.zero(); 4];
        let g = specialize(&f, &z, &zeros);
        assert_eq!(g.body(), FormalGroupLaw::additive(&z, 5).body());
    }

    #[test]
    fn classification_round_trip() {
        let f = universal_fgl(5).unwrap();
        let m = classify_rational(&f).unwrap();
        let r = f.ring();
        for (i, mi) in m.iter().enumerate() {
            assert_eq!(mi, &r.gen(i));
        }
    }

    #[test]
    fn right_unit_is_log_after_inverse_coordinate() {
        // log of the conjugate law is ℓ ∘ b⁻¹
        let n = 5;
        let alg = LazardAlgebroid::new(n);
        let g = alg.gamma();
        let b = coordinate_series(g, n, n);
        let conj = log_series(g, n).compose(&b.revert().unwrap()).unwrap();
        for k in 2..=n + 1 {
            assert_eq!(conj.coeff(k), &alg.eta_r()[k - 2]);
        }
    }

    #[test]
    fn low_degree_structure() {
        let alg = LazardAlgebroid::new(3);
        let g = alg.gamma();
        // η_R(m1) = m1 - b1
        assert_eq!(alg.eta_r()[0], g.sub(&alg.m(1), &alg.b(1)));
        let t = alg.tensor();
        let expected = t.add(&t.variable("bl1").unwrap(), &t.variable("br1").unwrap());
        assert_eq!(alg.delta()[0], expected);
        assert!(alg.check().iter().all(|c| c.passed));
    }

    #[test]
    fn corrupted_comultiplication_fails_counit() {
        let mut alg = LazardAlgebroid::new(3);
        let bl1 = alg.tensor().variable("bl1").unwrap();
        alg.set_delta(1, bl1);
        let checks = alg.check();
        let left = checks.iter().find(|c| c.law == "left_counit").unwrap();
        assert!(!left.passed);
        assert_eq!(left.generator.as_deref(), Some("b1"));
        assert_eq!(left.degree, Some(1));
    }

    #[test]
    fn exact_rank() {
        let rows = vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(0, 1), q(1, 2), q(1, 1)],
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn hq_low_degrees() {
        let rep = hq_idempotence_check(3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.degrees[2].source_dim, 3);
        let alg = LazardAlgebroid::new(3);
        let mut images = alg.eta_r().to_vec();
        images[0] = alg.gamma().zero();
        assert_eq!(hq_rank_report(&alg, &images).first_deficit(), Some(1));
    }
}
