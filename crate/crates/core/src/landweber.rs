//! Stagewise regular-sequence test for `(v_0, v_1, ...)` on a cyclic module.

use rayon::prelude::*;

use crate::coeff::{
    is_prime_u64, is_zero_ring, quotient_by_element, quotient_map, zero_divisor_witness, CoefficientRing, Value,
};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::ring::{Homogeneity, Ring};

/// The module `M`: the ring itself or `R/(g)`.
#[derive(Clone, Debug, PartialEq)]
pub enum LandweberModule {
    SelfModule,
    CyclicQuotient(Value),
}

#[derive(Clone, Debug)]
pub struct LandweberInput {
    pub fgl: FormalGroupLaw<CoefficientRing>,
    pub module: LandweberModule,
    pub primes: Vec<u64>,
    pub max_height: u32,
    pub precision: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageStatus {
    Injective,
    Fails,
    QuotientZero,
}

impl StageStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StageStatus::Injective => "injective",
            StageStatus::Fails => "fails",
            StageStatus::QuotientZero => "quotient_zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub n: u32,
    /// `v_n` printed in `quotient`; absent once the quotient is zero.
    pub v: Option<String>,
    /// `M/(v_0, ..., v_{n-1})`.
    pub quotient: String,
    pub status: StageStatus,
    /// A nonzero element killed by `v_n`, when the stage fails.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The quotient became zero after `height + 1` regular steps.
    ExactAtHeight(u32),
    /// Every stage up to the height bound was injective and no quotient vanished.
    ExactThroughBound(u32),
    /// `M` itself is zero.
    ZeroModule,
    FailsAt { n: u32, witness: String },
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Verdict::FailsAt { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeReport {
    pub prime: u64,
    pub stages: Vec<Stage>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LandweberReport {
    pub primes: Vec<PrimeReport>,
    pub max_height: u32,
    pub precision: usize,
}

impl LandweberReport {
    /// Conjunction over the requested primes, within the stated bounds only.
    pub fn exact(&self) -> bool {
        self.primes.iter().all(|p| p.verdict.is_exact())
    }

    pub fn first_failure(&self) -> Option<(u64, u32, &str)> {
        self.primes.iter().find_map(|p| match &p.verdict {
            Verdict::FailsAt { n, witness } => Some((p.prime, *n, witness.as_str())),
            _ => None,
        })
    }
}

fn check_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::Input("no primes requested".into()));
    }
    match primes.iter().find(|&&p| !is_prime_u64(p)) {
        Some(p) => Err(Error::Input(format!("{p} is not prime"))),
        None => Ok(()),
    }
}

fn law_at_precision(
    fgl: &FormalGroupLaw<CoefficientRing>,
    precision: usize,
) -> Result<FormalGroupLaw<CoefficientRing>> {
    if precision > fgl.precision() {
        return Err(Error::InsufficientPrecision {
            needed: precision,
            available: fgl.precision(),
        });
    }
    Ok(fgl.truncate(precision))
}

/// Runs the stagewise test at every requested prime; the primes are processed
/// in parallel and reported in the order given.
///
/// `v_n` is only computed at stages whose quotient is nonzero, so the
/// precision must cover `p^n` for those stages alone.
pub fn landweber_check(input: &LandweberInput) -> Result<LandweberReport> {
    check_primes(&input.primes)?;
    let fgl = law_at_precision(&input.fgl, input.precision)?;
    let ring = fgl.ring().clone();
    let start = match &input.module {
        LandweberModule::SelfModule => ring.clone(),
        LandweberModule::CyclicQuotient(g) => quotient_by_element(&ring, g)?,
    };
    let primes = input
        .primes
        .par_iter()
        .map(|&p| check_prime(&fgl, &start, p, input.max_height))
        .collect::<Result<Vec<_>>>()?;
    Ok(LandweberReport {
        primes,
        max_height: input.max_height,
        precision: input.precision,
    })
}

fn check_prime(
    fgl: &FormalGroupLaw<CoefficientRing>,
    start: &CoefficientRing,
    p: u64,
    max_height: u32,
) -> Result<PrimeReport> {
    let ring = fgl.ring();
    let mut quotient = start.clone();
    let mut stages = Vec::new();
    for n in 0..=max_height {
        if is_zero_ring(&quotient)? {
            stages.push(Stage {
                n,
                v: None,
                quotient: quotient.describe(),
                status: StageStatus::QuotientZero,
                witness: None,
            });
            let verdict = match n {
                0 => Verdict::ZeroModule,
                _ => Verdict::ExactAtHeight(n - 1),
            };
            return Ok(PrimeReport { prime: p, stages, verdict });
        }
        let v = fgl.v_coefficient(p, n)?;
        let image = quotient_map(ring, &quotient, &v)?;
        let witness = zero_divisor_witness(&quotient, &image)?;
        let fails = witness.is_some();
        let witness = witness.map(|w| quotient.format(&w));
        stages.push(Stage {
            n,
            v: Some(quotient.format(&image)),
            quotient: quotient.describe(),
            status: if fails { StageStatus::Fails } else { StageStatus::Injective },
            witness: witness.clone(),
        });
        if let Some(witness) = witness {
            return Ok(PrimeReport {
                prime: p,
                stages,
                verdict: Verdict::FailsAt { n, witness },
            });
        }
        quotient = quotient_by_element(&quotient, &image)?;
    }
    Ok(PrimeReport {
        prime: p,
        stages,
        verdict: Verdict::ExactThroughBound(max_height),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VEntry {
    pub n: u32,
    pub value: Value,
    pub printed: String,
    /// `p^n - 1`.
    pub degree: i64,
}

/// Raw `v_0, ..., v_H` with their expected degrees `p^n - 1`. When the law
/// is graded, every value must be homogeneous of that degree.
pub fn v_sequence_report(
    fgl: &FormalGroupLaw<CoefficientRing>,
    p: u64,
    max_height: u32,
    precision: usize,
) -> Result<Vec<VEntry>> {
    check_primes(&[p])?;
    let needed = p
        .checked_pow(max_height)
        .and_then(|v| usize::try_from(v).ok())
        .unwrap_or(usize::MAX);
    if needed > precision {
        return Err(Error::InsufficientPrecision {
            needed,
            available: precision,
        });
    }
    let fgl = law_at_precision(fgl, precision)?;
    let ring = fgl.ring();
    (0..=max_height)
        .map(|n| {
            let value = fgl.v_coefficient(p, n)?;
            let degree = p.pow(n) as i64 - 1;
            if let Some(g) = fgl.grading() {
                let h = ring.homogeneity(&value, g);
                if !h.is_degree(degree) {
                    let found = match h {
                        Homogeneity::Degree(d) => d.to_string(),
                        _ => "mixed".into(),
                    };
                    return Err(Error::NotAFormalGroupLaw(format!(
                        "v_{n} at p = {p} has degree {found}, expected {degree}"
                    )));
                }
            }
            Ok(VEntry {
                n,
                printed: ring.format(&value),
                value,
                degree,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(fgl: FormalGroupLaw<CoefficientRing>, primes: &[u64], h: u32, n: usize) -> LandweberInput {
        LandweberInput {
            fgl,
            module: LandweberModule::SelfModule,
            primes: primes.to_vec(),
            max_height: h,
            precision: n,
        }
    }

    #[test]
    fn multiplicative_has_height_one() {
        let r = CoefficientRing::laurent_integers("beta");
        let f = FormalGroupLaw::multiplicative(&r, 10).unwrap();
        let rep = landweber_check(&input(f, &[2, 3, 5, 7], 3, 10)).unwrap();
        for pr in &rep.primes {
            assert_eq!(pr.verdict, Verdict::ExactAtHeight(1), "p = {}", pr.prime);
            assert_eq!(pr.stages.len(), 3);
        }
        assert!(rep.exact());
    }

    #[test]
    fn additive_verdicts() {
        let z = CoefficientRing::Integers;
        let rep = landweber_check(&input(FormalGroupLaw::additive(&z, 4), &[2], 2, 4)).unwrap();
        assert_eq!(rep.first_failure(), Some((2, 1, "1")));
        let q = CoefficientRing::Rationals;
        let rep = landweber_check(&input(FormalGroupLaw::additive(&q, 4), &[2, 3], 2, 4)).unwrap();
        assert!(rep.primes.iter().all(|p| p.verdict == Verdict::ExactAtHeight(0)));
        let f3 = CoefficientRing::integers_mod(3).unwrap();
        let rep = landweber_check(&input(FormalGroupLaw::additive(&f3, 4), &[3], 2, 4)).unwrap();
        assert!(matches!(rep.primes[0].verdict, Verdict::FailsAt { n: 0, .. }));
    }

    #[test]
    fn cyclic_module() {
        let z = CoefficientRing::Integers;
        let mut inp = input(FormalGroupLaw::additive(&z, 4), &[2], 2, 4);
        inp.module = LandweberModule::CyclicQuotient(Value::Int(6.into()));
        let rep = landweber_check(&inp).unwrap();
        assert_eq!(rep.first_failure(), Some((2, 0, "3")));
        inp.module = LandweberModule::CyclicQuotient(Value::Int(1.into()));
        assert_eq!(landweber_check(&inp).unwrap().primes[0].verdict, Verdict::ZeroModule);
    }

    #[test]
    fn precision_is_checked_lazily() {
        let z = CoefficientRing::Integers;
        let rep = landweber_check(&input(FormalGroupLaw::additive(&z, 3), &[3], 2, 3)).unwrap();
        assert_eq!(rep.first_failure().map(|f| f.1), Some(1));
        let r = CoefficientRing::laurent_integers("beta");
        let f = FormalGroupLaw::multiplicative(&r, 4).unwrap();
        assert!(matches!(
            landweber_check(&input(f, &[5], 2, 4)),
            Err(Error::InsufficientPrecision { needed: 5, .. })
        ));
    }

    #[test]
    fn v_sequences() {
        let r = CoefficientRing::laurent_integers("beta");
        let f = FormalGroupLaw::multiplicative(&r, 4).unwrap();
        let v = v_sequence_report(&f, 2, 2, 4).unwrap();
        let got: Vec<_> = v.iter().map(|e| (e.n, e.printed.as_str(), e.degree)).collect();
        assert_eq!(got, vec![(0, "2", 0), (1, "-beta", 1), (2, "0", 3)]);
        let z = CoefficientRing::Integers;
        let v = v_sequence_report(&FormalGroupLaw::additive(&z, 3), 3, 1, 3).unwrap();
        assert_eq!(v.iter().map(|e| e.printed.clone()).collect::<Vec<_>>(), ["3", "0"]);
        let f2 = CoefficientRing::integers_mod(2).unwrap();
        let h = FormalGroupLaw::honda_h1(&f2, 2).unwrap();
        let v = v_sequence_report(&h, 2, 1, 2).unwrap();
        assert_eq!(v.iter().map(|e| e.printed.clone()).collect::<Vec<_>>(), ["0", "1"]);
    }
}
