//! JSON encodings. Exact rationals are strings `"p/q"`, ring elements are
//! expressions in the [`crate::expr`] grammar, and object keys come out sorted.

use num_bigint::BigInt;
use serde_json::{json, Map, Value as Json};

use crate::coeff::{quotient_by_element, CoefficientRing, RingElement};
use crate::error::{Error, Result};
use crate::expr::parse_expression;
use crate::fgl::FormalGroupLaw;
use crate::hopf::HopfReport;
use crate::landweber::{LandweberReport, Verdict};
use crate::lazard::{HqReport, LawCheck};
use crate::ops::{AdamsSequence, OmegaTower, OpsElement, QSeries, TwistedLaurent};
use crate::poly::{Generator, PolyRing};
use crate::ring::{format_rational, parse_rational, Degrees, Rationals, Ring};
use crate::series::{TruncatedSeries1, TruncatedSeries2};

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn field<'a>(v: &'a Json, key: &str) -> Result<&'a Json> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn str_field<'a>(v: &'a Json, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field \"{key}\" must be a string")))
}

fn int_field(v: &Json, key: &str) -> Result<i64> {
    field(v, key)?
        .as_i64()
        .ok_or_else(|| bad(format!("field \"{key}\" must be an integer")))
}

fn usize_field(v: &Json, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad(format!("field \"{key}\" must be a nonnegative integer")))
}

fn array_field<'a>(v: &'a Json, key: &str) -> Result<&'a Vec<Json>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field \"{key}\" must be an array")))
}

fn as_str(v: &Json) -> Result<&str> {
    v.as_str().ok_or_else(|| bad(format!("expected a string, got {v}")))
}

/// Rings with a JSON descriptor whose elements print and parse as expressions.
pub trait JsonRing: Ring + Sized {
    fn descriptor(&self) -> Json;
    fn from_descriptor(v: &Json) -> Result<Self>;

    fn elem_to_json(&self, a: &Self::Elem) -> Json {
        Json::String(self.format(a))
    }

    fn elem_from_json(&self, v: &Json) -> Result<Self::Elem> {
        parse_expression(as_str(v)?, self)
    }
}

impl JsonRing for CoefficientRing {
    fn descriptor(&self) -> Json {
        match self {
            CoefficientRing::Integers => json!({"kind": "integers"}),
            CoefficientRing::Rationals => json!({"kind": "rationals"}),
            CoefficientRing::IntegersMod(m) => json!({"kind": "integers_mod", "modulus": m.to_string()}),
            CoefficientRing::PLocal(p) => json!({"kind": "p_local", "prime": p}),
            CoefficientRing::Laurent { base, var, degree } => json!({
                "kind": "laurent",
                "base": base.descriptor(),
                "var": var,
                "degree": degree,
            }),
            CoefficientRing::Quotient { base, generator } => json!({
                "kind": "quotient",
                "base": base.descriptor(),
                "generator": base.format(generator),
            }),
        }
    }

    fn from_descriptor(v: &Json) -> Result<Self> {
        match str_field(v, "kind")? {
            "integers" => Ok(CoefficientRing::Integers),
            "rationals" => Ok(CoefficientRing::Rationals),
            "integers_mod" => {
                let m: BigInt = str_field(v, "modulus")?
                    .parse()
                    .map_err(|_| bad("modulus must be an integer string"))?;
                CoefficientRing::integers_mod(m)
            }
            "p_local" => CoefficientRing::p_local(int_field(v, "prime")?.try_into().map_err(|_| bad("bad prime"))?),
            "laurent" => CoefficientRing::laurent(
                CoefficientRing::from_descriptor(field(v, "base")?)?,
                str_field(v, "var")?,
                int_field(v, "degree")?,
            ),
            "quotient" => {
                let base = CoefficientRing::from_descriptor(field(v, "base")?)?;
                let g = parse_expression(str_field(v, "generator")?, &base)?;
                quotient_by_element(&base, &g)
            }
            other => Err(bad(format!("unknown ring kind \"{other}\""))),
        }
    }
}

impl JsonRing for PolyRing {
    fn descriptor(&self) -> Json {
        let gens: Vec<Json> = self
            .generators()
            .iter()
            .map(|g| json!({"name": g.name, "degree": g.degree}))
            .collect();
        json!({"kind": "polynomial", "generators": gens, "max_degree": self.max_degree()})
    }

    fn from_descriptor(v: &Json) -> Result<Self> {
        if str_field(v, "kind")? != "polynomial" {
            return Err(bad("expected a polynomial ring"));
        }
        let gens = array_field(v, "generators")?
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: str_field(g, "name")?.to_string(),
                    degree: u32::try_from(usize_field(g, "degree")?).map_err(|_| bad("degree too large"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let max_degree = match field(v, "max_degree")? {
            Json::Null => None,
            d => Some(d.as_u64().and_then(|d| u32::try_from(d).ok()).ok_or_else(|| bad("bad max_degree"))?),
        };
        Ok(PolyRing::new(gens, max_degree))
    }
}

impl JsonRing for Rationals {
    fn descriptor(&self) -> Json {
        json!({"kind": "rationals"})
    }

    fn from_descriptor(v: &Json) -> Result<Self> {
        match str_field(v, "kind")? {
            "rationals" => Ok(Rationals),
            other => Err(bad(format!("expected rationals, got \"{other}\""))),
        }
    }
}

pub fn element_to_json(e: &RingElement) -> Json {
    json!({"ring": e.ring.descriptor(), "value": e.ring.format(&e.value)})
}

pub fn element_from_json(v: &Json) -> Result<RingElement> {
    let ring = CoefficientRing::from_descriptor(field(v, "ring")?)?;
    let value = ring.elem_from_json(field(v, "value")?)?;
    Ok(RingElement { ring, value })
}

/// `{"ring", "precision", "coeffs"}` with `coeffs[i]` the coefficient of `x^i`.
pub fn series_to_json<R: JsonRing>(s: &TruncatedSeries1<R>) -> Json {
    let r = s.ring();
    let coeffs: Vec<Json> = s.coeffs().iter().map(|c| r.elem_to_json(c)).collect();
    json!({"ring": r.descriptor(), "precision": s.precision(), "coeffs": coeffs})
}

pub fn series_from_json<R: JsonRing>(v: &Json) -> Result<TruncatedSeries1<R>> {
    let ring = R::from_descriptor(field(v, "ring")?)?;
    let precision = usize_field(v, "precision")?;
    let coeffs = array_field(v, "coeffs")?;
    if coeffs.len() != precision + 1 {
        return Err(bad(format!(
            "precision {precision} needs {} coefficients, found {}",
            precision + 1,
            coeffs.len()
        )));
    }
    let coeffs = coeffs.iter().map(|c| ring.elem_from_json(c)).collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries1::new(&ring, coeffs))
}

/// Nonzero coefficients other than the two linear ones, which are implicitly 1.
pub fn fgl_to_json<R: JsonRing>(f: &FormalGroupLaw<R>) -> Json {
    let r = f.ring();
    let coefficients: Vec<Json> = f
        .body()
        .nonzero_terms()
        .filter(|&(i, j, _)| (i, j) != (1, 0) && (i, j) != (0, 1))
        .map(|(i, j, c)| json!({"i": i, "j": j, "value": r.elem_to_json(c)}))
        .collect();
    let mut obj = Map::new();
    obj.insert("ring".into(), r.descriptor());
    obj.insert("precision".into(), json!(f.precision()));
    obj.insert("coefficients".into(), Json::Array(coefficients));
    if let Some(g) = f.grading() {
        obj.insert("grading".into(), json!(g));
    }
    Json::Object(obj)
}

/// Parses and validates a law; entries for `(1,0)` or `(0,1)` are rejected.
pub fn fgl_from_json<R: JsonRing>(v: &Json) -> Result<FormalGroupLaw<R>> {
    let ring = R::from_descriptor(field(v, "ring")?)?;
    let n = usize_field(v, "precision")?;
    if n == 0 {
        return Err(bad("precision must be at least 1"));
    }
    let mut body = TruncatedSeries2::zero(&ring, n);
    body.set(1, 0, ring.one());
    body.set(0, 1, ring.one());
    for entry in array_field(v, "coefficients")? {
        let (i, j) = (usize_field(entry, "i")?, usize_field(entry, "j")?);
        if (i, j) == (1, 0) || (i, j) == (0, 1) {
            return Err(bad(format!("coefficient ({i},{j}) is implicitly 1 and must not be listed")));
        }
        if i + j > n {
            return Err(bad(format!("coefficient ({i},{j}) exceeds precision {n}")));
        }
        body.set(i, j, ring.elem_from_json(field(entry, "value")?)?);
    }
    let grading = match v.get("grading") {
        None | Some(Json::Null) => None,
        Some(g) => Some(serde_json::from_value::<Degrees>(g.clone()).map_err(|e| bad(format!("grading: {e}")))?),
    };
    FormalGroupLaw::new(body, grading)
}

fn rat_json(q: &num_rational::BigRational) -> Json {
    Json::String(format_rational(q))
}

fn rat_from_json(v: &Json) -> Result<num_rational::BigRational> {
    let s = as_str(v)?;
    parse_rational(s).ok_or_else(|| bad(format!("\"{s}\" is not a rational")))
}

fn sequence_to_json(a: &AdamsSequence) -> Json {
    json!({"lo": a.lo(), "values": a.values().iter().map(rat_json).collect::<Vec<_>>()})
}

fn sequence_from_json(v: &Json) -> Result<AdamsSequence> {
    let values = array_field(v, "values")?.iter().map(rat_from_json).collect::<Result<Vec<_>>>()?;
    Ok(AdamsSequence::new(int_field(v, "lo")?, values))
}

fn tower_to_json(t: &OmegaTower) -> Json {
    let levels: Vec<Json> = t
        .levels()
        .iter()
        .map(|s| Json::Array(s.coeffs().iter().map(rat_json).collect()))
        .collect();
    json!({"depth": t.depth(), "precision": t.precision(), "levels": levels})
}

fn tower_from_json(v: &Json) -> Result<OmegaTower> {
    let levels = array_field(v, "levels")?
        .iter()
        .map(|l| {
            let coeffs = l
                .as_array()
                .ok_or_else(|| bad("each tower level must be an array"))?
                .iter()
                .map(rat_from_json)
                .collect::<Result<Vec<_>>>()?;
            if coeffs.is_empty() {
                return Err(bad("tower levels need at least one coefficient"));
            }
            Ok(QSeries::new(&Rationals, coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    if levels.is_empty() {
        return Err(bad("a tower needs at least one level"));
    }
    let t = OmegaTower::new(levels)?;
    if t.depth() != usize_field(v, "depth")? || t.precision() != usize_field(v, "precision")? {
        return Err(bad("tower depth or precision does not match its levels"));
    }
    Ok(t)
}

fn laurent_to_json<C: crate::ops::TwistComponent>(u: &TwistedLaurent<C>, model: &str, part: impl Fn(&C) -> Json) -> Json {
    let terms: Vec<Json> = u
        .terms()
        .iter()
        .map(|(j, c)| json!({"beta_power": j, "coefficient": part(c)}))
        .collect();
    json!({"model": model, "terms": terms})
}

fn laurent_from_json<C: crate::ops::TwistComponent>(
    v: &Json,
    part: impl Fn(&Json) -> Result<C>,
) -> Result<TwistedLaurent<C>> {
    let mut acc = TwistedLaurent::zero();
    for t in array_field(v, "terms")? {
        let j = int_field(t, "beta_power")?;
        if acc.component(j).is_some() {
            return Err(bad(format!("beta power {j} listed twice")));
        }
        acc = acc.add(&TwistedLaurent::monomial(j, part(field(t, "coefficient")?)?))?;
    }
    Ok(acc)
}

/// `{"model": "sequence" | "tower", "terms": [{"beta_power", "coefficient"}]}`.
pub fn ops_to_json(e: &OpsElement) -> Json {
    match e {
        OpsElement::Sequence(u) => laurent_to_json(u, "sequence", sequence_to_json),
        OpsElement::Tower(u) => laurent_to_json(u, "tower", tower_to_json),
    }
}

pub fn ops_from_json(v: &Json) -> Result<OpsElement> {
    match str_field(v, "model")? {
        "sequence" => Ok(OpsElement::Sequence(laurent_from_json(v, sequence_from_json)?)),
        "tower" => Ok(OpsElement::Tower(laurent_from_json(v, tower_from_json)?)),
        other => Err(bad(format!("unknown model \"{other}\""))),
    }
}

fn verdict_to_json(v: &Verdict) -> Json {
    match v {
        Verdict::ExactAtHeight(h) => json!({"kind": "exact_at_height", "height": h}),
        Verdict::ExactThroughBound(h) => json!({"kind": "exact_through_bound", "max_height": h}),
        Verdict::ZeroModule => json!({"kind": "zero_module"}),
        Verdict::FailsAt { n, witness } => json!({"kind": "fails_at", "n": n, "witness": witness}),
    }
}

pub fn landweber_to_json(r: &LandweberReport) -> Json {
    let primes: Vec<Json> = r
        .primes
        .iter()
        .map(|p| {
            let stages: Vec<Json> = p
                .stages
                .iter()
                .map(|s| {
                    json!({
                        "n": s.n,
                        "v": s.v,
                        "quotient": s.quotient,
                        "status": s.status.as_str(),
                        "witness": s.witness,
                    })
                })
                .collect();
            json!({"prime": p.prime, "stages": stages, "verdict": verdict_to_json(&p.verdict)})
        })
        .collect();
    let listed: Vec<String> = r.primes.iter().map(|p| p.prime.to_string()).collect();
    json!({
        "exact": r.exact(),
        "max_height": r.max_height,
        "precision": r.precision,
        "primes": primes,
        "scope": format!(
            "primes {{{}}}, height <= {}, precision {}",
            listed.join(", "),
            r.max_height,
            r.precision
        ),
    })
}

fn law_to_json(c: &LawCheck) -> Json {
    json!({"law": c.law, "passed": c.passed, "generator": c.generator, "degree": c.degree})
}

pub fn hopf_report_to_json(r: &HopfReport) -> Json {
    json!({
        "flavor": r.flavor,
        "size": r.size,
        "passed": r.passed(),
        "checks": r.checks.iter().map(law_to_json).collect::<Vec<_>>(),
    })
}

pub fn hq_report_to_json(r: &HqReport) -> Json {
    let degrees: Vec<Json> = r
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "source_dim": d.source_dim,
                "target_dim": d.target_dim,
                "rank": d.rank,
                "partitions": d.partitions,
            })
        })
        .collect();
    json!({
        "max_degree": r.max_degree,
        "passed": r.passed(),
        "first_deficit": r.first_deficit(),
        "degrees": degrees,
    })
}

/// Wraps a result in the tool envelope.
pub fn envelope(command: &str, result: Json) -> Json {
    json!({
        "tool": "fgl-forge",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "result": result,
    })
}

/// Ring shorthand: `Z`, `Q`, `Z/m`, `F<p>`, `Z_(p)`, and `R[var]` for the
/// Laurent ring over any of these.
pub fn ring_from_name(name: &str) -> Result<CoefficientRing> {
    let name = name.trim();
    if let Some(inner) = name.strip_suffix(']') {
        let (base, var) = inner
            .split_once('[')
            .ok_or_else(|| bad(format!("malformed ring name \"{name}\"")))?;
        let var = var.trim_end_matches("^±1").trim_end_matches("^+-1");
        return CoefficientRing::laurent(ring_from_name(base)?, var, 1);
    }
    let int = |s: &str| -> Result<BigInt> { s.parse().map_err(|_| bad(format!("malformed ring name \"{name}\""))) };
    match name {
        "Z" => Ok(CoefficientRing::Integers),
        "Q" => Ok(CoefficientRing::Rationals),
        _ => {
            if let Some(m) = name.strip_prefix("Z/") {
                CoefficientRing::integers_mod(int(m)?)
            } else if let Some(p) = name.strip_prefix("Z_(").and_then(|s| s.strip_suffix(')')) {
                CoefficientRing::p_local(p.parse().map_err(|_| bad(format!("malformed ring name \"{name}\"")))?)
            } else if let Some(p) = name.strip_prefix('F').map(|s| s.trim_start_matches('_')) {
                let p = int(p)?;
                let r = CoefficientRing::integers_mod(p.clone())?;
                if !r.is_field() {
                    return Err(bad(format!("F{p} needs a prime")));
                }
                Ok(r)
            } else {
                Err(bad(format!("unknown ring \"{name}\"")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazard::universal_fgl;
    use crate::ops::{adams_op_sequence, adams_op_tower, geometric_power, Coefficients};

    fn round_trip_ring(r: &CoefficientRing) {
        let j = r.descriptor();
        assert_eq!(&CoefficientRing::from_descriptor(&j).unwrap(), r, "{j}");
    }

    #[test]
    fn rings_round_trip() {
        let lf = CoefficientRing::laurent(CoefficientRing::integers_mod(3).unwrap(), "beta", 1).unwrap();
        let q = quotient_by_element(&lf, &parse_expression("beta^2 + 1", &lf).unwrap()).unwrap();
        for r in [
            CoefficientRing::Integers,
            CoefficientRing::Rationals,
            CoefficientRing::integers_mod(12).unwrap(),
            CoefficientRing::p_local(5).unwrap(),
            CoefficientRing::laurent_rationals("beta"),
            lf,
            q,
        ] {
            round_trip_ring(&r);
        }
    }

    #[test]
    fn named_rings() {
        assert_eq!(ring_from_name("Z[beta]").unwrap(), CoefficientRing::laurent_integers("beta"));
        assert_eq!(ring_from_name("F5").unwrap(), CoefficientRing::integers_mod(5).unwrap());
        assert!(ring_from_name("F6").is_err());
        assert_eq!(ring_from_name("Z_(3)").unwrap(), CoefficientRing::PLocal(3));
    }

    #[test]
    fn fgl_round_trip() {
        let r = CoefficientRing::laurent_integers("beta");
        let f = FormalGroupLaw::multiplicative(&r, 6).unwrap();
        let j = fgl_to_json(&f);
        let text = j.to_string();
        assert!(text.contains("\"value\":\"-beta\""));
        assert!(!text.contains("\"i\":1,\"j\":0"));
        let g: FormalGroupLaw<CoefficientRing> = fgl_from_json(&j).unwrap();
        assert_eq!(g.body(), f.body());
        assert_eq!(g.grading(), f.grading());

        let u = universal_fgl(4).unwrap();
        let back: FormalGroupLaw<PolyRing> = fgl_from_json(&fgl_to_json(&u)).unwrap();
        assert_eq!(back.body(), u.body());
    }

    #[test]
    fn fgl_rejects_linear_entries_and_bad_laws() {
        let bad_linear = json!({"ring": {"kind": "integers"}, "precision": 3,
            "coefficients": [{"i": 1, "j": 0, "value": "1"}]});
        assert!(fgl_from_json::<CoefficientRing>(&bad_linear).is_err());
        let asym = json!({"ring": {"kind": "integers"}, "precision": 3,
            "coefficients": [{"i": 2, "j": 1, "value": "1"}]});
        assert!(matches!(
            fgl_from_json::<CoefficientRing>(&asym),
            Err(Error::NotAFormalGroupLaw(_))
        ));
    }

    #[test]
    fn series_and_ops_round_trip() {
        let s = geometric_power(-3, 8);
        let j = series_to_json(&s);
        assert_eq!(series_from_json::<Rationals>(&j).unwrap(), s);
        let seq = OpsElement::Sequence(TwistedLaurent::monomial(2, adams_op_sequence(3, -2, 4).unwrap()));
        assert_eq!(ops_from_json(&ops_to_json(&seq)).unwrap(), seq);
        let tower = OpsElement::Tower(TwistedLaurent::monomial(
            -1,
            adams_op_tower(2, 2, 5, Coefficients::Rationals).unwrap(),
        ));
        assert_eq!(ops_from_json(&ops_to_json(&tower)).unwrap(), tower);
    }

    #[test]
    fn envelope_keys_are_sorted() {
        let text = envelope("x", json!({"b": 1, "a": 2})).to_string();
        assert!(text.starts_with("{\"command\":\"x\",\"result\":{\"a\":2,\"b\":1},\"tool\""));
    }
}
