use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use fgl_forge_core::acceptance;
use fgl_forge_core::coeff::CoefficientRing;
use fgl_forge_core::expr::parse_expression;
use fgl_forge_core::fgl::{check_axioms, AxiomCheck, FglName, FormalGroupLaw};
use fgl_forge_core::hopf::{hopf_axiom_check, HopfAlgebroid, GROUPOID_MAX_OBJECTS};
use fgl_forge_core::json::{
    envelope, fgl_from_json, fgl_to_json, hopf_report_to_json, hq_report_to_json, landweber_to_json,
    ops_from_json, ops_to_json, ring_from_name, series_from_json, series_to_json, JsonRing,
};
use fgl_forge_core::landweber::{landweber_check, v_sequence_report, LandweberInput, LandweberModule};
use fgl_forge_core::lazard::{classify_rational, hq_idempotence_check, universal_fgl, HQ_MAX_DEGREE};
use fgl_forge_core::ops::{
    adams_op_sequence, adams_op_tower, add_to_mult, circ_compose, geometric_power, idempotent_sequence,
    mult_to_add, series_is_integral, Coefficients, OpsElement, QSeries, TwistedLaurent,
};
use fgl_forge_core::poly::PolyRing;
use fgl_forge_core::Ring;

const MAX_PRECISION: u32 = 64;
const MAX_DEPTH: u32 = 16;
const MAX_PRIME: u64 = 97;

#[derive(Parser)]
#[command(name = "fgl-forge", version, about = "Exact formal group law and K-theory operation algebra")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Formal group laws.
    #[command(subcommand)]
    Fgl(FglCommand),
    /// Landweber exactness.
    #[command(subcommand)]
    Landweber(LandweberCommand),
    /// The rational Lazard ring and its Hopf algebroid.
    #[command(subcommand)]
    Lazard(LazardCommand),
    /// Operations on K-theory.
    #[command(subcommand)]
    Ops(OpsCommand),
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Args, Clone)]
struct Precision {
    #[arg(
        long,
        env = "FGLFORGE_PRECISION",
        default_value_t = 10,
        value_parser = clap::value_parser!(u32).range(1..=MAX_PRECISION as i64)
    )]
    precision: u32,
}

#[derive(Args, Clone)]
struct FglSource {
    /// A law name (`additive`, `multiplicative`, `universal_rational`,
    /// `honda_h1`), optionally suffixed `-over-RING`, or a JSON file.
    #[arg(long, visible_alias = "fgl")]
    name: String,
    /// Coefficient ring such as `Z`, `Q`, `F5`, `Z/12`, `Z_(3)`, `Q[beta]`.
    #[arg(long)]
    ring: Option<String>,
    #[command(flatten)]
    precision: Precision,
}

#[derive(Subcommand)]
enum FglCommand {
    /// Print a law.
    Show(FglSource),
    /// Check unitality, symmetry and associativity.
    Check(FglSource),
    /// The k-series.
    Pseries {
        #[command(flatten)]
        source: FglSource,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// The formal inverse.
    Inverse(FglSource),
    /// The logarithm (rational rings only).
    Log(FglSource),
    /// The values v_0, ..., v_H at a prime.
    Vseq {
        #[command(flatten)]
        source: FglSource,
        #[arg(long, value_parser = prime_parser)]
        prime: u64,
        #[arg(long)]
        max_height: u32,
    },
}

#[derive(Subcommand)]
enum LandweberCommand {
    /// Stagewise regular-sequence test.
    Check {
        #[command(flatten)]
        source: FglSource,
        /// `self` or a generator expression for R/(g).
        #[arg(long, default_value = "self")]
        module: String,
        #[arg(long, value_delimiter = ',', value_parser = prime_parser, required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        max_height: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Lazard,
    Groupoid,
}

#[derive(Subcommand)]
enum LazardCommand {
    /// Rank test of the right unit after killing the base, degree by degree.
    Hq {
        #[arg(long)]
        degree: usize,
    },
    /// Hopf algebroid axioms.
    Hopf {
        #[arg(long, value_enum)]
        flavor: Flavor,
        #[arg(long)]
        size: usize,
    },
    /// Images of the Lazard generators classifying a law.
    Classify(FglSource),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Tower,
    Sequence,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    #[value(name = "mult2add")]
    MultToAdd,
    #[value(name = "add2mult")]
    AddToMult,
}

#[derive(Subcommand)]
enum OpsCommand {
    /// The Adams operation psi^k.
    Adams {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Model::Sequence)]
        model: Model,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=MAX_DEPTH as i64))]
        depth: u32,
        #[command(flatten)]
        precision: Precision,
        /// Sequence window `lo:hi`; defaults to `-depth:precision`.
        #[arg(long, allow_hyphen_values = true, value_parser = window_parser)]
        window: Option<(i64, i64)>,
    },
    /// The composition product of two series.
    Compose {
        /// `geom(m)` for (1 - x)^m, or a series JSON file.
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[command(flatten)]
        precision: Precision,
    },
    /// The eigenspace idempotent e_n.
    Idempotent {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true, value_parser = window_parser, default_value = "-4:4")]
        window: (i64, i64),
    },
    /// Convert between the tower and sequence models.
    Iso {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum)]
        direction: Direction,
    },
}

fn prime_parser(s: &str) -> std::result::Result<u64, String> {
    let p: u64 = s.trim().parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if p > MAX_PRIME {
        return Err(format!("primes are limited to {MAX_PRIME}"));
    }
    Ok(p)
}

fn window_parser(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("window `{s}` must look like lo:hi"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window start `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window end `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    if hi - lo > 2 * MAX_PRECISION as i64 {
        return Err(format!("windows are limited to {} entries", 2 * MAX_PRECISION + 1));
    }
    Ok((lo, hi))
}

/// Result of a command: its JSON payload, a text rendering, and whether every
/// check it ran passed.
struct Output {
    result: Json,
    text: String,
    passed: bool,
}

impl Output {
    fn ok(result: Json, text: String) -> Self {
        Output { result, text, passed: true }
    }
}

enum AnyFgl {
    Coeff(FormalGroupLaw<CoefficientRing>),
    Poly(FormalGroupLaw<PolyRing>),
}

fn read_json(path: &str) -> Result<Json> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

fn resolve_fgl(src: &FglSource) -> Result<AnyFgl> {
    let n = src.precision.precision as usize;
    if Path::new(&src.name).is_file() {
        let v = read_json(&src.name)?;
        let kind = v.pointer("/ring/kind").and_then(Json::as_str);
        return Ok(if kind == Some("polynomial") {
            AnyFgl::Poly(fgl_from_json(&v)?)
        } else {
            AnyFgl::Coeff(fgl_from_json(&v)?)
        });
    }
    let (name, ring) = match src.name.split_once("-over-") {
        Some((name, ring)) => (name, Some(ring.to_string())),
        None => (src.name.as_str(), None),
    };
    if ring.is_some() && src.ring.is_some() {
        bail!("give the ring either in the name or with --ring, not both");
    }
    let name: FglName = name.parse()?;
    let ring = ring.or_else(|| src.ring.clone());
    if name == FglName::UniversalRational {
        if ring.is_some() {
            bail!("the universal law is defined over its own polynomial ring");
        }
        if n < 2 {
            bail!("the universal law needs precision at least 2");
        }
        return Ok(AnyFgl::Poly(universal_fgl(n)?));
    }
    let ring = match ring {
        Some(r) => ring_from_name(&r)?,
        None => match name {
            FglName::Additive => CoefficientRing::Integers,
            FglName::Multiplicative => CoefficientRing::laurent_integers("beta"),
            _ => CoefficientRing::integers_mod(2)?,
        },
    };
    Ok(AnyFgl::Coeff(FormalGroupLaw::named(name, &ring, n)?))
}

fn axiom_json(c: &AxiomCheck) -> Json {
    json!({"passed": c.passed, "witness": c.witness})
}

fn series_output<R: JsonRing>(s: &fgl_forge_core::series::TruncatedSeries1<R>) -> Output {
    let display = s.display_terms("x");
    Output::ok(json!({"series": series_to_json(s), "display": display}), display)
}

fn fgl_command<R: JsonRing>(f: &FormalGroupLaw<R>, cmd: &FglCommand) -> Result<Output> {
    Ok(match cmd {
        FglCommand::Show(_) => Output::ok(json!({"fgl": fgl_to_json(f), "display": f.display()}), f.display()),
        FglCommand::Check(_) => {
            let r = check_axioms(f.body());
            let text = match r.first_failure() {
                None => "unitality, symmetry, associativity: pass".to_string(),
                Some((axiom, at)) => format!("{axiom} fails at {at:?}"),
            };
            Output {
                result: json!({
                    "passed": r.passed(),
                    "unitality": axiom_json(&r.unitality),
                    "symmetry": axiom_json(&r.symmetry),
                    "associativity": axiom_json(&r.associativity),
                }),
                text,
                passed: r.passed(),
            }
        }
        FglCommand::Pseries { k, .. } => series_output(&f.n_series(*k)),
        FglCommand::Inverse(_) => series_output(&f.formal_inverse()),
        FglCommand::Log(_) => series_output(&f.log()?),
        FglCommand::Vseq { .. } => bail!("v_n values need a coefficient ring, not a polynomial ring"),
    })
}

fn run_fgl(cmd: &FglCommand) -> Result<Output> {
    let src = match cmd {
        FglCommand::Show(s) | FglCommand::Check(s) | FglCommand::Inverse(s) | FglCommand::Log(s) => s,
        FglCommand::Pseries { source, .. } | FglCommand::Vseq { source, .. } => source,
    };
    match (resolve_fgl(src)?, cmd) {
        (AnyFgl::Coeff(f), FglCommand::Vseq { prime, max_height, .. }) => {
            let entries = v_sequence_report(&f, *prime, *max_height, f.precision())?;
            let rows: Vec<Json> = entries
                .iter()
                .map(|e| json!({"n": e.n, "value": e.printed, "degree": e.degree}))
                .collect();
            let text = entries
                .iter()
                .map(|e| format!("v_{} = {}  (degree {})", e.n, e.printed, e.degree))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(json!({"prime": prime, "values": rows}), text))
        }
        (AnyFgl::Coeff(f), cmd) => fgl_command(&f, cmd),
        (AnyFgl::Poly(f), cmd) => fgl_command(&f, cmd),
    }
}

fn run_landweber(cmd: &LandweberCommand) -> Result<Output> {
    let LandweberCommand::Check {
        source,
        module,
        primes,
        max_height,
    } = cmd;
    let AnyFgl::Coeff(fgl) = resolve_fgl(source)? else {
        bail!("Landweber checks need a law over a coefficient ring");
    };
    let module = match module.trim() {
        "self" => LandweberModule::SelfModule,
        expr => LandweberModule::CyclicQuotient(parse_expression(expr, fgl.ring())?),
    };
    let precision = fgl.precision();
    let report = landweber_check(&LandweberInput {
        fgl,
        module,
        primes: primes.clone(),
        max_height: *max_height,
        precision,
    })?;
    let text = report
        .primes
        .iter()
        .map(|p| format!("p = {}: {:?}", p.prime, p.verdict))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        result: landweber_to_json(&report),
        text,
        passed: report.exact(),
    })
}

fn run_lazard(cmd: &LazardCommand) -> Result<Output> {
    match cmd {
        LazardCommand::Hq { degree } => {
            let r = hq_idempotence_check(*degree)?;
            let text = r
                .degrees
                .iter()
                .map(|d| format!("degree {}: dimension {}, rank {}", d.degree, d.source_dim, d.rank))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                result: hq_report_to_json(&r),
                text,
                passed: r.passed(),
            })
        }
        LazardCommand::Hopf { flavor, size } => {
            let h = match flavor {
                Flavor::Lazard => {
                    if *size == 0 || *size > HQ_MAX_DEGREE {
                        bail!("lazard degree must lie in 1..={HQ_MAX_DEGREE}");
                    }
                    HopfAlgebroid::lazard(*size)
                }
                Flavor::Groupoid => {
                    if *size == 0 || *size > GROUPOID_MAX_OBJECTS {
                        bail!("groupoid size must lie in 1..={GROUPOID_MAX_OBJECTS}");
                    }
                    HopfAlgebroid::groupoid(*size)?
                }
            };
            let r = hopf_axiom_check(&h);
            let text = r
                .checks
                .iter()
                .map(|c| format!("{}: {}", c.law, if c.passed { "pass" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                result: hopf_report_to_json(&r),
                text,
                passed: r.passed(),
            })
        }
        LazardCommand::Classify(src) => {
            let images: Vec<String> = match resolve_fgl(src)? {
                AnyFgl::Coeff(f) => classify_rational(&f)?.iter().map(|m| f.ring().format(m)).collect(),
                AnyFgl::Poly(f) => classify_rational(&f)?.iter().map(|m| f.ring().format(m)).collect(),
            };
            let text = images
                .iter()
                .enumerate()
                .map(|(i, m)| format!("m{} -> {m}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            let map: serde_json::Map<String, Json> = images
                .iter()
                .enumerate()
                .map(|(i, m)| (format!("m{}", i + 1), Json::String(m.clone())))
                .collect();
            Ok(Output::ok(json!({"images": map}), text))
        }
    }
}

fn operand(s: &str, n: usize) -> Result<QSeries> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix("geom(").and_then(|r| r.strip_suffix(')')) {
        let m: i64 = k.trim().parse().map_err(|_| anyhow!("bad exponent in `{s}`"))?;
        return Ok(geometric_power(-m, n));
    }
    let f: QSeries = series_from_json(&read_json(s)?)?;
    if f.precision() < n {
        bail!("{s} has precision {}, below the requested {n}", f.precision());
    }
    Ok(f.truncate(n))
}

/// `geom(m)` when the series is `(1 - x)^m` to its precision.
fn closed_form(f: &QSeries) -> Option<String> {
    let c1 = f.coeff(1.min(f.precision()));
    if !c1.is_integer() || f.precision() == 0 {
        return None;
    }
    let k = i64::try_from(c1.to_integer()).ok()?;
    (geometric_power(k, f.precision()) == *f).then(|| format!("geom({})", -k))
}

fn run_ops(cmd: &OpsCommand) -> Result<Output> {
    let element = match cmd {
        OpsCommand::Adams {
            k,
            model,
            depth,
            precision,
            window,
        } => match model {
            Model::Tower => {
                if window.is_some() {
                    bail!("--window applies to the sequence model");
                }
                let coeffs = if k.abs() == 1 { Coefficients::Integers } else { Coefficients::Rationals };
                let t = adams_op_tower(*k, *depth as usize, precision.precision as usize, coeffs)?;
                OpsElement::Tower(TwistedLaurent::monomial(0, t))
            }
            Model::Sequence => {
                let (lo, hi) = window.unwrap_or((-(*depth as i64), precision.precision as i64));
                OpsElement::Sequence(TwistedLaurent::monomial(0, adams_op_sequence(*k, lo, hi)?))
            }
        },
        OpsCommand::Idempotent { n, window } => {
            OpsElement::Sequence(TwistedLaurent::monomial(0, idempotent_sequence(*n, window.0, window.1)?))
        }
        OpsCommand::Iso { input, direction } => match (ops_from_json(&read_json(input)?)?, direction) {
            (OpsElement::Tower(u), Direction::MultToAdd) => OpsElement::Sequence(mult_to_add(&u)?),
            (OpsElement::Sequence(u), Direction::AddToMult) => OpsElement::Tower(add_to_mult(&u)?),
            (e, _) => bail!("input is already in the {} model", e.model()),
        },
        OpsCommand::Compose { lhs, rhs, precision } => {
            let n = precision.precision as usize;
            let product = circ_compose(&operand(lhs, n)?, &operand(rhs, n)?)?;
            let closed = closed_form(&product);
            let text = closed.clone().unwrap_or_else(|| product.display_terms("x"));
            return Ok(Output::ok(
                json!({
                    "series": series_to_json(&product),
                    "closed_form": closed,
                    "integral": series_is_integral(&product),
                }),
                text,
            ));
        }
    };
    let result = ops_to_json(&element);
    let text = serde_json::to_string_pretty(&result)?;
    Ok(Output::ok(result, text))
}

fn run_selftest() -> Output {
    let results = acceptance::run_all();
    let mut text: Vec<String> = results.iter().map(|r| r.line()).collect();
    let passed = results.iter().all(|r| r.passed);
    text.push(format!("{} of {} criteria passed", results.iter().filter(|r| r.passed).count(), results.len()));
    Output {
        result: acceptance::report_json(&results),
        text: text.join("\n"),
        passed,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Fgl(FglCommand::Show(_)) => "fgl show",
        Command::Fgl(FglCommand::Check(_)) => "fgl check",
        Command::Fgl(FglCommand::Pseries { .. }) => "fgl pseries",
        Command::Fgl(FglCommand::Inverse(_)) => "fgl inverse",
        Command::Fgl(FglCommand::Log(_)) => "fgl log",
        Command::Fgl(FglCommand::Vseq { .. }) => "fgl vseq",
        Command::Landweber(_) => "landweber check",
        Command::Lazard(LazardCommand::Hq { .. }) => "lazard hq",
        Command::Lazard(LazardCommand::Hopf { .. }) => "lazard hopf",
        Command::Lazard(LazardCommand::Classify(_)) => "lazard classify",
        Command::Ops(OpsCommand::Adams { .. }) => "ops adams",
        Command::Ops(OpsCommand::Compose { .. }) => "ops compose",
        Command::Ops(OpsCommand::Idempotent { .. }) => "ops idempotent",
        Command::Ops(OpsCommand::Iso { .. }) => "ops iso",
        Command::Selftest => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Fgl(c) => run_fgl(c),
        Command::Landweber(c) => run_landweber(c),
        Command::Lazard(c) => run_lazard(c),
        Command::Ops(c) => run_ops(c),
        Command::Selftest => Ok(run_selftest()),
    };
    match outcome {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let doc = envelope(command_name(&cli.command), out.result);
                    println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
                }
                Format::Text => println!("{}", out.text),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
