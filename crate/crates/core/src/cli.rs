//! Command-line front end.
//!
//! [`run`] parses arguments, performs the computation and returns the rendered
//! output together with the process exit code, so the binary is a thin wrapper.

use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::{flat_base_change, tensor_vs_fibersum, TensorVerdict};
use crate::apery::{
    apery_set, flatness_verdict, positivity_preservation, representation, representations, FlatnessVerdict,
    RepresentationPolicy, DEFAULT_DEGREE_BOUND,
};
use crate::corpus;
use crate::doc::{parse_algebra, parse_context, parse_semigroup, rational_value, ring_json, semigroup_json};
use crate::error::{Error, Result, EXIT_BOUND_EXHAUSTED, EXIT_IMPOSSIBLE, EXIT_OK};
use crate::exactlat::{parse_rational, BigRat, RatMatrix};
use crate::fibsum::{
    compare_with_sum, eq_cancellative, eq_torsionfree, gp_condition, FiberedSumContext, IsoReason, SumComparison,
    DEFAULT_COMPARE_BOUND, DEFAULT_EQUALITY_WITNESS_BOUND, DEFAULT_MEMBER_BOUND,
};
use crate::gluing::{
    can_glue_with, glue_numerical, kernel_binomials, search_gluing, GluingQuery, GluingReport, GluingVerdict,
    DEFAULT_SEARCH_BOUND,
};
use crate::semigroup::{AffineSemigroup, MembershipDecision, PositivityWitness, Vector};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit code of `examples` when a corpus case fails.
pub const EXIT_CORPUS_FAILURE: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "affsemi", version, about = "Exact computations with affine semigroups and their rings")]
pub struct Cli {
    /// Output format: readable text or line-delimited JSON documents.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    Torsionfree,
    Tilde,
    Compare,
    Positivity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Min,
    Max,
}

/// Document arguments accept a file path or an inline JSON object.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generators, rank, positivity and group of differences of a semigroup.
    Info {
        #[arg(long = "S")]
        s: String,
    },
    /// Membership with coefficients.
    Member {
        #[arg(long = "S")]
        s: String,
        /// Comma-separated integer vector.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Coefficient-sum bound used for non-positive semigroups.
        #[arg(long, default_value_t = DEFAULT_MEMBER_BOUND)]
        bound: u64,
    },
    /// Basis of the group of differences.
    Gp {
        #[arg(long = "S")]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Positivity with a grading or a zero-sum certificate.
    Positive {
        #[arg(long = "S")]
        s: String,
    },
    /// Fibered sum of S1 and S2 over S.
    Fibsum {
        /// A context document; otherwise S1, S2 and S with inclusion maps.
        #[arg(long)]
        ctx: Option<String>,
        #[arg(long = "S1")]
        s1: Option<String>,
        #[arg(long = "S2")]
        s2: Option<String>,
        #[arg(long = "S")]
        s: Option<String>,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Element `a:b` of S1 (+) S2, compared with `--y`.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, default_value_t = DEFAULT_EQUALITY_WITNESS_BOUND)]
        witness_bound: u64,
        #[arg(long, default_value_t = DEFAULT_COMPARE_BOUND)]
        compare_bound: u64,
        /// Degree bound for the unique-representation check behind positivity.
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND.to_string())]
        degree: String,
    },
    /// Apéry elements of S' over S.
    Apery {
        #[arg(long = "Sp")]
        sp: String,
        #[arg(long = "S")]
        s: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND.to_string())]
        degree: String,
        /// Also list the representations `x = s + w`.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, value_enum, default_value_t = Policy::Min)]
        policy: Policy,
    },
    /// Unique-representation (flatness) verdict for S' over S.
    Flat {
        #[arg(long = "Sp")]
        sp: String,
        #[arg(long = "S")]
        s: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND.to_string())]
        degree: String,
    },
    /// Flat base change of the algebra A1 by A2, both over the same ring.
    Basechange {
        #[arg(long = "A1")]
        a1: String,
        #[arg(long = "A2")]
        a2: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND.to_string())]
        degree: String,
    },
    /// Gluing of S1 and S2 at fixed scalars or by a bounded scan.
    Glue {
        #[arg(long = "S1")]
        s1: String,
        #[arg(long = "S2")]
        s2: String,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        /// Scan bound when `--a` and `--b` are absent.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search: u64,
        /// Glue numerical semigroups as `b S1 + a S2`.
        #[arg(long)]
        numerical: bool,
        /// List kernel binomials of the glued generators up to this degree (diagnostic only).
        #[arg(long)]
        binomials: Option<u64>,
        #[arg(long)]
        sequential: bool,
    },
    /// Runs the bundled corpus of worked examples.
    Examples {
        /// Only cases whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Member { .. } => "member",
            Command::Gp { .. } => "gp",
            Command::Positive { .. } => "positive",
            Command::Fibsum { .. } => "fibsum",
            Command::Apery { .. } => "apery",
            Command::Flat { .. } => "flat",
            Command::Basechange { .. } => "basechange",
            Command::Glue { .. } => "glue",
            Command::Examples { .. } => "examples",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Outcome {
    code: i32,
    reports: Vec<Map<String, Value>>,
    warnings: Vec<String>,
}

impl Outcome {
    fn single(report: Map<String, Value>) -> Self {
        Outcome { code: EXIT_OK, reports: vec![report], warnings: Vec::new() }
    }
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are objects"),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CliOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CliOutput { code: crate::error::EXIT_PARSE, stdout: String::new(), stderr: text },
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> CliOutput {
    let name = cli.command.name();
    let mut out = CliOutput::default();
    match dispatch(&cli.command) {
        Ok(outcome) => {
            out.code = outcome.code;
            for w in &outcome.warnings {
                out.stderr.push_str(&format!("warning: {w}\n"));
            }
            for report in outcome.reports {
                out.stdout.push_str(&render(name, report, cli.format));
            }
        }
        Err(e) => {
            out.code = e.exit_code();
            out.stderr.push_str(&format!("error: {e}\n"));
            if cli.format == Format::Json {
                let report = obj(json!({"error": e.to_string(), "exit_code": out.code}));
                out.stdout.push_str(&render(name, report, Format::Json));
            }
        }
    }
    out
}

fn render(command: &str, report: Map<String, Value>, format: Format) -> String {
    let mut full = Map::new();
    full.insert("schema_version".into(), json!(SCHEMA_VERSION));
    full.insert("command".into(), json!(command));
    full.extend(report);
    match format {
        Format::Json => format!("{}\n", Value::Object(full)),
        Format::Text => {
            let mut s = String::new();
            for (k, v) in full.iter().filter(|(k, _)| k.as_str() != "schema_version") {
                let shown = match v {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                s.push_str(&format!("{k}: {shown}\n"));
            }
            s
        }
    }
}

fn load(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))
}

/// Parses `1,2,-3`; the empty string is the empty vector.
pub fn parse_vector(text: &str) -> Result<Vector> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad vector `{text}`")))).collect()
}

/// Parses `a:b` into the two components of an element of `S1 (+) S2`.
pub fn parse_pair(text: &str) -> Result<(Vector, Vector)> {
    let (a, b) = text.split_once(':').ok_or_else(|| Error::Parse(format!("expected `a:b`, got `{text}`")))?;
    Ok((parse_vector(a)?, parse_vector(b)?))
}

fn parse_degree(text: &str) -> Result<BigRat> {
    let q = parse_rational(text)?;
    if q < BigRat::from_integer(0.into()) {
        return Err(Error::InvalidArgument(format!("negative degree bound {text}")));
    }
    Ok(q)
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Info { s } => info(&parse_semigroup(&load(s)?)?),
        Command::Member { s, x, bound } => {
            let s = parse_semigroup(&load(s)?)?;
            let x = parse_vector(x)?;
            member(&s, &x, *bound)
        }
        Command::Gp { s, x } => {
            let s = parse_semigroup(&load(s)?)?;
            let x = x.as_deref().map(parse_vector).transpose()?;
            let gp = s.gp();
            let mut r = obj(json!({"rank": gp.rank(), "basis": gp.basis_rows_i64()?}));
            if let Some(x) = x {
                r.insert("contains".into(), json!(gp.contains(&x)?));
            }
            Ok(Outcome::single(r))
        }
        Command::Positive { s } => {
            let s = parse_semigroup(&load(s)?)?;
            Ok(Outcome::single(positivity_json(&s)))
        }
        Command::Fibsum { ctx, s1, s2, s, check, x, y, witness_bound, compare_bound, degree } => {
            let degree = parse_degree(degree)?;
            let elements = match (x, y) {
                (Some(x), Some(y)) => Some((parse_pair(x)?, parse_pair(y)?)),
                (None, None) => None,
                _ => return Err(Error::InvalidArgument("--x and --y must be given together".into())),
            };
            let (context, embedded) = match (ctx, s1, s2, s) {
                (Some(c), None, None, None) => (parse_context(&load(c)?)?, false),
                (None, Some(a), Some(b), Some(c)) => {
                    let (a, b, c) =
                        (parse_semigroup(&load(a)?)?, parse_semigroup(&load(b)?)?, parse_semigroup(&load(c)?)?);
                    (FiberedSumContext::embedded(&a, &b, &c)?, true)
                }
                _ => return Err(Error::InvalidArgument("give either --ctx or all of --S1, --S2, --S".into())),
            };
            fibsum(&context, embedded, *check, elements, *witness_bound, *compare_bound, &degree)
        }
        Command::Apery { sp, s, degree, x, policy } => {
            let (sp, s) = (parse_semigroup(&load(sp)?)?, parse_semigroup(&load(s)?)?);
            let degree = parse_degree(degree)?;
            let x = x.as_deref().map(parse_vector).transpose()?;
            let report = apery_set(&sp, &s, &degree, None)?;
            let mut r = obj(json!({
                "elements": report.elements,
                "complete": report.complete,
                "degree_bound": rational_value(&report.degree_bound),
                "grading": report.grading.iter().map(rational_value).collect::<Vec<_>>(),
            }));
            if let Some(x) = x {
                let reps = representations(&sp, &s, &x)?;
                let policy = match policy {
                    Policy::Min => RepresentationPolicy::MinDegree,
                    Policy::Max => RepresentationPolicy::MaxDegree,
                };
                let (a, w) = representation(&sp, &s, &x, policy)?;
                r.insert("representations".into(), json!(reps));
                r.insert("representation".into(), json!([a, w]));
            }
            Ok(Outcome::single(r))
        }
        Command::Flat { sp, s, degree } => {
            let (sp, s) = (parse_semigroup(&load(sp)?)?, parse_semigroup(&load(s)?)?);
            let degree = parse_degree(degree)?;
            Ok(Outcome::single(obj(flatness_json(&flatness_verdict(&sp, &s, &degree, None)?))))
        }
        Command::Basechange { a1, a2, degree } => {
            let (p1, p2) = (parse_algebra(&load(a1)?)?, parse_algebra(&load(a2)?)?);
            let degree = parse_degree(degree)?;
            let tensor = tensor_vs_fibersum(&p1, &p2, &degree)?;
            let bc = flat_base_change(&p1, &p2, &degree)?;
            let mut warnings = Vec::new();
            if let Some(c) = &bc.caveat {
                warnings.push(c.clone());
            }
            let r = obj(json!({
                "ring": ring_json(&bc.ring),
                "ring_text": bc.ring.to_string(),
                "flatness": flatness_json(&bc.flatness),
                "caveat": bc.caveat,
                "map_left": bc.map_left(),
                "map_right": bc.map_right(),
                "tensor": tensor_json(&tensor),
            }));
            Ok(Outcome { code: EXIT_OK, reports: vec![r], warnings })
        }
        Command::Glue { s1, s2, a, b, search, numerical, binomials, sequential } => {
            let (s1, s2) = (parse_semigroup(&load(s1)?)?, parse_semigroup(&load(s2)?)?);
            if *numerical {
                let (Some(a), Some(b)) = (a, b) else {
                    return Err(Error::InvalidArgument("--numerical needs --a and --b".into()));
                };
                let g = glue_numerical(&s1, &s2, *a, *b)?;
                let r = obj(json!({
                    "glued": semigroup_json(&g.semigroup),
                    "identified": g.identified,
                    "warnings": g.warnings,
                    "fibered_sum_agrees": g.fibered_sum_agrees,
                }));
                return Ok(Outcome { code: EXIT_OK, reports: vec![r], warnings: g.warnings });
            }
            let report = match (a, b) {
                (Some(a), Some(b)) => {
                    if *a < 1 || *b < 1 {
                        return Err(Error::InvalidArgument("--a and --b must be positive".into()));
                    }
                    can_glue_with(&GluingQuery { s1, s2, a: *a, b: *b })?
                }
                (None, None) => search_gluing(&s1, &s2, *search, !sequential)?,
                _ => return Err(Error::InvalidArgument("--a and --b must be given together".into())),
            };
            let code = match report.verdict {
                GluingVerdict::ImpossibleAllScales { .. } => EXIT_IMPOSSIBLE,
                GluingVerdict::NotFoundUpTo { .. } => EXIT_BOUND_EXHAUSTED,
                _ => EXIT_OK,
            };
            let mut r = gluing_json(&report);
            if let Some(d) = binomials {
                let names: Vec<String> = report.named_generators.iter().map(|(n, _)| n.clone()).collect();
                let gens: Vec<Vector> = report.named_generators.iter().map(|(_, g)| g.clone()).collect();
                let list: Vec<String> = kernel_binomials(&gens, *d).iter().map(|k| k.format(&names)).collect();
                r.insert("kernel_binomials".into(), json!({"diagnostic_only": true, "binomials": list}));
            }
            Ok(Outcome { code, reports: vec![r], warnings: Vec::new() })
        }
        Command::Examples { filter, list } => examples(filter.as_deref(), *list),
    }
}

fn info(s: &AffineSemigroup) -> Result<Outcome> {
    let gp = s.gp();
    let mut r = obj(json!({
        "semigroup": semigroup_json(s),
        "rank": s.rank(),
        "positive": s.positive(),
        "weights": s.weights(),
        "gp_basis": gp.basis_rows_i64()?,
    }));
    if s.is_numerical() && !s.is_trivial() {
        let t = s.numerical_table()?;
        let min = s.minimal_numerical()?;
        r.insert(
            "numerical".into(),
            json!({
                "gcd": t.gcd,
                "minimal_generators": min.generators().iter().map(|g| g[0]).collect::<Vec<_>>(),
                "multiplicity": t.multiplicity(),
                "frobenius": t.frobenius(),
            }),
        );
    }
    Ok(Outcome::single(r))
}

fn member(s: &AffineSemigroup, x: &[i64], bound: u64) -> Result<Outcome> {
    let (r, code) = match s.member(x, Some(bound))? {
        MembershipDecision::Yes(c) => (json!({"verdict": "Yes", "coefficients": c}), EXIT_OK),
        MembershipDecision::No => (json!({"verdict": "No"}), EXIT_OK),
        MembershipDecision::Unknown(b) => (json!({"verdict": "Unknown", "bound": b}), EXIT_BOUND_EXHAUSTED),
    };
    Ok(Outcome { code, reports: vec![obj(r)], warnings: Vec::new() })
}

fn positivity_json(s: &AffineSemigroup) -> Map<String, Value> {
    let (positive, witness) = s.is_positive();
    let mut r = obj(json!({"positive": positive}));
    match witness {
        PositivityWitness::Grading(g) => {
            r.insert("grading".into(), json!(g.iter().map(rational_value).collect::<Vec<_>>()));
            r.insert("weights".into(), json!(s.weights()));
        }
        PositivityWitness::ZeroSum(c) => {
            r.insert("zero_sum".into(), json!(c));
        }
    }
    r
}

pub fn flatness_json(v: &FlatnessVerdict) -> Value {
    match v {
        FlatnessVerdict::UniqueProven => json!({"verdict": "UniqueProven"}),
        FlatnessVerdict::UniqueUpTo(b) => json!({"verdict": "UniqueUpTo", "bound": rational_value(b)}),
        FlatnessVerdict::NonUnique { s1, w1, s2, w2 } => {
            json!({"verdict": "NonUnique", "s1": s1, "w1": w1, "s2": s2, "w2": w2})
        }
    }
}

pub fn tensor_json(v: &TensorVerdict) -> Value {
    match v {
        TensorVerdict::Isomorphic { caveat } => json!({"verdict": "Isomorphic", "caveat": caveat}),
        TensorVerdict::NotIsomorphic { witness, order, caveat } => json!({
            "verdict": "NotIsomorphic",
            "witness": [witness.0, witness.1],
            "order": order.to_string(),
            "caveat": caveat,
        }),
        TensorVerdict::Undetermined { reason } => json!({"verdict": "Undetermined", "reason": reason}),
    }
}

pub fn comparison_json(c: &SumComparison) -> Value {
    match c {
        SumComparison::Isomorphic { reason } => {
            let reason = match reason {
                IsoReason::EqualRanks => "EqualRanks",
                IsoReason::GpCondition => "GpCondition",
                IsoReason::InjectiveSumMap => "InjectiveSumMap",
            };
            json!({"verdict": "Isomorphic", "reason": reason})
        }
        SumComparison::NotIsomorphic { witness, kernel_vector } => json!({
            "verdict": "NotIsomorphic",
            "witness": witness.as_ref().map(|w| json!({"first": [w.first.0, w.first.1], "second": [w.second.0, w.second.1], "image": w.image})),
            "kernel_vector": kernel_vector,
        }),
    }
}

pub fn gluing_json(report: &GluingReport) -> Map<String, Value> {
    let names: Vec<String> = report.named_generators.iter().map(|(n, _)| n.clone()).collect();
    let mut r = match &report.verdict {
        GluingVerdict::Yes { a, b, w } => obj(json!({"verdict": "Yes", "a": a, "b": b, "w": w})),
        GluingVerdict::No { a, b } => obj(json!({"verdict": "No", "a": a, "b": b, "w": null})),
        GluingVerdict::ImpossibleAllScales { rank } => {
            obj(json!({"verdict": "ImpossibleAllScales", "rank": rank, "a": null, "b": null, "w": null}))
        }
        GluingVerdict::NotFoundUpTo { bound } => {
            obj(json!({"verdict": "NotFoundUpTo", "bound": bound, "a": null, "b": null, "w": null}))
        }
    };
    r.insert("glued".into(), report.glued.as_ref().map_or(Value::Null, semigroup_json));
    if let Some(k) = &report.binomial {
        r.insert("binomial".into(), json!(k.format(&names)));
    }
    if let Some(agrees) = report.fibered_sum_agrees {
        r.insert("fibered_sum_agrees".into(), json!(agrees));
    }
    r
}

fn fibsum(
    ctx: &FiberedSumContext,
    embedded: bool,
    check: Check,
    elements: Option<((Vector, Vector), (Vector, Vector))>,
    witness_bound: u64,
    compare_bound: u64,
    degree: &BigRat,
) -> Result<Outcome> {
    let wants = |c: Check| check == Check::All || check == c;
    let mut r = Map::new();
    let q = ctx.quotient();
    if wants(Check::Torsionfree) {
        r.insert("torsion_free".into(), json!(ctx.is_torsion_free()));
        let inv: Vec<String> = q.torsion_invariants.iter().map(|d| d.to_string()).collect();
        r.insert("torsion_invariants".into(), json!(inv));
    }
    if wants(Check::Tilde) {
        let t = ctx.tilde_presentation()?;
        r.insert("free_rank".into(), json!(t.free_rank()));
        r.insert("tilde".into(), semigroup_json(&t.semigroup));
        if t.semigroup.is_numerical() && !t.semigroup.is_trivial() {
            r.insert("tilde_minimal".into(), semigroup_json(&t.semigroup.minimal_numerical()?));
        }
        r.insert("left_images".into(), json!(t.left_images));
        r.insert("right_images".into(), json!(t.right_images));
        r.insert("tilde_positive".into(), json!(t.semigroup.positive()));
        if embedded {
            r.insert("gp_condition".into(), json!(gp_condition(ctx.s1(), ctx.s2(), ctx.s())?));
        }
    }
    if wants(Check::Compare) {
        if embedded {
            let id = RatMatrix::identity(ctx.s1().ambient_dim());
            let cmp = compare_with_sum(ctx, &id, &id, compare_bound)?;
            r.insert("compare".into(), comparison_json(&cmp));
            r.insert("sum".into(), semigroup_json(&ctx.s1().sum(ctx.s2())?));
        } else if check == Check::Compare {
            return Err(Error::InvalidArgument("--check compare needs --S1, --S2, --S in one ambient space".into()));
        }
    }
    if wants(Check::Positivity) {
        match positivity_preservation(ctx, degree) {
            Ok(p) => {
                r.insert(
                    "positivity".into(),
                    json!({
                        "guaranteed": p.guaranteed,
                        "rule": p.rule.map(|x| x.tag()),
                        "caveat": p.caveat,
                        "tilde_positive": p.tilde_positive,
                    }),
                );
            }
            Err(e) if check == Check::All => {
                r.insert("positivity".into(), json!({"error": e.to_string()}));
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(((xa, xb), (ya, yb))) = elements {
        let x = ctx.element(&xa, &xb)?;
        let y = ctx.element(&ya, &yb)?;
        let witness = ctx.find_equality_witness(&x, &y, witness_bound)?;
        r.insert(
            "equality".into(),
            json!({
                "eq_cancellative": eq_cancellative(&x, &y)?,
                "eq_torsionfree": eq_torsionfree(&x, &y)?,
                "witness": witness.map(|(a, b)| json!([a, b])),
            }),
        );
    }
    Ok(Outcome::single(r))
}

fn examples(filter: Option<&str>, list: bool) -> Result<Outcome> {
    let cases = corpus::cases(filter);
    let mut warnings = Vec::new();
    if cases.is_empty() {
        warnings.push(format!("no corpus case matches `{}`", filter.unwrap_or("")));
        let r = obj(json!({"cases": 0, "passed": 0, "failed": 0}));
        return Ok(Outcome { code: EXIT_OK, reports: vec![r], warnings });
    }
    if list {
        let reports = cases.iter().map(|c| obj(json!({"id": c.id, "args": c.args}))).collect();
        return Ok(Outcome { code: EXIT_OK, reports, warnings });
    }
    let results = corpus::run_cases(&cases);
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut reports: Vec<Map<String, Value>> =
        results.iter().map(|r| obj(json!({"id": r.id, "passed": r.passed, "detail": r.detail}))).collect();
    reports.push(obj(json!({"cases": results.len(), "passed": results.len() - failed, "failed": failed})));
    let code = if failed == 0 { EXIT_OK } else { EXIT_CORPUS_FAILURE };
    Ok(Outcome { code, reports, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliOutput {
        run(std::iter::once("affsemi").chain(args.iter().copied()))
    }

    #[test]
    fn vectors_and_pairs() {
        assert_eq!(parse_vector("1, -2,3").unwrap(), vec![1, -2, 3]);
        assert_eq!(parse_vector("[4]").unwrap(), vec![4]);
        assert_eq!(parse_vector("").unwrap(), Vec::<i64>::new());
        assert!(parse_vector("1,a").is_err());
        assert_eq!(parse_pair("6:0").unwrap(), (vec![6], vec![0]));
        assert!(parse_pair("6").is_err());
    }

    #[test]
    fn member_on_trivial() {
        let out =
            run_args(&["--format", "json", "member", "--S", r#"{"kind":"semigroup","dim":1,"gens":[]}"#, "--x", "0"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(v["verdict"], "Yes");
        assert_eq!(v["coefficients"], json!([]));
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["member", "--S", "{", "--x", "0"]).code, 64);
        assert_eq!(run_args(&["member", "--S", r#"{"kind":"semigroup","dim":2,"gens":[[1,0]]}"#, "--x", "0"]).code, 65);
        assert_eq!(run_args(&["frobnicate"]).code, 64);
        assert_eq!(run_args(&["--help"]).code, 0);
    }
}
