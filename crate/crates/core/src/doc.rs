//! Structured input documents.
//!
//! Every document is a JSON object with a `kind` field:
//!
//! ```json
//! {"kind": "semigroup", "dim": 1, "gens": [[2], [3]]}
//! {"kind": "ring", "dim": 1, "gens": [["3/2"], [5]], "vars": ["x"]}
//! {"kind": "context", "S1": {...}, "S2": {...}, "S": {...}, "h1": [[1]], "h2": [["1/2"]]}
//! {"kind": "algebra", "ring": {...}, "base": {...}}
//! ```
//!
//! Rationals are written as integers or as strings `"p/q"`. Nested semigroups
//! and rings may omit `kind`. The homomorphisms of a context default to inclusions.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{AlgebraPair, EmbeddedRing};
use crate::error::{Error, Result};
use crate::exactlat::{format_rational, parse_rational, BigRat, RatMatrix};
use crate::fibsum::FiberedSumContext;
use crate::semigroup::AffineSemigroup;

/// A rational number in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRat);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_value(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => {
                let i = n.as_i64().ok_or_else(|| D::Error::custom(format!("{n} is not an integer")))?;
                Ok(Rational(BigRat::from_integer(i.into())))
            }
            Value::String(s) => parse_rational(&s).map(Rational).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected a rational, found {other}"))),
        }
    }
}

/// An integer when possible, otherwise the string `"p/q"`.
pub fn rational_value(q: &BigRat) -> Value {
    match q.is_integer().then(|| num_traits::ToPrimitive::to_i64(&q.to_integer())).flatten() {
        Some(i) => json!(i),
        None => json!(format_rational(q)),
    }
}

#[derive(Deserialize)]
struct RawSemigroup {
    dim: usize,
    gens: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawRing {
    dim: usize,
    gens: Vec<Vec<Rational>>,
    #[serde(default)]
    vars: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[allow(non_snake_case)]
struct RawContext {
    S1: RawSemigroup,
    S2: RawSemigroup,
    S: RawSemigroup,
    #[serde(default)]
    h1: Option<Vec<Vec<Rational>>>,
    #[serde(default)]
    h2: Option<Vec<Vec<Rational>>>,
}

#[derive(Deserialize)]
struct RawAlgebra {
    ring: RawRing,
    base: RawRing,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawDocument {
    Semigroup(RawSemigroup),
    Ring(RawRing),
    Context(RawContext),
    Algebra(RawAlgebra),
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum Document {
    Semigroup(AffineSemigroup),
    Ring(EmbeddedRing),
    Context(FiberedSumContext),
    Algebra(AlgebraPair),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Semigroup(_) => "semigroup",
            Document::Ring(_) => "ring",
            Document::Context(_) => "context",
            Document::Algebra(_) => "algebra",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Semigroup(s) => semigroup_json(s),
            Document::Ring(r) => ring_json(r),
            Document::Context(c) => context_json(c),
            Document::Algebra(p) => algebra_json(p),
        }
    }
}

fn semigroup_from(raw: RawSemigroup) -> Result<AffineSemigroup> {
    AffineSemigroup::new(raw.dim, raw.gens)
}

fn ring_from(raw: RawRing) -> Result<EmbeddedRing> {
    let gens: Vec<Vec<BigRat>> = raw.gens.into_iter().map(|g| g.into_iter().map(|q| q.0).collect()).collect();
    EmbeddedRing::from_rational_generators(raw.dim, &gens, raw.vars)
}

fn matrix_from(rows: Vec<Vec<Rational>>, cols: usize) -> Result<RatMatrix> {
    RatMatrix::from_rows(cols, rows.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect())
}

pub fn parse_document(text: &str) -> Result<Document> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(match raw {
        RawDocument::Semigroup(s) => Document::Semigroup(semigroup_from(s)?),
        RawDocument::Ring(r) => Document::Ring(ring_from(r)?),
        RawDocument::Context(c) => {
            let s = semigroup_from(c.S)?;
            let h1 = c.h1.map(|m| matrix_from(m, s.ambient_dim())).transpose()?;
            let h2 = c.h2.map(|m| matrix_from(m, s.ambient_dim())).transpose()?;
            Document::Context(FiberedSumContext::new(&semigroup_from(c.S1)?, &semigroup_from(c.S2)?, &s, h1, h2)?)
        }
        RawDocument::Algebra(a) => Document::Algebra(AlgebraPair::new(ring_from(a.ring)?, ring_from(a.base)?)?),
    })
}

fn expect_kind(doc: Document, kind: &str) -> Result<Document> {
    if doc.kind() == kind {
        Ok(doc)
    } else {
        Err(Error::Parse(format!("expected a {kind} document, found {}", doc.kind())))
    }
}

pub fn parse_semigroup(text: &str) -> Result<AffineSemigroup> {
    match expect_kind(parse_document(text)?, "semigroup")? {
        Document::Semigroup(s) => Ok(s),
        _ => unreachable!(),
    }
}

pub fn parse_ring(text: &str) -> Result<EmbeddedRing> {
    match expect_kind(parse_document(text)?, "ring")? {
        Document::Ring(r) => Ok(r),
        _ => unreachable!(),
    }
}

pub fn parse_context(text: &str) -> Result<FiberedSumContext> {
    match expect_kind(parse_document(text)?, "context")? {
        Document::Context(c) => Ok(c),
        _ => unreachable!(),
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPair> {
    match expect_kind(parse_document(text)?, "algebra")? {
        Document::Algebra(a) => Ok(a),
        _ => unreachable!(),
    }
}

pub fn semigroup_json(s: &AffineSemigroup) -> Value {
    json!({"kind": "semigroup", "dim": s.ambient_dim(), "gens": s.generators()})
}

pub fn ring_json(r: &EmbeddedRing) -> Value {
    let gens: Vec<Vec<Value>> =
        r.rational_generators().iter().map(|g| g.iter().map(rational_value).collect()).collect();
    json!({"kind": "ring", "dim": r.dim(), "gens": gens, "vars": r.var_names()})
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    let rows: Vec<Vec<Value>> = m.row_vecs().iter().map(|r| r.iter().map(rational_value).collect()).collect();
    json!(rows)
}

pub fn context_json(c: &FiberedSumContext) -> Value {
    json!({
        "kind": "context",
        "S1": semigroup_json(c.s1()),
        "S2": semigroup_json(c.s2()),
        "S": semigroup_json(c.s()),
        "h1": matrix_json(c.h1().matrix()),
        "h2": matrix_json(c.h2().matrix()),
    })
}

pub fn algebra_json(p: &AlgebraPair) -> Value {
    json!({"kind": "algebra", "ring": ring_json(&p.ring), "base": ring_json(&p.base)})
}
