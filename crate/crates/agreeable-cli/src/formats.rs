//! Instance file formats.
//!
//! Instances travel as UTF-8 JSON with a version tag and a `kind` of
//! `ordinal`, `additive`, or `oracle-planted`:
//!
//! ```json
//! {"version": 1, "kind": "ordinal", "rankings": [[1,2,3],[3,2,1]]}
//! {"version": 1, "kind": "additive", "utilities": [[1, "1/2"], [0, 3]]}
//! {"version": 1, "kind": "oracle-planted", "m": 16, "t_star": [1]}
//! ```
//!
//! Utilities are exact rationals: JSON integers, or strings `"p/q"`. Binary
//! floating point literals are rejected so that agreeability comparisons
//! stay exact. `parse(emit(x))` is the identity on every kind.
//!
//! Reduction sources use plain text: DIMACS CNF for formulas, one integer
//! per line for partition multisets, and one whitespace-separated subset per
//! line for set cover collections.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Visitor;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use agreeable_core::instance::validate_rankings;
use agreeable_core::oracle::{make_planted_oracle, PlantedOracle};
use agreeable_core::reductions::{CnfFormula, PartitionInstance, SetCoverInstance};
use agreeable_core::{AdditiveProfile, ItemSet, Items, OrdinalProfile};

pub const FORMAT_VERSION: u32 = 1;

/// Exact rational with integer-or-string JSON rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRepr(pub BigRational);

impl Serialize for RationalRepr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let value = &self.0;
        if value.is_integer() {
            if let Some(v) = value.numer().to_i64() {
                return serializer.serialize_i64(v);
            }
            return serializer.serialize_str(&value.numer().to_string());
        }
        serializer.serialize_str(&format!("{}/{}", value.numer(), value.denom()))
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = RationalRepr;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a rational string like \"3/4\"")
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok(RationalRepr(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok(RationalRepr(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Self::Value, E> {
        Err(E::custom(format!(
            "floating point literal {v} is not exact; write it as a rational string like \"1/2\""
        )))
    }

    fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Self::Value, E> {
        BigRational::from_str(s)
            .map(RationalRepr)
            .map_err(|e| E::custom(format!("bad rational {s:?}: {e}")))
    }
}

impl<'de> Deserialize<'de> for RationalRepr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Optional instance annotations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// On-disk schema: one flat record with per-kind payload fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstanceFile {
    version: u32,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rankings: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    utilities: Option<Vec<Vec<RationalRepr>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_star: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metadata: Option<Metadata>,
}

/// A parsed, validated instance.
#[derive(Debug)]
pub enum Instance {
    Ordinal(OrdinalProfile),
    Additive(AdditiveProfile),
    OraclePlanted(PlantedOracle),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Ordinal(_) => "ordinal",
            Instance::Additive(_) => "additive",
            Instance::OraclePlanted(_) => "oracle-planted",
        }
    }

    pub fn items(&self) -> Items {
        match self {
            Instance::Ordinal(p) => p.items(),
            Instance::Additive(p) => p.items(),
            Instance::OraclePlanted(p) => p.items(),
        }
    }
}

/// A parsed instance file: typed payload plus optional metadata.
#[derive(Debug)]
pub struct InstanceFile {
    pub instance: Instance,
    pub metadata: Option<Metadata>,
}

fn reject_field(kind: &str, field: &str, present: bool) -> Result<()> {
    if present {
        bail!("field `{field}` is not allowed for kind \"{kind}\"");
    }
    Ok(())
}

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let raw: RawInstanceFile =
        serde_json::from_str(text).context("instance file is not valid JSON for this schema")?;
    if raw.version != FORMAT_VERSION {
        bail!(
            "unsupported instance file version {} (expected {FORMAT_VERSION})",
            raw.version
        );
    }
    let instance = match raw.kind.as_str() {
        "ordinal" => {
            reject_field("ordinal", "utilities", raw.utilities.is_some())?;
            reject_field("ordinal", "m", raw.m.is_some())?;
            reject_field("ordinal", "t_star", raw.t_star.is_some())?;
            let rankings = raw
                .rankings
                .ok_or_else(|| anyhow!("kind \"ordinal\" requires field `rankings`"))?;
            let m = rankings.first().map_or(0, |r| r.len() as u32);
            let report = validate_rankings(m, &rankings);
            if !report.is_valid() {
                bail!("invalid rankings: {report}");
            }
            Instance::Ordinal(OrdinalProfile::new(rankings)?)
        }
        "additive" => {
            reject_field("additive", "rankings", raw.rankings.is_some())?;
            reject_field("additive", "m", raw.m.is_some())?;
            reject_field("additive", "t_star", raw.t_star.is_some())?;
            let utilities = raw
                .utilities
                .ok_or_else(|| anyhow!("kind \"additive\" requires field `utilities`"))?;
            let rows: Vec<Vec<BigRational>> = utilities
                .into_iter()
                .map(|row| row.into_iter().map(|r| r.0).collect())
                .collect();
            Instance::Additive(AdditiveProfile::new(rows)?)
        }
        "oracle-planted" => {
            reject_field("oracle-planted", "rankings", raw.rankings.is_some())?;
            reject_field("oracle-planted", "utilities", raw.utilities.is_some())?;
            let m = raw
                .m
                .ok_or_else(|| anyhow!("kind \"oracle-planted\" requires field `m`"))?;
            let t_star = raw
                .t_star
                .ok_or_else(|| anyhow!("kind \"oracle-planted\" requires field `t_star`"))?;
            let t_star = ItemSet::new(Items::new(m)?, t_star)?;
            Instance::OraclePlanted(make_planted_oracle(m, t_star)?)
        }
        other => bail!(
            "unknown kind {other:?}; expected \"ordinal\", \"additive\", or \"oracle-planted\""
        ),
    };
    Ok(InstanceFile {
        instance,
        metadata: raw.metadata,
    })
}

/// Renders an instance file; stable field order, pretty-printed.
pub fn emit_instance(file: &InstanceFile) -> String {
    let mut raw = RawInstanceFile {
        version: FORMAT_VERSION,
        kind: file.instance.kind().to_string(),
        rankings: None,
        utilities: None,
        m: None,
        t_star: None,
        metadata: file.metadata.clone(),
    };
    match &file.instance {
        Instance::Ordinal(p) => {
            raw.rankings = Some(p.rankings().to_vec());
        }
        Instance::Additive(p) => {
            raw.utilities = Some(
                p.utility_rows()
                    .iter()
                    .map(|row| row.iter().map(|u| RationalRepr(u.clone())).collect())
                    .collect(),
            );
        }
        Instance::OraclePlanted(p) => {
            raw.m = Some(p.items().count());
            raw.t_star = Some(p.planted_set().members().to_vec());
        }
    }
    let mut out = serde_json::to_string_pretty(&raw).expect("schema serializes");
    out.push('\n');
    out
}

/// Parses a DIMACS CNF file into a formula.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut declared: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if declared.is_some() {
                bail!("line {lineno}: duplicate problem line");
            }
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                bail!("line {lineno}: expected `p cnf <vars> <clauses>`");
            }
            let vars: u32 = parts
                .next()
                .ok_or_else(|| anyhow!("line {lineno}: missing variable count"))?
                .parse()
                .with_context(|| format!("line {lineno}: bad variable count"))?;
            let count: usize = parts
                .next()
                .ok_or_else(|| anyhow!("line {lineno}: missing clause count"))?
                .parse()
                .with_context(|| format!("line {lineno}: bad clause count"))?;
            declared = Some((vars, count));
            continue;
        }
        if declared.is_none() {
            bail!("line {lineno}: clause before the `p cnf` problem line");
        }
        for token in line.split_whitespace() {
            let lit: i32 = token
                .parse()
                .with_context(|| format!("line {lineno}: bad literal {token:?}"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = declared.ok_or_else(|| anyhow!("missing `p cnf` problem line"))?;
    if !current.is_empty() {
        bail!("last clause is not terminated by 0");
    }
    if clauses.len() != count {
        bail!(
            "problem line declares {count} clauses but {} were found",
            clauses.len()
        );
    }
    Ok(CnfFormula::new(vars, clauses)?)
}

/// Parses a partition multiset: one nonnegative integer per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_partition(text: &str) -> Result<PartitionInstance> {
    let mut elements = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: u64 = line
            .parse()
            .with_context(|| format!("line {}: expected a nonnegative integer, got {line:?}", lineno + 1))?;
        elements.push(value);
    }
    Ok(PartitionInstance::new(elements))
}

/// Parses a set cover collection: one subset per line as whitespace-
/// separated positive integers; the ground set is the union of all lines.
/// Blank lines and `#` comments are ignored.
pub fn parse_setcover(text: &str) -> Result<SetCoverInstance> {
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut subset = Vec::new();
        for token in line.split_whitespace() {
            let element: u32 = token.parse().with_context(|| {
                format!("line {}: expected a positive integer, got {token:?}", lineno + 1)
            })?;
            if element == 0 {
                bail!("line {}: element ids start at 1", lineno + 1);
            }
            subset.push(element);
        }
        subsets.push(subset);
    }
    let mut universe: Vec<u32> = subsets.iter().flatten().copied().collect();
    universe.sort_unstable();
    universe.dedup();
    if universe.is_empty() {
        bail!("set cover file contains no subsets");
    }
    Ok(SetCoverInstance::new(universe, subsets)?)
}

/// Renders a rational for human-facing output (plain integer when exact).
pub fn display_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses the `--set "i j k"` argument: whitespace- or comma-separated
/// 1-based item indices; an empty string is the empty set.
pub fn parse_set_argument(items: Items, arg: &str) -> Result<ItemSet> {
    let mut members = Vec::new();
    for token in arg.split(|c: char| c.is_whitespace() || c == ',') {
        if token.is_empty() {
            continue;
        }
        let item: u32 = token
            .parse()
            .with_context(|| format!("bad item index {token:?} in --set"))?;
        members.push(item);
    }
    Ok(ItemSet::new(items, members)?)
}
