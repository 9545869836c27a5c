//! JSON documents read and written by the command-line tool.
//!
//! Rationals are `"num/den"` strings (integers are accepted on input).
//! Paths and components are numbered from 1, and points are listed as
//! `[x_1, …, x_n, x'_1, …, x'_n]`. A function is `[λ_1, …, λ_n, λ_0]`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine::AffineFunction;
use crate::check::Verdict;
use crate::error::{Error, Result};
use crate::llrf::{LexRankingFunction, RankingClass};
use crate::mlc::{Domain, MlcLoop};
use crate::rational::Rational;
use crate::witness::{BgDimWitness, PointSets, QlrfWitness, Rejection, WitnessSystem, WitnessVerdict};

pub fn function_row(f: &AffineFunction) -> Vec<Rational> {
    let mut v = f.coeffs.clone();
    v.push(f.constant.clone());
    v
}

fn function_from_row(row: &[Rational], n: usize) -> Result<AffineFunction> {
    if row.len() != n + 1 {
        return Err(Error::Invalid(format!(
            "a component needs {} entries (coefficients then constant), found {}",
            n + 1,
            row.len()
        )));
    }
    Ok(AffineFunction::new(row[..n].to_vec(), row[n].clone()))
}

fn assignment_json(f: &LexRankingFunction) -> Value {
    match &f.assignment {
        None => Value::Null,
        Some(a) => Value::Array(a.iter().map(|c| c.map_or(Value::Null, |i| json!(i + 1))).collect()),
    }
}

/// The body shared by synthesis and dimension answers.
pub fn function_json(l: &MlcLoop, f: &LexRankingFunction) -> Value {
    json!({
        "dimension": f.dimension(),
        "variables": l.var_names,
        "components": f.components.iter().map(function_row).collect::<Vec<_>>(),
        "assignment": assignment_json(f),
    })
}

fn header(class: RankingClass, domain: Domain) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("class".into(), json!(class.tag()));
    m.insert("domain".into(), json!(domain.tag()));
    m
}

fn merge(mut m: serde_json::Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(e) = extra {
        m.extend(e);
    }
    Value::Object(m)
}

pub fn synth_json(l: &MlcLoop, class: RankingClass, found: Option<&LexRankingFunction>) -> Value {
    let mut m = header(class, l.domain);
    match found {
        None => {
            m.insert("status".into(), json!("none"));
            Value::Object(m)
        }
        Some(f) => {
            m.insert("status".into(), json!("found"));
            merge(m, function_json(l, f))
        }
    }
}

pub fn min_dimension_json(l: &MlcLoop, class: RankingClass, found: Option<&LexRankingFunction>) -> Value {
    let mut m = header(class, l.domain);
    m.insert("min_dimension".into(), found.map_or(Value::Null, |f| json!(f.dimension())));
    match found {
        None => Value::Object(m),
        Some(f) => merge(m, json!({ "function": function_json(l, f) })),
    }
}

pub fn at_most_json(l: &MlcLoop, class: RankingClass, d: usize, found: Option<&LexRankingFunction>) -> Value {
    let mut m = header(class, l.domain);
    m.insert("at_most".into(), json!(d));
    m.insert("at_most_answer".into(), json!(found.is_some()));
    if let Some(f) = found {
        m.insert("function".into(), function_json(l, f));
    }
    Value::Object(m)
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Valid => json!({ "verdict": "valid" }),
        Verdict::Invalid { path, component, condition } => json!({
            "verdict": "invalid",
            "path": path + 1,
            "component": component + 1,
            "condition": condition.tag(),
        }),
    }
}

/// A candidate ranking function: `components` rows and an optional
/// path-to-component `assignment` (1-based, `null` for unassigned).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateDoc {
    pub components: Vec<Vec<Rational>>,
    #[serde(default)]
    pub assignment: Option<Vec<Option<usize>>>,
}

pub fn parse_candidate(text: &str, l: &MlcLoop, class: RankingClass) -> Result<LexRankingFunction> {
    let doc: CandidateDoc = serde_json::from_str(text)?;
    let comps = doc
        .components
        .iter()
        .map(|r| function_from_row(r, l.n()))
        .collect::<Result<Vec<_>>>()?;
    let assignment = match doc.assignment {
        None => None,
        Some(a) => Some(
            a.into_iter()
                .map(|c| match c {
                    None => Ok(None),
                    Some(0) => Err(Error::Invalid("components are numbered from 1".into())),
                    Some(i) => Ok(Some(i - 1)),
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(LexRankingFunction::new(comps, class, assignment))
}

pub fn candidate_json(f: &LexRankingFunction) -> Value {
    json!({
        "components": f.components.iter().map(function_row).collect::<Vec<_>>(),
        "assignment": assignment_json(f),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathPoints {
    #[serde(default)]
    pub x: Vec<Vec<Rational>>,
    #[serde(default)]
    pub y: Vec<Vec<Rational>>,
}

fn sets_doc(s: &PointSets) -> Vec<PathPoints> {
    s.x.iter().zip(&s.y).map(|(x, y)| PathPoints { x: x.clone(), y: y.clone() }).collect()
}

fn sets_from(doc: Vec<PathPoints>) -> PointSets {
    let (x, y) = doc.into_iter().map(|p| (p.x, p.y)).unzip();
    PointSets { x, y }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QlrfDoc {
    pub target: usize,
    pub paths: Vec<PathPoints>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub paths: Vec<PathPoints>,
}

/// A witness file; `kind` selects the variant.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum WitnessDoc {
    #[serde(rename = "qlrf")]
    Qlrf { target: usize, paths: Vec<PathPoints> },
    #[serde(rename = "bms-llrf")]
    BmsLlrf { witnesses: Vec<QlrfDoc> },
    #[serde(rename = "bg-dim")]
    BgDim { chain: Vec<ChainDoc> },
    #[serde(rename = "adfg-dim")]
    AdfgDim { chain: Vec<ChainDoc>, global: ChainDoc },
}

/// A parsed witness of any kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Qlrf(QlrfWitness),
    BmsLlrf(Vec<QlrfWitness>),
    Dim(BgDimWitness),
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Qlrf(_) => "qlrf",
            Witness::BmsLlrf(_) => "bms-llrf",
            Witness::Dim(w) if w.class == RankingClass::Adfg => "adfg-dim",
            Witness::Dim(_) => "bg-dim",
        }
    }
}

fn qlrf_from(target: usize, paths: Vec<PathPoints>) -> Result<QlrfWitness> {
    if target == 0 {
        return Err(Error::Invalid("paths are numbered from 1".into()));
    }
    Ok(QlrfWitness { target: target - 1, sets: sets_from(paths) })
}

pub fn parse_witness(text: &str) -> Result<Witness> {
    let doc: WitnessDoc = serde_json::from_str(text)?;
    Ok(match doc {
        WitnessDoc::Qlrf { target, paths } => Witness::Qlrf(qlrf_from(target, paths)?),
        WitnessDoc::BmsLlrf { witnesses } => Witness::BmsLlrf(
            witnesses
                .into_iter()
                .map(|w| qlrf_from(w.target, w.paths))
                .collect::<Result<Vec<_>>>()?,
        ),
        WitnessDoc::BgDim { chain } => Witness::Dim(BgDimWitness {
            class: RankingClass::Bg,
            chain: chain.into_iter().map(|c| sets_from(c.paths)).collect(),
            global: None,
        }),
        WitnessDoc::AdfgDim { chain, global } => Witness::Dim(BgDimWitness {
            class: RankingClass::Adfg,
            chain: chain.into_iter().map(|c| sets_from(c.paths)).collect(),
            global: Some(sets_from(global.paths)),
        }),
    })
}

pub fn witness_doc(w: &Witness) -> WitnessDoc {
    let qdoc = |q: &QlrfWitness| QlrfDoc { target: q.target + 1, paths: sets_doc(&q.sets) };
    match w {
        Witness::Qlrf(q) => WitnessDoc::Qlrf { target: q.target + 1, paths: sets_doc(&q.sets) },
        Witness::BmsLlrf(ws) => WitnessDoc::BmsLlrf { witnesses: ws.iter().map(qdoc).collect() },
        Witness::Dim(d) => {
            let chain = d.chain.iter().map(|s| ChainDoc { paths: sets_doc(s) }).collect();
            match &d.global {
                Some(g) => WitnessDoc::AdfgDim { chain, global: ChainDoc { paths: sets_doc(g) } },
                None => WitnessDoc::BgDim { chain },
            }
        }
    }
}

pub fn witness_json(w: &Witness) -> Value {
    serde_json::to_value(witness_doc(w)).expect("witness documents serialize")
}

pub fn witness_verdict_json(v: &WitnessVerdict) -> Value {
    let reason = match v {
        WitnessVerdict::Accepted => return json!({ "verdict": "accepted" }),
        WitnessVerdict::Rejected(r) => r,
    };
    let reason = match reason {
        Rejection::Structural(msg) => json!({ "kind": "structural", "message": msg }),
        Rejection::Membership { component, path, ray, index } => json!({
            "kind": "membership",
            "component": component.map(|c| c + 1),
            "path": path + 1,
            "set": if *ray { "y" } else { "x" },
            "index": index + 1,
        }),
        Rejection::Feasible { system, solution } => {
            let (name, component) = match system {
                WitnessSystem::Qlrf => ("qlrf", None),
                WitnessSystem::Psi => ("psi", None),
                WitnessSystem::Gamma(j) => ("gamma", Some(j + 1)),
            };
            json!({
                "kind": "feasible",
                "system": name,
                "component": component,
                "solution": function_row(solution),
            })
        }
    };
    json!({ "verdict": "rejected", "reason": reason })
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "code": e.code(), "message": e.to_string() });
    match e {
        Error::Parse { line, col, .. } => {
            v["line"] = json!(line);
            v["column"] = json!(col);
        }
        Error::Resource { explored, partial, .. } => {
            v["explored"] = json!(explored);
            v["partial_points"] = json!(partial.len());
        }
        _ => {}
    }
    v
}
