use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::FormatError;
use crate::calculus::{CalculusVariant, RuleId};
use crate::formula::{parse, Formula, Polarity};
use crate::metatheory::Derivation;
use crate::prover::Statistics;
use crate::semantics::KripkeModel;
use crate::sequent::{Component, LinearNestedSequent};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    antecedent: Vec<String>,
    succedent: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SequentJson {
    components: Vec<ComponentJson>,
    links: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DerivationJson {
    sequent: SequentJson,
    rule: String,
    premisses: Vec<DerivationJson>,
}

#[derive(Serialize, Deserialize)]
struct DerivationDocument {
    schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    derivation: DerivationJson,
}

/// The model JSON layout. `valuation` lists, per world, every atom of
/// interest with its truth value.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelDocument {
    pub schema_version: String,
    pub worlds: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub valuation: BTreeMap<String, BTreeMap<String, bool>>,
    pub root: String,
}

fn formula(text: &str) -> Result<Formula, FormatError> {
    parse(text).map_err(|source| FormatError::Formula {
        text: text.to_string(),
        source,
    })
}

fn encode_sequent(s: &LinearNestedSequent) -> SequentJson {
    let side = |m: &crate::sequent::Multiset| m.iter().map(Formula::to_ascii).collect();
    SequentJson {
        components: s
            .components()
            .iter()
            .map(|c| ComponentJson {
                antecedent: side(&c.antecedent),
                succedent: side(&c.succedent),
            })
            .collect(),
        links: s
            .links()
            .iter()
            .map(|l| match l {
                Polarity::Forward => "F".to_string(),
                Polarity::Backward => "P".to_string(),
            })
            .collect(),
    }
}

fn decode_sequent(j: &SequentJson) -> Result<LinearNestedSequent, FormatError> {
    let side = |v: &[String]| v.iter().map(|t| formula(t)).collect::<Result<Vec<_>, _>>();
    let components = j
        .components
        .iter()
        .map(|c| Ok(Component::from_formulas(side(&c.antecedent)?, side(&c.succedent)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let links = j
        .links
        .iter()
        .map(|l| match l.as_str() {
            "F" => Ok(Polarity::Forward),
            "P" => Ok(Polarity::Backward),
            other => Err(FormatError::UnknownLink(other.to_string())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let shape = FormatError::Shape {
        components: components.len(),
        links: links.len(),
    };
    LinearNestedSequent::from_parts(components, links).ok_or(shape)
}

pub fn sequent_to_json(s: &LinearNestedSequent) -> Value {
    serde_json::to_value(encode_sequent(s)).expect("plain data serializes")
}

pub fn sequent_from_json(v: &Value) -> Result<LinearNestedSequent, FormatError> {
    decode_sequent(&SequentJson::deserialize(v)?)
}

fn encode_derivation(d: &Derivation) -> DerivationJson {
    DerivationJson {
        sequent: encode_sequent(&d.conclusion),
        rule: d.rule.name().to_string(),
        premisses: d.premisses.iter().map(encode_derivation).collect(),
    }
}

fn decode_derivation(j: &DerivationJson) -> Result<Derivation, FormatError> {
    let rule = RuleId::from_name(&j.rule).ok_or_else(|| FormatError::UnknownRule(j.rule.clone()))?;
    let premisses = j
        .premisses
        .iter()
        .map(decode_derivation)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation::new(decode_sequent(&j.sequent)?, rule, premisses))
}

/// `{schema_version, variant, derivation: {sequent, rule, premisses}}`.
pub fn derivation_to_json(d: &Derivation, v: Option<CalculusVariant>) -> Value {
    let doc = DerivationDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        variant: v.map(|v| v.name().to_string()),
        derivation: encode_derivation(d),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

/// Inverse of [`derivation_to_json`]. Heights are recomputed, so the
/// result is a well-formed tree but not yet checked.
pub fn derivation_from_json(
    text: &str,
) -> Result<(Derivation, Option<CalculusVariant>), FormatError> {
    let doc: DerivationDocument = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(FormatError::Schema(doc.schema_version));
    }
    let variant = doc.variant.as_deref().and_then(CalculusVariant::from_name);
    Ok((decode_derivation(&doc.derivation)?, variant))
}

/// The model as a [`ModelDocument`]. Atoms in `atoms` that a world does
/// not make true are listed as false there.
pub fn model_to_json(m: &KripkeModel, root: &str, atoms: &BTreeSet<String>) -> Value {
    let valuation = m
        .worlds()
        .iter()
        .map(|w| {
            let truths = m.true_atoms(w).cloned().unwrap_or_default();
            let mut row: BTreeMap<String, bool> =
                atoms.iter().map(|a| (a.clone(), false)).collect();
            row.extend(truths.iter().map(|a| (a.to_string(), true)));
            (w.clone(), row)
        })
        .collect();
    let doc = ModelDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        worlds: m.worlds().to_vec(),
        edges: m
            .edges()
            .into_iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect(),
        valuation,
        root: root.to_string(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn model_from_json(text: &str) -> Result<(KripkeModel, String), FormatError> {
    let doc: ModelDocument = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(FormatError::Schema(doc.schema_version));
    }
    let mut m = KripkeModel::new();
    for w in &doc.worlds {
        m.add_world(w);
    }
    let known = |w: &String| {
        m.contains_world(w)
            .then_some(())
            .ok_or_else(|| FormatError::UnknownWorld(w.clone()))
    };
    for [a, b] in &doc.edges {
        known(a)?;
        known(b)?;
    }
    known(&doc.root)?;
    for w in doc.valuation.keys() {
        known(w)?;
    }
    for [a, b] in &doc.edges {
        m.add_edge(a, b);
    }
    for (w, row) in &doc.valuation {
        for (atom, &value) in row {
            m.set_atom(w, atom, value);
        }
    }
    Ok((m, doc.root))
}

pub fn statistics_to_json(s: &Statistics) -> Value {
    json!({
        "nodes": s.nodes,
        "restarts": s.restarts,
        "max_length": s.max_length,
        "elapsed_ms": s.elapsed_ms,
    })
}
