use super::search::{NodeKind, SearchNode, Status};
use super::ProverError;
use crate::calculus::CalculusVariant;
use crate::formula::{Formula, Polarity};
use crate::metatheory::Derivation;
use crate::semantics::{falsifies_in, Frame, KripkeModel};
use crate::sequent::Component;

fn world_name(c: &Component) -> String {
    format!("w{}", c.tag)
}

/// Read a countermodel off a pruned failed tree and check that it
/// falsifies the root sequent. Returns the model and the root world.
pub fn extract_model(
    t: &SearchNode,
    v: CalculusVariant,
) -> Result<(KripkeModel, String), ProverError> {
    if t.status != Status::Failed {
        return Err(ProverError::Precondition("tree is not failed".into()));
    }
    let mut m = KripkeModel::new();
    let mut leaves = Vec::new();
    fan(t, &mut m, &mut leaves);
    let root = world_name(t.sequent.head());
    let frame = if v == CalculusVariant::KB {
        Frame::Symmetric
    } else {
        Frame::Directed
    };
    match falsifies_in(&m, &root, &t.sequent, frame) {
        Ok(true) => Ok((m, root)),
        Ok(false) => Err(ProverError::InternalModelError(format!(
            "root {root} of `{}`; fan leaves: {}",
            t.sequent,
            leaves.join(" | ")
        ))),
        Err(e) => Err(ProverError::InternalModelError(e.to_string())),
    }
}

/// Add the fan rooted at `t` to `m`; returns the world of the last
/// component of `t`'s sequent.
fn fan(t: &SearchNode, m: &mut KripkeModel, leaves: &mut Vec<String>) -> String {
    match t.kind {
        NodeKind::OrNode => fan(&t.children[0], m, leaves),
        NodeKind::Leaf => {
            leaves.push(t.sequent.to_string());
            world(t.sequent.last(), m)
        }
        NodeKind::AndNode => {
            let w = world(t.sequent.last(), m);
            for choice in &t.children {
                let child = fan(&choice.children[0], m, leaves);
                let principal = choice
                    .applied
                    .as_ref()
                    .and_then(|i| i.principal.as_ref())
                    .and_then(Formula::as_box)
                    .map(|(pol, _)| pol);
                match principal {
                    Some(Polarity::Backward) => m.add_edge(&child, &w),
                    _ => m.add_edge(&w, &child),
                }
            }
            w
        }
    }
}

fn world(c: &Component, m: &mut KripkeModel) -> String {
    let name = world_name(c);
    m.add_world(&name);
    for f in c.antecedent.distinct() {
        if let Formula::Atom(a) = f {
            m.set_atom(&name, a, true);
        }
    }
    name
}

/// The derivation recorded in a closed search tree. An and-node
/// contributes its first closed choice.
pub fn extract_derivation(t: &SearchNode) -> Result<Derivation, ProverError> {
    if t.status != Status::Closed {
        return Err(ProverError::Precondition("tree is not closed".into()));
    }
    Ok(derive(t))
}

fn derive(t: &SearchNode) -> Derivation {
    match t.kind {
        NodeKind::AndNode => derive(
            t.children
                .iter()
                .find(|c| c.status == Status::Closed)
                .expect("closed and-node has a closed choice"),
        ),
        _ => {
            let rule = t.rule().expect("closed node has a rule");
            Derivation::new(t.sequent.clone(), rule, t.children.iter().map(derive).collect())
        }
    }
}
