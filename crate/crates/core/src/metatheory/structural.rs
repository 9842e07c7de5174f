//! Weakening and contraction. Component indices are stable under every
//! rule, so both are one traversal that edits the same position in every
//! node above, until a rule deletes that position. A component created
//! later at the same index is a different component and is left alone.
//! Neither changes the height.

use super::{certify, Derivation, MetaError};
use crate::calculus::RuleId;
use crate::formula::Formula;
use crate::sequent::{LinearNestedSequent, Multiset, Side};

enum Edit<'a> {
    /// Per-position `(left, right)` additions.
    Add(&'a [(Multiset, Multiset)]),
    Remove {
        position: usize,
        side: Side,
        formula: &'a Formula,
    },
}

fn apply(
    s: &LinearNestedSequent,
    edit: &Edit,
    live: usize,
) -> Result<LinearNestedSequent, MetaError> {
    let mut out = s.clone();
    match edit {
        Edit::Add(adds) => {
            for (i, (l, r)) in adds.iter().enumerate().take(live) {
                let c = out.component_mut(i);
                c.antecedent = c.antecedent.union(l);
                c.succedent = c.succedent.union(r);
            }
        }
        Edit::Remove {
            position,
            side,
            formula,
        } => {
            if *position < live {
                let m = out.component_mut(*position).side_mut(*side);
                if m.count(formula) < 2 {
                    return Err(MetaError::NotDuplicated {
                        position: *position,
                        formula: (*formula).clone(),
                    });
                }
                m.remove_one(formula);
            }
        }
    }
    Ok(out)
}

fn adjust(d: &Derivation, edit: &Edit) -> Result<Derivation, MetaError> {
    adjust_live(d, edit, d.conclusion.len())
}

/// `live` counts the leading positions still owned by the edited components.
fn adjust_live(d: &Derivation, edit: &Edit, live: usize) -> Result<Derivation, MetaError> {
    let live = live.min(d.conclusion.len());
    let conclusion = apply(&d.conclusion, edit, live)?;
    let premisses = d
        .premisses
        .iter()
        .map(|p| adjust_live(p, edit, live))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation::new(conclusion, d.rule, premisses))
}

fn in_range(d: &Derivation, position: usize) -> Result<(), MetaError> {
    let len = d.conclusion.len();
    if position >= len {
        return Err(MetaError::PositionOutOfRange { position, len });
    }
    Ok(())
}

/// Add `add_l ⇒ add_r` to component `position` of the conclusion.
pub fn weaken(
    d: &Derivation,
    position: usize,
    add_l: &Multiset,
    add_r: &Multiset,
) -> Result<Derivation, MetaError> {
    in_range(d, position)?;
    let mut adds = vec![(Multiset::new(), Multiset::new()); position + 1];
    adds[position] = (add_l.clone(), add_r.clone());
    let out = adjust(d, &Edit::Add(&adds))?;
    certify(out, d.inferred_variant(), "weakening")
}

/// Remove one of at least two copies of `f`.
pub fn contract(
    d: &Derivation,
    position: usize,
    side: Side,
    f: &Formula,
) -> Result<Derivation, MetaError> {
    in_range(d, position)?;
    let out = contract_raw(d, position, side, f)?;
    certify(out, d.inferred_variant(), "contraction")
}

pub(crate) fn contract_raw(
    d: &Derivation,
    position: usize,
    side: Side,
    f: &Formula,
) -> Result<Derivation, MetaError> {
    adjust(
        d,
        &Edit::Remove {
            position,
            side,
            formula: f,
        },
    )
}

/// Weaken (and extend with EW) until the conclusion is `target`.
pub fn weaken_to(d: &Derivation, target: &LinearNestedSequent) -> Result<Derivation, MetaError> {
    let out = weaken_to_raw(d, target)?;
    certify(out, d.inferred_variant(), "weakening")
}

pub(crate) fn weaken_to_raw(
    d: &Derivation,
    target: &LinearNestedSequent,
) -> Result<Derivation, MetaError> {
    let not_sub = || MetaError::NotASubsequent {
        have: d.conclusion.clone(),
        want: target.clone(),
    };
    let have = &d.conclusion;
    if have.len() > target.len() || target.links()[..have.len() - 1] != *have.links() {
        return Err(not_sub());
    }
    let mut out = d.clone();
    for k in have.len()..target.len() {
        let concl = out
            .conclusion
            .extended(target.links()[k - 1], target.component(k).clone());
        out = Derivation::new(concl, RuleId::EW, vec![out]);
    }
    let mut adds = Vec::with_capacity(target.len());
    for (now, want) in out.conclusion.components().iter().zip(target.components()) {
        if !now.is_subcomponent(want) {
            return Err(not_sub());
        }
        adds.push((
            want.antecedent.difference(&now.antecedent),
            want.succedent.difference(&now.succedent),
        ));
    }
    if adds.iter().all(|(l, r)| l.is_empty() && r.is_empty()) {
        return Ok(out);
    }
    adjust(&out, &Edit::Add(&adds))
}

/// Contract duplicates until the conclusion is `target`.
pub fn contract_to(d: &Derivation, target: &LinearNestedSequent) -> Result<Derivation, MetaError> {
    let out = contract_to_raw(d, target)?;
    certify(out, d.inferred_variant(), "contraction")
}

pub(crate) fn contract_to_raw(
    d: &Derivation,
    target: &LinearNestedSequent,
) -> Result<Derivation, MetaError> {
    if !target.is_subsequent(&d.conclusion) {
        return Err(MetaError::NotASubsequent {
            have: d.conclusion.clone(),
            want: target.clone(),
        });
    }
    let mut out = d.clone();
    for i in 0..target.len() {
        for side in [Side::Left, Side::Right] {
            let excess: Vec<(Formula, usize)> = {
                let have = d.conclusion.component(i).side(side);
                let want = target.component(i).side(side);
                have.counts()
                    .map(|(f, n)| (f.clone(), n - want.count(f)))
                    .filter(|(_, k)| *k > 0)
                    .collect()
            };
            for (f, k) in excess {
                for _ in 0..k {
                    out = contract_raw(&out, i, side, &f)?;
                }
            }
        }
    }
    Ok(out)
}
