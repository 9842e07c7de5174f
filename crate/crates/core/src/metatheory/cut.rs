//! Cut elimination by mutually recursive shift procedures.
//!
//! `sl` pushes a cut upward through the left derivation until the cut
//! formula is principal there, then hands over to `sr_p` (implications) or
//! `sr_box` (either box), which push it upward through the right
//! derivation. Every call is tagged with the measure
//! `(complexity of the cut formula, height sum, rank)`, rank 1 for `sl` and
//! 0 for the others, and the measure must strictly decrease from caller to
//! callee.

use super::structural::{contract_to_raw, weaken_to_raw};
use super::{certify, check_detailed, Derivation, MetaError};
use crate::calculus::{is_valid_instance, matching_principals, CalculusVariant, RuleId};
use crate::formula::{Formula, Polarity};
use crate::sequent::{merge, structurally_equivalent, Component, LinearNestedSequent, Side};

/// `(complexity, height sum, rank)`, compared lexicographically.
pub type Measure = (usize, usize, u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CallKind {
    ShiftLeft,
    ShiftRightBox(Polarity),
    ShiftRightImp,
}

/// One shift call. `caller` indexes [`CutTrace::calls`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutCall {
    pub kind: CallKind,
    pub measure: Measure,
    pub caller: Option<usize>,
}

/// Every shift call made during one cut, in call order.
#[derive(Clone, Debug, Default)]
pub struct CutTrace {
    pub calls: Vec<CutCall>,
    pub max_depth: usize,
}

impl CutTrace {
    /// Does every call have a strictly smaller measure than its caller?
    pub fn strictly_decreasing(&self) -> bool {
        self.calls.iter().all(|c| {
            c.caller
                .is_none_or(|p| c.measure < self.calls[p].measure)
        })
    }
}

const STACK_BYTES: usize = 512 << 20;

/// Eliminate a cut on `a` between `d1 ⊢ 𝒢 ⇕ Γ ⇒ Δ, A` and
/// `d2 ⊢ ℋ ⇕ A, Σ ⇒ Π`, giving a derivation of `𝒢⊕ℋ ⇕ Γ, Σ ⇒ Δ, Π`.
pub fn cut(d1: &Derivation, d2: &Derivation, a: &Formula) -> Result<Derivation, MetaError> {
    cut_with_trace(d1, d2, a).map(|(d, _)| d)
}

pub fn cut_with_trace(
    d1: &Derivation,
    d2: &Derivation,
    a: &Formula,
) -> Result<(Derivation, CutTrace), MetaError> {
    for d in [d1, d2] {
        if d.inferred_variant() != CalculusVariant::Kt {
            return Err(MetaError::UnsupportedVariant(d.inferred_variant()));
        }
        check_detailed(d, CalculusVariant::Kt)
            .map_err(|e| MetaError::InvalidInput(e.to_string()))?;
    }
    let (s1, s2) = (&d1.conclusion, &d2.conclusion);
    if !structurally_equivalent(s1, s2) {
        return Err(MetaError::StructuralMismatch);
    }
    if !s1.last().succedent.contains(a) || !s2.last().antecedent.contains(a) {
        return Err(MetaError::NotACutFormulaOccurrence(a.clone()));
    }
    let expected = merge(
        &remove(s1, s1.last_index(), Side::Right, a)?,
        &remove(s2, s2.last_index(), Side::Left, a)?,
    )?;
    let k = s1.last_index();
    let (d, trace) = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(STACK_BYTES)
            .spawn_scoped(scope, || {
                let mut cutter = Cutter::default();
                let out = cutter.sl(d1, d2, k, a);
                out.map(|d| (d, cutter.trace))
            })
            .expect("spawn cut worker")
            .join()
            .expect("cut worker panicked")
    })?;
    if d.conclusion != expected {
        return Err(MetaError::Internal(format!(
            "cut concluded `{}` instead of `{expected}`",
            d.conclusion
        )));
    }
    Ok((certify(d, CalculusVariant::Kt, "cut elimination")?, trace))
}

fn remove(
    s: &LinearNestedSequent,
    pos: usize,
    side: Side,
    a: &Formula,
) -> Result<LinearNestedSequent, MetaError> {
    let mut out = s.clone();
    if pos >= s.len() || !out.component_mut(pos).side_mut(side).remove_one(a) {
        return Err(MetaError::NotACutFormulaOccurrence(a.clone()));
    }
    Ok(out)
}

/// Union `extra` into the prefix of the (at least as long) `base`.
fn overlay(
    base: &LinearNestedSequent,
    extra: &LinearNestedSequent,
) -> Result<LinearNestedSequent, MetaError> {
    if extra.len() > base.len() || base.links()[..extra.len() - 1] != *extra.links() {
        return Err(MetaError::StructuralMismatch);
    }
    let mut out = base.clone();
    for (i, c) in extra.components().iter().enumerate() {
        let merged = out.component(i).union(c);
        *out.component_mut(i) = merged;
    }
    Ok(out)
}

fn node(
    conclusion: LinearNestedSequent,
    rule: RuleId,
    premisses: Vec<Derivation>,
) -> Result<Derivation, MetaError> {
    let concls: Vec<_> = premisses.iter().map(|p| p.conclusion.clone()).collect();
    if !is_valid_instance(&conclusion, rule, &concls, CalculusVariant::Kt) {
        return Err(MetaError::Internal(format!(
            "rebuilt {rule} on `{conclusion}` is not a rule instance (premisses: {})",
            concls.iter().map(|c| format!("`{c}`")).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(Derivation::new(conclusion, rule, premisses))
}

fn has_principal(d: &Derivation, a: &Formula) -> bool {
    let concls: Vec<_> = d.premisses.iter().map(|p| p.conclusion.clone()).collect();
    matching_principals(&d.conclusion, d.rule, &concls).contains(&Some(a.clone()))
}

fn is_right_rule(rule: RuleId) -> bool {
    matches!(
        rule,
        RuleId::ImpR | RuleId::BoxR1 | RuleId::BlackBoxR1 | RuleId::BoxR2 | RuleId::BlackBoxR2
    )
}

/// The last component of `d`'s conclusion, holding the cut formula, is
/// deleted by its last rule: drop the formula from that component and
/// weaken the result up to `target`.
fn deleted_component(
    d: &Derivation,
    pos: usize,
    side: Side,
    a: &Formula,
    target: &LinearNestedSequent,
) -> Result<Derivation, MetaError> {
    let shortened = if d.rule == RuleId::EW {
        d.premisses[0].clone()
    } else {
        node(remove(&d.conclusion, pos, side, a)?, d.rule, d.premisses.clone())?
    };
    weaken_to_raw(&shortened, target)
}

#[derive(Default)]
struct Cutter {
    trace: CutTrace,
    /// `(measure, index into trace.calls)` of the active calls.
    stack: Vec<(Measure, usize)>,
}

impl Cutter {
    fn enter(&mut self, kind: CallKind, m: Measure) -> Result<(), MetaError> {
        if let Some(&(top, _)) = self.stack.last() {
            if m >= top {
                return Err(MetaError::MeasureViolation(format!(
                    "{kind:?} at {m:?} called from {top:?}"
                )));
            }
        }
        self.trace.calls.push(CutCall {
            kind,
            measure: m,
            caller: self.stack.last().map(|&(_, i)| i),
        });
        self.stack.push((m, self.trace.calls.len() - 1));
        self.trace.max_depth = self.trace.max_depth.max(self.stack.len());
        Ok(())
    }

    fn scoped<T>(
        &mut self,
        kind: CallKind,
        m: Measure,
        body: impl FnOnce(&mut Self) -> Result<T, MetaError>,
    ) -> Result<T, MetaError> {
        self.enter(kind, m)?;
        let out = body(self);
        self.stack.pop();
        out
    }

    /// `d1 ⊢ S1` with `a` on the right of component `k`; `d2 ⊢ S2` of length
    /// `k + 1` with `a` on the left of its last component.
    fn sl(
        &mut self,
        d1: &Derivation,
        d2: &Derivation,
        k: usize,
        a: &Formula,
    ) -> Result<Derivation, MetaError> {
        let m = (a.complexity(), d1.height + d2.height, 1);
        self.scoped(CallKind::ShiftLeft, m, |me| me.sl_body(d1, d2, k, a))
    }

    fn sl_body(
        &mut self,
        d1: &Derivation,
        d2: &Derivation,
        k: usize,
        a: &Formula,
    ) -> Result<Derivation, MetaError> {
        let (s1, s2) = (&d1.conclusion, &d2.conclusion);
        let target = overlay(&remove(s1, k, Side::Right, a)?, &remove(s2, k, Side::Left, a)?)?;
        let last = s1.last_index();

        if k == last && is_right_rule(d1.rule) && has_principal(d1, a) {
            return match a.as_box() {
                None => self.sr_imp(d1, d2, k, a),
                Some((pol, _)) => {
                    let ext = d1.rule.extension_premiss().expect("box rule");
                    let witness = self.sl(&d1.premisses[ext], d2, k, a)?;
                    self.sr_box(d1, d2, k, a, pol, &witness)
                }
            };
        }
        if k == last && d1.rule.deletes_last() {
            return deleted_component(d1, k, Side::Right, a, &target);
        }
        if d1.premisses.is_empty() {
            if is_valid_instance(&target, d1.rule, &[], CalculusVariant::Kt) {
                return Ok(Derivation::leaf(target, d1.rule));
            }
            // `a` is the atom closing d1, so d2 already has what is needed.
            return weaken_to_raw(d2, &target);
        }
        let premisses = d1
            .premisses
            .iter()
            .map(|p| self.sl(p, d2, k, a))
            .collect::<Result<Vec<_>, _>>()?;
        node(target, d1.rule, premisses)
    }

    /// `d1 ⊢ S1` of length `j + 1` ending in `→R` on `a`; `d2` has `a` on the
    /// left of component `j`.
    fn sr_imp(
        &mut self,
        d1: &Derivation,
        d2: &Derivation,
        j: usize,
        a: &Formula,
    ) -> Result<Derivation, MetaError> {
        let m = (a.complexity(), d1.height + d2.height, 0);
        self.scoped(CallKind::ShiftRightImp, m, |me| me.sr_imp_body(d1, d2, j, a))
    }

    fn sr_imp_body(
        &mut self,
        d1: &Derivation,
        d2: &Derivation,
        j: usize,
        a: &Formula,
    ) -> Result<Derivation, MetaError> {
        let (s1, s2) = (&d1.conclusion, &d2.conclusion);
        let target = overlay(&remove(s2, j, Side::Left, a)?, &remove(s1, j, Side::Right, a)?)?;
        let last = s2.last_index();

        if d2.rule == RuleId::ImpL && last == j && has_principal(d2, a) {
            let Formula::Implies(b, c) = a else {
                return Err(MetaError::Internal("→L principal is not an implication".into()));
            };
            let (with_c, with_b) = (&d2.premisses[0], &d2.premisses[1]);
            let f1 = self.sl(d1, with_c, j, a)?;
            let f2 = self.sl(d1, with_b, j, a)?;
            let f3 = self.sl(&d1.premisses[0], d2, j, a)?;
            let g1 = self.sl(&f3, &f1, j, c)?;
            let g2 = self.sl(&f2, &g1, j, b)?;
            return contract_to_raw(&g2, &target);
        }
        if last == j && d2.rule.deletes_last() {
            return deleted_component(d2, j, Side::Left, a, &target);
        }
        if d2.premisses.is_empty() {
            return node(target, d2.rule, vec![]);
        }
        let premisses = d2
            .premisses
            .iter()
            .map(|p| self.sr_imp(d1, p, j, a))
            .collect::<Result<Vec<_>, _>>()?;
        node(target, d2.rule, premisses)
    }

    /// `d1 ⊢ S1` of length `j + 1` whose last rule has the box formula `a`
    /// as principal; `witness` derives the merged prefix extended by a
    /// `pol` link to `ε ⇒ body(a)`.
    fn sr_box(
        &mut self,
        d1: &Derivation,
        d2: &Derivation,
        j: usize,
        a: &Formula,
        pol: Polarity,
        witness: &Derivation,
    ) -> Result<Derivation, MetaError> {
        let m = (a.complexity(), d1.height + d2.height, 0);
        self.scoped(CallKind::ShiftRightBox(pol), m, |me| {
            me.sr_box_body(d1, d2, j, a, pol, witness)
        })
    }

    fn sr_box_body(
        &mut self,
        d1: &Derivation,
        d2: &Derivation,
        j: usize,
        a: &Formula,
        pol: Polarity,
        witness: &Derivation,
    ) -> Result<Derivation, MetaError> {
        use Polarity::*;
        let (s1, s2) = (&d1.conclusion, &d2.conclusion);
        let s1_rest = remove(s1, j, Side::Right, a)?;
        let target = overlay(&remove(s2, j, Side::Left, a)?, &s1_rest)?;
        let body = a.as_box().expect("box formula").1;
        let last = s2.last_index();
        let (propagate, restart, two_premiss) = match pol {
            Forward => (RuleId::BoxL1, RuleId::BoxL2, RuleId::BoxR1),
            Backward => (RuleId::BlackBoxL1, RuleId::BlackBoxL2, RuleId::BlackBoxR1),
        };

        // The box formula feeds the next component.
        if d2.rule == propagate && last == j + 1 && has_principal(d2, a) {
            let d5 = &d2.premisses[0];
            let d6 = self.sr_box(d1, d5, j, a, pol, witness)?;
            let joined = self.sl(witness, &d6, j + 1, body)?;
            return contract_to_raw(&joined, &target);
        }
        // The box formula restarts the previous component.
        if d2.rule == restart && last == j && has_principal(d2, a) {
            if d1.rule != two_premiss {
                return Err(MetaError::Internal(format!(
                    "{restart} against {} cannot share a structure",
                    d1.rule
                )));
            }
            let d6 = self.sl(&d1.premisses[0], d2, j, a)?;
            let joined = self.sl(&d6, &d2.premisses[0], j - 1, body)?;
            return contract_to_raw(&joined, &target);
        }
        if last == j && d2.rule.deletes_last() {
            return deleted_component(d2, j, Side::Left, a, &target);
        }
        if d2.premisses.is_empty() {
            return node(target, d2.rule, vec![]);
        }
        let mut premisses = Vec::with_capacity(d2.premisses.len());
        for p in &d2.premisses {
            let prefix = overlay(&remove(&p.conclusion, j, Side::Left, a)?, &s1_rest)?
                .truncated(j + 1)
                .extended(pol, Component::from_formulas([], [body.clone()]));
            let w = weaken_to_raw(witness, &prefix)?;
            premisses.push(self.sr_box(d1, p, j, a, pol, &w)?);
        }
        node(target, d2.rule, premisses)
    }
}
