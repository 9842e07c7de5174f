use super::{certify, Derivation, MetaError};
use crate::calculus::{CalculusVariant, RuleId};
use crate::formula::{Formula, Polarity};
use crate::sequent::{Component, LinearNestedSequent};

/// Derivation of `s`, whose last component has `a` on both sides, by
/// induction on `a`.
pub fn generalised_init(
    s: &LinearNestedSequent,
    a: &Formula,
    v: CalculusVariant,
) -> Result<Derivation, MetaError> {
    let c = s.last();
    if !c.antecedent.contains(a) || !c.succedent.contains(a) {
        return Err(MetaError::NoSharedFormula(a.clone()));
    }
    if !a.is_core() {
        return Err(MetaError::NoSharedFormula(a.clone()));
    }
    certify(build(s, a, v), v, "generalised initial sequent")
}

pub(crate) fn build(s: &LinearNestedSequent, a: &Formula, v: CalculusVariant) -> Derivation {
    let node = |rule, ps| Derivation::new(s.clone(), rule, ps);
    match a {
        Formula::Atom(_) => node(RuleId::Id, vec![]),
        Formula::Bottom => node(RuleId::BotL, vec![]),
        Formula::Implies(b, c) => {
            let mut s1 = s.clone();
            s1.last_mut().antecedent.insert((**b).clone());
            s1.last_mut().succedent.insert((**c).clone());
            let mut s2 = s1.clone();
            s2.last_mut().antecedent.insert((**c).clone());
            let mut s3 = s1.clone();
            s3.last_mut().succedent.insert((**b).clone());
            let imp_l = Derivation::new(
                s1,
                RuleId::ImpL,
                vec![build(&s2, c, v), build(&s3, b, v)],
            );
            node(RuleId::ImpR, vec![imp_l])
        }
        Formula::Box(b) | Formula::BlackBox(b) => {
            let (pol, _) = a.as_box().expect("modal");
            let (right, propagate, restart) = rules_for(s, pol, v);
            let ext = s.extended(pol, Component::from_formulas([], [(**b).clone()]));
            let mut full = ext.clone();
            full.last_mut().antecedent.insert((**b).clone());
            let branch = Derivation::new(ext, propagate, vec![build(&full, b, v)]);
            match restart {
                None => node(right, vec![branch]),
                Some(restart) => {
                    let mut left = s.clone();
                    let prev = left.len() - 2;
                    left.component_mut(prev).succedent.insert((**b).clone());
                    let mut back = s.without_last().expect("link present");
                    back.last_mut().antecedent.insert((**b).clone());
                    back.last_mut().succedent.insert((**b).clone());
                    let left_d = Derivation::new(left, restart, vec![build(&back, b, v)]);
                    node(right, vec![left_d, branch])
                }
            }
        }
        _ => unreachable!("core formula expected"),
    }
}

/// `(right rule, propagation rule, restart rule for a left premiss)`.
fn rules_for(
    s: &LinearNestedSequent,
    pol: Polarity,
    v: CalculusVariant,
) -> (RuleId, RuleId, Option<RuleId>) {
    use Polarity::*;
    use RuleId::*;
    let propagate = match (v, pol) {
        (CalculusVariant::KB, _) => KbBoxL1,
        (_, Forward) => BoxL1,
        (_, Backward) => BlackBoxL1,
    };
    match (v, pol) {
        (CalculusVariant::KB, _) => (KbBoxR, propagate, None),
        (CalculusVariant::KtStar, Forward) => (BoxR, propagate, None),
        (CalculusVariant::KtStar, Backward) => (BlackBoxR, propagate, None),
        (CalculusVariant::Kt, _) => {
            let opposite = s.last_link() == Some(pol.flip());
            match (pol, opposite) {
                (Forward, false) => (BoxR2, propagate, None),
                (Backward, false) => (BlackBoxR2, propagate, None),
                (Forward, true) => (BoxR1, propagate, Some(BoxL2)),
                (Backward, true) => (BlackBoxR1, propagate, Some(BlackBoxL2)),
            }
        }
    }
}
