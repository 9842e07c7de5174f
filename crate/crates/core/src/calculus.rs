//! Rules of LNS_Kt, LNS_Kt* and LNS_KB: applicability, saturation side
//! conditions and premiss computation.

use crate::formula::{Formula, Polarity};
use crate::sequent::{Component, LinearNestedSequent};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CalculusVariant {
    Kt,
    KtStar,
    KB,
}

impl CalculusVariant {
    pub fn name(self) -> &'static str {
        match self {
            CalculusVariant::Kt => "Kt",
            CalculusVariant::KtStar => "Kt*",
            CalculusVariant::KB => "KB",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "Kt" => Some(CalculusVariant::Kt),
            "Kt*" => Some(CalculusVariant::KtStar),
            "KB" => Some(CalculusVariant::KB),
            _ => None,
        }
    }
}

impl fmt::Display for CalculusVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Id,
    BotL,
    ImpR,
    ImpL,
    BoxR1,
    BlackBoxR1,
    BoxR2,
    BlackBoxR2,
    BoxL1,
    BlackBoxL1,
    BoxL2,
    BlackBoxL2,
    EW,
    BoxR,
    BlackBoxR,
    KbBoxR,
    KbBoxL1,
    KbBoxL2,
}

/// Priority classes of the search strategy, highest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleGroup {
    Termination,
    Cpl,
    Propagation,
    Restart,
    Box,
    Structural,
}

impl RuleGroup {
    pub const ALL: [RuleGroup; 6] = [
        RuleGroup::Termination,
        RuleGroup::Cpl,
        RuleGroup::Propagation,
        RuleGroup::Restart,
        RuleGroup::Box,
        RuleGroup::Structural,
    ];
}

impl RuleId {
    pub const ALL: [RuleId; 18] = [
        RuleId::Id,
        RuleId::BotL,
        RuleId::ImpR,
        RuleId::ImpL,
        RuleId::BoxR1,
        RuleId::BlackBoxR1,
        RuleId::BoxR2,
        RuleId::BlackBoxR2,
        RuleId::BoxL1,
        RuleId::BlackBoxL1,
        RuleId::BoxL2,
        RuleId::BlackBoxL2,
        RuleId::EW,
        RuleId::BoxR,
        RuleId::BlackBoxR,
        RuleId::KbBoxR,
        RuleId::KbBoxL1,
        RuleId::KbBoxL2,
    ];

    /// Name used in derivation JSON.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Id => "id",
            RuleId::BotL => "botL",
            RuleId::ImpR => "impR",
            RuleId::ImpL => "impL",
            RuleId::BoxR1 => "boxR1",
            RuleId::BlackBoxR1 => "bboxR1",
            RuleId::BoxR2 => "boxR2",
            RuleId::BlackBoxR2 => "bboxR2",
            RuleId::BoxL1 => "boxL1",
            RuleId::BlackBoxL1 => "bboxL1",
            RuleId::BoxL2 => "boxL2",
            RuleId::BlackBoxL2 => "bboxL2",
            RuleId::EW => "ew",
            RuleId::BoxR => "boxR",
            RuleId::BlackBoxR => "bboxR",
            RuleId::KbBoxR => "kb.boxR",
            RuleId::KbBoxL1 => "kb.boxL1",
            RuleId::KbBoxL2 => "kb.boxL2",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == name)
    }

    /// LaTeX label for proof-tree output.
    pub fn latex(self) -> &'static str {
        match self {
            RuleId::Id => "(id)",
            RuleId::BotL => "$\\bot_L$",
            RuleId::ImpR => "$\\to_R$",
            RuleId::ImpL => "$\\to_L$",
            RuleId::BoxR1 => "$\\Box_R^1$",
            RuleId::BlackBoxR1 => "$\\blacksquare_R^1$",
            RuleId::BoxR2 => "$\\Box_R^2$",
            RuleId::BlackBoxR2 => "$\\blacksquare_R^2$",
            RuleId::BoxL1 | RuleId::KbBoxL1 => "$\\Box_L^1$",
            RuleId::BlackBoxL1 => "$\\blacksquare_L^1$",
            RuleId::BoxL2 | RuleId::KbBoxL2 => "$\\Box_L^2$",
            RuleId::BlackBoxL2 => "$\\blacksquare_L^2$",
            RuleId::EW => "EW",
            RuleId::BoxR | RuleId::KbBoxR => "$\\Box_R$",
            RuleId::BlackBoxR => "$\\blacksquare_R$",
        }
    }

    pub fn available_in(self, v: CalculusVariant) -> bool {
        use RuleId::*;
        match self {
            Id | BotL | ImpR | ImpL | EW => true,
            BoxR1 | BlackBoxR1 | BoxR2 | BlackBoxR2 => v == CalculusVariant::Kt,
            BoxL1 | BlackBoxL1 | BoxL2 | BlackBoxL2 => v != CalculusVariant::KB,
            BoxR | BlackBoxR => v == CalculusVariant::KtStar,
            KbBoxR | KbBoxL1 | KbBoxL2 => v == CalculusVariant::KB,
        }
    }

    pub fn arity(self) -> usize {
        use RuleId::*;
        match self {
            Id | BotL => 0,
            ImpL | BoxR1 | BlackBoxR1 => 2,
            _ => 1,
        }
    }

    pub fn group(self) -> RuleGroup {
        use RuleId::*;
        match self {
            Id | BotL => RuleGroup::Termination,
            ImpR | ImpL => RuleGroup::Cpl,
            BoxL1 | BlackBoxL1 | KbBoxL1 => RuleGroup::Propagation,
            BoxL2 | BlackBoxL2 | KbBoxL2 => RuleGroup::Restart,
            BoxR1 | BlackBoxR1 | BoxR2 | BlackBoxR2 | BoxR | BlackBoxR | KbBoxR => {
                RuleGroup::Box
            }
            EW => RuleGroup::Structural,
        }
    }

    /// True when the premiss (the only one) drops the last component.
    pub fn deletes_last(self) -> bool {
        matches!(
            self,
            RuleId::BoxL2 | RuleId::BlackBoxL2 | RuleId::KbBoxL2 | RuleId::EW
        )
    }

    /// Index of the premiss that adds a new last component, if any.
    pub fn extension_premiss(self) -> Option<usize> {
        use RuleId::*;
        match self {
            BoxR1 | BlackBoxR1 => Some(1),
            BoxR2 | BlackBoxR2 | BoxR | BlackBoxR | KbBoxR => Some(0),
            _ => None,
        }
    }

    /// Rules of the group in enumeration order.
    fn of_group(group: RuleGroup, v: CalculusVariant) -> &'static [RuleId] {
        use CalculusVariant::*;
        use RuleId::*;
        match (group, v) {
            (RuleGroup::Termination, _) => &[Id, BotL],
            (RuleGroup::Cpl, _) => &[ImpR, ImpL],
            (RuleGroup::Propagation, KB) => &[KbBoxL1],
            (RuleGroup::Propagation, _) => &[BoxL1, BlackBoxL1],
            (RuleGroup::Restart, KB) => &[KbBoxL2],
            (RuleGroup::Restart, _) => &[BoxL2, BlackBoxL2],
            (RuleGroup::Box, Kt) => &[BoxR1, BlackBoxR1, BoxR2, BlackBoxR2],
            (RuleGroup::Box, KtStar) => &[BoxR, BlackBoxR],
            (RuleGroup::Box, KB) => &[KbBoxR],
            (RuleGroup::Structural, _) => &[EW],
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule application to a particular conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    /// Index of the component holding the principal formula.
    pub position: usize,
    /// `None` only for EW.
    pub principal: Option<Formula>,
    pub premisses: Vec<LinearNestedSequent>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("sequent is not well-formed for {variant}: {reason}")]
    VariantMismatch {
        variant: CalculusVariant,
        reason: String,
    },
    #[error("rule {rule} is not applicable to the sequent")]
    NotApplicable { rule: RuleId },
}

/// Core formulas everywhere; for KB additionally no `■` and no backward link.
pub fn check_variant(s: &LinearNestedSequent, v: CalculusVariant) -> Result<(), CalculusError> {
    let fail = |reason: &str| {
        Err(CalculusError::VariantMismatch {
            variant: v,
            reason: reason.to_string(),
        })
    };
    if !s.is_core() {
        return fail("non-core formula");
    }
    if v == CalculusVariant::KB {
        if s.links().contains(&Polarity::Backward) {
            return fail("backward link");
        }
        let has_black = s.components().iter().any(|c| {
            c.antecedent
                .distinct()
                .chain(c.succedent.distinct())
                .any(|f| f.collapse_converse() != *f)
        });
        if has_black {
            return fail("converse modality");
        }
    }
    Ok(())
}

/// Every rule instance with conclusion `s`, in enumeration order. With
/// `saturating`, the search side conditions apply and EW is omitted.
pub fn applicable_rules(
    s: &LinearNestedSequent,
    v: CalculusVariant,
    saturating: bool,
) -> Result<Vec<RuleInstance>, CalculusError> {
    check_variant(s, v)?;
    let mut out = Vec::new();
    for group in RuleGroup::ALL {
        if saturating && group == RuleGroup::Structural {
            continue;
        }
        out.extend(group_instances(s, v, group, saturating));
    }
    Ok(out)
}

/// Instances of one priority class, in enumeration order. Assumes `s`
/// passed [`check_variant`].
pub fn group_instances(
    s: &LinearNestedSequent,
    v: CalculusVariant,
    group: RuleGroup,
    saturating: bool,
) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for &rule in RuleId::of_group(group, v) {
        for principal in candidates(s, rule) {
            if saturating && !side_condition(s, rule, principal.as_ref()) {
                continue;
            }
            if let Some(premisses) = build(s, rule, principal.as_ref()) {
                out.push(RuleInstance {
                    rule,
                    position: position_of(s, rule),
                    principal,
                    premisses,
                });
            }
        }
    }
    out
}

/// Recompute the premisses of `inst` against `s`.
pub fn premisses(
    s: &LinearNestedSequent,
    inst: &RuleInstance,
) -> Result<Vec<LinearNestedSequent>, CalculusError> {
    let in_s = candidates(s, inst.rule).contains(&inst.principal);
    in_s.then(|| build(s, inst.rule, inst.principal.as_ref()))
        .flatten()
        .ok_or(CalculusError::NotApplicable { rule: inst.rule })
}

/// Does some instance of `rule` with conclusion `conclusion` have exactly
/// these premisses?
pub fn is_valid_instance(
    conclusion: &LinearNestedSequent,
    rule: RuleId,
    premisses: &[LinearNestedSequent],
    v: CalculusVariant,
) -> bool {
    if !rule.available_in(v) || check_variant(conclusion, v).is_err() {
        return false;
    }
    !matching_principals(conclusion, rule, premisses).is_empty()
}

/// Principal formulas under which `rule` turns `conclusion` into exactly
/// `premisses`.
pub fn matching_principals(
    conclusion: &LinearNestedSequent,
    rule: RuleId,
    premisses: &[LinearNestedSequent],
) -> Vec<Option<Formula>> {
    candidates(conclusion, rule)
        .into_iter()
        .filter(|principal| {
            build(conclusion, rule, principal.as_ref()).is_some_and(|ps| ps == premisses)
        })
        .collect()
}

fn position_of(s: &LinearNestedSequent, rule: RuleId) -> usize {
    match rule.group() {
        RuleGroup::Propagation => s.len() - 2,
        _ => s.last_index(),
    }
}

/// Possible principal formulas for `rule`, distinct and in canonical order.
fn candidates(s: &LinearNestedSequent, rule: RuleId) -> Vec<Option<Formula>> {
    use RuleId::*;
    let c = s.last();
    let prev = (s.len() >= 2).then(|| s.component(s.len() - 2));
    let pick = |m: &crate::sequent::Multiset, keep: &dyn Fn(&Formula) -> bool| {
        m.distinct()
            .filter(|f| keep(f))
            .cloned()
            .map(Some)
            .collect::<Vec<_>>()
    };
    let is_box = |f: &Formula| matches!(f, Formula::Box(_));
    let is_black = |f: &Formula| matches!(f, Formula::BlackBox(_));
    match rule {
        Id => pick(&c.antecedent, &|f| f.is_atom() && c.succedent.contains(f)),
        BotL => pick(&c.antecedent, &|f| *f == Formula::Bottom),
        ImpR => pick(&c.succedent, &|f| matches!(f, Formula::Implies(..))),
        ImpL => pick(&c.antecedent, &|f| matches!(f, Formula::Implies(..))),
        BoxL1 | KbBoxL1 => prev.map_or(vec![], |p| pick(&p.antecedent, &is_box)),
        BlackBoxL1 => prev.map_or(vec![], |p| pick(&p.antecedent, &is_black)),
        BoxL2 | KbBoxL2 => pick(&c.antecedent, &is_box),
        BlackBoxL2 => pick(&c.antecedent, &is_black),
        BoxR1 | BoxR2 | BoxR | KbBoxR => pick(&c.succedent, &is_box),
        BlackBoxR1 | BlackBoxR2 | BlackBoxR => pick(&c.succedent, &is_black),
        EW => {
            if s.len() >= 2 {
                vec![None]
            } else {
                vec![]
            }
        }
    }
}

fn body(f: Option<&Formula>) -> Option<&Formula> {
    f.and_then(|f| f.as_box()).map(|(_, a)| a)
}

/// The search side condition: the rule must add new material.
fn side_condition(s: &LinearNestedSequent, rule: RuleId, principal: Option<&Formula>) -> bool {
    use RuleId::*;
    let c = s.last();
    let prev = || s.component(s.len() - 2);
    match (rule, principal) {
        (ImpR, Some(Formula::Implies(a, b))) => {
            !c.antecedent.contains(a) || !c.succedent.contains(b)
        }
        (ImpL, Some(Formula::Implies(a, b))) => {
            !c.antecedent.contains(b) && !c.succedent.contains(a)
        }
        (BoxL1 | BlackBoxL1 | KbBoxL1, p) => body(p).is_some_and(|a| !c.antecedent.contains(a)),
        (BoxL2 | BlackBoxL2 | KbBoxL2, p) => {
            s.len() >= 2 && body(p).is_some_and(|a| !prev().antecedent.contains(a))
        }
        (BoxR1 | BlackBoxR1, p) => {
            s.len() >= 2 && body(p).is_some_and(|a| !prev().succedent.contains(a))
        }
        (EW, _) => false,
        _ => true,
    }
}

fn extend(s: &LinearNestedSequent, link: Polarity, a: &Formula) -> LinearNestedSequent {
    s.extended(link, Component::from_formulas([], [a.clone()]))
}

/// Premisses of `rule` with the given principal, or `None` if the schema
/// does not match `s`.
fn build(
    s: &LinearNestedSequent,
    rule: RuleId,
    principal: Option<&Formula>,
) -> Option<Vec<LinearNestedSequent>> {
    use Polarity::*;
    use RuleId::*;
    let n = s.len();
    let link = s.last_link();
    let last = s.last_index();
    let with_last = |edit: &dyn Fn(&mut Component)| {
        let mut out = s.clone();
        edit(out.last_mut());
        out
    };
    let link_is = |p: Polarity| link == Some(p);
    match rule {
        Id | BotL => Some(vec![]),
        ImpR => match principal? {
            Formula::Implies(a, b) => Some(vec![with_last(&|c| {
                c.antecedent.insert((**a).clone());
                c.succedent.insert((**b).clone());
            })]),
            _ => None,
        },
        ImpL => match principal? {
            Formula::Implies(a, b) => Some(vec![
                with_last(&|c| c.antecedent.insert((**b).clone())),
                with_last(&|c| c.succedent.insert((**a).clone())),
            ]),
            _ => None,
        },
        BoxL1 | BlackBoxL1 | KbBoxL1 => {
            let want = if rule == BlackBoxL1 { Backward } else { Forward };
            let (pol, a) = principal?.as_box()?;
            (link_is(want) && pol == want)
                .then(|| vec![with_last(&|c| c.antecedent.insert(a.clone()))])
        }
        BoxL2 | BlackBoxL2 | KbBoxL2 => {
            let (pol, a) = principal?.as_box()?;
            let ok = match rule {
                BoxL2 => link_is(Backward) && pol == Forward,
                BlackBoxL2 => link_is(Forward) && pol == Backward,
                _ => link_is(Forward) && pol == Forward,
            };
            if !ok {
                return None;
            }
            let mut out = s.without_last()?;
            let p = out.last_mut();
            p.antecedent.insert(a.clone());
            p.restarts += 1;
            Some(vec![out])
        }
        BoxR1 | BlackBoxR1 => {
            let (pol, a) = principal?.as_box()?;
            let want = if rule == BoxR1 { Forward } else { Backward };
            if pol != want || !link_is(want.flip()) {
                return None;
            }
            let mut left = s.clone();
            left.component_mut(last - 1).succedent.insert(a.clone());
            Some(vec![left, extend(s, want, a)])
        }
        BoxR2 | BlackBoxR2 => {
            let (pol, a) = principal?.as_box()?;
            let want = if rule == BoxR2 { Forward } else { Backward };
            (pol == want && (n == 1 || link_is(want))).then(|| vec![extend(s, want, a)])
        }
        BoxR | BlackBoxR | KbBoxR => {
            let (pol, a) = principal?.as_box()?;
            let want = if rule == BlackBoxR { Backward } else { Forward };
            (pol == want).then(|| vec![extend(s, want, a)])
        }
        EW => Some(vec![s.without_last()?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> LinearNestedSequent {
        LinearNestedSequent::parse(text).unwrap()
    }

    fn rules(s: &LinearNestedSequent, v: CalculusVariant, sat: bool) -> Vec<RuleId> {
        applicable_rules(s, v, sat)
            .unwrap()
            .into_iter()
            .map(|i| i.rule)
            .collect()
    }

    #[test]
    fn example_box_instances() {
        let s = seq("r => [F]p, [F]q, [P]([F](r -> false) -> false)");
        let box_rules: Vec<_> = applicable_rules(&s, CalculusVariant::Kt, true)
            .unwrap()
            .into_iter()
            .filter(|i| i.rule.group() == RuleGroup::Box)
            .collect();
        let names: Vec<_> = box_rules.iter().map(|i| i.rule).collect();
        assert_eq!(names, vec![RuleId::BoxR2, RuleId::BoxR2, RuleId::BlackBoxR2]);
    }

    #[test]
    fn id_instance() {
        let s = seq("p => p");
        assert_eq!(rules(&s, CalculusVariant::Kt, true), vec![RuleId::Id]);
        assert!(is_valid_instance(&s, RuleId::Id, &[], CalculusVariant::Kt));
        assert!(!is_valid_instance(&seq("p => q"), RuleId::Id, &[], CalculusVariant::Kt));
    }

    #[test]
    fn black_box_restart_deletes_last() {
        let s = seq("q => r /F/ s, [P]a =>");
        let inst = applicable_rules(&s, CalculusVariant::Kt, true)
            .unwrap()
            .into_iter()
            .find(|i| i.rule == RuleId::BlackBoxL2)
            .unwrap();
        assert_eq!(inst.premisses, vec![seq("q, a => r")]);
        assert_eq!(inst.premisses[0].last().restarts, 1);
    }

    #[test]
    fn imp_r_premiss() {
        let s = seq("=> p -> q");
        let inst = &applicable_rules(&s, CalculusVariant::Kt, false).unwrap()[0];
        assert_eq!(inst.rule, RuleId::ImpR);
        assert_eq!(inst.premisses, vec![seq("p => p -> q, q")]);
    }

    #[test]
    fn box_r1_premisses() {
        let s = seq("g => d \\P\\ s => t, [F]a");
        let inst = applicable_rules(&s, CalculusVariant::Kt, false)
            .unwrap()
            .into_iter()
            .find(|i| i.rule == RuleId::BoxR1)
            .unwrap();
        assert_eq!(
            inst.premisses,
            vec![
                seq("g => d, a \\P\\ s => t, [F]a"),
                seq("g => d \\P\\ s => t, [F]a /F/ => a"),
            ]
        );
    }

    #[test]
    fn ew_only_without_saturation() {
        let s = seq("=> /F/ =>");
        assert_eq!(rules(&s, CalculusVariant::Kt, false), vec![RuleId::EW]);
        assert!(rules(&s, CalculusVariant::Kt, true).is_empty());
    }

    #[test]
    fn link_polarity_filters() {
        assert!(rules(&seq("[F]a => /F/ =>"), CalculusVariant::Kt, true).contains(&RuleId::BoxL1));
        assert!(!rules(&seq("[F]a => \\P\\ =>"), CalculusVariant::Kt, true).contains(&RuleId::BoxL1));
        assert!(rules(&seq("=> \\P\\ [F]a =>"), CalculusVariant::Kt, true).contains(&RuleId::BoxL2));
        assert!(rules(&seq("=> /F/ => [F]a"), CalculusVariant::Kt, true).contains(&RuleId::BoxR2));
        assert!(!rules(&seq("=> \\P\\ => [F]a"), CalculusVariant::Kt, true).contains(&RuleId::BoxR2));
        assert!(rules(&seq("=> \\P\\ => [F]a"), CalculusVariant::KtStar, true).contains(&RuleId::BoxR));
    }

    #[test]
    fn saturation_blocks_repeats() {
        let s = seq("p => p -> q, q");
        assert!(!rules(&s, CalculusVariant::Kt, true).contains(&RuleId::ImpR));
        assert!(rules(&s, CalculusVariant::Kt, false).contains(&RuleId::ImpR));
    }

    #[test]
    fn kb_rejects_backward() {
        assert!(applicable_rules(&seq("=> \\P\\ =>"), CalculusVariant::KB, false).is_err());
        assert!(applicable_rules(&seq("=> [P]p"), CalculusVariant::KB, false).is_err());
        assert!(rules(&seq("=> /F/ [F]a =>"), CalculusVariant::KB, true).contains(&RuleId::KbBoxL2));
    }

    #[test]
    fn names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(RuleId::from_name(r.name()), Some(r));
        }
    }
}
