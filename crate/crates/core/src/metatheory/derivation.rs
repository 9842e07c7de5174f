use crate::calculus::{is_valid_instance, CalculusVariant, RuleId};
use crate::sequent::LinearNestedSequent;
use std::collections::BTreeMap;
use std::fmt;

/// A rule-application tree. `height` is 0 at leaves and one more than the
/// tallest premiss otherwise; [`Derivation::new`] maintains this.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: LinearNestedSequent,
    pub rule: RuleId,
    pub premisses: Vec<Derivation>,
    pub height: usize,
}

impl Derivation {
    pub fn new(conclusion: LinearNestedSequent, rule: RuleId, premisses: Vec<Derivation>) -> Self {
        let height = premisses
            .iter()
            .map(|d| d.height + 1)
            .max()
            .unwrap_or(0);
        Derivation {
            conclusion,
            rule,
            premisses,
            height,
        }
    }

    pub fn leaf(conclusion: LinearNestedSequent, rule: RuleId) -> Self {
        Derivation::new(conclusion, rule, vec![])
    }

    pub fn node_count(&self) -> usize {
        1 + self.premisses.iter().map(Derivation::node_count).sum::<usize>()
    }

    /// Multiset of rule names used.
    pub fn rule_counts(&self) -> BTreeMap<RuleId, usize> {
        let mut out = BTreeMap::new();
        self.visit(&mut |d| *out.entry(d.rule).or_insert(0) += 1);
        out
    }

    pub fn uses(&self, rule: RuleId) -> bool {
        self.rule_counts().contains_key(&rule)
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Derivation)) {
        f(self);
        for p in &self.premisses {
            p.visit(f);
        }
    }

    /// The variant whose rule names occur, `Kt` when only shared rules do.
    pub fn inferred_variant(&self) -> CalculusVariant {
        let counts = self.rule_counts();
        let any = |v: CalculusVariant| {
            counts
                .keys()
                .any(|r| r.available_in(v) && !r.available_in(CalculusVariant::Kt))
        };
        if any(CalculusVariant::KB) {
            CalculusVariant::KB
        } else if any(CalculusVariant::KtStar) {
            CalculusVariant::KtStar
        } else {
            CalculusVariant::Kt
        }
    }

    fn write_tree(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        writeln!(f, "{:indent$}{}  [{}]", "", self.conclusion, self.rule, indent = indent)?;
        for p in &self.premisses {
            p.write_tree(f, indent + 2)?;
        }
        Ok(())
    }
}

/// Indented tree, conclusion first.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_tree(f, 0)
    }
}

/// First node rejected by the checker. `path` lists premiss indices from
/// the root.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid node at {path:?}: {rule} on `{conclusion}`: {reason}")]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub rule: RuleId,
    pub conclusion: LinearNestedSequent,
    pub reason: String,
}

/// The trusted kernel: every node a valid instance and heights consistent.
pub fn check(d: &Derivation, v: CalculusVariant) -> bool {
    check_detailed(d, v).is_ok()
}

pub fn check_detailed(d: &Derivation, v: CalculusVariant) -> Result<(), CheckFailure> {
    let mut path = Vec::new();
    check_node(d, v, &mut path)
}

fn check_node(d: &Derivation, v: CalculusVariant, path: &mut Vec<usize>) -> Result<(), CheckFailure> {
    let fail = |path: &[usize], reason: String| CheckFailure {
        path: path.to_vec(),
        rule: d.rule,
        conclusion: d.conclusion.clone(),
        reason,
    };
    let expected_height = d.premisses.iter().map(|p| p.height + 1).max().unwrap_or(0);
    if d.height != expected_height {
        return Err(fail(
            path,
            format!("height {} but premisses imply {expected_height}", d.height),
        ));
    }
    let conclusions: Vec<_> = d.premisses.iter().map(|p| p.conclusion.clone()).collect();
    if !is_valid_instance(&d.conclusion, d.rule, &conclusions, v) {
        let reason = if d.rule.available_in(v) {
            "premisses do not match any instance of the rule".to_string()
        } else {
            format!("rule not available in {v}")
        };
        return Err(fail(path, reason));
    }
    for (i, p) in d.premisses.iter().enumerate() {
        path.push(i);
        check_node(p, v, path)?;
        path.pop();
    }
    Ok(())
}
