use std::time::Instant;

use super::{Budget, ProverError, Statistics};
use crate::calculus::{check_variant, group_instances, CalculusVariant, RuleGroup, RuleId, RuleInstance};
use crate::sequent::LinearNestedSequent;

const STACK_BYTES: usize = 512 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// A rule application; children are its premisses.
    OrNode,
    /// A saturated sequent; children are the alternative box-rule choices.
    AndNode,
    Leaf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Open,
    Closed,
    Failed,
}

#[derive(Clone, Debug)]
pub struct SearchNode {
    pub sequent: LinearNestedSequent,
    pub applied: Option<RuleInstance>,
    pub children: Vec<SearchNode>,
    pub kind: NodeKind,
    pub status: Status,
    /// For a failed node: the number of leading components of `sequent`
    /// that the countermodel found below it falsifies.
    pub falsified_prefix: usize,
}

impl SearchNode {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(SearchNode::size).sum::<usize>()
    }

    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a SearchNode)) {
        f(self);
        for c in &self.children {
            c.visit(f);
        }
    }

    pub fn rule(&self) -> Option<RuleId> {
        self.applied.as_ref().map(|i| i.rule)
    }

    fn failed_prefix(&self) -> Option<usize> {
        (self.status == Status::Failed).then_some(self.falsified_prefix)
    }
}

/// Exhaustive depth-first search on `s`. The tree is complete except that
/// an and-node stops at its first closed choice.
pub fn search(
    s: &LinearNestedSequent,
    v: CalculusVariant,
    budget: &Budget,
) -> Result<(Status, SearchNode, Statistics), ProverError> {
    check_variant(s, v).map_err(|e| ProverError::Precondition(e.to_string()))?;
    let mut root = s.clone();
    let mut next_tag = 0;
    for c in root.components_mut() {
        c.tag = next_tag;
        next_tag += 1;
    }
    let bound = s.subformulas().len() as u32;
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(STACK_BYTES)
            .spawn_scoped(scope, move || {
                let mut searcher = Searcher {
                    v,
                    budget: *budget,
                    start: Instant::now(),
                    stats: Statistics::default(),
                    next_tag,
                    restart_bound: bound,
                };
                let out = searcher.node(root);
                searcher.stats.elapsed_ms = searcher.start.elapsed().as_millis() as u64;
                match out {
                    Ok(n) => Ok((n.status, n, searcher.stats)),
                    Err(Abort::Budget) => Err(ProverError::ResourceLimit(searcher.stats)),
                    Err(Abort::Watchdog(m)) => Err(ProverError::Watchdog(m)),
                }
            })
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

enum Abort {
    Budget,
    Watchdog(String),
}

struct Searcher {
    v: CalculusVariant,
    budget: Budget,
    start: Instant,
    stats: Statistics,
    next_tag: u32,
    restart_bound: u32,
}

fn leaf(s: LinearNestedSequent, applied: Option<RuleInstance>, status: Status) -> SearchNode {
    let len = s.len();
    SearchNode {
        sequent: s,
        applied,
        children: vec![],
        kind: NodeKind::Leaf,
        status,
        falsified_prefix: len,
    }
}

/// An or-node is closed when every premiss is; otherwise it reports the
/// shortest falsified prefix among its failed premisses.
fn or_node(s: LinearNestedSequent, inst: RuleInstance, children: Vec<SearchNode>) -> SearchNode {
    let shortest = children.iter().filter_map(SearchNode::failed_prefix).min();
    let len = s.len();
    SearchNode {
        sequent: s,
        applied: Some(inst),
        children,
        kind: NodeKind::OrNode,
        status: if shortest.is_some() { Status::Failed } else { Status::Closed },
        falsified_prefix: shortest.map_or(len, |k| k.min(len)),
    }
}

/// Index of the premiss of a box choice that extends the sequent.
pub(crate) fn extension_child(choice: &SearchNode) -> &SearchNode {
    let rule = choice.rule().expect("box choice");
    &choice.children[rule.extension_premiss().expect("right box rule")]
}

/// How a failed and-node is read: glued over all its choices, or through
/// the single choice that reaches furthest down.
pub(crate) fn and_node_plan(node: &SearchNode) -> Option<usize> {
    let n = node.sequent.len();
    let glues = node.children.iter().all(|c| {
        let e = extension_child(c);
        e.status == Status::Failed && e.falsified_prefix > n
    });
    if glues {
        return None;
    }
    let best = node
        .children
        .iter()
        .enumerate()
        .min_by_key(|(_, c)| c.falsified_prefix)
        .map(|(i, _)| i)
        .expect("and-node has choices");
    Some(best)
}

impl Searcher {
    fn tick(&mut self, s: &LinearNestedSequent) -> Result<(), Abort> {
        self.stats.nodes += 1;
        self.stats.max_length = self.stats.max_length.max(s.len());
        if self.stats.nodes > self.budget.max_nodes {
            return Err(Abort::Budget);
        }
        if self.stats.nodes.is_multiple_of(256) && self.start.elapsed() > self.budget.max_time {
            return Err(Abort::Budget);
        }
        Ok(())
    }

    fn node(&mut self, s: LinearNestedSequent) -> Result<SearchNode, Abort> {
        self.tick(&s)?;
        for group in [
            RuleGroup::Termination,
            RuleGroup::Cpl,
            RuleGroup::Propagation,
            RuleGroup::Restart,
        ] {
            if let Some(inst) = group_instances(&s, self.v, group, true).into_iter().next() {
                return self.apply(s, inst);
            }
        }
        let choices = group_instances(&s, self.v, RuleGroup::Box, true);
        if choices.is_empty() {
            return Ok(leaf(s, None, Status::Failed));
        }
        let mut children = Vec::with_capacity(choices.len());
        for inst in choices {
            let child = self.choice(&s, inst)?;
            let closed = child.status == Status::Closed;
            children.push(child);
            if closed {
                break;
            }
        }
        let mut node = SearchNode {
            falsified_prefix: s.len(),
            sequent: s,
            applied: None,
            children,
            kind: NodeKind::AndNode,
            status: Status::Failed,
        };
        if node.children.iter().any(|c| c.status == Status::Closed) {
            node.status = Status::Closed;
        } else if let Some(i) = and_node_plan(&node) {
            node.falsified_prefix = node.children[i].falsified_prefix.min(node.sequent.len());
        }
        Ok(node)
    }

    fn apply(&mut self, s: LinearNestedSequent, inst: RuleInstance) -> Result<SearchNode, Abort> {
        match inst.rule.group() {
            RuleGroup::Termination => Ok(leaf(s, Some(inst), Status::Closed)),
            group => {
                if group == RuleGroup::Restart {
                    self.stats.restarts += 1;
                    let p = inst.premisses[0].last();
                    if p.restarts > self.restart_bound {
                        return Err(Abort::Watchdog(format!(
                            "component restarted {} times, bound {}",
                            p.restarts, self.restart_bound
                        )));
                    }
                }
                let mut children = Vec::with_capacity(inst.premisses.len());
                for p in &inst.premisses {
                    children.push(self.node(p.clone())?);
                }
                Ok(or_node(s, inst, children))
            }
        }
    }

    /// One box-rule choice. The extension premiss gets a fresh tag; the
    /// same-length left premiss of the two-premiss rules is searched
    /// through EW on its shorter sequent.
    fn choice(&mut self, s: &LinearNestedSequent, mut inst: RuleInstance) -> Result<SearchNode, Abort> {
        let ext = inst.rule.extension_premiss().expect("right box rule");
        let tag = self.next_tag;
        self.next_tag += 1;
        inst.premisses[ext].last_mut().tag = tag;
        let before = s.last().max_degree();
        let after = inst.premisses[ext].last().max_degree();
        if after >= before {
            return Err(Abort::Watchdog(format!(
                "extension did not lower the modal degree ({before} to {after})"
            )));
        }
        let mut children = Vec::with_capacity(inst.premisses.len());
        for (i, p) in inst.premisses.iter().enumerate() {
            if i == ext {
                children.push(self.node(p.clone())?);
            } else {
                children.push(self.weakened(p.clone())?);
            }
        }
        // Unclipped, so that a choice whose extension survives ranks behind
        // one that restarts back into this component.
        let mut node = or_node(s.clone(), inst, children);
        if let Some(k) = node.children.iter().filter_map(SearchNode::failed_prefix).min() {
            node.falsified_prefix = k;
        }
        Ok(node)
    }

    fn weakened(&mut self, s: LinearNestedSequent) -> Result<SearchNode, Abort> {
        self.tick(&s)?;
        let shorter = s.without_last().expect("left premiss has a link");
        let inst = RuleInstance {
            rule: RuleId::EW,
            position: s.last_index(),
            principal: None,
            premisses: vec![shorter.clone()],
        };
        let child = self.node(shorter)?;
        Ok(or_node(s, inst, vec![child]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> LinearNestedSequent {
        LinearNestedSequent::parse(text).unwrap()
    }

    fn run(text: &str, v: CalculusVariant) -> (Status, SearchNode) {
        let (st, n, _) = search(&seq(text), v, &Budget::default()).unwrap();
        (st, n)
    }

    #[test]
    fn identity_closes_at_once() {
        let (st, n) = run("p => p", CalculusVariant::Kt);
        assert_eq!(st, Status::Closed);
        assert_eq!(n.kind, NodeKind::Leaf);
        assert_eq!(n.rule(), Some(RuleId::Id));
    }

    #[test]
    fn three_box_choices() {
        let (st, n) = run("=> [F]p, [F]q, [P]r", CalculusVariant::Kt);
        assert_eq!(st, Status::Failed);
        assert_eq!(n.kind, NodeKind::AndNode);
        assert_eq!(n.children.len(), 3);
        assert_eq!(and_node_plan(&n), None);
    }

    #[test]
    fn restart_on_black_branch() {
        let (st, n) = run("=> [F]p, [F]q, [P]([F]r -> false)", CalculusVariant::Kt);
        assert_eq!(st, Status::Failed);
        let mut restarted = false;
        n.visit(&mut |m| restarted |= m.rule() == Some(RuleId::BoxL2));
        assert!(restarted);
        assert_eq!(n.falsified_prefix, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let s = seq("=> [F]p, [F]q, [P]([F]r -> false)");
        let err = search(&s, CalculusVariant::Kt, &Budget::new(3, 1000)).unwrap_err();
        assert!(matches!(err, ProverError::ResourceLimit(st) if st.nodes == 4));
    }
}
