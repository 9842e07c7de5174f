use super::search::{and_node_plan, extension_child, NodeKind, SearchNode, Status};

/// Cut a failed search tree down to the part that carries a countermodel.
///
/// A restart deletes the last component of its conclusion, and that
/// deletion is pushed down to every node below it on the path, so each
/// sequent is cut to the prefix its failed subtree actually falsifies.
/// Where a node has several failed premisses the one with the shortest
/// prefix is kept. An and-node whose choices all keep their extension
/// survives as an and-node (the glued fan); any other and-node becomes an
/// or-node with the single choice that reaches furthest down.
///
/// A closed tree is returned unchanged.
pub fn prune(t: &SearchNode) -> SearchNode {
    if t.status != Status::Failed {
        return t.clone();
    }
    go(t)
}

fn cut(t: &SearchNode, children: Vec<SearchNode>, kind: NodeKind) -> SearchNode {
    SearchNode {
        sequent: t.sequent.truncated(t.falsified_prefix),
        applied: t.applied.clone(),
        children,
        kind,
        status: Status::Failed,
        falsified_prefix: t.falsified_prefix,
    }
}

/// The failed child with the shortest falsified prefix, first on ties.
fn shortest(t: &SearchNode) -> &SearchNode {
    t.children
        .iter()
        .filter(|c| c.status == Status::Failed)
        .min_by_key(|c| c.falsified_prefix)
        .expect("failed node has a failed child")
}

fn go(t: &SearchNode) -> SearchNode {
    match t.kind {
        NodeKind::Leaf => cut(t, vec![], NodeKind::Leaf),
        NodeKind::OrNode => cut(t, vec![go(shortest(t))], NodeKind::OrNode),
        NodeKind::AndNode => match and_node_plan(t) {
            None => {
                let fan = t
                    .children
                    .iter()
                    .map(|c| cut(c, vec![go(extension_child(c))], NodeKind::OrNode))
                    .map(|mut c| {
                        c.sequent = t.sequent.clone();
                        c.falsified_prefix = t.sequent.len();
                        c
                    })
                    .collect();
                cut(t, fan, NodeKind::AndNode)
            }
            Some(i) => {
                let mut out = cut(t, vec![go(&t.children[i])], NodeKind::OrNode);
                out.applied = None;
                out
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::{search, Budget};
    use crate::sequent::LinearNestedSequent;
    use crate::{CalculusVariant, RuleId};

    fn pruned(text: &str) -> SearchNode {
        let s = LinearNestedSequent::parse(text).unwrap();
        let (_, t, _) = search(&s, CalculusVariant::Kt, &Budget::default()).unwrap();
        prune(&t)
    }

    #[test]
    fn no_restart_keeps_fan() {
        let p = pruned("=> [F]p, [F]q, [P]r");
        assert_eq!(p.kind, NodeKind::AndNode);
        assert_eq!(p.children.len(), 3);
        assert!(p.children.iter().all(|c| c.children[0].sequent.len() == 2));
    }

    #[test]
    fn restart_branch_is_kept_alone() {
        let p = pruned("=> [F]p, [F]q, [P]([F]r -> false)");
        assert_eq!(p.kind, NodeKind::OrNode);
        assert!(p.applied.is_none());
        let mut lens = vec![];
        let mut restarts = 0;
        p.visit(&mut |n| {
            lens.push(n.sequent.len());
            restarts += usize::from(n.rule() == Some(RuleId::BoxL2));
        });
        assert_eq!(restarts, 1);
        // after the restart the `r` world is glued below the restarted root
        assert!(lens.contains(&1));
    }
}
