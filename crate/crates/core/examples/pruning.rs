//! A failed search tree before and after pruning. Restarted branches only
//! keep the component that was not discarded, so the countermodel stays
//! small.

use tenseprove::prover::{extract_model, prune, search, Budget, SearchNode};
use tenseprove::{CalculusVariant, LinearNestedSequent};

fn show(n: &SearchNode, depth: usize) {
    let rule = n.rule().map(|r| r.name()).unwrap_or("-");
    println!("{:indent$}{:?} {rule}  {}", "", n.kind, n.sequent, indent = depth * 2);
    for c in &n.children {
        show(c, depth + 1);
    }
}

fn main() {
    let s = LinearNestedSequent::parse("=> [F]((p & ~p) | ~[P][F]q), [F]((r & ~r) | ~[P][F]s)")
        .unwrap()
        .desugared();
    let (status, tree, stats) = search(&s, CalculusVariant::Kt, &Budget::default()).unwrap();
    println!("{status:?} after {} nodes, {} restarts", stats.nodes, stats.restarts);
    let pruned = prune(&tree);
    println!("tree {} nodes, pruned {} nodes\n", tree.size(), pruned.size());
    show(&pruned, 0);
    let (model, root) = extract_model(&pruned, CalculusVariant::Kt).unwrap();
    println!("\nroot {root}, worlds {:?}, edges {:?}", model.worlds(), model.edges());
}
