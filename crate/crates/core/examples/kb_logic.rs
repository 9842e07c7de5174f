//! The symmetric logic KB: the B axiom holds, its converse-free reading
//! fails in Kt, and countermodels are read over the symmetric closure.

use tenseprove::formula::parse;
use tenseprove::prover::{prove, Budget, SearchOutcome};
use tenseprove::semantics::forces;
use tenseprove::CalculusVariant;

fn main() {
    let budget = Budget::default();
    for text in ["p -> [F]<F>p", "[F](p -> q) -> ([F]p -> [F]q)", "<F>[F]p -> p", "[F]p -> p"] {
        let f = parse(text).unwrap();
        let kt = prove(&f, CalculusVariant::KtStar, &budget);
        let kb = prove(&f, CalculusVariant::KB, &budget);
        println!("{text:<32} Kt {:<8} KB {}", kt.verdict(), kb.verdict());
        if let SearchOutcome::Invalid { model, root } = kb {
            let closed = model.symmetric_closure();
            println!("  KB countermodel: {} worlds, symmetric-closure check {:?}", closed.worlds().len(), forces(&closed, &root, &f));
        }
    }
}
