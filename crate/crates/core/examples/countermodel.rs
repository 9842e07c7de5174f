//! Extract a countermodel for a non-theorem, print it as Graphviz and
//! confirm it with the model checker.

use tenseprove::format::model_to_dot;
use tenseprove::formula::parse;
use tenseprove::prover::{prove, Budget, SearchOutcome};
use tenseprove::semantics::forces;
use tenseprove::CalculusVariant;

fn main() {
    let f = parse("[F]p | [F]q | [P]r").unwrap();
    let SearchOutcome::Invalid { model, root } = prove(&f, CalculusVariant::Kt, &Budget::default()) else {
        unreachable!("the formula is not a theorem");
    };
    for w in model.worlds() {
        let atoms = model.true_atoms(w).map(|a| a.len()).unwrap_or(0);
        println!(
            "{w}: successors {:?}, predecessors {:?}, {atoms} true atoms",
            model.successors(w),
            model.predecessors(w)
        );
    }
    assert_eq!(forces(&model, &root, &f), Ok(false));
    println!("\n{}", model_to_dot(&model, &root));
}
