//! Eliminate a cut on a boxed formula between two prover derivations and
//! show the instrumented measure.

use tenseprove::formula::parse;
use tenseprove::metatheory::{check, cut_with_trace};
use tenseprove::prover::{prove_sequent, Budget, SearchOutcome};
use tenseprove::{CalculusVariant, Derivation, LinearNestedSequent};

fn derive(text: &str) -> Derivation {
    let s = LinearNestedSequent::parse(text).unwrap().desugared();
    match prove_sequent(&s, CalculusVariant::Kt, &Budget::default()).unwrap().outcome {
        SearchOutcome::Valid(d) => d,
        other => panic!("{text}: {}", other.verdict()),
    }
}

fn main() {
    // [F]q, [F](q -> r) => [F]r  cut against  [F]r, [F](r -> s) => [F]s
    let left = derive("[F]q, [F](q -> r) => [F]r");
    let right = derive("[F]r, [F](r -> s) => [F]s");
    let a = parse("[F]r").unwrap();
    let (out, trace) = cut_with_trace(&left, &right, &a).unwrap();

    println!("left  {} ({} steps)", left.conclusion, left.node_count());
    println!("right {} ({} steps)", right.conclusion, right.node_count());
    println!("cut-free {} ({} steps)", out.conclusion, out.node_count());
    println!("checks: {}", check(&out, CalculusVariant::Kt));
    println!(
        "{} shift calls, depth {}, measure strictly decreasing: {}",
        trace.calls.len(),
        trace.max_depth,
        trace.strictly_decreasing()
    );
    for c in trace.calls.iter().take(5) {
        println!("  {:?} {:?} (caller {:?})", c.kind, c.measure, c.caller);
    }
}
