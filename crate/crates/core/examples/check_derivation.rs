//! Serialize a derivation, read it back and re-check it; then corrupt one
//! step and watch the checker point at it.

use tenseprove::format::{derivation_from_json, derivation_to_json, derivation_to_latex};
use tenseprove::formula::parse;
use tenseprove::metatheory::{check_detailed, Derivation};
use tenseprove::prover::{prove, Budget, SearchOutcome};
use tenseprove::CalculusVariant;

fn main() {
    let v = CalculusVariant::Kt;
    let f = parse("[F](p -> q) -> ([F]p -> [F]q)").unwrap();
    let SearchOutcome::Valid(d) = prove(&f, v, &Budget::default()) else {
        unreachable!("K is a theorem");
    };
    let text = serde_json::to_string_pretty(&derivation_to_json(&d, Some(v))).unwrap();
    println!("{} bytes of JSON, {} rule applications", text.len(), d.node_count());

    let (back, variant) = derivation_from_json(&text).unwrap();
    println!("re-check: {:?}", check_detailed(&back, variant.unwrap_or(v)));
    println!("{}", derivation_to_latex(&back));

    // Drop the first premiss of the root: the root step no longer matches.
    let broken = Derivation::new(back.conclusion.clone(), back.rule, back.premisses[1..].to_vec());
    match check_detailed(&broken, v) {
        Ok(()) => println!("unexpectedly accepted"),
        Err(e) => println!("corrupted copy rejected: {e}"),
    }
}
