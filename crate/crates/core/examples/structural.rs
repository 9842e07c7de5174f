//! Admissible structural rules as proof transformations: weakening,
//! contraction, and generalised initial sequents.

use tenseprove::formula::parse;
use tenseprove::metatheory::{contract, generalised_init, weaken};
use tenseprove::prover::{prove, Budget, SearchOutcome};
use tenseprove::sequent::Side;
use tenseprove::{CalculusVariant, LinearNestedSequent, Multiset};

fn main() {
    let v = CalculusVariant::Kt;
    let f = parse("<F>[P]p -> p").unwrap();
    let SearchOutcome::Valid(d) = prove(&f, v, &Budget::default()) else {
        unreachable!();
    };
    let extra = parse("[P]q").unwrap();
    let add = Multiset::new().with(extra.clone());
    let once = weaken(&d, 0, &add, &Multiset::new()).unwrap();
    let twice = weaken(&once, 0, &add, &Multiset::new()).unwrap();
    let back = contract(&twice, 0, Side::Left, &extra).unwrap();
    println!("original   height {}  {}", d.height, d.conclusion);
    println!("weakened   height {}  {}", once.height, once.conclusion);
    println!("twice      height {}  {}", twice.height, twice.conclusion);
    println!("contracted height {}  {}", back.height, back.conclusion);

    let s = LinearNestedSequent::parse("p => q /F/ [F](p -> [P]q) => [F](p -> [P]q)").unwrap();
    let a = parse("[F](p -> [P]q)").unwrap();
    let init = generalised_init(&s, &a, v).unwrap();
    println!("\ninitial sequent on a compound formula: {} steps, rules {:?}", init.node_count(), init.rule_counts());
}
