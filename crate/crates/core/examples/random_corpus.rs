//! Run a seeded random corpus and cross-check every verdict against the
//! bounded countermodel oracle.
//!
//! cargo run --release --example random_corpus -- 1000 42

use std::time::Instant;

use tenseprove::generate::{corpus, GenConfig};
use tenseprove::prover::{try_prove, Budget, SearchOutcome};
use tenseprove::semantics::bounded_countermodel_search;
use tenseprove::CalculusVariant;

fn main() {
    let mut args = std::env::args().skip(1);
    let n = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let start = Instant::now();
    let (mut valid, mut invalid, mut nodes, mut conflicts) = (0, 0, 0, 0);
    for f in corpus(seed, n, &GenConfig::default()) {
        let r = try_prove(&f, CalculusVariant::Kt, &Budget::default()).expect("certified");
        nodes += r.statistics.nodes;
        match r.outcome {
            SearchOutcome::Valid(_) => {
                valid += 1;
                if bounded_countermodel_search(&f, 3).unwrap().is_some() {
                    conflicts += 1;
                    println!("oracle conflict: {f}");
                }
            }
            SearchOutcome::Invalid { .. } => invalid += 1,
            SearchOutcome::ResourceLimit(_) => println!("budget exhausted: {f}"),
        }
    }
    println!(
        "{n} formulas (seed {seed}): {valid} valid, {invalid} invalid, {nodes} search nodes, \
         {conflicts} oracle conflicts, {:.2?}",
        start.elapsed()
    );
}
