//! Decide a formula given on the command line (default: the converse
//! interaction axiom) in both Kt rule sets.
//!
//! cargo run --example decide_formula -- "<P>[F]p -> p"

use tenseprove::formula::parse;
use tenseprove::prover::{try_prove, Budget, SearchOutcome};
use tenseprove::CalculusVariant;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "<P>[F]p -> p".into());
    let f = match parse(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(3);
        }
    };
    println!("formula   {}", f.to_unicode());
    println!("desugared {}", f.desugar().to_unicode());
    for v in [CalculusVariant::Kt, CalculusVariant::KtStar] {
        let report = try_prove(&f, v, &Budget::default()).expect("certified outcome");
        let detail = match &report.outcome {
            SearchOutcome::Valid(d) => format!("{} rule applications, height {}", d.node_count(), d.height),
            SearchOutcome::Invalid { model, .. } => format!("countermodel with {} worlds", model.worlds().len()),
            SearchOutcome::ResourceLimit(_) => "budget exhausted".into(),
        };
        println!(
            "{:<4} {:<8} {detail} ({} search nodes)",
            v.name(),
            report.outcome.verdict(),
            report.statistics.nodes
        );
    }
}
