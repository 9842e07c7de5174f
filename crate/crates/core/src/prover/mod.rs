//! Backward proof search.
//!
//! [`search`] explores the full search space of a sequent, [`prune`] cuts a
//! failed search tree down to the part that carries a countermodel, and
//! [`extract_model`] reads that model off. [`prove`] wraps the three and
//! re-checks whatever it returns before returning it.

mod extract;
mod prune;
mod search;

pub use extract::{extract_derivation, extract_model};
pub use prune::prune;
pub use search::{search, NodeKind, SearchNode, Status};

use std::time::{Duration, Instant};

use crate::calculus::CalculusVariant;
use crate::formula::Formula;
use crate::metatheory::{check_detailed, Derivation};
use crate::semantics::{falsifies_in, Frame, KripkeModel};
use crate::sequent::LinearNestedSequent;

/// Limits on a single search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 1_000_000;
    pub const DEFAULT_MS: u64 = 30_000;

    pub fn new(max_nodes: u64, max_ms: u64) -> Self {
        Budget {
            max_nodes,
            max_time: Duration::from_millis(max_ms),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT_NODES, Budget::DEFAULT_MS)
    }
}

/// Counters collected during one search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Statistics {
    pub nodes: u64,
    pub restarts: u64,
    pub max_length: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Valid(Derivation),
    Invalid { model: KripkeModel, root: String },
    ResourceLimit(Statistics),
}

impl SearchOutcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            SearchOutcome::Valid(_) => "valid",
            SearchOutcome::Invalid { .. } => "invalid",
            SearchOutcome::ResourceLimit(_) => "resource-limit",
        }
    }
}

/// An outcome together with the search statistics and the end-sequent that
/// was searched (after desugaring and, for KB, collapsing `■` to `□`).
#[derive(Clone, Debug)]
pub struct Report {
    pub outcome: SearchOutcome,
    pub statistics: Statistics,
    pub end_sequent: LinearNestedSequent,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProverError {
    #[error("search budget exhausted after {} nodes", .0.nodes)]
    ResourceLimit(Statistics),
    #[error("termination watchdog: {0}")]
    Watchdog(String),
    #[error("extracted countermodel does not falsify the end-sequent: {0}")]
    InternalModelError(String),
    #[error("emitted derivation failed the checker: {0}")]
    InternalDerivationError(String),
    #[error("{0}")]
    Precondition(String),
}

/// The end-sequent `ε ⇒ f` for variant `v`.
pub fn end_sequent_for(f: &Formula, v: CalculusVariant) -> LinearNestedSequent {
    let core = f.desugar();
    let core = if v == CalculusVariant::KB {
        core.collapse_converse()
    } else {
        core
    };
    LinearNestedSequent::end_sequent(core)
}

/// Decide `f` and certify the result.
pub fn try_prove(f: &Formula, v: CalculusVariant, budget: &Budget) -> Result<Report, ProverError> {
    prove_sequent(&end_sequent_for(f, v), v, budget)
}

/// Decide a core sequent and certify the result: the derivation is
/// re-checked, the model must falsify all of `s` at its root.
///
/// Search is complete for end-sequents. On longer inputs a restart can
/// discard an input component, so a valid sequent may come back as
/// [`ProverError::InternalModelError`]; it is never reported invalid.
pub fn prove_sequent(
    s: &LinearNestedSequent,
    v: CalculusVariant,
    budget: &Budget,
) -> Result<Report, ProverError> {
    let start = Instant::now();
    let (status, tree, mut statistics) = match search(s, v, budget) {
        Ok(found) => found,
        Err(ProverError::ResourceLimit(stats)) => {
            return Ok(Report {
                outcome: SearchOutcome::ResourceLimit(stats),
                statistics: stats,
                end_sequent: s.clone(),
            })
        }
        Err(e) => return Err(e),
    };
    let outcome = match status {
        Status::Closed => {
            let d = extract_derivation(&tree)?;
            check_detailed(&d, v)
                .map_err(|e| ProverError::InternalDerivationError(e.to_string()))?;
            SearchOutcome::Valid(d)
        }
        _ => {
            let (model, root) = extract_model(&prune(&tree), v)?;
            let frame = if v == CalculusVariant::KB {
                Frame::Symmetric
            } else {
                Frame::Directed
            };
            if falsifies_in(&model, &root, s, frame) != Ok(true) {
                return Err(ProverError::InternalModelError(format!(
                    "model at {root} falsifies a prefix of `{s}` but not the whole sequent"
                )));
            }
            SearchOutcome::Invalid { model, root }
        }
    };
    statistics.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Report {
        outcome,
        statistics,
        end_sequent: s.clone(),
    })
}

/// Decide `f`. Resource exhaustion is an outcome; a certificate that fails
/// its own re-check is a bug and panics rather than being reported as a
/// verdict.
pub fn prove(f: &Formula, v: CalculusVariant, budget: &Budget) -> SearchOutcome {
    match try_prove(f, v, budget) {
        Ok(r) => r.outcome,
        Err(e) => panic!("prover invariant violated on `{f}`: {e}"),
    }
}
