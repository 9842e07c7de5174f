//! Decision procedures for tense logic Kt and modal logic KB based on linear
//! nested sequents.
//!
//! Proof search produces either a derivation, re-checked by
//! [`metatheory::check`], or a Kripke countermodel, re-checked by
//! [`semantics::falsifies`]. The [`metatheory`] module also provides
//! weakening, contraction, generalised initial sequents and cut elimination
//! as executable proof transformations.
//!
//! ```
//! use tenseprove::{formula::parse, prover::{prove, Budget, SearchOutcome}, CalculusVariant};
//!
//! let f = parse("p -> [F]~[P]~p").unwrap();
//! let outcome = prove(&f, CalculusVariant::Kt, &Budget::default());
//! assert!(matches!(outcome, SearchOutcome::Valid(_)));
//! ```

pub mod calculus;
pub mod cli;
pub mod format;
pub mod formula;
pub mod generate;
pub mod metatheory;
pub mod prover;
pub mod semantics;
pub mod sequent;

pub use calculus::{CalculusVariant, RuleId, RuleInstance};
pub use formula::{Formula, Polarity};
pub use metatheory::Derivation;
pub use semantics::KripkeModel;
pub use sequent::{Component, LinearNestedSequent, Multiset};
