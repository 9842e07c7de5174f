//! Machine-readable renderings: JSON for sequents, derivations, models
//! and statistics; LaTeX proof trees; Graphviz DOT for models.

mod dot;
mod json;
mod latex;

pub use dot::model_to_dot;
pub use json::{
    derivation_from_json, derivation_to_json, model_from_json, model_to_json, sequent_from_json,
    sequent_to_json, statistics_to_json, ModelDocument, SCHEMA_VERSION,
};
pub use latex::{derivation_to_latex, sequent_to_latex};

use crate::formula::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version `{0}`")]
    Schema(String),
    #[error("bad formula `{text}`: {source}")]
    Formula { text: String, source: ParseError },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown link `{0}` (expected \"F\" or \"P\")")]
    UnknownLink(String),
    #[error("sequent has {components} components but {links} links")]
    Shape { components: usize, links: usize },
    #[error("edge mentions undeclared world `{0}`")]
    UnknownWorld(String),
}
