//! Kaplansky graphs of zero divisors and units in group algebras.
//!
//! The crate enumerates the cycle relations that edge labellings force on
//! `<h2, h3>`, classifies the resulting presentations, generates connected
//! cubic triangle-free graphs, sieves them against a forbidden-subgraph
//! catalog and chains the counting arguments into support-size bounds.

pub mod bounds;
pub mod cli;
pub mod cycles;
pub mod gen;
pub mod graph;
pub mod kgraph;
pub mod patterns;
pub mod quotient;
pub mod words;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
