//! Minimal RDF model: terms, named-graph quads, a TriG reader, a canonical
//! N-Quads writer and a prefixed TriG writer.

mod nquads;
mod quad;
mod term;
mod trig;
mod writer;

pub use nquads::{canonical_nquads, quad_line};
pub use quad::{rewrite_terms, Quad, QuadSet};
pub use term::{BlankNode, Iri, Literal, Subject, Term};
pub use trig::{parse_nquads, parse_trig, parse_trig_with_base};
pub use writer::write_trig;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankNode(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undefined prefix {prefix:?} at {line}:{column}")]
    UndefinedPrefix {
        prefix: String,
        line: usize,
        column: usize,
    },
    #[error("relative IRI {iri:?} without a base at {line}:{column}")]
    RelativeIri {
        iri: String,
        line: usize,
        column: usize,
    },
    #[error("ambiguous rewrite: {0:?} is a prefix of {1:?}")]
    AmbiguousRewrite(String, String),
}
