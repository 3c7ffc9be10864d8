//! Nanopublications as a unified model for article snippets, review
//! comments and the links between them.
//!
//! The crate is layered bottom-up:
//!
//! - [`rdf`]: terms, quads, a TriG reader, a canonical N-Quads writer.
//! - [`nanopub`]: assembling, validating, hash-addressing (trusty URIs) and
//!   indexing nanopublications.
//! - [`linkflows`]: article structure, typed review comments, the
//!   `refersTo` / `isResponseTo` / `isUpdateOf` links and the synthetic
//!   corpus generator.
//! - [`store`]: an in-memory quad store over loaded nanopublications and the
//!   seven editor competency questions.

pub mod linkflows;
pub mod nanopub;
pub mod rdf;
pub mod store;
pub mod vocab;

pub use nanopub::{Nanopublication, PubMeta};
pub use rdf::{Iri, Literal, Quad, QuadSet, Subject, Term};
