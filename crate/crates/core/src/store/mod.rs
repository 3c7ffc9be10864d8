//! In-memory quad store over verified nanopublications, with a typed domain
//! index and the editor analytics built on it.

mod cq;
mod domain;
mod io;
mod views;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::linkflows::{ElementKind, LinkflowsError};
use crate::nanopub::{verify_trusty, GraphRole, NanopubError, Nanopublication};
use crate::rdf::{Iri, Quad, RdfError, Subject, Term};

pub use cq::{
    AspectDistribution, CoverageReport, Cq6Mode, CriticalPoint, GranularityDistribution,
    PositivityCounts, ReviewerBreakdown, ReviewerRow, SectionBreakdown, SectionCoverage,
    SectionRow, ARTICLE_LEVEL, DEFAULT_CQ5_THRESHOLD,
};
pub use domain::{ArticleInfo, DomainIndex};
pub use io::{read_nanopubs, write_nanopubs};
pub use views::{
    render_table, CommentDetail, CommentFilter, CqQuestion, MatrixRow, ReviewerStack,
    SectionFilter, SectionMatrix, FILTER_ARTICLE_LEVEL,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("TRUSTY_MISMATCH: {0} fails verification")]
    Verification(String),
    #[error("NOT_TRUSTY: {0} has no trusty artifact code")]
    NotTrusty(String),
    #[error("duplicate nanopublication {0}")]
    Duplicate(String),
    #[error("{uri}: {error}")]
    Shape { uri: String, error: LinkflowsError },
    #[error("unknown article {0}")]
    UnknownArticle(String),
    #[error("invalid filter value {field}={value}")]
    InvalidFilter { field: String, value: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {error}")]
    Parse { path: String, error: RdfError },
    #[error("{path}: {error}")]
    Nanopub { path: String, error: NanopubError },
}

/// Element, comment and per-graph triple counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub nanopublications: usize,
    pub triples: usize,
    pub articles: usize,
    pub sections: usize,
    pub paragraphs: usize,
    pub figures: usize,
    pub tables: usize,
    pub formulas: usize,
    pub footnotes: usize,
    pub review_comments: usize,
    pub reviews: usize,
    pub indexes: usize,
    pub head_triples: usize,
    pub assertion_triples: usize,
    pub provenance_triples: usize,
    pub pubinfo_triples: usize,
}

impl CorpusStats {
    pub fn element_count(&self, kind: ElementKind) -> usize {
        match kind {
            ElementKind::Article => self.articles,
            ElementKind::Section => self.sections,
            ElementKind::Paragraph => self.paragraphs,
            ElementKind::Figure => self.figures,
            ElementKind::Table => self.tables,
            ElementKind::Formula => self.formulas,
            ElementKind::Footnote => self.footnotes,
        }
    }
}

/// Immutable after [`QuadStore::load`]; share it behind an `Arc`.
#[derive(Debug, Default)]
pub struct QuadStore {
    quads: Vec<Quad>,
    by_graph: BTreeMap<Iri, Vec<usize>>,
    by_subject: HashMap<Subject, Vec<usize>>,
    by_predicate_object: HashMap<(Iri, Term), Vec<usize>>,
    registry: BTreeMap<Iri, Nanopublication>,
    domain: DomainIndex,
}

impl QuadStore {
    /// Verifies and indexes `nanopubs`. Fails on the first nanopublication
    /// that does not verify, is duplicated, or has a malformed review shape.
    pub fn load(nanopubs: Vec<Nanopublication>) -> Result<Self, StoreError> {
        let mut registry = BTreeMap::new();
        for n in nanopubs {
            let uri = n.uri().as_str().to_owned();
            match verify_trusty(&n) {
                Ok(true) => {}
                Ok(false) => return Err(StoreError::Verification(uri)),
                Err(_) => return Err(StoreError::NotTrusty(uri)),
            }
            if registry.insert(n.uri().clone(), n).is_some() {
                return Err(StoreError::Duplicate(uri));
            }
        }
        let domain = DomainIndex::build(registry.values())?;

        let mut store = QuadStore {
            registry,
            domain,
            ..Default::default()
        };
        let quads: Vec<Quad> = store
            .registry
            .values()
            .flat_map(|n| n.quads().iter().cloned())
            .collect();
        for (i, q) in quads.iter().enumerate() {
            store.by_graph.entry(q.graph.clone()).or_default().push(i);
            store
                .by_subject
                .entry(q.subject.clone())
                .or_default()
                .push(i);
            store
                .by_predicate_object
                .entry((q.predicate.clone(), q.object.clone()))
                .or_default()
                .push(i);
        }
        store.quads = quads;
        Ok(store)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn nanopub_count(&self) -> usize {
        self.registry.len()
    }

    pub fn nanopub(&self, uri: &Iri) -> Option<&Nanopublication> {
        self.registry.get(uri)
    }

    pub fn nanopubs(&self) -> impl Iterator<Item = &Nanopublication> + '_ {
        self.registry.values()
    }

    pub fn domain(&self) -> &DomainIndex {
        &self.domain
    }

    fn pick<'a>(&'a self, idx: Option<&'a Vec<usize>>) -> impl Iterator<Item = &'a Quad> + 'a {
        idx.into_iter().flatten().map(move |&i| &self.quads[i])
    }

    pub fn quads_in_graph<'a>(&'a self, graph: &Iri) -> impl Iterator<Item = &'a Quad> + 'a {
        self.pick(self.by_graph.get(graph))
    }

    pub fn quads_about<'a>(&'a self, subject: &Subject) -> impl Iterator<Item = &'a Quad> + 'a {
        self.pick(self.by_subject.get(subject))
    }

    pub fn quads_with<'a>(
        &'a self,
        predicate: &Iri,
        object: &Term,
    ) -> impl Iterator<Item = &'a Quad> + 'a {
        self.pick(
            self.by_predicate_object
                .get(&(predicate.clone(), object.clone())),
        )
    }

    pub fn stats(&self) -> CorpusStats {
        let mut s = CorpusStats {
            nanopublications: self.registry.len(),
            triples: self.quads.len(),
            review_comments: self.domain.comments.len(),
            reviews: self.domain.reviews.len(),
            indexes: self.domain.indexes.len(),
            ..Default::default()
        };
        for e in self.domain.elements.values() {
            *match e.kind {
                ElementKind::Article => &mut s.articles,
                ElementKind::Section => &mut s.sections,
                ElementKind::Paragraph => &mut s.paragraphs,
                ElementKind::Figure => &mut s.figures,
                ElementKind::Table => &mut s.tables,
                ElementKind::Formula => &mut s.formulas,
                ElementKind::Footnote => &mut s.footnotes,
            } += 1;
        }
        for n in self.registry.values() {
            for (role, count) in n.triple_counts() {
                *match role {
                    GraphRole::Head => &mut s.head_triples,
                    GraphRole::Assertion => &mut s.assertion_triples,
                    GraphRole::Provenance => &mut s.provenance_triples,
                    GraphRole::Pubinfo => &mut s.pubinfo_triples,
                } += count;
            }
        }
        s
    }
}
