//! Review-domain semantics: article snippets and their structure, review
//! comments classified along the Linkflows dimensions, the links between
//! them, and a deterministic synthetic corpus.

mod article;
mod codec;
mod corpus;
mod links;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nanopub::NanopubError;
use crate::rdf::{Iri, RdfError};
use crate::vocab::{doco, fabio, lf};

pub use article::{build_article, default_layouts, ArticleLayout};
pub use codec::{encode_assertion, from_nanopub, to_nanopub, to_nanopub_with_notes};
pub use corpus::{generate_corpus, Corpus, CorpusSpec, DimensionWeights};
pub use links::{
    resolve_target, response_thread, validate_edge, version_chain, Granularity, TargetInfo, Thread,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkflowsError {
    #[error(transparent)]
    Nanopub(#[from] NanopubError),
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error("{uri}: {missing}")]
    Shape { uri: String, missing: String },
    #[error("{uri}: assertion matches none of the element, comment or review shapes")]
    UnknownShape { uri: String },
    #[error("impact {0} is outside 1..5")]
    ImpactRange(i64),
    #[error("dangling target {0}")]
    DanglingTarget(String),
    #[error("cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("invalid layout: {0}")]
    Layout(String),
    #[error("invalid link {kind} from {from} to {to}: {reason}")]
    InvalidEdge {
        kind: LinkKind,
        from: String,
        to: String,
        reason: String,
    },
    #[error("invalid corpus spec: {0}")]
    Spec(String),
    #[error("triple targets unreachable: base corpus needs {base} assertion triples but the target allows {target} (short by {shortfall})")]
    Shortfall {
        base: usize,
        target: usize,
        shortfall: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Article,
    Section,
    Paragraph,
    Figure,
    Table,
    Formula,
    Footnote,
}

impl ElementKind {
    pub const ALL: [ElementKind; 7] = [
        ElementKind::Article,
        ElementKind::Section,
        ElementKind::Paragraph,
        ElementKind::Figure,
        ElementKind::Table,
        ElementKind::Formula,
        ElementKind::Footnote,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Article => "article",
            ElementKind::Section => "section",
            ElementKind::Paragraph => "paragraph",
            ElementKind::Figure => "figure",
            ElementKind::Table => "table",
            ElementKind::Formula => "formula",
            ElementKind::Footnote => "footnote",
        }
    }

    pub fn class_iri(self) -> &'static str {
        match self {
            ElementKind::Article => fabio::RESEARCH_PAPER,
            ElementKind::Section => doco::SECTION,
            ElementKind::Paragraph => doco::PARAGRAPH,
            ElementKind::Figure => doco::FIGURE,
            ElementKind::Table => doco::TABLE,
            ElementKind::Formula => doco::FORMULA,
            ElementKind::Footnote => doco::FOOTNOTE,
        }
    }

    pub fn from_class(iri: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.class_iri() == iri)
    }

    /// Paragraph-like kinds that can only sit inside a section.
    pub fn is_leaf(self) -> bool {
        !matches!(self, ElementKind::Article | ElementKind::Section)
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocElement {
    pub uri: Iri,
    pub kind: ElementKind,
    pub text: String,
    pub parent: Option<Iri>,
    /// Position among siblings; for an article, its position in the corpus.
    pub order_index: u32,
}

macro_rules! dimension {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $label:literal, $class:path;)+ }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "lowercase")]
        pub enum $name {
            $($variant,)+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant,)+];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $label,)+
                }
            }

            pub fn class_iri(self) -> &'static str {
                match self {
                    $($name::$variant => $class,)+
                }
            }

            pub fn from_class(iri: &str) -> Option<Self> {
                Self::ALL.iter().copied().find(|v| v.class_iri() == iri)
            }

            pub fn parse(s: &str) -> Option<Self> {
                Self::ALL.iter().copied().find(|v| v.name() == s)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

dimension!(Positivity {
    Positive => "positive", lf::POSITIVE_COMMENT;
    Negative => "negative", lf::NEGATIVE_COMMENT;
    Neutral => "neutral", lf::NEUTRAL_COMMENT;
});

dimension!(
    /// Presentation covers syntax and style.
    Aspect {
        Content => "content", lf::CONTENT_COMMENT;
        Presentation => "presentation", lf::SYNTAX_COMMENT;
    }
);

dimension!(Actionability {
    Suggestion => "suggestion", lf::SUGGESTION_COMMENT;
    Compulsory => "compulsory", lf::COMPULSORY_COMMENT;
});

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewComment {
    pub uri: Iri,
    pub target: Iri,
    pub positivity: Positivity,
    pub aspect: Aspect,
    pub actionability: Actionability,
    pub impact: u8,
    pub text: String,
    pub reviewer: Iri,
    pub review: Iri,
    /// Position within the review.
    pub position: u32,
}

/// A review. `comments` is not part of the encoded assertion; it is filled
/// in from the comments' `isCommentOf` links, ordered by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewContainer {
    pub uri: Iri,
    pub article: Iri,
    pub reviewer: Iri,
    pub comments: Vec<Iri>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkKind {
    #[serde(rename = "refersTo")]
    RefersTo,
    #[serde(rename = "isResponseTo")]
    IsResponseTo,
    #[serde(rename = "isUpdateOf")]
    IsUpdateOf,
}

impl LinkKind {
    pub fn predicate(self) -> &'static str {
        match self {
            LinkKind::RefersTo => lf::REFERS_TO,
            LinkKind::IsResponseTo => lf::IS_RESPONSE_TO,
            LinkKind::IsUpdateOf => lf::IS_UPDATE_OF,
        }
    }

    pub fn from_predicate(iri: &str) -> Option<Self> {
        [
            LinkKind::RefersTo,
            LinkKind::IsResponseTo,
            LinkKind::IsUpdateOf,
        ]
        .into_iter()
        .find(|k| k.predicate() == iri)
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkKind::RefersTo => "refersTo",
            LinkKind::IsResponseTo => "isResponseTo",
            LinkKind::IsUpdateOf => "isUpdateOf",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LinkEdge {
    pub kind: LinkKind,
    pub from: Iri,
    pub to: Iri,
}

impl LinkEdge {
    pub fn new(kind: LinkKind, from: Iri, to: Iri) -> Self {
        LinkEdge { kind, from, to }
    }
}

/// Anything the codec can turn into a nanopublication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainObject {
    Element(DocElement),
    Comment(ReviewComment),
    Review(ReviewContainer),
}

impl DomainObject {
    pub fn uri(&self) -> &Iri {
        match self {
            DomainObject::Element(e) => &e.uri,
            DomainObject::Comment(c) => &c.uri,
            DomainObject::Review(r) => &r.uri,
        }
    }
}

impl From<DocElement> for DomainObject {
    fn from(e: DocElement) -> Self {
        DomainObject::Element(e)
    }
}

impl From<ReviewComment> for DomainObject {
    fn from(c: ReviewComment) -> Self {
        DomainObject::Comment(c)
    }
}

impl From<ReviewContainer> for DomainObject {
    fn from(r: ReviewContainer) -> Self {
        DomainObject::Review(r)
    }
}
