//! Vocabulary IRIs used by the model.

pub mod rdf {
    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

    /// Container membership property `rdf:_n` (1-based).
    pub fn member(n: usize) -> String {
        format!("{NS}_{n}")
    }

    /// Inverse of [`member`].
    pub fn member_index(iri: &str) -> Option<usize> {
        let n: usize = iri.strip_prefix(NS)?.strip_prefix('_')?.parse().ok()?;
        (n >= 1).then_some(n)
    }
}

pub mod xsd {
    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
    pub const DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";
}

pub mod np {
    pub const NS: &str = "http://www.nanopub.org/nschema#";
    pub const NANOPUBLICATION: &str = "http://www.nanopub.org/nschema#Nanopublication";
    pub const HAS_ASSERTION: &str = "http://www.nanopub.org/nschema#hasAssertion";
    pub const HAS_PROVENANCE: &str = "http://www.nanopub.org/nschema#hasProvenance";
    pub const HAS_PUBLICATION_INFO: &str = "http://www.nanopub.org/nschema#hasPublicationInfo";
}

pub mod npx {
    pub const NS: &str = "http://purl.org/nanopub/x/";
    pub const INCLUDES_ELEMENT: &str = "http://purl.org/nanopub/x/includesElement";
    pub const INCLUDES_SUBINDEX: &str = "http://purl.org/nanopub/x/includesSubindex";
    pub const APPENDS_INDEX: &str = "http://purl.org/nanopub/x/appendsIndex";
}

pub mod prov {
    pub const NS: &str = "http://www.w3.org/ns/prov#";
    pub const WAS_ATTRIBUTED_TO: &str = "http://www.w3.org/ns/prov#wasAttributedTo";
    pub const HAD_PRIMARY_SOURCE: &str = "http://www.w3.org/ns/prov#hadPrimarySource";
}

pub mod dcterms {
    pub const NS: &str = "http://purl.org/dc/terms/";
    pub const CREATOR: &str = "http://purl.org/dc/terms/creator";
    pub const CREATED: &str = "http://purl.org/dc/terms/created";
    pub const DESCRIPTION: &str = "http://purl.org/dc/terms/description";
}

/// Linkflows review vocabulary. `isReviewOf`, `isCommentOf` and
/// `hasOrderIndex` are local additions for the structural links.
pub mod lf {
    pub const NS: &str = "https://purl.org/linkflows/model#";
    pub const REVIEW_COMMENT: &str = "https://purl.org/linkflows/model#ReviewComment";
    pub const POSITIVE_COMMENT: &str = "https://purl.org/linkflows/model#PositiveComment";
    pub const NEGATIVE_COMMENT: &str = "https://purl.org/linkflows/model#NegativeComment";
    pub const NEUTRAL_COMMENT: &str = "https://purl.org/linkflows/model#NeutralComment";
    pub const CONTENT_COMMENT: &str = "https://purl.org/linkflows/model#ContentComment";
    pub const SYNTAX_COMMENT: &str = "https://purl.org/linkflows/model#SyntaxComment";
    pub const SUGGESTION_COMMENT: &str = "https://purl.org/linkflows/model#SuggestionComment";
    pub const COMPULSORY_COMMENT: &str = "https://purl.org/linkflows/model#CompulsoryComment";
    pub const HAS_IMPACT: &str = "https://purl.org/linkflows/model#hasImpact";
    pub const HAS_COMMENT_TEXT: &str = "https://purl.org/linkflows/model#hasCommentText";
    pub const REFERS_TO: &str = "https://purl.org/linkflows/model#refersTo";
    pub const IS_RESPONSE_TO: &str = "https://purl.org/linkflows/model#isResponseTo";
    pub const IS_UPDATE_OF: &str = "https://purl.org/linkflows/model#isUpdateOf";
    pub const REVIEW: &str = "https://purl.org/linkflows/model#Review";
    pub const IS_REVIEW_OF: &str = "https://purl.org/linkflows/model#isReviewOf";
    pub const IS_COMMENT_OF: &str = "https://purl.org/linkflows/model#isCommentOf";
    pub const HAS_ORDER_INDEX: &str = "https://purl.org/linkflows/model#hasOrderIndex";
}

pub mod doco {
    pub const NS: &str = "http://purl.org/spar/doco/";
    pub const SECTION: &str = "http://purl.org/spar/doco/Section";
    pub const PARAGRAPH: &str = "http://purl.org/spar/doco/Paragraph";
    pub const FIGURE: &str = "http://purl.org/spar/doco/Figure";
    pub const TABLE: &str = "http://purl.org/spar/doco/Table";
    pub const FORMULA: &str = "http://purl.org/spar/doco/Formula";
    pub const FOOTNOTE: &str = "http://purl.org/spar/doco/Footnote";
}

pub mod fabio {
    pub const NS: &str = "http://purl.org/spar/fabio/";
    pub const RESEARCH_PAPER: &str = "http://purl.org/spar/fabio/ResearchPaper";
}

pub mod po {
    pub const NS: &str = "http://www.essepuntato.it/2008/12/pattern#";
    pub const IS_CONTAINED_BY: &str = "http://www.essepuntato.it/2008/12/pattern#isContainedBy";
}

pub mod c4o {
    pub const NS: &str = "http://purl.org/spar/c4o/";
    pub const HAS_CONTENT: &str = "http://purl.org/spar/c4o/hasContent";
}

/// Prefix hints attached to generated quad sets for readable TriG output.
pub const STANDARD_PREFIXES: &[(&str, &str)] = &[
    ("rdf", rdf::NS),
    ("xsd", xsd::NS),
    ("np", np::NS),
    ("npx", npx::NS),
    ("prov", prov::NS),
    ("dcterms", dcterms::NS),
    ("lf", lf::NS),
    ("doco", doco::NS),
    ("fabio", fabio::NS),
    ("po", po::NS),
    ("c4o", c4o::NS),
];
