//! Nanopublications: a head graph tying an assertion graph to its
//! provenance and publication info, addressed by a trusty URI.

mod index;
mod trusty;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use chrono::{DateTime, SecondsFormat, Utc};
use thiserror::Error;

use crate::rdf::{self, write_trig, Iri, Literal, Quad, QuadSet, RdfError, Subject, Term};
use crate::vocab::{dcterms, np, prov, rdf as rdfv, xsd, STANDARD_PREFIXES};

pub use index::{
    build_index, index_members, IndexBuilder, IndexEntries, NanopubIndex, MAX_INDEX_SIZE,
};
pub use trusty::{make_trusty, verify_trusty, TrustyCode, PLACEHOLDER};
pub use validate::{validate, Rule, ValidationReport, Violation};

/// Prefix every pre-trusty nanopublication URI must carry.
pub const TEMP_SCHEME: &str = "urn:temp:";

pub const HEAD_SUFFIX: &str = "#Head";
pub const ASSERTION_SUFFIX: &str = "#assertion";
pub const PROVENANCE_SUFFIX: &str = "#provenance";
pub const PUBINFO_SUFFIX: &str = "#pubinfo";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NanopubError {
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error("assertion graph is empty")]
    EmptyAssertion,
    #[error("blank node in {0}")]
    BlankNode(String),
    #[error("creator {0} is not an ORCID IRI (https://orcid.org/...)")]
    InvalidCreator(String),
    #[error("{0} is not a temporary base (urn:temp:...)")]
    NotTemporary(String),
    #[error("no nanopublication head found (missing np:Nanopublication type triple)")]
    NoHead,
    #[error("{0} nanopublication heads found where one was expected")]
    MultipleHeads(usize),
    #[error("quads in graph {0} belong to no nanopublication")]
    StrayGraph(String),
    #[error("structurally invalid nanopublication: {0}")]
    Invalid(ValidationReport),
    #[error("{0} does not end in a trusty artifact code")]
    NotTrusty(String),
    #[error("index has no members")]
    EmptyIndex,
    #[error("index member {0} is not a trusty URI")]
    NonTrustyMember(String),
    #[error("{uri} is not an index nanopublication: {reason}")]
    NotAnIndex { uri: String, reason: String },
    #[error("index chain is broken: cannot resolve {0}")]
    UnresolvedIndex(String),
}

/// The four graphs of a nanopublication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphRole {
    Head,
    Assertion,
    Provenance,
    Pubinfo,
}

impl GraphRole {
    pub const ALL: [GraphRole; 4] = [
        GraphRole::Head,
        GraphRole::Assertion,
        GraphRole::Provenance,
        GraphRole::Pubinfo,
    ];

    pub fn suffix(self) -> &'static str {
        match self {
            GraphRole::Head => HEAD_SUFFIX,
            GraphRole::Assertion => ASSERTION_SUFFIX,
            GraphRole::Provenance => PROVENANCE_SUFFIX,
            GraphRole::Pubinfo => PUBINFO_SUFFIX,
        }
    }
}

impl fmt::Display for GraphRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphRole::Head => "head",
            GraphRole::Assertion => "assertion",
            GraphRole::Provenance => "provenance",
            GraphRole::Pubinfo => "pubinfo",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nanopublication {
    uri: Iri,
    head: Iri,
    assertion: Iri,
    provenance: Iri,
    pubinfo: Iri,
    quads: QuadSet,
}

impl Nanopublication {
    /// Assembles a nanopublication from explicit parts without checking
    /// them; use [`validate`] to inspect the result.
    pub fn from_parts(
        uri: Iri,
        head: Iri,
        assertion: Iri,
        provenance: Iri,
        pubinfo: Iri,
        quads: QuadSet,
    ) -> Self {
        Nanopublication {
            uri,
            head,
            assertion,
            provenance,
            pubinfo,
            quads,
        }
    }

    /// Reads exactly one nanopublication from a quad set. Graph names come
    /// from the head triples, falling back to the fragment convention when a
    /// head triple is missing (so that [`validate`] can report it).
    pub fn from_quads(quads: QuadSet) -> Result<Self, NanopubError> {
        let heads = find_heads(&quads);
        match heads.len() {
            0 => Err(NanopubError::NoHead),
            1 => {
                let (uri, head) = heads.into_iter().next().expect("one head");
                Ok(Self::with_head(uri, head, quads))
            }
            n => Err(NanopubError::MultipleHeads(n)),
        }
    }

    /// Splits a quad set holding several nanopublications (e.g. a
    /// concatenated corpus file). Quads outside every nanopublication's
    /// graphs are an error.
    pub fn split(quads: QuadSet) -> Result<Vec<Self>, NanopubError> {
        let heads = find_heads(&quads);
        if heads.is_empty() {
            return if quads.is_empty() {
                Ok(Vec::new())
            } else {
                Err(NanopubError::NoHead)
            };
        }
        let mut owner: BTreeMap<Iri, usize> = BTreeMap::new();
        let mut out: Vec<Nanopublication> = Vec::with_capacity(heads.len());
        for (i, (uri, head)) in heads.into_iter().enumerate() {
            let np = Self::with_head(uri, head, QuadSet::new());
            for g in np.graph_iris() {
                owner.insert(g.clone(), i);
            }
            out.push(np);
        }
        let prefixes = quads.prefixes().clone();
        for q in quads {
            match owner.get(&q.graph) {
                Some(&i) => {
                    out[i].quads.insert(q);
                }
                None => return Err(NanopubError::StrayGraph(q.graph.as_str().to_owned())),
            }
        }
        for np in &mut out {
            np.quads.extend_prefixes(&prefixes);
        }
        Ok(out)
    }

    fn with_head(uri: Iri, head: Iri, quads: QuadSet) -> Self {
        let lookup = |predicate: &str, suffix: &str| -> Iri {
            quads
                .in_graph(&head)
                .find(|q| q.subject.as_iri() == Some(&uri) && q.predicate.as_str() == predicate)
                .and_then(|q| q.object.as_iri().cloned())
                .unwrap_or_else(|| uri.join_suffix(suffix).unwrap_or_else(|_| uri.clone()))
        };
        let assertion = lookup(np::HAS_ASSERTION, ASSERTION_SUFFIX);
        let provenance = lookup(np::HAS_PROVENANCE, PROVENANCE_SUFFIX);
        let pubinfo = lookup(np::HAS_PUBLICATION_INFO, PUBINFO_SUFFIX);
        Nanopublication {
            uri,
            head,
            assertion,
            provenance,
            pubinfo,
            quads,
        }
    }

    pub fn uri(&self) -> &Iri {
        &self.uri
    }

    pub fn graph_iri(&self, role: GraphRole) -> &Iri {
        match role {
            GraphRole::Head => &self.head,
            GraphRole::Assertion => &self.assertion,
            GraphRole::Provenance => &self.provenance,
            GraphRole::Pubinfo => &self.pubinfo,
        }
    }

    pub fn graph_iris(&self) -> [&Iri; 4] {
        [&self.head, &self.assertion, &self.provenance, &self.pubinfo]
    }

    pub fn quads(&self) -> &QuadSet {
        &self.quads
    }

    pub fn into_quads(self) -> QuadSet {
        self.quads
    }

    pub fn graph(&self, role: GraphRole) -> impl Iterator<Item = &Quad> + '_ {
        let g = self.graph_iri(role);
        self.quads.iter().filter(move |q| &q.graph == g)
    }

    pub fn assertion(&self) -> impl Iterator<Item = &Quad> + '_ {
        self.graph(GraphRole::Assertion)
    }

    pub fn role_of(&self, graph: &Iri) -> Option<GraphRole> {
        GraphRole::ALL
            .into_iter()
            .find(|r| self.graph_iri(*r) == graph)
    }

    /// Number of quads per graph role.
    pub fn triple_counts(&self) -> BTreeMap<GraphRole, usize> {
        let mut counts: BTreeMap<GraphRole, usize> =
            GraphRole::ALL.into_iter().map(|r| (r, 0)).collect();
        for q in &self.quads {
            if let Some(role) = self.role_of(&q.graph) {
                *counts.entry(role).or_default() += 1;
            }
        }
        counts
    }

    pub fn artifact_code(&self) -> Option<TrustyCode> {
        TrustyCode::from_uri(self.uri.as_str())
    }

    pub fn is_temporary(&self) -> bool {
        self.uri.starts_with(TEMP_SCHEME)
    }

    pub fn canonical_nquads(&self) -> String {
        rdf::canonical_nquads(&self.quads)
    }

    /// Prefixed TriG with `this:` / `sub:` bound to the nanopublication.
    pub fn to_trig(&self) -> String {
        let mut quads = self.quads.clone();
        for (name, ns) in STANDARD_PREFIXES {
            quads.set_prefix(*name, Iri::from_static(ns));
        }
        quads.set_prefix("this", self.uri.clone());
        if let Ok(sub) = self.uri.join_suffix("#") {
            quads.set_prefix("sub", sub);
        }
        write_trig(&quads)
    }
}

fn find_heads(quads: &QuadSet) -> Vec<(Iri, Iri)> {
    quads
        .iter()
        .filter(|q| {
            q.predicate.as_str() == rdfv::TYPE
                && q.object
                    .as_iri()
                    .is_some_and(|o| o.as_str() == np::NANOPUBLICATION)
        })
        .filter_map(|q| q.subject.as_iri().map(|s| (s.clone(), q.graph.clone())))
        .collect()
}

/// Creator, creation time and optional source used for provenance and
/// publication info.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PubMeta {
    pub creator: Iri,
    pub created: DateTime<Utc>,
    pub source: Option<Iri>,
}

pub const ORCID_PREFIX: &str = "https://orcid.org/";

impl PubMeta {
    pub fn new(
        creator: Iri,
        created: DateTime<Utc>,
        source: Option<Iri>,
    ) -> Result<Self, NanopubError> {
        let meta = PubMeta {
            creator,
            created,
            source,
        };
        meta.check()?;
        Ok(meta)
    }

    fn check(&self) -> Result<(), NanopubError> {
        let id = self
            .creator
            .as_str()
            .strip_prefix(ORCID_PREFIX)
            .unwrap_or("");
        if id.is_empty() {
            return Err(NanopubError::InvalidCreator(
                self.creator.as_str().to_owned(),
            ));
        }
        Ok(())
    }

    /// `xsd:dateTime` lexical form in UTC with seconds precision.
    pub fn created_lexical(&self) -> String {
        self.created.to_rfc3339_opts(SecondsFormat::Secs, true)
    }
}

/// Builds a pre-trusty nanopublication rooted at a `urn:temp:` base.
///
/// Supplied quads may use any graph; they are moved into the role's graph.
/// When no provenance is given a default is derived from [`PubMeta`]:
/// `prov:wasAttributedTo` the creator and `prov:hadPrimarySource` the source.
#[derive(Debug, Clone)]
pub struct NanopubBuilder {
    base: Iri,
    assertion: QuadSet,
    provenance: QuadSet,
    extra_pubinfo: QuadSet,
}

impl NanopubBuilder {
    pub fn new(temp_base: Iri) -> Self {
        NanopubBuilder {
            base: temp_base,
            assertion: QuadSet::new(),
            provenance: QuadSet::new(),
            extra_pubinfo: QuadSet::new(),
        }
    }

    pub fn base(&self) -> &Iri {
        &self.base
    }

    /// IRI of the assertion graph, for use as a provenance subject.
    pub fn assertion_graph(&self) -> Iri {
        self.base
            .join_suffix(ASSERTION_SUFFIX)
            .expect("suffix keeps IRI valid")
    }

    pub fn assertion(mut self, quads: QuadSet) -> Self {
        self.assertion = quads;
        self
    }

    pub fn provenance(mut self, quads: QuadSet) -> Self {
        self.provenance = quads;
        self
    }

    pub fn extra_pubinfo(mut self, quads: QuadSet) -> Self {
        self.extra_pubinfo = quads;
        self
    }

    pub fn build(self, meta: &PubMeta) -> Result<Nanopublication, NanopubError> {
        if !self.base.starts_with(TEMP_SCHEME) || self.base.fragment().is_some() {
            return Err(NanopubError::NotTemporary(self.base.as_str().to_owned()));
        }
        meta.check()?;
        if self.assertion.is_empty() {
            return Err(NanopubError::EmptyAssertion);
        }
        for (part, quads) in [
            ("assertion", &self.assertion),
            ("provenance", &self.provenance),
            ("pubinfo", &self.extra_pubinfo),
        ] {
            if quads.has_blank_nodes() {
                return Err(NanopubError::BlankNode(part.to_owned()));
            }
        }

        let uri = self.base.clone();
        let head = uri.join_suffix(HEAD_SUFFIX)?;
        let assertion = uri.join_suffix(ASSERTION_SUFFIX)?;
        let provenance = uri.join_suffix(PROVENANCE_SUFFIX)?;
        let pubinfo = uri.join_suffix(PUBINFO_SUFFIX)?;

        let mut quads = QuadSet::new();
        let iri = Iri::from_static;
        quads.insert(Quad::new(
            uri.clone(),
            iri(rdfv::TYPE),
            iri(np::NANOPUBLICATION),
            head.clone(),
        ));
        quads.insert(Quad::new(
            uri.clone(),
            iri(np::HAS_ASSERTION),
            assertion.clone(),
            head.clone(),
        ));
        quads.insert(Quad::new(
            uri.clone(),
            iri(np::HAS_PROVENANCE),
            provenance.clone(),
            head.clone(),
        ));
        quads.insert(Quad::new(
            uri.clone(),
            iri(np::HAS_PUBLICATION_INFO),
            pubinfo.clone(),
            head.clone(),
        ));

        quads.extend(self.assertion.regraph(&assertion));

        if self.provenance.is_empty() {
            quads.insert(Quad::new(
                assertion.clone(),
                iri(prov::WAS_ATTRIBUTED_TO),
                meta.creator.clone(),
                provenance.clone(),
            ));
            if let Some(source) = &meta.source {
                quads.insert(Quad::new(
                    assertion.clone(),
                    iri(prov::HAD_PRIMARY_SOURCE),
                    source.clone(),
                    provenance.clone(),
                ));
            }
        } else {
            quads.extend(self.provenance.regraph(&provenance));
        }

        quads.insert(Quad::new(
            uri.clone(),
            iri(dcterms::CREATOR),
            meta.creator.clone(),
            pubinfo.clone(),
        ));
        quads.insert(Quad::new(
            uri.clone(),
            iri(dcterms::CREATED),
            Literal::typed(meta.created_lexical(), iri(xsd::DATE_TIME)),
            pubinfo.clone(),
        ));
        quads.extend(self.extra_pubinfo.regraph(&pubinfo));

        Ok(Nanopublication {
            uri,
            head,
            assertion,
            provenance,
            pubinfo,
            quads,
        })
    }
}

/// Assembles a pre-trusty nanopublication: the 4-triple head, the assertion,
/// provenance (defaulted from `meta` when `prov` is empty) and two pubinfo
/// triples (`dcterms:creator`, `dcterms:created`).
pub fn assemble(
    assertion: &QuadSet,
    prov: &QuadSet,
    meta: &PubMeta,
    temp_base: &Iri,
) -> Result<Nanopublication, NanopubError> {
    NanopubBuilder::new(temp_base.clone())
        .assertion(assertion.clone())
        .provenance(prov.clone())
        .build(meta)
}

/// True for IRIs that embed a trusty artifact code at the end of the
/// document part (before any fragment).
pub fn is_trusty_uri(iri: &Iri) -> bool {
    TrustyCode::from_uri(iri.without_fragment().as_str()).is_some()
}

pub(crate) fn subject_is(q: &Quad, iri: &Iri) -> bool {
    matches!(&q.subject, Subject::Iri(s) if s == iri)
}

pub(crate) fn object_iri(q: &Quad) -> Option<&Iri> {
    match &q.object {
        Term::Iri(i) => Some(i),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_trig;

    pub(crate) fn meta() -> PubMeta {
        PubMeta::new(
            Iri::new("https://orcid.org/0000-0000-0000-0001").unwrap(),
            "2020-06-01T12:00:00Z".parse().unwrap(),
            Some(Iri::new("https://example.org/source").unwrap()),
        )
        .unwrap()
    }

    pub(crate) fn comment_assertion(graph: &str) -> QuadSet {
        let doc = format!(
            r#"@prefix lf: <https://purl.org/linkflows/model#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
<{graph}> {{
  <urn:temp:c1#comment> a lf:ReviewComment, lf:NegativeComment, lf:ContentComment, lf:SuggestionComment ;
    lf:hasImpact "2"^^xsd:integer ;
    lf:refersTo <https://w3id.org/np/RAxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx#paragraph> ;
    lf:hasCommentText "Please clarify." ;
    lf:isCommentOf <https://w3id.org/np/RAyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyyy#review> .
}}"#
        );
        parse_trig(&doc).unwrap()
    }

    #[test]
    fn assemble_builds_head_and_pubinfo() {
        let base = Iri::new("urn:temp:c1").unwrap();
        let a = comment_assertion("urn:x:g");
        assert_eq!(a.len(), 8);
        let n = assemble(&a, &QuadSet::new(), &meta(), &base).unwrap();
        let counts = n.triple_counts();
        assert_eq!(counts[&GraphRole::Head], 4);
        assert_eq!(counts[&GraphRole::Assertion], 8);
        assert_eq!(counts[&GraphRole::Provenance], 2);
        assert_eq!(counts[&GraphRole::Pubinfo], 2);
        assert!(validate(&n).is_valid(), "{:?}", validate(&n));
        assert_eq!(n.graph_iri(GraphRole::Head).as_str(), "urn:temp:c1#Head");
    }

    #[test]
    fn assemble_is_deterministic() {
        let base = Iri::new("urn:temp:c1").unwrap();
        let a = comment_assertion("urn:x:g");
        assert_eq!(
            assemble(&a, &QuadSet::new(), &meta(), &base).unwrap(),
            assemble(&a, &QuadSet::new(), &meta(), &base).unwrap()
        );
    }

    #[test]
    fn assemble_rejects_bad_input() {
        let base = Iri::new("urn:temp:c1").unwrap();
        assert_eq!(
            assemble(&QuadSet::new(), &QuadSet::new(), &meta(), &base),
            Err(NanopubError::EmptyAssertion)
        );

        let blank = parse_trig("<urn:x:g> { _:b1 <http://p> <http://o> }").unwrap();
        assert!(matches!(
            assemble(&blank, &QuadSet::new(), &meta(), &base),
            Err(NanopubError::BlankNode(_))
        ));

        let mut bad = meta();
        bad.creator = Iri::new("https://example.org/me").unwrap();
        let a = comment_assertion("urn:x:g");
        assert!(matches!(
            assemble(&a, &QuadSet::new(), &bad, &base),
            Err(NanopubError::InvalidCreator(_))
        ));

        let not_temp = Iri::new("https://example.org/np").unwrap();
        assert!(matches!(
            assemble(&a, &QuadSet::new(), &meta(), &not_temp),
            Err(NanopubError::NotTemporary(_))
        ));
    }

    #[test]
    fn split_and_reassemble_a_concatenated_document() {
        let a = comment_assertion("urn:x:g");
        let n1 = assemble(
            &a,
            &QuadSet::new(),
            &meta(),
            &Iri::new("urn:temp:one").unwrap(),
        )
        .unwrap();
        let n2 = assemble(
            &a,
            &QuadSet::new(),
            &meta(),
            &Iri::new("urn:temp:two").unwrap(),
        )
        .unwrap();
        let doc = format!("{}\n{}", n1.to_trig(), n2.to_trig());
        let parts = Nanopublication::split(parse_trig(&doc).unwrap()).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&n1) && parts.contains(&n2));
        assert!(matches!(
            Nanopublication::from_quads(parse_trig(&doc).unwrap()),
            Err(NanopubError::MultipleHeads(2))
        ));
    }

    #[test]
    fn trig_round_trip() {
        let a = comment_assertion("urn:x:g");
        let n = assemble(
            &a,
            &QuadSet::new(),
            &meta(),
            &Iri::new("urn:temp:c1").unwrap(),
        )
        .unwrap();
        let trig = n.to_trig();
        assert!(trig.contains("sub:Head {"));
        assert_eq!(
            Nanopublication::from_quads(parse_trig(&trig).unwrap()).unwrap(),
            n
        );
    }
}
