use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::rdf::{Iri, Quad};
use crate::vocab::{np, rdf};

use super::{subject_is, GraphRole, Nanopublication};

/// Stable rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    NpMissingGraph,
    EmptyAssertion,
    HeadTripleCount,
    HeadMissingTriple,
    GraphName,
    GraphNotDistinct,
    UnexpectedGraph,
    BlankNode,
    ProvenanceSubject,
    PubinfoSubject,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::NpMissingGraph => "NP_MISSING_GRAPH",
            Rule::EmptyAssertion => "EMPTY_ASSERTION",
            Rule::HeadTripleCount => "HEAD_TRIPLE_COUNT",
            Rule::HeadMissingTriple => "HEAD_MISSING_TRIPLE",
            Rule::GraphName => "GRAPH_NAME",
            Rule::GraphNotDistinct => "GRAPH_NOT_DISTINCT",
            Rule::UnexpectedGraph => "UNEXPECTED_GRAPH",
            Rule::BlankNode => "BLANK_NODE",
            Rule::ProvenanceSubject => "PROVENANCE_SUBJECT",
            Rule::PubinfoSubject => "PUBINFO_SUBJECT",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
    /// Offending graph IRI or N-Quads line.
    pub location: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    /// First violated rule, used as the error code by the server and CLI.
    pub fn first_rule(&self) -> Option<Rule> {
        self.violations.first().map(|v| v.rule)
    }

    fn push(&mut self, rule: Rule, message: impl Into<String>, location: Option<String>) {
        self.violations.push(Violation {
            rule,
            message: message.into(),
            location,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.rule, v.message)?;
        }
        Ok(())
    }
}

/// Checks every structural invariant of a nanopublication.
pub fn validate(n: &Nanopublication) -> ValidationReport {
    let mut report = ValidationReport::default();
    let uri = n.uri();

    let names: BTreeSet<&Iri> = n.graph_iris().into_iter().collect();
    if names.len() != 4 || names.contains(uri) {
        report.push(
            Rule::GraphNotDistinct,
            "the four graph IRIs must be pairwise distinct",
            None,
        );
    }
    for role in GraphRole::ALL {
        let g = n.graph_iri(role);
        if g.as_str() != format!("{}{}", uri.as_str(), role.suffix()) {
            report.push(
                Rule::GraphName,
                format!(
                    "{role} graph must be named {}{}",
                    uri.as_str(),
                    role.suffix()
                ),
                Some(g.as_str().to_owned()),
            );
        }
    }

    let counts = n.triple_counts();
    for role in [GraphRole::Head, GraphRole::Provenance, GraphRole::Pubinfo] {
        if counts[&role] == 0 {
            report.push(
                Rule::NpMissingGraph,
                format!("{role} graph is missing"),
                Some(n.graph_iri(role).as_str().to_owned()),
            );
        }
    }
    if counts[&GraphRole::Assertion] == 0 {
        report.push(
            Rule::EmptyAssertion,
            "assertion graph is empty",
            Some(n.graph_iri(GraphRole::Assertion).as_str().to_owned()),
        );
    }

    let head = n.graph_iri(GraphRole::Head);
    if counts[&GraphRole::Head] != 0 && counts[&GraphRole::Head] != 4 {
        report.push(
            Rule::HeadTripleCount,
            format!(
                "head graph has {} triples, expected 4",
                counts[&GraphRole::Head]
            ),
            Some(head.as_str().to_owned()),
        );
    }
    let expected = [
        (rdf::TYPE, Iri::from_static(np::NANOPUBLICATION)),
        (np::HAS_ASSERTION, n.graph_iri(GraphRole::Assertion).clone()),
        (
            np::HAS_PROVENANCE,
            n.graph_iri(GraphRole::Provenance).clone(),
        ),
        (
            np::HAS_PUBLICATION_INFO,
            n.graph_iri(GraphRole::Pubinfo).clone(),
        ),
    ];
    for (predicate, object) in expected {
        let q = Quad::new(
            uri.clone(),
            Iri::from_static(predicate),
            object,
            head.clone(),
        );
        if !n.quads().contains(&q) {
            report.push(
                Rule::HeadMissingTriple,
                format!("head lacks {q}"),
                Some(head.as_str().to_owned()),
            );
        }
    }

    for q in n.quads() {
        if n.role_of(&q.graph).is_none() {
            report.push(
                Rule::UnexpectedGraph,
                format!("quad in foreign graph {}", q.graph),
                Some(q.to_string()),
            );
        }
    }
    if let Some(q) = n.quads().iter().find(|q| q.has_blank_node()) {
        report.push(
            Rule::BlankNode,
            "blank nodes are not allowed",
            Some(q.to_string()),
        );
    }

    let assertion = n.graph_iri(GraphRole::Assertion);
    if counts[&GraphRole::Provenance] > 0
        && !n
            .graph(GraphRole::Provenance)
            .any(|q| subject_is(q, assertion))
    {
        report.push(
            Rule::ProvenanceSubject,
            "provenance graph has no triple about the assertion graph",
            Some(n.graph_iri(GraphRole::Provenance).as_str().to_owned()),
        );
    }
    if counts[&GraphRole::Pubinfo] > 0 && !n.graph(GraphRole::Pubinfo).any(|q| subject_is(q, uri)) {
        report.push(
            Rule::PubinfoSubject,
            "pubinfo graph has no triple about the nanopublication",
            Some(n.graph_iri(GraphRole::Pubinfo).as_str().to_owned()),
        );
    }
    report
}
