//! Trusty URIs: content hashes embedded in nanopublication URIs.
//!
//! Hash recipe: rewrite the nanopublication's base to a fixed placeholder,
//! serialize canonically, SHA-256 the UTF-8 bytes and encode the digest as
//! unpadded base64url behind the `RA` module tag.

use std::collections::BTreeMap;
use std::fmt;

use base64::engine::general_purpose::URL_SAFE_NO_PAD;
use base64::Engine;
use sha2::{Digest, Sha256};

use crate::rdf::{canonical_nquads, rewrite_terms, Iri, QuadSet};

use super::{validate, NanopubError, Nanopublication, TEMP_SCHEME};

/// Stand-in for the nanopublication base while hashing.
pub const PLACEHOLDER: &str = "urn:trusty:placeholder";

const CODE_LEN: usize = 45;

/// `RA` followed by 43 base64url characters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrustyCode(String);

impl TrustyCode {
    pub fn parse(code: &str) -> Option<Self> {
        let valid = code.len() == CODE_LEN
            && code.starts_with("RA")
            && code[2..]
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_');
        valid.then(|| TrustyCode(code.to_owned()))
    }

    /// The code at the end of `uri` (no fragment expected).
    pub fn from_uri(uri: &str) -> Option<Self> {
        let start = uri.len().checked_sub(CODE_LEN)?;
        uri.get(start..).and_then(Self::parse)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn of_quads(quads: &QuadSet) -> Self {
        let digest = Sha256::digest(canonical_nquads(quads).as_bytes());
        TrustyCode(format!("RA{}", URL_SAFE_NO_PAD.encode(digest)))
    }
}

impl fmt::Display for TrustyCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn placeholder() -> Iri {
    Iri::from_static(PLACEHOLDER)
}

fn rebase(n: &Nanopublication, from: &Iri, to: &Iri) -> Result<Nanopublication, NanopubError> {
    let map = BTreeMap::from([(from.clone(), to.clone())]);
    let quads = rewrite_terms(n.quads(), &map)?;
    let swap = |iri: &Iri| -> Result<Iri, NanopubError> {
        match iri.as_str().strip_prefix(from.as_str()) {
            Some(rest) => Ok(Iri::new(format!("{}{}", to.as_str(), rest))?),
            None => Ok(iri.clone()),
        }
    };
    use super::GraphRole::*;
    Ok(Nanopublication::from_parts(
        swap(n.uri())?,
        swap(n.graph_iri(Head))?,
        swap(n.graph_iri(Assertion))?,
        swap(n.graph_iri(Provenance))?,
        swap(n.graph_iri(Pubinfo))?,
        quads,
    ))
}

/// Turns a valid pre-trusty nanopublication into its published form at
/// `publish_base` + code. Graph fragments carry over (`…{code}#assertion`).
pub fn make_trusty(
    n: &Nanopublication,
    publish_base: &Iri,
) -> Result<Nanopublication, NanopubError> {
    if !n.uri().starts_with(TEMP_SCHEME) {
        return Err(NanopubError::NotTemporary(n.uri().as_str().to_owned()));
    }
    let report = validate(n);
    if !report.is_valid() {
        return Err(NanopubError::Invalid(report));
    }
    let hashed = rebase(n, n.uri(), &placeholder())?;
    let code = TrustyCode::of_quads(hashed.quads());
    let target = Iri::new(format!("{}{}", publish_base.as_str(), code.as_str()))?;
    rebase(&hashed, &placeholder(), &target)
}

/// Recomputes the artifact code of a published nanopublication.
/// `Ok(false)` means tampered content; a URI without a code is an error.
pub fn verify_trusty(n: &Nanopublication) -> Result<bool, NanopubError> {
    let Some(code) = n.artifact_code() else {
        return Err(NanopubError::NotTrusty(n.uri().as_str().to_owned()));
    };
    let hashed = rebase(n, n.uri(), &placeholder())?;
    Ok(TrustyCode::of_quads(hashed.quads()) == code)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{comment_assertion, meta};
    use super::super::{assemble, GraphRole};
    use super::*;
    use crate::rdf::{Literal, Quad, Term};

    fn published() -> Nanopublication {
        let base = Iri::new("urn:temp:c1").unwrap();
        let n = assemble(
            &comment_assertion("urn:x:g"),
            &QuadSet::new(),
            &meta(),
            &base,
        )
        .unwrap();
        make_trusty(&n, &Iri::new("https://w3id.org/np/").unwrap()).unwrap()
    }

    #[test]
    fn code_shape() {
        let n = published();
        let uri = n.uri().as_str();
        let code = uri.strip_prefix("https://w3id.org/np/").unwrap();
        assert!(TrustyCode::parse(code).is_some(), "{code}");
        assert_eq!(
            n.graph_iri(GraphRole::Assertion).as_str(),
            format!("{uri}#assertion")
        );
        assert!(n
            .quads()
            .iter()
            .all(|q| !q.graph.as_str().starts_with("urn:")));
        assert_eq!(verify_trusty(&n), Ok(true));
    }

    #[test]
    fn deterministic() {
        assert_eq!(published().artifact_code(), published().artifact_code());
    }

    #[test]
    fn literal_tamper_is_detected() {
        let n = published();
        let mut quads = n.quads().clone();
        let target = quads
            .iter()
            .find(|q| q.object.as_literal().is_some_and(|l| l.lexical() == "2"))
            .unwrap()
            .clone();
        quads.remove(&target);
        let lit = target.object.as_literal().unwrap();
        quads.insert(Quad {
            object: Term::Literal(Literal::typed("3", lit.datatype().clone())),
            ..target
        });
        use GraphRole::*;
        let tampered = Nanopublication::from_parts(
            n.uri().clone(),
            n.graph_iri(Head).clone(),
            n.graph_iri(Assertion).clone(),
            n.graph_iri(Provenance).clone(),
            n.graph_iri(Pubinfo).clone(),
            quads,
        );
        assert_eq!(verify_trusty(&tampered), Ok(false));
    }

    #[test]
    fn uri_without_code_is_an_error() {
        let base = Iri::new("urn:temp:c1").unwrap();
        let n = assemble(
            &comment_assertion("urn:x:g"),
            &QuadSet::new(),
            &meta(),
            &base,
        )
        .unwrap();
        assert!(matches!(verify_trusty(&n), Err(NanopubError::NotTrusty(_))));
    }

    #[test]
    fn already_trusty_input_is_rejected() {
        let n = published();
        assert!(matches!(
            make_trusty(&n, &Iri::new("https://w3id.org/np/").unwrap()),
            Err(NanopubError::NotTemporary(_))
        ));
    }

    #[test]
    fn code_parsing() {
        assert!(TrustyCode::parse("RA").is_none());
        assert!(TrustyCode::parse(&format!("RA{}", "a".repeat(43))).is_some());
        assert!(TrustyCode::parse(&format!("RB{}", "a".repeat(43))).is_none());
        assert!(TrustyCode::parse(&format!("RA{}+", "a".repeat(42))).is_none());
    }
}
