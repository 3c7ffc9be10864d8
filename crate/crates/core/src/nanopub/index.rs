//! Index nanopublications: ordered member lists, chained in chunks of at
//! most [`MAX_INDEX_SIZE`] entries.
//!
//! An index asserts `npx:includesElement` (or `npx:includesSubindex`) for
//! each entry and records its position with `rdf:_n`. A continuation chunk
//! points back to the chunk it extends with `npx:appendsIndex`, so the last
//! chunk built is the entry point of the chain.

use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::{Iri, Literal, Quad, QuadSet};
use crate::vocab::{dcterms, npx, rdf};

use super::{
    make_trusty, object_iri, subject_is, GraphRole, NanopubBuilder, NanopubError, Nanopublication,
    PubMeta, TrustyCode,
};

pub const MAX_INDEX_SIZE: usize = 1000;

const DEFAULT_PUBLISH_BASE: &str = "https://w3id.org/np/";
const INDEX_TEMP_BASE: &str = "urn:temp:index";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IndexEntries {
    pub elements: Vec<Iri>,
    pub subindexes: Vec<Iri>,
    /// The earlier chunk this one continues.
    pub appends: Option<Iri>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NanopubIndex {
    nanopub: Nanopublication,
    entries: IndexEntries,
}

impl NanopubIndex {
    /// Reads the index structure from a nanopublication's assertion.
    pub fn from_nanopub(n: Nanopublication) -> Result<Self, NanopubError> {
        let uri = n.uri().clone();
        let not_index = |reason: &str| NanopubError::NotAnIndex {
            uri: uri.as_str().to_owned(),
            reason: reason.to_owned(),
        };
        let mut elements = BTreeSet::new();
        let mut subindexes = BTreeSet::new();
        let mut order: BTreeMap<usize, Iri> = BTreeMap::new();
        let mut appends = None;
        for q in n.assertion().filter(|q| subject_is(q, &uri)) {
            let Some(object) = object_iri(q) else {
                continue;
            };
            match q.predicate.as_str() {
                npx::INCLUDES_ELEMENT => {
                    elements.insert(object.clone());
                }
                npx::INCLUDES_SUBINDEX => {
                    subindexes.insert(object.clone());
                }
                npx::APPENDS_INDEX => {
                    if appends.replace(object.clone()).is_some() {
                        return Err(not_index("more than one appendsIndex link"));
                    }
                }
                p => {
                    if let Some(i) = rdf::member_index(p) {
                        if order.insert(i, object.clone()).is_some() {
                            return Err(not_index("duplicate position"));
                        }
                    }
                }
            }
        }
        if elements.is_empty() && subindexes.is_empty() && appends.is_none() {
            return Err(not_index("no includesElement or includesSubindex triples"));
        }
        if let Some(bad) = order
            .values()
            .find(|o| !elements.contains(*o) && !subindexes.contains(*o))
        {
            return Err(not_index(&format!("position given for non-member {bad}")));
        }

        let mut seen = BTreeSet::new();
        let mut sorted: Vec<Iri> = order
            .into_values()
            .filter(|o| seen.insert(o.clone()))
            .collect();
        // Entries without a position go last, in URI order.
        sorted.extend(
            elements
                .iter()
                .chain(&subindexes)
                .filter(|o| !seen.contains(*o))
                .cloned(),
        );
        let entries = IndexEntries {
            elements: sorted
                .iter()
                .filter(|o| elements.contains(*o))
                .cloned()
                .collect(),
            subindexes: sorted
                .iter()
                .filter(|o| subindexes.contains(*o))
                .cloned()
                .collect(),
            appends,
        };
        Ok(NanopubIndex {
            nanopub: n,
            entries,
        })
    }

    pub fn uri(&self) -> &Iri {
        self.nanopub.uri()
    }

    pub fn nanopub(&self) -> &Nanopublication {
        &self.nanopub
    }

    pub fn into_nanopub(self) -> Nanopublication {
        self.nanopub
    }

    pub fn entries(&self) -> &IndexEntries {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.elements.len() + self.entries.subindexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EntryKind {
    Element,
    Subindex,
}

/// Builds a (possibly chained) index over elements and sub-indexes.
#[derive(Debug, Clone)]
pub struct IndexBuilder {
    entries: Vec<(EntryKind, Iri)>,
    publish_base: Iri,
    description: Option<String>,
    chunk_size: usize,
}

impl Default for IndexBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl IndexBuilder {
    pub fn new() -> Self {
        IndexBuilder {
            entries: Vec::new(),
            publish_base: Iri::from_static(DEFAULT_PUBLISH_BASE),
            description: None,
            chunk_size: MAX_INDEX_SIZE,
        }
    }

    pub fn publish_base(mut self, base: Iri) -> Self {
        self.publish_base = base;
        self
    }

    pub fn elements<I: IntoIterator<Item = Iri>>(mut self, members: I) -> Self {
        self.entries
            .extend(members.into_iter().map(|m| (EntryKind::Element, m)));
        self
    }

    pub fn subindexes<I: IntoIterator<Item = Iri>>(mut self, members: I) -> Self {
        self.entries
            .extend(members.into_iter().map(|m| (EntryKind::Subindex, m)));
        self
    }

    /// Adds a `dcterms:description` to the pubinfo of the chain's entry point.
    pub fn description(mut self, text: impl Into<String>) -> Self {
        self.description = Some(text.into());
        self
    }

    /// Chunks are `MAX_INDEX_SIZE` by default; smaller sizes are for tests.
    pub fn chunk_size(mut self, size: usize) -> Self {
        self.chunk_size = size.clamp(1, MAX_INDEX_SIZE);
        self
    }

    /// Returns the chain oldest first; the last element is the entry point.
    pub fn build(&self, meta: &PubMeta) -> Result<Vec<NanopubIndex>, NanopubError> {
        if self.entries.is_empty() {
            return Err(NanopubError::EmptyIndex);
        }
        if let Some((_, bad)) = self
            .entries
            .iter()
            .find(|(_, m)| TrustyCode::from_uri(m.as_str()).is_none())
        {
            return Err(NanopubError::NonTrustyMember(bad.as_str().to_owned()));
        }
        let base = Iri::from_static(INDEX_TEMP_BASE);
        let assertion_graph = base.join_suffix(super::ASSERTION_SUFFIX)?;
        let chunks: Vec<_> = self.entries.chunks(self.chunk_size).collect();
        let mut chain: Vec<NanopubIndex> = Vec::with_capacity(chunks.len());
        for (c, chunk) in chunks.iter().enumerate() {
            let mut assertion = QuadSet::new();
            for (i, (kind, member)) in chunk.iter().enumerate() {
                let predicate = match kind {
                    EntryKind::Element => npx::INCLUDES_ELEMENT,
                    EntryKind::Subindex => npx::INCLUDES_SUBINDEX,
                };
                let position = Iri::new(rdf::member(i + 1))?;
                assertion.insert(Quad::new(
                    base.clone(),
                    Iri::from_static(predicate),
                    member.clone(),
                    assertion_graph.clone(),
                ));
                assertion.insert(Quad::new(
                    base.clone(),
                    position,
                    member.clone(),
                    assertion_graph.clone(),
                ));
            }
            if let Some(prev) = chain.last() {
                assertion.insert(Quad::new(
                    base.clone(),
                    Iri::from_static(npx::APPENDS_INDEX),
                    prev.uri().clone(),
                    assertion_graph.clone(),
                ));
            }
            let mut builder = NanopubBuilder::new(base.clone()).assertion(assertion);
            if let (Some(text), true) = (&self.description, c + 1 == chunks.len()) {
                let pubinfo = base.join_suffix(super::PUBINFO_SUFFIX)?;
                let extra = QuadSet::from_iter([Quad::new(
                    base.clone(),
                    Iri::from_static(dcterms::DESCRIPTION),
                    Literal::string(text.clone()),
                    pubinfo,
                )]);
                builder = builder.extra_pubinfo(extra);
            }
            let published = make_trusty(&builder.build(meta)?, &self.publish_base)?;
            chain.push(NanopubIndex::from_nanopub(published)?);
        }
        Ok(chain)
    }
}

/// One index for up to `MAX_INDEX_SIZE` members, else a chain (oldest first).
pub fn build_index(members: &[Iri], meta: &PubMeta) -> Result<Vec<NanopubIndex>, NanopubError> {
    IndexBuilder::new()
        .elements(members.iter().cloned())
        .build(meta)
}

/// All element members reachable from `idx`, in order: earlier chunks of
/// the chain first, sub-indexes expanded where they are listed.
pub fn index_members<F>(idx: &NanopubIndex, mut resolve: F) -> Result<Vec<Iri>, NanopubError>
where
    F: FnMut(&Iri) -> Option<Nanopublication>,
{
    let mut visiting = BTreeSet::new();
    let mut out = Vec::new();
    collect(idx, &mut resolve, &mut visiting, &mut out)?;
    Ok(out)
}

fn resolve_index<F>(uri: &Iri, resolve: &mut F) -> Result<NanopubIndex, NanopubError>
where
    F: FnMut(&Iri) -> Option<Nanopublication>,
{
    let n = resolve(uri).ok_or_else(|| NanopubError::UnresolvedIndex(uri.as_str().to_owned()))?;
    NanopubIndex::from_nanopub(n)
}

fn collect<F>(
    idx: &NanopubIndex,
    resolve: &mut F,
    visiting: &mut BTreeSet<Iri>,
    out: &mut Vec<Iri>,
) -> Result<(), NanopubError>
where
    F: FnMut(&Iri) -> Option<Nanopublication>,
{
    // Walk back to the oldest chunk, then emit forwards.
    let mut chain = vec![idx.clone()];
    while let Some(prev) = chain.last().and_then(|c| c.entries.appends.clone()) {
        if chain.iter().any(|c| c.uri() == &prev) {
            return Err(NanopubError::NotAnIndex {
                uri: prev.as_str().to_owned(),
                reason: "appendsIndex cycle".into(),
            });
        }
        chain.push(resolve_index(&prev, resolve)?);
    }
    for chunk in chain.iter().rev() {
        if !visiting.insert(chunk.uri().clone()) {
            return Err(NanopubError::NotAnIndex {
                uri: chunk.uri().as_str().to_owned(),
                reason: "sub-index cycle".into(),
            });
        }
        // Keep the authored interleaving of elements and sub-indexes.
        let positions = positions(chunk);
        for (kind, member) in positions {
            match kind {
                EntryKind::Element => out.push(member),
                EntryKind::Subindex => {
                    let sub = resolve_index(&member, resolve)?;
                    collect(&sub, resolve, visiting, out)?;
                }
            }
        }
    }
    Ok(())
}

fn positions(idx: &NanopubIndex) -> Vec<(EntryKind, Iri)> {
    let subs: BTreeSet<&Iri> = idx.entries.subindexes.iter().collect();
    let mut order: Vec<(usize, Iri)> = idx
        .nanopub
        .graph(GraphRole::Assertion)
        .filter(|q| subject_is(q, idx.uri()))
        .filter_map(|q| {
            Some((
                rdf::member_index(q.predicate.as_str())?,
                object_iri(q)?.clone(),
            ))
        })
        .collect();
    order.sort();
    let mut seen: BTreeSet<Iri> = BTreeSet::new();
    let mut out: Vec<(EntryKind, Iri)> = Vec::new();
    for (_, m) in order {
        if seen.insert(m.clone()) {
            out.push((
                if subs.contains(&m) {
                    EntryKind::Subindex
                } else {
                    EntryKind::Element
                },
                m,
            ));
        }
    }
    for m in idx.entries.elements.iter().filter(|m| !seen.contains(*m)) {
        out.push((EntryKind::Element, m.clone()));
    }
    for m in idx.entries.subindexes.iter().filter(|m| !seen.contains(*m)) {
        out.push((EntryKind::Subindex, m.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::super::tests::meta;
    use super::super::{validate, verify_trusty};
    use super::*;

    fn members(n: usize) -> Vec<Iri> {
        (0..n)
            .map(|i| Iri::new(format!("https://w3id.org/np/RA{:0>43}", i)).unwrap())
            .collect()
    }

    fn lookup(chain: &[NanopubIndex]) -> HashMap<Iri, Nanopublication> {
        chain
            .iter()
            .map(|c| (c.uri().clone(), c.nanopub().clone()))
            .collect()
    }

    #[test]
    fn single_index_of_627() {
        let m = members(627);
        let chain = build_index(&m, &meta()).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].entries().elements, m);
        assert!(validate(chain[0].nanopub()).is_valid());
        assert_eq!(verify_trusty(chain[0].nanopub()), Ok(true));
        assert_eq!(index_members(&chain[0], |_| None).unwrap(), m);
    }

    #[test]
    fn chain_of_1001() {
        let m = members(1001);
        let chain = build_index(&m, &meta()).unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!(chain[0].len(), 1000);
        assert_eq!(chain[1].len(), 1);
        assert_eq!(chain[1].entries().appends.as_ref(), Some(chain[0].uri()));
        let map = lookup(&chain);
        assert_eq!(
            index_members(&chain[1], |u| map.get(u).cloned()).unwrap(),
            m
        );
    }

    #[test]
    fn broken_chain_names_the_missing_uri() {
        let chain = build_index(&members(1001), &meta()).unwrap();
        let err = index_members(&chain[1], |_| None).unwrap_err();
        assert_eq!(
            err,
            NanopubError::UnresolvedIndex(chain[0].uri().as_str().to_owned())
        );
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(build_index(&[], &meta()), Err(NanopubError::EmptyIndex));
        let bad = vec![Iri::new("https://example.org/x").unwrap()];
        assert!(matches!(
            build_index(&bad, &meta()),
            Err(NanopubError::NonTrustyMember(_))
        ));
    }

    #[test]
    fn subindexes_expand_in_place() {
        let m = members(6);
        let a = build_index(&m[..2], &meta()).unwrap();
        let b = build_index(&m[3..], &meta()).unwrap();
        let top = IndexBuilder::new()
            .subindexes([a[0].uri().clone()])
            .elements([m[2].clone()])
            .subindexes([b[0].uri().clone()])
            .description("top")
            .build(&meta())
            .unwrap();
        let mut map = lookup(&a);
        map.extend(lookup(&b));
        assert_eq!(index_members(&top[0], |u| map.get(u).cloned()).unwrap(), m);
        let counts = top[0].nanopub().triple_counts();
        assert_eq!(counts[&GraphRole::Pubinfo], 3);
        assert_eq!(counts[&GraphRole::Assertion], 6);
    }

    #[test]
    fn small_chunks_preserve_order() {
        let m = members(25);
        let chain = IndexBuilder::new()
            .elements(m.clone())
            .chunk_size(4)
            .build(&meta())
            .unwrap();
        assert_eq!(chain.len(), 7);
        let map = lookup(&chain);
        assert_eq!(
            index_members(chain.last().unwrap(), |u| map.get(u).cloned()).unwrap(),
            m
        );
    }
}
