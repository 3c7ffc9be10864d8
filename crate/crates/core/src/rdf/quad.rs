use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Iri, RdfError, Subject, Term};

/// A statement in a named graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
    pub graph: Iri,
}

impl Quad {
    pub fn new(
        subject: impl Into<Subject>,
        predicate: Iri,
        object: impl Into<Term>,
        graph: Iri,
    ) -> Self {
        Quad {
            subject: subject.into(),
            predicate,
            object: object.into(),
            graph,
        }
    }

    pub fn has_blank_node(&self) -> bool {
        matches!(self.subject, Subject::BlankNode(_)) || self.object.is_blank()
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} .",
            self.subject, self.predicate, self.object, self.graph
        )
    }
}

/// A set of quads plus prefix hints for serialization. Equality ignores the
/// prefix hints.
#[derive(Debug, Clone, Default)]
pub struct QuadSet {
    quads: BTreeSet<Quad>,
    prefixes: BTreeMap<String, Iri>,
}

impl PartialEq for QuadSet {
    fn eq(&self, other: &Self) -> bool {
        self.quads == other.quads
    }
}

impl Eq for QuadSet {}

impl QuadSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `false` if the quad was already present.
    pub fn insert(&mut self, quad: Quad) -> bool {
        self.quads.insert(quad)
    }

    pub fn remove(&mut self, quad: &Quad) -> bool {
        self.quads.remove(quad)
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quad> + '_ {
        self.quads.iter()
    }

    pub fn in_graph<'a>(&'a self, graph: &'a Iri) -> impl Iterator<Item = &'a Quad> + 'a {
        self.quads.iter().filter(move |q| &q.graph == graph)
    }

    pub fn graphs(&self) -> BTreeSet<&Iri> {
        self.quads.iter().map(|q| &q.graph).collect()
    }

    pub fn retain(&mut self, f: impl FnMut(&Quad) -> bool) {
        self.quads.retain(f);
    }

    pub fn prefixes(&self) -> &BTreeMap<String, Iri> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, iri: Iri) {
        self.prefixes.insert(prefix.into(), iri);
    }

    pub fn extend_prefixes(&mut self, other: &BTreeMap<String, Iri>) {
        for (k, v) in other {
            self.prefixes.insert(k.clone(), v.clone());
        }
    }

    pub fn has_blank_nodes(&self) -> bool {
        self.quads.iter().any(Quad::has_blank_node)
    }

    /// Returns a copy with every quad moved into `graph`.
    pub fn regraph(&self, graph: &Iri) -> QuadSet {
        let quads = self
            .quads
            .iter()
            .map(|q| Quad {
                graph: graph.clone(),
                ..q.clone()
            })
            .collect();
        QuadSet {
            quads,
            prefixes: self.prefixes.clone(),
        }
    }
}

impl Extend<Quad> for QuadSet {
    fn extend<T: IntoIterator<Item = Quad>>(&mut self, iter: T) {
        self.quads.extend(iter);
    }
}

impl FromIterator<Quad> for QuadSet {
    fn from_iter<T: IntoIterator<Item = Quad>>(iter: T) -> Self {
        QuadSet {
            quads: iter.into_iter().collect(),
            prefixes: BTreeMap::new(),
        }
    }
}

impl IntoIterator for QuadSet {
    type Item = Quad;
    type IntoIter = std::collections::btree_set::IntoIter<Quad>;
    fn into_iter(self) -> Self::IntoIter {
        self.quads.into_iter()
    }
}

impl<'a> IntoIterator for &'a QuadSet {
    type Item = &'a Quad;
    type IntoIter = std::collections::btree_set::Iter<'a, Quad>;
    fn into_iter(self) -> Self::IntoIter {
        self.quads.iter()
    }
}

/// Replaces IRI prefixes in every position (subject, predicate, object,
/// graph and the prefix hints). Literals are left untouched. Keys where one
/// is a prefix of another are rejected.
pub fn rewrite_terms(quads: &QuadSet, map: &BTreeMap<Iri, Iri>) -> Result<QuadSet, RdfError> {
    let keys: Vec<&str> = map.keys().map(Iri::as_str).collect();
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            if b.starts_with(a) {
                return Err(RdfError::AmbiguousRewrite(a.to_string(), b.to_string()));
            }
            if a.starts_with(b) {
                return Err(RdfError::AmbiguousRewrite(b.to_string(), a.to_string()));
            }
        }
    }
    if map.is_empty() {
        return Ok(quads.clone());
    }
    let rewrite = |iri: &Iri| -> Result<Iri, RdfError> {
        for (from, to) in map {
            if let Some(rest) = iri.as_str().strip_prefix(from.as_str()) {
                return Iri::new(format!("{}{}", to.as_str(), rest));
            }
        }
        Ok(iri.clone())
    };
    let mut out = QuadSet::new();
    for q in quads {
        let subject = match &q.subject {
            Subject::Iri(iri) => Subject::Iri(rewrite(iri)?),
            other => other.clone(),
        };
        let object = match &q.object {
            Term::Iri(iri) => Term::Iri(rewrite(iri)?),
            other => other.clone(),
        };
        out.insert(Quad {
            subject,
            predicate: rewrite(&q.predicate)?,
            object,
            graph: rewrite(&q.graph)?,
        });
    }
    for (prefix, iri) in quads.prefixes() {
        out.set_prefix(prefix.clone(), rewrite(iri)?);
    }
    Ok(out)
}
