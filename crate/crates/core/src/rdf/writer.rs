use std::collections::BTreeMap;
use std::fmt::Write;

use crate::vocab::{rdf, xsd};

use super::term::write_escaped;
use super::{Iri, Literal, QuadSet, Subject, Term};

/// Pretty TriG with the set's prefix hints. One block per graph, subjects
/// grouped with `;` and objects with `,`. Output is deterministic but is not
/// the hashing form; see [`super::canonical_nquads`].
pub fn write_trig(quads: &QuadSet) -> String {
    let prefixes = Prefixes::new(quads.prefixes());
    let mut out = String::new();
    for (name, iri) in quads.prefixes() {
        let _ = writeln!(out, "@prefix {name}: <{}> .", iri.as_str());
    }
    if !quads.prefixes().is_empty() {
        out.push('\n');
    }

    // graph -> subject -> predicate -> objects, all in term order.
    let mut grouped: BTreeMap<&Iri, BTreeMap<&Subject, BTreeMap<&Iri, Vec<&Term>>>> =
        BTreeMap::new();
    for q in quads {
        grouped
            .entry(&q.graph)
            .or_default()
            .entry(&q.subject)
            .or_default()
            .entry(&q.predicate)
            .or_default()
            .push(&q.object);
    }

    for (i, (graph, subjects)) in grouped.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{} {{", prefixes.iri(graph));
        for (subject, predicates) in subjects {
            let subject = match subject {
                Subject::Iri(iri) => prefixes.iri(iri),
                Subject::BlankNode(b) => b.to_string(),
            };
            let _ = write!(out, "  {subject}");
            // rdf:type first, as customary.
            let mut preds: Vec<_> = predicates.iter().collect();
            preds.sort_by_key(|(p, _)| p.as_str() != rdf::TYPE);
            for (j, (predicate, objects)) in preds.iter().enumerate() {
                let predicate = if predicate.as_str() == rdf::TYPE {
                    "a".to_owned()
                } else {
                    prefixes.iri(predicate)
                };
                let objects: Vec<String> = objects.iter().map(|o| prefixes.term(o)).collect();
                let sep = if j == 0 { " " } else { " ;\n    " };
                let _ = write!(out, "{sep}{predicate} {}", objects.join(", "));
            }
            out.push_str(" .\n");
        }
        out.push_str("}\n");
    }
    out
}

struct Prefixes<'a> {
    // Longest namespace first so the most specific prefix wins.
    by_length: Vec<(&'a str, &'a str)>,
}

impl<'a> Prefixes<'a> {
    fn new(map: &'a BTreeMap<String, Iri>) -> Self {
        let mut by_length: Vec<(&str, &str)> =
            map.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
        by_length.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));
        Prefixes { by_length }
    }

    fn iri(&self, iri: &Iri) -> String {
        for (name, ns) in &self.by_length {
            if let Some(local) = iri.as_str().strip_prefix(ns) {
                if is_safe_local(local) {
                    return format!("{name}:{local}");
                }
            }
        }
        iri.to_string()
    }

    fn term(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::BlankNode(b) => b.to_string(),
            Term::Literal(l) => self.literal(l),
        }
    }

    fn literal(&self, l: &Literal) -> String {
        let mut s = String::from("\"");
        let _ = write_escaped(&mut s, l.lexical());
        s.push('"');
        if let Some(tag) = l.language() {
            s.push('@');
            s.push_str(tag);
        } else if l.datatype().as_str() != xsd::STRING {
            s.push_str("^^");
            s.push_str(&self.iri(l.datatype()));
        }
        s
    }
}

/// Local names we abbreviate: empty, or `[A-Za-z0-9_][A-Za-z0-9_-]*`.
fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        Some(_) => false,
    }
}
