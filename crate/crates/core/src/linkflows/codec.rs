//! Encoding of domain objects as nanopublication assertions and back.
//!
//! Element: `a <kind class>; po:isContainedBy parent; lf:hasOrderIndex n;
//! c4o:hasContent text` (no parent for the article).
//! Comment: `a lf:ReviewComment, <positivity>, <aspect>, <actionability>;
//! lf:hasImpact n; lf:refersTo target; lf:hasCommentText text;
//! lf:isCommentOf review; lf:hasOrderIndex position`, with the reviewer as
//! `prov:wasAttributedTo` in provenance.
//! Review: `a lf:Review; lf:isReviewOf article`, reviewer in provenance.

use std::collections::BTreeSet;

use crate::nanopub::{GraphRole, NanopubBuilder, Nanopublication, PubMeta, TEMP_SCHEME};
use crate::rdf::{Iri, Literal, Quad, QuadSet, Term};
use crate::vocab::{c4o, dcterms, lf, po, prov, rdf, xsd};

use super::{
    Actionability, Aspect, DocElement, DomainObject, ElementKind, LinkflowsError, Positivity,
    ReviewComment, ReviewContainer,
};

fn iri(s: &'static str) -> Iri {
    Iri::from_static(s)
}

fn add(q: &mut QuadSet, s: &Iri, p: &'static str, o: impl Into<Term>, g: &Iri) {
    q.insert(Quad::new(s.clone(), iri(p), o, g.clone()));
}

/// The assertion triples of `obj` in graph `graph`.
pub fn encode_assertion(obj: &DomainObject, graph: &Iri) -> QuadSet {
    let mut q = QuadSet::new();
    match obj {
        DomainObject::Element(e) => {
            add(&mut q, &e.uri, rdf::TYPE, iri(e.kind.class_iri()), graph);
            if let Some(parent) = &e.parent {
                add(&mut q, &e.uri, po::IS_CONTAINED_BY, parent.clone(), graph);
            }
            add(
                &mut q,
                &e.uri,
                lf::HAS_ORDER_INDEX,
                Literal::integer(e.order_index.into()),
                graph,
            );
            add(
                &mut q,
                &e.uri,
                c4o::HAS_CONTENT,
                Literal::string(e.text.clone()),
                graph,
            );
        }
        DomainObject::Comment(c) => {
            for class in [
                lf::REVIEW_COMMENT,
                c.positivity.class_iri(),
                c.aspect.class_iri(),
                c.actionability.class_iri(),
            ] {
                add(&mut q, &c.uri, rdf::TYPE, iri(class), graph);
            }
            add(
                &mut q,
                &c.uri,
                lf::HAS_IMPACT,
                Literal::integer(c.impact.into()),
                graph,
            );
            add(&mut q, &c.uri, lf::REFERS_TO, c.target.clone(), graph);
            add(
                &mut q,
                &c.uri,
                lf::HAS_COMMENT_TEXT,
                Literal::string(c.text.clone()),
                graph,
            );
            add(&mut q, &c.uri, lf::IS_COMMENT_OF, c.review.clone(), graph);
            add(
                &mut q,
                &c.uri,
                lf::HAS_ORDER_INDEX,
                Literal::integer(c.position.into()),
                graph,
            );
        }
        DomainObject::Review(r) => {
            add(&mut q, &r.uri, rdf::TYPE, iri(lf::REVIEW), graph);
            add(&mut q, &r.uri, lf::IS_REVIEW_OF, r.article.clone(), graph);
        }
    }
    q
}

fn check(obj: &DomainObject) -> Result<(), LinkflowsError> {
    let uri = obj.uri();
    let shape = |missing: &str| LinkflowsError::Shape {
        uri: uri.as_str().to_owned(),
        missing: missing.to_owned(),
    };
    if !uri.starts_with(TEMP_SCHEME) {
        return Err(LinkflowsError::Spec(format!(
            "{uri} is not a temporary IRI (urn:temp:...)"
        )));
    }
    match obj {
        DomainObject::Element(e) => match (e.kind, &e.parent) {
            (ElementKind::Article, Some(_)) => Err(shape("an article has no parent")),
            (ElementKind::Article, None) => Ok(()),
            (_, None) => Err(shape("missing parent")),
            _ => Ok(()),
        },
        DomainObject::Comment(c) if !(1..=5).contains(&c.impact) => {
            Err(LinkflowsError::ImpactRange(c.impact.into()))
        }
        _ => Ok(()),
    }
}

/// A pre-trusty nanopublication for `obj`, rooted at the document part of
/// its `urn:temp:` IRI. Pass the result through `make_trusty` to publish.
pub fn to_nanopub(obj: &DomainObject, meta: &PubMeta) -> Result<Nanopublication, LinkflowsError> {
    to_nanopub_with_notes(obj, meta, &[])
}

/// As [`to_nanopub`], adding one `dcterms:description` per note to the
/// assertion. Notes carry no domain meaning and are ignored on decoding.
pub fn to_nanopub_with_notes(
    obj: &DomainObject,
    meta: &PubMeta,
    notes: &[String],
) -> Result<Nanopublication, LinkflowsError> {
    check(obj)?;
    let builder = NanopubBuilder::new(obj.uri().without_fragment());
    let graph = builder.assertion_graph();
    let mut assertion = encode_assertion(obj, &graph);
    for note in notes {
        add(
            &mut assertion,
            obj.uri(),
            dcterms::DESCRIPTION,
            Literal::string(note.clone()),
            &graph,
        );
    }
    let attributed = match obj {
        DomainObject::Element(_) => &meta.creator,
        DomainObject::Comment(c) => &c.reviewer,
        DomainObject::Review(r) => &r.reviewer,
    };
    let mut provenance = QuadSet::new();
    add(
        &mut provenance,
        &graph,
        prov::WAS_ATTRIBUTED_TO,
        attributed.clone(),
        &graph,
    );
    if let Some(source) = &meta.source {
        add(
            &mut provenance,
            &graph,
            prov::HAD_PRIMARY_SOURCE,
            source.clone(),
            &graph,
        );
    }
    Ok(builder
        .assertion(assertion)
        .provenance(provenance)
        .build(meta)?)
}

struct View<'a> {
    n: &'a Nanopublication,
    subject: Iri,
}

impl View<'_> {
    fn shape(&self, missing: impl Into<String>) -> LinkflowsError {
        LinkflowsError::Shape {
            uri: self.subject.as_str().to_owned(),
            missing: missing.into(),
        }
    }

    fn objects(&self, predicate: &str) -> Vec<&Term> {
        self.n
            .assertion()
            .filter(|q| {
                q.subject.as_iri() == Some(&self.subject) && q.predicate.as_str() == predicate
            })
            .map(|q| &q.object)
            .collect()
    }

    fn one(&self, predicate: &str, name: &str) -> Result<&Term, LinkflowsError> {
        match self.objects(predicate).as_slice() {
            [one] => Ok(one),
            [] => Err(self.shape(format!("missing required triple {name}"))),
            _ => Err(self.shape(format!("more than one {name}"))),
        }
    }

    fn opt_iri(&self, predicate: &str, name: &str) -> Result<Option<Iri>, LinkflowsError> {
        match self.objects(predicate).as_slice() {
            [] => Ok(None),
            [Term::Iri(i)] => Ok(Some(i.clone())),
            [_] => Err(self.shape(format!("{name} must be an IRI"))),
            _ => Err(self.shape(format!("more than one {name}"))),
        }
    }

    fn iri(&self, predicate: &str, name: &str) -> Result<Iri, LinkflowsError> {
        self.one(predicate, name)?
            .as_iri()
            .cloned()
            .ok_or_else(|| self.shape(format!("{name} must be an IRI")))
    }

    fn string(&self, predicate: &str, name: &str) -> Result<String, LinkflowsError> {
        match self.one(predicate, name)? {
            Term::Literal(l) if l.language().is_none() && l.datatype().as_str() == xsd::STRING => {
                Ok(l.lexical().to_owned())
            }
            _ => Err(self.shape(format!("{name} must be a plain string literal"))),
        }
    }

    fn integer(&self, predicate: &str, name: &str) -> Result<i64, LinkflowsError> {
        self.one(predicate, name)?
            .as_literal()
            .and_then(Literal::as_integer)
            .ok_or_else(|| self.shape(format!("{name} must be an xsd:integer")))
    }

    fn order(&self) -> Result<u32, LinkflowsError> {
        let n = self.integer(lf::HAS_ORDER_INDEX, "lf:hasOrderIndex")?;
        u32::try_from(n)
            .map_err(|_| self.shape(format!("lf:hasOrderIndex {n} is negative or too large")))
    }

    fn classes(&self) -> BTreeSet<&str> {
        self.objects(rdf::TYPE)
            .into_iter()
            .filter_map(|t| t.as_iri())
            .map(Iri::as_str)
            .collect()
    }

    fn attributed(&self) -> Result<Iri, LinkflowsError> {
        let graph = self.n.graph_iri(GraphRole::Assertion);
        let found: Vec<&Iri> = self
            .n
            .graph(GraphRole::Provenance)
            .filter(|q| {
                q.subject.as_iri() == Some(graph) && q.predicate.as_str() == prov::WAS_ATTRIBUTED_TO
            })
            .filter_map(|q| q.object.as_iri())
            .collect();
        match found.as_slice() {
            [one] => Ok((*one).clone()),
            [] => Err(self.shape("missing required provenance triple prov:wasAttributedTo")),
            _ => Err(self.shape("more than one prov:wasAttributedTo")),
        }
    }

    fn pick<T: Copy>(
        &self,
        classes: &BTreeSet<&str>,
        from_class: fn(&str) -> Option<T>,
        name: &str,
    ) -> Result<T, LinkflowsError> {
        let found: Vec<T> = classes.iter().filter_map(|c| from_class(c)).collect();
        match found.as_slice() {
            [one] => Ok(*one),
            [] => Err(self.shape(format!("missing required {name} class"))),
            _ => Err(self.shape(format!("more than one {name} class"))),
        }
    }
}

/// Decodes the typed value held by a nanopublication. Review containers come
/// back with an empty `comments` list.
pub fn from_nanopub(n: &Nanopublication) -> Result<DomainObject, LinkflowsError> {
    let mut candidates: BTreeSet<(u8, &Iri)> = BTreeSet::new();
    for q in n.assertion().filter(|q| q.predicate.as_str() == rdf::TYPE) {
        let (Some(s), Some(class)) = (q.subject.as_iri(), q.object.as_iri()) else {
            continue;
        };
        let rank = match class.as_str() {
            lf::REVIEW_COMMENT => 0,
            lf::REVIEW => 1,
            c if ElementKind::from_class(c).is_some() => 2,
            _ => continue,
        };
        candidates.insert((rank, s));
    }
    let subjects: BTreeSet<&Iri> = candidates.iter().map(|(_, s)| *s).collect();
    let subject = match subjects.len() {
        0 => {
            return Err(LinkflowsError::UnknownShape {
                uri: n.uri().as_str().to_owned(),
            })
        }
        1 => (*subjects.iter().next().expect("one subject")).clone(),
        _ => {
            return Err(LinkflowsError::Shape {
                uri: n.uri().as_str().to_owned(),
                missing: "assertion describes more than one typed subject".into(),
            })
        }
    };
    let rank = candidates.iter().next().expect("non-empty").0;
    let v = View { n, subject };
    let classes = v.classes();

    match rank {
        0 => {
            let impact = v.integer(lf::HAS_IMPACT, "lf:hasImpact")?;
            if !(1..=5).contains(&impact) {
                return Err(LinkflowsError::ImpactRange(impact));
            }
            Ok(DomainObject::Comment(ReviewComment {
                positivity: v.pick(&classes, Positivity::from_class, "positivity")?,
                aspect: v.pick(&classes, Aspect::from_class, "aspect")?,
                actionability: v.pick(&classes, Actionability::from_class, "actionability")?,
                impact: impact as u8,
                target: v.iri(lf::REFERS_TO, "lf:refersTo")?,
                text: v.string(lf::HAS_COMMENT_TEXT, "lf:hasCommentText")?,
                review: v.iri(lf::IS_COMMENT_OF, "lf:isCommentOf")?,
                position: v.order()?,
                reviewer: v.attributed()?,
                uri: v.subject.clone(),
            }))
        }
        1 => Ok(DomainObject::Review(ReviewContainer {
            article: v.iri(lf::IS_REVIEW_OF, "lf:isReviewOf")?,
            reviewer: v.attributed()?,
            comments: Vec::new(),
            uri: v.subject.clone(),
        })),
        _ => {
            let kind = v.pick(&classes, ElementKind::from_class, "element kind")?;
            let parent = v.opt_iri(po::IS_CONTAINED_BY, "po:isContainedBy")?;
            match (kind, &parent) {
                (ElementKind::Article, Some(_)) => {
                    return Err(v.shape("an article has no po:isContainedBy"))
                }
                (k, None) if k != ElementKind::Article => {
                    return Err(v.shape("missing required triple po:isContainedBy"))
                }
                _ => {}
            }
            Ok(DomainObject::Element(DocElement {
                kind,
                parent,
                order_index: v.order()?,
                text: v.string(c4o::HAS_CONTENT, "c4o:hasContent")?,
                uri: v.subject.clone(),
            }))
        }
    }
}
