use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::linkflows::{
    from_nanopub, resolve_target, DocElement, DomainObject, ElementKind, LinkEdge, LinkKind,
    LinkflowsError, ReviewComment, ReviewContainer, TargetInfo,
};
use crate::nanopub::{IndexEntries, NanopubIndex, Nanopublication};
use crate::rdf::Iri;

use super::StoreError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArticleInfo {
    /// Short identifier `a1`, `a2`, ... in corpus order.
    pub alias: String,
    pub uri: Iri,
    pub title: String,
    pub top_sections: usize,
    pub paragraphs: usize,
    pub reviews: usize,
    pub comments: usize,
}

/// Typed views decoded from every registered nanopublication.
#[derive(Debug, Clone, Default)]
pub struct DomainIndex {
    pub elements: BTreeMap<Iri, DocElement>,
    pub comments: BTreeMap<Iri, ReviewComment>,
    pub reviews: BTreeMap<Iri, ReviewContainer>,
    pub edges: BTreeSet<LinkEdge>,
    pub indexes: BTreeMap<Iri, IndexEntries>,
    /// Nanopublications whose assertion is none of the known shapes.
    pub others: Vec<Iri>,
    articles: Vec<ArticleInfo>,
    article_of: BTreeMap<Iri, Iri>,
    top_section_of: BTreeMap<Iri, Iri>,
    comments_by_article: BTreeMap<Iri, Vec<Iri>>,
}

impl DomainIndex {
    pub fn build<'a>(
        nanopubs: impl IntoIterator<Item = &'a Nanopublication>,
    ) -> Result<Self, StoreError> {
        let mut d = DomainIndex::default();
        for n in nanopubs {
            if let Ok(idx) = NanopubIndex::from_nanopub(n.clone()) {
                d.indexes.insert(n.uri().clone(), idx.entries().clone());
                continue;
            }
            match from_nanopub(n) {
                Ok(DomainObject::Element(e)) => {
                    d.elements.insert(e.uri.clone(), e);
                }
                Ok(DomainObject::Comment(c)) => {
                    d.comments.insert(c.uri.clone(), c);
                }
                Ok(DomainObject::Review(r)) => {
                    d.reviews.insert(r.uri.clone(), r);
                }
                Err(LinkflowsError::UnknownShape { .. }) => d.others.push(n.uri().clone()),
                Err(error) => {
                    return Err(StoreError::Shape {
                        uri: n.uri().as_str().to_owned(),
                        error,
                    })
                }
            }
            for q in n.assertion() {
                let Some(kind) = LinkKind::from_predicate(q.predicate.as_str()) else {
                    continue;
                };
                if let (Some(from), Some(to)) = (q.subject.as_iri(), q.object.as_iri()) {
                    d.edges
                        .insert(LinkEdge::new(kind, from.clone(), to.clone()));
                }
            }
        }

        let mut members: Vec<(u32, Iri, Iri)> = d
            .comments
            .values()
            .map(|c| (c.position, c.uri.clone(), c.review.clone()))
            .collect();
        members.sort();
        for (_, comment, review) in members {
            if let Some(r) = d.reviews.get_mut(&review) {
                r.comments.push(comment);
            }
        }

        for e in d.elements.values() {
            let mut cur = e;
            let mut top = None;
            let mut hops = 0;
            while let Some(parent) = cur.parent.as_ref().and_then(|p| d.elements.get(p)) {
                if parent.kind == ElementKind::Article {
                    top = (cur.kind == ElementKind::Section).then(|| cur.uri.clone());
                }
                cur = parent;
                hops += 1;
                if hops > d.elements.len() {
                    break;
                }
            }
            if cur.kind == ElementKind::Article {
                d.article_of.insert(e.uri.clone(), cur.uri.clone());
            }
            if let Some(top) = top {
                d.top_section_of.insert(e.uri.clone(), top);
            }
        }

        for c in d.comments.values() {
            let article = d
                .reviews
                .get(&c.review)
                .map(|r| r.article.clone())
                .or_else(|| d.article_of.get(&c.target).cloned());
            if let Some(a) = article {
                d.comments_by_article
                    .entry(a)
                    .or_default()
                    .push(c.uri.clone());
            }
        }

        let mut articles: Vec<&DocElement> = d
            .elements
            .values()
            .filter(|e| e.kind == ElementKind::Article)
            .collect();
        articles.sort_by(|a, b| a.order_index.cmp(&b.order_index).then(a.uri.cmp(&b.uri)));
        let infos: Vec<ArticleInfo> = articles
            .iter()
            .enumerate()
            .map(|(i, a)| ArticleInfo {
                alias: format!("a{}", i + 1),
                uri: a.uri.clone(),
                title: a.text.clone(),
                top_sections: d.top_sections(&a.uri).len(),
                paragraphs: d.paragraphs(&a.uri).len(),
                reviews: d.reviews.values().filter(|r| r.article == a.uri).count(),
                comments: d.comments_by_article.get(&a.uri).map_or(0, Vec::len),
            })
            .collect();
        d.articles = infos;
        Ok(d)
    }

    pub fn articles(&self) -> &[ArticleInfo] {
        &self.articles
    }

    /// Looks an article up by alias or full IRI.
    pub fn article(&self, id: &str) -> Result<&ArticleInfo, StoreError> {
        self.articles
            .iter()
            .find(|a| a.alias == id || a.uri.as_str() == id)
            .ok_or_else(|| StoreError::UnknownArticle(id.to_owned()))
    }

    /// Comments on `article`, in URI order.
    pub fn comments_of(&self, article: &Iri) -> Vec<&ReviewComment> {
        self.comments_by_article
            .get(article)
            .into_iter()
            .flatten()
            .filter_map(|c| self.comments.get(c))
            .collect()
    }

    /// Reviewers with a review or a comment on `article`, in IRI order.
    pub fn reviewers_of(&self, article: &Iri) -> Vec<Iri> {
        let mut out: BTreeSet<Iri> = self
            .reviews
            .values()
            .filter(|r| &r.article == article)
            .map(|r| r.reviewer.clone())
            .collect();
        out.extend(self.comments_of(article).iter().map(|c| c.reviewer.clone()));
        out.into_iter().collect()
    }

    fn children_sorted(&self, parent: &Iri, kind: Option<ElementKind>) -> Vec<&DocElement> {
        let mut out: Vec<&DocElement> = self
            .elements
            .values()
            .filter(|e| e.parent.as_ref() == Some(parent) && kind.is_none_or(|k| e.kind == k))
            .collect();
        out.sort_by(|a, b| a.order_index.cmp(&b.order_index).then(a.uri.cmp(&b.uri)));
        out
    }

    /// Top-level sections of `article` in document order.
    pub fn top_sections(&self, article: &Iri) -> Vec<&DocElement> {
        self.children_sorted(article, Some(ElementKind::Section))
    }

    /// Paragraphs of `article` in IRI order.
    pub fn paragraphs(&self, article: &Iri) -> Vec<&DocElement> {
        self.elements
            .values()
            .filter(|e| {
                e.kind == ElementKind::Paragraph && self.article_of.get(&e.uri) == Some(article)
            })
            .collect()
    }

    pub fn article_of(&self, element: &Iri) -> Option<&Iri> {
        self.article_of.get(element)
    }

    /// The top-level section containing (or equal to) `element`.
    pub fn top_section_of(&self, element: &Iri) -> Option<&Iri> {
        self.top_section_of.get(element)
    }

    pub fn target_info(&self, c: &ReviewComment) -> Result<TargetInfo, LinkflowsError> {
        resolve_target(c, &self.elements)
    }

    /// The top-level section a comment counts towards; `None` for comments
    /// on the article as a whole or on unknown targets.
    pub fn rollup(&self, c: &ReviewComment) -> Option<&Iri> {
        let info = self.target_info(c).ok()?;
        self.top_section_of(info.innermost_section.as_ref()?)
    }
}
