//! The seven editor competency questions over one article's reviews.
//!
//! Each query reads the typed domain index; the doc comment gives the
//! equivalent SPARQL for comparison with a triple-store deployment.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linkflows::{Actionability, Aspect, Granularity, Positivity, ReviewComment};
use crate::rdf::Iri;

use super::{QuadStore, StoreError};

/// Label of the bucket for comments on the article as a whole.
pub const ARTICLE_LEVEL: &str = "(article-level)";

pub const DEFAULT_CQ5_THRESHOLD: u8 = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PositivityCounts {
    pub positive: usize,
    pub negative: usize,
    pub neutral: usize,
    pub total: usize,
}

impl PositivityCounts {
    fn add(&mut self, p: Positivity) {
        match p {
            Positivity::Positive => self.positive += 1,
            Positivity::Negative => self.negative += 1,
            Positivity::Neutral => self.neutral += 1,
        }
        self.total += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewerRow {
    pub reviewer: Iri,
    #[serde(flatten)]
    pub counts: PositivityCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewerBreakdown {
    pub article: Iri,
    pub rows: Vec<ReviewerRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionRow {
    /// `None` for the article-level bucket.
    pub section: Option<Iri>,
    pub label: String,
    #[serde(flatten)]
    pub counts: PositivityCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionBreakdown {
    pub article: Iri,
    pub rows: Vec<SectionRow>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AspectDistribution {
    pub content: usize,
    pub presentation: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GranularityDistribution {
    #[serde(rename = "paragraph-level")]
    pub paragraph_level: usize,
    #[serde(rename = "section-level")]
    pub section_level: usize,
    #[serde(rename = "article-level")]
    pub article_level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPoint {
    pub comment: Iri,
    pub impact: u8,
    /// Innermost section of the target, if any.
    pub section: Option<Iri>,
    pub excerpt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionCoverage {
    pub section: Iri,
    pub label: String,
    pub paragraphs: usize,
    pub comments: usize,
    pub covered_paragraphs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub article: Iri,
    pub sections: Vec<SectionCoverage>,
    pub article_level_comments: usize,
    /// Paragraphs no comment refers to, in IRI order.
    pub uncovered: Vec<Iri>,
}

/// What CQ6 counts as a point that must be addressed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cq6Mode {
    #[default]
    Compulsory,
    NegativeCompulsory,
}

impl Cq6Mode {
    pub fn matches(self, c: &ReviewComment) -> bool {
        c.actionability == Actionability::Compulsory
            && (self == Cq6Mode::Compulsory || c.positivity == Positivity::Negative)
    }
}

const EXCERPT_CHARS: usize = 80;

fn excerpt(text: &str) -> String {
    let mut out: String = text.chars().take(EXCERPT_CHARS).collect();
    if text.chars().count() > EXCERPT_CHARS {
        out.push_str("...");
    }
    out
}

impl QuadStore {
    fn article_comments(&self, article: &str) -> Result<(Iri, Vec<&ReviewComment>), StoreError> {
        let info = self.domain.article(article)?;
        Ok((info.uri.clone(), self.domain.comments_of(&info.uri)))
    }

    /// CQ1: positive and negative comments per reviewer.
    ///
    /// ```sparql
    /// SELECT ?reviewer ?class (COUNT(?c) AS ?n) WHERE {
    ///   ?c a lf:ReviewComment, ?class ; lf:isCommentOf ?review .
    ///   ?review lf:isReviewOf ?article .
    ///   GRAPH ?prov { ?a prov:wasAttributedTo ?reviewer }
    ///   VALUES ?class { lf:PositiveComment lf:NegativeComment lf:NeutralComment }
    /// } GROUP BY ?reviewer ?class
    /// ```
    pub fn cq1(&self, article: &str) -> Result<ReviewerBreakdown, StoreError> {
        let (uri, comments) = self.article_comments(article)?;
        let mut rows: BTreeMap<Iri, PositivityCounts> = self
            .domain
            .reviewers_of(&uri)
            .into_iter()
            .map(|r| (r, PositivityCounts::default()))
            .collect();
        for c in comments {
            rows.entry(c.reviewer.clone())
                .or_default()
                .add(c.positivity);
        }
        Ok(ReviewerBreakdown {
            article: uri,
            rows: rows
                .into_iter()
                .map(|(reviewer, counts)| ReviewerRow { reviewer, counts })
                .collect(),
        })
    }

    /// CQ2: positivity per top-level section, plus the article-level bucket.
    ///
    /// ```sparql
    /// SELECT ?top ?class (COUNT(?c) AS ?n) WHERE {
    ///   ?c a ?class ; lf:refersTo ?target .
    ///   ?target po:isContainedBy* ?top . ?top po:isContainedBy ?article ; a doco:Section .
    /// } GROUP BY ?top ?class
    /// ```
    pub fn cq2(&self, article: &str) -> Result<SectionBreakdown, StoreError> {
        let (uri, comments) = self.article_comments(article)?;
        let mut rows: Vec<SectionRow> = self
            .domain
            .top_sections(&uri)
            .into_iter()
            .map(|s| SectionRow {
                section: Some(s.uri.clone()),
                label: s.text.clone(),
                counts: PositivityCounts::default(),
            })
            .collect();
        rows.push(SectionRow {
            section: None,
            label: ARTICLE_LEVEL.to_owned(),
            counts: PositivityCounts::default(),
        });
        let pos: BTreeMap<Option<Iri>, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.section.clone(), i))
            .collect();
        for c in comments {
            let key = self.domain.rollup(c).cloned();
            let i = pos.get(&key).copied().unwrap_or(rows.len() - 1);
            rows[i].counts.add(c.positivity);
        }
        Ok(SectionBreakdown { article: uri, rows })
    }

    /// CQ3: content versus presentation (syntax and style).
    ///
    /// ```sparql
    /// SELECT ?class (COUNT(?c) AS ?n) WHERE {
    ///   ?c a ?class . VALUES ?class { lf:ContentComment lf:SyntaxComment }
    /// } GROUP BY ?class
    /// ```
    pub fn cq3(&self, article: &str) -> Result<AspectDistribution, StoreError> {
        let (_, comments) = self.article_comments(article)?;
        let mut d = AspectDistribution::default();
        for c in comments {
            match c.aspect {
                Aspect::Content => d.content += 1,
                Aspect::Presentation => d.presentation += 1,
            }
        }
        Ok(d)
    }

    /// CQ4: paragraph-level, section-level and article-level comments.
    ///
    /// ```sparql
    /// SELECT ?kind (COUNT(?c) AS ?n) WHERE { ?c lf:refersTo ?t . ?t a ?kind } GROUP BY ?kind
    /// ```
    pub fn cq4(&self, article: &str) -> Result<GranularityDistribution, StoreError> {
        let (_, comments) = self.article_comments(article)?;
        let mut d = GranularityDistribution::default();
        for c in comments {
            let g = self
                .domain
                .target_info(c)
                .map_err(|error| StoreError::Shape {
                    uri: c.uri.as_str().to_owned(),
                    error,
                })?
                .granularity;
            match g {
                Granularity::Paragraph => d.paragraph_level += 1,
                Granularity::Section => d.section_level += 1,
                Granularity::Article => d.article_level += 1,
            }
        }
        Ok(d)
    }

    /// CQ5: negative comments with impact at least `threshold`, highest
    /// impact first, then by URI.
    ///
    /// ```sparql
    /// SELECT ?c ?impact WHERE {
    ///   ?c a lf:NegativeComment ; lf:hasImpact ?impact . FILTER(?impact >= 4)
    /// } ORDER BY DESC(?impact) ?c
    /// ```
    pub fn cq5(&self, article: &str, threshold: u8) -> Result<Vec<CriticalPoint>, StoreError> {
        let (_, comments) = self.article_comments(article)?;
        let mut out: Vec<CriticalPoint> = comments
            .into_iter()
            .filter(|c| c.positivity == Positivity::Negative && c.impact >= threshold)
            .map(|c| CriticalPoint {
                comment: c.uri.clone(),
                impact: c.impact,
                section: self
                    .domain
                    .target_info(c)
                    .ok()
                    .and_then(|t| t.innermost_section),
                excerpt: excerpt(&c.text),
            })
            .collect();
        out.sort_by(|a, b| b.impact.cmp(&a.impact).then(a.comment.cmp(&b.comment)));
        Ok(out)
    }

    /// CQ6: points the authors must address.
    ///
    /// ```sparql
    /// SELECT (COUNT(?c) AS ?n) WHERE { ?c a lf:CompulsoryComment }
    /// ```
    pub fn cq6(&self, article: &str, mode: Cq6Mode) -> Result<usize, StoreError> {
        let (_, comments) = self.article_comments(article)?;
        Ok(comments.into_iter().filter(|c| mode.matches(c)).count())
    }

    /// CQ7: how comments cover the top-level sections and paragraphs.
    ///
    /// ```sparql
    /// SELECT ?p (COUNT(?c) AS ?n) WHERE {
    ///   ?p a doco:Paragraph ; po:isContainedBy+ ?article .
    ///   OPTIONAL { ?c lf:refersTo ?p }
    /// } GROUP BY ?p
    /// ```
    pub fn cq7(&self, article: &str) -> Result<CoverageReport, StoreError> {
        let (uri, comments) = self.article_comments(article)?;
        let mut sections: Vec<SectionCoverage> = self
            .domain
            .top_sections(&uri)
            .into_iter()
            .map(|s| SectionCoverage {
                section: s.uri.clone(),
                label: s.text.clone(),
                paragraphs: 0,
                comments: 0,
                covered_paragraphs: 0,
            })
            .collect();
        let pos: BTreeMap<Iri, usize> = sections
            .iter()
            .enumerate()
            .map(|(i, s)| (s.section.clone(), i))
            .collect();
        let mut refs: BTreeMap<&Iri, usize> = BTreeMap::new();
        let mut article_level_comments = 0;
        for c in &comments {
            *refs.entry(&c.target).or_default() += 1;
            match self.domain.rollup(c).and_then(|s| pos.get(s)) {
                Some(&i) => sections[i].comments += 1,
                None => article_level_comments += 1,
            }
        }
        let mut uncovered = Vec::new();
        for p in self.domain.paragraphs(&uri) {
            let covered = refs.contains_key(&p.uri);
            if let Some(&i) = self.domain.top_section_of(&p.uri).and_then(|s| pos.get(s)) {
                sections[i].paragraphs += 1;
                sections[i].covered_paragraphs += usize::from(covered);
            }
            if !covered {
                uncovered.push(p.uri.clone());
            }
        }
        Ok(CoverageReport {
            article: uri,
            sections,
            article_level_comments,
            uncovered,
        })
    }
}
