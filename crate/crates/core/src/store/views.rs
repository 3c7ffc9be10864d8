//! Dashboard projections and the shared JSON / text renderings of CQ
//! results. Every number here comes straight from the domain index or the
//! CQ operations.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::linkflows::{
    Actionability, Aspect, ElementKind, Granularity, Positivity, ReviewComment,
};
use crate::rdf::Iri;

use super::cq::{Cq6Mode, ARTICLE_LEVEL};
use super::{QuadStore, StoreError};

/// Value of the `section` filter selecting article-level comments.
pub const FILTER_ARTICLE_LEVEL: &str = "article-level";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewerStack {
    pub reviewer: Iri,
    pub total: usize,
    pub positivity: BTreeMap<Positivity, usize>,
    pub aspect: BTreeMap<Aspect, usize>,
    pub actionability: BTreeMap<Actionability, usize>,
    /// Counts for impact 1 to 5.
    pub impact: [usize; 5],
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    pub section: Option<Iri>,
    pub label: String,
    pub total: usize,
    pub positivity: BTreeMap<Positivity, usize>,
    pub aspect: BTreeMap<Aspect, usize>,
    pub actionability: BTreeMap<Actionability, usize>,
    pub paragraphs: usize,
    pub covered_paragraphs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionMatrix {
    pub article: Iri,
    pub rows: Vec<MatrixRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommentDetail {
    pub uri: Iri,
    pub text: String,
    pub positivity: Positivity,
    pub aspect: Aspect,
    pub actionability: Actionability,
    pub impact: u8,
    pub target: Iri,
    pub target_kind: Option<ElementKind>,
    pub granularity: Option<Granularity>,
    /// Top-level section the comment counts towards.
    pub section: Option<Iri>,
    pub reviewer: Iri,
    pub review: Iri,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum SectionFilter {
    #[default]
    Any,
    ArticleLevel,
    Section(Iri),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommentFilter {
    pub article: Option<String>,
    pub reviewer: Option<Iri>,
    pub positivity: Option<Positivity>,
    pub aspect: Option<Aspect>,
    pub actionability: Option<Actionability>,
    pub impact_min: Option<u8>,
    pub section: SectionFilter,
}

fn invalid(field: &str, value: &str) -> StoreError {
    StoreError::InvalidFilter {
        field: field.to_owned(),
        value: value.to_owned(),
    }
}

impl CommentFilter {
    /// Parses query-string style pairs. Unknown keys and bad values are
    /// errors.
    pub fn from_pairs<'a>(
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, StoreError> {
        let mut f = CommentFilter::default();
        for (key, value) in pairs {
            match key {
                "article" => f.article = Some(value.to_owned()),
                "reviewer" => f.reviewer = Some(Iri::new(value).map_err(|_| invalid(key, value))?),
                "positivity" => {
                    f.positivity =
                        Some(Positivity::parse(value).ok_or_else(|| invalid(key, value))?)
                }
                "aspect" => {
                    f.aspect = Some(Aspect::parse(value).ok_or_else(|| invalid(key, value))?)
                }
                "actionability" => {
                    f.actionability =
                        Some(Actionability::parse(value).ok_or_else(|| invalid(key, value))?)
                }
                "impact_min" => {
                    let n: u8 = value.parse().map_err(|_| invalid(key, value))?;
                    if !(1..=5).contains(&n) {
                        return Err(invalid(key, value));
                    }
                    f.impact_min = Some(n);
                }
                "section" if value == FILTER_ARTICLE_LEVEL => {
                    f.section = SectionFilter::ArticleLevel
                }
                "section" => {
                    f.section =
                        SectionFilter::Section(Iri::new(value).map_err(|_| invalid(key, value))?)
                }
                _ => return Err(invalid(key, value)),
            }
        }
        Ok(f)
    }
}

fn tally<K: Ord + Copy>(keys: &[K]) -> BTreeMap<K, usize> {
    keys.iter().map(|k| (*k, 0)).collect()
}

impl QuadStore {
    /// Per-reviewer counts along every dimension, for the bar chart.
    pub fn reviewer_stacks(&self, article: &str) -> Result<Vec<ReviewerStack>, StoreError> {
        let info = self.domain.article(article)?;
        let mut stacks: BTreeMap<Iri, ReviewerStack> = BTreeMap::new();
        let blank = |reviewer: Iri| ReviewerStack {
            reviewer,
            positivity: tally(Positivity::ALL),
            aspect: tally(Aspect::ALL),
            actionability: tally(Actionability::ALL),
            total: 0,
            impact: [0; 5],
        };
        for r in self.domain.reviewers_of(&info.uri) {
            stacks.insert(r.clone(), blank(r));
        }
        for c in self.domain.comments_of(&info.uri) {
            let s = stacks
                .entry(c.reviewer.clone())
                .or_insert_with(|| blank(c.reviewer.clone()));
            s.total += 1;
            *s.positivity.entry(c.positivity).or_default() += 1;
            *s.aspect.entry(c.aspect).or_default() += 1;
            *s.actionability.entry(c.actionability).or_default() += 1;
            s.impact[usize::from(c.impact.clamp(1, 5)) - 1] += 1;
        }
        Ok(stacks.into_values().collect())
    }

    /// Top-level section by dimension matrix plus the article-level row;
    /// paragraph coverage is taken from CQ7.
    pub fn section_matrix(&self, article: &str) -> Result<SectionMatrix, StoreError> {
        let coverage = self.cq7(article)?;
        let mut rows: Vec<MatrixRow> = coverage
            .sections
            .iter()
            .map(|s| MatrixRow {
                section: Some(s.section.clone()),
                label: s.label.clone(),
                paragraphs: s.paragraphs,
                covered_paragraphs: s.covered_paragraphs,
                ..Default::default()
            })
            .chain([MatrixRow {
                section: None,
                label: ARTICLE_LEVEL.to_owned(),
                ..Default::default()
            }])
            .collect();
        for r in &mut rows {
            r.positivity = tally(Positivity::ALL);
            r.aspect = tally(Aspect::ALL);
            r.actionability = tally(Actionability::ALL);
        }
        let pos: BTreeMap<Option<Iri>, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.section.clone(), i))
            .collect();
        let last = rows.len() - 1;
        for c in self.domain.comments_of(&coverage.article) {
            let i = pos
                .get(&self.domain.rollup(c).cloned())
                .copied()
                .unwrap_or(last);
            let r = &mut rows[i];
            r.total += 1;
            *r.positivity.entry(c.positivity).or_default() += 1;
            *r.aspect.entry(c.aspect).or_default() += 1;
            *r.actionability.entry(c.actionability).or_default() += 1;
        }
        Ok(SectionMatrix {
            article: coverage.article,
            rows,
        })
    }

    fn detail(&self, c: &ReviewComment) -> CommentDetail {
        let info = self.domain.target_info(c).ok();
        CommentDetail {
            uri: c.uri.clone(),
            text: c.text.clone(),
            positivity: c.positivity,
            aspect: c.aspect,
            actionability: c.actionability,
            impact: c.impact,
            target: c.target.clone(),
            target_kind: self.domain.elements.get(&c.target).map(|e| e.kind),
            granularity: info.map(|i| i.granularity),
            section: self.domain.rollup(c).cloned(),
            reviewer: c.reviewer.clone(),
            review: c.review.clone(),
        }
    }

    /// Comments matching every set field, highest impact first, then URI.
    pub fn comments(&self, filter: &CommentFilter) -> Result<Vec<CommentDetail>, StoreError> {
        let pool: Vec<&ReviewComment> = match &filter.article {
            Some(a) => self.domain.comments_of(&self.domain.article(a)?.uri),
            None => self.domain.comments.values().collect(),
        };
        let mut out: Vec<CommentDetail> = pool
            .into_iter()
            .filter(|c| filter.reviewer.as_ref().is_none_or(|r| &c.reviewer == r))
            .filter(|c| filter.positivity.is_none_or(|p| c.positivity == p))
            .filter(|c| filter.aspect.is_none_or(|a| c.aspect == a))
            .filter(|c| filter.actionability.is_none_or(|a| c.actionability == a))
            .filter(|c| filter.impact_min.is_none_or(|m| c.impact >= m))
            .filter(|c| match &filter.section {
                SectionFilter::Any => true,
                SectionFilter::ArticleLevel => self.domain.rollup(c).is_none(),
                SectionFilter::Section(s) => self.domain.rollup(c) == Some(s),
            })
            .map(|c| self.detail(c))
            .collect();
        out.sort_by(|a, b| b.impact.cmp(&a.impact).then(a.uri.cmp(&b.uri)));
        Ok(out)
    }

    /// The JSON answer to question `q` (1..=7): `{question, article, alias,
    /// result}`. The CLI and the HTTP API both emit exactly this value.
    pub fn cq_payload(&self, article: &str, q: CqQuestion) -> Result<Value, StoreError> {
        let info = self.domain.article(article)?;
        let alias = info.alias.clone();
        let uri = info.uri.clone();
        let result = match q {
            CqQuestion::Q1 => to_value(&self.cq1(article)?.rows),
            CqQuestion::Q2 => to_value(&self.cq2(article)?.rows),
            CqQuestion::Q3 => to_value(&self.cq3(article)?),
            CqQuestion::Q4 => to_value(&self.cq4(article)?),
            CqQuestion::Q5 { threshold } => {
                json!({ "threshold": threshold, "points": to_value(&self.cq5(article, threshold)?) })
            }
            CqQuestion::Q6 { mode } => json!({ "mode": mode, "count": self.cq6(article, mode)? }),
            CqQuestion::Q7 => {
                let r = self.cq7(article)?;
                json!({
                    "sections": to_value(&r.sections),
                    "article_level_comments": r.article_level_comments,
                    "uncovered": to_value(&r.uncovered),
                })
            }
        };
        Ok(json!({
            "question": q.number(),
            "article": uri,
            "alias": alias,
            "result": result,
        }))
    }

    /// Aligned-column text rendering of question `q`.
    pub fn cq_text(&self, article: &str, q: CqQuestion) -> Result<String, StoreError> {
        let n = |x: usize| x.to_string();
        Ok(match q {
            CqQuestion::Q1 => {
                let rows = self.cq1(article)?.rows;
                render_table(
                    &["reviewer", "positive", "negative", "neutral", "total"],
                    rows.iter()
                        .map(|r| {
                            let c = r.counts;
                            vec![
                                r.reviewer.to_string(),
                                n(c.positive),
                                n(c.negative),
                                n(c.neutral),
                                n(c.total),
                            ]
                        })
                        .collect(),
                )
            }
            CqQuestion::Q2 => {
                let rows = self.cq2(article)?.rows;
                render_table(
                    &["section", "positive", "negative", "neutral", "total"],
                    rows.iter()
                        .map(|r| {
                            let c = r.counts;
                            vec![
                                r.label.clone(),
                                n(c.positive),
                                n(c.negative),
                                n(c.neutral),
                                n(c.total),
                            ]
                        })
                        .collect(),
                )
            }
            CqQuestion::Q3 => {
                let d = self.cq3(article)?;
                render_table(
                    &["aspect", "comments"],
                    vec![
                        vec!["content".into(), n(d.content)],
                        vec!["presentation".into(), n(d.presentation)],
                    ],
                )
            }
            CqQuestion::Q4 => {
                let d = self.cq4(article)?;
                render_table(
                    &["granularity", "comments"],
                    vec![
                        vec![Granularity::Paragraph.name().into(), n(d.paragraph_level)],
                        vec![Granularity::Section.name().into(), n(d.section_level)],
                        vec![Granularity::Article.name().into(), n(d.article_level)],
                    ],
                )
            }
            CqQuestion::Q5 { threshold } => {
                let points = self.cq5(article, threshold)?;
                render_table(
                    &["impact", "comment", "excerpt"],
                    points
                        .iter()
                        .map(|p| vec![n(p.impact.into()), p.comment.to_string(), p.excerpt.clone()])
                        .collect(),
                )
            }
            CqQuestion::Q6 { mode } => {
                let label = match mode {
                    Cq6Mode::Compulsory => "compulsory",
                    Cq6Mode::NegativeCompulsory => "negative-compulsory",
                };
                render_table(
                    &["mode", "points to address"],
                    vec![vec![label.into(), n(self.cq6(article, mode)?)]],
                )
            }
            CqQuestion::Q7 => {
                let r = self.cq7(article)?;
                let mut rows: Vec<Vec<String>> = r
                    .sections
                    .iter()
                    .map(|s| {
                        vec![
                            s.label.clone(),
                            n(s.paragraphs),
                            n(s.covered_paragraphs),
                            n(s.comments),
                        ]
                    })
                    .collect();
                rows.push(vec![
                    ARTICLE_LEVEL.into(),
                    "-".into(),
                    "-".into(),
                    n(r.article_level_comments),
                ]);
                let mut out = render_table(&["section", "paragraphs", "covered", "comments"], rows);
                let _ = writeln!(out, "uncovered paragraphs: {}", r.uncovered.len());
                out
            }
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("CQ results serialize")
}

/// A competency question with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqQuestion {
    Q1,
    Q2,
    Q3,
    Q4,
    Q5 { threshold: u8 },
    Q6 { mode: Cq6Mode },
    Q7,
}

impl CqQuestion {
    pub fn new(number: u8, threshold: u8, mode: Cq6Mode) -> Option<Self> {
        Some(match number {
            1 => CqQuestion::Q1,
            2 => CqQuestion::Q2,
            3 => CqQuestion::Q3,
            4 => CqQuestion::Q4,
            5 => CqQuestion::Q5 { threshold },
            6 => CqQuestion::Q6 { mode },
            7 => CqQuestion::Q7,
            _ => return None,
        })
    }

    pub fn number(self) -> u8 {
        match self {
            CqQuestion::Q1 => 1,
            CqQuestion::Q2 => 2,
            CqQuestion::Q3 => 3,
            CqQuestion::Q4 => 4,
            CqQuestion::Q5 { .. } => 5,
            CqQuestion::Q6 { .. } => 6,
            CqQuestion::Q7 => 7,
        }
    }
}

/// Left-aligned text columns, numbers right-aligned.
pub fn render_table(headers: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let numeric: Vec<bool> = (0..headers.len())
        .map(|i| {
            !rows.is_empty()
                && rows.iter().all(|r| {
                    r.get(i)
                        .is_some_and(|c| c == "-" || c.parse::<i64>().is_ok())
                })
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if numeric[i] {
                    format!("{c:>w$}", w = widths[i])
                } else {
                    format!("{c:<w$}", w = widths[i])
                }
            })
            .collect();
        parts.join("  ").trim_end().to_owned()
    };
    let mut out = String::new();
    out.push_str(&line(headers.to_vec()));
    out.push('\n');
    out.push_str(&line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    ));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}
