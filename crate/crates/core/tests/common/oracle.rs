// Brute-force recomputation of the competency questions straight from the
// generator's typed lists. Linear scans only, no store indexes.

#![allow(dead_code)]

use linkflows_core::linkflows::{
    Actionability, Aspect, Corpus, DocElement, ElementKind, Positivity, ReviewComment,
};
use linkflows_core::Iri;
use serde_json::{json, Value};

fn find<'a>(c: &'a Corpus, uri: &Iri) -> Option<&'a DocElement> {
    c.elements.iter().find(|e| &e.uri == uri)
}

fn comments_on<'a>(c: &'a Corpus, article: &Iri) -> Vec<&'a ReviewComment> {
    let mut out: Vec<&ReviewComment> = c
        .comments
        .iter()
        .filter(|x| {
            c.reviews
                .iter()
                .any(|r| r.uri == x.review && &r.article == article)
        })
        .collect();
    out.sort_by(|a, b| a.uri.cmp(&b.uri));
    out
}

/// Walks up to the child of the article; it is the top section if it is a
/// section.
fn top_section(c: &Corpus, uri: &Iri) -> Option<Iri> {
    let mut cur = find(c, uri)?;
    loop {
        let parent = find(c, cur.parent.as_ref()?)?;
        if parent.kind == ElementKind::Article {
            return (cur.kind == ElementKind::Section).then(|| cur.uri.clone());
        }
        cur = parent;
    }
}

fn innermost_section(c: &Corpus, x: &ReviewComment) -> Option<Iri> {
    let t = find(c, &x.target)?;
    match t.kind {
        ElementKind::Article => None,
        ElementKind::Section => Some(t.uri.clone()),
        _ => t.parent.clone(),
    }
}

fn rollup(c: &Corpus, x: &ReviewComment) -> Option<Iri> {
    top_section(c, &innermost_section(c, x)?)
}

fn tops<'a>(c: &'a Corpus, article: &Iri) -> Vec<&'a DocElement> {
    let mut v: Vec<&DocElement> = c
        .elements
        .iter()
        .filter(|e| e.kind == ElementKind::Section && e.parent.as_ref() == Some(article))
        .collect();
    v.sort_by(|a, b| (a.order_index, &a.uri).cmp(&(b.order_index, &b.uri)));
    v
}

fn counts(cs: &[&ReviewComment]) -> (usize, usize, usize) {
    let n = |p: Positivity| cs.iter().filter(|x| x.positivity == p).count();
    (
        n(Positivity::Positive),
        n(Positivity::Negative),
        n(Positivity::Neutral),
    )
}

fn row(mut base: serde_json::Map<String, Value>, cs: &[&ReviewComment]) -> Value {
    let (p, n, u) = counts(cs);
    base.insert("positive".into(), json!(p));
    base.insert("negative".into(), json!(n));
    base.insert("neutral".into(), json!(u));
    base.insert("total".into(), json!(cs.len()));
    Value::Object(base)
}

fn excerpt(text: &str) -> String {
    if text.chars().count() > 80 {
        format!("{}...", text.chars().take(80).collect::<String>())
    } else {
        text.to_owned()
    }
}

/// Result value of question `q` for the `index`-th article.
pub fn cq_result(c: &Corpus, index: usize, q: u8, threshold: u8, negative_only: bool) -> Value {
    let article = &c.articles[index];
    let cs = comments_on(c, article);
    match q {
        1 => {
            let mut reviewers: Vec<Iri> = c
                .reviews
                .iter()
                .filter(|r| &r.article == article)
                .map(|r| r.reviewer.clone())
                .collect();
            reviewers.extend(cs.iter().map(|x| x.reviewer.clone()));
            reviewers.sort();
            reviewers.dedup();
            Value::Array(
                reviewers
                    .iter()
                    .map(|r| {
                        let mine: Vec<&ReviewComment> =
                            cs.iter().copied().filter(|x| &x.reviewer == r).collect();
                        let mut m = serde_json::Map::new();
                        m.insert("reviewer".into(), json!(r.as_str()));
                        row(m, &mine)
                    })
                    .collect(),
            )
        }
        2 => {
            let mut rows: Vec<Value> = tops(c, article)
                .iter()
                .map(|s| {
                    let mine: Vec<&ReviewComment> = cs
                        .iter()
                        .copied()
                        .filter(|x| rollup(c, x).as_ref() == Some(&s.uri))
                        .collect();
                    let mut m = serde_json::Map::new();
                    m.insert("section".into(), json!(s.uri.as_str()));
                    m.insert("label".into(), json!(s.text));
                    row(m, &mine)
                })
                .collect();
            let rest: Vec<&ReviewComment> = cs
                .iter()
                .copied()
                .filter(|x| rollup(c, x).is_none())
                .collect();
            let mut m = serde_json::Map::new();
            m.insert("section".into(), Value::Null);
            m.insert("label".into(), json!("(article-level)"));
            rows.push(row(m, &rest));
            Value::Array(rows)
        }
        3 => json!({
            "content": cs.iter().filter(|x| x.aspect == Aspect::Content).count(),
            "presentation": cs.iter().filter(|x| x.aspect == Aspect::Presentation).count(),
        }),
        4 => {
            let kind = |x: &ReviewComment| find(c, &x.target).map(|e| e.kind);
            json!({
                "paragraph-level": cs.iter().filter(|x| kind(x).is_some_and(|k| k.is_leaf())).count(),
                "section-level": cs.iter().filter(|x| kind(x) == Some(ElementKind::Section)).count(),
                "article-level": cs.iter().filter(|x| kind(x) == Some(ElementKind::Article)).count(),
            })
        }
        5 => {
            let mut hits: Vec<&ReviewComment> = cs
                .iter()
                .copied()
                .filter(|x| x.positivity == Positivity::Negative && x.impact >= threshold)
                .collect();
            hits.sort_by(|a, b| b.impact.cmp(&a.impact).then(a.uri.cmp(&b.uri)));
            let points: Vec<Value> = hits
                .iter()
                .map(|x| {
                    json!({
                        "comment": x.uri.as_str(),
                        "impact": x.impact,
                        "section": innermost_section(c, x).map(|s| s.as_str().to_owned()),
                        "excerpt": excerpt(&x.text),
                    })
                })
                .collect();
            json!({ "threshold": threshold, "points": points })
        }
        6 => {
            let count = cs
                .iter()
                .filter(|x| {
                    x.actionability == Actionability::Compulsory
                        && (!negative_only || x.positivity == Positivity::Negative)
                })
                .count();
            let mode = if negative_only {
                "negative-compulsory"
            } else {
                "compulsory"
            };
            json!({ "mode": mode, "count": count })
        }
        7 => {
            let in_article = |e: &DocElement| {
                let mut cur = e;
                while let Some(p) = cur.parent.as_ref().and_then(|p| find(c, p)) {
                    cur = p;
                }
                &cur.uri == article
            };
            let mut paragraphs: Vec<&DocElement> = c
                .elements
                .iter()
                .filter(|e| e.kind == ElementKind::Paragraph && in_article(e))
                .collect();
            paragraphs.sort_by(|a, b| a.uri.cmp(&b.uri));
            let covered = |p: &DocElement| cs.iter().any(|x| x.target == p.uri);
            let sections: Vec<Value> = tops(c, article)
                .iter()
                .map(|s| {
                    let mine: Vec<&&DocElement> =
                        paragraphs.iter().filter(|p| top_section(c, &p.uri).as_ref() == Some(&s.uri)).collect();
                    json!({
                        "section": s.uri.as_str(),
                        "label": s.text,
                        "paragraphs": mine.len(),
                        "covered_paragraphs": mine.iter().filter(|p| covered(p)).count(),
                        "comments": cs.iter().filter(|x| rollup(c, x).as_ref() == Some(&s.uri)).count(),
                    })
                })
                .collect();
            let uncovered: Vec<&str> = paragraphs
                .iter()
                .filter(|p| !covered(p))
                .map(|p| p.uri.as_str())
                .collect();
            json!({
                "sections": sections,
                "article_level_comments": cs.iter().filter(|x| rollup(c, x).is_none()).count(),
                "uncovered": uncovered,
            })
        }
        _ => panic!("no question {q}"),
    }
}

/// Comment total per reviewer of the `index`-th article, in reviewer order.
pub fn reviewer_totals(c: &Corpus, index: usize) -> Vec<usize> {
    let article = &c.articles[index];
    let mut reviews: Vec<_> = c.reviews.iter().filter(|r| &r.article == article).collect();
    reviews.sort_by(|a, b| a.reviewer.cmp(&b.reviewer));
    reviews
        .iter()
        .map(|r| c.comments.iter().filter(|x| x.review == r.uri).count())
        .collect()
}
