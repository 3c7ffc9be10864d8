//! Deterministic synthetic review corpus.

use std::collections::BTreeMap;

use chrono::{DateTime, TimeZone, Utc};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::nanopub::{make_trusty, IndexBuilder, Nanopublication, PubMeta, MAX_INDEX_SIZE};
use crate::rdf::Iri;

use super::article::{build_article, default_layouts, ArticleLayout};
use super::codec::to_nanopub_with_notes;
use super::{
    Actionability, Aspect, DocElement, DomainObject, ElementKind, LinkflowsError, Positivity,
    ReviewComment, ReviewContainer,
};

/// Relative weights for each categorical draw.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionWeights {
    /// positive, negative, neutral
    pub positivity: [u32; 3],
    /// content, presentation
    pub aspect: [u32; 2],
    /// suggestion, compulsory
    pub actionability: [u32; 2],
    /// impact 1..=5
    pub impact: [u32; 5],
    /// leaf element, section, whole article
    pub target: [u32; 3],
}

impl Default for DimensionWeights {
    fn default() -> Self {
        DimensionWeights {
            positivity: [35, 55, 10],
            aspect: [60, 40],
            actionability: [50, 50],
            impact: [1; 5],
            target: [75, 18, 7],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub article_layouts: Vec<ArticleLayout>,
    /// Per article, the number of comments of each reviewer.
    pub review_layouts: Vec<Vec<usize>>,
    pub dimension_weights: DimensionWeights,
    pub creator: Iri,
    pub created: DateTime<Utc>,
    pub source: Option<Iri>,
    pub publish_base: Iri,
    /// Pads element assertions with notes until the corpus holds exactly
    /// this many triples.
    pub target_total_triples: Option<usize>,
}

pub const DEFAULT_TOTAL_TRIPLES: usize = 10_437;

impl CorpusSpec {
    pub fn with_seed(seed: u64) -> Self {
        CorpusSpec {
            seed,
            ..Default::default()
        }
    }

    fn meta(&self) -> Result<PubMeta, LinkflowsError> {
        Ok(PubMeta::new(
            self.creator.clone(),
            self.created,
            self.source.clone(),
        )?)
    }
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 42,
            article_layouts: default_layouts(),
            review_layouts: vec![vec![17, 18, 50], vec![16, 21, 22], vec![11, 42, 16]],
            dimension_weights: DimensionWeights::default(),
            creator: Iri::new("https://orcid.org/0000-0002-0000-0001").expect("valid"),
            created: Utc
                .with_ymd_and_hms(2020, 6, 1, 12, 0, 0)
                .single()
                .expect("valid date"),
            source: Some(Iri::new("https://example.org/journal/reviews").expect("valid")),
            publish_base: Iri::new("https://w3id.org/np/").expect("valid"),
            target_total_triples: Some(DEFAULT_TOTAL_TRIPLES),
        }
    }
}

/// Generated nanopublications together with the typed values they encode.
#[derive(Debug, Clone)]
pub struct Corpus {
    /// Elements, then each review followed by its comments, then indexes.
    pub nanopubs: Vec<Nanopublication>,
    pub articles: Vec<Iri>,
    pub elements: Vec<DocElement>,
    pub comments: Vec<ReviewComment>,
    pub reviews: Vec<ReviewContainer>,
    /// Entry point of the top-level index.
    pub index_uri: Iri,
    /// Every index nanopublication URI.
    pub indexes: Vec<Iri>,
}

impl Corpus {
    pub fn triple_count(&self) -> usize {
        self.nanopubs.iter().map(|n| n.quads().len()).sum()
    }
}

pub fn reviewer_iri(article: usize, reviewer: usize) -> Iri {
    Iri::new(format!(
        "https://orcid.org/0000-0001-{:04}-{:04}",
        article + 1,
        reviewer + 1
    ))
    .expect("valid")
}

fn chunks(n: usize) -> usize {
    n.div_ceil(MAX_INDEX_SIZE)
}

struct Plan {
    nanopubs: usize,
    base_assertion: usize,
}

fn plan(spec: &CorpusSpec, elements: &[Vec<DocElement>]) -> Plan {
    let e: usize = elements.iter().map(Vec::len).sum();
    let m: usize = spec.review_layouts.iter().flatten().sum();
    let r: usize = spec.review_layouts.iter().map(Vec::len).sum();
    let element_triples: usize = elements
        .iter()
        .flatten()
        .map(|el| if el.parent.is_some() { 4 } else { 3 })
        .sum();
    let sub_a = e;
    let sub_b = r + m;
    let top_entries = 1 + usize::from(sub_b > 0);
    let index_nanopubs = chunks(sub_a) + chunks(sub_b) + 1;
    let appends = chunks(sub_a).saturating_sub(1) + chunks(sub_b).saturating_sub(1);
    Plan {
        nanopubs: e + m + r + index_nanopubs,
        base_assertion: element_triples
            + 9 * m
            + 2 * r
            + 2 * (sub_a + sub_b + top_entries)
            + appends,
    }
}

fn weighted<const N: usize>(
    w: &[u32; N],
    name: &str,
) -> Result<WeightedIndex<u32>, LinkflowsError> {
    WeightedIndex::new(w).map_err(|e| LinkflowsError::Spec(format!("{name} weights: {e}")))
}

/// Builds the corpus described by `spec`. Identical specs give identical
/// output.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus, LinkflowsError> {
    if spec.article_layouts.is_empty() {
        return Err(LinkflowsError::Spec(
            "at least one article is required".into(),
        ));
    }
    if spec.article_layouts.len() != spec.review_layouts.len() {
        return Err(LinkflowsError::Spec(format!(
            "{} article layouts but {} review layouts",
            spec.article_layouts.len(),
            spec.review_layouts.len()
        )));
    }
    let meta = spec.meta()?;
    let w = &spec.dimension_weights;
    let d_positivity = weighted(&w.positivity, "positivity")?;
    let d_aspect = weighted(&w.aspect, "aspect")?;
    let d_action = weighted(&w.actionability, "actionability")?;
    let d_impact = weighted(&w.impact, "impact")?;
    let d_target = weighted(&w.target, "target")?;

    let layouts: Vec<Vec<DocElement>> = spec
        .article_layouts
        .iter()
        .enumerate()
        .map(|(i, l)| build_article(l, &format!("a{}", i + 1), i as u32))
        .collect::<Result<_, _>>()?;

    let plan = plan(spec, &layouts);
    let prov_per = 1 + usize::from(spec.source.is_some());
    let padding = match spec.target_total_triples {
        None => 0,
        Some(total) => {
            let fixed = (4 + prov_per + 2) * plan.nanopubs + 1;
            let needed = fixed + plan.base_assertion;
            if total < needed {
                return Err(LinkflowsError::Shortfall {
                    base: plan.base_assertion,
                    target: total.saturating_sub(fixed),
                    shortfall: needed - total,
                });
            }
            total - needed
        }
    };
    let element_total: usize = layouts.iter().map(Vec::len).sum();

    let mut nanopubs: Vec<Nanopublication> = Vec::with_capacity(plan.nanopubs);
    let publish = |nanopubs: &mut Vec<Nanopublication>,
                   obj: DomainObject,
                   notes: &[String]|
     -> Result<Iri, LinkflowsError> {
        let n = make_trusty(
            &to_nanopub_with_notes(&obj, &meta, notes)?,
            &spec.publish_base,
        )?;
        let frag = obj.uri().fragment().unwrap_or_default().to_owned();
        let uri = n.uri().join_suffix(&format!("#{frag}"))?;
        nanopubs.push(n);
        Ok(uri)
    };

    let mut elements: Vec<DocElement> = Vec::with_capacity(element_total);
    let mut published: BTreeMap<Iri, Iri> = BTreeMap::new();
    let mut articles = Vec::new();
    for article in &layouts {
        for el in article {
            let i = elements.len();
            let notes: Vec<String> = (i..padding)
                .step_by(element_total)
                .map(|k| format!("note {}", k + 1))
                .collect();
            let mut el = el.clone();
            el.parent = el.parent.map(|p| published[&p].clone());
            let temp = el.uri.clone();
            el.uri = publish(&mut nanopubs, DomainObject::Element(el.clone()), &notes)?;
            published.insert(temp, el.uri.clone());
            if el.kind == ElementKind::Article {
                articles.push(el.uri.clone());
            }
            elements.push(el);
        }
    }
    let element_nanopubs: Vec<Iri> = nanopubs.iter().map(|n| n.uri().clone()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut comments = Vec::new();
    let mut reviews = Vec::new();
    let mut review_nanopubs = Vec::new();
    let mut offset = 0;
    for (a, (layout_elements, counts)) in layouts.iter().zip(&spec.review_layouts).enumerate() {
        let own = &elements[offset..offset + layout_elements.len()];
        offset += layout_elements.len();
        let pools: [Vec<&DocElement>; 3] = [
            own.iter().filter(|e| e.kind.is_leaf()).collect(),
            own.iter()
                .filter(|e| e.kind == ElementKind::Section)
                .collect(),
            own.iter()
                .filter(|e| e.kind == ElementKind::Article)
                .collect(),
        ];
        for (r, &count) in counts.iter().enumerate() {
            let reviewer = reviewer_iri(a, r);
            let mut review = ReviewContainer {
                uri: Iri::new(format!("urn:temp:a{}-r{}#review", a + 1, r + 1))?,
                article: articles[a].clone(),
                reviewer: reviewer.clone(),
                comments: Vec::new(),
            };
            review.uri = publish(&mut nanopubs, DomainObject::Review(review.clone()), &[])?;
            review_nanopubs.push(nanopubs.last().expect("just published").uri().clone());
            for p in 0..count {
                // Fall back to coarser targets when a pool is empty.
                let drawn = d_target.sample(&mut rng);
                let pool = pools[drawn..]
                    .iter()
                    .find(|p| !p.is_empty())
                    .expect("article pool is never empty");
                let target = pool[rng.random_range(0..pool.len())];
                let positivity = [
                    Positivity::Positive,
                    Positivity::Negative,
                    Positivity::Neutral,
                ][d_positivity.sample(&mut rng)];
                let aspect = [Aspect::Content, Aspect::Presentation][d_aspect.sample(&mut rng)];
                let actionability = [Actionability::Suggestion, Actionability::Compulsory]
                    [d_action.sample(&mut rng)];
                let impact = d_impact.sample(&mut rng) as u8 + 1;
                let mut c = ReviewComment {
                    uri: Iri::new(format!("urn:temp:a{}-r{}-c{}#comment", a + 1, r + 1, p + 1))?,
                    target: target.uri.clone(),
                    positivity,
                    aspect,
                    actionability,
                    impact,
                    text: format!("Comment {} on {}", comments.len() + 1, target.kind),
                    reviewer: reviewer.clone(),
                    review: review.uri.clone(),
                    position: p as u32,
                };
                c.uri = publish(&mut nanopubs, DomainObject::Comment(c.clone()), &[])?;
                review_nanopubs.push(nanopubs.last().expect("just published").uri().clone());
                review.comments.push(c.uri.clone());
                comments.push(c);
            }
            reviews.push(review);
        }
    }

    let mut indexes = Vec::new();
    let mut top = IndexBuilder::new().publish_base(spec.publish_base.clone());
    for members in [element_nanopubs, review_nanopubs] {
        if members.is_empty() {
            continue;
        }
        let chain = IndexBuilder::new()
            .publish_base(spec.publish_base.clone())
            .elements(members)
            .build(&meta)?;
        top = top.subindexes([chain.last().expect("non-empty chain").uri().clone()]);
        for idx in chain {
            indexes.push(idx.uri().clone());
            nanopubs.push(idx.into_nanopub());
        }
    }
    let top = top
        .description("Index of a synthetic Linkflows review corpus")
        .build(&meta)?;
    let index_uri = top.last().expect("non-empty chain").uri().clone();
    for idx in top {
        indexes.push(idx.uri().clone());
        nanopubs.push(idx.into_nanopub());
    }

    Ok(Corpus {
        nanopubs,
        articles,
        elements,
        comments,
        reviews,
        index_uri,
        indexes,
    })
}
