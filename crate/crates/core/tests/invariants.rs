use std::collections::BTreeMap;

use chrono::{TimeZone, Utc};
use linkflows_core::linkflows::{
    from_nanopub, to_nanopub, Actionability, Aspect, DocElement, DomainObject, ElementKind,
    Positivity, ReviewComment,
};
use linkflows_core::nanopub::{make_trusty, verify_trusty};
use linkflows_core::rdf::{canonical_nquads, parse_nquads, parse_trig, rewrite_terms, write_trig};
use linkflows_core::{Iri, Literal, PubMeta, Quad, QuadSet};
use proptest::prelude::*;

fn meta() -> PubMeta {
    PubMeta::new(
        Iri::new("https://orcid.org/0000-0002-0000-0001").unwrap(),
        Utc.with_ymd_and_hms(2020, 6, 1, 12, 0, 0).unwrap(),
        None,
    )
    .unwrap()
}

fn local() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,8}"
}

fn text() -> impl Strategy<Value = String> {
    // Includes quotes, backslashes, control characters and non-ASCII.
    proptest::collection::vec(
        prop_oneof![
            Just('"'),
            Just('\\'),
            Just('\n'),
            Just('\t'),
            Just('é'),
            Just('漢'),
            any::<char>()
        ],
        0..24,
    )
    .prop_map(|cs| {
        cs.into_iter()
            .filter(|c| *c != '\0' && !c.is_control() || matches!(c, '\n' | '\t'))
            .collect()
    })
}

fn iri(base: &'static str) -> impl Strategy<Value = Iri> {
    local().prop_map(move |l| Iri::new(format!("{base}{l}")).unwrap())
}

fn comment() -> impl Strategy<Value = ReviewComment> {
    (
        local(),
        iri("http://example.org/doc#"),
        0usize..3,
        0usize..2,
        0usize..2,
        1u8..=5,
        text(),
        0u32..1000,
    )
        .prop_map(
            |(id, target, p, a, x, impact, text, position)| ReviewComment {
                uri: Iri::new(format!("urn:temp:{id}#comment")).unwrap(),
                target,
                positivity: Positivity::ALL[p],
                aspect: Aspect::ALL[a],
                actionability: Actionability::ALL[x],
                impact,
                text,
                reviewer: Iri::new("https://orcid.org/0000-0001-0001-0001").unwrap(),
                review: Iri::new("http://example.org/review#review").unwrap(),
                position,
            },
        )
}

fn element() -> impl Strategy<Value = DocElement> {
    (
        local(),
        1usize..7,
        text(),
        iri("http://example.org/doc#"),
        0u32..500,
    )
        .prop_map(|(id, k, text, parent, order_index)| {
            let kind = ElementKind::ALL[k];
            DocElement {
                uri: Iri::new(format!("urn:temp:{id}#{}", kind.name())).unwrap(),
                kind,
                text,
                parent: Some(parent),
                order_index,
            }
        })
}

fn quads() -> impl Strategy<Value = Vec<Quad>> {
    proptest::collection::vec(
        (
            iri("http://ex.org/s/"),
            iri("http://ex.org/p/"),
            prop_oneof![
                iri("http://ex.org/o/").prop_map(Into::into),
                text().prop_map(|t| Literal::string(t).into())
            ],
            0usize..3,
        ),
        0..20,
    )
    .prop_map(|v| {
        v.into_iter()
            .map(|(s, p, o, g): (Iri, Iri, linkflows_core::Term, usize)| {
                Quad::new(s, p, o, Iri::new(format!("urn:temp:x#g{g}")).unwrap())
            })
            .collect()
    })
}

fn set(v: &[Quad]) -> QuadSet {
    let mut s = QuadSet::new();
    for q in v {
        s.insert(q.clone());
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comment_codec_round_trip(c in comment()) {
        let obj = DomainObject::Comment(c);
        let n = to_nanopub(&obj, &meta()).unwrap();
        prop_assert_eq!(from_nanopub(&n).unwrap(), obj);
    }

    #[test]
    fn element_codec_round_trip(e in element()) {
        let obj = DomainObject::Element(e);
        let n = to_nanopub(&obj, &meta()).unwrap();
        prop_assert_eq!(from_nanopub(&n).unwrap(), obj);
    }

    #[test]
    fn trusty_survives_serialization(c in comment()) {
        let n = to_nanopub(&DomainObject::Comment(c), &meta()).unwrap();
        let published = make_trusty(&n, &Iri::new("https://w3id.org/np/").unwrap()).unwrap();
        prop_assert_eq!(verify_trusty(&published), Ok(true));
        let back = linkflows_core::Nanopublication::from_quads(parse_trig(&published.to_trig()).unwrap()).unwrap();
        prop_assert_eq!(verify_trusty(&back), Ok(true));
        prop_assert_eq!(back.canonical_nquads(), published.canonical_nquads());
    }

    #[test]
    fn canonical_form_ignores_insertion_order(v in quads()) {
        let mut reversed = v.clone();
        reversed.reverse();
        let text = canonical_nquads(&set(&v));
        prop_assert_eq!(&text, &canonical_nquads(&set(&reversed)));
        prop_assert!(text.lines().collect::<Vec<_>>().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(text.is_empty() || text.ends_with('\n'));
    }

    #[test]
    fn rewrite_is_invertible(v in quads()) {
        let s = set(&v);
        let there = BTreeMap::from([(Iri::new("urn:temp:x").unwrap(), Iri::new("urn:trusty:placeholder").unwrap())]);
        let back = BTreeMap::from([(Iri::new("urn:trusty:placeholder").unwrap(), Iri::new("urn:temp:x").unwrap())]);
        let round = rewrite_terms(&rewrite_terms(&s, &there).unwrap(), &back).unwrap();
        prop_assert_eq!(canonical_nquads(&round), canonical_nquads(&s));
    }

    #[test]
    fn serializations_round_trip(v in quads()) {
        let s = set(&v);
        let from_trig = parse_trig(&write_trig(&s)).unwrap();
        prop_assert_eq!(canonical_nquads(&from_trig), canonical_nquads(&s));
        let from_nq = parse_nquads(&canonical_nquads(&s)).unwrap();
        prop_assert_eq!(canonical_nquads(&from_nq), canonical_nquads(&s));
    }
}
