mod common;

use common::oracle;
use linkflows_core::linkflows::{generate_corpus, CorpusSpec, Positivity};
use linkflows_core::store::{Cq6Mode, CqQuestion, QuadStore, DEFAULT_CQ5_THRESHOLD};

fn question(n: u8, mode: Cq6Mode) -> CqQuestion {
    CqQuestion::new(n, DEFAULT_CQ5_THRESHOLD, mode).unwrap()
}

#[test]
fn store_matches_brute_force_for_ten_seeds() {
    let mut compared = 0;
    for seed in 1..=10 {
        let corpus = generate_corpus(&CorpusSpec::with_seed(seed)).unwrap();
        let store = QuadStore::load(corpus.nanopubs.clone()).unwrap();
        for a in 0..corpus.articles.len() {
            let alias = format!("a{}", a + 1);
            for n in 1..=7 {
                let got = store
                    .cq_payload(&alias, question(n, Cq6Mode::Compulsory))
                    .unwrap();
                let want = oracle::cq_result(&corpus, a, n, DEFAULT_CQ5_THRESHOLD, false);
                assert_eq!(got["result"], want, "seed {seed} article {alias} cq{n}");
                assert_eq!(got["article"], corpus.articles[a].as_str());
                compared += 1;
            }
            let got = store
                .cq_payload(&alias, question(6, Cq6Mode::NegativeCompulsory))
                .unwrap();
            assert_eq!(got["result"], oracle::cq_result(&corpus, a, 6, 0, true));
        }
    }
    assert_eq!(compared, 210);
}

#[test]
fn reviewer_totals_match_layout() {
    let corpus = generate_corpus(&CorpusSpec::default()).unwrap();
    let store = QuadStore::load(corpus.nanopubs.clone()).unwrap();
    let expected = [[17, 18, 50], [16, 21, 22], [11, 42, 16]];
    for (a, want) in expected.iter().enumerate() {
        assert_eq!(oracle::reviewer_totals(&corpus, a), want.to_vec());
        let rows = store.cq1(&format!("a{}", a + 1)).unwrap().rows;
        assert_eq!(
            rows.iter().map(|r| r.counts.total).collect::<Vec<_>>(),
            want.to_vec()
        );
    }
}

#[test]
fn partition_laws_on_many_seeds() {
    for seed in [0, 7, 42, 99, 12345] {
        let corpus = generate_corpus(&CorpusSpec::with_seed(seed)).unwrap();
        let store = QuadStore::load(corpus.nanopubs).unwrap();
        for info in store.domain().articles().to_vec() {
            let a = info.alias.as_str();
            let d3 = store.cq3(a).unwrap();
            let d4 = store.cq4(a).unwrap();
            assert_eq!(d3.content + d3.presentation, info.comments);
            assert_eq!(
                d4.paragraph_level + d4.section_level + d4.article_level,
                info.comments
            );
            let negatives = store
                .domain()
                .comments_of(&info.uri)
                .iter()
                .filter(|c| c.positivity == Positivity::Negative)
                .count();
            assert_eq!(store.cq5(a, 1).unwrap().len(), negatives);
            let sizes: Vec<usize> = (1..=6).map(|t| store.cq5(a, t).unwrap().len()).collect();
            assert!(sizes.windows(2).all(|w| w[0] >= w[1]), "{sizes:?}");
        }
    }
}
