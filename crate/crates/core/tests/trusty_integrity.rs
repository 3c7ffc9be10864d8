use linkflows_core::linkflows::{generate_corpus, CorpusSpec};
use linkflows_core::nanopub::{make_trusty, verify_trusty, GraphRole, TrustyCode};
use linkflows_core::rdf::parse_trig;
use linkflows_core::{Iri, Literal, Nanopublication, Quad, QuadSet, Subject, Term};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Frozen from `python3 tools/trusty_oracle.py tests/fixtures/sample_comment.trig urn:temp:sample`.
const ORACLE_CODE: &str = "RAeVP1CBA9ToTq_2qO9MYeadAPMhSCcCyIgI21WysqchE";

fn fixture() -> Nanopublication {
    let text = include_str!("fixtures/sample_comment.trig");
    Nanopublication::from_quads(parse_trig(text).unwrap()).unwrap()
}

#[test]
fn golden_code_matches_oracle() {
    let n = fixture();
    assert_eq!(n.uri().as_str(), "urn:temp:sample");
    let published = make_trusty(&n, &Iri::new("https://w3id.org/np/").unwrap()).unwrap();
    assert_eq!(published.artifact_code().unwrap().as_str(), ORACLE_CODE);
    assert_eq!(
        published.uri().as_str(),
        format!("https://w3id.org/np/{ORACLE_CODE}")
    );
    assert_eq!(
        published.graph_iri(GraphRole::Assertion).as_str(),
        format!("https://w3id.org/np/{ORACLE_CODE}#assertion")
    );
    assert!(verify_trusty(&published).unwrap());
    // Trusty codes do not depend on the publishing server.
    let elsewhere = make_trusty(&n, &Iri::new("http://localhost:9000/np/").unwrap()).unwrap();
    assert_eq!(elsewhere.artifact_code(), published.artifact_code());
    assert_eq!(
        TrustyCode::parse(ORACLE_CODE).map(|c| c.as_str().len()),
        Some(45)
    );
}

#[test]
fn every_generated_nanopub_verifies() {
    let corpus = generate_corpus(&CorpusSpec::default()).unwrap();
    assert_eq!(corpus.nanopubs.len(), 627);
    for n in &corpus.nanopubs {
        assert_eq!(verify_trusty(n), Ok(true), "{}", n.uri());
    }
}

fn mutate(n: &Nanopublication, rng: &mut ChaCha8Rng) -> QuadSet {
    let quads: Vec<&Quad> = n.quads().iter().collect();
    let victim = (*quads.choose(rng).unwrap()).clone();
    let mut out = n.quads().clone();
    let fresh = Iri::new(format!("http://example.org/mutant/{}", rng.random::<u32>())).unwrap();
    let replacement = match rng.random_range(0..6) {
        0 => {
            out.remove(&victim);
            return out;
        }
        1 => Quad {
            subject: Subject::Iri(fresh),
            ..victim.clone()
        },
        2 => Quad {
            predicate: fresh,
            ..victim.clone()
        },
        3 => Quad {
            object: match &victim.object {
                Term::Literal(l) => Term::Literal(Literal::string(format!("{}x", l.lexical()))),
                _ => Term::Iri(fresh),
            },
            ..victim.clone()
        },
        4 => {
            let roles: Vec<GraphRole> = GraphRole::ALL
                .into_iter()
                .filter(|r| n.graph_iri(*r) != &victim.graph)
                .collect();
            Quad {
                graph: n.graph_iri(*roles.choose(rng).unwrap()).clone(),
                ..victim.clone()
            }
        }
        _ => {
            out.insert(Quad {
                object: Term::Iri(fresh),
                ..victim.clone()
            });
            return out;
        }
    };
    out.remove(&victim);
    out.insert(replacement);
    out
}

#[test]
fn thousand_single_quad_mutations_fail() {
    let corpus = generate_corpus(&CorpusSpec::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failed = 0;
    for i in 0..1000 {
        let n = corpus.nanopubs.choose(&mut rng).unwrap();
        let quads = mutate(n, &mut rng);
        assert_ne!(&quads, n.quads(), "mutation {i} was a no-op");
        let m = Nanopublication::from_parts(
            n.uri().clone(),
            n.graph_iri(GraphRole::Head).clone(),
            n.graph_iri(GraphRole::Assertion).clone(),
            n.graph_iri(GraphRole::Provenance).clone(),
            n.graph_iri(GraphRole::Pubinfo).clone(),
            quads,
        );
        if verify_trusty(&m) != Ok(true) {
            failed += 1;
        }
    }
    assert_eq!(failed, 1000);
}
