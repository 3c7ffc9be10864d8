use std::path::Path;
use std::process::Command;

use linkflows_cli::run;
use linkflows_core::rdf::parse_trig;
use linkflows_core::store::{Cq6Mode, CqQuestion, QuadStore};
use linkflows_core::Nanopublication;
use serde_json::Value;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("linkflows").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn gen(dir: &Path, seed: u64) {
    let o = cli(&[
        "gen-corpus",
        "--seed",
        &seed.to_string(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
}

#[test]
fn gen_corpus_then_cq1() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store");
    let o = cli(&[
        "gen-corpus",
        "--seed",
        "42",
        "--out",
        store.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(
        (v["nanopublications"].as_u64(), v["triples"].as_u64()),
        (Some(627), Some(10_437))
    );
    assert_eq!(std::fs::read_dir(&store).unwrap().count(), 627);

    let o = cli(&[
        "cq",
        "--store",
        store.to_str().unwrap(),
        "--article",
        "a1",
        "--question",
        "1",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let totals: Vec<&str> = o
        .out
        .lines()
        .skip(3)
        .map(|l| l.split_whitespace().last().unwrap())
        .collect();
    assert_eq!(totals, vec!["17", "18", "50"], "{}", o.out);

    let o = cli(&["stats", "--store", store.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["review_comments"].as_u64(), Some(213));
}

#[test]
fn cq_json_equals_store_payload() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 3);
    let store = QuadStore::load(linkflows_core::store::read_nanopubs(dir.path()).unwrap()).unwrap();
    let d = dir.path().to_str().unwrap();
    for alias in ["a1", "a2", "a3"] {
        for n in 1..=7u8 {
            let o = cli(&[
                "cq",
                "--store",
                d,
                "--article",
                alias,
                "--question",
                &n.to_string(),
                "--json",
            ]);
            assert_eq!(o.code, 0, "{}", o.err);
            let got: Value = serde_json::from_str(&o.out).unwrap();
            assert_eq!(
                got,
                store
                    .cq_payload(alias, CqQuestion::new(n, 4, Cq6Mode::Compulsory).unwrap())
                    .unwrap()
            );
        }
    }
    let o = cli(&[
        "cq",
        "--store",
        d,
        "--article",
        "a2",
        "--question",
        "5",
        "--threshold",
        "2",
        "--json",
    ]);
    assert_eq!(
        serde_json::from_str::<Value>(&o.out).unwrap(),
        store
            .cq_payload("a2", CqQuestion::Q5 { threshold: 2 })
            .unwrap()
    );
    let o = cli(&[
        "cq",
        "--store",
        d,
        "--article",
        "a2",
        "--question",
        "6",
        "--mode",
        "negative-compulsory",
        "--json",
    ]);
    assert_eq!(
        serde_json::from_str::<Value>(&o.out).unwrap(),
        store
            .cq_payload(
                "a2",
                CqQuestion::Q6 {
                    mode: Cq6Mode::NegativeCompulsory
                }
            )
            .unwrap()
    );
    for n in 1..=7 {
        let o = cli(&[
            "cq",
            "--store",
            d,
            "--article",
            "a3",
            "--question",
            &n.to_string(),
        ]);
        assert_eq!(o.code, 0);
        assert!(o.out.starts_with(&format!("CQ{n} for a3")));
    }
}

#[test]
fn verify_and_validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 42);
    let d = dir.path().to_str().unwrap();
    assert_eq!(cli(&["verify", d]).code, 0);
    assert_eq!(cli(&["validate", d]).code, 0);

    let first = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let tampered = dir.path().join("tampered.trig");
    let text = std::fs::read_to_string(&first).unwrap();
    std::fs::write(&tampered, text.replacen("2020-06-01", "2021-06-01", 1)).unwrap();
    let o = cli(&["verify", tampered.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("TRUSTY_MISMATCH"), "{}", o.err);

    let broken = dir.path().join("broken.trig");
    let no_head: String = text
        .split("\n\n")
        .filter(|b| !b.contains("np:hasAssertion"))
        .collect::<Vec<_>>()
        .join("\n\n");
    std::fs::write(&broken, no_head).unwrap();
    assert_eq!(cli(&["validate", broken.to_str().unwrap()]).code, 1);
    std::fs::write(&broken, "not trig at all").unwrap();
    assert_eq!(cli(&["validate", broken.to_str().unwrap()]).code, 1);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), 42);
    let d = dir.path().to_str().unwrap();
    assert_eq!(cli(&["no-such-command"]).code, 2);
    assert_eq!(
        cli(&["cq", "--store", d, "--article", "a1", "--question", "9"]).code,
        2
    );
    assert_eq!(
        cli(&[
            "cq",
            "--store",
            d,
            "--article",
            "a1",
            "--question",
            "5",
            "--threshold",
            "0"
        ])
        .code,
        2
    );
    let o = cli(&["cq", "--store", d, "--article", "a9", "--question", "1"]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("unknown article a9"));
    assert_eq!(
        cli(&[
            "cq",
            "--store",
            "/nonexistent/store",
            "--article",
            "a1",
            "--question",
            "1"
        ])
        .code,
        2
    );
    assert_eq!(cli(&["verify", "/nonexistent.trig"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn mktrusty_reproduces_the_golden_code() {
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../core/tests/fixtures/sample_comment.trig"
    );
    let o = cli(&["mktrusty", fixture]);
    assert_eq!(o.code, 0, "{}", o.err);
    let n = Nanopublication::from_quads(parse_trig(&o.out).unwrap()).unwrap();
    assert_eq!(
        n.uri().as_str(),
        "https://w3id.org/np/RAeVP1CBA9ToTq_2qO9MYeadAPMhSCcCyIgI21WysqchE"
    );

    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["mktrusty", fixture, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(cli(&["verify", dir.path().to_str().unwrap()]).code, 0);
    // Already trusty input is not temporary.
    assert_eq!(cli(&["mktrusty", dir.path().to_str().unwrap()]).code, 1);
}

#[test]
fn publish_fetch_and_benchmark_against_a_server() {
    let corpus = tempfile::tempdir().unwrap();
    gen(corpus.path(), 42);
    let served = tempfile::tempdir().unwrap();
    let rt = tokio::runtime::Runtime::new().unwrap();
    let server = rt
        .block_on(linkflows_netpub::serve(
            linkflows_netpub::ServerConfig::local(served.path()),
        ))
        .unwrap();
    let url = server.url();

    let o = cli(&["publish", "--server", &url, corpus.path().to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert_eq!(o.out.trim(), "created 627, already present 0, rejected 0");
    let o = cli(&["publish", "--server", &url, corpus.path().to_str().unwrap()]);
    assert!(o.out.contains("already present 627"));

    let store =
        QuadStore::load(linkflows_core::store::read_nanopubs(corpus.path()).unwrap()).unwrap();
    let index = store
        .domain()
        .indexes
        .iter()
        .find(|(_, e)| !e.subindexes.is_empty())
        .map(|(uri, _)| uri.as_str().to_owned())
        .unwrap();
    let fetched = tempfile::tempdir().unwrap();
    let o = cli(&[
        "fetch",
        "--index",
        &index,
        "--servers",
        &url,
        "--parallelism",
        "8",
        "--out",
        fetched.path().to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let report: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report["fetched"].as_u64(), Some(627));
    assert_eq!(std::fs::read_dir(fetched.path()).unwrap().count(), 627);

    let o = cli(&[
        "benchmark",
        "--index",
        &index,
        "--servers",
        &url,
        "--runs",
        "2",
        "--batches",
        "2",
    ]);
    assert_eq!(o.code, 0, "{}", o.err);
    let lines: Vec<&str> = o.out.lines().collect();
    assert_eq!(lines[0], "run,batch,elapsed_ms");
    assert!(lines[1].starts_with("1,1,") && lines[2].starts_with("2,2,"));
    assert_eq!(
        cli(&[
            "benchmark",
            "--index",
            &index,
            "--servers",
            &url,
            "--runs",
            "0"
        ])
        .code,
        2
    );

    // A dead server is a failed fetch, not a usage error.
    rt.block_on(server.shutdown()).unwrap();
    assert_eq!(
        cli(&["fetch", "--index", &index, "--servers", &url]).code,
        1
    );
}

#[test]
fn binary_reads_store_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_linkflows"))
        .args(["gen-corpus", "--seed", "42"])
        .env("LINKFLOWS_STORE", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_linkflows"))
        .args(["cq", "--article", "a3", "--question", "1", "--json"])
        .env("LINKFLOWS_STORE", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let totals: Vec<u64> = v["result"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["total"].as_u64().unwrap())
        .collect();
    assert_eq!(totals, vec![11, 42, 16]);
    let bad = Command::new(env!("CARGO_BIN_EXE_linkflows"))
        .args(["cq"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
