use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use linkflows_core::linkflows::{generate_corpus, CorpusSpec};
use linkflows_core::nanopub::{make_trusty, validate, verify_trusty};
use linkflows_core::store::{
    read_nanopubs, render_table, write_nanopubs, Cq6Mode, CqQuestion, QuadStore, StoreError,
    DEFAULT_CQ5_THRESHOLD,
};
use linkflows_core::{Iri, Nanopublication};
use linkflows_netpub::{benchmark, serve, FetchClient, Published, ServerConfig};
use serde_json::json;

use crate::api::{self, ApiState};

const DEFAULT_STORE: &str = "corpus";
const DEFAULT_PUBLISH_BASE: &str = "https://w3id.org/np/";

#[derive(Debug, Parser)]
#[command(
    name = "linkflows",
    version,
    about = "Review-comment nanopublications: generate, verify, publish, fetch and analyse"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Compulsory,
    NegativeCompulsory,
}

impl From<ModeArg> for Cq6Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Compulsory => Cq6Mode::Compulsory,
            ModeArg::NegativeCompulsory => Cq6Mode::NegativeCompulsory,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the synthetic corpus as one TriG file per nanopublication.
    GenCorpus {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, env = "LINKFLOWS_STORE", default_value = DEFAULT_STORE)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check nanopublications against the structural rules.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compute trusty URIs for pre-trusty (urn:temp:) nanopublications.
    Mktrusty {
        file: PathBuf,
        #[arg(long, default_value = DEFAULT_PUBLISH_BASE)]
        base: String,
        /// Write `{code}.trig` files here instead of printing TriG.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute and check trusty artifact codes.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Post nanopublications to a server.
    Publish {
        #[arg(long)]
        server: String,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Retrieve everything an index lists.
    Fetch {
        #[arg(long)]
        index: String,
        #[arg(long, value_delimiter = ',', required = true)]
        servers: Vec<String>,
        #[arg(long, default_value_t = 10)]
        parallelism: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Time repeated full retrievals.
    Benchmark {
        #[arg(long)]
        index: String,
        #[arg(long, value_delimiter = ',', required = true)]
        servers: Vec<String>,
        #[arg(long, default_value_t = 10)]
        parallelism: usize,
        #[arg(long, default_value_t = 50)]
        runs: usize,
        #[arg(long, default_value_t = 5)]
        batches: usize,
        /// Write the per-run CSV here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Answer a competency question for one article.
    Cq {
        #[arg(long, env = "LINKFLOWS_STORE", default_value = DEFAULT_STORE)]
        store: PathBuf,
        #[arg(long)]
        article: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        question: u8,
        /// Minimum impact for question 5.
        #[arg(long, default_value_t = DEFAULT_CQ5_THRESHOLD, value_parser = clap::value_parser!(u8).range(1..=5))]
        threshold: u8,
        /// What question 6 counts.
        #[arg(long, value_enum, default_value = "compulsory")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Corpus counts per element kind and per graph.
    Stats {
        #[arg(long, env = "LINKFLOWS_STORE", default_value = DEFAULT_STORE)]
        store: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a nanopublication server.
    ServeNp {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        latency_ms: Option<u64>,
    },
    /// Run the analytics API. SIGHUP reloads the store.
    ServeApi {
        #[arg(long, env = "LINKFLOWS_STORE", default_value = DEFAULT_STORE)]
        store: PathBuf,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8081)]
        port: u16,
    },
}

/// Exit status 1 for failed checks, 2 for bad usage.
#[derive(Debug)]
pub enum CliError {
    Failed(String),
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<StoreError> for CliError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::UnknownArticle(_) | StoreError::InvalidFilter { .. } => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Failed(e.to_string()),
        }
    }
}

fn failed(e: impl fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

type CliResult = Result<(), CliError>;

fn out_err(e: std::io::Error) -> CliError {
    failed(format!("cannot write output: {e}"))
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn runtime() -> Result<tokio::runtime::Runtime, CliError> {
    tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(failed)
}

fn existing(path: &Path) -> Result<(), CliError> {
    if path.exists() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{} does not exist",
            path.display()
        )))
    }
}

fn read_all(paths: &[PathBuf]) -> Result<Vec<Nanopublication>, CliError> {
    let mut out = Vec::new();
    for p in paths {
        existing(p)?;
        out.extend(read_nanopubs(p)?);
    }
    Ok(out)
}

pub fn load_store(path: &Path) -> Result<QuadStore, CliError> {
    existing(path)?;
    Ok(QuadStore::load(read_nanopubs(path)?)?)
}

fn iri(s: &str) -> Result<Iri, CliError> {
    Iri::new(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> CliResult {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("values serialize")
    )
    .map_err(out_err)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::GenCorpus {
            seed,
            out: dir,
            json,
        } => {
            let started = Instant::now();
            let corpus = generate_corpus(&CorpusSpec::with_seed(seed)).map_err(failed)?;
            clear_trig_files(&dir)?;
            write_nanopubs(&dir, &corpus.nanopubs)?;
            let elapsed = started.elapsed();
            if json {
                print_json(
                    out,
                    &json!({
                        "seed": seed,
                        "out": dir.display().to_string(),
                        "nanopublications": corpus.nanopubs.len(),
                        "triples": corpus.triple_count(),
                        "index": corpus.index_uri,
                        "elapsed_ms": elapsed.as_millis() as u64,
                    }),
                )
            } else {
                writeln!(
                    out,
                    "{} nanopublications, {} triples written to {}\nindex: {}",
                    corpus.nanopubs.len(),
                    corpus.triple_count(),
                    dir.display(),
                    corpus.index_uri
                )
                .map_err(out_err)
            }
        }
        Command::Validate { files } => {
            let mut bad = 0;
            let mut total = 0;
            for path in &files {
                existing(path)?;
                let nanopubs = match read_nanopubs(path) {
                    Ok(n) => n,
                    Err(e) => {
                        let _ = writeln!(err, "INVALID {}: {e}", path.display());
                        bad += 1;
                        continue;
                    }
                };
                for n in nanopubs {
                    total += 1;
                    let report = validate(&n);
                    if report.is_valid() {
                        writeln!(out, "VALID {}", n.uri()).map_err(out_err)?;
                    } else {
                        bad += 1;
                        let _ = writeln!(err, "INVALID {}:\n{report}", n.uri());
                    }
                }
            }
            if bad > 0 {
                return Err(failed(format!("{bad} invalid of {total} checked")));
            }
            Ok(())
        }
        Command::Mktrusty {
            file,
            base,
            out: dir,
        } => {
            let base = iri(&base)?;
            let mut published = Vec::new();
            for n in read_all(std::slice::from_ref(&file))? {
                published.push(make_trusty(&n, &base).map_err(failed)?);
            }
            match dir {
                Some(dir) => {
                    write_nanopubs(&dir, &published)?;
                    for n in &published {
                        writeln!(out, "{}", n.uri()).map_err(out_err)?;
                    }
                }
                None => {
                    for n in &published {
                        write!(out, "{}", n.to_trig()).map_err(out_err)?;
                        let _ = writeln!(err, "{}", n.uri());
                    }
                }
            }
            Ok(())
        }
        Command::Verify { files } => {
            let mut bad = 0;
            let nanopubs = read_all(&files)?;
            for n in &nanopubs {
                match verify_trusty(n) {
                    Ok(true) => writeln!(out, "OK {}", n.uri()).map_err(out_err)?,
                    Ok(false) => {
                        bad += 1;
                        let _ = writeln!(
                            err,
                            "TRUSTY_MISMATCH: {} does not match its content",
                            n.uri()
                        );
                    }
                    Err(e) => {
                        bad += 1;
                        let _ = writeln!(err, "NOT_TRUSTY: {e}");
                    }
                }
            }
            if bad > 0 {
                return Err(failed(format!(
                    "{bad} of {} nanopublications failed verification",
                    nanopubs.len()
                )));
            }
            Ok(())
        }
        Command::Publish { server, files } => {
            let nanopubs = read_all(&files)?;
            let client = FetchClient::new(&[server.as_str()]).map_err(failed)?;
            let (mut created, mut present, mut rejected) = (0, 0, 0);
            runtime()?.block_on(async {
                for n in &nanopubs {
                    match client.publish(&server, n).await {
                        Ok(Published::Created) => created += 1,
                        Ok(Published::AlreadyPresent) => present += 1,
                        Err(e) => {
                            rejected += 1;
                            let _ = writeln!(err, "{}: {e}", n.uri());
                        }
                    }
                }
            });
            writeln!(
                out,
                "created {created}, already present {present}, rejected {rejected}"
            )
            .map_err(out_err)?;
            if rejected > 0 {
                return Err(failed(format!("{rejected} nanopublications rejected")));
            }
            Ok(())
        }
        Command::Fetch {
            index,
            servers,
            parallelism,
            out: dir,
            json,
        } => {
            let index = iri(&index)?;
            if parallelism == 0 {
                return Err(CliError::Usage("--parallelism must be at least 1".into()));
            }
            let client = FetchClient::new(&servers).map_err(|e| CliError::Usage(e.to_string()))?;
            let (nanopubs, report) = runtime()?
                .block_on(client.fetch_all(&index, parallelism))
                .map_err(failed)?;
            if let Some(dir) = dir {
                write_nanopubs(&dir, &nanopubs)?;
            }
            if json {
                print_json(
                    out,
                    &serde_json::to_value(&report).expect("report serializes"),
                )?;
            } else {
                writeln!(
                    out,
                    "fetched {} nanopublications in {} ms, {} failed",
                    report.fetched,
                    report.elapsed_ms,
                    report.failed.len()
                )
                .map_err(out_err)?;
                for (server, n) in &report.per_server {
                    writeln!(out, "  {server}: {n}").map_err(out_err)?;
                }
            }
            for (uri, e) in &report.failed {
                let _ = writeln!(err, "FAILED {uri}: {e}");
            }
            if !report.failed.is_empty() {
                return Err(failed(format!(
                    "{} members could not be fetched",
                    report.failed.len()
                )));
            }
            Ok(())
        }
        Command::Benchmark {
            index,
            servers,
            parallelism,
            runs,
            batches,
            csv,
            json,
        } => {
            let index = iri(&index)?;
            if parallelism == 0 || runs == 0 || batches == 0 || runs % batches != 0 {
                return Err(CliError::Usage(
                    "--parallelism, --runs and --batches must be positive and --runs divisible by --batches".into(),
                ));
            }
            let client = FetchClient::new(&servers).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = runtime()?
                .block_on(benchmark(&client, &index, parallelism, runs, batches))
                .map_err(failed)?;
            match csv {
                Some(path) => std::fs::write(&path, report.to_csv())
                    .map_err(|e| failed(format!("{}: {e}", path.display())))?,
                None if !json => write!(out, "{}", report.to_csv()).map_err(out_err)?,
                None => {}
            }
            let summary = json!({
                "parallelism": report.parallelism,
                "runs": report.runs.len(),
                "batches": report.batches,
                "min_ms": report.min(),
                "mean_ms": report.mean(),
                "max_ms": report.max(),
                "batch_means_ms": report.batch_means(),
            });
            if json {
                print_json(out, &summary)?;
            } else {
                let _ = writeln!(
                    err,
                    "parallelism {}: min {:.1} ms, mean {:.1} ms, max {:.1} ms over {} runs",
                    report.parallelism,
                    report.min(),
                    report.mean(),
                    report.max(),
                    report.runs.len()
                );
            }
            Ok(())
        }
        Command::Cq {
            store,
            article,
            question,
            threshold,
            mode,
            json,
        } => {
            let store = load_store(&store)?;
            let q =
                CqQuestion::new(question, threshold, mode.into()).expect("range checked by clap");
            if json {
                print_json(out, &store.cq_payload(&article, q)?)
            } else {
                let info = store.domain().article(&article)?;
                writeln!(out, "CQ{question} for {} ({})", info.alias, info.uri).map_err(out_err)?;
                write!(out, "{}", store.cq_text(&article, q)?).map_err(out_err)
            }
        }
        Command::Stats { store, json } => {
            let stats = load_store(&store)?.stats();
            if json {
                return print_json(out, &serde_json::to_value(&stats).expect("stats serialize"));
            }
            let obj = serde_json::to_value(&stats).expect("stats serialize");
            let rows = obj
                .as_object()
                .expect("struct")
                .iter()
                .map(|(k, v)| vec![k.clone(), v.to_string()])
                .collect();
            write!(out, "{}", render_table(&["count", "value"], rows)).map_err(out_err)
        }
        Command::ServeNp {
            host,
            port,
            dir,
            latency_ms,
        } => {
            let addr = socket(&host, port)?;
            runtime()?.block_on(async {
                let mut cfg = ServerConfig::new(addr, dir);
                if let Some(ms) = latency_ms {
                    cfg = cfg.latency(Duration::from_millis(ms));
                }
                let server = serve(cfg).await.map_err(failed)?;
                writeln!(out, "listening on {}", server.url()).map_err(out_err)?;
                out.flush().map_err(out_err)?;
                server.wait().await.map_err(failed)
            })
        }
        Command::ServeApi {
            store: path,
            host,
            port,
        } => {
            let addr = socket(&host, port)?;
            let state = ApiState::new(load_store(&path)?);
            runtime()?.block_on(async {
                let (local, task) = api::spawn(state.clone(), addr).await.map_err(failed)?;
                writeln!(out, "listening on http://{local}").map_err(out_err)?;
                out.flush().map_err(out_err)?;
                reload_on_hangup(state, path, err).await;
                task.abort();
                Ok(())
            })
        }
    }
}

/// Removes earlier output so a regenerated corpus is not mixed with a
/// previous seed. Only `.trig` files are touched.
fn clear_trig_files(dir: &Path) -> CliResult {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return Ok(());
    };
    for e in entries.flatten() {
        let p = e.path();
        if p.is_file() && p.extension().is_some_and(|x| x == "trig") {
            std::fs::remove_file(&p).map_err(|e| failed(format!("{}: {e}", p.display())))?;
        }
    }
    Ok(())
}

fn socket(host: &str, port: u16) -> Result<SocketAddr, CliError> {
    format!("{host}:{port}")
        .parse()
        .map_err(|e| CliError::Usage(format!("{host}:{port}: {e}")))
}

#[cfg(unix)]
async fn reload_on_hangup(state: std::sync::Arc<ApiState>, path: PathBuf, err: &mut dyn Write) {
    use tokio::signal::unix::{signal, SignalKind};
    let Ok(mut hup) = signal(SignalKind::hangup()) else {
        return;
    };
    loop {
        tokio::select! {
            _ = hup.recv() => match load_store(&path) {
                Ok(store) => {
                    state.swap(store);
                    let _ = writeln!(err, "reloaded {}", path.display());
                }
                Err(e) => {
                    let _ = writeln!(err, "reload failed, keeping the current store: {e}");
                }
            },
            _ = tokio::signal::ctrl_c() => return,
        }
    }
}

#[cfg(not(unix))]
async fn reload_on_hangup(_: std::sync::Arc<ApiState>, _: PathBuf, _: &mut dyn Write) {
    let _ = tokio::signal::ctrl_c().await;
}
