//! Nanopublication network: a publish/retrieve server, a parallel fetch
//! client that resolves index nanopublications, and a timing benchmark.

mod bench;
mod client;
mod server;

use thiserror::Error;

pub use bench::{benchmark, TimingReport};
pub use client::{fetch_all, FetchClient, FetchReport, Published};
pub use server::{
    check_body, serve, ErrorBody, PublishBody, RunningServer, ServerConfig, ServerStats,
    StatsSnapshot, NQUADS, TRIG,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("no servers given")]
    NoServers,
    #[error("parallelism must be at least 1")]
    Parallelism,
    #[error("index {uri} cannot be resolved: {reason}")]
    UnresolvableIndex { uri: String, reason: String },
    #[error("{0}")]
    Http(String),
    #[error("server rejected the nanopublication ({status}): {message}")]
    Rejected { status: u16, message: String },
    #[error("{runs} runs cannot be split into {batches} equal batches")]
    Protocol { runs: usize, batches: usize },
    #[error("{failed} members failed, first: {first}")]
    Incomplete { failed: usize, first: String },
}
