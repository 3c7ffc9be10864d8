//! Parallel retrieval of everything an index nanopublication lists.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use futures::stream::{self, StreamExt};
use linkflows_core::nanopub::{index_members, verify_trusty, NanopubIndex, TrustyCode};
use linkflows_core::rdf::parse_trig;
use linkflows_core::{Iri, Nanopublication};
use serde::Serialize;

use crate::server::TRIG;
use crate::NetError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FetchReport {
    pub index_uri: Iri,
    pub fetched: usize,
    /// URI and the error of its last attempt.
    pub failed: Vec<(Iri, String)>,
    pub elapsed_ms: u64,
    /// Successful fetches per server base URL.
    pub per_server: BTreeMap<String, usize>,
}

/// Outcome of publishing one nanopublication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Published {
    Created,
    AlreadyPresent,
}

#[derive(Debug, Clone)]
pub struct FetchClient {
    http: reqwest::Client,
    servers: Vec<String>,
}

impl FetchClient {
    /// `servers` are base URLs such as `http://127.0.0.1:4000`.
    pub fn new<S: AsRef<str>>(servers: &[S]) -> Result<Self, NetError> {
        if servers.is_empty() {
            return Err(NetError::NoServers);
        }
        let http = reqwest::Client::builder()
            .connect_timeout(Duration::from_secs(5))
            .timeout(Duration::from_secs(30))
            .build()
            .map_err(|e| NetError::Http(e.to_string()))?;
        Ok(FetchClient {
            http,
            servers: servers
                .iter()
                .map(|s| s.as_ref().trim_end_matches('/').to_owned())
                .collect(),
        })
    }

    pub fn servers(&self) -> &[String] {
        &self.servers
    }

    /// One GET against one server, verified against the requested URI.
    async fn get_verified(&self, server: &str, uri: &Iri) -> Result<Nanopublication, String> {
        let code =
            TrustyCode::from_uri(uri.as_str()).ok_or_else(|| format!("NOT_TRUSTY: {uri}"))?;
        let resp = self
            .http
            .get(format!("{server}/np/{}", code.as_str()))
            .send()
            .await
            .map_err(|e| format!("{server}: {e}"))?;
        let status = resp.status();
        if !status.is_success() {
            return Err(format!("{server}: HTTP {}", status.as_u16()));
        }
        let text = resp.text().await.map_err(|e| format!("{server}: {e}"))?;
        let quads = parse_trig(&text).map_err(|e| format!("{server}: {e}"))?;
        let n = Nanopublication::from_quads(quads).map_err(|e| format!("{server}: {e}"))?;
        if n.uri() != uri {
            return Err(format!("{server}: served {} for {uri}", n.uri()));
        }
        match verify_trusty(&n) {
            Ok(true) => Ok(n),
            _ => Err(format!("{server}: TRUSTY_MISMATCH for {uri}")),
        }
    }

    /// Tries `servers[start]`, then once more on the next server.
    async fn fetch_with_retry(
        &self,
        uri: &Iri,
        start: usize,
    ) -> (Result<Nanopublication, String>, usize) {
        let n = self.servers.len();
        let mut last = String::new();
        for attempt in 0..2 {
            let i = (start + attempt) % n;
            match self.get_verified(&self.servers[i], uri).await {
                Ok(np) => return (Ok(np), i),
                Err(e) => last = e,
            }
        }
        (Err(last), start)
    }

    /// Index nanopublications are tried on every server before giving up.
    async fn fetch_index(&self, uri: &Iri) -> Result<Nanopublication, NetError> {
        let mut errors = Vec::new();
        for server in &self.servers {
            match self.get_verified(server, uri).await {
                Ok(n) => return Ok(n),
                Err(e) => errors.push(e),
            }
        }
        Err(NetError::UnresolvableIndex {
            uri: uri.as_str().to_owned(),
            reason: errors.join("; "),
        })
    }

    /// Resolves the index at `index_uri` (chains and sub-indexes included)
    /// and fetches every member with at most `parallelism` requests in
    /// flight. The returned list holds the index nanopublications followed
    /// by the members in index order; every one of them verified.
    pub async fn fetch_all(
        &self,
        index_uri: &Iri,
        parallelism: usize,
    ) -> Result<(Vec<Nanopublication>, FetchReport), NetError> {
        if parallelism == 0 {
            return Err(NetError::Parallelism);
        }
        let started = Instant::now();
        let mut per_server: BTreeMap<String, usize> =
            self.servers.iter().map(|s| (s.clone(), 0)).collect();

        let mut indexes: Vec<Nanopublication> = Vec::new();
        let mut known: HashMap<Iri, Nanopublication> = HashMap::new();
        let mut pending = vec![index_uri.clone()];
        while let Some(uri) = pending.pop() {
            if known.contains_key(&uri) {
                continue;
            }
            let n = self.fetch_index(&uri).await?;
            let idx =
                NanopubIndex::from_nanopub(n.clone()).map_err(|e| NetError::UnresolvableIndex {
                    uri: uri.as_str().to_owned(),
                    reason: e.to_string(),
                })?;
            pending.extend(idx.entries().subindexes.iter().cloned());
            pending.extend(idx.entries().appends.iter().cloned());
            indexes.push(n.clone());
            known.insert(uri, n);
        }
        let top = NanopubIndex::from_nanopub(known[index_uri].clone()).expect("checked above");
        let members = index_members(&top, |u| known.get(u).cloned()).map_err(|e| {
            NetError::UnresolvableIndex {
                uri: index_uri.as_str().to_owned(),
                reason: e.to_string(),
            }
        })?;

        let mut results: Vec<(usize, Iri, Result<Nanopublication, String>, usize)> =
            stream::iter(members.into_iter().enumerate())
                .map(|(i, uri)| async move {
                    let (r, server) = self.fetch_with_retry(&uri, i % self.servers.len()).await;
                    (i, uri, r, server)
                })
                .buffer_unordered(parallelism)
                .collect()
                .await;
        results.sort_by_key(|r| r.0);

        let mut out = indexes;
        let mut failed = Vec::new();
        for (_, uri, r, server) in results {
            match r {
                Ok(n) => {
                    *per_server.entry(self.servers[server].clone()).or_default() += 1;
                    out.push(n);
                }
                Err(e) => failed.push((uri, e)),
            }
        }
        let report = FetchReport {
            index_uri: index_uri.clone(),
            fetched: out.len(),
            failed,
            elapsed_ms: u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX),
            per_server,
        };
        Ok((out, report))
    }

    /// Posts `n` to `server` as TriG.
    pub async fn publish(&self, server: &str, n: &Nanopublication) -> Result<Published, NetError> {
        let server = server.trim_end_matches('/');
        let resp = self
            .http
            .post(format!("{server}/np"))
            .header(reqwest::header::CONTENT_TYPE, TRIG)
            .body(n.to_trig())
            .send()
            .await
            .map_err(|e| NetError::Http(format!("{server}: {e}")))?;
        let status = resp.status();
        let text = resp
            .text()
            .await
            .map_err(|e| NetError::Http(e.to_string()))?;
        match status.as_u16() {
            201 => Ok(Published::Created),
            200 => Ok(Published::AlreadyPresent),
            code => {
                let rule = serde_json::from_str::<crate::server::ErrorBody>(&text)
                    .map(|b| format!("{}: {}", b.error, b.message))
                    .unwrap_or(text);
                Err(NetError::Rejected {
                    status: code,
                    message: rule,
                })
            }
        }
    }
}

/// Convenience wrapper over [`FetchClient::fetch_all`].
pub async fn fetch_all<S: AsRef<str>>(
    index_uri: &Iri,
    servers: &[S],
    parallelism: usize,
) -> Result<(Vec<Nanopublication>, FetchReport), NetError> {
    FetchClient::new(servers)?
        .fetch_all(index_uri, parallelism)
        .await
}
