//! Repeated full retrievals, timed per run.

use std::fmt::Write;
use std::time::Instant;

use linkflows_core::Iri;
use serde::Serialize;

use crate::client::FetchClient;
use crate::NetError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingReport {
    pub parallelism: usize,
    pub batches: usize,
    /// Wall-clock time of every run in milliseconds, in run order.
    pub runs: Vec<f64>,
}

impl TimingReport {
    pub fn batch_size(&self) -> usize {
        self.runs.len() / self.batches
    }

    pub fn min(&self) -> f64 {
        self.runs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.runs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.runs.iter().sum::<f64>() / self.runs.len() as f64
    }

    pub fn batch_means(&self) -> Vec<f64> {
        self.runs
            .chunks(self.batch_size())
            .map(|b| b.iter().sum::<f64>() / b.len() as f64)
            .collect()
    }

    /// `run,batch,elapsed_ms` with 1-based run and batch numbers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("run,batch,elapsed_ms\n");
        let size = self.batch_size();
        for (i, ms) in self.runs.iter().enumerate() {
            let _ = writeln!(out, "{},{},{ms:.3}", i + 1, i / size + 1);
        }
        out
    }
}

/// Runs `fetch_all` `runs` times in `batches` equal batches. A run with
/// any failed member aborts the benchmark.
pub async fn benchmark(
    client: &FetchClient,
    index_uri: &Iri,
    parallelism: usize,
    runs: usize,
    batches: usize,
) -> Result<TimingReport, NetError> {
    if runs == 0 || batches == 0 || !runs.is_multiple_of(batches) {
        return Err(NetError::Protocol { runs, batches });
    }
    let mut times = Vec::with_capacity(runs);
    for _ in 0..runs {
        let started = Instant::now();
        let (_, report) = client.fetch_all(index_uri, parallelism).await?;
        if let Some((uri, error)) = report.failed.first() {
            return Err(NetError::Incomplete {
                failed: report.failed.len(),
                first: format!("{uri}: {error}"),
            });
        }
        times.push(started.elapsed().as_secs_f64() * 1000.0);
    }
    Ok(TimingReport {
        parallelism,
        batches,
        runs: times,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_csv() {
        let r = TimingReport {
            parallelism: 1,
            batches: 2,
            runs: vec![1.0, 3.0, 5.0, 7.0],
        };
        assert_eq!((r.min(), r.max(), r.mean()), (1.0, 7.0, 4.0));
        assert_eq!(r.batch_means(), vec![2.0, 6.0]);
        assert_eq!(
            r.to_csv(),
            "run,batch,elapsed_ms\n1,1,1.000\n2,1,3.000\n3,2,5.000\n4,2,7.000\n"
        );
    }

    #[tokio::test]
    async fn zero_runs_is_an_error() {
        let c = FetchClient::new(&["http://127.0.0.1:9"]).unwrap();
        let idx =
            Iri::new("https://w3id.org/np/RAxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx").unwrap();
        assert_eq!(
            benchmark(&c, &idx, 1, 0, 5).await,
            Err(NetError::Protocol {
                runs: 0,
                batches: 5
            })
        );
        assert_eq!(
            benchmark(&c, &idx, 1, 7, 5).await,
            Err(NetError::Protocol {
                runs: 7,
                batches: 5
            })
        );
    }
}
