use std::fs;
use std::path::{Path, PathBuf};

use crate::nanopub::Nanopublication;
use crate::rdf::parse_trig;

use super::StoreError;

fn io_err(path: &Path, e: std::io::Error) -> StoreError {
    StoreError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn read_file(path: &Path) -> Result<Vec<Nanopublication>, StoreError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let quads = parse_trig(&text).map_err(|error| StoreError::Parse {
        path: path.display().to_string(),
        error,
    })?;
    Nanopublication::split(quads).map_err(|error| StoreError::Nanopub {
        path: path.display().to_string(),
        error,
    })
}

/// Reads nanopublications from a `.trig` / `.nq` file (one or several
/// nanopublications) or from every such file in a directory, in file name
/// order.
pub fn read_nanopubs(path: &Path) -> Result<Vec<Nanopublication>, StoreError> {
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| io_err(path, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.is_file() && matches!(p.extension().and_then(|x| x.to_str()), Some("trig" | "nq"))
            })
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            out.extend(read_file(&f)?);
        }
        Ok(out)
    } else {
        read_file(path)
    }
}

/// Writes one `{artifact code}.trig` file per nanopublication into `dir`.
pub fn write_nanopubs(
    dir: &Path,
    nanopubs: &[Nanopublication],
) -> Result<Vec<PathBuf>, StoreError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut paths = Vec::with_capacity(nanopubs.len());
    for (i, n) in nanopubs.iter().enumerate() {
        let name = match n.artifact_code() {
            Some(code) => format!("{code}.trig"),
            None => format!("np-{i:05}.trig"),
        };
        let path = dir.join(name);
        fs::write(&path, n.to_trig()).map_err(|e| io_err(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkflows::{generate_corpus, CorpusSpec};

    #[test]
    fn directory_round_trip() {
        let c = generate_corpus(&CorpusSpec::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let paths = write_nanopubs(dir.path(), &c.nanopubs[..20]).unwrap();
        assert_eq!(paths.len(), 20);
        let mut back = read_nanopubs(dir.path()).unwrap();
        let mut expected = c.nanopubs[..20].to_vec();
        back.sort_by(|a, b| a.uri().cmp(b.uri()));
        expected.sort_by(|a, b| a.uri().cmp(b.uri()));
        assert_eq!(back, expected);
    }

    #[test]
    fn concatenated_file() {
        let c = generate_corpus(&CorpusSpec::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("all.trig");
        let text: String = c.nanopubs[..5]
            .iter()
            .map(|n| n.to_trig())
            .collect::<Vec<_>>()
            .join("\n");
        fs::write(&path, text).unwrap();
        assert_eq!(read_nanopubs(&path).unwrap().len(), 5);
        assert!(matches!(
            read_nanopubs(&dir.path().join("missing.trig")),
            Err(StoreError::Io { .. })
        ));
    }
}
