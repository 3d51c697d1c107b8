//! Precomputed representation files.
//!
//! Learned sparse and dense model outputs enter the engine as line-delimited
//! JSON records:
//!
//! ```text
//! {"id": "...", "vector": {"term": weight, ...}}   sparse
//! {"id": "...", "vector": [f0, f1, ...]}           dense
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One sparse (term -> weight) vector record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseRecord {
    pub id: String,
    pub vector: BTreeMap<String, f64>,
}

/// One dense vector record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseRecord {
    pub id: String,
    pub vector: Vec<f32>,
}

fn record_lines<T: for<'de> Deserialize<'de>>(
    path: &Path,
) -> Result<impl Iterator<Item = Result<T>>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let path: PathBuf = path.to_path_buf();
    Ok(BufReader::new(file)
        .lines()
        .enumerate()
        .filter_map(move |(line_no, line)| {
            let line = match line {
                Ok(l) => l,
                Err(e) => return Some(Err(Error::io(&path, e))),
            };
            if line.trim().is_empty() {
                return None;
            }
            Some(
                serde_json::from_str::<T>(&line)
                    .map_err(|e| Error::parse(&path, line_no + 1, e.to_string())),
            )
        }))
}

/// Streams sparse vector records in file order.
pub fn read_sparse_vectors(
    path: impl AsRef<Path>,
) -> Result<impl Iterator<Item = Result<SparseRecord>>> {
    record_lines(path.as_ref())
}

/// Streams dense vector records in file order.
pub fn read_dense_vectors(
    path: impl AsRef<Path>,
) -> Result<impl Iterator<Item = Result<DenseRecord>>> {
    record_lines(path.as_ref())
}

pub fn write_sparse_vectors<'a>(
    records: impl IntoIterator<Item = &'a SparseRecord>,
    path: impl AsRef<Path>,
) -> Result<()> {
    write_records(records, path.as_ref())
}

pub fn write_dense_vectors<'a>(
    records: impl IntoIterator<Item = &'a DenseRecord>,
    path: impl AsRef<Path>,
) -> Result<()> {
    write_records(records, path.as_ref())
}

fn write_records<'a, T: Serialize + 'a>(
    records: impl IntoIterator<Item = &'a T>,
    path: &Path,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for record in records {
        serde_json::to_writer(&mut w, record).map_err(|e| {
            Error::io(path, std::io::Error::new(std::io::ErrorKind::InvalidData, e))
        })?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sparse.jsonl");
        let records = vec![
            SparseRecord {
                id: "d1".into(),
                vector: [("cat".to_string(), 1.5), ("dog".to_string(), 0.25)].into_iter().collect(),
            },
            SparseRecord { id: "d2".into(), vector: BTreeMap::new() },
        ];
        write_sparse_vectors(&records, &path).unwrap();
        let back: Vec<_> = read_sparse_vectors(&path).unwrap().collect::<Result<_>>().unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn dense_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dense.jsonl");
        let records = vec![DenseRecord { id: "d1".into(), vector: vec![0.5, -1.0, 2.25] }];
        write_dense_vectors(&records, &path).unwrap();
        let back: Vec<_> = read_dense_vectors(&path).unwrap().collect::<Result<_>>().unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn malformed_record_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "{\"id\":\"a\",\"vector\":[1.0]}\nnope\n").unwrap();
        let results: Vec<_> = read_dense_vectors(&path).unwrap().collect();
        assert!(results[0].is_ok());
        match results[1].as_ref().unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(*line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
