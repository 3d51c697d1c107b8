//! Flat (exhaustive) dense-vector store with exact inner-product top-k.
//!
//! Rows are stored single-precision and contiguous; dot products accumulate
//! in double precision. The scan is the designated hot path: blocked row
//! traversal with a bounded per-block heap and a deterministic merge, so the
//! parallel path returns results identical to the sequential one. Negative
//! scores are retained — inner products of real embeddings can be negative.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use ordered_float::OrderedFloat;
use rayon::prelude::*;

use crate::{Error, Result};

/// Rows scanned per work unit.
const SCAN_BLOCK_ROWS: usize = 1024;

/// Immutable dense-vector store. Concurrent searches are safe.
#[derive(Debug, Clone)]
pub struct DenseVectorStore {
    pub(crate) dim: usize,
    pub(crate) doc_ids: Vec<String>,
    /// Row-major, `count * dim` entries.
    pub(crate) data: Vec<f32>,
    /// `id_rank[ordinal]` = position of this row's id in ascending id
    /// order; lets tie-breaking compare two integers instead of strings.
    id_rank: Vec<u32>,
}

/// Ordering key for one hit: higher score wins, then ascending doc id.
type HitKey = (OrderedFloat<f64>, Reverse<u32>);

/// Builds a store from a stream of (id, vector) pairs. All vectors must
/// share one dimension and contain only finite values; ids must be unique.
pub fn build_dense_index(
    vectors: impl IntoIterator<Item = Result<(String, Vec<f32>)>>,
) -> Result<DenseVectorStore> {
    let mut dim: Option<usize> = None;
    let mut doc_ids = Vec::new();
    let mut data = Vec::new();
    let mut seen = HashSet::new();
    for record in vectors {
        let (id, vector) = record?;
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId { id, context: "dense store build".into() });
        }
        let expected = *dim.get_or_insert(vector.len());
        if vector.len() != expected {
            return Err(Error::DimensionMismatch { id, expected, got: vector.len() });
        }
        if expected == 0 {
            return Err(Error::InvalidArgument(format!("empty vector for id `{id}`")));
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { id });
        }
        data.extend_from_slice(&vector);
        doc_ids.push(id);
    }
    DenseVectorStore::from_parts(dim.unwrap_or(0), doc_ids, data)
}

impl DenseVectorStore {
    pub(crate) fn from_parts(dim: usize, doc_ids: Vec<String>, data: Vec<f32>) -> Result<Self> {
        if data.len() != dim * doc_ids.len() {
            return Err(Error::InvalidArgument(format!(
                "dense store shape mismatch: {} values for {} x {}",
                data.len(),
                doc_ids.len(),
                dim
            )));
        }
        let mut order: Vec<u32> = (0..doc_ids.len() as u32).collect();
        order.sort_by(|&a, &b| doc_ids[a as usize].cmp(&doc_ids[b as usize]));
        let mut id_rank = vec![0u32; doc_ids.len()];
        for (rank, &ord) in order.iter().enumerate() {
            id_rank[ord as usize] = rank as u32;
        }
        Ok(DenseVectorStore { dim, doc_ids, data, id_rank })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn doc_id(&self, ordinal: u32) -> Option<&str> {
        self.doc_ids.get(ordinal as usize).map(String::as_str)
    }

    pub fn row(&self, ordinal: u32) -> Option<&[f32]> {
        let start = ordinal as usize * self.dim;
        self.data.get(start..start + self.dim)
    }

    /// Exact top-k by inner product, sequential blocked scan.
    pub fn search(&self, query: &[f32], k: usize) -> Result<Vec<(String, f64)>> {
        self.check_query(query, k)?;
        if self.count() == 0 {
            return Ok(Vec::new());
        }
        let mut heap = BoundedTopK::new(k);
        for block_start in (0..self.count()).step_by(SCAN_BLOCK_ROWS) {
            let block_end = usize::min(block_start + SCAN_BLOCK_ROWS, self.count());
            self.scan_rows(block_start..block_end, query, &mut heap);
        }
        Ok(self.finish(heap.into_sorted(), k))
    }

    /// Exact top-k by inner product, fanned out across row blocks. Returns
    /// results identical to [`DenseVectorStore::search`].
    pub fn search_parallel(&self, query: &[f32], k: usize) -> Result<Vec<(String, f64)>> {
        self.check_query(query, k)?;
        if self.count() == 0 {
            return Ok(Vec::new());
        }
        let candidates: Vec<(HitKey, u32)> = (0..self.count())
            .into_par_iter()
            .step_by(SCAN_BLOCK_ROWS)
            .map(|block_start| {
                let block_end = usize::min(block_start + SCAN_BLOCK_ROWS, self.count());
                let mut heap = BoundedTopK::new(k);
                self.scan_rows(block_start..block_end, query, &mut heap);
                heap.into_sorted()
            })
            .reduce(Vec::new, |mut a, b| {
                a.extend(b);
                a
            });
        Ok(self.finish(candidates, k))
    }

    fn check_query(&self, query: &[f32], k: usize) -> Result<()> {
        if k < 1 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        if self.count() > 0 && query.len() != self.dim {
            return Err(Error::DimensionMismatch {
                id: "<query>".into(),
                expected: self.dim,
                got: query.len(),
            });
        }
        Ok(())
    }

    /// Scores a row range into the heap. Per-row accumulation is
    /// left-to-right in f64, so a row's score is independent of how rows
    /// are partitioned into blocks.
    fn scan_rows(&self, rows: std::ops::Range<usize>, query: &[f32], heap: &mut BoundedTopK) {
        for ord in rows {
            let row = &self.data[ord * self.dim..(ord + 1) * self.dim];
            let mut acc = 0f64;
            for (a, b) in row.iter().zip(query) {
                acc += f64::from(*a) * f64::from(*b);
            }
            heap.offer((OrderedFloat(acc), Reverse(self.id_rank[ord])), ord as u32);
        }
    }

    /// Deterministic merge: sort all block candidates best-first, keep `k`.
    fn finish(&self, mut candidates: Vec<(HitKey, u32)>, k: usize) -> Vec<(String, f64)> {
        candidates.sort_by(|a, b| b.0.cmp(&a.0));
        candidates.truncate(k);
        candidates
            .into_iter()
            .map(|((score, _), ord)| (self.doc_ids[ord as usize].clone(), score.0))
            .collect()
    }

    pub fn fingerprint(&self) -> String {
        crate::store::dense_fingerprint(self)
    }

    /// Persists the store (packed binary rows + manifest).
    pub fn save(&self, dir: &std::path::Path) -> Result<()> {
        crate::store::save_dense(self, dir)
    }
}

/// Min-heap over hit keys keeping the best `k` seen so far.
struct BoundedTopK {
    k: usize,
    heap: BinaryHeap<Reverse<(HitKey, u32)>>,
}

impl BoundedTopK {
    fn new(k: usize) -> Self {
        BoundedTopK { k, heap: BinaryHeap::with_capacity(k + 1) }
    }

    fn offer(&mut self, key: HitKey, ord: u32) {
        if self.heap.len() < self.k {
            self.heap.push(Reverse((key, ord)));
        } else if self.heap.peek().is_some_and(|worst| key > worst.0 .0) {
            self.heap.pop();
            self.heap.push(Reverse((key, ord)));
        }
    }

    fn into_sorted(self) -> Vec<(HitKey, u32)> {
        self.heap.into_iter().map(|Reverse(entry)| entry).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(id: &str, v: &[f32]) -> Result<(String, Vec<f32>)> {
        Ok((id.to_string(), v.to_vec()))
    }

    #[test]
    fn basis_vector_lookup() {
        let store = build_dense_index(vec![
            ok("e1", &[1.0, 0.0, 0.0]),
            ok("e2", &[0.0, 1.0, 0.0]),
            ok("e3", &[0.0, 0.0, 1.0]),
        ])
        .unwrap();
        let hits = store.search(&[0.0, 1.0, 0.0], 1).unwrap();
        assert_eq!(hits, vec![("e2".to_string(), 1.0)]);
    }

    #[test]
    fn dimension_mismatch_names_offender() {
        let err = build_dense_index(vec![ok("a", &[1.0, 2.0, 3.0]), ok("b", &[1.0, 2.0, 3.0, 4.0])])
            .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { id, expected: 3, got: 4 } if id == "b"));
    }

    #[test]
    fn non_finite_rejected() {
        let err = build_dense_index(vec![ok("a", &[1.0, f32::NAN])]).unwrap_err();
        assert!(matches!(err, Error::NonFiniteValue { id } if id == "a"));
    }

    #[test]
    fn empty_store_returns_empty() {
        let store = build_dense_index(Vec::new()).unwrap();
        assert_eq!(store.count(), 0);
        assert!(store.search(&[1.0, 2.0], 5).unwrap().is_empty());
    }

    #[test]
    fn negative_scores_are_retained() {
        let store = build_dense_index(vec![ok("a", &[-1.0]), ok("b", &[-2.0])]).unwrap();
        let hits = store.search(&[1.0], 2).unwrap();
        assert_eq!(hits[0], ("a".to_string(), -1.0));
        assert_eq!(hits[1], ("b".to_string(), -2.0));
    }

    #[test]
    fn ties_break_by_doc_id() {
        let store =
            build_dense_index(vec![ok("z", &[1.0]), ok("a", &[1.0]), ok("m", &[1.0])]).unwrap();
        let ids: Vec<_> = store.search(&[1.0], 3).unwrap().into_iter().map(|h| h.0).collect();
        assert_eq!(ids, ["a", "m", "z"]);
    }

    #[test]
    fn query_dim_checked_when_nonempty() {
        let store = build_dense_index(vec![ok("a", &[1.0, 2.0])]).unwrap();
        assert!(matches!(
            store.search(&[1.0], 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn returns_min_k_count() {
        let store = build_dense_index(vec![ok("a", &[1.0]), ok("b", &[2.0])]).unwrap();
        assert_eq!(store.search(&[1.0], 10).unwrap().len(), 2);
    }
}
