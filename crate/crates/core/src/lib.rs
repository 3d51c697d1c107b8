//! Core engine for zero-shot retrieval benchmarking over the 18-dataset
//! BEIR suite: corpus/run/qrels I/O, analyzers, lexical (BM25) and impact
//! (learned-sparse) inverted indexes, a flat dense-vector store, ranking
//! transforms (min-max fusion, MaxP), trec_eval-compatible metrics, and
//! radar-chart rendering.
//!
//! Retrieval model inference is out of scope: learned sparse and dense
//! representations enter as precomputed vector files.

pub mod analysis;
pub mod data;
pub mod dense;
pub mod error;
pub mod eval;
pub mod lexical;
pub mod radar;
pub mod rankops;
pub mod store;

mod fingerprint;

pub use error::{Error, Result};
