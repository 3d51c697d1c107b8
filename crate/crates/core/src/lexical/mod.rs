//! Inverted index with flat and multi-field BM25 ranking.
//!
//! Two field layouts are supported: `flat` concatenates title and body into
//! a single `contents` field; `multifield` indexes `title` and `contents`
//! separately, each with its own length statistics, combined at query time
//! by a weighted sum of per-field scores.

mod impact;

pub use impact::{build_impact_index, ImpactIndex, ImpactPosting, Quantization};

use std::collections::{BTreeMap, HashMap};

use crate::analysis::Analyzer;
use crate::data::Document;
use crate::{Error, Result};

pub const FIELD_TITLE: &str = "title";
pub const FIELD_CONTENTS: &str = "contents";

/// BM25 free parameters. The defaults (k1 = 0.9, b = 0.4) are the common
/// toolkit defaults for this benchmark family and are surfaced as flags.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params { k1: 0.9, b: 0.4 }
    }
}

impl Bm25Params {
    pub fn new(k1: f64, b: f64) -> Result<Self> {
        if !(k1 >= 0.0) {
            return Err(Error::InvalidArgument(format!("k1 must be >= 0, got {k1}")));
        }
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::InvalidArgument(format!("b must be in [0, 1], got {b}")));
        }
        Ok(Bm25Params { k1, b })
    }
}

/// Title/body field layout of a lexical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldMode {
    Flat,
    Multifield,
}

impl FieldMode {
    /// The equal-weight query layout for this mode.
    pub fn default_field_weights(self) -> BTreeMap<String, f64> {
        match self {
            FieldMode::Flat => BTreeMap::from([(FIELD_CONTENTS.to_string(), 1.0)]),
            FieldMode::Multifield => BTreeMap::from([
                (FIELD_CONTENTS.to_string(), 1.0),
                (FIELD_TITLE.to_string(), 1.0),
            ]),
        }
    }
}

/// One postings entry: document ordinal and term frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc: u32,
    pub tf: u32,
}

#[derive(Debug, Default, Clone)]
pub(crate) struct FieldIndex {
    pub(crate) postings: BTreeMap<String, Vec<Posting>>,
    pub(crate) doc_lengths: Vec<u32>,
    pub(crate) total_len: u64,
}

impl FieldIndex {
    fn avg_len(&self) -> f64 {
        if self.doc_lengths.is_empty() {
            0.0
        } else {
            self.total_len as f64 / self.doc_lengths.len() as f64
        }
    }

    fn add_document(&mut self, ordinal: u32, tokens: &[String]) {
        self.doc_lengths.push(tokens.len() as u32);
        self.total_len += tokens.len() as u64;
        let mut counts: HashMap<&str, u32> = HashMap::new();
        for token in tokens {
            *counts.entry(token.as_str()).or_default() += 1;
        }
        for (term, tf) in counts {
            self.postings
                .entry(term.to_string())
                .or_default()
                .push(Posting { doc: ordinal, tf });
        }
    }
}

/// Frozen inverted index over an analyzed corpus. Immutable after build;
/// searches are read-only and safe to run concurrently.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    pub(crate) mode: FieldMode,
    pub(crate) fields: BTreeMap<String, FieldIndex>,
    pub(crate) doc_ids: Vec<String>,
    pub(crate) analyzer_fingerprint: String,
}

/// Builds an inverted index over a corpus stream. Document ids must be
/// unique (the corpus reader enforces this for file-backed corpora).
pub fn build_lexical_index(
    corpus: impl IntoIterator<Item = Result<Document>>,
    analyzer: &Analyzer,
    mode: FieldMode,
) -> Result<InvertedIndex> {
    let mut fields: BTreeMap<String, FieldIndex> = match mode {
        FieldMode::Flat => BTreeMap::from([(FIELD_CONTENTS.to_string(), FieldIndex::default())]),
        FieldMode::Multifield => BTreeMap::from([
            (FIELD_CONTENTS.to_string(), FieldIndex::default()),
            (FIELD_TITLE.to_string(), FieldIndex::default()),
        ]),
    };
    let mut doc_ids = Vec::new();
    for doc in corpus {
        let doc = doc?;
        let ordinal = u32::try_from(doc_ids.len())
            .map_err(|_| Error::InvalidArgument("corpus exceeds u32 ordinals".into()))?;
        match mode {
            FieldMode::Flat => {
                let combined = format!("{} {}", doc.title, doc.text);
                let tokens = analyzer.analyze(&combined);
                fields.get_mut(FIELD_CONTENTS).unwrap().add_document(ordinal, &tokens);
            }
            FieldMode::Multifield => {
                let title_tokens = analyzer.analyze(&doc.title);
                let body_tokens = analyzer.analyze(&doc.text);
                fields.get_mut(FIELD_TITLE).unwrap().add_document(ordinal, &title_tokens);
                fields.get_mut(FIELD_CONTENTS).unwrap().add_document(ordinal, &body_tokens);
            }
        }
        doc_ids.push(doc.id);
    }
    Ok(InvertedIndex {
        mode,
        fields,
        doc_ids,
        analyzer_fingerprint: analyzer.fingerprint(),
    })
}

/// The pinned BM25 scoring function for one (term, document) pair:
///
/// ```text
/// idf   = ln(1 + (N - df + 0.5) / (df + 0.5))
/// score = idf * tf / (tf + k1 * (1 - b + b * doc_len / avg_len))
/// ```
pub fn bm25_term_score(
    tf: u32,
    doc_len: u32,
    avg_len: f64,
    df: usize,
    n: usize,
    params: &Bm25Params,
) -> Result<f64> {
    if tf < 1 {
        return Err(Error::InvalidArgument("bm25: tf must be >= 1".into()));
    }
    if df < 1 || df > n {
        return Err(Error::InvalidArgument(format!(
            "bm25: need N >= df >= 1, got N={n}, df={df}"
        )));
    }
    if !(avg_len > 0.0) {
        return Err(Error::InvalidArgument("bm25: avg_len must be > 0".into()));
    }
    Ok(bm25_idf(df, n) * bm25_tf_norm(tf, doc_len, avg_len, params))
}

#[inline]
fn bm25_idf(df: usize, n: usize) -> f64 {
    (1.0 + (n as f64 - df as f64 + 0.5) / (df as f64 + 0.5)).ln()
}

#[inline]
fn bm25_tf_norm(tf: u32, doc_len: u32, avg_len: f64, params: &Bm25Params) -> f64 {
    let tf = tf as f64;
    tf / (tf + params.k1 * (1.0 - params.b + params.b * doc_len as f64 / avg_len))
}

impl InvertedIndex {
    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn doc_count(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn doc_id(&self, ordinal: u32) -> Option<&str> {
        self.doc_ids.get(ordinal as usize).map(String::as_str)
    }

    pub fn field_names(&self) -> impl Iterator<Item = &str> {
        self.fields.keys().map(String::as_str)
    }

    pub fn analyzer_fingerprint(&self) -> &str {
        &self.analyzer_fingerprint
    }

    pub fn avg_len(&self, field: &str) -> Result<f64> {
        Ok(self.field(field)?.avg_len())
    }

    /// Document frequency of `term` in `field`.
    pub fn df(&self, field: &str, term: &str) -> Result<usize> {
        Ok(self.field(field)?.postings.get(term).map_or(0, Vec::len))
    }

    fn field(&self, name: &str) -> Result<&FieldIndex> {
        self.fields.get(name).ok_or_else(|| Error::UnknownField(name.to_string()))
    }

    /// BM25 search over the given fields. The document score is the
    /// weighted sum over fields of per-field BM25 scores, each computed
    /// with that field's own statistics. Ties break by doc id ascending;
    /// zero-score documents are omitted, so fewer than `k` results may
    /// return.
    pub fn search(
        &self,
        query: &str,
        analyzer: &Analyzer,
        k: usize,
        field_weights: &BTreeMap<String, f64>,
        params: &Bm25Params,
    ) -> Result<Vec<(String, f64)>> {
        if k < 1 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        if analyzer.fingerprint() != self.analyzer_fingerprint {
            return Err(Error::AnalyzerMismatch {
                expected: self.analyzer_fingerprint.clone(),
                got: analyzer.fingerprint(),
            });
        }
        for field in field_weights.keys() {
            self.field(field)?;
        }
        let terms = analyzer.analyze(query);
        if terms.is_empty() || self.doc_ids.is_empty() {
            return Ok(Vec::new());
        }

        let n = self.doc_count();
        let mut scores: HashMap<u32, f64> = HashMap::new();
        for (field_name, &weight) in field_weights {
            let field = self.field(field_name)?;
            let avg_len = field.avg_len();
            for term in &terms {
                let Some(postings) = field.postings.get(term) else {
                    continue;
                };
                let idf = bm25_idf(postings.len(), n);
                for posting in postings {
                    let doc_len = field.doc_lengths[posting.doc as usize];
                    let contribution =
                        weight * idf * bm25_tf_norm(posting.tf, doc_len, avg_len, params);
                    *scores.entry(posting.doc).or_default() += contribution;
                }
            }
        }

        let mut hits: Vec<(u32, f64)> = scores.into_iter().filter(|&(_, s)| s > 0.0).collect();
        hits.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then_with(|| self.doc_ids[a.0 as usize].cmp(&self.doc_ids[b.0 as usize]))
        });
        hits.truncate(k);
        Ok(hits
            .into_iter()
            .map(|(ord, score)| (self.doc_ids[ord as usize].clone(), score))
            .collect())
    }

    /// Stable content hash over the canonical serialization; identical
    /// corpus, analyzer, and mode yield identical fingerprints.
    pub fn fingerprint(&self) -> String {
        crate::store::lexical_fingerprint(self)
    }

    /// Persists the index as a versioned directory (manifest + postings;
    /// wordpiece vocabularies are copied in so the directory is
    /// self-contained).
    pub fn save(&self, dir: &std::path::Path, analyzer: &Analyzer) -> Result<()> {
        crate::store::save_lexical(self, dir, analyzer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_corpus() -> Vec<Result<Document>> {
        vec![
            Ok(Document { id: "d1".into(), title: "".into(), text: "cat sat".into() }),
            Ok(Document { id: "d2".into(), title: "".into(), text: "cat cat dog".into() }),
            Ok(Document { id: "d3".into(), title: "".into(), text: "dog".into() }),
        ]
    }

    #[test]
    fn bm25_term_score_fixture() {
        let p = Bm25Params::default();
        let s1 = bm25_term_score(1, 2, 2.0, 2, 3, &p).unwrap();
        assert!((s1 - 0.2474).abs() < 1e-4, "got {s1}");
        let s2 = bm25_term_score(2, 3, 2.0, 2, 3, &p).unwrap();
        assert!((s2 - 0.3052).abs() < 1e-4, "got {s2}");
    }

    #[test]
    fn bm25_saturates_at_idf() {
        // df == N: as tf grows the score approaches idf from below.
        let p = Bm25Params::default();
        let n = 5;
        let idf = (1.0 + 0.5 / (n as f64 + 0.5)).ln();
        let s = bm25_term_score(1_000_000, 10, 10.0, n, n, &p).unwrap();
        assert!(s < idf);
        assert!((s - idf).abs() < 1e-4);
    }

    #[test]
    fn bm25_monotonicity() {
        let p = Bm25Params::default();
        let base = bm25_term_score(2, 10, 8.0, 3, 20, &p).unwrap();
        assert!(bm25_term_score(3, 10, 8.0, 3, 20, &p).unwrap() > base);
        assert!(bm25_term_score(2, 12, 8.0, 3, 20, &p).unwrap() < base);
    }

    #[test]
    fn bm25_precondition_violations() {
        let p = Bm25Params::default();
        assert!(bm25_term_score(0, 2, 2.0, 1, 3, &p).is_err());
        assert!(bm25_term_score(1, 2, 2.0, 0, 3, &p).is_err());
        assert!(bm25_term_score(1, 2, 2.0, 4, 3, &p).is_err());
        assert!(bm25_term_score(1, 2, 0.0, 1, 3, &p).is_err());
    }

    #[test]
    fn build_counts_fixture() {
        let idx = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        assert_eq!(idx.doc_count(), 3);
        assert_eq!(idx.df(FIELD_CONTENTS, "cat").unwrap(), 2);
        assert_eq!(idx.df(FIELD_CONTENTS, "dog").unwrap(), 2);
        assert_eq!(idx.avg_len(FIELD_CONTENTS).unwrap(), 2.0);
    }

    #[test]
    fn search_fixture_ordering_and_scores() {
        let idx = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        let hits = idx
            .search(
                "cat",
                &Analyzer::whitespace(),
                10,
                &FieldMode::Flat.default_field_weights(),
                &Bm25Params::default(),
            )
            .unwrap();
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].0, "d2");
        assert!((hits[0].1 - 0.3052).abs() < 1e-4);
        assert_eq!(hits[1].0, "d1");
        assert!((hits[1].1 - 0.2474).abs() < 1e-4);
    }

    #[test]
    fn search_out_of_vocabulary_is_empty() {
        let idx = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        let hits = idx
            .search(
                "weasel",
                &Analyzer::whitespace(),
                10,
                &FieldMode::Flat.default_field_weights(),
                &Bm25Params::default(),
            )
            .unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn search_unknown_field_errors() {
        let idx = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        let weights = BTreeMap::from([("body".to_string(), 1.0)]);
        let err = idx
            .search("cat", &Analyzer::whitespace(), 10, &weights, &Bm25Params::default())
            .unwrap_err();
        assert!(matches!(err, Error::UnknownField(f) if f == "body"));
    }

    #[test]
    fn search_analyzer_mismatch_errors() {
        let idx = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        let err = idx
            .search(
                "cat",
                &Analyzer::english(),
                10,
                &FieldMode::Flat.default_field_weights(),
                &Bm25Params::default(),
            )
            .unwrap_err();
        assert!(matches!(err, Error::AnalyzerMismatch { .. }));
    }

    #[test]
    fn empty_title_flat_equals_multifield_contents() {
        let flat = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        let multi =
            build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Multifield)
                .unwrap();
        for term in ["cat", "dog", "sat"] {
            assert_eq!(
                flat.df(FIELD_CONTENTS, term).unwrap(),
                multi.df(FIELD_CONTENTS, term).unwrap()
            );
        }
        assert_eq!(multi.avg_len(FIELD_TITLE).unwrap(), 0.0);
    }

    #[test]
    fn empty_corpus() {
        let idx = build_lexical_index(Vec::new(), &Analyzer::whitespace(), FieldMode::Flat).unwrap();
        assert_eq!(idx.doc_count(), 0);
        let hits = idx
            .search(
                "cat",
                &Analyzer::whitespace(),
                5,
                &FieldMode::Flat.default_field_weights(),
                &Bm25Params::default(),
            )
            .unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn fingerprint_is_deterministic() {
        let a = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        let b = build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Flat)
            .unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let multi =
            build_lexical_index(fixture_corpus(), &Analyzer::whitespace(), FieldMode::Multifield)
                .unwrap();
        assert_ne!(a.fingerprint(), multi.fingerprint());
    }
}
