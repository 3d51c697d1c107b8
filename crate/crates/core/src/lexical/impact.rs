//! Impact index: an inverted index whose postings carry learned term
//! weights (precomputed model outputs) instead of term frequencies.
//! Scoring is a sparse dot product over shared terms.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Posting weight storage rule.
///
/// `Fixed` stores `min(round(w * scale), cap)` — 8-bit style impact
/// quantization with the default scale 100 / cap 255. Query weights are
/// quantized with the same rule, so quantized scores are integer dot
/// products. `None` keeps weights bit-exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Quantization {
    None,
    Fixed { scale: f64, cap: u32 },
}

impl Default for Quantization {
    fn default() -> Self {
        Quantization::Fixed { scale: 100.0, cap: 255 }
    }
}

impl Quantization {
    pub fn apply(&self, weight: f64) -> f64 {
        match *self {
            Quantization::None => weight,
            Quantization::Fixed { scale, cap } => (weight * scale).round().min(cap as f64),
        }
    }
}

/// One impact posting: document ordinal and stored weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpactPosting {
    pub doc: u32,
    pub weight: f64,
}

/// Frozen impact index over precomputed sparse vectors.
#[derive(Debug, Clone)]
pub struct ImpactIndex {
    pub(crate) postings: BTreeMap<String, Vec<ImpactPosting>>,
    pub(crate) doc_ids: Vec<String>,
    pub(crate) quantization: Quantization,
}

/// Builds an impact index from a stream of (id, term -> weight) vectors.
/// Weights must be non-negative; terms whose stored weight quantizes to
/// zero are not indexed.
pub fn build_impact_index(
    vectors: impl IntoIterator<Item = Result<(String, BTreeMap<String, f64>)>>,
    quantization: Quantization,
) -> Result<ImpactIndex> {
    let mut postings: BTreeMap<String, Vec<ImpactPosting>> = BTreeMap::new();
    let mut doc_ids = Vec::new();
    let mut seen = HashSet::new();
    for record in vectors {
        let (id, vector) = record?;
        if !seen.insert(id.clone()) {
            return Err(Error::DuplicateId { id, context: "impact index build".into() });
        }
        let ordinal = u32::try_from(doc_ids.len())
            .map_err(|_| Error::InvalidArgument("corpus exceeds u32 ordinals".into()))?;
        for (term, weight) in vector {
            if weight < 0.0 {
                return Err(Error::NegativeWeight { id, term, weight });
            }
            let stored = quantization.apply(weight);
            if stored > 0.0 {
                postings
                    .entry(term)
                    .or_default()
                    .push(ImpactPosting { doc: ordinal, weight: stored });
            }
        }
        doc_ids.push(id);
    }
    Ok(ImpactIndex { postings, doc_ids, quantization })
}

impl ImpactIndex {
    pub fn doc_count(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn quantization(&self) -> Quantization {
        self.quantization
    }

    pub fn stored_weight(&self, term: &str, doc_id: &str) -> Option<f64> {
        let ord = self.doc_ids.iter().position(|d| d == doc_id)? as u32;
        self.postings
            .get(term)?
            .iter()
            .find(|p| p.doc == ord)
            .map(|p| p.weight)
    }

    /// Sparse dot-product search. Query weights are quantized with the
    /// index's own rule; ties break by doc id ascending and zero-score
    /// documents are omitted.
    pub fn search(&self, query: &BTreeMap<String, f64>, k: usize) -> Result<Vec<(String, f64)>> {
        if k < 1 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        let mut scores: HashMap<u32, f64> = HashMap::new();
        for (term, &raw_weight) in query {
            if raw_weight < 0.0 {
                return Err(Error::NegativeWeight {
                    id: "<query>".into(),
                    term: term.clone(),
                    weight: raw_weight,
                });
            }
            let qw = self.quantization.apply(raw_weight);
            if qw <= 0.0 {
                continue;
            }
            let Some(postings) = self.postings.get(term) else {
                continue;
            };
            for posting in postings {
                *scores.entry(posting.doc).or_default() += qw * posting.weight;
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

    pub fn fingerprint(&self) -> String {
        crate::store::impact_fingerprint(self)
    }

    pub fn save(&self, dir: &std::path::Path) -> Result<()> {
        crate::store::save_impact(self, dir)
    }
}
