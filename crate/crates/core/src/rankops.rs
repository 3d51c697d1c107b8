//! Cross-backend ranking transforms: per-query min-max normalization,
//! dense–sparse hybrid averaging, and MaxP passage-to-document aggregation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::data::Ranking;
use crate::{Error, Result};

/// Hybrid fusion parameters. Both runs are truncated to `depth` first and
/// normalized within the retrieved pool; a document absent from one side
/// contributes `missing_score` (a post-normalization value) for that side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FusionConfig {
    pub depth: usize,
    pub missing_score: f64,
    pub weight_a: f64,
    pub weight_b: f64,
}

impl Default for FusionConfig {
    fn default() -> Self {
        FusionConfig { depth: 1000, missing_score: 0.0, weight_a: 0.5, weight_b: 0.5 }
    }
}

impl FusionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 1 {
            return Err(Error::InvalidArgument("fusion depth must be >= 1".into()));
        }
        if (self.weight_a + self.weight_b - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "fusion weights must sum to 1, got {} + {}",
                self.weight_a, self.weight_b
            )));
        }
        Ok(())
    }
}

/// Queries that appeared in only one of the two fused runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FusionWarnings {
    pub queries_only_in_a: Vec<String>,
    pub queries_only_in_b: Vec<String>,
}

impl FusionWarnings {
    pub fn is_empty(&self) -> bool {
        self.queries_only_in_a.is_empty() && self.queries_only_in_b.is_empty()
    }
}

/// Min-max normalizes one scored list into [0, 1], preserving order:
/// `(s - min) / (max - min)`. A constant list maps every entry to 1.0 (it
/// carries no discriminative signal, and treating all entries as top avoids
/// zeroing out one side of a hybrid).
pub fn minmax_normalize(entries: Vec<(String, f64)>) -> Result<Vec<(String, f64)>> {
    let scores = minmax_scores(&entries.iter().map(|e| e.1).collect::<Vec<_>>())?;
    Ok(entries
        .into_iter()
        .zip(scores)
        .map(|((doc, _), s)| (doc, s))
        .collect())
}

fn minmax_scores(scores: &[f64]) -> Result<Vec<f64>> {
    if scores.is_empty() {
        return Err(Error::InvalidArgument("cannot normalize an empty list".into()));
    }
    let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return Ok(vec![1.0; scores.len()]);
    }
    Ok(scores.iter().map(|&s| (s - min) / (max - min)).collect())
}

/// Fuses two runs per query: truncate both to `cfg.depth`, min-max
/// normalize each, then score every retrieved document as
/// `weight_a * norm_a + weight_b * norm_b` (missing side contributes
/// `cfg.missing_score`). Queries present in only one run are fused from
/// that run alone and reported in the warnings.
pub fn hybrid_average(
    run_a: &Ranking,
    run_b: &Ranking,
    cfg: &FusionConfig,
) -> Result<(Ranking, FusionWarnings)> {
    cfg.validate()?;
    run_a.validate()?;
    run_b.validate()?;

    let mut warnings = FusionWarnings::default();
    let query_ids: BTreeSet<&str> = run_a.query_ids().chain(run_b.query_ids()).collect();
    let mut fused = Ranking::new("hybrid");
    for qid in query_ids {
        let side_a = normalized_side(run_a, qid, cfg.depth)?;
        let side_b = normalized_side(run_b, qid, cfg.depth)?;
        match (side_a.is_some(), side_b.is_some()) {
            (true, false) => warnings.queries_only_in_a.push(qid.to_string()),
            (false, true) => warnings.queries_only_in_b.push(qid.to_string()),
            _ => {}
        }
        let side_a = side_a.unwrap_or_default();
        let side_b = side_b.unwrap_or_default();

        let docs: BTreeSet<&String> = side_a.keys().chain(side_b.keys()).collect();
        let hits: Vec<(String, f64)> = docs
            .into_iter()
            .map(|doc| {
                let a = side_a.get(doc).copied().unwrap_or(cfg.missing_score);
                let b = side_b.get(doc).copied().unwrap_or(cfg.missing_score);
                (doc.clone(), cfg.weight_a * a + cfg.weight_b * b)
            })
            .collect();
        fused.insert_query_sorted(qid.to_string(), hits, usize::MAX);
    }
    Ok((fused, warnings))
}

/// One run's contribution for a query: top-`depth` docs, min-max normalized.
/// `None` when the query is absent from the run.
fn normalized_side(
    run: &Ranking,
    qid: &str,
    depth: usize,
) -> Result<Option<BTreeMap<String, f64>>> {
    let Some(docs) = run.get(qid) else {
        return Ok(None);
    };
    if docs.is_empty() {
        return Ok(None);
    }
    let pool: Vec<(String, f64)> = docs
        .iter()
        .take(depth)
        .map(|d| (d.doc_id.clone(), d.score))
        .collect();
    Ok(Some(minmax_normalize(pool)?.into_iter().collect()))
}

/// Collapses a passage-level run to a document-level run: each document
/// scores the maximum over its passages. Passage ids follow
/// `<doc_id><separator><window_index>`; ids without the separator are
/// treated as already document-level, so the transform is idempotent.
pub fn maxp_aggregate(passage_run: &Ranking, separator: &str) -> Result<Ranking> {
    if separator.is_empty() {
        return Err(Error::InvalidArgument("passage separator must be nonempty".into()));
    }
    passage_run.validate()?;
    let mut out = Ranking::new(passage_run.tag.clone());
    for (qid, docs) in passage_run.iter() {
        let mut best: BTreeMap<String, f64> = BTreeMap::new();
        for entry in docs {
            let doc_id = parent_doc_id(&entry.doc_id, separator)?;
            best.entry(doc_id.to_string())
                .and_modify(|s| *s = s.max(entry.score))
                .or_insert(entry.score);
        }
        let hits: Vec<(String, f64)> = best.into_iter().collect();
        out.insert_query_sorted(qid.to_string(), hits, usize::MAX);
    }
    Ok(out)
}

/// Strips a `<separator><window_index>` suffix; the suffix must be a
/// non-negative integer when the separator is present.
fn parent_doc_id<'a>(passage_id: &'a str, separator: &str) -> Result<&'a str> {
    match passage_id.rsplit_once(separator) {
        None => Ok(passage_id),
        Some((doc_id, suffix)) => {
            if doc_id.is_empty() || suffix.parse::<u64>().is_err() {
                return Err(Error::MalformedPassageId(passage_id.to_string()));
            }
            Ok(doc_id)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_of(tag: &str, queries: &[(&str, &[(&str, f64)])]) -> Ranking {
        let mut r = Ranking::new(tag);
        for (qid, hits) in queries {
            r.insert_query(
                qid.to_string(),
                hits.iter().map(|(d, s)| (d.to_string(), *s)).collect(),
            );
        }
        r
    }

    fn ids(r: &Ranking, qid: &str) -> Vec<String> {
        r.get(qid).unwrap().iter().map(|d| d.doc_id.clone()).collect()
    }

    #[test]
    fn minmax_endpoints_and_midpoint() {
        let out = minmax_normalize(vec![
            ("a".into(), 10.0),
            ("b".into(), 5.0),
            ("c".into(), 0.0),
        ])
        .unwrap();
        assert_eq!(out[0].1, 1.0);
        assert_eq!(out[1].1, 0.5);
        assert_eq!(out[2].1, 0.0);
    }

    #[test]
    fn minmax_constant_list_maps_to_one() {
        let out = minmax_normalize(vec![("a".into(), 3.0), ("b".into(), 3.0)]).unwrap();
        assert!(out.iter().all(|(_, s)| *s == 1.0));
    }

    #[test]
    fn minmax_empty_is_error() {
        assert!(minmax_normalize(Vec::new()).is_err());
    }

    #[test]
    fn minmax_affine_invariance_exact_for_pow2_scale() {
        let base = [9.0, 5.0, 1.0, 0.0];
        let transformed: Vec<f64> = base.iter().map(|s| 2.0 * s + 7.0).collect();
        assert_eq!(minmax_scores(&base).unwrap(), minmax_scores(&transformed).unwrap());
    }

    #[test]
    fn hybrid_mean_and_missing_rule() {
        // d1 norms: (1.0, 1.0) -> 1.0; d2: (0, missing) -> 0; d3 only in b.
        let a = run_of("a", &[("q1", &[("d1", 4.0), ("d2", 2.0)])]);
        let b = run_of("b", &[("q1", &[("d1", 9.0), ("d3", 3.0)])]);
        let (fused, warnings) = hybrid_average(&a, &b, &FusionConfig::default()).unwrap();
        assert!(warnings.is_empty());
        let docs = fused.get("q1").unwrap();
        let score_of = |id: &str| docs.iter().find(|d| d.doc_id == id).unwrap().score;
        assert_eq!(score_of("d1"), 1.0);
        assert_eq!(score_of("d2"), 0.0);
        assert_eq!(score_of("d3"), 0.0);
    }

    #[test]
    fn hybrid_norms_example() {
        // Norms (0.8, 0.4) -> 0.6 with equal weights; single-sided 0.8 -> 0.4.
        let a = run_of("a", &[("q1", &[("top", 10.0), ("d", 8.0), ("bot", 0.0)])]);
        let b = run_of("b", &[("q1", &[("top", 5.0), ("d", 2.0), ("bot", 0.0)])]);
        let (fused, _) = hybrid_average(&a, &b, &FusionConfig::default()).unwrap();
        let d = fused.get("q1").unwrap().iter().find(|x| x.doc_id == "d").unwrap();
        assert!((d.score - 0.6).abs() < 1e-12);

        let b_without_d = run_of("b", &[("q1", &[("top", 5.0), ("bot", 0.0)])]);
        let (fused, _) = hybrid_average(&a, &b_without_d, &FusionConfig::default()).unwrap();
        let d = fused.get("q1").unwrap().iter().find(|x| x.doc_id == "d").unwrap();
        assert!((d.score - 0.4).abs() < 1e-12);
    }

    #[test]
    fn hybrid_single_sided_query_warns() {
        let a = run_of("a", &[("q1", &[("d1", 1.0)]), ("q2", &[("d2", 1.0)])]);
        let b = run_of("b", &[("q1", &[("d1", 1.0)])]);
        let (fused, warnings) = hybrid_average(&a, &b, &FusionConfig::default()).unwrap();
        assert_eq!(warnings.queries_only_in_a, vec!["q2".to_string()]);
        assert!(warnings.queries_only_in_b.is_empty());
        // q2 fused from run a alone: norm 1.0 * 0.5.
        assert_eq!(fused.get("q2").unwrap()[0].score, 0.5);
    }

    #[test]
    fn hybrid_weights_one_zero_reproduces_side_a() {
        let a = run_of(
            "a",
            &[("q1", &[("x", 3.0), ("y", 2.0), ("z", 1.0)])],
        );
        let b = run_of("b", &[("q1", &[("z", 9.0), ("x", 1.0)])]);
        let cfg = FusionConfig { weight_a: 1.0, weight_b: 0.0, ..FusionConfig::default() };
        let (fused, _) = hybrid_average(&a, &b, &cfg).unwrap();
        assert_eq!(ids(&fused, "q1"), vec!["x", "y", "z"]);
    }

    #[test]
    fn hybrid_depth_truncates_before_normalizing() {
        let a = run_of("a", &[("q1", &[("x", 3.0), ("y", 2.0), ("z", 1.0)])]);
        let b = run_of("b", &[("q1", &[("x", 3.0)])]);
        let cfg = FusionConfig { depth: 2, ..FusionConfig::default() };
        let (fused, _) = hybrid_average(&a, &b, &cfg).unwrap();
        // z was cut by depth on side a and absent from b.
        assert!(fused.get("q1").unwrap().iter().all(|d| d.doc_id != "z"));
        // y is now the pool minimum on side a -> norm 0.
        let y = fused.get("q1").unwrap().iter().find(|d| d.doc_id == "y").unwrap();
        assert_eq!(y.score, 0.0);
    }

    #[test]
    fn hybrid_scores_stay_in_unit_interval() {
        let a = run_of("a", &[("q1", &[("x", 130.0), ("z", 1.0), ("y", -20.0)])]);
        let b = run_of("b", &[("q1", &[("w", 0.9), ("x", 0.2)])]);
        let (fused, _) = hybrid_average(&a, &b, &FusionConfig::default()).unwrap();
        for d in fused.get("q1").unwrap() {
            assert!((0.0..=1.0).contains(&d.score));
        }
    }

    #[test]
    fn hybrid_rejects_bad_weights() {
        let a = run_of("a", &[]);
        let cfg = FusionConfig { weight_a: 0.7, weight_b: 0.7, ..FusionConfig::default() };
        assert!(hybrid_average(&a, &a, &cfg).is_err());
    }

    #[test]
    fn maxp_takes_max_per_document() {
        let run = run_of("t", &[("q1", &[("d1#0", 0.9), ("d2#0", 0.8), ("d1#1", 0.7)])]);
        let out = maxp_aggregate(&run, "#").unwrap();
        let docs = out.get("q1").unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].doc_id, "d1");
        assert_eq!(docs[0].score, 0.9);
        assert_eq!(docs[1].doc_id, "d2");
        assert_eq!(docs[1].score, 0.8);
    }

    #[test]
    fn maxp_single_passage_identity() {
        let run = run_of("t", &[("q1", &[("d1#0", 0.9), ("d2#3", 0.8)])]);
        let out = maxp_aggregate(&run, "#").unwrap();
        let docs = out.get("q1").unwrap();
        assert_eq!(docs[0].doc_id, "d1");
        assert_eq!(docs[1].doc_id, "d2");
        assert_eq!(docs[0].score, 0.9);
        assert_eq!(docs[1].score, 0.8);
    }

    #[test]
    fn maxp_is_idempotent_on_document_runs() {
        let run = run_of("t", &[("q1", &[("d1#0", 0.9), ("d2#0", 0.8)])]);
        let once = maxp_aggregate(&run, "#").unwrap();
        let twice = maxp_aggregate(&once, "#").unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn maxp_malformed_suffix_is_error() {
        let run = run_of("t", &[("q1", &[("d1#x", 0.9)])]);
        let err = maxp_aggregate(&run, "#").unwrap_err();
        assert!(matches!(err, Error::MalformedPassageId(id) if id == "d1#x"));
    }
}
