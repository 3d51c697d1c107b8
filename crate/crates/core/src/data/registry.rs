//! The fixed 18-dataset benchmark registry.
//!
//! Rows follow the benchmark's canonical presentation order (TREC-COVID
//! first, SciFact last). Query/judgment counts refer to the test split.

use serde::{Deserialize, Serialize};

/// Number of datasets in the benchmark. A score set is complete only when it
/// covers all of them.
pub const REGISTRY_SIZE: usize = 18;

/// One benchmark dataset: display name, a filesystem/API-safe key, test-split
/// statistics, and its position in the canonical display order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub name: &'static str,
    pub key: &'static str,
    pub num_queries: u64,
    pub num_judgments: u64,
    pub num_passages: u64,
    pub task: &'static str,
    pub domain: &'static str,
    pub display_order: usize,
}

macro_rules! dataset {
    ($order:expr, $name:expr, $key:expr, $q:expr, $j:expr, $p:expr, $task:expr, $domain:expr) => {
        DatasetSpec {
            name: $name,
            key: $key,
            num_queries: $q,
            num_judgments: $j,
            num_passages: $p,
            task: $task,
            domain: $domain,
            display_order: $order,
        }
    };
}

static REGISTRY: [DatasetSpec; REGISTRY_SIZE] = [
    dataset!(0, "TREC-COVID", "trec-covid", 50, 66_336, 171_332, "Bio-Medical IR", "Bio-Medical"),
    dataset!(1, "BioASQ", "bioasq", 500, 2_359, 14_914_602, "Bio-Medical IR", "Bio-Medical"),
    dataset!(2, "NFCorpus", "nfcorpus", 323, 12_334, 3_633, "Bio-Medical IR", "Bio-Medical"),
    dataset!(3, "NQ", "nq", 3_452, 4_201, 2_681_468, "QA", "Wikipedia"),
    dataset!(4, "HotpotQA", "hotpotqa", 7_405, 14_810, 5_233_329, "QA", "Wikipedia"),
    dataset!(5, "FiQA-2018", "fiqa-2018", 648, 1_706, 57_638, "QA", "Finance"),
    dataset!(6, "Signal-1M (RT)", "signal-1m", 97, 1_899, 2_866_316, "Tweet-Retrieval", "Twitter"),
    dataset!(7, "TREC-NEWS", "trec-news", 57, 15_655, 594_977, "News-Retrieval", "News"),
    dataset!(8, "Robust04", "robust04", 249, 311_410, 528_155, "News-Retrieval", "News"),
    dataset!(9, "ArguAna", "arguana", 1_406, 1_406, 8_674, "Argument-Retrieval", "Misc."),
    dataset!(10, "Touché-2020", "touche-2020", 49, 2_214, 382_545, "Argument-Retrieval", "Misc."),
    dataset!(11, "CQADupStack", "cqadupstack", 13_145, 23_703, 457_199, "Dup.-Ques.-Retrieval", "StackExc."),
    dataset!(12, "Quora", "quora", 10_000, 15_675, 522_931, "Dup.-Ques.-Retrieval", "Quora"),
    dataset!(13, "DBPedia", "dbpedia", 400, 43_515, 4_635_922, "Entity-Retrieval", "Wikipedia"),
    dataset!(14, "SCIDOCS", "scidocs", 1_000, 29_928, 25_657, "Citation-Prediction", "Scientific"),
    dataset!(15, "FEVER", "fever", 6_666, 7_937, 5_416_568, "Fact Checking", "Wikipedia"),
    dataset!(16, "Climate-FEVER", "climate-fever", 4_681, 4_682, 5_416_593, "Fact Checking", "Wikipedia"),
    dataset!(17, "SciFact", "scifact", 300, 339, 5_183, "Fact Checking", "Scientific"),
];

/// All 18 datasets in display order.
pub fn registry() -> &'static [DatasetSpec] {
    &REGISTRY
}

impl DatasetSpec {
    /// Looks a dataset up by key or display name (case-insensitive; punctuation
    /// and accents are ignored, so `touche-2020` matches `Touché-2020`).
    pub fn find(name_or_key: &str) -> Option<&'static DatasetSpec> {
        let needle = normalize(name_or_key);
        REGISTRY
            .iter()
            .find(|d| normalize(d.key) == needle || normalize(d.name) == needle)
    }
}

/// Case/punctuation/accent-insensitive form used for dataset lookups.
fn normalize(s: &str) -> String {
    s.chars()
        .filter_map(|c| match c {
            'é' | 'É' | 'è' | 'È' => Some('e'),
            'ó' | 'Ó' => Some('o'),
            c if c.is_ascii_alphanumeric() => Some(c.to_ascii_lowercase()),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn first_and_last_rows() {
        let r = registry();
        assert_eq!(r[0].name, "TREC-COVID");
        assert_eq!(r[0].num_queries, 50);
        assert_eq!(r[0].num_judgments, 66_336);
        assert_eq!(r[0].num_passages, 171_332);
        assert_eq!(r[17].name, "SciFact");
        assert_eq!(r[17].num_queries, 300);
        assert_eq!(r[17].num_judgments, 339);
        assert_eq!(r[17].num_passages, 5_183);
    }

    #[test]
    fn display_order_is_permutation() {
        let r = registry();
        assert_eq!(r.len(), REGISTRY_SIZE);
        let sum: usize = r.iter().map(|d| d.display_order).sum();
        assert_eq!(sum, 153);
        let orders: HashSet<_> = r.iter().map(|d| d.display_order).collect();
        assert_eq!(orders.len(), REGISTRY_SIZE);
        for (i, d) in r.iter().enumerate() {
            assert_eq!(d.display_order, i);
        }
    }

    #[test]
    fn names_and_keys_unique() {
        let r = registry();
        let names: HashSet<_> = r.iter().map(|d| d.name).collect();
        let keys: HashSet<_> = r.iter().map(|d| d.key).collect();
        assert_eq!(names.len(), REGISTRY_SIZE);
        assert_eq!(keys.len(), REGISTRY_SIZE);
    }

    #[test]
    fn lookup_tolerates_accents_and_case() {
        assert_eq!(DatasetSpec::find("touche-2020").unwrap().name, "Touché-2020");
        assert_eq!(DatasetSpec::find("Touché-2020").unwrap().key, "touche-2020");
        assert_eq!(DatasetSpec::find("SCIFACT").unwrap().display_order, 17);
        assert_eq!(DatasetSpec::find("Signal-1M (RT)").unwrap().key, "signal-1m");
        assert!(DatasetSpec::find("msmarco").is_none());
    }
}
