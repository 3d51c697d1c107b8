//! Greedy longest-prefix subword tokenization.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use crate::{fingerprint::Fingerprint, Error, Result};

/// The unknown-token symbol; every vocabulary must contain it.
pub const UNKNOWN_TOKEN: &str = "[UNK]";

/// Continuation prefix carried by non-initial word pieces.
pub const CONTINUATION_PREFIX: &str = "##";

/// A subword vocabulary loaded from a one-token-per-line file
/// (line number = token id).
#[derive(Debug, Clone)]
pub struct WordpieceVocab {
    tokens: Vec<String>,
    ids: HashMap<String, u32>,
    fingerprint: String,
}

impl WordpieceVocab {
    pub fn from_tokens(tokens: Vec<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::InvalidArgument("empty wordpiece vocabulary".into()));
        }
        let mut ids = HashMap::with_capacity(tokens.len());
        let mut fp = Fingerprint::new();
        for (i, token) in tokens.iter().enumerate() {
            fp.update(token.as_bytes());
            fp.update(b"\n");
            if ids.insert(token.clone(), i as u32).is_some() {
                return Err(Error::DuplicateId {
                    id: token.clone(),
                    context: "wordpiece vocabulary".into(),
                });
            }
        }
        if !ids.contains_key(UNKNOWN_TOKEN) {
            return Err(Error::InvalidArgument(format!(
                "wordpiece vocabulary lacks the unknown symbol `{UNKNOWN_TOKEN}`"
            )));
        }
        Ok(WordpieceVocab {
            tokens,
            ids,
            fingerprint: fp.finish(),
        })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let tokens = std::io::BufReader::new(file)
            .lines()
            .collect::<std::io::Result<Vec<_>>>()
            .map_err(|e| Error::io(path, e))?;
        Self::from_tokens(tokens)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.ids.contains_key(token)
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// Tokens in id order (line order of the source file).
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Content hash of the vocabulary, recorded in index manifests.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }
}

/// Splits one lowercase word into pieces by greedy longest-prefix matching;
/// `None` when no full decomposition exists (caller substitutes the unknown
/// symbol).
pub fn split_word(word: &str, vocab: &WordpieceVocab) -> Option<Vec<String>> {
    let mut pieces = Vec::new();
    let bounds: Vec<usize> = word
        .char_indices()
        .map(|(i, _)| i)
        .chain(std::iter::once(word.len()))
        .collect();
    let mut start_idx = 0;
    while start_idx < bounds.len() - 1 {
        let start = bounds[start_idx];
        let mut matched = None;
        for end_idx in (start_idx + 1..bounds.len()).rev() {
            let end = bounds[end_idx];
            let piece = if start == 0 {
                word[start..end].to_string()
            } else {
                format!("{CONTINUATION_PREFIX}{}", &word[start..end])
            };
            if vocab.contains(&piece) {
                matched = Some((piece, end_idx));
                break;
            }
        }
        let (piece, end_idx) = matched?;
        pieces.push(piece);
        start_idx = end_idx;
    }
    Some(pieces)
}
