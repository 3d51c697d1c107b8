//! Rule-based sentence splitting and sliding-window passage generation
//! (the MaxP segmentation side; FirstP is a token-boundary prefix cut).

use serde::{Deserialize, Serialize};

use super::Analyzer;
use crate::{Error, Result};

/// Separator between a parent doc id and a window index in passage ids.
pub const DEFAULT_PASSAGE_SEPARATOR: &str = "#";

/// Words (including their trailing dot) that never terminate a sentence.
/// Deliberately minimal; differences versus heavyweight sentence chunkers
/// are accepted and documented.
const ABBREVIATIONS: [&str; 13] = [
    "e.g.", "i.e.", "etc.", "cf.", "vs.", "dr.", "mr.", "mrs.", "ms.", "prof.", "fig.", "no.",
    "al.",
];

/// Byte range of one sentence (whitespace-trimmed, half-open).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub start: usize,
    pub end: usize,
}

/// Sliding-window geometry in sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowConfig {
    pub window_size: usize,
    pub stride: usize,
}

impl WindowConfig {
    pub fn new(window_size: usize, stride: usize) -> Result<Self> {
        if window_size < 1 {
            return Err(Error::InvalidArgument("window_size must be >= 1".into()));
        }
        if stride < 1 || stride > window_size {
            return Err(Error::InvalidArgument(
                "stride must be in 1..=window_size".into(),
            ));
        }
        Ok(WindowConfig { window_size, stride })
    }
}

/// One sliding-window passage of a parent document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passage {
    pub parent_doc_id: String,
    pub window_index: usize,
    pub text: String,
    /// Half-open sentence index range this window covers.
    pub sentence_span: (usize, usize),
}

impl Passage {
    /// Passage id in the `<doc_id><sep><window_index>` convention consumed
    /// by MaxP aggregation.
    pub fn id(&self, separator: &str) -> String {
        format!("{}{}{}", self.parent_doc_id, separator, self.window_index)
    }
}

/// Splits text into sentences. A sentence ends at a run of `.` `!` `?`
/// followed by whitespace and then an uppercase letter, a digit, or the end
/// of the text; a single `.` closing a known abbreviation does not count.
/// Text without any terminator is one sentence. Spans are trimmed of
/// surrounding whitespace.
pub fn split_sentences(text: &str) -> Vec<SentenceSpan> {
    let mut spans = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut sent_start: Option<usize> = None;
    let mut last_non_ws_end = 0usize;

    while let Some((i, c)) = chars.next() {
        if !c.is_whitespace() {
            sent_start.get_or_insert(i);
            last_non_ws_end = i + c.len_utf8();
        }
        if !matches!(c, '.' | '!' | '?') {
            continue;
        }
        // Extend through a terminator run like `?!` or `...`.
        let mut run_len = 1usize;
        let mut run_end = i + 1;
        while let Some(&(j, cj)) = chars.peek() {
            if matches!(cj, '.' | '!' | '?') {
                chars.next();
                run_len += 1;
                run_end = j + 1;
                last_non_ws_end = run_end;
            } else {
                break;
            }
        }
        if c == '.' && run_len == 1 && is_abbreviation(text, run_end) {
            continue;
        }
        if !boundary_follows(text, run_end) {
            continue;
        }
        if let Some(start) = sent_start.take() {
            spans.push(SentenceSpan { start, end: run_end });
        }
    }
    if let Some(start) = sent_start {
        if last_non_ws_end > start {
            spans.push(SentenceSpan { start, end: last_non_ws_end });
        }
    }
    spans
}

/// Whether the word ending at `dot_end` (inclusive of its dot) is a guarded
/// abbreviation.
fn is_abbreviation(text: &str, dot_end: usize) -> bool {
    let word_start = text[..dot_end]
        .rfind(char::is_whitespace)
        .map_or(0, |i| i + text[i..].chars().next().map_or(1, char::len_utf8));
    let word = text[word_start..dot_end].to_lowercase();
    ABBREVIATIONS.contains(&word.as_str())
}

/// Whether the text after a terminator run licenses a sentence boundary:
/// whitespace up to the end of text, or whitespace then uppercase/digit.
fn boundary_follows(text: &str, from: usize) -> bool {
    let mut saw_ws = false;
    for c in text[from..].chars() {
        if c.is_whitespace() {
            saw_ws = true;
            continue;
        }
        return saw_ws && (c.is_uppercase() || c.is_numeric());
    }
    true
}

/// Sliding-window spans over `n_sentences`: starts at 0, stride, 2·stride, …
/// clipped to the sentence count, dropping any window fully contained in the
/// previously emitted one.
pub fn window_spans(n_sentences: usize, cfg: WindowConfig) -> Vec<(usize, usize)> {
    let mut spans: Vec<(usize, usize)> = Vec::new();
    let mut start = 0usize;
    while start < n_sentences {
        let end = usize::min(start + cfg.window_size, n_sentences);
        match spans.last() {
            Some(&(_, prev_end)) if end <= prev_end => {}
            _ => spans.push((start, end)),
        }
        start += cfg.stride;
    }
    spans
}

/// Builds the sliding-window passages of one document. The passage text is
/// the original text slice from the first to the last covered sentence.
pub fn make_windows(
    doc_id: &str,
    text: &str,
    sentences: &[SentenceSpan],
    cfg: WindowConfig,
) -> Vec<Passage> {
    window_spans(sentences.len(), cfg)
        .into_iter()
        .enumerate()
        .map(|(window_index, (s, e))| Passage {
            parent_doc_id: doc_id.to_string(),
            window_index,
            text: text[sentences[s].start..sentences[e - 1].end].to_string(),
            sentence_span: (s, e),
        })
        .collect()
}

/// Returns the prefix of `text` covering its first `n_tokens` analyzer
/// tokens, cut at a token boundary. Shorter texts are returned whole.
pub fn first_p<'a>(text: &'a str, n_tokens: usize, analyzer: &Analyzer) -> Result<&'a str> {
    if n_tokens < 1 {
        return Err(Error::InvalidArgument("n_tokens must be >= 1".into()));
    }
    let tokens = analyzer.analyze_with_spans(text);
    match tokens.get(n_tokens - 1) {
        Some(token) => Ok(&text[..token.span.end]),
        None => Ok(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentences(text: &str) -> Vec<&str> {
        split_sentences(text)
            .into_iter()
            .map(|s| &text[s.start..s.end])
            .collect()
    }

    #[test]
    fn question_then_statement() {
        assert_eq!(sentences("Is obesity a disease? Yes."), vec!["Is obesity a disease?", "Yes."]);
    }

    #[test]
    fn empty_and_whitespace_only() {
        assert!(split_sentences("").is_empty());
        assert!(split_sentences("   \n ").is_empty());
    }

    #[test]
    fn abbreviation_guard() {
        assert_eq!(sentences("e.g. apples are red."), vec!["e.g. apples are red."]);
        assert_eq!(sentences("Ask Dr. Smith today."), vec!["Ask Dr. Smith today."]);
    }

    #[test]
    fn lowercase_continuation_is_not_a_boundary() {
        assert_eq!(sentences("v2.0 was released. it works"), vec!["v2.0 was released. it works"]);
    }

    #[test]
    fn digit_starts_a_sentence() {
        assert_eq!(sentences("Count them. 12 remain."), vec!["Count them.", "12 remain."]);
    }

    #[test]
    fn no_terminator_is_one_sentence() {
        assert_eq!(sentences("just a fragment"), vec!["just a fragment"]);
    }

    #[test]
    fn terminator_runs_stay_together() {
        assert_eq!(sentences("Really?! Yes."), vec!["Really?!", "Yes."]);
    }

    #[test]
    fn window_fixture_12_sentences() {
        let cfg = WindowConfig::new(10, 5).unwrap();
        assert_eq!(window_spans(12, cfg), vec![(0, 10), (5, 12)]);
    }

    #[test]
    fn window_clips_short_docs() {
        let cfg = WindowConfig::new(10, 5).unwrap();
        assert_eq!(window_spans(3, cfg), vec![(0, 3)]);
    }

    #[test]
    fn window_exact_fit_emits_once() {
        let cfg = WindowConfig::new(10, 5).unwrap();
        assert_eq!(window_spans(10, cfg), vec![(0, 10)]);
    }

    #[test]
    fn window_coverage_and_containment() {
        let cfg = WindowConfig::new(8, 4).unwrap();
        for n in 1..60 {
            let spans = window_spans(n, cfg);
            assert_eq!(spans[0].0, 0);
            assert_eq!(spans.last().unwrap().1, n);
            for w in spans.windows(2) {
                // Tiling: consecutive windows overlap or touch.
                assert!(w[1].0 <= w[0].1);
                // No emitted span contained in another.
                assert!(w[1].1 > w[0].1);
            }
        }
    }

    #[test]
    fn make_windows_slices_original_text() {
        let text = "One. Two! Three? Four.";
        let s = split_sentences(text);
        assert_eq!(s.len(), 4);
        let cfg = WindowConfig::new(3, 2).unwrap();
        let passages = make_windows("d1", text, &s, cfg);
        assert_eq!(passages.len(), 2);
        assert_eq!(passages[0].text, "One. Two! Three?");
        assert_eq!(passages[0].sentence_span, (0, 3));
        assert_eq!(passages[1].text, "Three? Four.");
        assert_eq!(passages[1].id("#"), "d1#1");
    }

    #[test]
    fn first_p_cuts_at_token_boundary() {
        let a = Analyzer::whitespace();
        assert_eq!(first_p("one two three four five", 10, &a).unwrap(), "one two three four five");
        assert_eq!(first_p("one two three", 1, &a).unwrap(), "one");
        assert_eq!(first_p("First sentence here. Second one.", 4, &a).unwrap(), "First sentence here. Second");
        assert!(first_p("x", 0, &a).is_err());
    }
}
