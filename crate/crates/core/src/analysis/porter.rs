//! Porter stemmer (the original 1980 algorithm, without later departures).
//!
//! Operates on lowercase ASCII words. Tokens shorter than three characters
//! or containing anything other than ASCII letters (digits, hyphens,
//! non-ASCII) are returned unchanged — identifiers like `azd5153` must
//! survive analysis intact.

/// Stems one lowercase word.
pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut s = Stemmer { b: word.as_bytes().to_vec() };
    s.step_1a();
    s.step_1b();
    s.step_1c();
    s.step_2();
    s.step_3();
    s.step_4();
    s.step_5();
    String::from_utf8(s.b).expect("ascii")
}

struct Stemmer {
    b: Vec<u8>,
}

impl Stemmer {
    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// Measure m of the prefix `b[..len]`: the number of VC sequences in
    /// the decomposition [C](VC)^m[V].
    fn measure(&self, len: usize) -> usize {
        let mut i = 0;
        while i < len && self.is_consonant(i) {
            i += 1;
        }
        let mut m = 0;
        loop {
            while i < len && !self.is_consonant(i) {
                i += 1;
            }
            if i >= len {
                break;
            }
            while i < len && self.is_consonant(i) {
                i += 1;
            }
            m += 1;
        }
        m
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.is_consonant(i))
    }

    /// Prefix `b[..len]` ends with a doubled consonant.
    fn ends_double_consonant(&self, len: usize) -> bool {
        len >= 2 && self.b[len - 1] == self.b[len - 2] && self.is_consonant(len - 1)
    }

    /// Prefix `b[..len]` ends consonant-vowel-consonant where the final
    /// consonant is not w, x, or y (the *o condition).
    fn ends_cvc(&self, len: usize) -> bool {
        if len < 3 {
            return false;
        }
        self.is_consonant(len - 3)
            && !self.is_consonant(len - 2)
            && self.is_consonant(len - 1)
            && !matches!(self.b[len - 1], b'w' | b'x' | b'y')
    }

    /// Stem length if the word ends with `suffix`.
    fn ends(&self, suffix: &[u8]) -> Option<usize> {
        self.b.len().checked_sub(suffix.len()).filter(|&j| &self.b[j..] == suffix)
    }

    fn replace(&mut self, stem_len: usize, with: &[u8]) {
        self.b.truncate(stem_len);
        self.b.extend_from_slice(with);
    }

    fn step_1a(&mut self) {
        if let Some(j) = self.ends(b"sses") {
            self.replace(j, b"ss");
        } else if let Some(j) = self.ends(b"ies") {
            self.replace(j, b"i");
        } else if self.ends(b"ss").is_some() {
            // keep
        } else if let Some(j) = self.ends(b"s") {
            self.replace(j, b"");
        }
    }

    fn step_1b(&mut self) {
        if let Some(j) = self.ends(b"eed") {
            if self.measure(j) > 0 {
                self.replace(j + 2, b"");
            }
            return;
        }
        let removed = if let Some(j) = self.ends(b"ed") {
            self.has_vowel(j).then(|| self.replace(j, b""))
        } else if let Some(j) = self.ends(b"ing") {
            self.has_vowel(j).then(|| self.replace(j, b""))
        } else {
            None
        };
        if removed.is_none() {
            return;
        }
        // Post-removal repair: restore an e, undouble, or mark short stems.
        if self.ends(b"at").is_some() || self.ends(b"bl").is_some() || self.ends(b"iz").is_some() {
            self.b.push(b'e');
        } else if self.ends_double_consonant(self.b.len())
            && !matches!(self.b[self.b.len() - 1], b'l' | b's' | b'z')
        {
            self.b.pop();
        } else if self.measure(self.b.len()) == 1 && self.ends_cvc(self.b.len()) {
            self.b.push(b'e');
        }
    }

    fn step_1c(&mut self) {
        if let Some(j) = self.ends(b"y") {
            if self.has_vowel(j) {
                self.replace(j, b"i");
            }
        }
    }

    /// Applies the first matching rule from `rules` whose stem measure
    /// satisfies `min_m`.
    fn apply_rules(&mut self, rules: &[(&[u8], &[u8])], min_m: usize) {
        for &(suffix, with) in rules {
            if let Some(j) = self.ends(suffix) {
                if self.measure(j) > min_m {
                    self.replace(j, with);
                }
                return;
            }
        }
    }

    fn step_2(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"ational", b"ate"),
            (b"tional", b"tion"),
            (b"enci", b"ence"),
            (b"anci", b"ance"),
            (b"izer", b"ize"),
            (b"abli", b"able"),
            (b"alli", b"al"),
            (b"entli", b"ent"),
            (b"eli", b"e"),
            (b"ousli", b"ous"),
            (b"ization", b"ize"),
            (b"ation", b"ate"),
            (b"ator", b"ate"),
            (b"alism", b"al"),
            (b"iveness", b"ive"),
            (b"fulness", b"ful"),
            (b"ousness", b"ous"),
            (b"aliti", b"al"),
            (b"iviti", b"ive"),
            (b"biliti", b"ble"),
        ];
        self.apply_rules(RULES, 0);
    }

    fn step_3(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"icate", b"ic"),
            (b"ative", b""),
            (b"alize", b"al"),
            (b"iciti", b"ic"),
            (b"ical", b"ic"),
            (b"ful", b""),
            (b"ness", b""),
        ];
        self.apply_rules(RULES, 0);
    }

    fn step_4(&mut self) {
        const SUFFIXES: &[&[u8]] = &[
            b"al", b"ance", b"ence", b"er", b"ic", b"able", b"ible", b"ant", b"ement", b"ment",
            b"ent", b"ion", b"ou", b"ism", b"ate", b"iti", b"ous", b"ive", b"ize",
        ];
        for &suffix in SUFFIXES {
            if let Some(j) = self.ends(suffix) {
                let ion_guard = suffix != b"ion" || (j > 0 && matches!(self.b[j - 1], b's' | b't'));
                if self.measure(j) > 1 && ion_guard {
                    self.replace(j, b"");
                }
                return;
            }
        }
    }

    fn step_5(&mut self) {
        // 5a: drop a final e.
        if let Some(j) = self.ends(b"e") {
            let m = self.measure(j);
            if m > 1 || (m == 1 && !self.ends_cvc(j)) {
                self.replace(j, b"");
            }
        }
        // 5b: undouble a final ll.
        let len = self.b.len();
        if self.measure(len) > 1 && self.ends_double_consonant(len) && self.b[len - 1] == b'l' {
            self.b.pop();
        }
    }
}
