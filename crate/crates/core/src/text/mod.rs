//! Tokenization, sentence segmentation, syllable counting and n-grams.
//!
//! Everything here is a pure function of its input.

mod ngrams;
mod sentences;
mod syllables;
mod tokenize;

use serde::Serialize;
use unicode_normalization::UnicodeNormalization;

pub use ngrams::{ngrams, NgramCounts};
pub use sentences::split_sentences;
pub use syllables::count_syllables;
pub use tokenize::{is_word, tokenize, tokenize_lower};

/// NFC form of `text`; applied to every string on ingestion.
pub fn normalize(text: &str) -> String {
    if unicode_normalization::is_nfc_quick(text.chars()) == unicode_normalization::IsNormalized::Yes {
        text.to_owned()
    } else {
        text.nfc().collect()
    }
}

/// Surface statistics of a piece of text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub raw: String,
    /// Word tokens only; punctuation tokens are dropped.
    pub tokens: Vec<String>,
    pub sentence_count: usize,
    pub word_count: usize,
    pub syllable_count: usize,
}

impl Sentence {
    pub fn new(raw: &str) -> Self {
        let raw = normalize(raw);
        let tokens: Vec<String> = tokenize(&raw).into_iter().filter(|t| is_word(t)).collect();
        let syllable_count = tokens.iter().map(|t| count_syllables(t) as usize).sum();
        Sentence { sentence_count: split_sentences(&raw).len(), word_count: tokens.len(), syllable_count, tokens, raw }
    }

    /// Statistics without keeping the token list, for hot loops.
    pub fn counts(raw: &str) -> TextCounts {
        let mut words = 0;
        let mut syllables = 0;
        for t in tokenize(raw) {
            if is_word(&t) {
                words += 1;
                syllables += count_syllables(&t) as usize;
            }
        }
        TextCounts { sentences: split_sentences(raw).len(), words, syllables }
    }

    pub fn stats(&self) -> TextCounts {
        TextCounts { sentences: self.sentence_count, words: self.word_count, syllables: self.syllable_count }
    }
}

/// Additive sentence, word and syllable counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TextCounts {
    pub sentences: usize,
    pub words: usize,
    pub syllables: usize,
}

impl std::ops::Add for TextCounts {
    type Output = TextCounts;

    fn add(self, rhs: TextCounts) -> TextCounts {
        TextCounts {
            sentences: self.sentences + rhs.sentences,
            words: self.words + rhs.words,
            syllables: self.syllables + rhs.syllables,
        }
    }
}

impl std::iter::Sum for TextCounts {
    fn sum<I: Iterator<Item = TextCounts>>(iter: I) -> Self {
        iter.fold(TextCounts::default(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentence_stats() {
        let s = Sentence::new("The cat sat. It purred!");
        assert_eq!(s.tokens, ["The", "cat", "sat", "It", "purred"]);
        assert_eq!(s.word_count, 5);
        assert_eq!(s.sentence_count, 2);
        assert!(s.syllable_count >= s.word_count);
        assert_eq!(s.stats(), Sentence::counts("The cat sat. It purred!"));
    }

    #[test]
    fn nfc_on_ingestion() {
        let decomposed = "cafe\u{301}";
        assert_eq!(Sentence::new(decomposed).raw, "caf\u{e9}");
    }
}
