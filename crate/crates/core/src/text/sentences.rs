use std::ops::Range;

/// Lower-cased forms (without the final period) that do not end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "e.g", "i.e", "cf", "approx", "fig", "gen", "col",
    "lt", "sgt", "capt", "rev", "mt", "ft", "inc", "ltd", "corp", "dept",
];

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{201d}' | '\u{2019}' | '\u{bb}')
}

/// Splits `text` into sentence byte ranges.
///
/// A run of `.`, `!` or `?` (plus any closing quotes or brackets) followed by
/// whitespace or the end of the text ends a sentence, except a single period
/// closing a known abbreviation. Spans are trimmed and together cover every
/// non-whitespace character.
pub fn split_sentences(text: &str) -> Vec<Range<usize>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    let mut i = 0;

    while i < chars.len() {
        let (pos, c) = chars[i];
        if start.is_none() {
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            start = Some(pos);
        }
        if !is_terminal(c) {
            i += 1;
            continue;
        }

        let run_start = i;
        let mut j = i;
        while j < chars.len() && is_terminal(chars[j].1) {
            j += 1;
        }
        let single_period = j - run_start == 1 && c == '.';
        while j < chars.len() && is_closer(chars[j].1) {
            j += 1;
        }
        let at_boundary = j == chars.len() || chars[j].1.is_whitespace();

        if at_boundary && !(single_period && ends_with_abbreviation(text, start.unwrap(), pos)) {
            let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
            spans.push(start.take().unwrap()..end);
        }
        i = j;
    }

    if let Some(s) = start {
        let end = text.trim_end().len();
        if end > s {
            spans.push(s..end);
        }
    }
    spans
}

fn ends_with_abbreviation(text: &str, sentence_start: usize, period: usize) -> bool {
    let before = &text[sentence_start..period];
    let word =
        before.rsplit(char::is_whitespace).next().unwrap_or("").trim_start_matches(|c: char| !c.is_alphanumeric());
    if word.is_empty() {
        return false;
    }
    let lower = word.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pieces(text: &str) -> Vec<&str> {
        split_sentences(text).into_iter().map(|r| &text[r]).collect()
    }

    #[test]
    fn two_terminals() {
        assert_eq!(pieces("A. B!"), ["A.", "B!"]);
    }

    #[test]
    fn no_terminal() {
        assert_eq!(pieces("Hello"), ["Hello"]);
        assert!(pieces("   ").is_empty());
        assert!(pieces("").is_empty());
    }

    #[test]
    fn abbreviations_do_not_split() {
        assert_eq!(pieces("Mr. Smith arrived. He sat down."), ["Mr. Smith arrived.", "He sat down."]);
        assert_eq!(pieces("Apples, pears, etc. are fruit."), ["Apples, pears, etc. are fruit."]);
    }

    #[test]
    fn decimals_and_quotes() {
        assert_eq!(
            pieces("It cost 3.50 dollars. \"Wow!\" she said."),
            ["It cost 3.50 dollars.", "\"Wow!\"", "she said."]
        );
        assert_eq!(pieces("Really?! Yes..."), ["Really?!", "Yes..."]);
    }

    #[test]
    fn trailing_text_without_terminal() {
        assert_eq!(pieces("One. two  "), ["One.", "two"]);
    }
}
