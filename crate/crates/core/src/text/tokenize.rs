//! Word tokenization compatible with the `13a` tokenizer (mteval-v13a) that
//! SARI toolkits apply before counting n-grams.
//!
//! The four regex passes of the original are reimplemented as single-pass
//! character scans; each pass is a two-character window with leftmost,
//! non-overlapping matching, which is what `re.sub` does.

fn is_isolated(c: char) -> bool {
    matches!(c, '{'..='~' | '['..='`' | ' '..='&' | '('..='+' | ':'..='@' | '/')
}

/// Whitespace as understood by Python's `str.split()`.
pub(crate) fn is_split_space(c: char) -> bool {
    c.is_whitespace() || matches!(c, '\x1c'..='\x1f')
}

fn replace_entities(line: &str) -> String {
    let mut line = line.replace("<skipped>", "").replace("-\n", "").replace('\n', " ");
    if line.contains('&') {
        line = line.replace("&quot;", "\"").replace("&amp;", "&").replace("&lt;", "<").replace("&gt;", ">");
    }
    line
}

/// Splits `text` into word and punctuation tokens, preserving case.
pub fn tokenize(text: &str) -> Vec<String> {
    let line = replace_entities(text);

    let mut buf: Vec<char> = Vec::with_capacity(line.len() * 2 + 2);
    buf.push(' ');
    for c in line.chars() {
        if is_isolated(c) {
            buf.extend([' ', c, ' ']);
        } else {
            buf.push(c);
        }
    }
    buf.push(' ');

    // period and comma unless preceded by a digit
    let buf = pass(
        &buf,
        |a, b| !a.is_ascii_digit() && matches!(b, '.' | ','),
        |a, b, out| {
            out.extend([a, ' ', b, ' ']);
        },
    );
    // period and comma unless followed by a digit
    let buf = pass(
        &buf,
        |a, b| matches!(a, '.' | ',') && !b.is_ascii_digit(),
        |a, b, out| {
            out.extend([' ', a, ' ', b]);
        },
    );
    // dash preceded by a digit
    let buf = pass(
        &buf,
        |a, b| a.is_ascii_digit() && b == '-',
        |a, b, out| {
            out.extend([a, ' ', b, ' ']);
        },
    );

    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in buf {
        if is_split_space(c) {
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        } else {
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

fn pass(input: &[char], matches: impl Fn(char, char) -> bool, emit: impl Fn(char, char, &mut Vec<char>)) -> Vec<char> {
    let mut out = Vec::with_capacity(input.len() + input.len() / 4);
    let mut i = 0;
    while i < input.len() {
        if i + 1 < input.len() && matches(input[i], input[i + 1]) {
            emit(input[i], input[i + 1], &mut out);
            i += 2;
        } else {
            out.push(input[i]);
            i += 1;
        }
    }
    out
}

/// Lower-cased tokens, the form every metric counts over.
pub fn tokenize_lower(text: &str) -> Vec<String> {
    tokenize(&text.to_lowercase())
}

/// A token counts as a word when it contains at least one letter or digit.
pub fn is_word(token: &str) -> bool {
    token.chars().any(char::is_alphanumeric)
}
