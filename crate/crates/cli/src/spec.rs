//! The plain-text substitution format.
//!
//! ```text
//! # golden-ratio example
//! a -> aac
//! b -> acc
//! c -> aab
//! ```
//!
//! One rule per line. Letters are whitespace-separated tokens; when every
//! declared letter is a single character an image may be written without
//! spaces. `#` starts a comment.

use std::collections::HashSet;

use amorph_core::{Alphabet, Error, Result, Substitution, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub source_name: String,
    pub substitution: Substitution,
    /// Comment text in file order, without the leading `#`.
    pub comments: Vec<String>,
}

struct RawRule<'a> {
    line: usize,
    letter: &'a str,
    image: &'a str,
}

pub fn parse_spec(source_name: &str, text: &str) -> Result<SpecDocument> {
    let mut comments = Vec::new();
    let mut raw = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let body = match line.split_once('#') {
            Some((body, comment)) => {
                comments.push(comment.trim().to_string());
                body
            }
            None => line,
        };
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = body.split_once("->") else {
            return Err(parse_error(source_name, line_no, "expected `LETTER -> IMAGE`"));
        };
        let letter = lhs.trim();
        if letter.is_empty() || letter.split_whitespace().count() != 1 {
            return Err(parse_error(source_name, line_no, "left side must be a single letter"));
        }
        raw.push(RawRule {
            line: line_no,
            letter,
            image: rhs.trim(),
        });
    }
    if raw.is_empty() {
        return Err(Error::InvalidInput(format!("{source_name}: no rules found")));
    }

    let mut seen = HashSet::new();
    for rule in &raw {
        if !seen.insert(rule.letter) {
            return Err(parse_error(
                source_name,
                rule.line,
                &format!("duplicate rule for {:?}", rule.letter),
            ));
        }
    }
    let alphabet = Alphabet::new(raw.iter().map(|r| r.letter))?;
    let rules = raw
        .iter()
        .map(|rule| parse_image(&alphabet, rule).map_err(|e| parse_error(source_name, rule.line, &e)))
        .collect::<Result<Vec<_>>>()?;
    let substitution = Substitution::new(alphabet, rules).map_err(|e| match e {
        Error::Precondition(msg) => Error::Precondition(format!("{source_name}: non-constant length: {msg}")),
        other => other,
    })?;
    Ok(SpecDocument {
        source_name: source_name.to_string(),
        substitution,
        comments,
    })
}

fn parse_image(alphabet: &Alphabet, rule: &RawRule) -> std::result::Result<Word, String> {
    let tokens: Vec<&str> = if rule.image.split_whitespace().count() > 1 || !alphabet.is_compact() {
        rule.image.split_whitespace().collect()
    } else {
        let mut buf = Vec::new();
        for (i, c) in rule.image.char_indices() {
            buf.push(&rule.image[i..i + c.len_utf8()]);
        }
        buf
    };
    if tokens.is_empty() {
        return Err("empty image".to_string());
    }
    tokens
        .into_iter()
        .map(|t| {
            alphabet
                .lookup(t)
                .ok_or_else(|| format!("letter {t:?} in the image of {:?} is not declared", rule.letter))
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Word::new)
}

fn parse_error(source: &str, line: usize, msg: &str) -> Error {
    Error::InvalidInput(format!("{source}:{line}: {msg}"))
}

/// Canonical text form: comments first, then one rule per line.
pub fn render_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str(&format!("# {c}\n"));
        }
    }
    out.push_str(&doc.substitution.to_string());
    out
}
