//! Substitution input formats.
//!
//! Text: one rule per line, `<letter> -> <image>`. A letter is a single
//! character or a backtick-quoted multi-character token; whitespace between
//! image tokens is ignored; `#` starts a comment; blank lines are skipped.
//! The alphabet order is the order of the rule lines.
//!
//! JSON: `{"alphabet": [...], "rules": {"0": "01", ...}}`, images given as
//! token strings (same tokenization as the text format) or as arrays of
//! letter names. The alphabet order is the order of `alphabet`.

use std::collections::BTreeMap;

use serde_json::Value;
use subshift_core::{Letter, Substitution, Word};

use crate::error::CliError;

/// A token with its 1-based column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub column: usize,
}

/// Splits `text` into letter tokens. Columns are counted in characters from
/// `first_column`.
pub fn tokenize(text: &str, line: usize, first_column: usize) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = first_column + i;
        if c.is_whitespace() {
            i += 1;
        } else if c == '`' {
            let close = chars[i + 1..]
                .iter()
                .position(|&d| d == '`')
                .ok_or_else(|| CliError::parse(line, column, "unterminated backtick token"))?;
            if close == 0 {
                return Err(CliError::parse(line, column, "empty backtick token"));
            }
            out.push(Token {
                text: chars[i + 1..i + 1 + close].iter().collect(),
                column,
            });
            i += close + 2;
        } else {
            out.push(Token {
                text: c.to_string(),
                column,
            });
            i += 1;
        }
    }
    Ok(out)
}

/// Resolves tokens against the alphabet of `s`.
pub fn resolve(s: &Substitution, tokens: &[Token], line: usize) -> Result<Word, CliError> {
    tokens
        .iter()
        .map(|t| {
            s.letter(&t.text).ok_or_else(|| {
                CliError::parse(line, t.column, format!("unknown letter `{}`", t.text))
            })
        })
        .collect()
}

/// Parses a word written with the text-format tokenization.
pub fn parse_word(s: &Substitution, text: &str) -> Result<Word, CliError> {
    resolve(s, &tokenize(text, 1, 1)?, 1)
}

/// Parses either input format; JSON is recognized by a leading `{`.
pub fn parse_substitution(text: &str) -> Result<Substitution, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Cuts a line at the first `#` outside backticks.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '`' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

struct RawRule {
    line: usize,
    letter: Token,
    image: Vec<Token>,
}

pub fn parse_text(text: &str) -> Result<Substitution, CliError> {
    let mut rules = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let Some(arrow) = content.find("->") else {
            let column = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(CliError::parse(
                line,
                column,
                "expected `<letter> -> <image>`",
            ));
        };
        let head = tokenize(&content[..arrow], line, 1)?;
        let arrow_column = content[..arrow].chars().count() + 1;
        let letter = match head.as_slice() {
            [t] => t.clone(),
            [] => {
                return Err(CliError::parse(
                    line,
                    arrow_column,
                    "missing letter before `->`",
                ))
            }
            [_, extra, ..] => {
                return Err(CliError::parse(
                    line,
                    extra.column,
                    "a rule defines exactly one letter",
                ))
            }
        };
        let image = tokenize(&content[arrow + 2..], line, arrow_column + 2)?;
        if image.is_empty() {
            return Err(CliError::parse(line, arrow_column + 2, "empty image"));
        }
        rules.push(RawRule {
            line,
            letter,
            image,
        });
    }
    if rules.is_empty() {
        return Err(CliError::parse(1, 1, "no rules"));
    }
    let mut index: BTreeMap<&str, Letter> = BTreeMap::new();
    for (i, r) in rules.iter().enumerate() {
        if index.insert(r.letter.text.as_str(), i as Letter).is_some() {
            return Err(CliError::parse(
                r.line,
                r.letter.column,
                format!("letter `{}` defined twice", r.letter.text),
            ));
        }
    }
    let mut images = Vec::with_capacity(rules.len());
    for r in &rules {
        let word = r
            .image
            .iter()
            .map(|t| {
                index.get(t.text.as_str()).copied().ok_or_else(|| {
                    CliError::parse(r.line, t.column, format!("unknown letter `{}`", t.text))
                })
            })
            .collect::<Result<Word, _>>()?;
        images.push(word);
    }
    let names = rules.into_iter().map(|r| r.letter.text).collect();
    Substitution::new(names, images).map_err(CliError::from)
}

fn json_error(message: impl Into<String>) -> CliError {
    CliError::Parse {
        message: message.into(),
        line: None,
        column: None,
    }
}

pub fn parse_json(text: &str) -> Result<Substitution, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    })?;
    let alphabet = doc
        .get("alphabet")
        .and_then(Value::as_array)
        .ok_or_else(|| json_error("`alphabet` must be an array of letter names"))?;
    let names = alphabet
        .iter()
        .map(|v| {
            v.as_str()
                .filter(|s| !s.is_empty())
                .map(str::to_owned)
                .ok_or_else(|| json_error("alphabet entries must be nonempty strings"))
        })
        .collect::<Result<Vec<String>, _>>()?;
    let rules = doc
        .get("rules")
        .and_then(Value::as_object)
        .ok_or_else(|| json_error("`rules` must be an object"))?;
    if let Some(extra) = rules.keys().find(|k| !names.contains(k)) {
        return Err(json_error(format!(
            "rule for `{extra}` outside the alphabet"
        )));
    }
    let lookup = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Letter)
            .ok_or_else(|| json_error(format!("unknown letter `{name}`")))
    };
    let mut images = Vec::with_capacity(names.len());
    for name in &names {
        let image = rules
            .get(name)
            .ok_or_else(|| json_error(format!("no rule for `{name}`")))?;
        let word = match image {
            Value::String(s) => tokenize(s, 1, 1)
                .map_err(|e| json_error(format!("image of `{name}`: {e}")))?
                .iter()
                .map(|t| lookup(&t.text))
                .collect::<Result<Word, _>>()?,
            Value::Array(items) => items
                .iter()
                .map(|v| {
                    v.as_str()
                        .ok_or_else(|| json_error("image arrays hold letter names"))
                        .and_then(lookup)
                })
                .collect::<Result<Word, _>>()?,
            _ => {
                return Err(json_error(format!(
                    "image of `{name}` must be a string or array"
                )))
            }
        };
        images.push(word);
    }
    Substitution::new(names, images).map_err(CliError::from)
}

/// The rules of `s` in the text format, in alphabet order.
pub fn render_rules(s: &Substitution) -> Vec<(String, String)> {
    s.letters()
        .map(|a| (s.render(&[a]), s.render(s.image(a))))
        .collect()
}
