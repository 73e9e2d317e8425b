//! Reader for the presentation file format.
//!
//! ```text
//! # comments run to end of line
//! gens: t1 t2 t3
//! rel: t1 t1
//! rel: t1 t2 t1 = t2 t1 t2
//! rel: t1 t2 t3 t1 = t2 t3 t1 t2 = t3 t1 t2 t3
//! ```
//!
//! A chained relation `u1 = u2 = ... = uk` becomes the relators `u1 u2⁻¹`,
//! `u2 u3⁻¹`, ... (adjacent pairs). A line with a single word is a relator.
//! Inverse letters are written `name^-1` and the empty word is `e`.

use thiserror::Error;

use crate::presentation::{Letter, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: empty generator list")]
    EmptyGenerators { line: usize },
    #[error("line {line}, column {column}: duplicate generator `{name}`")]
    DuplicateGenerator {
        line: usize,
        column: usize,
        name: String,
    },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A token with its 1-based starting column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits on whitespace; `=` is always a token of its own.
fn tokenize(text: &str, first_column: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None; // (byte offset, column)
    for (column, (offset, ch)) in (first_column..).zip(text.char_indices()) {
        if ch.is_whitespace() || ch == '=' {
            if let Some((s, c)) = start.take() {
                tokens.push(Token {
                    text: &text[s..offset],
                    column: c,
                });
            }
            if ch == '=' {
                tokens.push(Token {
                    text: &text[offset..offset + 1],
                    column,
                });
            }
        } else if start.is_none() {
            start = Some((offset, column));
        }
    }
    if let Some((s, c)) = start {
        tokens.push(Token {
            text: &text[s..],
            column: c,
        });
    }
    tokens
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name != "e" && !name.contains(['^', '=', ':', '#'])
}

/// Parses one letter token; `None` means the identity token `e`.
fn parse_letter(
    p: &Presentation,
    tok: Token<'_>,
    line: usize,
) -> Result<Option<Letter>, ParseError> {
    if tok.text == "e" {
        return Ok(None);
    }
    let (name, inverse) = match tok.text.find('^') {
        None => (tok.text, false),
        Some(i) if &tok.text[i..] == "^-1" => (&tok.text[..i], true),
        Some(i) => {
            return Err(syntax(
                line,
                tok.column + tok.text[..i].chars().count(),
                format!("bad exponent in `{}` (only ^-1 is allowed)", tok.text),
            ))
        }
    };
    if name.is_empty() || name.contains(':') {
        return Err(syntax(
            line,
            tok.column,
            format!("bad letter `{}`", tok.text),
        ));
    }
    let gen = p
        .generator_index(name)
        .ok_or_else(|| ParseError::UnknownGenerator {
            line,
            column: tok.column,
            name: name.to_owned(),
        })?;
    Ok(Some(Letter { gen, inverse }))
}

fn parse_side(p: &Presentation, tokens: &[Token<'_>], line: usize) -> Result<Word, ParseError> {
    let mut letters = Vec::with_capacity(tokens.len());
    for &tok in tokens {
        if let Some(l) = parse_letter(p, tok, line)? {
            letters.push(l);
        }
    }
    Ok(Word(letters))
}

/// Strips a `#` comment, returning the significant text.
fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn keyword<'a>(text: &'a str, key: &str) -> Option<(&'a str, usize)> {
    let trimmed = text.trim_start();
    let lead = text.chars().count() - trimmed.chars().count();
    let rest = trimmed.strip_prefix(key)?;
    Some((rest, lead + key.chars().count() + 1))
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let (gens_line, first) = lines
        .next()
        .ok_or_else(|| syntax(1, 1, "expected `gens:`"))?;
    let (rest, col) =
        keyword(first, "gens:").ok_or_else(|| syntax(gens_line, 1, "expected `gens:`"))?;
    let name_tokens = tokenize(rest, col);
    if name_tokens.is_empty() {
        return Err(ParseError::EmptyGenerators { line: gens_line });
    }
    for (i, tok) in name_tokens.iter().enumerate() {
        if !valid_name(tok.text) {
            return Err(syntax(
                gens_line,
                tok.column,
                format!("`{}` is not a valid generator name", tok.text),
            ));
        }
        if name_tokens[..i].iter().any(|t| t.text == tok.text) {
            return Err(ParseError::DuplicateGenerator {
                line: gens_line,
                column: tok.column,
                name: tok.text.to_owned(),
            });
        }
    }
    let mut p = Presentation::new(name_tokens.iter().map(|t| t.text), [])?;

    let mut relators = Vec::new();
    for (line, text) in lines {
        let Some((rest, col)) = keyword(text, "rel:") else {
            let column = text.chars().take_while(|c| c.is_whitespace()).count() + 1;
            let message = if keyword(text, "gens:").is_some() {
                "duplicate `gens:` line"
            } else {
                "expected `rel:`"
            };
            return Err(syntax(line, column, message));
        };
        let tokens = tokenize(rest, col);
        let mut sides = Vec::new();
        for chunk in split_sides(&tokens) {
            if chunk.is_empty() {
                let column = tokens
                    .iter()
                    .find(|t| t.text == "=")
                    .map_or(col, |t| t.column);
                return Err(syntax(
                    line,
                    column,
                    "empty word (write `e` for the identity)",
                ));
            }
            sides.push(parse_side(&p, chunk, line)?);
        }
        match sides.len() {
            1 => relators.push(sides.pop().unwrap()),
            _ => relators.extend(
                sides
                    .windows(2)
                    .map(|pair| pair[0].concat(&pair[1].inverse())),
            ),
        }
    }
    let names: Vec<String> = p.generators().iter().map(|g| g.name.clone()).collect();
    p = Presentation::new(names, relators)?;
    Ok(p)
}

fn split_sides<'t, 'a>(tokens: &'t [Token<'a>]) -> Vec<&'t [Token<'a>]> {
    tokens.split(|t| t.text == "=").collect()
}

/// Parses a single word against an existing presentation.
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word, ParseError> {
    let tokens = tokenize(text, 1);
    if tokens.is_empty() {
        return Err(syntax(1, 1, "empty word (write `e` for the identity)"));
    }
    if let Some(t) = tokens.iter().find(|t| t.text == "=") {
        return Err(syntax(1, t.column, "unexpected `=` in word"));
    }
    parse_side(p, &tokens, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chained_relations_expand_to_adjacent_pairs() {
        let p = parse_presentation("gens: a b c\nrel: a = b = c\n").unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.relators()[0], Word(vec![Letter::new(0), Letter::inv(1)]));
        assert_eq!(p.relators()[1], Word(vec![Letter::new(1), Letter::inv(2)]));
    }

    #[test]
    fn single_involution() {
        let p = parse_presentation("gens: x\nrel: x x\n").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators().len(), 1);
        assert!(p.conditions().involutions);
    }

    #[test]
    fn comments_blank_lines_and_identity() {
        let text = "# header\n\n  gens: x y   # two\nrel: x x\nrel: x y = e\nrel: y^-1 e y^-1\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[1], Word::from_gens(&[0, 1]));
        assert_eq!(p.relators()[2], Word(vec![Letter::inv(1), Letter::inv(1)]));
    }

    #[test]
    fn equals_sign_need_not_be_spaced() {
        let p = parse_presentation("gens: a b\nrel: a b a=b a b\n").unwrap();
        assert_eq!(p.relators()[0].len(), 6);
    }

    #[test]
    fn error_positions() {
        match parse_presentation("gens: a b\nrel: a c\n") {
            Err(ParseError::UnknownGenerator { line, column, name }) => {
                assert_eq!((line, column, name.as_str()), (2, 8, "c"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_presentation("gens: a b a\n") {
            Err(ParseError::DuplicateGenerator { line, column, .. }) => {
                assert_eq!((line, column), (1, 11));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_presentation("gens:\nrel: e\n"),
            Err(ParseError::EmptyGenerators { line: 1 })
        ));
        assert!(matches!(
            parse_presentation("rel: a a\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_presentation("gens: a\nrel: a = \n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("gens: a\nrel: a^2\n"),
            Err(ParseError::Syntax {
                line: 2,
                column: 7,
                ..
            })
        ));
        assert!(matches!(
            parse_presentation("gens: a\ngens: b\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("gens: a e\n"),
            Err(ParseError::Syntax {
                line: 1,
                column: 9,
                ..
            })
        ));
        assert!(matches!(
            parse_presentation(""),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn words() {
        let p = parse_presentation("gens: t1 t2\n").unwrap();
        assert_eq!(
            parse_word(&p, "t1 t2^-1").unwrap(),
            Word(vec![Letter::new(0), Letter::inv(1)])
        );
        assert_eq!(parse_word(&p, "e").unwrap(), Word::empty());
        assert!(parse_word(&p, "").is_err());
        assert!(parse_word(&p, "t3").is_err());
        assert!(parse_word(&p, "t1 = t2").is_err());
    }
}
