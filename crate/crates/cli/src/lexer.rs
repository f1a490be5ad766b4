//! Tokenizer for the input language. Every token carries its line and
//! column so errors point at the offending source position.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Identifier or bare integer used as a name.
    Word(String),
    /// Decoded string literal.
    Str(Vec<u8>),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    Colon,
    Eq,
    Arrow,
    Dot,
    DotDot,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Str(_) => f.write_str("string literal"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::DotDot => f.write_str("`..`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// A lexical or grammatical input error at a known position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for SyntaxError {}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokenizes the input. `#` starts a comment running to end of line.
pub fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    loop {
        let (tok_line, tok_col) = (line, col);
        let c = match chars.peek().copied() {
            Some(c) => c,
            None => return Ok(tokens),
        };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while let Some(&n) = chars.peek() {
                if n == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        let tok = match c {
            '{' => {
                bump!();
                Tok::LBrace
            }
            '}' => {
                bump!();
                Tok::RBrace
            }
            '(' => {
                bump!();
                Tok::LParen
            }
            ')' => {
                bump!();
                Tok::RParen
            }
            ';' => {
                bump!();
                Tok::Semi
            }
            ',' => {
                bump!();
                Tok::Comma
            }
            ':' => {
                bump!();
                Tok::Colon
            }
            '=' => {
                bump!();
                Tok::Eq
            }
            '.' => {
                bump!();
                if chars.peek() == Some(&'.') {
                    bump!();
                    Tok::DotDot
                } else {
                    Tok::Dot
                }
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    Tok::Arrow
                } else {
                    return Err(SyntaxError {
                        line: tok_line,
                        col: tok_col,
                        message: "expected `->`".into(),
                    });
                }
            }
            '"' => {
                bump!();
                let mut bytes = Vec::new();
                loop {
                    let c = bump!().ok_or(SyntaxError {
                        line: tok_line,
                        col: tok_col,
                        message: "unterminated string literal".into(),
                    })?;
                    match c {
                        '"' => break,
                        '\\' => {
                            let escaped = bump!().ok_or(SyntaxError {
                                line: tok_line,
                                col: tok_col,
                                message: "unterminated string literal".into(),
                            })?;
                            match escaped {
                                '\\' => bytes.push(b'\\'),
                                '"' => bytes.push(b'"'),
                                other => {
                                    return Err(SyntaxError {
                                        line,
                                        col: col.saturating_sub(1),
                                        message: format!(
                                            "unknown escape `\\{other}`; only `\\\\` and `\\\"` are recognized"
                                        ),
                                    })
                                }
                            }
                        }
                        printable if (' '..='~').contains(&printable) => {
                            bytes.push(printable as u8)
                        }
                        other => {
                            return Err(SyntaxError {
                                line,
                                col: col.saturating_sub(1),
                                message: format!(
                                    "string literals hold printable ASCII only, found {other:?}"
                                ),
                            })
                        }
                    }
                }
                Tok::Str(bytes)
            }
            c if is_word_char(c) => {
                let mut word = String::new();
                while let Some(&n) = chars.peek() {
                    if !is_word_char(n) {
                        break;
                    }
                    word.push(n);
                    bump!();
                }
                Tok::Word(word)
            }
            other => {
                return Err(SyntaxError {
                    line: tok_line,
                    col: tok_col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        tokens.push(Token {
            tok,
            line: tok_line,
            col: tok_col,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(text: &str) -> Vec<Tok> {
        lex(text).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn words_symbols_and_arrows() {
        assert_eq!(
            toks("arrows f: X -> Y;"),
            vec![
                Tok::Word("arrows".into()),
                Tok::Word("f".into()),
                Tok::Colon,
                Tok::Word("X".into()),
                Tok::Arrow,
                Tok::Word("Y".into()),
                Tok::Semi,
            ]
        );
    }

    #[test]
    fn dotted_paths_and_ranges_are_distinct() {
        assert_eq!(
            toks("a.b 1 .. 60"),
            vec![
                Tok::Word("a".into()),
                Tok::Dot,
                Tok::Word("b".into()),
                Tok::Word("1".into()),
                Tok::DotDot,
                Tok::Word("60".into()),
            ]
        );
    }

    #[test]
    fn string_escapes_decode() {
        assert_eq!(
            toks(r#""he said \"hi\" \\ bye""#),
            vec![Tok::Str(br#"he said "hi" \ bye"#.to_vec())]
        );
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(
            toks("a # rest of line\nb"),
            vec![Tok::Word("a".into()), Tok::Word("b".into())]
        );
    }

    #[test]
    fn positions_point_at_token_start() {
        let tokens = lex("ab\n  cd").unwrap();
        assert_eq!((tokens[0].line, tokens[0].col), (1, 1));
        assert_eq!((tokens[1].line, tokens[1].col), (2, 3));
    }

    #[test]
    fn bad_escape_is_an_error() {
        let err = lex(r#""\n""#).unwrap_err();
        assert!(err.message.contains("unknown escape"));
    }

    #[test]
    fn lone_dash_is_an_error() {
        let err = lex("a - b").unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
    }
}
