use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

/// Largest accepted integer literal.
pub const MAX_LITERAL: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Dot,
    Caret,
    Plus,
    Minus,
    Eq,
    Arrow,
    At,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::At => write!(f, "`@`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

/// Splits UTF-8 source into tokens; `#` starts a comment running to the end of the line.
pub fn lex(bytes: &[u8]) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let src = match std::str::from_utf8(bytes) {
        Ok(s) => s,
        Err(e) => {
            let before = &bytes[..e.valid_up_to()];
            let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
            let col = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
            return Err(ParseError::new(Pos { line, col }, "invalid UTF-8"));
        }
    };
    let mut out = vec![];
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let mut v: i64 = 0;
            while let Some(&c) = chars.peek() {
                let Some(d) = c.to_digit(10) else { break };
                v = v.saturating_mul(10).saturating_add(d as i64);
                bump(&mut chars);
            }
            if v > MAX_LITERAL {
                return Err(ParseError::new(pos, format!("integer literal exceeds {MAX_LITERAL}")));
            }
            out.push((Tok::Int(v), pos));
            continue;
        }
        bump(&mut chars);
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '^' => Tok::Caret,
            '+' => Tok::Plus,
            '=' => Tok::Eq,
            '@' => Tok::At,
            '-' => {
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            other => return Err(ParseError::new(pos, format!("unexpected character {other:?}"))),
        };
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_with_positions() {
        let t = lex(b"edge e : A.0\n  -> # c\n x^-1").unwrap();
        assert_eq!(t[0], (Tok::Ident("edge".into()), Pos { line: 1, col: 1 }));
        assert_eq!(t[6], (Tok::Arrow, Pos { line: 2, col: 3 }));
        assert_eq!(t[7].1, Pos { line: 3, col: 2 });
        assert_eq!(t[9], (Tok::Minus, Pos { line: 3, col: 4 }));
    }

    #[test]
    fn bad_bytes_are_positioned() {
        let e = lex(b"ab\n\xff").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 1 });
        let e = lex(b"x $").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 3 });
    }
}
