//! Recursive-descent parser for the text grammar.
//!
//! ```text
//! imp   := or ('->' imp)?
//! or    := and ('\/' and)*
//! and   := unary ('/\' unary)*
//! unary := '~' unary | '[]' unary | 'boxdot' unary | atom | 'true' | 'false' | '(' imp ')'
//! ```
//!
//! Unicode aliases `¬ □ ⊡ ∧ ∨ → ⊥ ⊤` are accepted.

use std::fmt;

use thiserror::Error;

use super::Formula;

/// A parse failure with the offending column, rendered with a caret.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", render(.message, .input, *.column))]
pub struct ParseError {
    pub message: String,
    pub input: String,
    /// Character (not byte) offset into `input`.
    pub column: usize,
}

fn render(message: &str, input: &str, column: usize) -> String {
    format!("parse error: {message}\n  {input}\n  {}^", " ".repeat(column))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Not,
    Box,
    BoxDot,
    And,
    Or,
    Imp,
    False,
    True,
    Atom(String),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::Not => f.write_str("'~'"),
            Token::Box => f.write_str("'[]'"),
            Token::BoxDot => f.write_str("'boxdot'"),
            Token::And => f.write_str("'/\\'"),
            Token::Or => f.write_str("'\\/'"),
            Token::Imp => f.write_str("'->'"),
            Token::False => f.write_str("'false'"),
            Token::True => f.write_str("'true'"),
            Token::Atom(a) => write!(f, "atom '{a}'"),
        }
    }
}

struct Lexer<'a> {
    input: &'a str,
    chars: Vec<char>,
}

impl<'a> Lexer<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { message: message.into(), input: self.input.to_string(), column }
    }

    fn tokenize(&self) -> Result<Vec<(Token, usize)>, ParseError> {
        let chars = &self.chars;
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let start = i;
            let two = |a: char, b: char| c == a && chars.get(i + 1) == Some(&b);
            let (tok, len) = match c {
                _ if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '(' => (Token::LParen, 1),
                ')' => (Token::RParen, 1),
                '~' | '¬' => (Token::Not, 1),
                '□' => (Token::Box, 1),
                '⊡' => (Token::BoxDot, 1),
                '∧' => (Token::And, 1),
                '∨' => (Token::Or, 1),
                '→' => (Token::Imp, 1),
                '⊥' => (Token::False, 1),
                '⊤' => (Token::True, 1),
                _ if two('[', ']') => (Token::Box, 2),
                _ if two('/', '\\') => (Token::And, 2),
                _ if two('\\', '/') => (Token::Or, 2),
                _ if two('-', '>') => (Token::Imp, 2),
                '$' => return Err(self.error(start, "names starting with '$' are reserved for generated atoms")),
                'a'..='z' => {
                    let mut j = i + 1;
                    while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().collect();
                    let tok = match word.as_str() {
                        "true" => Token::True,
                        "false" => Token::False,
                        "boxdot" => Token::BoxDot,
                        _ => Token::Atom(word),
                    };
                    (tok, j - i)
                }
                _ => return Err(self.error(start, format!("unexpected character '{c}'"))),
            };
            out.push((tok, start));
            i += len;
        }
        Ok(out)
    }
}

struct Parser<'a> {
    lexer: &'a Lexer<'a>,
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, c)| *c).unwrap_or(self.lexer.chars.len())
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.lexer.error(self.column(), format!("expected {wanted}, found {t}")),
            None => self.lexer.error(self.column(), format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.eat(&Token::Imp) {
            let right = self.imp()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while self.eat(&Token::Or) {
            left = Formula::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("a formula"));
        };
        self.pos += 1;
        match tok {
            Token::Not => Ok(Formula::neg(self.unary()?)),
            Token::Box => Ok(Formula::boxed(self.unary()?)),
            Token::BoxDot => Ok(Formula::boxdot(self.unary()?)),
            Token::False => Ok(Formula::Bot),
            Token::True => Ok(Formula::Top),
            Token::Atom(name) => Ok(Formula::atom(&name)),
            Token::LParen => {
                let inner = self.imp()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.unexpected("')'"));
                }
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a formula"))
            }
        }
    }
}

/// Parses a formula; `~A` becomes `A -> false` and `boxdot A` becomes
/// `A /\ []A`.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let lexer = Lexer { input, chars: input.chars().collect() };
    let tokens = lexer.tokenize()?;
    let mut parser = Parser { lexer: &lexer, tokens, pos: 0 };
    let f = parser.imp()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
