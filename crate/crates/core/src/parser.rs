//! Line-oriented `.bnet` reader and writer.
//!
//! One declaration per line, `name, expression`. `#` starts a comment and a
//! leading `targets, factors` header line (BoolNet style) is skipped.

use crate::error::{BnError, ParseError, Result};
use crate::expr::BoolExpr;
use crate::network::{is_identifier, BooleanNetwork};
use crate::state::Subspace;

struct Declaration<'a> {
    line: usize,
    name: &'a str,
    body: &'a str,
    // 1-based column where `body` starts
    body_column: usize,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn declarations(text: &str) -> Result<Vec<Declaration<'_>>, ParseError> {
    let mut out: Vec<Declaration> = Vec::new();
    for (k, raw) in text.split('\n').enumerate() {
        let line_no = k + 1;
        let line = strip_comment(raw.strip_suffix('\r').unwrap_or(raw));
        if line.trim().is_empty() {
            continue;
        }
        let Some(comma) = line.find(',') else {
            return Err(ParseError::Syntax {
                line: line_no,
                column: column_of(line, line.len() - line.trim_start().len()),
                message: "expected `name, expression`".into(),
            });
        };
        let name = line[..comma].trim();
        let body = &line[comma + 1..];
        if out.is_empty() && name.eq_ignore_ascii_case("targets") && body.trim().eq_ignore_ascii_case("factors") {
            continue;
        }
        if !is_identifier(name) {
            return Err(ParseError::Syntax {
                line: line_no,
                column: column_of(line, line.len() - line.trim_start().len()),
                message: format!("`{name}` is not a valid component name"),
            });
        }
        if let Some(first) = out.iter().find(|d| d.name == name) {
            return Err(ParseError::DuplicateComponent {
                line: line_no,
                name: name.to_string(),
                first_line: first.line,
            });
        }
        out.push(Declaration {
            line: line_no,
            name,
            body,
            body_column: column_of(line, comma + 1),
        });
    }
    if out.is_empty() {
        return Err(ParseError::EmptyDocument);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token<'a> {
    Not,
    And,
    Or,
    Open,
    Close,
    Const(bool),
    Ident(&'a str),
    End,
}

struct ExprParser<'a, 'n> {
    src: &'a str,
    pos: usize,
    line: usize,
    base_column: usize,
    names: &'n [&'a str],
}

impl<'a> ExprParser<'a, '_> {
    fn column(&self, byte: usize) -> usize {
        self.base_column + self.src[..byte].chars().count()
    }

    fn syntax(&self, byte: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column: self.column(byte),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its starting byte offset, without consuming it.
    fn peek(&mut self) -> Result<(Token<'a>, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Token::End, start));
        };
        let token = match c {
            '!' => Token::Not,
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let len = rest
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(rest.len());
                let word = &rest[..len];
                match word {
                    "0" => Token::Const(false),
                    "1" => Token::Const(true),
                    w if is_identifier(w) => Token::Ident(w),
                    w => return Err(self.syntax(start, format!("unexpected `{w}`"))),
                }
            }
            c => return Err(self.syntax(start, format!("unexpected character `{c}`"))),
        };
        Ok((token, start))
    }

    fn bump(&mut self, token: Token<'a>) {
        self.pos += match token {
            Token::Ident(w) => w.len(),
            Token::End => 0,
            _ => 1,
        };
    }

    fn parse(mut self) -> Result<BoolExpr, ParseError> {
        let e = self.or()?;
        match self.peek()? {
            (Token::End, _) => Ok(e),
            (Token::Close, at) => Err(self.syntax(at, "unbalanced `)`")),
            (_, at) => Err(self.syntax(at, "expected operator")),
        }
    }

    fn or(&mut self) -> Result<BoolExpr, ParseError> {
        let mut operands = vec![self.and()?];
        while let (Token::Or, _) = self.peek()? {
            self.bump(Token::Or);
            operands.push(self.and()?);
        }
        Ok(BoolExpr::or(operands))
    }

    fn and(&mut self) -> Result<BoolExpr, ParseError> {
        let mut operands = vec![self.unary()?];
        while let (Token::And, _) = self.peek()? {
            self.bump(Token::And);
            operands.push(self.unary()?);
        }
        Ok(BoolExpr::and(operands))
    }

    fn unary(&mut self) -> Result<BoolExpr, ParseError> {
        let (token, at) = self.peek()?;
        match token {
            Token::Not => {
                self.bump(token);
                Ok(BoolExpr::negate(self.unary()?))
            }
            Token::Open => {
                self.bump(token);
                let inner = self.or()?;
                match self.peek()? {
                    (Token::Close, _) => {
                        self.bump(Token::Close);
                        Ok(inner)
                    }
                    (_, at2) => Err(self.syntax(at2, "expected `)`")),
                }
            }
            Token::Const(b) => {
                self.bump(token);
                Ok(BoolExpr::Const(b))
            }
            Token::Ident(name) => {
                self.bump(token);
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(BoolExpr::Var(i)),
                    None => Err(ParseError::UndeclaredVariable {
                        line: self.line,
                        column: self.column(at),
                        name: name.to_string(),
                    }),
                }
            }
            Token::End => Err(self.syntax(at, "unexpected end of expression")),
            _ => Err(self.syntax(at, "expected operand")),
        }
    }
}

/// Parses a `.bnet` document. Component order is declaration order.
pub fn parse_network(text: &str) -> Result<BooleanNetwork> {
    let decls = declarations(text)?;
    let names: Vec<&str> = decls.iter().map(|d| d.name).collect();
    let mut rules = Vec::with_capacity(decls.len());
    for d in &decls {
        let parser = ExprParser {
            src: d.body,
            pos: 0,
            line: d.line,
            base_column: d.body_column,
            names: &names,
        };
        rules.push(parser.parse()?);
    }
    BooleanNetwork::new(names.into_iter().map(String::from).collect(), rules)
}

/// Parses a subspace literal and checks its length against `net`.
pub fn parse_subspace(text: &str, net: &BooleanNetwork) -> Result<Subspace> {
    let found = text.trim().chars().count();
    if found != net.arity() {
        return Err(BnError::Parse(ParseError::LiteralLength {
            expected: net.arity(),
            found,
        }));
    }
    Ok(Subspace::parse(text.trim())?)
}

/// Canonical text, one declaration per line, no trailing newline.
pub fn serialize_network(net: &BooleanNetwork) -> String {
    let names = net.names();
    names
        .iter()
        .zip(net.rules())
        .map(|(name, rule)| format!("{name}, {}", rule.display(names)))
        .collect::<Vec<_>>()
        .join("\n")
}
