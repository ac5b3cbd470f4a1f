use std::fmt;

use thiserror::Error;

use super::ast::{Expr, Quantifier, Relation, Sort, Statement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    Undeclared(String),
    Duplicate(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::Undeclared(v) => write!(f, "undeclared variable '{v}'"),
            ParseErrorKind::Duplicate(v) => write!(f, "duplicate declaration of '{v}'"),
        }
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Cl,
    Cg,
    Zero,
    One,
    Amp,
    Bar,
    Semi,
    Plus,
    Star,
    Conv,
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Le,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(v) => return write!(f, "'{v}'"),
            Tok::Forall => "'forall'",
            Tok::Cl => "'cl'",
            Tok::Cg => "'cg'",
            Tok::Zero => "'0'",
            Tok::One => "'1'",
            Tok::Amp => "'&'",
            Tok::Bar => "'|'",
            Tok::Semi => "';'",
            Tok::Plus => "'+'",
            Tok::Star => "'*'",
            Tok::Conv => "'^-'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Comma => "','",
            Tok::Colon => "':'",
            Tok::Dot => "'.'",
            Tok::Le => "'<='",
            Tok::Eq => "'='",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' || c == '\'' {
                    word.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "cl" => Tok::Cl,
                "cg" => Tok::Cg,
                _ => Tok::Ident(word),
            };
            out.push((tok, pos));
            continue;
        }
        bump(&mut chars);
        let tok = match c {
            '0' => Tok::Zero,
            '1' => Tok::One,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            ';' => Tok::Semi,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '.' => Tok::Dot,
            '=' => Tok::Eq,
            '⊆' => Tok::Le,
            '^' => match chars.peek() {
                Some('-') => {
                    bump(&mut chars);
                    Tok::Conv
                }
                _ => return Err(syntax(pos, "expected '-' after '^'")),
            },
            '<' => match chars.peek() {
                Some('=') => {
                    bump(&mut chars);
                    Tok::Le
                }
                _ => return Err(syntax(pos, "expected '=' after '<'")),
            },
            other => return Err(syntax(pos, format!("unexpected character '{other}'"))),
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

type Builder = fn(Expr, Expr) -> Expr;

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    declared: Option<&'a [Quantifier]>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {tok}, found {}", self.peek()),
            ))
        }
    }

    fn quantifiers(&mut self) -> Result<Vec<Quantifier>, ParseError> {
        let mut out: Vec<Quantifier> = Vec::new();
        if !self.eat(&Tok::Forall) {
            return Ok(out);
        }
        loop {
            let pos = self.pos();
            let name = match self.next() {
                Tok::Ident(name) => name,
                t => return Err(syntax(pos, format!("expected variable name, found {t}"))),
            };
            if out.iter().any(|q| q.name == name) {
                return Err(ParseError {
                    line: pos.line,
                    column: pos.column,
                    kind: ParseErrorKind::Duplicate(name),
                });
            }
            self.expect(Tok::Colon)?;
            let pos = self.pos();
            let sort = match self.next() {
                Tok::Ident(s) => s.parse::<Sort>().map_err(|e| syntax(pos, e))?,
                t => return Err(syntax(pos, format!("expected sort, found {t}"))),
            };
            out.push(Quantifier { name, sort });
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::Dot)?;
        Ok(out)
    }

    fn binary(&mut self, level: usize) -> Result<Expr, ParseError> {
        const LEVELS: [(Tok, Builder); 4] = [
            (Tok::Plus, Expr::plus),
            (Tok::Bar, Expr::union),
            (Tok::Semi, Expr::compose),
            (Tok::Amp, Expr::meet),
        ];
        if level == LEVELS.len() {
            return self.postfix();
        }
        let (tok, make) = &LEVELS[level];
        let mut left = self.binary(level + 1)?;
        while self.eat(tok) {
            let right = self.binary(level + 1)?;
            left = make(left, right);
        }
        Ok(left)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.binary(0)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        loop {
            if self.eat(&Tok::Star) {
                e = Expr::star(e);
            } else if self.eat(&Tok::Conv) {
                e = Expr::converse(e);
            } else {
                return Ok(e);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.next() {
            Tok::Zero => Ok(Expr::Zero),
            Tok::One => Ok(Expr::One),
            Tok::Ident(name) => {
                if let Some(decl) = self.declared {
                    if !decl.iter().any(|q| q.name == name) {
                        return Err(ParseError {
                            line: pos.line,
                            column: pos.column,
                            kind: ParseErrorKind::Undeclared(name),
                        });
                    }
                }
                Ok(Expr::Var(name))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            t @ (Tok::Cl | Tok::Cg) => {
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(if t == Tok::Cl {
                    Expr::cl(e)
                } else {
                    Expr::cg(e)
                })
            }
            t => Err(syntax(pos, format!("expected expression, found {t}"))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("unexpected {}", self.peek())))
        }
    }
}

/// Parses `forall x:Sort, ... . LHS <= RHS` (or `= RHS`). The quantifier
/// prefix may be omitted for closed statements.
pub fn parse(text: &str) -> Result<Statement, ParseError> {
    let toks = lex(text)?;
    let mut head = Parser {
        toks,
        at: 0,
        declared: None,
    };
    let quantifiers = head.quantifiers()?;
    let mut p = Parser {
        toks: head.toks,
        at: head.at,
        declared: Some(&quantifiers),
    };
    let left = p.expr()?;
    let pos = p.pos();
    let relation = match p.next() {
        Tok::Le => Relation::Included,
        Tok::Eq => Relation::Equal,
        t => return Err(syntax(pos, format!("expected '<=' or '=', found {t}"))),
    };
    let right = p.expr()?;
    p.finish()?;
    Ok(Statement {
        quantifiers,
        relation,
        left,
        right,
    })
}

/// Parses a bare expression; variables are not scope-checked.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        declared: None,
    };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}
