use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Quantifier domain of a statement variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sort {
    Cong,
    Tol,
    Refl,
}

impl Sort {
    pub fn as_str(self) -> &'static str {
        match self {
            Sort::Cong => "Cong",
            Sort::Tol => "Tol",
            Sort::Refl => "Refl",
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sort {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Cong" => Ok(Sort::Cong),
            "Tol" => Ok(Sort::Tol),
            "Refl" => Ok(Sort::Refl),
            _ => Err(format!("unknown sort '{s}' (expected Cong, Tol or Refl)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    /// The diagonal.
    Zero,
    /// The full relation.
    One,
    Meet(Box<Expr>, Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Compose(Box<Expr>, Box<Expr>),
    /// Alternating join `(R ∘ S)*`.
    Plus(Box<Expr>, Box<Expr>),
    Converse(Box<Expr>),
    Star(Box<Expr>),
    Cl(Box<Expr>),
    Cg(Box<Expr>),
}

// binding strength, loosest first
const PLUS: u8 = 1;
const UNION: u8 = 2;
const COMPOSE: u8 = 3;
const MEET: u8 = 4;
const POSTFIX: u8 = 5;
const ATOM: u8 = 6;

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn meet(l: Expr, r: Expr) -> Expr {
        Expr::Meet(Box::new(l), Box::new(r))
    }

    pub fn union(l: Expr, r: Expr) -> Expr {
        Expr::Union(Box::new(l), Box::new(r))
    }

    pub fn compose(l: Expr, r: Expr) -> Expr {
        Expr::Compose(Box::new(l), Box::new(r))
    }

    pub fn plus(l: Expr, r: Expr) -> Expr {
        Expr::Plus(Box::new(l), Box::new(r))
    }

    pub fn converse(e: Expr) -> Expr {
        Expr::Converse(Box::new(e))
    }

    pub fn star(e: Expr) -> Expr {
        Expr::Star(Box::new(e))
    }

    pub fn cl(e: Expr) -> Expr {
        Expr::Cl(Box::new(e))
    }

    pub fn cg(e: Expr) -> Expr {
        Expr::Cg(Box::new(e))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Plus(..) => PLUS,
            Expr::Union(..) => UNION,
            Expr::Compose(..) => COMPOSE,
            Expr::Meet(..) => MEET,
            Expr::Converse(_) | Expr::Star(_) => POSTFIX,
            _ => ATOM,
        }
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Expr::Zero | Expr::One => {}
            Expr::Meet(l, r) | Expr::Union(l, r) | Expr::Compose(l, r) | Expr::Plus(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Expr::Converse(e) | Expr::Star(e) | Expr::Cl(e) | Expr::Cg(e) => e.collect_vars(out),
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        let binary = |f: &mut fmt::Formatter<'_>, l: &Expr, op: &str, r: &Expr, p: u8| {
            l.write_at(f, p)?;
            write!(f, " {op} ")?;
            r.write_at(f, p + 1)
        };
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Zero => f.write_str("0"),
            Expr::One => f.write_str("1"),
            Expr::Plus(l, r) => binary(f, l, "+", r, PLUS),
            Expr::Union(l, r) => binary(f, l, "|", r, UNION),
            Expr::Compose(l, r) => binary(f, l, ";", r, COMPOSE),
            Expr::Meet(l, r) => binary(f, l, "&", r, MEET),
            Expr::Converse(e) => {
                e.write_at(f, POSTFIX)?;
                f.write_str("^-")
            }
            Expr::Star(e) => {
                e.write_at(f, POSTFIX)?;
                f.write_str("*")
            }
            Expr::Cl(e) => {
                f.write_str("cl(")?;
                e.write_at(f, 0)?;
                f.write_str(")")
            }
            Expr::Cg(e) => {
                f.write_str("cg(")?;
                e.write_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

/// Canonical form: left-associative binary operators, minimal parentheses.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `<=`
    Included,
    /// `=`
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quantifier {
    pub name: String,
    pub sort: Sort,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Statement {
    pub quantifiers: Vec<Quantifier>,
    pub relation: Relation,
    pub left: Expr,
    pub right: Expr,
}

impl Statement {
    pub fn sort_of(&self, name: &str) -> Option<Sort> {
        self.quantifiers
            .iter()
            .find(|q| q.name == name)
            .map(|q| q.sort)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.quantifiers.is_empty() {
            write!(f, "forall ")?;
            for (i, q) in self.quantifiers.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}:{}", q.name, q.sort)?;
            }
            write!(f, " . ")?;
        }
        let rel = match self.relation {
            Relation::Included => "<=",
            Relation::Equal => "=",
        };
        write!(f, "{} {rel} {}", self.left, self.right)
    }
}
