//! A small language of quantified relational identities.
//!
//! ```text
//! forall a:Cong, R:Refl, S:Refl . a & (R ; S) <= a & cl(R | S^-) + a & cl(R^- | S)
//! ```
//!
//! Operators, loosest first: `+` (alternating join), `|` (union),
//! `;` (composition), `&` (intersection), then postfix `*` (transitive
//! closure) and `^-` (converse). Atoms are variables, `0` (diagonal),
//! `1` (full relation), `cl(..)` (compatible closure), `cg(..)`
//! (generated congruence) and parenthesised expressions.

mod ast;
mod builtins;
mod eval;
mod parser;

pub use ast::{Expr, Quantifier, Relation, Sort, Statement};
pub use builtins::{builtin_statements, BuiltinStatement};
pub use eval::{
    bind, check_sort, check_statement, evaluate, missing_pairs, replay, ClaimResult, Env,
    Instances, MAX_INSTANCES,
};
pub use parser::{parse, parse_expr, ParseError, ParseErrorKind};
