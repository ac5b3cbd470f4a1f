use super::ast::Statement;
use super::parser::parse;
use crate::theorems::{Claim, Direction, Theorem};

/// One claim of a built-in theorem written in the statement language.
#[derive(Clone, Debug)]
pub struct BuiltinStatement {
    pub theorem: Theorem,
    /// Verifier claim matching `left ⊆ right`.
    pub forward: Claim,
    /// Verifier claim matching `right ⊆ left`, for equalities.
    pub backward: Option<Claim>,
    pub text: &'static str,
}

impl BuiltinStatement {
    pub fn statement(&self) -> Statement {
        parse(self.text).expect("built-in statements parse")
    }

    /// The verifier claim a statement claim corresponds to.
    pub fn verifier_claim(&self, statement_claim: Claim) -> Option<Claim> {
        match statement_claim {
            Claim::Statement(Direction::Forward) => Some(self.forward),
            Claim::Statement(Direction::Backward) => self.backward,
            _ => None,
        }
    }
}

/// Every claim of the four conclusion theorems, in verifier claim order.
pub fn builtin_statements() -> Vec<BuiltinStatement> {
    use Claim::*;
    use Direction::*;
    let eq = |theorem, f: fn(Direction) -> Claim, text| BuiltinStatement {
        theorem,
        forward: f(Forward),
        backward: Some(f(Backward)),
        text,
    };
    let inc = |theorem, claim, text| BuiltinStatement {
        theorem,
        forward: claim,
        backward: None,
        text,
    };
    vec![
        inc(
            Theorem::Subrel,
            SubrelInclusion,
            "forall a:Cong, R:Refl, S:Refl . a & (R ; S) <= a & cl(R | S^-) + a & cl(R^- | S)",
        ),
        inc(
            Theorem::Subrelpiu,
            SubrelpiuInclusion,
            "forall a:Cong, R:Refl, S:Refl . a & (R + S) <= a & cl(R | S^-) + a & cl(R^- | S)",
        ),
        eq(
            Theorem::Subrelpiu,
            SubrelpiuFirstEq,
            "forall a:Cong, R:Refl, S:Refl . a & cl(R | S^-) + a & cl(R^- | S) = a & cl(R | S) + a & cl(R^- | S^-)",
        ),
        eq(
            Theorem::Subrelpiu,
            SubrelpiuSecondEq,
            "forall a:Cong, R:Refl, S:Refl . a & cl(R | S) + a & cl(R^- | S^-) = a & (cg(R) + cg(S))",
        ),
        eq(Theorem::Wtip, Wtip, "forall a:Cong, T:Tol . a & T* = (a & T)*"),
        inc(
            Theorem::Rr,
            RrInclusion,
            "forall a:Cong, R:Refl . a & (R + R^-) <= a & (cl(R) + cl(R)^-)",
        ),
        eq(
            Theorem::Rr,
            RrFirstEq,
            "forall a:Cong, R:Refl . a & (cl(R) + cl(R)^-) = a & cl(R) + a & cl(R)^-",
        ),
        eq(Theorem::Rr, RrSecondEq, "forall a:Cong, R:Refl . a & cl(R) + a & cl(R)^- = a & cg(R)"),
    ]
}
