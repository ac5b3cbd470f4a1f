//! Checkers for the subsquare hypothesis and the four relational
//! conclusions, plus sweeps, witness chains and counterexample search.

mod hypothesis;
mod report;
mod sweep;
mod verify;
mod witness;

pub use hypothesis::{
    check_hypothesis, check_hypothesis_on, check_modularity_on, check_modularity_subsquares,
    four_generated_subsquares, SubsquareCheck,
};
pub use report::{
    Binding, BoundValue, CheckReport, Claim, Direction, Outcome, Theorem, Violation, MAX_VIOLATIONS,
};
pub(crate) use sweep::draw_reflexive;
pub use sweep::{
    reflexive_domain, reflexive_pairs, search_counterexample, sweep, sweep_theorem, Strategy,
    EXHAUST_MAX_SIZE,
};
pub use verify::{
    rr_sides, subrel_sides, subrelpiu_sides, verify_rr, verify_subrel, verify_subrelpiu,
    verify_wtip, wtip_sides, ClaimSides,
};
pub use witness::{witness_chain, ChainDefect, LinkKind, WitnessChain, WitnessOutcome};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relations::Limits;

/// Recomputes a recorded violation from its binding alone.
///
/// Returns `Ok(true)` when the missing pair is in the left side and absent
/// from the right side of the failed claim. Statement violations are
/// replayed through [`crate::dsl::replay`], which needs the statement text.
pub fn replay(a: &FiniteAlgebra, v: &Violation, limits: &Limits) -> Result<bool> {
    limits.check_algebra(a)?;
    match v.failed_claim.theorem() {
        Theorem::Hypothesis | Theorem::Modularity => hypothesis::replay(a, v),
        Theorem::Statement => Err(Error::Precondition(
            "statement violations replay through dsl::replay".into(),
        )),
        _ => {
            let sides = verify::sides_for(a, v)?;
            let side = sides
                .iter()
                .find(|c| c.claim == v.failed_claim)
                .ok_or_else(|| Error::Precondition(format!("no claim {}", v.failed_claim)))?;
            let [x, y] = v.missing_pair;
            let n = a.size();
            Ok(x < n && y < n && side.left.contains(x, y) && !side.right.contains(x, y))
        }
    }
}
