use std::time::Instant;

use super::report::{Binding, BoundValue, CheckReport, Claim, Direction, Theorem, Violation};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relations::{
    cg_unionfind, classify, compatible_closure, is_congruence, rel_plus, BinRel, Partition,
};

/// One directed inclusion `left ⊆ right` of a theorem instance.
#[derive(Clone, Debug)]
pub struct ClaimSides {
    pub claim: Claim,
    pub left: BinRel,
    pub right: BinRel,
}

impl ClaimSides {
    fn new(claim: Claim, left: BinRel, right: BinRel) -> Self {
        ClaimSides { claim, left, right }
    }

    /// The smallest pair of `left` missing from `right`, if any.
    pub fn missing(&self) -> Option<(usize, usize)> {
        self.left
            .first_missing(&self.right)
            .expect("sides share a carrier")
    }
}

fn push_equality(
    out: &mut Vec<ClaimSides>,
    make: fn(Direction) -> Claim,
    left: &BinRel,
    right: &BinRel,
) {
    out.push(ClaimSides::new(
        make(Direction::Forward),
        left.clone(),
        right.clone(),
    ));
    out.push(ClaimSides::new(
        make(Direction::Backward),
        right.clone(),
        left.clone(),
    ));
}

fn meet(alpha: &BinRel, r: &BinRel) -> BinRel {
    let mut out = r.clone();
    out.intersect_with(alpha);
    out
}

/// `α·cl(X)` for `X = left ∪ right`.
fn alpha_cl_union(
    a: &FiniteAlgebra,
    alpha: &BinRel,
    left: &BinRel,
    right: &BinRel,
) -> Result<BinRel> {
    Ok(meet(alpha, &compatible_closure(&left.union(right)?, a)?))
}

/// `α(R∘S) ⊆ α·cl(R∪S⁻) + α·cl(R⁻∪S)`.
pub fn subrel_sides(
    a: &FiniteAlgebra,
    alpha: &BinRel,
    r: &BinRel,
    s: &BinRel,
) -> Result<Vec<ClaimSides>> {
    let left = meet(alpha, &r.compose(s)?);
    let right = rel_plus(
        &alpha_cl_union(a, alpha, r, &s.converse())?,
        &alpha_cl_union(a, alpha, &r.converse(), s)?,
    )?;
    Ok(vec![ClaimSides::new(Claim::SubrelInclusion, left, right)])
}

/// The inclusion and the two equalities of the alternating-join theorem:
/// `α(R+S) ⊆ α·cl(R∪S⁻) + α·cl(R⁻∪S) = α·cl(R∪S) + α·cl(R⁻∪S⁻) = α(Cg(R)+Cg(S))`.
pub fn subrelpiu_sides(
    a: &FiniteAlgebra,
    alpha: &BinRel,
    r: &BinRel,
    s: &BinRel,
) -> Result<Vec<ClaimSides>> {
    let (rc, sc) = (r.converse(), s.converse());
    let e0 = meet(alpha, &rel_plus(r, s)?);
    let e1 = rel_plus(
        &alpha_cl_union(a, alpha, r, &sc)?,
        &alpha_cl_union(a, alpha, &rc, s)?,
    )?;
    let e2 = rel_plus(
        &alpha_cl_union(a, alpha, r, s)?,
        &alpha_cl_union(a, alpha, &rc, &sc)?,
    )?;
    let cg_r = cg_unionfind(a, r.pairs()).to_relation();
    let cg_s = cg_unionfind(a, s.pairs()).to_relation();
    let e3 = meet(alpha, &rel_plus(&cg_r, &cg_s)?);
    let mut out = vec![ClaimSides::new(Claim::SubrelpiuInclusion, e0, e1.clone())];
    push_equality(&mut out, Claim::SubrelpiuFirstEq, &e1, &e2);
    push_equality(&mut out, Claim::SubrelpiuSecondEq, &e2, &e3);
    Ok(out)
}

/// `αΘ* = (αΘ)*`.
pub fn wtip_sides(alpha: &BinRel, theta: &BinRel) -> Result<Vec<ClaimSides>> {
    alpha.check_same_size(theta)?;
    let left = meet(alpha, &theta.transitive_closure());
    let right = meet(alpha, theta).transitive_closure();
    let mut out = Vec::with_capacity(2);
    push_equality(&mut out, Claim::Wtip, &left, &right);
    Ok(out)
}

/// `α(R+R⁻) ⊆ α(cl(R)+cl(R)⁻) = α·cl(R) + α·cl(R)⁻ = α·Cg(R)`.
pub fn rr_sides(a: &FiniteAlgebra, alpha: &BinRel, r: &BinRel) -> Result<Vec<ClaimSides>> {
    let cl = compatible_closure(r, a)?;
    let clc = cl.converse();
    let f0 = meet(alpha, &rel_plus(r, &r.converse())?);
    let f1 = meet(alpha, &rel_plus(&cl, &clc)?);
    let f2 = rel_plus(&meet(alpha, &cl), &meet(alpha, &clc))?;
    let f3 = meet(alpha, &cg_unionfind(a, r.pairs()).to_relation());
    let mut out = vec![ClaimSides::new(Claim::RrInclusion, f0, f1.clone())];
    push_equality(&mut out, Claim::RrFirstEq, &f1, &f2);
    push_equality(&mut out, Claim::RrSecondEq, &f2, &f3);
    Ok(out)
}

pub(crate) fn violations_of(
    sides: &[ClaimSides],
    binding: impl FnOnce() -> Binding,
) -> Vec<Violation> {
    let failures: Vec<(Claim, (usize, usize))> = sides
        .iter()
        .filter_map(|c| c.missing().map(|m| (c.claim, m)))
        .collect();
    if failures.is_empty() {
        return Vec::new();
    }
    let binding = binding();
    failures
        .into_iter()
        .map(|(claim, (x, y))| Violation {
            binding: binding.clone(),
            missing_pair: [x, y],
            failed_claim: claim,
        })
        .collect()
}

pub(crate) fn binding_alpha_rs(alpha: &Partition, r: &BinRel, s: Option<&BinRel>) -> Binding {
    let mut b = Binding::new();
    b.insert("alpha".into(), BoundValue::Congruence(alpha.clone()));
    match s {
        Some(s) => {
            b.insert("R".into(), BoundValue::relation(r));
            b.insert("S".into(), BoundValue::relation(s));
        }
        None => {
            b.insert("R".into(), BoundValue::relation(r));
        }
    }
    b
}

pub(crate) fn binding_alpha_theta(alpha: &Partition, theta: &BinRel) -> Binding {
    let mut b = Binding::new();
    b.insert("alpha".into(), BoundValue::Congruence(alpha.clone()));
    b.insert("theta".into(), BoundValue::relation(theta));
    b
}

fn require_congruence(a: &FiniteAlgebra, alpha: &Partition) -> Result<()> {
    if alpha.size() != a.size() {
        return Err(Error::SizeMismatch {
            left: alpha.size(),
            right: a.size(),
        });
    }
    if !is_congruence(alpha, a) {
        return Err(Error::NotCongruence {
            what: "alpha".into(),
        });
    }
    Ok(())
}

fn require_reflexive(a: &FiniteAlgebra, r: &BinRel, what: &str) -> Result<()> {
    if r.size() != a.size() {
        return Err(Error::SizeMismatch {
            left: r.size(),
            right: a.size(),
        });
    }
    if !r.is_reflexive() {
        return Err(Error::NotReflexive { what: what.into() });
    }
    Ok(())
}

pub(crate) fn subrel_violations(
    a: &FiniteAlgebra,
    alpha: &Partition,
    r: &BinRel,
    s: &BinRel,
) -> Result<Vec<Violation>> {
    let sides = subrel_sides(a, &alpha.to_relation(), r, s)?;
    Ok(violations_of(&sides, || {
        binding_alpha_rs(alpha, r, Some(s))
    }))
}

pub(crate) fn subrelpiu_violations(
    a: &FiniteAlgebra,
    alpha: &Partition,
    r: &BinRel,
    s: &BinRel,
) -> Result<Vec<Violation>> {
    let sides = subrelpiu_sides(a, &alpha.to_relation(), r, s)?;
    Ok(violations_of(&sides, || {
        binding_alpha_rs(alpha, r, Some(s))
    }))
}

pub(crate) fn wtip_violations(alpha: &Partition, theta: &BinRel) -> Result<Vec<Violation>> {
    let sides = wtip_sides(&alpha.to_relation(), theta)?;
    Ok(violations_of(&sides, || binding_alpha_theta(alpha, theta)))
}

pub(crate) fn rr_violations(
    a: &FiniteAlgebra,
    alpha: &Partition,
    r: &BinRel,
) -> Result<Vec<Violation>> {
    let sides = rr_sides(a, &alpha.to_relation(), r)?;
    Ok(violations_of(&sides, || binding_alpha_rs(alpha, r, None)))
}

fn single(
    a: &FiniteAlgebra,
    theorem: Theorem,
    start: Instant,
    violations: Vec<Violation>,
) -> CheckReport {
    CheckReport::new(a.name(), theorem, 1, violations, start.elapsed())
}

/// Checks `α(R∘S) ⊆ α·cl(R∪S⁻) + α·cl(R⁻∪S)` for one binding.
pub fn verify_subrel(
    a: &FiniteAlgebra,
    alpha: &Partition,
    r: &BinRel,
    s: &BinRel,
) -> Result<CheckReport> {
    let start = Instant::now();
    require_congruence(a, alpha)?;
    require_reflexive(a, r, "R")?;
    require_reflexive(a, s, "S")?;
    Ok(single(
        a,
        Theorem::Subrel,
        start,
        subrel_violations(a, alpha, r, s)?,
    ))
}

/// Checks the inclusion and both equalities of the alternating-join
/// theorem; each failing half is reported under its own claim.
pub fn verify_subrelpiu(
    a: &FiniteAlgebra,
    alpha: &Partition,
    r: &BinRel,
    s: &BinRel,
) -> Result<CheckReport> {
    let start = Instant::now();
    require_congruence(a, alpha)?;
    require_reflexive(a, r, "R")?;
    require_reflexive(a, s, "S")?;
    Ok(single(
        a,
        Theorem::Subrelpiu,
        start,
        subrelpiu_violations(a, alpha, r, s)?,
    ))
}

/// Checks `αΘ* = (αΘ)*` for a tolerance `Θ`.
pub fn verify_wtip(a: &FiniteAlgebra, alpha: &Partition, theta: &BinRel) -> Result<CheckReport> {
    let start = Instant::now();
    require_congruence(a, alpha)?;
    if !classify(theta, a)?.is_tolerance {
        return Err(Error::NotTolerance {
            what: "theta".into(),
        });
    }
    Ok(single(
        a,
        Theorem::Wtip,
        start,
        wtip_violations(alpha, theta)?,
    ))
}

/// Checks `α(R+R⁻) ⊆ α(cl(R)+cl(R)⁻) = α·cl(R) + α·cl(R)⁻ = α·Cg(R)`.
pub fn verify_rr(a: &FiniteAlgebra, alpha: &Partition, r: &BinRel) -> Result<CheckReport> {
    let start = Instant::now();
    require_congruence(a, alpha)?;
    require_reflexive(a, r, "R")?;
    Ok(single(a, Theorem::Rr, start, rr_violations(a, alpha, r)?))
}

/// Recomputes the sides of a theorem for the binding stored in `v`.
pub(crate) fn sides_for(a: &FiniteAlgebra, v: &Violation) -> Result<Vec<ClaimSides>> {
    let alpha = v.get("alpha")?.as_partition()?;
    require_congruence(a, &alpha)?;
    let alpha = alpha.to_relation();
    match v.failed_claim.theorem() {
        Theorem::Subrel => subrel_sides(
            a,
            &alpha,
            &v.get("R")?.to_relation()?,
            &v.get("S")?.to_relation()?,
        ),
        Theorem::Subrelpiu => subrelpiu_sides(
            a,
            &alpha,
            &v.get("R")?.to_relation()?,
            &v.get("S")?.to_relation()?,
        ),
        Theorem::Wtip => wtip_sides(&alpha, &v.get("theta")?.to_relation()?),
        Theorem::Rr => rr_sides(a, &alpha, &v.get("R")?.to_relation()?),
        t => Err(Error::Precondition(format!(
            "{t} is not a conclusion theorem"
        ))),
    }
}
