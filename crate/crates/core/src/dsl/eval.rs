use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ast::{Expr, Relation, Sort, Statement};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relations::{
    cg_unionfind, classify, compatible_closure, enumerate_congruences, enumerate_tolerances,
    rel_plus, BinRel, Limits, Partition,
};
use crate::theorems::{
    reflexive_domain, BoundValue, CheckReport, Claim, Direction, Strategy, Theorem, Violation,
    EXHAUST_MAX_SIZE, MAX_VIOLATIONS,
};

/// Values bound to statement variables.
pub type Env = BTreeMap<String, BinRel>;

/// Instance grids larger than this are refused.
pub const MAX_INSTANCES: u64 = 50_000_000;

/// Evaluates `e` under `env`. Alternating join demands reflexive operands.
pub fn evaluate(a: &FiniteAlgebra, env: &Env, e: &Expr) -> Result<BinRel> {
    let n = a.size();
    Ok(match e {
        Expr::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("variable '{v}' is unbound")))?,
        Expr::Zero => BinRel::diagonal(n),
        Expr::One => BinRel::full(n),
        Expr::Meet(l, r) => evaluate(a, env, l)?.intersect(&evaluate(a, env, r)?)?,
        Expr::Union(l, r) => evaluate(a, env, l)?.union(&evaluate(a, env, r)?)?,
        Expr::Compose(l, r) => evaluate(a, env, l)?.compose(&evaluate(a, env, r)?)?,
        Expr::Plus(l, r) => {
            let (l, r) = (evaluate(a, env, l)?, evaluate(a, env, r)?);
            if !l.is_reflexive() || !r.is_reflexive() {
                return Err(Error::Sort(format!(
                    "operands of '+' must be reflexive in {e}"
                )));
            }
            rel_plus(&l, &r)?
        }
        Expr::Converse(x) => evaluate(a, env, x)?.converse(),
        Expr::Star(x) => evaluate(a, env, x)?.transitive_closure(),
        Expr::Cl(x) => compatible_closure(&evaluate(a, env, x)?, a)?,
        Expr::Cg(x) => cg_unionfind(a, evaluate(a, env, x)?.pairs()).to_relation(),
    })
}

/// Checks that `value` belongs to the domain of `sort` on `a`.
pub fn check_sort(a: &FiniteAlgebra, name: &str, sort: Sort, value: &BinRel) -> Result<()> {
    if value.size() != a.size() {
        return Err(Error::SizeMismatch {
            left: value.size(),
            right: a.size(),
        });
    }
    let c = classify(value, a)?;
    let ok = match sort {
        Sort::Cong => c.is_congruence,
        Sort::Tol => c.is_tolerance,
        Sort::Refl => c.reflexive,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Sort(format!("'{name}' is not of sort {sort}")))
    }
}

/// Builds an environment from named values, checking every quantifier is
/// bound to a value of its sort.
pub fn bind(a: &FiniteAlgebra, stmt: &Statement, values: &[(&str, BinRel)]) -> Result<Env> {
    let mut env = Env::new();
    for q in &stmt.quantifiers {
        let value = values
            .iter()
            .find(|(name, _)| *name == q.name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Precondition(format!("no value for '{}'", q.name)))?;
        check_sort(a, &q.name, q.sort, &value)?;
        env.insert(q.name.clone(), value);
    }
    Ok(env)
}

fn claims(stmt: &Statement) -> &'static [Direction] {
    match stmt.relation {
        Relation::Included => &[Direction::Forward],
        Relation::Equal => &[Direction::Forward, Direction::Backward],
    }
}

/// A claim and the first pair of its left side missing from its right side.
pub type ClaimResult = (Claim, Option<(usize, usize)>);

/// The smallest missing pair of each checked direction: `left ⊆ right`,
/// and for equalities also `right ⊆ left`.
pub fn missing_pairs(a: &FiniteAlgebra, stmt: &Statement, env: &Env) -> Result<Vec<ClaimResult>> {
    let left = evaluate(a, env, &stmt.left)?;
    let right = evaluate(a, env, &stmt.right)?;
    claims(stmt)
        .iter()
        .map(|&d| {
            let missing = match d {
                Direction::Forward => left.first_missing(&right)?,
                Direction::Backward => right.first_missing(&left)?,
            };
            Ok((Claim::Statement(d), missing))
        })
        .collect()
}

/// The quantifier grid of a statement.
///
/// Congruence and tolerance variables range over their full domains, in
/// declaration order with the first variable outermost. Reflexive
/// variables vary innermost: the strategy grid to the power of their
/// count, then `k` joint seeded draws.
pub struct Instances {
    names: Vec<String>,
    sorts: Vec<Sort>,
    full: Vec<Vec<BinRel>>,
    refl: Option<Vec<Vec<BinRel>>>,
    total: u64,
}

impl Instances {
    pub fn new(
        a: &FiniteAlgebra,
        stmt: &Statement,
        strategy: Strategy,
        seed: u64,
        limits: &Limits,
    ) -> Result<Self> {
        limits.check_algebra(a)?;
        let quantifies_refl = stmt.quantifiers.iter().any(|q| q.sort == Sort::Refl);
        if quantifies_refl && strategy == Strategy::Exhaust && a.size() > EXHAUST_MAX_SIZE {
            return Err(Error::StrategyMismatch {
                strategy: strategy.to_string(),
                size: a.size(),
            });
        }
        let n = a.size();
        let mut names = Vec::new();
        let mut sorts = Vec::new();
        let mut full = Vec::new();
        let mut refl_names = Vec::new();
        let mut congruences = None;
        let mut tolerances = None;
        for q in &stmt.quantifiers {
            match q.sort {
                Sort::Cong => {
                    if congruences.is_none() {
                        let cons = enumerate_congruences(a, limits)?;
                        congruences =
                            Some(cons.iter().map(Partition::to_relation).collect::<Vec<_>>());
                    }
                    names.push(q.name.clone());
                    sorts.push(q.sort);
                    full.push(congruences.clone().expect("filled"));
                }
                Sort::Tol => {
                    if tolerances.is_none() {
                        tolerances = Some(enumerate_tolerances(a, limits)?);
                    }
                    names.push(q.name.clone());
                    sorts.push(q.sort);
                    full.push(tolerances.clone().expect("filled"));
                }
                Sort::Refl => refl_names.push(q.name.clone()),
            }
        }
        let mut refl = None;
        if !refl_names.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let grid = reflexive_domain(
                match strategy {
                    Strategy::PrincipalSample(_) => Strategy::Principal,
                    Strategy::Sample(_) => Strategy::Sample(0),
                    s => s,
                },
                n,
                &mut rng,
            )?;
            let mut tuples: Vec<Vec<BinRel>> = vec![Vec::new()];
            for _ in &refl_names {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        grid.iter().map(move |r| {
                            let mut t = t.clone();
                            t.push(r.clone());
                            t
                        })
                    })
                    .collect();
            }
            let k = match strategy {
                Strategy::Sample(k) | Strategy::PrincipalSample(k) => k,
                _ => 0,
            };
            for _ in 0..k {
                tuples.push(
                    refl_names
                        .iter()
                        .map(|_| crate::theorems::draw_reflexive(&mut rng, n))
                        .collect(),
                );
            }
            refl = Some(tuples);
            for name in refl_names {
                names.push(name);
                sorts.push(Sort::Refl);
            }
        }
        let mut total: u64 = full.iter().map(|d| d.len() as u64).product();
        if let Some(tuples) = &refl {
            total = total.saturating_mul(tuples.len() as u64);
        }
        if total > MAX_INSTANCES {
            return Err(Error::SizeBound {
                what: "statement instance grid",
                size: total as usize,
                limit: MAX_INSTANCES as usize,
            });
        }
        Ok(Instances {
            names,
            sorts,
            full,
            refl,
            total,
        })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// The environment of instance `i`.
    pub fn env(&self, i: u64) -> Env {
        let mut env = Env::new();
        let mut rest = i;
        let mut picks = vec![0usize; self.full.len()];
        if let Some(tuples) = &self.refl {
            let len = tuples.len() as u64;
            let tuple = &tuples[(rest % len) as usize];
            rest /= len;
            let first = self.full.len();
            for (j, r) in tuple.iter().enumerate() {
                env.insert(self.names[first + j].clone(), r.clone());
            }
        }
        for (d, pick) in self.full.iter().zip(picks.iter_mut()).rev() {
            let len = d.len() as u64;
            *pick = (rest % len) as usize;
            rest /= len;
        }
        for (j, (d, &pick)) in self.full.iter().zip(&picks).enumerate() {
            env.insert(self.names[j].clone(), d[pick].clone());
        }
        env
    }

    pub fn iter(&self) -> impl Iterator<Item = Env> + '_ {
        (0..self.total).map(|i| self.env(i))
    }

    fn binding(&self, env: &Env) -> crate::theorems::Binding {
        self.names
            .iter()
            .zip(&self.sorts)
            .map(|(name, sort)| {
                let r = &env[name];
                let value = match sort {
                    Sort::Cong => BoundValue::Congruence(
                        Partition::from_relation(r).expect("congruence domain"),
                    ),
                    _ => BoundValue::relation(r),
                };
                (name.clone(), value)
            })
            .collect()
    }
}

/// Evaluates a statement over its quantifier grid; see [`Instances`] for
/// the iteration order. Violations keep grid order, capped at
/// [`MAX_VIOLATIONS`].
pub fn check_statement(
    a: &FiniteAlgebra,
    stmt: &Statement,
    strategy: Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<CheckReport> {
    let start = Instant::now();
    let grid = Instances::new(a, stmt, strategy, seed, limits)?;
    let results: Vec<Result<Vec<Violation>>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let env = grid.env(i);
            let missing = missing_pairs(a, stmt, &env)?;
            let failed: Vec<_> = missing
                .into_iter()
                .filter_map(|(c, m)| m.map(|m| (c, m)))
                .collect();
            if failed.is_empty() {
                return Ok(Vec::new());
            }
            let binding = grid.binding(&env);
            Ok(failed
                .into_iter()
                .map(|(claim, (x, y))| Violation {
                    binding: binding.clone(),
                    missing_pair: [x, y],
                    failed_claim: claim,
                })
                .collect())
        })
        .collect();
    let mut violations = Vec::new();
    for r in results {
        for v in r? {
            if violations.len() < MAX_VIOLATIONS {
                violations.push(v);
            }
        }
    }
    Ok(CheckReport::new(
        a.name(),
        Theorem::Statement,
        grid.len(),
        violations,
        start.elapsed(),
    ))
}

/// Re-evaluates a statement violation from its recorded binding.
pub fn replay(a: &FiniteAlgebra, stmt: &Statement, v: &Violation) -> Result<bool> {
    let mut values = Vec::new();
    for q in &stmt.quantifiers {
        values.push((q.name.as_str(), v.get(&q.name)?.to_relation()?));
    }
    let env = bind(a, stmt, &values)?;
    let [x, y] = v.missing_pair;
    if x >= a.size() || y >= a.size() {
        return Ok(false);
    }
    let left = evaluate(a, &env, &stmt.left)?;
    let right = evaluate(a, &env, &stmt.right)?;
    Ok(match v.failed_claim {
        Claim::Statement(Direction::Forward) => left.contains(x, y) && !right.contains(x, y),
        Claim::Statement(Direction::Backward) => right.contains(x, y) && !left.contains(x, y),
        other => {
            return Err(Error::Precondition(format!(
                "{other} is not a statement claim"
            )))
        }
    })
}
