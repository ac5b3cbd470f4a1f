//! Checks over the 4-generated subalgebras `B ≤ A × A`: the intersection
//! inclusion `β(γ∘δ∘γ) ⊆ βγ + δ` for all congruences `δ ≤ β` of `B`, and
//! the modular law on `Con(B)`.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;

use super::report::{Binding, BoundValue, CheckReport, Claim, Theorem, Violation, MAX_VIOLATIONS};
use crate::algebra::{closure, square, FiniteAlgebra, SubSquare};
use crate::error::{Error, Result};
use crate::relations::{enumerate_congruences, is_congruence, rel_plus, BinRel, Limits, Partition};

/// Distinct subalgebras of `A × A` generated by a multiset of four pairs.
///
/// Multisets are visited in lexicographic order of their encoded pairs; each
/// subalgebra is kept once, with the generators of its first occurrence.
/// `seed_limit` caps the number of multisets visited.
pub fn four_generated_subsquares(
    a: &FiniteAlgebra,
    seed_limit: Option<usize>,
) -> Result<Vec<SubSquare>> {
    let sq = square(a);
    let m = sq.size();
    let limit = seed_limit.unwrap_or(usize::MAX);

    // Multisets i ≤ j ≤ k ≤ l, grouped by i for parallel closure.
    let mut budget = limit;
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        if budget == 0 {
            break;
        }
        let r = m - i;
        let count = r * (r + 1) * (r + 2) / 6;
        let take = count.min(budget);
        groups.push((i, take));
        budget -= take;
    }

    let keyed: Vec<Vec<([usize; 4], Vec<usize>)>> = groups
        .par_iter()
        .map(|&(i, take)| {
            let mut out = Vec::new();
            let mut local = HashSet::new();
            let mut seen = 0;
            'outer: for j in i..m {
                for k in j..m {
                    for l in k..m {
                        if seen == take {
                            break 'outer;
                        }
                        seen += 1;
                        let gens = [i, j, k, l];
                        let (mut key, _) = closure(&sq, &gens).expect("codes are in range");
                        key.sort_unstable();
                        if local.insert(key.clone()) {
                            out.push((gens, key));
                        }
                    }
                }
            }
            out
        })
        .collect();

    let n = a.size();
    let mut seen = HashSet::new();
    let mut firsts = Vec::new();
    for (gens, key) in keyed.into_iter().flatten() {
        if seen.insert(key) {
            firsts.push(gens);
        }
    }
    firsts
        .par_iter()
        .map(|gens| {
            let pairs: Vec<(usize, usize)> = gens.iter().map(|&c| (c / n, c % n)).collect();
            SubSquare::generate(a, &sq, &pairs)
        })
        .collect()
}

/// Congruence lattice of a subsquare with precomputed meet/join tables.
struct ConLattice {
    rels: Vec<BinRel>,
    parts: Vec<Partition>,
    meet: Vec<usize>,
    join: Vec<usize>,
    leq: Vec<bool>,
}

impl ConLattice {
    fn new(b: &FiniteAlgebra, limits: &Limits) -> Result<Self> {
        let parts = enumerate_congruences(b, limits)?;
        let k = parts.len();
        let index: HashMap<&Partition, usize> =
            parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut meet = vec![0; k * k];
        let mut join = vec![0; k * k];
        let mut leq = vec![false; k * k];
        for x in 0..k {
            for y in 0..k {
                meet[x * k + y] = index[&parts[x].meet(&parts[y])];
                join[x * k + y] = index[&parts[x].join(&parts[y])];
                leq[x * k + y] = parts[x].refines(&parts[y]);
            }
        }
        Ok(ConLattice {
            rels: parts.iter().map(Partition::to_relation).collect(),
            parts,
            meet,
            join,
            leq,
        })
    }

    fn len(&self) -> usize {
        self.parts.len()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    /// Number of triples `(β, γ, δ)` with `δ ≤ β`.
    fn triples(&self) -> u64 {
        let k = self.len();
        let below = (0..k)
            .flat_map(|b| (0..k).map(move |d| (b, d)))
            .filter(|&(b, d)| self.leq(d, b))
            .count();
        (below * k) as u64
    }
}

/// Outcome of one check on one subsquare.
#[derive(Clone, Debug)]
pub struct SubsquareCheck {
    pub subsquare: SubSquare,
    pub congruences: usize,
    pub instances: u64,
    pub violation: Option<Violation>,
}

fn hypothesis_binding(
    b: &SubSquare,
    beta: &Partition,
    gamma: &Partition,
    delta: &Partition,
) -> Binding {
    let mut binding = Binding::new();
    binding.insert(
        "generators".into(),
        BoundValue::pairs(b.generators().iter().copied()),
    );
    binding.insert("B".into(), BoundValue::pairs(b.pairs()));
    binding.insert("beta".into(), BoundValue::Congruence(beta.clone()));
    binding.insert("gamma".into(), BoundValue::Congruence(gamma.clone()));
    binding.insert("delta".into(), BoundValue::Congruence(delta.clone()));
    binding
}

/// Tests `β(γ∘δ∘γ) ⊆ βγ + δ` for all congruences `β, γ, δ` of `B` with
/// `δ ≤ β`, stopping at the first failure.
///
/// Triples where `γ ≤ β`, `δ ≤ γ` or `γ ≤ δ` hold for lattice reasons and
/// are counted without being evaluated.
pub fn check_hypothesis_on(b: &SubSquare, limits: &Limits) -> Result<SubsquareCheck> {
    let lat = ConLattice::new(b.induced(), limits)?;
    let k = lat.len();
    let n = b.len();
    let mut t = BinRel::empty(n);
    let mut gd = BinRel::empty(n);
    let mut violation = None;
    'search: for gamma in 0..k {
        for delta in 0..k {
            if lat.leq(delta, gamma) || lat.leq(gamma, delta) {
                continue;
            }
            lat.rels[gamma].compose_into(&lat.rels[delta], &mut gd);
            gd.compose_into(&lat.rels[gamma], &mut t);
            for beta in 0..k {
                if !lat.leq(delta, beta) || lat.leq(gamma, beta) {
                    continue;
                }
                let right = &lat.rels[lat.join(lat.meet(beta, gamma), delta)];
                let mut left = t.clone();
                left.intersect_with(&lat.rels[beta]);
                if let Some((p, q)) = left.first_missing(right)? {
                    violation = Some(Violation {
                        binding: hypothesis_binding(
                            b,
                            &lat.parts[beta],
                            &lat.parts[gamma],
                            &lat.parts[delta],
                        ),
                        missing_pair: [p, q],
                        failed_claim: Claim::Hypothesis,
                    });
                    break 'search;
                }
            }
        }
    }
    Ok(SubsquareCheck {
        subsquare: b.clone(),
        congruences: k,
        instances: lat.triples(),
        violation,
    })
}

/// Tests the modular law `β(γ + δ) = βγ + δ` for all `δ ≤ β` in `Con(B)`.
pub fn check_modularity_on(b: &SubSquare, limits: &Limits) -> Result<SubsquareCheck> {
    let lat = ConLattice::new(b.induced(), limits)?;
    let k = lat.len();
    let mut violation = None;
    'search: for gamma in 0..k {
        for delta in 0..k {
            for beta in 0..k {
                if !lat.leq(delta, beta) {
                    continue;
                }
                let left = lat.meet(beta, lat.join(gamma, delta));
                let right = lat.join(lat.meet(beta, gamma), delta);
                if left != right {
                    let (p, q) = lat.rels[left]
                        .first_missing(&lat.rels[right])?
                        .expect("βγ + δ ≤ β(γ + δ) whenever δ ≤ β");
                    violation = Some(Violation {
                        binding: hypothesis_binding(
                            b,
                            &lat.parts[beta],
                            &lat.parts[gamma],
                            &lat.parts[delta],
                        ),
                        missing_pair: [p, q],
                        failed_claim: Claim::Modularity,
                    });
                    break 'search;
                }
            }
        }
    }
    Ok(SubsquareCheck {
        subsquare: b.clone(),
        congruences: k,
        instances: lat.triples(),
        violation,
    })
}

fn over_subsquares(
    a: &FiniteAlgebra,
    theorem: Theorem,
    seed_limit: Option<usize>,
    limits: &Limits,
    check: fn(&SubSquare, &Limits) -> Result<SubsquareCheck>,
) -> Result<CheckReport> {
    let start = Instant::now();
    limits.check_algebra(a)?;
    let subs = four_generated_subsquares(a, seed_limit)?;
    let checks: Vec<SubsquareCheck> = subs
        .par_iter()
        .map(|b| check(b, limits))
        .collect::<Result<_>>()?;
    let instances = checks.iter().map(|c| c.instances).sum();
    let violations = checks
        .into_iter()
        .filter_map(|c| c.violation)
        .take(MAX_VIOLATIONS)
        .collect();
    Ok(CheckReport::new(
        a.name(),
        theorem,
        instances,
        violations,
        start.elapsed(),
    ))
}

/// Runs [`check_hypothesis_on`] over every 4-generated subalgebra of `A × A`.
/// Reports the first violation of each failing subalgebra.
pub fn check_hypothesis(
    a: &FiniteAlgebra,
    seed_limit: Option<usize>,
    limits: &Limits,
) -> Result<CheckReport> {
    over_subsquares(
        a,
        Theorem::Hypothesis,
        seed_limit,
        limits,
        check_hypothesis_on,
    )
}

/// Runs [`check_modularity_on`] over every 4-generated subalgebra of `A × A`.
pub fn check_modularity_subsquares(
    a: &FiniteAlgebra,
    seed_limit: Option<usize>,
    limits: &Limits,
) -> Result<CheckReport> {
    over_subsquares(
        a,
        Theorem::Modularity,
        seed_limit,
        limits,
        check_modularity_on,
    )
}

/// Rebuilds `B` from the recorded generators and recomputes the failed
/// inclusion with plain relation operators.
pub(crate) fn replay(a: &FiniteAlgebra, v: &Violation) -> Result<bool> {
    let gens = v.get("generators")?.as_pairs()?;
    let b = SubSquare::generate(a, &square(a), &gens)?;
    if v.get("B")?.as_pairs()? != b.pairs() {
        return Err(Error::Precondition(
            "recorded subsquare does not match its generators".into(),
        ));
    }
    let beta = v.get("beta")?.as_partition()?;
    let gamma = v.get("gamma")?.as_partition()?;
    let delta = v.get("delta")?.as_partition()?;
    for (name, p) in [("beta", &beta), ("gamma", &gamma), ("delta", &delta)] {
        if p.size() != b.len() || !is_congruence(p, b.induced()) {
            return Err(Error::NotCongruence { what: name.into() });
        }
    }
    if !delta.refines(&beta) {
        return Err(Error::Precondition("delta is not below beta".into()));
    }
    let (br, gr, dr) = (beta.to_relation(), gamma.to_relation(), delta.to_relation());
    let inner = match v.failed_claim {
        Claim::Hypothesis => gr.compose(&dr)?.compose(&gr)?,
        Claim::Modularity => rel_plus(&gr, &dr)?,
        other => {
            return Err(Error::Precondition(format!(
                "{other} is not a subsquare claim"
            )))
        }
    };
    let left = inner.intersect(&br)?;
    let right = rel_plus(&br.intersect(&gr)?, &dr)?;
    let [p, q] = v.missing_pair;
    Ok(p < b.len() && q < b.len() && left.contains(p, q) && !right.contains(p, q))
}
