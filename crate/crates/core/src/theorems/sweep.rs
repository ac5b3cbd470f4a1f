use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CheckReport, Theorem, Violation, MAX_VIOLATIONS};
use super::verify::{rr_violations, subrel_violations, subrelpiu_violations, wtip_violations};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relations::{
    all_reflexive, compatible_closure, enumerate_congruences, enumerate_tolerances,
    principal_reflexive, random_reflexive_with, BinRel, Limits, Partition,
};

/// Largest algebra on which [`Strategy::Exhaust`] is accepted.
pub const EXHAUST_MAX_SIZE: usize = 3;

/// How the "for all reflexive relations" quantifier is covered.
///
/// Congruence and tolerance quantifiers are always enumerated in full.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every reflexive relation; sizes up to [`EXHAUST_MAX_SIZE`] when
    /// reflexive relations are quantified.
    Exhaust,
    /// `Δ` and every `Δ ∪ {(a, b)}`.
    Principal,
    /// The given number of seeded random draws.
    Sample(usize),
    /// The principal grid followed by seeded random draws.
    PrincipalSample(usize),
}

impl Strategy {
    fn check(self, a: &FiniteAlgebra) -> Result<()> {
        if self == Strategy::Exhaust && a.size() > EXHAUST_MAX_SIZE {
            return Err(Error::StrategyMismatch {
                strategy: self.to_string(),
                size: a.size(),
            });
        }
        Ok(())
    }

    fn grid(self, n: usize) -> Result<Vec<BinRel>> {
        Ok(match self {
            Strategy::Exhaust => all_reflexive(n)?.collect(),
            Strategy::Principal | Strategy::PrincipalSample(_) => principal_reflexive(n),
            Strategy::Sample(_) => Vec::new(),
        })
    }

    fn samples(self) -> usize {
        match self {
            Strategy::Sample(k) | Strategy::PrincipalSample(k) => k,
            _ => 0,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaust => write!(f, "exhaust"),
            Strategy::Principal => write!(f, "principal"),
            Strategy::Sample(k) => write!(f, "sample({k})"),
            Strategy::PrincipalSample(k) => write!(f, "principal+sample({k})"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// Accepts `exhaust`, `principal`, `sample`, `principal+sample`, with an
    /// optional `:count` on the sampling forms (default 1000).
    fn from_str(s: &str) -> Result<Self> {
        let (name, count) = match s.split_once(':') {
            Some((name, count)) => {
                let count = count
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad sample count '{count}'")))?;
                (name, Some(count))
            }
            None => (s, None),
        };
        let count = count.unwrap_or(1000);
        Ok(match name {
            "exhaust" => Strategy::Exhaust,
            "principal" => Strategy::Principal,
            "sample" => Strategy::Sample(count),
            "principal+sample" => Strategy::PrincipalSample(count),
            _ => return Err(Error::Precondition(format!("unknown strategy '{s}'"))),
        })
    }
}

/// Draws a reflexive relation with a density chosen uniformly from
/// `[0.05, 0.6)`, so samples range from sparse to nearly full.
pub(crate) fn draw_reflexive(rng: &mut ChaCha8Rng, n: usize) -> BinRel {
    let density = rng.gen_range(0.05..0.6);
    random_reflexive_with(rng, n, density).expect("density in range")
}

/// The reflexive relations a sweep visits for one quantified variable:
/// the strategy grid followed by `samples` seeded draws.
pub fn reflexive_domain(strategy: Strategy, n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<BinRel>> {
    let mut out = strategy.grid(n)?;
    out.extend((0..strategy.samples()).map(|_| draw_reflexive(rng, n)));
    Ok(out)
}

/// The `(R, S)` pairs a sweep visits: the product of the grid with itself,
/// followed by `samples` seeded pairs.
pub fn reflexive_pairs(
    strategy: Strategy,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(BinRel, BinRel)>> {
    let grid = strategy.grid(n)?;
    let mut out: Vec<(BinRel, BinRel)> = grid
        .iter()
        .flat_map(|r| grid.iter().map(move |s| (r.clone(), s.clone())))
        .collect();
    for _ in 0..strategy.samples() {
        let r = draw_reflexive(rng, n);
        let s = draw_reflexive(rng, n);
        out.push((r, s));
    }
    Ok(out)
}

fn collect(results: Vec<Result<Vec<Violation>>>) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for r in results {
        for v in r? {
            if out.len() < MAX_VIOLATIONS {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Runs one conclusion theorem over the quantifier grid: every congruence
/// `α` against the strategy's reflexive relations, or against every
/// tolerance for the wTIP identity. One seeded generator per report.
pub fn sweep_theorem(
    a: &FiniteAlgebra,
    theorem: Theorem,
    strategy: Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<CheckReport> {
    let start = Instant::now();
    if theorem != Theorem::Wtip {
        strategy.check(a)?;
    }
    limits.check_algebra(a)?;
    let n = a.size();
    let alphas = enumerate_congruences(a, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (instances, violations) = match theorem {
        Theorem::Subrel | Theorem::Subrelpiu => {
            let pairs = reflexive_pairs(strategy, n, &mut rng)?;
            let grid: Vec<(&Partition, &(BinRel, BinRel))> = alphas
                .iter()
                .flat_map(|al| pairs.iter().map(move |p| (al, p)))
                .collect();
            let results = grid
                .par_iter()
                .map(|&(alpha, (r, s))| {
                    if theorem == Theorem::Subrel {
                        subrel_violations(a, alpha, r, s)
                    } else {
                        subrelpiu_violations(a, alpha, r, s)
                    }
                })
                .collect();
            (grid.len(), collect(results)?)
        }
        Theorem::Rr => {
            let rels = reflexive_domain(strategy, n, &mut rng)?;
            let grid: Vec<(&Partition, &BinRel)> = alphas
                .iter()
                .flat_map(|al| rels.iter().map(move |r| (al, r)))
                .collect();
            let results = grid
                .par_iter()
                .map(|&(alpha, r)| rr_violations(a, alpha, r))
                .collect();
            (grid.len(), collect(results)?)
        }
        Theorem::Wtip => {
            let tols = enumerate_tolerances(a, limits)?;
            let grid: Vec<(&Partition, &BinRel)> = alphas
                .iter()
                .flat_map(|al| tols.iter().map(move |t| (al, t)))
                .collect();
            let results = grid
                .par_iter()
                .map(|&(alpha, t)| wtip_violations(alpha, t))
                .collect();
            (grid.len(), collect(results)?)
        }
        other => {
            return Err(Error::Precondition(format!(
                "{other} is not swept over relations"
            )));
        }
    };
    Ok(CheckReport::new(
        a.name(),
        theorem,
        instances as u64,
        violations,
        start.elapsed(),
    ))
}

/// All four conclusions, one report each, in the order of
/// [`Theorem::CONCLUSIONS`].
pub fn sweep(
    a: &FiniteAlgebra,
    strategy: Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<CheckReport>> {
    Theorem::CONCLUSIONS
        .iter()
        .map(|&t| sweep_theorem(a, t, strategy, seed, limits))
        .collect()
}

/// Samples `(α, R, S)` and runs all four verifiers on each draw (with
/// `Θ = cl(R ∪ R⁻)` for the tolerance identity). Returns the first
/// violation, deterministically for a given seed.
pub fn search_counterexample(
    a: &FiniteAlgebra,
    budget: usize,
    seed: u64,
    limits: &Limits,
) -> Result<Option<Violation>> {
    limits.check_algebra(a)?;
    let n = a.size();
    let alphas = enumerate_congruences(a, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let alpha = &alphas[rng.gen_range(0..alphas.len())];
        let r = draw_reflexive(&mut rng, n);
        let s = draw_reflexive(&mut rng, n);
        let theta = compatible_closure(&r.union(&r.converse())?, a)?;
        let found = [
            subrel_violations(a, alpha, &r, &s)?,
            subrelpiu_violations(a, alpha, &r, &s)?,
            wtip_violations(alpha, &theta)?,
            rr_violations(a, alpha, &r)?,
        ];
        if let Some(v) = found.into_iter().flatten().next() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
