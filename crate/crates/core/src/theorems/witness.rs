//! Constructive content of the composition inclusion: given `a α c` and
//! `a R b S c`, build `B = ⟨(a,a), (a,b), (c,b), (c,c)⟩ ≤ A × A` and find a
//! chain `(x_i, y_i)` in `B` from `(a,a)` to `(c,c)` whose links alternate
//! between `(0×α)|B` and `(α×0)|B`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::algebra::{product_relation, square, FiniteAlgebra, SubSquare};
use crate::error::{Error, Result};
use crate::relations::{
    compatible_closure, is_congruence, rel_plus, BinRel, Partition, RelationLike,
};

/// Tag of the link from `(x_i, y_i)` to `(x_{i+1}, y_{i+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    /// `x` fixed, `y` moves inside its α-class: a `(0×α)|B` step. Even links.
    YStep,
    /// `y` fixed, `x` moves inside its α-class: an `(α×0)|B` step. Odd links.
    XStep,
}

impl LinkKind {
    fn for_index(i: usize) -> Self {
        if i.is_multiple_of(2) {
            LinkKind::YStep
        } else {
            LinkKind::XStep
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessChain {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub generators: [(usize, usize); 4],
    pub subsquare: SubSquare,
    /// `(x_i, y_i)` for `i = 0..=n`.
    pub chain: Vec<(usize, usize)>,
    /// `links[i]` tags the step from `chain[i]` to `chain[i + 1]`.
    pub links: Vec<LinkKind>,
}

/// Result of [`witness_chain`]. A disconnected outcome means the
/// hypothesis fails on this `B`.
#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    Chain(WitnessChain),
    Disconnected {
        subsquare: SubSquare,
        /// Size of the `(0×α + α×0)|B` class of `(a,a)`.
        reachable: usize,
    },
}

impl WitnessOutcome {
    pub fn chain(&self) -> Option<&WitnessChain> {
        match self {
            WitnessOutcome::Chain(c) => Some(c),
            WitnessOutcome::Disconnected { .. } => None,
        }
    }
}

/// Builds the alternating chain for `a α c`, `a R b`, `b S c`.
pub fn witness_chain(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    a: usize,
    b: usize,
    c: usize,
    r: &BinRel,
    s: &BinRel,
) -> Result<WitnessOutcome> {
    let n = alg.size();
    for v in [a, b, c] {
        if v >= n {
            return Err(Error::ElementOutOfRange {
                element: v,
                size: n,
            });
        }
    }
    if alpha.size() != n || r.size() != n || s.size() != n {
        return Err(Error::SizeMismatch {
            left: alpha.size().max(r.size()).max(s.size()),
            right: n,
        });
    }
    if !is_congruence(alpha, alg) {
        return Err(Error::NotCongruence {
            what: "alpha".into(),
        });
    }
    if !r.is_reflexive() || !s.is_reflexive() {
        return Err(Error::NotReflexive {
            what: "R and S".into(),
        });
    }
    let alpha_rel = alpha.to_relation();
    if !alpha_rel.contains(a, c) {
        return Err(Error::Precondition(format!(
            "{a} and {c} are not alpha-related"
        )));
    }
    if !r.contains(a, b) || !s.contains(b, c) {
        return Err(Error::Precondition(format!("need {a} R {b} and {b} S {c}")));
    }

    let generators = [(a, a), (a, b), (c, b), (c, c)];
    let bsq = SubSquare::generate(alg, &square(alg), &generators)?;
    let zero = BinRel::diagonal(n);
    let y_steps = product_relation(&zero, &alpha_rel, &bsq)?;
    let x_steps = product_relation(&alpha_rel, &zero, &bsq)?;

    let start = bsq.index_of((a, a)).expect("generator");
    let goal = bsq.index_of((c, c)).expect("generator");

    // BFS over the union of both step relations.
    let m = bsq.len();
    let mut parent: Vec<Option<(usize, LinkKind)>> = vec![None; m];
    let mut visited = vec![false; m];
    visited[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if p == goal {
            break;
        }
        for (rel, kind) in [(&y_steps, LinkKind::YStep), (&x_steps, LinkKind::XStep)] {
            for q in rel.successors(p) {
                if !visited[q] {
                    visited[q] = true;
                    parent[q] = Some((p, kind));
                    queue.push_back(q);
                }
            }
        }
    }
    if !visited[goal] {
        return Ok(WitnessOutcome::Disconnected {
            subsquare: bsq,
            reachable: visited.iter().filter(|&&v| v).count(),
        });
    }

    let mut steps = Vec::new();
    let mut cur = goal;
    while let Some((prev, kind)) = parent[cur] {
        steps.push((kind, cur));
        cur = prev;
    }
    steps.reverse();

    // Pad with stationary links so the tags alternate strictly from YStep.
    let mut chain = vec![bsq.pair(start)];
    let mut links = Vec::new();
    for (kind, target) in steps {
        if kind != LinkKind::for_index(links.len()) {
            let here = *chain.last().expect("nonempty");
            chain.push(here);
            links.push(LinkKind::for_index(links.len()));
        }
        chain.push(bsq.pair(target));
        links.push(kind);
    }

    Ok(WitnessOutcome::Chain(WitnessChain {
        a,
        b,
        c,
        generators,
        subsquare: bsq,
        chain,
        links,
    }))
}

/// Reasons a chain fails re-validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainDefect {
    Endpoints,
    Alternation { link: usize },
    LinkTag { link: usize },
    OutsideSubsquare { index: usize },
    OutsideClosure { index: usize },
    NotAlphaRelated { i: usize, j: usize },
    Certificate { step: usize },
}

impl fmt::Display for ChainDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDefect::Endpoints => write!(f, "chain does not run from (a,a) to (c,c)"),
            ChainDefect::Alternation { link } => write!(f, "link {link} breaks alternation"),
            ChainDefect::LinkTag { link } => write!(f, "link {link} does not satisfy its tag"),
            ChainDefect::OutsideSubsquare { index } => {
                write!(f, "(x_{index}, y_{index}) is not in B")
            }
            ChainDefect::OutsideClosure { index } => {
                write!(f, "(x_{index}, y_{index}) is not in cl(R ∪ S⁻)")
            }
            ChainDefect::NotAlphaRelated { i, j } => {
                write!(f, "x_{i} and y_{j} are not alpha-related")
            }
            ChainDefect::Certificate { step } => {
                write!(f, "certificate step {step} is not a P or P⁻ step")
            }
        }
    }
}

impl WitnessChain {
    /// Length `n` of the chain.
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// The walk `x_0, y_1, x_2, y_3, …` ending at `c`, whose steps alternate
    /// between `P = α·cl(R∪S⁻)` and `P⁻ = α·cl(R⁻∪S)`, starting with `P`.
    pub fn certificate_walk(&self) -> Vec<usize> {
        self.chain
            .iter()
            .enumerate()
            .map(|(j, &(x, y))| if j % 2 == 0 { x } else { y })
            .collect()
    }

    /// Re-checks every structural claim about the chain against `alg`,
    /// `alpha`, `R` and `S` by direct membership tests.
    pub fn validate(
        &self,
        alg: &FiniteAlgebra,
        alpha: &Partition,
        r: &BinRel,
        s: &BinRel,
    ) -> std::result::Result<(), ChainDefect> {
        let first = self.chain.first().copied();
        let last = self.chain.last().copied();
        if first != Some((self.a, self.a)) || last != Some((self.c, self.c)) {
            return Err(ChainDefect::Endpoints);
        }
        if self.links.len() + 1 != self.chain.len() {
            return Err(ChainDefect::Endpoints);
        }
        for (i, (&kind, w)) in self.links.iter().zip(self.chain.windows(2)).enumerate() {
            if kind != LinkKind::for_index(i) {
                return Err(ChainDefect::Alternation { link: i });
            }
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            let ok = match kind {
                LinkKind::YStep => x0 == x1 && alpha.related(y0, y1),
                LinkKind::XStep => y0 == y1 && alpha.related(x0, x1),
            };
            if !ok {
                return Err(ChainDefect::LinkTag { link: i });
            }
        }
        let closure = r
            .union(&s.converse())
            .and_then(|u| compatible_closure(&u, alg))
            .map_err(|_| ChainDefect::OutsideClosure { index: 0 })?;
        for (i, &(x, y)) in self.chain.iter().enumerate() {
            if self.subsquare.index_of((x, y)).is_none() {
                return Err(ChainDefect::OutsideSubsquare { index: i });
            }
            if !closure.contains(x, y) {
                return Err(ChainDefect::OutsideClosure { index: i });
            }
        }
        for (i, &(x, _)) in self.chain.iter().enumerate() {
            for (j, &(_, y)) in self.chain.iter().enumerate() {
                if !alpha.related(x, y) {
                    return Err(ChainDefect::NotAlphaRelated { i, j });
                }
            }
        }
        let mut p = closure;
        p.intersect_with(&alpha.to_relation());
        let walk = self.certificate_walk();
        for (step, w) in walk.windows(2).enumerate() {
            let ok = if step % 2 == 0 {
                p.contains(w[0], w[1])
            } else {
                p.contains(w[1], w[0])
            };
            if !ok {
                return Err(ChainDefect::Certificate { step });
            }
        }
        if walk.last() != Some(&self.c) {
            return Err(ChainDefect::Certificate { step: walk.len() });
        }
        let joined =
            rel_plus(&p, &p.converse()).map_err(|_| ChainDefect::Certificate { step: 0 })?;
        if !joined.contains(self.a, self.c) {
            return Err(ChainDefect::Certificate { step: walk.len() });
        }
        Ok(())
    }
}

impl fmt::Display for WitnessChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "B = <(a,a), (a,b), (c,b), (c,c)> with a={}, b={}, c={}: {} elements",
            self.a,
            self.b,
            self.c,
            self.subsquare.len()
        )?;
        for (i, &(x, y)) in self.chain.iter().enumerate() {
            write!(f, "  (x_{i}, y_{i}) = ({x}, {y})")?;
            if let Some(kind) = self.links.get(i) {
                let tag = match kind {
                    LinkKind::YStep => "0×α",
                    LinkKind::XStep => "α×0",
                };
                write!(f, "   --{tag}-->")?;
            }
            writeln!(f)?;
        }
        let walk: Vec<String> = self
            .certificate_walk()
            .iter()
            .map(usize::to_string)
            .collect();
        write!(f, "  certificate walk: {}", walk.join(" "))
    }
}
