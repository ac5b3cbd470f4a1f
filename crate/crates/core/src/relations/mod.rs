//! Relations on finite algebras and the operators built from them: converse,
//! composition, transitive closure `R*`, compatible closure `cl(R)`, the
//! alternating join `R + S`, and the generated congruence `Cg(R)`.

mod binrel;
mod partition;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use binrel::{BinRel, RelationLike, RelationLiteral};
pub use partition::{Partition, UnionFind};

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Result};

/// Environment variable that overrides [`Limits::max_size`].
pub const MAX_SIZE_ENV: &str = "CONGREL_MAX_SIZE";

/// Size bounds for the exhaustive drivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest ambient algebra the drivers accept. Congruence enumeration
    /// runs on subalgebras of the square, so it accepts up to `max_size²`.
    pub max_size: usize,
    /// Largest algebra whose tolerances are enumerated by exhausting
    /// generator sets.
    pub tolerance_exhaust_max: usize,
    /// Permit tolerance enumeration beyond `tolerance_exhaust_max`.
    pub allow_large_tolerances: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_size: 6,
            tolerance_exhaust_max: 5,
            allow_large_tolerances: false,
        }
    }
}

impl Limits {
    /// Defaults, with `max_size` taken from `CONGREL_MAX_SIZE` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.max_size = n;
        }
        limits
    }

    pub fn check_algebra(&self, a: &FiniteAlgebra) -> Result<()> {
        if a.size() > self.max_size {
            return Err(Error::SizeBound {
                what: "algebra",
                size: a.size(),
                limit: self.max_size,
            });
        }
        Ok(())
    }
}

fn check_carrier(r: &BinRel, a: &FiniteAlgebra) -> Result<()> {
    if r.size() != a.size() {
        return Err(Error::SizeMismatch {
            left: r.size(),
            right: a.size(),
        });
    }
    Ok(())
}

/// The least compatible relation containing `r`.
pub fn compatible_closure(r: &BinRel, a: &FiniteAlgebra) -> Result<BinRel> {
    check_carrier(r, a)?;
    let mut out = r.clone();
    let mut pairs: Vec<(usize, usize)> = r.pairs().collect();
    for (o, op) in a.operations().iter().enumerate() {
        if op.arity() == 0 {
            let c = a.apply(o, &[]);
            if out.insert(c, c) {
                pairs.push((c, c));
            }
        }
    }

    // Semi-naive: a tuple of pairs is examined once its last-processed
    // member is processed.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut processed = 0;
    while processed < pairs.len() {
        let cur = processed;
        processed += 1;
        for (o, op) in a.operations().iter().enumerate() {
            let k = op.arity();
            if k == 0 {
                continue;
            }
            for fixed in 0..k {
                for_each_tuple(processed, k - 1, |rest| {
                    xs.clear();
                    ys.clear();
                    for (pos, &i) in rest.iter().enumerate() {
                        if pos == fixed {
                            xs.push(pairs[cur].0);
                            ys.push(pairs[cur].1);
                        }
                        xs.push(pairs[i].0);
                        ys.push(pairs[i].1);
                    }
                    if fixed == rest.len() {
                        xs.push(pairs[cur].0);
                        ys.push(pairs[cur].1);
                    }
                    let (u, v) = (a.apply(o, &xs), a.apply(o, &ys));
                    if out.insert(u, v) {
                        pairs.push((u, v));
                    }
                });
            }
        }
    }
    Ok(out)
}

/// `R + S`: the union of the alternating products `R ∘ S ∘ R ∘ …`, i.e. the
/// transitive closure of `R ∪ S`. Both inputs must be reflexive.
pub fn rel_plus(r: &BinRel, s: &BinRel) -> Result<BinRel> {
    r.check_same_size(s)?;
    if !r.is_reflexive() {
        return Err(Error::NotReflexive {
            what: "left operand of +".into(),
        });
    }
    if !s.is_reflexive() {
        return Err(Error::NotReflexive {
            what: "right operand of +".into(),
        });
    }
    let mut out = r.union(s)?;
    out.transitive_close();
    debug_assert_eq!(out, r.compose(s)?.transitive_closure());
    Ok(out)
}

/// How [`cg`] computes the generated congruence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CgStrategy {
    /// `cl(R) + cl(R)⁻`.
    Formula,
    /// Union-find with propagation through the basic translations.
    UnionFind,
}

/// The least congruence containing `r` (reflexive closure applied first).
pub fn cg(r: &BinRel, a: &FiniteAlgebra, strategy: CgStrategy) -> Result<Partition> {
    check_carrier(r, a)?;
    match strategy {
        CgStrategy::Formula => {
            let closed = compatible_closure(&r.reflexive_closure(), a)?;
            let joined = rel_plus(&closed, &closed.converse())?;
            Partition::from_relation(&joined)
        }
        CgStrategy::UnionFind => Ok(cg_unionfind(a, r.pairs())),
    }
}

/// Union-find congruence generation.
///
/// Every successful merge `(u, v)` becomes an edge; each edge is pushed
/// through every operation with one argument varying and the others fixed.
/// The resulting equivalence is closed under those translations, and that
/// suffices for compatibility.
pub fn cg_unionfind(
    a: &FiniteAlgebra,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Partition {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (x, y) in pairs {
        if uf.union(x, y) {
            edges.push((x, y));
        }
    }
    let mut args = Vec::new();
    let mut i = 0;
    while i < edges.len() {
        let (x, y) = edges[i];
        i += 1;
        for (o, op) in a.operations().iter().enumerate() {
            let k = op.arity();
            for fixed in 0..k {
                for_each_tuple(n, k - 1, |rest| {
                    args.clear();
                    args.extend_from_slice(&rest[..fixed]);
                    args.push(x);
                    args.extend_from_slice(&rest[fixed..]);
                    let u = a.apply(o, &args);
                    args[fixed] = y;
                    let v = a.apply(o, &args);
                    if uf.union(u, v) {
                        edges.push((u, v));
                    }
                });
            }
        }
    }
    uf.into_partition()
}

/// Structural properties of a relation on an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub compatible: bool,
    pub is_tolerance: bool,
    pub is_congruence: bool,
}

pub fn classify(r: &BinRel, a: &FiniteAlgebra) -> Result<Classification> {
    check_carrier(r, a)?;
    let reflexive = r.is_reflexive();
    let symmetric = r.is_symmetric();
    let transitive = r.is_transitive();
    let compatible = is_compatible(r, a);
    let is_tolerance = reflexive && symmetric && compatible;
    Ok(Classification {
        reflexive,
        symmetric,
        transitive,
        compatible,
        is_tolerance,
        is_congruence: is_tolerance && transitive,
    })
}

/// True if `r` is closed under every operation applied componentwise.
pub fn is_compatible(r: &BinRel, a: &FiniteAlgebra) -> bool {
    let pairs: Vec<(usize, usize)> = r.pairs().collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (o, op) in a.operations().iter().enumerate() {
        let mut ok = true;
        for_each_tuple(pairs.len(), op.arity(), |idx| {
            if !ok {
                return;
            }
            xs.clear();
            ys.clear();
            for &i in idx {
                xs.push(pairs[i].0);
                ys.push(pairs[i].1);
            }
            ok = r.contains(a.apply(o, &xs), a.apply(o, &ys));
        });
        if !ok {
            return false;
        }
    }
    true
}

/// True if `p` is compatible with every operation of `a`.
pub fn is_congruence(p: &Partition, a: &FiniteAlgebra) -> bool {
    p.size() == a.size() && cg_unionfind(a, pairs_of_blocks(p)) == *p
}

fn pairs_of_blocks(p: &Partition) -> impl Iterator<Item = (usize, usize)> + '_ {
    let mut first = vec![usize::MAX; p.num_blocks()];
    (0..p.size()).filter_map(move |x| {
        let b = p.block_of(x);
        if first[b] == usize::MAX {
            first[b] = x;
            None
        } else {
            Some((first[b], x))
        }
    })
}

/// All congruences of `a`: principal congruences closed under joins.
///
/// Ordered from finest to coarsest (by descending block count, ties broken
/// by the canonical label vector), so `0` comes first and `1` last.
pub fn enumerate_congruences(a: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Partition>> {
    let bound = limits.max_size * limits.max_size;
    if a.size() > bound {
        return Err(Error::SizeBound {
            what: "congruence enumeration",
            size: a.size(),
            limit: bound,
        });
    }
    let n = a.size();
    let mut seen: HashSet<Partition> = HashSet::new();
    let mut list = vec![Partition::identity(n)];
    seen.insert(list[0].clone());
    for x in 0..n {
        for y in x + 1..n {
            let p = cg_unionfind(a, [(x, y)]);
            if seen.insert(p.clone()) {
                list.push(p);
            }
        }
    }
    let mut i = 1;
    while i < list.len() {
        let mut j = 1;
        while j < i {
            let joined = list[i].join(&list[j]);
            if seen.insert(joined.clone()) {
                list.push(joined);
            }
            j += 1;
        }
        i += 1;
    }
    list.sort_by(|p, q| q.num_blocks().cmp(&p.num_blocks()).then_with(|| p.cmp(q)));
    Ok(list)
}

/// All tolerances of `a`, as closures `cl(Δ ∪ G ∪ G⁻)` over every set `G`
/// of off-diagonal pairs taken up to symmetry. Sorted by size then bits.
pub fn enumerate_tolerances(a: &FiniteAlgebra, limits: &Limits) -> Result<Vec<BinRel>> {
    let n = a.size();
    if n > limits.tolerance_exhaust_max && !limits.allow_large_tolerances {
        return Err(Error::SizeBound {
            what: "tolerance enumeration",
            size: n,
            limit: limits.tolerance_exhaust_max,
        });
    }
    let gens: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    if gens.len() >= 63 {
        return Err(Error::SizeBound {
            what: "tolerance enumeration",
            size: n,
            limit: 11,
        });
    }
    let mut seen = HashSet::new();
    for mask in 0u64..1 << gens.len() {
        let mut r = BinRel::diagonal(n);
        for (i, &(x, y)) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                r.insert(x, y);
                r.insert(y, x);
            }
        }
        seen.insert(compatible_closure(&r, a)?);
    }
    let mut list: Vec<BinRel> = seen.into_iter().collect();
    list.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    Ok(list)
}

/// `Δ` plus each off-diagonal pair independently with probability `density`.
/// Identical seeds give identical relations.
pub fn random_reflexive(n: usize, density: f64, seed: u64) -> Result<BinRel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_reflexive_with(&mut rng, n, density)
}

pub fn random_reflexive_with<G: Rng + ?Sized>(
    rng: &mut G,
    n: usize,
    density: f64,
) -> Result<BinRel> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Precondition(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let mut r = BinRel::diagonal(n);
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(density) {
                r.insert(x, y);
            }
        }
    }
    Ok(r)
}

/// Every reflexive relation on `n` elements, `2^(n² − n)` of them, ordered
/// by the bitmask over off-diagonal positions in row-major order.
pub fn all_reflexive(n: usize) -> Result<impl Iterator<Item = BinRel>> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    if off.len() > 20 {
        return Err(Error::SizeBound {
            what: "reflexive relation enumeration",
            size: n,
            limit: 5,
        });
    }
    Ok((0u32..1 << off.len()).map(move |mask| {
        let mut r = BinRel::diagonal(n);
        for (i, &(x, y)) in off.iter().enumerate() {
            if mask >> i & 1 == 1 {
                r.insert(x, y);
            }
        }
        r
    }))
}

/// `Δ` followed by every `Δ ∪ {(a, b)}` with `a ≠ b`.
pub fn principal_reflexive(n: usize) -> Vec<BinRel> {
    let mut out = vec![BinRel::diagonal(n)];
    for x in 0..n {
        for y in 0..n {
            if x != y {
                out.push(BinRel::principal(n, x, y).expect("in range"));
            }
        }
    }
    out
}

/// Parses a relation given on the command line: a JSON relation literal,
/// `principal:a,b` for `Δ ∪ {(a, b)}`, `diag`, or `full`.
pub fn parse_relation_spec(spec: &str, n: usize) -> Result<BinRel> {
    let spec = spec.trim();
    let r = if spec.starts_with('{') {
        BinRel::from_json(spec)?
    } else if let Some(rest) = spec.strip_prefix("principal:") {
        let (a, b) = parse_pair(rest)?;
        BinRel::principal(n, a, b)?
    } else if spec == "diag" || spec == "0" {
        BinRel::diagonal(n)
    } else if spec == "full" || spec == "1" {
        BinRel::full(n)
    } else {
        return Err(Error::MalformedRelation(format!(
            "unrecognised relation '{spec}'"
        )));
    };
    if r.size() != n {
        return Err(Error::SizeMismatch {
            left: r.size(),
            right: n,
        });
    }
    Ok(r)
}

/// Parses a congruence given on the command line: any relation spec that is
/// a congruence of `a`, or `cg:a,b` for the principal congruence.
pub fn parse_congruence_spec(spec: &str, a: &FiniteAlgebra) -> Result<Partition> {
    let p = if let Some(rest) = spec.trim().strip_prefix("cg:") {
        let (x, y) = parse_pair(rest)?;
        for v in [x, y] {
            if v >= a.size() {
                return Err(Error::ElementOutOfRange {
                    element: v,
                    size: a.size(),
                });
            }
        }
        cg_unionfind(a, [(x, y)])
    } else {
        let r = parse_relation_spec(spec, a.size())?;
        Partition::from_relation(&r).map_err(|_| Error::NotCongruence { what: spec.into() })?
    };
    if !is_congruence(&p, a) {
        return Err(Error::NotCongruence { what: spec.into() });
    }
    Ok(p)
}

pub(crate) fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a = a
                .parse()
                .map_err(|_| Error::MalformedRelation(format!("bad element '{a}'")))?;
            let b = b
                .parse()
                .map_err(|_| Error::MalformedRelation(format!("bad element '{b}'")))?;
            Ok((a, b))
        }
        _ => Err(Error::MalformedRelation(format!(
            "expected 'a,b', got '{text}'"
        ))),
    }
}
