//! Finite algebras given by operation tables, their squares, and the
//! subuniverses generated inside them.
//!
//! The universe of an algebra of size `n` is `{0, .., n-1}`. A `k`-ary
//! operation is a table of `n^k` entries indexed row-major by the argument
//! tuple, so for a binary operation `f(a, b)` lives at `a * n + b`.
//!
//! Pairs of the square `A × A` are encoded as `x * n + y` everywhere in the
//! crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relations::{BinRel, RelationLike};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    name: String,
    arity: usize,
    table: Vec<usize>,
}

impl Operation {
    pub fn new(name: impl Into<String>, arity: usize, table: Vec<usize>) -> Self {
        Operation {
            name: name.into(),
            arity,
            table,
        }
    }

    /// Builds a binary operation table from a closure.
    pub fn binary(name: impl Into<String>, n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Operation::new(name, 2, table)
    }

    pub fn unary(name: impl Into<String>, n: usize, f: impl Fn(usize) -> usize) -> Self {
        Operation::new(name, 1, (0..n).map(f).collect())
    }

    pub fn constant(name: impl Into<String>, value: usize) -> Self {
        Operation::new(name, 0, vec![value])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<Operation>,
}

impl FiniteAlgebra {
    /// Validates the table invariants: every table has exactly `n^arity`
    /// entries, all inside the universe.
    pub fn new(name: impl Into<String>, size: usize, operations: Vec<Operation>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        for op in &operations {
            let expected = checked_pow(size, op.arity).ok_or_else(|| {
                Error::MalformedAlgebra(format!(
                    "operation '{}': table of arity {} over {} elements is too large",
                    op.name, op.arity, size
                ))
            })?;
            if op.table.len() != expected {
                return Err(Error::TableLength {
                    op: op.name.clone(),
                    got: op.table.len(),
                    expected,
                });
            }
            if let Some((index, &value)) = op.table.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(Error::EntryOutOfRange {
                    op: op.name.clone(),
                    index,
                    value: value as u64,
                });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            operations,
        })
    }

    /// The pure set on `n` elements (no operations).
    pub fn pure_set(name: impl Into<String>, n: usize) -> Result<Self> {
        FiniteAlgebra::new(name, n, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    /// Applies operation `op` to `args`.
    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let op = &self.operations[op];
        debug_assert_eq!(args.len(), op.arity);
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        op.table[idx]
    }

    /// Parses and validates the algebra JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedAlgebra(e.to_string()))?;
        doc.into_algebra()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AlgebraDoc::from(self)).expect("algebra serializes")
    }

    /// True if every operation maps `set` into itself.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &x in set {
            member[x] = true;
        }
        let mut args = Vec::new();
        for (o, op) in self.operations.iter().enumerate() {
            let mut ok = true;
            for_each_tuple(set.len(), op.arity, |idx| {
                if !ok {
                    return;
                }
                args.clear();
                args.extend(idx.iter().map(|&i| set[i]));
                if !member[self.apply(o, &args)] {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (size {}", self.name, self.size)?;
        for op in &self.operations {
            write!(f, ", {}/{}", op.name, op.arity)?;
        }
        write!(f, ")")
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    // refuse tables that could never be materialised
    (acc <= 1 << 28).then_some(acc)
}

/// Calls `f` with every tuple in `{0..m}^k`, in row-major order.
pub(crate) fn for_each_tuple(m: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        f(&[]);
        return;
    }
    if m == 0 {
        return;
    }
    let mut idx = vec![0usize; k];
    loop {
        f(&idx);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    size: i64,
    operations: Vec<OperationDoc>,
}

#[derive(Serialize, Deserialize)]
struct OperationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    arity: i64,
    table: Vec<i64>,
}

impl AlgebraDoc {
    fn into_algebra(self) -> Result<FiniteAlgebra> {
        if self.size <= 0 {
            return Err(Error::EmptyUniverse);
        }
        let size = self.size as usize;
        let mut ops = Vec::with_capacity(self.operations.len());
        for (i, op) in self.operations.into_iter().enumerate() {
            let name = op.name.unwrap_or_else(|| format!("op{i}"));
            if op.arity < 0 {
                return Err(Error::MalformedAlgebra(format!(
                    "operation '{name}': negative arity {}",
                    op.arity
                )));
            }
            let mut table = Vec::with_capacity(op.table.len());
            for (index, &v) in op.table.iter().enumerate() {
                if v < 0 || v as u64 >= size as u64 {
                    return Err(Error::EntryOutOfRange {
                        op: name,
                        index,
                        value: v as u64,
                    });
                }
                table.push(v as usize);
            }
            ops.push(Operation::new(name, op.arity as usize, table));
        }
        FiniteAlgebra::new(self.name.unwrap_or_else(|| "unnamed".into()), size, ops)
    }
}

impl From<&FiniteAlgebra> for AlgebraDoc {
    fn from(a: &FiniteAlgebra) -> Self {
        AlgebraDoc {
            name: Some(a.name.clone()),
            size: a.size as i64,
            operations: a
                .operations
                .iter()
                .map(|op| OperationDoc {
                    name: Some(op.name.clone()),
                    arity: op.arity as i64,
                    table: op.table.iter().map(|&v| v as i64).collect(),
                })
                .collect(),
        }
    }
}

/// The square `A × A`, with pair `(x, y)` encoded as `x * n + y` and every
/// operation acting coordinatewise.
pub fn square(a: &FiniteAlgebra) -> FiniteAlgebra {
    let n = a.size;
    let nn = n * n;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let ops = a
        .operations
        .iter()
        .enumerate()
        .map(|(o, op)| {
            let mut table = Vec::with_capacity(nn.pow(op.arity as u32));
            for_each_tuple(nn, op.arity, |codes| {
                xs.clear();
                ys.clear();
                for &p in codes {
                    xs.push(p / n);
                    ys.push(p % n);
                }
                table.push(a.apply(o, &xs) * n + a.apply(o, &ys));
            });
            Operation::new(op.name.clone(), op.arity, table)
        })
        .collect();
    FiniteAlgebra {
        name: format!("{}^2", a.name),
        size: nn,
        operations: ops,
    }
}

/// A subuniverse of some parent algebra together with the algebra it
/// induces on `{0, .., len-1}`.
#[derive(Clone, Debug)]
pub struct Subuniverse {
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
    induced: FiniteAlgebra,
}

impl Subuniverse {
    /// Parent elements in discovery order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of a parent element inside the subuniverse.
    pub fn index_of(&self, element: usize) -> Option<usize> {
        self.position.get(element).copied().flatten()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.index_of(element).is_some()
    }

    pub fn induced(&self) -> &FiniteAlgebra {
        &self.induced
    }

    /// Sorted parent elements; used as a cache key.
    pub fn canonical_key(&self) -> Vec<usize> {
        let mut key = self.elements.clone();
        key.sort_unstable();
        key
    }
}

/// Elements of the generated subuniverse in discovery order, plus the
/// parent-to-position map.
pub(crate) fn closure(
    a: &FiniteAlgebra,
    seeds: &[usize],
) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
    let n = a.size;
    let mut position = vec![None; n];
    let mut elements = Vec::new();
    let mut sorted: Vec<usize> = seeds.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for s in sorted {
        if s >= n {
            return Err(Error::ElementOutOfRange {
                element: s,
                size: n,
            });
        }
        position[s] = Some(elements.len());
        elements.push(s);
    }
    for op in a.operations.iter().filter(|op| op.arity == 0) {
        let c = op.table[0];
        if position[c].is_none() {
            position[c] = Some(elements.len());
            elements.push(c);
        }
    }

    // Semi-naive closure: when element `i` is processed, apply every
    // operation to tuples that use it in some position and otherwise draw
    // from the already-processed prefix `0..=i`.
    let mut args = Vec::new();
    let mut processed = 0;
    while processed < elements.len() {
        let cur = processed;
        processed += 1;
        for (o, op) in a.operations.iter().enumerate() {
            let k = op.arity;
            if k == 0 {
                continue;
            }
            for fixed in 0..k {
                for_each_tuple(processed, k - 1, |rest| {
                    args.clear();
                    args.extend(rest[..fixed].iter().map(|&i| elements[i]));
                    args.push(elements[cur]);
                    args.extend(rest[fixed..].iter().map(|&i| elements[i]));
                    let v = a.apply(o, &args);
                    if position[v].is_none() {
                        position[v] = Some(elements.len());
                        elements.push(v);
                    }
                });
            }
        }
    }
    Ok((elements, position))
}

/// Least subset of `a` containing `seeds` and closed under every operation,
/// constants included.
///
/// Elements appear in breadth-first discovery order starting from the sorted,
/// deduplicated seeds; the induced tables follow that order.
pub fn generate_subuniverse(a: &FiniteAlgebra, seeds: &[usize]) -> Result<Subuniverse> {
    let (elements, position) = closure(a, seeds)?;
    let mut args = Vec::new();
    let m = elements.len();
    let ops = a
        .operations
        .iter()
        .enumerate()
        .map(|(o, op)| {
            let mut table = Vec::with_capacity(m.pow(op.arity as u32));
            for_each_tuple(m, op.arity, |idx| {
                args.clear();
                args.extend(idx.iter().map(|&i| elements[i]));
                let v = a.apply(o, &args);
                table.push(position[v].expect("subuniverse is closed"));
            });
            Operation::new(op.name.clone(), op.arity, table)
        })
        .collect();
    let induced = FiniteAlgebra {
        name: format!("sub({})", a.name),
        size: m,
        operations: ops,
    };
    Ok(Subuniverse {
        elements,
        position,
        induced,
    })
}

/// A subuniverse of `A × A`, remembering the base size so pairs can be
/// decoded.
#[derive(Clone, Debug)]
pub struct SubSquare {
    base_size: usize,
    generators: Vec<(usize, usize)>,
    sub: Subuniverse,
}

impl SubSquare {
    /// Subalgebra of `A × A` generated by `generators`. `square` must be
    /// `square(a)`.
    pub fn generate(
        a: &FiniteAlgebra,
        square: &FiniteAlgebra,
        generators: &[(usize, usize)],
    ) -> Result<Self> {
        let n = a.size();
        if square.size() != n * n {
            return Err(Error::SizeMismatch {
                left: square.size(),
                right: n * n,
            });
        }
        let mut seeds = Vec::with_capacity(generators.len());
        for &(x, y) in generators {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::ElementOutOfRange {
                        element: v,
                        size: n,
                    });
                }
            }
            seeds.push(x * n + y);
        }
        Ok(SubSquare {
            base_size: n,
            generators: generators.to_vec(),
            sub: generate_subuniverse(square, &seeds)?,
        })
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.sub.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sub.is_empty()
    }

    /// The pair at position `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        let code = self.sub.elements[i];
        (code / self.base_size, code % self.base_size)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len()).map(|i| self.pair(i)).collect()
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        if pair.0 >= self.base_size || pair.1 >= self.base_size {
            return None;
        }
        self.sub.index_of(pair.0 * self.base_size + pair.1)
    }

    pub fn induced(&self) -> &FiniteAlgebra {
        self.sub.induced()
    }

    pub fn subuniverse(&self) -> &Subuniverse {
        &self.sub
    }

    pub fn canonical_key(&self) -> Vec<usize> {
        self.sub.canonical_key()
    }
}

/// The relation `(alpha × beta)|B`: positions `p, q` of `B` are related iff
/// their first coordinates are `alpha`-related and their second coordinates
/// `beta`-related.
pub fn product_relation<L, R>(alpha: &L, beta: &R, b: &SubSquare) -> Result<BinRel>
where
    L: RelationLike + ?Sized,
    R: RelationLike + ?Sized,
{
    for size in [alpha.size(), beta.size()] {
        if size != b.base_size {
            return Err(Error::SizeMismatch {
                left: size,
                right: b.base_size,
            });
        }
    }
    let pairs = b.pairs();
    let mut out = BinRel::empty(pairs.len());
    for (p, &(x1, y1)) in pairs.iter().enumerate() {
        for (q, &(x2, y2)) in pairs.iter().enumerate() {
            if alpha.related(x1, x2) && beta.related(y1, y2) {
                out.insert(p, q);
            }
        }
    }
    Ok(out)
}
