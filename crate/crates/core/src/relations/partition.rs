use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::binrel::{BinRel, RelationLike};
use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.rank[big] += self.rank[small];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

/// An equivalence relation stored as one block id per element.
///
/// Block ids are canonical: blocks are numbered in order of their least
/// element, so two partitions are equal iff their id vectors are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block: Vec<u32>,
}

impl Partition {
    /// The identity partition, congruence `0`.
    pub fn identity(n: usize) -> Self {
        Partition {
            block: (0..n as u32).collect(),
        }
    }

    /// The one-block partition, congruence `1`.
    pub fn full(n: usize) -> Self {
        Partition { block: vec![0; n] }
    }

    /// Canonicalises arbitrary labels: elements with equal labels share a block.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let block = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        Partition { block }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= n {
                    return Err(Error::ElementOutOfRange {
                        element: x,
                        size: n,
                    });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::MalformedRelation(format!(
                        "element {x} in two blocks"
                    )));
                }
                labels[x] = i;
            }
        }
        // unlisted elements are singletons
        for (x, l) in labels.iter_mut().enumerate() {
            if *l == usize::MAX {
                *l = blocks.len() + x;
            }
        }
        Ok(Partition::from_labels(&labels))
    }

    pub fn from_relation(r: &BinRel) -> Result<Self> {
        if !r.is_equivalence() {
            return Err(Error::NotEquivalence);
        }
        let labels: Vec<usize> = (0..r.size())
            .map(|a| r.successors(a).next().expect("reflexive"))
            .collect();
        Ok(Partition::from_labels(&labels))
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.block
    }

    pub fn num_blocks(&self) -> usize {
        self.block
            .iter()
            .map(|&b| b as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Blocks keyed by least element, listed ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block.iter().enumerate() {
            out[b as usize].push(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn to_relation(&self) -> BinRel {
        let n = self.size();
        let mut r = BinRel::empty(n);
        for block in self.blocks() {
            for &a in &block {
                for &b in &block {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let labels: Vec<(u32, u32)> = self
            .block
            .iter()
            .copied()
            .zip(other.block.iter().copied())
            .collect();
        Partition::from_labels(&labels)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let n = self.size();
        let mut uf = UnionFind::new(n);
        let mut first_a = vec![usize::MAX; n];
        let mut first_b = vec![usize::MAX; n];
        for x in 0..n {
            for (first, b) in [
                (&mut first_a, self.block[x]),
                (&mut first_b, other.block[x]),
            ] {
                let slot = &mut first[b as usize];
                if *slot == usize::MAX {
                    *slot = x;
                } else {
                    uf.union(*slot, x);
                }
            }
        }
        uf.into_partition()
    }

    /// `self ≤ other` in the partition lattice.
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.size(), other.size(), "partition size mismatch");
        let mut image = vec![u32::MAX; self.num_blocks()];
        for (x, &b) in self.block.iter().enumerate() {
            let slot = &mut image[b as usize];
            if *slot == u32::MAX {
                *slot = other.block[x];
            } else if *slot != other.block[x] {
                return false;
            }
        }
        true
    }
}

impl RelationLike for Partition {
    fn size(&self) -> usize {
        self.block.len()
    }

    fn related(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionDoc {
    size: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionDoc {
            size: self.size(),
            blocks: self.blocks(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PartitionDoc::deserialize(d)?;
        Partition::from_blocks(doc.size, &doc.blocks).map_err(serde::de::Error::custom)
    }
}
