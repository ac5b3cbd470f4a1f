//! Naive set-based oracles shared by the integration tests. Nothing here
//! calls the library's relation algorithms.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use congrel::{BinRel, FiniteAlgebra};

pub type Pairs = BTreeSet<(usize, usize)>;

pub fn to_pairs(r: &BinRel) -> Pairs {
    let n = r.size();
    let mut out = Pairs::new();
    for x in 0..n {
        for y in 0..n {
            if r.contains(x, y) {
                out.insert((x, y));
            }
        }
    }
    out
}

pub fn diagonal(n: usize) -> Pairs {
    (0..n).map(|x| (x, x)).collect()
}

pub fn compose(r: &Pairs, s: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(x, y) in r {
        for &(y2, z) in s {
            if y == y2 {
                out.insert((x, z));
            }
        }
    }
    out
}

pub fn converse(r: &Pairs) -> Pairs {
    r.iter().map(|&(x, y)| (y, x)).collect()
}

pub fn star(r: &Pairs) -> Pairs {
    let mut cur = r.clone();
    loop {
        let next: Pairs = cur.union(&compose(&cur, &cur)).copied().collect();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `(R ∘ S)*` for reflexive `R`, `S`.
pub fn plus(r: &Pairs, s: &Pairs) -> Pairs {
    star(&compose(r, s))
}

pub fn meet(r: &Pairs, s: &Pairs) -> Pairs {
    r.intersection(s).copied().collect()
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Whether applying each operation componentwise to pairs of `r` stays in `r`.
pub fn is_compatible(r: &Pairs, a: &FiniteAlgebra) -> bool {
    let list: Vec<(usize, usize)> = r.iter().copied().collect();
    for (i, op) in a.operations().iter().enumerate() {
        for pick in tuples(list.len(), op.arity()) {
            let xs: Vec<usize> = pick.iter().map(|&j| list[j].0).collect();
            let ys: Vec<usize> = pick.iter().map(|&j| list[j].1).collect();
            if !r.contains(&(a.apply(i, &xs), a.apply(i, &ys))) {
                return false;
            }
        }
    }
    true
}

/// Smallest compatible relation containing `r`, by repeated full passes.
pub fn closure(r: &Pairs, a: &FiniteAlgebra) -> Pairs {
    let mut cur = r.clone();
    loop {
        let list: Vec<(usize, usize)> = cur.iter().copied().collect();
        let mut next = cur.clone();
        for (i, op) in a.operations().iter().enumerate() {
            for pick in tuples(list.len(), op.arity()) {
                let xs: Vec<usize> = pick.iter().map(|&j| list[j].0).collect();
                let ys: Vec<usize> = pick.iter().map(|&j| list[j].1).collect();
                next.insert((a.apply(i, &xs), a.apply(i, &ys)));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// All partitions of `0..n` as block labels (restricted growth strings).
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let max = prefix.iter().copied().max().map_or(0, |m| m + 1);
        for b in 0..=max {
            prefix.push(b);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

pub fn labels_to_pairs(labels: &[usize]) -> Pairs {
    let n = labels.len();
    let mut out = Pairs::new();
    for x in 0..n {
        for y in 0..n {
            if labels[x] == labels[y] {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Every congruence of `a`, by filtering all partitions.
pub fn congruences(a: &FiniteAlgebra) -> Vec<Pairs> {
    all_partitions(a.size())
        .iter()
        .map(|l| labels_to_pairs(l))
        .filter(|p| is_compatible(p, a))
        .collect()
}

/// Smallest subset of `A × A` containing `gens` and closed under the
/// componentwise operations.
pub fn subsquare(a: &FiniteAlgebra, gens: &[(usize, usize)]) -> Pairs {
    let mut cur: Pairs = gens.iter().copied().collect();
    loop {
        let list: Vec<(usize, usize)> = cur.iter().copied().collect();
        let mut next = cur.clone();
        for (i, op) in a.operations().iter().enumerate() {
            for pick in tuples(list.len(), op.arity()) {
                let xs: Vec<usize> = pick.iter().map(|&j| list[j].0).collect();
                let ys: Vec<usize> = pick.iter().map(|&j| list[j].1).collect();
                next.insert((a.apply(i, &xs), a.apply(i, &ys)));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Elements of `b` reachable from `start` by steps that keep one
/// coordinate and move the other within `alpha`.
pub fn reachable(b: &Pairs, alpha: &Pairs, start: (usize, usize)) -> BTreeSet<(usize, usize)> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, y)) = queue.pop_front() {
        for &(u, v) in b {
            let step = (u == x && alpha.contains(&(y, v))) || (v == y && alpha.contains(&(x, u)));
            if step && seen.insert((u, v)) {
                queue.push_back((u, v));
            }
        }
    }
    seen
}
