//! Built-in algebras: small groups, lattices, and pure sets.
//!
//! Groups and lattices generate congruence-modular varieties, so every
//! subalgebra of their squares is congruence modular. Pure sets with at least
//! two elements are the standard negative controls.

use crate::algebra::{FiniteAlgebra, Operation};
use crate::error::{Error, Result};

pub const NAMES: &[&str] = &[
    "trivial", "pureset2", "pureset3", "pureset4", "z2", "z4", "z2xz2", "bool2", "bool4", "n5",
    "m3",
];

pub fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::pure_set("trivial", 1).expect("valid")
}

pub fn pure_set(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::pure_set(format!("pureset{n}"), n).expect("valid")
}

fn cyclic(name: &str, n: usize) -> FiniteAlgebra {
    let a = FiniteAlgebra::new(
        name,
        n,
        vec![Operation::binary("add", n, |x, y| (x + y) % n)],
    )
    .expect("valid");
    debug_assert!(is_group(&a));
    a
}

pub fn z2() -> FiniteAlgebra {
    cyclic("z2", 2)
}

pub fn z4() -> FiniteAlgebra {
    cyclic("z4", 4)
}

/// The Klein four-group, elements as 2-bit vectors under xor.
pub fn z2xz2() -> FiniteAlgebra {
    let a = FiniteAlgebra::new("z2xz2", 4, vec![Operation::binary("add", 4, |x, y| x ^ y)])
        .expect("valid");
    debug_assert!(is_group(&a));
    a
}

/// Builds the (meet, join) reduct of a lattice from its order relation.
fn lattice_from_order(name: &str, n: usize, leq: impl Fn(usize, usize) -> bool) -> FiniteAlgebra {
    let bound = |x: usize, y: usize, lower: bool| {
        let cands: Vec<usize> = (0..n)
            .filter(|&z| {
                if lower {
                    leq(z, x) && leq(z, y)
                } else {
                    leq(x, z) && leq(y, z)
                }
            })
            .collect();
        *cands
            .iter()
            .find(|&&z| {
                cands
                    .iter()
                    .all(|&w| if lower { leq(w, z) } else { leq(z, w) })
            })
            .expect("order is a lattice")
    };
    let a = FiniteAlgebra::new(
        name,
        n,
        vec![
            Operation::binary("meet", n, |x, y| bound(x, y, true)),
            Operation::binary("join", n, |x, y| bound(x, y, false)),
        ],
    )
    .expect("valid");
    debug_assert!(is_lattice(&a));
    a
}

pub fn bool2() -> FiniteAlgebra {
    lattice_from_order("bool2", 2, |x, y| x <= y)
}

/// The four-element Boolean lattice `2²`, elements as bit masks.
pub fn bool4() -> FiniteAlgebra {
    lattice_from_order("bool4", 4, |x, y| x & y == x)
}

/// The pentagon: `0 < 1 < 2 < 4` and `0 < 3 < 4`.
pub fn n5() -> FiniteAlgebra {
    lattice_from_order("n5", 5, |x, y| {
        x == y || x == 0 || y == 4 || (x == 1 && y == 2)
    })
}

/// The diamond: `0 < 1, 2, 3 < 4` with 1, 2, 3 pairwise incomparable.
pub fn m3() -> FiniteAlgebra {
    lattice_from_order("m3", 5, |x, y| x == y || x == 0 || y == 4)
}

pub fn builtin(name: &str) -> Result<FiniteAlgebra> {
    Ok(match name {
        "trivial" => trivial(),
        "pureset2" => pure_set(2),
        "pureset3" => pure_set(3),
        "pureset4" => pure_set(4),
        "z2" => z2(),
        "z4" => z4(),
        "z2xz2" => z2xz2(),
        "bool2" => bool2(),
        "bool4" => bool4(),
        "n5" => n5(),
        "m3" => m3(),
        _ => return Err(Error::UnknownBuiltin(name.into())),
    })
}

/// Resolves `builtin:<name>` to a corpus algebra; anything else is read
/// as a path to an algebra JSON document.
pub fn resolve(spec: &str) -> Result<FiniteAlgebra> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => FiniteAlgebra::from_json(&std::fs::read_to_string(spec)?),
    }
}

pub fn all() -> Vec<FiniteAlgebra> {
    NAMES.iter().map(|n| builtin(n).expect("builtin")).collect()
}

/// Group axioms for the single binary operation of `a`.
pub fn is_group(a: &FiniteAlgebra) -> bool {
    let [op] = a.operations() else { return false };
    if op.arity() != 2 {
        return false;
    }
    let n = a.size();
    let f = |x, y| a.apply(0, &[x, y]);
    let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| f(f(x, y), z) == f(x, f(y, z)))));
    let e = (0..n).find(|&e| (0..n).all(|x| f(e, x) == x && f(x, e) == x));
    assoc && e.is_some_and(|e| (0..n).all(|x| (0..n).any(|y| f(x, y) == e && f(y, x) == e)))
}

/// Lattice axioms for a (meet, join) pair of binary operations.
pub fn is_lattice(a: &FiniteAlgebra) -> bool {
    if a.operations().len() != 2 || a.operations().iter().any(|o| o.arity() != 2) {
        return false;
    }
    let n = a.size();
    let m = |x, y| a.apply(0, &[x, y]);
    let j = |x, y| a.apply(1, &[x, y]);
    let all3 = |p: &dyn Fn(usize, usize, usize) -> bool| {
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| p(x, y, z))))
    };
    all3(&|x, y, z| m(m(x, y), z) == m(x, m(y, z)) && j(j(x, y), z) == j(x, j(y, z)))
        && all3(&|x, y, _| m(x, y) == m(y, x) && j(x, y) == j(y, x))
        && all3(&|x, y, _| m(x, j(x, y)) == x && j(x, m(x, y)) == x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_specs() {
        assert_eq!(resolve("builtin:z4").unwrap().size(), 4);
        assert!(matches!(
            resolve("builtin:z5"),
            Err(Error::UnknownBuiltin(_))
        ));
        assert!(matches!(
            resolve("/nonexistent/algebra.json"),
            Err(Error::Io(_))
        ));
        let path =
            std::env::temp_dir().join(format!("congrel-resolve-{}.json", std::process::id()));
        std::fs::write(&path, m3().to_json()).unwrap();
        let loaded = resolve(path.to_str().unwrap()).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(loaded.to_json(), m3().to_json());
    }

    #[test]
    fn every_builtin_validates() {
        for a in all() {
            let again = FiniteAlgebra::from_json(&a.to_json()).unwrap();
            assert_eq!(again, a);
        }
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn axioms_spot_check() {
        for g in [z2(), z4(), z2xz2()] {
            assert!(is_group(&g), "{}", g.name());
        }
        for l in [bool2(), bool4(), n5(), m3()] {
            assert!(is_lattice(&l), "{}", l.name());
        }
        assert!(!is_group(&pure_set(2)));
    }

    #[test]
    fn n5_shape() {
        let a = n5();
        // modular law fails: 1 ≤ 2 but 1 ∨ (2 ∧ 3) = 1 while (1 ∨ 3) ∧ 2 = 2
        assert_eq!(a.apply(1, &[1, 3]), 4);
        assert_eq!(a.apply(0, &[2, 3]), 0);
        let lhs = a.apply(1, &[1, a.apply(0, &[2, 3])]);
        let rhs = a.apply(0, &[a.apply(1, &[1, 3]), 2]);
        assert_ne!(lhs, rhs);
    }
}
