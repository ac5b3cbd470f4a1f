mod common;

use common::Pairs;
use congrel::relations::{
    enumerate_congruences, enumerate_tolerances, random_reflexive, Classification,
};
use congrel::theorems::{
    check_hypothesis, check_hypothesis_on, check_modularity_on, four_generated_subsquares, replay,
    rr_sides, search_counterexample, subrel_sides, subrelpiu_sides, sweep, verify_subrel,
    verify_subrelpiu, verify_wtip, witness_chain, wtip_sides, Claim, Direction, LinkKind, Strategy,
    WitnessOutcome,
};
use congrel::{corpus, generate_subuniverse, BinRel, FiniteAlgebra, Limits, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pairs(r: &BinRel) -> Pairs {
    common::to_pairs(r)
}

fn rel(n: usize, ps: &[(usize, usize)]) -> BinRel {
    BinRel::from_pairs(n, ps.iter().copied()).unwrap()
}

fn union(r: &Pairs, s: &Pairs) -> Pairs {
    r.union(s).copied().collect()
}

/// Intersection of every congruence containing `r`.
fn cg(a: &FiniteAlgebra, r: &Pairs) -> Pairs {
    common::congruences(a)
        .into_iter()
        .filter(|c| r.is_subset(c))
        .reduce(|x, y| common::meet(&x, &y))
        .unwrap()
}

fn alpha_cl(a: &FiniteAlgebra, alpha: &Pairs, r: &Pairs, s: &Pairs) -> Pairs {
    common::meet(alpha, &common::closure(&union(r, s), a))
}

/// `(left, right)` of a claim, computed with the naive oracles.
fn oracle_sides(
    a: &FiniteAlgebra,
    claim: Claim,
    alpha: &Pairs,
    r: &Pairs,
    s: &Pairs,
) -> (Pairs, Pairs) {
    let (rc, sc) = (common::converse(r), common::converse(s));
    let subrel_right = common::plus(&alpha_cl(a, alpha, r, &sc), &alpha_cl(a, alpha, &rc, s));
    let piu_mid = common::plus(&alpha_cl(a, alpha, r, s), &alpha_cl(a, alpha, &rc, &sc));
    let piu_cg = common::meet(alpha, &common::plus(&cg(a, r), &cg(a, s)));
    let cl = common::closure(r, a);
    let clc = common::converse(&cl);
    let rr_mid = common::meet(alpha, &common::plus(&cl, &clc));
    let rr_split = common::plus(&common::meet(alpha, &cl), &common::meet(alpha, &clc));
    let orient = |d: Direction, x: Pairs, y: Pairs| match d {
        Direction::Forward => (x, y),
        Direction::Backward => (y, x),
    };
    match claim {
        Claim::SubrelInclusion => (common::meet(alpha, &common::compose(r, s)), subrel_right),
        Claim::SubrelpiuInclusion => (common::meet(alpha, &common::plus(r, s)), subrel_right),
        Claim::SubrelpiuFirstEq(d) => orient(d, subrel_right, piu_mid),
        Claim::SubrelpiuSecondEq(d) => orient(d, piu_mid, piu_cg),
        Claim::Wtip(d) => orient(
            d,
            common::meet(alpha, &common::star(r)),
            common::star(&common::meet(alpha, r)),
        ),
        Claim::RrInclusion => (
            common::meet(alpha, &common::plus(r, &common::converse(r))),
            rr_mid,
        ),
        Claim::RrFirstEq(d) => orient(d, rr_mid, rr_split),
        Claim::RrSecondEq(d) => orient(d, rr_split, common::meet(alpha, &cg(a, r))),
        other => panic!("unexpected claim {other:?}"),
    }
}

#[test]
fn claim_sides_match_naive_oracles() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in [
        "pureset3", "z2", "z4", "z2xz2", "bool2", "bool4", "n5", "m3",
    ] {
        let a = corpus::builtin(name).unwrap();
        let n = a.size();
        let congs = enumerate_congruences(&a, &limits).unwrap();
        let tols = enumerate_tolerances(&a, &limits).unwrap();
        for _ in 0..12 {
            let alpha = congs[rng.gen_range(0..congs.len())].to_relation();
            let r = random_reflexive(n, rng.gen_range(0.0..0.5), rng.gen()).unwrap();
            let s = random_reflexive(n, rng.gen_range(0.0..0.5), rng.gen()).unwrap();
            let theta = &tols[rng.gen_range(0..tols.len())];
            let (ap, rp, sp) = (pairs(&alpha), pairs(&r), pairs(&s));
            let mut sides = subrel_sides(&a, &alpha, &r, &s).unwrap();
            sides.extend(subrelpiu_sides(&a, &alpha, &r, &s).unwrap());
            sides.extend(rr_sides(&a, &alpha, &r).unwrap());
            for side in &sides {
                let (left, right) = oracle_sides(&a, side.claim, &ap, &rp, &sp);
                assert_eq!(pairs(&side.left), left, "{name} {:?} left", side.claim);
                assert_eq!(pairs(&side.right), right, "{name} {:?} right", side.claim);
                assert!(left.is_subset(&right), "{name} {:?}", side.claim);
            }
            for side in wtip_sides(&alpha, theta).unwrap() {
                let (left, right) = oracle_sides(&a, side.claim, &ap, &pairs(theta), &sp);
                assert_eq!(pairs(&side.left), left, "{name} {:?}", side.claim);
                assert_eq!(pairs(&side.right), right, "{name} {:?}", side.claim);
            }
        }
    }
}

#[test]
fn subuniverse_examples() {
    let p = corpus::pure_set(4);
    assert_eq!(
        generate_subuniverse(&p, &[0, 2]).unwrap().elements(),
        &[0, 2]
    );

    let z4 = corpus::z4();
    let mut all = generate_subuniverse(&z4, &[1]).unwrap().elements().to_vec();
    all.sort_unstable();
    assert_eq!(all, vec![0, 1, 2, 3]);

    let z2 = corpus::z2();
    let seeds = [(0, 0), (0, 1)];
    let b = congrel::SubSquare::generate(&z2, &congrel::square(&z2), &seeds).unwrap();
    assert_eq!(
        b.pairs().into_iter().collect::<Pairs>(),
        common::subsquare(&z2, &seeds)
    );
    assert_eq!(b.len(), 2);
}

#[test]
fn z4_tolerances_match_brute_force() {
    let a = corpus::z4();
    let n = a.size();
    let upper: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let mut expected = std::collections::BTreeSet::new();
    for mask in 0u32..1 << upper.len() {
        let mut r = common::diagonal(n);
        for (i, &(x, y)) in upper.iter().enumerate() {
            if mask >> i & 1 == 1 {
                r.insert((x, y));
                r.insert((y, x));
            }
        }
        if common::is_compatible(&r, &a) {
            expected.insert(r);
        }
    }
    let got: std::collections::BTreeSet<Pairs> = enumerate_tolerances(&a, &Limits::default())
        .unwrap()
        .iter()
        .map(pairs)
        .collect();
    assert_eq!(got, expected);
    let non_transitive = expected.iter().any(|t| common::compose(t, t) != *t);
    let reported = got.iter().any(|t| common::compose(t, t) != *t);
    assert_eq!(reported, non_transitive);
}

#[test]
fn closure_of_symmetric_relation_is_tolerance() {
    for a in corpus::all() {
        let n = a.size();
        for seed in 0..20 {
            let r = random_reflexive(n, 0.2, seed).unwrap();
            let sym = r.union(&r.converse()).unwrap();
            let closed = congrel::relations::compatible_closure(&sym, &a).unwrap();
            let Classification { is_tolerance, .. } =
                congrel::relations::classify(&closed, &a).unwrap();
            assert!(is_tolerance, "{}", a.name());
            assert_eq!(pairs(&closed), common::converse(&pairs(&closed)));
        }
    }
}

#[test]
fn cg_strategies_agree_with_oracle() {
    use congrel::relations::{cg as cg_of, CgStrategy};
    for a in corpus::all() {
        let n = a.size();
        for seed in 0..10 {
            let r = random_reflexive(n, 0.1, seed).unwrap();
            let expected = cg(&a, &pairs(&r));
            for strategy in [CgStrategy::Formula, CgStrategy::UnionFind] {
                let got = cg_of(&r, &a, strategy).unwrap();
                assert_eq!(
                    pairs(&got.to_relation()),
                    expected,
                    "{} {strategy:?}",
                    a.name()
                );
            }
        }
    }
}

#[test]
fn subrel_on_pure_three_set_follows_oracle() {
    let a = corpus::pure_set(3);
    let alpha = Partition::from_blocks(3, &[vec![0, 2], vec![1]]).unwrap();
    let r = rel(3, &[(0, 0), (1, 1), (2, 2), (0, 1)]);
    let s = rel(3, &[(0, 0), (1, 1), (2, 2), (1, 2)]);
    let (left, right) = oracle_sides(
        &a,
        Claim::SubrelInclusion,
        &pairs(&alpha.to_relation()),
        &pairs(&r),
        &pairs(&s),
    );
    assert!(left.contains(&(0, 2)));
    let report = verify_subrel(&a, &alpha, &r, &s).unwrap();
    assert_eq!(report.holds(), left.is_subset(&right));
    for v in &report.violations {
        let [x, y] = v.missing_pair;
        assert!(left.contains(&(x, y)) && !right.contains(&(x, y)));
        assert!(replay(&a, v, &Limits::default()).unwrap());
    }
}

#[test]
fn z4_examples_hold() {
    let a = corpus::z4();
    let alpha = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    let r = rel(4, &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1)]);
    let d = BinRel::diagonal(4);
    assert!(verify_subrelpiu(&a, &alpha, &r, &d).unwrap().holds());
    assert_eq!(cg(&a, &pairs(&r)), pairs(&BinRel::full(4)));

    let theta0 = rel(4, &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (1, 0)]);
    let theta = congrel::relations::compatible_closure(&theta0, &a).unwrap();
    assert_eq!(pairs(&theta), common::closure(&pairs(&theta0), &a));
    assert!(verify_wtip(&a, &alpha, &theta).unwrap().holds());
}

#[test]
fn z4_witness_chain_links_check_against_oracle() {
    let a = corpus::z4();
    let alpha = Partition::full(4);
    let r = congrel::relations::compatible_closure(
        &rel(4, &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1)]),
        &a,
    )
    .unwrap();
    let outcome = witness_chain(&a, &alpha, 0, 1, 2, &r, &r).unwrap();
    let chain = outcome.chain().expect("z4 satisfies the hypothesis");
    let b = common::subsquare(&a, &[(0, 0), (0, 1), (2, 1), (2, 2)]);
    assert_eq!(chain.subsquare.pairs().into_iter().collect::<Pairs>(), b);
    assert_eq!(chain.chain.first(), Some(&(0, 0)));
    assert_eq!(chain.chain.last(), Some(&(2, 2)));
    assert_eq!(chain.links.len() + 1, chain.chain.len());
    let alpha_p = pairs(&alpha.to_relation());
    for (i, w) in chain.chain.windows(2).enumerate() {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        assert!(b.contains(&w[0]) && b.contains(&w[1]));
        match chain.links[i] {
            LinkKind::YStep => assert!(x0 == x1 && alpha_p.contains(&(y0, y1))),
            LinkKind::XStep => assert!(y0 == y1 && alpha_p.contains(&(x0, x1))),
        }
    }
}

#[test]
fn witness_disconnection_matches_oracle_reachability() {
    let a = corpus::pure_set(3);
    let alpha = Partition::full(3);
    let full = BinRel::full(3);
    for (x, y, z) in [(0, 1, 2), (0, 0, 0), (1, 2, 1), (2, 0, 1)] {
        let outcome = witness_chain(&a, &alpha, x, y, z, &full, &full).unwrap();
        let b = common::subsquare(&a, &[(x, x), (x, y), (z, y), (z, z)]);
        let connected =
            common::reachable(&b, &pairs(&alpha.to_relation()), (x, x)).contains(&(z, z));
        assert_eq!(matches!(outcome, WitnessOutcome::Chain(_)), connected);
    }
}

#[test]
fn modularity_implies_hypothesis_per_subsquare() {
    let limits = Limits::default();
    for name in ["pureset3", "z2", "z4", "z2xz2", "bool2", "m3"] {
        let a = corpus::builtin(name).unwrap();
        for b in four_generated_subsquares(&a, None).unwrap() {
            let modular = check_modularity_on(&b, &limits)
                .unwrap()
                .violation
                .is_none();
            let hyp = check_hypothesis_on(&b, &limits)
                .unwrap()
                .violation
                .is_none();
            assert!(!modular || hyp, "{name} {:?}", b.generators());
        }
    }
}

#[test]
fn search_is_silent_where_hypothesis_holds() {
    let limits = Limits::default();
    for name in ["trivial", "z2", "z4", "z2xz2", "bool2"] {
        let a = corpus::builtin(name).unwrap();
        assert!(
            check_hypothesis(&a, None, &limits).unwrap().holds(),
            "{name}"
        );
        assert_eq!(
            search_counterexample(&a, 300, 5, &limits).unwrap(),
            None,
            "{name}"
        );
    }
}

#[test]
fn search_on_pure_four_set_is_replayable() {
    let limits = Limits::default();
    let a = corpus::pure_set(4);
    if let Some(v) = search_counterexample(&a, 2000, 0, &limits).unwrap() {
        assert!(replay(&a, &v, &limits).unwrap());
    }
}

#[test]
fn z4_principal_sample_sweep_holds() {
    let a = corpus::z4();
    for report in sweep(&a, Strategy::PrincipalSample(200), 7, &Limits::default()).unwrap() {
        assert!(report.holds(), "{}", report.theorem);
    }
}

#[test]
fn random_reflexive_extremes() {
    assert_eq!(random_reflexive(5, 0.0, 3).unwrap(), BinRel::diagonal(5));
    assert_eq!(random_reflexive(5, 1.0, 3).unwrap(), BinRel::full(5));
    assert_eq!(
        random_reflexive(3, 0.5, 42).unwrap(),
        random_reflexive(3, 0.5, 42).unwrap()
    );
}

#[test]
fn compose_and_closure_examples() {
    let r = rel(3, &[(0, 0), (1, 1), (2, 2), (0, 1)]);
    let s = rel(3, &[(0, 0), (1, 1), (2, 2), (1, 2)]);
    let rs = r.compose(&s).unwrap();
    assert_eq!(pairs(&rs), common::compose(&pairs(&r), &pairs(&s)));
    assert!(rs.contains(0, 2));
    let t = rel(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
    assert_eq!(pairs(&t.transitive_closure()), common::star(&pairs(&t)));

    let z4 = corpus::z4();
    let r = rel(4, &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1)]);
    let closed = congrel::relations::compatible_closure(&r, &z4).unwrap();
    assert_eq!(pairs(&closed), common::closure(&pairs(&r), &z4));
    let joined = congrel::relations::rel_plus(&closed, &closed.converse()).unwrap();
    assert_eq!(pairs(&joined), cg(&z4, &pairs(&r)));
}
