//! Invariants of the m-cover, m-Tamari, completion and strip constructions.

use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use mcover::completion::{closure, dm_completion};
use mcover::count::fuss_catalan;
use mcover::dyck::{enumerate_mdyck, mtamari, MDyckPath};
use mcover::generate::{bounded_posets, random_bounded_poset};
use mcover::iso::{is_isomorphic, DEFAULT_BUDGET};
use mcover::mcover::{hasse_minus_bottom_is_rooted_tree, mcover, meet_condition};
use mcover::strip::{
    dominance_leq, enumerate_increasing_fans, is_increasing_fan, is_valid_delta_fan, strip_compose, strip_decompose,
};
use mcover::verify::{bounce_suite, strip_suite, theorem_lattice_on};
use mcover::Poset;

fn iso(a: &Poset, b: &Poset) -> bool {
    is_isomorphic(a, b, DEFAULT_BUDGET).unwrap()
}

fn subset(n: usize, bits: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in (0..n).filter(|i| bits >> i & 1 == 1) {
        s.insert(i);
    }
    s
}

#[test]
fn mcover_is_an_interval_of_the_next_cover() {
    for p in bounded_posets(6) {
        let (bot, top) = (p.bottom().unwrap(), p.top().unwrap());
        for m in 1..=2 {
            let small = mcover(&p, m).unwrap();
            let big = mcover(&p, m + 1).unwrap();
            let lo = big.index_of(&vec![bot; m + 1]).unwrap();
            let mut hi_t = vec![top; m + 1];
            hi_t[0] = bot;
            let hi = big.index_of(&hi_t).unwrap();
            let (interval, _) = big.poset.interval(lo, hi).unwrap();
            assert!(iso(&small.poset, &interval), "m={m} covers={:?}", p.covers());
        }
        assert!(iso(&mcover(&p, 1).unwrap().poset, &p));
    }
}

#[test]
fn lattice_meets_are_componentwise() {
    let mut differing_join = false;
    for p in bounded_posets(6) {
        let c = mcover(&p, 2).unwrap();
        if !c.poset.is_lattice() {
            continue;
        }
        for x in 0..c.len() {
            for y in 0..c.len() {
                let cw: Vec<usize> =
                    c.elements[x].iter().zip(&c.elements[y]).map(|(&a, &b)| p.meet(a, b).unwrap()).collect();
                assert_eq!(c.index_of(&cw), c.poset.meet(x, y));
                let cj: Vec<usize> =
                    c.elements[x].iter().zip(&c.elements[y]).map(|(&a, &b)| p.join(a, b).unwrap()).collect();
                differing_join |= c.index_of(&cj) != c.poset.join(x, y);
            }
        }
    }
    assert!(differing_join);
}

#[test]
fn tamari_heights_round_trip_and_counts() {
    for n in 1..=5 {
        for m in 1..=4 {
            let paths = enumerate_mdyck(n, m).unwrap();
            assert_eq!(paths.len() as u128, fuss_catalan(n as u64, m as u64));
            for p in &paths {
                assert_eq!(&MDyckPath::from_heights(m, &p.heights()).unwrap(), p);
            }
        }
    }
}

#[test]
fn tamari_order_is_monotone_in_steps_and_heights() {
    for n in 1..=4 {
        for m in 1..=3 {
            let t = mtamari(n, m).unwrap();
            for (a, p) in t.paths.iter().enumerate() {
                for (b, q) in t.paths.iter().enumerate() {
                    if t.poset.leq(a, b) {
                        assert!(p.steps().iter().zip(q.steps()).all(|(x, y)| x >= y));
                        assert!(p.heights().iter().zip(q.heights()).all(|(x, y)| *x <= y));
                    }
                }
            }
        }
    }
}

#[test]
fn tamari_is_a_lattice_with_rotation_covers() {
    for n in 1..=5 {
        for m in 1..=3 {
            let t = mtamari(n, m).unwrap();
            assert!(t.poset.is_lattice(), "T_{n}^({m})");
            for (a, p) in t.paths.iter().enumerate() {
                for q in p.rotation_covers() {
                    let b = t.index_of(q.steps()).unwrap();
                    assert!(t.poset.lt(a, b));
                    assert!(!(0..t.len()).any(|z| t.poset.lt(a, z) && t.poset.lt(z, b)));
                }
            }
        }
    }
}

#[test]
fn completion_recovers_small_lattices_from_irreducibles() {
    for l in bounded_posets(7).into_iter().filter(Poset::is_lattice) {
        let mut core: Vec<usize> = l.join_irreducibles();
        core.extend(l.meet_irreducibles());
        core.sort_unstable();
        core.dedup();
        let d = dm_completion(&l.induced(&core)).lattice;
        assert!(iso(&d, &l), "covers={:?}", l.covers());
    }
}

#[test]
fn strip_round_trip_and_image() {
    for n in 1..=5 {
        for m in 1..=4 {
            for p in enumerate_mdyck(n, m).unwrap() {
                let f = strip_decompose(&p);
                assert!(is_increasing_fan(&f));
                assert_eq!(strip_compose(&f).unwrap(), p);
            }
        }
    }
    for n in 1..=4 {
        for m in 1..=3 {
            let images: std::collections::BTreeSet<String> =
                enumerate_mdyck(n, m).unwrap().iter().map(|p| strip_decompose(p).to_string()).collect();
            for f in enumerate_increasing_fans(n, m).unwrap() {
                assert_eq!(is_valid_delta_fan(&f), images.contains(&f.to_string()), "{f}");
            }
        }
    }
}

#[test]
fn strip_decomposition_is_order_preserving() {
    for n in 1..=4 {
        for m in 1..=3 {
            let t = mtamari(n, m).unwrap();
            let fans: Vec<_> = t.paths.iter().map(strip_decompose).collect();
            for a in 0..t.len() {
                for b in 0..t.len() {
                    if t.poset.leq(a, b) {
                        for (q, r) in fans[a].0.iter().zip(&fans[b].0) {
                            assert!(dominance_leq(q, r).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn strip_and_bounce_suites_pass() {
    assert!(strip_suite(5, 4, 4, 3, None).unwrap().iter().all(|r| r.passed));
    assert!(bounce_suite(4, 3, None).unwrap().iter().all(|r| r.passed));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), inner in 0usize..9, d in 0.1f64..0.8, a in any::<u64>(), b in any::<u64>()) {
        let p = random_bounded_poset(seed, inner, d);
        let n = p.len();
        let (x, y) = (subset(n, a), subset(n, a & b));
        let cx = closure(&p, &x);
        prop_assert!(x.is_subset(&cx));
        prop_assert!(closure(&p, &y).is_subset(&cx));
        prop_assert_eq!(closure(&p, &cx), cx);
    }

    #[test]
    fn completion_embeds_order_meets_and_joins(seed in any::<u64>(), inner in 0usize..7, d in 0.1f64..0.8) {
        let p = random_bounded_poset(seed, inner, d);
        let c = dm_completion(&p);
        prop_assert!(c.lattice.is_lattice());
        let e = &c.embedding;
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(p.leq(x, y), c.lattice.leq(e[x], e[y]));
                if let Some(z) = p.meet(x, y) {
                    prop_assert_eq!(c.lattice.meet(e[x], e[y]), Some(e[z]));
                }
                if let Some(z) = p.join(x, y) {
                    prop_assert_eq!(c.lattice.join(e[x], e[y]), Some(e[z]));
                }
            }
        }
    }

    #[test]
    fn random_posets_satisfy_the_lattice_criterion(seed in any::<u64>(), inner in 0usize..6, d in 0.1f64..0.8) {
        let p = random_bounded_poset(seed, inner, d);
        let rows = theorem_lattice_on(&[("random".to_string(), p.clone())], &[2, 3], None).unwrap();
        prop_assert!(rows.iter().all(|r| r.passed));
        let lat = mcover(&p, 2).unwrap().poset.is_lattice();
        prop_assert_eq!(lat, meet_condition(&p));
        prop_assert_eq!(lat, hasse_minus_bottom_is_rooted_tree(&p).unwrap());
    }
}
