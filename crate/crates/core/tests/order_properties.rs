//! Order-core invariants on generated and random posets.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mcover::completion::dm_completion;
use mcover::generate::{bounded_posets, random_bounded_poset};
use mcover::iso::{find_isomorphism, is_isomorphic, is_isomorphism, DEFAULT_BUDGET};
use mcover::Poset;

/// Random DAG on `n` nodes, not necessarily bounded.
fn random_poset(seed: u64, n: usize, density: f64) -> Poset {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    let p = Poset::from_cover_relations(n, &rel).unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    p.relabel(&perm)
}

fn shuffled(p: &Poset, seed: u64) -> Poset {
    let mut perm: Vec<usize> = (0..p.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p.relabel(&perm)
}

/// Brute-force order check: covers are exactly the unrefinable strict pairs.
fn covers_by_definition(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.lt(x, y) && !(0..n).any(|z| p.lt(x, z) && p.lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_of_reduction_is_the_order(seed in any::<u64>(), n in 0usize..10, d in 0.05f64..0.9) {
        let p = random_poset(seed, n, d);
        let mut covers = p.covers();
        covers.sort_unstable();
        prop_assert_eq!(&covers, &covers_by_definition(&p));
        let q = Poset::from_cover_relations(n, &covers).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(p.leq(x, y), q.leq(x, y));
            }
        }
    }

    #[test]
    fn duality_swaps_irreducibles(seed in any::<u64>(), n in 0usize..10, d in 0.05f64..0.9) {
        let p = random_poset(seed, n, d);
        prop_assert_eq!(p.meet_irreducibles(), p.dual().join_irreducibles());
        prop_assert_eq!(p.join_irreducibles(), p.dual().meet_irreducibles());
    }

    #[test]
    fn mobius_rows_sum_to_zero(seed in any::<u64>(), n in 1usize..10, d in 0.05f64..0.9) {
        let p = random_poset(seed, n, d);
        let mu = p.mobius();
        for x in 0..n {
            prop_assert_eq!(mu.get(x, x), Some(1));
            for y in 0..n {
                if p.lt(x, y) {
                    let s: i64 = (0..n).filter(|&z| p.leq(x, z) && p.leq(z, y)).map(|z| mu.get(x, z).unwrap()).sum();
                    prop_assert_eq!(s, 0);
                } else if !p.leq(x, y) {
                    prop_assert_eq!(mu.get(x, y), None);
                }
            }
        }
    }

    #[test]
    fn isomorphism_is_invariant_under_relabeling(seed in any::<u64>(), n in 0usize..10, d in 0.05f64..0.9, s2 in any::<u64>()) {
        let p = random_poset(seed, n, d);
        let q = shuffled(&p, s2);
        prop_assert!(is_isomorphic(&p, &p, DEFAULT_BUDGET).unwrap());
        let f = find_isomorphism(&p, &q, DEFAULT_BUDGET).unwrap().expect("relabeled copy");
        prop_assert!(is_isomorphism(&p, &q, &f));
        prop_assert!(is_isomorphic(&q, &p, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn isomorphism_is_symmetric(s1 in any::<u64>(), s2 in any::<u64>(), n in 0usize..8, d in 0.1f64..0.7) {
        let p = random_poset(s1, n, d);
        let q = random_poset(s2, n, d);
        prop_assert_eq!(
            is_isomorphic(&p, &q, DEFAULT_BUDGET).unwrap(),
            is_isomorphic(&q, &p, DEFAULT_BUDGET).unwrap()
        );
    }

    #[test]
    fn left_modular_criteria_agree_on_random_lattices(seed in any::<u64>(), inner in 1usize..9, d in 0.1f64..0.7) {
        // Completions of random posets are lattices; keep those with at most 12 elements.
        let l = dm_completion(&random_poset(seed, inner, d)).lattice;
        prop_assume!(l.len() <= 12);
        for x in 0..l.len() {
            prop_assert_eq!(l.is_left_modular_element(x).unwrap(), l.is_left_modular_element_direct(x).unwrap());
        }
    }

    #[test]
    fn random_bounded_posets_are_bounded(seed in any::<u64>(), inner in 0usize..8, d in 0.0f64..1.0) {
        let p = random_bounded_poset(seed, inner, d);
        prop_assert!(p.is_bounded());
        prop_assert_eq!(p.len(), inner + 2);
    }
}

#[test]
fn left_modular_criteria_agree_on_all_small_lattices() {
    let lattices: Vec<Poset> = bounded_posets(8).into_iter().filter(Poset::is_lattice).collect();
    // Unlabelled lattices with 1..=8 elements: 1, 1, 1, 2, 5, 15, 53, 222.
    assert_eq!(lattices.len(), 1 + 1 + 1 + 2 + 5 + 15 + 53 + 222);
    for l in &lattices {
        for x in 0..l.len() {
            assert_eq!(
                l.is_left_modular_element(x).unwrap(),
                l.is_left_modular_element_direct(x).unwrap(),
                "element {x} of {:?}",
                l.covers()
            );
        }
    }
}
