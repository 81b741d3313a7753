//! Exhaustive and seeded generators of bounded posets.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::iso::{is_isomorphic, DEFAULT_BUDGET};
use crate::path::{p_klp, NePath, Step};
use crate::poset::Poset;

/// Every poset on `k` elements whose identity order is a linear extension.
/// Each isomorphism class appears at least once.
pub fn naturally_labelled_posets(k: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let bit = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let has = |i: usize, j: usize| mask >> bit(i, j) & 1 == 1;
        let transitive = (0..k).all(|i| {
            (i + 1..k).all(|j| !has(i, j) || (j + 1..k).all(|l| !has(j, l) || has(i, l)))
        });
        if transitive {
            out.push(Poset::from_leq_fn(k, |i, j| i == j || (i < j && has(i, j))).expect("transitive"));
        }
    }
    out
}

/// Adds a new bottom (index 0) and top (index `k + 1`) around `inner`.
pub fn bound(inner: &Poset) -> Poset {
    let k = inner.len();
    Poset::from_leq_fn(k + 2, |x, y| {
        if x == 0 || y == k + 1 {
            true
        } else if y == 0 || x == k + 1 {
            false
        } else {
            inner.leq(x - 1, y - 1)
        }
    })
    .expect("bounded extension")
}

/// Drops isomorphic duplicates, keeping the first representative.
pub fn dedup_isomorphic(posets: Vec<Poset>) -> Vec<Poset> {
    let key = |p: &Poset| {
        let mut d: Vec<(usize, usize)> =
            (0..p.len()).map(|x| (p.down_set(x).count_ones(..), p.up_set(x).count_ones(..))).collect();
        d.sort_unstable();
        (p.len(), p.cover_count(), d)
    };
    let mut buckets: BTreeMap<_, Vec<Poset>> = BTreeMap::new();
    let mut out = Vec::new();
    for p in posets {
        let bucket = buckets.entry(key(&p)).or_default();
        let fresh = bucket
            .iter()
            .all(|q| !is_isomorphic(&p, q, DEFAULT_BUDGET).expect("small posets stay within budget"));
        if fresh {
            bucket.push(p.clone());
            out.push(p);
        }
    }
    out
}

/// One representative of every bounded poset with `1..=max_size` elements.
pub fn bounded_posets(max_size: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    if max_size >= 1 {
        out.push(Poset::from_cover_relations(1, &[]).expect("singleton"));
    }
    for k in 0..=max_size.saturating_sub(2) {
        out.extend(dedup_isomorphic(naturally_labelled_posets(k)).iter().map(bound));
    }
    out
}

/// Seeded random bounded poset: a random DAG on `inner` elements between new bounds.
pub fn random_bounded_poset(seed: u64, inner: usize, density: f64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rel = Vec::new();
    for i in 0..inner {
        for j in i + 1..inner {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    bound(&Poset::from_cover_relations(inner, &rel).expect("edges go forward"))
}

/// `P_{k,l;w}` for `k <= k_max`, `l <= l_max` and words of length at most
/// `w_max` that are empty or start with N.
pub fn path_poset_family(k_max: usize, l_max: usize, w_max: usize) -> Vec<(usize, usize, NePath, Poset)> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for l in 0..=l_max {
            for len in 0..=w_max {
                for w in NePath::all_of_length(len) {
                    if w.0.first() == Some(&Step::E) {
                        continue;
                    }
                    let p = p_klp(k, l, &w).expect("bounded path poset");
                    out.push((k, l, w, p));
                }
            }
        }
    }
    out
}
