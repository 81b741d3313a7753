//! Northeast paths, path posets and the grid description of their m-covers.

use std::fmt;
use std::str::FromStr;

use crate::count::binomial;
use crate::error::{Error, Result};
use crate::mcover::MCover;
use crate::poset::Poset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    E,
}

/// A word in `{N, E}`; letter `j` (0-based here) is `w_{j+1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NePath(pub Vec<Step>);

impl FromStr for NePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'N' | 'n' => Ok(Step::N),
                'E' | 'e' => Ok(Step::E),
                other => Err(Error::InvalidPath(format!("unexpected letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(NePath)
    }
}

impl fmt::Display for NePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Step::N { "N" } else { "E" })?;
        }
        Ok(())
    }
}

impl NePath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All words of length `len`, in lexicographic order with `N < E`.
    pub fn all_of_length(len: usize) -> Vec<NePath> {
        (0u32..1 << len)
            .map(|bits| NePath((0..len).map(|j| if bits >> (len - 1 - j) & 1 == 0 { Step::N } else { Step::E }).collect()))
            .collect()
    }

    /// Cover pairs `(lower, upper)` of the path order, 0-based.
    fn order_covers(&self) -> Vec<(usize, usize)> {
        let w = &self.0;
        let mut covers = Vec::new();
        let mut last_n: Option<usize> = None;
        // anchor: the N letter preceding the current run of E letters.
        let mut anchor: Option<usize> = None;
        for (j, &s) in w.iter().enumerate() {
            match s {
                Step::N => {
                    if let Some(i) = last_n {
                        covers.push((i, j));
                    }
                    last_n = Some(j);
                }
                Step::E => {
                    if j == 0 || w[j - 1] == Step::N {
                        anchor = j.checked_sub(1);
                    }
                    if let Some(i) = anchor {
                        covers.push((j, i));
                    }
                }
            }
        }
        covers
    }
}

fn letter_labels(w: &NePath) -> impl Iterator<Item = String> + '_ {
    (1..=w.len()).map(|j| format!("w{j}"))
}

/// The path order on the letters of `w`.
pub fn path_order(w: &NePath) -> Poset {
    Poset::from_cover_relations(w.len(), &w.order_covers())
        .expect("path order is acyclic")
        .with_labels(letter_labels(w).collect())
        .expect("one label per letter")
}

/// `P ⊎ letters(w)`: letters keep the path order, `0̂` lies below every E
/// letter and all of `P` lies below every N letter.
pub fn path_poset(p: &Poset, w: &NePath) -> Result<Poset> {
    let (bot, _) = p.bounds()?;
    if w.0.first() == Some(&Step::E) {
        return Err(Error::Precondition("a path starting with E yields an unbounded poset".into()));
    }
    let n = p.len();
    let mut rel = p.covers();
    rel.extend(w.order_covers().into_iter().map(|(a, b)| (n + a, n + b)));
    for (j, &s) in w.0.iter().enumerate() {
        match s {
            Step::E => rel.push((bot, n + j)),
            Step::N => rel.extend((0..n).map(|x| (x, n + j))),
        }
    }
    let labels = (0..n).map(|x| p.label(x)).chain(letter_labels(w)).collect();
    Poset::from_cover_relations(n + w.len(), &rel)?.with_labels(labels)
}

/// The bounded poset whose proper part is a k-chain beside an l-antichain.
/// Indices: bottom `0`, chain `1..=k`, antichain `k+1..=k+l`, top `k+l+1`.
pub fn p_kl(k: usize, l: usize) -> Poset {
    let top = k + l + 1;
    let mut rel = Vec::new();
    let mut prev = 0;
    for c in 1..=k {
        rel.push((prev, c));
        prev = c;
    }
    rel.push((prev, top));
    for a in k + 1..=k + l {
        rel.push((0, a));
        rel.push((a, top));
    }
    let labels = std::iter::once("bot".to_string())
        .chain((1..=k).map(|i| format!("c{i}")))
        .chain((1..=l).map(|i| format!("a{i}")))
        .chain(std::iter::once("top".to_string()))
        .collect();
    Poset::from_cover_relations(k + l + 2, &rel).expect("acyclic").with_labels(labels).expect("labels")
}

/// `P_{k,l;w}`.
pub fn p_klp(k: usize, l: usize, w: &NePath) -> Result<Poset> {
    path_poset(&p_kl(k, l), w)
}

/// Adds one letter: N becomes a new top, E sits between `0̂` and `1̂`.
pub fn attach_step(p: &Poset, step: Step) -> Result<Poset> {
    let (bot, top) = p.bounds()?;
    let n = p.len();
    let mut rel = p.covers();
    match step {
        Step::N => rel.push((top, n)),
        Step::E => {
            rel.push((bot, n));
            rel.push((n, top));
        }
    }
    let labels = (0..n).map(|x| p.label(x)).chain(std::iter::once(format!("w{}", n))).collect();
    Poset::from_cover_relations(n + 1, &rel)?.with_labels(labels)
}

/// Grid elements added by one step, as `((a, b), tuple)` in row-major order.
fn grid(step: Step, m: usize, bot: usize, top: usize, new: usize) -> Vec<((usize, usize), Vec<usize>)> {
    let mut out = Vec::new();
    let fill = |parts: [(usize, usize); 3]| -> Vec<usize> {
        parts.iter().flat_map(|&(x, k)| std::iter::repeat_n(x, k)).collect()
    };
    for b in 0..=m {
        for a in 0..=b {
            let t = match step {
                Step::N if a >= 1 => fill([(bot, m - b), (top, b - a), (new, a)]),
                Step::E if a < b => fill([(bot, m - b), (new, b - a), (top, a)]),
                _ => continue,
            };
            out.push(((a, b), t));
        }
    }
    out
}

/// Extends `P⟨m⟩` to `(P_step)⟨m⟩` by appending the grid elements and their
/// covers, without recomputing the componentwise order.
pub fn mcover_extend_step(base: &Poset, pm: &MCover, step: Step) -> Result<MCover> {
    let (bot, top) = base.bounds()?;
    let m = pm.m;
    let n = base.len();
    for t in &pm.elements {
        let well_formed =
            t.len() == m && t.iter().all(|&x| x < n) && t.windows(2).all(|w| base.leq(w[0], w[1]));
        if !well_formed {
            return Err(Error::Precondition(format!("malformed m-cover element {t:?}")));
        }
    }
    let old = pm.len();
    let cells = grid(step, m, bot, top, n);
    let pos = |a: usize, b: usize| cells.iter().position(|c| c.0 == (a, b)).map(|i| old + i);
    let old_idx = |t: Vec<usize>| {
        pm.index_of(&t).ok_or_else(|| Error::Precondition(format!("m-cover lacks element {t:?}")))
    };
    let fill = |k0: usize, k1: usize| -> Vec<usize> {
        std::iter::repeat_n(bot, k0).chain(std::iter::repeat_n(top, k1)).collect()
    };

    let mut rel = pm.poset.covers();
    for &((a, b), _) in &cells {
        for (a2, b2) in [(a + 1, b), (a, b + 1)] {
            if let Some(j) = pos(a2, b2) {
                rel.push((pos(a, b).expect("cell"), j));
            }
        }
    }
    match step {
        Step::N => {
            for b in 1..=m {
                rel.push((old_idx(fill(m - b, b))?, pos(1, b).expect("cell")));
            }
        }
        Step::E => {
            for b in 0..m {
                rel.push((old_idx(fill(m - b, b))?, pos(b, b + 1).expect("cell")));
            }
            for b in 1..=m {
                rel.push((pos(b - 1, b).expect("cell"), old_idx(fill(m - b, b))?));
            }
        }
    }
    let extended = attach_step(base, step)?;
    let mut elements = pm.elements.clone();
    elements.extend(cells.into_iter().map(|(_, t)| t));
    let poset = Poset::from_cover_relations(elements.len(), &rel)?;
    Ok(MCover::from_parts(&extended, m, poset, elements))
}

/// Number of grid elements added by one step.
pub fn grid_size(m: usize) -> u128 {
    binomial(m as u64 + 1, 2)
}

fn tree_precondition(p: &Poset) -> Result<(usize, usize)> {
    if !crate::mcover::hasse_minus_bottom_is_rooted_tree(p)? {
        return Err(Error::Precondition("Hasse diagram minus the bottom is not a tree".into()));
    }
    p.bounds()
}

/// Recursive condition on the tree below `1̂`: at most one subtree of the
/// current root has more than one element, and that subtree satisfies it too.
pub fn satisfies_condition_s(p: &Poset) -> Result<bool> {
    let (bot, top) = tree_precondition(p)?;
    let mut size = vec![0usize; p.len()];
    for &x in p.linear_extension() {
        if x != bot {
            size[x] = 1 + p.lower_covers(x).iter().filter(|&&c| c != bot).map(|&c| size[c]).sum::<usize>();
        }
    }
    let mut root = top;
    loop {
        let big: Vec<usize> =
            p.lower_covers(root).iter().copied().filter(|&c| c != bot && size[c] > 1).collect();
        match big.as_slice() {
            [] => return Ok(true),
            [c] => root = *c,
            _ => return Ok(false),
        }
    }
}

/// Whether `P` is isomorphic to some `P_{k,l;w}`, via the tree criterion.
pub fn is_path_poset_shape(p: &Poset) -> Result<bool> {
    if p.len() < 2 {
        return Err(Error::Precondition("need at least two elements".into()));
    }
    if !crate::mcover::hasse_minus_bottom_is_rooted_tree(p)? {
        return Ok(false);
    }
    satisfies_condition_s(p)
}

/// `upper[d]` and `lower[d]` count elements with exactly `d` upper/lower covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverStatistic {
    pub upper: Vec<u128>,
    pub lower: Vec<u128>,
}

fn histogram(degrees: impl Iterator<Item = usize>) -> Vec<u128> {
    let mut h = Vec::new();
    for d in degrees {
        if h.len() <= d {
            h.resize(d + 1, 0);
        }
        h[d] += 1;
    }
    h
}

pub fn cover_statistics(p: &Poset) -> CoverStatistic {
    CoverStatistic {
        upper: histogram((0..p.len()).map(|x| p.upper_covers(x).len())),
        lower: histogram((0..p.len()).map(|x| p.lower_covers(x).len())),
    }
}

/// Coefficients of `1 + (k+l)m x + (k+l)C(m,2) x^2 + m x^(l+1)`.
pub fn predicted_cover_statistic(k: usize, l: usize, m: usize) -> Result<Vec<u128>> {
    if k == 0 || l == 0 || m == 0 {
        return Err(Error::Precondition("k, l and m must be positive".into()));
    }
    let kl = (k + l) as u128;
    let mut c = vec![0u128; (l + 2).max(3)];
    c[0] += 1;
    c[1] += kl * m as u128;
    c[2] += kl * binomial(m as u64, 2);
    c[l + 1] += m as u128;
    while c.last() == Some(&0) {
        c.pop();
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{is_isomorphic, DEFAULT_BUDGET};
    use crate::mcover::mcover;
    use crate::poset::chain;

    #[test]
    fn path_order_example() {
        let w: NePath = "NENEEENNE".parse().unwrap();
        let po = path_order(&w);
        let mut covers = po.covers();
        covers.sort();
        // 0-based: w1⋖w3⋖w7⋖w8, w2⋖w1, w4,w5,w6⋖w3, w9⋖w8.
        let mut expected = vec![(0, 2), (2, 6), (6, 7), (1, 0), (3, 2), (4, 2), (5, 2), (8, 7)];
        expected.sort();
        assert_eq!(covers, expected);
        assert_eq!(w.to_string(), "NENEEENNE");
    }

    #[test]
    fn path_order_trivia() {
        let nk: NePath = "NNNN".parse().unwrap();
        assert!(is_isomorphic(&path_order(&nk), &chain(4), DEFAULT_BUDGET).unwrap());
        let e: NePath = "E".parse().unwrap();
        assert_eq!(path_order(&e).len(), 1);
        assert!("NXE".parse::<NePath>().is_err());
        // A leading E letter stays isolated.
        let en: NePath = "EN".parse().unwrap();
        assert_eq!(path_order(&en).cover_count(), 0);
    }

    #[test]
    fn path_poset_of_chain() {
        let w: NePath = "NENEEENNE".parse().unwrap();
        let p = path_poset(&chain(5), &w).unwrap();
        assert_eq!(p.len(), 14);
        assert!(p.is_bounded());
        // E letters are atoms sitting under their N letters.
        let atoms = p.atoms().unwrap();
        for e in [1, 3, 4, 5, 8] {
            assert!(atoms.contains(&(5 + e)));
        }
        // The first N letter covers the old top.
        assert!(p.is_cover(4, 5));
        assert_eq!(path_poset(&chain(3), &NePath::default()).unwrap(), chain(3));
        assert!(path_poset(&chain(3), &"EN".parse().unwrap()).is_err());
    }

    #[test]
    fn p_kl_shapes() {
        let p33 = p_kl(3, 3);
        assert_eq!(p33.len(), 8);
        assert_eq!(p33.cover_count(), 10);
        assert_eq!(p33.atoms().unwrap().len(), 4);
        assert_eq!(p33.coatoms().unwrap().len(), 4);
        assert_eq!(p_kl(0, 0), chain(2));
        for l in 1..4 {
            assert!(is_isomorphic(&p_kl(0, l), &p_kl(1, l - 1), DEFAULT_BUDGET).unwrap());
        }
        for (k, l) in [(0, 0), (2, 1), (3, 3), (1, 4)] {
            let w = NePath(std::iter::repeat_n(Step::N, k + 1).chain(std::iter::repeat_n(Step::E, l)).collect());
            let single = Poset::from_cover_relations(1, &[]).unwrap();
            let q = path_poset(&single, &w).unwrap();
            assert!(is_isomorphic(&q, &p_kl(k, l), DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn path_poset_equals_iterated_steps() {
        for len in 1..=5 {
            for w in NePath::all_of_length(len).into_iter().filter(|w| w.0[0] == Step::N) {
                let base = p_kl(1, 2);
                let mut it = base.clone();
                for &s in &w.0 {
                    it = attach_step(&it, s).unwrap();
                }
                assert_eq!(path_poset(&base, &w).unwrap(), it, "{w}");
            }
        }
    }

    #[test]
    fn extension_matches_direct_construction() {
        let bases = [chain(2), chain(3), p_kl(1, 2), p_kl(2, 1), p_kl(0, 2)];
        for base in &bases {
            for m in 1..=3 {
                let pm = mcover(base, m).unwrap();
                for step in [Step::N, Step::E] {
                    let ext = mcover_extend_step(base, &pm, step).unwrap();
                    assert_eq!(ext.len() as u128, pm.len() as u128 + grid_size(m));
                    let direct = mcover(&attach_step(base, step).unwrap(), m).unwrap();
                    assert_eq!(direct.len(), ext.len());
                    for (i, s) in ext.elements.iter().enumerate() {
                        for (j, t) in ext.elements.iter().enumerate() {
                            let (di, dj) = (direct.index_of(s).unwrap(), direct.index_of(t).unwrap());
                            assert_eq!(ext.poset.leq(i, j), direct.poset.leq(di, dj), "{step:?} m={m} {s:?} {t:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extension_from_two_chain_north() {
        let c2 = mcover(&chain(2), 2).unwrap();
        let ext = mcover_extend_step(&chain(2), &c2, Step::N).unwrap();
        let c3 = mcover(&chain(3), 2).unwrap();
        assert!(is_isomorphic(&ext.poset, &c3.poset, DEFAULT_BUDGET).unwrap());
        let c1 = mcover(&chain(2), 1).unwrap();
        assert_eq!(mcover_extend_step(&chain(2), &c1, Step::E).unwrap().len(), c1.len() + 1);
    }

    #[test]
    fn condition_s_figures() {
        // Trees hang from node 11 (index 10); a fresh bottom sits below every leaf.
        let tree_a = [(1, 4), (2, 4), (3, 4), (4, 5), (5, 8), (6, 8), (7, 8), (8, 11), (9, 11), (10, 11)];
        let with_bottom = |edges: &[(usize, usize)], nodes: usize| {
            let mut rel: Vec<(usize, usize)> = edges.to_vec();
            let has_child = |x: usize| edges.iter().any(|&(_, u)| u == x);
            for x in 1..=nodes {
                if !has_child(x) {
                    rel.push((0, x));
                }
            }
            Poset::from_cover_relations(nodes + 1, &rel).unwrap()
        };
        let a = with_bottom(&tree_a, 11);
        assert!(satisfies_condition_s(&a).unwrap());
        let mut tree_b = tree_a.to_vec();
        tree_b.push((12, 10));
        let b = with_bottom(&tree_b, 12);
        assert!(!satisfies_condition_s(&b).unwrap());
        assert!(satisfies_condition_s(&chain(2)).unwrap());
        let fig = Poset::from_cover_relations(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert!(satisfies_condition_s(&fig).is_err());
    }

    #[test]
    fn path_shape() {
        assert!(is_path_poset_shape(&p_klp(3, 3, &"NENNE".parse().unwrap()).unwrap()).unwrap());
        assert!(is_path_poset_shape(&chain(2)).unwrap());
        let two_chains =
            Poset::from_cover_relations(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        assert!(!is_path_poset_shape(&two_chains).unwrap());
        assert!(is_path_poset_shape(&chain(1)).is_err());
    }

    #[test]
    fn cover_statistic_prediction() {
        assert_eq!(predicted_cover_statistic(3, 3, 2).unwrap(), vec![1, 12, 6, 0, 2]);
        let c2 = cover_statistics(&chain(2));
        assert_eq!(c2.upper, vec![1, 1]);
        for (k, l, m) in [(3, 3, 2), (2, 1, 3), (1, 1, 1), (1, 2, 4), (2, 3, 3)] {
            let s = cover_statistics(&mcover(&p_kl(k, l), m).unwrap().poset);
            let pred = predicted_cover_statistic(k, l, m).unwrap();
            assert_eq!(s.upper, pred, "({k},{l},{m})");
            assert_eq!(s.lower, pred, "({k},{l},{m})");
        }
    }
}
