//! The m-cover poset of a bounded poset and the structural criteria built on it.
//!
//! An element of `P⟨m⟩` is a weakly increasing m-tuple `(0̂^a, p^b, q^c)` with
//! `p ⋖ q` in `P`, ordered componentwise. Elements are stored as full tuples of
//! base indices, which is their canonical form.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::count::binomial;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// `P⟨m⟩` together with the tuple behind each element.
#[derive(Clone, Debug)]
pub struct MCover {
    pub poset: Poset,
    pub elements: Vec<Vec<usize>>,
    pub m: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl MCover {
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Builds the componentwise order on an arbitrary tuple family.
    pub(crate) fn from_tuples(base: &Poset, m: usize, elements: Vec<Vec<usize>>) -> MCover {
        let k = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(k); k];
        for (i, s) in elements.iter().enumerate() {
            for (j, t) in elements.iter().enumerate() {
                if s.iter().zip(t).all(|(&a, &b)| base.leq(a, b)) {
                    up[i].insert(j);
                }
            }
        }
        MCover::from_parts(base, m, Poset::from_up_sets(up), elements)
    }

    /// Wraps a poset whose element `i` is the tuple `elements[i]`.
    pub(crate) fn from_parts(base: &Poset, m: usize, poset: Poset, elements: Vec<Vec<usize>>) -> MCover {
        let labels =
            elements.iter().map(|t| t.iter().map(|&x| base.label(x)).collect::<Vec<_>>().join(",")).collect();
        let poset = poset.with_labels(labels).expect("one label per tuple");
        let index = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        MCover { poset, elements, m, index }
    }
}

/// Constructs `P⟨m⟩`.
pub fn mcover(p: &Poset, m: usize) -> Result<MCover> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let (bot, _) = p.bounds()?;
    let mut set = BTreeSet::new();
    set.insert(vec![bot; m]);
    for (a, b) in p.covers() {
        for l2 in 1..=m {
            for l1 in 0..=m - l2 {
                let l0 = m - l1 - l2;
                let mut t = vec![bot; l0];
                t.extend(std::iter::repeat_n(a, l1));
                t.extend(std::iter::repeat_n(b, l2));
                set.insert(t);
            }
        }
    }
    Ok(MCover::from_tuples(p, m, set.into_iter().collect()))
}

/// `(c - k) C(m,2) + m(n - 1) + 1` for an n-element bounded poset with `c`
/// covers and `k` atoms.
pub fn mcover_size_formula(n: usize, c: usize, k: usize, m: usize) -> u128 {
    let pairs = binomial(m as u64, 2);
    (c as u128 - k as u128) * pairs + (m as u128) * (n as u128 - 1) + 1
}

/// Size of `P⟨m⟩` predicted from the cover count and the number of atoms.
pub fn predicted_size(p: &Poset, m: usize) -> Result<u128> {
    let atoms = p.atoms()?.len();
    Ok(mcover_size_formula(p.len(), p.cover_count(), atoms, m))
}

/// Size of `L⟨m⟩` for an n-element lattice: `n C(m+1,2) - m^2 + 1`.
pub fn lattice_mcover_size(n: usize, m: usize) -> i128 {
    n as i128 * binomial(m as u64 + 1, 2) as i128 - (m * m) as i128 + 1
}

/// `ℓ(P⟨m⟩) = m ℓ(P)`.
pub fn predicted_length(p: &Poset, m: usize) -> usize {
    m * p.length()
}

fn tuple(parts: &[(usize, usize)]) -> Vec<usize> {
    parts.iter().flat_map(|&(x, k)| std::iter::repeat_n(x, k)).collect()
}

/// Join-irreducibles of `P⟨m⟩` read off from those of `P`.
pub fn predicted_join_irreducibles(p: &Poset, m: usize) -> Result<BTreeSet<Vec<usize>>> {
    let (bot, _) = p.bounds()?;
    let mut out = BTreeSet::new();
    for q in p.join_irreducibles() {
        for l in 0..m {
            out.insert(tuple(&[(bot, l), (q, m - l)]));
        }
    }
    Ok(out)
}

/// Meet-irreducibles of `P⟨m⟩` read off from those of `P`.
pub fn predicted_meet_irreducibles(p: &Poset, m: usize) -> Result<BTreeSet<Vec<usize>>> {
    let (bot, top) = p.bounds()?;
    let mi = p.meet_irreducibles();
    let mut out = BTreeSet::new();
    for &q in mi.iter().filter(|&&q| q != bot) {
        let star = p.upper_covers(q)[0];
        for l in 1..=m {
            out.insert(tuple(&[(q, l), (star, m - l)]));
        }
    }
    if p.lower_covers(top).len() == 1 {
        // The all-bottom tuple is added separately, only when the bottom is meet-irreducible.
        for l in 1..m {
            out.insert(tuple(&[(bot, l), (top, m - l)]));
        }
    }
    if mi.contains(&bot) {
        out.insert(vec![bot; m]);
    }
    Ok(out)
}

/// Whether `P⟨m⟩` is extremal for every `m >= 2`, given that `P` is an
/// extremal lattice: the bottom and top are both irreducible or both not.
pub fn extremality_condition(p: &Poset) -> Result<bool> {
    let (bot, top) = p.bounds()?;
    let bot_in_m = p.upper_covers(bot).len() == 1;
    let top_in_j = p.lower_covers(top).len() == 1;
    Ok(bot_in_m == top_in_j)
}

/// `P` is a lattice in which every meet of two elements is `0̂` or one of them.
pub fn meet_condition(p: &Poset) -> bool {
    if !p.is_lattice() {
        return false;
    }
    let bot = p.bottom().expect("lattices are bounded");
    (0..p.len()).all(|x| {
        (x + 1..p.len()).all(|y| {
            let z = p.meet(x, y).expect("lattice");
            z == bot || z == x || z == y
        })
    })
}

/// The Hasse diagram with `0̂` removed is a tree rooted at `1̂`.
pub fn hasse_minus_bottom_is_rooted_tree(p: &Poset) -> Result<bool> {
    let (bot, top) = p.bounds()?;
    if p.len() < 2 {
        return Err(Error::Precondition("need at least two elements".into()));
    }
    // Rooted at the top: every other remaining element has exactly one upper cover.
    // Connectivity then follows because every upward path ends at the top.
    Ok((0..p.len()).filter(|&x| x != bot && x != top).all(|x| p.upper_covers(x).len() == 1))
}

/// Outcome of comparing Möbius values with the nuclear-interval rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCheck {
    pub pairs_checked: usize,
    /// `(x, y, computed, predicted)` for every disagreement.
    pub mismatches: Vec<(usize, usize, i64, i64)>,
}

/// Compares the Möbius function of a trim lattice with the rule: `1` on
/// nuclear intervals with two atoms, `-1` on covers, `0` otherwise.
pub fn trim_mobius_check(l: &Poset) -> Result<MobiusCheck> {
    if !l.is_trim()? {
        return Err(Error::Precondition("lattice is not trim".into()));
    }
    let mu = l.mobius();
    let mut check = MobiusCheck { pairs_checked: 0, mismatches: Vec::new() };
    for x in 0..l.len() {
        for y in l.up_set(x).ones() {
            let predicted = if x == y {
                1
            } else if l.is_cover(x, y) {
                -1
            } else {
                let atoms: Vec<usize> = l.upper_covers(x).iter().copied().filter(|&a| l.leq(a, y)).collect();
                let nuclear = l.join_of(&atoms) == Some(y);
                if nuclear && atoms.len() == 2 {
                    1
                } else {
                    0
                }
            };
            let computed = mu.get(x, y).expect("comparable pair");
            check.pairs_checked += 1;
            if computed != predicted {
                check.mismatches.push((x, y, computed, predicted));
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain;

    fn n5() -> Poset {
        // 0 bottom; atoms 2 and 1; 3 above 2; 4 top; 1 ⋖ 4.
        Poset::from_cover_relations(5, &[(0, 1), (0, 2), (2, 3), (3, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn chain_mcover_is_chain() {
        let c = mcover(&chain(2), 4).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.poset.length(), 4);
        let c3 = mcover(&chain(3), 2).unwrap();
        // Tuples (0,0),(0,1),(1,1),(0,2),(1,2),(2,2).
        assert_eq!(c3.len(), 6);
        assert!(c3.index_of(&[0, 2]).is_some());
        assert!(c3.index_of(&[1, 0]).is_none());
    }

    #[test]
    fn n5_twofold_join_is_not_componentwise() {
        let c = mcover(&n5(), 2).unwrap();
        let a = c.index_of(&[0, 1]).unwrap();
        let b = c.index_of(&[2, 2]).unwrap();
        let j = c.poset.join(a, b).unwrap();
        assert_eq!(c.elements[j], vec![3, 4]);
        // The componentwise join (2,4) is not an element.
        assert!(c.index_of(&[2, 4]).is_none());
        assert_eq!(c.poset.label(j), "3,4");
    }

    #[test]
    fn fig_lattice_twofold_cover_is_not_a_lattice() {
        let p = Poset::from_cover_relations(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let c = mcover(&p, 2).unwrap();
        assert!(!c.poset.is_lattice());
        let x = c.index_of(&[2, 4]).unwrap();
        let y = c.index_of(&[3, 4]).unwrap();
        assert_eq!(c.poset.meet(x, y), None);
        let mut lower: Vec<Vec<usize>> = (0..c.len())
            .filter(|&z| c.poset.leq(z, x) && c.poset.leq(z, y))
            .map(|z| c.elements[z].clone())
            .collect();
        lower.sort();
        for t in [[1, 2], [0, 4], [1, 3]] {
            assert!(lower.contains(&t.to_vec()));
        }
    }

    #[test]
    fn formulas_on_n5() {
        let p = n5();
        for m in 1..5 {
            let c = mcover(&p, m).unwrap();
            assert_eq!(c.len() as u128, predicted_size(&p, m).unwrap());
            assert_eq!(c.len() as i128, lattice_mcover_size(5, m));
            assert_eq!(c.poset.length(), predicted_length(&p, m));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(mcover(&chain(2), 0).unwrap_err(), Error::Precondition("m must be positive".into()));
        let unbounded = Poset::from_cover_relations(2, &[]).unwrap();
        assert_eq!(mcover(&unbounded, 2).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn tree_criterion_examples() {
        assert!(hasse_minus_bottom_is_rooted_tree(&n5()).unwrap());
        let fig = Poset::from_cover_relations(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert!(!hasse_minus_bottom_is_rooted_tree(&fig).unwrap());
        assert!(meet_condition(&n5()));
        assert!(!meet_condition(&fig));
    }
}
