//! Finite posets stored as dense order matrices.
//!
//! Every poset keeps its principal up-sets and down-sets twice: once indexed by
//! element and once indexed by position in a fixed linear extension. The second
//! copy turns meet and join lookups into a single bitset intersection followed
//! by a maximum/minimum query.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    up_ext: Vec<FixedBitSet>,
    down_ext: Vec<FixedBitSet>,
    ext: Vec<usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Poset {
    /// Equality of labelled order relations, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds the transitive closure of the relation generated by `pairs`,
    /// where `(a, b)` asserts `a < b`.
    pub fn from_cover_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            if a == b {
                return Err(Error::Cyclic(a));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if order.len() < n {
            let culprit = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(Error::Cyclic(culprit));
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Ok(Self::from_up_sets(up))
    }

    /// Builds a poset from a relation given pointwise; the relation must
    /// already be a partial order.
    pub fn from_leq_fn<F: Fn(usize, usize) -> bool>(n: usize, leq: F) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if leq(x, y) {
                    row.insert(y);
                }
            }
            if !row.contains(x) {
                return Err(Error::NotAnOrder("reflexive"));
            }
        }
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAnOrder("antisymmetric"));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::NotAnOrder("transitive"));
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    /// Invariant: `up` is reflexive, antisymmetric and transitive.
    pub(crate) fn from_up_sets(up: Vec<FixedBitSet>) -> Self {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        // Sorting by down-set size yields a linear extension.
        let mut ext: Vec<usize> = (0..n).collect();
        ext.sort_by_key(|&x| (down[x].count_ones(..), x));
        let mut ext_pos = vec![0; n];
        for (p, &x) in ext.iter().enumerate() {
            ext_pos[x] = p;
        }
        let permute = |rows: &Vec<FixedBitSet>| -> Vec<FixedBitSet> {
            rows.iter()
                .map(|row| {
                    let mut r = FixedBitSet::with_capacity(n);
                    for y in row.ones() {
                        r.insert(ext_pos[y]);
                    }
                    r
                })
                .collect()
        };
        let up_ext = permute(&up);
        let down_ext = permute(&down);

        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        let mut covered = FixedBitSet::with_capacity(n);
        for x in 0..n {
            covered.clear();
            for p in up_ext[x].ones() {
                let y = ext[p];
                if y == x || covered.contains(y) {
                    continue;
                }
                upper[x].push(y);
                lower[y].push(x);
                covered.union_with(&up[y]);
            }
            upper[x].sort_unstable();
        }
        for l in &mut lower {
            l.sort_unstable();
        }
        Poset { n, up, down, up_ext, down_ext, ext, upper, lower, labels: None }
    }

    /// Attaches one label per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Precondition(format!(
                "expected {} labels, got {}",
                self.n,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `x`, falling back to its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `{y : x <= y}`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y <= x}`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].binary_search(&y).is_ok()
    }

    /// All cover pairs `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| self.upper[x].iter().map(move |&y| (x, y))).collect()
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    /// Number of pairs `x <= y`, including the diagonal.
    pub fn relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    /// A fixed linear extension: `x < y` implies `x` appears before `y`.
    pub fn linear_extension(&self) -> &[usize] {
        &self.ext
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    /// Bottom and top, or `Unbounded`.
    pub fn bounds(&self) -> Result<(usize, usize)> {
        match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(Error::Unbounded),
        }
    }

    pub fn atoms(&self) -> Result<Vec<usize>> {
        let (b, _) = self.bounds()?;
        Ok(self.upper[b].clone())
    }

    pub fn coatoms(&self) -> Result<Vec<usize>> {
        let (_, t) = self.bounds()?;
        Ok(self.lower[t].clone())
    }

    /// Rank of every element: the length of the longest chain ending there.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for &y in &self.ext {
            h[y] = self.lower[y].iter().map(|&x| h[x] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Number of covers in a longest chain.
    pub fn length(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.down_ext[x].clone();
        common.intersect_with(&self.down_ext[y]);
        let cand = self.ext[common.maximum()?];
        common.is_subset(&self.down_ext[cand]).then_some(cand)
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut common = self.up_ext[x].clone();
        common.intersect_with(&self.up_ext[y]);
        let cand = self.ext[common.minimum()?];
        common.is_subset(&self.up_ext[cand]).then_some(cand)
    }

    /// Least upper bound of a set; the empty set yields the bottom.
    pub fn join_of(&self, xs: &[usize]) -> Option<usize> {
        let mut common = FixedBitSet::with_capacity(self.n);
        common.insert_range(..);
        for &x in xs {
            common.intersect_with(&self.up_ext[x]);
        }
        let cand = self.ext[common.minimum()?];
        common.is_subset(&self.up_ext[cand]).then_some(cand)
    }

    /// Greatest lower bound of a set; the empty set yields the top.
    pub fn meet_of(&self, xs: &[usize]) -> Option<usize> {
        let mut common = FixedBitSet::with_capacity(self.n);
        common.insert_range(..);
        for &x in xs {
            common.intersect_with(&self.down_ext[x]);
        }
        let cand = self.ext[common.maximum()?];
        common.is_subset(&self.down_ext[cand]).then_some(cand)
    }

    pub fn is_lattice(&self) -> bool {
        if self.n == 0 || self.top().is_none() {
            return false;
        }
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.meet(x, y).is_some()))
    }

    fn require_lattice(&self) -> Result<()> {
        if self.is_lattice() {
            Ok(())
        } else {
            Err(Error::NotALattice)
        }
    }

    fn meet_unchecked(&self, x: usize, y: usize) -> usize {
        self.meet(x, y).expect("lattice invariant")
    }

    fn join_unchecked(&self, x: usize, y: usize) -> usize {
        self.join(x, y).expect("lattice invariant")
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower[x].len() == 1).collect()
    }

    /// Elements with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper[x].len() == 1).collect()
    }

    /// Subposet induced on `elements`, in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(k); k];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if self.leq(x, y) {
                    up[i].insert(j);
                }
            }
        }
        let mut p = Poset::from_up_sets(up);
        if let Some(l) = &self.labels {
            p.labels = Some(elements.iter().map(|&x| l[x].clone()).collect());
        }
        p
    }

    /// The interval `[x, y]` together with the original index of each element.
    pub fn interval(&self, x: usize, y: usize) -> Result<(Poset, Vec<usize>)> {
        for i in [x, y] {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, size: self.n });
            }
        }
        if !self.leq(x, y) {
            return Err(Error::Precondition(format!("{x} is not below {y}")));
        }
        let mut elems = self.up[x].clone();
        elems.intersect_with(&self.down[y]);
        let elems: Vec<usize> = elems.ones().collect();
        Ok((self.induced(&elems), elems))
    }

    /// The bounded poset with its bottom and top removed.
    pub fn proper_part(&self) -> Result<(Poset, Vec<usize>)> {
        let (b, t) = self.bounds()?;
        let elems: Vec<usize> = (0..self.n).filter(|&x| x != b && x != t).collect();
        Ok((self.induced(&elems), elems))
    }

    pub fn dual(&self) -> Poset {
        let mut p = Poset::from_up_sets(self.down.clone());
        p.labels = self.labels.clone();
        p
    }

    /// Componentwise order on pairs; `(p, q)` has index `p * |other| + q`.
    pub fn direct_product(&self, other: &Poset) -> Poset {
        let (a, b) = (self.n, other.n);
        let mut up = vec![FixedBitSet::with_capacity(a * b); a * b];
        for p in 0..a {
            for q in 0..b {
                let row = &mut up[p * b + q];
                for p2 in self.up[p].ones() {
                    for q2 in other.up[q].ones() {
                        row.insert(p2 * b + q2);
                    }
                }
            }
        }
        let mut prod = Poset::from_up_sets(up);
        let labels = (0..a)
            .flat_map(|p| (0..b).map(move |q| (p, q)))
            .map(|(p, q)| format!("({},{})", self.label(p), other.label(q)))
            .collect();
        prod.labels = Some(labels);
        prod
    }

    fn incomparable_to(&self, x: usize) -> FixedBitSet {
        let mut s = self.up[x].clone();
        s.union_with(&self.down[x]);
        s.toggle_range(..);
        s
    }

    /// True if no two disjoint 2-chains are pairwise incomparable.
    pub fn is_two_plus_two_free(&self) -> bool {
        for a in 0..self.n {
            let inc_a = self.incomparable_to(a);
            for &b in self.up[a].ones().collect::<Vec<_>>().iter().filter(|&&b| b != a) {
                let mut inc = inc_a.clone();
                inc.intersect_with(&self.incomparable_to(b));
                for c in inc.ones() {
                    let mut above = self.up[c].clone();
                    above.intersect_with(&inc);
                    above.set(c, false);
                    if !above.is_clear() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Cover-pair criterion: for every `y ⋖ z` exactly one of
    /// `x ∧ y = x ∧ z` and `x ∨ y = x ∨ z` holds.
    pub fn is_left_modular_element(&self, x: usize) -> Result<bool> {
        self.require_lattice()?;
        Ok(self.left_modular_by_covers(x))
    }

    fn left_modular_by_covers(&self, x: usize) -> bool {
        self.covers().into_iter().all(|(y, z)| {
            let same_meet = self.meet_unchecked(x, y) == self.meet_unchecked(x, z);
            let same_join = self.join_unchecked(x, y) == self.join_unchecked(x, z);
            same_meet != same_join
        })
    }

    /// Defining identity: `(q ∨ x) ∧ r = q ∨ (x ∧ r)` for all `q < r`.
    pub fn is_left_modular_element_direct(&self, x: usize) -> Result<bool> {
        self.require_lattice()?;
        for q in 0..self.n {
            for r in self.up[q].ones().filter(|&r| r != q) {
                let lhs = self.meet_unchecked(self.join_unchecked(q, x), r);
                let rhs = self.join_unchecked(q, self.meet_unchecked(x, r));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A longest maximal chain made of left-modular elements, if any.
    pub fn left_modular_chain(&self) -> Result<Option<Vec<usize>>> {
        self.require_lattice()?;
        let (b, t) = self.bounds()?;
        let lm: Vec<bool> = (0..self.n).map(|x| self.left_modular_by_covers(x)).collect();
        // best[x]: length of the longest left-modular cover path from x to the top.
        let mut best: Vec<Option<usize>> = vec![None; self.n];
        let mut next = vec![usize::MAX; self.n];
        for &x in self.ext.iter().rev() {
            if !lm[x] {
                continue;
            }
            if x == t {
                best[x] = Some(0);
                continue;
            }
            for &y in &self.upper[x] {
                if let Some(l) = best[y] {
                    if best[x].is_none_or(|cur| l + 1 > cur) {
                        best[x] = Some(l + 1);
                        next[x] = y;
                    }
                }
            }
        }
        if best[b].is_none() {
            return Ok(None);
        }
        let mut chain = vec![b];
        let mut x = b;
        while x != t {
            x = next[x];
            chain.push(x);
        }
        Ok(Some(chain))
    }

    pub fn is_left_modular(&self) -> Result<bool> {
        Ok(self.left_modular_chain()?.is_some())
    }

    /// `|J| = ℓ = |M|`, without requiring a lattice.
    pub fn has_extremal_counts(&self) -> bool {
        let len = self.length();
        self.join_irreducibles().len() == len && self.meet_irreducibles().len() == len
    }

    /// A lattice with `|J| = ℓ = |M|`.
    pub fn is_extremal(&self) -> Result<bool> {
        self.require_lattice()?;
        Ok(self.has_extremal_counts())
    }

    /// Extremal and left-modular.
    pub fn is_trim(&self) -> Result<bool> {
        Ok(self.is_extremal()? && self.is_left_modular()?)
    }

    /// Möbius function on all comparable pairs.
    pub fn mobius(&self) -> Mobius {
        let n = self.n;
        let mut values = vec![0i64; n * n];
        for x in 0..n {
            for p in self.up_ext[x].ones() {
                let y = self.ext[p];
                if y == x {
                    values[x * n + y] = 1;
                    continue;
                }
                let mut between = self.up[x].clone();
                between.intersect_with(&self.down[y]);
                let s: i64 = between.ones().filter(|&z| z != y).map(|z| values[x * n + z]).sum();
                values[x * n + y] = -s;
            }
        }
        Mobius { n, values, order: self.up.clone() }
    }

    /// Every `x` is the least upper bound of `{s ∈ S : s <= x}`.
    pub fn is_join_dense(&self, s: &[usize]) -> bool {
        let mut mask = FixedBitSet::with_capacity(self.n);
        for &x in s {
            mask.insert(x);
        }
        (0..self.n).all(|x| {
            let mut below = self.down[x].clone();
            below.intersect_with(&mask);
            let mut ub = FixedBitSet::with_capacity(self.n);
            ub.insert_range(..);
            for d in below.ones() {
                ub.intersect_with(&self.up[d]);
            }
            ub.is_subset(&self.up[x])
        })
    }

    /// Every `x` is the greatest lower bound of `{s ∈ S : s >= x}`.
    pub fn is_meet_dense(&self, s: &[usize]) -> bool {
        self.dual().is_join_dense(s)
    }

    /// Re-indexes elements so that `perm[i]` becomes element `i`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        self.induced(perm)
    }
}

/// Möbius values; `None` on incomparable pairs.
#[derive(Clone, Debug)]
pub struct Mobius {
    n: usize,
    values: Vec<i64>,
    order: Vec<FixedBitSet>,
}

impl Mobius {
    pub fn get(&self, x: usize, y: usize) -> Option<i64> {
        (x < self.n && self.order[x].contains(y)).then(|| self.values[x * self.n + y])
    }
}

/// An n-element chain `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> Poset {
    Poset::from_leq_fn(n, |x, y| x <= y).expect("chain is an order")
}

/// An n-element antichain.
pub fn antichain(n: usize) -> Poset {
    Poset::from_leq_fn(n, |x, y| x == y).expect("antichain is an order")
}

/// Boolean lattice of subsets of an `k`-element set, indexed by bitmask.
pub fn boolean_lattice(k: u32) -> Poset {
    Poset::from_leq_fn(1 << k, |x, y| x & !y == 0).expect("subset order")
}
