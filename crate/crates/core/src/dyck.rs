//! m-Dyck paths and the m-Tamari lattice.
//!
//! A path of height `n` is stored as its step sequence `u` with `u[0] = 0`,
//! `u` weakly increasing and `u[k] <= m k` (0-based). Its height sequence has
//! `mn` entries: `h[k-1] = max { j : u[j-1] < k }`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::count::{binomial, catalan};
use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MDyckPath {
    m: usize,
    steps: Vec<usize>,
}

impl fmt::Display for MDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl MDyckPath {
    pub fn new(m: usize, steps: Vec<usize>) -> Result<Self> {
        if m == 0 || steps.is_empty() {
            return Err(Error::InvalidPath("need m >= 1 and at least one step".into()));
        }
        for (k, &u) in steps.iter().enumerate() {
            if u > m * k {
                return Err(Error::InvalidPath(format!("step {} exceeds {}", k + 1, m * k)));
            }
            if k > 0 && steps[k - 1] > u {
                return Err(Error::InvalidPath(format!("steps decrease at position {}", k + 1)));
            }
        }
        Ok(MDyckPath { m, steps })
    }

    /// Inverse of [`MDyckPath::heights`].
    pub fn from_heights(m: usize, h: &[usize]) -> Result<Self> {
        if m == 0 || h.is_empty() || !h.len().is_multiple_of(m) {
            return Err(Error::InvalidPath(format!("height sequence length {} is not a multiple of m", h.len())));
        }
        let n = h.len() / m;
        for (k, &x) in h.iter().enumerate() {
            if x < (k + m) / m || x > n || (k > 0 && h[k - 1] > x) {
                return Err(Error::InvalidPath(format!("height {} at position {} is out of range", x, k + 1)));
            }
        }
        let steps = (1..=n).map(|j| h.iter().filter(|&&x| x < j).count()).collect();
        Self::new(m, steps)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn heights(&self) -> Vec<usize> {
        (1..=self.m * self.n()).map(|k| self.steps.iter().filter(|&&u| u < k).count()).collect()
    }

    /// Last index `k >= i` with `u[j] - u[i] < m (j - i)` for all `i < j <= k`.
    pub fn primitive_end(&self, i: usize) -> usize {
        let u = &self.steps;
        let mut k = i;
        while k + 1 < u.len() && u[k + 1] - u[i] < self.m * (k + 1 - i) {
            k += 1;
        }
        k
    }

    /// Upper covers in the rotation order.
    pub fn rotation_covers(&self) -> Vec<MDyckPath> {
        let u = &self.steps;
        (1..u.len())
            .filter(|&i| u[i - 1] < u[i])
            .map(|i| {
                let k = self.primitive_end(i);
                let mut v = u.clone();
                for x in &mut v[i..=k] {
                    *x -= 1;
                }
                MDyckPath { m: self.m, steps: v }
            })
            .collect()
    }
}

/// All m-Dyck paths of height `n`, lexicographic in their step sequences.
pub fn enumerate_mdyck(n: usize, m: usize) -> Result<Vec<MDyckPath>> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("need n >= 1 and m >= 1".into()));
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn rec(cur: &mut Vec<usize>, n: usize, m: usize, out: &mut Vec<MDyckPath>) {
        if cur.len() == n {
            out.push(MDyckPath { m, steps: cur.clone() });
            return;
        }
        let k = cur.len();
        for u in *cur.last().expect("non-empty")..=m * k {
            cur.push(u);
            rec(cur, n, m, out);
            cur.pop();
        }
    }
    rec(&mut cur, n, m, &mut out);
    Ok(out)
}

/// The m-Tamari lattice with its paths.
#[derive(Clone, Debug)]
pub struct MTamari {
    pub poset: Poset,
    pub paths: Vec<MDyckPath>,
    pub n: usize,
    pub m: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl MTamari {
    pub fn index_of(&self, steps: &[usize]) -> Option<usize> {
        self.index.get(steps).copied()
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Rotation order on step sequences.
    pub fn leq(&self, a: &[usize], b: &[usize]) -> Option<bool> {
        Some(self.poset.leq(self.index_of(a)?, self.index_of(b)?))
    }
}

/// `T_n^(m)` under the rotation order.
pub fn mtamari(n: usize, m: usize) -> Result<MTamari> {
    let paths = enumerate_mdyck(n, m)?;
    let index: HashMap<Vec<usize>, usize> =
        paths.iter().enumerate().map(|(i, p)| (p.steps.clone(), i)).collect();
    let mut rel = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for q in p.rotation_covers() {
            rel.push((i, index[&q.steps]));
        }
    }
    let labels = paths.iter().map(ToString::to_string).collect();
    let poset = Poset::from_cover_relations(paths.len(), &rel)?.with_labels(labels)?;
    Ok(MTamari { poset, paths, n, m, index })
}

/// Step sequences `(0^i, a^(n-i))` with `1 <= i < n` and `1 <= a <= m i`.
pub fn predicted_meet_irreducibles(n: usize, m: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for i in 1..n {
        for a in 1..=m * i {
            out.insert((0..n).map(|j| if j < i { 0 } else { a }).collect());
        }
    }
    out
}

/// Step sequences equal to the bottom `(0, m, 2m, …)` except on one
/// non-empty run of positions `i..=k` (1-based, `2 <= i <= k <= n`), which is
/// lowered by the same `s` in `1..=m`.
pub fn predicted_join_irreducibles(n: usize, m: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for i in 1..n {
        for k in i..n {
            for s in 1..=m {
                out.insert((0..n).map(|j| if (i..=k).contains(&j) { m * j - s } else { m * j }).collect());
            }
        }
    }
    out
}

/// `|T_n⟨m⟩| = ((n-1)/2)(Cat(n) - 2) C(m,2) + m Cat(n) - m + 1`.
pub fn tmn_size_formula(n: usize, m: usize) -> i128 {
    let cat = catalan(n as u64) as i128;
    let pairs = binomial(m as u64, 2) as i128;
    let m = m as i128;
    // (n-1)(Cat(n)-2) is even for every n >= 1.
    (n as i128 - 1) * (cat - 2) * pairs / 2 + m * cat - m + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::fuss_catalan;

    fn path(m: usize, u: &[usize]) -> MDyckPath {
        MDyckPath::new(m, u.to_vec()).unwrap()
    }

    #[test]
    fn heights_round_trip_example() {
        let p = path(3, &[0, 2, 2, 8, 10]);
        assert_eq!(p.heights(), vec![1, 1, 3, 3, 3, 3, 3, 3, 4, 4, 5, 5, 5, 5, 5]);
        assert_eq!(MDyckPath::from_heights(3, &p.heights()).unwrap(), p);
        assert!(MDyckPath::from_heights(3, &[1, 1, 2]).is_err());
        assert_eq!(MDyckPath::from_heights(3, &[1, 1, 1]).unwrap().steps(), &[0]);
        assert!(MDyckPath::from_heights(2, &[1, 2, 2]).is_err());
    }

    #[test]
    fn validation() {
        assert!(MDyckPath::new(2, vec![0, 3]).is_err());
        assert!(MDyckPath::new(2, vec![1]).is_err());
        assert!(MDyckPath::new(2, vec![0, 2, 1]).is_err());
        assert!(MDyckPath::new(0, vec![0]).is_err());
    }

    #[test]
    fn counts_match_fuss_catalan() {
        for n in 1..=5 {
            for m in 1..=3 {
                assert_eq!(enumerate_mdyck(n, m).unwrap().len() as u128, fuss_catalan(n as u64, m as u64));
            }
        }
    }

    #[test]
    fn t32_hasse_diagram() {
        let t = mtamari(3, 2).unwrap();
        let mut edges: Vec<(String, String)> = t
            .poset
            .covers()
            .into_iter()
            .map(|(a, b)| (t.paths[a].steps.iter().map(ToString::to_string).collect(), t.paths[b].steps.iter().map(ToString::to_string).collect()))
            .collect();
        edges.sort();
        let mut expected: Vec<(String, String)> = [
            ("024", "014"), ("024", "023"), ("014", "004"), ("014", "013"), ("004", "003"), ("013", "003"),
            ("013", "012"), ("003", "002"), ("023", "012"), ("023", "022"), ("002", "001"), ("012", "001"),
            ("012", "011"), ("022", "011"), ("001", "000"), ("011", "000"),
        ]
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
        expected.sort();
        assert_eq!(edges, expected);
        assert!(t.poset.is_lattice());
    }

    #[test]
    fn t3_is_a_pentagon() {
        let t = mtamari(3, 1).unwrap();
        let i = |u: &[usize]| t.index_of(u).unwrap();
        assert_eq!(t.poset.meet(i(&[0, 1, 1]), i(&[0, 0, 1])), Some(i(&[0, 1, 2])));
        assert_eq!(t.poset.join(i(&[0, 1, 1]), i(&[0, 0, 1])), Some(i(&[0, 0, 0])));
        assert_eq!(t.poset.bounds().unwrap(), (i(&[0, 1, 2]), i(&[0, 0, 0])));
    }

    #[test]
    fn irreducibles_t32() {
        let t = mtamari(3, 2).unwrap();
        let j: BTreeSet<Vec<usize>> = t.poset.join_irreducibles().into_iter().map(|x| t.paths[x].steps.clone()).collect();
        let expected: BTreeSet<Vec<usize>> =
            [[0, 1, 4], [0, 0, 4], [0, 1, 3], [0, 0, 2], [0, 2, 3], [0, 2, 2]].iter().map(|v| v.to_vec()).collect();
        assert_eq!(j, expected);
        assert_eq!(predicted_join_irreducibles(3, 2), expected);
        let mi: BTreeSet<Vec<usize>> = t.poset.meet_irreducibles().into_iter().map(|x| t.paths[x].steps.clone()).collect();
        assert_eq!(predicted_meet_irreducibles(3, 2), mi);
    }

    #[test]
    fn size_formula_values() {
        assert_eq!(tmn_size_formula(4, 2), 45);
        assert_eq!(tmn_size_formula(1, 3), 1);
        assert_eq!(tmn_size_formula(2, 3), 4);
        assert_eq!(tmn_size_formula(3, 1), 5);
    }
}
