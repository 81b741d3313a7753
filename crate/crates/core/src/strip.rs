//! Strip decomposition of m-Dyck paths into m-tuples of Dyck paths, the
//! bouncing map on such tuples, and the exhaustive conjecture harness.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::count::gcd;
use crate::dyck::{enumerate_mdyck, mtamari, MDyckPath, MTamari};
use crate::error::{Error, Result};

/// An m-tuple of Dyck paths of a common height.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fan(pub Vec<MDyckPath>);

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn dyck(h: &[usize]) -> MDyckPath {
    MDyckPath::from_heights(1, h).expect("valid Dyck heights")
}

/// Componentwise comparison of height sequences.
pub fn dominance_leq(q: &MDyckPath, r: &MDyckPath) -> Result<bool> {
    if q.m() != 1 || r.m() != 1 || q.n() != r.n() {
        return Err(Error::Precondition("dominance compares Dyck paths of equal height".into()));
    }
    Ok(q.heights().iter().zip(r.heights()).all(|(a, b)| *a <= b))
}

/// Each path lies weakly below the next in dominance order.
pub fn is_increasing_fan(f: &Fan) -> bool {
    f.0.windows(2).all(|w| dominance_leq(&w[0], &w[1]).unwrap_or(false))
}

/// Strip `i` collects heights `h_i, h_{i+m}, …` (1-based).
pub fn strip_decompose(p: &MDyckPath) -> Fan {
    let (m, n) = (p.m(), p.n());
    let h = p.heights();
    Fan((0..m).map(|i| dyck(&(0..n).map(|k| h[i + k * m]).collect::<Vec<_>>())).collect())
}

/// Increasing fan whose interleaved heights are weakly increasing: the last
/// strip at position `i` never exceeds the first strip at position `i + 1`.
pub fn is_valid_delta_fan(f: &Fan) -> bool {
    if f.0.is_empty() || f.0.iter().any(|q| q.m() != 1 || q.n() != f.0[0].n()) || !is_increasing_fan(f) {
        return false;
    }
    let hs: Vec<Vec<usize>> = f.0.iter().map(MDyckPath::heights).collect();
    let n = hs[0].len();
    (0..n.saturating_sub(2)).all(|i| {
        (0..hs.len()).all(|k| (0..k).all(|j| hs[k][i] <= hs[j][i + 1]))
    })
}

/// Inverse of [`strip_decompose`] on valid fans.
pub fn strip_compose(f: &Fan) -> Result<MDyckPath> {
    if !is_valid_delta_fan(f) {
        return Err(Error::Precondition(format!("{f} is not in the image of the strip decomposition")));
    }
    let m = f.0.len();
    let hs: Vec<Vec<usize>> = f.0.iter().map(MDyckPath::heights).collect();
    let h: Vec<usize> = (0..hs[0].len()).flat_map(|k| hs.iter().map(move |s| s[k])).collect();
    MDyckPath::from_heights(m, &h)
}

/// All increasing fans of `m` Dyck paths of height `n`.
pub fn enumerate_increasing_fans(n: usize, m: usize) -> Result<Vec<Fan>> {
    let paths = enumerate_mdyck(n, 1)?;
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let heights: Vec<Vec<usize>> = paths.iter().map(MDyckPath::heights).collect();
    let dom = |a: usize, b: usize| heights[a].iter().zip(&heights[b]).all(|(x, y)| x <= y);
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(
        cur: &mut Vec<usize>,
        m: usize,
        k: usize,
        dom: &dyn Fn(usize, usize) -> bool,
        paths: &[MDyckPath],
        out: &mut Vec<Fan>,
    ) {
        if cur.len() == m {
            out.push(Fan(cur.iter().map(|&i| paths[i].clone()).collect()));
            return;
        }
        for i in 0..k {
            if cur.last().is_none_or(|&j| dom(j, i)) {
                cur.push(i);
                rec(cur, m, k, dom, paths, out);
                cur.pop();
            }
        }
    }
    rec(&mut cur, m, paths.len(), &dom, &paths, &mut out);
    Ok(out)
}

/// `∏_{1 <= i <= j < n} (i + j + 2m) / (i + j)`.
pub fn count_increasing_fans_formula(n: usize, m: usize) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 1..n {
        for j in i..n {
            num *= (i + j + 2 * m) as u128;
            den *= (i + j) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    num / den
}

/// Order in which the pairwise bounces are applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BounceOrder {
    /// `(1,2), (1,3), …, (1,m), (2,3), …, (m-1,m)`.
    #[default]
    Standard,
    /// The same pairs, last to first.
    Reversed,
}

fn tamari_index(tn: &MTamari, q: &MDyckPath) -> Result<usize> {
    tn.index_of(q.steps())
        .ok_or_else(|| Error::Precondition(format!("{q} is not a Dyck path of height {}", tn.n)))
}

/// Replaces entries `i < j` (0-based) by their Tamari meet and join.
pub fn bounce_pair(tn: &MTamari, f: &Fan, i: usize, j: usize) -> Result<Fan> {
    if i >= j || j >= f.0.len() {
        return Err(Error::Precondition(format!("invalid bounce positions ({i}, {j})")));
    }
    let (a, b) = (tamari_index(tn, &f.0[i])?, tamari_index(tn, &f.0[j])?);
    let meet = tn.poset.meet(a, b).expect("Tamari lattice");
    let join = tn.poset.join(a, b).expect("Tamari lattice");
    let mut out = f.clone();
    out.0[i] = tn.paths[meet].clone();
    out.0[j] = tn.paths[join].clone();
    Ok(out)
}

/// Composite bounce over all pairs in the given order.
pub fn bounce(tn: &MTamari, f: &Fan, order: BounceOrder) -> Result<Fan> {
    let m = f.0.len();
    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    if order == BounceOrder::Reversed {
        pairs.reverse();
    }
    let mut cur = f.clone();
    for (i, j) in pairs {
        cur = bounce_pair(tn, &cur, i, j)?;
    }
    Ok(cur)
}

/// Bounce after strip decomposition.
pub fn zeta(tn: &MTamari, p: &MDyckPath) -> Result<Fan> {
    bounce(tn, &strip_decompose(p), BounceOrder::Standard)
}

/// Consecutive entries are weakly increasing in rotation order.
pub fn is_rotation_multichain(tn: &MTamari, f: &Fan) -> Result<bool> {
    for w in f.0.windows(2) {
        let le = tn
            .leq(w[0].steps(), w[1].steps())
            .ok_or_else(|| Error::Precondition(format!("{} is not in T_{}", w[0], tn.n)))?;
        if !le {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of checking one `(n, m)` instance of the conjecture.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub m: usize,
    pub path_count: usize,
    pub injective: bool,
    pub order_iso: bool,
    /// Number of ordered pairs on which the two orders disagree.
    pub disagreements: u64,
    /// Lexicographically first disagreeing pair of step sequences.
    pub first_disagreement: Option<(Vec<usize>, Vec<usize>)>,
    /// How many `ζ(p)` satisfy `is_valid_delta_fan`; measured, not asserted.
    pub zeta_valid_fans: usize,
    pub elapsed_ms: u128,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.injective && self.order_iso
    }
}

/// Checks that `ζ` is injective and that `p <= p'` in rotation order exactly
/// when `ζ(p) <= ζ(p')` componentwise.
pub fn verify_conjecture(n: usize, m: usize, order: BounceOrder) -> Result<ConjectureReport> {
    let start = Instant::now();
    let tm = mtamari(n, m)?;
    let tn = mtamari(n, 1)?;
    let bounced: Vec<(Vec<usize>, bool)> = tm
        .paths
        .par_iter()
        .map(|p| {
            let f = bounce(&tn, &strip_decompose(p), order)?;
            let idx = f.0.iter().map(|q| tamari_index(&tn, q)).collect::<Result<Vec<_>>>()?;
            Ok((idx, is_valid_delta_fan(&f)))
        })
        .collect::<Result<_>>()?;
    let zeta_valid_fans = bounced.iter().filter(|b| b.1).count();
    let images: Vec<Vec<usize>> = bounced.into_iter().map(|b| b.0).collect();
    let distinct: HashSet<&Vec<usize>> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let len = images.len();
    let per_row: Vec<(u64, Option<usize>)> = (0..len)
        .into_par_iter()
        .map(|a| {
            let mut count = 0;
            let mut first = None;
            for b in 0..len {
                let rot = tm.poset.leq(a, b);
                let comp = images[a].iter().zip(&images[b]).all(|(&x, &y)| tn.poset.leq(x, y));
                if rot != comp {
                    count += 1;
                    first.get_or_insert(b);
                }
            }
            (count, first)
        })
        .collect();
    let disagreements = per_row.iter().map(|r| r.0).sum();
    let first_disagreement = per_row
        .iter()
        .enumerate()
        .find_map(|(a, r)| r.1.map(|b| (tm.paths[a].steps().to_vec(), tm.paths[b].steps().to_vec())));
    Ok(ConjectureReport {
        n,
        m,
        path_count: len,
        injective,
        order_iso: disagreements == 0,
        disagreements,
        first_disagreement,
        zeta_valid_fans,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// One confirmed (or refuted) counterexample.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CounterexampleResult {
    pub name: &'static str,
    pub confirmed: bool,
    pub detail: String,
}

fn steps(m: usize, u: &[usize]) -> MDyckPath {
    MDyckPath::new(m, u.to_vec()).expect("literal path")
}

/// Re-derives the three known failures of naive order preservation.
pub fn counterexample_checks() -> Result<Vec<CounterexampleResult>> {
    let mut out = Vec::new();

    // Dominance on valid fans does not imply rotation order of the preimages.
    let t32 = mtamari(3, 2)?;
    let (q, q2) = (steps(1, &[0, 1, 1]), steps(1, &[0, 0, 1]));
    let a = strip_compose(&Fan(vec![q.clone(), q.clone()]))?;
    let b = strip_compose(&Fan(vec![q.clone(), q2.clone()]))?;
    let dom = dominance_leq(&q, &q2)?;
    let rot = t32.leq(a.steps(), b.steps()).expect("paths of T_3^(2)");
    out.push(CounterexampleResult {
        name: "dominance-not-rotation",
        confirmed: a.steps() == [0, 2, 2] && b.steps() == [0, 1, 2] && dom && !rot,
        detail: format!("preimages {a} and {b}; dominance {dom}, rotation {rot}"),
    });

    // Rotation order is not preserved strip by strip.
    let t3 = mtamari(3, 1)?;
    let (p, p2) = (steps(2, &[0, 1, 2]), steps(2, &[0, 0, 1]));
    let (dp, dp2) = (strip_decompose(&p), strip_decompose(&p2));
    let rot = t32.leq(p.steps(), p2.steps()).expect("paths");
    let first = t3.leq(dp.0[0].steps(), dp2.0[0].steps()).expect("paths")
        || t3.leq(dp2.0[0].steps(), dp.0[0].steps()).expect("paths");
    out.push(CounterexampleResult {
        name: "strips-not-rotation-monotone",
        confirmed: rot && dp.0[0].steps() == [0, 1, 1] && dp2.0[0].steps() == [0, 0, 1] && !first,
        detail: format!("{p} <= {p2} but first strips {} and {} are incomparable", dp.0[0], dp2.0[0]),
    });

    // Bouncing is not monotone for dominance, yet the preimages are incomparable.
    let t5 = mtamari(5, 1)?;
    let t52 = mtamari(5, 2)?;
    let f = Fan(vec![dyck(&[1, 3, 3, 4, 5]), dyck(&[2, 3, 4, 4, 5])]);
    let g = Fan(vec![dyck(&[2, 3, 3, 5, 5]), dyck(&[2, 3, 4, 5, 5])]);
    let dom = dominance_leq(&f.0[0], &g.0[0])? && dominance_leq(&f.0[1], &g.0[1])?;
    let (bf, bg) = (bounce(&t5, &f, BounceOrder::Standard)?, bounce(&t5, &g, BounceOrder::Standard)?);
    let heights: Vec<Vec<usize>> = bf.0.iter().chain(&bg.0).map(MDyckPath::heights).collect();
    let expected_heights =
        vec![vec![1, 2, 3, 4, 5], vec![3, 3, 4, 4, 5], vec![2, 3, 3, 4, 5], vec![2, 3, 5, 5, 5]];
    let comp = bf.0.iter().zip(&bg.0).all(|(x, y)| t5.leq(x.steps(), y.steps()).expect("paths"));
    let (pf, pg) = (strip_compose(&f)?, strip_compose(&g)?);
    let rot = t52.leq(pf.steps(), pg.steps()).expect("paths");
    out.push(CounterexampleResult {
        name: "bounce-not-dominance-monotone",
        confirmed: dom
            && heights == expected_heights
            && !comp
            && pf.steps() == [0, 1, 2, 5, 8]
            && pg.steps() == [0, 0, 2, 5, 6]
            && !rot,
        detail: format!("bounced {bf} and {bg}; preimages {pf} and {pg}, rotation {rot}"),
    });
    Ok(out)
}
