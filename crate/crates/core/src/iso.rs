//! Poset isomorphism by colour refinement followed by budgeted backtracking.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default number of backtracking steps before giving up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

type Signature = (usize, Vec<usize>, Vec<usize>);

/// Refines both posets with a shared colour table so colour ids are comparable.
fn refine(a: &Poset, b: &Poset) -> (Vec<usize>, Vec<usize>) {
    let init = |p: &Poset| -> Vec<(usize, usize, usize, usize, usize)> {
        let h = p.heights();
        (0..p.len())
            .map(|x| {
                (
                    p.down_set(x).count_ones(..),
                    p.up_set(x).count_ones(..),
                    p.lower_covers(x).len(),
                    p.upper_covers(x).len(),
                    h[x],
                )
            })
            .collect()
    };
    let mut table = BTreeMap::new();
    let ia = init(a);
    let ib = init(b);
    for k in ia.iter().chain(ib.iter()) {
        let next = table.len();
        table.entry(*k).or_insert(next);
    }
    let mut ca: Vec<usize> = ia.iter().map(|k| table[k]).collect();
    let mut cb: Vec<usize> = ib.iter().map(|k| table[k]).collect();
    let mut classes = table.len();
    loop {
        let sig = |p: &Poset, c: &[usize], x: usize| -> Signature {
            let mut lo: Vec<usize> = p.lower_covers(x).iter().map(|&y| c[y]).collect();
            let mut hi: Vec<usize> = p.upper_covers(x).iter().map(|&y| c[y]).collect();
            lo.sort_unstable();
            hi.sort_unstable();
            (c[x], lo, hi)
        };
        let sa: Vec<Signature> = (0..a.len()).map(|x| sig(a, &ca, x)).collect();
        let sb: Vec<Signature> = (0..b.len()).map(|x| sig(b, &cb, x)).collect();
        let mut t: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let next = t.len();
            t.entry(s).or_insert(next);
        }
        let na: Vec<usize> = sa.iter().map(|s| t[s]).collect();
        let nb: Vec<usize> = sb.iter().map(|s| t[s]).collect();
        let stable = t.len() == classes;
        classes = t.len();
        ca = na;
        cb = nb;
        if stable {
            return (ca, cb);
        }
    }
}

/// Finds an isomorphism `f` with `a.leq(x, y) == b.leq(f[x], f[y])`.
///
/// `Ok(None)` means the posets are not isomorphic; `BudgetExceeded` means the
/// search stopped without a decision.
pub fn find_isomorphism(a: &Poset, b: &Poset, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = a.len();
    if n != b.len() || a.relation_count() != b.relation_count() || a.cover_count() != b.cover_count() {
        return Ok(None);
    }
    let (ca, cb) = refine(a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return Ok(None);
    }
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (y, &c) in cb.iter().enumerate() {
        by_colour.entry(c).or_default().push(y);
    }
    // Small colour classes first, then along a linear extension.
    let mut order: Vec<usize> = a.linear_extension().to_vec();
    order.sort_by_key(|&x| by_colour[&ca[x]].len());

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut steps = 0u64;
    let found = search(a, b, &order, 0, &ca, &by_colour, &mut map, &mut used, &mut steps, budget)?;
    Ok(found.then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &Poset,
    b: &Poset,
    order: &[usize],
    depth: usize,
    ca: &[usize],
    by_colour: &BTreeMap<usize, Vec<usize>>,
    map: &mut [usize],
    used: &mut [bool],
    steps: &mut u64,
    budget: u64,
) -> Result<bool> {
    if depth == order.len() {
        return Ok(true);
    }
    let x = order[depth];
    for &y in &by_colour[&ca[x]] {
        if used[y] {
            continue;
        }
        *steps += 1;
        if *steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let consistent = order[..depth].iter().all(|&z| {
            let w = map[z];
            a.leq(z, x) == b.leq(w, y) && a.leq(x, z) == b.leq(y, w)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if search(a, b, order, depth + 1, ca, by_colour, map, used, steps, budget)? {
            return Ok(true);
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    Ok(false)
}

pub fn is_isomorphic(a: &Poset, b: &Poset, budget: u64) -> Result<bool> {
    Ok(find_isomorphism(a, b, budget)?.is_some())
}

/// Checks that `f` is an order isomorphism from `a` onto `b`.
pub fn is_isomorphism(a: &Poset, b: &Poset, f: &[usize]) -> bool {
    if a.len() != b.len() || f.len() != a.len() {
        return false;
    }
    let mut seen = vec![false; b.len()];
    for &y in f {
        if y >= b.len() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..a.len()).all(|x| (0..a.len()).all(|y| a.leq(x, y) == b.leq(f[x], f[y])))
}
