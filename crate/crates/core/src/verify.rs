//! Verification suites. Every suite emits one row per instance, in a fixed
//! grid order, to a caller-supplied sink and also returns the rows.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::completion::{verify_theorem_mtamari, CompletionReport};
use crate::count::{binomial, fuss_catalan};
use crate::dyck::{enumerate_mdyck, mtamari, predicted_join_irreducibles, predicted_meet_irreducibles};
use crate::error::Result;
use crate::generate::{bounded_posets, path_poset_family};
use crate::iso::{is_isomorphic, DEFAULT_BUDGET};
use crate::mcover::{
    extremality_condition, hasse_minus_bottom_is_rooted_tree, mcover, meet_condition,
    predicted_join_irreducibles as mc_join_irr, predicted_meet_irreducibles as mc_meet_irr, predicted_size,
    trim_mobius_check, MCover,
};
use crate::path::{cover_statistics, is_path_poset_shape, p_kl, p_klp, predicted_cover_statistic, NePath, Step};
use crate::poset::Poset;
use crate::strip::{
    bounce, count_increasing_fans_formula, counterexample_checks, dominance_leq, is_rotation_multichain, enumerate_increasing_fans, is_increasing_fan,
    is_valid_delta_fan, strip_compose, strip_decompose, verify_conjecture, BounceOrder, ConjectureReport,
};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRow {
    pub suite: String,
    pub instance: String,
    pub passed: bool,
    pub detail: String,
}

pub type Sink<'a> = &'a mut dyn FnMut(&CheckRow);

struct Emitter<'a, 'b> {
    suite: &'static str,
    rows: Vec<CheckRow>,
    sink: &'a mut Option<Sink<'b>>,
}

impl Emitter<'_, '_> {
    fn emit(&mut self, instance: String, passed: bool, detail: String) {
        let row = CheckRow { suite: self.suite.to_string(), instance, passed, detail };
        if let Some(s) = self.sink.as_mut() {
            s(&row);
        }
        self.rows.push(row);
    }
}

fn describe(p: &Poset) -> String {
    let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    format!("n={} [{}]", p.len(), covers.join(" "))
}

fn tuples(c: &MCover, idx: Vec<usize>) -> BTreeSet<Vec<usize>> {
    idx.into_iter().map(|i| c.elements[i].clone()).collect()
}

/// Cardinality, length, irreducibles and the extremality criterion of `P⟨m⟩`.
pub fn cardinality(max_size: usize, ms: &[usize], mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "cardinality", rows: Vec::new(), sink: &mut sink };
    for p in bounded_posets(max_size) {
        for &m in ms {
            let c = mcover(&p, m)?;
            let size_ok = c.len() as u128 == predicted_size(&p, m)?;
            let len_ok = c.poset.length() == m * p.length();
            let j_ok = tuples(&c, c.poset.join_irreducibles()) == mc_join_irr(&p, m)?;
            let m_ok = tuples(&c, c.poset.meet_irreducibles()) == mc_meet_irr(&p, m)?;
            // The extremality criterion only speaks about extremal lattices.
            let ext_ok = if p.is_lattice() && p.is_extremal()? && m >= 2 {
                c.poset.has_extremal_counts() == extremality_condition(&p)?
            } else {
                true
            };
            e.emit(
                format!("{} m={m}", describe(&p)),
                size_ok && len_ok && j_ok && m_ok && ext_ok,
                format!("size={} length={} size_ok={size_ok} length_ok={len_ok} J_ok={j_ok} M_ok={m_ok} extremal_ok={ext_ok}", c.len(), c.poset.length()),
            );
        }
    }
    Ok(e.rows)
}

/// Meets of `P⟨m⟩` agree with componentwise meets of `P`.
fn meets_componentwise(p: &Poset, c: &MCover) -> bool {
    (0..c.len()).all(|a| {
        (0..c.len()).all(|b| {
            let z = c.poset.meet(a, b).expect("lattice");
            c.elements[a].iter().zip(&c.elements[b]).map(|(&x, &y)| p.meet(x, y)).collect::<Option<Vec<_>>>().as_ref()
                == Some(&c.elements[z])
        })
    })
}

/// `P⟨m⟩` is a lattice ⟺ meet condition ⟺ tree criterion, on every bounded
/// poset with `2..=max_size` elements.
pub fn theorem_lattice(max_size: usize, ms: &[usize], sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let family: Vec<(String, Poset)> =
        bounded_posets(max_size).into_iter().filter(|p| p.len() >= 2).map(|p| (describe(&p), p)).collect();
    theorem_lattice_on(&family, ms, sink)
}

/// The lattice criteria on a given list of bounded posets with at least two elements.
pub fn theorem_lattice_on(family: &[(String, Poset)], ms: &[usize], mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "theorem-1.1", rows: Vec::new(), sink: &mut sink };
    for (name, p) in family {
        let tree = hasse_minus_bottom_is_rooted_tree(p)?;
        let meet = meet_condition(p);
        let mut lattice = Vec::new();
        let mut componentwise = true;
        for &m in ms {
            let c = mcover(p, m)?;
            let l = c.poset.is_lattice();
            if l {
                componentwise &= meets_componentwise(p, &c);
            }
            lattice.push(l);
        }
        let all_same = lattice.iter().all(|&l| l == tree) && meet == tree;
        e.emit(
            name.clone(),
            all_same && componentwise,
            format!("tree={tree} meet_condition={meet} lattice={lattice:?} componentwise_meets={componentwise}"),
        );
    }
    Ok(e.rows)
}

/// `P` is a chain or isomorphic to `P_{k,1;N^s}`.
pub fn is_trim_shape(p: &Poset) -> Result<bool> {
    if p.length() + 1 == p.len() {
        return Ok(true);
    }
    if p.len() < 3 {
        return Ok(false);
    }
    for k in 0..=p.len() - 3 {
        let w = NePath(vec![Step::N; p.len() - 3 - k]);
        if is_isomorphic(p, &p_klp(k, 1, &w)?, DEFAULT_BUDGET)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `P` is a chain or isomorphic to `P_{k,1}`: the shapes whose m-covers are
/// observed to be trim.
pub fn is_chain_or_p_k1(p: &Poset) -> Result<bool> {
    if p.length() + 1 == p.len() {
        return Ok(true);
    }
    if p.len() < 3 {
        return Ok(false);
    }
    is_isomorphic(p, &p_kl(p.len() - 3, 1), DEFAULT_BUDGET)
}

/// Oracle for the path-poset shape: isomorphic to some generated `P_{k,l;w}`.
pub fn is_path_poset_by_search(p: &Poset) -> Result<bool> {
    let n = p.len();
    for k in 0..n.saturating_sub(1) {
        for l in 0..n.saturating_sub(1) - k {
            let len = n - 2 - k - l;
            for w in NePath::all_of_length(len).into_iter().filter(|w| w.0.first() != Some(&Step::E)) {
                if is_isomorphic(p, &p_klp(k, l, &w)?, DEFAULT_BUDGET)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The tree-criterion family: generated path posets plus every bounded poset
/// with at most `max_size` elements whose Hasse diagram minus `0̂` is a tree.
pub fn tree_family(k_max: usize, l_max: usize, w_max: usize, max_size: usize) -> Result<Vec<(String, Poset)>> {
    let mut out: Vec<(String, Poset)> = path_poset_family(k_max, l_max, w_max)
        .into_iter()
        .map(|(k, l, w, p)| (format!("P_{{{k},{l};{w}}}"), p))
        .collect();
    for p in bounded_posets(max_size).into_iter().filter(|p| p.len() >= 2) {
        if hasse_minus_bottom_is_rooted_tree(&p)? {
            out.push((describe(&p), p));
        }
    }
    Ok(out)
}

/// (2+2)-free ⟺ path-poset shape ⟺ `P⟨m⟩` left-modular.
pub fn theorem_left_modular(
    family: &[(String, Poset)],
    ms: &[usize],
    mut sink: Option<Sink>,
) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "theorem-1.2", rows: Vec::new(), sink: &mut sink };
    for (name, p) in family {
        let free = p.is_two_plus_two_free();
        let shape = is_path_poset_shape(p)?;
        let mut lm = Vec::new();
        for &m in ms {
            lm.push(mcover(p, m)?.poset.is_left_modular()?);
        }
        let ok = free == shape && lm.iter().all(|&x| x == shape);
        e.emit(name.clone(), ok, format!("two_plus_two_free={free} path_shape={shape} left_modular={lm:?}"));
    }
    Ok(e.rows)
}

/// `P⟨m⟩` trim ⟺ `P` is a chain or `P_{k,1;N^s}`; Möbius rule on trim instances.
pub fn theorem_trim(family: &[(String, Poset)], ms: &[usize], mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "theorem-1.3", rows: Vec::new(), sink: &mut sink };
    for (name, p) in family {
        let shape = is_trim_shape(p)?;
        let observed = is_chain_or_p_k1(p)?;
        for &m in ms {
            let c = mcover(p, m)?;
            let trim = c.poset.is_trim()?;
            let (mobius_ok, checked) = if trim {
                let r = trim_mobius_check(&c.poset)?;
                (r.mismatches.is_empty(), r.pairs_checked)
            } else {
                (true, 0)
            };
            e.emit(
                format!("{name} m={m}"),
                trim == shape && mobius_ok,
                format!(
                    "trim={trim} trim_shape={shape} chain_or_p_k1={observed} mobius_pairs={checked} mobius_ok={mobius_ok}"
                ),
            );
        }
    }
    Ok(e.rows)
}

/// Cover statistics of `P_{k,l}⟨m⟩` against the closed form.
pub fn cover_statistic_suite(ks: &[usize], ls: &[usize], ms: &[usize], mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "cover-statistic", rows: Vec::new(), sink: &mut sink };
    for &k in ks {
        for &l in ls {
            for &m in ms {
                let s = cover_statistics(&mcover(&p_kl(k, l), m)?.poset);
                let pred = predicted_cover_statistic(k, l, m)?;
                e.emit(
                    format!("P_{{{k},{l}}} m={m}"),
                    s.upper == pred && s.lower == pred,
                    format!("upper={:?} lower={:?} predicted={pred:?}", s.upper, s.lower),
                );
            }
        }
    }
    Ok(e.rows)
}

/// Path counts, irreducible predictions and counts of `T_n^(m)`.
pub fn tamari_structure(n_max: usize, m_max: usize, irr_m_max: usize, mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "tamari", rows: Vec::new(), sink: &mut sink };
    for n in 1..=n_max {
        for m in 1..=m_max {
            let count = enumerate_mdyck(n, m)?.len() as u128;
            let fc = fuss_catalan(n as u64, m as u64);
            let mut ok = count == fc;
            let mut detail = format!("paths={count} fuss_catalan={fc}");
            if m <= irr_m_max {
                let t = mtamari(n, m)?;
                let j: BTreeSet<Vec<usize>> =
                    t.poset.join_irreducibles().into_iter().map(|x| t.paths[x].steps().to_vec()).collect();
                let mi: BTreeSet<Vec<usize>> =
                    t.poset.meet_irreducibles().into_iter().map(|x| t.paths[x].steps().to_vec()).collect();
                let expected = m as u128 * binomial(n as u64, 2);
                let sets_ok = j == predicted_join_irreducibles(n, m) && mi == predicted_meet_irreducibles(n, m);
                let counts_ok = j.len() as u128 == expected && mi.len() as u128 == expected;
                ok &= sets_ok && counts_ok && t.poset.is_lattice();
                detail.push_str(&format!(" J={} M={} expected={expected} sets_ok={sets_ok}", j.len(), mi.len()));
            }
            e.emit(format!("n={n} m={m}"), ok, detail);
        }
    }
    Ok(e.rows)
}

/// `DM(T_n⟨m⟩) ≅ T_n^(m)` for each pair.
pub fn theorem_mtamari(pairs: &[(usize, usize)], budget: u64, mut sink: Option<Sink>) -> Result<Vec<CompletionReport>> {
    let mut e = Emitter { suite: "theorem-1.4", rows: Vec::new(), sink: &mut sink };
    let mut reports = Vec::new();
    for &(n, m) in pairs {
        let r = verify_theorem_mtamari(n, m, budget)?;
        e.emit(
            format!("n={n} m={m}"),
            r.passed(),
            format!("input={} completed={} expected={} isomorphic={}", r.input_size, r.completed_size, r.expected_size, r.isomorphic),
        );
        reports.push(r);
    }
    Ok(reports)
}

/// Round trip of the strip decomposition, image characterization and fan counts.
pub fn strip_suite(n_max: usize, m_max: usize, image_n_max: usize, image_m_max: usize, mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "strip", rows: Vec::new(), sink: &mut sink };
    for n in 1..=n_max {
        for m in 1..=m_max {
            let paths = enumerate_mdyck(n, m)?;
            let mut round_trip = true;
            let mut increasing = true;
            let mut images = BTreeSet::new();
            for p in &paths {
                let f = strip_decompose(p);
                increasing &= is_increasing_fan(&f);
                round_trip &= strip_compose(&f).as_ref() == Ok(p);
                images.insert(f);
            }
            let mut ok = round_trip && increasing;
            let mut detail = format!("paths={} round_trip={round_trip} increasing={increasing}", paths.len());
            if n <= image_n_max && m <= image_m_max {
                let fans = enumerate_increasing_fans(n, m)?;
                let valid: BTreeSet<_> = fans.iter().filter(|f| is_valid_delta_fan(f)).cloned().collect();
                let formula = count_increasing_fans_formula(n, m);
                let image_ok = valid == images;
                let count_ok = fans.len() as u128 == formula;
                ok &= image_ok && count_ok;
                detail.push_str(&format!(" fans={} formula={formula} image_ok={image_ok}", fans.len()));
            }
            e.emit(format!("n={n} m={m}"), ok, detail);
        }
    }
    Ok(e.rows)
}

/// `δ` maps rotation order into componentwise dominance and `ζ` lands in
/// rotation multichains. For `m = 2`, whether `β∘β = β` on `δ`-images is
/// reported without being asserted.
pub fn bounce_suite(n_max: usize, m_max: usize, mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "bounce", rows: Vec::new(), sink: &mut sink };
    for n in 1..=n_max {
        let tn = mtamari(n, 1)?;
        for m in 1..=m_max {
            let tm = mtamari(n, m)?;
            let fans: Vec<_> = tm.paths.iter().map(strip_decompose).collect();
            let mut monotone = true;
            for (a, b) in tm.poset.covers() {
                for (x, y) in fans[a].0.iter().zip(&fans[b].0) {
                    monotone &= dominance_leq(x, y)?;
                }
            }
            let mut multichain = true;
            let mut fixed = 0;
            for f in &fans {
                let b = bounce(&tn, f, BounceOrder::Standard)?;
                multichain &= is_rotation_multichain(&tn, &b)?;
                fixed += usize::from(bounce(&tn, &b, BounceOrder::Standard)? == b);
            }
            let mut detail = format!("paths={} delta_monotone={monotone} zeta_multichain={multichain}", fans.len());
            if m == 2 {
                detail.push_str(&format!(" idempotent={fixed}/{}", fans.len()));
            }
            e.emit(format!("n={n} m={m}"), monotone && multichain, detail);
        }
    }
    Ok(e.rows)
}

/// The conjecture grid `1..=n_max` × `1..=m_max`, in row-major order.
pub fn conjecture_grid(
    n_max: usize,
    m_max: usize,
    order: BounceOrder,
    report: &mut dyn FnMut(&ConjectureReport),
) -> Result<Vec<ConjectureReport>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=m_max {
            let r = verify_conjecture(n, m, order)?;
            report(&r);
            out.push(r);
        }
    }
    Ok(out)
}

pub fn counterexamples(mut sink: Option<Sink>) -> Result<Vec<CheckRow>> {
    let mut e = Emitter { suite: "counterexamples", rows: Vec::new(), sink: &mut sink };
    for c in counterexample_checks()? {
        e.emit(c.name.to_string(), c.confirmed, c.detail);
    }
    Ok(e.rows)
}
