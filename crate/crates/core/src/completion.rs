//! Dedekind-MacNeille completion and the m-Tamari comparison built on it.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::count::fuss_catalan;
use crate::dyck::{mtamari, tmn_size_formula};
use crate::error::Result;
use crate::iso::find_isomorphism;
use crate::mcover::mcover;
use crate::poset::Poset;

/// `A^u`: common upper bounds; the whole ground set when `A` is empty.
pub fn upper_bounds(p: &Poset, a: &FixedBitSet) -> FixedBitSet {
    let mut u = FixedBitSet::with_capacity(p.len());
    u.insert_range(..);
    for x in a.ones() {
        u.intersect_with(p.up_set(x));
    }
    u
}

/// `A^l`: common lower bounds; the whole ground set when `A` is empty.
pub fn lower_bounds(p: &Poset, a: &FixedBitSet) -> FixedBitSet {
    let mut l = FixedBitSet::with_capacity(p.len());
    l.insert_range(..);
    for x in a.ones() {
        l.intersect_with(p.down_set(x));
    }
    l
}

/// `A^{ul}`.
pub fn closure(p: &Poset, a: &FixedBitSet) -> FixedBitSet {
    lower_bounds(p, &upper_bounds(p, a))
}

/// The lattice of cuts `A = A^{ul}` ordered by inclusion.
#[derive(Clone, Debug)]
pub struct Completion {
    pub lattice: Poset,
    pub cuts: Vec<FixedBitSet>,
    /// `embedding[x]` is the index of the cut `↓x`.
    pub embedding: Vec<usize>,
}

impl Completion {
    /// Indices of cuts that are not principal ideals.
    pub fn added(&self) -> Vec<usize> {
        let principal: BTreeSet<usize> = self.embedding.iter().copied().collect();
        (0..self.cuts.len()).filter(|i| !principal.contains(i)).collect()
    }
}

/// Every cut is an intersection of principal ideals (the empty intersection
/// being the ground set), so the cuts are the intersection-closure of them.
pub fn dm_completion(p: &Poset) -> Completion {
    let n = p.len();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut cuts: BTreeSet<FixedBitSet> = BTreeSet::new();
    cuts.insert(all);
    for x in 0..n {
        let g = p.down_set(x);
        let fresh: Vec<FixedBitSet> = cuts
            .iter()
            .map(|c| {
                let mut d = c.clone();
                d.intersect_with(g);
                d
            })
            .collect();
        cuts.extend(fresh);
    }
    let mut cuts: Vec<FixedBitSet> = cuts.into_iter().collect();
    cuts.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
    let embedding: Vec<usize> = (0..n)
        .map(|x| cuts.binary_search_by(|c| {
            let d = p.down_set(x);
            c.count_ones(..).cmp(&d.count_ones(..)).then_with(|| c.cmp(d))
        }).expect("principal ideals are cuts"))
        .collect();
    let lattice = Poset::from_leq_fn(cuts.len(), |i, j| cuts[i].is_subset(&cuts[j])).expect("inclusion order");
    let labels = cuts
        .iter()
        .enumerate()
        .map(|(i, c)| match embedding.iter().position(|&e| e == i) {
            Some(x) => p.label(x),
            None => {
                let sub = p.induced(&c.ones().collect::<Vec<_>>());
                let tops: Vec<String> =
                    sub.maximal_elements().into_iter().map(|k| sub.label(k)).collect();
                format!("{{{}}}", tops.join(";"))
            }
        })
        .collect();
    let lattice = lattice.with_labels(labels).expect("one label per cut");
    Completion { lattice, cuts, embedding }
}

/// Outcome of comparing `DM(T_n⟨m⟩)` with `T_n^(m)`.
#[derive(Clone, Debug, Serialize)]
pub struct CompletionReport {
    pub n: usize,
    pub m: usize,
    pub input_size: usize,
    pub completed_size: usize,
    pub isomorphic: bool,
    /// Each added cut, named by the componentwise meet in `T_n^m` of its upper bounds.
    pub added_cuts: Vec<Vec<Vec<usize>>>,
    pub expected_size: u128,
    pub size_formula_holds: bool,
    pub join_irreducibles_isomorphic: bool,
    pub meet_irreducibles_isomorphic: bool,
    pub irreducibles_isomorphic: bool,
    pub join_irreducibles_join_dense: bool,
    pub meet_irreducibles_meet_dense: bool,
    #[serde(skip)]
    pub witness: Option<Vec<usize>>,
}

impl CompletionReport {
    /// All checked statements hold.
    pub fn passed(&self) -> bool {
        self.isomorphic
            && self.completed_size as u128 == self.expected_size
            && self.size_formula_holds
            && self.join_irreducibles_isomorphic
            && self.meet_irreducibles_isomorphic
            && self.irreducibles_isomorphic
            && self.join_irreducibles_join_dense
            && self.meet_irreducibles_meet_dense
    }
}

fn union_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

/// Builds `T_n⟨m⟩`, completes it and compares with `T_n^(m)`.
pub fn verify_theorem_mtamari(n: usize, m: usize, budget: u64) -> Result<CompletionReport> {
    let tn = mtamari(n, 1)?;
    let cover = mcover(&tn.poset, m)?;
    let target = mtamari(n, m)?;
    let dm = dm_completion(&cover.poset);
    let witness = find_isomorphism(&dm.lattice, &target.poset, budget)?;

    let added_cuts = dm
        .added()
        .into_iter()
        .map(|c| {
            let ub: Vec<usize> = upper_bounds(&cover.poset, &dm.cuts[c]).ones().collect();
            (0..m)
                .map(|i| {
                    let coords: Vec<usize> = ub.iter().map(|&x| cover.elements[x][i]).collect();
                    let z = tn.poset.meet_of(&coords).expect("Tamari lattice");
                    tn.paths[z].steps().to_vec()
                })
                .collect()
        })
        .collect();

    let (jc, mc) = (cover.poset.join_irreducibles(), cover.poset.meet_irreducibles());
    let (jt, mt) = (target.poset.join_irreducibles(), target.poset.meet_irreducibles());
    let iso = |a: &[usize], b: &[usize]| -> Result<bool> {
        Ok(find_isomorphism(&cover.poset.induced(a), &target.poset.induced(b), budget)?.is_some())
    };
    Ok(CompletionReport {
        n,
        m,
        input_size: cover.len(),
        completed_size: dm.cuts.len(),
        isomorphic: witness.is_some(),
        added_cuts,
        expected_size: fuss_catalan(n as u64, m as u64),
        size_formula_holds: tmn_size_formula(n, m) == cover.len() as i128,
        join_irreducibles_isomorphic: iso(&jc, &jt)?,
        meet_irreducibles_isomorphic: iso(&mc, &mt)?,
        irreducibles_isomorphic: iso(&union_sorted(&jc, &mc), &union_sorted(&jt, &mt))?,
        join_irreducibles_join_dense: cover.poset.is_join_dense(&jc),
        meet_irreducibles_meet_dense: cover.poset.is_meet_dense(&mc),
        witness,
    })
}
