//! Subfactors and subindices on finite groups.
//!
//! A right subfactor of `G` relative to `A` is an inclusion-maximal `B` with
//! `AB` direct; equivalently `A⁻¹A ∩ BB⁻¹ = {1}` and `A⁻¹AB = G`. Every
//! right subfactor translates to one containing the identity, and those are
//! `{1} ∪ K` for the maximal cliques `K` of the graph on `C(A) = G ∖ A⁻¹A`
//! with `x ~ y ⟺ xy⁻¹ ∈ C(A)`. Left subfactors are right subfactors in the
//! opposite group.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bits::BitSet;
use crate::clique;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSubset};
use crate::setcalc::{complement_c, dif};
use crate::types::Side;

/// Largest order for which subfactor families are enumerated.
pub const ENUMERATION_CAP: usize = 512;
/// Witnesses kept per extreme size.
pub const WITNESS_CAP: usize = 64;
/// Largest family kept in `SubfactorReport::subf1`.
pub const SUBF1_LIST_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RsfaMode {
    All,
    FirstMin,
    FirstMax,
}

impl std::str::FromStr for RsfaMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(RsfaMode::All),
            "first_min" => Ok(RsfaMode::FirstMin),
            "first_max" => Ok(RsfaMode::FirstMax),
            _ => Err(format!("unknown rsfa mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubfactorReport {
    pub side: Side,
    pub lower: usize,
    pub upper: usize,
    pub stable: bool,
    pub witnesses_min: Vec<GroupSubset>,
    pub witnesses_max: Vec<GroupSubset>,
    /// `|B| - 1` over the maximal sets found; complete in `All` mode.
    pub rsfa_numbers: BTreeSet<usize>,
    /// Every subfactor containing the identity, when small enough to list.
    pub subf1: Option<Vec<GroupSubset>>,
}

/// The group the right engine should run on for `side`.
fn oriented(g: &FiniteGroup, side: Side) -> std::borrow::Cow<'_, FiniteGroup> {
    match side {
        Side::Right => std::borrow::Cow::Borrowed(g),
        Side::Left => std::borrow::Cow::Owned(g.opposite()),
    }
}

fn check_inputs(g: &FiniteGroup, a: &GroupSubset) -> Result<()> {
    g.check_subset(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if g.order() > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "group order",
            value: g.order(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// `A⁻¹A ∩ BB⁻¹ = {1}` and `A⁻¹AB = G` (right); mirrored for left.
pub fn is_subfactor(g: &FiniteGroup, a: &GroupSubset, b: &GroupSubset, side: Side) -> bool {
    let g = oriented(g, side);
    let d = dif(&g, a, Side::Left);
    let bb = dif(&g, b, Side::Right);
    d.intersection(&bb) == g.identity_set() && g.product_set(&d, b) == g.whole()
}

/// Compatibility graph on `C(A) ∖ {1}` for the right engine.
struct CliqueGraph {
    verts: BitSet,
    adj: Vec<BitSet>,
}

impl CliqueGraph {
    fn new(g: &FiniteGroup, a: &GroupSubset) -> Self {
        let n = g.order();
        let c = complement_c(g, a, Side::Left, false);
        let mut verts = c.bits().clone();
        verts.remove(0);
        let mut adj = vec![BitSet::new(n); n];
        let vs = verts.to_vec();
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                // C(A) is inverse-closed, so one test covers both orders.
                if c.contains(g.mul(x, g.inv(y))) {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
        }
        CliqueGraph { verts, adj }
    }
}

/// Keeps the lexicographically smallest sets of the extreme size seen so far.
struct Extreme {
    want_min: bool,
    size: Option<usize>,
    sets: Vec<Vec<usize>>,
}

impl Extreme {
    fn new(want_min: bool) -> Self {
        Extreme {
            want_min,
            size: None,
            sets: Vec::new(),
        }
    }

    fn offer(&mut self, set: &[usize]) {
        let k = set.len();
        match self.size {
            Some(s) if s == k => {}
            Some(s) if (k < s) != self.want_min => return,
            _ => {
                self.size = Some(k);
                self.sets.clear();
            }
        }
        let mut v = set.to_vec();
        v.sort_unstable();
        if let Err(pos) = self.sets.binary_search(&v) {
            if pos < WITNESS_CAP {
                self.sets.insert(pos, v);
                self.sets.truncate(WITNESS_CAP);
            }
        }
    }

    fn into_subsets(self, n: usize) -> Vec<GroupSubset> {
        self.sets
            .into_iter()
            .map(|v| GroupSubset::from_elems(n, &v).expect("in range"))
            .collect()
    }
}

fn finish_report(
    g: &FiniteGroup,
    a: &GroupSubset,
    side: Side,
    mins: Extreme,
    maxs: Extreme,
    rsfa_numbers: BTreeSet<usize>,
    subf1: Option<Vec<GroupSubset>>,
) -> SubfactorReport {
    let n = g.order();
    let lower = mins.size.expect("at least one subfactor");
    let upper = maxs.size.expect("at least one subfactor");
    let witnesses_min = mins.into_subsets(n);
    let witnesses_max = maxs.into_subsets(n);
    for b in witnesses_min.iter().chain(&witnesses_max) {
        assert!(is_subfactor(g, a, b, side), "emitted witness {b} fails the subfactor test");
    }
    SubfactorReport {
        side,
        lower,
        upper,
        stable: lower == upper,
        witnesses_min,
        witnesses_max,
        rsfa_numbers,
        subf1,
    }
}

/// All subfactors containing the identity, sorted lexicographically.
pub fn enumerate_subf1(g: &FiniteGroup, a: &GroupSubset, side: Side) -> Result<Vec<GroupSubset>> {
    check_inputs(g, a)?;
    let og = oriented(g, side);
    let n = g.order();
    let cg = CliqueGraph::new(&og, a);
    let mut out = Vec::new();
    clique::for_each_maximal_clique(&cg.adj, &[0], cg.verts.clone(), &mut |k| {
        out.push(GroupSubset::from_elems(n, k).expect("in range"));
        true
    });
    out.sort_by(|x, y| x.lex_cmp(y));
    for b in &out {
        debug_assert!(is_subfactor(g, a, b, side));
    }
    Ok(out)
}

/// Full report from the clique engine.
pub fn analyze(g: &FiniteGroup, a: &GroupSubset, side: Side) -> Result<SubfactorReport> {
    check_inputs(g, a)?;
    let og = oriented(g, side);
    let n = g.order();
    let cg = CliqueGraph::new(&og, a);
    let mut mins = Extreme::new(true);
    let mut maxs = Extreme::new(false);
    let mut sizes = BTreeSet::new();
    let mut all: Option<Vec<GroupSubset>> = Some(Vec::new());
    clique::for_each_maximal_clique(&cg.adj, &[0], cg.verts.clone(), &mut |k| {
        mins.offer(k);
        maxs.offer(k);
        sizes.insert(k.len() - 1);
        if let Some(list) = all.as_mut() {
            if list.len() < SUBF1_LIST_CAP {
                list.push(GroupSubset::from_elems(n, k).expect("in range"));
            } else {
                all = None;
            }
        }
        true
    });
    if let Some(list) = all.as_mut() {
        list.sort_by(|x, y| x.lex_cmp(y));
    }
    Ok(finish_report(g, a, side, mins, maxs, sizes, all))
}

/// `(lower, upper)` without building witnesses; the fast path for classification.
///
/// Upper is a maximum clique; lower is the smallest maximal clique via
/// Bron–Kerbosch pruned at the best size found.
pub fn index_pair(g: &FiniteGroup, a: &GroupSubset, side: Side) -> Result<(usize, usize)> {
    check_inputs(g, a)?;
    let og = oriented(g, side);
    Ok(index_pair_right(&og, a))
}

pub(crate) fn index_pair_right(g: &FiniteGroup, a: &GroupSubset) -> (usize, usize) {
    let cg = CliqueGraph::new(g, a);
    let upper = clique::max_clique(&cg.adj, &cg.verts).len() + 1;
    let mut best = upper;
    min_maximal(&cg.adj, 1, cg.verts.clone(), BitSet::new(g.order()), &mut best);
    (best, upper)
}

fn min_maximal(adj: &[BitSet], r: usize, mut p: BitSet, mut x: BitSet, best: &mut usize) {
    if p.is_empty() {
        if x.is_empty() && r < *best {
            *best = r;
        }
        return;
    }
    if r + 1 >= *best {
        return;
    }
    let pu = p.union(&x);
    let pivot = pu
        .iter()
        .max_by_key(|&u| p.intersection_count(&adj[u]))
        .expect("nonempty");
    for v in p.difference(&adj[pivot]).iter() {
        min_maximal(adj, r + 1, p.intersection(&adj[v]), x.intersection(&adj[v]), best);
        p.remove(v);
        x.insert(v);
    }
}

/// Right and left reports for `A` (clique engine).
pub fn subindices(g: &FiniteGroup, a: &GroupSubset) -> Result<(SubfactorReport, SubfactorReport)> {
    Ok((analyze(g, a, Side::Right)?, analyze(g, a, Side::Left)?))
}

/// The four subindices `(|G:A|^-, |G:A|^+, |G:A|_-, |G:A|_+)`.
pub fn four_indices(g: &FiniteGroup, a: &GroupSubset) -> Result<[usize; 4]> {
    let (rl, ru) = index_pair(g, a, Side::Right)?;
    let (ll, lu) = index_pair(g, a, Side::Left)?;
    Ok([rl, ru, ll, lu])
}

/// The sequential branch tree: picks `g₀ = 1 < g₁ < …` outside `A⁻¹A{g₀,…,gₙ}`
/// until that union is `G`.
pub fn rsfa(g: &FiniteGroup, a: &GroupSubset, side: Side, mode: RsfaMode) -> Result<SubfactorReport> {
    check_inputs(g, a)?;
    let og = oriented(g, side);
    let tree = Tree::new(&og, a);
    let mut mins = Extreme::new(true);
    let mut maxs = Extreme::new(false);
    let mut sizes = BTreeSet::new();
    match mode {
        RsfaMode::All => {
            let mut found = Vec::new();
            tree.all(&mut vec![0], tree.cover(0), &mut found);
            let lists: Vec<Vec<usize>> = if tree.inverse_pruning {
                let mut both: BTreeSet<Vec<usize>> = BTreeSet::new();
                for b in found {
                    let mut inv: Vec<usize> = b.iter().map(|&x| og.inv(x)).collect();
                    inv.sort_unstable();
                    both.insert(b);
                    both.insert(inv);
                }
                both.into_iter().collect()
            } else {
                found
            };
            for b in &lists {
                mins.offer(b);
                maxs.offer(b);
                sizes.insert(b.len() - 1);
            }
        }
        RsfaMode::FirstMin | RsfaMode::FirstMax => {
            let lo = tree.first_min();
            let hi = tree.first_max();
            for b in lo.iter() {
                mins.offer(b);
            }
            maxs.offer(&hi);
            sizes.insert(lo[0].len() - 1);
            sizes.insert(hi.len() - 1);
        }
    }
    Ok(finish_report(g, a, side, mins, maxs, sizes, None))
}

struct Tree<'g> {
    g: &'g FiniteGroup,
    d: Vec<usize>,
    n: usize,
    inverse_pruning: bool,
}

impl<'g> Tree<'g> {
    fn new(g: &'g FiniteGroup, a: &GroupSubset) -> Self {
        let dset = dif(g, a, Side::Left);
        let c = dset.complement();
        // With C(A) normal, B ↦ B⁻¹ permutes subfactors; skip first picks x with x⁻¹ < x.
        let inverse_pruning = g.is_normal_subset(&c);
        Tree {
            g,
            d: dset.to_vec(),
            n: g.order(),
            inverse_pruning,
        }
    }

    /// `A⁻¹A x`.
    fn cover(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.n, self.d.iter().map(|&d| self.g.mul(d, x)))
    }

    fn skip_first(&self, b: &[usize], x: usize) -> bool {
        self.inverse_pruning && b.len() == 1 && self.g.inv(x) < x
    }

    fn all(&self, b: &mut Vec<usize>, covered: BitSet, out: &mut Vec<Vec<usize>>) {
        let pool = covered.complement();
        if pool.is_empty() {
            out.push(b.clone());
            return;
        }
        let last = *b.last().unwrap();
        for x in pool.iter().filter(|&x| x > last) {
            if self.skip_first(b, x) {
                continue;
            }
            b.push(x);
            self.all(b, covered.union(&self.cover(x)), out);
            b.pop();
        }
    }

    /// Iterative deepening on `|B|`; returns every maximal set of the least size (capped).
    fn first_min(&self) -> Vec<Vec<usize>> {
        for k in 1..=self.n {
            let mut out = Vec::new();
            self.limited(&mut vec![0], self.cover(0), k, &mut out);
            if !out.is_empty() {
                return out;
            }
        }
        unreachable!("G itself bounds the search")
    }

    fn limited(&self, b: &mut Vec<usize>, covered: BitSet, k: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= WITNESS_CAP {
            return;
        }
        let pool = covered.complement();
        let left = pool.count();
        if left == 0 {
            if b.len() == k {
                out.push(b.clone());
            }
            return;
        }
        let room = k - b.len();
        // Each further pick covers at most |A⁻¹A| new elements.
        if room == 0 || room * self.d.len() < left {
            return;
        }
        let last = *b.last().unwrap();
        for x in pool.iter().filter(|&x| x > last) {
            if self.skip_first(b, x) {
                continue;
            }
            b.push(x);
            self.limited(b, covered.union(&self.cover(x)), k, out);
            b.pop();
        }
    }

    /// Branch and bound for a largest maximal set.
    fn first_max(&self) -> Vec<usize> {
        let mut best = Vec::new();
        self.bnb(&mut vec![0], self.cover(0), &mut best);
        best
    }

    fn bnb(&self, b: &mut Vec<usize>, covered: BitSet, best: &mut Vec<usize>) {
        let pool = covered.complement();
        if pool.is_empty() {
            if b.len() > best.len() {
                *best = b.clone();
            }
            return;
        }
        let last = *b.last().unwrap();
        let cands: Vec<usize> = pool.iter().filter(|&x| x > last).collect();
        if b.len() + cands.len() <= best.len() {
            return;
        }
        for (i, &x) in cands.iter().enumerate() {
            if b.len() + cands.len() - i <= best.len() {
                return;
            }
            if self.skip_first(b, x) {
                continue;
            }
            b.push(x);
            self.bnb(b, covered.union(&self.cover(x)), best);
            b.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    None,
    Translation,
    TranslationInversion,
}

impl std::str::FromStr for Reduction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Reduction::None),
            "translation" => Ok(Reduction::Translation),
            "translation+inversion" | "translation_inversion" => Ok(Reduction::TranslationInversion),
            _ => Err(format!("unknown reduction `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifyMode {
    Exhaustive,
    WitnessSearch,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub reduction: Reduction,
    /// Orders above this use witness search.
    pub exhaustive_limit: usize,
    /// Fail instead of falling back to witness search.
    pub require_exhaustive: bool,
    pub seed: u64,
    pub samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            reduction: Reduction::Translation,
            exhaustive_limit: 16,
            require_exhaustive: false,
            seed: 0,
            samples: 4000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub subset: GroupSubset,
    /// `[|G:A|^-, |G:A|^+, |G:A|_-, |G:A|_+]`.
    pub indices: [usize; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityVerdict {
    pub group: String,
    pub order: usize,
    pub mode: ClassifyMode,
    pub reduction: Reduction,
    pub right_stable: bool,
    pub left_stable: bool,
    pub two_sided_stable: bool,
    pub counterexample: Option<Counterexample>,
    pub index_spectrum: BTreeSet<usize>,
    pub subindex_spectrum: BTreeSet<usize>,
    pub subsets_examined: u64,
    /// Subsets whose four subindices are pairwise distinct.
    pub research_flags: Vec<GroupSubset>,
}

impl StabilityVerdict {
    pub fn label(&self) -> &'static str {
        match (self.two_sided_stable, self.mode) {
            (false, _) => "unstable",
            (true, ClassifyMode::Exhaustive) => "stable",
            (true, ClassifyMode::WitnessSearch) => "no_counterexample_found",
        }
    }
}

#[derive(Default)]
struct Tally {
    right_stable: bool,
    left_stable: bool,
    first_bad: Option<(u64, [usize; 4])>,
    index_spectrum: BTreeSet<usize>,
    subindex_spectrum: BTreeSet<usize>,
    examined: u64,
    flags: Vec<u64>,
}

impl Tally {
    fn empty() -> Self {
        Tally {
            right_stable: true,
            left_stable: true,
            ..Default::default()
        }
    }

    fn add(&mut self, key: u64, v: [usize; 4]) {
        self.examined += 1;
        self.right_stable &= v[0] == v[1];
        self.left_stable &= v[2] == v[3];
        self.subindex_spectrum.extend(v);
        if v.iter().all(|&x| x == v[0]) {
            self.index_spectrum.insert(v[0]);
        } else if self.first_bad.map_or(true, |(k, _)| key < k) {
            self.first_bad = Some((key, v));
        }
        let distinct: BTreeSet<usize> = v.into_iter().collect();
        if distinct.len() == 4 {
            self.flags.push(key);
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.right_stable &= o.right_stable;
        self.left_stable &= o.left_stable;
        self.first_bad = match (self.first_bad, o.first_bad) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self.index_spectrum.extend(o.index_spectrum);
        self.subindex_spectrum.extend(o.subindex_spectrum);
        self.examined += o.examined;
        self.flags.extend(o.flags);
        self
    }
}

/// Four subindices from the right engine on `G` and on `G^op`.
struct Evaluator {
    g: FiniteGroup,
    op: FiniteGroup,
}

impl Evaluator {
    fn four(&self, a: &GroupSubset) -> [usize; 4] {
        let (rl, ru) = index_pair_right(&self.g, a);
        let (ll, lu) = index_pair_right(&self.op, a);
        [rl, ru, ll, lu]
    }
}

/// Index-stability verdict for a whole group.
pub fn classify_group(g: &FiniteGroup, opts: &ClassifyOptions) -> Result<StabilityVerdict> {
    classify_group_with_progress(g, opts, &|_, _| {})
}

/// As [`classify_group`], calling `progress(done, total)` from worker threads.
pub fn classify_group_with_progress(
    g: &FiniteGroup,
    opts: &ClassifyOptions,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<StabilityVerdict> {
    let n = g.order();
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "group order",
            value: n,
            cap: ENUMERATION_CAP,
        });
    }
    let exhaustive = n <= opts.exhaustive_limit && n <= 24;
    if !exhaustive && opts.require_exhaustive {
        return Err(Error::CapExceeded {
            what: "group order for exhaustive classification",
            value: n,
            cap: opts.exhaustive_limit.min(24),
        });
    }
    let ev = Evaluator {
        g: g.clone(),
        op: g.opposite(),
    };
    let (tally, keyed) = if exhaustive {
        (exhaustive_tally(&ev, opts.reduction, progress)?, true)
    } else {
        (witness_tally(&ev, opts, progress), false)
    };
    let decode = |key: u64| -> GroupSubset {
        if keyed {
            subset_from_key(n, key, opts.reduction)
        } else {
            witness_pool(&ev.g, opts)[key as usize].clone()
        }
    };
    let mut flags = tally.flags.clone();
    flags.sort_unstable();
    flags.truncate(WITNESS_CAP);
    let counterexample = tally.first_bad.map(|(k, v)| Counterexample {
        subset: decode(k),
        indices: v,
    });
    Ok(StabilityVerdict {
        group: g.name().to_string(),
        order: n,
        mode: if keyed {
            ClassifyMode::Exhaustive
        } else {
            ClassifyMode::WitnessSearch
        },
        reduction: opts.reduction,
        right_stable: tally.right_stable,
        left_stable: tally.left_stable,
        two_sided_stable: counterexample.is_none(),
        counterexample,
        index_spectrum: tally.index_spectrum,
        subindex_spectrum: tally.subindex_spectrum,
        subsets_examined: tally.examined,
        research_flags: flags.into_iter().map(decode).collect(),
    })
}

fn subset_from_key(n: usize, key: u64, reduction: Reduction) -> GroupSubset {
    let mask = match reduction {
        Reduction::None => key,
        _ => (key << 1) | 1,
    };
    GroupSubset::from_bits(BitSet::from_mask(n, mask))
}

fn mask_of(a: &GroupSubset) -> u64 {
    a.bits().words().first().copied().unwrap_or(0)
}

fn exhaustive_tally(
    ev: &Evaluator,
    reduction: Reduction,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<Tally> {
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicU64, Ordering};

    let n = ev.g.order();
    let (start, total) = match reduction {
        Reduction::None => (1u64, 1u64 << n),
        _ => (0u64, 1u64 << (n - 1)),
    };
    let inversion = reduction == Reduction::TranslationInversion;
    if inversion && !inversion_swaps_sides(ev) {
        return Err(Error::InvalidDifference(
            "inversion reduction failed its self-check".into(),
        ));
    }
    let done = AtomicU64::new(0);
    const CHUNK: u64 = 1024;
    let chunks: Vec<u64> = (start..total).step_by(CHUNK as usize).collect();
    let tally = chunks
        .par_iter()
        .map(|&lo| {
            let mut t = Tally::empty();
            for key in lo..(lo + CHUNK).min(total) {
                let a = subset_from_key(n, key, reduction);
                if inversion {
                    let inv = ev.g.inverse_set(&a);
                    if mask_of(&inv) < mask_of(&a) {
                        continue;
                    }
                }
                t.add(key, ev.four(&a));
            }
            let d = done.fetch_add(CHUNK, Ordering::Relaxed) + CHUNK;
            progress(d.min(total - start), total - start);
            t
        })
        .reduce(Tally::empty, Tally::merge);
    Ok(tally)
}

/// `A ↦ A⁻¹` must swap right and left subindices; checked on a fixed sample.
fn inversion_swaps_sides(ev: &Evaluator) -> bool {
    let n = ev.g.order();
    let total = 1u64 << (n - 1);
    let step = (total / 97).max(1);
    (0..total).step_by(step as usize).take(128).all(|key| {
        let a = subset_from_key(n, key, Reduction::Translation);
        let v = ev.four(&a);
        let w = ev.four(&ev.g.inverse_set(&a));
        [v[0], v[1]] == [w[2], w[3]] && [v[2], v[3]] == [w[0], w[1]]
    })
}

/// Deterministic candidate list for groups too large for exhaustive search.
fn witness_pool(g: &FiniteGroup, opts: &ClassifyOptions) -> Vec<GroupSubset> {
    use rand::{Rng, SeedableRng};
    let n = g.order();
    let mut pool: Vec<GroupSubset> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |s: GroupSubset, pool: &mut Vec<GroupSubset>| {
        if !s.is_empty() && seen.insert(s.bits().clone()) {
            pool.push(s);
        }
    };
    for x in 0..n {
        push(g.subset(&[0, x]).unwrap(), &mut pool);
    }
    if n <= 64 {
        for x in 1..n {
            for y in x + 1..n {
                push(g.subset(&[0, x, y]).unwrap(), &mut pool);
            }
        }
    }
    let subs = g.subgroups();
    for h in &subs {
        push(h.clone(), &mut pool);
        let mut hc = h.complement();
        if !hc.is_empty() {
            push(hc.clone(), &mut pool);
            hc.insert(0);
            push(hc, &mut pool);
        }
        for x in 0..n {
            if !h.contains(x) {
                let mut hx = h.clone();
                hx.insert(x);
                push(hx, &mut pool);
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let density: f64 = rng.gen_range(0.05..0.7);
        let mut s = g.identity_set();
        for x in 1..n {
            if rng.gen_bool(density) {
                s.insert(x);
            }
        }
        push(s, &mut pool);
    }
    pool
}

fn witness_tally(
    ev: &Evaluator,
    opts: &ClassifyOptions,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Tally {
    use rayon::prelude::*;
    let pool = witness_pool(&ev.g, opts);
    let total = pool.len() as u64;
    let done = std::sync::atomic::AtomicU64::new(0);
    pool.par_iter()
        .enumerate()
        .fold(Tally::empty, |mut t, (i, a)| {
            t.add(i as u64, ev.four(a));
            let d = done.fetch_add(1, std::sync::atomic::Ordering::Relaxed) + 1;
            if d % 256 == 0 || d == total {
                progress(d, total);
            }
            t
        })
        .reduce(Tally::empty, Tally::merge)
}

/// `|G:A|^± = |G:H|·|H:A|^±` on both sides, for a subgroup `H ⊇ A`.
pub fn check_subgroup_multiplicativity(g: &FiniteGroup, h: &GroupSubset, a: &GroupSubset) -> Result<bool> {
    g.check_subset(h)?;
    g.check_subset(a)?;
    if !g.is_subgroup(h) {
        return Err(Error::NotASubgroup);
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if !a.is_subset(h) {
        return Err(Error::InvalidDifference("A is not contained in H".into()));
    }
    let (hg, emb) = g.induced(h)?;
    let local: Vec<usize> = a
        .iter()
        .map(|x| emb.iter().position(|&e| e == x).expect("a ⊆ h"))
        .collect();
    let ah = hg.subset(&local)?;
    let idx = g.order() / h.len();
    let big = four_indices(g, a)?;
    let small = four_indices(&hg, &ah)?;
    Ok(big.iter().zip(small).all(|(&b, s)| b == idx * s))
}

/// `|G:H^c|`: `|G|` when `H = G`, 2 when `|G:H| = 2`, else 1.
/// Cross-checked against the subindices of `H^c` whenever `H ≠ G`.
pub fn subgroup_complement_index(g: &FiniteGroup, h: &GroupSubset) -> Result<usize> {
    g.check_subset(h)?;
    if !g.is_subgroup(h) {
        return Err(Error::NotASubgroup);
    }
    let k = g.order() / h.len();
    let formula = match k {
        1 => return Ok(g.order()),
        2 => 2,
        _ => 1,
    };
    let four = four_indices(g, &h.complement())?;
    assert!(
        four.iter().all(|&v| v == formula),
        "subgroup complement index {formula} disagrees with computed {four:?}"
    );
    Ok(formula)
}

/// True iff `C¹(A)` is a subgroup, i.e. there is exactly one right subfactor containing 1.
pub fn singleton_subf1_check(g: &FiniteGroup, a: &GroupSubset) -> Result<bool> {
    g.check_subset(a)?;
    let c = complement_c(g, a, Side::Left, false);
    let c1 = complement_c(g, a, Side::Left, true);
    let is_sub = g.is_subgroup(&c1);
    let cc_closed = g.product_set(&c, &c).is_subset(&c1);
    assert_eq!(is_sub, cc_closed, "C¹ subgroup test disagrees with CC ⊆ C¹");
    if !a.is_empty() && g.order() <= ENUMERATION_CAP {
        let fam = enumerate_subf1(g, a, Side::Right)?;
        let single = fam.len() == 1 && fam[0] == c1;
        assert_eq!(is_sub, single, "C¹ subgroup test disagrees with SubF¹ enumeration");
    }
    Ok(is_sub)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductChain {
    pub product_lower: usize,
    pub factor_lower_product: usize,
    pub factor_upper_product: usize,
    pub product_upper: usize,
    /// Products of factor subfactors were checked to be subfactors of the product.
    pub products_of_subfactors_ok: bool,
    pub holds: bool,
}

/// `|G₁×G₂ : A₁×A₂|^- ≤ Π|Gᵢ:Aᵢ|^- ≤ Π|Gᵢ:Aᵢ|^+ ≤ |G₁×G₂ : A₁×A₂|^+` (right side).
pub fn product_inequality_check(
    g1: &FiniteGroup,
    a1: &GroupSubset,
    g2: &FiniteGroup,
    a2: &GroupSubset,
) -> Result<ProductChain> {
    let g = FiniteGroup::direct_product(g1, g2)?;
    if g.order() > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "product order",
            value: g.order(),
            cap: ENUMERATION_CAP,
        });
    }
    let n2 = g2.order();
    let embed = |x: &GroupSubset, y: &GroupSubset| {
        let v: Vec<usize> = x.iter().flat_map(|i| y.iter().map(move |j| i * n2 + j)).collect();
        g.subset(&v)
    };
    let a = embed(a1, a2)?;
    let (pl, pu) = index_pair(&g, &a, Side::Right)?;
    let r1 = analyze(g1, a1, Side::Right)?;
    let r2 = analyze(g2, a2, Side::Right)?;
    let mut ok = true;
    for b1 in r1.witnesses_min.iter().chain(&r1.witnesses_max).take(4) {
        for b2 in r2.witnesses_min.iter().chain(&r2.witnesses_max).take(4) {
            ok &= is_subfactor(&g, &a, &embed(b1, b2)?, Side::Right);
        }
    }
    let fl = r1.lower * r2.lower;
    let fu = r1.upper * r2.upper;
    Ok(ProductChain {
        product_lower: pl,
        factor_lower_product: fl,
        factor_upper_product: fu,
        product_upper: pu,
        products_of_subfactors_ok: ok,
        holds: ok && pl <= fl && fl <= fu && fu <= pu,
    })
}
