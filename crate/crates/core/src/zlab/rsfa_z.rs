//! Subfactors of ℤ relative to an eventually periodic `Dif(A)`.
//!
//! A finite `B` is a subfactor when `(B - B) ∩ Dif(A) = {0}` and
//! `Dif(A) + B = ℤ`. Normalizing `min B = 0` and listing `B` increasingly,
//! the remaining candidates after each pick form the pool
//! `⋂_{b ∈ B} (C(A) + b)`, where `C(A) = ℤ ∖ Dif(A)`. The pool is
//! eventually periodic with the modulus `M` of `C(A)`, and its flips stay
//! within `ρ = max |flip of C(A)|` of the picks. So its future behaviour is
//! determined by a finite key relative to `max B`:
//!
//! * the residues mod `M` of its periodic part,
//! * the residues of live isolated points more than `ρ` behind `max B`,
//! * the exact bits on `(max B - ρ, max B + ρ]`.
//!
//! Picks within `2ρ` of `max B` are taken literally. A farther pick only
//! matters through its residue, so one representative per live class is
//! enough; that uniformity is re-checked on every far pick. The key graph is
//! finite, and its shortest and longest paths to an empty pool give the two
//! subindices.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::epset::EPSet;
use crate::error::{Error, Result};
use crate::types::{Cardinal, ProofStatus};

pub const STATE_CAP: usize = 200_000;
pub const WITNESS_CAP: usize = 64;
/// Longest path length explored when the key graph has a cycle.
const CYCLIC_LENGTH_CAP: usize = 128;

#[derive(Clone, Debug, Serialize)]
pub struct ZSubfactorReport {
    pub complement: EPSet,
    pub radius: u64,
    pub lower: Cardinal,
    pub upper: Cardinal,
    pub lower_status: ProofStatus,
    pub upper_status: ProofStatus,
    /// Normalized (`min = 0`) subfactors of minimum size, lexicographic.
    pub witnesses_min: Vec<Vec<i64>>,
    pub witnesses_max: Vec<Vec<i64>>,
    /// Sizes of finite subfactors.
    pub rsfa_numbers: BTreeSet<u64>,
    /// False when a cycle made the size list open-ended.
    pub rsfa_numbers_complete: bool,
    pub states: usize,
}

impl ZSubfactorReport {
    pub fn is_stable(&self) -> bool {
        self.lower == self.upper
    }
}

/// `(B - B) ∩ Dif(A) = {0}` and `Dif(A) + B = ℤ`.
pub fn verify_subfactor_z(dif_a: &EPSet, b: &[i64]) -> bool {
    if b.is_empty() {
        return false;
    }
    for (i, &x) in b.iter().enumerate() {
        for &y in &b[i + 1..] {
            if x == y || dif_a.contains(x - y) {
                return false;
            }
        }
    }
    let cover = b.iter().fold(EPSet::empty(), |acc, &x| acc.union(&dif_a.shift(x)));
    cover.is_full()
}

fn check_difference(dif_a: &EPSet) -> Result<()> {
    if !dif_a.contains(0) {
        return Err(Error::InvalidDifference("0 is not a member".into()));
    }
    if &dif_a.negate() != dif_a {
        return Err(Error::InvalidDifference("set is not symmetric".into()));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key(Vec<bool>);

struct Node {
    pool: EPSet,
    mx: i64,
    /// `(pick - max B, child)`, increasing in the offset.
    edges: Vec<(i64, usize)>,
}

struct Explorer {
    modulus: i64,
    rho: i64,
    nodes: Vec<Node>,
    index: HashMap<Key, usize>,
    uniform: bool,
}

impl Explorer {
    fn key(&self, pool: &EPSet, mx: i64) -> Key {
        let (m, rho) = (self.modulus, self.rho);
        let mut bits = Vec::with_capacity((2 * m + 2 * rho) as usize);
        let per: Vec<bool> = (0..m).map(|r| pool.periodic_contains(mx + r)).collect();
        let mut ghost = vec![false; m as usize];
        for y in pool.added().filter(|&y| y <= mx - rho) {
            let r = (y - mx).rem_euclid(m) as usize;
            if !per[r] {
                ghost[r] = true;
            }
        }
        bits.extend(&per);
        bits.extend(&ghost);
        bits.extend((-rho + 1..=rho).map(|d| pool.contains(mx + d)));
        Key(bits)
    }

    fn picks(&self, pool: &EPSet, mx: i64) -> Vec<i64> {
        let (m, rho) = (self.modulus, self.rho);
        let mut out: Vec<i64> = (mx + 1..=mx + 2 * rho).filter(|&x| pool.contains(x)).collect();
        let base = mx + 2 * rho + 1;
        let mut far: Vec<i64> = (0..m)
            .filter(|&r| pool.periodic_contains(mx + r))
            .map(|r| base + (mx + r - base).rem_euclid(m))
            .collect();
        far.sort_unstable();
        out.extend(far);
        out
    }

    fn intern(&mut self, pool: EPSet, mx: i64) -> Result<(usize, bool)> {
        let k = self.key(&pool, mx);
        if let Some(&i) = self.index.get(&k) {
            return Ok((i, false));
        }
        if self.nodes.len() >= STATE_CAP {
            return Err(Error::CapExceeded {
                what: "rsfa_z states",
                value: self.nodes.len() + 1,
                cap: STATE_CAP,
            });
        }
        let i = self.nodes.len();
        self.nodes.push(Node {
            pool,
            mx,
            edges: Vec::new(),
        });
        self.index.insert(k, i);
        Ok((i, true))
    }

    fn explore(&mut self, c: &EPSet) -> Result<()> {
        let (start, _) = self.intern(c.clone(), 0)?;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let (pool, mx) = (self.nodes[v].pool.clone(), self.nodes[v].mx);
            if pool.is_empty() {
                continue;
            }
            let mut edges = Vec::new();
            for x in self.picks(&pool, mx) {
                let next = pool.intersect(&c.shift(x));
                if x > mx + 2 * self.rho {
                    let k = self.key(&next, x);
                    for d in 1..=2 {
                        let y = x + d * self.modulus;
                        if self.key(&pool.intersect(&c.shift(y)), y) != k {
                            self.uniform = false;
                        }
                    }
                }
                let (child, fresh) = self.intern(next, x)?;
                if fresh {
                    queue.push_back(child);
                }
                edges.push((x - mx, child));
            }
            self.nodes[v].edges = edges;
        }
        Ok(())
    }

    fn terminal(&self, v: usize) -> bool {
        self.nodes[v].pool.is_empty()
    }

    /// Distance (in picks) to the nearest terminal; `None` if unreachable.
    fn down_distances(&self) -> Vec<Option<usize>> {
        let n = self.nodes.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, node) in self.nodes.iter().enumerate() {
            for &(_, w) in &node.edges {
                rev[w].push(v);
            }
        }
        let mut dist = vec![None; n];
        let mut q = VecDeque::new();
        for v in 0..n {
            if self.terminal(v) {
                dist[v] = Some(0);
                q.push_back(v);
            }
        }
        while let Some(w) = q.pop_front() {
            let d = dist[w].unwrap();
            for &v in &rev[w] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    q.push_back(v);
                }
            }
        }
        dist
    }

    /// Reverse topological order, or `None` when a cycle exists.
    fn topo(&self) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for node in &self.nodes {
            for &(_, w) in &node.edges {
                indeg[w] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut q: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &(_, w) in &self.nodes[v].edges {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    q.push_back(w);
                }
            }
        }
        (order.len() == n).then(|| {
            order.reverse();
            order
        })
    }

    /// Concrete sets along edges accepted by `keep(child, parent)`.
    fn witnesses(&self, keep: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<i64>)> = vec![(0, vec![0])];
        while let Some((v, b)) = stack.pop() {
            if out.len() >= WITNESS_CAP {
                break;
            }
            if self.terminal(v) {
                out.push(b);
                continue;
            }
            let mx = *b.last().unwrap();
            for &(off, w) in self.nodes[v].edges.iter().rev() {
                if keep(w, v) {
                    let mut nb = b.clone();
                    nb.push(mx + off);
                    stack.push((w, nb));
                }
            }
        }
        out
    }
}

/// Classifies all finite normalized subfactors of ℤ for `Dif(A) = dif_a`.
pub fn rsfa_z(dif_a: &EPSet, radius: u64) -> Result<ZSubfactorReport> {
    check_difference(dif_a)?;
    let c = dif_a.complement();
    let mut report = ZSubfactorReport {
        complement: c.clone(),
        radius,
        lower: Cardinal::Finite(1),
        upper: Cardinal::Finite(1),
        lower_status: ProofStatus::Proven,
        upper_status: ProofStatus::Proven,
        witnesses_min: Vec::new(),
        witnesses_max: Vec::new(),
        rsfa_numbers: BTreeSet::new(),
        rsfa_numbers_complete: true,
        states: 1,
    };
    if c.is_empty() {
        report.witnesses_min = vec![vec![0]];
        report.witnesses_max = vec![vec![0]];
        report.rsfa_numbers.insert(1);
        return Ok(report);
    }
    if !dif_a.has_residues() {
        // Cofinite C(A): no finite B covers ℤ, every subfactor is infinite.
        report.lower = Cardinal::Aleph0;
        report.upper = Cardinal::Aleph0;
        return Ok(report);
    }
    let m = c.modulus();
    let rho = c.flip_radius();
    let needed = (2 * rho + m) as u64;
    if radius < needed {
        return Err(Error::RadiusTooSmall { radius, needed });
    }

    let mut ex = Explorer {
        modulus: m,
        rho,
        nodes: Vec::new(),
        index: HashMap::new(),
        uniform: true,
    };
    ex.explore(&c)?;
    report.states = ex.nodes.len();
    if !ex.uniform {
        report.upper_status = ProofStatus::BoundOnly;
    }

    let down = ex.down_distances();
    let Some(dmin) = down[0] else {
        report.lower = Cardinal::Aleph0;
        report.upper = Cardinal::Aleph0;
        report.rsfa_numbers_complete = true;
        return Ok(report);
    };
    report.lower = Cardinal::Finite(dmin as u64 + 1);
    report.witnesses_min = ex.witnesses(&|w, v| down[w].is_some_and(|d| Some(d + 1) == down[v]));

    match ex.topo() {
        Some(order) => {
            let n = ex.nodes.len();
            let mut longest = vec![0usize; n];
            let mut lens: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n];
            for &v in &order {
                if ex.terminal(v) {
                    lens[v].insert(1);
                    continue;
                }
                for &(_, w) in &ex.nodes[v].edges {
                    longest[v] = longest[v].max(longest[w] + 1);
                    let add: Vec<u64> = lens[w].iter().map(|l| l + 1).collect();
                    lens[v].extend(add);
                }
            }
            report.upper = Cardinal::Finite(longest[0] as u64 + 1);
            report.rsfa_numbers = std::mem::take(&mut lens[0]);
            report.witnesses_max = ex.witnesses(&|w, v| longest[w] + 1 == longest[v]);
        }
        None => {
            // A reachable cycle gives direct sets of every size; each extends
            // to a subfactor, which is then infinite or arbitrarily large.
            report.upper = Cardinal::Aleph0;
            report.rsfa_numbers_complete = false;
            let mut layer: BTreeSet<usize> = BTreeSet::from([0]);
            for len in 1..=CYCLIC_LENGTH_CAP {
                if layer.iter().any(|&v| ex.terminal(v)) {
                    report.rsfa_numbers.insert(len as u64);
                }
                layer = layer
                    .iter()
                    .flat_map(|&v| ex.nodes[v].edges.iter().map(|&(_, w)| w))
                    .collect();
                if layer.is_empty() {
                    break;
                }
            }
        }
    }

    for b in report.witnesses_min.iter().chain(&report.witnesses_max) {
        assert!(verify_subfactor_z(dif_a, b), "rsfa_z produced a non-subfactor {b:?}");
    }
    Ok(report)
}

/// Default radius for `rsfa_z`: the least one accepted.
pub fn minimal_radius(dif_a: &EPSet) -> u64 {
    let c = dif_a.complement();
    (2 * c.flip_radius() + c.modulus()) as u64
}

/// `|ℤ : mA|^± = |m| · |ℤ : A|^±`, with `Dif(mA) = m·Dif(A)`.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingCheck {
    pub m: i64,
    pub base: (Cardinal, Cardinal),
    pub scaled: (Cardinal, Cardinal),
    pub holds: bool,
}

pub fn scaling_identity_check(dif_a: &EPSet, m: i64) -> Result<ScalingCheck> {
    if m == 0 {
        return Err(Error::InvalidDifference("scaling factor must be nonzero".into()));
    }
    let base = rsfa_z(dif_a, minimal_radius(dif_a))?;
    let scaled_dif = dif_a.scale(m);
    let scaled = rsfa_z(&scaled_dif, minimal_radius(&scaled_dif))?;
    for r in [&base, &scaled] {
        if r.upper_status != ProofStatus::Proven {
            return Err(Error::InvalidDifference("index not proven; scaling check undecided".into()));
        }
    }
    let k = m.unsigned_abs();
    let holds = scaled.lower == base.lower.scale(k) && scaled.upper == base.upper.scale(k);
    Ok(ScalingCheck {
        m,
        base: (base.lower, base.upper),
        scaled: (scaled.lower, scaled.upper),
        holds,
    })
}

/// A synthetic `Dif(A)` with `C⁰(A) = {0, ±1, …, ±n}`: everything except `±1..±n`.
pub fn pervasive_dif(n: u64) -> EPSet {
    let n = n as i64;
    EPSet::new(1, [0], (1..=n).flat_map(|k| [k, -k]))
}

/// The intervals `[-x, y]` with `x + y = n`, each checked as a subfactor.
pub fn interval_subf0(n: u64) -> Vec<(Vec<i64>, bool)> {
    let dif = pervasive_dif(n);
    let n = n as i64;
    (0..=n)
        .rev()
        .map(|x| {
            let b: Vec<i64> = (-x..=n - x).collect();
            let ok = verify_subfactor_z(&dif, &b);
            (b, ok)
        })
        .collect()
}
