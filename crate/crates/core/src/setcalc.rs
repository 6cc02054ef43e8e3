//! Difference sets, iterated differences, complements, Cayley diameter,
//! covering and packing numbers on a finite group.

use std::collections::VecDeque;

use serde::Serialize;

use crate::bits::BitSet;
use crate::clique;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSubset};
use crate::types::Side;

/// `A⁻¹A` on the left, `AA⁻¹` on the right.
pub fn dif(g: &FiniteGroup, a: &GroupSubset, side: Side) -> GroupSubset {
    let inv = g.inverse_set(a);
    match side {
        Side::Left => g.product_set(&inv, a),
        Side::Right => g.product_set(a, &inv),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DifProfile {
    /// `[A, Dif(A), …, Dif^N(A)]` with `Dif^N = Dif^{N+1}`.
    pub chain: Vec<GroupSubset>,
    pub dl_infinity: usize,
    /// `Dif^∞(A)`, a subgroup.
    pub closure: GroupSubset,
    /// Diameter of `⟨S⟩` with respect to `S = Dif(A)`, at least 1.
    pub diameter: usize,
}

pub fn dif_profile(g: &FiniteGroup, a: &GroupSubset, side: Side) -> Result<DifProfile> {
    g.check_subset(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut chain = vec![a.clone()];
    loop {
        let next = dif(g, chain.last().unwrap(), side);
        if &next == chain.last().unwrap() {
            break;
        }
        chain.push(next);
    }
    let dl = chain.len() - 1;
    let closure = chain.last().unwrap().clone();
    assert!(g.is_subgroup(&closure), "Dif^∞ is not a subgroup");
    let s = dif(g, a, side);
    let diameter = cayley_diameter(g, &s);
    // For non-subgroups Dif^n(A) = S^{2^{n-1}} forces dl = ⌈log₂ diam⌉ + 1.
    if dl > 0 {
        assert_eq!(dl, ceil_log2(diameter) + 1, "dl^∞ / diameter mismatch");
    }
    Ok(DifProfile {
        chain,
        dl_infinity: dl,
        closure,
        diameter,
    })
}

/// `dl^∞(A ∪ {1})`: the number of difference steps that turn `A ∪ {1}` into `⟨A⟩`.
pub fn generating_length(g: &FiniteGroup, a: &GroupSubset, side: Side) -> Result<usize> {
    let mut a1 = a.clone();
    a1.insert(0);
    Ok(dif_profile(g, &a1, side)?.dl_infinity)
}

pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// Largest BFS distance from the identity in `⟨S⟩` using right multiplication by `S`.
/// Reported as at least 1 so that `S = ⟨S⟩` has diameter 1.
pub fn cayley_diameter(g: &FiniteGroup, s: &GroupSubset) -> usize {
    let gens: Vec<usize> = s.iter().filter(|&x| x != 0).collect();
    let mut dist = vec![usize::MAX; g.order()];
    dist[0] = 0;
    let mut q = VecDeque::from([0usize]);
    let mut far = 0;
    while let Some(x) = q.pop_front() {
        for &t in &gens {
            let y = g.mul(x, t);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                far = far.max(dist[y]);
                q.push_back(y);
            }
        }
    }
    far.max(1)
}

/// `C(A) = G ∖ Dif(A)`, or `C¹(A) = C(A) ∪ {1}` when `adjoin_identity`.
pub fn complement_c(g: &FiniteGroup, a: &GroupSubset, side: Side, adjoin_identity: bool) -> GroupSubset {
    let mut c = dif(g, a, side).complement();
    if adjoin_identity {
        c.insert(0);
    }
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct Covering {
    pub size: usize,
    /// `X` with `G = XS`.
    pub witness: GroupSubset,
}

/// `cov_G(S) = min{|X| : G = XS}` by exact branch and bound over left translates.
pub fn covering_number(g: &FiniteGroup, s: &GroupSubset) -> Result<Covering> {
    g.check_subset(s)?;
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = g.order();
    // One representative translator per distinct translate.
    let mut sets: Vec<(usize, BitSet)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in 0..n {
        let t = g.left_translate(x, s).bits().clone();
        if seen.insert(t.clone()) {
            sets.push((x, t));
        }
    }
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (_, t)) in sets.iter().enumerate() {
        for e in t.iter() {
            covers[e].push(k);
        }
    }
    let full = BitSet::full(n);
    let mut best = greedy_cover(&sets, &full);
    let mut chosen = Vec::new();
    cover_rec(&sets, &covers, full, &mut chosen, &mut best);
    let witness = GroupSubset::from_elems(n, &best.iter().map(|&k| sets[k].0).collect::<Vec<_>>())?;
    Ok(Covering {
        size: best.len(),
        witness,
    })
}

fn greedy_cover(sets: &[(usize, BitSet)], universe: &BitSet) -> Vec<usize> {
    let mut left = universe.clone();
    let mut pick = Vec::new();
    while !left.is_empty() {
        let k = (0..sets.len())
            .max_by_key(|&k| (sets[k].1.intersection_count(&left), std::cmp::Reverse(k)))
            .unwrap();
        left.difference_with(&sets[k].1);
        pick.push(k);
    }
    pick
}

fn cover_rec(
    sets: &[(usize, BitSet)],
    covers: &[Vec<usize>],
    uncovered: BitSet,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    let Some(e) = uncovered.first() else {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    };
    let left = uncovered.count();
    let gain = sets
        .iter()
        .map(|(_, t)| t.intersection_count(&uncovered))
        .max()
        .unwrap_or(0);
    if gain == 0 || chosen.len() + left.div_ceil(gain) >= best.len() {
        return;
    }
    let mut opts: Vec<usize> = covers[e].clone();
    opts.sort_by_key(|&k| (std::cmp::Reverse(sets[k].1.intersection_count(&uncovered)), k));
    for k in opts {
        chosen.push(k);
        cover_rec(sets, covers, uncovered.difference(&sets[k].1), chosen, best);
        chosen.pop();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Packing {
    pub size: usize,
    /// Translators of a maximum family of pairwise disjoint translates.
    pub witness: GroupSubset,
}

/// Maximum number of pairwise disjoint translates: `xA` for `Left`, `Ax` for `Right`.
pub fn packing_number(g: &FiniteGroup, a: &GroupSubset, side: Side) -> Result<Packing> {
    g.check_subset(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = g.order();
    let translates: Vec<BitSet> = (0..n)
        .map(|x| match side {
            Side::Left => g.left_translate(x, a).bits().clone(),
            Side::Right => g.right_translate(a, x).bits().clone(),
        })
        .collect();
    let mut adj = vec![BitSet::new(n); n];
    for x in 0..n {
        for y in x + 1..n {
            if !translates[x].intersects(&translates[y]) {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    // Translating the whole family keeps it disjoint, so the identity can be fixed.
    let mut rest = clique::max_clique(&adj, &adj[0]);
    rest.push(0);
    Ok(Packing {
        size: rest.len(),
        witness: GroupSubset::from_elems(n, &rest)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn dif_examples() {
        let g = z(6);
        let a = g.subset(&[0, 1]).unwrap();
        assert_eq!(dif(&g, &a, Side::Left).to_vec(), vec![0, 1, 5]);
        let b = g.subset(&[0, 1, 5]).unwrap();
        assert_eq!(dif(&g, &b, Side::Left).to_vec(), vec![0, 1, 2, 4, 5]);
        assert_eq!(dif(&g, &g.identity_set(), Side::Right).to_vec(), vec![0]);
        assert!(dif(&g, &g.empty_set(), Side::Left).is_empty());
    }

    #[test]
    fn profile_z10() {
        let g = z(10);
        let p = dif_profile(&g, &g.subset(&[0, 1]).unwrap(), Side::Left).unwrap();
        assert_eq!((p.dl_infinity, p.diameter), (4, 5));
        assert_eq!(p.closure, g.whole());
    }

    #[test]
    fn profile_z6() {
        let g = z(6);
        let dl = |v: &[usize]| dif_profile(&g, &g.subset(v).unwrap(), Side::Left).unwrap().dl_infinity;
        assert_eq!(dl(&[0, 1, 5]), 2);
        assert_eq!(dl(&[2, 3]), 3);
        // A singleton has Dif = {0} immediately, so its difference length is 1.
        assert_eq!(dl(&[1]), 1);
        assert_eq!(dl(&[0, 2, 4]), 0);
        let gl = |v: &[usize]| generating_length(&g, &g.subset(v).unwrap(), Side::Left).unwrap();
        assert_eq!(gl(&[1]), 3);
        assert_eq!(gl(&[0, 1, 5]), 2);
        assert_eq!(gl(&[2, 3]), 1);
    }

    #[test]
    fn profile_rejects_empty() {
        let g = z(4);
        assert_eq!(dif_profile(&g, &g.empty_set(), Side::Left).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn complements() {
        let g = z(6);
        let a = g.subset(&[0, 1]).unwrap();
        assert_eq!(complement_c(&g, &a, Side::Left, false).to_vec(), vec![2, 3, 4]);
        assert_eq!(complement_c(&g, &a, Side::Left, true).to_vec(), vec![0, 2, 3, 4]);
        assert!(complement_c(&g, &g.whole(), Side::Left, false).is_empty());
        let h = g.subset(&[0, 2, 4]).unwrap();
        assert_eq!(complement_c(&g, &h, Side::Right, false).to_vec(), vec![1, 3, 5]);
    }

    #[test]
    fn covering_examples() {
        let g = z(6);
        assert_eq!(covering_number(&g, &g.whole()).unwrap().size, 1);
        assert_eq!(covering_number(&g, &g.subset(&[0, 1]).unwrap()).unwrap().size, 3);
        assert_eq!(covering_number(&g, &g.subset(&[0, 2, 4]).unwrap()).unwrap().size, 2);
    }

    #[test]
    fn packing_examples() {
        let g = z(6);
        assert_eq!(packing_number(&g, &g.whole(), Side::Left).unwrap().size, 1);
        assert_eq!(packing_number(&g, &g.subset(&[0, 1]).unwrap(), Side::Left).unwrap().size, 3);
        assert_eq!(packing_number(&g, &g.identity_set(), Side::Right).unwrap().size, 6);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(
            (1..=9).map(ceil_log2).collect::<Vec<_>>(),
            vec![0, 1, 2, 2, 3, 3, 3, 3, 4]
        );
    }
}
