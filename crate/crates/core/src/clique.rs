//! Clique search on bitset adjacency: maximal-clique enumeration and maximum clique.

use crate::bits::BitSet;

/// Calls `emit` once for every maximal clique of the graph restricted to `cand`,
/// with `base` prepended. `adj[v]` must not contain `v`.
///
/// Bron–Kerbosch with Tomita pivoting; `emit` returns `false` to stop early.
pub fn for_each_maximal_clique(
    adj: &[BitSet],
    base: &[usize],
    cand: BitSet,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let excl = BitSet::new(cand.capacity());
    let mut r = base.to_vec();
    bk(adj, &mut r, cand, excl, emit);
}

fn bk(
    adj: &[BitSet],
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if p.is_empty() {
        if x.is_empty() {
            return emit(r);
        }
        return true;
    }
    // Pivot maximizing |P ∩ N(u)| over u ∈ P ∪ X.
    let pu = p.union(&x);
    let pivot = pu
        .iter()
        .max_by_key(|&u| (p.intersection_count(&adj[u]), std::cmp::Reverse(u)))
        .expect("nonempty");
    let branch = p.difference(&adj[pivot]);
    for v in branch.iter() {
        r.push(v);
        let cont = bk(
            adj,
            r,
            p.intersection(&adj[v]),
            x.intersection(&adj[v]),
            emit,
        );
        r.pop();
        if !cont {
            return false;
        }
        p.remove(v);
        x.insert(v);
    }
    true
}

/// A maximum clique inside `cand`, with branch-and-bound on a greedy colouring bound.
/// Returns the lexicographically first maximum clique found in vertex order.
pub fn max_clique(adj: &[BitSet], cand: &BitSet) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut cur = Vec::new();
    expand(adj, &mut cur, cand.clone(), &mut best);
    best
}

fn expand(adj: &[BitSet], cur: &mut Vec<usize>, p: BitSet, best: &mut Vec<usize>) {
    if p.is_empty() {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        return;
    }
    let (order, colors) = colour_sort(adj, &p);
    let mut p = p;
    for k in (0..order.len()).rev() {
        if cur.len() + colors[k] <= best.len() {
            return;
        }
        let v = order[k];
        cur.push(v);
        expand(adj, cur, p.intersection(&adj[v]), best);
        cur.pop();
        p.remove(v);
    }
}

/// Greedy sequential colouring; returns vertices in colour order and the running colour count.
fn colour_sort(adj: &[BitSet], p: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = p.clone();
    let mut order = Vec::with_capacity(p.count());
    let mut colors = Vec::with_capacity(p.count());
    let mut c = 0;
    while !uncoloured.is_empty() {
        c += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            order.push(v);
            colors.push(c);
        }
    }
    (order, colors)
}
