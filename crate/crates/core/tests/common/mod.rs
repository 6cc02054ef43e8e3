//! Brute-force oracles shared by the integration suites. Everything here works
//! straight from the Cayley table with plain vectors, independent of the engines.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use subindex_core::{FiniteGroup, GroupSubset, Side};

/// Quaternion group: `±1, ±i, ±j, ±k` as `4·sign + unit`.
pub fn quaternion() -> FiniteGroup {
    // unit product table: (sign flip, unit) for units 1, i, j, k.
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = T[x % 4][y % 4];
                    ((x / 4 + y / 4 + s) % 2) * 4 + u
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_rows("Q8", &rows).unwrap()
}

/// Named groups of order at most `max`, plus Q8.
pub fn catalogue(max: usize) -> Vec<FiniteGroup> {
    let names = [
        "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z13", "Z14", "Z15", "Z16",
        "Z18", "Z20", "Z24", "Z27", "Z30", "Z32", "Z36", "Z2^2", "Z2^3", "Z2^4", "Z2^5", "Z2^6", "Z3^2", "Z3^3",
        "Z4^2", "Z4^3", "Z2xZ4", "Z2xZ3", "Z2xZ5", "Z2xZ6", "Z2xZ8", "Z3xZ6", "Z4xZ8", "S3", "S4", "A4", "D6",
        "D8", "D10", "D12", "D14", "D16", "D20", "D24", "D32", "Z2xS3", "Z3xS3", "S3xS3", "Z2xD8", "Z2xA4",
    ];
    let mut out: Vec<FiniteGroup> = names
        .iter()
        .map(|n| FiniteGroup::parse_spec(n, 4096).unwrap())
        .filter(|g| g.order() <= max)
        .collect();
    if max >= 8 {
        out.push(quaternion());
    }
    out
}

pub fn elems(a: &GroupSubset) -> Vec<usize> {
    a.iter().collect()
}

pub fn to_subset(g: &FiniteGroup, v: &[usize]) -> GroupSubset {
    g.subset(v).unwrap()
}

/// Uniform random nonempty subset.
pub fn random_subset(g: &FiniteGroup, rng: &mut impl Rng) -> GroupSubset {
    let n = g.order();
    let k = rng.gen_range(1..=n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    to_subset(g, &all[..k])
}

fn sorted_dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

pub fn prod(g: &FiniteGroup, a: &[usize], b: &[usize]) -> Vec<usize> {
    sorted_dedup(a.iter().flat_map(|&x| b.iter().map(move |&y| g.mul(x, y))).collect())
}

pub fn inv(g: &FiniteGroup, a: &[usize]) -> Vec<usize> {
    sorted_dedup(a.iter().map(|&x| g.inv(x)).collect())
}

/// `A⁻¹A`, the set whose translates a right subfactor tiles with.
pub fn left_dif(g: &FiniteGroup, a: &[usize]) -> Vec<usize> {
    prod(g, &inv(g, a), a)
}

/// `AA⁻¹`.
pub fn right_dif(g: &FiniteGroup, a: &[usize]) -> Vec<usize> {
    prod(g, a, &inv(g, a))
}

/// `dl^∞` and the Cayley diameter of `⟨S⟩` for `S = A A⁻¹`.
pub fn dl_and_diameter(g: &FiniteGroup, a: &[usize]) -> (usize, usize) {
    let mut cur = sorted_dedup(a.to_vec());
    let mut dl = 0;
    loop {
        let next = right_dif(g, &cur);
        if next == cur {
            break;
        }
        cur = next;
        dl += 1;
    }
    let s = right_dif(g, a);
    // Ball growth: S^k until it stops.
    let mut ball = vec![0usize];
    let mut k = 0;
    loop {
        let next = prod(g, &ball, &s);
        if next == ball {
            break;
        }
        ball = next;
        k += 1;
    }
    (dl, k.max(1))
}

pub fn is_subgroup(g: &FiniteGroup, a: &[usize]) -> bool {
    !a.is_empty() && prod(g, a, &inv(g, a)) == sorted_dedup(a.to_vec())
}

fn oriented(g: &FiniteGroup, side: Side) -> impl Fn(usize, usize) -> usize + '_ {
    move |x, y| match side {
        Side::Right => g.mul(x, y),
        Side::Left => g.mul(y, x),
    }
}

/// Membership of `A⁻¹A` (right) or `AA⁻¹` (left).
pub fn dif_mask(g: &FiniteGroup, a: &[usize], side: Side) -> Vec<bool> {
    let m = oriented(g, side);
    let mut d = vec![false; g.order()];
    for &x in a {
        for &y in a {
            d[m(g.inv(x), y)] = true;
        }
    }
    d
}

fn direct_with(g: &FiniteGroup, d: &[bool], b: &[usize], side: Side) -> bool {
    let m = oriented(g, side);
    b.iter()
        .all(|&x| b.iter().all(|&y| x == y || !d[m(x, g.inv(y))]))
}

/// `B` is direct for `A` on `side`: no `b ≠ b'` with `b b'⁻¹ ∈ A⁻¹A` (right).
pub fn is_direct(g: &FiniteGroup, a: &[usize], b: &[usize], side: Side) -> bool {
    direct_with(g, &dif_mask(g, a, side), b, side)
}

/// Subfactor test straight from the definition.
pub fn is_subfactor(g: &FiniteGroup, a: &[usize], b: &[usize], side: Side) -> bool {
    let d = dif_mask(g, a, side);
    subfactor_with(g, &d, b, side)
}

fn subfactor_with(g: &FiniteGroup, d: &[bool], b: &[usize], side: Side) -> bool {
    if !direct_with(g, d, b, side) {
        return false;
    }
    let m = oriented(g, side);
    let mut hit = vec![false; g.order()];
    for (s, _) in d.iter().enumerate().filter(|(_, &v)| v) {
        for &z in b {
            hit[m(s, z)] = true;
        }
    }
    hit.iter().all(|&h| h)
}

fn mask_elems(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Every `B ∋ 1` that is direct and admits no direct one-point extension.
pub fn maximal_direct_sets(g: &FiniteGroup, a: &[usize], side: Side) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 20, "brute force is for small groups");
    let d = dif_mask(g, a, side);
    let mut out = Vec::new();
    for mask in (0..1u64 << n).filter(|m| m & 1 == 1) {
        let b = mask_elems(mask, n);
        if !direct_with(g, &d, &b, side) {
            continue;
        }
        let maximal = (0..n).filter(|x| mask >> x & 1 == 0).all(|x| {
            let mut bx = b.clone();
            bx.push(x);
            !direct_with(g, &d, &bx, side)
        });
        if maximal {
            out.push(b);
        }
    }
    out.sort();
    out
}

/// All subfactors containing 1, straight from the definition.
pub fn subfactors(g: &FiniteGroup, a: &[usize], side: Side) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 20, "brute force is for small groups");
    let d = dif_mask(g, a, side);
    let mut out: Vec<Vec<usize>> = (0..1u64 << n)
        .filter(|m| m & 1 == 1)
        .map(|m| mask_elems(m, n))
        .filter(|b| subfactor_with(g, &d, b, side))
        .collect();
    out.sort();
    out
}

/// `(lower, upper)` subindex by brute force.
pub fn index_pair(g: &FiniteGroup, a: &[usize], side: Side) -> (usize, usize) {
    let fam = subfactors(g, a, side);
    let lo = fam.iter().map(Vec::len).min().unwrap();
    let hi = fam.iter().map(Vec::len).max().unwrap();
    (lo, hi)
}

/// `[right lower, right upper, left lower, left upper]`.
pub fn four_indices(g: &FiniteGroup, a: &[usize]) -> [usize; 4] {
    let (rl, ru) = index_pair(g, a, Side::Right);
    let (ll, lu) = index_pair(g, a, Side::Left);
    [rl, ru, ll, lu]
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
