//! Eventually periodic integer sets.
//!
//! `x ∈ S ⟺ (x mod m ∈ R) XOR (x ∈ F)` with `F` finite. The periodic part of
//! such a set is determined by its behaviour at ±∞, so the canonical form
//! (least period, and `F` = exactly the points disagreeing with `R`) is unique.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::types::Cardinal;

/// Moduli above this are refused; every set the engines build stays far below it.
pub const MAX_MODULUS: i64 = 1 << 22;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EPSet {
    m: i64,
    res: Vec<bool>,
    flips: BTreeSet<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    let l = a / gcd(a, b) * b;
    assert!(l <= MAX_MODULUS, "EPSet modulus {l} exceeds {MAX_MODULUS}");
    l
}

impl EPSet {
    /// `{x : x mod m ∈ residues} △ flips`, canonicalized.
    pub fn new(m: i64, residues: impl IntoIterator<Item = i64>, flips: impl IntoIterator<Item = i64>) -> Self {
        assert!((1..=MAX_MODULUS).contains(&m), "bad modulus {m}");
        let mut res = vec![false; m as usize];
        for r in residues {
            res[r.rem_euclid(m) as usize] = true;
        }
        let mut f = BTreeSet::new();
        for x in flips {
            if !f.remove(&x) {
                f.insert(x);
            }
        }
        EPSet { m, res, flips: f }.canonical()
    }

    pub fn periodic(m: i64, residues: impl IntoIterator<Item = i64>) -> Self {
        EPSet::new(m, residues, [])
    }

    pub fn finite(elems: impl IntoIterator<Item = i64>) -> Self {
        let s: BTreeSet<i64> = elems.into_iter().collect();
        EPSet::new(1, [], s)
    }

    pub fn empty() -> Self {
        EPSet::new(1, [], [])
    }

    pub fn integers() -> Self {
        EPSet::new(1, [0], [])
    }

    /// `dℤ`.
    pub fn multiples(d: i64) -> Self {
        EPSet::new(d.abs().max(1), [0], [])
    }

    fn canonical(mut self) -> Self {
        // Least period of the residue pattern.
        let m = self.m as usize;
        let mut best = m;
        for d in 1..m {
            if m % d == 0 && (0..m).all(|i| self.res[i] == self.res[i % d]) {
                best = d;
                break;
            }
        }
        if best != m {
            self.res.truncate(best);
            self.m = best as i64;
        }
        self
    }

    pub fn modulus(&self) -> i64 {
        self.m
    }

    pub fn residues(&self) -> Vec<i64> {
        (0..self.m).filter(|&r| self.res[r as usize]).collect()
    }

    pub fn flips(&self) -> &BTreeSet<i64> {
        &self.flips
    }

    /// Largest `|f|` over flips, 0 when there are none.
    pub fn flip_radius(&self) -> i64 {
        self.flips.iter().map(|f| f.abs()).max().unwrap_or(0)
    }

    #[inline]
    pub fn periodic_contains(&self, x: i64) -> bool {
        self.res[x.rem_euclid(self.m) as usize]
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        self.periodic_contains(x) ^ self.flips.contains(&x)
    }

    /// Members added on top of the periodic part.
    pub fn added(&self) -> impl Iterator<Item = i64> + '_ {
        self.flips.iter().copied().filter(|&x| !self.periodic_contains(x))
    }

    pub fn has_residues(&self) -> bool {
        self.res.iter().any(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        !self.has_residues()
    }

    pub fn is_empty(&self) -> bool {
        !self.has_residues() && self.flips.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.res.iter().all(|&b| b) && self.flips.is_empty()
    }

    /// Members of a finite set, sorted.
    pub fn elements(&self) -> Option<Vec<i64>> {
        self.is_finite().then(|| self.flips.iter().copied().collect())
    }

    /// Pointwise combination on the common modulus.
    fn combine(&self, o: &EPSet, op: impl Fn(bool, bool) -> bool) -> EPSet {
        let l = lcm(self.m, o.m);
        let residues = (0..l).filter(|&r| op(self.periodic_contains(r), o.periodic_contains(r)));
        let flips: Vec<i64> = self
            .flips
            .union(&o.flips)
            .copied()
            .filter(|&x| {
                op(self.contains(x), o.contains(x)) != op(self.periodic_contains(x), o.periodic_contains(x))
            })
            .collect();
        EPSet::new(l, residues.collect::<Vec<_>>(), flips)
    }

    pub fn union(&self, o: &EPSet) -> EPSet {
        self.combine(o, |a, b| a || b)
    }

    pub fn intersect(&self, o: &EPSet) -> EPSet {
        self.combine(o, |a, b| a && b)
    }

    pub fn minus(&self, o: &EPSet) -> EPSet {
        self.combine(o, |a, b| a && !b)
    }

    pub fn complement(&self) -> EPSet {
        EPSet {
            m: self.m,
            res: self.res.iter().map(|b| !b).collect(),
            flips: self.flips.clone(),
        }
    }

    /// `-S`.
    pub fn negate(&self) -> EPSet {
        EPSet::new(
            self.m,
            self.residues().into_iter().map(|r| -r),
            self.flips.iter().map(|x| -x),
        )
    }

    /// `S + t`.
    pub fn shift(&self, t: i64) -> EPSet {
        EPSet::new(
            self.m,
            self.residues().into_iter().map(|r| r + t),
            self.flips.iter().map(|x| x + t),
        )
    }

    /// `kS = {kx : x ∈ S}` for `k ≠ 0`.
    pub fn scale(&self, k: i64) -> EPSet {
        assert!(k != 0, "scale by zero");
        let km = self.m * k.abs();
        EPSet::new(
            km,
            self.residues().into_iter().map(|r| r * k),
            self.flips.iter().map(|x| x * k),
        )
    }

    /// `S + T = {s + t}`.
    ///
    /// Two infinite periodic parts add to the classes `R_S + R_T` mod
    /// `gcd(m_S, m_T)`; removed points never matter because each sum class has
    /// infinitely many representations. Added points contribute translates.
    pub fn sumset(&self, o: &EPSet) -> EPSet {
        match (self.has_residues(), o.has_residues()) {
            (false, _) => self
                .flips
                .iter()
                .fold(EPSet::empty(), |acc, &s| acc.union(&o.shift(s))),
            (_, false) => o.sumset(self),
            (true, true) => {
                let g = gcd(self.m, o.m);
                let mut cls = vec![false; g as usize];
                for r in self.residues() {
                    for s in o.residues() {
                        cls[((r + s) % g) as usize] = true;
                    }
                }
                let base = EPSet::periodic(g, (0..g).filter(|&c| cls[c as usize]));
                let with_a = self.added().fold(base, |acc, a| acc.union(&o.shift(a)));
                o.added().fold(with_a, |acc, b| acc.union(&self.shift(b)))
            }
        }
    }

    /// `S - T`.
    pub fn sub(&self, o: &EPSet) -> EPSet {
        self.sumset(&o.negate())
    }

    /// `S - S`.
    pub fn dif(&self) -> EPSet {
        self.sub(self)
    }

    /// `Some(|ℤ : S|)` when `S` is a subgroup (`dℤ` or `{0}`).
    pub fn subgroup_index(&self) -> Option<Cardinal> {
        if self.flips.is_empty() && self.residues() == vec![0] {
            Some(Cardinal::Finite(self.m as u64))
        } else if self.is_finite() && self.flips.len() == 1 && self.flips.contains(&0) {
            Some(Cardinal::Aleph0)
        } else {
            None
        }
    }

    /// Largest distance between consecutive members; `None` unless syndetic.
    pub fn max_gap(&self) -> Option<i64> {
        if !self.has_residues() {
            return None;
        }
        let rs = self.residues();
        let mut gap = rs.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
        gap = gap.max(rs[0] + self.m - rs[rs.len() - 1]);
        let span = self.flip_radius() + 2 * self.m;
        let mut prev: Option<i64> = None;
        for x in -span..=span {
            if self.contains(x) {
                if let Some(p) = prev {
                    gap = gap.max(x - p);
                }
                prev = Some(x);
            }
        }
        Some(gap)
    }
}

impl fmt::Display for EPSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues().iter().map(i64::to_string).collect();
        write!(f, "mod {}: {} ; flips: ", self.m, rs.join(","))?;
        let mut items = Vec::new();
        for &x in &self.flips {
            if x > 0 && self.flips.contains(&-x) {
                items.push(format!("±{x}"));
            } else if x < 0 && self.flips.contains(&-x) {
                continue;
            } else {
                items.push(x.to_string());
            }
        }
        write!(f, "{}", items.join(","))
    }
}

impl fmt::Debug for EPSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPSet({self})")
    }
}

impl serde::Serialize for EPSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Grammar: `mod <m>: [r{,r}] ; flips: [item{,item}]`, item = `±a` | `+-a` | integer.
impl FromStr for EPSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::Parse(format!("epset `{s}`: {why}"));
        let body = s.trim().strip_prefix("mod").ok_or_else(|| bad("missing `mod`"))?;
        let (m, rest) = body.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let m: i64 = m.trim().parse().map_err(|_| bad("bad modulus"))?;
        if !(1..=MAX_MODULUS).contains(&m) {
            return Err(bad("modulus out of range"));
        }
        let (res_part, flip_part) = match rest.split_once(';') {
            Some((a, b)) => {
                let b = b.trim().strip_prefix("flips:").ok_or_else(|| bad("missing `flips:`"))?;
                (a, b)
            }
            None => (rest, ""),
        };
        let mut residues = Vec::new();
        for t in res_part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let r: i64 = t.parse().map_err(|_| bad("bad residue"))?;
            if !(0..m).contains(&r) {
                return Err(bad("residue out of range"));
            }
            residues.push(r);
        }
        let mut flips = BTreeSet::new();
        for t in flip_part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(v) = t.strip_prefix('±').or_else(|| t.strip_prefix("+-")) {
                let v: i64 = v.trim().parse().map_err(|_| bad("bad flip"))?;
                flips.insert(v);
                flips.insert(-v);
            } else {
                flips.insert(t.parse::<i64>().map_err(|_| bad("bad flip"))?);
            }
        }
        Ok(EPSet::new(m, residues, flips))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_odd() -> EPSet {
        EPSet::periodic(2, [1])
    }

    #[test]
    fn complement_of_evens() {
        assert_eq!(EPSet::multiples(2).complement(), z_odd());
    }

    #[test]
    fn four_z_plus_two_with_odds() {
        let u = EPSet::periodic(4, [2]).union(&z_odd());
        assert_eq!(u, EPSet::multiples(4).complement());
    }

    #[test]
    fn canonical_periods() {
        let s = EPSet::new(12, [0, 4, 8], []);
        assert_eq!(s.modulus(), 4);
        assert_eq!(s, EPSet::multiples(4));
        // A flip on a point already in the periodic part removes it.
        let t = EPSet::new(2, [0], [2, 2, 4]);
        assert!(!t.contains(4) && t.contains(2));
    }

    #[test]
    fn sumset_covers() {
        let a = z_odd().union(&EPSet::multiples(4));
        assert!(a.sumset(&EPSet::finite([0, 2])).is_full());
    }

    #[test]
    fn dif_of_squares_is_odds_and_fours() {
        // {0,1,4,9,...} is not eventually periodic, but its Dif is; check through
        // a periodic set with the same Dif instead.
        let d = EPSet::periodic(4, [0, 1, 3]);
        assert_eq!(d, z_odd().union(&EPSet::multiples(4)));
        assert_eq!(d.dif(), EPSet::integers());
    }

    #[test]
    fn subgroup_detection() {
        assert_eq!(EPSet::multiples(3).subgroup_index(), Some(Cardinal::Finite(3)));
        assert_eq!(EPSet::finite([0]).subgroup_index(), Some(Cardinal::Aleph0));
        assert_eq!(z_odd().subgroup_index(), None);
        assert_eq!(EPSet::integers().subgroup_index(), Some(Cardinal::Finite(1)));
    }

    #[test]
    fn text_round_trip() {
        let s: EPSet = "mod 4: 2 ; flips: ±1,±4".parse().unwrap();
        assert!(s.contains(-1) && s.contains(4) && s.contains(6) && !s.contains(8));
        assert_eq!(s.to_string(), "mod 4: 2 ; flips: ±1,±4");
        assert_eq!(s.to_string().parse::<EPSet>().unwrap(), s);
        let f: EPSet = "mod 1: ; flips: -3,0,+-2".parse().unwrap();
        assert_eq!(f.elements().unwrap(), vec![-3, -2, 0, 2]);
        assert_eq!(f.to_string().parse::<EPSet>().unwrap(), f);
        assert!("mod 0: ; flips:".parse::<EPSet>().is_err());
        assert!("mod 3: 5 ; flips:".parse::<EPSet>().is_err());
    }

    #[test]
    fn gaps() {
        let d = EPSet::periodic(4, [0, 1, 3]);
        assert_eq!(d.max_gap(), Some(2));
        assert_eq!(EPSet::finite([1, 2]).max_gap(), None);
        let s = EPSet::new(5, [0], [1, 2, 3, 4]);
        assert_eq!(s.max_gap(), Some(5));
    }

    #[test]
    fn scaling() {
        let s = EPSet::new(3, [1], [0]);
        let t = s.scale(-2);
        for x in -60..60 {
            let inv = x % 2 == 0 && s.contains(x / -2);
            assert_eq!(t.contains(x), inv, "{x}");
        }
    }
}
