//! Finite groups given by Cayley tables, and subsets of them.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Largest order any constructor accepts unless told otherwise.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

const ASSOC_SEED: u64 = 0x5eed_cafe;

/// A group on `0..n` with identity `0`. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

impl FiniteGroup {
    /// Construction from a table already known to be a group with identity at 0.
    fn from_trusted(name: String, n: usize, table: Vec<u32>) -> Self {
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            let row = &table[i * n..(i + 1) * n];
            inverse[i] = row.iter().position(|&x| x == 0).expect("latin row") as u32;
        }
        FiniteGroup {
            name,
            n,
            table,
            inverse,
        }
    }

    /// Validates an arbitrary table, relabeling so the identity becomes 0.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::BadTable(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= n) {
                return Err(Error::BadTable(format!("row {i} has entry {x} >= {n}")));
            }
        }
        check_latin(rows)?;
        let e = (0..n)
            .find(|&e| (0..n).all(|j| rows[e][j] == j && rows[j][e] == j))
            .ok_or(Error::NotAGroup {
                reason: "no identity element",
                a: 0,
                b: 0,
                c: 0,
            })?;
        // Swap labels e and 0.
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[relabel(i) * n + relabel(j)] = relabel(rows[i][j]) as u32;
            }
        }
        let g = FiniteGroup::from_trusted(name.into(), n, table);
        g.check_associative()?;
        Ok(g)
    }

    /// Parses the Cayley table text format: first line `n`, then `n` rows.
    pub fn from_cayley_table(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or_else(|| Error::BadTable("missing order line".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::BadTable(format!("bad order line `{first}`")))?;
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::BadTable(format!("row {i}: bad entry `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::BadTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        FiniteGroup::from_rows(format!("table{n}"), &rows)
    }

    pub fn from_cayley_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let mut g = FiniteGroup::from_cayley_table(&text)?;
        g.name = format!("file:{}", path.display());
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let bad = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
        };
        let fail = |a, b, c| Error::NotAGroup {
            reason: "associativity fails",
            a,
            b,
            c,
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
            for _ in 0..10 * n * n {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        FiniteGroup::cyclic_capped(n, DEFAULT_MAX_ORDER)
    }

    pub fn cyclic_capped(n: usize, max_order: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnknownName("Z0".into()));
        }
        if n > max_order {
            return Err(Error::Overflow {
                order: n,
                max: max_order,
            });
        }
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = ((i + j) % n) as u32;
            }
        }
        Ok(FiniteGroup::from_trusted(format!("Z{n}"), n, table))
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        FiniteGroup::direct_product_capped(a, b, DEFAULT_MAX_ORDER)
    }

    /// Element `(i1, i2)` gets index `i1 * n2 + i2`.
    pub fn direct_product_capped(a: &FiniteGroup, b: &FiniteGroup, max_order: usize) -> Result<Self> {
        let (n1, n2) = (a.n, b.n);
        let n = n1
            .checked_mul(n2)
            .filter(|&n| n <= max_order)
            .ok_or(Error::Overflow {
                order: n1.saturating_mul(n2),
                max: max_order,
            })?;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (x1, x2) = (x / n2, x % n2);
            for y in 0..n {
                let (y1, y2) = (y / n2, y % n2);
                table[x * n + y] = (a.mul(x1, y1) * n2 + b.mul(x2, y2)) as u32;
            }
        }
        Ok(FiniteGroup::from_trusted(
            format!("{}x{}", a.name, b.name),
            n,
            table,
        ))
    }

    /// Symmetric group on `k` points, permutations in lexicographic order.
    pub fn symmetric(k: usize) -> Result<Self> {
        if !(1..=5).contains(&k) {
            return Err(Error::UnknownName(format!("S{k}")));
        }
        Ok(perm_group(format!("S{k}"), all_perms(k)))
    }

    pub fn alternating(k: usize) -> Result<Self> {
        if !(1..=5).contains(&k) {
            return Err(Error::UnknownName(format!("A{k}")));
        }
        let even = all_perms(k).into_iter().filter(|p| is_even(p)).collect();
        Ok(perm_group(format!("A{k}"), even))
    }

    /// Dihedral group of order `2k`; `r^a s^e` has index `a + k*e`.
    pub fn dihedral(order: usize) -> Result<Self> {
        if order < 2 || order % 2 != 0 || order / 2 > 16 {
            return Err(Error::UnknownName(format!("D{order}")));
        }
        let k = order / 2;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (a, e) = (x % k, x / k);
            for y in 0..order {
                let (b, f) = (y % k, y / k);
                let rot = if e == 0 { (a + b) % k } else { (a + k - b) % k };
                table[x * order + y] = (rot + k * ((e + f) % 2)) as u32;
            }
        }
        Ok(FiniteGroup::from_trusted(format!("D{order}"), order, table))
    }

    /// Dicyclic group of order `4m` (quaternion for 8); `a^k x^e` has index `k + 2m*e`,
    /// with `x² = a^m` and `x a x⁻¹ = a⁻¹`.
    pub fn dicyclic(order: usize) -> Result<Self> {
        if order < 8 || order % 4 != 0 || order > 64 {
            return Err(Error::UnknownName(format!("Q{order}")));
        }
        let (m, n2) = (order / 4, order / 2);
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (k, e) = (x % n2, x / n2);
            for y in 0..order {
                let (l, f) = (y % n2, y / n2);
                let z = match (e, f) {
                    (0, _) => (k + l) % n2 + n2 * f,
                    (_, 0) => (k + n2 - l) % n2 + n2,
                    _ => (k + n2 - l + m) % n2,
                };
                table[x * order + y] = z as u32;
            }
        }
        Ok(FiniteGroup::from_trusted(format!("Q{order}"), order, table))
    }

    /// Looks up a single catalogue name: `Zn`, `Cn`, `Zn^m`, `Sn`, `An`, `D2n`, `Q4m`.
    pub fn builtin(name: &str) -> Result<Self> {
        FiniteGroup::builtin_capped(name, DEFAULT_MAX_ORDER)
    }

    pub fn builtin_capped(name: &str, max_order: usize) -> Result<Self> {
        let unknown = || Error::UnknownName(name.to_string());
        let (head, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
        let (num, pow) = match rest.split_once('^') {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let n: usize = num.parse().map_err(|_| unknown())?;
        let m: Option<usize> = match pow {
            Some(p) => Some(p.parse().map_err(|_| unknown())?),
            None => None,
        };
        let base = match head {
            "Z" | "C" => FiniteGroup::cyclic_capped(n, max_order).map_err(|e| match e {
                Error::UnknownName(_) => unknown(),
                e => e,
            })?,
            "S" if m.is_none() => FiniteGroup::symmetric(n).map_err(|_| unknown())?,
            "A" if m.is_none() => FiniteGroup::alternating(n).map_err(|_| unknown())?,
            "D" if m.is_none() => FiniteGroup::dihedral(n).map_err(|_| unknown())?,
            "Q" if m.is_none() => FiniteGroup::dicyclic(n).map_err(|_| unknown())?,
            _ => return Err(unknown()),
        };
        if base.n > max_order {
            return Err(Error::Overflow {
                order: base.n,
                max: max_order,
            });
        }
        match m {
            None => Ok(base),
            Some(0) => Err(unknown()),
            Some(m) => {
                let mut g = base.clone();
                for _ in 1..m {
                    g = FiniteGroup::direct_product_capped(&g, &base, max_order)?;
                }
                g.name = format!("{}^{m}", base.name);
                Ok(g)
            }
        }
    }

    /// Parses a group spec: `file:<path>` or catalogue names joined by `x`.
    pub fn parse_spec(spec: &str, max_order: usize) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix("file:") {
            let g = FiniteGroup::from_cayley_file(Path::new(path))?;
            if g.n > max_order {
                return Err(Error::Overflow {
                    order: g.n,
                    max: max_order,
                });
            }
            return Ok(g);
        }
        let mut parts = spec.split('x');
        let first = parts.next().unwrap_or("");
        let mut g = FiniteGroup::builtin_capped(first, max_order)?;
        for p in parts {
            let h = FiniteGroup::builtin_capped(p, max_order)?;
            g = FiniteGroup::direct_product_capped(&g, &h, max_order)?;
        }
        Ok(g)
    }

    /// The same set with multiplication reversed: `x * y` becomes `y * x`.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.n;
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.table[j * n + i];
            }
        }
        FiniteGroup {
            name: format!("{}^op", self.name),
            n,
            table,
            inverse: self.inverse.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.n..(a + 1) * self.n].iter().map(|&x| x as usize)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Re-runs the construction checks; builtins skip them, tests use this.
    pub fn validate(&self) -> Result<()> {
        let rows: Vec<Vec<usize>> = (0..self.n).map(|i| self.row(i).collect()).collect();
        check_latin(&rows)?;
        for i in 0..self.n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(Error::NotAGroup {
                    reason: "index 0 is not the identity",
                    a: 0,
                    b: i,
                    c: i,
                });
            }
            if self.mul(i, self.inv(i)) != 0 {
                return Err(Error::NotAGroup {
                    reason: "bad inverse",
                    a: i,
                    b: self.inv(i),
                    c: 0,
                });
            }
        }
        self.check_associative()
    }

    pub fn empty_set(&self) -> GroupSubset {
        GroupSubset::empty(self.n)
    }

    pub fn whole(&self) -> GroupSubset {
        GroupSubset {
            bits: BitSet::full(self.n),
        }
    }

    pub fn identity_set(&self) -> GroupSubset {
        GroupSubset {
            bits: BitSet::from_indices(self.n, [0]),
        }
    }

    pub fn subset(&self, elems: &[usize]) -> Result<GroupSubset> {
        GroupSubset::from_elems(self.n, elems)
    }

    pub(crate) fn check_subset(&self, a: &GroupSubset) -> Result<()> {
        if a.bits.capacity() != self.n {
            return Err(Error::OrderMismatch {
                got: a.bits.capacity(),
                want: self.n,
            });
        }
        Ok(())
    }

    pub fn inverse_set(&self, a: &GroupSubset) -> GroupSubset {
        GroupSubset {
            bits: BitSet::from_indices(self.n, a.iter().map(|x| self.inv(x))),
        }
    }

    /// `AB = {ab : a ∈ A, b ∈ B}`.
    pub fn product_set(&self, a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
        let mut out = BitSet::new(self.n);
        let bs = b.to_vec();
        for x in a.iter() {
            let row = &self.table[x * self.n..(x + 1) * self.n];
            for &y in &bs {
                out.insert(row[y] as usize);
            }
        }
        GroupSubset { bits: out }
    }

    /// `gA`.
    pub fn left_translate(&self, g: usize, a: &GroupSubset) -> GroupSubset {
        GroupSubset {
            bits: BitSet::from_indices(self.n, a.iter().map(|x| self.mul(g, x))),
        }
    }

    /// `Ag`.
    pub fn right_translate(&self, a: &GroupSubset, g: usize) -> GroupSubset {
        GroupSubset {
            bits: BitSet::from_indices(self.n, a.iter().map(|x| self.mul(x, g))),
        }
    }

    pub fn is_subgroup(&self, h: &GroupSubset) -> bool {
        if !h.contains(0) {
            return false;
        }
        let v = h.to_vec();
        v.iter()
            .all(|&x| h.contains(self.inv(x)) && v.iter().all(|&y| h.contains(self.mul(x, y))))
    }

    /// Smallest subgroup containing `a`, by closure under multiplication by the generators.
    pub fn generated_subgroup(&self, a: &GroupSubset) -> GroupSubset {
        let gens: Vec<usize> = a.iter().collect();
        let mut seen = BitSet::new(self.n);
        seen.insert(0);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &s in &gens {
                for y in [self.mul(x, s), self.mul(x, self.inv(s))] {
                    if !seen.contains(y) {
                        seen.insert(y);
                        stack.push(y);
                    }
                }
            }
        }
        GroupSubset { bits: seen }
    }

    /// True when `gAg⁻¹ = A` for every `g`.
    pub fn is_normal_subset(&self, a: &GroupSubset) -> bool {
        (0..self.n).all(|g| {
            let gi = self.inv(g);
            a.iter().all(|x| a.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    /// All subgroups, sorted by size then lexicographically.
    pub fn subgroups(&self) -> Vec<GroupSubset> {
        let trivial = self.identity_set();
        let mut found = vec![trivial.clone()];
        let mut seen = std::collections::HashSet::new();
        seen.insert(trivial.bits.clone());
        let mut i = 0;
        while i < found.len() {
            let h = found[i].clone();
            for g in 0..self.n {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.insert(g);
                let k = self.generated_subgroup(&gens);
                if seen.insert(k.bits.clone()) {
                    found.push(k);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.bits.lex_cmp(&b.bits)));
        found
    }

    /// The subgroup `h` as a group in its own right, with the embedding `local -> global`.
    pub fn induced(&self, h: &GroupSubset) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        let emb: Vec<usize> = h.to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &x) in emb.iter().enumerate() {
            local[x] = i;
        }
        let k = emb.len();
        let mut table = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = local[self.mul(emb[i], emb[j])] as u32;
            }
        }
        let name = format!("{}<{}>", self.name, k);
        Ok((FiniteGroup::from_trusted(name, k, table), emb))
    }
}

fn check_latin(rows: &[Vec<usize>]) -> Result<()> {
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        let mut at = vec![usize::MAX; n];
        for (j, &x) in r.iter().enumerate() {
            if at[x] != usize::MAX {
                return Err(Error::NotAGroup {
                    reason: "repeated entry in row",
                    a: i,
                    b: at[x],
                    c: j,
                });
            }
            at[x] = j;
        }
    }
    for j in 0..n {
        let mut at = vec![usize::MAX; n];
        for (i, r) in rows.iter().enumerate() {
            let x = r[j];
            if at[x] != usize::MAX {
                return Err(Error::NotAGroup {
                    reason: "repeated entry in column",
                    a: at[x],
                    b: i,
                    c: j,
                });
            }
            at[x] = i;
        }
    }
    Ok(())
}

fn all_perms(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Group of permutations under `(p*q)(i) = p(q(i))`; the first entry must be the identity.
fn perm_group(name: String, perms: Vec<Vec<usize>>) -> FiniteGroup {
    let n = perms.len();
    let index: std::collections::HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut table = vec![0u32; n * n];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let r: Vec<usize> = q.iter().map(|&x| p[x]).collect();
            table[i * n + j] = index[r.as_slice()] as u32;
        }
    }
    FiniteGroup::from_trusted(name, n, table)
}

/// A subset of a finite group, stored as a bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    bits: BitSet,
}

impl GroupSubset {
    pub fn empty(order: usize) -> Self {
        GroupSubset {
            bits: BitSet::new(order),
        }
    }

    pub fn from_elems(order: usize, elems: &[usize]) -> Result<Self> {
        let mut bits = BitSet::new(order);
        for &e in elems {
            if e >= order {
                return Err(Error::ElementOutOfRange { elem: e, order });
            }
            bits.insert(e);
        }
        Ok(GroupSubset { bits })
    }

    pub fn from_bits(bits: BitSet) -> Self {
        GroupSubset { bits }
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.bits.capacity()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.remove(x);
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.to_vec()
    }

    pub fn union(&self, o: &GroupSubset) -> GroupSubset {
        GroupSubset {
            bits: self.bits.union(&o.bits),
        }
    }

    pub fn intersection(&self, o: &GroupSubset) -> GroupSubset {
        GroupSubset {
            bits: self.bits.intersection(&o.bits),
        }
    }

    pub fn difference(&self, o: &GroupSubset) -> GroupSubset {
        GroupSubset {
            bits: self.bits.difference(&o.bits),
        }
    }

    pub fn complement(&self) -> GroupSubset {
        GroupSubset {
            bits: self.bits.complement(),
        }
    }

    pub fn is_subset(&self, o: &GroupSubset) -> bool {
        self.bits.is_subset(&o.bits)
    }

    pub fn lex_cmp(&self, o: &GroupSubset) -> std::cmp::Ordering {
        self.bits.lex_cmp(&o.bits)
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for GroupSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
