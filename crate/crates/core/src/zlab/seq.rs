//! Integer sequences: built-in generators, OEIS b-files, and exact windowed difference sets.

use std::fmt;

use serde::Serialize;

use super::band::Band;
use super::primes;
use crate::error::{Error, Result};

/// Waring's `g(k)` for small `k`: every natural number is a sum of `g(k)` `k`-th powers.
pub const WARING_G: [(u32, u32); 6] = [(1, 1), (2, 4), (3, 9), (4, 19), (5, 37), (6, 73)];

pub const DEFAULT_WINDOW: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// `{n² : n ≥ n₀}`.
    SquaresFrom(u64),
    /// `{k^m : m ≥ 0}`.
    PowersBase(u64),
    /// `{m^k : m ≥ 0}`.
    KthPowers(u32),
    Primes,
    /// Primes without 2.
    OddPrimes,
    /// `{F_n : n ≥ 1}` with `F₁ = F₂ = 1`.
    Fibonacci,
    Factorials,
    /// `{n^n : n ≥ 1}`.
    NPowN,
    Bell,
    Catalan,
    Partition,
    Finite(Vec<i64>),
    /// Values read from a b-file.
    Custom { name: String, values: Vec<i128> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Signedness {
    AsIs,
    Symmetrized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub window: u64,
    pub signedness: Signedness,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind) -> Self {
        SequenceSpec {
            kind,
            window: DEFAULT_WINDOW,
            signedness: Signedness::AsIs,
        }
    }

    pub fn with_window(mut self, w: u64) -> Self {
        self.window = w;
        self
    }

    pub fn symmetrized(mut self) -> Self {
        self.signedness = Signedness::Symmetrized;
        self
    }

    /// Catalogue name → kind. `from` feeds `squares`, `k` feeds the power families.
    pub fn parse_kind(name: &str, from: u64, k: u64) -> Result<SequenceKind> {
        Ok(match name {
            "squares" => SequenceKind::SquaresFrom(from),
            "powers" | "powers_base" => SequenceKind::PowersBase(k),
            "kth_powers" => SequenceKind::KthPowers(k as u32),
            "primes" => SequenceKind::Primes,
            "odd_primes" => SequenceKind::OddPrimes,
            "fibonacci" => SequenceKind::Fibonacci,
            "factorials" => SequenceKind::Factorials,
            "nn" | "n^n" => SequenceKind::NPowN,
            "bell" => SequenceKind::Bell,
            "catalan" => SequenceKind::Catalan,
            "partition" => SequenceKind::Partition,
            _ => {
                if let Some(list) = name.strip_prefix("finite:") {
                    let v = list
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad term `{t}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    SequenceKind::Finite(v)
                } else {
                    return Err(Error::Parse(format!("unknown sequence `{name}`")));
                }
            }
        })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            SequenceKind::SquaresFrom(n) => format!("squares_from({n})"),
            SequenceKind::PowersBase(k) => format!("powers_base({k})"),
            SequenceKind::KthPowers(k) => format!("kth_powers({k})"),
            SequenceKind::Primes => "primes".into(),
            SequenceKind::OddPrimes => "odd_primes".into(),
            SequenceKind::Fibonacci => "fibonacci".into(),
            SequenceKind::Factorials => "factorials".into(),
            SequenceKind::NPowN => "n^n".into(),
            SequenceKind::Bell => "bell".into(),
            SequenceKind::Catalan => "catalan".into(),
            SequenceKind::Partition => "partition".into(),
            SequenceKind::Finite(v) => format!("finite({})", v.len()),
            SequenceKind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, SequenceKind::Finite(_))
    }

    /// Increasing sequences whose consecutive gaps never shrink (past the first term).
    fn gaps_nondecreasing(&self) -> bool {
        match self.kind {
            SequenceKind::SquaresFrom(_)
            | SequenceKind::Fibonacci
            | SequenceKind::Factorials
            | SequenceKind::NPowN
            | SequenceKind::Bell
            | SequenceKind::Catalan
            | SequenceKind::Partition => true,
            SequenceKind::PowersBase(k) => k >= 2,
            SequenceKind::KthPowers(k) => k >= 2,
            _ => false,
        }
    }

    /// Distinct sorted values `≤ bound`, at most `max_count` of them.
    fn values(&self, bound: i128, max_count: usize) -> Vec<i128> {
        let mut out: Vec<i128> = Vec::new();
        let push = |v: i128, out: &mut Vec<i128>| -> bool {
            if v > bound || out.len() >= max_count {
                return false;
            }
            if out.last() != Some(&v) {
                out.push(v);
            }
            true
        };
        match &self.kind {
            SequenceKind::SquaresFrom(n0) => {
                let mut n = *n0 as i128;
                while push(n * n, &mut out) {
                    n += 1;
                }
            }
            SequenceKind::PowersBase(k) => {
                let k = *k as i128;
                let mut v: i128 = 1;
                while push(v, &mut out) && k >= 2 {
                    match v.checked_mul(k) {
                        Some(x) => v = x,
                        None => break,
                    }
                }
            }
            SequenceKind::KthPowers(k) => {
                let mut m: i128 = 0;
                loop {
                    let Some(v) = checked_pow(m, *k) else { break };
                    if !push(v, &mut out) {
                        break;
                    }
                    m += 1;
                }
            }
            SequenceKind::Primes | SequenceKind::OddPrimes => {
                let cap = if max_count == usize::MAX {
                    bound.clamp(0, primes::SIEVE_CAP as i128) as u64
                } else {
                    (max_count as u64 * 30 + 100).min(primes::SIEVE_CAP)
                };
                let skip2 = self.kind == SequenceKind::OddPrimes;
                for p in primes::primes_up_to(cap).expect("within cap") {
                    if skip2 && p == 2 {
                        continue;
                    }
                    if !push(p as i128, &mut out) {
                        break;
                    }
                }
            }
            SequenceKind::Fibonacci => {
                let (mut a, mut b): (i128, i128) = (1, 1);
                while push(a, &mut out) {
                    let Some(c) = a.checked_add(b) else { break };
                    (a, b) = (b, c);
                }
            }
            SequenceKind::Factorials => {
                let (mut f, mut n): (i128, i128) = (1, 1);
                while push(f, &mut out) {
                    match f.checked_mul(n) {
                        Some(x) => f = x,
                        None => break,
                    }
                    n += 1;
                }
            }
            SequenceKind::NPowN => {
                let mut n: i128 = 1;
                while let Some(v) = checked_pow(n, n as u32) {
                    if !push(v, &mut out) {
                        break;
                    }
                    n += 1;
                }
            }
            SequenceKind::Bell => {
                // Bell triangle: each row starts with the last entry of the previous one.
                let mut row: Vec<i128> = vec![1];
                push(1, &mut out);
                'outer: loop {
                    let mut next = Vec::with_capacity(row.len() + 1);
                    next.push(*row.last().unwrap());
                    for &x in &row {
                        match next.last().unwrap().checked_add(x) {
                            Some(v) => next.push(v),
                            None => break 'outer,
                        }
                    }
                    if !push(next[0], &mut out) {
                        break;
                    }
                    row = next;
                }
            }
            SequenceKind::Catalan => {
                // C_{n+1} = C_n · 2(2n+1) / (n+2).
                let (mut c, mut n): (i128, i128) = (1, 0);
                while push(c, &mut out) {
                    match c.checked_mul(2 * (2 * n + 1)) {
                        Some(x) => c = x / (n + 2),
                        None => break,
                    }
                    n += 1;
                }
            }
            SequenceKind::Partition => {
                // Euler's pentagonal recurrence.
                let mut p: Vec<i128> = vec![1];
                push(1, &mut out);
                'grow: for n in 1i64.. {
                    let mut s: i128 = 0;
                    for k in 1i64.. {
                        let g1 = k * (3 * k - 1) / 2;
                        if g1 > n {
                            break;
                        }
                        let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
                        s += sign * p[(n - g1) as usize];
                        let g2 = k * (3 * k + 1) / 2;
                        if g2 <= n {
                            s += sign * p[(n - g2) as usize];
                        }
                        if s.abs() > i128::MAX / 4 {
                            break 'grow;
                        }
                    }
                    p.push(s);
                    if !push(s, &mut out) {
                        break;
                    }
                }
            }
            SequenceKind::Finite(v) => {
                let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
                v.sort_unstable();
                v.dedup();
                for x in v {
                    if !push(x, &mut out) {
                        break;
                    }
                }
            }
            SequenceKind::Custom { values, .. } => {
                let mut v = values.clone();
                v.sort_unstable();
                v.dedup();
                for x in v {
                    if !push(x, &mut out) {
                        break;
                    }
                }
            }
        }
        out
    }

    /// Terms with `|t| ≤ window`, sorted; symmetrized adds negatives.
    pub fn terms(&self) -> Terms {
        let w = self.window as i128;
        let all_custom = match &self.kind {
            SequenceKind::Custom { values, .. } => Some(values),
            _ => None,
        };
        let vals = self.values(w, usize::MAX);
        let mut v: Vec<i64> = vals.into_iter().filter(|&x| x >= -w).map(|x| x as i64).collect();
        if self.signedness == Signedness::Symmetrized {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            v.extend(neg);
            v.sort_unstable();
            v.dedup();
        }
        let dropped = all_custom.map_or(0, |vals| vals.iter().filter(|x| x.abs() > w).count());
        Terms { values: v, dropped }
    }

    /// The first `count` distinct values, for growth tests.
    pub fn growth_terms(&self, count: usize) -> Vec<i128> {
        self.values(i128::MAX, count)
    }

    /// `Dif(A) ∩ [-W, W]`, using `W = window`.
    pub fn dif_window(&self) -> DifWindow {
        let w = self.window as i64;
        let mut bits = vec![false; (2 * w + 1) as usize];
        let vals: Vec<i64>;
        let mut exact;
        if self.signedness == Signedness::AsIs && (self.is_finite() || self.gaps_nondecreasing()) {
            exact = true;
            if self.is_finite() {
                vals = self.values(i128::MAX, usize::MAX).into_iter().map(|x| x as i64).collect();
            } else {
                // Once a gap exceeds W all later gaps do too, and no later term is
                // within W of anything: stop at the first such gap.
                let mut out = Vec::new();
                let mut bound: i128 = (4 * w as i128).max(64);
                loop {
                    let v = self.values(bound, usize::MAX);
                    if let Some(k) = v.windows(2).position(|p| p[1] - p[0] > w as i128) {
                        out.extend(v[..=k].iter().map(|&x| x as i64));
                        break;
                    }
                    if v.len() < 2 || bound > (i64::MAX / 4) as i128 {
                        out.extend(v.iter().map(|&x| x as i64));
                        exact = false;
                        break;
                    }
                    bound *= 4;
                }
                vals = out;
            }
        } else {
            // Lower approximation from the terms up to 2W, by shifted unions.
            let t = self.clone().with_window(self.window.saturating_mul(2));
            let vals = t.terms().values;
            let r = 2 * w;
            let terms = Band::from_fn(r, |x| vals.binary_search(&x).is_ok());
            let mut out = Band::empty(r);
            for (i, &a) in vals.iter().enumerate() {
                out.or_shifted(&terms, -a);
                if i % 64 == 63 && (-w..=w).all(|x| out.contains(x)) {
                    break;
                }
            }
            let full = (-w..=w).all(|x| out.contains(x));
            return DifWindow::from_fn(w, |x| out.contains(x), full);
        }
        for i in 0..vals.len() {
            for j in i..vals.len() {
                let d = vals[j] - vals[i];
                if d > w {
                    break;
                }
                bits[(w + d) as usize] = true;
                bits[(w - d) as usize] = true;
            }
        }
        if !exact && bits.iter().all(|&b| b) {
            exact = true;
        }
        DifWindow { w, bits, exact }
    }
}

fn checked_pow(b: i128, e: u32) -> Option<i128> {
    let mut r: i128 = 1;
    for _ in 0..e {
        r = r.checked_mul(b)?;
    }
    Some(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Terms {
    pub values: Vec<i64>,
    /// b-file values outside the window.
    pub dropped: usize,
}

/// Membership on `[-w, w]`; exact when every difference in range was found.
#[derive(Clone, Debug)]
pub struct DifWindow {
    pub w: i64,
    bits: Vec<bool>,
    pub exact: bool,
}

impl DifWindow {
    pub fn from_fn(w: i64, f: impl Fn(i64) -> bool, exact: bool) -> Self {
        DifWindow {
            w,
            bits: (-w..=w).map(f).collect(),
            exact,
        }
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        x.abs() <= self.w && self.bits[(x + self.w) as usize]
    }

    pub fn members(&self) -> impl Iterator<Item = i64> + '_ {
        (-self.w..=self.w).filter(move |&x| self.contains(x))
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (window {})", self.name(), self.window)
    }
}

/// Parses OEIS b-file text: `index value` lines, `#` comments.
pub fn parse_bfile(name: &str, text: &str) -> Result<SequenceKind> {
    let mut values = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(i), Some(v)) = (it.next(), it.next()) else {
            return Err(Error::Parse(format!("b-file line {}: expected `index value`", ln + 1)));
        };
        i.parse::<i64>()
            .map_err(|_| Error::Parse(format!("b-file line {}: bad index `{i}`", ln + 1)))?;
        match v.parse::<i128>() {
            Ok(x) => values.push(x),
            // Too large for i128: certainly outside any window.
            Err(_) if v.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) => {
                values.push(if v.starts_with('-') { i128::MIN } else { i128::MAX })
            }
            Err(_) => return Err(Error::Parse(format!("b-file line {}: bad value `{v}`", ln + 1))),
        }
    }
    Ok(SequenceKind::Custom {
        name: name.to_string(),
        values,
    })
}
