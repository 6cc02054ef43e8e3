//! Exhaustive gap certificates for sparse sequences, and a bounded prime-difference scan.

use serde::Serialize;

use super::band::Band;
use super::primes;
use crate::error::{Error, Result};

/// `F_1 = F_2 = 1`; index 0 holds `F_0 = 0`.
pub fn fibonacci_numbers(k_max: usize) -> Vec<i64> {
    let mut f = vec![0i64, 1];
    while f.len() <= k_max {
        let n = f.len();
        f.push(f[n - 1].checked_add(f[n - 2]).expect("Fibonacci overflow"));
    }
    f
}

#[derive(Clone, Debug, Serialize)]
pub struct FibonacciRow {
    pub k: usize,
    /// `F_k`.
    pub lo: i64,
    /// `F_k + F_{k-3}`.
    pub hi: i64,
    /// `(F_k, F_k + F_{k-3}] ∩ (F - F) = ∅`.
    pub closed_empty: bool,
    /// `(F_k, F_k + F_{k-3}) ∩ (F - F) = ∅`.
    pub open_empty: bool,
    /// `(m, n, F_m - F_n)` for a difference inside the closed interval.
    pub hit: Option<(usize, usize, i64)>,
}

/// Scans every `F_m - F_n` with `m ≤ k + 3`; larger `m` give differences
/// of at least `F_{k+1}`, or exactly `F_k`, both outside the interval.
pub fn fibonacci_gap_certificate(k_lo: usize, k_hi: usize) -> Vec<FibonacciRow> {
    let f = fibonacci_numbers(k_hi + 4);
    (k_lo.max(6)..=k_hi)
        .map(|k| {
            let (lo, hi) = (f[k], f[k] + f[k - 3]);
            let mut hit = None;
            let mut open_empty = true;
            for m in 1..=k + 3 {
                for n in 1..m {
                    let d = f[m] - f[n];
                    if d > lo && d <= hi {
                        if hit.is_none() {
                            hit = Some((m, n, d));
                        }
                        if d < hi {
                            open_empty = false;
                        }
                    }
                }
            }
            FibonacciRow {
                k,
                lo,
                hi,
                closed_empty: hit.is_none(),
                open_empty,
                hit,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Pow2Row {
    pub n: u32,
    /// `J_n = (2^n, 3·2^{n-1})`, open.
    pub lo: i64,
    pub hi: i64,
    /// Each `2^a - 2^b` lies outside `J_n` by its case bound.
    pub cases_ok: bool,
    /// Exhaustive scan over exponents up to `n + 4`.
    pub scan_empty: bool,
    pub certified: bool,
}

/// `A[2] - A[2]` avoids `J_n`: for `a ≤ n` the difference is below `2^n`;
/// for `a = n + 1` it is `2^n`, `3·2^{n-1}` or at least `7·2^{n-2}`;
/// for `a ≥ n + 2` it is at least `2^{n+1}`.
pub fn pow2_gap_certificate(n_lo: u32, n_hi: u32) -> Vec<Pow2Row> {
    (n_lo.max(2)..=n_hi)
        .map(|n| {
            let p = |e: u32| 1i64 << e;
            let (lo, hi) = (p(n), 3 * p(n - 1));
            let inside = |d: i64| d > lo && d < hi;
            let mut cases_ok = true;
            let mut scan_empty = true;
            for a in 0..=n + 4 {
                for b in 0..a {
                    let d = p(a) - p(b);
                    let bound_ok = match a {
                        _ if a <= n => d < lo,
                        _ if a == n + 1 => d == lo || d == hi || d >= 7 * p(n - 2),
                        _ => d >= p(n + 1),
                    };
                    cases_ok &= bound_ok && !inside(d);
                    scan_empty &= !inside(d);
                }
            }
            Pow2Row {
                n,
                lo,
                hi,
                cases_ok,
                scan_empty,
                certified: cases_ok && scan_empty,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MailletReport {
    pub even_bound: u64,
    pub prime_bound: u64,
    /// `(e, q, q + e)` with the least such prime `q`, for each even `e`.
    pub witnesses: Vec<(u64, u64, u64)>,
    pub failures: Vec<u64>,
    /// `C(ℙ) + C(ℙ) ⊆ Dif(ℙ)` within `[-E, E]`.
    pub sums_in_dif: bool,
    /// `(C(ℙ) + C(ℙ)) ∩ C(ℙ) = ∅` within `[-E, E]`.
    pub sum_free: bool,
}

/// Every even `e ≤ E` as a difference of primes up to `P`, and the
/// index-two characterization on the window.
pub fn maillet_window(even_bound: u64, prime_bound: u64) -> Result<MailletReport> {
    if prime_bound < 2 * even_bound {
        return Err(Error::WindowTooSmall {
            window: prime_bound,
            needed: 2 * even_bound,
        });
    }
    let is_p = primes::sieve(prime_bound)?;
    let ps = primes::primes_up_to(prime_bound)?;
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for e in (2..=even_bound).step_by(2) {
        let w = ps
            .iter()
            .take_while(|&&q| q + e <= prime_bound)
            .find(|&&q| is_p[(q + e) as usize]);
        match w {
            Some(&q) => witnesses.push((e, q, q + e)),
            None => failures.push(e),
        }
    }
    // Dif(ℙ) on [-E, E]: odd d only via the prime 2, even d by the scan.
    let e = even_bound as i64;
    let found: Vec<bool> = {
        let mut v = vec![false; even_bound as usize + 1];
        v[0] = true;
        for &(d, _, _) in &witnesses {
            v[d as usize] = true;
        }
        v
    };
    let in_dif = |d: i64| {
        let a = d.unsigned_abs();
        if a % 2 == 1 {
            is_p[(a + 2) as usize]
        } else {
            found[a as usize]
        }
    };
    let c = Band::from_fn(e, |d| !in_dif(d));
    let dif = Band::from_fn(e, in_dif);
    let not_dif = Band::from_fn(e, |d| !dif.contains(d));
    let mut sums_in_dif = true;
    let mut sum_free = true;
    for x in c.members() {
        // (C + x) ∩ C and (C + x) ∖ Dif, clipped to the window.
        if c.meets_shifted(&c, x) {
            sum_free = false;
        }
        if not_dif.meets_shifted(&c, x) {
            sums_in_dif = false;
        }
        if !sum_free && !sums_in_dif {
            break;
        }
    }
    Ok(MailletReport {
        even_bound,
        prime_bound,
        witnesses,
        failures,
        sums_in_dif,
        sum_free,
    })
}
