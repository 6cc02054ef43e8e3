//! Gap structure, growth and difference length of integer sequences.

use serde::Serialize;

use super::band::Band;
use super::epset::EPSet;
use super::infer::{infer_epset, window_data, Inferred, Transform};
use super::seq::{SequenceKind, SequenceSpec, WARING_G};
use crate::error::{Error, Result};

pub const MIN_ANALYSIS_WINDOW: u64 = 1000;
pub const GAP_PREFIXES: u32 = 6;
pub const MIN_GROWTH_TERMS: usize = 20;
pub const GROWTH_TERMS: usize = 40;

/// Guard band used by the analyses: a tenth of the window.
pub fn default_guard(spec: &SequenceSpec) -> u64 {
    (spec.window / 10).max(1)
}

/// Exact Dif(A) as an EPSet when inference succeeds on exact window data.
pub fn exact_dif(spec: &SequenceSpec) -> Result<Option<EPSet>> {
    Ok(match infer_epset(spec, Transform::Dif, default_guard(spec), 64)? {
        Inferred::Fitted { set, window_exact: true } => Some(set),
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GapVerdict {
    /// Dif(A) is an EPSet with residues; `bound` is its period.
    Syndetic { bound: u64, max_gap: u64 },
    NonSyndeticEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapAnalysis {
    pub sequence: String,
    pub window: u64,
    pub max_gap: u64,
    /// `(prefix bound, max gap of Dif(A) ∩ [0, bound])`.
    pub gap_trend: Vec<(u64, u64)>,
    pub verdict: GapVerdict,
    pub dif: Option<EPSet>,
}

/// Longest run of non-members in `[0, p]`, plus one; the trailing run counts.
fn prefix_gap(member: &dyn Fn(i64) -> bool, p: i64) -> u64 {
    let (mut best, mut run) = (0i64, 0i64);
    for x in 0..=p {
        if member(x) {
            run = 0;
        } else {
            run += 1;
            best = best.max(run);
        }
    }
    (best + 1) as u64
}

pub fn gap_analysis(spec: &SequenceSpec) -> Result<GapAnalysis> {
    if spec.window < MIN_ANALYSIS_WINDOW {
        return Err(Error::WindowTooSmall {
            window: spec.window,
            needed: MIN_ANALYSIS_WINDOW,
        });
    }
    let dif = exact_dif(spec)?;
    let data = window_data(spec, Transform::Dif);
    let w = spec.window as i64;
    let member = |x: i64| data.contains(x);
    let gap_trend: Vec<(u64, u64)> = (0..GAP_PREFIXES)
        .map(|i| {
            let p = w >> (GAP_PREFIXES - 1 - i);
            (p as u64, prefix_gap(&member, p))
        })
        .collect();
    let max_gap = gap_trend.last().map_or(0, |t| t.1);
    let verdict = match &dif {
        Some(d) if d.has_residues() => GapVerdict::Syndetic {
            bound: d.modulus() as u64,
            max_gap: d.max_gap().unwrap() as u64,
        },
        Some(_) => GapVerdict::NonSyndeticEvidence,
        None if gap_trend.windows(2).all(|p| p[1].1 > p[0].1) => GapVerdict::NonSyndeticEvidence,
        None => GapVerdict::Inconclusive,
    };
    Ok(GapAnalysis {
        sequence: spec.name(),
        window: spec.window,
        max_gap,
        gap_trend,
        verdict,
        dif,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Flagged,
    NotFlagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub sequence: String,
    pub terms: usize,
    pub verdict: Growth,
    /// `a_n - 2a_{n-1}` over the tested tail, as decimal strings.
    pub tail: Vec<String>,
}

/// Positive and strictly increasing over the last half.
fn tail_grows(d: &[i128]) -> bool {
    let tail = &d[d.len() / 2..];
    tail.iter().all(|&x| x > 0) && tail.windows(2).all(|p| p[1] > p[0])
}

/// “`a_n - 2a_{n-1} → ∞`” tested on the generated prefix (mirrored for decreasing sequences).
pub fn growth_criterion(spec: &SequenceSpec) -> Result<GrowthReport> {
    let a = spec.growth_terms(GROWTH_TERMS);
    if a.len() < MIN_GROWTH_TERMS {
        return Err(Error::TooFewTerms {
            got: a.len(),
            needed: MIN_GROWTH_TERMS,
        });
    }
    let diffs = |s: &[i128]| -> Vec<i128> {
        s.windows(2)
            .map_while(|p| p[0].checked_mul(2).and_then(|t| p[1].checked_sub(t)))
            .collect()
    };
    let up = diffs(&a);
    let neg: Vec<i128> = a.iter().rev().map(|x| -x).collect();
    let down = diffs(&neg);
    let flagged = (up.len() >= MIN_GROWTH_TERMS / 2 && tail_grows(&up))
        || (down.len() >= MIN_GROWTH_TERMS / 2 && tail_grows(&down));
    Ok(GrowthReport {
        sequence: spec.name(),
        terms: a.len(),
        verdict: if flagged { Growth::Flagged } else { Growth::NotFlagged },
        tail: up[up.len() / 2..].iter().map(i128::to_string).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowDepth {
    pub radius: u64,
    /// `|Dif^n(A) ∩ [-x, x]|` for n = 1, 2, …
    pub sizes: Vec<u64>,
    /// First n with `Dif^{n+1}` equal to `Dif^n` on the window.
    pub saturated_at: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DlZReport {
    pub sequence: String,
    /// `dl^∞(A)` when the difference chain closes in EPSet algebra.
    pub exact: Option<u32>,
    pub certified_lower: u32,
    /// `Dif^n(A)` for n = 1, 2, … when exact.
    pub chain: Vec<EPSet>,
    pub windows: Vec<WindowDepth>,
    /// Waring's `g(k)` for the k-th powers.
    pub waring_bound: Option<u32>,
}

pub const DL_WINDOWS: [i64; 3] = [1 << 8, 1 << 12, 1 << 16];

pub fn dl_infinity_z(spec: &SequenceSpec, max_n: u32) -> Result<DlZReport> {
    if spec.window < MIN_ANALYSIS_WINDOW {
        return Err(Error::WindowTooSmall {
            window: spec.window,
            needed: MIN_ANALYSIS_WINDOW,
        });
    }
    let waring_bound = match spec.kind {
        SequenceKind::KthPowers(k) => WARING_G.iter().find(|(j, _)| *j == k).map(|&(_, g)| g),
        _ => None,
    };
    let mut report = DlZReport {
        sequence: spec.name(),
        exact: None,
        certified_lower: 1,
        chain: Vec::new(),
        windows: Vec::new(),
        waring_bound,
    };
    if let Some(d1) = exact_dif(spec)? {
        let this = infer_epset(spec, Transform::Identity, default_guard(spec), 64)?;
        if this.set() == Some(&d1) {
            report.exact = Some(0);
            report.certified_lower = 0;
            report.chain.push(d1);
            return Ok(report);
        }
        let mut cur = d1;
        for n in 1..=max_n.max(1) {
            let next = cur.dif();
            report.chain.push(cur.clone());
            if next == cur {
                report.exact = Some(n);
                report.certified_lower = n;
                return Ok(report);
            }
            cur = next;
        }
        report.certified_lower = max_n.max(1) + 1;
        return Ok(report);
    }

    let data = spec.clone().with_window(spec.window.max(*DL_WINDOWS.last().unwrap() as u64)).dif_window();
    for &x in &DL_WINDOWS {
        let mut cur = Band::from_window(&data, x);
        let mut sizes = vec![cur.count() as u64];
        let mut saturated_at = None;
        for n in 1..=max_n.max(1) {
            let next = cur.dif();
            if n == 1 && data.exact && next.members().any(|v| !cur.contains(v)) {
                // Dif² has a member the exact Dif window lacks.
                report.certified_lower = 2;
            }
            if next == cur {
                saturated_at = Some(n);
                break;
            }
            sizes.push(next.count() as u64);
            cur = next;
        }
        report.windows.push(WindowDepth {
            radius: x as u64,
            sizes,
            saturated_at,
        });
    }
    Ok(report)
}
