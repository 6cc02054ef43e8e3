//! Necessary conditions for an integer set to be non-index-stable.
//!
//! (a) `A` and `ℤ ∖ A` are infinite; (b) `A - A` is not a subgroup;
//! (c) `A` has a finite RSFA number; (d) `A - A` is syndetic;
//! (e) `(A - A) ∩ (X - X) = {0}` has a finite maximal solution.
//! Any failing condition makes `A` index stable.

use serde::Serialize;

use super::analysis::{exact_dif, gap_analysis, growth_criterion, GapVerdict, Growth};
use super::certificates::{fibonacci_gap_certificate, pow2_gap_certificate};
use super::rsfa_z::{minimal_radius, rsfa_z, ZSubfactorReport};
use super::seq::{SequenceKind, SequenceSpec};
use crate::error::Result;
use crate::types::{Cardinal, ProofStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub label: &'static str,
    pub statement: &'static str,
    pub status: Status,
    pub basis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScreenVerdict {
    IndexStable { index: Cardinal, by: &'static str },
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub lower: Cardinal,
    pub upper: Cardinal,
    pub stable: bool,
    pub upper_status: ProofStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct Screen {
    pub sequence: String,
    pub conditions: Vec<Condition>,
    pub verdict: ScreenVerdict,
    /// The exact engine's answer when the screen is silent and Dif(A) is known.
    pub resolution: Option<Resolution>,
}

impl Screen {
    pub fn condition(&self, label: &str) -> &Condition {
        self.conditions.iter().find(|c| c.label == label).expect("known label")
    }
}

/// Certified non-syndeticity for families with an interval certificate.
fn certificate(kind: &SequenceKind) -> Option<String> {
    match kind {
        SequenceKind::Fibonacci => fibonacci_gap_certificate(6, 40)
            .iter()
            .all(|r| r.open_empty)
            .then(|| "Fibonacci interval certificate (F_k, F_k + F_{k-3}) for 6 ≤ k ≤ 40".to_string()),
        SequenceKind::PowersBase(2) => pow2_gap_certificate(2, 30)
            .iter()
            .all(|r| r.certified)
            .then(|| "powers-of-2 interval certificate (2^n, 3·2^(n-1)) for 2 ≤ n ≤ 30".to_string()),
        _ => None,
    }
}

pub fn criteria_screen(spec: &SequenceSpec) -> Result<Screen> {
    let cond = |label, statement, status, basis: String| Condition {
        label,
        statement,
        status,
        basis,
    };
    const A: &str = "A and its complement are infinite";
    const B: &str = "A - A is not a subgroup";
    const C: &str = "A has a finite RSFA number";
    const D: &str = "A - A is syndetic";
    const E: &str = "(A - A) ∩ (X - X) = {0} has a finite maximal solution";

    if spec.is_finite() {
        let why = || "A is finite".to_string();
        return Ok(Screen {
            sequence: spec.name(),
            conditions: vec![
                cond("a", A, Status::Fails, why()),
                cond("b", B, Status::Holds, "finite A - A is not a subgroup unless A is a point".into()),
                cond("c", C, Status::Fails, why()),
                cond("d", D, Status::Fails, "a finite set is not syndetic".into()),
                cond("e", E, Status::Fails, why()),
            ],
            verdict: ScreenVerdict::IndexStable {
                index: Cardinal::Aleph0,
                by: "a",
            },
            resolution: None,
        });
    }

    let infinite = !matches!(spec.kind, SequenceKind::Custom { .. });
    let a = if infinite {
        cond("a", A, Status::Holds, "infinite sequence of naturals".into())
    } else {
        cond("a", A, Status::Unknown, "b-file data is a finite prefix".into())
    };

    let dif = exact_dif(spec)?;
    let gaps = gap_analysis(spec)?;
    let growth = growth_criterion(spec).ok();
    let cert = certificate(&spec.kind);

    let mut nonsyndetic: Vec<String> = Vec::new();
    if let Some(c) = &cert {
        nonsyndetic.push(c.clone());
    }
    if growth.as_ref().is_some_and(|g| g.verdict == Growth::Flagged) {
        nonsyndetic.push("a_n - 2a_(n-1) increases without bound (growth criterion)".into());
    }
    if gaps.verdict == GapVerdict::NonSyndeticEvidence {
        nonsyndetic.push(format!("gaps of A - A grow across prefixes {:?}", gaps.gap_trend));
    }

    let d = match &dif {
        Some(s) if s.has_residues() => cond("d", D, Status::Holds, format!("A - A = {s}")),
        _ if !nonsyndetic.is_empty() => cond("d", D, Status::Fails, nonsyndetic.join("; ")),
        _ => cond("d", D, Status::Unknown, "A - A not representable on the window".into()),
    };

    let b = match &dif {
        Some(s) => match s.subgroup_index() {
            Some(_) => cond("b", B, Status::Fails, format!("A - A = {s}")),
            None => cond("b", B, Status::Holds, format!("A - A = {s}")),
        },
        None if d.status == Status::Fails && infinite => {
            cond("b", B, Status::Holds, "infinite and not syndetic, so not mℤ".into())
        }
        None => cond("b", B, Status::Unknown, "A - A not representable on the window".into()),
    };

    let engine: Option<ZSubfactorReport> = match &dif {
        Some(s) if s.has_residues() => rsfa_z(s, minimal_radius(s)).ok(),
        _ => None,
    };
    let (c, e) = match &engine {
        Some(r) => match r.lower {
            Cardinal::Finite(n) => (
                cond("c", C, Status::Holds, format!("rsfa_z finds a subfactor of size {n}")),
                cond("e", E, Status::Holds, format!("rsfa_z finds a maximal solution of size {n}")),
            ),
            Cardinal::Aleph0 => (
                cond("c", C, Status::Fails, "rsfa_z finds no finite subfactor".into()),
                cond("e", E, Status::Fails, "rsfa_z finds no finite maximal solution".into()),
            ),
        },
        None if d.status == Status::Fails => (
            cond("c", C, Status::Fails, "A - A is not syndetic, so no finite B has A - A + B = ℤ".into()),
            cond("e", E, Status::Fails, "a finite maximal solution would make A - A syndetic".into()),
        ),
        None => (
            cond("c", C, Status::Unknown, "no exact engine for this set".into()),
            cond("e", E, Status::Unknown, "no exact engine for this set".into()),
        ),
    };

    let conditions = vec![a, b, c, d, e];
    // (c) and (e) often fail only as consequences of (d); report the root cause.
    let verdict = ["a", "b", "d", "c", "e"]
        .iter()
        .map(|l| conditions.iter().find(|c| c.label == *l).unwrap())
        .find(|c| c.status == Status::Fails)
        .map_or(ScreenVerdict::Unknown, |c| {
            let index = match (c.label, &dif) {
                ("b", Some(s)) => s.subgroup_index().expect("checked above"),
                _ => Cardinal::Aleph0,
            };
            ScreenVerdict::IndexStable { index, by: c.label }
        });
    let resolution = match (&verdict, &engine) {
        (ScreenVerdict::Unknown, Some(r)) => Some(Resolution {
            lower: r.lower,
            upper: r.upper,
            stable: r.is_stable(),
            upper_status: r.upper_status,
        }),
        _ => None,
    };
    Ok(Screen {
        sequence: spec.name(),
        conditions,
        verdict,
        resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_fail_d() {
        let s = criteria_screen(&SequenceSpec::new(SequenceKind::Factorials)).unwrap();
        assert_eq!(s.condition("d").status, Status::Fails);
        assert_eq!(
            s.verdict,
            ScreenVerdict::IndexStable {
                index: Cardinal::Aleph0,
                by: "d"
            }
        );
    }

    #[test]
    fn squares_from_one_resolved_by_engine() {
        let s = criteria_screen(&SequenceSpec::new(SequenceKind::SquaresFrom(1))).unwrap();
        assert!(s.conditions.iter().all(|c| c.status == Status::Holds));
        assert_eq!(s.verdict, ScreenVerdict::Unknown);
        let r = s.resolution.unwrap();
        assert_eq!((r.lower, r.upper, r.stable), (Cardinal::Finite(3), Cardinal::Finite(4), false));
    }

    #[test]
    fn finite_sets_fail_a() {
        let s = criteria_screen(&SequenceSpec::new(SequenceKind::Finite(vec![1, 2, 3]))).unwrap();
        assert_eq!(s.condition("a").status, Status::Fails);
        assert!(matches!(s.verdict, ScreenVerdict::IndexStable { index: Cardinal::Aleph0, .. }));
    }
}
