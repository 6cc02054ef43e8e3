//! Fitting an eventually periodic description to windowed data.

use serde::Serialize;

use super::epset::EPSet;
use super::seq::{DifWindow, SequenceSpec};
use crate::error::{Error, Result};

pub const DEFAULT_GUARD: u64 = 10_000;
pub const DEFAULT_MODULUS_CAP: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// The set itself.
    Identity,
    /// `A - A`.
    Dif,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Inferred {
    Fitted {
        set: EPSet,
        /// Whether the window data was exact, rather than a lower approximation.
        window_exact: bool,
    },
    Inconclusive {
        reason: String,
    },
}

impl Inferred {
    pub fn set(&self) -> Option<&EPSet> {
        match self {
            Inferred::Fitted { set, .. } => Some(set),
            Inferred::Inconclusive { .. } => None,
        }
    }
}

/// Membership of the transformed set on `[-W, W]`.
pub fn window_data(spec: &SequenceSpec, transform: Transform) -> DifWindow {
    match transform {
        Transform::Dif => spec.dif_window(),
        Transform::Identity => {
            let t = spec.terms();
            let vals = t.values;
            DifWindow::from_fn(spec.window as i64, |x| vals.binary_search(&x).is_ok(), true)
        }
    }
}

/// Tries moduli `1..=cap`, taking residues from the bands `[W-2g, W-g]` and
/// their mirror, flips from the inner window, and requiring the outer guard
/// bands to agree with the periodic part.
pub fn infer_epset(spec: &SequenceSpec, transform: Transform, guard: u64, cap: i64) -> Result<Inferred> {
    if spec.window < 4 * guard {
        return Err(Error::WindowTooSmall {
            window: spec.window,
            needed: 4 * guard,
        });
    }
    let data = window_data(spec, transform);
    Ok(fit(&data, guard as i64, cap))
}

pub fn fit(data: &DifWindow, g: i64, cap: i64) -> Inferred {
    let w = data.w;
    let inner = w - g;
    let band: Vec<i64> = ((w - 2 * g)..=(w - g)).chain((-w + g)..=(-w + 2 * g)).collect();
    let guards: Vec<i64> = ((w - g + 1)..=w).chain(-w..(-w + g)).collect();
    for m in 1..=cap.min(g.max(1)) {
        let mut res: Vec<Option<bool>> = vec![None; m as usize];
        let mut ok = true;
        for &x in &band {
            let r = x.rem_euclid(m) as usize;
            let v = data.contains(x);
            match res[r] {
                None => res[r] = Some(v),
                Some(u) if u != v => {
                    ok = false;
                    break;
                }
                _ => {}
            }
        }
        if !ok || res.iter().any(Option::is_none) {
            continue;
        }
        let res: Vec<bool> = res.into_iter().map(Option::unwrap).collect();
        let per = |x: i64| res[x.rem_euclid(m) as usize];
        if guards.iter().any(|&x| data.contains(x) != per(x)) {
            continue;
        }
        let flips: Vec<i64> = (-inner..=inner).filter(|&x| data.contains(x) != per(x)).collect();
        let residues: Vec<i64> = (0..m).filter(|&r| res[r as usize]).collect();
        return Inferred::Fitted {
            set: EPSet::new(m, residues, flips),
            window_exact: data.exact,
        };
    }
    Inferred::Inconclusive {
        reason: format!("no modulus ≤ {cap} fits the window [-{w}, {w}] with guard {g}"),
    }
}

/// `C(squares from n₀) = (4ℤ+2) ∪ {±1, ±3, …, ±(2n₀-1)} ∪ {±4, ±8, …, ±4n₀}`.
pub fn squares_complement(n0: u64) -> EPSet {
    let n0 = n0 as i64;
    let mut flips = Vec::new();
    for k in 1..=n0 {
        for x in [2 * k - 1, 4 * k] {
            flips.push(x);
            flips.push(-x);
        }
    }
    EPSet::new(4, [2], flips)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlab::seq::SequenceKind;

    fn spec(kind: SequenceKind) -> SequenceSpec {
        SequenceSpec::new(kind).with_window(40_000)
    }

    #[test]
    fn squares_dif_complement_closed_form() {
        for n0 in 0..6 {
            let got = infer_epset(&spec(SequenceKind::SquaresFrom(n0)), Transform::Dif, 10_000, 64).unwrap();
            let set = got.set().expect("squares Dif is eventually periodic").clone();
            assert_eq!(set.complement(), squares_complement(n0), "n0 = {n0}");
        }
    }

    #[test]
    fn window_guard_precondition() {
        let s = SequenceSpec::new(SequenceKind::Primes).with_window(1000);
        assert!(matches!(
            infer_epset(&s, Transform::Dif, 10_000, 64),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn cubes_and_powers_are_inconclusive() {
        // Sparse sets: Dif is not eventually periodic.
        for k in [SequenceKind::KthPowers(3), SequenceKind::PowersBase(2)] {
            let got = infer_epset(&spec(k), Transform::Dif, 10_000, 64).unwrap();
            assert!(got.set().is_none());
        }
    }

    #[test]
    fn identity_of_finite_set() {
        let s = spec(SequenceKind::Finite(vec![-3, 5, 7]));
        let got = infer_epset(&s, Transform::Identity, 10_000, 64).unwrap();
        assert_eq!(got.set().unwrap(), &EPSet::finite([-3, 5, 7]));
    }
}
