//! Property checks of the engines against brute-force models.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subindex_core::setcalc;
use subindex_core::subfactor::{self, enumerate_subf1};
use subindex_core::zlab::rsfa_z::{minimal_radius, rsfa_z, verify_subfactor_z};
use subindex_core::zlab::EPSet;
use subindex_core::{Cardinal, FiniteGroup, Side};

use common::*;

const W: i64 = 120;

fn epset() -> impl Strategy<Value = EPSet> {
    (1i64..=6, prop::collection::vec(any::<bool>(), 6), prop::collection::btree_set(-15i64..=15, 0..6))
        .prop_map(|(m, mask, flips)| EPSet::new(m, (0..m).filter(|&r| mask[r as usize]), flips))
}

/// Membership of `S + T` at `x`, searching summands in a window wide enough
/// to contain a witness whenever one exists (moduli ≤ 6, flips within ±15).
fn brute_sum(s: &EPSet, t: &EPSet, x: i64) -> bool {
    (-4 * W..=4 * W).any(|a| s.contains(a) && t.contains(x - a))
}

fn groups() -> Vec<FiniteGroup> {
    catalogue(12)
}

fn group_and_subset() -> impl Strategy<Value = (usize, u64)> {
    (0..groups().len(), any::<u64>())
}

fn pick(idx: usize, seed: u64) -> (FiniteGroup, Vec<usize>) {
    let g = groups().swap_remove(idx);
    let a = elems(&random_subset(&g, &mut ChaCha8Rng::seed_from_u64(seed)));
    (g, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn boolean_ops_are_pointwise(s in epset(), t in epset()) {
        let (u, i, d, c) = (s.union(&t), s.intersect(&t), s.minus(&t), s.complement());
        for x in -W..=W {
            prop_assert_eq!(u.contains(x), s.contains(x) || t.contains(x));
            prop_assert_eq!(i.contains(x), s.contains(x) && t.contains(x));
            prop_assert_eq!(d.contains(x), s.contains(x) && !t.contains(x));
            prop_assert_eq!(c.contains(x), !s.contains(x));
        }
    }

    #[test]
    fn affine_maps_are_pointwise(s in epset(), k in -4i64..=4, t in -20i64..=20) {
        let n = s.negate();
        let sh = s.shift(t);
        for x in -W..=W {
            prop_assert_eq!(n.contains(x), s.contains(-x));
            prop_assert_eq!(sh.contains(x), s.contains(x - t));
        }
        if k != 0 {
            let sc = s.scale(k);
            for x in -W..=W {
                prop_assert_eq!(sc.contains(x), x % k == 0 && s.contains(x / k));
            }
        }
    }

    #[test]
    fn sumset_and_dif_match_brute_force(s in epset(), t in epset()) {
        let sum = s.sumset(&t);
        let dif = s.dif();
        for x in -W..=W {
            prop_assert_eq!(sum.contains(x), brute_sum(&s, &t, x), "x = {}", x);
            prop_assert_eq!(dif.contains(x), brute_sum(&s, &s.negate(), x), "x = {}", x);
        }
    }

    #[test]
    fn canonical_form_is_unique(s in epset(), lift in 1i64..=4) {
        let m = s.modulus() * lift;
        let lifted = EPSet::new(m, (0..m).filter(|&r| s.periodic_contains(r)), s.flips().iter().copied());
        prop_assert_eq!(&lifted, &s);
        let text = s.to_string();
        prop_assert_eq!(text.parse::<EPSet>().unwrap(), s);
    }

    #[test]
    fn max_gap_matches_consecutive_members(s in epset()) {
        let members: Vec<i64> = (-W..=W).filter(|&x| s.contains(x)).collect();
        match s.max_gap() {
            None => prop_assert!(s.is_finite()),
            Some(g) => {
                let brute = members.windows(2).map(|p| p[1] - p[0]).max().unwrap_or(0);
                prop_assert_eq!(g, brute);
            }
        }
    }

    #[test]
    fn syndeticity_survives_finite_perturbation(s in epset(), f in prop::collection::btree_set(-40i64..=40, 0..8)) {
        let f = EPSet::finite(f);
        let p = s.minus(&f).union(&f.minus(&s));
        prop_assert_eq!(p.has_residues(), s.has_residues());
        prop_assert_eq!(p.max_gap().is_some(), s.max_gap().is_some());
    }

    #[test]
    fn verify_subfactor_z_matches_window(s in epset(), b in prop::collection::btree_set(1i64..=12, 0..4)) {
        let d = s.dif();
        prop_assume!(d.has_residues());
        let b: Vec<i64> = std::iter::once(0).chain(b).collect();
        let direct = b.iter().all(|&x| b.iter().all(|&y| x == y || !d.contains(x - y)));
        let covers = (-2 * W..=2 * W).all(|x| b.iter().any(|&t| d.contains(x - t)));
        prop_assert_eq!(verify_subfactor_z(&d, &b), direct && covers);
    }

    #[test]
    fn rsfa_z_bounds_are_consistent(s in epset()) {
        let d = s.dif();
        prop_assume!(d.has_residues());
        let r = rsfa_z(&d, minimal_radius(&d)).unwrap();
        prop_assert!(r.lower <= r.upper);
        for w in r.witnesses_min.iter().chain(&r.witnesses_max) {
            prop_assert!(verify_subfactor_z(&d, w));
        }
        if let (Cardinal::Finite(lo), Some(w)) = (r.lower, r.witnesses_min.first()) {
            prop_assert_eq!(w.len() as u64, lo);
        }
    }

    #[test]
    fn dif_matches_oracle((gi, seed) in group_and_subset()) {
        let (g, a) = pick(gi, seed);
        let sub = g.subset(&a).unwrap();
        prop_assert_eq!(elems(&setcalc::dif(&g, &sub, Side::Left)), left_dif(&g, &a));
        prop_assert_eq!(elems(&setcalc::dif(&g, &sub, Side::Right)), right_dif(&g, &a));
        let p = setcalc::dif_profile(&g, &sub, Side::Right).unwrap();
        prop_assert_eq!((p.dl_infinity, p.diameter), dl_and_diameter(&g, &a));
    }

    #[test]
    fn subfactor_test_matches_oracle((gi, seed) in group_and_subset(), bseed in any::<u64>()) {
        let (g, a) = pick(gi, seed);
        let (_, b) = pick(gi, bseed);
        let (sa, sb) = (g.subset(&a).unwrap(), g.subset(&b).unwrap());
        for side in [Side::Right, Side::Left] {
            prop_assert_eq!(subfactor::is_subfactor(&g, &sa, &sb, side), is_subfactor(&g, &a, &b, side));
        }
    }

    #[test]
    fn indices_match_oracle((gi, seed) in group_and_subset()) {
        let (g, a) = pick(gi, seed);
        let sub = g.subset(&a).unwrap();
        let four = subfactor::four_indices(&g, &sub).unwrap();
        prop_assert_eq!(four, four_indices(&g, &a));
        prop_assert!(four[0] <= four[1] && four[2] <= four[3]);
        // Directness makes the products in AB (or BA) distinct.
        prop_assert!(four[1] * a.len() <= g.order() && four[3] * a.len() <= g.order());
    }

    #[test]
    fn translation_and_inversion((gi, seed) in group_and_subset(), t in any::<usize>()) {
        let (g, a) = pick(gi, seed);
        let t = t % g.order();
        let sub = g.subset(&a).unwrap();
        let four = subfactor::four_indices(&g, &sub).unwrap();
        // A⁻¹A is unchanged by A ↦ tA, AA⁻¹ by A ↦ At.
        let lt = subfactor::four_indices(&g, &g.left_translate(t, &sub)).unwrap();
        let rt = subfactor::four_indices(&g, &g.right_translate(&sub, t)).unwrap();
        prop_assert_eq!([lt[0], lt[1]], [four[0], four[1]]);
        prop_assert_eq!([rt[2], rt[3]], [four[2], four[3]]);
        let inv = subfactor::four_indices(&g, &g.inverse_set(&sub)).unwrap();
        prop_assert_eq!(inv, [four[2], four[3], four[0], four[1]]);
    }

    #[test]
    fn maximal_direct_sets_match_oracle((gi, seed) in group_and_subset()) {
        let (g, a) = pick(gi, seed);
        let sub = g.subset(&a).unwrap();
        for side in [Side::Right, Side::Left] {
            let got: BTreeSet<Vec<usize>> = enumerate_subf1(&g, &sub, side).unwrap().iter().map(elems).collect();
            let want: BTreeSet<Vec<usize>> = maximal_direct_sets(&g, &a, side).into_iter().collect();
            prop_assert_eq!(got, want);
        }
    }
}
