use std::collections::BTreeSet;

use proptest::prelude::*;

use fourfold::hirzebruch::{self, HirzebruchSurface};
use fourfold::obstruction::{self, FormalClass, SwManifold};
use fourfold::pairfinder::PairFinder;
use fourfold::topo::{self, CharNumbers, ChernNumbers, Parity, TopologicalType};

fn any_type() -> impl Strategy<Value = TopologicalType> {
    (0i64..500, 0i64..500, any::<bool>()).prop_filter_map("Rokhlin", |(p, m, even)| {
        let parity = if even { Parity::Even } else { Parity::Odd };
        TopologicalType::new(p, m, parity).ok()
    })
}

proptest! {
    #[test]
    fn blowup_shifts_char_and_chern(t in any_type(), k in 0u32..1000) {
        let c = t.char_numbers();
        let b = t.blowup(k);
        prop_assert_eq!(b.char_numbers(), CharNumbers::new(c.e + i64::from(k), c.sigma - i64::from(k)));
        if let Ok(ch) = topo::char_to_chern(c) {
            prop_assert_eq!(
                topo::char_to_chern(b.char_numbers()),
                Ok(ChernNumbers::new(ch.c1sq - i64::from(k), ch.chi))
            );
        }
        if k > 0 {
            prop_assert_eq!(b.parity(), Parity::Odd);
        }
    }

    #[test]
    fn blowup_composes(t in any_type(), a in 0u32..500, b in 0u32..500) {
        prop_assert_eq!(t.blowup(a).blowup(b), t.blowup(a + b));
    }

    #[test]
    fn reversal_is_an_involution_preserving_hitchin_thorpe(t in any_type(), strict in any::<bool>()) {
        let r = t.reversed();
        prop_assert_eq!(r.reversed(), t);
        prop_assert_eq!(r.char_numbers().e, t.char_numbers().e);
        prop_assert_eq!(r.char_numbers().sigma, -t.char_numbers().sigma);
        prop_assert_eq!(topo::hitchin_thorpe(r.char_numbers(), strict), topo::hitchin_thorpe(t.char_numbers(), strict));
    }

    #[test]
    fn spec_string_round_trips(t in any_type()) {
        prop_assert_eq!(t.to_string().parse::<TopologicalType>(), Ok(t));
    }

    #[test]
    fn canonical_class_identity(i in 0u32..100_000) {
        let s = HirzebruchSurface::new(i);
        let sum = hirzebruch::canonical_class(s) + s.class(3, 2 * i64::from(i) + 3);
        prop_assert_eq!(sum, s.class(1, i64::from(i) + 1));
        prop_assert!(hirzebruch::is_ample(&sum));
    }

    #[test]
    fn double_cover_chi_is_integral_for_even_branch(i in 0u32..1000, a in -50i64..50, b in -50i64..50) {
        let s = HirzebruchSurface::new(i);
        prop_assert!(hirzebruch::double_cover_invariants(s, &s.class(2 * a, 2 * b)).is_ok());
    }

    #[test]
    fn blowup_classes_stage(k1 in 0u32..6, k2 in 0u32..6, coeffs in prop::collection::btree_set(-5i64..5, 1..4)) {
        let seed: BTreeSet<FormalClass> = coeffs.iter().map(|c| FormalClass::new(*c)).collect();
        let staged = obstruction::blowup_classes(&obstruction::blowup_classes(&seed, k1), k2);
        let direct = obstruction::blowup_classes(&seed, k1 + k2);
        prop_assert_eq!(staged.len(), seed.len() << (k1 + k2));
        prop_assert_eq!(staged, direct);
    }

    #[test]
    fn certificates_are_self_consistent(p in 2i64..300, m in 0i64..300, k in 0u32..2000) {
        let y = SwManifold::new(TopologicalType::new(p, m, Parity::Odd).unwrap(), "test");
        let cert = obstruction::einstein_obstructed(&y, k).unwrap();
        prop_assert!(cert.is_consistent());
        prop_assert!(cert.steps.iter().all(|s| s.holds()));
        prop_assert_eq!(cert.x_char, y.topo.blowup(k).char_numbers());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn search_pairs_satisfy_invariants(chi_min in 1i64..60, width in 0i64..8) {
        let pairs = PairFinder::default().general_search(chi_min, chi_min + width).unwrap();
        let mut last = None;
        for p in &pairs {
            prop_assert!(p.is_verified());
            prop_assert!(p.y_chern.c1sq > 3 * p.z.chern.c1sq);
            prop_assert!(p.y_chern.c1sq >= 2 * p.y_chern.chi - 6);
            prop_assert!(p.z.chern.c1sq >= 2 * p.z.chern.chi - 6);
            prop_assert_eq!(p.castelnuovo_excludes_very_ample, p.z.chern.c1sq < 3 * p.z.chern.chi - 10);
            let z_char = topo::chern_to_char(p.z.chern);
            prop_assert_eq!(p.x_topo.char_numbers(), z_char);
            prop_assert_eq!(p.x_topo.parity(), Parity::Odd);
            let key = (p.z.chern.chi, p.z.chern.c1sq);
            prop_assert!(last.is_none_or(|l| l < key));
            last = Some(key);
        }
    }
}
