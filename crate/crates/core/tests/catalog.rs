mod common;

use std::collections::BTreeSet;

use aw_core::ap::ApCatalog;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn catalog_sets(c: &ApCatalog) -> BTreeSet<Vec<usize>> {
    c.iter()
        .map(|(_, t)| {
            let mut s: Vec<usize> = t.iter().map(|&v| v as usize).collect();
            s.sort_unstable();
            s
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn three_term_catalog_is_complete(seed in any::<u64>(), n in 1usize..=12, p in 0.0f64..0.6) {
        let g = common::random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let catalog = ApCatalog::enumerate(&g, 3).unwrap();
        let expected = common::brute_force_ap_sets(&g, 3);
        prop_assert!(catalog.validate(&g));
        prop_assert_eq!(catalog.len(), expected.len(), "duplicates or gaps");
        prop_assert_eq!(catalog_sets(&catalog), expected);
    }

    #[test]
    fn four_term_catalog_is_complete(seed in any::<u64>(), n in 1usize..=9, p in 0.0f64..0.6) {
        let g = common::random_connected(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let catalog = ApCatalog::enumerate(&g, 4).unwrap();
        prop_assert!(catalog.validate(&g));
        prop_assert_eq!(catalog_sets(&catalog), common::brute_force_ap_sets(&g, 4));
    }

    #[test]
    fn incremental_check_matches_batch(seed in any::<u64>(), n in 3usize..=10, p in 0.0f64..0.5, r in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_connected(&mut rng, n, p);
        let catalog = ApCatalog::enumerate(&g, 3).unwrap();
        let sets = common::brute_force_ap_sets(&g, 3);
        // partial coloring: 0 = unassigned
        let partial: Vec<usize> = (0..n).map(|_| if rng.gen_bool(0.25) { 0 } else { rng.gen_range(1..=r) }).collect();
        for v in 0..n {
            let batch_ok = !sets.iter().any(|s| {
                s.contains(&v)
                    && s.iter().all(|&x| partial[x] != 0)
                    && s.iter().map(|&x| partial[x]).collect::<BTreeSet<_>>().len() == 3
            });
            prop_assert_eq!(catalog.incremental_check(&partial, v), batch_ok, "vertex {}", v);
        }
        if partial.iter().all(|&c| c != 0) {
            let batch_rainbow = sets.iter().any(|s| s.iter().map(|&x| partial[x]).collect::<BTreeSet<_>>().len() == 3);
            prop_assert_eq!(catalog.find_rainbow(&partial).is_some(), batch_rainbow);
        }
    }
}

#[test]
fn path_three_has_exactly_one_progression() {
    let g = aw_core::Graph::path(3).unwrap();
    let catalog = ApCatalog::enumerate(&g, 3).unwrap();
    assert_eq!(catalog.len(), 1);
    assert_eq!(catalog.dump(), "1 0 1 2\n");
}

#[test]
fn progressions_through_vertex_are_indexed() {
    let g = aw_core::Graph::cycle(7).unwrap();
    let catalog = ApCatalog::enumerate(&g, 3).unwrap();
    for v in 0..7 {
        for &id in catalog.through(v) {
            assert!(catalog.terms(id as usize).contains(&(v as u32)));
        }
        let count = catalog.iter().filter(|(_, t)| t.contains(&(v as u32))).count();
        assert_eq!(catalog.through(v).len(), count);
    }
}
