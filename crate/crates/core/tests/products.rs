mod common;

use aw_core::ap::{structural_audit, ApCatalog};
use aw_core::product::{cartesian_product, FactorCopy};
use aw_core::solver::{anti_vdw_number, SearchConfig};
use aw_core::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn factors(seed: u64, a: usize, b: usize, p: f64) -> (Graph, Graph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (common::random_connected(&mut rng, a, p), common::random_connected(&mut rng, b, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_factor(seed in any::<u64>(), a in 1usize..=7, b in 1usize..=7, p in 0.0f64..0.5) {
        let (g, h) = factors(seed, a, b, p);
        let prod = cartesian_product(&g, &h).unwrap();
        let bfs = common::bfs_all_pairs(&prod.graph);
        let (dg, dh) = (common::bfs_all_pairs(&g), common::bfs_all_pairs(&h));
        for x in 0..a * b {
            let (i, j) = prod.index.unflatten(x);
            for y in 0..a * b {
                let (k, l) = prod.index.unflatten(y);
                prop_assert_eq!(prod.graph.distance(x, y), bfs[x][y]);
                prop_assert_eq!(bfs[x][y], dg[i - 1][k - 1] + dh[j - 1][l - 1]);
            }
        }
    }

    #[test]
    fn factor_copies_are_isometric(seed in any::<u64>(), a in 1usize..=6, b in 1usize..=6, p in 0.0f64..0.5) {
        let (g, h) = factors(seed, a, b, p);
        let prod = cartesian_product(&g, &h).unwrap();
        for j in 1..=b {
            prop_assert!(prod.graph.is_isometric_subgraph(&prod.copy_vertices(FactorCopy::G(j)).unwrap()));
        }
        for i in 1..=a {
            prop_assert!(prod.graph.is_isometric_subgraph(&prod.copy_vertices(FactorCopy::H(i)).unwrap()));
        }
    }

    #[test]
    fn product_value_is_symmetric(seed in any::<u64>(), a in 2usize..=4, b in 2usize..=4, p in 0.0f64..0.5) {
        let (g, h) = factors(seed, a, b, p);
        let cfg = SearchConfig::default();
        let gh = anti_vdw_number(&cartesian_product(&g, &h).unwrap().graph, 3, &cfg).unwrap();
        let hg = anti_vdw_number(&cartesian_product(&h, &g).unwrap().graph, 3, &cfg).unwrap();
        prop_assert_eq!(gh.aw, hg.aw);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Searched without any bound hint, so the solver has to prove r = 4
    /// infeasible on its own.
    #[test]
    fn products_have_value_three_or_four(seed in any::<u64>(), a in 2usize..=5, b in 2usize..=5, p in 0.0f64..0.6) {
        let (g, h) = factors(seed, a, b, p);
        let prod = cartesian_product(&g, &h).unwrap();
        let result = anti_vdw_number(&prod.graph, 3, &SearchConfig::default()).unwrap();
        prop_assert!(matches!(result.aw, Some(3) | Some(4)), "aw = {:?}", result.aw);
        prop_assert_eq!(result.bound_used, None);
        let catalog = ApCatalog::enumerate(&prod.graph, 3).unwrap();
        let cert = &result.certificate;
        if cert.r() >= 3 {
            let audit = structural_audit(&prod, &catalog, cert).unwrap();
            prop_assert!(audit.passed(), "{:?}", audit.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn bound_hint_does_not_change_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let g = common::random_connected(&mut rng, 4, 0.3);
        let h = common::random_connected(&mut rng, 3, 0.3);
        let prod = cartesian_product(&g, &h).unwrap();
        let free = anti_vdw_number(&prod.graph, 3, &SearchConfig::default()).unwrap();
        let capped = anti_vdw_number(&prod.graph, 3, &SearchConfig::default().with_upper_bound(Some(4))).unwrap();
        assert_eq!(free.aw, capped.aw);
    }
}
