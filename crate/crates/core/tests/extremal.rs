use aw_core::ap::{structural_audit, ApCatalog};
use aw_core::closed_forms::{aw_path_cycle_formula, aw_torus_formula};
use aw_core::extremal::{
    counterexample_instance, extremal_path_cycle_coloring, extremal_torus_coloring, Extremal,
    ExtremalError,
};
use aw_core::solver::{anti_vdw_number, SearchConfig};

fn check(e: &Extremal) {
    let g = &e.product.graph;
    let catalog = ApCatalog::enumerate(g, 3).unwrap();
    assert!(catalog.is_rainbow_free(&e.coloring));
    assert!(e.coloring.is_exact());
    assert_eq!(e.coloring.r(), 3);
    assert!(structural_audit(&e.product, &catalog, &e.coloring).unwrap().passed());
}

#[test]
fn path_cycle_refuses_exactly_the_even_diameters() {
    for m in 2..=6 {
        for n in (4..=12).step_by(2) {
            match extremal_path_cycle_coloring(m, n) {
                Ok(e) => {
                    assert_eq!(aw_path_cycle_formula(m, n).unwrap(), 4, "({m},{n})");
                    check(&e);
                    let g = &e.product.graph;
                    assert_eq!(g.distance(e.blue, e.green), g.diameter());
                    assert_eq!(g.eccentricity_multiplicity(e.blue), 1);
                    assert_eq!(g.eccentricity_multiplicity(e.green), 1);
                }
                Err(ExtremalError::Refused { .. }) => {
                    assert_eq!(aw_path_cycle_formula(m, n).unwrap(), 3, "({m},{n})");
                }
                Err(other) => panic!("({m},{n}): {other}"),
            }
        }
    }
}

#[test]
fn torus_refuses_exactly_the_congruent_sides() {
    for m in (4..=10).step_by(2) {
        for n in (4..=10).step_by(2) {
            match extremal_torus_coloring(m, n) {
                Ok(e) => {
                    assert_eq!(aw_torus_formula(m, n).unwrap(), 4);
                    check(&e);
                    let g = &e.product.graph;
                    assert_eq!(g.distance(e.blue, e.green), g.diameter());
                    assert_eq!(g.eccentricity_multiplicity(e.blue), 1);
                }
                Err(_) => assert_eq!(m % 4, n % 4),
            }
        }
    }
}

#[test]
fn counterexample_has_value_four() {
    let e = counterexample_instance().unwrap();
    check(&e);
    let result = anti_vdw_number(&e.product.graph, 3, &SearchConfig::default()).unwrap();
    assert_eq!(result.aw, Some(4));
    assert_eq!(e.product.graph.diameter() % 2, 0);
}

#[test]
fn constructions_match_solver() {
    let cfg = SearchConfig::default();
    for e in [
        extremal_path_cycle_coloring(2, 4).unwrap(),
        extremal_path_cycle_coloring(3, 6).unwrap(),
        extremal_torus_coloring(4, 6).unwrap(),
    ] {
        assert_eq!(anti_vdw_number(&e.product.graph, 3, &cfg).unwrap().aw, Some(4));
    }
}
