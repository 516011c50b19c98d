use plabic_core::jacobian::{
    jacobian_by_paths, jacobian_by_stable_hom, self_injectivity, verify_main_theorem, AlgebraTable,
};
use plabic_core::mutation::geometric_exchange;
use plabic_core::quiver::nakayama_order;
use plabic_core::samples::{symmetric_3_9, triangle_2_6};
use plabic_core::search::{all_maximal_collections, enumerate_symmetric, SearchConfig};
use plabic_core::{Collection, KSubset, Quiver};

fn paths(c: &Collection) -> (Quiver, AlgebraTable) {
    let q = Quiver::from_collection(c).unwrap().underline();
    let t = jacobian_by_paths(&q).unwrap();
    (q, t)
}

fn assert_tables_agree(c: &Collection) {
    let (_, t) = paths(c);
    let s = jacobian_by_stable_hom(c);
    assert_eq!(t.total(), s.total(), "{c:?}");
    for (a, name_a) in s.vertices.iter().enumerate() {
        let i = t.vertices.iter().position(|m| m == name_a).unwrap();
        for (b, name_b) in s.vertices.iter().enumerate() {
            let j = t.vertices.iter().position(|m| m == name_b).unwrap();
            assert_eq!(t.dims[i][j], s.dims[a][b], "{c:?} {name_a} {name_b}");
        }
    }
}

#[test]
fn exhaustive_small_cases() {
    for (k, n, count) in [(2, 5, 5), (2, 6, 14), (3, 6, 34)] {
        let all = all_maximal_collections(k, n).unwrap();
        assert_eq!(all.len(), count);
        for c in &all {
            assert!(verify_main_theorem(c).unwrap(), "{c:?}");
        }
    }
}

#[test]
fn no_symmetric_collections_for_2_5() {
    let all = all_maximal_collections(2, 5).unwrap();
    assert!(all.iter().all(|c| !c.is_symmetric()));
    for c in &all {
        assert!(!self_injectivity(&paths(c).1).unwrap().self_injective);
    }
}

#[test]
fn path_and_stable_tables_agree() {
    for (k, n) in [(2, 6), (3, 6)] {
        for c in all_maximal_collections(k, n).unwrap() {
            assert_tables_agree(&c);
        }
    }
    assert_tables_agree(&symmetric_3_9());
}

#[test]
fn triangle_dimensions() {
    let (_, t) = paths(&triangle_2_6());
    assert_eq!(t.total(), 6);
    assert_eq!(jacobian_by_stable_hom(&triangle_2_6()).total(), 6);
    let r = self_injectivity(&t).unwrap();
    assert!(r.self_injective);
    assert_eq!(r.sigma_cycles(&t.vertices).unwrap().len(), 1);
    assert!(t.socles.as_ref().unwrap().iter().all(|s| s.len() == 1));
}

#[test]
fn symmetric_3_9_algebra() {
    let c = symmetric_3_9();
    let (q, t) = paths(&c);
    let r = self_injectivity(&t).unwrap();
    assert!(r.self_injective);
    let sigma = r.sigma.unwrap();
    for (i, &j) in sigma.iter().enumerate() {
        assert_eq!(q.vertices[j].label.unwrap(), q.vertices[i].label.unwrap().shift(-3));
    }
    let cycles = self_injectivity(&t).unwrap().sigma_cycles(&t.vertices).unwrap();
    let mut orbits: Vec<Vec<String>> = cycles
        .into_iter()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    orbits.sort();
    let expected: Vec<Vec<String>> =
        [vec!["124", "178", "457"], vec!["127", "145", "478"], vec!["134", "179", "467"], vec!["147"]]
            .iter()
            .map(|c| c.iter().map(|s| s.to_string()).collect())
            .collect();
    assert_eq!(orbits, expected);
}

#[test]
fn single_mutation_breaks_self_injectivity() {
    let c = symmetric_3_9();
    let m = geometric_exchange(&c, &KSubset::parse(9, "134").unwrap()).unwrap();
    let (_, t) = paths(&m);
    assert!(!self_injectivity(&t).unwrap().self_injective);
    assert!(verify_main_theorem(&m).unwrap());
    for label in c.internal() {
        if let Ok(n) = geometric_exchange(&c, &label) {
            assert!(verify_main_theorem(&n).unwrap());
        }
    }
}

#[test]
fn rotation_equivariance_of_dimensions() {
    for (k, n) in [(2, 6), (3, 6), (3, 9), (4, 8)] {
        for c in enumerate_symmetric(&SearchConfig::new(k, n)).unwrap() {
            let (q, t) = paths(&c);
            let rho = q.rho_automorphism().unwrap();
            for i in 0..q.vertex_count() {
                for j in 0..q.vertex_count() {
                    assert_eq!(t.dims[i][j], t.dims[rho.vertex[i]][rho.vertex[j]]);
                }
            }
        }
    }
}

#[test]
fn nakayama_order_matches_rotation_order() {
    for (k, n) in [(2, 4), (2, 6), (3, 6), (4, 8), (3, 9), (4, 6), (6, 10)] {
        for c in enumerate_symmetric(&SearchConfig::new(k, n)).unwrap() {
            let (q, t) = paths(&c);
            let r = self_injectivity(&t).unwrap();
            assert!(r.self_injective, "{c:?}");
            let sigma = r.sigma.unwrap();
            let mut order = 1;
            let mut p: Vec<usize> = (0..sigma.len()).collect();
            loop {
                p = p.iter().map(|&x| sigma[x]).collect();
                if p.iter().enumerate().all(|(i, &x)| i == x) {
                    break;
                }
                order += 1;
            }
            let expected = nakayama_order(k, n);
            if q.vertex_count() > 1 {
                assert_eq!(order, expected, "{c:?}");
            }
        }
    }
}

#[test]
fn table_invariants() {
    let (_, t) = paths(&symmetric_3_9());
    for i in 0..t.vertices.len() {
        assert_eq!(t.graded[i][i][0], 1);
        assert!(!t.socles.as_ref().unwrap()[i].is_empty());
    }
    let s = jacobian_by_stable_hom(&symmetric_3_9());
    for i in 0..s.vertices.len() {
        assert!(s.dims[i][i] >= 1);
    }
    assert!(s.vertices.iter().all(|v| !KSubset::parse(9, v).unwrap().is_interval()));
}
