use std::collections::BTreeSet;

use plabic_core::mutation::{fz_mutate_quiver, geometric_exchange};
use plabic_core::quiver::{nakayama_permutation, permutation_cycles, permutation_order};
use plabic_core::samples::symmetric_3_9;
use plabic_core::{build_tiling, KSubset, Quiver};

const ARROWS_3_9: &str = "456/457 457/145 145/147 134/145 124/134 134/234 457/467 467/567 \
    145/345 345/134 123/124 147/124 127/147 147/178 478/147 147/457 124/127 179/127 \
    178/179 178/478 467/478 127/912 912/179 179/891 789/178 478/678 678/467 234/123 \
    234/345 567/456 567/678 891/912 891/789 345/456 678/789 912/123";

const INTERNAL_AFTER_134: &str = "145/147 127/147 147/178 457/467 457/145 145/245 124/145 \
    147/124 245/124 478/147 147/457 124/127 179/127 178/179 178/478 467/478";

fn label(t: &str) -> KSubset {
    KSubset::parse(9, t).unwrap()
}

fn arrow_set(list: &str) -> BTreeSet<(KSubset, KSubset)> {
    list.split_whitespace()
        .map(|p| {
            let (a, b) = p.split_once('/').unwrap();
            (label(a), label(b))
        })
        .collect()
}

fn quiver_arrows(q: &Quiver) -> BTreeSet<(KSubset, KSubset)> {
    q.arrows.iter().map(|a| (q.vertices[a.src].label.unwrap(), q.vertices[a.tgt].label.unwrap())).collect()
}

#[test]
fn arrows_of_symmetric_3_9() {
    let q = Quiver::from_collection(&symmetric_3_9()).unwrap();
    assert_eq!(q.vertex_count(), 19);
    assert_eq!(q.vertices.iter().filter(|v| v.frozen).count(), 9);
    assert_eq!(quiver_arrows(&q), arrow_set(ARROWS_3_9));
    assert_eq!(q.arrows.len(), 36);
    assert_eq!(q.internal_arrow_count(), 15);
    q.check_potential().unwrap();
    let u = q.underline();
    assert_eq!((u.vertex_count(), u.arrows.len()), (10, 15));
}

#[test]
fn centre_has_six_tiling_edges() {
    let t = build_tiling(&symmetric_3_9()).unwrap();
    assert_eq!(t.degree(&label("147")), 6);
    assert_eq!(t.euler_characteristic(), 1);
}

#[test]
fn internal_arrows_after_mutating_134() {
    let c = symmetric_3_9();
    let m = geometric_exchange(&c, &label("134")).unwrap();
    let q = Quiver::from_collection(&m).unwrap();
    let u = q.underline();
    assert_eq!(quiver_arrows(&u), arrow_set(INTERNAL_AFTER_134));
    assert!(q.rho_automorphism().is_none());
    let fz = fz_mutate_quiver(&Quiver::from_collection(&c).unwrap(), &label("134")).unwrap();
    assert_eq!(quiver_arrows(&fz.underline()), arrow_set(INTERNAL_AFTER_134));
}

#[test]
fn rotation_of_symmetric_3_9() {
    let c = symmetric_3_9();
    let q = Quiver::from_collection(&c).unwrap();
    let rho = q.rho_automorphism().expect("symmetric");
    let u = q.underline();
    let urho = u.rho_automorphism().expect("symmetric");
    let perm = (0..u.vertex_count()).map(|i| (u.vertices[i].label.unwrap(), u.vertices[urho.vertex[i]].label.unwrap()));
    let cycles = permutation_cycles(&perm.collect());
    let expected: Vec<Vec<KSubset>> = vec![
        vec![label("124"), label("457"), label("178")],
        vec![label("127"), label("145"), label("478")],
        vec![label("134"), label("467"), label("179")],
        vec![label("147")],
    ];
    assert_eq!(cycles, expected);
    assert_eq!(rho.vertex.len(), 19);

    let sigma = nakayama_permutation(&c).unwrap();
    assert_eq!(sigma[&label("147")], label("147"));
    assert_eq!(sigma[&label("134")], label("179"));
    assert_eq!(permutation_order(&sigma), 3);
}
