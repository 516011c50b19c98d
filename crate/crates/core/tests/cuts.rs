use plabic_core::cuts::{
    cut_mutation, enumerate_cuts, has_enough_cuts, is_cut, is_homogeneous_cut, rotate_cut, truncated_presentation, Cut,
};
use plabic_core::jacobian::truncated_jacobian;
use plabic_core::samples::{symmetric_3_9, triangle_2_6};
use plabic_core::search::{enumerate_symmetric, SearchConfig};
use plabic_core::{Error, KSubset, Quiver};

fn label(t: &str) -> KSubset {
    KSubset::parse(9, t).unwrap()
}

fn cut_of(q: &Quiver, pairs: &[(&str, &str)]) -> Cut {
    Cut::new(pairs.iter().map(|(s, t)| {
        let (a, b) = (q.vertex_index(&label(s)).unwrap(), q.vertex_index(&label(t)).unwrap());
        q.arrows[q.find_arrow(a, b).unwrap()].id
    }))
}

fn symmetric_quiver() -> Quiver {
    Quiver::from_collection(&symmetric_3_9()).unwrap().underline()
}

const BEFORE: [(&str, &str); 4] = [("457", "145"), ("457", "467"), ("147", "178"), ("147", "124")];
const AFTER: [(&str, &str); 3] = [("147", "457"), ("147", "178"), ("147", "124")];

#[test]
fn cut_before_mutation_is_valid_and_not_rotation_invariant() {
    let q = symmetric_quiver();
    let c = cut_of(&q, &BEFORE);
    assert!(is_cut(&q, &c));
    assert!(enumerate_cuts(&q, usize::MAX).contains(&c));
    assert!(!is_homogeneous_cut(&q, &c).unwrap());
}

#[test]
fn mutation_at_457() {
    let q = symmetric_quiver();
    let before = cut_of(&q, &BEFORE);
    let v = q.vertex_index(&label("457")).unwrap();
    let after = cut_mutation(&q, &before, v).unwrap();
    assert_eq!(after, cut_of(&q, &AFTER));
    assert!(is_homogeneous_cut(&q, &after).unwrap());
    assert_eq!(cut_mutation(&q, &after, v).unwrap(), before);
}

#[test]
fn centre_is_not_strict() {
    let q = symmetric_quiver();
    let c = cut_of(&q, &BEFORE);
    let v = q.vertex_index(&label("147")).unwrap();
    assert!(matches!(cut_mutation(&q, &c, v), Err(Error::NotStrict(_))));
}

#[test]
fn rotation_preserves_cuts() {
    let q = symmetric_quiver();
    let cuts = enumerate_cuts(&q, usize::MAX);
    let homogeneous = cuts.iter().filter(|c| is_homogeneous_cut(&q, c).unwrap()).count();
    for c in &cuts {
        assert!(is_cut(&q, &rotate_cut(&q, c).unwrap()));
    }
    assert_eq!((cuts.len() - homogeneous) % 3, 0);
}

#[test]
fn symmetric_quivers_have_enough_cuts() {
    for (k, n) in [(2, 4), (2, 6), (3, 6), (4, 8), (3, 9)] {
        for c in enumerate_symmetric(&SearchConfig::new(k, n)).unwrap() {
            let q = Quiver::from_collection(&c).unwrap().underline();
            assert!(has_enough_cuts(&q), "{c:?}");
        }
    }
}

#[test]
fn mutations_stay_valid() {
    let q = symmetric_quiver();
    for c in enumerate_cuts(&q, usize::MAX) {
        for v in 0..q.vertex_count() {
            if let Ok(m) = cut_mutation(&q, &c, v) {
                assert!(is_cut(&q, &m));
                assert_eq!(cut_mutation(&q, &m, v).unwrap(), c);
            }
        }
    }
}

#[test]
fn triangle_cut_graph_is_connected() {
    let q = Quiver::from_collection(&triangle_2_6()).unwrap().underline();
    let cuts = enumerate_cuts(&q, usize::MAX);
    assert_eq!(cuts.len(), 3);
    let mut reached = vec![cuts[0].clone()];
    let mut i = 0;
    while i < reached.len() {
        for v in 0..q.vertex_count() {
            if let Ok(m) = cut_mutation(&q, &reached[i], v) {
                if !reached.contains(&m) {
                    reached.push(m);
                }
            }
        }
        i += 1;
    }
    assert_eq!(reached.len(), 3);
    for c in &cuts {
        let t = truncated_presentation(&q, c).unwrap();
        assert_eq!((t.arrows.len(), t.relations.len()), (2, 1));
        assert_eq!(t.relations[0].1[0].1.len(), 2);
        assert_eq!(truncated_jacobian(&q, c).unwrap().total(), 5);
    }
}

#[test]
fn homogeneous_cut_relations_are_rotation_equivariant() {
    let q = symmetric_quiver();
    let c = cut_of(&q, &AFTER);
    let rho = q.rho_automorphism().unwrap();
    let t = truncated_presentation(&q, &c).unwrap();
    let rel_set = |rels: &Vec<(usize, Vec<(i64, Vec<usize>)>)>| {
        let mut v: Vec<(usize, Vec<(i64, Vec<usize>)>)> = rels.clone();
        for r in &mut v {
            r.1.sort();
        }
        v.sort();
        v
    };
    let image: Vec<(usize, Vec<(i64, Vec<usize>)>)> = t
        .relations
        .iter()
        .map(|(a, terms)| {
            (rho.arrow[*a], terms.iter().map(|(s, p)| (*s, p.iter().map(|x| rho.arrow[*x]).collect())).collect())
        })
        .collect();
    assert_eq!(rel_set(&image), rel_set(&t.relations));
}
