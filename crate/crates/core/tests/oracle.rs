use plabic_core::cyclic::all_subsets;
use plabic_core::modules::{column_exponents, hom_shift, presentation, stable_hom_dim, RimProfile};
use plabic_core::oracle::TruncatedOracle;
use plabic_core::samples::symmetric_3_9;
use plabic_core::{weakly_separated, KSubset};

const SMALL: [(usize, usize); 3] = [(2, 5), (2, 6), (3, 6)];

#[test]
fn ext_vanishes_exactly_for_weakly_separated_pairs() {
    for (k, n) in SMALL {
        let mut lo = TruncatedOracle::new(n);
        let mut hi = TruncatedOracle::with_truncation(n, 2 * n + 2);
        let subsets = all_subsets(k, n);
        for i in &subsets {
            for j in &subsets {
                let a = lo.ext1_dim(i, j).unwrap();
                let b = hi.ext1_dim(i, j).unwrap();
                assert_eq!(a, b, "unstable at {i} {j}");
                assert_eq!(a == 0, weakly_separated(i, j).unwrap(), "{i} {j}");
            }
        }
    }
}

#[test]
fn stable_hom_formula_matches_oracle() {
    for (k, n) in [(2, 6), (3, 6)] {
        let mut lo = TruncatedOracle::new(n);
        let mut hi = TruncatedOracle::with_truncation(n, 2 * n + 2);
        let subsets = all_subsets(k, n);
        for i in &subsets {
            for j in &subsets {
                let formula = stable_hom_dim(i, j).unwrap();
                assert_eq!(lo.stable_hom_dim(i, j).unwrap(), formula, "{i} {j}");
                assert_eq!(hi.stable_hom_dim(i, j).unwrap(), formula, "{i} {j}");
            }
        }
    }
}

fn corpus() -> Vec<(usize, Vec<KSubset>)> {
    vec![(6, all_subsets(2, 6)), (6, all_subsets(3, 6)), (9, symmetric_3_9().members().to_vec())]
}

/// Exponent of `t` on every column of the generator `L_I -> L_J`.
fn generator_exponents(i: &KSubset, j: &KSubset) -> Vec<i64> {
    let s = hom_shift(i, j).unwrap() as i64;
    column_exponents(i, j).iter().map(|e| e + s / 2).collect()
}

#[test]
fn hom_shifts_match_oracle_generators() {
    for (n, subsets) in corpus() {
        let mut o = TruncatedOracle::new(n);
        for i in &subsets {
            for j in &subsets {
                let s = hom_shift(i, j).unwrap();
                assert_eq!(s % 2, 0);
                assert_eq!(o.hom_shift(i, j).unwrap(), s, "{i} {j}");
                let g = o.generator(i, j).unwrap();
                let e = generator_exponents(i, j);
                for (c, (_, exp)) in g.cols.iter().enumerate() {
                    assert_eq!(*exp as i64, e[c]);
                }
                assert_eq!(e.iter().min(), Some(&0));
            }
        }
    }
}

#[test]
fn generators_are_rotation_equivariant() {
    let subsets = all_subsets(3, 9);
    for i in &subsets {
        for j in &subsets {
            let e = generator_exponents(i, j);
            for s in 1..9usize {
                let rotated = generator_exponents(&i.shift(s as i64), &j.shift(s as i64));
                for c in 0..9 {
                    assert_eq!(rotated[(c + s) % 9], e[c], "{i} {j} {s}");
                }
                assert_eq!(
                    stable_hom_dim(i, j).unwrap(),
                    stable_hom_dim(&i.shift(s as i64), &j.shift(s as i64)).unwrap()
                );
            }
        }
    }
}

#[test]
fn profile_differences_have_constant_parity() {
    let subsets = all_subsets(3, 9);
    for i in &subsets {
        for j in &subsets {
            let (a, b) = (RimProfile::new(*i), RimProfile::new(*j));
            let parity: Vec<i64> = (0..9).map(|c| (a.heights[c] - b.heights[c]).rem_euclid(2)).collect();
            assert!(parity.iter().all(|&p| p == parity[0]));
        }
    }
}

#[test]
fn presentations_are_exact() {
    for (k, n) in [(2, 6), (3, 6), (3, 9)] {
        let mut o = TruncatedOracle::new(n);
        for i in all_subsets(k, n) {
            let p = presentation(&i);
            assert_eq!(p.u.len(), p.v.len());
            assert_eq!(p.is_projective(), i.is_interval());
            assert!(o.check_module_relations(&i));
            assert!(o.presentation_is_exact(&i).unwrap(), "{i}");
        }
    }
}
