//! Rank-1 modules `L_I` as rim profiles, Hom generators and their shifts,
//! projective presentations and stable Hom dimensions.
//!
//! Column `i` of `L_I` is a copy of `C[t]`; `x_i` is multiplication by 1 when
//! `i` is in `I` and by `t` otherwise, `y_i` the other way round. A map
//! `L_I -> L_J` multiplies column `i` by `t^(e_i) p_0`, and its shift counts
//! half-steps of `t` at column 0.

use std::fmt::Write as _;

use crate::cyclic::{intervals, KSubset};
use crate::error::Result;

/// Height function of the rim: starts at 0, steps down at `i` in `I`, up otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimProfile {
    pub label: KSubset,
    /// `f(0), ..., f(n)`.
    pub heights: Vec<i64>,
}

impl RimProfile {
    pub fn new(label: KSubset) -> Self {
        let mut heights = vec![0i64];
        for i in 1..=label.n() {
            let step = if label.contains(i) { -1 } else { 1 };
            heights.push(heights[i - 1] + step);
        }
        RimProfile { label, heights }
    }

    /// Height at any integer column, extended by `f(i + n) = f(i) + n - 2k`.
    pub fn height(&self, i: i64) -> i64 {
        let n = self.label.n() as i64;
        let drift = n - 2 * self.label.k() as i64;
        let (q, r) = (i.div_euclid(n), i.rem_euclid(n));
        self.heights[r as usize] + q * drift
    }

    /// One period of the rim as a text walk, `\` for a down step and `/` for an up step.
    pub fn render(&self) -> String {
        let top = *self.heights.iter().max().unwrap_or(&0);
        let bottom = *self.heights.iter().min().unwrap_or(&0);
        let mut out = String::new();
        for level in (bottom..top).rev() {
            for i in 1..=self.label.n() {
                let (a, b) = (self.heights[i - 1], self.heights[i]);
                let ch = if a.min(b) == level {
                    if b < a {
                        '\\'
                    } else {
                        '/'
                    }
                } else {
                    ' '
                };
                out.push(ch);
            }
            let _ = writeln!(out);
        }
        out
    }
}

/// Shift of the generator `g_JI : L_I -> L_J`: `max_i (f_I(i) - f_J(i))` over one
/// period. Always even and non-negative since both profiles start at 0.
pub fn hom_shift(i: &KSubset, j: &KSubset) -> Result<usize> {
    i.same_shape(j)?;
    Ok(hom_shift_unchecked(i, j))
}

pub(crate) fn hom_shift_unchecked(i: &KSubset, j: &KSubset) -> usize {
    let (fi, fj) = (RimProfile::new(*i), RimProfile::new(*j));
    (0..i.n()).map(|c| fi.heights[c] - fj.heights[c]).max().unwrap_or(0) as usize
}

/// Exponents `e_c` with `g_JI` acting on column `c` as `t^(e_c + e)`, where `t^e`
/// is its action on column 0.
pub fn column_exponents(i: &KSubset, j: &KSubset) -> Vec<i64> {
    let mut e = vec![0i64];
    for c in 1..i.n() {
        let step = match (i.contains(c), j.contains(c)) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        };
        e.push(e[c - 1] + step);
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapGenerator {
    pub src: KSubset,
    pub tgt: KSubset,
    pub shift: usize,
}

impl MapGenerator {
    pub fn new(src: KSubset, tgt: KSubset) -> Result<Self> {
        Ok(MapGenerator { src, tgt, shift: hom_shift(&src, &tgt)? })
    }

    /// `self` after `first`; the composite is `t^m g` with the returned `m`.
    pub fn compose_after(&self, first: &MapGenerator) -> (MapGenerator, usize) {
        debug_assert_eq!(first.tgt, self.src);
        let direct = MapGenerator::new(first.src, self.tgt).expect("same shape");
        let excess = self.shift + first.shift - direct.shift;
        (direct, excess / 2)
    }
}

/// `0 -> L_(I+k) -> sum_V L_(v+[k]) -> sum_U L_(u+[k]) -> L_I -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub label: KSubset,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// `f`, indexed like `v`.
    pub f: Vec<MapGenerator>,
    /// `d[a][b]`: sign and generator of the component `L_(v_b + [k]) -> L_(u_a + [k])`.
    pub d: Vec<Vec<Option<(i64, MapGenerator)>>>,
    /// `h`, indexed like `u`.
    pub h: Vec<MapGenerator>,
}

/// The interval `x + [k] = {x+1, ..., x+k}`.
pub fn interval_after(n: usize, k: usize, x: usize) -> KSubset {
    KSubset::interval(n, k, x as i64)
}

pub fn presentation(label: &KSubset) -> Presentation {
    let (n, k) = (label.n(), label.k());
    let next = |x: usize| x % n + 1;
    let u: Vec<usize> = (1..=n).filter(|&x| !label.contains(x) && label.contains(next(x))).collect();
    let v: Vec<usize> = (1..=n).filter(|&x| label.contains(x) && !label.contains(next(x))).collect();
    let shifted = label.shift(k as i64);
    let gen = |src: KSubset, tgt: KSubset| MapGenerator::new(src, tgt).expect("same shape");
    let f = v.iter().map(|&x| gen(shifted, interval_after(n, k, x))).collect();
    let h = u.iter().map(|&x| gen(interval_after(n, k, x), *label)).collect();

    let mut all: Vec<(usize, bool)> = u.iter().map(|&x| (x, true)).chain(v.iter().map(|&x| (x, false))).collect();
    all.sort();
    let m = all.len();
    let mut d = vec![vec![None; v.len()]; u.len()];
    if u.len() > 1 {
        for (pos, &(x, is_u)) in all.iter().enumerate() {
            if is_u {
                continue;
            }
            let b = v.iter().position(|&y| y == x).expect("v element");
            let pred = all[(pos + m - 1) % m].0;
            let succ = all[(pos + 1) % m].0;
            let src = interval_after(n, k, x);
            let pa = u.iter().position(|&y| y == pred).expect("alternating");
            let sa = u.iter().position(|&y| y == succ).expect("alternating");
            d[pa][b] = Some((1, gen(src, interval_after(n, k, pred))));
            d[sa][b] = Some((-1, gen(src, interval_after(n, k, succ))));
        }
    }
    Presentation { label: *label, u, v, f, d, h }
}

impl Presentation {
    pub fn is_projective(&self) -> bool {
        self.d.iter().all(|row| row.iter().all(|e| e.is_none()))
    }
}

/// Number of `t`-powers of `g_JI` that do not factor through a projective `L_P`,
/// `min_P (s(I,P) + s(P,J) - s(I,J)) / 2` over cyclic intervals `P`.
pub fn stable_hom_dim(i: &KSubset, j: &KSubset) -> Result<usize> {
    i.same_shape(j)?;
    Ok(stable_hom_dim_unchecked(i, j))
}

pub(crate) fn stable_hom_dim_unchecked(i: &KSubset, j: &KSubset) -> usize {
    let direct = hom_shift_unchecked(i, j);
    intervals(i.k(), i.n())
        .iter()
        .map(|p| (hom_shift_unchecked(i, p) + hom_shift_unchecked(p, j) - direct) / 2)
        .min()
        .unwrap_or(0)
}

/// `Ext^1(L_I, L_J) = 0` exactly for weakly separated pairs.
pub fn ext1_vanishes(i: &KSubset, j: &KSubset) -> Result<bool> {
    crate::cyclic::weakly_separated(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, t: &str) -> KSubset {
        KSubset::parse(n, t).unwrap()
    }

    #[test]
    fn profile_periodicity() {
        let p = RimProfile::new(s(9, "457"));
        assert_eq!(p.heights[9], 3);
        assert_eq!(p.height(12), p.height(3) + 3);
        assert_eq!(p.height(-1), p.height(8) - 3);
        assert!(!p.render().is_empty());
    }

    #[test]
    fn shifts() {
        let i = s(9, "457");
        assert_eq!(hom_shift(&i, &i).unwrap(), 0);
        let a = s(6, "13");
        let b = s(6, "24");
        let sab = hom_shift(&a, &b).unwrap();
        assert_eq!(sab % 2, 0);
    }

    #[test]
    fn presentation_sets() {
        let p = presentation(&s(9, "123"));
        assert_eq!((p.u.clone(), p.v.clone()), (vec![9], vec![3]));
        assert!(p.is_projective());
        let p = presentation(&s(9, "134"));
        assert_eq!((p.u.clone(), p.v.clone()), (vec![2, 9], vec![1, 4]));
        assert!(!p.is_projective());
    }

    #[test]
    fn intervals_have_no_stable_maps() {
        let j = s(9, "456");
        for i in crate::cyclic::all_subsets(3, 9) {
            assert_eq!(stable_hom_dim(&i, &j).unwrap(), 0);
            assert_eq!(stable_hom_dim(&j, &i).unwrap(), 0);
        }
    }
}
