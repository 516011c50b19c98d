//! Brute-force check of the module calculus: module maps `L_I -> L_J` are found by
//! solving the commutation relations for polynomials of degree below `M`, and
//! everything else (shifts, composites, Ext, stable Hom) is derived from those
//! solutions.

use std::collections::HashMap;

use num_traits::Zero;

use crate::cyclic::{intervals, KSubset};
use crate::error::{Error, Result};
use crate::linalg::{kernel, q, rank, rref, Q};
use crate::modules::{interval_after, presentation};

/// A module map given column by column as `coef * t^exp`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMap {
    pub src: KSubset,
    pub tgt: KSubset,
    pub cols: Vec<(Q, usize)>,
}

impl OracleMap {
    pub fn shift(&self) -> usize {
        2 * self.cols[0].1
    }
}

#[derive(Debug, Clone)]
pub struct TruncatedOracle {
    n: usize,
    m: usize,
    generators: HashMap<(KSubset, KSubset), Option<OracleMap>>,
}

impl TruncatedOracle {
    /// Truncation `M = 2n`.
    pub fn new(n: usize) -> Self {
        Self::with_truncation(n, 2 * n)
    }

    pub fn with_truncation(n: usize, m: usize) -> Self {
        TruncatedOracle { n, m, generators: HashMap::new() }
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    fn x_exp(label: &KSubset, i: usize) -> usize {
        usize::from(!label.contains(i))
    }

    fn y_exp(label: &KSubset, i: usize) -> usize {
        usize::from(label.contains(i))
    }

    /// Coefficient equations for column maps `p_0, ..., p_(n-1)` of degree `< M`.
    fn equations(&self, src: &KSubset, tgt: &KSubset) -> Vec<Vec<Q>> {
        let (n, m) = (self.n, self.m);
        let var = |col: usize, d: usize| col * m + d;
        let mut rows = Vec::new();
        for i in 1..=n {
            let (prev, cur) = (i - 1, i % n);
            // x_i: t^xJ p_prev = p_cur t^xI ; y_i: t^yJ p_cur = p_prev t^yI
            let relations = [
                (prev, Self::x_exp(tgt, i), cur, Self::x_exp(src, i)),
                (cur, Self::y_exp(tgt, i), prev, Self::y_exp(src, i)),
            ];
            for (left, left_shift, right, right_shift) in relations {
                for e in 0..=m {
                    let mut row = vec![Q::zero(); n * m];
                    let mut any = false;
                    if e >= left_shift && e - left_shift < m {
                        row[var(left, e - left_shift)] += q(1);
                        any = true;
                    }
                    if e >= right_shift && e - right_shift < m {
                        row[var(right, e - right_shift)] -= q(1);
                        any = true;
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// All maps of degree below `M`, as coefficient vectors.
    pub fn hom_space(&self, src: &KSubset, tgt: &KSubset) -> Vec<Vec<Q>> {
        kernel(&self.equations(src, tgt), self.n * self.m)
    }

    pub fn hom_dim(&self, src: &KSubset, tgt: &KSubset) -> usize {
        self.hom_space(src, tgt).len()
    }

    /// The map of least column-0 degree, normalised to coefficient 1 there.
    pub fn generator(&mut self, src: &KSubset, tgt: &KSubset) -> Option<OracleMap> {
        if let Some(g) = self.generators.get(&(*src, *tgt)) {
            return g.clone();
        }
        let g = self.compute_generator(src, tgt);
        self.generators.insert((*src, *tgt), g.clone());
        g
    }

    fn compute_generator(&self, src: &KSubset, tgt: &KSubset) -> Option<OracleMap> {
        let mut basis = self.hom_space(src, tgt);
        let pivots = rref(&mut basis);
        if pivots.first().is_none_or(|&p| p >= self.m) {
            return None;
        }
        let row = &basis[0];
        let mut cols = Vec::with_capacity(self.n);
        for c in 0..self.n {
            let terms: Vec<(Q, usize)> = (0..self.m)
                .filter(|&d| !row[c * self.m + d].is_zero())
                .map(|d| (row[c * self.m + d].clone(), d))
                .collect();
            match terms.as_slice() {
                [t] => cols.push(t.clone()),
                _ => return None,
            }
        }
        Some(OracleMap { src: *src, tgt: *tgt, cols })
    }

    /// `second . first = c t^m g` for the generator `g` between the outer labels.
    pub fn compose(&mut self, second: &OracleMap, first: &OracleMap) -> Result<(Q, usize)> {
        let direct = self
            .generator(&first.src, &second.tgt)
            .ok_or_else(|| Error::Internal(format!("no generator {} -> {} below truncation", first.src, second.tgt)))?;
        let mut out: Option<(Q, usize)> = None;
        for c in 0..self.n {
            let coef = &first.cols[c].0 * &second.cols[c].0 / &direct.cols[c].0;
            let exp = first.cols[c].1 + second.cols[c].1;
            let Some(m) = exp.checked_sub(direct.cols[c].1) else {
                return Err(Error::Internal("composite below the generator".into()));
            };
            match &out {
                None => out = Some((coef, m)),
                Some((c0, m0)) if *c0 == coef && *m0 == m => {}
                Some(_) => return Err(Error::Internal("composite is not a multiple of the generator".into())),
            }
        }
        out.ok_or_else(|| Error::Internal("empty module".into()))
    }

    fn require(&mut self, src: &KSubset, tgt: &KSubset) -> Result<OracleMap> {
        self.generator(src, tgt)
            .ok_or_else(|| Error::Internal(format!("no generator {src} -> {tgt} below truncation {}", self.m)))
    }

    pub fn hom_shift(&mut self, src: &KSubset, tgt: &KSubset) -> Result<usize> {
        Ok(self.require(src, tgt)?.shift())
    }

    /// Least `m` such that `t^m g_JI` factors through some projective `L_P`.
    pub fn stable_hom_dim(&mut self, i: &KSubset, j: &KSubset) -> Result<usize> {
        let mut best = usize::MAX;
        for p in intervals(i.k(), i.n()) {
            let first = self.require(i, &p)?;
            let second = self.require(&p, j)?;
            best = best.min(self.compose(&second, &first)?.1);
        }
        Ok(best)
    }

    /// Checks `xy = yx = t` at every column and `x^k = y^(n-k)` from every column on `L_I`.
    pub fn check_module_relations(&self, label: &KSubset) -> bool {
        let (n, k) = (self.n, label.k());
        for i in 1..=n {
            if Self::x_exp(label, i) + Self::y_exp(label, i) != 1 {
                return false;
            }
        }
        for start in 0..n {
            let xs: usize = (1..=k).map(|j| Self::x_exp(label, (start + j - 1) % n + 1)).sum();
            let ys: usize = (k + 1..=n).map(|j| Self::y_exp(label, (start + j - 1) % n + 1)).sum();
            if xs != ys {
                return false;
            }
        }
        true
    }

    /// Realises the presentation of `L_I` by oracle maps.
    pub fn realise_presentation(&mut self, label: &KSubset) -> Result<RealisedPresentation> {
        let p = presentation(label);
        let (n, k) = (self.n, label.k());
        let us: Vec<KSubset> = p.u.iter().map(|&x| interval_after(n, k, x)).collect();
        let vs: Vec<KSubset> = p.v.iter().map(|&x| interval_after(n, k, x)).collect();
        let shifted = label.shift(k as i64);
        let f = vs.iter().map(|v| self.require(&shifted, v)).collect::<Result<Vec<_>>>()?;
        let h = us.iter().map(|u| self.require(u, label)).collect::<Result<Vec<_>>>()?;
        let mut d = vec![vec![None; vs.len()]; us.len()];
        for (a, row) in p.d.iter().enumerate() {
            for (b, entry) in row.iter().enumerate() {
                if let Some((sign, _)) = entry {
                    d[a][b] = Some((*sign, self.require(&vs[b], &us[a])?));
                }
            }
        }
        Ok(RealisedPresentation { label: *label, shifted, us, vs, f, d, h })
    }

    /// Exactness of the presentation, column by column: the composites vanish and
    /// the complex stays exact after setting `t = 0`.
    pub fn presentation_is_exact(&mut self, label: &KSubset) -> Result<bool> {
        let rp = self.realise_presentation(label)?;
        let (nu, nv) = (rp.us.len(), rp.vs.len());
        for c in 0..self.n {
            let eval = |m: &OracleMap| -> (Q, usize) { m.cols[c].clone() };
            // h . d and d . f as polynomials at this column
            for b in 0..nv {
                let mut terms: HashMap<usize, Q> = HashMap::new();
                for a in 0..nu {
                    if let Some((sign, g)) = &rp.d[a][b] {
                        let (c1, e1) = eval(g);
                        let (c2, e2) = eval(&rp.h[a]);
                        *terms.entry(e1 + e2).or_insert_with(Q::zero) += q(*sign) * c1 * c2;
                    }
                }
                if terms.values().any(|x| !x.is_zero()) {
                    return Ok(false);
                }
            }
            for a in 0..nu {
                let mut terms: HashMap<usize, Q> = HashMap::new();
                for b in 0..nv {
                    if let Some((sign, g)) = &rp.d[a][b] {
                        let (c1, e1) = eval(g);
                        let (c2, e2) = eval(&rp.f[b]);
                        *terms.entry(e1 + e2).or_insert_with(Q::zero) += q(*sign) * c1 * c2;
                    }
                }
                if terms.values().any(|x| !x.is_zero()) {
                    return Ok(false);
                }
            }
            let at_zero = |m: &OracleMap| -> Q {
                if m.cols[c].1 == 0 {
                    m.cols[c].0.clone()
                } else {
                    Q::zero()
                }
            };
            let f0: Vec<Vec<Q>> = rp.f.iter().map(|g| vec![at_zero(g)]).collect();
            let h0: Vec<Vec<Q>> = vec![rp.h.iter().map(at_zero).collect()];
            let d0: Vec<Vec<Q>> = (0..nu)
                .map(|a| {
                    (0..nv)
                        .map(|b| match &rp.d[a][b] {
                            Some((sign, g)) => q(*sign) * at_zero(g),
                            None => Q::zero(),
                        })
                        .collect()
                })
                .collect();
            let (rf, rd, rh) = (rank(&f0), rank(&d0), rank(&h0));
            if rf != 1 || rh != 1 || nv != rf + rd || nu != rd + rh {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dimension of `Ext^1(L_I, L_J)` as middle homology of
    /// `Hom(P0, L_J) -> Hom(P1, L_J) -> Hom(L_(I+k), L_J)`, summed over degrees
    /// within `M` of the lowest one.
    pub fn ext1_dim(&mut self, i: &KSubset, j: &KSubset) -> Result<usize> {
        let rp = self.realise_presentation(i)?;
        let (nu, nv) = (rp.us.len(), rp.vs.len());
        let exp0 = |m: &OracleMap| m.cols[0].1 as i64;

        // degree offsets making every map of the complex homogeneous
        let o_u: Vec<i64> = rp.h.iter().map(|h| -exp0(h)).collect();
        let mut o_v: Vec<Option<i64>> = vec![None; nv];
        for a in 0..nu {
            for b in 0..nv {
                if let Some((_, g)) = &rp.d[a][b] {
                    let val = o_u[a] - exp0(g);
                    match o_v[b] {
                        None => o_v[b] = Some(val),
                        Some(x) if x == val => {}
                        Some(_) => return Err(Error::Internal("presentation is not homogeneous".into())),
                    }
                }
            }
        }
        let o_top = o_v.iter().zip(&rp.f).find_map(|(o, f)| o.map(|o| o - exp0(f))).unwrap_or_default();
        let o_v: Vec<i64> = o_v.iter().zip(&rp.f).map(|(o, f)| o.unwrap_or(o_top + exp0(f))).collect();
        for (o, f) in o_v.iter().zip(&rp.f) {
            if o - exp0(f) != o_top {
                return Err(Error::Internal("presentation is not homogeneous".into()));
            }
        }

        let g_u = rp.us.iter().map(|u| self.require(u, j)).collect::<Result<Vec<_>>>()?;
        let g_v = rp.vs.iter().map(|v| self.require(v, j)).collect::<Result<Vec<_>>>()?;
        let g_top = self.require(&rp.shifted, j)?;
        let start_u: Vec<i64> = (0..nu).map(|a| exp0(&g_u[a]) + o_u[a]).collect();
        let start_v: Vec<i64> = (0..nv).map(|b| exp0(&g_v[b]) + o_v[b]).collect();
        let start_top = exp0(&g_top) + o_top;

        // composites with the generators, as (coefficient, extra t-power)
        let mut d1 = vec![vec![None; nu]; nv];
        for a in 0..nu {
            for b in 0..nv {
                if let Some((sign, g)) = &rp.d[a][b] {
                    let (c, m) = self.compose(&g_u[a], g)?;
                    d1[b][a] = Some((q(*sign) * c, m as i64));
                }
            }
        }
        let mut d2 = Vec::with_capacity(nv);
        for b in 0..nv {
            let (c, m) = self.compose(&g_v[b], &rp.f[b])?;
            d2.push((c, m as i64));
        }

        let lowest = start_v.iter().copied().min().unwrap_or(0);
        let mut total = 0usize;
        for deg in lowest..lowest + self.m as i64 {
            let c0: Vec<usize> = (0..nu).filter(|&a| deg >= start_u[a]).collect();
            let c1: Vec<usize> = (0..nv).filter(|&b| deg >= start_v[b]).collect();
            let top_present = deg >= start_top;
            let mut m1: Vec<Vec<Q>> = Vec::with_capacity(c1.len());
            for &b in &c1 {
                let mut row = Vec::with_capacity(c0.len());
                for &a in &c0 {
                    row.push(match &d1[b][a] {
                        Some((c, m)) => {
                            let alpha = deg - start_u[a];
                            if alpha + m + start_v[b] != deg {
                                return Err(Error::Internal("Hom complex is not graded".into()));
                            }
                            c.clone()
                        }
                        None => Q::zero(),
                    });
                }
                m1.push(row);
            }
            let mut m2: Vec<Vec<Q>> = Vec::new();
            if top_present {
                let mut row = Vec::with_capacity(c1.len());
                for &b in &c1 {
                    let (c, m) = &d2[b];
                    if deg - start_v[b] + m + start_top != deg {
                        return Err(Error::Internal("Hom complex is not graded".into()));
                    }
                    row.push(c.clone());
                }
                m2.push(row);
            }
            let kernel_dim = c1.len() - rank(&m2);
            let image_dim = rank(&transpose(&m1, c0.len()));
            total += kernel_dim - image_dim;
        }
        Ok(total)
    }
}

fn transpose(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

/// The presentation of `L_I` with every component realised by an oracle map.
#[derive(Debug, Clone)]
pub struct RealisedPresentation {
    pub label: KSubset,
    pub shifted: KSubset,
    pub us: Vec<KSubset>,
    pub vs: Vec<KSubset>,
    pub f: Vec<OracleMap>,
    pub d: Vec<Vec<Option<(i64, OracleMap)>>>,
    pub h: Vec<OracleMap>,
}

/// `Ext^1` dimension at truncation `2n`, confirmed at `2n + 2`; on disagreement the
/// truncation grows by `n` until two consecutive values agree.
pub fn stable_ext1_dim(i: &KSubset, j: &KSubset) -> Result<usize> {
    i.same_shape(j)?;
    let n = i.n();
    let mut m = 2 * n;
    while m <= 8 * n {
        let a = TruncatedOracle::with_truncation(n, m).ext1_dim(i, j)?;
        let b = TruncatedOracle::with_truncation(n, m + 2).ext1_dim(i, j)?;
        if a == b {
            return Ok(a);
        }
        m += n;
    }
    Err(Error::NoStabilization(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{hom_shift, stable_hom_dim};

    fn s(n: usize, t: &str) -> KSubset {
        KSubset::parse(n, t).unwrap()
    }

    #[test]
    fn generator_shift_matches_profiles() {
        let mut o = TruncatedOracle::new(9);
        let (a, b) = (s(9, "457"), s(9, "567"));
        assert_eq!(o.hom_shift(&a, &b).unwrap(), hom_shift(&a, &b).unwrap());
        assert_eq!(o.hom_shift(&b, &a).unwrap(), hom_shift(&b, &a).unwrap());
    }

    #[test]
    fn crossing_pair_has_ext() {
        let (a, b) = (s(4, "13"), s(4, "24"));
        assert!(stable_ext1_dim(&a, &b).unwrap() > 0);
        assert_eq!(stable_ext1_dim(&a, &a).unwrap(), 0);
    }

    #[test]
    fn presentation_exact_and_relations() {
        let mut o = TruncatedOracle::new(9);
        for l in ["134", "123", "147", "457"] {
            assert!(o.presentation_is_exact(&s(9, l)).unwrap(), "{l}");
            assert!(o.check_module_relations(&s(9, l)));
        }
    }

    #[test]
    fn stable_hom_small() {
        let mut o = TruncatedOracle::new(6);
        let (a, b) = (s(6, "13"), s(6, "35"));
        assert_eq!(o.stable_hom_dim(&a, &b).unwrap(), stable_hom_dim(&a, &b).unwrap());
    }
}
