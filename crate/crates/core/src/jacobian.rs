//! Jacobian algebras of the underlying quiver with potential: a graded path
//! quotient engine, socles and the self-injectivity test.
//!
//! Paths are read left to right, `ab` meaning `a` then `b`. The engine builds
//! `e_i A` (paths starting at `i`) one weight at a time, where the weight of an
//! arrow is the number of cuts containing it in a fixed covering family of
//! cuts. Every relation `d_a W` is then homogeneous.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cuts::{cut_cover_weights, truncated_presentation, Cut};
use crate::cyclic::{Collection, KSubset};
use crate::error::{Error, Result};
use crate::linalg::{rank, rref, Q};
use crate::modules::stable_hom_dim_unchecked;
use crate::quiver::{permutation_cycles, Quiver};

/// A relation: a signed sum of parallel paths of arrow indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

/// A quiver with homogeneous relations, ready for the path quotient engine.
#[derive(Debug, Clone)]
pub struct GradedQuiver {
    pub vertex_count: usize,
    /// `(src, tgt)` per arrow.
    pub arrows: Vec<(usize, usize)>,
    pub weights: Vec<usize>,
    pub relations: Vec<Relation>,
    /// Highest degree explored before giving up.
    pub degree_cap: usize,
}

#[derive(Debug, Clone)]
struct RelationData {
    src: usize,
    tgt: usize,
    weight: usize,
    terms: Vec<(Q, Vec<usize>)>,
}

/// `e_i A` with a basis graded by degree and end vertex, and the right action of arrows.
#[derive(Debug, Clone)]
pub struct RightProjective {
    pub start: usize,
    /// `(end vertex, degree)` per basis element.
    pub basis: Vec<(usize, usize)>,
    action: HashMap<(usize, usize), Vec<(usize, Q)>>,
}

impl RightProjective {
    /// `b * a` in the basis.
    pub fn act(&self, b: usize, a: usize) -> &[(usize, Q)] {
        self.action.get(&(b, a)).map_or(&[], |v| v.as_slice())
    }
}

impl GradedQuiver {
    pub fn new(
        vertex_count: usize,
        arrows: Vec<(usize, usize)>,
        weights: Vec<usize>,
        relations: Vec<Relation>,
    ) -> Self {
        let max_w = weights.iter().copied().max().unwrap_or(0).max(1);
        let degree_cap = 4 * arrows.len().max(1) * max_w;
        GradedQuiver { vertex_count, arrows, weights, relations, degree_cap }
    }

    fn path_weight(&self, p: &[usize]) -> usize {
        p.iter().map(|&a| self.weights[a]).sum()
    }

    fn relation_data(&self) -> Result<Vec<RelationData>> {
        let mut out = Vec::new();
        for r in &self.relations {
            let terms: Vec<&(i64, Vec<usize>)> = r.terms.iter().filter(|(c, p)| *c != 0 && !p.is_empty()).collect();
            let Some((_, first)) = terms.first() else { continue };
            let src = self.arrows[first[0]].0;
            let tgt = self.arrows[*first.last().expect("nonempty")].1;
            let weight = self.path_weight(first);
            for (_, p) in &terms {
                if self.arrows[p[0]].0 != src || self.arrows[*p.last().expect("nonempty")].1 != tgt {
                    return Err(Error::Malformed("relation terms are not parallel".into()));
                }
                if p.windows(2).any(|w| self.arrows[w[0]].1 != self.arrows[w[1]].0) {
                    return Err(Error::Malformed("relation term is not a path".into()));
                }
                if self.path_weight(p) != weight {
                    return Err(Error::NoGrading("relation is not homogeneous".into()));
                }
            }
            out.push(RelationData {
                src,
                tgt,
                weight,
                terms: terms.iter().map(|(c, p)| (crate::linalg::q(*c), p.clone())).collect(),
            });
        }
        Ok(out)
    }

    /// Vertices ordered so that weight-zero arrows go forward.
    fn zero_weight_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertex_count];
        for (a, &(_, t)) in self.arrows.iter().enumerate() {
            if self.weights[a] == 0 {
                indeg[t] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::new();
        while let Some(v) = ready.pop() {
            order.push(v);
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                if s == v && self.weights[a] == 0 {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        if order.len() != self.vertex_count {
            return Err(Error::NoGrading("weight-zero arrows form a cycle".into()));
        }
        Ok(order)
    }

    /// The right projective at `start`.
    pub fn right_projective(&self, start: usize) -> Result<RightProjective> {
        let rels = self.relation_data()?;
        let order = self.zero_weight_order()?;
        let max_w = self.weights.iter().copied().max().unwrap_or(0);
        let mut module = RightProjective { start, basis: Vec::new(), action: HashMap::new() };
        let mut blocks: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut zeros = 0;
        let mut d = 0;
        loop {
            if d > self.degree_cap {
                return Err(Error::NoStabilization(self.degree_cap));
            }
            let before = module.basis.len();
            for &j in &order {
                self.fill_block(&mut module, &mut blocks, &rels, d, j);
            }
            if max_w == 0 {
                break;
            }
            if module.basis.len() == before {
                zeros += 1;
                if zeros >= max_w {
                    break;
                }
            } else {
                zeros = 0;
            }
            d += 1;
        }
        Ok(module)
    }

    fn reduce(&self, module: &RightProjective, b: usize, path: &[usize]) -> Vec<(usize, Q)> {
        let mut vec: BTreeMap<usize, Q> = BTreeMap::from([(b, Q::one())]);
        for &a in path {
            let mut next: BTreeMap<usize, Q> = BTreeMap::new();
            for (x, c) in &vec {
                for (y, e) in module.act(*x, a) {
                    *next.entry(*y).or_insert_with(Q::zero) += c * e;
                }
            }
            next.retain(|_, v| !v.is_zero());
            vec = next;
        }
        vec.into_iter().collect()
    }

    fn fill_block(
        &self,
        module: &mut RightProjective,
        blocks: &mut HashMap<(usize, usize), Vec<usize>>,
        rels: &[RelationData],
        d: usize,
        j: usize,
    ) {
        let mut new_basis = Vec::new();
        if d == 0 && j == module.start {
            new_basis.push(module.basis.len());
            module.basis.push((j, 0));
        }
        let mut gens: Vec<(usize, usize)> = Vec::new();
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let w = self.weights[a];
            if t != j || w > d {
                continue;
            }
            if let Some(bs) = blocks.get(&(d - w, s)) {
                gens.extend(bs.iter().map(|&b| (b, a)));
            }
        }
        gens.sort();
        let col: HashMap<(usize, usize), usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let mut rows = Vec::new();
        for r in rels.iter().filter(|r| r.tgt == j && r.weight <= d) {
            let Some(bs) = blocks.get(&(d - r.weight, r.src)) else { continue };
            for &m in bs {
                let mut row = vec![Q::zero(); gens.len()];
                for (c, p) in &r.terms {
                    let (last, prefix) = p.split_last().expect("nonempty");
                    for (b, e) in self.reduce(module, m, prefix) {
                        let idx = col[&(b, *last)];
                        row[idx] += c * &e;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
        let mut fresh = vec![usize::MAX; gens.len()];
        for c in 0..gens.len() {
            if !pivots.contains(&c) {
                fresh[c] = module.basis.len();
                new_basis.push(module.basis.len());
                module.basis.push((j, d));
            }
        }
        for (c, g) in gens.iter().enumerate() {
            let expr = match pivots.iter().position(|&p| p == c) {
                None => vec![(fresh[c], Q::one())],
                Some(r) => (0..gens.len())
                    .filter(|&f| fresh[f] != usize::MAX && !rows[r][f].is_zero())
                    .map(|f| (fresh[f], -rows[r][f].clone()))
                    .collect(),
            };
            module.action.insert(*g, expr);
        }
        if !new_basis.is_empty() {
            blocks.insert((d, j), new_basis);
        }
    }

    /// End vertices of a basis of the socle of `e_i A`, with multiplicity.
    pub fn socle(&self, module: &RightProjective) -> Vec<usize> {
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (b, &(end, deg)) in module.basis.iter().enumerate() {
            blocks.entry((deg, end)).or_default().push(b);
        }
        let mut out = Vec::new();
        for (&(_, end), bs) in &blocks {
            let mut targets: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut cols: Vec<BTreeMap<(usize, usize), Q>> = Vec::new();
            for &b in bs {
                let mut col = BTreeMap::new();
                for (a, &(s, _)) in self.arrows.iter().enumerate() {
                    if s != end {
                        continue;
                    }
                    for (y, e) in module.act(b, a) {
                        let n = targets.len();
                        targets.entry((a, *y)).or_insert(n);
                        col.insert((a, *y), e.clone());
                    }
                }
                cols.push(col);
            }
            let rows: Vec<Vec<Q>> = targets
                .keys()
                .map(|key| cols.iter().map(|c| c.get(key).cloned().unwrap_or_else(Q::zero)).collect())
                .collect();
            let kernel = bs.len() - rank(&rows);
            out.extend(std::iter::repeat_n(end, kernel));
        }
        out
    }

    pub fn table(&self, names: Vec<String>) -> Result<AlgebraTable> {
        let v = self.vertex_count;
        let mut graded = vec![vec![Vec::new(); v]; v];
        let mut socles = Vec::with_capacity(v);
        for i in 0..v {
            let m = self.right_projective(i)?;
            for &(end, deg) in &m.basis {
                let g: &mut Vec<usize> = &mut graded[i][end];
                if g.len() <= deg {
                    g.resize(deg + 1, 0);
                }
                g[deg] += 1;
            }
            socles.push(self.socle(&m));
        }
        Ok(AlgebraTable::from_graded(names, graded, Some(socles)))
    }
}

/// Dimensions of `e_i A e_j` (paths from `i` to `j`) by degree, and socles of `e_i A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraTable {
    pub vertices: Vec<String>,
    pub graded: Vec<Vec<Vec<usize>>>,
    pub dims: Vec<Vec<usize>>,
    /// End vertices of a socle basis of each `e_i A`.
    pub socles: Option<Vec<Vec<usize>>>,
}

impl AlgebraTable {
    fn from_graded(vertices: Vec<String>, graded: Vec<Vec<Vec<usize>>>, socles: Option<Vec<Vec<usize>>>) -> Self {
        let dims = graded.iter().map(|row| row.iter().map(|g| g.iter().sum()).collect()).collect();
        AlgebraTable { vertices, graded, dims, socles }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.dims[i].iter().sum()
    }

    pub fn column_sum(&self, j: usize) -> usize {
        self.dims.iter().map(|r| r[j]).sum()
    }
}

fn names(q: &Quiver) -> Vec<String> {
    q.vertices.iter().map(|v| v.name.clone()).collect()
}

/// Engine input for the Jacobian algebra of a quiver with potential.
pub fn jacobian_presentation(q: &Quiver) -> GradedQuiver {
    let arrows = q.arrows.iter().map(|a| (a.src, a.tgt)).collect();
    let relations = (0..q.arrows.len())
        .map(|a| Relation { terms: q.cyclic_derivative(a) })
        .filter(|r| !r.terms.is_empty())
        .collect();
    GradedQuiver::new(q.vertex_count(), arrows, cut_cover_weights(q), relations)
}

/// Jacobian algebra of the (already underlined) quiver with potential.
pub fn jacobian_by_paths(q: &Quiver) -> Result<AlgebraTable> {
    jacobian_presentation(q).table(names(q))
}

/// Engine input for the truncated Jacobian algebra of a cut. Every arrow has weight 0.
pub fn truncated_graded(q: &Quiver, cut: &Cut) -> Result<GradedQuiver> {
    let t = truncated_presentation(q, cut)?;
    let mut local = vec![usize::MAX; q.arrows.len()];
    for (i, &a) in t.arrows.iter().enumerate() {
        local[a] = i;
    }
    let arrows = t.arrows.iter().map(|&a| (q.arrows[a].src, q.arrows[a].tgt)).collect();
    let relations = t
        .relations
        .iter()
        .map(|(_, terms)| Relation {
            terms: terms.iter().map(|(c, p)| (*c, p.iter().map(|&a| local[a]).collect())).collect(),
        })
        .collect();
    Ok(GradedQuiver::new(q.vertex_count(), arrows, vec![0; t.arrows.len()], relations))
}

pub fn truncated_jacobian(q: &Quiver, cut: &Cut) -> Result<AlgebraTable> {
    truncated_graded(q, cut)?.table(names(q))
}

/// Stable Hom dimensions between internal labels, `dims[I][J]` counting the
/// surviving `t`-powers of `L_I -> L_J`. An arrow `I -> J` goes to the generator.
pub fn jacobian_by_stable_hom(coll: &Collection) -> AlgebraTable {
    let internal = coll.internal();
    let graded =
        internal.iter().map(|i| internal.iter().map(|j| vec![1; stable_hom_dim_unchecked(i, j)]).collect()).collect();
    AlgebraTable::from_graded(internal.iter().map(|l| l.to_string()).collect(), graded, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfInjectivityReport {
    pub self_injective: bool,
    /// `sigma[i]`: the end vertex of the socle of `e_i A`.
    pub sigma: Option<Vec<usize>>,
    pub socle_simple: Vec<bool>,
    pub dim_matched: Vec<bool>,
    pub dim_total: usize,
    pub dim_matrix: Vec<Vec<usize>>,
}

/// `e_i A` is injective with socle `S_sigma(i)` for all `i`, checked by simple socles,
/// `sigma` bijective and `dim e_i A = dim A e_sigma(i)`.
pub fn self_injectivity(table: &AlgebraTable) -> Result<SelfInjectivityReport> {
    let socles = table.socles.as_ref().ok_or_else(|| Error::Malformed("table has no socles".into()))?;
    let v = table.vertices.len();
    let socle_simple: Vec<bool> = socles.iter().map(|s| s.len() == 1).collect();
    let mut sigma = None;
    let mut dim_matched = vec![false; v];
    if socle_simple.iter().all(|&b| b) {
        let s: Vec<usize> = socles.iter().map(|s| s[0]).collect();
        for i in 0..v {
            dim_matched[i] = table.row_sum(i) == table.column_sum(s[i]);
        }
        let mut seen = vec![false; v];
        s.iter().for_each(|&j| seen[j] = true);
        if seen.iter().all(|&b| b) {
            sigma = Some(s);
        }
    }
    let self_injective = sigma.is_some() && dim_matched.iter().all(|&b| b);
    Ok(SelfInjectivityReport {
        self_injective,
        sigma,
        socle_simple,
        dim_matched,
        dim_total: table.total(),
        dim_matrix: table.dims.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportJson {
    pub self_injective: bool,
    pub sigma: Option<Vec<Vec<String>>>,
    pub dim_total: usize,
    pub dim_matrix: Vec<Vec<usize>>,
}

impl SelfInjectivityReport {
    /// The Nakayama permutation by vertex name, as cycles.
    pub fn sigma_cycles(&self, vertices: &[String]) -> Option<Vec<Vec<String>>> {
        let s = self.sigma.as_ref()?;
        let perm: BTreeMap<usize, usize> = s.iter().copied().enumerate().collect();
        Some(
            permutation_cycles(&perm)
                .into_iter()
                .map(|c| c.into_iter().map(|i| vertices[i].clone()).collect())
                .collect(),
        )
    }

    pub fn to_json(&self, vertices: &[String]) -> ReportJson {
        ReportJson {
            self_injective: self.self_injective,
            sigma: self.sigma_cycles(vertices),
            dim_total: self.dim_total,
            dim_matrix: self.dim_matrix.clone(),
        }
    }
}

/// Symmetric collections are exactly those with self-injective Jacobian algebra,
/// and then the socle permutation is `I -> I - k`.
pub fn verify_main_theorem(coll: &Collection) -> Result<bool> {
    let q = Quiver::from_collection(coll)?.underline();
    let report = self_injectivity(&jacobian_by_paths(&q)?)?;
    if coll.is_symmetric() != report.self_injective {
        return Ok(false);
    }
    if let Some(sigma) = &report.sigma {
        if coll.is_symmetric() {
            let k = coll.k() as i64;
            for (i, &j) in sigma.iter().enumerate() {
                let (a, b) = (q.vertices[i].label, q.vertices[j].label);
                if a.map(|l: KSubset| l.shift(-k)) != b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
