//! Enumeration of maximal and of `+k`-invariant maximal collections, canonical
//! forms under the dihedral group, and exchange graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::ops::ControlFlow;

use crate::cyclic::{all_subsets, maximal_size, weakly_separated_unchecked, Collection, KSubset};
use crate::error::{Error, Result};
use crate::mutation::{geometric_exchange, orbit, orbit_exchange};
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    pub n: usize,
    pub max_solutions: usize,
    pub canonicalize: bool,
    pub orbit_only: bool,
    /// Search nodes visited before giving up with `SearchExhausted`.
    pub node_budget: u64,
}

impl SearchConfig {
    pub fn new(k: usize, n: usize) -> Self {
        SearchConfig {
            k,
            n,
            max_solutions: usize::MAX,
            canonicalize: false,
            orbit_only: false,
            node_budget: 20_000_000,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Bits::empty(len);
        (0..len).for_each(|i| b.insert(i));
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b))
    }
}

/// Bron-Kerbosch over groups of labels that must be taken together, keeping
/// cliques whose label count reaches the maximal size.
struct CliqueSearch {
    groups: Vec<Vec<KSubset>>,
    adj: Vec<Bits>,
    target: usize,
    budget: u64,
    nodes: u64,
}

impl CliqueSearch {
    fn new(groups: Vec<Vec<KSubset>>, target: usize, budget: u64) -> Self {
        let m = groups.len();
        let mut adj = vec![Bits::empty(m); m];
        for a in 0..m {
            for b in a + 1..m {
                let ok = groups[a].iter().all(|i| groups[b].iter().all(|j| weakly_separated_unchecked(i, j)));
                if ok {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        CliqueSearch { groups, adj, target, budget, nodes: 0 }
    }

    fn weight(&self, set: &Bits) -> usize {
        set.iter().map(|g| self.groups[g].len()).sum()
    }

    fn run(
        &mut self,
        chosen: &mut Vec<usize>,
        size: usize,
        p: Bits,
        mut x: Bits,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchExhausted(format!("node budget {} reached", self.budget)));
        }
        if p.is_empty() {
            if x.is_empty() && size == self.target {
                return Ok(visit(chosen));
            }
            return Ok(ControlFlow::Continue(()));
        }
        if size + self.weight(&p) < self.target {
            return Ok(ControlFlow::Continue(()));
        }
        let pivot = p.or(&x).iter().max_by_key(|&u| (p.and(&self.adj[u]).count(), usize::MAX - u)).expect("nonempty");
        let branch: Vec<usize> = p.and_not(&self.adj[pivot]).iter().collect();
        let mut p = p;
        for v in branch {
            chosen.push(v);
            let flow =
                self.run(chosen, size + self.groups[v].len(), p.and(&self.adj[v]), x.and(&self.adj[v]), visit)?;
            chosen.pop();
            if flow.is_break() {
                return Ok(flow);
            }
            p.remove(v);
            x.insert(v);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn for_each(&mut self, visit: &mut dyn FnMut(Vec<KSubset>) -> ControlFlow<()>) -> Result<()> {
        let m = self.groups.len();
        let groups = self.groups.clone();
        let mut inner = |chosen: &[usize]| visit(chosen.iter().flat_map(|&g| groups[g].iter().copied()).collect());
        self.run(&mut Vec::new(), 0, Bits::full(m), Bits::empty(m), &mut inner).map(|_| ())
    }
}

fn check_params(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n || n > 63 {
        return Err(Error::ParameterMismatch(format!("({k},{n}) needs 0 < k < n < 64")));
    }
    Ok(())
}

/// Visits every maximal collection; the callback may stop the search.
pub fn for_each_maximal(
    k: usize,
    n: usize,
    budget: u64,
    mut visit: impl FnMut(Collection) -> ControlFlow<()>,
) -> Result<()> {
    check_params(k, n)?;
    let groups: Vec<Vec<KSubset>> =
        all_subsets(k, n).into_iter().filter(|s| !s.is_interval()).map(|s| vec![s]).collect();
    let mut search = CliqueSearch::new(groups, maximal_size(k, n) - n, budget);
    let intervals = crate::cyclic::intervals(k, n);
    search.for_each(&mut |mut labels| {
        labels.extend(intervals.iter().copied());
        visit(Collection::from_trusted(k, n, labels))
    })
}

/// Every maximal collection of `(k, n)`, sorted.
pub fn all_maximal_collections(k: usize, n: usize) -> Result<Vec<Collection>> {
    let mut out = Vec::new();
    for_each_maximal(k, n, SearchConfig::new(k, n).node_budget, |c| {
        out.push(c);
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// `+k` orbits of internal labels whose members are pairwise weakly separated,
/// sorted by least member.
pub fn self_compatible_orbits(k: usize, n: usize) -> Vec<Vec<KSubset>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in all_subsets(k, n) {
        if s.is_interval() || seen.contains(&s) {
            continue;
        }
        let mut o = orbit(&s, k);
        seen.extend(o.iter().copied());
        let ok = o.iter().enumerate().all(|(a, i)| o[a + 1..].iter().all(|j| weakly_separated_unchecked(i, j)));
        if ok {
            o.sort();
            out.push(o);
        }
    }
    out
}

/// Visits every `+k`-invariant maximal collection, orbits branched in order of
/// their least member.
pub fn for_each_symmetric(config: &SearchConfig, mut visit: impl FnMut(Collection) -> ControlFlow<()>) -> Result<()> {
    let (k, n) = (config.k, config.n);
    check_params(k, n)?;
    let target = maximal_size(k, n) - n;
    let mut search = CliqueSearch::new(self_compatible_orbits(k, n), target, config.node_budget);
    let intervals = crate::cyclic::intervals(k, n);
    search.for_each(&mut |mut labels| {
        labels.extend(intervals.iter().copied());
        visit(Collection::from_trusted(k, n, labels))
    })
}

/// Symmetric maximal collections, at most `max_solutions`, optionally one per
/// dihedral class.
pub fn enumerate_symmetric(config: &SearchConfig) -> Result<Vec<Collection>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for_each_symmetric(config, |c| {
        let c = if config.canonicalize { canonical_form(&c) } else { c };
        if seen.insert(c.clone()) {
            out.push(c);
        }
        if out.len() >= config.max_solutions {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    out.sort();
    Ok(out)
}

/// Least member list over rotations and reflections.
pub fn canonical_form(coll: &Collection) -> Collection {
    let mut best = coll.clone();
    for base in [coll.clone(), coll.reflected()] {
        for s in 0..coll.n() as i64 {
            let c = base.shifted(s);
            if c.members() < best.members() {
                best = c;
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub nodes: Vec<Collection>,
    /// `(from, to, label)` with `from < to`, one per exchange.
    pub edges: Vec<(usize, usize, String)>,
}

/// Neighbours of a collection by single exchanges or by orbit exchanges.
pub fn exchange_neighbours(coll: &Collection, orbit_only: bool) -> Result<Vec<(String, Collection)>> {
    let q = Quiver::from_collection(coll)?;
    let mut out = Vec::new();
    let mut done = BTreeSet::new();
    for v in &q.vertices {
        let Some(label) = v.label else { continue };
        if v.frozen || done.contains(&label) {
            continue;
        }
        if orbit_only {
            let o = orbit(&label, coll.k());
            done.extend(o.iter().copied());
            match orbit_exchange(coll, &label) {
                Ok(c) => {
                    let names: Vec<String> = o.iter().map(|m| m.to_string()).collect();
                    out.push((format!("({})", names.join(" ")), c));
                }
                Err(Error::NotMutable { .. } | Error::OrbitNotIndependent(_)) => {}
                Err(e) => return Err(e),
            }
        } else {
            done.insert(label);
            match geometric_exchange(coll, &label) {
                Ok(c) => out.push((label.to_string(), c)),
                Err(Error::NotMutable { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Breadth-first exchange graph up to `depth` moves from `start`.
pub fn exchange_graph(start: &Collection, depth: usize, config: &SearchConfig) -> Result<ExchangeGraph> {
    let key = |c: &Collection| if config.canonicalize { canonical_form(c) } else { c.clone() };
    let mut index: BTreeMap<Collection, usize> = BTreeMap::new();
    let mut nodes = vec![key(start)];
    index.insert(nodes[0].clone(), 0);
    let mut reps = vec![start.clone()];
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((u, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for (label, c) in exchange_neighbours(&reps[u], config.orbit_only)? {
            let kc = key(&c);
            let v = match index.get(&kc) {
                Some(&v) => v,
                None => {
                    let v = nodes.len();
                    index.insert(kc.clone(), v);
                    nodes.push(kc);
                    reps.push(c);
                    queue.push_back((v, d + 1));
                    v
                }
            };
            if u != v {
                edges.insert((u.min(v), u.max(v), label));
            }
        }
    }
    Ok(ExchangeGraph { nodes, edges: edges.into_iter().collect() })
}

/// Connected components of the orbit-exchange relation on a set of symmetric collections.
pub fn orbit_exchange_components(colls: &[Collection]) -> Result<Vec<Vec<usize>>> {
    let index: BTreeMap<&Collection, usize> = colls.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..colls.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, c) in colls.iter().enumerate() {
        for (_, d) in exchange_neighbours(c, true)? {
            if let Some(&j) = index.get(&d) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..colls.len() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    Ok(comps.into_values().collect())
}

/// Stable hex name for a collection.
pub fn collection_hash(coll: &Collection) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for m in coll.members() {
        for b in m.mask().to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

impl ExchangeGraph {
    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (a, b, _) in &self.edges {
            adj[*a].push(*b);
            adj[*b].push(*a);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            if !std::mem::replace(&mut seen[u], true) {
                stack.extend(adj[u].iter().copied());
            }
        }
        self.nodes.is_empty() || seen.iter().all(|&s| s)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for c in &self.nodes {
            let _ = writeln!(out, "  \"{}\";", collection_hash(c));
        }
        for (a, b, label) in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{}\"];",
                collection_hash(&self.nodes[*a]),
                collection_hash(&self.nodes[*b]),
                label
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::symmetric_3_9;

    #[test]
    fn counts_of_maximal_collections() {
        assert_eq!(all_maximal_collections(2, 4).unwrap().len(), 2);
        assert_eq!(all_maximal_collections(2, 5).unwrap().len(), 5);
        assert_eq!(all_maximal_collections(2, 6).unwrap().len(), 14);
        assert_eq!(all_maximal_collections(3, 6).unwrap().len(), 34);
    }

    #[test]
    fn symmetric_2_4() {
        let cfg = SearchConfig::new(2, 4);
        assert_eq!(enumerate_symmetric(&cfg).unwrap().len(), 2);
        let canon = SearchConfig { canonicalize: true, ..cfg };
        assert_eq!(enumerate_symmetric(&canon).unwrap().len(), 1);
    }

    #[test]
    fn symmetric_3_9_is_found() {
        let found = enumerate_symmetric(&SearchConfig::new(3, 9)).unwrap();
        let target = symmetric_3_9();
        assert!(found.iter().any(|c| (0..9).any(|s| c.shifted(s) == target)));
        assert!(found.iter().all(|c| c.is_symmetric() && c.is_maximal()));
    }

    #[test]
    fn exchange_graph_2_6() {
        let start = all_maximal_collections(2, 6).unwrap().remove(0);
        let g = exchange_graph(&start, usize::MAX, &SearchConfig::new(2, 6)).unwrap();
        assert_eq!(g.nodes.len(), 14);
        assert!(g.is_connected());
        assert!(g.to_dot().starts_with("graph"));
    }
}
