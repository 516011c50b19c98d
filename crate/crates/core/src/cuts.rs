//! Cuts of a quiver with potential, cut mutation, homogeneity and truncated
//! Jacobian presentations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// A set of arrow ids meeting every potential cycle exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cut {
    pub arrows: BTreeSet<usize>,
}

impl Cut {
    pub fn new<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        Cut { arrows: ids.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Cut { arrows: BTreeSet::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

fn ids_to_indices(q: &Quiver, cut: &Cut) -> Result<Vec<usize>> {
    cut.arrows
        .iter()
        .map(|&id| q.arrow_index(id).ok_or_else(|| Error::InvalidCut(format!("unknown arrow id {id}"))))
        .collect()
}

/// Checks that every face has exactly one arrow in the cut.
pub fn validate_cut(q: &Quiver, cut: &Cut) -> Result<()> {
    let chosen: BTreeSet<usize> = ids_to_indices(q, cut)?.into_iter().collect();
    for (fi, f) in q.faces.iter().enumerate() {
        let hits = f.arrows.iter().filter(|a| chosen.contains(a)).count();
        if hits != 1 {
            return Err(Error::InvalidCut(format!("face {fi} meets the cut {hits} times")));
        }
    }
    let on_faces: BTreeSet<usize> = q.faces.iter().flat_map(|f| f.arrows.iter().copied()).collect();
    if let Some(a) = chosen.iter().find(|a| !on_faces.contains(a)) {
        return Err(Error::InvalidCut(format!("arrow {} lies on no face", q.arrows[*a].id)));
    }
    Ok(())
}

pub fn is_cut(q: &Quiver, cut: &Cut) -> bool {
    validate_cut(q, cut).is_ok()
}

/// Exact-cover search: faces are the items, each arrow covers the faces it lies on.
struct CoverSearch<'a> {
    q: &'a Quiver,
    faces_of: Vec<Vec<usize>>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
}

impl<'a> CoverSearch<'a> {
    fn new(q: &'a Quiver) -> Self {
        CoverSearch { q, faces_of: q.faces_of_arrows(), covered: vec![false; q.faces.len()], chosen: Vec::new() }
    }

    fn available(&self, a: usize) -> bool {
        !self.faces_of[a].is_empty() && self.faces_of[a].iter().all(|&f| !self.covered[f])
    }

    fn set(&mut self, a: usize, on: bool) {
        for &f in &self.faces_of[a] {
            self.covered[f] = on;
        }
        if on {
            self.chosen.push(a);
        } else {
            self.chosen.pop();
        }
    }

    /// Uncovered face with fewest options, `None` when all are covered.
    fn pick(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (fi, f) in self.q.faces.iter().enumerate() {
            if self.covered[fi] {
                continue;
            }
            let mut opts: Vec<usize> = f.arrows.iter().copied().filter(|&a| self.available(a)).collect();
            opts.sort();
            if best.as_ref().is_none_or(|(_, b)| opts.len() < b.len()) {
                let empty = opts.is_empty();
                best = Some((fi, opts));
                if empty {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self, limit: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= limit {
            return;
        }
        let Some((_, opts)) = self.pick() else {
            out.push(self.chosen.clone());
            return;
        };
        for a in opts {
            self.set(a, true);
            self.run(limit, out);
            self.set(a, false);
            if out.len() >= limit {
                return;
            }
        }
    }
}

fn to_cut(q: &Quiver, indices: &[usize]) -> Cut {
    Cut::new(indices.iter().map(|&a| q.arrows[a].id))
}

/// All cuts (up to `limit`), in a deterministic order.
pub fn enumerate_cuts(q: &Quiver, limit: usize) -> Vec<Cut> {
    let mut search = CoverSearch::new(q);
    let mut out = Vec::new();
    search.run(limit, &mut out);
    let mut cuts: Vec<Cut> = out.iter().map(|c| to_cut(q, c)).collect();
    cuts.sort();
    cuts
}

/// Some cut containing the arrow at index `a`, if any.
pub fn find_cut_containing(q: &Quiver, a: usize) -> Option<Cut> {
    let mut search = CoverSearch::new(q);
    if !search.available(a) {
        return None;
    }
    search.set(a, true);
    let mut out = Vec::new();
    search.run(1, &mut out);
    out.first().map(|c| to_cut(q, c))
}

/// Every arrow lies in some cut.
pub fn has_enough_cuts(q: &Quiver) -> bool {
    let mut covered = vec![false; q.arrows.len()];
    for a in 0..q.arrows.len() {
        if covered[a] {
            continue;
        }
        match find_cut_containing(q, a) {
            Some(c) => {
                for id in &c.arrows {
                    if let Some(i) = q.arrow_index(*id) {
                        covered[i] = true;
                    }
                }
            }
            None => return false,
        }
    }
    true
}

/// Arrow weights from a family of cuts covering every arrow that lies in some cut:
/// the weight of an arrow is the number of these cuts containing it. All faces
/// then have the same weight, the size of the family.
pub fn cut_cover_weights(q: &Quiver) -> Vec<usize> {
    let mut weights = vec![0usize; q.arrows.len()];
    let mut covered = vec![false; q.arrows.len()];
    for a in 0..q.arrows.len() {
        if covered[a] {
            continue;
        }
        if let Some(c) = find_cut_containing(q, a) {
            for id in &c.arrows {
                let i = q.arrow_index(*id).expect("arrow of the quiver");
                weights[i] += 1;
                covered[i] = true;
            }
        }
    }
    weights
}

/// Toggles the arrows at a strict source or strict sink of the cut.
pub fn cut_mutation(q: &Quiver, cut: &Cut, vertex: usize) -> Result<Cut> {
    validate_cut(q, cut)?;
    let in_cut = |i: usize| cut.arrows.contains(&q.arrows[i].id);
    let ins = q.in_arrows(vertex);
    let outs = q.out_arrows(vertex);
    let source = ins.iter().all(|&a| in_cut(a)) && outs.iter().all(|&a| !in_cut(a));
    let sink = outs.iter().all(|&a| in_cut(a)) && ins.iter().all(|&a| !in_cut(a));
    if !(source || sink) {
        return Err(Error::NotStrict(q.vertices[vertex].name.clone()));
    }
    let mut arrows = cut.arrows.clone();
    for a in ins.iter().chain(&outs) {
        let id = q.arrows[*a].id;
        if !arrows.remove(&id) {
            arrows.insert(id);
        }
    }
    let out = Cut { arrows };
    validate_cut(q, &out)?;
    Ok(out)
}

/// The rotation `I -> I + k` maps the cut onto itself.
pub fn is_homogeneous_cut(q: &Quiver, cut: &Cut) -> Result<bool> {
    let rho = q.rho_automorphism().ok_or(Error::NotSymmetric)?;
    let idx = ids_to_indices(q, cut)?;
    let image: BTreeSet<usize> = idx.iter().map(|&a| q.arrows[rho.arrow[a]].id).collect();
    Ok(image == cut.arrows)
}

/// Image of a cut under the rotation `I -> I + k`.
pub fn rotate_cut(q: &Quiver, cut: &Cut) -> Result<Cut> {
    let rho = q.rho_automorphism().ok_or(Error::NotSymmetric)?;
    let idx = ids_to_indices(q, cut)?;
    Ok(Cut::new(idx.iter().map(|&a| q.arrows[rho.arrow[a]].id)))
}

/// Quiver without the cut arrows, with the derivatives at cut arrows as relations.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedPresentation {
    /// Indices of the surviving arrows.
    pub arrows: Vec<usize>,
    /// `(cut arrow index, terms)` with each term a sign and a path of arrow indices.
    pub relations: Vec<(usize, Vec<(i64, Vec<usize>)>)>,
}

pub fn truncated_presentation(q: &Quiver, cut: &Cut) -> Result<TruncatedPresentation> {
    validate_cut(q, cut)?;
    let cut_idx: BTreeSet<usize> = ids_to_indices(q, cut)?.into_iter().collect();
    let arrows: Vec<usize> = (0..q.arrows.len()).filter(|a| !cut_idx.contains(a)).collect();
    let relations = cut_idx.iter().map(|&c| (c, q.cyclic_derivative(c))).collect();
    Ok(TruncatedPresentation { arrows, relations })
}
