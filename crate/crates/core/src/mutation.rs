//! Geometric exchange on collections and the matching quiver mutation.

use std::collections::BTreeMap;

use crate::cyclic::{all_subsets, weakly_separated_unchecked, Collection, KSubset};
use crate::error::{Error, Result};
use crate::quiver::{Arrow, Quiver, Vertex};
use crate::tiling::position;

fn mutable_vertex(q: &Quiver, label: &KSubset) -> Result<usize> {
    let v = q.vertex_index(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
    if q.vertices[v].frozen {
        return Err(Error::Frozen(label.to_string()));
    }
    let valency = q.valency(v);
    if valency != 4 {
        return Err(Error::NotMutable { label: label.to_string(), valency });
    }
    Ok(v)
}

/// Quadrilateral rule: with neighbours `S+ab, S+bc, S+cd, S+ad` of `I = S+ac`,
/// the new label is `S+bd`.
pub fn quadrilateral_label(q: &Quiver, v: usize) -> Option<KSubset> {
    let label = q.vertices[v].label?;
    let nbrs: Vec<KSubset> = q.neighbors(v).into_iter().map(|w| q.vertices[w].label).collect::<Option<Vec<_>>>()?;
    let common = nbrs.iter().fold(label, |acc, m| acc.intersection(m));
    let union = nbrs.iter().fold(label, |acc, m| acc.union(m));
    let new = common.union(&union.difference(&label));
    (new.k() == label.k() && new != label).then_some(new)
}

/// Replaces a valency-4 internal label by its exchange partner.
pub fn geometric_exchange(coll: &Collection, label: &KSubset) -> Result<Collection> {
    let q = Quiver::from_collection(coll)?;
    exchange_with_quiver(coll, &q, label)
}

fn exchange_with_quiver(coll: &Collection, q: &Quiver, label: &KSubset) -> Result<Collection> {
    let v = mutable_vertex(q, label)?;
    if let Some(new) = quadrilateral_label(q, v) {
        if let Ok(next) = coll.exchanged(label, new) {
            if next.is_maximal() {
                return Ok(next);
            }
        }
    }
    exchange_by_scan(coll, label)
}

/// The unique `J != I` with `coll - I + J` maximal, found by scanning all k-subsets.
pub fn exchange_by_scan(coll: &Collection, label: &KSubset) -> Result<Collection> {
    let rest: Vec<KSubset> = coll.members().iter().filter(|m| *m != label).copied().collect();
    let candidates: Vec<KSubset> = all_subsets(coll.k(), coll.n())
        .into_iter()
        .filter(|j| j != label && !coll.contains(j))
        .filter(|j| rest.iter().all(|m| weakly_separated_unchecked(m, j)))
        .collect();
    match candidates.as_slice() {
        [j] => coll.exchanged(label, *j),
        _ => Err(Error::Internal(format!("{} exchange candidates for {label}", candidates.len()))),
    }
}

/// The `+k` orbit of a label.
pub fn orbit(label: &KSubset, k: usize) -> Vec<KSubset> {
    let mut out = vec![*label];
    let mut x = label.shift(k as i64);
    while x != *label {
        out.push(x);
        x = x.shift(k as i64);
    }
    out
}

/// Exchanges every label in the `+k` orbit of `label`; the orbit must be free of
/// arrows between its members.
pub fn orbit_exchange(coll: &Collection, label: &KSubset) -> Result<Collection> {
    if !coll.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let q = Quiver::from_collection(coll)?;
    let members = orbit(label, coll.k());
    let idx = members
        .iter()
        .map(|m| q.vertex_index(m).ok_or_else(|| Error::UnknownVertex(m.to_string())))
        .collect::<Result<Vec<_>>>()?;
    for m in &members {
        mutable_vertex(&q, m)?;
    }
    for a in &q.arrows {
        if idx.contains(&a.src) && idx.contains(&a.tgt) {
            return Err(Error::OrbitNotIndependent(label.to_string()));
        }
    }
    let mut current = coll.clone();
    for m in &members {
        current = geometric_exchange(&current, m)?;
    }
    Ok(current)
}

/// Fomin-Zelevinsky mutation at a valency-4 internal vertex. A 2-cycle made of a
/// boundary arrow and a new arrow loses the boundary arrow and the survivor becomes
/// a boundary arrow. Faces are recomputed from the drawing with the mutated
/// vertex moved to the position of its new label.
pub fn fz_mutate_quiver(q: &Quiver, label: &KSubset) -> Result<Quiver> {
    let v = mutable_vertex(q, label)?;
    let new_label =
        quadrilateral_label(q, v).ok_or_else(|| Error::Internal(format!("no quadrilateral partner for {label}")))?;

    let mut arrows: Vec<(usize, usize, bool)> = q.arrows.iter().map(|a| (a.src, a.tgt, a.boundary)).collect();
    let ins: Vec<usize> = arrows.iter().filter(|a| a.1 == v).map(|a| a.0).collect();
    let outs: Vec<usize> = arrows.iter().filter(|a| a.0 == v).map(|a| a.1).collect();
    for &j in &ins {
        for &l in &outs {
            arrows.push((j, l, false));
        }
    }
    for a in arrows.iter_mut() {
        if a.0 == v || a.1 == v {
            *a = (a.1, a.0, a.2);
        }
    }
    loop {
        let pair = (0..arrows.len()).find_map(|i| {
            (i + 1..arrows.len()).find(|&j| arrows[i].0 == arrows[j].1 && arrows[i].1 == arrows[j].0).map(|j| (i, j))
        });
        let Some((i, j)) = pair else { break };
        match (arrows[i].2, arrows[j].2) {
            (false, false) => {
                arrows.remove(j);
                arrows.remove(i);
            }
            (true, false) => {
                arrows[j].2 = true;
                arrows.remove(i);
            }
            (false, true) => {
                arrows[i].2 = true;
                arrows.remove(j);
            }
            (true, true) => {
                return Err(Error::Internal("2-cycle of boundary arrows".into()));
            }
        }
    }

    let mut vertices: Vec<Vertex> = q.vertices.clone();
    vertices[v] =
        Vertex { name: new_label.to_string(), label: Some(new_label), frozen: false, pos: position(&new_label) };
    let key = |i: usize| vertices[i].label;
    arrows.sort_by_key(|a| (key(a.0), key(a.1)));
    let mut seen = BTreeMap::new();
    for a in &arrows {
        if seen.insert((a.0, a.1), ()).is_some() {
            return Err(Error::Internal("mutation produced parallel arrows".into()));
        }
    }
    let arrows =
        arrows.into_iter().enumerate().map(|(id, (src, tgt, boundary))| Arrow { id, src, tgt, boundary }).collect();
    let mut out = Quiver { k: q.k, n: q.n, vertices, arrows, faces: Vec::new() };
    out.faces = out.drawn_faces();
    Ok(out)
}
