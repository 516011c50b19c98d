//! Planar ice quivers with potential. The potential is stored only through the
//! signed face cycles: `W = sum of clockwise faces - sum of counterclockwise faces`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclic::{rotation_order, Collection, KSubset};
use crate::error::{Error, Result};
use crate::planar::Embedding;
use crate::tiling::{build_tiling, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub name: String,
    pub label: Option<KSubset>,
    pub frozen: bool,
    pub pos: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
    /// Set on arrows of the hull boundary; survives mutation per the 2-cycle rule.
    pub boundary: bool,
}

/// A potential term: arrow indices in path order, closing up into a cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub arrows: Vec<usize>,
    pub sign: i8,
}

/// An ice quiver with potential. With no frozen vertices this is a plain QP.
#[derive(Debug, Clone, PartialEq)]
pub struct Quiver {
    pub k: usize,
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub faces: Vec<Face>,
}

/// Vertex and arrow images of a quiver automorphism, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMap {
    pub vertex: Vec<usize>,
    pub arrow: Vec<usize>,
}

impl Quiver {
    /// Quiver of a maximal collection: tiling edges, oriented around cells,
    /// white cells clockwise with sign +1 and black cells counterclockwise with sign -1.
    pub fn from_collection(coll: &Collection) -> Result<Quiver> {
        let tiling = build_tiling(coll)?;
        let members = coll.members();
        let index: BTreeMap<KSubset, usize> = members.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let vertices: Vec<Vertex> = members
            .iter()
            .map(|m| Vertex { name: m.to_string(), label: Some(*m), frozen: m.is_interval(), pos: tiling.pos[m] })
            .collect();

        let faces = tiling.faces();
        let mut directed: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (cycle, _) in &faces {
            for w in 0..cycle.len() {
                let (a, b) = (index[&cycle[w]], index[&cycle[(w + 1) % cycle.len()]]);
                if directed.contains(&(b, a)) {
                    return Err(Error::Internal(format!(
                        "cells disagree on the orientation of {}-{}",
                        cycle[w],
                        cycle[(w + 1) % cycle.len()]
                    )));
                }
                directed.insert((a, b));
            }
        }
        for (a, b) in &tiling.edges {
            let (ia, ib) = (index[a], index[b]);
            if !directed.contains(&(ia, ib)) && !directed.contains(&(ib, ia)) {
                // an edge on no cell: only for degenerate (1,n) and (n-1,n)
                directed.insert((ia, ib));
            }
        }
        let mut pairs: Vec<(usize, usize)> = directed.into_iter().collect();
        pairs.sort_by_key(|&(s, t)| (members[s], members[t]));
        let arrows: Vec<Arrow> = pairs
            .iter()
            .enumerate()
            .map(|(id, &(src, tgt))| Arrow { id, src, tgt, boundary: vertices[src].frozen && vertices[tgt].frozen })
            .collect();
        let arrow_of: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let faces = faces
            .into_iter()
            .map(|(cycle, white)| Face {
                arrows: (0..cycle.len())
                    .map(|w| arrow_of[&(index[&cycle[w]], index[&cycle[(w + 1) % cycle.len()]])])
                    .collect(),
                sign: if white { 1 } else { -1 },
            })
            .collect();
        Ok(Quiver { k: coll.k(), n: coll.n(), vertices, arrows, faces })
    }

    /// Builds a quiver from named vertices and arrows, taking as potential every
    /// bounded face of the straight-line drawing whose boundary is an oriented cycle.
    pub fn from_drawing(k: usize, n: usize, vertices: Vec<Vertex>, arrows: &[(usize, usize)]) -> Result<Quiver> {
        let arrows: Vec<Arrow> = arrows
            .iter()
            .enumerate()
            .map(|(id, &(src, tgt))| Arrow { id, src, tgt, boundary: vertices[src].frozen && vertices[tgt].frozen })
            .collect();
        let mut q = Quiver { k, n, vertices, arrows, faces: Vec::new() };
        q.validate_shape()?;
        q.faces = q.drawn_faces();
        Ok(q)
    }

    /// Oriented bounded faces of the straight-line drawing.
    pub fn drawn_faces(&self) -> Vec<Face> {
        let pos: Vec<Point> = self.vertices.iter().map(|v| v.pos).collect();
        let edges: Vec<(usize, usize)> = self.arrows.iter().map(|a| (a.src, a.tgt)).collect();
        let emb = Embedding::new(&pos, &edges);
        let mut faces = Vec::new();
        for darts in emb.bounded_faces(&pos) {
            let forward = darts.iter().all(|d| d % 2 == 0);
            let backward = darts.iter().all(|d| d % 2 == 1);
            if forward {
                faces.push(Face { arrows: darts.iter().map(|d| d / 2).collect(), sign: 1 });
            } else if backward {
                faces.push(Face { arrows: darts.iter().rev().map(|d| d / 2).collect(), sign: -1 });
            }
        }
        faces.sort_by(|a, b| a.arrows.iter().min().cmp(&b.arrows.iter().min()));
        faces
    }

    fn validate_shape(&self) -> Result<()> {
        let nv = self.vertices.len();
        let mut seen = BTreeSet::new();
        for a in &self.arrows {
            if a.src >= nv || a.tgt >= nv {
                return Err(Error::Malformed(format!("arrow {} has an unknown endpoint", a.id)));
            }
            if a.src == a.tgt {
                return Err(Error::Malformed(format!("arrow {} is a loop", a.id)));
            }
            if seen.contains(&(a.tgt, a.src)) {
                return Err(Error::Malformed(format!(
                    "2-cycle between {} and {}",
                    self.vertices[a.src].name, self.vertices[a.tgt].name
                )));
            }
            seen.insert((a.src, a.tgt));
        }
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(v.name.clone()) {
                return Err(Error::Malformed(format!("duplicate vertex {}", v.name)));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn internal_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.frozen).count()
    }

    /// Arrows joining two internal vertices.
    pub fn internal_arrow_count(&self) -> usize {
        self.arrows.iter().filter(|a| !self.vertices[a.src].frozen && !self.vertices[a.tgt].frozen).count()
    }

    pub fn vertex_index(&self, label: &KSubset) -> Option<usize> {
        self.vertices.iter().position(|v| v.label.as_ref() == Some(label))
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn arrow_index(&self, id: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn find_arrow(&self, src: usize, tgt: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.src == src && a.tgt == tgt)
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].tgt == v).collect()
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&i| self.arrows[i].src == v).collect()
    }

    pub fn valency(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.src == v || a.tgt == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|a| {
                if a.src == v {
                    Some(a.tgt)
                } else if a.tgt == v {
                    Some(a.src)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn has_frozen(&self) -> bool {
        self.vertices.iter().any(|v| v.frozen)
    }

    /// Deletes frozen vertices with their arrows and keeps the faces that survive intact.
    /// Arrow ids are preserved.
    pub fn underline(&self) -> Quiver {
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !v.frozen {
                new_index[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let mut arrow_index = vec![usize::MAX; self.arrows.len()];
        let mut arrows = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if new_index[a.src] != usize::MAX && new_index[a.tgt] != usize::MAX {
                arrow_index[i] = arrows.len();
                arrows.push(Arrow { src: new_index[a.src], tgt: new_index[a.tgt], ..*a });
            }
        }
        let faces = self
            .faces
            .iter()
            .filter(|f| f.arrows.iter().all(|&a| arrow_index[a] != usize::MAX))
            .map(|f| Face { arrows: f.arrows.iter().map(|&a| arrow_index[a]).collect(), sign: f.sign })
            .collect();
        Quiver { k: self.k, n: self.n, vertices, arrows, faces }
    }

    /// Faces through each arrow.
    pub fn faces_of_arrows(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.arrows.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for &a in &f.arrows {
                out[a].push(fi);
            }
        }
        out
    }

    /// Cyclic derivative of the potential at an arrow: for each face through `a`,
    /// the rest of the cycle read from the head of `a` back to its tail.
    pub fn cyclic_derivative(&self, a: usize) -> Vec<(i64, Vec<usize>)> {
        let mut terms = Vec::new();
        for f in &self.faces {
            if let Some(p) = f.arrows.iter().position(|&b| b == a) {
                let m = f.arrows.len();
                let path: Vec<usize> = (1..m).map(|j| f.arrows[(p + j) % m]).collect();
                terms.push((f.sign as i64, path));
            }
        }
        terms
    }

    /// Checks the potential: each face is a closed cycle, arrows of internal type
    /// lie on two faces of opposite sign, boundary arrows on one.
    pub fn check_potential(&self) -> Result<()> {
        for f in &self.faces {
            let m = f.arrows.len();
            for j in 0..m {
                let (a, b) = (self.arrows[f.arrows[j]], self.arrows[f.arrows[(j + 1) % m]]);
                if a.tgt != b.src {
                    return Err(Error::Internal("face is not a closed path".into()));
                }
            }
        }
        let per_arrow = self.faces_of_arrows();
        for (i, fs) in per_arrow.iter().enumerate() {
            let a = &self.arrows[i];
            let both_frozen = self.vertices[a.src].frozen && self.vertices[a.tgt].frozen;
            let ok = if both_frozen {
                fs.len() == 1
            } else {
                fs.len() == 2 && self.faces[fs[0]].sign != self.faces[fs[1]].sign
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "arrow {}->{} lies on {} faces",
                    self.vertices[a.src].name,
                    self.vertices[a.tgt].name,
                    fs.len()
                )));
            }
        }
        Ok(())
    }

    /// Extends `I -> I + s` on labels to an automorphism preserving frozen flags,
    /// arrows and signed faces.
    pub fn label_shift_map(&self, s: i64) -> Option<QuiverMap> {
        let mut vertex = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let image = self.vertex_index(&v.label?.shift(s))?;
            if self.vertices[image].frozen != v.frozen {
                return None;
            }
            vertex.push(image);
        }
        let mut arrow = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            arrow.push(self.find_arrow(vertex[a.src], vertex[a.tgt])?);
        }
        let face_key = |f: &Face| -> (BTreeSet<usize>, i8) { (f.arrows.iter().copied().collect(), f.sign) };
        let faces: BTreeSet<(BTreeSet<usize>, i8)> = self.faces.iter().map(face_key).collect();
        for f in &self.faces {
            let image: BTreeSet<usize> = f.arrows.iter().map(|&a| arrow[a]).collect();
            if !faces.contains(&(image, f.sign)) {
                return None;
            }
        }
        Some(QuiverMap { vertex, arrow })
    }

    /// The rotation `I -> I + k`, when it is an automorphism.
    pub fn rho_automorphism(&self) -> Option<QuiverMap> {
        self.label_shift_map(self.k as i64)
    }

    /// Relabels every vertex by `I -> I + s` and rotates the drawing to match.
    pub fn shifted(&self, s: i64) -> Quiver {
        let theta = 2.0 * std::f64::consts::PI * s as f64 / self.n as f64;
        let mut q = self.clone();
        for v in &mut q.vertices {
            if let Some(l) = v.label {
                let l = l.shift(s);
                v.label = Some(l);
                v.name = l.to_string();
            }
            v.pos = v.pos.rotated_cw(theta);
        }
        q
    }

    /// Arrows as name pairs and faces as sign plus cyclically normalised name
    /// sequences; two quivers with equal signatures are equal up to indexing.
    pub fn signature(&self) -> (BTreeSet<(String, String)>, BTreeSet<(i8, Vec<String>)>) {
        let arrows = self
            .arrows
            .iter()
            .map(|a| (self.vertices[a.src].name.clone(), self.vertices[a.tgt].name.clone()))
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let mut names: Vec<String> =
                    f.arrows.iter().map(|&a| self.vertices[self.arrows[a].src].name.clone()).collect();
                let start = (0..names.len()).min_by_key(|&i| names[i].clone()).unwrap_or(0);
                names.rotate_left(start);
                (f.sign, names)
            })
            .collect();
        (arrows, faces)
    }

    pub fn to_json(&self) -> QuiverJson {
        let id = |i: usize| self.arrows[i].id;
        QuiverJson {
            k: self.k,
            n: self.n,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    label: v.label.map(|l| l.elems()),
                    name: if v.label.is_some() { None } else { Some(v.name.clone()) },
                    frozen: v.frozen,
                    pos: Some(v.pos),
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson { id: a.id, src: self.vertex_ref(a.src), tgt: self.vertex_ref(a.tgt) })
                .collect(),
            faces: Some(
                self.faces
                    .iter()
                    .map(|f| FaceJson { arrows: f.arrows.iter().map(|&a| id(a)).collect(), sign: f.sign })
                    .collect(),
            ),
        }
    }

    fn vertex_ref(&self, v: usize) -> VertexRef {
        match self.vertices[v].label {
            Some(l) => VertexRef::Label(l.elems()),
            None => VertexRef::Name(self.vertices[v].name.clone()),
        }
    }

    /// Reads quiver JSON. When `faces` is absent the potential is taken from the drawing.
    pub fn from_json(json: &QuiverJson) -> Result<Quiver> {
        let mut vertices = Vec::with_capacity(json.vertices.len());
        for (i, v) in json.vertices.iter().enumerate() {
            let label = match &v.label {
                Some(l) => Some(KSubset::new(json.n, l.iter().copied())?),
                None => None,
            };
            let name = match (&v.name, &label) {
                (Some(name), _) => name.clone(),
                (None, Some(l)) => l.to_string(),
                (None, None) => i.to_string(),
            };
            vertices.push(Vertex { name, label, frozen: v.frozen, pos: v.pos.unwrap_or(Point::ORIGIN) });
        }
        let resolve = |r: &VertexRef| -> Result<usize> {
            let found = match r {
                VertexRef::Label(l) => {
                    let l = KSubset::new(json.n, l.iter().copied())?;
                    vertices.iter().position(|v| v.label == Some(l))
                }
                VertexRef::Name(s) => vertices.iter().position(|v| &v.name == s),
            };
            found.ok_or_else(|| Error::UnknownVertex(format!("{r:?}")))
        };
        let mut pairs = Vec::with_capacity(json.arrows.len());
        for a in &json.arrows {
            pairs.push((resolve(&a.src)?, resolve(&a.tgt)?));
        }
        let mut q = match &json.faces {
            None => Quiver::from_drawing(json.k, json.n, vertices, &pairs)?,
            Some(_) => {
                let arrows = pairs
                    .iter()
                    .zip(&json.arrows)
                    .map(|(&(src, tgt), a)| Arrow {
                        id: a.id,
                        src,
                        tgt,
                        boundary: vertices[src].frozen && vertices[tgt].frozen,
                    })
                    .collect();
                let q = Quiver { k: json.k, n: json.n, vertices, arrows, faces: Vec::new() };
                q.validate_shape()?;
                q
            }
        };
        if json.faces.is_none() {
            for (a, j) in q.arrows.iter_mut().zip(&json.arrows) {
                a.id = j.id;
            }
        }
        let ids: BTreeSet<usize> = q.arrows.iter().map(|a| a.id).collect();
        if ids.len() != q.arrows.len() {
            return Err(Error::Malformed("duplicate arrow id".into()));
        }
        if let Some(faces) = &json.faces {
            for f in faces {
                let arrows = f
                    .arrows
                    .iter()
                    .map(|&id| q.arrow_index(id).ok_or_else(|| Error::Malformed(format!("unknown arrow id {id}"))))
                    .collect::<Result<Vec<_>>>()?;
                if f.sign != 1 && f.sign != -1 {
                    return Err(Error::Malformed(format!("face sign {}", f.sign)));
                }
                q.faces.push(Face { arrows, sign: f.sign });
            }
            for f in &q.faces {
                let m = f.arrows.len();
                for j in 0..m {
                    if q.arrows[f.arrows[j]].tgt != q.arrows[f.arrows[(j + 1) % m]].src {
                        return Err(Error::Malformed("face is not a closed path".into()));
                    }
                }
            }
        }
        Ok(q)
    }

    /// Graphviz DOT of the arrows; arrows in `dotted` are drawn dotted.
    pub fn to_dot(&self, dotted: &BTreeSet<usize>) -> String {
        let mut out = String::from("digraph quiver {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if v.frozen { "box" } else { "ellipse" };
            let _ =
                writeln!(out, "  v{i} [label=\"{}\", shape={shape}, pos=\"{:.3},{:.3}!\"];", v.name, v.pos.x, v.pos.y);
        }
        for a in &self.arrows {
            let style = if dotted.contains(&a.id) { " [style=dotted]" } else { "" };
            let _ = writeln!(out, "  v{} -> v{}{style};", a.src, a.tgt);
        }
        out.push_str("}\n");
        out
    }

    /// TikZ picture in the style of the usual quiver drawings: frozen vertices in
    /// boxes, cut arrows dotted.
    pub fn to_tikz(&self, dotted: &BTreeSet<usize>) -> String {
        let scale = if self.n > 0 { 3.0 } else { 1.0 };
        let mut out = String::from(
            "\\begin{tikzpicture}[scale=1,\n  quivarrow/.style={black, -latex, thick},\n  cutarrow/.style={black, -latex, thick, dotted}]\n",
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let style = if v.frozen { "[draw]" } else { "" };
            let _ = writeln!(
                out,
                "\\node{style} (q{i}) at ({:.3},{:.3}) {{${}$}};",
                v.pos.x * scale,
                v.pos.y * scale,
                v.name
            );
        }
        for a in &self.arrows {
            let style = if dotted.contains(&a.id) { "cutarrow" } else { "quivarrow" };
            let _ = writeln!(out, "\\draw [{style}] (q{}) edge (q{});", a.src, a.tgt);
        }
        out.push_str("\\end{tikzpicture}\n");
        out
    }
}

/// `sigma(I) = I - k` on a symmetric collection.
pub fn nakayama_permutation(coll: &Collection) -> Result<BTreeMap<KSubset, KSubset>> {
    if !coll.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(coll.members().iter().map(|m| (*m, m.shift(-(coll.k() as i64)))).collect())
}

/// Expected order of the Nakayama permutation, `n / gcd(k, n)`.
pub fn nakayama_order(k: usize, n: usize) -> usize {
    rotation_order(k, n)
}

/// Order of a permutation given as a map.
pub fn permutation_order<T: Ord + Copy>(perm: &BTreeMap<T, T>) -> usize {
    let mut order = 1;
    let mut done = BTreeSet::new();
    for &start in perm.keys() {
        if done.contains(&start) {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        loop {
            done.insert(x);
            x = perm[&x];
            len += 1;
            if x == start {
                break;
            }
        }
        order = order / crate::cyclic::gcd(order, len) * len;
    }
    order
}

/// Cycles of a permutation, each starting at its least element, sorted.
pub fn permutation_cycles<T: Ord + Copy>(perm: &BTreeMap<T, T>) -> Vec<Vec<T>> {
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for &start in perm.keys() {
        if done.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        done.insert(start);
        let mut x = perm[&start];
        while x != start {
            done.insert(x);
            cycle.push(x);
            x = perm[&x];
        }
        out.push(cycle);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Label(Vec<usize>),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub frozen: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: usize,
    pub src: VertexRef,
    pub tgt: VertexRef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceJson {
    pub arrows: Vec<usize>,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub k: usize,
    pub n: usize,
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceJson>>,
}
