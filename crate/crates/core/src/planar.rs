//! Rotation systems of straight-line drawings, face traversal and isomorphism of
//! planar directed graphs.
//!
//! Edge `e` gives darts `2e` (along the arrow) and `2e + 1` (against it).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::quiver::Quiver;
use crate::tiling::{signed_area2, Point, EPS};

#[derive(Debug, Clone)]
pub struct Embedding {
    tail: Vec<usize>,
    /// Outgoing darts of each vertex sorted counterclockwise by angle.
    rot: Vec<Vec<usize>>,
    rot_pos: Vec<usize>,
}

impl Embedding {
    pub fn new(pos: &[Point], edges: &[(usize, usize)]) -> Self {
        let mut tail = Vec::with_capacity(2 * edges.len());
        for &(s, t) in edges {
            tail.push(s);
            tail.push(t);
        }
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); pos.len()];
        for (d, &v) in tail.iter().enumerate() {
            rot[v].push(d);
        }
        let head = |d: usize| tail[d ^ 1];
        for (v, darts) in rot.iter_mut().enumerate() {
            darts.sort_by(|&a, &b| {
                let (ta, tb) = (pos[v].angle_to(&pos[head(a)]), pos[v].angle_to(&pos[head(b)]));
                ta.total_cmp(&tb)
            });
        }
        let mut rot_pos = vec![0; tail.len()];
        for darts in &rot {
            for (i, &d) in darts.iter().enumerate() {
                rot_pos[d] = i;
            }
        }
        Embedding { tail, rot, rot_pos }
    }

    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail[d ^ 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    /// Next outgoing dart counterclockwise around the tail.
    pub fn next_ccw(&self, d: usize) -> usize {
        let darts = &self.rot[self.tail[d]];
        darts[(self.rot_pos[d] + 1) % darts.len()]
    }

    pub fn next_cw(&self, d: usize) -> usize {
        let darts = &self.rot[self.tail[d]];
        darts[(self.rot_pos[d] + darts.len() - 1) % darts.len()]
    }

    /// Successor of a dart on its face: turn onto the next dart counterclockwise
    /// from the reversed dart, which keeps the face on the right.
    pub fn face_next(&self, d: usize) -> usize {
        self.next_ccw(d ^ 1)
    }

    /// All faces as dart cycles. Bounded faces run clockwise.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.tail.len()];
        let mut out = Vec::new();
        for start in 0..self.tail.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.face_next(d);
            }
            out.push(cycle);
        }
        out
    }

    /// Faces with clockwise (negative) area, i.e. the bounded ones.
    pub fn bounded_faces(&self, pos: &[Point]) -> Vec<Vec<usize>> {
        self.faces()
            .into_iter()
            .filter(|cycle| {
                let pts: Vec<Point> = cycle.iter().map(|&d| pos[self.tail[d]]).collect();
                signed_area2(&pts) < -EPS
            })
            .collect()
    }

    /// Dart sets of the connected components that have at least one edge.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.tail.len()];
        let mut out = Vec::new();
        for start in 0..self.tail.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut darts = Vec::new();
            let mut queue = VecDeque::from([start]);
            comp[start] = id;
            while let Some(d) = queue.pop_front() {
                darts.push(d);
                for e in [d ^ 1, self.next_ccw(d)] {
                    if comp[e] == usize::MAX {
                        comp[e] = id;
                        queue.push_back(e);
                    }
                }
            }
            darts.sort();
            out.push(darts);
        }
        out
    }
}

/// Isomorphism between two planar quivers respecting arrow directions and the
/// rotation systems of their drawings (reversed rotations when `reflect`), and
/// carrying faces onto faces. Returns the vertex map.
pub fn planar_isomorphism(a: &Quiver, b: &Quiver, allow_reflection: bool) -> Option<Vec<usize>> {
    if a.vertices.len() != b.vertices.len() || a.arrows.len() != b.arrows.len() || a.faces.len() != b.faces.len() {
        return None;
    }
    let reflections: &[bool] = if allow_reflection { &[false, true] } else { &[false] };
    for &reflect in reflections {
        if let Some(map) = match_with(a, b, reflect) {
            return Some(map);
        }
    }
    None
}

fn embedding_of(q: &Quiver) -> Embedding {
    let pos: Vec<Point> = q.vertices.iter().map(|v| v.pos).collect();
    let edges: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.src, a.tgt)).collect();
    Embedding::new(&pos, &edges)
}

fn match_with(a: &Quiver, b: &Quiver, reflect: bool) -> Option<Vec<usize>> {
    let ea = embedding_of(a);
    let eb = embedding_of(b);
    let ca = ea.components();
    let cb = eb.components();
    if ca.len() != cb.len() {
        return None;
    }
    let mut dart_map = vec![usize::MAX; ea.dart_count()];
    let mut used = vec![false; cb.len()];
    if !assign_components(&ea, &eb, &ca, &cb, 0, reflect, &mut dart_map, &mut used) {
        return None;
    }
    let mut vmap = vec![usize::MAX; a.vertices.len()];
    for (d, &img) in dart_map.iter().enumerate() {
        vmap[ea.tail(d)] = eb.tail(img);
    }
    // isolated vertices pair up in index order
    let taken: BTreeSet<usize> = vmap.iter().copied().filter(|&v| v != usize::MAX).collect();
    let mut free_b = (0..b.vertices.len()).filter(|v| eb.degree(*v) == 0 && !taken.contains(v));
    for slot in vmap.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = free_b.next()?;
    }
    if !faces_correspond(a, b, &vmap) {
        return None;
    }
    Some(vmap)
}

#[allow(clippy::too_many_arguments)]
fn assign_components(
    ea: &Embedding,
    eb: &Embedding,
    ca: &[Vec<usize>],
    cb: &[Vec<usize>],
    i: usize,
    reflect: bool,
    dart_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if i == ca.len() {
        return true;
    }
    let start = ca[i][0];
    for j in 0..cb.len() {
        if used[j] || cb[j].len() != ca[i].len() {
            continue;
        }
        for &cand in &cb[j] {
            if let Some(local) = extend(ea, eb, start, cand, reflect) {
                for (&d, &img) in &local {
                    dart_map[d] = img;
                }
                used[j] = true;
                if assign_components(ea, eb, ca, cb, i + 1, reflect, dart_map, used) {
                    return true;
                }
                used[j] = false;
                for d in local.keys() {
                    dart_map[*d] = usize::MAX;
                }
            }
        }
    }
    false
}

fn extend(ea: &Embedding, eb: &Embedding, start: usize, cand: usize, reflect: bool) -> Option<BTreeMap<usize, usize>> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut inverse: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([(start, cand)]);
    while let Some((d, e)) = queue.pop_front() {
        if d % 2 != e % 2 || ea.degree(ea.tail(d)) != eb.degree(eb.tail(e)) {
            return None;
        }
        match map.get(&d) {
            Some(&x) if x == e => continue,
            Some(_) => return None,
            None => {}
        }
        if inverse.contains_key(&e) {
            return None;
        }
        match vmap.get(&ea.tail(d)) {
            Some(&w) if w != eb.tail(e) => return None,
            _ => {
                vmap.insert(ea.tail(d), eb.tail(e));
            }
        }
        map.insert(d, e);
        inverse.insert(e, d);
        let next_b = if reflect { eb.next_cw(e) } else { eb.next_ccw(e) };
        queue.push_back((d ^ 1, e ^ 1));
        queue.push_back((ea.next_ccw(d), next_b));
    }
    let images: BTreeSet<usize> = vmap.values().copied().collect();
    if images.len() != vmap.len() {
        return None;
    }
    Some(map)
}

fn faces_correspond(a: &Quiver, b: &Quiver, vmap: &[usize]) -> bool {
    let key = |q: &Quiver, f: &crate::quiver::Face, map: &dyn Fn(usize) -> usize| -> BTreeSet<usize> {
        f.arrows.iter().map(|&x| map(q.arrows[x].src)).collect()
    };
    let fa: BTreeSet<BTreeSet<usize>> = a.faces.iter().map(|f| key(a, f, &|v| vmap[v])).collect();
    let fb: BTreeSet<BTreeSet<usize>> = b.faces.iter().map(|f| key(b, f, &|v| v)).collect();
    fa == fb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Vertex;

    fn vertex(name: &str, x: f64, y: f64) -> Vertex {
        Vertex { name: name.into(), label: None, frozen: false, pos: Point::new(x, y) }
    }

    fn triangle(clockwise: bool) -> Quiver {
        let vs = vec![vertex("a", 0.0, 1.0), vertex("b", 1.0, -1.0), vertex("c", -1.0, -1.0)];
        let arrows = if clockwise { vec![(0, 1), (1, 2), (2, 0)] } else { vec![(0, 2), (2, 1), (1, 0)] };
        Quiver::from_drawing(0, 0, vs, &arrows).unwrap()
    }

    #[test]
    fn triangle_faces() {
        let cw = triangle(true);
        assert_eq!(cw.faces.len(), 1);
        assert_eq!(cw.faces[0].sign, 1);
        let ccw = triangle(false);
        assert_eq!(ccw.faces[0].sign, -1);
    }

    #[test]
    fn triangle_isomorphism() {
        let (cw, ccw) = (triangle(true), triangle(false));
        assert!(planar_isomorphism(&cw, &cw, false).is_some());
        assert!(planar_isomorphism(&cw, &ccw, true).is_some());
    }

    #[test]
    fn square_with_diagonal_is_not_a_face_cycle() {
        let vs = vec![vertex("a", 0.0, 0.0), vertex("b", 1.0, 0.0), vertex("c", 1.0, 1.0), vertex("d", 0.0, 1.0)];
        let q = Quiver::from_drawing(0, 0, vs, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        // one triangle is oriented, the other is not
        assert_eq!(q.faces.len(), 1);
    }
}
