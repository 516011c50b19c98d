//! Plane embedding `I -> sum of v_a` and the plabic tiling of a maximal collection.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cyclic::{Collection, KSubset};
use crate::error::{Error, Result};

/// Tolerance used when comparing embedded points.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Point { x: r * theta.cos(), y: r * theta.sin() }
    }

    pub fn approx_eq(&self, other: &Point) -> bool {
        (self.x - other.x).abs() < EPS && (self.y - other.y).abs() < EPS
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle_to(&self, other: &Point) -> f64 {
        (other.y - self.y).atan2(other.x - self.x)
    }

    /// Rotates clockwise about the origin.
    pub fn rotated_cw(&self, theta: f64) -> Point {
        let (s, c) = (-theta).sin_cos();
        Point { x: c * self.x - s * self.y, y: s * self.x + c * self.y }
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point { x: p[0], y: p[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Twice the signed area of a polygon; negative for clockwise traversal.
pub fn signed_area2(points: &[Point]) -> f64 {
    let m = points.len();
    (0..m)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % m]);
            p.x * q.y - q.x * p.y
        })
        .sum()
}

/// Vertex `a` of the regular n-gon: label 1 on top, labels increasing clockwise.
pub fn polygon_vertex(n: usize, a: usize) -> Point {
    Point::polar(1.0, PI / 2.0 - 2.0 * PI * (a as f64 - 1.0) / n as f64)
}

pub fn position(label: &KSubset) -> Point {
    let n = label.n();
    label.iter().fold(Point::ORIGIN, |acc, a| {
        let v = polygon_vertex(n, a);
        Point::new(acc.x + v.x, acc.y + v.y)
    })
}

pub fn embed(coll: &Collection) -> BTreeMap<KSubset, Point> {
    coll.members().iter().map(|m| (*m, position(m))).collect()
}

/// The 2-dimensional complex on a maximal collection.
///
/// White cells are indexed by (k-1)-subsets `S` and hold the members containing `S`,
/// ordered by the residue `a` with `S + a` a member. Black cells are indexed by
/// (k+1)-subsets `T` and hold the members inside `T`, ordered by the residue `b`
/// with `T - b` a member.
#[derive(Debug, Clone)]
pub struct Tiling {
    pub coll: Collection,
    pub pos: BTreeMap<KSubset, Point>,
    pub edges: BTreeSet<(KSubset, KSubset)>,
    pub white_cells: BTreeMap<KSubset, Vec<KSubset>>,
    pub black_cells: BTreeMap<KSubset, Vec<KSubset>>,
}

fn cyclically_adjacent(cycle: &[KSubset], a: &KSubset, b: &KSubset) -> bool {
    let m = cycle.len();
    let (Some(i), Some(j)) = (cycle.iter().position(|x| x == a), cycle.iter().position(|x| x == b)) else {
        return false;
    };
    (i + 1) % m == j || (j + 1) % m == i
}

fn ordered_pair(a: KSubset, b: KSubset) -> (KSubset, KSubset) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn build_tiling(coll: &Collection) -> Result<Tiling> {
    if !coll.is_maximal() {
        return Err(Error::ParameterMismatch("tiling needs a maximal collection".into()));
    }
    let n = coll.n();
    let pos = embed(coll);
    let mut seen: Vec<(Point, KSubset)> = Vec::with_capacity(pos.len());
    for (label, p) in &pos {
        if let Some((_, other)) = seen.iter().find(|(q, _)| q.approx_eq(p)) {
            return Err(Error::EmbeddingDegenerate(*other, *label));
        }
        seen.push((*p, *label));
    }

    // Keys are (k-1)- or (k+1)-subsets; entries carry the ordering residue.
    let mut white: BTreeMap<KSubset, Vec<(usize, KSubset)>> = BTreeMap::new();
    let mut black: BTreeMap<KSubset, Vec<(usize, KSubset)>> = BTreeMap::new();
    for m in coll.members() {
        for a in m.iter() {
            white.entry(m.without(a)).or_default().push((a, *m));
        }
        for b in 1..=n {
            if !m.contains(b) {
                black.entry(m.with(b)).or_default().push((b, *m));
            }
        }
    }
    let finish = |cells: BTreeMap<KSubset, Vec<(usize, KSubset)>>| -> BTreeMap<KSubset, Vec<KSubset>> {
        cells
            .into_iter()
            .filter(|(_, v)| v.len() >= 2)
            .map(|(key, mut v)| {
                v.sort();
                (key, v.into_iter().map(|(_, m)| m).collect())
            })
            .collect()
    };
    let white_cells = finish(white);
    let black_cells = finish(black);

    let mut edges = BTreeSet::new();
    for (s, cycle) in &white_cells {
        let m = cycle.len();
        let pairs = if m == 2 { 1 } else { m };
        for i in 0..pairs {
            let (a, b) = (cycle[i], cycle[(i + 1) % m]);
            let t = a.union(&b);
            debug_assert_eq!(a.intersection(&b), *s);
            if black_cells.get(&t).is_some_and(|bc| cyclically_adjacent(bc, &a, &b)) {
                edges.insert(ordered_pair(a, b));
            }
        }
    }
    Ok(Tiling { coll: coll.clone(), pos, edges, white_cells, black_cells })
}

impl Tiling {
    /// Cells with at least three members, as (members in traversal order, is white).
    ///
    /// White cells are listed by increasing residue, which runs clockwise in the
    /// embedding; black cells by decreasing residue, which runs counterclockwise.
    pub fn faces(&self) -> Vec<(Vec<KSubset>, bool)> {
        let mut out = Vec::new();
        for cycle in self.white_cells.values().filter(|c| c.len() >= 3) {
            out.push((cycle.clone(), true));
        }
        for cycle in self.black_cells.values().filter(|c| c.len() >= 3) {
            let mut rev = cycle.clone();
            rev.reverse();
            out.push((rev, false));
        }
        out
    }

    pub fn degree(&self, label: &KSubset) -> usize {
        self.edges.iter().filter(|(a, b)| a == label || b == label).count()
    }

    /// `V - E + F` counting only cells with at least three members.
    pub fn euler_characteristic(&self) -> i64 {
        let f = self.faces().len() as i64;
        self.pos.len() as i64 - self.edges.len() as i64 + f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::validate_collection;

    fn fan() -> Collection {
        let labels = [[1, 2], [2, 3], [3, 4], [1, 4], [1, 3]];
        validate_collection(labels.iter().map(|e| KSubset::new(4, e.iter().copied()).unwrap()), 2, 4).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let p = position(&KSubset::new(4, [1, 3]).unwrap());
        assert!(p.approx_eq(&Point::ORIGIN));
        let p = position(&KSubset::new(9, [1, 4, 7]).unwrap());
        assert!(p.approx_eq(&Point::ORIGIN));
        let top = position(&KSubset::new(4, [1, 2]).unwrap());
        for e in [[1, 3], [2, 4]] {
            assert!(position(&KSubset::new(4, e).unwrap()).norm() < top.norm());
        }
    }

    #[test]
    fn embedding_equivariance() {
        let i = KSubset::new(9, [1, 3, 4]).unwrap();
        let rotated = position(&i).rotated_cw(2.0 * PI / 9.0);
        assert!(rotated.approx_eq(&position(&i.shift(1))));
    }

    #[test]
    fn fan_tiling() {
        let t = build_tiling(&fan()).unwrap();
        assert_eq!(t.edges.len(), 8);
        let faces = t.faces();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces.iter().filter(|(_, w)| *w).count(), 2);
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(t.degree(&KSubset::new(4, [1, 3]).unwrap()), 4);
    }

    #[test]
    fn cell_chirality() {
        let t = build_tiling(&fan()).unwrap();
        for (cycle, white) in t.faces() {
            let pts: Vec<Point> = cycle.iter().map(|m| t.pos[m]).collect();
            assert!(signed_area2(&pts).abs() > EPS);
            assert_eq!(signed_area2(&pts) < 0.0, white);
        }
    }
}
