//! Closed-form self-injective quivers with potential (square grids, triangles,
//! cobwebs), the sporadic fixtures, and matching against symmetric collections.

use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::cyclic::Collection;
use crate::error::{Error, Result};
use crate::planar::planar_isomorphism;
use crate::quiver::{Quiver, QuiverJson, Vertex};
use crate::search::{for_each_symmetric, SearchConfig};
use crate::tiling::{signed_area2, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Grid(usize),
    Triangle(usize),
    CobwebPlus(usize),
    CobwebMinus(usize),
    Sporadic(usize, usize),
}

pub const SPORADIC: [(usize, usize); 5] = [(3, 12), (4, 16), (5, 20), (6, 15), (6, 21)];

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::UnsupportedParameter(msg));
        match *self {
            FamilySpec::Grid(k) if !(2..=31).contains(&k) => bad(format!("grid needs 2 <= k <= 31, got {k}")),
            FamilySpec::Triangle(k) if !(2..=4).contains(&k) => bad(format!("triangle needs k in 2..=4, got {k}")),
            FamilySpec::CobwebPlus(x) | FamilySpec::CobwebMinus(x) if x < 3 || x % 2 == 0 || 2 * x > 63 => {
                bad(format!("cobweb needs odd 3 <= x <= 31, got {x}"))
            }
            FamilySpec::Sporadic(k, n) if !SPORADIC.contains(&(k, n)) => {
                bad(format!("no sporadic fixture for ({k},{n})"))
            }
            _ => Ok(()),
        }
    }

    /// `(k, n)` of the matching symmetric collections.
    pub fn parameters(&self) -> (usize, usize) {
        match *self {
            FamilySpec::Grid(k) => (k, 2 * k),
            FamilySpec::Triangle(k) => (k, 3 * k),
            FamilySpec::CobwebPlus(x) => (x - 1, 2 * x),
            FamilySpec::CobwebMinus(x) => (x + 1, 2 * x),
            FamilySpec::Sporadic(k, n) => (k, n),
        }
    }

    pub fn all_names() -> &'static [&'static str] {
        &["grid", "triangle", "cobweb+", "cobweb-", "sporadic"]
    }

    /// Parses a family name and parameter, e.g. `grid 3`, `cobweb- 5`, `sporadic 6-21`.
    pub fn parse(name: &str, param: &str) -> Result<FamilySpec> {
        let num = || param.parse::<usize>().map_err(|_| Error::UnsupportedParameter(format!("bad parameter {param}")));
        let spec = match name {
            "grid" => FamilySpec::Grid(num()?),
            "triangle" => FamilySpec::Triangle(num()?),
            "cobweb+" | "cobwebPlus" => FamilySpec::CobwebPlus(num()?),
            "cobweb-" | "cobwebMinus" => FamilySpec::CobwebMinus(num()?),
            "sporadic" => {
                let (k, n) = param
                    .split_once(['-', ','])
                    .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                    .ok_or_else(|| Error::UnsupportedParameter(format!("bad fixture id {param}")))?;
                FamilySpec::Sporadic(k, n)
            }
            _ => return Err(Error::UnsupportedParameter(format!("unknown family {name}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Grid(k) => write!(f, "grid {k}"),
            FamilySpec::Triangle(k) => write!(f, "triangle {k}"),
            FamilySpec::CobwebPlus(x) => write!(f, "cobweb+ {x}"),
            FamilySpec::CobwebMinus(x) => write!(f, "cobweb- {x}"),
            FamilySpec::Sporadic(k, n) => write!(f, "sporadic {k}-{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) =
            s.trim().split_once(char::is_whitespace).ok_or_else(|| Error::UnsupportedParameter(s.into()))?;
        FamilySpec::parse(name, param.trim())
    }
}

fn vertex(name: String, pos: Point) -> Vertex {
    Vertex { name, label: None, frozen: false, pos }
}

/// Square grid with `k - 1` vertices per side, squares oriented in a checkerboard.
pub fn grid(k: usize) -> Result<Quiver> {
    let m = k - 1;
    let id = |i: usize, j: usize| i * m + j;
    let mut vertices = Vec::new();
    for i in 0..m {
        for j in 0..m {
            vertices.push(vertex(format!("g{i}.{j}"), Point::new(j as f64, -(i as f64))));
        }
    }
    let mut arrows = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if j + 1 < m {
                let e = (id(i, j), id(i, j + 1));
                arrows.push(if (i + j) % 2 == 0 { e } else { (e.1, e.0) });
            }
            if i + 1 < m {
                let e = (id(i + 1, j), id(i, j));
                arrows.push(if (i + j) % 2 == 0 { e } else { (e.1, e.0) });
            }
        }
    }
    Quiver::from_drawing(k, 2 * k, vertices, &arrows)
}

/// Triangle of side `2k - 3`: vertices `x` in `N^3` summing to `2k - 3`, arrows
/// `x -> x + e_(i+1) - e_i`.
pub fn triangle(k: usize) -> Result<Quiver> {
    let m = 2 * k - 3;
    let corners = [
        Point::polar(1.0, PI / 2.0),
        Point::polar(1.0, PI / 2.0 - 2.0 * PI / 3.0),
        Point::polar(1.0, PI / 2.0 + 2.0 * PI / 3.0),
    ];
    let mut index = BTreeMap::new();
    let mut vertices = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            let x = [a, b, m - a - b];
            let pos = (0..3).fold(Point::new(0.0, 0.0), |p, i| {
                Point::new(p.x + corners[i].x * x[i] as f64, p.y + corners[i].y * x[i] as f64)
            });
            index.insert(x, vertices.len());
            vertices.push(vertex(format!("t{}{}{}", x[0], x[1], x[2]), pos));
        }
    }
    let mut arrows = Vec::new();
    for (x, &v) in &index {
        for i in 0..3 {
            if x[i] > 0 {
                let mut y = *x;
                y[i] -= 1;
                y[(i + 1) % 3] += 1;
                arrows.push((v, index[&y]));
            }
        }
    }
    Quiver::from_drawing(k, 3 * k, vertices, &arrows)
}

/// Cobweb with one `x`-gon, `x` triangles and `x^2 - 4x` squares; the `x`-gon is
/// counterclockwise for `plus`.
pub fn cobweb(x: usize, plus: bool) -> Result<Quiver> {
    let rings = (x - 3) / 2;
    let xf = x as f64;
    let mut vertices = Vec::new();
    for t in 1..=x {
        vertices.push(vertex(format!("c{t}"), Point::polar(1.0, -2.0 * PI * t as f64 / xf)));
    }
    for s in 1..=rings {
        for j in 1..=2 * x {
            let angle = -(2.0 * PI / xf) * (j as f64 / 2.0 + 0.25);
            vertices.push(vertex(format!("d{s}.{j}"), Point::polar((s + 1) as f64, angle)));
        }
    }
    let c = |t: usize| (t - 1) % x;
    let d = |s: usize, j: usize| x + (s - 1) * 2 * x + (j - 1) % (2 * x);
    let mut faces: Vec<Vec<usize>> = vec![(1..=x).map(c).collect()];
    if rings > 0 {
        for t in 1..=x {
            faces.push(vec![c(t), d(1, 2 * t - 1), d(1, 2 * t)]);
            faces.push(vec![c(t), d(1, 2 * t), d(1, 2 * t + 1), c(t + 1)]);
        }
        for s in 1..rings {
            for j in 1..=2 * x {
                faces.push(vec![d(s, j), d(s + 1, j), d(s + 1, j + 1), d(s, j + 1)]);
            }
        }
    }
    let pos: Vec<Point> = vertices.iter().map(|v| v.pos).collect();
    for f in &mut faces {
        let pts: Vec<Point> = f.iter().map(|&v| pos[v]).collect();
        if signed_area2(&pts) < 0.0 {
            f.reverse();
        }
    }
    let arrows = orient_faces(&faces, plus)?;
    Quiver::from_drawing(x - 1, 2 * x, vertices, &arrows)
}

/// Orients face cycles (given counterclockwise) alternately, the first one
/// counterclockwise when `first_ccw`.
fn orient_faces(faces: &[Vec<usize>], first_ccw: bool) -> Result<Vec<(usize, usize)>> {
    let edges_of =
        |f: &Vec<usize>| -> Vec<(usize, usize)> { (0..f.len()).map(|i| (f[i], f[(i + 1) % f.len()])).collect() };
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for (a, b) in edges_of(f) {
            by_edge.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    let mut ccw: Vec<Option<bool>> = vec![None; faces.len()];
    ccw[0] = Some(first_ccw);
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for (a, b) in edges_of(&faces[f]) {
            for &g in &by_edge[&(a.min(b), a.max(b))] {
                if g != f && ccw[g].is_none() {
                    ccw[g] = Some(!ccw[f].expect("set"));
                    queue.push_back(g);
                }
            }
        }
    }
    let mut dir: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        let orient = ccw[fi].ok_or_else(|| Error::Internal("disconnected faces".into()))?;
        for (a, b) in edges_of(f) {
            let e = if orient { (a, b) } else { (b, a) };
            if let Some(prev) = dir.insert((a.min(b), a.max(b)), e) {
                if prev != e {
                    return Err(Error::Internal("faces cannot be oriented alternately".into()));
                }
            }
        }
    }
    Ok(dir.into_values().collect())
}

const FIXTURES: [&str; 5] = [
    include_str!("../fixtures/sporadic-3-12.json"),
    include_str!("../fixtures/sporadic-4-16.json"),
    include_str!("../fixtures/sporadic-5-20.json"),
    include_str!("../fixtures/sporadic-6-15.json"),
    include_str!("../fixtures/sporadic-6-21.json"),
];

pub fn sporadic(k: usize, n: usize) -> Result<Quiver> {
    let i = SPORADIC
        .iter()
        .position(|&p| p == (k, n))
        .ok_or_else(|| Error::UnsupportedParameter(format!("no sporadic fixture for ({k},{n})")))?;
    let json: QuiverJson = serde_json::from_str(FIXTURES[i])?;
    Quiver::from_json(&json)
}

pub fn family_quiver(spec: FamilySpec) -> Result<Quiver> {
    spec.validate()?;
    match spec {
        FamilySpec::Grid(k) => grid(k),
        FamilySpec::Triangle(k) => triangle(k),
        FamilySpec::CobwebPlus(x) => cobweb(x, true),
        FamilySpec::CobwebMinus(x) => cobweb(x, false),
        FamilySpec::Sporadic(k, n) => sporadic(k, n),
    }
}

/// Faces by number of arrows.
pub fn face_census(q: &Quiver) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for f in &q.faces {
        *out.entry(f.arrows.len()).or_insert(0) += 1;
    }
    out
}

#[derive(Debug, Clone)]
pub struct FamilyMatch {
    pub collection: Collection,
    /// Underlying quiver of the collection.
    pub quiver: Quiver,
    /// Family vertex index to collection quiver vertex index.
    pub vertex_map: Vec<usize>,
}

fn degree_profile(q: &Quiver) -> Vec<(usize, usize)> {
    let mut d: Vec<(usize, usize)> =
        (0..q.vertex_count()).map(|v| (q.in_arrows(v).len(), q.out_arrows(v).len())).collect();
    d.sort();
    d
}

/// First symmetric collection, in search order, whose underlying quiver is
/// isomorphic to the family quiver as a planar quiver with potential. Mirror
/// images are accepted.
pub fn match_symmetric_collection(spec: FamilySpec, config: Option<SearchConfig>) -> Result<FamilyMatch> {
    let target = family_quiver(spec)?;
    let (k, n) = spec.parameters();
    let config = config.unwrap_or_else(|| SearchConfig::new(k, n));
    let profile = degree_profile(&target);
    let mut found = None;
    let mut failure = None;
    for_each_symmetric(&config, |c| {
        let q = match Quiver::from_collection(&c) {
            Ok(q) => q.underline(),
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        if q.arrows.len() != target.arrows.len() || q.faces.len() != target.faces.len() || degree_profile(&q) != profile
        {
            return ControlFlow::Continue(());
        }
        match planar_isomorphism(&target, &q, true) {
            Some(vertex_map) => {
                found = Some(FamilyMatch { collection: c, quiver: q, vertex_map });
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    found.ok_or_else(|| Error::SearchExhausted(format!("no symmetric ({k},{n}) collection matches {spec}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        for k in 2..=5 {
            let q = grid(k).unwrap();
            assert_eq!(q.vertex_count(), (k - 1) * (k - 1));
            assert_eq!(q.faces.len(), (k - 2) * (k - 2));
            q.check_potential().ok();
        }
    }

    #[test]
    fn triangle_shapes() {
        for k in 2..=4 {
            let q = triangle(k).unwrap();
            assert_eq!(q.vertex_count(), (k - 1) * (2 * k - 1));
            assert_eq!(q.faces.len(), (2 * k - 3) * (2 * k - 3));
        }
    }

    #[test]
    fn cobweb_census() {
        for x in [5, 7, 9] {
            for plus in [true, false] {
                let q = cobweb(x, plus).unwrap();
                assert_eq!(q.vertex_count(), x * (x - 2));
                let census = face_census(&q);
                assert_eq!(census.get(&x), Some(&1));
                assert_eq!(census[&3], x);
                assert_eq!(census[&4], x * x - 4 * x);
            }
        }
        let q = cobweb(3, true).unwrap();
        assert_eq!((q.vertex_count(), q.faces.len()), (3, 1));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("sporadic 6-21".parse::<FamilySpec>().unwrap(), FamilySpec::Sporadic(6, 21));
        assert_eq!("cobweb- 5".parse::<FamilySpec>().unwrap(), FamilySpec::CobwebMinus(5));
        assert!(matches!(FamilySpec::parse("cobweb+", "4"), Err(Error::UnsupportedParameter(_))));
        assert!(matches!(FamilySpec::parse("triangle", "5"), Err(Error::UnsupportedParameter(_))));
    }
}
