//! Piecewise-linear paths in the covering plane of `𝕋² = ℝ²/ℤ²`.
//!
//! Areas are exact rationals with counterclockwise enclosure positive.
//! Intersection indices are `+1` when (tangent of the first loop, tangent of
//! the second loop) is a positively oriented frame.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, int, rat, Rational};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Self::int(0, 0)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> Point {
        Point::new(-&self.x, -&self.y)
    }

    /// `self.x·o.y − self.y·o.x`
    pub fn cross(&self, o: &Point) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Representative in the half-open unit square.
    pub fn mod_one(&self) -> Point {
        let frac = |r: &Rational| r - r.floor();
        Point::new(frac(&self.x), frac(&self.y))
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            rational::format_rational(&self.x),
            rational::format_rational(&self.y)
        )
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational::format_rational(&self.x), rational::format_rational(&self.y)].serialize(s)
    }
}

fn point_from_json(v: &serde_json::Value) -> Result<Point> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(
            rational::rational_from_json(x)?,
            rational::rational_from_json(y)?,
        )),
        _ => Err(Error::Input(format!("expected a coordinate pair, got {v}"))),
    }
}

/// Accepts `{"vertices": [[x, y], ...]}` or a bare `[[x, y], ...]`, where each
/// coordinate is an integer or a rational string.
pub fn points_from_json(v: &serde_json::Value) -> Result<Vec<Point>> {
    let list = match v {
        serde_json::Value::Object(map) => map
            .get("vertices")
            .ok_or_else(|| Error::Input("missing `vertices`".into()))?,
        other => other,
    };
    list.as_array()
        .ok_or_else(|| Error::Input("expected an array of vertices".into()))?
        .iter()
        .map(point_from_json)
        .collect()
}

/// Signed shoelace area of the closed polygon through `points`.
pub fn shoelace(points: &[Point]) -> Rational {
    let n = points.len();
    if n < 3 {
        return Rational::zero();
    }
    let twice = (0..n).fold(Rational::zero(), |acc, i| {
        acc + points[i].cross(&points[(i + 1) % n])
    });
    twice / int(2)
}

/// A PL path with exact rational vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PLPath {
    vertices: Vec<Point>,
}

impl PLPath {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath("a path needs at least two vertices".into()));
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath(format!("repeated consecutive vertex {:?}", w[0])));
        }
        Ok(Self { vertices })
    }

    /// The constant path at `p`.
    pub fn constant(p: Point) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn from_integer_points(points: &[(i64, i64)]) -> Result<Self> {
        Self::new(points.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Self::new(points_from_json(v)?)
    }

    /// Builds a path after dropping consecutive duplicate vertices; a path that
    /// collapses to one point becomes the constant path.
    pub fn from_vertices_dedup(mut vertices: Vec<Point>) -> Self {
        vertices.dedup();
        if vertices.len() < 2 {
            Self::constant(vertices.pop().unwrap_or_else(Point::origin))
        } else {
            Self { vertices }
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().expect("paths are non-empty")
    }

    pub fn displacement(&self) -> Point {
        self.end().sub(self.start())
    }

    /// Segment displacement vectors in traversal order.
    pub fn segments(&self) -> impl Iterator<Item = Point> + '_ {
        self.vertices.windows(2).map(|w| w[1].sub(&w[0]))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    pub fn translated(&self, by: &Point) -> Self {
        Self {
            vertices: self.vertices.iter().map(|p| p.add(by)).collect(),
        }
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &PLPath) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::InvalidPath("paths are not composable".into()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().skip(1).cloned());
        Ok(Self::from_vertices_dedup(vertices))
    }
}

impl Serialize for PLPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PLPath", 1)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.end()
    }
}

/// Straight path `(0,0) → (m,n)`; `(0,0)` gives the constant loop.
pub fn straight_path(m: i64, n: i64) -> PLPath {
    if m == 0 && n == 0 {
        PLPath::constant(Point::origin())
    } else {
        PLPath {
            vertices: vec![Point::origin(), Point::int(m, n)],
        }
    }
}

/// Signed area enclosed by `p1` followed by `p2` reversed.
pub fn signed_area_between(p1: &PLPath, p2: &PLPath) -> Result<Rational> {
    let start_ok = p1.start() == p2.start();
    let end_ok = p1.end() == p2.end();
    if !(start_ok && end_ok) {
        return Err(Error::EndpointMismatch { start_ok, end_ok });
    }
    let mut ring: Vec<Point> = p1.vertices.clone();
    ring.extend(p2.vertices.iter().rev().skip(1).cloned());
    Ok(shoelace(&ring))
}

// ---------------------------------------------------------------------------
// Lattice polygons
// ---------------------------------------------------------------------------

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    (b.0 as i128 - ax) * (c.1 as i128 - ay) - (b.1 as i128 - ay) * (c.0 as i128 - ax)
}

fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

fn segments_touch(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let (o1, o2) = (orient(a, b, c).signum(), orient(a, b, d).signum());
    let (o3, o4) = (orient(c, d, a).signum(), orient(c, d, b).signum());
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Simple closed polygon with integer vertices. Closure is implied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<(i64, i64)>,
}

impl LatticePolygon {
    pub fn new(mut vertices: Vec<(i64, i64)>) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three vertices".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::InvalidPolygon("repeated consecutive vertex".into()));
            }
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            for j in (i + 1)..n {
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Shared vertex only; reject edges folding back over each other.
                    let (shared, p, r) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                    let back = orient(shared, p, r) == 0
                        && ((p.0 - shared.0) as i128 * (r.0 - shared.0) as i128
                            + (p.1 - shared.1) as i128 * (r.1 - shared.1) as i128)
                            > 0;
                    if back {
                        return Err(Error::InvalidPolygon("self-intersecting polygon".into()));
                    }
                } else if segments_touch(a, b, c, d) {
                    return Err(Error::InvalidPolygon("self-intersecting polygon".into()));
                }
            }
        }
        let poly = Self { vertices };
        if poly.twice_signed_area() == 0 {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        Ok(poly)
    }

    /// Parses `[[x, y], ...]` (or `{"vertices": ...}`); every coordinate must be an integer.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pts = points_from_json(v)?;
        let verts = pts
            .iter()
            .map(|p| match (rational::to_i64(&p.x), rational::to_i64(&p.y)) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(Error::InvalidPolygon(format!("non-integer vertex {p:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(verts)
    }

    /// Convex hull of a point set (collinear points dropped); `None` when degenerate.
    pub fn convex_hull(points: &[(i64, i64)]) -> Option<Self> {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 3 {
            return None;
        }
        let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2
                    && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
                {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        Self::new(hull).ok()
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    fn twice_signed_area(&self) -> i128 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
            })
            .sum()
    }

    /// Unsigned shoelace area.
    pub fn shoelace_area(&self) -> Rational {
        Rational::new(self.twice_signed_area().abs().into(), 2.into())
    }

    /// `B(P) = Σ gcd(|Δx|, |Δy|)` over the edges.
    pub fn boundary_count(&self) -> u64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (b.0 - a.0).unsigned_abs().gcd(&(b.1 - a.1).unsigned_abs())
            })
            .sum()
    }

    fn on_boundary(&self, p: (i64, i64)) -> bool {
        let n = self.vertices.len();
        (0..n).any(|i| on_segment(self.vertices[i], self.vertices[(i + 1) % n], p))
    }

    /// Nonzero winding number test; the caller excludes boundary points.
    fn winds_around(&self, p: (i64, i64)) -> bool {
        let n = self.vertices.len();
        let mut winding = 0i64;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if a.1 <= p.1 {
                if b.1 > p.1 && orient(a, b, p) > 0 {
                    winding += 1;
                }
            } else if b.1 <= p.1 && orient(a, b, p) < 0 {
                winding -= 1;
            }
        }
        winding != 0
    }

    /// `I(P)`, counted point by point over the bounding box.
    pub fn interior_count(&self) -> u64 {
        let (xmin, xmax) = self.vertices.iter().fold((i64::MAX, i64::MIN), |(lo, hi), v| {
            (lo.min(v.0), hi.max(v.0))
        });
        let (ymin, ymax) = self.vertices.iter().fold((i64::MAX, i64::MIN), |(lo, hi), v| {
            (lo.min(v.1), hi.max(v.1))
        });
        let mut count = 0;
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                if !self.on_boundary((x, y)) && self.winds_around((x, y)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// `I + B/2 − 1`.
    pub fn pick_area(&self) -> Rational {
        let i = self.interior_count() as i64;
        let b = self.boundary_count() as i64;
        int(i) + rat(b, 2) - Rational::one()
    }
}

// ---------------------------------------------------------------------------
// Integer loops, intersections and reroutings
// ---------------------------------------------------------------------------

/// The straight loop `(0,0) → (m,n)` on the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerLoop {
    pub m: i64,
    pub n: i64,
}

impl IntegerLoop {
    pub fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn is_null(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    pub fn vector(&self) -> Point {
        Point::int(self.m, self.n)
    }

    pub fn path(&self) -> PLPath {
        straight_path(self.m, self.n)
    }

    /// `m·t − n·s`
    pub fn cross(&self, other: &IntegerLoop) -> i64 {
        self.m * other.n - self.n * other.m
    }
}

/// A transversal crossing of two straight loops.
///
/// `along_first` and `along_second` are the crossing's parameters in `[0, 1)`
/// on the first loop and on the offset second loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionDatum {
    pub point: Point,
    pub index: i8,
    #[serde(serialize_with = "ser_rational")]
    pub along_first: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub along_second: Rational,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format_rational(r))
}

/// Offset applied to the second loop to separate the shared basepoint:
/// `(1/(2D), 1/(3D))` with `D = max(|m|,|n|,|s|,|t|) + 2`.
pub fn basepoint_offset(l1: IntegerLoop, l2: IntegerLoop) -> Point {
    let d = offset_scale(l1, l2);
    Point::new(rat(1, 2 * d), rat(1, 3 * d))
}

fn offset_scale(l1: IntegerLoop, l2: IntegerLoop) -> i64 {
    [l1.m, l1.n, l2.m, l2.n]
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or(0)
        + 2
}

fn in_unit(r: &Rational) -> bool {
    !r.is_negative() && r < &Rational::one()
}

/// Transversal intersections of `l1` with the offset copy of `l2`, ordered by
/// position along `l1` and then along `l2`. Parallel loops give an empty list.
pub fn intersections(l1: IntegerLoop, l2: IntegerLoop) -> Result<Vec<IntersectionDatum>> {
    if l1.is_null() {
        return Err(Error::NullLoop(l1.m, l1.n));
    }
    if l2.is_null() {
        return Err(Error::NullLoop(l2.m, l2.n));
    }
    let det = l1.cross(&l2);
    if det == 0 {
        return Ok(Vec::new());
    }
    let delta = basepoint_offset(l1, l2);
    let (v1, w) = (l1.vector(), l2.vector());
    let det_r = int(det);
    let index: i8 = if det > 0 { 1 } else { -1 };

    // u·v1 − v·w = δ + z over (u, v) ∈ [0,1)²; z ranges over the box spanned by
    // the corners of that map.
    let range = |a: i64, b: i64, off: &Rational| {
        let lo = a.min(0) + (-b).min(0);
        let hi = a.max(0) + (-b).max(0);
        let lo = (int(lo) - off).floor().to_integer();
        let hi = (int(hi) - off).ceil().to_integer();
        (i64::try_from(lo).unwrap(), i64::try_from(hi).unwrap())
    };
    let (zx_lo, zx_hi) = range(l1.m, l2.m, &delta.x);
    let (zy_lo, zy_hi) = range(l1.n, l2.n, &delta.y);

    // Scaled by 6D every candidate is an integer point, so the range test runs
    // in integers and only the hits become rationals.
    let d6 = 6 * offset_scale(l1, l2) as i128;
    let (w_m, w_n, det_i) = (l2.m as i128, l2.n as i128, det as i128);
    let bound = det_i.abs() * d6;
    let mut out = Vec::with_capacity(det.unsigned_abs() as usize);
    for zx in zx_lo..=zx_hi {
        for zy in zy_lo..=zy_hi {
            let rx = 3 + d6 * zx as i128;
            let ry = 2 + d6 * zy as i128;
            // Cramer on [[m, −s], [n, −t]]·(u, v) = r, determinant −det
            let u_num = (rx * w_n - ry * w_m) * det_i.signum();
            let v_num = -(l1.m as i128 * ry - l1.n as i128 * rx) * det_i.signum();
            if (0..bound).contains(&u_num) && (0..bound).contains(&v_num) {
                let r = delta.add(&Point::int(zx, zy));
                let u = r.cross(&w) / &det_r;
                let v = -(v1.cross(&r)) / &det_r;
                out.push(IntersectionDatum {
                    point: v1.scale(&u).mod_one(),
                    index,
                    along_first: u,
                    along_second: v,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        (&a.along_first, &a.along_second).cmp(&(&b.along_first, &b.along_second))
    });
    Ok(out)
}

/// The loop `l1 S l2` (or `l1 S l2⁻¹`): follow `l1` to `S`, traverse the
/// translate of `l2` based at `S`, then finish `l1` from the translated point.
pub fn reroute(
    l1: IntegerLoop,
    l2: IntegerLoop,
    s: &IntersectionDatum,
    inverse: bool,
) -> Result<PLPath> {
    if !in_unit(&s.along_first) || l1.vector().scale(&s.along_first).mod_one() != s.point {
        return Err(Error::NotOnLoop("the first loop"));
    }
    let delta = basepoint_offset(l1, l2);
    if !in_unit(&s.along_second)
        || delta.add(&l2.vector().scale(&s.along_second)).mod_one() != s.point
    {
        return Err(Error::NotOnLoop("the second loop"));
    }
    let v1 = l1.vector();
    let w = if inverse { l2.vector().neg() } else { l2.vector() };
    let p = v1.scale(&s.along_first);
    let detour = p.add(&w);
    let finish = v1.add(&w);
    Ok(PLPath::from_vertices_dedup(vec![Point::origin(), p, detour, finish]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(points: &[(i64, i64)]) -> PLPath {
        PLPath::from_integer_points(points).unwrap()
    }

    #[test]
    fn straight_paths() {
        assert_eq!(straight_path(1, 0).vertices(), &[Point::int(0, 0), Point::int(1, 0)]);
        assert_eq!(straight_path(2, 1).end(), &Point::int(2, 1));
        assert!(straight_path(0, 0).is_trivial());
    }

    #[test]
    fn path_validation() {
        assert!(PLPath::from_integer_points(&[(0, 0)]).is_err());
        assert!(PLPath::from_integer_points(&[(0, 0), (0, 0), (1, 0)]).is_err());
    }

    #[test]
    fn signed_area_examples() {
        let p1 = path(&[(0, 0), (1, 0), (1, 1)]);
        let p2 = path(&[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(signed_area_between(&p1, &p2).unwrap(), int(1));
        assert_eq!(signed_area_between(&p2, &p1).unwrap(), int(-1));
        assert_eq!(signed_area_between(&p1, &p1).unwrap(), int(0));
        let tri = signed_area_between(&path(&[(0, 0), (2, 1)]), &path(&[(0, 0), (2, 0), (2, 1)]));
        assert_eq!(tri.unwrap(), int(-1));
    }

    #[test]
    fn signed_area_endpoint_mismatch() {
        let err = signed_area_between(&path(&[(0, 0), (1, 0)]), &path(&[(0, 0), (0, 1)]));
        assert_eq!(err, Err(Error::EndpointMismatch { start_ok: true, end_ok: false }));
    }

    #[test]
    fn pick_examples() {
        let sq = LatticePolygon::new(vec![(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!((sq.boundary_count(), sq.interior_count()), (4, 0));
        assert_eq!(sq.pick_area(), int(1));

        let t = LatticePolygon::new(vec![(0, 0), (2, 0), (0, 2)]).unwrap();
        assert_eq!((t.boundary_count(), t.interior_count()), (6, 0));
        assert_eq!(t.pick_area(), int(2));

        let t = LatticePolygon::new(vec![(0, 0), (3, 1), (1, 3)]).unwrap();
        assert_eq!(t.shoelace_area(), int(4));
        assert_eq!(t.pick_area(), int(4));
    }

    #[test]
    fn pick_on_concave_polygon() {
        // L-shape, area 3
        let l = LatticePolygon::new(vec![(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(l.shoelace_area(), int(3));
        assert_eq!(l.pick_area(), int(3));
        // clockwise orientation is accepted
        let cw = LatticePolygon::new(vec![(0, 0), (0, 3), (3, 0)]).unwrap();
        assert_eq!(cw.pick_area(), cw.shoelace_area());
    }

    #[test]
    fn polygon_errors() {
        let bowtie = LatticePolygon::new(vec![(0, 0), (2, 2), (2, 0), (0, 2)]);
        assert!(matches!(bowtie, Err(Error::InvalidPolygon(_))));
        let folded = LatticePolygon::new(vec![(0, 0), (2, 0), (1, 0), (1, 1)]);
        assert!(matches!(folded, Err(Error::InvalidPolygon(_))));
        assert!(LatticePolygon::new(vec![(0, 0), (1, 1), (2, 2)]).is_err());
        let frac = serde_json::json!([["0", "0"], ["1/2", "0"], ["0", "1"]]);
        assert!(matches!(LatticePolygon::from_json(&frac), Err(Error::InvalidPolygon(_))));
    }

    #[test]
    fn convex_hull_drops_interior_and_collinear() {
        let h = LatticePolygon::convex_hull(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
            .unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert_eq!(h.shoelace_area(), int(4));
        assert!(LatticePolygon::convex_hull(&[(0, 0), (1, 1), (2, 2)]).is_none());
    }

    #[test]
    fn intersection_examples() {
        let x = intersections(IntegerLoop::new(1, 0), IntegerLoop::new(0, 1)).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x[0].index, 1);

        let par = intersections(IntegerLoop::new(1, 1), IntegerLoop::new(2, 2)).unwrap();
        assert!(par.is_empty());

        let x = intersections(IntegerLoop::new(2, 1), IntegerLoop::new(1, 1)).unwrap();
        assert_eq!(x.iter().map(|d| d.index as i64).sum::<i64>(), 1);

        assert!(matches!(
            intersections(IntegerLoop::new(0, 0), IntegerLoop::new(1, 0)),
            Err(Error::NullLoop(0, 0))
        ));
    }

    #[test]
    fn multiplicities_counted() {
        // (1,0) meets the doubly traversed (0,2) twice at the same torus point.
        let x = intersections(IntegerLoop::new(1, 0), IntegerLoop::new(0, 2)).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x[0].point, x[1].point);
        assert_ne!(x[0].along_second, x[1].along_second);
    }

    #[test]
    fn reroute_examples() {
        let (l1, l2) = (IntegerLoop::new(1, 0), IntegerLoop::new(0, 1));
        let s = &intersections(l1, l2).unwrap()[0];
        assert_eq!(reroute(l1, l2, s, false).unwrap().displacement(), Point::int(1, 1));
        assert_eq!(reroute(l1, l2, s, true).unwrap().displacement(), Point::int(1, -1));

        let (l1, l2) = (IntegerLoop::new(2, 1), IntegerLoop::new(1, 1));
        let s = &intersections(l1, l2).unwrap()[0];
        assert_eq!(reroute(l1, l2, s, false).unwrap().displacement(), Point::int(3, 2));
    }

    #[test]
    fn reroute_rejects_foreign_point() {
        let (l1, l2) = (IntegerLoop::new(1, 0), IntegerLoop::new(0, 1));
        let mut s = intersections(l1, l2).unwrap()[0].clone();
        s.point = Point::new(rat(1, 3), rat(1, 2));
        assert_eq!(reroute(l1, l2, &s, false), Err(Error::NotOnLoop("the first loop")));
    }

    #[test]
    fn json_paths() {
        let v = serde_json::json!({"vertices": [["0", "0"], ["1/2", "0"], [1, 1]]});
        let p = PLPath::from_json(&v).unwrap();
        assert_eq!(p.end(), &Point::int(1, 1));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"vertices":[["0","0"],["1/2","0"],["1","1"]]}"#
        );
        assert!(PLPath::from_json(&serde_json::json!([[0, 0], [1]])).is_err());
    }
}
