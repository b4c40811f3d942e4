//! Convex polygons in the plane: validation, hull, Minkowski sums, clipping.

use std::f64::consts::TAU;

use nalgebra::Vector2;

use crate::error::{Error, Result};

pub type Vec2 = Vector2<f64>;

/// Tolerance used by every geometric predicate.
pub const EPS: f64 = 1e-9;

#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[inline]
pub(crate) fn perp(a: Vec2) -> Vec2 {
    Vec2::new(-a.y, a.x)
}

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices")));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(Error::DegeneratePolygon("non-finite coordinate".into()));
        }
        let mut turning = 0.0;
        for i in 0..n {
            let e1 = vertices[(i + 1) % n] - vertices[i];
            let e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
            let (l1, l2) = (e1.norm(), e2.norm());
            if l1 <= EPS || l2 <= EPS {
                return Err(Error::DegeneratePolygon("repeated vertex".into()));
            }
            if cross(e1, e2) <= EPS * l1 * l2 {
                return Err(Error::DegeneratePolygon(format!(
                    "vertex {} is not a strict counter-clockwise turn",
                    (i + 1) % n
                )));
            }
            turning += cross(e1, e2).atan2(e1.dot(&e2));
        }
        // All left turns but winding twice (a star) still has to be rejected.
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::DegeneratePolygon("polygon winds more than once".into()));
        }
        Ok(Self { vertices })
    }

    /// Convex hull of a point set (Andrew's monotone chain), collinear points dropped.
    pub fn hull(points: &[Vec2]) -> Result<Self> {
        Self::new(hull_vertices(points))
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn centroid(&self) -> Vec2 {
        let a = self.area();
        let mut c = Vec2::zeros();
        for (p, q) in self.edges() {
            c += (p + q) * cross(p, q);
        }
        c / (6.0 * a)
    }

    pub fn reflect(&self) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| -v).collect(),
        }
    }

    pub fn translate(&self, by: Vec2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v + by).collect(),
        }
    }

    /// Scales about the origin; `factor` must be positive.
    pub fn scale(&self, factor: f64) -> Self {
        assert!(factor > 0.0, "polygon scale must be positive");
        Self {
            vertices: self.vertices.iter().map(|v| v * factor).collect(),
        }
    }

    /// Support function `max_{x in C} <x, dir>`.
    pub fn support(&self, dir: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(&dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Outward unit normals paired with offsets: `C = { x : n.x <= h }`.
    pub fn halfplanes(&self) -> Vec<(Vec2, f64)> {
        self.edges()
            .map(|(p, q)| {
                let e = q - p;
                let n = Vec2::new(e.y, -e.x) / e.norm();
                (n, n.dot(&p))
            })
            .collect()
    }

    /// Minimum signed distance to the edge lines; positive inside.
    pub fn depth(&self, p: Vec2) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                cross(e, p - a) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: Vec2, tol: f64) -> bool {
        self.depth(p) >= -tol
    }

    /// Euclidean distance from `p` to the boundary, positive inside and negative outside.
    pub fn signed_boundary_distance(&self, p: Vec2) -> f64 {
        let depth = self.depth(p);
        if depth >= 0.0 {
            return depth;
        }
        let outside = self
            .edges()
            .map(|(a, b)| segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min);
        -outside
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::repeat(f64::INFINITY);
        let mut hi = Vec2::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(p, q)| (q - p).norm()).sum()
    }

    /// Point at arclength `s` (mod perimeter) along the boundary from vertex 0.
    pub fn boundary_point(&self, s: f64) -> Vec2 {
        let total = self.perimeter();
        let mut s = s.rem_euclid(total);
        for (p, q) in self.edges() {
            let len = (q - p).norm();
            if s <= len {
                return p + (q - p) * (s / len);
            }
            s -= len;
        }
        self.vertices[0]
    }
}

pub(crate) fn shoelace(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += cross(vertices[i], vertices[(i + 1) % n]);
    }
    twice / 2.0
}

fn segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let e = b - a;
    let t = ((p - a).dot(&e) / e.norm_squared()).clamp(0.0, 1.0);
    (p - (a + e * t)).norm()
}

pub(crate) fn hull_vertices(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| (*a - *b).norm() <= EPS);
    if pts.len() < 3 {
        return pts;
    }
    let turn_ok = |o: Vec2, a: Vec2, b: Vec2| {
        let (e1, e2) = (a - o, b - o);
        cross(e1, e2) > EPS * e1.norm() * e2.norm()
    };
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && !turn_ok(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turn_ok(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Index of the lowest vertex (smallest y, then smallest x).
fn bottom_index(vertices: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, v) in vertices.iter().enumerate() {
        let b = vertices[best];
        if v.y < b.y || (v.y == b.y && v.x < b.x) {
            best = i;
        }
    }
    best
}

fn edge_angles(vertices: &[Vec2]) -> Vec<(f64, Vec2)> {
    let n = vertices.len();
    let start = bottom_index(vertices);
    (0..n)
        .map(|k| {
            let p = vertices[(start + k) % n];
            let q = vertices[(start + k + 1) % n];
            let e = q - p;
            (e.y.atan2(e.x).rem_euclid(TAU), e)
        })
        .collect()
}

/// Removes zero-length edges and fuses collinear consecutive edges.
fn fuse_collinear(mut vertices: Vec<Vec2>) -> Vec<Vec2> {
    loop {
        let n = vertices.len();
        if n < 3 {
            return vertices;
        }
        let mut removed = false;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let (e1, e2) = (cur - prev, next - cur);
            if e1.norm() <= EPS || cross(e1, e2).abs() <= EPS * e1.norm() * e2.norm().max(EPS) {
                vertices.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return vertices;
        }
    }
}

/// Minkowski sum of two convex vertex lists by sorted edge-vector merge.
///
/// Each input is either a single point (the sum is then a translation) or a
/// strictly convex counter-clockwise polygon. Collinear output edges are fused.
pub fn minkowski_sum_vertices(a: &[Vec2], b: &[Vec2]) -> Result<Vec<Vec2>> {
    for (name, poly) in [("left", a), ("right", b)] {
        match poly.len() {
            1 => {}
            n if n >= 3 => {
                ConvexPolygon::new(poly.to_vec())?;
            }
            n => {
                return Err(Error::DegeneratePolygon(format!(
                    "{name} operand has {n} vertices"
                )))
            }
        }
    }
    if a.len() == 1 {
        return Ok(b.iter().map(|v| v + a[0]).collect());
    }
    if b.len() == 1 {
        return Ok(a.iter().map(|v| v + b[0]).collect());
    }
    let ea = edge_angles(a);
    let eb = edge_angles(b);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut cur = a[bottom_index(a)] + b[bottom_index(b)];
    out.push(cur);
    let (mut i, mut j) = (0, 0);
    while i < ea.len() || j < eb.len() {
        let step = if j == eb.len() || (i < ea.len() && ea[i].0 < eb[j].0 - 1e-12) {
            i += 1;
            ea[i - 1].1
        } else if i == ea.len() || eb[j].0 < ea[i].0 - 1e-12 {
            j += 1;
            eb[j - 1].1
        } else {
            i += 1;
            j += 1;
            ea[i - 1].1 + eb[j - 1].1
        };
        cur += step;
        out.push(cur);
    }
    out.pop();
    Ok(fuse_collinear(out))
}

pub fn minkowski_sum(a: &ConvexPolygon, b: &ConvexPolygon) -> Result<ConvexPolygon> {
    ConvexPolygon::new(minkowski_sum_vertices(a.vertices(), b.vertices())?)
}

/// Sutherland–Hodgman clip of a convex region against `n . x <= c`.
pub(crate) fn clip_halfplane(poly: &[Vec2], n: Vec2, c: f64) -> Vec<Vec2> {
    let len = poly.len();
    if len == 0 {
        return Vec::new();
    }
    let slack = 1e-12;
    let mut out = Vec::with_capacity(len + 1);
    for k in 0..len {
        let p = poly[k];
        let q = poly[(k + 1) % len];
        let (fp, fq) = (n.dot(&p) - c, n.dot(&q) - c);
        let (p_in, q_in) = (fp <= slack, fq <= slack);
        if p_in {
            out.push(p);
        }
        if p_in != q_in {
            let t = fp / (fp - fq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Intersection of half-planes `n.x <= c` starting from a convex region.
pub(crate) fn clip_all(start: &[Vec2], halfplanes: impl IntoIterator<Item = (Vec2, f64)>) -> Vec<Vec2> {
    let mut region = start.to_vec();
    for (n, c) in halfplanes {
        region = clip_halfplane(&region, n, c);
        if region.is_empty() {
            break;
        }
    }
    region
}
