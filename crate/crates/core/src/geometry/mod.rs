//! Convex bodies, homothet placements and the intersection predicates built on them.
//!
//! A body `C` is a planar convex polygon, the unit disk, or an axis-parallel box
//! centred at the origin. A [`Placement`] describes the homothet `scale * C + center`.
//! Every predicate treats bodies as closed sets: touching boundaries intersect.

mod fit;
mod polygon;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fit::{containment_ratio, inradius, inscribed_parallelogram, ParallelogramFit, RATIO_LIMIT};
pub use polygon::{cross, minkowski_sum, minkowski_sum_vertices, ConvexPolygon, Vec2, EPS};
pub(crate) use polygon::{clip_all, shoelace};

/// Axis-parallel box centred at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxBody {
    sides: Vec<f64>,
}

impl BoxBody {
    pub fn new(sides: Vec<f64>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::InvalidBody("box needs at least one side".into()));
        }
        if sides.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidBody("box sides must be positive".into()));
        }
        Ok(Self { sides })
    }

    pub fn sides(&self) -> &[f64] {
        &self.sides
    }

    pub fn dimension(&self) -> usize {
        self.sides.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodySpec", into = "BodySpec")]
pub enum ConvexBody {
    Polygon(ConvexPolygon),
    /// Unit-radius disk centred at the origin.
    Disk,
    Box(BoxBody),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum BodySpec {
    #[serde(rename = "polygon2d")]
    Polygon2d { vertices: Vec<[f64; 2]> },
    Disk,
    Box { sides: Vec<f64> },
}

impl TryFrom<BodySpec> for ConvexBody {
    type Error = Error;

    fn try_from(spec: BodySpec) -> Result<Self> {
        match spec {
            BodySpec::Polygon2d { vertices } => ConvexBody::polygon(vertices),
            BodySpec::Disk => Ok(ConvexBody::Disk),
            BodySpec::Box { sides } => Ok(ConvexBody::Box(BoxBody::new(sides)?)),
        }
    }
}

impl From<ConvexBody> for BodySpec {
    fn from(body: ConvexBody) -> Self {
        match body {
            ConvexBody::Polygon(p) => BodySpec::Polygon2d {
                vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            },
            ConvexBody::Disk => BodySpec::Disk,
            ConvexBody::Box(b) => BodySpec::Box { sides: b.sides },
        }
    }
}

impl ConvexBody {
    pub fn polygon(vertices: impl IntoIterator<Item = [f64; 2]>) -> Result<Self> {
        let verts = vertices.into_iter().map(|[x, y]| Vec2::new(x, y)).collect();
        Ok(ConvexBody::Polygon(ConvexPolygon::new(verts)?))
    }

    pub fn boxed(sides: Vec<f64>) -> Result<Self> {
        Ok(ConvexBody::Box(BoxBody::new(sides)?))
    }

    /// Axis-parallel unit square.
    pub fn unit_square() -> Self {
        ConvexBody::Box(BoxBody { sides: vec![1.0, 1.0] })
    }

    /// Unit cube in dimension `n`.
    pub fn unit_cube(n: usize) -> Self {
        ConvexBody::Box(BoxBody { sides: vec![1.0; n.max(1)] })
    }

    /// Right triangle with vertices (0,0), (1,0), (0,1).
    pub fn right_triangle() -> Self {
        ConvexBody::polygon([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).expect("valid triangle")
    }

    pub fn dimension(&self) -> usize {
        match self {
            ConvexBody::Polygon(_) | ConvexBody::Disk => 2,
            ConvexBody::Box(b) => b.dimension(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConvexBody::Polygon(_) => "polygon2d",
            ConvexBody::Disk => "disk",
            ConvexBody::Box(_) => "box",
        }
    }

    /// Lebesgue measure.
    pub fn area(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.area(),
            ConvexBody::Disk => std::f64::consts::PI,
            ConvexBody::Box(b) => b.sides.iter().product(),
        }
    }

    /// The reflection `-C`.
    pub fn reflect(&self) -> ConvexBody {
        match self {
            ConvexBody::Polygon(p) => ConvexBody::Polygon(p.reflect()),
            other => other.clone(),
        }
    }

    /// The centrally symmetric body `(C - C) / 2`.
    pub fn symmetrize(&self) -> ConvexBody {
        match self {
            ConvexBody::Polygon(p) => {
                let diff = minkowski_sum(p, &p.reflect()).expect("difference body of a valid polygon");
                ConvexBody::Polygon(diff.scale(0.5))
            }
            other => other.clone(),
        }
    }

    /// Support function `max_{x in C} <x, dir>`.
    pub fn support(&self, dir: &[f64]) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.support(Vec2::new(dir[0], dir[1])),
            ConvexBody::Disk => (dir[0] * dir[0] + dir[1] * dir[1]).sqrt(),
            ConvexBody::Box(b) => b.sides.iter().zip(dir).map(|(s, d)| 0.5 * s * d.abs()).sum(),
        }
    }

    /// Signed depth of `p` in the body: non-negative exactly when `p` is inside.
    pub fn depth(&self, p: &[f64]) -> f64 {
        match self {
            ConvexBody::Polygon(poly) => poly.depth(Vec2::new(p[0], p[1])),
            ConvexBody::Disk => 1.0 - (p[0] * p[0] + p[1] * p[1]).sqrt(),
            ConvexBody::Box(b) => b
                .sides
                .iter()
                .zip(p)
                .map(|(s, x)| 0.5 * s - x.abs())
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        self.depth(p) >= -tol
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            ConvexBody::Polygon(p) => {
                let (lo, hi) = p.bounding_box();
                (vec![lo.x, lo.y], vec![hi.x, hi.y])
            }
            ConvexBody::Disk => (vec![-1.0, -1.0], vec![1.0, 1.0]),
            ConvexBody::Box(b) => (
                b.sides.iter().map(|s| -0.5 * s).collect(),
                b.sides.iter().map(|s| 0.5 * s).collect(),
            ),
        }
    }

    /// Approximate equality used when matching certificates to families.
    pub fn approx_eq(&self, other: &ConvexBody, tol: f64) -> bool {
        match (self, other) {
            (ConvexBody::Disk, ConvexBody::Disk) => true,
            (ConvexBody::Box(a), ConvexBody::Box(b)) => {
                a.sides.len() == b.sides.len()
                    && a.sides.iter().zip(&b.sides).all(|(x, y)| (x - y).abs() <= tol)
            }
            (ConvexBody::Polygon(a), ConvexBody::Polygon(b)) => {
                a.len() == b.len()
                    && (0..a.len()).any(|shift| {
                        (0..a.len()).all(|i| {
                            (a.vertices()[i] - b.vertices()[(i + shift) % b.len()]).norm() <= tol
                        })
                    })
            }
            _ => false,
        }
    }
}

/// The homothet `scale * C + center`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub center: Vec<f64>,
    pub scale: f64,
}

impl Placement {
    pub fn new(center: Vec<f64>, scale: f64) -> Result<Self> {
        let p = Self { center, scale };
        p.validate()?;
        Ok(p)
    }

    pub fn translate(center: Vec<f64>) -> Self {
        Self { center, scale: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidPlacement(format!("scale {} is not positive", self.scale)));
        }
        if self.center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPlacement("non-finite center".into()));
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    /// Whether `point` lies in the placed body (closed, within `tol`).
    pub fn contains(&self, body: &ConvexBody, point: &[f64], tol: f64) -> bool {
        let local: Vec<f64> = point
            .iter()
            .zip(&self.center)
            .map(|(x, c)| (x - c) / self.scale)
            .collect();
        body.depth(&local) * self.scale >= -tol
    }
}

fn check_dims(body: &ConvexBody, p1: &Placement, p2: &Placement) -> Result<()> {
    let n = body.dimension();
    for p in [p1, p2] {
        if p.dimension() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dimension() });
        }
    }
    Ok(())
}

/// Whether the closed homothets `p1` and `p2` of `body` share a point.
pub fn homothets_intersect(body: &ConvexBody, p1: &Placement, p2: &Placement) -> Result<bool> {
    check_dims(body, p1, p2)?;
    let delta: Vec<f64> = p2.center.iter().zip(&p1.center).map(|(b, a)| b - a).collect();
    let reach = p1.scale + p2.scale;
    Ok(match body {
        ConvexBody::Disk => (delta[0] * delta[0] + delta[1] * delta[1]).sqrt() <= reach + EPS,
        ConvexBody::Box(b) => b
            .sides
            .iter()
            .zip(&delta)
            .all(|(s, d)| d.abs() <= 0.5 * s * reach + EPS),
        ConvexBody::Polygon(poly) => {
            // Both homothets share the edge normals of C, so those are the only
            // candidate separating axes.
            let a = Vec2::new(p1.center[0], p1.center[1]);
            let b = Vec2::new(p2.center[0], p2.center[1]);
            poly.halfplanes().into_iter().all(|(n, _)| {
                let hi = poly.support(n);
                let lo = -poly.support(-n);
                let (a_lo, a_hi) = (p1.scale * lo + n.dot(&a), p1.scale * hi + n.dot(&a));
                let (b_lo, b_hi) = (p2.scale * lo + n.dot(&b), p2.scale * hi + n.dot(&b));
                a_hi >= b_lo - EPS && b_hi >= a_lo - EPS
            })
        }
    })
}

/// Euclidean distance of the centre offset `p2 - p1` from the boundary of
/// `scale1 * C - scale2 * C`: how far the pair is from tangency.
pub fn tangency_margin(body: &ConvexBody, p1: &Placement, p2: &Placement) -> Result<f64> {
    check_dims(body, p1, p2)?;
    let delta: Vec<f64> = p2.center.iter().zip(&p1.center).map(|(b, a)| b - a).collect();
    let reach = p1.scale + p2.scale;
    Ok(match body {
        ConvexBody::Disk => ((delta[0] * delta[0] + delta[1] * delta[1]).sqrt() - reach).abs(),
        ConvexBody::Box(b) => {
            let half: Vec<f64> = b.sides.iter().map(|s| 0.5 * s * reach).collect();
            let inside = half.iter().zip(&delta).all(|(h, d)| d.abs() <= *h);
            if inside {
                half.iter().zip(&delta).map(|(h, d)| h - d.abs()).fold(f64::INFINITY, f64::min)
            } else {
                half.iter()
                    .zip(&delta)
                    .map(|(h, d)| (d.abs() - h).max(0.0).powi(2))
                    .sum::<f64>()
                    .sqrt()
            }
        }
        ConvexBody::Polygon(poly) => {
            let diff = minkowski_sum(&poly.scale(p1.scale), &poly.reflect().scale(p2.scale))?;
            diff.signed_boundary_distance(Vec2::new(delta[0], delta[1])).abs()
        }
    })
}

/// A point shared by two closed homothets, if they meet.
pub fn common_point(body: &ConvexBody, p1: &Placement, p2: &Placement) -> Result<Option<Vec<f64>>> {
    if !homothets_intersect(body, p1, p2)? {
        return Ok(None);
    }
    Ok(match body {
        ConvexBody::Disk => {
            let w = p1.scale / (p1.scale + p2.scale);
            Some(p1.center.iter().zip(&p2.center).map(|(a, b)| a + (b - a) * w).collect())
        }
        ConvexBody::Box(b) => Some(
            (0..b.dimension())
                .map(|i| {
                    let (h1, h2) = (0.5 * b.sides[i] * p1.scale, 0.5 * b.sides[i] * p2.scale);
                    let lo = (p1.center[i] - h1).max(p2.center[i] - h2);
                    let hi = (p1.center[i] + h1).min(p2.center[i] + h2);
                    0.5 * (lo + hi)
                })
                .collect(),
        ),
        ConvexBody::Polygon(poly) => {
            let place = |p: &Placement| poly.scale(p.scale).translate(Vec2::new(p.center[0], p.center[1]));
            let (a, b) = (place(p1), place(p2));
            let region = clip_all(a.vertices(), b.halfplanes().into_iter().map(|(n, h)| (n, h + EPS)));
            if region.is_empty() {
                None
            } else {
                let c = region.iter().fold(Vec2::zeros(), |acc, v| acc + v) / region.len() as f64;
                Some(vec![c.x, c.y])
            }
        }
    })
}

/// A body scaled about the origin, `scale * C`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledBody {
    #[serde(flatten)]
    pub body: ConvexBody,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl ScaledBody {
    pub fn new(body: ConvexBody, scale: f64) -> Self {
        Self { body, scale }
    }

    pub fn unit(body: ConvexBody) -> Self {
        Self { body, scale: 1.0 }
    }

    pub fn dimension(&self) -> usize {
        self.body.dimension()
    }

    /// Signed depth in absolute length units.
    pub fn depth(&self, p: &[f64]) -> f64 {
        let local: Vec<f64> = p.iter().map(|x| x / self.scale).collect();
        self.body.depth(&local) * self.scale
    }

    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let (lo, hi) = self.body.bounding_box();
        (
            lo.iter().map(|x| x * self.scale).collect(),
            hi.iter().map(|x| x * self.scale).collect(),
        )
    }

    pub fn centroid(&self) -> Vec<f64> {
        match &self.body {
            ConvexBody::Polygon(p) => {
                let c = p.centroid() * self.scale;
                vec![c.x, c.y]
            }
            other => vec![0.0; other.dimension()],
        }
    }
}

/// The difference body `C - C`.
pub fn difference_body(body: &ConvexBody) -> ScaledBody {
    match body {
        ConvexBody::Polygon(p) => ScaledBody::unit(ConvexBody::Polygon(
            minkowski_sum(p, &p.reflect()).expect("difference body of a valid polygon"),
        )),
        other => ScaledBody::new(other.clone(), 2.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn at(x: f64, y: f64) -> Placement {
        Placement::translate(vec![x, y])
    }

    fn hexagon_vertices() -> Vec<Vec2> {
        [(1.0, 0.0), (0.0, 1.0), (-1.0, 1.0), (-1.0, 0.0), (0.0, -1.0), (1.0, -1.0)]
            .iter()
            .map(|&(x, y)| Vec2::new(x, y))
            .collect()
    }

    fn same_cycle(a: &[Vec2], b: &[Vec2], tol: f64) -> bool {
        a.len() == b.len()
            && (0..a.len()).any(|s| (0..a.len()).all(|i| (a[i] - b[(i + s) % b.len()]).norm() <= tol))
    }

    #[test]
    fn areas() {
        assert_abs_diff_eq!(ConvexBody::unit_square().area(), 1.0);
        assert_abs_diff_eq!(ConvexBody::right_triangle().area(), 0.5);
        assert_abs_diff_eq!(ConvexBody::Disk.area(), std::f64::consts::PI);
    }

    #[test]
    fn reflect_examples() {
        let t = ConvexBody::right_triangle().reflect();
        let ConvexBody::Polygon(p) = &t else { unreachable!() };
        assert_eq!(
            p.vertices(),
            &[Vec2::new(0.0, 0.0), Vec2::new(-1.0, 0.0), Vec2::new(0.0, -1.0)]
        );
        assert_eq!(ConvexBody::unit_square().reflect(), ConvexBody::unit_square());
        assert_eq!(ConvexBody::Disk.reflect(), ConvexBody::Disk);
    }

    #[test]
    fn triangle_difference_body_is_hexagon() {
        let ConvexBody::Polygon(t) = ConvexBody::right_triangle() else { unreachable!() };
        let sum = minkowski_sum(&t, &t.reflect()).unwrap();
        assert!(same_cycle(sum.vertices(), &hexagon_vertices(), 1e-12));
        assert_abs_diff_eq!(sum.area(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn symmetrize_triangle() {
        let ConvexBody::Polygon(k) = ConvexBody::right_triangle().symmetrize() else { unreachable!() };
        let half: Vec<Vec2> = hexagon_vertices().iter().map(|v| v * 0.5).collect();
        assert!(same_cycle(k.vertices(), &half, 1e-12));
        assert_eq!(ConvexBody::unit_square().symmetrize(), ConvexBody::unit_square());
        assert_eq!(ConvexBody::Disk.symmetrize(), ConvexBody::Disk);
    }

    #[test]
    fn intersection_examples() {
        let sq = ConvexBody::unit_square();
        assert!(homothets_intersect(&sq, &at(0.0, 0.0), &at(1.0, 0.0)).unwrap());
        assert!(!homothets_intersect(&ConvexBody::Disk, &at(0.0, 0.0), &at(2.001, 0.0)).unwrap());
        let tri = ConvexBody::right_triangle();
        assert!(!homothets_intersect(&tri, &at(0.0, 0.0), &at(0.9, 0.9)).unwrap());
        assert!(homothets_intersect(&tri, &at(0.0, 0.0), &at(0.5, 0.5)).unwrap());
        assert!(homothets_intersect(&tri, &at(0.0, 0.0), &at(-1.0, 1.0)).unwrap());
        assert!(!homothets_intersect(&tri, &at(0.0, 0.0), &at(-1.0, 1.01)).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = homothets_intersect(&ConvexBody::unit_square(), &at(0.0, 0.0), &Placement::translate(vec![0.0]));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn tangency_margins() {
        let disk = ConvexBody::Disk;
        assert_abs_diff_eq!(tangency_margin(&disk, &at(0.0, 0.0), &at(2.5, 0.0)).unwrap(), 0.5, epsilon = 1e-12);
        let sq = ConvexBody::unit_square();
        assert_abs_diff_eq!(tangency_margin(&sq, &at(0.0, 0.0), &at(0.5, 0.25)).unwrap(), 0.5, epsilon = 1e-12);
        let tri = ConvexBody::right_triangle();
        let m = tangency_margin(&tri, &at(0.0, 0.0), &at(0.5, 0.5)).unwrap();
        assert_abs_diff_eq!(m, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn body_json_schema() {
        let body: ConvexBody = serde_json::from_str(r#"{"kind":"box","sides":[1,2]}"#).unwrap();
        assert_eq!(body, ConvexBody::boxed(vec![1.0, 2.0]).unwrap());
        let disk: ConvexBody = serde_json::from_str(r#"{"kind":"disk"}"#).unwrap();
        assert_eq!(disk, ConvexBody::Disk);
        let json = serde_json::to_string(&ConvexBody::right_triangle()).unwrap();
        assert_eq!(json, r#"{"kind":"polygon2d","vertices":[[0.0,0.0],[1.0,0.0],[0.0,1.0]]}"#);
        let cw = r#"{"kind":"polygon2d","vertices":[[0,0],[0,1],[1,0]]}"#;
        assert!(serde_json::from_str::<ConvexBody>(cw).is_err());
        assert!(serde_json::from_str::<ConvexBody>(r#"{"kind":"box","sides":[0]}"#).is_err());
    }

    #[test]
    fn scaled_body_json_carries_scale() {
        let s = ScaledBody::new(ConvexBody::Disk, 2.0);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"kind":"disk","scale":2.0}"#);
        let back: ScaledBody = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
