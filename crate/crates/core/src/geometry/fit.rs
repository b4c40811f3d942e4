//! Inscribed parallelograms `P ⊆ C ⊆ rP + t'` for planar bodies.
//!
//! The search looks at pairs of edge directions for `P`. For a fixed pair, the
//! best parallelogram is a homothet of the bounding parallelogram `Q` of `C` with
//! those edge directions, so the problem reduces to the largest homothet of `Q`
//! that fits in `C` (bisection on the scale, feasibility by half-plane clipping).
//! Candidate pairs come from the polygon's own edges, a 360-step direction sweep
//! and a local pattern search around the best pair.

use std::f64::consts::PI;

use super::polygon::{clip_all, cross, perp, ConvexPolygon, Vec2, EPS};
use super::ConvexBody;
use crate::error::{Error, Result};

/// Largest ratio the search is allowed to return for a planar body.
pub const RATIO_LIMIT: f64 = 2.0 + 1e-6;

const SWEEP_STEPS: usize = 360;
const BISECTION_STEPS: usize = 60;

/// Parallelogram `P = center + {a u + b v : |a|, |b| <= 1/2}` inside `C`, with
/// the containment ratio `r` such that a translate of `rP` contains `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParallelogramFit {
    pub center: Vec2,
    pub u: Vec2,
    pub v: Vec2,
    pub ratio: f64,
}

impl ParallelogramFit {
    pub fn vertices(&self) -> [Vec2; 4] {
        let (hu, hv) = (self.u * 0.5, self.v * 0.5);
        [
            self.center - hu - hv,
            self.center + hu - hv,
            self.center + hu + hv,
            self.center - hu + hv,
        ]
    }

    /// Slab normals of `P`: `n1` is orthogonal to `v`, `n2` to `u`.
    fn normals(&self) -> Result<(Vec2, Vec2)> {
        let (lu, lv) = (self.u.norm(), self.v.norm());
        if lu <= EPS || lv <= EPS || cross(self.u, self.v).abs() <= 1e-9 * lu * lv {
            return Err(Error::DegenerateFit);
        }
        Ok((perp(self.v) / lv, perp(self.u) / lu))
    }
}

fn planar_support(body: &ConvexBody, n: Vec2) -> f64 {
    body.support(&[n.x, n.y])
}

fn width(body: &ConvexBody, n: Vec2) -> f64 {
    planar_support(body, n) + planar_support(body, -n)
}

/// Smallest `r` such that `C` fits in a translate of `rP`.
///
/// A parallelogram is the intersection of two slabs, so `r` is the larger of
/// the two width ratios of `C` and `P` across those slabs.
pub fn containment_ratio(body: &ConvexBody, fit: &ParallelogramFit) -> Result<f64> {
    if body.dimension() != 2 {
        return Err(Error::UnsupportedBody("containment ratio needs a planar body".into()));
    }
    let (n1, n2) = fit.normals()?;
    let r1 = width(body, n1) / fit.u.dot(&n1).abs();
    let r2 = width(body, n2) / fit.v.dot(&n2).abs();
    Ok(r1.max(r2))
}

/// Largest `lambda` with some `lambda * Q0 + c ⊆ C`, `Q0` the centred
/// parallelogram with edge vectors `qu`, `qv`.
fn largest_homothet(body: &ConvexBody, qu: Vec2, qv: Vec2) -> Option<(f64, Vec2)> {
    let corners = [
        (qu + qv) * 0.5,
        (qu - qv) * 0.5,
        (-qu + qv) * 0.5,
        (-qu - qv) * 0.5,
    ];
    match body {
        ConvexBody::Disk => {
            // Q0 is centrally symmetric, so the optimal centre is the disk centre.
            let reach = corners.iter().map(|c| c.norm()).fold(0.0, f64::max);
            Some((1.0 / reach, Vec2::zeros()))
        }
        ConvexBody::Polygon(poly) => {
            let planes = poly.halfplanes();
            let q_support: Vec<f64> = planes
                .iter()
                .map(|(n, _)| corners.iter().map(|c| c.dot(n)).fold(f64::NEG_INFINITY, f64::max))
                .collect();
            let feasible = |lambda: f64| {
                clip_all(
                    poly.vertices(),
                    planes.iter().zip(&q_support).map(|((n, h), s)| (*n, h - lambda * s)),
                )
            };
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if feasible(mid).is_empty() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let region = feasible(lo);
            if region.is_empty() || lo <= 0.0 {
                return None;
            }
            let c = region.iter().fold(Vec2::zeros(), |acc, p| acc + p) / region.len() as f64;
            Some((lo, c))
        }
        ConvexBody::Box(_) => None,
    }
}

/// Best parallelogram whose edges point along angles `a1` and `a2`.
fn fit_for_directions(body: &ConvexBody, a1: f64, a2: f64) -> Option<ParallelogramFit> {
    let d1 = Vec2::new(a1.cos(), a1.sin());
    let d2 = Vec2::new(a2.cos(), a2.sin());
    if cross(d1, d2).abs() < 1e-3 {
        return None;
    }
    let n1 = perp(d2);
    let n2 = perp(d1);
    let qu = d1 * (width(body, n1) / d1.dot(&n1).abs());
    let qv = d2 * (width(body, n2) / d2.dot(&n2).abs());
    let (lambda, center) = largest_homothet(body, qu, qv)?;
    Some(ParallelogramFit {
        center,
        u: qu * lambda,
        v: qv * lambda,
        ratio: 1.0 / lambda,
    })
}

fn edge_angles(poly: &ConvexPolygon) -> Vec<f64> {
    poly.edges()
        .map(|(p, q)| {
            let e = q - p;
            e.y.atan2(e.x).rem_euclid(PI)
        })
        .collect()
}

/// Finds `P ⊆ C` with `C` inside a translate of `rP`, `r <= 2` for planar bodies.
///
/// Boxes return themselves with `r = 1`. A search that cannot reach
/// [`RATIO_LIMIT`] is an error rather than a silently weaker fit.
pub fn inscribed_parallelogram(body: &ConvexBody) -> Result<ParallelogramFit> {
    if let ConvexBody::Box(b) = body {
        if b.dimension() != 2 {
            return Err(Error::UnsupportedBody(format!(
                "parallelogram fit of a {}-dimensional box",
                b.dimension()
            )));
        }
        return Ok(ParallelogramFit {
            center: Vec2::zeros(),
            u: Vec2::new(b.sides()[0], 0.0),
            v: Vec2::new(0.0, b.sides()[1]),
            ratio: 1.0,
        });
    }

    let sweep: Vec<f64> = (0..SWEEP_STEPS).map(|i| PI * i as f64 / SWEEP_STEPS as f64).collect();
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    if let ConvexBody::Polygon(poly) = body {
        let edges = edge_angles(poly);
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i + 1..] {
                pairs.push((a, b));
            }
            for &b in &sweep {
                pairs.push((a, b));
            }
        }
    }
    let coarse: Vec<f64> = sweep.iter().step_by(10).copied().collect();
    for (i, &a) in coarse.iter().enumerate() {
        for &b in &coarse[i + 1..] {
            pairs.push((a, b));
        }
    }

    let mut best: Option<(ParallelogramFit, (f64, f64))> = None;
    let consider = |pair: (f64, f64), best: &mut Option<(ParallelogramFit, (f64, f64))>| {
        if let Some(fit) = fit_for_directions(body, pair.0, pair.1) {
            if best.as_ref().is_none_or(|(b, _)| fit.ratio < b.ratio - 1e-12) {
                *best = Some((fit, pair));
            }
        }
    };
    for &pair in &pairs {
        consider(pair, &mut best);
    }

    // Local pattern search around the best pair.
    let mut step = PI / SWEEP_STEPS as f64;
    while step > 1e-7 {
        let Some((_, (a, b))) = best else { break };
        let before = best.as_ref().map(|(f, _)| f.ratio);
        for (da, db) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step), (step, step), (-step, -step)] {
            consider((a + da, b + db), &mut best);
        }
        if best.as_ref().map(|(f, _)| f.ratio) == before {
            step *= 0.5;
        }
    }

    let (mut fit, _) = best.ok_or(Error::DegenerateFit)?;
    fit.ratio = containment_ratio(body, &fit)?;
    for corner in fit.vertices() {
        if !body.contains(&[corner.x, corner.y], EPS) {
            return Err(Error::Invariant("fitted parallelogram leaves the body".into()));
        }
    }
    if fit.ratio > RATIO_LIMIT {
        return Err(Error::ParallelogramSearch { ratio: fit.ratio, limit: RATIO_LIMIT });
    }
    Ok(fit)
}

/// Centre and radius of a (numerically) largest inscribed disk.
pub fn inradius(body: &ConvexBody) -> (Vec<f64>, f64) {
    match body {
        ConvexBody::Disk => (vec![0.0, 0.0], 1.0),
        ConvexBody::Box(b) => (
            vec![0.0; b.dimension()],
            0.5 * b.sides().iter().copied().fold(f64::INFINITY, f64::min),
        ),
        ConvexBody::Polygon(poly) => {
            let planes = poly.halfplanes();
            let region = |rho: f64| clip_all(poly.vertices(), planes.iter().map(|(n, h)| (*n, h - rho)));
            let (lo_pt, hi_pt) = poly.bounding_box();
            let (mut lo, mut hi) = (0.0, 0.5 * (hi_pt - lo_pt).norm());
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if region(mid).is_empty() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let r = region(lo);
            let c = if r.is_empty() {
                poly.centroid()
            } else {
                r.iter().fold(Vec2::zeros(), |acc, p| acc + p) / r.len() as f64
            };
            (vec![c.x, c.y], lo)
        }
    }
}
