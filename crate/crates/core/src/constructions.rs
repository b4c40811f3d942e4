//! Extremal and random families: the lattice family `F_m`, the pentagon
//! families `F_k` and `F'_k` with their explicit colouring, packing density
//! over a box, and seeded random families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{Family, FamilyMeta};
use crate::geometry::{clip_all, shoelace, tangency_margin, ConvexBody, Placement, Vec2};
use crate::graph::{clique_cover_number, max_clique, Caps, IntersectionGraph, Solved};

/// Largest family `grid_family` will build.
pub const GRID_CAP: usize = 100_000;
pub const PENTAGON_RADIUS: f64 = 0.8;
pub const PENTAGON_JITTER: f64 = 1e-4;
/// Spacing between copies in the disjoint pentagon family.
pub const PENTAGON_SPACING: f64 = 10.0;
pub const TANGENCY_CLEARANCE: f64 = 0.05;
pub const PLACEMENT_TRIES: usize = 1000;

/// Translates of `body` at `(t_1/m, ..., t_n/m)` for `1 <= t_i <= m^2`.
pub fn grid_family(body: &ConvexBody, m: usize) -> Result<Family> {
    if m == 0 {
        return Err(Error::Construction("grid side m must be positive".into()));
    }
    let n = body.dimension();
    let side = m * m;
    let count = side
        .checked_pow(n as u32)
        .filter(|&c| c <= GRID_CAP)
        .ok_or(Error::CapExceeded { requested: side.saturating_pow(n as u32), cap: GRID_CAP })?;
    let placements = (0..count)
        .map(|flat| {
            let mut rest = flat;
            let mut center = vec![0.0; n];
            for axis in (0..n).rev() {
                center[axis] = (rest % side + 1) as f64 / m as f64;
                rest /= side;
            }
            Placement::translate(center)
        })
        .collect();
    Family::with_meta(body.clone(), placements, FamilyMeta::construction("grid").with_param("m", m))
}

fn pentagon_centers() -> [Vec2; 5] {
    std::array::from_fn(|i| {
        let t = (90.0 + 72.0 * i as f64).to_radians();
        Vec2::new(PENTAGON_RADIUS * t.cos(), PENTAGON_RADIUS * t.sin())
    })
}

/// Five groups `A..E` of `k` near-coincident unit squares around a pentagon;
/// member `g * k + j` is copy `j` of group `g`. The intersection graph is
/// the 5-cycle with every vertex blown up to a `k`-clique, checked on build.
pub fn pentagon_family(k: usize) -> Result<Family> {
    if k == 0 {
        return Err(Error::Construction("k must be positive".into()));
    }
    let centers = pentagon_centers();
    let placements = (0..5)
        .flat_map(|g| {
            (0..k).map(move |j| {
                let d = PENTAGON_JITTER * j as f64;
                Placement::translate(vec![centers[g].x + d, centers[g].y + 0.5 * d])
            })
        })
        .collect();
    let family = Family::with_meta(
        ConvexBody::unit_square(),
        placements,
        FamilyMeta::construction("pentagon").with_param("k", k),
    )?;
    let g = IntersectionGraph::build(&family)?;
    for a in 0..5 * k {
        for b in a + 1..5 * k {
            let (ga, gb) = (a / k, b / k);
            let want = ga == gb || (gb - ga) % 5 == 1 || (gb - ga) % 5 == 4;
            if g.has_edge(a, b) != want {
                return Err(Error::Construction(format!("members {a} and {b} break the blown-up 5-cycle")));
            }
        }
    }
    Ok(family)
}

/// `k` far-apart copies of the five-square pentagon; member `5 * copy + g`.
pub fn pentagon_disjoint_family(k: usize) -> Result<Family> {
    if k == 0 {
        return Err(Error::Construction("k must be positive".into()));
    }
    let centers = pentagon_centers();
    let placements = (0..k)
        .flat_map(|copy| {
            centers
                .iter()
                .map(move |c| Placement::translate(vec![c.x + PENTAGON_SPACING * copy as f64, c.y]))
        })
        .collect();
    let family = Family::with_meta(
        ConvexBody::unit_square(),
        placements,
        FamilyMeta::construction("pentagon_disjoint").with_param("k", k),
    )?;
    let g = IntersectionGraph::build(&family)?;
    for a in 0..5 * k {
        for b in a + 1..5 * k {
            let want = a / 5 == b / 5 && matches!((b - a) % 5, 1 | 4);
            if g.has_edge(a, b) != want {
                return Err(Error::Construction(format!("members {a} and {b} break the disjoint 5-cycles")));
            }
        }
    }
    Ok(family)
}

/// The `⌈5k/2⌉`-colouring of [`pentagon_family`]`(k)`.
///
/// Colours split into `Q1 = 0..k`, `Q2 = k..2k` and `Q3`, each `Qi` halved
/// into `Qi1` (the first `⌈k/2⌉`) and `Qi2`; only `Q31` is used. Groups get
/// `A: Q1`, `B: Q2`, `C: Q12 ∪ Q31`, `D`: the first `k` of `Q11 ∪ Q21`,
/// `E: Q22 ∪ Q31`.
pub fn explicit_pentagon_coloring(k: usize) -> Vec<usize> {
    let h = k.div_ceil(2);
    let q11 = 0..h;
    let q12 = h..k;
    let q21 = k..k + h;
    let q22 = k + h..2 * k;
    let q31 = 2 * k..2 * k + h;
    let groups: [Vec<usize>; 5] = [
        (0..k).collect(),
        (k..2 * k).collect(),
        q12.chain(q31.clone()).collect(),
        q11.chain(q21).take(k).collect(),
        q22.chain(q31).collect(),
    ];
    groups.into_iter().flatten().collect()
}

/// Packing density of a family over an axis-parallel box.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub domain_lo: Vec<f64>,
    pub domain_hi: Vec<f64>,
    pub rho: f64,
    /// Measure of each member clipped to the domain.
    pub clipped: Vec<f64>,
}

/// `Σ μ(C_i ∩ Y) / μ(Y)` for the box `Y = [lo, hi]`.
pub fn density(family: &Family, lo: &[f64], hi: &[f64]) -> Result<DensityReport> {
    let n = family.dimension();
    for v in [lo, hi] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    if lo.iter().zip(hi).any(|(a, b)| b.partial_cmp(a) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Construction("density domain has empty interior".into()));
    }
    let volume: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
    let clipped: Vec<f64> = family.placements.iter().map(|p| clipped_measure(&family.body, p, lo, hi)).collect();
    Ok(DensityReport {
        domain_lo: lo.to_vec(),
        domain_hi: hi.to_vec(),
        rho: clipped.iter().sum::<f64>() / volume,
        clipped,
    })
}

fn clipped_measure(body: &ConvexBody, p: &Placement, lo: &[f64], hi: &[f64]) -> f64 {
    match body {
        ConvexBody::Box(b) => b
            .sides()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let h = 0.5 * s * p.scale;
                ((p.center[i] + h).min(hi[i]) - (p.center[i] - h).max(lo[i])).max(0.0)
            })
            .product(),
        ConvexBody::Polygon(poly) => {
            let placed = poly.scale(p.scale).translate(Vec2::new(p.center[0], p.center[1]));
            let planes = [
                (Vec2::new(1.0, 0.0), hi[0]),
                (Vec2::new(-1.0, 0.0), -lo[0]),
                (Vec2::new(0.0, 1.0), hi[1]),
                (Vec2::new(0.0, -1.0), -lo[1]),
            ];
            let region = clip_all(placed.vertices(), planes);
            if region.len() < 3 {
                0.0
            } else {
                shoelace(&region).abs()
            }
        }
        ConvexBody::Disk => disk_box_area(p.center[0], p.center[1], p.scale, lo, hi),
    }
}

fn disk_box_area(cx: f64, cy: f64, r: f64, lo: &[f64], hi: &[f64]) -> f64 {
    let (a, b) = ((cx - r).max(lo[0]), (cx + r).min(hi[0]));
    if a >= b {
        return 0.0;
    }
    let chord = |x: f64| {
        let h = (r * r - (x - cx) * (x - cx)).max(0.0).sqrt();
        ((cy + h).min(hi[1]) - (cy - h).max(lo[1])).max(0.0)
    };
    adaptive_simpson(&chord, a, b, 1e-10 * r * r, 50)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, depth)
}

/// The discrete volume-ratio bound `ϑ(F_m) >= |T_m| / |S_m|`, where `|S_m|`
/// is the clique number of the grid family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeRatioReport {
    pub members: usize,
    pub s_m: usize,
    pub bound: f64,
    pub theta: Option<usize>,
    pub holds: Option<bool>,
}

pub fn volume_ratio_bounds(family: &Family, caps: Caps) -> Result<VolumeRatioReport> {
    let g = IntersectionGraph::build(family)?;
    let s_m = match max_clique(&g, caps) {
        Solved::Exact { value, .. } => value,
        Solved::Capped { .. } => return Err(Error::CapExceeded { requested: family.len(), cap: caps.omega }),
    };
    let bound = if s_m == 0 { 0.0 } else { family.len() as f64 / s_m as f64 };
    let theta = clique_cover_number(&g, caps).exact();
    Ok(VolumeRatioReport { members: family.len(), s_m, bound, theta, holds: theta.map(|t| t as f64 >= bound) })
}

/// Parameters of a seeded random family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSpec {
    pub body: ConvexBody,
    pub count: usize,
    /// Centres are uniform in `[window.0, window.1]^n`.
    pub window: (f64, f64),
    /// Scales are uniform in `[scales.0, scales.1]`; equal ends give translates.
    pub scales: (f64, f64),
    pub seed: u64,
}

impl RandomSpec {
    pub fn translates(body: ConvexBody, count: usize, window: (f64, f64), seed: u64) -> Self {
        Self { body, count, window, scales: (1.0, 1.0), seed }
    }
}

/// Draws members one at a time, redrawing any placement that comes within
/// [`TANGENCY_CLEARANCE`] of tangency with an earlier member.
pub fn random_family(spec: &RandomSpec) -> Result<Family> {
    if spec.count == 0 {
        return Err(Error::Construction("count must be positive".into()));
    }
    let (wlo, whi) = spec.window;
    let (slo, shi) = spec.scales;
    if !(whi >= wlo && shi >= slo && slo > 0.0) {
        return Err(Error::Construction("empty window or non-positive scale range".into()));
    }
    let n = spec.body.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut draw = |lo: f64, hi: f64| if hi > lo { rng.gen_range(lo..hi) } else { lo };
    let mut placements: Vec<Placement> = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let mut placed = false;
        for _ in 0..PLACEMENT_TRIES {
            let center: Vec<f64> = (0..n).map(|_| draw(wlo, whi)).collect();
            let candidate = Placement::new(center, draw(slo, shi))?;
            let mut clear = true;
            for prior in &placements {
                if tangency_margin(&spec.body, prior, &candidate)? < TANGENCY_CLEARANCE {
                    clear = false;
                    break;
                }
            }
            if clear {
                placements.push(candidate);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::RejectionBudget(i));
        }
    }
    let meta = FamilyMeta::construction("random")
        .with_seed(spec.seed)
        .with_param("count", spec.count)
        .with_param("window", vec![wlo, whi])
        .with_param("scales", vec![slo, shi]);
    Family::with_meta(spec.body.clone(), placements, meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chromatic_number, max_independent_set, verify_coloring};
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_sizes_and_invariants() {
        let sq = ConvexBody::unit_square();
        let one = grid_family(&sq, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.placements[0].center, vec![1.0, 1.0]);
        let f = grid_family(&sq, 2).unwrap();
        assert_eq!(f.len(), 16);
        let g = IntersectionGraph::build(&f).unwrap();
        let caps = Caps::default();
        assert_eq!(max_clique(&g, caps).exact(), Some(9));
        assert_eq!(max_independent_set(&g, caps).exact(), Some(4));
        assert_eq!(clique_cover_number(&g, caps).exact(), Some(4));
        assert_eq!(chromatic_number(&g, caps).exact(), Some(9));
        // Corner (1/2, 1/2) meets every member within L∞ distance 1.
        assert_eq!(g.degree(0), 8);
        assert_eq!(grid_family(&ConvexBody::unit_cube(3), 2).unwrap().len(), 64);
        assert!(matches!(grid_family(&sq, 20), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn pentagon_invariants() {
        let caps = Caps::default();
        for k in 1..=3 {
            let g = IntersectionGraph::build(&pentagon_family(k).unwrap()).unwrap();
            assert_eq!(max_clique(&g, caps).exact(), Some(2 * k));
            assert_eq!(chromatic_number(&g, caps).exact(), Some((5 * k).div_ceil(2)));
            let h = IntersectionGraph::build(&pentagon_disjoint_family(k).unwrap()).unwrap();
            assert_eq!(max_independent_set(&h, caps).exact(), Some(2 * k));
            assert_eq!(clique_cover_number(&h, caps).exact(), Some(3 * k));
        }
    }

    #[test]
    fn explicit_coloring_is_proper_and_tight() {
        for k in 1..=50 {
            let g = IntersectionGraph::build(&pentagon_family(k).unwrap()).unwrap();
            let colors = explicit_pentagon_coloring(k);
            assert!(verify_coloring(&g, &colors).unwrap(), "k = {k}");
            assert_eq!(crate::graph::classes_used(&colors), (5 * k).div_ceil(2));
        }
    }

    #[test]
    fn density_examples() {
        let sq = ConvexBody::unit_square();
        let f = Family::translates(sq.clone(), [vec![1.0, 1.0]]).unwrap();
        assert_abs_diff_eq!(density(&f, &[0.0, 0.0], &[2.0, 2.0]).unwrap().rho, 0.25, epsilon = 1e-12);
        let empty = Family::new(sq, vec![]).unwrap();
        assert_eq!(density(&empty, &[0.0, 0.0], &[1.0, 1.0]).unwrap().rho, 0.0);
        assert!(density(&empty, &[0.0, 0.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn disk_quadrature() {
        let d = Family::translates(ConvexBody::Disk, [vec![0.0, 0.0]]).unwrap();
        let full = density(&d, &[-2.0, -2.0], &[2.0, 2.0]).unwrap();
        assert_abs_diff_eq!(full.clipped[0], std::f64::consts::PI, epsilon = 1e-6 * std::f64::consts::PI);
        let quarter = density(&d, &[0.0, 0.0], &[2.0, 2.0]).unwrap();
        assert_abs_diff_eq!(quarter.clipped[0], std::f64::consts::FRAC_PI_4, epsilon = 1e-6);
    }

    #[test]
    fn triangle_density_is_clipped() {
        let f = Family::translates(ConvexBody::right_triangle(), [vec![0.0, 0.0]]).unwrap();
        let r = density(&f, &[0.0, 0.0], &[0.5, 1.0]).unwrap();
        assert_abs_diff_eq!(r.clipped[0], 0.375, epsilon = 1e-12);
    }

    #[test]
    fn volume_ratio_examples() {
        let caps = Caps::default();
        let r = volume_ratio_bounds(&grid_family(&ConvexBody::unit_square(), 2).unwrap(), caps).unwrap();
        assert_eq!(r.s_m, 9);
        assert_abs_diff_eq!(r.bound, 16.0 / 9.0);
        assert_eq!(r.theta, Some(4));
        assert_eq!(r.holds, Some(true));
        let one = volume_ratio_bounds(&grid_family(&ConvexBody::unit_square(), 1).unwrap(), caps).unwrap();
        assert_eq!((one.bound, one.theta), (1.0, Some(1)));
    }

    #[test]
    fn random_families_keep_clear_of_tangency() {
        let spec = RandomSpec::translates(ConvexBody::unit_square(), 20, (0.0, 5.0), 42);
        let f = random_family(&spec).unwrap();
        assert_eq!(f, random_family(&spec).unwrap());
        let mut worst = f64::INFINITY;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                worst = worst.min(tangency_margin(&f.body, &f.placements[i], &f.placements[j]).unwrap());
            }
        }
        assert!(worst >= TANGENCY_CLEARANCE);
        let single = RandomSpec { count: 1, ..spec.clone() };
        assert_eq!(random_family(&single).unwrap().len(), 1);
        assert!(random_family(&RandomSpec { count: 0, ..spec }).is_err());
    }
}
