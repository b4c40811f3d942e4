//! Homothet families: smallest-first colouring and clique partitioning.
//!
//! Every homothet meeting the smallest member `C1 = λ1 C + p1` (and at least
//! as large) contains one of the points `p1 - λ1 v_i`, where the `v_i` cover
//! `C - C` by translates of `C`. Peeling smallest members therefore bounds
//! both the back-degree in a first-fit colouring and the number of cliques
//! each round of the partition needs.

use serde::Serialize;

use crate::covering::{difference_certificate, CoveringCertificate};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::geometry::{common_point, EPS};
use crate::graph::{classes_used, max_clique, max_independent_set, Caps, IntersectionGraph, Solved};
use crate::report::{ColoringReport, PartitionReport};

/// Members by scale ascending, ties by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeOrder {
    pub order: Vec<usize>,
}

impl SizeOrder {
    pub fn new(family: &Family) -> Self {
        let mut order: Vec<usize> = (0..family.len()).collect();
        order.sort_by(|&a, &b| {
            family.placements[a]
                .scale
                .total_cmp(&family.placements[b].scale)
                .then(a.cmp(&b))
        });
        Self { order }
    }

    /// Position of each member in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &m) in self.order.iter().enumerate() {
            pos[m] = i;
        }
        pos
    }
}

/// Points stabbing a subfamily, and the point each member was assigned.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiercingAssignment {
    pub members: Vec<usize>,
    pub points: Vec<Vec<f64>>,
    /// Index into `points`, parallel to `members`.
    pub assigned: Vec<usize>,
    pub fallback_used: bool,
}

impl PiercingAssignment {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }
}

/// Largest number of neighbours each member has later in the size order.
pub fn max_back_degree(g: &IntersectionGraph, order: &SizeOrder) -> usize {
    let pos = order.positions();
    (0..g.member_count())
        .map(|v| g.neighbors(v).iter().filter(|&w| pos[w] > pos[v]).count())
        .max()
        .unwrap_or(0)
}

fn check_family(family: &Family, cert: &CoveringCertificate) -> Result<()> {
    family.validate()?;
    cert.check_difference_cover(&family.body)
}

fn omega_for(g: &IntersectionGraph, caps: Caps) -> (usize, bool) {
    match max_clique(g, caps) {
        Solved::Exact { value, .. } => (value, true),
        Solved::Capped { lower, .. } => (lower, false),
    }
}

/// `κ (w - 1) + 1`, or 0 for an empty family.
pub fn degeneracy_bound(kappa: usize, w: usize) -> usize {
    if w == 0 {
        0
    } else {
        kappa * (w - 1) + 1
    }
}

/// First-fit colouring from the largest member down to the smallest.
pub fn color_homothets(family: &Family, cert: &CoveringCertificate, caps: Caps) -> Result<ColoringReport> {
    check_family(family, cert)?;
    let g = IntersectionGraph::build(family)?;
    Ok(color_on_graph(&g, &SizeOrder::new(family), cert.kappa_ub, caps, "homothets"))
}

fn color_on_graph(g: &IntersectionGraph, order: &SizeOrder, kappa: usize, caps: Caps, method: &str) -> ColoringReport {
    let n = g.member_count();
    let mut colors = vec![usize::MAX; n];
    for &v in order.order.iter().rev() {
        let taken: Vec<usize> = g.neighbors(v).iter().map(|w| colors[w]).filter(|&c| c != usize::MAX).collect();
        colors[v] = (0..).find(|c| !taken.contains(c)).expect("a free colour exists");
    }
    let (omega, exact) = omega_for(g, caps);
    ColoringReport {
        method: method.into(),
        colors_used: classes_used(&colors),
        colors,
        bound_value: degeneracy_bound(kappa, omega),
        omega_used: omega,
        omega_exact: exact,
        factor: kappa,
        blocks: None,
        palette_size: None,
        max_back_degree: Some(max_back_degree(g, order)),
        graph_matches: None,
    }
}

fn contains(family: &Family, member: usize, point: &[f64]) -> bool {
    family.placements[member].contains(&family.body, point, EPS)
}

/// Assigns each member of `members` (smallest first) to a point it contains.
///
/// Candidates are `p1 - λ1 v_i` for the certificate translations `v_i`,
/// chosen greedily by how many unassigned members they stab. If some member
/// contains no candidate, the subfamily is instead stabbed greedily from its
/// smallest unassigned member using pairwise common points.
pub fn pierce_intersecting_smallest(
    family: &Family,
    members: &[usize],
    cert: &CoveringCertificate,
) -> Result<PiercingAssignment> {
    let &first = members.first().ok_or_else(|| Error::Invariant("cannot pierce an empty subfamily".into()))?;
    let c1 = &family.placements[first];
    let candidates: Vec<Vec<f64>> = cert
        .translations
        .iter()
        .map(|v| c1.center.iter().zip(v).map(|(p, x)| p - c1.scale * x).collect())
        .collect();
    let stabs: Vec<Vec<bool>> = members
        .iter()
        .map(|&m| candidates.iter().map(|q| contains(family, m, q)).collect())
        .collect();
    if stabs.iter().all(|row| row.iter().any(|&b| b)) {
        let (points, assigned) = greedy_cover(&candidates, &stabs);
        return Ok(PiercingAssignment { members: members.to_vec(), points, assigned, fallback_used: false });
    }
    fallback_stabbing(family, members, &candidates)
}

/// Repeatedly takes the candidate stabbing the most unassigned members.
fn greedy_cover(candidates: &[Vec<f64>], stabs: &[Vec<bool>]) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut assigned = vec![usize::MAX; stabs.len()];
    let mut points = Vec::new();
    while assigned.contains(&usize::MAX) {
        let best = (0..candidates.len())
            .max_by(|&a, &b| {
                let count = |q: usize| (0..stabs.len()).filter(|&i| assigned[i] == usize::MAX && stabs[i][q]).count();
                count(a).cmp(&count(b)).then(b.cmp(&a))
            })
            .expect("candidates exist");
        for i in 0..stabs.len() {
            if assigned[i] == usize::MAX && stabs[i][best] {
                assigned[i] = points.len();
            }
        }
        points.push(candidates[best].clone());
    }
    (points, assigned)
}

fn fallback_stabbing(family: &Family, members: &[usize], candidates: &[Vec<f64>]) -> Result<PiercingAssignment> {
    let mut assigned = vec![usize::MAX; members.len()];
    let mut points = Vec::new();
    // `members` is in size order, so the first unassigned entry is the smallest.
    while let Some(x) = assigned.iter().position(|&a| a == usize::MAX) {
        let px = &family.placements[members[x]];
        let mut options: Vec<Vec<f64>> = candidates.iter().filter(|q| contains(family, members[x], q)).cloned().collect();
        for (y, &a) in assigned.iter().enumerate() {
            if a == usize::MAX {
                if let Some(q) = common_point(&family.body, px, &family.placements[members[y]])? {
                    options.push(q);
                }
            }
        }
        let count = |q: &Vec<f64>| {
            (0..members.len()).filter(|&i| assigned[i] == usize::MAX && contains(family, members[i], q)).count()
        };
        let best = options
            .iter()
            .enumerate()
            .filter(|(_, q)| contains(family, members[x], q))
            .max_by(|(i, a), (j, b)| count(a).cmp(&count(b)).then(j.cmp(i)))
            .map(|(_, q)| q.clone())
            .ok_or_else(|| Error::Invariant(format!("member {} contains none of its own points", members[x])))?;
        for i in 0..members.len() {
            if assigned[i] == usize::MAX && contains(family, members[i], &best) {
                assigned[i] = points.len();
            }
        }
        points.push(best);
    }
    Ok(PiercingAssignment { members: members.to_vec(), points, assigned, fallback_used: true })
}

/// One peeling round of the clique partition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Round {
    pub representative: usize,
    pub members: Vec<usize>,
    pub piercing: PiercingAssignment,
    /// The whole subfamily was pairwise intersecting and became one class.
    pub single_clique: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomothetPartition {
    pub rounds: Vec<Round>,
    pub report: PartitionReport,
}

/// Greedy rounds: the smallest remaining member, everything meeting it,
/// pierced and removed.
pub fn clique_partition_homothets(family: &Family, cert: &CoveringCertificate, caps: Caps) -> Result<HomothetPartition> {
    check_family(family, cert)?;
    let g = IntersectionGraph::build(family)?;
    let order = SizeOrder::new(family);
    let mut alive = vec![true; family.len()];
    let mut classes = vec![usize::MAX; family.len()];
    let mut class_points: Vec<Option<Vec<f64>>> = Vec::new();
    let mut rounds: Vec<Round> = Vec::new();
    for &rep in &order.order {
        if !alive[rep] {
            continue;
        }
        let members: Vec<usize> =
            order.order.iter().copied().filter(|&m| alive[m] && (m == rep || g.has_edge(rep, m))).collect();
        let piercing = pierce_intersecting_smallest(family, &members, cert)?;
        let single_clique = g.is_clique(&members);
        if single_clique {
            for &m in &members {
                classes[m] = class_points.len();
            }
            class_points.push((piercing.points.len() == 1).then(|| piercing.points[0].clone()));
        } else {
            let base = class_points.len();
            for (i, &m) in members.iter().enumerate() {
                classes[m] = base + piercing.assigned[i];
            }
            class_points.extend(piercing.points.iter().cloned().map(Some));
        }
        for &m in &members {
            alive[m] = false;
        }
        rounds.push(Round { representative: rep, members, piercing, single_clique });
    }

    let reps: Vec<usize> = rounds.iter().map(|r| r.representative).collect();
    if !g.is_independent(&reps) {
        return Err(Error::Invariant("round representatives intersect".into()));
    }
    // A last round that is not a clique holds two disjoint members, both
    // disjoint from every earlier representative.
    let certified = reps.len() + usize::from(rounds.last().is_some_and(|r| !r.single_clique));
    let (nu, nu_exact) = match max_independent_set(&g, caps) {
        Solved::Exact { value, .. } => (value, true),
        Solved::Capped { lower, .. } => (lower.max(certified), false),
    };
    let kappa = cert.kappa_ub;
    let report = PartitionReport {
        method: "homothets".into(),
        classes_used: class_points.len(),
        classes,
        bound_value: degeneracy_bound(kappa, nu),
        nu_used: nu,
        nu_exact,
        factor: kappa,
        blocks: None,
        rounds: Some(rounds.len()),
        kappa_ub: Some(kappa),
        piercing_count: Some(rounds.iter().map(|r| r.piercing.point_count()).sum()),
        piercing_points: Some(class_points),
        fallback_used: rounds.iter().any(|r| r.piercing.fallback_used),
    };
    Ok(HomothetPartition { rounds, report })
}

/// Colours a translate family through its symmetral `K = (C - C) / 2`, whose
/// translates have the same intersection graph, with a certificate for
/// `κ(2K, K)`.
pub fn color_translates_symmetrized(family: &Family, caps: Caps, samples: usize) -> Result<ColoringReport> {
    let sym = symmetrized_family(family)?;
    let cert = difference_certificate(&sym.body, samples)?;
    color_translates_symmetrized_with(family, &sym, &cert, caps)
}

/// The same centres over the symmetral body.
pub fn symmetrized_family(family: &Family) -> Result<Family> {
    family.common_scale().ok_or(Error::NotTranslates)?;
    family.with_body(family.body.symmetrize())
}

/// [`color_translates_symmetrized`] with a precomputed symmetral family and certificate.
pub fn color_translates_symmetrized_with(
    family: &Family,
    sym: &Family,
    cert: &CoveringCertificate,
    caps: Caps,
) -> Result<ColoringReport> {
    check_family(sym, cert)?;
    let g = IntersectionGraph::build(family)?;
    let gs = IntersectionGraph::build(sym)?;
    let same = (0..g.member_count()).all(|i| g.neighbors(i) == gs.neighbors(i));
    let mut report = color_on_graph(&gs, &SizeOrder::new(sym), cert.kappa_ub, caps, "symmetrized");
    report.graph_matches = Some(same);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::known_kappa;
    use crate::geometry::{ConvexBody, Placement};
    use crate::graph::{clique_cover_number, verify_clique_partition, verify_coloring};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn family(body: ConvexBody, members: &[(f64, f64, f64)]) -> Family {
        Family::new(body, members.iter().map(|&(x, y, s)| Placement::new(vec![x, y], s).unwrap()).collect()).unwrap()
    }

    fn random(body: ConvexBody, count: usize, seed: u64) -> Family {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members: Vec<(f64, f64, f64)> =
            (0..count).map(|_| (rng.gen_range(0.0..8.0), rng.gen_range(0.0..8.0), rng.gen_range(1.0..3.0))).collect();
        family(body, &members)
    }

    #[test]
    fn nested_squares_need_one_color_each() {
        let sq = ConvexBody::unit_square();
        let f = family(sq.clone(), &[(0.0, 0.0, 1.0), (0.0, 0.0, 2.0), (0.1, 0.0, 3.0), (0.0, 0.2, 4.0)]);
        let cert = known_kappa(&sq).unwrap();
        assert_eq!(color_homothets(&f, &cert, Caps::default()).unwrap().colors_used, 4);
        let part = clique_partition_homothets(&f, &cert, Caps::default()).unwrap();
        assert_eq!(part.report.classes_used, 1);
        assert_eq!(part.report.rounds, Some(1));
        let pierce = pierce_intersecting_smallest(&f, &[0, 1, 2, 3], &cert).unwrap();
        assert!(!pierce.fallback_used);
        assert!(pierce.point_count() <= 4);
    }

    #[test]
    fn disjoint_members() {
        let f = family(ConvexBody::Disk, &[(0.0, 0.0, 1.0), (5.0, 0.0, 1.0), (10.0, 0.0, 1.0)]);
        let cert = known_kappa(&ConvexBody::Disk).unwrap();
        assert_eq!(color_homothets(&f, &cert, Caps::default()).unwrap().colors_used, 1);
        let sq = ConvexBody::unit_square();
        let g = family(sq.clone(), &[(0.0, 0.0, 1.0), (5.0, 0.0, 1.0), (10.0, 0.0, 1.0)]);
        let part = clique_partition_homothets(&g, &known_kappa(&sq).unwrap(), Caps::default()).unwrap();
        assert_eq!(part.report.rounds, Some(3));
        assert_eq!(part.report.classes_used, 3);
    }

    #[test]
    fn equal_squares_meet_a_corner() {
        let sq = ConvexBody::unit_square();
        let cert = known_kappa(&sq).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut members = vec![(0.0, 0.0, 1.0)];
        while members.len() < 15 {
            let (x, y) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            members.push((x, y, 1.0));
        }
        let f = family(sq, &members);
        let all: Vec<usize> = (0..f.len()).collect();
        let p = pierce_intersecting_smallest(&f, &all, &cert).unwrap();
        assert!(!p.fallback_used);
        assert!(p.point_count() <= 4);
        for (i, &m) in p.members.iter().enumerate() {
            assert!(f.placements[m].contains(&f.body, &p.points[p.assigned[i]], EPS));
        }
    }

    #[test]
    fn disks_around_a_smallest_disk() {
        let cert = known_kappa(&ConvexBody::Disk).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let mut members = vec![(0.0, 0.0, 1.0)];
        while members.len() < 20 {
            let (x, y, s): (f64, f64, f64) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0), rng.gen_range(1.0..2.0));
            if (x * x + y * y).sqrt() < 1.0 + s - 0.05 {
                members.push((x, y, s));
            }
        }
        let f = family(ConvexBody::Disk, &members);
        let all: Vec<usize> = (0..f.len()).collect();
        let p = pierce_intersecting_smallest(&f, &all, &cert).unwrap();
        assert!(!p.fallback_used);
        assert!(p.point_count() <= 7);
        let g = IntersectionGraph::build(&f).unwrap();
        for q in 0..p.point_count() {
            let class: Vec<usize> = (0..all.len()).filter(|&i| p.assigned[i] == q).collect();
            assert!(g.is_clique(&class));
        }
    }

    #[test]
    fn random_square_homothets_respect_the_bounds() {
        let sq = ConvexBody::unit_square();
        let cert = known_kappa(&sq).unwrap();
        let caps = Caps::default();
        for seed in 0..40 {
            let f = random(sq.clone(), 25, seed);
            let g = IntersectionGraph::build(&f).unwrap();
            let col = color_homothets(&f, &cert, caps).unwrap();
            assert!(verify_coloring(&g, &col.colors).unwrap());
            assert!(col.omega_exact && col.within_bound());
            assert!(col.max_back_degree.unwrap() <= 4 * (col.omega_used - 1));
            let part = clique_partition_homothets(&f, &cert, caps).unwrap();
            assert!(verify_clique_partition(&g, &part.report.classes).unwrap());
            assert!(part.report.within_bound(), "seed {seed}");
            let theta = clique_cover_number(&g, caps).exact().unwrap();
            assert!(theta <= part.report.piercing_count.unwrap());
            for round in &part.rounds {
                let sub = g.induced(&round.members);
                assert!(clique_cover_number(&sub, caps).exact().unwrap() <= round.piercing.point_count());
            }
        }
    }

    #[test]
    fn symmetrized_triangles_keep_the_graph() {
        let tri = ConvexBody::right_triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let centers: Vec<Vec<f64>> = (0..20).map(|_| vec![rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0)]).collect();
        let f = Family::translates(tri, centers).unwrap();
        let report = color_translates_symmetrized(&f, Caps::default(), 20_000).unwrap();
        assert_eq!(report.graph_matches, Some(true));
        let g = IntersectionGraph::build(&f).unwrap();
        assert!(verify_coloring(&g, &report.colors).unwrap());
        assert!(report.within_bound());
        let one = Family::translates(ConvexBody::unit_square(), [vec![0.0, 0.0]]).unwrap();
        assert_eq!(color_translates_symmetrized(&one, Caps::default(), 1000).unwrap().colors_used, 1);
    }

    #[test]
    fn mismatched_certificate_is_rejected() {
        let f = family(ConvexBody::unit_square(), &[(0.0, 0.0, 1.0)]);
        let cert = known_kappa(&ConvexBody::Disk).unwrap();
        assert!(matches!(color_homothets(&f, &cert, Caps::default()), Err(Error::CertificateMismatch(_))));
    }
}
