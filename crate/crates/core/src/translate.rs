//! Colouring and clique-partitioning translate families through lattice lines.
//!
//! The family is mapped affinely so that a parallelogram (or the box itself)
//! inscribed in the body becomes the unit cube, and each member's reference
//! point is the centre of its copy of that cube. A generic offset `b` fixes the
//! lines `x_i = j + b_i` for the first `n - 1` axes and unit cells along `x_n`.
//! Members sharing a line and a cell residue form a class on which "disjoint
//! and lower" is a strict partial order; chains are colour classes and
//! antichains are cliques.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::geometry::{homothets_intersect, inscribed_parallelogram, ConvexBody, ParallelogramFit};
use crate::graph::BitSet;
use crate::report::{BlockLabel, ColoringReport, PartitionReport};

/// Required distance of every reference coordinate from a tangency offset.
pub const CLEARANCE: f64 = 1e-6;
/// Offset draws before giving up.
pub const MAX_DRAWS: usize = 100;
/// Largest dimension accepted for boxes.
pub const MAX_DIMENSION: usize = 6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub n: usize,
    pub r: f64,
    /// Line-residue modulus per cross axis.
    #[serde(rename = "M")]
    pub m: usize,
    /// Cell-residue modulus along the last axis.
    pub c: usize,
    pub t_bound: usize,
}

impl BoundParams {
    pub fn from_ratio(n: usize, r: f64) -> Self {
        // The offset clearance adds 2 * CLEARANCE of separation, which absorbs
        // a ratio that overshoots an integer by search noise.
        let rc = ((r - CLEARANCE).ceil() as usize).max(1);
        let m = rc + 1;
        let c = (rc + 1).div_ceil(2);
        Self { n, r, m, c, t_bound: m.pow(n as u32 - 1) * c }
    }
}

/// `x ↦ linear · x + shift`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineMap {
    pub linear: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
}

impl AffineMap {
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.linear
            .iter()
            .zip(&self.shift)
            .map(|(row, s)| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + s)
            .collect()
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let n = self.shift.len();
        let m = DMatrix::from_fn(n, n, |i, j| self.linear[i][j]);
        let inv = m.try_inverse().ok_or(Error::DegenerateFit)?;
        let shift = -(&inv * nalgebra::DVector::from_column_slice(&self.shift));
        Ok(AffineMap {
            linear: (0..n).map(|i| (0..n).map(|j| inv[(i, j)]).collect()).collect(),
            shift: shift.iter().copied().collect(),
        })
    }
}

/// A translate family in normalized coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normalization {
    pub map: AffineMap,
    pub params: BoundParams,
    /// Reference point of each member: the centre of its unit cube.
    pub refs: Vec<Vec<f64>>,
}

/// Fit used by [`normalize`]: the box itself, or an inscribed parallelogram.
pub fn body_fit(body: &ConvexBody) -> Result<Option<ParallelogramFit>> {
    match body {
        ConvexBody::Box(b) if b.dimension() > MAX_DIMENSION => {
            Err(Error::UnsupportedBody(format!("boxes up to dimension {MAX_DIMENSION}")))
        }
        ConvexBody::Box(_) => Ok(None),
        _ => inscribed_parallelogram(body).map(Some),
    }
}

pub fn normalize(family: &Family) -> Result<Normalization> {
    let fit = body_fit(&family.body)?;
    normalize_with(family, fit.as_ref())
}

/// [`normalize`] with a precomputed fit, so repeated runs on one body skip the search.
pub fn normalize_with(family: &Family, fit: Option<&ParallelogramFit>) -> Result<Normalization> {
    let scale = family.common_scale().ok_or(Error::NotTranslates)?;
    let n = family.dimension();
    let (map, params) = match (&family.body, fit) {
        (ConvexBody::Box(b), _) => {
            let linear = (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1.0 / (scale * b.sides()[i]) } else { 0.0 }).collect())
                .collect();
            (AffineMap { linear, shift: vec![0.0; n] }, BoundParams::from_ratio(n, 1.0))
        }
        (_, Some(fit)) => {
            let basis = DMatrix::from_row_slice(2, 2, &[fit.u.x, fit.v.x, fit.u.y, fit.v.y]);
            let inv = basis.try_inverse().ok_or(Error::DegenerateFit)?;
            let center = &inv * nalgebra::DVector::from_column_slice(&[fit.center.x, fit.center.y]);
            let linear = (0..2).map(|i| (0..2).map(|j| inv[(i, j)] / scale).collect()).collect();
            (
                AffineMap { linear, shift: vec![center[0], center[1]] },
                BoundParams::from_ratio(2, fit.ratio),
            )
        }
        (_, None) => return Err(Error::DegenerateFit),
    };
    let refs = family.placements.iter().map(|p| map.apply(&p.center)).collect();
    Ok(Normalization { map, params, refs })
}

/// Line offsets `b_1..b_{n-1}` and the cell offset `b_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Offsets {
    pub b: Vec<f64>,
    /// Smallest distance of any reference coordinate from a tangency offset.
    pub clearance: f64,
}

/// Circular distance from `b` to the nearest residue.
fn nearest(sorted: &[f64], b: f64) -> f64 {
    if sorted.is_empty() {
        return 0.5;
    }
    let i = sorted.partition_point(|&x| x < b);
    let after = if i < sorted.len() { sorted[i] - b } else { sorted[0] + 1.0 - b };
    let before = if i > 0 { b - sorted[i - 1] } else { b + 1.0 - sorted[sorted.len() - 1] };
    after.min(before)
}

/// Draws offsets until no reference coordinate sits within [`CLEARANCE`] of a
/// line tangency (or cell boundary). Deterministic given `seed`.
pub fn choose_offsets(refs: &[Vec<f64>], n: usize, seed: u64) -> Result<Offsets> {
    // Tangency of the unit cube at `x` to the line at `b` means `x - b ∈ 1/2 + Z`.
    let residues: Vec<Vec<f64>> = (0..n)
        .map(|axis| {
            let mut r: Vec<f64> = refs.iter().map(|p| (p[axis] - 0.5).rem_euclid(1.0)).collect();
            r.sort_by(f64::total_cmp);
            r
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let b: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let clearance = (0..n).map(|i| nearest(&residues[i], b[i])).fold(f64::INFINITY, f64::min);
        if clearance >= CLEARANCE {
            return Ok(Offsets { b, clearance });
        }
    }
    Err(Error::ClearanceUnachievable { clearance: CLEARANCE, draws: MAX_DRAWS })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    /// Index of the line met by each member, per cross axis.
    pub line_keys: Vec<Vec<i64>>,
    /// Cell index along the last axis.
    pub cells: Vec<i64>,
    pub line_residues: Vec<Vec<usize>>,
    pub cell_residues: Vec<usize>,
    pub offsets: Offsets,
}

impl Decomposition {
    pub fn block(&self, member: usize) -> BlockLabel {
        BlockLabel { k: self.line_residues[member].clone(), c: self.cell_residues[member] }
    }

    /// Members grouped by (line key, cell residue), keys ascending.
    pub fn classes(&self) -> BTreeMap<(Vec<i64>, usize), Vec<usize>> {
        let mut out: BTreeMap<(Vec<i64>, usize), Vec<usize>> = BTreeMap::new();
        for i in 0..self.cells.len() {
            out.entry((self.line_keys[i].clone(), self.cell_residues[i])).or_default().push(i);
        }
        out
    }
}

pub fn decompose(refs: &[Vec<f64>], offsets: &Offsets, params: &BoundParams) -> Decomposition {
    let n = params.n;
    let index = |x: f64, b: f64| (x - b + 0.5).floor() as i64;
    let line_keys: Vec<Vec<i64>> = refs.iter().map(|p| (0..n - 1).map(|i| index(p[i], offsets.b[i])).collect()).collect();
    let cells: Vec<i64> = refs.iter().map(|p| index(p[n - 1], offsets.b[n - 1])).collect();
    Decomposition {
        line_residues: line_keys
            .iter()
            .map(|key| key.iter().map(|j| j.rem_euclid(params.m as i64) as usize).collect())
            .collect(),
        cell_residues: cells.iter().map(|j| j.rem_euclid(params.c as i64) as usize).collect(),
        line_keys,
        cells,
        offsets: offsets.clone(),
    }
}

/// One class with its precedence relation, stored transitively closed.
#[derive(Clone, Debug, PartialEq)]
pub struct PosetClass {
    /// Global member ids, ascending.
    pub members: Vec<usize>,
    /// `succ[a]` holds local `b` with `a ≺ b`.
    pub succ: Vec<BitSet>,
}

impl PosetClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn relation_count(&self) -> usize {
        self.succ.iter().map(BitSet::count).sum()
    }
}

/// `a ≺ b` iff the members are disjoint and `a`'s reference point is lower
/// along the last axis. Fails if the relation is not transitive.
pub fn build_poset(members: &[usize], family: &Family, refs: &[Vec<f64>]) -> Result<PosetClass> {
    let k = members.len();
    let last = family.dimension() - 1;
    let mut succ = vec![BitSet::new(k); k];
    for a in 0..k {
        for b in a + 1..k {
            let (ga, gb) = (members[a], members[b]);
            if homothets_intersect(&family.body, &family.placements[ga], &family.placements[gb])? {
                continue;
            }
            let (ya, yb) = (refs[ga][last], refs[gb][last]);
            if ya < yb {
                succ[a].insert(b);
            } else if yb < ya {
                succ[b].insert(a);
            }
        }
    }
    for mid in 0..k {
        for a in 0..k {
            if succ[a].contains(mid) {
                if let Some(c) = succ[mid].difference(&succ[a]).iter().next() {
                    return Err(Error::TransitivityViolation(members[a], members[mid], members[c]));
                }
            }
        }
    }
    Ok(PosetClass { members: members.to_vec(), succ })
}

fn augment(p: &PosetClass, u: usize, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for v in p.succ[u].iter() {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(p, w, seen, match_right)) {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Minimum chain cover via maximum bipartite matching. Chains are listed in
/// order of their lowest element; members within a chain ascend in `≺`.
pub fn chain_partition(p: &PosetClass) -> Vec<Vec<usize>> {
    let k = p.len();
    let mut match_right: Vec<Option<usize>> = vec![None; k];
    for u in 0..k {
        let mut seen = vec![false; k];
        augment(p, u, &mut seen, &mut match_right);
    }
    let mut next: Vec<Option<usize>> = vec![None; k];
    for (v, u) in match_right.iter().enumerate() {
        if let Some(u) = u {
            next[*u] = Some(v);
        }
    }
    let mut chains = Vec::new();
    for start in (0..k).filter(|&v| match_right[v].is_none()) {
        let mut chain = vec![p.members[start]];
        let mut cur = start;
        while let Some(v) = next[cur] {
            chain.push(p.members[v]);
            cur = v;
        }
        chains.push(chain);
    }
    chains
}

/// Antichains by height: layer `h` holds members whose longest chain from
/// below has `h + 1` elements.
pub fn antichain_partition(p: &PosetClass) -> Vec<Vec<usize>> {
    let k = p.len();
    let mut pred_count: Vec<usize> = vec![0; k];
    for a in 0..k {
        for b in p.succ[a].iter() {
            pred_count[b] += 1;
        }
    }
    // In a transitively closed order, a member with more predecessors cannot
    // precede one with fewer, so this order is topological.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (pred_count[v], v));
    let mut height = vec![0usize; k];
    for &a in &order {
        for b in p.succ[a].iter() {
            height[b] = height[b].max(height[a] + 1);
        }
    }
    let layers = height.iter().map(|h| h + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); layers];
    for v in 0..k {
        out[height[v]].push(p.members[v]);
    }
    out
}

/// A class with its chain and antichain partitions.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub line_key: Vec<i64>,
    pub block: BlockLabel,
    pub poset: PosetClass,
    pub chains: Vec<Vec<usize>>,
    pub antichains: Vec<Vec<usize>>,
}

/// Everything the translate algorithms compute on the way to a colouring.
#[derive(Clone, Debug)]
pub struct TranslateAnalysis {
    pub normalization: Normalization,
    pub decomposition: Decomposition,
    /// Classes ordered by block, then line key.
    pub classes: Vec<ClassPartition>,
}

pub fn analyze(family: &Family, seed: u64) -> Result<TranslateAnalysis> {
    let fit = body_fit(&family.body)?;
    analyze_with(family, fit.as_ref(), seed)
}

pub fn analyze_with(family: &Family, fit: Option<&ParallelogramFit>, seed: u64) -> Result<TranslateAnalysis> {
    let normalization = normalize_with(family, fit)?;
    let params = &normalization.params;
    let offsets = choose_offsets(&normalization.refs, params.n, seed)?;
    let decomposition = decompose(&normalization.refs, &offsets, params);
    let mut classes = Vec::new();
    for ((line_key, _), members) in decomposition.classes() {
        let block = decomposition.block(members[0]);
        let poset = build_poset(&members, family, &normalization.refs)?;
        let chains = chain_partition(&poset);
        let antichains = antichain_partition(&poset);
        classes.push(ClassPartition { line_key, block, poset, chains, antichains });
    }
    classes.sort_by(|a, b| a.block.cmp(&b.block).then_with(|| a.line_key.cmp(&b.line_key)));
    Ok(TranslateAnalysis { normalization, decomposition, classes })
}

impl TranslateAnalysis {
    /// Palette: blocks in order, each as wide as its widest class; chain
    /// indices are shared by the lines of a block.
    pub fn coloring(&self) -> ColoringReport {
        let n = self.decomposition.cells.len();
        let mut colors = vec![0; n];
        let mut offset = 0;
        let mut omega_lb = 0;
        let mut i = 0;
        while i < self.classes.len() {
            let block = &self.classes[i].block;
            let end = i + self.classes[i..].iter().take_while(|c| &c.block == block).count();
            let width = self.classes[i..end].iter().map(|c| c.chains.len()).max().unwrap_or(0);
            for class in &self.classes[i..end] {
                for (ci, chain) in class.chains.iter().enumerate() {
                    for &m in chain {
                        colors[m] = offset + ci;
                    }
                }
            }
            offset += width;
            omega_lb = omega_lb.max(width);
            i = end;
        }
        let t = self.normalization.params.t_bound;
        ColoringReport {
            method: "translates".into(),
            colors_used: crate::graph::classes_used(&colors),
            colors,
            bound_value: t * omega_lb,
            omega_used: omega_lb,
            omega_exact: false,
            factor: t,
            blocks: Some((0..n).map(|m| self.decomposition.block(m)).collect()),
            palette_size: Some(offset),
            max_back_degree: None,
            graph_matches: None,
        }
    }

    /// Antichains of every class, numbered block by block and line by line.
    pub fn clique_partition(&self) -> PartitionReport {
        let n = self.decomposition.cells.len();
        let mut classes = vec![0; n];
        let mut next = 0;
        let mut per_block: BTreeMap<&BlockLabel, usize> = BTreeMap::new();
        for class in &self.classes {
            for layer in &class.antichains {
                for &m in layer {
                    classes[m] = next;
                }
                next += 1;
            }
            // Lines of one block are pairwise far apart, so one longest chain
            // per line together forms a packing.
            *per_block.entry(&class.block).or_default() += class.antichains.len();
        }
        let nu_lb = per_block.values().copied().max().unwrap_or(0);
        let t = self.normalization.params.t_bound;
        PartitionReport {
            method: "translates".into(),
            classes,
            classes_used: next,
            bound_value: t * nu_lb,
            nu_used: nu_lb,
            nu_exact: false,
            factor: t,
            blocks: Some((0..n).map(|m| self.decomposition.block(m)).collect()),
            rounds: None,
            kappa_ub: None,
            piercing_points: None,
            piercing_count: None,
            fallback_used: false,
        }
    }
}

pub fn color_translates(family: &Family, seed: u64) -> Result<ColoringReport> {
    Ok(analyze(family, seed)?.coloring())
}

pub fn clique_partition_translates(family: &Family, seed: u64) -> Result<PartitionReport> {
    Ok(analyze(family, seed)?.clique_partition())
}
