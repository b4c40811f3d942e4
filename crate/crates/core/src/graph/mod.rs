//! Intersection graphs and exact invariants: clique number, independence
//! number, chromatic number and clique-cover number, each with a witness.
//!
//! Solvers refuse instances above their member caps and say so with
//! [`Solved::Capped`]; a heuristic value is never reported as exact.

mod bits;
mod clique;
mod coloring;
mod dimacs;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::geometry::homothets_intersect;

pub use bits::BitSet;
pub use dimacs::{from_dimacs, to_dimacs};

/// Member caps for the exact solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub omega: usize,
    pub chi: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { omega: 100, chi: 45 }
    }
}

impl Caps {
    pub const ENV_VAR: &'static str = "CONVEX_CHROMA_CAPS";

    /// Parses `omega=100,chi=45`; missing keys keep their current values.
    pub fn parse_over(self, text: &str) -> Result<Self> {
        let mut caps = self;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap entry `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap value `{value}` is not an integer")))?;
            match key.trim() {
                "omega" => caps.omega = value,
                "chi" => caps.chi = value,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::default().parse_over(text)
    }

    /// Defaults overridden by the environment variable, when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(text) => Self::default().parse_over(&text),
            Err(_) => Ok(Self::default()),
        }
    }
}

/// Result of an exact solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Solved<W> {
    Exact { value: usize, witness: W },
    Capped { lower: usize, upper: usize },
}

impl<W> Solved<W> {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Solved::Exact { value, .. } => Some(*value),
            Solved::Capped { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Solved::Exact { witness, .. } => Some(witness),
            Solved::Capped { .. } => None,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, Solved::Capped { .. })
    }

    pub fn lower(&self) -> usize {
        match self {
            Solved::Exact { value, .. } => *value,
            Solved::Capped { lower, .. } => *lower,
        }
    }
}

/// Undirected simple graph over family members, adjacency as packed bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    rows: Vec<BitSet>,
    family_ref: String,
}

impl IntersectionGraph {
    pub fn empty(n: usize) -> Self {
        Self { rows: vec![BitSet::new(n); n], family_ref: String::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            for idx in [i, j] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, count: n });
                }
            }
            if i == j {
                return Err(Error::Parse(format!("self-loop on member {i}")));
            }
            g.rows[i].insert(j);
            g.rows[j].insert(i);
        }
        Ok(g)
    }

    /// Adjacency of the family's closed bodies.
    pub fn build(family: &Family) -> Result<Self> {
        family.validate()?;
        let n = family.len();
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if homothets_intersect(&family.body, &family.placements[i], &family.placements[j])? {
                    g.rows[i].insert(j);
                    g.rows[j].insert(i);
                }
            }
        }
        g.family_ref = family.digest();
        Ok(g)
    }

    pub fn with_family_ref(mut self, reference: impl Into<String>) -> Self {
        self.family_ref = reference.into();
        self
    }

    pub fn family_ref(&self) -> &str {
        &self.family_ref
    }

    pub fn member_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count()
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.member_count())
            .flat_map(|i| self.rows[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn complement(&self) -> Self {
        let n = self.member_count();
        let full = BitSet::full(n);
        let rows = (0..n)
            .map(|i| {
                let mut r = full.difference(&self.rows[i]);
                r.remove(i);
                r
            })
            .collect();
        Self { rows, family_ref: self.family_ref.clone() }
    }

    /// Subgraph induced on `members`, relabelled `0..members.len()`.
    pub fn induced(&self, members: &[usize]) -> Self {
        let k = members.len();
        let mut g = Self::empty(k);
        for a in 0..k {
            for b in a + 1..k {
                if self.has_edge(members[a], members[b]) {
                    g.rows[a].insert(b);
                    g.rows[b].insert(a);
                }
            }
        }
        g.family_ref = self.family_ref.clone();
        g
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }

    pub fn is_independent(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| !self.has_edge(i, j)))
    }
}

fn check_assignment(g: &IntersectionGraph, assignment: &[usize]) -> Result<()> {
    if assignment.len() != g.member_count() {
        return Err(Error::IndexOutOfRange {
            index: assignment.len().max(g.member_count()).saturating_sub(1),
            count: assignment.len().min(g.member_count()),
        });
    }
    Ok(())
}

/// Whether no edge joins two members with the same colour.
pub fn verify_coloring(g: &IntersectionGraph, assignment: &[usize]) -> Result<bool> {
    check_assignment(g, assignment)?;
    Ok(g.edges().iter().all(|&(i, j)| assignment[i] != assignment[j]))
}

/// Whether every class of the assignment is pairwise adjacent.
pub fn verify_clique_partition(g: &IntersectionGraph, assignment: &[usize]) -> Result<bool> {
    check_assignment(g, assignment)?;
    let n = g.member_count();
    Ok((0..n).all(|i| (i + 1..n).all(|j| assignment[i] != assignment[j] || g.has_edge(i, j))))
}

/// Number of distinct labels in an assignment.
pub fn classes_used(assignment: &[usize]) -> usize {
    let mut labels = assignment.to_vec();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}

pub fn max_clique(g: &IntersectionGraph, caps: Caps) -> Solved<Vec<usize>> {
    let n = g.member_count();
    if n > caps.omega {
        return Solved::Capped { lower: clique::greedy_clique(g).len(), upper: n };
    }
    let witness = clique::maximum_clique(g);
    Solved::Exact { value: witness.len(), witness }
}

pub fn max_independent_set(g: &IntersectionGraph, caps: Caps) -> Solved<Vec<usize>> {
    max_clique(&g.complement(), caps)
}

pub fn chromatic_number(g: &IntersectionGraph, caps: Caps) -> Solved<Vec<usize>> {
    let n = g.member_count();
    if n == 0 {
        return Solved::Exact { value: 0, witness: Vec::new() };
    }
    let (greedy_colors, greedy) = coloring::canonical(&coloring::dsatur_greedy(g));
    if n > caps.chi {
        return Solved::Capped { lower: clique::greedy_clique(g).len(), upper: greedy_colors };
    }
    let seed_clique = match max_clique(g, caps) {
        Solved::Exact { witness, .. } => witness,
        Solved::Capped { .. } => clique::greedy_clique(g),
    };
    for k in seed_clique.len()..greedy_colors {
        if let Some(colors) = coloring::k_coloring(g, k, &seed_clique) {
            let (value, witness) = coloring::canonical(&colors);
            return Solved::Exact { value, witness };
        }
    }
    Solved::Exact { value: greedy_colors, witness: greedy }
}

/// Minimum number of cliques partitioning the vertices: chromatic number of the complement.
pub fn clique_cover_number(g: &IntersectionGraph, caps: Caps) -> Solved<Vec<usize>> {
    chromatic_number(&g.complement(), caps)
}

/// Exact invariants of one graph, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphInvariants {
    pub omega: Solved<Vec<usize>>,
    pub alpha: Solved<Vec<usize>>,
    pub chi: Solved<Vec<usize>>,
    pub theta: Solved<Vec<usize>>,
}

impl GraphInvariants {
    /// Computes all four invariants and re-verifies every exact witness.
    pub fn compute(g: &IntersectionGraph, caps: Caps) -> Result<Self> {
        let inv = Self {
            omega: max_clique(g, caps),
            alpha: max_independent_set(g, caps),
            chi: chromatic_number(g, caps),
            theta: clique_cover_number(g, caps),
        };
        inv.check(g)?;
        Ok(inv)
    }

    fn check(&self, g: &IntersectionGraph) -> Result<()> {
        if let Some(w) = self.omega.witness() {
            if !g.is_clique(w) {
                return Err(Error::Invariant("clique witness is not a clique".into()));
            }
        }
        if let Some(w) = self.alpha.witness() {
            if !g.is_independent(w) {
                return Err(Error::Invariant("independent-set witness has an edge".into()));
            }
        }
        if let Some(w) = self.chi.witness() {
            if !verify_coloring(g, w)? || classes_used(w) != self.chi.lower() {
                return Err(Error::Invariant("colouring witness is invalid".into()));
            }
        }
        if let Some(w) = self.theta.witness() {
            if !verify_clique_partition(g, w)? || classes_used(w) != self.theta.lower() {
                return Err(Error::Invariant("clique-partition witness is invalid".into()));
            }
        }
        if let (Some(o), Some(c)) = (self.omega.exact(), self.chi.exact()) {
            if o > c {
                return Err(Error::Invariant(format!("omega {o} exceeds chi {c}")));
            }
        }
        if let (Some(a), Some(t)) = (self.alpha.exact(), self.theta.exact()) {
            if a > t {
                return Err(Error::Invariant(format!("alpha {a} exceeds theta {t}")));
            }
        }
        Ok(())
    }
}
