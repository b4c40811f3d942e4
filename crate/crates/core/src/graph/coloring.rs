//! Exact chromatic number: DSATUR branch-and-bound, deepened one colour at a time
//! from a clique lower bound up to a greedy DSATUR upper bound.

use super::IntersectionGraph;

const UNCOLORED: usize = usize::MAX;

struct Search<'a> {
    g: &'a IntersectionGraph,
    k: usize,
    colors: Vec<usize>,
    // counts[v * k + c]: neighbours of v currently coloured c
    counts: Vec<u32>,
    saturation: Vec<usize>,
    degree: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a IntersectionGraph, k: usize) -> Self {
        let n = g.member_count();
        Self {
            g,
            k,
            colors: vec![UNCOLORED; n],
            counts: vec![0; n * k],
            saturation: vec![0; n],
            degree: (0..n).map(|v| g.degree(v)).collect(),
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[w * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        for w in self.g.neighbors(v).iter() {
            let slot = &mut self.counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == UNCOLORED)
            .max_by(|&a, &b| {
                self.saturation[a]
                    .cmp(&self.saturation[b])
                    .then(self.degree[a].cmp(&self.degree[b]))
                    .then(b.cmp(&a))
            })
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else { return true };
        if self.saturation[v] >= self.k {
            return false;
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.unassign(v);
        }
        false
    }
}

/// A proper `k`-colouring extending the clique precolouring, if one exists.
pub(super) fn k_coloring(g: &IntersectionGraph, k: usize, clique: &[usize]) -> Option<Vec<usize>> {
    if clique.len() > k {
        return None;
    }
    let mut search = Search::new(g, k);
    for (c, &v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    search.solve(clique.len()).then_some(search.colors)
}

/// Greedy DSATUR colouring.
pub(super) fn dsatur_greedy(g: &IntersectionGraph) -> Vec<usize> {
    let n = g.member_count();
    let mut search = Search::new(g, n.max(1));
    while let Some(v) = search.pick() {
        let c = (0..n).find(|&c| search.counts[v * search.k + c] == 0).unwrap_or(0);
        search.assign(v, c);
    }
    search.colors
}

/// Relabels colours in order of first appearance by member index.
pub(super) fn canonical(assignment: &[usize]) -> (usize, Vec<usize>) {
    let mut map = std::collections::HashMap::new();
    let out = assignment
        .iter()
        .map(|c| {
            let next = map.len();
            *map.entry(*c).or_insert(next)
        })
        .collect();
    (map.len(), out)
}
