//! Exact maximum clique by Bron–Kerbosch with pivoting and a size bound.

use super::{BitSet, IntersectionGraph};

fn expand(g: &IntersectionGraph, clique: &mut Vec<usize>, mut cand: BitSet, mut excluded: BitSet, best: &mut Vec<usize>) {
    if cand.is_empty() {
        if clique.len() > best.len() {
            *best = clique.clone();
        }
        return;
    }
    if clique.len() + cand.count() <= best.len() {
        return;
    }
    // Pivot with the most candidate neighbours; lowest index on ties.
    let pivot = cand
        .iter()
        .chain(excluded.iter())
        .max_by(|&a, &b| {
            let (ca, cb) = (cand.intersection_count(g.neighbors(a)), cand.intersection_count(g.neighbors(b)));
            ca.cmp(&cb).then(b.cmp(&a))
        })
        .expect("non-empty candidate set");
    let branch: Vec<usize> = cand.difference(g.neighbors(pivot)).iter().collect();
    for v in branch {
        if clique.len() + cand.count() <= best.len() {
            return;
        }
        clique.push(v);
        expand(
            g,
            clique,
            cand.intersection(g.neighbors(v)),
            excluded.intersection(g.neighbors(v)),
            best,
        );
        clique.pop();
        cand.remove(v);
        excluded.insert(v);
    }
}

/// A maximum clique, members ascending. Deterministic for a given graph.
pub(super) fn maximum_clique(g: &IntersectionGraph) -> Vec<usize> {
    let n = g.member_count();
    let mut best = Vec::new();
    if n == 0 {
        return best;
    }
    let mut clique = Vec::new();
    expand(g, &mut clique, BitSet::full(n), BitSet::new(n), &mut best);
    best.sort_unstable();
    best
}

/// Greedy clique: repeatedly add the candidate with most candidate neighbours.
pub(super) fn greedy_clique(g: &IntersectionGraph) -> Vec<usize> {
    let n = g.member_count();
    let mut cand = BitSet::full(n);
    let mut clique = Vec::new();
    while !cand.is_empty() {
        let v = cand
            .iter()
            .max_by(|&a, &b| {
                cand.intersection_count(g.neighbors(a))
                    .cmp(&cand.intersection_count(g.neighbors(b)))
                    .then(b.cmp(&a))
            })
            .expect("non-empty");
        clique.push(v);
        cand = cand.intersection(g.neighbors(v));
    }
    clique.sort_unstable();
    clique
}
