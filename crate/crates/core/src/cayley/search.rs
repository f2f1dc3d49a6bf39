//! Bitset clique search over adjacency rows.
//!
//! `max_clique` is a Tomita-style branch and bound: candidates are greedily
//! colour-sorted and a branch is cut when the clique plus the colour count
//! cannot beat the incumbent. `enumerate` lists every clique of an exact size
//! in lexicographic order, pruning with the same colour bound.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::bitset::BitSet;
use crate::exec::Parallelism;

/// Greedy sequential colouring of `cands`. Returns the vertices ordered by
/// colour class and, for each position, the number of colours used so far.
pub(crate) fn color_sort(adj: &[BitSet], cands: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cands.count());
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cands.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(&adj[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

/// Number of colours in a greedy colouring; an upper bound on the clique number.
pub(crate) fn color_bound(adj: &[BitSet], cands: &BitSet) -> usize {
    let mut uncolored = cands.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(&adj[v]);
            uncolored.remove(v);
        }
    }
    color
}

struct MaxSearch<'a> {
    adj: &'a [BitSet],
    shared: &'a AtomicUsize,
    best: usize,
    witness: Vec<usize>,
}

impl MaxSearch<'_> {
    fn bound(&self) -> usize {
        self.best.max(self.shared.load(Ordering::Relaxed))
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cands: BitSet) {
        let (order, colors) = color_sort(self.adj, &cands);
        for i in (0..order.len()).rev() {
            if clique.len() + colors[i] <= self.bound() {
                return;
            }
            let v = order[i];
            clique.push(v);
            let next = cands.intersection(&self.adj[v]);
            if next.is_empty() {
                if clique.len() > self.best {
                    self.best = clique.len();
                    self.witness = clique.clone();
                    self.shared.fetch_max(self.best, Ordering::Relaxed);
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            cands.remove(v);
        }
    }
}

/// Largest clique of the form `base ∪ C` with `C ⊆ cands`. `base` must be a
/// clique whose common neighbourhood contains `cands`.
pub(crate) fn max_clique(
    adj: &[BitSet],
    base: &[usize],
    cands: &BitSet,
    exec: Parallelism,
) -> Vec<usize> {
    if cands.is_empty() {
        return base.to_vec();
    }
    let shared = AtomicUsize::new(base.len() + 1);
    let (order, colors) = color_sort(adj, cands);

    // Top-level branch i takes order[i] and candidates among order[..i].
    let branch = |i: usize| -> Option<Vec<usize>> {
        if base.len() + colors[i] <= shared.load(Ordering::Relaxed) {
            return None;
        }
        let v = order[i];
        let mut sub = BitSet::new(cands.len());
        for &u in &order[..i] {
            sub.insert(u);
        }
        sub.intersect_with(&adj[v]);
        let mut clique = base.to_vec();
        clique.push(v);
        let mut search = MaxSearch {
            adj,
            shared: &shared,
            best: 0,
            witness: Vec::new(),
        };
        if sub.is_empty() {
            return Some(clique);
        }
        search.expand(&mut clique, sub);
        (!search.witness.is_empty()).then_some(search.witness)
    };
    let results = exec.map_range(0..order.len(), |j| branch(order.len() - 1 - j));

    let mut best: Vec<usize> = vec![order[0]];
    best.splice(0..0, base.iter().copied());
    for w in results.into_iter().flatten() {
        if w.len() > best.len() {
            best = w;
        }
    }
    best
}

struct Enumerator<'a> {
    adj: &'a [BitSet],
    base: &'a [usize],
    limit: Option<usize>,
    out: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn full(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn rec(&mut self, chosen: &mut Vec<usize>, cands: &BitSet, need: usize) {
        if need == 0 {
            let mut c: Vec<usize> = self.base.iter().chain(chosen.iter()).copied().collect();
            c.sort_unstable();
            self.out.push(c);
            return;
        }
        let avail = cands.count();
        if avail < need {
            return;
        }
        if need >= 3 && color_bound(self.adj, cands) < need {
            return;
        }
        let mut rest = cands.clone();
        for v in cands.iter() {
            if self.full() || rest.count() < need {
                return;
            }
            rest.remove(v);
            let next = rest.intersection(&self.adj[v]);
            chosen.push(v);
            self.rec(chosen, &next, need - 1);
            chosen.pop();
        }
    }
}

/// All cliques `base ∪ C` with `C ⊆ cands`, `|C| = need`, sorted
/// lexicographically. With `limit`, only the first `limit` are produced.
pub(crate) fn enumerate(
    adj: &[BitSet],
    base: &[usize],
    cands: &BitSet,
    need: usize,
    limit: Option<usize>,
    exec: Parallelism,
) -> Vec<Vec<usize>> {
    let run = |chosen: &mut Vec<usize>, c: &BitSet, need: usize, limit: Option<usize>| {
        let mut e = Enumerator {
            adj,
            base,
            limit,
            out: Vec::new(),
        };
        e.rec(chosen, c, need);
        e.out
    };
    if need == 0 {
        return run(&mut Vec::new(), cands, 0, limit);
    }
    if limit.is_some() || !exec.is_parallel() {
        return run(&mut Vec::new(), cands, need, limit);
    }
    if cands.count() < need || (need >= 3 && color_bound(adj, cands) < need) {
        return Vec::new();
    }
    // Split on the smallest chosen vertex.
    let firsts: Vec<usize> = cands.iter().collect();
    let parts = exec.map(&firsts, |&v| {
        let mut rest = cands.clone();
        rest.clear_through(v);
        let next = rest.intersection(&adj[v]);
        let mut e = Enumerator {
            adj,
            base,
            limit: None,
            out: Vec::new(),
        };
        e.rec(&mut vec![v], &next, need - 1);
        e.out
    });
    let mut out: Vec<Vec<usize>> = parts.into_iter().flatten().collect();
    out.sort_unstable();
    out
}
