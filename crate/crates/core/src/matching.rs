//! Maximum matchings, Tutte/Gallai criteria, factor-criticality and Hamiltonian cycles.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Exhaustive Tutte-set search is limited to this many vertices.
pub const TUTTE_EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    /// `nu(G)`.
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
    /// A set `S` with `o(G - S) > |S|`, present exactly when `G` has no
    /// perfect matching (the Gallai-Edmonds set `A(G)`).
    pub certificate: Option<Vec<usize>>,
}

/// Mate array of a maximum matching (Edmonds' blossom algorithm).
pub fn maximum_mates(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // greedy start
    for &(a, b) in g.edges() {
        if mate[a] == NONE && mate[b] == NONE {
            mate[a] = b;
            mate[b] = a;
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(end) = search.find_augmenting_path(g, &mate, root) {
            let mut v = end;
            while v != NONE {
                let pv = search.parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }
    mate
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

fn pairs_from_mates(mate: &[usize]) -> Vec<(usize, usize)> {
    mate.iter()
        .enumerate()
        .filter(|&(v, &m)| m != NONE && v < m)
        .map(|(v, &m)| (v, m))
        .collect()
}

pub fn matching_number(g: &Graph) -> usize {
    maximum_mates(g).iter().filter(|&&m| m != NONE).count() / 2
}

/// Maximum matching, with a Tutte-set certificate when it is not perfect.
pub fn max_matching(g: &Graph) -> MatchingResult {
    let pairs = pairs_from_mates(&maximum_mates(g));
    let size = pairs.len();
    let certificate = (2 * size < g.n()).then(|| gallai_edmonds_set(g, size));
    MatchingResult {
        size,
        pairs,
        certificate,
    }
}

/// `A(G)`: neighbours of the vertices missed by some maximum matching.
fn gallai_edmonds_set(g: &Graph, nu: usize) -> Vec<usize> {
    let n = g.n();
    let deficient: Vec<bool> = (0..n)
        .map(|v| matching_number(&g.remove_vertices(&[v])) == nu)
        .collect();
    let mut a: Vec<usize> = (0..n)
        .filter(|&v| !deficient[v] && g.neighbors(v).iter().any(|&w| deficient[w]))
        .collect();
    a.sort_unstable();
    a
}

/// Number of odd components of `G - S`.
pub fn odd_components_after_removal(g: &Graph, removed: &[usize]) -> usize {
    let mut alive = vec![true; g.n()];
    for &s in removed {
        alive[s] = false;
    }
    g.components_within(&alive)
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    if g.n() % 2 == 1 {
        return false;
    }
    if let Some(masks) = g.masks().filter(|_| g.n() <= 24) {
        return perfect_matching_within(&masks, full_mask(g.n()));
    }
    2 * matching_number(g) == g.n()
}

/// Exhaustive search for `S` with `o(G - S) > |S|`, smallest `|S|` first.
pub fn tutte_witness(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > TUTTE_EXHAUSTIVE_LIMIT {
        return Err(Error::SizeLimit(format!(
            "exhaustive Tutte-set search supports n <= {TUTTE_EXHAUSTIVE_LIMIT}, got {n}"
        )));
    }
    let mut subsets: Vec<u32> = (0..1u32 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    for s in subsets {
        let set: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        if odd_components_after_removal(g, &set) > set.len() {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// Factor-critical: odd order and `G - v` has a perfect matching for every `v`.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.n();
    if n % 2 == 0 {
        return false;
    }
    if let Some(masks) = g.masks().filter(|_| n <= 24) {
        return factor_critical_masks(&masks, full_mask(n));
    }
    (0..n).all(|v| 2 * matching_number(&g.remove_vertices(&[v])) == n - 1)
}

/// Factor-criticality of the subgraph induced by `mask`.
pub fn factor_critical_masks(adj: &[u64], mask: u64) -> bool {
    if mask.count_ones() % 2 == 0 {
        return false;
    }
    bits(mask).all(|v| perfect_matching_within(adj, mask & !(1 << v)))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

/// Does the subgraph induced by `mask` have a perfect matching?
pub fn perfect_matching_within(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    if mask.count_ones() % 2 == 1 {
        return false;
    }
    if bits(mask).any(|v| adj[v] & mask == 0) {
        return false;
    }
    let u = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << u);
    bits(adj[u] & rest).any(|w| perfect_matching_within(adj, rest & !(1 << w)))
}

/// Does the subgraph induced by `mask` contain a matching with `need` edges?
pub fn has_matching_of_size(adj: &[u64], mask: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    // drop isolated vertices
    let live = bits(mask).fold(0u64, |acc, v| if adj[v] & mask != 0 { acc | 1 << v } else { acc });
    if (live.count_ones() as usize) < 2 * need {
        return false;
    }
    let u = live.trailing_zeros() as usize;
    let rest = live & !(1 << u);
    bits(adj[u] & rest).any(|w| has_matching_of_size(adj, rest & !(1 << w), need - 1))
        || has_matching_of_size(adj, rest, need)
}

/// A Hamiltonian cycle as a vertex sequence starting at 0, if one exists.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) {
        return None;
    }
    let mut path = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    extend_path(g, &mut path, &mut visited).then_some(path)
}

fn extend_path(g: &Graph, path: &mut Vec<usize>, visited: &mut [bool]) -> bool {
    let n = g.n();
    let last = *path.last().expect("path is never empty");
    if path.len() == n {
        return g.has_edge(last, path[0]);
    }
    // every unvisited vertex still needs two usable neighbours
    for u in 0..n {
        if visited[u] {
            continue;
        }
        let usable = g
            .neighbors(u)
            .iter()
            .filter(|&&w| !visited[w] || w == last || w == path[0])
            .count();
        if usable < 2 {
            return false;
        }
    }
    for &next in g.neighbors(last) {
        if visited[next] {
            continue;
        }
        visited[next] = true;
        path.push(next);
        if extend_path(g, path, visited) {
            return true;
        }
        path.pop();
        visited[next] = false;
    }
    false
}
