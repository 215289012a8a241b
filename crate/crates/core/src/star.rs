//! k-stars: detection through link matchings, and exact Turán numbers `f(n,k)`
//! for small `n` by branch-and-bound.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::constructions;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial, unrank_unchecked, ThreeGraph, Triple};
use crate::matching::{full_mask, has_matching_of_size, max_matching};
use crate::search::{in_pool, Meter, SearchConfig, SearchOutcome, SearchStatus};

/// `k` edges through `core` whose other pairs are pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarWitness {
    pub core: usize,
    pub rays: Vec<Triple>,
}

impl StarWitness {
    /// Checks the star shape and, if given, membership in `f`.
    pub fn is_valid_in(&self, f: &ThreeGraph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.rays.iter().all(|t| {
            f.contains(t)
                && t.opposite(self.core)
                    .is_some_and(|(a, b)| seen.insert(a) && seen.insert(b))
        })
    }
}

/// Largest `s` such that `f` has an `s`-star with core `v`: `nu(N(v))`.
pub fn max_star(f: &ThreeGraph, v: usize) -> Result<usize> {
    Ok(max_matching(&f.link(v)?).size)
}

pub fn is_star_free(f: &ThreeGraph, k: usize) -> bool {
    find_k_star(f, k).is_none()
}

/// A `k`-star of `f`, with the smallest possible core.
pub fn find_k_star(f: &ThreeGraph, k: usize) -> Option<StarWitness> {
    (0..f.n()).find_map(|v| {
        let link = f.link(v).expect("vertex in range");
        let m = max_matching(&link);
        (m.size >= k).then(|| {
            let lab = link.labels();
            let rays = m.pairs[..k]
                .iter()
                .map(|&(a, b)| Triple::new(v, lab[a], lab[b]).expect("distinct vertices"))
                .collect();
            StarWitness { core: v, rays }
        })
    })
}

/// Maximum edge count of a graph on `m` vertices with matching number at
/// most `nu` (Erdős–Gallai).
pub fn max_edges_with_matching_number(m: usize, nu: usize) -> usize {
    let c2 = |x: usize| x * x.saturating_sub(1) / 2;
    if m <= 2 * nu + 1 {
        return c2(m);
    }
    c2(2 * nu + 1).max(c2(nu) + nu * (m - nu))
}

/// Default instance caps for [`exact_f`] without `long_run`.
pub fn exact_f_cap(k: usize) -> usize {
    if k <= 2 {
        7
    } else {
        8
    }
}

/// Maximum edge count of a `k`-star-free 3-graph on `n` vertices.
///
/// Triples are decided in colex order, include first. A triple is dropped
/// from the candidate list as soon as adding it would create a `k`-star;
/// that never reverses, since adding edges only grows link matchings. The
/// bound is the smaller of `current + candidates` and a per-vertex cap: the
/// link of each vertex has matching number below `k`, so its degree is at
/// most [`max_edges_with_matching_number`]`(n-1, k-1)`.
pub fn exact_f(n: usize, k: usize, cfg: &SearchConfig) -> Result<SearchOutcome<ThreeGraph>> {
    if n < 3 || k < 2 {
        return Err(invalid(format!("exact_f needs n >= 3 and k >= 2, got n={n} k={k}")));
    }
    if n > 64 || (!cfg.long_run && n > exact_f_cap(k)) {
        return Err(Error::SizeLimit(format!(
            "exact_f(n={n}, k={k}) exceeds the default cap n <= {}; use long-run mode",
            exact_f_cap(k)
        )));
    }
    let (seed_value, seed) = match constructions::construct(n, k) {
        Some(Ok(g)) if is_star_free(&g, k) => (g.edge_count(), g),
        _ => (0, ThreeGraph::empty(n)),
    };
    let search = TuranSearch::new(n, k, cfg, seed_value);
    let root = Node::new(n);
    let alive: Vec<usize> = (0..search.triples.len()).collect();

    let best = if cfg.threads <= 1 {
        let mut node = root;
        let mut found = None;
        search.dfs(&mut node, &alive, &mut found);
        found
    } else {
        let tasks = search.frontier(root, &alive, 8);
        in_pool(cfg.threads, || {
            tasks
                .into_par_iter()
                .map(|(chosen, alive)| {
                    let mut node = Node::new(n);
                    for &t in &chosen {
                        node.add(&search.triples[t], n);
                    }
                    node.chosen = chosen;
                    let mut found = None;
                    search.dfs(&mut node, &alive, &mut found);
                    found
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        // largest value, earliest task on ties
        .fold(None, |acc: Option<Vec<usize>>, cand| match acc {
            Some(a) if a.len() >= cand.len() => Some(a),
            _ => Some(cand),
        })
    };

    let status = if search.meter.expired() {
        SearchStatus::LowerBoundOnly
    } else {
        SearchStatus::Proven
    };
    let witness = match best {
        Some(chosen) if chosen.len() > seed_value => {
            ThreeGraph::from_triples(n, chosen.iter().map(|&t| Triple::from_sorted(search.triples[t])))?
        }
        _ => seed,
    };
    Ok(SearchOutcome {
        value: witness.edge_count(),
        status,
        witness,
        stats: search.meter.stats(),
    })
}

struct Node {
    // link[v * n + a]: neighbours of `a` in the link of `v`
    link: Vec<u64>,
    degree: Vec<usize>,
    chosen: Vec<usize>,
}

impl Node {
    fn new(n: usize) -> Self {
        Node {
            link: vec![0; n * n],
            degree: vec![0; n],
            chosen: Vec::new(),
        }
    }

    fn toggle(&mut self, t: &[usize; 3], n: usize) {
        let [a, b, c] = *t;
        for (x, p, q) in [(a, b, c), (b, a, c), (c, a, b)] {
            self.link[x * n + p] ^= 1 << q;
            self.link[x * n + q] ^= 1 << p;
        }
    }

    fn add(&mut self, t: &[usize; 3], n: usize) {
        self.toggle(t, n);
        for &v in t {
            self.degree[v] += 1;
        }
    }

    fn remove(&mut self, t: &[usize; 3], n: usize) {
        self.toggle(t, n);
        for &v in t {
            self.degree[v] -= 1;
        }
    }
}

struct TuranSearch {
    n: usize,
    k: usize,
    triples: Vec<[usize; 3]>,
    cap: usize,
    best: AtomicUsize,
    meter: Meter,
}

impl TuranSearch {
    fn new(n: usize, k: usize, cfg: &SearchConfig, incumbent: usize) -> Self {
        let total = binomial(n as u64, 3);
        TuranSearch {
            n,
            k,
            triples: (0..total).map(|r| unrank_unchecked(r).vertices()).collect(),
            cap: max_edges_with_matching_number(n - 1, k - 1),
            best: AtomicUsize::new(incumbent),
            meter: Meter::new(cfg.budget),
        }
    }

    /// Would adding `t` create a `k`-star?
    fn feasible(&self, node: &Node, t: &[usize; 3]) -> bool {
        let n = self.n;
        let [a, b, c] = *t;
        let all = full_mask(n);
        [(a, b, c), (b, a, c), (c, a, b)].iter().all(|&(x, p, q)| {
            let adj = &node.link[x * n..(x + 1) * n];
            !has_matching_of_size(adj, all & !(1 << x | 1 << p | 1 << q), self.k - 1)
        })
    }

    fn bound(&self, node: &Node, alive: &[usize]) -> usize {
        let mut through = vec![0usize; self.n];
        for &t in alive {
            for &v in &self.triples[t] {
                through[v] += 1;
            }
        }
        let per_vertex: usize = (0..self.n)
            .map(|v| (node.degree[v] + through[v]).min(self.cap))
            .sum();
        (node.chosen.len() + alive.len()).min(per_vertex / 3)
    }

    fn dfs(&self, node: &mut Node, alive: &[usize], found: &mut Option<Vec<usize>>) {
        if !self.meter.tick() {
            return;
        }
        if self.bound(node, alive) <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let Some((&t, rest)) = alive.split_first() else {
            // bound == chosen.len() > best here
            self.best.fetch_max(node.chosen.len(), Ordering::Relaxed);
            *found = Some(node.chosen.clone());
            return;
        };
        let tri = self.triples[t];
        node.add(&tri, self.n);
        node.chosen.push(t);
        let next: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&u| self.feasible(node, &self.triples[u]))
            .collect();
        self.dfs(node, &next, found);
        node.chosen.pop();
        node.remove(&tri, self.n);
        self.dfs(node, rest, found);
    }

    /// Open subproblems after `depth` decisions, in branch order.
    fn frontier(&self, root: Node, alive: &[usize], depth: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        let mut node = root;
        self.expand(&mut node, alive.to_vec(), depth, &mut out);
        out
    }

    fn expand(&self, node: &mut Node, alive: Vec<usize>, depth: usize, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if depth == 0 || alive.is_empty() {
            out.push((node.chosen.clone(), alive));
            return;
        }
        let t = alive[0];
        let tri = self.triples[t];
        node.add(&tri, self.n);
        node.chosen.push(t);
        let next: Vec<usize> = alive[1..]
            .iter()
            .copied()
            .filter(|&u| self.feasible(node, &self.triples[u]))
            .collect();
        self.expand(node, next, depth - 1, out);
        node.chosen.pop();
        node.remove(&tri, self.n);
        self.expand(node, alive[1..].to_vec(), depth - 1, out);
    }
}
