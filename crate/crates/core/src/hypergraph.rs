//! 3-uniform hypergraphs on dense vertex ids, their links, and colex triple ranking.
//!
//! Triples are always stored sorted ascending. Edge iteration follows colex
//! order: `(u, v, w)` precedes `(u', v', w')` when `(w, v, u) < (w', v', u')`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{invalid, parse_err, Result};
#[cfg(test)]
use crate::error::Error;
use crate::graph::Graph;

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A sorted vertex triple `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple([usize; 3]);

impl Triple {
    /// Sorts the three vertices; fails if any two coincide.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(invalid(format!("triple {a},{b},{c} has repeated vertices")));
        }
        Ok(Triple(t))
    }

    /// Caller guarantees `t[0] < t[1] < t[2]`.
    pub(crate) fn from_sorted(t: [usize; 3]) -> Self {
        debug_assert!(t[0] < t[1] && t[1] < t[2]);
        Triple(t)
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// The three internal pairs, each sorted: `{a,b}, {a,c}, {b,c}`.
    pub fn pairs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    /// The pair left after removing `v`, if `v` is in the triple.
    pub fn opposite(&self, v: usize) -> Option<(usize, usize)> {
        let [a, b, c] = self.0;
        match v {
            _ if v == a => Some((b, c)),
            _ if v == b => Some((a, c)),
            _ if v == c => Some((a, b)),
            _ => None,
        }
    }

    pub fn rank(&self) -> u64 {
        rank_sorted(self.0[0], self.0[1], self.0[2])
    }

    pub fn max_vertex(&self) -> usize {
        self.0[2]
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0[2], self.0[1], self.0[0]).cmp(&(other.0[2], other.0[1], other.0[0]))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

pub(crate) fn rank_sorted(u: usize, v: usize, w: usize) -> u64 {
    binomial(w as u64, 3) + binomial(v as u64, 2) + u as u64
}

/// Colex rank of the triple `u < v < w`.
pub fn triple_rank(u: usize, v: usize, w: usize) -> Result<u64> {
    if !(u < v && v < w) {
        return Err(invalid(format!("triple ({u},{v},{w}) is not strictly increasing")));
    }
    Ok(rank_sorted(u, v, w))
}

/// Inverse of [`triple_rank`] restricted to triples over `0..n`.
pub fn triple_unrank(id: u64, n: usize) -> Result<Triple> {
    if id >= binomial(n as u64, 3) {
        return Err(invalid(format!("rank {id} out of range for n={n}")));
    }
    Ok(unrank_unchecked(id))
}

pub(crate) fn unrank_unchecked(mut id: u64) -> Triple {
    let mut out = [0usize; 3];
    for (slot, k) in [(2usize, 3u64), (1, 2), (0, 1)] {
        // largest x with C(x, k) <= id
        let mut x = k as usize - 1;
        while binomial(x as u64 + 1, k) <= id {
            x += 1;
        }
        id -= binomial(x as u64, k);
        out[slot] = x;
    }
    Triple(out)
}

/// Colex rank of the pair `u < v`.
pub fn pair_rank(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// A 3-uniform hypergraph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct ThreeGraph {
    n: usize,
    edges: Vec<Triple>,
    index: HashSet<Triple>,
    labels: Vec<usize>,
}

impl PartialEq for ThreeGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for ThreeGraph {}

impl ThreeGraph {
    /// Builds a 3-graph from triples; duplicates collapse (set semantics).
    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = Triple>,
    {
        let mut index = HashSet::new();
        for t in triples {
            if t.max_vertex() >= n {
                return Err(invalid(format!("triple {t} out of range for n={n}")));
            }
            index.insert(t);
        }
        let mut edges: Vec<Triple> = index.iter().copied().collect();
        edges.sort_unstable();
        Ok(ThreeGraph {
            n,
            edges,
            index,
            labels: (0..n).collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        ThreeGraph {
            n,
            edges: Vec::new(),
            index: HashSet::new(),
            labels: (0..n).collect(),
        }
    }

    /// `K_n^3`, all `C(n,3)` triples.
    pub fn complete(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("complete 3-graph needs n >= 3, got {n}")));
        }
        let total = binomial(n as u64, 3);
        let edges: Vec<Triple> = (0..total).map(unrank_unchecked).collect();
        let index = edges.iter().copied().collect();
        Ok(ThreeGraph {
            n,
            edges,
            index,
            labels: (0..n).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in colex order.
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.index.contains(t)
    }

    /// Original vertex ids, carried through `remove_vertices` / `induced`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(invalid(format!("vertex {v} out of range for n={}", self.n)));
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|t| t.contains(v)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for t in &self.edges {
            for v in t.vertices() {
                d[v] += 1;
            }
        }
        d
    }

    /// `z(u,v)`: number of edges containing both `u` and `v`.
    pub fn pair_frequency(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(invalid("pair frequency needs two distinct vertices"));
        }
        Ok(self
            .edges
            .iter()
            .filter(|t| t.contains(u) && t.contains(v))
            .count())
    }

    /// All pair frequencies, indexed by [`pair_rank`].
    pub fn pair_frequencies(&self) -> Vec<usize> {
        let mut z = vec![0; self.n * self.n.saturating_sub(1) / 2];
        for t in &self.edges {
            for (a, b) in t.pairs() {
                z[pair_rank(a, b)] += 1;
            }
        }
        z
    }

    /// The link `N(v)` as a 2-graph on the other `n-1` vertices; labels map
    /// back to vertex ids of `self`.
    pub fn link(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let pos = |x: usize| if x < v { x } else { x - 1 };
        let pairs = self
            .edges
            .iter()
            .filter_map(|t| t.opposite(v))
            .map(|(a, b)| (pos(a), pos(b)));
        let labels = (0..self.n).filter(|&x| x != v).collect();
        Graph::with_labels(self.n - 1, pairs, labels)
    }

    /// `F - X`: drops the vertices of `X` and every edge meeting them.
    pub fn remove_vertices(&self, removed: &[usize]) -> Result<Self> {
        for &x in removed {
            self.check_vertex(x)?;
        }
        let keep: Vec<usize> = (0..self.n).filter(|x| !removed.contains(x)).collect();
        Ok(self.restrict(&keep))
    }

    /// `F[X]`: the sub-hypergraph induced by `keep`.
    pub fn induced(&self, keep: &[usize]) -> Result<Self> {
        for &x in keep {
            self.check_vertex(x)?;
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        Ok(self.restrict(&keep))
    }

    fn restrict(&self, keep: &[usize]) -> Self {
        let mut map = vec![usize::MAX; self.n];
        for (i, &x) in keep.iter().enumerate() {
            map[x] = i;
        }
        let edges = self.edges.iter().filter_map(|t| {
            let [a, b, c] = t.vertices();
            let (a, b, c) = (map[a], map[b], map[c]);
            (a != usize::MAX && b != usize::MAX && c != usize::MAX)
                .then(|| Triple::from_sorted([a, b, c]))
        });
        let mut g = ThreeGraph::from_triples(keep.len(), edges).expect("relabeled triples in range");
        g.labels = keep.iter().map(|&x| self.labels[x]).collect();
        g
    }

    /// `F - Y`: drops exactly the listed edges, each of which must be present.
    pub fn remove_edges(&self, removed: &[Triple]) -> Result<Self> {
        let drop: HashSet<Triple> = removed.iter().copied().collect();
        if let Some(t) = drop.iter().find(|t| !self.contains(t)) {
            return Err(invalid(format!("triple {t} is not an edge")));
        }
        let mut g = ThreeGraph::from_triples(
            self.n,
            self.edges.iter().copied().filter(|t| !drop.contains(t)),
        )?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Canonical text: `n m`, then one `u v w` line per edge in colex order.
    pub fn to_text(&self) -> String {
        self.to_text_with_header(&[])
    }

    pub fn to_text_with_header(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format!("{} {}\n", self.n, self.edges.len()));
        for t in &self.edges {
            out.push_str(&format!("{t}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = data_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let [n, m] = parse_fields::<2>(header, ln)?;
        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::new();
        for (ln, line) in lines {
            let [u, v, w] = parse_fields::<3>(line, ln)?;
            if !(u < v && v < w) {
                return Err(parse_err(ln, "triple must satisfy u < v < w"));
            }
            if w >= n {
                return Err(parse_err(ln, format!("vertex {w} out of range")));
            }
            let t = Triple([u, v, w]);
            if !seen.insert(t) {
                return Err(parse_err(ln, format!("duplicate triple {t}")));
            }
            edges.push(t);
        }
        if edges.len() != m {
            return Err(parse_err(0, format!("header says {m} edges, found {}", edges.len())));
        }
        ThreeGraph::from_triples(n, edges)
    }
}

impl fmt::Display for ThreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_fields<const N: usize>(line: &str, ln: usize) -> Result<[usize; N]> {
    let mut out = [0usize; N];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(ln, format!("expected {N} integers")))?;
        *slot = tok
            .parse()
            .map_err(|_| parse_err(ln, format!("not an integer: {tok:?}")))?;
    }
    if it.next().is_some() {
        return Err(parse_err(ln, format!("expected {N} integers")));
    }
    Ok(out)
}
