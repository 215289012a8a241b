//! Simple 2-graphs: links of 3-graphs, `G_k`, and the inputs of the matching lemmas.

use std::fmt;

use crate::error::{invalid, parse_err, Result};
use crate::hypergraph::{data_lines, parse_fields};

/// A simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: Vec<usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from pairs in any orientation; duplicate pairs collapse.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_labels(n, pairs, (0..n).collect())
    }

    pub fn with_labels<I>(n: usize, pairs: I, labels: Vec<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if labels.len() != n {
            return Err(invalid("label map length differs from vertex count"));
        }
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(invalid(format!("loop at vertex {a}")));
            }
            if a.max(b) >= n {
                return Err(invalid(format!("edge {a}-{b} out of range for n={n}")));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            labels,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            labels: (0..n).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::new(n, pairs).expect("valid complete graph")
    }

    /// The cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid("cycle needs at least 3 vertices"));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let pairs = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
        Graph::new(a + b, pairs).expect("valid bipartite graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, in lex order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Vertices with at least one incident edge.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// Adjacency bitmasks; `None` when `n > 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|row| row.iter().fold(0u64, |m, &b| m | 1 << b))
                .collect(),
        )
    }

    /// Connected components restricted to `alive`, each sorted ascending.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n])
    }

    /// Subgraph induced by `keep` (relabeled densely, labels carried over).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut map = vec![usize::MAX; self.n];
        for (i, &x) in keep.iter().enumerate() {
            map[x] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|(a, b)| map[*a] != usize::MAX && map[*b] != usize::MAX)
            .map(|&(a, b)| (map[a], map[b]));
        let labels = keep.iter().map(|&x| self.labels[x]).collect();
        Graph::with_labels(keep.len(), pairs, labels).expect("induced subgraph is valid")
    }

    pub fn remove_vertices(&self, removed: &[usize]) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// `G - f` on the same vertex set.
    pub fn remove_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let e = (a.min(b), a.max(b));
        if self.edges.binary_search(&e).is_err() {
            return Err(invalid(format!("{a}-{b} is not an edge")));
        }
        let pairs = self.edges.iter().copied().filter(|&p| p != e);
        Graph::with_labels(self.n, pairs, self.labels.clone())
    }

    /// Canonical text: `n m`, then `u v` lines with `u < v` in lex order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = data_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let [n, m] = parse_fields::<2>(header, ln)?;
        let mut pairs = Vec::with_capacity(m);
        for (ln, line) in lines {
            let [a, b] = parse_fields::<2>(line, ln)?;
            if a >= b {
                return Err(parse_err(ln, "edge must satisfy u < v"));
            }
            if b >= n {
                return Err(parse_err(ln, format!("vertex {b} out of range")));
            }
            pairs.push((a, b));
        }
        let g = Graph::new(n, pairs.iter().copied())?;
        if g.edge_count() != pairs.len() {
            return Err(parse_err(0, "duplicate edge"));
        }
        if pairs.len() != m {
            return Err(parse_err(0, format!("header says {m} edges, found {}", pairs.len())));
        }
        Ok(g)
    }

    /// One-line form used in audit reports: `n=<n>:u-v,u-v,...`.
    pub fn to_compact(&self) -> String {
        let body: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("n={}:{}", self.n, body.join(","))
    }

    pub fn parse_compact(s: &str) -> Result<Self> {
        let bad = |m: &str| parse_err(1, format!("compact graph: {m}"));
        let rest = s.trim().strip_prefix("n=").ok_or_else(|| bad("missing n="))?;
        let (n, body) = rest.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: usize = n.parse().map_err(|_| bad("bad vertex count"))?;
        let mut pairs = Vec::new();
        for tok in body.split(',').filter(|t| !t.is_empty()) {
            let (a, b) = tok.split_once('-').ok_or_else(|| bad("bad edge"))?;
            let a: usize = a.parse().map_err(|_| bad("bad vertex"))?;
            let b: usize = b.parse().map_err(|_| bad("bad vertex"))?;
            pairs.push((a, b));
        }
        Graph::new(n, pairs)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
