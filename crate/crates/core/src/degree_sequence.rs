//! Labeled graphs with a prescribed degree sequence.
//!
//! Exhaustive mode backtracks over adjacency rows: vertex `i` picks its
//! remaining neighbours among `i+1..n` in lex order, and a branch is kept only
//! while the residual sequence on `i+1..n` stays graphical (Erdős–Gallai).
//! That check is exact, so the search never dead-ends below a kept branch.
//!
//! Sample mode starts from the Havel–Hakimi realization and walks by random
//! double-edge swaps driven by `ChaCha8Rng::seed_from_u64(seed)`; after a
//! burn-in of `20·m` swap attempts it emits one graph every `4·m` attempts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Exhaustive enumeration is refused above this degree sum.
pub const EXHAUSTIVE_DEGREE_SUM_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerationMode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

/// Erdős–Gallai test.
pub fn is_graphical(seq: &[usize]) -> bool {
    let mut d = seq.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    let total: usize = d.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    let mut prefix = 0;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

fn check_sequence(seq: &[usize]) -> Result<()> {
    if !is_graphical(seq) {
        return Err(invalid(format!("degree sequence {seq:?} is not graphical")));
    }
    Ok(())
}

/// Every labeled simple graph whose vertex `i` has degree `seq[i]`, or
/// `count` sampled ones.
pub fn graphs_with_degree_sequence(
    seq: &[usize],
    mode: GenerationMode,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>> {
    check_sequence(seq)?;
    match mode {
        GenerationMode::Exhaustive => {
            let sum: usize = seq.iter().sum();
            if sum > EXHAUSTIVE_DEGREE_SUM_LIMIT {
                return Err(Error::SizeLimit(format!(
                    "exhaustive enumeration needs degree sum <= {EXHAUSTIVE_DEGREE_SUM_LIMIT}, got {sum}"
                )));
            }
            Ok(Box::new(ExhaustiveGraphs::new(seq)))
        }
        GenerationMode::Sample { count, seed } => Ok(Box::new(SwitchSampler::new(seq, count, seed))),
    }
}

struct Frame {
    vertex: usize,
    candidates: Vec<usize>,
    need: usize,
    // indices into `candidates`; `None` before the first combination
    comb: Option<Vec<usize>>,
}

impl Frame {
    fn chosen(&self) -> impl Iterator<Item = usize> + '_ {
        self.comb
            .iter()
            .flat_map(move |c| c.iter().map(move |&i| self.candidates[i]))
    }

    /// Step to the next lex combination; `false` when exhausted.
    fn advance(&mut self) -> bool {
        let k = self.need;
        let m = self.candidates.len();
        match &mut self.comb {
            None => {
                if k > m {
                    return false;
                }
                self.comb = Some((0..k).collect());
                true
            }
            Some(c) => {
                let mut i = k;
                while i > 0 {
                    i -= 1;
                    if c[i] < m - k + i {
                        c[i] += 1;
                        for j in i + 1..k {
                            c[j] = c[j - 1] + 1;
                        }
                        return true;
                    }
                }
                false
            }
        }
    }
}

struct ExhaustiveGraphs {
    n: usize,
    residual: Vec<usize>,
    stack: Vec<Frame>,
    done: bool,
}

impl ExhaustiveGraphs {
    fn new(seq: &[usize]) -> Self {
        let mut it = ExhaustiveGraphs {
            n: seq.len(),
            residual: seq.to_vec(),
            stack: Vec::new(),
            done: false,
        };
        if it.n > 0 {
            let frame = it.frame_for(0);
            it.stack.push(frame);
        }
        it
    }

    fn frame_for(&self, vertex: usize) -> Frame {
        Frame {
            vertex,
            candidates: (vertex + 1..self.n).filter(|&j| self.residual[j] > 0).collect(),
            need: self.residual[vertex],
            comb: None,
        }
    }

    fn undo(&mut self) {
        let frame = self.stack.last().expect("frame present");
        let chosen: Vec<usize> = frame.chosen().collect();
        for j in chosen {
            self.residual[j] += 1;
        }
    }

    fn current_graph(&self) -> Graph {
        let pairs = self
            .stack
            .iter()
            .flat_map(|f| f.chosen().map(move |j| (f.vertex, j)));
        Graph::new(self.n, pairs).expect("enumerated edges are valid")
    }
}

impl Iterator for ExhaustiveGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Graph::empty(0));
        }
        loop {
            if self.stack.is_empty() {
                self.done = true;
                return None;
            }
            self.undo();
            let frame = self.stack.last_mut().expect("frame present");
            if !frame.advance() {
                self.stack.pop();
                continue;
            }
            let vertex = frame.vertex;
            let chosen: Vec<usize> = frame.chosen().collect();
            for &j in &chosen {
                self.residual[j] -= 1;
            }
            if !is_graphical(&self.residual[vertex + 1..]) {
                continue;
            }
            if vertex + 1 == self.n {
                return Some(self.current_graph());
            }
            let next = self.frame_for(vertex + 1);
            self.stack.push(next);
        }
    }
}

/// Havel–Hakimi realization of a graphical sequence.
pub fn havel_hakimi(seq: &[usize]) -> Result<Graph> {
    check_sequence(seq)?;
    let mut rest: Vec<(usize, usize)> = seq.iter().copied().enumerate().map(|(v, d)| (d, v)).collect();
    let mut pairs = Vec::new();
    while !rest.is_empty() {
        rest.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let (d, v) = rest[0];
        if d == 0 {
            break;
        }
        rest[0].0 = 0;
        for slot in rest.iter_mut().skip(1).take(d) {
            slot.0 -= 1;
            pairs.push((v, slot.1));
        }
    }
    Graph::new(seq.len(), pairs)
}

struct SwitchSampler {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<bool>>,
    rng: ChaCha8Rng,
    remaining: usize,
    burned_in: bool,
}

impl SwitchSampler {
    fn new(seq: &[usize], count: usize, seed: u64) -> Self {
        let start = havel_hakimi(seq).expect("sequence checked graphical");
        let n = seq.len();
        let mut adjacency = vec![vec![false; n]; n];
        for &(a, b) in start.edges() {
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        SwitchSampler {
            n,
            edges: start.edges().to_vec(),
            adjacency,
            rng: ChaCha8Rng::seed_from_u64(seed),
            remaining: count,
            burned_in: false,
        }
    }

    fn attempt_swap(&mut self) {
        let m = self.edges.len();
        if m < 2 {
            return;
        }
        let i = self.rng.random_range(0..m);
        let j = self.rng.random_range(0..m);
        if i == j {
            return;
        }
        let (a, b) = self.edges[i];
        let (mut c, mut d) = self.edges[j];
        if self.rng.random_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        // (a,b),(c,d) -> (a,d),(c,b)
        if a == d || c == b || self.adjacency[a][d] || self.adjacency[c][b] {
            return;
        }
        for (x, y, on) in [(a, b, false), (c, d, false), (a, d, true), (c, b, true)] {
            self.adjacency[x][y] = on;
            self.adjacency[y][x] = on;
        }
        self.edges[i] = (a.min(d), a.max(d));
        self.edges[j] = (c.min(b), c.max(b));
    }
}

impl Iterator for SwitchSampler {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let m = self.edges.len();
        let steps = if self.burned_in { 4 * m } else { 20 * m };
        self.burned_in = true;
        for _ in 0..steps {
            self.attempt_swap();
        }
        Some(Graph::new(self.n, self.edges.iter().copied()).expect("swaps keep the graph simple"))
    }
}

/// Distinct permutations of `seq` in lex order (labeled placements of a degree multiset).
pub fn distinct_permutations(seq: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = seq.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
