//! Pair classes and the pair-weight function on k-star-free 3-graphs.
//!
//! Every triple carries unit weight, split among its three pairs according to
//! their frequency classes; `W_v` collects the weight each triple through `v`
//! puts on the pair opposite `v`. All weights are integers counting sixths.

use std::fmt;

use crate::error::{invalid, parse_err, Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{pair_rank, ThreeGraph, Triple};
use crate::matching::is_factor_critical;
use crate::star::{find_k_star, is_star_free};

/// An exact multiple of 1/6.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sixths(pub i64);

impl Sixths {
    pub const ZERO: Sixths = Sixths(0);
    pub const THIRD: Sixths = Sixths(2);
    pub const HALF: Sixths = Sixths(3);
    pub const ONE: Sixths = Sixths(6);

    pub fn from_integer(x: i64) -> Self {
        Sixths(6 * x)
    }
}

impl std::ops::Add for Sixths {
    type Output = Sixths;
    fn add(self, o: Sixths) -> Sixths {
        Sixths(self.0 + o.0)
    }
}

impl std::ops::Sub for Sixths {
    type Output = Sixths;
    fn sub(self, o: Sixths) -> Sixths {
        Sixths(self.0 - o.0)
    }
}

impl std::iter::Sum for Sixths {
    fn sum<I: Iterator<Item = Sixths>>(iter: I) -> Sixths {
        Sixths(iter.map(|s| s.0).sum())
    }
}

impl fmt::Display for Sixths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.0.unsigned_abs(), 6) as i64;
        let (num, den) = (self.0 / g, 6 / g);
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl std::str::FromStr for Sixths {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("not a sixths value: {s:?}"));
        match s.split_once('/') {
            None => Ok(Sixths(6 * s.parse::<i64>().map_err(|_| bad())?)),
            Some((a, b)) => {
                let a: i64 = a.parse().map_err(|_| bad())?;
                let b: i64 = b.parse().map_err(|_| bad())?;
                if b <= 0 || 6 % b != 0 {
                    return Err(bad());
                }
                Ok(Sixths(a * (6 / b)))
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    /// `z >= 2k-1`
    A,
    /// `k <= z <= 2k-2`
    B,
    /// `z <= k-1`
    C,
}

impl PairClass {
    pub fn of(z: usize, k: usize) -> PairClass {
        if z + 1 >= 2 * k {
            PairClass::A
        } else if z >= k {
            PairClass::B
        } else {
            PairClass::C
        }
    }
}

/// Frequency and class of every pair of `V(F)`, indexed by pair colex rank.
#[derive(Clone, Debug)]
pub struct PairClassTable {
    pub k: usize,
    pub n: usize,
    pub frequency: Vec<usize>,
    pub classes: Vec<PairClass>,
}

impl PairClassTable {
    pub fn class(&self, u: usize, v: usize) -> PairClass {
        self.classes[pair_rank(u.min(v), u.max(v))]
    }

    pub fn z(&self, u: usize, v: usize) -> usize {
        self.frequency[pair_rank(u.min(v), u.max(v))]
    }
}

pub fn classify_pairs(f: &ThreeGraph, k: usize) -> Result<PairClassTable> {
    if k < 2 {
        return Err(invalid(format!("pair classes need k >= 2, got {k}")));
    }
    let frequency = f.pair_frequencies();
    let classes = frequency.iter().map(|&z| PairClass::of(z, k)).collect();
    Ok(PairClassTable {
        k,
        n: f.n(),
        frequency,
        classes,
    })
}

/// Distribution of one triple's unit weight over its pairs, given in
/// descending frequency order (ties by ascending pair rank).
fn weights_for_sorted(classes: [PairClass; 3]) -> [Sixths; 3] {
    use PairClass::*;
    let [p1, p2, p3] = classes;
    if p3 != C || p1 != A {
        // all in A∪B, or all in B∪C
        [Sixths::THIRD; 3]
    } else if p2 == C {
        [Sixths::ONE, Sixths::ZERO, Sixths::ZERO]
    } else {
        [Sixths::HALF, Sixths::HALF, Sixths::ZERO]
    }
}

/// The three pairs of `t` with their weights, in descending frequency order.
pub fn triple_weights_with(table: &PairClassTable, t: &Triple) -> [((usize, usize), Sixths); 3] {
    let mut pairs = t.pairs();
    pairs.sort_by_key(|&(a, b)| (std::cmp::Reverse(table.z(a, b)), pair_rank(a, b)));
    let classes = pairs.map(|(a, b)| table.class(a, b));
    let w = weights_for_sorted(classes);
    [(pairs[0], w[0]), (pairs[1], w[1]), (pairs[2], w[2])]
}

pub fn triple_weights(f: &ThreeGraph, k: usize, t: &Triple) -> Result<[((usize, usize), Sixths); 3]> {
    if !f.contains(t) {
        return Err(invalid(format!("triple {t} is not an edge")));
    }
    Ok(triple_weights_with(&classify_pairs(f, k)?, t))
}

/// Per-edge pair weights and per-vertex totals `W_v`.
#[derive(Clone, Debug)]
pub struct WeightTable {
    pub k: usize,
    pub classes: PairClassTable,
    /// Aligned with `F.edges()`; pairs in descending frequency order.
    pub triple_weights: Vec<[((usize, usize), Sixths); 3]>,
    pub vertex: Vec<Sixths>,
}

impl WeightTable {
    /// Both exact identities: every triple sums to 1 and `sum_v W_v = e(F)`.
    pub fn identities_hold(&self, edge_count: usize) -> bool {
        self.triple_weights
            .iter()
            .all(|w| w.iter().map(|&(_, s)| s).sum::<Sixths>() == Sixths::ONE)
            && self.vertex.iter().copied().sum::<Sixths>() == Sixths::from_integer(edge_count as i64)
    }
}

pub fn vertex_weights(f: &ThreeGraph, k: usize) -> Result<WeightTable> {
    let classes = classify_pairs(f, k)?;
    let mut vertex = vec![Sixths::ZERO; f.n()];
    let mut per_triple = Vec::with_capacity(f.edge_count());
    for t in f.edges() {
        let w = triple_weights_with(&classes, t);
        for &((a, b), s) in &w {
            let v = t
                .vertices()
                .into_iter()
                .find(|&x| x != a && x != b)
                .expect("pair inside triple");
            vertex[v] = vertex[v] + s;
        }
        per_triple.push(w);
    }
    Ok(WeightTable {
        k,
        classes,
        triple_weights: per_triple,
        vertex,
    })
}

/// Which near-extremal link structure explains a large `W_v`. Vertices are
/// ids of the 3-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureWitness {
    None,
    /// Link is two disjoint `K_k` with all edges in class A.
    TwoDisjointCliques { parts: [Vec<usize>; 2] },
    /// Link is `K_{k-1}` plus a factor-critical `C` of order `k+1`.
    CliquePlusCritical {
        clique: Vec<usize>,
        critical: Vec<usize>,
        low_vertex: usize,
    },
    /// The three structural conditions with set `S`, component `F_0`,
    /// star centers and the remaining non-isolated vertices.
    ConditionsAbc {
        s: Vec<usize>,
        f0: Vec<usize>,
        star_centers: Vec<usize>,
        residual: Vec<usize>,
    },
}

impl StructureWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureWitness::None => "none",
            StructureWitness::TwoDisjointCliques { .. } => "two-disjoint-Kk",
            StructureWitness::CliquePlusCritical { .. } => "Kk-1-plus-critical",
            StructureWitness::ConditionsAbc { .. } => "conditions-abc",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VertexAudit {
    pub vertex: usize,
    pub weight: Sixths,
    /// `k(k-1)`, or `k(k-3/2)` for even `k`.
    pub bound: Sixths,
    pub slack: Sixths,
    pub link_classes: [usize; 3],
    pub witness: StructureWitness,
    /// `W_v > k(k-1)`.
    pub exceeds_general_bound: bool,
    /// Even `k` only: `W_v > k(k-3/2)`.
    pub exceeds_even_bound: bool,
    /// `W_v > k(k-1) - 2/3` without two disjoint `K_k`.
    pub unexplained_general: bool,
    /// Even `k` only: `W_v > k(k-3/2) - 1/2` without either even structure.
    pub unexplained_even: bool,
}

#[derive(Clone, Debug)]
pub struct WeightAudit {
    pub k: usize,
    pub table: WeightTable,
    pub vertices: Vec<VertexAudit>,
}

impl WeightAudit {
    /// `W_v <= k(k-1)` everywhere, with two disjoint `K_k` wherever the
    /// 2/3 slack is used up.
    pub fn passed(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| !v.exceeds_general_bound && !v.unexplained_general)
    }

    /// The stronger even-`k` bound and its structure claim. Reported
    /// separately; vacuous for odd `k`.
    pub fn even_claims_hold(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| !v.exceeds_even_bound && !v.unexplained_even)
    }

    /// One line per vertex: `v W_v(bound) A=..,B=..,C=.. witness-kind`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let [a, b, c] = v.link_classes;
            out.push_str(&format!(
                "{} {}({}) A={a},B={b},C={c} {}\n",
                v.vertex,
                v.weight,
                v.bound,
                v.witness.kind()
            ));
        }
        out
    }
}

/// Parsed form of one `weights` output line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLine {
    pub vertex: usize,
    pub weight: Sixths,
    pub bound: Sixths,
    pub histogram: [usize; 3],
    pub witness_kind: String,
}

pub fn parse_weight_lines(text: &str) -> Result<Vec<WeightLine>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(parse_err(ln, "expected 4 fields"));
        }
        let vertex = toks[0].parse().map_err(|_| parse_err(ln, "bad vertex"))?;
        let (w, bound) = toks[1]
            .strip_suffix(')')
            .and_then(|s| s.split_once('('))
            .ok_or_else(|| parse_err(ln, "bad weight field"))?;
        let mut histogram = [0usize; 3];
        for (slot, part) in histogram.iter_mut().zip(toks[2].split(',')) {
            let (_, count) = part.split_once('=').ok_or_else(|| parse_err(ln, "bad histogram"))?;
            *slot = count.parse().map_err(|_| parse_err(ln, "bad histogram count"))?;
        }
        out.push(WeightLine {
            vertex,
            weight: w.parse().map_err(|_| parse_err(ln, "bad weight"))?,
            bound: bound.parse().map_err(|_| parse_err(ln, "bad bound"))?,
            histogram,
            witness_kind: toks[3].to_string(),
        });
    }
    Ok(out)
}

/// Applies the weight-bound lemma to every vertex of a k-star-free `F`.
pub fn audit_weight_lemma(f: &ThreeGraph, k: usize) -> Result<WeightAudit> {
    if k < 2 {
        return Err(invalid(format!("weight audit needs k >= 2, got {k}")));
    }
    if !is_star_free(f, k) {
        return Err(Error::Precondition(format!("3-graph contains a {k}-star")));
    }
    let table = vertex_weights(f, k)?;
    let ki = k as i64;
    let general = Sixths(6 * ki * (ki - 1));
    let even = Sixths(6 * ki * ki - 9 * ki);
    let bound = if k % 2 == 0 { even } else { general };
    // thresholds of the two "unless" clauses: 2/3 and 1/2 below the bounds
    let general_threshold = general - Sixths(4);
    let even_threshold = even - Sixths::HALF;

    let mut vertices = Vec::with_capacity(f.n());
    for v in 0..f.n() {
        let weight = table.vertex[v];
        let link = named_link(f, v);
        let mut link_classes = [0usize; 3];
        for &(a, b) in link.edges() {
            let idx = match table.classes.class(a, b) {
                PairClass::A => 0,
                PairClass::B => 1,
                PairClass::C => 2,
            };
            link_classes[idx] += 1;
        }
        let mut witness = StructureWitness::None;
        let near_general = weight > general_threshold;
        if near_general {
            witness = detect_two_cliques(&link, &table.classes, k);
        }
        let unexplained_general = near_general && witness == StructureWitness::None;
        let near_even = k % 2 == 0 && weight > even_threshold;
        if near_even && witness == StructureWitness::None {
            witness = detect_clique_plus_critical(&link, k);
            if witness == StructureWitness::None {
                witness = detect_conditions_abc(&link, &table.classes, v, k);
            }
        }
        vertices.push(VertexAudit {
            vertex: v,
            weight,
            bound,
            slack: bound - weight,
            link_classes,
            exceeds_general_bound: weight > general,
            exceeds_even_bound: k % 2 == 0 && weight > even,
            unexplained_general,
            unexplained_even: near_even && witness == StructureWitness::None,
            witness,
        });
    }
    Ok(WeightAudit { k, table, vertices })
}

/// The link of `v` on all `n` vertex ids (v itself isolated), so edges use `F`'s ids.
fn named_link(f: &ThreeGraph, v: usize) -> Graph {
    Graph::new(f.n(), f.edges().iter().filter_map(|t| t.opposite(v))).expect("link edges valid")
}

fn nontrivial_components(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    g.components_within(alive)
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect()
}

fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

fn all_edges_class(g: &Graph, classes: &PairClassTable, want: PairClass) -> bool {
    g.edges().iter().all(|&(a, b)| classes.class(a, b) == want)
}

fn detect_two_cliques(link: &Graph, classes: &PairClassTable, k: usize) -> StructureWitness {
    let comps = nontrivial_components(link, &vec![true; link.n()]);
    if comps.len() == 2
        && comps.iter().all(|c| c.len() == k && is_clique(link, c))
        && all_edges_class(link, classes, PairClass::A)
    {
        return StructureWitness::TwoDisjointCliques {
            parts: [comps[0].clone(), comps[1].clone()],
        };
    }
    StructureWitness::None
}

/// Degrees inside `comp` are `k-1` except exactly one `k-2`; returns that vertex.
fn near_regular_low_vertex(g: &Graph, comp: &[usize], alive: &[bool], k: usize) -> Option<usize> {
    let deg = |v: usize| g.neighbors(v).iter().filter(|&&w| alive[w]).count();
    let low: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) == k - 2).collect();
    let rest_ok = comp.iter().all(|&v| deg(v) == k - 1 || deg(v) == k - 2);
    (rest_ok && low.len() == 1).then(|| low[0])
}

fn detect_clique_plus_critical(link: &Graph, k: usize) -> StructureWitness {
    let alive = vec![true; link.n()];
    let comps = nontrivial_components(link, &alive);
    if comps.len() != 2 {
        return StructureWitness::None;
    }
    for (ci, cj) in [(0, 1), (1, 0)] {
        let (clique, critical) = (&comps[ci], &comps[cj]);
        if clique.len() != k - 1 || !is_clique(link, clique) || critical.len() != k + 1 {
            continue;
        }
        let Some(low) = near_regular_low_vertex(link, critical, &alive, k) else {
            continue;
        };
        if is_factor_critical(&link.induced(critical)) {
            return StructureWitness::CliquePlusCritical {
                clique: clique.clone(),
                critical: critical.clone(),
                low_vertex: low,
            };
        }
    }
    StructureWitness::None
}

/// Subsets of `items` with at most `max` elements, smallest first.
fn small_subsets(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![(Vec::new(), 0usize)];
    for _ in 0..max {
        let mut next = Vec::new();
        for (set, start) in &layer {
            for i in *start..items.len() {
                let mut s: Vec<usize> = set.clone();
                s.push(items[i]);
                out.push(s.clone());
                next.push((s, i + 1));
            }
        }
        layer = next;
    }
    out
}

/// Can `edges` be split into at most `count` stars with at most `cap` edges
/// each? Returns the centers used.
pub fn star_partition(edges: &[(usize, usize)], count: usize, cap: usize) -> Option<Vec<usize>> {
    if edges.is_empty() {
        return Some(Vec::new());
    }
    let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    endpoints.sort_unstable();
    endpoints.dedup();
    for centers in small_subsets(&endpoints, count) {
        if centers.is_empty() || !edges.iter().all(|&(a, b)| centers.contains(&a) || centers.contains(&b)) {
            continue;
        }
        let mut load = vec![0usize; centers.len()];
        if assign_edges(edges, &centers, cap, &mut load) {
            return Some(centers);
        }
    }
    None
}

fn assign_edges(edges: &[(usize, usize)], centers: &[usize], cap: usize, load: &mut [usize]) -> bool {
    let Some((&(a, b), rest)) = edges.split_first() else {
        return true;
    };
    for end in [a, b] {
        if let Some(i) = centers.iter().position(|&c| c == end) {
            if load[i] < cap {
                load[i] += 1;
                if assign_edges(rest, centers, cap, load) {
                    return true;
                }
                load[i] -= 1;
            }
        }
    }
    false
}

fn detect_conditions_abc(link: &Graph, classes: &PairClassTable, v: usize, k: usize) -> StructureWitness {
    let verts = link.non_isolated();
    // (c) every link edge in A, every pair {v, u} in C
    if link.max_degree() > k - 1
        || !all_edges_class(link, classes, PairClass::A)
        || (0..link.n()).any(|u| u != v && classes.class(v, u) != PairClass::C)
    {
        return StructureWitness::None;
    }
    for s in small_subsets(&verts, (k - 2) / 2) {
        let mut alive = vec![true; link.n()];
        for &x in &s {
            alive[x] = false;
        }
        // (a) one nontrivial component, factor-critical, of order 2k-1-2|S|
        let comps = nontrivial_components(link, &alive);
        if comps.len() != 1 || comps[0].len() != 2 * k - 1 - 2 * s.len() {
            continue;
        }
        let f0 = &comps[0];
        if near_regular_low_vertex(link, f0, &alive, k).is_none() || !is_factor_critical(&link.induced(f0)) {
            continue;
        }
        // (b) link - V(F_0) splits into |S| stars of max degree k-1
        let outside: Vec<(usize, usize)> = link
            .edges()
            .iter()
            .copied()
            .filter(|(a, b)| !f0.contains(a) && !f0.contains(b))
            .collect();
        let Some(centers) = star_partition(&outside, s.len(), k - 1) else {
            continue;
        };
        let residual = verts
            .iter()
            .copied()
            .filter(|u| !f0.contains(u) && !centers.contains(u))
            .collect();
        return StructureWitness::ConditionsAbc {
            s,
            f0: f0.clone(),
            star_centers: centers,
            residual,
        };
    }
    StructureWitness::None
}

/// Re-checks a witness against the link of `v` from scratch.
pub fn verify_witness(f: &ThreeGraph, k: usize, v: usize, witness: &StructureWitness) -> bool {
    let link = named_link(f, v);
    let Ok(classes) = classify_pairs(f, k) else {
        return false;
    };
    let covered = |parts: &[&Vec<usize>]| {
        let mut all: Vec<usize> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        all.sort_unstable();
        all == link.non_isolated()
    };
    match witness {
        StructureWitness::None => true,
        StructureWitness::TwoDisjointCliques { parts } => {
            covered(&[&parts[0], &parts[1]])
                && parts.iter().all(|p| p.len() == k && is_clique(&link, p))
                && link.edge_count() == k * (k - 1)
                && all_edges_class(&link, &classes, PairClass::A)
        }
        StructureWitness::CliquePlusCritical {
            clique,
            critical,
            low_vertex,
        } => {
            let sub = link.induced(critical);
            let mut degs = sub.degrees();
            degs.sort_unstable();
            let mut want = vec![k - 1; k + 1];
            want[0] = k - 2;
            covered(&[clique, critical])
                && clique.len() == k - 1
                && is_clique(&link, clique)
                && is_factor_critical(&sub)
                && degs == want
                && link.degree(*low_vertex) == k - 2
                && link.edge_count() == (k - 1) * (k - 2) / 2 + sub.edge_count()
        }
        StructureWitness::ConditionsAbc { s, f0, star_centers, .. } => {
            let rest = link.remove_vertices(s);
            let f0_local: Vec<usize> = f0
                .iter()
                .map(|&x| rest.labels().iter().position(|&l| l == x).expect("f0 outside S"))
                .collect();
            let sub = rest.induced(&f0_local);
            let mut degs = sub.degrees();
            degs.sort_unstable();
            let mut want = vec![k - 1; f0.len()];
            want[0] = k - 2;
            let outside: Vec<(usize, usize)> = link
                .edges()
                .iter()
                .copied()
                .filter(|(a, b)| !f0.contains(a) && !f0.contains(b))
                .collect();
            let rest_non_isolated: Vec<usize> = rest.non_isolated().iter().map(|&i| rest.labels()[i]).collect();
            f0.len() == 2 * k - 1 - 2 * s.len()
                && rest_non_isolated.iter().all(|x| f0.contains(x))
                && is_factor_critical(&sub)
                && degs == want
                && star_centers.len() <= s.len()
                && assign_edges(&outside, star_centers, k - 1, &mut vec![0; star_centers.len()])
                && all_edges_class(&link, &classes, PairClass::A)
                && (0..link.n()).all(|u| u == v || classes.class(v, u) == PairClass::C)
                && link.max_degree() <= k - 1
        }
    }
}

/// Random `k`-star-free 3-graph: keep each triple with probability
/// `density`, then delete a random ray of some `k`-star until none is left.
pub fn random_star_free(n: usize, k: usize, density: f64, seed: u64) -> Result<ThreeGraph> {
    use rand::{Rng, SeedableRng};
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density must lie in [0,1], got {density}")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let full = ThreeGraph::complete(n)?;
    let kept: Vec<Triple> = full.edges().iter().copied().filter(|_| rng.random_bool(density)).collect();
    let mut f = ThreeGraph::from_triples(n, kept)?;
    while let Some(w) = find_k_star(&f, k) {
        let ray = w.rays[rng.random_range(0..w.rays.len())];
        f = f.remove_edges(&[ray])?;
    }
    Ok(f)
}
