//! Surjective edge-colorings of `K_n^3`, rainbow stars, good pairs and the
//! lower-bound coloring built from an extremal star-free 3-graph.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::constructions;
use crate::error::{invalid, parse_err, Result};
use crate::hypergraph::{binomial, data_lines, parse_fields, rank_sorted, unrank_unchecked, ThreeGraph, Triple};
use crate::star::StarWitness;

/// A color for every triple of `K_n^3`, indexed by colex rank, using each of
/// `0..t` at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    t: usize,
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(n: usize, colors: Vec<usize>) -> Result<Self> {
        let want = binomial(n as u64, 3) as usize;
        if n < 3 {
            return Err(invalid(format!("colorings need n >= 3, got {n}")));
        }
        if colors.len() != want {
            return Err(invalid(format!("expected {want} colors for n={n}, got {}", colors.len())));
        }
        let t = colors.iter().max().map_or(0, |&m| m + 1);
        let mut seen = vec![false; t];
        for &c in &colors {
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(invalid(format!("coloring is not surjective: color {missing} of 0..{t} unused")));
        }
        Ok(EdgeColoring { n, t, colors })
    }

    pub fn monochromatic(n: usize) -> Result<Self> {
        EdgeColoring::new(n, vec![0; binomial(n as u64, 3) as usize])
    }

    pub fn rainbow(n: usize) -> Result<Self> {
        EdgeColoring::new(n, (0..binomial(n as u64, 3) as usize).collect())
    }

    /// Distinct colors on the edges of `g` (colex order) and one extra color
    /// on every other triple.
    pub fn rainbow_on(g: &ThreeGraph) -> Result<Self> {
        let total = binomial(g.n() as u64, 3) as usize;
        let extra = g.edge_count();
        let mut colors = vec![extra; total];
        for (c, t) in g.edges().iter().enumerate() {
            colors[t.rank() as usize] = c;
        }
        EdgeColoring::new(g.n(), colors)
    }

    /// Relabels colors by first occurrence in colex order.
    pub fn canonical(n: usize, raw: &[usize]) -> Result<Self> {
        let mut map = std::collections::HashMap::new();
        let colors = raw
            .iter()
            .map(|&c| {
                let next = map.len();
                *map.entry(c).or_insert(next)
            })
            .collect();
        EdgeColoring::new(n, colors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color_count(&self) -> usize {
        self.t
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, t: &Triple) -> usize {
        self.colors[t.rank() as usize]
    }

    pub fn color_of(&self, a: usize, b: usize, c: usize) -> usize {
        let mut v = [a, b, c];
        v.sort_unstable();
        self.colors[rank_sorted(v[0], v[1], v[2]) as usize]
    }

    /// `n t`, then one `u v w c` line per triple in colex order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.t);
        for (r, &c) in self.colors.iter().enumerate() {
            out.push_str(&format!("{} {c}\n", unrank_unchecked(r as u64)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = data_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "empty coloring"))?;
        let [n, t] = parse_fields::<2>(header, ln)?;
        if n < 3 {
            return Err(parse_err(ln, "n must be at least 3"));
        }
        let total = binomial(n as u64, 3) as usize;
        let mut colors = Vec::with_capacity(total);
        for (ln, line) in lines {
            let [u, v, w, c] = parse_fields::<4>(line, ln)?;
            let r = colors.len();
            if r >= total {
                return Err(parse_err(ln, "more triples than C(n,3)"));
            }
            if unrank_unchecked(r as u64).vertices() != [u, v, w] {
                return Err(parse_err(ln, format!("expected triple {} at rank {r}", unrank_unchecked(r as u64))));
            }
            if c >= t {
                return Err(parse_err(ln, format!("color {c} outside 0..{t}")));
            }
            colors.push(c);
        }
        if colors.len() != total {
            return Err(parse_err(0, format!("expected {total} triples, got {}", colors.len())));
        }
        let out = EdgeColoring::new(n, colors)?;
        if out.t != t {
            return Err(parse_err(1, format!("header says {t} colors, {} used", out.t)));
        }
        Ok(out)
    }
}

/// `Z_c(U)`: colors on triples containing `U`, for `|U|` of 1 or 2.
pub fn zc(c: &EdgeColoring, u: &[usize]) -> Result<BTreeSet<usize>> {
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !(1..=2).contains(&u.len()) || sorted.len() != u.len() {
        return Err(invalid(format!("zc needs one or two distinct vertices, got {u:?}")));
    }
    if let Some(&bad) = sorted.iter().find(|&&v| v >= c.n) {
        return Err(invalid(format!("vertex {bad} out of range for n={}", c.n)));
    }
    let mut out = BTreeSet::new();
    match sorted[..] {
        [v] => {
            for a in 0..c.n {
                for b in a + 1..c.n {
                    if a != v && b != v {
                        out.insert(c.color_of(v, a, b));
                    }
                }
            }
        }
        [a, b] => {
            for w in (0..c.n).filter(|&w| w != a && w != b) {
                out.insert(c.color_of(a, b, w));
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

pub const GOOD_PAIR_FACTOR: usize = 3;

pub fn default_good_pair_count(k: usize) -> usize {
    2 * k + 6
}

/// All pairs (colex order) with `z_c <= threshold`.
pub fn good_pairs_with_threshold(c: &EdgeColoring, threshold: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..c.n {
        for a in 0..b {
            if zc(c, &[a, b]).expect("valid pair").len() <= threshold {
                out.push((a, b));
            }
        }
    }
    out
}

/// Pairs with `z_c <= 3k`.
pub fn good_pairs(c: &EdgeColoring, k: usize) -> Vec<(usize, usize)> {
    good_pairs_with_threshold(c, GOOD_PAIR_FACTOR * k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPairReport {
    pub k: usize,
    pub threshold: usize,
    pub pairs: Vec<(usize, usize)>,
    /// `C_Q`: colors on triples containing some pair of `Q`.
    pub colors: BTreeSet<usize>,
    pub q: usize,
}

impl GoodPairReport {
    pub fn to_text(&self) -> String {
        let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!(
            "k={} threshold={} count={} q={} pairs={}\n",
            self.k,
            self.threshold,
            self.pairs.len(),
            self.q,
            pairs.join(",")
        )
    }
}

/// Greedily picks `count` pairwise-disjoint good pairs in colex order; `None`
/// when the greedy pass runs out.
pub fn disjoint_good_pairs_with(
    c: &EdgeColoring,
    k: usize,
    count: usize,
    threshold: usize,
) -> Result<Option<GoodPairReport>> {
    if k < 2 || count == 0 {
        return Err(invalid(format!("good pairs need k >= 2 and count >= 1, got k={k} count={count}")));
    }
    let mut used = vec![false; c.n];
    let mut pairs = Vec::new();
    let mut colors = BTreeSet::new();
    for (a, b) in good_pairs_with_threshold(c, threshold) {
        if pairs.len() == count {
            break;
        }
        if used[a] || used[b] {
            continue;
        }
        used[a] = true;
        used[b] = true;
        colors.extend(zc(c, &[a, b])?);
        pairs.push((a, b));
    }
    if pairs.len() < count {
        return Ok(None);
    }
    Ok(Some(GoodPairReport {
        k,
        threshold,
        q: colors.len(),
        pairs,
        colors,
    }))
}

pub fn disjoint_good_pairs(c: &EdgeColoring, k: usize, count: usize) -> Result<Option<GoodPairReport>> {
    disjoint_good_pairs_with(c, k, count, GOOD_PAIR_FACTOR * k)
}

/// An `s`-star whose triples carry `s` distinct colors, minimal in (core,
/// colex pair sequence) order.
pub fn find_rainbow_star(c: &EdgeColoring, s: usize) -> Result<Option<StarWitness>> {
    if s < 2 {
        return Err(invalid(format!("rainbow stars need s >= 2, got {s}")));
    }
    if c.n < 2 * s + 1 {
        return Err(invalid(format!("no {s}-star fits on {} vertices", c.n)));
    }
    if c.n > 64 {
        return Err(invalid(format!("rainbow search supports n <= 64, got {}", c.n)));
    }
    Ok((0..c.n).into_par_iter().find_map_first(|v| rainbow_star_at(c, s, v)))
}

fn rainbow_star_at(c: &EdgeColoring, s: usize, v: usize) -> Option<StarWitness> {
    // link pairs of v in colex order with their colors
    let mut pairs = Vec::with_capacity(c.n * c.n / 2);
    for b in 0..c.n {
        for a in 0..b {
            if a != v && b != v {
                pairs.push((a, b, c.color_of(v, a, b)));
            }
        }
    }
    let distinct: BTreeSet<usize> = pairs.iter().map(|p| p.2).collect();
    if distinct.len() < s {
        return None;
    }
    let mut chosen = Vec::with_capacity(s);
    let mut search = RainbowSearch {
        pairs: &pairs,
        n: c.n,
        s,
        used_colors: Vec::with_capacity(s),
        seen: vec![usize::MAX; c.t],
        stamp: 0,
    };
    if search.go(0, 1u64 << v, &mut chosen) {
        let rays = chosen
            .iter()
            .map(|&i| {
                let (a, b, _) = pairs[i];
                Triple::new(v, a, b).expect("distinct")
            })
            .collect();
        return Some(StarWitness { core: v, rays });
    }
    None
}

struct RainbowSearch<'a> {
    pairs: &'a [(usize, usize, usize)],
    n: usize,
    s: usize,
    used_colors: Vec<usize>,
    // scratch for counting distinct available colors
    seen: Vec<usize>,
    stamp: usize,
}

impl RainbowSearch<'_> {
    fn go(&mut self, from: usize, used: u64, chosen: &mut Vec<usize>) -> bool {
        let need = self.s - chosen.len();
        if need == 0 {
            return true;
        }
        if self.n - (used.count_ones() as usize) < 2 * need || !self.enough_colors(from, used, need) {
            return false;
        }
        for i in from..self.pairs.len() {
            let (a, b, col) = self.pairs[i];
            if used & (1 << a | 1 << b) != 0 || self.used_colors.contains(&col) {
                continue;
            }
            chosen.push(i);
            self.used_colors.push(col);
            if self.go(i + 1, used | 1 << a | 1 << b, chosen) {
                return true;
            }
            self.used_colors.pop();
            chosen.pop();
        }
        false
    }

    /// At least `need` unused colors occur on still-available pairs.
    fn enough_colors(&mut self, from: usize, used: u64, need: usize) -> bool {
        self.stamp += 1;
        let mut count = 0;
        for &(a, b, col) in &self.pairs[from..] {
            if used & (1 << a | 1 << b) == 0 && !self.used_colors.contains(&col) && self.seen[col] != self.stamp {
                self.seen[col] = self.stamp;
                count += 1;
                if count >= need {
                    return true;
                }
            }
        }
        false
    }
}

/// The extremal `k`-star-free 3-graph rainbow-colored, with one extra color
/// on all other triples.
pub fn lower_bound_coloring(n: usize, k: usize) -> Result<EdgeColoring> {
    if k < 3 {
        return Err(invalid(format!("lower-bound coloring needs k >= 3, got {k}")));
    }
    let g = constructions::construct(n, k)
        .ok_or_else(|| invalid(format!("no extremal construction for n={n} k={k}")))??;
    EdgeColoring::rainbow_on(&g)
}

/// The colex-least triple of each color outside `excluded`.
pub fn rainbow_representative_subgraph(c: &EdgeColoring, excluded: &BTreeSet<usize>) -> Result<ThreeGraph> {
    if let Some(&bad) = excluded.iter().find(|&&x| x >= c.t) {
        return Err(invalid(format!("excluded color {bad} outside 0..{}", c.t)));
    }
    let mut first = vec![None; c.t];
    for (r, &col) in c.colors.iter().enumerate() {
        if first[col].is_none() {
            first[col] = Some(r as u64);
        }
    }
    ThreeGraph::from_triples(
        c.n,
        first
            .iter()
            .enumerate()
            .filter(|(col, _)| !excluded.contains(col))
            .map(|(_, r)| unrank_unchecked(r.expect("surjective"))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(EdgeColoring::new(4, vec![0, 2, 2, 0]).is_err());
        assert!(EdgeColoring::new(4, vec![0, 1, 1]).is_err());
        let c = EdgeColoring::canonical(4, &[5, 5, 9, 5]).unwrap();
        assert_eq!(c.colors(), &[0, 0, 1, 0]);
        assert_eq!(c.color_count(), 2);
    }

    #[test]
    fn text_roundtrip() {
        let c = EdgeColoring::canonical(5, &[3, 1, 1, 0, 2, 2, 3, 0, 1, 4]).unwrap();
        let text = c.to_text();
        assert!(text.starts_with("5 5\n0 1 2 0\n0 1 3 1\n"));
        assert_eq!(EdgeColoring::parse(&text).unwrap(), c);
        assert!(EdgeColoring::parse("4 2\n0 1 2 0\n0 1 3 0\n0 2 3 0\n1 2 3 0\n").is_err());
        assert!(EdgeColoring::parse("4 1\n0 1 2 0\n0 2 3 0\n0 1 3 0\n1 2 3 0\n").is_err());
    }

    #[test]
    fn zc_examples() {
        let mono = EdgeColoring::monochromatic(6).unwrap();
        assert_eq!(zc(&mono, &[0, 1]).unwrap().len(), 1);
        let rb = EdgeColoring::rainbow(6).unwrap();
        assert_eq!(zc(&rb, &[2, 4]).unwrap().len(), 4);
        assert_eq!(zc(&rb, &[2]).unwrap().len(), 10);
        assert!(zc(&rb, &[0, 1, 2]).is_err());
        assert!(zc(&rb, &[]).is_err());
        let lb = lower_bound_coloring(20, 3).unwrap();
        assert_eq!(zc(&lb, &[10, 11]).unwrap().len(), 1);
    }

    #[test]
    fn good_pair_examples() {
        let mono = EdgeColoring::monochromatic(24).unwrap();
        let r = disjoint_good_pairs(&mono, 3, 12).unwrap().unwrap();
        assert_eq!(r.pairs.len(), 12);
        assert_eq!(r.q, 1);
        let rb = EdgeColoring::rainbow(14).unwrap();
        assert!(good_pairs(&rb, 3).is_empty());
        assert_eq!(disjoint_good_pairs(&rb, 3, 1).unwrap(), None);
    }

    #[test]
    fn rainbow_star_examples() {
        let rb = EdgeColoring::rainbow(7).unwrap();
        let w = find_rainbow_star(&rb, 3).unwrap().unwrap();
        assert_eq!(w.core, 0);
        assert!(w.is_valid_in(&ThreeGraph::complete(7).unwrap()));
        let mono = EdgeColoring::monochromatic(9).unwrap();
        assert_eq!(find_rainbow_star(&mono, 2).unwrap(), None);
        assert!(find_rainbow_star(&rb, 4).is_err());
    }

    #[test]
    fn lower_bound_small() {
        let c = lower_bound_coloring(9, 3).unwrap();
        assert_eq!(c.color_count(), 3 * 6 + 2 + 1);
        assert_eq!(find_rainbow_star(&c, 4).unwrap(), None);
        assert!(lower_bound_coloring(9, 2).is_err());
    }

    #[test]
    fn representatives() {
        let mono = EdgeColoring::monochromatic(5).unwrap();
        let g = rainbow_representative_subgraph(&mono, &BTreeSet::new()).unwrap();
        assert_eq!(g.edges(), &[Triple::new(0, 1, 2).unwrap()]);
        let rb = EdgeColoring::rainbow(5).unwrap();
        assert_eq!(rainbow_representative_subgraph(&rb, &BTreeSet::new()).unwrap().edge_count(), 10);
        assert!(rainbow_representative_subgraph(&rb, &BTreeSet::from([10])).is_err());
    }
}
