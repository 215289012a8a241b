//! Exact maximum color count of a surjective coloring of `K_n^3` without a
//! rainbow `s`-star, by branch-and-bound over color partitions.
//!
//! Triples are colored in colex order. A copy of the star is checked when its
//! last triple is colored: if its other `s-1` triples carry distinct colors,
//! the last one must repeat one of them. Triples that open a new color are the
//! colex-least representatives of their classes, so they form a rainbow
//! subgraph which must itself be `s`-star-free; that caps each vertex at
//! [`max_edges_with_matching_number`]`(n-1, s-1)` representatives and gives
//! the degree part of the bound.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::coloring::{lower_bound_coloring, EdgeColoring};
use crate::constructions::f_formula;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial, rank_sorted, unrank_unchecked};
use crate::search::{in_pool, Meter, SearchConfig, SearchOutcome, SearchStatus};
use crate::star::{exact_f, exact_f_cap, max_edges_with_matching_number};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCopy {
    pub core: usize,
    pub pairs: Vec<(usize, usize)>,
    /// Colex ranks of the `s` triples, ascending.
    pub triples: Vec<usize>,
}

/// Every copy of the `s`-star in `K_n^3`.
#[derive(Clone, Debug)]
pub struct StarCopyIndex {
    pub n: usize,
    pub s: usize,
    pub copies: Vec<StarCopy>,
    /// Copies containing each triple, by colex rank.
    pub incidence: Vec<Vec<usize>>,
}

impl StarCopyIndex {
    /// Copies whose highest-ranked triple is `t`.
    pub fn closing_at(&self, t: usize) -> impl Iterator<Item = &StarCopy> + '_ {
        self.incidence[t]
            .iter()
            .map(move |&i| &self.copies[i])
            .filter(move |c| *c.triples.last().expect("s >= 2") == t)
    }

    /// A copy whose `s` triples have pairwise distinct colors.
    pub fn rainbow_copy(&self, c: &EdgeColoring) -> Option<&StarCopy> {
        self.copies.iter().find(|copy| {
            let mut cols: Vec<usize> = copy.triples.iter().map(|&t| c.colors()[t]).collect();
            cols.sort_unstable();
            cols.windows(2).all(|w| w[0] != w[1])
        })
    }
}

pub fn enumerate_star_copies(n: usize, s: usize) -> Result<StarCopyIndex> {
    if n < 3 || s < 2 {
        return Err(invalid(format!("star copies need n >= 3 and s >= 2, got n={n} s={s}")));
    }
    let total = binomial(n as u64, 3) as usize;
    let mut index = StarCopyIndex {
        n,
        s,
        copies: Vec::new(),
        incidence: vec![Vec::new(); total],
    };
    for core in 0..n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|b| (0..b).map(move |a| (a, b)))
            .filter(|&(a, b)| a != core && b != core)
            .collect();
        let mut chosen = Vec::with_capacity(s);
        collect_matchings(&pairs, 0, 0, s, &mut chosen, &mut |m| {
            let mut triples: Vec<usize> = m
                .iter()
                .map(|&(a, b)| {
                    let mut v = [core, a, b];
                    v.sort_unstable();
                    rank_sorted(v[0], v[1], v[2]) as usize
                })
                .collect();
            triples.sort_unstable();
            index.copies.push(StarCopy {
                core,
                pairs: m.to_vec(),
                triples,
            });
        });
    }
    for (i, copy) in index.copies.iter().enumerate() {
        for &t in &copy.triples {
            index.incidence[t].push(i);
        }
    }
    Ok(index)
}

fn collect_matchings(
    pairs: &[(usize, usize)],
    from: usize,
    used: u64,
    need: usize,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut impl FnMut(&[(usize, usize)]),
) {
    if chosen.len() == need {
        emit(chosen);
        return;
    }
    for i in from..pairs.len() {
        let (a, b) = pairs[i];
        if used & (1 << a | 1 << b) != 0 {
            continue;
        }
        chosen.push((a, b));
        collect_matchings(pairs, i + 1, used | 1 << a | 1 << b, need, chosen, emit);
        chosen.pop();
    }
}

/// Largest `n` accepted without `long_run` for a given `s`; `None` means
/// every nontrivial instance needs `long_run`.
pub fn ar_cap(s: usize) -> Option<usize> {
    (s == 2).then_some(7)
}

const HARD_LIMIT: usize = 12;

/// Rainbow-`s`-star-free coloring to start from, and its color count.
fn seed_coloring(n: usize, s: usize) -> Result<EdgeColoring> {
    let k = s - 1;
    if k >= 3 {
        if let Ok(c) = lower_bound_coloring(n, k) {
            return Ok(c);
        }
    }
    if k == 2 && n <= exact_f_cap(2) {
        let out = exact_f(n, 2, &SearchConfig::default())?;
        if out.witness.edge_count() < binomial(n as u64, 3) as usize {
            return EdgeColoring::rainbow_on(&out.witness);
        }
    }
    EdgeColoring::monochromatic(n)
}

pub fn max_colors_no_rainbow(n: usize, s: usize, cfg: &SearchConfig) -> Result<SearchOutcome<EdgeColoring>> {
    if n < 3 || s < 2 {
        return Err(invalid(format!("ar search needs n >= 3 and s >= 2, got n={n} s={s}")));
    }
    if n < 2 * s + 1 {
        return Ok(SearchOutcome {
            value: binomial(n as u64, 3) as usize,
            status: SearchStatus::TrivialAllRainbow,
            witness: EdgeColoring::rainbow(n)?,
            stats: Default::default(),
        });
    }
    let within_cap = ar_cap(s).is_some_and(|cap| n <= cap);
    if n > HARD_LIMIT || (!cfg.long_run && !within_cap) {
        return Err(Error::SizeLimit(format!(
            "ar search at n={n} s={s} is outside the default caps (s=2, n<=7); use long-run mode (n<={HARD_LIMIT})"
        )));
    }
    let copies = enumerate_star_copies(n, s)?;
    let seed = seed_coloring(n, s)?;
    if copies.rainbow_copy(&seed).is_some() {
        return Err(Error::Consistency {
            what: "seed coloring contains a rainbow star".into(),
            expected: 0,
            actual: 1,
        });
    }
    let search = ColorSearch::new(n, s, &copies, cfg, seed.color_count());
    let root_bound = search.root_bound();
    let pool = if cfg.symmetry { 0 } else { root_bound };
    let mut root = State::new(search.total, n, pool);

    let best = if cfg.threads <= 1 {
        let mut found = None;
        search.dfs(&mut root, 0, &mut found);
        found
    } else {
        let mut tasks = Vec::new();
        search.frontier(&mut root, 0, frontier_depth(search.total), &mut tasks);
        in_pool(cfg.threads, || {
            tasks
                .into_par_iter()
                .map(|mut st| {
                    let mut found = None;
                    let at = st.assigned;
                    search.dfs(&mut st, at, &mut found);
                    found
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        // most colors, earliest task on ties
        .fold(None, |acc: Option<(usize, Vec<usize>)>, cand| match acc {
            Some(a) if a.0 >= cand.0 => Some(a),
            _ => Some(cand),
        })
    };

    let status = if search.meter.expired() {
        SearchStatus::LowerBoundOnly
    } else {
        SearchStatus::Proven
    };
    let witness = match best {
        Some((count, raw)) if count > seed.color_count() => EdgeColoring::canonical(n, &raw)?,
        _ => seed,
    };
    Ok(SearchOutcome {
        value: witness.color_count(),
        status,
        witness,
        stats: search.meter.stats(),
    })
}

fn frontier_depth(total: usize) -> usize {
    (total / 3).clamp(1, 8)
}

#[derive(Clone)]
struct State {
    color: Vec<usize>,
    assigned: usize,
    used: usize,
    // representatives (triples opening a color) through each vertex
    rep_degree: Vec<usize>,
    // label pool when symmetry pruning is off
    free_labels: Vec<usize>,
    label_used: Vec<bool>,
}

impl State {
    fn new(total: usize, n: usize, pool: usize) -> Self {
        State {
            color: vec![usize::MAX; total],
            assigned: 0,
            used: 0,
            rep_degree: vec![0; n],
            free_labels: (0..pool).collect(),
            label_used: vec![false; pool.max(1)],
        }
    }
}

struct ColorSearch<'a> {
    n: usize,
    total: usize,
    triples: Vec<[usize; 3]>,
    copies: &'a StarCopyIndex,
    // closing[t]: copies whose last triple is t
    closing: Vec<Vec<usize>>,
    // remaining[t][v]: triples of rank >= t through v
    remaining: Vec<Vec<usize>>,
    cap: usize,
    best: AtomicUsize,
    meter: Meter,
    canonical: bool,
}

impl<'a> ColorSearch<'a> {
    fn new(n: usize, s: usize, copies: &'a StarCopyIndex, cfg: &SearchConfig, incumbent: usize) -> Self {
        let total = binomial(n as u64, 3) as usize;
        let triples: Vec<[usize; 3]> = (0..total as u64).map(|r| unrank_unchecked(r).vertices()).collect();
        let mut closing = vec![Vec::new(); total];
        for (i, c) in copies.copies.iter().enumerate() {
            closing[*c.triples.last().expect("s >= 2")].push(i);
        }
        let mut remaining = vec![vec![0usize; n]; total + 1];
        for t in (0..total).rev() {
            remaining[t] = remaining[t + 1].clone();
            for &v in &triples[t] {
                remaining[t][v] += 1;
            }
        }
        ColorSearch {
            n,
            total,
            triples,
            copies,
            closing,
            remaining,
            cap: max_edges_with_matching_number(n - 1, s - 1),
            best: AtomicUsize::new(incumbent),
            meter: Meter::new(cfg.budget),
            canonical: cfg.symmetry,
        }
    }

    fn root_bound(&self) -> usize {
        let st = State::new(self.total, self.n, 0);
        self.bound(&st, 0)
    }

    fn bound(&self, st: &State, t: usize) -> usize {
        let room: usize = (0..self.n)
            .map(|v| self.cap.saturating_sub(st.rep_degree[v]).min(self.remaining[t][v]))
            .sum();
        st.used + (self.total - t).min(room / 3)
    }

    /// Colors allowed at `t` among those already open, or `None` if unconstrained.
    fn forced(&self, st: &State, t: usize) -> Option<Vec<usize>> {
        let mut allowed: Option<Vec<usize>> = None;
        for &ci in &self.closing[t] {
            let copy = &self.copies.copies[ci];
            let mut cols: Vec<usize> = copy.triples[..copy.triples.len() - 1]
                .iter()
                .map(|&u| st.color[u])
                .collect();
            cols.sort_unstable();
            if cols.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            allowed = Some(match allowed {
                None => cols,
                Some(prev) => prev.into_iter().filter(|c| cols.binary_search(c).is_ok()).collect(),
            });
            if allowed.as_ref().is_some_and(|a| a.is_empty()) {
                break;
            }
        }
        allowed
    }

    fn open_colors(&self, st: &State) -> Vec<usize> {
        if self.canonical {
            (0..st.used).collect()
        } else {
            (0..st.label_used.len()).filter(|&c| st.label_used[c]).collect()
        }
    }

    /// Choices at `t` in branch order: a fresh color first, then open colors ascending.
    fn choices(&self, st: &State, t: usize) -> Vec<Option<usize>> {
        match self.forced(st, t) {
            Some(allowed) => allowed.into_iter().map(Some).collect(),
            None => {
                let mut out: Vec<Option<usize>> = Vec::new();
                if self.canonical {
                    out.push(None);
                } else {
                    out.extend(st.free_labels.iter().map(|&l| Some(l)));
                }
                out.extend(self.open_colors(st).into_iter().map(Some));
                out
            }
        }
    }

    fn apply(&self, st: &mut State, t: usize, choice: Option<usize>) -> (usize, bool) {
        let (col, fresh) = match choice {
            None => (st.used, true),
            Some(c) if !self.canonical && !st.label_used[c] => (c, true),
            Some(c) => (c, false),
        };
        st.color[t] = col;
        st.assigned = t + 1;
        if fresh {
            st.used += 1;
            for &v in &self.triples[t] {
                st.rep_degree[v] += 1;
            }
            if !self.canonical {
                st.label_used[col] = true;
                st.free_labels.retain(|&l| l != col);
            }
        }
        (col, fresh)
    }

    fn undo(&self, st: &mut State, t: usize, col: usize, fresh: bool) {
        st.color[t] = usize::MAX;
        st.assigned = t;
        if fresh {
            st.used -= 1;
            for &v in &self.triples[t] {
                st.rep_degree[v] -= 1;
            }
            if !self.canonical {
                st.label_used[col] = false;
                let pos = st.free_labels.partition_point(|&l| l < col);
                st.free_labels.insert(pos, col);
            }
        }
    }

    fn dfs(&self, st: &mut State, t: usize, found: &mut Option<(usize, Vec<usize>)>) {
        if !self.meter.tick() {
            return;
        }
        if self.bound(st, t) <= self.best.load(Ordering::Relaxed) {
            return;
        }
        if t == self.total {
            self.best.fetch_max(st.used, Ordering::Relaxed);
            *found = Some((st.used, st.color.clone()));
            return;
        }
        for choice in self.choices(st, t) {
            let (col, fresh) = self.apply(st, t, choice);
            if !fresh || st.rep_degree.iter().all(|&d| d <= self.cap) {
                self.dfs(st, t + 1, found);
            }
            self.undo(st, t, col, fresh);
        }
    }

    fn frontier(&self, st: &mut State, t: usize, depth: usize, out: &mut Vec<State>) {
        if depth == 0 || t == self.total {
            out.push(st.clone());
            return;
        }
        if self.bound(st, t) <= self.best.load(Ordering::Relaxed) {
            return;
        }
        for choice in self.choices(st, t) {
            let (col, fresh) = self.apply(st, t, choice);
            if !fresh || st.rep_degree.iter().all(|&d| d <= self.cap) {
                self.frontier(st, t + 1, depth - 1, out);
            }
            self.undo(st, t, col, fresh);
        }
    }
}

/// Which published statement, if any, covers `ar_3(n, F_s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `s = 2`: the value is 2 for every `n`.
    Immediate,
    /// `s = 3`, `n >= 20`.
    SmallStar,
    /// `s >= 4` above the general threshold.
    General,
    BelowThreshold,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Immediate => "immediate",
            Regime::SmallStar => "s3-regime",
            Regime::General => "general-regime",
            Regime::BelowThreshold => "below-threshold",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ArReport {
    pub outcome: SearchOutcome<EdgeColoring>,
    /// `value + 1`; exact only when the outcome is.
    pub ar: usize,
    /// `f(n, s-1) + 2`, when the closed form is defined.
    pub formula: Option<i64>,
    /// The value a theorem asserts for this `(n, s)`, if any.
    pub reference: Option<i64>,
    pub regime: Regime,
}

impl ArReport {
    /// `agree`, `disagree`, or `no-claim` when no theorem covers the instance
    /// or the search did not close.
    pub fn agreement(&self) -> &'static str {
        match self.reference {
            Some(r) if self.outcome.status.is_exact() => {
                if r == self.ar as i64 {
                    "agree"
                } else {
                    "disagree"
                }
            }
            _ => "no-claim",
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "value={} ar={} status={} nodes={} seconds={:.3}",
            self.outcome.value, self.ar, self.outcome.status, self.outcome.stats.nodes, self.outcome.stats.seconds
        )
    }
}

/// Reference values: 2 for `s = 2`; the mod-4 formula for `s = 3`, `n >= 20`;
/// `f(n,s-1) + 2` above the general threshold.
pub fn reference_ar(n: usize, s: usize) -> (Option<i64>, Regime) {
    let k = s - 1;
    if s == 2 {
        return (Some(2), Regime::Immediate);
    }
    let Ok(f) = f_formula(n, k) else {
        return (None, Regime::BelowThreshold);
    };
    if s == 3 {
        if n >= 20 {
            let extra = if n % 4 <= 1 { 2 } else { 3 };
            return (Some(f.value + extra), Regime::SmallStar);
        }
        return (None, Regime::BelowThreshold);
    }
    let kf = k as f64;
    let threshold = 2.5 * kf.powi(3) + 7.5 * kf * kf + 26.0 * kf - 3.0;
    if (n as f64) > threshold {
        (Some(f.value + 2), Regime::General)
    } else {
        (None, Regime::BelowThreshold)
    }
}

pub fn ar_exact(n: usize, s: usize, cfg: &SearchConfig) -> Result<ArReport> {
    let outcome = max_colors_no_rainbow(n, s, cfg)?;
    let (reference, regime) = reference_ar(n, s);
    let formula = if s >= 3 {
        f_formula(n, s - 1).ok().map(|f| f.value + 2)
    } else {
        None
    };
    Ok(ArReport {
        ar: outcome.value + 1,
        outcome,
        formula,
        reference,
        regime,
    })
}
