//! Closed forms for `f(n,k)` and the extremal k-star-free 3-graphs.
//!
//! Vertex roles are fixed so outputs are reproducible: in the odd
//! construction `S = 0..k` and `R = k..2k`; in the even construction
//! `x_1..x_{k-1} = 0..k-1`, `y_1..y_{k-1} = k-1..2k-2` and `z = 2k-2`,
//! so `V(G_k) = 0..2k-1`. Remaining vertices are free.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{binomial, ThreeGraph, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Odd,
    Even,
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionKind::Odd => "odd",
            ConstructionKind::Even => "even",
        })
    }
}

impl std::str::FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(ConstructionKind::Odd),
            "even" => Ok(ConstructionKind::Even),
            other => Err(invalid(format!("unknown construction kind {other:?}"))),
        }
    }
}

/// Order, parameter and role layout of one extremal construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub n: usize,
    pub k: usize,
    pub kind: ConstructionKind,
}

impl ConstructionSpec {
    pub fn new(n: usize, k: usize, kind: ConstructionKind) -> Result<Self> {
        match kind {
            ConstructionKind::Odd if k < 3 || k % 2 == 0 => {
                Err(invalid(format!("odd construction needs odd k >= 3, got {k}")))
            }
            ConstructionKind::Odd if n < 2 * k => Err(invalid(format!("odd construction needs n >= 2k, got n={n} k={k}"))),
            ConstructionKind::Even if k < 4 || k % 2 == 1 => {
                Err(invalid(format!("even construction needs even k >= 4, got {k}")))
            }
            ConstructionKind::Even if n < 2 * k - 1 => {
                Err(invalid(format!("even construction needs n >= 2k-1, got n={n} k={k}")))
            }
            _ => Ok(ConstructionSpec { n, k, kind }),
        }
    }

    pub fn s_set(&self) -> std::ops::Range<usize> {
        0..self.k
    }

    pub fn r_set(&self) -> std::ops::Range<usize> {
        self.k..2 * self.k
    }

    /// `x_i` for `1 <= i <= k-1`.
    pub fn x(&self, i: usize) -> usize {
        i - 1
    }

    pub fn y(&self, i: usize) -> usize {
        self.k - 2 + i
    }

    pub fn z(&self) -> usize {
        2 * self.k - 2
    }

    /// The role header written above a serialized construction.
    pub fn role_comment(&self) -> String {
        let k = self.k;
        match self.kind {
            ConstructionKind::Odd => format!("S=0..{} R={}..{}", k - 1, k, 2 * k - 1),
            ConstructionKind::Even => format!("x=0..{} y={}..{} z={}", k - 2, k - 1, 2 * k - 3, 2 * k - 2),
        }
    }
}

/// Closed-form `f(n,k)` together with the order from which it is a theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub value: i64,
    /// Smallest `n` covered by the theorem (`n >= min_n`).
    pub min_n: u64,
}

impl FormulaValue {
    pub fn in_regime(&self, n: usize) -> bool {
        n as u64 >= self.min_n
    }
}

pub fn f_formula(n: usize, k: usize) -> Result<FormulaValue> {
    if k < 2 || n < 3 {
        return Err(invalid(format!("f_formula needs k >= 2 and n >= 3, got n={n} k={k}")));
    }
    let (ni, ki) = (n as i64, k as i64);
    let out = if k == 2 {
        let value = match n % 4 {
            0 => ni,
            1 => ni - 1,
            _ => ni - 2,
        };
        FormulaValue { value, min_n: 3 }
    } else if k % 2 == 1 {
        // valid for n > k(k-1)(5k+2)/2
        let threshold = (k * (k - 1) * (5 * k + 2) / 2) as u64;
        FormulaValue {
            value: (ni - 2 * ki) * ki * (ki - 1) + 2 * binomial(k as u64, 3) as i64,
            min_n: threshold + 1,
        }
    } else {
        // valid for n > 2k^3 - 9k + 7
        let threshold = (2 * k * k * k - 9 * k + 7) as u64;
        let doubled = ni * ki * (2 * ki - 3) - (2 * ki * ki * ki - 9 * ki + 6);
        debug_assert!(doubled % 2 == 0);
        FormulaValue {
            value: doubled / 2,
            min_n: threshold + 1,
        }
    };
    Ok(out)
}

fn self_check(what: &str, expected: i64, g: &ThreeGraph) -> Result<()> {
    if expected != g.edge_count() as i64 {
        return Err(Error::Consistency {
            what: what.to_string(),
            expected: expected.max(0) as u64,
            actual: g.edge_count() as u64,
        });
    }
    Ok(())
}

fn all_triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..binomial(n as u64, 3)).map(crate::hypergraph::unrank_unchecked)
}

/// Triples meeting `S` in at least two vertices and missing `R`, and symmetrically.
pub fn construct_odd(n: usize, k: usize) -> Result<ThreeGraph> {
    let spec = ConstructionSpec::new(n, k, ConstructionKind::Odd)?;
    let (s, r) = (spec.s_set(), spec.r_set());
    let g = ThreeGraph::from_triples(
        n,
        all_triples(n).filter(|t| {
            let vs = t.vertices();
            let in_s = vs.iter().filter(|v| s.contains(v)).count();
            let in_r = vs.iter().filter(|v| r.contains(v)).count();
            (in_s >= 2 && in_r == 0) || (in_r >= 2 && in_s == 0)
        }),
    )?;
    self_check("odd construction edge count", f_formula(n, k)?.value, &g)?;
    Ok(g)
}

/// The auxiliary graph `G_k` on `2k-1` vertices.
pub fn build_gk(k: usize) -> Result<Graph> {
    let spec = ConstructionSpec::new(2 * k - 1, k, ConstructionKind::Even)?;
    let mut pairs = Vec::new();
    for i in 1..k {
        for j in 1..k {
            if i == j && 2 * i > k {
                continue;
            }
            pairs.push((spec.x(i), spec.y(j)));
        }
        if 2 * i > k {
            pairs.push((spec.x(i), spec.z()));
            pairs.push((spec.y(i), spec.z()));
        }
    }
    Graph::new(2 * k - 1, pairs)
}

/// Triples meeting `V(G_k)` in exactly an edge of `G_k`, triples inside
/// `V(G_k)` spanning at least two edges of `G_k`, and `{x_1, y_i, z}` for
/// `i <= k/2`. The edge count is checked against [`f_formula`].
pub fn construct_even(n: usize, k: usize) -> Result<ThreeGraph> {
    let spec = ConstructionSpec::new(n, k, ConstructionKind::Even)?;
    let gk = build_gk(k)?;
    let core = 2 * k - 1;
    let regular = all_triples(n).filter(|t| {
        let inside: Vec<usize> = t.vertices().into_iter().filter(|&v| v < core).collect();
        match inside.len() {
            2 => gk.has_edge(inside[0], inside[1]),
            3 => t.pairs().iter().filter(|&&(a, b)| gk.has_edge(a, b)).count() >= 2,
            _ => false,
        }
    });
    let special = (1..=k / 2).map(|i| Triple::new(spec.x(1), spec.y(i), spec.z()).expect("distinct roles"));
    let g = ThreeGraph::from_triples(n, regular.chain(special))?;
    self_check("even construction edge count", f_formula(n, k)?.value, &g)?;
    Ok(g)
}

/// The extremal construction matching the parity of `k`, when one is defined.
pub fn construct(n: usize, k: usize) -> Option<Result<ThreeGraph>> {
    if k >= 3 && k % 2 == 1 && n >= 2 * k {
        Some(construct_odd(n, k))
    } else if k >= 4 && k % 2 == 0 && n >= 2 * k - 1 {
        Some(construct_even(n, k))
    } else {
        None
    }
}

pub fn construct_kind(n: usize, k: usize, kind: ConstructionKind) -> Result<ThreeGraph> {
    match kind {
        ConstructionKind::Odd => construct_odd(n, k),
        ConstructionKind::Even => construct_even(n, k),
    }
}
