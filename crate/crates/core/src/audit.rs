//! Instance audits of the two structural graph lemmas: every edge-deletion of a
//! near-regular graph of degree `k-1` stays factor-critical, and every graph
//! with degree sequence `(3,3,3,3,2,2)` is Hamiltonian.

use rayon::prelude::*;

use crate::degree_sequence::{distinct_permutations, graphs_with_degree_sequence, is_graphical, GenerationMode};
use crate::error::{invalid, parse_err, Result};
use crate::graph::Graph;
use crate::matching::{factor_critical_masks, full_mask, hamiltonian_cycle};

const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: Graph,
    pub edge: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequenceSummary {
    pub sequence: Vec<usize>,
    pub graphical: bool,
    pub graphs: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checked: usize,
    pub violations: Vec<Counterexample>,
    pub sequences: Vec<SequenceSummary>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `COUNTEREXAMPLE` lines, then `checked=<N> violations=<V>`; sequence
    /// summaries go in `#` comment lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sequences {
            let seq: Vec<String> = s.sequence.iter().map(usize::to_string).collect();
            if s.graphical {
                out.push_str(&format!("# sequence ({}) graphs={}\n", seq.join(","), s.graphs));
            } else {
                out.push_str(&format!("# sequence ({}) rejected=non-graphical\n", seq.join(",")));
            }
        }
        for v in &self.violations {
            out.push_str("COUNTEREXAMPLE ");
            out.push_str(&v.graph.to_compact());
            if let Some((a, b)) = v.edge {
                out.push_str(&format!(" edge={a},{b}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("checked={} violations={}\n", self.checked, self.violations.len()));
        out
    }

    /// Reads back the counterexamples and totals (sequence comments are skipped).
    pub fn parse(text: &str) -> Result<Self> {
        let mut report = AuditReport::default();
        let mut saw_total = false;
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("COUNTEREXAMPLE ") {
                let mut parts = rest.split_whitespace();
                let graph = Graph::parse_compact(parts.next().unwrap_or(""))?;
                let edge = match parts.next() {
                    Some(e) => {
                        let e = e.strip_prefix("edge=").ok_or_else(|| parse_err(ln, "expected edge="))?;
                        let (a, b) = e.split_once(',').ok_or_else(|| parse_err(ln, "bad edge"))?;
                        let a = a.parse().map_err(|_| parse_err(ln, "bad edge vertex"))?;
                        let b = b.parse().map_err(|_| parse_err(ln, "bad edge vertex"))?;
                        Some((a, b))
                    }
                    None => None,
                };
                report.violations.push(Counterexample { graph, edge });
            } else {
                let fields = parse_key_values(line, ln)?;
                let get = |key: &str| {
                    fields
                        .iter()
                        .find(|(k, _)| k == key)
                        .and_then(|(_, v)| v.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(ln, format!("missing {key}")))
                };
                report.checked = get("checked")?;
                if get("violations")? != report.violations.len() {
                    return Err(parse_err(ln, "violation count mismatch"));
                }
                saw_total = true;
            }
        }
        if !saw_total {
            return Err(parse_err(0, "missing checked= line"));
        }
        Ok(report)
    }
}

pub(crate) fn parse_key_values(line: &str, ln: usize) -> Result<Vec<(String, String)>> {
    line.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| parse_err(ln, format!("expected key=value, got {tok:?}")))
        })
        .collect()
}

/// Candidate degree sequences for the degree-critical lemma: odd orders
/// `k..=2k-1`, all entries `k-1`, except at most one `k-2` (placed last).
pub fn degree_critical_sequences(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for order in (k..=2 * k - 1).filter(|m| m % 2 == 1) {
        out.push(vec![k - 1; order]);
        let mut one_low = vec![k - 1; order];
        one_low[order - 1] = k - 2;
        out.push(one_low);
    }
    out
}

/// First edge `f` (lex order) with `G - f` not factor-critical.
pub fn degree_critical_violation(g: &Graph) -> Option<(usize, usize)> {
    let masks = g.masks().expect("audit graphs are small");
    let all = full_mask(g.n());
    g.edges().iter().copied().find(|&(a, b)| {
        let mut m = masks.clone();
        m[a] &= !(1 << b);
        m[b] &= !(1 << a);
        !factor_critical_masks(&m, all)
    })
}

fn audit_sequences<F>(sequences: &[Vec<usize>], mode: GenerationMode, check: F) -> Result<AuditReport>
where
    F: Fn(&Graph) -> Option<Counterexample> + Sync,
{
    let mut report = AuditReport::default();
    for (idx, seq) in sequences.iter().enumerate() {
        let mut summary = SequenceSummary {
            sequence: seq.clone(),
            graphical: is_graphical(seq),
            graphs: 0,
        };
        if summary.graphical {
            let placements = match mode {
                GenerationMode::Exhaustive => distinct_permutations(seq),
                GenerationMode::Sample { .. } => vec![seq.clone()],
            };
            for placement in placements {
                // per-sequence seed: base seed plus sequence index
                let mode = match mode {
                    GenerationMode::Sample { count, seed } => GenerationMode::Sample {
                        count,
                        seed: seed.wrapping_add(idx as u64),
                    },
                    m => m,
                };
                let mut graphs = graphs_with_degree_sequence(&placement, mode)?;
                loop {
                    let chunk: Vec<Graph> = graphs.by_ref().take(CHUNK).collect();
                    if chunk.is_empty() {
                        break;
                    }
                    summary.graphs += chunk.len();
                    let found: Vec<Counterexample> = chunk.par_iter().filter_map(&check).collect();
                    report.violations.extend(found);
                }
            }
        }
        report.checked += summary.graphs;
        report.sequences.push(summary);
    }
    Ok(report)
}

/// Checks `G - f` factor-critical for every edge `f` of every graph with an
/// admissible degree sequence; non-graphical candidates are reported as rejected.
pub fn audit_degree_critical_lemma(k: usize, mode: GenerationMode) -> Result<AuditReport> {
    if k < 5 {
        return Err(invalid(format!("degree-critical audit needs k >= 5, got {k}")));
    }
    audit_sequences(&degree_critical_sequences(k), mode, |g| {
        degree_critical_violation(g).map(|edge| Counterexample {
            graph: g.clone(),
            edge: Some(edge),
        })
    })
}

/// Restricts the degree-critical audit to one vertex count.
pub fn audit_degree_critical_order(k: usize, order: usize, mode: GenerationMode) -> Result<AuditReport> {
    if k < 5 {
        return Err(invalid(format!("degree-critical audit needs k >= 5, got {k}")));
    }
    let seqs: Vec<Vec<usize>> = degree_critical_sequences(k)
        .into_iter()
        .filter(|s| s.len() == order)
        .collect();
    if seqs.is_empty() {
        return Err(invalid(format!("order {order} is not an odd order in {k}..={}", 2 * k - 1)));
    }
    audit_sequences(&seqs, mode, |g| {
        degree_critical_violation(g).map(|edge| Counterexample {
            graph: g.clone(),
            edge: Some(edge),
        })
    })
}

pub const HAMILTONIAN_SEQUENCE: [usize; 6] = [3, 3, 3, 3, 2, 2];

/// Every labeled graph with degree multiset `(3,3,3,3,2,2)` must be Hamiltonian.
pub fn audit_hamiltonian_lemma(mode: GenerationMode) -> Result<AuditReport> {
    audit_sequences(&[HAMILTONIAN_SEQUENCE.to_vec()], mode, |g| {
        hamiltonian_cycle(g).is_none().then(|| Counterexample {
            graph: g.clone(),
            edge: None,
        })
    })
}
