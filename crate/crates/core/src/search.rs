//! Outcome and budget types shared by the exact searches.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    /// The search closed; `value` is optimal.
    Proven,
    /// The budget ran out; `value` is attained by the witness but may not be optimal.
    LowerBoundOnly,
    /// No copy of the forbidden star fits, so every coloring is admissible.
    TrivialAllRainbow,
}

impl SearchStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchStatus::Proven => "proven",
            SearchStatus::LowerBoundOnly => "lower-bound-only",
            SearchStatus::TrivialAllRainbow => "trivial-all-rainbow",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, SearchStatus::LowerBoundOnly)
    }
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SearchStats {
    pub nodes: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome<W> {
    pub value: usize,
    pub status: SearchStatus,
    pub witness: W,
    pub stats: SearchStats,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Wall-clock limit; `None` runs to completion.
    pub budget: Option<Duration>,
    /// 1 gives the deterministic sequential search.
    pub threads: usize,
    /// Canonical color-class ordering in the coloring search.
    pub symmetry: bool,
    /// Lift the default instance-size caps.
    pub long_run: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: None,
            threads: 1,
            symmetry: true,
            long_run: false,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

/// Node counter plus wall-clock deadline, shared between worker threads.
pub(crate) struct Meter {
    start: Instant,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    expired: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: Option<Duration>) -> Self {
        let start = Instant::now();
        Meter {
            start,
            deadline: budget.map(|b| start + b),
            nodes: AtomicU64::new(0),
            expired: AtomicBool::new(false),
        }
    }

    /// Counts a node; returns `false` once the budget is spent.
    #[inline]
    pub(crate) fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.expired.load(Ordering::Relaxed) {
            return false;
        }
        if count % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.expired.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn expired(&self) -> bool {
        self.expired.load(Ordering::Relaxed)
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

/// Runs `f` on a dedicated pool with `threads` workers.
pub(crate) fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
