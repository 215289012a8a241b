//! Verification workbench for anti-Ramsey numbers of stars in 3-uniform
//! hypergraphs.
//!
//! The crate covers the k-star Turán numbers `f(n,k)` (closed forms,
//! extremal constructions, exact search at small `n`), the matching and
//! factor-criticality lemmas behind them, the pair-weight function, and
//! edge-colorings of `K_n^3`: rainbow-star search, the Turán-based lower-bound
//! coloring, good pairs, and an exact search for the largest number of colors
//! avoiding a rainbow star.

pub mod ar_search;
pub mod audit;
pub mod coloring;
pub mod constructions;
pub mod degree_sequence;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod matching;
pub mod search;
pub mod star;
pub mod weights;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::{binomial, triple_rank, triple_unrank, ThreeGraph, Triple};
