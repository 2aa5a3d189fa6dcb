//! Generalized Turán numbers for forbidden clique packings `tK_r^p`.
//!
//! The crate builds the extremal constructions (Turán graphs, joins, partial
//! blowups), counts cliques and pattern copies exactly, evaluates the closed
//! form values and growth exponents, decomposes packing-free set families,
//! and checks all of it against an exhaustive search over small hosts.

pub mod bits;
pub mod blowup;
pub mod canon;
pub mod codec;
pub mod counting;
pub mod cover;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod hypergraph;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{join, make_turan, Graph};
pub use hypergraph::{hyper_join, partial_blowup, Host, Hypergraph};
