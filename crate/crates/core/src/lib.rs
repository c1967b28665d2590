//! Finite 0-1 words and the chain graphs `G_w` they induce.
//!
//! For a word `w = w_0 .. w_{n-1}` the graph `G_w` lives on the vertices
//! `-1, 0, .., n-1`; for `i < j` the pair `{i, j}` is an edge iff
//! `w_j = 1` and `j = i + 1`, or `w_j = 0` and `j != i + 1`.
//!
//! The crate is organised by subject:
//!
//! * [`words`]: finite words, infinite word generators, factor sets, word
//!   bounds, periodicity and recurrence diagnostics.
//! * [`graph`], [`embed`], [`canon`]: finite graphs, induced embeddings and
//!   canonical forms.
//! * [`structure`]: the closed-form description of the modules of `G_w`.
//! * [`realizer`]: incremental two-dimensional realizers of `G_w` and
//!   comparability / permutation graph certification.
//! * [`ages`]: windowed ages of `G_mu`, their bounds, and embedding checks.
//! * [`families`]: the unavoidable prime families.
//! * [`verify`]: the property sweeps behind the `verify` command.

pub mod ages;
pub mod bitset;
pub mod canon;
pub mod embed;
pub mod error;
pub mod families;
pub mod graph;
pub mod realizer;
pub mod structure;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use graph::Graph;
pub use words::{FiniteWord, WordStream};
