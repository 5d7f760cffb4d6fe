//! Orbits of groups generated by transvections on F₂-vector spaces.
//!
//! The crate pairs closed-form classification results with brute-force
//! oracles so that each can be checked against the other:
//!
//! - [`f2`]: packed vectors, bilinear forms, subspaces, symplectic bases,
//!   quadratic forms and the Arf invariant.
//! - [`graph`]: graphs Gr(B) of generating sets, cliques, forbidden induced
//!   subgraphs and canonical forms.
//! - [`orbits`]: transvections, orbit partitions, Δ, V₀₀₀ and the d oracle.
//! - [`moves`]: basic moves, equivalence classes and class recognition.
//! - [`classify`]: Q_B, the d formula and the V₀₀₀ structure checks.
//! - [`cosets`]: orbits on cosets of span(B).
//! - [`blocks`]: chained block forms and the shortest-path lemma.
//!
//! Orbit partitions run on rayon when the `parallel` feature is enabled (the
//! default) and sequentially otherwise; both produce identical output.

pub mod blocks;
pub mod classify;
pub mod cosets;
pub mod document;
pub mod error;
pub mod f2;
pub mod fixtures;
pub mod graph;
pub mod moves;
pub mod orbits;
pub mod par;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use f2::{BilinearForm, F2Vector, QuadraticForm, Subspace};
pub use graph::{CanonicalGraph, GeneratingSet, Graph};
