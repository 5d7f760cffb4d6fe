//! Dense linear algebra over F₂: vectors, bilinear forms, echelonized
//! subspaces, symplectic bases and Arf invariants.

mod form;
mod subspace;
mod symplectic;
mod vector;

pub use form::BilinearForm;
pub use subspace::{relations, CoordinateSystem, CosetIter, Subspace};
pub use symplectic::{radical, symplectic_basis, symplectic_basis_from, QuadraticForm, SymplecticDecomposition};
pub use vector::{F2Vector, MAX_DIM};

pub(crate) use vector::{mask, parity, BitIter};
