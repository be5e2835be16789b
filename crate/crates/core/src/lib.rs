//! Exact structure theory of metric Lie algebras and the left-invariant
//! Lorentzian geometry of the Heisenberg group, the oscillator group and its
//! hyperbolic sibling.
//!
//! Algebraic work is done over [`Rational`] (or any [`Field`]); group models
//! and geodesic integration are in `f64`.

pub mod algebra;
pub mod catalog;
pub mod connection;
pub mod error;
pub mod field;
pub mod forms;
pub mod groups;
pub mod integrator;
pub mod isometry;
pub mod linalg;
pub mod subspace;
pub mod symbolic;
pub mod tensor;

pub use algebra::{H3Embedding, LieAlgebra};
pub use catalog::{classify_dim4_metric, CatalogEntry, Dim4Class};
pub use error::{Error, Result};
pub use field::{int, parse_rational, rat, Field, OrderedField, QuadExt, Rational};
pub use forms::{Nondegeneracy, Signature, SymBilinearForm};
pub use linalg::Matrix;
pub use subspace::Subspace;

/// Outcome of an exact check: either it holds, or a witness of failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<T> {
    Pass,
    Fail(T),
}

impl<T> Verdict<T> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failure(&self) -> Option<&T> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(t) => Some(t),
        }
    }
}
