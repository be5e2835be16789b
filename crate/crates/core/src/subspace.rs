use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{dot, Matrix};

/// Linear subspace of `F^n`, stored as the nonzero rows of a reduced row
/// echelon form so that equal subspaces compare equal.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    /// Span of `vectors` inside `F^ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<F>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::dim(ambient_dim, v.len()));
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| crate::linalg::unit(ambient_dim, i)).collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<F>> = indices.iter().map(|&i| crate::linalg::unit(ambient_dim, i)).collect();
        Self::span(ambient_dim, &vs).expect("indices within ambient dimension")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Echelon basis, leading coefficients equal to one.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, &vs).expect("same ambient dimension")
    }

    /// Linear functionals (as coefficient vectors under the standard pairing)
    /// vanishing on this subspace.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        if self.basis.is_empty() {
            return Subspace::<F>::full(self.ambient_dim).basis;
        }
        Matrix::from_rows(self.basis.clone())
            .expect("rectangular basis")
            .nullspace()
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        if eqs.is_empty() {
            return Subspace::full(self.ambient_dim);
        }
        let ns = Matrix::from_rows(eqs).expect("rectangular").nullspace();
        Self::span(self.ambient_dim, &ns).expect("same ambient dimension")
    }

    /// Coordinates of `v` with respect to [`Self::basis`], if `v` lies in the
    /// subspace. Cheap because the basis is in echelon form.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self
            .basis
            .iter()
            .map(|b| {
                let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
                v[p].clone()
            })
            .collect();
        let mut rebuilt = vec![F::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (r, x) in rebuilt.iter_mut().zip(b) {
                *r = r.clone() + c.clone() * x.clone();
            }
        }
        (rebuilt == v).then_some(coords)
    }

    /// True iff `f(v) = 0` for every basis vector and functional.
    pub fn annihilated_by(&self, f: &[F]) -> bool {
        self.basis.iter().all(|b| dot(b, f).is_zero())
    }
}

impl<F: fmt::Display> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

impl<F: fmt::Display> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
