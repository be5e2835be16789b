//! Lie algebras given by exact structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{is_zero_vec, unit, Matrix};
use crate::subspace::Subspace;
use crate::Verdict;

/// Finite-dimensional Lie algebra with basis `e_0..e_{n-1}` and
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Construction enforces antisymmetry; the Jacobi identity is checked on
/// demand with [`LieAlgebra::jacobi_check`]. Equality ignores the name.
#[derive(Clone)]
pub struct LieAlgebra<F = Rational> {
    dim: usize,
    structure: Vec<F>,
    name: Option<String>,
}

impl<F: PartialEq> PartialEq for LieAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.structure == other.structure
    }
}

/// Outcome of testing whether three vectors span a Heisenberg subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H3Embedding {
    NotH3,
    /// The span is `span{e1, e2, e3}`.
    Standard,
    Nonstandard,
}

impl<F: Field> LieAlgebra<F> {
    /// From a full `dim × dim × dim` table indexed `[i][j][k]`.
    pub fn from_table(table: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let dim = table.len();
        if dim == 0 {
            return Err(Error::InvalidInput("Lie algebra of dimension zero".into()));
        }
        let mut structure = Vec::with_capacity(dim * dim * dim);
        for row in &table {
            if row.len() != dim {
                return Err(Error::dim(dim, row.len()));
            }
            for col in row {
                if col.len() != dim {
                    return Err(Error::dim(dim, col.len()));
                }
                structure.extend(col.iter().cloned());
            }
        }
        let g = LieAlgebra { dim, structure, name: None };
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if g.c(i, j, k) != -g.c(j, i, k) {
                        return Err(Error::InvalidInput(format!(
                            "structure constants not antisymmetric at ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// From a sparse list of `[e_i, e_j] ∋ value·e_k` entries; the mirrored
    /// entry `(j, i, k, −value)` is implied. Repeated entries must agree.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, F)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("Lie algebra of dimension zero".into()));
        }
        let mut structure = vec![F::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (n, (i, j, k, v)) in entries.iter().enumerate() {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket entry {n}: index out of range for dimension {dim}"
                )));
            }
            if i == j {
                if v.is_zero() {
                    continue;
                }
                return Err(Error::InvalidInput(format!(
                    "bracket entry {n}: [e{i}, e{i}] must vanish"
                )));
            }
            for (a, b, val) in [(i, j, v.clone()), (j, i, -v.clone())] {
                let p = idx(a, b, k);
                if set[p] && structure[p] != val {
                    return Err(Error::InvalidInput(format!(
                        "bracket entry {n}: conflicting value for [e{a}, e{b}] on e{k}"
                    )));
                }
                structure[p] = val;
                set[p] = true;
            }
        }
        Ok(LieAlgebra { dim, structure, name: None })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, structure: vec![F::zero(); dim * dim * dim], name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant `c[i][j][k]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> F {
        self.structure[(i * self.dim + j) * self.dim + k].clone()
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        let start = (i * self.dim + j) * self.dim;
        self.structure[start..start + self.dim].to_vec()
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let s = x[i].clone() * y[j].clone();
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.structure[base + k];
                    if !c.is_zero() {
                        *o = o.clone() + s.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`; column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[F]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        let n = self.dim;
        let cols: Vec<Vec<F>> = (0..n).map(|j| self.bracket_unchecked(x, &unit(n, j))).collect();
        Matrix::from_columns(&cols, n)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<F> {
        let n = self.dim;
        Matrix::from_fn(n, n, |k, j| self.c(i, j, k))
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(F::is_zero)
    }

    /// Checks the Jacobi identity on all basis triples `i < j < k`; on failure
    /// reports the first offending triple.
    pub fn jacobi_check(&self) -> Verdict<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit::<F>(n, i), unit::<F>(n, j), unit::<F>(n, k));
                    let a = self.bracket_unchecked(&ei, &self.bracket_basis(j, k));
                    let b = self.bracket_unchecked(&ej, &self.bracket_basis(k, i));
                    let c = self.bracket_unchecked(&ek, &self.bracket_basis(i, j));
                    let sum: Vec<F> = (0..n)
                        .map(|t| a[t].clone() + b[t].clone() + c[t].clone())
                        .collect();
                    if !is_zero_vec(&sum) {
                        return Verdict::Fail((i, j, k));
                    }
                }
            }
        }
        Verdict::Pass
    }

    /// `[A, B]` for subspaces: the span of all brackets of basis vectors.
    pub fn bracket_subspaces(&self, a: &Subspace<F>, b: &Subspace<F>) -> Subspace<F> {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let z = self.bracket_unchecked(x, y);
                if !is_zero_vec(&z) {
                    vs.push(z);
                }
            }
        }
        Subspace::span(self.dim, &vs).expect("brackets live in the algebra")
    }

    /// `C^r(g)`: `C^0 = g`, `C^r = [g, C^{r-1}]`.
    pub fn lower_central(&self, r: usize) -> Subspace<F> {
        let full = Subspace::full(self.dim);
        let mut cur = full.clone();
        for _ in 0..r.min(self.dim + 1) {
            let next = self.bracket_subspaces(&full, &cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    /// `C_r(g)`: `C_0 = 0`, `C_r = {X : [X, g] ⊆ C_{r-1}}`.
    pub fn upper_central(&self, r: usize) -> Subspace<F> {
        let mut cur = Subspace::zero(self.dim);
        for _ in 0..r.min(self.dim + 1) {
            let next = self.preimage_of_center_mod(&cur);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    /// `{X : [X, e_j] ∈ s for all j}`.
    fn preimage_of_center_mod(&self, s: &Subspace<F>) -> Subspace<F> {
        let n = self.dim;
        let ann = s.annihilator();
        // f([X, e_j]) = Σ_i X_i Σ_k c[i][j][k] f_k
        let mut rows = Vec::new();
        for f in &ann {
            for j in 0..n {
                let row: Vec<F> = (0..n)
                    .map(|i| {
                        (0..n).fold(F::zero(), |acc, k| acc + self.c(i, j, k) * f[k].clone())
                    })
                    .collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        let ns = Matrix::from_rows(rows).expect("rectangular").nullspace();
        Subspace::span(n, &ns).expect("kernel vectors have length n")
    }

    pub fn center(&self) -> Subspace<F> {
        self.upper_central(1)
    }

    pub fn commutator(&self) -> Subspace<F> {
        self.lower_central(1)
    }

    /// Derived series `g, [g,g], [[g,g],[g,g]], …` until it stabilizes.
    pub fn derived_series(&self) -> Vec<Subspace<F>> {
        let mut out = vec![Subspace::full(self.dim)];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_subspaces(last, last);
            if &next == last {
                return out;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                return out;
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central(self.dim).is_zero()
    }

    /// `[g, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        s.ambient_dim() == self.dim
            && self
                .bracket_subspaces(&Subspace::full(self.dim), s)
                .is_subspace_of(s)
    }

    pub fn is_subalgebra(&self, s: &Subspace<F>) -> bool {
        s.ambient_dim() == self.dim && self.bracket_subspaces(s, s).is_subspace_of(s)
    }

    /// Structure constants with respect to the basis `f_j = P e_j` (the
    /// columns of `p`): `[u, v]' = P⁻¹[Pu, Pv]`.
    pub fn change_of_basis(&self, p: &Matrix<F>) -> Result<LieAlgebra<F>> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::dim(self.dim, p.rows()));
        }
        let pinv = p.inverse().map_err(|_| {
            Error::InvalidInput("change of basis matrix is singular".into())
        })?;
        let n = self.dim;
        let cols: Vec<Vec<F>> = (0..n).map(|j| p.column(j)).collect();
        let mut structure = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let b = self.bracket_unchecked(&cols[i], &cols[j]);
                structure.extend(pinv.mul_vec(&b));
            }
        }
        Ok(LieAlgebra { dim: n, structure, name: self.name.clone() })
    }

    /// `self ⊕ other` with `self` occupying the first coordinates.
    pub fn direct_sum(&self, other: &LieAlgebra<F>) -> LieAlgebra<F> {
        let n = self.dim + other.dim;
        let mut structure = vec![F::zero(); n * n * n];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    structure[idx(i, j, k)] = self.c(i, j, k);
                }
            }
        }
        let o = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    structure[idx(i + o, j + o, k + o)] = other.c(i, j, k);
                }
            }
        }
        LieAlgebra { dim: n, structure, name: None }
    }

    /// Decides whether `v1, v2, v3` span a copy of the Heisenberg algebra
    /// (`[v1,v2] = v3`, `v3` commuting with both) and, if so, whether that copy
    /// is `span{e1, e2, e3}`. Only meaningful in dimension four.
    pub fn check_h3_subalgebra(&self, v1: &[F], v2: &[F], v3: &[F]) -> Result<H3Embedding> {
        if self.dim != 4 {
            return Err(Error::InvalidInput(
                "Heisenberg subalgebra test expects a 4-dimensional algebra".into(),
            ));
        }
        for v in [v1, v2, v3] {
            self.check_len(v)?;
        }
        let span = Subspace::span(4, &[v1.to_vec(), v2.to_vec(), v3.to_vec()])?;
        if span.dim() != 3
            || self.bracket_unchecked(v1, v2) != v3
            || !is_zero_vec(&self.bracket_unchecked(v1, v3))
            || !is_zero_vec(&self.bracket_unchecked(v2, v3))
        {
            return Ok(H3Embedding::NotH3);
        }
        if span == Subspace::coordinate(4, &[1, 2, 3]) {
            Ok(H3Embedding::Standard)
        } else {
            Ok(H3Embedding::Nonstandard)
        }
    }

    fn check_len(&self, x: &[F]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::dim(self.dim, x.len()));
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        let mut first = true;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let b = self.bracket_basis(i, j);
                if is_zero_vec(&b) {
                    continue;
                }
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "[e{i}, e{j}] = ")?;
                let mut t = true;
                for (k, c) in b.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !t {
                        write!(f, " + ")?;
                    }
                    t = false;
                    write!(f, "({c})e{k}")?;
                }
            }
        }
        if first {
            write!(f, "abelian, dim {}", self.dim)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
