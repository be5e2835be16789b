//! Symmetric bilinear forms on Lie algebras: ad-invariance, inertia, the
//! linear solver for the space of invariant forms and the duality between
//! the two central series.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, OrderedField, Rational};
use crate::linalg::{dot, unit, Matrix};
use crate::subspace::Subspace;
use crate::Verdict;

/// Symmetric bilinear form; entry `(i, j)` is `⟨e_i, e_j⟩`. May be degenerate.
#[derive(Clone, PartialEq)]
pub struct SymBilinearForm<F = Rational> {
    matrix: Matrix<F>,
}

/// Inertia of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub null: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.null
    }

    /// One timelike (or one spacelike) direction and no radical. Both sign
    /// conventions count.
    pub fn is_lorentzian(&self) -> bool {
        self.null == 0 && self.dim() >= 2 && (self.minus == 1 || self.plus == 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.plus, self.minus, self.null)
    }
}

impl<F: Field> SymBilinearForm<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::InvalidInput("bilinear form matrix is not symmetric".into()));
        }
        Ok(SymBilinearForm { matrix })
    }

    /// Sparse constructor; `(i, j, v)` sets both `(i, j)` and `(j, i)`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, F)]) -> Result<Self> {
        let mut m = Matrix::zeros(dim, dim);
        let mut set = vec![false; dim * dim];
        for (n, (i, j, v)) in entries.iter().enumerate() {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::InvalidInput(format!(
                    "form entry {n}: index out of range for dimension {dim}"
                )));
            }
            for (a, b) in [(i, j), (j, i)] {
                if set[a * dim + b] && &m[(a, b)] != v {
                    return Err(Error::InvalidInput(format!(
                        "form entry {n}: conflicting value at ({a}, {b})"
                    )));
                }
                m[(a, b)] = v.clone();
                set[a * dim + b] = true;
            }
        }
        Ok(SymBilinearForm { matrix: m })
    }

    pub fn diagonal(diag: &[F]) -> Self {
        SymBilinearForm { matrix: Matrix::diagonal(diag) }
    }

    pub fn zero(dim: usize) -> Self {
        SymBilinearForm { matrix: Matrix::zeros(dim, dim) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &F {
        &self.matrix[(i, j)]
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        dot(x, &self.matrix.mul_vec(y))
    }

    pub fn add(&self, other: &Self) -> Self {
        SymBilinearForm { matrix: self.matrix.add(&other.matrix) }
    }

    pub fn scale(&self, s: &F) -> Self {
        SymBilinearForm { matrix: self.matrix.scale(s) }
    }

    /// Linear combination `Σ t_i B_i`.
    pub fn combination(forms: &[Self], coeffs: &[F]) -> Self {
        assert_eq!(forms.len(), coeffs.len());
        let dim = forms.first().map_or(0, Self::dim);
        forms
            .iter()
            .zip(coeffs)
            .fold(Self::zero(dim), |acc, (b, t)| acc.add(&b.scale(t)))
    }

    /// Matrix in the new basis `f_j = P e_j`: `Pᵀ B P`.
    pub fn congruence(&self, p: &Matrix<F>) -> Self {
        SymBilinearForm { matrix: p.transpose().mul(&self.matrix).mul(p) }
    }

    /// Restriction to `s`, written in the echelon basis of `s`.
    pub fn restrict(&self, s: &Subspace<F>) -> Self {
        let b = s.basis();
        let k = b.len();
        SymBilinearForm { matrix: Matrix::from_fn(k, k, |i, j| self.eval(&b[i], &b[j])) }
    }

    pub fn radical(&self) -> Subspace<F> {
        let ns = self.matrix.nullspace();
        Subspace::span(self.dim(), &ns).expect("kernel vectors have the form's dimension")
    }

    pub fn determinant(&self) -> F {
        self.matrix.determinant()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == 0 || !self.determinant().is_zero()
    }

    /// Errors with the radical when degenerate.
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.is_nondegenerate() {
            return Ok(());
        }
        let radical = self
            .radical()
            .basis()
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        Err(Error::Degenerate { radical })
    }
}

impl<F: OrderedField> SymBilinearForm<F> {
    /// Inertia by exact symmetric congruence: a nonzero diagonal pivot when
    /// one exists, otherwise a 2×2 hyperbolic block `[[0, b], [b, 0]]`, which
    /// contributes one positive and one negative square.
    pub fn signature(&self) -> Signature {
        let n = self.dim();
        let mut a = self.matrix.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut plus, mut minus) = (0, 0);
        loop {
            if let Some(pos) = active.iter().position(|&i| !a[(i, i)].is_zero()) {
                let p = active.remove(pos);
                match a[(p, p)].sign() {
                    Ordering::Greater => plus += 1,
                    _ => minus += 1,
                }
                let piv = a[(p, p)].clone();
                for &j in &active {
                    for &k in &active {
                        let v = a[(j, k)].clone() - a[(j, p)].clone() * a[(p, k)].clone() / piv.clone();
                        a[(j, k)] = v;
                    }
                }
                continue;
            }
            let pair = active.iter().enumerate().find_map(|(x, &i)| {
                active[x + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            active.retain(|&k| k != i && k != j);
            plus += 1;
            minus += 1;
            let b = a[(i, j)].clone();
            for &k in &active {
                for &l in &active {
                    let v = a[(k, l)].clone()
                        - (a[(k, i)].clone() * a[(j, l)].clone()
                            + a[(k, j)].clone() * a[(i, l)].clone())
                            / b.clone();
                    a[(k, l)] = v;
                }
            }
        }
        Signature { plus, minus, null: n - plus - minus }
    }
}

impl<F: fmt::Display> fmt::Display for SymBilinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.matrix, f)
    }
}

impl<F: fmt::Display> fmt::Debug for SymBilinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.matrix, f)
    }
}

fn check_dims<F: Field>(g: &LieAlgebra<F>, b: &SymBilinearForm<F>) -> Result<()> {
    if g.dim() != b.dim() {
        return Err(Error::dim(g.dim(), b.dim()));
    }
    Ok(())
}

/// `⟨[X,Y],Z⟩ + ⟨Y,[X,Z]⟩ = 0` on all basis triples; reports the first
/// failing `(X, Y, Z)` index triple.
pub fn is_ad_invariant<F: Field>(
    g: &LieAlgebra<F>,
    b: &SymBilinearForm<F>,
) -> Result<Verdict<(usize, usize, usize)>> {
    check_dims(g, b)?;
    let n = g.dim();
    for x in 0..n {
        for y in 0..n {
            let xy = g.bracket_basis(x, y);
            for z in 0..n {
                let xz = g.bracket_basis(x, z);
                let lhs = b.eval(&xy, &unit(n, z)) + b.eval(&unit(n, y), &xz);
                if !lhs.is_zero() {
                    return Ok(Verdict::Fail((x, y, z)));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `m^⊥ = {X : ⟨X, Y⟩ = 0 for all Y ∈ m}`; not necessarily complementary.
pub fn orthogonal_complement<F: Field>(
    b: &SymBilinearForm<F>,
    m: &Subspace<F>,
) -> Result<Subspace<F>> {
    if m.ambient_dim() != b.dim() {
        return Err(Error::dim(b.dim(), m.ambient_dim()));
    }
    if m.is_zero() {
        return Ok(Subspace::full(b.dim()));
    }
    let rows: Vec<Vec<F>> = m.basis().iter().map(|y| b.matrix().mul_vec(y)).collect();
    let ns = Matrix::from_rows(rows)?.nullspace();
    Subspace::span(b.dim(), &ns)
}

/// Index of the unknown `b_ij` (`i ≤ j`) in the packed upper triangle.
pub(crate) fn packed(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

pub(crate) fn unpack<F: Field>(n: usize, sol: &[F]) -> SymBilinearForm<F> {
    SymBilinearForm { matrix: Matrix::from_fn(n, n, |i, j| sol[packed(n, i, j)].clone()) }
}

/// Basis of the space of ad-invariant symmetric forms, from the homogeneous
/// system `Σ_k c[x][y][k] b_kz + c[x][z][k] b_yk = 0` in the `n(n+1)/2`
/// unknowns `b_ij`.
pub fn invariant_form_space<F: Field>(g: &LieAlgebra<F>) -> Vec<SymBilinearForm<F>> {
    let n = g.dim();
    let unknowns = n * (n + 1) / 2;
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in y..n {
                let mut row = vec![F::zero(); unknowns];
                for k in 0..n {
                    let a = g.c(x, y, k);
                    if !a.is_zero() {
                        let p = packed(n, k, z);
                        row[p] = row[p].clone() + a;
                    }
                    let c = g.c(x, z, k);
                    if !c.is_zero() {
                        let p = packed(n, y, k);
                        row[p] = row[p].clone() + c;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns).map(|i| unit(unknowns, i)).collect()
    } else {
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    };
    basis.iter().map(|s| unpack(n, s)).collect()
}

/// Proof that `det(Σ t_i B_i)` vanishes identically: it was evaluated on the
/// full grid `{0..=degree}^forms` and was zero everywhere. A polynomial of
/// degree at most `degree` in each variable that vanishes on such a grid is
/// the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCertificate {
    pub forms: usize,
    pub degree: usize,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Nondegeneracy<F: Field = Rational> {
    /// An explicit nondegenerate member of the span.
    Witness(SymBilinearForm<F>),
    /// Every member of the span is degenerate.
    AllDegenerate(GridCertificate),
}

impl<F: Field> Nondegeneracy<F> {
    pub fn witness(&self) -> Option<&SymBilinearForm<F>> {
        match self {
            Nondegeneracy::Witness(w) => Some(w),
            Nondegeneracy::AllDegenerate(_) => None,
        }
    }
}

/// Searches `span(forms)` for a nondegenerate member. Cheap deterministic
/// candidates are tried first; a negative answer always comes from the full
/// grid and is therefore a proof.
pub fn find_nondegenerate<F: Field>(forms: &[SymBilinearForm<F>]) -> Nondegeneracy<F> {
    let k = forms.len();
    let Some(first) = forms.first() else {
        return Nondegeneracy::AllDegenerate(GridCertificate { forms: 0, degree: 0, points: 0 });
    };
    let degree = first.dim();
    let candidates: [&dyn Fn(usize) -> i64; 3] =
        [&|_| 1, &|i| i as i64 + 1, &|i| ((i * i + 3 * i + 1) % 7) as i64 + 1];
    for gen in candidates {
        let t: Vec<F> = (0..k).map(|i| F::from_i64(gen(i))).collect();
        let b = SymBilinearForm::combination(forms, &t);
        if b.is_nondegenerate() {
            return Nondegeneracy::Witness(b);
        }
    }
    let base = degree + 1;
    let mut idx = vec![0usize; k];
    let mut points = 0usize;
    loop {
        points += 1;
        let t: Vec<F> = idx.iter().map(|&x| F::from_i64(x as i64)).collect();
        let b = SymBilinearForm::combination(forms, &t);
        if b.is_nondegenerate() {
            return Nondegeneracy::Witness(b);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == k {
                return Nondegeneracy::AllDegenerate(GridCertificate { forms: k, degree, points });
            }
            idx[pos] += 1;
            if idx[pos] < base {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

pub fn has_nondegenerate_invariant_form<F: Field>(g: &LieAlgebra<F>) -> Nondegeneracy<F> {
    find_nondegenerate(&invariant_form_space(g))
}

/// `K(x, y) = tr(ad_x ∘ ad_y)`.
pub fn killing_form<F: Field>(g: &LieAlgebra<F>) -> SymBilinearForm<F> {
    let n = g.dim();
    let ads: Vec<Matrix<F>> = (0..n).map(|i| g.ad_basis(i)).collect();
    let m = Matrix::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace());
    SymBilinearForm { matrix: m }
}

fn require_metric<F: Field>(g: &LieAlgebra<F>, b: &SymBilinearForm<F>) -> Result<()> {
    check_dims(g, b)?;
    b.require_nondegenerate()?;
    if let Verdict::Fail((x, y, z)) = is_ad_invariant(g, b)? {
        return Err(Error::InvalidInput(format!(
            "form is not ad-invariant (fails on e{x}, e{y}, e{z})"
        )));
    }
    Ok(())
}

/// Verifies `C^r = (C_r)^⊥` and `dim C^r + dim C_r = dim g` for
/// `r = 0..=dim g`; reports the first failing `r`.
pub fn series_duality_check<F: Field>(
    g: &LieAlgebra<F>,
    b: &SymBilinearForm<F>,
) -> Result<Verdict<usize>> {
    require_metric(g, b)?;
    let n = g.dim();
    for r in 0..=n {
        let lower = g.lower_central(r);
        let upper = g.upper_central(r);
        if lower != orthogonal_complement(b, &upper)? || lower.dim() + upper.dim() != n {
            return Ok(Verdict::Fail(r));
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdealSplit<F: Field = Rational> {
    /// `g = j ⊕ j^⊥`, both ideals with invariant nondegenerate restrictions.
    Split { ideal: Subspace<F>, complement: Subspace<F> },
    /// The restriction to `j` is degenerate; radical in ambient coordinates.
    Degenerate { radical: Subspace<F> },
}

/// Splits off a nondegenerate ideal `j` of a metric Lie algebra.
pub fn split_nondegenerate_ideal<F: Field>(
    g: &LieAlgebra<F>,
    b: &SymBilinearForm<F>,
    j: &Subspace<F>,
) -> Result<IdealSplit<F>> {
    check_dims(g, b)?;
    if !g.is_ideal(j) {
        return Err(Error::InvalidInput("subspace is not an ideal".into()));
    }
    if let Verdict::Fail((x, y, z)) = is_ad_invariant(g, b)? {
        return Err(Error::InvalidInput(format!(
            "form is not ad-invariant (fails on e{x}, e{y}, e{z})"
        )));
    }
    let restricted = b.restrict(j);
    if !restricted.is_nondegenerate() {
        let coords = restricted.radical();
        let vs: Vec<Vec<F>> = coords
            .basis()
            .iter()
            .map(|c| {
                let mut v = vec![F::zero(); g.dim()];
                for (t, bj) in c.iter().zip(j.basis()) {
                    for (o, x) in v.iter_mut().zip(bj) {
                        *o = o.clone() + t.clone() * x.clone();
                    }
                }
                v
            })
            .collect();
        return Ok(IdealSplit::Degenerate { radical: Subspace::span(g.dim(), &vs)? });
    }
    let complement = orthogonal_complement(b, j)?;
    debug_assert!(j.intersection(&complement).is_zero());
    if !g.is_ideal(&complement) {
        return Err(Error::InvalidInput("orthogonal complement is not an ideal".into()));
    }
    for s in [j, &complement] {
        if !restriction_invariant(g, b, s) {
            return Err(Error::InvalidInput("restricted form is not ad-invariant".into()));
        }
    }
    Ok(IdealSplit::Split { ideal: j.clone(), complement })
}

fn restriction_invariant<F: Field>(
    g: &LieAlgebra<F>,
    b: &SymBilinearForm<F>,
    s: &Subspace<F>,
) -> bool {
    let basis = s.basis();
    basis.iter().all(|x| {
        basis.iter().all(|y| {
            basis.iter().all(|z| {
                let xy = g.bracket_unchecked(x, y);
                let xz = g.bracket_unchecked(x, z);
                (b.eval(&xy, z) + b.eval(y, &xz)).is_zero()
            })
        })
    })
}
