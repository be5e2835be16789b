//! Levi-Civita connection of a left-invariant metric, computed on the Lie
//! algebra: curvature, Ricci, covariant derivative of curvature, algebraic
//! Ricci solitons and naturally reductive decompositions.

use std::fmt;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::forms::SymBilinearForm;
use crate::linalg::{unit, Matrix};
use crate::subspace::Subspace;
use crate::tensor::Tensor;
use crate::Verdict;

/// Sign convention for the curvature operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `R(X,Y) = [∇_X, ∇_Y] − ∇_{[X,Y]}`. With this choice a bi-invariant
    /// metric has `R(X,Y) = −¼ ad([X,Y])`.
    #[default]
    Standard,
    /// `R(X,Y) = ∇_{[X,Y]} − [∇_X, ∇_Y]`.
    Reversed,
}

/// `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k` for left-invariant fields.
#[derive(Debug, Clone)]
pub struct Connection<F: Field = Rational> {
    algebra: LieAlgebra<F>,
    metric: SymBilinearForm<F>,
    metric_inv: Matrix<F>,
    gamma: Tensor<F>,
}

/// Koszul formula on left-invariant fields:
/// `2⟨∇_X Y, Z⟩ = ⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩`.
pub fn levi_civita<F: Field>(g: &LieAlgebra<F>, b: &SymBilinearForm<F>) -> Result<Connection<F>> {
    let n = g.dim();
    if b.dim() != n {
        return Err(Error::dim(n, b.dim()));
    }
    b.require_nondegenerate()?;
    let inv = b.matrix().inverse()?;
    let half = F::one() / (F::one() + F::one());
    let gamma = Tensor::from_fn(n, 2, |ij| {
        let (i, j) = (ij[0], ij[1]);
        let (ei, ej) = (unit(n, i), unit(n, j));
        let xy = g.bracket_basis(i, j);
        let rhs: Vec<F> = (0..n)
            .map(|k| {
                let ek = unit(n, k);
                let v = b.eval(&xy, &ek) - b.eval(&g.bracket_basis(j, k), &ei)
                    + b.eval(&g.bracket_basis(k, i), &ej);
                v * half.clone()
            })
            .collect();
        inv.mul_vec(&rhs)
    });
    Ok(Connection { algebra: g.clone(), metric: b.clone(), metric_inv: inv, gamma })
}

impl<F: Field> Connection<F> {
    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn metric(&self) -> &SymBilinearForm<F> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `∇_{e_i} e_j`.
    pub fn gamma(&self, i: usize, j: usize) -> &[F] {
        self.gamma.get(&[i, j])
    }

    pub fn christoffel_tensor(&self) -> &Tensor<F> {
        &self.gamma
    }

    /// Matrix of `∇_x`; column `j` is `∇_x e_j`.
    pub fn nabla_matrix(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| {
            (0..n).fold(F::zero(), |acc, i| {
                if x[i].is_zero() {
                    acc
                } else {
                    acc + x[i].clone() * self.gamma(i, j)[k].clone()
                }
            })
        })
    }

    pub fn nabla(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.nabla_matrix(x).mul_vec(y)
    }

    /// `⟨∇_{e_i} e_j, e_k⟩ + ⟨e_j, ∇_{e_i} e_k⟩ = 0`.
    pub fn metric_compatibility(&self) -> Verdict<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.metric.eval(self.gamma(i, j), &unit(n, k))
                        + self.metric.eval(&unit(n, j), self.gamma(i, k));
                    if !v.is_zero() {
                        return Verdict::Fail((i, j, k));
                    }
                }
            }
        }
        Verdict::Pass
    }

    /// `∇_{e_i} e_j − ∇_{e_j} e_i = [e_i, e_j]`.
    pub fn torsion_check(&self) -> Verdict<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let t: Vec<F> = (0..n)
                    .map(|k| {
                        self.gamma(i, j)[k].clone()
                            - self.gamma(j, i)[k].clone()
                            - self.algebra.c(i, j, k)
                    })
                    .collect();
                if t.iter().any(|x| !x.is_zero()) {
                    return Verdict::Fail((i, j));
                }
            }
        }
        Verdict::Pass
    }

    /// `∇_X Y = ½[X,Y]` on basis pairs, which characterizes bi-invariance.
    pub fn is_half_bracket(&self) -> Verdict<(usize, usize)> {
        let n = self.dim();
        let half = F::one() / (F::one() + F::one());
        for i in 0..n {
            for j in 0..n {
                let ok = (0..n)
                    .all(|k| self.gamma(i, j)[k] == self.algebra.c(i, j, k) * half.clone());
                if !ok {
                    return Verdict::Fail((i, j));
                }
            }
        }
        Verdict::Pass
    }

    pub fn curvature(&self) -> CurvatureTensor<F> {
        self.curvature_with(Convention::Standard)
    }

    pub fn curvature_with(&self, convention: Convention) -> CurvatureTensor<F> {
        let n = self.dim();
        let ops: Vec<Matrix<F>> = (0..n).map(|i| self.nabla_matrix(&unit(n, i))).collect();
        let mut cache: Vec<Option<Matrix<F>>> = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let comm = ops[i].commutator(&ops[j]);
                let br = self.nabla_matrix(&self.algebra.bracket_basis(i, j));
                let r = match convention {
                    Convention::Standard => comm.sub(&br),
                    Convention::Reversed => br.sub(&comm),
                };
                cache[i * n + j] = Some(r);
            }
        }
        let tensor = Tensor::from_fn(n, 3, |ijk| {
            cache[ijk[0] * n + ijk[1]].as_ref().expect("filled").column(ijk[2])
        });
        CurvatureTensor { tensor, convention }
    }

    /// `Ric(x, y) = tr(z ↦ R(z, x) y)` under the standard convention.
    pub fn ricci_form(&self) -> SymBilinearForm<F> {
        let r = self.curvature();
        let n = self.dim();
        let m = Matrix::from_fn(n, n, |x, y| {
            (0..n).fold(F::zero(), |acc, z| acc + r.tensor.get(&[z, x, y])[z].clone())
        });
        SymBilinearForm::new(m).expect("Ricci tensor of a Levi-Civita connection is symmetric")
    }

    /// Metric-raised Ricci tensor, `⟨Rc x, y⟩ = Ric(x, y)`.
    pub fn ricci_operator(&self) -> Matrix<F> {
        self.metric_inv.mul(self.ricci_form().matrix())
    }

    pub fn is_flat(&self) -> bool {
        self.curvature().is_zero()
    }

    /// `(∇_{e_a} R)(e_i, e_j) e_k`, as a tensor with inputs `(a, i, j, k)`.
    pub fn nabla_r(&self) -> Tensor<F> {
        let n = self.dim();
        let r = self.curvature();
        let ops: Vec<Matrix<F>> = (0..n).map(|a| self.nabla_matrix(&unit(n, a))).collect();
        Tensor::from_fn(n, 4, |idx| {
            let (a, i, j, k) = (idx[0], idx[1], idx[2], idx[3]);
            let na = &ops[a];
            let mut out = na.mul_vec(r.tensor.get(&[i, j, k]));
            let sub = |out: &mut Vec<F>, v: Vec<F>| {
                for (o, x) in out.iter_mut().zip(v) {
                    *o = o.clone() - x;
                }
            };
            sub(&mut out, r.apply(&na.column(i), &unit(n, j), &unit(n, k)));
            sub(&mut out, r.apply(&unit(n, i), &na.column(j), &unit(n, k)));
            sub(&mut out, r.apply(&unit(n, i), &unit(n, j), &na.column(k)));
            out
        })
    }
}

/// `R(e_i, e_j) e_k`, stored with inputs `(i, j, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor<F: Field = Rational> {
    tensor: Tensor<F>,
    convention: Convention,
}

impl<F: Field> CurvatureTensor<F> {
    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn tensor(&self) -> &Tensor<F> {
        &self.tensor
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    /// Component `l` of `R(e_i, e_j) e_k`.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> F {
        self.tensor.get(&[i, j, k])[l].clone()
    }

    /// Matrix of `R(e_i, e_j)`.
    pub fn operator(&self, i: usize, j: usize) -> Matrix<F> {
        let n = self.dim();
        Matrix::from_fn(n, n, |l, k| self.component(i, j, k, l))
    }

    /// `R(x, y) z` by trilinearity.
    pub fn apply(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let xy = x[i].clone() * y[j].clone();
                for k in (0..n).filter(|&k| !z[k].is_zero()) {
                    let s = xy.clone() * z[k].clone();
                    for (o, v) in out.iter_mut().zip(self.tensor.get(&[i, j, k])) {
                        *o = o.clone() + s.clone() * v.clone();
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    /// `R(x,y)z + R(y,z)x + R(z,x)y = 0` on basis triples.
    pub fn bianchi_check(&self) -> Verdict<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ok = (0..n).all(|l| {
                        (self.component(i, j, k, l)
                            + self.component(j, k, i, l)
                            + self.component(k, i, j, l))
                        .is_zero()
                    });
                    if !ok {
                        return Verdict::Fail((i, j, k));
                    }
                }
            }
        }
        Verdict::Pass
    }
}

/// `R(e_i, e_j) = −¼ ad([e_i, e_j])` for all basis pairs (standard convention).
pub fn quarter_ad_check<F: Field>(
    g: &LieAlgebra<F>,
    r: &CurvatureTensor<F>,
) -> Verdict<(usize, usize)> {
    let n = g.dim();
    let quarter = F::from_i64(-1) / F::from_i64(4);
    let sign = match r.convention() {
        Convention::Standard => F::one(),
        Convention::Reversed => -F::one(),
    };
    for i in 0..n {
        for j in 0..n {
            let expected = g
                .ad(&g.bracket_basis(i, j))
                .expect("dimension")
                .scale(&(quarter.clone() * sign.clone()));
            if r.operator(i, j) != expected {
                return Verdict::Fail((i, j));
            }
        }
    }
    Verdict::Pass
}

/// `Rc = c·Id + D` with `D` a derivation; `residual` is `Rc − c·Id − D`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonCertificate<F: Field = Rational> {
    pub c: F,
    pub d: Matrix<F>,
    pub residual: Matrix<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Soliton<F: Field = Rational> {
    Feasible(SolitonCertificate<F>),
    /// The linear system is inconsistent; names the first equation that
    /// cannot be satisfied together with all earlier ones.
    Infeasible { row: String },
}

impl<F: Field> Soliton<F> {
    pub fn certificate(&self) -> Option<&SolitonCertificate<F>> {
        match self {
            Soliton::Feasible(c) => Some(c),
            Soliton::Infeasible { .. } => None,
        }
    }
}

/// Derivation rows of the bracket tensor, in the `S[p][q] ↦ p·n + q` layout.
pub(crate) fn derivation_rows<F: Field>(g: &LieAlgebra<F>) -> Vec<Vec<F>> {
    let n = g.dim();
    Tensor::from_fn(n, 2, |ij| g.bracket_basis(ij[0], ij[1])).derivation_rows()
}

/// Solves for `(c, D)` jointly: unknowns are the `n²` entries of `D`
/// followed by `c`.
pub fn soliton_solve<F: Field>(g: &LieAlgebra<F>, b: &SymBilinearForm<F>) -> Result<Soliton<F>> {
    let conn = levi_civita(g, b)?;
    let rc = conn.ricci_operator();
    let n = g.dim();
    let unknowns = n * n + 1;
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut rhs: Vec<F> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (idx, mut r) in derivation_rows(g).into_iter().enumerate() {
        r.push(F::zero());
        rows.push(r);
        rhs.push(F::zero());
        labels.push(format!("derivation identity #{idx}"));
    }
    for p in 0..n {
        for q in 0..n {
            let mut r = vec![F::zero(); unknowns];
            r[p * n + q] = F::one();
            if p == q {
                r[n * n] = F::one();
            }
            rows.push(r);
            rhs.push(rc[(p, q)].clone());
            labels.push(format!("Rc - c Id - D at ({p},{q})"));
        }
    }
    let a = Matrix::from_rows(rows.clone())?;
    match a.solve(&rhs)? {
        Some(sol) => {
            let c = sol[n * n].clone();
            let d = Matrix::from_fn(n, n, |p, q| sol[p * n + q].clone());
            let residual = rc.sub(&Matrix::identity(n).scale(&c)).sub(&d);
            Ok(Soliton::Feasible(SolitonCertificate { c, d, residual }))
        }
        None => {
            // Smallest prefix whose augmented rank exceeds its coefficient rank.
            let mut lo = 1;
            let mut hi = rows.len();
            let inconsistent = |m: usize| {
                let a = Matrix::from_rows(rows[..m].to_vec()).expect("rectangular");
                let aug: Vec<Vec<F>> = rows[..m]
                    .iter()
                    .zip(&rhs)
                    .map(|(r, v)| {
                        let mut r = r.clone();
                        r.push(v.clone());
                        r
                    })
                    .collect();
                Matrix::from_rows(aug).expect("rectangular").rank() > a.rank()
            };
            while lo < hi {
                let mid = (lo + hi) / 2;
                if inconsistent(mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Ok(Soliton::Infeasible { row: labels[lo - 1].clone() })
        }
    }
}

/// Witness of a failed naturally reductive check; indices refer to the
/// echelon bases of `h` and `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NrFailure {
    /// `[h_a, m_b] ∉ m`.
    Reductivity { h: usize, m: usize },
    /// `⟨[x,y]_m, z⟩ + ⟨y, [x,z]_m⟩ ≠ 0` for `x, y, z = m_a, m_b, m_c`.
    Identity { x: usize, y: usize, z: usize },
}

impl fmt::Display for NrFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NrFailure::Reductivity { h, m } => write!(f, "[h{h}, m{m}] not in m"),
            NrFailure::Identity { x, y, z } => {
                write!(f, "<[m{x},m{y}]_m, m{z}> + <m{y}, [m{x},m{z}]_m> != 0")
            }
        }
    }
}

/// Checks `[h, m] ⊆ m` and the naturally reductive identity on `m`. `b_m` is
/// a form on `m` written in the echelon basis `m.basis()`, e.g.
/// `B.restrict(&m)`.
pub fn naturally_reductive_check<F: Field>(
    g: &LieAlgebra<F>,
    h: &Subspace<F>,
    m: &Subspace<F>,
    b_m: &SymBilinearForm<F>,
) -> Result<Verdict<NrFailure>> {
    let n = g.dim();
    if h.ambient_dim() != n || m.ambient_dim() != n {
        return Err(Error::dim(n, if h.ambient_dim() != n { h.ambient_dim() } else { m.ambient_dim() }));
    }
    if !h.intersection(m).is_zero() || h.dim() + m.dim() != n {
        return Err(Error::InvalidInput("h and m must be complementary subspaces".into()));
    }
    if b_m.dim() != m.dim() {
        return Err(Error::dim(m.dim(), b_m.dim()));
    }
    b_m.require_nondegenerate()?;

    // Columns: basis of h then basis of m; solving gives both components.
    let cols: Vec<Vec<F>> = h.basis().iter().chain(m.basis()).cloned().collect();
    let split = Matrix::from_columns(&cols, n)?.inverse()?;
    let m_part = |v: &[F]| -> Vec<F> { split.mul_vec(v)[h.dim()..].to_vec() };

    for (a, u) in h.basis().iter().enumerate() {
        for (b, x) in m.basis().iter().enumerate() {
            if !m.contains(&g.bracket_unchecked(u, x)) {
                return Ok(Verdict::Fail(NrFailure::Reductivity { h: a, m: b }));
            }
        }
    }

    let k = m.dim();
    let mb = m.basis();
    for x in 0..k {
        for y in 0..k {
            let xy = m_part(&g.bracket_unchecked(&mb[x], &mb[y]));
            for z in 0..k {
                let xz = m_part(&g.bracket_unchecked(&mb[x], &mb[z]));
                let v = b_m.eval(&xy, &unit(k, z)) + b_m.eval(&unit(k, y), &xz);
                if !v.is_zero() {
                    return Ok(Verdict::Fail(NrFailure::Identity { x, y, z }));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}
