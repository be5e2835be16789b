//! Isometries fixing the identity: the Ambrose–Hicks–Cartan conditions for
//! bi-invariant metrics, the explicit isotropy families of `G0` and `G1`,
//! linearized isotropy algebras, and isometric automorphisms of `h3`.

use std::fmt;

use rand::Rng;

use crate::algebra::LieAlgebra;
use crate::catalog;
use crate::connection::{derivation_rows, levi_civita, CurvatureTensor};
use crate::error::{Error, Result};
use crate::field::{int, rat, Field, Rational};
use crate::forms::{packed, unpack, SymBilinearForm};
use crate::linalg::{unit, Matrix};
use crate::tensor::{skew_rows, Tensor};
use crate::Verdict;

/// Which of the two solvable 4-dimensional metric algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    G0,
    G1,
}

impl Family {
    pub fn algebra(&self) -> LieAlgebra {
        match self {
            Family::G0 => catalog::g0(),
            Family::G1 => catalog::g1(),
        }
    }

    pub fn metric(&self) -> SymBilinearForm {
        match self {
            Family::G0 => catalog::gmatrix0_left(),
            Family::G1 => catalog::gmatrix0_right(),
        }
    }

    /// Form preserved by the 2×2 block: identity for `O(2)`, the off-diagonal
    /// unit matrix for `O(1,1)`.
    pub fn block_form<F: Field>(&self) -> Matrix<F> {
        match self {
            Family::G0 => Matrix::identity(2),
            Family::G1 => Matrix::from_fn(2, 2, |i, j| if i != j { F::one() } else { F::zero() }),
        }
    }

    fn norm2<F: Field>(&self, w: &[F]) -> F {
        match self {
            Family::G0 => w[0].clone() * w[0].clone() + w[1].clone() * w[1].clone(),
            Family::G1 => F::from_i64(2) * w[0].clone() * w[1].clone(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::G0 => "G0",
            Family::G1 => "G1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AhcFailure {
    /// `⟨Ae_i, Ae_j⟩ ≠ ⟨e_i, e_j⟩`.
    Metric(usize, usize),
    /// `A[[e_i,e_j],e_k] ≠ [[Ae_i,Ae_j],Ae_k]`.
    DoubleBracket(usize, usize, usize),
}

impl fmt::Display for AhcFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AhcFailure::Metric(i, j) => write!(f, "<Ae{i}, Ae{j}> != <e{i}, e{j}>"),
            AhcFailure::DoubleBracket(i, j, k) => {
                write!(f, "A[[e{i},e{j}],e{k}] != [[Ae{i},Ae{j}],Ae{k}]")
            }
        }
    }
}

/// Differential at the identity of an isometry fixing it, for a bi-invariant
/// metric: `A` preserves `B` and double brackets.
pub fn ahc_isometry_check<F: Field>(
    g: &LieAlgebra<F>,
    b: &SymBilinearForm<F>,
    a: &Matrix<F>,
) -> Result<Verdict<AhcFailure>> {
    let n = g.dim();
    if a.rows() != n || a.cols() != n {
        return Err(Error::dim(n, a.rows()));
    }
    if b.dim() != n {
        return Err(Error::dim(n, b.dim()));
    }
    let pulled = a.transpose().mul(b.matrix()).mul(a);
    for i in 0..n {
        for j in i..n {
            if &pulled[(i, j)] != b.entry(i, j) {
                return Ok(Verdict::Fail(AhcFailure::Metric(i, j)));
            }
        }
    }
    let cols: Vec<Vec<F>> = (0..n).map(|i| a.column(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ij = g.bracket_basis(i, j);
            let aij = g.bracket_unchecked(&cols[i], &cols[j]);
            for k in 0..n {
                let lhs = a.mul_vec(&g.bracket_unchecked(&ij, &unit(n, k)));
                let rhs = g.bracket_unchecked(&aij, &cols[k]);
                if lhs != rhs {
                    return Ok(Verdict::Fail(AhcFailure::DoubleBracket(i, j, k)));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

/// `R(Au, Av)Aw = A R(u, v) w` on basis triples.
pub fn curvature_equivariance<F: Field>(
    r: &CurvatureTensor<F>,
    a: &Matrix<F>,
) -> Verdict<(usize, usize, usize)> {
    let n = r.dim();
    let cols: Vec<Vec<F>> = (0..n).map(|i| a.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = r.apply(&cols[i], &cols[j], &cols[k]);
                let rhs = a.mul_vec(&r.apply(&unit(n, i), &unit(n, j), &unit(n, k)));
                if lhs != rhs {
                    return Verdict::Fail((i, j, k));
                }
            }
        }
    }
    Verdict::Pass
}

/// Parameters of a member of the isotropy family.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams<F: Field = Rational> {
    pub sign: i32,
    pub w: [F; 2],
    pub atilde: Matrix<F>,
}

/// Assembles
/// `[[±1, 0, 0], [w, Ã, 0], [∓½‖w‖², ∓wᵀJ̃Ã, ±1]]` (with `J̃ = I` for `G0`),
/// where `‖w‖² = w₁² + w₂²` on `G0` and `2w₁w₂` on `G1`.
pub fn isometry_family<F: Field>(
    which: Family,
    sign: i32,
    w: &[F; 2],
    atilde: &Matrix<F>,
) -> Result<Matrix<F>> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput(format!("sign must be +1 or -1, got {sign}")));
    }
    if atilde.rows() != 2 || atilde.cols() != 2 {
        return Err(Error::dim(2, atilde.rows()));
    }
    let j = which.block_form::<F>();
    if atilde.transpose().mul(&j).mul(atilde) != j {
        let group = match which {
            Family::G0 => "O(2)",
            Family::G1 => "O(1,1)",
        };
        return Err(Error::InvalidInput(format!("block {atilde} is not in {group}")));
    }
    let s = F::from_i64(sign as i64);
    let half = F::one() / F::from_i64(2);
    let row3 = j.transpose().mul_vec(w);
    let bottom = atilde.transpose().mul_vec(&row3);
    let mut a = Matrix::zeros(4, 4);
    a[(0, 0)] = s.clone();
    a[(3, 3)] = s.clone();
    for r in 0..2 {
        a[(r + 1, 0)] = w[r].clone();
        for c in 0..2 {
            a[(r + 1, c + 1)] = atilde[(r, c)].clone();
        }
        a[(3, r + 1)] = -(s.clone() * bottom[r].clone());
    }
    a[(3, 0)] = -(s * half * which.norm2(w));
    Ok(a)
}

/// Inverse of [`isometry_family`]: reads off `(sign, w, Ã)` and checks that
/// they rebuild `a` exactly.
pub fn extract_family<F: Field>(which: Family, a: &Matrix<F>) -> Option<FamilyParams<F>> {
    if a.rows() != 4 || a.cols() != 4 {
        return None;
    }
    let sign = if a[(0, 0)] == F::one() {
        1
    } else if a[(0, 0)] == -F::one() {
        -1
    } else {
        return None;
    };
    let w = [a[(1, 0)].clone(), a[(2, 0)].clone()];
    let atilde = Matrix::from_fn(2, 2, |r, c| a[(r + 1, c + 1)].clone());
    let rebuilt = isometry_family(which, sign, &w, &atilde).ok()?;
    (&rebuilt == a).then_some(FamilyParams { sign, w, atilde })
}

/// Rational point on the unit circle, `((1−s²), 2s)/(1+s²)`.
pub fn circle_point(s: &Rational) -> (Rational, Rational) {
    let one = int(1);
    let d = one.clone() + s * s;
    ((one - s * s) / &d, (int(2) * s) / d)
}

/// Rotation by the circle point of parameter `s`.
pub fn rational_rotation(s: &Rational) -> Matrix<Rational> {
    let (c, sn) = circle_point(s);
    Matrix::from_rows(vec![vec![c.clone(), -sn.clone()], vec![sn, c]]).expect("2x2")
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.random_range(-6..=6), rng.random_range(1..=4))
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// Random element of `O(2)` (rotations and reflections at rational circle
/// points) or `O(1,1)` (`±diag(λ, 1/λ)` and the swapped variants).
pub fn sample_block<R: Rng + ?Sized>(which: Family, rng: &mut R) -> Matrix<Rational> {
    let z = int(0);
    match which {
        Family::G0 => {
            let (c, s) = circle_point(&small_rational(rng));
            let rows = if rng.random_bool(0.5) {
                vec![vec![c.clone(), -s.clone()], vec![s, c]]
            } else {
                vec![vec![c.clone(), s.clone()], vec![s, -c]]
            };
            Matrix::from_rows(rows).expect("2x2")
        }
        Family::G1 => {
            let l = nonzero_rational(rng);
            let li = int(1) / &l;
            let rows = if rng.random_bool(0.5) {
                vec![vec![l, z.clone()], vec![z, li]]
            } else {
                vec![vec![z.clone(), l], vec![li, z]]
            };
            Matrix::from_rows(rows).expect("2x2")
        }
    }
}

/// Random family member with its parameters.
pub fn sample_family<R: Rng + ?Sized>(
    which: Family,
    rng: &mut R,
) -> (FamilyParams<Rational>, Matrix<Rational>) {
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    let w = [small_rational(rng), small_rational(rng)];
    let atilde = sample_block(which, rng);
    let a = isometry_family(which, sign, &w, &atilde).expect("sampled block is in the group");
    (FamilyParams { sign, w, atilde }, a)
}

fn nullity<F: Field>(n2: usize, rows: Vec<Vec<F>>) -> usize {
    if rows.is_empty() {
        return n2;
    }
    Matrix::from_rows(rows).expect("rectangular").nullspace().len()
}

/// Dimension of the solution space of the linearized isometry conditions:
/// `S` skew for `B` and a derivation of the double bracket `[[x,y],z]`.
pub fn linearized_isotropy_dim<F: Field>(g: &LieAlgebra<F>, b: &SymBilinearForm<F>) -> usize {
    let n = g.dim();
    let dbl = Tensor::from_fn(n, 3, |ijk| {
        g.bracket_unchecked(&g.bracket_basis(ijk[0], ijk[1]), &unit(n, ijk[2]))
    });
    let mut rows = skew_rows(b);
    rows.extend(dbl.derivation_rows());
    nullity(n * n, rows)
}

/// Skew maps annihilating `R` and `∇R`: the isotropy algebra of a locally
/// symmetric metric, and an upper bound for it in general.
pub fn curvature_isotropy_dim<F: Field>(
    b: &SymBilinearForm<F>,
    r: &CurvatureTensor<F>,
    nabla_r: &Tensor<F>,
) -> usize {
    let mut rows = skew_rows(b);
    rows.extend(r.tensor().derivation_rows());
    rows.extend(nabla_r.derivation_rows());
    nullity(b.dim() * b.dim(), rows)
}

/// Symmetric `Q` on `h3 = span{e1, e2, e3}` for which `ad(v)`,
/// `v = e0 + αe1 + βe2 + γe3`, is skew-adjoint. Forms are 3×3 in the basis
/// `e1, e2, e3`.
pub fn skew_adjoint_form_space(
    which: Family,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
) -> Vec<SymBilinearForm> {
    let g = which.algebra();
    let v = vec![int(1), alpha.clone(), beta.clone(), gamma.clone()];
    let ad = g.ad(&v).expect("dimension 4");
    // h3 is the ideal C¹ = span{e1, e2, e3}; restrict ad(v) to it.
    let m = Matrix::from_fn(3, 3, |k, j| ad[(k + 1, j + 1)].clone());
    let unknowns = 6;
    let mut rows = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let mut row = vec![int(0); unknowns];
            for k in 0..3 {
                row[packed(3, k, j)] += &m[(k, i)];
                row[packed(3, i, k)] += &m[(k, j)];
            }
            if row.iter().any(|x| x != &int(0)) {
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns).map(|i| unit(unknowns, i)).collect()
    } else {
        Matrix::from_rows(rows).expect("rectangular").nullspace()
    };
    basis.iter().map(|s| unpack(3, s)).collect()
}

/// Isotropy data for a left-invariant metric on `H3`.
#[derive(Debug, Clone, PartialEq)]
pub struct H3Isotropy {
    pub metric: String,
    pub flat: bool,
    pub locally_symmetric: bool,
    /// Derivations of `h3` that are skew for the metric (isometric
    /// automorphisms, infinitesimally).
    pub skew_derivations: usize,
    /// Skew maps annihilating `R` and `∇R` under the derivation action.
    pub curvature_isotropy: usize,
    /// Dimension of the isotropy algebra: curvature isotropy on locally
    /// symmetric metrics (Ambrose–Hicks–Cartan), skew derivations otherwise.
    pub dim: usize,
    pub kind: &'static str,
    pub discrete_element: Matrix<Rational>,
    /// The discrete element is an isometric automorphism.
    pub discrete_ok: bool,
}

/// Computes the isotropy algebra of `(H3, metric)` for `metric` one of
/// `h0`, `h1`, `h2`.
pub fn isometric_automorphism_isotropy(metric_name: &str) -> Result<H3Isotropy> {
    let g = catalog::h3();
    let (b, kind, diag) = match metric_name {
        "h0" => (catalog::h0(), "O(2,1)", [1, -1, -1]),
        "h1" => (catalog::h1(), "O(2)", [1, -1, -1]),
        "h2" => (catalog::h2(), "O(1,1)", [-1, -1, 1]),
        _ => {
            return Err(Error::Lookup { name: metric_name.into(), valid: "h0, h1, h2".into() })
        }
    };
    let n = 3;
    let conn = levi_civita(&g, &b)?;
    let r = conn.curvature();
    let nr = conn.nabla_r();
    let flat = r.is_zero();
    let locally_symmetric = nr.is_zero();

    let mut rows = skew_rows(&b);
    rows.extend(derivation_rows(&g));
    let skew_derivations = nullity(n * n, rows);

    let curvature_isotropy = curvature_isotropy_dim(&b, &r, &nr);

    let dim = if locally_symmetric { curvature_isotropy } else { skew_derivations };

    let discrete_element = Matrix::diagonal(&diag.map(int));
    let is_isometry = discrete_element.transpose().mul(b.matrix()).mul(&discrete_element) == *b.matrix();
    let is_automorphism = (0..n).all(|i| {
        (0..n).all(|j| {
            let a = &discrete_element;
            g.bracket_unchecked(&a.column(i), &a.column(j)) == a.mul_vec(&g.bracket_basis(i, j))
        })
    });

    Ok(H3Isotropy {
        metric: metric_name.into(),
        flat,
        locally_symmetric,
        skew_derivations,
        curvature_isotropy,
        dim,
        kind,
        discrete_element,
        discrete_ok: is_isometry && is_automorphism,
    })
}
