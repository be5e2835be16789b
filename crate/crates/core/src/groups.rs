//! Coordinate models of `H3`, `G0` and `G1`.
//!
//! `G0` and `G1` are `ℝ ⋉ H3` on `ℝ⁴ = {(t, x, y, z)}` with
//! `(t,v,z)·(t',v',z') = (t+t', v + R(t)v', z + z' + ½ vᵀ J R(t) v')`,
//! `J = [[0, 1], [−1, 0]]`, `R` a rotation for `G0` and `diag(eᵗ, e⁻ᵗ)` for
//! `G1`. `H3` is the `t = 0` slice, with coordinates `(x, y, z)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, Vector2};

use crate::algebra::LieAlgebra;
use crate::catalog;
use crate::error::{Error, Result};
use crate::field::{int, rat, Field, Rational};
use crate::forms::SymBilinearForm;
use crate::isometry::{isometry_family, Family};
use crate::linalg::Matrix;
use crate::symbolic::{lie_bracket, Expr, Var, VectorField};
use crate::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    H3,
    G0,
    G1,
}

impl Model {
    /// Manifold (and Lie algebra) dimension.
    pub fn dim(&self) -> usize {
        match self {
            Model::H3 => 3,
            Model::G0 | Model::G1 => 4,
        }
    }

    pub fn algebra(&self) -> LieAlgebra {
        match self {
            Model::H3 => catalog::h3(),
            Model::G0 => catalog::g0(),
            Model::G1 => catalog::g1(),
        }
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            Model::H3 => None,
            Model::G0 => Some(Family::G0),
            Model::G1 => Some(Family::G1),
        }
    }

    /// Chart variables in coordinate order.
    pub fn vars(&self) -> &'static [Var] {
        match self {
            Model::H3 => &[Var::X, Var::Y, Var::Z],
            Model::G0 | Model::G1 => &Var::ALL,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::H3 => "H3",
            Model::G0 => "G0",
            Model::G1 => "G1",
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H3" => Ok(Model::H3),
            "G0" => Ok(Model::G0),
            "G1" => Ok(Model::G1),
            _ => Err(Error::Lookup { name: s.into(), valid: "H3, G0, G1".into() }),
        }
    }
}

/// Point of a group model; `coords = (t, x, y, z)` with `t = 0` on `H3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub model: Model,
    pub coords: [f64; 4],
}

impl GroupElement {
    pub fn new(model: Model, coords: [f64; 4]) -> Result<Self> {
        if model == Model::H3 && coords[0] != 0.0 {
            return Err(Error::InvalidInput("H3 elements have no t coordinate".into()));
        }
        Ok(GroupElement { model, coords })
    }

    pub fn identity(model: Model) -> Self {
        GroupElement { model, coords: [0.0; 4] }
    }

    /// Chart coordinates: `(x, y, z)` on `H3`, `(t, x, y, z)` otherwise.
    pub fn chart_point(&self) -> Vec<f64> {
        match self.model {
            Model::H3 => self.coords[1..].to_vec(),
            _ => self.coords.to_vec(),
        }
    }

    pub fn from_chart_point(model: Model, p: &[f64]) -> Result<Self> {
        if p.len() != model.dim() {
            return Err(Error::dim(model.dim(), p.len()));
        }
        let coords = match model {
            Model::H3 => [0.0, p[0], p[1], p[2]],
            _ => [p[0], p[1], p[2], p[3]],
        };
        Ok(GroupElement { model, coords })
    }

    pub fn t(&self) -> f64 {
        self.coords[0]
    }

    pub fn v(&self) -> Vector2<f64> {
        Vector2::new(self.coords[1], self.coords[2])
    }

    pub fn z(&self) -> f64 {
        self.coords[3]
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.model != other.model {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {} by {}",
                self.model, other.model
            )));
        }
        let r = rotation(self.model, self.t());
        let (v, v2) = (self.v(), other.v());
        let rv2 = r * v2;
        let z = self.z() + other.z() + 0.5 * v.dot(&(j2() * rv2));
        let nv = v + rv2;
        Ok(GroupElement { model: self.model, coords: [self.t() + other.t(), nv[0], nv[1], z] })
    }

    pub fn inverse(&self) -> GroupElement {
        let v = -(rotation(self.model, -self.t()) * self.v());
        GroupElement { model: self.model, coords: [-self.t(), v[0], v[1], -self.z()] }
    }

    pub fn distance(&self, other: &GroupElement) -> f64 {
        self.coords.iter().zip(other.coords).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, x, y, z] = self.coords;
        match self.model {
            Model::H3 => write!(f, "({x}, {y}, {z})"),
            _ => write!(f, "({t}, {x}, {y}, {z})"),
        }
    }
}

fn j2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// `R_i(t)`; identity on `H3`.
pub fn rotation(model: Model, t: f64) -> Matrix2<f64> {
    match model {
        Model::H3 => Matrix2::identity(),
        Model::G0 => {
            let (s, c) = t.sin_cos();
            Matrix2::new(c, -s, s, c)
        }
        Model::G1 => Matrix2::new(t.exp(), 0.0, 0.0, (-t).exp()),
    }
}

/// `ρ(t) = diag(R_i(t), 1)` acting on `(v, z)`.
pub fn rho(model: Model, t: f64) -> Matrix3<f64> {
    let r = rotation(model, t);
    let mut m = Matrix3::identity();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&r);
    m
}

/// Matrix of `Ad(t, v, z)` in the basis `e0..e3` (independent of `z`).
pub fn ad_matrix(model: Model, t: f64, v: Vector2<f64>) -> Result<Matrix4<f64>> {
    let r = rotation(model, t);
    let (w, jt, norm2) = match model {
        Model::H3 => return Err(Error::InvalidInput("Ad matrix is defined for G0 and G1".into())),
        Model::G0 => (j2() * v, Matrix2::identity(), v.norm_squared()),
        Model::G1 => {
            let w = Vector2::new(-v[0], v[1]);
            (w, Matrix2::new(0.0, 1.0, 1.0, 0.0), 2.0 * w[0] * w[1])
        }
    };
    let bottom = r.transpose() * (jt.transpose() * w);
    let mut a = Matrix4::zeros();
    a[(0, 0)] = 1.0;
    a[(3, 3)] = 1.0;
    for i in 0..2 {
        a[(i + 1, 0)] = w[i];
        for k in 0..2 {
            a[(i + 1, k + 1)] = r[(i, k)];
        }
        a[(3, i + 1)] = -bottom[i];
    }
    a[(3, 0)] = -0.5 * norm2;
    Ok(a)
}

/// Exact `Ad` for an element whose rotation part is the rational matrix
/// `rot` (a rational circle point for `G0`, `diag(λ, 1/λ)` for `G1`).
pub fn ad_matrix_exact<F: Field>(which: Family, rot: &Matrix<F>, v: &[F; 2]) -> Result<Matrix<F>> {
    let w = match which {
        Family::G0 => [v[1].clone(), -v[0].clone()],
        Family::G1 => [-v[0].clone(), v[1].clone()],
    };
    isometry_family(which, 1, &w, rot)
}

/// Exact group element `(R, v, z)` with `R` a rational matrix of determinant
/// one; the law is the same as for the float models.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactElement {
    pub rot: Matrix<Rational>,
    pub v: [Rational; 2],
    pub z: Rational,
}

impl ExactElement {
    pub fn new(rot: Matrix<Rational>, v: [Rational; 2], z: Rational) -> Result<Self> {
        if rot.rows() != 2 || rot.cols() != 2 || rot.determinant() != int(1) {
            return Err(Error::InvalidInput("rotation part must be 2x2 with determinant 1".into()));
        }
        Ok(ExactElement { rot, v, z })
    }

    /// Element of `H3`.
    pub fn heisenberg(x: Rational, y: Rational, z: Rational) -> Self {
        ExactElement { rot: Matrix::identity(2), v: [x, y], z }
    }

    pub fn identity() -> Self {
        Self::heisenberg(int(0), int(0), int(0))
    }

    pub fn multiply(&self, o: &ExactElement) -> ExactElement {
        let rv = self.rot.mul_vec(&o.v);
        // vᵀ J w = v₀w₁ − v₁w₀
        let twist = &self.v[0] * &rv[1] - &self.v[1] * &rv[0];
        ExactElement {
            rot: self.rot.mul(&o.rot),
            v: [&self.v[0] + &rv[0], &self.v[1] + &rv[1]],
            z: &self.z + &o.z + twist * rat(1, 2),
        }
    }

    pub fn inverse(&self) -> ExactElement {
        let inv = self.rot.inverse().expect("determinant one");
        let v = inv.mul_vec(&self.v);
        ExactElement { rot: inv, v: [-v[0].clone(), -v[1].clone()], z: -self.z.clone() }
    }
}

/// Left-invariant frame as exact vector fields in the chart variables.
pub fn frame_symbolic(model: Model) -> Vec<VectorField> {
    let (x, y) = (Expr::var(Var::X), Expr::var(Var::Y));
    let (c, s) = (Expr::cos_t(), Expr::sin_t());
    let half = |e: Expr| e.scale(&rat(1, 2));
    let o = Expr::zero;
    let one = || Expr::int(1);
    match model {
        Model::H3 => vec![
            vec![one(), o(), half(-y.clone())],
            vec![o(), one(), half(x.clone())],
            vec![o(), o(), one()],
        ],
        Model::G0 => vec![
            vec![one(), o(), o(), o()],
            vec![o(), c.clone(), s.clone(), half(&x * &s - &y * &c)],
            vec![o(), -s.clone(), c.clone(), half(&x * &c + &y * &s)],
            vec![o(), o(), o(), one()],
        ],
        Model::G1 => vec![
            vec![one(), o(), o(), o()],
            vec![o(), Expr::exp_t(1), o(), half(-(&y * &Expr::exp_t(1)))],
            vec![o(), o(), Expr::exp_t(-1), half(&x * &Expr::exp_t(-1))],
            vec![o(), o(), o(), one()],
        ],
    }
}

/// Left-invariant frame evaluated at `p`; `frame[i]` is `X_i(p)` in chart
/// coordinates.
pub fn frame(model: Model, p: &GroupElement) -> Vec<Vec<f64>> {
    let [t, x, y, _] = p.coords;
    match model {
        Model::H3 => vec![vec![1.0, 0.0, -0.5 * y], vec![0.0, 1.0, 0.5 * x], vec![0.0, 0.0, 1.0]],
        Model::G0 => {
            let (s, c) = t.sin_cos();
            vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, c, s, 0.5 * (x * s - y * c)],
                vec![0.0, -s, c, 0.5 * (x * c + y * s)],
                vec![0.0, 0.0, 0.0, 1.0],
            ]
        }
        Model::G1 => {
            let (e, ei) = (t.exp(), (-t).exp());
            vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, e, 0.0, -0.5 * y * e],
                vec![0.0, 0.0, ei, 0.5 * x * ei],
                vec![0.0, 0.0, 0.0, 1.0],
            ]
        }
    }
}

/// `Σ a_i X_i(p)`.
pub fn frame_combination(model: Model, p: &GroupElement, a: &[f64]) -> Vec<f64> {
    let f = frame(model, p);
    let mut out = vec![0.0; model.dim()];
    for (ai, xi) in a.iter().zip(&f) {
        for (o, c) in out.iter_mut().zip(xi) {
            *o += ai * c;
        }
    }
    out
}

/// Exact check that the frame fields bracket like the basis of the Lie
/// algebra: `[X_i, X_j] = Σ_k c[i][j][k] X_k`.
pub fn frame_bracket_check(model: Model) -> Verdict<(usize, usize)> {
    let fr = frame_symbolic(model);
    let g = model.algebra();
    let n = model.dim();
    let vars = model.vars();
    for i in 0..n {
        for j in i + 1..n {
            let br = lie_bracket(vars, &fr[i], &fr[j]);
            let want: VectorField = (0..n)
                .map(|comp| {
                    (0..n).fold(Expr::zero(), |acc, k| {
                        acc + fr[k][comp].scale(&g.c(i, j, k))
                    })
                })
                .collect();
            if br != want {
                return Verdict::Fail((i, j));
            }
        }
    }
    Verdict::Pass
}

/// Left-invariant metrics with a coordinate chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricModel {
    G0,
    G1,
    H0,
    H1,
    H2,
}

impl MetricModel {
    pub const ALL: [MetricModel; 5] =
        [MetricModel::G0, MetricModel::G1, MetricModel::H0, MetricModel::H1, MetricModel::H2];

    pub fn model(&self) -> Model {
        match self {
            MetricModel::G0 => Model::G0,
            MetricModel::G1 => Model::G1,
            _ => Model::H3,
        }
    }

    /// Value of the metric on the frame `X_i`.
    pub fn frame_metric(&self) -> SymBilinearForm {
        match self {
            MetricModel::G0 => catalog::gmatrix0_left(),
            MetricModel::G1 => catalog::gmatrix0_right(),
            MetricModel::H0 => catalog::h0(),
            MetricModel::H1 => catalog::h1(),
            MetricModel::H2 => catalog::h2(),
        }
    }

    /// Metric tensor in chart coordinates, `g_ab = g(∂_a, ∂_b)`. A term
    /// `f dα dβ` with `α ≠ β` contributes `f` to both `g_αβ` and `g_βα`.
    pub fn coordinate_metric_symbolic(&self) -> Vec<Vec<Expr>> {
        let (x, y) = (Expr::var(Var::X), Expr::var(Var::Y));
        let q = |e: Expr, n: i64, d: i64| e.scale(&rat(n, d));
        let n = self.model().dim();
        let mut g = vec![vec![Expr::zero(); n]; n];
        let mut set = |a: usize, b: usize, e: Expr| {
            g[a][b] = e.clone();
            g[b][a] = e;
        };
        match self {
            // dz dt + dx² + dy² + ½(y dx dt − x dy dt)
            MetricModel::G0 => {
                set(0, 3, Expr::int(1));
                set(1, 1, Expr::int(1));
                set(2, 2, Expr::int(1));
                set(0, 1, q(y, 1, 2));
                set(0, 2, q(x, -1, 2));
            }
            // dz dt + dx dy + ½(y dx dt − x dy dt)
            MetricModel::G1 => {
                set(0, 3, Expr::int(1));
                set(1, 2, Expr::int(1));
                set(0, 1, q(y, 1, 2));
                set(0, 2, q(x, -1, 2));
            }
            // dx² − x dy² + y/2 dx dy + dy dz
            MetricModel::H0 => {
                set(0, 0, Expr::int(1));
                set(1, 1, -x.clone());
                set(0, 1, q(y, 1, 2));
                set(1, 2, Expr::int(1));
            }
            MetricModel::H1 => {
                set(0, 0, Expr::int(1) - q(&y * &y, 1, 4));
                set(1, 1, Expr::int(1) - q(&x * &x, 1, 4));
                set(2, 2, Expr::int(-1));
                set(0, 1, q(&x * &y, 1, 4));
                set(0, 2, q(y, -1, 2));
                set(1, 2, q(x, 1, 2));
            }
            // 2 dx dy carries through θ¹θ²; the cross term is 1 − xy/4
            MetricModel::H2 => {
                set(0, 0, q(&y * &y, 1, 4));
                set(1, 1, q(&x * &x, 1, 4));
                set(2, 2, Expr::int(1));
                set(0, 1, Expr::int(1) - q(&x * &y, 1, 4));
                set(0, 2, q(y, 1, 2));
                set(1, 2, q(x, -1, 2));
            }
        }
        g
    }

    pub fn coordinate_metric(&self, p: &GroupElement) -> DMatrix<f64> {
        let g = self.coordinate_metric_symbolic();
        let n = g.len();
        DMatrix::from_fn(n, n, |a, b| g[a][b].eval(&p.coords))
    }

    /// Exact check that the chart metric evaluated on the frame is the
    /// constant frame metric; returns the first offending pair.
    pub fn frame_consistency(&self) -> Verdict<(usize, usize)> {
        let g = self.coordinate_metric_symbolic();
        let fr = frame_symbolic(self.model());
        let b = self.frame_metric();
        let n = g.len();
        for i in 0..n {
            for j in i..n {
                let mut v = Expr::zero();
                for a in 0..n {
                    for c in 0..n {
                        v = v + &(&fr[i][a] * &g[a][c]) * &fr[j][c];
                    }
                }
                if v != Expr::constant(b.entry(i, j).clone()) {
                    return Verdict::Fail((i, j));
                }
            }
        }
        Verdict::Pass
    }
}

impl fmt::Display for MetricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricModel::G0 => "g0",
            MetricModel::G1 => "g1",
            MetricModel::H0 => "h0",
            MetricModel::H1 => "h1",
            MetricModel::H2 => "h2",
        })
    }
}

impl FromStr for MetricModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g0" => Ok(MetricModel::G0),
            "g1" => Ok(MetricModel::G1),
            "h0" => Ok(MetricModel::H0),
            "h1" => Ok(MetricModel::H1),
            "h2" => Ok(MetricModel::H2),
            _ => Err(Error::Lookup { name: s.into(), valid: "g0, g1, h0, h1, h2".into() }),
        }
    }
}

fn sinc(th: f64) -> f64 {
    if th == 0.0 {
        1.0
    } else {
        th.sin() / th
    }
}

/// `(1 − cos θ)/θ`.
fn versine_ratio(th: f64) -> f64 {
    if th == 0.0 {
        0.0
    } else {
        let h = (0.5 * th).sin();
        2.0 * h * h / th
    }
}

/// `(θ − sin θ)/θ²`.
fn sine_defect(th: f64) -> f64 {
    if th.abs() < 1e-3 {
        let t2 = th * th;
        th * (1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0)
    } else {
        (th - th.sin()) / (th * th)
    }
}

/// `(sinh θ − θ)/θ²`.
fn sinh_defect(th: f64) -> f64 {
    if th.abs() < 1e-3 {
        let t2 = th * th;
        th * (1.0 / 6.0 + t2 / 120.0 + t2 * t2 / 5040.0)
    } else {
        (th.sinh() - th) / (th * th)
    }
}

/// `(eᶿ − 1)/θ`.
fn expm1_ratio(th: f64) -> f64 {
    if th == 0.0 {
        1.0
    } else {
        th.exp_m1() / th
    }
}

/// `exp(Σ a_i X_i)`; `a` has one entry per frame field. Uses the closed
/// forms, with the `a0 = 0` case as the continuous limit.
pub fn exp_map(model: Model, a: &[f64]) -> Result<GroupElement> {
    if a.len() != model.dim() {
        return Err(Error::dim(model.dim(), a.len()));
    }
    let coords = match model {
        // The one-parameter subgroups of H3 are straight lines in this chart.
        Model::H3 => [0.0, a[0], a[1], a[2]],
        Model::G0 => {
            let th = a[0];
            let (s, v) = (sinc(th), versine_ratio(th));
            [
                th,
                a[1] * s - a[2] * v,
                a[1] * v + a[2] * s,
                a[3] + 0.5 * (a[1] * a[1] + a[2] * a[2]) * sine_defect(th),
            ]
        }
        Model::G1 => {
            let th = a[0];
            [
                th,
                a[1] * expm1_ratio(th),
                a[2] * expm1_ratio(-th),
                a[3] - a[1] * a[2] * sinh_defect(th),
            ]
        }
    };
    Ok(GroupElement { model, coords })
}

/// Initial data of a geodesic: base point and frame coefficients of the
/// initial velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSpec {
    pub model: Model,
    pub base: GroupElement,
    pub a: Vec<f64>,
}

impl GeodesicSpec {
    pub fn at_identity(model: Model, a: &[f64]) -> Self {
        GeodesicSpec { model, base: GroupElement::identity(model), a: a.to_vec() }
    }
}

/// `γ(s) = g · exp(s X)`. Only for the bi-invariant models, where geodesics
/// are translated one-parameter subgroups.
pub fn geodesic_closed_form(spec: &GeodesicSpec, s: f64) -> Result<GroupElement> {
    if spec.model == Model::H3 {
        return Err(Error::InvalidInput("no closed-form geodesics for H3 metrics".into()));
    }
    let sa: Vec<f64> = spec.a.iter().map(|x| s * x).collect();
    spec.base.multiply(&exp_map(spec.model, &sa)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn el(model: Model, c: [f64; 4]) -> GroupElement {
        GroupElement::new(model, c).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let a = el(Model::G0, [1.0, 0.0, 0.0, 2.0]);
        let b = el(Model::G0, [0.5, 0.0, 0.0, -1.0]);
        assert_eq!(a.multiply(&b).unwrap().coords, [1.5, 0.0, 0.0, 1.0]);
        let p = el(Model::H3, [0.0, 1.0, 0.0, 0.0]);
        let q = el(Model::H3, [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(p.multiply(&q).unwrap().coords, [0.0, 1.0, 1.0, 0.5]);
        let g = el(Model::G1, [1.0, 2.0, 3.0, 5.0]);
        let e = g.multiply(&g.inverse()).unwrap();
        assert!(e.distance(&GroupElement::identity(Model::G1)) < 1e-12);
        assert!(a.multiply(&g).is_err());
    }

    #[test]
    fn exact_heisenberg_law() {
        let p = ExactElement::heisenberg(int(1), int(0), int(0));
        let q = ExactElement::heisenberg(int(0), int(1), int(0));
        assert_eq!(p.multiply(&q), ExactElement::heisenberg(int(1), int(1), rat(1, 2)));
        assert_eq!(p.multiply(&p.inverse()), ExactElement::identity());
    }

    #[test]
    fn rho_and_ad_at_trivial_parameters() {
        assert_eq!(rotation(Model::G0, 0.0), Matrix2::identity());
        assert_eq!(rotation(Model::G1, 0.0), Matrix2::identity());
        assert_eq!(rho(Model::G0, 0.0), Matrix3::identity());
        let t = 0.7;
        let a = ad_matrix(Model::G0, t, Vector2::zeros()).unwrap();
        let mut want = Matrix4::identity();
        want.fixed_view_mut::<2, 2>(1, 1).copy_from(&rotation(Model::G0, t));
        assert_abs_diff_eq!(a, want, epsilon = 1e-15);
        let a = ad_matrix(Model::G0, 0.0, Vector2::new(1.0, 0.0)).unwrap();
        assert_eq!(a.column(0).iter().copied().collect::<Vec<_>>(), vec![1.0, 0.0, -1.0, -0.5]);
    }

    #[test]
    fn frames() {
        let fr = frame(Model::H3, &GroupElement::identity(Model::H3));
        assert_eq!(fr, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let fr = frame(Model::G0, &el(Model::G0, [FRAC_PI_2, 0.0, 0.0, 0.0]));
        assert_abs_diff_eq!(fr[1][1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fr[1][2], 1.0, epsilon = 1e-15);
        let fr = frame(Model::G1, &el(Model::G1, [1.0, 1.0, 1.0, 0.0]));
        let e = (-1.0f64).exp();
        assert_abs_diff_eq!(fr[2][2], e, epsilon = 1e-15);
        assert_abs_diff_eq!(fr[2][3], 0.5 * e, epsilon = 1e-15);
    }

    #[test]
    fn symbolic_frames_bracket_correctly() {
        for m in [Model::H3, Model::G0, Model::G1] {
            assert!(frame_bracket_check(m).is_pass(), "{m}");
        }
    }

    #[test]
    fn numeric_frames_match_symbolic() {
        for m in [Model::H3, Model::G0, Model::G1] {
            let p = el(m, [if m == Model::H3 { 0.0 } else { 0.4 }, -1.3, 0.8, 2.0]);
            let sym = frame_symbolic(m);
            let num = frame(m, &p);
            for (fs, fnum) in sym.iter().zip(&num) {
                for (e, v) in fs.iter().zip(fnum) {
                    assert_abs_diff_eq!(e.eval(&p.coords), *v, epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn charts_are_left_invariant() {
        for m in MetricModel::ALL {
            assert!(m.frame_consistency().is_pass(), "{m}");
        }
    }

    #[test]
    fn chart_values_at_origin() {
        let h1 = MetricModel::H1.coordinate_metric(&GroupElement::identity(Model::H3));
        assert_eq!(h1, DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0])));
        let g0 = MetricModel::G0.coordinate_metric(&GroupElement::identity(Model::G0));
        assert_eq!(g0[(0, 3)], 1.0);
        assert_eq!(g0[(1, 1)], 1.0);
        assert_eq!(g0[(0, 0)], 0.0);
    }

    #[test]
    fn closed_form_examples() {
        let s = 0.9;
        let g = geodesic_closed_form(&GeodesicSpec::at_identity(Model::G0, &[1.0, 1.0, 0.0, 0.0]), s).unwrap();
        let want = [s, s.sin(), 1.0 - s.cos(), 0.5 * (s - s.sin())];
        for (a, b) in g.coords.iter().zip(want) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        let g = exp_map(Model::G1, &[1.0, 1.0, 0.0, 5.0]).unwrap();
        assert_abs_diff_eq!(g.coords[1], 1f64.exp() - 1.0, epsilon = 1e-15);
        assert_eq!(g.coords[2], 0.0);
        assert_eq!(g.coords[3], 5.0);
        for m in [Model::G0, Model::G1] {
            let g = exp_map(m, &[0.0, 1.0, 2.0, 3.0]).unwrap();
            assert_eq!(g.coords, [0.0, 1.0, 2.0, 3.0]);
        }
    }

    #[test]
    fn small_a0_limit_is_continuous() {
        for m in [Model::G0, Model::G1] {
            let a = exp_map(m, &[1e-8, 1.3, -0.7, 0.2]).unwrap();
            let b = exp_map(m, &[0.0, 1.3, -0.7, 0.2]).unwrap();
            assert!(a.distance(&b) < 1e-6);
        }
    }

    #[test]
    fn exact_ad_matches_float_ad() {
        let rot = crate::isometry::rational_rotation(&rat(1, 3));
        let v = [rat(1, 2), rat(-2, 1)];
        let exact = ad_matrix_exact(Family::G0, &rot, &v).unwrap();
        let t = (0.6f64).atan2(0.8);
        let fl = ad_matrix(Model::G0, t, Vector2::new(0.5, -2.0)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_abs_diff_eq!(crate::field::to_f64(&exact[(i, j)]), fl[(i, j)], epsilon = 1e-14);
            }
        }
    }
}
