//! Geodesics in coordinates: Christoffel symbols from a metric chart and
//! fixed-step RK4, plus comparison against the closed forms.

use std::io::{self, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::groups::{
    exp_map, frame_combination, geodesic_closed_form, GeodesicSpec, GroupElement, MetricModel,
    Model,
};
use crate::symbolic::CompiledExpr;

/// Metric tensor on a coordinate patch together with its analytic partials.
pub trait MetricChart {
    fn dim(&self) -> usize;
    fn metric_at(&self, p: &[f64]) -> DMatrix<f64>;
    /// `partials[k][(i, j)] = ∂_k g_ij`.
    fn partials_at(&self, p: &[f64]) -> Vec<DMatrix<f64>>;
}

/// Constant metric; geodesics are straight lines.
#[derive(Debug, Clone)]
pub struct ConstantChart(pub DMatrix<f64>);

impl MetricChart for ConstantChart {
    fn dim(&self) -> usize {
        self.0.nrows()
    }

    fn metric_at(&self, _: &[f64]) -> DMatrix<f64> {
        self.0.clone()
    }

    fn partials_at(&self, _: &[f64]) -> Vec<DMatrix<f64>> {
        let n = self.dim();
        vec![DMatrix::zeros(n, n); n]
    }
}

/// Chart of a group-model metric, partials differentiated exactly.
#[derive(Debug, Clone)]
pub struct SymbolicChart {
    model: Model,
    metric: Vec<Vec<CompiledExpr>>,
    partials: Vec<Vec<Vec<CompiledExpr>>>,
}

impl SymbolicChart {
    pub fn new(m: MetricModel) -> Self {
        let g = m.coordinate_metric_symbolic();
        let vars = m.model().vars();
        let metric = g.iter().map(|r| r.iter().map(|e| e.compile()).collect()).collect();
        let partials = vars
            .iter()
            .map(|v| g.iter().map(|r| r.iter().map(|e| e.derivative(*v).compile()).collect()).collect())
            .collect();
        SymbolicChart { model: m.model(), metric, partials }
    }

    fn full(&self, p: &[f64]) -> [f64; 4] {
        match self.model {
            Model::H3 => [0.0, p[0], p[1], p[2]],
            _ => [p[0], p[1], p[2], p[3]],
        }
    }
}

fn eval_matrix(m: &[Vec<CompiledExpr>], p: &[f64; 4]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| m[i][j].eval(p))
}

impl MetricChart for SymbolicChart {
    fn dim(&self) -> usize {
        self.metric.len()
    }

    fn metric_at(&self, p: &[f64]) -> DMatrix<f64> {
        eval_matrix(&self.metric, &self.full(p))
    }

    fn partials_at(&self, p: &[f64]) -> Vec<DMatrix<f64>> {
        let q = self.full(p);
        self.partials.iter().map(|m| eval_matrix(m, &q)).collect()
    }
}

/// `Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij)`, flattened as
/// `gamma[(k·n + i)·n + j]`.
pub fn christoffel(chart: &dyn MetricChart, p: &[f64]) -> Result<Vec<f64>> {
    let n = chart.dim();
    let g = chart.metric_at(p);
    let inv = g
        .try_inverse()
        .ok_or_else(|| Error::Numeric(format!("metric is singular at {p:?}")))?;
    let d = chart.partials_at(p);
    // lowered[l][i][j] = ½(∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let mut lowered = vec![0.0; n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                lowered[(l * n + i) * n + j] =
                    0.5 * (d[i][(j, l)] + d[j][(i, l)] - d[l][(i, j)]);
            }
        }
    }
    let mut gamma = vec![0.0; n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                gamma[(k * n + i) * n + j] =
                    (0..n).map(|l| inv[(k, l)] * lowered[(l * n + i) * n + j]).sum();
            }
        }
    }
    Ok(gamma)
}

/// `x''^k = −Γ^k_ij x'^i x'^j`.
pub fn geodesic_acceleration(chart: &dyn MetricChart, p: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let n = chart.dim();
    let gamma = christoffel(chart, p)?;
    Ok((0..n)
        .map(|k| {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    s += gamma[(k * n + i) * n + j] * v[i] * v[j];
                }
            }
            -s
        })
        .collect())
}

/// Right-hand sides of the geodesic systems for `G0`/`G1` as written in
/// closed form: `t'' = 0`, `x'' = ∓t'y'` / `t'x'`, and so on.
pub fn displayed_geodesic_system(model: Model, p: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let (x, y) = (p[1], p[2]);
    let (dt, dx, dy) = (v[0], v[1], v[2]);
    match model {
        Model::G0 => Ok(vec![0.0, -dt * dy, dt * dx, 0.5 * dt * (x * dx + y * dy)]),
        Model::G1 => Ok(vec![0.0, dt * dx, -dt * dy, -0.5 * dt * (x * dy + y * dx)]),
        Model::H3 => Err(Error::InvalidInput("no displayed system for H3".into())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub s: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rk4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub step: f64,
    pub method: Method,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has the initial sample")
    }

    /// `|g(γ', γ') − g(γ'(0), γ'(0))|`, maximized over samples.
    pub fn energy_drift(&self, chart: &dyn MetricChart) -> f64 {
        let e = |s: &Sample| {
            let g = chart.metric_at(&s.position);
            let v = nalgebra::DVector::from_column_slice(&s.velocity);
            v.dot(&(g * &v))
        };
        let e0 = e(&self.samples[0]);
        self.samples.iter().map(|s| (e(s) - e0).abs()).fold(0.0, f64::max)
    }
}

/// Integration stopped on a non-finite state; `partial` ends at the last
/// finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationError {
    pub reason: String,
    pub partial: Trajectory,
}

impl std::fmt::Display for IntegrationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (last valid s = {})", self.reason, self.partial.last().s)
    }
}

impl std::error::Error for IntegrationError {}

impl From<IntegrationError> for Error {
    fn from(e: IntegrationError) -> Self {
        Error::Numeric(e.to_string())
    }
}

/// Number of uniform steps covering `[0, s_end]` with step at most `step`.
fn step_count(s_end: f64, step: f64) -> std::result::Result<usize, String> {
    if step <= 0.0 || !step.is_finite() {
        return Err(format!("step must be positive, got {step}"));
    }
    if s_end < 0.0 || !s_end.is_finite() {
        return Err(format!("s_end must be finite and nonnegative, got {s_end}"));
    }
    Ok(((s_end / step) - 1e-9).ceil().max(0.0) as usize)
}

fn axpy(y: &[f64], a: f64, x: &[f64]) -> Vec<f64> {
    y.iter().zip(x).map(|(y, x)| y + a * x).collect()
}

/// Classical RK4 for `y' = f(y)`, recording every step.
fn rk4<F>(
    y0: Vec<f64>,
    s_end: f64,
    step: f64,
    mut f: F,
    record: impl Fn(f64, &[f64]) -> Sample,
) -> std::result::Result<Trajectory, IntegrationError>
where
    F: FnMut(&[f64]) -> std::result::Result<Vec<f64>, String>,
{
    let empty = |samples, h| Trajectory { samples, step: h, method: Method::Rk4 };
    let n = step_count(s_end, step)
        .map_err(|reason| IntegrationError { reason, partial: empty(vec![record(0.0, &y0)], step) })?;
    let h = if n == 0 { step } else { s_end / n as f64 };
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(record(0.0, &y0));
    let mut y = y0;
    for i in 0..n {
        let stage = |y: &[f64], f: &mut F| f(y);
        let res = (|| {
            let k1 = stage(&y, &mut f)?;
            let k2 = stage(&axpy(&y, 0.5 * h, &k1), &mut f)?;
            let k3 = stage(&axpy(&y, 0.5 * h, &k2), &mut f)?;
            let k4 = stage(&axpy(&y, h, &k3), &mut f)?;
            Ok::<_, String>(
                (0..y.len())
                    .map(|j| y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]))
                    .collect::<Vec<f64>>(),
            )
        })();
        let next = match res {
            Ok(next) if next.iter().all(|v| v.is_finite()) => next,
            Ok(_) => {
                return Err(IntegrationError {
                    reason: format!("non-finite state at step {}", i + 1),
                    partial: empty(samples, h),
                })
            }
            Err(reason) => return Err(IntegrationError { reason, partial: empty(samples, h) }),
        };
        y = next;
        samples.push(record((i + 1) as f64 * h, &y));
    }
    Ok(empty(samples, h))
}

/// RK4 on `(x, x')` for the geodesic equation. The step is shrunk slightly
/// if needed so that it divides `s_end`.
pub fn integrate_geodesic(
    chart: &dyn MetricChart,
    p0: &[f64],
    v0: &[f64],
    s_end: f64,
    step: f64,
) -> std::result::Result<Trajectory, IntegrationError> {
    let n = chart.dim();
    let mut y0 = p0.to_vec();
    y0.extend_from_slice(v0);
    rk4(
        y0,
        s_end,
        step,
        |y| {
            let (p, v) = y.split_at(n);
            let acc = geodesic_acceleration(chart, p, v).map_err(|e| e.to_string())?;
            let mut out = v.to_vec();
            out.extend(acc);
            Ok(out)
        },
        |s, y| Sample { s, position: y[..n].to_vec(), velocity: y[n..].to_vec() },
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormReport {
    pub trajectory: Trajectory,
    /// Sup-norm coordinate error over all samples.
    pub max_error: f64,
    pub energy_drift: f64,
}

/// Integrates from `Σ a_i X_i(base)` and measures the distance to
/// `base · exp(sX)` at every sample.
pub fn compare_to_closed_form(spec: &GeodesicSpec, s_end: f64, step: f64) -> Result<ClosedFormReport> {
    let which = match spec.model {
        Model::G0 => MetricModel::G0,
        Model::G1 => MetricModel::G1,
        Model::H3 => return Err(Error::InvalidInput("closed forms exist for G0 and G1 only".into())),
    };
    let chart = SymbolicChart::new(which);
    let v0 = frame_combination(spec.model, &spec.base, &spec.a);
    let traj = integrate_geodesic(&chart, &spec.base.chart_point(), &v0, s_end, step)?;
    let mut max_error: f64 = 0.0;
    for s in &traj.samples {
        let exact = geodesic_closed_form(spec, s.s)?;
        let err = s
            .position
            .iter()
            .zip(exact.chart_point())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        max_error = max_error.max(err);
    }
    let energy_drift = traj.energy_drift(&chart);
    Ok(ClosedFormReport { trajectory: traj, max_error, energy_drift })
}

/// Endpoint of the integral curve of the left-invariant field `Σ a_i X_i`
/// from the identity.
pub fn flow_left_invariant_field(model: Model, a: &[f64], s_end: f64, step: f64) -> Result<GroupElement> {
    if a.len() != model.dim() {
        return Err(Error::dim(model.dim(), a.len()));
    }
    let y0 = GroupElement::identity(model).chart_point();
    let traj = rk4(
        y0,
        s_end,
        step,
        |y| {
            let p = GroupElement::from_chart_point(model, y).map_err(|e| e.to_string())?;
            Ok(frame_combination(model, &p, a))
        },
        |s, y| Sample { s, position: y.to_vec(), velocity: Vec::new() },
    )?;
    GroupElement::from_chart_point(model, &traj.last().position)
}

/// One-parameter subgroup residual `exp((s+u)a) − exp(sa)·exp(ua)`.
pub fn homomorphism_residual(model: Model, a: &[f64], s: f64, u: f64) -> Result<f64> {
    let scale = |c: f64| a.iter().map(|x| c * x).collect::<Vec<_>>();
    let lhs = exp_map(model, &scale(s + u))?;
    let rhs = exp_map(model, &scale(s))?.multiply(&exp_map(model, &scale(u))?)?;
    Ok(lhs.distance(&rhs))
}

pub const CSV_HEADER: &str = "s,t,x,y,z,vt,vx,vy,vz";

/// One row per sample with 17 significant digits; on `H3` the `t` and `vt`
/// columns are zero.
pub fn write_csv<W: Write>(traj: &Trajectory, mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for s in &traj.samples {
        let pad = |v: &[f64]| -> Vec<f64> {
            if v.len() == 3 {
                vec![0.0, v[0], v[1], v[2]]
            } else {
                v.to_vec()
            }
        };
        let mut row = vec![s.s];
        row.extend(pad(&s.position));
        row.extend(pad(&s.velocity));
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}
