//! Command-line front end for `liemetric`.
//!
//! Exit codes: 0 ok, 1 usage or lookup error, 2 parse error, 3 Jacobi
//! failure, 4 degenerate metric, 5 numerical failure.

pub mod input;

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use liemetric::catalog::classify_dim4_metric;
use liemetric::connection::{levi_civita, quarter_ad_check, Soliton};
use liemetric::forms::{find_nondegenerate, invariant_form_space, is_ad_invariant, series_duality_check};
use liemetric::groups::{GeodesicSpec, GroupElement, MetricModel, Model};
use liemetric::integrator::{compare_to_closed_form, integrate_geodesic, write_csv, SymbolicChart, Trajectory};
use liemetric::isometry::{
    ahc_isometry_check, curvature_isotropy_dim, extract_family, isometric_automorphism_isotropy, linearized_isotropy_dim,
    sample_family, Family,
};
use liemetric::{Error, Nondegeneracy, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use input::resolve;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse { line: usize, msg: String },
    Jacobi((usize, usize, usize)),
    Degenerate(Vec<String>),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Jacobi(_) => 3,
            CliError::Degenerate(_) => 4,
            CliError::Numeric(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            CliError::Jacobi((i, j, k)) => {
                write!(f, "Jacobi identity fails on (e{i}, e{j}, e{k})")
            }
            CliError::Degenerate(radical) => {
                write!(f, "degenerate metric; radical spanned by {}", radical.join(", "))
            }
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => CliError::Parse { line: 0, msg },
            Error::Jacobi(t) => CliError::Jacobi(t),
            Error::Degenerate { radical } => {
                CliError::Degenerate(radical.iter().map(|v| format!("({})", v.join(", "))).collect())
            }
            Error::Numeric(m) => CliError::Numeric(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "liemetric", version, about = "Metric Lie algebras and Lorentzian group geometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure report: series, center, invariant forms, classification.
    Report {
        /// Catalog name or JSON file (`--path` forces a file).
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Levi-Civita geometry of a left-invariant metric.
    Geometry {
        #[arg(allow_hyphen_values = true)]
        target: String,
        /// Metric name (positional form of `--metric`).
        metric_name: Option<String>,
        #[arg(long)]
        metric: Option<String>,
    },
    /// Integrates a geodesic from `Σ a_i X_i(base)` and writes CSV.
    Geodesic {
        /// G0, G1, or H3:h0 / H3:h1 / H3:h2.
        model: String,
        /// Comma-separated frame coefficients a0,a1,...
        #[arg(allow_hyphen_values = true)]
        coefficients: String,
        /// Base point as comma-separated chart coordinates.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        s_end: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1e-3)]
        step: f64,
        /// CSV destination; stdout when absent (the summary then goes to stderr).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Isotropy of the identity: sampled families or `H3` isotropy algebras.
    Isometry {
        /// G0, G1, or H3:h0 / H3:h1 / H3:h2.
        model: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Class of a 4-dimensional Lie algebra carrying an ad-invariant metric.
    Classify {
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 1 };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Report { target } => report(&target, out),
        Command::Geometry { target, metric_name, metric } => {
            geometry(&target, metric.or(metric_name).as_deref(), out)
        }
        Command::Geodesic { model, coefficients, base, s_end, step, out: path } => {
            let model = parse_metric_model(&model)?;
            let a = parse_floats(&coefficients, "coefficients")?;
            let base = base.map(|b| parse_floats(&b, "base")).transpose()?;
            match path {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
                    let mut csv = BufWriter::new(file);
                    geodesic(model, &a, base.as_deref(), s_end, step, &mut csv, out)?;
                    csv.flush()?;
                    writeln!(out, "wrote {}", path.display())?;
                    Ok(())
                }
                None => geodesic(model, &a, base.as_deref(), s_end, step, out, err),
            }
        }
        Command::Isometry { model, samples, seed } => isometry(&model, samples, seed, out),
        Command::Classify { target } => {
            let loaded = resolve(&target)?;
            let class = classify_dim4_metric(&loaded.algebra)?;
            writeln!(out, "class: {}", class.label())?;
            Ok(())
        }
    }
}

fn pass(v: bool) -> &'static str {
    if v {
        "PASS"
    } else {
        "FAIL"
    }
}

fn yes(v: bool) -> &'static str {
    if v {
        "YES"
    } else {
        "NO"
    }
}

fn dims(subspaces: impl Iterator<Item = usize>) -> String {
    subspaces.map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn report(target: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let loaded = resolve(target)?;
    let g = &loaded.algebra;
    let n = g.dim();
    writeln!(out, "algebra: {}", loaded.name)?;
    writeln!(out, "dim: {n}")?;
    writeln!(out, "Jacobi: PASS")?;
    let kind = if g.is_abelian() {
        "abelian"
    } else if g.is_nilpotent() {
        "nilpotent"
    } else if g.is_solvable() {
        "solvable"
    } else {
        "not solvable"
    };
    writeln!(out, "structure: {kind}")?;
    writeln!(out, "lower central series dims: {}", dims((0..=n).map(|r| g.lower_central(r).dim())))?;
    writeln!(out, "upper central series dims: {}", dims((0..=n).map(|r| g.upper_central(r).dim())))?;
    writeln!(out, "C1 dim: {}", g.lower_central(1).dim())?;
    writeln!(out, "center dim: {}", g.center().dim())?;
    writeln!(out, "commutator dim: {}", g.commutator().dim())?;
    let space = invariant_form_space(g);
    writeln!(out, "invariant form space: {}", space.len())?;
    let witness = match find_nondegenerate(&space) {
        Nondegeneracy::Witness(b) => Some(b),
        _ => None,
    };
    match &witness {
        Some(b) => {
            writeln!(out, "nondegenerate witness: {b}, signature {}", b.signature())?;
            let duality = series_duality_check(g, b)?;
            writeln!(out, "series duality C^r = (C_r)^perp: {}", pass(duality.is_pass()))?;
        }
        None => writeln!(out, "no nondegenerate ad-invariant form")?,
    }
    if n == 4 {
        writeln!(out, "class: {}", classify_dim4_metric(g)?.label())?;
    }
    for (name, b) in &loaded.metrics {
        let inv = is_ad_invariant(g, b)?.is_pass();
        writeln!(
            out,
            "metric {name}: signature {}, ad-invariant: {}",
            b.signature(),
            if inv { "yes" } else { "no" }
        )?;
    }
    Ok(())
}

pub fn geometry(target: &str, metric: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    let loaded = resolve(target)?;
    let metric = match metric {
        Some(m) => m.to_string(),
        None => match loaded.metrics.first() {
            Some((name, _)) => name.clone(),
            None => return Err(CliError::Usage(format!("{} has no stored metric; pass one", loaded.name))),
        },
    };
    let g = &loaded.algebra;
    let b = loaded.metric(&metric)?;
    let radical = b.radical();
    if !radical.is_zero() {
        return Err(CliError::Degenerate(
            radical
                .basis()
                .iter()
                .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .collect(),
        ));
    }
    let conn = levi_civita(g, &b)?;
    let r = conn.curvature();
    writeln!(out, "algebra: {}, metric: {metric}", loaded.name)?;
    writeln!(out, "signature: {}", b.signature())?;
    let ad_inv = is_ad_invariant(g, &b)?.is_pass();
    writeln!(out, "ad-invariant: {}", yes(ad_inv))?;
    if ad_inv {
        writeln!(out, "nabla = 1/2 [.,.]: {}", pass(conn.is_half_bracket().is_pass()))?;
        writeln!(out, "R = -1/4 ad([X,Y]): {}", pass(quarter_ad_check(g, &r).is_pass()))?;
    }
    writeln!(out, "flat: {}", yes(r.is_zero()))?;
    writeln!(out, "first Bianchi: {}", pass(r.bianchi_check().is_pass()))?;
    writeln!(out, "nabla R = 0: {}", pass(conn.nabla_r().is_zero()))?;
    writeln!(out, "Ricci operator: {}", conn.ricci_operator())?;
    match liemetric::connection::soliton_solve(g, &b)? {
        Soliton::Feasible(cert) => {
            writeln!(out, "soliton: FEASIBLE")?;
            writeln!(out, "  c = {}", cert.c)?;
            writeln!(out, "  D = {}", cert.d)?;
        }
        Soliton::Infeasible { row } => writeln!(out, "soliton: INFEASIBLE ({row})")?,
    }
    // Double-bracket derivations for bi-invariant metrics; otherwise skew
    // maps preserving R and ∇R.
    let iso = if ad_inv {
        linearized_isotropy_dim(g, &b)
    } else {
        curvature_isotropy_dim(&b, &r, &conn.nabla_r())
    };
    writeln!(out, "isotropy dim: {iso}")?;
    Ok(())
}

/// `G0`, `G1`, `H3:hN` (also `H3(hN)`).
pub fn parse_metric_model(s: &str) -> Result<MetricModel, CliError> {
    let norm = s.trim().replace('(', ":").replace(')', "");
    let m = match norm.to_ascii_lowercase().as_str() {
        "g0" => MetricModel::G0,
        "g1" => MetricModel::G1,
        "h3:h0" => MetricModel::H0,
        "h3:h1" => MetricModel::H1,
        "h3:h2" => MetricModel::H2,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown model {s:?}; expected G0, G1, H3:h0, H3:h1 or H3:h2"
            )))
        }
    };
    Ok(m)
}

fn parse_floats(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Parse { line: 0, msg: format!("{what}: {x:?}: {e}") })
        })
        .collect()
}

pub fn geodesic(
    which: MetricModel,
    a: &[f64],
    base: Option<&[f64]>,
    s_end: f64,
    step: f64,
    csv: &mut dyn Write,
    summary: &mut dyn Write,
) -> Result<(), CliError> {
    let model = which.model();
    if a.len() != model.dim() {
        return Err(CliError::Usage(format!("{model} needs {} coefficients, got {}", model.dim(), a.len())));
    }
    let base = match base {
        Some(p) => GroupElement::from_chart_point(model, p)?,
        None => GroupElement::identity(model),
    };
    let (traj, closed): (Trajectory, Option<f64>) = match model {
        Model::G0 | Model::G1 => {
            let spec = GeodesicSpec { model, base, a: a.to_vec() };
            let rep = compare_to_closed_form(&spec, s_end, step)?;
            (rep.trajectory, Some(rep.max_error))
        }
        Model::H3 => {
            let chart = SymbolicChart::new(which);
            let v0 = liemetric::groups::frame_combination(model, &base, a);
            let traj = integrate_geodesic(&chart, &base.chart_point(), &v0, s_end, step)
                .map_err(|e| CliError::Numeric(e.to_string()))?;
            (traj, None)
        }
    };
    write_csv(&traj, &mut *csv)?;
    let chart = SymbolicChart::new(which);
    let last = traj.last();
    writeln!(summary, "model: {model} ({which})")?;
    writeln!(summary, "steps: {} (h = {:e})", traj.samples.len() - 1, traj.step)?;
    writeln!(summary, "final point: {:?}", last.position)?;
    writeln!(summary, "energy drift: {:e}", traj.energy_drift(&chart))?;
    match closed {
        Some(e) => writeln!(summary, "max error vs closed form: {e:e}")?,
        None => writeln!(summary, "closed form: not available")?,
    }
    Ok(())
}

pub fn isometry(model: &str, samples: usize, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let which = parse_metric_model(model)?;
    let family = match which {
        MetricModel::G0 => Family::G0,
        MetricModel::G1 => Family::G1,
        _ => {
            let iso = isometric_automorphism_isotropy(&which.to_string())?;
            writeln!(out, "model: H3:{which}")?;
            writeln!(out, "flat: {}", yes(iso.flat))?;
            writeln!(out, "locally symmetric: {}", yes(iso.locally_symmetric))?;
            writeln!(out, "skew derivations: {}", iso.skew_derivations)?;
            writeln!(out, "curvature-preserving skew maps: {}", iso.curvature_isotropy)?;
            writeln!(out, "isotropy algebra dim {} ({} type)", iso.dim, iso.kind)?;
            writeln!(
                out,
                "discrete element {}: {}",
                iso.discrete_element,
                if iso.discrete_ok { "isometric automorphism" } else { "FAIL" }
            )?;
            return Ok(());
        }
    };
    let (g, b) = (family.algebra(), family.metric());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<_> = (0..samples).map(|_| sample_family(family, &mut rng).1).collect();
    let mut ok = 0;
    for a in &members {
        if let Verdict::Pass = ahc_isometry_check(&g, &b, a)? {
            ok += 1;
        }
    }
    let products = members.windows(2).filter(|w| extract_family(family, &w[0].mul(&w[1])).is_some()).count();
    let dim = linearized_isotropy_dim(&g, &b);
    let group = match family {
        Family::G0 => "({1,-1} x O(2)) x| R^2",
        Family::G1 => "({1,-1} x O(1,1)) x| R^2",
    };
    writeln!(out, "model: {}", which.model())?;
    writeln!(out, "family (isom): {ok}/{samples} samples PASS; isotropy dim {dim}")?;
    writeln!(out, "products in family: {products}/{}", samples.saturating_sub(1))?;
    writeln!(out, "isotropy group: {group}")?;
    Ok(())
}
