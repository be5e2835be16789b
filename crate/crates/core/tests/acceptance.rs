//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always shown; exits nonzero on failure.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use liemetric::catalog::{self, classify_dim4_metric, Dim4Class};
use liemetric::connection::{levi_civita, quarter_ad_check, soliton_solve, Convention, NrFailure};
use liemetric::field::to_f64;
use liemetric::forms::{find_nondegenerate, invariant_form_space, killing_form, series_duality_check};
use liemetric::groups::{frame, geodesic_closed_form, GeodesicSpec, GroupElement, MetricModel, Model};
use liemetric::integrator::{
    compare_to_closed_form, displayed_geodesic_system, geodesic_acceleration, homomorphism_residual,
    SymbolicChart,
};
use liemetric::isometry::{
    ahc_isometry_check, curvature_equivariance, extract_family, isometric_automorphism_isotropy,
    linearized_isotropy_dim, sample_family, skew_adjoint_form_space, Family,
};
use liemetric::linalg::unit;
use liemetric::{
    connection::naturally_reductive_check, int, rat, H3Embedding, LieAlgebra, Matrix, Nondegeneracy,
    Rational, Subspace, SymBilinearForm, Verdict,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure!(t < budget, "{what} took {t:?}, budget {budget:?}");
    Ok(t)
}

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Independent float oracle: nullity of the invariance system
/// `B([e_a, e_i], e_j) + B(e_i, [e_a, e_j]) = 0` in the symmetric unknowns.
fn invariant_space_dim_f64(g: &LieAlgebra) -> usize {
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let col = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut rows = Vec::new();
    for a in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0.0; pairs.len()];
                for k in 0..n {
                    row[col(k, j)] += to_f64(&g.c(a, i, k));
                    row[col(i, k)] += to_f64(&g.c(a, j, k));
                }
                rows.push(row);
            }
        }
    }
    let m = DMatrix::from_fn(rows.len(), pairs.len(), |r, c| rows[r][c]);
    pairs.len() - m.rank(1e-9)
}

fn ac1() -> Check {
    let start = Instant::now();
    let mut detail = Vec::new();
    for (name, want) in [("g0", 2), ("g1", 2), ("h3", 3), ("sl2", 1), ("so3", 1), ("aff", 1)] {
        let g = catalog::get(name).map_err(|e| e.to_string())?.algebra;
        let space = invariant_form_space(&g);
        ensure!(space.len() == want, "{name}: form space dim {} != {want}", space.len());
        ensure!(invariant_space_dim_f64(&g) == want, "{name}: float oracle disagrees");
        detail.push(format!("{name}:{}", space.len()));
    }
    for f in invariant_form_space(&catalog::g0()) {
        ensure!(f.entry(1, 1) == f.entry(2, 2) && f.entry(2, 2) == f.entry(0, 3), "g0 pattern: {f}");
    }
    for f in invariant_form_space(&catalog::g1()) {
        ensure!(f.entry(1, 2) == f.entry(0, 3), "g1 pattern: {f}");
    }
    for name in ["sl2", "so3"] {
        let g = catalog::get(name).unwrap().algebra;
        let k = killing_form(&g);
        let f = &invariant_form_space(&g)[0];
        let both = Matrix::from_rows(vec![f.matrix().to_rows().concat(), k.matrix().to_rows().concat()]).unwrap();
        ensure!(both.rank() == 1, "{name}: not a Killing multiple");
    }
    for name in ["aff", "h3"] {
        let g = catalog::get(name).unwrap().algebra;
        ensure!(
            matches!(find_nondegenerate(&invariant_form_space(&g)), Nondegeneracy::AllDegenerate(_)),
            "{name} has a nondegenerate invariant form"
        );
    }
    let t = within(start, Duration::from_secs(1), "AC1")?;
    Ok(format!("dims {} ; {t:.2?}", detail.join(" ")))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    loop {
        let p = Matrix::from_fn(n, n, |_, _| rat(rng.random_range(-3..=3), rng.random_range(1..=2)));
        if p.determinant() != int(0) {
            return p;
        }
    }
}

fn ac2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cases = [
        ("r4", Dim4Class::R4),
        ("r+sl2", Dim4Class::RPlusSl2),
        ("r+so3", Dim4Class::RPlusSo3),
        ("g0", Dim4Class::OscillatorG0),
        ("g1", Dim4Class::G1),
    ];
    for (name, want) in cases {
        let g = catalog::get(name).unwrap().algebra;
        let got = classify_dim4_metric(&g).map_err(|e| e.to_string())?;
        ensure!(got == want, "{name}: {got:?}");
        for trial in 0..100 {
            let p = random_invertible(&mut rng, 4);
            let h = g.change_of_basis(&p).map_err(|e| e.to_string())?;
            let got = classify_dim4_metric(&h).map_err(|e| e.to_string())?;
            ensure!(got == want, "{name}, basis change {trial}: {got:?}");
        }
    }
    Ok("5 entries x 100 basis changes".into())
}

fn ac3() -> Check {
    for (name, g, b) in [
        ("g0", catalog::g0(), catalog::gmatrix0_left()),
        ("g1", catalog::g1(), catalog::gmatrix0_right()),
    ] {
        let conn = levi_civita(&g, &b).map_err(|e| e.to_string())?;
        let r = conn.curvature();
        ensure!(conn.is_half_bracket().is_pass(), "{name}: nabla != 1/2 bracket");
        ensure!(quarter_ad_check(&g, &r).is_pass(), "{name}: R != -1/4 ad([X,Y])");
        ensure!(conn.nabla_r().is_zero(), "{name}: nabla R != 0");
        ensure!(r.bianchi_check().is_pass(), "{name}: Bianchi");
        ensure!(
            series_duality_check(&g, &b).map_err(|e| e.to_string())?.is_pass(),
            "{name}: series duality"
        );
        for r in 0..=4 {
            ensure!(g.lower_central(r).dim() + g.upper_central(r).dim() == 4, "{name}: dims at r={r}");
        }
    }
    Ok("g0, g1: nabla = 1/2[,], R = -1/4 ad, nabla R = 0, Bianchi, C^r = (C_r)^perp".into())
}

fn ac4() -> Check {
    let g = catalog::h3();
    let flat = |b: SymBilinearForm| levi_civita(&g, &b).map(|c| c.is_flat()).map_err(|e| e.to_string());
    ensure!(flat(catalog::h0())?, "h0 not flat");
    ensure!(!flat(catalog::h1())?, "h1 flat");
    ensure!(!flat(catalog::h2())?, "h2 flat");
    Ok("h0 flat; h1, h2 not flat".into())
}

fn is_derivation(g: &LieAlgebra, d: &Matrix<Rational>) -> bool {
    let n = g.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = d.mul_vec(&g.bracket_basis(i, j));
            let a = g.bracket(&d.column(i), &unit(n, j)).unwrap();
            let b = g.bracket(&unit(n, i), &d.column(j)).unwrap();
            lhs == liemetric::linalg::add_vec(&a, &b)
        })
    })
}

fn ac5() -> Check {
    let g = catalog::h3();
    let mut certs = Vec::new();
    for (name, b) in [("h1", catalog::h1()), ("h2", catalog::h2())] {
        let sol = soliton_solve(&g, &b).map_err(|e| e.to_string())?;
        let cert = sol.certificate().ok_or(format!("{name}: infeasible"))?.clone();
        ensure!(cert.residual.is_zero(), "{name}: residual");
        ensure!(is_derivation(&g, &cert.d), "{name}: D not a derivation");

        // Reversed curvature sign: Rc -> -Rc, still c·Id + derivation.
        let conn = levi_civita(&g, &b).map_err(|e| e.to_string())?;
        let rev = conn.curvature_with(Convention::Reversed);
        let n = 3;
        let ric = Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| rev.apply(&unit(n, k), &unit(n, i), &unit(n, j))[k].clone()).sum()
        });
        let op = b.matrix().inverse().unwrap().mul(&ric);
        let d_rev = op.sub(&Matrix::identity(n).scale(&-cert.c.clone()));
        ensure!(is_derivation(&g, &d_rev), "{name}: reversed convention is not a soliton");
        certs.push((cert, op));
    }
    let (cert, rc_rev) = &certs[0];
    ensure!(cert.c == certs[1].0.c && cert.d == certs[1].0.d, "h1 and h2 certificates differ");
    // Reference constants: c = 3/2, D = diag(-1, -1, -2), written as Rc = c·Id − D.
    let ref_c = rat(3, 2);
    let ref_d = Matrix::diagonal(&v(&[-1, -1, -2]));
    let id = Matrix::identity(3);
    let rc = id.scale(&cert.c).add(&cert.d);
    let ref_minus = id.scale(&ref_c).sub(&ref_d);
    let same_constants = cert.c == ref_c && cert.d == ref_d;
    let minus_form_matches = ref_minus == rc || ref_minus == *rc_rev;
    Ok(format!(
        "Rc = {}·Id + D, D = {} (both h1, h2); reference (c, D) = ({ref_c}, {ref_d}): constants {}; \
         reference form c·Id − D = {ref_minus} {} Rc under either curvature sign; reversed sign gives ({}, -D)",
        cert.c,
        cert.d,
        if same_constants { "match" } else { "differ" },
        if minus_form_matches { "matches" } else { "does not match" },
        -cert.c.clone()
    ))
}

fn ac6() -> Check {
    let g = catalog::g0();
    let b = catalog::gmatrix0_left();
    let nr = |h: &Subspace<Rational>, m: &Subspace<Rational>, bm: &SymBilinearForm| {
        naturally_reductive_check(&g, h, m, bm).map_err(|e| e.to_string())
    };
    ensure!(nr(&Subspace::zero(4), &Subspace::full(4), &b)?.is_pass(), "h = 0 fails");
    let h = Subspace::span(4, &[v(&[1, 0, 0, 1])]).unwrap();
    let m = Subspace::span(4, &[v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0]), v(&[1, 0, 0, -1])]).unwrap();
    ensure!(nr(&h, &m, &b.restrict(&m))?.is_pass(), "derived pair fails");
    let h = Subspace::span(4, &[v(&[0, 1, 0, 1])]).unwrap();
    let m = Subspace::coordinate(4, &[0, 1, 2]);
    let r1 = nr(&h, &m, &SymBilinearForm::diagonal(&v(&[1, 1, 1])))?;
    ensure!(matches!(r1, Verdict::Fail(NrFailure::Reductivity { .. })), "broken pair 1: {r1:?}");
    let h = Subspace::coordinate(4, &[0]);
    let m = Subspace::coordinate(4, &[1, 2, 3]);
    let r2 = nr(&h, &m, &SymBilinearForm::diagonal(&v(&[1, 2, 1])))?;
    let Verdict::Fail(f2 @ NrFailure::Identity { .. }) = &r2 else {
        return Err(format!("broken pair 2: {r2:?}"));
    };
    Ok(format!("two passing pairs; broken: {} / {f2}", r1.failure().unwrap()))
}

fn ac7() -> Check {
    let half = |n| rat(n, 2);
    let ab = [half(-2), half(-1), half(0), half(1), half(2)];
    let gs = [int(-1), int(0), int(1)];
    let mut checked = 0;
    for which in [Family::G0, Family::G1] {
        for a in &ab {
            for b in &ab {
                for c in &gs {
                    let sol = skew_adjoint_form_space(which, a, b, c);
                    // subspace cut out by b33 = 0
                    let row: Vec<Rational> = sol.iter().map(|f| f.entry(2, 2).clone()).collect();
                    let coeffs = if sol.is_empty() {
                        vec![]
                    } else if row.iter().all(|x| *x == int(0)) {
                        (0..sol.len()).map(|i| unit(sol.len(), i)).collect()
                    } else {
                        Matrix::from_rows(vec![row]).unwrap().nullspace()
                    };
                    let forms: Vec<_> = coeffs.iter().map(|c| SymBilinearForm::combination(&sol, c)).collect();
                    if forms.is_empty() {
                        continue;
                    }
                    ensure!(
                        matches!(find_nondegenerate(&forms), Nondegeneracy::AllDegenerate(_)),
                        "{which:?} α={a} β={b} γ={c}: nondegenerate Q with b33 = 0"
                    );
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} grid points, all b33 = 0 forms degenerate"))
}

fn ac8() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut standard = 0;
    for g in [catalog::g0(), catalog::g1()] {
        for _ in 0..10_000 {
            // Half the trials stay inside span{e1, e2, e3}.
            let ideal = rng.random_bool(0.5);
            let mut r = |i: usize| -> Rational {
                if ideal && i == 0 {
                    int(0)
                } else {
                    rat(rng.random_range(-4..=4), rng.random_range(1..=3))
                }
            };
            let v1: Vec<_> = (0..4).map(&mut r).collect();
            let v2: Vec<_> = (0..4).map(&mut r).collect();
            let v3 = g.bracket(&v1, &v2).unwrap();
            match g.check_h3_subalgebra(&v1, &v2, &v3).map_err(|e| e.to_string())? {
                H3Embedding::Nonstandard => return Err(format!("nonstandard copy: {v1:?}, {v2:?}")),
                H3Embedding::Standard => standard += 1,
                H3Embedding::NotH3 => {}
            }
        }
    }
    ensure!(standard > 0, "no Heisenberg copies were sampled");
    let t = within(start, Duration::from_secs(5), "AC8")?;
    Ok(format!("20000 trials, {standard} standard copies, 0 nonstandard; {t:.2?}"))
}

fn ac9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for which in [Family::G0, Family::G1] {
        let (g, b) = (which.algebra(), which.metric());
        let r = levi_civita(&g, &b).map_err(|e| e.to_string())?.curvature();
        let members: Vec<_> = (0..200).map(|_| sample_family(which, &mut rng)).collect();
        for (n, (p, a)) in members.iter().enumerate() {
            let ok = ahc_isometry_check(&g, &b, a).map_err(|e| e.to_string())?;
            ensure!(ok.is_pass(), "{which:?} sample {n}: {ok:?}");
            ensure!(extract_family(which, a).as_ref() == Some(p), "{which:?} sample {n} re-extraction");
            let prod = a.mul(&members[(n + 1) % members.len()].1);
            ensure!(extract_family(which, &prod).is_some(), "{which:?} product {n} left the family");
            if n < 50 {
                ensure!(curvature_equivariance(&r, a).is_pass(), "{which:?} sample {n}: curvature equivariance");
            }
        }
        let dim = linearized_isotropy_dim(&g, &b);
        ensure!(dim == 3, "{which:?}: linearized isotropy dim {dim}");
    }
    Ok("G0, G1: 200/200 family members, products closed, isotropy dim 3, equivariance on 50".into())
}

fn ac10() -> Check {
    let mut dims = Vec::new();
    let mut skew = Vec::new();
    for (name, want) in [("h1", 1), ("h2", 1), ("h0", 3)] {
        let iso = isometric_automorphism_isotropy(name).map_err(|e| e.to_string())?;
        ensure!(iso.dim == want, "{name}: isotropy dim {} != {want}", iso.dim);
        ensure!(iso.discrete_ok, "{name}: discrete element");
        dims.push(iso.dim.to_string());
        skew.push(iso.skew_derivations.to_string());
    }
    Ok(format!(
        "isotropy dims (h1, h2, h0) = ({}); skew derivations alone = ({})",
        dims.join(", "),
        skew.join(", ")
    ))
}

fn ac11() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut worst_err, mut worst_drift) = (0f64, 0f64);
    for model in [Model::G0, Model::G1] {
        for n in 0..20 {
            let a0 = if n == 0 {
                0.0
            } else {
                rng.random_range(0.5..=2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 }
            };
            let mut a = vec![a0];
            a.extend((0..3).map(|_| rng.random_range(-1.0..1.0)));
            let base = if n % 2 == 0 {
                GroupElement::identity(model)
            } else {
                let c: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
                GroupElement::new(model, c).unwrap()
            };
            let spec = GeodesicSpec { model, base, a };
            let rep = compare_to_closed_form(&spec, 2.0, 1e-3).map_err(|e| e.to_string())?;
            ensure!(rep.max_error <= 1e-8, "{model} ic {n}: error {:e}", rep.max_error);
            ensure!(rep.energy_drift <= 1e-8, "{model} ic {n}: drift {:e}", rep.energy_drift);
            worst_err = worst_err.max(rep.max_error);
            worst_drift = worst_drift.max(rep.energy_drift);
        }
    }

    let mut factors = Vec::new();
    for model in [Model::G0, Model::G1] {
        let spec = GeodesicSpec::at_identity(model, &[1.5, 1.0, -0.5, 0.25]);
        let coarse = compare_to_closed_form(&spec, 2.0, 0.1).map_err(|e| e.to_string())?.max_error;
        let fine = compare_to_closed_form(&spec, 2.0, 0.05).map_err(|e| e.to_string())?.max_error;
        let f = coarse / fine;
        ensure!((12.0..=20.0).contains(&f), "{model}: convergence factor {f}");
        factors.push(format!("{f:.2}"));
    }

    let mut hom = 0f64;
    for model in [Model::G0, Model::G1] {
        for _ in 0..20 {
            let a: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let (s, u) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            hom = hom.max(homomorphism_residual(model, &a, s, u).map_err(|e| e.to_string())?);
        }
    }
    ensure!(hom <= 1e-10, "homomorphism residual {hom:e}");

    let mut cont = 0f64;
    for model in [Model::G0, Model::G1] {
        let line = GeodesicSpec::at_identity(model, &[0.0, 0.7, -1.1, 0.4]);
        for eps in [1e-7, 1e-9, 1e-12, -1e-10] {
            let near = GeodesicSpec::at_identity(model, &[eps, 0.7, -1.1, 0.4]);
            for s in [0.5, 1.0, 2.0] {
                let d = geodesic_closed_form(&near, s)
                    .and_then(|p| geodesic_closed_form(&line, s).map(|q| p.distance(&q)))
                    .map_err(|e| e.to_string())?;
                cont = cont.max(d);
            }
        }
    }
    ensure!(cont <= 1e-6, "a0 -> 0 discontinuity {cont:e}");
    let t = within(start, Duration::from_secs(10), "AC11")?;
    Ok(format!(
        "40 ICs: max err {worst_err:.1e}, drift {worst_drift:.1e}; order factors {}; hom {hom:.1e}; continuity {cont:.1e}; {t:.2?}",
        factors.join(", ")
    ))
}

fn ac12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut ode = 0f64;
    for (model, m) in [(Model::G0, MetricModel::G0), (Model::G1, MetricModel::G1)] {
        let chart = SymbolicChart::new(m);
        for _ in 0..100 {
            let p: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let vel: Vec<f64> = (0..4).map(|_| rng.random_range(-2.0..2.0)).collect();
            let ours = geodesic_acceleration(&chart, &p, &vel).map_err(|e| e.to_string())?;
            let shown = displayed_geodesic_system(model, &p, &vel).map_err(|e| e.to_string())?;
            for (a, b) in ours.iter().zip(&shown) {
                ode = ode.max((a - b).abs());
            }
        }
    }
    ensure!(ode <= 1e-10, "ODE mismatch {ode:e}");

    let mut frame_err = 0f64;
    for m in MetricModel::ALL {
        let model = m.model();
        let want = m.frame_metric().matrix().map(|x| x.clone());
        for _ in 0..100 {
            let mut c: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
            if model == Model::H3 {
                c[0] = 0.0;
            }
            let p = GroupElement::new(model, c).unwrap();
            let f = frame(model, &p);
            let g = m.coordinate_metric(&p);
            for i in 0..f.len() {
                for j in 0..f.len() {
                    let xi = nalgebra::DVector::from_column_slice(&f[i]);
                    let xj = nalgebra::DVector::from_column_slice(&f[j]);
                    let got = xi.dot(&(&g * xj));
                    frame_err = frame_err.max((got - to_f64(&want.row(i)[j])).abs());
                }
            }
        }
    }
    ensure!(frame_err <= 1e-12, "frame metric mismatch {frame_err:e}");
    Ok(format!("ODE max diff {ode:.1e}; frame metric max diff {frame_err:.1e}"))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Check); 12] = [
        ("AC1", "invariant-form spaces", ac1),
        ("AC2", "dim-4 classification", ac2),
        ("AC3", "bi-invariant identities", ac3),
        ("AC4", "flatness on H3", ac4),
        ("AC5", "Ricci solitons", ac5),
        ("AC6", "naturally reductive checks", ac6),
        ("AC7", "degenerate skew-adjoint forms", ac7),
        ("AC8", "Heisenberg rigidity", ac8),
        ("AC9", "isometry families", ac9),
        ("AC10", "H3 isotropy dimensions", ac10),
        ("AC11", "geodesics vs closed forms", ac11),
        ("AC12", "Christoffel cross-check", ac12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, f) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("{id} {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("{id} {name}: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
