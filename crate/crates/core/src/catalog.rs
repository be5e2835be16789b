//! Built-in Lie algebras and metrics, and the classifier for 4-dimensional
//! Lie algebras carrying an ad-invariant metric.
//!
//! Indices are 0-based everywhere. The Heisenberg algebra uses `e0, e1, e2`
//! for the frame usually written `X1, X2, X3`.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::field::{int, OrderedField};
use crate::forms::{has_nondegenerate_invariant_form, is_ad_invariant, killing_form, SymBilinearForm};
use crate::linalg::unit;
use crate::Verdict;

pub const ALGEBRA_NAMES: &[&str] =
    &["r1", "r2", "r3", "r4", "aff", "h3", "sl2", "so3", "g0", "g1", "r+sl2", "r+so3"];

pub const METRIC_NAMES: &[&str] = &["gmatrix0", "h0", "h1", "h2", "killing", "metric", "identity"];

fn brackets(dim: usize, entries: &[(usize, usize, usize, i64)]) -> LieAlgebra {
    let e: Vec<_> = entries.iter().map(|&(i, j, k, v)| (i, j, k, int(v))).collect();
    LieAlgebra::from_brackets(dim, &e).expect("catalog brackets are well formed")
}

fn form(dim: usize, entries: &[(usize, usize, i64)]) -> SymBilinearForm {
    let e: Vec<_> = entries.iter().map(|&(i, j, v)| (i, j, int(v))).collect();
    SymBilinearForm::from_entries(dim, &e).expect("catalog forms are well formed")
}

/// `[X, Y] = Y`.
pub fn aff() -> LieAlgebra {
    brackets(2, &[(0, 1, 1, 1)]).with_name("aff")
}

/// `[e0, e1] = e2`.
pub fn h3() -> LieAlgebra {
    brackets(3, &[(0, 1, 2, 1)]).with_name("h3")
}

/// Standard basis `H, E, F`.
pub fn sl2() -> LieAlgebra {
    brackets(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]).with_name("sl2")
}

pub fn so3() -> LieAlgebra {
    brackets(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]).with_name("so3")
}

/// Oscillator algebra: `[e0,e1] = e2`, `[e0,e2] = −e1`, `[e1,e2] = e3`.
pub fn g0() -> LieAlgebra {
    brackets(4, &[(0, 1, 2, 1), (0, 2, 1, -1), (1, 2, 3, 1)]).with_name("g0")
}

/// `[e0,e1] = e1`, `[e0,e2] = −e2`, `[e1,e2] = e3`.
pub fn g1() -> LieAlgebra {
    brackets(4, &[(0, 1, 1, 1), (0, 2, 2, -1), (1, 2, 3, 1)]).with_name("g1")
}

pub fn r_plus_sl2() -> LieAlgebra {
    LieAlgebra::abelian(1).direct_sum(&sl2()).with_name("r+sl2")
}

pub fn r_plus_so3() -> LieAlgebra {
    LieAlgebra::abelian(1).direct_sum(&so3()).with_name("r+so3")
}

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n).with_name(format!("r{n}"))
}

/// Invariant metric on `g0`: `⟨e0,e3⟩ = ⟨e1,e1⟩ = ⟨e2,e2⟩ = 1`.
pub fn gmatrix0_left() -> SymBilinearForm {
    form(4, &[(0, 3, 1), (1, 1, 1), (2, 2, 1)])
}

/// Invariant metric on `g1`: `⟨e0,e3⟩ = ⟨e1,e2⟩ = 1`.
pub fn gmatrix0_right() -> SymBilinearForm {
    form(4, &[(0, 3, 1), (1, 2, 1)])
}

/// Flat Lorentzian metric on `h3` with degenerate center:
/// `⟨X1,X1⟩ = ⟨X2,X3⟩ = 1`.
pub fn h0() -> SymBilinearForm {
    form(3, &[(0, 0, 1), (1, 2, 1)])
}

/// `⟨X1,X1⟩ = ⟨X2,X2⟩ = −⟨X3,X3⟩ = 1`.
pub fn h1() -> SymBilinearForm {
    form(3, &[(0, 0, 1), (1, 1, 1), (2, 2, -1)])
}

/// `⟨X1,X2⟩ = ⟨X3,X3⟩ = 1`.
pub fn h2() -> SymBilinearForm {
    form(3, &[(0, 1, 1), (2, 2, 1)])
}

/// `1 ⊕ K` on `ℝ ⊕ s` with `K` the Killing form of `s`.
pub fn r_plus_killing(g: &LieAlgebra) -> SymBilinearForm {
    let k = killing_form(g);
    let mut m = k.matrix().clone();
    m[(0, 0)] = int(1);
    SymBilinearForm::new(m).expect("symmetric")
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedForm {
    pub name: String,
    pub form: SymBilinearForm,
    /// False for left-invariant metrics that are not ad-invariant.
    pub ad_invariant: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub algebra: LieAlgebra,
    pub forms: Vec<NamedForm>,
    pub notes: Vec<&'static str>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.algebra.name().unwrap_or("?")
    }

    /// Stored form by name; `killing` is always available.
    pub fn form(&self, name: &str) -> Result<SymBilinearForm> {
        if let Some(f) = self.forms.iter().find(|f| f.name == name) {
            return Ok(f.form.clone());
        }
        if name == "killing" {
            return Ok(killing_form(&self.algebra));
        }
        let mut valid: Vec<&str> = self.forms.iter().map(|f| f.name.as_str()).collect();
        valid.push("killing");
        Err(Error::Lookup { name: name.to_string(), valid: valid.join(", ") })
    }
}

fn invariant(name: &str, form: SymBilinearForm) -> NamedForm {
    NamedForm { name: name.into(), form, ad_invariant: true }
}

fn left_invariant(name: &str, form: SymBilinearForm) -> NamedForm {
    NamedForm { name: name.into(), form, ad_invariant: false }
}

/// Looks up a catalog entry, re-validating Jacobi and the stored invariant
/// forms.
pub fn get(name: &str) -> Result<CatalogEntry> {
    let entry = match name {
        "r1" | "r2" | "r3" | "r4" => {
            let n: usize = name[1..].parse().expect("digit");
            let id = SymBilinearForm::diagonal(&vec![int(1); n]);
            CatalogEntry {
                algebra: abelian(n),
                forms: vec![invariant("identity", id)],
                notes: vec!["abelian; every symmetric form is invariant"],
            }
        }
        "aff" => CatalogEntry {
            algebra: aff(),
            forms: vec![],
            notes: vec!["trivial center, so no invariant metric"],
        },
        "h3" => CatalogEntry {
            algebra: h3(),
            forms: vec![left_invariant("h0", h0()), left_invariant("h1", h1()), left_invariant("h2", h2())],
            notes: vec![
                "Heisenberg algebra; every invariant form is degenerate",
                "h0 is flat with degenerate center; h1, h2 have nondegenerate center",
            ],
        },
        "sl2" => CatalogEntry {
            algebra: sl2(),
            forms: vec![invariant("killing", killing_form(&sl2()))],
            notes: vec!["simple; invariant forms are multiples of the Killing form"],
        },
        "so3" => CatalogEntry {
            algebra: so3(),
            forms: vec![invariant("killing", killing_form(&so3()))],
            notes: vec!["simple, compact; Killing form negative definite"],
        },
        "g0" => CatalogEntry {
            algebra: g0(),
            forms: vec![invariant("gmatrix0", gmatrix0_left())],
            notes: vec!["oscillator algebra; e0 rotates span{e1, e2}, e3 spans the center"],
        },
        "g1" => CatalogEntry {
            algebra: g1(),
            forms: vec![invariant("gmatrix0", gmatrix0_right())],
            notes: vec!["e0 acts hyperbolically on span{e1, e2}, e3 spans the center"],
        },
        "r+sl2" => {
            let g = r_plus_sl2();
            let m = r_plus_killing(&g);
            CatalogEntry {
                algebra: g,
                forms: vec![invariant("metric", m)],
                notes: vec!["decomposable: unit form on ℝ plus the Killing form of sl2"],
            }
        }
        "r+so3" => {
            let g = r_plus_so3();
            let m = r_plus_killing(&g);
            CatalogEntry {
                algebra: g,
                forms: vec![invariant("metric", m)],
                notes: vec!["decomposable: unit form on ℝ plus the Killing form of so3"],
            }
        }
        _ => {
            return Err(Error::Lookup { name: name.to_string(), valid: ALGEBRA_NAMES.join(", ") })
        }
    };
    if let Verdict::Fail(t) = entry.algebra.jacobi_check() {
        return Err(Error::Jacobi(t));
    }
    for f in entry.forms.iter().filter(|f| f.ad_invariant) {
        if !is_ad_invariant(&entry.algebra, &f.form)?.is_pass() {
            return Err(Error::InvalidInput(format!("stored form {} is not ad-invariant", f.name)));
        }
    }
    Ok(entry)
}

pub fn all_algebras() -> Vec<LieAlgebra> {
    ALGEBRA_NAMES.iter().map(|n| get(n).expect("catalog entry").algebra).collect()
}

/// Isomorphism classes of 4-dimensional Lie algebras with an ad-invariant
/// metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dim4Class {
    R4,
    RPlusSl2,
    RPlusSo3,
    OscillatorG0,
    G1,
    NotInList,
}

impl Dim4Class {
    pub fn label(&self) -> &'static str {
        match self {
            Dim4Class::R4 => "R4",
            Dim4Class::RPlusSl2 => "R+sl2",
            Dim4Class::RPlusSo3 => "R+so3",
            Dim4Class::OscillatorG0 => "oscillator_g0",
            Dim4Class::G1 => "g1",
            Dim4Class::NotInList => "not_in_list",
        }
    }

    /// Catalog entry that represents the class, if any.
    pub fn catalog_name(&self) -> Option<&'static str> {
        match self {
            Dim4Class::R4 => Some("r4"),
            Dim4Class::RPlusSl2 => Some("r+sl2"),
            Dim4Class::RPlusSo3 => Some("r+so3"),
            Dim4Class::OscillatorG0 => Some("g0"),
            Dim4Class::G1 => Some("g1"),
            Dim4Class::NotInList => None,
        }
    }
}

impl fmt::Display for Dim4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Decision tree over basis-independent invariants. Only meaningful for
/// algebras that admit an ad-invariant metric; anything else that slips
/// through the tests lands in [`Dim4Class::NotInList`].
pub fn classify_dim4_metric(g: &LieAlgebra) -> Result<Dim4Class> {
    if g.dim() != 4 {
        return Err(Error::InvalidInput(format!(
            "classification needs dimension 4, got {}",
            g.dim()
        )));
    }
    if g.is_abelian() {
        return Ok(Dim4Class::R4);
    }
    if has_nondegenerate_invariant_form(g).witness().is_none() {
        return Ok(Dim4Class::NotInList);
    }
    let killing = killing_form(g);
    let ks = killing.signature();
    if ks.plus + ks.minus == 3 {
        return Ok(match (ks.plus, ks.minus) {
            (0, 3) => Dim4Class::RPlusSo3,
            (2, 1) => Dim4Class::RPlusSl2,
            _ => Dim4Class::NotInList,
        });
    }
    let c1 = g.commutator();
    if g.is_solvable() && g.center().dim() == 1 && c1.dim() == 3 {
        // K(x, x) for x ∉ C¹; K vanishes on C¹ × g for solvable g, so its sign
        // does not depend on the choice of x.
        let x = (0..4)
            .map(|i| unit(4, i))
            .find(|v| !c1.contains(v))
            .expect("C¹ is a proper subspace");
        return Ok(match killing.eval(&x, &x).sign() {
            Ordering::Less => Dim4Class::OscillatorG0,
            Ordering::Greater => Dim4Class::G1,
            Ordering::Equal => Dim4Class::NotInList,
        });
    }
    Ok(Dim4Class::NotInList)
}
