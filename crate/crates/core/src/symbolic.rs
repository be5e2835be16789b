//! Exact expressions in the coordinates `(t, x, y, z)`: rational linear
//! combinations of `t^a x^b y^c z^d cos^p(t) sin^q(t) e^{mt}` with `q ≤ 1`
//! (`sin²` is rewritten as `1 − cos²`). That normal form is unique, so
//! zero-testing is exact. Enough to differentiate the frame fields and
//! coordinate metrics of the group models.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::{int, rat, to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T,
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::X, Var::Y, Var::Z];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
struct Mono {
    pow: [u32; 4],
    cos: u32,
    sin: u32,
    exp: i32,
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Expr {
    terms: BTreeMap<Mono, Rational>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::mono(Mono::default(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Self::constant(rat(n, d))
    }

    pub fn var(v: Var) -> Self {
        let mut m = Mono::default();
        m.pow[v.index()] = 1;
        Self::mono(m, int(1))
    }

    pub fn cos_t() -> Self {
        Self::mono(Mono { cos: 1, ..Mono::default() }, int(1))
    }

    pub fn sin_t() -> Self {
        Self::mono(Mono { sin: 1, ..Mono::default() }, int(1))
    }

    /// `e^{m t}`.
    pub fn exp_t(m: i32) -> Self {
        Self::mono(Mono { exp: m, ..Mono::default() }, int(1))
    }

    fn mono(m: Mono, c: Rational) -> Self {
        let mut e = Expr::zero();
        e.push(m, c);
        e
    }

    fn push(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        if m.sin >= 2 {
            // sin² = 1 − cos²
            let rest = Mono { sin: m.sin - 2, ..m };
            self.push(rest, c.clone());
            self.push(Mono { cos: m.cos + 2, ..rest }, -c);
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the expression is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Mono::default()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Expr {
        let mut e = Expr::zero();
        for (m, v) in &self.terms {
            e.push(*m, v * c);
        }
        e
    }

    pub fn derivative(&self, v: Var) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let i = v.index();
            if m.pow[i] > 0 {
                let mut d = *m;
                d.pow[i] -= 1;
                out.push(d, c * int(m.pow[i] as i64));
            }
            if v != Var::T {
                continue;
            }
            if m.cos > 0 {
                out.push(Mono { cos: m.cos - 1, sin: m.sin + 1, ..*m }, -(c * int(m.cos as i64)));
            }
            if m.sin > 0 {
                out.push(Mono { cos: m.cos + 1, sin: m.sin - 1, ..*m }, c.clone());
            }
            if m.exp != 0 {
                out.push(*m, c * int(m.exp as i64));
            }
        }
        out
    }

    pub fn compile(&self) -> CompiledExpr {
        CompiledExpr { terms: self.terms.iter().map(|(m, c)| (to_f64(c), *m)).collect() }
    }

    /// Evaluates at `(t, x, y, z)`.
    pub fn eval(&self, p: &[f64; 4]) -> f64 {
        self.compile().eval(p)
    }
}

/// Float evaluator for an [`Expr`].
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    terms: Vec<(f64, Mono)>,
}

impl CompiledExpr {
    pub fn eval(&self, p: &[f64; 4]) -> f64 {
        if self.terms.is_empty() {
            return 0.0;
        }
        let (s, c) = p[0].sin_cos();
        self.terms
            .iter()
            .map(|(k, m)| {
                let mut v = *k;
                for (i, &e) in m.pow.iter().enumerate() {
                    if e > 0 {
                        v *= p[i].powi(e as i32);
                    }
                }
                if m.cos > 0 {
                    v *= c.powi(m.cos as i32);
                }
                if m.sin > 0 {
                    v *= s;
                }
                if m.exp != 0 {
                    v *= (m.exp as f64 * p[0]).exp();
                }
                v
            })
            .sum()
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        for (m, c) in rhs.terms {
            self.push(m, c);
        }
        self
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&-Rational::one())
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        &self * &rhs
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut pow = a.pow;
                for (p, q) in pow.iter_mut().zip(b.pow) {
                    *p += q;
                }
                let m = Mono { pow, cos: a.cos + b.cos, sin: a.sin + b.sin, exp: a.exp + b.exp };
                out.push(m, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in ["t", "x", "y", "z"].iter().zip(&m.pow) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{e}")?,
                }
            }
            if m.cos > 0 {
                write!(f, "*cos(t)^{}", m.cos)?;
            }
            if m.sin > 0 {
                write!(f, "*sin(t)")?;
            }
            if m.exp != 0 {
                write!(f, "*exp({}t)", m.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Vector field with expression coefficients on the coordinates `vars`.
pub type VectorField = Vec<Expr>;

/// `[X, Y]^k = X(Y^k) − Y(X^k)` for fields in the coordinates `vars`.
pub fn lie_bracket(vars: &[Var], x: &[Expr], y: &[Expr]) -> VectorField {
    (0..vars.len())
        .map(|k| {
            let mut out = Expr::zero();
            for (i, v) in vars.iter().enumerate() {
                out = out + &x[i] * &y[k].derivative(*v) - &y[i] * &x[k].derivative(*v);
            }
            out
        })
        .collect()
}
