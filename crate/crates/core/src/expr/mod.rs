//! Closed-form complex functions as immutable expression trees.
//!
//! Trees are shared through [`Arc`] so derivatives can reuse sub-expressions
//! and expressions can be handed to worker threads freely.

mod parse;
mod pole;

use std::fmt;
use std::ops;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use parse::{parse, parse_with_vars};
pub use pole::{check_pole, PoleDecl, PoleSource};

/// Absolute distance under which a point is treated as sitting on a
/// declared singularity.
pub const SINGULARITY_EPS: f64 = 1e-12;

/// Variable index of ζ in single-variable expressions.
pub const ZETA: usize = 0;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var(usize),
    Add(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Pow(Arc<Expr>, i32),
    Exp(Arc<Expr>),
    /// Principal branch, argument in (−π, π].
    Log(Arc<Expr>),
    Neg(Arc<Expr>),
}

impl Expr {
    pub fn zeta() -> Self {
        Expr::Var(ZETA)
    }

    pub fn var(index: usize) -> Self {
        Expr::Var(index)
    }

    pub fn constant(value: Complex64) -> Self {
        Expr::Const(value)
    }

    pub fn real(value: f64) -> Self {
        Expr::Const(Complex64::new(value, 0.0))
    }

    pub fn imag(value: f64) -> Self {
        Expr::Const(Complex64::new(0.0, value))
    }

    pub fn powi(self, n: i32) -> Self {
        match (self, n) {
            (_, 0) => Expr::real(1.0),
            (e, 1) => e,
            (Expr::Const(c), n) => Expr::Const(c.powi(n)),
            (e, n) => Expr::Pow(Arc::new(e), n),
        }
    }

    pub fn exp(self) -> Self {
        Expr::Exp(Arc::new(self))
    }

    pub fn ln(self) -> Self {
        Expr::Log(Arc::new(self))
    }

    /// Principal square root, realised as `exp(½ log(·))`.
    pub fn sqrt(self) -> Self {
        (Expr::real(0.5) * self.ln()).exp()
    }

    /// Evaluates a single-variable expression at `z`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.eval_at(&[z])
    }

    /// Evaluates with `vars[k]` bound to `Var(k)`.
    pub fn eval_at(&self, vars: &[Complex64]) -> Result<Complex64> {
        let at = vars.first().copied().unwrap_or_default();
        let value = self.eval_inner(vars, at)?;
        if value.re.is_finite() && value.im.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite(at))
        }
    }

    fn eval_inner(&self, vars: &[Complex64], at: Complex64) -> Result<Complex64> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var(k) => *vars
                .get(*k)
                .ok_or_else(|| Error::InvalidArgument(format!("variable {k} is unbound")))?,
            Expr::Add(a, b) => a.eval_inner(vars, at)? + b.eval_inner(vars, at)?,
            Expr::Mul(a, b) => a.eval_inner(vars, at)? * b.eval_inner(vars, at)?,
            Expr::Div(a, b) => {
                let den = b.eval_inner(vars, at)?;
                if den.norm_sqr() == 0.0 {
                    return Err(Error::SingularEvaluation(at));
                }
                a.eval_inner(vars, at)? / den
            }
            Expr::Pow(a, n) => {
                let base = a.eval_inner(vars, at)?;
                if *n < 0 && base.norm_sqr() == 0.0 {
                    return Err(Error::SingularEvaluation(at));
                }
                base.powi(*n)
            }
            Expr::Exp(a) => a.eval_inner(vars, at)?.exp(),
            Expr::Log(a) => {
                let mut w = a.eval_inner(vars, at)?;
                if w.norm_sqr() == 0.0 {
                    return Err(Error::SingularEvaluation(at));
                }
                // -0.0 imaginary part would put the result at arg = -π.
                if w.im == 0.0 {
                    w.im = 0.0;
                }
                w.ln()
            }
            Expr::Neg(a) => -a.eval_inner(vars, at)?,
        })
    }

    /// Exact derivative with respect to ζ.
    pub fn differentiate(&self) -> Expr {
        self.differentiate_var(ZETA)
    }

    /// Exact partial derivative with respect to `Var(var)`.
    pub fn differentiate_var(&self, var: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::real(0.0),
            Expr::Var(k) => Expr::real(if *k == var { 1.0 } else { 0.0 }),
            Expr::Add(a, b) => a.differentiate_var(var) + b.differentiate_var(var),
            Expr::Mul(a, b) => {
                a.differentiate_var(var) * b.as_ref().clone()
                    + a.as_ref().clone() * b.differentiate_var(var)
            }
            Expr::Div(a, b) => {
                let num = a.differentiate_var(var) * b.as_ref().clone()
                    - a.as_ref().clone() * b.differentiate_var(var);
                num / b.as_ref().clone().powi(2)
            }
            Expr::Pow(a, n) => {
                Expr::real(*n as f64) * a.as_ref().clone().powi(n - 1) * a.differentiate_var(var)
            }
            Expr::Exp(a) => self.clone() * a.differentiate_var(var),
            Expr::Log(a) => a.differentiate_var(var) / a.as_ref().clone(),
            Expr::Neg(a) => -a.differentiate_var(var),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().map(Expr::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().map(Expr::depth).max().unwrap_or(0)
    }

    fn children(&self) -> impl Iterator<Item = &Expr> {
        let (a, b): (Option<&Expr>, Option<&Expr>) = match self {
            Expr::Const(_) | Expr::Var(_) => (None, None),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => (Some(a), Some(b)),
            Expr::Pow(a, _) | Expr::Exp(a) | Expr::Log(a) | Expr::Neg(a) => (Some(a), None),
        };
        a.into_iter().chain(b)
    }

    fn as_const(&self) -> Option<Complex64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_value(&self, v: f64) -> bool {
        self.as_const() == Some(Complex64::new(v, 0.0))
    }

    /// Renders the expression with the given variable names, in a form the
    /// parser accepts.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        let mut out = String::new();
        self.write(&mut out, names);
        out
    }

    fn write(&self, out: &mut String, names: &[&str]) {
        use std::fmt::Write;
        match self {
            Expr::Const(c) => {
                if c.im == 0.0 {
                    let _ = write!(out, "({:?})", c.re);
                } else {
                    let _ = write!(out, "({:?}+{:?}i)", c.re, c.im);
                }
            }
            Expr::Var(k) => match names.get(*k) {
                Some(name) => out.push_str(name),
                None => {
                    let _ = write!(out, "v{k}");
                }
            },
            Expr::Add(a, b) => binary(out, names, a, "+", b),
            Expr::Mul(a, b) => binary(out, names, a, "*", b),
            Expr::Div(a, b) => binary(out, names, a, "/", b),
            Expr::Pow(a, n) => {
                out.push('(');
                a.write(out, names);
                let _ = write!(out, ")^({n})");
            }
            Expr::Exp(a) => unary(out, names, "exp", a),
            Expr::Log(a) => unary(out, names, "log", a),
            Expr::Neg(a) => unary(out, names, "-", a),
        }
    }
}

fn binary(out: &mut String, names: &[&str], a: &Expr, op: &str, b: &Expr) {
    out.push('(');
    a.write(out, names);
    out.push_str(op);
    b.write(out, names);
    out.push(')');
}

fn unary(out: &mut String, names: &[&str], head: &str, a: &Expr) {
    out.push_str(head);
    out.push('(');
    a.write(out, names);
    out.push(')');
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&["zeta"]))
    }
}

// Operator overloads fold the trivial identities so derivatives stay small.

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::Const(a + b),
            _ if self.is_value(0.0) => rhs,
            _ if rhs.is_value(0.0) => self,
            _ => Expr::Add(Arc::new(self), Arc::new(rhs)),
        }
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::Const(a * b),
            _ if self.is_value(0.0) || rhs.is_value(0.0) => Expr::real(0.0),
            _ if self.is_value(1.0) => rhs,
            _ if rhs.is_value(1.0) => self,
            _ => Expr::Mul(Arc::new(self), Arc::new(rhs)),
        }
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) if b.norm_sqr() != 0.0 => Expr::Const(a / b),
            _ if self.is_value(0.0) && !rhs.is_value(0.0) => Expr::real(0.0),
            _ if rhs.is_value(1.0) => self,
            _ => Expr::Div(Arc::new(self), Arc::new(rhs)),
        }
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(inner) => inner.as_ref().clone(),
            e => Expr::Neg(Arc::new(e)),
        }
    }
}

impl From<f64> for Expr {
    fn from(v: f64) -> Self {
        Expr::real(v)
    }
}

impl From<Complex64> for Expr {
    fn from(v: Complex64) -> Self {
        Expr::Const(v)
    }
}
