//! Closed-form influx expressions `η̂(y, τ)`.
//!
//! Expressions are ordinary infix formulas over `y`, `tau`, `pi` and any
//! named parameters bound by the caller, e.g. `2 + cos(3*pi*y)` or
//! `1 + zeta*(1 + cos(3*pi*y))`.

use std::fmt;

use meval::tokenizer::Token;
use meval::{Context, Expr};

use crate::error::{Error, Result};

const BUILTIN_VARS: &[&str] = &["y", "tau", "pi", "e"];

/// A parsed scalar expression with optional parameter bindings.
#[derive(Clone)]
pub struct Formula {
    source: String,
    expr: Expr,
    bindings: Vec<(String, f64)>,
    uses_y: bool,
    uses_tau: bool,
}

impl Formula {
    pub fn parse(source: &str) -> Result<Self> {
        let expr: Expr = source.parse().map_err(|e: meval::Error| Error::Expression {
            expr: source.to_string(),
            message: e.to_string(),
        })?;
        let vars = referenced_vars(&expr);
        Ok(Formula {
            source: source.trim().to_string(),
            uses_y: vars.iter().any(|v| v == "y"),
            uses_tau: vars.iter().any(|v| v == "tau"),
            expr,
            bindings: Vec::new(),
        })
    }

    pub fn constant(value: f64) -> Self {
        // `{:?}` prints a parseable shortest round-trip literal
        Formula::parse(&format!("{value:?}")).expect("float literal parses")
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn uses_y(&self) -> bool {
        self.uses_y
    }

    pub fn uses_tau(&self) -> bool {
        self.uses_tau
    }

    /// Names referenced by the expression other than `y`, `tau`, `pi`, `e`.
    pub fn free_parameters(&self) -> Vec<String> {
        let mut out: Vec<String> = referenced_vars(&self.expr)
            .into_iter()
            .filter(|v| !BUILTIN_VARS.contains(&v.as_str()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Returns a copy with the named parameters fixed to the given values.
    pub fn bind(&self, values: &[(String, f64)]) -> Self {
        let mut out = self.clone();
        for (name, value) in values {
            match out.bindings.iter_mut().find(|(n, _)| n == name) {
                Some(slot) => slot.1 = *value,
                None => out.bindings.push((name.clone(), *value)),
            }
        }
        out
    }

    /// Checks that every free parameter is bound and the expression evaluates.
    pub fn check_bound(&self) -> Result<()> {
        for p in self.free_parameters() {
            if !self.bindings.iter().any(|(n, _)| *n == p) {
                return Err(Error::Expression {
                    expr: self.source.clone(),
                    message: format!("unbound parameter `{p}`"),
                });
            }
        }
        self.try_eval(0.0, 0.0).map(|_| ())
    }

    pub fn try_eval(&self, y: f64, tau: f64) -> Result<f64> {
        let mut ctx = Context::new();
        ctx.var("y", y).var("tau", tau);
        for (name, value) in &self.bindings {
            ctx.var(name.clone(), *value);
        }
        self.expr
            .eval_with_context(ctx)
            .map_err(|e| Error::Expression {
                expr: self.source.clone(),
                message: e.to_string(),
            })
    }

    /// If the expression is a bare number, its value.
    pub fn as_constant(&self) -> Option<f64> {
        if self.free_parameters().is_empty() && !self.uses_y && !self.uses_tau {
            self.try_eval(0.0, 0.0).ok()
        } else {
            None
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Formula")
            .field("source", &self.source)
            .field("bindings", &self.bindings)
            .finish()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.bindings == other.bindings
    }
}

fn referenced_vars(expr: &Expr) -> Vec<String> {
    expr.iter()
        .filter_map(|t| match t {
            Token::Var(name) => Some(name.clone()),
            _ => None,
        })
        .collect()
}

/// The incoming heat influx `η̂`, constant or a function of `(y, τ)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Influx {
    Constant(f64),
    Field(Formula),
}

impl Influx {
    pub fn parse(source: &str) -> Result<Self> {
        let f = Formula::parse(source)?;
        Ok(match f.as_constant() {
            Some(v) => Influx::Constant(v),
            None => Influx::Field(f),
        })
    }

    pub fn eval(&self, y: f64, tau: f64) -> Result<f64> {
        match self {
            Influx::Constant(v) => Ok(*v),
            Influx::Field(f) => f.try_eval(y, tau),
        }
    }

    pub fn depends_on_tau(&self) -> bool {
        matches!(self, Influx::Field(f) if f.uses_tau())
    }

    pub fn depends_on_y(&self) -> bool {
        matches!(self, Influx::Field(f) if f.uses_y())
    }

    pub fn bind(&self, values: &[(String, f64)]) -> Self {
        match self {
            Influx::Constant(v) => Influx::Constant(*v),
            Influx::Field(f) => {
                let bound = f.bind(values);
                match bound.try_eval(0.0, 0.0) {
                    Ok(v) if !bound.uses_y() && !bound.uses_tau() && bound.check_bound().is_ok() => {
                        Influx::Constant(v)
                    }
                    _ => Influx::Field(bound),
                }
            }
        }
    }

    pub fn source(&self) -> String {
        match self {
            Influx::Constant(v) => format!("{v:?}"),
            Influx::Field(f) => f.source().to_string(),
        }
    }

    /// Evaluates at the given `y` nodes, rejecting values below the
    /// equilibrium influx `η̂ = 1`.
    pub fn sample_column(&self, ys: &[f64], tau: f64, out: &mut Vec<f64>) -> Result<()> {
        out.clear();
        for &y in ys {
            let v = self.eval(y, tau)?;
            if !(v >= 1.0) {
                return Err(Error::validation(
                    "eta_hat",
                    format!("influx {v} at y={y}, tau={tau} must be >= 1 (incoming mass carries at least the equilibrium enthalpy)"),
                ));
            }
            out.push(v);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_forcing() {
        let eta = Influx::parse("2+cos(3*pi*y)").unwrap();
        assert!(eta.depends_on_y());
        assert!(!eta.depends_on_tau());
        assert!((eta.eval(0.0, 0.0).unwrap() - 3.0).abs() < 1e-15);
        assert!((eta.eval(1.0 / 3.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constants_collapse() {
        assert_eq!(Influx::parse(" 1.25 ").unwrap(), Influx::Constant(1.25));
        assert_eq!(Influx::parse("1/2 + 1").unwrap(), Influx::Constant(1.5));
    }

    #[test]
    fn parameters_bind() {
        let eta = Influx::parse("1 + zeta*(1 + cos(3*pi*y))").unwrap();
        let Influx::Field(f) = &eta else { panic!() };
        assert_eq!(f.free_parameters(), vec!["zeta".to_string()]);
        assert!(f.check_bound().is_err());
        let bound = eta.bind(&[("zeta".into(), 1.1)]);
        assert!((bound.eval(0.0, 0.0).unwrap() - 3.2).abs() < 1e-12);

        let scalar = Influx::parse("eta").unwrap().bind(&[("eta".into(), 1.2)]);
        assert_eq!(scalar, Influx::Constant(1.2));
    }

    #[test]
    fn rejects_sub_equilibrium() {
        let eta = Influx::Constant(0.5);
        let mut out = Vec::new();
        let err = eta.sample_column(&[0.0], 0.0, &mut out).unwrap_err();
        assert!(err.to_string().contains(">= 1"));
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(Formula::parse("2 + * y").is_err());
    }
}
