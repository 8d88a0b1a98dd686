//! Truncated multivariate Laurent series with exact coefficients.

use super::scalar::ExactScalar;
use super::vars::Var;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A truncated Laurent series: exponent tuples (doubled, aligned with `vars`)
/// to scalar coefficients, together with a per-variable truncation window.
/// All stored exponents lie inside the window; arithmetic drops whatever
/// falls outside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub vars: Vec<Var>,
    /// inclusive doubled-exponent bounds per variable
    pub window: Vec<(i64, i64)>,
    pub coeffs: BTreeMap<Vec<i64>, ExactScalar>,
}

impl TruncatedSeries {
    pub fn zero(vars: Vec<Var>, window: Vec<(i64, i64)>) -> Self {
        assert_eq!(vars.len(), window.len());
        TruncatedSeries {
            vars,
            window,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<Var>, window: Vec<(i64, i64)>, c: ExactScalar) -> Self {
        let mut s = Self::zero(vars, window);
        s.add_term(vec![0; s.vars.len()], c);
        s
    }

    pub fn in_window(&self, exps: &[i64]) -> bool {
        exps.iter()
            .zip(&self.window)
            .all(|(e, (lo, hi))| e >= lo && e <= hi)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: ExactScalar) {
        if c.is_zero() || !self.in_window(&exps) {
            return;
        }
        let slot = self.coeffs.entry(exps).or_insert_with(ExactScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            let key = self
                .coeffs
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.coeffs.remove(&k);
            }
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> ExactScalar {
        self.coeffs
            .get(exps)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.compatible(rhs)?;
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.window.clone());
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if out.in_window(&e) {
                    out.add_term(e, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.window.clone());
        for (e, v) in &self.coeffs {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    fn compatible(&self, rhs: &TruncatedSeries) -> Result<()> {
        if self.vars != rhs.vars || self.window != rhs.window {
            return Err(Error::GradingMismatch(
                "series variable sets or windows differ".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (v, e2) in self.vars.iter().zip(e) {
                if *e2 != 0 {
                    if e2 % 2 == 0 {
                        write!(f, "*{}^{}", v.name(), e2 / 2)?;
                    } else {
                        write!(f, "*{}^({}/2)", v.name(), e2)?;
                    }
                }
            }
        }
        Ok(())
    }
}
