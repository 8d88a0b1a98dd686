//! Formal expansion at the cohomological limit.
//!
//! Substitutes `q = e^{κ·hbar}`, `t = e^{κ·theta}`, `u_i = e^{κ·a_i}` and
//! Laurent-expands in `κ`. All other variables (Kähler `z_i`, shift `p`,
//! auxiliaries) pass through untouched, so the coefficients live in the
//! fraction field of `Q[hbar, theta, a_1..][z, p, ...]`.

use super::poly::LaurentPoly;
use super::scalar::ExactScalar;
use super::vars::{Mono, Var};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;

/// A truncated Laurent series in `κ` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaSeries {
    /// coefficients of `κ^j` for `min_order <= j <= max_order`
    pub coeffs: BTreeMap<i64, ExactScalar>,
    pub min_order: i64,
    pub max_order: i64,
}

impl KappaSeries {
    pub fn coeff(&self, j: i64) -> ExactScalar {
        self.coeffs.get(&j).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Order of the pole at `κ = 0` (0 if regular).
    pub fn pole_order(&self) -> i64 {
        match self.coeffs.keys().next() {
            Some(&j) if j < 0 => -j,
            _ => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &KappaSeries) -> KappaSeries {
        let max_order = self.max_order.min(rhs.max_order);
        let mut coeffs = BTreeMap::new();
        for j in self.min_order.min(rhs.min_order)..=max_order {
            let c = &self.coeff(j) + &rhs.coeff(j);
            if !c.is_zero() {
                coeffs.insert(j, c);
            }
        }
        KappaSeries {
            coeffs,
            min_order: self.min_order.min(rhs.min_order),
            max_order,
        }
    }

    pub fn mul(&self, rhs: &KappaSeries) -> KappaSeries {
        // j-th coefficient of the product is reliable while every split
        // j = a + b uses only known coefficients
        let max_order = (self.max_order + rhs.min_order).min(rhs.max_order + self.min_order);
        let min_order = self.min_order + rhs.min_order;
        let mut coeffs: BTreeMap<i64, ExactScalar> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                let j = a + b;
                if j > max_order {
                    continue;
                }
                let slot = coeffs.entry(j).or_insert_with(ExactScalar::zero);
                *slot = &*slot + &(ca * cb);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        KappaSeries {
            coeffs,
            min_order,
            max_order,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> KappaSeries {
        let mut coeffs = BTreeMap::new();
        for (j, v) in &self.coeffs {
            let w = v * c;
            if !w.is_zero() {
                coeffs.insert(*j, w);
            }
        }
        KappaSeries {
            coeffs,
            min_order: self.min_order,
            max_order: self.max_order,
        }
    }
}

/// The image of a variable under the exponential substitution: the rational
/// multiple of `hbar`/`theta`/`a_i` in the exponent, or `None` for variables
/// that pass through.
fn log_symbol(v: Var) -> Option<Var> {
    match v {
        Var::Q => Some(Var::HBar),
        Var::T => Some(Var::Theta),
        Var::U(i) => Some(Var::A(i)),
        _ => None,
    }
}

/// Expand a Laurent polynomial into a `κ`-polynomial through order `n`.
fn expand_poly(p: &LaurentPoly, n: i64) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); (n + 1) as usize];
    for (m, c) in p.terms() {
        // split monomial into exponentiated part (linear form) and passthrough
        let mut linear = LaurentPoly::zero();
        let mut rest: Vec<(Var, i64)> = Vec::new();
        for (v, e2) in m.exps() {
            match log_symbol(*v) {
                Some(sym) => {
                    linear.add_term(Mono::var(sym), BigRational::new((*e2).into(), 2.into()))
                }
                None => rest.push((*v, *e2)),
            }
        }
        let rest = LaurentPoly::monomial(Mono::from_pairs(rest), c.clone());
        // exp(κ L) = Σ κ^j L^j / j!
        let mut lpow = LaurentPoly::one();
        let mut fact = BigRational::one();
        for j in 0..=n {
            if j > 0 {
                lpow = &lpow * &linear;
                fact *= BigRational::from_integer(j.into());
                if lpow.is_zero() {
                    break;
                }
            }
            let term = &rest * &lpow.scale(&(BigRational::one() / fact.clone()));
            out[j as usize] = std::mem::take(&mut out[j as usize]).add_owned(term);
        }
    }
    out
}

/// Laurent-expand `f` at `κ = 0` through `κ^order` under the substitution
/// `q = e^{κ hbar}`, `t = e^{κ theta}`, `u_i = e^{κ a_i}`.
pub fn kappa_expand(f: &ExactScalar, order: i64) -> Result<KappaSeries> {
    if f.is_zero() {
        return Ok(KappaSeries {
            coeffs: BTreeMap::new(),
            min_order: 0,
            max_order: order,
        });
    }
    // locate the lowest nonvanishing order of the denominator, growing the
    // expansion adaptively
    let mut probe = 4.max(order + 1);
    let (dencoeffs, j0) = loop {
        let d = expand_poly(f.denominator(), probe);
        if let Some(j0) = d.iter().position(|c| !c.is_zero()) {
            break (d, j0 as i64);
        }
        probe *= 2;
        if probe > 256 {
            return Err(Error::DegenerateLimit(format!("{}", f.denominator())));
        }
    };
    // need numerator and denominator through order + j0 beyond their leads
    let need = order + j0;
    let numcoeffs = expand_poly(f.numerator(), need.max(0));
    let dencoeffs = if (dencoeffs.len() as i64) < need + 1 {
        expand_poly(f.denominator(), need.max(0))
    } else {
        dencoeffs
    };
    let a0 = numcoeffs
        .iter()
        .position(|c| !c.is_zero())
        .map(|x| x as i64);
    let a0 = match a0 {
        Some(a) => a,
        None => {
            // numerator vanishes through the probed order: genuinely zero or
            // beyond the window; treat as zero series valid through `order`
            return Ok(KappaSeries {
                coeffs: BTreeMap::new(),
                min_order: order,
                max_order: order,
            });
        }
    };
    // series division: (Σ N_{a0+i} κ^i) / (Σ D_{j0+i} κ^i), then shift κ^(a0-j0)
    let terms = (order - (a0 - j0)).max(0) as usize;
    let d0 = ExactScalar::from_poly(dencoeffs[j0 as usize].clone());
    let dget = |i: usize| -> ExactScalar {
        dencoeffs
            .get(j0 as usize + i)
            .map(|p| ExactScalar::from_poly(p.clone()))
            .unwrap_or_else(ExactScalar::zero)
    };
    let nget = |i: usize| -> ExactScalar {
        numcoeffs
            .get(a0 as usize + i)
            .map(|p| ExactScalar::from_poly(p.clone()))
            .unwrap_or_else(ExactScalar::zero)
    };
    let mut quot: Vec<ExactScalar> = Vec::with_capacity(terms + 1);
    for i in 0..=terms {
        let mut acc = nget(i);
        for k in 0..i {
            acc = &acc - &(&quot[k] * &dget(i - k));
        }
        quot.push(acc.checked_div(&d0)?);
    }
    let mut coeffs = BTreeMap::new();
    for (i, c) in quot.into_iter().enumerate() {
        let j = a0 - j0 + i as i64;
        if j > order {
            break;
        }
        if !c.is_zero() {
            coeffs.insert(j, c.reduced());
        }
    }
    Ok(KappaSeries {
        coeffs,
        min_order: a0 - j0,
        max_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn sc(v: Var) -> ExactScalar {
        ExactScalar::var(v)
    }

    #[test]
    fn expand_q_minus_qinv() {
        // q - q^-1 = 2 hbar κ + (hbar^3/3) κ^3 + O(κ^5)
        let f = &sc(Var::Q) - &sc(Var::Q).inv().unwrap();
        let s = kappa_expand(&f, 3).unwrap();
        assert_eq!(s.coeff(0), ExactScalar::zero());
        assert_eq!(s.coeff(1), &ExactScalar::from_int(2) * &sc(Var::HBar));
        assert_eq!(s.coeff(2), ExactScalar::zero());
        let h3 = sc(Var::HBar).pow(3).unwrap();
        assert_eq!(s.coeff(3), &ExactScalar::from_rational(rat(1, 3)) * &h3);
        assert_eq!(s.pole_order(), 0);
    }

    #[test]
    fn expand_geometric_pole() {
        // 1/(1 - q^-2 u1) = -κ^-1/(a1 - 2 hbar) + O(1)
        let one = ExactScalar::one();
        let qinv2 = sc(Var::Q).pow(-2).unwrap();
        let f = one
            .checked_div(&(&one - &(&qinv2 * &sc(Var::U(0)))))
            .unwrap();
        let s = kappa_expand(&f, 0).unwrap();
        assert_eq!(s.pole_order(), 1);
        let denom = &sc(Var::A(0)) - &(&ExactScalar::from_int(2) * &sc(Var::HBar));
        let expect = (&-&ExactScalar::one()).checked_div(&denom).unwrap();
        assert_eq!(s.coeff(-1), expect);
    }

    #[test]
    fn expand_constant() {
        let s = kappa_expand(&ExactScalar::one(), 5).unwrap();
        assert_eq!(s.coeff(0), ExactScalar::one());
        assert_eq!(s.coeffs.len(), 1);
    }

    #[test]
    fn passthrough_variables_survive() {
        // z1 (1 - q) expands to -z1 hbar κ + ...
        let f = &sc(Var::Z(0)) * &(&ExactScalar::one() - &sc(Var::Q));
        let s = kappa_expand(&f, 2).unwrap();
        assert_eq!(s.coeff(0), ExactScalar::zero());
        assert_eq!(
            s.coeff(1),
            &(&ExactScalar::zero() - &sc(Var::Z(0))) * &sc(Var::HBar)
        );
        let _ = int(0);
    }

    #[test]
    fn morphism_property_spot() {
        // expand(f*g) = expand(f)*expand(g) within the window
        let f = &sc(Var::Q) - &sc(Var::T);
        let g = ExactScalar::one()
            .checked_div(&(&sc(Var::Q) - &ExactScalar::one()))
            .unwrap();
        let fg = &f * &g;
        let sf = kappa_expand(&f, 4).unwrap();
        let sg = kappa_expand(&g, 4).unwrap();
        let sfg = kappa_expand(&fg, 2).unwrap();
        let prod = sf.mul(&sg);
        for j in prod.min_order..=2 {
            assert_eq!(prod.coeff(j), sfg.coeff(j), "coefficient of κ^{}", j);
        }
    }
}
