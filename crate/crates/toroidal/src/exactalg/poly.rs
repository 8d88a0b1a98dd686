//! Sparse multivariate Laurent polynomials over the rationals.

use super::vars::{Mono, Var};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial: finite map from monomials to nonzero rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from(num_bigint::BigInt::from(n)))
    }

    pub fn monomial(m: Mono, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Mono::var(v), BigRational::one())
    }

    /// `v` raised to the doubled exponent `e2` (so `e2 = 1` is `v^(1/2)`).
    pub fn var_pow2(v: Var, e2: i64) -> Self {
        Self::monomial(Mono::var_pow2(v, e2), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            // remove the slot we just zeroed
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    /// Leading term under the canonical monomial order.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    /// Greatest common monomial divisor of all terms (exponent minima).
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Mono::one(),
        };
        it.fold(first, |acc, m| acc.exp_min(m))
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed by
    /// the leading coefficient.
    pub fn rational_content(&self) -> BigRational {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            content = -content;
        }
        content
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        out
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.vars().collect::<Vec<_>>())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    /// Substitute a monomial for a variable: `v ↦ c * m` where the doubled
    /// exponent of `v` scales `m` and `c` accordingly. Only integer and
    /// half-integer powers of the replacement monomial are representable, so
    /// the replacement must have even doubled exponents whenever `v` occurs
    /// with odd doubled exponent.
    pub fn subst_mono(&self, v: Var, repl: &Mono, coeff: &BigRational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e2 = m.exp2_of(v);
            if e2 == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let rest = Mono::from_pairs(m.exps().iter().filter(|(w, _)| *w != v).cloned());
            // repl^(e2/2): build by scaling doubled exponents of repl by e2/2.
            let scaled = Mono::from_pairs(repl.exps().iter().map(|(w, e)| {
                let prod = e * e2;
                assert!(prod % 2 == 0, "fractional exponent in substitution");
                (*w, prod / 2)
            }));
            assert!(
                e2 % 2 == 0 || coeff.is_one(),
                "half power of a non-unit coefficient in substitution"
            );
            let cpow = if e2 % 2 == 0 {
                pow_rational(coeff, e2 / 2)
            } else {
                BigRational::one()
            };
            out.add_term(rest.mul(&scaled), c * cpow);
        }
        out
    }

    /// Substitute a full polynomial for a variable. Requires the variable to
    /// occur only with integer (even doubled) non-negative exponents unless
    /// the replacement is invertible (a monomial), in which case any integer
    /// exponent is allowed.
    pub fn subst_poly(&self, v: Var, repl: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e2 = m.exp2_of(v);
            assert!(e2 % 2 == 0, "half power in polynomial substitution");
            let e = e2 / 2;
            let rest = Mono::from_pairs(m.exps().iter().filter(|(w, _)| *w != v).cloned());
            let powed = if e >= 0 {
                repl.pow(e as u32)
            } else {
                // only monomial replacements can be inverted
                assert_eq!(repl.num_terms(), 1, "negative power of non-monomial");
                let (rm, rc) = repl.leading().unwrap();
                LaurentPoly::monomial(rm.pow(e), pow_rational(rc, e))
            };
            out = &out + &powed.mul_mono(&rest).scale(c);
        }
        out
    }

    /// Evaluate the polynomial regarded as univariate in `v`, listing doubled
    /// exponents and coefficient polynomials (which do not involve `v`).
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e2 = m.exp2_of(v);
            let rest = Mono::from_pairs(m.exps().iter().filter(|(w, _)| *w != v).cloned());
            out.entry(e2)
                .or_insert_with(LaurentPoly::zero)
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Maximal doubled exponent of `v` over all terms, `None` if absent.
    pub fn degree2_in(&self, v: Var) -> Option<(i64, i64)> {
        let mut min = i64::MAX;
        let mut max = i64::MIN;
        let mut seen = false;
        for m in self.terms.keys() {
            let e = m.exp2_of(v);
            if e != 0 {
                seen = true;
            }
            min = min.min(e);
            max = max.max(e);
        }
        if self.is_zero() {
            return None;
        }
        if !seen {
            return Some((0, 0));
        }
        Some((min, max))
    }
}

pub(crate) fn pow_rational(c: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let p = c.pow(e.unsigned_abs() as i32 * if e < 0 { -1 } else { 1 });
    p
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // print highest terms first for readability
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let coeff_is_one = mag.is_one();
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if coeff_is_one {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn add_mul_basic() {
        let q = LaurentPoly::var(Var::Q);
        let one = LaurentPoly::one();
        let s = &q + &one;
        let p = &s * &s;
        // (q+1)^2 = q^2 + 2q + 1
        assert_eq!(p.coeff(&Mono::var_pow(Var::Q, 2)), int(1));
        assert_eq!(p.coeff(&Mono::var(Var::Q)), int(2));
        assert_eq!(p.coeff(&Mono::one()), int(1));
    }

    #[test]
    fn laurent_cancellation() {
        let q = LaurentPoly::var(Var::Q);
        let qinv = LaurentPoly::var_pow2(Var::Q, -2);
        let d = &q - &q;
        assert!(d.is_zero());
        let p = &q * &qinv;
        assert_eq!(p, LaurentPoly::one());
    }

    #[test]
    fn content_extraction() {
        let p = LaurentPoly::monomial(Mono::var_pow(Var::Q, 2), int(4))
            .add_owned(LaurentPoly::monomial(Mono::var(Var::Q), int(6)));
        assert_eq!(p.rational_content(), int(2));
        assert_eq!(p.mono_content(), Mono::var(Var::Q));
    }
}

impl LaurentPoly {
    pub(crate) fn add_owned(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}
