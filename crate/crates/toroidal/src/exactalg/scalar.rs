//! The fraction field of Laurent polynomials.

use super::gcd::{exact_div, poly_gcd};
use super::poly::LaurentPoly;
use super::vars::{Mono, Var};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

/// Term-count threshold beyond which fractions are reduced by a gcd pass.
static REDUCE_THRESHOLD: AtomicUsize = AtomicUsize::new(24);

/// Adjust the opportunistic gcd threshold (0 forces reduction everywhere).
pub fn set_reduce_threshold(n: usize) {
    REDUCE_THRESHOLD.store(n, Ordering::Relaxed);
}

/// An exact scalar: a ratio of Laurent polynomials, kept normalized so the
/// denominator is nonzero, has no monomial content and has leading
/// coefficient 1. Equality testing is by cross-multiplication and is exact
/// regardless of whether the fraction happens to be fully reduced.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExactScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl ExactScalar {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivByZero);
        }
        let mut s = ExactScalar { num, den };
        s.normalize();
        Ok(s)
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        ExactScalar {
            num,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(LaurentPoly::var(v))
    }

    /// `v` raised to the doubled exponent `e2`.
    pub fn var_pow2(v: Var, e2: i64) -> Self {
        Self::from_poly(LaurentPoly::var_pow2(v, e2))
    }

    pub fn monomial(m: Mono) -> Self {
        Self::from_poly(LaurentPoly::monomial(m, BigRational::one()))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &ExactScalar::one()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // cancel common monomial content between numerator and denominator
        let cm = self.num.mono_content().exp_min(&self.den.mono_content());
        if !cm.is_one() {
            self.num = self.num.mul_mono(&cm.inv());
            self.den = self.den.mul_mono(&cm.inv());
        }
        // strip the denominator's own monomial content into the numerator
        let dm = self.den.mono_content();
        if !dm.is_one() {
            self.den = self.den.mul_mono(&dm.inv());
            self.num = self.num.mul_mono(&dm.inv());
        }
        // unit-normalize: denominator leading coefficient 1
        let lc = self.den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
        let threshold = REDUCE_THRESHOLD.load(Ordering::Relaxed);
        if self.den.num_terms() > 1
            && (self.num.num_terms() > threshold || self.den.num_terms() > threshold)
        {
            self.reduce();
        }
    }

    /// Cancel the polynomial gcd of numerator and denominator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() || self.den.num_terms() <= 1 {
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        if g.is_constant() {
            return;
        }
        if let (Some(n), Some(d)) = (exact_div(&self.num, &g), exact_div(&self.den, &g)) {
            self.num = n;
            self.den = d;
            // restore unit normalization
            let dm = self.den.mono_content();
            if !dm.is_one() {
                self.den = self.den.mul_mono(&dm.inv());
                self.num = self.num.mul_mono(&dm.inv());
            }
            let lc = self.den.leading().unwrap().1.clone();
            if !lc.is_one() {
                let inv = BigRational::one() / lc;
                self.den = self.den.scale(&inv);
                self.num = self.num.scale(&inv);
            }
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivByZero);
        }
        ExactScalar::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &ExactScalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivByZero);
        }
        ExactScalar::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(ExactScalar::one());
        }
        let base = if k > 0 { self.clone() } else { self.inv()? };
        let mut out = ExactScalar::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Substitute `v ↦ coeff * m` in numerator and denominator.
    pub fn subst_mono(&self, v: Var, m: &Mono, coeff: &BigRational) -> Result<Self> {
        let num = self.num.subst_mono(v, m, coeff);
        let den = self.den.subst_mono(v, m, coeff);
        if den.is_zero() {
            return Err(Error::EvaluationPole(format!("{} -> {}", v.name(), m)));
        }
        ExactScalar::new(num, den)
    }

    /// Substitute a general scalar for a variable. The variable must occur
    /// with integer powers; negative powers are cleared through the fraction.
    pub fn subst(&self, v: Var, value: &ExactScalar) -> Result<Self> {
        let clear = |p: &LaurentPoly| -> (LaurentPoly, i64) {
            // multiply by v^k so all exponents of v are >= 0
            let min2 = p
                .terms()
                .map(|(m, _)| m.exp2_of(v))
                .min()
                .unwrap_or(0)
                .min(0);
            (p.mul_mono(&Mono::var_pow2(v, -min2)), min2)
        };
        let (np, nshift) = clear(&self.num);
        let (dp, dshift) = clear(&self.den);
        let vn = value.num.clone();
        let vd = value.den.clone();
        // evaluate p(v -> vn/vd) * vd^deg as a polynomial
        let eval = |p: &LaurentPoly| -> Result<(LaurentPoly, i64)> {
            let deg2 = p.degree2_in(v).map(|(_, mx)| mx).unwrap_or(0);
            if deg2 % 2 != 0 {
                return Err(Error::Parse("half power in substitution".into()));
            }
            let deg = deg2 / 2;
            let mut out = LaurentPoly::zero();
            for (e2, coeff) in p.coeffs_in(v) {
                let e = e2 / 2;
                let term = &(&coeff * &vn.pow(e as u32)) * &vd.pow((deg - e) as u32);
                out = &out + &term;
            }
            Ok((out, deg))
        };
        let (nev, ndeg) = eval(&np)?;
        let (dev, ddeg) = eval(&dp)?;
        if dev.is_zero() {
            return Err(Error::EvaluationPole(format!("substitution for {}", v.name())));
        }
        // assemble: num/den = nev * vd^(ddeg-ndeg) / dev, with the v^shift
        // factors replaced by value^shift
        let mut out = ExactScalar::new(nev, dev)?;
        let dd = ddeg - ndeg;
        if dd != 0 {
            let f = ExactScalar::new(vd.clone(), LaurentPoly::one())?.pow(dd)?;
            out = &out * &f;
        }
        let tot_shift = (nshift - dshift) / 2;
        if tot_shift != 0 {
            out = &out * &value.pow(tot_shift)?;
        }
        Ok(out)
    }

    /// All variables occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Evaluate with all variables set to rational squares
    /// (`v ↦ r_v^2`, so half powers evaluate to `r_v^(doubled exp)`).
    /// Returns `None` on a denominator zero.
    pub fn eval_sqrt_rational(&self, assign: &dyn Fn(Var) -> BigRational) -> Option<BigRational> {
        let eval_poly = |p: &LaurentPoly| -> BigRational {
            let mut acc = BigRational::zero();
            for (m, c) in p.terms() {
                let mut term = c.clone();
                for (v, e2) in m.exps() {
                    let r = assign(*v);
                    term *= super::poly::pow_rational(&r, *e2);
                }
                acc += term;
            }
            acc
        };
        let d = eval_poly(&self.den);
        if d.is_zero() {
            return None;
        }
        Some(eval_poly(&self.num) / d)
    }
}

/// Binary operation selector for the scalar arithmetic entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Div,
}

/// Exact field arithmetic; division by zero is reported, never panics.
pub fn scalar_arith(a: &ExactScalar, b: &ExactScalar, op: ScalarOp) -> Result<ExactScalar> {
    match op {
        ScalarOp::Add => Ok(a + b),
        ScalarOp::Mul => Ok(a * b),
        ScalarOp::Div => a.checked_div(b),
    }
}

/// The bracket `[m] = m^(1/2) - m^(-1/2)` of a monomial.
pub fn bracket_mono(m: &Mono) -> LaurentPoly {
    let h = m
        .sqrt()
        .expect("bracket of a monomial with odd half-exponents");
    let mut p = LaurentPoly::monomial(h.clone(), BigRational::one());
    p.add_term(h.inv(), -BigRational::one());
    p
}

/// Bracket of a monomial as a scalar.
pub fn bracket(m: &Mono) -> ExactScalar {
    ExactScalar::from_poly(bracket_mono(m))
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        // exact cross-multiplication test
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ExactScalar {}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let (num, den) = if self.den == rhs.den {
            (&self.num + &rhs.num, self.den.clone())
        } else {
            (
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            )
        };
        ExactScalar::new(num, den).expect("nonzero denominators")
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            let n = if self.num.num_terms() > 1 {
                format!("({})", self.num)
            } else {
                format!("{}", self.num)
            };
            let d = if self.den.num_terms() > 1 {
                format!("({})", self.den)
            } else {
                format!("{}", self.den)
            };
            write!(f, "{}/{}", n, d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn q() -> ExactScalar {
        ExactScalar::var(Var::Q)
    }
    fn t() -> ExactScalar {
        ExactScalar::var(Var::T)
    }

    #[test]
    fn self_division_is_one() {
        // (q - q^-1) / (q - q^-1) = 1
        let x = &q() - &q().inv().unwrap();
        assert!(x.checked_div(&x).unwrap().is_one());
    }

    #[test]
    fn bracket_q_minus_two() {
        // [q^-2] = q^-1 - q
        let b = bracket(&Mono::var_pow(Var::Q, -2));
        let expect = &q().inv().unwrap() - &q();
        assert_eq!(b, expect);
    }

    #[test]
    fn partial_fractions_sum_to_one() {
        // 1/(1-t) + 1/(1-t^-1) = 1
        let one = ExactScalar::one();
        let a = one.checked_div(&(&one - &t())).unwrap();
        let b = one
            .checked_div(&(&one - &t().inv().unwrap()))
            .unwrap();
        assert!((&a + &b).is_one());
    }

    #[test]
    fn division_by_zero_signals() {
        assert!(matches!(
            q().checked_div(&ExactScalar::zero()),
            Err(Error::DivByZero)
        ));
    }

    #[test]
    fn equality_is_representation_independent() {
        let a = ExactScalar::new(
            &LaurentPoly::var(Var::Q) * &LaurentPoly::var(Var::T),
            LaurentPoly::var(Var::T),
        )
        .unwrap();
        assert_eq!(a, q());
    }

    #[test]
    fn subst_general() {
        // f = (x1^2 + 1)/x1, substitute x1 -> q/(1+t)
        let x = Var::X(0);
        let f = ExactScalar::new(
            (&LaurentPoly::var_pow2(x, 4) + &LaurentPoly::one()).clone(),
            LaurentPoly::var(x),
        )
        .unwrap();
        let val = ExactScalar::new(
            LaurentPoly::var(Var::Q),
            &LaurentPoly::one() + &LaurentPoly::var(Var::T),
        )
        .unwrap();
        let got = f.subst(x, &val).unwrap();
        let expect = &(&(&val * &val) + &ExactScalar::one()) / &val;
        assert_eq!(got, expect);
        let _ = int(0);
    }
}

impl ExactScalar {
    /// Sum of a slice.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a ExactScalar>) -> ExactScalar {
        items
            .into_iter()
            .fold(ExactScalar::zero(), |acc, x| &acc + x)
    }

    /// Product of a slice.
    pub fn product<'a>(items: impl IntoIterator<Item = &'a ExactScalar>) -> ExactScalar {
        items.into_iter().fold(ExactScalar::one(), |acc, x| &acc * x)
    }
}
