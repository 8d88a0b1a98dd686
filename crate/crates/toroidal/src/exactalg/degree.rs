//! Weighted degrees of Laurent monomials under the chamber substitution
//! `u_i -> t^{N_i}` with `N_1 << ... << N_k`.
//!
//! A weighted degree records the exponent of each `u_i` together with the
//! `t`-exponent; the total order compares framing exponents from the highest
//! index down and breaks ties by the `t`-exponent. `q` carries no weight.

use super::poly::LaurentPoly;
use super::scalar::ExactScalar;
use super::vars::{Mono, Var};
use crate::{Error, Result};
use num_rational::Rational64;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedDegree {
    /// Exponent of `u_i` per framing index (rational to allow slope pairings).
    pub u: Vec<Rational64>,
    /// Exponent of `t`.
    pub t: Rational64,
}

impl WeightedDegree {
    pub fn zero(framings: usize) -> Self {
        WeightedDegree {
            u: vec![Rational64::zero(); framings],
            t: Rational64::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero() && self.u.iter().all(|x| x.is_zero())
    }

    fn u_at(&self, i: usize) -> Rational64 {
        self.u.get(i).cloned().unwrap_or_else(Rational64::zero)
    }
}

impl PartialOrd for WeightedDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightedDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.u.len().max(other.u.len());
        for i in (0..k).rev() {
            match self.u_at(i).cmp(&other.u_at(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.t.cmp(&other.t)
    }
}

impl Add for &WeightedDegree {
    type Output = WeightedDegree;
    fn add(self, rhs: &WeightedDegree) -> WeightedDegree {
        let k = self.u.len().max(rhs.u.len());
        WeightedDegree {
            u: (0..k).map(|i| self.u_at(i) + rhs.u_at(i)).collect(),
            t: self.t + rhs.t,
        }
    }
}

impl Sub for &WeightedDegree {
    type Output = WeightedDegree;
    fn sub(self, rhs: &WeightedDegree) -> WeightedDegree {
        self + &(-rhs)
    }
}

impl Neg for &WeightedDegree {
    type Output = WeightedDegree;
    fn neg(self) -> WeightedDegree {
        WeightedDegree {
            u: self.u.iter().map(|x| -x).collect(),
            t: -self.t,
        }
    }
}

impl fmt::Display for WeightedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u:[")?;
        for (i, x) in self.u.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "], t:{})", self.t)
    }
}

/// Weighted degree of a monomial in `q, t, u_i`; `q` is ignored.
pub fn weighted_degree_of_mono(m: &Mono) -> Result<WeightedDegree> {
    let mut d = WeightedDegree::zero(0);
    for (v, e2) in m.exps() {
        match v {
            Var::Q => {}
            Var::T => d.t += Rational64::new(*e2, 2),
            Var::U(i) => {
                let i = *i as usize;
                if d.u.len() <= i {
                    d.u.resize(i + 1, Rational64::zero());
                }
                d.u[i] += Rational64::new(*e2, 2);
            }
            other => {
                return Err(Error::NotPolynomial(format!(
                    "variable {} carries no weight",
                    other.name()
                )))
            }
        }
    }
    Ok(d)
}

/// Extreme weighted degrees of a scalar whose denominator is a monomial.
pub fn degree_bounds(f: &ExactScalar) -> Result<(WeightedDegree, WeightedDegree)> {
    if f.is_zero() {
        return Err(Error::NotPolynomial("zero has no degree bounds".into()));
    }
    let den = f.denominator();
    if den.num_terms() != 1 {
        return Err(Error::NotPolynomial(
            "denominator is not a monomial".into(),
        ));
    }
    let dshift = weighted_degree_of_mono(den.leading().unwrap().0)?;
    let mut min: Option<WeightedDegree> = None;
    let mut max: Option<WeightedDegree> = None;
    for (m, _) in f.numerator().terms() {
        let d = &weighted_degree_of_mono(m)? - &dshift;
        min = Some(match min {
            None => d.clone(),
            Some(cur) => cur.min(d.clone()),
        });
        max = Some(match max {
            None => d,
            Some(cur) => cur.max(d),
        });
    }
    Ok((min.unwrap(), max.unwrap()))
}

/// Sum of the monomials of `f` whose weighted degree equals `d`; zero if none.
pub fn leading_part(f: &ExactScalar, d: &WeightedDegree) -> Result<ExactScalar> {
    let den = f.denominator();
    if den.num_terms() != 1 {
        return Err(Error::NotPolynomial(
            "denominator is not a monomial".into(),
        ));
    }
    let (dm, dc) = den.leading().unwrap();
    let dshift = weighted_degree_of_mono(dm)?;
    let mut out = LaurentPoly::zero();
    for (m, c) in f.numerator().terms() {
        if &(&weighted_degree_of_mono(m)? - &dshift) == d {
            out.add_term(m.div(dm), c / dc);
        }
    }
    Ok(ExactScalar::from_poly(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use num_rational::Rational64;

    fn wd(u: Vec<i64>, t: (i64, i64)) -> WeightedDegree {
        WeightedDegree {
            u: u.into_iter().map(Rational64::from_integer).collect(),
            t: Rational64::new(t.0, t.1),
        }
    }

    #[test]
    fn constant_bounds() {
        let one = ExactScalar::one();
        let (lo, hi) = degree_bounds(&one).unwrap();
        assert!(lo.is_zero() && hi.is_zero());
    }

    #[test]
    fn two_term_bounds() {
        // f = t^2 u1 - t^-1: min (u:0, t:-1), max (u:(1), t:2)
        let f = ExactScalar::from_poly(
            LaurentPoly::monomial(
                Mono::from_pairs([(Var::T, 4), (Var::U(0), 2)]),
                int(1),
            )
            .add_owned(LaurentPoly::monomial(Mono::var_pow(Var::T, -1), int(-1))),
        );
        let (lo, hi) = degree_bounds(&f).unwrap();
        assert_eq!(lo, wd(vec![], (-1, 1)));
        assert_eq!(hi, wd(vec![1], (2, 1)));
    }

    #[test]
    fn bracket_bounds() {
        // [t^2] = t - t^-1: min (0,-1), max (0,1)
        let f = ExactScalar::from_poly(super::super::scalar::bracket_mono(&Mono::var_pow(
            Var::T, 2,
        )));
        let (lo, hi) = degree_bounds(&f).unwrap();
        assert_eq!(lo, wd(vec![], (-1, 1)));
        assert_eq!(hi, wd(vec![], (1, 1)));
    }

    #[test]
    fn leading_part_picks_degree() {
        let f = ExactScalar::from_poly(
            LaurentPoly::monomial(
                Mono::from_pairs([(Var::T, 4), (Var::U(0), 2)]),
                int(1),
            )
            .add_owned(LaurentPoly::monomial(Mono::var_pow(Var::T, -1), int(-1))),
        );
        let lp = leading_part(&f, &wd(vec![], (-1, 1))).unwrap();
        let expect = ExactScalar::from_poly(LaurentPoly::monomial(
            Mono::var_pow(Var::T, -1),
            int(-1),
        ));
        assert_eq!(lp, expect);
        // q carries no weight: leading_part(qt + q^2 t, (0,1)) = (q+q^2) t
        let g = ExactScalar::from_poly(
            LaurentPoly::monomial(Mono::from_pairs([(Var::Q, 2), (Var::T, 2)]), int(1))
                .add_owned(LaurentPoly::monomial(
                    Mono::from_pairs([(Var::Q, 4), (Var::T, 2)]),
                    int(1),
                )),
        );
        let lp = leading_part(&g, &wd(vec![], (1, 1))).unwrap();
        assert_eq!(lp, g);
        // nothing at degree 0
        let lp0 = leading_part(&g, &wd(vec![], (0, 1))).unwrap();
        assert!(lp0.is_zero());
    }

    #[test]
    fn order_is_chamber_dominant() {
        // u2 beats any t power and any u1 power
        let a = wd(vec![0, 1], (-100, 1));
        let b = wd(vec![50, 0], (100, 1));
        assert!(a > b);
    }
}
