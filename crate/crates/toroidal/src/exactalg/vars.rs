//! Variable identifiers and monomials.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A symbolic variable. The fixed global order of variants doubles as the
/// canonical variable order of all monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    /// The quantum parameter q.
    Q,
    /// The equivariant parameter t.
    T,
    /// The difference-equation shift parameter p.
    P,
    /// The expansion parameter of the cohomological limit.
    Kappa,
    /// log q under the cohomological limit.
    HBar,
    /// log t under the cohomological limit.
    Theta,
    /// Framing equivariant parameter u_i (0-based).
    U(u16),
    /// log u_i under the cohomological limit.
    A(u16),
    /// Kähler variable z_i attached to node i (0-based).
    Z(u16),
    /// Auxiliary slot (shuffle variables, expansion variables, ...).
    X(u16),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::Q => "q".into(),
            Var::T => "t".into(),
            Var::P => "p".into(),
            Var::Kappa => "kappa".into(),
            Var::HBar => "hbar".into(),
            Var::Theta => "theta".into(),
            Var::U(i) => format!("u{}", i + 1),
            Var::A(i) => format!("a{}", i + 1),
            Var::Z(i) => format!("z{}", i + 1),
            Var::X(i) => format!("x{}", i + 1),
        }
    }
}

/// A Laurent monomial: sorted list of `(variable, doubled exponent)` pairs
/// with no zero exponents. A doubled exponent `2k` represents the power `k`,
/// an odd value `2k+1` the half-integer power `k + 1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Mono(Vec<(Var, i64)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    /// Single variable with doubled exponent `e2`.
    pub fn var_pow2(v: Var, e2: i64) -> Self {
        if e2 == 0 {
            Mono::one()
        } else {
            Mono(vec![(v, e2)])
        }
    }

    /// Single variable with integer exponent `e`.
    pub fn var_pow(v: Var, e: i64) -> Self {
        Self::var_pow2(v, 2 * e)
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[(Var, i64)] {
        &self.0
    }

    /// Doubled exponent of `v` in this monomial.
    pub fn exp2_of(&self, v: Var) -> i64 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i64)>) -> Self {
        let mut m: Vec<(Var, i64)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match m.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += e,
                None => m.push((v, e)),
            }
        }
        m.retain(|(_, e)| *e != 0);
        m.sort_by_key(|(v, _)| *v);
        Mono(m)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out: Vec<(Var, i64)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Mono(out)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|(v, e)| (*v, -e)).collect())
    }

    pub fn div(&self, other: &Mono) -> Mono {
        self.mul(&other.inv())
    }

    /// Integer power (of the underlying monomial, not of the doubled data).
    pub fn pow(&self, k: i64) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono(self.0.iter().map(|(v, e)| (*v, e * k)).collect())
    }

    /// Square root; requires all doubled exponents to be even.
    pub fn sqrt(&self) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (v, e) in &self.0 {
            if e % 2 != 0 {
                return None;
            }
            out.push((*v, e / 2));
        }
        Some(Mono(out))
    }

    /// Componentwise minimum of exponents (gcd of monomials).
    pub fn exp_min(&self, other: &Mono) -> Mono {
        let mut out = Vec::new();
        let vars: Vec<Var> = self
            .0
            .iter()
            .map(|(v, _)| *v)
            .chain(other.0.iter().map(|(v, _)| *v))
            .collect();
        let mut vars = vars;
        vars.sort();
        vars.dedup();
        for v in vars {
            let e = self.exp2_of(v).min(other.exp2_of(v));
            if e != 0 {
                out.push((v, e));
            }
        }
        Mono(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.iter().any(|(w, _)| *w == v)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order over the global variable order, missing exponents
/// treated as zero. Any fixed total order works for canonicalisation; this
/// one keeps leading terms stable across runs.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(v, e)), None) => {
                    let _ = v;
                    return e.cmp(&0);
                }
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(v1, e1)), Some(&(v2, e2))) => match v1.cmp(&v2) {
                    Ordering::Less => {
                        if e1 != 0 {
                            return e1.cmp(&0);
                        }
                        i += 1;
                    }
                    Ordering::Greater => {
                        if e2 != 0 {
                            return 0.cmp(&e2);
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        if e1 != e2 {
                            return e1.cmp(&e2);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e2) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e2 == 2 {
                write!(f, "{}", v.name())?;
            } else if e2 % 2 == 0 {
                write!(f, "{}^{}", v.name(), e2 / 2)?;
            } else {
                write!(f, "{}^({}/2)", v.name(), e2)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mono_mul_cancels() {
        let m = Mono::var(Var::Q).mul(&Mono::var_pow(Var::Q, -1));
        assert!(m.is_one());
    }

    #[test]
    fn mono_order_total() {
        let a = Mono::var(Var::Q);
        let b = Mono::var(Var::T);
        let c = Mono::var_pow(Var::Q, -1);
        assert!(a > c);
        // q^1 t^0 vs q^0 t^1: q-exponent decides.
        assert!(a > b);
        assert_eq!(a.cmp(&a), std::cmp::Ordering::Equal);
    }

    #[test]
    fn sqrt_roundtrip() {
        let m = Mono::from_pairs([(Var::Q, 4), (Var::U(0), 2)]);
        let s = m.sqrt().unwrap();
        assert_eq!(s.mul(&s), m);
        assert!(Mono::var_pow2(Var::Q, 1).sqrt().is_none());
    }
}
