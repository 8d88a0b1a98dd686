//! The shuffle algebra halves: color-graded symmetric rational functions with
//! the ζ-twisted product, wheel conditions, slope membership tests and the
//! slope generators with their structural coproducts.

use crate::exactalg::gcd::exact_div;
use crate::exactalg::{bracket_mono, ExactScalar, LaurentPoly, Mono, Var};
use crate::{Error, Result};
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Hard cap on the total number of shuffle variables; symmetrization is
/// factorial in this count.
pub const DEFAULT_VARIABLE_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Half {
    Positive,
    Negative,
}

/// The four-case ζ factor, evaluated at monomial arguments `x` (of color
/// `ci`) and `y` (of color `cj`); returns ζ(x/y) as written with brackets.
pub fn zeta_mono(n: usize, ci: usize, cj: usize, x: &Mono, y: &Mono) -> ExactScalar {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    // adjacency δ^i_{j-1}: bracket [y/(q t x)]
    if (ci + 1) % n == cj {
        let m = y.div(x).mul(&Mono::from_pairs([(Var::Q, -2), (Var::T, -2)]));
        num = &num * &bracket_mono(&m);
    }
    // adjacency δ^i_{j+1}: bracket [t y/(q x)]
    if ci == (cj + 1) % n {
        let m = y.div(x).mul(&Mono::from_pairs([(Var::Q, -2), (Var::T, 2)]));
        num = &num * &bracket_mono(&m);
    }
    // diagonal δ^i_j: [y/x] [y/(q^2 x)]
    if ci == cj {
        let r = y.div(x);
        den = &den * &bracket_mono(&r);
        den = &den * &bracket_mono(&r.mul(&Mono::var_pow(Var::Q, -2)));
    }
    ExactScalar::new(num, den).expect("zeta denominator vanishes identically")
}

/// A fraction with the denominator kept as a multiset of canonical factors
/// (content-free, leading coefficient 1). Keeps symmetrization sums
/// polynomial: no denominators are ever expanded against each other.
#[derive(Clone, Debug)]
struct FactoredFrac {
    num: LaurentPoly,
    /// canonical factor -> multiplicity
    den: std::collections::BTreeMap<LaurentPoly, usize>,
}

impl FactoredFrac {
    fn from_poly(num: LaurentPoly) -> Self {
        FactoredFrac {
            num,
            den: Default::default(),
        }
    }

    fn mul_poly(&mut self, p: &LaurentPoly) {
        self.num = &self.num * p;
    }

    fn mul_mono_pow(&mut self, m: &Mono) {
        self.num = self.num.mul_mono(m);
    }

    /// Multiply by `1/raw`: the factor is normalized, its unit (monomial
    /// content and leading coefficient) folded into the numerator.
    fn div_factor(&mut self, raw: &LaurentPoly) {
        let content = raw.mono_content();
        let stripped = raw.mul_mono(&content.inv());
        let lc = stripped.leading().unwrap().1.clone();
        let canon = stripped.scale(&(num_rational::BigRational::from_integer(1.into()) / &lc));
        self.num = self
            .num
            .mul_mono(&content.inv())
            .scale(&(num_rational::BigRational::from_integer(1.into()) / lc));
        if canon != LaurentPoly::one() {
            *self.den.entry(canon).or_insert(0) += 1;
        }
    }

    /// Multiply by an exact scalar whose denominator is split into canonical
    /// factors one multiplication at a time.
    fn mul_scalar_num_only(&mut self, s: &ExactScalar) {
        self.num = &self.num * s.numerator();
        self.div_factor(s.denominator());
    }

    /// Sum over a common denominator; the result's denominator is the
    /// multiset maximum of all inputs'.
    fn sum(terms: &[FactoredFrac]) -> FactoredFrac {
        let mut common: std::collections::BTreeMap<LaurentPoly, usize> = Default::default();
        for t in terms {
            for (f, &m) in &t.den {
                let slot = common.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(m);
            }
        }
        let mut num = LaurentPoly::zero();
        for t in terms {
            let mut part = t.num.clone();
            for (f, &m) in &common {
                let have = t.den.get(f).cloned().unwrap_or(0);
                for _ in have..m {
                    part = &part * f;
                }
            }
            num = num.add_owned(part);
        }
        FactoredFrac { num, den: common }
    }

    /// Clear against the canonical shuffle denominator: returns the canonical
    /// numerator, or `None` if some pole fails to cancel.
    fn into_canonical_numerator(mut self, content: &[usize]) -> Option<LaurentPoly> {
        // divide the numerator by every factor not in the canonical divisor;
        // multiply by the canonical factors not present in our denominator
        let mut canonical: std::collections::BTreeMap<LaurentPoly, usize> = Default::default();
        let mut unit = Mono::one();
        let mut unit_c = num_rational::BigRational::from_integer(1.into());
        for (c, &k) in content.iter().enumerate() {
            for a in 0..k {
                for b in 0..k {
                    if a == b {
                        continue;
                    }
                    let za = slot_var(content, c, a);
                    let zb = slot_var(content, c, b);
                    let mut f = LaurentPoly::monomial(
                        Mono::from_pairs([(Var::Q, 2), (za, 2)]),
                        crate::exactalg::int(1),
                    );
                    f.add_term(
                        Mono::from_pairs([(Var::Q, -2), (zb, 2)]),
                        crate::exactalg::int(-1),
                    );
                    // canonical form: strip content (q^{-1}) and set lc to 1;
                    // the stripped unit multiplies the final numerator
                    let content_m = f.mono_content();
                    let stripped = f.mul_mono(&content_m.inv());
                    let lc = stripped.leading().unwrap().1.clone();
                    let canon =
                        stripped.scale(&(num_rational::BigRational::from_integer(1.into()) / &lc));
                    unit = unit.mul(&content_m);
                    unit_c *= lc;
                    *canonical.entry(canon).or_insert(0) += 1;
                }
            }
        }
        // excess factors in self.den must divide the numerator
        for (f, &mult) in &self.den {
            let want = canonical.get(f).cloned().unwrap_or(0);
            for _ in want..mult {
                self.num = exact_div(&self.num, f)?;
            }
        }
        // missing canonical factors multiply the numerator
        for (f, &want) in &canonical {
            let have = self.den.get(f).cloned().unwrap_or(0).min(want);
            for _ in have..want {
                self.num = &self.num * f;
            }
        }
        Some(self.num.mul_mono(&unit).scale(&unit_c))
    }
}

/// ζ(x/y) as a factored fraction contribution: multiplies numerator parts in
/// and records denominator factors without expanding them.
fn mul_zeta_factored(ff: &mut FactoredFrac, n: usize, ci: usize, cj: usize, x: &Mono, y: &Mono) {
    // adjacency brackets go to the numerator
    if (ci + 1) % n == cj {
        let m = y.div(x).mul(&Mono::from_pairs([(Var::Q, -2), (Var::T, -2)]));
        ff.mul_poly(&bracket_mono(&m));
    }
    if ci == (cj + 1) % n {
        let m = y.div(x).mul(&Mono::from_pairs([(Var::Q, -2), (Var::T, 2)]));
        ff.mul_poly(&bracket_mono(&m));
    }
    if ci == cj {
        let r = y.div(x);
        ff.div_factor(&bracket_mono(&r));
        ff.div_factor(&bracket_mono(&r.mul(&Mono::var_pow(Var::Q, -2))));
    }
}

/// A shuffle-algebra element in canonical form: a color-symmetric Laurent
/// numerator over the canonical denominator
/// `∏_color ∏_{a≠b} (q z_a - q^{-1} z_b)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShuffleElement {
    pub half: Half,
    pub n: usize,
    /// number of variables per color
    pub content: Vec<usize>,
    /// numerator in the slot variables (see [`slot_var`])
    pub numerator: LaurentPoly,
    /// global coefficient, free of slot variables (the base field is the
    /// fraction field in q and t)
    pub coeff: ExactScalar,
}

/// Variable of the `index`-th slot of color `color` given the content.
pub fn slot_var(content: &[usize], color: usize, index: usize) -> Var {
    let offset: usize = content[..color].iter().sum();
    Var::X((offset + index) as u16)
}

/// The canonical denominator on the given content.
pub fn canonical_denominator(content: &[usize]) -> LaurentPoly {
    let mut d = LaurentPoly::one();
    for (c, &k) in content.iter().enumerate() {
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let za = slot_var(content, c, a);
                let zb = slot_var(content, c, b);
                // q z_a - q^-1 z_b
                let mut f = LaurentPoly::monomial(
                    Mono::from_pairs([(Var::Q, 2), (za, 2)]),
                    crate::exactalg::int(1),
                );
                f.add_term(Mono::from_pairs([(Var::Q, -2), (zb, 2)]), crate::exactalg::int(-1));
                d = &d * &f;
            }
        }
    }
    d
}

impl ShuffleElement {
    /// Construct, checking the color symmetry of the numerator.
    pub fn new(half: Half, n: usize, content: Vec<usize>, numerator: LaurentPoly) -> Result<Self> {
        if content.len() != n {
            return Err(Error::Config("content length must equal n".into()));
        }
        let e = ShuffleElement {
            half,
            n,
            content,
            numerator,
            coeff: ExactScalar::one(),
        };
        if !e.is_symmetric() {
            return Err(Error::Config(
                "numerator is not symmetric within colors".into(),
            ));
        }
        Ok(e)
    }

    /// The unit element of a half.
    pub fn one(half: Half, n: usize) -> Self {
        ShuffleElement {
            half,
            n,
            content: vec![0; n],
            numerator: LaurentPoly::one(),
            coeff: ExactScalar::one(),
        }
    }

    /// A single variable of the given color raised to `d`, times a scalar
    /// free of slot variables.
    pub fn single(half: Half, n: usize, color: usize, d: i64, scale: &ExactScalar) -> Self {
        let mut content = vec![0; n];
        content[color] = 1;
        let v = slot_var(&content, color, 0);
        ShuffleElement {
            half,
            n,
            content,
            numerator: LaurentPoly::var_pow2(v, 2 * d),
            coeff: scale.clone(),
        }
    }

    pub fn total_vars(&self) -> usize {
        self.content.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero() || self.coeff.is_zero()
    }

    /// Scale by a scalar free of slot variables.
    pub fn scaled(&self, c: &ExactScalar) -> ShuffleElement {
        let mut out = self.clone();
        out.coeff = &out.coeff * c;
        out
    }

    /// Fold the global coefficient into the numerator where possible: its
    /// denominator stays as an overall `1/d` coefficient, the numerator part
    /// multiplies in.
    fn coeff_parts(&self) -> (LaurentPoly, LaurentPoly) {
        (
            &self.numerator * self.coeff.numerator(),
            self.coeff.denominator().clone(),
        )
    }

    pub fn add(&self, rhs: &ShuffleElement) -> Result<ShuffleElement> {
        if self.half != rhs.half {
            return Err(Error::HalfMismatch);
        }
        if self.content != rhs.content {
            return Err(Error::GradingMismatch("shuffle add".into()));
        }
        let (n1, d1) = self.coeff_parts();
        let (n2, d2) = rhs.coeff_parts();
        let numerator = (&(&n1 * &d2) + &(&n2 * &d1)).clone();
        Ok(ShuffleElement {
            half: self.half,
            n: self.n,
            content: self.content.clone(),
            numerator,
            coeff: ExactScalar::one()
                .checked_div(&ExactScalar::from_poly(&d1 * &d2))
                .expect("nonzero denominators"),
        })
    }

    /// Numerator symmetry under permutations within each color class.
    pub fn is_symmetric(&self) -> bool {
        for (c, &k) in self.content.iter().enumerate() {
            for a in 0..k.saturating_sub(1) {
                let va = slot_var(&self.content, c, a);
                let vb = slot_var(&self.content, c, a + 1);
                if swap_vars(&self.numerator, va, vb) != self.numerator {
                    return false;
                }
            }
        }
        true
    }

    /// The full rational function: numerator over the canonical denominator.
    pub fn as_scalar(&self) -> ExactScalar {
        let base = ExactScalar::new(self.numerator.clone(), canonical_denominator(&self.content))
            .expect("canonical denominator nonzero");
        &base * &self.coeff
    }

    /// Evaluate at monomial values per slot (flattened color-major order).
    /// Substitution is capture-free: values may themselves mention slot
    /// variables.
    pub fn eval_at(&self, values: &[Mono]) -> Result<ExactScalar> {
        assert_eq!(values.len(), self.total_vars());
        let den = subst_slots(&canonical_denominator(&self.content), values);
        if den.is_zero() {
            return Err(Error::EvaluationPole(
                "canonical denominator vanishes at the evaluation point".into(),
            ));
        }
        Ok(&ExactScalar::new(subst_slots(&self.numerator, values), den)? * &self.coeff)
    }

    /// All wheel substitution points on this content: triples of colors
    /// `(i, i±1, i)` with distinct same-color slots, substituted by
    /// `(q^{-1}w, t^{±1}w, qw)`.
    fn wheel_points(&self) -> Vec<Vec<(Var, Mono)>> {
        let w = Var::X(63); // fresh symbol for the common scale
        let mut out = Vec::new();
        for i in 0..self.n {
            if self.content[i] < 2 {
                continue;
            }
            for sgn in [1i64, -1i64] {
                let j = if sgn == 1 {
                    (i + 1) % self.n
                } else {
                    (i + self.n - 1) % self.n
                };
                if self.content[j] < 1 {
                    continue;
                }
                let a = slot_var(&self.content, i, 0);
                let c = slot_var(&self.content, i, 1);
                let b = slot_var(&self.content, j, 0);
                if b == a || b == c {
                    continue;
                }
                out.push(vec![
                    (a, Mono::from_pairs([(Var::Q, -2), (w, 2)])),
                    (b, Mono::from_pairs([(Var::T, 2 * sgn), (w, 2)])),
                    (c, Mono::from_pairs([(Var::Q, 2), (w, 2)])),
                ]);
            }
        }
        out
    }

    /// Exact check of the wheel conditions on the numerator.
    pub fn check_wheel(&self) -> bool {
        let one = num_rational::BigRational::from_integer(1.into());
        for point in self.wheel_points() {
            let mut p = self.numerator.clone();
            for (v, m) in &point {
                p = p.subst_mono(*v, m, &one);
            }
            if !p.is_zero() {
                return false;
            }
        }
        true
    }

    /// Exact equality: same half and content, cross-multiplied numerators.
    pub fn equals(&self, rhs: &ShuffleElement) -> bool {
        if self.half != rhs.half || self.content != rhs.content {
            return false;
        }
        let (n1, d1) = self.coeff_parts();
        let (n2, d2) = rhs.coeff_parts();
        &n1 * &d2 == &n2 * &d1
    }
}

/// Simultaneous substitution of the slot variables `X(0..k)` by monomial
/// values; capture-free even when the values mention slot variables.
pub(crate) fn subst_slots(p: &LaurentPoly, values: &[Mono]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let mut acc = Mono::one();
        for (v, e2) in m.exps() {
            match v {
                Var::X(i) if (*i as usize) < values.len() => {
                    // value^(e2/2) in the doubled lattice
                    let repl = Mono::from_pairs(values[*i as usize].exps().iter().map(
                        |(w, e)| {
                            let prod = e * e2;
                            assert!(prod % 2 == 0, "fractional exponent in substitution");
                            (*w, prod / 2)
                        },
                    ));
                    acc = acc.mul(&repl);
                }
                _ => acc = acc.mul(&Mono::var_pow2(*v, *e2)),
            }
        }
        out.add_term(acc, c.clone());
    }
    out
}

fn swap_vars(p: &LaurentPoly, a: Var, b: Var) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let swapped = Mono::from_pairs(m.exps().iter().map(|(v, e)| {
            let w = if *v == a {
                b
            } else if *v == b {
                a
            } else {
                *v
            };
            (w, *e)
        }));
        out.add_term(swapped, c.clone());
    }
    out
}

/// The ζ-twisted symmetrized product. For the negative half the opposite
/// convention applies: the factors trade places.
pub fn shuffle_product(f: &ShuffleElement, g: &ShuffleElement) -> Result<ShuffleElement> {
    shuffle_product_capped(f, g, DEFAULT_VARIABLE_CAP)
}

pub fn shuffle_product_capped(
    f: &ShuffleElement,
    g: &ShuffleElement,
    cap: usize,
) -> Result<ShuffleElement> {
    if f.half != g.half {
        return Err(Error::HalfMismatch);
    }
    let (f, g) = match f.half {
        Half::Positive => (f, g),
        Half::Negative => (g, f),
    };
    let n = f.n;
    let content: Vec<usize> = f
        .content
        .iter()
        .zip(&g.content)
        .map(|(a, b)| a + b)
        .collect();
    let total: usize = content.iter().sum();
    if total > cap {
        return Err(Error::VariableCap(format!(
            "{} shuffle variables exceed the cap {}",
            total, cap
        )));
    }
    // enumerate shuffles: per color, the subset of product slots assigned to f
    let per_color_choices: Vec<Vec<Vec<usize>>> = content
        .iter()
        .enumerate()
        .map(|(c, &k)| subsets_of_size(k, f.content[c]))
        .collect();
    let mut summands: Vec<FactoredFrac> = Vec::new();
    let mut choice_idx = vec![0usize; n];
    loop {
        let mut f_assign: Vec<Mono> = Vec::new();
        let mut g_assign: Vec<Mono> = Vec::new();
        let mut f_slots: Vec<(usize, Var)> = Vec::new();
        let mut g_slots: Vec<(usize, Var)> = Vec::new();
        for c in 0..n {
            let chosen = &per_color_choices[c][choice_idx[c]];
            for &i in chosen {
                let v = slot_var(&content, c, i);
                f_assign.push(Mono::var(v));
                f_slots.push((c, v));
            }
            for i in 0..content[c] {
                if !chosen.contains(&i) {
                    let v = slot_var(&content, c, i);
                    g_assign.push(Mono::var(v));
                    g_slots.push((c, v));
                }
            }
        }
        // numerators evaluated on the assigned slots (capture-free)
        let mut ff = FactoredFrac::from_poly(
            &subst_slots(&f.numerator, &f_assign) * &subst_slots(&g.numerator, &g_assign),
        );
        // canonical denominators of the factors, on their assigned slots
        for (slots_group, _) in [(&f_slots, 0), (&g_slots, 1)] {
            for (ca, va) in slots_group.iter() {
                for (cb, vb) in slots_group.iter() {
                    if ca == cb && va != vb {
                        let mut bin = LaurentPoly::monomial(
                            Mono::from_pairs([(Var::Q, 2), (*va, 2)]),
                            crate::exactalg::int(1),
                        );
                        bin.add_term(
                            Mono::from_pairs([(Var::Q, -2), (*vb, 2)]),
                            crate::exactalg::int(-1),
                        );
                        ff.div_factor(&bin);
                    }
                }
            }
        }
        // ζ factors between the groups
        for (ci, va) in &f_slots {
            for (cj, vb) in &g_slots {
                mul_zeta_factored(&mut ff, n, *ci, *cj, &Mono::var(*va), &Mono::var(*vb));
            }
        }
        summands.push(ff);
        let mut c = 0;
        loop {
            if c == n {
                break;
            }
            choice_idx[c] += 1;
            if choice_idx[c] < per_color_choices[c].len() {
                break;
            }
            choice_idx[c] = 0;
            c += 1;
        }
        if c == n {
            break;
        }
    }
    let total = FactoredFrac::sum(&summands);
    let numerator = total.into_canonical_numerator(&content).ok_or_else(|| {
        Error::EvaluationPole("shuffle product has poles outside the canonical divisor".into())
    })?;
    let mut out = ShuffleElement::new(f.half, n, content, numerator)?;
    out.coeff = &f.coeff * &g.coeff;
    Ok(out)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A rational slope vector of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeVector(pub Vec<Rational64>);

impl SlopeVector {
    pub fn zero(n: usize) -> Self {
        SlopeVector(vec![Rational64::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        SlopeVector(v.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    pub fn dot(&self, v: &[i64]) -> Rational64 {
        self.0
            .iter()
            .zip(v)
            .map(|(m, &x)| *m * Rational64::from_integer(x))
            .sum()
    }

    pub fn neg(&self) -> SlopeVector {
        SlopeVector(self.0.iter().map(|x| -x).collect())
    }
}

/// Cartan pairing `a^T C b` on dimension vectors of the cycle quiver.
pub fn cartan_pair(n: usize, a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0;
    for i in 0..n {
        for j in 0..n {
            let mut c = if i == j { 2 } else { 0 };
            if (i + 1) % n == j {
                c -= 1;
            }
            if (j + 1) % n == i {
                c -= 1;
            }
            acc += a[i] * c * b[j];
        }
    }
    acc
}

/// Slope membership: true iff every variable split keeps the scaled limit
/// finite. The positive half scales the chosen variables to infinity, the
/// negative half to zero.
pub fn slope_leq_test(f: &ShuffleElement, m: &SlopeVector) -> bool {
    let n = f.n;
    let content: Vec<i64> = f.content.iter().map(|&x| x as i64).collect();
    let mut b = vec![0i64; n];
    loop {
        let a: Vec<i64> = content.iter().zip(&b).map(|(k, x)| k - x).collect();
        if b.iter().any(|&x| x > 0) {
            let pair = Rational64::new(cartan_pair(n, &a, &b), 2);
            match f.half {
                Half::Positive => {
                    let mut scaled: Vec<Var> = Vec::new();
                    for c in 0..n {
                        for i in (f.content[c] - b[c] as usize)..f.content[c] {
                            scaled.push(slot_var(&f.content, c, i));
                        }
                    }
                    let num_deg = max_scaled_degree(&f.numerator, &scaled);
                    let den_deg: i64 = (0..n).map(|c| b[c] * (b[c] - 1) + 2 * a[c] * b[c]).sum();
                    if Rational64::from_integer(num_deg - den_deg) > m.dot(&b) - pair {
                        return false;
                    }
                }
                Half::Negative => {
                    // scale the complementary group towards zero
                    let mut scaled: Vec<Var> = Vec::new();
                    for c in 0..n {
                        for i in 0..(a[c] as usize) {
                            scaled.push(slot_var(&f.content, c, i));
                        }
                    }
                    if !scaled.is_empty() {
                        let num_deg = min_scaled_degree(&f.numerator, &scaled);
                        let den_deg: i64 = (0..n).map(|c| a[c] * (a[c] - 1)).sum();
                        let ma = m.dot(&a);
                        if Rational64::from_integer(num_deg - den_deg) < -ma + pair {
                            return false;
                        }
                    }
                }
            }
        }
        let mut c = n;
        loop {
            if c == 0 {
                return true;
            }
            c -= 1;
            if b[c] < content[c] {
                b[c] += 1;
                for x in b.iter_mut().skip(c + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

fn max_scaled_degree(p: &LaurentPoly, scaled: &[Var]) -> i64 {
    p.terms()
        .map(|(m, _)| scaled.iter().map(|v| m.exp2_of(*v)).sum::<i64>() / 2)
        .max()
        .unwrap_or(0)
}

fn min_scaled_degree(p: &LaurentPoly, scaled: &[Var]) -> i64 {
    p.terms()
        .map(|(m, _)| scaled.iter().map(|v| m.exp2_of(*v)).sum::<i64>() / 2)
        .min()
        .unwrap_or(0)
}

/// An arc `[i; j)` of residues, `i ≤ j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub start: i64,
    pub end: i64,
}

impl Arc {
    pub fn new(start: i64, end: i64) -> Self {
        assert!(end >= start);
        Arc { start, end }
    }

    pub fn len(&self) -> i64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Dimension vector: residue counts in the window.
    pub fn dim_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for a in self.start..self.end {
            v[a.rem_euclid(n as i64) as usize] += 1;
        }
        v
    }
}

impl std::fmt::Display for Arc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{};{})", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    P,
    Q,
}

/// `ind^m_{[i;j)}` doubled; must land on the half-integer lattice.
fn ind2(arc: &Arc, m: &SlopeVector, n: usize) -> Result<i64> {
    let mut acc = Rational64::zero();
    let mut partial = Rational64::zero();
    for a in arc.start..arc.end {
        partial += m.0[a.rem_euclid(n as i64) as usize];
        acc += partial - Rational64::from_integer(partial.floor().to_integer());
    }
    let doubled = acc * Rational64::from_integer(2);
    if !doubled.is_integer() {
        return Err(Error::NotOnWall(format!(
            "ind of {} at this slope is not half-integral",
            arc
        )));
    }
    Ok(doubled.to_integer())
}

fn build_generator(
    kind: GenKind,
    arc: &Arc,
    m: &SlopeVector,
    half: Half,
    n: usize,
    cap: usize,
) -> Result<ShuffleElement> {
    if (arc.len() as usize) > cap {
        return Err(Error::VariableCap(format!(
            "arc {} exceeds the variable cap {}",
            arc, cap
        )));
    }
    if arc.is_empty() {
        return Ok(ShuffleElement::one(half, n));
    }
    let level = m.dot(&arc.dim_vector(n));
    if !level.is_integer() {
        return Err(Error::NotOnWall(format!("{} at slope {:?}", arc, m.0)));
    }
    // the displayed formulas carry m for the positive reading and -m for the
    // negative one
    let eff: SlopeVector = match half {
        Half::Positive => m.clone(),
        Half::Negative => m.neg(),
    };
    let content: Vec<usize> = arc.dim_vector(n).iter().map(|&x| x as usize).collect();
    let mut seen = vec![0usize; n];
    let mut pos_var: Vec<Var> = Vec::new();
    let mut pos_color: Vec<usize> = Vec::new();
    for a in arc.start..arc.end {
        let c = a.rem_euclid(n as i64) as usize;
        pos_var.push(slot_var(&content, c, seen[c]));
        pos_color.push(c);
        seen[c] += 1;
    }
    let len = arc.len() as usize;
    let mut exps: Vec<i64> = Vec::with_capacity(len);
    let mut partial = Rational64::zero();
    let mut prev_floor = 0i64;
    for a in arc.start..arc.end {
        partial += eff.0[a.rem_euclid(n as i64) as usize];
        let fl = partial.floor().to_integer();
        exps.push(match kind {
            GenKind::P => fl - prev_floor,
            GenKind::Q => prev_floor - fl,
        });
        prev_floor = fl;
    }
    let ind_doubled = ind2(arc, &eff, n)?;
    let prefactor = match kind {
        GenKind::P => Mono::from_pairs([(Var::T, -ind_doubled), (Var::Q, 2 * arc.len())]),
        GenKind::Q => Mono::var_pow2(Var::T, ind_doubled),
    };
    let mut kernel = FactoredFrac::from_poly(LaurentPoly::monomial(
        prefactor,
        num_rational::BigRational::from_integer(1.into()),
    ));
    for (a, &e) in exps.iter().enumerate() {
        kernel.mul_mono_pow(&Mono::var_pow(pos_var[a], e));
    }
    for a in 1..len {
        // P: 1/(1 - q2 z_a/z_{a-1}), q2 = q/t;  Q: 1/(1 - q1 z_{a-1}/z_a), q1 = q t
        let (ratio, param) = match kind {
            GenKind::P => (
                Mono::var(pos_var[a]).div(&Mono::var(pos_var[a - 1])),
                Mono::from_pairs([(Var::Q, 2), (Var::T, -2)]),
            ),
            GenKind::Q => (
                Mono::var(pos_var[a - 1]).div(&Mono::var(pos_var[a])),
                Mono::from_pairs([(Var::Q, 2), (Var::T, 2)]),
            ),
        };
        let mut den = LaurentPoly::one();
        den.add_term(
            param.mul(&ratio),
            -num_rational::BigRational::from_integer(1.into()),
        );
        kernel.div_factor(&den);
    }
    for a in 0..len {
        for b in (a + 1)..len {
            match kind {
                GenKind::P => mul_zeta_factored(
                    &mut kernel,
                    n,
                    pos_color[b],
                    pos_color[a],
                    &Mono::var(pos_var[b]),
                    &Mono::var(pos_var[a]),
                ),
                GenKind::Q => mul_zeta_factored(
                    &mut kernel,
                    n,
                    pos_color[a],
                    pos_color[b],
                    &Mono::var(pos_var[a]),
                    &Mono::var(pos_var[b]),
                ),
            };
        }
    }
    // plain orbit sum over within-color permutations
    let summands: Vec<FactoredFrac> = color_permutations(&content)
        .iter()
        .map(|perm| apply_perm_factored(&kernel, perm))
        .collect();
    let total = FactoredFrac::sum(&summands);
    let numerator = total.into_canonical_numerator(&content).ok_or_else(|| {
        Error::EvaluationPole(format!(
            "slope generator on {} has poles outside the canonical divisor",
            arc
        ))
    })?;
    ShuffleElement::new(half, n, content, numerator)
}

/// Slope generator of the first kind on the wall through `m`.
pub fn make_p(arc: &Arc, m: &SlopeVector, half: Half, n: usize) -> Result<ShuffleElement> {
    build_generator(GenKind::P, arc, m, half, n, DEFAULT_VARIABLE_CAP)
}

/// Slope generator of the second kind on the wall through `m`.
pub fn make_q(arc: &Arc, m: &SlopeVector, half: Half, n: usize) -> Result<ShuffleElement> {
    build_generator(GenKind::Q, arc, m, half, n, DEFAULT_VARIABLE_CAP)
}

fn color_permutations(content: &[usize]) -> Vec<Vec<(Var, Var)>> {
    let mut out: Vec<Vec<(Var, Var)>> = vec![Vec::new()];
    for (c, &k) in content.iter().enumerate() {
        let perms = permutations(k);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for base in &out {
            for p in &perms {
                let mut ext = base.clone();
                for (i, &pi) in p.iter().enumerate() {
                    if i != pi {
                        ext.push((slot_var(content, c, i), slot_var(content, c, pi)));
                    }
                }
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn permute(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == items.len() {
            out.push(items.clone());
            return;
        }
        for i in at..items.len() {
            items.swap(at, i);
            permute(items, at + 1, out);
            items.swap(at, i);
        }
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn rename_vars(p: &LaurentPoly, perm: &[(Var, Var)]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.terms() {
        let renamed = Mono::from_pairs(m.exps().iter().map(|(v, e)| {
            let w = perm
                .iter()
                .find(|(src, _)| src == v)
                .map(|(_, dst)| *dst)
                .unwrap_or(*v);
            (w, *e)
        }));
        out.add_term(renamed, c.clone());
    }
    out
}

fn apply_perm_factored(ff: &FactoredFrac, perm: &[(Var, Var)]) -> FactoredFrac {
    if perm.is_empty() {
        return ff.clone();
    }
    let mut out = FactoredFrac::from_poly(rename_vars(&ff.num, perm));
    for (f, &mult) in &ff.den {
        let rf = rename_vars(f, perm);
        for _ in 0..mult {
            out.div_factor(&rf);
        }
    }
    out
}

/// One tensor factor of a structural coproduct summand: symbols multiply
/// left to right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FactorSymbol {
    Gen { kind: GenKind, arc: Arc, half: Half },
    /// Cartan symbol φ_{±[i;j)}^{power}
    Cartan { arc: Arc, power: i64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoprodTerm {
    pub left: Vec<FactorSymbol>,
    pub right: Vec<FactorSymbol>,
}

/// The structural coproduct of a slope generator; empty-arc factors dropped.
pub fn coproduct_on_generator(kind: GenKind, arc: &Arc, half: Half) -> Vec<CoprodTerm> {
    let mut out = Vec::new();
    for a in arc.start..=arc.end {
        let head = Arc::new(arc.start, a);
        let tail = Arc::new(a, arc.end);
        let gen = |arc: Arc| FactorSymbol::Gen { kind, arc, half };
        let cartan = |arc: Arc, power: i64| FactorSymbol::Cartan { arc, power };
        let term = match (kind, half) {
            (GenKind::P, Half::Positive) => CoprodTerm {
                left: drop_empty(vec![gen(tail), cartan(head, 1)]),
                right: drop_empty(vec![gen(head)]),
            },
            (GenKind::Q, Half::Positive) => CoprodTerm {
                left: drop_empty(vec![gen(head), cartan(tail, 1)]),
                right: drop_empty(vec![gen(tail)]),
            },
            (GenKind::P, Half::Negative) => CoprodTerm {
                left: drop_empty(vec![gen(tail)]),
                right: drop_empty(vec![gen(head), cartan(tail, -1)]),
            },
            (GenKind::Q, Half::Negative) => CoprodTerm {
                left: drop_empty(vec![gen(head)]),
                right: drop_empty(vec![gen(tail), cartan(head, -1)]),
            },
        };
        out.push(term);
    }
    out
}

fn drop_empty(factors: Vec<FactorSymbol>) -> Vec<FactorSymbol> {
    factors
        .into_iter()
        .filter(|f| match f {
            FactorSymbol::Gen { arc, .. } => !arc.is_empty(),
            FactorSymbol::Cartan { arc, .. } => !arc.is_empty(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn rat64(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn zeta_distant_colors_trivial() {
        let x = Mono::var(Var::X(0));
        let y = Mono::var(Var::X(1));
        assert!(zeta_mono(4, 0, 2, &x, &y).is_one());
    }

    #[test]
    fn zeta_n2_has_both_brackets() {
        let x = Mono::var(Var::X(0));
        let y = Mono::var(Var::X(1));
        let z = zeta_mono(2, 0, 1, &x, &y);
        assert_eq!(z.denominator().num_terms(), 1);
        assert_eq!(z.numerator().num_terms(), 4);
    }

    #[test]
    fn product_unit() {
        let n = 2;
        let f = ShuffleElement::single(Half::Positive, n, 0, 3, &ExactScalar::one());
        let one = ShuffleElement::one(Half::Positive, n);
        assert!(shuffle_product(&f, &one).unwrap().equals(&f));
        assert!(shuffle_product(&one, &f).unwrap().equals(&f));
    }

    #[test]
    fn product_two_same_color() {
        // z^2 * z^0 = Sym[z1^2 z2^0 ζ(z1/z2)] over slot choices
        let n = 3;
        let f = ShuffleElement::single(Half::Positive, n, 0, 2, &ExactScalar::one());
        let g = ShuffleElement::single(Half::Positive, n, 0, 0, &ExactScalar::one());
        let p = shuffle_product(&f, &g).unwrap();
        assert_eq!(p.content, vec![2, 0, 0]);
        let content = vec![2usize, 0, 0];
        let z1 = Mono::var(slot_var(&content, 0, 0));
        let z2 = Mono::var(slot_var(&content, 0, 1));
        let mut hand = ExactScalar::zero();
        for (fa, gb) in [(z1.clone(), z2.clone()), (z2.clone(), z1.clone())] {
            let term = &ExactScalar::monomial(fa.pow(2)) * &zeta_mono(n, 0, 0, &fa, &gb);
            hand = &hand + &term;
        }
        assert_eq!(p.as_scalar(), hand);
    }

    #[test]
    fn product_preserves_wheel_and_symmetry() {
        let n = 2;
        let a = ShuffleElement::single(Half::Positive, n, 0, 1, &ExactScalar::one());
        let b = ShuffleElement::single(Half::Positive, n, 1, 0, &ExactScalar::one());
        let c = ShuffleElement::single(Half::Positive, n, 0, -1, &ExactScalar::one());
        let ab = shuffle_product(&a, &b).unwrap();
        let abc = shuffle_product(&ab, &c).unwrap();
        assert!(abc.is_symmetric());
        assert!(abc.check_wheel(), "wheel conditions fail on a product");
    }

    #[test]
    fn associativity_small() {
        let n = 2;
        let a = ShuffleElement::single(Half::Positive, n, 0, 2, &ExactScalar::one());
        let b = ShuffleElement::single(Half::Positive, n, 1, -1, &ExactScalar::one());
        let c = ShuffleElement::single(Half::Positive, n, 0, 0, &ExactScalar::one());
        let left = shuffle_product(&shuffle_product(&a, &b).unwrap(), &c).unwrap();
        let right = shuffle_product(&a, &shuffle_product(&b, &c).unwrap()).unwrap();
        assert!(left.equals(&right));
    }

    #[test]
    fn single_box_generator() {
        let n = 2;
        let m = SlopeVector::from_ints(&[3, 0]);
        let p = make_p(&Arc::new(0, 1), &m, Half::Positive, n).unwrap();
        assert_eq!(p.content, vec![1, 0]);
        let v = slot_var(&[1, 0], 0, 0);
        let expect = LaurentPoly::monomial(Mono::from_pairs([(v, 6), (Var::Q, 2)]), int(1));
        assert_eq!(p.numerator, expect);
        // ind on the full-cycle arc at slope (1/2, 1/2) is 1/2 (doubled: 1)
        let m = SlopeVector(vec![rat64(1, 2), rat64(1, 2)]);
        assert_eq!(super::ind2(&Arc::new(0, 2), &m, n).unwrap(), 1);
        // wall condition violated
        assert!(matches!(
            make_p(&Arc::new(0, 1), &m, Half::Positive, n),
            Err(Error::NotOnWall(_))
        ));
    }

    #[test]
    fn generators_pass_their_slope() {
        let n = 2;
        for (arc, m) in [
            (Arc::new(0, 1), SlopeVector::from_ints(&[0, 0])),
            (Arc::new(0, 1), SlopeVector::from_ints(&[1, 0])),
            (Arc::new(0, 2), SlopeVector(vec![rat64(1, 2), rat64(1, 2)])),
            (Arc::new(0, 3), SlopeVector::from_ints(&[1, 0])),
        ] {
            let p = make_p(&arc, &m, Half::Positive, n).unwrap();
            assert!(slope_leq_test(&p, &m), "P on {} fails its own slope", arc);
            assert!(p.check_wheel(), "P on {} violates wheels", arc);
            let q = make_q(&arc, &m, Half::Negative, n).unwrap();
            assert!(slope_leq_test(&q, &m), "Q on {} fails its own slope", arc);
            assert!(q.check_wheel(), "Q on {} violates wheels", arc);
        }
    }

    #[test]
    fn slope_of_single_variable() {
        let n = 2;
        for d in -1..=2i64 {
            let f = ShuffleElement::single(Half::Positive, n, 0, d, &ExactScalar::one());
            for m0 in -1..=2i64 {
                let m = SlopeVector::from_ints(&[m0, 0]);
                assert_eq!(slope_leq_test(&f, &m), m0 >= d, "d={} m0={}", d, m0);
            }
        }
        let one = ShuffleElement::one(Half::Positive, n);
        assert!(slope_leq_test(&one, &SlopeVector::from_ints(&[-5, 7])));
    }

    #[test]
    fn coproduct_shapes() {
        let terms = coproduct_on_generator(GenKind::P, &Arc::new(0, 1), Half::Positive);
        assert_eq!(terms.len(), 2);
        let terms = coproduct_on_generator(GenKind::P, &Arc::new(0, 2), Half::Positive);
        assert_eq!(terms.len(), 3);
        assert_eq!(
            terms[1].left,
            vec![
                FactorSymbol::Gen {
                    kind: GenKind::P,
                    arc: Arc::new(1, 2),
                    half: Half::Positive
                },
                FactorSymbol::Cartan {
                    arc: Arc::new(0, 1),
                    power: 1
                },
            ]
        );
    }

    #[test]
    fn variable_cap_enforced() {
        let n = 2;
        let f = ShuffleElement {
            half: Half::Positive,
            n,
            content: vec![2, 2],
            numerator: LaurentPoly::one(),
            coeff: ExactScalar::one(),
        };
        assert!(matches!(
            shuffle_product(&f, &f.clone()),
            Err(Error::VariableCap(_))
        ));
    }
}
