//! The graded commutative ring `H*(X₁ × JX₁ × Z)` for a genus-2 curve,
//! presented by seven even-degree generators and a terminating rewrite
//! system.
//!
//! Elements are [`RingClass`]es: finite sums of normal-form [`Monomial`]s with
//! [`CoefPoly`] coefficients. Every constructor and operation returns a
//! normalized value, so `==` is equality in the ring.

mod parse;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coef::{CoefPoly, Rational};

pub use parse::{parse_class, parse_class_with, ParseError, ParseErrorKind};

/// Real dimension of `X₁ × JX₁ × Z` (complex dimension 1 + 2 + 4).
pub const TOP_DEGREE: u32 = 14;

/// Real dimension of `JX₁ × Z`.
pub const JZ_TOP_DEGREE: u32 = 12;

/// `∫_{JX₁×Z} α³HΘ² = (∫_Z α³H)(∫_J Θ²) = 4 · 2`.
pub const ALPHA3_H_THETA2_INTEGRAL: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Point class of the curve `X₁`.
    F,
    /// Theta divisor on `JX₁`.
    Theta,
    /// `c₁` of the Poincaré bundle, in `H¹(X₁) ⊗ H¹(JX₁)`.
    Xi1,
    /// Generator of `H²(M_{X₁}(x))`.
    Alpha,
    /// Mixed part of `c₂` of the universal bundle, in `H¹(X₁) ⊗ H³(M)`.
    Xi2,
    /// Defined by `ξ₁ξ₂ = Λf`, in `H¹(JX₁) ⊗ H³(M)`.
    Lambda,
    /// Tautological class of the `P¹`-bundle `Z`.
    H,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::F,
        Generator::Theta,
        Generator::Xi1,
        Generator::Alpha,
        Generator::Xi2,
        Generator::Lambda,
        Generator::H,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    /// Cohomological degree. All generators are even, so the ring is
    /// commutative.
    pub const fn degree(self) -> u32 {
        match self {
            Generator::Xi2 | Generator::Lambda => 4,
            _ => 2,
        }
    }

    pub const fn ascii_name(self) -> &'static str {
        match self {
            Generator::F => "f",
            Generator::Theta => "Theta",
            Generator::Xi1 => "xi1",
            Generator::Alpha => "alpha",
            Generator::Xi2 => "xi2",
            Generator::Lambda => "Lambda",
            Generator::H => "H",
        }
    }

    pub const fn unicode_name(self) -> &'static str {
        match self {
            Generator::F => "f",
            Generator::Theta => "Θ",
            Generator::Xi1 => "ξ₁",
            Generator::Alpha => "α",
            Generator::Xi2 => "ξ₂",
            Generator::Lambda => "Λ",
            Generator::H => "H",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Some(match name {
            "f" => Generator::F,
            "Theta" | "Θ" => Generator::Theta,
            "xi1" | "ξ₁" | "ξ1" => Generator::Xi1,
            "alpha" | "α" => Generator::Alpha,
            "xi2" | "ξ₂" | "ξ2" => Generator::Xi2,
            "Lambda" | "Λ" => Generator::Lambda,
            "H" => Generator::H,
            _ => return None,
        })
    }
}

/// Exponent vector over `(f, Θ, ξ₁, α, ξ₂, Λ, H)`.
///
/// Ordered by total degree first, then lexicographically by exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial([u32; 7]);

impl Monomial {
    pub const fn one() -> Self {
        Monomial([0; 7])
    }

    pub const fn new(exps: [u32; 7]) -> Self {
        Monomial(exps)
    }

    pub fn generator(g: Generator) -> Self {
        Self::one().with(g, 1)
    }

    pub fn with(mut self, g: Generator, e: u32) -> Self {
        self.0[g.index()] = e;
        self
    }

    pub const fn exps(&self) -> [u32; 7] {
        self.0
    }

    pub const fn exp(&self, g: Generator) -> u32 {
        self.0[g.index()]
    }

    pub fn degree(&self) -> u32 {
        Generator::ALL
            .iter()
            .map(|g| g.degree() * self.exp(*g))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    /// `Λ²` and higher are kept symbolically but have no known value.
    pub fn is_opaque(&self) -> bool {
        self.exp(Generator::Lambda) >= 2
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0.iter()) {
            *o -= e;
        }
        Monomial(out)
    }

    /// True when no rewrite rule applies.
    pub fn is_normal(&self) -> bool {
        self.degree() <= TOP_DEGREE && rewrite::rules().iter().all(|r| !r.lhs.divides(self))
    }

    /// Factor list in the given generator order, `name` or `name^e`.
    fn factors(&self, order: &[Generator], unicode: bool) -> Vec<String> {
        order
            .iter()
            .filter(|g| self.exp(**g) > 0)
            .map(|g| {
                let name = if unicode {
                    g.unicode_name()
                } else {
                    g.ascii_name()
                };
                match self.exp(*g) {
                    1 => name.to_string(),
                    e if unicode => format!("{name}{}", superscript(e)),
                    e => format!("{name}^{e}"),
                }
            })
            .collect()
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(rhs.0.iter()) {
            *o = o.saturating_add(*e);
        }
        Monomial(out)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        f.write_str(&self.factors(&Generator::ALL, false).join("*"))
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("class still contains the fiber class f in term {0}")]
    ContainsFiberClass(Monomial),
    #[error("opaque monomial {0} (Lambda^2 or higher) cannot be integrated")]
    OpaqueMonomial(Monomial),
    #[error("non-integrable class: top-degree monomial {0} has nonzero coefficient")]
    NonIntegrable(Monomial),
    #[error("fiber integral of {0} leaves an H^1(X_1) factor")]
    UnpairedCurveClass(Monomial),
}

/// A normalized element of the ring.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RingClass {
    terms: BTreeMap<Monomial, CoefPoly>,
}

impl RingClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(CoefPoly::one())
    }

    pub fn scalar(c: CoefPoly) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(Monomial::generator(g), CoefPoly::one())
    }

    /// `coef · m`, normalized.
    pub fn term(m: Monomial, coef: CoefPoly) -> Self {
        Self::from_raw([(m, coef)])
    }

    /// Rewrites an arbitrary linear combination of monomials to normal form.
    pub fn from_raw<I: IntoIterator<Item = (Monomial, CoefPoly)>>(raw: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in raw {
            if c.is_zero() {
                continue;
            }
            for (nm, k) in rewrite::normal_form(&m).iter() {
                out.add_term(*nm, c.scale(k));
            }
        }
        out
    }

    /// Adds a term whose monomial is already in normal form.
    fn add_term(&mut self, m: Monomial, c: CoefPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoefPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CoefPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &CoefPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * k);
        }
        out
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale(k))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            if out.is_zero() {
                break;
            }
            out = &out * self;
        }
        out
    }

    /// Sum of the terms of total degree `k`.
    pub fn graded_component(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// `Some(k)` if every term has degree `k`; the zero class is homogeneous
    /// of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn has_opaque(&self) -> bool {
        self.terms.keys().any(Monomial::is_opaque)
    }

    /// Replaces every coefficient `c(p)` by `c(value)`.
    pub fn substitute_p(&self, value: &CoefPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.compose(value));
        }
        out
    }

    /// Pushforward along the curve factor `X₁`: keeps the coefficient of `f`
    /// and drops every `f`-free term. Lowers degree by 2.
    pub fn integrate_fiber_x1(&self) -> Result<Self, RingError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(Generator::F) == 0 {
                continue;
            }
            if m.exp(Generator::Xi1) > 0 || m.exp(Generator::Xi2) > 0 {
                return Err(RingError::UnpairedCurveClass(*m));
            }
            out.add_term(m.with(Generator::F, 0), c.clone());
        }
        Ok(out)
    }

    /// Restriction to `{y} × JX₁ × Z`: classes with an `H¹(X₁)` or `H²(X₁)`
    /// factor (`f`, `ξ₁`, `ξ₂`) vanish.
    pub fn restrict_to_point_x1(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| {
                    m.exp(Generator::F) == 0
                        && m.exp(Generator::Xi1) == 0
                        && m.exp(Generator::Xi2) == 0
                })
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Degree over `JX₁ × Z`: `8 ×` the coefficient of `α³HΘ²`.
    ///
    /// Terms below the top degree integrate to zero. Any other nonzero
    /// top-degree term is an error, as is any term still carrying `f`.
    pub fn integrate_top_jz(&self) -> Result<CoefPoly, RingError> {
        if let Some(m) = self.terms.keys().find(|m| m.exp(Generator::F) > 0) {
            return Err(RingError::ContainsFiberClass(*m));
        }
        let fundamental = fundamental_jz();
        let mut value = CoefPoly::zero();
        for (m, c) in &self.terms {
            if m.degree() != JZ_TOP_DEGREE {
                continue;
            }
            if *m == fundamental {
                value = c.scale(&Rational::from_integer(ALPHA3_H_THETA2_INTEGRAL.into()));
            } else if m.is_opaque() {
                return Err(RingError::OpaqueMonomial(*m));
            } else {
                return Err(RingError::NonIntegrable(*m));
            }
        }
        Ok(value)
    }

    pub fn render(&self, unicode: bool) -> String {
        render_class(self, unicode)
    }
}

/// `α³HΘ²`, the fundamental class of `JX₁ × Z` up to the factor 8.
pub fn fundamental_jz() -> Monomial {
    Monomial::one()
        .with(Generator::Alpha, 3)
        .with(Generator::H, 1)
        .with(Generator::Theta, 2)
}

const PRETTY_ORDER: [Generator; 7] = [
    Generator::Alpha,
    Generator::Xi1,
    Generator::Xi2,
    Generator::Lambda,
    Generator::H,
    Generator::Theta,
    Generator::F,
];

/// Splits a coefficient into a sign and a printable magnitude.
fn signed_coef(c: &CoefPoly) -> (bool, CoefPoly, bool) {
    let single = c.terms().count() == 1;
    let neg = single && c.terms().next().is_some_and(|(_, k)| k.is_negative());
    let mag = if neg { -c } else { c.clone() };
    (neg, mag, single)
}

fn join_terms(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

fn render_term(m: &Monomial, c: &CoefPoly, order: &[Generator], unicode: bool) -> (bool, String) {
    let sep = if unicode { "·" } else { "*" };
    let (neg, mag, single) = signed_coef(c);
    let mut factors = Vec::new();
    if !mag.is_one() || m.is_one() {
        let text = mag.render(unicode);
        if single {
            factors.push(text);
        } else {
            factors.push(format!("({text})"));
        }
    }
    factors.extend(m.factors(order, unicode));
    (neg, factors.join(sep))
}

fn render_class(a: &RingClass, unicode: bool) -> String {
    let parts = a
        .terms
        .iter()
        .map(|(m, c)| render_term(m, c, &PRETTY_ORDER, unicode))
        .collect();
    let s = join_terms(parts);
    if unicode {
        s.replace('-', "−")
    } else {
        s
    }
}

/// Canonical serialization: terms by (degree, exponent vector), factors in
/// generator order `f, Theta, xi1, alpha, xi2, Lambda, H`. The output parses
/// back to the same class.
impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .terms
            .iter()
            .map(|(m, c)| render_term(m, c, &Generator::ALL, false))
            .collect();
        f.write_str(&join_terms(parts))
    }
}

impl fmt::Debug for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingClass({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: Monomial,
    coef: CoefPoly,
}

impl Serialize for RingClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                monomial: *m,
                coef: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        Ok(RingClass::from_raw(
            terms.into_iter().map(|t| (t.monomial, t.coef)),
        ))
    }
}

impl<'a> Add<&'a RingClass> for &'a RingClass {
    type Output = RingClass;
    fn add(self, rhs: &'a RingClass) -> RingClass {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a RingClass> for &'a RingClass {
    type Output = RingClass;
    fn sub(self, rhs: &'a RingClass) -> RingClass {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &RingClass {
    type Output = RingClass;
    fn neg(self) -> RingClass {
        RingClass {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a RingClass> for &'a RingClass {
    type Output = RingClass;
    fn mul(self, rhs: &'a RingClass) -> RingClass {
        let mut out = RingClass::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = *ma * *mb;
                if m.degree() > TOP_DEGREE {
                    continue;
                }
                let c = ca * cb;
                for (nm, k) in rewrite::normal_form(&m).iter() {
                    out.add_term(*nm, c.scale(k));
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RingClass> for RingClass {
            type Output = RingClass;
            fn $m(self, rhs: RingClass) -> RingClass {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RingClass {
    type Output = RingClass;
    fn neg(self) -> RingClass {
        -&self
    }
}

impl From<CoefPoly> for RingClass {
    fn from(c: CoefPoly) -> Self {
        RingClass::scalar(c)
    }
}

impl From<Generator> for RingClass {
    fn from(g: Generator) -> Self {
        RingClass::generator(g)
    }
}

/// Every normal-form monomial of degree at most [`TOP_DEGREE`], in canonical
/// order.
pub fn normal_basis() -> &'static [Monomial] {
    &rewrite::tables().basis
}

#[cfg(test)]
mod tests {
    use super::Generator::*;
    use super::*;
    use crate::coef::{int, rat};

    fn g(x: Generator) -> RingClass {
        RingClass::generator(x)
    }

    fn c(n: i64, d: i64) -> CoefPoly {
        CoefPoly::constant(rat(n, d))
    }

    #[test]
    fn poincare_square() {
        let got = &g(Xi1) * &g(Xi1);
        let want = (&g(Theta) * &g(F)).scale(&c(-2, 1));
        assert_eq!(got, want);
    }

    #[test]
    fn vanishing_products() {
        assert!((&g(F) * &g(F)).is_zero());
        assert!((&g(Theta) * &g(Theta).pow(2)).is_zero());
        assert!((&g(Alpha) * &g(Lambda)).is_zero());
        assert!(g(Xi1).pow(3).is_zero());
        assert!(g(H).pow(4).is_zero());
        assert!(g(Alpha).pow(4).is_zero());
    }

    #[test]
    fn tautological_relation_powers() {
        let h2 = &g(Alpha) * &g(H) - g(Alpha).pow(2).scale(&c(1, 2));
        assert_eq!(g(H).pow(2), h2);
        let h3 = (&g(Alpha).pow(2) * &g(H)).scale(&c(1, 2)) - g(Alpha).pow(3).scale(&c(1, 2));
        assert_eq!(g(H).pow(3), h3);
    }

    #[test]
    fn empty_monomial_is_one() {
        assert_eq!(
            RingClass::term(Monomial::one(), CoefPoly::one()),
            RingClass::one()
        );
        assert_eq!(RingClass::one().to_string(), "1");
        assert_eq!(RingClass::zero().to_string(), "0");
    }

    #[test]
    fn graded_components() {
        let ch_l = RingClass::one() + g(Xi1) - &g(Theta) * &g(F);
        assert_eq!(ch_l.graded_component(2), g(Xi1));
        assert_eq!(ch_l.graded_component(4), -(&g(Theta) * &g(F)));
        assert!(RingClass::zero().graded_component(6).is_zero());
        let mut sum = RingClass::zero();
        for k in (0..=TOP_DEGREE).step_by(2) {
            sum = &sum + &ch_l.graded_component(k);
        }
        assert_eq!(sum, ch_l);
    }

    #[test]
    fn fiber_integration() {
        let p = CoefPoly::p();
        let four_p_minus_4 = &p.scale(&int(4)) - &CoefPoly::from_int(4);
        let x = g(F).scale(&four_p_minus_4)
            + (&(&g(Alpha) * &g(Theta)) * &g(F)).scale(&p)
            + g(Alpha).pow(3);
        let pushed = x.integrate_fiber_x1().unwrap();
        let want = RingClass::scalar(four_p_minus_4) + (&g(Alpha) * &g(Theta)).scale(&p);
        assert_eq!(pushed, want);
        assert!(g(Alpha).pow(3).integrate_fiber_x1().unwrap().is_zero());
        assert_eq!((-(&g(H) * &g(F))).integrate_fiber_x1().unwrap(), -g(H));
        let bad = RingClass {
            terms: [(Monomial::one().with(F, 1).with(Xi2, 1), CoefPoly::one())].into(),
        };
        assert!(matches!(
            bad.integrate_fiber_x1(),
            Err(RingError::UnpairedCurveClass(_))
        ));
    }

    #[test]
    fn point_restriction() {
        assert!(g(Xi1).restrict_to_point_x1().is_zero());
        assert_eq!(g(Theta).restrict_to_point_x1(), g(Theta));
        assert_eq!(g(Lambda).restrict_to_point_x1(), g(Lambda));
        let x = g(Alpha) + &g(H) * &g(F) + g(Xi2);
        assert_eq!(x.restrict_to_point_x1(), g(Alpha));
    }

    #[test]
    fn top_integration() {
        let top = RingClass::term(fundamental_jz(), CoefPoly::one());
        assert_eq!(top.integrate_top_jz().unwrap(), CoefPoly::from_int(8));
        let a3t2 = &g(Alpha).pow(3) * &g(Theta).pow(2);
        assert!((&a3t2 * &g(Alpha)).integrate_top_jz().unwrap().is_zero());
        assert!(RingClass::zero().integrate_top_jz().unwrap().is_zero());
        // lower-degree terms integrate to zero
        assert!(g(Theta).integrate_top_jz().unwrap().is_zero());
        let opaque = &(&g(Lambda).pow(2) * &g(Theta)) * &g(H);
        assert!(matches!(
            opaque.integrate_top_jz(),
            Err(RingError::OpaqueMonomial(_))
        ));
        let stray = &(&g(Alpha).pow(3) * &g(Theta).pow(2)) * &g(Xi1);
        assert!(matches!(
            stray.integrate_top_jz(),
            Err(RingError::NonIntegrable(_))
        ));
        let with_f = &g(F) * &g(Theta);
        assert!(matches!(
            with_f.integrate_top_jz(),
            Err(RingError::ContainsFiberClass(_))
        ));
    }

    #[test]
    fn canonical_rendering() {
        let x = (&g(Alpha).pow(3) * &g(F)).scale(&c(3, 12)) - (&g(Theta) * &g(F)).scale(&c(2, 1));
        assert_eq!(x.to_string(), "-2*f*Theta + 1/4*f*alpha^3");
        assert_eq!(x.render(true), "−2·Θ·f + 1/4·α³·f");
        let p = CoefPoly::p();
        let y = g(Alpha).scale(&(&p - &CoefPoly::one()));
        assert_eq!(y.to_string(), "(p - 1)*alpha");
    }

    #[test]
    fn degree_cap() {
        let top = RingClass::term(fundamental_jz(), CoefPoly::one()) * g(F);
        assert_eq!(top.homogeneous_degree(), Some(14));
        assert!((&top * &g(Theta)).is_zero());
    }

    #[test]
    fn substitution_of_p() {
        let p = CoefPoly::p();
        let x = g(Theta).scale(&(&p * &p));
        assert_eq!(
            x.substitute_p(&CoefPoly::from_int(3)),
            g(Theta).scale(&CoefPoly::from_int(9))
        );
    }
}
