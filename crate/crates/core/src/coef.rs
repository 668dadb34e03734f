//! Exact scalars: arbitrary-precision rationals and univariate polynomials in
//! the formal characteristic `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// True when `r` is stored in lowest terms with a positive denominator.
pub fn is_reduced(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// A polynomial in the formal parameter `p` with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so structural equality
/// is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CoefPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl CoefPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `p`.
    pub fn p() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(exp: u32, coef: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coef.is_zero() {
            coeffs.insert(exp, coef);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: u32, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// The value if this polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Horner evaluation at `at`.
    pub fn eval(&self, at: &Rational) -> Rational {
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for e in (0..=top).rev() {
            acc = acc * at + self.coeff(e);
        }
        acc
    }

    /// Replaces `p` by the polynomial `value`.
    pub fn compose(&self, value: &CoefPoly) -> CoefPoly {
        let Some(top) = self.degree() else {
            return Self::zero();
        };
        let mut acc = Self::zero();
        for e in (0..=top).rev() {
            acc = &(&acc * value) + &Self::constant(self.coeff(e));
        }
        acc
    }

    /// Euclidean division over the rationals. Returns `None` when `divisor`
    /// is zero.
    pub fn div_rem(&self, divisor: &CoefPoly) -> Option<(CoefPoly, CoefPoly)> {
        let dd = divisor.degree()?;
        let lead = divisor.coeff(dd);
        let mut quot = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = Self::monomial(rd - dd, rem.coeff(rd) / &lead);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some((quot, rem))
    }

    /// Quotient when `divisor` divides `self` exactly, otherwise `None`.
    pub fn div_exact(&self, divisor: &CoefPoly) -> Option<CoefPoly> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Debug for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoefPoly({self})")
    }
}

/// Canonical form: terms in decreasing exponent order, rationals as `a/b`,
/// e.g. `2/3*p^3 - 2/3*p`. Unit coefficients are omitted on non-constant
/// terms.
impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if *e == 1 {
                f.write_str("p")?;
            } else {
                write!(f, "p^{e}")?;
            }
        }
        Ok(())
    }
}

/// Rewrites ASCII math (`^k`, `*`, `-`) with superscripts, `·` and `−`.
pub fn prettify(ascii: &str) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::with_capacity(ascii.len());
    let mut chars = ascii.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '^' => {
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    out.push(SUP[d as usize]);
                    chars.next();
                }
            }
            '*' => out.push('·'),
            '-' => out.push('−'),
            _ => out.push(ch),
        }
    }
    out
}

impl CoefPoly {
    /// [`Display`](fmt::Display) form, optionally with Unicode symbols.
    pub fn render(&self, unicode: bool) -> String {
        if unicode {
            prettify(&self.to_string())
        } else {
            self.to_string()
        }
    }
}

impl From<Rational> for CoefPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for CoefPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CoefPoly> for &'a CoefPoly {
    type Output = CoefPoly;
    fn add(self, rhs: &'a CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a CoefPoly> for &'a CoefPoly {
    type Output = CoefPoly;
    fn sub(self, rhs: &'a CoefPoly) -> CoefPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a CoefPoly> for &'a CoefPoly {
    type Output = CoefPoly;
    fn mul(self, rhs: &'a CoefPoly) -> CoefPoly {
        let mut out = CoefPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        CoefPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl AddAssign<&CoefPoly> for CoefPoly {
    fn add_assign(&mut self, rhs: &CoefPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&CoefPoly> for CoefPoly {
    fn sub_assign(&mut self, rhs: &CoefPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CoefPoly> for CoefPoly {
            type Output = CoefPoly;
            fn $m(self, rhs: CoefPoly) -> CoefPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CoefPoly {
    type Output = CoefPoly;
    fn neg(self) -> CoefPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: u32,
    num: String,
    den: String,
}

/// Serialized as an array of `{"exp", "num", "den"}` objects in increasing
/// exponent order, integers as decimal strings.
impl Serialize for CoefPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .coeffs
            .iter()
            .map(|(e, c)| TermRepr {
                exp: *e,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut out = CoefPoly::zero();
        for t in terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            if out.coeffs.contains_key(&t.exp) {
                return Err(D::Error::custom(format!("duplicate exponent {}", t.exp)));
            }
            out.add_term(t.exp, Rational::new(num, den));
        }
        Ok(out)
    }
}

/// Rationals as decimal `a` or `a/b` strings.
pub mod rational_string {
    use super::Rational;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use serde::de::Error;
    use serde::Deserialize;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        let (num, den) = match s.split_once('/') {
            Some((n, m)) => (n.trim(), m.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(D::Error::custom)?;
        let den: BigInt = den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> CoefPoly {
        CoefPoly::p()
    }

    #[test]
    fn schoolbook_product() {
        // (p+1)(p-1): coefficients of the product are the convolution of
        // [1, 1] and [-1, 1].
        let a = &p() + &CoefPoly::one();
        let b = &p() - &CoefPoly::one();
        let conv = [(0u32, -1i64), (1, 1 - 1), (2, 1)];
        let expected = CoefPoly::from_terms(conv.iter().map(|(e, c)| (*e, int(*c))));
        assert_eq!(&a * &b, expected);
        assert_eq!((&a * &b).to_string(), "p^2 - 1");
    }

    #[test]
    fn scaled_product_keeps_exact_fractions() {
        let a = &p().pow(2) - &CoefPoly::one();
        let got = (&a * &p().pow(3)).scale(&rat(1, 24));
        assert_eq!(got.to_string(), "1/24*p^5 - 1/24*p^3");
    }

    #[test]
    fn additive_identity() {
        let a = CoefPoly::from_terms([(3, rat(2, 3)), (0, int(-4))]);
        assert_eq!(&a + &CoefPoly::zero(), a);
    }

    #[test]
    fn evaluation_examples() {
        let lb = (&p().pow(3) - &p()).scale(&rat(2, 3));
        assert_eq!(lb.eval(&int(3)), int(16));
        let degv = (&p() * &(&p().pow(2) + &CoefPoly::from_int(2))).scale(&rat(1, 3));
        assert_eq!(degv.eval(&int(5)), int(45));
        let a = CoefPoly::from_terms([(4, int(7)), (0, rat(-5, 2))]);
        assert_eq!(a.eval(&int(0)), rat(-5, 2));
        assert_eq!(CoefPoly::zero().eval(&int(9)), int(0));
    }

    #[test]
    fn exact_division() {
        let a = (&p().pow(5) - &p().pow(3)).scale(&rat(1, 24));
        let q = a.div_exact(&p().pow(2)).unwrap();
        assert_eq!(q.to_string(), "1/24*p^3 - 1/24*p");
        assert!(a.div_exact(&p().pow(4)).is_none());
        assert!(a.div_rem(&CoefPoly::zero()).is_none());
    }

    #[test]
    fn unicode_forms() {
        let x = &(&CoefPoly::p().pow(3) - &CoefPoly::p()).scale(&rat(2, 3));
        assert_eq!(x.render(true), "2/3·p³ − 2/3·p");
        assert_eq!(x.render(false), x.to_string());
        assert_eq!(prettify("alpha^12*H"), "alpha¹²·H");
    }

    #[test]
    fn display_forms() {
        assert_eq!(CoefPoly::zero().to_string(), "0");
        assert_eq!((-p()).to_string(), "-p");
        assert_eq!(CoefPoly::constant(rat(-3, 4)).to_string(), "-3/4");
        let a = CoefPoly::from_terms([(2, int(1)), (1, rat(-1, 2)), (0, int(2))]);
        assert_eq!(a.to_string(), "p^2 - 1/2*p + 2");
    }

    #[test]
    fn json_shape() {
        let a = CoefPoly::from_terms([(3, rat(2, 3)), (1, rat(-2, 3))]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(
            js,
            r#"[{"exp":1,"num":"-2","den":"3"},{"exp":3,"num":"2","den":"3"}]"#
        );
        let back: CoefPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CoefPoly>(r#"[{"exp":0,"num":"1","den":"0"}]"#).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = CoefPoly> {
        proptest::collection::vec((0u32..6, arb_rational()), 0..5).prop_map(CoefPoly::from_terms)
    }

    fn all_reduced(a: &CoefPoly) -> bool {
        a.terms().all(|(_, c)| is_reduced(c) && !c.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, CoefPoly::zero());
            prop_assert!(all_reduced(&(&a * &b)));
            prop_assert!(all_reduced(&(&a - &c)));
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), x in arb_rational()) {
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert!(is_reduced(&a.eval(&x)));
        }

        #[test]
        fn division_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
