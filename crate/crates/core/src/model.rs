//! The genus-2 pipeline: characters of the Poincaré bundle `L`, the Hecke
//! family `V`, and the two sheaves `F₀`, `F₁` on `JX₁ × Z`; the degeneracy
//! class `c₅(F₀ − F₁)`; and the lengths derived from it.
//!
//! Every stage is checked against a hand transcription of the expected
//! class (see [`reference`]) and fails with [`ModelError::Mismatch`] on any
//! difference. The pipeline is parametrized by the value of `p`: the formal
//! indeterminate gives closed forms, a constant gives the numbers for one
//! prime directly.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::chern::{
    ch_curve_bundle, ch_difference, ch_dual, ch_from_chern_classes, ch_line_bundle, ch_tensor,
    explicit_c5, newton_classes, porteous_delta, power_sums, todd_curve, ChernError, ChernKind,
    ChernVector, PowerSums,
};
use crate::coef::{int, rat, rational_string, CoefPoly, Rational};
use crate::ring::{fundamental_jz, parse_class_with, Generator, Monomial, RingClass, RingError};

pub const GENUS: i64 = 2;

/// Number of points of a canonical divisor, `2g − 2`.
pub const CANONICAL_DIVISOR_DEGREE: i64 = 2 * GENUS - 2;

/// `|JX[2]| = 2^{2g}`: the number of theta characteristics, and the degree
/// of the étale multiplication map onto the moduli space.
pub const ORDER_OF_2TORSION: i64 = 1 << (2 * GENUS);

/// `θ⁻¹` has degree `−1 = g − 1 + d`.
const THETA_INVERSE_OFFSET: i64 = -2;

/// Generic rank of the kernel of the evaluation map; `c_{5}` is
/// `Δ_{5,1}` for the `4p × (4p − 4)` map `F₁ → F₀` degenerating by one.
pub const PORTEOUS_A: usize = 5;
pub const PORTEOUS_B: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("{what}: expected {expected}, computed {got}")]
    Mismatch {
        what: &'static str,
        expected: String,
        got: String,
    },
    #[error("alpha * c5 is not a multiple of alpha^3*H*Theta^2: stray term {0}")]
    ImpureTopClass(Monomial),
    #[error("{0} is not exactly divisible by p^2")]
    Divisibility(String),
    #[error("p = {0} rejected: {1}")]
    PrimeRejected(i64, &'static str),
    #[error("{field} at p = {prime} is {value}, expected a positive integer")]
    NotPositiveInteger {
        field: &'static str,
        prime: i64,
        value: String,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Chern(#[from] ChernError),
}

fn check(what: &'static str, expected: &RingClass, got: &RingClass) -> Result<(), ModelError> {
    if expected == got {
        Ok(())
    } else {
        Err(ModelError::Mismatch {
            what,
            expected: expected.to_string(),
            got: got.to_string(),
        })
    }
}

fn check_poly(what: &'static str, expected: &CoefPoly, got: &CoefPoly) -> Result<(), ModelError> {
    if expected == got {
        Ok(())
    } else {
        Err(ModelError::Mismatch {
            what,
            expected: expected.to_string(),
            got: got.to_string(),
        })
    }
}

/// Expected classes, written out by hand in the expression grammar. They are
/// parsed with the pipeline's value of `p`.
pub mod reference {
    use super::*;

    fn parse(text: &str, p: &CoefPoly) -> RingClass {
        parse_class_with(text, p).expect("reference expressions are well formed")
    }

    pub fn ch_l(p: &CoefPoly) -> RingClass {
        parse("1 + xi1 - Theta*f", p)
    }

    pub fn ch_v(p: &CoefPoly) -> RingClass {
        parse(
            "2 + alpha + (-xi2 - H*f) + 1/12*(-alpha^3 - 6*alpha*H*f) \
             + 1/12*(alpha^3*f - alpha^2*H*f)",
            p,
        )
    }

    /// `ch(V* ⊗ L* ⊗ π*(F_*(θ⁻¹) ⊗ ω))·td(X₁)`.
    pub fn twisted_product(p: &CoefPoly) -> RingClass {
        parse(
            "2*p + ((4*p - 4)*f - p*alpha - 2*p*xi1) \
             + (p*alpha*xi1 - 2*p*Theta*f - (2*p - 2)*alpha*f - p*xi2 - p*H*f) \
             + (1/12*p*alpha^3 + 1/2*p*alpha*H*f + p*Lambda*f + p*alpha*Theta*f) \
             + (1/12*(3*p - 2)*alpha^3*f - 1/12*p*alpha^3*xi1 - 1/12*p*alpha^2*H*f) \
             + (-1/12*p*alpha^3*Theta*f)",
            p,
        )
    }

    pub fn ch_f1(p: &CoefPoly) -> RingClass {
        parse(
            "4*p - 4 + (-(2*p - 2)*alpha - 2*p*Theta - p*H) \
             + (1/2*p*alpha*H + p*Lambda + p*alpha*Theta) \
             + (1/12*(3*p - 2)*alpha^3 - 1/12*p*alpha^2*H) + (-1/12*p*alpha^3*Theta)",
            p,
        )
    }

    pub fn ch_f0(p: &CoefPoly) -> RingClass {
        parse("4*p - 2*p*alpha + 1/6*p*alpha^3", p)
    }

    /// `ch(F₀) − ch(F₁)`. The `α³` coefficient `(2 − p)/12` is forced by the
    /// two classes above; it never reaches `α·c₅` because `α⁴ = 0`.
    pub fn ch_difference(p: &CoefPoly) -> RingClass {
        parse(
            "4 + (2*p*Theta - 2*alpha + p*H) + (-1/2*p*alpha*H - p*Lambda - p*alpha*Theta) \
             + (1/12*(2 - p)*alpha^3 + 1/12*p*alpha^2*H) + 1/12*p*alpha^3*Theta",
            p,
        )
    }

    /// `p₁ … p₅` of `F₀ − F₁`.
    pub fn power_sums(p: &CoefPoly) -> [RingClass; 5] {
        [
            parse("2*p*Theta - 2*alpha + p*H", p),
            parse("-p*(alpha*H + 2*Lambda + 2*alpha*Theta)", p),
            parse("1/2*((2 - p)*alpha^3 + p*alpha^2*H)", p),
            parse("2*p*alpha^3*Theta", p),
            parse("0", p),
        ]
    }

    pub fn alpha_c5(p: &CoefPoly) -> RingClass {
        parse("1/6*p^3*(p^2 - 1)*alpha^3*H*Theta^2", p)
    }

    /// `H³·Θ²/2`, the pullback of a point of `JX₁ × M_{X₁}`.
    pub fn point_preimage(p: &CoefPoly) -> RingClass {
        parse("1/4*alpha^2*H*Theta^2 - 1/4*alpha^3*Theta^2", p)
    }
}

/// Every intermediate class of one pipeline run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelClasses {
    pub ch_l: ChernVector,
    pub ch_v: ChernVector,
    pub twisted_product: ChernVector,
    pub ch_f1: ChernVector,
    pub ch_f0: ChernVector,
    pub ch_diff: ChernVector,
    pub power_sums: PowerSums,
    pub total_chern: ChernVector,
    pub c5: RingClass,
    pub alpha_c5: RingClass,
    pub lambda: CoefPoly,
}

/// Output of the polarization check on `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeReport {
    /// `ch(V ⊗ π*N)·td(X₁)` through degree 4.
    pub low_degree_series: RingClass,
    /// Degree-2 part of the pushforward to `Z`, i.e. `c₁` of the determinant
    /// of cohomology.
    pub pushed_c1: RingClass,
    /// `c₁(φ*O(1))`, the negative of the above.
    pub polarization: RingClass,
}

/// The pipeline at a fixed value of `p`.
#[derive(Debug, Clone)]
pub struct Model {
    p: CoefPoly,
}

impl Model {
    /// `p` as a formal parameter.
    pub fn symbolic() -> Self {
        Self { p: CoefPoly::p() }
    }

    /// `p` substituted by an integer before any computation.
    pub fn at(p: i64) -> Self {
        Self {
            p: CoefPoly::from_int(p),
        }
    }

    pub fn p(&self) -> &CoefPoly {
        &self.p
    }

    fn class(&self, g: Generator) -> RingClass {
        RingClass::generator(g)
    }

    /// `ch(L) = exp(ξ₁)`.
    pub fn build_ch_l(&self) -> Result<ChernVector, ModelError> {
        let ch = ch_line_bundle(&self.class(Generator::Xi1))?;
        check("ch(L)", &reference::ch_l(&self.p), &ch.total())?;
        Ok(ch)
    }

    /// `ch(V)` from rank 2, `c₁ = α`, `c₂ = α²/2 + ξ₂ + Hf`.
    pub fn build_ch_v(&self) -> Result<ChernVector, ModelError> {
        let alpha = self.class(Generator::Alpha);
        let c2 = parse_class_with("1/2*alpha^2 + xi2 + H*f", &self.p).expect("static expression");
        let ch = ch_from_chern_classes(CoefPoly::from_int(2), &[alpha, c2])?;
        check("ch(V)", &reference::ch_v(&self.p), &ch.total())?;
        Ok(ch)
    }

    /// `ch(π*(F_*(θ⁻¹) ⊗ ω))·td(X₁)`: rank `p`, degree
    /// `p(g−1) + d + p(2g−2)` with `d = −2`.
    pub fn twist_factor(&self) -> ChernVector {
        let p = &self.p;
        let degree = &p.scale(&int(GENUS - 1 + CANONICAL_DIVISOR_DEGREE))
            + &CoefPoly::from_int(THETA_INVERSE_OFFSET);
        ch_tensor(&ch_curve_bundle(p.clone(), degree), &todd_curve(GENUS))
            .expect("both factors are characters")
    }

    /// `ch(V* ⊗ L* ⊗ π*(F_*(θ⁻¹) ⊗ ω))·td(X₁)` on `X₁ × JX₁ × Z`.
    pub fn build_twisted_product(&self) -> Result<ChernVector, ModelError> {
        let dual_vl = ch_tensor(
            &ch_dual(&self.build_ch_v()?)?,
            &ch_dual(&self.build_ch_l()?)?,
        )?;
        let prod = ch_tensor(&dual_vl, &self.twist_factor())?;
        check(
            "ch(V* x L* x F_*(theta^-1) x omega) td",
            &reference::twisted_product(&self.p),
            &prod.total(),
        )?;
        Ok(prod)
    }

    /// `ch(F₁)` by Grothendieck–Riemann–Roch along `q: X₁ × JX₁ × Z → JX₁ × Z`.
    pub fn build_ch_f1(&self) -> Result<ChernVector, ModelError> {
        let pushed = self.build_twisted_product()?.total().integrate_fiber_x1()?;
        let rank = pushed.graded_component(0).coeff(&Monomial::one());
        check_poly(
            "rk F1",
            &(&self.p.scale(&int(4)) - &CoefPoly::from_int(4)),
            &rank,
        )?;
        let ch = ChernVector::from_class(ChernKind::Character, rank, &pushed)?;
        check("ch(F1)", &reference::ch_f1(&self.p), &ch.total())?;
        Ok(ch)
    }

    /// `ch(F₀)`: `p` copies of `L* ⊗ V*` restricted to each of the
    /// `2g − 2` points of a canonical divisor.
    pub fn build_ch_f0(&self) -> Result<ChernVector, ModelError> {
        let dual_vl = ch_tensor(
            &ch_dual(&self.build_ch_v()?)?,
            &ch_dual(&self.build_ch_l()?)?,
        )?;
        let restricted = dual_vl.total().restrict_to_point_x1();
        let copies = self.p.scale(&int(CANONICAL_DIVISOR_DEGREE));
        let total = restricted.scale(&copies);
        let rank = &dual_vl.rank().clone() * &copies;
        check_poly("rk F0", &self.p.scale(&int(4)), &rank)?;
        let ch = ChernVector::from_class(ChernKind::Character, rank, &total)?;
        check("ch(F0)", &reference::ch_f0(&self.p), &ch.total())?;
        Ok(ch)
    }

    /// Runs the whole pipeline, checking every stage.
    pub fn classes(&self) -> Result<ModelClasses, ModelError> {
        let ch_l = self.build_ch_l()?;
        let ch_v = self.build_ch_v()?;
        let twisted_product = self.build_twisted_product()?;
        let ch_f1 = self.build_ch_f1()?;
        let ch_f0 = self.build_ch_f0()?;

        let ch_diff = ch_difference(&ch_f0, &ch_f1)?;
        check(
            "ch(F0 - F1)",
            &reference::ch_difference(&self.p),
            &ch_diff.total(),
        )?;
        let ps = power_sums(&ch_f0, &ch_f1)?;
        let expected_ps = reference::power_sums(&self.p);
        for (n, want) in expected_ps.iter().enumerate() {
            check(POWER_SUM_NAMES[n], want, ps.get(n + 1))?;
        }

        let total_chern = newton_classes(&ps, ch_diff.rank().clone());
        let c5 = porteous_delta(&total_chern, PORTEOUS_A, PORTEOUS_B)?;
        check("Newton c5 vs closed form", &explicit_c5(ps.as_slice()), &c5)?;
        check("Delta_{5,1} vs c5", total_chern.component(5), &c5)?;

        let (alpha_c5, lambda) = self.alpha_c5_and_lambda(&c5)?;
        Ok(ModelClasses {
            ch_l,
            ch_v,
            twisted_product,
            ch_f1,
            ch_f0,
            ch_diff,
            power_sums: ps,
            total_chern,
            c5,
            alpha_c5,
            lambda,
        })
    }

    /// `c₅(F₀ − F₁)`, the class of the degeneracy locus in `JX₁ × Z`.
    pub fn compute_c5(&self) -> Result<RingClass, ModelError> {
        Ok(self.classes()?.c5)
    }

    /// `α·c₅` and `λ = 4·(coefficient of α³HΘ²)`. Fails if any other
    /// monomial survives.
    pub fn alpha_c5_and_lambda(&self, c5: &RingClass) -> Result<(RingClass, CoefPoly), ModelError> {
        let alpha_c5 = &self.class(Generator::Alpha) * c5;
        let top = fundamental_jz();
        if let Some((m, _)) = alpha_c5.terms().find(|(m, _)| **m != top) {
            return Err(ModelError::ImpureTopClass(*m));
        }
        let coefficient = alpha_c5.coeff(&top);
        let lambda = coefficient.scale(&int(4));

        // Same number by integration: λ = ∫α·c₅ / ∫α·[pt].
        let alpha_pt = &self.class(Generator::Alpha) * &self.point_preimage_class();
        let ratio = alpha_c5
            .integrate_top_jz()?
            .div_exact(&alpha_pt.integrate_top_jz()?)
            .expect("the point class integrates to a nonzero constant");
        check_poly("lambda by integration", &lambda, &ratio)?;
        check("alpha*c5", &reference::alpha_c5(&self.p), &alpha_c5)?;
        Ok((alpha_c5, lambda))
    }

    pub fn compute_alpha_c5_and_lambda(&self) -> Result<(RingClass, CoefPoly), ModelError> {
        let c = self.classes()?;
        Ok((c.alpha_c5, c.lambda))
    }

    /// `H³·Θ²/2`: the class of a point of `JX₁` (`Θ²/2`) times the
    /// pullback of a point of `P³` (`H³`).
    pub fn point_preimage_class(&self) -> RingClass {
        let h3 = self.class(Generator::H).pow(3);
        &h3 * &self
            .class(Generator::Theta)
            .pow(2)
            .scale_rational(&rat(1, 2))
    }

    /// Pushes `ch(V ⊗ π*N)·td(X₁)` with `deg N = 1` to `Z` and reads off
    /// `c₁` of the (inverse) determinant line bundle.
    pub fn verify_hecke_polarization(&self) -> Result<HeckeReport, ModelError> {
        let n = ch_line_bundle(&self.class(Generator::F))?;
        let series = ch_tensor(&ch_tensor(&self.build_ch_v()?, &n)?, &todd_curve(GENUS))?;
        let low: RingClass = (0..=2).fold(RingClass::zero(), |acc, k| &acc + series.component(k));
        let expected_low = parse_class_with("2 + alpha + (-xi2 - H*f)", &self.p).expect("static");
        check("ch(V x N) td, low degrees", &expected_low, &low)?;
        let pushed = series.total().integrate_fiber_x1()?;
        let pushed_c1 = pushed.graded_component(2);
        let polarization = -&pushed_c1;
        check("c1(phi* O(1))", &self.class(Generator::H), &polarization)?;
        Ok(HeckeReport {
            low_degree_series: low,
            pushed_c1,
            polarization,
        })
    }
}

const POWER_SUM_NAMES: [&str; 5] = ["p1", "p2", "p3", "p4", "p5"];

/// Lengths as polynomials in `p` (or as constants, after substitution).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Length of the preimage of `D` in `JX₁ × M_{X₁}`.
    pub lambda: CoefPoly,
    #[serde(rename = "l_D")]
    pub l_d: CoefPoly,
    #[serde(rename = "l_Q")]
    pub l_q: CoefPoly,
    #[serde(rename = "l_Q0")]
    pub l_q0: CoefPoly,
    #[serde(rename = "l_B")]
    pub l_b: CoefPoly,
    #[serde(rename = "l_B_theta")]
    pub l_b_theta: CoefPoly,
    #[serde(rename = "deg_V")]
    pub deg_v: CoefPoly,
}

impl Counts {
    /// Derives every length from `λ`, checking the counting relations.
    pub fn from_lambda(lambda: CoefPoly, p: &CoefPoly) -> Result<Self, ModelError> {
        let sixteen = int(ORDER_OF_2TORSION);
        let p2 = p.pow(2);
        let l_d = lambda.scale(&(Rational::one() / &sixteen));
        let l_q = l_d.clone();
        let l_b = l_q
            .scale(&sixteen)
            .div_exact(&p2)
            .ok_or_else(|| ModelError::Divisibility(l_q.scale(&sixteen).to_string()))?;
        let l_b_theta = l_b.scale(&(Rational::one() / &sixteen));
        let l_q0 = l_q
            .div_exact(&p2)
            .ok_or_else(|| ModelError::Divisibility(l_q.to_string()))?;
        let deg_v = &p.pow(3) - &l_b;
        let counts = Counts {
            lambda,
            l_d,
            l_q,
            l_q0,
            l_b,
            l_b_theta,
            deg_v,
        };
        counts.check_relations(p)?;
        Ok(counts)
    }

    fn check_relations(&self, p: &CoefPoly) -> Result<(), ModelError> {
        let sixteen = CoefPoly::from_int(ORDER_OF_2TORSION);
        let p2 = p.pow(2);
        check_poly("lambda = 16 l(D)", &self.lambda, &(&sixteen * &self.l_d))?;
        check_poly("l(Q) = l(D)", &self.l_d, &self.l_q)?;
        check_poly(
            "p^2 l(B) = 16 l(Q)",
            &(&sixteen * &self.l_q),
            &(&p2 * &self.l_b),
        )?;
        check_poly(
            "l(B) = 16 l(B_theta)",
            &self.l_b,
            &(&sixteen * &self.l_b_theta),
        )?;
        check_poly("l(Q) = p^2 l(Q_0)", &self.l_q, &(&p2 * &self.l_q0))?;
        check_poly("deg V + l(B) = p^3", &p.pow(3), &(&self.deg_v + &self.l_b))?;
        Ok(())
    }

    /// Evaluates every field at `p`, requiring positive integers.
    pub fn evaluate(&self, prime: i64) -> Result<CountValues, ModelError> {
        let at = int(prime);
        let field = |name: &'static str, c: &CoefPoly| -> Result<Rational, ModelError> {
            let v = c.eval(&at);
            if v.is_integer() && v.is_positive() {
                Ok(v)
            } else {
                Err(ModelError::NotPositiveInteger {
                    field: name,
                    prime,
                    value: v.to_string(),
                })
            }
        };
        Ok(CountValues {
            lambda: field("lambda", &self.lambda)?,
            l_d: field("l_D", &self.l_d)?,
            l_q: field("l_Q", &self.l_q)?,
            l_q0: field("l_Q0", &self.l_q0)?,
            l_b: field("l_B", &self.l_b)?,
            l_b_theta: field("l_B_theta", &self.l_b_theta)?,
            deg_v: field("deg_V", &self.deg_v)?,
        })
    }
}

/// [`Counts`] at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountValues {
    #[serde(with = "rational_string")]
    pub lambda: Rational,
    #[serde(rename = "l_D", with = "rational_string")]
    pub l_d: Rational,
    #[serde(rename = "l_Q", with = "rational_string")]
    pub l_q: Rational,
    #[serde(rename = "l_Q0", with = "rational_string")]
    pub l_q0: Rational,
    #[serde(rename = "l_B", with = "rational_string")]
    pub l_b: Rational,
    #[serde(rename = "l_B_theta", with = "rational_string")]
    pub l_b_theta: Rational,
    #[serde(rename = "deg_V", with = "rational_string")]
    pub deg_v: Rational,
}

/// Closed forms plus per-prime evaluations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(flatten)]
    pub counts: Counts,
    pub evaluations: BTreeMap<i64, CountValues>,
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Rejects anything but odd primes.
pub fn validate_prime(p: i64) -> Result<(), ModelError> {
    if p <= 2 {
        return Err(ModelError::PrimeRejected(
            p,
            "the count assumes p > 2 (odd characteristic)",
        ));
    }
    if !is_prime(p) {
        return Err(ModelError::PrimeRejected(p, "not a prime"));
    }
    Ok(())
}

/// Closed forms from the symbolic pipeline, evaluated at each prime.
pub fn derive_counts(primes: &[i64]) -> Result<CountReport, ModelError> {
    for p in primes {
        validate_prime(*p)?;
    }
    let model = Model::symbolic();
    let (_, lambda) = model.compute_alpha_c5_and_lambda()?;
    let counts = Counts::from_lambda(lambda, model.p())?;
    let evaluations = primes
        .iter()
        .map(|p| counts.evaluate(*p).map(|v| (*p, v)))
        .collect::<Result<_, _>>()?;
    Ok(CountReport {
        counts,
        evaluations,
    })
}

/// The same numbers with `p` substituted before the pipeline runs.
pub fn derive_counts_substituted(prime: i64) -> Result<CountValues, ModelError> {
    validate_prime(prime)?;
    let model = Model::at(prime);
    let (_, lambda) = model.compute_alpha_c5_and_lambda()?;
    Counts::from_lambda(lambda, model.p())?.evaluate(prime)
}
