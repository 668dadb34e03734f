//! Chern characters and Chern classes over the ring: duals, tensor products,
//! line-bundle exponentials, the Todd class of a curve, power sums, Newton's
//! identities and Porteous determinants.

use num_traits::{One, Zero};

use crate::coef::{int, rat, CoefPoly, Rational};
use crate::ring::{Generator, RingClass, TOP_DEGREE};

/// Highest component index kept; `2 * MAX_INDEX` is the top degree.
pub const MAX_INDEX: usize = (TOP_DEGREE / 2) as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChernKind {
    /// `(ch₀, ch₁, …)` with `ch₀ = rank`.
    Character,
    /// `(1, c₁, c₂, …)`.
    TotalClass,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChernError {
    #[error("expected a {expected:?} vector, got {got:?}")]
    KindMismatch { expected: ChernKind, got: ChernKind },
    #[error("component {index} must be homogeneous of degree {}", 2 * index)]
    NotHomogeneous { index: usize },
    #[error("component 0 must be {expected}, got {got}")]
    BadLeadingTerm { expected: String, got: String },
    #[error("inconsistent relations: {0}")]
    Inconsistent(String),
}

/// Characteristic classes of a (virtual) bundle, truncated at index 7.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChernVector {
    kind: ChernKind,
    rank: CoefPoly,
    components: Vec<RingClass>,
}

impl ChernVector {
    /// Validates and pads `components` to `MAX_INDEX + 1` entries.
    pub fn new(
        kind: ChernKind,
        rank: CoefPoly,
        mut components: Vec<RingClass>,
    ) -> Result<Self, ChernError> {
        components.truncate(MAX_INDEX + 1);
        components.resize(MAX_INDEX + 1, RingClass::zero());
        for (n, c) in components.iter().enumerate() {
            if !c.is_homogeneous_of(2 * n as u32) {
                return Err(ChernError::NotHomogeneous { index: n });
            }
        }
        let expected = match kind {
            ChernKind::Character => RingClass::scalar(rank.clone()),
            ChernKind::TotalClass => RingClass::one(),
        };
        if components[0] != expected {
            return Err(ChernError::BadLeadingTerm {
                expected: expected.to_string(),
                got: components[0].to_string(),
            });
        }
        Ok(Self {
            kind,
            rank,
            components,
        })
    }

    /// Splits a mixed-degree class into graded components.
    pub fn from_class(
        kind: ChernKind,
        rank: CoefPoly,
        total: &RingClass,
    ) -> Result<Self, ChernError> {
        let comps = (0..=MAX_INDEX)
            .map(|n| total.graded_component(2 * n as u32))
            .collect();
        Self::new(kind, rank, comps)
    }

    pub fn kind(&self) -> ChernKind {
        self.kind
    }

    pub fn rank(&self) -> &CoefPoly {
        &self.rank
    }

    pub fn component(&self, n: usize) -> &RingClass {
        &self.components[n]
    }

    pub fn components(&self) -> &[RingClass] {
        &self.components
    }

    /// Sum of all components.
    pub fn total(&self) -> RingClass {
        self.components
            .iter()
            .fold(RingClass::zero(), |acc, c| &acc + c)
    }

    /// Constant series `rank`.
    pub fn trivial(rank: CoefPoly) -> Self {
        let mut comps = vec![RingClass::zero(); MAX_INDEX + 1];
        comps[0] = RingClass::scalar(rank.clone());
        Self {
            kind: ChernKind::Character,
            rank,
            components: comps,
        }
    }

    fn expect(&self, kind: ChernKind) -> Result<(), ChernError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(ChernError::KindMismatch {
                expected: kind,
                got: self.kind,
            })
        }
    }

    pub fn substitute_p(&self, value: &CoefPoly) -> Self {
        Self {
            kind: self.kind,
            rank: self.rank.compose(value),
            components: self
                .components
                .iter()
                .map(|c| c.substitute_p(value))
                .collect(),
        }
    }
}

/// Minimal commutative-algebra surface needed by Newton's identities and
/// determinants, so the same code runs on ring classes and plain scalars.
pub trait Algebra: Clone + PartialEq {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
}

impl Algebra for RingClass {
    fn zero_elem() -> Self {
        RingClass::zero()
    }
    fn one_elem() -> Self {
        RingClass::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &Rational) -> Self {
        self.scale_rational(k)
    }
}

impl Algebra for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
}

/// Elementary symmetric functions `c₀ = 1, c₁, …, c_N` from power sums
/// `p₁, …, p_N`, via `n·cₙ = Σᵢ (−1)^{i−1} c_{n−i} pᵢ`.
pub fn newton_elementary<T: Algebra>(power_sums: &[T]) -> Vec<T> {
    let mut c = vec![T::one_elem()];
    for n in 1..=power_sums.len() {
        let mut acc = T::zero_elem();
        for i in 1..=n {
            let term = c[n - i].mul(&power_sums[i - 1]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        c.push(acc.scale(&rat(1, n as i64)));
    }
    c
}

/// Inverse direction: power sums `p₁, …, p_N` from `c₀ = 1, c₁, …, c_N`.
pub fn newton_power_sums<T: Algebra>(classes: &[T]) -> Vec<T> {
    let n_max = classes.len().saturating_sub(1);
    let mut p: Vec<T> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        // p_n = Σ_{i=1}^{n-1} (−1)^{i−1} c_i p_{n−i} + (−1)^{n−1} n c_n
        let mut acc = T::zero_elem();
        for i in 1..n {
            let term = classes[i].mul(&p[n - i - 1]);
            acc = if i % 2 == 1 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        let last = classes[n].scale(&int(n as i64));
        acc = if n % 2 == 1 {
            acc.add(&last)
        } else {
            acc.sub(&last)
        };
        p.push(acc);
    }
    p
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<T: Algebra>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one_elem(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = T::zero_elem();
            for j in 0..n {
                if m[0][j] == T::zero_elem() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&determinant(&minor));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// `exp(c₁)` truncated at the top degree.
pub fn ch_line_bundle(c1: &RingClass) -> Result<ChernVector, ChernError> {
    if !c1.is_homogeneous_of(2) {
        return Err(ChernError::NotHomogeneous { index: 1 });
    }
    let mut comps = Vec::with_capacity(MAX_INDEX + 1);
    let mut power = RingClass::one();
    for n in 0..=MAX_INDEX {
        comps.push(power.scale_rational(&(Rational::one() / factorial(n))));
        power = &power * c1;
    }
    ChernVector::new(ChernKind::Character, CoefPoly::one(), comps)
}

/// `chₙ ↦ (−1)ⁿ chₙ`.
pub fn ch_dual(a: &ChernVector) -> Result<ChernVector, ChernError> {
    a.expect(ChernKind::Character)?;
    let comps = a
        .components
        .iter()
        .enumerate()
        .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
        .collect();
    Ok(ChernVector {
        kind: ChernKind::Character,
        rank: a.rank.clone(),
        components: comps,
    })
}

/// Graded (Cauchy) product of two series. Also used for Todd factors.
pub fn ch_tensor(a: &ChernVector, b: &ChernVector) -> Result<ChernVector, ChernError> {
    a.expect(ChernKind::Character)?;
    b.expect(ChernKind::Character)?;
    let comps = (0..=MAX_INDEX)
        .map(|n| {
            (0..=n).fold(RingClass::zero(), |acc, i| {
                &acc + &(&a.components[i] * &b.components[n - i])
            })
        })
        .collect();
    Ok(ChernVector {
        kind: ChernKind::Character,
        rank: &a.rank * &b.rank,
        components: comps,
    })
}

/// `ch(a) − ch(b)` for the virtual bundle `a − b`.
pub fn ch_difference(a: &ChernVector, b: &ChernVector) -> Result<ChernVector, ChernError> {
    a.expect(ChernKind::Character)?;
    b.expect(ChernKind::Character)?;
    Ok(ChernVector {
        kind: ChernKind::Character,
        rank: &a.rank - &b.rank,
        components: a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x - y)
            .collect(),
    })
}

/// `td(X₁) = 1 − (g−1)f` for a curve of genus `g`.
pub fn todd_curve(genus: i64) -> ChernVector {
    let mut comps = vec![RingClass::one()];
    comps.push(RingClass::generator(Generator::F).scale_rational(&int(1 - genus)));
    ChernVector::new(ChernKind::Character, CoefPoly::one(), comps)
        .expect("Todd class of a curve is well formed")
}

/// Character of a bundle pulled back from the curve: `rank + degree·f`.
pub fn ch_curve_bundle(rank: CoefPoly, degree: CoefPoly) -> ChernVector {
    let comps = vec![
        RingClass::scalar(rank.clone()),
        RingClass::generator(Generator::F).scale(&degree),
    ];
    ChernVector::new(ChernKind::Character, rank, comps).expect("curve bundle is well formed")
}

/// Character of a bundle from its rank and Chern classes `c₁, c₂, …`.
pub fn ch_from_chern_classes(
    rank: CoefPoly,
    classes: &[RingClass],
) -> Result<ChernVector, ChernError> {
    let mut cs = vec![RingClass::one()];
    cs.extend(classes.iter().cloned());
    cs.resize(MAX_INDEX + 1, RingClass::zero());
    let ps = newton_power_sums(&cs);
    let mut comps = vec![RingClass::scalar(rank.clone())];
    for (n, p) in ps.iter().enumerate() {
        comps.push(p.scale_rational(&(Rational::one() / factorial(n + 1))));
    }
    ChernVector::new(ChernKind::Character, rank, comps)
}

/// `p₁, …, p_N` with `pₙ = n!·chₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSums(Vec<RingClass>);

impl PowerSums {
    pub fn new(ps: Vec<RingClass>) -> Self {
        PowerSums(ps)
    }

    /// `pₙ`, 1-based.
    pub fn get(&self, n: usize) -> &RingClass {
        &self.0[n - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[RingClass] {
        &self.0
    }
}

/// Number of power sums the pipeline uses.
pub const POWER_SUM_COUNT: usize = 5;

/// `pₙ = n!·(chₙ(a) − chₙ(b))` for `n = 1..=5`.
pub fn power_sums(a: &ChernVector, b: &ChernVector) -> Result<PowerSums, ChernError> {
    power_sums_of(&ch_difference(a, b)?, POWER_SUM_COUNT)
}

/// `pₙ = n!·chₙ(a)` for `n = 1..=count`.
pub fn power_sums_of(a: &ChernVector, count: usize) -> Result<PowerSums, ChernError> {
    a.expect(ChernKind::Character)?;
    Ok(PowerSums(
        (1..=count.min(MAX_INDEX))
            .map(|n| a.components[n].scale_rational(&factorial(n)))
            .collect(),
    ))
}

/// Total Chern class `1 + c₁ + … + c_N` of the virtual bundle whose power
/// sums are `ps`.
pub fn newton_classes(ps: &PowerSums, rank: CoefPoly) -> ChernVector {
    let cs = newton_elementary(&ps.0);
    ChernVector::new(ChernKind::TotalClass, rank, cs)
        .expect("Newton output is graded when the power sums are")
}

/// The closed form
/// `c₅ = (1/5)(p₅ − 5/6 p₂p₃ − 5/4 p₁p₄ + 5/6 p₁²p₃ + 5/8 p₁p₂² − 5/12 p₁³p₂ + 1/24 p₁⁵)`.
pub fn explicit_c5<T: Algebra>(ps: &[T]) -> T {
    let [p1, p2, p3, p4, p5] = [&ps[0], &ps[1], &ps[2], &ps[3], &ps[4]];
    let p1sq = p1.mul(p1);
    let inner = p5
        .sub(&p2.mul(p3).scale(&rat(5, 6)))
        .sub(&p1.mul(p4).scale(&rat(5, 4)))
        .add(&p1sq.mul(p3).scale(&rat(5, 6)))
        .add(&p1.mul(&p2.mul(p2)).scale(&rat(5, 8)))
        .sub(&p1sq.mul(p1).mul(p2).scale(&rat(5, 12)))
        .add(&p1sq.mul(&p1sq).mul(p1).scale(&rat(1, 24)));
    inner.scale(&rat(1, 5))
}

/// `Δ_{a,b}(c) = det(c_{a+j−i})_{1≤i,j≤b}`, with `c_k = 0` outside the
/// stored range.
pub fn porteous_delta(c: &ChernVector, a: usize, b: usize) -> Result<RingClass, ChernError> {
    c.expect(ChernKind::TotalClass)?;
    let entry = |k: isize| -> RingClass {
        if k < 0 || k as usize > MAX_INDEX {
            RingClass::zero()
        } else {
            c.components[k as usize].clone()
        }
    };
    let matrix: Vec<Vec<RingClass>> = (0..b as isize)
        .map(|i| (0..b as isize).map(|j| entry(a as isize + j - i)).collect())
        .collect();
    Ok(determinant(&matrix))
}

/// Solution of the two relations on `H*(M_{X₁}(x))` and its consequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnReport {
    /// `β = α² − 4χ`.
    pub beta: RingClass,
    /// Defined by `ξ₂² = γf`.
    pub gamma: RingClass,
    pub chi: RingClass,
    /// `c₂(U) = χ + ξ₂ + αf`.
    pub c2_universal: RingClass,
    /// `ξ₂²` as computed by the ring.
    pub xi2_squared: RingClass,
}

/// Solves `α² + β = 0` and `α³ + 5αβ + 4γ = 0` for `β ∈ Q·α²`,
/// `γ ∈ Q·α³`, then checks the consequences against the ring.
pub fn verify_kn_relations() -> Result<KnReport, ChernError> {
    let alpha = RingClass::generator(Generator::Alpha);
    let a2 = alpha.pow(2);
    let a3 = alpha.pow(3);

    // Each relation is affine in the unknown scalar; read off its value at 0
    // and its slope, then solve.
    let solve =
        |rel: &dyn Fn(&Rational) -> RingClass, basis: &RingClass| -> Result<Rational, ChernError> {
            let m = basis
                .terms()
                .next()
                .map(|(m, _)| *m)
                .ok_or_else(|| ChernError::Inconsistent("zero basis".into()))?;
            let at0 = rel(&Rational::zero()).coeff(&m);
            let at1 = rel(&Rational::one()).coeff(&m);
            let (c0, c1) = (at0.as_constant(), at1.as_constant());
            let (Some(c0), Some(c1)) = (c0, c1) else {
                return Err(ChernError::Inconsistent("non-constant relation".into()));
            };
            let slope = &c1 - &c0;
            if slope.is_zero() {
                return Err(ChernError::Inconsistent(
                    "relation does not involve the unknown".into(),
                ));
            }
            Ok(-c0 / slope)
        };

    let b = solve(&|b: &Rational| &a2 + &a2.scale_rational(b), &a2)?;
    let beta = a2.scale_rational(&b);
    let c = solve(
        &|c: &Rational| {
            &(&a3 + &(&alpha * &beta).scale_rational(&int(5))) + &a3.scale_rational(&(c * int(4)))
        },
        &a3,
    )?;
    let gamma = a3.scale_rational(&c);

    let rel1 = &a2 + &beta;
    let rel2 = &(&a3 + &(&alpha * &beta).scale_rational(&int(5))) + &gamma.scale_rational(&int(4));
    if !rel1.is_zero() || !rel2.is_zero() {
        return Err(ChernError::Inconsistent(format!(
            "residuals {rel1}, {rel2}"
        )));
    }

    let chi = (&a2 - &beta).scale_rational(&rat(1, 4));
    let f = RingClass::generator(Generator::F);
    let xi2 = RingClass::generator(Generator::Xi2);
    let c2_universal = &(&chi + &xi2) + &(&alpha * &f);
    let xi2_squared = &xi2 * &xi2;
    if xi2_squared != &gamma * &f {
        return Err(ChernError::Inconsistent(format!(
            "xi2^2 = {xi2_squared} but gamma*f = {}",
            &gamma * &f
        )));
    }
    Ok(KnReport {
        beta,
        gamma,
        chi,
        c2_universal,
        xi2_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_class, Generator::*};
    use std::collections::BTreeMap;

    fn g(x: Generator) -> RingClass {
        RingClass::generator(x)
    }

    fn cls(s: &str) -> RingClass {
        parse_class(s).unwrap()
    }

    /// Free commutative polynomials in five symbols `p₁ … p₅`, for reading
    /// off Newton coefficients.
    #[derive(Clone, PartialEq, Debug)]
    struct Free(BTreeMap<[u32; 5], Rational>);

    impl Free {
        fn var(i: usize) -> Self {
            let mut e = [0; 5];
            e[i] = 1;
            Free([(e, Rational::one())].into())
        }
        fn coeff(&self, e: [u32; 5]) -> Rational {
            self.0.get(&e).cloned().unwrap_or_else(Rational::zero)
        }
        fn norm(mut self) -> Self {
            self.0.retain(|_, v| !v.is_zero());
            self
        }
    }

    impl Algebra for Free {
        fn zero_elem() -> Self {
            Free(BTreeMap::new())
        }
        fn one_elem() -> Self {
            Free([([0; 5], Rational::one())].into())
        }
        fn add(&self, o: &Self) -> Self {
            let mut out = self.0.clone();
            for (k, v) in &o.0 {
                *out.entry(*k).or_insert_with(Rational::zero) += v;
            }
            Free(out).norm()
        }
        fn sub(&self, o: &Self) -> Self {
            self.add(&o.scale(&int(-1)))
        }
        fn mul(&self, o: &Self) -> Self {
            let mut out: BTreeMap<[u32; 5], Rational> = BTreeMap::new();
            for (a, x) in &self.0 {
                for (b, y) in &o.0 {
                    let mut e = *a;
                    for i in 0..5 {
                        e[i] += b[i];
                    }
                    *out.entry(e).or_insert_with(Rational::zero) += x * y;
                }
            }
            Free(out).norm()
        }
        fn scale(&self, k: &Rational) -> Self {
            Free(self.0.iter().map(|(e, v)| (*e, v * k)).collect()).norm()
        }
    }

    #[test]
    fn newton_c5_coefficients_in_free_algebra() {
        let ps: Vec<Free> = (0..5).map(Free::var).collect();
        let c = newton_elementary(&ps);
        let c5 = &c[5];
        let expected = [
            ([0, 0, 0, 0, 1], rat(1, 5)),
            ([0, 1, 1, 0, 0], rat(-1, 6)),
            ([1, 0, 0, 1, 0], rat(-1, 4)),
            ([2, 0, 1, 0, 0], rat(1, 6)),
            ([1, 2, 0, 0, 0], rat(1, 8)),
            ([3, 1, 0, 0, 0], rat(-1, 12)),
            ([5, 0, 0, 0, 0], rat(1, 120)),
        ];
        assert_eq!(c5.0.len(), expected.len());
        for (e, k) in expected {
            assert_eq!(c5.coeff(e), k, "{e:?}");
        }
        assert_eq!(*c5, explicit_c5(&ps));
        assert_eq!(c[1], Free::var(0));
    }

    #[test]
    fn single_root_oracle() {
        // one formal root x: p_n = x^n, so c_1 = x and every higher c_n = 0
        for x in [int(3), rat(-2, 7), int(0)] {
            let ps: Vec<Rational> = (1..=5).map(|n| num_traits::pow(x.clone(), n)).collect();
            let c = newton_elementary(&ps);
            assert_eq!(c[1], x);
            assert!(c[2..].iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn three_root_oracle() {
        // roots 1, 2, 4: e1 = 7, e2 = 14, e3 = 8
        let roots = [int(1), int(2), int(4)];
        let ps: Vec<Rational> = (1..=5)
            .map(|n| roots.iter().map(|r| num_traits::pow(r.clone(), n)).sum())
            .collect();
        let c = newton_elementary(&ps);
        assert_eq!(&c[1..], &[int(7), int(14), int(8), int(0), int(0)]);
        let back = newton_power_sums(&c);
        assert_eq!(back, ps);
    }

    #[test]
    fn line_bundle_characters() {
        let ch = ch_line_bundle(&g(Xi1)).unwrap();
        assert_eq!(ch.total(), cls("1 + xi1 - Theta*f"));
        assert_eq!(ch.component(1), &g(Xi1));
        assert_eq!(
            ch_line_bundle(&RingClass::zero()).unwrap().total(),
            RingClass::one()
        );
        assert_eq!(ch_line_bundle(&g(F)).unwrap().total(), cls("1 + f"));
        assert!(ch_line_bundle(&g(Xi2)).is_err());
    }

    #[test]
    fn duals() {
        let ch = ch_line_bundle(&g(Xi1)).unwrap();
        assert_eq!(ch_dual(&ch).unwrap().total(), cls("1 - xi1 - Theta*f"));
        assert_eq!(ch_dual(&ch_dual(&ch).unwrap()).unwrap(), ch);
        let tc = newton_classes(&PowerSums::new(vec![g(Alpha)]), CoefPoly::one());
        assert!(ch_dual(&tc).is_err());
    }

    #[test]
    fn tensor_with_trivial() {
        let ch = ch_line_bundle(&g(Xi1)).unwrap();
        let one = ChernVector::trivial(CoefPoly::one());
        assert_eq!(ch_tensor(&ch, &one).unwrap(), ch);
    }

    #[test]
    fn todd_classes() {
        assert_eq!(todd_curve(2).total(), cls("1 - f"));
        assert_eq!(todd_curve(1).total(), RingClass::one());
        assert_eq!(todd_curve(0).total(), cls("1 + f"));
    }

    #[test]
    fn riemann_roch_twist() {
        // rank p, degree 3p - 2 bundle on the curve times td(X₁)
        let p = CoefPoly::p();
        let deg = &p.scale(&int(3)) - &CoefPoly::from_int(2);
        let prod = ch_tensor(&ch_curve_bundle(p.clone(), deg), &todd_curve(2)).unwrap();
        assert_eq!(prod.total(), cls("p + (2*p - 2)*f"));
    }

    #[test]
    fn porteous_small_cases() {
        let cs = vec![
            RingClass::one(),
            cls("Theta"),
            cls("alpha*H"),
            cls("Theta^2*alpha"),
            cls("alpha^2*H*Theta"),
            cls("alpha^3*Theta^2"),
        ];
        let c = ChernVector::new(ChernKind::TotalClass, CoefPoly::from_int(4), cs.clone()).unwrap();
        assert_eq!(porteous_delta(&c, 1, 1).unwrap(), cs[1]);
        assert_eq!(porteous_delta(&c, 5, 1).unwrap(), cs[5]);
        let want = &(&cs[2] * &cs[2]) - &(&cs[1] * &cs[3]);
        assert_eq!(porteous_delta(&c, 2, 2).unwrap(), want);
    }

    #[test]
    fn kn_relations() {
        let r = verify_kn_relations().unwrap();
        assert_eq!(r.beta, -g(Alpha).pow(2));
        assert_eq!(r.gamma, g(Alpha).pow(3));
        assert_eq!(r.chi, cls("1/2*alpha^2"));
        assert_eq!(r.c2_universal, cls("1/2*alpha^2 + xi2 + alpha*f"));
        assert_eq!(r.xi2_squared, cls("alpha^3*f"));
    }

    #[test]
    fn rejects_ungraded_components() {
        let bad = ChernVector::new(
            ChernKind::Character,
            CoefPoly::one(),
            vec![RingClass::one(), g(Xi2)],
        );
        assert_eq!(bad.unwrap_err(), ChernError::NotHomogeneous { index: 1 });
        let bad = ChernVector::new(
            ChernKind::TotalClass,
            CoefPoly::one(),
            vec![RingClass::zero()],
        );
        assert!(matches!(bad, Err(ChernError::BadLeadingTerm { .. })));
    }
}
