//! Slope bookkeeping and stability inequalities for Frobenius direct images
//! on a curve of genus `g ≥ 2` in characteristic `p`.
//!
//! Everything is exact rational arithmetic over integer inputs.

use std::ops::RangeInclusive;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coef::{int, rat, rational_string, CoefPoly, Rational};
use crate::model::ORDER_OF_2TORSION;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("genus must be at least 2, got {0}")]
    Genus(i64),
    #[error("characteristic must be a prime, got {0}")]
    Characteristic(i64),
    #[error("rank must be at least 1, got {0}")]
    Rank(i64),
    #[error("subbundle rank n = {n} must satisfy 1 <= n <= r - 1 = {}", r - 1)]
    SubRank { r: i64, n: i64 },
    #[error("the rank-2 subbundle bound needs p >= 3, got p = {0}")]
    NeedsOddPrime(i64),
    #[error("{0} is not exactly divisible by p^2")]
    Divisibility(String),
    #[error("l(B) disagrees: {0}")]
    Inconsistent(String),
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// A curve of genus `g` in characteristic `p` with a line bundle of degree
/// `g − 1 + d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveParams {
    g: i64,
    p: i64,
    d: i64,
}

impl CurveParams {
    pub fn new(g: i64, p: i64, d: i64) -> Result<Self, BoundsError> {
        if g < 2 {
            return Err(BoundsError::Genus(g));
        }
        if !is_prime(p) {
            return Err(BoundsError::Characteristic(p));
        }
        Ok(Self { g, p, d })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn deg_l(&self) -> i64 {
        self.g - 1 + self.d
    }

    /// `d ≡ −2g + 2 (mod p)`, which makes `ε = 0` for `(r, n) = (p, 2)`.
    pub fn epsilon_zero_congruence(&self) -> bool {
        (self.d + 2 * self.g - 2).rem_euclid(self.p) == 0
    }
}

/// Outcome of one inequality check. `satisfied` is `margin > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "rational_string")]
    pub value: Rational,
    #[serde(with = "rational_string")]
    pub margin: Rational,
    pub satisfied: bool,
    pub witness: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl BoundReport {
    fn new(value: Rational, margin: Rational, witness: String, warnings: Vec<String>) -> Self {
        let satisfied = margin.is_positive();
        Self {
            value,
            margin,
            satisfied,
            witness,
            warnings,
        }
    }
}

/// Rank, degree and slope of `F_*L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectImage {
    pub rank: i64,
    pub degree: i64,
    #[serde(with = "rational_string")]
    pub slope: Rational,
}

/// `μ(F_*L) = g − 1 + d/p`, with `deg F_*L = p(g − 1) + d`.
pub fn slope_direct_image(cp: &CurveParams) -> DirectImage {
    let degree = cp.p * (cp.g - 1) + cp.d;
    DirectImage {
        rank: cp.p,
        degree,
        slope: int(cp.g - 1) + rat(cp.d, cp.p),
    }
}

/// `χ = deg + rank·(1 − g)`.
pub fn euler_characteristic(degree: i64, rank: i64, g: i64) -> i64 {
    degree + rank * (1 - g)
}

/// `μ_max(F*E) − μ_min(F*E) ≤ (r − 1)(2g − 2)`.
pub fn sb_gap_bound(r: i64, g: i64) -> Rational {
    int((r - 1) * (2 * g - 2))
}

/// For each `1 ≤ r ≤ (p − 1)/2`, a destabilizing rank-`r` quotient would
/// force `(g − 1) ≤ (g − 1)(2r − 1)/p`. Reports the smallest slack
/// `(g − 1) − (g − 1)(2r − 1)/p`; positive slack refutes every case.
pub fn small_rank_certificate(cp: &CurveParams) -> BoundReport {
    let g1 = int(cp.g - 1);
    let max_r = (cp.p - 1) / 2;
    let mut worst: Option<(i64, Rational)> = None;
    let mut warnings = Vec::new();
    for r in 1..=max_r {
        let ratio = rat(2 * r - 1, cp.p);
        if ratio >= int(1) {
            warnings.push(format!("(2r-1)/p = {ratio} is not < 1 at r = {r}"));
        }
        let slack = &g1 - &g1 * ratio;
        if worst.as_ref().is_none_or(|(_, s)| slack < *s) {
            worst = Some((r, slack));
        }
    }
    match worst {
        Some((r, slack)) => BoundReport::new(
            slack.clone(),
            slack,
            format!(
                "g = {}, p = {}: minimal slack (g-1)(1 - (2r-1)/p) at r = {r} over 1 <= r <= {max_r}",
                cp.g, cp.p
            ),
            warnings,
        ),
        None => {
            warnings.push(format!("no rank 1 <= r <= (p-1)/2 for p = {}; certificate is vacuous", cp.p));
            BoundReport::new(
                g1.clone(),
                g1,
                format!("g = {}, p = {}: empty range of r", cp.g, cp.p),
                warnings,
            )
        }
    }
}

fn check_sub_rank(r: i64, n: i64) -> Result<(), BoundsError> {
    if r < 1 {
        return Err(BoundsError::Rank(r));
    }
    if n < 1 || n > r - 1 {
        return Err(BoundsError::SubRank { r, n });
    }
    Ok(())
}

/// The unique `0 ≤ ε ≤ r − 1` with `ε + n(r − n)(g − 1) ≡ nδ (mod r)`.
pub fn hirschowitz_epsilon(r: i64, n: i64, g: i64, delta: i64) -> Result<i64, BoundsError> {
    check_sub_rank(r, n)?;
    let (r, n, g, delta) = (r as i128, n as i128, g as i128, delta as i128);
    let eps = (n * delta - n * (r - n) * (g - 1)).rem_euclid(r);
    Ok(eps as i64)
}

/// Lower bound `δ/r − ((r − n)/r)(g − 1) − ε/(rn)` on the slope of a
/// maximal rank-`n` subbundle of a general bundle of rank `r`, degree `δ`.
pub fn hirschowitz_bound(r: i64, n: i64, g: i64, delta: i64) -> Result<Rational, BoundsError> {
    let eps = hirschowitz_epsilon(r, n, g, delta)?;
    Ok(rat(delta, r) - rat(r - n, r) * int(g - 1) - rat(eps, r * n))
}

/// Compares the lower bound for a rank-2 subbundle `E ⊂ F_*L` with
/// `deg L / p`. The margin is `(g − 1)/p` when `d ≡ −2g + 2 (mod p)`.
pub fn destabilization_check(cp: &CurveParams) -> Result<BoundReport, BoundsError> {
    if cp.p < 3 {
        return Err(BoundsError::NeedsOddPrime(cp.p));
    }
    let direct = slope_direct_image(cp);
    let eps = hirschowitz_epsilon(cp.p, 2, cp.g, direct.degree)?;
    let lhs = hirschowitz_bound(cp.p, 2, cp.g, direct.degree)?;
    let rhs = rat(cp.deg_l(), cp.p);
    let mut warnings = Vec::new();
    if cp.epsilon_zero_congruence() {
        debug_assert_eq!(eps, 0);
        debug_assert_eq!(lhs, rat(2 * cp.g - 2 + cp.d, cp.p));
    } else {
        warnings.push(format!(
            "d = {} is not congruent to -2g+2 mod p; epsilon = {eps}",
            cp.d
        ));
    }
    let margin = &lhs - &rhs;
    let witness = format!(
        "g = {}, p = {}, d = {}: mu(E) >= {lhs} vs deg L / p = {rhs}; \
         mu(F*E) >= {} {} deg L = {}",
        cp.g,
        cp.p,
        cp.d,
        &lhs * int(cp.p),
        if margin.is_positive() { ">" } else { "<=" },
        cp.deg_l()
    );
    Ok(BoundReport::new(lhs, margin, witness, warnings))
}

/// `l(B)` obtained three ways, plus `l(Q)` and `l(Q₀)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingRelations {
    pub l_b_from_theta: CoefPoly,
    pub l_b_from_q: CoefPoly,
    pub l_b_from_lambda: CoefPoly,
    pub l_q: CoefPoly,
    pub l_q0: CoefPoly,
}

/// `l(B) = 16·l(B_θ)`, `l(B) = 16·l(Q)/p²` with `l(Q) = λ/16`, and
/// `l(B) = λ/p²`. All three must agree. Works for symbolic or constant `p`.
pub fn counting_relations_check(
    l_b_theta: &CoefPoly,
    lambda: &CoefPoly,
    p: &CoefPoly,
) -> Result<CountingRelations, BoundsError> {
    let sixteen = int(ORDER_OF_2TORSION);
    let p2 = p.pow(2);
    let divide = |c: &CoefPoly| {
        c.div_exact(&p2)
            .ok_or_else(|| BoundsError::Divisibility(c.to_string()))
    };
    let l_q = lambda.scale(&(int(1) / &sixteen));
    let l_b_from_theta = l_b_theta.scale(&sixteen);
    let l_b_from_q = divide(&l_q.scale(&sixteen))?;
    let l_b_from_lambda = divide(lambda)?;
    let l_q0 = divide(&l_q)?;
    if l_b_from_theta != l_b_from_q || l_b_from_q != l_b_from_lambda {
        return Err(BoundsError::Inconsistent(format!(
            "16*l(B_theta) = {l_b_from_theta}, 16*l(Q)/p^2 = {l_b_from_q}, lambda/p^2 = {l_b_from_lambda}"
        )));
    }
    Ok(CountingRelations {
        l_b_from_theta,
        l_b_from_q,
        l_b_from_lambda,
        l_q,
        l_q0,
    })
}

/// Parameter grid for the sweeps.
#[derive(Debug, Clone)]
pub struct Grid {
    pub genera: RangeInclusive<i64>,
    pub primes: Vec<i64>,
    pub offsets: RangeInclusive<i64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            genera: 2..=50,
            primes: (3..=97).filter(|n| is_prime(*n)).collect(),
            offsets: -20..=20,
        }
    }
}

/// Failures of one sweep, as human-readable strings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn grid_params(grid: &Grid) -> impl Iterator<Item = CurveParams> + '_ {
    grid.genera.clone().flat_map(move |g| {
        grid.primes.iter().flat_map(move |&p| {
            grid.offsets
                .clone()
                .filter_map(move |d| CurveParams::new(g, p, d).ok())
        })
    })
}

/// `χ(F_*L) = χ(L) = d` for every grid point.
pub fn sweep_euler(grid: &Grid) -> SweepReport {
    let mut out = SweepReport::default();
    for cp in grid_params(grid) {
        let fl = slope_direct_image(&cp);
        let chi_push = euler_characteristic(fl.degree, fl.rank, cp.g);
        let chi_l = euler_characteristic(cp.deg_l(), 1, cp.g);
        let slope_ok = fl.slope == rat(fl.degree, fl.rank);
        out.record(chi_push == cp.d && chi_l == cp.d && slope_ok, || {
            format!("{cp:?}: chi(F_*L) = {chi_push}, chi(L) = {chi_l}")
        });
    }
    out
}

/// Margin `(g − 1)/p` at every grid point satisfying the congruence.
pub fn sweep_destabilization(grid: &Grid) -> SweepReport {
    let mut out = SweepReport::default();
    for cp in grid_params(grid).filter(CurveParams::epsilon_zero_congruence) {
        let want = rat(cp.g - 1, cp.p);
        match destabilization_check(&cp) {
            Ok(r) => out.record(
                r.margin == want && r.satisfied && r.warnings.is_empty(),
                || format!("{cp:?}: margin {} != {want}", r.margin),
            ),
            Err(e) => out.record(false, || format!("{cp:?}: {e}")),
        }
    }
    out
}

/// Positive slack for every rank `1 ≤ r ≤ (p − 1)/2` at every `(g, p)`.
pub fn sweep_small_rank(grid: &Grid) -> SweepReport {
    let mut out = SweepReport::default();
    for g in grid.genera.clone() {
        for &p in &grid.primes {
            let Ok(cp) = CurveParams::new(g, p, 0) else {
                continue;
            };
            let g1 = int(g - 1);
            for r in 1..=(p - 1) / 2 {
                let slack = &g1 - &g1 * rat(2 * r - 1, p);
                out.record(slack.is_positive() && rat(2 * r - 1, p) < int(1), || {
                    format!("g = {g}, p = {p}, r = {r}: slack {slack}")
                });
            }
            let cert = small_rank_certificate(&cp);
            out.record(cert.satisfied, || format!("{cp:?}: certificate {cert:?}"));
        }
    }
    out
}

/// Exhaustive scan confirming `ε` is the only solution in `[0, r − 1]`.
pub fn epsilon_is_unique(r: i64, n: i64, g: i64, delta: i64) -> Result<bool, BoundsError> {
    let eps = hirschowitz_epsilon(r, n, g, delta)?;
    let solutions: Vec<i64> = (0..r)
        .filter(|e| {
            (e + n * (r - n) * (g - 1) - n * delta)
                .rem_euclid(r)
                .is_zero()
        })
        .collect();
    Ok(solutions == [eps])
}
