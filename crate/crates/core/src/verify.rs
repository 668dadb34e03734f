//! Named self-checks grouped into suites. Randomized checks draw from a
//! ChaCha stream seeded by `VCALC_SEED` (or [`DEFAULT_SEED`]), so every run
//! is reproducible.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    counting_relations_check, epsilon_is_unique, hirschowitz_bound, slope_direct_image,
    sweep_destabilization, sweep_euler, sweep_small_rank, CurveParams, Grid,
};
use crate::chern::{
    ch_dual, ch_from_chern_classes, explicit_c5, newton_classes, newton_elementary, porteous_delta,
    power_sums_of, verify_kn_relations, ChernKind, ChernVector,
};
use crate::coef::{int, rat, CoefPoly, Rational};
use crate::model::{
    derive_counts, derive_counts_substituted, reference, Counts, Model, PORTEOUS_A, PORTEOUS_B,
};
use crate::ring::rewrite::{all_monomials, check_confluence, normal_form};
use crate::ring::{
    fundamental_jz, normal_basis, parse_class, Generator, Monomial, RingClass,
    ALPHA3_H_THETA2_INTEGRAL, TOP_DEGREE,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const SEED_ENV: &str = "VCALC_SEED";

/// Random cases per randomized property.
pub const CASES: usize = 1000;

/// Seed from `VCALC_SEED`, falling back to [`DEFAULT_SEED`] when unset.
pub fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|e| format!("{SEED_ENV}={s:?} is not a u64: {e}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ring,
    Chern,
    Model,
    Bounds,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ring" => Ok(Suite::Ring),
            "chern" => Ok(Suite::Chern),
            "model" => Ok(Suite::Model),
            "bounds" => Ok(Suite::Bounds),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

struct Checks {
    suite: Suite,
    out: Vec<CheckResult>,
}

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Runs `f` on `CASES` draws, stopping at the first counterexample.
    fn random<F>(&mut self, name: &str, rng: &mut ChaCha8Rng, mut f: F)
    where
        F: FnMut(&mut ChaCha8Rng) -> Result<(), String>,
    {
        let mut failure = None;
        for i in 0..CASES {
            if let Err(e) = f(rng) {
                failure = Some(format!("case {i}: {e}"));
                break;
            }
        }
        let passed = failure.is_none();
        self.push(
            format!("{name} ({CASES} random cases)"),
            passed,
            failure.unwrap_or_default(),
        );
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn random_coef(rng: &mut impl Rng) -> CoefPoly {
    CoefPoly::from_terms(
        (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..=2), random_rational(rng))),
    )
}

fn random_class(rng: &mut impl Rng, max_terms: usize) -> RingClass {
    let basis = normal_basis();
    RingClass::from_raw(
        (0..rng.gen_range(1..=max_terms)).map(|_| (*basis.choose(rng).unwrap(), random_coef(rng))),
    )
}

/// Rational coefficients only; Newton's recursion on `p`-polynomial
/// coefficients is needlessly slow for a structural check.
fn random_homogeneous(rng: &mut impl Rng, degree: u32, max_terms: usize) -> RingClass {
    let of_degree: Vec<Monomial> = normal_basis()
        .iter()
        .copied()
        .filter(|m| m.degree() == degree)
        .collect();
    if of_degree.is_empty() {
        return RingClass::zero();
    }
    RingClass::from_raw((0..rng.gen_range(1..=max_terms)).map(|_| {
        (
            *of_degree.choose(rng).unwrap(),
            CoefPoly::constant(random_rational(rng)),
        )
    }))
}

fn random_character(rng: &mut impl Rng) -> ChernVector {
    let comps = (0..=5u32)
        .map(|k| {
            if k == 0 {
                RingClass::scalar(CoefPoly::from_int(rng.gen_range(-4..=4)))
            } else {
                random_homogeneous(rng, 2 * k, 2)
            }
        })
        .collect::<Vec<_>>();
    let rank = comps[0].coeff(&Monomial::one());
    ChernVector::new(ChernKind::Character, rank, comps).expect("graded by construction")
}

/// Runs one suite (or all of them) with the given seed.
pub fn run(suite: Suite, seed: u64) -> Vec<CheckResult> {
    match suite {
        Suite::All => [Suite::Ring, Suite::Chern, Suite::Model, Suite::Bounds]
            .into_iter()
            .flat_map(|s| run(s, seed))
            .collect(),
        Suite::Ring => ring_suite(seed),
        Suite::Chern => chern_suite(seed),
        Suite::Model => model_suite(),
        Suite::Bounds => bounds_suite(seed),
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn ring_suite(seed: u64) -> Vec<CheckResult> {
    let mut c = Checks {
        suite: Suite::Ring,
        out: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    c.random(
        "CoefPoly ring axioms and evaluation homomorphism",
        &mut rng,
        |rng| {
            let (a, b, d) = (random_coef(rng), random_coef(rng), random_coef(rng));
            let x = random_rational(rng);
            ensure(
                &(&a * &b) * &d == &a * &(&b * &d)
                    && &a * &b == &b * &a
                    && &a * &(&b + &d) == &(&a * &b) + &(&a * &d)
                    && (&a * &b).eval(&x) == a.eval(&x) * b.eval(&x),
                || format!("a = {a}, b = {b}, c = {d}"),
            )
        },
    );

    c.random("ring axioms on random triples", &mut rng, |rng| {
        let (a, b, d) = (
            random_class(rng, 4),
            random_class(rng, 4),
            random_class(rng, 4),
        );
        ensure(
            &(&a * &b) * &d == &a * &(&b * &d)
                && &a * &b == &b * &a
                && &a * &(&b + &d) == &(&a * &b) + &(&a * &d)
                && &a * &RingClass::one() == a
                && (&(&a + &b) - &b) == a,
            || format!("a = {a}, b = {b}, c = {d}"),
        )
    });

    let raw = all_monomials(TOP_DEGREE);
    c.random("normal-form idempotence", &mut rng, |rng| {
        let m = *raw.choose(rng).unwrap();
        let once = RingClass::from_raw([(m, CoefPoly::one())]);
        let twice = RingClass::from_raw(once.terms().map(|(m, k)| (*m, k.clone())));
        let x = random_class(rng, 5);
        let x_again = RingClass::from_raw(x.terms().map(|(m, k)| (*m, k.clone())));
        ensure(
            once == twice && x == x_again && once.terms().all(|(m, _)| m.is_normal()),
            || format!("monomial {m}"),
        )
    });

    c.random("normal form is multiplicative", &mut rng, |rng| {
        let (m1, m2) = (*raw.choose(rng).unwrap(), *raw.choose(rng).unwrap());
        let lhs = RingClass::from_raw([(m1 * m2, CoefPoly::one())]);
        let rhs = &RingClass::from_raw([(m1, CoefPoly::one())])
            * &RingClass::from_raw([(m2, CoefPoly::one())]);
        ensure(lhs == rhs, || format!("{m1} * {m2}"))
    });

    let report = check_confluence();
    c.push(
        format!(
            "confluence over all {} monomials of degree <= {TOP_DEGREE}",
            report.monomials
        ),
        report.is_confluent(),
        format!(
            "{} with multiple redexes, {} conflicts",
            report.multi_redex,
            report.conflicts.len()
        ),
    );

    let xi1_cubed = Monomial::one().with(Generator::Xi1, 3);
    let h4 = Monomial::one().with(Generator::H, 4);
    c.push(
        "xi1^3 = 0 and H^4 = 0 by reduction",
        normal_form(&xi1_cubed).is_empty() && normal_form(&h4).is_empty(),
        "",
    );

    let integral = RingClass::term(fundamental_jz(), CoefPoly::one()).integrate_top_jz();
    c.push(
        "integral of alpha^3*H*Theta^2 = 8",
        integral == Ok(CoefPoly::from_int(ALPHA3_H_THETA2_INTEGRAL)),
        format!("{integral:?}"),
    );

    let parsed = parse_class("xi1^2").map(|x| x.to_string());
    c.push(
        "xi1^2 normalizes to -2*Theta*f",
        parsed.as_deref() == Ok("-2*f*Theta"),
        format!("{parsed:?}"),
    );
    c.out
}

fn chern_suite(seed: u64) -> Vec<CheckResult> {
    let mut c = Checks {
        suite: Suite::Chern,
        out: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc4e2);

    c.random("Newton c5 coefficients vs closed form", &mut rng, |rng| {
        let ps: Vec<Rational> = (0..5).map(|_| random_rational(rng)).collect();
        let newton = newton_elementary(&ps)[5].clone();
        let closed = explicit_c5(&ps);
        ensure(newton == closed, || {
            format!("p = {ps:?}: {newton} vs {closed}")
        })
    });

    c.random("Delta_{5,1} = c5", &mut rng, |rng| {
        let ps = power_sums_of(&random_character(rng), 5).map_err(|e| e.to_string())?;
        let total = newton_classes(&ps, CoefPoly::zero());
        let delta = porteous_delta(&total, PORTEOUS_A, PORTEOUS_B).map_err(|e| e.to_string())?;
        ensure(&delta == total.component(5), || {
            format!("{delta} vs {}", total.component(5))
        })
    });

    c.random("ch <-> c round trip through degree 5", &mut rng, |rng| {
        let rank = CoefPoly::from_int(rng.gen_range(1..=6));
        let cs: Vec<RingClass> = (1..=5u32)
            .map(|k| random_homogeneous(rng, 2 * k, 2))
            .collect();
        let ch = ch_from_chern_classes(rank.clone(), &cs).map_err(|e| e.to_string())?;
        let back = newton_classes(&power_sums_of(&ch, 5).map_err(|e| e.to_string())?, rank);
        ensure((1..=5).all(|k| back.component(k) == &cs[k - 1]), || {
            format!("c = {cs:?}")
        })
    });

    c.random("dual involution", &mut rng, |rng| {
        let ch = random_character(rng);
        let twice = ch_dual(&ch)
            .and_then(|d| ch_dual(&d))
            .map_err(|e| e.to_string())?;
        ensure(twice == ch, || format!("{}", ch.total()))
    });

    match verify_kn_relations() {
        Ok(r) => {
            let alpha = RingClass::generator(Generator::Alpha);
            let ok = r.beta == -alpha.pow(2)
                && r.gamma == alpha.pow(3)
                && r.xi2_squared == parse_class("alpha^3*f").unwrap();
            c.push(
                "relations on the moduli space: beta = -alpha^2, gamma = alpha^3",
                ok,
                format!("c2(U) = {}", r.c2_universal),
            );
        }
        Err(e) => c.push("relations on the moduli space", false, e.to_string()),
    }
    c.out
}

fn model_suite() -> Vec<CheckResult> {
    let mut c = Checks {
        suite: Suite::Model,
        out: Vec::new(),
    };
    let model = Model::symbolic();
    let p = model.p().clone();
    let classes = match model.classes() {
        Ok(cl) => cl,
        Err(e) => {
            c.push("pipeline", false, e.to_string());
            return c.out;
        }
    };
    let displays: [(&str, RingClass, RingClass); 6] = [
        ("ch(L) display", reference::ch_l(&p), classes.ch_l.total()),
        ("ch(V) display", reference::ch_v(&p), classes.ch_v.total()),
        (
            "ch(V* x L* x F_*(theta^-1) x omega) td display",
            reference::twisted_product(&p),
            classes.twisted_product.total(),
        ),
        (
            "ch(F1) display",
            reference::ch_f1(&p),
            classes.ch_f1.total(),
        ),
        (
            "ch(F0) display",
            reference::ch_f0(&p),
            classes.ch_f0.total(),
        ),
        (
            "ch(F0 - F1)",
            reference::ch_difference(&p),
            classes.ch_diff.total(),
        ),
    ];
    for (name, want, got) in displays {
        c.push(name, want == got, "");
    }
    let ps_ok = reference::power_sums(&p)
        .iter()
        .enumerate()
        .all(|(i, want)| classes.power_sums.get(i + 1) == want);
    c.push("power sums p1..p5", ps_ok, "");
    c.push(
        "ranks 4p - 4 and 4p",
        classes.ch_f1.rank() == &(&p.scale(&int(4)) - &CoefPoly::from_int(4))
            && classes.ch_f0.rank() == &p.scale(&int(4)),
        format!("{}, {}", classes.ch_f1.rank(), classes.ch_f0.rank()),
    );
    c.push(
        "c5 by Newton = closed form = Delta_{5,1}",
        classes.c5 == explicit_c5(classes.power_sums.as_slice())
            && porteous_delta(&classes.total_chern, PORTEOUS_A, PORTEOUS_B).as_ref()
                == Ok(&classes.c5),
        format!("{} terms", classes.c5.len()),
    );
    let top = fundamental_jz();
    c.push(
        "alpha*c5 is a multiple of alpha^3*H*Theta^2",
        classes.alpha_c5.terms().all(|(m, _)| *m == top),
        "",
    );
    c.push(
        "alpha_c5 == p³(p²−1)/6 · α³HΘ²",
        classes.alpha_c5 == reference::alpha_c5(&p),
        classes.alpha_c5.render(true),
    );
    let lambda_want = (&p.pow(5) - &p.pow(3)).scale(&rat(2, 3));
    c.push(
        "lambda = 2/3*p^3*(p^2 - 1)",
        classes.lambda == lambda_want,
        classes.lambda.to_string(),
    );
    c.push(
        "point preimage H^3*Theta^2/2 = 1/4*alpha^2*H*Theta^2 - 1/4*alpha^3*Theta^2",
        model.point_preimage_class() == reference::point_preimage(&p),
        "",
    );
    match model.verify_hecke_polarization() {
        Ok(r) => c.push(
            "Hecke polarization c1 = H",
            true,
            r.polarization.to_string(),
        ),
        Err(e) => c.push("Hecke polarization c1 = H", false, e.to_string()),
    }
    match Counts::from_lambda(classes.lambda.clone(), &p) {
        Ok(counts) => {
            let rel = counting_relations_check(&counts.l_b_theta, &counts.lambda, &p);
            c.push(
                "counting consistency",
                rel.as_ref()
                    .is_ok_and(|r| r.l_b_from_theta == counts.l_b && r.l_q0 == counts.l_q0),
                format!("l(B) = {}, deg V = {}", counts.l_b, counts.deg_v),
            );
        }
        Err(e) => c.push("counting consistency", false, e.to_string()),
    }
    let primes = [3, 5, 7, 11];
    let commute = derive_counts(&primes)
        .map_err(|e| e.to_string())
        .and_then(|report| {
            primes.iter().try_for_each(|q| {
                let direct = derive_counts_substituted(*q).map_err(|e| e.to_string())?;
                ensure(direct == report.evaluations[q], || format!("p = {q}"))
            })
        });
    c.push(
        "substitution commutes with derivation for p = 3, 5, 7, 11",
        commute.is_ok(),
        commute.err().unwrap_or_default(),
    );
    c.out
}

fn bounds_suite(seed: u64) -> Vec<CheckResult> {
    let mut c = Checks {
        suite: Suite::Bounds,
        out: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0d5);
    let grid = Grid::default();
    let span = format!(
        "g in [{}, {}], primes {}..={}, d in [{}, {}]",
        grid.genera.start(),
        grid.genera.end(),
        grid.primes[0],
        grid.primes[grid.primes.len() - 1],
        grid.offsets.start(),
        grid.offsets.end()
    );
    for (name, sweep) in [
        (
            "Euler characteristic chi(F_*L) = chi(L) = d",
            sweep_euler(&grid),
        ),
        (
            "destabilization margin = (g-1)/p",
            sweep_destabilization(&grid),
        ),
        ("small-rank certificate slack > 0", sweep_small_rank(&grid)),
    ] {
        let detail = match sweep.failures.first() {
            Some(f) => f.clone(),
            None => format!("{} cases, {span}", sweep.cases),
        };
        c.push(name, sweep.passed(), detail);
    }

    c.random("epsilon is unique in [0, r-1]", &mut rng, |rng| {
        let r = rng.gen_range(2..=20);
        let n = rng.gen_range(1..r);
        let g = rng.gen_range(0..=10);
        let delta = rng.gen_range(-50..=50);
        ensure(epsilon_is_unique(r, n, g, delta) == Ok(true), || {
            format!("r = {r}, n = {n}, g = {g}, delta = {delta}")
        })
    });

    c.random(
        "rank-2 bound in F_*L equals mu(F_*L) - (p-2)/p (g-1)",
        &mut rng,
        |rng| {
            let g = rng.gen_range(2..=50);
            let p = *grid.primes.choose(rng).unwrap();
            let d = -2 * g + 2 + p * rng.gen_range(-3..=3);
            let cp = CurveParams::new(g, p, d).map_err(|e| e.to_string())?;
            let fl = slope_direct_image(&cp);
            let want = &fl.slope - rat(p - 2, p) * int(g - 1);
            ensure(hirschowitz_bound(p, 2, g, fl.degree) == Ok(want), || {
                format!("{cp:?}")
            })
        },
    );

    let relations = [3i64, 5, 7].iter().try_for_each(|&p| {
        let lambda = CoefPoly::from_int(2 * p * p * p * (p * p - 1) / 3);
        let theta = CoefPoly::from_int(p * (p * p - 1) / 24);
        let r = counting_relations_check(&theta, &lambda, &CoefPoly::from_int(p))
            .map_err(|e| e.to_string())?;
        ensure(
            r.l_b_from_theta.as_constant() == Some(int(2 * p * (p * p - 1) / 3)),
            || format!("p = {p}"),
        )
    });
    c.push(
        "l(B) three ways at p = 3, 5, 7",
        relations.is_ok(),
        relations.err().unwrap_or_default(),
    );
    c.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_with_default_seed() {
        let results = run(Suite::All, DEFAULT_SEED);
        let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(results.len() > 25);
    }

    #[test]
    fn model_suite_names_headline() {
        let names: Vec<String> = run(Suite::Model, DEFAULT_SEED)
            .into_iter()
            .map(|r| r.to_string())
            .collect();
        assert!(names
            .iter()
            .any(|n| n.starts_with("alpha_c5 == p³(p²−1)/6 · α³HΘ²: PASS")));
    }

    #[test]
    fn other_seed_also_passes() {
        assert!(all_passed(&run(Suite::Ring, 7)));
        assert!(all_passed(&run(Suite::Chern, 7)));
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("bounds".parse::<Suite>(), Ok(Suite::Bounds));
        assert!("everything".parse::<Suite>().is_err());
    }
}
