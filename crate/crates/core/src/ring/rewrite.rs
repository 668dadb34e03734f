//! Rewrite rules for the ring presentation and the normal-form tables built
//! from them.
//!
//! Substitution rules replace a monomial factor by a combination of smaller
//! ones; kill rules send a factor to zero. The fixed strategy tries every
//! substitution before any kill. Confluence is checked exhaustively by
//! [`check_confluence`] over all monomials up to the top degree.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::Generator::{self, *};
use super::{Monomial, TOP_DEGREE};
use crate::coef::{int, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Substitution,
    Kill,
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub name: &'static str,
    pub kind: RuleKind,
    pub lhs: Monomial,
    pub rhs: Vec<(Monomial, Rational)>,
}

/// A normalized linear combination, sorted by monomial.
pub type LinComb = Vec<(Monomial, Rational)>;

fn mono(parts: &[(Generator, u32)]) -> Monomial {
    parts
        .iter()
        .fold(Monomial::one(), |m, (g, e)| m.with(*g, *e))
}

fn subst(name: &'static str, lhs: &[(Generator, u32)], rhs: Vec<(Monomial, Rational)>) -> Rule {
    Rule {
        name,
        kind: RuleKind::Substitution,
        lhs: mono(lhs),
        rhs,
    }
}

fn kill(name: &'static str, lhs: &[(Generator, u32)]) -> Rule {
    Rule {
        name,
        kind: RuleKind::Kill,
        lhs: mono(lhs),
        rhs: Vec::new(),
    }
}

static RULES: Lazy<Vec<Rule>> = Lazy::new(|| {
    vec![
        subst(
            "xi1^2 -> -2*Theta*f",
            &[(Xi1, 2)],
            vec![(mono(&[(Theta, 1), (F, 1)]), int(-2))],
        ),
        subst(
            "xi1*xi2 -> Lambda*f",
            &[(Xi1, 1), (Xi2, 1)],
            vec![(mono(&[(Lambda, 1), (F, 1)]), int(1))],
        ),
        subst(
            "xi2^2 -> alpha^3*f",
            &[(Xi2, 2)],
            vec![(mono(&[(Alpha, 3), (F, 1)]), int(1))],
        ),
        subst(
            "H^2 -> alpha*H - 1/2*alpha^2",
            &[(H, 2)],
            vec![
                (mono(&[(Alpha, 1), (H, 1)]), int(1)),
                (mono(&[(Alpha, 2)]), rat(-1, 2)),
            ],
        ),
        kill("f^2 -> 0", &[(F, 2)]),
        kill("xi1*f -> 0", &[(Xi1, 1), (F, 1)]),
        kill("xi2*f -> 0", &[(Xi2, 1), (F, 1)]),
        kill("alpha*xi2 -> 0", &[(Alpha, 1), (Xi2, 1)]),
        kill("alpha*Lambda -> 0", &[(Alpha, 1), (Lambda, 1)]),
        kill("Theta^3 -> 0", &[(Theta, 3)]),
        kill("alpha^4 -> 0", &[(Alpha, 4)]),
        kill("Theta^2*Lambda -> 0", &[(Theta, 2), (Lambda, 1)]),
    ]
});

/// All rules, substitutions first.
pub fn rules() -> &'static [Rule] {
    &RULES
}

/// One rewrite step of `rule` at `m`, or `None` if the rule does not apply.
pub fn apply_rule(m: &Monomial, rule: &Rule) -> Option<LinComb> {
    if !rule.lhs.divides(m) {
        return None;
    }
    let rest = m.quotient(&rule.lhs);
    Some(
        rule.rhs
            .iter()
            .map(|(r, k)| (rest * *r, k.clone()))
            .collect(),
    )
}

fn accumulate(acc: &mut BTreeMap<Monomial, Rational>, m: Monomial, k: Rational) {
    let slot = acc.entry(m).or_insert_with(Rational::zero);
    *slot += k;
    if slot.is_zero() {
        acc.remove(&m);
    }
}

/// Normal form of `m` under the fixed strategy, recording the name of each
/// rule that fires.
pub fn reduce_traced(m: &Monomial, trace: &mut Vec<&'static str>) -> LinComb {
    let mut acc = BTreeMap::new();
    let mut stack = vec![(*m, Rational::one())];
    while let Some((cur, k)) = stack.pop() {
        if cur.degree() > TOP_DEGREE {
            trace.push("degree > 14 -> 0");
            continue;
        }
        let fired = rules()
            .iter()
            .filter(|r| r.kind == RuleKind::Substitution)
            .chain(rules().iter().filter(|r| r.kind == RuleKind::Kill))
            .find_map(|r| apply_rule(&cur, r).map(|out| (r.name, out)));
        match fired {
            Some((name, out)) => {
                trace.push(name);
                stack.extend(out.into_iter().map(|(nm, c)| (nm, c * &k)));
            }
            None => accumulate(&mut acc, cur, k),
        }
    }
    acc.into_iter().collect()
}

pub(crate) struct Tables {
    nf: HashMap<Monomial, LinComb>,
    pub(crate) basis: Vec<Monomial>,
}

static TABLES: Lazy<Tables> = Lazy::new(|| {
    let mut nf = HashMap::new();
    let mut basis = Vec::new();
    for m in all_monomials(TOP_DEGREE) {
        let reduced = reduce_traced(&m, &mut Vec::new());
        if reduced.len() == 1 && reduced[0].0 == m {
            basis.push(m);
        }
        nf.insert(m, reduced);
    }
    basis.sort();
    Tables { nf, basis }
});

pub(crate) fn tables() -> &'static Tables {
    &TABLES
}

/// Normal form of a single raw monomial. Monomials above the top degree are
/// zero.
pub fn normal_form(m: &Monomial) -> &'static [(Monomial, Rational)] {
    if m.degree() > TOP_DEGREE {
        return &[];
    }
    &tables().nf[m]
}

/// Every raw monomial (normal or not) of degree at most `max_degree`.
pub fn all_monomials(max_degree: u32) -> Vec<Monomial> {
    fn go(i: usize, budget: u32, cur: &mut [u32; 7], out: &mut Vec<Monomial>) {
        if i == Generator::ALL.len() {
            out.push(Monomial::new(*cur));
            return;
        }
        let d = Generator::ALL[i].degree();
        let mut e = 0;
        while e * d <= budget {
            cur[i] = e;
            go(i + 1, budget - e * d, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, max_degree, &mut [0; 7], &mut out);
    out
}

/// Outcome of the exhaustive confluence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub monomials: usize,
    pub multi_redex: usize,
    pub conflicts: Vec<Monomial>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// Number of rules applicable at `m`.
pub fn redex_count(m: &Monomial) -> usize {
    rules().iter().filter(|r| r.lhs.divides(m)).count()
}

/// For every monomial of degree at most 14, applies each applicable rule as
/// the first step, normalizes the results along every possible continuation,
/// and checks that all choices agree. Since the system terminates, this
/// certifies confluence on the whole ring.
pub fn check_confluence() -> ConfluenceReport {
    let mut memo: HashMap<Monomial, Option<BTreeMap<Monomial, Rational>>> = HashMap::new();
    let mut conflicts = Vec::new();
    let all = all_monomials(TOP_DEGREE);
    let mut multi = 0;
    for m in &all {
        if redex_count(m) >= 2 {
            multi += 1;
        }
        if unique_nf(m, &mut memo, &mut conflicts).is_none() && !conflicts.contains(m) {
            conflicts.push(*m);
        }
    }
    conflicts.sort();
    conflicts.dedup();
    ConfluenceReport {
        monomials: all.len(),
        multi_redex: multi,
        conflicts,
    }
}

fn unique_nf(
    m: &Monomial,
    memo: &mut HashMap<Monomial, Option<BTreeMap<Monomial, Rational>>>,
    conflicts: &mut Vec<Monomial>,
) -> Option<BTreeMap<Monomial, Rational>> {
    if m.degree() > TOP_DEGREE {
        return Some(BTreeMap::new());
    }
    if let Some(v) = memo.get(m) {
        return v.clone();
    }
    let mut outcomes: Vec<BTreeMap<Monomial, Rational>> = Vec::new();
    let mut failed = false;
    for rule in rules() {
        let Some(step) = apply_rule(m, rule) else {
            continue;
        };
        let mut acc = BTreeMap::new();
        for (nm, k) in step {
            match unique_nf(&nm, memo, conflicts) {
                Some(sub) => {
                    for (sm, sk) in sub {
                        accumulate(&mut acc, sm, sk * &k);
                    }
                }
                None => failed = true,
            }
        }
        outcomes.push(acc);
    }
    if outcomes.is_empty() {
        outcomes.push([(*m, Rational::one())].into());
    }
    let agree = outcomes.windows(2).all(|w| w[0] == w[1]);
    let result = if failed || !agree {
        conflicts.push(*m);
        None
    } else {
        outcomes.pop()
    };
    memo.insert(*m, result.clone());
    result
}
