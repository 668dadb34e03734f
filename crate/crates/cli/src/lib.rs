//! Command implementations behind the `vcalc` binary. Each command builds a
//! serializable report and renders it as text, JSON or CSV.

mod args;

use std::io::Write;

use anyhow::anyhow;
use serde::{Deserialize, Serialize};

pub use args::{BoundArgs, Cli, Command, Format, SuiteArg};

use vcalc_core::bounds::{
    destabilization_check, hirschowitz_bound, hirschowitz_epsilon, sb_gap_bound,
    slope_direct_image, small_rank_certificate, BoundReport, BoundsError, CurveParams, DirectImage,
};
use vcalc_core::coef::{int, prettify, rational_string, CoefPoly, Rational};
use vcalc_core::model::{
    derive_counts, derive_counts_substituted, validate_prime, CountReport, CountValues, ModelError,
};
use vcalc_core::ring::{parse_class, RingClass};
use vcalc_core::verify::{all_passed, run as run_suite, seed_from_env, CheckResult, Suite};

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// `verify` ran but at least one check failed (exit code 1).
    ChecksFailed,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad input (exit code 2).
    Usage(anyhow::Error),
    /// A computation or I/O failure (exit code 1).
    Internal(anyhow::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.into())
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn model_failure(e: ModelError) -> Failure {
    match e {
        ModelError::PrimeRejected(..) => Failure::Usage(e.into()),
        _ => Failure::Internal(e.into()),
    }
}

/// One row of `table`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: i64,
    #[serde(with = "rational_string")]
    pub lambda: Rational,
    #[serde(rename = "l_D", with = "rational_string")]
    pub l_d: Rational,
    #[serde(rename = "l_Q", with = "rational_string")]
    pub l_q: Rational,
    #[serde(rename = "l_B", with = "rational_string")]
    pub l_b: Rational,
    #[serde(rename = "deg_V", with = "rational_string")]
    pub deg_v: Rational,
    /// `p³ − deg V`, which must equal `l(B)`.
    #[serde(rename = "p3_minus_deg_V", with = "rational_string")]
    pub p3_minus_deg_v: Rational,
    /// The substituted and symbolic routes give the same numbers.
    pub routes_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub expression: String,
    pub canonical: String,
    pub normal_form: RingClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral: Option<CoefPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum BoundOutput {
    Subbundle {
        r: i64,
        n: i64,
        g: i64,
        delta: i64,
        epsilon: i64,
        #[serde(with = "rational_string")]
        bound: Rational,
    },
    Destabilization {
        params: CurveParams,
        direct_image: DirectImage,
        #[serde(with = "rational_string")]
        gap_rank2: Rational,
        destabilization: BoundReport,
        small_rank: BoundReport,
    },
}

/// Runs one command, writing the rendered result to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let style = Style {
        format: cli.format,
        ascii: cli.ascii,
    };
    match &cli.command {
        Command::Derive { primes } => cmd_derive(primes, style, out),
        Command::Table { primes } => cmd_table(primes, style, out),
        Command::Verify { suite } => cmd_verify((*suite).into(), style, out),
        Command::Eval {
            expression,
            integrate,
        } => cmd_eval(expression, *integrate, style, out),
        Command::Bound(b) => cmd_bound(b, style, out),
    }
}

#[derive(Debug, Clone, Copy)]
struct Style {
    format: Format,
    ascii: bool,
}

impl Style {
    fn math(&self, ascii: &str) -> String {
        if self.ascii {
            ascii.to_string()
        } else {
            prettify(ascii)
        }
    }

    fn label<'a>(&self, ascii: &'a str, unicode: &'a str) -> &'a str {
        if self.ascii {
            ascii
        } else {
            unicode
        }
    }
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<Outcome, Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(Outcome::Success)
}

const COUNT_FIELDS: [(&str, &str, &str); 7] = [
    ("lambda", "lambda", "λ"),
    ("l_D", "l(D)", "l(D)"),
    ("l_Q", "l(Q)", "l(Q)"),
    ("l_Q0", "l(Q0)", "l(Q₀)"),
    ("l_B", "l(B)", "l(B)"),
    ("l_B_theta", "l(B_theta)", "l(B_θ)"),
    ("deg_V", "deg V", "deg V"),
];

fn count_polys(r: &CountReport) -> [&CoefPoly; 7] {
    let c = &r.counts;
    [
        &c.lambda,
        &c.l_d,
        &c.l_q,
        &c.l_q0,
        &c.l_b,
        &c.l_b_theta,
        &c.deg_v,
    ]
}

fn count_values(v: &CountValues) -> [&Rational; 7] {
    [
        &v.lambda,
        &v.l_d,
        &v.l_q,
        &v.l_q0,
        &v.l_b,
        &v.l_b_theta,
        &v.deg_v,
    ]
}

fn cmd_derive(primes: &[i64], style: Style, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let report = derive_counts(primes).map_err(model_failure)?;
    match style.format {
        Format::Json => write_json(&report, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["p"];
            header.extend(COUNT_FIELDS.iter().map(|f| f.0));
            w.write_record(&header)?;
            let mut row = vec!["symbolic".to_string()];
            row.extend(count_polys(&report).iter().map(|c| c.to_string()));
            w.write_record(&row)?;
            for (p, v) in &report.evaluations {
                let mut row = vec![p.to_string()];
                row.extend(count_values(v).iter().map(|x| x.to_string()));
                w.write_record(&row)?;
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
        Format::Text => {
            let width = COUNT_FIELDS
                .iter()
                .map(|f| style.label(f.1, f.2).chars().count())
                .max()
                .unwrap();
            for (field, poly) in COUNT_FIELDS.iter().zip(count_polys(&report)) {
                let name = style.label(field.1, field.2);
                let pad = width - name.chars().count();
                writeln!(out, "{name}{:pad$} = {}", "", style.math(&poly.to_string()))?;
            }
            for (p, v) in &report.evaluations {
                // l(B), deg V, l(Q), l(B_theta), l(Q0) first: the headline row
                let [lambda, l_d, l_q, l_q0, l_b, l_bt, deg_v] = count_values(v);
                writeln!(
                    out,
                    "p = {p}: l(B) = {l_b}, deg V = {deg_v}, l(Q) = {l_q}, {} = {l_bt}, {} = {l_q0}, l(D) = {l_d}, {} = {lambda}",
                    style.label("l(B_theta)", "l(B_θ)"),
                    style.label("l(Q0)", "l(Q₀)"),
                    style.label("lambda", "λ"),
                )?;
            }
            Ok(Outcome::Success)
        }
    }
}

fn table_rows(primes: &[i64]) -> Result<Vec<TableRow>, Failure> {
    if primes.is_empty() {
        return Err(usage(anyhow!("--primes must list at least one prime")));
    }
    for p in primes {
        validate_prime(*p).map_err(model_failure)?;
    }
    let symbolic = derive_counts(primes).map_err(model_failure)?;
    primes
        .iter()
        .map(|&p| {
            let v = derive_counts_substituted(p).map_err(model_failure)?;
            let p3_minus_deg_v = int(p * p * p) - &v.deg_v;
            Ok(TableRow {
                p,
                routes_agree: symbolic.evaluations[&p] == v && p3_minus_deg_v == v.l_b,
                lambda: v.lambda,
                l_d: v.l_d,
                l_q: v.l_q,
                l_b: v.l_b,
                deg_v: v.deg_v,
                p3_minus_deg_v,
            })
        })
        .collect()
}

fn cmd_table(primes: &[i64], style: Style, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let rows = table_rows(primes)?;
    if rows.iter().any(|r| !r.routes_agree) {
        return Err(Failure::Internal(anyhow!(
            "substituted and symbolic counts disagree"
        )));
    }
    match style.format {
        Format::Json => write_json(&rows, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
        Format::Text => {
            let header = [
                "p",
                style.label("lambda", "λ"),
                "l(D)",
                "l(Q)",
                "l(B)",
                "deg V",
                style.label("p^3 - deg V", "p³ − deg V"),
            ];
            let cells: Vec<[String; 7]> = rows
                .iter()
                .map(|r| {
                    [
                        r.p.to_string(),
                        r.lambda.to_string(),
                        r.l_d.to_string(),
                        r.l_q.to_string(),
                        r.l_b.to_string(),
                        r.deg_v.to_string(),
                        r.p3_minus_deg_v.to_string(),
                    ]
                })
                .collect();
            let widths: Vec<usize> = (0..7)
                .map(|i| {
                    cells
                        .iter()
                        .map(|c| c[i].len())
                        .chain([header[i].chars().count()])
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |parts: Vec<&str>| {
                parts
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{:>pad$}{s}", "", pad = w - s.chars().count()))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for c in &cells {
                writeln!(out, "{}", line(c.iter().map(String::as_str).collect()))?;
            }
            Ok(Outcome::Success)
        }
    }
}

fn cmd_verify(suite: Suite, style: Style, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let seed = seed_from_env().map_err(|e| usage(anyhow!(e)))?;
    let checks = run_suite(suite, seed);
    let passed = all_passed(&checks);
    let report = VerifyReport {
        suite,
        seed,
        passed,
        checks,
    };
    match style.format {
        Format::Json => {
            write_json(&report, out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for c in &report.checks {
                w.serialize(c)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for c in &report.checks {
                let line = c.to_string();
                writeln!(
                    out,
                    "{}",
                    if style.ascii {
                        line
                    } else {
                        line.replace("<=", "≤")
                    }
                )?;
            }
            let ok = report.checks.iter().filter(|c| c.passed).count();
            writeln!(
                out,
                "{ok}/{} checks passed (seed {seed})",
                report.checks.len()
            )?;
        }
    }
    Ok(if passed {
        Outcome::Success
    } else {
        Outcome::ChecksFailed
    })
}

fn caret(expression: &str, position: usize) -> String {
    format!("  {expression}\n  {}^", " ".repeat(position))
}

fn cmd_eval(
    expression: &str,
    integrate: bool,
    style: Style,
    out: &mut dyn Write,
) -> Result<Outcome, Failure> {
    let class = parse_class(expression)
        .map_err(|e| usage(anyhow!("{e}\n{}", caret(expression, e.position))))?;
    let integral = if integrate {
        Some(
            class
                .integrate_top_jz()
                .map_err(|e| usage(anyhow!("cannot integrate: {e}")))?,
        )
    } else {
        None
    };
    let report = EvalReport {
        expression: expression.to_string(),
        canonical: class.to_string(),
        normal_form: class,
        integral,
    };
    match style.format {
        Format::Json => write_json(&report, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["monomial", "coef"])?;
            for (m, c) in report.normal_form.terms() {
                w.write_record([m.to_string(), c.to_string()])?;
            }
            if let Some(i) = &report.integral {
                w.write_record(["integral".to_string(), i.to_string()])?;
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
        Format::Text => {
            writeln!(out, "{}", report.normal_form.render(!style.ascii))?;
            if let Some(i) = &report.integral {
                writeln!(
                    out,
                    "{} = {}",
                    style.label("integral", "∫"),
                    style.math(&i.to_string())
                )?;
            }
            Ok(Outcome::Success)
        }
    }
}

fn bounds_usage(e: BoundsError) -> Failure {
    usage(e)
}

fn bound_output(b: &BoundArgs) -> Result<BoundOutput, Failure> {
    let subbundle_mode = b.r.is_some() || b.n.is_some() || b.delta.is_some();
    if subbundle_mode {
        if b.p.is_some() || b.d.is_some() {
            return Err(usage(anyhow!(
                "--p/--d cannot be combined with --r/--n/--delta"
            )));
        }
        let (Some(r), Some(n)) = (b.r, b.n) else {
            return Err(usage(anyhow!("the subbundle bound needs --r and --n")));
        };
        if n < 1 || n > r - 1 {
            return Err(bounds_usage(BoundsError::SubRank { r, n }));
        }
        let (Some(g), Some(delta)) = (b.g, b.delta) else {
            return Err(usage(anyhow!("the subbundle bound needs --g and --delta")));
        };
        let epsilon = hirschowitz_epsilon(r, n, g, delta).map_err(bounds_usage)?;
        let bound = hirschowitz_bound(r, n, g, delta).map_err(bounds_usage)?;
        return Ok(BoundOutput::Subbundle {
            r,
            n,
            g,
            delta,
            epsilon,
            bound,
        });
    }
    let (Some(g), Some(p), Some(d)) = (b.g, b.p, b.d) else {
        return Err(usage(anyhow!(
            "give either --r --n --g --delta or --g --p --d"
        )));
    };
    let params = CurveParams::new(g, p, d).map_err(bounds_usage)?;
    Ok(BoundOutput::Destabilization {
        params,
        direct_image: slope_direct_image(&params),
        gap_rank2: sb_gap_bound(2, g),
        destabilization: destabilization_check(&params).map_err(bounds_usage)?,
        small_rank: small_rank_certificate(&params),
    })
}

fn cmd_bound(b: &BoundArgs, style: Style, out: &mut dyn Write) -> Result<Outcome, Failure> {
    let report = bound_output(b)?;
    let pairs: Vec<(String, String)> = match &report {
        BoundOutput::Subbundle { epsilon, bound, .. } => vec![
            (style.label("epsilon", "ε").to_string(), epsilon.to_string()),
            ("bound".into(), bound.to_string()),
        ],
        BoundOutput::Destabilization {
            direct_image,
            gap_rank2,
            destabilization,
            small_rank,
            ..
        } => vec![
            (
                style.label("mu(F_*L)", "μ(F_*L)").into(),
                direct_image.slope.to_string(),
            ),
            ("deg F_*L".into(), direct_image.degree.to_string()),
            ("rank F_*L".into(), direct_image.rank.to_string()),
            ("rank-2 gap bound".into(), gap_rank2.to_string()),
            (
                "subbundle slope bound".into(),
                destabilization.value.to_string(),
            ),
            ("margin".into(), destabilization.margin.to_string()),
            ("satisfied".into(), destabilization.satisfied.to_string()),
            ("witness".into(), destabilization.witness.clone()),
            ("small-rank slack".into(), small_rank.margin.to_string()),
            (
                "small-rank certified".into(),
                small_rank.satisfied.to_string(),
            ),
        ]
        .into_iter()
        .chain(
            destabilization
                .warnings
                .iter()
                .chain(&small_rank.warnings)
                .map(|w| ("warning".to_string(), w.clone())),
        )
        .collect(),
    };
    match style.format {
        Format::Json => write_json(&report, out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["quantity", "value"])?;
            for (k, v) in &pairs {
                w.write_record([k, v])?;
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
        Format::Text => {
            for (k, v) in &pairs {
                let v = if k == "witness" || k == "warning" {
                    v.clone()
                } else {
                    style.math(v)
                };
                writeln!(out, "{k} = {v}")?;
            }
            Ok(Outcome::Success)
        }
    }
}
