use ampleness::bounds::{
    bound_cor_ample, bound_cor_gg, bound_main_ample, bound_main_gg, bound_thm_big, bound_threshold,
    curve_bounds, prior_bounds, search_min_uniform_degree, BoundResult, ComparisonRow, FormulaId,
};
use ampleness::segre::{check_bigness, sufficient_ratio_condition};
use ampleness::symfunc::verify_lemma_grid;
use ampleness::{BigInt, CiSpec};
use rayon::prelude::*;
use thiserror::Error;

use crate::args::{Command, DegreeArgs, FormulaArg};
use crate::output::{OutputDocument, Row};

/// Largest `N` accepted by `compare`; `N^{N^2}` has about 460k digits there.
pub const COMPARE_MAX_N: u32 = 400;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] ampleness::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Invalid(msg.into()))
}

fn row<I, K, V>(pairs: I) -> Row
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<String>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.into()))
        .collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn run(command: &Command) -> Result<OutputDocument> {
    match command {
        Command::Check {
            n,
            big_n,
            degrees,
            a,
            ..
        } => cmd_check(*n, *big_n, degrees, *a),
        Command::Bound {
            n,
            big_n,
            a,
            formula,
            degrees,
            sweep,
            ..
        } => match sweep {
            Some(grid) => cmd_bound_sweep(grid, *a, *formula),
            None => cmd_bound(*n, *big_n, *a, *formula, degrees),
        },
        Command::Search {
            n, big_n, a, sweep, ..
        } => match sweep {
            Some(grid) => cmd_search_sweep(grid, *a),
            None => {
                let (Some(n), Some(big_n)) = (n, big_n) else {
                    return invalid("search needs --n and --N (or --sweep)");
                };
                cmd_search(*n, *big_n, *a)
            }
        },
        Command::Compare {
            n,
            n_min,
            n_max,
            exact,
            ..
        } => cmd_compare(*n, *n_min, *n_max, *exact),
        Command::VerifyLemma { r, k, grid, .. } => cmd_verify_lemma(*r, *k, *grid),
    }
}

fn resolve_degrees(n: u32, big_n: u32, degrees: &DegreeArgs) -> Result<Option<Vec<u64>>> {
    match (&degrees.d, degrees.d_uniform) {
        (Some(d), _) => Ok(Some(d.clone())),
        (None, Some(u)) => {
            if big_n <= n {
                return invalid(format!("N = {big_n} must exceed n = {n}"));
            }
            Ok(Some(vec![u; (big_n - n) as usize]))
        }
        (None, None) => Ok(None),
    }
}

fn join_degrees(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn cmd_check(n: u32, big_n: u32, degrees: &DegreeArgs, a: i64) -> Result<OutputDocument> {
    let Some(d) = resolve_degrees(n, big_n, degrees)? else {
        return invalid("check needs --d or --d-uniform");
    };
    let spec = CiSpec::new(n, big_n, d.clone())?;
    let report = check_bigness(&spec, a)?;
    let sufficient = match sufficient_ratio_condition(&spec, a) {
        Ok(b) => b.to_string(),
        Err(ampleness::Error::NotApplicable(_)) => "not-applicable".into(),
        Err(e) => return Err(e.into()),
    };
    let (gg, ample) = match &report.curve {
        Some(v) => (v.globally_generated.to_string(), v.ample.to_string()),
        None => (String::new(), String::new()),
    };
    let mut doc = OutputDocument::new("check")
        .param("n", n)
        .param("N", big_n)
        .param("d", join_degrees(&d))
        .param("a", a);
    doc.results.push(row([
        ("margin", report.margin.to_string()),
        (
            "verdict",
            if report.criterion_positive {
                "PASS"
            } else {
                "FAIL"
            }
            .to_string(),
        ),
        ("criterion_positive", report.criterion_positive.to_string()),
        ("hypothesis_c_ge_n", report.hypothesis_c_ge_n.to_string()),
        (
            "line_free_general_heuristic",
            report.hypothesis_line_free_general.to_string(),
        ),
        ("b_n_minus_2", report.b_values.b_n_minus_2.to_string()),
        ("b_n_minus_1", report.b_values.b_n_minus_1.to_string()),
        ("b_n", report.b_values.b_n.to_string()),
        ("s_n_minus_1", report.segre_coeffs.0.to_string()),
        ("s_n", report.segre_coeffs.1.to_string()),
        ("sufficient_ratio_condition", sufficient),
        ("curve_gg", gg),
        ("curve_ample", ample),
    ]));
    doc.flags
        .insert("criterion_positive".into(), report.criterion_positive);
    doc.flags
        .insert("hypothesis_c_ge_n".into(), report.hypothesis_c_ge_n);
    doc.flags.insert(
        "hypothesis_line_free_general".into(),
        report.hypothesis_line_free_general,
    );
    doc.exit_hint = if report.criterion_positive { 0 } else { 1 };
    Ok(doc)
}

fn bound_row(b: &BoundResult) -> Row {
    row([
        ("formula", b.formula.to_string()),
        ("n", b.n.to_string()),
        (
            "N",
            if b.formula == FormulaId::ThresholdN {
                String::new()
            } else {
                b.ambient.to_string()
            },
        ),
        ("a", opt(&b.a)),
        ("applicable", b.applicable.to_string()),
        ("numerator", opt(&b.numerator)),
        ("denominator", opt(&b.denominator)),
        ("min_degree", opt(&b.min_degree)),
        ("threshold_N", opt(&b.threshold_n)),
        ("holds", String::new()),
        ("degree_sum", String::new()),
        ("constraints", b.constraints.join("; ")),
        ("reason", opt(&b.reason)),
    ])
}

fn curve_rows(n: u32, big_n: u32, d: Option<&[u64]>) -> Vec<Row> {
    let base = |id: FormulaId| {
        let mut r = bound_row(&BoundResult {
            formula: id,
            n,
            ambient: big_n,
            a: None,
            applicable: false,
            reason: None,
            numerator: None,
            denominator: None,
            min_degree: None,
            threshold_n: None,
            constraints: vec!["n = 1", "c = N - 1"],
        });
        r.insert("constraints".into(), "n = 1; c = N - 1".into());
        r
    };
    let mut gg = base(FormulaId::CurveGg);
    let mut ample = base(FormulaId::CurveAmple);
    let verdict = match (n, d) {
        (1, Some(d)) => curve_bounds(big_n, d).map_err(|e| e.to_string()),
        (1, None) => Err("needs --d or --d-uniform".to_string()),
        _ => Err(format!("curve formulas need n = 1, got n = {n}")),
    };
    match verdict {
        Ok(v) => {
            for (r, holds, cmp) in [
                (&mut gg, v.globally_generated, ">="),
                (&mut ample, v.ample, ">"),
            ] {
                r.insert("applicable".into(), "true".into());
                r.insert("holds".into(), holds.to_string());
                r.insert("degree_sum".into(), v.degree_sum.to_string());
                r.insert(
                    "reason".into(),
                    format!("sum d_i {cmp} N + 1 = {}", big_n + 1),
                );
            }
        }
        Err(reason) => {
            gg.insert("reason".into(), reason.clone());
            ample.insert("reason".into(), reason);
        }
    }
    vec![gg, ample]
}

fn formula_rows(n: u32, big_n: u32, a: i64, formula: FormulaArg) -> Vec<BoundResult> {
    let one = |f: FormulaArg| match f {
        FormulaArg::ThmBig => bound_thm_big(n, big_n, a),
        FormulaArg::CorGg => bound_cor_gg(n, big_n, a),
        FormulaArg::CorAmple => bound_cor_ample(n, big_n),
        FormulaArg::MainGg => bound_main_gg(n, big_n, a),
        FormulaArg::MainAmple => bound_main_ample(n, big_n),
        FormulaArg::ThresholdN => bound_threshold(n),
        FormulaArg::Curve | FormulaArg::All => unreachable!(),
    };
    match formula {
        FormulaArg::All => [
            FormulaArg::ThmBig,
            FormulaArg::CorGg,
            FormulaArg::CorAmple,
            FormulaArg::MainGg,
            FormulaArg::MainAmple,
            FormulaArg::ThresholdN,
        ]
        .into_iter()
        .map(one)
        .collect(),
        FormulaArg::Curve => Vec::new(),
        f => vec![one(f)],
    }
}

pub fn cmd_bound(
    n: Option<u32>,
    big_n: Option<u32>,
    a: i64,
    formula: FormulaArg,
    degrees: &DegreeArgs,
) -> Result<OutputDocument> {
    let Some(n) = n else {
        return invalid("bound needs --n (or --sweep)");
    };
    let mut doc = OutputDocument::new("bound").param("n", n);
    if formula == FormulaArg::ThresholdN {
        doc.results.push(bound_row(&bound_threshold(n)));
        return Ok(doc.param("formula", "threshold-N"));
    }
    let Some(big_n) = big_n else {
        return invalid("bound needs --N for every formula except threshold-N");
    };
    let d = resolve_degrees(n, big_n, degrees)?;
    if formula == FormulaArg::Curve && d.is_none() {
        return invalid("--formula curve needs --d or --d-uniform");
    }
    doc = doc.param("N", big_n).param("a", a);
    if let Some(d) = &d {
        doc = doc.param("d", join_degrees(d));
    }
    doc = doc.param("formula", formula_name(formula));
    doc.results = formula_rows(n, big_n, a, formula)
        .iter()
        .map(bound_row)
        .collect();
    if matches!(formula, FormulaArg::Curve | FormulaArg::All) {
        doc.results.extend(curve_rows(n, big_n, d.as_deref()));
    }
    Ok(doc)
}

fn formula_name(f: FormulaArg) -> &'static str {
    match f {
        FormulaArg::ThmBig => "thm-big",
        FormulaArg::CorGg => "cor-gg",
        FormulaArg::CorAmple => "cor-ample",
        FormulaArg::MainGg => "main-gg",
        FormulaArg::MainAmple => "main-ample",
        FormulaArg::Curve => "curve",
        FormulaArg::ThresholdN => "threshold-N",
        FormulaArg::All => "all",
    }
}

/// Parses `LO-HI:LO-HI` (or single values) into inclusive `n` and `N`
/// ranges and lists the pairs with `N > n` in `(n, N)` order.
pub fn parse_sweep(grid: &str) -> Result<Vec<(u32, u32)>> {
    let range = |s: &str| -> Result<(u32, u32)> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Invalid(format!("bad sweep bound {t:?}")))
        };
        let (lo, hi) = match s.split_once('-') {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return invalid(format!("empty sweep range {s:?}"));
        }
        Ok((lo, hi))
    };
    let Some((ns, bns)) = grid.split_once(':') else {
        return invalid("sweep must look like NLO-NHI:NLO-NHI, e.g. 2-4:5-20");
    };
    let (n_lo, n_hi) = range(ns)?;
    let (m_lo, m_hi) = range(bns)?;
    if n_lo == 0 {
        return invalid("sweep n range must start at 1 or more");
    }
    let pairs: Vec<(u32, u32)> = (n_lo..=n_hi)
        .flat_map(|n| (m_lo.max(n + 1)..=m_hi).map(move |m| (n, m)))
        .collect();
    if pairs.len() > 100_000 {
        return invalid(format!("sweep has {} pairs; limit is 100000", pairs.len()));
    }
    Ok(pairs)
}

pub fn cmd_bound_sweep(grid: &str, a: i64, formula: FormulaArg) -> Result<OutputDocument> {
    if formula == FormulaArg::Curve {
        return invalid("--sweep does not apply to --formula curve");
    }
    let pairs = parse_sweep(grid)?;
    let rows: Vec<Vec<Row>> = pairs
        .par_iter()
        .map(|&(n, big_n)| {
            formula_rows(n, big_n, a, formula)
                .iter()
                .filter(|b| b.formula != FormulaId::ThresholdN)
                .map(bound_row)
                .collect()
        })
        .collect();
    let mut doc = OutputDocument::new("bound")
        .param("sweep", grid)
        .param("a", a)
        .param("formula", formula_name(formula));
    doc.results = rows.into_iter().flatten().collect();
    Ok(doc)
}

fn search_row(n: u32, big_n: u32, a: i64) -> Row {
    let mut r = row([
        ("n", n.to_string()),
        ("N", big_n.to_string()),
        ("a", a.to_string()),
    ]);
    match search_min_uniform_degree(n, big_n, a) {
        Ok(s) => {
            r.insert("d_min".into(), s.d_min.to_string());
            r.insert("closed_form".into(), s.closed_form.to_string());
            r.insert("sharpening".into(), s.sharpening.to_string());
            r.insert("reason".into(), String::new());
        }
        Err(e) => {
            for k in ["d_min", "closed_form", "sharpening"] {
                r.insert(k.into(), String::new());
            }
            r.insert("reason".into(), e.to_string());
        }
    }
    r
}

pub fn cmd_search(n: u32, big_n: u32, a: i64) -> Result<OutputDocument> {
    let result = search_min_uniform_degree(n, big_n, a)?;
    let mut doc = OutputDocument::new("search")
        .param("n", n)
        .param("N", big_n)
        .param("a", a);
    doc.results.push(row([
        ("d_min", result.d_min.to_string()),
        ("closed_form", result.closed_form.to_string()),
        ("sharpening", result.sharpening.to_string()),
    ]));
    doc.flags.insert("sharpened".into(), result.sharpening > 0);
    Ok(doc)
}

pub fn cmd_search_sweep(grid: &str, a: i64) -> Result<OutputDocument> {
    let pairs = parse_sweep(grid)?;
    let mut doc = OutputDocument::new("search")
        .param("sweep", grid)
        .param("a", a);
    doc.results = pairs
        .par_iter()
        .map(|&(n, m)| search_row(n, m, a))
        .collect();
    Ok(doc)
}

/// `1.440e18`-style summary: four significant digits, truncated.
pub fn scientific(v: &BigInt) -> String {
    let s = v.to_string();
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", s.as_str()),
    };
    let exp = digits.len() - 1;
    let mut mantissa: String = digits.chars().take(4).collect();
    if mantissa.len() > 1 {
        mantissa.insert(1, '.');
    }
    format!("{sign}{mantissa}e{exp}")
}

fn comparison_row(c: &ComparisonRow, exact: bool) -> Row {
    let deng = c.deng.to_string();
    let xie = c.xie.to_string();
    let mut r = row([
        ("n", c.n.to_string()),
        ("N", c.ambient.to_string()),
        ("c", c.c.to_string()),
        ("this_paper", opt(&c.this_paper.min_degree)),
        ("this_paper_reason", opt(&c.this_paper.reason)),
        ("brotbek_2N3", c.brotbek_2n3.to_string()),
        (
            "brotbek_2N3_applicable",
            c.brotbek_2n3_applicable.to_string(),
        ),
        ("brotbek_surface", opt(&c.brotbek_surface)),
        ("deng_digits", deng.len().to_string()),
        ("deng_sci", scientific(&c.deng)),
        ("xie_digits", xie.len().to_string()),
        ("xie_sci", scientific(&c.xie)),
    ]);
    if exact {
        r.insert("deng".into(), deng);
        r.insert("xie".into(), xie);
    }
    r
}

pub fn cmd_compare(n: u32, n_min: u32, n_max: u32, exact: bool) -> Result<OutputDocument> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if n_min > n_max {
        return invalid(format!("Nmin = {n_min} exceeds Nmax = {n_max}"));
    }
    if n_min <= n {
        return invalid(format!("Nmin = {n_min} must exceed n = {n}"));
    }
    if n_max > COMPARE_MAX_N {
        return invalid(format!("Nmax = {n_max} exceeds the limit {COMPARE_MAX_N}"));
    }
    let rows: Vec<Row> = (n_min..=n_max)
        .into_par_iter()
        .map(|m| prior_bounds(n, m).map(|c| comparison_row(&c, exact)))
        .collect::<std::result::Result<_, _>>()?;
    let mut doc = OutputDocument::new("compare")
        .param("n", n)
        .param("Nmin", n_min)
        .param("Nmax", n_max)
        .param("exact", exact);
    doc.results = rows;
    Ok(doc)
}

pub fn cmd_verify_lemma(r: usize, k: Option<usize>, grid: u64) -> Result<OutputDocument> {
    let reports = verify_lemma_grid(r, k, grid)?;
    let mut doc = OutputDocument::new("verify-lemma")
        .param("r", r)
        .param(
            "k",
            k.map(|k| k.to_string()).unwrap_or_else(|| "all".into()),
        )
        .param("grid", grid);
    let passed = reports.iter().all(|rep| rep.passed());
    doc.results = reports
        .iter()
        .map(|rep| {
            row([
                ("r", rep.r.to_string()),
                ("k", rep.k.to_string()),
                ("grid", rep.grid_max.to_string()),
                ("tuples", rep.tuples.to_string()),
                ("inequality_failures", rep.inequality_failures.to_string()),
                ("monotonicity_checks", rep.monotonicity_checks.to_string()),
                (
                    "monotonicity_failures",
                    rep.monotonicity_failures.to_string(),
                ),
                ("equality_tuples", rep.equality_tuples.to_string()),
                (
                    "equality_only_all_equal",
                    rep.equality_exactly_at_constant.to_string(),
                ),
            ])
        })
        .collect();
    doc.flags.insert("passed".into(), passed);
    doc.exit_hint = if passed { 0 } else { 1 };
    Ok(doc)
}
