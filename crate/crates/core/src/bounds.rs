//! Closed-form degree bounds, the dimension-shift substitution, the
//! sharpest uniform degree accepted by the exact margin, and prior bounds
//! for comparison.
//!
//! Every bound reads `d_i >= numerator / denominator + 2`; the reported
//! minimal degree is `ceil(numerator / denominator) + 2`, computed in
//! integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed};

use crate::error::{Error, Result};
use crate::segre::{bigness_margin, CiSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// Bigness of `O(1) ⊗ π^*O(-a)`.
    ThmBig,
    /// Base locus of `O(1) ⊗ O(-a)` of codimension at least 2.
    CorGg,
    /// Ample outside codimension 2.
    CorAmple,
    /// Empty stable base locus of `O(1) ⊗ π^*O(-a)`.
    MainGg,
    /// Ample cotangent bundle.
    MainAmple,
    CurveGg,
    CurveAmple,
    /// Least `N` at which `d_i >= 3` suffices.
    ThresholdN,
}

impl FormulaId {
    pub const ALL: [FormulaId; 8] = [
        FormulaId::ThmBig,
        FormulaId::CorGg,
        FormulaId::CorAmple,
        FormulaId::MainGg,
        FormulaId::MainAmple,
        FormulaId::CurveGg,
        FormulaId::CurveAmple,
        FormulaId::ThresholdN,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::ThmBig => "thm-big",
            FormulaId::CorGg => "cor-gg",
            FormulaId::CorAmple => "cor-ample",
            FormulaId::MainGg => "main-gg",
            FormulaId::MainAmple => "main-ample",
            FormulaId::CurveGg => "curve-gg",
            FormulaId::CurveAmple => "curve-ample",
            FormulaId::ThresholdN => "threshold-N",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub formula: FormulaId,
    pub n: u32,
    pub ambient: u32,
    pub a: Option<i64>,
    pub applicable: bool,
    pub reason: Option<String>,
    pub numerator: Option<BigInt>,
    pub denominator: Option<BigInt>,
    pub min_degree: Option<BigInt>,
    /// Only for [`FormulaId::ThresholdN`].
    pub threshold_n: Option<u64>,
    pub constraints: Vec<&'static str>,
}

impl BoundResult {
    fn inapplicable(
        formula: FormulaId,
        n: u32,
        ambient: u32,
        a: Option<i64>,
        constraints: Vec<&'static str>,
        reason: String,
    ) -> Self {
        Self {
            formula,
            n,
            ambient,
            a,
            applicable: false,
            reason: Some(reason),
            numerator: None,
            denominator: None,
            min_degree: None,
            threshold_n: None,
            constraints,
        }
    }

    fn fraction(
        formula: FormulaId,
        n: u32,
        ambient: u32,
        a: Option<i64>,
        constraints: Vec<&'static str>,
        numerator: BigInt,
        denominator: BigInt,
    ) -> Self {
        debug_assert!(denominator.is_positive());
        let min_degree = numerator.div_ceil(&denominator) + 2;
        Self {
            formula,
            n,
            ambient,
            a,
            applicable: true,
            reason: None,
            numerator: Some(numerator),
            denominator: Some(denominator),
            min_degree: Some(min_degree),
            threshold_n: None,
            constraints,
        }
    }

    /// `min_degree` as a machine integer, for applicable bounds.
    pub fn min_degree_u64(&self) -> Option<u64> {
        self.min_degree.as_ref().and_then(|d| u64::try_from(d).ok())
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn twist_reason(a: i64) -> Option<String> {
    (a < -1).then(|| format!("a = {a} < -1"))
}

/// `d_i >= n((2n-1)(a+2)+2) / (N-2n+1) + 2`.
pub fn bound_thm_big(n: u32, ambient: u32, a: i64) -> BoundResult {
    let id = FormulaId::ThmBig;
    let constraints = vec!["c >= n", "a >= -1"];
    if let Some(r) = codim_reason(n, ambient, n as i64, "c >= n").or_else(|| twist_reason(a)) {
        return BoundResult::inapplicable(id, n, ambient, Some(a), constraints, r);
    }
    let (ni, bn) = (n as i64, ambient as i64);
    let num = big(ni) * (big(2 * ni - 1) * big(a + 2) + 2);
    BoundResult::fraction(
        id,
        n,
        ambient,
        Some(a),
        constraints,
        num,
        big(bn - 2 * ni + 1),
    )
}

/// Checks `n >= 1`, `N > n` and `N - n >= need`.
fn codim_reason(n: u32, ambient: u32, need: i64, label: &str) -> Option<String> {
    if n == 0 {
        return Some("n must be at least 1".into());
    }
    if ambient <= n {
        return Some(format!("N = {ambient} must exceed n = {n}"));
    }
    let c = ambient as i64 - n as i64;
    (c < need).then(|| format!("{label} fails: c = {c}, needs {need}"))
}

/// `d_i >= ((2n^2-n)(a+5) + 2n) / (N-2n+1) + 2`.
pub fn bound_cor_gg(n: u32, ambient: u32, a: i64) -> BoundResult {
    let id = FormulaId::CorGg;
    let constraints = vec!["c >= n", "a >= -1"];
    if let Some(r) = codim_reason(n, ambient, n as i64, "c >= n").or_else(|| twist_reason(a)) {
        return BoundResult::inapplicable(id, n, ambient, Some(a), constraints, r);
    }
    let (ni, bn) = (n as i64, ambient as i64);
    let num = big(2 * ni * ni - ni) * big(a + 5) + 2 * ni;
    BoundResult::fraction(
        id,
        n,
        ambient,
        Some(a),
        constraints,
        num,
        big(bn - 2 * ni + 1),
    )
}

/// `d_i >= (12n^2 - 4n) / (N-2n+1) + 2`.
pub fn bound_cor_ample(n: u32, ambient: u32) -> BoundResult {
    let id = FormulaId::CorAmple;
    let constraints = vec!["c >= n"];
    if let Some(r) = codim_reason(n, ambient, n as i64, "c >= n") {
        return BoundResult::inapplicable(id, n, ambient, None, constraints, r);
    }
    let (ni, bn) = (n as i64, ambient as i64);
    let num = big(12 * ni * ni - 4 * ni);
    BoundResult::fraction(id, n, ambient, None, constraints, num, big(bn - 2 * ni + 1))
}

fn surface_or_higher(n: u32) -> Option<String> {
    (n < 2).then(|| "requires n > 1; for curves use curve-gg / curve-ample".to_string())
}

/// `d_i >= ((8n^2-10n+3)a + 40n^2 - 46n + 13) / (N-3n+2) + 2`.
pub fn bound_main_gg(n: u32, ambient: u32, a: i64) -> BoundResult {
    let id = FormulaId::MainGg;
    let constraints = vec!["c >= 2n-1", "n > 1", "a >= -1"];
    let ni = n as i64;
    if let Some(r) = surface_or_higher(n)
        .or_else(|| codim_reason(n, ambient, 2 * ni - 1, "c >= 2n-1"))
        .or_else(|| twist_reason(a))
    {
        return BoundResult::inapplicable(id, n, ambient, Some(a), constraints, r);
    }
    let num = big(8 * ni * ni - 10 * ni + 3) * big(a) + big(40 * ni * ni - 46 * ni + 13);
    let den = big(ambient as i64 - 3 * ni + 2);
    BoundResult::fraction(id, n, ambient, Some(a), constraints, num, den)
}

/// `d_i >= (2n-2)(24n-28) / (N-3n+3) + 2`.
pub fn bound_main_ample(n: u32, ambient: u32) -> BoundResult {
    let id = FormulaId::MainAmple;
    let constraints = vec!["c >= 2n-2", "n > 1"];
    let ni = n as i64;
    if let Some(r) =
        surface_or_higher(n).or_else(|| codim_reason(n, ambient, 2 * ni - 2, "c >= 2n-2"))
    {
        return BoundResult::inapplicable(id, n, ambient, None, constraints, r);
    }
    let num = big(2 * ni - 2) * big(24 * ni - 28);
    let den = big(ambient as i64 - 3 * ni + 3);
    BoundResult::fraction(id, n, ambient, None, constraints, num, den)
}

/// `48n^2 - 101n + 53`: from this `N` on, `d_i >= 3` gives an ample
/// cotangent bundle.
pub fn threshold_n_for_degree3(n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "threshold needs n >= 2, got {n}"
        )));
    }
    let n = n as u64;
    Ok(48 * n * n + 53 - 101 * n)
}

pub fn bound_threshold(n: u32) -> BoundResult {
    let id = FormulaId::ThresholdN;
    let constraints = vec!["n > 1"];
    match threshold_n_for_degree3(n) {
        Ok(t) => BoundResult {
            formula: id,
            n,
            ambient: t as u32,
            a: None,
            applicable: true,
            reason: None,
            numerator: None,
            denominator: None,
            min_degree: Some(big(3)),
            threshold_n: Some(t),
            constraints,
        },
        Err(e) => BoundResult::inapplicable(id, n, 0, None, constraints, e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveVerdict {
    pub degree_sum: u128,
    /// `sum d_i >= N + 1`
    pub globally_generated: bool,
    /// `sum d_i > N + 1`
    pub ample: bool,
}

/// For a curve, `Ω_X` has degree `(sum d_i - N - 1)·deg X`.
pub fn curve_bounds(ambient: u32, degrees: &[u64]) -> Result<CurveVerdict> {
    if ambient < 2 || degrees.len() != ambient as usize - 1 {
        return Err(Error::InvalidSpec(format!(
            "a curve in P^{ambient} needs {} degrees, got {}",
            ambient.saturating_sub(1),
            degrees.len()
        )));
    }
    let degree_sum: u128 = degrees.iter().map(|&d| d as u128).sum();
    let target = ambient as u128 + 1;
    Ok(CurveVerdict {
        degree_sum,
        globally_generated: degree_sum >= target,
        ample: degree_sum > target,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Track {
    GloballyGenerated { a: i64 },
    Ample,
}

/// Evaluates the codimension-2 corollary at `(m, M) = (n + u, N + u)`.
///
/// A codimension-2 failure locus in dimension `m` has codimension at least
/// `u + 2` after `u` hyperplane sections, which exceeds the dimension once
/// `u` is large enough; the bound at `(m, M)` then holds everywhere for the
/// dimension-`n` sections. `u = n - 1` on the gg track and `u = n - 2` on
/// the ample track reproduce the two parts of the main theorem.
pub fn reduction_substitute(n: u32, ambient: u32, u: u32, track: Track) -> Result<BoundResult> {
    let (m, big_m) = (n + u, ambient + u);
    let shifted = match track {
        Track::GloballyGenerated { a } => bound_cor_gg(m, big_m, a),
        Track::Ample => bound_cor_ample(m, big_m),
    };
    if !shifted.applicable {
        return Err(Error::NotApplicable(format!(
            "corollary at (m, M) = ({m}, {big_m}): {}",
            shifted.reason.unwrap_or_default()
        )));
    }
    Ok(BoundResult {
        n,
        ambient,
        ..shifted
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub d_min: u64,
    pub closed_form: u64,
    pub sharpening: u64,
}

/// Smallest uniform degree `d >= 2` whose exact margin is positive,
/// scanning upward from 2. The closed form of [`bound_thm_big`] caps the
/// scan.
pub fn search_min_uniform_degree(n: u32, ambient: u32, a: i64) -> Result<SearchResult> {
    let closed = bound_thm_big(n, ambient, a);
    if !closed.applicable {
        return Err(Error::NotApplicable(closed.reason.unwrap_or_default()));
    }
    let closed_form = closed.min_degree_u64().ok_or_else(|| {
        Error::InvalidArgument("closed-form bound does not fit in 64 bits".into())
    })?;
    for d in 2..=closed_form {
        let spec = CiSpec::uniform(n, ambient, d)?;
        if bigness_margin(&spec, a)?.is_positive() {
            return Ok(SearchResult {
                d_min: d,
                closed_form,
                sharpening: closed_form - d,
            });
        }
    }
    unreachable!("margin is positive at the closed-form degree {closed_form}")
}

/// Prior degree bounds at fixed `(n, N)`, with this crate's main-ample
/// bound alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub n: u32,
    pub ambient: u32,
    pub c: u32,
    pub this_paper: BoundResult,
    /// `2N + 3`, for equal degrees.
    pub brotbek_2n3: BigInt,
    /// `c >= 3n - 2`
    pub brotbek_2n3_applicable: bool,
    /// `ceil((8N + 2) / (N - 3))`, surfaces only.
    pub brotbek_surface: Option<BigInt>,
    /// `16 c^2 (2N)^{2N + 2c}`
    pub deng: BigInt,
    /// `N^{N^2}`
    pub xie: BigInt,
}

pub fn deng_bound(ambient: u32, c: u32) -> BigInt {
    let (bn, c) = (ambient as u64, c as u64);
    BigInt::from(16u64 * c * c) * Pow::pow(BigInt::from(2 * bn), 2 * bn + 2 * c)
}

pub fn xie_bound(ambient: u32) -> BigInt {
    let bn = ambient as u64;
    Pow::pow(BigInt::from(bn), bn * bn)
}

pub fn brotbek_surface_bound(ambient: u32) -> Option<BigInt> {
    (ambient > 3).then(|| big(8 * ambient as i64 + 2).div_ceil(&big(ambient as i64 - 3)))
}

pub fn prior_bounds(n: u32, ambient: u32) -> Result<ComparisonRow> {
    if n == 0 || ambient <= n {
        return Err(Error::InvalidArgument(format!(
            "need N > n >= 1, got n = {n}, N = {ambient}"
        )));
    }
    let c = ambient - n;
    Ok(ComparisonRow {
        n,
        ambient,
        c,
        this_paper: bound_main_ample(n, ambient),
        brotbek_2n3: big(2 * ambient as i64 + 3),
        brotbek_2n3_applicable: c as i64 >= 3 * n as i64 - 2,
        brotbek_surface: if n == 2 {
            brotbek_surface_bound(ambient)
        } else {
            None
        },
        deng: deng_bound(ambient, c),
        xie: xie_bound(ambient),
    })
}
