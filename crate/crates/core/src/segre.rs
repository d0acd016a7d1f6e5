//! Segre and Chern series of `Ω_X(2)` for a complete intersection
//! `X ⊂ P^N`, and the exact margin deciding bigness of
//! `O_{PΩ_X}(1) ⊗ π^*O_X(-a)`.
//!
//! With `F = O(1) ⊗ π^*O_X(2)` ample and `G = π^*O_X(a+2)` nef, `F - G` is
//! big when `F^{2n-1} > (2n-1) F^{2n-2}·G`. Both sides are `deg X` times
//! coefficients of the Segre series
//!
//! ```text
//! s(Ω_X(2)) = (1 - 2H) · prod_i (1 + (d_i - 2)H) / (1 - H)^{N+1},
//! ```
//!
//! so the test reduces to the sign of
//! `b_n - ((2n-1)(a+2)+2) b_{n-1} + 2(2n-1)(a+2) b_{n-2}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bounds::{curve_bounds, CurveVerdict};
use crate::error::{Error, Result};
use crate::series::{binomial, geometric_power, TruncatedSeries};
use crate::symfunc::{phi, ratio_lower_bound, ShiftedDegreeVector};

/// A complete intersection of dimension `n` in `P^N` cut out by
/// hypersurfaces of the listed degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CiSpec {
    n: u32,
    ambient: u32,
    degrees: Vec<u64>,
}

impl CiSpec {
    pub fn new(n: u32, ambient: u32, degrees: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("dimension n must be at least 1".into()));
        }
        if ambient <= n {
            return Err(Error::InvalidSpec(format!(
                "ambient dimension N = {ambient} must exceed n = {n}"
            )));
        }
        let c = (ambient - n) as usize;
        if degrees.len() != c {
            return Err(Error::InvalidSpec(format!(
                "expected c = N - n = {c} degrees, got {}",
                degrees.len()
            )));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidSpec(format!("degree {d} is below 2")));
        }
        Ok(Self {
            n,
            ambient,
            degrees,
        })
    }

    /// All `c = N - n` degrees equal to `d`.
    pub fn uniform(n: u32, ambient: u32, d: u64) -> Result<Self> {
        let c = ambient.saturating_sub(n) as usize;
        Self::new(n, ambient, vec![d; c])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N`
    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn codim(&self) -> u32 {
        self.ambient - self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn codim_at_least_dim(&self) -> bool {
        self.codim() >= self.n
    }

    /// Expected-dimension count for the Fano scheme of lines: a general
    /// member contains no line when `sum (d_i + 1) > 2(N - 1)`.
    ///
    /// This is a heuristic for general members, not an exact computation.
    pub fn line_free_general(&self) -> bool {
        let conditions: u128 = self.degrees.iter().map(|&d| d as u128 + 1).sum();
        conditions > 2 * (self.ambient as u128 - 1)
    }
}

fn shift_product(spec: &CiSpec, sign: i64, order: usize) -> TruncatedSeries {
    let phis = phi(spec, order);
    let signed = phis
        .into_iter()
        .enumerate()
        .map(|(k, p)| if sign < 0 && k % 2 == 1 { -p } else { p });
    TruncatedSeries::new(signed, order).expect("nonempty")
}

/// Total Segre class of `Ω_X(2)` as coefficients of `H^0..H^n`.
pub fn segre_series(spec: &CiSpec) -> TruncatedSeries {
    let order = spec.n as usize;
    let euler = TruncatedSeries::linear(1, -2, order);
    let conormal = shift_product(spec, 1, order);
    let binomials = geometric_power(spec.ambient as u64, order).expect("N >= 2");
    euler
        .mul(&conormal)
        .and_then(|s| s.mul(&binomials))
        .expect("equal orders")
}

/// Total Chern class of `Ω_X(2)`,
/// `(1 + H)^{N+1} / ((1 + 2H) · prod_i (1 - (d_i - 2)H))`, up to `H^n`.
pub fn chern_series(spec: &CiSpec) -> TruncatedSeries {
    let order = spec.n as usize;
    let ambient_part = TruncatedSeries::linear(1, 1, order).pow(spec.ambient as u64 + 1);
    let quotient = TruncatedSeries::linear(1, 2, order)
        .mul(&shift_product(spec, -1, order))
        .expect("equal orders");
    ambient_part
        .mul(&quotient.invert().expect("constant term is 1"))
        .expect("equal orders")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BValues {
    pub b_n_minus_2: BigInt,
    pub b_n_minus_1: BigInt,
    pub b_n: BigInt,
}

fn b_coeff(phis: &[BigInt], ambient: u64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    (0..=j)
        .map(|k| &phis[k as usize] * binomial(ambient + (j - k) as u64, ambient as i64))
        .sum()
}

/// `b_j = sum_{k=0}^{j} phi_k · binomial(N + j - k, N)` for `j = n-2, n-1, n`,
/// evaluated directly from the sums (not from [`segre_series`]).
pub fn b_coeffs(spec: &CiSpec) -> BValues {
    let n = spec.n as i64;
    let ambient = spec.ambient as u64;
    let phis = phi(spec, spec.n as usize);
    BValues {
        b_n_minus_2: b_coeff(&phis, ambient, n - 2),
        b_n_minus_1: b_coeff(&phis, ambient, n - 1),
        b_n: b_coeff(&phis, ambient, n),
    }
}

fn check_twist(a: i64) -> Result<()> {
    if a < -1 {
        return Err(Error::TwistOutOfRange(a));
    }
    Ok(())
}

/// `(2n-1)(a+2)`, the factor `r` in `F^r > r F^{r-1}·G` times `deg G`.
fn twist_weight(n: u32, a: i64) -> BigInt {
    BigInt::from(2 * n as i64 - 1) * BigInt::from(a + 2)
}

/// `b_n - ((2n-1)(a+2)+2) b_{n-1} + 2(2n-1)(a+2) b_{n-2}`.
pub fn bigness_margin(spec: &CiSpec, a: i64) -> Result<BigInt> {
    check_twist(a)?;
    let b = b_coeffs(spec);
    let t = twist_weight(spec.n, a);
    Ok(&b.b_n - (&t + 2) * &b.b_n_minus_1 + 2 * &t * &b.b_n_minus_2)
}

/// The same margin expanded over `k`:
/// `sum_k binomial(N+n-k, N) (phi_k - (T+2) phi_{k-1} + 2T phi_{k-2})`.
pub fn bigness_margin_termwise(spec: &CiSpec, a: i64) -> Result<BigInt> {
    check_twist(a)?;
    let n = spec.n as usize;
    let ambient = spec.ambient as u64;
    let phis = phi(spec, n);
    let t = twist_weight(spec.n, a);
    let zero = BigInt::zero();
    let at = |k: isize| if k < 0 { &zero } else { &phis[k as usize] };
    Ok((0..=n)
        .map(|k| {
            let ki = k as isize;
            let bracket = at(ki) - (&t + 2) * at(ki - 1) + 2 * &t * at(ki - 2);
            binomial(ambient + (n - k) as u64, ambient as i64) * bracket
        })
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BignessReport {
    pub a: i64,
    pub margin: BigInt,
    pub criterion_positive: bool,
    pub hypothesis_c_ge_n: bool,
    /// Fano-scheme dimension count; see [`CiSpec::line_free_general`].
    pub hypothesis_line_free_general: bool,
    pub b_values: BValues,
    /// `(s_{n-1}, s_n)` as coefficients of `H^{n-1}` and `H^n`.
    pub segre_coeffs: (BigInt, BigInt),
    /// Set for curves, where ampleness is decided by `sum d_i > N + 1`.
    pub curve: Option<CurveVerdict>,
}

impl BignessReport {
    /// Criterion positive with both geometric hypotheses in place.
    pub fn verdict(&self) -> bool {
        self.criterion_positive && self.hypothesis_c_ge_n && self.hypothesis_line_free_general
    }
}

pub fn check_bigness(spec: &CiSpec, a: i64) -> Result<BignessReport> {
    let margin = bigness_margin(spec, a)?;
    let segre = segre_series(spec);
    let n = spec.n as usize;
    let curve = if spec.n == 1 {
        Some(curve_bounds(spec.ambient, spec.degrees())?)
    } else {
        None
    };
    Ok(BignessReport {
        a,
        criterion_positive: margin.is_positive(),
        margin,
        hypothesis_c_ge_n: spec.codim_at_least_dim(),
        hypothesis_line_free_general: spec.line_free_general(),
        b_values: b_coeffs(spec),
        segre_coeffs: (segre.coeff(n - 1).clone(), segre.coeff(n).clone()),
        curve,
    })
}

/// Conservative test: every ratio `phi_k / phi_{k-1}` is bounded below by
/// `(c-k+1)/k · min(d_i - 2)`, and when that bound reaches
/// `(2n-1)(a+2)+2` for all `1 <= k <= n` each bracket of the termwise
/// margin is nonnegative. Needs every `d_i >= 3`.
pub fn sufficient_ratio_condition(spec: &CiSpec, a: i64) -> Result<bool> {
    check_twist(a)?;
    let shifted = ShiftedDegreeVector::from_degrees(spec.degrees())?;
    let xmin = shifted.min_shift();
    if xmin == 0 {
        return Err(Error::NotApplicable(
            "ratio condition needs every degree >= 3".into(),
        ));
    }
    let c = spec.codim() as u64;
    let target = twist_weight(spec.n, a) + 2;
    for k in 1..=spec.n as u64 {
        if k > c {
            // phi_k vanishes past c
            return Ok(false);
        }
        let bound = ratio_lower_bound(c, k, xmin)?;
        if bound.numer() < &(&target * bound.denom()) {
            return Ok(false);
        }
    }
    Ok(true)
}
