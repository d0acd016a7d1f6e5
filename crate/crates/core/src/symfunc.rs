//! Elementary symmetric polynomials and the ratio inequality
//! `e_k / e_{k-1} >= (r - k + 1) / k * min x_i` for positive inputs.
//!
//! Ratios are compared by cross-multiplying integers, never by division.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::segre::CiSpec;

/// `[e_0, ..., e_kmax]` of `xs`, read off from `prod (1 + x_i t)`.
/// Entries past `xs.len()` are zero.
pub fn elem_sym_all<T>(xs: &[T], kmax: usize) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
{
    let mut e = vec![T::zero(); kmax + 1];
    e[0] = T::one();
    for (seen, x) in xs.iter().enumerate() {
        let top = kmax.min(seen + 1);
        for k in (1..=top).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * x.clone();
        }
    }
    e
}

/// Degrees shifted by two, `x_i = d_i - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedDegreeVector {
    values: Vec<u64>,
    source_degrees: Vec<u64>,
}

impl ShiftedDegreeVector {
    pub fn from_degrees(degrees: &[u64]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidSpec("degree list is empty".into()));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidSpec(format!("degree {d} is below 2")));
        }
        Ok(Self {
            values: degrees.iter().map(|d| d - 2).collect(),
            source_degrees: degrees.to_vec(),
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn source_degrees(&self) -> &[u64] {
        &self.source_degrees
    }

    pub fn min_shift(&self) -> u64 {
        *self.values.iter().min().expect("nonempty")
    }

    pub fn elem_sym(&self, kmax: usize) -> Vec<BigInt> {
        let xs: Vec<BigInt> = self.values.iter().map(|&x| BigInt::from(x)).collect();
        elem_sym_all(&xs, kmax)
    }
}

/// `[phi_0, ..., phi_kmax]` with `phi_k = e_k(d_1 - 2, ..., d_c - 2)`.
pub fn phi(spec: &CiSpec, kmax: usize) -> Vec<BigInt> {
    ShiftedDegreeVector::from_degrees(spec.degrees())
        .expect("CiSpec guarantees degrees >= 2")
        .elem_sym(kmax)
}

/// `(r - k + 1) * xmin / k`.
pub fn ratio_lower_bound(r: u64, k: u64, xmin: u64) -> Result<BigRational> {
    if k == 0 || k > r {
        return Err(Error::KOutOfRange {
            k: k as usize,
            max: r as usize,
        });
    }
    Ok(BigRational::new(
        BigInt::from(r - k + 1) * BigInt::from(xmin),
        BigInt::from(k),
    ))
}

/// Outcome of one evaluation of the ratio inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    /// `e_k`
    pub numerator: BigInt,
    /// `e_{k-1}`
    pub denominator: BigInt,
    pub bound: BigRational,
    pub holds: bool,
    pub equality: bool,
}

impl RatioReport {
    pub fn lhs(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }
}

fn check_positive(xs: &[u64], k: usize) -> Result<()> {
    if k == 0 || k > xs.len() {
        return Err(Error::KOutOfRange { k, max: xs.len() });
    }
    if xs.contains(&0) {
        return Err(Error::InvalidArgument(
            "ratio inequality needs strictly positive inputs".into(),
        ));
    }
    Ok(())
}

pub fn verify_ratio_inequality(xs: &[u64], k: usize) -> Result<RatioReport> {
    check_positive(xs, k)?;
    let r = xs.len() as u64;
    let xmin = *xs.iter().min().expect("nonempty");
    let big: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(x)).collect();
    let e = elem_sym_all(&big, k);
    let bound = ratio_lower_bound(r, k as u64, xmin)?;
    // e_k * bound.denom  vs  bound.numer * e_{k-1}
    let lhs = &e[k] * bound.denom();
    let rhs = bound.numer() * &e[k - 1];
    Ok(RatioReport {
        holds: lhs >= rhs,
        equality: lhs == rhs,
        numerator: e[k].clone(),
        denominator: e[k - 1].clone(),
        bound,
    })
}

/// Whether `e_k / e_{k-1}` does not decrease when `x_i` grows by `delta`.
pub fn verify_ratio_monotonicity(xs: &[u64], k: usize, i: usize, delta: u64) -> Result<bool> {
    check_positive(xs, k)?;
    if i >= xs.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: xs.len(),
        });
    }
    if delta == 0 {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    let base: Vec<BigInt> = xs.iter().map(|&x| BigInt::from(x)).collect();
    let mut bumped = base.clone();
    bumped[i] += delta;
    let e = elem_sym_all(&base, k);
    let f = elem_sym_all(&bumped, k);
    Ok(&f[k] * &e[k - 1] >= &e[k] * &f[k - 1])
}

/// Largest tuple length accepted by [`verify_lemma_grid`].
pub const LEMMA_MAX_R: usize = 6;
/// Largest coordinate value accepted by [`verify_lemma_grid`].
pub const LEMMA_MAX_GRID: u64 = 8;

/// Exhaustive check of the ratio inequality over `{1..=grid_max}^r` for
/// one value of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaGridReport {
    pub r: usize,
    pub k: usize,
    pub grid_max: u64,
    pub tuples: u64,
    pub inequality_failures: u64,
    /// Checked per coordinate with `delta = 1`, only where `x_i < grid_max`.
    pub monotonicity_checks: u64,
    pub monotonicity_failures: u64,
    pub equality_tuples: u64,
    /// Equality held at every constant tuple and nowhere else.
    pub equality_exactly_at_constant: bool,
}

impl LemmaGridReport {
    pub fn passed(&self) -> bool {
        self.inequality_failures == 0
            && self.monotonicity_failures == 0
            && self.equality_exactly_at_constant
    }
}

struct Tally {
    inequality_failures: u64,
    monotonicity_checks: u64,
    monotonicity_failures: u64,
    equality_tuples: u64,
    equality_misplaced: bool,
}

/// Runs the inequality and monotonicity checks over the whole grid, for
/// `k` alone or for every `1 <= k <= r`.
///
/// The budget (`r <= 6`, `grid_max <= 8`) keeps every intermediate below
/// `2^64`, so the enumeration runs in `i128`.
pub fn verify_lemma_grid(
    r: usize,
    k: Option<usize>,
    grid_max: u64,
) -> Result<Vec<LemmaGridReport>> {
    if r == 0 || grid_max == 0 {
        return Err(Error::InvalidArgument("r and grid must be positive".into()));
    }
    if r > LEMMA_MAX_R || grid_max > LEMMA_MAX_GRID {
        return Err(Error::BudgetExceeded(format!(
            "r = {r}, grid = {grid_max}; limits are r <= {LEMMA_MAX_R}, grid <= {LEMMA_MAX_GRID}"
        )));
    }
    let ks: Vec<usize> = match k {
        Some(k) if k == 0 || k > r => return Err(Error::KOutOfRange { k, max: r }),
        Some(k) => vec![k],
        None => (1..=r).collect(),
    };
    let mut tallies: Vec<Tally> = ks
        .iter()
        .map(|_| Tally {
            inequality_failures: 0,
            monotonicity_checks: 0,
            monotonicity_failures: 0,
            equality_tuples: 0,
            equality_misplaced: false,
        })
        .collect();

    let mut xs: Vec<i128> = vec![1; r];
    let mut tuples = 0u64;
    let mut bumped_e: Vec<Vec<i128>> = vec![Vec::new(); r];
    loop {
        tuples += 1;
        let e = elem_sym_all(&xs, r);
        let xmin = *xs.iter().min().expect("nonempty");
        let constant = xs.iter().all(|&x| x == xmin);
        for (i, slot) in bumped_e.iter_mut().enumerate() {
            if xs[i] < grid_max as i128 {
                let mut ys = xs.clone();
                ys[i] += 1;
                *slot = elem_sym_all(&ys, r);
            } else {
                slot.clear();
            }
        }
        for (t, &k) in tallies.iter_mut().zip(&ks) {
            let lhs = e[k] * k as i128;
            let rhs = (r - k + 1) as i128 * xmin * e[k - 1];
            if lhs < rhs {
                t.inequality_failures += 1;
            }
            if lhs == rhs {
                t.equality_tuples += 1;
                t.equality_misplaced |= !constant;
            } else {
                t.equality_misplaced |= constant;
            }
            for f in bumped_e.iter().filter(|f| !f.is_empty()) {
                t.monotonicity_checks += 1;
                if f[k] * e[k - 1] < e[k] * f[k - 1] {
                    t.monotonicity_failures += 1;
                }
            }
        }
        // odometer over {1..=grid_max}^r
        let mut pos = 0;
        while pos < r && xs[pos] == grid_max as i128 {
            xs[pos] = 1;
            pos += 1;
        }
        if pos == r {
            break;
        }
        xs[pos] += 1;
    }

    Ok(ks
        .iter()
        .zip(tallies)
        .map(|(&k, t)| LemmaGridReport {
            r,
            k,
            grid_max,
            tuples,
            inequality_failures: t.inequality_failures,
            monotonicity_checks: t.monotonicity_checks,
            monotonicity_failures: t.monotonicity_failures,
            equality_tuples: t.equality_tuples,
            equality_exactly_at_constant: !t.equality_misplaced && t.equality_tuples == grid_max,
        })
        .collect())
}
