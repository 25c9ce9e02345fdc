//! Arbitrary-precision rationals for density thresholds.
//!
//! The sparse/dense classification compares an edge/vertex ratio against
//! `1/alpha` exactly, so `alpha` is carried as a reduced rational with
//! arbitrary-precision components. The admissibility policy (denominator a
//! prime exceeding the square of the largest vertex count in play) guarantees
//! that the comparison can never tie: a tie would force the denominator to
//! divide an edge difference bounded by `n^2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A reduced rational with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numerator/denominator`, reduced. The denominator must be
    /// nonzero; the sign is normalized onto the numerator.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::MalformedGraph("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn from_big(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::MalformedGraph("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(numerator, denominator)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_strictly_between_zero_and_one(&self) -> bool {
        self.0.is_positive() && self.0 < BigRational::one()
    }

    /// Validates the `0 < alpha < 1` range required everywhere alpha is used.
    pub fn check_alpha(&self) -> Result<()> {
        if self.is_strictly_between_zero_and_one() {
            Ok(())
        } else {
            Err(Error::AlphaOutOfRange(self.to_string()))
        }
    }

    /// Compares `num/den` (as a ratio of machine integers, `den > 0`) against
    /// `1/self` exactly.
    pub fn cmp_ratio_to_inverse(&self, num: u64, den: u64) -> std::cmp::Ordering {
        debug_assert!(den > 0);
        // num/den vs q/p  <=>  num * p vs den * q   (p, q > 0)
        let lhs = BigInt::from(num) * self.numerator();
        let rhs = BigInt::from(den) * self.denominator();
        lhs.cmp(&rhs)
    }

    /// Nearest f64; used only where a sampling probability is needed.
    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    /// True iff the denominator is a prime exceeding `n_max^2`, the policy
    /// that makes ties impossible for graphs with at most `n_max` vertices.
    pub fn is_admissible_for(&self, n_max: usize) -> bool {
        let q = self.denominator();
        let bound = BigInt::from(n_max) * BigInt::from(n_max);
        *q > bound && is_prime_big(q)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Parses `P/Q` or a bare integer `P`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedGraph(format!("cannot parse rational {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                ExactRational::from_big(p, q)
            }
            None => {
                let p: BigInt = s.trim().parse().map_err(|_| bad())?;
                ExactRational::from_big(p, BigInt::one())
            }
        }
    }
}

fn is_prime_big(x: &BigInt) -> bool {
    // trial division; admissible denominators stay well inside u64 range
    let Ok(x) = u64::try_from(x.clone()) else {
        return false;
    };
    is_prime(x)
}

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x.is_multiple_of(2) {
        return x == 2;
    }
    let mut d = 3;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Finds an admissible alpha strictly between `lo` and `hi` for graphs with
/// at most `n_max` vertices: a rational `p/q` with `q` the smallest prime
/// exceeding `n_max^2` that admits an integer `p` with `lo < p/q < hi`.
pub fn admissible_alpha_between(
    lo: &ExactRational,
    hi: &ExactRational,
    n_max: usize,
) -> Result<ExactRational> {
    if lo >= hi {
        return Err(Error::MalformedGraph(format!(
            "empty alpha interval ({lo}, {hi})"
        )));
    }
    let mut q = (n_max as u64) * (n_max as u64) + 1;
    loop {
        while !is_prime(q) {
            q += 1;
        }
        // smallest integer p with p/q > lo (lo is non-negative here, so
        // truncating division is floor division)
        let p_low: BigInt = (lo.numerator() * BigInt::from(q)) / lo.denominator() + 1;
        let candidate = ExactRational::from_big(p_low, BigInt::from(q))?;
        if &candidate < hi {
            candidate.check_alpha()?;
            return Ok(candidate);
        }
        q += 1;
    }
}
