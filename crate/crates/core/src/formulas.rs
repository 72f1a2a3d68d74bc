//! Closed-form counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn exact_div(num: BigInt, den: BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            numerator: num.to_string(),
            denominator: den.to_string(),
        });
    }
    Ok(q)
}

/// `b_n^(m) = [x^n y^m] B(x, y)`:
///
/// `(1/m) C(m, n-m) sum_j C(n-m, j) C(n+m-j, 2m+j+1)` for `n, m >= 1`,
/// `delta(0, m)` for `n = 0`, and `0` for `n >= 1, m = 0` since `B(x, 0) = 1`.
pub fn b_closed(n: i64, m: i64) -> Result<BigInt> {
    if n < 0 || m < 0 {
        return Ok(BigInt::zero());
    }
    if n == 0 {
        return Ok(if m == 0 { BigInt::one() } else { BigInt::zero() });
    }
    if m == 0 {
        return Ok(BigInt::zero());
    }
    let sum: BigInt = (0..=n - m)
        .map(|j| binom(n - m, j) * binom(n + m - j, 2 * m + j + 1))
        .sum();
    exact_div(binom(m, n - m) * sum, BigInt::from(m))
}

/// Number of (102,000)-avoiders of length `n` with `m` distinct entries:
/// `b_{n+1}^(m) + sum_{k=1..n} sum_{l=0..m} b_k^(l) b_{n-k}^(m-l)`.
pub fn count_dist_closed(n: i64, m: i64) -> Result<BigInt> {
    let mut total = b_closed(n + 1, m)?;
    for k in 1..=n {
        for l in 0..=m {
            let left = b_closed(k, l)?;
            if left.is_zero() {
                continue;
            }
            total += left * b_closed(n - k, m - l)?;
        }
    }
    Ok(total)
}

/// 3-Fuss-Catalan number `C(4m, m) / (3m + 1)`.
pub fn fuss3(m: i64) -> Result<BigInt> {
    exact_div(binom(4 * m, m), BigInt::from(3 * m + 1))
}

/// Avoiders with `m` distinct entries and rank `t`:
/// `(3t + 1) C(4m - t, m - t) / (3m + 1)`.
pub fn dist_rank_count(m: i64, t: i64) -> Result<BigInt> {
    if t < 0 || t > m {
        return Ok(BigInt::zero());
    }
    exact_div(
        BigInt::from(3 * t + 1) * binom(4 * m - t, m - t),
        BigInt::from(3 * m + 1),
    )
}

/// The same count written as `[y^(m-t)] b(y)^(3t+1)` by Lagrange inversion:
/// `(3t + 1) C(4m - t + 1, m - t) / (4m - t + 1)`.
pub fn dist_rank_count_lagrange(m: i64, t: i64) -> Result<BigInt> {
    if t < 0 || t > m {
        return Ok(BigInt::zero());
    }
    exact_div(
        BigInt::from(3 * t + 1) * binom(4 * m - t + 1, m - t),
        BigInt::from(4 * m - t + 1),
    )
}

/// Avoiders with `m` distinct entries: `C(4m + 2, m) / (2m + 1)`.
pub fn dist_total(m: i64) -> Result<BigInt> {
    exact_div(binom(4 * m + 2, m), BigInt::from(2 * m + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(8, 2), big(28));
        assert_eq!(binom(2, 5), big(0));
        assert_eq!(binom(4, -1), big(0));
        assert_eq!(binom(-3, 1), big(0));
        assert_eq!(binom(0, 0), big(1));
        // Pascal's rule
        for n in 1..30 {
            for k in 1..n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
        assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn b_closed_examples() {
        assert_eq!(b_closed(2, 1).unwrap(), big(1));
        assert_eq!(b_closed(4, 2).unwrap(), big(3));
        assert_eq!(b_closed(0, 0).unwrap(), big(1));
        assert_eq!(b_closed(0, 3).unwrap(), big(0));
        assert_eq!(b_closed(5, 0).unwrap(), big(0));
        assert_eq!(b_closed(1, 1).unwrap(), big(0));
        let column: BigInt = (2..=4).map(|n| b_closed(n, 2).unwrap()).sum();
        assert_eq!(column, big(4));
    }

    #[test]
    fn count_dist_examples() {
        assert_eq!(count_dist_closed(5, 3).unwrap(), big(23));
        assert_eq!(count_dist_closed(8, 6).unwrap(), big(400));
        assert_eq!(count_dist_closed(1, 1).unwrap(), big(1));
    }

    #[test]
    fn fuss_type_counts() {
        assert_eq!(fuss3(3).unwrap(), big(22));
        assert_eq!(fuss3(2).unwrap(), big(4));
        assert_eq!(dist_rank_count(2, 1).unwrap(), big(4));
        let row: BigInt = (0..=2).map(|t| dist_rank_count(2, t).unwrap()).sum();
        assert_eq!(row, big(9));
        assert_eq!(dist_total(2).unwrap(), big(9));
        assert_eq!(dist_total(1).unwrap(), big(2));
        assert_eq!(dist_rank_count(3, 4).unwrap(), big(0));
    }
}
