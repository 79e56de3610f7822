//! Closed-form bound arithmetic with exact integers and rationals:
//! the Heawood quantity, the skeleton and join-power lower bounds, the
//! binomial quantities of the conjecture arithmetic, the γ count for
//! simplex skeleta, the two-sided binomial inequality scan, and the
//! Helly-type threshold with its square-root enclosure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact binomial coefficient; zero when `top < bottom` or `top < 0`.
pub fn binomial(top: i64, bottom: u64) -> BigInt {
    if top < 0 || (top as u64) < bottom {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..bottom {
        out = out * BigInt::from(top as u64 - i) / BigInt::from(i + 1);
    }
    out
}

/// Every closed-form quantity evaluated at one `(n, k)`, all exact.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    /// `(n−3)(n−4)/12`.
    pub heawood: BigRational,
    /// `(n−4k−2)²/(2^k (k+1)²)`.
    pub skeleton_bound: BigRational,
    /// True when `n >= 5k+3`, the range where the skeleton bound is stated.
    pub skeleton_valid: bool,
    /// `(n−3)²/2^k`.
    pub joinpower_bound: BigRational,
    /// True when `n >= 4`.
    pub joinpower_valid: bool,
    /// `C(2k+1, k+1)`, the coefficient on the Euler-characteristic side.
    pub kuhnel_lhs_coefficient: BigInt,
    /// `C(n−k−1, k+1)`, the right-hand side.
    pub kuhnel_rhs: BigInt,
    /// `C(n+1, k+1) − (k+2)·C(n+1, k)`; may be negative for small n.
    pub gamma: BigInt,
    pub gamma_negative: bool,
    /// Rational enclosure of `(k+1)·2^{k−1}·√β + 4k + 4`, width < 10⁻⁶,
    /// present when β was supplied.
    pub helly_r_threshold: Option<(BigRational, BigRational)>,
    /// `n²/(2^k (k+1)²)`, the crossing-number lower bound.
    pub crossing_bound: BigRational,
}

/// Evaluates every closed-form bound at `(n, k)`, with the Helly
/// threshold when a β value is supplied. Needs `n >= 1`, `k >= 1`.
pub fn evaluate_bounds(n: u64, k: u64, beta: Option<u64>) -> Result<BoundReport> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "bounds are evaluated for n >= 1, k >= 1, got (n={n}, k={k})"
        )));
    }
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let n_i = n as i64;
    let k_i = k as i64;
    let two_pow_k = BigInt::from(2u64).pow(k as u32);

    let heawood = big(n_i - 3) * big(n_i - 4) / big(12);

    let skel_base = n_i - 4 * k_i - 2;
    let skeleton_bound = big(skel_base) * big(skel_base)
        / BigRational::from_integer(&two_pow_k * BigInt::from((k_i + 1) * (k_i + 1)));
    let skeleton_valid = n >= 5 * k + 3;

    let joinpower_bound =
        big(n_i - 3) * big(n_i - 3) / BigRational::from_integer(two_pow_k.clone());
    let joinpower_valid = n >= 4;

    let kuhnel_lhs_coefficient = binomial(2 * k_i + 1, k + 1);
    let kuhnel_rhs = binomial(n_i - k_i - 1, k + 1);

    let gamma = binomial(n_i + 1, k + 1) - BigInt::from(k + 2) * binomial(n_i + 1, k);
    let gamma_negative = gamma.is_negative();

    let helly_r_threshold = beta.map(|b| {
        let (lo, hi) = sqrt_enclosure(b);
        let scale =
            BigRational::from_integer(BigInt::from(k_i + 1) * BigInt::from(2u64).pow(k as u32 - 1));
        let offset = big(4 * k_i + 4);
        (scale.clone() * lo + offset.clone(), scale * hi + offset)
    });

    let crossing_bound = big(n_i) * big(n_i)
        / BigRational::from_integer(two_pow_k * BigInt::from((k_i + 1) * (k_i + 1)));

    Ok(BoundReport {
        n,
        k,
        heawood,
        skeleton_bound,
        skeleton_valid,
        joinpower_bound,
        joinpower_valid,
        kuhnel_lhs_coefficient,
        kuhnel_rhs,
        gamma,
        gamma_negative,
        helly_r_threshold,
        crossing_bound,
    })
}

/// `γ` of the k-skeleton of the n-simplex:
/// `C(n+1, k+1) − (k+2)·C(n+1, k)`. Exact; negative values are returned
/// as-is. Asymptotically `n^{k+1}/(k+1)!`.
pub fn simplex_gamma(n: u64, k: u64) -> Result<BigInt> {
    if n < k || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "gamma needs n >= k >= 1, got (n={n}, k={k})"
        )));
    }
    let n_i = n as i64;
    Ok(binomial(n_i + 1, k + 1) - BigInt::from(k + 2) * binomial(n_i + 1, k))
}

/// Rational enclosure of `√x` of width below 10⁻⁷ (exact for squares).
pub fn sqrt_enclosure(x: u64) -> (BigRational, BigRational) {
    let exact = x.isqrt();
    if exact * exact == x {
        let r = BigRational::from_integer(BigInt::from(exact));
        return (r.clone(), r);
    }
    let mut lo = BigRational::from_integer(BigInt::from(exact));
    let mut hi = BigRational::from_integer(BigInt::from(exact + 1));
    let target = BigRational::new(BigInt::one(), BigInt::from(10_000_000u64));
    let big_x = BigRational::from_integer(BigInt::from(x));
    while hi.clone() - lo.clone() > target {
        let mid = (lo.clone() + hi.clone()) / BigRational::from_integer(BigInt::from(2));
        if mid.clone() * mid.clone() <= big_x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Per-n verdict of the two binomial inequalities.
#[derive(Debug, Clone, Copy)]
pub struct GammaVerdict {
    pub n: u64,
    /// `C(n, k+1) − (k+2)C(n, k) < C(n+1, k+1) − (k+2)C(n+1, k)`.
    pub first_holds: bool,
    /// `C(n+1, k+1) − (k+2)C(n+1, k) < C(n−k−1, k+1)`.
    pub second_holds: bool,
}

#[derive(Debug, Clone)]
pub struct GammaScan {
    pub k: u64,
    pub verdicts: Vec<GammaVerdict>,
    /// Smallest n from which both inequalities hold all the way to the
    /// scan limit; `None` when one of them still fails at the limit.
    pub threshold: Option<u64>,
}

/// Scans both inequalities of the γ chain with exact integers for each
/// `n` up to `n_max` and reports the trailing threshold.
pub fn scan_gamma_inequalities(k: u64, n_max: u64) -> Result<GammaScan> {
    if k < 1 || n_max < k + 3 {
        return Err(Error::InvalidArgument(format!(
            "scan needs k >= 1 and n_max >= k+3, got (k={k}, n_max={n_max})"
        )));
    }
    let gamma_at = |n: i64| binomial(n, k + 1) - BigInt::from(k + 2) * binomial(n, k);
    let mut verdicts = Vec::new();
    for n in k + 1..=n_max {
        let n_i = n as i64;
        let left = gamma_at(n_i);
        let mid = gamma_at(n_i + 1);
        let right = binomial(n_i - k as i64 - 1, k + 1);
        verdicts.push(GammaVerdict {
            n,
            first_holds: left < mid,
            second_holds: mid < right,
        });
    }
    let mut threshold = None;
    for v in verdicts.iter().rev() {
        if v.first_holds && v.second_holds {
            threshold = Some(v.n);
        } else {
            break;
        }
    }
    Ok(GammaScan {
        k,
        verdicts,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{FromPrimitive, ToPrimitive};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn heawood_examples() {
        let r = evaluate_bounds(7, 1, None).unwrap();
        assert_eq!(r.heawood, BigRational::from_i64(1).unwrap());
        let r = evaluate_bounds(5, 1, None).unwrap();
        assert_eq!(r.heawood, rat(1, 6));
    }

    #[test]
    fn joinpower_bound_examples() {
        let r = evaluate_bounds(4, 1, None).unwrap();
        assert_eq!(r.joinpower_bound, rat(1, 2));
        assert!(r.joinpower_valid);
    }

    #[test]
    fn skeleton_bound_example() {
        let r = evaluate_bounds(8, 1, None).unwrap();
        assert_eq!(r.skeleton_bound, rat(1, 2));
        assert!(r.skeleton_valid, "8 = 5*1+3 is exactly the threshold");
        let r = evaluate_bounds(7, 1, None).unwrap();
        assert!(!r.skeleton_valid);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(simplex_gamma(4, 1).unwrap(), BigInt::from(-5));
        assert_eq!(simplex_gamma(10, 1).unwrap(), BigInt::from(22));
        assert!(matches!(
            simplex_gamma(1, 2),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn gamma_asymptotics() {
        // gamma(n,k) / (n^{k+1}/(k+1)!) approaches 1.
        for k in 1..=3u64 {
            for n in [1000u64, 10_000] {
                let g = simplex_gamma(n, k).unwrap();
                let mut fact = BigInt::one();
                for i in 2..=(k + 1) {
                    fact *= BigInt::from(i);
                }
                let scale = BigInt::from(n).pow(k as u32 + 1);
                let ratio = BigRational::new(g * fact, scale).to_f64().unwrap();
                assert!(
                    (ratio - 1.0).abs() < 0.05,
                    "ratio {ratio} at (n={n}, k={k})"
                );
            }
        }
    }

    #[test]
    fn gamma_scan_sample_point() {
        let scan = scan_gamma_inequalities(1, 20).unwrap();
        let v = scan.verdicts.iter().find(|v| v.n == 10).unwrap();
        assert!(v.first_holds && v.second_holds);
        // The exact values behind the verdict: 15 < 22 < 28.
        assert_eq!(
            binomial(10, 2) - BigInt::from(3) * binomial(10, 1),
            BigInt::from(15)
        );
        assert_eq!(
            binomial(11, 2) - BigInt::from(3) * binomial(11, 1),
            BigInt::from(22)
        );
        assert_eq!(binomial(8, 2), BigInt::from(28));
    }

    #[test]
    fn gamma_scan_small_n_fails() {
        let scan = scan_gamma_inequalities(1, 20).unwrap();
        // The chain is not monotone at the very start: the first
        // inequality fails for n <= 3 at k=1 (gamma stays at -5, -6, -6).
        let v = scan.verdicts.iter().find(|v| v.n == 2).unwrap();
        assert!(!v.first_holds);
        let v = scan.verdicts.iter().find(|v| v.n == 3).unwrap();
        assert!(!v.first_holds);
        assert_eq!(scan.threshold, Some(4));
    }

    #[test]
    fn sqrt_enclosure_tightness() {
        for x in [0u64, 1, 2, 4, 7, 9, 15, 100, 101] {
            let (lo, hi) = sqrt_enclosure(x);
            let width = hi.clone() - lo.clone();
            assert!(width <= rat(1, 10_000_000));
            let big_x = BigRational::from_integer(BigInt::from(x));
            assert!(lo.clone() * lo <= big_x);
            assert!(hi.clone() * hi >= big_x);
        }
    }

    #[test]
    fn helly_threshold_present_only_with_beta() {
        let r = evaluate_bounds(10, 2, None).unwrap();
        assert!(r.helly_r_threshold.is_none());
        let r = evaluate_bounds(10, 2, Some(4)).unwrap();
        let (lo, hi) = r.helly_r_threshold.unwrap();
        // (k+1)·2^{k-1}·sqrt(4) + 4k + 4 = 3·2·2 + 12 = 24 exactly.
        assert_eq!(lo, BigRational::from_i64(24).unwrap());
        assert_eq!(hi, lo);
    }

    #[test]
    fn kuhnel_sides() {
        let r = evaluate_bounds(10, 2, None).unwrap();
        assert_eq!(r.kuhnel_lhs_coefficient, BigInt::from(10)); // C(5,3)
        assert_eq!(r.kuhnel_rhs, BigInt::from(35)); // C(7,3)
    }

    #[test]
    fn binomial_degenerate_cases() {
        assert_eq!(binomial(-2, 3), BigInt::zero());
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(5, 0), BigInt::one());
    }
}
