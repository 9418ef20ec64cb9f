//! Exact Weyl dimension formulas.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weight::{is_nonincreasing, BlockWeight};

/// Dimension of the `GL(len)` irreducible with highest weight `lambda`:
/// `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
///
/// Numerator and denominator are accumulated separately and reduced by
/// their gcd after every factor, so no rationals appear and the final
/// division is exact.
pub fn gl_dim(lambda: &[i64]) -> Result<BigUint> {
    if !is_nonincreasing(lambda) {
        return Err(Error::Domain(format!("{lambda:?} is not dominant")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            let gap = (j - i) as i64;
            num *= (lambda[i] - lambda[j] + gap) as u64;
            den *= gap as u64;
            let g = num.gcd(&den);
            if !g.is_one() {
                num /= &g;
                den /= &g;
            }
        }
    }
    debug_assert!(den.is_one(), "Weyl product is integral");
    Ok(num / den)
}

/// Rank of the irreducible homogeneous bundle with highest weight `w`
/// (product of the Weyl dimensions of both blocks).
pub fn block_rank(w: &BlockWeight) -> Result<BigUint> {
    if !w.is_dominant() {
        return Err(Error::Domain(format!("{w} is not dominant per block")));
    }
    Ok(gl_dim(w.first())? * gl_dim(w.second())?)
}

/// Weyl dimension for `SL(n)` (equivalently `GL(n)`) of a nonincreasing
/// vector of length `n`.
pub fn sl_dim(lambda: &[i64], n: usize) -> Result<BigUint> {
    if lambda.len() != n {
        return Err(Error::Structural(format!(
            "expected a weight of length {n}, got {}",
            lambda.len()
        )));
    }
    gl_dim(lambda)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::GrassContext;
    use proptest::prelude::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Count Gelfand–Tsetlin patterns with top row `top`.
    fn gt_count(top: &[i64]) -> u64 {
        if top.len() <= 1 {
            return 1;
        }
        let mut total = 0;
        let mut row = vec![0i64; top.len() - 1];
        fn rec(top: &[i64], row: &mut Vec<i64>, i: usize, total: &mut u64) {
            if i == row.len() {
                *total += gt_count(row);
                return;
            }
            for x in top[i + 1]..=top[i] {
                row[i] = x;
                rec(top, row, i + 1, total);
            }
        }
        rec(top, &mut row, 0, &mut total);
        total
    }

    #[test]
    fn rank_examples() {
        let ctx = GrassContext::new(2, 5).unwrap();
        let q = BlockWeight::from_first(ctx, vec![1, 0]).unwrap();
        assert_eq!(block_rank(&q).unwrap(), big(2));
        let ctx4 = GrassContext::new(4, 8).unwrap();
        let w = BlockWeight::from_first(ctx4, vec![2, 1, 0, 0]).unwrap();
        assert_eq!(block_rank(&w).unwrap(), big(20));
        for k in 1..8u64 {
            for c in 0..7u64 {
                let ctx = GrassContext::new(k as usize, k as usize + 2).unwrap();
                let mut first = vec![0; k as usize];
                first[0] = c as i64;
                let w = BlockWeight::from_first(ctx, first).unwrap();
                assert_eq!(block_rank(&w).unwrap(), binomial(k + c - 1, c));
            }
        }
    }

    #[test]
    fn non_dominant_is_domain_error() {
        let ctx = GrassContext::new(2, 5).unwrap();
        let w = BlockWeight::from_first(ctx, vec![0, 1]).unwrap();
        assert!(matches!(block_rank(&w), Err(Error::Domain(_))));
        assert!(matches!(sl_dim(&[0, 1], 2), Err(Error::Domain(_))));
    }

    #[test]
    fn sl_dim_examples() {
        assert_eq!(sl_dim(&[0; 5], 5).unwrap(), big(1));
        assert_eq!(sl_dim(&[1, 1, 0, 0], 4).unwrap(), big(6));
        assert_eq!(gt_count(&[1, 0, 0, 0, -1]), 24);
        assert_eq!(sl_dim(&[1, 0, 0, 0, -1], 5).unwrap(), big(24));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(40, 20), big(137846528820));
    }

    proptest! {
        #[test]
        fn weyl_matches_gt_count(mut v in proptest::collection::vec(-3i64..4, 1..5)) {
            v.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(gl_dim(&v).unwrap(), big(gt_count(&v)));
        }

        #[test]
        fn shift_invariance(mut v in proptest::collection::vec(-5i64..6, 1..6), c in -10i64..10) {
            v.sort_unstable_by(|a, b| b.cmp(a));
            let shifted: Vec<i64> = v.iter().map(|x| x + c).collect();
            prop_assert_eq!(sl_dim(&v, v.len()).unwrap(), sl_dim(&shifted, v.len()).unwrap());
        }

        #[test]
        fn rank_invariant_under_dual_and_twist(
            (k, m) in (1usize..5, 1usize..4),
            seed in proptest::collection::vec(0i64..4, 8),
            r in -5i64..5,
        ) {
            let ctx = GrassContext::new(k, k + m).unwrap();
            let mut a: Vec<i64> = seed[..k].to_vec();
            let mut b: Vec<i64> = seed[k..k + m].to_vec();
            a.sort_unstable_by(|x, y| y.cmp(x));
            b.sort_unstable_by(|x, y| y.cmp(x));
            let w = BlockWeight::new(ctx, a, b).unwrap();
            let rank = block_rank(&w).unwrap();
            prop_assert_eq!(&block_rank(&w.dual()).unwrap(), &rank);
            prop_assert_eq!(&block_rank(&w.twist(r)).unwrap(), &rank);
        }
    }
}
