use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::form::IntVector;

/// Dimension of the multidegree-`e` component of the free Lie algebra on
/// `e.len()` generators (multigraded necklace formula):
///
/// ```text
/// (1/|e|) * sum_{d | gcd(e)} mu(d) * (|e|/d)! / prod_i (e(i)/d)!
/// ```
///
/// Returns 0 for the zero vector.
///
/// # Panics
/// On negative entries, or when the dimension does not fit in a `u64`.
pub fn free_lie_dim(e: &IntVector) -> u64 {
    assert!(e.is_nonnegative(), "degree {e} has a negative entry");
    let total = e.height();
    if total == 0 {
        return 0;
    }
    let g = e.entries().iter().fold(0i64, |g, &v| g.gcd(&v));
    let mut sum = BigInt::zero();
    for d in 1..=g {
        if g % d != 0 {
            continue;
        }
        let mu = mobius(d as u64);
        if mu == 0 {
            continue;
        }
        let parts: Vec<u64> = e.entries().iter().map(|&v| (v / d) as u64).collect();
        let term = multinomial(&parts);
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (quotient, remainder) = sum.div_rem(&BigInt::from(total));
    debug_assert!(remainder.is_zero());
    quotient.to_u64().expect("free Lie component dimension exceeds u64")
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn multinomial(parts: &[u64]) -> BigInt {
    let mut result = BigInt::one();
    let mut placed = 0u64;
    for &k in parts {
        for j in 1..=k {
            placed += 1;
            result = result * placed / j;
        }
    }
    result
}
