//! Exact arithmetic for the rationals and quadratic extensions Q(sqrt(d)),
//! together with square-class and norm-group oracles for the three field
//! presets (Q, R, the formal Laurent field C((h))).

mod hilbert;
mod preset;
mod scalar;

pub use hilbert::{
    hilbert_global, hilbert_local, odd_prime_divisors, relevant_places, Place, DEFAULT_FACTOR_BOUND,
};
pub use preset::{
    is_norm, is_square, nontrivial_square_classes, norm_class_representative,
    square_class_canonicalize, stream_norm_classes, FieldElement, FieldPreset, SquareClass,
};
pub use scalar::{QuadExt, Rational};

use num::BigInt;

/// Squarefree test by trial division; discriminants are desk-scale integers.
pub fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut p: u64 = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Trial-division factorization of |n| with a hard bound.
/// Returns (prime, exponent) pairs in increasing prime order.
pub fn factor(n: &BigInt, bound: u64) -> crate::error::Result<Vec<(u64, u32)>> {
    use num::{One, Signed, Zero};
    let mut m = n.abs();
    if m.is_zero() {
        return Err(crate::error::Error::ZeroInput);
    }
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while m > BigInt::one() {
        let pp = BigInt::from(p) * BigInt::from(p);
        if pp > m {
            // remainder is prime
            let rem = u64::try_from(&m).map_err(|_| crate::error::Error::FactorBoundExceeded {
                value: n.to_string(),
                bound,
            })?;
            out.push((rem, 1));
            break;
        }
        if p > bound {
            return Err(crate::error::Error::FactorBoundExceeded {
                value: n.to_string(),
                bound,
            });
        }
        let big_p = BigInt::from(p);
        let mut e = 0u32;
        while (&m % &big_p).is_zero() {
            m /= &big_p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    Ok(out)
}

/// Squarefree part of a nonzero rational, as a signed integer.
/// Prime parities of numerator and denominator both contribute, since
/// 1/p and p differ by the square (1/p)^2.
pub fn squarefree_part(x: &Rational) -> crate::error::Result<i64> {
    use num::Signed;
    if num::Zero::is_zero(x) {
        return Err(crate::error::Error::ZeroInput);
    }
    let mut result: i64 = if x.is_negative() { -1 } else { 1 };
    for part in [x.numer(), x.denom()] {
        for (p, e) in factor(part, DEFAULT_FACTOR_BOUND)? {
            if e % 2 == 1 {
                let p = i64::try_from(p).map_err(|_| crate::error::Error::SquareClassOverflow)?;
                result = result
                    .checked_mul(p)
                    .ok_or(crate::error::Error::SquareClassOverflow)?;
            }
        }
    }
    Ok(result)
}
