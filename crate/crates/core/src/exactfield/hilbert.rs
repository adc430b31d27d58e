//! Local and global Hilbert symbols over Q.

use num::{BigInt, One, Signed, Zero};

use super::{factor, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let big_p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % &big_p).is_zero() {
        m /= &big_p;
        v += 1;
    }
    (v, m)
}

/// p-adic valuation of a nonzero rational together with its unit part.
fn rational_valuation(x: &Rational, p: u64) -> (i64, BigInt, BigInt) {
    let (vn, un) = valuation(x.numer(), p);
    let (vd, ud) = valuation(x.denom(), p);
    (vn as i64 - vd as i64, un, ud)
}

/// Legendre symbol of a p-unit u (given as unit numerator and denominator), odd p.
fn legendre_unit(un: &BigInt, ud: &BigInt, p: u64) -> i32 {
    let big_p = BigInt::from(p);
    let exp = (&big_p - BigInt::one()) / BigInt::from(2);
    let one_leg = |u: &BigInt| -> i32 {
        let r = u.mod_floor_ref(&big_p).modpow(&exp, &big_p);
        if r.is_one() {
            1
        } else {
            -1
        }
    };
    one_leg(un) * one_leg(ud)
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

/// Residue of an odd rational unit modulo 8. Odd integers are involutions
/// mod 8, so num/den = num*den there.
fn odd_unit_mod8(un: &BigInt, ud: &BigInt) -> u64 {
    let m = BigInt::from(8);
    let r = (un.mod_floor_ref(&m) * ud.mod_floor_ref(&m)).mod_floor_ref(&m);
    u64::try_from(&r).unwrap()
}

fn eps(u_mod8: u64) -> u32 {
    // (u - 1)/2 mod 2, i.e. 0 for u = 1 mod 4, 1 for u = 3 mod 4
    ((u_mod8 % 4) == 3) as u32
}

fn omega(u_mod8: u64) -> u32 {
    // (u^2 - 1)/8 mod 2, i.e. 0 for u = +-1 mod 8, 1 for u = +-3 mod 8
    (u_mod8 == 3 || u_mod8 == 5) as u32
}

fn parity_sign(e: u32) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Local Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nonzero
/// solution over the completion at v, via the standard local formulas.
pub fn hilbert_local(a: &Rational, b: &Rational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (alpha, un_a, ud_a) = rational_valuation(a, 2);
            let (beta, un_b, ud_b) = rational_valuation(b, 2);
            // unit parts keep their sign; mod_floor folds it into the residue
            let u = odd_unit_mod8(&un_a, &ud_a);
            let v = odd_unit_mod8(&un_b, &ud_b);
            let e = eps(u) * eps(v)
                + (alpha.rem_euclid(2) as u32) * omega(v)
                + (beta.rem_euclid(2) as u32) * omega(u);
            Ok(parity_sign(e))
        }
        Place::Prime(p) => {
            let (alpha, un_a, ud_a) = rational_valuation(a, p);
            let (beta, un_b, ud_b) = rational_valuation(b, p);
            let leg_u = legendre_unit(&un_a, &ud_a, p);
            let leg_v = legendre_unit(&un_b, &ud_b, p);
            let eps_p = ((p - 1) / 2 % 2) as u32;
            let mut s = parity_sign((alpha.rem_euclid(2) as u32) * (beta.rem_euclid(2) as u32) * eps_p);
            if beta.rem_euclid(2) == 1 {
                s *= leg_u;
            }
            if alpha.rem_euclid(2) == 1 {
                s *= leg_v;
            }
            Ok(s)
        }
    }
}

/// Odd primes dividing the numerator or denominator of x.
pub fn odd_prime_divisors(x: &Rational) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in [x.numer(), x.denom()] {
        for (p, _) in factor(part, DEFAULT_FACTOR_BOUND)? {
            if p != 2 {
                out.push(p);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The finite place set at which (a, b)_v can be nontrivial.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    let mut odd: Vec<u64> = odd_prime_divisors(a)?;
    odd.extend(odd_prime_divisors(b)?);
    odd.sort_unstable();
    odd.dedup();
    places.extend(odd.into_iter().map(Place::Prime));
    Ok(places)
}

/// +1 iff the local symbol is +1 at every relevant place; equivalently,
/// iff b is a norm from Q(sqrt(a)).
pub fn hilbert_global(a: &Rational, b: &Rational) -> Result<i32> {
    for place in relevant_places(a, b)? {
        if hilbert_local(a, b, place)? == -1 {
            return Ok(-1);
        }
    }
    Ok(1)
}
