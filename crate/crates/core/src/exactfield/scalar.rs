//! Elements a + b*sqrt(d) with exact rational a, b.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// An element of Q or of a quadratic extension Q(sqrt(d)).
///
/// The discriminant is stored per value, with `d = 0` as the canonical marker
/// for purely rational elements (b = 0). Two values interoperate only if their
/// nonzero discriminants agree; mixing distinct extensions is a hard error.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if b.is_zero() {
            return Ok(QuadExt { a, b, d: 0 });
        }
        if d == 0 || d == 1 || !super::is_squarefree(d) {
            return Err(Error::NotAnExtension(d));
        }
        Ok(QuadExt { a, b, d })
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// sqrt(d) itself.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Discriminant shared by two values, or an error when they belong to
    /// distinct proper extensions.
    fn join_d(&self, other: &Self) -> Result<i64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(Error::IncompatibleExtension(d1, d2)),
        }
    }

    fn normalized(a: Rational, b: Rational, d: i64) -> Self {
        if b.is_zero() {
            QuadExt { a, b, d: 0 }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.join_d(other)?;
        Ok(Self::normalized(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.join_d(other)?;
        Ok(Self::normalized(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.join_d(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * Rational::from(BigInt::from(d));
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(a, b, d))
    }

    /// The nontrivial automorphism a + b*sqrt(d) -> a - b*sqrt(d).
    pub fn conj(&self) -> Self {
        Self::normalized(self.a.clone(), -&self.b, self.d)
    }

    /// x * conj(x) = a^2 - d b^2, projected to Q.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from(BigInt::from(self.d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        // norm is nonzero: d is not a square, so a^2 = d b^2 forces a = b = 0
        let a = &self.a / &n;
        let b = -&self.b / &n;
        Ok(Self::normalized(a, b, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::normalized(&self.a * k, &self.b * k, self.d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "a": format_rational(&self.a),
            "b": format_rational(&self.b),
            "d": self.d,
        })
    }
}

pub(crate) fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let root = format!("sqrt({})", self.d);
        let b_str = if self.b.abs().is_one() {
            root
        } else {
            format!("{}*{}", format_rational(&self.b.abs()), root)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{b_str}")
            } else {
                write!(f, "{b_str}")
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {b_str}", format_rational(&self.a))
        } else {
            write!(f, "{} + {b_str}", format_rational(&self.a))
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("quadratic extension mismatch")
            }
        }
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::normalized(-&self.a, -&self.b, self.d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qe(a: (i64, i64), b: (i64, i64), d: i64) -> QuadExt {
        QuadExt::new(
            Rational::new(BigInt::from(a.0), BigInt::from(a.1)),
            Rational::new(BigInt::from(b.0), BigInt::from(b.1)),
            d,
        )
        .unwrap()
    }

    #[test]
    fn conjugation_definition() {
        // conj(3 + 2 sqrt(2)) = 3 - 2 sqrt(2)
        let x = qe((3, 1), (2, 1), 2);
        assert_eq!(x.conj(), qe((3, 1), (-2, 1), 2));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn inverse_pair() {
        // (1 + sqrt 2)(-1 + sqrt 2) = 1, hence inv(1 + sqrt 2) = -1 + sqrt 2
        let x = qe((1, 1), (1, 1), 2);
        let y = qe((-1, 1), (1, 1), 2);
        assert_eq!(&x * &y, QuadExt::one());
        assert_eq!(x.inv().unwrap(), y);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(qe((1, 1), (1, 1), 2).norm(), Rational::from(BigInt::from(-1)));
        assert_eq!(qe((2, 1), (1, 1), -1).norm(), Rational::from(BigInt::from(5)));
        // b = 0 case: norm(q) = q^2
        let q = QuadExt::from_ratio(3, 7);
        assert_eq!(q.norm(), Rational::new(BigInt::from(9), BigInt::from(49)));
    }

    #[test]
    fn zero_inverse_fails() {
        assert_eq!(QuadExt::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_extensions_fail() {
        let x = qe((0, 1), (1, 1), 2);
        let y = qe((0, 1), (1, 1), 3);
        assert!(matches!(x.checked_add(&y), Err(Error::IncompatibleExtension(2, 3))));
    }

    #[test]
    fn rational_values_unify_with_any_extension() {
        let x = QuadExt::from_int(5);
        let y = qe((1, 1), (1, 1), 2);
        assert_eq!((&x + &y).discriminant(), 2);
        // products that collapse to Q drop the discriminant marker
        let z = &qe((0, 1), (1, 1), 2) * &qe((0, 1), (1, 1), 2);
        assert_eq!(z, QuadExt::from_int(2));
        assert_eq!(z.discriminant(), 0);
    }

    #[test]
    fn bad_discriminants_rejected() {
        assert!(QuadExt::new(Rational::zero(), Rational::one(), 4).is_err());
        assert!(QuadExt::new(Rational::zero(), Rational::one(), 1).is_err());
        assert!(QuadExt::new(Rational::zero(), Rational::one(), 0).is_err());
        assert!(QuadExt::new(Rational::zero(), Rational::one(), -12).is_err());
    }

    fn arb_scalar(d: i64) -> impl Strategy<Value = QuadExt> {
        (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
            .prop_map(move |(an, ad, bn, bd)| qe((an, ad), (bn, bd), d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_scalar(2), y in arb_scalar(2), z in arb_scalar(2)) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), QuadExt::one());
            }
        }

        #[test]
        fn conj_is_ring_homomorphism(x in arb_scalar(-1), y in arb_scalar(-1)) {
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!(x.conj().conj(), x.clone());
            // fixed field is exactly b = 0
            prop_assert_eq!(x.conj() == x, x.is_rational());
        }

        #[test]
        fn norm_is_multiplicative(x in arb_scalar(5), y in arb_scalar(5)) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn conj_product_is_rational(x in arb_scalar(3)) {
            let n = &x * &x.conj();
            prop_assert!(n.is_rational());
            prop_assert_eq!(n.rational_part().clone(), x.norm());
        }
    }
}
