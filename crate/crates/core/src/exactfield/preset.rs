//! Field presets bundling square-class and norm-group decision procedures.
//!
//! Three base fields occur: Q, R, and the formal Laurent field C((h)).
//! The Laurent field is modeled abstractly: only the square class of an
//! element (its valuation parity) ever enters a decision, so elements are
//! carried as valuations and never as actual series.

use num::{BigInt, Signed, Zero};
use serde_json::json;

use super::{hilbert_global, squarefree_part, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldPreset {
    /// The rational numbers.
    RationalField,
    /// The real numbers (rational stand-ins; only signs are decided).
    RealField,
    /// C((h)): square classes are {1, h} via valuation parity.
    FormalLaurentField,
}

/// An element of the active base field, in the shape each preset can decide on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElement {
    /// Used by both the rational and real presets.
    Rational(Rational),
    /// A Laurent series represented by its h-adic valuation.
    Laurent { valuation: i64 },
}

impl FieldElement {
    pub fn from_int(n: i64) -> Self {
        FieldElement::Rational(Rational::from(BigInt::from(n)))
    }

    fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(x) => x.is_zero(),
            FieldElement::Laurent { .. } => false,
        }
    }
}

/// Canonical representative of x * (F*)^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SquareClass {
    /// Squarefree integer with sign (rational preset).
    Squarefree(i64),
    /// Sign class over R: +1 or -1.
    Sign(i64),
    /// Over C((h)): false = class of 1, true = class of h.
    Hbar(bool),
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        matches!(self, SquareClass::Squarefree(1) | SquareClass::Sign(1) | SquareClass::Hbar(false))
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SquareClass::Squarefree(m) => json!(m),
            SquareClass::Sign(s) => json!(s),
            SquareClass::Hbar(odd) => json!(if *odd { "hbar" } else { "1" }),
        }
    }
}

impl std::fmt::Display for SquareClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SquareClass::Squarefree(m) => write!(f, "{m}"),
            SquareClass::Sign(s) => write!(f, "{s}"),
            SquareClass::Hbar(true) => write!(f, "hbar"),
            SquareClass::Hbar(false) => write!(f, "1"),
        }
    }
}

fn expect_rational<'a>(preset: FieldPreset, x: &'a FieldElement) -> Result<&'a Rational> {
    match x {
        FieldElement::Rational(r) => Ok(r),
        FieldElement::Laurent { .. } => Err(Error::WrongPreset(preset)),
    }
}

/// True iff x is a square in the preset field.
pub fn is_square(preset: FieldPreset, x: &FieldElement) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    match preset {
        FieldPreset::RationalField => {
            let r = expect_rational(preset, x)?;
            if r.is_negative() {
                return Ok(false);
            }
            let num = r.numer();
            let den = r.denom();
            let sn = num.sqrt();
            let sd = den.sqrt();
            Ok(&sn * &sn == *num && &sd * &sd == *den)
        }
        FieldPreset::RealField => Ok(expect_rational(preset, x)?.is_positive()),
        FieldPreset::FormalLaurentField => match x {
            FieldElement::Laurent { valuation } => Ok(valuation.rem_euclid(2) == 0),
            FieldElement::Rational(_) => Err(Error::WrongPreset(preset)),
        },
    }
}

/// Canonical square class of x: idempotent, and two inputs agree iff their
/// ratio is a square.
pub fn square_class_canonicalize(preset: FieldPreset, x: &FieldElement) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    match preset {
        FieldPreset::RationalField => Ok(SquareClass::Squarefree(squarefree_part(expect_rational(preset, x)?)?)),
        FieldPreset::RealField => Ok(SquareClass::Sign(if expect_rational(preset, x)?.is_negative() { -1 } else { 1 })),
        FieldPreset::FormalLaurentField => match x {
            FieldElement::Laurent { valuation } => Ok(SquareClass::Hbar(valuation.rem_euclid(2) == 1)),
            FieldElement::Rational(_) => Err(Error::WrongPreset(preset)),
        },
    }
}

fn check_extension(preset: FieldPreset, d: &SquareClass) -> Result<()> {
    let square = match (preset, d) {
        (FieldPreset::RationalField, SquareClass::Squarefree(m)) => *m == 1,
        (FieldPreset::RealField, SquareClass::Sign(s)) => *s == 1,
        (FieldPreset::FormalLaurentField, SquareClass::Hbar(odd)) => !odd,
        _ => return Err(Error::WrongPreset(preset)),
    };
    if square {
        let id = match d {
            SquareClass::Squarefree(m) => *m,
            SquareClass::Sign(s) => *s,
            SquareClass::Hbar(_) => 1,
        };
        return Err(Error::NotAnExtension(id));
    }
    Ok(())
}

/// True iff x = a^2 - d b^2 for some a, b in F, i.e. x is a norm from F(sqrt d).
pub fn is_norm(preset: FieldPreset, d: &SquareClass, x: &FieldElement) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    check_extension(preset, d)?;
    match (preset, d) {
        (FieldPreset::RationalField, SquareClass::Squarefree(m)) => {
            let r = expect_rational(preset, x)?;
            Ok(hilbert_global(&Rational::from(BigInt::from(*m)), r)? == 1)
        }
        (FieldPreset::RealField, SquareClass::Sign(_)) => {
            // d = -1: norms are a^2 + b^2 >= 0
            Ok(expect_rational(preset, x)?.is_positive())
        }
        (FieldPreset::FormalLaurentField, SquareClass::Hbar(_)) => {
            // N(C((h))(sqrt h)) = C((h)): every element is a norm
            Ok(true)
        }
        _ => Err(Error::WrongPreset(preset)),
    }
}

/// Nontrivial square classes of the preset field, for iterating "d runs over
/// F*/(F*)^2 minus the trivial class". Infinite over Q, hence the bound:
/// squarefree d with |d| <= bound, ordered by (|d|, sign).
pub fn nontrivial_square_classes(preset: FieldPreset, bound: i64) -> Vec<SquareClass> {
    match preset {
        FieldPreset::RealField => vec![SquareClass::Sign(-1)],
        FieldPreset::FormalLaurentField => vec![SquareClass::Hbar(true)],
        FieldPreset::RationalField => {
            let mut out = Vec::new();
            for a in 1..=bound.max(0) {
                for d in [a, -a] {
                    if d != 1 && super::is_squarefree(d) {
                        out.push(SquareClass::Squarefree(d));
                    }
                }
            }
            out
        }
    }
}

/// Canonical coset representative of x modulo the norm group of F(sqrt d):
/// the squarefree integer m of minimal |m| (positive sign preferred) with
/// x/m a norm. This is a presentation choice only.
pub fn norm_class_representative(preset: FieldPreset, d: &SquareClass, x: &FieldElement) -> Result<SquareClass> {
    check_extension(preset, d)?;
    match preset {
        FieldPreset::RealField => Ok(SquareClass::Sign(if is_norm(preset, d, x)? { 1 } else { -1 })),
        FieldPreset::FormalLaurentField => Ok(SquareClass::Hbar(false)),
        FieldPreset::RationalField => {
            let t = squarefree_part(expect_rational(preset, x)?)?;
            for m in norm_class_candidates(t) {
                // x/m is a norm iff x*m is (they differ by the square m^2)
                let prod = FieldElement::from_int(t.checked_mul(m).ok_or(Error::SquareClassOverflow)?);
                if is_norm(preset, d, &prod)? {
                    return Ok(SquareClass::Squarefree(m));
                }
            }
            unreachable!("m = t always matches");
        }
    }
}

fn norm_class_candidates(t: i64) -> impl Iterator<Item = i64> {
    (1..=t.abs()).flat_map(|a| [a, -a]).filter(|m| super::is_squarefree(*m) || *m == 1)
}

/// Representatives of distinct norm classes over Q, streamed in canonical
/// order up to the given count. Used for describing the infinite group
/// Q*/N(Q(sqrt d)*).
pub fn stream_norm_classes(d: i64, count: usize) -> Result<Vec<i64>> {
    let mut reps: Vec<i64> = Vec::new();
    let mut a = 1i64;
    let preset = FieldPreset::RationalField;
    let dc = SquareClass::Squarefree(d);
    while reps.len() < count && a < 1000 {
        for m in [a, -a] {
            if reps.len() >= count {
                break;
            }
            if m != 1 && !super::is_squarefree(m) {
                continue;
            }
            let mut fresh = true;
            for r in &reps {
                // same class iff m*r is a norm
                if is_norm(preset, &dc, &FieldElement::from_int(m * r))? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                reps.push(m);
            }
        }
        a += 1;
    }
    Ok(reps)
}
