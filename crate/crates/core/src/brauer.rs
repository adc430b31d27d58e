//! Quaternion algebras (d, b), the Brauer 2-torsion descriptors attached to
//! twisted classes, and the total twisted cohomology over all extensions.

use num::{BigInt, Zero};
use serde_json::json;

use crate::cohomology::{twisted_cohomology, CohomologyReport};
use crate::error::{Error, Result};
use crate::exactfield::{
    hilbert_local, is_norm, nontrivial_square_classes, relevant_places, square_class_canonicalize,
    FieldElement, FieldPreset, Place, Rational, SquareClass,
};
use crate::triples::AdmissibleTriple;

/// The 4-dimensional algebra with basis {1, x, y, xy}, x^2 = d, y^2 = b,
/// xy = -yx.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionAlgebra {
    pub d: Rational,
    pub b: Rational,
}

/// Coordinates in the basis (1, x, y, xy).
pub type Quaternion = [Rational; 4];

impl QuaternionAlgebra {
    pub fn new(d: Rational, b: Rational) -> Result<Self> {
        if d.is_zero() || b.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(QuaternionAlgebra { d, b })
    }

    pub fn basis(i: usize) -> Quaternion {
        let mut u = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        u[i] = Rational::from(BigInt::from(1));
        u
    }

    /// Bilinear product from the defining relations.
    pub fn multiply(&self, u: &Quaternion, v: &Quaternion) -> Quaternion {
        let d = &self.d;
        let b = &self.b;
        let db = d * b;
        // e1^2 = d, e2^2 = b, e3^2 = -db
        // e1 e2 = e3, e2 e1 = -e3
        // e1 e3 = d e2, e3 e1 = -d e2
        // e2 e3 = -b e1, e3 e2 = b e1
        let c0 = &u[0] * &v[0] + d * (&u[1] * &v[1]) + b * (&u[2] * &v[2]) - &db * (&u[3] * &v[3]);
        let c1 = &u[0] * &v[1] + &u[1] * &v[0] - b * (&u[2] * &v[3]) + b * (&u[3] * &v[2]);
        let c2 = &u[0] * &v[2] + &u[2] * &v[0] + d * (&u[1] * &v[3]) - d * (&u[3] * &v[1]);
        let c3 = &u[0] * &v[3] + &u[3] * &v[0] + &u[1] * &v[2] - &u[2] * &v[1];
        [c0, c1, c2, c3]
    }

    /// Reduced norm z^2 - d x^2 - b y^2 + d b w^2; multiplicative, and zero
    /// exactly on zero divisors (or zero itself).
    pub fn reduced_norm(&self, u: &Quaternion) -> Rational {
        &u[0] * &u[0] - &self.d * (&u[1] * &u[1]) - &self.b * (&u[2] * &u[2])
            + &self.d * &self.b * (&u[3] * &u[3])
    }
}

/// The Brauer-class data of the pair (d, b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerClassDescriptor {
    pub d: SquareClass,
    pub b: SquareClass,
    pub split: bool,
    /// Places with local Hilbert symbol -1; populated for the rational preset.
    pub bad_places: Vec<Place>,
}

impl BrauerClassDescriptor {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d.to_json(),
            "b": self.b.to_json(),
            "split": self.split,
            "bad_places": self
                .bad_places
                .iter()
                .map(|p| match p {
                    Place::Prime(q) => json!(q),
                    Place::Infinity => json!("inf"),
                })
                .collect::<Vec<_>>(),
        })
    }
}

/// Splitting of (d, b): split iff b is a norm from F(sqrt d) (trivially split
/// for square d).
pub fn is_split(preset: FieldPreset, d: &FieldElement, b: &FieldElement) -> Result<BrauerClassDescriptor> {
    let d_class = square_class_canonicalize(preset, d)?;
    let b_class = square_class_canonicalize(preset, b)?;
    let split = if d_class.is_trivial() {
        true
    } else {
        is_norm(preset, &d_class, b)?
    };
    let bad_places = match (preset, d, b) {
        (FieldPreset::RationalField, FieldElement::Rational(dr), FieldElement::Rational(br)) => {
            if d_class.is_trivial() {
                vec![]
            } else {
                let mut bad = Vec::new();
                for place in relevant_places(dr, br)? {
                    if hilbert_local(dr, br, place)? == -1 {
                        bad.push(place);
                    }
                }
                bad
            }
        }
        _ => vec![],
    };
    Ok(BrauerClassDescriptor { d: d_class, b: b_class, split, bad_places })
}

/// The map into the Brauer group's 2-torsion: requires a genuine quadratic
/// class d.
pub fn brauer_map(preset: FieldPreset, d: &FieldElement, b: &FieldElement) -> Result<BrauerClassDescriptor> {
    let d_class = square_class_canonicalize(preset, d)?;
    if d_class.is_trivial() {
        return Err(Error::NotAnExtension(match d_class {
            SquareClass::Squarefree(m) => m,
            SquareClass::Sign(s) => s,
            SquareClass::Hbar(_) => 1,
        }));
    }
    is_split(preset, d, b)
}

/// Equality of Brauer classes: local symbol comparison over Q, split-flag
/// comparison over R and C((hbar)).
pub fn brauer_equal(
    preset: FieldPreset,
    p1: (&FieldElement, &FieldElement),
    p2: (&FieldElement, &FieldElement),
) -> Result<bool> {
    match preset {
        FieldPreset::RationalField => {
            let rational = |x: &FieldElement| match x {
                FieldElement::Rational(r) => Ok(r.clone()),
                _ => Err(Error::WrongPreset(preset)),
            };
            let (d1, b1) = (rational(p1.0)?, rational(p1.1)?);
            let (d2, b2) = (rational(p2.0)?, rational(p2.1)?);
            let mut places = relevant_places(&d1, &b1)?;
            places.extend(relevant_places(&d2, &b2)?);
            places.sort();
            places.dedup();
            for place in places {
                if hilbert_local(&d1, &b1, place)? != hilbert_local(&d2, &b2, place)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(is_split(preset, p1.0, p1.1)?.split == is_split(preset, p2.0, p2.1)?.split),
    }
}

/// Searches for a nonzero quaternion of zero reduced norm with integer
/// coordinates bounded by `bound`. A witness certifies the algebra splits;
/// absence of one is inconclusive.
pub fn zero_divisor_search(d: i64, b: i64, bound: i64) -> Option<[i64; 4]> {
    // square coefficients give immediate witnesses e^2 - d = 0
    for e in 0..=bound {
        if e * e == d {
            return Some([e, 1, 0, 0]);
        }
        if e * e == b {
            return Some([e, 0, 1, 0]);
        }
    }
    // 0, 1, -1, 2, -2, ...: the first witness found has minimal coordinates
    let range: Vec<i64> = std::iter::once(0)
        .chain((1..=bound).flat_map(|v| [v, -v]))
        .collect();
    for &z in &range {
        for &x in &range {
            for &y in &range {
                for &w in &range {
                    if z == 0 && x == 0 && y == 0 && w == 0 {
                        continue;
                    }
                    if z * z - d * x * x - b * y * y + d * b * w * w == 0 {
                        return Some([z, x, y, w]);
                    }
                }
            }
        }
    }
    None
}

/// The union of the twisted cohomologies over all nontrivial square classes
/// d (bounded over Q, where there are infinitely many).
pub fn total_twisted_cohomology(
    t: &AdmissibleTriple,
    preset: FieldPreset,
    d_bound: i64,
    class_limit: usize,
) -> Result<Vec<(SquareClass, CohomologyReport)>> {
    let mut out = Vec::new();
    for d_class in nontrivial_square_classes(preset, d_bound) {
        let report = twisted_cohomology(t, preset, &d_class, class_limit)?;
        out.push((d_class, report));
    }
    Ok(out)
}

pub const DEFAULT_D_BOUND: i64 = 10;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::Rational(q(n))
    }

    #[test]
    fn multiplication_table() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        let x = QuaternionAlgebra::basis(1);
        let y = QuaternionAlgebra::basis(2);
        let xy = QuaternionAlgebra::basis(3);
        assert_eq!(a.multiply(&x, &y), xy);
        // yx = -xy
        let yx = a.multiply(&y, &x);
        assert_eq!(yx, [q(0), q(0), q(0), q(-1)]);
        // (xy)^2 = -db = -1 for d = b = -1
        assert_eq!(a.multiply(&xy, &xy), [q(-1), q(0), q(0), q(0)]);
        // (1+x)(1-x) = 1 - x^2 = 2
        let u = [q(1), q(1), q(0), q(0)];
        let v = [q(1), q(-1), q(0), q(0)];
        assert_eq!(a.multiply(&u, &v), [q(2), q(0), q(0), q(0)]);
    }

    #[test]
    fn associativity_on_basis_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..10 {
            let d = loop {
                let v = rng.gen_range(-9i64..=9);
                if v != 0 {
                    break v;
                }
            };
            let b = loop {
                let v = rng.gen_range(-9i64..=9);
                if v != 0 {
                    break v;
                }
            };
            let a = QuaternionAlgebra::new(q(d), q(b)).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let (u, v, w) = (
                            QuaternionAlgebra::basis(i),
                            QuaternionAlgebra::basis(j),
                            QuaternionAlgebra::basis(k),
                        );
                        let lhs = a.multiply(&a.multiply(&u, &v), &w);
                        let rhs = a.multiply(&u, &a.multiply(&v, &w));
                        assert_eq!(lhs, rhs, "({d},{b}) e{i} e{j} e{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let a = QuaternionAlgebra::new(q(2), q(-3)).unwrap();
        for _ in 0..50 {
            let u: Quaternion = std::array::from_fn(|_| q(rng.gen_range(-5..=5)));
            let v: Quaternion = std::array::from_fn(|_| q(rng.gen_range(-5..=5)));
            assert_eq!(a.reduced_norm(&a.multiply(&u, &v)), a.reduced_norm(&u) * a.reduced_norm(&v));
        }
    }

    #[test]
    fn splitting_examples() {
        // Hamilton quaternions over R
        let h = is_split(FieldPreset::RealField, &fe(-1), &fe(-1)).unwrap();
        assert!(!h.split);
        // square d always splits
        let s = is_split(FieldPreset::RationalField, &fe(4), &fe(7)).unwrap();
        assert!(s.split);
        assert!(s.bad_places.is_empty());
        // 5 = 1^2 + 2^2 is a norm from Q(i)
        assert!(is_split(FieldPreset::RationalField, &fe(-1), &fe(5)).unwrap().split);
        // over C((hbar)) everything splits
        let l = is_split(
            FieldPreset::FormalLaurentField,
            &FieldElement::Laurent { valuation: 1 },
            &FieldElement::Laurent { valuation: 3 },
        )
        .unwrap();
        assert!(l.split);
    }

    #[test]
    fn brauer_map_examples() {
        let h = brauer_map(FieldPreset::RationalField, &fe(-1), &fe(-1)).unwrap();
        assert!(!h.split);
        assert_eq!(h.bad_places, vec![Place::Infinity, Place::Prime(2)]);
        let t = brauer_map(FieldPreset::RationalField, &fe(-1), &fe(5)).unwrap();
        assert!(t.split);
        assert!(t.bad_places.is_empty());
        // square d is rejected by the map proper
        assert!(matches!(
            brauer_map(FieldPreset::RationalField, &fe(9), &fe(5)),
            Err(Error::NotAnExtension(1))
        ));
        let mixed = brauer_map(FieldPreset::RationalField, &fe(2), &fe(3)).unwrap();
        // (2,3): check against direct local symbols
        for place in [Place::Infinity, Place::Prime(2), Place::Prime(3)] {
            let local = hilbert_local(&q(2), &q(3), place).unwrap();
            assert_eq!(mixed.bad_places.contains(&place), local == -1);
        }
    }

    #[test]
    fn brauer_symmetry_and_square_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for _ in 0..40 {
            let d = loop {
                let v = rng.gen_range(-15i64..=15);
                if v != 0 {
                    break v;
                }
            };
            let b = loop {
                let v = rng.gen_range(-15i64..=15);
                if v != 0 {
                    break v;
                }
            };
            let p = FieldPreset::RationalField;
            assert!(brauer_equal(p, (&fe(d), &fe(b)), (&fe(b), &fe(d))).unwrap());
            assert!(brauer_equal(p, (&fe(d), &fe(b)), (&fe(d), &fe(b * 9))).unwrap());
            assert!(brauer_equal(p, (&fe(d), &fe(b)), (&fe(d * 4), &fe(b))).unwrap());
        }
    }

    #[test]
    fn brauer_equality_examples() {
        let p = FieldPreset::RationalField;
        assert!(brauer_equal(p, (&fe(-1), &fe(-1)), (&fe(-1), &fe(-1))).unwrap());
        assert!(brauer_equal(p, (&fe(2), &fe(3)), (&fe(3), &fe(2))).unwrap());
        assert!(!brauer_equal(p, (&fe(-1), &fe(-1)), (&fe(-1), &fe(5))).unwrap());
    }

    #[test]
    fn bad_place_lists_have_even_size() {
        for d in -10i64..=10 {
            for b in -10i64..=10 {
                if d == 0 || b == 0 {
                    continue;
                }
                let desc = is_split(FieldPreset::RationalField, &fe(d), &fe(b)).unwrap();
                assert_eq!(desc.bad_places.len() % 2, 0, "(d,b)=({d},{b})");
                assert_eq!(desc.split, desc.bad_places.is_empty());
            }
        }
    }

    #[test]
    fn zero_divisor_consistency() {
        assert_eq!(zero_divisor_search(1, 7, 2), Some([1, 1, 0, 0]));
        assert!(zero_divisor_search(-1, -1, 20).is_none());
        assert!(zero_divisor_search(-1, 5, 20).is_some());
        // witness implies split; non-split implies no witness
        for d in [-1i64, 2, -2, 3, 5] {
            for b in [-1i64, 2, 3, 5, -5, 6] {
                let witness = zero_divisor_search(d, b, 8);
                let desc = is_split(FieldPreset::RationalField, &fe(d), &fe(b)).unwrap();
                if let Some(w) = witness {
                    assert!(desc.split, "witness {w:?} for non-split ({d},{b})");
                    let a = QuaternionAlgebra::new(q(d), q(b)).unwrap();
                    let u: Quaternion = std::array::from_fn(|i| q(w[i]));
                    assert!(a.reduced_norm(&u).is_zero());
                }
                if !desc.split {
                    assert!(witness.is_none());
                }
            }
        }
    }

    #[test]
    fn total_cohomology_examples() {
        let cg = AdmissibleTriple::cremmer_gervais();
        let real = total_twisted_cohomology(&cg, FieldPreset::RealField, 0, 8).unwrap();
        assert_eq!(real.len(), 1);
        assert_eq!(real[0].0, SquareClass::Sign(-1));
        assert_eq!(real[0].1.classes.len(), 2);

        let rational = total_twisted_cohomology(&cg, FieldPreset::RationalField, 3, 4).unwrap();
        let ds: Vec<SquareClass> = rational.iter().map(|(d, _)| d.clone()).collect();
        assert_eq!(
            ds,
            [-1i64, 2, -2, 3, -3].map(SquareClass::Squarefree).to_vec()
        );
        for (_, report) in &rational {
            assert_eq!(report.str_count, 1);
            assert!(report.group.order.is_none());
        }

        let bad = AdmissibleTriple::new(4, [1], [2], [(1, 2)]).unwrap();
        for (_, report) in total_twisted_cohomology(&bad, FieldPreset::RationalField, 3, 4).unwrap() {
            assert!(!report.twistable);
            assert!(report.classes.is_empty());
        }
    }
}
