//! Exact tensor algebra for sl(n): basis, brackets, roots, Casimir, the CYB
//! operator, swap, and the gauge action.
//!
//! Elements are kept as sparse maps over the gl(n) matrix-unit basis with
//! trace-zero legs. Matrix-unit indices are 0-based in the Rust API; root
//! labels (alpha_1 .. alpha_{n-1}) stay 1-based, matching the usual Dynkin
//! numbering. A positive root is a pair (i, j) with 1 <= i < j <= n, whose
//! root vector e_alpha is the matrix unit E_{i-1, j-1}.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::exactfield::{QuadExt, Rational};
use crate::matrix::{rat, Mat};

/// (row, col), 0-based.
pub type MatrixUnit = (usize, usize);

/// A positive root (i, j), 1-based, i < j; alpha_k = (k, k+1).
pub type Root = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub n: usize,
}

impl RootDatum {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        RootDatum { n }
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                out.push((i, j));
            }
        }
        out
    }

    pub fn simple_root(&self, k: usize) -> Root {
        assert!((1..self.n).contains(&k));
        (k, k + 1)
    }

    /// Cartan matrix of type A_{n-1}, entries in {2, -1, 0}.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.n - 1;
        (1..=m)
            .map(|i| {
                (1..=m)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Matrix unit realizing the root vector e_alpha for a positive root.
pub fn root_vector_unit(alpha: Root) -> MatrixUnit {
    (alpha.0 - 1, alpha.1 - 1)
}

/// Matrix unit realizing e_{-alpha}.
pub fn negative_root_vector_unit(alpha: Root) -> MatrixUnit {
    (alpha.1 - 1, alpha.0 - 1)
}

/// [E_p, E_q] in the matrix-unit basis: up to two signed units.
fn unit_bracket(p: MatrixUnit, q: MatrixUnit) -> Vec<(MatrixUnit, i64)> {
    let mut out = Vec::with_capacity(2);
    if p.1 == q.0 {
        out.push(((p.0, q.1), 1));
    }
    if q.1 == p.0 {
        out.push(((q.0, p.1), -1));
    }
    out
}

/// A sparse element of gl(n) (trace-zero for sl(n) members).
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    n: usize,
    coeffs: BTreeMap<MatrixUnit, QuadExt>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement { n, coeffs: BTreeMap::new() }
    }

    /// The matrix unit E_ij (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term((i, j), QuadExt::one());
        e
    }

    /// E_ii - E_jj (0-based).
    pub fn cartan(n: usize, i: usize, j: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term((i, i), QuadExt::one());
        e.add_term((j, j), -QuadExt::one());
        e
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<MatrixUnit, QuadExt> {
        &self.coeffs
    }

    pub fn coeff(&self, p: MatrixUnit) -> QuadExt {
        self.coeffs.get(&p).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn add_term(&mut self, p: MatrixUnit, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(p).or_insert_with(QuadExt::zero);
        *entry = entry.checked_add(&c).expect("extension mismatch");
        if entry.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (&p, c) in &other.coeffs {
            out.add_term(p, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        let mut out = Self::zero(self.n);
        for (&p, c) in &self.coeffs {
            out.add_term(p, c.checked_mul(k).expect("extension mismatch"));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn trace(&self) -> QuadExt {
        let mut acc = QuadExt::zero();
        for i in 0..self.n {
            acc = acc.checked_add(&self.coeff((i, i))).expect("extension mismatch");
        }
        acc
    }

    /// Build from a dense matrix (used by the gauge action).
    pub fn from_matrix(m: &Mat) -> Self {
        let n = m.size();
        let mut e = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                e.add_term((i, j), m.get(i, j).clone());
            }
        }
        e
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(i, j), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*E[{},{}]", i + 1, j + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Commutator ab - ba.
pub fn bracket(a: &LieElement, b: &LieElement) -> Result<LieElement> {
    if a.n != b.n {
        return Err(Error::RankMismatch(a.n, b.n));
    }
    let mut out = LieElement::zero(a.n);
    for (&p, cp) in &a.coeffs {
        for (&q, cq) in &b.coeffs {
            let c = cp.checked_mul(cq)?;
            for (unit, sign) in unit_bracket(p, q) {
                let signed = if sign < 0 { -&c } else { c.clone() };
                out.add_term(unit, signed);
            }
        }
    }
    Ok(out)
}

/// tr(ab): symmetric invariant form with trace_form(e_alpha, e_{-alpha}) = 1.
pub fn trace_form(a: &LieElement, b: &LieElement) -> Result<QuadExt> {
    if a.n != b.n {
        return Err(Error::RankMismatch(a.n, b.n));
    }
    let mut acc = QuadExt::zero();
    for (&(i, j), cp) in &a.coeffs {
        let c = b.coeff((j, i));
        if !c.is_zero() {
            acc = acc.checked_add(&cp.checked_mul(&c)?)?;
        }
    }
    Ok(acc)
}

/// A sparse element of sl(n) tensor sl(n).
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor2 {
    n: usize,
    terms: BTreeMap<(MatrixUnit, MatrixUnit), QuadExt>,
}

impl Tensor2 {
    pub fn zero(n: usize) -> Self {
        Tensor2 { n, terms: BTreeMap::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(MatrixUnit, MatrixUnit), QuadExt> {
        &self.terms
    }

    pub fn add_term(&mut self, p: MatrixUnit, q: MatrixUnit, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q)).or_insert_with(QuadExt::zero);
        *entry = entry.checked_add(&c).expect("extension mismatch");
        if entry.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    /// a (x) b for sparse elements.
    pub fn product(a: &LieElement, b: &LieElement) -> Result<Self> {
        if a.size() != b.size() {
            return Err(Error::RankMismatch(a.size(), b.size()));
        }
        let mut out = Self::zero(a.size());
        for (&p, cp) in a.coeffs() {
            for (&q, cq) in b.coeffs() {
                out.add_term(p, q, cp.checked_mul(cq)?);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.add_term(p, q, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, -c);
        }
        out
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        let mut out = Self::zero(self.n);
        for (&(p, q), c) in &self.terms {
            out.add_term(p, q, c.checked_mul(k).expect("extension mismatch"));
        }
        out
    }

    pub fn scale_rat(&self, k: &Rational) -> Self {
        self.scale(&QuadExt::from_rational(k.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leg-wise projection gl -> sl (diagonal units get their trace part
    /// removed). Constructions from root vectors are already traceless;
    /// this is for raw gl input.
    pub fn project_sl(&self) -> Self {
        let n = self.n;
        let third = rat(1, n as i64);
        let mut out = Self::zero(n);
        for (&(p, q), c) in &self.terms {
            // expand leg 1
            let leg1: Vec<(MatrixUnit, QuadExt)> = project_unit(p, n, &third, c);
            for (p2, c2) in leg1 {
                for (q2, c3) in project_unit(q, n, &third, &c2) {
                    out.add_term(p2, q2, c3);
                }
            }
        }
        out
    }

    /// (tr (x) id) of the tensor; vanishes for elements of sl(n) (x) sl(n).
    pub fn partial_trace_first(&self) -> LieElement {
        let mut out = LieElement::zero(self.n);
        for (&(p, q), c) in &self.terms {
            if p.0 == p.1 {
                out.add_term(q, c.clone());
            }
        }
        out
    }

    pub fn partial_trace_second(&self) -> LieElement {
        let mut out = LieElement::zero(self.n);
        for (&(p, q), c) in &self.terms {
            if q.0 == q.1 {
                out.add_term(p, c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .terms
            .iter()
            .map(|(&((i, j), (k, l)), c)| {
                json!({
                    "indices": [[i + 1, j + 1], [k + 1, l + 1]],
                    "scalar": c.to_json(),
                })
            })
            .collect::<Vec<_>>())
    }
}

fn project_unit(p: MatrixUnit, n: usize, inv_n: &Rational, c: &QuadExt) -> Vec<(MatrixUnit, QuadExt)> {
    if p.0 != p.1 {
        return vec![(p, c.clone())];
    }
    let mut out = vec![(p, c.clone())];
    let corr = -c.scale(inv_n);
    for k in 0..n {
        out.push(((k, k), corr.clone()));
    }
    out
}

impl fmt::Debug for Tensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&((i, j), (k, l)), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*E[{},{}]xE[{},{}]", i + 1, j + 1, k + 1, l + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A sparse element of the triple tensor power.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    terms: BTreeMap<(MatrixUnit, MatrixUnit, MatrixUnit), QuadExt>,
}

impl Tensor3 {
    pub fn zero(n: usize) -> Self {
        Tensor3 { n, terms: BTreeMap::new() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(MatrixUnit, MatrixUnit, MatrixUnit), QuadExt> {
        &self.terms
    }

    pub fn add_term(&mut self, p: MatrixUnit, q: MatrixUnit, r: MatrixUnit, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((p, q, r)).or_insert_with(QuadExt::zero);
        *entry = entry.checked_add(&c).expect("extension mismatch");
        if entry.is_zero() {
            self.terms.remove(&(p, q, r));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// First term in lexicographic index order, for failure localization.
    pub fn first_term(&self) -> Option<((MatrixUnit, MatrixUnit, MatrixUnit), QuadExt)> {
        self.terms.iter().next().map(|(&k, v)| (k, v.clone()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .terms
            .iter()
            .map(|(&((i, j), (k, l), (u, v)), c)| {
                json!({
                    "indices": [[i + 1, j + 1], [k + 1, l + 1], [u + 1, v + 1]],
                    "scalar": c.to_json(),
                })
            })
            .collect::<Vec<_>>())
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3({} terms)", self.terms.len())
    }
}

/// The quadratic Casimir: dual tensor of the trace form on sl(n).
pub fn casimir(n: usize) -> Tensor2 {
    let mut t = Tensor2::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                t.add_term((i, j), (j, i), QuadExt::one());
            }
        }
    }
    t.add(&cartan_casimir(n)).expect("rank match")
}

/// The Cartan part: sum_i E_ii (x) E_ii - (1/n) I (x) I.
pub fn cartan_casimir(n: usize) -> Tensor2 {
    let mut t = Tensor2::zero(n);
    let inv_n = QuadExt::from_ratio(1, n as i64);
    for i in 0..n {
        t.add_term((i, i), (i, i), QuadExt::one());
    }
    for i in 0..n {
        for j in 0..n {
            t.add_term((i, i), (j, j), -&inv_n);
        }
    }
    t
}

/// (a (x) b) -> (b (x) a), extended linearly.
pub fn swap(r: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::zero(r.n);
    for (&(p, q), c) in &r.terms {
        out.add_term(q, p, c.clone());
    }
    out
}

/// CYB(r) = [r12, r13] + [r12, r23] + [r13, r23].
///
/// For r = sum a_i (x) b_i this expands to
/// sum_ij [a_i,a_j] (x) b_i (x) b_j + a_i (x) [b_i,a_j] (x) b_j
///      + a_i (x) a_j (x) [b_i,b_j].
pub fn cyb(r: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero(r.n);
    for (&(p1, q1), c1) in &r.terms {
        for (&(p2, q2), c2) in &r.terms {
            let c = c1.checked_mul(c2).expect("extension mismatch");
            for (u, sign) in unit_bracket(p1, p2) {
                out.add_term(u, q1, q2, signed(&c, sign));
            }
            for (u, sign) in unit_bracket(q1, p2) {
                out.add_term(p1, u, q2, signed(&c, sign));
            }
            for (u, sign) in unit_bracket(q1, q2) {
                out.add_term(p1, p2, u, signed(&c, sign));
            }
        }
    }
    out
}

fn signed(c: &QuadExt, sign: i64) -> QuadExt {
    if sign < 0 {
        -c
    } else {
        c.clone()
    }
}

/// (Ad_X (x) Ad_X)(r) with Ad_X(a) = X a X^{-1}.
pub fn gauge_transform(x: &Mat, r: &Tensor2) -> Result<Tensor2> {
    if x.size() != r.n {
        return Err(Error::RankMismatch(x.size(), r.n));
    }
    let xi = x.inverse()?;
    let n = r.n;
    let mut out = Tensor2::zero(n);
    for (&((i, j), (k, l)), c) in &r.terms {
        // Ad_X(E_ij) = column i of X times row j of X^{-1}
        for a in 0..n {
            let xa = x.get(a, i);
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                let f1 = xa.checked_mul(xi.get(j, b))?;
                if f1.is_zero() {
                    continue;
                }
                for cc in 0..n {
                    let xc = x.get(cc, k);
                    if xc.is_zero() {
                        continue;
                    }
                    for e in 0..n {
                        let f2 = xc.checked_mul(xi.get(l, e))?;
                        if f2.is_zero() {
                            continue;
                        }
                        out.add_term((a, b), (cc, e), c.checked_mul(&f1)?.checked_mul(&f2)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Ad_X applied to a single element (used by centralizer cross-checks).
pub fn adjoint(x: &Mat, a: &LieElement) -> Result<LieElement> {
    let xi = x.inverse()?;
    let n = a.size();
    let mut m = Mat::zero(n);
    for (&(i, j), c) in a.coeffs() {
        for r in 0..n {
            for s in 0..n {
                let v = x.get(r, i).checked_mul(c)?.checked_mul(xi.get(j, s))?;
                m.set(r, s, m.get(r, s).checked_add(&v)?);
            }
        }
    }
    Ok(LieElement::from_matrix(&m))
}
