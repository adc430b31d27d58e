//! Construction and verification of Belavin-Drinfeld r-matrices on sl(n),
//! plus the string-parameterized centralizer.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactfield::{QuadExt, Rational};
use crate::lie::{
    cartan_casimir, casimir, cyb, negative_root_vector_unit, root_vector_unit, swap, MatrixUnit,
    Root, RootDatum, Tensor2,
};
use crate::matrix::{rat, Mat};
use crate::triples::{string_decomposition, AdmissibleTriple};

/// A BD r-matrix together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    pub n: usize,
    pub triple: AdmissibleTriple,
    pub r0: Tensor2,
    pub tensor: Tensor2,
}

impl RMatrix {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "triple": self.triple.to_json(),
            "r0": self.r0.to_json(),
            "terms": self.tensor.to_json(),
        })
    }
}

/// Value of the simple-root functional alpha_b on a diagonal unit E_jj
/// (b is a 1-based root label, j a 0-based matrix index).
fn simple_root_on_diag(b: usize, j: usize) -> i64 {
    if j + 1 == b {
        1
    } else if j == b {
        -1
    } else {
        0
    }
}

/// Applies (beta (x) 1 + 1 (x) alpha) to a Cartan-part tensor, returning the
/// n diagonal coordinates of the resulting element of h.
fn cartan_constraint_value(r0: &Tensor2, alpha: usize, beta: usize, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (&((i, i2), (j, j2)), c) in r0.terms() {
        assert!(i == i2 && j == j2, "r0 must lie in h (x) h");
        let c = c.as_rational().expect("r0 is rational").clone();
        let from_beta = simple_root_on_diag(beta, i);
        if from_beta != 0 {
            out[j] += &c * rat(from_beta, 1);
        }
        let from_alpha = simple_root_on_diag(alpha, j);
        if from_alpha != 0 {
            out[i] += &c * rat(from_alpha, 1);
        }
    }
    out
}

/// True iff r0 satisfies the defining constraints for the triple:
/// r0 + swap(r0) = Omega_0 and (tau(alpha) (x) 1 + 1 (x) alpha)(r0) = 0
/// for every alpha in gamma1.
pub fn r0_satisfies_constraints(t: &AdmissibleTriple, r0: &Tensor2) -> bool {
    if r0.terms().keys().any(|&((i, i2), (j, j2))| i != i2 || j != j2)
        || r0.terms().values().any(|c| !c.is_rational())
    {
        return false;
    }
    if r0.add(&swap(r0)).map(|s| s != cartan_casimir(t.n)) != Ok(false) {
        return false;
    }
    t.gamma1.iter().all(|&a| {
        cartan_constraint_value(r0, a, t.tau[&a], t.n)
            .iter()
            .all(|v| v.is_zero())
    })
}

/// Solves A x = b exactly by Gauss-Jordan elimination with free variables
/// set to zero. Returns None when the system is inconsistent.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, unknowns: usize) -> Option<Vec<Rational>> {
    let rows = a.len();
    let mut pivot_of_col = vec![None; unknowns];
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        b[row] *= &inv;
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c2 in 0..unknowns {
                    let delta = &f * &a[row][c2];
                    a[r][c2] -= delta;
                }
                let delta = &f * &b[row];
                b[r] -= delta;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    // rows with zero coefficients must have zero right-hand side
    for r in row..rows {
        if !b[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = b[*r].clone();
        }
    }
    Some(x)
}

/// The canonical continuous parameter: Omega_0/2 plus the antisymmetric
/// Cartan tensor solving (tau(alpha) (x) 1 + 1 (x) alpha)(r0) = 0, with free
/// variables of the echelon solution set to zero.
pub fn solve_r0(t: &AdmissibleTriple) -> Result<Tensor2> {
    t.validate()?;
    let n = t.n;
    let base = cartan_casimir(n).scale_rat(&rat(1, 2));
    if t.gamma1.is_empty() {
        return Ok(base);
    }
    // lambda = sum_{p<q} c_pq (h_p (x) h_q - h_q (x) h_p), h_p = E_pp - E_{p+1,p+1}
    let m = n - 1;
    let vars: Vec<(usize, usize)> = (0..m)
        .flat_map(|p| ((p + 1)..m).map(move |q| (p, q)))
        .collect();
    // coordinate of h_p at diagonal slot j
    let h_coord = |p: usize, j: usize| -> i64 {
        if j == p {
            1
        } else if j == p + 1 {
            -1
        } else {
            0
        }
    };
    // alpha_b(h_p)
    let pair = |b: usize, p: usize| -> i64 { h_coord(p, b - 1) - h_coord(p, b) };

    let mut a_rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for &alpha in &t.gamma1 {
        let beta = t.tau[&alpha];
        let base_value = cartan_constraint_value(&base, alpha, beta, n);
        for j in 0..n {
            let mut row = Vec::with_capacity(vars.len());
            for &(p, q) in &vars {
                // (beta (x) 1 + 1 (x) alpha) on h_p (x) h_q - h_q (x) h_p, coord j
                let v = pair(beta, p) * h_coord(q, j) - pair(beta, q) * h_coord(p, j)
                    + h_coord(p, j) * pair(alpha, q)
                    - h_coord(q, j) * pair(alpha, p);
                row.push(rat(v, 1));
            }
            a_rows.push(row);
            rhs.push(-&base_value[j]);
        }
    }
    let x = solve_linear(a_rows, rhs, vars.len()).ok_or(Error::NoContinuousParameter)?;
    let mut lambda = Tensor2::zero(n);
    for (&(p, q), c) in vars.iter().zip(&x) {
        if c.is_zero() {
            continue;
        }
        let cc = QuadExt::from_rational(c.clone());
        for (sp, jp) in [(1i64, p), (-1, p + 1)] {
            for (sq, jq) in [(1i64, q), (-1, q + 1)] {
                let v = cc.scale(&rat(sp * sq, 1));
                lambda.add_term((jp, jp), (jq, jq), v.clone());
                lambda.add_term((jq, jq), (jp, jp), -v);
            }
        }
    }
    let r0 = base.add(&lambda)?;
    debug_assert!(r0_satisfies_constraints(t, &r0));
    Ok(r0)
}

/// The Drinfeld-Jimbo r-matrix: sum over positive roots of
/// e_alpha (x) e_{-alpha}, plus Omega_0/2.
pub fn drinfeld_jimbo(n: usize) -> RMatrix {
    build_bd_rmatrix(&AdmissibleTriple::empty(n), None).expect("empty triple is valid")
}

/// Positive roots of the span of gamma1: (i, j) whose simple constituents
/// alpha_i .. alpha_{j-1} all lie in gamma1.
fn span_positive_roots(t: &AdmissibleTriple) -> Vec<Root> {
    RootDatum::new(t.n)
        .positive_roots()
        .into_iter()
        .filter(|&(i, j)| (i..j).all(|k| t.gamma1.contains(&k)))
        .collect()
}

/// tau^k of a positive root in Span(gamma1), extended additively: applies
/// tau^k to each simple constituent and reassembles the (necessarily
/// contiguous, by the isometry property) image segment. None when some
/// iterate leaves the domain of tau.
fn tau_power_root(t: &AdmissibleTriple, alpha: Root, k: usize) -> Option<Root> {
    let mut image = BTreeSet::new();
    for c in alpha.0..alpha.1 {
        image.insert(t.tau_iterate(c, k)?);
    }
    let lo = *image.iter().next().unwrap();
    let hi = *image.iter().next_back().unwrap();
    if image.len() != hi - lo + 1 {
        return None;
    }
    Some((lo, hi + 1))
}

/// Builds the r-matrix of the triple: r0 + sum e_alpha (x) e_{-alpha}
/// + wedge terms e_alpha /\ e_{-tau^k(alpha)}.
pub fn build_bd_rmatrix(t: &AdmissibleTriple, r0: Option<Tensor2>) -> Result<RMatrix> {
    t.validate()?;
    let n = t.n;
    let r0 = match r0 {
        Some(r0) => {
            if !r0_satisfies_constraints(t, &r0) {
                return Err(Error::BadContinuousParameter(
                    "r0 must lie in h (x) h with r0 + swap(r0) = Omega_0 and kill the tau functionals".into(),
                ));
            }
            r0
        }
        None => solve_r0(t)?,
    };
    let mut tensor = r0.clone();
    for alpha in RootDatum::new(n).positive_roots() {
        tensor.add_term(root_vector_unit(alpha), negative_root_vector_unit(alpha), QuadExt::one());
    }
    for alpha in span_positive_roots(t) {
        for k in 1.. {
            let Some(beta) = tau_power_root(t, alpha, k) else {
                break;
            };
            let e_a = root_vector_unit(alpha);
            let f_b = negative_root_vector_unit(beta);
            tensor.add_term(e_a, f_b, QuadExt::one());
            tensor.add_term(f_b, e_a, -QuadExt::one());
            // once an iterate leaves gamma1 the chain stops
            if !(beta.0..beta.1).all(|c| t.gamma1.contains(&c)) {
                break;
            }
        }
    }
    Ok(RMatrix { n, triple: t.clone(), r0, tensor })
}

/// Outcome of checking the two defining equations exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub symmetric_part_ok: bool,
    /// First nonzero coefficient of r + swap(r) - Omega, if any (1-based pairs).
    pub symmetric_failure: Option<((MatrixUnit, MatrixUnit), QuadExt)>,
    pub cyb_ok: bool,
    /// First nonzero coefficient of CYB(r), if any.
    pub cyb_failure: Option<((MatrixUnit, MatrixUnit, MatrixUnit), QuadExt)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.symmetric_part_ok && self.cyb_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        let unit = |(i, j): MatrixUnit| json!([i + 1, j + 1]);
        json!({
            "symmetric_part": self.symmetric_part_ok,
            "symmetric_failure": self.symmetric_failure.as_ref().map(|((p, q), c)| json!({
                "indices": [unit(*p), unit(*q)],
                "scalar": c.to_json(),
            })),
            "cyb": self.cyb_ok,
            "cyb_failure": self.cyb_failure.as_ref().map(|((p, q, r), c)| json!({
                "indices": [unit(*p), unit(*q), unit(*r)],
                "scalar": c.to_json(),
            })),
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass: r + r21 = Omega and CYB(r) = 0");
        }
        if let Some(((p, q), c)) = &self.symmetric_failure {
            writeln!(
                f,
                "fail: (r + r21 - Omega) has coefficient {c} at E[{},{}] (x) E[{},{}]",
                p.0 + 1,
                p.1 + 1,
                q.0 + 1,
                q.1 + 1
            )?;
        }
        if let Some(((p, q, r), c)) = &self.cyb_failure {
            writeln!(
                f,
                "fail: CYB(r) has coefficient {c} at E[{},{}] (x) E[{},{}] (x) E[{},{}]",
                p.0 + 1,
                p.1 + 1,
                q.0 + 1,
                q.1 + 1,
                r.0 + 1,
                r.1 + 1
            )?;
        }
        Ok(())
    }
}

/// Checks r + swap(r) = Omega and CYB(r) = 0 on an arbitrary tensor.
pub fn verify_tensor(n: usize, tensor: &Tensor2) -> VerificationReport {
    let sym = tensor
        .add(&swap(tensor))
        .and_then(|s| s.sub(&casimir(n)))
        .expect("sizes match");
    let symmetric_failure = sym.terms().iter().next().map(|(&k, v)| (k, v.clone()));
    let cy = cyb(tensor);
    let cyb_failure = cy.first_term();
    VerificationReport {
        symmetric_part_ok: symmetric_failure.is_none(),
        symmetric_failure,
        cyb_ok: cyb_failure.is_none(),
        cyb_failure,
    }
}

pub fn verify_rmatrix(r: &RMatrix) -> VerificationReport {
    verify_tensor(r.n, &r.tensor)
}

/// The centralizer C(r) of a BD r-matrix, restricted to diagonal matrices:
/// described by the classes of s-coordinates (s_i = d_i / d_{i+1},
/// s_n = d_n) forced equal along tau-strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDescription {
    pub triple: AdmissibleTriple,
    /// Partition of the s-coordinate index set {1..n}; coordinates in one
    /// class must coincide.
    pub classes: Vec<BTreeSet<usize>>,
}

pub fn centralizer_description(t: &AdmissibleTriple) -> Result<CentralizerDescription> {
    let decomposition = string_decomposition(t)?;
    let mut classes: Vec<BTreeSet<usize>> = decomposition
        .strings
        .iter()
        .map(|s| s.indices.iter().copied().collect())
        .collect();
    // s_n is never touched by a string
    classes.push([t.n].into());
    classes.sort();
    Ok(CentralizerDescription { triple: t.clone(), classes })
}

impl CentralizerDescription {
    /// s-coordinates of a diagonal matrix: s_i = d_i/d_{i+1}, s_n = d_n.
    pub fn s_coordinates(d: &Mat) -> Result<Vec<QuadExt>> {
        let n = d.size();
        let entries = d.diagonal_entries();
        let mut s = Vec::with_capacity(n);
        for i in 0..n - 1 {
            s.push(entries[i].checked_div(&entries[i + 1])?);
        }
        s.push(entries[n - 1].clone());
        Ok(s)
    }

    /// Membership of an invertible diagonal matrix in C(r).
    pub fn contains(&self, d: &Mat) -> Result<bool> {
        if d.size() != self.triple.n {
            return Err(Error::RankMismatch(d.size(), self.triple.n));
        }
        if !d.is_diagonal() {
            return Ok(false);
        }
        let s = Self::s_coordinates(d)?;
        for class in &self.classes {
            let mut vals = class.iter().map(|&i| &s[i - 1]);
            let first = vals.next().expect("classes are nonempty");
            if vals.any(|v| v != first) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "triple": self.triple.to_json(),
            "classes": self.classes.iter().map(|c| c.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Membership test for a diagonal matrix via the string description.
pub fn centralizer_contains(r: &RMatrix, d: &Mat) -> Result<bool> {
    centralizer_description(&r.triple)?.contains(d)
}
