//! Admissible Belavin-Drinfeld triples for the A_{n-1} diagram: validation,
//! enumeration, the diagram involution, twistability, and string
//! decompositions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::lie::RootDatum;

pub const DEFAULT_ENUMERATION_BOUND: usize = 8;

/// A triple (Gamma_1, Gamma_2, tau) of simple-root data for sl(n).
/// Simple roots carry their Dynkin labels 1..n-1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleTriple {
    pub n: usize,
    pub gamma1: BTreeSet<usize>,
    pub gamma2: BTreeSet<usize>,
    pub tau: BTreeMap<usize, usize>,
}

impl AdmissibleTriple {
    pub fn new(
        n: usize,
        gamma1: impl IntoIterator<Item = usize>,
        gamma2: impl IntoIterator<Item = usize>,
        tau: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let t = AdmissibleTriple {
            n,
            gamma1: gamma1.into_iter().collect(),
            gamma2: gamma2.into_iter().collect(),
            tau: tau.into_iter().collect(),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn empty(n: usize) -> Self {
        AdmissibleTriple { n, gamma1: BTreeSet::new(), gamma2: BTreeSet::new(), tau: BTreeMap::new() }
    }

    /// The Cremmer-Gervais triple ({1}, {2}, 1 -> 2) for n = 3.
    pub fn cremmer_gervais() -> Self {
        AdmissibleTriple {
            n: 3,
            gamma1: [1].into(),
            gamma2: [2].into(),
            tau: [(1, 2)].into(),
        }
    }

    /// Checks well-formedness plus the two admissibility conditions,
    /// reporting the first violation found.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::MalformedTriple(format!("n = {} < 2", self.n)));
        }
        for &i in self.gamma1.iter().chain(&self.gamma2) {
            if !(1..self.n).contains(&i) {
                return Err(Error::MalformedTriple(format!(
                    "root index {i} outside 1..{}",
                    self.n - 1
                )));
            }
        }
        if self.gamma1.len() != self.gamma2.len() {
            return Err(Error::MalformedTriple(format!(
                "|gamma1| = {} but |gamma2| = {}",
                self.gamma1.len(),
                self.gamma2.len()
            )));
        }
        if !self.gamma1.is_empty() && self.gamma1.len() >= self.n - 1 {
            return Err(Error::InvalidTriple(format!(
                "gamma1 must be a proper subset of the {} simple roots",
                self.n - 1
            )));
        }
        if self.tau.len() != self.gamma1.len()
            || self.tau.keys().any(|k| !self.gamma1.contains(k))
            || self.tau.values().collect::<BTreeSet<_>>().len() != self.tau.len()
            || self.tau.values().any(|v| !self.gamma2.contains(v))
        {
            return Err(Error::MalformedTriple(
                "tau is not a bijection gamma1 -> gamma2".into(),
            ));
        }
        // isometry: tau preserves Cartan-matrix entries
        let cartan = RootDatum::new(self.n).cartan_matrix();
        for &a in &self.gamma1 {
            for &b in &self.gamma1 {
                let (ta, tb) = (self.tau[&a], self.tau[&b]);
                if cartan[a - 1][b - 1] != cartan[ta - 1][tb - 1] {
                    return Err(Error::InvalidTriple(format!(
                        "tau is not an isometry: A({a},{b}) != A({ta},{tb})"
                    )));
                }
            }
        }
        // nilpotency: iterating tau eventually leaves gamma1
        for &a in &self.gamma1 {
            let mut cur = a;
            let mut escaped = false;
            for _ in 0..=self.gamma1.len() {
                match self.tau.get(&cur) {
                    Some(&next) if self.gamma1.contains(&next) => cur = next,
                    _ => {
                        escaped = true;
                        break;
                    }
                }
            }
            if !escaped {
                return Err(Error::InvalidTriple(format!(
                    "nilpotency fails: tau-orbit of {a} never leaves gamma1"
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma1.is_empty()
    }

    /// tau applied k times, when all intermediate points stay in gamma1.
    pub fn tau_iterate(&self, a: usize, k: usize) -> Option<usize> {
        let mut cur = a;
        for _ in 0..k {
            cur = *self.tau.get(&cur)?;
        }
        Some(cur)
    }

    /// The mirrored triple (s(gamma1), s(gamma2), s tau s).
    pub fn mirror(&self) -> Self {
        let s = |i: usize| self.n - i;
        AdmissibleTriple {
            n: self.n,
            gamma1: self.gamma1.iter().map(|&i| s(i)).collect(),
            gamma2: self.gamma2.iter().map(|&i| s(i)).collect(),
            tau: self.tau.iter().map(|(&a, &b)| (s(a), s(b))).collect(),
        }
    }

    /// s(Gamma_1) = Gamma_2 and s tau = tau^{-1} s.
    pub fn is_twistable(&self) -> bool {
        let s = |i: usize| self.n - i;
        let image: BTreeSet<usize> = self.gamma1.iter().map(|&i| s(i)).collect();
        if image != self.gamma2 {
            return false;
        }
        let tau_inv: BTreeMap<usize, usize> = self.tau.iter().map(|(&a, &b)| (b, a)).collect();
        self.gamma1.iter().all(|&a| s(self.tau[&a]) == tau_inv[&s(a)])
    }

    pub fn to_text(&self) -> String {
        let mut parts = vec![format!("n={}", self.n)];
        let list = |set: &BTreeSet<usize>| {
            set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        };
        if !self.gamma1.is_empty() {
            parts.push(format!("g1={}", list(&self.gamma1)));
            parts.push(format!("g2={}", list(&self.gamma2)));
            parts.push(format!(
                "tau={}",
                self.tau
                    .iter()
                    .map(|(a, b)| format!("{a}>{b}"))
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        parts.join(";")
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::MalformedTriple(msg);
        let mut n = None;
        let mut gamma1 = BTreeSet::new();
        let mut gamma2 = BTreeSet::new();
        let mut tau = BTreeMap::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let parse_num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("invalid number {s:?}")))
            };
            match key.trim() {
                "n" => n = Some(parse_num(value)?),
                "g1" | "g2" => {
                    let target = if key.trim() == "g1" { &mut gamma1 } else { &mut gamma2 };
                    for v in value.split(',') {
                        if !target.insert(parse_num(v)?) {
                            return Err(bad(format!("duplicate index in {key}")));
                        }
                    }
                }
                "tau" => {
                    for pair in value.split(',') {
                        let (a, b) = pair
                            .split_once('>')
                            .ok_or_else(|| bad(format!("expected i>j, got {pair:?}")))?;
                        if tau.insert(parse_num(a)?, parse_num(b)?).is_some() {
                            return Err(bad(format!("duplicate tau source in {pair:?}")));
                        }
                    }
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing n".into()))?;
        let t = AdmissibleTriple { n, gamma1, gamma2, tau };
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "g1": self.gamma1.iter().collect::<Vec<_>>(),
            "g2": self.gamma2.iter().collect::<Vec<_>>(),
            "tau": self.tau.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AdmissibleTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The diagram involution s(alpha_i) = alpha_{n-i}.
pub fn s_involution(n: usize, i: usize) -> Result<usize> {
    if !(1..n).contains(&i) {
        return Err(Error::MalformedTriple(format!("root index {i} outside 1..{}", n - 1)));
    }
    Ok(n - i)
}

/// All admissible triples for sl(n), lexicographically ordered, including the
/// empty one.
pub fn enumerate_triples(n: usize) -> Result<Vec<AdmissibleTriple>> {
    enumerate_triples_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_triples_bounded(n: usize, bound: usize) -> Result<Vec<AdmissibleTriple>> {
    if n < 2 || n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let roots: Vec<usize> = (1..n).collect();
    let mut out = vec![AdmissibleTriple::empty(n)];
    let max_size = n.saturating_sub(2);
    for size in 1..=max_size {
        for g1 in subsets(&roots, size) {
            for g2 in subsets(&roots, size) {
                for perm in permutations(&g2) {
                    let t = AdmissibleTriple {
                        n,
                        gamma1: g1.iter().copied().collect(),
                        gamma2: g2.iter().copied().collect(),
                        tau: g1.iter().copied().zip(perm.iter().copied()).collect(),
                    };
                    if t.is_valid() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut out = Vec::new();
    let first = items[0];
    for mut rest in subsets(&items[1..], size - 1) {
        rest.insert(0, first);
        out.push(rest);
    }
    out.extend(subsets(&items[1..], size));
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// One tau-string of simple roots, with its symmetry flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootString {
    /// beta_1 -> tau(beta_1) -> ... -> beta_k, the last index outside gamma1.
    pub indices: Vec<usize>,
    /// s maps the index set of the string onto itself.
    pub symmetric: bool,
    /// Contains the s-fixed root n/2 (even n only).
    pub has_middlepoint: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringDecomposition {
    pub strings: Vec<RootString>,
    /// Number of symmetric strings without middlepoint.
    pub str_count: usize,
}

impl StringDecomposition {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "strings": self
                .strings
                .iter()
                .map(|s| json!({
                    "indices": s.indices,
                    "symmetric": s.symmetric,
                    "has_middlepoint": s.has_middlepoint,
                }))
                .collect::<Vec<_>>(),
            "str": self.str_count,
        })
    }
}

/// Decomposes the simple roots into tau-strings. Roots outside
/// gamma1 and gamma2 form singleton strings.
pub fn string_decomposition(t: &AdmissibleTriple) -> Result<StringDecomposition> {
    t.validate()?;
    let n = t.n;
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut covered = BTreeSet::new();
    // string starts: elements of gamma1 that are not tau-images
    for &start in &t.gamma1 {
        if t.gamma2.contains(&start) {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while t.gamma1.contains(&cur) {
            cur = t.tau[&cur];
            chain.push(cur);
        }
        covered.extend(chain.iter().copied());
        chains.push(chain);
    }
    for i in 1..n {
        if !covered.contains(&i) && !t.gamma1.contains(&i) && !t.gamma2.contains(&i) {
            chains.push(vec![i]);
            covered.insert(i);
        }
    }
    if covered.len() != n - 1 {
        // a gamma root missed by every chain would mean tau has a cycle
        return Err(Error::InvalidTriple("strings do not partition the simple roots".into()));
    }
    chains.sort();
    let middle = if n % 2 == 0 { Some(n / 2) } else { None };
    let strings = chains
        .into_iter()
        .map(|indices| {
            let set: BTreeSet<usize> = indices.iter().copied().collect();
            let image: BTreeSet<usize> = set.iter().map(|&i| n - i).collect();
            RootString {
                symmetric: set == image,
                has_middlepoint: middle.is_some_and(|m| set.contains(&m)),
                indices,
            }
        })
        .collect::<Vec<_>>();
    let str_count = strings.iter().filter(|s| s.symmetric && !s.has_middlepoint).count();
    Ok(StringDecomposition { strings, str_count })
}
