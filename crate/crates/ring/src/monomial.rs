use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Weights;

/// Exponent vector. The derived order is plain lexicographic on exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self, w: &Weights) -> i64 {
        w.degree_of(&self.0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Human form, `x0^2 x1` style, with `1` for the empty monomial.
    pub fn render(&self, names: &[String]) -> String {
        let toks: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if toks.is_empty() {
            "1".into()
        } else {
            toks.join(" ")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.0.len())))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Number of monomials of each weighted degree `0..=max`, by the usual
/// coin-change recurrence.
pub fn hilbert_series(w: &Weights, max: i64) -> Vec<u64> {
    if max < 0 {
        return Vec::new();
    }
    let m = max as usize;
    let mut c = vec![0u64; m + 1];
    c[0] = 1;
    for &wi in w.as_slice() {
        let wi = wi as usize;
        for d in wi..=m {
            c[d] += c[d - wi];
        }
    }
    c
}

/// `p_m(w)`: dimension of the degree-`m` piece; zero for `m < 0`.
pub fn hilbert_p(w: &Weights, m: i64) -> u64 {
    if m < 0 {
        0
    } else {
        hilbert_series(w, m)[m as usize]
    }
}

/// All monomials of weighted degree `m` in descending lexicographic order
/// (`x0` powers first), e.g. `[x0², x0x1, x1², x2]` for `(1,1,2,3)`, `m = 2`.
pub fn monomials_of_degree(w: &Weights, m: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if m < 0 {
        return out;
    }
    let mut cur = vec![0u32; w.len()];
    fill(w.as_slice(), 0, m, &mut cur, &mut out);
    out
}

fn fill(w: &[u32], i: usize, rest: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i + 1 == w.len() {
        if rest % w[i] as i64 == 0 {
            cur[i] = (rest / w[i] as i64) as u32;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
        }
        return;
    }
    let wi = w[i] as i64;
    let mut e = rest / wi;
    loop {
        cur[i] = e as u32;
        fill(w, i + 1, rest - e * wi, cur, out);
        if e == 0 {
            break;
        }
        e -= 1;
    }
    cur[i] = 0;
}

/// Indexed monomial basis of one graded piece.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: i64,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(w: &Weights, d: i64) -> Self {
        let monomials = monomials_of_degree(w, d);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis { degree: d, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Cache of degree bases, built on demand.
#[derive(Clone, Debug)]
pub struct BasisCache {
    w: Weights,
    bases: HashMap<i64, std::sync::Arc<DegreeBasis>>,
}

impl BasisCache {
    pub fn new(w: &Weights) -> Self {
        BasisCache { w: w.clone(), bases: HashMap::new() }
    }

    pub fn weights(&self) -> &Weights {
        &self.w
    }

    pub fn get(&mut self, d: i64) -> std::sync::Arc<DegreeBasis> {
        let w = &self.w;
        self.bases
            .entry(d)
            .or_insert_with(|| std::sync::Arc::new(DegreeBasis::new(w, d)))
            .clone()
    }
}
