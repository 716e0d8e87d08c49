//! Degree-truncated Gröbner bases of homogeneous ideals.
//!
//! Used where the graded pieces of a quotient ring are too large for the
//! dense degreewise linear algebra of [`IdealSpan`](crate::IdealSpan). The
//! order is weighted degree, ties broken by reverse lexicographic order.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use ring::{monomials_of_degree, Field, Monomial, Poly, Weights};

use crate::presentation::GradedAmbient;
use crate::GlaError;

const MAXV: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Mon {
    deg: u16,
    mask: u16,
    e: [u8; MAXV],
}

impl Ord for Mon {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..MAXV).rev() {
                if self.e[i] != o.e[i] {
                    return o.e[i].cmp(&self.e[i]);
                }
            }
            Ordering::Equal
        })
    }
}
impl PartialOrd for Mon {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Mon {
    fn new(e: [u8; MAXV], w: &[u32]) -> Mon {
        let mut deg = 0u32;
        let mut mask = 0u16;
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                deg += x as u32 * w[i];
                mask |= 1 << i;
            }
        }
        Mon { deg: deg as u16, mask, e }
    }

    fn from_monomial(m: &Monomial, w: &[u32]) -> Mon {
        let mut e = [0u8; MAXV];
        for (i, &x) in m.0.iter().enumerate() {
            e[i] = u8::try_from(x).expect("exponent fits in a byte");
        }
        Mon::new(e, w)
    }

    fn to_monomial(self, n: usize) -> Monomial {
        Monomial(self.e[..n].iter().map(|&x| x as u32).collect())
    }

    fn divides(&self, o: &Mon) -> bool {
        self.mask & !o.mask == 0 && self.deg <= o.deg && (0..MAXV).all(|i| self.e[i] <= o.e[i])
    }

    fn lcm(&self, o: &Mon, w: &[u32]) -> Mon {
        let mut e = [0u8; MAXV];
        for i in 0..MAXV {
            e[i] = self.e[i].max(o.e[i]);
        }
        Mon::new(e, w)
    }

    fn quo(&self, o: &Mon, w: &[u32]) -> Mon {
        let mut e = [0u8; MAXV];
        for i in 0..MAXV {
            e[i] = self.e[i] - o.e[i];
        }
        Mon::new(e, w)
    }

    fn mul(&self, o: &Mon, w: &[u32]) -> Mon {
        let mut e = [0u8; MAXV];
        for i in 0..MAXV {
            e[i] = self.e[i] + o.e[i];
        }
        Mon::new(e, w)
    }

    fn coprime(&self, o: &Mon) -> bool {
        self.mask & o.mask == 0
    }
}

/// Terms in descending order; the first is the leading term.
type Terms<F> = Vec<(Mon, F)>;

#[derive(Clone, Debug)]
struct Element<F> {
    terms: Terms<F>,
}

impl<F: Field> Element<F> {
    fn lead(&self) -> Mon {
        self.terms[0].0
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
}

/// Gröbner basis valid for all degrees `≤ max_degree`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    weights: Weights,
    w: Vec<u32>,
    basis: Vec<Element<F>>,
    max_degree: i64,
    /// Largest degree in which an element was added.
    pub top_degree: i64,
    /// Pairs whose S-polynomial reduced to a nonzero remainder or zero.
    pub reductions: usize,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(weights: &Weights, gens: &[Poly<F>], max_degree: i64) -> Result<Self, GlaError> {
        let n = weights.len();
        if n > MAXV {
            return Err(GlaError::Shape(format!("at most {MAXV} variables, got {n}")));
        }
        let w: Vec<u32> = weights.as_slice().to_vec();
        let mut by_degree: BTreeMap<i64, Vec<Terms<F>>> = BTreeMap::new();
        for (k, g) in gens.iter().enumerate() {
            let d = g.homogeneous_degree(weights).map_err(|_| GlaError::NotHomogeneousGen(k))?;
            let Some(d) = d else { continue };
            if g.is_zero() || d > max_degree {
                continue;
            }
            by_degree.entry(d).or_default().push(to_terms(g, &w));
        }
        let mut gb = GroebnerBasis { weights: weights.clone(), w, basis: Vec::new(), max_degree, top_degree: 0, reductions: 0 };
        let mut pairs: Vec<Pair> = Vec::new();
        let min_pair = |pairs: &Vec<Pair>| pairs.iter().map(|p| p.lcm.deg as i64).min();
        let mut d = by_degree.keys().next().copied().unwrap_or(max_degree + 1);
        while d <= max_degree {
            let mut todo: Vec<Terms<F>> = by_degree.remove(&d).unwrap_or_default();
            let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.iter().partition(|p| p.lcm.deg as i64 == d);
            pairs = later;
            for p in now {
                todo.push(gb.spoly(p.i, p.j));
            }
            for f in todo {
                gb.reductions += 1;
                let r = gb.reduce(f);
                if r.is_empty() {
                    continue;
                }
                gb.insert(monic(r), &mut pairs);
                gb.top_degree = d;
            }
            let next_gen = by_degree.keys().next().copied();
            d = match (next_gen, min_pair(&pairs)) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => break,
            };
        }
        Ok(gb)
    }

    fn spoly(&self, i: usize, j: usize) -> Terms<F> {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let l = a.lead().lcm(&b.lead(), &self.w);
        let ma = l.quo(&a.lead(), &self.w);
        let mb = l.quo(&b.lead(), &self.w);
        let mut acc: BTreeMap<Mon, F> = BTreeMap::new();
        for (m, c) in &a.terms[1..] {
            add_to(&mut acc, m.mul(&ma, &self.w), c.clone());
        }
        for (m, c) in &b.terms[1..] {
            add_to(&mut acc, m.mul(&mb, &self.w), -c.clone());
        }
        acc.into_iter().rev().collect()
    }

    fn find_divisor(&self, m: &Mon) -> Option<usize> {
        self.basis.iter().position(|g| g.lead().divides(m))
    }

    /// Full reduction: every term of the result is standard.
    fn reduce(&self, f: Terms<F>) -> Terms<F> {
        let mut acc: BTreeMap<Mon, F> = f.into_iter().collect();
        let mut out: Terms<F> = Vec::new();
        while let Some((m, c)) = acc.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_divisor(&m) {
                None => out.push((m, c)),
                Some(k) => {
                    let g = &self.basis[k];
                    let q = m.quo(&g.lead(), &self.w);
                    for (t, gc) in &g.terms[1..] {
                        add_to(&mut acc, t.mul(&q, &self.w), -(c.clone() * gc));
                    }
                }
            }
        }
        out
    }

    fn insert(&mut self, h: Terms<F>, pairs: &mut Vec<Pair>) {
        let w = self.w.clone();
        let hl = h[0].0;
        let t = self.basis.len();
        // Gebauer–Möller: drop old pairs made redundant by h.
        pairs.retain(|p| {
            if !hl.divides(&p.lcm) {
                return true;
            }
            let li = self.basis[p.i].lead().lcm(&hl, &w);
            let lj = self.basis[p.j].lead().lcm(&hl, &w);
            li == p.lcm || lj == p.lcm
        });
        let cand: Vec<(usize, Mon, bool)> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.lead().lcm(&hl, &w), g.lead().coprime(&hl)))
            .collect();
        // Chain criterion among the new pairs.
        let mut keep: Vec<(usize, Mon, bool)> = Vec::new();
        for (a, la, ca) in &cand {
            let dominated = cand.iter().any(|(b, lb, _)| b != a && lb.divides(la) && lb != la);
            if dominated {
                continue;
            }
            if let Some(pos) = keep.iter().position(|(_, lk, _)| lk == la) {
                if *ca {
                    keep[pos].2 = true;
                }
                continue;
            }
            keep.push((*a, *la, *ca));
        }
        for (i, l, coprime) in keep {
            if !coprime && (l.deg as i64) <= self.max_degree {
                pairs.push(Pair { i, j: t, lcm: l });
            }
        }
        self.basis.push(Element { terms: h });
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.lead().to_monomial(self.w.len())).collect()
    }

    /// Basis elements as polynomials, monic.
    pub fn elements(&self) -> Vec<Poly<F>> {
        self.basis.iter().map(|g| from_terms(&g.terms, &self.weights)).collect()
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Result<Poly<F>, GlaError> {
        let d = p.homogeneous_degree(&self.weights).map_err(|_| GlaError::NotHomogeneousInput)?;
        if let Some(d) = d {
            if d > self.max_degree {
                return Err(GlaError::Shape(format!("degree {d} exceeds the basis bound {}", self.max_degree)));
            }
        }
        let r = self.reduce(to_terms(p, &self.w));
        let mut out = from_terms(&r, &self.weights);
        if let Some(d) = p.degree() {
            out = out.with_degree(d, &self.weights).map_err(|_| GlaError::NotHomogeneousInput)?;
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool, GlaError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.find_divisor(&Mon::from_monomial(m, &self.w)).is_none()
    }

    /// Monomials of degree `d` outside the initial ideal, descending.
    pub fn standard_monomials(&self, d: i64) -> Vec<Monomial> {
        let mut v: Vec<Mon> = monomials_of_degree(&self.weights, d)
            .iter()
            .map(|m| Mon::from_monomial(m, &self.w))
            .filter(|m| self.find_divisor(m).is_none())
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.into_iter().map(|m| m.to_monomial(self.w.len())).collect()
    }

    /// `dim (P/I)_d`.
    pub fn hilbert(&self, d: i64) -> usize {
        self.standard_monomials(d).len()
    }
}

fn add_to<F: Field>(acc: &mut BTreeMap<Mon, F>, m: Mon, c: F) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

fn monic<F: Field>(mut t: Terms<F>) -> Terms<F> {
    let inv = t[0].1.inv().expect("nonzero leading coefficient");
    for (_, c) in t.iter_mut() {
        *c *= inv.clone();
    }
    t
}

fn to_terms<F: Field>(p: &Poly<F>, w: &[u32]) -> Terms<F> {
    let mut v: Terms<F> = p.terms().map(|(m, c)| (Mon::from_monomial(m, w), c.clone())).collect();
    v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    v
}

fn from_terms<F: Field>(t: &Terms<F>, w: &Weights) -> Poly<F> {
    let n = w.len();
    Poly::from_terms(n, t.iter().map(|(m, c)| (m.to_monomial(n), c.clone())), None, w).expect("arity")
}

/// Standard-monomial coordinates of `P'/I` in one degree.
#[derive(Debug)]
pub struct StandardBasis {
    pub degree: i64,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl StandardBasis {
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

/// A quotient `P'/I` viewed as a graded module over another ring `P`, whose
/// variables act by multiplication with fixed elements of `P'`.
pub struct QuotientAmbient<F: Field> {
    module_weights: Weights,
    gb: Arc<GroebnerBasis<F>>,
    actions: Vec<Poly<F>>,
    bases: RefCell<HashMap<i64, Arc<StandardBasis>>>,
}

impl<F: Field> QuotientAmbient<F> {
    /// `actions[i]` is the image of the `i`-th variable of `P`; it must have
    /// the weight of that variable as its degree.
    pub fn new(module_weights: &Weights, gb: Arc<GroebnerBasis<F>>, actions: Vec<Poly<F>>) -> Result<Self, GlaError> {
        if actions.len() != module_weights.len() {
            return Err(GlaError::Shape(format!("{} actions for {} variables", actions.len(), module_weights.len())));
        }
        for (i, a) in actions.iter().enumerate() {
            let d = a.homogeneous_degree(gb.weights()).map_err(|_| GlaError::NotHomogeneousGen(i))?;
            if d.is_some_and(|d| d != module_weights.get(i) as i64) {
                return Err(GlaError::WrongDegree { component: i, expected: module_weights.get(i) as i64 });
            }
        }
        Ok(QuotientAmbient { module_weights: module_weights.clone(), gb, actions, bases: RefCell::new(HashMap::new()) })
    }

    pub fn actions(&self) -> &[Poly<F>] {
        &self.actions
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn basis(&self, d: i64) -> Arc<StandardBasis> {
        if let Some(b) = self.bases.borrow().get(&d) {
            return b.clone();
        }
        let monomials = if d < 0 { vec![] } else { self.gb.standard_monomials(d) };
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let b = Arc::new(StandardBasis { degree: d, monomials, index });
        self.bases.borrow_mut().insert(d, b.clone());
        b
    }

    /// Coordinates of the class of `p` (homogeneous of degree `d`).
    pub fn vector_of(&self, p: &Poly<F>, d: i64) -> Result<Vec<F>, GlaError> {
        let nf = self.gb.normal_form(p)?;
        let b = self.basis(d);
        let mut v = vec![F::zero(); b.len()];
        for (m, c) in nf.terms() {
            let k = b.index_of(m).ok_or(GlaError::WrongDegree { component: 0, expected: d })?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn poly_of(&self, v: &[F], d: i64) -> Poly<F> {
        let b = self.basis(d);
        let w = self.gb.weights();
        let terms = b.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone()));
        Poly::from_terms(w.len(), terms, Some(d), w).expect("standard monomials have degree d")
    }
}

impl<F: Field> GradedAmbient<F> for QuotientAmbient<F> {
    fn weights(&self) -> &Weights {
        &self.module_weights
    }

    fn dim(&self, d: i64) -> usize {
        self.basis(d).len()
    }

    fn mul_var(&self, var: usize, d: i64, v: &[F]) -> Vec<F> {
        let p = self.poly_of(v, d);
        let e = d + self.module_weights.get(var) as i64;
        let prod = p.mul_ref(&self.actions[var]);
        self.vector_of(&prod, e).expect("product within the basis bound")
    }
}
