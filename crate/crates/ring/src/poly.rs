use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{default_names, Field, Monomial, RingError, Weights};

/// Sparse polynomial with an optional declared weighted degree.
///
/// When a degree is declared every term has it; the zero polynomial keeps the
/// declared degree so that sums stay well-typed.
#[derive(Clone)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
    degree: Option<i64>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}
impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new(), degree: None }
    }

    pub fn zero_of_degree(nvars: usize, d: i64) -> Self {
        Poly { nvars, terms: BTreeMap::new(), degree: Some(d) }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(Monomial::one(nvars), c, 0)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(w: &Weights, i: usize) -> Self {
        Self::monomial(Monomial::var(w.len(), i), F::one(), w.get(i) as i64)
    }

    /// `c·m` with `m` of degree `d` (the caller vouches for `d`).
    pub fn monomial(m: Monomial, c: F, d: i64) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms, degree: Some(d) }
    }

    /// Builds from terms, merging duplicates; checks homogeneity when a degree
    /// is declared.
    pub fn from_terms<I>(nvars: usize, terms: I, degree: Option<i64>, w: &Weights) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let mut map: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(RingError::ArityMismatch { expected: nvars, got: m.nvars() });
            }
            if let Some(d) = degree {
                if m.degree(w) != d {
                    return Err(RingError::NotHomogeneous { declared: d, found: m.degree(w) });
                }
            }
            accumulate(&mut map, m, c);
        }
        Ok(Poly { nvars, terms: map, degree })
    }

    /// Infers the degree from the terms; fails on mixed degrees.
    pub fn homogeneous<I>(nvars: usize, terms: I, w: &Weights) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let mut p = Self::from_terms(nvars, terms, None, w)?;
        p.degree = p.homogeneous_degree(w)?;
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Common weighted degree of the terms; `Ok(None)` for zero without a
    /// declared degree.
    pub fn homogeneous_degree(&self, w: &Weights) -> Result<Option<i64>, RingError> {
        let mut it = self.terms.keys().map(|m| m.degree(w));
        match it.next() {
            None => Ok(self.degree),
            Some(d) => {
                if let Some(e) = it.find(|&e| e != d) {
                    Err(RingError::NotHomogeneous { declared: d, found: e })
                } else {
                    Ok(Some(d))
                }
            }
        }
    }

    pub fn is_homogeneous(&self, w: &Weights) -> bool {
        self.homogeneous_degree(w).is_ok()
    }

    /// Re-declares the degree after checking it.
    pub fn with_degree(mut self, d: i64, w: &Weights) -> Result<Self, RingError> {
        if let Some(m) = self.terms.keys().find(|m| m.degree(w) != d) {
            return Err(RingError::NotHomogeneous { declared: d, found: m.degree(w) });
        }
        self.degree = Some(d);
        Ok(self)
    }

    /// Largest weighted degree among the terms.
    pub fn max_degree(&self, w: &Weights) -> Option<i64> {
        self.terms.keys().map(|m| m.degree(w)).max()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        let degree = self.merged_degree(o)?;
        let mut out = self.clone();
        out.degree = degree;
        for (m, c) in &o.terms {
            accumulate(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.try_add(&o.neg_ref())
    }

    fn merged_degree(&self, o: &Self) -> Result<Option<i64>, RingError> {
        if self.nvars != o.nvars {
            return Err(RingError::ArityMismatch { expected: self.nvars, got: o.nvars });
        }
        match (self.degree, o.degree) {
            (Some(a), Some(b)) if a != b => {
                // A zero summand carries no real constraint.
                if self.is_zero() {
                    Ok(Some(b))
                } else if o.is_zero() {
                    Ok(Some(a))
                } else {
                    Err(RingError::DegreeMismatch(a, b))
                }
            }
            (Some(a), _) => Ok(Some(a)),
            (None, b) => Ok(b),
        }
    }

    pub fn neg_ref(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
            degree: self.degree,
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Poly { nvars: self.nvars, terms: BTreeMap::new(), degree: self.degree };
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s)).collect(),
            degree: self.degree,
        }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "arity mismatch");
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                accumulate(&mut terms, m1.mul(m2), c1.clone() * c2);
            }
        }
        let degree = match (self.degree, o.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Poly { nvars: self.nvars, terms, degree }
    }

    /// `c·m·self`, with `dm` the degree of `m`.
    pub fn mul_term(&self, m: &Monomial, c: &F, dm: i64) -> Self {
        if c.is_zero() {
            return Poly { nvars: self.nvars, terms: BTreeMap::new(), degree: self.degree.map(|d| d + dm) };
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone() * c)).collect(),
            degree: self.degree.map(|d| d + dm),
        }
    }

    /// `self / d` when `d` divides `self` exactly, else `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars, "arity mismatch");
        let (lm, lc) = d.terms.iter().next_back()?;
        let inv = lc.inv()?;
        let mut rem = self.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let t = m.div(lm)?;
            let f = c * &inv;
            for (dm, dc) in &d.terms {
                accumulate(&mut rem, dm.mul(&t), -(f.clone() * dc));
            }
            q.insert(t, f);
        }
        let degree = match (self.degree, d.degree) {
            (Some(a), Some(b)) => Some(a - b),
            _ => None,
        };
        Some(Poly { nvars: self.nvars, terms: q, degree })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        if e == 0 {
            return acc;
        }
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= x.pow(e as u64);
                }
            }
            acc += t;
        }
        acc
    }

    /// Composition `self(images)`. The result has no declared degree.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_ref(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_ref(&powers[i][e as usize]);
            }
            for (k, v) in t.terms {
                accumulate(&mut out.terms, k, v);
            }
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let g = f(c);
            if !g.is_zero() {
                terms.insert(m.clone(), g);
            }
        }
        Poly { nvars: self.nvars, terms, degree: self.degree }
    }

    /// Exponent of the largest power of `x_i` dividing every term.
    pub fn var_valuation(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    /// Divides by `x_i^e` exactly; panics if some term is not divisible.
    pub fn div_var_power(&self, i: usize, e: u32, w: &Weights) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m.0[i] = m.0[i].checked_sub(e).expect("not divisible");
                (m, c.clone())
            })
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
            degree: self.degree.map(|d| d - e as i64 * w.get(i) as i64),
        }
    }

    /// Terms not involving `x_i`, and the quotient of the rest by `x_i`.
    pub fn split_var(&self, i: usize, w: &Weights) -> (Self, Self) {
        let mut lo = BTreeMap::new();
        let mut hi = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                lo.insert(m.clone(), c.clone());
            } else {
                let mut m = m.clone();
                m.0[i] -= 1;
                hi.insert(m, c.clone());
            }
        }
        let wi = w.get(i) as i64;
        (
            Poly { nvars: self.nvars, terms: lo, degree: self.degree },
            Poly { nvars: self.nvars, terms: hi, degree: self.degree.map(|d| d - wi) },
        )
    }

    /// Drops every term divisible by some variable in `vars`.
    pub fn reduce_mod_vars(&self, vars: &[usize]) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            degree: self.degree,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms()
            .map(|(m, c)| if m.is_one() { format!("{c}") } else { format!("{c} * {}", m.render(names)) })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn accumulate<F: Field>(map: &mut BTreeMap<Monomial, F>, m: Monomial, c: F) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars)))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator forms panic on degree mismatch; use `try_add` for checked sums.
impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        self.try_add(o).expect("degree mismatch in sum")
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        self.try_sub(o).expect("degree mismatch in difference")
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        self.mul_ref(o)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.neg_ref()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    /// `b` must be a constant.
    Scale,
}

pub fn poly_arith<F: Field>(a: &Poly<F>, b: &Poly<F>, op: PolyOp) -> Result<Poly<F>, RingError> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Mul => {
            if a.nvars != b.nvars {
                return Err(RingError::ArityMismatch { expected: a.nvars, got: b.nvars });
            }
            Ok(a.mul_ref(b))
        }
        PolyOp::Scale => {
            let one = Monomial::one(b.nvars);
            if b.terms.keys().any(|m| *m != one) {
                return Err(RingError::NotConstant);
            }
            Ok(a.scale(&b.coefficient(&one)))
        }
    }
}
