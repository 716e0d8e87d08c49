use std::collections::HashMap;

use ring::{BasisCache, Field, Poly, Weights};
use serde::{Deserialize, Serialize};

use crate::{Echelon, GlaError};

/// Homogeneous generators of an ideal of `P`.
#[derive(Clone, Debug)]
pub struct IdealGens<F: Field> {
    pub weights: Weights,
    pub gens: Vec<Poly<F>>,
}

impl<F: Field> IdealGens<F> {
    pub fn new(weights: Weights, gens: Vec<Poly<F>>) -> Result<Self, GlaError> {
        for (k, g) in gens.iter().enumerate() {
            if g.homogeneous_degree(&weights).map_err(|_| GlaError::NotHomogeneousGen(k))?.is_none() {
                return Err(GlaError::NotHomogeneousGen(k));
            }
        }
        Ok(IdealGens { weights, gens })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.degree().unwrap()).collect()
    }
}

/// Membership witness for one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipRecord {
    pub degree: i64,
    pub span_dim: usize,
    pub member: bool,
}

/// Degree pieces `I_d = span{m·g_i}` built on demand and cached.
pub struct IdealSpan<F: Field> {
    ideal: IdealGens<F>,
    cache: BasisCache,
    pieces: HashMap<i64, Echelon<F>>,
}

impl<F: Field> IdealSpan<F> {
    pub fn new(ideal: IdealGens<F>) -> Self {
        let cache = BasisCache::new(&ideal.weights);
        IdealSpan { ideal, cache, pieces: HashMap::new() }
    }

    pub fn ideal(&self) -> &IdealGens<F> {
        &self.ideal
    }

    pub fn piece(&mut self, d: i64) -> &Echelon<F> {
        if !self.pieces.contains_key(&d) {
            let target = self.cache.get(d);
            let mut span = Echelon::new(target.len());
            'outer: for g in &self.ideal.gens {
                let e = g.degree().unwrap();
                let b = self.cache.get(d - e);
                for m in &b.monomials {
                    if span.is_full() {
                        break 'outer;
                    }
                    let mut v = vec![F::zero(); target.len()];
                    for (t, c) in g.terms() {
                        v[target.index_of(&t.mul(m)).unwrap()] = c.clone();
                    }
                    span.push(v);
                }
            }
            self.pieces.insert(d, span);
        }
        &self.pieces[&d]
    }

    pub fn contains(&mut self, g: &Poly<F>) -> Result<MembershipRecord, GlaError> {
        let w = self.ideal.weights.clone();
        let Some(d) = g.homogeneous_degree(&w).map_err(|_| GlaError::NotHomogeneousInput)? else {
            return Ok(MembershipRecord { degree: 0, span_dim: 0, member: true });
        };
        let target = self.cache.get(d);
        let mut v = vec![F::zero(); target.len()];
        for (t, c) in g.terms() {
            v[target.index_of(t).unwrap()] = c.clone();
        }
        let span = self.piece(d);
        Ok(MembershipRecord { degree: d, span_dim: span.rank(), member: span.contains(&v) })
    }
}

/// Exact membership of a homogeneous `g` in the ideal.
pub fn ideal_membership<F: Field>(g: &Poly<F>, ideal: &IdealGens<F>) -> Result<bool, GlaError> {
    IdealSpan::new(ideal.clone()).contains(g).map(|r| r.member)
}
