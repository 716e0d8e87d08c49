use rand::Rng;
use ring::Field;
use serde::Serialize;

use crate::SurfexError;

/// `λ, μ, ν, ε` with `1+λ+μ+ν+ε = 0`, and the branch data `a, b, c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet<F: Field> {
    pub lambda: F,
    pub mu: F,
    pub nu: F,
    pub epsilon: F,
    pub a: F,
    pub b: F,
    pub c: F,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamDoc {
    pub lambda: String,
    pub mu: String,
    pub nu: String,
    pub epsilon: String,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl<F: Field> ParamSet<F> {
    pub fn new(lambda: F, mu: F, nu: F, epsilon: F, a: F, b: F, c: F) -> Result<Self, SurfexError> {
        let p = ParamSet { lambda, mu, nu, epsilon, a, b, c };
        p.validate()?;
        Ok(p)
    }

    /// `ε` is solved from the constraint.
    pub fn from_free(lambda: F, mu: F, nu: F, a: F, b: F, c: F) -> Result<Self, SurfexError> {
        let epsilon = -(F::one() + lambda.clone() + &mu + &nu);
        Self::new(lambda, mu, nu, epsilon, a, b, c)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Result<Self, SurfexError> {
        let v: Vec<F> = (0..6).map(|_| F::random(rng)).collect();
        let [l, m, n, a, b, c]: [F; 6] = v.try_into().expect("six values");
        Self::from_free(l, m, n, a, b, c)
    }

    pub fn validate(&self) -> Result<(), SurfexError> {
        if F::from_i64(2).is_zero() {
            return Err(SurfexError::Characteristic2);
        }
        let s = F::one() + self.lambda.clone() + &self.mu + &self.nu + &self.epsilon;
        if !s.is_zero() {
            return Err(SurfexError::Constraint(s.to_string()));
        }
        Ok(())
    }

    /// Values in the order of the data files' `params` header.
    pub fn as_vec(&self) -> Vec<F> {
        vec![
            self.lambda.clone(),
            self.mu.clone(),
            self.nu.clone(),
            self.epsilon.clone(),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
        ]
    }

    /// `a = b = c = 0` makes the origin of the branch curve singular.
    pub fn degenerate_branch(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn doc(&self) -> ParamDoc {
        ParamDoc {
            lambda: self.lambda.to_string(),
            mu: self.mu.to_string(),
            nu: self.nu.to_string(),
            epsilon: self.epsilon.to_string(),
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
        }
    }
}
