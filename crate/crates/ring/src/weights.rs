use std::fmt;

use serde::{Deserialize, Serialize};

use crate::RingError;

/// Weight vector `w = (w_0, .., w_n)` of a weighted polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Weights(Vec<u32>);

impl Weights {
    pub fn new(w: Vec<u32>) -> Result<Self, RingError> {
        if w.is_empty() {
            return Err(RingError::BadWeights("empty weight vector".into()));
        }
        if w.iter().any(|&x| x == 0) {
            return Err(RingError::BadWeights("weights must be positive".into()));
        }
        Ok(Weights(w))
    }

    /// Convenience for literals known to be valid.
    pub fn of(w: &[u32]) -> Self {
        Self::new(w.to_vec()).expect("valid weights")
    }

    /// Number of variables, `n + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The projective dimension `n`.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn max(&self) -> u32 {
        *self.0.iter().max().unwrap()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `|w_I|` for the index set encoded as a bitmask.
    pub fn subset_weight(&self, mask: u64) -> i64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x as i64)
            .sum()
    }

    /// Weighted degree of an exponent vector.
    pub fn degree_of(&self, exps: &[u32]) -> i64 {
        exps.iter().zip(&self.0).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    /// Drops coordinate `i`.
    pub fn without(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v.remove(i);
        Self::new(v).ok()
    }
}

impl TryFrom<Vec<u32>> for Weights {
    type Error = RingError;
    fn try_from(v: Vec<u32>) -> Result<Self, RingError> {
        Weights::new(v)
    }
}

impl From<Weights> for Vec<u32> {
    fn from(w: Weights) -> Vec<u32> {
        w.0
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Weights {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Result<Vec<u32>, _> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>())
            .collect();
        let v = v.map_err(|_| RingError::Parse(format!("bad weights `{s}`")))?;
        Weights::new(v)
    }
}
