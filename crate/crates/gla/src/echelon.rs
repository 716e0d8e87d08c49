use ring::Field;

/// Incrementally built semi-echelon basis of a subspace of `F^dim`.
///
/// Row `k` has a unit at its pivot column and zeros at the pivot columns of
/// rows inserted before it, so reducing a vector against the rows in
/// insertion order clears every pivot. Rows are stored sparsely.
///
/// With tracking enabled each row also remembers the combination of inserted
/// input vectors producing it; a vector that reduces to zero then yields a
/// linear dependency among the inputs.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    rows: Vec<SparseRow<F>>,
    pivot_of: Vec<Option<usize>>,
    track: Option<Tracking<F>>,
}

#[derive(Clone, Debug)]
struct SparseRow<F> {
    pivot: usize,
    entries: Vec<(usize, F)>,
}

#[derive(Clone, Debug)]
struct Tracking<F> {
    inputs: usize,
    combos: Vec<Vec<(usize, F)>>,
}

/// Outcome of inserting a vector.
#[derive(Clone, Debug)]
pub enum Insert<F> {
    /// Independent; the new row index.
    New(usize),
    /// Dependent; with tracking, coefficients `c` (over all inputs so far,
    /// including this one with coefficient 1) such that `Σ c_i v_i = 0`.
    Dependent(Option<Vec<(usize, F)>>),
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_of: vec![None; dim], track: None }
    }

    pub fn with_tracking(dim: usize) -> Self {
        let mut e = Self::new(dim);
        e.track = Some(Tracking { inputs: 0, combos: Vec::new() });
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// Reduces `v` in place; with `combo` also records the row multiples
    /// subtracted.
    fn reduce_inner(&self, v: &mut [F], mut combo: Option<&mut Vec<(usize, F)>>) {
        for (k, row) in self.rows.iter().enumerate() {
            let f = v[row.pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (j, e) in &row.entries {
                let t = v[*j].clone() - f.clone() * e;
                v[*j] = t;
            }
            if let Some(c) = combo.as_deref_mut() {
                c.push((k, f));
            }
        }
    }

    pub fn reduce(&self, v: &mut [F]) {
        assert_eq!(v.len(), self.dim);
        self.reduce_inner(v, None);
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(F::is_zero)
    }

    /// Coordinates of `v` as a combination of inserted inputs, when `v` lies
    /// in the span (tracking required).
    pub fn solve(&self, v: &[F]) -> Option<Vec<F>> {
        let t = self.track.as_ref().expect("solve needs tracking");
        let mut w = v.to_vec();
        let mut used = Vec::new();
        self.reduce_inner(&mut w, Some(&mut used));
        if !w.iter().all(F::is_zero) {
            return None;
        }
        let mut x = vec![F::zero(); t.inputs];
        for (k, f) in used {
            for (i, c) in &t.combos[k] {
                x[*i] += f.clone() * c;
            }
        }
        Some(x)
    }

    pub fn insert(&mut self, v: Vec<F>) -> Insert<F> {
        assert_eq!(v.len(), self.dim);
        let mut v = v;
        let tracking = self.track.is_some();
        let mut used = Vec::new();
        self.reduce_inner(&mut v, if tracking { Some(&mut used) } else { None });
        let input_index = self.track.as_ref().map(|t| t.inputs);
        let combo_of = |t: &Tracking<F>, used: &[(usize, F)], me: usize| {
            let mut acc = vec![F::zero(); t.inputs + 1];
            acc[me] = F::one();
            for (k, f) in used {
                for (i, c) in &t.combos[*k] {
                    acc[*i] -= f.clone() * c;
                }
            }
            acc
        };
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            let dep = self.track.as_mut().map(|t| {
                let me = t.inputs;
                let acc = combo_of(t, &used, me);
                t.inputs += 1;
                acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
            });
            return Insert::Dependent(dep);
        };
        let inv = v[p].inv().unwrap();
        let entries: Vec<(usize, F)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x * &inv))
            .collect();
        if let Some(t) = self.track.as_mut() {
            let me = input_index.unwrap();
            let acc = combo_of(t, &used, me);
            t.inputs += 1;
            t.combos.push(acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c * &inv)).collect());
        }
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(SparseRow { pivot: p, entries });
        Insert::New(self.rows.len() - 1)
    }

    /// Inserts; true when the vector was independent.
    pub fn push(&mut self, v: Vec<F>) -> bool {
        matches!(self.insert(v), Insert::New(_))
    }

    /// Coordinates (non-pivot columns) of the class of `v` modulo the span,
    /// in increasing column order.
    pub fn quotient_coords(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.into_iter().enumerate().filter(|(j, _)| self.pivot_of[*j].is_none()).map(|(_, x)| x).collect()
    }

    /// Non-pivot columns, i.e. a monomial basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&j| self.pivot_of[j].is_none()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring::Fp;

    type F = Fp<65521>;

    fn v(xs: &[i64]) -> Vec<F> {
        xs.iter().map(|&x| F::from_i64(x)).collect()
    }

    #[test]
    fn dependency_tracking() {
        let mut e = Echelon::with_tracking(3);
        assert!(e.push(v(&[1, 2, 0])));
        assert!(e.push(v(&[0, 1, 1])));
        match e.insert(v(&[2, 5, 1])) {
            Insert::Dependent(Some(c)) => {
                let mut s = vec![F::zero(); 3];
                let inputs = [v(&[1, 2, 0]), v(&[0, 1, 1]), v(&[2, 5, 1])];
                for (i, f) in c {
                    for k in 0..3 {
                        s[k] += f * inputs[i][k];
                    }
                }
                assert!(s.iter().all(|x| x.is_zero()));
            }
            other => panic!("{other:?}"),
        }
        let x = e.solve(&v(&[1, 3, 1])).unwrap();
        assert_eq!(x[0], F::one());
        assert_eq!(x[1], F::one());
        assert!(e.solve(&v(&[0, 0, 1])).is_none());
        assert_eq!(e.free_columns().len(), 1);
    }
}
