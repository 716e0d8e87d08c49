use std::fmt;

use ring::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s += a.clone() * b;
                    }
                }
                s
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Row echelon form in place. Over fraction-free fields this is the
    /// Bareiss scheme (every division exact); otherwise plain elimination with
    /// the pivot row normalized. Returns pivot columns.
    fn forward(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut prev = F::one();
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            if F::FRACTION_FREE {
                let piv = self.get(r, c).clone();
                for i in r + 1..self.rows {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = (piv.clone() * self.get(i, j) - f.clone() * self.get(r, j))
                            .div(&prev)
                            .expect("nonzero Bareiss divisor");
                        self.set(i, j, v);
                    }
                    // Columns left of c are already zero on row i.
                }
                prev = piv;
            } else {
                let inv = self.get(r, c).inv().expect("nonzero pivot");
                for j in c..self.cols {
                    let v = self.get(r, j).clone() * &inv;
                    self.set(r, j, v);
                }
                for i in r + 1..self.rows {
                    let f = self.get(i, c).clone();
                    if f.is_zero() {
                        continue;
                    }
                    for j in c..self.cols {
                        let s = self.get(r, j).clone();
                        if !s.is_zero() {
                            let v = self.get(i, j).clone() - f.clone() * s;
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let pivots = self.forward();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = self.get(r, c).inv().expect("pivot");
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = self.get(r, j).clone() * &inv;
                    self.set(r, j, v);
                }
            }
            for i in 0..r {
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let s = self.get(r, j).clone();
                    if !s.is_zero() {
                        let v = self.get(i, j).clone() - f.clone() * s;
                        self.set(i, j, v);
                    }
                }
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().forward().len()
    }

    /// Rank and a kernel basis; the basis vector for free column `f` has a 1
    /// at `f` and zeros at the other free columns.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<F>>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                let e = m.get(r, f);
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign_neg = false;
        let mut acc = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                sign_neg = !sign_neg;
            }
            let piv = m.get(c, c).clone();
            let inv = piv.inv().unwrap();
            acc *= piv;
            for i in c + 1..n {
                let f = m.get(i, c).clone() * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        if sign_neg {
            -acc
        } else {
            acc
        }
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}
