use crate::{Field, Monomial, Poly, RingError, Weights};

/// Polynomial on the standard chart `D(x_i)` (requires `w_i = 1`): the
/// variable slot `i` is always zero and the rest are the chart coordinates
/// `x_j / x_i^{w_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoly<F: Field> {
    pub chart: usize,
    pub poly: Poly<F>,
}

fn check_chart(w: &Weights, i: usize) -> Result<(), RingError> {
    if i >= w.len() {
        return Err(RingError::BadChart(i, 0));
    }
    if w.get(i) != 1 {
        return Err(RingError::BadChart(i, w.get(i)));
    }
    Ok(())
}

/// Sets `x_i = 1`.
pub fn dehomogenize<F: Field>(g: &Poly<F>, i: usize, w: &Weights) -> Result<ChartPoly<F>, RingError> {
    check_chart(w, i)?;
    g.homogeneous_degree(w)?;
    let terms = g.terms().map(|(m, c)| {
        let mut m = m.clone();
        m.0[i] = 0;
        (m, c.clone())
    });
    let poly = Poly::from_terms(g.nvars(), terms, None, w)?;
    Ok(ChartPoly { chart: i, poly })
}

/// Multiplies each term by the power of `x_i` bringing it to degree `d`.
pub fn rehomogenize<F: Field>(c: &ChartPoly<F>, d: i64, w: &Weights) -> Result<Poly<F>, RingError> {
    check_chart(w, c.chart)?;
    let mut terms = Vec::with_capacity(c.poly.len());
    for (m, v) in c.poly.terms() {
        let dm = m.degree(w);
        if dm > d {
            return Err(RingError::NotHomogeneous { declared: d, found: dm });
        }
        let mut m: Monomial = m.clone();
        m.0[c.chart] = (d - dm) as u32;
        terms.push((m, v.clone()));
    }
    Poly::from_terms(c.poly.nvars(), terms, Some(d), w)
}

/// Rehomogenization of least possible degree.
pub fn rehomogenize_min<F: Field>(c: &ChartPoly<F>, w: &Weights) -> Result<Poly<F>, RingError> {
    let d = c.poly.max_degree(w).unwrap_or(0);
    rehomogenize(c, d, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Fp;

    type F = Fp<65521>;

    #[test]
    fn chart_examples() {
        let w = Weights::of(&[1, 1, 2, 3]);
        let x = |i| Poly::<F>::var(&w, i);
        let g = &(&x(0) * &x(1)) + &x(2);
        let c = dehomogenize(&g, 1, &w).unwrap();
        assert_eq!(format!("{:?}", c.poly), "1 * x0 + 1 * x2");
        let one = dehomogenize(&x(1).pow(5), 1, &w).unwrap();
        assert_eq!(one.poly, Poly::one(4));
        assert!(dehomogenize(&x(3), 2, &w).is_err());
        assert_eq!(rehomogenize(&c, 2, &w).unwrap(), g);
    }
}
