use std::thread;

use gla::{IdealGens, Mat};
use ring::{rehomogenize, rehomogenize_min, ChartPoly, Field, FieldSpec, Monomial, Poly, Weights};
use serde::{Deserialize, Serialize};

use crate::chart::ChartMatrix;
use crate::RescheckError;

fn undeclared<F: Field>(p: &Poly<F>, w: &Weights) -> Poly<F> {
    Poly::from_terms(p.nvars(), p.terms().map(|(m, c)| (m.clone(), c.clone())), None, w).expect("same arity")
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact. The result carries its homogeneous degree when it has one.
pub fn det_poly<F: Field>(m: &[Vec<Poly<F>>], w: &Weights) -> Result<Poly<F>, RescheckError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(RescheckError::Shape("determinant of a non-square matrix".into()));
    }
    let nv = w.len();
    if n == 0 {
        return Ok(Poly::one(nv));
    }
    let mut a: Vec<Vec<Poly<F>>> = m.iter().map(|r| r.iter().map(|p| undeclared(p, w)).collect()).collect();
    let mut prev = Poly::one(nv);
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(Poly::zero(nv));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul_ref(&a[k][k]).try_sub(&a[i][k].mul_ref(&a[k][j])).expect("undeclared degrees");
                a[i][j] = t.div_exact(&prev).ok_or_else(|| RescheckError::Shape("inexact Bareiss step".into()))?;
            }
            a[i][k] = Poly::zero(nv);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    let d = if negate { d.neg_ref() } else { d };
    match d.homogeneous_degree(w) {
        Ok(Some(deg)) => Ok(d.with_degree(deg, w).expect("homogeneous")),
        _ => Ok(d),
    }
}

/// Determinant of a chart matrix by Bareiss on the chart polynomials.
pub fn det_chart_bareiss<F: Field>(m: &ChartMatrix<F>) -> Result<ChartPoly<F>, RescheckError> {
    let polys: Vec<Vec<Poly<F>>> = m.entries.iter().map(|r| r.iter().map(|c| c.poly.clone()).collect()).collect();
    Ok(ChartPoly { chart: m.chart, poly: det_poly(&polys, m.weights())? })
}

/// Determinant of a chart matrix by evaluation and interpolation.
pub fn det_chart<F: Field>(m: &ChartMatrix<F>) -> Result<ChartPoly<F>, RescheckError> {
    let all: Vec<usize> = (0..m.size()).collect();
    let deg = m.minor_degree(&all, &all);
    let mut out = interpolate_minors(m, &[(all.clone(), all)], &[deg])?;
    Ok(out.pop().unwrap())
}

/// Exact interpolation of minors on a tensor grid.
///
/// The minor on `(rows, cols)` is the dehomogenization of a form of degree
/// `bound`, so its chart polynomial has degree at most `bound / w_v` in each
/// chart coordinate `x_v`; a box of that many points per coordinate
/// determines it. The numerical minors are computed in parallel over grid
/// points and the box is inverted one coordinate at a time.
pub fn interpolate_minors<F: Field>(
    m: &ChartMatrix<F>,
    subsets: &[(Vec<usize>, Vec<usize>)],
    bounds: &[i64],
) -> Result<Vec<ChartPoly<F>>, RescheckError> {
    let w = m.weights().clone();
    let nv = w.len();
    let vars: Vec<usize> = (0..nv).filter(|&v| v != m.chart).collect();
    let dmax = bounds.iter().copied().max().unwrap_or(0).max(0);
    let sizes: Vec<usize> = vars.iter().map(|&v| (dmax / w.get(v) as i64) as usize + 1).collect();
    if let FieldSpec::Prime(p) = F::spec() {
        if sizes.iter().any(|&s| s as u64 + 1 >= p as u64) {
            return Err(RescheckError::Shape(format!("GF({p}) is too small for interpolation")));
        }
    }
    let npts: usize = sizes.iter().product();
    let coords = |mut idx: usize| -> Vec<usize> {
        let mut c = vec![0; sizes.len()];
        for (a, &s) in sizes.iter().enumerate().rev() {
            c[a] = idx % s;
            idx /= s;
        }
        c
    };
    let point_of = |idx: usize| -> Vec<F> {
        let c = coords(idx);
        let mut pt = vec![F::one(); nv];
        for (a, &v) in vars.iter().enumerate() {
            pt[v] = F::from_i64(c[a] as i64 + 1);
        }
        pt
    };
    let n = m.size();
    let evaluate = |idx: usize| -> Vec<F> {
        let pt = point_of(idx);
        let num: Vec<Vec<F>> = (0..n).map(|r| (0..n).map(|c| m.entries[r][c].poly.eval(&pt)).collect()).collect();
        subsets
            .iter()
            .map(|(rs, cs)| {
                if rs.is_empty() {
                    return F::one();
                }
                Mat::from_rows(rs.iter().map(|&r| cs.iter().map(|&c| num[r][c].clone()).collect()).collect()).det()
            })
            .collect()
    };
    let threads = thread::available_parallelism().map(|t| t.get()).unwrap_or(1).min(npts.max(1));
    let chunk = npts.div_ceil(threads.max(1));
    let mut values: Vec<Vec<F>> = Vec::with_capacity(npts);
    thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let ev = &evaluate;
                s.spawn(move || (t * chunk..((t + 1) * chunk).min(npts)).map(ev).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            values.extend(h.join().expect("evaluation thread"));
        }
    });
    let inverses: Vec<Mat<F>> = sizes.iter().map(|&s| vandermonde_inverse::<F>(s)).collect();
    let mut out = Vec::with_capacity(subsets.len());
    for (k, &bound) in bounds.iter().enumerate() {
        let mut grid: Vec<F> = values.iter().map(|v| v[k].clone()).collect();
        let mut stride = 1;
        for a in (0..sizes.len()).rev() {
            let s = sizes[a];
            let block = stride * s;
            for base in (0..npts).step_by(block) {
                for off in 0..stride {
                    let fiber: Vec<F> = (0..s).map(|t| grid[base + off + t * stride].clone()).collect();
                    let coef = inverses[a].apply(&fiber);
                    for (t, c) in coef.into_iter().enumerate() {
                        grid[base + off + t * stride] = c;
                    }
                }
            }
            stride = block;
        }
        let mut terms = Vec::new();
        for (idx, c) in grid.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = coords(idx);
            let mut mono = Monomial::one(nv);
            for (a, &v) in vars.iter().enumerate() {
                mono.0[v] = e[a] as u32;
            }
            if mono.degree(&w) > bound {
                return Err(RescheckError::Shape(format!("interpolated minor exceeds degree {bound}")));
            }
            terms.push((mono, c));
        }
        let poly = Poly::from_terms(nv, terms, None, &w)?;
        out.push(ChartPoly { chart: m.chart, poly });
    }
    Ok(out)
}

/// Inverse of the Vandermonde matrix at the nodes `1..=s`: maps values to
/// coefficients.
fn vandermonde_inverse<F: Field>(s: usize) -> Mat<F> {
    let rows: Vec<Vec<F>> = (0..s)
        .map(|t| {
            let x = F::from_i64(t as i64 + 1);
            (0..s).map(|e| x.pow(e as u64)).collect()
        })
        .collect();
    let mut aug = Mat::zeros(s, 2 * s);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            aug.set(i, j, v.clone());
        }
        aug.set(i, s + i, F::one());
    }
    aug.rref();
    let mut inv = Mat::zeros(s, s);
    for i in 0..s {
        for j in 0..s {
            inv.set(i, j, aug.get(i, s + j).clone());
        }
    }
    inv
}

#[derive(Clone, Debug)]
pub struct Minor<F: Field> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Degree predicted by the twists.
    pub degree: i64,
    pub chart_poly: ChartPoly<F>,
    /// The homogeneous minor, recovered at the predicted degree.
    pub homogeneous: Poly<F>,
}

impl<F: Field> Minor<F> {
    /// Rehomogenization of least degree, i.e. with the powers of the chart
    /// variable removed.
    pub fn saturated(&self, w: &Weights) -> Poly<F> {
        rehomogenize_min(&self.chart_poly, w).expect("chart with unit weight")
    }
}

/// `k×k` minors of a chart matrix, sorted by predicted degree.
#[derive(Clone, Debug)]
pub struct FittingIdeal<F: Field> {
    pub k: usize,
    pub size: usize,
    pub minors: Vec<Minor<F>>,
}

impl<F: Field> FittingIdeal<F> {
    pub fn generators(&self) -> usize {
        self.minors.len()
    }

    /// Homogeneous generators, with zero and proportional minors dropped when
    /// `prune` is set.
    pub fn ideal(&self, w: &Weights, prune: bool) -> IdealGens<F> {
        let mut gens: Vec<Poly<F>> = Vec::new();
        for m in &self.minors {
            let g = m.homogeneous.clone();
            if prune && (g.is_zero() || gens.iter().any(|h| proportional(h, &g))) {
                continue;
            }
            gens.push(g);
        }
        IdealGens::new(w.clone(), gens.into_iter().filter(|g| !g.is_zero()).collect()).expect("minors are homogeneous")
    }
}

fn proportional<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    if a.len() != b.len() || a.is_zero() {
        return false;
    }
    let (ma, ca) = a.terms().next().unwrap();
    let (mb, cb) = b.terms().next().unwrap();
    if ma != mb {
        return false;
    }
    let r = cb.clone() * &ca.inv().unwrap();
    a.scale(&r) == *b
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k×k` minors of a square chart matrix.
pub fn fitting_minors<F: Field>(m: &ChartMatrix<F>, k: usize) -> Result<FittingIdeal<F>, RescheckError> {
    let n = m.size();
    if k > n {
        return Err(RescheckError::Shape(format!("{k}x{k} minors of a {n}x{n} matrix")));
    }
    let mut pairs = Vec::new();
    for rs in subsets(n, k) {
        for cs in subsets(n, k) {
            pairs.push((rs.clone(), cs));
        }
    }
    let degrees: Vec<i64> = pairs.iter().map(|(r, c)| m.minor_degree(r, c)).collect();
    let polys = interpolate_minors(m, &pairs, &degrees)?;
    let w = m.weights();
    let mut minors: Vec<Minor<F>> = pairs
        .into_iter()
        .zip(degrees)
        .zip(polys)
        .map(|(((rows, cols), degree), chart_poly)| {
            let homogeneous = if degree < 0 {
                Poly::zero(w.len())
            } else {
                rehomogenize(&chart_poly, degree, w).expect("interpolation respects the degree")
            };
            Minor { rows, cols, degree, chart_poly, homogeneous }
        })
        .collect();
    minors.sort_by_key(|mi| mi.degree);
    Ok(FittingIdeal { k, size: n, minors })
}

/// `k×k` minors of a matrix of homogeneous polynomials, computed directly
/// with [`det_poly`].
pub fn fitting_minors_poly<F: Field>(m: &gla::GradedMatrix<F>, k: usize) -> Result<Vec<Poly<F>>, RescheckError> {
    if k > m.rows().min(m.cols()) {
        return Err(RescheckError::Shape(format!("{k}x{k} minors of a {}x{} matrix", m.rows(), m.cols())));
    }
    let mut out = Vec::new();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<Poly<F>>> = rs.iter().map(|&r| cs.iter().map(|&c| m.entries[r][c].clone()).collect()).collect();
            out.push(det_poly(&sub, &m.weights)?);
        }
    }
    Ok(out)
}

/// Serializable summary of a determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetSummary {
    pub chart: usize,
    pub homogeneous_degree: i64,
    pub saturated_degree: i64,
    pub chart_power: u32,
    pub terms: usize,
}

pub fn det_summary<F: Field>(m: &ChartMatrix<F>, det: &ChartPoly<F>) -> DetSummary {
    let w = m.weights();
    let all: Vec<usize> = (0..m.size()).collect();
    let hd = m.minor_degree(&all, &all);
    let sat = rehomogenize_min(det, w).expect("unit chart");
    let sd = sat.degree().unwrap_or(0);
    DetSummary { chart: m.chart, homogeneous_degree: hd, saturated_degree: sd, chart_power: (hd - sd).max(0) as u32, terms: det.poly.len() }
}
