//! The genus-2 curve ring, the theta ring `Q′/I′` and the canonical ring `Q/I`.

use std::sync::Arc;

use gla::{Echelon, GroebnerBasis, IdealGens, IdealSpan, QuotientAmbient};
use ring::{hilbert_p, Field, Monomial, Poly, Weights};

use crate::data;
use crate::{ParamSet, SurfexError};

pub const CURVE_VARS: [&str; 10] = ["r0", "r1", "r2", "s0", "s1", "s2", "s3", "z", "t0", "t1"];
pub const THETA_VARS: [&str; 11] = ["theta", "rho0", "rho1", "rho2", "sigma0", "sigma1", "sigma2", "sigma3", "zeta", "tau0", "tau1"];
pub const CANONICAL_VARS: [&str; 11] = ["xi", "theta", "rho0", "rho1", "sigma0", "sigma1", "sigma2", "sigma3", "zeta", "tau0", "tau1"];

/// Indices into [`CANONICAL_VARS`].
pub mod cv {
    pub const XI: usize = 0;
    pub const THETA: usize = 1;
    pub const RHO0: usize = 2;
    pub const RHO1: usize = 3;
    pub const SIGMA: usize = 4;
    pub const ZETA: usize = 8;
    pub const TAU: usize = 9;
}

/// A graded quotient `K[vars]/(relations)` with a truncated Gröbner basis.
#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    pub weights: Weights,
    pub vars: Vec<String>,
    pub relations: Vec<(String, Poly<F>)>,
    pub gb: Arc<GroebnerBasis<F>>,
}

impl<F: Field> QuotientRing<F> {
    fn new(weights: Weights, vars: &[&str], relations: Vec<(String, Poly<F>)>, top: i64) -> Result<Self, SurfexError> {
        let gens: Vec<Poly<F>> = relations.iter().map(|(_, p)| p.clone()).collect();
        let gb = Arc::new(GroebnerBasis::compute(&weights, &gens, top)?);
        Ok(QuotientRing { weights, vars: vars.iter().map(|s| s.to_string()).collect(), relations, gb })
    }

    pub fn top_degree(&self) -> i64 {
        self.gb.max_degree()
    }

    pub fn hilbert(&self, n: i64) -> usize {
        self.gb.hilbert(n)
    }

    /// The same value by dense linear algebra on the degree-`n` piece of the ideal.
    pub fn hilbert_dense(&self, n: i64) -> Result<usize, SurfexError> {
        let gens: Vec<Poly<F>> = self.relations.iter().map(|(_, p)| p.clone()).collect();
        let mut span = IdealSpan::new(IdealGens::new(self.weights.clone(), gens)?);
        Ok(hilbert_p(&self.weights, n) as usize - span.piece(n).rank())
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::var(&self.weights, i)
    }

    pub fn reduce(&self, p: &Poly<F>) -> Result<Poly<F>, SurfexError> {
        Ok(self.gb.normal_form(p)?)
    }

    pub fn is_zero(&self, p: &Poly<F>) -> Result<bool, SurfexError> {
        Ok(self.gb.contains(p)?)
    }

    pub fn relation(&self, name: &str) -> Option<&Poly<F>> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn render(&self, p: &Poly<F>) -> String {
        p.render(&self.vars)
    }
}

pub type CurveRing<F> = QuotientRing<F>;
pub type ThetaRing<F> = QuotientRing<F>;

fn monomial<F: Field>(w: &Weights, exps: &[u32]) -> Poly<F> {
    let m = Monomial(exps.to_vec());
    let d = m.degree(w);
    Poly::monomial(m, F::one(), d)
}

/// The curve ring on `r_0..r_2, s_0..s_3, z, t_0, t_1` (weights 2,3,3,4): the
/// 37 relations are generated from their closed formulas.
pub fn build_curve_ring<F: Field>(p: &ParamSet<F>, top: i64) -> Result<CurveRing<F>, SurfexError> {
    p.validate()?;
    let w = Weights::of(&[2, 2, 2, 3, 3, 3, 3, 3, 4, 4]);
    let (r, s, z, t) = (|i: usize| i, |i: usize| 3 + i, 7usize, |i: usize| 8 + i);
    let v = |i: usize| Poly::<F>::var(&w, i);
    // r0^{k−⌈e/2⌉} r1^{e mod 2} r2^{⌊e/2⌋}
    let rmon = |k: u32, e: u32| {
        let mut x = vec![0u32; 10];
        x[0] = k - e.div_ceil(2);
        x[1] = e % 2;
        x[2] = e / 2;
        monomial::<F>(&w, &x)
    };
    let sc = |x: &F| Poly::constant(10, x.clone());
    let g: Poly<F> = &(&(&(&(&v(2) * &v(2)) + &(&sc(&p.lambda) * &(&v(1) * &v(2)))) + &(&sc(&p.mu) * &(&v(0) * &v(2))))
        + &(&sc(&p.nu) * &(&v(0) * &v(1))))
        + &(&sc(&p.epsilon) * &(&v(0) * &v(0)));
    let g = &g;
    let mut rels: Vec<Poly<F>> = Vec::new();
    rels.push(&(&v(1) * &v(1)) - &(&v(0) * &v(2)));
    for i in 0..2 {
        for j in 1..4 {
            rels.push(&(&v(r(i)) * &v(s(j))) - &(&v(r(i + 1)) * &v(s(j - 1))));
        }
    }
    for i in 0..2 {
        rels.push(&(&v(r(i)) * &v(t(1))) - &(&v(r(i + 1)) * &v(t(0))));
    }
    for i in 0..4 {
        for j in i..4 {
            rels.push(&(&v(s(i)) * &v(s(j))) - &rmon(3, (i + j) as u32));
        }
    }
    for i in 0..3 {
        rels.push(&(&v(s(i)) * &v(z)) - &(&v(r(i)) * &v(t(0))));
    }
    rels.push(&(&v(s(3)) * &v(z)) - &(&v(r(2)) * &v(t(1))));
    rels.push(&(&v(z) * &v(z)) - &(&v(1) * g));
    for i in 0..4 {
        for j in 0..2 {
            rels.push(&(&v(s(i)) * &v(t(j))) - &(&rmon(2, (i + j) as u32) * &v(z)));
        }
    }
    for i in 0..2 {
        rels.push(&(&v(z) * &v(t(i))) - &(&v(s(i + 1)) * g));
    }
    for i in 0..2 {
        for j in i..2 {
            rels.push(&(&v(t(i)) * &v(t(j))) - &(&(&v(1) * &v(r(i + j))) * g));
        }
    }
    let rels = rels.into_iter().enumerate().map(|(k, p)| (format!("rel{}", k + 1), p)).collect();
    QuotientRing::new(w, &CURVE_VARS, rels, top)
}

fn load_relations<F: Field>(file: &ring::text::PolyFile, p: &ParamSet<F>) -> Result<Vec<(String, Poly<F>)>, SurfexError> {
    let vals = p.as_vec();
    file.entries
        .iter()
        .map(|(name, terms)| Ok((name.clone(), file.instantiate(terms, &vals)?)))
        .collect()
}

/// `Q′/I′` with the 37 relations `rel′_i` from the embedded table.
pub fn build_theta_ring<F: Field>(p: &ParamSet<F>, top: i64) -> Result<ThetaRing<F>, SurfexError> {
    p.validate()?;
    let file = data::theta_relations();
    let rels = load_relations(file, p)?;
    QuotientRing::new(file.weights.clone(), &THETA_VARS, rels, top)
}

/// Whether every `rel′_i` restricted to `θ = 0` lies in the curve ideal.
pub fn hyperplane_section_check<F: Field>(theta: &ThetaRing<F>, curve: &CurveRing<F>) -> Result<Vec<bool>, SurfexError> {
    let mut images = vec![Poly::zero(10)];
    images.extend((0..10).map(|i| curve.var(i)));
    theta.relations.iter().map(|(_, r)| curve.is_zero(&r.substitute(&images))).collect()
}

/// The canonical ring `Q/I`: `rel′_i` with `ρ_2 ↦ ξ² − aρ_0 − bρ_1 − cθ²`.
#[derive(Clone, Debug)]
pub struct CanonicalRing<F: Field> {
    pub ring: QuotientRing<F>,
    pub params: ParamSet<F>,
}

/// Images of the substitution from the theta ring's variables.
fn substitution<F: Field>(w: &Weights, p: &ParamSet<F>) -> Vec<Poly<F>> {
    let v = |i: usize| Poly::<F>::var(w, i);
    let c = |x: &F| Poly::constant(11, x.clone());
    let rho2 = &(&(&(&v(cv::XI) * &v(cv::XI)) - &(&c(&p.a) * &v(cv::RHO0))) - &(&c(&p.b) * &v(cv::RHO1)))
        - &(&c(&p.c) * &(&v(cv::THETA) * &v(cv::THETA)));
    let mut out = vec![v(cv::THETA), v(cv::RHO0), v(cv::RHO1), rho2];
    out.extend((cv::SIGMA..11).map(v));
    out
}

pub fn build_canonical_ring<F: Field>(p: &ParamSet<F>, top: i64) -> Result<CanonicalRing<F>, SurfexError> {
    p.validate()?;
    let theta = data::theta_relations();
    let w = data::canonical_printed().weights.clone();
    let images = substitution(&w, p);
    let rels = load_relations(theta, p)?
        .into_iter()
        .map(|(n, r)| {
            let d = r.degree().unwrap_or(0);
            Ok((n, r.substitute(&images).with_degree(d, &w)?))
        })
        .collect::<Result<_, SurfexError>>()?;
    Ok(CanonicalRing { ring: QuotientRing::new(w, &CANONICAL_VARS, rels, top)?, params: p.clone() })
}

impl<F: Field> CanonicalRing<F> {
    /// Names of the printed relations that differ from the substituted ones.
    pub fn printed_mismatches(&self) -> Result<Vec<String>, SurfexError> {
        let file = data::canonical_printed();
        let vals = self.params.as_vec();
        let mut bad = Vec::new();
        for (name, terms) in &file.entries {
            let printed = file.instantiate(terms, &vals)?;
            if self.ring.relation(name) != Some(&printed) {
                bad.push(name.clone());
            }
        }
        Ok(bad)
    }

    pub fn printed_count(&self) -> usize {
        data::canonical_printed().entries.len()
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        self.ring.var(i)
    }

    pub fn hilbert(&self, n: i64) -> usize {
        self.ring.hilbert(n)
    }

    /// `R` as a module over `P(1,1,2,3)` through `ρ`.
    pub fn ambient(&self, proj: &Projection<F>) -> Result<QuotientAmbient<F>, SurfexError> {
        Ok(QuotientAmbient::new(&Weights::of(&[1, 1, 2, 3]), self.ring.gb.clone(), proj.actions(self))?)
    }
}

/// `ρ: x_0 ↦ θ, x_1 ↦ ξ, x_2 ↦ k_0ρ_0 + k_1ρ_1, x_3 ↦ x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection<F: Field> {
    pub k0: F,
    pub k1: F,
    pub x3: Poly<F>,
}

impl<F: Field> Projection<F> {
    /// `ρ(x_2) = ρ_0`, `ρ(x_3) = σ_0`.
    pub fn standard(r: &CanonicalRing<F>) -> Self {
        Projection { k0: F::one(), k1: F::zero(), x3: r.var(cv::SIGMA) }
    }

    pub fn x2(&self, r: &CanonicalRing<F>) -> Poly<F> {
        &(&Poly::constant(11, self.k0.clone()) * &r.var(cv::RHO0)) + &(&Poly::constant(11, self.k1.clone()) * &r.var(cv::RHO1))
    }

    pub fn actions(&self, r: &CanonicalRing<F>) -> Vec<Poly<F>> {
        vec![r.var(cv::THETA), r.var(cv::XI), self.x2(r), self.x3.clone()]
    }

    /// `ρ(x_3)` must be of degree 3 and outside `K[θ, ξ, ρ(x_2)]`.
    pub fn validate(&self, r: &CanonicalRing<F>) -> Result<(), SurfexError> {
        let w = &r.ring.weights;
        if self.k0.is_zero() && self.k1.is_zero() {
            return Err(SurfexError::Projection("rho(x2) vanishes".into()));
        }
        if self.x3.homogeneous_degree(w).ok().flatten() != Some(3) {
            return Err(SurfexError::Projection("rho(x3) must be homogeneous of degree 3".into()));
        }
        let (t, x, y) = (r.var(cv::THETA), r.var(cv::XI), self.x2(r));
        let sub = [&(&t * &t) * &t, &(&t * &t) * &x, &(&t * &x) * &x, &(&x * &x) * &x, &t * &y, &x * &y];
        if in_span(&r.ring, &sub, &self.x3, 3)? {
            return Err(SurfexError::Projection("rho(x3) lies in K[theta, xi, rho(x2)]".into()));
        }
        Ok(())
    }
}

/// Whether the class of `v` lies in the span of the classes of `span` in degree `d`.
pub fn in_span<F: Field>(r: &QuotientRing<F>, span: &[Poly<F>], v: &Poly<F>, d: i64) -> Result<bool, SurfexError> {
    let (e, _) = span_of(r, span, d)?;
    Ok(e.contains(&coords(r, v, d)?))
}

pub(crate) fn coords<F: Field>(r: &QuotientRing<F>, p: &Poly<F>, d: i64) -> Result<Vec<F>, SurfexError> {
    let basis = r.gb.standard_monomials(d);
    let nf = r.reduce(p)?;
    let mut out = vec![F::zero(); basis.len()];
    for (m, c) in nf.terms() {
        let k = basis.iter().position(|b| b == m).ok_or_else(|| SurfexError::Degree(d))?;
        out[k] = c.clone();
    }
    Ok(out)
}

/// Echelon form of the classes of `span` in `R_d`, and `dim R_d`.
pub(crate) fn span_of<F: Field>(r: &QuotientRing<F>, span: &[Poly<F>], d: i64) -> Result<(Echelon<F>, usize), SurfexError> {
    let dim = r.hilbert(d);
    let mut e = Echelon::new(dim);
    for p in span {
        e.push(coords(r, p, d)?);
    }
    Ok((e, dim))
}
