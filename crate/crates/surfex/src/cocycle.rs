//! The cocycle components `η_{ij}`, `η′_{ij}`, their relation through `ρ`
//! and the check that a set of elements generates `R` over `P`.

use std::collections::BTreeMap;

use gla::{Echelon, GradedAmbient};
use ring::{Field, Poly};
use serde::Serialize;

use crate::data;
use crate::rings::{cv, CanonicalRing, Projection};
use crate::{ParamSet, SurfexError};

pub const P_WEIGHTS: [u32; 4] = [1, 1, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    Eta,
    EtaPrime,
}

impl Family {
    fn prefix(self) -> &'static str {
        match self {
            Family::Eta => "eta",
            Family::EtaPrime => "etap",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CocycleData<F: Field> {
    pub components: BTreeMap<(Family, usize, usize), Poly<F>>,
}

pub fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
}

pub fn eta_data<F: Field>(p: &ParamSet<F>) -> Result<CocycleData<F>, SurfexError> {
    p.validate()?;
    let file = data::eta();
    let vals = p.as_vec();
    let mut components = BTreeMap::new();
    for fam in [Family::Eta, Family::EtaPrime] {
        for (i, j) in pairs() {
            let name = format!("{}{i}{j}", fam.prefix());
            components.insert((fam, i, j), file.instantiate_named(&name, &vals)?);
        }
    }
    Ok(CocycleData { components })
}

impl<F: Field> CocycleData<F> {
    pub fn get(&self, fam: Family, i: usize, j: usize) -> &Poly<F> {
        let (i, j) = (i.min(j), i.max(j));
        &self.components[&(fam, i, j)]
    }

    /// `deg η_{ij} = 1 + w_i + w_j`.
    pub fn expected_degree(i: usize, j: usize) -> i64 {
        1 + (P_WEIGHTS[i] + P_WEIGHTS[j]) as i64
    }

    /// Components not of their expected degree.
    pub fn degree_violations(&self) -> Vec<(Family, usize, usize)> {
        self.components
            .iter()
            .filter(|((_, i, j), p)| !p.is_zero() && p.degree() != Some(Self::expected_degree(*i, *j)))
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn with_component(&self, fam: Family, i: usize, j: usize, p: Poly<F>) -> Self {
        let mut out = self.clone();
        out.components.insert((fam, i.min(j), i.max(j)), p);
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleResidue {
    pub family: Family,
    pub triple: [usize; 3],
    pub vanishes: bool,
    pub residue: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub holds: bool,
    pub triples: Vec<TripleResidue>,
}

/// `ρ(x_i)φ_{jk} − ρ(x_j)φ_{ik} + ρ(x_k)φ_{ij} = 0` in `R` for all `i<j<k`.
pub fn cocycle_check<F: Field>(d: &CocycleData<F>, ring: &CanonicalRing<F>, proj: &Projection<F>) -> Result<CocycleReport, SurfexError> {
    let rho = proj.actions(ring);
    let mut triples = Vec::new();
    for fam in [Family::Eta, Family::EtaPrime] {
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            let s = (&(&rho[i] * d.get(fam, j, k)) - &(&rho[j] * d.get(fam, i, k))).try_add(&(&rho[k] * d.get(fam, i, j)))?;
            let nf = ring.ring.reduce(&s)?;
            triples.push(TripleResidue { family: fam, triple: [i, j, k], vanishes: nf.is_zero(), residue: ring.ring.render(&nf) });
        }
    }
    Ok(CocycleReport { holds: triples.iter().all(|t| t.vanishes), triples })
}

/// `{1, ρ_1, σ_1, ζ}` and the twelve cocycle components.
pub fn generation_set<F: Field>(d: &CocycleData<F>, ring: &CanonicalRing<F>) -> Vec<(String, Poly<F>)> {
    let mut out = vec![
        ("1".to_string(), Poly::one(11)),
        ("rho1".to_string(), ring.var(cv::RHO1)),
        ("sigma1".to_string(), ring.var(cv::SIGMA + 1)),
        ("zeta".to_string(), ring.var(cv::ZETA)),
    ];
    for ((fam, i, j), p) in &d.components {
        out.push((format!("{}{i}{j}", fam.prefix()), p.clone()));
    }
    out
}

/// `{1, ρ_1, σ_1, σ_2, σ_3, ζ, τ_0, τ_1, ρ_1ζ}`.
pub fn module_generators<F: Field>(ring: &CanonicalRing<F>) -> Vec<(String, Poly<F>)> {
    let v = |i| ring.var(i);
    vec![
        ("1".into(), Poly::one(11)),
        ("rho1".into(), v(cv::RHO1)),
        ("sigma1".into(), v(cv::SIGMA + 1)),
        ("sigma2".into(), v(cv::SIGMA + 2)),
        ("sigma3".into(), v(cv::SIGMA + 3)),
        ("zeta".into(), v(cv::ZETA)),
        ("tau0".into(), v(cv::TAU)),
        ("tau1".into(), v(cv::TAU + 1)),
        ("rho1*zeta".into(), &v(cv::RHO1) * &v(cv::ZETA)),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationRow {
    pub degree: i64,
    pub span: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub holds: bool,
    pub window: i64,
    pub rows: Vec<GenerationRow>,
    pub first_failure: Option<i64>,
}

/// Whether the `P`-submodule generated by `gens` fills `R_d` for `d ≤ window`.
///
/// The span in degree `d` is built from the generators of degree `d` and the
/// products `x_v · (span in degree d − w_v)`.
pub fn generation_check<F: Field>(
    ring: &CanonicalRing<F>,
    proj: &Projection<F>,
    gens: &[Poly<F>],
    window: i64,
) -> Result<GenerationReport, SurfexError> {
    if window > ring.ring.top_degree() {
        return Err(SurfexError::Degree(window));
    }
    let amb = ring.ambient(proj)?;
    let mut kept: BTreeMap<i64, Vec<Vec<F>>> = BTreeMap::new();
    let mut rows = Vec::new();
    for d in 0..=window {
        let dim = amb.dim(d);
        let mut e = Echelon::new(dim);
        let mut basis = Vec::new();
        for g in gens.iter().filter(|g| g.degree() == Some(d)) {
            let v = amb.vector_of(g, d)?;
            if e.push(v.clone()) {
                basis.push(v);
            }
        }
        for (var, &wv) in P_WEIGHTS.iter().enumerate() {
            let src = d - wv as i64;
            for v in kept.get(&src).into_iter().flatten() {
                if e.is_full() {
                    break;
                }
                let u = amb.mul_var(var, src, v);
                if e.push(u.clone()) {
                    basis.push(u);
                }
            }
        }
        rows.push(GenerationRow { degree: d, span: e.rank(), dim });
        kept.insert(d, basis);
    }
    let first_failure = rows.iter().find(|r| r.span < r.dim).map(|r| r.degree);
    Ok(GenerationReport { holds: first_failure.is_none(), window, rows, first_failure })
}
