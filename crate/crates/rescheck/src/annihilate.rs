use gla::{degree_piece_cached, Echelon, FreePiece, PresentationResult, QuotientAmbient};
use ring::{BasisCache, Field, Poly};
use serde::{Deserialize, Serialize};

use crate::RescheckError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    pub annihilates: bool,
    /// `(generator, degree of f·g, member)`.
    pub checks: Vec<(usize, i64, bool)>,
}

/// Whether `f·e_k` lies in the image of the relations for every generator
/// `e_k`, by exact linear algebra in the free module.
pub fn annihilation_check<F: Field>(f: &Poly<F>, res: &PresentationResult<F>) -> Result<AnnihilationReport, RescheckError> {
    if !res.stabilized {
        return Err(RescheckError::NotStabilized(res.bound));
    }
    let pres = &res.presentation;
    let w = pres.weights().clone();
    let gens = &pres.generators;
    if f.is_zero() {
        let checks = gens.twists.iter().enumerate().map(|(k, &a)| (k, a, true)).collect();
        return Ok(AnnihilationReport { annihilates: true, checks });
    }
    let e = f.homogeneous_degree(&w).map_err(|_| RescheckError::Shape("f is not homogeneous".into()))?.unwrap_or(0);
    let mut cache = BasisCache::new(&w);
    let mut checks = Vec::new();
    for (k, &a) in gens.twists.iter().enumerate() {
        let d = a + e;
        let piece = FreePiece::new(gens, d, &mut cache);
        let mut elem: Vec<Poly<F>> = gens.twists.iter().map(|&b| Poly::zero_of_degree(w.len(), d - b)).collect();
        elem[k] = f.clone().with_degree(e, &w)?;
        let v = piece.to_vector(&elem)?;
        let member = if pres.relations.cols() == 0 {
            v.iter().all(F::is_zero)
        } else {
            let (mat, _, _) = degree_piece_cached(&pres.relations, d, &mut cache);
            let mut span = Echelon::new(piece.dim);
            for c in 0..mat.cols() {
                span.push(mat.col(c));
            }
            span.contains(&v)
        };
        checks.push((k, d, member));
    }
    Ok(AnnihilationReport { annihilates: checks.iter().all(|c| c.2), checks })
}

/// The same question in a module given as a quotient ring: `f` acts through
/// the images of the variables, and `f·g = 0` is decided by normal forms.
pub fn annihilation_in_quotient<F: Field>(f: &Poly<F>, gens: &[Poly<F>], amb: &QuotientAmbient<F>) -> Result<AnnihilationReport, RescheckError> {
    let image = f.substitute(amb.actions());
    let mut checks = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let prod = image.mul_ref(g);
        let d = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
        let nf = amb.groebner().normal_form(&prod)?;
        checks.push((k, d, nf.is_zero()));
    }
    Ok(AnnihilationReport { annihilates: checks.iter().all(|c| c.2), checks })
}
