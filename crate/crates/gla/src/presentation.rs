use std::collections::HashMap;

use ring::{BasisCache, DegreeBasis, Field, Monomial, Poly, Weights};

use crate::graded::{degree_piece_cached, FreePiece};
use crate::syzygy::{add_multiples, stabilization_window};
use crate::{Echelon, GradedFree, GradedMatrix, Mat};

/// Cokernel of `relations: ⊕P(−c_k) → ⊕P(−a_j)`.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    pub generators: GradedFree,
    pub relations: GradedMatrix<F>,
}

impl<F: Field> Presentation<F> {
    pub fn free(w: &Weights, generators: GradedFree) -> Self {
        let relations = GradedMatrix::zero(w.clone(), GradedFree::new(vec![]), generators.clone());
        Presentation { generators, relations }
    }

    pub fn weights(&self) -> &Weights {
        &self.relations.weights
    }
}

/// `dim M_d = dim (generators)_d − rank(relations)_d`.
pub fn hilbert_of_coker<F: Field>(p: &Presentation<F>, d: i64) -> usize {
    let w = p.weights();
    let gens = p.generators.dim(w, d);
    if p.relations.cols() == 0 {
        return gens;
    }
    let mut cache = BasisCache::new(w);
    let (mat, _, _) = degree_piece_cached(&p.relations, d, &mut cache);
    gens - mat.rank()
}

/// A graded vector space with multiplication by the variables of `P`, in
/// which a submodule is generated.
pub trait GradedAmbient<F: Field> {
    fn weights(&self) -> &Weights;
    fn dim(&self, d: i64) -> usize;
    /// `x_var · v` for `v` of degree `d`.
    fn mul_var(&self, var: usize, d: i64, v: &[F]) -> Vec<F>;
}

/// `P` itself, in monomial coordinates.
pub struct PolyRingAmbient {
    w: Weights,
    bases: std::cell::RefCell<BasisCache>,
}

impl PolyRingAmbient {
    pub fn new(w: &Weights) -> Self {
        PolyRingAmbient { w: w.clone(), bases: std::cell::RefCell::new(BasisCache::new(w)) }
    }

    pub fn basis(&self, d: i64) -> std::sync::Arc<DegreeBasis> {
        self.bases.borrow_mut().get(d)
    }

    pub fn vector_of<F: Field>(&self, p: &Poly<F>, d: i64) -> Vec<F> {
        let b = self.basis(d);
        let mut v = vec![F::zero(); b.len()];
        for (m, c) in p.terms() {
            v[b.index_of(m).expect("degree")] = c.clone();
        }
        v
    }
}

impl<F: Field> GradedAmbient<F> for PolyRingAmbient {
    fn weights(&self) -> &Weights {
        &self.w
    }
    fn dim(&self, d: i64) -> usize {
        self.basis(d).len()
    }
    fn mul_var(&self, var: usize, d: i64, v: &[F]) -> Vec<F> {
        let src = self.basis(d);
        let dst = self.basis(d + self.w.get(var) as i64);
        let mut out = vec![F::zero(); dst.len()];
        let x = Monomial::var(self.w.len(), var);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[dst.index_of(&src.monomials[k].mul(&x)).unwrap()] = c.clone();
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct PresentationResult<F: Field> {
    pub presentation: Presentation<F>,
    pub stabilized: bool,
    pub bound: i64,
    /// `(d, dim of the degree-d piece of the generated submodule)`.
    pub hilbert: Vec<(i64, usize)>,
}

/// Images `x^m g_k` of the monomial multiples of the generators, degree by
/// degree, each obtained from a previously computed image by one variable
/// multiplication.
struct ImageTable<F> {
    images: HashMap<(usize, Monomial), Vec<F>>,
}

impl<F: Field> ImageTable<F> {
    fn image<A: GradedAmbient<F>>(&mut self, amb: &A, gens: &[(i64, Vec<F>)], k: usize, m: &Monomial) -> Vec<F> {
        if let Some(v) = self.images.get(&(k, m.clone())) {
            return v.clone();
        }
        let w = amb.weights();
        let v = if m.is_one() {
            gens[k].1.clone()
        } else {
            let var = m.0.iter().rposition(|&e| e > 0).unwrap();
            let mut q = m.clone();
            q.0[var] -= 1;
            let prev = self.image(amb, gens, k, &q);
            let dq = gens[k].0 + q.degree(w);
            amb.mul_var(var, dq, &prev)
        };
        self.images.insert((k, m.clone()), v.clone());
        v
    }
}

/// Presentation of the submodule generated by `gens` (degree, coordinates in
/// the ambient): relations are found degreewise up to `bound`, keeping only
/// those independent of the multiples of earlier relations.
pub fn minimal_presentation<F: Field, A: GradedAmbient<F>>(gens: &[(i64, Vec<F>)], ambient: &A, bound: i64) -> PresentationResult<F> {
    let w = ambient.weights().clone();
    let nv = w.len();
    let free = GradedFree::new(gens.iter().map(|(d, _)| *d).collect());
    let mut cache = BasisCache::new(&w);
    let mut table = ImageTable { images: HashMap::new() };
    let mut rels: Vec<(i64, Vec<Poly<F>>)> = Vec::new();
    let mut hilbert = Vec::new();
    let mut stabilized = true;
    let start = free.min_twist().unwrap_or(bound + 1);
    for d in start..=bound + stabilization_window(&w) {
        let piece = FreePiece::new(&free, d, &mut cache);
        if piece.dim == 0 {
            if d <= bound {
                hilbert.push((d, 0));
            }
            continue;
        }
        let adim = ambient.dim(d);
        let mut cols = Vec::with_capacity(piece.dim);
        for (k, b) in piece.bases.iter().enumerate() {
            for m in &b.monomials {
                cols.push(table.image(ambient, gens, k, m));
            }
        }
        let mat = Mat::from_cols(adim, &cols);
        let (rank, ker) = mat.rank_and_kernel();
        if d <= bound {
            hilbert.push((d, rank));
        }
        if ker.is_empty() {
            continue;
        }
        let mut span = Echelon::new(piece.dim);
        add_multiples(&mut span, &rels, &piece, &mut cache);
        if span.rank() < ker.len() {
            if d > bound {
                stabilized = false;
                break;
            }
            for v in ker {
                if span.push(v.clone()) {
                    rels.push((d, piece.to_element(&v, nv, &w)));
                }
            }
        }
        // Images of degree d − max(w) are no longer needed.
        let cutoff = d - w.max() as i64;
        table.images.retain(|(k, m), _| gens[*k].0 + m.degree(&w) > cutoff);
    }
    let relations = GradedMatrix::from_columns(w.clone(), free.clone(), rels).expect("relations are homogeneous");
    PresentationResult {
        presentation: Presentation { generators: free, relations },
        stabilized,
        bound,
        hilbert,
    }
}
