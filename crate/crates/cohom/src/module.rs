use gla::{hilbert_of_coker, syzygies_up_to, GradedMatrix, Presentation};
use koszul::{check_exactness, TwistedComplex};
use ring::Field;
use serde::{Deserialize, Serialize};

use crate::CohomError;

/// Free resolution `0 ← M ← F_0 ← F_1 ← …`, stored as a complex with `F_k`
/// in position `−k`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    pub complex: TwistedComplex<F>,
    pub stabilized: bool,
    pub bound: i64,
}

/// Resolves by iterated bounded syzygies until a map is injective up to the
/// bound (at most `n + 2` steps).
pub fn free_resolution<F: Field>(m: &Presentation<F>, bound: i64) -> Result<FreeResolution<F>, CohomError> {
    let w = m.weights().clone();
    let mut maps: Vec<GradedMatrix<F>> = Vec::new();
    let mut stabilized = true;
    if m.relations.cols() > 0 {
        maps.push(m.relations.clone());
        loop {
            let last = maps.last().unwrap();
            let syz = syzygies_up_to(last, bound);
            stabilized &= syz.stabilized;
            if syz.generators.cols() == 0 {
                break;
            }
            if maps.len() > w.len() + 1 {
                return Err(CohomError::NotCertified(bound));
            }
            maps.push(syz.generators);
        }
    }
    let len = maps.len();
    let terms = std::iter::once(m.generators.clone())
        .chain(maps.iter().map(|d| d.source.clone()))
        .rev()
        .collect();
    let diffs = maps.into_iter().rev().collect();
    let complex = TwistedComplex::new(w, -(len as i64), terms, vec![], diffs)?;
    Ok(FreeResolution { complex, stabilized, bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleCohomology {
    pub value: u64,
    pub certified: bool,
    pub bound: i64,
}

/// `h^i(gP, M~(l))` through graded local duality:
/// `H^{k}_m(M)_l ≅ (Ext^{n+1−k}(M, P(−|w|))_{−l})^∨` and
/// `H^i(M~(l)) = H^{i+1}_m(M)_l` for `i ≥ 1`,
/// `h^0(M~(l)) = dim M_l − dim H^0_m(M)_l + dim H^1_m(M)_l`.
///
/// The resolution and its dual are computed once per module.
pub struct ModuleSheaf<F: Field> {
    module: Presentation<F>,
    dual: TwistedComplex<F>,
    certified: bool,
    bound: i64,
}

impl<F: Field> ModuleSheaf<F> {
    pub fn new(m: &Presentation<F>, bound: i64) -> Result<Self, CohomError> {
        let res = free_resolution(m, bound)?;
        let dual = res.complex.dual(-m.weights().total());
        Ok(ModuleSheaf { module: m.clone(), dual, certified: res.stabilized, bound })
    }

    pub fn h(&self, i: usize, l: i64) -> Result<ModuleCohomology, CohomError> {
        let n = self.module.weights().n();
        if i > n {
            return Err(CohomError::Index(i as i64));
        }
        let ext = check_exactness(&self.dual, -l..=-l);
        let value = if i >= 1 {
            ext.dim((n - i) as i64, -l) as u64
        } else {
            let torsion0 = ext.dim(n as i64 + 1, -l) as i64;
            let torsion1 = ext.dim(n as i64, -l) as i64;
            (hilbert_of_coker(&self.module, l) as i64 + torsion1 - torsion0) as u64
        };
        Ok(ModuleCohomology { value, certified: self.certified, bound: self.bound })
    }
}

pub fn sheaf_cohomology_module<F: Field>(m: &Presentation<F>, i: usize, l: i64, bound: i64) -> Result<ModuleCohomology, CohomError> {
    ModuleSheaf::new(m, bound)?.h(i, l)
}
