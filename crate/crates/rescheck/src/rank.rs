use gla::{GroebnerBasis, IdealGens, IdealSpan};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ring::{Field, Poly};
use serde::{Deserialize, Serialize};

use crate::chart::ChartMatrix;
use crate::det::{fitting_minors, Minor};
use crate::RescheckError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RankMode {
    Full,
    /// Test a seeded random fraction of the minors.
    Sampled { fraction: f64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankOptions {
    pub mode: RankMode,
    pub first_row: usize,
    /// A chart minor lies in the chart ideal when `x_i^e · M` lies in the
    /// homogeneous ideal for some `e`; powers up to this bound are tried.
    pub max_chart_power: u32,
    /// Tests of total degree at most this are repeated with dense spans.
    pub dense_check_up_to: Option<i64>,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { mode: RankMode::Full, first_row: 0, max_chart_power: 6, dense_check_up_to: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipTest {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Degree of the saturated form that was tested.
    pub degree: i64,
    /// Least chart power that made the minor a member.
    pub chart_power: Option<u32>,
    pub member: bool,
    /// Minors that avoid the first row are generators themselves.
    pub generator: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankVerdict {
    pub holds: bool,
    pub r: usize,
    pub chart: usize,
    pub field: String,
    pub mode: RankMode,
    pub generators: usize,
    pub generator_degrees: Vec<i64>,
    pub tests: Vec<MembershipTest>,
    pub witness: Option<MembershipTest>,
    pub dense_checked: usize,
    pub basis_size: usize,
    pub level: String,
}

/// `I_r(α') = I_r(α)` on the chart, for `α` of size `r+1` and `α'` the matrix
/// without its first row.
///
/// `I_r(α') ⊆ I_r(α)` always holds, so only the minors through the first
/// row are tested for membership in the ideal of the `r×r` minors of `α'`.
pub fn rank_condition<F: Field>(m: &ChartMatrix<F>, opts: &RankOptions) -> Result<RankVerdict, RescheckError> {
    let n = m.size();
    if n < 2 || opts.first_row >= n {
        return Err(RescheckError::Shape(format!("rank condition on a {n}x{n} matrix")));
    }
    let w = m.weights().clone();
    let r = n - 1;
    let fit = fitting_minors(m, r)?;
    let (deleted, through): (Vec<&Minor<F>>, Vec<&Minor<F>>) = fit.minors.iter().partition(|mi| !mi.rows.contains(&opts.first_row));
    let gens: Vec<Poly<F>> = deleted.iter().map(|mi| mi.saturated(&w)).filter(|g| !g.is_zero()).collect();
    let generator_degrees: Vec<i64> = gens.iter().map(|g| g.degree().unwrap()).collect();
    let mut candidates: Vec<&Minor<F>> = through;
    if let RankMode::Sampled { fraction, seed } = opts.mode {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let take = ((candidates.len() as f64) * fraction.clamp(0.0, 1.0)).ceil() as usize;
        candidates.shuffle(&mut rng);
        candidates.truncate(take);
        candidates.sort_by_key(|mi| (mi.degree, mi.rows.clone(), mi.cols.clone()));
    }
    let chart_w = w.get(m.chart) as i64;
    let sat: Vec<Poly<F>> = candidates.iter().map(|mi| mi.saturated(&w)).collect();
    let top = sat.iter().filter_map(|p| p.degree()).max().unwrap_or(0) + opts.max_chart_power as i64 * chart_w;
    let gb = GroebnerBasis::compute(&w, &gens, top)?;
    let mut dense = opts.dense_check_up_to.map(|_| IdealSpan::new(IdealGens::new(w.clone(), gens.clone()).expect("homogeneous")));
    let x = Poly::var(&w, m.chart);
    let mut tests = Vec::with_capacity(candidates.len() + deleted.len());
    let mut dense_checked = 0;
    for mi in &deleted {
        tests.push(MembershipTest {
            rows: mi.rows.clone(),
            cols: mi.cols.clone(),
            degree: mi.saturated(&w).degree().unwrap_or(0),
            chart_power: Some(0),
            member: true,
            generator: true,
        });
    }
    let mut witness = None;
    for (mi, s) in candidates.iter().zip(&sat) {
        let mut found = None;
        if s.is_zero() {
            found = Some(0);
        } else {
            let mut g = s.clone();
            for e in 0..=opts.max_chart_power {
                let member = gb.contains(&g)?;
                if let (Some(limit), Some(span)) = (opts.dense_check_up_to, dense.as_mut()) {
                    if g.degree().unwrap() <= limit {
                        dense_checked += 1;
                        if span.contains(&g)?.member != member {
                            return Err(RescheckError::Disagreement(format!("membership of minor {:?}/{:?}", mi.rows, mi.cols)));
                        }
                    }
                }
                if member {
                    found = Some(e);
                    break;
                }
                g = g.mul_ref(&x);
            }
        }
        let t = MembershipTest {
            rows: mi.rows.clone(),
            cols: mi.cols.clone(),
            degree: s.degree().unwrap_or(0),
            chart_power: found,
            member: found.is_some(),
            generator: false,
        };
        if !t.member && witness.is_none() {
            witness = Some(t.clone());
        }
        tests.push(t);
    }
    let level = match F::spec() {
        ring::FieldSpec::Rational => "exact".to_string(),
        ring::FieldSpec::Prime(p) => format!("evidence: exact over GF({p}) for one parameter specialization"),
    };
    Ok(RankVerdict {
        holds: witness.is_none(),
        r,
        chart: m.chart,
        field: F::spec().to_string(),
        mode: opts.mode,
        generators: gens.len(),
        generator_degrees,
        tests,
        witness,
        dense_checked,
        basis_size: gb.len(),
        level,
    })
}
