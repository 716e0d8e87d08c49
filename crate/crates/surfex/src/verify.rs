//! The whole surface verification as one report.

use std::time::{Duration, Instant};

use beilinson::{E_of_phi, InvariantData, SheafKind};
use gla::minimal_presentation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rescheck::{
    annihilation_in_quotient, ChartMatrix, chart_reduce, check_minimal, check_row_kernel, check_symmetric, det_chart, det_summary, euler_exactness,
    rank_condition, AnnihilationReport, DetSummary, EulerReport, MinimalityReport, RankMode, RankOptions, RankVerdict, Side,
};
use ring::{rehomogenize_min, Field, FieldSpec, Poly, Weights};
use serde::Serialize;

use crate::alpha::{build_alpha_tilde, omega_block_check, random_symmetric, ExampleMatrix, OmegaBlockReport, SYMMETRY_TWIST};
use crate::cocycle::{cocycle_check, eta_data, generation_check, generation_set, module_generators, CocycleReport, Family, GenerationReport};
use crate::coeffs::{cj_decision, CjDecision};
use crate::rings::{build_canonical_ring, build_theta_ring, CanonicalRing, Projection};
use crate::{ParamDoc, ParamSet, SurfexError};

/// Highest degree of `R` the pipeline reduces in: `deg det + deg ρ_1ζ`.
pub const RING_TOP: i64 = 30;
pub const DET_DEGREE: i64 = 24;
const RANDOM_CONTROL_SALT: u64 = 0x5eed_c0de;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub hilbert_window: i64,
    pub generation_window: i64,
    pub euler_degrees: (i64, i64),
    /// `None` skips the rank condition.
    pub rank: Option<RankMode>,
    /// Degree bound for the presentation of `R` over `P`; `None` skips it.
    pub presentation_bound: Option<i64>,
    pub negative_controls: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            hilbert_window: 8,
            generation_window: 10,
            euler_degrees: (0, 12),
            rank: Some(RankMode::Full),
            presentation_bound: Some(16),
            negative_controls: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckStatus {
    pub name: String,
    pub pass: bool,
    /// `exact`, `closed-form` or `evidence`.
    pub provenance: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartIndependence {
    pub charts: [usize; 2],
    pub degrees: [i64; 2],
    pub proportional: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationSummary {
    pub bound: i64,
    pub stabilized: bool,
    pub generator_degrees: Vec<i64>,
    pub relation_degrees: Vec<i64>,
    /// Degrees where the generated piece is smaller than `R_d`.
    pub deficient: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeControls {
    /// Perturbing `a1_2` breaks the symmetry; the witness is the perturbed entry.
    pub perturbed_alpha_symmetric: bool,
    pub perturbed_alpha_witness: (usize, usize),
    /// Perturbing `η_{02}` leaves a nonzero residue.
    pub perturbed_eta_residues: Vec<[usize; 3]>,
    /// The rank condition for a random symmetric matrix of the chart shape.
    pub random_rank_witness: Option<rescheck::MembershipTest>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub params: ParamDoc,
    pub seed: Option<u64>,
    pub degenerate_branch: bool,
    pub theta_hilbert: Vec<(i64, usize)>,
    pub canonical_hilbert: Vec<(i64, usize)>,
    pub printed_relations_mismatch: Vec<String>,
    pub symmetric: bool,
    pub row_kernels: Vec<bool>,
    pub minimality: MinimalityReport,
    pub cocycle: CocycleReport,
    pub generation: GenerationReport,
    pub cj: CjDecision,
    pub e_of_phi: Vec<String>,
    pub e_of_phi_matches: bool,
    pub chart_det: DetSummary,
    pub chart_independence: ChartIndependence,
    pub annihilation: AnnihilationReport,
    pub euler: EulerReport,
    pub omega_block: OmegaBlockReport,
    pub presentation: Option<PresentationSummary>,
    pub rank: Option<RankVerdict>,
    pub negative_controls: Option<NegativeControls>,
    pub checks: Vec<CheckStatus>,
    pub all_pass: bool,
}

/// Wall-clock times per stage, kept apart from the deterministic report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub stages: Vec<(String, f64)>,
}

impl Timings {
    fn record<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.stages.push((name.to_string(), Duration::as_secs_f64(&t.elapsed())));
        out
    }
}

pub fn surface_invariants() -> InvariantData {
    InvariantData::new(2, 2, 4, 1).expect("consistent")
}

fn proportional<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    if a.len() != b.len() || a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (ma, ca) = a.terms().next().unwrap();
    let r = b.coefficient(ma).div(ca).unwrap_or_else(F::zero);
    !r.is_zero() && a.terms().all(|(m, c)| b.coefficient(m) == c.clone() * &r)
}

fn summands(m: &ExampleMatrix<impl Field>) -> Vec<(SheafKind, u64)> {
    let mut out: Vec<(SheafKind, u64)> = Vec::new();
    for s in m.map.target() {
        match out.iter_mut().find(|(k, _)| *k == s) {
            Some(e) => e.1 += 1,
            None => out.push((s, 1)),
        }
    }
    out
}

pub fn verify_example<F: Field>(p: &ParamSet<F>, seed: Option<u64>, opts: &VerifyOptions) -> Result<(VerifyReport, Timings), SurfexError> {
    let mut tm = Timings::default();
    let w = Weights::of(&[1, 1, 2, 3]);
    let theta = tm.record("theta ring", || build_theta_ring(p, opts.hilbert_window))?;
    let ring: CanonicalRing<F> = tm.record("canonical ring", || build_canonical_ring(p, RING_TOP.max(opts.generation_window)))?;
    let proj = Projection::standard(&ring);
    proj.validate(&ring)?;
    let theta_hilbert: Vec<(i64, usize)> = (1..=opts.hilbert_window).map(|n| (n, theta.hilbert(n))).collect();
    let canonical_hilbert: Vec<(i64, usize)> = (1..=opts.hilbert_window).map(|n| (n, ring.hilbert(n))).collect();
    let printed_relations_mismatch = ring.printed_mismatches()?;

    let alpha = build_alpha_tilde(p)?;
    let symmetric = check_symmetric(&alpha.map, SYMMETRY_TWIST)?;
    let row_kernels: Vec<bool> = alpha.map.groups.iter().map(|g| check_row_kernel(&alpha.map, g)).collect();
    let minimality = check_minimal(&alpha.map);
    let omega_block = omega_block_check(&alpha);

    let eta = eta_data(p)?;
    let cocycle = tm.record("cocycle", || cocycle_check(&eta, &ring, &proj))?;
    let gens: Vec<Poly<F>> = generation_set(&eta, &ring).into_iter().map(|(_, g)| g).collect();
    let generation = tm.record("generation", || generation_check(&ring, &proj, &gens, opts.generation_window))?;
    let (cj, coeffs) = tm.record("c_j", || cj_decision(&ring, &proj))?;
    let inv = surface_invariants();
    let e = E_of_phi(&w, &inv, &coeffs)?;
    let declared = summands(&alpha);
    let mut e_declared = declared.clone();
    // G = O ⊕ E.
    if let Some(o) = e_declared.iter_mut().find(|(k, _)| *k == SheafKind::line(0)) {
        o.1 -= 1;
    }
    e_declared.retain(|(_, m)| *m > 0);
    e_declared.sort();
    let e_of_phi_matches = e.multiset() == e_declared;
    let e_of_phi = e.multiset().iter().map(|(k, m)| format!("{k}^{m}")).collect();

    let (chart1, chart0) = (chart_reduce(&alpha.map, 1)?, chart_reduce(&alpha.map, 0)?);
    let (d1, d0) = tm.record("determinants", || -> Result<_, SurfexError> { Ok((det_chart(&chart1)?, det_chart(&chart0)?)) })?;
    let chart_det = det_summary(&chart1, &d1);
    let (s1, s0) = (rehomogenize_min(&d1, &w)?, rehomogenize_min(&d0, &w)?);
    let chart_independence = ChartIndependence {
        charts: [1, 0],
        degrees: [s1.degree().unwrap_or(-1), s0.degree().unwrap_or(-1)],
        proportional: proportional(&s1, &s0),
    };

    let amb = ring.ambient(&proj)?;
    let mgens = module_generators(&ring);
    let mpolys: Vec<Poly<F>> = mgens.iter().map(|(_, g)| g.clone()).collect();
    let annihilation = tm.record("annihilation", || annihilation_in_quotient(&s1, &mpolys, &amb))?;
    let euler = euler_exactness(&w, &declared, &inv, opts.euler_degrees.0..=opts.euler_degrees.1);

    let presentation = match opts.presentation_bound {
        None => None,
        Some(bound) => Some(tm.record("presentation", || -> Result<_, SurfexError> {
            let gv = mgens
                .iter()
                .map(|(_, g)| {
                    let d = g.degree().unwrap_or(0);
                    Ok((d, amb.vector_of(g, d)?))
                })
                .collect::<Result<Vec<_>, SurfexError>>()?;
            let res = minimal_presentation(&gv, &amb, bound);
            let deficient = res.hilbert.iter().filter(|(d, r)| *r < ring.hilbert(*d)).map(|(d, _)| *d).collect();
            Ok(PresentationSummary {
                bound,
                stabilized: res.stabilized,
                generator_degrees: res.presentation.generators.twists.clone(),
                relation_degrees: res.presentation.relations.source.twists.clone(),
                deficient,
            })
        })?),
    };

    let rank = match opts.rank {
        None => None,
        Some(mode) => {
            let ro = RankOptions { mode, ..RankOptions::default() };
            Some(tm.record("rank condition", || rank_condition(&chart1, &ro))?)
        }
    };

    let negative_controls = if opts.negative_controls {
        let bad = alpha.perturbed(0, 1);
        let perturbed_alpha_symmetric = check_symmetric(&bad.map, SYMMETRY_TWIST)?;
        let x0 = Poly::var(&ring.ring.weights, crate::cv::THETA);
        let eta_bad = eta.with_component(Family::Eta, 0, 2, eta.get(Family::Eta, 0, 2).try_add(&x0.pow(4))?);
        let res = cocycle_check(&eta_bad, &ring, &proj)?;
        let random_rank_witness = match opts.rank {
            None => None,
            Some(mode) => tm.record("random rank control", || -> Result<_, SurfexError> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0) ^ RANDOM_CONTROL_SALT);
                let m = random_symmetric::<F, _>(&w, &chart1.row_twists(), SYMMETRY_TWIST, &mut rng);
                let ro = RankOptions { mode, ..RankOptions::default() };
                Ok(rank_condition(&ChartMatrix::from_graded(&m, 1)?, &ro)?.witness)
            })?,
        };
        Some(NegativeControls {
            random_rank_witness,
            perturbed_alpha_symmetric,
            perturbed_alpha_witness: (0, 1),
            perturbed_eta_residues: res.triples.iter().filter(|t| !t.vanishes).map(|t| t.triple).collect(),
        })
    } else {
        None
    };

    let ev = if F::spec() == FieldSpec::Rational { "exact" } else { "evidence" };
    let mut checks = Vec::new();
    let mut add = |name: &str, pass: bool, prov: &str, detail: String| {
        checks.push(CheckStatus { name: name.into(), pass, provenance: prov.into(), detail });
    };
    add(
        "theta hilbert n^2",
        theta_hilbert.iter().all(|&(n, h)| h as i64 == n * n),
        ev,
        format!("{theta_hilbert:?}"),
    );
    add(
        "canonical hilbert 1+2n(n-1)",
        canonical_hilbert.iter().all(|&(n, h)| h as i64 == if n == 1 { 2 } else { 1 + 2 * n * (n - 1) }),
        ev,
        format!("{canonical_hilbert:?}"),
    );
    add("printed relations", printed_relations_mismatch.is_empty(), "exact", format!("{printed_relations_mismatch:?}"));
    add("symmetry", symmetric, ev, format!("twist {SYMMETRY_TWIST}"));
    add(
        "row kernels",
        row_kernels.iter().zip(&alpha.map.groups).filter(|(_, g)| g.side == Side::Rows).all(|(k, _)| *k),
        ev,
        format!("{row_kernels:?}"),
    );
    add("minimality", minimality.minimal, ev, format!("{} violations", minimality.violations.len()));
    add("cocycle", cocycle.holds, ev, format!("{} triples", cocycle.triples.len()));
    add("generation", generation.holds, ev, format!("window {}", generation.window));
    add("c_j", cj.c == [2, 0, 0], ev, format!("{:?}", cj.c));
    add("h0_FN", (cj.h0.n_minus1, cj.h0.n_minus2) == (4, 0), ev, format!("{:?}", cj.h0));
    add("E(phi) grouping", e_of_phi_matches, "closed-form", format!("{e_of_phi:?}"));
    add(
        "chart determinant",
        chart_det.terms > 0 && chart_det.saturated_degree == DET_DEGREE,
        ev,
        format!("degree {} on D(x1)", chart_det.saturated_degree),
    );
    add("chart independence", chart_independence.proportional, ev, format!("{:?}", chart_independence.degrees));
    add("annihilation", annihilation.annihilates, ev, format!("{} generators", annihilation.checks.len()));
    add("euler exactness", euler.exact, "closed-form", format!("{:?}", opts.euler_degrees));
    add("omega block", omega_block.holds, "exact", format!("{:?}", omega_block.lambda));
    if let Some(ps) = &presentation {
        add("module presentation", ps.stabilized && ps.deficient.is_empty(), ev, format!("{} relations", ps.relation_degrees.len()));
    }
    if let Some(r) = &rank {
        add("rank condition", r.holds, "evidence", r.level.clone());
    }
    if let Some(nc) = &negative_controls {
        let rank_ok = opts.rank.is_none() || nc.random_rank_witness.is_some();
        add(
            "negative controls",
            !nc.perturbed_alpha_symmetric && !nc.perturbed_eta_residues.is_empty() && rank_ok,
            "exact",
            format!("eta residues at {:?}", nc.perturbed_eta_residues),
        );
    }
    let all_pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        field: F::spec().to_string(),
        params: p.doc(),
        seed,
        degenerate_branch: p.degenerate_branch(),
        theta_hilbert,
        canonical_hilbert,
        printed_relations_mismatch,
        symmetric,
        row_kernels,
        minimality,
        cocycle,
        generation,
        cj,
        e_of_phi,
        e_of_phi_matches,
        chart_det,
        chart_independence,
        annihilation,
        euler,
        omega_block,
        presentation,
        rank,
        negative_controls,
        checks,
        all_pass,
    };
    Ok((report, tm))
}
