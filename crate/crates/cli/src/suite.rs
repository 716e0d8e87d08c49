//! The ten acceptance criteria as one headless suite.

use std::time::Instant;

use beilinson::{orthogonality_check, y_terms, z_coeffs, OrthoKind, ResolutionTerms, SheafKind};
use cohom::{h0_oracle_omega, h_line, h_omega, verify_mondimfor, CohomologyTable, ModuleSheaf};
use gla::{GradedFree, Presentation};
use koszul::{check_exactness, koszul, syzygy_presentation, HomologyDim};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rescheck::{chart_reduce, rank_condition, RankMode, RankOptions};
use ring::{hilbert_p, Weights, F65521, Q};
use serde::Serialize;
use surfex::{build_alpha_tilde, DET_DEGREE, build_canonical_ring, build_theta_ring, verify_example, ParamSet, VerifyOptions};

type F = F65521;

pub const WEIGHT_VECTORS: [&[u32]; 4] = [&[1, 1, 1, 1], &[1, 1, 2, 3], &[1, 2, 3], &[2, 3, 5]];

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub provenance: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub sampled_fraction: f64,
    pub random_sets: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7, sampled_fraction: 0.25, random_sets: 5 }
    }
}

/// Named wall-clock times, e.g. `criterion 6` or `criterion 9 sampled`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteTimings {
    pub entries: Vec<(String, f64)>,
}

impl SuiteTimings {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|e| e.1)
    }
}

fn crit(id: u8, name: &str, pass: bool, provenance: &str, detail: String) -> Criterion {
    Criterion { id, name: name.into(), pass, provenance: provenance.into(), detail }
}

pub fn params(seed: u64) -> ParamSet<F> {
    ParamSet::random(&mut ChaCha8Rng::seed_from_u64(seed)).expect("odd characteristic")
}

pub fn criterion_1() -> Criterion {
    let w = Weights::of(&[1, 1, 2, 3]);
    let (p1, p2) = (hilbert_p(&w, 1), hilbert_p(&w, 2));
    let bad: Vec<String> = WEIGHT_VECTORS
        .iter()
        .flat_map(|v| (-30..=30).filter(move |&l| !verify_mondimfor(&Weights::of(v), l)).map(move |l| format!("{v:?}@{l}")))
        .collect();
    crit(1, "hilbert and monomial counts", p1 == 2 && p2 == 4 && bad.is_empty(), "closed-form", format!("p1={p1} p2={p2} failures={bad:?}"))
}

pub fn criterion_2() -> Criterion {
    let expect = [HomologyDim { position: 0, degree: 0, dim: 1 }];
    let mut bad = Vec::new();
    for v in WEIGHT_VECTORS {
        let r = check_exactness(&koszul::<F>(&Weights::of(v)), 0..=12);
        if r.homology != expect {
            bad.push(format!("{v:?}: {:?}", r.homology));
        }
    }
    crit(2, "koszul exactness", bad.is_empty(), "exact", format!("degrees 0..=12, failures={bad:?}"))
}

pub fn criterion_3() -> Criterion {
    let mut bad = Vec::new();
    for v in WEIGHT_VECTORS {
        let w = Weights::of(v);
        let n = w.n();
        for j in 0..=n {
            for l in -10..=10 {
                let ok = h_omega(&w, 0, j as i64, l).ok() == h0_oracle_omega::<F>(&w, j, l).ok()
                    && h_omega(&w, n, j as i64, l).ok() == h_omega(&w, 0, (n - j) as i64, -l).ok();
                if !ok {
                    bad.push(format!("{v:?} j={j} l={l}"));
                }
            }
        }
        let free = Presentation::<F>::free(&w, GradedFree::new(vec![0]));
        let mut modules = vec![(None, free)];
        for j in 1..=n {
            modules.push((Some(j), syzygy_presentation::<F>(&w, j).expect("syzygy").0));
        }
        for (j, p) in modules {
            let sheaf = match ModuleSheaf::new(&p, 16) {
                Ok(s) => s,
                Err(e) => {
                    bad.push(format!("{v:?} module {j:?}: {e}"));
                    continue;
                }
            };
            for i in 0..=n {
                for l in -10..=10 {
                    let want = match j {
                        None => h_line(&w, i, l).ok(),
                        Some(j) => h_omega(&w, i, j as i64, l).ok(),
                    };
                    let got = sheaf.h(i, l).ok().filter(|h| h.certified).map(|h| h.value);
                    if got != want {
                        bad.push(format!("{v:?} module {j:?} h^{i}({l}) = {got:?} vs {want:?}"));
                    }
                }
            }
        }
    }
    crit(3, "cohomology oracle", bad.is_empty(), "exact", format!("failures={bad:?}"))
}

pub fn criterion_4() -> Criterion {
    let w = Weights::of(&[1, 1, 2, 3]);
    let mut bad = Vec::new();
    for l in -6..=0 {
        for j in -6..=0 {
            if orthogonality_check::<F>(&w, OrthoKind::M, l, j).ok() != Some(i64::from(j == l)) {
                bad.push(format!("M l={l} j={j}"));
            }
        }
    }
    for l in -3..=3 {
        for j in -3..=3 {
            if orthogonality_check::<F>(&w, OrthoKind::N, l, j).ok() != Some(i64::from(j == l)) {
                bad.push(format!("N l={l} j={j}"));
            }
        }
    }
    crit(4, "orthogonality", bad.is_empty(), "exact", format!("failures={bad:?}"))
}

/// `Y•` of `O(2)` predicted from single and pair counts of the weights.
pub fn o2_expected(w: &Weights) -> ResolutionTerms {
    let ws = w.as_slice();
    let (n, s) = (w.n() as i64, w.total());
    let mut r = ResolutionTerms::new("Y");
    r.add(-2, SheafKind::omega(2, 2), 1, None);
    r.add(-1, SheafKind::omega(1, 1), hilbert_p(w, 1), None);
    r.add(0, SheafKind::omega(0, 0), hilbert_p(w, 2), None);
    for a in 0..ws.len() {
        let j = 2 - ws[a] as i64;
        if n - s < j && j < 0 {
            r.add(0, SheafKind::line(j), 1, None);
        }
        for b in a + 1..ws.len() {
            let j = 2 - (ws[a] + ws[b]) as i64;
            if ws[a] > 1 && ws[b] > 1 && n - s < j && j < 0 {
                r.add(-1, SheafKind::line(j), 1, None);
            }
        }
    }
    r.normalized(w)
}

pub fn o2_resolution(w: &Weights) -> Result<ResolutionTerms, String> {
    let s = w.total();
    let t = CohomologyTable::line_bundle::<F>(w, 2, -s..=s).map_err(|e| e.to_string())?;
    Ok(y_terms(w, &t).map_err(|e| e.to_string())?.normalized(w))
}

pub fn criterion_5() -> Criterion {
    let mut bad = Vec::new();
    for v in [&[1, 1, 2, 3][..], &[1, 1, 1, 1], &[1, 2, 3], &[1, 2, 2, 3], &[1, 1, 2, 2, 3]] {
        let w = Weights::of(v);
        match o2_resolution(&w) {
            Ok(y) if y.multisets() == o2_expected(&w).multisets() => {}
            Ok(y) => bad.push(format!("{v:?}: {:?}", y.report_lines())),
            Err(e) => bad.push(format!("{v:?}: {e}")),
        }
    }
    let w = Weights::of(&[1, 1, 2, 3]);
    let lines = o2_resolution(&w).map(|y| y.report_lines()).unwrap_or_default();
    let shape = lines == ["Y^-2 = Omega^2(2)^1", "Y^-1 = Omega^1(1)^2 + O(-3)^1", "Y^0 = O(0)^4 + O(-1)^1"];
    let z: Vec<(u64, u64)> = (-3..=-1).map(|j| z_coeffs(&w, j).unwrap_or((9, 9))).collect();
    // (z^{-1}_j, z^0_j) for j = -3, -2, -1.
    let zs = z == [(1, 0), (0, 0), (0, 1)];
    crit(5, "O(2) resolution", bad.is_empty() && shape && zs, "resolved", format!("shape={lines:?} z={z:?} failures={bad:?}"))
}

pub fn criterion_6(cfg: &SuiteConfig) -> Criterion {
    let mut bad = Vec::new();
    let theta_ok = |h: &dyn Fn(i64) -> usize| (1..=8).all(|n| h(n) as i64 == n * n);
    let canon_ok = |h: &dyn Fn(i64) -> usize| h(1) == 2 && (2..=8).all(|n| h(n) as i64 == 1 + 2 * n * (n - 1));
    for k in 0..cfg.random_sets {
        let p = params(cfg.seed.wrapping_add(k as u64));
        let (t, r) = (build_theta_ring(&p, 8), build_canonical_ring(&p, 8));
        match (t, r) {
            (Ok(t), Ok(r)) => {
                if !theta_ok(&|n| t.hilbert(n)) || !canon_ok(&|n| r.hilbert(n)) {
                    bad.push(format!("GF(65521) set {k}"));
                }
            }
            _ => bad.push(format!("GF(65521) set {k}: construction failed")),
        }
    }
    let q = ParamSet::<Q>::random(&mut ChaCha8Rng::seed_from_u64(cfg.seed)).expect("rational parameters");
    match (build_theta_ring(&q, 8), build_canonical_ring(&q, 8)) {
        (Ok(t), Ok(r)) if theta_ok(&|n| t.hilbert(n)) && canon_ok(&|n| r.hilbert(n)) => {}
        _ => bad.push("Q set".into()),
    }
    crit(
        6,
        "ring hilbert functions",
        bad.is_empty(),
        "evidence",
        format!("{} prime-field sets and one rational set, failures={bad:?}", cfg.random_sets),
    )
}

/// Criteria 7, 8 and 9 from one pipeline run, plus the sampled sweep.
pub fn criteria_7_to_9(cfg: &SuiteConfig, tm: &mut SuiteTimings) -> Vec<Criterion> {
    let p = params(cfg.seed);
    let opts = VerifyOptions { rank: Some(RankMode::Full), ..Default::default() };
    let rep = match verify_example(&p, Some(cfg.seed), &opts) {
        Ok((r, t)) => {
            let secs = |names: &[&str]| t.stages.iter().filter(|(n, _)| names.contains(&n.as_str())).map(|e| e.1).sum::<f64>();
            let fixed = ["presentation", "rank condition", "random rank control"];
            let rest: f64 = t.stages.iter().filter(|(n, _)| !fixed.contains(&n.as_str())).map(|e| e.1).sum();
            tm.entries.push(("criteria 7-8".into(), rest));
            tm.entries.push(("presentation".into(), secs(&["presentation"])));
            tm.entries.push(("criterion 9 full".into(), secs(&["rank condition"])));
            tm.entries.push(("criterion 9 random control".into(), secs(&["random rank control"])));
            r
        }
        Err(e) => return (7..=9).map(|id| crit(id, "surface example", false, "evidence", e.to_string())).collect(),
    };
    let status = |name: &str| rep.checks.iter().find(|c| c.name == name).is_some_and(|c| c.pass);
    let c7 = ["cocycle", "generation", "c_j", "h0_FN", "E(phi) grouping"];
    let c8 = [
        "symmetry",
        "row kernels",
        "minimality",
        "chart determinant",
        "chart independence",
        "annihilation",
        "euler exactness",
        "omega block",
        "module presentation",
    ];
    let t = Instant::now();
    let sampled = build_alpha_tilde(&p).and_then(|a| {
        let chart = chart_reduce(&a.map, 1)?;
        let mode = RankMode::Sampled { fraction: cfg.sampled_fraction, seed: cfg.seed };
        Ok(rank_condition(&chart, &RankOptions { mode, ..Default::default() })?)
    });
    tm.entries.push(("criterion 9 sampled".into(), t.elapsed().as_secs_f64()));
    let full = rep.rank.as_ref();
    let control = rep.negative_controls.as_ref().and_then(|n| n.random_rank_witness.clone());
    let sampled_ok = sampled.as_ref().is_ok_and(|v| v.holds && v.level.starts_with("evidence"));
    let c9 = full.is_some_and(|v| v.holds && v.level.starts_with("evidence")) && sampled_ok && control.is_some() && status("negative controls");
    let values7 = rep.cj.c == [2, 0, 0]
        && (rep.cj.h0.n_minus1, rep.cj.h0.n_minus2) == (4, 0)
        && rep.generation.window == 10
        && rep.e_of_phi == ["Omega^1(-1)^2", "O(-2)^1", "O(-3)^2"];
    let values8 = rep.chart_det.saturated_degree == DET_DEGREE
        && rep.annihilation.checks.len() == 9
        && rep.euler.rows.iter().map(|r| r.d).eq(0..=12)
        && rep.row_kernels.len() == 4;
    vec![
        crit(
            7,
            "cocycle, generation, coefficients",
            values7 && c7.iter().all(|n| status(n)),
            "evidence",
            format!("c={:?} h0={:?} E={:?}", rep.cj.c, rep.cj.h0, rep.e_of_phi),
        ),
        crit(
            8,
            "alpha-tilde verification",
            values8 && c8.iter().all(|n| status(n)),
            "evidence",
            format!("det degree {} on D(x1), field {}", rep.chart_det.saturated_degree, rep.field),
        ),
        crit(
            9,
            "rank condition",
            c9,
            "evidence",
            format!(
                "full: {} tests, sampled: {} tests, field {}, seed {}, control witness {:?}",
                full.map_or(0, |v| v.tests.len()),
                sampled.as_ref().map_or(0, |v| v.tests.len()),
                rep.field,
                cfg.seed,
                control.map(|t| (t.rows, t.cols))
            ),
        ),
    ]
}

/// Two pipeline runs with the same seed serialize identically.
pub fn criterion_10(cfg: &SuiteConfig) -> Criterion {
    let opts = VerifyOptions {
        rank: Some(RankMode::Sampled { fraction: cfg.sampled_fraction, seed: cfg.seed }),
        presentation_bound: None,
        ..Default::default()
    };
    let run = || verify_example(&params(cfg.seed), Some(cfg.seed), &opts).map(|(r, _)| serde_json::to_string(&r).expect("serializable"));
    let same = matches!((run(), run()), (Ok(a), Ok(b)) if a == b);
    crit(10, "deterministic reports", same, "exact", format!("seed {}", cfg.seed))
}

pub fn run_all(cfg: &SuiteConfig) -> (Vec<Criterion>, SuiteTimings) {
    let mut tm = SuiteTimings::default();
    let mut out = Vec::new();
    let singles: [(u8, &dyn Fn() -> Criterion); 6] = [
        (1, &criterion_1),
        (2, &criterion_2),
        (3, &criterion_3),
        (4, &criterion_4),
        (5, &criterion_5),
        (6, &|| criterion_6(cfg)),
    ];
    for (id, f) in singles {
        let t = Instant::now();
        out.push(f());
        tm.entries.push((format!("criterion {id}"), t.elapsed().as_secs_f64()));
    }
    out.extend(criteria_7_to_9(cfg, &mut tm));
    let t = Instant::now();
    out.push(criterion_10(cfg));
    tm.entries.push(("criterion 10".into(), t.elapsed().as_secs_f64()));
    (out, tm)
}
