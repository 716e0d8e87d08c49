use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rescheck::{check_minimal, check_row_kernel, check_symmetric, RankMode};
use ring::text::parse_poly;
use ring::{Field, Poly, F65521, Q};
use surfex::*;

type F = F65521;

fn params(seed: u64) -> ParamSet<F> {
    ParamSet::random(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

fn canon(p: &ParamSet<F>) -> CanonicalRing<F> {
    build_canonical_ring(p, RING_TOP).unwrap()
}

fn cpoly(r: &CanonicalRing<F>, s: &str) -> Poly<F> {
    parse_poly(s, &r.ring.vars, &r.ring.weights).unwrap()
}

#[test]
fn params_enforce_constraint() {
    let p = params(1);
    let s = F::one() + p.lambda.clone() + &p.mu + &p.nu + &p.epsilon;
    assert!(s.is_zero());
    let one = F::one();
    assert!(matches!(
        ParamSet::new(one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one),
        Err(SurfexError::Constraint(_))
    ));
    let z = F::zero();
    let degenerate = ParamSet::from_free(F::from_i64(3), z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap();
    assert!(degenerate.degenerate_branch());
    assert!(!p.degenerate_branch());
}

#[test]
fn curve_ring_hilbert() {
    let c = build_curve_ring(&params(2), 14).unwrap();
    assert_eq!(c.relations.len(), 37);
    assert_eq!(c.hilbert(0), 1);
    assert_eq!(c.hilbert(1), 0);
    assert_eq!(c.hilbert(4), 7);
    for n in 2..=14 {
        assert_eq!(c.hilbert(n) as i64, 2 * n - 1, "n = {n}");
    }
    for n in 0..=7 {
        assert_eq!(c.hilbert_dense(n).unwrap(), c.hilbert(n), "n = {n}");
    }
}

#[test]
fn theta_ring_hilbert_and_hyperplane_section() {
    let p = params(3);
    let t = build_theta_ring(&p, 8).unwrap();
    assert_eq!(t.relations.len(), 37);
    assert_eq!(t.hilbert(2), 4);
    assert_eq!(t.hilbert(3), 9);
    assert_eq!(t.hilbert(6), 36);
    for n in 1..=8 {
        assert_eq!(t.hilbert(n) as i64, n * n);
    }
    for n in 0..=5 {
        assert_eq!(t.hilbert_dense(n).unwrap(), t.hilbert(n), "n = {n}");
    }
    let c = build_curve_ring(&p, 10).unwrap();
    assert!(hyperplane_section_check(&t, &c).unwrap().iter().all(|&b| b));
}

#[test]
fn theta_relations_transcription() {
    let p = params(4);
    let t = build_theta_ring(&p, 8).unwrap();
    for (k, (name, r)) in t.relations.iter().enumerate() {
        assert_eq!(name, &format!("rel{}", k + 1));
        let d = r.degree().unwrap();
        assert!((4..=8).contains(&d), "{name} has degree {d}");
        assert!(r.is_homogeneous(&t.weights));
    }
    // Only the three lifts of t_i t_j live in degree 8.
    let degrees: Vec<i64> = t.relations.iter().map(|(_, r)| r.degree().unwrap()).collect();
    assert_eq!(degrees.iter().filter(|&&d| d == 8).count(), 3);
}

#[test]
fn canonical_ring_hilbert_and_printed_relations() {
    let r = canon(&params(5));
    assert_eq!(r.hilbert(1), 2);
    assert_eq!(r.hilbert(2), 5);
    assert_eq!(r.hilbert(4), 25);
    for n in 2..=10 {
        assert_eq!(r.hilbert(n) as i64, 1 + 2 * n * (n - 1));
    }
    assert_eq!(r.printed_count(), 10);
    assert!(r.printed_mismatches().unwrap().is_empty());
    for n in 0..=4 {
        assert_eq!(r.ring.hilbert_dense(n).unwrap(), r.hilbert(n), "n = {n}");
    }
}

#[test]
fn rings_over_rationals() {
    let p = ParamSet::<Q>::random(&mut ChaCha8Rng::seed_from_u64(11)).unwrap();
    let t = build_theta_ring(&p, 6).unwrap();
    let r = build_canonical_ring(&p, 6).unwrap();
    for n in 1..=6 {
        assert_eq!(t.hilbert(n) as i64, n * n);
    }
    assert_eq!(r.hilbert(1), 2);
    for n in 2..=6 {
        assert_eq!(r.hilbert(n) as i64, 1 + 2 * n * (n - 1));
    }
}

#[test]
fn projection_validation() {
    let r = canon(&params(6));
    let std = Projection::standard(&r);
    assert!(std.validate(&r).is_ok());
    let bad = Projection { x3: &r.var(cv::THETA) * &r.var(cv::RHO0), ..std.clone() };
    assert!(matches!(bad.validate(&r), Err(SurfexError::Projection(_))));
    let zero = Projection { k0: F::zero(), ..std };
    assert!(zero.validate(&r).is_err());
}

#[test]
fn eta_components() {
    let p = params(7);
    let r = canon(&p);
    let d = eta_data(&p).unwrap();
    assert!(d.degree_violations().is_empty());
    assert_eq!(d.get(Family::Eta, 0, 1), &sigma_pair(&r)[0]);
    assert_eq!(d.get(Family::EtaPrime, 0, 1), &sigma_pair(&r)[1]);
    assert_eq!(d.get(Family::EtaPrime, 0, 2), &cpoly(&r, "xi*sigma1"));
    assert_eq!(d.get(Family::Eta, 0, 3), &cpoly(&r, "xi*rho0^2"));
    assert_eq!(d.get(Family::Eta, 1, 2).degree(), Some(4));
    assert_eq!(d.get(Family::Eta, 2, 3).degree(), Some(6));
}

#[test]
fn cocycle_relations() {
    let p = params(8);
    let r = canon(&p);
    let proj = Projection::standard(&r);
    let d = eta_data(&p).unwrap();
    let rep = cocycle_check(&d, &r, &proj).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.triples.len(), 8);
    let find = |fam, t| rep.triples.iter().find(|x| x.family == fam && x.triple == t).unwrap().vanishes;
    assert!(find(Family::Eta, [0, 1, 2]));
    assert!(find(Family::EtaPrime, [0, 1, 3]));
    let bumped = d.get(Family::Eta, 0, 2).try_add(&cpoly(&r, "theta^4")).unwrap();
    let bad = cocycle_check(&d.with_component(Family::Eta, 0, 2, bumped), &r, &proj).unwrap();
    assert!(!bad.holds);
    assert!(bad.triples.iter().any(|t| !t.vanishes && t.residue != "0"));
}

#[test]
fn generation() {
    let p = params(9);
    let r = canon(&p);
    let proj = Projection::standard(&r);
    let d = eta_data(&p).unwrap();
    let set = generation_set(&d, &r);
    assert_eq!(set.len(), 16);
    let gens: Vec<Poly<F>> = set.iter().map(|(_, g)| g.clone()).collect();
    assert!(generation_check(&r, &proj, &gens, 10).unwrap().holds);
    assert!(generation_check(&r, &proj, &gens[..1], 1).unwrap().holds);
    let without: Vec<Poly<F>> = set.iter().filter(|(n, _)| n != "eta12" && n != "etap12").map(|(_, g)| g.clone()).collect();
    let rep = generation_check(&r, &proj, &without, 10).unwrap();
    assert!(!rep.holds);
    assert_eq!(rep.first_failure, Some(4));
    assert_eq!(rep.rows[4].dim, 25);
}

#[test]
fn coefficients() {
    let p = params(10);
    let r = canon(&p);
    let proj = Projection::standard(&r);
    let (dec, v) = cj_decision(&r, &proj).unwrap();
    assert_eq!(dec.c, [2, 0, 0]);
    assert_eq!(h0_fn_quotient(&r, &proj).unwrap(), H0Fn { n_minus1: 4, n_minus2: 0 });
    assert!(v.is_determined());
    // ρ(x_3) = aσ_0 + bσ_1 + σ_2 lies in the span.
    let alt = Projection { x3: sigma_pair(&r)[0].clone(), ..proj.clone() };
    let (dec, _) = cj_decision(&r, &alt).unwrap();
    assert!(dec.x3_in_span);
    assert_eq!((dec.c[0], dec.c[2]), (3, 1));
}

#[test]
fn degenerate_quadratic_gives_c_minus2() {
    // k = (1, 1) is a root of k0² − b k0 k1 + a k1² when a = b − 1.
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (l, m, n, b, c) = (F::random(&mut rng), F::random(&mut rng), F::random(&mut rng), F::random(&mut rng), F::random(&mut rng));
    let p = ParamSet::from_free(l, m, n, b.clone() - F::one(), b, c).unwrap();
    let r = canon(&p);
    let proj = Projection { k0: F::one(), k1: F::one(), ..Projection::standard(&r) };
    proj.validate(&r).unwrap();
    assert_eq!(h0_fn_quotient(&r, &proj).unwrap().n_minus2, 1);
    assert_eq!(cj_decision(&r, &proj).unwrap().0.c[1], 1);
}

#[test]
fn alpha_tilde_entries() {
    let p = params(13);
    let a = build_alpha_tilde(&p).unwrap();
    let w = a.weights().clone();
    let x = |s: &str| parse_poly::<F>(s, &ring::default_names(4), &w).unwrap();
    let (p2, p4, q4) = (a.helper("p2").unwrap(), a.helper("p4").unwrap(), a.helper("q4").unwrap());
    assert_eq!(a.entry(1, 0), &(&x("x0*x3") * p2));
    assert_eq!(a.entry(0, 2), &(&x("x0") * p4));
    assert_eq!(a.entry(0, 8), &(&x("x0*x1") * q4));
    assert_eq!(a.entry(4, 11), &x("-x2"));
    for i in 0..12 {
        for j in 0..12 {
            let e = a.entry(i, j);
            assert!(e.is_zero() || e.degree() == Some(a.map.row_twist(i) - a.map.col_twist(j)));
        }
    }
}

#[test]
fn alpha_tilde_structure() {
    let a = build_alpha_tilde(&params(14)).unwrap();
    assert!(check_symmetric(&a.map, SYMMETRY_TWIST).unwrap());
    assert!(a.map.groups.iter().all(|g| check_row_kernel(&a.map, g)));
    assert!(check_minimal(&a.map).minimal);
    assert!(!check_symmetric(&a.perturbed(0, 1).map, SYMMETRY_TWIST).unwrap());
}

#[test]
fn omega_block() {
    let a = build_alpha_tilde(&params(15)).unwrap();
    let rep = omega_block_check(&a);
    assert!(rep.holds, "{rep:?}");
    let w = a.weights().clone();
    let set_blocks = |c: &[Vec<Poly<F>>]| {
        let mut b = a.clone();
        for k in 0..4 {
            for l in 0..4 {
                b.map.matrix.entries[4 + k][8 + l] = c[k][l].clone();
                b.map.matrix.entries[8 + l][4 + k] = c[k][l].clone();
            }
        }
        b
    };
    assert!(!omega_block_check(&set_blocks(&contraction::<F>(&w, 0))).holds);
    assert!(omega_block_check(&set_blocks(&contraction::<F>(&w, 1))).holds);
    assert!(!omega_block_check(&set_blocks(&vec![vec![Poly::zero(4); 4]; 4])).holds);
}

#[test]
fn full_pipeline() {
    let p = params(7);
    let (rep, _) = verify_example(&p, Some(7), &VerifyOptions { presentation_bound: Some(10), ..Default::default() }).unwrap();
    for c in &rep.checks {
        assert!(c.pass, "{} failed: {}", c.name, c.detail);
    }
    assert_eq!(rep.chart_det.saturated_degree, DET_DEGREE);
    assert_eq!(rep.e_of_phi, ["Omega^1(-1)^2", "O(-2)^1", "O(-3)^2"]);
    assert!(rep.rank.as_ref().unwrap().holds);
    assert!(rep.negative_controls.as_ref().unwrap().random_rank_witness.is_some());
}

#[test]
fn pipeline_is_deterministic() {
    let p = params(21);
    let opts = VerifyOptions { rank: Some(RankMode::Sampled { fraction: 0.25, seed: 21 }), presentation_bound: None, ..Default::default() };
    let a = serde_json::to_string(&verify_example(&p, Some(21), &opts).unwrap().0).unwrap();
    let b = serde_json::to_string(&verify_example(&p, Some(21), &opts).unwrap().0).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]
    #[test]
    fn theta_hilbert_for_random_parameters(seed in any::<u64>()) {
        let t = build_theta_ring(&params(seed), 5).unwrap();
        for n in 1..=5 {
            prop_assert_eq!(t.hilbert(n) as i64, n * n);
        }
    }

    #[test]
    fn alpha_symmetric_for_random_parameters(seed in any::<u64>()) {
        let a = build_alpha_tilde(&params(seed)).unwrap();
        prop_assert!(check_symmetric(&a.map, SYMMETRY_TWIST).unwrap());
        prop_assert!(omega_block_check(&a).holds);
    }
}
