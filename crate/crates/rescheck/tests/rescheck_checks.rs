use beilinson::{InvariantData, SheafKind};
use gla::{minimal_presentation, GradedFree, GradedMatrix, PolyRingAmbient};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ring::{dehomogenize, default_names, monomials_of_degree, text::parse_poly, Field, Fp, Poly, Weights};

use rescheck::*;

type F = Fp<65521>;

fn p(s: &str, w: &Weights) -> Poly<F> {
    parse_poly(s, &default_names(w.len()), w).unwrap()
}

/// Matrix from sheaf twists of rows and columns.
fn graded(w: &Weights, rows: &[i64], cols: &[i64], entries: Vec<Vec<Poly<F>>>) -> GradedMatrix<F> {
    GradedMatrix::new(
        w.clone(),
        GradedFree::new(cols.iter().map(|c| -c).collect()),
        GradedFree::new(rows.iter().map(|r| -r).collect()),
        entries,
    )
    .unwrap()
}

fn random_form(w: &Weights, d: i64, rng: &mut ChaCha8Rng) -> Poly<F> {
    if d < 0 {
        return Poly::zero_of_degree(w.len(), d);
    }
    let terms = monomials_of_degree(w, d).into_iter().map(|m| (m, F::from_i64(rng.gen_range(-5..=5))));
    Poly::from_terms(w.len(), terms, Some(d), w).unwrap()
}

fn random_matrix(w: &Weights, rows: &[i64], cols: &[i64], rng: &mut ChaCha8Rng) -> GradedMatrix<F> {
    let entries = rows.iter().map(|&r| cols.iter().map(|&c| random_form(w, r - c, rng)).collect()).collect();
    graded(w, rows, cols, entries)
}

#[test]
fn determinant_examples() {
    let w = Weights::of(&[1, 1]);
    let d = det_poly(&[vec![p("x0", &w), p("0", &w)], vec![p("0", &w), p("x1", &w)]], &w).unwrap();
    assert_eq!(d, p("x0*x1", &w));
    let k = det_poly(&[vec![p("x0", &w), p("x1", &w)], vec![p("-x1", &w), p("x0", &w)]], &w).unwrap();
    assert_eq!(k, p("x0^2 + x1^2", &w));
    assert_eq!(k.degree(), Some(2));
}

#[test]
fn fitting_examples() {
    let w = Weights::of(&[1, 1]);
    let row = graded(&w, &[0], &[-1, -1], vec![vec![p("x0", &w), p("x1", &w)]]);
    let i1 = fitting_minors_poly(&row, 1).unwrap();
    assert_eq!(i1, vec![p("x0", &w), p("x1", &w)]);
    let diag = graded(&w, &[0, 0], &[-1, -1], vec![vec![p("x0", &w), p("0", &w)], vec![p("0", &w), p("x1", &w)]]);
    assert_eq!(fitting_minors_poly(&diag, 2).unwrap(), vec![p("x0*x1", &w)]);
    let c = ChartMatrix::from_graded(&diag, 0).unwrap();
    let fit = fitting_minors(&c, 1).unwrap();
    assert_eq!(fit.generators(), 4);
    let ideal = fit.ideal(&w, true);
    assert_eq!(ideal.gens.len(), 2);
}

#[test]
fn interpolation_agrees_with_bareiss() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rows = [0, -1, -2, -2, -3];
    let cols = [-4, -3, -3, -5, -2];
    for _ in 0..3 {
        let m = random_matrix(&w, &rows, &cols, &mut rng);
        let hom = det_poly(&m.entries, &w).unwrap();
        for chart in [0, 1] {
            let c = ChartMatrix::from_graded(&m, chart).unwrap();
            let a = det_chart(&c).unwrap();
            let b = det_chart_bareiss(&c).unwrap();
            assert_eq!(a.poly, b.poly);
            assert_eq!(a, dehomogenize(&hom, chart, &w).unwrap());
        }
        let c = ChartMatrix::from_graded(&m, 1).unwrap();
        let fit = fitting_minors(&c, 3).unwrap();
        let direct = fitting_minors_poly(&m, 3).unwrap();
        assert_eq!(fit.generators(), direct.len());
        for mi in &fit.minors {
            let sub = m.submatrix(&mi.rows, &mi.cols);
            assert_eq!(mi.homogeneous, det_poly(&sub.entries, &w).unwrap());
        }
    }
}

#[test]
fn symmetrization_is_symmetric() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = [0, -2, -3, -4];
    let s = -8;
    let cols: Vec<i64> = a.iter().map(|x| s - x).collect();
    let m = random_matrix(&w, &a, &cols, &mut rng);
    let t = m.dual(-s);
    let half = F::from_i64(2).inv().unwrap();
    let entries = (0..4).map(|i| (0..4).map(|j| m.entries[i][j].try_add(&t.entries[i][j]).unwrap().scale(&half)).collect()).collect();
    let sym = BundleMap::lines(graded(&w, &a, &cols, entries));
    assert!(check_symmetric(&sym, s).unwrap());
    let mut bad = sym.clone();
    bad.matrix.entries[0][1] = bad.matrix.entries[0][1].try_add(&p("x0^6", &w)).unwrap();
    assert!(!check_symmetric(&bad, s).unwrap());
    assert!(check_symmetric(&sym, s + 1).is_err());
    // The twisted transpose of a symmetric map is itself.
    assert_eq!(sym.twisted_transpose(s).matrix, sym.matrix);
}

#[test]
fn minimality_examples() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let id = BundleMap::lines(graded(&w, &[0], &[0], vec![vec![p("1", &w)]]));
    let rep = check_minimal(&id);
    assert!(!rep.minimal);
    assert_eq!(rep.violations[0].summand, "O(0)");
    let k = koszul::koszul::<F>(&w);
    for pos in -3..=0 {
        assert!(check_minimal(&BundleMap::lines(k.diff(pos))).minimal);
    }
}

/// `Ω¹ ⊂ O(−1)³` on the projective plane, composed with `O(−2)³ → Ω¹`.
fn omega_iso(w: &Weights) -> BundleMap<F> {
    let e = vec![
        vec![p("0", w), p("x2", w), p("-x1", w)],
        vec![p("-x2", w), p("0", w), p("x0", w)],
        vec![p("x1", w), p("-x0", w), p("0", w)],
    ];
    let m = graded(w, &[-1, -1, -1], &[-2, -2, -2], e);
    BundleMap::new(m, vec![OmegaGroup::rows(0, 0), OmegaGroup::cols(0, 2, 0)]).unwrap()
}

#[test]
fn chart_reduction_of_an_omega_isomorphism() {
    let w = Weights::of(&[1, 1, 1]);
    let m = omega_iso(&w);
    assert_eq!(m.target(), vec![SheafKind::omega(1, 0)]);
    assert!(m.groups.iter().all(|g| check_row_kernel(&m, g)));
    for chart in 0..3 {
        let c = chart_reduce(&m, chart).unwrap();
        assert_eq!(c.size(), 2);
        let d = det_chart(&c).unwrap();
        assert_eq!(d.poly, Poly::one(3), "chart {chart}");
        let zero_one = c.entries.iter().flatten().all(|e| e.poly.is_zero() || e.poly.terms().all(|(m, _)| m.is_one()));
        assert!(zero_one);
    }
    let mut bad = m.clone();
    bad.matrix.entries[0][1] = p("x1", &w);
    assert!(!check_row_kernel(&bad, &bad.groups[0].clone()));
    assert!(matches!(chart_reduce(&bad, 0), Err(RescheckError::KernelRelation(0))));
}

#[test]
fn chart_reduction_without_omegas_dehomogenizes() {
    let w = Weights::of(&[1, 1, 2]);
    let m = graded(&w, &[0, -1], &[-2, -2], vec![vec![p("x2", &w), p("x0^2", &w)], vec![p("x1", &w), p("x0", &w)]]);
    let c = chart_reduce(&BundleMap::lines(m.clone()), 1).unwrap();
    assert_eq!(c.entries[0][0], dehomogenize(&m.entries[0][0], 1, &w).unwrap());
    assert_eq!(c.size(), 2);
    assert!(matches!(chart_reduce(&BundleMap::lines(m), 2), Err(RescheckError::Chart(2, 2))));
}

#[test]
fn rank_condition_small_cases() {
    let w = Weights::of(&[1, 1, 1]);
    // [[0, g], [g, h]] without its first row leaves (g h).
    let m = graded(&w, &[0, 1], &[0, -1], vec![vec![p("0", &w), p("x0 + x2", &w)], vec![p("x0 + x2", &w), p("x1^2", &w)]]);
    let c = ChartMatrix::from_graded(&m, 2).unwrap();
    let v = rank_condition(&c, &RankOptions { dense_check_up_to: Some(10), ..Default::default() }).unwrap();
    assert!(v.holds);
    assert_eq!(v.tests.len(), 4);
    assert!(v.dense_checked > 0);

    let diag = graded(&w, &[0, 0], &[-1, -1], vec![vec![p("x0", &w), p("0", &w)], vec![p("0", &w), p("x1", &w)]]);
    let c = ChartMatrix::from_graded(&diag, 2).unwrap();
    let v = rank_condition(&c, &RankOptions::default()).unwrap();
    assert!(!v.holds);
    let wit = v.witness.unwrap();
    assert_eq!((wit.rows.clone(), wit.cols.clone()), (vec![0], vec![0]));
}

#[test]
fn sampled_mode_is_seeded() {
    let w = Weights::of(&[1, 1, 2]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_matrix(&w, &[0, -1, -1, -2], &[-3, -2, -2, -1], &mut rng);
    let c = ChartMatrix::from_graded(&m, 0).unwrap();
    let opts = RankOptions { mode: RankMode::Sampled { fraction: 0.25, seed: 9 }, ..Default::default() };
    let a = rank_condition(&c, &opts).unwrap();
    let b = rank_condition(&c, &opts).unwrap();
    assert_eq!(a.tests, b.tests);
    assert_eq!(a.tests.iter().filter(|t| !t.generator).count(), 3);
}

#[test]
fn annihilation_examples() {
    let w = Weights::of(&[1, 1, 1]);
    // P/(x0, x1^2) as a module over the polynomial ring.
    let amb = PolyRingAmbient::new(&w);
    let one = amb.vector_of(&p("1", &w), 0);
    let pres = minimal_presentation(&[(0, one)], &amb, 4);
    let r = annihilation_check(&Poly::zero(3), &pres).unwrap();
    assert!(r.annihilates);
    let rel = graded(&w, &[0], &[-1, -2], vec![vec![p("x0", &w), p("x1^2", &w)]]);
    let q = gla::PresentationResult {
        presentation: gla::Presentation { generators: GradedFree::new(vec![0]), relations: rel },
        stabilized: true,
        bound: 4,
        hilbert: vec![],
    };
    assert!(annihilation_check(&p("x0*x2", &w), &q).unwrap().annihilates);
    assert!(annihilation_check(&p("x1^2 + x0*x1", &w), &q).unwrap().annihilates);
    assert!(!annihilation_check(&p("x1*x2", &w), &q).unwrap().annihilates);
    let unstable = gla::PresentationResult { stabilized: false, ..q };
    assert!(annihilation_check(&p("x0", &w), &unstable).is_err());
}

#[test]
fn annihilation_in_a_quotient_ring() {
    use std::sync::Arc;
    let wq = Weights::of(&[1, 1, 1]);
    let gb = Arc::new(gla::GroebnerBasis::compute(&wq, &[p("x0*x2 - x1^2", &wq), p("x0^3", &wq)], 12).unwrap());
    let wp = Weights::of(&[1, 1]);
    let amb = gla::QuotientAmbient::new(&wp, gb, vec![p("x0", &wq), p("x2", &wq)]).unwrap();
    let gens = vec![p("1", &wq), p("x1", &wq)];
    assert!(annihilation_in_quotient(&p("x0^3", &wp), &gens, &amb).unwrap().annihilates);
    assert!(!annihilation_in_quotient(&p("x1^3", &wp), &gens, &amb).unwrap().annihilates);
}

#[test]
fn euler_exactness_of_a_quintic() {
    // A quintic surface: 0 → O(−5) → O → O_S → 0 with O_S(1) = ω_S.
    let w = Weights::of(&[1, 1, 1, 1]);
    let inv = InvariantData::new(4, 0, 5, 5).unwrap();
    let rep = euler_exactness(&w, &[(SheafKind::line(0), 1)], &inv, -3..=8);
    assert!(rep.exact, "{:?}", rep.rows);
    let off = euler_exactness(&w, &[(SheafKind::line(-1), 1)], &inv, 0..=2);
    assert!(!off.exact);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rank_condition_ignores_unit_scaling(seed in 0u64..1000, a in 1i64..100, b in 1i64..100) {
        let w = Weights::of(&[1, 1, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&w, &[0, -1, -2], &[-2, -2, -3], &mut rng);
        let mut s = m.clone();
        for j in 0..3 {
            s.entries[1][j] = s.entries[1][j].scale(&F::from_i64(a));
            s.entries[j][2] = s.entries[j][2].scale(&F::from_i64(b));
        }
        let v = rank_condition(&ChartMatrix::from_graded(&m, 0).unwrap(), &RankOptions::default()).unwrap();
        let u = rank_condition(&ChartMatrix::from_graded(&s, 0).unwrap(), &RankOptions::default()).unwrap();
        prop_assert_eq!(v.holds, u.holds);
        prop_assert_eq!(v.tests.iter().map(|t| t.member).collect::<Vec<_>>(), u.tests.iter().map(|t| t.member).collect::<Vec<_>>());
    }
}
