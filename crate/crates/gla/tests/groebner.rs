use std::sync::Arc;

use gla::{minimal_presentation, GradedAmbient, GroebnerBasis, IdealGens, IdealSpan, QuotientAmbient};
use proptest::prelude::*;
use ring::{default_names, hilbert_p, monomials_of_degree, text::parse_poly, Fp, Poly, Weights};

type F = Fp<65521>;

fn p(s: &str, w: &Weights) -> Poly<F> {
    parse_poly(s, &default_names(w.len()), w).unwrap()
}

#[test]
fn twisted_cubic_hilbert_function() {
    let w = Weights::of(&[1, 1, 1, 1]);
    let gens = vec![p("x0*x2 - x1^2", &w), p("x1*x3 - x2^2", &w), p("x0*x3 - x1*x2", &w)];
    let gb = GroebnerBasis::compute(&w, &gens, 12).unwrap();
    for d in 0..=12 {
        assert_eq!(gb.hilbert(d), 3 * d as usize + 1, "degree {d}");
    }
    assert!(gb.contains(&p("x0*x2^2 - x1^2*x2", &w)).unwrap());
    assert!(!gb.contains(&p("x0*x3", &w)).unwrap());
}

#[test]
fn weighted_complete_intersection() {
    // Two general forms of degrees 2 and 3 on P(1,1,2,3); quotient series
    // (1-t^2)(1-t^3) / ((1-t)^2 (1-t^2)(1-t^3)) = 1/(1-t)^2.
    let w = Weights::of(&[1, 1, 2, 3]);
    let gens = vec![p("x2 + x0*x1", &w), p("x3 + x0^3 + x1*x2", &w)];
    let gb = GroebnerBasis::compute(&w, &gens, 15).unwrap();
    for d in 0..=15 {
        assert_eq!(gb.hilbert(d), d as usize + 1);
    }
}

#[test]
fn normal_form_is_canonical() {
    let w = Weights::of(&[1, 1, 2]);
    let gens = vec![p("x2^2 - x0^4 - x1^4", &w), p("x0*x2 - x1^3", &w)];
    let gb = GroebnerBasis::compute(&w, &gens, 10).unwrap();
    let a = p("x0^2*x2 + x1^2*x2 + x0*x1^3", &w);
    let b = a.try_add(&p("x0*x2 - x1^3", &w).mul_ref(&p("x0 - 2*x1", &w))).unwrap();
    assert_eq!(gb.normal_form(&a).unwrap(), gb.normal_form(&b).unwrap());
    for m in gb.standard_monomials(6) {
        assert!(gb.is_standard(&m));
    }
}

#[test]
fn degree_above_bound_is_rejected() {
    let w = Weights::of(&[1, 1]);
    let gb = GroebnerBasis::compute(&w, &[p("x0*x1", &w)], 4).unwrap();
    assert!(gb.normal_form(&p("x0^5", &w)).is_err());
}

#[test]
fn quotient_ambient_matches_ring_structure() {
    // P(1,1) acting on K[y0,y1,y2]/(y0 y2 - y1^2) through y0, y2: the quotient
    // is generated by 1 and y1, freely.
    let wq = Weights::of(&[1, 1, 1]);
    let gb = Arc::new(GroebnerBasis::compute(&wq, &[p("x0*x2 - x1^2", &wq)], 10).unwrap());
    let wp = Weights::of(&[1, 1]);
    let amb = QuotientAmbient::new(&wp, gb, vec![p("x0", &wq), p("x2", &wq)]).unwrap();
    assert_eq!(amb.dim(3), 7);
    let one = amb.vector_of(&p("1", &wq), 0).unwrap();
    let y1 = amb.vector_of(&p("x1", &wq), 1).unwrap();
    let res = minimal_presentation(&[(0, one), (1, y1)], &amb, 6);
    assert!(res.stabilized);
    assert_eq!(res.presentation.relations.cols(), 0);
    for &(d, r) in &res.hilbert {
        assert_eq!(r, amb.dim(d));
    }
}

fn random_form(w: &Weights, d: i64, coeffs: &[u32]) -> Poly<F> {
    let ms = monomials_of_degree(w, d);
    let terms = ms.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, F::from_i64(c as i64 % 7 - 3)));
    Poly::from_terms(w.len(), terms, Some(d), w).unwrap()
}

use ring::Field;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Standard monomials count `dim (P/I)_d`, computed independently by
    /// spanning `I_d` with monomial multiples.
    #[test]
    fn hilbert_agrees_with_dense_span(
        degs in proptest::collection::vec(1i64..5, 1..4),
        coeffs in proptest::collection::vec(0u32..1000, 40),
    ) {
        let w = Weights::of(&[1, 1, 2, 3]);
        let gens: Vec<Poly<F>> = degs
            .iter()
            .enumerate()
            .map(|(k, &d)| random_form(&w, d, &coeffs[k * 7..]))
            .filter(|g| !g.is_zero())
            .collect();
        let gb = GroebnerBasis::compute(&w, &gens, 9).unwrap();
        let mut span = IdealSpan::new(IdealGens::new(w.clone(), gens).unwrap());
        for d in 0..=9 {
            let r = span.piece(d).rank();
            prop_assert_eq!(gb.hilbert(d), hilbert_p(&w, d) as usize - r);
        }
    }
}
