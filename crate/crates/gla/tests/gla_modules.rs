use gla::{
    degree_piece, hilbert_of_coker, ideal_membership, minimal_presentation, rank_and_kernel, syzygies_up_to, GradedFree,
    GradedMatrix, IdealGens, Mat, PolyRingAmbient, Presentation,
};
use proptest::prelude::*;
use ring::{monomials_of_degree, text::parse_poly, default_names, Field, Fp, Poly, Weights, Q};

type F = Fp<65521>;

fn p<K: Field>(s: &str, w: &Weights) -> Poly<K> {
    parse_poly(s, &default_names(w.len()), w).unwrap()
}

fn var_row<K: Field>(w: &Weights) -> GradedMatrix<K> {
    let entries = vec![(0..w.len()).map(|i| Poly::var(w, i)).collect()];
    let twists = w.as_slice().iter().map(|&x| x as i64).collect();
    GradedMatrix::new(w.clone(), GradedFree::new(twists), GradedFree::new(vec![0]), entries).unwrap()
}

/// Koszul boundary `K_k → K_{k−1}` on subsets ordered by bitmask.
fn koszul_map<K: Field>(w: &Weights, k: usize) -> GradedMatrix<K> {
    let n = w.len();
    let subsets = |s: usize| (0u64..1 << n).filter(move |m| m.count_ones() as usize == s).collect::<Vec<_>>();
    let src = subsets(k);
    let tgt = subsets(k - 1);
    let mut entries = vec![vec![Poly::zero(n); src.len()]; tgt.len()];
    for (j, &s) in src.iter().enumerate() {
        let mut pos = 0;
        for i in 0..n {
            if s >> i & 1 == 1 {
                let t = s & !(1 << i);
                let r = tgt.iter().position(|&x| x == t).unwrap();
                let v: Poly<K> = Poly::var(w, i);
                entries[r][j] = if pos % 2 == 0 { v } else { v.neg_ref() };
                pos += 1;
            }
        }
    }
    GradedMatrix::new(
        w.clone(),
        GradedFree::new(src.iter().map(|&m| w.subset_weight(m)).collect()),
        GradedFree::new(tgt.iter().map(|&m| w.subset_weight(m)).collect()),
        entries,
    )
    .unwrap()
}

#[test]
fn row_of_variables_degree_two() {
    let w = Weights::of(&[1, 1, 1, 1]);
    let m = var_row::<Q>(&w);
    let piece = degree_piece(&m, 2);
    assert_eq!((piece.rows(), piece.cols()), (10, 16));
    let (rank, ker) = rank_and_kernel(&m, 2);
    assert_eq!(rank, 10);
    assert_eq!(ker.len(), 6);
    for k in &ker {
        assert!(m.apply(k)[0].is_zero());
    }
}

#[test]
fn syzygies_of_variable_row() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let m = var_row::<F>(&w);
    let res = syzygies_up_to(&m, 6);
    let mut t = res.generators.source.twists.clone();
    t.sort();
    assert_eq!(t, vec![2, 3, 3, 4, 4, 5]);
    assert!(res.stabilized);
    assert!(m.compose(&res.generators).unwrap().is_zero());
    // A larger bound adds nothing.
    let more = syzygies_up_to(&m, 10);
    assert_eq!(more.generators.cols(), 6);
}

#[test]
fn koszul_boundaries_compose_to_zero_and_resolve_the_residue_field() {
    for w in [vec![1, 1, 1, 1], vec![1, 1, 2, 3], vec![1, 2, 3], vec![1, 1, 2]] {
        let w = Weights::of(&w);
        let n = w.len();
        for k in 2..=n {
            let a: GradedMatrix<F> = koszul_map(&w, k - 1);
            let b = koszul_map(&w, k);
            assert!(a.compose(&b).unwrap().is_zero());
        }
        let pres = Presentation { generators: GradedFree::new(vec![0]), relations: var_row::<F>(&w) };
        for d in 0..=12 {
            assert_eq!(hilbert_of_coker(&pres, d), usize::from(d == 0), "w={w} d={d}");
        }
    }
}

/// Brute force: solve `Σ_k Σ_m c_{k,m} x^m f_k = g` in one degree by a
/// dense linear system over all coefficient monomials.
fn brute_member(g: &Poly<F>, gens: &[Poly<F>], w: &Weights) -> bool {
    let d = g.degree().unwrap();
    let basis = monomials_of_degree(w, d);
    let mut cols = Vec::new();
    for f in gens {
        for m in monomials_of_degree(w, d - f.degree().unwrap()) {
            let prod = f.mul_term(&m, &F::one(), m.degree(w));
            cols.push(basis.iter().map(|b| prod.coefficient(b)).collect::<Vec<_>>());
        }
    }
    let r0 = Mat::from_cols(basis.len(), &cols).rank();
    cols.push(basis.iter().map(|b| g.coefficient(b)).collect());
    r0 == Mat::from_cols(basis.len(), &cols).rank()
}

#[test]
fn membership_agrees_with_brute_force() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let gens = vec![p::<F>("x0*x1 - x2", &w), p("x1^3 + x0*x2 - 2*x3", &w)];
    let ideal = IdealGens::new(w.clone(), gens.clone()).unwrap();
    let candidates = [
        "x0^2*x1 - x0*x2",
        "x0*x1*x2 - x2^2 + x1^4 + x0*x1*x2 - 2*x1*x3",
        "x3",
        "x0^3*x1 - x0^2*x2 + x1^3*x0 + x0^2*x2 - 2*x0*x3",
        "x2^2",
    ];
    for s in candidates {
        let g = p::<F>(s, &w);
        assert_eq!(ideal_membership(&g, &ideal).unwrap(), brute_member(&g, &gens, &w), "{s}");
    }
    let mixed = Poly::from_terms(
        4,
        [(ring::Monomial(vec![1, 1, 0, 0]), F::one()), (ring::Monomial(vec![1, 0, 0, 0]), F::one())],
        None,
        &w,
    )
    .unwrap();
    assert!(ideal_membership(&mixed, &ideal).is_err());
}

#[test]
fn presentations_of_small_submodules() {
    let w = Weights::of(&[1, 1, 1]);
    let amb = PolyRingAmbient::new(&w);
    let one = amb.vector_of(&Poly::<F>::one(3), 0);
    let res = minimal_presentation(&[(0, one)], &amb, 6);
    assert_eq!(res.presentation.relations.cols(), 0);
    let x0 = amb.vector_of(&Poly::<F>::var(&w, 0), 1);
    let x1 = amb.vector_of(&Poly::<F>::var(&w, 1), 1);
    let res = minimal_presentation(&[(1, x0), (1, x1)], &amb, 6);
    assert_eq!(res.presentation.relations.source.twists, vec![2]);
    assert!(res.stabilized);
    // Hilbert function of (x0, x1) in P(1,1,1): dim P_d − 1.
    for (d, h) in res.hilbert {
        assert_eq!(h as i64, (d + 1) * (d + 2) / 2 - 1);
    }
}

#[test]
fn json_round_trip() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let m = syzygies_up_to(&var_row::<F>(&w), 6).generators;
    let back = GradedMatrix::<F>::from_json(&m.to_json()).unwrap();
    assert_eq!(back, m);
    let pres = Presentation { generators: GradedFree::new(vec![0]), relations: var_row::<F>(&w) };
    let back = Presentation::<F>::from_json(&pres.to_json()).unwrap();
    assert_eq!(back.relations, pres.relations);
    assert!(GradedMatrix::<Q>::from_json(&m.to_json()).is_err());
}

fn small_poly(w: &Weights, d: i64, coeffs: &[i64]) -> Poly<F> {
    let ms = monomials_of_degree(w, d);
    let terms = ms.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, F::from_i64(c)));
    Poly::from_terms(w.len(), terms.filter(|(_, c)| !c.is_zero()), Some(d), w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_piece_of_composition_is_product(c in prop::collection::vec(-3i64..4, 12)) {
        let w = Weights::of(&[1, 1, 2]);
        let a = GradedMatrix::new(
            w.clone(),
            GradedFree::new(vec![2, 3]),
            GradedFree::new(vec![0]),
            vec![vec![small_poly(&w, 2, &c), small_poly(&w, 3, &c[3..])]],
        ).unwrap();
        let b = GradedMatrix::new(
            w.clone(),
            GradedFree::new(vec![4]),
            GradedFree::new(vec![2, 3]),
            vec![vec![small_poly(&w, 2, &c[5..])], vec![small_poly(&w, 1, &c[9..])]],
        ).unwrap();
        let ab = a.compose(&b).unwrap();
        for d in 4..8 {
            prop_assert_eq!(degree_piece(&ab, d), degree_piece(&a, d).mul(&degree_piece(&b, d)));
        }
    }

    #[test]
    fn syzygies_are_kernel_elements(c in prop::collection::vec(-3i64..4, 8)) {
        let w = Weights::of(&[1, 1, 2]);
        let m = GradedMatrix::new(
            w.clone(),
            GradedFree::new(vec![1, 2, 2]),
            GradedFree::new(vec![0]),
            vec![vec![small_poly(&w, 1, &c), small_poly(&w, 2, &c[2..]), small_poly(&w, 2, &c[4..])]],
        ).unwrap();
        let s = syzygies_up_to(&m, 8);
        prop_assert!(m.compose(&s.generators).unwrap().is_zero());
        // Every kernel element up to the bound is a combination of generators.
        for d in 1..=8 {
            let (_, ker) = rank_and_kernel(&m, d);
            let span = gla::rank_and_kernel(&s.generators, d).0;
            prop_assert_eq!(span, ker.len());
        }
    }
}
