use gla::{degree_piece, hilbert_of_coker, GradedFree, GradedMatrix, Mat};
use koszul::{
    build_subcomplex, check_exactness, dualize, koszul, self_duality_holds, subsets, syzygy_presentation, SubcomplexKind,
    SubcomplexSpec, TwistedComplex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ring::{Field, Fp, Weights, Q};

type F = Fp<65521>;

const WEIGHTS: [&[u32]; 4] = [&[1, 1, 1, 1], &[1, 1, 2, 3], &[1, 2, 3], &[2, 3, 5]];

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort();
    v
}

/// Subset sums by brute enumeration over all bitmasks.
fn subset_sums(w: &[u32], k: u32) -> Vec<i64> {
    sorted(
        (0u32..1 << w.len())
            .filter(|m| m.count_ones() == k)
            .map(|m| (0..w.len()).filter(|i| m >> i & 1 == 1).map(|i| w[i] as i64).sum())
            .collect(),
    )
}

#[test]
fn koszul_terms() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let k = koszul::<F>(&w);
    assert_eq!((k.lo, k.hi()), (-4, 0));
    for j in 0..=4 {
        assert_eq!(sorted(k.term(-(j as i64)).twists), subset_sums(&[1, 1, 2, 3], j));
    }
    assert_eq!(sorted(k.term(-2).twists), vec![2, 3, 3, 4, 4, 5]);
    assert_eq!(k.term(-4).twists, vec![7]);

    let one = koszul::<Q>(&Weights::of(&[1]));
    assert_eq!((one.lo, one.hi()), (-1, 0));
    assert_eq!(one.diff(-1).entries[0][0].render(&ring::default_names(1)), "1 * x0");
}

#[test]
fn subsets_are_lexicographic() {
    assert_eq!(subsets(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    assert_eq!(subsets(3, 0), vec![0]);
    assert_eq!(subsets(3, 3), vec![0b111]);
}

#[test]
fn koszul_exactness_up_to_degree_twelve() {
    for w in WEIGHTS {
        let w = Weights::of(w);
        let r = check_exactness(&koszul::<F>(&w), 0..=12);
        assert_eq!(r.homology.len(), 1, "w={w}: {:?}", r.homology);
        assert_eq!(r.dim(0, 0), 1);
    }
}

#[test]
fn zero_differentials_have_full_homology() {
    let w = Weights::of(&[1, 2]);
    let t0 = GradedFree::new(vec![0, 1]);
    let t1 = GradedFree::new(vec![1]);
    let c = TwistedComplex::<F>::new(w.clone(), 0, vec![t0.clone(), t1.clone()], vec![], vec![GradedMatrix::zero(w.clone(), t0.clone(), t1.clone())])
        .unwrap();
    let r = check_exactness(&c, 0..=6);
    for d in 0..=6 {
        assert_eq!(r.dim(0, d), t0.dim(&w, d));
        assert_eq!(r.dim(1, d), t1.dim(&w, d));
    }
}

#[test]
fn subcomplex_examples() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let m0 = build_subcomplex::<F>(&w, SubcomplexSpec::new(SubcomplexKind::M, 0)).unwrap();
    assert_eq!(m0.term_multisets(), vec![(0, vec![0])]);

    let n3 = build_subcomplex::<F>(&w, SubcomplexSpec::new(SubcomplexKind::N, -3)).unwrap();
    let terms = n3.term_multisets();
    assert_eq!(terms[terms.len() - 1], (0, vec![-3]));
    let twisted = |p: i64| -> Vec<i64> { n3.term(p).twists.iter().map(|t| t + 3).collect() };
    assert_eq!(sorted(twisted(-1)), vec![1, 1, 2, 3]);
    assert_eq!(sorted(twisted(-2)), vec![2, 3, 3, 4, 4]);
    assert_eq!(sorted(twisted(-3)), vec![4, 5]);
    assert_eq!(n3.term(-4).rank(), 0);

    let t = build_subcomplex::<F>(&w, SubcomplexSpec::new(SubcomplexKind::TrivialN, 2)).unwrap();
    assert_eq!(t.term_multisets(), vec![(-2, vec![2])]);

    for (kind, l) in [(SubcomplexKind::M, 1), (SubcomplexKind::M, -7), (SubcomplexKind::N, 0), (SubcomplexKind::N, -4), (SubcomplexKind::TrivialN, 4)] {
        assert!(build_subcomplex::<F>(&w, SubcomplexSpec::new(kind, l)).is_err(), "{kind:?} {l}");
    }
}

#[test]
fn subcomplex_and_quotient_split_the_koszul_terms() {
    for w in WEIGHTS {
        let w = Weights::of(w);
        for (sub, quo) in [(SubcomplexKind::M, SubcomplexKind::MPrime), (SubcomplexKind::N, SubcomplexKind::NPrime)] {
            let (a, b) = SubcomplexSpec::window(sub, &w);
            for l in a..=b {
                let m = build_subcomplex::<F>(&w, SubcomplexSpec::new(sub, l)).unwrap();
                let mq = build_subcomplex::<F>(&w, SubcomplexSpec::new(quo, l)).unwrap();
                let k = koszul::<F>(&w).twisted(-l);
                let rm = check_exactness(&m, -2..=14);
                let rq = check_exactness(&mq, -2..=14);
                let rk = check_exactness(&k, -2..=14);
                for d in -2..=14 {
                    let total = |c: &TwistedComplex<F>| -> usize { c.terms.iter().map(|t| t.dim(&w, d)).sum() };
                    assert_eq!(total(&m) + total(&mq), total(&k));
                    let chi = |r: &koszul::ExactnessReport| r.euler.iter().find(|e| e.0 == d).unwrap().1;
                    assert_eq!(chi(&rk), chi(&rm) - chi(&rq), "w={w} l={l} d={d}");
                }
            }
        }
    }
}

#[test]
fn self_duality_sign_iso() {
    for w in WEIGHTS {
        assert!(self_duality_holds::<F>(&Weights::of(w)));
    }
    let w = Weights::of(&[1, 1, 2, 3]);
    let k = koszul::<F>(&w);
    let back = dualize(&dualize(&k, 5), 5);
    assert_eq!(back.term_multisets(), k.term_multisets());
    assert_eq!(back.diffs, k.diffs);
}

#[test]
fn self_duality_degreewise_commutation() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let k = koszul::<F>(&w);
    let (l, f) = koszul::self_duality_iso::<F>(&w);
    for pos in k.lo..k.hi() {
        let i = (pos - k.lo) as usize;
        for d in 0..=10 {
            let lhs = degree_piece(&f[i + 1], d).mul(&degree_piece(&k.diff(pos), d));
            let rhs = degree_piece(&l.diff(pos), d).mul(&degree_piece(&f[i], d));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn dual_of_m_has_terms_of_shifted_quotient() {
    for w in WEIGHTS {
        let w = Weights::of(w);
        let n = w.n() as i64;
        for l in (1 - w.total())..=0 {
            let m = build_subcomplex::<F>(&w, SubcomplexSpec::new(SubcomplexKind::M, l)).unwrap();
            let q = build_subcomplex::<F>(&w, SubcomplexSpec::new(SubcomplexKind::MPrime, 1 - w.total() - l)).unwrap();
            assert_eq!(dualize(&m, 0).term_multisets(), q.twisted(1).shifted(-n).term_multisets(), "w={w} l={l}");
        }
    }
}

#[test]
fn syzygy_modules() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let (p, emb) = syzygy_presentation::<F>(&w, 1).unwrap();
    assert_eq!(sorted(p.generators.twists.clone()), vec![2, 3, 3, 4, 4, 5]);
    assert_eq!(sorted(p.relations.source.twists.clone()), vec![4, 5, 6, 6]);
    assert_eq!(emb.target.rank(), 4);
    let (top, _) = syzygy_presentation::<F>(&w, 3).unwrap();
    assert_eq!(top.generators.twists, vec![7]);
    assert_eq!(top.relations.cols(), 0);
    assert!(syzygy_presentation::<F>(&w, 4).is_err());
    let (p0, _) = syzygy_presentation::<F>(&w, 0).unwrap();
    assert_eq!(p0.generators.twists, vec![0]);
}

#[test]
fn syzygy_dimensions_two_routes() {
    for w in WEIGHTS {
        let w = Weights::of(w);
        let k = koszul::<F>(&w);
        for j in 1..=w.n() {
            let (p, _) = syzygy_presentation::<F>(&w, j).unwrap();
            for d in -1..=12 {
                let via_pres = hilbert_of_coker(&p, d);
                let m = degree_piece(&k.diff(-(j as i64)), d);
                let via_kernel = m.cols() - m.rank();
                assert_eq!(via_pres, via_kernel, "w={w} j={j} d={d}");
            }
        }
    }
}

#[test]
fn syzygy_embedding_has_generic_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for w in WEIGHTS {
        let w = Weights::of(w);
        let n = w.n();
        for j in 1..=n {
            let (_, emb) = syzygy_presentation::<F>(&w, j).unwrap();
            let pt: Vec<F> = (0..w.len()).map(|_| F::from_i64(rng.gen_range(1..60000))).collect();
            let rows: Vec<Vec<F>> = emb.entries.iter().map(|r| r.iter().map(|e| e.eval(&pt)).collect()).collect();
            let binom = (0..j).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
            assert_eq!(Mat::from_rows(rows).rank(), binom, "w={w} j={j}");
        }
    }
}
