use num_bigint::BigInt;
use proptest::prelude::*;
use ring::{
    dehomogenize, hilbert_p, monomials_of_degree, poly_arith, rehomogenize, Field, Fp, Monomial, Poly, PolyOp,
    Weights, Q,
};

type F = Fp<65521>;

/// Truncated product of the geometric series 1/(1-t^{w_i}), multiplied out
/// factor by factor as explicit power series.
fn series_oracle(w: &[u32], max: usize) -> Vec<u64> {
    let mut acc = vec![0u64; max + 1];
    acc[0] = 1;
    for &wi in w {
        let geo: Vec<u64> = (0..=max).map(|k| u64::from(k % wi as usize == 0)).collect();
        let mut next = vec![0u64; max + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, g) in geo.iter().enumerate().take(max + 1 - i) {
                next[i + j] += a * g;
            }
        }
        acc = next;
    }
    acc
}

#[test]
fn hilbert_matches_generating_series() {
    for w in [vec![1, 1, 1, 1], vec![1, 1, 2, 3], vec![1, 2, 3], vec![2, 3, 5], vec![1, 1, 2, 2, 3, 3, 3, 3, 3, 4, 4]] {
        let ws = Weights::of(&w);
        let oracle = series_oracle(&w, 40);
        for m in 0..=40 {
            assert_eq!(hilbert_p(&ws, m as i64), oracle[m], "w={w:?} m={m}");
        }
    }
}

#[test]
fn signed_subset_sum_is_delta() {
    for w in [vec![1, 1, 1, 1], vec![1, 1, 2, 3], vec![1, 2, 3], vec![2, 3, 5]] {
        let ws = Weights::of(&w);
        for l in -30i64..=30 {
            let mut s = 0i64;
            for mask in 0u64..(1 << w.len()) {
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                s += sign * hilbert_p(&ws, l - ws.subset_weight(mask)) as i64;
            }
            assert_eq!(s, i64::from(l == 0), "w={w:?} l={l}");
        }
    }
}

fn weights() -> impl Strategy<Value = Weights> {
    prop::collection::vec(1u32..4, 2..5).prop_map(|mut v| {
        v[0] = 1;
        Weights::of(&v)
    })
}

fn homogeneous_q(w: Weights, d: i64) -> impl Strategy<Value = Poly<Q>> {
    let mons = monomials_of_degree(&w, d);
    let n = mons.len();
    prop::collection::vec((-20i64..20, 1i64..6), n).prop_map(move |cs| {
        let terms = mons
            .iter()
            .cloned()
            .zip(cs)
            .map(|(m, (a, b))| (m, Q::new(BigInt::from(a), BigInt::from(b))));
        Poly::from_terms(w.len(), terms, Some(d), &w).unwrap()
    })
}

fn reduce(p: &Poly<Q>) -> Poly<F> {
    p.map_coeffs(|c| F::from_q(c).unwrap())
}

proptest! {
    #[test]
    fn dehomogenize_then_rehomogenize(
        (w, p) in weights().prop_flat_map(|w| (Just(w.clone()), 0i64..7))
            .prop_flat_map(|(w, d)| (Just(w.clone()), homogeneous_q(w, d)))
    ) {
        let d = p.degree().unwrap();
        let c = dehomogenize(&p, 0, &w).unwrap();
        prop_assert_eq!(rehomogenize(&c, d, &w).unwrap(), p);
    }

    #[test]
    fn prime_and_rational_backends_agree(
        (a, b, c) in Just(Weights::of(&[1, 1, 2, 3])).prop_flat_map(|w| (
            homogeneous_q(w.clone(), 3), homogeneous_q(w.clone(), 3), homogeneous_q(w, 2)))
    ) {
        let sum = poly_arith(&a, &b, PolyOp::Add).unwrap();
        let prod = poly_arith(&sum, &c, PolyOp::Mul).unwrap();
        let sum_p = poly_arith(&reduce(&a), &reduce(&b), PolyOp::Add).unwrap();
        let prod_p = poly_arith(&sum_p, &reduce(&c), PolyOp::Mul).unwrap();
        prop_assert_eq!(reduce(&prod), prod_p);
        prop_assert_eq!(prod.degree(), Some(5));
    }
}

#[test]
fn arithmetic_examples() {
    let w = Weights::of(&[1, 1, 2, 3]);
    let x = |i| Poly::<Q>::var(&w, i);
    let xy = poly_arith(&x(0), &x(1), PolyOp::Mul).unwrap();
    assert_eq!(xy.degree(), Some(2));
    assert!(poly_arith(&x(2), &x(2).neg_ref(), PolyOp::Add).unwrap().is_zero());
    let s = poly_arith(&x(1).pow(2), &x(2), PolyOp::Add).unwrap();
    assert_eq!(s.degree(), Some(2));
    assert!(s.is_homogeneous(&w));
    assert!(poly_arith(&x(1), &x(2), PolyOp::Add).is_err());
    let three = Poly::constant(4, Q::from_i64(3));
    let scaled = poly_arith(&x(3), &three, PolyOp::Scale).unwrap();
    assert_eq!(scaled.coefficient(&Monomial::var(4, 3)), Q::from_i64(3));
}
