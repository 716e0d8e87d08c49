use std::collections::BTreeMap;

use beilinson::*;
use cohom::{chi_line, chi_omega, h_omega, CohomologyTable, Provenance};
use proptest::prelude::*;
use ring::{hilbert_p, Weights, F65521};

fn w(v: &[u32]) -> Weights {
    Weights::of(v)
}

fn line_table(wt: &Weights, d: i64) -> CohomologyTable {
    let s = wt.total();
    CohomologyTable::line_bundle::<F65521>(wt, d, -s..=s).unwrap()
}

fn twists_at(r: &ResolutionTerms, wt: &Weights, pos: i64) -> Vec<i64> {
    r.normalized(wt).at(pos).line_twists()
}

fn chi_of(r: &ResolutionTerms, wt: &Weights, t: i64) -> i64 {
    let mut total = 0;
    for (pos, b) in &r.positions {
        let mut v = 0;
        for (k, m) in b.multiset() {
            v += m as i64
                * match k {
                    SheafKind::LineBundle { l } => chi_line(wt, l + t),
                    SheafKind::OmegaTwist { j, t: s } => chi_omega(wt, j, s + t),
                };
        }
        total += if pos.rem_euclid(2) == 0 { v } else { -v };
    }
    total
}

#[test]
fn x_terms_of_o1_are_the_shifted_koszul_truncation() {
    let wt = w(&[1, 1, 2, 3]);
    let x = x_terms(&wt, &line_table(&wt, 1)).unwrap();
    assert_eq!(twists_at(&x, &wt, 0), vec![0, 0, -1, -2]);
    assert_eq!(twists_at(&x, &wt, -1), vec![-1, -2, -2, -3, -3, -4]);
    assert_eq!(twists_at(&x, &wt, -2), vec![-3, -4, -5, -5]);
    assert_eq!(twists_at(&x, &wt, -3), vec![-6]);
    assert_eq!(x.positions.len(), 4);
}

#[test]
fn x_terms_inside_the_window_are_the_sheaf_itself() {
    let wt = w(&[1, 1, 2, 3]);
    for d in [0, -1, -4] {
        let x = x_terms(&wt, &line_table(&wt, d)).unwrap();
        assert_eq!(x.positions.len(), 1, "d = {d}");
        assert_eq!(x.at(0).multiset(), vec![(SheafKind::line(d), 1)]);
    }
    let y = y_terms(&wt, &line_table(&wt, 0)).unwrap().normalized(&wt);
    assert_eq!(y.positions.len(), 1);
    assert_eq!(y.at(0).multiset(), vec![(SheafKind::line(0), 1)]);
}

#[test]
fn y_terms_of_o2() {
    let wt = w(&[1, 1, 2, 3]);
    let y = y_terms(&wt, &line_table(&wt, 2)).unwrap().normalized(&wt);
    let lines = y.report_lines();
    assert_eq!(lines, vec!["Y^-2 = Omega^2(2)^1", "Y^-1 = Omega^1(1)^2 + O(-3)^1", "Y^0 = O(0)^4 + O(-1)^1"]);
    assert_eq!(z_coeffs(&wt, -1).unwrap(), (0, 1));
    assert_eq!(z_coeffs(&wt, -3).unwrap(), (1, 0));
    assert_eq!(z_coeffs(&wt, -2).unwrap(), (0, 0));
    assert!(z_coeffs(&w(&[1, 1, 1, 1]), -1).is_err());
}

/// Expected resolution of `O(2)` from pair and single counts of the weights.
fn o2_expected(wt: &Weights) -> ResolutionTerms {
    let ws = wt.as_slice();
    let (n, s) = (wt.n() as i64, wt.total());
    let mut r = ResolutionTerms::new("Y");
    r.add(-2, SheafKind::omega(2, 2), 1, None);
    r.add(-1, SheafKind::omega(1, 1), hilbert_p(wt, 1), None);
    r.add(0, SheafKind::omega(0, 0), hilbert_p(wt, 2), None);
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
    r.normalized(wt)
}

#[test]
fn y_terms_of_o2_match_the_pair_counts() {
    for v in [&[1, 1, 2, 3][..], &[1, 1, 1, 1], &[1, 2, 3], &[1, 2, 2, 3], &[1, 1, 2, 2, 3]] {
        let wt = w(v);
        let y = y_terms(&wt, &line_table(&wt, 2)).unwrap().normalized(&wt);
        assert_eq!(y.multisets(), o2_expected(&wt).multisets(), "w = {v:?}");
    }
}

#[test]
fn resolutions_have_the_euler_characteristic_of_the_sheaf() {
    let wt = w(&[1, 1, 2, 3]);
    for d in -3..=3 {
        let t = line_table(&wt, d);
        let x = x_terms(&wt, &t).unwrap();
        for shift in -8..=8 {
            assert_eq!(chi_of(&x, &wt, shift), chi_line(&wt, d + shift), "X, d = {d}, t = {shift}");
        }
        let y = y_terms(&wt, &t).unwrap();
        for shift in -8..=8 {
            assert_eq!(chi_of(&y, &wt, shift), chi_line(&wt, d + shift), "Y, d = {d}, t = {shift}");
        }
    }
}

#[test]
fn trivial_n_block_appears_once() {
    let wt = w(&[1, 1, 2, 3]);
    for m in 0..=3i64 {
        let y = y_terms(&wt, &line_table(&wt, m)).unwrap();
        let mut seen = Vec::new();
        for (pos, b) in &y.positions {
            for (k, mult) in b.multiset() {
                if let SheafKind::OmegaTwist { j, .. } = k {
                    if j as i64 == m {
                        seen.push((*pos, k, mult));
                    }
                }
            }
        }
        assert_eq!(seen, vec![(-m, SheafKind::omega(m as usize, m), 1)]);
    }
}

#[test]
fn orthogonality_relations() {
    let wt = w(&[1, 1, 2, 3]);
    for l in -6..=0 {
        for j in -6..=0 {
            assert_eq!(orthogonality_check::<F65521>(&wt, OrthoKind::M, l, j).unwrap(), i64::from(j == l), "M {l} {j}");
        }
    }
    for l in -3..=3 {
        for j in -3..=3 {
            assert_eq!(orthogonality_check::<F65521>(&wt, OrthoKind::N, l, j).unwrap(), i64::from(j == l), "N {l} {j}");
        }
    }
    assert!(orthogonality_check::<F65521>(&wt, OrthoKind::M, -7, 0).is_err());
}

#[test]
fn weight_reduction_drops_ones() {
    assert_eq!(weight_reduction(&w(&[1, 1, 2, 3])), vec![2, 3]);
    assert!(weight_reduction(&w(&[1, 1, 1, 1])).is_empty());
    assert_eq!(weight_reduction(&w(&[2, 2, 3])), vec![2, 2, 3]);
}

#[test]
fn n_coefficients_of_o2_survive_weight_reduction() {
    for v in [&[1, 1, 2, 3][..], &[1, 2, 2, 3], &[1, 2, 3, 5]] {
        let full = w(v);
        let red = Weights::of(&weight_reduction(&full));
        let (a, b) = (line_table(&full, 2), line_table(&red, 2));
        for j in full.n() as i64 - full.total() + 1..0 {
            for i in -3..=3 {
                assert_eq!(a.hn(i, j).unwrap_or(0), b.hn(i, j).unwrap_or(0), "w = {v:?}, i = {i}, j = {j}");
            }
        }
    }
}

fn ch4() -> (Weights, InvariantData, BTreeMap<i64, u64>) {
    let y = BTreeMap::from([(-1, 4), (-2, 0), (-3, 0)]);
    (w(&[1, 1, 2, 3]), InvariantData::new(2, 2, 4, 1).unwrap(), y)
}

#[test]
fn invariants_are_validated() {
    assert!(InvariantData::new(2, 2, 4, 2).is_err());
    let inv = InvariantData::new(2, 2, 4, 1).unwrap();
    assert_eq!(inv.h_power(0, 2), 5);
    assert_eq!(inv.h_power(0, 3), 13);
    assert_eq!(inv.h_power(2, 0), 2);
    assert_eq!(inv.h_power(1, 1), 2);
    for m in -5..=5 {
        let chi = inv.h_power(0, m) as i64 - inv.h_power(1, m) as i64 + inv.h_power(2, m) as i64;
        assert_eq!(chi, inv.chi_power(m), "m = {m}");
    }
}

#[test]
fn surface_resolution_has_the_displayed_shape() {
    let (wt, inv, y) = ch4();
    let t = surface_table(&wt, &inv, -7..=7, Some((&y, Provenance::UserSupplied))).unwrap();
    let res = y_terms(&wt, &t).unwrap();
    let s = wt.total();
    let mut expected = ResolutionTerms::new("Y");
    expected.add(-2, SheafKind::omega(2, 2), 1, None);
    expected.add(-1, SheafKind::omega(3, 3), (inv.chi + inv.k2) as u64, None);
    expected.add(-1, SheafKind::omega(2, 2), inv.q as u64, None);
    expected.add(-1, SheafKind::omega(1, 1), inv.p_g as u64, None);
    expected.add(0, SheafKind::omega(0, 0), (inv.chi + inv.k2) as u64, None);
    expected.add(0, SheafKind::omega(1, 1), inv.q as u64, None);
    expected.add(0, SheafKind::omega(2, 2), inv.p_g as u64, None);
    expected.add(1, SheafKind::omega(1, 1), 1, None);
    for j in 4 - s..0 {
        expected.add(-1, SheafKind::line(j), y[&(3 - s - j)], None);
        expected.add(0, SheafKind::line(j), y[&j], None);
    }
    assert_eq!(res.multisets(), expected.multisets());
    // Self-duality up to the shift.
    let dual = res.dual(&wt, 3 - s).shifted(1);
    assert_eq!(dual.normalized(&wt).multisets(), res.normalized(&wt).multisets());
    let prov: Vec<_> = res.at(0).to_terms().into_iter().filter(|t| matches!(t.sheaf, SheafKind::LineBundle { .. })).collect();
    assert!(prov.iter().all(|t| t.provenance.contains(&Provenance::UserSupplied)));
}

#[test]
fn coefficient_bookkeeping() {
    let (wt, inv, y) = ch4();
    let k0 = BTreeMap::from([(-1, 0), (-2, 0), (-3, 0)]);
    let c = fres_coefficients(&wt, &y, &k0).unwrap();
    assert_eq!(c.c, BTreeMap::from([(-1, 2), (-2, 0), (-3, 0)]));
    assert!(c.is_determined());
    let k1 = BTreeMap::from([(-1, 1), (-2, 0), (-3, 0)]);
    let c1 = fres_coefficients(&wt, &y, &k1).unwrap();
    assert_eq!((c1.c(-1), c1.c(-3)), (3, 1));

    assert_eq!(coeff_difference(&wt, &inv, -1).unwrap(), 2);
    assert_eq!(coeff_difference(&wt, &inv, -3).unwrap(), -2);
    assert_eq!(coeff_difference(&wt, &inv, -2).unwrap(), 0);
    assert!(coeff_difference(&wt, &inv, 0).is_err());
    for cv in [&c, &c1] {
        for j in -3..0 {
            assert_eq!(cv.c(j) as i64 - cv.c(-4 - j) as i64, coeff_difference(&wt, &inv, j).unwrap());
        }
    }
}

#[test]
fn correction_case_is_reported() {
    // |w| = 2·4 − 1 with j = 2 − 4.
    let wt = w(&[1, 1, 1, 4]);
    let win: Vec<i64> = (4 - wt.total()..0).collect();
    assert_eq!(win, vec![-3, -2, -1]);
    let y: BTreeMap<i64, u64> = win.iter().map(|&j| (j, 3)).collect();
    let k: BTreeMap<i64, u64> = win.iter().map(|&j| (j, u64::from(j == -2))).collect();
    let c = fres_coefficients(&wt, &y, &k).unwrap();
    assert!(!c.is_determined());
    let u = c.undecided[0];
    assert_eq!((u.j, u.weight_index), (-2, 3));
    assert_eq!(u.value_if_composite_nonzero + 1, u.value_if_composite_zero);
}

#[test]
fn bundle_e() {
    let (wt, inv, _) = ch4();
    let c = CoeffVector::from_c(BTreeMap::from([(-1, 2), (-2, 0), (-3, 0)]));
    let e = E_of_phi(&wt, &inv, &c).unwrap();
    assert_eq!(
        e.multiset(),
        vec![(SheafKind::omega(1, -1), 2), (SheafKind::line(-2), 1), (SheafKind::line(-3), 2)]
    );
    assert_eq!(e.to_string(), "Omega^1(-1)^2 + O(-2)^1 + O(-3)^2");
    assert_eq!(e.rank(&wt), 9);
    let mut g = e.clone();
    g.add(SheafKind::line(0), 1, None);
    // det of (O ⊕ E)^∨(−1−|w|) → O ⊕ E.
    assert_eq!(2 * g.c1(&wt) + g.rank(&wt) as i64 * (1 + wt.total()), 24);

    let w1 = w(&[1, 1, 1, 1]);
    let inv1 = InvariantData::new(4, 0, 7, 5).unwrap();
    let e1 = E_of_phi(&w1, &inv1, &CoeffVector::default()).unwrap();
    assert_eq!(e1.multiset(), vec![(SheafKind::line(-2), 2)]);
    let bad = InvariantData::new(4, 0, 0, 5).unwrap();
    assert!(E_of_phi(&w1, &bad, &CoeffVector::default()).is_err());
    // W^0(−2) minus the O summand is E.
    let w0 = w0_terms(&wt, &inv, &c).unwrap();
    assert_eq!(w0.rank(&wt), e.rank(&wt) + 1);
}

#[test]
fn splitting_type() {
    let wt = w(&[1, 1, 2, 3]);
    let split = |twists: &[i64]| -> BTreeMap<i64, u64> {
        (-6..=8).map(|l| (l, twists.iter().map(|a| hilbert_p(&wt, a + l)).sum())).collect()
    };
    assert_eq!(infer_split_type(&split(&[2, -1]), &wt).unwrap(), vec![2, -1]);
    assert_eq!(infer_split_type(&split(&[0]), &wt).unwrap(), vec![0]);
    assert_eq!(infer_split_type(&split(&[1, 1, -3]), &wt).unwrap(), vec![1, 1, -3]);
    let syz: BTreeMap<i64, u64> = (-6..=8).map(|l| (l, h_omega(&wt, 0, 1, l + 2).unwrap())).collect();
    assert!(matches!(infer_split_type(&syz, &wt), Err(BeilinsonError::NotSplit { .. })));
}

#[test]
fn terms_round_trip_through_json() {
    let wt = w(&[1, 1, 2, 3]);
    let y = y_terms(&wt, &line_table(&wt, 2)).unwrap();
    let back = ResolutionTerms::from_json(&y.to_json()).unwrap();
    assert_eq!(back, y);
}

fn kind() -> impl Strategy<Value = SheafKind> {
    prop_oneof![(-20i64..20).prop_map(SheafKind::line), (0usize..=3, -20i64..20).prop_map(|(j, t)| SheafKind::omega(j, t))]
}

proptest! {
    #[test]
    fn dual_is_an_involution(k in kind(), s in -10i64..10) {
        let wt = w(&[1, 1, 2, 3]);
        prop_assert_eq!(k.dual(&wt, s).dual(&wt, s), k);
        prop_assert_eq!(k.normalized(&wt).normalized(&wt), k.normalized(&wt));
        prop_assert_eq!(k.dual(&wt, s).normalized(&wt), k.normalized(&wt).dual(&wt, s).normalized(&wt));
        prop_assert_eq!(k.dual(&wt, s).rank(&wt), k.rank(&wt));
        prop_assert_eq!(k.dual(&wt, s).c1(&wt), k.rank(&wt) as i64 * s - k.c1(&wt));
    }
}
