mod common;

use dppbk::exterior::{leave_one_out_wedges, orthonormalize, orthonormality_defect, wedge_inner, wedge_norm_sq};
use dppbk::{Error, VectorFamily};
use proptest::prelude::*;

fn family(rows: &[Vec<f64>]) -> VectorFamily {
    VectorFamily::from_rows(rows.to_vec()).unwrap()
}

/// `k` vectors in `R^dim` with `1 ≤ k ≤ dim ≤ 6`.
fn rows() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=6)
        .prop_flat_map(|dim| (Just(dim), 1..=dim))
        .prop_flat_map(|(dim, k)| prop::collection::vec(prop::collection::vec(-2.0f64..2.0, dim), k))
}

fn row_pairs() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    (1usize..=5)
        .prop_flat_map(|dim| (Just(dim), 1..=dim))
        .prop_flat_map(|(dim, k)| {
            let fam = || prop::collection::vec(prop::collection::vec(-2.0f64..2.0, dim), k);
            (fam(), fam())
        })
}

#[test]
fn examples_from_coordinates() {
    let e = family(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
    assert_eq!(wedge_norm_sq(&e).unwrap(), 1.0);
    let d = family(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
    assert_eq!(wedge_norm_sq(&d).unwrap(), 0.0);
    let r = family(&[vec![3.0, 0.0], vec![1.0, 2.0]]);
    assert!((wedge_norm_sq(&r).unwrap() - 36.0).abs() < 1e-12);
}

#[test]
fn empty_and_mismatched_families_are_errors() {
    let a = family(&[vec![1.0, 0.0]]);
    let b = family(&[vec![1.0, 0.0, 0.0]]);
    assert!(matches!(wedge_inner(&a, &b), Err(Error::DimensionMismatch(_))));
    assert!(wedge_norm_sq(&VectorFamily::empty(3)).is_err());
}

#[test]
fn orthonormalize_rejects_dependent_input() {
    let d = family(&[vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0]]);
    assert!(matches!(orthonormalize(&d), Err(Error::RankDeficient { .. })));
}

#[test]
fn leave_one_out_coordinates_are_unsigned_minors() {
    let v = vec![vec![1.0, 2.0, 0.0], vec![0.0, 1.0, 3.0], vec![4.0, 0.0, 1.0]];
    let tilde = leave_one_out_wedges(&family(&v)).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let m: Vec<Vec<f64>> = v
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            assert!((tilde.get(i)[j] - common::det(&m)).abs() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn norm_matches_plucker_expansion(r in rows()) {
        let got = wedge_norm_sq(&family(&r)).unwrap();
        let want = common::plucker_norm_sq(&r);
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{got} vs {want}");
    }

    #[test]
    fn inner_product_matches_cauchy_binet((a, b) in row_pairs()) {
        let got = wedge_inner(&family(&a), &family(&b)).unwrap();
        let want = common::plucker_inner(&a, &b);
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0));
    }

    #[test]
    fn inner_product_is_symmetric((a, b) in row_pairs()) {
        let (fa, fb) = (family(&a), family(&b));
        let ab = wedge_inner(&fa, &fb).unwrap();
        let ba = wedge_inner(&fb, &fa).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-10 * ab.abs().max(1.0));
    }

    #[test]
    fn swapping_two_members_flips_the_sign((a, b) in row_pairs()) {
        prop_assume!(a.len() >= 2);
        let mut swapped = a.clone();
        swapped.swap(0, 1);
        let before = wedge_inner(&family(&a), &family(&b)).unwrap();
        let after = wedge_inner(&family(&swapped), &family(&b)).unwrap();
        prop_assert!((before + after).abs() <= 1e-9 * before.abs().max(1.0));
    }

    #[test]
    fn repeated_member_gives_zero(r in rows()) {
        prop_assume!(r.len() >= 2);
        let mut rep = r.clone();
        rep[1] = rep[0].clone();
        let scale: f64 = rep.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>()).product();
        prop_assert!(wedge_norm_sq(&family(&rep)).unwrap().abs() <= 1e-10 * scale.max(1.0));
    }

    #[test]
    fn hadamard_bound(r in rows()) {
        let w = wedge_norm_sq(&family(&r)).unwrap();
        let diag: f64 = r.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>()).product();
        prop_assert!(w >= 0.0);
        prop_assert!(w <= diag * (1.0 + 1e-10) + 1e-12);
    }

    #[test]
    fn orthonormalized_family_has_unit_wedge(r in rows()) {
        let f = family(&r);
        prop_assume!(wedge_norm_sq(&f).unwrap() > 1e-6);
        let q = orthonormalize(&f).unwrap();
        prop_assert!(orthonormality_defect(&q) < 1e-12);
        prop_assert!((wedge_norm_sq(&q).unwrap() - 1.0).abs() < 1e-12);
    }
}
