mod common;

use dppbk::cs::verify_prop1_probabilities;
use dppbk::exterior::orthonormality_defect;
use dppbk::pointset::subsets_of_size;
use dppbk::{compute_cs, cos_sin_products, reconstruct_bases, CsCase, Error, OrthonormalFrame, PointSet, VectorFamily};
use proptest::prelude::*;

/// `(frame, J)` with `1 ≤ |J| ≤ p`.
fn instance() -> impl Strategy<Value = (OrthonormalFrame, PointSet)> {
    (2usize..=8, any::<u64>(), any::<u64>()).prop_flat_map(|(n, seed, pick)| {
        (1..=n - 1).prop_flat_map(move |p| {
            (1..=p).prop_map(move |k| {
                let frame = common::random_frame(seed, n, p);
                let choices: Vec<PointSet> = subsets_of_size(n, k).collect();
                (frame, choices[(pick % choices.len() as u64) as usize])
            })
        })
    })
}

fn projector(f: &VectorFamily) -> Vec<Vec<f64>> {
    let n = f.dim();
    (0..n)
        .map(|i| (0..n).map(|j| f.members().iter().map(|v| v[i] * v[j]).sum()).collect())
        .collect()
}

#[test]
fn case_table() {
    let table = [
        ((1, 2, 5), CsCase::I),
        ((2, 3, 4), CsCase::II),
        ((1, 2, 3), CsCase::III),
        ((2, 2, 5), CsCase::IvI),
        ((2, 2, 3), CsCase::IvIi),
        ((2, 2, 4), CsCase::IvIii),
    ];
    for ((n, p, big_n), case) in table {
        assert_eq!(CsCase::classify(n, p, big_n).unwrap(), case, "{n} {p} {big_n}");
    }
    assert!(CsCase::classify(3, 2, 5).is_err());
}

#[test]
fn too_many_points_for_cs() {
    let f = common::random_frame(2, 5, 2);
    assert!(matches!(
        compute_cs(f.columns(), PointSet::from_indices([0, 1, 2])),
        Err(Error::TooManyPoints { .. })
    ));
}

#[test]
fn tilted_plane_angles() {
    let beta: f64 = 0.7;
    let e = VectorFamily::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, beta.cos(), beta.sin()]]).unwrap();
    let cs = compute_cs(&e, PointSet::from_indices([0, 1])).unwrap();
    assert_eq!(cs.case, CsCase::IvIi);
    assert_eq!(cs.angles[0], 0.0);
    assert!((cs.angles[1] - beta).abs() < 1e-12);
}

#[test]
fn coordinate_frame_has_zero_angles() {
    let f = OrthonormalFrame::coordinate(6, 3).unwrap();
    let cs = compute_cs(f.columns(), PointSet::from_indices([0, 2])).unwrap();
    assert_eq!(cs.case, CsCase::I);
    assert!(cs.angles.iter().all(|&a| a == 0.0));
    let (z, _) = reconstruct_bases(&cs).unwrap();
    let p = projector(&z);
    let q = projector(f.columns());
    for i in 0..6 {
        for j in 0..6 {
            assert!((p[i][j] - q[i][j]).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cosines_are_eigenvalue_roots((frame, j) in instance()) {
        // cos²θ are the eigenvalues of K_J = Z_J Z_Jᵗ
        let cs = compute_cs(frame.columns(), j).unwrap();
        let rows = common::frame_rows(&frame);
        let idx: Vec<usize> = j.iter().collect();
        let k = idx.len();
        for &c in &cs.cosines {
            let m: Vec<Vec<f64>> = (0..k)
                .map(|a| (0..k).map(|b| {
                    let g: f64 = rows[idx[a]].iter().zip(&rows[idx[b]]).map(|(x, y)| x * y).sum();
                    g - if a == b { c * c } else { 0.0 }
                }).collect())
                .collect();
            prop_assert!(common::det(&m).abs() < 1e-8, "char poly at {c}");
        }
    }

    #[test]
    fn structure_invariants((frame, j) in instance()) {
        let cs = compute_cs(frame.columns(), j).unwrap();
        let (n, p, big_n) = (j.len(), frame.rank(), frame.n_points());
        prop_assert_eq!(cs.case, CsCase::classify(n, p, big_n).unwrap());
        let (nv, nw, nwt) = cs.case.family_sizes(n, p, big_n);
        prop_assert_eq!((cs.v.len(), cs.w.len(), cs.w_tilde.len()), (nv, nw, nwt));
        prop_assert_eq!(cs.u.len(), n);
        prop_assert!(cs.angles.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(cs.angles.iter().all(|&a| (0.0..=std::f64::consts::FRAC_PI_2).contains(&a)));
        prop_assert!(cs.angles[..cs.forced_zero_angles()].iter().all(|&a| a == 0.0));
        prop_assert!(orthonormality_defect(&cs.u) < 1e-9);
        let rest = cs.v.concat(&cs.w).unwrap().concat(&cs.w_tilde).unwrap();
        prop_assert!(orthonormality_defect(&rest) < 1e-9);
    }

    #[test]
    fn reconstruction_spans_e_and_its_complement((frame, j) in instance()) {
        let cs = compute_cs(frame.columns(), j).unwrap();
        let (z, z_perp) = reconstruct_bases(&cs).unwrap();
        prop_assert_eq!(z.len(), frame.rank());
        prop_assert_eq!(z_perp.len(), frame.n_points() - frame.rank());
        let all = if z_perp.is_empty() { z.clone() } else { z.concat(&z_perp).unwrap() };
        prop_assert!(orthonormality_defect(&all) < 1e-9);
        let (pz, pe) = (projector(&z), projector(frame.columns()));
        for (a, b) in pz.iter().flatten().zip(pe.iter().flatten()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn products_are_probabilities((frame, j) in instance()) {
        let cs = compute_cs(frame.columns(), j).unwrap();
        let (cos2, sin2) = cos_sin_products(&cs);
        let law = common::brute_law(&frame);
        let inc = common::prob(&law, |s| s & j.bits() == j.bits());
        let exc = common::prob(&law, |s| s & j.bits() == 0);
        prop_assert!((cos2 - inc).abs() < 1e-9);
        prop_assert!((sin2 - exc).abs() < 1e-9);
        for r in verify_prop1_probabilities(&frame, j).unwrap() {
            prop_assert!(r.pass, "{}", r);
        }
    }
}
