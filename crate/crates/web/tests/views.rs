use dppbk_web::{cs_angles, marginals, sampler};

#[test]
fn marginals_sum_to_rank_and_covariances_are_negative() {
    let v = marginals(7, 3, 42).unwrap();
    assert!((v.inclusion.iter().sum::<f64>() - 3.0).abs() < 1e-12);
    for i in 0..7 {
        assert!((v.kernel[i][i] - v.inclusion[i]).abs() < 1e-12);
        for j in 0..7 {
            // P(i,j) - P(i)P(j) = -K_ij²
            assert!((v.covariance[i][j] + if i == j { 0.0 } else { v.kernel[i][j].powi(2) }).abs() < 1e-12);
        }
    }
}

#[test]
fn angles_view_matches_probabilities() {
    let v = cs_angles(6, 3, 5, "1, 4").unwrap();
    assert_eq!(v.case, "I");
    assert_eq!(v.angles_deg.len(), 2);
    assert!(v.angles_deg.iter().all(|a| (0.0..=90.0).contains(a)));
    assert!((v.cos2_product - v.inclusion).abs() < 1e-9);
    assert!((v.sin2_product - v.exclusion).abs() < 1e-9);
    assert_eq!(v.family_sizes, [2, 2, 1, 1]);
}

#[test]
fn sampler_view_is_close_to_the_law() {
    let v = sampler(5, 2, 1, 50_000).unwrap();
    assert_eq!(v.outcomes.len(), 10);
    assert!((v.outcomes.iter().map(|o| o.empirical).sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(v.total_variation < 0.02, "{}", v.total_variation);
    let again = sampler(5, 2, 1, 50_000).unwrap();
    assert_eq!(v.total_variation, again.total_variation);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(marginals(11, 2, 0).is_err());
    assert!(marginals(4, 4, 0).is_err());
    assert!(cs_angles(5, 2, 0, "1,2,3").is_err());
    assert!(cs_angles(5, 2, 0, "x").is_err());
    assert!(cs_angles(5, 2, 0, "6").is_err());
    assert!(sampler(5, 2, 0, 0).is_err());
}
