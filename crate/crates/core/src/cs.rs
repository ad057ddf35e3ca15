//! CS decomposition of a subspace `E ⊂ R^N` against a coordinate subspace
//! `R^N_J`.
//!
//! With the coordinates permuted so that `J` comes first, the decomposition
//! exposes Jordan angles `0 ≤ θ_1 ≤ … ≤ θ_n ≤ π/2` and orthonormal families
//! `u` (in `R^n`) and `V`, `W`, `W̃` (in `R^{N-n}`) such that
//!
//! ```text
//! z^i     = (u^i cos θ_i,  V^i sin θ_i)     mixed directions of E
//! z^i     = (0,            W^i)             directions of E orthogonal to R_J
//! z^{p+i} = (u^i sin θ_i, -V^i cos θ_i)     mixed directions of E^⊥
//! z^{p+n+i} = (0,          W̃^i)            directions of E^⊥ orthogonal to R_J
//! ```
//!
//! When `n + p > N` the first `n + p - N` angles vanish identically and the
//! corresponding `z^i = (u^i, 0)` lie in `E ∩ R_J`; they have no `V` partner.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dpp::{complement_frame, OrthonormalFrame, ProjectionDpp};
use crate::error::{Error, Result};
use crate::exterior::{orthonormalize, Vector, VectorFamily};
use crate::linalg::{dot, jacobi_svd, norm, Matrix};
use crate::pointset::PointSet;
use crate::report::CheckReport;

/// Which of the block layouts applies, as a function of `(n, p, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CsCase {
    /// `n < p`, `p + n < N`
    I,
    /// `n < p`, `p + n > N`
    II,
    /// `n < p`, `p + n = N`
    III,
    /// `n = p`, `2p < N`
    #[serde(rename = "IV_i")]
    IvI,
    /// `n = p`, `2p > N`
    #[serde(rename = "IV_ii")]
    IvIi,
    /// `n = p`, `2p = N`
    #[serde(rename = "IV_iii")]
    IvIii,
}

impl CsCase {
    pub fn classify(n: usize, p: usize, n_points: usize) -> Result<CsCase> {
        use std::cmp::Ordering::*;
        if n == 0 || n > p || p > n_points {
            return Err(Error::TooManyPoints { n, limit: p });
        }
        Ok(if n < p {
            match (p + n).cmp(&n_points) {
                Less => CsCase::I,
                Greater => CsCase::II,
                Equal => CsCase::III,
            }
        } else {
            match (2 * p).cmp(&n_points) {
                Less => CsCase::IvI,
                Greater => CsCase::IvIi,
                Equal => CsCase::IvIii,
            }
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            CsCase::I => "I",
            CsCase::II => "II",
            CsCase::III => "III",
            CsCase::IvI => "IV_i",
            CsCase::IvIi => "IV_ii",
            CsCase::IvIii => "IV_iii",
        }
    }

    /// Expected `(|V|, |W|, |W̃|)` for the given dimensions.
    pub fn family_sizes(self, n: usize, p: usize, n_points: usize) -> (usize, usize, usize) {
        match self {
            CsCase::I => (n, p - n, n_points - p - n),
            CsCase::II => (n_points - p, p - n, 0),
            CsCase::III => (n, p - n, 0),
            CsCase::IvI => (p, 0, n_points - 2 * p),
            CsCase::IvIi => (n_points - p, 0, 0),
            CsCase::IvIii => (p, 0, 0),
        }
    }
}

impl fmt::Display for CsCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct CsDecomposition {
    pub case: CsCase,
    /// Ascending Jordan angles in radians, one per point of `J`.
    pub angles: Vec<f64>,
    /// `cos θ_i`, computed from the `J`-row block.
    pub cosines: Vec<f64>,
    /// `sin θ_i`, computed from the complementary row block.
    pub sines: Vec<f64>,
    pub u: VectorFamily,
    pub v: VectorFamily,
    pub w: VectorFamily,
    pub w_tilde: VectorFamily,
    pub n_points: usize,
    pub rank: usize,
    /// `J` in increasing order (0-based); these occupy the first `n`
    /// coordinates of the permuted space.
    pub j_indices: Vec<usize>,
    /// The remaining coordinates in increasing order.
    pub other_indices: Vec<usize>,
}

/// JSON form: `{"case", "angles_rad", "u", "v", "w", "w_tilde"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CsDoc {
    pub case: CsCase,
    pub angles_rad: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub w: Vec<Vec<f64>>,
    pub w_tilde: Vec<Vec<f64>>,
}

/// Threshold under which a direction computed by normalization is
/// considered undetermined and is filled in by orthonormal completion.
const DIRECTION_FLOOR: f64 = 1e-9;

impl CsDecomposition {
    pub fn n(&self) -> usize {
        self.j_indices.len()
    }

    /// Number of angles forced to zero by dimension counting, `max(0, n+p-N)`.
    pub fn forced_zero_angles(&self) -> usize {
        (self.n() + self.rank).saturating_sub(self.n_points)
    }

    pub fn to_doc(&self) -> CsDoc {
        CsDoc {
            case: self.case,
            angles_rad: self.angles.clone(),
            u: self.u.to_rows(),
            v: self.v.to_rows(),
            w: self.w.to_rows(),
            w_tilde: self.w_tilde.to_rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("decomposition serializes")
    }
}

/// Computes the CS decomposition of `span(e_basis)` against `R^N_J`.
pub fn compute_cs(e_basis: &VectorFamily, j: PointSet) -> Result<CsDecomposition> {
    let q = orthonormalize(e_basis)?;
    let (n_points, p, n) = (q.dim(), q.len(), j.len());
    j.check_within(n_points)?;
    if n == 0 {
        return Err(Error::InvalidArgument("J must contain at least one point".into()));
    }
    if n > p {
        return Err(Error::TooManyPoints { n, limit: p });
    }
    let case = CsCase::classify(n, p, n_points)?;
    let j_indices: Vec<usize> = j.iter().collect();
    let other_indices: Vec<usize> = j.complement(n_points).iter().collect();
    let m = n_points - n;

    let top = Matrix::from_fn(n, p, |r, c| q.get(c)[j_indices[r]]);
    let bottom = Matrix::from_fn(m, p, |r, c| q.get(c)[other_indices[r]]);
    let svd = jacobi_svd(&top);
    let rotated_bottom = bottom.matmul(&svd.right);

    let k0 = (n + p).saturating_sub(n_points);
    let mut cosines = Vec::with_capacity(n);
    let mut sines = Vec::with_capacity(n);
    for i in 0..n {
        if i < k0 {
            cosines.push(1.0);
            sines.push(0.0);
        } else {
            cosines.push(svd.singular_values[i].min(1.0));
            sines.push(norm(&rotated_bottom.column(i)).min(1.0));
        }
    }
    let angles_raw: Vec<f64> = (0..n).map(|i| sines[i].atan2(cosines[i])).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| angles_raw[a].total_cmp(&angles_raw[b]));
    // forced zeros stay in front of the sort
    debug_assert!(order[..k0].iter().all(|&i| i < k0));

    let u_candidates: Vec<Option<Vec<f64>>> = order
        .iter()
        .map(|&i| {
            let c = svd.left_scaled.column(i);
            let s = svd.singular_values[i];
            (s > DIRECTION_FLOOR).then(|| c.iter().map(|x| x / s).collect())
        })
        .collect();
    let u = complete_family(u_candidates, &[], n);

    let w: Vec<Vec<f64>> = complete_family(
        (n..p).map(|i| Some(rotated_bottom.column(i))).collect(),
        &[],
        m,
    );
    let v_candidates: Vec<Option<Vec<f64>>> = order[k0..]
        .iter()
        .map(|&i| {
            let b = rotated_bottom.column(i);
            let s = norm(&b);
            (s > DIRECTION_FLOOR).then(|| b.iter().map(|x| x / s).collect())
        })
        .collect();
    let v = complete_family(v_candidates, &w, m);
    let taken: Vec<Vec<f64>> = w.iter().chain(&v).cloned().collect();
    let (_, _, n_tilde) = case.family_sizes(n, p, n_points);
    let w_tilde = complete_family(vec![None; n_tilde], &taken, m);

    let to_family = |rows: Vec<Vec<f64>>, dim: usize| -> Result<VectorFamily> {
        VectorFamily::new(rows.into_iter().map(Vector::new).collect::<Result<Vec<_>>>()?, dim)
    };
    let cs = CsDecomposition {
        case,
        angles: order.iter().map(|&i| angles_raw[i]).collect(),
        cosines: order.iter().map(|&i| cosines[i]).collect(),
        sines: order.iter().map(|&i| sines[i]).collect(),
        u: to_family(u, n)?,
        v: to_family(v, m)?,
        w: to_family(w, m)?,
        w_tilde: to_family(w_tilde, m)?,
        n_points,
        rank: p,
        j_indices,
        other_indices,
    };
    check_cardinalities(&cs)?;
    Ok(cs)
}

/// Orthonormalizes the given candidates in order against `fixed` and each
/// other; missing or collapsed slots are filled with the standard basis
/// vector of largest residual.
fn complete_family(candidates: Vec<Option<Vec<f64>>>, fixed: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    fn project_out(w: &mut [f64], basis: &[&[f64]]) {
        for _ in 0..2 {
            for q in basis {
                let c = dot(w, q);
                w.iter_mut().zip(q.iter()).for_each(|(x, y)| *x -= c * y);
            }
        }
    }
    let mut accepted: Vec<Option<Vec<f64>>> = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let basis: Vec<&[f64]> = fixed
            .iter()
            .map(Vec::as_slice)
            .chain(accepted.iter().flatten().map(Vec::as_slice))
            .collect();
        accepted.push(cand.and_then(|mut w| {
            project_out(&mut w, &basis);
            let len = norm(&w);
            (len > 0.5).then(|| w.iter().map(|x| x / len).collect())
        }));
    }
    for slot in 0..accepted.len() {
        if accepted[slot].is_some() {
            continue;
        }
        let basis: Vec<&[f64]> = fixed
            .iter()
            .map(Vec::as_slice)
            .chain(accepted.iter().flatten().map(Vec::as_slice))
            .collect();
        let best = (0..dim)
            .map(|k| {
                let mut e = vec![0.0; dim];
                e[k] = 1.0;
                project_out(&mut e, &basis);
                e
            })
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("positive dimension");
        let len = norm(&best);
        accepted[slot] = Some(best.iter().map(|x| x / len).collect());
    }
    accepted.into_iter().map(|v| v.expect("every slot filled")).collect()
}

fn check_cardinalities(cs: &CsDecomposition) -> Result<()> {
    let n = cs.n();
    let expected = cs.case.family_sizes(n, cs.rank, cs.n_points);
    let actual = (cs.v.len(), cs.w.len(), cs.w_tilde.len());
    let consistent = CsCase::classify(n, cs.rank, cs.n_points).ok() == Some(cs.case)
        && expected == actual
        && cs.u.len() == n
        && cs.angles.len() == n
        && cs.cosines.len() == n
        && cs.sines.len() == n
        && cs.j_indices.len() + cs.other_indices.len() == cs.n_points
        && cs.u.dim() == n
        && [&cs.v, &cs.w, &cs.w_tilde].iter().all(|f| f.dim() == cs.n_points - n);
    if consistent {
        Ok(())
    } else {
        Err(Error::InconsistentCase(format!(
            "{} with n={n}, p={}, N={}: |V|,|W|,|W~| = {actual:?}, expected {expected:?}",
            cs.case, cs.rank, cs.n_points
        )))
    }
}

/// Rebuilds `(Z, Z^⊥)` from the block formulas, in the original coordinate
/// order.
pub fn reconstruct_bases(cs: &CsDecomposition) -> Result<(VectorFamily, VectorFamily)> {
    check_cardinalities(cs)?;
    let n = cs.n();
    let k0 = cs.forced_zero_angles();
    let assemble = |head: &[f64], tail: &[f64]| -> Vector {
        let mut out = vec![0.0; cs.n_points];
        for (r, &idx) in cs.j_indices.iter().enumerate() {
            out[idx] = head[r];
        }
        for (r, &idx) in cs.other_indices.iter().enumerate() {
            out[idx] = tail[r];
        }
        Vector::new(out).expect("finite entries")
    };
    let zero_head = vec![0.0; n];
    let zero_tail = vec![0.0; cs.n_points - n];
    let scaled = |v: &Vector, s: f64| -> Vec<f64> { v.as_slice().iter().map(|x| x * s).collect() };

    let mut z = Vec::with_capacity(cs.rank);
    let mut z_perp = Vec::with_capacity(cs.n_points - cs.rank);
    for i in 0..n {
        let u = cs.u.get(i);
        if i < k0 {
            // (u^i, e(N-n))
            z.push(assemble(u.as_slice(), &zero_tail));
        } else {
            let v = cs.v.get(i - k0);
            let (c, s) = (cs.cosines[i], cs.sines[i]);
            z.push(assemble(&scaled(u, c), &scaled(v, s)));
            z_perp.push(assemble(&scaled(u, s), &scaled(v, -c)));
        }
    }
    for w in cs.w.members() {
        z.push(assemble(&zero_head, w.as_slice()));
    }
    for w in cs.w_tilde.members() {
        z_perp.push(assemble(&zero_head, w.as_slice()));
    }
    Ok((
        VectorFamily::new(z, cs.n_points)?,
        VectorFamily::new(z_perp, cs.n_points)?,
    ))
}

/// `(cos²{E, R_J}, sin²{E, R_J}) = (∏ cos² θ_i, ∏ sin² θ_i)`.
pub fn cos_sin_products(cs: &CsDecomposition) -> (f64, f64) {
    let c: f64 = cs.cosines.iter().map(|c| c * c).product();
    let s: f64 = cs.sines.iter().map(|s| s * s).product();
    (c, s)
}

/// Tolerance for the angle/probability identities.
pub const PROP1_TOLERANCE: f64 = 1e-9;

/// Compares `∏ cos² θ_i` with `P(J ⊂ φ)` and `∏ sin² θ_i` with `P(J ⊂ φᶜ)`,
/// the latter taken from the complement process `φ(Z^⊥)`.
pub fn verify_prop1_probabilities(frame: &OrthonormalFrame, j: PointSet) -> Result<Vec<CheckReport>> {
    let cs = compute_cs(frame.columns(), j)?;
    let (cos2, sin2) = cos_sin_products(&cs);
    let dpp = ProjectionDpp::new(frame.clone());
    let witness = format!("N={} p={} J={j:?} case={}", frame.n_points(), frame.rank(), cs.case);
    let included = dpp.inclusion_probability(j)?;
    let excluded = if frame.rank() < frame.n_points() {
        ProjectionDpp::new(complement_frame(frame)?).inclusion_probability(j)?
    } else {
        dpp.exclusion_probability(j)?
    };
    Ok(vec![
        CheckReport::identity("prop1.cos2_inclusion", cos2, included, PROP1_TOLERANCE).with_witness(witness.clone()),
        CheckReport::identity("prop1.sin2_exclusion", sin2, excluded, PROP1_TOLERANCE).with_witness(witness),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn fam(rows: &[&[f64]]) -> VectorFamily {
        VectorFamily::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn case_arithmetic() {
        assert_eq!(CsCase::classify(1, 3, 6).unwrap(), CsCase::I);
        assert_eq!(CsCase::classify(2, 3, 4).unwrap(), CsCase::II);
        assert_eq!(CsCase::classify(2, 3, 5).unwrap(), CsCase::III);
        assert_eq!(CsCase::classify(2, 2, 5).unwrap(), CsCase::IvI);
        assert_eq!(CsCase::classify(2, 2, 3).unwrap(), CsCase::IvIi);
        assert_eq!(CsCase::classify(2, 2, 4).unwrap(), CsCase::IvIii);
        assert!(CsCase::classify(3, 2, 5).is_err());
    }

    #[test]
    fn tilted_plane_in_r3() {
        let beta: f64 = 0.7;
        let e = fam(&[&[1.0, 0.0, 0.0], &[0.0, beta.cos(), beta.sin()]]);
        let cs = compute_cs(&e, PointSet::from_indices([0, 1])).unwrap();
        assert_eq!(cs.case, CsCase::IvIi);
        assert!(cs.angles[0].abs() < 1e-15);
        assert!((cs.angles[1] - beta).abs() < 1e-14);
        let (c2, s2) = cos_sin_products(&cs);
        assert!((c2 - beta.cos().powi(2)).abs() < 1e-14);
        assert_eq!(s2, 0.0);
    }

    #[test]
    fn identical_and_orthogonal_subspaces() {
        let e = fam(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]]);
        let cs = compute_cs(&e, PointSet::from_indices([0, 1])).unwrap();
        assert!(cs.angles.iter().all(|a| a.abs() < 1e-15));
        assert_eq!(cos_sin_products(&cs), (1.0, 0.0));
        let (z, _) = reconstruct_bases(&cs).unwrap();
        assert!(z.members().iter().all(|v| v[2] == 0.0 && v[3] == 0.0));

        let cs = compute_cs(&e, PointSet::from_indices([2, 3])).unwrap();
        assert!(cs.angles.iter().all(|a| (a - FRAC_PI_2).abs() < 1e-15));
        assert_eq!(cos_sin_products(&cs), (0.0, 1.0));
    }

    #[test]
    fn too_many_points() {
        let e = fam(&[&[1.0, 0.0, 0.0]]);
        assert_eq!(
            compute_cs(&e, PointSet::from_indices([0, 1])).err(),
            Some(Error::TooManyPoints { n: 2, limit: 1 })
        );
        assert!(compute_cs(&e, PointSet::EMPTY).is_err());
    }

    #[test]
    fn inconsistent_case_is_rejected() {
        let e = fam(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]]);
        let mut cs = compute_cs(&e, PointSet::singleton(0)).unwrap();
        cs.case = CsCase::IvI;
        assert!(matches!(reconstruct_bases(&cs), Err(Error::InconsistentCase(_))));
    }

    #[test]
    fn json_shape() {
        let e = fam(&[&[1.0, 0.0, 0.0], &[0.0, 0.6, 0.8]]);
        let cs = compute_cs(&e, PointSet::singleton(1)).unwrap();
        let json = cs.to_json();
        let positions: Vec<usize> = ["\"case\"", "\"angles_rad\"", "\"u\"", "\"v\"", "\"w\"", "\"w_tilde\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["case"], "III");
    }
}
