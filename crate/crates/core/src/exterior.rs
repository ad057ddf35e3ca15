//! Vectors, vector families, and wedge-product quantities.
//!
//! The inner product of two decomposable wedges `a_1 ∧ … ∧ a_k` and
//! `b_1 ∧ … ∧ b_k` is the determinant of the cross Gram matrix
//! `[<a_i, b_j>]`; all norms below are computed that way.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};

/// Gram determinants in `[-WEDGE_CLAMP, 0)` are reported as zero.
pub const WEDGE_CLAMP: f64 = 1e-12;

/// Finite real vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("empty vector".into()));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Vector(entries))
    }

    /// Zero vector of dimension `dim` (the `e(k)` blocks of the CS formulas).
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<f64>::deserialize(d)?;
        Vector::new(entries).map_err(serde::de::Error::custom)
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Ordered list of vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    members: Vec<Vector>,
    dim: usize,
}

impl VectorFamily {
    pub fn new(members: Vec<Vector>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("family dimension must be positive".into()));
        }
        if let Some(bad) = members.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "member of dimension {} in a family of dimension {dim}",
                bad.dim()
            )));
        }
        Ok(VectorFamily { members, dim })
    }

    /// Convenience constructor from raw rows; the dimension is taken from
    /// the first member.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::DimensionMismatch("cannot infer dimension of empty family".into()))?;
        let members = rows.into_iter().map(Vector::new).collect::<Result<Vec<_>>>()?;
        VectorFamily::new(members, dim)
    }

    pub fn empty(dim: usize) -> Self {
        VectorFamily {
            members: Vec::new(),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vector] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &Vector {
        &self.members[i]
    }

    /// Sub-family of the members at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> VectorFamily {
        VectorFamily {
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
            dim: self.dim,
        }
    }

    /// Concatenation of two families of the same dimension.
    pub fn concat(&self, other: &VectorFamily) -> Result<VectorFamily> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot concatenate families of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        Ok(VectorFamily {
            members,
            dim: self.dim,
        })
    }

    /// `dim x len` matrix with the members as columns.
    pub fn to_column_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.len(), |i, j| self.members[j][i])
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.members.iter().map(|v| v.as_slice().to_vec()).collect()
    }
}

fn check_pair(a: &VectorFamily, b: &VectorFamily) -> Result<()> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "families of {} vectors in R^{} and {} vectors in R^{}",
            a.len(),
            a.dim(),
            b.len(),
            b.dim()
        )));
    }
    Ok(())
}

/// Cross Gram matrix `[<a_i, b_j>]`.
pub fn gram_matrix(a: &VectorFamily, b: &VectorFamily) -> Result<Matrix> {
    check_pair(a, b)?;
    Ok(Matrix::from_fn(a.len(), b.len(), |i, j| a.get(i).dot(b.get(j))))
}

/// `<a_1 ∧ … ∧ a_k, b_1 ∧ … ∧ b_k>`.
pub fn wedge_inner(a: &VectorFamily, b: &VectorFamily) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::DimensionMismatch("wedge of an empty family".into()));
    }
    Ok(gram_matrix(a, b)?.determinant())
}

/// `‖a_1 ∧ … ∧ a_k‖²`, clamped at zero when roundoff pushes it slightly
/// negative.
pub fn wedge_norm_sq(a: &VectorFamily) -> Result<f64> {
    let g = wedge_inner(a, a)?;
    Ok(if (-WEDGE_CLAMP..0.0).contains(&g) { 0.0 } else { g })
}

/// `ṽ_i = ⋀_{j≠i} v_j` for a family of `n` vectors in `R^n`, coordinatized
/// by the (unsigned) `(n-1)`-minors: coordinate `j` of `ṽ_i` is the minor of
/// `[v_k^{k'}]` with row `i` and column `j` deleted.
pub fn leave_one_out_wedges(v: &VectorFamily) -> Result<VectorFamily> {
    let n = v.len();
    if n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "leave-one-out wedges need at least 2 vectors, got {n}"
        )));
    }
    if v.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} vectors must live in R^{n}, not R^{}",
            v.dim()
        )));
    }
    let members = (0..n)
        .map(|i| {
            let coords = (0..n)
                .map(|j| {
                    Matrix::from_fn(n - 1, n - 1, |r, c| {
                        let row = if r < i { r } else { r + 1 };
                        let col = if c < j { c } else { c + 1 };
                        v.get(row)[col]
                    })
                    .determinant()
                })
                .collect();
            Vector(coords)
        })
        .collect();
    Ok(VectorFamily { members, dim: n })
}

/// Relative residual below which a vector counts as dependent on its
/// predecessors.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Modified Gram–Schmidt with one re-orthogonalization pass.
pub fn orthonormalize(a: &VectorFamily) -> Result<VectorFamily> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(a.len());
    for v in a.members() {
        let original = v.norm();
        let mut w = v.as_slice().to_vec();
        for _pass in 0..2 {
            for q in &basis {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let residual = norm(&w);
        if original == 0.0 || residual < RANK_TOLERANCE * original {
            return Err(Error::RankDeficient {
                residual,
                norm: original,
            });
        }
        w.iter_mut().for_each(|x| *x /= residual);
        basis.push(w);
    }
    Ok(VectorFamily {
        members: basis.into_iter().map(Vector).collect(),
        dim: a.dim(),
    })
}

/// Largest deviation of `gram_matrix(a, a)` from the identity.
pub fn orthonormality_defect(a: &VectorFamily) -> f64 {
    let g = Matrix::from_fn(a.len(), a.len(), |i, j| a.get(i).dot(a.get(j)));
    g.max_abs_diff(&Matrix::identity(a.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(rows: &[&[f64]]) -> VectorFamily {
        VectorFamily::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn gram_matrix_examples() {
        let e = fam(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(gram_matrix(&e, &e).unwrap(), Matrix::identity(2));
        let rep = fam(&[&[1.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(gram_matrix(&rep, &rep).unwrap(), Matrix::from_fn(2, 2, |_, _| 1.0));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = gram_matrix(&fam(&[&[s, s]]), &fam(&[&[1.0, 0.0]])).unwrap();
        assert!((g[(0, 0)] - s).abs() < 1e-15);
    }

    #[test]
    fn mismatched_families_are_rejected() {
        let a = fam(&[&[1.0, 0.0]]);
        let b = fam(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let c = fam(&[&[1.0, 0.0, 0.0]]);
        assert!(matches!(gram_matrix(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(wedge_inner(&a, &c), Err(Error::DimensionMismatch(_))));
        assert!(VectorFamily::new(vec![Vector::new(vec![1.0]).unwrap()], 2).is_err());
        assert_eq!(Vector::new(vec![f64::NAN]), Err(Error::NonFinite));
    }

    #[test]
    fn wedge_examples() {
        let e = fam(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(wedge_inner(&e, &e).unwrap(), 1.0);
        assert_eq!(wedge_norm_sq(&e).unwrap(), 1.0);
        let v = fam(&[&[0.3, -1.2, 2.0], &[0.3, -1.2, 2.0]]);
        assert!(wedge_inner(&v, &v).unwrap().abs() < 1e-15);
        assert_eq!(wedge_norm_sq(&fam(&[&[1.0, 0.0], &[1.0, 0.0]])).unwrap(), 0.0);
        let (l1, l2) = (0.7, -0.4);
        let d = fam(&[&[l1, 0.0], &[0.0, l2]]);
        assert!((wedge_norm_sq(&d).unwrap() - l1 * l1 * l2 * l2).abs() < 1e-16);
    }

    #[test]
    fn leave_one_out_examples() {
        let v = fam(&[&[0.2, 0.9], &[-1.1, 0.4]]);
        let t = leave_one_out_wedges(&v).unwrap();
        // n = 2: the minors are single entries of the other vector, reversed
        assert_eq!(t.get(0).as_slice(), &[0.4, -1.1]);
        assert_eq!(t.get(1).as_slice(), &[0.9, 0.2]);
        assert!((t.get(0).norm() - v.get(1).norm()).abs() < 1e-15);
        assert!((t.get(1).norm() - v.get(0).norm()).abs() < 1e-15);

        let e = fam(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 1.0, 0.0], &[0.0, 0.0, 0.0, 1.0]]);
        let t = leave_one_out_wedges(&e).unwrap();
        assert!(t.members().iter().all(|w| (w.norm() - 1.0).abs() < 1e-15));

        assert!(leave_one_out_wedges(&fam(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]])).is_err());
        assert!(leave_one_out_wedges(&fam(&[&[1.0]])).is_err());
    }

    #[test]
    fn orthonormalize_examples() {
        let out = orthonormalize(&fam(&[&[2.0, 0.0], &[0.0, 3.0]])).unwrap();
        assert_eq!(out.to_rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let out = orthonormalize(&fam(&[&[1.0, 0.0], &[1.0, 1.0]])).unwrap();
        assert_eq!(out.to_rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(
            orthonormalize(&fam(&[&[1.0, 1.0], &[2.0, 2.0]])),
            Err(Error::RankDeficient { .. })
        ));
        assert!(orthonormalize(&fam(&[&[0.0, 0.0]])).is_err());
    }
}
