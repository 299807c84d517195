//! Subspaces of `F^n` held by their reduced-row-echelon basis.

use crate::error::{Error, Result};
use crate::kernel::matrix::{ExactMatrix, Vector};
use crate::kernel::scalar::{Field, Scalar};

/// A subspace of `F^ambient`. The basis is the set of nonzero rows of the
/// reduced row echelon form, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: ExactMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: ExactMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &ExactMatrix) -> Self {
        let rref = m.rref();
        Subspace {
            ambient: m.cols(),
            basis: rref.matrix.row_block(0, rref.rank),
            pivots: rref.pivots,
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let mut m = ExactMatrix::zeros(field, 0, ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::Shape(format!(
                    "vector of length {} in a subspace of F^{ambient}",
                    v.len()
                )));
            }
            m = m.vstack(&ExactMatrix::row_vector(field, v)?)?;
        }
        Ok(Self::row_space(&m))
    }

    /// Column space of `m`.
    pub fn image(m: &ExactMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    /// Null space of `m`.
    pub fn kernel(m: &ExactMatrix) -> Self {
        Self::span(m.field(), m.cols(), &m.kernel_basis()).expect("kernel vectors have the right length")
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Echelon basis as rows.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; their unit vectors span a canonical
    /// complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient).filter(|&i| !used[i]).collect()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn inclusion(&self) -> ExactMatrix {
        self.basis.transpose()
    }

    /// Rows spanning the annihilator: functionals vanishing on `self`.
    pub fn annihilator(&self) -> ExactMatrix {
        let field = self.field();
        let k = self.basis.kernel_basis();
        let mut m = ExactMatrix::zeros(field, 0, self.ambient);
        for v in k {
            m = m
                .vstack(&ExactMatrix::row_vector(field, &v).expect("field"))
                .expect("width");
        }
        m
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Reduces `v` modulo the subspace: the result is zero at every pivot
    /// coordinate and differs from `v` by an element of the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for j in 0..self.ambient {
                let b = self.basis.get(r, j);
                if !b.is_zero() {
                    out[j] = &out[j] - &(&c * b);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|i| other.contains(&self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        // Annihilator of the intersection is the sum of annihilators.
        let ann = self.annihilator().vstack(&other.annihilator())?;
        Ok(Subspace::kernel(&ann))
    }

    /// `{v ∈ self : M v ∈ target}`.
    pub fn preimage_within(&self, m: &ExactMatrix, target: &Subspace) -> Result<Subspace> {
        if m.cols() != self.ambient || m.rows() != target.ambient {
            return Err(Error::Shape("preimage: map does not match the subspaces".into()));
        }
        self.restrict_by(&target.annihilator().mul(m)?)
    }

    /// `{v ∈ self : C v = 0}` for a constraint matrix `C`.
    pub fn restrict_by(&self, constraints: &ExactMatrix) -> Result<Subspace> {
        if constraints.cols() != self.ambient {
            return Err(Error::Shape("constraint width does not match ambient".into()));
        }
        if constraints.rows() == 0 || self.dim() == 0 {
            return Ok(self.clone());
        }
        let inc = self.inclusion();
        let coeffs = constraints.mul(&inc)?.kernel_basis();
        let vs: Vec<Vector> = coeffs
            .iter()
            .map(|a| inc.mul_vec(a).expect("shape"))
            .collect();
        Subspace::span(self.field(), self.ambient, &vs)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}
