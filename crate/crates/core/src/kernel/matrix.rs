//! Dense matrices over a [`Field`].
//!
//! Tensor products use one index convention throughout the crate: the basis
//! vector `(i, j)` of `V ⊗ W` sits at position `i * dim(W) + j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::scalar::{Field, Scalar};

/// A column vector.
pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Output of [`ExactMatrix::solve`]: one particular solution plus a basis
/// of the solution space of the homogeneous system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: ExactMatrix,
    pub kernel: Vec<Vector>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking length and field.
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Self::from_vec(field, r, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        ExactMatrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Shape(format!(
                    "column of length {} where {rows} expected",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Result<Self> {
        Self::from_vec(field, v.len(), 1, v.to_vec())
    }

    pub fn row_vector(field: Field, v: &[Scalar]) -> Result<Self> {
        Self::from_vec(field, 1, v.len(), v.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn same_field(&self, other: &ExactMatrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (k, x) in v.iter().enumerate() {
                let a = self.get(i, k);
                if a.is_zero() || x.is_zero() {
                    continue;
                }
                *o = &*o + &(a * x);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ExactMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "shape mismatch {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Kronecker product: entry `(i*B.rows + k, j*B.cols + l)` is `A[i,j] * B[k,l]`.
    pub fn kron(&self, other: &ExactMatrix) -> Result<Self> {
        self.same_field(other)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(self ⊗ b) * m` without forming the Kronecker product.
    pub fn tensor_apply(&self, b: &ExactMatrix, m: &ExactMatrix) -> Result<Self> {
        self.same_field(b)?;
        self.same_field(m)?;
        if m.rows != self.cols * b.cols {
            return Err(Error::Shape(format!(
                "cannot apply a tensor of {}x{} and {}x{} maps to {} rows",
                self.rows, self.cols, b.rows, b.cols, m.rows
            )));
        }
        let a_cols: Vec<Vec<(usize, &Scalar)>> = (0..self.cols)
            .map(|p| {
                (0..self.rows)
                    .map(|i| (i, self.get(i, p)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        let b_cols: Vec<Vec<(usize, &Scalar)>> = (0..b.cols)
            .map(|q| {
                (0..b.rows)
                    .map(|k| (k, b.get(k, q)))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(self.field, self.rows * b.rows, m.cols);
        for r in 0..m.rows {
            let (p, q) = (r / b.cols, r % b.cols);
            for c in 0..m.cols {
                let x = m.get(r, c);
                if x.is_zero() {
                    continue;
                }
                for &(i, ai) in &a_cols[p] {
                    let ax = ai * x;
                    for &(k, bk) in &b_cols[q] {
                        let idx = (i * b.rows + k) * m.cols + c;
                        out.data[idx] = &out.data[idx] + &(&ax * bk);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product of a list of matrices, left to right. The empty
    /// product is the 1x1 identity.
    pub fn kron_all<'a>(field: Field, factors: impl IntoIterator<Item = &'a ExactMatrix>) -> Result<Self> {
        let mut acc = Self::identity(field, 1);
        for f in factors {
            acc = acc.kron(f)?;
        }
        Ok(acc)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack of matrices with different row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.field, self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack of matrices with different column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ExactMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Stacks many matrices vertically; all must have `cols` columns.
    pub fn vstack_all(field: Field, cols: usize, parts: &[ExactMatrix]) -> Result<Self> {
        let mut acc = Self::zeros(field, 0, cols);
        for p in parts {
            acc = acc.vstack(p)?;
        }
        Ok(acc)
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> Self {
        ExactMatrix {
            field: self.field,
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> Self {
        let mut out = Self::zeros(self.field, self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                out.data[i * (end - start) + j - start] = self.get(i, j).clone();
            }
        }
        out
    }

    /// The permutation matrix of the symmetry `V_a ⊗ V_b → V_b ⊗ V_a`.
    pub fn swap(field: Field, a: usize, b: usize) -> Self {
        Self::tensor_permutation(field, &[a, b], &[1, 0])
    }

    /// Permutation matrix reordering tensor factors: the output factor at
    /// position `k` is the input factor `order[k]`. `dims` lists the input
    /// factor dimensions.
    pub fn tensor_permutation(field: Field, dims: &[usize], order: &[usize]) -> Self {
        assert_eq!(dims.len(), order.len(), "permutation length mismatch");
        let n: usize = dims.iter().product();
        let out_dims: Vec<usize> = order.iter().map(|&k| dims[k]).collect();
        let mut m = Self::zeros(field, n, n);
        let mut idx = vec![0usize; dims.len()];
        for col in 0..n {
            let mut rem = col;
            for k in (0..dims.len()).rev() {
                idx[k] = rem % dims[k];
                rem /= dims[k];
            }
            let mut row = 0;
            for (k, &src) in order.iter().enumerate() {
                row = row * out_dims[k] + idx[src];
            }
            m.data[row * n + col] = field.one();
        }
        m
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j) - &(&f * v);
                    m.data[i * m.cols + j] = nv;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column: the free
    /// variable is set to 1, the others to 0.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let rref = self.rref();
        kernel_from_rref(&rref, self.cols)
    }

    /// Solves `AX = B`. Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &ExactMatrix) -> Result<Option<Solution>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "solve: A has {} rows but B has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let rref = aug.rref();
        if rref.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (r, &p) in rref.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[p * b.cols + j] = rref.matrix.get(r, self.cols + j).clone();
            }
        }
        let own = Rref {
            matrix: rref.matrix.col_block(0, self.cols),
            pivots: rref.pivots.clone(),
            rank: rref.rank,
        };
        Ok(Some(Solution {
            particular: x,
            kernel: kernel_from_rref(&own, self.cols),
        }))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Self::identity(self.field, self.rows)).ok()??;
        sol.kernel.is_empty().then_some(sol.particular)
    }

    /// Matrix power for square matrices.
    pub fn pow(&self, e: u32) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Index of the first column where `self` and `other` differ.
    pub fn first_differing_column(&self, other: &ExactMatrix) -> Option<usize> {
        if self.shape() != other.shape() {
            return Some(0);
        }
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }
}

fn kernel_from_rref(rref: &Rref, cols: usize) -> Vec<Vector> {
    let field = rref.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &p) in rref.pivots.iter().enumerate() {
                v[p] = -rref.matrix.get(r, f);
            }
            v
        })
        .collect()
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: usize, cols: usize, e: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(Field::Rational, rows, cols, e)
    }

    #[test]
    fn rref_examples() {
        let r = q(1, 1, &[2]).rref();
        assert_eq!(r.matrix, q(1, 1, &[1]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);

        let r = q(2, 2, &[1, 2, 2, 4]).rref();
        assert_eq!(r.matrix, q(2, 2, &[1, 2, 0, 0]));
        assert_eq!(r.rank, 1);

        let r = q(0, 0, &[]).rref();
        assert_eq!(r.matrix.shape(), (0, 0));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(Field::Rational, 3).kernel_basis().is_empty());
        let k = q(2, 2, &[1, 2, 2, 4]).kernel_basis();
        assert_eq!(k, vec![vec![Field::Rational.from_i64(-2), Field::Rational.one()]]);
        let k = q(1, 1, &[0]).kernel_basis();
        assert_eq!(k, vec![vec![Field::Rational.one()]]);
    }

    #[test]
    fn solve_examples() {
        let b = q(2, 3, &[1, 2, 3, 4, 5, 6]);
        let s = ExactMatrix::identity(Field::Rational, 2).solve(&b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let s = q(1, 2, &[1, 1]).solve(&q(1, 1, &[1])).unwrap().unwrap();
        assert_eq!(s.particular, q(2, 1, &[1, 0]));
        assert_eq!(
            s.kernel,
            vec![vec![Field::Rational.from_i64(-1), Field::Rational.one()]]
        );

        assert!(q(1, 1, &[0]).solve(&q(1, 1, &[1])).unwrap().is_none());
        assert!(q(2, 1, &[0, 0]).solve(&q(1, 1, &[1])).is_err());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(q(1, 1, &[3]).kron(&q(1, 1, &[5])).unwrap(), q(1, 1, &[15]));
        let m = q(2, 2, &[1, 2, 3, 4]);
        let k = ExactMatrix::identity(Field::Rational, 2).kron(&m).unwrap();
        assert_eq!(
            k,
            q(4, 4, &[1, 2, 0, 0, 3, 4, 0, 0, 0, 0, 1, 2, 0, 0, 3, 4])
        );
        assert_eq!(
            q(1, 2, &[1, 2]).kron(&q(2, 1, &[3, 4])).unwrap(),
            q(2, 2, &[3, 6, 4, 8])
        );
    }

    #[test]
    fn swap_is_the_transposition() {
        let f = Field::Rational;
        let s = ExactMatrix::swap(f, 2, 3);
        // e_i ⊗ e_j at i*3+j goes to e_j ⊗ e_i at j*2+i
        for i in 0..2 {
            for j in 0..3 {
                assert!(s.get(j * 2 + i, i * 3 + j).is_one());
            }
        }
        let back = ExactMatrix::swap(f, 3, 2);
        assert_eq!(back.mul(&s).unwrap(), ExactMatrix::identity(f, 6));
        // σ (A ⊗ B) = (B ⊗ A) σ
        let a = q(2, 2, &[1, 2, 3, 4]);
        let b = q(3, 3, &[1, 0, 2, 0, 1, 0, 5, 0, 1]);
        let lhs = ExactMatrix::swap(f, 2, 3).mul(&a.kron(&b).unwrap()).unwrap();
        let rhs = b.kron(&a).unwrap().mul(&ExactMatrix::swap(f, 2, 3)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = ExactMatrix::identity(Field::Rational, 2);
        let b = ExactMatrix::identity(Field::Prime(3), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(..))));
        assert!(a.kron(&b).is_err());
        assert!(ExactMatrix::from_vec(
            Field::Rational,
            1,
            2,
            vec![Field::Rational.one(), Field::Prime(3).one()]
        )
        .is_err());
    }

    #[test]
    fn tensor_apply_matches_kron() {
        let a = q(2, 3, &[1, 0, 2, -1, 3, 0]);
        let b = q(1, 2, &[4, 5]);
        let m = q(6, 2, &[1, 0, 2, 1, 0, 3, -1, 0, 0, 2, 5, 1]);
        let want = a.kron(&b).unwrap().mul(&m).unwrap();
        assert_eq!(a.tensor_apply(&b, &m).unwrap(), want);
        assert!(a.tensor_apply(&b, &q(5, 1, &[0; 5])).is_err());
    }
}
