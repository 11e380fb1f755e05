//! Dense exact linear algebra: RREF, rank, kernels, solves and coset reduction.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! result here is a deterministic function of its input.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entries from different fields")]
    FieldMismatch,
}

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![Scalar::zero(field); n]
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale(v: &[Scalar], a: &Scalar) -> Vector {
    v.iter().map(|x| a * x).collect()
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Row-major dense matrix over a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix {}x{} over {} [",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one(field);
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            if row.iter().any(|x| x.field() != field) {
                return Err(LinalgError::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            field,
            data,
        })
    }

    /// Convenience for literals; panics on ragged input.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(field: Field, entries: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            data: add_vectors(&self.data, &other.data),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            data: sub_vectors(&self.data, &other.data),
            ..self.clone()
        })
    }

    pub fn scale(&self, a: &Scalar) -> Matrix {
        Matrix {
            data: scale(&self.data, a),
            ..self.clone()
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<(), LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(())
    }

    /// `self^k` for square matrices; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one(self.field);
        }
        let red = rref(&aug);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red.matrix[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Entrywise image in another field (integer/rational matrices only).
    pub fn to_field(&self, field: Field) -> Result<Matrix, crate::field::FieldError> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_field(field))
            .collect::<Result<_, _>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field,
            data,
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduces a list of rows in place to RREF; returns pivot columns.
///
/// Zero rows are dropped from the front portion; the first `pivots.len()`
/// rows hold the reduced nonzero rows on return.
fn reduce_rows(rows: &mut [Vector], cols: usize, field: Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    let one = Scalar::one(field);
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let lead = rows[next][c].clone();
        if lead != one {
            let inv = lead.inv().expect("nonzero pivot");
            for x in rows[next][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[next][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut rows[next]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        rows[next] = pivot_row;
        pivots.push(c);
        next += 1;
    }
    pivots
}

/// Reduced row echelon form with deterministic first-nonzero pivoting.
pub fn rref(m: &Matrix) -> Rref {
    let mut rows = m.to_rows();
    let pivots = reduce_rows(&mut rows, m.cols, m.field);
    let rank = pivots.len();
    let data = rows.into_iter().flatten().collect();
    Rref {
        matrix: Matrix {
            rows: m.rows,
            cols: m.cols,
            field: m.field,
            data,
        },
        pivots,
        rank,
    }
}

/// A subspace of `field^ambient_dim`, stored as the nonzero rows of the RREF
/// of any spanning set. Two spans are equal iff their `SubspaceBasis` values are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    field: Field,
    ambient_dim: usize,
    vectors: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubspaceBasis(dim {} in {}) [",
            self.dim(),
            self.ambient_dim
        )?;
        for v in &self.vectors {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(", "))?;
        }
        write!(f, "]")
    }
}

impl SubspaceBasis {
    pub fn zero(field: Field, ambient_dim: usize) -> SubspaceBasis {
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> SubspaceBasis {
        let m = Matrix::identity(field, ambient_dim);
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: m.to_rows(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span(
        field: Field,
        ambient_dim: usize,
        vectors: Vec<Vector>,
    ) -> Result<SubspaceBasis, LinalgError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        let mut rows = vectors;
        let pivots = reduce_rows(&mut rows, ambient_dim, field);
        rows.truncate(pivots.len());
        Ok(SubspaceBasis {
            field,
            ambient_dim,
            vectors: rows,
            pivots,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace: subtracts `v[p] * b` for each basis
    /// vector `b` with pivot `p`. The remainder vanishes iff `v` lies in the span.
    pub fn coset_reduce(&self, v: &[Scalar]) -> Result<(Vector, bool), LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let mut rep = v.to_vec();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if !rep[p].is_zero() {
                let a = rep[p].neg();
                axpy(&mut rep, &a, b);
            }
        }
        let inside = is_zero_vector(&rep);
        Ok((rep, inside))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.coset_reduce(v)?.1)
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of the basis vectors.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim(), "coordinate count");
        let mut out = zero_vector(self.field, self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.vectors) {
            axpy(&mut out, c, b);
        }
        out
    }

    /// Span of `self` together with extra vectors.
    pub fn extend(&self, extra: Vec<Vector>) -> Result<SubspaceBasis, LinalgError> {
        let mut all = self.vectors.clone();
        all.extend(extra);
        SubspaceBasis::span(self.field, self.ambient_dim, all)
    }
}

/// Canonical bases of the span of `vectors` and of the relations among them:
/// the second subspace, inside `field^vectors.len()`, holds every `c` with
/// `sum c_k vectors[k] = 0`.
pub fn span_with_relations(
    field: Field,
    ambient_dim: usize,
    vectors: Vec<Vector>,
) -> Result<(SubspaceBasis, SubspaceBasis), LinalgError> {
    let count = vectors.len();
    let mut rows = Vec::with_capacity(count);
    for (k, v) in vectors.into_iter().enumerate() {
        if v.len() != ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient_dim,
                got: v.len(),
            });
        }
        let mut row = v;
        row.resize(ambient_dim + count, Scalar::zero(field));
        row[ambient_dim + k] = Scalar::one(field);
        rows.push(row);
    }
    let pivots = reduce_rows(&mut rows, ambient_dim + count, field);
    rows.truncate(pivots.len());
    let split = pivots
        .iter()
        .position(|&p| p >= ambient_dim)
        .unwrap_or(pivots.len());
    let mut image = Vec::with_capacity(split);
    let mut relations = Vec::with_capacity(pivots.len() - split);
    for (k, mut row) in rows.into_iter().enumerate() {
        if k < split {
            row.truncate(ambient_dim);
            image.push(row);
        } else {
            relations.push(row.split_off(ambient_dim));
        }
    }
    let image = SubspaceBasis {
        field,
        ambient_dim,
        vectors: image,
        pivots: pivots[..split].to_vec(),
    };
    let relations = SubspaceBasis {
        field,
        ambient_dim: count,
        vectors: relations,
        pivots: pivots[split..].iter().map(|p| p - ambient_dim).collect(),
    };
    Ok((image, relations))
}

/// Free coordinates of `{x : m x = 0}`, one vector per non-pivot column,
/// returned in canonical subspace form.
pub fn kernel_basis(m: &Matrix) -> SubspaceBasis {
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let field = m.field;
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(field, m.cols);
        v[free] = Scalar::one(field);
        for (row, &p) in red.pivots.iter().enumerate() {
            v[p] = red.matrix[(row, free)].neg();
        }
        vectors.push(v);
    }
    SubspaceBasis::span(field, m.cols, vectors).expect("kernel vectors have ambient length")
}

/// Canonical basis of the column space of `m`.
pub fn column_space(m: &Matrix) -> SubspaceBasis {
    let cols = (0..m.cols).map(|c| m.column(c)).collect();
    SubspaceBasis::span(m.field, m.rows, cols).expect("columns have row length")
}

/// A particular solution of `m x = rhs` with every free variable set to zero,
/// or `None` if `rhs` is not in the column space.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            got: rhs.len(),
        });
    }
    let mut aug = Matrix::zeros(m.field, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols)] = rhs[r].clone();
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vector(m.field, m.cols);
    for (row, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(row, m.cols)].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q.int(x)).collect()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(Q, 3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
        let z = Matrix::zeros(Q, 2, 4);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.matrix, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_basis(&Matrix::identity(Q, 4)).dim(), 0);
        let k = kernel_basis(&Matrix::zeros(Q, 2, 3));
        assert_eq!(k, SubspaceBasis::full(Q, 3));
        let k = kernel_basis(&Matrix::from_i64(Q, &[&[1, 2]]));
        let expected = SubspaceBasis::span(Q, 2, vec![v(&[-2, 1])]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn solves() {
        let id = Matrix::identity(Q, 3);
        assert_eq!(solve(&id, &v(&[4, 5, 6])).unwrap(), Some(v(&[4, 5, 6])));
        assert_eq!(solve(&Matrix::zeros(Q, 2, 2), &v(&[0, 1])).unwrap(), None);
        let two = Matrix::from_i64(Q, &[&[2]]);
        let x = solve(&two, &v(&[3])).unwrap().unwrap();
        assert_eq!(x, vec![Scalar::from_ratio(Q, 3, 2).unwrap()]);
        assert!(matches!(
            solve(&two, &v(&[1, 2])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coset_reduction() {
        let sub = SubspaceBasis::span(Q, 2, vec![v(&[1, 0])]).unwrap();
        assert_eq!(sub.coset_reduce(&v(&[3, 2])).unwrap(), (v(&[0, 2]), false));
        assert_eq!(sub.coset_reduce(&v(&[5, 0])).unwrap(), (v(&[0, 0]), true));
        let empty = SubspaceBasis::zero(Q, 2);
        assert_eq!(
            empty.coset_reduce(&v(&[3, 2])).unwrap(),
            (v(&[3, 2]), false)
        );
        assert_eq!(empty.coset_reduce(&v(&[0, 0])).unwrap(), (v(&[0, 0]), true));
        assert!(sub.coset_reduce(&v(&[1])).is_err());
    }

    #[test]
    fn inverse_and_power() {
        let m = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.pow(3), Matrix::from_i64(Q, &[&[1, 3], &[0, 1]]));
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(Matrix::zeros(Q, 2, 2).pow(0).is_identity());
    }

    #[test]
    fn relations_among_vectors() {
        let (image, rel) =
            span_with_relations(Q, 2, vec![v(&[1, 2]), v(&[2, 4]), v(&[0, 1])]).unwrap();
        assert_eq!(image.dim(), 2);
        assert_eq!(rel.dim(), 1);
        let half = Scalar::from_ratio(Q, -1, 2).unwrap();
        assert_eq!(rel.vectors()[0], vec![Q.one(), half, Q.zero()]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..3, r * c).prop_map(move |xs| {
                let rows = xs
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&x| Q.int(x)).collect())
                    .collect();
                Matrix::from_rows(Q, rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for x in k.vectors() {
                prop_assert!(is_zero_vector(&m.mul_vec(x).unwrap()));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let once = rref(&m);
            let twice = rref(&once.matrix);
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.pivots, twice.pivots);
        }

        #[test]
        fn coset_invariance(m in small_matrix(), coeffs in proptest::collection::vec(-3i64..4, 6), w in proptest::collection::vec(-3i64..4, 5)) {
            let sub = column_space(&m);
            let n = m.rows();
            let inside: Vector = (0..m.cols()).fold(zero_vector(Q, n), |mut acc, c| {
                axpy(&mut acc, &Q.int(coeffs[c]), &m.column(c));
                acc
            });
            let v: Vector = w.iter().take(n).map(|&x| Q.int(x)).collect();
            let (r1, _) = sub.coset_reduce(&v).unwrap();
            let (r2, _) = sub.coset_reduce(&add_vectors(&v, &inside)).unwrap();
            prop_assert_eq!(r1, r2);
            prop_assert!(sub.contains(&inside).unwrap());
        }

        #[test]
        fn solve_is_exact(m in small_matrix(), xs in proptest::collection::vec(-3i64..4, 5)) {
            let x: Vector = xs.iter().take(m.cols()).map(|&a| Q.int(a)).collect();
            let rhs = m.mul_vec(&x).unwrap();
            let sol = solve(&m, &rhs).unwrap().unwrap();
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), rhs);
        }
    }
}
