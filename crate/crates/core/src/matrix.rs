//! Dense matrices over `GF(p^m)` and the exact linear algebra built on them.
//!
//! Everything here is Gaussian elimination with first-nonzero pivoting, so the
//! bases returned by [`FFMatrix::nullspace`] and friends are reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
    field: Field,
}

impl PartialEq for FFMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field == other.field
    }
}

impl Eq for FFMatrix {}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FFMatrix {}x{} over GF({})",
            self.rows,
            self.cols,
            self.field.q()
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Plain serialized form: row-major entries in the integer encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

fn rref_in_place(data: &mut [Fe], rows: usize, cols: usize, field: &Field) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(data[r * cols + c]).expect("pivot is nonzero");
        if inv != 1 {
            let scale = field.mul_row(inv);
            for x in &mut data[r * cols + c..(r + 1) * cols] {
                *x = scale[*x as usize];
            }
        }
        let (before, rest) = data.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [Fe]| {
            let f = row[c];
            if f != 0 {
                let nf = field.mul_row(field.neg(f));
                for j in c..cols {
                    let y = pivot_row[j];
                    if y != 0 {
                        row[j] = field.add(row[j], nf[y as usize]);
                    }
                }
            }
        };
        for row in before.chunks_mut(cols) {
            eliminate(row);
        }
        for row in after.chunks_mut(cols) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl FFMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FFMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count");
        FFMatrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Fe>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self::from_vec(field, r, c, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn from_data(field: &Field, d: &MatrixData) -> Result<Self> {
        if d.entries.len() != d.rows || d.entries.iter().any(|r| r.len() != d.cols) {
            return Err(Error::Parse(format!(
                "matrix entries do not match {}x{}",
                d.rows, d.cols
            )));
        }
        let mut data = Vec::with_capacity(d.rows * d.cols);
        for row in &d.entries {
            for &x in row {
                data.push(field.element(x)?);
            }
        }
        Ok(Self::from_vec(field, d.rows, d.cols, data))
    }

    pub fn to_data(&self) -> MatrixData {
        MatrixData {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|&x| x as u32).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Fe))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = &self.field;
        let n = other.cols;
        let mut out = vec![0; self.rows * n];
        for i in 0..self.rows {
            let orow = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let scale = f.mul_row(a);
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = f.add(*o, scale[b as usize]);
                    }
                }
            }
        }
        FFMatrix {
            rows: self.rows,
            cols: n,
            data: out,
            field: f.clone(),
        }
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| {
                    if a == 0 || b == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(a, b))
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        FFMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            field: f.clone(),
        }
    }

    pub fn sub(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        FFMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            field: f.clone(),
        }
    }

    pub fn scale(&self, c: Fe) -> FFMatrix {
        let row = self.field.mul_row(c);
        let data = self.data.iter().map(|&a| row[a as usize]).collect();
        FFMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: Fe, other: &FFMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let row = self.field.mul_row(c);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = self.field.add(*a, row[b as usize]);
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> FFMatrix {
        assert!(self.is_square());
        let mut result = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn hstack(field: &Field, rows: usize, parts: &[&FFMatrix]) -> FFMatrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut offset = 0;
        for part in parts {
            assert_eq!(part.rows, rows);
            for i in 0..rows {
                out.data[i * cols + offset..i * cols + offset + part.cols]
                    .copy_from_slice(part.row(i));
            }
            offset += part.cols;
        }
        out
    }

    pub fn vstack(field: &Field, cols: usize, parts: &[&FFMatrix]) -> FFMatrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for part in parts {
            assert_eq!(part.cols, cols);
            data.extend_from_slice(&part.data);
        }
        FFMatrix {
            rows,
            cols,
            data,
            field: field.clone(),
        }
    }

    pub fn block_diag(field: &Field, parts: &[&FFMatrix]) -> FFMatrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for part in parts {
            out.set_block(r0, c0, part);
            r0 += part.rows;
            c0 += part.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FFMatrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> FFMatrix {
        let mut out = Self::zeros(&self.field, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            out.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> FFMatrix {
        let mut out = Self::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + jj] = self.get(i, j);
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> FFMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        FFMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
            field: self.field.clone(),
        }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &FFMatrix) -> FFMatrix {
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a != 0 {
                    out.set_block(i * other.rows, j * other.cols, &other.scale(a));
                }
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let mut data = self.data.clone();
        let pivots = rref_in_place(&mut data, self.rows, self.cols, &self.field);
        (
            FFMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
                field: self.field.clone(),
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Av = 0}` as the columns of a `cols x nullity` matrix.
    pub fn nullspace(&self) -> FFMatrix {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    /// Linearly independent columns of `self` spanning its column space (the
    /// pivot columns, in order).
    pub fn column_basis(&self) -> FFMatrix {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Indices of a maximal independent set of rows, earliest first.
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().rref().1
    }

    pub fn inverse(&self) -> Option<FFMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&self.field, n, &[self, &Self::identity(&self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Some `X` with `self * X == rhs`, if one exists.
    pub fn solve(&self, rhs: &FFMatrix) -> Option<FFMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Self::hstack(&self.field, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(&self.field, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    /// A left inverse `L` (`L * self == I`) of a matrix with independent columns.
    pub fn left_inverse(&self) -> Option<FFMatrix> {
        let rows = self.independent_rows();
        if rows.len() < self.cols {
            return None;
        }
        let square = self.select_rows(&rows);
        let inv = square.inverse()?;
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for (k, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                out.set(i, r, inv.get(i, k));
            }
        }
        Some(out)
    }

    /// Standard basis vectors completing the (independent) columns of `self`
    /// to a basis of the ambient space.
    pub fn complement_basis(&self) -> FFMatrix {
        let n = self.rows;
        let aug = Self::hstack(&self.field, n, &[self, &Self::identity(&self.field, n)]);
        let (_, pivots) = aug.rref();
        let extra: Vec<usize> = pivots
            .into_iter()
            .filter(|&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect();
        Self::identity(&self.field, n).select_cols(&extra)
    }

    /// Basis of the intersection of two column spaces.
    pub fn intersect_cols(&self, other: &FFMatrix) -> FFMatrix {
        assert_eq!(self.rows, other.rows);
        let a = self.column_basis();
        let b = other.column_basis();
        let joined = Self::hstack(&self.field, self.rows, &[&a, &b]);
        let null = joined.nullspace();
        let coeffs = null.block(0, a.cols, 0, null.cols);
        a.mul(&coeffs).column_basis()
    }

    /// Whether every column of `v` lies in the column space of `self`.
    pub fn spans(&self, v: &FFMatrix) -> bool {
        let joined = Self::hstack(&self.field, self.rows, &[self, v]);
        joined.rank() == self.rank()
    }

    /// Row-major flattening into a column vector.
    pub fn vectorize(&self) -> Vec<Fe> {
        self.data.clone()
    }
}

/// Rank and a nullspace basis (as columns) of `a`.
pub fn rank_and_nullspace(a: &FFMatrix) -> (usize, FFMatrix) {
    let null = a.nullspace();
    (a.cols() - null.cols(), null)
}

/// Basis of `{X (r x c) : X L_i = R_i X for all i}` by vectorizing the system and
/// taking one nullspace.
pub fn solve_intertwiner_system(
    field: &Field,
    constraints: &[(FFMatrix, FFMatrix)],
    dims: (usize, usize),
) -> Result<Vec<FFMatrix>> {
    let (r, c) = dims;
    for (l, rr) in constraints {
        if l.rows() != c || l.cols() != c || rr.rows() != r || rr.cols() != r {
            return Err(Error::DimensionMismatch(format!(
                "constraint ({}x{}, {}x{}) for unknown {r}x{c}",
                l.rows(),
                l.cols(),
                rr.rows(),
                rr.cols()
            )));
        }
    }
    let n = r * c;
    let mut system = FFMatrix::zeros(field, constraints.len() * n, n);
    for (k, (l, rr)) in constraints.iter().enumerate() {
        let base = k * n;
        for i in 0..r {
            for j in 0..c {
                let eq = base + i * c + j;
                // (X L)_{ij} = sum_b X_{ib} L_{bj}
                for b in 0..c {
                    let v = l.get(b, j);
                    if v != 0 {
                        let col = i * c + b;
                        system.set(eq, col, field.add(system.get(eq, col), v));
                    }
                }
                // (R X)_{ij} = sum_a R_{ia} X_{aj}
                for a in 0..r {
                    let v = rr.get(i, a);
                    if v != 0 {
                        let col = a * c + j;
                        system.set(eq, col, field.sub(system.get(eq, col), v));
                    }
                }
            }
        }
    }
    let null = system.nullspace();
    Ok((0..null.cols())
        .map(|k| FFMatrix::from_vec(field, r, c, null.col(k)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn identity_has_trivial_nullspace() {
        let f = FieldSpec::new(2, 2).unwrap();
        let (rank, null) = rank_and_nullspace(&FFMatrix::identity(&f, 4));
        assert_eq!(rank, 4);
        assert_eq!(null.cols(), 0);
    }

    #[test]
    fn zero_matrix_nullspace() {
        let f = FieldSpec::new(3, 1).unwrap();
        let (rank, null) = rank_and_nullspace(&FFMatrix::zeros(&f, 2, 3));
        assert_eq!(rank, 0);
        assert_eq!(null.cols(), 3);
    }

    #[test]
    fn all_ones_over_gf2() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = FFMatrix::from_rows(&f, &[vec![1, 1], vec![1, 1]]);
        let (rank, null) = rank_and_nullspace(&a);
        assert_eq!(rank, 1);
        assert_eq!(null.cols(), 1);
        assert_eq!(null.col(0), vec![1, 1]);
    }

    #[test]
    fn empty_matrices() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = FFMatrix::zeros(&f, 0, 0);
        assert_eq!(rank_and_nullspace(&a).0, 0);
        assert!(a.inverse().unwrap().rows() == 0);
    }

    #[test]
    fn intertwiner_without_constraints() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(solve_intertwiner_system(&f, &[], (2, 3)).unwrap().len(), 6);
        let id = FFMatrix::identity(&f, 3);
        let id2 = FFMatrix::identity(&f, 2);
        assert_eq!(
            solve_intertwiner_system(&f, &[(id, id2)], (2, 3))
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn intertwiner_dimension_mismatch() {
        let f = FieldSpec::new(2, 1).unwrap();
        let id = FFMatrix::identity(&f, 3);
        assert!(solve_intertwiner_system(&f, &[(id.clone(), id)], (2, 3)).is_err());
    }

    #[test]
    fn companion_commutant_matches_brute_force() {
        let f = FieldSpec::new(2, 1).unwrap();
        // companion matrix of x^2 + x + 1
        let c = FFMatrix::from_rows(&f, &[vec![0, 1], vec![1, 1]]);
        let basis = solve_intertwiner_system(&f, &[(c.clone(), c.clone())], (2, 2)).unwrap();
        let brute = (0..16u8)
            .filter(|bits| {
                let x = FFMatrix::from_vec(&f, 2, 2, (0..4).map(|k| (bits >> k) & 1).collect());
                x.mul(&c) == c.mul(&x)
            })
            .count();
        // a subspace of dimension d over GF(2) has 2^d elements
        assert_eq!(brute, 4);
        assert_eq!(basis.len(), 2);
        for x in &basis {
            assert_eq!(x.mul(&c), c.mul(x));
        }
    }

    #[test]
    fn inverse_and_solve() {
        let f = FieldSpec::new(3, 1).unwrap();
        let a = FFMatrix::from_rows(&f, &[vec![1, 2], vec![0, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b = FFMatrix::from_rows(&f, &[vec![1], vec![1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = FFMatrix::from_rows(&f, &[vec![1, 2], vec![2, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn left_inverse_and_complement() {
        let f = FieldSpec::new(2, 2).unwrap();
        let a = FFMatrix::from_rows(&f, &[vec![1, 0], vec![2, 1], vec![3, 3]]);
        let l = a.left_inverse().unwrap();
        assert!(l.mul(&a).is_identity());
        let c = a.complement_basis();
        assert_eq!(c.cols(), 1);
        let full = FFMatrix::hstack(&f, 3, &[&a, &c]);
        assert_eq!(full.rank(), 3);
    }

    #[test]
    fn intersection_of_planes() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = FFMatrix::from_rows(&f, &[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let b = FFMatrix::from_rows(&f, &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let i = a.intersect_cols(&b);
        assert_eq!(i.cols(), 1);
        assert_eq!(i.col(0), vec![0, 1, 0]);
    }
}
