//! Dense matrices over GF(p^e) with exact row reduction.
//!
//! Row and column indices are zero-based throughout the API.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Largest row count accepted by [`Matrix::is_nsc`].
pub const NSC_MAX_ROWS: usize = 12;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|&x| self.field.format_elem(x))
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|&x| self.field.format_elem(x))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.0 >= field.order()) {
            return Err(Error::ElementOutOfRange {
                enc: bad.0 as u64,
                q: field.order(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Build from rows of encodings. All rows must have length `cols`.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, cols: usize, rows: &[R]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::dims(format!(
                    "row of length {} in a {cols}-column matrix",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&x| Elem(x)));
        }
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    /// Build from rows of element tokens (see [`Field::parse_elem`]).
    pub fn from_tokens(field: &Field, rows: &[&str]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut cols = None;
        for r in rows {
            let toks: Vec<&str> = r.split_whitespace().collect();
            match cols {
                None => cols = Some(toks.len()),
                Some(c) if c != toks.len() => {
                    return Err(Error::dims("ragged rows".to_string()));
                }
                _ => {}
            }
            for t in toks {
                data.push(field.parse_elem(t)?);
            }
        }
        Matrix::from_vec(field, rows.len(), cols.unwrap_or(0), data)
    }

    pub fn from_row_vecs(field: &Field, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::dims("ragged rows".to_string()));
            }
            data.extend(r);
        }
        Matrix::from_vec(field, n, cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    /// Entries as raw encodings, row by row.
    pub fn to_encodings(&self) -> Vec<Vec<u32>> {
        self.row_iter()
            .map(|r| r.iter().map(|x| x.0).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = out.row_mut(r);
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::dims("cannot add matrices of different shapes"));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    /// Reduced row echelon form. Pivots are chosen as the first nonzero
    /// entry scanning down each column, columns left to right.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for x in m.row_mut(lead) {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for (x, &y) in m.row_mut(r).iter_mut().zip(&pivot_row).skip(c) {
                    *x = f.add(*x, f.mul(neg, y));
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn has_full_row_rank(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dims(format!(
                "{}x{} matrix has no inverse",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(red.matrix.column_block(n, 2 * n))
    }

    fn column_block(&self, from: usize, to: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, to - from);
        for r in 0..self.rows {
            out.row_mut(r).copy_from_slice(&self.row(r)[from..to]);
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::dims("hstack needs equal row counts"));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            out.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::dims("vstack needs equal column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(field: &Field, blocks: &[&Matrix]) -> Result<Matrix> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != *field {
                return Err(Error::FieldMismatch);
            }
            for r in 0..b.rows {
                out.row_mut(r0 + r)[c0..c0 + b.cols].copy_from_slice(b.row(r));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            f.mul(a, other.get(k, l)),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise `σ^ℓ`.
    pub fn frobenius_map(&self, ell: u32) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.frobenius(x, ell)).collect(),
        }
    }

    /// Rows `idx` in the listed order.
    pub fn row_submatrix(&self, idx: &[usize]) -> Result<Matrix> {
        let mut seen = vec![false; self.rows];
        for &i in idx {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    rows: self.rows,
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        })
    }

    fn column_submatrix(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (k, &c) in idx.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    /// Extend a full-row-rank `M×N` matrix to an invertible `N×N` one by
    /// appending the unit rows `e_j` for every non-pivot column `j` of the
    /// reduced form, in ascending order.
    pub fn complete_to_invertible(&self) -> Result<Matrix> {
        let red = self.rref();
        if red.pivots.len() != self.rows {
            return Err(Error::RankDeficient {
                rank: red.pivots.len(),
                rows: self.rows,
            });
        }
        let mut extra = Matrix::zeros(&self.field, self.cols - self.rows, self.cols);
        let mut k = 0;
        for j in 0..self.cols {
            if !red.pivots.contains(&j) {
                extra.set(k, j, Elem::ONE);
                k += 1;
            }
        }
        self.vstack(&extra)
    }

    /// Non-singular by columns: for each `i`, every `i×i` submatrix of the
    /// first `i` rows is invertible. Matrices with more rows than columns
    /// are never NSC.
    pub fn is_nsc(&self) -> Result<bool> {
        if self.rows > NSC_MAX_ROWS {
            return Err(Error::TooLarge(format!(
                "NSC test enumerates all minors; {} rows exceeds {NSC_MAX_ROWS}",
                self.rows
            )));
        }
        if self.rows > self.cols {
            return Ok(false);
        }
        for i in 1..=self.rows {
            let top: Vec<usize> = (0..i).collect();
            let head = self.row_submatrix(&top)?;
            let mut ok = true;
            for_each_combination(self.cols, i, |cols| {
                if ok && head.column_submatrix(cols).rank() < i {
                    ok = false;
                }
            });
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of the right kernel `{x : self · xᵀ = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> Matrix {
        let f = &self.field;
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Elem::ONE);
            for (r, &pc) in red.pivots.iter().enumerate() {
                let v = red.matrix.get(r, fc);
                out.set(k, pc, f.neg(v));
            }
        }
        out
    }

    /// Drop all-zero rows.
    pub fn nonzero_rows(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|x| !x.is_zero()))
            .collect();
        self.row_submatrix(&keep).expect("indices are valid")
    }
}

/// Calls `visit` with every increasing `k`-subset of `0..n`.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
