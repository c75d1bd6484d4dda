//! Matrix-product codes `[C_1 … C_M]·A`.
//!
//! A codeword is the concatenation of the `N` blocks `Σ_i a_{ik} c_i`
//! (`k = 1..N`) for constituent codewords `c_i ∈ C_i`. Rows of `A` and
//! constituents are indexed from 0 in this API; reports and files print them
//! from 1.

mod bounds;
mod check;

pub use check::{
    dc_conditions, dc_conditions_with, reduce_requirements, so_conditions, CheckReport, Condition,
    ConditionLabel, Conditions, GeneralCheckConfig, Verdict, Witness,
};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::lincode::{check_ell, LinearCode};
use crate::matgf::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpCode {
    constituents: Vec<LinearCode>,
    matrix: Matrix,
}

/// A Galois dual in matrix-product form together with its expansion.
#[derive(Clone, Debug)]
pub struct MpDual {
    /// `[C_1^{⊥ℓ} … C_M^{⊥ℓ} F … F]·(σ^{e-ℓ}(B)^{-1})ᵀ`
    pub mp: MpCode,
    /// The invertible completion `B` of the defining matrix.
    pub completion: Matrix,
    pub code: LinearCode,
}

/// Rows of a defining matrix split into independent blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPartition {
    pub blocks: Vec<Vec<usize>>,
    /// Zero rows, which contribute nothing to the code.
    pub discarded: Vec<usize>,
}

impl RowPartition {
    /// Greedy ascending scan: each block takes every remaining nonzero row
    /// that is independent of the rows already in it.
    pub fn of(a: &Matrix) -> RowPartition {
        let (zero, mut rest): (Vec<usize>, Vec<usize>) =
            (0..a.rows()).partition(|&r| a.row(r).iter().all(|x| x.is_zero()));
        let mut blocks = Vec::new();
        while !rest.is_empty() {
            let mut block: Vec<usize> = Vec::new();
            let mut left = Vec::new();
            for &r in &rest {
                let mut trial = block.clone();
                trial.push(r);
                let sub = a.row_submatrix(&trial).expect("valid rows");
                if sub.rank() == trial.len() {
                    block = trial;
                } else {
                    left.push(r);
                }
            }
            blocks.push(block);
            rest = left;
        }
        RowPartition {
            blocks,
            discarded: zero,
        }
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1 && self.discarded.is_empty()
    }
}

impl MpCode {
    pub fn new(constituents: Vec<LinearCode>, matrix: Matrix) -> Result<MpCode> {
        if constituents.len() != matrix.rows() {
            return Err(Error::dims(format!(
                "{} constituents for a defining matrix with {} rows",
                constituents.len(),
                matrix.rows()
            )));
        }
        if matrix.rows() == 0 || matrix.cols() == 0 {
            return Err(Error::dims("defining matrix must be nonempty"));
        }
        let n = constituents[0].len();
        for (index, c) in constituents.iter().enumerate() {
            if c.field() != matrix.field() {
                return Err(Error::FieldMismatch);
            }
            if c.len() != n {
                return Err(Error::ConstituentLength {
                    index: index + 1,
                    expected: n,
                    found: c.len(),
                });
            }
        }
        Ok(MpCode {
            constituents,
            matrix,
        })
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn constituents(&self) -> &[LinearCode] {
        &self.constituents
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Number of constituents `M`.
    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of blocks `N`.
    pub fn n_blocks(&self) -> usize {
        self.matrix.cols()
    }

    /// Constituent length `n`.
    pub fn constituent_len(&self) -> usize {
        self.constituents[0].len()
    }

    /// Expanded length `nN`.
    pub fn len(&self) -> usize {
        self.constituent_len() * self.n_blocks()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The MP code on the rows `rows` of `A` and their constituents.
    pub fn restrict(&self, rows: &[usize]) -> Result<MpCode> {
        let matrix = self.matrix.row_submatrix(rows)?;
        let constituents = rows.iter().map(|&r| self.constituents[r].clone()).collect();
        MpCode::new(constituents, matrix)
    }

    /// Generator `diag(G_1, …, G_M)·(A ⊗ I_n)`, row by row.
    pub fn generator(&self) -> Matrix {
        let f = self.field();
        let n = self.constituent_len();
        let nn = self.n_blocks();
        let mut rows = Vec::new();
        for (i, c) in self.constituents.iter().enumerate() {
            for g in c.generator().row_iter() {
                let mut word = vec![Elem::ZERO; n * nn];
                for k in 0..nn {
                    let a = self.matrix.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for (dst, &x) in word[k * n..(k + 1) * n].iter_mut().zip(g) {
                        *dst = f.mul(a, x);
                    }
                }
                rows.push(word);
            }
        }
        Matrix::from_row_vecs(f, n * nn, rows).expect("rows have length nN")
    }

    pub fn expand(&self) -> LinearCode {
        LinearCode::from_generator(&self.generator())
    }

    /// `C^{⊥ℓ}` in matrix-product form. Requires `rank(A) = M`; the completion
    /// appends unit rows at the non-pivot columns of `A`.
    pub fn dual_full_rank(&self, ell: u32) -> Result<MpDual> {
        let b = self.matrix.complete_to_invertible()?;
        self.dual_full_rank_with(&b, ell)
    }

    /// As [`MpCode::dual_full_rank`] with a caller-chosen completion `B`.
    pub fn dual_full_rank_with(&self, b: &Matrix, ell: u32) -> Result<MpDual> {
        check_ell(self.field(), ell)?;
        self.check_completion(b)?;
        let f = self.field();
        let e = f.degree();
        let transform = b.frobenius_map((e - ell) % e).inverse()?.transpose();
        let n = self.constituent_len();
        let mut constituents = self
            .constituents
            .iter()
            .map(|c| c.galois_dual(ell))
            .collect::<Result<Vec<_>>>()?;
        constituents.resize(self.n_blocks(), LinearCode::whole(f, n));
        let mp = MpCode::new(constituents, transform)?;
        let code = mp.expand();
        Ok(MpDual {
            mp,
            completion: b.clone(),
            code,
        })
    }

    pub(crate) fn check_completion(&self, b: &Matrix) -> Result<()> {
        let nn = self.n_blocks();
        if self.m() > nn {
            return Err(Error::RankDeficient {
                rank: self.matrix.rank(),
                rows: self.m(),
            });
        }
        if b.shape() != (nn, nn) {
            return Err(Error::dims(format!(
                "completion must be {nn}x{nn}, got {}x{}",
                b.rows(),
                b.cols()
            )));
        }
        if b.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if (0..self.m()).any(|r| b.row(r) != self.matrix.row(r)) {
            return Err(Error::dims(
                "completion must start with the rows of the defining matrix",
            ));
        }
        if b.rank() < nn {
            return Err(Error::Singular);
        }
        Ok(())
    }

    pub fn row_partition(&self) -> RowPartition {
        RowPartition::of(&self.matrix)
    }

    /// `C^{⊥ℓ}` for any defining matrix: the intersection of the duals of the
    /// full-rank codes on the blocks of [`RowPartition::of`].
    pub fn dual_general(&self, ell: u32) -> Result<LinearCode> {
        check_ell(self.field(), ell)?;
        let part = self.row_partition();
        let mut acc = LinearCode::whole(self.field(), self.len());
        for block in &part.blocks {
            let dual = self.restrict(block)?.dual_full_rank(ell)?.code;
            acc = acc.intersection(&dual)?;
        }
        Ok(acc)
    }

    /// Full-rank formula when it applies, partition intersection otherwise.
    pub fn dual(&self, ell: u32) -> Result<LinearCode> {
        if self.matrix.has_full_row_rank() {
            Ok(self.dual_full_rank(ell)?.code)
        } else {
            self.dual_general(ell)
        }
    }
}
