//! Linear codes in canonical (reduced row echelon) generator form.
//!
//! Two codes are equal exactly when their canonical generators are equal,
//! which makes `==`, containment and lattice operations cheap.

mod distance;

pub use distance::{Distance, DistanceConfig, Strategy};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matgf::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
    pivots: Vec<usize>,
}

pub(crate) fn check_ell(field: &Field, ell: u32) -> Result<()> {
    if ell < field.degree() {
        Ok(())
    } else {
        Err(Error::EllOutOfRange {
            ell,
            e: field.degree(),
        })
    }
}

/// `⟨a, b⟩_ℓ = Σ a_i σ^ℓ(b_i)`.
pub fn galois_inner_product(field: &Field, a: &[Elem], b: &[Elem], ell: u32) -> Result<Elem> {
    check_ell(field, ell)?;
    if a.len() != b.len() {
        return Err(Error::dims(format!(
            "vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, field.frobenius(y, ell)))
    }))
}

impl LinearCode {
    /// The code spanned by the rows of `g`.
    pub fn from_generator(g: &Matrix) -> LinearCode {
        let red = g.rref();
        let k = red.pivots.len();
        let keep: Vec<usize> = (0..k).collect();
        LinearCode {
            gen: red.matrix.row_submatrix(&keep).expect("pivot rows exist"),
            pivots: red.pivots,
        }
    }

    /// The zero code `O` of length `n`.
    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode {
            gen: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    /// The whole space `F = GF(q)^n`.
    pub fn whole(field: &Field, n: usize) -> LinearCode {
        LinearCode {
            gen: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    /// Code length `n`.
    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    /// Dimension `k`.
    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.len()
    }

    /// Canonical generator matrix (RREF, no zero rows).
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// A parity-check matrix: a basis of the Euclidean dual.
    pub fn parity_check(&self) -> Matrix {
        self.gen.kernel_basis()
    }

    fn compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::dims(format!(
                "codes of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn euclidean_dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.parity_check())
    }

    /// `C^{⊥ℓ} = σ^{e-ℓ}(C^⊥)`.
    pub fn galois_dual(&self, ell: u32) -> Result<LinearCode> {
        check_ell(self.field(), ell)?;
        let e = self.field().degree();
        Ok(self.euclidean_dual().frobenius((e - ell) % e))
    }

    /// `σ^ℓ(C)`, generated by `σ^ℓ(G)`.
    pub fn frobenius(&self, ell: u32) -> LinearCode {
        if ell.is_multiple_of(self.field().degree()) {
            return self.clone();
        }
        LinearCode::from_generator(&self.gen.frobenius_map(ell))
    }

    /// Membership test against the reduced generator.
    pub fn contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.len() {
            return false;
        }
        let f = self.field();
        let mut rest = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = rest[pc];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (x, &g) in rest.iter_mut().zip(self.gen.row(r)) {
                *x = f.add(*x, f.mul(neg, g));
            }
        }
        rest.iter().all(|x| x.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        self.compatible(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.gen.row_iter().all(|r| other.contains(r)))
    }

    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        self.compatible(other)?;
        Ok(LinearCode::from_generator(&self.gen.vstack(&other.gen)?))
    }

    /// `a ∩ b = (a^⊥ + b^⊥)^⊥`.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        self.compatible(other)?;
        Ok(self
            .euclidean_dual()
            .sum(&other.euclidean_dual())?
            .euclidean_dual())
    }

    /// `C ⊆ C^{⊥ℓ}`, tested as `G σ^ℓ(G)ᵀ = 0`.
    pub fn is_galois_self_orthogonal(&self, ell: u32) -> Result<bool> {
        check_ell(self.field(), ell)?;
        Ok(self
            .gen
            .matmul(&self.gen.frobenius_map(ell).transpose())?
            .is_zero())
    }

    /// `C^{⊥ℓ} ⊆ C`.
    pub fn is_galois_dual_containing(&self, ell: u32) -> Result<bool> {
        self.galois_dual(ell)?.is_subcode_of(self)
    }

    pub fn min_distance(&self, cfg: &DistanceConfig) -> Result<Distance> {
        distance::min_distance(self, cfg)
    }
}
