use super::matrix::{IntMatrix, IntVec};
use super::sublattice::Sublattice;
use crate::error::{Error, Result};

/// A group homomorphism `φ: Z^n → Z^m`, `x ↦ A x`.
///
/// The transpose `φ^T: Z^m → Z^n` acts on the dual lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHom {
    matrix: IntMatrix,
}

impl LatticeHom {
    /// `matrix` has `target_dim` rows and `source_dim` columns.
    pub fn new(matrix: IntMatrix) -> Self {
        LatticeHom { matrix }
    }

    pub fn identity(d: usize) -> Self {
        LatticeHom::new(IntMatrix::identity(d))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        LatticeHom::new(IntMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, n: &IntVec) -> Result<IntVec> {
        n.check_dim(self.source_dim())?;
        Ok(self.matrix.mul_vec(n))
    }

    pub fn apply_dual(&self, m: &IntVec) -> Result<IntVec> {
        m.check_dim(self.target_dim())?;
        Ok(IntMatrix::vec_mul(m, &self.matrix))
    }

    /// `φ^T(L')` for a sublattice `L'` of the target's dual.
    pub fn apply_transpose(&self, l: &Sublattice) -> Result<Sublattice> {
        if l.ambient_dim() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                found: l.ambient_dim(),
            });
        }
        let images: Vec<IntVec> = l
            .basis_vectors()
            .iter()
            .map(|b| IntMatrix::vec_mul(b, &self.matrix))
            .collect();
        Sublattice::span(&images, self.source_dim())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeHom) -> Result<LatticeHom> {
        if other.target_dim() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: other.target_dim(),
            });
        }
        Ok(LatticeHom::new(self.matrix.mul(&other.matrix)))
    }
}
