use crate::error::{Error, Result};

use super::field::Field;
use super::matrix::Matrix;
use super::rational::Rational;

/// Linear subspace of `Q^d`, held as the nonzero rows of a reduced row-echelon
/// basis. Equal subspaces have identical representations.
#[derive(Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix<Rational>,
}

impl Subspace {
    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let m = Matrix::from_rows(vectors.to_vec(), ambient);
        let red = m.rref();
        let rows: Vec<usize> = (0..red.rank).collect();
        Subspace { ambient, basis: red.matrix.select_rows(&rows) }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient) }
    }

    /// Row space of a matrix.
    pub fn image_of_rows(m: &Matrix<Rational>) -> Self {
        Self::span(m.cols(), &m.to_rows())
    }

    /// Column space (image) of a matrix.
    pub fn image(m: &Matrix<Rational>) -> Self {
        Self::span(m.rows(), &m.transpose().to_rows())
    }

    /// Null space of a matrix.
    pub fn kernel(m: &Matrix<Rational>) -> Self {
        Self::span(m.cols(), &m.kernel())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<Rational> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.to_rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        Ok(Matrix::from_rows(rows, self.ambient).rank() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.sum(self)?.dim() == other.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        Ok(Subspace::span(self.ambient, &rows))
    }

    /// Annihilator with respect to the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient, &self.basis.kernel())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// A complement of `inner` inside `outer`, chosen greedily from the RREF
    /// basis of `outer` in pivot order.
    pub fn complement_in(inner: &Subspace, outer: &Subspace) -> Result<Subspace> {
        inner.check_ambient(outer)?;
        if !inner.is_subspace_of(outer)? {
            return Err(Error::NotContained);
        }
        let mut acc = inner.basis.to_rows();
        let mut chosen = Vec::new();
        let mut rank = inner.dim();
        for v in outer.basis.to_rows() {
            acc.push(v.clone());
            let r = Matrix::from_rows(acc.clone(), inner.ambient).rank();
            if r > rank {
                rank = r;
                chosen.push(v);
            } else {
                acc.pop();
            }
        }
        Ok(Subspace::span(inner.ambient, &chosen))
    }

    /// Image under the linear map `v -> m v` (m has `ambient` columns).
    pub fn map(&self, m: &Matrix<Rational>) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch { expected: m.cols(), found: self.ambient });
        }
        let imgs: Vec<Vec<Rational>> = self.basis.to_rows().iter().map(|v| m.mul_vec(v)).collect();
        Ok(Subspace::span(m.rows(), &imgs))
    }

    /// Preimage `{v : m v ∈ self}`.
    pub fn preimage(&self, m: &Matrix<Rational>) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: self.ambient });
        }
        // v ∈ preimage iff ann(self) · m v = 0.
        let ann = self.annihilator();
        let constraint = ann.basis.mul(m);
        Ok(Subspace::span(m.cols(), &constraint.kernel()))
    }

    /// Coordinates of `v` with respect to this subspace's basis rows.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.basis.transpose().solve(v)
    }

    pub fn is_zero_vector(v: &[Rational]) -> bool {
        v.iter().all(Field::is_zero)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = self
            .basis
            .to_rows()
            .iter()
            .map(|r| r.iter().map(crate::algebra::rational::format_rational).collect())
            .collect();
        write!(f, "Subspace(dim {} in Q^{}: {:?})", self.dim(), self.ambient, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn e(d: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![q(0); d];
        v[i] = q(1);
        v
    }

    #[test]
    fn sum_of_axes() {
        let a = Subspace::span(2, &[e(2, 0)]);
        let b = Subspace::span(2, &[e(2, 1)]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[e(3, 0), e(3, 1)]);
        let b = Subspace::span(3, &[e(3, 1), e(3, 2)]);
        assert_eq!(a.intersection(&b).unwrap(), Subspace::span(3, &[e(3, 1)]));
    }

    #[test]
    fn complement_direct_sum() {
        let inner = Subspace::span(3, &[e(3, 0)]);
        let c = Subspace::complement_in(&inner, &Subspace::full(3)).unwrap();
        assert_eq!(c.dim(), 2);
        let mut rows = inner.basis_vectors();
        rows.extend(c.basis_vectors());
        assert_eq!(Matrix::from_rows(rows, 3).rank(), 3);
    }

    #[test]
    fn complement_requires_containment() {
        let a = Subspace::span(2, &[e(2, 0)]);
        let b = Subspace::span(2, &[e(2, 1)]);
        assert!(matches!(Subspace::complement_in(&a, &b), Err(Error::NotContained)));
    }

    #[test]
    fn kernel_and_image_examples() {
        let id = Matrix::<Rational>::identity(3);
        assert!(Subspace::kernel(&id).is_zero());
        let m = Matrix::from_rows(vec![vec![q(1), q(0)]], 2);
        assert_eq!(Subspace::kernel(&m), Subspace::span(2, &[e(2, 1)]));
        let m = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2);
        assert_eq!(Subspace::image(&m), Subspace::span(2, &[vec![q(1), q(2)]]));
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(a.sum(&b).is_err());
    }
}
