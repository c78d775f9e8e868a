//! Pullback and pushforward of subspaces of the big tangent space along a
//! linear map `f_*: Q^n → Q^m` with transpose `f^*: (Q^m)* → (Q^n)*`.

use crate::algebra::{q, Matrix, Rational, Subspace};
use crate::big_tangent::{embed_cotangent, embed_tangent, orthogonal_g};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    matrix: Matrix<Rational>,
}

impl LinearMap {
    /// `matrix` is `m × n` and acts on tangent vectors.
    pub fn new(matrix: Matrix<Rational>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn transposed(&self) -> LinearMap {
        LinearMap { matrix: self.matrix.transpose() }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    /// `ker f_* ⊕ 0` in `Q^{2n}`.
    pub fn ker_push(&self) -> Subspace {
        embed_tangent(&Subspace::kernel(&self.matrix))
    }

    /// `0 ⊕ ker f^*` in `Q^{2m}`.
    pub fn ker_pull(&self) -> Subspace {
        embed_cotangent(&Subspace::kernel(&self.matrix.transpose()))
    }

    /// `im f_* ⊕ T*M` in `Q^{2m}`.
    pub fn image_push_full(&self) -> Subspace {
        let m = self.target_dim();
        embed_tangent(&Subspace::image(&self.matrix))
            .sum(&embed_cotangent(&Subspace::full(m)))
            .expect("same ambient")
    }

    /// `TN ⊕ im f^*` in `Q^{2n}`.
    pub fn image_pull_full(&self) -> Subspace {
        let n = self.source_dim();
        embed_tangent(&Subspace::full(n))
            .sum(&embed_cotangent(&Subspace::image(&self.matrix.transpose())))
            .expect("same ambient")
    }
}

fn check(e: &Subspace, d: usize) -> Result<()> {
    if e.ambient_dim() != 2 * d {
        return Err(Error::DimensionMismatch { expected: 2 * d, found: e.ambient_dim() });
    }
    Ok(())
}

/// `f^*E = {(X, f^*α) : (f_*X, α) ∈ E}`.
pub fn pullback_subspace(l: &LinearMap, e: &Subspace) -> Result<Subspace> {
    let (n, m) = (l.source_dim(), l.target_dim());
    check(e, m)?;
    let a = &l.matrix;
    let at = a.transpose();
    // (X, α) ∈ Q^n × Q^m with r_X·AX + r_α·α = 0 for r ∈ ann E.
    let rows: Vec<Vec<Rational>> = e
        .annihilator()
        .basis_vectors()
        .iter()
        .map(|r| {
            let mut row = at.mul_vec(&r[..m]);
            row.extend(r[m..].iter().cloned());
            row
        })
        .collect();
    let pairs = Matrix::from_rows(rows, n + m).kernel();
    let images: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|v| {
            let mut w = v[..n].to_vec();
            w.extend(at.mul_vec(&v[n..]));
            w
        })
        .collect();
    Ok(Subspace::span(2 * n, &images))
}

/// `f_*E = {(f_*X, α) : (X, f^*α) ∈ E}`.
pub fn pushforward_subspace(l: &LinearMap, e: &Subspace) -> Result<Subspace> {
    let (n, m) = (l.source_dim(), l.target_dim());
    check(e, n)?;
    let a = &l.matrix;
    // (X, α) ∈ Q^n × Q^m with r_X·X + r_α·A^Tα = 0 for r ∈ ann E.
    let rows: Vec<Vec<Rational>> = e
        .annihilator()
        .basis_vectors()
        .iter()
        .map(|r| {
            let mut row = r[..n].to_vec();
            row.extend(a.mul_vec(&r[n..]));
            row
        })
        .collect();
    let pairs = Matrix::from_rows(rows, n + m).kernel();
    let images: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|v| {
            let mut w = a.mul_vec(&v[..n]);
            w.extend(v[n..].iter().cloned());
            w
        })
        .collect();
    Ok(Subspace::span(2 * m, &images))
}

/// `S = E ∩ (im f_* ⊕ T*M)`.
pub fn s_space(l: &LinearMap, e: &Subspace) -> Result<Subspace> {
    check(e, l.target_dim())?;
    e.intersection(&l.image_push_full())
}

/// `Σ = E ∩ (TN ⊕ im f^*)`.
pub fn sigma_space(l: &LinearMap, e: &Subspace) -> Result<Subspace> {
    check(e, l.source_dim())?;
    e.intersection(&l.image_pull_full())
}

/// Terms of the pullback dimension formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackDims {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub e_cap_ker: usize,
    pub e_prime_cap_ker: usize,
    pub s: usize,
    pub s_prime: usize,
    pub predicted: usize,
}

/// `dim f^*E = n − m + k + dim(E' ∩ ker f^*) − dim(E ∩ ker f^*)`.
pub fn predict_pullback_dim(l: &LinearMap, e: &Subspace) -> Result<PullbackDims> {
    let (n, m) = (l.source_dim(), l.target_dim());
    check(e, m)?;
    let ep = orthogonal_g(e)?;
    let ker = l.ker_pull();
    let e_cap_ker = e.intersection(&ker)?.dim();
    let e_prime_cap_ker = ep.intersection(&ker)?.dim();
    let predicted = n as i64 - m as i64 + e.dim() as i64 + e_prime_cap_ker as i64 - e_cap_ker as i64;
    Ok(PullbackDims {
        n,
        m,
        k: e.dim(),
        e_cap_ker,
        e_prime_cap_ker,
        s: s_space(l, e)?.dim(),
        s_prime: s_space(l, &ep)?.dim(),
        predicted: usize::try_from(predicted).expect("nonnegative dimension"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardDims {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub e_cap_ker: usize,
    pub e_prime_cap_ker: usize,
    pub sigma: usize,
    pub sigma_prime: usize,
    pub predicted: usize,
}

/// `dim f_*E = m − n + k + dim(E' ∩ ker f_*) − dim(E ∩ ker f_*)`.
pub fn predict_pushforward_dim(l: &LinearMap, e: &Subspace) -> Result<PushforwardDims> {
    let (n, m) = (l.source_dim(), l.target_dim());
    check(e, n)?;
    let ep = orthogonal_g(e)?;
    let ker = l.ker_push();
    let e_cap_ker = e.intersection(&ker)?.dim();
    let e_prime_cap_ker = ep.intersection(&ker)?.dim();
    let predicted = m as i64 - n as i64 + e.dim() as i64 + e_prime_cap_ker as i64 - e_cap_ker as i64;
    Ok(PushforwardDims {
        n,
        m,
        k: e.dim(),
        e_cap_ker,
        e_prime_cap_ker,
        sigma: sigma_space(l, e)?.dim(),
        sigma_prime: sigma_space(l, &ep)?.dim(),
        predicted: usize::try_from(predicted).expect("nonnegative dimension"),
    })
}

/// `f_* f^* E = E` for surjective `f`.
pub fn pushpull_roundtrip(l: &LinearMap, e: &Subspace) -> Result<bool> {
    if !l.is_surjective() {
        return Err(Error::RankPrecondition("map is not surjective".into()));
    }
    Ok(&pushforward_subspace(l, &pullback_subspace(l, e)?)? == e)
}

/// `f^* f_* E = E` for injective `f`.
pub fn pullpush_roundtrip(l: &LinearMap, e: &Subspace) -> Result<bool> {
    if !l.is_injective() {
        return Err(Error::RankPrecondition("map is not injective".into()));
    }
    Ok(&pullback_subspace(l, &pushforward_subspace(l, e)?)? == e)
}

/// Projection `Q^m → Q^{keep.len()}` onto the listed coordinates.
pub fn coordinate_projection(m: usize, keep: &[usize]) -> LinearMap {
    let rows: Vec<Vec<Rational>> = keep
        .iter()
        .map(|&i| (0..m).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    LinearMap::new(Matrix::from_rows(rows, m))
}

/// Inclusion of `Q^n` into `Q^m` as the coordinates `slots`.
pub fn coordinate_inclusion(m: usize, slots: &[usize]) -> LinearMap {
    coordinate_projection(m, slots).transposed()
}
