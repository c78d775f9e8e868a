//! Pointwise geometry of `Q^m ⊕ (Q^m)*`. Vectors of the big tangent space
//! are laid out as `[X^1..X^m | α_1..α_m]`.

use crate::algebra::{q, Field, Matrix, Rational, Subspace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BigVector {
    pub tangent: Vec<Rational>,
    pub cotangent: Vec<Rational>,
}

impl BigVector {
    pub fn new(tangent: Vec<Rational>, cotangent: Vec<Rational>) -> Result<Self> {
        if tangent.len() != cotangent.len() {
            return Err(Error::DimensionMismatch { expected: tangent.len(), found: cotangent.len() });
        }
        Ok(BigVector { tangent, cotangent })
    }

    pub fn m(&self) -> usize {
        self.tangent.len()
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        let mut v = self.tangent.clone();
        v.extend(self.cotangent.iter().cloned());
        v
    }

    pub fn from_flat(v: &[Rational]) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::OddAmbient(v.len()));
        }
        let m = v.len() / 2;
        Ok(BigVector { tangent: v[..m].to_vec(), cotangent: v[m..].to_vec() })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(q(0), |acc, (x, y)| acc + x * y)
}

/// `α(Y) + β(X)` on flat vectors, i.e. twice the metric.
fn g2_flat(u: &[Rational], v: &[Rational]) -> Rational {
    let m = u.len() / 2;
    dot(&u[m..], &v[..m]) + dot(&v[m..], &u[..m])
}

pub fn pairing_g(u: &BigVector, v: &BigVector) -> Result<Rational> {
    if u.m() != v.m() {
        return Err(Error::DimensionMismatch { expected: u.m(), found: v.m() });
    }
    Ok((dot(&u.cotangent, &v.tangent) + dot(&v.cotangent, &u.tangent)) / q(2))
}

pub fn form_omega(u: &BigVector, v: &BigVector) -> Result<Rational> {
    if u.m() != v.m() {
        return Err(Error::DimensionMismatch { expected: u.m(), found: v.m() });
    }
    Ok((dot(&u.cotangent, &v.tangent) - dot(&v.cotangent, &u.tangent)) / q(2))
}

fn half_dim(e: &Subspace) -> Result<usize> {
    let d = e.ambient_dim();
    if d % 2 != 0 {
        return Err(Error::OddAmbient(d));
    }
    Ok(d / 2)
}

/// Swap the tangent and cotangent halves of a flat vector.
fn swap_halves(v: &[Rational]) -> Vec<Rational> {
    let m = v.len() / 2;
    let mut w = v[m..].to_vec();
    w.extend(v[..m].iter().cloned());
    w
}

pub fn orthogonal_g(e: &Subspace) -> Result<Subspace> {
    half_dim(e)?;
    let swapped: Vec<Vec<Rational>> = e.basis_vectors().iter().map(|v| swap_halves(v)).collect();
    let m = Matrix::from_rows(swapped, e.ambient_dim());
    Ok(Subspace::kernel(&m))
}

pub fn is_isotropic(e: &Subspace) -> Result<bool> {
    half_dim(e)?;
    let b = e.basis_vectors();
    for i in 0..b.len() {
        for j in i..b.len() {
            if !Field::is_zero(&g2_flat(&b[i], &b[j])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Tangent projection `pr_TM` of a subspace of `Q^{2m}`.
pub fn tangent_projection(e: &Subspace) -> Result<Subspace> {
    let m = half_dim(e)?;
    let rows: Vec<Vec<Rational>> = e.basis_vectors().iter().map(|v| v[..m].to_vec()).collect();
    Ok(Subspace::span(m, &rows))
}

/// `V ⊕ 0` inside `Q^{2m}`.
pub fn embed_tangent(v: &Subspace) -> Subspace {
    let m = v.ambient_dim();
    let rows: Vec<Vec<Rational>> = v
        .basis_vectors()
        .into_iter()
        .map(|mut x| {
            x.extend(std::iter::repeat(q(0)).take(m));
            x
        })
        .collect();
    Subspace::span(2 * m, &rows)
}

/// `0 ⊕ W` inside `Q^{2m}`.
pub fn embed_cotangent(w: &Subspace) -> Subspace {
    let m = w.ambient_dim();
    let rows: Vec<Vec<Rational>> = w
        .basis_vectors()
        .into_iter()
        .map(|a| {
            let mut x = vec![q(0); m];
            x.extend(a);
            x
        })
        .collect();
    Subspace::span(2 * m, &rows)
}

/// A pair `E ⊆ E' = E^⊥` of subspaces of `Q^{2m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicData {
    m: usize,
    e: Subspace,
    e_prime: Subspace,
}

impl IsotropicData {
    /// Builds the data from an isotropic `E`, computing `E'`.
    pub fn from_isotropic(e: Subspace) -> Result<Self> {
        let m = half_dim(&e)?;
        if !is_isotropic(&e)? {
            return Err(Error::NotIsotropic(format!("{e:?}")));
        }
        let e_prime = orthogonal_g(&e)?;
        Ok(IsotropicData { m, e, e_prime })
    }

    /// Checks `E' = E^⊥` and isotropy.
    pub fn new(e: Subspace, e_prime: Subspace) -> Result<Self> {
        let d = Self::from_isotropic(e)?;
        if d.e_prime != e_prime {
            return Err(Error::InvalidStructure("E' is not the g-orthogonal of E".into()));
        }
        Ok(d)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn e(&self) -> &Subspace {
        &self.e
    }

    pub fn e_prime(&self) -> &Subspace {
        &self.e_prime
    }
}

/// `(ℰ, ℰ', ϖ)` with ϖ given on the RREF bases of ℰ and ℰ'.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicTriple {
    m: usize,
    cal_e: Subspace,
    cal_e_prime: Subspace,
    varpi: Matrix<Rational>,
}

impl CharacteristicTriple {
    pub fn new(cal_e: Subspace, cal_e_prime: Subspace, varpi: Matrix<Rational>) -> Result<Self> {
        let m = cal_e.ambient_dim();
        if !cal_e.is_subspace_of(&cal_e_prime)? {
            return Err(Error::NotContained);
        }
        if varpi.rows() != cal_e.dim() || varpi.cols() != cal_e_prime.dim() {
            return Err(Error::DimensionMismatch { expected: cal_e.dim(), found: varpi.rows() });
        }
        let t = CharacteristicTriple { m, cal_e, cal_e_prime, varpi };
        let s = t.restricted_to_cal_e();
        if s != s.transpose().map(|x| -x.clone()) {
            return Err(Error::NotSkew);
        }
        Ok(t)
    }

    /// Build from arbitrary bases of ℰ ⊆ ℰ' and the matrix of ϖ in them.
    pub fn from_bases(
        m: usize,
        e_basis: &[Vec<Rational>],
        e_prime_basis: &[Vec<Rational>],
        w: &Matrix<Rational>,
    ) -> Result<Self> {
        let cal_e = Subspace::span(m, e_basis);
        let cal_e_prime = Subspace::span(m, e_prime_basis);
        if cal_e.dim() != e_basis.len() || cal_e_prime.dim() != e_prime_basis.len() {
            return Err(Error::RankPrecondition("bases are not independent".into()));
        }
        // R = M V with R the RREF basis; ϖ in RREF bases is M_E W M_E'^T.
        let coords = |s: &Subspace, vs: &[Vec<Rational>]| -> Matrix<Rational> {
            let v = Matrix::from_rows(vs.to_vec(), m);
            let rows: Vec<Vec<Rational>> = s
                .basis_vectors()
                .iter()
                .map(|r| v.transpose().solve(r).expect("vector in span"))
                .collect();
            Matrix::from_rows(rows, vs.len())
        };
        let me = coords(&cal_e, e_basis);
        let mep = coords(&cal_e_prime, e_prime_basis);
        let wr = me.mul(w).mul(&mep.transpose());
        Self::new(cal_e, cal_e_prime, wr)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cal_e(&self) -> &Subspace {
        &self.cal_e
    }

    pub fn cal_e_prime(&self) -> &Subspace {
        &self.cal_e_prime
    }

    pub fn varpi(&self) -> &Matrix<Rational> {
        &self.varpi
    }

    /// ϖ(X, Y) for X ∈ ℰ, Y ∈ ℰ'.
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let cx = self.cal_e.coordinates(x).ok_or_else(|| Error::NotInSpan("X not in ℰ".into()))?;
        let cy = self.cal_e_prime.coordinates(y).ok_or_else(|| Error::NotInSpan("Y not in ℰ'".into()))?;
        Ok(dot(&cx, &self.varpi.mul_vec(&cy)))
    }

    /// Matrix of ϖ on ℰ × ℰ in the RREF basis of ℰ.
    pub fn restricted_to_cal_e(&self) -> Matrix<Rational> {
        let n = self.cal_e.dim();
        let mut s = Matrix::zeros(n, n);
        let basis = self.cal_e.basis_vectors();
        for (j, b) in basis.iter().enumerate() {
            let c = self.cal_e_prime.coordinates(b).expect("ℰ ⊆ ℰ'");
            let col = self.varpi.mul_vec(&c);
            for i in 0..n {
                s.set(i, j, col[i].clone());
            }
        }
        s
    }
}

/// Solve for the cotangent part of a lift `(x, α) ∈ E`.
fn lift_into(e: &Subspace, x: &[Rational]) -> Option<Vec<Rational>> {
    let m = e.ambient_dim() / 2;
    let b = e.basis();
    let cols_x: Vec<usize> = (0..m).collect();
    let cols_a: Vec<usize> = (m..2 * m).collect();
    let bx = b.select_columns(&cols_x);
    let c = bx.transpose().solve(x)?;
    let ba = b.select_columns(&cols_a);
    Some(ba.transpose().mul_vec(&c))
}

pub fn characteristic_triple(d: &IsotropicData) -> Result<CharacteristicTriple> {
    let cal_e = tangent_projection(&d.e)?;
    let cal_e_prime = tangent_projection(&d.e_prime)?;
    let eb = cal_e.basis_vectors();
    let epb = cal_e_prime.basis_vectors();
    let mut w = Matrix::zeros(eb.len(), epb.len());
    for (i, x) in eb.iter().enumerate() {
        let alpha = lift_into(&d.e, x).expect("ℰ is the projection of E");
        for (j, y) in epb.iter().enumerate() {
            w.set(i, j, dot(&alpha, y));
        }
    }
    CharacteristicTriple::new(cal_e, cal_e_prime, w)
}

/// Value of ϖ(X, Y) computed through a lift of Y into E' as `-β(X)`.
pub fn varpi_via_e_prime(d: &IsotropicData, x: &[Rational], y: &[Rational]) -> Option<Rational> {
    let beta = lift_into(&d.e_prime, y)?;
    Some(-dot(&beta, x))
}

/// `E = {(X, α) : X ∈ ℰ, α|ℰ' = ϖ(X, ·)}` and
/// `E' = {(Y, β) : Y ∈ ℰ', β|ℰ = -ϖ(·, Y)}`.
pub fn reconstruct(t: &CharacteristicTriple) -> Result<IsotropicData> {
    let m = t.m;
    let eb = t.cal_e.basis_vectors();
    let epb = t.cal_e_prime.basis_vectors();
    let b_e = Matrix::from_rows(eb.clone(), m);
    let b_ep = Matrix::from_rows(epb.clone(), m);

    let mut e_rows = Vec::new();
    for (i, x) in eb.iter().enumerate() {
        let rhs: Vec<Rational> = t.varpi.row(i).to_vec();
        let alpha = b_ep.solve(&rhs).expect("independent rows");
        let mut v = x.clone();
        v.extend(alpha);
        e_rows.push(v);
    }
    for kappa in t.cal_e_prime.annihilator().basis_vectors() {
        let mut v = vec![q(0); m];
        v.extend(kappa);
        e_rows.push(v);
    }

    let mut ep_rows = Vec::new();
    for (j, y) in epb.iter().enumerate() {
        let rhs: Vec<Rational> = t.varpi.column(j).into_iter().map(|x| -x).collect();
        let beta = b_e.solve(&rhs).expect("independent rows");
        let mut v = y.clone();
        v.extend(beta);
        ep_rows.push(v);
    }
    for nu in t.cal_e.annihilator().basis_vectors() {
        let mut v = vec![q(0); m];
        v.extend(nu);
        ep_rows.push(v);
    }

    let e = Subspace::span(2 * m, &e_rows);
    let e_prime = Subspace::span(2 * m, &ep_rows);
    IsotropicData::new(e, e_prime)
}

/// `D(E) = E + (0 ⊕ ann ℰ)`.
pub fn dirac_extension(d: &IsotropicData) -> Subspace {
    let cal_e = tangent_projection(&d.e).expect("even ambient");
    d.e.sum(&embed_cotangent(&cal_e.annihilator())).expect("same ambient")
}

/// Kernel of `X ↦ ϖ(X, ·)` as a subspace of `Q^m`.
pub fn flat_varpi_kernel(d: &IsotropicData) -> Result<Subspace> {
    let t = characteristic_triple(d)?;
    let coeffs = t.varpi.transpose().kernel();
    let b = Matrix::from_rows(t.cal_e.basis_vectors(), d.m);
    let vecs: Vec<Vec<Rational>> = coeffs.iter().map(|c| b.transpose().mul_vec(c)).collect();
    Ok(Subspace::span(d.m, &vecs))
}

/// `pr_TM(E ∩ (TM ⊕ 0))`.
pub fn tangent_part(d: &IsotropicData) -> Subspace {
    let t = embed_tangent(&Subspace::full(d.m));
    let i = d.e.intersection(&t).expect("same ambient");
    tangent_projection(&i).expect("even ambient")
}

/// Whether `E ∩ (TM ⊕ 0) = 0`.
pub fn is_graph_type(d: &IsotropicData) -> bool {
    tangent_part(d).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn bv(x: &[i64], a: &[i64]) -> BigVector {
        BigVector::new(x.iter().map(|&v| q(v)).collect(), a.iter().map(|&v| q(v)).collect()).unwrap()
    }

    fn flat(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&v| q(v)).collect()
    }

    #[test]
    fn metric_values() {
        assert_eq!(pairing_g(&bv(&[1, 0], &[0, 1]), &bv(&[0, 1], &[1, 0])).unwrap(), q(1));
        assert_eq!(pairing_g(&bv(&[1, 0], &[0, 0]), &bv(&[1, 0], &[0, 0])).unwrap(), q(0));
        assert_eq!(pairing_g(&bv(&[1, 0], &[1, 0]), &bv(&[1, 0], &[1, 0])).unwrap(), q(1));
        assert!(pairing_g(&bv(&[1], &[0]), &bv(&[1, 0], &[0, 0])).is_err());
    }

    #[test]
    fn omega_values() {
        assert_eq!(form_omega(&bv(&[1], &[0]), &bv(&[0], &[1])).unwrap(), qf(-1, 2));
        let v = bv(&[3, -1], &[2, 5]);
        assert_eq!(form_omega(&v, &v).unwrap(), q(0));
        assert_eq!(form_omega(&bv(&[1, 0], &[0, 1]), &bv(&[0, 1], &[1, 0])).unwrap(), q(0));
    }

    #[test]
    fn orthogonal_examples() {
        let line = Subspace::span(2, &[flat(&[1, 0])]);
        assert_eq!(orthogonal_g(&line).unwrap(), line);
        let e = Subspace::span(4, &[flat(&[1, 0, 0, 1])]);
        let o = orthogonal_g(&e).unwrap();
        assert_eq!(o.dim(), 3);
        assert!(o.contains(&flat(&[0, 1, -1, 0])).unwrap());
        assert!(orthogonal_g(&Subspace::full(4)).unwrap().is_zero());
        assert!(orthogonal_g(&Subspace::full(3)).is_err());
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic(&Subspace::span(4, &[flat(&[1, 0, 0, 1])])).unwrap());
        assert!(!is_isotropic(&Subspace::span(4, &[flat(&[1, 0, 1, 0])])).unwrap());
        assert!(is_isotropic(&Subspace::zero(4)).unwrap());
    }

    #[test]
    fn triple_of_graph_line() {
        let e = Subspace::span(4, &[flat(&[1, 0, 0, 1])]);
        let d = IsotropicData::from_isotropic(e).unwrap();
        let t = characteristic_triple(&d).unwrap();
        assert_eq!(t.cal_e(), &Subspace::span(2, &[flat(&[1, 0])]));
        assert_eq!(t.cal_e_prime(), &Subspace::full(2));
        assert_eq!(t.eval(&flat(&[1, 0]), &flat(&[1, 0])).unwrap(), q(0));
        assert_eq!(t.eval(&flat(&[1, 0]), &flat(&[0, 1])).unwrap(), q(1));
        // ϖ(X, Y) = -β(X) through the E' lift
        assert_eq!(varpi_via_e_prime(&d, &flat(&[1, 0]), &flat(&[0, 1])).unwrap(), q(1));
        assert_eq!(reconstruct(&t).unwrap(), d);
    }

    #[test]
    fn triple_of_cotangent_space() {
        let e = embed_cotangent(&Subspace::full(2));
        let d = IsotropicData::from_isotropic(e.clone()).unwrap();
        let t = characteristic_triple(&d).unwrap();
        assert!(t.cal_e().is_zero() && t.cal_e_prime().is_zero());
        let r = reconstruct(&t).unwrap();
        assert_eq!(r.e(), &e);
        assert_eq!(r.e().dim(), 2);
    }

    #[test]
    fn reconstruct_tangent_space() {
        let t = CharacteristicTriple::new(Subspace::full(2), Subspace::full(2), Matrix::zeros(2, 2)).unwrap();
        let r = reconstruct(&t).unwrap();
        assert_eq!(r.e(), &embed_tangent(&Subspace::full(2)));
    }

    #[test]
    fn non_skew_rejected() {
        let w = Matrix::from_rows(vec![vec![q(1)]], 1);
        let r = CharacteristicTriple::new(Subspace::full(1), Subspace::full(1), w);
        assert_eq!(r.unwrap_err(), Error::NotSkew);
    }

    #[test]
    fn dirac_extension_examples() {
        let e = Subspace::span(4, &[flat(&[1, 0, 0, 1])]);
        let d = IsotropicData::from_isotropic(e).unwrap();
        let de = dirac_extension(&d);
        assert_eq!(de, Subspace::span(4, &[flat(&[1, 0, 0, 0]), flat(&[0, 0, 0, 1])]));
        let zero = IsotropicData::from_isotropic(Subspace::zero(4)).unwrap();
        assert_eq!(dirac_extension(&zero), embed_cotangent(&Subspace::full(2)));
        let dirac = IsotropicData::from_isotropic(de.clone()).unwrap();
        assert_eq!(dirac_extension(&dirac), de);
    }

    #[test]
    fn flat_kernel_examples() {
        let e = Subspace::span(4, &[flat(&[1, 0, 0, 1])]);
        let d = IsotropicData::from_isotropic(e).unwrap();
        assert!(flat_varpi_kernel(&d).unwrap().is_zero());
        assert!(is_graph_type(&d));
        let tm = IsotropicData::from_isotropic(embed_tangent(&Subspace::full(2))).unwrap();
        assert_eq!(flat_varpi_kernel(&tm).unwrap(), Subspace::full(2));
        let cot = IsotropicData::from_isotropic(embed_cotangent(&Subspace::full(2))).unwrap();
        assert!(flat_varpi_kernel(&cot).unwrap().is_zero());
    }
}
