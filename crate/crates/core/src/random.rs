//! Seeded generators for randomized checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{q, qf, Matrix, Monomial, Polynomial, Rational, Subspace};
use crate::big_tangent::{reconstruct, CharacteristicTriple, IsotropicData};
use crate::calculus::{Bivector, OneForm, TwoForm, VectorField};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational, mostly integers in `[-3, 3]`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(-3..=3);
    if rng.gen_bool(0.2) {
        qf(n, rng.gen_range(1..=3))
    } else {
        q(n)
    }
}

pub fn vector<R: Rng>(rng: &mut R, d: usize) -> Vec<Rational> {
    (0..d).map(|_| rational(rng)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::from_rows((0..rows).map(|_| vector(rng, cols)).collect(), cols)
}

/// `k` independent vectors in `Q^d` (k ≤ d).
pub fn independent_vectors<R: Rng>(rng: &mut R, d: usize, k: usize) -> Vec<Vec<Rational>> {
    assert!(k <= d);
    loop {
        let vs: Vec<Vec<Rational>> = (0..k).map(|_| vector(rng, d)).collect();
        if Matrix::from_rows(vs.clone(), d).rank() == k {
            return vs;
        }
    }
}

pub fn subspace<R: Rng>(rng: &mut R, d: usize) -> Subspace {
    let k = rng.gen_range(0..=d);
    Subspace::span(d, &independent_vectors(rng, d, k))
}

/// Random isotropic data on `Q^{2m}`: random ℰ ⊆ ℰ' and a bilinear ϖ whose
/// restriction to ℰ × ℰ is skew, assembled by the reconstruction formula.
pub fn isotropic<R: Rng>(rng: &mut R, m: usize) -> IsotropicData {
    let dp = rng.gen_range(0..=m);
    let d = rng.gen_range(0..=dp);
    let vs = independent_vectors(rng, m, dp);
    let mut w = matrix(rng, d, dp);
    for i in 0..d {
        w.set(i, i, q(0));
        for j in 0..i {
            let v = -w.get(j, i).clone();
            w.set(i, j, v);
        }
    }
    let t = CharacteristicTriple::from_bases(m, &vs[..d], &vs, &w).expect("valid triple");
    reconstruct(&t).expect("valid reconstruction")
}

/// Polynomial in `nvars` variables of total degree ≤ `deg`.
pub fn polynomial<R: Rng>(rng: &mut R, nvars: usize, deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let mut e = vec![0u32; nvars];
        let mut budget = rng.gen_range(0..=deg);
        while budget > 0 && nvars > 0 {
            e[rng.gen_range(0..nvars)] += 1;
            budget -= 1;
        }
        p = p + Polynomial::monomial(Monomial::from_exponents(e), q(rng.gen_range(-3..=3)));
    }
    p
}

pub fn vector_field<R: Rng>(rng: &mut R, m: usize, deg: u32) -> VectorField {
    VectorField::new((0..m).map(|_| polynomial(rng, m, deg, 2)).collect())
}

pub fn one_form<R: Rng>(rng: &mut R, m: usize, deg: u32) -> OneForm {
    OneForm::new((0..m).map(|_| polynomial(rng, m, deg, 2)).collect())
}

pub fn two_form<R: Rng>(rng: &mut R, m: usize, deg: u32) -> TwoForm {
    let mut t = TwoForm::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            t.set(i, j, polynomial(rng, m, deg, 2));
        }
    }
    t
}

pub fn bivector<R: Rng>(rng: &mut R, m: usize, deg: u32) -> Bivector {
    let mut p = Bivector::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            p.set(i, j, polynomial(rng, m, deg, 2));
        }
    }
    p
}

/// Rows `[I_k | random entries of degree ≤ deg]` with columns permuted: a
/// polynomial frame of constant rank `k` on all of `Q^m`.
pub fn constant_rank_rows<R: Rng>(rng: &mut R, m: usize, k: usize, deg: u32) -> Vec<Vec<Polynomial>> {
    let mut perm: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    (0..k)
        .map(|r| {
            let mut row = vec![Polynomial::zero(); m];
            for c in 0..m {
                let v = if c < k {
                    if c == r {
                        Polynomial::one()
                    } else {
                        Polynomial::zero()
                    }
                } else if rng.gen_bool(0.6) {
                    polynomial(rng, m, deg, 2)
                } else {
                    Polynomial::zero()
                };
                row[perm[c]] = v;
            }
            row
        })
        .collect()
}
