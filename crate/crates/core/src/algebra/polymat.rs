//! Fraction-free linear algebra over the polynomial ring: rank over the
//! field of fractions, determinants, and the minor-vanishing membership test.

use super::field::Field;
use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;

/// Generic rank (rank over the rational-function field) together with the
/// pivot columns found by fraction-free elimination.
pub fn generic_rank(rows: &[Vec<Polynomial>]) -> (usize, Vec<usize>) {
    let (_, pivots, _) = bareiss(rows);
    (pivots.len(), pivots)
}

/// Bareiss elimination with row pivoting. Returns the reduced matrix, pivot
/// columns, and the sign of the row permutation. Every division is exact by
/// Sylvester's identity.
fn bareiss(rows: &[Vec<Polynomial>]) -> (Vec<Vec<Polynomial>>, Vec<usize>, i32) {
    let mut a: Vec<Vec<Polynomial>> = rows.to_vec();
    let n = a.len();
    let m = a.first().map_or(0, |r| r.len());
    let mut prev = Polynomial::one();
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..n {
            for j in c + 1..m {
                let t = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = Polynomial::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots, sign)
}

/// Determinant of a square polynomial matrix.
pub fn determinant(rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    if n == 0 {
        return Polynomial::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let (a, pivots, sign) = bareiss(rows);
    if pivots.len() < n {
        return Polynomial::zero();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// A nonvanishing maximal minor: the column set and its determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Polynomial,
}

/// If the generic rank of `rows` exceeds `bound`, return a nonzero
/// `(bound+1)`-minor as a certificate; otherwise every such minor vanishes.
pub fn rank_exceeds(rows: &[Vec<Polynomial>], bound: usize) -> Option<Minor> {
    let (rank, _) = generic_rank(rows);
    if rank <= bound {
        return None;
    }
    // Pick bound+1 independent rows, then bound+1 independent columns of them.
    let mut chosen_rows: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Polynomial>> = chosen_rows.iter().map(|&r| rows[r].clone()).collect();
        trial.push(rows[i].clone());
        if generic_rank(&trial).0 == trial.len() {
            chosen_rows.push(i);
            if chosen_rows.len() == bound + 1 {
                break;
            }
        }
    }
    let sub: Vec<Vec<Polynomial>> = chosen_rows.iter().map(|&r| rows[r].clone()).collect();
    let (_, cols) = generic_rank(&sub);
    let square: Vec<Vec<Polynomial>> =
        sub.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
    let value = determinant(&square);
    debug_assert!(!value.is_zero());
    Some(Minor { rows: chosen_rows, cols, value })
}

/// Enumerate all `size`-minors and report whether they all vanish. This is
/// the literal form of the membership test; `rank_exceeds` is the fast path.
pub fn all_minors_vanish(rows: &[Vec<Polynomial>], size: usize) -> bool {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if size > n || size > m {
        return true;
    }
    for rs in combinations(n, size) {
        for cs in combinations(m, size) {
            let sq: Vec<Vec<Polynomial>> =
                rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
            if !laplace_det(&sq).is_zero() {
                return false;
            }
        }
    }
    true
}

fn laplace_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * &laplace_det(&sub);
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

/// Polynomial frame of the right kernel `{v : rows · v = 0}` over the
/// rational-function field. Pivots prefer constant entries so that frames of
/// the form `[I | B]` keep polynomial kernels; remaining denominators are
/// cleared by multiplying each vector by the product of its distinct ones.
pub fn kernel_frame(rows: &[Vec<Polynomial>], ncols: usize) -> Vec<Vec<Polynomial>> {
    let mut a: Vec<Vec<RationalFunction>> =
        rows.iter().map(|r| r.iter().cloned().map(RationalFunction::from_poly).collect()).collect();
    let nrows = a.len();
    let mut used_rows = vec![false; nrows];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let weight = |f: &RationalFunction| -> u32 {
        f.numerator().degree().unwrap_or(0) + f.denominator().degree().unwrap_or(0)
    };
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in a.iter().enumerate() {
            if used_rows[r] {
                continue;
            }
            for (c, v) in row.iter().enumerate() {
                if v.is_zero() || pivots.iter().any(|&(_, pc)| pc == c) {
                    continue;
                }
                let w = weight(v);
                if best.map_or(true, |(bw, _, _)| w < bw) {
                    best = Some((w, r, c));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in 0..ncols {
            if !a[r][j].is_zero() {
                a[r][j] = a[r][j].clone() * inv.clone();
            }
        }
        for i in 0..nrows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..ncols {
                if !a[r][j].is_zero() {
                    a[i][j] = a[i][j].clone() - factor.clone() * a[r][j].clone();
                }
            }
        }
        used_rows[r] = true;
        pivots.push((r, c));
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.iter().any(|&(_, pc)| pc == *c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RationalFunction::zero(); ncols];
            v[f] = RationalFunction::one();
            for &(r, c) in &pivots {
                v[c] = -a[r][f].clone();
            }
            clear_denominators(&v)
        })
        .collect()
}

/// Multiply by the product of the distinct denominators.
pub fn clear_denominators(v: &[RationalFunction]) -> Vec<Polynomial> {
    let mut dens: Vec<Polynomial> = Vec::new();
    for x in v {
        let d = x.denominator();
        if !d.is_constant() && !dens.contains(d) {
            dens.push(d.clone());
        }
    }
    let mut factor = RationalFunction::one();
    for d in dens {
        factor = factor * RationalFunction::from_poly(d);
    }
    v.iter()
        .map(|x| (x.clone() * factor.clone()).as_polynomial().expect("denominator cleared"))
        .collect()
}

/// All increasing `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
