//! Canonical local bases of `(E, E')` in adapted charts, and the
//! decomposability conditions read from their coefficients.

use crate::algebra::{q, Field, Matrix, Polynomial, Rational, RationalFunction, Subspace};
use crate::big_tangent::{
    characteristic_triple, dirac_extension, embed_cotangent, embed_tangent, tangent_projection, IsotropicData,
};
use crate::calculus::{BigSection, Chart, OneForm, VectorField};
use crate::error::{Error, Result};
use crate::structures::{check_integrability, BigIsotropicStructure, ConditionVerdict, Grid};
use crate::transport::{coordinate_inclusion, pullback_subspace, s_space, LinearMap};

type Rf = RationalFunction;

/// Pointwise seed data at `x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedBasis {
    pub x0: Vec<Vec<Rational>>,
    pub xi0: Vec<Vec<Rational>>,
    pub y0: Vec<Vec<Rational>>,
    pub eta0: Vec<Vec<Rational>>,
    pub kappa0: Vec<Vec<Rational>>,
    pub nu0: Vec<Vec<Rational>>,
    pub z0: Vec<Vec<Rational>>,
}

/// Element of `space` with tangent part `x` whose cotangent part vanishes on
/// the cotangent pivots of the RREF basis.
fn minimal_lift(space: &Subspace, x: &[Rational]) -> Option<Vec<Rational>> {
    let m = x.len();
    let mut v = vec![q(0); 2 * m];
    for row in space.basis_vectors() {
        let Some(p) = row.iter().position(|c| !c.is_zero()) else { continue };
        if p >= m {
            break;
        }
        let c = x[p].clone();
        if c.is_zero() {
            continue;
        }
        for (vi, ri) in v.iter_mut().zip(&row) {
            *vi += &c * ri;
        }
    }
    if v[..m] == *x {
        Some(v)
    } else {
        None
    }
}

pub fn seed_basis(d: &IsotropicData) -> Result<SeedBasis> {
    let m = d.m();
    let cal_e = tangent_projection(d.e())?;
    let cal_ep = tangent_projection(d.e_prime())?;
    let x0 = cal_e.basis_vectors();
    let lift = |space: &Subspace, x: &Vec<Rational>| -> Result<Vec<Rational>> {
        minimal_lift(space, x)
            .map(|v| v[m..].to_vec())
            .ok_or_else(|| Error::InvalidStructure("tangent vector has no lift".into()))
    };
    let xi0 = x0.iter().map(|x| lift(d.e(), x)).collect::<Result<Vec<_>>>()?;
    let y0 = Subspace::complement_in(&cal_e, &cal_ep)?.basis_vectors();
    let eta0 = y0.iter().map(|y| lift(d.e_prime(), y)).collect::<Result<Vec<_>>>()?;
    let ann_ep = cal_ep.annihilator();
    let ann_e = cal_e.annihilator();
    let kappa0 = ann_ep.basis_vectors();
    let nu0 = Subspace::complement_in(&ann_ep, &ann_e)?.basis_vectors();
    let z0 = Subspace::complement_in(&cal_ep, &Subspace::full(m))?.basis_vectors();
    Ok(SeedBasis { x0, xi0, y0, eta0, kappa0, nu0, z0 })
}

/// Coordinates split as leaf `x^a`, `y^h`, `z^σ`, with frame
/// `X_a = ∂x^a`, `Y_h = ∂y^h + χ^σ_h ∂z^σ`, `Z_σ = ∂z^σ` and dual coframe
/// `θ^a = dx^a`, `φ^h = dy^h`, `ψ^σ = dz^σ − χ^σ_h dy^h`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedChart {
    chart: Chart,
    leaf: Vec<usize>,
    ys: Vec<usize>,
    zs: Vec<usize>,
    chi: Vec<Vec<Polynomial>>,
}

impl AdaptedChart {
    pub fn new(chart: Chart, leaf: Vec<usize>, ys: Vec<usize>, zs: Vec<usize>) -> Result<Self> {
        let m = chart.dim();
        let mut all: Vec<usize> = leaf.iter().chain(&ys).chain(&zs).copied().collect();
        all.sort_unstable();
        if all != (0..m).collect::<Vec<_>>() {
            return Err(Error::NotAdapted("coordinate split is not a partition".into()));
        }
        let chi = vec![vec![Polynomial::zero(); zs.len()]; ys.len()];
        Ok(AdaptedChart { chart, leaf, ys, zs, chi })
    }

    /// By coordinate names.
    pub fn from_names(chart: Chart, leaf: &[&str], ys: &[&str], zs: &[&str]) -> Result<Self> {
        let idx = |ns: &[&str]| -> Result<Vec<usize>> {
            ns.iter()
                .map(|n| chart.index_of(n).ok_or_else(|| Error::NotAdapted(format!("unknown coordinate {n}"))))
                .collect()
        };
        let (l, y, z) = (idx(leaf)?, idx(ys)?, idx(zs)?);
        Self::new(chart, l, y, z)
    }

    /// `chi[h][σ]` must vanish on the leaf `y = z = 0`.
    pub fn with_chi(mut self, chi: Vec<Vec<Polynomial>>) -> Result<Self> {
        if chi.len() != self.ys.len() || chi.iter().any(|r| r.len() != self.zs.len()) {
            return Err(Error::NotAdapted("twist has the wrong shape".into()));
        }
        let images = self.leaf_images();
        if chi.iter().flatten().any(|c| !c.substitute(&images).is_zero()) {
            return Err(Error::NotAdapted("twist does not vanish on the leaf".into()));
        }
        self.chi = chi;
        Ok(self)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn m(&self) -> usize {
        self.chart.dim()
    }

    pub fn leaf(&self) -> &[usize] {
        &self.leaf
    }

    pub fn ys(&self) -> &[usize] {
        &self.ys
    }

    pub fn zs(&self) -> &[usize] {
        &self.zs
    }

    pub fn p(&self) -> usize {
        self.leaf.len()
    }

    pub fn r(&self) -> usize {
        self.ys.len()
    }

    pub fn s(&self) -> usize {
        self.zs.len()
    }

    /// Substitution `y = z = 0`.
    fn leaf_images(&self) -> Vec<Polynomial> {
        (0..self.m())
            .map(|i| if self.leaf.contains(&i) { Polynomial::var(i) } else { Polynomial::zero() })
            .collect()
    }

    /// Point of the chart with the given leaf coordinates and `y = z = 0`.
    pub fn leaf_point(&self, xs: &[Rational]) -> Vec<Rational> {
        let mut p = vec![q(0); self.m()];
        for (a, &i) in self.leaf.iter().enumerate() {
            p[i] = xs[a].clone();
        }
        p
    }

    /// Point with `x^a = 0` and the given transversal coordinates.
    pub fn transversal_point(&self, yz: &[Rational]) -> Vec<Rational> {
        let mut p = vec![q(0); self.m()];
        for (j, &i) in self.ys.iter().chain(&self.zs).enumerate() {
            p[i] = yz[j].clone();
        }
        p
    }

    /// Column layout `[X | Y | Z | θ | φ | ψ]`.
    fn col_x(&self, a: usize) -> usize {
        a
    }
    fn col_y(&self, h: usize) -> usize {
        self.p() + h
    }
    fn col_z(&self, s: usize) -> usize {
        self.p() + self.r() + s
    }
    fn col_theta(&self, a: usize) -> usize {
        self.m() + a
    }
    fn col_phi(&self, h: usize) -> usize {
        self.m() + self.p() + h
    }
    fn col_psi(&self, s: usize) -> usize {
        self.m() + self.p() + self.r() + s
    }

    fn to_frame<F: Field>(&self, row: &[F], chi: &[Vec<F>]) -> Vec<F> {
        let m = self.m();
        let (v, a) = row.split_at(m);
        let mut out = vec![F::zero(); 2 * m];
        for (i, &c) in self.leaf.iter().enumerate() {
            out[self.col_x(i)] = v[c].clone();
            out[self.col_theta(i)] = a[c].clone();
        }
        for (h, &c) in self.ys.iter().enumerate() {
            out[self.col_y(h)] = v[c].clone();
            let mut phi = a[c].clone();
            for (s, &zc) in self.zs.iter().enumerate() {
                phi = phi + chi[h][s].clone() * a[zc].clone();
            }
            out[self.col_phi(h)] = phi;
        }
        for (s, &c) in self.zs.iter().enumerate() {
            let mut z = v[c].clone();
            for (h, &yc) in self.ys.iter().enumerate() {
                z = z - chi[h][s].clone() * v[yc].clone();
            }
            out[self.col_z(s)] = z;
            out[self.col_psi(s)] = a[c].clone();
        }
        out
    }

    fn from_frame<F: Field>(&self, row: &[F], chi: &[Vec<F>]) -> Vec<F> {
        let m = self.m();
        let mut out = vec![F::zero(); 2 * m];
        for (i, &c) in self.leaf.iter().enumerate() {
            out[c] = row[self.col_x(i)].clone();
            out[m + c] = row[self.col_theta(i)].clone();
        }
        for (s, &c) in self.zs.iter().enumerate() {
            let mut z = row[self.col_z(s)].clone();
            for h in 0..self.r() {
                z = z + chi[h][s].clone() * row[self.col_y(h)].clone();
            }
            out[c] = z;
            out[m + c] = row[self.col_psi(s)].clone();
        }
        for (h, &c) in self.ys.iter().enumerate() {
            out[c] = row[self.col_y(h)].clone();
            let mut a = row[self.col_phi(h)].clone();
            for s in 0..self.s() {
                a = a - chi[h][s].clone() * row[self.col_psi(s)].clone();
            }
            out[m + c] = a;
        }
        out
    }

    fn chi_rf(&self) -> Vec<Vec<Rf>> {
        self.chi.iter().map(|r| r.iter().cloned().map(Rf::from_poly).collect()).collect()
    }

    fn chi_at(&self, p: &[Rational]) -> Vec<Vec<Rational>> {
        self.chi.iter().map(|r| r.iter().map(|c| c.eval(p)).collect()).collect()
    }

    /// Standard flat row `[X | α]` to frame coordinates.
    pub fn section_to_frame(&self, s: &BigSection) -> Vec<Rf> {
        let row: Vec<Rf> = s.row().into_iter().map(Rf::from_poly).collect();
        self.to_frame(&row, &self.chi_rf())
    }

    /// Frame-coordinate row to standard flat row.
    pub fn frame_to_standard(&self, row: &[Rf]) -> Vec<Rf> {
        self.from_frame(row, &self.chi_rf())
    }

    pub fn frame_to_standard_at(&self, row: &[Rational], p: &[Rational]) -> Vec<Rational> {
        self.from_frame(row, &self.chi_at(p))
    }
}

/// Coefficients of the canonical basis, stored as frame-coordinate rows.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFrame {
    chart: AdaptedChart,
    x_rows: Vec<Vec<Rf>>,
    xi_rows: Vec<Vec<Rf>>,
    y_rows: Vec<Vec<Rf>>,
    theta_rows: Vec<Vec<Rf>>,
    locus: Vec<Polynomial>,
    extends_e: bool,
}

fn push_locus(locus: &mut Vec<Polynomial>, p: &Polynomial) {
    if !p.is_constant() && !locus.contains(p) {
        locus.push(p.clone());
    }
}

fn block(rows: &[Vec<Rf>], cols: &[usize]) -> Matrix<Rf> {
    Matrix::from_rows(rows.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect(), cols.len())
}

/// Rows whose restriction to `cols` is invertible.
fn select_invertible(rows: &[Vec<Rf>], cols: &[usize], step: &str) -> Result<Vec<usize>> {
    let t = block(rows, cols).transpose();
    let red = t.rref();
    if red.rank < cols.len() {
        return Err(Error::SingularStep(format!("{step}: coefficient matrix is singular")));
    }
    Ok(red.pivots)
}

/// Replace `rows` by `B^{-1} rows` where `B` is their `cols` block.
fn normalize_block(rows: Vec<Vec<Rf>>, cols: &[usize], step: &str, locus: &mut Vec<Polynomial>) -> Result<Vec<Vec<Rf>>> {
    if rows.is_empty() {
        return Ok(rows);
    }
    let b = block(&rows, cols);
    let det = b.determinant();
    if det.is_zero() {
        return Err(Error::SingularStep(format!("{step}: determinant vanishes identically")));
    }
    push_locus(locus, det.numerator());
    push_locus(locus, det.denominator());
    let inv = b.inverse().expect("nonzero determinant");
    let width = rows[0].len();
    let m = Matrix::from_rows(rows, width);
    Ok(inv.mul(&m).to_rows())
}

/// `t -= Σ_i t[cols[i]] · pivot_i` for each target row.
fn eliminate(targets: &mut [Vec<Rf>], pivots: &[Vec<Rf>], cols: &[usize]) {
    for t in targets.iter_mut() {
        for (i, &c) in cols.iter().enumerate() {
            let f = t[c].clone();
            if f.is_zero() {
                continue;
            }
            for (tj, pj) in t.iter_mut().zip(&pivots[i]) {
                if !pj.is_zero() {
                    *tj = tj.clone() - f.clone() * pj.clone();
                }
            }
        }
    }
}

fn split_selected(rows: Vec<Vec<Rf>>, sel: &[usize]) -> (Vec<Vec<Rf>>, Vec<Vec<Rf>>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        if sel.contains(&i) {
            a.push(r);
        } else {
            b.push(r);
        }
    }
    (a, b)
}

fn is_zero_row(r: &[Rf]) -> bool {
    r.iter().all(Field::is_zero)
}

/// Index ranges `(p, r, s)` required by the structure's ranks.
fn check_ranges(s: &BigIsotropicStructure, ac: &AdaptedChart) -> Result<()> {
    if ac.chart() != s.chart() {
        return Err(Error::ChartMismatch);
    }
    let (m, k) = (s.m(), s.rank());
    if ac.r() != m - k || ac.p() + ac.s() != k {
        return Err(Error::NotAdapted(format!(
            "split ({}, {}, {}) does not fit rank {k} in dimension {m}",
            ac.p(),
            ac.r(),
            ac.s()
        )));
    }
    Ok(())
}

/// The normalization cascade: invert the `A` block of `E`, clear `B^a`,
/// invert `β''`, clear the ψ-terms of `𝒳`, then complete by `𝒴`, `Θ` from
/// `E'` with `C'` and `λ'` inverted and `γ'` cleared.
pub fn normalize_frame(s: &BigIsotropicStructure, ac: &AdaptedChart) -> Result<CanonicalFrame> {
    check_ranges(s, ac)?;
    let (p, r, sg) = (ac.p(), ac.r(), ac.s());
    let xcols: Vec<usize> = (0..p).map(|a| ac.col_x(a)).collect();
    let ycols: Vec<usize> = (0..r).map(|h| ac.col_y(h)).collect();
    let phicols: Vec<usize> = (0..r).map(|h| ac.col_phi(h)).collect();
    let psicols: Vec<usize> = (0..sg).map(|u| ac.col_psi(u)).collect();
    let mut locus = Vec::new();

    let e: Vec<Vec<Rf>> = s.e_frame().iter().map(|t| ac.section_to_frame(t)).collect();
    let sel = select_invertible(&e, &xcols, "A")?;
    let (xs, mut xis) = split_selected(e, &sel);
    let mut xs = normalize_block(xs, &xcols, "A", &mut locus)?;
    eliminate(&mut xis, &xs, &xcols);
    let xis = normalize_block(xis, &psicols, "β''", &mut locus)?;
    eliminate(&mut xs, &xis, &psicols);

    let mut w: Vec<Vec<Rf>> = s.e_prime_frame().iter().map(|t| ac.section_to_frame(t)).collect();
    eliminate(&mut w, &xs, &xcols);
    eliminate(&mut w, &xis, &psicols);
    let sel = select_invertible(&w, &ycols, "C'")?;
    let (ys, mut rest) = split_selected(w, &sel);
    let mut ys = normalize_block(ys, &ycols, "C'", &mut locus)?;
    eliminate(&mut rest, &ys, &ycols);
    let sel = select_invertible(&rest, &phicols, "λ'")?;
    let (thetas, mut leftover) = split_selected(rest, &sel);
    let thetas = normalize_block(thetas, &phicols, "λ'", &mut locus)?;
    eliminate(&mut leftover, &thetas, &phicols);
    if !leftover.iter().all(|r| is_zero_row(r)) {
        return Err(Error::InvalidStructure("E' frame is not spanned by the completed basis".into()));
    }
    eliminate(&mut ys, &thetas, &phicols);

    let mut cf = CanonicalFrame {
        chart: ac.clone(),
        x_rows: xs,
        xi_rows: xis,
        y_rows: ys,
        theta_rows: thetas,
        locus,
        extends_e: true,
    };
    cf.collect_denominators();
    Ok(cf)
}

/// Reduced row-echelon oracle: `E` reduced with pivots on the `X` and `ψ`
/// columns, `E'` with pivots on `X`, `ψ`, `Y`, `φ`.
pub fn canonical_by_rref(s: &BigIsotropicStructure, ac: &AdaptedChart) -> Result<CanonicalFrame> {
    check_ranges(s, ac)?;
    let (p, r, sg, m) = (ac.p(), ac.r(), ac.s(), ac.m());
    let mut lead: Vec<usize> = (0..p).map(|a| ac.col_x(a)).collect();
    lead.extend((0..sg).map(|u| ac.col_psi(u)));
    let e_lead = lead.clone();
    lead.extend((0..r).map(|h| ac.col_y(h)));
    lead.extend((0..r).map(|h| ac.col_phi(h)));
    let ep_lead = lead;
    let reduce = |frame: &[BigSection], lead: &[usize]| -> Result<Vec<Vec<Rf>>> {
        let mut order = lead.to_vec();
        order.extend((0..2 * m).filter(|c| !lead.contains(c)));
        let rows: Vec<Vec<Rf>> = frame.iter().map(|t| ac.section_to_frame(t)).collect();
        let red = block(&rows, &order).rref();
        if red.pivots != (0..lead.len()).collect::<Vec<_>>() {
            return Err(Error::SingularStep("pivot columns differ from the canonical shape".into()));
        }
        Ok((0..lead.len())
            .map(|i| {
                let mut out = vec![Rf::zero(); 2 * m];
                for (j, &c) in order.iter().enumerate() {
                    out[c] = red.matrix.get(i, j).clone();
                }
                out
            })
            .collect())
    };
    let e = reduce(s.e_frame(), &e_lead)?;
    let ep = reduce(s.e_prime_frame(), &ep_lead)?;
    let mut cf = CanonicalFrame {
        chart: ac.clone(),
        x_rows: e[..p].to_vec(),
        xi_rows: e[p..].to_vec(),
        y_rows: ep[p + sg..p + sg + r].to_vec(),
        theta_rows: ep[p + sg + r..].to_vec(),
        locus: Vec::new(),
        extends_e: true,
    };
    cf.collect_denominators();
    Ok(cf)
}

fn coef(rows: &[Vec<Rf>], cols: impl Fn(usize) -> usize, n: usize) -> Matrix<Rf> {
    Matrix::from_rows(rows.iter().map(|r| (0..n).map(|j| r[cols(j)].clone()).collect()).collect(), n)
}

impl CanonicalFrame {
    fn collect_denominators(&mut self) {
        let mut locus = std::mem::take(&mut self.locus);
        for r in self.all_rows() {
            for c in r {
                push_locus(&mut locus, c.denominator());
            }
        }
        self.locus = locus;
    }

    fn all_rows(&self) -> impl Iterator<Item = &Vec<Rf>> {
        self.x_rows.iter().chain(&self.xi_rows).chain(&self.y_rows).chain(&self.theta_rows)
    }

    pub fn chart(&self) -> &AdaptedChart {
        &self.chart
    }

    /// Equal rows in the same chart; the recorded loci may differ.
    pub fn same_basis(&self, other: &CanonicalFrame) -> bool {
        self.chart == other.chart
            && self.x_rows == other.x_rows
            && self.xi_rows == other.xi_rows
            && self.y_rows == other.y_rows
            && self.theta_rows == other.theta_rows
            && self.extends_e == other.extends_e
    }

    /// Polynomials that must not vanish where the frame is used.
    pub fn validity_locus(&self) -> &[Polynomial] {
        &self.locus
    }

    pub fn is_valid_at(&self, p: &[Rational]) -> bool {
        self.locus.iter().all(|f| !f.eval(p).is_zero())
    }

    pub fn extends_e(&self) -> bool {
        self.extends_e
    }

    pub fn x_rows(&self) -> &[Vec<Rf>] {
        &self.x_rows
    }
    pub fn xi_rows(&self) -> &[Vec<Rf>] {
        &self.xi_rows
    }
    pub fn y_rows(&self) -> &[Vec<Rf>] {
        &self.y_rows
    }
    pub fn theta_rows(&self) -> &[Vec<Rf>] {
        &self.theta_rows
    }

    /// `A'^h_a` at `[a][h]`.
    pub fn a_prime(&self) -> Matrix<Rf> {
        coef(&self.x_rows, |h| self.chart.col_y(h), self.chart.r())
    }
    /// `A''^σ_a` at `[a][σ]`.
    pub fn a_second(&self) -> Matrix<Rf> {
        coef(&self.x_rows, |s| self.chart.col_z(s), self.chart.s())
    }
    /// `α^a_b` at `[a][b]`.
    pub fn alpha(&self) -> Matrix<Rf> {
        coef(&self.x_rows, |b| self.chart.col_theta(b), self.chart.p())
    }
    /// `α'^a_h` at `[a][h]`.
    pub fn alpha_prime(&self) -> Matrix<Rf> {
        coef(&self.x_rows, |h| self.chart.col_phi(h), self.chart.r())
    }
    /// `B'^h_u` at `[u][h]`.
    pub fn b_prime(&self) -> Matrix<Rf> {
        coef(&self.xi_rows, |h| self.chart.col_y(h), self.chart.r())
    }
    /// `B''^σ_u` at `[u][σ]`.
    pub fn b_second(&self) -> Matrix<Rf> {
        coef(&self.xi_rows, |s| self.chart.col_z(s), self.chart.s())
    }
    /// `β^u_a` at `[u][a]`.
    pub fn beta(&self) -> Matrix<Rf> {
        coef(&self.xi_rows, |a| self.chart.col_theta(a), self.chart.p())
    }
    /// `β'^u_h` at `[u][h]`.
    pub fn beta_prime(&self) -> Matrix<Rf> {
        coef(&self.xi_rows, |h| self.chart.col_phi(h), self.chart.r())
    }
    /// `C''^σ_h` at `[h][σ]`.
    pub fn c_second(&self) -> Matrix<Rf> {
        coef(&self.y_rows, |s| self.chart.col_z(s), self.chart.s())
    }
    /// `γ^h_a` at `[h][a]`.
    pub fn gamma(&self) -> Matrix<Rf> {
        coef(&self.y_rows, |a| self.chart.col_theta(a), self.chart.p())
    }
    /// `L''^σ_q` at `[q][σ]`.
    pub fn l_second(&self) -> Matrix<Rf> {
        coef(&self.theta_rows, |s| self.chart.col_z(s), self.chart.s())
    }
    /// `λ^q_a` at `[q][a]`.
    pub fn lambda(&self) -> Matrix<Rf> {
        coef(&self.theta_rows, |a| self.chart.col_theta(a), self.chart.p())
    }

    /// Whether every row has the canonical shape: unit and zero entries on
    /// the prescribed columns.
    pub fn has_canonical_shape(&self) -> bool {
        let c = &self.chart;
        let (p, r, s) = (c.p(), c.r(), c.s());
        let unit = |row: &[Rf], col: usize, on: bool| {
            if on {
                row[col] == Rf::one()
            } else {
                row[col].is_zero()
            }
        };
        let x_ok = self.x_rows.iter().enumerate().all(|(a, row)| {
            (0..p).all(|b| unit(row, c.col_x(b), a == b)) && (0..s).all(|u| unit(row, c.col_psi(u), false))
        });
        let xi_ok = self.xi_rows.iter().enumerate().all(|(u, row)| {
            (0..p).all(|b| unit(row, c.col_x(b), false)) && (0..s).all(|v| unit(row, c.col_psi(v), u == v))
        });
        let y_ok = self.y_rows.iter().enumerate().all(|(h, row)| {
            (0..p).all(|b| unit(row, c.col_x(b), false))
                && (0..r).all(|l| unit(row, c.col_y(l), h == l) && unit(row, c.col_phi(l), false))
                && (0..s).all(|u| unit(row, c.col_psi(u), false))
        });
        let t_ok = self.theta_rows.iter().enumerate().all(|(qi, row)| {
            (0..p).all(|b| unit(row, c.col_x(b), false))
                && (0..r).all(|l| unit(row, c.col_y(l), false) && unit(row, c.col_phi(l), qi == l))
                && (0..s).all(|u| unit(row, c.col_psi(u), false))
        });
        x_ok && xi_ok && y_ok && t_ok
    }

    /// Frame rows in standard coordinates.
    pub fn standard_rows(&self) -> (Vec<Vec<Rf>>, Vec<Vec<Rf>>) {
        let e: Vec<Vec<Rf>> =
            self.x_rows.iter().chain(&self.xi_rows).map(|r| self.chart.frame_to_standard(r)).collect();
        let ep: Vec<Vec<Rf>> = self.all_rows().map(|r| self.chart.frame_to_standard(r)).collect();
        (e, ep)
    }

    /// Polynomial sections, when no denominators occur.
    pub fn polynomial_sections(&self) -> Option<(Vec<BigSection>, Vec<BigSection>)> {
        let (e, ep) = self.standard_rows();
        let conv = |rows: Vec<Vec<Rf>>| -> Option<Vec<BigSection>> {
            rows.into_iter()
                .map(|r| {
                    let ps = r.iter().map(Rf::as_polynomial).collect::<Option<Vec<_>>>()?;
                    BigSection::from_row(ps).ok()
                })
                .collect()
        };
        Some((conv(e)?, conv(ep)?))
    }

    /// The `E'` basis with `α' = β' = A' = B' = 0`; it no longer extends a
    /// basis of `E`.
    pub fn e_prime_basis(&self) -> CanonicalFrame {
        let c = &self.chart;
        let ycols: Vec<usize> = (0..c.r()).map(|h| c.col_y(h)).collect();
        let phicols: Vec<usize> = (0..c.r()).map(|h| c.col_phi(h)).collect();
        let mut xs = self.x_rows.clone();
        let mut xis = self.xi_rows.clone();
        eliminate(&mut xs, &self.y_rows, &ycols);
        eliminate(&mut xs, &self.theta_rows, &phicols);
        eliminate(&mut xis, &self.y_rows, &ycols);
        eliminate(&mut xis, &self.theta_rows, &phicols);
        CanonicalFrame { x_rows: xs, xi_rows: xis, extends_e: false, ..self.clone() }
    }
}

fn add_all(terms: Vec<Rf>) -> Rf {
    terms.into_iter().fold(Rf::zero(), |a, b| a + b)
}

/// The seven families of orthogonality relations among canonical
/// coefficients, as rational-function identities.
pub fn check_orthogonality_relations(cf: &CanonicalFrame) -> ConditionVerdict {
    let c = cf.chart();
    let (p, r, s) = (c.p(), c.r(), c.s());
    let (ap, app, al, alp) = (cf.a_prime(), cf.a_second(), cf.alpha(), cf.alpha_prime());
    let (bp, bpp, be, bep) = (cf.b_prime(), cf.b_second(), cf.beta(), cf.beta_prime());
    let (cpp, ga, lpp, la) = (cf.c_second(), cf.gamma(), cf.l_second(), cf.lambda());
    let mut failures = Vec::new();
    let mut expect_zero = |v: Rf, what: String| {
        if !v.is_zero() {
            failures.push(format!("{what} = {v}"));
        }
    };
    for a in 0..p {
        for h in 0..r {
            expect_zero(alp.get(a, h).clone() + ga.get(h, a).clone(), format!("α'^{a}_{h} + γ^{h}_{a}"));
            expect_zero(la.get(h, a).clone() + ap.get(a, h).clone(), format!("λ^{h}_{a} + A'^{h}_{a}"));
        }
    }
    for u in 0..s {
        for h in 0..r {
            expect_zero(bep.get(u, h).clone() + cpp.get(h, u).clone(), format!("β'^{u}_{h} + C''^{u}_{h}"));
            expect_zero(lpp.get(h, u).clone() + bp.get(u, h).clone(), format!("L''^{u}_{h} + B'^{h}_{u}"));
        }
        for a in 0..p {
            let mut t = vec![be.get(u, a).clone(), app.get(a, u).clone()];
            for h in 0..r {
                t.push(alp.get(a, h).clone() * bp.get(u, h).clone());
                t.push(bep.get(u, h).clone() * ap.get(a, h).clone());
            }
            expect_zero(add_all(t), format!("β^{u}_{a} + A''^{u}_{a} + α'B' + β'A'"));
        }
        for v in u..s {
            let mut t = vec![bpp.get(v, u).clone(), bpp.get(u, v).clone()];
            for h in 0..r {
                t.push(bep.get(u, h).clone() * bp.get(v, h).clone());
                t.push(bep.get(v, h).clone() * bp.get(u, h).clone());
            }
            expect_zero(add_all(t), format!("B''^{u}_{v} + B''^{v}_{u} + β'B' + β'B'"));
        }
    }
    for a in 0..p {
        for b in a..p {
            let mut t = vec![al.get(a, b).clone(), al.get(b, a).clone()];
            for h in 0..r {
                t.push(alp.get(a, h).clone() * ap.get(b, h).clone());
                t.push(alp.get(b, h).clone() * ap.get(a, h).clone());
            }
            expect_zero(add_all(t), format!("α^{a}_{b} + α^{b}_{a} + α'A' + α'A'"));
        }
    }
    ConditionVerdict::from_failures(failures)
}

fn rf_at(v: &Rf, p: &[Rational]) -> Result<Rational> {
    v.eval(p).ok_or_else(|| Error::SingularStep(format!("denominator vanishes at {:?}", crate::structures::format_point(p))))
}

fn rows_at(rows: &[Vec<Rf>], p: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    rows.iter().map(|r| r.iter().map(|v| rf_at(v, p)).collect()).collect()
}

/// Values on the leaf `y = z = 0` that the adapted chart forces:
/// `A' = A'' = B' = B'' = C'' = L'' = 0`, `β = 0` and `α` skew.
pub fn check_leaf_conditions(cf: &CanonicalFrame) -> ConditionVerdict {
    let images = cf.chart().leaf_images();
    let on_leaf = |m: Matrix<Rf>| -> Matrix<Rf> { m.map(|v| v.substitute(&images).unwrap_or_else(Rf::zero)) };
    let mut failures = Vec::new();
    let families = [
        ("A'", cf.a_prime()),
        ("A''", cf.a_second()),
        ("B'", cf.b_prime()),
        ("B''", cf.b_second()),
        ("C''", cf.c_second()),
        ("L''", cf.l_second()),
        ("β", cf.beta()),
    ];
    for (name, m) in families {
        if !on_leaf(m).is_zero() {
            failures.push(format!("{name} does not vanish on the leaf"));
        }
    }
    let al = on_leaf(cf.alpha());
    if !(al.clone() + al.transpose()).is_zero() {
        failures.push("α is not skew on the leaf".into());
    }
    ConditionVerdict::from_failures(failures)
}

impl std::ops::Add for Matrix<Rf> {
    type Output = Matrix<Rf>;
    fn add(self, o: Matrix<Rf>) -> Matrix<Rf> {
        let rows = self.rows();
        let cols = self.cols();
        let mut out = self;
        for i in 0..rows {
            for j in 0..cols {
                let v = out.get(i, j).clone() + o.get(i, j).clone();
                out.set(i, j, v);
            }
        }
        out
    }
}

/// `α'^a_h ≡ 0`.
pub fn is_locally_decomposable(cf: &CanonicalFrame) -> bool {
    cf.alpha_prime().is_zero()
}

fn tf_subspace(ac: &AdaptedChart) -> Subspace {
    let m = ac.m();
    let vs: Vec<Vec<Rational>> = ac
        .ys
        .iter()
        .chain(&ac.zs)
        .map(|&i| (0..m).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    Subspace::span(m, &vs)
}

fn cotangent_projection(e: &Subspace) -> Subspace {
    let m = e.ambient_dim() / 2;
    Subspace::span(m, &e.basis_vectors().iter().map(|v| v[m..].to_vec()).collect::<Vec<_>>())
}

fn full_tangent_with(m: usize, cot: &Subspace) -> Subspace {
    embed_tangent(&Subspace::full(m)).sum(&embed_cotangent(cot)).expect("same ambient")
}

/// `H(E, ℱ) = {Z : ∃α ∈ ann Tℱ, (Z, α) ∈ E}` at a point.
pub fn pseudo_normal(d: &IsotropicData, ac: &AdaptedChart) -> Subspace {
    let tf = tf_subspace(ac);
    let i = d.e().intersection(&full_tangent_with(d.m(), &tf.annihilator())).expect("same ambient");
    tangent_projection(&i).expect("even")
}

/// `H(E', ℱ)` at a point.
pub fn pseudo_normal_prime(d: &IsotropicData, ac: &AdaptedChart) -> Subspace {
    let tf = tf_subspace(ac);
    let i = d.e_prime().intersection(&full_tangent_with(d.m(), &tf.annihilator())).expect("same ambient");
    tangent_projection(&i).expect("even")
}

/// `𝓗(E', ℱ) = {θ : ∃Z ∈ Tℱ, (Z, θ) ∈ E'}` at a point.
pub fn pseudo_conormal(d: &IsotropicData, ac: &AdaptedChart) -> Subspace {
    let m = d.m();
    let tf = tf_subspace(ac);
    let space = embed_tangent(&tf).sum(&embed_cotangent(&Subspace::full(m))).expect("same ambient");
    cotangent_projection(&d.e_prime().intersection(&space).expect("same ambient"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingPoint {
    pub point: Vec<Rational>,
    pub alpha_prime_zero: bool,
    pub normal: bool,
    pub conormal: bool,
    pub flat: bool,
    pub conormal_meets_ann: bool,
    pub decomposition: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingVerdict {
    pub decomposable: bool,
    pub points: Vec<CouplingPoint>,
    /// All four conditions agree at every sampled point.
    pub consistent: bool,
}

/// Compares `α' = 0` with the normal-bundle, conormal and `♭'_ϖ` forms of the
/// coupling condition at sample points, and checks the splitting of `E`
/// where it holds.
pub fn coupling_equivalences(s: &BigIsotropicStructure, cf: &CanonicalFrame, points: &[Vec<Rational>]) -> Result<CouplingVerdict> {
    let ac = cf.chart();
    let m = ac.m();
    let tf = tf_subspace(ac);
    let ann_tf = tf.annihilator();
    let alp = cf.alpha_prime();
    let gamma = cf.gamma();
    let mut out = Vec::new();
    let mut consistent = true;
    for p in points {
        if !cf.is_valid_at(p) {
            continue;
        }
        let d = s.evaluate_at(p)?;
        let a0 = (0..alp.rows()).all(|i| (0..alp.cols()).all(|j| rf_at(alp.get(i, j), p).map_or(false, |v| v.is_zero())));
        let h = pseudo_normal(&d, ac);
        let normal = h.dim() + tf.dim() == m && h.sum(&tf)?.dim() == m;
        let hc = pseudo_conormal(&d, ac);
        let conormal = hc.dim() + ann_tf.dim() == m && hc.sum(&ann_tf)?.dim() == m;
        // span{γ^h_a dx^a} in standard coordinates
        let gam_rows: Vec<Vec<Rational>> = (0..gamma.rows())
            .map(|hh| {
                let mut v = vec![q(0); m];
                for (a, &i) in ac.leaf.iter().enumerate() {
                    v[i] = rf_at(gamma.get(hh, a), p).unwrap_or_else(|_| q(0));
                }
                v
            })
            .collect();
        let meets = hc.intersection(&ann_tf)? == Subspace::span(m, &gam_rows);
        let cal_e = tangent_projection(d.e())?;
        let tf_ann = embed_tangent(&tf).sum(&embed_cotangent(&ann_tf))?;
        let flat = d.e_prime().intersection(&tf_ann)?.basis_vectors().iter().all(|v| {
            cal_e.basis_vectors().iter().all(|x| x.iter().zip(&v[m..]).fold(q(0), |acc, (a, b)| acc + a * b).is_zero())
        });
        let decomposition = if normal {
            let a_part = d.e().intersection(&embed_tangent(&tf).sum(&embed_cotangent(&h.annihilator()))?)?;
            let b_part = d.e().intersection(&embed_tangent(&h).sum(&embed_cotangent(&ann_tf))?)?;
            Some(a_part.dim() + b_part.dim() == d.e().dim() && a_part.sum(&b_part)? == *d.e())
        } else {
            None
        };
        if !(a0 == normal && normal == conormal && conormal == flat && meets) {
            consistent = false;
        }
        if decomposition == Some(false) {
            consistent = false;
        }
        out.push(CouplingPoint {
            point: p.clone(),
            alpha_prime_zero: a0,
            normal,
            conormal,
            flat,
            conormal_meets_ann: meets,
            decomposition,
        });
    }
    Ok(CouplingVerdict { decomposable: is_locally_decomposable(cf), points: out, consistent })
}

/// `α^a_b(x, 0, 0)` at `[a][b]`.
pub fn leaf_pullback(cf: &CanonicalFrame) -> Result<Matrix<Rf>> {
    let images = cf.chart().leaf_images();
    let al = cf.alpha();
    let mut out = Matrix::zeros(al.rows(), al.cols());
    for i in 0..al.rows() {
        for j in 0..al.cols() {
            let v = al
                .get(i, j)
                .substitute(&images)
                .ok_or_else(|| Error::SingularStep("denominator vanishes on the leaf".into()))?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeafVerdict {
    pub skew: bool,
    pub matches_varpi: bool,
    pub matches_pullback: bool,
    pub matches_dirac_extension_pullback: bool,
}

impl LeafVerdict {
    pub fn holds(&self) -> bool {
        self.skew && self.matches_varpi && self.matches_pullback && self.matches_dirac_extension_pullback
    }
}

/// The leaf form against `ϖ|ℰ×ℰ`, the pullback of `E` to the leaf, and the
/// pullback of `D(E)`, at the given leaf coordinates.
pub fn check_leaf_form(s: &BigIsotropicStructure, cf: &CanonicalFrame, leaf_points: &[Vec<Rational>]) -> Result<LeafVerdict> {
    let ac = cf.chart();
    let (m, p) = (ac.m(), ac.p());
    let w = leaf_pullback(cf)?;
    let skew = (w.clone() + w.transpose()).is_zero();
    let incl = coordinate_inclusion(m, &ac.leaf);
    let mut v = LeafVerdict { skew, matches_varpi: true, matches_pullback: true, matches_dirac_extension_pullback: true };
    for xs in leaf_points {
        let pt = ac.leaf_point(xs);
        let wv = rows_at(&w.to_rows(), &pt)?;
        let d = s.evaluate_at(&pt)?;
        let t = characteristic_triple(&d)?;
        let unit = |a: usize| -> Vec<Rational> { (0..m).map(|i| if i == ac.leaf[a] { q(1) } else { q(0) }).collect() };
        for a in 0..p {
            for b in 0..p {
                if t.eval(&unit(a), &unit(b))? != wv[a][b] {
                    v.matches_varpi = false;
                }
            }
        }
        let graph: Vec<Vec<Rational>> = (0..p)
            .map(|a| {
                let mut r = vec![q(0); 2 * p];
                r[a] = q(1);
                r[p..].clone_from_slice(&wv[a]);
                r
            })
            .collect();
        let graph = Subspace::span(2 * p, &graph);
        if pullback_subspace(&incl, d.e())? != graph {
            v.matches_pullback = false;
        }
        if pullback_subspace(&incl, &dirac_extension(&d))? != graph {
            v.matches_dirac_extension_pullback = false;
        }
    }
    Ok(v)
}

/// Local description of `D_U(E)` from the canonical basis.
#[derive(Clone, Debug)]
pub struct DiracExtensionFrame {
    cf: CanonicalFrame,
}

pub fn dirac_extension_frame(cf: &CanonicalFrame) -> DiracExtensionFrame {
    DiracExtensionFrame { cf: cf.clone() }
}

impl DiracExtensionFrame {
    /// Regular case: `B' ≡ 0` and `B'' ≡ 0`, so `φ, ψ` are unconstrained.
    pub fn is_unconstrained(&self) -> bool {
        self.cf.b_prime().is_zero() && self.cf.b_second().is_zero()
    }

    /// `span{𝒳_a, Ξ_u, (0, φ_h(φ^h − A'^h_a θ^a) + ψ_σ(ψ^σ − A''^σ_a θ^a))}`
    /// with `φ_h B'^h_u + ψ_σ B''^σ_u = 0`.
    pub fn at(&self, p: &[Rational]) -> Result<Subspace> {
        let cf = &self.cf;
        let ac = cf.chart();
        let (m, pa, r, s) = (ac.m(), ac.p(), ac.r(), ac.s());
        let mut gens = rows_at(&cf.x_rows, p)?;
        gens.extend(rows_at(&cf.xi_rows, p)?);
        let bp = rows_at(&cf.b_prime().to_rows(), p)?;
        let bpp = rows_at(&cf.b_second().to_rows(), p)?;
        let ap = rows_at(&cf.a_prime().to_rows(), p)?;
        let app = rows_at(&cf.a_second().to_rows(), p)?;
        let constraint: Vec<Vec<Rational>> = (0..s)
            .map(|u| {
                let mut row: Vec<Rational> = (0..r).map(|h| bp[u][h].clone()).collect();
                row.extend((0..s).map(|sg| bpp[u][sg].clone()));
                row
            })
            .collect();
        let sols = if s == 0 {
            (0..r + s).map(|i| (0..r + s).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()
        } else {
            Matrix::from_rows(constraint, r + s).kernel()
        };
        for c in sols {
            let mut row = vec![q(0); 2 * m];
            for a in 0..pa {
                let mut t = q(0);
                for h in 0..r {
                    t -= &c[h] * &ap[a][h];
                }
                for sg in 0..s {
                    t -= &c[r + sg] * &app[a][sg];
                }
                row[ac.col_theta(a)] = t;
            }
            for h in 0..r {
                row[ac.col_phi(h)] = c[h].clone();
            }
            for sg in 0..s {
                row[ac.col_psi(sg)] = c[r + sg].clone();
            }
            gens.push(row);
        }
        let std: Vec<Vec<Rational>> = gens.iter().map(|g| ac.frame_to_standard_at(g, p)).collect();
        Ok(Subspace::span(2 * m, &std))
    }
}

/// Induced structure on `Q_0 = {x^a = 0}`, with pointwise certificates.
#[derive(Clone, Debug)]
pub struct TransversalStructure {
    pub structure: BigIsotropicStructure,
    pub inclusion: LinearMap,
    pub s_dims: Vec<usize>,
    pub s_prime_dims: Vec<usize>,
    pub matches_pullback: bool,
    pub graph_type: bool,
}

fn poly_on_transversal(f: &Polynomial, ac: &AdaptedChart) -> Polynomial {
    let m = ac.m();
    let mut images = vec![Polynomial::zero(); m];
    for (j, &i) in ac.ys.iter().chain(&ac.zs).enumerate() {
        images[i] = Polynomial::var(j);
    }
    f.substitute(&images)
}

/// Frame `Ξ_u|_{x=0}`; `E'` computed from it. Checked against the pointwise
/// pullback, the graph-type property and constancy of `dim S`, `dim S'`.
pub fn transversal_structure(s: &BigIsotropicStructure, cf: &CanonicalFrame, grid: Option<Grid>) -> Result<TransversalStructure> {
    let ac = cf.chart();
    let m = ac.m();
    let slots: Vec<usize> = ac.ys.iter().chain(&ac.zs).copied().collect();
    let n = slots.len();
    let names: Vec<String> = slots.iter().map(|&i| ac.chart().names()[i].clone()).collect();
    let qchart = Chart::new(names)?;
    let (e_std, _) = cf.standard_rows();
    let xi_std = &e_std[ac.p()..];
    let mut frame = Vec::new();
    for row in xi_std {
        let cleared = crate::algebra::polymat::clear_denominators(row);
        let on_q: Vec<Polynomial> = cleared.iter().map(|f| poly_on_transversal(f, ac)).collect();
        let x: Vec<Polynomial> = slots.iter().map(|&i| on_q[i].clone()).collect();
        let a: Vec<Polynomial> = slots.iter().map(|&i| on_q[m + i].clone()).collect();
        frame.push(BigSection::new(VectorField::new(x), OneForm::new(a))?);
    }
    let grid = grid.unwrap_or_else(|| Grid::default_for(n));
    let structure = BigIsotropicStructure::with_computed_e_prime(qchart, frame, grid)?;
    let incl = coordinate_inclusion(m, &slots);
    let mut s_dims = Vec::new();
    let mut s_prime_dims = Vec::new();
    let mut matches = true;
    let mut graph = true;
    for yz in structure.grid().points() {
        let pt = ac.transversal_point(yz);
        let d = s.evaluate_at(&pt)?;
        s_dims.push(s_space(&incl, d.e())?.dim());
        s_prime_dims.push(s_space(&incl, d.e_prime())?.dim());
        let local = structure.evaluate_at(yz)?;
        if pullback_subspace(&incl, d.e())? != *local.e() {
            matches = false;
        }
        if !crate::big_tangent::is_graph_type(&local) {
            graph = false;
        }
    }
    let constant = |v: &[usize]| v.windows(2).all(|w| w[0] == w[1]);
    if !constant(&s_dims) || !constant(&s_prime_dims) {
        return Err(Error::NotProper("dim S or dim S' varies along the transversal".into()));
    }
    Ok(TransversalStructure { structure, inclusion: incl, s_dims, s_prime_dims, matches_pullback: matches, graph_type: graph })
}

impl TransversalStructure {
    pub fn is_integrable(&self) -> Result<bool> {
        Ok(check_integrability(&self.structure)?.holds)
    }
}

/// Polynomial change of coordinates with polynomial inverse.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    new_chart: Chart,
    old_in_new: Vec<Polynomial>,
    new_in_old: Vec<Polynomial>,
}

impl CoordinateChange {
    /// `old_in_new[i]` expresses old coordinate `i` in the new ones;
    /// `new_in_old[j]` the reverse.
    pub fn new(new_chart: Chart, old_in_new: Vec<Polynomial>, new_in_old: Vec<Polynomial>) -> Result<Self> {
        let m = new_chart.dim();
        if old_in_new.len() != m || new_in_old.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: old_in_new.len().min(new_in_old.len()) });
        }
        for j in 0..m {
            if new_in_old[j].substitute(&old_in_new) != Polynomial::var(j) {
                return Err(Error::InvalidStructure("maps are not mutually inverse".into()));
            }
            if old_in_new[j].substitute(&new_in_old) != Polynomial::var(j) {
                return Err(Error::InvalidStructure("maps are not mutually inverse".into()));
            }
        }
        Ok(CoordinateChange { new_chart, old_in_new, new_in_old })
    }

    pub fn new_chart(&self) -> &Chart {
        &self.new_chart
    }

    pub fn section(&self, s: &BigSection) -> BigSection {
        let m = self.new_chart.dim();
        let x_old = s.x.substitute(&self.old_in_new);
        let a_old = s.a.substitute(&self.old_in_new);
        let x: Vec<Polynomial> = (0..m)
            .map(|j| {
                (0..m).fold(Polynomial::zero(), |acc, i| {
                    acc + &self.new_in_old[j].derivative(i).substitute(&self.old_in_new) * &x_old.comps()[i]
                })
            })
            .collect();
        let a: Vec<Polynomial> = (0..m)
            .map(|j| {
                (0..m).fold(Polynomial::zero(), |acc, i| acc + &a_old.comps()[i] * &self.old_in_new[i].derivative(j))
            })
            .collect();
        BigSection { x: VectorField::new(x), a: OneForm::new(a) }
    }

    pub fn structure(&self, s: &BigIsotropicStructure) -> Result<BigIsotropicStructure> {
        let e = s.e_frame().iter().map(|t| self.section(t)).collect();
        let ep = s.e_prime_frame().iter().map(|t| self.section(t)).collect();
        BigIsotropicStructure::new(self.new_chart.clone(), e, ep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split_r3() -> (BigIsotropicStructure, AdaptedChart) {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let e = vec![BigSection::vector(VectorField::coord(3, 0)), BigSection::form(OneForm::coord(3, 2))];
        let ep = vec![
            e[0].clone(),
            e[1].clone(),
            BigSection::vector(VectorField::coord(3, 1)),
            BigSection::form(OneForm::coord(3, 1)),
        ];
        let s = BigIsotropicStructure::new(c.clone(), e, ep).unwrap();
        (s, AdaptedChart::from_names(c, &["x"], &["y"], &["z"]).unwrap())
    }

    #[test]
    fn seed_of_split_r3() {
        let (s, _) = split_r3();
        let d = s.evaluate_at(&[q(0), q(0), q(0)]).unwrap();
        let sb = seed_basis(&d).unwrap();
        let e = |i: usize| -> Vec<Rational> { (0..3).map(|j| if i == j { q(1) } else { q(0) }).collect() };
        assert_eq!(sb.x0, vec![e(0)]);
        assert_eq!(sb.xi0, vec![vec![q(0); 3]]);
        assert_eq!(sb.y0, vec![e(1)]);
        assert_eq!(sb.eta0, vec![vec![q(0); 3]]);
        assert_eq!(sb.kappa0, vec![e(2)]);
        assert_eq!(sb.nu0, vec![e(1)]);
        assert_eq!(sb.z0, vec![e(2)]);
    }

    #[test]
    fn split_r3_is_canonical() {
        let (s, ac) = split_r3();
        let cf = normalize_frame(&s, &ac).unwrap();
        assert!(cf.has_canonical_shape());
        assert_eq!(cf, canonical_by_rref(&s, &ac).unwrap());
        let (e, ep) = cf.polynomial_sections().unwrap();
        assert_eq!(e, s.e_frame());
        assert_eq!(ep, s.e_prime_frame());
        assert!(check_orthogonality_relations(&cf).holds);
        assert!(check_leaf_conditions(&cf).holds);
        assert!(is_locally_decomposable(&cf));
    }

    #[test]
    fn transversal_of_split_r3() {
        let (s, ac) = split_r3();
        let cf = normalize_frame(&s, &ac).unwrap();
        let t = transversal_structure(&s, &cf, None).unwrap();
        assert_eq!(t.structure.e_frame(), &[BigSection::form(OneForm::coord(2, 1))]);
        assert!(t.matches_pullback && t.graph_type);
        assert!(t.is_integrable().unwrap());
    }

    #[test]
    fn dirac_extension_frame_matches() {
        let (s, ac) = split_r3();
        let cf = normalize_frame(&s, &ac).unwrap();
        let f = dirac_extension_frame(&cf);
        assert!(f.is_unconstrained());
        for p in s.grid().points().iter().take(20) {
            let d = s.evaluate_at(p).unwrap();
            assert_eq!(f.at(p).unwrap(), dirac_extension(&d));
        }
    }

    #[test]
    fn singular_step_reported() {
        let (s, _) = split_r3();
        let c = s.chart().clone();
        let ac = AdaptedChart::from_names(c, &["y"], &["x"], &["z"]).unwrap();
        assert!(matches!(normalize_frame(&s, &ac), Err(Error::SingularStep(_))));
    }

    fn coupled_r5() -> (BigIsotropicStructure, AdaptedChart) {
        let c = Chart::new(["x1", "x2", "y1", "y2", "z"]).unwrap();
        let v = |i| VectorField::coord(5, i);
        let f = |i| OneForm::coord(5, i);
        let bs = |x: VectorField, a: OneForm| BigSection::new(x, a).unwrap();
        let e = vec![bs(v(0), f(1).add(&f(2))), bs(v(1), f(3).sub(&f(0))), BigSection::form(f(4))];
        let mut ep = e.clone();
        ep.push(bs(v(2), f(0).neg()));
        ep.push(bs(v(3), f(1).neg()));
        ep.push(BigSection::form(f(2)));
        ep.push(BigSection::form(f(3)));
        let s = BigIsotropicStructure::new(c.clone(), e, ep).unwrap();
        (s, AdaptedChart::from_names(c, &["x1", "x2"], &["y1", "y2"], &["z"]).unwrap())
    }

    fn rf(n: i64) -> Rf {
        Rf::from_poly(Polynomial::from_int(n))
    }

    #[test]
    fn coupled_r5_coefficients() {
        let (s, ac) = coupled_r5();
        let cf = normalize_frame(&s, &ac).unwrap();
        assert!(cf.has_canonical_shape());
        assert_eq!(cf, canonical_by_rref(&s, &ac).unwrap());
        let al = cf.alpha();
        assert_eq!(al.get(0, 1), &rf(1));
        assert_eq!(al.get(1, 0), &rf(-1));
        assert!(al.get(0, 0).is_zero() && al.get(1, 1).is_zero());
        for a in 0..2 {
            for h in 0..2 {
                assert_eq!(cf.alpha_prime().get(a, h), &rf(if a == h { 1 } else { 0 }));
                assert_eq!(cf.gamma().get(h, a), &rf(if a == h { -1 } else { 0 }));
            }
        }
        for m in [cf.a_prime(), cf.a_second(), cf.b_prime(), cf.b_second(), cf.beta(), cf.beta_prime()] {
            assert!(m.is_zero());
        }
        assert!(m_zero(&[cf.c_second(), cf.l_second(), cf.lambda()]));
        assert!(check_orthogonality_relations(&cf).holds);
        assert!(check_leaf_conditions(&cf).holds);
        assert!(!is_locally_decomposable(&cf));
        let pts: Vec<Vec<Rational>> = s.grid().points().iter().take(30).cloned().collect();
        let v = coupling_equivalences(&s, &cf, &pts).unwrap();
        assert!(v.consistent && !v.decomposable);
        assert!(v.points.iter().all(|p| !p.normal && !p.conormal && !p.flat));
        let leaf: Vec<Vec<Rational>> = vec![vec![q(0), q(0)], vec![q(1), q(-2)]];
        assert!(check_leaf_form(&s, &cf, &leaf).unwrap().holds());
    }

    fn m_zero(ms: &[Matrix<Rf>]) -> bool {
        ms.iter().all(Matrix::is_zero)
    }

    #[test]
    fn coupled_r5_straightened_chart() {
        let (s, _) = coupled_r5();
        let p = Polynomial::var;
        let old_in_new = vec![p(0) + p(3), p(1) - p(2), p(2), p(3), p(4)];
        let new_in_old = vec![p(0) - p(3), p(1) + p(2), p(2), p(3), p(4)];
        let nc = Chart::new(["u1", "u2", "v1", "v2", "w"]).unwrap();
        let ch = CoordinateChange::new(nc.clone(), old_in_new, new_in_old).unwrap();
        let t = ch.structure(&s).unwrap();
        let ac = AdaptedChart::from_names(nc, &["u1", "u2"], &["v1", "v2"], &["w"]).unwrap();
        let cf = normalize_frame(&t, &ac).unwrap();
        assert_eq!(cf, canonical_by_rref(&t, &ac).unwrap());
        assert!(is_locally_decomposable(&cf));
        let (e, ep) = cf.polynomial_sections().unwrap();
        let v = |i| VectorField::coord(5, i);
        let f = |i| OneForm::coord(5, i);
        let bs = |x: VectorField, a: OneForm| BigSection::new(x, a).unwrap();
        assert_eq!(e, vec![bs(v(0), f(1)), bs(v(1), f(0).neg()), BigSection::form(f(4))]);
        assert_eq!(
            ep[3..].to_vec(),
            vec![BigSection::vector(v(2)), BigSection::vector(v(3)), BigSection::form(f(2)), BigSection::form(f(3))]
        );
        let pts: Vec<Vec<Rational>> = t.grid().points().iter().take(30).cloned().collect();
        let cv = coupling_equivalences(&t, &cf, &pts).unwrap();
        assert!(cv.consistent && cv.points.iter().all(|p| p.normal && p.decomposition == Some(true)));
        assert!(check_integrability(&t).unwrap().holds);
    }

    #[test]
    fn e_prime_basis_drops_cross_terms() {
        let (s, ac) = coupled_r5();
        let cf = normalize_frame(&s, &ac).unwrap().e_prime_basis();
        assert!(!cf.extends_e());
        assert!(cf.alpha_prime().is_zero() && cf.a_prime().is_zero());
    }
}
