//! Restriction to affine submanifolds, projectability along coordinate
//! foliations, and the reduced structure `π_*(ι*E)`.

use crate::algebra::polymat::{generic_rank, kernel_frame};
use crate::algebra::{q, Matrix, Polynomial, Rational, Subspace};
use crate::big_tangent::{embed_cotangent, embed_tangent, orthogonal_g, tangent_projection};
use crate::calculus::{courant_bracket, lie_bracket, lie_derivative_form, BigSection, Bivector, Chart, OneForm, TwoForm, VectorField};
use crate::error::{Error, Result};
use crate::structures::{check_integrability, format_point, BigIsotropicStructure, Grid};
use crate::transport::{coordinate_projection, pullback_subspace, pushforward_subspace, s_space, LinearMap};

/// `ι(y) = offset + A y`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmanifoldData {
    ambient: Chart,
    sub: Chart,
    offset: Vec<Rational>,
    map: LinearMap,
}

impl SubmanifoldData {
    pub fn new(ambient: Chart, sub: Chart, offset: Vec<Rational>, map: LinearMap) -> Result<Self> {
        let (m, n) = (ambient.dim(), sub.dim());
        if offset.len() != m || map.target_dim() != m {
            return Err(Error::DimensionMismatch { expected: m, found: map.target_dim() });
        }
        if map.source_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: map.source_dim() });
        }
        if !map.is_injective() {
            return Err(Error::RankPrecondition("embedding differential is not injective".into()));
        }
        Ok(SubmanifoldData { ambient, sub, offset, map })
    }

    /// `{x^i = c_i}` for the listed coordinates, charted by the others.
    pub fn coordinate_slice(ambient: Chart, fixed: &[(usize, Rational)]) -> Result<Self> {
        let m = ambient.dim();
        let free: Vec<usize> = (0..m).filter(|i| !fixed.iter().any(|(j, _)| j == i)).collect();
        let names: Vec<String> = free.iter().map(|&i| ambient.names()[i].clone()).collect();
        let mut offset = vec![q(0); m];
        for (i, c) in fixed {
            if *i >= m {
                return Err(Error::DimensionMismatch { expected: m, found: *i });
            }
            offset[*i] = c.clone();
        }
        let map = coordinate_projection(m, &free).transposed();
        Self::new(ambient, Chart::new(names)?, offset, map)
    }

    pub fn identity(chart: Chart) -> Self {
        let m = chart.dim();
        SubmanifoldData { ambient: chart.clone(), sub: chart, offset: vec![q(0); m], map: LinearMap::identity(m) }
    }

    pub fn ambient(&self) -> &Chart {
        &self.ambient
    }

    pub fn chart(&self) -> &Chart {
        &self.sub
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn point(&self, y: &[Rational]) -> Vec<Rational> {
        let ay = self.map.matrix().mul_vec(y);
        self.offset.iter().zip(ay).map(|(o, v)| o + v).collect()
    }

    /// Ambient coordinates as polynomials in the submanifold coordinates.
    pub fn images(&self) -> Vec<Polynomial> {
        let a = self.map.matrix();
        (0..self.ambient.dim())
            .map(|i| {
                (0..self.sub.dim()).fold(Polynomial::constant(self.offset[i].clone()), |acc, j| {
                    acc + &Polynomial::var(j).scale(a.get(i, j))
                })
            })
            .collect()
    }
}

/// Fibers of the projection onto the `base` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationData {
    chart: Chart,
    leaf: Vec<usize>,
    base: Vec<usize>,
}

impl FoliationData {
    pub fn new(chart: Chart, leaf: Vec<usize>) -> Result<Self> {
        let n = chart.dim();
        if leaf.iter().any(|&i| i >= n) {
            return Err(Error::DimensionMismatch { expected: n, found: leaf.len() });
        }
        let mut l = leaf.clone();
        l.sort_unstable();
        l.dedup();
        if l.len() != leaf.len() {
            return Err(Error::InvalidStructure("repeated leaf coordinate".into()));
        }
        let base = (0..n).filter(|i| !leaf.contains(i)).collect();
        Ok(FoliationData { chart, leaf, base })
    }

    pub fn from_names(chart: Chart, leaf: &[&str]) -> Result<Self> {
        let idx = leaf
            .iter()
            .map(|n| chart.index_of(n).ok_or_else(|| Error::InvalidStructure(format!("unknown coordinate {n}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, idx)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn leaf(&self) -> &[usize] {
        &self.leaf
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn base_chart(&self) -> Chart {
        Chart::new(self.base.iter().map(|&i| self.chart.names()[i].clone()).collect::<Vec<_>>()).expect("distinct names")
    }

    pub fn projection(&self) -> LinearMap {
        coordinate_projection(self.chart.dim(), &self.base)
    }

    /// `Tℱ ⊕ 0` at a point.
    pub fn tangent_subspace(&self) -> Subspace {
        let n = self.chart.dim();
        let rows: Vec<Vec<Rational>> = self.leaf.iter().map(|&i| unit(2 * n, i)).collect();
        Subspace::span(2 * n, &rows)
    }

    /// Point of the chart with the given base coordinates and leaf value `t`.
    pub fn lift_point(&self, base: &[Rational], t: &Rational) -> Vec<Rational> {
        let mut p = vec![t.clone(); self.chart.dim()];
        for (j, &i) in self.base.iter().enumerate() {
            p[i] = base[j].clone();
        }
        p
    }
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    (0..d).map(|j| if i == j { q(1) } else { q(0) }).collect()
}

/// Pointwise `ι*E`, `ι*E'` on the grid of `N`.
#[derive(Clone, Debug)]
pub struct RestrictedData {
    pub submanifold: SubmanifoldData,
    pub points: Vec<Vec<Rational>>,
    pub e: Vec<Subspace>,
    pub e_prime: Vec<Subspace>,
    /// `E ∩ (TN ⊕ T*_N M)` at `ι(y)`.
    pub ambient_s: Vec<Subspace>,
    pub s_dims: Vec<usize>,
    pub s_prime_dims: Vec<usize>,
}

fn first_jump(dims: &[usize]) -> Option<(usize, usize)> {
    (1..dims.len()).find(|&i| dims[i] != dims[0]).map(|i| (0, i))
}

pub fn restrict(s: &BigIsotropicStructure, n: &SubmanifoldData, grid: &Grid) -> Result<RestrictedData> {
    if s.chart() != n.ambient() {
        return Err(Error::ChartMismatch);
    }
    let l = n.map();
    let mut out = RestrictedData {
        submanifold: n.clone(),
        points: grid.points().to_vec(),
        e: Vec::new(),
        e_prime: Vec::new(),
        ambient_s: Vec::new(),
        s_dims: Vec::new(),
        s_prime_dims: Vec::new(),
    };
    for y in grid.points() {
        let d = s.evaluate_at(&n.point(y))?;
        let sp = s_space(l, d.e())?;
        out.s_dims.push(sp.dim());
        out.s_prime_dims.push(s_space(l, d.e_prime())?.dim());
        out.ambient_s.push(sp);
        out.e.push(pullback_subspace(l, d.e())?);
        out.e_prime.push(pullback_subspace(l, d.e_prime())?);
    }
    for (what, dims) in [("S", &out.s_dims), ("S'", &out.s_prime_dims)] {
        if let Some((i, j)) = first_jump(dims) {
            return Err(Error::NotProper(format!(
                "dim {what} is {} at {:?} and {} at {:?}",
                dims[i],
                format_point(&out.points[i]),
                dims[j],
                format_point(&out.points[j])
            )));
        }
    }
    Ok(out)
}

fn independent_rows(rows: Vec<Vec<Polynomial>>) -> Vec<Vec<Polynomial>> {
    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    for r in rows {
        kept.push(r);
        if generic_rank(&kept).0 < kept.len() {
            kept.pop();
        }
    }
    kept
}

/// Polynomial frame of `ι*E` computed over the rational-function field.
pub fn pullback_frame(s: &BigIsotropicStructure, n: &SubmanifoldData) -> Vec<BigSection> {
    let (m, nn) = (n.ambient().dim(), n.chart().dim());
    let images = n.images();
    let a = n.map().matrix();
    let rows: Vec<Vec<Polynomial>> =
        s.e_rows().iter().map(|r| r.iter().map(|f| f.substitute(&images)).collect()).collect();
    let ann = kernel_frame(&rows, 2 * m);
    // (X, α) with r_X·AX + r_α·α = 0
    let cond: Vec<Vec<Polynomial>> = ann
        .iter()
        .map(|r| {
            let mut row: Vec<Polynomial> = (0..nn)
                .map(|j| (0..m).fold(Polynomial::zero(), |acc, i| acc + &r[i].scale(a.get(i, j))))
                .collect();
            row.extend(r[m..].iter().cloned());
            row
        })
        .collect();
    let pairs = if cond.is_empty() {
        (0..nn + m)
            .map(|i| (0..nn + m).map(|j| if i == j { Polynomial::one() } else { Polynomial::zero() }).collect())
            .collect()
    } else {
        kernel_frame(&cond, nn + m)
    };
    let out: Vec<Vec<Polynomial>> = pairs
        .iter()
        .map(|v| {
            let mut w = v[..nn].to_vec();
            w.extend((0..nn).map(|j| (0..m).fold(Polynomial::zero(), |acc, i| acc + &v[nn + i].scale(a.get(i, j)))));
            w
        })
        .collect();
    independent_rows(out).into_iter().map(|r| BigSection::from_row(r).expect("even width")).collect()
}

/// `ι*E` as a structure on `N`, from a supplied or computed frame, checked
/// against the pointwise pullback.
pub fn restricted_structure(
    r: &RestrictedData,
    s: &BigIsotropicStructure,
    frame: Option<Vec<BigSection>>,
) -> Result<BigIsotropicStructure> {
    let n = &r.submanifold;
    let frame = frame.unwrap_or_else(|| pullback_frame(s, n));
    let grid = Grid::from_points(r.points.clone());
    let t = BigIsotropicStructure::with_computed_e_prime(n.chart().clone(), frame, grid)?;
    for (i, y) in r.points.iter().enumerate() {
        let d = t.evaluate_at(y)?;
        if d.e() != &r.e[i] {
            return Err(Error::InvalidStructure(format!(
                "frame does not span the pullback at {:?}",
                format_point(y)
            )));
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducibilityVerdict {
    pub holds: bool,
    /// `pr_{Tℱ}: E ∩ (Tℱ ⊕ ann TN) → Tℱ` onto at every point.
    pub surjective: bool,
    pub failures: Vec<String>,
}

/// `Tℱ ⊆ ι*E` at every sampled point.
pub fn check_reducibility(r: &RestrictedData, f: &FoliationData) -> Result<ReducibilityVerdict> {
    let n = &r.submanifold;
    if f.chart() != n.chart() {
        return Err(Error::ChartMismatch);
    }
    let m = n.ambient().dim();
    let tf = f.tangent_subspace();
    let a = n.map().matrix();
    let pushed_tf = Subspace::span(m, &f.leaf().iter().map(|&i| a.mul_vec(&unit(n.chart().dim(), i))).collect::<Vec<_>>());
    let ann_tn = Subspace::kernel(&a.transpose());
    let target = embed_tangent(&pushed_tf).sum(&embed_cotangent(&ann_tn))?;
    let mut failures = Vec::new();
    let mut surjective = true;
    for (i, y) in r.points.iter().enumerate() {
        if !tf.is_subspace_of(&r.e[i])? {
            failures.push(format!("Tℱ is not in ι*E at {:?}", format_point(y)));
        }
        let inter = r.ambient_s[i].intersection(&target)?;
        if tangent_projection(&inter)? != pushed_tf {
            surjective = false;
        }
    }
    Ok(ReducibilityVerdict { holds: failures.is_empty(), surjective, failures })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectableVerdict {
    /// `(∂z^a, 0) ∈ ΓE` for every leaf coordinate.
    pub contains_tf: bool,
    /// `(L_Y X_i, L_Y ξ^i) ∈ ΓE` for every leaf field and frame section.
    pub automorphisms: bool,
    pub failures: Vec<String>,
}

impl ProjectableVerdict {
    pub fn holds(&self) -> bool {
        self.contains_tf && self.automorphisms
    }
}

pub fn check_projectable(s: &BigIsotropicStructure, f: &FoliationData) -> Result<ProjectableVerdict> {
    if s.chart() != f.chart() {
        return Err(Error::ChartMismatch);
    }
    let n = s.m();
    let names = s.chart().names();
    let mut v = ProjectableVerdict { contains_tf: true, automorphisms: true, failures: Vec::new() };
    for &a in f.leaf() {
        let y = VectorField::coord(n, a);
        if s.e_membership(&BigSection::vector(y.clone())).is_some() {
            v.contains_tf = false;
            v.failures.push(format!("(∂{}, 0) is not a section of E", names[a]));
        }
        for (i, e) in s.e_frame().iter().enumerate() {
            let moved = BigSection::new(lie_bracket(&y, &e.x)?, lie_derivative_form(&y, &e.a)?)?;
            if s.e_membership(&moved).is_some() {
                v.automorphisms = false;
                v.failures.push(format!("L_∂{} e{} is not a section of E", names[a], i + 1));
            }
        }
    }
    Ok(v)
}

/// Leaf fields followed by sections with base-only coefficients and no
/// leaf components, obtained by evaluating the frame on `z = 0`.
pub fn projectable_frame(s: &BigIsotropicStructure, f: &FoliationData) -> Result<Vec<BigSection>> {
    let n = s.m();
    let mut images: Vec<Polynomial> = (0..n).map(Polynomial::var).collect();
    for &a in f.leaf() {
        images[a] = Polynomial::zero();
    }
    let mut rows: Vec<Vec<Polynomial>> = f
        .leaf()
        .iter()
        .map(|&a| BigSection::vector(VectorField::coord(n, a)).row())
        .collect();
    for e in s.e_frame() {
        let mut r = e.substitute(&images).row();
        for &a in f.leaf() {
            r[a] = Polynomial::zero();
        }
        rows.push(r);
    }
    let kept = independent_rows(rows);
    if kept.len() != s.rank() || kept.len() < f.leaf().len() {
        return Err(Error::NotProjectable("leaf fields and base sections do not span E".into()));
    }
    let frame: Vec<BigSection> = kept.into_iter().map(|r| BigSection::from_row(r).expect("even")).collect();
    for (i, t) in frame.iter().enumerate() {
        if let Some(minor) = s.e_membership(t) {
            return Err(Error::NotProjectable(format!(
                "candidate section {} is not in E (minor {:?})",
                i + 1,
                minor.rows
            )));
        }
    }
    Ok(frame)
}

/// Output of the reduction pipeline together with its certificates.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub restricted: BigIsotropicStructure,
    pub foliation: FoliationData,
    pub projectable_frame: Vec<BigSection>,
    pub reduced: BigIsotropicStructure,
    /// `π*E^red = ι*E` at every checked point.
    pub pullback_roundtrip: bool,
    /// `E^red = π_*(ι*E)` at every base point.
    pub matches_pushforward: bool,
    /// `(E^red)' = π_*((ι*E)')`.
    pub orthogonal_matches: bool,
    /// `E^red ∩ TQ = 0` at every base point.
    pub poisson_condition: bool,
    pub integrable: bool,
}

/// Base-only section to the quotient chart.
fn to_base(t: &BigSection, f: &FoliationData) -> BigSection {
    let n = f.chart().dim();
    let mut images = vec![Polynomial::zero(); n];
    for (j, &i) in f.base().iter().enumerate() {
        images[i] = Polynomial::var(j);
    }
    let x: Vec<Polynomial> = f.base().iter().map(|&i| t.x.comps()[i].substitute(&images)).collect();
    let a: Vec<Polynomial> = f.base().iter().map(|&i| t.a.comps()[i].substitute(&images)).collect();
    BigSection { x: VectorField::new(x), a: OneForm::new(a) }
}

/// Base section pulled back along `π`.
pub fn pull_from_base(t: &BigSection, f: &FoliationData) -> BigSection {
    let n = f.chart().dim();
    let images: Vec<Polynomial> = f.base().iter().map(|&i| Polynomial::var(i)).collect();
    let mut x = vec![Polynomial::zero(); n];
    let mut a = vec![Polynomial::zero(); n];
    for (j, &i) in f.base().iter().enumerate() {
        x[i] = t.x.comps()[j].substitute(&images);
        a[i] = t.a.comps()[j].substitute(&images);
    }
    BigSection { x: VectorField::new(x), a: OneForm::new(a) }
}

const LEAF_SAMPLES: [i64; 3] = [0, 1, -2];

/// `E^red = π_*(ι*E)` on the leaf space of `ℱ`.
pub fn reduce(
    s: &BigIsotropicStructure,
    n: &SubmanifoldData,
    f: &FoliationData,
    n_grid: Option<Grid>,
    frame: Option<Vec<BigSection>>,
) -> Result<Reduction> {
    let n_grid = n_grid.unwrap_or_else(|| Grid::default_for(n.chart().dim()));
    let r = restrict(s, n, &n_grid)?;
    let red = check_reducibility(&r, f)?;
    if !red.holds {
        return Err(Error::NotReducible(red.failures.join("; ")));
    }
    let restricted = restricted_structure(&r, s, frame)?;
    let pv = check_projectable(&restricted, f)?;
    if !pv.holds() {
        return Err(Error::NotProjectable(pv.failures.join("; ")));
    }
    let pframe = projectable_frame(&restricted, f)?;
    let k = f.leaf().len();
    let qframe: Vec<BigSection> = pframe[k..].iter().map(|t| to_base(t, f)).collect();
    let base_chart = f.base_chart();
    let base_grid = Grid::default_for(base_chart.dim());
    let reduced = BigIsotropicStructure::with_computed_e_prime(base_chart, qframe, base_grid)?;

    let pi = f.projection();
    let mut roundtrip = true;
    let mut pushes = true;
    let mut orth = true;
    let mut poisson = true;
    for b in reduced.grid().points() {
        let dq = reduced.evaluate_at(b)?;
        let tq = embed_tangent(&Subspace::full(b.len()));
        if !dq.e().intersection(&tq)?.is_zero() {
            poisson = false;
        }
        for t in LEAF_SAMPLES {
            let y = f.lift_point(b, &q(t));
            let dn = restricted.evaluate_at(&y)?;
            if pullback_subspace(&pi, dq.e())? != *dn.e() {
                roundtrip = false;
            }
            if pushforward_subspace(&pi, dn.e())? != *dq.e() {
                pushes = false;
            }
            if pushforward_subspace(&pi, &orthogonal_g(dn.e())?)? != *dq.e_prime() {
                orth = false;
            }
        }
    }
    let integrable = check_integrability(&reduced)?.holds;
    Ok(Reduction {
        restricted,
        foliation: f.clone(),
        projectable_frame: pframe,
        reduced,
        pullback_roundtrip: roundtrip,
        matches_pushforward: pushes,
        orthogonal_matches: orth,
        poisson_condition: poisson,
        integrable,
    })
}

impl Reduction {
    /// `[π*σ_i, π*σ_j] = π*[σ_i, σ_j]` on the reduced frame.
    pub fn bracket_transport_holds(&self) -> Result<bool> {
        let fr = self.reduced.e_frame();
        for i in 0..fr.len() {
            for j in i + 1..fr.len() {
                let up = courant_bracket(&pull_from_base(&fr[i], &self.foliation), &pull_from_base(&fr[j], &self.foliation))?;
                let down = pull_from_base(&courant_bracket(&fr[i], &fr[j])?, &self.foliation);
                if up != down {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `D_P = Tℱ ⊕ {(♯α, α) : α ∈ ann Tℱ}`.
pub fn dirac_along_foliation_p(f: &FoliationData, p: &Bivector) -> Result<BigIsotropicStructure> {
    let n = f.chart().dim();
    let mut e: Vec<BigSection> = f.leaf().iter().map(|&a| BigSection::vector(VectorField::coord(n, a))).collect();
    for &u in f.base() {
        let du = OneForm::coord(n, u);
        e.push(BigSection::new(p.sharp(&du), du)?);
    }
    BigIsotropicStructure::new(f.chart().clone(), e.clone(), e)
}

/// `∂P^{uv}/∂z^a ≡ 0` for base indices `u, v`.
pub fn bivector_projectable(f: &FoliationData, p: &Bivector) -> bool {
    let b = f.base();
    b.iter().enumerate().all(|(i, &u)| {
        b[i + 1..].iter().all(|&v| f.leaf().iter().all(|&a| p.get(u, v).derivative(a).is_zero()))
    })
}

/// `D_ω = Tℱ ⊕ {(Y, ♭_ω Y) : Y ∈ ν}` with `ν` spanned by
/// `Y_u = ∂y^u − t[u][a] ∂z^a`.
pub fn dirac_along_foliation_omega(
    f: &FoliationData,
    omega: &TwoForm,
    t: Option<&[Vec<Polynomial>]>,
) -> Result<BigIsotropicStructure> {
    let n = f.chart().dim();
    let mut e: Vec<BigSection> = f.leaf().iter().map(|&a| BigSection::vector(VectorField::coord(n, a))).collect();
    for (j, &u) in f.base().iter().enumerate() {
        let mut y = VectorField::coord(n, u);
        if let Some(t) = t {
            for (k, &a) in f.leaf().iter().enumerate() {
                y = y.sub(&VectorField::coord(n, a).scale(&t[j][k]));
            }
        }
        let a = omega.interior(&y);
        e.push(BigSection::new(y, a)?);
    }
    BigIsotropicStructure::new(f.chart().clone(), e.clone(), e)
}

/// `i(∂z^a)ω = 0` and `∂ω_{uv}/∂z^a ≡ 0`.
pub fn two_form_foliated(f: &FoliationData, omega: &TwoForm) -> bool {
    let n = f.chart().dim();
    let horizontal = f.leaf().iter().all(|&a| (0..n).all(|j| omega.get(a, j).is_zero()));
    horizontal
        && omega.components().all(|(_, _, w)| f.leaf().iter().all(|&a| w.derivative(a).is_zero()))
}

/// Pointwise equality of two structures on a common grid.
pub fn agree_pointwise(a: &BigIsotropicStructure, b: &BigIsotropicStructure) -> Result<bool> {
    for p in a.grid().points() {
        if a.evaluate_at(p)?.e() != b.evaluate_at(p)?.e() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of a linear map as rows of rationals.
pub fn linear_map_from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> LinearMap {
    LinearMap::new(Matrix::from_rows(rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::canonical::{normalize_frame, transversal_structure, AdaptedChart};
    use crate::structures::{foliation_pair, graph_p};

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn symplectic_r4() -> BigIsotropicStructure {
        let mut p = Bivector::zero(4);
        p.set(0, 1, Polynomial::one());
        p.set(2, 3, Polynomial::one());
        let forms: Vec<OneForm> = (0..4).map(|i| OneForm::coord(4, i)).collect();
        graph_p(Chart::new(["x1", "x2", "x3", "x4"]).unwrap(), &forms, &p).unwrap()
    }

    #[test]
    fn symplectic_slice_restriction() {
        let s = symplectic_r4();
        let n = SubmanifoldData::coordinate_slice(s.chart().clone(), &[(3, q(0))]).unwrap();
        let r = restrict(&s, &n, &Grid::default_for(3)).unwrap();
        assert!(r.e.iter().all(|e| e.dim() == 3));
        let f = FoliationData::from_names(n.chart().clone(), &["x3"]).unwrap();
        let v = check_reducibility(&r, &f).unwrap();
        assert!(v.holds && v.surjective);
        let f1 = FoliationData::from_names(n.chart().clone(), &["x1"]).unwrap();
        let v1 = check_reducibility(&r, &f1).unwrap();
        assert!(!v1.holds && !v1.surjective);
        let trivial = FoliationData::new(n.chart().clone(), vec![]).unwrap();
        assert!(check_reducibility(&r, &trivial).unwrap().holds);
    }

    #[test]
    fn symplectic_slice_reduction() {
        let s = symplectic_r4();
        let n = SubmanifoldData::coordinate_slice(s.chart().clone(), &[(3, q(0))]).unwrap();
        let f = FoliationData::from_names(n.chart().clone(), &["x3"]).unwrap();
        let red = reduce(&s, &n, &f, None, None).unwrap();
        let mut p = Bivector::zero(2);
        p.set(0, 1, Polynomial::one());
        let expected = graph_p(Chart::new(["x1", "x2"]).unwrap(), &[OneForm::coord(2, 0), OneForm::coord(2, 1)], &p).unwrap();
        assert!(agree_pointwise(&red.reduced, &expected).unwrap());
        assert!(red.pullback_roundtrip && red.matches_pushforward && red.orthogonal_matches);
        assert!(red.poisson_condition && red.integrable);
        assert!(red.bracket_transport_holds().unwrap());
    }

    #[test]
    fn identity_reduction_is_trivial() {
        let s = symplectic_r4();
        let n = SubmanifoldData::identity(s.chart().clone());
        let f = FoliationData::new(n.chart().clone(), vec![]).unwrap();
        let red = reduce(&s, &n, &f, Some(Grid::cube(4, -1, 1, 81, 0)), None).unwrap();
        let s2 = s.with_new_grid(red.reduced.grid().clone()).unwrap();
        assert!(agree_pointwise(&red.reduced, &s2).unwrap());
    }

    #[test]
    fn projectability_examples() {
        let c = Chart::new(["x1", "x2", "x3"]).unwrap();
        let f = FoliationData::from_names(c.clone(), &["x3"]).unwrap();
        let e = vec![
            BigSection::vector(VectorField::coord(3, 2)),
            BigSection::new(VectorField::coord(3, 0), OneForm::coord(3, 1)).unwrap(),
        ];
        let s = BigIsotropicStructure::with_computed_e_prime(c.clone(), e, Grid::default_for(3)).unwrap();
        assert!(check_projectable(&s, &f).unwrap().holds());
        let e = vec![
            BigSection::vector(VectorField::coord(3, 2)),
            BigSection::new(VectorField::coord(3, 0), OneForm::coord(3, 1).scale(&x(2))).unwrap(),
        ];
        let grid = Grid::from_points(Grid::default_for(3).points().iter().filter(|p| !p[2].is_zero()).cloned().collect());
        let s = BigIsotropicStructure::with_computed_e_prime(c.clone(), e, grid).unwrap();
        let v = check_projectable(&s, &f).unwrap();
        assert!(v.contains_tf && !v.automorphisms);
        let e = vec![BigSection::vector(VectorField::coord(3, 0))];
        let s = BigIsotropicStructure::with_computed_e_prime(c, e, Grid::default_for(3)).unwrap();
        assert!(!check_projectable(&s, &f).unwrap().contains_tf);
    }

    #[test]
    fn foliation_pair_reduces_to_annihilator() {
        let c = Chart::new(["x1", "x2", "x3"]).unwrap();
        let s = foliation_pair(c.clone(), &[VectorField::coord(3, 2)], &[VectorField::coord(3, 2), VectorField::coord(3, 0)]).unwrap();
        let n = SubmanifoldData::identity(c.clone());
        let f = FoliationData::from_names(c, &["x3"]).unwrap();
        let red = reduce(&s, &n, &f, None, None).unwrap();
        assert_eq!(red.reduced.e_frame(), &[BigSection::form(OneForm::coord(2, 1))]);
        assert!(red.matches_pushforward && red.integrable);
    }

    #[test]
    fn transversal_agrees_with_restriction() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let e = vec![BigSection::vector(VectorField::coord(3, 0)), BigSection::form(OneForm::coord(3, 2))];
        let s = BigIsotropicStructure::with_computed_e_prime(c.clone(), e, Grid::default_for(3)).unwrap();
        let ac = AdaptedChart::from_names(c.clone(), &["x"], &["y"], &["z"]).unwrap();
        let t = transversal_structure(&s, &normalize_frame(&s, &ac).unwrap(), None).unwrap();
        let n = SubmanifoldData::coordinate_slice(c, &[(0, q(0))]).unwrap();
        let r = restrict(&s, &n, t.structure.grid()).unwrap();
        for (i, y) in r.points.iter().enumerate() {
            assert_eq!(&r.e[i], t.structure.evaluate_at(y).unwrap().e());
        }
    }

    #[test]
    fn properness_failure_names_points() {
        let c = Chart::new(["x", "y"]).unwrap();
        // (∂y + y ∂x, 0) is tangent to {x = 0} only at y = 0
        let e = vec![BigSection::vector(VectorField::coord(2, 1).add(&VectorField::coord(2, 0).scale(&x(1))))];
        let s = BigIsotropicStructure::with_computed_e_prime(c.clone(), e, Grid::default_for(2)).unwrap();
        let n = SubmanifoldData::coordinate_slice(c, &[(0, q(0))]).unwrap();
        match restrict(&s, &n, &Grid::default_for(1)) {
            Err(Error::NotProper(msg)) => assert!(msg.contains("at")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn foliated_dirac_constructors() {
        let c = Chart::new(["y1", "y2", "z"]).unwrap();
        let f = FoliationData::from_names(c.clone(), &["z"]).unwrap();
        let mut p = Bivector::zero(3);
        p.set(0, 1, Polynomial::one());
        let d = dirac_along_foliation_p(&f, &p).unwrap();
        assert!(bivector_projectable(&f, &p));
        assert!(check_projectable(&d, &f).unwrap().holds());
        assert!(check_integrability(&d).unwrap().holds);
        let mut pz = Bivector::zero(3);
        pz.set(0, 1, x(2));
        let dz = dirac_along_foliation_p(&f, &pz).unwrap();
        assert!(!bivector_projectable(&f, &pz));
        assert!(!check_projectable(&dz, &f).unwrap().holds());

        let mut w = TwoForm::zero(3);
        w.set(0, 1, Polynomial::one());
        assert!(two_form_foliated(&f, &w));
        let d1 = dirac_along_foliation_omega(&f, &w, None).unwrap();
        let t = vec![vec![x(0)], vec![Polynomial::from_int(3)]];
        let d2 = dirac_along_foliation_omega(&f, &w, Some(&t)).unwrap();
        assert!(agree_pointwise(&d1, &d2).unwrap());
        assert!(check_integrability(&d1).unwrap().holds && check_projectable(&d1, &f).unwrap().holds());
    }
}
