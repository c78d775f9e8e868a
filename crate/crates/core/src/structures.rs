//! Big-isotropic structures given by polynomial frames.

use rand::seq::SliceRandom;

use crate::algebra::polymat::{generic_rank, kernel_frame, rank_exceeds, Minor};
use crate::algebra::{format_rational, q, Matrix, Polynomial, Rational, Subspace};
use crate::big_tangent::{orthogonal_g, tangent_projection, IsotropicData};
use crate::calculus::{
    complete_lift, complete_lift_form, courant_bracket, g_sections, lie_bracket, p_bracket_oneforms,
    schouten_pp, vertical_lift, vertical_lift_form, BigSection, Bivector, Chart, OneForm, TwoForm,
    VectorField,
};
use crate::error::{Error, Result};

const DEFAULT_GRID_CAP: usize = 256;

/// Sample points of a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    points: Vec<Vec<Rational>>,
}

impl Grid {
    /// All points of `{lo..=hi}^m`, thinned to `cap` points by a seeded
    /// shuffle when larger. The origin is always kept.
    pub fn cube(m: usize, lo: i64, hi: i64, cap: usize, seed: u64) -> Self {
        let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
        for _ in 0..m {
            let mut next = Vec::with_capacity(points.len() * (hi - lo + 1) as usize);
            for p in &points {
                for v in lo..=hi {
                    let mut np = p.clone();
                    np.push(q(v));
                    next.push(np);
                }
            }
            points = next;
            if points.len() > 64 * cap {
                // Thin early so large charts stay cheap.
                let mut rng = crate::random::rng(seed ^ points.len() as u64);
                points.shuffle(&mut rng);
                points.truncate(8 * cap);
            }
        }
        if points.len() > cap {
            let origin = vec![q(0); m];
            let mut rng = crate::random::rng(seed);
            points.shuffle(&mut rng);
            points.truncate(cap);
            if lo <= 0 && hi >= 0 && !points.contains(&origin) {
                points[0] = origin;
            }
            points.sort();
        }
        Grid { points }
    }

    pub fn default_for(m: usize) -> Self {
        Self::cube(m, -2, 2, DEFAULT_GRID_CAP, 0)
    }

    pub fn from_points(points: Vec<Vec<Rational>>) -> Self {
        Grid { points }
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn format_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(format_rational).collect()
}

pub fn frame_rows(frame: &[BigSection]) -> Vec<Vec<Polynomial>> {
    frame.iter().map(BigSection::row).collect()
}

fn eval_rows(frame: &[BigSection], p: &[Rational]) -> Vec<Vec<Rational>> {
    frame.iter().map(|s| s.eval(p)).collect()
}

/// `None` when `v` lies in the span of `rows` (of generic rank `rank`);
/// otherwise a nonvanishing `(rank+1)`-minor of the stacked matrix.
pub fn membership_witness(rows: &[Vec<Polynomial>], rank: usize, v: Vec<Polynomial>) -> Option<Minor> {
    let mut stacked = rows.to_vec();
    stacked.push(v);
    rank_exceeds(&stacked, rank)
}

/// Rank-`k` frame of `E` together with a rank-`(2m-k)` frame of `E' = E^⊥`.
#[derive(Clone, Debug)]
pub struct BigIsotropicStructure {
    chart: Chart,
    e: Vec<BigSection>,
    e_prime: Vec<BigSection>,
    grid: Grid,
}

impl BigIsotropicStructure {
    /// Validates on the default sample grid.
    pub fn new(chart: Chart, e: Vec<BigSection>, e_prime: Vec<BigSection>) -> Result<Self> {
        let grid = Grid::default_for(chart.dim());
        Self::with_grid(chart, e, e_prime, grid)
    }

    /// Symbolic isotropy and orthogonality, then pointwise ranks and
    /// `span E'_x = (E_x)^⊥` at every grid point.
    pub fn with_grid(chart: Chart, e: Vec<BigSection>, e_prime: Vec<BigSection>, grid: Grid) -> Result<Self> {
        let m = chart.dim();
        for s in e.iter().chain(&e_prime) {
            if s.m() != m {
                return Err(Error::ChartMismatch);
            }
        }
        if e.len() + e_prime.len() != 2 * m {
            return Err(Error::InvalidStructure(format!(
                "frame sizes {} + {} differ from 2m = {}",
                e.len(),
                e_prime.len(),
                2 * m
            )));
        }
        for i in 0..e.len() {
            for j in i..e.len() {
                if !g_sections(&e[i], &e[j])?.is_zero() {
                    return Err(Error::NotIsotropic(format!("g(e{}, e{}) is not zero", i + 1, j + 1)));
                }
            }
            for (j, t) in e_prime.iter().enumerate() {
                if !g_sections(&e[i], t)?.is_zero() {
                    return Err(Error::NotIsotropic(format!("g(e{}, e'{}) is not zero", i + 1, j + 1)));
                }
            }
        }
        let s = BigIsotropicStructure { chart, e, e_prime, grid };
        for p in s.grid.points() {
            s.evaluate_at(p)?;
        }
        Ok(s)
    }

    /// Computes a polynomial frame of `E'` over the rational-function field.
    pub fn with_computed_e_prime(chart: Chart, e: Vec<BigSection>, grid: Grid) -> Result<Self> {
        let m = chart.dim();
        let swapped: Vec<Vec<Polynomial>> = e
            .iter()
            .map(|s| {
                let mut r = s.a.comps().to_vec();
                r.extend(s.x.comps().iter().cloned());
                r
            })
            .collect();
        let e_prime = kernel_frame(&swapped, 2 * m)
            .into_iter()
            .map(BigSection::from_row)
            .collect::<Result<Vec<_>>>()?;
        Self::with_grid(chart, e, e_prime, grid)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn m(&self) -> usize {
        self.chart.dim()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn e_frame(&self) -> &[BigSection] {
        &self.e
    }

    pub fn e_prime_frame(&self) -> &[BigSection] {
        &self.e_prime
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn with_new_grid(&self, grid: Grid) -> Result<Self> {
        Self::with_grid(self.chart.clone(), self.e.clone(), self.e_prime.clone(), grid)
    }

    pub fn evaluate_at(&self, p: &[Rational]) -> Result<IsotropicData> {
        let m = self.m();
        if p.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: p.len() });
        }
        let e = Subspace::span(2 * m, &eval_rows(&self.e, p));
        if e.dim() != self.e.len() {
            return Err(Error::DegeneratePoint { point: format_point(p), expected: self.e.len(), found: e.dim() });
        }
        let ep = Subspace::span(2 * m, &eval_rows(&self.e_prime, p));
        if ep.dim() != self.e_prime.len() {
            return Err(Error::DegeneratePoint {
                point: format_point(p),
                expected: self.e_prime.len(),
                found: ep.dim(),
            });
        }
        if orthogonal_g(&e)? != ep {
            return Err(Error::InvalidStructure(format!(
                "E' frame does not span the orthogonal of E at {:?}",
                format_point(p)
            )));
        }
        IsotropicData::new(e, ep)
    }

    pub fn e_rows(&self) -> Vec<Vec<Polynomial>> {
        frame_rows(&self.e)
    }

    pub fn e_prime_rows(&self) -> Vec<Vec<Polynomial>> {
        frame_rows(&self.e_prime)
    }

    /// `None` when `s` is a section of `E`.
    pub fn e_membership(&self, s: &BigSection) -> Option<Minor> {
        membership_witness(&self.e_rows(), self.rank(), s.row())
    }

    /// `None` when `s` is a section of `E'`.
    pub fn e_prime_membership(&self, s: &BigSection) -> Option<Minor> {
        membership_witness(&self.e_prime_rows(), self.e_prime.len(), s.row())
    }

    /// `dim ℰ_x` at each grid point.
    pub fn characteristic_dims(&self) -> Vec<usize> {
        let m = self.m();
        self.grid
            .points()
            .iter()
            .map(|p| {
                let e = Subspace::span(2 * m, &eval_rows(&self.e, p));
                tangent_projection(&e).expect("even").dim()
            })
            .collect()
    }

    /// `dim ℰ` constant on the sample grid.
    pub fn is_regular(&self) -> bool {
        let d = self.characteristic_dims();
        d.windows(2).all(|w| w[0] == w[1])
    }
}

/// A bracket of frame sections that leaves the target span.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketWitness {
    pub left: usize,
    pub right: usize,
    pub bracket: BigSection,
    pub minor: Minor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketVerdict {
    pub holds: bool,
    pub witness: Option<BracketWitness>,
    /// Grid points at which the frame ranks were confirmed.
    pub sampled_points: usize,
}

/// `[e_i, e_j] ∈ span E` for all frame pairs, by the minor test.
pub fn check_integrability(s: &BigIsotropicStructure) -> Result<BracketVerdict> {
    let rows = s.e_rows();
    let k = s.rank();
    for i in 0..k {
        for j in i + 1..k {
            let b = courant_bracket(&s.e[i], &s.e[j])?;
            if let Some(minor) = membership_witness(&rows, k, b.row()) {
                return Ok(BracketVerdict {
                    holds: false,
                    witness: Some(BracketWitness { left: i, right: j, bracket: b, minor }),
                    sampled_points: s.grid.len(),
                });
            }
        }
    }
    Ok(BracketVerdict { holds: true, witness: None, sampled_points: s.grid.len() })
}

/// `[e_i, e'_j] ∈ span E'` for all pairs.
pub fn check_module_property(s: &BigIsotropicStructure) -> Result<BracketVerdict> {
    let rows = s.e_prime_rows();
    let r = s.e_prime.len();
    for (i, a) in s.e.iter().enumerate() {
        for (j, b) in s.e_prime.iter().enumerate() {
            let br = courant_bracket(a, b)?;
            if let Some(minor) = membership_witness(&rows, r, br.row()) {
                return Ok(BracketVerdict {
                    holds: false,
                    witness: Some(BracketWitness { left: i, right: j, bracket: br, minor }),
                    sampled_points: s.grid.len(),
                });
            }
        }
    }
    Ok(BracketVerdict { holds: true, witness: None, sampled_points: s.grid.len() })
}

/// Outcome of a named list of conditions.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub failures: Vec<String>,
}

impl ConditionVerdict {
    pub fn from_failures(failures: Vec<String>) -> Self {
        ConditionVerdict { holds: failures.is_empty(), failures }
    }
}

fn vf_rows(fs: &[VectorField]) -> Vec<Vec<Polynomial>> {
    fs.iter().map(|v| v.comps().to_vec()).collect()
}

fn form_rows(fs: &[OneForm]) -> Vec<Vec<Polynomial>> {
    fs.iter().map(|v| v.comps().to_vec()).collect()
}

fn require_independent(rows: &[Vec<Polynomial>], what: &str) -> Result<usize> {
    let (r, _) = generic_rank(rows);
    if r != rows.len() {
        return Err(Error::RankPrecondition(format!("{what} frame is not independent")));
    }
    Ok(r)
}

fn vector_frame(rows: Vec<Vec<Polynomial>>) -> Vec<VectorField> {
    rows.into_iter().map(VectorField::new).collect()
}

fn form_frame(rows: Vec<Vec<Polynomial>>) -> Vec<OneForm> {
    rows.into_iter().map(OneForm::new).collect()
}

/// `E_θ = {(X, i(X)θ) : X ∈ S}` with `E' = {(Y, i(Y)θ)} + (0 ⊕ ann S)`.
pub fn graph_theta(chart: Chart, s_frame: &[VectorField], theta: &TwoForm) -> Result<BigIsotropicStructure> {
    let m = chart.dim();
    let rows = vf_rows(s_frame);
    require_independent(&rows, "S")?;
    let e = s_frame.iter().map(|x| BigSection::new(x.clone(), theta.interior(x))).collect::<Result<Vec<_>>>()?;
    let mut ep: Vec<BigSection> = (0..m)
        .map(|i| {
            let d = VectorField::coord(m, i);
            let a = theta.interior(&d);
            BigSection::new(d, a)
        })
        .collect::<Result<_>>()?;
    ep.extend(form_frame(kernel_frame(&rows, m)).into_iter().map(BigSection::form));
    BigIsotropicStructure::new(chart, e, ep)
}

/// `S` involutive and `dθ(X_i, X_j, ∂_l) = 0`.
pub fn check_theta_condition(s_frame: &[VectorField], theta: &TwoForm) -> Result<ConditionVerdict> {
    let m = theta.m();
    let rows = vf_rows(s_frame);
    let k = require_independent(&rows, "S")?;
    let dt = theta.d();
    let mut failures = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let b = lie_bracket(&s_frame[i], &s_frame[j])?;
            if membership_witness(&rows, k, b.comps().to_vec()).is_some() {
                failures.push(format!("[X{}, X{}] is not in S", i + 1, j + 1));
            }
            for l in 0..m {
                let v = dt.eval(&s_frame[i], &s_frame[j], &VectorField::coord(m, l));
                if !v.is_zero() {
                    failures.push(format!("dθ(X{}, X{}, ∂{}) = {}", i + 1, j + 1, l + 1, v));
                }
            }
        }
    }
    Ok(ConditionVerdict::from_failures(failures))
}

/// `E_P = {(♯σ, σ) : σ ∈ S*}` with `E' = {(♯β, β)} + (ann S* ⊕ 0)`.
pub fn graph_p(chart: Chart, s_star: &[OneForm], p: &Bivector) -> Result<BigIsotropicStructure> {
    let m = chart.dim();
    let rows = form_rows(s_star);
    require_independent(&rows, "S*")?;
    let e = s_star.iter().map(|a| BigSection::new(p.sharp(a), a.clone())).collect::<Result<Vec<_>>>()?;
    let mut ep: Vec<BigSection> = (0..m)
        .map(|i| {
            let b = OneForm::coord(m, i);
            BigSection::new(p.sharp(&b), b)
        })
        .collect::<Result<_>>()?;
    ep.extend(vector_frame(kernel_frame(&rows, m)).into_iter().map(BigSection::vector));
    BigIsotropicStructure::new(chart, e, ep)
}

/// `S*` closed under the `P`-bracket and `[P,P](σ_i, σ_j, dx^l) = 0`.
pub fn check_p_conditions(s_star: &[OneForm], p: &Bivector) -> Result<ConditionVerdict> {
    let m = p.m();
    let rows = form_rows(s_star);
    let k = require_independent(&rows, "S*")?;
    let pp = schouten_pp(p);
    let mut failures = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let b = p_bracket_oneforms(p, &s_star[i], &s_star[j])?;
            if membership_witness(&rows, k, b.comps().to_vec()).is_some() {
                failures.push(format!("{{σ{}, σ{}}}_P is not in S*", i + 1, j + 1));
            }
            for l in 0..m {
                let v = pp.eval(&s_star[i], &s_star[j], &OneForm::coord(m, l));
                if !v.is_zero() {
                    failures.push(format!("[P,P](σ{}, σ{}, dx{}) = {}", i + 1, j + 1, l + 1, v));
                }
            }
        }
    }
    Ok(ConditionVerdict::from_failures(failures))
}

/// `E = F ⊕ ann F'`, `E' = F' ⊕ ann F`.
pub fn foliation_pair(chart: Chart, f: &[VectorField], f_prime: &[VectorField]) -> Result<BigIsotropicStructure> {
    let m = chart.dim();
    let fr = vf_rows(f);
    let fpr = vf_rows(f_prime);
    require_independent(&fr, "F")?;
    let rp = require_independent(&fpr, "F'")?;
    for row in &fr {
        if membership_witness(&fpr, rp, row.clone()).is_some() {
            return Err(Error::NotContained);
        }
    }
    let mut e: Vec<BigSection> = f.iter().cloned().map(BigSection::vector).collect();
    e.extend(form_frame(kernel_frame(&fpr, m)).into_iter().map(BigSection::form));
    let mut ep: Vec<BigSection> = f_prime.iter().cloned().map(BigSection::vector).collect();
    ep.extend(form_frame(kernel_frame(&fr, m)).into_iter().map(BigSection::form));
    BigIsotropicStructure::new(chart, e, ep)
}

/// Frames `{(X^C, α^C), (X^V, α^V)}` on the chart `(x, ẋ)`.
pub fn tangent_lift(s: &BigIsotropicStructure) -> Result<BigIsotropicStructure> {
    let lift = |frame: &[BigSection]| -> Result<Vec<BigSection>> {
        let mut out = Vec::new();
        for t in frame {
            out.push(BigSection::new(complete_lift(&t.x), complete_lift_form(&t.a))?);
            out.push(BigSection::new(vertical_lift(&t.x), vertical_lift_form(&t.a))?);
        }
        Ok(out)
    };
    BigIsotropicStructure::new(s.chart.tangent_chart(), lift(&s.e)?, lift(&s.e_prime)?)
}

/// `d_tr ϖ(a, b, c) = 2 g([a, b], c)` for `a, b ∈ ΓE` and `c ∈ ΓE'`.
pub fn d_tr_varpi(s: &BigIsotropicStructure, a: &BigSection, b: &BigSection, c: &BigSection) -> Result<Polynomial> {
    if s.e_membership(a).is_some() || s.e_membership(b).is_some() {
        return Err(Error::NotInSpan("first two arguments must be sections of E".into()));
    }
    if s.e_prime_membership(c).is_some() {
        return Err(Error::NotInSpan("third argument must be a section of E'".into()));
    }
    Ok(g_sections(&courant_bracket(a, b)?, c)?.scale(&q(2)))
}

/// Coordinate differential of ϖ evaluated through lifts:
/// `X1(α2(Y)) − X2(α1(Y)) + Y(α1(X2)) + β([X1,X2]) − α2([X1,Y]) + α1([X2,Y])`.
pub fn d_varpi_from_lifts(a: &BigSection, b: &BigSection, c: &BigSection) -> Result<Polynomial> {
    let (x1, a1) = (&a.x, &a.a);
    let (x2, a2) = (&b.x, &b.a);
    let (y, beta) = (&c.x, &c.a);
    let mut r = &x1.apply(&a2.pair(y)) - &x2.apply(&a1.pair(y));
    r = &r + &y.apply(&a1.pair(x2));
    r = &r + &beta.pair(&lie_bracket(x1, x2)?);
    r = &r - &a2.pair(&lie_bracket(x1, y)?);
    r = &r + &a1.pair(&lie_bracket(x2, y)?);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularVerdict {
    pub characteristic_involutive: bool,
    pub module_invariant: bool,
    pub d_tr_varpi_vanishes: bool,
    pub holds: bool,
}

/// Integrability through ℰ, ℰ' and ϖ: ℰ involutive, `[Γℰ, Γℰ'] ⊆ Γℰ'`, and
/// `d_tr ϖ(X1, X2, Y) = 0` with `Y ∈ ℰ'`. Valid for regular structures.
pub fn regular_criterion(s: &BigIsotropicStructure) -> Result<RegularVerdict> {
    let ce: Vec<VectorField> = s.e.iter().map(|t| t.x.clone()).collect();
    let cep: Vec<VectorField> = s.e_prime.iter().map(|t| t.x.clone()).collect();
    let ce_rows = vf_rows(&ce);
    let cep_rows = vf_rows(&cep);
    let (r, _) = generic_rank(&ce_rows);
    let (rp, _) = generic_rank(&cep_rows);
    let mut inv = true;
    'outer: for i in 0..ce.len() {
        for j in i + 1..ce.len() {
            let b = lie_bracket(&ce[i], &ce[j])?;
            if membership_witness(&ce_rows, r, b.comps().to_vec()).is_some() {
                inv = false;
                break 'outer;
            }
        }
    }
    let mut modinv = true;
    'outer2: for x in &ce {
        for y in &cep {
            let b = lie_bracket(x, y)?;
            if membership_witness(&cep_rows, rp, b.comps().to_vec()).is_some() {
                modinv = false;
                break 'outer2;
            }
        }
    }
    let mut closed = true;
    'outer3: for i in 0..s.e.len() {
        for j in i + 1..s.e.len() {
            for c in &s.e_prime {
                if !d_varpi_from_lifts(&s.e[i], &s.e[j], c)?.is_zero() {
                    closed = false;
                    break 'outer3;
                }
            }
        }
    }
    Ok(RegularVerdict {
        characteristic_involutive: inv,
        module_invariant: modinv,
        d_tr_varpi_vanishes: closed,
        holds: inv && modinv && closed,
    })
}

/// `{f, h} = X_f h` for a Hamiltonian pair `(X_f, df) ∈ ΓE` and a weakly
/// Hamiltonian pair `(X_h, dh) ∈ ΓE'`.
pub fn poisson_bracket(
    s: &BigIsotropicStructure,
    f: &Polynomial,
    x_f: &VectorField,
    h: &Polynomial,
    x_h: &VectorField,
) -> Result<Polynomial> {
    let m = s.m();
    let sf = BigSection::new(x_f.clone(), OneForm::exact(f, m))?;
    let sh = BigSection::new(x_h.clone(), OneForm::exact(h, m))?;
    if s.e_membership(&sf).is_some() {
        return Err(Error::NotInSpan("(X_f, df) is not a section of E".into()));
    }
    if s.e_prime_membership(&sh).is_some() {
        return Err(Error::NotInSpan("(X_h, dh) is not a section of E'".into()));
    }
    Ok(x_f.apply(h))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnlargementVerdict {
    pub anchor: bool,
    pub leibniz: bool,
    pub jacobi: bool,
    pub coanchor_skew: bool,
    pub coanchor_bracket: bool,
    pub failures: Vec<String>,
}

impl EnlargementVerdict {
    pub fn holds(&self) -> bool {
        self.anchor && self.leibniz && self.jacobi && self.coanchor_skew && self.coanchor_bracket
    }
}

/// Axioms of a modular enlargement for `A = E`, `B = E'` with the Courant
/// bracket and anchor `pr_TM`, plus the co-anchor conditions for `pr_T*M`,
/// checked on frame sections with test functions `f`, `h`.
pub fn verify_modular_enlargement(s: &BigIsotropicStructure, f: &Polynomial, h: &Polynomial) -> Result<EnlargementVerdict> {
    let m = s.m();
    let mut v = EnlargementVerdict {
        anchor: true,
        leibniz: true,
        jacobi: true,
        coanchor_skew: true,
        coanchor_bracket: true,
        failures: Vec::new(),
    };
    for (i, a) in s.e.iter().enumerate() {
        for (j, b) in s.e_prime.iter().enumerate() {
            let ab = courant_bracket(a, b)?;
            if ab.x != lie_bracket(&a.x, &b.x)? {
                v.anchor = false;
                v.failures.push(format!("anchor fails on (e{}, e'{})", i + 1, j + 1));
            }
            // [fa, hb] = fh[a,b] + f((ρa)h) b − h((ρb)f) a
            let lhs = courant_bracket(&a.scale(f), &b.scale(h))?;
            let rhs = ab
                .scale(&(f * h))
                .add(&b.scale(&(f * &a.x.apply(h))))
                .sub(&a.scale(&(h * &b.x.apply(f))));
            if lhs != rhs {
                v.leibniz = false;
                v.failures.push(format!("Leibniz rule fails on (e{}, e'{})", i + 1, j + 1));
            }
            let skew = &a.a.pair(&b.x) + &b.a.pair(&a.x);
            if !skew.is_zero() {
                v.coanchor_skew = false;
                v.failures.push(format!("co-anchor skew condition fails on (e{}, e'{})", i + 1, j + 1));
            }
            let expected = crate::calculus::lie_derivative_form(&a.x, &b.a)?
                .sub(&crate::calculus::lie_derivative_form(&b.x, &a.a)?)
                .add(&OneForm::exact(&a.a.pair(&b.x), m));
            if ab.a != expected {
                v.coanchor_bracket = false;
                v.failures.push(format!("co-anchor bracket condition fails on (e{}, e'{})", i + 1, j + 1));
            }
        }
    }
    for (i, a1) in s.e.iter().enumerate() {
        for (j, a2) in s.e.iter().enumerate() {
            if i == j {
                continue;
            }
            let a12 = courant_bracket(a1, a2)?;
            for (l, b) in s.e_prime.iter().enumerate() {
                let lhs = courant_bracket(a1, &courant_bracket(a2, b)?)?;
                let rhs = courant_bracket(&a12, b)?.add(&courant_bracket(a2, &courant_bracket(a1, b)?)?);
                if lhs != rhs {
                    v.jacobi = false;
                    v.failures.push(format!("Jacobi fails on (e{}, e{}, e'{})", i + 1, j + 1, l + 1));
                }
            }
        }
    }
    Ok(v)
}

/// Matrix of the pointwise values of a frame, for reports.
pub fn frame_matrix_at(frame: &[BigSection], p: &[Rational]) -> Matrix<Rational> {
    let cols = frame.first().map_or(0, |s| 2 * s.m());
    Matrix::from_rows(eval_rows(frame, p), cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xv(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn split_r3() -> BigIsotropicStructure {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let e = vec![BigSection::vector(VectorField::coord(3, 0)), BigSection::form(OneForm::coord(3, 2))];
        let ep = vec![
            e[0].clone(),
            e[1].clone(),
            BigSection::vector(VectorField::coord(3, 1)),
            BigSection::form(OneForm::coord(3, 1)),
        ];
        BigIsotropicStructure::new(c, e, ep).unwrap()
    }

    #[test]
    fn split_r3_integrable() {
        let s = split_r3();
        assert!(check_integrability(&s).unwrap().holds);
        assert!(check_module_property(&s).unwrap().holds);
        let d = s.evaluate_at(&[q(0), q(0), q(0)]).unwrap();
        assert_eq!(d.e().dim(), 2);
    }

    #[test]
    fn non_integrable_theta() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let mut t = TwoForm::zero(3);
        t.set(0, 1, xv(2));
        let sf = vec![VectorField::coord(3, 0), VectorField::coord(3, 1)];
        let s = graph_theta(c, &sf, &t).unwrap();
        let v = check_integrability(&s).unwrap();
        assert!(!v.holds);
        assert!(!v.witness.unwrap().minor.value.is_zero());
        assert!(!check_theta_condition(&sf, &t).unwrap().holds);
    }

    #[test]
    fn theta_graph_line() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let mut t = TwoForm::zero(3);
        t.set(0, 1, Polynomial::one());
        let sf = vec![VectorField::coord(3, 0)];
        let s = graph_theta(c, &sf, &t).unwrap();
        assert_eq!(s.e_frame()[0].a, OneForm::coord(3, 1));
        assert!(check_integrability(&s).unwrap().holds);
    }

    #[test]
    fn foliation_pairs() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let f = vec![VectorField::coord(3, 0)];
        let fp = vec![VectorField::coord(3, 0), VectorField::coord(3, 1)];
        assert!(check_integrability(&foliation_pair(c.clone(), &f, &fp).unwrap()).unwrap().holds);
        let xz = VectorField::new(vec![Polynomial::one(), Polynomial::zero(), xv(1)]);
        let g = vec![xz, VectorField::coord(3, 1)];
        let s = foliation_pair(c.clone(), &g, &g).unwrap();
        assert!(!check_integrability(&s).unwrap().holds);
        let empty = foliation_pair(c.clone(), &[], &[VectorField::coord(3, 0), VectorField::coord(3, 1), VectorField::coord(3, 2)]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(check_integrability(&empty).unwrap().holds);
        assert_eq!(foliation_pair(c, &fp, &f).unwrap_err(), Error::NotContained);
    }

    #[test]
    fn poisson_anchor() {
        let c = Chart::new(["x1", "x2"]).unwrap();
        let mut p = Bivector::zero(2);
        p.set(0, 1, Polynomial::one());
        let s = graph_p(c, &[OneForm::coord(2, 0), OneForm::coord(2, 1)], &p).unwrap();
        let f = xv(0);
        let h = xv(1);
        let xf = p.sharp(&OneForm::exact(&f, 2));
        let xh = p.sharp(&OneForm::exact(&h, 2));
        let b = poisson_bracket(&s, &f, &xf, &h, &xh).unwrap();
        assert_eq!(b, Polynomial::one());
        let rev = poisson_bracket(&s, &h, &xh, &f, &xf).unwrap();
        assert_eq!(rev, -b.clone());
        // {f, h} = −ϖ(X_f, X_h)
        let d = s.evaluate_at(&[q(0), q(0)]).unwrap();
        let t = crate::big_tangent::characteristic_triple(&d).unwrap();
        let w = t.eval(&xf.eval(&[q(0), q(0)]), &xh.eval(&[q(0), q(0)])).unwrap();
        assert_eq!(Polynomial::constant(-w), b);
        assert!(poisson_bracket(&s, &f, &VectorField::zero(2), &h, &xh).is_err());
    }

    #[test]
    fn lift_rank_and_integrability() {
        let s = split_r3();
        let l = tangent_lift(&s).unwrap();
        assert_eq!(l.rank(), 4);
        assert_eq!(l.m(), 6);
        assert!(check_integrability(&l).unwrap().holds);
    }

    #[test]
    fn computed_e_prime_matches() {
        let s = split_r3();
        let c = BigIsotropicStructure::with_computed_e_prime(s.chart().clone(), s.e_frame().to_vec(), Grid::default_for(3))
            .unwrap();
        assert_eq!(c.e_prime_frame().len(), 4);
    }

    #[test]
    fn enlargement_on_example() {
        let s = split_r3();
        let v = verify_modular_enlargement(&s, &(&xv(0) * &xv(1)), &(&xv(2) + &Polynomial::one())).unwrap();
        assert!(v.holds(), "{:?}", v.failures);
        let r = regular_criterion(&s).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn grid_is_capped_and_keeps_origin() {
        let g = Grid::default_for(5);
        assert_eq!(g.len(), 256);
        assert!(g.points().contains(&vec![q(0); 5]));
        assert_eq!(Grid::default_for(2).len(), 25);
        assert_eq!(Grid::default_for(5), Grid::default_for(5));
    }
}
