//! Cartan calculus with polynomial coefficients.
//!
//! Skew tensors store components with strictly increasing indices and no
//! combinatorial factor: `θ(∂_i, ∂_j) = θ_ij` and `P(dx^i, dx^j) = P^ij`.
//! Interior products insert into the first slot, `♯σ = P(σ, ·)`.

use std::collections::BTreeMap;

use crate::algebra::{q, Polynomial, Rational};
use crate::error::{Error, Result};

/// Ordered, distinct coordinate names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidStructure(format!("duplicate coordinate {n}")));
            }
        }
        Ok(Chart { names })
    }

    /// `x1, ..., xm`.
    pub fn standard(m: usize) -> Self {
        Chart { names: (1..=m).map(|i| format!("x{i}")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Chart `(x, ẋ)` of the tangent bundle; velocity names get a `dot` suffix.
    pub fn tangent_chart(&self) -> Chart {
        let mut names = self.names.clone();
        names.extend(self.names.iter().map(|n| format!("{n}dot")));
        Chart { names }
    }
}

fn check_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::ChartMismatch)
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField(Vec<Polynomial>);

impl VectorField {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        VectorField(comps)
    }

    pub fn zero(m: usize) -> Self {
        VectorField(vec![Polynomial::zero(); m])
    }

    /// `∂/∂x^i`.
    pub fn coord(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.0[i] = Polynomial::one();
        v
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    /// `X(f)`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (i, c) in self.0.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c * &f.derivative(i);
            }
        }
        acc
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        VectorField(self.0.iter().map(|c| c * f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        VectorField(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        VectorField(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        VectorField(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn eval(&self, p: &[Rational]) -> Vec<Rational> {
        self.0.iter().map(|c| c.eval(p)).collect()
    }

    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        VectorField(self.0.iter().map(|c| c.substitute(images)).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneForm(Vec<Polynomial>);

impl OneForm {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        OneForm(comps)
    }

    pub fn zero(m: usize) -> Self {
        OneForm(vec![Polynomial::zero(); m])
    }

    /// `dx^i`.
    pub fn coord(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.0[i] = Polynomial::one();
        v
    }

    /// `df`.
    pub fn exact(f: &Polynomial, m: usize) -> Self {
        OneForm((0..m).map(|i| f.derivative(i)).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn comps(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    /// `α(X)`.
    pub fn pair(&self, x: &VectorField) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (a, b) in self.0.iter().zip(&x.0) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a * b;
            }
        }
        acc
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        OneForm(self.0.iter().map(|c| c * f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        OneForm(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        OneForm(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        OneForm(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn d(&self) -> TwoForm {
        let m = self.m();
        let mut t = TwoForm::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                t.set(i, j, &self.0[j].derivative(i) - &self.0[i].derivative(j));
            }
        }
        t
    }

    pub fn wedge(&self, o: &OneForm) -> TwoForm {
        let m = self.m();
        let mut t = TwoForm::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                t.set(i, j, &(&self.0[i] * &o.0[j]) - &(&self.0[j] * &o.0[i]));
            }
        }
        t
    }

    pub fn eval(&self, p: &[Rational]) -> Vec<Rational> {
        self.0.iter().map(|c| c.eval(p)).collect()
    }

    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        OneForm(self.0.iter().map(|c| c.substitute(images)).collect())
    }
}

/// Sort a pair, returning the sign of the permutation.
fn sort2(i: usize, j: usize) -> Option<((usize, usize), bool)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some(((i, j), false)),
        std::cmp::Ordering::Greater => Some(((j, i), true)),
        std::cmp::Ordering::Equal => None,
    }
}

fn sort3(i: usize, j: usize, k: usize) -> Option<((usize, usize, usize), bool)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut neg = false;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                neg = !neg;
            }
        }
    }
    Some(((v[0], v[1], v[2]), neg))
}

#[derive(Clone, Debug, PartialEq, Default)]
struct Skew2 {
    m: usize,
    c: BTreeMap<(usize, usize), Polynomial>,
}

impl Skew2 {
    fn get(&self, i: usize, j: usize) -> Polynomial {
        match sort2(i, j) {
            None => Polynomial::zero(),
            Some((k, neg)) => {
                let v = self.c.get(&k).cloned().unwrap_or_default();
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        let (k, neg) = sort2(i, j).expect("diagonal of a skew tensor");
        let v = if neg { -v } else { v };
        if v.is_zero() {
            self.c.remove(&k);
        } else {
            self.c.insert(k, v);
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `Σ_{i,j} a_i b_j T_ij` over all ordered pairs.
    fn contract(&self, a: &[Polynomial], b: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (&(i, j), v) in &self.c {
            let t = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
            if !t.is_zero() {
                acc = acc + v * &t;
            }
        }
        acc
    }

    /// `j ↦ Σ_i a_i T_ij`.
    fn contract_first(&self, a: &[Polynomial]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.m];
        for (&(i, j), v) in &self.c {
            out[j] = &out[j] + &(&a[i] * v);
            out[i] = &out[i] - &(&a[j] * v);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
struct Skew3 {
    m: usize,
    c: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl Skew3 {
    fn get(&self, i: usize, j: usize, k: usize) -> Polynomial {
        match sort3(i, j, k) {
            None => Polynomial::zero(),
            Some((key, neg)) => {
                let v = self.c.get(&key).cloned().unwrap_or_default();
                if neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Polynomial) {
        let (key, neg) = sort3(i, j, k).expect("repeated index in a skew tensor");
        let v = if neg { -v } else { v };
        if v.is_zero() {
            self.c.remove(&key);
        } else {
            self.c.insert(key, v);
        }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn contract(&self, a: &[Polynomial], b: &[Polynomial], c: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (&(i, j, k), v) in &self.c {
            let det = &(&(&a[i] * &(&(&b[j] * &c[k]) - &(&b[k] * &c[j])))
                - &(&a[j] * &(&(&b[i] * &c[k]) - &(&b[k] * &c[i]))))
                + &(&a[k] * &(&(&b[i] * &c[j]) - &(&b[j] * &c[i])));
            if !det.is_zero() {
                acc = acc + v * &det;
            }
        }
        acc
    }

    /// `(j, k) ↦ Σ_i a_i T_ijk`.
    fn contract_first(&self, a: &[Polynomial]) -> Skew2 {
        let mut out = Skew2 { m: self.m, c: BTreeMap::new() };
        for j in 0..self.m {
            for k in j + 1..self.m {
                let mut acc = Polynomial::zero();
                for (i, ai) in a.iter().enumerate() {
                    if !ai.is_zero() {
                        acc = acc + ai * &self.get(i, j, k);
                    }
                }
                out.set(j, k, acc);
            }
        }
        out
    }
}

macro_rules! skew2_type {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name(Skew2);

        impl $name {
            pub fn zero(m: usize) -> Self {
                $name(Skew2 { m, c: BTreeMap::new() })
            }

            pub fn m(&self) -> usize {
                self.0.m
            }

            /// Component with any index order; skew-symmetry applied.
            pub fn get(&self, i: usize, j: usize) -> Polynomial {
                self.0.get(i, j)
            }

            pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
                self.0.set(i, j, v)
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            /// Nonzero components with `i < j`.
            pub fn components(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
                self.0.c.iter().map(|(&(i, j), v)| (i, j, v))
            }

            pub fn add(&self, o: &Self) -> Self {
                let mut out = self.clone();
                for (&(i, j), v) in &o.0.c {
                    out.set(i, j, &self.get(i, j) + v);
                }
                out
            }

            pub fn scale(&self, f: &Polynomial) -> Self {
                let mut out = Self::zero(self.m());
                for (&(i, j), v) in &self.0.c {
                    out.set(i, j, v * f);
                }
                out
            }
        }
    };
}

skew2_type!(TwoForm);
skew2_type!(Bivector);

impl TwoForm {
    /// `θ(X, Y)`.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Polynomial {
        self.0.contract(&x.0, &y.0)
    }

    /// `i(X)θ = θ(X, ·)`.
    pub fn interior(&self, x: &VectorField) -> OneForm {
        OneForm(self.0.contract_first(&x.0))
    }

    pub fn d(&self) -> ThreeForm {
        let m = self.m();
        let mut t = ThreeForm::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let v = &(&self.get(j, k).derivative(i) - &self.get(i, k).derivative(j))
                        + &self.get(i, j).derivative(k);
                    t.set(i, j, k, v);
                }
            }
        }
        t
    }
}

impl Bivector {
    /// `P(α, β)`.
    pub fn pair(&self, a: &OneForm, b: &OneForm) -> Polynomial {
        self.0.contract(&a.0, &b.0)
    }

    /// `♯σ = P(σ, ·)`.
    pub fn sharp(&self, s: &OneForm) -> VectorField {
        VectorField(self.0.contract_first(&s.0))
    }
}

macro_rules! skew3_type {
    ($name:ident) => {
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name(Skew3);

        impl $name {
            pub fn zero(m: usize) -> Self {
                $name(Skew3 { m, c: BTreeMap::new() })
            }

            pub fn m(&self) -> usize {
                self.0.m
            }

            pub fn get(&self, i: usize, j: usize, k: usize) -> Polynomial {
                self.0.get(i, j, k)
            }

            pub fn set(&mut self, i: usize, j: usize, k: usize, v: Polynomial) {
                self.0.set(i, j, k, v)
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn components(&self) -> impl Iterator<Item = (usize, usize, usize, &Polynomial)> {
                self.0.c.iter().map(|(&(i, j, k), v)| (i, j, k, v))
            }
        }
    };
}

skew3_type!(ThreeForm);
skew3_type!(Trivector);

impl ThreeForm {
    pub fn eval(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> Polynomial {
        self.0.contract(&x.0, &y.0, &z.0)
    }

    /// `i(X)φ = φ(X, ·, ·)`.
    pub fn interior(&self, x: &VectorField) -> TwoForm {
        TwoForm(self.0.contract_first(&x.0))
    }
}

impl Trivector {
    pub fn eval(&self, a: &OneForm, b: &OneForm, c: &OneForm) -> Polynomial {
        self.0.contract(&a.0, &b.0, &c.0)
    }

    /// `i(σ∧τ)T`: the vector field `Z` with `γ(Z) = T(σ, τ, γ)`.
    pub fn interior_pair(&self, s: &OneForm, t: &OneForm) -> VectorField {
        let m = self.m();
        VectorField((0..m).map(|l| self.eval(s, t, &OneForm::coord(m, l))).collect())
    }
}

pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    check_dim(x.m(), y.m())?;
    Ok(VectorField((0..x.m()).map(|j| &x.apply(&y.0[j]) - &y.apply(&x.0[j])).collect()))
}

/// `(L_X α)_j = X(α_j) + α_i ∂_j X^i`.
pub fn lie_derivative_form(x: &VectorField, a: &OneForm) -> Result<OneForm> {
    check_dim(x.m(), a.m())?;
    let m = x.m();
    let comps = (0..m)
        .map(|j| {
            let mut acc = x.apply(&a.0[j]);
            for i in 0..m {
                if !a.0[i].is_zero() {
                    acc = acc + &a.0[i] * &x.0[i].derivative(j);
                }
            }
            acc
        })
        .collect();
    Ok(OneForm(comps))
}

/// `L_X θ` computed as `i(X)dθ + d i(X)θ`.
pub fn lie_derivative_two_form(x: &VectorField, t: &TwoForm) -> Result<TwoForm> {
    check_dim(x.m(), t.m())?;
    Ok(t.d().interior(x).add(&t.interior(x).d()))
}

pub fn sharp_p(p: &Bivector, a: &OneForm) -> Result<VectorField> {
    check_dim(p.m(), a.m())?;
    Ok(p.sharp(a))
}

pub fn flat_theta(t: &TwoForm, x: &VectorField) -> Result<OneForm> {
    check_dim(t.m(), x.m())?;
    Ok(t.interior(x))
}

/// `{α, β}_P = L_{♯α}β − L_{♯β}α − d(P(α, β))`.
pub fn p_bracket_oneforms(p: &Bivector, a: &OneForm, b: &OneForm) -> Result<OneForm> {
    check_dim(p.m(), a.m())?;
    check_dim(p.m(), b.m())?;
    let m = p.m();
    let la = lie_derivative_form(&p.sharp(a), b)?;
    let lb = lie_derivative_form(&p.sharp(b), a)?;
    Ok(la.sub(&lb).sub(&OneForm::exact(&p.pair(a, b), m)))
}

/// `[P, P]^{ijk} = −2 Σ_cyclic P^{il} ∂_l P^{jk}`.
pub fn schouten_pp(p: &Bivector) -> Trivector {
    let m = p.m();
    let mut t = Trivector::zero(m);
    let term = |i: usize, j: usize, k: usize| -> Polynomial {
        let mut acc = Polynomial::zero();
        let pjk = p.get(j, k);
        if pjk.is_zero() {
            return acc;
        }
        for l in 0..m {
            let pil = p.get(i, l);
            if !pil.is_zero() {
                acc = acc + &pil * &pjk.derivative(l);
            }
        }
        acc
    };
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let s = &(&term(i, j, k) + &term(j, k, i)) + &term(k, i, j);
                t.set(i, j, k, s.scale(&q(-2)));
            }
        }
    }
    t
}

/// A section `(X, α)` of `TM ⊕ T*M`.
#[derive(Clone, Debug, PartialEq)]
pub struct BigSection {
    pub x: VectorField,
    pub a: OneForm,
}

impl BigSection {
    pub fn new(x: VectorField, a: OneForm) -> Result<Self> {
        check_dim(x.m(), a.m())?;
        Ok(BigSection { x, a })
    }

    pub fn zero(m: usize) -> Self {
        BigSection { x: VectorField::zero(m), a: OneForm::zero(m) }
    }

    pub fn vector(x: VectorField) -> Self {
        let m = x.m();
        BigSection { x, a: OneForm::zero(m) }
    }

    pub fn form(a: OneForm) -> Self {
        let m = a.m();
        BigSection { x: VectorField::zero(m), a }
    }

    pub fn m(&self) -> usize {
        self.x.m()
    }

    /// Components `[X^1..X^m, α_1..α_m]`.
    pub fn row(&self) -> Vec<Polynomial> {
        let mut r = self.x.0.clone();
        r.extend(self.a.0.iter().cloned());
        r
    }

    pub fn from_row(row: Vec<Polynomial>) -> Result<Self> {
        if row.len() % 2 != 0 {
            return Err(Error::OddAmbient(row.len()));
        }
        let m = row.len() / 2;
        let mut x = row;
        let a = x.split_off(m);
        Ok(BigSection { x: VectorField(x), a: OneForm(a) })
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.a.is_zero()
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        BigSection { x: self.x.scale(f), a: self.a.scale(f) }
    }

    pub fn add(&self, o: &Self) -> Self {
        BigSection { x: self.x.add(&o.x), a: self.a.add(&o.a) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigSection { x: self.x.sub(&o.x), a: self.a.sub(&o.a) }
    }

    /// Flat value `[X | α]` at a point.
    pub fn eval(&self, p: &[Rational]) -> Vec<Rational> {
        let mut v = self.x.eval(p);
        v.extend(self.a.eval(p));
        v
    }

    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        BigSection { x: self.x.substitute(images), a: self.a.substitute(images) }
    }
}

/// `g(s, t) = ½(α(Y) + β(X))`.
pub fn g_sections(s: &BigSection, t: &BigSection) -> Result<Polynomial> {
    check_dim(s.m(), t.m())?;
    Ok((&s.a.pair(&t.x) + &t.a.pair(&s.x)).scale(&crate::algebra::qf(1, 2)))
}

/// `([X,Y], L_Xβ − L_Yα + ½ d(α(Y) − β(X)))`.
pub fn courant_bracket(s: &BigSection, t: &BigSection) -> Result<BigSection> {
    check_dim(s.m(), t.m())?;
    let m = s.m();
    let x = lie_bracket(&s.x, &t.x)?;
    let f = (&s.a.pair(&t.x) - &t.a.pair(&s.x)).scale(&crate::algebra::qf(1, 2));
    let a = lie_derivative_form(&s.x, &t.a)?
        .sub(&lie_derivative_form(&t.x, &s.a)?)
        .add(&OneForm::exact(&f, m));
    Ok(BigSection { x, a })
}

/// `X g(s2,s3) − g([s1,s2],s3) − g(s2,[s1,s3]) − ½(Z g(s1,s2) + Y g(s1,s3))`.
pub fn axiom_v_check(s1: &BigSection, s2: &BigSection, s3: &BigSection) -> Result<Polynomial> {
    let b12 = courant_bracket(s1, s2)?;
    let b13 = courant_bracket(s1, s3)?;
    check_dim(s1.m(), s3.m())?;
    let lhs = s1.x.apply(&g_sections(s2, s3)?);
    let t = &(&s3.x.apply(&g_sections(s1, s2)?) + &s2.x.apply(&g_sections(s1, s3)?));
    Ok(&(&(&lhs - &g_sections(&b12, s3)?) - &g_sections(s2, &b13)?) - &t.scale(&crate::algebra::qf(1, 2)))
}

/// `[e1, f e2] − (f[e1,e2] + (X f) e2 − g(e1,e2)(0, df))`; zero identically.
pub fn leibniz_defect(e1: &BigSection, e2: &BigSection, f: &Polynomial) -> Result<BigSection> {
    let m = e1.m();
    let lhs = courant_bracket(e1, &e2.scale(f))?;
    let rhs = courant_bracket(e1, e2)?
        .scale(f)
        .add(&e2.scale(&e1.x.apply(f)))
        .sub(&BigSection::form(OneForm::exact(f, m).scale(&g_sections(e1, e2)?)));
    Ok(lhs.sub(&rhs))
}

fn velocity(m: usize, j: usize) -> Polynomial {
    Polynomial::var(m + j)
}

/// `X^V = X^i ∂/∂ẋ^i` on the chart `(x, ẋ)`.
pub fn vertical_lift(x: &VectorField) -> VectorField {
    let m = x.m();
    let mut c = vec![Polynomial::zero(); m];
    c.extend(x.0.iter().cloned());
    VectorField(c)
}

/// `X^C = X^i ∂/∂x^i + ẋ^j ∂_j X^i ∂/∂ẋ^i`.
pub fn complete_lift(x: &VectorField) -> VectorField {
    let m = x.m();
    let mut c = x.0.clone();
    for i in 0..m {
        let mut acc = Polynomial::zero();
        for j in 0..m {
            acc = acc + &velocity(m, j) * &x.0[i].derivative(j);
        }
        c.push(acc);
    }
    VectorField(c)
}

/// `α^V = α_i dx^i`.
pub fn vertical_lift_form(a: &OneForm) -> OneForm {
    let m = a.m();
    let mut c = a.0.clone();
    c.extend(std::iter::repeat(Polynomial::zero()).take(m));
    OneForm(c)
}

/// `α^C = ẋ^j ∂_j α_i dx^i + α_i dẋ^i`.
pub fn complete_lift_form(a: &OneForm) -> OneForm {
    let m = a.m();
    let mut c = Vec::with_capacity(2 * m);
    for i in 0..m {
        let mut acc = Polynomial::zero();
        for j in 0..m {
            acc = acc + &velocity(m, j) * &a.0[i].derivative(j);
        }
        c.push(acc);
    }
    c.extend(a.0.iter().cloned());
    OneForm(c)
}

/// `d α(Y, Z) = 0` for the pair `(Y, Z)`: the infinitesimal automorphism
/// test for a section `(X, α)` of a graph-type structure.
pub fn is_infinitesimal_automorphism(a: &OneForm, y: &VectorField, z: &VectorField) -> bool {
    a.d().eval(y, z).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn bracket_example() {
        let a = VectorField::coord(2, 0);
        let b = VectorField::coord(2, 1).scale(&x(0));
        assert_eq!(lie_bracket(&a, &b).unwrap(), VectorField::coord(2, 1));
    }

    #[test]
    fn d_of_exact_is_zero() {
        assert!(OneForm::coord(3, 0).d().is_zero());
        let f = &(&x(0) * &x(1)) + &x(2);
        assert!(OneForm::exact(&f, 3).d().is_zero());
    }

    #[test]
    fn lie_derivative_example() {
        let v = VectorField::coord(2, 1).scale(&x(0));
        assert_eq!(lie_derivative_form(&v, &OneForm::coord(2, 1)).unwrap(), OneForm::coord(2, 0));
    }

    #[test]
    fn sharp_and_flat_anchors() {
        let mut p = Bivector::zero(2);
        p.set(0, 1, Polynomial::one());
        assert_eq!(p.pair(&OneForm::coord(2, 0), &OneForm::coord(2, 1)), Polynomial::one());
        assert_eq!(p.sharp(&OneForm::coord(2, 0)), VectorField::coord(2, 1));
        assert!(p.sharp(&OneForm::zero(2)).is_zero());
        let mut t = TwoForm::zero(2);
        t.set(0, 1, Polynomial::one());
        assert_eq!(t.eval(&VectorField::coord(2, 0), &VectorField::coord(2, 1)), Polynomial::one());
        assert_eq!(t.interior(&VectorField::coord(2, 0)), OneForm::coord(2, 1));
    }

    #[test]
    fn p_bracket_example() {
        let mut p = Bivector::zero(2);
        p.set(0, 1, x(0));
        let b = p_bracket_oneforms(&p, &OneForm::coord(2, 0), &OneForm::coord(2, 1)).unwrap();
        assert_eq!(b, OneForm::coord(2, 0));
    }

    #[test]
    fn schouten_example() {
        let mut p = Bivector::zero(3);
        p.set(1, 2, x(1));
        p.set(0, 1, Polynomial::one());
        let t = schouten_pp(&p);
        let v = t.eval(&OneForm::coord(3, 0), &OneForm::coord(3, 1), &OneForm::coord(3, 2));
        assert_eq!(v, Polynomial::from_int(-2));
        let mut c = Bivector::zero(2);
        c.set(0, 1, x(0));
        assert!(schouten_pp(&c).is_zero());
    }

    #[test]
    fn courant_examples() {
        let a = BigSection::vector(VectorField::coord(3, 0));
        let b = BigSection::form(OneForm::coord(3, 2));
        assert!(courant_bracket(&a, &b).unwrap().is_zero());
        assert!(courant_bracket(&a, &BigSection::zero(2)).is_err());
    }

    #[test]
    fn lifts() {
        let v = VectorField::coord(1, 0).scale(&x(0));
        let c = complete_lift(&v);
        assert_eq!(c.comps(), &[x(0), x(1)]);
        assert_eq!(complete_lift(&VectorField::coord(1, 0)), VectorField::coord(2, 0));
        assert_eq!(complete_lift_form(&OneForm::coord(1, 0)), OneForm::coord(2, 1));
        assert_eq!(vertical_lift_form(&OneForm::coord(1, 0)), OneForm::coord(2, 0));
        assert_eq!(vertical_lift(&VectorField::coord(1, 0)), VectorField::coord(2, 1));
    }

    #[test]
    fn sort3_signs() {
        assert_eq!(sort3(2, 0, 1), Some(((0, 1, 2), false)));
        assert_eq!(sort3(1, 0, 2), Some(((0, 1, 2), true)));
        assert_eq!(sort3(1, 1, 2), None);
    }

    #[test]
    fn tangent_chart_names() {
        let c = Chart::new(["x", "y"]).unwrap();
        assert_eq!(c.tangent_chart().names(), &["x", "y", "xdot", "ydot"]);
        assert!(Chart::new(["x", "x"]).is_err());
    }
}
