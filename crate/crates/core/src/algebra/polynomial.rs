use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, q, Rational};

/// Exponent vector of a monomial. Trailing zero exponents are trimmed, so a
/// monomial has exactly one representation regardless of how many variables
/// the surrounding chart declares.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variable slots this monomial touches.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            let (a, b) = (self.exponent(i), other.exponent(i));
            if b > a {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial::from_exponents(e))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `x1 > x2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals. Variables are addressed
/// by index; names live on the chart that owns the polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(q(1))
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(q(n))
    }

    pub fn var(i: usize) -> Self {
        Polynomial::monomial(Monomial::var(i), q(1))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(q(0))
        } else if self.is_constant() {
            self.terms.get(&Monomial::one()).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// One past the highest variable index that occurs.
    pub fn num_vars_used(&self) -> usize {
        self.terms.keys().map(|m| m.width()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut ex = m.0.clone();
            ex[var] -= 1;
            out.add_term(Monomial::from_exponents(ex), c * q(e as i64));
        }
        out
    }

    /// Evaluate at a point. Panics if a variable beyond `point.len()` occurs.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert!(
            self.num_vars_used() <= point.len(),
            "polynomial uses {} variables, point has {}",
            self.num_vars_used(),
            point.len()
        );
        let mut acc = q(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute polynomial `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert!(self.num_vars_used() <= images.len(), "substitution too short");
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &images[i];
                }
            }
            out = out + t;
        }
        out
    }

    /// Rename variable `i` to `map[i]`.
    pub fn reindex(&self, map: &[usize]) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = Vec::new();
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    let j = map[i];
                    if e.len() <= j {
                        e.resize(j + 1, 0);
                    }
                    e[j] += x;
                }
            }
            (Monomial::from_exponents(e), c.clone())
        }))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    /// For a single divisor the remainder of multivariate division vanishes
    /// exactly on multiples, so the leading-term test is decisive.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&dm)?;
            let c = rc / &dc;
            rem = rem - d.mul_monomial(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Canonical text using the given variable names, highest term first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = super::rational::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{}^{}", name, e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&[]))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qf;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::var(0) > Monomial::var(1));
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = &(&x(0) * &x(0)) - &(&x(0) * &x(0));
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_canonical() {
        let p = &(&x(0) * &x(1)) + &Polynomial::constant(qf(3, 2));
        assert_eq!(p.to_string(), "x1*x2 + 3/2");
        let r = &(&Polynomial::from_int(-2) * &(&x(0) * &x(0))) - &x(1);
        assert_eq!(r.to_string(), "-2*x1^2 - x2");
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &Polynomial::one();
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!((&p + &Polynomial::one()).div_exact(&a), None);
    }

    #[test]
    fn derivative_and_eval() {
        let p = &(&x(0) * &x(0)) * &x(2);
        assert_eq!(p.derivative(0), &Polynomial::from_int(2) * &(&x(0) * &x(2)));
        assert_eq!(p.eval(&[q(2), q(5), q(3)]), q(12));
    }

    #[test]
    fn substitution() {
        let p = &x(0) * &x(1);
        let s = p.substitute(&[&x(0) + &x(1), x(1)]);
        assert_eq!(s, &(&x(0) * &x(1)) + &(&x(1) * &x(1)));
    }
}
