use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::polynomial::Polynomial;
use super::rational::Rational;

/// Quotient of two polynomials. No multivariate gcd is taken; only cheap
/// cancellations (constant denominators, exact divisibility) are applied, and
/// equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// `None` when `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        if let Some(qt) = num.div_exact(&den) {
            return Self::from_poly(qt);
        }
        // Make the denominator's leading coefficient 1.
        let lc = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.den.constant_value().map(|c| self.num.scale(&c.recip()))
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if Field::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn derivative(&self, var: usize) -> RationalFunction {
        let n = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        Self::normalized(n, &self.den * &self.den)
    }

    pub fn substitute(&self, images: &[Polynomial]) -> Option<RationalFunction> {
        RationalFunction::new(self.num.substitute(images), self.den.substitute(images))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.den.is_constant() {
            return self.as_polynomial().expect("constant den").to_string_with(names);
        }
        format!("({})/({})", self.num.to_string_with(names), self.den.to_string_with(names))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.to_string_with(&[]))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&[]))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den);
        }
        Self::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        self + (-rhs)
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        // Cross-cancel when one numerator is an exact multiple of the other
        // denominator.
        let (mut a, mut b) = (self.num, self.den);
        let (mut c, mut d) = (rhs.num, rhs.den);
        if !d.is_constant() {
            if let Some(t) = a.div_exact(&d) {
                a = t;
                d = Polynomial::one();
            }
        }
        if !b.is_constant() {
            if let Some(t) = c.div_exact(&b) {
                c = t;
                b = Polynomial::one();
            }
        }
        Self::normalized(&a * &c, &b * &d)
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_with_inverse_is_one() {
        let p = &Polynomial::var(0) + &Polynomial::from_int(2);
        let s = &Polynomial::var(1) * &Polynomial::var(0);
        let f = RationalFunction::new(p.clone(), s.clone()).unwrap();
        let g = RationalFunction::new(s, p).unwrap();
        let one = f * g;
        assert_eq!(one, RationalFunction::one());
        assert!(one.is_polynomial());
    }

    #[test]
    fn cross_multiplication_equality() {
        let x = Polynomial::var(0);
        let a = RationalFunction::new(x.clone(), &x * &x).unwrap();
        let b = RationalFunction::new(Polynomial::one(), x.clone()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_none());
    }
}
