use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring for [`UPoly`]. Blanket-implemented for `BigInt` and
/// `BigRational`.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + Signed
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
        + for<'a> AddAssign<&'a T>
        + Signed
{
}

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `x^k`.
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

/// Exact rational polynomial.
pub type Poly = UPoly<BigRational>;
/// Integer polynomial, used on hot paths where denominators never appear.
pub type IntPoly = UPoly<BigInt>;

impl<C: Ring> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^d`.
    pub fn monomial(c: C, d: usize) -> Self {
        let mut v = vec![C::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// `x - a`.
    pub fn linear_root(a: C) -> Self {
        Self::new(vec![-a, C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Drops every term of degree `> deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        Self::new(self.coeffs.iter().take(deg + 1).cloned().collect())
    }

    /// `x^d · p(1/x)`; requires `d >= deg p`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.coeffs.len() <= d + 1, "reverse degree below polynomial degree");
        let mut v = vec![C::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[d - k] = c.clone();
        }
        Self::new(v)
    }

    /// `p(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut v = vec![C::zero(); (self.coeffs.len() - 1) * k + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            v[d * k] = c.clone();
        }
        Self::new(v)
    }

    /// Product truncated to degree `<= deg`.
    pub fn mul_trunc(&self, other: &Self, deg: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(deg + 1);
        let mut v = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                v[i + j] += &(a.clone() * b);
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Composition `self(other(x))` by Horner's rule.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Renders with the given variable name, highest degree last.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match k {
                0 => s.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&mag.to_string());
                        s.push('*');
                    }
                    s.push_str(var);
                    if k > 1 {
                        s.push('^');
                        s.push_str(&k.to_string());
                    }
                }
            }
        }
        s
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> Poly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// `(x - 1)(x - 2)...(x - m + 1)`, the reduced characteristic polynomial
    /// of the braid matroid on `m` points.
    pub fn braid_char_poly(m: usize) -> IntPoly {
        let mut p = IntPoly::one();
        for a in 1..m {
            p = &p * &IntPoly::linear_root(BigInt::from(a));
        }
        p
    }
}

impl Poly {
    /// Integer view, if every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>().map(IntPoly::new)
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Poly {
        Poly::new(it.into_iter().map(|c| BigRational::from_integer(c.into())).collect())
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(BigRational::one() / l)),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<C: Ring> Add for &UPoly<C> {
    type Output = UPoly<C>;
    fn add(self, rhs: &UPoly<C>) -> UPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<C: Ring> Sub for &UPoly<C> {
    type Output = UPoly<C>;
    fn sub(self, rhs: &UPoly<C>) -> UPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<C: Ring> Mul for &UPoly<C> {
    type Output = UPoly<C>;
    fn mul(self, rhs: &UPoly<C>) -> UPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        self.mul_trunc(rhs, self.coeffs.len() + rhs.coeffs.len())
    }
}

impl<C: Ring> Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<C: Ring> AddAssign<&UPoly<C>> for UPoly<C> {
    fn add_assign(&mut self, rhs: &UPoly<C>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<C: Ring> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl<C: Ring> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

/// Shorthand for a rational constant `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
