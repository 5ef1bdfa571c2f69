//! Univariate polynomials over a field-like scalar type, the rational
//! function field `F_q(x)`, and factorization over finite fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

mod factor;
mod linalg;
mod ratfunc;

pub use factor::{
    deterministic_irreducible, distinct_degree, equal_degree, factor, is_irreducible, roots,
    squarefree,
};
pub use linalg::{invert_matrix_mod_p, solve_linear_mod_p};
pub use ratfunc::{RatFunc, RatFuncError};

/// Operations shared by every coefficient domain used here. All of them are
/// fields, so `inv` is part of the contract; it panics on zero.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_int_like(&self, n: i64) -> Self;
    fn characteristic(&self) -> u32;
    fn inv(&self) -> Self;
    fn render(&self) -> String;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
    zero: T,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>, zero: T) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: T) -> Self {
        Poly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: T) -> Self {
        let z = c.zero_like();
        Poly::new(vec![c], z)
    }

    pub fn one(zero: T) -> Self {
        Poly::constant(zero.one_like())
    }

    /// `c * X^n`.
    pub fn monomial(c: T, n: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); n];
        v.push(c);
        Poly::new(v, z)
    }

    /// The variable `X`.
    pub fn x(zero: T) -> Self {
        Poly::monomial(zero.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        let zero = f(&self.zero);
        Poly::new(self.coeffs.iter().map(&f).collect(), zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.zero.clone())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Multiply by `X^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v, zero: self.zero.clone() }
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(self.zero.clone()), self.clone());
        }
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * dj.clone();
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q, self.zero.clone()), Poly::new(r, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient, asserting the division is exact.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let z = self.zero.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(z.clone()), Poly::zero(z.clone()));
        let (mut t0, mut t1) = (Poly::zero(z.clone()), Poly::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * c.from_int_like(i as i64))
            .collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.zero.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.zero.clone()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    /// `self(other(X))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Poly::zero(self.zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Renders with descending powers of `var`.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.render();
            let term = if i == 0 {
                wrap_if_compound(&cs)
            } else if c.is_one() {
                mono
            } else {
                format!("{}*{}", wrap_if_compound(&cs), mono)
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

/// Parenthesizes a rendered expression unless it is a single factor.
pub fn wrap_if_compound(s: &str) -> String {
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' | '/' if depth == 0 => return format!("({s})"),
            _ => {}
        }
    }
    s.to_string()
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("X"))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(v, self.zero.clone())
    }
}
impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::new(v, self.zero.clone())
    }
}
impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v, self.zero.clone())
    }
}
impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.zero.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}
